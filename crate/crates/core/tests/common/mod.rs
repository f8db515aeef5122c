#![allow(dead_code)]

use acx::arrangement::{standard_a, ArrangementData};
use acx::exactla::{rat, IntMat, RatMat};
use acx::polyhedra::Fan;
use rand::Rng;

/// The threefold with `P = [[−2,−1,2,0],[−2,−1,0,3],[−1,−2,1,2]]` and its
/// three maximal cones.
pub fn worked_example() -> (ArrangementData, Fan) {
    let data = ArrangementData::new_valid(
        2,
        1,
        vec![2, 1, 1],
        0,
        vec![vec![2, 1], vec![2], vec![3]],
        standard_a(),
        IntMat::from_i64(&[&[-1, -2, 1, 2]]),
    )
    .unwrap();
    let fan = Fan::new(3, data.columns(), vec![vec![0, 1], vec![0, 2, 3], vec![1, 2, 3]]).unwrap();
    (data, fan)
}

pub const WORKED_EXAMPLE_JSON: &str = r#"{
  "r": 2, "c": 1, "n": [2, 1, 1], "m": 0,
  "l": [[2, 1], [2], [3]],
  "A": [["-1", "1", "0"], ["-1", "0", "1"]],
  "D": [[-1, -2, 1, 2]],
  "fan": [[0, 1], [0, 2, 3], [1, 2, 3]]
}"#;

fn random_a<R: Rng>(rng: &mut R, c: usize, r: usize) -> RatMat {
    RatMat::from_fn(c + 1, r + 1, |_, _| rat(rng.gen_range(-3..=3), 1))
}

/// Random data with `r ≤ 3`, `s ≤ 2` and entries of `P` bounded by 4 in
/// absolute value; `None` when the draw is not valid.
pub fn random_data<R: Rng>(rng: &mut R) -> Option<ArrangementData> {
    let r = rng.gen_range(2..=3);
    let c = if r == 3 && rng.gen_bool(0.25) { 2 } else { 1 };
    let s = rng.gen_range(1..=2);
    let n: Vec<usize> = (0..=r).map(|_| if rng.gen_bool(0.35) { 2 } else { 1 }).collect();
    let m = if rng.gen_bool(0.3) { 1 } else { 0 };
    let l: Vec<Vec<i64>> = n.iter().map(|&ni| (0..ni).map(|_| if rng.gen_bool(0.8) { rng.gen_range(1..=2) } else { rng.gen_range(3..=4) }).collect()).collect();
    let cols = n.iter().sum::<usize>() + m;
    let d = IntMat::from_fn(s, cols, |_, _| if rng.gen_bool(0.85) { rng.gen_range(-2..=2) } else { rng.gen_range(-4..=4) }.into());
    let a = if c == 1 && rng.gen_bool(0.5) && r == 2 { standard_a() } else { random_a(rng, c, r) };
    let data = ArrangementData::new(r, c, n, m, l, a, d).ok()?;
    data.is_valid().then_some(data)
}

/// Valid random data whose anticanonical class is ample, with `Σ(−K)`.
pub fn random_fano<R: Rng>(rng: &mut R) -> Option<(ArrangementData, Fan)> {
    let data = random_data(rng)?;
    let check = data.is_fano().ok()?;
    if !check.is_fano() {
        return None;
    }
    let ample = check.fan?;
    if !ample.ambient.is_complete() {
        return None;
    }
    Some((data, ample.minimal))
}
