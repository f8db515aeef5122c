//! Fano threefolds of the five complexity-one families at a fixed
//! Gorenstein index.
//!
//! Every family shares `A = [[−1, 1, 0], [−1, 0, 1]]` and has a `P` matrix
//! with a handful of integer parameters. [`enumerate_setting`] solves the
//! necessary divisibility conditions by divisor enumeration; [`verify`]
//! then runs the full pipeline and keeps a tuple only if the Gorenstein
//! index comes out exactly as requested. [`brute_force_box`] scans a box of
//! parameters without any of the divisor logic and serves as an oracle.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::acomplex::{build_complex, gorenstein_index_via_complex, gorenstein_index_via_cones};
use crate::arrangement::{standard_a, ArrangementData};
use crate::error::{Error, Result};
use crate::exactla::{min_integral_multiplier, IntMat, Rat};
use crate::polyhedra::Fan;

/// Largest Gorenstein index accepted by the classification driver.
pub const MAX_INDEX: i64 = 5;

/// Identifier of one of the five families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub struct SettingId(u8);

impl SettingId {
    pub const ALL: [SettingId; 5] = [SettingId(1), SettingId(2), SettingId(3), SettingId(4), SettingId(5)];

    pub fn new(id: u8) -> Result<Self> {
        if (1..=5).contains(&id) {
            Ok(SettingId(id))
        } else {
            Err(Error::InvalidInput(format!("setting must be between 1 and 5, got {id}")))
        }
    }

    pub fn get(self) -> u8 {
        self.0
    }

    /// Names of the free parameters, in tuple order.
    pub fn parameter_names(self) -> &'static [&'static str] {
        match self.0 {
            1 => &["l21", "d12", "d21"],
            2 => &["l21", "l22", "d01", "d21", "d22"],
            3 | 4 => &["l22", "d01", "d21", "d22"],
            _ => &["l21", "d21"],
        }
    }
}

impl TryFrom<u8> for SettingId {
    type Error = Error;
    fn try_from(v: u8) -> Result<Self> {
        SettingId::new(v)
    }
}

impl From<SettingId> for u8 {
    fn from(id: SettingId) -> u8 {
        id.0
    }
}

impl fmt::Display for SettingId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A parameter tuple of one family; ordering is canonical.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tuple {
    pub setting: SettingId,
    pub values: Vec<i64>,
}

impl Tuple {
    pub fn new(setting: SettingId, values: Vec<i64>) -> Self {
        assert_eq!(values.len(), setting.parameter_names().len(), "wrong number of parameters");
        Tuple { setting, values }
    }

    pub fn get(&self, name: &str) -> i64 {
        let pos = self
            .setting
            .parameter_names()
            .iter()
            .position(|n| *n == name)
            .unwrap_or_else(|| panic!("setting {} has no parameter {name}", self.setting));
        self.values[pos]
    }

    pub fn named(&self) -> BTreeMap<String, i64> {
        self.setting.parameter_names().iter().map(|n| n.to_string()).zip(self.values.iter().copied()).collect()
    }

    pub fn max_abs(&self) -> i64 {
        self.values.iter().map(|v| v.abs()).max().unwrap_or(0)
    }
}

impl fmt::Display for Tuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.setting.parameter_names().iter().zip(&self.values).map(|(n, v)| format!("{n}={v}")).collect();
        write!(f, "setting {} ({})", self.setting, parts.join(", "))
    }
}

/// The inequalities stated with each family's `P` matrix.
pub fn inequalities_hold(t: &Tuple) -> bool {
    match t.setting.0 {
        1 => {
            let (l21, d12, d21) = (t.get("l21"), t.get("d12"), t.get("d21"));
            // −d21/(d12−1) < l21 with d12 − 1 > 0
            l21 > 1 && d12 > 2 && -d21 < l21 * (d12 - 1) && l21 < -d21
        }
        2 => {
            let (l21, l22, d01, d21, d22) = (t.get("l21"), t.get("l22"), t.get("d01"), t.get("d21"), t.get("d22"));
            l21 > 1 && l22 > 1 && 2 * d22 > -d01 * l22 && -2 * d21 > d01 * l21
        }
        3 => {
            let (l22, d01, d21, d22) = (t.get("l22"), t.get("d01"), t.get("d21"), t.get("d22"));
            l22 > 1 && d22 > d21 * l22 + l22 && 2 * d22 > -d01 * l22 && -2 * d21 > d01
        }
        4 => {
            let (l22, d01, d21, d22) = (t.get("l22"), t.get("d01"), t.get("d21"), t.get("d22"));
            l22 > 1 && 2 * d22 > -d01 * l22 && 1 - 2 * d21 > d01
        }
        _ => {
            let (l21, d21) = (t.get("l21"), t.get("d21"));
            1 < l21 && l21 < -2 * d21 && -2 * d21 < 2 * l21
        }
    }
}

/// Whether a tuple lies in the normalised parameter space the enumeration
/// works in: `d01 ∈ {0, −1}` (and `l21 ≥ l22` when `d01 = 0`) for the
/// second family, `d21 = 0` for the third and fourth.
pub fn is_normalised(t: &Tuple) -> bool {
    match t.setting.0 {
        2 => match t.get("d01") {
            0 => t.get("l21") >= t.get("l22"),
            -1 => true,
            _ => false,
        },
        3 | 4 => t.get("d21") == 0,
        _ => true,
    }
}

/// Maximal cones listed for the family, as column index sets.
pub fn listed_fan(t: &Tuple) -> Vec<Vec<usize>> {
    let mut cones = match t.setting.0 {
        1 => vec![vec![0, 1, 2, 4], vec![0, 1, 3, 4], vec![0, 2, 3, 4], vec![1, 2, 3, 4]],
        2 | 3 => vec![vec![0, 1, 2, 3], vec![0, 1, 2, 4], vec![0, 1, 3, 4], vec![0, 2, 3, 4]],
        4 => {
            let mut c = vec![vec![0, 1, 2, 4], vec![0, 1, 3, 4], vec![0, 2, 3, 4]];
            if 2 * t.get("d21") + t.get("d01") != 0 {
                c.push(vec![0, 1, 2, 3]);
            }
            c
        }
        _ => vec![vec![0, 1, 3, 4], vec![0, 2, 3, 4], vec![0, 1, 2, 3], vec![1, 2, 4]],
    };
    cones.sort();
    cones
}

fn block_layout(t: &Tuple) -> (Vec<usize>, usize, Vec<Vec<i64>>) {
    match t.setting.0 {
        1 => (vec![2, 2, 1], 0, vec![vec![1, 1], vec![1, 1], vec![t.get("l21")]]),
        2 => (vec![1, 2, 2], 0, vec![vec![2], vec![1, 1], vec![t.get("l21"), t.get("l22")]]),
        3 | 4 => (vec![1, 2, 2], 0, vec![vec![2], vec![1, 1], vec![1, t.get("l22")]]),
        _ => (vec![1, 2, 1], 1, vec![vec![2], vec![1, 1], vec![t.get("l21")]]),
    }
}

fn d_rows(t: &Tuple) -> [[i64; 5]; 2] {
    match t.setting.0 {
        1 => [[-1, 0, 0, 1, 0], [0, 0, 0, t.get("d12"), t.get("d21")]],
        2..=4 => [[-1, 0, 1, 0, 0], [t.get("d01"), 0, 0, t.get("d21"), t.get("d22")]],
        _ => [[-1, 0, 1, 0, 0], [1, 0, 0, t.get("d21"), 1]],
    }
}

/// Integer `P` matrix of a tuple, without any validation.
fn p_matrix_i64(t: &Tuple) -> [[i64; 5]; 4] {
    let (n, _, l) = block_layout(t);
    let d = d_rows(t);
    let mut p = [[0i64; 5]; 4];
    for i in 1..=2 {
        for j in 0..n[0] {
            p[i - 1][j] = -l[0][j];
        }
        let off: usize = n[..i].iter().sum();
        for j in 0..n[i] {
            p[i - 1][off + j] = l[i][j];
        }
    }
    p[2] = d[0];
    p[3] = d[1];
    p
}

/// Arrangement data and listed fan of a tuple.
pub fn instantiate(t: &Tuple) -> Result<(ArrangementData, Fan)> {
    if !inequalities_hold(t) {
        return Err(Error::Precondition(format!("{t} violates the family's inequalities")));
    }
    let (n, m, l) = block_layout(t);
    let d = d_rows(t);
    let d = IntMat::from_i64(&[&d[0], &d[1]]);
    let data = ArrangementData::new(2, 1, n, m, l, standard_a(), d)?;
    let violations = data.validate();
    if !violations.is_empty() {
        return Err(Error::InvalidCandidate(format!("{t}: {}", violations.join("; "))));
    }
    let fan = Fan::new(data.lattice_dim(), data.columns(), listed_fan(t))
        .map_err(|e| Error::InvalidCandidate(format!("{t}: {e}")))?;
    Ok((data, fan))
}

/// Outcome of the divisor enumeration.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Enumeration {
    /// Tuples satisfying the necessary conditions, sorted.
    pub tuples: Vec<Tuple>,
    /// Degenerate parameter choices skipped on purpose.
    pub skipped: Vec<String>,
}

/// Positive divisors of `|n|`; `n` must be non-zero.
pub fn divisors(n: i64) -> Vec<i64> {
    assert!(n != 0, "divisors of zero");
    let n = n.abs();
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

fn signed_divisors(n: i64) -> impl Iterator<Item = i64> {
    divisors(n).into_iter().flat_map(|d| [d, -d])
}

fn exact_div(num: i64, den: i64) -> Option<i64> {
    (den != 0 && num % den == 0).then(|| num / den)
}

/// All tuples meeting the family's necessary conditions at index `iota`
/// and its inequalities.
pub fn enumerate_setting(id: SettingId, iota: i64) -> Enumeration {
    assert!(iota >= 1, "Gorenstein index must be positive");
    let mut found = BTreeSet::new();
    let mut skipped = Vec::new();
    let mut push = |values: Vec<i64>| {
        let t = Tuple::new(id, values);
        if inequalities_hold(&t) {
            found.insert(t);
        }
    };
    match id.0 {
        1 => {
            for d12 in 3..=3 * iota {
                for k in -iota..=-1 {
                    let a = k * d12 + iota;
                    if a == 0 {
                        skipped.push(format!("setting 1: k*d12 + iota = 0 at d12 = {d12}, k = {k}"));
                        continue;
                    }
                    for value in signed_divisors(iota * k * k * d12) {
                        let Some(l21) = exact_div(value - iota, a) else { continue };
                        if l21 <= 1 {
                            continue;
                        }
                        let Some(d21) = exact_div(iota * (l21 + 1), k) else { continue };
                        push(vec![l21, d12, d21]);
                    }
                }
            }
        }
        2 => {
            if iota % 2 == 0 {
                // d01 = 0 and l21 = l22
                for l in divisors(iota).into_iter().filter(|&l| l > 1) {
                    let q = (2 + l) * iota / 2;
                    for d21 in signed_divisors(q) {
                        for d22 in signed_divisors(q) {
                            push(vec![l, l, 0, d21, d22]);
                        }
                    }
                }
                // d01 = 0 and l21 > l22
                for l22 in 2..iota {
                    for d22 in 1..iota {
                        for k in 1..iota {
                            for reduced in signed_divisors(iota / 2 + k) {
                                for g in divisors(d22) {
                                    let d21 = reduced * g;
                                    if d21.gcd(&d22) != g {
                                        continue;
                                    }
                                    let num = iota * (d22 - d21) + k * d21 * l22;
                                    let Some(l21) = exact_div(num, k * d22) else { continue };
                                    if l21 > l22 {
                                        push(vec![l21, l22, 0, d21, d22]);
                                    }
                                }
                            }
                        }
                    }
                }
            }
            // d01 = −1 with sp = l21 − 2 d21 and tp = −l22 + 2 d22
            let emit = |l21: i64, l22: i64, sp: i64, tp: i64, push: &mut dyn FnMut(Vec<i64>)| {
                if l21 <= 1 || l22 <= 1 || (l21 - sp) % 2 != 0 || (l22 + tp) % 2 != 0 {
                    return;
                }
                push(vec![l21, l22, -1, (l21 - sp) / 2, (l22 + tp) / 2]);
            };
            for first in 2..4 * iota {
                for a in divisors(iota * (first + 2)) {
                    for k in 1..=iota {
                        for b in divisors(2 * iota * iota * a + 2 * k * a * iota) {
                            let num = 2 * iota * (a + b) - k * b * first;
                            let Some(second) = exact_div(num, k * a) else { continue };
                            // (sp, l21) = (a, first), (tp, l22) = (b, second)
                            emit(first, second, a, b, &mut push);
                            // roles interchanged
                            emit(second, first, b, a, &mut push);
                        }
                    }
                }
            }
        }
        3 => {
            for d01 in divisors(3 * iota).into_iter().map(|d| -d) {
                let k01 = 3 * iota / d01;
                for k22 in 1..iota {
                    if 3 * k22 + 2 * k01 == 0 {
                        skipped.push(format!("setting 3: 3*k22 + 2*k01 = 0 at d01 = {d01}, k22 = {k22}"));
                        continue;
                    }
                    let dividend = 6 * iota * (k22 + k01);
                    if dividend == 0 {
                        skipped.push(format!("setting 3: k22 + k01 = 0 at d01 = {d01}, k22 = {k22}"));
                        continue;
                    }
                    for b in signed_divisors(dividend) {
                        let num = (b * k22 + 2 * iota) * k01;
                        let Some(l22) = exact_div(num, iota * (3 * k22 + 2 * k01)) else { continue };
                        if l22 <= 1 {
                            continue;
                        }
                        let Some(d22) = exact_div(iota * (l22 - 1), k22) else { continue };
                        push(vec![l22, d01, 0, d22]);
                    }
                }
            }
        }
        4 => {
            for d01 in -2 * iota..=0 {
                for k in 1..2 * iota {
                    let a = d01 * k + 2 * iota;
                    if a == 0 {
                        skipped.push(format!("setting 4: d01*k + 2*iota = 0 at d01 = {d01}, k = {k}"));
                        continue;
                    }
                    let dividend = 2 * iota * (d01 * k + 3 * iota);
                    if dividend == 0 {
                        skipped.push(format!("setting 4: d01*k + 3*iota = 0 at d01 = {d01}, k = {k}"));
                        continue;
                    }
                    for b in signed_divisors(dividend) {
                        let Some(l22) = exact_div(b * k + 2 * iota, a) else { continue };
                        if l22 <= 1 {
                            continue;
                        }
                        let Some(d22) = exact_div(iota * (l22 - 1), k) else { continue };
                        push(vec![l22, d01, 0, d22]);
                    }
                }
            }
        }
        _ => {
            for k in (-iota..0).filter(|&k| 2 * k < -iota) {
                for b in signed_divisors(4 * k * iota) {
                    let Some(l21) = exact_div((b - 2) * iota, 2 * k + iota) else { continue };
                    if l21 <= 1 {
                        continue;
                    }
                    let Some(q) = exact_div(k * l21, iota) else { continue };
                    push(vec![l21, 1 + q]);
                }
            }
        }
    }
    Enumeration { tuples: found.into_iter().collect(), skipped }
}

/// The bounds each family's proposition places on a Fano member of index
/// `iota`, checked on a tuple in normalised form.
pub fn bounds_hold(t: &Tuple, iota: i64) -> bool {
    match t.setting.0 {
        1 => {
            let (l21, d12, d21) = (t.get("l21"), t.get("d12"), t.get("d21"));
            let Some(k) = exact_div(iota * (l21 + 1), d21) else { return false };
            2 < d12 && d12 <= 3 * iota && -iota <= k && k < 0
        }
        2 => {
            let (l21, l22, d01) = (t.get("l21"), t.get("l22"), t.get("d01"));
            match d01 {
                0 => iota % 2 == 0 && (l21 != l22 || iota % l21 == 0),
                -1 => {
                    let sp = l21 - 2 * t.get("d21");
                    let tp = -l22 + 2 * t.get("d22");
                    sp > 0 && tp > 0 && (l21 < 4 * iota || l22 < 4 * iota)
                }
                _ => false,
            }
        }
        3 => {
            let d01 = t.get("d01");
            t.get("d21") == 0 && -3 * iota <= d01 && d01 < 0
        }
        4 => {
            let d01 = t.get("d01");
            t.get("d21") == 0 && -2 * iota <= d01 && d01 <= 0
        }
        _ => {
            let (l21, d21) = (t.get("l21"), t.get("d21"));
            let Some(k) = exact_div(iota * (d21 - 1), l21) else { return false };
            -iota <= k && 2 * k < -iota
        }
    }
}

/// Why a tuple was not accepted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum Rejection {
    InequalityViolated,
    InvalidData { detail: String },
    NotFano { detail: String },
    PicardRank { rank: usize },
    FanMismatch { expected: Vec<Vec<usize>>, found: Vec<Vec<usize>> },
    NotQGorenstein { cone: String },
    IndexMismatch { found: String },
    RoutesDisagree { complex: String, cones: String },
    Failure { detail: String },
}

/// A verified member of a family.
#[derive(Clone, Debug)]
pub struct Candidate {
    pub tuple: Tuple,
    pub data: ArrangementData,
    pub fan: Fan,
    pub degrees: Vec<BigInt>,
    pub anticanonical: BigInt,
    pub gorenstein_index: BigInt,
}

/// Runs the full pipeline on `(data, fan)` and accepts iff the data is
/// Fano of Picard number one with `Σ(−K)` equal to `fan` and both index
/// routes return `target`. Returns the degrees and `−K` on success.
pub fn verify(data: &ArrangementData, fan: &Fan, target: &BigInt) -> std::result::Result<(Vec<BigInt>, BigInt), Rejection> {
    let violations = data.validate();
    if !violations.is_empty() {
        return Err(Rejection::InvalidData { detail: violations.join("; ") });
    }
    let failure = |e: Error| match e {
        Error::NotQGorensteinOnCone { cone } => Rejection::NotQGorenstein { cone },
        other => Rejection::Failure { detail: other.to_string() },
    };
    let check = data.is_fano().map_err(failure)?;
    if check.degrees.free_rank != 1 {
        return Err(Rejection::PicardRank { rank: check.degrees.free_rank });
    }
    if let Some(reason) = &check.reason {
        return Err(Rejection::NotFano { detail: reason.clone() });
    }
    let ample = check.fan.as_ref().expect("Fano data carries its fan");
    let mut expected = fan.max_cones().to_vec();
    expected.sort();
    let mut found = ample.minimal.max_cones().to_vec();
    found.sort();
    if expected != found || fan.rays() != ample.minimal.rays() {
        return Err(Rejection::FanMismatch { expected, found });
    }
    let ac = build_complex(data, fan).map_err(failure)?;
    let via_complex = gorenstein_index_via_complex(&ac).map_err(failure)?;
    let via_cones = gorenstein_index_via_cones(data, fan).map_err(failure)?.index;
    if via_complex != via_cones {
        return Err(Rejection::RoutesDisagree { complex: via_complex.to_string(), cones: via_cones.to_string() });
    }
    if via_complex != *target {
        return Err(Rejection::IndexMismatch { found: via_complex.to_string() });
    }
    let degrees = check.degrees.degrees.iter().map(|d| d.free[0].clone()).collect();
    Ok((degrees, check.anticanonical.free[0].clone()))
}

/// Instantiates and verifies a tuple.
pub fn verify_tuple(t: &Tuple, iota: i64) -> std::result::Result<Candidate, Rejection> {
    if !inequalities_hold(t) {
        return Err(Rejection::InequalityViolated);
    }
    let (data, fan) = instantiate(t).map_err(|e| Rejection::InvalidData { detail: e.to_string() })?;
    let target = BigInt::from(iota);
    let (degrees, anticanonical) = verify(&data, &fan, &target)?;
    Ok(Candidate { tuple: t.clone(), data, fan, degrees, anticanonical, gorenstein_index: target })
}

/// Invariants grouping candidates that may be isomorphic.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Fingerprint {
    pub degrees: Vec<String>,
    pub gorenstein_index: String,
    pub exponents: Vec<Vec<i64>>,
    pub blocks: Vec<usize>,
}

pub fn fingerprint(c: &Candidate) -> Fingerprint {
    let mut degrees: Vec<BigInt> = c.degrees.clone();
    degrees.sort();
    let mut exponents: Vec<Vec<i64>> = c
        .data
        .l()
        .iter()
        .map(|l| {
            let mut l = l.clone();
            l.sort();
            l
        })
        .collect();
    exponents.sort();
    let mut blocks = c.data.n().to_vec();
    blocks.sort();
    blocks.push(c.data.m());
    Fingerprint {
        degrees: degrees.iter().map(ToString::to_string).collect(),
        gorenstein_index: c.gorenstein_index.to_string(),
        exponents,
        blocks,
    }
}

/// One fingerprint class: a representative and the other members.
#[derive(Clone, Debug)]
pub struct DedupeGroup {
    pub fingerprint: Fingerprint,
    pub representative: Candidate,
    pub duplicates: Vec<Candidate>,
}

/// Groups candidates by fingerprint; the first member in input order
/// represents its group and no candidate is dropped.
pub fn dedupe(candidates: &[Candidate]) -> Vec<DedupeGroup> {
    let mut groups: Vec<DedupeGroup> = Vec::new();
    for c in candidates {
        let fp = fingerprint(c);
        match groups.iter_mut().find(|g| g.fingerprint == fp) {
            Some(g) => g.duplicates.push(c.clone()),
            None => groups.push(DedupeGroup { fingerprint: fp, representative: c.clone(), duplicates: Vec::new() }),
        }
    }
    groups
}

/// Classification result for one family.
#[derive(Clone, Debug)]
pub struct SettingRun {
    pub setting: SettingId,
    pub considered: usize,
    pub accepted: Vec<Candidate>,
    pub rejected: Vec<(Tuple, Rejection)>,
    pub skipped: Vec<String>,
}

fn with_pool<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> T {
    if jobs == 0 {
        return f();
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .expect("thread pool")
        .install(f)
}

/// Enumerates and verifies one family; `jobs = 0` uses the global pool.
/// Output order is the canonical tuple order whatever the parallelism.
pub fn classify_setting(id: SettingId, iota: i64, jobs: usize) -> Result<SettingRun> {
    if !(1..=MAX_INDEX).contains(&iota) {
        return Err(Error::InvalidInput(format!("Gorenstein index must lie in 1..={MAX_INDEX}, got {iota}")));
    }
    let enumeration = enumerate_setting(id, iota);
    let results: Vec<(Tuple, std::result::Result<Candidate, Rejection>)> = with_pool(jobs, || {
        enumeration.tuples.par_iter().map(|t| (t.clone(), verify_tuple(t, iota))).collect()
    });
    let mut accepted = Vec::new();
    let mut rejected = Vec::new();
    for (t, r) in results {
        match r {
            Ok(c) => accepted.push(c),
            Err(why) => rejected.push((t, why)),
        }
    }
    Ok(SettingRun { setting: id, considered: enumeration.tuples.len(), accepted, rejected, skipped: enumeration.skipped })
}

/// Least `m` making the divisor of block 0 integral on a cone, computed
/// by Cramer's rule when the cone is simplicial and full-dimensional.
fn cone_multiplier(p: &[[i64; 5]; 4], cone: &[usize], coeffs: &[i64; 5]) -> Option<i128> {
    if cone.len() == 4 {
        let m: Vec<[i128; 4]> =
            cone.iter().map(|&k| [p[0][k] as i128, p[1][k] as i128, p[2][k] as i128, p[3][k] as i128]).collect();
        let b: Vec<i128> = cone.iter().map(|&k| coeffs[k] as i128).collect();
        let det = det4(&[m[0], m[1], m[2], m[3]]);
        if det != 0 {
            let mut mult: i128 = 1;
            for col in 0..4 {
                let mut mi = [m[0], m[1], m[2], m[3]];
                for (row, bi) in b.iter().enumerate() {
                    mi[row][col] = *bi;
                }
                let num = det4(&mi);
                let den = (det / det.gcd(&num)).abs();
                mult = mult.lcm(&den);
            }
            return Some(mult);
        }
    }
    let rows: Vec<Vec<BigInt>> = cone.iter().map(|&k| (0..4).map(|i| BigInt::from(p[i][k])).collect()).collect();
    let rhs: Vec<Rat> = cone.iter().map(|&k| Rat::from_integer(BigInt::from(coeffs[k]))).collect();
    min_integral_multiplier(&IntMat::from_rows(&rows, 4), &rhs).and_then(|m| m.to_i128())
}

fn det4(m: &[[i128; 4]; 4]) -> i128 {
    let mut total = 0;
    for (j, sign) in [(0usize, 1i128), (1, -1), (2, 1), (3, -1)] {
        let minor: Vec<[i128; 3]> = (1..4)
            .map(|i| {
                let mut row = [0i128; 3];
                let mut c = 0;
                for (k, v) in m[i].iter().enumerate() {
                    if k != j {
                        row[c] = *v;
                        c += 1;
                    }
                }
                row
            })
            .collect();
        let d3 = minor[0][0] * (minor[1][1] * minor[2][2] - minor[1][2] * minor[2][1])
            - minor[0][1] * (minor[1][0] * minor[2][2] - minor[1][2] * minor[2][0])
            + minor[0][2] * (minor[1][0] * minor[2][1] - minor[1][1] * minor[2][0]);
        total += sign * m[0][j] * d3;
    }
    total
}

fn block0_coefficients(t: &Tuple) -> [i64; 5] {
    let (n, _, l) = block_layout(t);
    let mut c = [-1i64; 5];
    for j in 0..n[0] {
        c[j] = l[0][j] - 1;
    }
    c
}

/// Cheap necessary test: the listed cones among `cones` all have Cartier
/// index dividing `iota`.
fn cones_divide(t: &Tuple, cones: &[Vec<usize>], iota: i64) -> bool {
    let p = p_matrix_i64(t);
    let coeffs = block0_coefficients(t);
    cones.iter().all(|c| match cone_multiplier(&p, c, &coeffs) {
        Some(m) => (iota as i128) % m == 0,
        None => false,
    })
}

fn cones_lcm_is(t: &Tuple, iota: i64) -> bool {
    let p = p_matrix_i64(t);
    let coeffs = block0_coefficients(t);
    let mut total: i128 = 1;
    for c in listed_fan(t) {
        match cone_multiplier(&p, &c, &coeffs) {
            Some(m) => total = total.lcm(&m),
            None => return false,
        }
    }
    total == iota as i128
}

/// Exhaustive scan of all normalised tuples with every parameter in
/// `[−bound, bound]`, returning those that verify at index `iota`.
///
/// Loops are nested so that a listed cone is tested as soon as all of its
/// columns are fixed; the test is the Cartier-index condition on single
/// cones, not the divisor enumeration.
pub fn brute_force_box(id: SettingId, iota: i64, bound: i64) -> Vec<Tuple> {
    let range = move || -bound..=bound;
    let mut survivors: Vec<Tuple> = Vec::new();
    match id.0 {
        1 => {
            for l21 in range().filter(|&x| x > 1) {
                for d21 in range() {
                    // σ1 = cone(v01, v02, v11, v21) does not involve d12
                    let probe = Tuple::new(id, vec![l21, 3, d21]);
                    if !cones_divide(&probe, &[vec![0, 1, 2, 4]], iota) {
                        continue;
                    }
                    for d12 in range().filter(|&x| x > 2) {
                        let t = Tuple::new(id, vec![l21, d12, d21]);
                        if inequalities_hold(&t) {
                            survivors.push(t);
                        }
                    }
                }
            }
        }
        2 => {
            for d01 in [0, -1] {
                // σ1 involves only (l21, d21), σ2 only (l22, d22)
                let halves = |sigma: Vec<usize>, first: bool| -> Vec<(i64, i64)> {
                    let mut out = Vec::new();
                    for l in range().filter(|&x| x > 1) {
                        for d in range() {
                            let t = if first {
                                Tuple::new(id, vec![l, 2, d01, d, 1])
                            } else {
                                Tuple::new(id, vec![2, l, d01, -1, d])
                            };
                            if cones_divide(&t, std::slice::from_ref(&sigma), iota) {
                                out.push((l, d));
                            }
                        }
                    }
                    out
                };
                let left = halves(vec![0, 1, 2, 3], true);
                let right = halves(vec![0, 1, 2, 4], false);
                for &(l21, d21) in &left {
                    for &(l22, d22) in &right {
                        let t = Tuple::new(id, vec![l21, l22, d01, d21, d22]);
                        if is_normalised(&t) && inequalities_hold(&t) {
                            survivors.push(t);
                        }
                    }
                }
            }
        }
        3 | 4 => {
            for d01 in range() {
                for l22 in range().filter(|&x| x > 1) {
                    for d22 in range() {
                        let t = Tuple::new(id, vec![l22, d01, 0, d22]);
                        if inequalities_hold(&t) {
                            survivors.push(t);
                        }
                    }
                }
            }
        }
        _ => {
            for l21 in range().filter(|&x| x > 1) {
                for d21 in range() {
                    let t = Tuple::new(id, vec![l21, d21]);
                    if inequalities_hold(&t) {
                        survivors.push(t);
                    }
                }
            }
        }
    }
    let mut hits: Vec<Tuple> = survivors
        .into_par_iter()
        .filter(|t| cones_lcm_is(t, iota))
        .filter(|t| verify_tuple(t, iota).is_ok())
        .collect();
    hits.sort();
    hits.dedup();
    hits
}

/// Serialisable summary of a candidate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateRecord {
    pub setting: SettingId,
    pub parameters: BTreeMap<String, i64>,
    pub p: Vec<Vec<String>>,
    pub degrees: Vec<String>,
    pub anticanonical: String,
    pub gorenstein_index: String,
    pub fingerprint: Fingerprint,
}

impl CandidateRecord {
    pub fn from_candidate(c: &Candidate) -> Self {
        CandidateRecord {
            setting: c.tuple.setting,
            parameters: c.tuple.named(),
            p: c.data.p().row_vecs().iter().map(|r| r.iter().map(ToString::to_string).collect()).collect(),
            degrees: c.degrees.iter().map(ToString::to_string).collect(),
            anticanonical: c.anticanonical.to_string(),
            gorenstein_index: c.gorenstein_index.to_string(),
            fingerprint: fingerprint(c),
        }
    }
}

/// Whether `x` is one, as used for Gorenstein candidates.
pub fn is_gorenstein(c: &Candidate) -> bool {
    c.gorenstein_index.is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(id: u8) -> SettingId {
        SettingId::new(id).unwrap()
    }

    #[test]
    fn setting5_index_one_enumeration() {
        let e = enumerate_setting(s(5), 1);
        let got: Vec<Vec<i64>> = e.tuples.iter().map(|t| t.values.clone()).collect();
        assert_eq!(got, vec![vec![3, -2], vec![4, -3], vec![6, -5]]);
    }

    #[test]
    fn setting5_instantiation() {
        let (data, fan) = instantiate(&Tuple::new(s(5), vec![3, -2])).unwrap();
        assert_eq!(
            *data.p(),
            IntMat::from_i64(&[&[-2, 1, 1, 0, 0], &[-2, 0, 0, 3, 0], &[-1, 0, 1, 0, 0], &[1, 0, 0, -2, 1]])
        );
        assert_eq!(fan.max_cones().len(), 4);
    }

    #[test]
    fn setting2_case_one_needs_even_index() {
        let e = enumerate_setting(s(2), 1);
        assert!(e.tuples.iter().all(|t| t.get("d01") == -1));
    }

    #[test]
    fn inequality_violation_is_rejected() {
        let t = Tuple::new(s(5), vec![1, -1]);
        assert!(matches!(instantiate(&t), Err(Error::Precondition(_))));
        assert_eq!(verify_tuple(&t, 1).unwrap_err(), Rejection::InequalityViolated);
    }

    #[test]
    fn divisors_are_sorted() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(-9), vec![1, 3, 9]);
    }

    #[test]
    fn det4_matches_bigint() {
        let m = [[1, 2, 3, 4], [0, 1, 5, 2], [3, 0, 1, 1], [2, 2, 0, 7]];
        let big = IntMat::from_i64(&[&[1, 2, 3, 4], &[0, 1, 5, 2], &[3, 0, 1, 1], &[2, 2, 0, 7]]).det();
        assert_eq!(BigInt::from(det4(&m)), big);
    }
}
