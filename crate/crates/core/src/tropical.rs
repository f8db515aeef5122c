//! Leaves of the tropical variety, classification of fan cones, and
//! pruning to the minimal ambient toric variety.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arrangement::ArrangementData;
use crate::error::{Error, Result};
use crate::exactla::{rat_vec, Rat};
use crate::polyhedra::{subsets, Cone, Fan};

/// The quasifan structure on `trop(X)`: cones `λ_I = cone(e_i; i ∈ I) +
/// lin(e_{r+1}, …, e_{r+s})` for `|I| ≤ c`, with `e_0 = −(e_1 + … + e_r)`.
#[derive(Clone, Debug)]
pub struct TropStructure {
    r: usize,
    c: usize,
    s: usize,
    leaves: Vec<(Vec<usize>, Cone)>,
    lineality: Cone,
}

/// Position of a fan cone relative to the tropical variety.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
#[serde(tag = "kind", content = "leaf", rename_all = "snake_case")]
pub enum ConeClass {
    /// Contained in `λ_I` for the given inclusion-minimal `I`.
    Leaf(Vec<usize>),
    Big,
    ElementaryBig,
}

impl ConeClass {
    pub fn is_big(&self) -> bool {
        matches!(self, ConeClass::Big | ConeClass::ElementaryBig)
    }
}

/// Intersection of a big cone with the lineality space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinealityCheck {
    /// Whether the relative interior meets `λ_lin`.
    pub interior_meets: bool,
    /// `dim(σ ∩ λ_lin)`.
    pub dim: usize,
    /// Whether that dimension equals `s`.
    pub full_dimensional: bool,
}

impl TropStructure {
    pub fn new(r: usize, c: usize, s: usize) -> Self {
        let lineality = lin_cone(r, s, &[]);
        let mut leaves = Vec::new();
        for k in 1..=c {
            for set in subsets(r + 1, k) {
                let cone = lin_cone(r, s, &set);
                leaves.push((set, cone));
            }
        }
        TropStructure { r, c, s, leaves, lineality }
    }

    pub fn for_data(data: &ArrangementData) -> Self {
        Self::new(data.r(), data.c(), data.s())
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn c(&self) -> usize {
        self.c
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn ambient_dim(&self) -> usize {
        self.r + self.s
    }

    /// All leaves `λ_I` with `1 ≤ |I| ≤ c`, ordered by size then lexicographically.
    pub fn leaves(&self) -> &[(Vec<usize>, Cone)] {
        &self.leaves
    }

    /// The leaves with `|I| = c`, whose union is `|trop(X)|`.
    pub fn maximal_leaves(&self) -> impl Iterator<Item = &(Vec<usize>, Cone)> {
        self.leaves.iter().filter(move |(set, _)| set.len() == self.c)
    }

    pub fn leaf(&self, set: &[usize]) -> Option<&Cone> {
        if set.is_empty() {
            return Some(&self.lineality);
        }
        self.leaves.iter().find(|(s, _)| s == set).map(|(_, c)| c)
    }

    pub fn lineality(&self) -> &Cone {
        &self.lineality
    }

    /// Whether the relative interior of `sigma` meets `|trop(X)|`.
    pub fn interior_meets_trop(&self, sigma: &Cone) -> bool {
        let leaves: Vec<&Cone> = if self.c == 0 {
            vec![&self.lineality]
        } else {
            self.maximal_leaves().map(|(_, c)| c).collect()
        };
        leaves.into_iter().any(|leaf| meets_relative_interior(sigma, leaf))
    }

    pub fn classify_cone(&self, sigma: &Cone) -> Result<ConeClass> {
        if self.lineality.contains_cone(sigma) {
            return Ok(ConeClass::Leaf(Vec::new()));
        }
        let containing: Vec<&Vec<usize>> =
            self.leaves.iter().filter(|(_, leaf)| leaf.contains_cone(sigma)).map(|(s, _)| s).collect();
        if let Some(min_len) = containing.iter().map(|s| s.len()).min() {
            let minimal: Vec<&&Vec<usize>> = containing.iter().filter(|s| s.len() == min_len).collect();
            if minimal.len() != 1 {
                return Err(Error::InvariantBreach(format!(
                    "cone {} lies in several minimal leaves",
                    sigma.describe()
                )));
            }
            return Ok(ConeClass::Leaf((*minimal[0]).clone()));
        }
        let one_leaves: Vec<&Cone> =
            self.leaves.iter().filter(|(s, _)| s.len() == 1).map(|(_, c)| c).collect();
        let big = one_leaves.iter().all(|leaf| {
            let meet = sigma.intersect(leaf);
            !self.lineality.contains_cone(&meet)
        });
        if !big {
            return Err(Error::MalformedFanCone { cone: sigma.describe() });
        }
        let elementary = one_leaves.iter().all(|leaf| {
            let inside = sigma.rays().iter().filter(|ray| leaf.contains_int(ray)).count();
            inside == 1
        });
        Ok(if elementary { ConeClass::ElementaryBig } else { ConeClass::Big })
    }

    /// Interior and dimension of `σ ∩ λ_lin` for a big cone.
    pub fn check_big_cone_lineality(&self, sigma: &Cone) -> Result<LinealityCheck> {
        if !self.classify_cone(sigma)?.is_big() {
            return Err(Error::Precondition(format!("{} is not a big cone", sigma.describe())));
        }
        let meet = sigma.intersect(&self.lineality);
        let interior_meets = meets_relative_interior(sigma, &self.lineality);
        Ok(LinealityCheck { interior_meets, dim: meet.dim(), full_dimensional: meet.dim() == self.s })
    }
}

fn lin_cone(r: usize, s: usize, set: &[usize]) -> Cone {
    let n = r + s;
    let unit = |k: usize| {
        let mut e = vec![BigInt::zero(); n];
        e[k] = BigInt::one();
        e
    };
    let mut gens = Vec::new();
    for &i in set {
        if i == 0 {
            let mut e0 = vec![BigInt::zero(); n];
            for x in e0.iter_mut().take(r) {
                *x = -BigInt::one();
            }
            gens.push(e0);
        } else {
            gens.push(unit(i - 1));
        }
    }
    for k in r..n {
        gens.push(unit(k));
        gens.push(unit(k).iter().map(|x| -x).collect());
    }
    Cone::from_generators(n, &gens).expect("leaf dimension within guard")
}

/// Whether `relint(sigma) ∩ tau ≠ ∅`: the relative interior point of
/// `sigma ∩ tau` lies in the relative interior of `sigma` exactly then.
pub fn meets_relative_interior(sigma: &Cone, tau: &Cone) -> bool {
    let meet = sigma.intersect(tau);
    sigma.in_relative_interior(&rat_vec(&meet.relative_interior_point()))
}

/// Removes maximal cones whose relative interior misses `|trop(X)|` until
/// no such cone is left. Faces of a removed cone that are not faces of a
/// remaining cone become maximal and are examined in turn.
pub fn prune_to_minimal(trop: &TropStructure, fan: &Fan) -> Fan {
    let rays = fan.rays().to_vec();
    let n = fan.ambient_dim();
    let mut cones: HashMap<Vec<usize>, Cone> =
        fan.max_cones().iter().cloned().zip(fan.cones().iter().cloned()).collect();
    let mut alive: HashMap<Vec<usize>, bool> = HashMap::new();
    let mut current: Vec<Vec<usize>> = fan.max_cones().to_vec();
    loop {
        let dead = current.iter().position(|set| {
            let cone = cones.entry(set.clone()).or_insert_with(|| {
                let gens: Vec<Vec<BigInt>> = set.iter().map(|&k| rays[k].clone()).collect();
                Cone::from_generators(n, &gens).expect("fan dimension within guard")
            });
            !*alive.entry(set.clone()).or_insert_with(|| trop.interior_meets_trop(cone))
        });
        let Some(pos) = dead else { break };
        let removed = current.remove(pos);
        for facet in cones[&removed].facet_cones() {
            let face: Vec<usize> = removed.iter().copied().filter(|&k| facet.contains_int(&rays[k])).collect();
            if face.is_empty() {
                continue;
            }
            let covered = current.iter().any(|other| face.iter().all(|k| other.contains(k)));
            if !covered {
                current.push(face);
            }
        }
        current.sort();
        current.dedup();
    }
    Fan::from_known_fan(n, rays, current).expect("subfan of a fan is a fan")
}

/// The point `Σ_i (α_0/α_i) Σ_{j ∈ J_i} v_ij + Σ_{k ∈ J} v_k` built from the
/// columns of `P` lying in `sigma`, where `α_i = Σ_{j ∈ J_i} l_ij`.
/// `None` when some block has no column in `sigma`.
pub fn big_cone_witness(data: &ArrangementData, sigma: &Cone) -> Option<Vec<Rat>> {
    let columns = data.columns();
    let inside: Vec<usize> = (0..columns.len()).filter(|&k| sigma.contains_int(&columns[k])).collect();
    let alpha: Vec<i64> = (0..=data.r())
        .map(|i| {
            inside
                .iter()
                .filter(|&&k| data.block_of(k) == Some(i))
                .map(|&k| data.exponent(k).expect("block column"))
                .sum()
        })
        .collect();
    if alpha.contains(&0) {
        return None;
    }
    let mut point = vec![Rat::zero(); data.lattice_dim()];
    for &k in &inside {
        let weight = match data.block_of(k) {
            Some(i) => Rat::new(BigInt::from(alpha[0]), BigInt::from(alpha[i])),
            None => Rat::one(),
        };
        for (x, v) in point.iter_mut().zip(&columns[k]) {
            *x += &weight * Rat::from_integer(v.clone());
        }
    }
    Some(point)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::int_vec;

    fn cone(gens: &[&[i64]]) -> Cone {
        Cone::from_generators(gens[0].len(), &gens.iter().map(|g| int_vec(g)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn leaf_counts() {
        let t = TropStructure::new(3, 2, 1);
        assert_eq!(t.leaves().iter().filter(|(s, _)| s.len() == 1).count(), 4);
        assert_eq!(t.leaves().iter().filter(|(s, _)| s.len() == 2).count(), 6);
        for (_, leaf) in t.leaves() {
            assert!(leaf.contains_cone(t.lineality()));
        }
    }

    #[test]
    fn worked_example_classes() {
        let t = TropStructure::new(2, 1, 1);
        let sigma3 = cone(&[&[-2, -2, -1], &[-1, -1, -2]]);
        assert_eq!(t.classify_cone(&sigma3).unwrap(), ConeClass::Leaf(vec![0]));
        let sigma1 = cone(&[&[-2, -2, -1], &[2, 0, 1], &[0, 3, 2]]);
        assert_eq!(t.classify_cone(&sigma1).unwrap(), ConeClass::ElementaryBig);
        let check = t.check_big_cone_lineality(&sigma1).unwrap();
        assert!(check.interior_meets && check.full_dimensional && check.dim == 1);
        assert_eq!(t.classify_cone(t.lineality()).unwrap(), ConeClass::Leaf(vec![]));
        assert!(matches!(t.check_big_cone_lineality(&sigma3), Err(Error::Precondition(_))));
    }

    #[test]
    fn spurious_cone_removed() {
        // cone(e1, e2) in Q^2 with r = 2, s = 0, c = 1 misses the three rays
        // of trop in its interior
        let t = TropStructure::new(2, 1, 0);
        let fan = Fan::from_int_rays(&[&[1, 0], &[0, 1], &[-1, -1]], vec![vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        let pruned = prune_to_minimal(&t, &fan);
        assert_eq!(pruned.max_cones(), &[vec![0], vec![1], vec![2]]);
    }
}
