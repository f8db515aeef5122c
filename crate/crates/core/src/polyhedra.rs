//! Rational polyhedral cones, fans, truncated cells.
//!
//! A [`Cone`] carries both of its descriptions at once: primitive extreme
//! rays plus a lineality basis, and primitive facet normals plus an
//! equation basis for the orthogonal complement of its span. Every field
//! is canonical (sorted rays and normals, Hermite bases), so structural
//! equality is equality of point sets.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactla::{
    dot, dot_ri, integer_kernel, lcm_all, min_integral_multiplier, primitive, primitive_int,
    cofactor_normal, int_rank, rat_vec, solve_rational, IntMat, Rat, RatMat,
};

/// Largest ambient dimension accepted by the dual description.
pub const MAX_DIM: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cone {
    ambient: usize,
    rays: Vec<Vec<BigInt>>,
    lineality: Vec<Vec<BigInt>>,
    equations: Vec<Vec<BigInt>>,
    facets: Vec<Vec<BigInt>>,
}

/// All `k`-element subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

fn neg(v: &[BigInt]) -> Vec<BigInt> {
    v.iter().map(|x| -x).collect()
}

fn check_dim(n: usize) -> Result<()> {
    if n > MAX_DIM {
        return Err(Error::DimensionGuard { dim: n, max: MAX_DIM });
    }
    Ok(())
}

/// Facet normals of `cone(generators)`, primitive and sorted.
pub fn dual_description(ambient: usize, generators: &[Vec<BigInt>]) -> Result<Vec<Vec<BigInt>>> {
    check_dim(ambient)?;
    Ok(Cone::build(ambient, generators).facets)
}

fn projection_onto_complement(g: &[BigInt], basis: &[Vec<BigInt>]) -> Vec<Rat> {
    let g_rat = rat_vec(g);
    if basis.is_empty() {
        return g_rat;
    }
    let n = g.len();
    let gram = RatMat::from_fn(basis.len(), basis.len(), |i, j| Rat::from_integer(dot(&basis[i], &basis[j])));
    let rhs: Vec<Rat> = basis.iter().map(|b| Rat::from_integer(dot(b, g))).collect();
    let y = solve_rational(&gram, &rhs).expect("Gram matrix of a basis is invertible");
    (0..n)
        .map(|k| {
            basis.iter().zip(&y).fold(g_rat[k].clone(), |acc, (b, c)| acc - c * Rat::from_integer(b[k].clone()))
        })
        .collect()
}

impl Cone {
    /// `cone(generators)` in `ℚ^ambient`.
    pub fn from_generators(ambient: usize, generators: &[Vec<BigInt>]) -> Result<Cone> {
        check_dim(ambient)?;
        if let Some(g) = generators.iter().find(|g| g.len() != ambient) {
            return Err(Error::InvalidInput(format!(
                "generator of length {} in ambient dimension {ambient}",
                g.len()
            )));
        }
        Ok(Cone::build(ambient, generators))
    }

    pub fn from_rat_generators(ambient: usize, generators: &[Vec<Rat>]) -> Result<Cone> {
        let ints: Vec<Vec<BigInt>> = generators.iter().map(|g| primitive(g)).collect();
        Cone::from_generators(ambient, &ints)
    }

    /// `{x : E·x = 0, N·x ≥ 0}`.
    pub fn from_inequalities(
        ambient: usize,
        equations: &[Vec<BigInt>],
        inequalities: &[Vec<BigInt>],
    ) -> Result<Cone> {
        check_dim(ambient)?;
        Ok(Cone::build_h(ambient, equations, inequalities))
    }

    pub fn zero(ambient: usize) -> Cone {
        Cone::build(ambient, &[])
    }

    pub fn whole_space(ambient: usize) -> Cone {
        let gens: Vec<Vec<BigInt>> =
            IntMat::identity(ambient).row_vecs().into_iter().flat_map(|e| [neg(&e), e]).collect();
        Cone::build(ambient, &gens)
    }

    /// Cone from an H-description; dual to the generator route.
    fn build_h(ambient: usize, equations: &[Vec<BigInt>], inequalities: &[Vec<BigInt>]) -> Cone {
        let mut dual_gens: Vec<Vec<BigInt>> = inequalities.to_vec();
        for e in equations {
            dual_gens.push(e.clone());
            dual_gens.push(neg(e));
        }
        let dual = Cone::build(ambient, &dual_gens);
        let mut gens = dual.facets.clone();
        for e in &dual.equations {
            gens.push(e.clone());
            gens.push(neg(e));
        }
        Cone::build(ambient, &gens)
    }

    fn build(ambient: usize, generators: &[Vec<BigInt>]) -> Cone {
        let mut gens: Vec<Vec<BigInt>> = generators
            .iter()
            .filter(|g| g.iter().any(|x| !x.is_zero()))
            .map(|g| primitive_int(g))
            .collect();
        gens.sort();
        gens.dedup();

        let equations = if gens.is_empty() {
            IntMat::identity(ambient).row_vecs()
        } else {
            integer_kernel(&IntMat::from_rows(&gens, ambient))
        };
        let d = ambient - equations.len();
        let facets = Self::compute_facets(ambient, d, &gens, &equations);

        let mut constraint_rows = equations.clone();
        constraint_rows.extend(facets.iter().cloned());
        let lineality = if d == 0 {
            Vec::new()
        } else if constraint_rows.is_empty() {
            IntMat::identity(ambient).row_vecs()
        } else {
            integer_kernel(&IntMat::from_rows(&constraint_rows, ambient))
        };

        let target = ambient - lineality.len();
        let mut rays = BTreeSet::new();
        for g in &gens {
            let projected = primitive(&projection_onto_complement(g, &lineality));
            if projected.iter().all(Zero::is_zero) {
                continue;
            }
            let mut tight: Vec<Vec<BigInt>> = facets.iter().filter(|nu| dot(nu, g).is_zero()).cloned().collect();
            tight.extend(equations.iter().cloned());
            if target >= 1 && int_rank(&tight, ambient) == target - 1 {
                rays.insert(projected);
            }
        }

        let cone = Cone { ambient, rays: rays.into_iter().collect(), lineality, equations, facets };
        debug_assert!(
            gens.iter().all(|g| cone.contains_int(g)),
            "generator outside its own dual description"
        );
        cone
    }

    fn compute_facets(
        ambient: usize,
        d: usize,
        gens: &[Vec<BigInt>],
        equations: &[Vec<BigInt>],
    ) -> Vec<Vec<BigInt>> {
        if d == 0 {
            return Vec::new();
        }
        let mut out = BTreeSet::new();
        for subset in subsets(gens.len(), d - 1) {
            let mut rows: Vec<Vec<BigInt>> = subset.iter().map(|&i| gens[i].clone()).collect();
            rows.extend(equations.iter().cloned());
            let Some(nu) = cofactor_normal(&rows, ambient) else {
                continue;
            };
            let values: Vec<BigInt> = gens.iter().map(|g| dot(&nu, g)).collect();
            if values.iter().all(|v| !v.is_negative()) {
                if values.iter().any(|v| v.is_positive()) {
                    out.insert(nu);
                }
            } else if values.iter().all(|v| !v.is_positive()) {
                out.insert(neg(&nu));
            }
        }
        out.into_iter().collect()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.ambient - self.equations.len()
    }

    /// Primitive extreme rays modulo the lineality space, each taken in the
    /// orthogonal complement of the lineality space.
    pub fn rays(&self) -> &[Vec<BigInt>] {
        &self.rays
    }

    pub fn lineality(&self) -> &[Vec<BigInt>] {
        &self.lineality
    }

    pub fn equations(&self) -> &[Vec<BigInt>] {
        &self.equations
    }

    pub fn facets(&self) -> &[Vec<BigInt>] {
        &self.facets
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.dim() == 0
    }

    pub fn lineality_dim(&self) -> usize {
        self.lineality.len()
    }

    /// Rays together with both signs of every lineality basis vector.
    pub fn generators(&self) -> Vec<Vec<BigInt>> {
        let mut gens = self.rays.clone();
        for l in &self.lineality {
            gens.push(l.clone());
            gens.push(neg(l));
        }
        gens
    }

    pub fn contains_int(&self, x: &[BigInt]) -> bool {
        self.equations.iter().all(|e| dot(e, x).is_zero())
            && self.facets.iter().all(|f| !dot(f, x).is_negative())
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        self.equations.iter().all(|e| dot_ri(x, e).is_zero())
            && self.facets.iter().all(|f| !dot_ri(x, f).is_negative())
    }

    pub fn in_relative_interior(&self, x: &[Rat]) -> bool {
        self.equations.iter().all(|e| dot_ri(x, e).is_zero())
            && self.facets.iter().all(|f| dot_ri(x, f).is_positive())
    }

    pub fn contains_cone(&self, other: &Cone) -> bool {
        other.generators().iter().all(|g| self.contains_int(g))
    }

    /// Sum of the rays; zero for linear spaces.
    pub fn relative_interior_point(&self) -> Vec<BigInt> {
        self.rays.iter().fold(vec![BigInt::zero(); self.ambient], |acc, r| {
            acc.iter().zip(r).map(|(a, b)| a + b).collect()
        })
    }

    pub fn intersect(&self, other: &Cone) -> Cone {
        assert_eq!(self.ambient, other.ambient, "intersection of cones in different spaces");
        let mut eqs = self.equations.clone();
        eqs.extend(other.equations.iter().cloned());
        let mut ineqs = self.facets.clone();
        ineqs.extend(other.facets.iter().cloned());
        Cone::build_h(self.ambient, &eqs, &ineqs)
    }

    /// The face cut out by the normal `nu`, which must be non-negative on the cone.
    pub fn face_of_normal(&self, nu: &[BigInt]) -> Cone {
        let mut eqs = self.equations.clone();
        eqs.push(nu.to_vec());
        Cone::build_h(self.ambient, &eqs, &self.facets)
    }

    pub fn facet_cones(&self) -> Vec<Cone> {
        self.facets.iter().map(|f| self.face_of_normal(f)).collect()
    }

    /// Smallest face of `self` containing `other` (which must lie in `self`).
    pub fn smallest_face_containing(&self, other: &Cone) -> Cone {
        let gens = other.generators();
        let tight: Vec<Vec<BigInt>> = self
            .facets
            .iter()
            .filter(|f| gens.iter().all(|g| dot(f, g).is_zero()))
            .cloned()
            .collect();
        let mut eqs = self.equations.clone();
        eqs.extend(tight);
        Cone::build_h(self.ambient, &eqs, &self.facets)
    }

    pub fn is_face_of(&self, sigma: &Cone) -> bool {
        sigma.contains_cone(self) && sigma.smallest_face_containing(self) == *self
    }

    /// Short human-readable form listing rays and lineality.
    pub fn describe(&self) -> String {
        let fmt = |v: &Vec<BigInt>| {
            format!("({})", v.iter().map(ToString::to_string).collect::<Vec<_>>().join(","))
        };
        let rays: Vec<String> = self.rays.iter().map(fmt).collect();
        let mut s = format!("cone[{}]", rays.join(" "));
        if !self.lineality.is_empty() {
            let lin: Vec<String> = self.lineality.iter().map(fmt).collect();
            s.push_str(&format!("+lin[{}]", lin.join(" ")));
        }
        s
    }
}

/// A fan whose maximal cones are spanned by subsets of a fixed ray list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    ambient: usize,
    rays: Vec<Vec<BigInt>>,
    max_cones: Vec<Vec<usize>>,
    cones: Vec<Cone>,
}

impl Fan {
    /// Builds and checks a fan. Index sets contained in another listed
    /// cone are dropped; every listed ray must be extremal in its cone and
    /// any two cones must intersect in a common face.
    pub fn new(ambient: usize, rays: Vec<Vec<BigInt>>, max_cones: Vec<Vec<usize>>) -> Result<Fan> {
        check_dim(ambient)?;
        for (k, r) in rays.iter().enumerate() {
            if r.len() != ambient {
                return Err(Error::InvalidInput(format!("ray {k} has wrong length")));
            }
        }
        let mut sets: Vec<Vec<usize>> = max_cones
            .into_iter()
            .map(|mut s| {
                s.sort_unstable();
                s.dedup();
                s
            })
            .collect();
        sets.sort();
        sets.dedup();
        for s in &sets {
            if let Some(&bad) = s.iter().find(|&&i| i >= rays.len()) {
                return Err(Error::InvalidInput(format!("cone refers to missing ray {bad}")));
            }
            if s.is_empty() {
                return Err(Error::InvalidInput("empty cone in fan".into()));
            }
        }
        let mut cones = Vec::with_capacity(sets.len());
        for s in &sets {
            let gens: Vec<Vec<BigInt>> = s.iter().map(|&i| rays[i].clone()).collect();
            let cone = Cone::build(ambient, &gens);
            if !cone.is_pointed() {
                return Err(Error::InvalidInput(format!("cone {s:?} is not pointed")));
            }
            if cone.rays().len() != s.len() {
                return Err(Error::InvalidInput(format!("cone {s:?} has a non-extremal ray")));
            }
            cones.push(cone);
        }
        let keep: Vec<bool> = (0..sets.len())
            .map(|i| !(0..sets.len()).any(|j| j != i && cones[j].contains_cone(&cones[i]) && cones[j] != cones[i]))
            .collect();
        let (sets, cones): (Vec<_>, Vec<_>) =
            sets.into_iter().zip(cones).zip(keep).filter(|(_, k)| *k).map(|(p, _)| p).unzip();
        for i in 0..cones.len() {
            for j in i + 1..cones.len() {
                let meet = cones[i].intersect(&cones[j]);
                if !meet.is_face_of(&cones[i]) || !meet.is_face_of(&cones[j]) {
                    return Err(Error::InvalidInput(format!(
                        "cones {:?} and {:?} do not meet in a common face",
                        sets[i], sets[j]
                    )));
                }
            }
        }
        Ok(Fan { ambient, rays, max_cones: sets, cones })
    }

    /// Builds a fan from index sets known to form a fan, such as `Σ(u)` or
    /// a subfan of a checked fan. Each cone is still checked to be pointed
    /// with the listed rays extremal; pairwise intersections are not.
    pub(crate) fn from_known_fan(ambient: usize, rays: Vec<Vec<BigInt>>, max_cones: Vec<Vec<usize>>) -> Result<Fan> {
        check_dim(ambient)?;
        let mut sets: Vec<Vec<usize>> = max_cones
            .into_iter()
            .map(|mut s| {
                s.sort_unstable();
                s
            })
            .collect();
        sets.sort();
        sets.dedup();
        let mut cones = Vec::with_capacity(sets.len());
        for s in &sets {
            let gens: Vec<Vec<BigInt>> = s.iter().map(|&i| rays[i].clone()).collect();
            let cone = Cone::build(ambient, &gens);
            if !cone.is_pointed() || cone.rays().len() != s.len() {
                return Err(Error::InvalidInput(format!("cone {s:?} is not pointed with extremal rays")));
            }
            cones.push(cone);
        }
        Ok(Fan { ambient, rays, max_cones: sets, cones })
    }

    pub fn from_int_rays(rays: &[&[i64]], max_cones: Vec<Vec<usize>>) -> Result<Fan> {
        let ambient = rays.first().map_or(0, |r| r.len());
        let rays = rays.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        Fan::new(ambient, rays, max_cones)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn rays(&self) -> &[Vec<BigInt>] {
        &self.rays
    }

    /// Rays as the columns of a matrix.
    pub fn ray_matrix(&self) -> IntMat {
        IntMat::from_rows(&self.rays, self.ambient).transpose()
    }

    pub fn max_cones(&self) -> &[Vec<usize>] {
        &self.max_cones
    }

    pub fn cones(&self) -> &[Cone] {
        &self.cones
    }

    pub fn is_complete(&self) -> bool {
        is_complete(&self.cones, self.ambient)
    }
}

/// Common refinement of a collection of cones by a collection of pieces:
/// the inclusion-maximal non-trivial intersections, in generation order.
pub fn refine_fan(cones: &[Cone], pieces: &[Cone]) -> Vec<Cone> {
    let mut all: Vec<Cone> = Vec::new();
    for sigma in cones {
        for tau in pieces {
            let meet = sigma.intersect(tau);
            if !meet.is_trivial() && !all.contains(&meet) {
                all.push(meet);
            }
        }
    }
    let keep: Vec<bool> = all
        .iter()
        .map(|c| !all.iter().any(|d| d != c && d.contains_cone(c)))
        .collect();
    all.into_iter().zip(keep).filter(|(_, k)| *k).map(|(c, _)| c).collect()
}

/// Decides whether cones meeting pairwise in faces cover `region`.
///
/// Every facet of a full-dimensional piece must either lie in the boundary
/// of `region` or be shared with a piece on its other side. The region is
/// convex, so this local condition forces global coverage.
pub fn covers(pieces: &[Cone], region: &Cone) -> bool {
    let d = region.dim();
    if d == 0 {
        return true;
    }
    let full: Vec<&Cone> = pieces.iter().filter(|c| c.dim() == d && region.contains_cone(c)).collect();
    if full.is_empty() {
        return false;
    }
    for (k, c) in full.iter().enumerate() {
        for nu in c.facets() {
            let facet = c.face_of_normal(nu);
            let gens = facet.generators();
            let on_boundary = region.facets().iter().any(|mu| gens.iter().all(|g| dot(mu, g).is_zero()));
            if on_boundary {
                continue;
            }
            let across = full.iter().enumerate().any(|(j, other)| {
                j != k
                    && other.contains_cone(&facet)
                    && other.generators().iter().any(|g| dot(nu, g).is_negative())
            });
            if !across {
                return false;
            }
        }
    }
    true
}

pub fn is_complete(cones: &[Cone], ambient: usize) -> bool {
    covers(cones, &Cone::whole_space(ambient))
}

/// Gorenstein index of the toric variety of a complete fan: the lcm over
/// maximal cones of the least `m` admitting an integral `u` with
/// `⟨u, v⟩ = −m` on every ray.
pub fn toric_gorenstein_index(fan: &Fan) -> Result<BigInt> {
    let mut values = Vec::new();
    for set in fan.max_cones() {
        let rows: Vec<Vec<BigInt>> = set.iter().map(|&i| fan.rays()[i].clone()).collect();
        let m = IntMat::from_rows(&rows, fan.ambient_dim());
        let b = vec![-Rat::one(); rows.len()];
        let c = min_integral_multiplier(&m, &b)
            .ok_or_else(|| Error::NotQGorensteinOnCone { cone: format!("{set:?}") })?;
        values.push(c);
    }
    Ok(lcm_all(values.iter()))
}

/// Bounded or unbounded polyhedron given by vertices, recession rays and
/// a lineality basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub vertices: Vec<Vec<Rat>>,
    pub rays: Vec<Vec<BigInt>>,
    pub lineality: Vec<Vec<BigInt>>,
}

impl Cell {
    pub fn is_polytope(&self) -> bool {
        self.rays.is_empty() && self.lineality.is_empty()
    }

    pub fn has_origin_vertex(&self) -> bool {
        self.vertices.iter().any(|v| v.iter().all(Zero::is_zero))
    }
}

/// `cone ∩ {⟨u, ·⟩ ≥ −1}` for a pointed cone on which `u` is non-positive.
pub fn truncate(cone: &Cone, u: &[Rat]) -> Result<Cell> {
    if !cone.is_pointed() {
        return Err(Error::Precondition(format!("truncation of non-pointed {}", cone.describe())));
    }
    let mut vertices = vec![vec![Rat::zero(); cone.ambient_dim()]];
    let mut rays = Vec::new();
    for g in cone.rays() {
        let value = dot_ri(u, g);
        if value.is_positive() {
            return Err(Error::Precondition(format!(
                "linear form is positive on ray {:?} of {}",
                g,
                cone.describe()
            )));
        }
        if value.is_zero() {
            rays.push(g.clone());
        } else {
            let scale = -Rat::one() / value;
            vertices.push(g.iter().map(|x| Rat::from_integer(x.clone()) * &scale).collect());
        }
    }
    Ok(Cell { vertices, rays, lineality: Vec::new() })
}

/// Positive generator of the group `{c·m : c ∈ ℤ}` of feasible
/// multipliers, i.e. the least `m` with `M·w = m·b` integrally solvable.
pub fn cartier_index(rays: &[Vec<BigInt>], values: &[Rat]) -> Option<BigInt> {
    let ambient = rays.first().map_or(0, |r| r.len());
    min_integral_multiplier(&IntMat::from_rows(rays, ambient), values)
}

/// Least common multiple of the denominators of a rational vector.
pub fn denominator_lcm(v: &[Rat]) -> BigInt {
    v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{int_vec, rat};

    fn cone(gens: &[&[i64]]) -> Cone {
        let n = gens[0].len();
        Cone::from_generators(n, &gens.iter().map(|g| int_vec(g)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn orthant_normals() {
        let c = cone(&[&[1, 0], &[0, 1]]);
        assert_eq!(c.facets(), &[int_vec(&[0, 1]), int_vec(&[1, 0])]);
        assert!(c.is_pointed());
    }

    #[test]
    fn skew_cone_normals() {
        let c = cone(&[&[1, 0], &[1, 2]]);
        let mut expected = vec![int_vec(&[0, 1]), int_vec(&[2, -1])];
        expected.sort();
        assert_eq!(c.facets(), expected.as_slice());
        // each generator is tight on exactly one facet and strict on the other
        for g in [int_vec(&[1, 0]), int_vec(&[1, 2])] {
            let tight = c.facets().iter().filter(|f| dot(f, &g).is_zero()).count();
            assert_eq!(tight, 1);
        }
        assert_eq!(c.relative_interior_point(), int_vec(&[2, 2]));
        assert!(c.in_relative_interior(&rat_vec(&int_vec(&[2, 2]))));
    }

    #[test]
    fn whole_space_has_no_facets() {
        let c = Cone::whole_space(3);
        assert!(c.facets().is_empty());
        assert_eq!(c.lineality_dim(), 3);
        assert_eq!(dual_description(2, &[int_vec(&[1, 0]), int_vec(&[-1, 0]), int_vec(&[0, 1]), int_vec(&[0, -1])]).unwrap(), Vec::<Vec<BigInt>>::new());
    }

    #[test]
    fn dimension_guard() {
        assert!(matches!(
            Cone::from_generators(13, &[]),
            Err(Error::DimensionGuard { dim: 13, max: 12 })
        ));
    }

    #[test]
    fn intersection_with_halfspace() {
        let orthant = cone(&[&[1, 0], &[0, 1]]);
        let half = Cone::from_inequalities(2, &[], &[int_vec(&[-1, 0])]).unwrap();
        let meet = orthant.intersect(&half);
        assert_eq!(meet, cone(&[&[0, 1]]));
        assert_eq!(orthant.intersect(&orthant), orthant);
    }

    #[test]
    fn relative_interior_examples() {
        assert_eq!(cone(&[&[1, 0]]).relative_interior_point(), int_vec(&[1, 0]));
        assert_eq!(cone(&[&[1, 0], &[0, 1]]).relative_interior_point(), int_vec(&[1, 1]));
        assert_eq!(Cone::zero(2).relative_interior_point(), int_vec(&[0, 0]));
    }

    #[test]
    fn half_plane_has_lineality() {
        let c = cone(&[&[1, 0], &[-1, 0], &[0, 1]]);
        assert_eq!(c.lineality(), &[int_vec(&[1, 0])]);
        assert_eq!(c.rays(), &[int_vec(&[0, 1])]);
        assert_eq!(c.facets(), &[int_vec(&[0, 1])]);
    }

    #[test]
    fn projective_plane_fan() {
        let fan = Fan::from_int_rays(&[&[1, 0], &[0, 1], &[-1, -1]], vec![vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        assert!(fan.is_complete());
        assert_eq!(toric_gorenstein_index(&fan).unwrap(), BigInt::one());
        let orthant = Fan::from_int_rays(&[&[1, 0], &[0, 1]], vec![vec![0, 1]]).unwrap();
        assert!(!orthant.is_complete());
    }

    #[test]
    fn overlapping_cones_rejected() {
        let bad = Fan::from_int_rays(&[&[1, 0], &[1, 2], &[0, 1], &[2, 1]], vec![vec![0, 1], vec![2, 3]]);
        assert!(bad.is_err());
    }

    #[test]
    fn weighted_fans() {
        let fan = Fan::from_int_rays(&[&[1, 0], &[0, 1], &[-1, -2]], vec![vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        assert_eq!(toric_gorenstein_index(&fan).unwrap(), BigInt::one());
        let fan = Fan::from_int_rays(&[&[1, 0], &[0, 1], &[-1, -3]], vec![vec![0, 2], vec![1, 2], vec![0, 1]]).unwrap();
        assert_eq!(toric_gorenstein_index(&fan).unwrap(), BigInt::from(3));
    }

    #[test]
    fn truncation_examples() {
        let c = cone(&[&[1, 0]]);
        let cell = truncate(&c, &[rat(-1, 1), rat(0, 1)]).unwrap();
        assert_eq!(cell.vertices, vec![vec![rat(0, 1), rat(0, 1)], vec![rat(1, 1), rat(0, 1)]]);
        assert!(cell.is_polytope());
        let bad = truncate(&c, &[rat(1, 1), rat(0, 1)]);
        assert!(matches!(bad, Err(Error::Precondition(_))));
    }

    #[test]
    fn refinement_of_quadrant_by_diagonal() {
        let quadrant = cone(&[&[1, 0], &[0, 1]]);
        let upper = Cone::from_inequalities(2, &[], &[int_vec(&[-1, 1])]).unwrap();
        let lower = Cone::from_inequalities(2, &[], &[int_vec(&[1, -1])]).unwrap();
        let pieces = refine_fan(std::slice::from_ref(&quadrant), &[upper, lower]);
        assert_eq!(pieces.len(), 2);
        assert!(pieces.contains(&cone(&[&[1, 0], &[1, 1]])));
        assert!(pieces.contains(&cone(&[&[0, 1], &[1, 1]])));
        assert!(covers(&pieces, &quadrant));
        assert_eq!(refine_fan(std::slice::from_ref(&quadrant), std::slice::from_ref(&quadrant)), vec![quadrant]);
    }

    #[test]
    fn faces() {
        let c = cone(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert!(cone(&[&[1, 0, 0], &[0, 1, 0]]).is_face_of(&c));
        assert!(!cone(&[&[1, 1, 0]]).is_face_of(&c));
        assert!(Cone::zero(3).is_face_of(&c));
        assert_eq!(c.facet_cones().len(), 3);
    }

    #[test]
    fn subsets_count() {
        assert_eq!(subsets(5, 2).len(), 10);
        assert_eq!(subsets(3, 0), vec![Vec::<usize>::new()]);
        assert!(subsets(2, 3).is_empty());
    }
}
