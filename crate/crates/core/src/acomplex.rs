//! Weakly tropical resolution, anticanonical complex, lattice distances
//! and the Gorenstein index.

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use crate::arrangement::ArrangementData;
use crate::error::{Error, Result};
use crate::exactla::{
    dot_ri, integer_kernel, lcm_all, min_integral_multiplier, primitive, rat_gcd, rat_vec,
    solve_rational, IntMat, Rat,
};
use crate::polyhedra::{covers, truncate, Cell, Cone, Fan};
use crate::tropical::{ConeClass, TropStructure};

/// A maximal cone `σ ∩ λ_I` of `Σ′ = Σ ⊓ trop(X)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolvedCone {
    /// Index of `σ` among the maximal cones of `Σ`.
    pub parent: usize,
    /// The leaf `I` with `|I| = c`.
    pub leaf: Vec<usize>,
    pub cone: Cone,
}

/// Maximal cones of the coarsest common refinement of `fan` and the leaves.
pub fn weakly_tropical_resolution(trop: &TropStructure, fan: &Fan) -> Vec<ResolvedCone> {
    let mut pieces: Vec<ResolvedCone> = Vec::new();
    for (parent, sigma) in fan.cones().iter().enumerate() {
        for (leaf, lambda) in trop.maximal_leaves() {
            let cone = sigma.intersect(lambda);
            if cone.is_trivial() || pieces.iter().any(|p| p.cone == cone) {
                continue;
            }
            pieces.push(ResolvedCone { parent, leaf: leaf.clone(), cone });
        }
    }
    let keep: Vec<bool> = pieces
        .iter()
        .map(|p| !pieces.iter().any(|q| q.cone != p.cone && q.cone.contains_cone(&p.cone)))
        .collect();
    pieces.into_iter().zip(keep).filter(|(_, k)| *k).map(|(p, _)| p).collect()
}

/// `u_σ′` together with the block `i` whose divisor `D^{(i)}` it realises.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportFunction {
    pub block: usize,
    pub u: Vec<Rat>,
}

fn parent_rows(data: &ArrangementData, fan: &Fan, parent: usize) -> (Vec<usize>, Vec<Vec<BigInt>>) {
    let cols = fan.max_cones()[parent].clone();
    let rows = cols.iter().map(|&k| data.p().col(k)).collect();
    (cols, rows)
}

/// Solves `⟨u, v_ρ⟩ = coeff_ρ(i)` over the rays of the parent cone.
fn solve_on_parent(data: &ArrangementData, fan: &Fan, parent: usize, block: usize) -> Result<Vec<Rat>> {
    let (cols, rows) = parent_rows(data, fan, parent);
    let coeffs = data.divisor_coefficients(block);
    let rhs: Vec<Rat> = cols.iter().map(|&k| Rat::from_integer(coeffs[k].clone())).collect();
    let m = IntMat::from_rows(&rows, data.lattice_dim()).to_rat();
    solve_rational(&m, &rhs).ok_or_else(|| Error::NotQGorensteinOnCone { cone: cone_label(data, &cols) })
}

pub fn cone_label(data: &ArrangementData, cols: &[usize]) -> String {
    let labels: Vec<String> = cols.iter().map(|&k| data.column_label(k)).collect();
    format!("cone({})", labels.join(","))
}

/// Blocks `i` with no `v_ij` inside `piece`.
pub fn admissible_blocks(data: &ArrangementData, piece: &Cone) -> Vec<usize> {
    let columns = data.columns();
    (0..=data.r())
        .filter(|&i| data.block_columns(i).all(|k| !piece.contains_int(&columns[k])))
        .collect()
}

/// The support function of a piece of `Σ′`, using the smallest admissible block.
pub fn support_function(
    data: &ArrangementData,
    fan: &Fan,
    piece: &ResolvedCone,
) -> Result<SupportFunction> {
    let blocks = admissible_blocks(data, &piece.cone);
    let Some(&block) = blocks.first() else {
        return Err(Error::InvariantBreach(format!(
            "piece {} meets every block",
            piece.cone.describe()
        )));
    };
    let u = solve_on_parent(data, fan, piece.parent, block)?;
    if cfg!(debug_assertions) {
        for &other in &blocks[1..] {
            let v = solve_on_parent(data, fan, piece.parent, other)?;
            for g in piece.cone.generators() {
                debug_assert_eq!(dot_ri(&u, &g), dot_ri(&v, &g), "support function depends on the block");
            }
        }
    }
    Ok(SupportFunction { block, u })
}

/// One cell `A_σ′` of the complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexCell {
    pub piece: ResolvedCone,
    pub support: SupportFunction,
    pub cell: Cell,
}

/// A maximal boundary cell `C_σ′ = σ′ ∩ {⟨u_σ′, ·⟩ = −1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryCell {
    /// Index into [`AnticanonicalComplex::cells`].
    pub cell: usize,
    pub vertices: Vec<Vec<Rat>>,
    pub rays: Vec<Vec<BigInt>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnticanonicalComplex {
    pub cells: Vec<ComplexCell>,
    /// Distinct non-zero vertices of all cells, sorted.
    pub vertex_set: Vec<Vec<Rat>>,
    pub boundary_cells: Vec<BoundaryCell>,
}

/// Whether `|trop(X)| ⊆ |Σ|`: every maximal leaf is covered by its pieces.
pub fn covers_trop(trop: &TropStructure, fan: &Fan) -> bool {
    trop.maximal_leaves().all(|(_, leaf)| {
        let pieces: Vec<Cone> = fan.cones().iter().map(|s| s.intersect(leaf)).collect();
        covers(&pieces, leaf)
    })
}

/// Complete, or a single maximal big cone.
pub fn check_fan_setting(trop: &TropStructure, fan: &Fan) -> Result<()> {
    if covers_trop(trop, fan) {
        return Ok(());
    }
    if fan.cones().len() == 1 && trop.classify_cone(&fan.cones()[0])?.is_big() {
        return Ok(());
    }
    Err(Error::NotComplete)
}

pub fn build_complex(data: &ArrangementData, fan: &Fan) -> Result<AnticanonicalComplex> {
    let trop = TropStructure::for_data(data);
    check_fan_setting(&trop, fan)?;
    let pieces = weakly_tropical_resolution(&trop, fan);
    let cells: Vec<ComplexCell> = pieces
        .into_par_iter()
        .map(|piece| {
            let support = support_function(data, fan, &piece)?;
            let cell = truncate(&piece.cone, &support.u)?;
            Ok(ComplexCell { piece, support, cell })
        })
        .collect::<Result<_>>()?;

    let mut vertex_set: Vec<Vec<Rat>> = cells
        .iter()
        .flat_map(|c| c.cell.vertices.iter())
        .filter(|v| v.iter().any(|x| !x.is_zero()))
        .cloned()
        .collect();
    vertex_set.sort();
    vertex_set.dedup();

    let boundary_cells = cells
        .iter()
        .enumerate()
        .filter_map(|(k, c)| {
            let vertices: Vec<Vec<Rat>> =
                c.cell.vertices.iter().filter(|v| v.iter().any(|x| !x.is_zero())).cloned().collect();
            if vertices.is_empty() {
                None
            } else {
                Some(BoundaryCell { cell: k, vertices, rays: c.cell.rays.clone() })
            }
        })
        .collect();
    Ok(AnticanonicalComplex { cells, vertex_set, boundary_cells })
}

/// Lattice distance `d(x, aff(points))`.
pub fn lattice_distance(x: &[BigInt], points: &[Vec<Rat>]) -> Result<BigInt> {
    lattice_distance_with_rays(x, points, &[])
}

/// Lattice distance from `x` to the affine hull of `points` extended by
/// the recession directions `rays`: the positive generator of the values
/// `φ(p) − φ(x)` over integral linear forms `φ` constant on that hull.
pub fn lattice_distance_with_rays(x: &[BigInt], points: &[Vec<Rat>], rays: &[Vec<BigInt>]) -> Result<BigInt> {
    let Some(p0) = points.first() else {
        return Err(Error::Precondition("lattice distance to an empty cell".into()));
    };
    let n = x.len();
    let mut directions: Vec<Vec<BigInt>> = points[1..]
        .iter()
        .map(|p| primitive(&p.iter().zip(p0).map(|(a, b)| a - b).collect::<Vec<_>>()))
        .chain(rays.iter().cloned())
        .filter(|d| d.iter().any(|v| !v.is_zero()))
        .collect();
    directions.dedup();
    let forms = if directions.is_empty() {
        IntMat::identity(n).row_vecs()
    } else {
        integer_kernel(&IntMat::from_rows(&directions, n))
    };
    let offset: Vec<Rat> = p0.iter().zip(rat_vec(x)).map(|(a, b)| a - b).collect();
    let values: Vec<Rat> = forms.iter().map(|phi| dot_ri(&offset, phi)).collect();
    if values.iter().all(Zero::is_zero) {
        return Err(Error::DegenerateCell);
    }
    let delta = rat_gcd(&values);
    if !delta.is_integer() {
        return Err(Error::NotLatticeMeasurable(delta.to_string()));
    }
    Ok(delta.to_integer())
}

/// Distances of the boundary cells from the origin, in cell order.
pub fn boundary_distances(ac: &AnticanonicalComplex) -> Result<Vec<BigInt>> {
    let n = ac.cells.first().map_or(0, |c| c.piece.cone.ambient_dim());
    let origin = vec![BigInt::zero(); n];
    ac.boundary_cells
        .iter()
        .map(|b| lattice_distance_with_rays(&origin, &b.vertices, &b.rays))
        .collect()
}

/// `lcm` of the lattice distances of the maximal boundary cells.
pub fn gorenstein_index_via_complex(ac: &AnticanonicalComplex) -> Result<BigInt> {
    Ok(lcm_all(boundary_distances(ac)?.iter()))
}

/// Per-cone Cartier indices `c_σ` and their `lcm`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeIndices {
    pub per_cone: Vec<BigInt>,
    pub index: BigInt,
}

/// `c_σ` computed from `D^{(i)}` for every block `i`, in block order.
pub fn cartier_indices_by_block(data: &ArrangementData, fan: &Fan, parent: usize) -> Result<Vec<BigInt>> {
    let (cols, rows) = parent_rows(data, fan, parent);
    let m = IntMat::from_rows(&rows, data.lattice_dim());
    (0..=data.r())
        .map(|i| {
            let coeffs = data.divisor_coefficients(i);
            let rhs: Vec<Rat> = cols.iter().map(|&k| Rat::from_integer(coeffs[k].clone())).collect();
            min_integral_multiplier(&m, &rhs).ok_or_else(|| Error::NotQGorensteinOnCone { cone: cone_label(data, &cols) })
        })
        .collect()
}

/// Gorenstein index as `lcm(c_σ)` over the maximal cones of `fan`.
pub fn gorenstein_index_via_cones(data: &ArrangementData, fan: &Fan) -> Result<ConeIndices> {
    let per_cone = (0..fan.max_cones().len())
        .map(|parent| {
            let by_block = cartier_indices_by_block(data, fan, parent)?;
            if by_block.iter().any(|c| *c != by_block[0]) {
                return Err(Error::InvariantBreach(format!(
                    "Cartier index of {} depends on the block: {:?}",
                    cone_label(data, &fan.max_cones()[parent]),
                    by_block
                )));
            }
            Ok(by_block[0].clone())
        })
        .collect::<Result<Vec<_>>>()?;
    let index = lcm_all(per_cone.iter());
    Ok(ConeIndices { per_cone, index })
}

/// Both index computations with the classification of every maximal cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceReport {
    pub boundary_distances: Vec<BigInt>,
    pub cone_indices: Vec<BigInt>,
    pub cone_classes: Vec<ConeClass>,
    pub gorenstein_index: BigInt,
}

/// Runs both routes and fails with an invariant breach when they disagree.
pub fn distance_report(data: &ArrangementData, fan: &Fan, ac: &AnticanonicalComplex) -> Result<DistanceReport> {
    let trop = TropStructure::for_data(data);
    let boundary = boundary_distances(ac)?;
    let via_complex = lcm_all(boundary.iter());
    let cones = gorenstein_index_via_cones(data, fan)?;
    if via_complex != cones.index {
        return Err(Error::InvariantBreach(format!(
            "Gorenstein index via complex {via_complex} differs from index via cones {}",
            cones.index
        )));
    }
    let cone_classes = fan.cones().iter().map(|c| trop.classify_cone(c)).collect::<Result<Vec<_>>>()?;
    Ok(DistanceReport {
        boundary_distances: boundary,
        cone_indices: cones.per_cone,
        cone_classes,
        gorenstein_index: via_complex,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::standard_a;
    use crate::exactla::{int_vec, rat};
    use num_traits::One;

    fn worked_example() -> (ArrangementData, Fan) {
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
        let fan = Fan::new(3, data.columns(), vec![vec![0, 2, 3], vec![1, 2, 3], vec![0, 1]]).unwrap();
        (data, fan)
    }

    fn pt(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| rat(x, 1)).collect()
    }

    #[test]
    fn resolution_has_seven_pieces() {
        let (data, fan) = worked_example();
        let trop = TropStructure::for_data(&data);
        let pieces = weakly_tropical_resolution(&trop, &fan);
        assert_eq!(pieces.len(), 7);
        for p in &pieces {
            assert!(matches!(trop.classify_cone(&p.cone).unwrap(), ConeClass::Leaf(_)));
        }
    }

    #[test]
    fn support_functions_of_worked_example() {
        let (data, fan) = worked_example();
        let sigma1 = fan.max_cones().iter().position(|s| s == &vec![0, 2, 3]).unwrap();
        let u = solve_on_parent(&data, &fan, sigma1, 0).unwrap();
        assert_eq!(u, vec![rat(-1, 4), rat(0, 1), rat(-1, 2)]);
        let u1 = solve_on_parent(&data, &fan, sigma1, 1).unwrap();
        assert_eq!(u1, vec![rat(3, 4), rat(0, 1), rat(-1, 2)]);
        let sigma2 = fan.max_cones().iter().position(|s| s == &vec![1, 2, 3]).unwrap();
        assert_eq!(solve_on_parent(&data, &fan, sigma2, 0).unwrap(), pt(&[-1, -1, 1]));
    }

    #[test]
    fn complex_of_worked_example() {
        let (data, fan) = worked_example();
        let ac = build_complex(&data, &fan).unwrap();
        let mut expected = vec![
            pt(&[-2, -2, -1]),
            pt(&[-1, -1, -2]),
            pt(&[2, 0, 1]),
            pt(&[0, 3, 2]),
            pt(&[0, 0, 2]),
            pt(&[0, 0, -1]),
        ];
        expected.sort();
        assert_eq!(ac.vertex_set, expected);
        assert_eq!(ac.boundary_cells.len(), 7);
        let mut d: Vec<i64> = boundary_distances(&ac).unwrap().iter().map(|x| x.try_into().unwrap()).collect();
        d.sort();
        assert_eq!(d, vec![1, 1, 1, 2, 3, 4, 4]);
        assert_eq!(gorenstein_index_via_complex(&ac).unwrap(), BigInt::from(12));
        let cones = gorenstein_index_via_cones(&data, &fan).unwrap();
        assert_eq!(cones.index, BigInt::from(12));
    }

    #[test]
    fn lattice_distance_examples() {
        let o = int_vec(&[0, 0, 0]);
        assert_eq!(lattice_distance(&o, &[pt(&[0, 0, 2]), pt(&[-2, -2, -1])]).unwrap(), BigInt::from(4));
        assert_eq!(lattice_distance(&o, &[pt(&[-2, -2, -1]), pt(&[-1, -1, -2])]).unwrap(), BigInt::from(3));
        assert_eq!(lattice_distance(&o, &[pt(&[0, 0, 2]), pt(&[0, 3, 2])]).unwrap(), BigInt::from(2));
        assert_eq!(
            lattice_distance(&int_vec(&[0, 0]), &[pt(&[1, 0]), pt(&[1, 1]), pt(&[1, -3])]).unwrap(),
            BigInt::one()
        );
        assert_eq!(lattice_distance(&o, &[pt(&[0, 0, 0]), pt(&[1, 0, 0])]), Err(Error::DegenerateCell));
        let half = vec![rat(1, 2), rat(0, 1)];
        assert!(matches!(
            lattice_distance(&int_vec(&[0, 0]), &[half]),
            Err(Error::NotLatticeMeasurable(_))
        ));
    }
}
