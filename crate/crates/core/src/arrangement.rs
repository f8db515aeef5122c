//! Defining data `(A, P)` of a general arrangement variety, its class
//! group, the moving cone and the fans `Σ(u)` of ample classes.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactla::{hnf, rank, snf, IntMat, Rat, RatMat};
use crate::polyhedra::{subsets, Cone, Fan, MAX_DIM};
use crate::tropical::{prune_to_minimal, TropStructure};

/// Largest number of columns of `P` for which the faces of the positive
/// orthant are enumerated.
pub const MAX_COLUMNS: usize = 20;

/// The pair `(A, P)` with its block structure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrangementData {
    r: usize,
    c: usize,
    n: Vec<usize>,
    m: usize,
    l: Vec<Vec<i64>>,
    a: RatMat,
    d: IntMat,
    p: IntMat,
}

/// Column of `P`: either `v_ij` of block `i` or the extra column `v_k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Column {
    Block { block: usize, index: usize },
    Extra(usize),
}

impl fmt::Display for Column {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Column::Block { block, index } if block < 10 && index < 9 => write!(f, "v{}{}", block, index + 1),
            Column::Block { block, index } => write!(f, "v{}_{}", block, index + 1),
            Column::Extra(k) => write!(f, "v{}", k + 1),
        }
    }
}

impl ArrangementData {
    /// Assembles `P` from `l` and `D` after checking shapes. Mathematical
    /// conditions are left to [`ArrangementData::validate`].
    pub fn new(
        r: usize,
        c: usize,
        n: Vec<usize>,
        m: usize,
        l: Vec<Vec<i64>>,
        a: RatMat,
        d: IntMat,
    ) -> Result<Self> {
        let shape = |msg: String| Err(Error::InvalidInput(msg));
        if c == 0 || r < c {
            return shape(format!("need r >= c > 0, got r = {r}, c = {c}"));
        }
        if n.len() != r + 1 {
            return shape(format!("n must have r+1 = {} entries, got {}", r + 1, n.len()));
        }
        if l.len() != r + 1 {
            return shape(format!("l must have r+1 = {} entries, got {}", r + 1, l.len()));
        }
        for (i, (ni, li)) in n.iter().zip(&l).enumerate() {
            if *ni == 0 {
                return shape(format!("block {i} is empty"));
            }
            if li.len() != *ni {
                return shape(format!("l_{i} has {} entries, expected n_{i} = {ni}", li.len()));
            }
        }
        if a.rows() != c + 1 || a.cols() != r + 1 {
            return shape(format!("A must be {}x{}, got {}x{}", c + 1, r + 1, a.rows(), a.cols()));
        }
        let cols = n.iter().sum::<usize>() + m;
        if d.cols() != cols {
            return shape(format!("D must have n+m = {cols} columns, got {}", d.cols()));
        }
        if r + d.rows() > MAX_DIM {
            return Err(Error::DimensionGuard { dim: r + d.rows(), max: MAX_DIM });
        }
        let mut p = IntMat::zeros(r + d.rows(), cols);
        for i in 1..=r {
            for (j, &lj) in l[0].iter().enumerate() {
                p.set(i - 1, j, BigInt::from(-lj));
            }
            let off: usize = n[..i].iter().sum();
            for (j, &lj) in l[i].iter().enumerate() {
                p.set(i - 1, off + j, BigInt::from(lj));
            }
        }
        for k in 0..d.rows() {
            for j in 0..cols {
                p.set(r + k, j, d.get(k, j).clone());
            }
        }
        Ok(ArrangementData { r, c, n, m, l, a, d, p })
    }

    /// Like [`ArrangementData::new`] followed by a successful validation.
    pub fn new_valid(
        r: usize,
        c: usize,
        n: Vec<usize>,
        m: usize,
        l: Vec<Vec<i64>>,
        a: RatMat,
        d: IntMat,
    ) -> Result<Self> {
        let data = Self::new(r, c, n, m, l, a, d)?;
        let violations = data.validate();
        if violations.is_empty() {
            Ok(data)
        } else {
            Err(Error::Validation(violations))
        }
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn c(&self) -> usize {
        self.c
    }

    pub fn s(&self) -> usize {
        self.d.rows()
    }

    pub fn n(&self) -> &[usize] {
        &self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn l(&self) -> &[Vec<i64>] {
        &self.l
    }

    pub fn a(&self) -> &RatMat {
        &self.a
    }

    pub fn d(&self) -> &IntMat {
        &self.d
    }

    pub fn p(&self) -> &IntMat {
        &self.p
    }

    /// Dimension `r + s` of the lattice `N`.
    pub fn lattice_dim(&self) -> usize {
        self.r + self.s()
    }

    pub fn num_columns(&self) -> usize {
        self.p.cols()
    }

    pub fn block_offset(&self, block: usize) -> usize {
        self.n[..block].iter().sum()
    }

    pub fn column(&self, k: usize) -> Column {
        let mut off = 0;
        for (block, &ni) in self.n.iter().enumerate() {
            if k < off + ni {
                return Column::Block { block, index: k - off };
            }
            off += ni;
        }
        Column::Extra(k - off)
    }

    pub fn column_label(&self, k: usize) -> String {
        self.column(k).to_string()
    }

    /// Block of column `k`, if it is not an extra column.
    pub fn block_of(&self, k: usize) -> Option<usize> {
        match self.column(k) {
            Column::Block { block, .. } => Some(block),
            Column::Extra(_) => None,
        }
    }

    pub fn block_columns(&self, block: usize) -> std::ops::Range<usize> {
        let off = self.block_offset(block);
        off..off + self.n[block]
    }

    pub fn exponent(&self, k: usize) -> Option<i64> {
        match self.column(k) {
            Column::Block { block, index } => Some(self.l[block][index]),
            Column::Extra(_) => None,
        }
    }

    pub fn columns(&self) -> Vec<Vec<BigInt>> {
        self.p.col_vecs()
    }

    /// All violated conditions on `(A, P)`; empty when the data is valid.
    pub fn validate(&self) -> Vec<String> {
        let mut violations = Vec::new();
        for (i, li) in self.l.iter().enumerate() {
            if li.iter().any(|&x| x < 1) {
                violations.push(format!("exponents l_{i} must be positive"));
            }
        }
        for cols in subsets(self.r + 1, self.c + 1) {
            if self.a.select_cols(&cols).det().is_zero() {
                violations.push(format!(
                    "any c+1 columns of A must be linearly independent (columns {cols:?} are not)"
                ));
            }
        }
        let columns = self.columns();
        for i in 0..columns.len() {
            for j in i + 1..columns.len() {
                if columns[i] == columns[j] {
                    violations.push(format!(
                        "columns of P must be pairwise different ({} = {})",
                        self.column_label(i),
                        self.column_label(j)
                    ));
                }
            }
        }
        for (k, col) in columns.iter().enumerate() {
            let g = col.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
            if !g.is_one() {
                violations.push(format!("column {} of P must be primitive", self.column_label(k)));
            }
        }
        if rank(&self.p.to_rat()) != self.lattice_dim() {
            violations.push("columns of P must generate Q^(r+s) as a vector space".into());
        }
        violations
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// The trinomial relations `g_1, …, g_{r−c}`.
    pub fn relations(&self) -> Vec<Relation> {
        (1..=self.r - self.c)
            .map(|t| {
                let blocks: Vec<usize> = (0..=self.c).chain(std::iter::once(self.c + t)).collect();
                let coefficients = (0..blocks.len())
                    .map(|p| {
                        let rest: Vec<usize> =
                            blocks.iter().enumerate().filter(|&(q, _)| q != p).map(|(_, &b)| b).collect();
                        let minor = self.a.select_cols(&rest).det();
                        if (blocks.len() + p + 1).is_multiple_of(2) {
                            minor
                        } else {
                            -minor
                        }
                    })
                    .collect();
                let exponents = blocks.iter().map(|&b| self.l[b].clone()).collect();
                Relation { blocks, coefficients, exponents }
            })
            .collect()
    }

    /// Class group `K = ℤ^{n+m} / im(Pᵀ)` with the degree map.
    pub fn degree_map(&self) -> Result<DegreeData> {
        let cols = self.num_columns();
        let rk = self.lattice_dim();
        let (s, u, _) = snf(&self.p.transpose());
        let mut torsion = Vec::new();
        let mut tors_rows = Vec::new();
        for i in 0..rk {
            let d = s.get(i, i).clone();
            if d.is_zero() {
                return Err(Error::Precondition("P does not have full rank".into()));
            }
            if !d.is_one() {
                torsion.push(d);
                tors_rows.push(u.row(i).to_vec());
            }
        }
        let free_rows: Vec<Vec<BigInt>> = (rk..cols).map(|i| u.row(i).to_vec()).collect();
        let q_free = if free_rows.is_empty() {
            IntMat::zeros(0, cols)
        } else {
            hnf(&IntMat::from_rows(&free_rows, cols)).0
        };
        let q_tors = IntMat::from_rows(&tors_rows, cols);
        let mut dd = DegreeData {
            free_rank: cols - rk,
            torsion,
            q_free,
            q_tors,
            degrees: Vec::new(),
            relation_degree: KElement::default(),
        };
        dd.degrees = (0..cols)
            .map(|k| {
                let mut e = vec![BigInt::zero(); cols];
                e[k] = BigInt::one();
                dd.class_of(&e)
            })
            .collect();

        for i in 0..rk {
            if !dd.class_of(self.p.row(i)).is_zero() {
                return Err(Error::InvariantBreach(format!("degree map does not kill row {i} of P")));
            }
        }
        let block_degrees: Vec<KElement> = (0..=self.r).map(|i| self.monomial_degree(&dd, i)).collect();
        if block_degrees.iter().any(|d| *d != block_degrees[0]) {
            return Err(Error::InvariantBreach("relation monomials have different degrees".into()));
        }
        dd.relation_degree = block_degrees[0].clone();
        Ok(dd)
    }

    fn monomial_degree(&self, dd: &DegreeData, block: usize) -> KElement {
        let mut x = vec![BigInt::zero(); self.num_columns()];
        for (j, k) in self.block_columns(block).enumerate() {
            x[k] = BigInt::from(self.l[block][j]);
        }
        dd.class_of(&x)
    }

    /// Coefficients of the divisor `D^{(i)}`: `(r−c)·l_ij − 1` on block `i`
    /// and `−1` on every other column.
    pub fn divisor_coefficients(&self, block: usize) -> Vec<BigInt> {
        let rc = (self.r - self.c) as i64;
        (0..self.num_columns())
            .map(|k| match self.column(k) {
                Column::Block { block: b, index } if b == block => BigInt::from(rc * self.l[b][index] - 1),
                _ => BigInt::from(-1),
            })
            .collect()
    }

    /// `−K = Σ deg − (r−c)·μ`, checked to agree for every block.
    pub fn anticanonical_class(&self, dd: &DegreeData) -> Result<KElement> {
        let mut result: Option<KElement> = None;
        for i in 0..=self.r {
            let neg = self.divisor_coefficients(i).iter().map(|x| -x).collect::<Vec<_>>();
            let class = dd.class_of(&neg);
            match &result {
                None => result = Some(class),
                Some(prev) if *prev != class => {
                    return Err(Error::InvariantBreach(format!(
                        "anticanonical class depends on the block ({i})"
                    )))
                }
                Some(_) => {}
            }
        }
        let class = result.expect("at least one block");
        let rc = BigInt::from((self.r - self.c) as i64);
        let direct = dd.degrees.iter().fold(KElement::zero_like(dd), |acc, d| acc.add(d, dd));
        let direct = direct.sub(&dd.relation_degree.scale(&rc, dd), dd);
        if direct != class {
            return Err(Error::InvariantBreach("anticanonical class formula mismatch".into()));
        }
        Ok(class)
    }

    /// `Mov = ⋂_k cone(w_j : j ≠ k)` in the free part of `K_ℚ`.
    pub fn moving_cone(&self, dd: &DegreeData) -> Result<Cone> {
        let whole = Cone::from_generators(self.lattice_dim(), &self.columns())?;
        if whole.dim() != self.lattice_dim() || !whole.facets().is_empty() {
            return Err(Error::NotQuasiprojectiveSetup);
        }
        let k = dd.free_rank;
        let mut mov = Cone::whole_space(k);
        for omit in 0..self.num_columns() {
            let gens: Vec<Vec<BigInt>> = (0..self.num_columns())
                .filter(|&j| j != omit)
                .map(|j| dd.degrees[j].free.clone())
                .collect();
            mov = mov.intersect(&Cone::from_generators(k, &gens)?);
        }
        Ok(mov)
    }

    /// The fan `Σ(u)` of the ample class `u` together with its pruning to
    /// the minimal ambient toric variety.
    pub fn fan_from_ample(&self, dd: &DegreeData, u: &KElement) -> Result<AmpleFan> {
        let cols = self.num_columns();
        if cols > MAX_COLUMNS {
            return Err(Error::DimensionGuard { dim: cols, max: MAX_COLUMNS });
        }
        let mov = self.moving_cone(dd)?;
        let u_rat: Vec<Rat> = u.free.iter().map(|x| Rat::from_integer(x.clone())).collect();
        if !mov.in_relative_interior(&u_rat) || mov.dim() != dd.free_rank {
            return Err(Error::NotAmple);
        }
        let k = dd.free_rank;
        let mut relevant: Vec<u32> = Vec::new();
        for mask in 1u32..(1u32 << cols) {
            let gens: Vec<Vec<BigInt>> =
                (0..cols).filter(|j| mask >> j & 1 == 1).map(|j| dd.degrees[j].free.clone()).collect();
            if Cone::from_generators(k, &gens)?.in_relative_interior(&u_rat) {
                relevant.push(mask);
            }
        }
        let minimal: Vec<u32> = relevant
            .iter()
            .copied()
            .filter(|&a| !relevant.iter().any(|&b| b != a && b & a == b))
            .collect();
        let all = (1u32 << cols) - 1;
        let cones: Vec<Vec<usize>> = minimal
            .iter()
            .map(|&mask| (0..cols).filter(|j| (all & !mask) >> j & 1 == 1).collect())
            .filter(|s: &Vec<usize>| !s.is_empty())
            .collect();
        let ambient = Fan::from_known_fan(self.lattice_dim(), self.columns(), cones)?;
        let trop = TropStructure::new(self.r, self.c, self.s());
        let minimal = prune_to_minimal(&trop, &ambient);
        Ok(AmpleFan { ambient, minimal })
    }

    /// Fano test: `−K` ample and `Σ(−K)` complete.
    pub fn is_fano(&self) -> Result<FanoCheck> {
        let dd = self.degree_map()?;
        let anti = self.anticanonical_class(&dd)?;
        match self.fan_from_ample(&dd, &anti) {
            Ok(fan) => {
                if fan.ambient.is_complete() {
                    Ok(FanoCheck { degrees: dd, anticanonical: anti, fan: Some(fan), reason: None })
                } else {
                    Ok(FanoCheck {
                        degrees: dd,
                        anticanonical: anti,
                        fan: Some(fan),
                        reason: Some("fan of the anticanonical class is not complete".into()),
                    })
                }
            }
            Err(Error::NotAmple) => Ok(FanoCheck {
                degrees: dd,
                anticanonical: anti,
                fan: None,
                reason: Some("anticanonical class is not in the interior of the moving cone".into()),
            }),
            Err(e) => Err(e),
        }
    }
}

/// One relation `g_t`, stored symbolically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    /// Blocks `0, …, c, c+t` whose monomials appear.
    pub blocks: Vec<usize>,
    /// Signed maximal minors of `A`, one per monomial.
    pub coefficients: Vec<Rat>,
    /// Exponent vectors `l_i` of the monomials.
    pub exponents: Vec<Vec<i64>>,
}

/// An element of `K`: free coordinates and torsion residues.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KElement {
    pub free: Vec<BigInt>,
    pub torsion: Vec<BigInt>,
}

impl KElement {
    pub fn is_zero(&self) -> bool {
        self.free.iter().chain(&self.torsion).all(Zero::is_zero)
    }

    fn zero_like(dd: &DegreeData) -> KElement {
        KElement { free: vec![BigInt::zero(); dd.free_rank], torsion: vec![BigInt::zero(); dd.torsion.len()] }
    }

    fn reduce(mut self, dd: &DegreeData) -> KElement {
        for (t, d) in self.torsion.iter_mut().zip(&dd.torsion) {
            *t = t.mod_floor(d);
        }
        self
    }

    pub fn add(&self, other: &KElement, dd: &DegreeData) -> KElement {
        KElement {
            free: self.free.iter().zip(&other.free).map(|(a, b)| a + b).collect(),
            torsion: self.torsion.iter().zip(&other.torsion).map(|(a, b)| a + b).collect(),
        }
        .reduce(dd)
    }

    pub fn sub(&self, other: &KElement, dd: &DegreeData) -> KElement {
        self.add(&other.scale(&BigInt::from(-1), dd), dd)
    }

    pub fn scale(&self, f: &BigInt, dd: &DegreeData) -> KElement {
        KElement {
            free: self.free.iter().map(|a| a * f).collect(),
            torsion: self.torsion.iter().map(|a| a * f).collect(),
        }
        .reduce(dd)
    }
}

impl fmt::Display for KElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let free: Vec<String> = self.free.iter().map(ToString::to_string).collect();
        write!(f, "({})", free.join(","))?;
        if !self.torsion.is_empty() {
            let t: Vec<String> = self.torsion.iter().map(ToString::to_string).collect();
            write!(f, "+[{}]", t.join(","))?;
        }
        Ok(())
    }
}

/// Presentation of `K` and the degrees of the generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeData {
    pub free_rank: usize,
    /// Elementary divisors greater than one.
    pub torsion: Vec<BigInt>,
    /// Free part of the degree map, in Hermite normal form.
    pub q_free: IntMat,
    /// One congruence row per torsion divisor.
    pub q_tors: IntMat,
    /// `deg(e_k)` for every column.
    pub degrees: Vec<KElement>,
    /// Common degree `μ` of the relation monomials.
    pub relation_degree: KElement,
}

impl DegreeData {
    pub fn class_of(&self, x: &[BigInt]) -> KElement {
        let free = if self.free_rank == 0 { Vec::new() } else { self.q_free.mul_vec(x) };
        let torsion = if self.torsion.is_empty() { Vec::new() } else { self.q_tors.mul_vec(x) };
        KElement { free, torsion }.reduce(self)
    }
}

/// `Σ(u)` and its pruning along the tropical variety.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AmpleFan {
    /// The complete fan of the ambient toric variety.
    pub ambient: Fan,
    /// The fan of the minimal ambient toric variety.
    pub minimal: Fan,
}

/// Outcome of the Fano test.
#[derive(Clone, Debug)]
pub struct FanoCheck {
    pub degrees: DegreeData,
    pub anticanonical: KElement,
    pub fan: Option<AmpleFan>,
    /// Why the data is not Fano; `None` when it is.
    pub reason: Option<String>,
}

impl FanoCheck {
    pub fn is_fano(&self) -> bool {
        self.reason.is_none()
    }
}

/// The matrix `A = [[−1, 1, 0], [−1, 0, 1]]` of the complexity-one
/// threefold families.
pub fn standard_a() -> RatMat {
    IntMat::from_i64(&[&[-1, 1, 0], &[-1, 0, 1]]).to_rat()
}
