//! Integer lattice arithmetic: Hermite and Smith normal forms, sublattices,
//! indices, and primitive vectors. Everything is arbitrary precision.

use crate::error::{Error, Result};
use crate::numbers::{gcd_all, int_rows, rat_int, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Dense integer matrix in row-major order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::InvalidMatrix(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(IntegerMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows; `cols` is needed when `rows` is empty.
    pub fn from_rows(rows: &[Vec<BigInt>], cols: usize) -> Result<Self> {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
            entries.extend(r.iter().cloned());
        }
        Self::new(rows.len(), cols, entries)
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        Self::from_rows(&rows, cols).expect("ragged literal matrix")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntegerMatrix) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * &other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    /// Row vector times matrix.
    pub fn left_apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        (0..self.cols)
            .map(|j| (0..self.rows).map(|i| &v[i] * &self[(i, j)]).sum())
            .collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Fraction-free (Bareiss) determinant.
    pub fn determinant(&self) -> Result<BigInt> {
        if !self.is_square() {
            return Err(Error::InvalidMatrix(
                "determinant of a non-square matrix".into(),
            ));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a = self.to_rows();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        Ok(sign * &a[n - 1][n - 1])
    }

    pub fn rank(&self) -> usize {
        smith_normal_form(self)
            .diagonal
            .iter()
            .filter(|d| !d.is_zero())
            .count()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += k * row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = &self[(src, j)] * k;
            self[(dst, j)] += v;
        }
    }

    /// col[dst] += k * col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = &self[(i, src)] * k;
            self[(i, dst)] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -&self[(i, j)];
            self[(i, j)] = v;
        }
    }

    /// Replaces rows (a, b) by (x*a + y*b, u*a + v*b).
    fn combine_rows(&mut self, a: usize, b: usize, coeffs: [&BigInt; 4]) {
        let [x, y, u, v] = coeffs;
        for j in 0..self.cols {
            let ra = self[(a, j)].clone();
            let rb = self[(b, j)].clone();
            self[(a, j)] = x * &ra + y * &rb;
            self[(b, j)] = u * &ra + v * &rb;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntegerMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntegerMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.entries[i * self.cols + j]
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixDoc {
    cols: usize,
    #[serde(with = "int_rows")]
    rows: Vec<Vec<BigInt>>,
}

impl Serialize for IntegerMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixDoc {
            cols: self.cols,
            rows: self.to_rows(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntegerMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let doc = MatrixDoc::deserialize(d)?;
        IntegerMatrix::from_rows(&doc.rows, doc.cols).map_err(serde::de::Error::custom)
    }
}

/// Divides `v` by the gcd of its entries.
pub fn primitive_vector(v: &[BigInt]) -> Result<Vec<BigInt>> {
    let g = gcd_all(v);
    if g.is_zero() {
        return Err(Error::ZeroVector);
    }
    Ok(v.iter().map(|x| x / &g).collect())
}

pub fn is_primitive(v: &[BigInt]) -> bool {
    gcd_all(v).is_one()
}

fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    (e.gcd, e.x, e.y)
}

/// Row-style Hermite normal form: returns `(H, U)` with `H = U * A`, `U`
/// unimodular, pivots positive and entries above each pivot reduced into
/// `[0, pivot)`. Zero rows trail.
pub fn hermite_normal_form(a: &IntegerMatrix) -> (IntegerMatrix, IntegerMatrix) {
    let mut h = a.clone();
    let mut u = IntegerMatrix::identity(a.rows);
    let mut pivot_row = 0;
    let mut pivots = Vec::new();
    for col in 0..h.cols {
        if pivot_row == h.rows {
            break;
        }
        // Fold every entry below into the pivot row by 2x2 unimodular steps.
        for i in pivot_row + 1..h.rows {
            if h[(i, col)].is_zero() {
                continue;
            }
            let a0 = h[(pivot_row, col)].clone();
            let b0 = h[(i, col)].clone();
            let (g, x, y) = ext_gcd(&a0, &b0);
            let u_c = -(&b0 / &g);
            let v_c = &a0 / &g;
            h.combine_rows(pivot_row, i, [&x, &y, &u_c, &v_c]);
            u.combine_rows(pivot_row, i, [&x, &y, &u_c, &v_c]);
        }
        if h[(pivot_row, col)].is_zero() {
            continue;
        }
        if h[(pivot_row, col)].is_negative() {
            h.negate_row(pivot_row);
            u.negate_row(pivot_row);
        }
        let p = h[(pivot_row, col)].clone();
        for i in 0..pivot_row {
            let q = -h[(i, col)].div_floor(&p);
            h.add_row(i, pivot_row, &q);
            u.add_row(i, pivot_row, &q);
        }
        pivots.push(col);
        pivot_row += 1;
    }
    (h, u)
}

/// Nonzero rows of the Hermite normal form: a canonical basis of the row lattice.
pub fn row_lattice_basis(a: &IntegerMatrix) -> IntegerMatrix {
    let (h, _) = hermite_normal_form(a);
    let rows: Vec<Vec<BigInt>> = h
        .to_rows()
        .into_iter()
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .collect();
    IntegerMatrix::from_rows(&rows, a.cols).expect("hnf rows have the right width")
}

/// Smith normal form `left * A * right = diag(diagonal)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnfResult {
    pub diagonal: Vec<BigInt>,
    pub left: IntegerMatrix,
    pub right: IntegerMatrix,
}

pub fn smith_normal_form(a: &IntegerMatrix) -> SnfResult {
    let mut m = a.clone();
    let mut left = IntegerMatrix::identity(a.rows);
    let mut right = IntegerMatrix::identity(a.cols);
    let (rows, cols) = (a.rows, a.cols);
    let k = rows.min(cols);
    for t in 0..k {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if m[(i, j)].is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| m[(i, j)].abs() < m[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else { break };
            m.swap_rows(t, bi);
            left.swap_rows(t, bi);
            m.swap_cols(t, bj);
            right.swap_cols(t, bj);
            let p = m[(t, t)].clone();
            let mut dirty = false;
            for i in t + 1..rows {
                let q = -m[(i, t)].div_floor(&p);
                m.add_row(i, t, &q);
                left.add_row(i, t, &q);
                dirty |= !m[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                let q = -m[(t, j)].div_floor(&p);
                m.add_col(j, t, &q);
                right.add_col(j, t, &q);
                dirty |= !m[(t, j)].is_zero();
            }
            if dirty {
                continue;
            }
            let offender =
                (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !m[(i, j)].is_multiple_of(&p)));
            match offender {
                Some(i) => {
                    let one = BigInt::one();
                    m.add_row(t, i, &one);
                    left.add_row(t, i, &one);
                }
                None => break,
            }
        }
        if m[(t, t)].is_negative() {
            m.negate_row(t);
            left.negate_row(t);
        }
    }
    let diagonal = (0..k).map(|t| m[(t, t)].clone()).collect();
    SnfResult {
        diagonal,
        left,
        right,
    }
}

/// Basis (as rows) of the integer kernel `{x in Z^cols : A x = 0}`.
pub fn integer_kernel(a: &IntegerMatrix) -> Vec<Vec<BigInt>> {
    let snf = smith_normal_form(a);
    let rank = snf.diagonal.iter().filter(|d| !d.is_zero()).count();
    (rank..a.cols).map(|j| snf.right.column(j)).collect()
}

/// Basis of the saturation `span_Q(rows) ∩ Z^n` of the row lattice, plus a
/// complementary set of vectors completing it to a basis of `Z^n`.
pub fn saturation_with_complement(a: &IntegerMatrix) -> (Vec<Vec<BigInt>>, Vec<Vec<BigInt>>) {
    let snf = smith_normal_form(a);
    let rank = snf.diagonal.iter().filter(|d| !d.is_zero()).count();
    // rows(A) = rows(left^-1 * D * right^-1), so the first `rank` rows of
    // right^-1 span the saturation and the rest complete them to a basis.
    let inv = unimodular_inverse(&snf.right);
    let rows = inv.to_rows();
    let sat = row_lattice_basis(&IntegerMatrix::from_rows(&rows[..rank], a.cols).unwrap());
    (sat.to_rows(), rows[rank..].to_vec())
}

/// Inverse of a unimodular matrix.
pub fn unimodular_inverse(m: &IntegerMatrix) -> IntegerMatrix {
    let (h, u) = hermite_normal_form(m);
    debug_assert_eq!(h, IntegerMatrix::identity(m.rows()));
    u
}

/// Exact solution of `x * B = v` over the rationals (B given by rows), if any.
pub fn rational_row_solve(basis: &IntegerMatrix, v: &[BigInt]) -> Option<Vec<Rational>> {
    let rows: Vec<Vec<Rational>> = basis
        .to_rows()
        .iter()
        .map(|r| r.iter().map(rat_int).collect())
        .collect();
    let target: Vec<Rational> = v.iter().map(rat_int).collect();
    crate::linalg::solve_row_combination(&rows, &target)
}

/// A sublattice of `Z^ambient_rank` given by generating rows.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SublatticeBasis {
    pub ambient_rank: usize,
    pub basis: IntegerMatrix,
}

impl SublatticeBasis {
    pub fn new(ambient_rank: usize, basis: IntegerMatrix) -> Result<Self> {
        if basis.cols() != ambient_rank {
            return Err(Error::DimensionMismatch {
                expected: ambient_rank,
                found: basis.cols(),
            });
        }
        Ok(SublatticeBasis {
            ambient_rank,
            basis,
        })
    }

    pub fn from_rows(ambient_rank: usize, rows: &[Vec<BigInt>]) -> Result<Self> {
        Self::new(ambient_rank, IntegerMatrix::from_rows(rows, ambient_rank)?)
    }

    pub fn standard(n: usize) -> Self {
        SublatticeBasis {
            ambient_rank: n,
            basis: IntegerMatrix::identity(n),
        }
    }

    pub fn rank(&self) -> usize {
        self.basis.rank()
    }

    pub fn is_full_rank(&self) -> bool {
        self.rank() == self.ambient_rank
    }

    /// The same lattice with its canonical (HNF) basis.
    pub fn canonical(&self) -> Self {
        SublatticeBasis {
            ambient_rank: self.ambient_rank,
            basis: row_lattice_basis(&self.basis),
        }
    }

    pub fn same_lattice(&self, other: &SublatticeBasis) -> bool {
        self.ambient_rank == other.ambient_rank && self.canonical().basis == other.canonical().basis
    }

    pub fn scaled(&self, r: &BigInt) -> Self {
        let entries = self.basis.entries().iter().map(|x| x * r).collect();
        SublatticeBasis {
            ambient_rank: self.ambient_rank,
            basis: IntegerMatrix::new(self.basis.rows(), self.basis.cols(), entries).unwrap(),
        }
    }

    pub fn index(&self) -> Result<BigInt> {
        sublattice_index(self)
    }

    pub fn exponent(&self) -> Result<BigInt> {
        exponent_bound(self)
    }

    pub fn contains(&self, v: &[BigInt]) -> Result<bool> {
        member_of_sublattice(v, self)
    }

    /// Integer coordinates of `v` in the canonical basis, if `v` is in the lattice.
    pub fn coordinates(&self, v: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
        if v.len() != self.ambient_rank {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_rank,
                found: v.len(),
            });
        }
        let canon = self.canonical();
        Ok(hnf_coordinates(&canon.basis, v))
    }

    /// Coordinates of this lattice's canonical basis in terms of `outer`'s
    /// canonical basis; `None` when this lattice is not contained in `outer`.
    pub fn relative_to(&self, outer: &SublatticeBasis) -> Result<Option<IntegerMatrix>> {
        let mut rows = Vec::new();
        for r in self.canonical().basis.to_rows() {
            match outer.coordinates(&r)? {
                Some(c) => rows.push(c),
                None => return Ok(None),
            }
        }
        let cols = outer.canonical().basis.rows();
        Ok(Some(IntegerMatrix::from_rows(&rows, cols)?))
    }
}

/// Back-substitution in an HNF basis (nonzero rows, increasing pivots).
fn hnf_coordinates(h: &IntegerMatrix, v: &[BigInt]) -> Option<Vec<BigInt>> {
    let mut rest = v.to_vec();
    let mut coords = Vec::with_capacity(h.rows());
    for i in 0..h.rows() {
        let row = h.row(i);
        let pc = row.iter().position(|x| !x.is_zero())?;
        // entries left of the pivot must already be cleared
        if rest[..pc].iter().any(|x| !x.is_zero()) {
            return None;
        }
        let (q, r) = rest[pc].div_rem(&row[pc]);
        if !r.is_zero() {
            return None;
        }
        for (x, y) in rest.iter_mut().zip(row) {
            *x -= &q * y;
        }
        coords.push(q);
    }
    if rest.iter().all(|x| x.is_zero()) {
        Some(coords)
    } else {
        None
    }
}

/// `[Z^n : N']` for a full-rank sublattice.
pub fn sublattice_index(b: &SublatticeBasis) -> Result<BigInt> {
    let snf = smith_normal_form(&b.basis);
    let nonzero: Vec<&BigInt> = snf.diagonal.iter().filter(|d| !d.is_zero()).collect();
    if nonzero.len() != b.ambient_rank {
        return Err(Error::InfiniteIndex);
    }
    Ok(nonzero.into_iter().product())
}

/// Smallest `r` with `r Z^n ⊆ N'`: the largest elementary divisor.
pub fn exponent_bound(b: &SublatticeBasis) -> Result<BigInt> {
    let snf = smith_normal_form(&b.basis);
    let nonzero: Vec<&BigInt> = snf.diagonal.iter().filter(|d| !d.is_zero()).collect();
    if nonzero.len() != b.ambient_rank {
        return Err(Error::InfiniteIndex);
    }
    Ok(nonzero.last().map_or_else(BigInt::one, |d| (*d).clone()))
}

pub fn member_of_sublattice(v: &[BigInt], b: &SublatticeBasis) -> Result<bool> {
    Ok(b.coordinates(v)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::ivec;
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> IntegerMatrix {
        IntegerMatrix::from_i64(rows)
    }

    fn lat(rows: &[&[i64]]) -> SublatticeBasis {
        let mm = m(rows);
        SublatticeBasis::new(mm.cols(), mm).unwrap()
    }

    #[test]
    fn primitive_vectors() {
        assert_eq!(primitive_vector(&ivec(&[4, 6])).unwrap(), ivec(&[2, 3]));
        assert_eq!(primitive_vector(&ivec(&[0, -3])).unwrap(), ivec(&[0, -1]));
        assert_eq!(
            primitive_vector(&ivec(&[6, 10, 15])).unwrap(),
            ivec(&[6, 10, 15])
        );
        assert_eq!(primitive_vector(&ivec(&[0, 0])), Err(Error::ZeroVector));
    }

    #[test]
    fn hnf_examples() {
        let id = IntegerMatrix::identity(3);
        assert_eq!(hermite_normal_form(&id), (id.clone(), id));

        let a = m(&[&[2, 0], &[1, 3]]);
        let (h, u) = hermite_normal_form(&a);
        assert_eq!(h, m(&[&[1, 3], &[0, 6]]));
        assert_eq!(u.mul(&a).unwrap(), h);
        assert_eq!(u.determinant().unwrap().abs(), BigInt::one());

        let (h, _) = hermite_normal_form(&m(&[&[0, 1], &[1, 0]]));
        assert_eq!(h, IntegerMatrix::identity(2));
    }

    #[test]
    fn snf_examples() {
        assert_eq!(
            smith_normal_form(&m(&[&[2, 0], &[0, 1]])).diagonal,
            ivec(&[1, 2])
        );
        assert_eq!(
            smith_normal_form(&IntegerMatrix::identity(2)).diagonal,
            ivec(&[1, 1])
        );
        assert_eq!(
            smith_normal_form(&m(&[&[2, 0], &[1, 3]])).diagonal,
            ivec(&[1, 6])
        );
        // rank-deficient input: zeros trail
        assert_eq!(
            smith_normal_form(&m(&[&[2, 4], &[1, 2], &[3, 6]])).diagonal,
            ivec(&[1, 0])
        );
    }

    #[test]
    fn index_and_exponent() {
        assert_eq!(
            sublattice_index(&lat(&[&[2, 0], &[0, 1]])).unwrap(),
            2.into()
        );
        assert_eq!(
            sublattice_index(&SublatticeBasis::standard(3)).unwrap(),
            1.into()
        );
        assert_eq!(
            sublattice_index(&lat(&[&[1, 0], &[-1, -2]])).unwrap(),
            2.into()
        );
        assert_eq!(exponent_bound(&lat(&[&[2, 0], &[0, 1]])).unwrap(), 2.into());
        assert_eq!(
            exponent_bound(&SublatticeBasis::standard(2)).unwrap(),
            1.into()
        );
        let b = lat(&[&[2, 0], &[1, 3]]);
        assert_eq!(exponent_bound(&b).unwrap(), 6.into());
        assert!(b.contains(&ivec(&[6, 0])).unwrap());
        assert!(b.contains(&ivec(&[0, 6])).unwrap());
        assert!(!b.contains(&ivec(&[0, 3])).unwrap());
        assert_eq!(
            sublattice_index(&lat(&[&[1, 0], &[2, 0]])),
            Err(Error::InfiniteIndex)
        );
        assert_eq!(exponent_bound(&lat(&[&[1, 1]])), Err(Error::InfiniteIndex));
    }

    #[test]
    fn membership() {
        let b = lat(&[&[2, 0], &[0, 1]]);
        assert!(member_of_sublattice(&ivec(&[2, 0]), &b).unwrap());
        assert!(!member_of_sublattice(&ivec(&[1, 0]), &b).unwrap());
        let c = lat(&[&[1, 0], &[-1, -2]]);
        assert!(member_of_sublattice(&ivec(&[0, -2]), &c).unwrap());
        assert!(member_of_sublattice(&ivec(&[0, 1, 2]), &c).is_err());
    }

    #[test]
    fn kernel_and_saturation() {
        let a = m(&[&[1, 0], &[0, 1], &[-1, -2]]).transpose();
        let k = integer_kernel(&a);
        assert_eq!(k.len(), 1);
        let v = primitive_vector(&k[0]).unwrap();
        assert!(v == ivec(&[1, 2, 1]) || v == ivec(&[-1, -2, -1]));

        let (sat, comp) = saturation_with_complement(&m(&[&[1, 0, 0], &[1, 2, 0]]));
        assert_eq!(sat, vec![ivec(&[1, 0, 0]), ivec(&[0, 1, 0])]);
        assert_eq!(comp.len(), 1);
        let mut all = sat.clone();
        all.extend(comp);
        let full = IntegerMatrix::from_rows(&all, 3).unwrap();
        assert_eq!(full.determinant().unwrap().abs(), BigInt::one());
    }

    #[test]
    fn determinant_matches_cofactor() {
        let a = m(&[&[2, -1, 3], &[0, 4, 1], &[5, 2, -2]]);
        // 2*(4*-2 - 1*2) - (-1)*(0*-2 - 1*5) + 3*(0*2 - 4*5) = -20 - 5 - 60
        assert_eq!(a.determinant().unwrap(), BigInt::from(-85));
    }

    fn small_square(n: usize) -> impl Strategy<Value = IntegerMatrix> {
        proptest::collection::vec(-9i64..=9, n * n).prop_map(move |v| {
            IntegerMatrix::new(n, n, v.into_iter().map(BigInt::from).collect()).unwrap()
        })
    }

    proptest! {
        #[test]
        fn snf_is_a_certified_factorization(a in (1usize..=4).prop_flat_map(small_square)) {
            let snf = smith_normal_form(&a);
            let d = snf.left.mul(&a).unwrap().mul(&snf.right).unwrap();
            for i in 0..a.rows() {
                for j in 0..a.cols() {
                    let expect = if i == j { snf.diagonal[i].clone() } else { BigInt::zero() };
                    prop_assert_eq!(&d[(i, j)], &expect);
                }
            }
            prop_assert!(snf.left.determinant().unwrap().abs().is_one());
            prop_assert!(snf.right.determinant().unwrap().abs().is_one());
            for w in snf.diagonal.windows(2) {
                prop_assert!(w[1].is_zero() || (!w[0].is_zero() && w[1].is_multiple_of(&w[0])));
            }
            let det = a.determinant().unwrap().abs();
            let prod: BigInt = snf.diagonal.iter().product();
            prop_assert_eq!(prod, det.clone());
            if !det.is_zero() {
                let b = SublatticeBasis::new(a.cols(), a.clone()).unwrap();
                let r = exponent_bound(&b).unwrap();
                let idx = sublattice_index(&b).unwrap();
                prop_assert!(idx.is_multiple_of(&r));
                prop_assert!(num_traits::pow(r.clone(), a.rows()).is_multiple_of(&idx));
            }
        }

        #[test]
        fn hnf_is_reduced_echelon(a in (1usize..=4).prop_flat_map(small_square)) {
            let (h, u) = hermite_normal_form(&a);
            prop_assert_eq!(u.mul(&a).unwrap(), h.clone());
            prop_assert!(u.determinant().unwrap().abs().is_one());
            let mut last_pivot: Option<usize> = None;
            for i in 0..h.rows() {
                match h.row(i).iter().position(|x| !x.is_zero()) {
                    Some(p) => {
                        prop_assert!(last_pivot.is_none_or(|q| p > q));
                        prop_assert!(h[(i, p)].is_positive());
                        for k in 0..i {
                            prop_assert!(!h[(k, p)].is_negative() && h[(k, p)] < h[(i, p)]);
                        }
                        last_pivot = Some(p);
                    }
                    None => {
                        for k in i..h.rows() {
                            prop_assert!(h.row(k).iter().all(|x| x.is_zero()));
                        }
                        break;
                    }
                }
            }
        }

        #[test]
        fn primitive_is_scale_invariant(v in proptest::collection::vec(-20i64..=20, 1..5), k in 1i64..7) {
            let v = ivec(&v);
            prop_assume!(v.iter().any(|x| !x.is_zero()));
            let p = primitive_vector(&v).unwrap();
            prop_assert_eq!(primitive_vector(&p).unwrap(), p.clone());
            let scaled: Vec<BigInt> = v.iter().map(|x| x * k).collect();
            prop_assert_eq!(primitive_vector(&scaled).unwrap(), p.clone());
            prop_assert!(gcd_all(&p).is_one());
        }
    }
}
