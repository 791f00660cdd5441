//! Exact linear algebra over the rationals.
//!
//! Every subspace is stored in canonical form: the nonzero rows of its
//! reduced row echelon form, so two spans are equal iff their bases are.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Dense coordinate vector inside one degree.
pub type QVector = Vec<Rational>;

/// Sparse vector: sorted `(index, coefficient)` pairs with no zero entries.
pub type Terms = Vec<(usize, Rational)>;

pub fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn qf(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn zero_vec(len: usize) -> QVector {
    vec![Rational::zero(); len]
}

pub fn unit_vec(len: usize, i: usize) -> QVector {
    let mut v = zero_vec(len);
    v[i] = Rational::one();
    v
}

pub fn vec_from_i64(xs: &[i64]) -> QVector {
    xs.iter().map(|&x| q(x)).collect()
}

pub fn is_zero(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// `y += a * x`.
pub fn axpy(y: &mut [Rational], a: &Rational, x: &[Rational]) {
    debug_assert_eq!(y.len(), x.len());
    if a.is_zero() {
        return;
    }
    for (yi, xi) in y.iter_mut().zip(x) {
        if !xi.is_zero() {
            *yi += a * xi;
        }
    }
}

pub fn sub(x: &[Rational], y: &[Rational]) -> QVector {
    x.iter().zip(y).map(|(a, b)| a - b).collect()
}

pub fn scale(a: &Rational, x: &[Rational]) -> QVector {
    x.iter().map(|xi| a * xi).collect()
}

pub fn to_dense(terms: &Terms, len: usize) -> QVector {
    let mut v = zero_vec(len);
    for (i, c) in terms {
        v[*i] += c;
    }
    v
}

pub fn to_terms(v: &[Rational]) -> Terms {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, c.clone()))
        .collect()
}

/// Kronecker product of two coordinate vectors.
pub fn kron(u: &[Rational], v: &[Rational]) -> QVector {
    let mut out = Vec::with_capacity(u.len() * v.len());
    for a in u {
        for b in v {
            out.push(a * b);
        }
    }
    out
}

/// Render `v` as a linear combination of `labels`, e.g. `S2 - 1/2*S1,1`.
pub fn format_combination(labels: &[String], v: &[Rational]) -> String {
    let mut out = String::new();
    for (i, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else if c.is_negative() {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        if !mag.is_one() {
            out.push_str(&format!("{mag}*"));
        }
        out.push_str(&labels[i]);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Dense rational matrix, stored by rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<QVector>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![zero_vec(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        QMatrix {
            rows: n,
            cols: n,
            data: (0..n).map(|i| unit_vec(n, i)).collect(),
        }
    }

    /// Build from rows; `cols` is needed for the zero-row case.
    pub fn from_rows(cols: usize, data: Vec<QVector>) -> Result<Self> {
        if let Some(bad) = data.iter().find(|r| r.len() != cols) {
            return Err(Error::LengthMismatch {
                expected: cols,
                found: bad.len(),
            });
        }
        Ok(QMatrix {
            rows: data.len(),
            cols,
            data,
        })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows.iter().map(|r| vec_from_i64(r)).collect();
        QMatrix::from_rows(cols, data).expect("ragged i64 matrix")
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[QVector]) -> Result<Self> {
        let mut m = QMatrix::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != rows {
                return Err(Error::LengthMismatch {
                    expected: rows,
                    found: c.len(),
                });
            }
            for (i, x) in c.iter().enumerate() {
                m.data[i][j] = x.clone();
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i]
    }

    pub fn row_vectors(&self) -> &[QVector] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        self.data[i][j] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| is_zero(r))
    }

    /// Number of nonzero entries.
    pub fn nnz(&self) -> usize {
        self.data
            .iter()
            .map(|r| r.iter().filter(|x| !x.is_zero()).count())
            .sum()
    }

    pub fn transpose(&self) -> QMatrix {
        let mut t = QMatrix::zeros(self.cols, self.rows);
        for (i, r) in self.data.iter().enumerate() {
            for (j, x) in r.iter().enumerate() {
                if !x.is_zero() {
                    t.data[j][i] = x.clone();
                }
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<QVector> {
        if v.len() != self.cols {
            return Err(Error::LengthMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        let support: Vec<usize> = (0..v.len()).filter(|&j| !v[j].is_zero()).collect();
        Ok(self
            .data
            .iter()
            .map(|r| {
                let mut acc = Rational::zero();
                for &j in &support {
                    if !r[j].is_zero() {
                        acc += &r[j] * &v[j];
                    }
                }
                acc
            })
            .collect())
    }

    pub fn rank(&self) -> usize {
        rref(self).1.len()
    }

    /// Inverse of a square matrix, or `None` when singular.
    pub fn inverse(&self) -> Option<QMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(QMatrix::identity(0));
        }
        let aug: Vec<QVector> = self
            .data
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut row = r.clone();
                row.extend(unit_vec(n, i));
                row
            })
            .collect();
        let (red, pivots) = rref_rows(aug, 2 * n);
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        let data = red.into_iter().map(|r| r[n..].to_vec()).collect();
        Some(QMatrix {
            rows: n,
            cols: n,
            data,
        })
    }
}

fn rref_rows(mut rows: Vec<QVector>, cols: usize) -> (Vec<QVector>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        if !inv.is_one() {
            for x in rows[r].iter_mut().skip(c) {
                if !x.is_zero() {
                    *x *= &inv;
                }
            }
        }
        let (head, tail) = rows.split_at_mut(r);
        let (pivot_row, rest) = tail.split_first_mut().expect("pivot row");
        for row in head.iter_mut().chain(rest.iter_mut()) {
            if row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for j in c..cols {
                if !pivot_row[j].is_zero() {
                    row[j] -= &factor * &pivot_row[j];
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

/// Reduced row echelon form. Zero rows are dropped, so the result has
/// exactly `rank` rows.
pub fn rref(m: &QMatrix) -> (QMatrix, Vec<usize>) {
    let (rows, pivots) = rref_rows(m.data.clone(), m.cols);
    let out = QMatrix {
        rows: rows.len(),
        cols: m.cols,
        data: rows,
    };
    (out, pivots)
}

pub fn nullspace(m: &QMatrix) -> Subspace {
    let (red, pivots) = rref(m);
    let n = m.cols;
    let mut is_pivot = vec![false; n];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let basis: Vec<QVector> = (0..n)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = unit_vec(n, f);
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -red.get(r, f).clone();
            }
            v
        })
        .collect();
    Subspace::span(n, basis).expect("nullspace vectors have matching length")
}

/// Coefficients `c` with `Σ c_i basis[i] = target`, if `target` lies in the span.
/// `basis` must be linearly independent for the answer to be unique.
pub fn express(ambient: usize, basis: &[QVector], target: &[Rational]) -> Result<Option<QVector>> {
    if target.len() != ambient {
        return Err(Error::LengthMismatch {
            expected: ambient,
            found: target.len(),
        });
    }
    let k = basis.len();
    let mut rows: Vec<QVector> = (0..ambient).map(|_| zero_vec(k + 1)).collect();
    for (j, b) in basis.iter().enumerate() {
        if b.len() != ambient {
            return Err(Error::LengthMismatch {
                expected: ambient,
                found: b.len(),
            });
        }
        for i in 0..ambient {
            rows[i][j] = b[i].clone();
        }
    }
    for i in 0..ambient {
        rows[i][k] = target[i].clone();
    }
    let (red, pivots) = rref_rows(rows, k + 1);
    if pivots.last() == Some(&k) {
        return Ok(None);
    }
    let mut coeffs = zero_vec(k);
    for (r, &p) in pivots.iter().enumerate() {
        coeffs[p] = red[r][k].clone();
    }
    Ok(Some(coeffs))
}

/// A linear subspace of `Q^ambient_dim` in canonical (RREF) form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<QVector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: (0..ambient_dim).map(|i| unit_vec(ambient_dim, i)).collect(),
            pivots: (0..ambient_dim).collect(),
        }
    }

    /// Canonical basis of the span of `vectors`.
    pub fn span(ambient_dim: usize, vectors: Vec<QVector>) -> Result<Self> {
        let m = QMatrix::from_rows(ambient_dim, vectors)?;
        let (rows, pivots) = rref_rows(m.data, ambient_dim);
        Ok(Subspace {
            ambient_dim,
            basis: rows,
            pivots,
        })
    }

    /// Span of coordinate vectors `e_i`.
    pub fn coordinate(ambient_dim: usize, indices: &[usize]) -> Self {
        let mut idx = indices.to_vec();
        idx.sort_unstable();
        idx.dedup();
        Subspace {
            ambient_dim,
            basis: idx.iter().map(|&i| unit_vec(ambient_dim, i)).collect(),
            pivots: idx,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[QVector] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check_len(&self, v: &[Rational]) -> Result<()> {
        if v.len() != self.ambient_dim {
            return Err(Error::LengthMismatch {
                expected: self.ambient_dim,
                found: v.len(),
            });
        }
        Ok(())
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::AmbientMismatch {
                left: self.ambient_dim,
                right: other.ambient_dim,
            });
        }
        Ok(())
    }

    /// `v` minus its projection along the canonical basis.
    pub fn reduce(&self, v: &[Rational]) -> Result<QVector> {
        self.check_len(v)?;
        let mut out = v.to_vec();
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            let c = v[p].clone();
            if !c.is_zero() {
                axpy(&mut out, &(-c), b);
            }
        }
        Ok(out)
    }

    pub fn contains(&self, v: &[Rational]) -> Result<bool> {
        Ok(is_zero(&self.reduce(v)?))
    }

    /// Coordinates of `v` in the canonical basis, or `None` if `v` is outside.
    pub fn coordinates(&self, v: &[Rational]) -> Result<Option<QVector>> {
        if !self.contains(v)? {
            return Ok(None);
        }
        Ok(Some(self.pivots.iter().map(|&p| v[p].clone()).collect()))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool> {
        self.check_ambient(other)?;
        for b in &self.basis {
            if !other.contains(b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let mut vs = self.basis.clone();
        vs.extend(other.basis.iter().cloned());
        Subspace::span(self.ambient_dim, vs)
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(self.ambient_dim));
        }
        let da = self.dim();
        let mut cols = self.basis.clone();
        cols.extend(other.basis.iter().cloned());
        let m = QMatrix::from_columns(self.ambient_dim, &cols)?;
        let null = nullspace(&m);
        let vs = null
            .basis
            .iter()
            .map(|coeffs| {
                let mut v = zero_vec(self.ambient_dim);
                for (c, b) in coeffs[..da].iter().zip(&self.basis) {
                    axpy(&mut v, c, b);
                }
                v
            })
            .collect();
        Subspace::span(self.ambient_dim, vs)
    }

    /// Coordinate subspace on the non-pivot positions.
    pub fn complement(&self) -> Subspace {
        let mut is_pivot = vec![false; self.ambient_dim];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..self.ambient_dim).filter(|&i| !is_pivot[i]).collect();
        Subspace::coordinate(self.ambient_dim, &free)
    }

    /// Complement of `self` inside `sup`: the canonical rows of `sup` whose
    /// pivots are not pivots of `self`. Agrees with [`Subspace::complement`]
    /// when `sup` is the whole space. A subset of RREF rows is again in RREF,
    /// so the chosen rows are returned verbatim.
    pub fn complement_in(&self, sup: &Subspace) -> Result<Subspace> {
        if !self.is_subspace_of(sup)? {
            return Err(Error::NotSubspace);
        }
        let mut basis = Vec::new();
        let mut pivots = Vec::new();
        for (b, &p) in sup.basis.iter().zip(&sup.pivots) {
            if self.pivots.binary_search(&p).is_err() {
                basis.push(b.clone());
                pivots.push(p);
            }
        }
        Ok(Subspace {
            ambient_dim: sup.ambient_dim,
            basis,
            pivots,
        })
    }

    /// `self ⊗ other` inside `Q^(a*b)` with index `i*b + j`.
    pub fn kron(&self, other: &Subspace) -> Subspace {
        let nb = other.ambient_dim;
        let mut basis = Vec::with_capacity(self.dim() * other.dim());
        let mut pivots = Vec::with_capacity(self.dim() * other.dim());
        for (u, &pu) in self.basis.iter().zip(&self.pivots) {
            for (v, &pv) in other.basis.iter().zip(&other.pivots) {
                basis.push(kron(u, v));
                pivots.push(pu * nb + pv);
            }
        }
        Subspace {
            ambient_dim: self.ambient_dim * nb,
            basis,
            pivots,
        }
    }

    /// Direct sum of subspaces living on consecutive coordinate blocks.
    /// `blocks` must be ordered by offset and non-overlapping.
    pub fn block_sum(ambient_dim: usize, blocks: &[(usize, &Subspace)]) -> Result<Subspace> {
        let mut basis = Vec::new();
        let mut pivots = Vec::new();
        let mut end = 0;
        for &(offset, s) in blocks {
            if offset < end || offset + s.ambient_dim > ambient_dim {
                return Err(Error::Shape(format!(
                    "block at offset {offset} of size {} overlaps or overflows {ambient_dim}",
                    s.ambient_dim
                )));
            }
            end = offset + s.ambient_dim;
            for (b, &p) in s.basis.iter().zip(&s.pivots) {
                let mut v = zero_vec(ambient_dim);
                v[offset..offset + s.ambient_dim].clone_from_slice(b);
                basis.push(v);
                pivots.push(offset + p);
            }
        }
        Ok(Subspace {
            ambient_dim,
            basis,
            pivots,
        })
    }

    /// Basis as rows of a matrix.
    pub fn to_matrix(&self) -> QMatrix {
        QMatrix {
            rows: self.basis.len(),
            cols: self.ambient_dim,
            data: self.basis.clone(),
        }
    }
}

pub fn member(s: &Subspace, v: &[Rational]) -> Result<bool> {
    s.contains(v)
}

pub fn intersect(a: &Subspace, b: &Subspace) -> Result<Subspace> {
    a.intersect(b)
}

pub fn complement(s: &Subspace) -> Subspace {
    s.complement()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sp(ambient: usize, rows: &[&[i64]]) -> Subspace {
        Subspace::span(ambient, rows.iter().map(|r| vec_from_i64(r)).collect()).unwrap()
    }

    #[test]
    fn rref_examples() {
        let (r, p) = rref(&QMatrix::from_i64(&[&[2, 4], &[1, 2]]));
        assert_eq!(r, QMatrix::from_i64(&[&[1, 2]]));
        assert_eq!(p, vec![0]);

        let id = QMatrix::identity(3);
        let (r, p) = rref(&id);
        assert_eq!(r, id);
        assert_eq!(p, vec![0, 1, 2]);

        let (r, p) = rref(&QMatrix::zeros(2, 2));
        assert_eq!(r.rows(), 0);
        assert!(p.is_empty());
    }

    #[test]
    fn nullspace_examples() {
        let n = nullspace(&QMatrix::from_i64(&[&[1, 1]]));
        assert_eq!(n, sp(2, &[&[1, -1]]));
        assert!(nullspace(&QMatrix::identity(3)).is_zero());
        assert_eq!(nullspace(&QMatrix::zeros(2, 4)), Subspace::full(4));
    }

    #[test]
    fn complement_examples() {
        assert_eq!(sp(2, &[&[1, 0]]).complement(), sp(2, &[&[0, 1]]));
        assert!(Subspace::full(3).complement().is_zero());
        assert_eq!(sp(2, &[&[1, 1]]).complement(), sp(2, &[&[0, 1]]));
    }

    #[test]
    fn intersect_examples() {
        let a = sp(3, &[&[1, 2, 0], &[0, 1, 1]]);
        assert_eq!(a.intersect(&a).unwrap(), a);
        assert!(sp(2, &[&[1, 0]])
            .intersect(&sp(2, &[&[0, 1]]))
            .unwrap()
            .is_zero());
        assert_eq!(
            Subspace::full(2).intersect(&sp(2, &[&[1, 1]])).unwrap(),
            sp(2, &[&[1, 1]])
        );
        assert_eq!(
            Subspace::full(2).intersect(&Subspace::full(3)),
            Err(Error::AmbientMismatch { left: 2, right: 3 })
        );
    }

    #[test]
    fn member_examples() {
        assert!(member(&Subspace::full(2), &vec_from_i64(&[1, 1])).unwrap());
        assert!(!member(&sp(2, &[&[0, 1]]), &vec_from_i64(&[1, 0])).unwrap());
        assert!(member(&sp(2, &[&[1, -1]]), &vec_from_i64(&[2, -2])).unwrap());
        assert!(member(&sp(2, &[&[1, -1]]), &vec_from_i64(&[1])).is_err());
    }

    #[test]
    fn complement_in_superspace() {
        let sup = sp(3, &[&[1, 0, 1], &[0, 1, 1]]);
        let sub = sp(3, &[&[1, 1, 2]]);
        let c = sub.complement_in(&sup).unwrap();
        assert_eq!(c.dim(), 1);
        assert_eq!(c.sum(&sub).unwrap(), sup);
        assert!(c.intersect(&sub).unwrap().is_zero());
        assert_eq!(
            Subspace::full(2).complement_in(&sp(2, &[&[1, 0]])),
            Err(Error::NotSubspace)
        );
    }

    #[test]
    fn kron_is_canonical() {
        let a = sp(2, &[&[1, 3]]);
        let b = sp(3, &[&[1, 0, 2], &[0, 1, -1]]);
        let k = a.kron(&b);
        let again = Subspace::span(6, k.basis().to_vec()).unwrap();
        assert_eq!(k, again);
    }

    #[test]
    fn inverse_and_express() {
        let m = QMatrix::from_i64(&[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(inv, QMatrix::from_i64(&[&[1, -1], &[-1, 2]]));
        assert!(QMatrix::from_i64(&[&[1, 2], &[2, 4]]).inverse().is_none());
        let basis = vec![vec_from_i64(&[1, 1, 0]), vec_from_i64(&[0, 1, 1])];
        let c = express(3, &basis, &vec_from_i64(&[2, 5, 3])).unwrap().unwrap();
        assert_eq!(c, vec_from_i64(&[2, 3]));
        assert!(express(3, &basis, &vec_from_i64(&[1, 0, 0])).unwrap().is_none());
    }

    #[test]
    fn exact_round_trip() {
        // (1/3, 2/7) scaled by 21 and back reproduces the original exactly.
        let v = vec![qf(1, 3), qf(2, 7)];
        let w = scale(&q(21), &v);
        assert_eq!(w, vec_from_i64(&[7, 6]));
        assert_eq!(scale(&qf(1, 21), &w), v);
        assert_eq!(qf(2, 4), qf(1, 2));
        assert_eq!(*qf(-3, 6).denom(), BigInt::from(2));
    }

    fn small_matrix() -> impl Strategy<Value = QMatrix> {
        (1usize..=8, 1usize..=8).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::collection::vec(-5i64..=5, c), r).prop_map(
                move |rows| {
                    QMatrix::from_rows(c, rows.iter().map(|r| vec_from_i64(r)).collect()).unwrap()
                },
            )
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(m in small_matrix()) {
            let null = nullspace(&m);
            prop_assert_eq!(m.rank() + null.dim(), m.cols());
            for v in null.basis() {
                prop_assert!(is_zero(&m.mul_vec(v).unwrap()));
            }
        }

        #[test]
        fn rref_idempotent(m in small_matrix()) {
            let (r1, p1) = rref(&m);
            let (r2, p2) = rref(&r1);
            prop_assert_eq!(&r1, &r2);
            prop_assert_eq!(&p1, &p2);
            prop_assert!(p1.windows(2).all(|w| w[0] < w[1]));
        }

        #[test]
        fn complement_is_direct(m in small_matrix()) {
            let s = Subspace::span(m.cols(), m.row_vectors().to_vec()).unwrap();
            let c = s.complement();
            prop_assert_eq!(s.dim() + c.dim(), m.cols());
            prop_assert_eq!(s.sum(&c).unwrap().dim(), m.cols());
            prop_assert!(s.intersect(&c).unwrap().is_zero());
        }

        #[test]
        fn intersection_dimension_formula(a in small_matrix(), b in small_matrix()) {
            let n = a.cols().min(b.cols());
            let sa = Subspace::span(n, a.row_vectors().iter().map(|r| r[..n].to_vec()).collect()).unwrap();
            let sb = Subspace::span(n, b.row_vectors().iter().map(|r| r[..n].to_vec()).collect()).unwrap();
            let i = sa.intersect(&sb).unwrap();
            let s = sa.sum(&sb).unwrap();
            prop_assert_eq!(i.dim() + s.dim(), sa.dim() + sb.dim());
            prop_assert!(i.is_subspace_of(&sa).unwrap() && i.is_subspace_of(&sb).unwrap());
        }
    }
}
