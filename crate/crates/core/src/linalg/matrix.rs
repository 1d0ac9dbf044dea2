use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::ring::{FieldElement, RingElement, RingKind};

/// Minimal ring interface for dense matrices. Elements carry their own ring
/// context, so constants are produced "like" an existing element.
pub trait Scalar: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn from_i64_like(&self, n: i64) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool {
        *self == self.one_like()
    }
}

pub trait FieldScalar: Scalar {
    fn inv(&self) -> Option<Self>;
}

pub trait Conjugate {
    fn conj(&self) -> Self;
}

impl Scalar for FieldElement {
    fn zero_like(&self) -> Self {
        FieldElement::zero(self.kind())
    }
    fn one_like(&self) -> Self {
        FieldElement::one(self.kind())
    }
    fn from_i64_like(&self, n: i64) -> Self {
        FieldElement::from_int(self.kind(), n)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        FieldElement::is_zero(self)
    }
    fn is_one(&self) -> bool {
        FieldElement::is_one(self)
    }
}

impl FieldScalar for FieldElement {
    fn inv(&self) -> Option<Self> {
        FieldElement::inv(self)
    }
}

impl Conjugate for FieldElement {
    fn conj(&self) -> Self {
        FieldElement::conj(self)
    }
}

impl Scalar for RingElement {
    fn zero_like(&self) -> Self {
        RingElement::zero(self.kind)
    }
    fn one_like(&self) -> Self {
        RingElement::one(self.kind)
    }
    fn from_i64_like(&self, n: i64) -> Self {
        RingElement::from_int(self.kind, n)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        RingElement::is_zero(self)
    }
}

impl Conjugate for RingElement {
    fn conj(&self) -> Self {
        RingElement::conj(self)
    }
}

impl Scalar for BigInt {
    fn zero_like(&self) -> Self {
        BigInt::zero()
    }
    fn one_like(&self) -> Self {
        BigInt::one()
    }
    fn from_i64_like(&self, n: i64) -> Self {
        BigInt::from(n)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
}

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat<T> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<T>,
}

impl<T: fmt::Debug> fmt::Debug for Mat<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| format!("{:?}", self.data[r * self.cols + c])).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl<T: Clone> Mat<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged matrix rows");
        Mat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn filled(rows: usize, cols: usize, v: T) -> Self {
        Mat { rows, cols, data: vec![v; rows * cols] }
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: T) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<T> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.get(r, c).clone());
            }
        }
        Mat { rows: self.cols, cols: self.rows, data }
    }

    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> Mat<U> {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn from_cols(cols: Vec<Vec<T>>) -> Self {
        Mat::from_rows(cols).transpose()
    }
}

impl<T: Scalar> Mat<T> {
    pub fn identity_like(n: usize, sample: &T) -> Self {
        let mut m = Mat::filled(n, n, sample.zero_like());
        for i in 0..n {
            m.set(i, i, sample.one_like());
        }
        m
    }

    pub fn sample(&self) -> &T {
        &self.data[0]
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "dimension mismatch in product");
        let zero = self.sample().zero_like();
        let mut data = Vec::with_capacity(self.rows * o.cols);
        for r in 0..self.rows {
            for c in 0..o.cols {
                let mut acc = zero.clone();
                for k in 0..self.cols {
                    let a = self.get(r, k);
                    if a.is_zero() {
                        continue;
                    }
                    let b = o.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    acc = acc.add(&a.mul(b));
                }
                data.push(acc);
            }
        }
        Mat { rows: self.rows, cols: o.cols, data }
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a.sub(b)).collect() }
    }

    pub fn neg(&self) -> Self {
        self.map(|x| x.neg())
    }

    pub fn scale(&self, k: &T) -> Self {
        self.map(|x| x.mul(k))
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| (0..self.cols).all(|c| if r == c { self.get(r, c).is_one() } else { self.get(r, c).is_zero() }))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = Mat::identity_like(self.rows, self.sample());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Determinant by cofactor expansion along the first row with a zero skip.
    /// Intended for the small (n <= 6) matrices of this crate; works over any
    /// commutative ring.
    pub fn det(&self) -> T {
        assert!(self.is_square());
        let n = self.rows;
        let idx: Vec<usize> = (0..n).collect();
        det_rec(self, 0, &idx)
    }
}

fn det_rec<T: Scalar>(m: &Mat<T>, row: usize, cols: &[usize]) -> T {
    if cols.len() == 1 {
        return m.get(row, cols[0]).clone();
    }
    let mut acc = m.sample().zero_like();
    for (k, &c) in cols.iter().enumerate() {
        let a = m.get(row, c);
        if a.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let term = a.mul(&det_rec(m, row + 1, &rest));
        acc = if k % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    acc
}

impl<T: FieldScalar> Mat<T> {
    /// Gauss-Jordan inverse; `None` if singular.
    pub fn inverse(&self) -> Option<Self> {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Mat::identity_like(n, self.sample());
        for col in 0..n {
            let piv = (col..n).find(|&r| !a.get(r, col).is_zero())?;
            if piv != col {
                for c in 0..n {
                    a.data.swap(piv * n + c, col * n + c);
                    inv.data.swap(piv * n + c, col * n + c);
                }
            }
            let p = a.get(col, col).inv()?;
            for c in 0..n {
                let v = a.get(col, c).mul(&p);
                a.set(col, c, v);
                let v = inv.get(col, c).mul(&p);
                inv.set(col, c, v);
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a.get(r, col).clone();
                if f.is_zero() {
                    continue;
                }
                for c in 0..n {
                    let v = a.get(r, c).sub(&f.mul(a.get(col, c)));
                    a.set(r, c, v);
                    let v = inv.get(r, c).sub(&f.mul(inv.get(col, c)));
                    inv.set(r, c, v);
                }
            }
        }
        Some(inv)
    }
}

impl<T: Scalar + Conjugate> Mat<T> {
    pub fn conj(&self) -> Self {
        self.map(|x| x.conj())
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        self.conj().transpose()
    }
}

pub type FMat = Mat<FieldElement>;

impl FMat {
    pub fn identity(kind: RingKind, n: usize) -> Self {
        Mat::identity_like(n, &FieldElement::zero(kind))
    }

    pub fn kind(&self) -> RingKind {
        self.data[0].kind()
    }

    /// Integer matrix literal in the given ring.
    pub fn from_ints(kind: RingKind, rows: &[&[i64]]) -> Self {
        Mat::from_rows(rows.iter().map(|r| r.iter().map(|&x| FieldElement::from_int(kind, x)).collect()).collect())
    }

    pub fn diag(entries: Vec<FieldElement>) -> Self {
        let n = entries.len();
        let mut m = Mat::identity_like(n, &entries[0]);
        for (i, e) in entries.into_iter().enumerate() {
            m.set(i, i, e);
        }
        m
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|x| x.is_integral())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_and_det() {
        let k = RingKind::Rational;
        let m = FMat::from_ints(k, &[&[2, 1, 0], &[1, 1, 0], &[0, 0, 3]]);
        assert_eq!(m.det(), FieldElement::from_int(k, 3));
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        let s = FMat::from_ints(k, &[&[1, 2], &[2, 4]]);
        assert!(s.inverse().is_none());
    }
}
