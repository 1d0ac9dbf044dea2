//! Hermite and Smith normal forms over Z.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::Mat;

pub type IntMatrix = Mat<BigInt>;

pub fn int_matrix(rows: &[&[i64]]) -> IntMatrix {
    Mat::from_rows(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
}

pub fn zero_matrix(rows: usize, cols: usize) -> IntMatrix {
    Mat::filled(rows, cols, BigInt::zero())
}

pub fn identity(n: usize) -> IntMatrix {
    let mut m = zero_matrix(n, n);
    for i in 0..n {
        m.set(i, i, BigInt::one());
    }
    m
}

fn swap_rows(m: &mut IntMatrix, a: usize, b: usize) {
    if a == b {
        return;
    }
    for c in 0..m.cols {
        m.data.swap(a * m.cols + c, b * m.cols + c);
    }
}

fn swap_cols(m: &mut IntMatrix, a: usize, b: usize) {
    if a == b {
        return;
    }
    for r in 0..m.rows {
        m.data.swap(r * m.cols + a, r * m.cols + b);
    }
}

/// row[dst] -= q * row[src]
fn row_axpy(m: &mut IntMatrix, dst: usize, src: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for c in 0..m.cols {
        let v = &m.data[src * m.cols + c] * q;
        if !v.is_zero() {
            m.data[dst * m.cols + c] -= v;
        }
    }
}

fn col_axpy(m: &mut IntMatrix, dst: usize, src: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for r in 0..m.rows {
        let v = &m.data[r * m.cols + src] * q;
        if !v.is_zero() {
            m.data[r * m.cols + dst] -= v;
        }
    }
}

fn negate_row(m: &mut IntMatrix, r: usize) {
    for c in 0..m.cols {
        let v = -&m.data[r * m.cols + c];
        m.data[r * m.cols + c] = v;
    }
}

/// Row Hermite normal form: returns `(H, U)` with `U` unimodular and `U * M = H`.
/// `H` is in row echelon form with positive pivots and entries above each pivot
/// reduced into `[0, pivot)`; zero rows come last.
pub fn hnf(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = m.clone();
    let mut u = identity(m.rows);
    let mut r = 0;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        loop {
            // smallest nonzero |entry| in column c among rows >= r
            let mut best: Option<usize> = None;
            for i in r..h.rows {
                let v = h.get(i, c);
                if !v.is_zero() && best.is_none_or(|b| v.abs() < h.get(b, c).abs()) {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            swap_rows(&mut h, r, b);
            swap_rows(&mut u, r, b);
            let mut done = true;
            for i in r + 1..h.rows {
                if h.get(i, c).is_zero() {
                    continue;
                }
                let q = h.get(i, c).div_floor(h.get(r, c));
                row_axpy(&mut h, i, r, &q);
                row_axpy(&mut u, i, r, &q);
                if !h.get(i, c).is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h.get(r, c).is_zero() {
            continue;
        }
        if h.get(r, c).is_negative() {
            negate_row(&mut h, r);
            negate_row(&mut u, r);
        }
        let p = h.get(r, c).clone();
        for i in 0..r {
            let q = h.get(i, c).div_floor(&p);
            row_axpy(&mut h, i, r, &q);
            row_axpy(&mut u, i, r, &q);
        }
        r += 1;
    }
    (h, u)
}

/// Nonzero rows of the HNF: a canonical basis of the row lattice.
pub fn hnf_basis(m: &IntMatrix) -> IntMatrix {
    let (h, _) = hnf(m);
    let rows: Vec<Vec<BigInt>> = h.to_rows().into_iter().filter(|r| r.iter().any(|x| !x.is_zero())).collect();
    if rows.is_empty() {
        return zero_matrix(0, m.cols);
    }
    Mat::from_rows(rows)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    /// Nonzero invariant factors d_1 | d_2 | ... | d_r, all positive.
    pub divisors: Vec<BigInt>,
    pub rows: usize,
    pub cols: usize,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.divisors.len()
    }
}

/// Smith normal form with minimal-absolute-value pivoting.
pub fn snf(m: &IntMatrix) -> SmithForm {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut divisors = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // pivot = smallest nonzero |entry| in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                let v = a.get(i, j);
                if !v.is_zero() && best.is_none_or(|(bi, bj)| v.abs() < a.get(bi, bj).abs()) {
                    best = Some((i, j));
                    if v.abs().is_one() {
                        break;
                    }
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        swap_rows(&mut a, t, bi);
        swap_cols(&mut a, t, bj);
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if a.get(i, t).is_zero() {
                    continue;
                }
                let q = a.get(i, t).div_floor(a.get(t, t));
                row_axpy(&mut a, i, t, &q);
                if !a.get(i, t).is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                if a.get(t, j).is_zero() {
                    continue;
                }
                let q = a.get(t, j).div_floor(a.get(t, t));
                col_axpy(&mut a, j, t, &q);
                if !a.get(t, j).is_zero() {
                    clean = false;
                }
            }
            if clean {
                // divisibility of the remaining block
                let p = a.get(t, t).clone();
                let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a.get(i, j).is_multiple_of(&p)));
                match bad {
                    None => break,
                    Some(i) => {
                        row_axpy(&mut a, t, i, &BigInt::from(-1));
                    }
                }
            }
            // move the new smallest entry of row/column t into the pivot
            let mut best = (t, t);
            for i in t..rows {
                let v = a.get(i, t);
                if !v.is_zero() && v.abs() < a.get(best.0, best.1).abs() {
                    best = (i, t);
                }
            }
            for j in t..cols {
                let v = a.get(t, j);
                if !v.is_zero() && v.abs() < a.get(best.0, best.1).abs() {
                    best = (t, j);
                }
            }
            swap_rows(&mut a, t, best.0);
            swap_cols(&mut a, t, best.1);
        }
        divisors.push(a.get(t, t).abs());
        t += 1;
    }
    SmithForm { divisors, rows, cols }
}

/// Integer determinant by Bareiss elimination.
pub fn det(m: &IntMatrix) -> BigInt {
    assert!(m.is_square());
    let n = m.rows;
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a.get(k, k).is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a.get(i, k).is_zero()) else { return BigInt::zero() };
            swap_rows(&mut a, k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                a.set(i, j, v);
            }
        }
        prev = a.get(k, k).clone();
    }
    sign * a.get(n - 1, n - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hnf_examples() {
        let m = int_matrix(&[&[2, 4], &[0, 3]]);
        let (h, u) = hnf(&m);
        assert_eq!(u.mul(&m), h);
        assert_eq!(h, int_matrix(&[&[2, 1], &[0, 3]]));
        assert_eq!(hnf(&identity(3)).0, identity(3));
        assert_eq!(hnf(&zero_matrix(2, 3)).0, zero_matrix(2, 3));
    }

    #[test]
    fn snf_examples() {
        let d = snf(&int_matrix(&[&[2, 0], &[0, 3]])).divisors;
        assert_eq!(d, vec![BigInt::from(1), BigInt::from(6)]);
        let s = snf(&int_matrix(&[&[2, 0], &[0, 0]]));
        assert_eq!(s.divisors, vec![BigInt::from(2)]);
        assert_eq!(s.cols - s.rank(), 1);
        assert!(snf(&identity(4)).divisors.iter().all(|x| x.is_one()));
    }

    #[test]
    fn bareiss() {
        assert_eq!(det(&int_matrix(&[&[2, 1, 0], &[1, 1, 0], &[0, 0, 3]])), BigInt::from(3));
        assert_eq!(det(&int_matrix(&[&[0, 1], &[1, 0]])), BigInt::from(-1));
    }
}
