//! The concrete forms, matrices and templates of the three worked examples:
//! the magic manifold group over Q(sqrt(-7)), O(4,1; Z) in the coordinates of
//! the form q = 2 x1 x5 + x2^2 + x3^2 + x4^2, and the unitary group of the
//! hermitian form h over Q(zeta5).

use num_bigint::BigInt;

use crate::arith::polyid::{Affine, MatExpr};
use crate::arith::ring::{cyc5, FieldElement, RingElement, RingKind};
use crate::arith::symbolic::SymElement;
use crate::linalg::matrix::{FMat, Mat, Scalar};

const Q: RingKind = RingKind::Rational;
const E: RingKind = RingKind::Cyclotomic5;

fn rat(n: i64, d: i64) -> FieldElement {
    FieldElement::from_ratio(Q, n, d)
}

/// diag(1, 1, 1, 1, -1)
pub fn q0() -> FMat {
    FMat::from_ints(Q, &[&[1, 0, 0, 0, 0], &[0, 1, 0, 0, 0], &[0, 0, 1, 0, 0], &[0, 0, 0, 1, 0], &[0, 0, 0, 0, -1]])
}

/// The change of coordinates with Q = alpha^t Q0 alpha.
pub fn alpha() -> FMat {
    FMat::from_ints(Q, &[&[1, 1, 0, 0, 0], &[0, -1, 0, 0, 1], &[0, 0, 1, 0, 0], &[0, 0, 0, 1, 0], &[1, 1, 0, 0, -1]])
}

/// Matrix of q = 2 x1 x5 + x2^2 + x3^2 + x4^2.
pub fn q_form() -> FMat {
    FMat::from_ints(Q, &[&[0, 0, 0, 0, 1], &[0, 1, 0, 0, 0], &[0, 0, 1, 0, 0], &[0, 0, 0, 1, 0], &[1, 0, 0, 0, 0]])
}

/// The element of SO(q; Q) exchanging x0 and x1 and fixing x_{1/2}.
pub fn o41_g1() -> FMat {
    let mut m = FMat::from_ints(Q, &[&[0, 0, 0, 0, 2], &[0, -1, 0, 0, 0], &[0, 0, -1, 0, 0], &[0, 0, 0, -1, 0], &[0, 0, 0, 0, 0]]);
    m.set(4, 0, rat(1, 2));
    m
}

/// The element of SO(q; Q_2) stabilizing L_{1/2} and mapping L_0 to the third
/// neighbor of x_{1/2}.
pub fn o41_m() -> FMat {
    let mut m = FMat::from_ints(Q, &[&[1, 0, 0, 0, 0], &[1, 1, 0, 0, 0], &[0, 0, 1, 0, 0], &[0, 0, 0, 1, 0], &[0, -1, 0, 0, 1]]);
    m.set(4, 0, rat(-1, 2));
    m
}

/// Variable index of a1..e5 in the level-16 display (a1 = 0, ..., e5 = 24).
pub fn var(letter: char, i: usize) -> usize {
    (letter as usize - 'a' as usize) * 5 + (i - 1)
}

fn affine_entry(c: i64, coef: i64, v: Option<usize>) -> Affine<FieldElement> {
    Affine {
        constant: FieldElement::from_int(Q, c),
        terms: v.map(|v| vec![(v, FieldElement::from_int(Q, coef))]).unwrap_or_default(),
    }
}

/// Left-hand template of the level-16 display. `as_printed` keeps the entries
/// (1,1) = 1 + 16 a5 and (5,1) = 4 a1 exactly as typeset; otherwise they are
/// 1 + 16 e5 and 4 a5, which is what conjugating the generic level-16 matrix
/// by g1^{-1} produces.
pub fn level16_left(as_printed: bool) -> MatExpr<FieldElement> {
    let (a11, a51) = if as_printed { (var('a', 5), var('a', 1)) } else { (var('e', 5), var('a', 5)) };
    let e = affine_entry;
    let mut rows: Vec<Vec<Affine<FieldElement>>> = Vec::new();
    rows.push(vec![e(1, 16, Some(a11)), e(0, -32, Some(var('e', 2))), e(0, -32, Some(var('e', 3))), e(0, -32, Some(var('e', 4))), e(0, 64, Some(var('e', 1)))]);
    for l in ['b', 'c', 'd'] {
        let r = (l as usize - 'a' as usize) + 1; // column of the diagonal entry
        let mut row = vec![e(0, -8, Some(var(l, 5)))];
        for c in 2..=4 {
            if c == r {
                row.push(e(1, 16, Some(var(l, c))));
            } else {
                row.push(e(0, 16, Some(var(l, c))));
            }
        }
        row.push(e(0, -32, Some(var(l, 1))));
        rows.push(row);
    }
    rows.push(vec![e(0, 4, Some(a51)), e(0, -8, Some(var('a', 2))), e(0, -8, Some(var('a', 3))), e(0, -8, Some(var('a', 4))), e(1, 16, Some(var('a', 1)))]);
    MatExpr::Var(Mat::from_rows(rows))
}

/// Right-hand side: the generic level-16 matrix. `as_printed` keeps the (4,1)
/// entry 16 d5 as typeset instead of 16 d1.
pub fn level16_right(as_printed: bool) -> MatExpr<FieldElement> {
    let mut rows = Vec::new();
    for (ri, l) in ['a', 'b', 'c', 'd', 'e'].into_iter().enumerate() {
        let mut row = Vec::new();
        for c in 1..=5 {
            let idx = if as_printed && l == 'd' && c == 1 { var('d', 5) } else { var(l, c) };
            row.push(affine_entry(i64::from(ri + 1 == c), 16, Some(idx)));
        }
        rows.push(row);
    }
    MatExpr::Var(Mat::from_rows(rows))
}

// ---- the unitary example over Q(zeta5) ----

fn ef(x: RingElement) -> FieldElement {
    x.to_field()
}

/// phi = (1 - alpha)/2
pub fn phi() -> FieldElement {
    let one = FieldElement::one(E);
    (&one - &ef(cyc5::alpha())).div(&FieldElement::from_int(E, 2)).unwrap()
}

pub fn hermitian_h() -> FMat {
    let (p, o, z) = (phi(), FieldElement::one(E), FieldElement::zero(E));
    Mat::from_rows(vec![vec![p.clone(), o.clone(), z.clone()], vec![o.clone(), p.clone(), o.clone()], vec![z, o, p]])
}

pub fn hermitian_h0() -> FMat {
    FMat::from_ints(E, &[&[0, 0, 1], &[0, 1, 0], &[1, 0, 0]])
}

pub fn pi() -> FieldElement {
    ef(cyc5::pi())
}

/// g0 = [[0, 0, pi], [0, z^4, 0], [conj(pi)^{-1}, 0, 0]]
pub fn g0() -> FMat {
    let z = FieldElement::zero(E);
    let pibar_inv = pi().conj().inv().unwrap();
    Mat::from_rows(vec![
        vec![z.clone(), z.clone(), pi()],
        vec![z.clone(), ef(cyc5::zeta_pow(4)), z.clone()],
        vec![pibar_inv, z.clone(), z],
    ])
}

/// The change of coordinates c in E[d, e].
pub fn change_c() -> Mat<SymElement> {
    let f = |x: FieldElement| SymElement::from_field(x);
    let one = FieldElement::one(E);
    let alpha = ef(cyc5::alpha());
    let d = SymElement::delta();
    let dinv = SymElement::delta_inv();
    let eps = SymElement::eps();
    let eighth = FieldElement::from_ratio(E, 1, 8);
    let quarter = FieldElement::from_ratio(E, 1, 4);
    let c13 = f(&(&alpha - &one) * &eighth);
    let c23 = f(&(&one - &alpha) * &eighth).mul(&f(one.clone()).add(&d));
    let c31 = f(&(-&one) - &alpha).add(&eps);
    let c33 = f(FieldElement::from_int(E, 2)).add(&d).scale(&quarter).neg();
    Mat::from_rows(vec![
        vec![f(one.clone()), dinv.neg(), c13],
        vec![d.sub(&f(one.clone())), dinv, c23],
        vec![c31, f(FieldElement::zero(E)), c33],
    ])
}

/// The displayed level-𝔭5^2 template gamma in variables a1..c3
/// (a_i = i-1, b_i = 2+i, c_i = 5+i).
pub fn gamma_template() -> MatExpr<FieldElement> {
    let v = |l: char, i: usize| (l as usize - 'a' as usize) * 3 + (i - 1);
    let pi_ = cyc5::pi();
    let p = |c: &[i64], k: u32| ef(&cyc5::poly(c) * &pi_.pow(k));
    let ent = |c: i64, coef: FieldElement, var: usize| Affine { constant: FieldElement::from_int(E, c), terms: vec![(var, coef)] };
    let five = FieldElement::from_int(E, 5);
    let rows = vec![
        vec![ent(1, five.clone(), v('c', 3)), ent(0, p(&[-1, -2, -1], 5), v('c', 2)), ent(0, p(&[0, -1, -2, -1], 6), v('c', 1))],
        vec![ent(0, p(&[-1, 0, 1, 1], 3), v('b', 3)), ent(1, five.clone(), v('b', 2)), ent(0, p(&[-1, -2, -2, -1], 5), v('b', 1))],
        vec![ent(0, p(&[1, 2, 2, 1], 2), v('a', 3)), ent(0, p(&[0, 1, 2, 1], 3), v('a', 2)), ent(1, five, v('a', 1))],
    ];
    MatExpr::Var(Mat::from_rows(rows))
}

/// The displayed conjugate: I + 5 [[a1..a3],[b1..b3],[c1..c3]].
pub fn gamma_conjugate() -> MatExpr<FieldElement> {
    let five = FieldElement::from_int(E, 5);
    let rows = (0..3)
        .map(|r| {
            (0..3)
                .map(|c| Affine { constant: FieldElement::from_int(E, i64::from(r == c)), terms: vec![(r * 3 + c, five.clone())] })
                .collect()
        })
        .collect();
    MatExpr::Var(Mat::from_rows(rows))
}

/// Reduced hermitian form modulo 𝔭5^2 as integers: [[3,1,0],[1,3,1],[0,1,3]].
pub fn reduced_h_mod_p5sq() -> [[i64; 3]; 3] {
    [[3, 1, 0], [1, 3, 1], [0, 1, 3]]
}

/// Generators of SU(h0)(O_E) used as stabilizer seeds at v0: a Weyl element,
/// upper unipotents n(a, b) = [[1, a, b], [0, 1, -conj(a)], [0, 0, 1]] with
/// b + conj(b) = -a conj(a), and torus elements diag(t, conj(t)/t, conj(t)^{-1}).
pub fn su_h0_generators() -> Vec<FMat> {
    let zero = FieldElement::zero(E);
    let one = FieldElement::one(E);
    let weyl = FMat::from_ints(E, &[&[0, 0, 1], &[0, -1, 0], &[1, 0, 0]]);
    let unip = |a: FieldElement, b: FieldElement| {
        Mat::from_rows(vec![
            vec![one.clone(), a.clone(), b],
            vec![zero.clone(), one.clone(), -&a.conj()],
            vec![zero.clone(), zero.clone(), one.clone()],
        ])
    };
    let torus = |t: FieldElement| {
        let tb = t.conj();
        FMat::diag(vec![t.clone(), tb.div(&t).unwrap(), tb.inv().unwrap()])
    };
    let z = ef(cyc5::zeta());
    let z_plus_z2 = ef(cyc5::poly(&[0, 1, 1]));
    let n1 = unip(one.clone(), z_plus_z2.clone());
    let n2 = unip(FieldElement::from_int(E, 2), z_plus_z2.scale_int(&BigInt::from(4)));
    let n0 = unip(zero.clone(), ef(cyc5::poly(&[0, 1, 0, 0, -1])));
    let nz = unip(z.clone(), z_plus_z2.clone());
    vec![weyl, n1, n2, n0, nz, torus(z.clone()), torus(&one + &z)]
}

/// Magic manifold example: g1 = [[0, 2], [1, 0]] over Q.
pub fn magic_g1() -> FMat {
    FMat::from_ints(Q, &[&[0, 2], &[1, 0]])
}

/// GL2(Z) generators fixing the standard lattice.
pub fn gl2z_generators() -> Vec<FMat> {
    vec![FMat::from_ints(Q, &[&[1, 1], &[0, 1]]), FMat::from_ints(Q, &[&[0, 1], &[1, 0]]), FMat::from_ints(Q, &[&[-1, 0], &[0, 1]])]
}

pub fn embed(m: &FMat, kind: RingKind) -> FMat {
    m.map(|x| {
        let (n, d) = x.as_rational().expect("rational matrix");
        FieldElement::new(RingElement::from_int(kind, n), d)
    })
}

pub fn sample_zero_e() -> FieldElement {
    FieldElement::zero(E)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alpha_conjugates_forms() {
        assert_eq!(alpha().transpose().mul(&q0()).mul(&alpha()), q_form());
        assert_eq!(alpha().det(), FieldElement::one(Q));
    }

    #[test]
    fn g1_in_so_q() {
        let g = o41_g1();
        assert_eq!(g.transpose().mul(&q_form()).mul(&g), q_form());
        assert_eq!(g.det(), FieldElement::one(Q));
        let m = o41_m();
        assert_eq!(m.transpose().mul(&q_form()).mul(&m), q_form());
    }

    #[test]
    fn su_generators_preserve_h0() {
        let h0 = hermitian_h0();
        for g in su_h0_generators() {
            assert_eq!(g.adjoint().mul(&h0).mul(&g), h0, "{g:?}");
            assert!(g.det().is_one());
            assert!(g.is_integral() && g.inverse().unwrap().is_integral());
        }
    }
}
