//! Irreducible corepresentation matrices `w(pi_nu)`, their F-matrices,
//! Haar orthogonality, and the `U_q(su2)` differential actions.

use crate::ncalg::{Monomial, NCPoly, TensorPoly};
use crate::qscalar::qfuncs::{self, little_q_jacobi, sqrt_gauss_binomial_q2};
use crate::qscalar::ratfunc::GaussRat;
use crate::qscalar::{Ctx, HalfInt, Scalar, Sign};
use crate::report::Report;

/// The spin-`nu` corepresentation matrix, entries indexed by
/// `I_nu = {-nu, ..., nu}`.
#[derive(Clone, Debug)]
pub struct Corep {
    pub nu: HalfInt,
    entries: Vec<Vec<NCPoly>>,
}

/// The diagonal F-matrix of spin `nu`: entry `q_0^(-2r)` at index `r`
/// (the Woronowicz character values `f_1` on the diagonal).
#[derive(Clone, Debug)]
pub struct FMatrix {
    pub nu: HalfInt,
}

impl FMatrix {
    /// `q_0^(-2r)`.
    pub fn entry(&self, r: HalfInt, ctx: &Ctx) -> Scalar {
        Scalar::q0_pow(HalfInt::from_int(-r.twice()), ctx)
    }

    /// `q_0^(2r)`.
    pub fn entry_inv(&self, r: HalfInt, ctx: &Ctx) -> Scalar {
        Scalar::q0_pow(HalfInt::from_int(r.twice()), ctx)
    }

    pub fn trace(&self, ctx: &Ctx) -> Scalar {
        let mut out = Scalar::zero();
        for r in self.nu.index_set() {
            out = out.add(&self.entry(r, ctx), ctx);
        }
        out
    }

    pub fn trace_inv(&self, ctx: &Ctx) -> Scalar {
        let mut out = Scalar::zero();
        for r in self.nu.index_set() {
            out = out.add(&self.entry_inv(r, ctx), ctx);
        }
        out
    }

    /// `F^(-1/2)` diagonal entry `q_0^r`.
    pub fn entry_inv_sqrt(&self, r: HalfInt, ctx: &Ctx) -> Scalar {
        Scalar::q0_pow(r, ctx)
    }
}

impl Corep {
    fn pos(&self, i: HalfInt) -> usize {
        ((i.twice() + self.nu.twice()) / 2) as usize
    }

    pub fn entry(&self, i: HalfInt, j: HalfInt) -> &NCPoly {
        &self.entries[self.pos(i)][self.pos(j)]
    }

    pub fn dim(&self) -> usize {
        (self.nu.twice() + 1) as usize
    }

    /// Row `r` as a tuple of algebra elements `(w(pi_nu)_{r,t})_t`.
    pub fn row(&self, r: HalfInt) -> Vec<NCPoly> {
        self.nu.index_set().iter().map(|&t| self.entry(r, t).clone()).collect()
    }

    pub fn f_matrix(&self) -> FMatrix {
        FMatrix { nu: self.nu }
    }
}

/// Quantum dimension data: ordinary dimension, quantum dimension
/// `(2 nu + 1)_q`, and the F-matrix.
pub fn dimension_data(nu: HalfInt, ctx: &Ctx) -> (i64, Scalar, FMatrix) {
    let d = nu.twice() + 1;
    let dq = qfuncs::q_int(d, ctx);
    let f = FMatrix { nu };
    debug_assert_eq!(f.trace(ctx), dq);
    debug_assert_eq!(f.trace_inv(ctx), dq);
    (d, dq, f)
}

/// Build the spin-`nu` corepresentation matrix from the four-case matrix
/// coefficient formula (little q-Jacobi polynomials in `zeta = -q^{-1}uv`
/// with base-`q^2` Gauss binomial weights).
pub fn build_corep(nu: HalfInt, ctx: &Ctx) -> Corep {
    assert!(nu.twice() >= 0, "negative spin");
    let idx = nu.index_set();
    let mut entries = Vec::with_capacity(idx.len());
    for &i in &idx {
        let mut row = Vec::with_capacity(idx.len());
        for &j in &idx {
            row.push(build_entry(nu, i, j, ctx));
        }
        entries.push(row);
    }
    Corep { nu, entries }
}

fn build_entry(nu: HalfInt, i: HalfInt, j: HalfInt, ctx: &Ctx) -> NCPoly {
    let int = |h: HalfInt| h.as_int();
    let ipj = i + j;
    let imj = i - j;
    if ipj.twice() <= 0 && imj.twice() >= 0 {
        // x^(-i-j) v^(i-j) q^((nu+j)(j-i)) [nu+i;i-j]^(1/2) [nu-j;i-j]^(1/2)
        //   P_(nu+j)^((i-j,-i-j))(zeta; q^2)
        let a = int(-ipj) as u32;
        let b = int(imj) as u32;
        let coeff = Scalar::q_pow(int(nu + j) * int(j - i), ctx)
            .mul(&sqrt_gauss_binomial_q2(int(nu + i), int(imj), ctx), ctx)
            .mul(&sqrt_gauss_binomial_q2(int(nu - j), int(imj), ctx), ctx);
        jacobi_with_prefix(a, b, true, int(nu + j), int(imj), int(-ipj), coeff, ctx)
    } else if ipj.twice() <= 0 {
        // x^(-i-j) u^(j-i) q^((nu+i)(i-j)) [nu-i;j-i]^(1/2) [nu+j;j-i]^(1/2)
        //   P_(nu+i)^((j-i,-i-j))(zeta; q^2)
        let a = int(-ipj) as u32;
        let b = int(-imj) as u32;
        let coeff = Scalar::q_pow(int(nu + i) * int(i - j), ctx)
            .mul(&sqrt_gauss_binomial_q2(int(nu - i), int(-imj), ctx), ctx)
            .mul(&sqrt_gauss_binomial_q2(int(nu + j), int(-imj), ctx), ctx);
        jacobi_with_prefix(a, b, false, int(nu + i), int(-imj), int(-ipj), coeff, ctx)
    } else if imj.twice() <= 0 {
        // q^((j-i)(j-nu)) [nu-i;j-i]^(1/2) [nu+j;j-i]^(1/2)
        //   P_(nu-j)^((j-i,i+j))(zeta; q^2) u^(j-i) y^(i+j)
        let b = int(-imj) as u32;
        let d = int(ipj) as u32;
        let coeff = Scalar::q_pow(int(j - i) * int(j - nu), ctx)
            .mul(&sqrt_gauss_binomial_q2(int(nu - i), int(-imj), ctx), ctx)
            .mul(&sqrt_gauss_binomial_q2(int(nu + j), int(-imj), ctx), ctx);
        jacobi_with_suffix(b, false, d, int(nu - j), int(-imj), int(ipj), coeff, ctx)
    } else {
        // q^((i-j)(i-nu)) [nu+i;i-j]^(1/2) [nu-j;i-j]^(1/2)
        //   P_(nu-i)^((i-j,i+j))(zeta; q^2) v^(i-j) y^(i+j)
        let b = int(imj) as u32;
        let d = int(ipj) as u32;
        let coeff = Scalar::q_pow(int(i - j) * int(i - nu), ctx)
            .mul(&sqrt_gauss_binomial_q2(int(nu + i), int(imj), ctx), ctx)
            .mul(&sqrt_gauss_binomial_q2(int(nu - j), int(imj), ctx), ctx);
        jacobi_with_suffix(b, true, d, int(nu - i), int(imj), int(ipj), coeff, ctx)
    }
}

/// `x^a (v or u)^b * P_n^((alpha,beta))(zeta; q^2)`; powers of
/// `zeta = (-q^(-1)) uv` commute into the monomial without q-factors.
#[allow(clippy::too_many_arguments)]
fn jacobi_with_prefix(
    a: u32,
    b: u32,
    v_side: bool,
    n: i64,
    alpha: i64,
    beta: i64,
    coeff: Scalar,
    ctx: &Ctx,
) -> NCPoly {
    let q2 = Scalar::q0_pow(HalfInt::from_int(2), ctx);
    let jac = little_q_jacobi(n, alpha, beta, &q2, ctx);
    let mzeta = Scalar::q_pow(-1, ctx).neg();
    let mut out = NCPoly::zero();
    let mut zeta_pow = Scalar::one(ctx);
    for (r, c) in jac.iter().enumerate() {
        let r = r as u32;
        let m = if v_side { Monomial::new(a, r, b + r, 0) } else { Monomial::new(a, b + r, r, 0) };
        let k = coeff.mul(c, ctx).mul(&zeta_pow, ctx);
        out = out.add(&NCPoly::monomial(m, k, ctx), ctx);
        zeta_pow = zeta_pow.mul(&mzeta, ctx);
    }
    out
}

/// `P_n^((alpha,beta))(zeta; q^2) * (v or u)^b y^d`.
#[allow(clippy::too_many_arguments)]
fn jacobi_with_suffix(
    b: u32,
    v_side: bool,
    d: u32,
    n: i64,
    alpha: i64,
    beta: i64,
    coeff: Scalar,
    ctx: &Ctx,
) -> NCPoly {
    let q2 = Scalar::q0_pow(HalfInt::from_int(2), ctx);
    let jac = little_q_jacobi(n, alpha, beta, &q2, ctx);
    let mzeta = Scalar::q_pow(-1, ctx).neg();
    let mut out = NCPoly::zero();
    let mut zeta_pow = Scalar::one(ctx);
    for (r, c) in jac.iter().enumerate() {
        let r = r as u32;
        let m = if v_side { Monomial::new(0, r, b + r, d) } else { Monomial::new(0, b + r, r, d) };
        let k = coeff.mul(c, ctx).mul(&zeta_pow, ctx);
        out = out.add(&NCPoly::monomial(m, k, ctx), ctx);
        zeta_pow = zeta_pow.mul(&mzeta, ctx);
    }
    out
}

/// `w w* = w* w = 1` entrywise.
pub fn verify_unitary(w: &Corep, ctx: &Ctx) -> Report {
    let mut rep = Report::new("corep-unitarity");
    let idx = w.nu.index_set();
    for &i in &idx {
        for &j in &idx {
            let mut right = NCPoly::zero();
            let mut left = NCPoly::zero();
            for &k in &idx {
                right = right.add(&w.entry(i, k).mul(&w.entry(j, k).star(ctx), ctx), ctx);
                left = left.add(&w.entry(k, i).star(ctx).mul(w.entry(k, j), ctx), ctx);
            }
            let expect = if i == j { NCPoly::one(ctx) } else { NCPoly::zero() };
            rep.check_witness(
                &format!("ww*[{},{}] nu={}", i, j, w.nu),
                "corep-unitarity",
                right == expect,
                right.sub(&expect, ctx).to_canonical_text(ctx),
            );
            rep.check_witness(
                &format!("w*w[{},{}] nu={}", i, j, w.nu),
                "corep-unitarity",
                left == expect,
                left.sub(&expect, ctx).to_canonical_text(ctx),
            );
        }
    }
    rep
}

/// `delta(w_ij) = sum_k w_ik (x) w_kj` entrywise.
pub fn verify_corep_axiom(w: &Corep, ctx: &Ctx) -> Report {
    let mut rep = Report::new("corep-axiom");
    let idx = w.nu.index_set();
    for &i in &idx {
        for &j in &idx {
            let lhs = w.entry(i, j).coproduct(ctx);
            let mut rhs = TensorPoly::zero();
            for &k in &idx {
                rhs = rhs.add(&TensorPoly::tensor(w.entry(i, k), w.entry(k, j), ctx), ctx);
            }
            rep.check(
                &format!("coproduct[{},{}] nu={}", i, j, w.nu),
                "corep-coproduct",
                lhs == rhs,
            );
        }
    }
    rep
}

/// `w_ij* = (-q)^(i-j) w_{-i,-j}` entrywise.
pub fn verify_star_symmetry(w: &Corep, ctx: &Ctx) -> Report {
    let mut rep = Report::new("corep-star-symmetry");
    let idx = w.nu.index_set();
    for &i in &idx {
        for &j in &idx {
            let lhs = w.entry(i, j).star(ctx);
            let phase = Scalar::neg_q_pow(i - j, ctx);
            let rhs = w.entry(-i, -j).scale(&phase, ctx);
            rep.check_witness(
                &format!("star[{},{}] nu={}", i, j, w.nu),
                "corep-star-symmetry",
                lhs == rhs,
                lhs.sub(&rhs, ctx).to_canonical_text(ctx),
            );
        }
    }
    rep
}

/// Both Haar orthogonality relations for all index quadruples:
/// `h(w(pi)_ij w(rho)_rs*) = D^(-1) F_(s,j) [pi=rho][i=r]` and
/// `h(w(pi)_ij* w(rho)_rs) = D^(-1) (F^(-1))_(r,i) [pi=rho][j=s]`.
pub fn orthogonality_check(pi: &Corep, rho: &Corep, ctx: &Ctx) -> Report {
    let mut rep = Report::new("orthogonality");
    let same = pi.nu == rho.nu;
    let (_, dq, f) = dimension_data(pi.nu, ctx);
    let dinv = Scalar::one(ctx).div(&dq, ctx).expect("quantum dimension invertible");
    for &i in &pi.nu.index_set() {
        for &j in &pi.nu.index_set() {
            for &r in &rho.nu.index_set() {
                for &s in &rho.nu.index_set() {
                    let h1 = pi.entry(i, j).mul(&rho.entry(r, s).star(ctx), ctx).haar(ctx);
                    let expect1 = if same && i == r && s == j {
                        dinv.mul(&f.entry(j, ctx), ctx)
                    } else {
                        Scalar::zero()
                    };
                    rep.check_witness(
                        &format!("h(w[{},{}]w*[{},{}]) nu={},rho={}", i, j, r, s, pi.nu, rho.nu),
                        "haar-orthogonality-first",
                        h1 == expect1,
                        crate::qscalar::display_scalar(&h1.sub(&expect1, ctx), ctx),
                    );
                    let h2 = pi.entry(i, j).star(ctx).mul(rho.entry(r, s), ctx).haar(ctx);
                    let expect2 = if same && j == s && r == i {
                        dinv.mul(&f.entry_inv(i, ctx), ctx)
                    } else {
                        Scalar::zero()
                    };
                    rep.check_witness(
                        &format!("h(w*[{},{}]w[{},{}]) nu={},rho={}", i, j, r, s, pi.nu, rho.nu),
                        "haar-orthogonality-second",
                        h2 == expect2,
                        crate::qscalar::display_scalar(&h2.sub(&expect2, ctx), ctx),
                    );
                }
            }
        }
    }
    rep
}

/// Generators of `U_q(su2)` as functionals on the coordinate algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UqGen {
    K,
    KInv,
    E,
    F,
}

/// The `i^(-2 nu + 1)` phase carried by the `e`/`f` formulas in the
/// negative regime (trivial for positive `q`).
pub fn uq_phase(nu: HalfInt, ctx: &Ctx) -> Scalar {
    match ctx.sign() {
        Sign::Positive => Scalar::one(ctx),
        Sign::Negative => Scalar::from_ratfunc(
            crate::qscalar::ratfunc::RatFunc::constant(GaussRat::i_pow(1 - nu.twice())),
            ctx,
        ),
    }
}

/// Functional value of a generator on a normal basis monomial, from the
/// values on the fundamental letters and the twisted Leibniz rule along
/// the `U_q(su2)` coproduct.
pub fn uq_functional(gen: UqGen, m: &Monomial, ctx: &Ctx) -> Scalar {
    let a = m.x as i64;
    let d = m.y as i64;
    match gen {
        UqGen::K => {
            if m.u == 0 && m.v == 0 {
                Scalar::q_pow_half(HalfInt(a - d), ctx)
            } else {
                Scalar::zero()
            }
        }
        UqGen::KInv => {
            if m.u == 0 && m.v == 0 {
                Scalar::q_pow_half(HalfInt(d - a), ctx)
            } else {
                Scalar::zero()
            }
        }
        UqGen::E => {
            if m.u == 1 && m.v == 0 {
                Scalar::q_pow_half(HalfInt(-a - d), ctx)
            } else {
                Scalar::zero()
            }
        }
        UqGen::F => {
            if m.u == 0 && m.v == 1 {
                Scalar::q_pow_half(HalfInt(-a - d), ctx)
            } else {
                Scalar::zero()
            }
        }
    }
}

/// Right action of a `U_q(su2)` generator on the algebra:
/// `theta . p = (id (x) theta) delta(p)`, computed letterwise through the
/// twisted Leibniz rule (`e,f` replace one letter, `k` scales by the right
/// torus weight). Avoids expanding the full coproduct.
pub fn uq_act(gen: UqGen, p: &NCPoly, ctx: &Ctx) -> NCPoly {
    let mut out = NCPoly::zero();
    for (m, coeff) in p.terms() {
        let (a, b, c, d) = (m.x as i64, m.u as i64, m.v as i64, m.y as i64);
        let r_weight = a - b + c - d;
        match gen {
            UqGen::K => {
                let f = Scalar::q_pow_half(HalfInt(r_weight), ctx);
                out = out.add(&NCPoly::monomial(*m, coeff.mul(&f, ctx), ctx), ctx);
            }
            UqGen::KInv => {
                let f = Scalar::q_pow_half(HalfInt(-r_weight), ctx);
                out = out.add(&NCPoly::monomial(*m, coeff.mul(&f, ctx), ctx), ctx);
            }
            UqGen::F => {
                // x -> u replacements
                for j in 1..=a {
                    let f = Scalar::q_pow_half(HalfInt(r_weight + 1 + 2 * a - 4 * j), ctx);
                    let base = crate::ncalg::assemble(
                        (a - 1) as u32,
                        (b + 1) as u32,
                        c as u32,
                        d as u32,
                        ctx,
                    );
                    out = out.add(&base.scale(&coeff.mul(&f, ctx), ctx), ctx);
                }
                // v -> y replacements
                for j in 1..=c {
                    let f = Scalar::q_pow_half(
                        HalfInt(-a + b + c - d + 1 + 2 * c - 4 * j),
                        ctx,
                    );
                    let base = crate::ncalg::assemble(
                        a as u32,
                        b as u32,
                        (c - 1) as u32,
                        (d + 1) as u32,
                        ctx,
                    );
                    out = out.add(&base.scale(&coeff.mul(&f, ctx), ctx), ctx);
                }
            }
            UqGen::E => {
                // u -> x replacements
                for j in 1..=b {
                    let f = Scalar::q_pow_half(HalfInt(-a - b + c - d - 1 + 4 * j - 2), ctx);
                    let base = crate::ncalg::assemble(
                        (a + 1) as u32,
                        (b - 1) as u32,
                        c as u32,
                        d as u32,
                        ctx,
                    );
                    out = out.add(&base.scale(&coeff.mul(&f, ctx), ctx), ctx);
                }
                // y -> v replacements
                for j in 1..=d {
                    let f = Scalar::q_pow_half(HalfInt(-a + b - c - d - 3 + 4 * j), ctx);
                    let base = crate::ncalg::assemble(
                        a as u32,
                        b as u32,
                        (c + 1) as u32,
                        (d - 1) as u32,
                        ctx,
                    );
                    out = out.add(&base.scale(&coeff.mul(&f, ctx), ctx), ctx);
                }
            }
        }
    }
    out
}

/// Reference implementation through the full coproduct; kept as an oracle
/// for the letterwise route.
pub fn uq_act_via_coproduct(gen: UqGen, p: &NCPoly, ctx: &Ctx) -> NCPoly {
    p.coproduct(ctx).contract_right(|m| uq_functional(gen, m, ctx), ctx)
}

/// Displayed matrix-coefficient evaluation of a generator on
/// `w(pi_nu)_{r,s}`.
pub fn uq_on_coeff(gen: UqGen, nu: HalfInt, r: HalfInt, s: HalfInt, ctx: &Ctx) -> Scalar {
    match gen {
        UqGen::K => {
            if r == s {
                Scalar::q_pow_half(-r, ctx)
            } else {
                Scalar::zero()
            }
        }
        UqGen::KInv => {
            if r == s {
                Scalar::q_pow_half(r, ctx)
            } else {
                Scalar::zero()
            }
        }
        UqGen::E => {
            if r + HalfInt::from_int(1) == s {
                uq_phase(nu, ctx).mul(
                    &Scalar::sqrt_qint_product(&[(nu + s).as_int(), (nu - s).as_int() + 1], ctx),
                    ctx,
                )
            } else {
                Scalar::zero()
            }
        }
        UqGen::F => {
            if r - HalfInt::from_int(1) == s {
                uq_phase(nu, ctx).mul(
                    &Scalar::sqrt_qint_product(&[(nu - s).as_int(), (nu + s).as_int() + 1], ctx),
                    ctx,
                )
            } else {
                Scalar::zero()
            }
        }
    }
}

/// Module-action coefficient of `f` on a spin-`nu` component:
/// `f . xi_t = lower_coeff(nu,t) xi_{t+1}`.
pub fn lower_coeff(nu: HalfInt, t: HalfInt, ctx: &Ctx) -> Scalar {
    uq_phase(nu, ctx).mul(
        &Scalar::sqrt_qint_product(&[(nu - t).as_int(), (nu + t).as_int() + 1], ctx),
        ctx,
    )
}

/// Module-action coefficient of `e`: `e . xi_t = raise_coeff(nu,t) xi_{t-1}`.
pub fn raise_coeff(nu: HalfInt, t: HalfInt, ctx: &Ctx) -> Scalar {
    uq_phase(nu, ctx).mul(
        &Scalar::sqrt_qint_product(&[(nu + t).as_int(), (nu - t).as_int() + 1], ctx),
        ctx,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::BigRational;

    #[test]
    fn fundamental_matrix_is_spin_half() {
        for sign in [Sign::Positive, Sign::Negative] {
            let ctx = Ctx::formal(sign);
            let w = build_corep(HalfInt(1), &ctx);
            let h = HalfInt(1);
            assert_eq!(*w.entry(-h, -h), NCPoly::gen_x(&ctx));
            assert_eq!(*w.entry(-h, h), NCPoly::gen_u(&ctx));
            assert_eq!(*w.entry(h, -h), NCPoly::gen_v(&ctx));
            assert_eq!(*w.entry(h, h), NCPoly::gen_y(&ctx));
        }
    }

    #[test]
    fn trivial_corep() {
        let ctx = Ctx::formal(Sign::Positive);
        let w = build_corep(HalfInt::ZERO, &ctx);
        assert_eq!(*w.entry(HalfInt::ZERO, HalfInt::ZERO), NCPoly::one(&ctx));
        assert!(verify_corep_axiom(&w, &ctx).all_passed());
    }

    #[test]
    fn spin_one_center_entry() {
        let ctx = Ctx::formal(Sign::Positive);
        let w = build_corep(HalfInt::from_int(1), &ctx);
        // w(pi_1)_{0,0} = 1 + (q + q^{-1}) uv
        let uv = NCPoly::gen_u(&ctx).mul(&NCPoly::gen_v(&ctx), &ctx);
        let c = Scalar::q_pow(1, &ctx).add(&Scalar::q_pow(-1, &ctx), &ctx);
        let expect = NCPoly::one(&ctx).add(&uv.scale(&c, &ctx), &ctx);
        assert_eq!(*w.entry(HalfInt::ZERO, HalfInt::ZERO), expect);
    }

    #[test]
    fn corep_checks_small_spins() {
        for sign in [Sign::Positive, Sign::Negative] {
            let ctx = Ctx::formal(sign);
            for t in 1..=3i64 {
                let w = build_corep(HalfInt(t), &ctx);
                assert!(verify_unitary(&w, &ctx).all_passed(), "unitarity nu={t}/2 {sign:?}");
                assert!(verify_corep_axiom(&w, &ctx).all_passed(), "axiom nu={t}/2 {sign:?}");
                assert!(
                    verify_star_symmetry(&w, &ctx).all_passed(),
                    "star symmetry nu={t}/2 {sign:?}"
                );
            }
        }
    }

    #[test]
    fn dimension_data_examples() {
        let ctx = Ctx::formal(Sign::Positive);
        let (d, dq, f) = dimension_data(HalfInt(1), &ctx);
        assert_eq!(d, 2);
        assert_eq!(dq, qfuncs::q_int(2, &ctx));
        assert_eq!(f.entry(HalfInt(-1), &ctx), Scalar::q0_pow(HalfInt::from_int(1), &ctx));
        assert_eq!(f.entry(HalfInt(1), &ctx), Scalar::q0_pow(HalfInt::from_int(-1), &ctx));
        // nu = 1 at q0 = 1/2: D = 21/4
        let half = Ctx::exact(Sign::Positive, 1, 2);
        let (_, dq, _) = dimension_data(HalfInt::from_int(1), &half);
        assert_eq!(dq.as_rational(), Some(BigRational::new(21.into(), 4.into())));
        // trivial: (1, 1, [1])
        let (d0, dq0, f0) = dimension_data(HalfInt::ZERO, &ctx);
        assert_eq!(d0, 1);
        assert_eq!(dq0, Scalar::one(&ctx));
        assert_eq!(f0.entry(HalfInt::ZERO, &ctx), Scalar::one(&ctx));
    }

    #[test]
    fn orthogonality_small() {
        for sign in [Sign::Positive, Sign::Negative] {
            let ctx = Ctx::formal(sign);
            let w0 = build_corep(HalfInt::ZERO, &ctx);
            let wh = build_corep(HalfInt(1), &ctx);
            let w1 = build_corep(HalfInt::from_int(1), &ctx);
            assert!(orthogonality_check(&w0, &w0, &ctx).all_passed());
            assert!(orthogonality_check(&wh, &wh, &ctx).all_passed());
            assert!(orthogonality_check(&w1, &w1, &ctx).all_passed());
            assert!(orthogonality_check(&wh, &w1, &ctx).all_passed());
            assert!(orthogonality_check(&w1, &wh, &ctx).all_passed());
        }
    }

    #[test]
    fn haar_xy_matches_f_weight() {
        let ctx = Ctx::formal(Sign::Positive);
        // h(x x*) = h(xy) = D^(-1) F_(-1/2,-1/2) = q0 / (2)_q
        let x = NCPoly::gen_x(&ctx);
        let lhs = x.mul(&x.star(&ctx), &ctx).haar(&ctx);
        let expect = Scalar::q0_pow(HalfInt(2), &ctx).div(&qfuncs::q_int(2, &ctx), &ctx).unwrap();
        assert_eq!(lhs, expect);
    }

    #[test]
    fn uq_functional_reproduces_displayed_action() {
        for sign in [Sign::Positive, Sign::Negative] {
            let ctx = Ctx::formal(sign);
            for t in 0..=3i64 {
                let nu = HalfInt(t);
                let w = build_corep(nu, &ctx);
                for gen in [UqGen::K, UqGen::KInv, UqGen::E, UqGen::F] {
                    for &r in &nu.index_set() {
                        for &s in &nu.index_set() {
                            let functional: Scalar = w
                                .entry(r, s)
                                .terms()
                                .map(|(m, c)| c.mul(&uq_functional(gen, m, &ctx), &ctx))
                                .fold(Scalar::zero(), |acc, v| acc.add(&v, &ctx));
                            let displayed = uq_on_coeff(gen, nu, r, s, &ctx);
                            assert_eq!(
                                functional, displayed,
                                "{gen:?} on w[{r},{s}] nu={nu} {sign:?}"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn uq_action_shifts_columns() {
        for sign in [Sign::Positive, Sign::Negative] {
            let ctx = Ctx::formal(sign);
            let nu = HalfInt(3);
            let w = build_corep(nu, &ctx);
            for &r in &nu.index_set() {
                for &s in &nu.index_set() {
                    // f . w_{r,s} = lower_coeff(nu, s) w_{r,s+1}
                    let lhs = uq_act(UqGen::F, w.entry(r, s), &ctx);
                    let up = s + HalfInt::from_int(1);
                    let rhs = if up.twice() <= nu.twice() {
                        w.entry(r, up).scale(&lower_coeff(nu, s, &ctx), &ctx)
                    } else {
                        NCPoly::zero()
                    };
                    assert_eq!(lhs, rhs, "f on w[{r},{s}] {sign:?}");
                    // e . w_{r,s} = raise_coeff(nu, s) w_{r,s-1}
                    let lhs = uq_act(UqGen::E, w.entry(r, s), &ctx);
                    let down = s - HalfInt::from_int(1);
                    let rhs = if down.twice() >= -nu.twice() {
                        w.entry(r, down).scale(&raise_coeff(nu, s, &ctx), &ctx)
                    } else {
                        NCPoly::zero()
                    };
                    assert_eq!(lhs, rhs, "e on w[{r},{s}] {sign:?}");
                    // k . w_{r,s} = q^(-s) w_{r,s}
                    let lhs = uq_act(UqGen::K, w.entry(r, s), &ctx);
                    let rhs = w.entry(r, s).scale(&Scalar::q_pow_half(-s, &ctx), &ctx);
                    assert_eq!(lhs, rhs, "k on w[{r},{s}] {sign:?}");
                }
            }
        }
    }

    #[test]
    fn f_on_x_power_negative_regime() {
        // f . x^n = i^(-n+1) q0^((n-1)/2) (n)_q x^(n-1) u
        let ctx = Ctx::formal(Sign::Negative);
        for n in 1..=4u32 {
            let xn = NCPoly::gen_x(&ctx).pow(n, &ctx);
            let lhs = uq_act(UqGen::F, &xn, &ctx);
            let phase = Scalar::from_ratfunc(
                crate::qscalar::ratfunc::RatFunc::constant(GaussRat::i_pow(-(n as i64) + 1)),
                &ctx,
            );
            let coeff = phase
                .mul(&Scalar::q0_pow(HalfInt(n as i64 - 1), &ctx), &ctx)
                .mul(&qfuncs::q_int(n as i64, &ctx), &ctx);
            let rhs = NCPoly::monomial(Monomial::new(n - 1, 1, 0, 0), coeff, &ctx);
            assert_eq!(lhs, rhs, "n = {n}");
        }
    }

    #[test]
    fn f_is_a_twisted_derivation() {
        // f.(ab) = (f.a)(k.b) + (k^(-1).a)(f.b) with a = x, b = y
        for sign in [Sign::Positive, Sign::Negative] {
            let ctx = Ctx::formal(sign);
            let a = NCPoly::gen_x(&ctx);
            let b = NCPoly::gen_y(&ctx);
            let prod = a.mul(&b, &ctx);
            let lhs = uq_act(UqGen::F, &prod, &ctx);
            let rhs = uq_act(UqGen::F, &a, &ctx)
                .mul(&uq_act(UqGen::K, &b, &ctx), &ctx)
                .add(&uq_act(UqGen::KInv, &a, &ctx).mul(&uq_act(UqGen::F, &b, &ctx), &ctx), &ctx);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn ef_commutator_is_k_difference() {
        // (ef - fe) . w_{r,s} = ((k^2 - k^{-2})/(q - q^{-1})) . w_{r,s}
        for sign in [Sign::Positive, Sign::Negative] {
            let ctx = Ctx::formal(sign);
            for t in 1..=4i64 {
                let nu = HalfInt(t);
                let w = build_corep(nu, &ctx);
                for &s in &nu.index_set() {
                    let p = w.entry(nu, s);
                    let ef = uq_act(UqGen::E, &uq_act(UqGen::F, p, &ctx), &ctx);
                    let fe = uq_act(UqGen::F, &uq_act(UqGen::E, p, &ctx), &ctx);
                    let lhs = ef.sub(&fe, &ctx);
                    let k2 = uq_act(UqGen::K, &uq_act(UqGen::K, p, &ctx), &ctx);
                    let k2inv = uq_act(UqGen::KInv, &uq_act(UqGen::KInv, p, &ctx), &ctx);
                    let den = Scalar::q_pow(1, &ctx).sub(&Scalar::q_pow(-1, &ctx), &ctx);
                    let rhs = k2.sub(&k2inv, &ctx).scale(&den.try_inv(&ctx).unwrap(), &ctx);
                    assert_eq!(lhs, rhs, "nu={nu} s={s} {sign:?}");
                }
            }
        }
    }
}

#[cfg(test)]
mod uq_fast_tests {
    use super::*;
    use crate::ncalg::Monomial;

    #[test]
    fn letterwise_action_matches_coproduct_route() {
        for sign in [Sign::Positive, Sign::Negative] {
            let ctx = Ctx::formal(sign);
            let mut monos = Vec::new();
            for total in 0..=4u32 {
                for x in 0..=total {
                    for u in 0..=(total - x) {
                        for v in 0..=(total - x - u) {
                            let y = total - x - u - v;
                            if x == 0 || y == 0 {
                                monos.push(Monomial { x, u, v, y });
                            }
                        }
                    }
                }
            }
            for m in monos {
                let p = NCPoly::monomial(m, Scalar::one(&ctx), &ctx);
                for gen in [UqGen::K, UqGen::KInv, UqGen::E, UqGen::F] {
                    assert_eq!(
                        uq_act(gen, &p, &ctx),
                        uq_act_via_coproduct(gen, &p, &ctx),
                        "{gen:?} at {m:?} {sign:?}"
                    );
                }
            }
        }
    }
}
