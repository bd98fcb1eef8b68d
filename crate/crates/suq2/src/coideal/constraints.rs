//! Formal eigenvector-pair calculus and polynomial constraint systems.
//!
//! The elimination arguments manipulate expressions
//! `sum coeff * eta_a eta_b` in the components of one or two eigenvector
//! tuples, apply lowering operators, and then read off scalar equations in
//! the coefficient unknowns through the torus character. Everything here
//! is coefficient-level: the tuple components are formal symbols.

use crate::corep;
use crate::qscalar::numeric::{eval_scalar, NumEnv};
use crate::qscalar::{Ctx, HalfInt, Scalar};
use num::complex::Complex64;
use std::collections::BTreeMap;

/// Formal bilinear expression `sum coeff * (first_a second_b)` in ordered
/// products of components of two spin-`mu` / spin-`nu` tuples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairExpr {
    pub mu: HalfInt,
    pub nu: HalfInt,
    terms: BTreeMap<(HalfInt, HalfInt), Scalar>,
}

impl PairExpr {
    pub fn zero(mu: HalfInt, nu: HalfInt) -> Self {
        PairExpr { mu, nu, terms: BTreeMap::new() }
    }

    pub fn add_term(&mut self, a: HalfInt, b: HalfInt, c: Scalar, ctx: &Ctx) {
        if c.is_zero() {
            return;
        }
        assert!(a.twice().abs() <= self.mu.twice() && b.twice().abs() <= self.nu.twice());
        let e = self.terms.entry((a, b)).or_insert_with(Scalar::zero);
        *e = e.add(&c, ctx);
        if e.is_zero() {
            self.terms.remove(&(a, b));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(HalfInt, HalfInt), &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, a: HalfInt, b: HalfInt) -> Scalar {
        self.terms.get(&(a, b)).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn scale(&self, k: &Scalar, ctx: &Ctx) -> PairExpr {
        let mut out = PairExpr::zero(self.mu, self.nu);
        for (&(a, b), c) in &self.terms {
            out.add_term(a, b, c.mul(k, ctx), ctx);
        }
        out
    }

    /// The lowest component of `Psi_ell` of two tuples as a pair expression:
    /// `sum_r C_r (xi_(-ell+nu-r), eta_(-nu+r))`.
    pub fn psi_lowest(mu: HalfInt, nu: HalfInt, ell: HalfInt, ctx: &Ctx) -> PairExpr {
        let mut out = PairExpr::zero(mu, nu);
        let top = (mu + nu - ell).as_int();
        for r in 0..=top {
            let a = -ell + nu - HalfInt::from_int(r);
            let b = -nu + HalfInt::from_int(r);
            out.add_term(a, b, crate::clebsch::cg_coeff(mu, nu, ell, r, ctx), ctx);
        }
        out
    }

    /// Apply the lowering operator through the coproduct:
    /// `f.(xi_a eta_b) = lower(mu,a) q^{-b} (xi_{a+1} eta_b)
    ///                 + q^{a} lower(nu,b) (xi_a eta_{b+1})`.
    pub fn f_act(&self, ctx: &Ctx) -> PairExpr {
        let mut out = PairExpr::zero(self.mu, self.nu);
        for (&(a, b), c) in &self.terms {
            let up_a = a + HalfInt::from_int(1);
            if up_a.twice() <= self.mu.twice() {
                let f = corep::lower_coeff(self.mu, a, ctx)
                    .mul(&Scalar::q_pow_half(-b, ctx), ctx);
                out.add_term(up_a, b, c.mul(&f, ctx), ctx);
            }
            let up_b = b + HalfInt::from_int(1);
            if up_b.twice() <= self.nu.twice() {
                let f = Scalar::q_pow_half(a, ctx)
                    .mul(&corep::lower_coeff(self.nu, b, ctx), ctx);
                out.add_term(a, up_b, c.mul(&f, ctx), ctx);
            }
        }
        out
    }

    /// Evaluate by substituting actual values for the pair components with
    /// a supplied multiplication (matrix algebras, polynomial algebras...).
    pub fn eval_with<T>(
        &self,
        first: impl Fn(HalfInt) -> T,
        second: impl Fn(HalfInt) -> T,
        mul: impl Fn(&T, &T) -> T,
        scale: impl Fn(&T, &Scalar) -> T,
        add: impl Fn(&T, &T) -> T,
        zero: T,
    ) -> T {
        let mut acc = zero;
        for (&(a, b), c) in &self.terms {
            let prod = mul(&first(a), &second(b));
            acc = add(&acc, &scale(&prod, c));
        }
        acc
    }

    /// Read off the torus-character equation for a self-pair
    /// `eta_a eta_b -> c_a c_b` (components commute after the character).
    pub fn pi_t_selfpair(&self, sys: &ConstraintSystem, ctx: &Ctx) -> CPoly {
        let mut out = CPoly::zero();
        for (&(a, b), k) in &self.terms {
            debug_assert_eq!(self.mu, sys.n);
            debug_assert_eq!(self.nu, sys.n);
            let m = sys.var_monomial(a, ctx).mul(&sys.var_monomial(b, ctx), ctx);
            out = out.add(&m.scale(k, ctx), ctx);
        }
        out
    }
}

/// A commuting monomial in the unknowns and their conjugates.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct CMono(pub BTreeMap<(u32, bool), u32>);

impl CMono {
    pub fn one() -> Self {
        CMono(BTreeMap::new())
    }

    pub fn var(v: u32, conj: bool) -> Self {
        let mut m = BTreeMap::new();
        m.insert((v, conj), 1);
        CMono(m)
    }

    fn mul(&self, o: &CMono) -> CMono {
        let mut m = self.0.clone();
        for (&k, &e) in &o.0 {
            *m.entry(k).or_insert(0) += e;
        }
        CMono(m)
    }

    pub fn degree(&self) -> u32 {
        self.0.values().sum()
    }
}

/// Polynomial in the unknowns with scalar coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CPoly {
    terms: BTreeMap<CMono, Scalar>,
}

impl CPoly {
    pub fn zero() -> Self {
        CPoly { terms: BTreeMap::new() }
    }

    pub fn constant(c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(CMono::one(), c);
        }
        CPoly { terms }
    }

    pub fn var(v: u32, conj: bool, ctx: &Ctx) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(CMono::var(v, conj), Scalar::one(ctx));
        CPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CMono, &Scalar)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, m: CMono, c: Scalar, ctx: &Ctx) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m).or_insert_with(Scalar::zero);
        *e = e.add(&c, ctx);
        if e.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add(&self, o: &CPoly, ctx: &Ctx) -> CPoly {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.clone(), ctx);
        }
        out
    }

    pub fn sub(&self, o: &CPoly, ctx: &Ctx) -> CPoly {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.neg(), ctx);
        }
        out
    }

    pub fn mul(&self, o: &CPoly, ctx: &Ctx) -> CPoly {
        let mut out = CPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                out.add_term(m1.mul(m2), c1.mul(c2, ctx), ctx);
            }
        }
        out
    }

    pub fn scale(&self, k: &Scalar, ctx: &Ctx) -> CPoly {
        let mut out = CPoly::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.mul(k, ctx), ctx);
        }
        out
    }

    /// Substitute zero for a variable.
    pub fn kill_var(&self, v: u32, ctx: &Ctx) -> CPoly {
        let mut out = CPoly::zero();
        for (m, c) in &self.terms {
            if m.0.keys().any(|&(w, _)| w == v) {
                continue;
            }
            out.add_term(m.clone(), c.clone(), ctx);
        }
        out
    }

    /// Numeric evaluation after assigning complex values to the variables.
    pub fn eval_f64(&self, assign: &[Complex64], ctx: &Ctx, env: &NumEnv) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let cf = eval_scalar(c, ctx, env);
            let mut val = Complex64::new(cf.re.to_f64(), cf.im.to_f64());
            for (&(v, conj), &e) in &m.0 {
                let base = if conj { assign[v as usize].conj() } else { assign[v as usize] };
                for _ in 0..e {
                    val *= base;
                }
            }
            acc += val;
        }
        acc
    }
}

/// A polynomial constraint system in the component unknowns `c_t` of a
/// spin-`n` coefficient vector, optionally with the self-conjugacy
/// normal form `c_{-t} = (-q)^t conj(c_t)` substituted.
#[derive(Clone, Debug)]
pub struct ConstraintSystem {
    pub n: HalfInt,
    pub self_conjugate: bool,
    pub equations: Vec<(String, CPoly)>,
}

impl ConstraintSystem {
    pub fn new(n: HalfInt, self_conjugate: bool) -> Self {
        ConstraintSystem { n, self_conjugate, equations: Vec::new() }
    }

    /// Variable index of `c_t`.
    pub fn var_of(&self, t: HalfInt) -> u32 {
        ((t.twice() + self.n.twice()) / 2) as u32
    }

    pub fn index_of_var(&self, v: u32) -> HalfInt {
        HalfInt(2 * v as i64 - self.n.twice())
    }

    pub fn num_vars(&self) -> usize {
        (self.n.twice() + 1) as usize
    }

    /// `c_t` as a polynomial, in the self-conjugate normal form when
    /// enabled (negative indices rewrite through the conjugates of the
    /// nonnegative ones).
    pub fn var_monomial(&self, t: HalfInt, ctx: &Ctx) -> CPoly {
        if self.self_conjugate && t.twice() < 0 {
            // c_t = (-q)^(-t) conj(c_{-t})
            let phase = Scalar::neg_q_pow(-t, ctx);
            CPoly::var(self.var_of(-t), true, ctx).scale(&phase, ctx)
        } else {
            CPoly::var(self.var_of(t), false, ctx)
        }
    }

    pub fn push(&mut self, tag: &str, eq: CPoly) {
        self.equations.push((tag.to_string(), eq));
    }

    /// Numeric residual `sum |eq|^2` at an assignment.
    pub fn residual_f64(&self, assign: &[Complex64], ctx: &Ctx, env: &NumEnv) -> f64 {
        self.equations
            .iter()
            .map(|(_, eq)| eq.eval_f64(assign, ctx, env).norm_sqr())
            .sum()
    }
}

/// A constraint system compiled to complex doubles for the multi-start
/// search: each equation is a list of (monomial, coefficient) pairs.
pub struct CompiledSystem {
    pub num_vars: usize,
    equations: Vec<Vec<(Vec<(usize, bool, u32)>, Complex64)>>,
}

impl CompiledSystem {
    pub fn compile(sys: &ConstraintSystem, ctx: &Ctx, q0: (i64, i64)) -> Self {
        let env = NumEnv::new(
            num::BigRational::new(q0.0.into(), q0.1.into()),
            192,
        );
        let equations = sys
            .equations
            .iter()
            .map(|(_, eq)| {
                eq.terms()
                    .map(|(m, c)| {
                        let cf = eval_scalar(c, ctx, &env);
                        let coeff = Complex64::new(cf.re.to_f64(), cf.im.to_f64());
                        let mono: Vec<(usize, bool, u32)> =
                            m.0.iter().map(|(&(v, conj), &e)| (v as usize, conj, e)).collect();
                        (mono, coeff)
                    })
                    .collect()
            })
            .collect();
        CompiledSystem { num_vars: sys.num_vars(), equations }
    }

    pub fn residual(&self, x: &[Complex64]) -> f64 {
        let mut total = 0.0;
        for eq in &self.equations {
            let mut acc = Complex64::new(0.0, 0.0);
            for (mono, coeff) in eq {
                let mut val = *coeff;
                for &(v, conj, e) in mono {
                    let base = if conj { x[v].conj() } else { x[v] };
                    for _ in 0..e {
                        val *= base;
                    }
                }
                acc += val;
            }
            total += acc.norm_sqr();
        }
        total
    }
}

/// Multi-start numeric minimization of `sum |eq|^2` over the unit sphere;
/// returns the best residual found among unit-norm candidates.
pub fn numeric_search(sys: &ConstraintSystem, ctx: &Ctx, q0: (i64, i64), seeds: u32) -> f64 {
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};
    let compiled = CompiledSystem::compile(sys, ctx, q0);
    let nv = compiled.num_vars;
    let mut rng = StdRng::seed_from_u64(0x5eed ^ ((q0.0 as u64) << 8) ^ (q0.1 as u64));
    let mut best = f64::INFINITY;
    for _ in 0..seeds {
        let mut x: Vec<Complex64> = (0..nv)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        normalize(&mut x);
        let mut step = 0.2f64;
        let mut fx = compiled.residual(&x);
        for _ in 0..120 {
            let mut grad = vec![Complex64::new(0.0, 0.0); nv];
            let eps = 1e-7;
            for i in 0..nv {
                for part in 0..2 {
                    let mut xp = x.clone();
                    if part == 0 {
                        xp[i] += eps;
                    } else {
                        xp[i] += Complex64::new(0.0, eps);
                    }
                    let d = (compiled.residual(&xp) - fx) / eps;
                    if part == 0 {
                        grad[i].re = d;
                    } else {
                        grad[i].im = d;
                    }
                }
            }
            let mut xn: Vec<Complex64> =
                x.iter().zip(&grad).map(|(a, g)| a - step * g).collect();
            normalize(&mut xn);
            let fn_ = compiled.residual(&xn);
            if fn_ < fx {
                x = xn;
                fx = fn_;
                step *= 1.3;
            } else {
                step *= 0.5;
                if step < 1e-13 {
                    break;
                }
            }
        }
        if fx < best {
            best = fx;
        }
    }
    best
}

fn normalize(x: &mut [Complex64]) {
    let norm: f64 = x.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    if norm > 1e-12 {
        for c in x.iter_mut() {
            *c /= norm;
        }
    } else {
        x[0] = Complex64::new(1.0, 0.0);
    }
}
