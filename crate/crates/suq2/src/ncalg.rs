//! The coordinate *-algebra of `SU_q(2)` as normal-ordered noncommutative
//! polynomials in the generators `x, u, v, y`.
//!
//! Defining relations:
//! `ux = q xu`, `vx = q xv`, `yu = q uy`, `yv = q vy`, `uv = vu`,
//! `xy - q^{-1} uv = yx - q uv = 1`, with star structure `x* = y`,
//! `u* = -q^{-1} v`.
//!
//! Normal form: letter order `x, u, v, y` with the `x`/`y` exponents never
//! simultaneously positive; the basis is `x^a u^b v^c` and `u^b v^c y^d`.

use crate::qscalar::ratfunc::{GaussRat, Poly, RatFunc};
use crate::qscalar::{Ctx, HalfInt, Scalar};
use std::collections::BTreeMap;
use std::fmt::Write as _;

/// Normal-form basis monomial `x^x u^u v^v y^y` with `x*y == 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub x: u32,
    pub u: u32,
    pub v: u32,
    pub y: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { x: 0, u: 0, v: 0, y: 0 };

    pub fn new(x: u32, u: u32, v: u32, y: u32) -> Self {
        assert!(x == 0 || y == 0, "monomial violates the normal form");
        Monomial { x, u, v, y }
    }

    pub fn degree(&self) -> u32 {
        self.x + self.u + self.v + self.y
    }

    /// Weight under the left torus action (`x,u -> z`, `v,y -> conj z`).
    pub fn left_weight(&self) -> i64 {
        self.x as i64 + self.u as i64 - self.v as i64 - self.y as i64
    }

    /// Weight under the right torus action (`x,v -> z`, `u,y -> conj z`).
    pub fn right_weight(&self) -> i64 {
        self.x as i64 - self.u as i64 + self.v as i64 - self.y as i64
    }
}

/// Normal-ordered noncommutative polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NCPoly {
    terms: BTreeMap<Monomial, Scalar>,
}

/// Element of the algebraic tensor square, bilinear normal form per leg.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorPoly {
    terms: BTreeMap<(Monomial, Monomial), Scalar>,
}

/// `x^a y^d` reduced to normal form:
/// `x^a y^d = x^(a-1) y^(d-1) (1 + q^(1-2d) uv)`.
fn reduce_x_y(a: u32, d: u32, ctx: &Ctx) -> NCPoly {
    if a == 0 || d == 0 {
        return NCPoly::monomial(Monomial::new(a, 0, 0, d), Scalar::one(ctx), ctx);
    }
    let prev = reduce_x_y(a - 1, d - 1, ctx);
    let q_pow = Scalar::q_pow(1 - 2 * (d as i64), ctx);
    let mut out = prev.clone();
    for (m, c) in &prev.terms {
        // m * uv, with u,v moving left past any y power
        let shift = Scalar::q_pow(2 * (m.y as i64), ctx).mul(&q_pow, ctx);
        let m2 = Monomial { x: m.x, u: m.u + 1, v: m.v + 1, y: m.y };
        out.add_term(m2, c.mul(&shift, ctx), ctx);
    }
    out
}

/// `y^d x^a` reduced to normal form:
/// `y^d x^a = (y^(d-1) + q^(2d-1) uv y^(d-1)) x^(a-1)`.
fn reduce_y_x(d: u32, a: u32, ctx: &Ctx) -> NCPoly {
    if a == 0 || d == 0 {
        return NCPoly::monomial(Monomial::new(a, 0, 0, d), Scalar::one(ctx), ctx);
    }
    let prev = reduce_y_x(d - 1, a - 1, ctx);
    let q_pow = Scalar::q_pow(2 * (d as i64) - 1, ctx);
    let mut out = prev.clone();
    for (m, c) in &prev.terms {
        // uv * m, with u,v moving right past any x power
        let shift = Scalar::q_pow(2 * (m.x as i64), ctx).mul(&q_pow, ctx);
        let m2 = Monomial { x: m.x, u: m.u + 1, v: m.v + 1, y: m.y };
        out.add_term(m2, c.mul(&shift, ctx), ctx);
    }
    out
}

/// Assemble `x^a u^b v^c y^d` (arbitrary exponents) into normal form.
pub(crate) fn assemble(a: u32, b: u32, c: u32, d: u32, ctx: &Ctx) -> NCPoly {
    if a == 0 || d == 0 {
        return NCPoly::monomial(Monomial::new(a, b, c, d), Scalar::one(ctx), ctx);
    }
    // move u^b v^c right past y^d, reduce x^a y^d, then restore u^b v^c
    let coeff = Scalar::q_pow(-((b + c) as i64) * d as i64, ctx);
    let core = reduce_x_y(a, d, ctx);
    let mut out = NCPoly::zero();
    for (m, k) in &core.terms {
        let shift = Scalar::q_pow(((b + c) as i64) * m.y as i64, ctx);
        let m2 = Monomial { x: m.x, u: m.u + b, v: m.v + c, y: m.y };
        out.add_term(m2, k.mul(&shift, ctx).mul(&coeff, ctx), ctx);
    }
    out
}

/// Product of two normal monomials.
fn mono_mul(m1: &Monomial, m2: &Monomial, ctx: &Ctx) -> NCPoly {
    if m1.y > 0 && m2.x > 0 {
        // m1 = u^b1 v^c1 y^d1, m2 = x^a2 u^b2 v^c2
        debug_assert!(m1.x == 0 && m2.y == 0);
        let core = reduce_y_x(m1.y, m2.x, ctx);
        let mut out = NCPoly::zero();
        for (m, k) in &core.terms {
            // left-multiply by u^b1 v^c1 (u,v move right past x powers),
            // right-multiply by u^b2 v^c2 (move left past y powers)
            let lshift = Scalar::q_pow(((m1.u + m1.v) as i64) * m.x as i64, ctx);
            let rshift = Scalar::q_pow(((m2.u + m2.v) as i64) * m.y as i64, ctx);
            let m3 = Monomial { x: m.x, u: m.u + m1.u + m2.u, v: m.v + m1.v + m2.v, y: m.y };
            out.add_term(m3, k.mul(&lshift, ctx).mul(&rshift, ctx), ctx);
        }
        out
    } else if m1.y == 0 {
        // x^a1 u^b1 v^c1 x^a2 u^b2 v^c2 y^d2
        let coeff = Scalar::q_pow(((m1.u + m1.v) as i64) * m2.x as i64, ctx);
        assemble(m1.x + m2.x, m1.u + m2.u, m1.v + m2.v, m2.y, ctx).scale(&coeff, ctx)
    } else {
        // m2.x == 0: x^a1 u^b1 v^c1 y^d1 u^b2 v^c2 y^d2
        let coeff = Scalar::q_pow(((m2.u + m2.v) as i64) * m1.y as i64, ctx);
        assemble(m1.x, m1.u + m2.u, m1.v + m2.v, m1.y + m2.y, ctx).scale(&coeff, ctx)
    }
}

impl NCPoly {
    pub fn zero() -> Self {
        NCPoly { terms: BTreeMap::new() }
    }

    pub fn one(ctx: &Ctx) -> Self {
        NCPoly::monomial(Monomial::ONE, Scalar::one(ctx), ctx)
    }

    pub fn monomial(m: Monomial, c: Scalar, _ctx: &Ctx) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        NCPoly { terms }
    }

    pub fn gen_x(ctx: &Ctx) -> Self {
        NCPoly::monomial(Monomial::new(1, 0, 0, 0), Scalar::one(ctx), ctx)
    }

    pub fn gen_u(ctx: &Ctx) -> Self {
        NCPoly::monomial(Monomial::new(0, 1, 0, 0), Scalar::one(ctx), ctx)
    }

    pub fn gen_v(ctx: &Ctx) -> Self {
        NCPoly::monomial(Monomial::new(0, 0, 1, 0), Scalar::one(ctx), ctx)
    }

    pub fn gen_y(ctx: &Ctx) -> Self {
        NCPoly::monomial(Monomial::new(0, 0, 0, 1), Scalar::one(ctx), ctx)
    }

    /// `zeta = -q^{-1} u v`.
    pub fn zeta(ctx: &Ctx) -> Self {
        NCPoly::monomial(Monomial::new(0, 1, 1, 0), Scalar::q_pow(-1, ctx).neg(), ctx)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    fn add_term(&mut self, m: Monomial, c: Scalar, ctx: &Ctx) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().add(&c, ctx);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, o: &NCPoly, ctx: &Ctx) -> NCPoly {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(*m, c.clone(), ctx);
        }
        out
    }

    pub fn neg(&self) -> NCPoly {
        NCPoly { terms: self.terms.iter().map(|(m, c)| (*m, c.neg())).collect() }
    }

    pub fn sub(&self, o: &NCPoly, ctx: &Ctx) -> NCPoly {
        self.add(&o.neg(), ctx)
    }

    pub fn scale(&self, c: &Scalar, ctx: &Ctx) -> NCPoly {
        if c.is_zero() {
            return NCPoly::zero();
        }
        let mut out = NCPoly::zero();
        for (m, k) in &self.terms {
            out.add_term(*m, k.mul(c, ctx), ctx);
        }
        out
    }

    pub fn mul(&self, o: &NCPoly, ctx: &Ctx) -> NCPoly {
        let mut out = NCPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let c = c1.mul(c2, ctx);
                let prod = mono_mul(m1, m2, ctx);
                for (m, k) in &prod.terms {
                    out.add_term(*m, k.mul(&c, ctx), ctx);
                }
            }
        }
        out
    }

    pub fn pow(&self, n: u32, ctx: &Ctx) -> NCPoly {
        let mut out = NCPoly::one(ctx);
        for _ in 0..n {
            out = out.mul(self, ctx);
        }
        out
    }

    /// Star: conjugate-linear anti-homomorphism with
    /// `x* = y`, `y* = x`, `u* = -q^{-1} v`, `v* = -q u`.
    pub fn star(&self, ctx: &Ctx) -> NCPoly {
        let mut out = NCPoly::zero();
        for (m, c) in &self.terms {
            // (x^a u^b v^c y^d)* = x^d (-q u)^c (-q^{-1} v)^b y^a
            let sign = if (m.u + m.v) % 2 == 0 { 1 } else { -1 };
            let qpow = Scalar::q_pow(m.v as i64 - m.u as i64, ctx);
            let coeff = c.conj(ctx).mul(&qpow, ctx).scale_int(sign, ctx);
            let assembled = assemble(m.y, m.v, m.u, m.x, ctx);
            for (m2, k) in &assembled.terms {
                out.add_term(*m2, k.mul(&coeff, ctx), ctx);
            }
        }
        out
    }

    /// Antipode: linear anti-homomorphism with
    /// `kappa(x) = y`, `kappa(u) = -q u`, `kappa(v) = -q^{-1} v`,
    /// `kappa(y) = x`.
    pub fn antipode(&self, ctx: &Ctx) -> NCPoly {
        let mut out = NCPoly::zero();
        for (m, c) in &self.terms {
            // kappa(x^a u^b v^c y^d) = x^d (-q^{-1} v)^c (-q u)^b y^a
            let sign = if (m.u + m.v) % 2 == 0 { 1 } else { -1 };
            let qpow = Scalar::q_pow(m.u as i64 - m.v as i64, ctx);
            let coeff = c.mul(&qpow, ctx).scale_int(sign, ctx);
            let assembled = assemble(m.y, m.u, m.v, m.x, ctx);
            for (m2, k) in &assembled.terms {
                out.add_term(*m2, k.mul(&coeff, ctx), ctx);
            }
        }
        out
    }

    /// Counit: `eps(x) = eps(y) = 1`, `eps(u) = eps(v) = 0`, multiplicative.
    pub fn counit(&self, ctx: &Ctx) -> Scalar {
        let mut out = Scalar::zero();
        for (m, c) in &self.terms {
            if m.u == 0 && m.v == 0 {
                out = out.add(c, ctx);
            }
        }
        out
    }

    /// Coproduct, extended as an algebra homomorphism from
    /// `d(x) = x(x)x + u(x)v` etc. (matrix comultiplication of the
    /// fundamental generator matrix).
    pub fn coproduct(&self, ctx: &Ctx) -> TensorPoly {
        let dx = TensorPoly::from_pairs(
            &[
                (Monomial::new(1, 0, 0, 0), Monomial::new(1, 0, 0, 0), Scalar::one(ctx)),
                (Monomial::new(0, 1, 0, 0), Monomial::new(0, 0, 1, 0), Scalar::one(ctx)),
            ],
            ctx,
        );
        let du = TensorPoly::from_pairs(
            &[
                (Monomial::new(1, 0, 0, 0), Monomial::new(0, 1, 0, 0), Scalar::one(ctx)),
                (Monomial::new(0, 1, 0, 0), Monomial::new(0, 0, 0, 1), Scalar::one(ctx)),
            ],
            ctx,
        );
        let dv = TensorPoly::from_pairs(
            &[
                (Monomial::new(0, 0, 1, 0), Monomial::new(1, 0, 0, 0), Scalar::one(ctx)),
                (Monomial::new(0, 0, 0, 1), Monomial::new(0, 0, 1, 0), Scalar::one(ctx)),
            ],
            ctx,
        );
        let dy = TensorPoly::from_pairs(
            &[
                (Monomial::new(0, 0, 1, 0), Monomial::new(0, 1, 0, 0), Scalar::one(ctx)),
                (Monomial::new(0, 0, 0, 1), Monomial::new(0, 0, 0, 1), Scalar::one(ctx)),
            ],
            ctx,
        );
        let mut out = TensorPoly::zero();
        for (m, c) in &self.terms {
            let mut t = TensorPoly::one(ctx);
            for _ in 0..m.x {
                t = t.mul(&dx, ctx);
            }
            for _ in 0..m.u {
                t = t.mul(&du, ctx);
            }
            for _ in 0..m.v {
                t = t.mul(&dv, ctx);
            }
            for _ in 0..m.y {
                t = t.mul(&dy, ctx);
            }
            out = out.add(&t.scale(c, ctx), ctx);
        }
        out
    }

    /// Haar state: vanishes off the `u^n v^n` diagonal;
    /// `h(u^n v^n) = (-q)^n / (1 + q_0^2 + ... + q_0^(2n))` and `h(1) = 1`.
    /// The pole-free form keeps `q = -1` (i.e. `q_0 = 1`) exact.
    pub fn haar(&self, ctx: &Ctx) -> Scalar {
        let mut out = Scalar::zero();
        for (m, c) in &self.terms {
            if m.x != 0 || m.y != 0 || m.u != m.v {
                continue;
            }
            let n = m.u as i64;
            let mut v = vec![GaussRat::zero(); (8 * n + 1) as usize];
            for j in 0..=n {
                v[(8 * j) as usize] = GaussRat::one();
            }
            let weight = Scalar::from_ratfunc(RatFunc::new(Poly::one(), Poly(v), &ctx.mode), ctx);
            let signed = Scalar::neg_q_pow(HalfInt::from_int(n), ctx);
            out = out.add(&c.mul(&weight, ctx).mul(&signed, ctx), ctx);
        }
        out
    }

    /// The left torus action `beta^L_z` for a unit scalar `z`: scales each
    /// monomial by `z^(left weight)`.
    pub fn apply_beta_left(&self, z: &Scalar, ctx: &Ctx) -> NCPoly {
        let zinv = z.conj(ctx); // unit: conj = inverse
        let mut out = NCPoly::zero();
        for (m, c) in &self.terms {
            let f = unit_power(z, &zinv, m.left_weight(), ctx);
            out.add_term(*m, c.mul(&f, ctx), ctx);
        }
        out
    }

    /// The right torus action `beta^R_z`.
    pub fn apply_beta_right(&self, z: &Scalar, ctx: &Ctx) -> NCPoly {
        let zinv = z.conj(ctx);
        let mut out = NCPoly::zero();
        for (m, c) in &self.terms {
            let f = unit_power(z, &zinv, m.right_weight(), ctx);
            out.add_term(*m, c.mul(&f, ctx), ctx);
        }
        out
    }

    /// The torus character `pi_T`: `x -> z`, `y -> conj z`, `u, v -> 0`,
    /// as a Laurent polynomial in the central unit `z` (exponent -> value).
    pub fn apply_pi_t(&self, ctx: &Ctx) -> BTreeMap<i64, Scalar> {
        let mut out: BTreeMap<i64, Scalar> = BTreeMap::new();
        for (m, c) in &self.terms {
            if m.u != 0 || m.v != 0 {
                continue;
            }
            let e = m.x as i64 - m.y as i64;
            let entry = out.entry(e).or_insert_with(Scalar::zero);
            *entry = entry.add(c, ctx);
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    /// Modular automorphism at imaginary time `t = i k`: scales a monomial
    /// of torus bi-weight `(L, R)` by `q_0^(-k (L + R))`, the unique
    /// scaling satisfying the KMS identity `h(ab) = h(sigma_i(b) a)`.
    pub fn modular_scale(&self, k: i64, ctx: &Ctx) -> NCPoly {
        let mut out = NCPoly::zero();
        for (m, c) in &self.terms {
            let w = m.left_weight() + m.right_weight();
            let f = Scalar::q0_pow(HalfInt::from_int(-k * w), ctx);
            out.add_term(*m, c.mul(&f, ctx), ctx);
        }
        out
    }

    /// Canonical text form `(coeff) x^a u^b v^c y^d + ...` for golden
    /// files and report emission.
    pub fn to_canonical_text(&self, ctx: &Ctx) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                out.push_str(" + ");
            }
            first = false;
            write!(out, "({})", crate::qscalar::display_scalar(c, ctx)).unwrap();
            if m.degree() == 0 {
                out.push_str(" * 1");
            } else {
                for (letter, e) in [("x", m.x), ("u", m.u), ("v", m.v), ("y", m.y)] {
                    if e == 1 {
                        write!(out, " {}", letter).unwrap();
                    } else if e > 1 {
                        write!(out, " {}^{}", letter, e).unwrap();
                    }
                }
            }
        }
        out
    }
}

/// `z^w` for a unit scalar with conjugate-inverse `zinv`.
fn unit_power(z: &Scalar, zinv: &Scalar, w: i64, ctx: &Ctx) -> Scalar {
    let mut f = Scalar::one(ctx);
    let base = if w >= 0 { z } else { zinv };
    for _ in 0..w.unsigned_abs() {
        f = f.mul(base, ctx);
    }
    f
}

impl TensorPoly {
    pub fn zero() -> Self {
        TensorPoly { terms: BTreeMap::new() }
    }

    pub fn one(ctx: &Ctx) -> Self {
        let mut t = TensorPoly::zero();
        t.add_term((Monomial::ONE, Monomial::ONE), Scalar::one(ctx), ctx);
        t
    }

    pub fn from_pairs(pairs: &[(Monomial, Monomial, Scalar)], ctx: &Ctx) -> Self {
        let mut t = TensorPoly::zero();
        for (a, b, c) in pairs {
            t.add_term((*a, *b), c.clone(), ctx);
        }
        t
    }

    /// `p (x) r` for plain polynomials.
    pub fn tensor(p: &NCPoly, r: &NCPoly, ctx: &Ctx) -> Self {
        let mut t = TensorPoly::zero();
        for (m1, c1) in p.terms() {
            for (m2, c2) in r.terms() {
                t.add_term((*m1, *m2), c1.mul(c2, ctx), ctx);
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Monomial, Monomial), &Scalar)> {
        self.terms.iter()
    }

    fn add_term(&mut self, k: (Monomial, Monomial), c: Scalar, ctx: &Ctx) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(k) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().add(&c, ctx);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, o: &TensorPoly, ctx: &Ctx) -> TensorPoly {
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.add_term(*k, c.clone(), ctx);
        }
        out
    }

    pub fn sub(&self, o: &TensorPoly, ctx: &Ctx) -> TensorPoly {
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.add_term(*k, c.neg(), ctx);
        }
        out
    }

    pub fn scale(&self, c: &Scalar, ctx: &Ctx) -> TensorPoly {
        let mut out = TensorPoly::zero();
        for (k, v) in &self.terms {
            out.add_term(*k, v.mul(c, ctx), ctx);
        }
        out
    }

    pub fn mul(&self, o: &TensorPoly, ctx: &Ctx) -> TensorPoly {
        let mut out = TensorPoly::zero();
        for ((l1, r1), c1) in &self.terms {
            for ((l2, r2), c2) in &o.terms {
                let c = c1.mul(c2, ctx);
                let left = mono_mul(l1, l2, ctx);
                let right = mono_mul(r1, r2, ctx);
                for (lm, lc) in left.terms() {
                    for (rm, rc) in right.terms() {
                        out.add_term((*lm, *rm), lc.mul(rc, ctx).mul(&c, ctx), ctx);
                    }
                }
            }
        }
        out
    }

    /// Apply star to both legs (the star of the tensor algebra).
    pub fn star_both(&self, ctx: &Ctx) -> TensorPoly {
        let mut out = TensorPoly::zero();
        for ((l, r), c) in &self.terms {
            let ls = NCPoly::monomial(*l, Scalar::one(ctx), ctx).star(ctx);
            let rs = NCPoly::monomial(*r, Scalar::one(ctx), ctx).star(ctx);
            let t = TensorPoly::tensor(&ls, &rs, ctx).scale(&c.conj(ctx), ctx);
            out = out.add(&t, ctx);
        }
        out
    }

    /// Contract the left leg with a linear functional.
    pub fn contract_left(&self, f: impl Fn(&Monomial) -> Scalar, ctx: &Ctx) -> NCPoly {
        let mut out = NCPoly::zero();
        for ((l, r), c) in &self.terms {
            let w = f(l);
            if !w.is_zero() {
                out.add_term(*r, c.mul(&w, ctx), ctx);
            }
        }
        out
    }

    /// Contract the right leg with a linear functional.
    pub fn contract_right(&self, f: impl Fn(&Monomial) -> Scalar, ctx: &Ctx) -> NCPoly {
        let mut out = NCPoly::zero();
        for ((l, r), c) in &self.terms {
            let w = f(r);
            if !w.is_zero() {
                out.add_term(*l, c.mul(&w, ctx), ctx);
            }
        }
        out
    }

    /// Multiply the two legs together (the multiplication map).
    pub fn multiply_legs(&self, ctx: &Ctx) -> NCPoly {
        let mut out = NCPoly::zero();
        for ((l, r), c) in &self.terms {
            let prod = mono_mul(l, r, ctx);
            for (m, k) in prod.terms() {
                out.add_term(*m, k.mul(c, ctx), ctx);
            }
        }
        out
    }

    /// Apply a map to the left leg monomials.
    pub fn map_left(&self, f: impl Fn(&NCPoly) -> NCPoly, ctx: &Ctx) -> TensorPoly {
        let mut out = TensorPoly::zero();
        for ((l, r), c) in &self.terms {
            let lp = f(&NCPoly::monomial(*l, Scalar::one(ctx), ctx));
            for (lm, lc) in lp.terms() {
                out.add_term((*lm, *r), lc.mul(c, ctx), ctx);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qscalar::Sign;

    fn all_monomials(max_deg: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        for total in 0..=max_deg {
            for x in 0..=total {
                for u in 0..=(total - x) {
                    for v in 0..=(total - x - u) {
                        let y = total - x - u - v;
                        if x == 0 || y == 0 {
                            out.push(Monomial { x, u, v, y });
                        }
                    }
                }
            }
        }
        out
    }

    #[test]
    fn defining_relations() {
        for sign in [Sign::Positive, Sign::Negative] {
            let ctx = Ctx::formal(sign);
            let (x, u, v, y) = (
                NCPoly::gen_x(&ctx),
                NCPoly::gen_u(&ctx),
                NCPoly::gen_v(&ctx),
                NCPoly::gen_y(&ctx),
            );
            let q = Scalar::q_pow(1, &ctx);
            // ux = q xu, vx = q xv, yu = q uy, yv = q vy
            assert_eq!(u.mul(&x, &ctx), x.mul(&u, &ctx).scale(&q, &ctx));
            assert_eq!(v.mul(&x, &ctx), x.mul(&v, &ctx).scale(&q, &ctx));
            assert_eq!(y.mul(&u, &ctx), u.mul(&y, &ctx).scale(&q, &ctx));
            assert_eq!(y.mul(&v, &ctx), v.mul(&y, &ctx).scale(&q, &ctx));
            // uv = vu
            assert_eq!(u.mul(&v, &ctx), v.mul(&u, &ctx));
            // xy = 1 + q^{-1} uv and yx = 1 + q uv
            let uv = u.mul(&v, &ctx);
            let expect_xy = NCPoly::one(&ctx).add(&uv.scale(&Scalar::q_pow(-1, &ctx), &ctx), &ctx);
            assert_eq!(x.mul(&y, &ctx), expect_xy);
            let expect_yx = NCPoly::one(&ctx).add(&uv.scale(&q, &ctx), &ctx);
            assert_eq!(y.mul(&x, &ctx), expect_yx);
            // unit
            let p = x.mul(&u, &ctx).add(&y.pow(2, &ctx), &ctx);
            assert_eq!(NCPoly::one(&ctx).mul(&p, &ctx), p);
        }
    }

    #[test]
    fn associativity_on_random_triples() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let ctx = Ctx::formal(Sign::Positive);
        let monos = all_monomials(4);
        let mut rng = StdRng::seed_from_u64(7);
        for trial in 0..200 {
            let pick = |rng: &mut StdRng| {
                let mut p = NCPoly::zero();
                for _ in 0..2 {
                    let m = monos[rng.gen_range(0..monos.len())];
                    let c = Scalar::q_pow(rng.gen_range(-2..3), &ctx)
                        .scale_int(rng.gen_range(-2..3), &ctx);
                    p = p.add(&NCPoly::monomial(m, c, &ctx), &ctx);
                }
                p
            };
            let (a, b, c) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
            let lhs = a.mul(&b, &ctx).mul(&c, &ctx);
            let rhs = a.mul(&b.mul(&c, &ctx), &ctx);
            assert_eq!(lhs, rhs, "trial {trial}");
        }
    }

    #[test]
    fn star_examples_and_involution() {
        for sign in [Sign::Positive, Sign::Negative] {
            let ctx = Ctx::formal(sign);
            let (x, u, v, y) = (
                NCPoly::gen_x(&ctx),
                NCPoly::gen_u(&ctx),
                NCPoly::gen_v(&ctx),
                NCPoly::gen_y(&ctx),
            );
            assert_eq!(x.star(&ctx), y);
            assert_eq!(u.star(&ctx), v.scale(&Scalar::q_pow(-1, &ctx).neg(), &ctx));
            // star(uv) = uv
            let uv = u.mul(&v, &ctx);
            assert_eq!(uv.star(&ctx), uv);
            for m in all_monomials(6) {
                let p = NCPoly::monomial(m, Scalar::one(&ctx), &ctx);
                assert_eq!(p.star(&ctx).star(&ctx), p, "monomial {m:?}");
            }
            // anti-homomorphism on a sample
            let a = x.mul(&u, &ctx).add(&y, &ctx);
            let b = v.mul(&y, &ctx);
            assert_eq!(a.mul(&b, &ctx).star(&ctx), b.star(&ctx).mul(&a.star(&ctx), &ctx));
        }
    }

    #[test]
    fn coproduct_counit_antipode_examples() {
        let ctx = Ctx::formal(Sign::Positive);
        let (x, u, v, y) =
            (NCPoly::gen_x(&ctx), NCPoly::gen_u(&ctx), NCPoly::gen_v(&ctx), NCPoly::gen_y(&ctx));
        // delta(x) = x(x)x + u(x)v
        let expect = TensorPoly::tensor(&x, &x, &ctx).add(&TensorPoly::tensor(&u, &v, &ctx), &ctx);
        assert_eq!(x.coproduct(&ctx), expect);
        // eps(uv) = 0
        assert!(u.mul(&v, &ctx).counit(&ctx).is_zero());
        // kappa(xy) = xy after normal ordering
        let xy = x.mul(&y, &ctx);
        assert_eq!(xy.antipode(&ctx), xy);
        // kappa(u) = -q u, kappa(v) = -q^{-1} v, kappa swaps x and y
        assert_eq!(u.antipode(&ctx), u.scale(&Scalar::q_pow(1, &ctx).neg(), &ctx));
        assert_eq!(v.antipode(&ctx), v.scale(&Scalar::q_pow(-1, &ctx).neg(), &ctx));
        assert_eq!(x.antipode(&ctx), y);
    }

    #[test]
    fn hopf_axioms_on_basis() {
        for sign in [Sign::Positive, Sign::Negative] {
            let ctx = Ctx::formal(sign);
            for m in all_monomials(4) {
                let p = NCPoly::monomial(m, Scalar::one(&ctx), &ctx);
                let cop = p.coproduct(&ctx);
                // (eps (x) id) o delta = id
                let left = cop.contract_left(
                    |mono| NCPoly::monomial(*mono, Scalar::one(&ctx), &ctx).counit(&ctx),
                    &ctx,
                );
                assert_eq!(left, p, "counit axiom at {m:?}");
                // mult (kappa (x) id) delta(p) = eps(p) 1
                let anti = cop.map_left(|q| q.antipode(&ctx), &ctx).multiply_legs(&ctx);
                let expect = NCPoly::one(&ctx).scale(&p.counit(&ctx), &ctx);
                assert_eq!(anti, expect, "antipode axiom at {m:?}");
                // delta is a *-homomorphism
                assert_eq!(
                    p.star(&ctx).coproduct(&ctx),
                    cop.star_both(&ctx),
                    "star compatibility at {m:?}"
                );
            }
        }
    }

    #[test]
    fn haar_examples() {
        let ctx = Ctx::formal(Sign::Positive);
        assert_eq!(NCPoly::one(&ctx).haar(&ctx), Scalar::one(&ctx));
        // h(zeta) = (1-q^2)/(1-q^4) = 1/(1+q0^2)
        let denom = Scalar::one(&ctx).add(&Scalar::q0_pow(HalfInt::from_int(2), &ctx), &ctx);
        let expect = Scalar::one(&ctx).div(&denom, &ctx).unwrap();
        assert_eq!(NCPoly::zeta(&ctx).haar(&ctx), expect);
        // h(uv) = -q/(1+q^2)
        let uv = NCPoly::gen_u(&ctx).mul(&NCPoly::gen_v(&ctx), &ctx);
        let expect_uv = Scalar::q_pow(1, &ctx).neg().div(&denom, &ctx).unwrap();
        assert_eq!(uv.haar(&ctx), expect_uv);
        // h(x ...) = 0
        assert!(NCPoly::gen_x(&ctx).mul(&uv, &ctx).haar(&ctx).is_zero());
        // q = -1 case is pole-free: h(zeta^2) = 1/3
        let k = Ctx::minus_one();
        let z2 = NCPoly::zeta(&k).pow(2, &k);
        assert_eq!(z2.haar(&k).as_rational(), Some(num::BigRational::new(1.into(), 3.into())));
    }

    #[test]
    fn haar_bi_invariance() {
        let ctx = Ctx::formal(Sign::Positive);
        for m in all_monomials(4) {
            let p = NCPoly::monomial(m, Scalar::one(&ctx), &ctx);
            let cop = p.coproduct(&ctx);
            let h = p.haar(&ctx);
            let left = cop.contract_left(
                |mono| NCPoly::monomial(*mono, Scalar::one(&ctx), &ctx).haar(&ctx),
                &ctx,
            );
            let right = cop.contract_right(
                |mono| NCPoly::monomial(*mono, Scalar::one(&ctx), &ctx).haar(&ctx),
                &ctx,
            );
            let expect = NCPoly::one(&ctx).scale(&h, &ctx);
            assert_eq!(left, expect, "left invariance at {m:?}");
            assert_eq!(right, expect, "right invariance at {m:?}");
        }
    }

    #[test]
    fn kms_property() {
        for sign in [Sign::Positive, Sign::Negative] {
            let ctx = Ctx::formal(sign);
            let monos = all_monomials(3);
            for a in &monos {
                for b in &monos {
                    let pa = NCPoly::monomial(*a, Scalar::one(&ctx), &ctx);
                    let pb = NCPoly::monomial(*b, Scalar::one(&ctx), &ctx);
                    let lhs = pa.mul(&pb, &ctx).haar(&ctx);
                    let rhs = pb.modular_scale(1, &ctx).mul(&pa, &ctx).haar(&ctx);
                    assert_eq!(lhs, rhs, "KMS at {a:?}, {b:?}");
                }
            }
        }
    }

    #[test]
    fn torus_actions() {
        let mut ctx = Ctx::formal(Sign::Positive);
        let zsym = ctx.unit_symbol("z");
        let z = Scalar::sym(zsym, &ctx);
        let x = NCPoly::gen_x(&ctx);
        let u = NCPoly::gen_u(&ctx);
        // weights
        assert_eq!(Monomial::new(1, 0, 0, 0).left_weight(), 1);
        assert_eq!(Monomial::new(1, 0, 0, 0).right_weight(), 1);
        assert_eq!(Monomial::new(0, 1, 0, 0).left_weight(), 1);
        assert_eq!(Monomial::new(0, 1, 0, 0).right_weight(), -1);
        // beta^L(x) = z x
        assert_eq!(x.apply_beta_left(&z, &ctx), x.scale(&z, &ctx));
        // beta^R(u) = conj(z) u
        assert_eq!(u.apply_beta_right(&z, &ctx), u.scale(&z.conj(&ctx), &ctx));
        // pi_T kills u, maps x^2 to z^2
        assert!(u.apply_pi_t(&ctx).is_empty());
        let lp = x.pow(2, &ctx).apply_pi_t(&ctx);
        assert_eq!(lp.len(), 1);
        assert_eq!(lp.get(&2), Some(&Scalar::one(&ctx)));
        // pi_T(xy) = 1 (the uv term dies)
        let xy = x.mul(&NCPoly::gen_y(&ctx), &ctx);
        assert_eq!(xy.apply_pi_t(&ctx).get(&0), Some(&Scalar::one(&ctx)));
        // modular scale fixes weight-zero elements
        assert_eq!(NCPoly::one(&ctx).modular_scale(5, &ctx), NCPoly::one(&ctx));
    }

    #[test]
    fn rewriting_is_exact_in_rational_mode() {
        let ctx = Ctx::exact(Sign::Negative, 1, 2);
        let x = NCPoly::gen_x(&ctx);
        let y = NCPoly::gen_y(&ctx);
        let p = x.pow(3, &ctx).mul(&y.pow(3, &ctx), &ctx);
        let q = y.pow(3, &ctx).mul(&x.pow(3, &ctx), &ctx);
        // the commutator lies in the span of uv-diagonal monomials
        let diff = p.sub(&q, &ctx);
        for (m, _) in diff.terms() {
            assert!(m.u == m.v && m.u > 0);
        }
    }

    #[test]
    fn canonical_text_is_stable() {
        let ctx = Ctx::formal(Sign::Positive);
        let p = NCPoly::gen_x(&ctx).mul(&NCPoly::gen_y(&ctx), &ctx);
        assert_eq!(p.to_canonical_text(&ctx), "(1) * 1 + ((1)/(1*s^4)) u v");
        assert_eq!(p.sub(&p, &ctx).to_canonical_text(&ctx), "0");
    }
}
