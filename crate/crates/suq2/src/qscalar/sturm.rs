//! Sturm sequences over the rationals.
//!
//! Used to certify that the rational-function coefficients appearing in
//! elimination chains keep a fixed sign on the whole parameter interval
//! `q_0 in (0,1)`, not merely at sampled points.

use super::ratfunc::{Poly, RatFunc};
use super::{Ctx, Scalar, Sign};
use num::rational::BigRational;
use num::{One, Signed, Zero};

/// Real polynomial with rational coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq)]
pub struct RPoly(pub Vec<BigRational>);

impl RPoly {
    fn trim(&mut self) {
        while matches!(self.0.last(), Some(c) if c.is_zero()) {
            self.0.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.0.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> RPoly {
        if self.0.len() <= 1 {
            return RPoly(vec![]);
        }
        let mut v = Vec::with_capacity(self.0.len() - 1);
        for (k, c) in self.0.iter().enumerate().skip(1) {
            v.push(c * BigRational::from_integer(k.into()));
        }
        let mut p = RPoly(v);
        p.trim();
        p
    }

    /// Remainder of division by `d`.
    fn rem(&self, d: &RPoly) -> RPoly {
        assert!(!d.is_zero());
        let mut rem = self.clone();
        let dl = d.0.last().unwrap().clone();
        while !rem.is_zero() && rem.0.len() >= d.0.len() {
            let shift = rem.0.len() - d.0.len();
            let c = rem.0.last().unwrap() / &dl;
            for (k, dc) in d.0.iter().enumerate() {
                let idx = k + shift;
                let sub = dc * &c;
                rem.0[idx] = &rem.0[idx] - sub;
            }
            rem.trim();
        }
        rem
    }

    /// Convert from a `Poly` over `Q(i)`; fails if any coefficient has an
    /// imaginary part.
    pub fn from_gauss(p: &Poly) -> Option<RPoly> {
        let mut v = Vec::with_capacity(p.0.len());
        for c in &p.0 {
            if !c.im.is_zero() {
                return None;
            }
            v.push(c.re.clone());
        }
        let mut r = RPoly(v);
        r.trim();
        Some(r)
    }
}

fn sign_of(r: &BigRational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

/// Number of sign changes in the Sturm sequence evaluated at `x`.
fn sign_changes(seq: &[RPoly], x: &BigRational) -> usize {
    let mut changes = 0;
    let mut last = 0;
    for p in seq {
        let s = sign_of(&p.eval(x));
        if s != 0 {
            if last != 0 && s != last {
                changes += 1;
            }
            last = s;
        }
    }
    changes
}

/// Sturm sequence of `p`.
fn sturm_sequence(p: &RPoly) -> Vec<RPoly> {
    let mut seq = vec![p.clone(), p.derivative()];
    loop {
        let n = seq.len();
        if seq[n - 1].is_zero() {
            seq.pop();
            return seq;
        }
        let rem = seq[n - 2].rem(&seq[n - 1]);
        if rem.is_zero() {
            return seq;
        }
        seq.push(RPoly(rem.0.iter().map(|c| -c).collect()));
    }
}

/// Number of distinct real roots of `p` in the open interval `(a, b)`
/// (neither endpoint may be a root).
pub fn count_roots(p: &RPoly, a: &BigRational, b: &BigRational) -> usize {
    assert!(!p.eval(a).is_zero() && !p.eval(b).is_zero(), "endpoint root");
    let seq = sturm_sequence(p);
    sign_changes(&seq, a) - sign_changes(&seq, b)
}

/// Certify that a real polynomial is strictly positive on `(0,1)`:
/// roots at the endpoints are divided out first (they do not affect
/// interior signs), then zero interior roots plus a positive interior
/// sample give the certificate.
pub fn poly_positive_on_01(p: &RPoly) -> bool {
    if p.is_zero() {
        return false;
    }
    let zero = BigRational::zero();
    let one = BigRational::one();
    let half = BigRational::new(1.into(), 2.into());
    let mut q = p.clone();
    // strip roots at 0 (factors of x, positive on the interior) and at 1
    // (factors of x-1, negative on the interior: each one flips the sign)
    while !q.is_zero() && q.0.first().map(|c| c.is_zero()).unwrap_or(false) {
        q.0.remove(0);
    }
    let mut flips = 0usize;
    while !q.is_zero() && q.eval(&one).is_zero() {
        let (quo, rem) = synthetic_div(&q, &one);
        assert!(rem.is_zero());
        q = quo;
        flips += 1;
    }
    let at_half = q.eval(&half);
    let sign_ok = if flips % 2 == 0 { at_half.is_positive() } else { at_half.is_negative() };
    if !sign_ok {
        return false;
    }
    count_roots(&q, &zero, &one) == 0
}

/// Divide by `(x - r)`; returns (quotient, remainder).
fn synthetic_div(p: &RPoly, r: &BigRational) -> (RPoly, BigRational) {
    let mut quo = vec![BigRational::zero(); p.0.len().saturating_sub(1)];
    let mut carry = BigRational::zero();
    for (k, c) in p.0.iter().enumerate().rev() {
        let v = c + &carry * r;
        if k == 0 {
            return (RPoly(quo), v);
        }
        quo[k - 1] = v.clone();
        carry = v;
    }
    (RPoly(quo), carry)
}

/// Certify that a rational function of `s` is strictly positive for all
/// `s in (0,1)` — equivalently for all `q_0 = s^2 in (0,1)`.
pub fn ratfunc_positive_on_01(r: &RatFunc) -> bool {
    if r.is_zero() {
        return false;
    }
    let num = match RPoly::from_gauss(&r.num) {
        Some(p) => p,
        None => return false,
    };
    let den = match RPoly::from_gauss(&r.den) {
        Some(p) => p,
        None => return false,
    };
    let mut prod = vec![BigRational::zero(); num.0.len() + den.0.len() - 1];
    for (i, a) in num.0.iter().enumerate() {
        for (j, b) in den.0.iter().enumerate() {
            prod[i + j] = &prod[i + j] + a * b;
        }
    }
    let mut p = RPoly(prod);
    p.trim();
    poly_positive_on_01(&p)
}

/// Certify strict positivity of a scalar for `q_0 in (0,1)` (strict
/// subinterval as declared by the context when `q_0` is fixed): every term
/// must have a positive coefficient, positively-declared symbols, and
/// radicands are automatically positive. This is a sufficient certificate,
/// not a decision procedure.
pub fn scalar_positive_on_01(x: &Scalar, ctx: &Ctx) -> bool {
    if x.is_zero() {
        return false;
    }
    for ((m, _), c) in x.terms() {
        for (&id, _) in &m.0 {
            if !ctx.symbols[id.0 as usize].positive {
                return false;
            }
        }
        match &ctx.mode {
            super::ratfunc::Mode::Formal => {
                if !ratfunc_positive_on_01(c) {
                    return false;
                }
            }
            super::ratfunc::Mode::Algebraic { deg, value } => {
                // evaluate at a rational approximation of the real root;
                // reduced coefficients have degree < 4 and moderate size,
                // so 128-bit accuracy determines a nonzero sign
                let approx = match deg {
                    1 => value.clone(),
                    2 => approx_sqrt(value),
                    _ => approx_sqrt(&approx_sqrt_sq(value)),
                };
                let v = c.eval_rat(&approx);
                if !v.im.is_zero() || !v.re.is_positive() {
                    return false;
                }
            }
        }
    }
    true
}

/// Rational approximation of sqrt(r) good enough for sign determination
/// of low-degree values with moderate coefficients.
fn approx_sqrt(r: &BigRational) -> BigRational {
    let prec = 128u32;
    let scaled = r * BigRational::from_integer(num::BigInt::one() << (2 * prec as usize));
    let isqrt = num::integer::Roots::sqrt(&scaled.to_integer());
    BigRational::new(isqrt, num::BigInt::one() << (prec as usize))
}

/// First step of the fourth root: a high-accuracy sqrt kept rational.
fn approx_sqrt_sq(r: &BigRational) -> BigRational {
    approx_sqrt(r)
}

/// Sign of a symbol-free, radical-free scalar on `(0,1)`:
/// `Some(1)`, `Some(-1)` with a Sturm certificate, `None` otherwise.
pub fn ratfunc_scalar_sign(x: &Scalar, ctx: &Ctx) -> Option<i32> {
    let rf = x.as_ratfunc()?;
    if rf.is_zero() {
        return Some(0);
    }
    if scalar_positive_on_01(x, ctx) {
        return Some(1);
    }
    if scalar_positive_on_01(&x.neg(), ctx) {
        return Some(-1);
    }
    None
}

/// Positivity of q-integers is structural; this helper certifies
/// `q^k (n1)_q ... - q^j (m1)_q ...` style differences via Sturm.
pub fn nonvanishing_on_01(x: &Scalar, ctx: &Ctx) -> bool {
    matches!(ratfunc_scalar_sign(x, ctx), Some(1) | Some(-1))
}

/// Convenience: the sign of `q` itself.
pub fn q_sign(ctx: &Ctx) -> i32 {
    match ctx.sign() {
        Sign::Positive => 1,
        Sign::Negative => -1,
    }
}

/// Sign of a single-term scalar whose symbols are all declared positive:
/// the radicand is positive, so the sign is that of the coefficient.
/// Returns `None` for multi-term scalars or undeclared symbols.
pub fn sign_of_single_term(x: &Scalar, ctx: &Ctx) -> Option<i32> {
    if x.is_zero() {
        return Some(0);
    }
    if x.num_terms() != 1 {
        return None;
    }
    let ((m, _), c) = x.terms().next().unwrap();
    for (&id, _) in &m.0 {
        if !ctx.symbols[id.0 as usize].positive {
            return None;
        }
    }
    match &ctx.mode {
        super::ratfunc::Mode::Formal => {
            if ratfunc_positive_on_01(c) {
                Some(1)
            } else if ratfunc_positive_on_01(&c.neg()) {
                Some(-1)
            } else {
                None
            }
        }
        _ => {
            // fixed q0: fall back to the termwise certificate
            if scalar_positive_on_01(x, ctx) {
                Some(1)
            } else if scalar_positive_on_01(&x.neg(), ctx) {
                Some(-1)
            } else {
                None
            }
        }
    }
}
