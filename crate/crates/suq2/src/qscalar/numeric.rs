//! High-precision numeric backend.
//!
//! Fixed-point big-float arithmetic: a value is `m / 2^prec` for a big
//! integer mantissa `m`. Operations round to the working precision; with a
//! 64-bit guard over the requested precision the accumulated error of the
//! short expressions evaluated here stays far below the certification
//! thresholds.

use super::ratfunc::{GaussRat, Poly};
use super::{Atom, Ctx, Scalar, SymId};
use num::bigint::{BigInt, Sign as BSign};
use num::integer::Integer;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use std::collections::BTreeMap;

/// Fixed-point real number `m / 2^prec`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigFloat {
    pub m: BigInt,
    pub prec: u32,
}

impl BigFloat {
    pub fn zero(prec: u32) -> Self {
        BigFloat { m: BigInt::zero(), prec }
    }

    pub fn from_rational(r: &BigRational, prec: u32) -> Self {
        let scaled = r * BigRational::from_integer(BigInt::one() << (prec as usize));
        // round to nearest
        let (num, den) = (scaled.numer().clone(), scaled.denom().clone());
        let twice = (&num << 1usize) + &den; // num/den + 1/2 = (2num+den)/(2den)
        let m = twice.div_floor(&(den << 1usize));
        BigFloat { m, prec }
    }

    pub fn from_int(n: i64, prec: u32) -> Self {
        BigFloat { m: BigInt::from(n) << (prec as usize), prec }
    }

    pub fn add(&self, o: &BigFloat) -> BigFloat {
        assert_eq!(self.prec, o.prec);
        BigFloat { m: &self.m + &o.m, prec: self.prec }
    }

    pub fn sub(&self, o: &BigFloat) -> BigFloat {
        assert_eq!(self.prec, o.prec);
        BigFloat { m: &self.m - &o.m, prec: self.prec }
    }

    pub fn neg(&self) -> BigFloat {
        BigFloat { m: -&self.m, prec: self.prec }
    }

    pub fn mul(&self, o: &BigFloat) -> BigFloat {
        assert_eq!(self.prec, o.prec);
        BigFloat { m: (&self.m * &o.m) >> (self.prec as usize), prec: self.prec }
    }

    pub fn div(&self, o: &BigFloat) -> BigFloat {
        assert_eq!(self.prec, o.prec);
        assert!(!o.m.is_zero(), "BigFloat division by zero");
        BigFloat { m: (&self.m << (self.prec as usize)) / &o.m, prec: self.prec }
    }

    /// Square root of a nonnegative value.
    pub fn sqrt(&self) -> BigFloat {
        assert!(!self.m.is_negative(), "BigFloat sqrt of negative value");
        BigFloat { m: (&self.m << (self.prec as usize)).sqrt(), prec: self.prec }
    }

    pub fn abs(&self) -> BigFloat {
        BigFloat { m: self.m.abs(), prec: self.prec }
    }

    pub fn is_negative(&self) -> bool {
        self.m.is_negative()
    }

    /// Compare `|self|` against `2^-bits`.
    pub fn abs_exceeds(&self, bits: i64) -> bool {
        let shift = self.prec as i64 - bits;
        if shift < 0 {
            return !self.m.is_zero();
        }
        self.m.abs() > (BigInt::one() << (shift as usize))
    }

    pub fn to_f64(&self) -> f64 {
        let (sign, digits) = self.m.to_u64_digits();
        let mut val = 0.0f64;
        for d in digits.iter().rev() {
            val = val * (u64::MAX as f64 + 1.0) + *d as f64;
        }
        let val = val / 2f64.powi(self.prec as i32);
        if sign == BSign::Minus {
            -val
        } else {
            val
        }
    }
}

/// Complex fixed-point number.
#[derive(Clone, Debug)]
pub struct CF {
    pub re: BigFloat,
    pub im: BigFloat,
}

impl CF {
    pub fn zero(prec: u32) -> Self {
        CF { re: BigFloat::zero(prec), im: BigFloat::zero(prec) }
    }

    pub fn from_real(re: BigFloat) -> Self {
        let prec = re.prec;
        CF { re, im: BigFloat::zero(prec) }
    }

    pub fn from_gauss(g: &GaussRat, prec: u32) -> Self {
        CF { re: BigFloat::from_rational(&g.re, prec), im: BigFloat::from_rational(&g.im, prec) }
    }

    pub fn add(&self, o: &CF) -> CF {
        CF { re: self.re.add(&o.re), im: self.im.add(&o.im) }
    }

    pub fn mul(&self, o: &CF) -> CF {
        CF {
            re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            im: self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        }
    }

    pub fn div(&self, o: &CF) -> CF {
        let n = o.re.mul(&o.re).add(&o.im.mul(&o.im));
        let re = self.re.mul(&o.re).add(&self.im.mul(&o.im)).div(&n);
        let im = self.im.mul(&o.re).sub(&self.re.mul(&o.im)).div(&n);
        CF { re, im }
    }

    /// Max-norm magnitude bound exceeds `2^-bits`?
    pub fn abs_exceeds(&self, bits: i64) -> bool {
        self.re.abs_exceeds(bits) || self.im.abs_exceeds(bits)
    }

    pub fn abs_sq_f64(&self) -> f64 {
        let r = self.re.to_f64();
        let i = self.im.to_f64();
        r * r + i * i
    }
}

/// Evaluation parameters: sample point plus precision and optional symbol
/// values.
pub struct NumEnv {
    pub q0: BigRational,
    pub prec: u32,
    pub sym_values: BTreeMap<SymId, CF>,
}

impl NumEnv {
    pub fn new(q0: BigRational, prec: u32) -> Self {
        NumEnv { q0, prec, sym_values: BTreeMap::new() }
    }
}

fn eval_poly(p: &Poly, s: &BigFloat) -> CF {
    let prec = s.prec;
    let mut acc = CF::zero(prec);
    for c in p.0.iter().rev() {
        let sc = CF::from_real(s.clone());
        acc = acc.mul(&sc).add(&CF::from_gauss(c, prec));
    }
    acc
}

/// Evaluate a scalar at `s = q0^(1/4)` with the given symbol values.
pub fn eval_scalar(x: &Scalar, ctx: &Ctx, env: &NumEnv) -> CF {
    let prec = env.prec;
    let s = BigFloat::from_rational(&env.q0, prec).sqrt().sqrt();
    let mut total = CF::zero(prec);
    for ((m, r), c) in x.terms() {
        let mut term = eval_poly(&c.num, &s).div(&eval_poly(&c.den, &s));
        for (&id, &e) in &m.0 {
            let v = env
                .sym_values
                .get(&id)
                .unwrap_or_else(|| panic!("no numeric value for symbol {}", id.0));
            let mut p = CF::from_real(BigFloat::from_int(1, prec));
            for _ in 0..e.unsigned_abs() {
                p = p.mul(v);
            }
            if e < 0 {
                let one = CF::from_real(BigFloat::from_int(1, prec));
                p = one.div(&p);
            }
            term = term.mul(&p);
        }
        if !r.is_trivial() {
            let mut rad =
                BigFloat::from_rational(&BigRational::from_integer(r.int_part.clone()), prec);
            for atom in &r.atoms {
                let v = match atom {
                    Atom::QInt(n) => {
                        let qv = super::qfuncs::q_int(*n, ctx);
                        // q-integers have no symbols; evaluate recursively
                        eval_scalar(&qv, ctx, env).re
                    }
                    Atom::Sym(id) => {
                        let value = ctx.atoms[id.0 as usize].value.clone();
                        eval_scalar(&value, ctx, env).re
                    }
                };
                rad = rad.mul(&v);
            }
            term = term.mul(&CF::from_real(rad.sqrt()));
        }
        total = total.add(&term);
    }
    total
}

/// Certified numeric nonzero test for symbol-free scalars: evaluate at
/// three sample values of `q0` at 256-bit precision. Returns `Some(true)`
/// if any sample is clearly nonzero (above `2^-100`), `Some(false)` if all
/// are below `2^-200` (consistent with zero, not a proof), `None` when the
/// samples fall in between.
pub fn definitely_nonzero(x: &Scalar, ctx: &Ctx) -> Option<bool> {
    let samples = [(7i64, 16i64), (1, 2), (9, 16)];
    let mut all_tiny = true;
    for (n, d) in samples {
        let q0 = match &ctx.param.q0 {
            Some(v) => v.clone(),
            None => BigRational::new(BigInt::from(n), BigInt::from(d)),
        };
        let env = NumEnv::new(q0, 256);
        let v = eval_scalar(x, ctx, &env);
        if v.abs_exceeds(100) {
            return Some(true);
        }
        if v.abs_exceeds(200) {
            all_tiny = false;
        }
        if ctx.param.q0.is_some() {
            break; // fixed q0: only one meaningful sample
        }
    }
    if all_tiny {
        Some(false)
    } else {
        None
    }
}
