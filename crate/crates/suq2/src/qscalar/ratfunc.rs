//! Rational-function arithmetic over the Gaussian rationals.
//!
//! A [`RatFunc`] is a reduced fraction of polynomials in a single variable
//! `s` over `Q(i)`. Depending on the [`Mode`] the variable is transcendental
//! (formal `q_0 = s^2`), satisfies `s^2 = q_0` for a fixed rational
//! `q_0` in `(0,1)`, or collapses to `s = 1` (the `q_0 = 1` case).

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use std::fmt;

/// A Gaussian rational `re + im*i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GaussRat {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussRat {
    pub fn zero() -> Self {
        GaussRat { re: BigRational::zero(), im: BigRational::zero() }
    }

    pub fn one() -> Self {
        GaussRat { re: BigRational::one(), im: BigRational::zero() }
    }

    pub fn i() -> Self {
        GaussRat { re: BigRational::zero(), im: BigRational::one() }
    }

    pub fn from_rat(r: BigRational) -> Self {
        GaussRat { re: r, im: BigRational::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rat(BigRational::from_integer(BigInt::from(n)))
    }

    /// `i^k` for any integer `k`.
    pub fn i_pow(k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => Self::one(),
            1 => Self::i(),
            2 => -Self::one(),
            _ => -Self::i(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussRat { re: self.re.clone(), im: -self.im.clone() }
    }

    /// Squared modulus `re^2 + im^2`.
    pub fn norm_sq(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Self {
        let n = self.norm_sq();
        assert!(!n.is_zero(), "division by zero GaussRat");
        GaussRat { re: &self.re / &n, im: -(&self.im / &n) }
    }
}

impl std::ops::Add for GaussRat {
    type Output = GaussRat;
    fn add(self, o: GaussRat) -> GaussRat {
        GaussRat { re: self.re + o.re, im: self.im + o.im }
    }
}

impl std::ops::Sub for GaussRat {
    type Output = GaussRat;
    fn sub(self, o: GaussRat) -> GaussRat {
        GaussRat { re: self.re - o.re, im: self.im - o.im }
    }
}

impl std::ops::Neg for GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat { re: -self.re, im: -self.im }
    }
}

impl std::ops::Mul for GaussRat {
    type Output = GaussRat;
    fn mul(self, o: GaussRat) -> GaussRat {
        GaussRat {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
}

impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}*i", self.im)
        } else {
            write!(f, "({}+{}*i)", self.re, self.im)
        }
    }
}

/// Dense polynomial in `s` over [`GaussRat`], lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly(pub Vec<GaussRat>);

impl Poly {
    pub fn zero() -> Self {
        Poly(vec![])
    }

    pub fn one() -> Self {
        Poly(vec![GaussRat::one()])
    }

    pub fn constant(c: GaussRat) -> Self {
        let mut p = Poly(vec![c]);
        p.trim();
        p
    }

    /// `c * s^k`, `k >= 0`.
    pub fn monomial(c: GaussRat, k: usize) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![GaussRat::zero(); k + 1];
        v[k] = c;
        Poly(v)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn trim(&mut self) {
        while matches!(self.0.last(), Some(c) if c.is_zero()) {
            self.0.pop();
        }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.0.len().max(o.0.len());
        let mut v = Vec::with_capacity(n);
        for k in 0..n {
            let a = self.0.get(k).cloned().unwrap_or_else(GaussRat::zero);
            let b = o.0.get(k).cloned().unwrap_or_else(GaussRat::zero);
            v.push(a + b);
        }
        let mut p = Poly(v);
        p.trim();
        p
    }

    pub fn neg(&self) -> Poly {
        Poly(self.0.iter().map(|c| -c.clone()).collect())
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![GaussRat::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let t = a.clone() * b.clone();
                v[i + j] = std::mem::replace(&mut v[i + j], GaussRat::zero()) + t;
            }
        }
        let mut p = Poly(v);
        p.trim();
        p
    }

    pub fn scale(&self, c: &GaussRat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly(self.0.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn conj(&self) -> Poly {
        Poly(self.0.iter().map(|c| c.conj()).collect())
    }

    /// Division with remainder over the field `Q(i)`.
    pub fn divmod(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let mut rem = self.clone();
        let mut quo = vec![GaussRat::zero(); self.0.len().saturating_sub(d.0.len()) + 1];
        let dl = d.0.last().unwrap().clone();
        let dli = dl.inv();
        while !rem.is_zero() && rem.0.len() >= d.0.len() {
            let shift = rem.0.len() - d.0.len();
            let c = rem.0.last().unwrap().clone() * dli.clone();
            quo[shift] = c.clone();
            let sub = d.mul(&Poly::monomial(c, shift));
            rem = rem.sub(&sub);
        }
        let mut q = Poly(quo);
        q.trim();
        (q, rem)
    }

    /// Index of the lowest nonzero coefficient.
    pub fn low_degree(&self) -> usize {
        self.0.iter().position(|c| !c.is_zero()).unwrap_or(0)
    }

    /// Is this `c * s^k` for a single nonzero coefficient?
    pub fn is_monomial(&self) -> bool {
        self.0.iter().filter(|c| !c.is_zero()).count() == 1
    }

    /// Divide by `s^k` (requires divisibility).
    fn shift_down(&self, k: usize) -> Poly {
        debug_assert!(self.low_degree() >= k);
        Poly(self.0[k..].to_vec())
    }

    /// Rescale so coefficients are integers with unit content; keeps the
    /// polynomial proportional to the original.
    fn primitive_part(&self) -> Poly {
        use num::Integer as _;
        if self.is_zero() {
            return Poly::zero();
        }
        let mut den_lcm = BigInt::one();
        for c in &self.0 {
            den_lcm = den_lcm.lcm(c.re.denom());
            den_lcm = den_lcm.lcm(c.im.denom());
        }
        let mut content = BigInt::zero();
        let scaled: Vec<GaussRat> = self
            .0
            .iter()
            .map(|c| {
                let re = &c.re * BigRational::from_integer(den_lcm.clone());
                let im = &c.im * BigRational::from_integer(den_lcm.clone());
                content = content.gcd(&re.to_integer());
                content = content.gcd(&im.to_integer());
                GaussRat { re, im }
            })
            .collect();
        if content.is_zero() {
            content = BigInt::one();
        }
        let inv = GaussRat::from_rat(BigRational::new(BigInt::one(), content));
        Poly(scaled).scale(&inv)
    }

    /// Polynomial gcd over the field `Q(i)`, monic.
    ///
    /// Monomials are handled directly; the general case uses a primitive
    /// pseudo-remainder sequence to avoid rational coefficient blow-up.
    pub fn gcd(&self, o: &Poly) -> Poly {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.is_monomial() || o.is_monomial() {
            let k = self.low_degree().min(o.low_degree());
            return Poly::monomial(GaussRat::one(), k);
        }
        let mut a = self.primitive_part();
        let mut b = o.primitive_part();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            if b.degree() == 0 {
                return Poly::one();
            }
            // pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b
            let lc = b.0.last().unwrap().clone();
            let e = a.degree() - b.degree() + 1;
            let mut scaled = a.clone();
            for _ in 0..e {
                scaled = scaled.scale(&lc);
            }
            let (_, r) = scaled.divmod(&b);
            a = b;
            b = r.primitive_part();
        }
        let inv = a.0.last().unwrap().inv();
        a.scale(&inv)
    }

    /// Substitute `s^deg -> value`, folding all exponents below `deg`.
    pub fn reduce_mod(&self, deg: u32, value: &BigRational) -> Poly {
        let deg = deg as usize;
        let mut acc = vec![GaussRat::zero(); deg];
        for (k, c) in self.0.iter().enumerate() {
            let mut f = BigRational::one();
            for _ in 0..(k / deg) {
                f = &f * value;
            }
            let scaled = GaussRat { re: &c.re * &f, im: &c.im * &f };
            acc[k % deg] = std::mem::replace(&mut acc[k % deg], GaussRat::zero()) + scaled;
        }
        let mut p = Poly(acc);
        p.trim();
        p
    }

    /// Evaluate at a rational point (returns a GaussRat).
    pub fn eval_rat(&self, x: &BigRational) -> GaussRat {
        let mut acc = GaussRat::zero();
        for c in self.0.iter().rev() {
            acc = GaussRat { re: &acc.re * x, im: &acc.im * x } + c.clone();
        }
        acc
    }

    /// Derivative with respect to `s`.
    pub fn derivative(&self) -> Poly {
        if self.0.len() <= 1 {
            return Poly::zero();
        }
        let mut v = Vec::with_capacity(self.0.len() - 1);
        for (k, c) in self.0.iter().enumerate().skip(1) {
            let k_rat = GaussRat::from_int(k as i64);
            v.push(c.clone() * k_rat);
        }
        let mut p = Poly(v);
        p.trim();
        p
    }
}

/// Coefficient reduction mode, derived from the quantum parameter.
///
/// The internal variable is `s = q_0^(1/4)` (quarter powers of `q_0` occur
/// in the half-integer-spin product formulas of the negative regime).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Mode {
    /// `s` transcendental; `q_0 = s^4` is a formal parameter.
    Formal,
    /// `s^deg = value` for a fixed rational, with `x^deg - value` the
    /// minimal polynomial of `s` over `Q` (`deg` is 1, 2 or 4).
    Algebraic { deg: u32, value: BigRational },
}

/// Reduced fraction `num/den` of polynomials in `s`.
///
/// Invariants: `den` is monic and coprime to `num`; in `Rational` mode the
/// denominator is 1 (fractions are rationalized) and degrees are below 2;
/// in `One` mode both are constants.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatFunc {
    pub num: Poly,
    pub den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly, mode: &Mode) -> Self {
        assert!(!den.is_zero(), "RatFunc with zero denominator");
        let (mut num, mut den) = match mode {
            Mode::Formal => (num, den),
            Mode::Algebraic { deg, value } => {
                let n = num.reduce_mod(*deg, value);
                let d = den.reduce_mod(*deg, value);
                if d.degree() == 0 {
                    (n, d)
                } else {
                    // rationalize with the inverse of d modulo x^deg - value
                    let dinv = poly_inverse_mod(&d, *deg, value);
                    let n2 = n.mul(&dinv).reduce_mod(*deg, value);
                    (n2, Poly::one())
                }
            }
        };
        if num.is_zero() {
            return RatFunc { num: Poly::zero(), den: Poly::one() };
        }
        if matches!(mode, Mode::Formal) {
            // strip common s-powers first; they are ubiquitous (Laurent use)
            let k = num.low_degree().min(den.low_degree());
            if k > 0 {
                num = num.shift_down(k);
                den = den.shift_down(k);
            }
            if !den.is_monomial() {
                let g = num.gcd(&den);
                if g.degree() > 0 {
                    let (n, rn) = num.divmod(&g);
                    let (d, rd) = den.divmod(&g);
                    debug_assert!(rn.is_zero() && rd.is_zero());
                    num = n;
                    den = d;
                }
            }
        }
        let lead = den.0.last().unwrap().inv();
        RatFunc { num: num.scale(&lead), den: den.scale(&lead) }
    }

    pub fn zero() -> Self {
        RatFunc { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        RatFunc { num: Poly::one(), den: Poly::one() }
    }

    pub fn constant(c: GaussRat) -> Self {
        RatFunc { num: Poly::constant(c), den: Poly::one() }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == Poly::one() && self.den == Poly::one()
    }

    /// `s^k` for any integer `k` (negative powers go to the denominator).
    pub fn s_pow(k: i64, mode: &Mode) -> Self {
        if k >= 0 {
            RatFunc::new(Poly::monomial(GaussRat::one(), k as usize), Poly::one(), mode)
        } else {
            RatFunc::new(Poly::one(), Poly::monomial(GaussRat::one(), (-k) as usize), mode)
        }
    }

    pub fn add(&self, o: &RatFunc, mode: &Mode) -> RatFunc {
        let num = self.num.mul(&o.den).add(&o.num.mul(&self.den));
        let den = self.den.mul(&o.den);
        RatFunc::new(num, den, mode)
    }

    pub fn sub(&self, o: &RatFunc, mode: &Mode) -> RatFunc {
        let num = self.num.mul(&o.den).sub(&o.num.mul(&self.den));
        let den = self.den.mul(&o.den);
        RatFunc::new(num, den, mode)
    }

    pub fn mul(&self, o: &RatFunc, mode: &Mode) -> RatFunc {
        RatFunc::new(self.num.mul(&o.num), self.den.mul(&o.den), mode)
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn inv(&self, mode: &Mode) -> RatFunc {
        assert!(!self.is_zero(), "division by zero RatFunc");
        RatFunc::new(self.den.clone(), self.num.clone(), mode)
    }

    pub fn div(&self, o: &RatFunc, mode: &Mode) -> RatFunc {
        self.mul(&o.inv(mode), mode)
    }

    pub fn conj(&self, mode: &Mode) -> RatFunc {
        RatFunc::new(self.num.conj(), self.den.conj(), mode)
    }

    /// Exact evaluation at rational `s`, for numeric fallbacks and tests.
    pub fn eval_rat(&self, s: &BigRational) -> GaussRat {
        let n = self.num.eval_rat(s);
        let d = self.den.eval_rat(s);
        n * d.inv()
    }

    /// Try to read the value as a plain rational constant.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.den != Poly::one() {
            return None;
        }
        match self.num.0.len() {
            0 => Some(BigRational::zero()),
            1 if self.num.0[0].im.is_zero() => Some(self.num.0[0].re.clone()),
            _ => None,
        }
    }

    /// Try to read the value as `c * s^k` with `c` Gaussian rational.
    pub fn as_monomial(&self) -> Option<(GaussRat, i64)> {
        let num_terms: Vec<usize> =
            self.num.0.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, _)| k).collect();
        let den_terms: Vec<usize> =
            self.den.0.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, _)| k).collect();
        if num_terms.len() == 1 && den_terms.len() == 1 {
            let nk = num_terms[0];
            let dk = den_terms[0];
            let c = self.num.0[nk].clone() * self.den.0[dk].inv();
            Some((c, nk as i64 - dk as i64))
        } else {
            None
        }
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |p: &Poly, f: &mut fmt::Formatter<'_>| -> fmt::Result {
            if p.is_zero() {
                return write!(f, "0");
            }
            let mut first = true;
            for (k, c) in p.0.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                if !first {
                    write!(f, " + ")?;
                }
                first = false;
                if k == 0 {
                    write!(f, "{}", c)?;
                } else if k == 1 {
                    write!(f, "{}*s", c)?;
                } else {
                    write!(f, "{}*s^{}", c, k)?;
                }
            }
            Ok(())
        };
        if self.den == Poly::one() {
            show(&self.num, f)
        } else {
            write!(f, "(")?;
            show(&self.num, f)?;
            write!(f, ")/(")?;
            show(&self.den, f)?;
            write!(f, ")")
        }
    }
}

/// Inverse of `d` modulo `x^deg - value` by the extended Euclidean
/// algorithm over `Q(i)`; the modulus is the minimal polynomial of the
/// variable, so any nonzero reduced `d` is invertible.
fn poly_inverse_mod(d: &Poly, deg: u32, value: &BigRational) -> Poly {
    let mut modulus = vec![GaussRat::zero(); deg as usize + 1];
    modulus[0] = -GaussRat::from_rat(value.clone());
    modulus[deg as usize] = GaussRat::one();
    let m = Poly(modulus);
    // extended Euclid: maintain r0 = m, r1 = d, with t0 = 0, t1 = 1
    let (mut r0, mut r1) = (m.clone(), d.clone());
    let (mut t0, mut t1) = (Poly::zero(), Poly::one());
    while !r1.is_zero() && r1.degree() > 0 {
        let (q, r) = r0.divmod(&r1);
        let t = t0.sub(&q.mul(&t1));
        r0 = r1;
        r1 = r;
        t0 = t1;
        t1 = t;
    }
    assert!(!r1.is_zero(), "non-invertible element modulo the minimal polynomial");
    let inv = r1.0[0].inv();
    t1.scale(&inv)
}

/// Positive-part check used by positivity certificates: all coefficients of
/// a real polynomial are nonnegative rationals.
pub fn poly_is_real(p: &Poly) -> bool {
    p.0.iter().all(|c| c.im.is_zero())
}

pub fn rational_is_positive(r: &BigRational) -> bool {
    r.is_positive()
}
