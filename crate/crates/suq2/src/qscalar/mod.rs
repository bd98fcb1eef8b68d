//! Exact coefficient arithmetic.
//!
//! Every scalar appearing in the corepresentation theory of `SU_q(2)` lives
//! in the field `Q(i)(s)` with `s^2 = q_0 = |q|`, extended by square roots
//! of products of q-integers and of declared nonnegative symbolic atoms.
//! A [`Scalar`] is a finite sum of terms `c * M * sqrt(R)` where `c` is a
//! rational function of `s` over the Gaussian rationals, `M` is a monomial
//! in registered commutative symbols (unit phases, trigonometric pairs,
//! free real parameters) and `R` is a square-reduced radicand.

pub mod numeric;
pub mod qfuncs;
pub mod ratfunc;
pub mod sturm;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use ratfunc::{GaussRat, Mode, RatFunc};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// Errors from scalar-kernel operations.
#[derive(Debug, thiserror::Error)]
pub enum ScalarError {
    #[error("unsupported radicand: {0}")]
    UnsupportedRadicand(String),
    #[error("division by a non-invertible scalar")]
    NotInvertible,
    #[error("negative value under a square root")]
    NegativeRadicand,
}

/// A half-integer stored as twice its value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfInt(pub i64);

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt(0);

    /// From an integer value.
    pub fn from_int(n: i64) -> Self {
        HalfInt(2 * n)
    }

    /// From twice the value (so `new(1)` is 1/2).
    pub fn new(twice: i64) -> Self {
        HalfInt(twice)
    }

    pub fn twice(self) -> i64 {
        self.0
    }

    pub fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    /// The integer value; panics when not an integer.
    pub fn as_int(self) -> i64 {
        assert!(self.is_integer(), "{self} is not an integer");
        self.0 / 2
    }

    /// Symmetric index set `{-nu, -nu+1, ..., nu}`.
    pub fn index_set(self) -> Vec<HalfInt> {
        let mut v = Vec::new();
        let mut t = -self.0;
        while t <= self.0 {
            v.push(HalfInt(t));
            t += 2;
        }
        v
    }
}

impl std::ops::Add for HalfInt {
    type Output = HalfInt;
    fn add(self, o: HalfInt) -> HalfInt {
        HalfInt(self.0 + o.0)
    }
}

impl std::ops::Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, o: HalfInt) -> HalfInt {
        HalfInt(self.0 - o.0)
    }
}

impl std::ops::Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt(-self.0)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

/// Sign regime of the deformation parameter: `q = sign * q_0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn pow(self, k: i64) -> i64 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => {
                if k.rem_euclid(2) == 0 {
                    1
                } else {
                    -1
                }
            }
        }
    }
}

/// The deformation parameter `q = sign * q_0` with `q_0` in `(0, 1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QParam {
    pub sign: Sign,
    /// `None` means formal `q_0` (a transcendental parameter).
    pub q0: Option<BigRational>,
}

impl QParam {
    pub fn formal(sign: Sign) -> Self {
        QParam { sign, q0: None }
    }

    pub fn exact(sign: Sign, q0: BigRational) -> Self {
        assert!(q0.is_positive() && q0 <= BigRational::one(), "q0 must be in (0,1]");
        QParam { sign, q0: Some(q0) }
    }

    /// `q = -1`.
    pub fn minus_one() -> Self {
        QParam { sign: Sign::Negative, q0: Some(BigRational::one()) }
    }
}

/// How a symbol conjugates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConjRule {
    /// Real symbol: fixed by conjugation.
    Fixed,
    /// Unit phase: conjugation inverts the exponent.
    Invert,
}

/// A registered commutative symbol.
#[derive(Clone, Debug)]
pub struct SymbolDef {
    pub name: String,
    pub conj: ConjRule,
    /// Power-reduction rule: exponent `threshold` rewrites to the given
    /// radical-free scalar (e.g. `cos^2 -> 1 - sin^2`, or a cyclotomic
    /// minimal polynomial). Symbols with a rule must not get negative
    /// exponents.
    pub pow_rule: Option<(i64, Scalar)>,
    /// Declared strictly positive (for positivity certificates).
    pub positive: bool,
}

/// A registered nonnegative symbolic atom allowed under square roots.
#[derive(Clone, Debug)]
pub struct SymAtomDef {
    pub name: String,
    /// The atom's value as a radical-free scalar; extracted when the atom
    /// square-reduces out of a radicand.
    pub value: Scalar,
}

/// Shared context: the quantum parameter plus symbol/atom tables.
///
/// A context is built once (registering any symbols and atoms needed by the
/// computation) and then shared immutably; all scalar operations take `&Ctx`.
#[derive(Clone, Debug)]
pub struct Ctx {
    pub param: QParam,
    pub mode: Mode,
    pub symbols: Vec<SymbolDef>,
    pub atoms: Vec<SymAtomDef>,
}

/// Square root of a nonnegative rational if it is exact.
fn rational_sqrt_exact(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

/// Exact fourth root of a nonnegative rational if it exists.
fn rational_fourth_root_exact(r: &BigRational) -> Option<BigRational> {
    rational_sqrt_exact(r).and_then(|s| rational_sqrt_exact(&s))
}

impl Ctx {
    pub fn new(param: QParam) -> Self {
        // the internal variable is s = q0^(1/4); pick its minimal polynomial
        let mode = match &param.q0 {
            None => Mode::Formal,
            Some(q0) => {
                if let Some(rho) = rational_fourth_root_exact(q0) {
                    Mode::Algebraic { deg: 1, value: rho }
                } else if let Some(r) = rational_sqrt_exact(q0) {
                    Mode::Algebraic { deg: 2, value: r }
                } else {
                    Mode::Algebraic { deg: 4, value: q0.clone() }
                }
            }
        };
        Ctx { param, mode, symbols: Vec::new(), atoms: Vec::new() }
    }

    pub fn formal(sign: Sign) -> Self {
        Ctx::new(QParam::formal(sign))
    }

    pub fn exact(sign: Sign, num: i64, den: i64) -> Self {
        Ctx::new(QParam::exact(sign, BigRational::new(BigInt::from(num), BigInt::from(den))))
    }

    pub fn minus_one() -> Self {
        Ctx::new(QParam::minus_one())
    }

    pub fn sign(&self) -> Sign {
        self.param.sign
    }

    pub fn register_symbol(&mut self, def: SymbolDef) -> SymId {
        if let Some((t, rule)) = &def.pow_rule {
            assert!(*t >= 2, "power rule threshold must be >= 2");
            assert!(rule.radical_free(), "power rule replacement must be radical-free");
        }
        self.symbols.push(def);
        SymId(self.symbols.len() as u32 - 1)
    }

    pub fn register_atom(&mut self, name: &str, value: Scalar) -> AtomId {
        assert!(value.radical_free(), "atom values must be radical-free");
        self.atoms.push(SymAtomDef { name: name.to_string(), value });
        AtomId(self.atoms.len() as u32 - 1)
    }

    /// A free real symbol (conjugation-fixed, no power rule).
    pub fn real_symbol(&mut self, name: &str, positive: bool) -> SymId {
        self.register_symbol(SymbolDef {
            name: name.to_string(),
            conj: ConjRule::Fixed,
            pow_rule: None,
            positive,
        })
    }

    /// A unit phase symbol `z` with `z * conj(z) = 1`.
    pub fn unit_symbol(&mut self, name: &str) -> SymId {
        self.register_symbol(SymbolDef {
            name: name.to_string(),
            conj: ConjRule::Invert,
            pow_rule: None,
            positive: false,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SymId(pub u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AtomId(pub u32);

/// An atom allowed inside a radicand.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Atom {
    /// The q-integer `(n)_q`, `n >= 2`.
    QInt(i64),
    /// A registered symbolic nonnegative atom.
    Sym(AtomId),
}

/// Square-reduced radicand: a squarefree positive integer times a set of
/// distinct atoms.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Radicand {
    pub int_part: BigInt,
    pub atoms: BTreeSet<Atom>,
}

impl Radicand {
    pub fn trivial() -> Self {
        Radicand { int_part: BigInt::one(), atoms: BTreeSet::new() }
    }

    pub fn is_trivial(&self) -> bool {
        self.int_part.is_one() && self.atoms.is_empty()
    }
}

/// Monomial in registered symbols (exponents may be negative for symbols
/// without a power rule).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct SymMonomial(pub BTreeMap<SymId, i64>);

impl SymMonomial {
    pub fn one() -> Self {
        SymMonomial(BTreeMap::new())
    }

    pub fn single(id: SymId, exp: i64) -> Self {
        let mut m = BTreeMap::new();
        if exp != 0 {
            m.insert(id, exp);
        }
        SymMonomial(m)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }
}

type Key = (SymMonomial, Radicand);

/// Exact scalar: finite sum of `coeff * monomial * sqrt(radicand)` terms.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Scalar {
    terms: BTreeMap<Key, RatFunc>,
}

/// Outcome of the three-valued zero test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZeroStatus {
    Zero,
    NonZero,
    Undecided,
}

/// Squarefree decomposition `n = a^2 * b` of a positive integer by trial
/// division; returns `(a, b)`.
fn squarefree_decompose(n: &BigInt) -> Result<(BigInt, BigInt), ScalarError> {
    assert!(n.is_positive());
    let mut rest = n.clone();
    let mut outside = BigInt::one();
    let mut inside = BigInt::one();
    let mut p = BigInt::from(2u32);
    let limit = BigInt::from(2_000_000u64);
    while &p * &p <= rest {
        if p > limit {
            return Err(ScalarError::UnsupportedRadicand(format!(
                "cannot factor {n} by trial division"
            )));
        }
        let mut mult = 0u32;
        while (&rest % &p).is_zero() {
            rest /= &p;
            mult += 1;
        }
        if mult > 0 {
            for _ in 0..(mult / 2) {
                outside *= &p;
            }
            if mult % 2 == 1 {
                inside *= &p;
            }
        }
        p += 1u32;
    }
    // rest is now 1 or a prime
    if !rest.is_one() {
        inside *= &rest;
    }
    Ok((outside, inside))
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { terms: BTreeMap::new() }
    }

    pub fn one(ctx: &Ctx) -> Self {
        Scalar::from_ratfunc(RatFunc::one(), ctx)
    }

    pub fn i(ctx: &Ctx) -> Self {
        Scalar::from_ratfunc(RatFunc::constant(GaussRat::i()), ctx)
    }

    pub fn from_ratfunc(r: RatFunc, _ctx: &Ctx) -> Self {
        let mut terms = BTreeMap::new();
        if !r.is_zero() {
            terms.insert((SymMonomial::one(), Radicand::trivial()), r);
        }
        Scalar { terms }
    }

    pub fn from_int(n: i64, ctx: &Ctx) -> Self {
        Scalar::from_ratfunc(RatFunc::constant(GaussRat::from_int(n)), ctx)
    }

    pub fn from_rat(r: BigRational, ctx: &Ctx) -> Self {
        Scalar::from_ratfunc(RatFunc::constant(GaussRat::from_rat(r)), ctx)
    }

    /// The symbol as a scalar.
    pub fn sym(id: SymId, ctx: &Ctx) -> Self {
        Scalar::sym_pow(id, 1, ctx)
    }

    pub fn sym_pow(id: SymId, exp: i64, ctx: &Ctx) -> Self {
        let mut s = Scalar::zero();
        s.terms.insert((SymMonomial::single(id, exp), Radicand::trivial()), RatFunc::one());
        s.reduce_monomials(ctx)
    }

    /// `q_0^h = s^(4h)` for a half-integer `h` (`s = q_0^(1/4)`).
    pub fn q0_pow(h: HalfInt, ctx: &Ctx) -> Self {
        Scalar::from_ratfunc(RatFunc::s_pow(2 * h.twice(), &ctx.mode), ctx)
    }

    /// `q_0^(k/4)`: quarter powers occur in the half-integer-spin product
    /// formulas of the negative regime.
    pub fn q0_quarter_pow(k: i64, ctx: &Ctx) -> Self {
        Scalar::from_ratfunc(RatFunc::s_pow(k, &ctx.mode), ctx)
    }

    /// `q^k` for an integer `k`.
    pub fn q_pow(k: i64, ctx: &Ctx) -> Self {
        let sgn = ctx.sign().pow(k);
        let r = RatFunc::s_pow(4 * k, &ctx.mode);
        let r = if sgn < 0 { r.neg() } else { r };
        Scalar::from_ratfunc(r, ctx)
    }

    /// `q^h` for a half-integer `h`, with the convention
    /// `q^h = i^(2h) * q_0^h` in the negative regime.
    pub fn q_pow_half(h: HalfInt, ctx: &Ctx) -> Self {
        if h.is_integer() {
            return Scalar::q_pow(h.as_int(), ctx);
        }
        let base = RatFunc::s_pow(2 * h.twice(), &ctx.mode);
        let c = match ctx.sign() {
            Sign::Positive => GaussRat::one(),
            Sign::Negative => GaussRat::i_pow(h.twice()),
        };
        Scalar::from_ratfunc(base.mul(&RatFunc::constant(c), &ctx.mode), ctx)
    }

    /// `(-q)^h = i^(2h) * q_0^h` (positive regime) or `q_0^h` (negative).
    pub fn neg_q_pow(h: HalfInt, ctx: &Ctx) -> Self {
        let base = RatFunc::s_pow(2 * h.twice(), &ctx.mode);
        let c = match ctx.sign() {
            Sign::Positive => GaussRat::i_pow(h.twice()),
            Sign::Negative => GaussRat::one(),
        };
        Scalar::from_ratfunc(base.mul(&RatFunc::constant(c), &ctx.mode), ctx)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn radical_free(&self) -> bool {
        self.terms.keys().all(|(_, r)| r.is_trivial())
    }

    /// Pure rational function (no symbols, no radicals)?
    pub fn as_ratfunc(&self) -> Option<RatFunc> {
        if self.terms.is_empty() {
            return Some(RatFunc::zero());
        }
        if self.terms.len() == 1 {
            let ((m, r), c) = self.terms.iter().next().unwrap();
            if m.is_one() && r.is_trivial() {
                return Some(c.clone());
            }
        }
        None
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        self.as_ratfunc().and_then(|r| r.as_rational())
    }

    fn insert_term(&mut self, key: Key, c: RatFunc, ctx: &Ctx) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().add(&c, &ctx.mode);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, o: &Scalar, ctx: &Ctx) -> Scalar {
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.insert_term(k.clone(), c.clone(), ctx);
        }
        out
    }

    pub fn neg(&self) -> Scalar {
        Scalar { terms: self.terms.iter().map(|(k, c)| (k.clone(), c.neg())).collect() }
    }

    pub fn sub(&self, o: &Scalar, ctx: &Ctx) -> Scalar {
        self.add(&o.neg(), ctx)
    }

    /// Apply power-reduction rules to every monomial; may split terms.
    fn reduce_monomials(&self, ctx: &Ctx) -> Scalar {
        let mut out = Scalar::zero();
        'terms: for ((m, r), c) in &self.terms {
            for (&id, &exp) in &m.0 {
                let def = &ctx.symbols[id.0 as usize];
                if let Some((threshold, replacement)) = &def.pow_rule {
                    assert!(exp >= 0, "negative exponent on symbol {} with power rule", def.name);
                    if exp >= *threshold {
                        // split: m = m' * sym^threshold with m' = m / sym^threshold
                        let mut m2 = m.clone();
                        let e = m2.0.get_mut(&id).unwrap();
                        *e -= threshold;
                        if *e == 0 {
                            m2.0.remove(&id);
                        }
                        let mut partial = Scalar::zero();
                        partial.insert_term((m2, r.clone()), c.clone(), ctx);
                        let reduced = partial.mul(replacement, ctx);
                        out = out.add(&reduced, ctx);
                        continue 'terms;
                    }
                }
            }
            out.insert_term((m.clone(), r.clone()), c.clone(), ctx);
        }
        out
    }

    fn mul_monomials(a: &SymMonomial, b: &SymMonomial) -> SymMonomial {
        let mut m = a.0.clone();
        for (&id, &e) in &b.0 {
            let entry = m.entry(id).or_insert(0);
            *entry += e;
            if *entry == 0 {
                m.remove(&id);
            }
        }
        SymMonomial(m)
    }

    /// Multiply radicands: symmetric difference of atom sets; common atoms
    /// and integer square factors leave the radical as an extracted scalar.
    fn mul_radicands(a: &Radicand, b: &Radicand, ctx: &Ctx) -> (Scalar, Radicand) {
        let mut extracted = Scalar::one(ctx);
        let mut atoms = BTreeSet::new();
        for atom in a.atoms.union(&b.atoms) {
            if a.atoms.contains(atom) && b.atoms.contains(atom) {
                extracted = extracted.mul(&Scalar::atom_value(*atom, ctx), ctx);
            } else {
                atoms.insert(*atom);
            }
        }
        let prod = &a.int_part * &b.int_part;
        let (outside, inside) =
            squarefree_decompose(&prod).expect("radicand integers stay factorable");
        if !outside.is_one() {
            let f = RatFunc::constant(GaussRat::from_rat(BigRational::from_integer(outside)));
            extracted = extracted.mul(&Scalar::from_ratfunc(f, ctx), ctx);
        }
        (extracted, Radicand { int_part: inside, atoms })
    }

    /// The value of an atom as a scalar.
    pub fn atom_value(atom: Atom, ctx: &Ctx) -> Scalar {
        match atom {
            Atom::QInt(n) => qfuncs::q_int(n, ctx),
            Atom::Sym(id) => ctx.atoms[id.0 as usize].value.clone(),
        }
    }

    pub fn mul(&self, o: &Scalar, ctx: &Ctx) -> Scalar {
        let mut out = Scalar::zero();
        for ((m1, r1), c1) in &self.terms {
            for ((m2, r2), c2) in &o.terms {
                let c = c1.mul(c2, &ctx.mode);
                let m = Scalar::mul_monomials(m1, m2);
                let (extracted, r) = Scalar::mul_radicands(r1, r2, ctx);
                if extracted.as_ratfunc().map(|e| e.is_one()).unwrap_or(false) {
                    out.insert_term((m, r), c, ctx);
                } else {
                    let mut t = Scalar::zero();
                    t.insert_term((m, r), c, ctx);
                    out = out.add(&t.mul(&extracted, ctx), ctx);
                }
            }
        }
        out.reduce_monomials(ctx)
    }

    pub fn scale_ratfunc(&self, c: &RatFunc, ctx: &Ctx) -> Scalar {
        if c.is_zero() {
            return Scalar::zero();
        }
        let mut out = Scalar::zero();
        for (k, v) in &self.terms {
            out.insert_term(k.clone(), v.mul(c, &ctx.mode), ctx);
        }
        out
    }

    pub fn scale_int(&self, n: i64, ctx: &Ctx) -> Scalar {
        self.scale_ratfunc(&RatFunc::constant(GaussRat::from_int(n)), ctx)
    }

    /// Complex conjugation: fixes `s` and all radicands, maps `i -> -i`,
    /// inverts unit phases, fixes real symbols.
    pub fn conj(&self, ctx: &Ctx) -> Scalar {
        let mut out = Scalar::zero();
        for ((m, r), c) in &self.terms {
            let mut m2 = BTreeMap::new();
            for (&id, &e) in &m.0 {
                match ctx.symbols[id.0 as usize].conj {
                    ConjRule::Fixed => {
                        m2.insert(id, e);
                    }
                    ConjRule::Invert => {
                        m2.insert(id, -e);
                    }
                }
            }
            out.insert_term((SymMonomial(m2), r.clone()), c.conj(&ctx.mode), ctx);
        }
        out.reduce_monomials(ctx)
    }

    /// Multiplicative inverse; succeeds only for single-term scalars whose
    /// monomial symbols are invertible.
    pub fn try_inv(&self, ctx: &Ctx) -> Result<Scalar, ScalarError> {
        if self.terms.len() != 1 {
            return Err(ScalarError::NotInvertible);
        }
        let ((m, r), c) = self.terms.iter().next().unwrap();
        for (&id, _) in &m.0 {
            if ctx.symbols[id.0 as usize].pow_rule.is_some() {
                return Err(ScalarError::NotInvertible);
            }
        }
        let minv = SymMonomial(m.0.iter().map(|(&id, &e)| (id, -e)).collect());
        // 1/sqrt(R) = sqrt(R)/value(R)
        let mut value = Scalar::from_rat(BigRational::from_integer(r.int_part.clone()), ctx);
        for atom in &r.atoms {
            value = value.mul(&Scalar::atom_value(*atom, ctx), ctx);
        }
        let vinv = match value.as_ratfunc() {
            Some(rf) if !rf.is_zero() => rf.inv(&ctx.mode),
            _ => return Err(ScalarError::NotInvertible),
        };
        let mut out = Scalar::zero();
        out.insert_term((minv, r.clone()), c.inv(&ctx.mode).mul(&vinv, &ctx.mode), ctx);
        Ok(out)
    }

    pub fn div(&self, o: &Scalar, ctx: &Ctx) -> Result<Scalar, ScalarError> {
        Ok(self.mul(&o.try_inv(ctx)?, ctx))
    }

    /// Square root of a nonnegative rational.
    pub fn sqrt_rational(r: &BigRational, ctx: &Ctx) -> Result<Scalar, ScalarError> {
        if r.is_negative() {
            return Err(ScalarError::NegativeRadicand);
        }
        if r.is_zero() {
            return Ok(Scalar::zero());
        }
        // sqrt(p/q) = sqrt(p*q) / q
        let pq = r.numer() * r.denom();
        let (outside, inside) = squarefree_decompose(&pq)?;
        let coeff = BigRational::new(outside, r.denom().clone());
        let mut out = Scalar::zero();
        out.insert_term(
            (SymMonomial::one(), Radicand { int_part: inside, atoms: BTreeSet::new() }),
            RatFunc::constant(GaussRat::from_rat(coeff)),
            ctx,
        );
        Ok(out)
    }

    /// `sqrt((n)_q)` for `n >= 0`.
    pub fn sqrt_qint(n: i64, ctx: &Ctx) -> Scalar {
        Scalar::sqrt_qint_product(&[n], ctx)
    }

    /// Square root of a product of q-integers `prod (f)_q`, `f >= 0`.
    pub fn sqrt_qint_product(factors: &[i64], ctx: &Ctx) -> Scalar {
        if factors.iter().any(|&f| f == 0) {
            return Scalar::zero();
        }
        match &ctx.mode {
            Mode::Formal => {
                let mut out = Scalar::one(ctx);
                let mut counts: BTreeMap<i64, u32> = BTreeMap::new();
                for &f in factors {
                    assert!(f >= 1, "q-integer atoms must have positive index");
                    if f >= 2 {
                        *counts.entry(f).or_insert(0) += 1;
                    }
                }
                let mut radicand = BTreeSet::new();
                for (f, mult) in counts {
                    for _ in 0..(mult / 2) {
                        out = out.mul(&qfuncs::q_int(f, ctx), ctx);
                    }
                    if mult % 2 == 1 {
                        radicand.insert(Atom::QInt(f));
                    }
                }
                let mut rad = Scalar::zero();
                rad.insert_term(
                    (SymMonomial::one(), Radicand { int_part: BigInt::one(), atoms: radicand }),
                    RatFunc::one(),
                    ctx,
                );
                out.mul(&rad, ctx)
            }
            _ => {
                let mut prod = BigRational::one();
                for &f in factors {
                    let v = qfuncs::q_int(f, ctx)
                        .as_rational()
                        .expect("q-integers are rational at fixed q0");
                    prod *= v;
                }
                Scalar::sqrt_rational(&prod, ctx).expect("q-integers are nonnegative")
            }
        }
    }

    /// `sqrt(prod num_factors / prod den_factors)` over q-integers.
    pub fn sqrt_qint_ratio(num: &[i64], den: &[i64], ctx: &Ctx) -> Scalar {
        // cancel common factors
        let mut nums: BTreeMap<i64, i32> = BTreeMap::new();
        for &f in num {
            *nums.entry(f).or_insert(0) += 1;
        }
        for &f in den {
            *nums.entry(f).or_insert(0) -= 1;
        }
        let mut up = Vec::new();
        let mut down = Vec::new();
        for (f, c) in nums {
            for _ in 0..c.abs() {
                if c > 0 {
                    up.push(f)
                } else {
                    down.push(f)
                }
            }
        }
        // sqrt(A/B) = sqrt(A*B)/B
        let mut all = up.clone();
        all.extend_from_slice(&down);
        let mut out = Scalar::sqrt_qint_product(&all, ctx);
        for &f in &down {
            let v = qfuncs::q_int(f, ctx);
            out = out.div(&v, ctx).expect("q-integer division");
        }
        out
    }

    /// Square root of a registered nonnegative atom.
    pub fn sqrt_sym_atom(id: AtomId, ctx: &Ctx) -> Scalar {
        let mut atoms = BTreeSet::new();
        atoms.insert(Atom::Sym(id));
        let mut out = Scalar::zero();
        out.insert_term(
            (SymMonomial::one(), Radicand { int_part: BigInt::one(), atoms }),
            RatFunc::one(),
            ctx,
        );
        out
    }

    /// General square root restricted to single-term scalars that are
    /// recognizable products of registered nonnegative pieces:
    /// a positive rational, an even power of `s`, q-integer factors, even
    /// symbol powers, and an already-present radicand whose atoms all
    /// reappear squared. Anything else signals an unsupported radicand.
    pub fn sqrt_atom(&self, ctx: &Ctx) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Ok(Scalar::zero());
        }
        if self.terms.len() != 1 {
            return Err(ScalarError::UnsupportedRadicand(format!("{} is not a single term", self)));
        }
        let ((m, r), c) = self.terms.iter().next().unwrap();
        if !r.is_trivial() {
            return Err(ScalarError::UnsupportedRadicand(
                "nested radicals are not supported".into(),
            ));
        }
        let mut msqrt = BTreeMap::new();
        for (&id, &e) in &m.0 {
            if e % 2 != 0 {
                return Err(ScalarError::UnsupportedRadicand(format!(
                    "odd exponent on symbol {}",
                    ctx.symbols[id.0 as usize].name
                )));
            }
            msqrt.insert(id, e / 2);
        }
        // peel off q-integer factors by exact trial division (formal mode);
        // at a fixed q0 the coefficient is already a plain number. Products
        // of q-integers have pure s-power denominators, and dividing by a
        // non-factor introduces a non-monomial denominator, so divisibility
        // is detectable exactly.
        let mut qint_factors: Vec<i64> = Vec::new();
        let mut rest = c.clone();
        if matches!(ctx.mode, Mode::Formal) && rest.den.is_monomial() {
            let mut n = (rest.num.degree() as i64) / 8 + 1;
            while n >= 2 {
                let cand = qfuncs::q_int_ratfunc(n, ctx);
                let quo = rest.div(&cand, &ctx.mode);
                if quo.den.is_monomial() {
                    qint_factors.push(n);
                    rest = quo;
                } else {
                    n -= 1;
                }
            }
        }
        let (coeff, spow) = rest
            .as_monomial()
            .ok_or_else(|| ScalarError::UnsupportedRadicand(format!("{} is not monomial", c)))?;
        if !coeff.im.is_zero() || !coeff.re.is_positive() {
            return Err(ScalarError::NegativeRadicand);
        }
        if spow % 2 != 0 {
            return Err(ScalarError::UnsupportedRadicand("odd power of s under sqrt".into()));
        }
        let mut out = Scalar::sqrt_rational(&coeff.re, ctx)?;
        out = out.mul(&Scalar::from_ratfunc(RatFunc::s_pow(spow / 2, &ctx.mode), ctx), ctx);
        out = out.mul(&Scalar::sqrt_qint_product(&qint_factors, ctx), ctx);
        let mut t = Scalar::zero();
        t.insert_term((SymMonomial(msqrt), Radicand::trivial()), RatFunc::one(), ctx);
        Ok(out.mul(&t, ctx))
    }

    /// Three-valued zero test. Termwise canonicalization decides most cases;
    /// a sum of at least two distinct radical terms falls back to certified
    /// numeric evaluation at several sample points.
    pub fn zero_status(&self, ctx: &Ctx) -> ZeroStatus {
        if self.terms.is_empty() {
            return ZeroStatus::Zero;
        }
        if self.terms.len() == 1 {
            return ZeroStatus::NonZero;
        }
        // distinct radicands are independent in practice, but confirm
        // numerically rather than claiming a proof
        let has_symbols = self.terms.keys().any(|(m, _)| !m.is_one());
        if has_symbols {
            return ZeroStatus::Undecided;
        }
        match numeric::definitely_nonzero(self, ctx) {
            Some(true) => ZeroStatus::NonZero,
            Some(false) | None => ZeroStatus::Undecided,
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Key, &RatFunc)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Exact equality (canonical forms are unique per context).
    pub fn equals(&self, o: &Scalar) -> bool {
        self == o
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((m, r), c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}", c)?;
            for (id, e) in &m.0 {
                write!(f, "*sym{}^{}", id.0, e)?;
            }
            if !r.is_trivial() {
                write!(f, "*sqrt({}", r.int_part)?;
                for a in &r.atoms {
                    match a {
                        Atom::QInt(n) => write!(f, "*({})_q", n)?,
                        Atom::Sym(id) => write!(f, "*atom{}", id.0)?,
                    }
                }
                write!(f, ")")?;
            }
        }
        Ok(())
    }
}

/// Pretty-print with symbol names resolved from the context.
pub fn display_scalar(s: &Scalar, ctx: &Ctx) -> String {
    if s.is_zero() {
        return "0".to_string();
    }
    let mut parts = Vec::new();
    for ((m, r), c) in s.terms() {
        let mut t = format!("{}", c);
        for (id, e) in &m.0 {
            t.push_str(&format!("*{}^{}", ctx.symbols[id.0 as usize].name, e));
        }
        if !r.is_trivial() {
            t.push_str(&format!("*sqrt({}", r.int_part));
            for a in &r.atoms {
                match a {
                    Atom::QInt(n) => t.push_str(&format!("*({})_q", n)),
                    Atom::Sym(id) => t.push_str(&format!("*{}", ctx.atoms[id.0 as usize].name)),
                }
            }
            t.push(')');
        }
        parts.push(t);
    }
    parts.join(" + ")
}

#[cfg(test)]
mod tests {
    use super::qfuncs::*;
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn q_int_basics() {
        let ctx = Ctx::formal(Sign::Positive);
        assert_eq!(q_int(1, &ctx), Scalar::one(&ctx));
        assert!(q_int(0, &ctx).is_zero());
        assert_eq!(q_int(-3, &ctx), q_int(3, &ctx).neg());
        let half = Ctx::exact(Sign::Positive, 1, 2);
        assert_eq!(q_int(2, &half).as_rational(), Some(rat(5, 2)));
    }

    #[test]
    fn q_int_against_definition() {
        // (n)_q = (q0^n - q0^-n)/(q0 - q0^-1) termwise in the field
        let ctx = Ctx::formal(Sign::Negative);
        for n in 1..=8 {
            let num = Scalar::q0_pow(HalfInt::from_int(n), &ctx)
                .sub(&Scalar::q0_pow(HalfInt::from_int(-n), &ctx), &ctx);
            let den = Scalar::q0_pow(HalfInt::from_int(1), &ctx)
                .sub(&Scalar::q0_pow(HalfInt::from_int(-1), &ctx), &ctx);
            let expect = num.div(&den, &ctx).unwrap();
            assert_eq!(q_int(n, &ctx), expect, "n = {n}");
        }
    }

    #[test]
    fn factorial_is_product() {
        let ctx = Ctx::formal(Sign::Positive);
        for n in 0..=20i64 {
            let mut prod = Scalar::one(&ctx);
            for k in 1..=n {
                prod = prod.mul(&q_int(k, &ctx), &ctx);
            }
            assert_eq!(q_factorial(n, &ctx), prod, "n = {n}");
        }
    }

    #[test]
    fn pochhammer_empty_product() {
        let ctx = Ctx::formal(Sign::Positive);
        let q = Scalar::q_pow(1, &ctx);
        let t = Scalar::q_pow(3, &ctx);
        assert_eq!(q_pochhammer(&t, &q, 0, &ctx), Scalar::one(&ctx));
    }

    #[test]
    fn gauss_binomial_examples() {
        for sign in [Sign::Positive, Sign::Negative] {
            let ctx = Ctx::formal(sign);
            let q = Scalar::q_pow(1, &ctx);
            let expect = Scalar::one(&ctx).add(&q, &ctx);
            assert_eq!(gauss_binomial(2, 1, &q, &ctx), expect);
            assert!(gauss_binomial(4, 5, &q, &ctx).is_zero());
            assert!(gauss_binomial(4, -1, &q, &ctx).is_zero());
        }
    }

    #[test]
    fn gauss_binomial_symmetry_and_pochhammer_identity() {
        let ctx = Ctx::formal(Sign::Positive);
        let q = Scalar::q_pow(1, &ctx);
        for m in 0..=6i64 {
            for n in 0..=m {
                let b1 = gauss_binomial(m, n, &q, &ctx);
                let b2 = gauss_binomial(m, m - n, &q, &ctx);
                assert_eq!(b1, b2);
                // [m n] (q;q)_n (q;q)_{m-n} = (q;q)_m
                let lhs = b1
                    .mul(&q_pochhammer(&q, &q, n, &ctx), &ctx)
                    .mul(&q_pochhammer(&q, &q, m - n, &ctx), &ctx);
                assert_eq!(lhs, q_pochhammer(&q, &q, m, &ctx));
            }
        }
    }

    #[test]
    fn gauss_binomial_q2_routes_agree() {
        for sign in [Sign::Positive, Sign::Negative] {
            let ctx = Ctx::formal(sign);
            let q2 = Scalar::q0_pow(HalfInt::from_int(2), &ctx);
            for m in 0..=6i64 {
                for n in 0..=m {
                    let direct = gauss_binomial(m, n, &q2, &ctx);
                    let via_qints = gauss_binomial_q2(m, n, &ctx);
                    assert_eq!(direct, via_qints, "m={m} n={n}");
                    let root = sqrt_gauss_binomial_q2(m, n, &ctx);
                    assert_eq!(root.mul(&root, &ctx), direct, "sqrt m={m} n={n}");
                }
            }
        }
    }

    #[test]
    fn little_q_jacobi_examples() {
        let ctx = Ctx::formal(Sign::Positive);
        let q = Scalar::q_pow(1, &ctx);
        let p0 = little_q_jacobi(0, 3, -1, &q, &ctx);
        assert_eq!(p0, vec![Scalar::one(&ctx)]);

        // P_1^{(0,0)}(z; q) = 1 - (1+q) z
        let p1 = little_q_jacobi(1, 0, 0, &q, &ctx);
        let expect = Scalar::one(&ctx).add(&q, &ctx).neg();
        assert_eq!(p1, vec![Scalar::one(&ctx), expect]);

        // P_1^{(1,-1)}(z; q^2) = 1 - z
        let q2 = q.mul(&q, &ctx);
        let p11 = little_q_jacobi(1, 1, -1, &q2, &ctx);
        assert_eq!(p11, vec![Scalar::one(&ctx), Scalar::one(&ctx).neg()]);
    }

    #[test]
    fn signed_powers() {
        let neg = Ctx::formal(Sign::Negative);
        // q^1 = -q0
        assert_eq!(
            signed_q_power(HalfInt::from_int(1), &neg),
            Scalar::q0_pow(HalfInt::from_int(1), &neg).neg()
        );
        // q^(1/2) = i s
        let i_s = Scalar::i(&neg).mul(&Scalar::q0_pow(HalfInt(1), &neg), &neg);
        assert_eq!(signed_q_power(HalfInt(1), &neg), i_s);
        // q^2 = q0^2
        assert_eq!(
            signed_q_power(HalfInt::from_int(2), &neg),
            Scalar::q0_pow(HalfInt::from_int(2), &neg)
        );
        // (-q)^(1/2) at positive q is i sqrt(q)
        let pos = Ctx::formal(Sign::Positive);
        let expect = Scalar::i(&pos).mul(&Scalar::q0_pow(HalfInt(1), &pos), &pos);
        assert_eq!(Scalar::neg_q_pow(HalfInt(1), &pos), expect);
    }

    #[test]
    fn sqrt_square_reduction() {
        let ctx = Ctx::formal(Sign::Positive);
        let r4 = Scalar::sqrt_qint(4, &ctx);
        assert_eq!(r4.mul(&r4, &ctx), q_int(4, &ctx));
        // sqrt((3)_q!) * sqrt((4)_q) * sqrt((3)_q!) * sqrt((4)_q) = (3)_q!(4)_q
        let a = Scalar::sqrt_qint_product(&[1, 2, 3], &ctx);
        let b = Scalar::sqrt_qint(4, &ctx);
        let prod = a.mul(&b, &ctx).mul(&a, &ctx).mul(&b, &ctx);
        assert_eq!(prod, q_factorial(3, &ctx).mul(&q_int(4, &ctx), &ctx));
    }

    #[test]
    fn sqrt_atom_recognizes_qint_products() {
        let ctx = Ctx::formal(Sign::Positive);
        let v = q_int(4, &ctx).mul(&q_int(3, &ctx), &ctx).mul(&q_int(3, &ctx), &ctx);
        let r = v.sqrt_atom(&ctx).unwrap();
        assert_eq!(r.mul(&r, &ctx), v);
        let bad = q_int(2, &ctx).add(&Scalar::one(&ctx), &ctx);
        assert!(bad.sqrt_atom(&ctx).is_err());
    }

    #[test]
    fn sqrt_rational_mode() {
        let ctx = Ctx::exact(Sign::Positive, 1, 2);
        // (2)_q = 5/2 at q0 = 1/2, sqrt(5/2) = sqrt(10)/2
        let r = Scalar::sqrt_qint(2, &ctx);
        assert_eq!(r.mul(&r, &ctx).as_rational(), Some(rat(5, 2)));
        // perfect square q0
        let ctx4 = Ctx::exact(Sign::Positive, 1, 4);
        let s = Scalar::q0_pow(HalfInt(1), &ctx4);
        assert_eq!(s.as_rational(), Some(rat(1, 2)));
    }

    #[test]
    fn zero_test_three_valued() {
        let ctx = Ctx::formal(Sign::Positive);
        // (2)_q - s^2 - s^-2 = 0
        let v = q_int(2, &ctx)
            .sub(&Scalar::q0_pow(HalfInt::from_int(1), &ctx), &ctx)
            .sub(&Scalar::q0_pow(HalfInt::from_int(-1), &ctx), &ctx);
        assert_eq!(v.zero_status(&ctx), ZeroStatus::Zero);
        assert_eq!(q_int(2, &ctx).zero_status(&ctx), ZeroStatus::NonZero);
        // sqrt((2)_q) + sqrt((3)_q) is nonzero via the numeric fallback
        let w = Scalar::sqrt_qint(2, &ctx).add(&Scalar::sqrt_qint(3, &ctx), &ctx);
        assert_eq!(w.zero_status(&ctx), ZeroStatus::NonZero);
    }

    #[test]
    fn conjugation_is_an_involution_fixing_radicands() {
        let mut ctx = Ctx::formal(Sign::Negative);
        let z = ctx.unit_symbol("z");
        let x = Scalar::i(&ctx)
            .mul(&Scalar::sqrt_qint(3, &ctx), &ctx)
            .mul(&Scalar::sym_pow(z, 2, &ctx), &ctx)
            .add(&Scalar::q_pow_half(HalfInt(1), &ctx), &ctx);
        assert_eq!(x.conj(&ctx).conj(&ctx), x);
        // ring homomorphism on a product
        let y = Scalar::sym(z, &ctx).add(&q_int(2, &ctx), &ctx);
        assert_eq!(
            x.mul(&y, &ctx).conj(&ctx),
            x.conj(&ctx).mul(&y.conj(&ctx), &ctx)
        );
    }

    #[test]
    fn numeric_eval_matches_exact() {
        let ctx = Ctx::exact(Sign::Positive, 1, 2);
        let v = q_int(3, &ctx); // 1/4 + 1 + 4 = 21/4 = 5.25
        let env = numeric::NumEnv::new(rat(1, 2), 128);
        let num = numeric::eval_scalar(&v, &ctx, &env);
        assert!((num.re.to_f64() - 5.25).abs() < 1e-12);
        // radical value: sqrt((2)_q) at q0=1/2 ~ sqrt(2.5)
        let r = Scalar::sqrt_qint(2, &ctx);
        let num = numeric::eval_scalar(&r, &ctx, &env);
        assert!((num.re.to_f64() - 2.5f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn numeric_eval_precision_bound() {
        // exact vs numeric at 128 bits agree within 2^-90 for a messy value
        let ctx = Ctx::exact(Sign::Positive, 3, 7);
        let v = q_int(5, &ctx)
            .mul(&Scalar::sqrt_qint_ratio(&[7, 6], &[4, 3], &ctx), &ctx)
            .add(&Scalar::q_pow_half(HalfInt(3), &ctx), &ctx);
        let env = numeric::NumEnv::new(rat(3, 7), 192);
        let coarse = numeric::eval_scalar(&v, &ctx, &env);
        let env_fine = numeric::NumEnv::new(rat(3, 7), 512);
        let fine = numeric::eval_scalar(&v, &ctx, &env_fine);
        let diff = (coarse.re.to_f64() - fine.re.to_f64()).abs();
        assert!(diff < 2f64.powi(-90), "difference {diff}");
    }

    #[test]
    fn sturm_certificates() {
        use super::sturm::*;
        let ctx = Ctx::formal(Sign::Positive);
        // (2)_q > 0 on (0,1)
        assert!(scalar_positive_on_01(&q_int(2, &ctx), &ctx));
        // q0 - 1 < 0 on (0,1)
        let v = Scalar::q0_pow(HalfInt::from_int(1), &ctx).sub(&Scalar::one(&ctx), &ctx);
        assert_eq!(ratfunc_scalar_sign(&v, &ctx), Some(-1));
        // (q0 - 1/2)(q0 - 1/4) changes sign: not certifiable either way
        let a = Scalar::q0_pow(HalfInt::from_int(1), &ctx).sub(&Scalar::from_rat(rat(1, 2), &ctx), &ctx);
        let b = Scalar::q0_pow(HalfInt::from_int(1), &ctx).sub(&Scalar::from_rat(rat(1, 4), &ctx), &ctx);
        assert_eq!(ratfunc_scalar_sign(&a.mul(&b, &ctx), &ctx), None);
        // root counting
        let p = RPoly(vec![rat(1, 8), rat(-3, 4), rat(1, 1)]); // (x-1/2)(x-1/4)
        assert_eq!(count_roots(&p, &rat(0, 1), &rat(1, 1)), 2);
    }

    #[test]
    fn unit_symbol_monomials() {
        let mut ctx = Ctx::minus_one();
        let z = ctx.unit_symbol("e^{i chi}");
        let zc = Scalar::sym(z, &ctx).conj(&ctx);
        let prod = Scalar::sym(z, &ctx).mul(&zc, &ctx);
        assert_eq!(prod, Scalar::one(&ctx));
    }

    #[test]
    fn trig_pair_reduction() {
        let mut ctx = Ctx::minus_one();
        let s = ctx.real_symbol("sin", false);
        // cos^2 -> 1 - sin^2
        let one_minus = Scalar::one(&ctx).sub(
            &Scalar::sym(s, &ctx).mul(&Scalar::sym(s, &ctx), &ctx),
            &ctx,
        );
        let c = ctx.register_symbol(SymbolDef {
            name: "cos".into(),
            conj: ConjRule::Fixed,
            pow_rule: Some((2, one_minus.clone())),
            positive: false,
        });
        let c2 = Scalar::sym(c, &ctx).mul(&Scalar::sym(c, &ctx), &ctx);
        assert_eq!(c2, one_minus);
        // cos^2 + sin^2 = 1
        let s2 = Scalar::sym(s, &ctx).mul(&Scalar::sym(s, &ctx), &ctx);
        assert_eq!(c2.add(&s2, &ctx), Scalar::one(&ctx));
    }
}
