//! q-special functions: q-integers and factorials, q-Pochhammer symbols,
//! Gauss binomials and little q-Jacobi polynomials.

use super::ratfunc::{GaussRat, Poly, RatFunc};
use super::{Ctx, HalfInt, Scalar};

/// `(n)_q = (q_0^n - q_0^-n)/(q_0 - q_0^-1)` as a rational function of `s`
/// (`q_0 = s^4`); antisymmetric in `n`.
pub fn q_int_ratfunc(n: i64, ctx: &Ctx) -> RatFunc {
    if n == 0 {
        return RatFunc::zero();
    }
    if n < 0 {
        return q_int_ratfunc(-n, ctx).neg();
    }
    // (n)_q = s^(4-4n) * (1 + s^8 + ... + s^(8(n-1)))
    let mut v = vec![GaussRat::zero(); (8 * (n - 1) + 1) as usize];
    for j in 0..n {
        v[(8 * j) as usize] = GaussRat::one();
    }
    let num = Poly(v);
    let den = Poly::monomial(GaussRat::one(), (4 * n - 4) as usize);
    RatFunc::new(num, den, &ctx.mode)
}

/// `(n)_q` as a scalar.
pub fn q_int(n: i64, ctx: &Ctx) -> Scalar {
    Scalar::from_ratfunc(q_int_ratfunc(n, ctx), ctx)
}

/// `(n)_q! = (n)_q (n-1)_q ... (1)_q`.
pub fn q_factorial(n: i64, ctx: &Ctx) -> Scalar {
    assert!(n >= 0, "q-factorial of a negative integer");
    let mut out = Scalar::one(ctx);
    for k in 2..=n {
        out = out.mul(&q_int(k, ctx), ctx);
    }
    out
}

/// `(t; base)_m = prod_{s=0}^{m-1} (1 - t * base^s)`.
pub fn q_pochhammer(t: &Scalar, base: &Scalar, m: i64, ctx: &Ctx) -> Scalar {
    assert!(m >= 0, "q-Pochhammer of negative order");
    let one = Scalar::one(ctx);
    let mut out = one.clone();
    let mut tb = t.clone();
    for _ in 0..m {
        out = out.mul(&one.sub(&tb, ctx), ctx);
        tb = tb.mul(base, ctx);
    }
    out
}

/// Gauss binomial `[m n]_base = (base;base)_m / ((base;base)_n (base;base)_{m-n})`,
/// with the vanishing convention for `n < 0` or `n > m`.
pub fn gauss_binomial(m: i64, n: i64, base: &Scalar, ctx: &Ctx) -> Scalar {
    if n < 0 || n > m {
        return Scalar::zero();
    }
    // product formula: prod_{i=1}^{n} (1 - base^(m-n+i)) / (1 - base^i)
    let one = Scalar::one(ctx);
    let mut num = Scalar::one(ctx);
    let mut den = Scalar::one(ctx);
    let pow = |k: i64| -> Scalar {
        let mut p = Scalar::one(ctx);
        for _ in 0..k {
            p = p.mul(base, ctx);
        }
        p
    };
    for i in 1..=n {
        num = num.mul(&one.sub(&pow(m - n + i), ctx), ctx);
        den = den.mul(&one.sub(&pow(i), ctx), ctx);
    }
    num.div(&den, ctx).expect("Gauss binomial denominator is invertible")
}

/// Square root of the base-`q^2` Gauss binomial, using
/// `[m n]_{q^2} = q_0^(n(m-n)) * (m)_q! / ((n)_q! (m-n)_q!)`.
pub fn sqrt_gauss_binomial_q2(m: i64, n: i64, ctx: &Ctx) -> Scalar {
    if n < 0 || n > m {
        return Scalar::zero();
    }
    let prefactor = Scalar::q0_pow(HalfInt(n * (m - n)), ctx);
    let num: Vec<i64> = (1..=m).collect();
    let den: Vec<i64> = (1..=n).chain(1..=(m - n)).collect();
    prefactor.mul(&Scalar::sqrt_qint_ratio(&num, &den, ctx), ctx)
}

/// The base-`q^2` Gauss binomial itself via the q-integer form.
pub fn gauss_binomial_q2(m: i64, n: i64, ctx: &Ctx) -> Scalar {
    if n < 0 || n > m {
        return Scalar::zero();
    }
    let mut out = Scalar::q0_pow(HalfInt(2 * n * (m - n)), ctx);
    for k in (m - n + 1)..=m {
        out = out.mul(&q_int(k, ctx), ctx);
    }
    out.div(&q_factorial(n, ctx), ctx).expect("q-factorial is invertible")
}

/// Little q-Jacobi polynomial coefficients: `P_n^{(alpha,beta)}(z; base)`
/// as the vector of coefficients of `z^r`, `r = 0..n`. The defining series
/// truncates at `r = n`.
///
/// The Pochhammer ratios are computed in the pole-free form
/// `(1 - p^A)/(1 - p^B) = (1 + ... + p^(A-1))/(1 + ... + p^(B-1))`
/// (with a sign and `p^A` prefactor for negative `A`), which stays exact
/// at the boundary `q_0 = 1`.
pub fn little_q_jacobi(n: i64, alpha: i64, beta: i64, base: &Scalar, ctx: &Ctx) -> Vec<Scalar> {
    assert!(n >= 0);
    assert!(alpha >= 0, "negative alpha makes the series denominator vanish");
    let pow = |k: i64| -> Scalar {
        let mut p = Scalar::one(ctx);
        if k >= 0 {
            for _ in 0..k {
                p = p.mul(base, ctx);
            }
        } else {
            let inv = base.try_inv(ctx).expect("invertible base");
            for _ in 0..(-k) {
                p = p.mul(&inv, ctx);
            }
        }
        p
    };
    // geo(k) = 1 + p + ... + p^(k-1), k >= 1
    let geo = |k: i64| -> Scalar {
        let mut acc = Scalar::zero();
        for j in 0..k {
            acc = acc.add(&pow(j), ctx);
        }
        acc
    };
    // (1 - p^a)/(1 - p^b) for b >= 1
    let ratio = |a: i64, b: i64| -> Scalar {
        debug_assert!(b >= 1);
        if a == 0 {
            return Scalar::zero();
        }
        if a > 0 {
            geo(a).div(&geo(b), ctx).expect("geometric denominator invertible")
        } else {
            // 1 - p^a = -p^a (1 - p^(-a))
            geo(-a).div(&geo(b), ctx).expect("geometric denominator invertible").mul(&pow(a), ctx).neg()
        }
    };
    let mut coeffs = Vec::with_capacity((n + 1) as usize);
    let mut acc = Scalar::one(ctx);
    coeffs.push(acc.clone());
    for r in 1..=n {
        // append the s = r-1 factor of each Pochhammer
        let s = r - 1;
        let f1 = ratio(-n + s, 1 + s);
        let f2 = ratio(alpha + beta + n + 1 + s, alpha + 1 + s);
        acc = acc.mul(&f1, ctx).mul(&f2, ctx);
        coeffs.push(acc.mul(&pow(r), ctx));
    }
    coeffs
}

/// `q^h` for half-integer `h` in the signed convention
/// (`q^h = i^(2h) (-q)^h` when `q < 0`); plain `q_0^h` for positive `q`.
pub fn signed_q_power(h: HalfInt, ctx: &Ctx) -> Scalar {
    Scalar::q_pow_half(h, ctx)
}
