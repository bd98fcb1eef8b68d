//! Finite-dimensional numeric model of the flat quantum sphere.
//!
//! Two weighted-shift blocks realize the sphere generators on a cutoff
//! basis; the weighted trace reproduces the Haar state on polynomials in
//! the generators up to the truncation error.

use crate::ncalg::NCPoly;
use crate::qscalar::{Ctx, HalfInt};
use crate::report::Report;
use num::BigRational;

/// Truncated representation: each generator acts on two `N`-dimensional
/// blocks (dense rows, block +1 and block -1).
pub struct TruncatedRep {
    pub n: usize,
    pub q0: f64,
    /// generator images per block: [xi_{-1}, xi_0, xi_1]
    pub blocks: [[Vec<Vec<f64>>; 2]; 3],
}

fn zeros(n: usize) -> Vec<Vec<f64>> {
    vec![vec![0.0; n]; n]
}

/// `gamma_k = q^(1/2) (q + q^(-1))^(-1/2) (1 - q^(4k+4))^(1/2)`.
fn gamma(k: usize, q: f64) -> f64 {
    (q / (q + 1.0 / q)).sqrt() * (1.0 - q.powi(4 * k as i32 + 4)).sqrt()
}

/// Build the cutoff model at `q_0 = q` (positive regime).
pub fn truncated_sphere_rep(n: usize, q: f64) -> TruncatedRep {
    assert!(n >= 4, "cutoff too small");
    let mut xm = [zeros(n), zeros(n)];
    let mut x0 = [zeros(n), zeros(n)];
    let mut xp = [zeros(n), zeros(n)];
    for (b, sign) in [(0usize, 1.0f64), (1usize, -1.0f64)] {
        for k in 0..n {
            // xi_{-1} e_kk = ± gamma_k e_{k+1,k}
            if k + 1 < n {
                xm[b][k + 1][k] = sign * gamma(k, q);
            }
            // xi_1 e_kk = ∓ q^{-1} gamma_{k-1} e_{k-1,k}
            if k >= 1 {
                xp[b][k - 1][k] = -sign * gamma(k - 1, q) / q;
            }
            // xi_0 = sum ± q^{2k+1} e_kk (block + gets +, block - gets -)
            x0[b][k][k] = sign * q.powi(2 * k as i32 + 1);
        }
    }
    TruncatedRep { n, q0: q, blocks: [xm, x0, xp] }
}

fn mat_mul(a: &[Vec<f64>], b: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = a.len();
    let mut out = zeros(n);
    for i in 0..n {
        for k in 0..n {
            let aik = a[i][k];
            if aik == 0.0 {
                continue;
            }
            for j in 0..n {
                out[i][j] += aik * b[k][j];
            }
        }
    }
    out
}

impl TruncatedRep {
    /// Evaluate a word in the three generators (indices 0,1,2 for
    /// `xi_{-1}, xi_0, xi_1`) on a block.
    pub fn word(&self, word: &[usize], block: usize) -> Vec<Vec<f64>> {
        let mut acc: Option<Vec<Vec<f64>>> = None;
        for &g in word {
            let m = &self.blocks[g][block];
            acc = Some(match acc {
                None => m.clone(),
                Some(a) => mat_mul(&a, m),
            });
        }
        acc.unwrap_or_else(|| {
            let mut id = zeros(self.n);
            for (i, row) in id.iter_mut().enumerate() {
                row[i] = 1.0;
            }
            id
        })
    }

    /// Weighted trace `tau(A) = (1-q^2)/2 sum_k q^{2k} (A^+_kk + A^-_kk)`.
    pub fn weighted_trace(&self, word: &[usize]) -> f64 {
        let q = self.q0;
        let plus = self.word(word, 0);
        let minus = self.word(word, 1);
        let mut acc = 0.0;
        for k in 0..self.n {
            acc += q.powi(2 * k as i32) * (plus[k][k] + minus[k][k]);
        }
        acc * (1.0 - q * q) / 2.0
    }

    /// Interior residual of the sphere relations (rows away from the
    /// boundary of the cutoff).
    pub fn relations_residual(&self) -> f64 {
        let q = self.q0;
        let n = self.n;
        let mut worst: f64 = 0.0;
        for b in 0..2 {
            let xm = &self.blocks[0][b];
            let x0 = &self.blocks[1][b];
            let xp = &self.blocks[2][b];
            let q2 = q * q;
            // xi_{-1} xi_0 = q^{-2} xi_0 xi_{-1} (lower component rule with
            // the sign convention of the coefficient tuple)
            let lhs = mat_mul(xm, x0);
            let rhs = mat_mul(x0, xm);
            for i in 0..n.saturating_sub(2) {
                for j in 0..n.saturating_sub(2) {
                    let r = lhs[i][j] - rhs[i][j] / q2;
                    worst = worst.max(r.abs());
                }
            }
            // xi_1 xi_{-1} = (q + q^{-1})^{-1} (q^2 xi_0^2 - 1)
            let lhs = mat_mul(xp, xm);
            let x0sq = mat_mul(x0, x0);
            for i in 0..n.saturating_sub(2) {
                for j in 0..n.saturating_sub(2) {
                    let idm = if i == j { 1.0 } else { 0.0 };
                    let r = lhs[i][j] - (q2 * x0sq[i][j] - idm) / (q + 1.0 / q);
                    worst = worst.max(r.abs());
                }
            }
            // xi_{-1} xi_1 = (q + q^{-1})^{-1} (q^{-2} xi_0^2 - 1)
            let lhs = mat_mul(xm, xp);
            for i in 0..n.saturating_sub(2) {
                for j in 0..n.saturating_sub(2) {
                    let idm = if i == j { 1.0 } else { 0.0 };
                    let r = lhs[i][j] - (x0sq[i][j] / q2 - idm) / (q + 1.0 / q);
                    worst = worst.max(r.abs());
                }
            }
        }
        worst
    }
}

/// Compare the weighted trace against the polynomial Haar state on all
/// generator words of bounded degree.
pub fn haar_comparison(rep_model: &TruncatedRep, max_degree: usize, tol: f64) -> Report {
    let mut rep = Report::new("truncated-sphere");
    // exact sphere entries at lambda_0 = 0 over the rational q0
    let frac = approx_to_rational(rep_model.q0);
    let ctx = Ctx::new(crate::qscalar::QParam::exact(crate::qscalar::Sign::Positive, frac));
    let w1 = crate::corep::build_corep(HalfInt::from_int(1), &ctx);
    let sphere = super::sphere_eigenvector(
        &super::SphereParam::Exact(BigRational::from_integer(0.into())),
        &w1,
        &ctx,
    );
    let gens: Vec<NCPoly> = vec![
        sphere.tuple.entry(HalfInt::from_int(-1)).clone(),
        sphere.tuple.entry(HalfInt::ZERO).clone(),
        sphere.tuple.entry(HalfInt::from_int(1)).clone(),
    ];
    let mut words: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..max_degree {
        let mut next = Vec::new();
        for w in &words {
            for g in 0..3 {
                let mut w2 = w.clone();
                w2.push(g);
                next.push(w2);
            }
        }
        words.extend(next.clone());
        words = {
            let mut seen = std::collections::BTreeSet::new();
            words.into_iter().filter(|w| seen.insert(w.clone())).collect()
        };
    }
    let env = crate::qscalar::numeric::NumEnv::new(approx_to_rational(rep_model.q0), 160);
    let mut worst: f64 = 0.0;
    for w in &words {
        if w.len() > max_degree {
            continue;
        }
        let mut poly = NCPoly::one(&ctx);
        for &g in w {
            poly = poly.mul(&gens[g], &ctx);
        }
        let exact = poly.haar(&ctx);
        let exact_f = crate::qscalar::numeric::eval_scalar(&exact, &ctx, &env).re.to_f64();
        let approx = rep_model.weighted_trace(w);
        worst = worst.max((exact_f - approx).abs());
    }
    rep.check_witness(
        "haar-vs-weighted-trace",
        "truncated-model-haar",
        worst < tol,
        format!("worst residual {worst:e}"),
    );
    // tau(xi_0) vanishes exactly by the symmetric block pairing
    let t0 = rep_model.weighted_trace(&[1]);
    rep.check_witness("trace-xi0", "truncated-model-haar", t0.abs() < 1e-12, format!("{t0:e}"));
    // tau(1) = 1 - O(q^{2N})
    let t1 = rep_model.weighted_trace(&[]);
    rep.check_witness(
        "trace-unit",
        "truncated-model-haar",
        (t1 - 1.0).abs() < 1e-8,
        format!("{t1}"),
    );
    rep
}

fn approx_to_rational(q: f64) -> BigRational {
    // the models are built at simple rational parameters
    for d in 1..=64i64 {
        let n = (q * d as f64).round();
        if ((n / d as f64) - q).abs() < 1e-12 {
            return BigRational::new((n as i64).into(), d.into());
        }
    }
    panic!("q0 is not a simple rational");
}
