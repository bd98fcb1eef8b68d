//! Scratch probe: brute-force coefficients of Psi_(m-1)(w^2_s, w^m_t) at q = -1.
use suq2::clebsch::{psi_product, ETuple};
use suq2::corep::build_corep;
use suq2::qscalar::{display_scalar, Ctx, HalfInt};

fn main() {
    let ctx = Ctx::minus_one();
    for m2 in [3i64, 5] {
        let m = HalfInt(m2);
        let w2 = build_corep(HalfInt::from_int(2), &ctx);
        let wm = build_corep(m, &ctx);
        let ell = m - HalfInt::from_int(1);
        let wout = build_corep(ell, &ctx);
        for s in [-1i64, 1] {
            let xi = ETuple::from_row(&w2, HalfInt::from_int(s), &ctx);
            for &t in &m.index_set() {
                let eta = ETuple::from_row(&wm, t, &ctx);
                let out = psi_product(ell, &xi, &eta, &ctx);
                let coeffs = out.coeffs_against(&wout, &ctx);
                let parts: Vec<String> = wout
                    .nu
                    .index_set()
                    .iter()
                    .zip(&coeffs)
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(i, c)| format!("[{}]: {}", i, display_scalar(c, &ctx)))
                    .collect();
                println!("m={m} s={s} t={t} -> {}", parts.join(", "));
            }
        }
    }
}
