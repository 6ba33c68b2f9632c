//! Hecke eigenvalue normalization and Satake data at primes.
//!
//! The exact integer layer ends here: `normalize` divides a coefficient by
//! `p^{(k-1)/2}` with 80 fractional bits of integer arithmetic before the
//! single rounding to f64, and everything downstream is binary64.

use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive};

/// Fractional bits carried through the big-integer quotient.
pub const NORMALIZE_PRECISION_BITS: u32 = 80;

/// lambda_f(p) = a_f(p) / p^{(k-1)/2} for even weight k.
///
/// `p^{(k-1)/2}` is irrational (half-integer power), so the denominator is
/// computed as floor(sqrt(p^{k-1} * 2^160)) and the quotient keeps 80
/// fractional bits before rounding.
pub fn normalize(a: &BigInt, p: u64, k: u32) -> f64 {
    debug_assert!(k.is_multiple_of(2) && k >= 2);
    let shift = 2 * NORMALIZE_PRECISION_BITS;
    let denom = (BigUint::from(p).pow(k - 1) << shift).sqrt();
    let num = a.magnitude() << shift;
    let q = (num / denom).to_f64().unwrap_or(f64::INFINITY);
    let v = q / 2f64.powi(NORMALIZE_PRECISION_BITS as i32);
    if a.is_negative() {
        -v
    } else {
        v
    }
}

/// The pair (alpha, beta) with alpha*beta = 1 and alpha + beta = lambda.
#[derive(Clone, Copy, Debug)]
pub struct SatakePair {
    pub alpha: Complex64,
    pub beta: Complex64,
}

/// Roots of `X^2 - lambda X + 1`.
///
/// For |lambda| <= 2 the roots are conjugate on the unit circle and alpha
/// takes the nonnegative imaginary part; for |lambda| > 2 both are real and
/// alpha is the one with |alpha| >= 1.
pub fn satake(lambda: f64) -> SatakePair {
    if lambda.abs() <= 2.0 {
        let im = (1.0 - lambda * lambda / 4.0).max(0.0).sqrt();
        let alpha = Complex64::new(lambda / 2.0, im);
        SatakePair {
            alpha,
            beta: alpha.conj(),
        }
    } else {
        let half = lambda.abs() / 2.0;
        let r = half + (half * half - 1.0).sqrt();
        let alpha = Complex64::new(lambda.signum() * r, 0.0);
        SatakePair {
            alpha,
            beta: Complex64::new(lambda - alpha.re, 0.0),
        }
    }
}

/// Symmetric-power eigenvalue S_j = sum_{i=0..j} alpha^i beta^{j-i} via the
/// two-term recursion S_j = lambda S_{j-1} - S_{j-2}; S_0 = 1, S_1 = lambda.
pub fn sym_eigenvalue(lambda: f64, j: u32) -> f64 {
    match j {
        0 => 1.0,
        1 => lambda,
        _ => {
            let mut prev = 1.0;
            let mut cur = lambda;
            for _ in 2..=j {
                (prev, cur) = (cur, lambda * cur - prev);
            }
            cur
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalize_known_quotients() {
        // -24 / 2^5.5 and 216 / 2^7.5, frozen from a high-precision quotient
        let v = normalize(&BigInt::from(-24), 2, 12);
        assert!((v - (-0.5303300858899106)).abs() < 1e-15, "{v}");
        let v = normalize(&BigInt::from(216), 2, 16);
        assert!((v - 1.1932426932522988).abs() < 1e-15, "{v}");
        assert_eq!(normalize(&BigInt::from(0), 7, 20), 0.0);
    }

    #[test]
    fn normalize_agrees_with_float_route() {
        // independent route: convert numerator and denominator to f64 first
        // (good to ~2^-50 relative, far coarser than the integer route)
        for (a, p, k) in [
            (BigInt::from(-24), 2u64, 12u32),
            (BigInt::from(252), 3, 12),
            (BigInt::from(216), 2, 16),
            (BigInt::from(-3_396_226_280_192_000i64), 997, 22),
        ] {
            let exact = normalize(&a, p, k);
            let coarse = a.to_f64().unwrap() / (p as f64).powf((k as f64 - 1.0) / 2.0);
            assert!(
                (exact - coarse).abs() <= 1e-10 * coarse.abs().max(1.0),
                "a={a} p={p} k={k}: {exact} vs {coarse}"
            );
        }
    }

    #[test]
    fn satake_branches() {
        let s = satake(2.0);
        assert!((s.alpha - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        assert!((s.beta - Complex64::new(1.0, 0.0)).norm() < 1e-12);

        let s = satake(0.0);
        assert!((s.alpha - Complex64::new(0.0, 1.0)).norm() < 1e-12);
        assert!((s.beta - Complex64::new(0.0, -1.0)).norm() < 1e-12);

        let s = satake(2.5);
        assert!((s.alpha.re - 2.0).abs() < 1e-12 && s.alpha.im == 0.0);
        assert!((s.beta.re - 0.5).abs() < 1e-12);

        let s = satake(-2.5);
        assert!((s.alpha.re + 2.0).abs() < 1e-12);
    }

    #[test]
    fn satake_invariants_across_range() {
        for i in -300..=300 {
            let lambda = i as f64 / 100.0;
            let s = satake(lambda);
            assert!((s.alpha * s.beta - Complex64::new(1.0, 0.0)).norm() <= 1e-12);
            assert!((s.alpha + s.beta - Complex64::new(lambda, 0.0)).norm() <= 1e-12);
            if lambda.abs() <= 2.0 {
                assert!((s.alpha.norm() - 1.0).abs() <= 1e-12);
                assert!(s.alpha.im >= 0.0);
            } else {
                assert!(s.alpha.norm() >= 1.0);
            }
        }
    }

    #[test]
    fn sym_eigenvalue_small_cases() {
        assert_eq!(sym_eigenvalue(0.77, 0), 1.0);
        assert_eq!(sym_eigenvalue(0.77, 1), 0.77);
        for j in 0..10 {
            assert_eq!(sym_eigenvalue(2.0, j), (j + 1) as f64);
        }
        assert_eq!(sym_eigenvalue(0.0, 2), -1.0);
    }

    #[test]
    fn sym_eigenvalue_matches_power_sum() {
        // S_j against the direct sum of alpha^i beta^{j-i}
        for &lambda in &[-1.9, -0.3, 0.0, 0.5, 1.4, 2.0, 2.5] {
            let s = satake(lambda);
            for j in 0..=8u32 {
                let mut direct = Complex64::new(0.0, 0.0);
                for i in 0..=j {
                    direct += s.alpha.powi(i as i32) * s.beta.powi((j - i) as i32);
                }
                let rec = sym_eigenvalue(lambda, j);
                assert!(
                    (direct.re - rec).abs() < 1e-9 && direct.im.abs() < 1e-9,
                    "lambda={lambda} j={j}: {direct} vs {rec}"
                );
            }
        }
    }
}
