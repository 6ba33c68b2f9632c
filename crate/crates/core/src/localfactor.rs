//! Per-prime local data: Satake values, lambda(p), and mu(p^a).
//!
//! The reciprocal local factor of an expression is the polynomial
//! `prod_v (1 - gamma_v x)` over its Satake values `gamma_v`, so
//! `mu(p^a)` is the coefficient of `x^a` (signed elementary symmetric).
//! Self-duality pairs every exponent vector `v` with `-v`, whose values are
//! mutually reciprocal (conjugate on the unit circle), so the polynomial is
//! assembled from real linear and quadratic factors: the imaginary parts of
//! all mu(p^a) are zero by construction, not by cancellation. A generic
//! complex elementary-symmetric routine is kept as the independent route and
//! cross-checked in tests.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hecke::satake;
use crate::registry::FormRegistry;
use crate::repalg::{exponents, ExponentMultiset, FormId, RepExpr};

/// Numeric local data of an expression at one prime.
#[derive(Clone, Debug)]
pub struct LocalData {
    pub p: u64,
    pub degree: u64,
    pub lambda_p: f64,
    /// mu(p^0) .. mu(p^degree)
    pub mobius: Vec<f64>,
    pub satake_values: Vec<Complex64>,
}

/// Coefficients `c_a` with `prod (1 - g_j x) = sum c_a x^a`, i.e.
/// `c_a = (-1)^a e_a(g_1..g_d)`, by incremental polynomial updates.
pub fn elementary_symmetric_poly(values: &[Complex64]) -> Vec<Complex64> {
    let mut c = vec![Complex64::new(0.0, 0.0); values.len() + 1];
    c[0] = Complex64::new(1.0, 0.0);
    for (i, &g) in values.iter().enumerate() {
        for a in (1..=i + 1).rev() {
            let prev = c[a - 1];
            c[a] -= g * prev;
        }
    }
    c
}

/// Elementary symmetric polynomials e_0..e_d of the given values.
pub fn elementary_symmetric(values: &[Complex64]) -> Vec<Complex64> {
    elementary_symmetric_poly(values)
        .into_iter()
        .enumerate()
        .map(|(a, c)| if a % 2 == 1 { -c } else { c })
        .collect()
}

/// Reusable per-expression evaluator: the exponent multiset and its
/// self-dual pairing are computed once, numeric evaluation per prime after.
pub struct LocalEvaluator {
    ms: ExponentMultiset,
    zero_mult: u64,
    /// representatives of {v, -v} pairs (v lexicographically positive)
    pairs: Vec<(Vec<i32>, u64)>,
}

impl LocalEvaluator {
    pub fn new(e: &RepExpr) -> Result<Self> {
        let ms = exponents(e);
        let mut zero_mult = 0;
        let mut pairs = Vec::new();
        for (v, c) in ms.entries() {
            if v.iter().all(|&x| x == 0) {
                zero_mult = *c;
                continue;
            }
            let neg: Vec<i32> = v.iter().map(|x| -x).collect();
            if *v > neg {
                continue; // counted at its mirror
            }
            let neg_mult = ms
                .entries()
                .iter()
                .find(|(w, _)| *w == neg)
                .map(|(_, c)| *c)
                .ok_or_else(|| Error::internal("exponent multiset is not self-dual"))?;
            if neg_mult != *c {
                return Err(Error::internal("exponent multiset is not self-dual"));
            }
            pairs.push((v.clone(), *c));
        }
        Ok(LocalEvaluator { ms, zero_mult, pairs })
    }

    pub fn base_forms(&self) -> &[FormId] {
        self.ms.base_forms()
    }

    pub fn degree(&self) -> u64 {
        self.ms.degree()
    }

    /// Satake alpha per base form at one prime, pulled from the registry.
    pub fn alphas_at(&self, p: u64, reg: &FormRegistry) -> Result<Vec<Complex64>> {
        self.base_forms()
            .iter()
            .map(|f| Ok(satake(reg.lambda_p(f, p)?).alpha))
            .collect()
    }

    fn value(v: &[i32], alphas: &[Complex64]) -> Complex64 {
        let mut z = Complex64::new(1.0, 0.0);
        for (&e, &a) in v.iter().zip(alphas) {
            if e != 0 {
                z *= a.powi(e);
            }
        }
        z
    }

    /// Dirichlet coefficient lambda(p) = sum of Satake values (exactly real).
    pub fn lambda(&self, alphas: &[Complex64]) -> f64 {
        let mut s = self.zero_mult as f64;
        for (v, c) in &self.pairs {
            let z = Self::value(v, alphas);
            let neg: Vec<i32> = v.iter().map(|x| -x).collect();
            let zi = Self::value(&neg, alphas);
            s += *c as f64 * (z + zi).re;
        }
        s
    }

    /// mu(p^0)..mu(p^min(degree, max_power)) as real coefficients of the
    /// reciprocal local factor.
    pub fn mobius(&self, alphas: &[Complex64], max_power: usize) -> Vec<f64> {
        let cap = (self.degree() as usize).min(max_power);
        let mut c = vec![0.0f64; cap + 1];
        c[0] = 1.0;
        let mut deg = 0usize;
        for _ in 0..self.zero_mult {
            // factor (1 - x)
            let top = (deg + 1).min(cap);
            for a in (1..=top).rev() {
                c[a] -= c[a - 1];
            }
            deg += 1;
        }
        for (v, mult) in &self.pairs {
            let z = Self::value(v, alphas);
            let neg: Vec<i32> = v.iter().map(|x| -x).collect();
            let zi = Self::value(&neg, alphas);
            let s = (z + zi).re;
            let q = (z * zi).re;
            for _ in 0..*mult {
                // factor (1 - s x + q x^2)
                let top = (deg + 2).min(cap);
                for a in (1..=top).rev() {
                    let mut x = c[a];
                    x -= s * c[a - 1];
                    if a >= 2 {
                        x += q * c[a - 2];
                    }
                    c[a] = x;
                }
                deg += 2;
            }
        }
        c
    }

    /// All Satake values, one per multiset element (with multiplicity).
    pub fn satake_values(&self, alphas: &[Complex64]) -> Vec<Complex64> {
        let mut out = Vec::with_capacity(self.degree() as usize);
        for (v, c) in self.ms.entries() {
            let z = Self::value(v, alphas);
            for _ in 0..*c {
                out.push(z);
            }
        }
        out
    }
}

/// Full local data of `e` at prime `p`.
pub fn local_data(e: &RepExpr, p: u64, reg: &FormRegistry) -> Result<LocalData> {
    let ev = LocalEvaluator::new(e)?;
    let alphas = ev.alphas_at(p, reg)?;
    let degree = ev.degree();
    let lambda_p = ev.lambda(&alphas);
    let mobius = ev.mobius(&alphas, degree as usize);
    debug_assert!(
        (mobius[1.min(mobius.len() - 1)] + lambda_p).abs() <= 1e-9 * lambda_p.abs().max(1.0)
            || degree == 0
    );
    Ok(LocalData {
        p,
        degree,
        lambda_p,
        mobius,
        satake_values: ev.satake_values(&alphas),
    })
}
