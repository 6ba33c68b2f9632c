//! Exact integer q-expansions of the level-one eigenforms.
//!
//! Everything in this module is arbitrary-precision integer arithmetic; the
//! floating-point layer starts one level up (see [`crate::hecke`]). A series
//! carries its truncation bound with it, and products never silently extend
//! past the shorter operand's bound.

mod ntt;

use std::fmt::Write as _;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Truncation bound marking an exact polynomial/constant (no O(q^N) tail).
const EXACT: usize = usize::MAX;

/// A power series with exact integer coefficients, truncated at `q^trunc`.
///
/// `coeffs[n]` is the coefficient of `q^n`. Indices past `coeffs.len() - 1`
/// up to `trunc` are exact zeros and are not stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntSeries {
    coeffs: Vec<BigInt>,
    trunc: usize,
}

impl IntSeries {
    pub fn new(coeffs: Vec<BigInt>, trunc: usize) -> Self {
        assert!(!coeffs.is_empty(), "a series stores at least its constant term");
        assert!(coeffs.len() <= trunc.saturating_add(1));
        IntSeries { coeffs, trunc }
    }

    /// The exact constant `c`, valid to every order.
    pub fn constant(c: i64) -> Self {
        IntSeries {
            coeffs: vec![BigInt::from(c)],
            trunc: EXACT,
        }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    /// Truncation bound N_q (largest index with a defined coefficient).
    pub fn trunc(&self) -> usize {
        self.trunc
    }

    /// Coefficient of `q^n`; `n` must not exceed the truncation bound.
    pub fn coeff(&self, n: usize) -> BigInt {
        assert!(n <= self.trunc, "coefficient q^{n} beyond truncation bound");
        self.coeffs.get(n).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Largest magnitude bit length among stored coefficients.
    pub fn max_bits(&self) -> u64 {
        self.coeffs.iter().map(|c| c.magnitude().bits()).max().unwrap_or(0)
    }
}

/// Cauchy product truncated at the shorter operand's bound.
pub fn multiply(a: &IntSeries, b: &IntSeries) -> IntSeries {
    let trunc = a.trunc.min(b.trunc);
    let full = a.coeffs.len() + b.coeffs.len() - 1;
    let out_len = full.min(trunc.saturating_add(1));
    let coeffs = ntt::convolve(&a.coeffs, &b.coeffs, out_len);
    IntSeries::new(coeffs, trunc)
}

/// `prod_{n>=1} (1 - q^n)` truncated at `q^trunc` (pentagonal number series).
pub fn pentagonal_series(trunc: usize) -> IntSeries {
    let mut coeffs = vec![BigInt::zero(); trunc + 1];
    coeffs[0] = BigInt::one();
    let mut k: i64 = 1;
    loop {
        let mut hit = false;
        for e in [k * (3 * k - 1) / 2, k * (3 * k + 1) / 2] {
            let e = e as usize;
            if e <= trunc {
                hit = true;
                coeffs[e] = if k % 2 == 1 {
                    BigInt::from(-1)
                } else {
                    BigInt::one()
                };
            }
        }
        if !hit {
            break;
        }
        k += 1;
    }
    IntSeries::new(coeffs, trunc)
}

/// `prod_{n>=1} (1 - q^n)^3` truncated at `q^trunc`. Sparse closed form:
/// coefficient `(-1)^k (2k+1)` at `q^{k(k+1)/2}`, zero elsewhere.
fn eta_cube_series(trunc: usize) -> IntSeries {
    let mut coeffs = vec![BigInt::zero(); trunc + 1];
    let mut k: u64 = 0;
    loop {
        let e = (k * (k + 1) / 2) as usize;
        if e > trunc {
            break;
        }
        let c = 2 * k as i64 + 1;
        coeffs[e] = BigInt::from(if k % 2 == 1 { -c } else { c });
        k += 1;
    }
    IntSeries::new(coeffs, trunc)
}

/// Coefficients of the discriminant form: `q * prod (1 - q^n)^24`.
///
/// The 24th power is assembled as ((P^3)^2)^2)^2 from the sparse cube, i.e.
/// three squarings instead of 24 dense products.
pub fn delta_expansion(n_q: usize) -> Result<IntSeries> {
    if n_q == 0 {
        return Err(Error::argument("delta expansion needs N_q >= 1"));
    }
    let inner = n_q - 1;
    let cube = eta_cube_series(inner);
    let p6 = multiply(&cube, &cube);
    let p12 = multiply(&p6, &p6);
    let p24 = multiply(&p12, &p12);
    let mut coeffs = Vec::with_capacity(n_q + 1);
    coeffs.push(BigInt::zero());
    coeffs.extend_from_slice(p24.coeffs());
    Ok(IntSeries::new(coeffs, n_q))
}

/// Normalized Eisenstein series E4 or E6 with exact integer coefficients.
pub fn eisenstein(k: u32, n_q: usize) -> Result<IntSeries> {
    let (mult, pow): (i64, u32) = match k {
        4 => (240, 3),
        6 => (-504, 5),
        _ => return Err(Error::argument(format!("eisenstein weight {k} not in {{4, 6}}"))),
    };
    let mut sigma = vec![0u128; n_q + 1];
    for d in 1..=n_q as u64 {
        let dp = (d as u128).pow(pow);
        let mut m = d as usize;
        while m <= n_q {
            sigma[m] += dp;
            m += d as usize;
        }
    }
    let mut coeffs = Vec::with_capacity(n_q + 1);
    coeffs.push(BigInt::one());
    for s in sigma.into_iter().skip(1) {
        coeffs.push(BigInt::from(mult) * BigInt::from(s));
    }
    Ok(IntSeries::new(coeffs, n_q))
}

/// The six level-one normalized eigenforms realized by {Delta, E4, E6}
/// products (one-dimensional cusp spaces).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum HoloForm {
    F12,
    F16,
    F18,
    F20,
    F22,
    F26,
}

impl HoloForm {
    pub const ALL: [HoloForm; 6] = [
        HoloForm::F12,
        HoloForm::F16,
        HoloForm::F18,
        HoloForm::F20,
        HoloForm::F22,
        HoloForm::F26,
    ];

    pub fn weight(self) -> u32 {
        match self {
            HoloForm::F12 => 12,
            HoloForm::F16 => 16,
            HoloForm::F18 => 18,
            HoloForm::F20 => 20,
            HoloForm::F22 => 22,
            HoloForm::F26 => 26,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            HoloForm::F12 => "f12",
            HoloForm::F16 => "f16",
            HoloForm::F18 => "f18",
            HoloForm::F20 => "f20",
            HoloForm::F22 => "f22",
            HoloForm::F26 => "f26",
        }
    }

    pub fn from_name(s: &str) -> Option<HoloForm> {
        HoloForm::ALL.iter().copied().find(|f| f.name() == s)
    }
}

/// Construction recipe for one eigenform: `E4^a * E6^b * Delta`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EigenformSpec {
    pub id: HoloForm,
    pub weight: u32,
    pub e4_power: u32,
    pub e6_power: u32,
}

impl EigenformSpec {
    pub fn new(id: HoloForm) -> Self {
        let (e4_power, e6_power) = match id {
            HoloForm::F12 => (0, 0),
            HoloForm::F16 => (1, 0),
            HoloForm::F18 => (0, 1),
            HoloForm::F20 => (2, 0),
            HoloForm::F22 => (1, 1),
            HoloForm::F26 => (2, 1),
        };
        let weight = 12 + 4 * e4_power + 6 * e6_power;
        debug_assert_eq!(weight, id.weight());
        EigenformSpec {
            id,
            weight,
            e4_power,
            e6_power,
        }
    }
}

/// Exact coefficients a_f(n), n <= N_q, of the normalized eigenform.
pub fn eigenform_coeffs(spec: EigenformSpec, n_q: usize) -> Result<IntSeries> {
    if n_q == 0 {
        return Err(Error::argument("eigenform expansion needs N_q >= 1"));
    }
    let mut s = delta_expansion(n_q)?;
    if spec.e4_power > 0 {
        let e4 = eisenstein(4, n_q)?;
        for _ in 0..spec.e4_power {
            s = multiply(&s, &e4);
        }
    }
    if spec.e6_power > 0 {
        let e6 = eisenstein(6, n_q)?;
        for _ in 0..spec.e6_power {
            s = multiply(&s, &e6);
        }
    }
    debug_assert!(s.coeff(1).is_one());
    Ok(s)
}

/// Write a coefficient table `n a_f(n)` in decimal; exact round trip.
pub fn write_cache(path: &Path, form: &str, series: &IntSeries) -> Result<()> {
    let tmp = path.with_extension("tmp");
    {
        let mut w = std::io::BufWriter::new(std::fs::File::create(&tmp)?);
        writeln!(w, "form {form}")?;
        writeln!(w, "trunc {}", series.trunc())?;
        let mut line = String::new();
        for (n, c) in series.coeffs().iter().enumerate() {
            line.clear();
            let _ = write!(line, "{n} {c}");
            writeln!(w, "{line}")?;
        }
        w.flush()?;
    }
    std::fs::rename(&tmp, path)?;
    Ok(())
}

/// Read a table written by [`write_cache`]; checks the form id matches.
pub fn read_cache(path: &Path, form: &str) -> Result<IntSeries> {
    let mut r = BufReader::new(std::fs::File::open(path)?);
    let mut line = String::new();
    r.read_line(&mut line)?;
    let got = line
        .strip_prefix("form ")
        .map(str::trim)
        .ok_or_else(|| Error::data("E_CACHE", format!("{}: missing form header", path.display())))?;
    if got != form {
        return Err(Error::data(
            "E_CACHE",
            format!("{}: cache is for form {got}, wanted {form}", path.display()),
        ));
    }
    line.clear();
    r.read_line(&mut line)?;
    let trunc: usize = line
        .strip_prefix("trunc ")
        .and_then(|s| s.trim().parse().ok())
        .ok_or_else(|| Error::data("E_CACHE", format!("{}: bad trunc header", path.display())))?;
    let mut coeffs = Vec::with_capacity(trunc + 1);
    loop {
        line.clear();
        if r.read_line(&mut line)? == 0 {
            break;
        }
        let t = line.trim();
        if t.is_empty() {
            continue;
        }
        let (n, c) = t
            .split_once(' ')
            .ok_or_else(|| Error::data("E_CACHE", format!("{}: malformed line", path.display())))?;
        let n: usize = n
            .parse()
            .map_err(|_| Error::data("E_CACHE", format!("{}: bad index", path.display())))?;
        if n != coeffs.len() {
            return Err(Error::data(
                "E_CACHE",
                format!("{}: non-contiguous index {n}", path.display()),
            ));
        }
        let c: BigInt = c
            .parse()
            .map_err(|_| Error::data("E_CACHE", format!("{}: bad coefficient", path.display())))?;
        coeffs.push(c);
    }
    if coeffs.is_empty() {
        return Err(Error::data("E_CACHE", format!("{}: empty table", path.display())));
    }
    Ok(IntSeries::new(coeffs, trunc))
}
