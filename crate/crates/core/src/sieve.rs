//! Multiplicative extension of local Mobius data to mu(n), n <= N.
//!
//! A segmented sieve strips small prime factors (p <= sqrt(N)) from every n
//! in a segment while multiplying in the local factors mu(p^a); whatever is
//! left over after stripping is a single large prime, handled from a
//! precomputed mu(p) = -lambda(p) table. Segments are independent work
//! units, so the table is deterministic under any thread count.

use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hecke::satake;
use crate::localfactor::{local_data, LocalEvaluator};
use crate::primes::{prime_index, primes_up_to};
use crate::registry::FormRegistry;
use crate::repalg::RepExpr;

const SEGMENT: usize = 1 << 20;

/// Sieved values mu(1..N) for one representation expression.
#[derive(Clone, Debug)]
pub struct MobiusTable {
    n_max: u64,
    /// values[n] = mu(n); index 0 unused
    values: Vec<f64>,
    rep: String,
    degree: u64,
}

/// Partial-sum series at increasing checkpoints.
#[derive(Clone, Debug, PartialEq)]
pub struct PartialSumSeries {
    pub kind: SumKind,
    /// (x, S(x)); the meaning of S depends on `kind`
    pub points: Vec<(u64, f64)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SumKind {
    /// S(x) = sum_{n<=x} |mu(n)|
    AbsSum,
    /// S(x) = sum_{n<=x} mu(n)
    SignedSum,
    /// S(x) = |sum_{n<=x} mu(n) xi(n)| / x
    Correlation,
}

impl SumKind {
    pub fn name(self) -> &'static str {
        match self {
            SumKind::AbsSum => "abs_sum",
            SumKind::SignedSum => "signed_sum",
            SumKind::Correlation => "correlation",
        }
    }
}

/// Bounded test sequence for correlations.
#[derive(Clone, Debug, PartialEq)]
pub enum XiSpec {
    /// constant 1
    One,
    /// additive character e(alpha n)
    Character { alpha: f64 },
    /// values loaded from a file, one per line ("re" or "re,im"), line k = xi(k)
    File(std::path::PathBuf),
}

impl XiSpec {
    /// Accepts `1`, `e(<alpha>)`, or `file:<path>`.
    pub fn parse(s: &str) -> Result<XiSpec> {
        let t = s.trim();
        if t == "1" {
            return Ok(XiSpec::One);
        }
        if let Some(inner) = t.strip_prefix("e(").and_then(|x| x.strip_suffix(')')) {
            let alpha: f64 = inner.trim().parse().map_err(|_| {
                Error::argument(format!("bad character spec '{s}': expected e(<real>)"))
            })?;
            if !alpha.is_finite() {
                return Err(Error::argument("character parameter must be finite"));
            }
            return Ok(XiSpec::Character { alpha });
        }
        if let Some(path) = t.strip_prefix("file:") {
            return Ok(XiSpec::File(path.into()));
        }
        Err(Error::argument(format!(
            "bad xi spec '{s}': expected '1', 'e(<alpha>)' or 'file:<path>'"
        )))
    }

    fn load(&self, n_max: u64) -> Result<XiValues> {
        match self {
            XiSpec::One => Ok(XiValues::One),
            XiSpec::Character { alpha } => Ok(XiValues::Character { alpha: *alpha }),
            XiSpec::File(path) => {
                let f = std::fs::File::open(path).map_err(|e| {
                    Error::data("E_XI_FILE", format!("{}: {e}", path.display()))
                })?;
                let mut vals = Vec::new();
                for (i, line) in BufReader::new(f).lines().enumerate() {
                    let line = line?;
                    let t = line.trim();
                    if t.is_empty() {
                        // line k is xi(k): a blank interior line would shift
                        // every later index
                        return Err(Error::data(
                            "E_XI_FILE",
                            format!("{}:{}: blank line", path.display(), i + 1),
                        ));
                    }
                    let v = match t.split_once(',') {
                        Some((re, im)) => {
                            let re: f64 = re.trim().parse().map_err(|_| {
                                Error::data("E_XI_FILE", format!("{}:{}: bad value", path.display(), i + 1))
                            })?;
                            let im: f64 = im.trim().parse().map_err(|_| {
                                Error::data("E_XI_FILE", format!("{}:{}: bad value", path.display(), i + 1))
                            })?;
                            Complex64::new(re, im)
                        }
                        None => Complex64::new(
                            t.parse().map_err(|_| {
                                Error::data("E_XI_FILE", format!("{}:{}: bad value", path.display(), i + 1))
                            })?,
                            0.0,
                        ),
                    };
                    if !v.re.is_finite() || !v.im.is_finite() {
                        return Err(Error::data(
                            "E_XI_UNBOUNDED",
                            format!("{}:{}: sequence value is not finite", path.display(), i + 1),
                        ));
                    }
                    vals.push(v);
                    if vals.len() as u64 >= n_max {
                        break;
                    }
                }
                if (vals.len() as u64) < n_max {
                    return Err(Error::data(
                        "E_XI_FILE",
                        format!("{}: {} values, need {n_max}", path.display(), vals.len()),
                    ));
                }
                Ok(XiValues::File(vals))
            }
        }
    }
}

enum XiValues {
    One,
    Character { alpha: f64 },
    File(Vec<Complex64>),
}

impl XiValues {
    #[inline]
    fn at(&self, n: u64) -> Complex64 {
        match self {
            XiValues::One => Complex64::new(1.0, 0.0),
            XiValues::Character { alpha } => {
                let phase = 2.0 * std::f64::consts::PI * alpha * n as f64;
                Complex64::new(phase.cos(), phase.sin())
            }
            XiValues::File(v) => v[(n - 1) as usize],
        }
    }
}

/// Sieve mu(n) for n <= n_max. The registry must already hold eigenvalue
/// data for every prime up to n_max (see [`FormRegistry::prepare`]).
pub fn mobius_table(e: &RepExpr, n_max: u64, reg: &FormRegistry) -> Result<MobiusTable> {
    if n_max < 1 {
        return Err(Error::argument("mobius table needs N >= 1"));
    }
    let ev = LocalEvaluator::new(e)?;
    let degree = ev.degree();
    let primes = primes_up_to(n_max);
    let forms = ev.base_forms().to_vec();
    let lambda_vecs: Vec<Vec<f64>> = forms
        .iter()
        .map(|f| reg.lambda_vector(f, &primes))
        .collect::<Result<_>>()?;

    // mu(p) = -lambda(p) for every prime
    let mu1: Vec<f64> = (0..primes.len())
        .into_par_iter()
        .map(|i| {
            let alphas: Vec<Complex64> = lambda_vecs.iter().map(|v| satake(v[i]).alpha).collect();
            -ev.lambda(&alphas)
        })
        .collect();

    // full mu(p^a) tables for small primes (p^2 <= n_max)
    let sqrt_n = n_max.isqrt();
    let small_count = primes.partition_point(|&p| p <= sqrt_n);
    let mu_pows: Vec<Vec<f64>> = (0..small_count)
        .into_par_iter()
        .map(|i| {
            let p = primes[i];
            let mut a_max = 0usize;
            let mut pw = 1u64;
            while pw <= n_max / p {
                pw *= p;
                a_max += 1;
            }
            let alphas: Vec<Complex64> = lambda_vecs.iter().map(|v| satake(v[i]).alpha).collect();
            ev.mobius(&alphas, a_max)
        })
        .collect();

    let mut values = vec![1.0f64; n_max as usize + 1];
    values[0] = 0.0;
    let body = &mut values[1..];
    let small_primes = &primes[..small_count];
    body.par_chunks_mut(SEGMENT).enumerate().for_each(|(ci, chunk)| {
        let lo = ci as u64 * SEGMENT as u64 + 1; // value of chunk[0]
        let hi = lo + chunk.len() as u64; // exclusive
        let mut rem: Vec<u64> = (lo..hi).collect();
        for (i, &p) in small_primes.iter().enumerate() {
            let start = lo.next_multiple_of(p);
            let pows = &mu_pows[i];
            let mut m = start;
            while m < hi {
                let idx = (m - lo) as usize;
                let mut a = 0usize;
                while rem[idx].is_multiple_of(p) {
                    rem[idx] /= p;
                    a += 1;
                }
                chunk[idx] *= if a < pows.len() { pows[a] } else { 0.0 };
                m += p;
            }
        }
        for idx in 0..chunk.len() {
            let q = rem[idx];
            if q > 1 {
                let r = prime_index(&primes, q).expect("leftover cofactor is prime");
                chunk[idx] *= mu1[r];
            }
        }
    });

    Ok(MobiusTable {
        n_max,
        values,
        rep: e.to_string(),
        degree,
    })
}

/// Checkpoints at powers of 10 up to n, always ending at n itself.
pub fn decade_checkpoints(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut x = 1u64;
    while x <= n {
        out.push(x);
        match x.checked_mul(10) {
            Some(next) => x = next,
            None => break,
        }
    }
    if out.last() != Some(&n) && n >= 1 {
        out.push(n);
    }
    out
}

impl MobiusTable {
    pub fn n_max(&self) -> u64 {
        self.n_max
    }

    pub fn rep(&self) -> &str {
        &self.rep
    }

    pub fn degree(&self) -> u64 {
        self.degree
    }

    pub fn value(&self, n: u64) -> f64 {
        assert!(n >= 1 && n <= self.n_max);
        self.values[n as usize]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    fn validated_checkpoints(&self, checkpoints: &[u64]) -> Result<Vec<u64>> {
        if checkpoints.iter().any(|&x| x > self.n_max) {
            return Err(Error::argument(format!(
                "checkpoint beyond table bound {}",
                self.n_max
            )));
        }
        let mut cps: Vec<u64> = checkpoints.iter().copied().filter(|&x| x >= 1).collect();
        cps.sort_unstable();
        cps.dedup();
        if cps.is_empty() {
            return Err(Error::argument("no valid checkpoints"));
        }
        Ok(cps)
    }

    /// S(x) = sum_{n<=x} |mu(n)| at each checkpoint, one pass.
    pub fn abs_partial_sums(&self, checkpoints: &[u64]) -> Result<PartialSumSeries> {
        let cps = self.validated_checkpoints(checkpoints)?;
        let mut points = Vec::with_capacity(cps.len());
        let mut acc = 0.0f64;
        let mut next = 0usize;
        for n in 1..=self.n_max {
            acc += self.values[n as usize].abs();
            while next < cps.len() && cps[next] == n {
                points.push((n, acc));
                next += 1;
            }
        }
        Ok(PartialSumSeries {
            kind: SumKind::AbsSum,
            points,
        })
    }

    /// Signed partial sums sum_{n<=x} mu(n) (generalized Mertens function).
    pub fn signed_partial_sums(&self, checkpoints: &[u64]) -> Result<PartialSumSeries> {
        let cps = self.validated_checkpoints(checkpoints)?;
        let mut points = Vec::with_capacity(cps.len());
        let mut acc = 0.0f64;
        let mut next = 0usize;
        for n in 1..=self.n_max {
            acc += self.values[n as usize];
            while next < cps.len() && cps[next] == n {
                points.push((n, acc));
                next += 1;
            }
        }
        Ok(PartialSumSeries {
            kind: SumKind::SignedSum,
            points,
        })
    }

    /// (1/x) |sum_{n<=x} mu(n) xi(n)| at each checkpoint.
    ///
    /// Summation is a single sequential pass in index order, so results are
    /// byte-reproducible for a fixed build regardless of thread budget.
    pub fn correlate(&self, xi: &XiSpec, checkpoints: &[u64]) -> Result<PartialSumSeries> {
        let cps = self.validated_checkpoints(checkpoints)?;
        let xiv = xi.load(self.n_max)?;
        let mut points = Vec::with_capacity(cps.len());
        let mut acc = Complex64::new(0.0, 0.0);
        let mut next = 0usize;
        for n in 1..=self.n_max {
            let mu = self.values[n as usize];
            if mu != 0.0 {
                acc += mu * xiv.at(n);
            }
            while next < cps.len() && cps[next] == n {
                points.push((n, acc.norm() / n as f64));
                next += 1;
            }
        }
        Ok(PartialSumSeries {
            kind: SumKind::Correlation,
            points,
        })
    }

    /// Columnar persistence: `n,mu(n)` per line under a three-line header.
    pub fn write_columnar(&self, path: &Path) -> Result<()> {
        let mut w = std::io::BufWriter::new(std::fs::File::create(path)?);
        writeln!(w, "rep {}", self.rep)?;
        writeln!(w, "N {}", self.n_max)?;
        writeln!(w, "degree {}", self.degree)?;
        for n in 1..=self.n_max {
            writeln!(w, "{n},{}", self.values[n as usize])?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn read_columnar(path: &Path) -> Result<MobiusTable> {
        let mut r = BufReader::new(std::fs::File::open(path)?);
        let mut line = String::new();
        r.read_line(&mut line)?;
        let rep = line
            .strip_prefix("rep ")
            .ok_or_else(|| Error::data("E_TABLE", "missing rep header".to_string()))?
            .trim()
            .to_string();
        line.clear();
        r.read_line(&mut line)?;
        let n_max: u64 = line
            .strip_prefix("N ")
            .and_then(|s| s.trim().parse().ok())
            .ok_or_else(|| Error::data("E_TABLE", "missing N header".to_string()))?;
        line.clear();
        r.read_line(&mut line)?;
        let degree: u64 = line
            .strip_prefix("degree ")
            .and_then(|s| s.trim().parse().ok())
            .ok_or_else(|| Error::data("E_TABLE", "missing degree header".to_string()))?;
        let mut values = vec![0.0f64; n_max as usize + 1];
        let mut count = 0u64;
        loop {
            line.clear();
            if r.read_line(&mut line)? == 0 {
                break;
            }
            let t = line.trim();
            if t.is_empty() {
                continue;
            }
            let (n, v) = t
                .split_once(',')
                .ok_or_else(|| Error::data("E_TABLE", format!("malformed row '{t}'")))?;
            let n: u64 = n
                .parse()
                .map_err(|_| Error::data("E_TABLE", format!("bad index '{n}'")))?;
            if n < 1 || n > n_max {
                return Err(Error::data("E_TABLE", format!("index {n} out of range")));
            }
            values[n as usize] = v
                .parse()
                .map_err(|_| Error::data("E_TABLE", format!("bad value '{v}'")))?;
            count += 1;
        }
        if count != n_max {
            return Err(Error::data(
                "E_TABLE",
                format!("expected {n_max} rows, found {count}"),
            ));
        }
        Ok(MobiusTable {
            n_max,
            values,
            rep,
            degree,
        })
    }

    /// Randomized consistency checks: multiplicativity on coprime pairs and
    /// agreement with recomputation from factorization + local data.
    pub fn spot_check(
        &self,
        e: &RepExpr,
        reg: &FormRegistry,
        seed: u64,
        count: usize,
    ) -> Result<SpotCheckReport> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = self.n_max;
        let mut max_pair_dev = 0.0f64;
        let mut pairs = 0usize;
        if n >= 6 {
            while pairs < count {
                let m = rng.gen_range(2..=n.isqrt());
                let q = rng.gen_range(2..=n / m);
                if num_integer::gcd(m, q) != 1 {
                    continue;
                }
                let lhs = self.value(m * q);
                let rhs = self.value(m) * self.value(q);
                let dev = (lhs - rhs).abs() / (1.0 + rhs.abs());
                max_pair_dev = max_pair_dev.max(dev);
                if dev > 1e-6 {
                    return Err(Error::internal(format!(
                        "multiplicativity violated at m={m} n={q}: {lhs} vs {rhs}"
                    )));
                }
                pairs += 1;
            }
        }

        let mut max_value_dev = 0.0f64;
        for _ in 0..count {
            let target = rng.gen_range(1..=n);
            let mut rest = target;
            let mut recomputed = 1.0f64;
            let mut p = 2u64;
            while p * p <= rest {
                if rest % p == 0 {
                    let mut a = 0usize;
                    while rest % p == 0 {
                        rest /= p;
                        a += 1;
                    }
                    let ld = local_data(e, p, reg)?;
                    recomputed *= ld.mobius.get(a).copied().unwrap_or(0.0);
                }
                p += 1;
            }
            if rest > 1 {
                let ld = local_data(e, rest, reg)?;
                recomputed *= ld.mobius.get(1).copied().unwrap_or(0.0);
            }
            let dev = (self.value(target) - recomputed).abs();
            max_value_dev = max_value_dev.max(dev);
            if dev > 1e-9 * (1.0 + recomputed.abs()) {
                return Err(Error::internal(format!(
                    "table disagrees with local recomputation at n={target}: {} vs {recomputed}",
                    self.value(target)
                )));
            }
        }
        Ok(SpotCheckReport {
            pairs_checked: pairs,
            max_pair_deviation: max_pair_dev,
            values_checked: count,
            max_value_deviation: max_value_dev,
        })
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SpotCheckReport {
    pub pairs_checked: usize,
    pub max_pair_deviation: f64,
    pub values_checked: usize,
    pub max_value_deviation: f64,
}
