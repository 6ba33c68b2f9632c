//! Maass-form Hecke eigenvalue datasets loaded from files.
//!
//! File format: a header line `R=<decimal>` (the spectral parameter, with
//! Laplace eigenvalue 1/4 + R^2), then lines `n,<decimal lambda(n)>` with
//! strictly increasing n starting at 1. A dataset is validated on load:
//! lambda(1) = 1, the Hecke recursion at every available prime power, and
//! multiplicativity on every available coprime pair. Rejection messages are
//! machine-parsable (error code plus file/line or prime-power location).

use std::collections::HashMap;
use std::io::{BufRead, BufReader};
use std::path::Path;

use crate::error::{Error, Result};
use crate::hecke;

/// Default relative tolerance for validating file data (public tables carry
/// 10-12 digits).
pub const DEFAULT_DATA_TOL: f64 = 1e-6;

/// Eigenvalue data of one Maass form, immutable after load.
#[derive(Clone, Debug)]
pub struct MaassDataset {
    pub id: String,
    /// Spectral parameter R (Laplace eigenvalue 1/4 + R^2).
    pub spectral_r: f64,
    /// Source path, recorded as provenance in report metadata.
    pub source: String,
    sorted: Vec<(u64, f64)>,
    lookup: HashMap<u64, f64>,
}

impl MaassDataset {
    pub fn lambda(&self, n: u64) -> Option<f64> {
        self.lookup.get(&n).copied()
    }

    pub fn max_n(&self) -> u64 {
        self.sorted.last().map(|&(n, _)| n).unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.sorted.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sorted.is_empty()
    }

    /// Entries in increasing n order.
    pub fn entries(&self) -> &[(u64, f64)] {
        &self.sorted
    }

    /// Symmetric-power eigenvalue S_j at p via the two-term recursion.
    ///
    /// Powers above 4 are refused: cuspidality of higher symmetric powers of
    /// Maass forms is not available, so experiments stay at j <= 4.
    pub fn sym_lambda(&self, p: u64, j: u32) -> Result<f64> {
        if j > 4 {
            return Err(Error::Capability(format!(
                "sym{j} of a Maass form: only j <= 4 is supported"
            )));
        }
        let lp = self.lambda(p).ok_or_else(|| {
            Error::data(
                "E_MAASS_RANGE",
                format!("maass:{}: no eigenvalue at prime {p}", self.id),
            )
        })?;
        Ok(hecke::sym_eigenvalue(lp, j))
    }
}

/// Load and validate a dataset; the id is the file stem.
pub fn load_maass(path: &Path) -> Result<MaassDataset> {
    load_maass_with_tol(path, DEFAULT_DATA_TOL)
}

pub fn load_maass_with_tol(path: &Path, tol: f64) -> Result<MaassDataset> {
    let id = path
        .file_stem()
        .and_then(|s| s.to_str())
        .ok_or_else(|| Error::data("E_MAASS_PATH", format!("{}: no file stem", path.display())))?
        .to_string();
    let file = std::fs::File::open(path).map_err(|e| {
        Error::data("E_MAASS_OPEN", format!("{}: {e}", path.display()))
    })?;
    let reader = BufReader::new(file);
    let loc = |line_no: usize, msg: String| {
        Error::data("E_MAASS_PARSE", format!("{}:{line_no}: {msg}", path.display()))
    };

    let mut spectral_r = None;
    let mut sorted: Vec<(u64, f64)> = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line_no = i + 1;
        let line = line?;
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        if spectral_r.is_none() {
            let r = t
                .strip_prefix("R=")
                .and_then(|s| s.trim().parse::<f64>().ok())
                .ok_or_else(|| loc(line_no, "expected header 'R=<decimal>'".into()))?;
            spectral_r = Some(r);
            continue;
        }
        let (n_s, v_s) = t
            .split_once(',')
            .ok_or_else(|| loc(line_no, "expected 'n,<decimal>'".into()))?;
        let n: u64 = n_s
            .trim()
            .parse()
            .map_err(|_| loc(line_no, format!("bad index '{n_s}'")))?;
        let v: f64 = v_s
            .trim()
            .parse()
            .map_err(|_| loc(line_no, format!("bad eigenvalue '{v_s}'")))?;
        if !v.is_finite() {
            return Err(loc(line_no, "eigenvalue is not finite".into()));
        }
        match sorted.last() {
            None => {
                if n != 1 {
                    return Err(loc(line_no, format!("first index must be 1, got {n}")));
                }
            }
            Some(&(prev, _)) => {
                if n <= prev {
                    return Err(loc(line_no, format!("indices must strictly increase ({prev} then {n})")));
                }
            }
        }
        sorted.push((n, v));
    }
    let spectral_r =
        spectral_r.ok_or_else(|| loc(0, "missing 'R=<decimal>' header".into()))?;
    if sorted.is_empty() {
        return Err(loc(0, "no eigenvalue lines".into()));
    }

    let lookup: HashMap<u64, f64> = sorted.iter().copied().collect();
    let ds = MaassDataset {
        id,
        spectral_r,
        source: path.display().to_string(),
        sorted,
        lookup,
    };
    validate(&ds, tol)?;
    Ok(ds)
}

fn validate(ds: &MaassDataset, tol: f64) -> Result<()> {
    let l1 = ds.lambda(1).expect("first entry is n=1");
    if (l1 - 1.0).abs() > 1e-9 {
        return Err(Error::data(
            "E_MAASS_NORM",
            format!("maass:{}: lambda(1) = {l1}, expected 1", ds.id),
        ));
    }

    let max_n = ds.max_n();
    // Hecke recursion lambda(p)lambda(p^a) = lambda(p^{a+1}) + lambda(p^{a-1})
    // wherever all three powers are present.
    for &(n, _) in ds.entries() {
        let p = n;
        if !is_prime_u64(p) {
            continue;
        }
        let lp = ds.lambda(p).unwrap();
        let mut a = 1u32;
        let mut pa = p;
        loop {
            let Some(next) = pa.checked_mul(p) else { break };
            if next > max_n {
                break;
            }
            let (la, lnext) = match (ds.lambda(pa), ds.lambda(next)) {
                (Some(x), Some(y)) => (x, y),
                _ => break,
            };
            let lprev = if a == 1 {
                1.0
            } else {
                match ds.lambda(pa / p) {
                    Some(x) => x,
                    None => break,
                }
            };
            let lhs = lp * la;
            let rhs = lnext + lprev;
            if (lhs - rhs).abs() > tol * lhs.abs().max(1.0) {
                return Err(Error::data(
                    "E_MAASS_HECKE",
                    format!(
                        "maass:{}: Hecke consistency failed at p={p} a={}: \
                         lambda(p)lambda(p^{a}) = {lhs} vs lambda(p^{}) + lambda(p^{}) = {rhs}",
                        ds.id,
                        a + 1,
                        a + 1,
                        a - 1
                    ),
                ));
            }
            a += 1;
            pa = next;
        }
    }

    // multiplicativity on available coprime pairs
    for &(m, lm) in ds.entries() {
        if m < 2 {
            continue;
        }
        if m.saturating_mul(m) > max_n {
            break;
        }
        for &(n, ln) in ds.entries() {
            if n < m {
                continue;
            }
            let Some(prod) = m.checked_mul(n) else { break };
            if prod > max_n {
                break;
            }
            if num_integer::gcd(m, n) != 1 {
                continue;
            }
            if let Some(lprod) = ds.lambda(prod) {
                let expect = lm * ln;
                if (lprod - expect).abs() > tol * expect.abs().max(1.0) {
                    return Err(Error::data(
                        "E_MAASS_MULT",
                        format!(
                            "maass:{}: multiplicativity failed at m={m} n={n}: \
                             lambda(mn) = {lprod} vs lambda(m)lambda(n) = {expect}",
                            ds.id
                        ),
                    ));
                }
            }
        }
    }
    Ok(())
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}
