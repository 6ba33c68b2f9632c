//! Session registry of eigenvalue data for base forms.
//!
//! Holomorphic eigenvalues are produced on demand from the exact q-expansion
//! layer (optionally cached on disk, one table per form id and truncation
//! bound); Maass eigenvalues come from loaded data files. The registry hands
//! out `lambda(p)` vectors aligned with a prime list, which is all the sieve
//! and experiment layers ever need.

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::hecke::{self, NORMALIZE_PRECISION_BITS};
use crate::maass::{self, MaassDataset};
use crate::primes::primes_up_to;
use crate::qseries::{self, EigenformSpec, HoloForm};
use crate::repalg::{FormId, RepExpr};

/// Normalized eigenvalues of one holomorphic form at all primes up to a bound.
#[derive(Clone, Debug)]
pub struct EigenvalueTable {
    pub form: HoloForm,
    pub prime_limit: u64,
    /// All primes up to `prime_limit`.
    pub primes: Vec<u64>,
    /// lambda(p) aligned with `primes`.
    pub lambda: Vec<f64>,
    pub source_precision_bits: u32,
}

#[derive(Default)]
pub struct FormRegistry {
    cache_dir: Option<PathBuf>,
    holo: BTreeMap<HoloForm, EigenvalueTable>,
    maass: BTreeMap<String, MaassDataset>,
}

impl FormRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    /// Directory for exact coefficient tables (`<form>_Nq<limit>.txt`).
    pub fn set_cache_dir(&mut self, dir: impl Into<PathBuf>) {
        self.cache_dir = Some(dir.into());
    }

    /// Load a Maass dataset file and register it; returns the session id
    /// (`maass:<file stem>`).
    pub fn load_maass_file(&mut self, path: &Path) -> Result<String> {
        let ds = maass::load_maass(path)?;
        let id = ds.id.clone();
        self.maass.insert(id.clone(), ds);
        Ok(format!("maass:{id}"))
    }

    pub fn maass_ids(&self) -> BTreeSet<String> {
        self.maass.keys().cloned().collect()
    }

    pub fn maass_dataset(&self, id: &str) -> Option<&MaassDataset> {
        self.maass.get(id)
    }

    pub fn holo_table(&self, form: HoloForm) -> Option<&EigenvalueTable> {
        self.holo.get(&form)
    }

    /// Make sure eigenvalues lambda(p) exist for every prime p <= limit for
    /// every base form of `e`. Holomorphic tables are computed (or read from
    /// cache); Maass coverage is checked against the loaded data.
    pub fn prepare(&mut self, e: &RepExpr, limit: u64) -> Result<()> {
        let primes = primes_up_to(limit);
        for form in e.base_forms() {
            match form {
                FormId::Holo(h) => self.ensure_holo(h, limit, &primes)?,
                FormId::Maass(id) => {
                    let ds = self.maass.get(&id).ok_or_else(|| {
                        Error::data("E_MAASS_MISSING", format!("maass:{id}: no data file loaded"))
                    })?;
                    for &p in &primes {
                        if ds.lambda(p).is_none() {
                            return Err(Error::data(
                                "E_MAASS_RANGE",
                                format!("maass:{id}: missing eigenvalue at prime {p} (need all p <= {limit})"),
                            ));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn ensure_holo(&mut self, form: HoloForm, limit: u64, primes: &[u64]) -> Result<()> {
        if let Some(t) = self.holo.get(&form) {
            if t.prime_limit >= limit {
                return Ok(());
            }
        }
        let spec = EigenformSpec::new(form);
        let series = self.coefficients_for(form, limit as usize)?;
        let k = spec.weight;
        let lambda: Vec<f64> = primes
            .iter()
            .map(|&p| hecke::normalize(&series.coeff(p as usize), p, k))
            .collect();
        self.holo.insert(
            form,
            EigenvalueTable {
                form,
                prime_limit: limit,
                primes: primes.to_vec(),
                lambda,
                source_precision_bits: NORMALIZE_PRECISION_BITS,
            },
        );
        Ok(())
    }

    /// Exact coefficient series for one form, going through the on-disk
    /// cache when a cache dir is configured.
    pub fn coefficients_for(&self, form: HoloForm, n_q: usize) -> Result<qseries::IntSeries> {
        let name = form.name();
        let cache_path = self
            .cache_dir
            .as_ref()
            .map(|d| d.join(format!("{name}_Nq{n_q}.txt")));
        if let Some(p) = &cache_path {
            if p.exists() {
                return qseries::read_cache(p, name);
            }
        }
        let series = qseries::eigenform_coeffs(EigenformSpec::new(form), n_q)?;
        if let Some(p) = &cache_path {
            std::fs::create_dir_all(p.parent().unwrap()).ok();
            qseries::write_cache(p, name, &series)?;
        }
        Ok(series)
    }

    /// lambda(p) for one form at one prime.
    pub fn lambda_p(&self, form: &FormId, p: u64) -> Result<f64> {
        match form {
            FormId::Holo(h) => {
                let t = self.holo.get(h).ok_or_else(|| {
                    Error::data("E_FORM_UNPREPARED", format!("{}: eigenvalues not prepared", h.name()))
                })?;
                if p > t.prime_limit {
                    return Err(Error::data(
                        "E_FORM_RANGE",
                        format!("{}: prime {p} beyond prepared limit {}", h.name(), t.prime_limit),
                    ));
                }
                let idx = crate::primes::prime_index(&t.primes, p)
                    .ok_or_else(|| Error::argument(format!("{p} is not prime")))?;
                Ok(t.lambda[idx])
            }
            FormId::Maass(id) => {
                let ds = self.maass.get(id).ok_or_else(|| {
                    Error::data("E_MAASS_MISSING", format!("maass:{id}: no data file loaded"))
                })?;
                ds.lambda(p).ok_or_else(|| {
                    Error::data(
                        "E_MAASS_RANGE",
                        format!("maass:{id}: missing eigenvalue at prime {p}"),
                    )
                })
            }
        }
    }

    /// lambda(p) for one form aligned with the given prime list.
    pub fn lambda_vector(&self, form: &FormId, primes: &[u64]) -> Result<Vec<f64>> {
        match form {
            FormId::Holo(h) => {
                let t = self.holo.get(h).ok_or_else(|| {
                    Error::data("E_FORM_UNPREPARED", format!("{}: eigenvalues not prepared", h.name()))
                })?;
                let limit = primes.last().copied().unwrap_or(0);
                if limit > t.prime_limit {
                    return Err(Error::data(
                        "E_FORM_RANGE",
                        format!("{}: prime {limit} beyond prepared limit {}", h.name(), t.prime_limit),
                    ));
                }
                Ok(t.lambda[..primes.len()].to_vec())
            }
            FormId::Maass(id) => {
                let ds = self.maass.get(id).ok_or_else(|| {
                    Error::data("E_MAASS_MISSING", format!("maass:{id}: no data file loaded"))
                })?;
                primes
                    .iter()
                    .map(|&p| {
                        ds.lambda(p).ok_or_else(|| {
                            Error::data(
                                "E_MAASS_RANGE",
                                format!("maass:{id}: missing eigenvalue at prime {p}"),
                            )
                        })
                    })
                    .collect()
            }
        }
    }

    /// Provenance entries (id, source path, spectral R) for loaded datasets.
    pub fn maass_provenance(&self) -> Vec<(String, String, f64)> {
        self.maass
            .values()
            .map(|d| (d.id.clone(), d.source.clone(), d.spectral_r))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prepare_and_lookup_holo() {
        let mut reg = FormRegistry::new();
        let e = crate::repalg::parse_rep("sym1(f12)", &BTreeSet::new()).unwrap();
        reg.prepare(&e, 100).unwrap();
        let f12 = FormId::Holo(HoloForm::F12);
        let l2 = reg.lambda_p(&f12, 2).unwrap();
        assert!((l2 - (-0.5303300858899106)).abs() < 1e-12);
        // tau(3) = 252; lambda(3) = 252 / 3^5.5
        let l3 = reg.lambda_p(&f12, 3).unwrap();
        assert!((l3 - 252.0 / 3f64.powf(5.5)).abs() < 1e-12);
        assert!(reg.lambda_p(&f12, 101).is_err());
        assert!(reg.lambda_p(&FormId::Holo(HoloForm::F16), 2).is_err());
    }

    #[test]
    fn deligne_bound_on_prepared_tables() {
        let mut reg = FormRegistry::new();
        let e = crate::repalg::parse_rep("sym1(f26) x sym1(f22)", &BTreeSet::new()).unwrap();
        reg.prepare(&e, 2000).unwrap();
        for h in [HoloForm::F22, HoloForm::F26] {
            let t = reg.holo_table(h).unwrap();
            for &l in &t.lambda {
                assert!(l.abs() <= 2.0 + 1e-12);
            }
        }
    }

    #[test]
    fn cache_round_trip_used() {
        let dir = tempfile::tempdir().unwrap();
        let mut reg = FormRegistry::new();
        reg.set_cache_dir(dir.path());
        let e = crate::repalg::parse_rep("sym1(f16)", &BTreeSet::new()).unwrap();
        reg.prepare(&e, 50).unwrap();
        let cache_file = dir.path().join("f16_Nq50.txt");
        assert!(cache_file.exists());
        // a second registry must reproduce identical values through the cache
        let mut reg2 = FormRegistry::new();
        reg2.set_cache_dir(dir.path());
        reg2.prepare(&e, 50).unwrap();
        let f16 = FormId::Holo(HoloForm::F16);
        for p in [2u64, 3, 5, 47] {
            assert_eq!(
                reg.lambda_p(&f16, p).unwrap(),
                reg2.lambda_p(&f16, p).unwrap()
            );
        }
    }
}
