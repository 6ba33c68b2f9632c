//! Desk-scale quantitative experiments: Mertens-type prime sums, inequality
//! grids, the decay exponent, absolute-value decay trends, and the Maass
//! bound bookkeeping.
//!
//! Everything here reports measured values against predicted slopes or
//! bounds; nothing asserts an asymptotic statement. Summation orders are
//! fixed (primes ascending), so reports are reproducible byte for byte.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hecke::satake;
use crate::localfactor::LocalEvaluator;
use crate::maass::MaassDataset;
use crate::primes::primes_up_to;
use crate::registry::FormRegistry;
use crate::repalg::{FormId, RepExpr};
use crate::sieve::{mobius_table, MobiusTable};

/// Prime-sum weight selector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Moment {
    Abs,
    Square,
    Fourth,
    Unit,
}

impl Moment {
    pub fn parse(s: &str) -> Result<Moment> {
        match s {
            "abs" => Ok(Moment::Abs),
            "square" => Ok(Moment::Square),
            "fourth" => Ok(Moment::Fourth),
            "unit" => Ok(Moment::Unit),
            _ => Err(Error::argument(format!(
                "unknown moment '{s}': expected abs|square|fourth|unit"
            ))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Moment::Abs => "abs",
            Moment::Square => "square",
            Moment::Fourth => "fourth",
            Moment::Unit => "unit",
        }
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct MertensPoint {
    pub x: u64,
    /// sum_{p<=x} w(p)/p
    pub sum: f64,
    pub loglog_x: f64,
    /// sum - c*loglog(x) when a predicted slope c exists
    pub drift: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct MertensReport {
    pub rep: String,
    pub moment: Moment,
    /// Slope predicted for the weight: 1 (square and unit), d_pi (fourth).
    pub predicted_slope: Option<f64>,
    /// Least-squares slope of sum against loglog x over the checkpoints.
    pub fitted_slope: Option<f64>,
    pub points: Vec<MertensPoint>,
}

fn loglog(x: u64) -> f64 {
    (x as f64).ln().ln()
}

/// Mertens-type sum of w(p)/p for p <= x_max, reported at checkpoints.
pub fn mertens_sum(
    e: &RepExpr,
    moment: Moment,
    x_max: u64,
    reg: &FormRegistry,
    checkpoints: &[u64],
) -> Result<MertensReport> {
    let mut cps: Vec<u64> = checkpoints.to_vec();
    cps.sort_unstable();
    cps.dedup();
    if cps.is_empty() || *cps.last().unwrap() > x_max {
        return Err(Error::argument("checkpoints must be nonempty and <= x_max"));
    }

    let ev = LocalEvaluator::new(e)?;
    let degree = ev.degree();
    let primes = primes_up_to(x_max);
    let forms = ev.base_forms().to_vec();
    let lambda_vecs: Vec<Vec<f64>> = forms
        .iter()
        .map(|f| reg.lambda_vector(f, &primes))
        .collect::<Result<_>>()?;

    let predicted_slope = match moment {
        Moment::Square | Moment::Unit => Some(1.0),
        Moment::Fourth => Some(degree as f64),
        Moment::Abs => None,
    };

    let mut points = Vec::with_capacity(cps.len());
    let mut acc = 0.0f64;
    let mut next = 0usize;
    let push_through = |points: &mut Vec<MertensPoint>, upto: u64, acc: f64, next: &mut usize| {
        while *next < cps.len() && cps[*next] <= upto {
            let x = cps[*next];
            let ll = loglog(x);
            points.push(MertensPoint {
                x,
                sum: acc,
                loglog_x: ll,
                drift: predicted_slope
                    .and_then(|c| ll.is_finite().then_some(acc - c * ll)),
            });
            *next += 1;
        }
    };
    for (i, &p) in primes.iter().enumerate() {
        push_through(&mut points, p - 1, acc, &mut next);
        let lam = if forms.is_empty() {
            ev.lambda(&[])
        } else {
            let alphas: Vec<_> = lambda_vecs.iter().map(|v| satake(v[i]).alpha).collect();
            ev.lambda(&alphas)
        };
        let w = match moment {
            Moment::Abs => lam.abs(),
            Moment::Square => lam * lam,
            Moment::Fourth => lam * lam * lam * lam,
            Moment::Unit => 1.0,
        };
        acc += w / p as f64;
        push_through(&mut points, p, acc, &mut next);
    }
    push_through(&mut points, x_max, acc, &mut next);

    let fitted_slope = fit_slope(
        points
            .iter()
            .filter(|pt| pt.loglog_x.is_finite())
            .map(|pt| (pt.loglog_x, pt.sum)),
    );
    Ok(MertensReport {
        rep: e.to_string(),
        moment,
        predicted_slope,
        fitted_slope,
        points,
    })
}

fn fit_slope(points: impl Iterator<Item = (f64, f64)>) -> Option<f64> {
    let pts: Vec<(f64, f64)> = points.collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for (x, y) in &pts {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    (sxx > 0.0).then(|| sxy / sxx)
}

/// Which inequality to evaluate on a grid.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InequalityId {
    /// sqrt(t) <= a0(m) + a1(m) t + a2(m) t^2 on [0, 1]
    PolyMajorant { m: u32 },
    /// sqrt(t) <= 1 + (t-1)/2 - (t-1)^2/9 + (t-1)^3/36 on [0, inf)
    CubicMajorant,
}

/// Coefficients (a0, a1, a2) of the quadratic square-root majorant with
/// kappa = (m+2)(m+1).
pub fn majorant_coefficients(m: u32) -> (f64, f64, f64) {
    let kappa = f64::from((m + 2) * (m + 1));
    let sk = kappa.sqrt();
    let denom = 2.0 * (kappa - 1.0) * (kappa - 1.0);
    let a0 = ((kappa - 3.0) * sk + 2.0) / denom;
    let a1 = ((kappa * kappa + 3.0) * sk - 4.0 * kappa) / denom;
    let a2 = -((kappa * kappa + kappa) * sk - 2.0 * kappa * kappa) / denom;
    (a0, a1, a2)
}

/// RHS - LHS of the quadratic majorant at t.
pub fn poly_majorant_margin(m: u32, t: f64) -> f64 {
    let (a0, a1, a2) = majorant_coefficients(m);
    a0 + t * (a1 + t * a2) - t.sqrt()
}

/// RHS - LHS of the cubic majorant at t.
pub fn cubic_majorant_margin(t: f64) -> f64 {
    let u = t - 1.0;
    1.0 + u / 2.0 - u * u / 9.0 + u * u * u / 36.0 - t.sqrt()
}

#[derive(Clone, Debug, Serialize)]
pub struct InequalityGridReport {
    pub id: String,
    pub lo: f64,
    pub hi: f64,
    pub steps: usize,
    /// min over the grid of RHS - LHS (>= 0 means the inequality held)
    pub min_margin: f64,
    pub argmin: f64,
    pub coefficients: Option<(f64, f64, f64)>,
}

/// Evaluate RHS - LHS on an inclusive grid; endpoints are hit exactly.
pub fn inequality_grid(
    id: InequalityId,
    lo: f64,
    hi: f64,
    steps: usize,
) -> Result<InequalityGridReport> {
    if steps < 1 || lo.is_nan() || hi.is_nan() || lo > hi {
        return Err(Error::argument("grid needs lo <= hi and steps >= 1"));
    }
    match id {
        InequalityId::PolyMajorant { m } => {
            if m < 1 {
                return Err(Error::argument("majorant index m must be >= 1"));
            }
            if lo < 0.0 || hi > 1.0 {
                return Err(Error::argument("quadratic majorant domain is [0, 1]"));
            }
        }
        InequalityId::CubicMajorant => {
            if lo < 0.0 {
                return Err(Error::argument("cubic majorant domain is [0, inf)"));
            }
        }
    }
    let eval: Box<dyn Fn(f64) -> f64> = match id {
        InequalityId::PolyMajorant { m } => {
            let (a0, a1, a2) = majorant_coefficients(m);
            Box::new(move |t: f64| a0 + t * (a1 + t * a2) - t.sqrt())
        }
        InequalityId::CubicMajorant => Box::new(cubic_majorant_margin),
    };
    let mut min_margin = f64::INFINITY;
    let mut argmin = lo;
    for i in 0..=steps {
        let t = if i == steps {
            hi
        } else {
            lo + (hi - lo) * (i as f64) / (steps as f64)
        };
        let v = eval(t);
        if v < min_margin {
            min_margin = v;
            argmin = t;
        }
    }
    let (name, coefficients) = match id {
        InequalityId::PolyMajorant { m } => {
            (format!("poly_majorant(m={m})"), Some(majorant_coefficients(m)))
        }
        InequalityId::CubicMajorant => ("cubic_majorant".to_string(), None),
    };
    Ok(InequalityGridReport {
        id: name,
        lo,
        hi,
        steps,
        min_margin,
        argmin,
        coefficients,
    })
}

/// Decay exponent eta for the absolute partial-sum bound of the pair
/// Sym^{m1} x Sym^{m2}, in terms of d = (m1+1)(m2+1):
/// eta = (d-1)(d+1) / ((d-1)^2 + 3(d-1) + 1) * ((d+2)/(d+1) - sqrt((d+1)/d)).
pub fn eta_exponent(m1: u32, m2: u32) -> Result<f64> {
    if m1 == 0 && m2 == 0 {
        return Err(Error::argument(
            "eta exponent undefined for m1 = m2 = 0 (the zeta case)",
        ));
    }
    let d = u64::from(m1 + 1) * u64::from(m2 + 1);
    Ok(eta_exponent_of_degree(d as f64))
}

pub fn eta_exponent_of_degree(d: f64) -> f64 {
    let dm = d - 1.0;
    (dm * (d + 1.0)) / (dm * dm + 3.0 * dm + 1.0) * ((d + 2.0) / (d + 1.0) - ((d + 1.0) / d).sqrt())
}

/// The same exponent derived through the majorant coefficients:
/// 1 - (a0(d-1) d + a1(d-1)/d + a2(d-1)/d^2). Independent route used as an
/// oracle for [`eta_exponent_of_degree`].
pub fn eta_exponent_via_majorant(d: u32) -> f64 {
    let (a0, a1, a2) = majorant_coefficients(d - 1);
    let df = f64::from(d);
    1.0 - (a0 * df + a1 / df + a2 / (df * df))
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct DecayPoint {
    pub x: u64,
    pub abs_sum: f64,
    /// S(x)/x
    pub ratio: f64,
    /// log(x)^eta * S(x)/x (0 when eta is undefined)
    pub weighted: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct DecayReport {
    pub rep: String,
    pub eta: Option<f64>,
    pub points: Vec<DecayPoint>,
    /// S(x)/x strictly decreasing across the checkpoints
    pub strictly_decreasing: bool,
    /// Heuristic: the weighted column's later-half maximum does not exceed
    /// its earlier-half maximum by more than 10%. Desk-scale trend only.
    pub weighted_bounded: Option<bool>,
}

/// eta attached to an expression shape: the closed form for a pair of
/// distinct holomorphic symmetric powers, 1/12 for a degree-2 Maass form.
pub fn eta_for_rep(e: &RepExpr) -> Option<f64> {
    match e {
        RepExpr::Tensor(a, b) => match (a.as_ref(), b.as_ref()) {
            (
                RepExpr::Sym { m: m1, form: FormId::Holo(f) },
                RepExpr::Sym { m: m2, form: FormId::Holo(g) },
            ) if f != g && (*m1, *m2) != (0, 0) => eta_exponent(*m1, *m2).ok(),
            _ => None,
        },
        RepExpr::Sym { m: 1, form: FormId::Maass(_) } => Some(1.0 / 12.0),
        _ => None,
    }
}

/// Sieve mu up to N and measure the absolute partial-sum decay.
pub fn decay_experiment(
    e: &RepExpr,
    n: u64,
    reg: &FormRegistry,
    checkpoints: &[u64],
) -> Result<DecayReport> {
    let table = mobius_table(e, n, reg)?;
    decay_from_table(e, &table, checkpoints)
}

/// Decay measurement on an existing table.
pub fn decay_from_table(
    e: &RepExpr,
    table: &MobiusTable,
    checkpoints: &[u64],
) -> Result<DecayReport> {
    let eta = eta_for_rep(e);
    let sums = table.abs_partial_sums(checkpoints)?;
    let points: Vec<DecayPoint> = sums
        .points
        .iter()
        .map(|&(x, s)| {
            let ratio = s / x as f64;
            let weighted = match eta {
                Some(h) => (x as f64).ln().powf(h) * ratio,
                None => 0.0,
            };
            DecayPoint {
                x,
                abs_sum: s,
                ratio,
                weighted,
            }
        })
        .collect();
    let strictly_decreasing = points.windows(2).all(|w| w[1].ratio < w[0].ratio);
    let weighted_bounded = eta.map(|_| {
        let mid = points.len() / 2;
        if mid == 0 || points.len() < 2 {
            return true;
        }
        let head = points[..mid]
            .iter()
            .map(|p| p.weighted)
            .fold(f64::NEG_INFINITY, f64::max);
        let tail = points[mid..]
            .iter()
            .map(|p| p.weighted)
            .fold(f64::NEG_INFINITY, f64::max);
        tail <= head * 1.10
    });
    Ok(DecayReport {
        rep: table.rep().to_string(),
        eta,
        points,
        strictly_decreasing,
        weighted_bounded,
    })
}

/// Ho-style surrogate coefficients: |lambda| <= c0 + c2 l^2 + c4 l^4 + c6 l^6
/// with c0 = 13/36, c2 = 29/36, c4 = -7/36, c6 = 1/36.
pub fn surrogate_coefficients() -> (f64, f64, f64, f64) {
    (13.0 / 36.0, 29.0 / 36.0, -7.0 / 36.0, 1.0 / 36.0)
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct MaassBoundPoint {
    pub x: u64,
    /// L(x) = sum_{p<=x} |lambda(p)|/p
    pub sum_abs_over_p: f64,
    /// (11/12) loglog x
    pub bound: f64,
    pub margin: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct MaassBoundComponents {
    pub x: u64,
    pub sum_inv_p: f64,
    pub sum_sq: f64,
    pub sum_fourth: f64,
    pub sum_fourth_identity: f64,
    pub sum_sixth: f64,
    pub sum_sixth_identity: f64,
    pub sum_sym2: f64,
    pub sum_sym4: f64,
    pub sum_sym3_sq: f64,
    /// c0 A + c2 B + c4 C + c6 D, the aggregated surrogate upper estimate
    pub surrogate_upper: f64,
    /// c0 + c2 + 2 c4 + 5 c6 = 11/12, the slope implied by the identities
    pub slope_bookkeeping: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct MaassBoundReport {
    pub id: String,
    pub spectral_r: f64,
    pub points: Vec<MaassBoundPoint>,
    pub ho_pointwise_ok: bool,
    /// max over data primes of |lambda| - surrogate (<= 0 when ok)
    pub ho_max_violation: f64,
    /// max pointwise deviation of the fourth/sixth power identities
    pub identity_max_dev: f64,
    pub components: MaassBoundComponents,
}

/// Absolute Mertens sum of a Maass dataset against the (11/12) loglog bound,
/// with the intermediate surrogate decomposition.
pub fn maass_abs_bound_check(
    ds: &MaassDataset,
    x_max: u64,
    checkpoints: &[u64],
) -> Result<MaassBoundReport> {
    let primes = primes_up_to(x_max);
    for &p in &primes {
        if ds.lambda(p).is_none() {
            return Err(Error::data(
                "E_MAASS_RANGE",
                format!("maass:{}: missing eigenvalue at prime {p} (need all p <= {x_max})", ds.id),
            ));
        }
    }
    let mut cps: Vec<u64> = checkpoints.iter().copied().filter(|&x| x <= x_max).collect();
    cps.sort_unstable();
    cps.dedup();
    if cps.is_empty() {
        cps.push(x_max);
    }

    let (c0, c2, c4, c6) = surrogate_coefficients();
    let mut points = Vec::with_capacity(cps.len());
    let mut l_acc = 0.0f64;
    let mut a_acc = 0.0f64; // sum 1/p
    let mut b_acc = 0.0f64; // sum lambda^2/p
    let mut c_acc = 0.0f64; // sum lambda^4/p
    let mut c_id_acc = 0.0f64;
    let mut d_acc = 0.0f64; // sum lambda^6/p
    let mut d_id_acc = 0.0f64;
    let mut s2_acc = 0.0f64;
    let mut s4_acc = 0.0f64;
    let mut s3sq_acc = 0.0f64;
    let mut ho_max_violation = f64::NEG_INFINITY;
    let mut identity_max_dev = 0.0f64;
    let mut next = 0usize;

    let capture = |points: &mut Vec<MaassBoundPoint>, upto: u64, l: f64, next: &mut usize| {
        while *next < cps.len() && cps[*next] <= upto {
            let x = cps[*next];
            let bound = (11.0 / 12.0) * loglog(x);
            points.push(MaassBoundPoint {
                x,
                sum_abs_over_p: l,
                bound,
                margin: bound - l,
            });
            *next += 1;
        }
    };

    for &p in &primes {
        capture(&mut points, p - 1, l_acc, &mut next);
        let l = ds.lambda(p).unwrap();
        let pf = p as f64;
        let l2 = l * l;
        let l4 = l2 * l2;
        let l6 = l4 * l2;
        let s2 = ds.sym_lambda(p, 2)?;
        let s3 = ds.sym_lambda(p, 3)?;
        let s4 = ds.sym_lambda(p, 4)?;
        let l4_id = 2.0 + 3.0 * s2 + s4;
        let l6_id = 5.0 + 8.0 * s2 + 4.0 * s4 + s2 * s4;
        identity_max_dev = identity_max_dev
            .max((l4 - l4_id).abs() / l4.abs().max(1.0))
            .max((l6 - l6_id).abs() / l6.abs().max(1.0))
            .max((s2 * s4 - (s3 * s3 - 1.0)).abs() / (s2 * s4).abs().max(1.0));
        let surrogate = c0 + c2 * l2 + c4 * l4 + c6 * l6;
        ho_max_violation = ho_max_violation.max(l.abs() - surrogate);

        l_acc += l.abs() / pf;
        a_acc += 1.0 / pf;
        b_acc += l2 / pf;
        c_acc += l4 / pf;
        c_id_acc += l4_id / pf;
        d_acc += l6 / pf;
        d_id_acc += l6_id / pf;
        s2_acc += s2 / pf;
        s4_acc += s4 / pf;
        s3sq_acc += s3 * s3 / pf;
        capture(&mut points, p, l_acc, &mut next);
    }
    capture(&mut points, x_max, l_acc, &mut next);
    if ho_max_violation == f64::NEG_INFINITY {
        ho_max_violation = 0.0;
    }

    let components = MaassBoundComponents {
        x: x_max,
        sum_inv_p: a_acc,
        sum_sq: b_acc,
        sum_fourth: c_acc,
        sum_fourth_identity: c_id_acc,
        sum_sixth: d_acc,
        sum_sixth_identity: d_id_acc,
        sum_sym2: s2_acc,
        sum_sym4: s4_acc,
        sum_sym3_sq: s3sq_acc,
        surrogate_upper: c0 * a_acc + c2 * b_acc + c4 * c_acc + c6 * d_acc,
        slope_bookkeeping: c0 + c2 + 2.0 * c4 + 5.0 * c6,
    };
    Ok(MaassBoundReport {
        id: ds.id.clone(),
        spectral_r: ds.spectral_r,
        points,
        ho_pointwise_ok: ho_max_violation <= 1e-9,
        ho_max_violation,
        identity_max_dev,
        components,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn parse(s: &str) -> RepExpr {
        crate::repalg::parse_rep(s, &BTreeSet::new()).unwrap()
    }

    #[test]
    fn unit_moment_matches_direct_prime_sum() {
        let e = parse("zeta");
        let reg = FormRegistry::new();
        let r = mertens_sum(&e, Moment::Unit, 100, &reg, &[100]).unwrap();
        // independent enumeration of the 25 primes <= 100
        let direct: f64 = primes_up_to(100).iter().map(|&p| 1.0 / p as f64).sum();
        assert!((r.points[0].sum - direct).abs() <= 1e-12);
        assert_eq!(r.predicted_slope, Some(1.0));
    }

    #[test]
    fn zeta_square_equals_unit() {
        let e = parse("zeta");
        let reg = FormRegistry::new();
        let a = mertens_sum(&e, Moment::Square, 500, &reg, &[10, 100, 500]).unwrap();
        let b = mertens_sum(&e, Moment::Unit, 500, &reg, &[10, 100, 500]).unwrap();
        for (pa, pb) in a.points.iter().zip(&b.points) {
            assert_eq!(pa.sum, pb.sum);
        }
    }

    #[test]
    fn fourth_moment_prediction_is_degree() {
        let e = parse("sym1(f12) x sym1(f16)");
        let mut reg = FormRegistry::new();
        reg.prepare(&e, 1000).unwrap();
        let r = mertens_sum(&e, Moment::Fourth, 1000, &reg, &[1000]).unwrap();
        assert_eq!(r.predicted_slope, Some(4.0));
    }

    #[test]
    fn majorant_values_at_known_points() {
        // m = 1: kappa = 6, a0 = (3 sqrt(6) + 2) / 50
        let (a0, _, _) = majorant_coefficients(1);
        let expect = (3.0 * 6f64.sqrt() + 2.0) / 50.0;
        assert!((a0 - expect).abs() < 1e-15);
        assert!((a0 - 0.18696938456699067).abs() < 1e-14);
        assert!((poly_majorant_margin(1, 0.0) - a0).abs() < 1e-15);

        // at t = 1 the quadratic majorant is tangent from above
        for m in 1..=30 {
            let (a0, a1, a2) = majorant_coefficients(m);
            assert!((a0 + a1 + a2 - 1.0).abs() <= 1e-12, "m={m}");
            assert!(poly_majorant_margin(m, 1.0) >= -1e-12);
        }

        assert_eq!(cubic_majorant_margin(1.0), 0.0);
    }

    #[test]
    fn inequality_grids_nonnegative() {
        for m in [1u32, 2, 7, 30] {
            let r = inequality_grid(InequalityId::PolyMajorant { m }, 0.0, 1.0, 100_000).unwrap();
            assert!(r.min_margin >= -1e-12, "m={m}: {}", r.min_margin);
        }
        let r = inequality_grid(InequalityId::CubicMajorant, 0.0, 10.0, 100_000).unwrap();
        assert!(r.min_margin >= -1e-12, "{}", r.min_margin);
        assert!(inequality_grid(InequalityId::PolyMajorant { m: 1 }, 0.0, 2.0, 10).is_err());
        assert!(inequality_grid(InequalityId::CubicMajorant, -1.0, 1.0, 10).is_err());
    }

    #[test]
    fn eta_closed_form_values() {
        // d = 2: (3/5)(4/3 - sqrt(3/2))
        let v = eta_exponent(1, 0).unwrap();
        let expect = 0.6 * (4.0 / 3.0 - 1.5f64.sqrt());
        assert!((v - expect).abs() < 1e-15);
        assert!((v - 0.06515307716504657).abs() < 1e-15);
        assert_eq!(eta_exponent(0, 1).unwrap(), v);
        assert!(eta_exponent(1, 1).unwrap() > 0.0);
        assert!(eta_exponent(0, 0).is_err());
    }

    #[test]
    fn eta_matches_majorant_route() {
        for d in 2u32..=100 {
            let closed = eta_exponent_of_degree(f64::from(d));
            let via = eta_exponent_via_majorant(d);
            assert!(
                (closed - via).abs() <= 1e-12,
                "d={d}: {closed} vs {via}"
            );
        }
    }

    #[test]
    fn eta_positive_and_decaying_to_zero() {
        // the exponent peaks at d = 3 and is strictly decreasing afterwards
        assert!(eta_exponent_of_degree(2.0) < eta_exponent_of_degree(3.0));
        let mut prev = eta_exponent_of_degree(2.0);
        for d in 2u32..=100 {
            let v = eta_exponent_of_degree(f64::from(d));
            assert!(v > 0.0, "d={d}");
            if d >= 4 {
                assert!(v < prev, "d={d}");
            }
            prev = v;
        }
        assert!(prev < 5e-3);
    }

    #[test]
    fn eta_for_rep_shapes() {
        let e = parse("sym1(f12) x sym1(f16)");
        assert!((eta_for_rep(&e).unwrap() - eta_exponent(1, 1).unwrap()).abs() < 1e-15);
        assert_eq!(eta_for_rep(&parse("zeta")), None);
        assert_eq!(eta_for_rep(&parse("sym1(f12) x sym1(f12)")), None);
        let mut ids = BTreeSet::new();
        ids.insert("x".to_string());
        let e = crate::repalg::parse_rep("sym1(maass:x)", &ids).unwrap();
        assert_eq!(eta_for_rep(&e), Some(1.0 / 12.0));
    }

    #[test]
    fn decay_zeta_density() {
        let e = parse("zeta");
        let reg = FormRegistry::new();
        let r = decay_experiment(&e, 100_000, &reg, &[1, 10, 100, 1000, 10_000, 100_000]).unwrap();
        let last = r.points.last().unwrap();
        assert!((last.ratio - 0.607927).abs() < 0.005, "{}", last.ratio);
        assert_eq!(r.points[0].ratio, 1.0);
        assert_eq!(r.eta, None);
    }

    #[test]
    fn surrogate_coefficient_sanity() {
        // 1/2 + 2/9 + 1/12 = 29/36 etc., checked in exact arithmetic over /36
        assert_eq!(18 + 8 + 3, 29);
        assert_eq!(36 - 18 - 4 - 1, 13);
        assert_eq!(4 + 3, 7);
        let (c0, c2, c4, c6) = surrogate_coefficients();
        assert_eq!(c0, 13.0 / 36.0);
        assert_eq!(c2, 29.0 / 36.0);
        assert_eq!(c4, -7.0 / 36.0);
        assert_eq!(c6, 1.0 / 36.0);
        // slope bookkeeping: c0 + c2 + 2 c4 + 5 c6 = 33/36 = 11/12
        assert!((c0 + c2 + 2.0 * c4 + 5.0 * c6 - 11.0 / 12.0).abs() < 1e-15);
    }

    #[test]
    fn maass_bound_empty_below_first_prime() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("m.txt");
        std::fs::write(&path, "R=9.5\n1,1.0\n2,1.1\n").unwrap();
        let ds = crate::maass::load_maass(&path).unwrap();
        let r = maass_abs_bound_check(&ds, 1, &[1]).unwrap();
        assert_eq!(r.points.last().unwrap().sum_abs_over_p, 0.0);
        assert_eq!(r.components.sum_inv_p, 0.0);
        assert!(r.ho_pointwise_ok);
    }

    #[test]
    fn maass_bound_report_on_small_data() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("m.txt");
        std::fs::write(&path, "R=9.5\n1,1.0\n2,1.2\n3,-0.8\n4,0.44\n5,0.3\n").unwrap();
        let ds = crate::maass::load_maass(&path).unwrap();
        let r = maass_abs_bound_check(&ds, 5, &[5]).unwrap();
        // direct sums
        let expect = 1.2f64 / 2.0 + 0.8 / 3.0 + 0.3 / 5.0;
        assert!((r.points[0].sum_abs_over_p - expect).abs() < 1e-12);
        assert!(r.identity_max_dev <= 1e-9);
        assert!((r.components.sum_fourth - r.components.sum_fourth_identity).abs() <= 1e-9);
        assert!((r.components.sum_sixth - r.components.sum_sixth_identity).abs() <= 1e-9);
        assert!(r.ho_pointwise_ok);
        // missing prime coverage is a data error naming the prime
        assert!(maass_abs_bound_check(&ds, 7, &[7]).is_err());
    }

    #[test]
    fn ho_pointwise_holds_for_bounded_lambda() {
        let (c0, c2, c4, c6) = surrogate_coefficients();
        for i in -250..=250 {
            let l = i as f64 / 100.0;
            let l2 = l * l;
            let surrogate = c0 + c2 * l2 + c4 * l2 * l2 + c6 * l2 * l2 * l2;
            assert!(l.abs() <= surrogate + 1e-9, "lambda={l}");
        }
    }
}
