//! One function per subcommand. Each returns the text to print.

use threetangle_core::analytic::{ckw_audit_with, mixed_three_tangle, Thresholds};
use threetangle_core::bloch::{bloch_vector, in_zero_polyhedron, qutrit_project, zero_tangle_vertices};
use threetangle_core::family::{ghz, ghz_minus, is_validated_n, optimal_decomposition, rho, validate_n, w, w_tilde};
use threetangle_core::measures::three_tangle_pure;
use threetangle_core::roof::{characteristic_curve, min_avg_tangle_auto, min_avg_tangle_with, roof_envelope, SearchOptions};
use threetangle_core::states::{density_from_ensemble, trace_distance};
use threetangle_core::{DensityMatrix, PureState3};

use crate::error::{CliError, CliResult};
use crate::output::{csv, records, Record};

pub const DEFAULT_N_LIST: [f64; 6] = [1.0, 2.0, 3.0, 10.0, 100.0, 1000.0];
const CKW_TOL: f64 = -1e-9;
/// Trace distance below which a matrix is taken to be a member of a named family.
const FAMILY_TOL: f64 = 1e-9;

fn check_n(n: f64) -> CliResult<()> {
    validate_n(n).map_err(|e| CliError::Usage(format!("--n: {e}")))
}

fn check_p(p: f64) -> CliResult<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(CliError::Usage(format!("--p must lie in [0, 1], got {p}")))
    }
}

fn check_points(name: &str, k: usize, min: usize) -> CliResult<()> {
    if k >= min {
        Ok(())
    } else {
        Err(CliError::Usage(format!("{name} must be at least {min}, got {k}")))
    }
}

fn flag_unvalidated(r: &mut Record, n: f64) {
    if !is_validated_n(n) {
        r.push("validated", false);
    }
}

pub fn cmd_table1(n_list: &[f64]) -> CliResult<String> {
    if n_list.is_empty() {
        return Err(CliError::Usage("--n-list is empty".into()));
    }
    let mut out = Vec::with_capacity(n_list.len());
    for &n in n_list {
        check_n(n)?;
        let th = Thresholds::compute(n)?;
        let mut r = Record::new()
            .field("n", n)
            .field("p0", th.p0)
            .field("p1", th.p1)
            .field("p_star", th.p_star)
            .field("p_c", th.p_c);
        flag_unvalidated(&mut r, n);
        out.push(r);
    }
    Ok(records(&out))
}

/// Characteristic-curve minimum, closed-form tangle and the envelope of the minimum.
pub fn cmd_curves(n: f64, p_points: usize, phi_points: usize) -> CliResult<String> {
    check_n(n)?;
    check_points("--p-points", p_points, 2)?;
    check_points("--phi-points", phi_points, 4)?;
    let th = Thresholds::compute(n)?;
    let curve = characteristic_curve(n, p_points, phi_points)?;
    let env = roof_envelope(&curve)?;
    let mut rows = Vec::with_capacity(curve.points.len());
    for c in &curve.points {
        let analytic = mixed_three_tangle(c.p, n, &th)?.value;
        rows.push(vec![c.p, c.tau_min, analytic, env.eval(c.p).unwrap_or(f64::NAN)]);
    }
    Ok(csv(&["p", "tau_min", "tau_analytic", "envelope"], rows))
}

/// The curve alone with the minimising phases.
pub fn cmd_curves_argmin(n: f64, p_points: usize, phi_points: usize) -> CliResult<String> {
    check_n(n)?;
    check_points("--p-points", p_points, 2)?;
    check_points("--phi-points", phi_points, 4)?;
    let curve = characteristic_curve(n, p_points, phi_points)?;
    Ok(csv(
        &["p", "tau_min", "phi1_argmin", "phi2_argmin"],
        curve.points.iter().map(|c| vec![c.p, c.tau_min, c.phi1, c.phi2]),
    ))
}

#[derive(Debug)]
pub struct CkwOutput {
    pub csv: String,
    /// Set when some margin falls below `-1e-9`.
    pub violation: Option<CliError>,
}

pub fn cmd_ckw(n: f64, p_points: usize) -> CliResult<CkwOutput> {
    check_n(n)?;
    check_points("--p-points", p_points, 2)?;
    let report = ckw_audit_with(&Thresholds::compute(n)?, p_points)?;
    let violation = report
        .points
        .iter()
        .filter(|pt| pt.margin < CKW_TOL)
        .min_by(|a, b| a.margin.total_cmp(&b.margin))
        .map(|pt| CliError::CkwViolation {
            p: pt.p,
            margin: pt.margin,
        });
    let csv = csv(
        &["p", "one_tangle", "conc_sq_sum", "tau3", "margin"],
        report
            .points
            .iter()
            .map(|pt| vec![pt.p, pt.one_tangle, pt.conc_sq_sum, pt.tau3, pt.margin]),
    );
    Ok(CkwOutput { csv, violation })
}

pub fn cmd_tangle(p: f64, n: f64) -> CliResult<String> {
    check_p(p)?;
    check_n(n)?;
    let t = mixed_three_tangle(p, n, &Thresholds::compute(n)?)?;
    let mut r = Record::new().field("region", t.region).field("value", t.value);
    flag_unvalidated(&mut r, n);
    Ok(records(&[r]))
}

fn amplitude_fields(r: &mut Record, psi: &PureState3) {
    for (idx, a) in psi.amplitudes().iter().enumerate() {
        r.push(&format!("a{:03b}", idx), format!("{},{}", a.re, a.im));
    }
}

pub fn cmd_decompose(p: f64, n: f64) -> CliResult<String> {
    check_p(p)?;
    check_n(n)?;
    let th = Thresholds::compute(n)?;
    let ens = optimal_decomposition(p, n, &th)?;
    let target = rho(p, (1.0 - p) / n)?;
    let dist = trace_distance(&density_from_ensemble(&ens), &target)?;
    let t = mixed_three_tangle(p, n, &th)?;
    let mut head = Record::new()
        .field("p", p)
        .field("n", n)
        .field("region", t.region)
        .field("value", t.value)
        .field("members", ens.len())
        .field("average_tangle", ens.average(|s| three_tangle_pure(s).value()))
        .field("trace_distance", dist);
    flag_unvalidated(&mut head, n);
    let mut out = vec![head];
    for (k, (weight, psi)) in ens.members().iter().enumerate() {
        let mut r = Record::new()
            .field("member", k)
            .field("weight", weight)
            .field("tangle", three_tangle_pure(psi).value());
        amplitude_fields(&mut r, psi);
        out.push(r);
    }
    Ok(records(&out))
}

const VERTEX_NAMES: [&str; 5] = ["W", "W~", "Z(0,0)", "Z(2pi/3,4pi/3)", "Z(4pi/3,2pi/3)"];

/// Accepts an 8x8 state (projected onto span{GHZ, W, W~}) or a 3x3 qutrit state.
pub fn cmd_vanishing(rho: &DensityMatrix, n: f64, tol: f64) -> CliResult<String> {
    check_n(n)?;
    if tol.is_nan() || tol < 0.0 {
        return Err(CliError::Usage(format!("--tol must be non-negative, got {tol}")));
    }
    let sigma = match rho.dim() {
        8 => qutrit_project(rho)?,
        3 => rho.clone(),
        d => return Err(CliError::Usage(format!("expected an 8x8 or 3x3 matrix, got {d}x{d}"))),
    };
    let th = Thresholds::compute(n)?;
    let m = in_zero_polyhedron(&bloch_vector(&sigma)?, &zero_tangle_vertices(n, th.p0)?, tol)?;
    let mut head = Record::new()
        .field("inside", m.inside)
        .field("residual", m.residual)
        .field("p0", th.p0);
    flag_unvalidated(&mut head, n);
    let mut out = vec![head];
    for (name, w) in VERTEX_NAMES.iter().zip(&m.weights) {
        out.push(Record::new().field("vertex", name).field("weight", w));
    }
    Ok(records(&out))
}

/// Closed-form reference for a matrix recognised as a member of a known family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FamilyMatch {
    /// `rho(p, q)`; `n = (1-p)/q`, infinite when `q = 0`.
    Rho { p: f64, q: f64, n: f64, analytic: f64 },
    /// `p |GHZ+><GHZ+| + (1-p) |GHZ-><GHZ-|`, tangle `(2p-1)^2`.
    PiInfinite { p: f64, analytic: f64 },
}

impl FamilyMatch {
    pub fn analytic(&self) -> f64 {
        match *self {
            FamilyMatch::Rho { analytic, .. } | FamilyMatch::PiInfinite { analytic, .. } => analytic,
        }
    }
}

fn weight_of(rho: &DensityMatrix, psi: &PureState3) -> f64 {
    let v = rho.matrix().mul_vec(psi.amplitudes());
    psi.amplitudes()
        .iter()
        .zip(&v)
        .map(|(a, b)| (a.conj() * b).re)
        .sum::<f64>()
        .clamp(0.0, 1.0)
}

pub fn detect_family(rho: &DensityMatrix) -> CliResult<Option<FamilyMatch>> {
    if rho.dim() != 8 {
        return Ok(None);
    }
    let (p, q) = (weight_of(rho, &ghz()), weight_of(rho, &w()));
    let r = weight_of(rho, &w_tilde());
    if (p + q + r - 1.0).abs() < 1e-9 && trace_distance(&self::rho(p, q.min(1.0 - p))?, rho)? <= FAMILY_TOL {
        // rho(p, 0) is rho(p, 1-p) up to the local flip X (x) X (x) X
        let (n_eff, n) = if q > 1e-12 {
            ((1.0 - p) / q, (1.0 - p) / q)
        } else {
            (1.0, f64::INFINITY)
        };
        let n_eff = n_eff.max(1.0);
        let analytic = mixed_three_tangle(p, n_eff, &Thresholds::compute(n_eff)?)?.value;
        return Ok(Some(FamilyMatch::Rho { p, q, n, analytic }));
    }
    let minus = weight_of(rho, &ghz_minus());
    if (p + minus - 1.0).abs() < 1e-9 {
        let pi = DensityMatrix::mixture(&[(p, &ghz().projector()), (1.0 - p, &ghz_minus().projector())])?;
        if trace_distance(&pi, rho)? <= FAMILY_TOL {
            return Ok(Some(FamilyMatch::PiInfinite {
                p,
                analytic: (2.0 * p - 1.0).powi(2),
            }));
        }
    }
    Ok(None)
}

pub fn cmd_oracle(rho: &DensityMatrix, m: Option<usize>, restarts: usize, seed: u64) -> CliResult<String> {
    if rho.dim() != 8 {
        return Err(CliError::Usage(format!("the oracle needs an 8x8 matrix, got {0}x{0}", rho.dim())));
    }
    check_points("--restarts", restarts, 1)?;
    let opts = SearchOptions::new(restarts, seed);
    let res = match m {
        Some(m) => min_avg_tangle_with(rho, m, &opts)?,
        None => min_avg_tangle_auto(rho, &opts)?,
    };
    let mut out = vec![Record::new()
        .field("upper_bound", res.upper_bound)
        .field("m", res.m)
        .field("members", res.best_ensemble.len())
        .field("restarts", res.restarts_used)
        .field("converged", res.converged)
        .field("evaluations", res.evaluations)
        .field("seed", seed)];
    match detect_family(rho)? {
        Some(f @ FamilyMatch::Rho { p, q, n, .. }) => {
            let mut r = Record::new().field("family", "rho").field("p", p).field("q", q).field("n", n);
            flag_unvalidated(&mut r, n);
            r.push("analytic", f.analytic());
            r.push("gap", res.upper_bound - f.analytic());
            out.push(r);
        }
        Some(f @ FamilyMatch::PiInfinite { p, .. }) => {
            out.push(
                Record::new()
                    .field("family", "pi_inf")
                    .field("p", p)
                    .field("analytic", f.analytic())
                    .field("gap", res.upper_bound - f.analytic()),
            );
        }
        None => out.push(Record::new().field("family", "none")),
    }
    Ok(records(&out))
}
