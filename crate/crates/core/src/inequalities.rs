//! q-information and the deformed subadditivity inequalities for four-level
//! states read through the two-qubit index map.

use crate::entropy::{power_sum, tsallis_of, DeformationParam};
use crate::error::{Error, Result};
use crate::linalg::clamp_spectrum;
use crate::states::{
    partial_trace_first, partial_trace_second, werner_state, x_state_eigenvalues, DensityMatrix,
    WernerParam, XStateParams, WERNER_SEPARABILITY_BOUNDARY,
};

pub const DEFAULT_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InequalityReport {
    pub lhs: f64,
    pub rhs: f64,
    /// Nonnegative when the inequality holds exactly.
    pub margin: f64,
    pub satisfied: bool,
    /// `|margin| <= tolerance`: the inequality is tight for this state.
    pub saturated: bool,
    /// Subadditivity is only a theorem for `q > 1`.
    pub guaranteed: bool,
    pub q: DeformationParam,
    pub tolerance: f64,
}

impl InequalityReport {
    fn new(lhs: f64, rhs: f64, margin: f64, q: DeformationParam, tolerance: f64) -> Self {
        Self {
            lhs,
            rhs,
            margin,
            satisfied: margin >= -tolerance,
            saturated: margin.abs() <= tolerance,
            guaranteed: q.value() > 1.0,
            q,
            tolerance,
        }
    }
}

/// Clamped spectra of `ρ`, `ρ1 = Tr_2 ρ` and `ρ2 = Tr_1 ρ`.
struct Spectra {
    joint: Vec<f64>,
    first: Vec<f64>,
    second: Vec<f64>,
}

fn spectra(rho: &DensityMatrix) -> Result<Spectra> {
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch(format!(
            "q-information needs a 4x4 state, got {}x{}",
            rho.dim(),
            rho.dim()
        )));
    }
    Ok(Spectra {
        joint: rho.spectrum()?,
        first: partial_trace_second(rho)?.spectrum()?,
        second: partial_trace_first(rho)?.spectrum()?,
    })
}

/// Tsallis entropies of the joint state and both reductions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QInformation {
    pub value: f64,
    pub s_joint: f64,
    pub s_first: f64,
    pub s_second: f64,
}

pub fn q_information_parts(rho: &DensityMatrix, q: DeformationParam) -> Result<QInformation> {
    let s = spectra(rho)?;
    let q = q.value();
    let s_joint = tsallis_of(&s.joint, q);
    let s_first = tsallis_of(&s.first, q);
    let s_second = tsallis_of(&s.second, q);
    Ok(QInformation {
        value: s_first + s_second - s_joint,
        s_joint,
        s_first,
        s_second,
    })
}

/// `I_q = S_q(ρ1) + S_q(ρ2) − S_q(ρ)`.
pub fn q_information(rho: &DensityMatrix, q: DeformationParam) -> Result<f64> {
    Ok(q_information_parts(rho, q)?.value)
}

/// Tsallis subadditivity `S_q(ρ) <= S_q(ρ1) + S_q(ρ2)`; margin is `I_q`.
pub fn check_subadditivity(
    rho: &DensityMatrix,
    q: DeformationParam,
    tol: f64,
) -> Result<InequalityReport> {
    let parts = q_information_parts(rho, q)?;
    Ok(InequalityReport::new(
        parts.s_joint,
        parts.s_first + parts.s_second,
        parts.value,
        q,
        tol,
    ))
}

/// `Tr ρ1^q + Tr ρ2^q − Tr ρ^q <= 1`; margin is `1 − lhs`.
///
/// Pure product states reach equality, so the check is non-strict.
pub fn check_renyi_inequality(
    rho: &DensityMatrix,
    q: DeformationParam,
    tol: f64,
) -> Result<InequalityReport> {
    let s = spectra(rho)?;
    let lhs = power_sum(&s.first, q.value()) + power_sum(&s.second, q.value())
        - power_sum(&s.joint, q.value());
    Ok(InequalityReport::new(lhs, 1.0, 1.0 - lhs, q, tol))
}

/// Closed-form q-information of an X-state: classical Tsallis entropies of
/// the diagonal marginals, minus the Tsallis entropy of the block spectrum.
pub fn x_state_q_information(params: &XStateParams, q: DeformationParam) -> Result<f64> {
    params.validate()?;
    let [d1, d2, d3, d4] = params.diag;
    let q = q.value();
    let first = tsallis_of(&[d1 + d2, d3 + d4], q);
    let second = tsallis_of(&[d1 + d3, d2 + d4], q);
    let joint = tsallis_of(&clamp_spectrum(&x_state_eigenvalues(params))?, q);
    Ok(first + second - joint)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub p: f64,
    pub q: f64,
    pub i_q: f64,
    pub s_joint: f64,
    pub s_first: f64,
    pub s_second: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    /// Sorted by `(q, p)`.
    pub rows: Vec<SweepRow>,
    /// Separable/entangled border of the Werner family.
    pub boundary_p: f64,
}

/// q-information of Werner states over every `(p, q)` pair.
pub fn werner_q_information_curve(
    p_grid: &[f64],
    q_list: &[DeformationParam],
) -> Result<SweepResult> {
    let params = p_grid
        .iter()
        .map(|&p| WernerParam::new(p))
        .collect::<Result<Vec<_>>>()?;
    let mut qs = q_list.to_vec();
    qs.sort_by(|a, b| a.value().total_cmp(&b.value()));
    let mut ps = params;
    ps.sort_by(|a, b| a.value().total_cmp(&b.value()));

    let mut rows = Vec::with_capacity(qs.len() * ps.len());
    for &q in &qs {
        for &p in &ps {
            let w = werner_state(p);
            let parts = q_information_parts(&w.state, q)?;
            rows.push(SweepRow {
                p: p.value(),
                q: q.value(),
                i_q: parts.value,
                s_joint: parts.s_joint,
                s_first: parts.s_first,
                s_second: parts.s_second,
            });
        }
    }
    Ok(SweepResult {
        rows,
        boundary_p: WERNER_SEPARABILITY_BOUNDARY,
    })
}

/// `n` evenly spaced points on `[lo, hi]`, endpoints exact.
pub fn uniform_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..n)
            .map(|i| {
                if i == n - 1 {
                    hi
                } else {
                    lo + (hi - lo) * (i as f64) / ((n - 1) as f64)
                }
            })
            .collect(),
    }
}
