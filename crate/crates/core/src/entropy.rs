//! Classical and quantum Tsallis, Renyi and von Neumann entropies (in nats).
//!
//! Quantum entropies are evaluated on the clamped spectrum. The Tsallis
//! kernel uses `-Σ λ ln_q λ` with `ln_q` built on `expm1`, which stays
//! accurate as `q → 1` where `(Σ λ^q − 1)/(1 − q)` cancels catastrophically.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{pow_nonneg, q_log_scalar, Q_BRANCH_TOL};
use crate::states::DensityMatrix;

const PROB_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct DeformationParam(f64);

impl DeformationParam {
    pub fn new(q: f64) -> Result<Self> {
        if q.is_finite() && q > 0.0 {
            Ok(Self(q))
        } else {
            Err(Error::InvalidQ(q))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// True within `Q_BRANCH_TOL` of 1, where the von Neumann branch applies.
    pub fn is_von_neumann_limit(self) -> bool {
        (self.0 - 1.0).abs() <= Q_BRANCH_TOL
    }
}

impl fmt::Display for DeformationParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityVector(Vec<f64>);

impl ProbabilityVector {
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::InvalidProbabilities("empty vector".into()));
        }
        if let Some(p) = probs.iter().find(|p| !p.is_finite() || **p < 0.0) {
            return Err(Error::InvalidProbabilities(format!(
                "entry {p} is not a probability"
            )));
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > PROB_TOL {
            return Err(Error::InvalidProbabilities(format!("entries sum to {sum}")));
        }
        Ok(Self(probs))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EntropyKind {
    Tsallis,
    Renyi,
    VonNeumann,
}

impl EntropyKind {
    fn name(self) -> &'static str {
        match self {
            EntropyKind::Tsallis => "Tsallis",
            EntropyKind::Renyi => "Renyi",
            EntropyKind::VonNeumann => "VonNeumann",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropyValue {
    pub value: f64,
    pub kind: EntropyKind,
    pub q: Option<DeformationParam>,
}

impl EntropyValue {
    pub fn tsallis(value: f64, q: DeformationParam) -> Self {
        Self {
            value,
            kind: EntropyKind::Tsallis,
            q: Some(q),
        }
    }

    pub fn renyi(value: f64, q: DeformationParam) -> Self {
        Self {
            value,
            kind: EntropyKind::Renyi,
            q: Some(q),
        }
    }

    pub fn von_neumann(value: f64) -> Self {
        Self {
            value,
            kind: EntropyKind::VonNeumann,
            q: None,
        }
    }
}

/// `-Σ p ln p` with `0 ln 0 = 0`.
pub fn shannon_of(probs: &[f64]) -> f64 {
    -probs
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| p * p.ln())
        .sum::<f64>()
}

/// `Σ p (p^{q-1} - 1)`, i.e. `Σ p^q − Σ p`, without cancellation.
fn deformed_sum(probs: &[f64], q: f64) -> f64 {
    let dq = q - 1.0;
    probs
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| p * (dq * p.ln()).exp_m1())
        .sum()
}

/// Tsallis entropy of a nonnegative weight vector.
pub fn tsallis_of(probs: &[f64], q: f64) -> f64 {
    if (q - 1.0).abs() <= Q_BRANCH_TOL {
        shannon_of(probs)
    } else {
        -probs
            .iter()
            .filter(|&&p| p > 0.0)
            .map(|&p| p * q_log_scalar(p, q))
            .sum::<f64>()
    }
}

/// Renyi entropy of a nonnegative weight vector summing to one.
pub fn renyi_of(probs: &[f64], q: f64) -> f64 {
    if (q - 1.0).abs() <= Q_BRANCH_TOL {
        shannon_of(probs)
    } else {
        deformed_sum(probs, q).ln_1p() / (1.0 - q)
    }
}

/// `Σ p^q` with `0^q = 0`.
pub fn power_sum(probs: &[f64], q: f64) -> f64 {
    probs.iter().map(|&p| pow_nonneg(p, q)).sum()
}

pub fn classical_tsallis(p: &ProbabilityVector, q: DeformationParam) -> EntropyValue {
    EntropyValue::tsallis(tsallis_of(p.as_slice(), q.value()), q)
}

pub fn classical_renyi(p: &ProbabilityVector, q: DeformationParam) -> EntropyValue {
    EntropyValue::renyi(renyi_of(p.as_slice(), q.value()), q)
}

pub fn quantum_tsallis(rho: &DensityMatrix, q: DeformationParam) -> Result<EntropyValue> {
    Ok(EntropyValue::tsallis(
        tsallis_of(&rho.spectrum()?, q.value()),
        q,
    ))
}

pub fn quantum_renyi(rho: &DensityMatrix, q: DeformationParam) -> Result<EntropyValue> {
    Ok(EntropyValue::renyi(
        renyi_of(&rho.spectrum()?, q.value()),
        q,
    ))
}

pub fn von_neumann(rho: &DensityMatrix) -> Result<EntropyValue> {
    Ok(EntropyValue::von_neumann(shannon_of(&rho.spectrum()?)))
}

fn check_conversion(input: &EntropyValue, want: EntropyKind, q: DeformationParam) -> Result<()> {
    let kind_ok =
        input.kind == want || (input.kind == EntropyKind::VonNeumann && q.is_von_neumann_limit());
    if !kind_ok {
        return Err(Error::KindMismatch {
            expected: want.name(),
            got: input.kind.name(),
        });
    }
    if let Some(own) = input.q {
        if own != q {
            return Err(Error::DomainError(format!(
                "entropy was computed at q = {own}, conversion requested at q = {q}"
            )));
        }
    }
    Ok(())
}

/// `S^T = (exp(S^R (1−q)) − 1)/(1 − q)`.
pub fn tsallis_from_renyi(sr: &EntropyValue, q: DeformationParam) -> Result<EntropyValue> {
    check_conversion(sr, EntropyKind::Renyi, q)?;
    let value = if q.is_von_neumann_limit() {
        sr.value
    } else {
        let k = 1.0 - q.value();
        (sr.value * k).exp_m1() / k
    };
    Ok(EntropyValue::tsallis(value, q))
}

/// `S^R = ln(1 + (1−q) S^T)/(1 − q)`.
pub fn renyi_from_tsallis(st: &EntropyValue, q: DeformationParam) -> Result<EntropyValue> {
    check_conversion(st, EntropyKind::Tsallis, q)?;
    if q.is_von_neumann_limit() {
        return Ok(EntropyValue::renyi(st.value, q));
    }
    let k = 1.0 - q.value();
    let shifted = k * st.value;
    if 1.0 + shifted <= 0.0 {
        return Err(Error::DomainError(format!(
            "1 + (1 - q)·S^T = {} is not positive",
            1.0 + shifted
        )));
    }
    Ok(EntropyValue::renyi(shifted.ln_1p() / k, q))
}
