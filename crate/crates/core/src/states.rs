//! Density matrices, the two index labelings of a four-level system, partial
//! traces, and the X-state / Werner families.

use std::fmt;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result, Violation};
use crate::linalg::{self, hermitian_eigen, ComplexMatrix, HERMITIAN_TOL, PSD_TOL};

/// Tolerance on `|Tr ρ - 1|`.
pub const TRACE_TOL: f64 = 1e-12;
/// Slack on X-state block positivity and on the diagonal sum.
pub const XSTATE_TOL: f64 = 1e-12;
/// Werner states with `p` above this are entangled.
pub const WERNER_SEPARABILITY_BOUNDARY: f64 = 1.0 / 3.0;

/// How the flat dimension of a density matrix factorises.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dims {
    Bipartite(usize, usize),
    Single(usize),
}

impl Dims {
    pub fn total(self) -> usize {
        match self {
            Dims::Bipartite(a, b) => a * b,
            Dims::Single(d) => d,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
    dims: Dims,
}

/// Outcome of the physicality checks on a raw matrix.
#[derive(Debug, Clone)]
pub struct DensityCheck {
    pub hermitian_residual: f64,
    pub trace: Complex64,
    /// `None` when the matrix is not Hermitian and no spectrum was computed.
    pub spectrum: Option<Vec<f64>>,
    pub violations: Vec<Violation>,
}

impl DensityCheck {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Runs all physicality checks and collects every violation.
pub fn check_density(m: &ComplexMatrix) -> Result<DensityCheck> {
    let mut violations = Vec::new();
    let hermitian_residual = m.hermitian_residual();
    if hermitian_residual > HERMITIAN_TOL {
        violations.push(Violation::NotHermitian {
            residual: hermitian_residual,
        });
    }
    let trace = linalg::trace(m);
    if (trace - Complex64::new(1.0, 0.0)).norm() > TRACE_TOL {
        violations.push(Violation::TraceNotOne { trace: trace.re });
    }
    let spectrum = if hermitian_residual > HERMITIAN_TOL {
        None
    } else {
        let eig = hermitian_eigen(m)?;
        let min = *eig.eigenvalues.last().expect("nonempty spectrum");
        if min < -PSD_TOL {
            violations.push(Violation::NotPsd {
                min_eigenvalue: min,
            });
        }
        Some(eig.eigenvalues)
    };
    Ok(DensityCheck {
        hermitian_residual,
        trace,
        spectrum,
        violations,
    })
}

/// Validates `m` as a density matrix tagged `Single(d)`.
pub fn validate_density(m: ComplexMatrix) -> Result<DensityMatrix> {
    let check = check_density(&m)?;
    if !check.is_valid() {
        return Err(Error::InvalidDensity(check.violations));
    }
    let d = m.dim();
    Ok(DensityMatrix {
        matrix: m,
        dims: Dims::Single(d),
    })
}

impl DensityMatrix {
    pub fn new(m: ComplexMatrix, dims: Dims) -> Result<Self> {
        validate_density(m)?.with_dims(dims)
    }

    /// Skips validation; callers guarantee physicality by construction.
    pub(crate) fn from_trusted(matrix: ComplexMatrix, dims: Dims) -> Self {
        debug_assert_eq!(matrix.dim(), dims.total());
        Self { matrix, dims }
    }

    pub fn with_dims(mut self, dims: Dims) -> Result<Self> {
        if dims.total() != self.matrix.dim() {
            return Err(Error::DimensionMismatch(format!(
                "{dims:?} does not factor dimension {}",
                self.matrix.dim()
            )));
        }
        self.dims = dims;
        Ok(self)
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dims(&self) -> Dims {
        self.dims
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// `self ⊗ other`, tagged bipartite.
    pub fn tensor(&self, other: &DensityMatrix) -> DensityMatrix {
        DensityMatrix::from_trusted(
            self.matrix.kron(&other.matrix),
            Dims::Bipartite(self.dim(), other.dim()),
        )
    }

    /// Clamped eigenvalues, descending.
    pub fn spectrum(&self) -> Result<Vec<f64>> {
        hermitian_eigen(&self.matrix)?.clamped_eigenvalues()
    }

    /// `U ρ U†`.
    pub fn conjugate_by(&self, u: &ComplexMatrix) -> DensityMatrix {
        let m = &(u * &self.matrix) * &u.adjoint();
        DensityMatrix::from_trusted(m, self.dims)
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.matrix[(row, col)]
    }
}

/// Interpretations of the flat indices `1..=4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IndexLabeling {
    /// `1 ↔ (½,½)`, `2 ↔ (½,−½)`, `3 ↔ (−½,½)`, `4 ↔ (−½,−½)`.
    TwoQubit,
    /// `1 ↔ 3/2`, `2 ↔ 1/2`, `3 ↔ −1/2`, `4 ↔ −3/2`.
    SpinThreeHalves,
}

/// Magnetic quantum numbers, stored doubled so they stay integral.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Label {
    TwoQubit { m1_x2: i8, m2_x2: i8 },
    Spin { m_x2: i8 },
}

fn half(m_x2: i8) -> String {
    if m_x2 % 2 == 0 {
        format!("{}", m_x2 / 2)
    } else {
        format!("{m_x2}/2")
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Label::TwoQubit { m1_x2, m2_x2 } => write!(f, "({}, {})", half(m1_x2), half(m2_x2)),
            Label::Spin { m_x2 } => write!(f, "{}", half(m_x2)),
        }
    }
}

impl IndexLabeling {
    pub fn dims(self) -> Dims {
        match self {
            IndexLabeling::TwoQubit => Dims::Bipartite(2, 2),
            IndexLabeling::SpinThreeHalves => Dims::Single(4),
        }
    }

    /// Label of the one-based flat index `index`.
    pub fn label(self, index: usize) -> Option<Label> {
        if !(1..=4).contains(&index) {
            return None;
        }
        let k = (index - 1) as i8;
        Some(match self {
            IndexLabeling::TwoQubit => Label::TwoQubit {
                m1_x2: if k < 2 { 1 } else { -1 },
                m2_x2: if k % 2 == 0 { 1 } else { -1 },
            },
            IndexLabeling::SpinThreeHalves => Label::Spin { m_x2: 3 - 2 * k },
        })
    }

    /// One-based flat index of `label`.
    pub fn index(self, label: Label) -> Option<usize> {
        (1..=4).find(|&i| self.label(i) == Some(label))
    }
}

/// Reinterprets a four-level state under another labeling. Entries are unchanged.
pub fn relabel(
    rho: &DensityMatrix,
    from: IndexLabeling,
    to: IndexLabeling,
) -> Result<DensityMatrix> {
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch(format!(
            "relabeling needs a 4x4 state, got {}x{}",
            rho.dim(),
            rho.dim()
        )));
    }
    if rho.dims != from.dims() {
        return Err(Error::DimensionMismatch(format!(
            "state tagged {:?} but source labeling is {from:?}",
            rho.dims
        )));
    }
    Ok(DensityMatrix::from_trusted(rho.matrix.clone(), to.dims()))
}

fn require_two_qubit_layout(rho: &DensityMatrix) -> Result<()> {
    match rho.dims {
        Dims::Bipartite(2, 2) | Dims::Single(4) => Ok(()),
        other => Err(Error::DimensionMismatch(format!(
            "partial trace needs a 4x4 state, got {other:?}"
        ))),
    }
}

fn reduced(entries: [[Complex64; 2]; 2]) -> DensityMatrix {
    let mut m = ComplexMatrix::zeros(2);
    for (i, row) in entries.iter().enumerate() {
        for (j, &z) in row.iter().enumerate() {
            m[(i, j)] = z;
        }
    }
    DensityMatrix::from_trusted(m, Dims::Single(2))
}

/// `ρ1 = Tr_2 ρ`. A `Single(4)` state is read through the two-qubit labeling.
pub fn partial_trace_second(rho: &DensityMatrix) -> Result<DensityMatrix> {
    require_two_qubit_layout(rho)?;
    let r = |i: usize, j: usize| rho.matrix[(i - 1, j - 1)];
    Ok(reduced([
        [r(1, 1) + r(2, 2), r(1, 3) + r(2, 4)],
        [r(3, 1) + r(4, 2), r(3, 3) + r(4, 4)],
    ]))
}

/// `ρ2 = Tr_1 ρ`. A `Single(4)` state is read through the two-qubit labeling.
pub fn partial_trace_first(rho: &DensityMatrix) -> Result<DensityMatrix> {
    require_two_qubit_layout(rho)?;
    let r = |i: usize, j: usize| rho.matrix[(i - 1, j - 1)];
    Ok(reduced([
        [r(1, 1) + r(3, 3), r(1, 2) + r(3, 4)],
        [r(2, 1) + r(4, 3), r(2, 2) + r(4, 4)],
    ]))
}

/// Diagonal populations plus the two anti-diagonal coherences of an X-state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XStateParams {
    pub diag: [f64; 4],
    pub c14: Complex64,
    pub c23: Complex64,
}

impl XStateParams {
    pub fn new(diag: [f64; 4], c14: Complex64, c23: Complex64) -> Result<Self> {
        let p = Self { diag, c14, c23 };
        p.validate()?;
        Ok(p)
    }

    /// Werner state as an X-state.
    pub fn werner(p: f64) -> Self {
        let a = (1.0 + p) / 4.0;
        let b = (1.0 - p) / 4.0;
        Self {
            diag: [a, b, b, a],
            c14: Complex64::new(p / 2.0, 0.0),
            c23: Complex64::new(0.0, 0.0),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let [d1, d2, d3, d4] = self.diag;
        let finite = self.diag.iter().all(|x| x.is_finite())
            && [self.c14, self.c23]
                .iter()
                .all(|z| z.re.is_finite() && z.im.is_finite());
        if !finite {
            return Err(Error::InvalidXParams("non-finite parameter".into()));
        }
        if let Some(d) = self.diag.iter().find(|&&d| d < 0.0) {
            return Err(Error::InvalidXParams(format!("negative population {d}")));
        }
        let sum: f64 = self.diag.iter().sum();
        if (sum - 1.0).abs() > XSTATE_TOL {
            return Err(Error::InvalidDensity(vec![Violation::TraceNotOne {
                trace: sum,
            }]));
        }
        if d1 * d4 < self.c14.norm_sqr() - XSTATE_TOL {
            return Err(Error::InvalidXParams(format!(
                "ρ11·ρ44 = {} < |ρ14|² = {}",
                d1 * d4,
                self.c14.norm_sqr()
            )));
        }
        if d2 * d3 < self.c23.norm_sqr() - XSTATE_TOL {
            return Err(Error::InvalidXParams(format!(
                "ρ22·ρ33 = {} < |ρ23|² = {}",
                d2 * d3,
                self.c23.norm_sqr()
            )));
        }
        Ok(())
    }

    pub fn to_matrix(&self) -> ComplexMatrix {
        let mut m = ComplexMatrix::from_diagonal(&self.diag);
        m[(0, 3)] = self.c14;
        m[(3, 0)] = self.c14.conj();
        m[(1, 2)] = self.c23;
        m[(2, 1)] = self.c23.conj();
        m
    }
}

/// Assembles the 4x4 X-state, tagged `Single(4)`.
pub fn x_state(params: &XStateParams) -> Result<DensityMatrix> {
    params.validate()?;
    validate_density(params.to_matrix())
}

/// Eigenvalues of the two 2x2 blocks, descending.
pub fn x_state_eigenvalues(params: &XStateParams) -> [f64; 4] {
    let [d1, d2, d3, d4] = params.diag;
    let (a, b) = block_eigenvalues(d1, d4, params.c14.norm_sqr());
    let (c, d) = block_eigenvalues(d2, d3, params.c23.norm_sqr());
    let mut out = [a, b, c, d];
    out.sort_by(|x, y| y.total_cmp(x));
    out
}

/// Eigenvalues of `[[x, c], [c*, y]]` given `|c|²`.
fn block_eigenvalues(x: f64, y: f64, c_sq: f64) -> (f64, f64) {
    let mean = 0.5 * (x + y);
    let radius = (0.25 * (x - y) * (x - y) + c_sq).sqrt();
    let upper = mean + radius;
    // The smaller root via the determinant avoids cancellation near singular blocks.
    let lower = if upper > 0.0 {
        (x * y - c_sq) / upper
    } else {
        mean - radius
    };
    (upper, lower)
}

/// Werner parameter `p ∈ [−1/3, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WernerParam(f64);

impl WernerParam {
    pub fn new(p: f64) -> Result<Self> {
        // Slack so that decimal renderings of -1/3 are accepted.
        const SLACK: f64 = 1e-12;
        if !p.is_finite() || !(-1.0 / 3.0 - SLACK..=1.0 + SLACK).contains(&p) {
            return Err(Error::ParamOutOfRange(format!(
                "Werner parameter p = {p} outside [-1/3, 1]"
            )));
        }
        Ok(Self(p))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_entangled(self) -> bool {
        self.0 > WERNER_SEPARABILITY_BOUNDARY
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WernerState {
    pub param: WernerParam,
    pub state: DensityMatrix,
    pub is_entangled: bool,
}

/// The Werner family, tagged `Single(4)` (the spin-3/2 reading).
pub fn werner_state(p: WernerParam) -> WernerState {
    let m = XStateParams::werner(p.value()).to_matrix();
    WernerState {
        param: p,
        state: DensityMatrix::from_trusted(m, Dims::Single(4)),
        is_entangled: p.is_entangled(),
    }
}

/// Ginibre matrix with i.i.d. standard complex normal entries.
pub fn ginibre(rng: &mut ChaCha8Rng, d: usize) -> ComplexMatrix {
    let data = (0..d * d)
        .map(|_| {
            let re: f64 = StandardNormal.sample(rng);
            let im: f64 = StandardNormal.sample(rng);
            Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
        })
        .collect();
    ComplexMatrix::new(d, data).expect("finite normal draws")
}

/// Hilbert–Schmidt random state `G G† / Tr(G G†)` for a seeded Ginibre `G`.
pub fn random_density(seed: u64, d: usize) -> DensityMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_density_from(&mut rng, d)
}

/// As [`random_density`], drawing from an existing generator.
pub fn random_density_from(rng: &mut ChaCha8Rng, d: usize) -> DensityMatrix {
    assert!(d >= 1, "dimension must be positive");
    let g = ginibre(rng, d);
    let mut w = &g * &g.adjoint();
    let tr = linalg::trace(&w).re;
    w = w.scale(1.0 / tr);
    for i in 0..d {
        w[(i, i)].im = 0.0;
        for j in (i + 1)..d {
            w[(j, i)] = w[(i, j)].conj();
        }
    }
    DensityMatrix::from_trusted(w, Dims::Single(d))
}

/// Uniformly random pure state `|ψ⟩⟨ψ|`.
pub fn random_pure_state(rng: &mut ChaCha8Rng, d: usize) -> DensityMatrix {
    let g = ginibre(rng, d);
    let psi: Vec<Complex64> = (0..d).map(|i| g[(i, 0)]).collect();
    let norm_sq: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
    let mut m = ComplexMatrix::zeros(d);
    for i in 0..d {
        for j in 0..d {
            m[(i, j)] = psi[i] * psi[j].conj() / norm_sq;
        }
        m[(i, i)].im = 0.0;
    }
    DensityMatrix::from_trusted(m, Dims::Single(d))
}

/// Haar-random unitary from the QR decomposition of a Ginibre matrix.
pub fn random_unitary(rng: &mut ChaCha8Rng, d: usize) -> ComplexMatrix {
    let g = ginibre(rng, d);
    // Modified Gram–Schmidt on the columns.
    let mut q = ComplexMatrix::zeros(d);
    for j in 0..d {
        let mut col: Vec<Complex64> = (0..d).map(|i| g[(i, j)]).collect();
        for k in 0..j {
            let proj: Complex64 = (0..d).map(|i| q[(i, k)].conj() * col[i]).sum();
            for (i, x) in col.iter_mut().enumerate() {
                *x -= proj * q[(i, k)];
            }
        }
        let norm = col.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for (i, x) in col.into_iter().enumerate() {
            q[(i, j)] = x / norm;
        }
    }
    q
}

/// Random valid X-state parameters: Dirichlet populations and coherences
/// uniformly inside the positivity disks.
pub fn random_x_params(rng: &mut ChaCha8Rng) -> XStateParams {
    use rand::Rng;
    let raw: [f64; 4] = std::array::from_fn(|_| -rng.random::<f64>().max(f64::MIN_POSITIVE).ln());
    let total: f64 = raw.iter().sum();
    let diag = raw.map(|x| x / total);
    let mut coherence = |a: f64, b: f64| {
        let r = (rng.random::<f64>() * a * b).sqrt();
        Complex64::from_polar(r, rng.random::<f64>() * std::f64::consts::TAU)
    };
    let c14 = coherence(diag[0], diag[3]);
    let c23 = coherence(diag[1], diag[2]);
    XStateParams { diag, c14, c23 }
}
