//! L-qubit register coherence evaluation.
//!
//! A coherence label selects one element of the reduced density matrix as
//! the ordered list of per-qubit eigenvalue pairs (i_n, j_n), i_n, j_n = ±½
//! (bit aliases 1 ↔ +½, 0 ↔ −½). The register geometry carries the pairwise
//! transit times ω_c t_s(m,n) that encode qubit separations; the discrete
//! mode oracle instead carries per-qubit mode phases k·r_n, which is the
//! exact assumption-free form.
//!
//! Pair orientation convention: for m < n the quadrature functionals read
//! the mode phase difference as Δφ_mn = +x·t_s(m,n), i.e. the lower-indexed
//! qubit carries the larger phase. Collinear position helpers follow the
//! same convention when positions are listed in decreasing order.

use crate::bath::BathSpec;
use crate::closedform::CoherenceValue;
use crate::kernels::{
    self, DecoherenceFunctions, QuadratureConfig, QuadratureError, ThermalPart,
};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RegisterError {
    #[error("coherence label must have length ≥ 1")]
    EmptyLabel,
    #[error("label entries must be ±1/2 (bits 0/1), got {0}")]
    InvalidSpin(f64),
    #[error("label bit strings must have equal nonzero length and contain only 0/1")]
    InvalidBits,
    #[error("geometry must be a symmetric nonnegative matrix with zero diagonal")]
    InvalidGeometry,
    #[error("geometry is {got}×{got} but the label has {want} qubits")]
    GeometryMismatch { got: usize, want: usize },
    #[error("mode frequencies must be positive and weights nonnegative")]
    InvalidMode,
    #[error("mode has {got} phases but the label has {want} qubits")]
    ModeMismatch { got: usize, want: usize },
    #[error(transparent)]
    Quadrature(#[from] QuadratureError),
}

/// Spin-½ eigenvalue of J_z: Up ↔ +½ ↔ bit 1, Down ↔ −½ ↔ bit 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spin {
    Up,
    Down,
}

impl Spin {
    pub fn value(self) -> f64 {
        match self {
            Spin::Up => 0.5,
            Spin::Down => -0.5,
        }
    }

    pub fn from_bit(b: char) -> Result<Self, RegisterError> {
        match b {
            '1' => Ok(Spin::Up),
            '0' => Ok(Spin::Down),
            _ => Err(RegisterError::InvalidBits),
        }
    }
}

/// The index pair set {i_n, j_n} selecting one reduced-density-matrix element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoherenceLabel {
    pairs: Vec<(Spin, Spin)>,
}

impl CoherenceLabel {
    pub fn new(pairs: Vec<(Spin, Spin)>) -> Result<Self, RegisterError> {
        if pairs.is_empty() {
            return Err(RegisterError::EmptyLabel);
        }
        Ok(Self { pairs })
    }

    /// Builds a label from bit strings, e.g. `from_bits("10", "01")` selects
    /// the element ⟨10|ρ|01⟩.
    pub fn from_bits(i_bits: &str, j_bits: &str) -> Result<Self, RegisterError> {
        if i_bits.is_empty() || i_bits.chars().count() != j_bits.chars().count() {
            return Err(RegisterError::InvalidBits);
        }
        let pairs = i_bits
            .chars()
            .zip(j_bits.chars())
            .map(|(i, j)| Ok::<_, RegisterError>((Spin::from_bit(i)?, Spin::from_bit(j)?)))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(pairs)
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Population element: i_n = j_n for every qubit.
    pub fn is_diagonal(&self) -> bool {
        self.pairs.iter().all(|(i, j)| i == j)
    }

    /// The Hermitian partner ⟨j|ρ|i⟩ of this element.
    pub fn swapped(&self) -> Self {
        Self {
            pairs: self.pairs.iter().map(|&(i, j)| (j, i)).collect(),
        }
    }

    pub fn pair(&self, n: usize) -> (f64, f64) {
        let (i, j) = self.pairs[n];
        (i.value(), j.value())
    }

    pub fn sum_i(&self) -> f64 {
        self.pairs.iter().map(|(i, _)| i.value()).sum()
    }

    pub fn sum_j(&self) -> f64 {
        self.pairs.iter().map(|(_, j)| j.value()).sum()
    }
}

/// Pairwise transit times τ_s(m,n) ≥ 0 (symmetric, zero diagonal).
#[derive(Debug, Clone, PartialEq)]
pub struct RegisterGeometry {
    len: usize,
    // upper triangle, row-major: (0,1), (0,2), ..., (1,2), ...
    transit: Vec<f64>,
}

impl RegisterGeometry {
    pub fn from_matrix(matrix: &[Vec<f64>]) -> Result<Self, RegisterError> {
        let l = matrix.len();
        if l == 0 || matrix.iter().any(|row| row.len() != l) {
            return Err(RegisterError::InvalidGeometry);
        }
        for (m, row) in matrix.iter().enumerate() {
            if row[m] != 0.0 {
                return Err(RegisterError::InvalidGeometry);
            }
            for (n, &v) in row.iter().enumerate() {
                let mirrored = matrix[n][m];
                if !(v >= 0.0) || !v.is_finite() || v != mirrored {
                    return Err(RegisterError::InvalidGeometry);
                }
            }
        }
        let mut transit = Vec::with_capacity(l * (l - 1) / 2);
        for (m, row) in matrix.iter().enumerate() {
            transit.extend_from_slice(&row[m + 1..]);
        }
        Ok(Self { len: l, transit })
    }

    /// Geometry of collinear qubits at the given (dimensionless) positions;
    /// τ_s(m,n) = |p_m − p_n|.
    pub fn collinear(positions: &[f64]) -> Result<Self, RegisterError> {
        if positions.is_empty() || positions.iter().any(|p| !p.is_finite()) {
            return Err(RegisterError::InvalidGeometry);
        }
        let l = positions.len();
        let mut transit = Vec::with_capacity(l * (l - 1) / 2);
        for m in 0..l {
            for n in (m + 1)..l {
                transit.push((positions[m] - positions[n]).abs());
            }
        }
        Ok(Self { len: l, transit })
    }

    /// All pairs share the same transit time (the two-qubit tables use this).
    pub fn uniform(len: usize, tau_s: f64) -> Result<Self, RegisterError> {
        if len == 0 || !(tau_s >= 0.0) || !tau_s.is_finite() {
            return Err(RegisterError::InvalidGeometry);
        }
        Ok(Self {
            len,
            transit: vec![tau_s; len * (len - 1) / 2],
        })
    }

    /// All transit times zero: the collective-coupling limit.
    pub fn zeros(len: usize) -> Result<Self, RegisterError> {
        Self::uniform(len, 0.0)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn transit(&self, m: usize, n: usize) -> f64 {
        if m == n {
            return 0.0;
        }
        let (a, b) = if m < n { (m, n) } else { (n, m) };
        // index of (a, b) in the packed upper triangle
        let idx = a * self.len - a * (a + 1) / 2 + (b - a - 1);
        self.transit[idx]
    }

    pub fn max_transit(&self) -> f64 {
        self.transit.iter().cloned().fold(0.0, f64::max)
    }
}

/// One bath mode of the discrete oracle: frequency x = ω/ω_c, coupling
/// weight |g|², and per-qubit phases k·r_n.
#[derive(Debug, Clone, PartialEq)]
pub struct Mode {
    pub x: f64,
    pub weight: f64,
    pub phases: Vec<f64>,
}

/// Explicit mode list for the exact discrete-sum coherence.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ModeSet {
    modes: Vec<Mode>,
}

impl ModeSet {
    pub fn new(modes: Vec<Mode>) -> Result<Self, RegisterError> {
        for m in &modes {
            if !(m.x > 0.0) || !m.x.is_finite() || !(m.weight >= 0.0) || !m.weight.is_finite() {
                return Err(RegisterError::InvalidMode);
            }
        }
        Ok(Self { modes })
    }

    pub fn empty() -> Self {
        Self { modes: Vec::new() }
    }

    pub fn modes(&self) -> &[Mode] {
        &self.modes
    }

    pub fn len(&self) -> usize {
        self.modes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modes.is_empty()
    }

    /// Riemann-samples the bath spectral density into `n` modes on (0, x_max]
    /// (right-endpoint rule, so the discrete sum converges to the continuum
    /// functionals at first order in 1/n). Phases are x_k·p_n for the given
    /// collinear qubit positions.
    pub fn riemann_sample(
        bath: &BathSpec,
        n: usize,
        x_max: f64,
        positions: &[f64],
    ) -> Result<Self, RegisterError> {
        if n == 0 || !(x_max > 0.0) {
            return Err(RegisterError::InvalidMode);
        }
        let h = x_max / n as f64;
        let modes = (1..=n)
            .map(|k| {
                let x = k as f64 * h;
                Mode {
                    x,
                    weight: bath.spectral_density_unchecked(x) * h,
                    phases: positions.iter().map(|p| x * p).collect(),
                }
            })
            .collect();
        Ok(Self { modes })
    }
}

/// Result of the discrete-mode oracle; `empty_modes` flags the degenerate
/// no-mode case, for which the coherence is trivially (1, 0).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscreteCoherence {
    pub value: CoherenceValue,
    pub functions: DecoherenceFunctions,
    pub empty_modes: bool,
}

/// Exact discrete-sum coherence of one register element: the three exponents
/// evaluated as finite sums over the given modes.
///
/// Per mode, with I = Σ_m i_m e^{iφ_m}, J = Σ_m j_m e^{iφ_m}, D = I − J:
/// the damping term is w·c(x,τ)·coth(x/2θ)·|D|², the s-phase term is
/// w·s(x,τ)·(|I|² − |J|²), and the c-phase term is 2w·c(x,τ)·Im(I·J̄).
/// These are the ordered double sums over qubit pairs, with no continuum
/// or separability assumption.
pub fn coherence_discrete(
    modes: &ModeSet,
    label: &CoherenceLabel,
    theta: f64,
    tau: f64,
) -> Result<DiscreteCoherence, RegisterError> {
    for m in modes.modes() {
        if m.phases.len() != label.len() {
            return Err(RegisterError::ModeMismatch {
                got: m.phases.len(),
                want: label.len(),
            });
        }
    }
    if modes.is_empty() {
        return Ok(DiscreteCoherence {
            value: CoherenceValue::new(1.0, 0.0),
            functions: DecoherenceFunctions::new(0.0, 0.0, 0.0),
            empty_modes: true,
        });
    }

    let l = label.len();
    let mut gamma = 0.0;
    let mut theta_phase = 0.0;
    let mut lambda_phase = 0.0;
    for mode in modes.modes() {
        let (mut ire, mut iim, mut jre, mut jim) = (0.0, 0.0, 0.0, 0.0);
        for n in 0..l {
            let (iv, jv) = label.pair(n);
            let (s, c) = mode.phases[n].sin_cos();
            ire += iv * c;
            iim += iv * s;
            jre += jv * c;
            jim += jv * s;
        }
        let (dre, dim) = (ire - jre, iim - jim);
        let kc = kernels::kernel_c(mode.x, tau);
        let ks = kernels::kernel_s(mode.x, tau);
        let coth = crate::bath::thermal_weight_unchecked(theta, mode.x);
        gamma += mode.weight * kc * coth * (dre * dre + dim * dim);
        theta_phase += mode.weight * ks * (ire * ire + iim * iim - jre * jre - jim * jim);
        // Im(I·conj(J)) = iim·jre − ire·jim
        lambda_phase += 2.0 * mode.weight * kc * (iim * jre - ire * jim);
    }

    let functions = DecoherenceFunctions::new(gamma.max(0.0), theta_phase, lambda_phase);
    Ok(DiscreteCoherence {
        value: CoherenceValue::from_exponents(functions.gamma, functions.aleph),
        functions,
        empty_modes: false,
    })
}

/// Continuum-limit coherence of one element under independent (position
/// dependent) coupling: magnitude e^{−Γ}, phase Θ − Λ, all three functionals
/// by adaptive quadrature.
pub fn coherence_independent(
    bath: &BathSpec,
    geometry: &RegisterGeometry,
    label: &CoherenceLabel,
    tau: f64,
    cfg: &QuadratureConfig,
) -> Result<CoherenceValue, RegisterError> {
    if geometry.len() != label.len() {
        return Err(RegisterError::GeometryMismatch {
            got: geometry.len(),
            want: label.len(),
        });
    }
    if label.is_diagonal() {
        return Ok(CoherenceValue::new(1.0, 0.0));
    }
    let f = kernels::decoherence_functions(bath, geometry, label, tau, cfg)?;
    Ok(CoherenceValue::from_exponents(f.gamma, f.aleph))
}

/// Collective and phase weights of a label, and whether it lives in the
/// decoherence-free subspace under collective coupling.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DfsClassification {
    pub dfs: bool,
    /// [Σ(i_m − j_m)]² — multiplies Γ_d under collective coupling.
    pub damping_weight: f64,
    /// (Σi)² − (Σj)² — multiplies Θ_d under collective coupling.
    pub phase_weight: f64,
}

/// Classifies a label by its collective damping and phase weights.
pub fn dfs_classify(label: &CoherenceLabel) -> DfsClassification {
    let si = label.sum_i();
    let sj = label.sum_j();
    let damping_weight = (si - sj) * (si - sj);
    let phase_weight = si * si - sj * sj;
    DfsClassification {
        dfs: damping_weight == 0.0 && phase_weight == 0.0,
        damping_weight,
        phase_weight,
    }
}

/// Coherence of one element when every qubit sees the same bath (collective
/// coupling): magnitude exp{−Γ_d·[Σ(i−j)]²}, phase Θ_d·[(Σi)² − (Σj)²].
///
/// Decoherence-free labels (both weights zero) return (1, 0) without
/// touching the quadrature, so arbitrarily large times are exact.
pub fn coherence_collective(
    bath: &BathSpec,
    label: &CoherenceLabel,
    tau: f64,
    cfg: &QuadratureConfig,
) -> Result<CoherenceValue, RegisterError> {
    let class = dfs_classify(label);
    if class.dfs {
        return Ok(CoherenceValue::new(1.0, 0.0));
    }
    let gamma = if class.damping_weight != 0.0 {
        class.damping_weight * kernels::gamma_collective(bath, tau, cfg)?
    } else {
        0.0
    };
    let phase = if class.phase_weight != 0.0 {
        class.phase_weight * kernels::theta_collective(bath, tau, cfg)?
    } else {
        0.0
    };
    Ok(CoherenceValue::from_exponents(gamma, phase))
}

/// Vacuum/thermal-only variant of the collective damping exponent, with the
/// label weight applied (used for the fluctuation-split curves).
pub fn collective_damping_part(
    bath: &BathSpec,
    label: &CoherenceLabel,
    tau: f64,
    part: ThermalPart,
    cfg: &QuadratureConfig,
) -> Result<f64, RegisterError> {
    let class = dfs_classify(label);
    if class.damping_weight == 0.0 {
        return Ok(0.0);
    }
    Ok(class.damping_weight * kernels::gamma_collective_part(bath, tau, part, cfg)?)
}

/// Decay factor of the fastest-decaying register elements (all-ones vs
/// all-zeros) under independent coupling, evaluated at mode frequency x:
/// f(L) = L + 2 Σ_{m<n} cos(x·τ_s(m,n)).
pub fn fastest_decay_factor(geometry: &RegisterGeometry, x: f64) -> f64 {
    let l = geometry.len();
    let mut f = l as f64;
    for m in 0..l {
        for n in (m + 1)..l {
            f += 2.0 * (x * geometry.transit(m, n)).cos();
        }
    }
    f
}

/// Collective counterpart of [`fastest_decay_factor`]: exactly L².
pub fn fastest_decay_factor_collective(l: usize) -> f64 {
    (l * l) as f64
}
