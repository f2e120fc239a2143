//! Exact complex linear algebra for one to three qubits: pure states, 2x2
//! unitaries, small density matrices, computational-basis measurement, and
//! trace distance.
//!
//! Everything is plain double-precision arithmetic. All quantities handled
//! by the simulator are closed-form at these dimensions, which leaves many
//! orders of magnitude between the working precision and every tolerance
//! below.

use std::fmt;
use std::ops::BitXor;

use num_complex::Complex64;
use rand::Rng;

use crate::error::QubitError;
use crate::matrix;

/// Normalization tolerance for pure states and density-matrix invariants.
pub const NORM_TOL: f64 = 1e-12;

/// Unitarity defect above which [`Unitary2::apply`] rejects the operator.
pub const UNITARITY_REJECT_TOL: f64 = 1e-9;

/// Default tolerance for the deterministic measurement: a basis outcome is
/// accepted when its probability is at least `1 - MEASURE_TOL`.
pub const MEASURE_TOL: f64 = 1e-9;

/// Eigenvalue floor for the positive-semidefiniteness check.
pub const PSD_FLOOR: f64 = -1e-10;

/// A classical bit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bit(bool);

impl Bit {
    pub const ZERO: Bit = Bit(false);
    pub const ONE: Bit = Bit(true);

    pub fn new(value: bool) -> Self {
        Bit(value)
    }

    /// Uniform random bit.
    pub fn random<R: Rng>(rng: &mut R) -> Self {
        Bit(rng.gen::<bool>())
    }

    pub fn as_bool(self) -> bool {
        self.0
    }

    pub fn as_u8(self) -> u8 {
        u8::from(self.0)
    }

    pub fn as_index(self) -> usize {
        usize::from(self.0)
    }

    pub fn flipped(self) -> Self {
        Bit(!self.0)
    }
}

impl From<bool> for Bit {
    fn from(value: bool) -> Self {
        Bit(value)
    }
}

impl BitXor for Bit {
    type Output = Bit;

    fn bitxor(self, rhs: Bit) -> Bit {
        Bit(self.0 ^ rhs.0)
    }
}

impl fmt::Display for Bit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_u8())
    }
}

/// A normalized single-qubit pure state `amp0 |0> + amp1 |1>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PureState {
    amp0: Complex64,
    amp1: Complex64,
}

impl PureState {
    /// Wraps the amplitudes, rejecting vectors whose squared norm is more
    /// than [`NORM_TOL`] away from 1.
    pub fn new(amp0: Complex64, amp1: Complex64) -> Result<Self, QubitError> {
        let norm_sqr = amp0.norm_sqr() + amp1.norm_sqr();
        if (norm_sqr - 1.0).abs() > NORM_TOL {
            return Err(QubitError::NotNormalized(norm_sqr));
        }
        Ok(PureState { amp0, amp1 })
    }

    pub(crate) fn new_unchecked(amp0: Complex64, amp1: Complex64) -> Self {
        PureState { amp0, amp1 }
    }

    /// The computational-basis state `|b>`.
    pub fn basis(b: Bit) -> Self {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        if b.as_bool() {
            PureState { amp0: zero, amp1: one }
        } else {
            PureState { amp0: one, amp1: zero }
        }
    }

    /// The equatorial state `(|0> + e^{i theta} |1>) / sqrt(2)`.
    pub fn equatorial(theta: f64) -> Self {
        let inv = std::f64::consts::FRAC_1_SQRT_2;
        PureState {
            amp0: Complex64::new(inv, 0.0),
            amp1: Complex64::from_polar(inv, theta),
        }
    }

    pub fn amp0(&self) -> Complex64 {
        self.amp0
    }

    pub fn amp1(&self) -> Complex64 {
        self.amp1
    }

    pub fn prob0(&self) -> f64 {
        self.amp0.norm_sqr()
    }

    pub fn prob1(&self) -> f64 {
        self.amp1.norm_sqr()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.prob0() + self.prob1()
    }

    /// Deterministic computational-basis readout.
    ///
    /// Returns `b` when `P[b] >= 1 - tol`; this models a measurement that
    /// succeeds with probability 1. Anything else is an
    /// [`QubitError::AmbiguousState`] — the decryptor applied a wrong
    /// inverse. No sampling happens here; see [`PureState::sample_measure`].
    pub fn measure_computational(&self, tol: f64) -> Result<Bit, QubitError> {
        let p0 = self.prob0();
        let p1 = self.prob1();
        if p1 >= 1.0 - tol {
            Ok(Bit::ONE)
        } else if p0 >= 1.0 - tol {
            Ok(Bit::ZERO)
        } else {
            Err(QubitError::AmbiguousState { p0, p1 })
        }
    }

    /// Born-rule sample: returns `b` with probability `|amp_b|^2`.
    pub fn sample_measure<R: Rng>(&self, rng: &mut R) -> Bit {
        let u: f64 = rng.gen();
        Bit::new(u >= self.prob0())
    }

    /// Entrywise comparison, sensitive to global phase.
    pub fn approx_eq(&self, other: &PureState, tol: f64) -> bool {
        (self.amp0 - other.amp0).norm() <= tol && (self.amp1 - other.amp1).norm() <= tol
    }
}

/// A 2x2 complex matrix intended to be unitary.
///
/// Construction does not validate; [`Unitary2::apply`] rejects operators
/// whose unitarity defect exceeds [`UNITARITY_REJECT_TOL`], so invalid
/// matrices cannot act on states.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Unitary2 {
    entries: [[Complex64; 2]; 2],
}

impl Unitary2 {
    pub fn new(entries: [[Complex64; 2]; 2]) -> Self {
        Unitary2 { entries }
    }

    pub fn identity() -> Self {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        Unitary2 { entries: [[one, zero], [zero, one]] }
    }

    pub fn entries(&self) -> &[[Complex64; 2]; 2] {
        &self.entries
    }

    /// Conjugate transpose. `u.dagger().dagger() == u` exactly.
    pub fn dagger(&self) -> Self {
        let e = &self.entries;
        Unitary2 {
            entries: [
                [e[0][0].conj(), e[1][0].conj()],
                [e[0][1].conj(), e[1][1].conj()],
            ],
        }
    }

    /// Matrix product `self * other`.
    pub fn compose(&self, other: &Unitary2) -> Self {
        let a = &self.entries;
        let b = &other.entries;
        let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        Unitary2 { entries: out }
    }

    /// Max entrywise deviation of `U† U` and `U U†` from the identity.
    pub fn unitarity_defect(&self) -> f64 {
        let dag = self.dagger();
        let left = dag.compose(self);
        let right = self.compose(&dag);
        let mut worst = 0.0f64;
        for (i, _) in self.entries.iter().enumerate() {
            for j in 0..2 {
                let id = if i == j {
                    Complex64::new(1.0, 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                };
                worst = worst.max((left.entries[i][j] - id).norm());
                worst = worst.max((right.entries[i][j] - id).norm());
            }
        }
        worst
    }

    /// Applies the operator to a state: `u |psi>`.
    ///
    /// Rejects non-unitary operators (defect above
    /// [`UNITARITY_REJECT_TOL`]) so the output is guaranteed normalized.
    pub fn apply(&self, psi: &PureState) -> Result<PureState, QubitError> {
        let defect = self.unitarity_defect();
        if defect > UNITARITY_REJECT_TOL {
            return Err(QubitError::NotUnitary(defect));
        }
        let e = &self.entries;
        Ok(PureState::new_unchecked(
            e[0][0] * psi.amp0 + e[0][1] * psi.amp1,
            e[1][0] * psi.amp0 + e[1][1] * psi.amp1,
        ))
    }

    /// Entrywise comparison.
    pub fn approx_eq(&self, other: &Unitary2, tol: f64) -> bool {
        self.entries
            .iter()
            .flatten()
            .zip(other.entries.iter().flatten())
            .all(|(a, b)| (a - b).norm() <= tol)
    }
}

/// A dim x dim density matrix (dim in {2, 4, 8}): Hermitian, positive
/// semidefinite, unit trace.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

impl DensityMatrix {
    /// Validates and wraps a row-major matrix.
    pub fn new(dim: usize, entries: Vec<Complex64>) -> Result<Self, QubitError> {
        if !matches!(dim, 2 | 4 | 8) {
            return Err(QubitError::UnsupportedDimension(dim));
        }
        if entries.len() != dim * dim {
            return Err(QubitError::DimensionMismatch { left: entries.len(), right: dim * dim });
        }
        let herm = matrix::hermitian_defect(dim, &entries);
        if herm > NORM_TOL {
            return Err(QubitError::NotHermitian(herm));
        }
        let trace: f64 = (0..dim).map(|i| entries[i * dim + i].re).sum();
        if (trace - 1.0).abs() > NORM_TOL {
            return Err(QubitError::TraceNotOne(trace));
        }
        let eigs = matrix::hermitian_eigenvalues(dim, &entries)?;
        let min = eigs.first().copied().unwrap_or(0.0);
        if min < PSD_FLOOR {
            return Err(QubitError::NotPositiveSemidefinite(min));
        }
        Ok(DensityMatrix { dim, entries })
    }

    /// The projector `|psi><psi|`.
    pub fn from_pure(psi: &PureState) -> Self {
        let amps = [psi.amp0(), psi.amp1()];
        let mut entries = vec![Complex64::new(0.0, 0.0); 4];
        for i in 0..2 {
            for j in 0..2 {
                entries[i * 2 + j] = amps[i] * amps[j].conj();
            }
        }
        DensityMatrix { dim: 2, entries }
    }

    /// The maximally mixed state `I / dim`.
    pub fn maximally_mixed(dim: usize) -> Result<Self, QubitError> {
        if !matches!(dim, 2 | 4 | 8) {
            return Err(QubitError::UnsupportedDimension(dim));
        }
        let mut entries = vec![Complex64::new(0.0, 0.0); dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = Complex64::new(1.0 / dim as f64, 0.0);
        }
        Ok(DensityMatrix { dim, entries })
    }

    /// A diagonal (classical) state from outcome probabilities.
    pub fn diagonal(probs: &[f64]) -> Result<Self, QubitError> {
        let dim = probs.len();
        let mut entries = vec![Complex64::new(0.0, 0.0); dim * dim];
        for (i, &p) in probs.iter().enumerate() {
            entries[i * dim + i] = Complex64::new(p, 0.0);
        }
        DensityMatrix::new(dim, entries)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        matrix::at(&self.entries, self.dim, i, j)
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self.entry(i, i).re).sum()
    }

    pub fn eigenvalues(&self) -> Result<Vec<f64>, QubitError> {
        matrix::hermitian_eigenvalues(self.dim, &self.entries)
    }

    /// Kronecker product; the product dimension must stay within 8.
    pub fn tensor(&self, other: &DensityMatrix) -> Result<DensityMatrix, QubitError> {
        let dim = self.dim * other.dim;
        if dim > 8 {
            return Err(QubitError::DimensionOverflow(dim));
        }
        let entries = matrix::kron(self.dim, &self.entries, other.dim, &other.entries);
        Ok(DensityMatrix { dim, entries })
    }

    /// Trace distance `1/2 sum |eigenvalues(self - other)|`.
    ///
    /// Symmetric, in [0, 1], and zero exactly when the operators agree.
    pub fn trace_distance(&self, other: &DensityMatrix) -> Result<f64, QubitError> {
        if self.dim != other.dim {
            return Err(QubitError::DimensionMismatch { left: self.dim, right: other.dim });
        }
        let diff: Vec<Complex64> = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a - b)
            .collect();
        let eigs = matrix::hermitian_eigenvalues(self.dim, &diff)?;
        Ok(eigs.iter().map(|e| e.abs()).sum::<f64>() / 2.0)
    }

    /// Traces out the trailing subsystem of dimension `dim_b`.
    pub fn partial_trace_second(&self, dim_b: usize) -> Result<DensityMatrix, QubitError> {
        if dim_b == 0 || !self.dim.is_multiple_of(dim_b) {
            return Err(QubitError::DimensionMismatch { left: self.dim, right: dim_b });
        }
        let dim_a = self.dim / dim_b;
        let mut out = vec![Complex64::new(0.0, 0.0); dim_a * dim_a];
        for ia in 0..dim_a {
            for ja in 0..dim_a {
                for b in 0..dim_b {
                    out[ia * dim_a + ja] += self.entry(ia * dim_b + b, ja * dim_b + b);
                }
            }
        }
        DensityMatrix::new(dim_a, out)
    }

    /// Traces out the leading subsystem of dimension `dim_a`.
    pub fn partial_trace_first(&self, dim_a: usize) -> Result<DensityMatrix, QubitError> {
        if dim_a == 0 || !self.dim.is_multiple_of(dim_a) {
            return Err(QubitError::DimensionMismatch { left: self.dim, right: dim_a });
        }
        let dim_b = self.dim / dim_a;
        let mut out = vec![Complex64::new(0.0, 0.0); dim_b * dim_b];
        for ib in 0..dim_b {
            for jb in 0..dim_b {
                for a in 0..dim_a {
                    out[ib * dim_b + jb] += self.entry(a * dim_b + ib, a * dim_b + jb);
                }
            }
        }
        DensityMatrix::new(dim_b, out)
    }

    /// Max entrywise deviation between two matrices of equal dimension.
    pub fn max_entry_deviation(&self, other: &DensityMatrix) -> Result<f64, QubitError> {
        if self.dim != other.dim {
            return Err(QubitError::DimensionMismatch { left: self.dim, right: other.dim });
        }
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }
}
