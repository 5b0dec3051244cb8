//! Dense complex linear algebra for bipartite pure states: tensor products,
//! partial traces, Schmidt decompositions and fidelities.

use nalgebra::linalg::SymmetricEigen;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{czero, CMatrix, CVector, Complex, Real};

/// Practical ceiling on dense state vectors (about one million amplitudes).
pub const MAX_AMPLITUDES: usize = 1 << 20;

/// Default relative tolerance on squared singular values used when cutting a
/// Schmidt spectrum. The Schmidt rank is tolerance-dependent; the value used
/// is recorded in the returned decomposition.
pub const DEFAULT_SCHMIDT_TOL: f64 = 1e-12;

/// Tolerance on the Euclidean norm of a state vector.
pub const NORM_TOL: f64 = 1e-10;

/// Which subsystem of a bipartite state to keep in a partial trace.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Subsystem {
    A,
    B,
}

/// Normalized pure state on `H_A ⊗ H_B` with a declared split.
///
/// Amplitudes are stored in Kronecker order: the basis state `|a⟩|b⟩` sits at
/// index `a·dim_b + b`. A single-subsystem state uses the split `(dim, 1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PureState<T: Real> {
    amplitudes: CVector<T>,
    dim_a: usize,
    dim_b: usize,
}

#[derive(Serialize, Deserialize)]
struct PureStateRepr<T> {
    dim_a: usize,
    dim_b: usize,
    amplitudes: Vec<[T; 2]>,
}

impl<T: Real> Serialize for PureState<T> {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        PureStateRepr {
            dim_a: self.dim_a,
            dim_b: self.dim_b,
            amplitudes: self.amplitudes.iter().map(|c| [c.re, c.im]).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de, T: Real> Deserialize<'de> for PureState<T> {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = PureStateRepr::<T>::deserialize(deserializer)?;
        let amps = CVector::from_iterator(
            repr.amplitudes.len(),
            repr.amplitudes.iter().map(|&[re, im]| Complex::new(re, im)),
        );
        PureState::new(amps, repr.dim_a, repr.dim_b).map_err(serde::de::Error::custom)
    }
}

impl<T: Real> PureState<T> {
    /// Builds a state from amplitudes, validating the split and the norm.
    pub fn new(amplitudes: CVector<T>, dim_a: usize, dim_b: usize) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::EmptyVector);
        }
        if amplitudes.len() > MAX_AMPLITUDES {
            return Err(Error::StateTooLarge { len: amplitudes.len(), max: MAX_AMPLITUDES });
        }
        if dim_a == 0 || dim_b == 0 || amplitudes.len() != dim_a * dim_b {
            return Err(Error::InvalidSplit { len: amplitudes.len(), dim_a, dim_b });
        }
        let norm = amplitudes.norm().f64();
        if (norm - 1.0).abs() > T::validation_tol() {
            return Err(Error::NotNormalized { norm });
        }
        Ok(Self { amplitudes, dim_a, dim_b })
    }

    /// Builds a state from unnormalized amplitudes by rescaling.
    pub fn from_unnormalized(amplitudes: CVector<T>, dim_a: usize, dim_b: usize) -> Result<Self> {
        let norm = amplitudes.norm();
        if norm.f64() < 1e-150 {
            return Err(Error::NotNormalized { norm: norm.f64() });
        }
        Self::new(amplitudes.map(|c| c / Complex::new(norm, T::zero())), dim_a, dim_b)
    }

    /// Computational basis state `|index⟩` on the full space.
    pub fn basis(dim_a: usize, dim_b: usize, index: usize) -> Result<Self> {
        let len = dim_a.saturating_mul(dim_b);
        if index >= len {
            return Err(Error::IndexOutOfRange { index, dim: len });
        }
        let mut amps = CVector::from_element(len, czero());
        amps[index] = Complex::new(T::one(), T::zero());
        Self::new(amps, dim_a, dim_b)
    }

    /// Single-subsystem state (split `(dim, 1)`).
    pub fn unsplit(amplitudes: CVector<T>) -> Result<Self> {
        let len = amplitudes.len();
        Self::new(amplitudes, len, 1)
    }

    pub fn dim_a(&self) -> usize {
        self.dim_a
    }

    pub fn dim_b(&self) -> usize {
        self.dim_b
    }

    /// `(dim_a, dim_b)`.
    pub fn dims(&self) -> (usize, usize) {
        (self.dim_a, self.dim_b)
    }

    /// Total dimension `dim_a · dim_b`.
    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &CVector<T> {
        &self.amplitudes
    }

    /// Reinterprets the same amplitude vector under a different split.
    pub fn resplit(&self, dim_a: usize, dim_b: usize) -> Result<Self> {
        Self::new(self.amplitudes.clone(), dim_a, dim_b)
    }

    /// Amplitudes reshaped as the `dim_a × dim_b` coefficient matrix.
    pub fn matrix_view(&self) -> CMatrix<T> {
        // Amplitude index a·dim_b + b maps to entry (a, b); nalgebra stores
        // column-major, so fill through a row-major iterator.
        CMatrix::from_fn(self.dim_a, self.dim_b, |a, b| self.amplitudes[a * self.dim_b + b])
    }

    /// Inner product `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> Result<Complex<T>> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch { left: self.dim(), right: other.dim() });
        }
        Ok(self.amplitudes.dotc(&other.amplitudes))
    }

    /// Projector `|self⟩⟨self|` as a dense matrix.
    pub fn projector(&self) -> CMatrix<T> {
        let n = self.dim();
        CMatrix::from_fn(n, n, |i, j| self.amplitudes[i] * self.amplitudes[j].conj())
    }

    /// Applies a unitary on the full space.
    pub fn apply(&self, unitary: &CMatrix<T>) -> Result<Self> {
        if unitary.ncols() != self.dim() {
            return Err(Error::DimensionMismatch { left: unitary.ncols(), right: self.dim() });
        }
        Self::from_unnormalized(unitary * &self.amplitudes, self.dim_a, self.dim_b)
    }

    /// Applies a unitary to subsystem B only (`𝕀_A ⊗ V`).
    pub fn apply_on_b(&self, v: &CMatrix<T>) -> Result<Self> {
        if v.ncols() != self.dim_b || v.nrows() != self.dim_b {
            return Err(Error::DimensionMismatch { left: v.ncols(), right: self.dim_b });
        }
        let m = self.matrix_view() * v.transpose();
        let amps = CVector::from_iterator(
            self.dim(),
            (0..self.dim_a).flat_map(|a| (0..self.dim_b).map(move |b| (a, b))).map(|(a, b)| m[(a, b)]),
        );
        Self::from_unnormalized(amps, self.dim_a, self.dim_b)
    }

    /// Serializes to the canonical JSON document
    /// `{dim_a, dim_b, amplitudes: [[re, im], …]}`.
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    /// Parses the canonical JSON document, validating the invariants.
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

/// Kronecker product of two normalized vectors, with split
/// `(len(a), len(b))`.
pub fn tensor<T: Real>(a: &CVector<T>, b: &CVector<T>) -> Result<PureState<T>> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptyVector);
    }
    let len = a.len().checked_mul(b.len()).ok_or(Error::StateTooLarge {
        len: usize::MAX,
        max: MAX_AMPLITUDES,
    })?;
    if len > MAX_AMPLITUDES {
        return Err(Error::StateTooLarge { len, max: MAX_AMPLITUDES });
    }
    let amps = CVector::from_iterator(
        len,
        a.iter().flat_map(|&x| b.iter().map(move |&y| x * y)),
    );
    PureState::new(amps, a.len(), b.len())
}

/// Tensor product of two states; the result's split is
/// `(dim(a), dim(b))` regardless of the operands' internal splits.
pub fn tensor_states<T: Real>(a: &PureState<T>, b: &PureState<T>) -> Result<PureState<T>> {
    tensor(a.amplitudes(), b.amplitudes())
}

/// Hermitian, unit-trace, positive-semidefinite matrix.
#[derive(Clone, Debug)]
pub struct DensityMatrix<T: Real> {
    matrix: CMatrix<T>,
    dim: usize,
}

impl<T: Real> DensityMatrix<T> {
    /// Validates Hermiticity, unit trace and positive semidefiniteness
    /// (within `1e-10`).
    pub fn new(matrix: CMatrix<T>) -> Result<Self> {
        let dim = matrix.nrows();
        if dim == 0 || matrix.ncols() != dim {
            return Err(Error::DimensionMismatch { left: matrix.nrows(), right: matrix.ncols() });
        }
        let tol = T::validation_tol();
        let herm = (&matrix - matrix.adjoint()).map(|c| c.norm_sqr().f64().sqrt()).max();
        if herm > tol {
            return Err(Error::MatrixValidation { property: "Hermitian", violation: herm });
        }
        let trace_dev = (matrix.trace().re.f64() - 1.0).abs().max(matrix.trace().im.f64().abs());
        if trace_dev > tol {
            return Err(Error::MatrixValidation { property: "unit trace", violation: trace_dev });
        }
        let eig = SymmetricEigen::new(matrix.clone());
        let min_eig = eig.eigenvalues.iter().fold(f64::INFINITY, |m, &e| m.min(e.f64()));
        if min_eig < -tol {
            return Err(Error::MatrixValidation {
                property: "positive semidefinite",
                violation: -min_eig,
            });
        }
        Ok(Self { matrix, dim })
    }

    pub fn matrix(&self) -> &CMatrix<T> {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn trace(&self) -> T {
        self.matrix.trace().re
    }

    /// Real eigenvalues in descending order.
    pub fn eigenvalues(&self) -> Vec<T> {
        let eig = SymmetricEigen::new(self.matrix.clone());
        let mut vals: Vec<T> = eig.eigenvalues.iter().copied().collect();
        vals.sort_by(|a, b| b.partial_cmp(a).expect("eigenvalues are finite"));
        vals
    }
}

/// Reduced density matrix on the kept subsystem.
pub fn partial_trace<T: Real>(state: &PureState<T>, keep: Subsystem) -> DensityMatrix<T> {
    let m = state.matrix_view();
    let rho = match keep {
        Subsystem::A => &m * m.adjoint(),
        Subsystem::B => (m.adjoint() * &m).transpose(),
    };
    DensityMatrix::new(rho).expect("partial trace of a normalized pure state is a density matrix")
}

/// Schmidt decomposition `|ψ⟩ = Σ √p_i |u_i⟩|v_i⟩` of a bipartite state.
///
/// Coefficients are the squared singular values of the coefficient matrix,
/// descending; squared values below `tol` times the largest are dropped and
/// `rank` counts the retained terms.
#[derive(Clone, Debug)]
pub struct SchmidtDecomposition<T: Real> {
    pub coefficients: Vec<T>,
    pub basis_a: Vec<CVector<T>>,
    pub basis_b: Vec<CVector<T>>,
    pub rank: usize,
    pub tolerance_used: T,
}

impl<T: Real> SchmidtDecomposition<T> {
    /// Rebuilds `Σ √p_i |u_i⟩|v_i⟩` as a state with the original split.
    pub fn reconstruct(&self, dim_a: usize, dim_b: usize) -> Result<PureState<T>> {
        let mut amps = CVector::from_element(dim_a * dim_b, czero());
        for ((p, u), v) in self.coefficients.iter().zip(&self.basis_a).zip(&self.basis_b) {
            let w = Complex::new(p.sqrt(), T::zero());
            for a in 0..dim_a {
                for b in 0..dim_b {
                    amps[a * dim_b + b] += w * u[a] * v[b];
                }
            }
        }
        PureState::from_unnormalized(amps, dim_a, dim_b)
    }
}

/// Schmidt decomposition through the Hermitian eigendecomposition of the
/// reduced density matrix `ρ_A = M M†` (equivalent to an SVD of the
/// coefficient matrix `M`).
///
/// Each `|u_i⟩` is phase-fixed so that its first significant amplitude is
/// real positive, which makes transcripts reproducible.
pub fn schmidt<T: Real>(state: &PureState<T>, tol: T) -> Result<SchmidtDecomposition<T>> {
    let tol_f = tol.f64();
    if !(tol_f > 0.0 && tol_f < 1.0) {
        return Err(Error::InvalidParameter { name: "tol", value: tol_f });
    }
    let m = state.matrix_view();
    let rho_a = &m * m.adjoint();
    let eig = SymmetricEigen::new(rho_a);

    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&i, &j| {
        eig.eigenvalues[j]
            .partial_cmp(&eig.eigenvalues[i])
            .expect("eigenvalues are finite")
    });
    let p_max = eig.eigenvalues[order[0]];
    if p_max.f64() <= 0.0 {
        return Err(Error::Decomposition("reduced density matrix has no positive eigenvalue"));
    }

    let mut coefficients = Vec::new();
    let mut basis_a = Vec::new();
    let mut basis_b = Vec::new();
    for &idx in &order {
        let p = eig.eigenvalues[idx];
        if p < tol * p_max {
            break;
        }
        let mut u: CVector<T> = eig.eigenvectors.column(idx).into_owned();
        // Phase convention: first amplitude with non-negligible modulus is
        // made real positive.
        if let Some(k) = u.iter().position(|c| c.norm_sqr().f64() > 1e-16) {
            let phase = u[k] / Complex::new(u[k].norm(), T::zero());
            u /= phase;
        }
        let sqrt_p = Complex::new(p.sqrt(), T::zero());
        // ⟨u_i|M = √p_i v_iᵀ, so v_i = (u_i† M)ᵀ / √p_i.
        let mut v: CVector<T> = (u.adjoint() * &m).transpose() / sqrt_p;
        let vn = v.norm();
        v /= Complex::new(vn, T::zero());
        coefficients.push(p);
        basis_a.push(u);
        basis_b.push(v);
    }

    Ok(SchmidtDecomposition {
        rank: coefficients.len(),
        coefficients,
        basis_a,
        basis_b,
        tolerance_used: tol,
    })
}

/// Squared overlap `|⟨a|b⟩|²`.
pub fn fidelity<T: Real>(a: &PureState<T>, b: &PureState<T>) -> Result<T> {
    Ok(a.inner(b)?.norm_sqr())
}

/// Haar-distributed state: i.i.d. complex Gaussian amplitudes, normalized.
///
/// Sampling is performed at `f64` precision regardless of the scalar type so
/// that a fixed RNG stream yields the same state for every instantiation.
pub fn random_pure_state<T: Real>(dim_a: usize, dim_b: usize, rng: &mut impl Rng) -> Result<PureState<T>> {
    if dim_a == 0 || dim_b == 0 {
        return Err(Error::InvalidSplit { len: 0, dim_a, dim_b });
    }
    let len = dim_a * dim_b;
    let amps = CVector::from_iterator(
        len,
        (0..len).map(|_| {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            T::c(re, im)
        }),
    );
    PureState::from_unnormalized(amps, dim_a, dim_b)
}

/// The Bell state `(|00⟩ + |11⟩)/√2` on a 2×2 split.
pub fn bell_state<T: Real>() -> PureState<T> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let amps = CVector::from_vec(vec![T::c(h, 0.0), T::c(0.0, 0.0), T::c(0.0, 0.0), T::c(h, 0.0)]);
    PureState::new(amps, 2, 2).expect("Bell state is normalized")
}

/// State with a uniform Schmidt spectrum of rank `chi` on a `chi × dim_b`
/// split (`chi ≤ dim_b`): `Σ_i |i⟩|i⟩ / √χ`.
pub fn uniform_schmidt_state<T: Real>(chi: usize, dim_b: usize) -> Result<PureState<T>> {
    if chi == 0 || chi > dim_b {
        return Err(Error::InvalidParameter { name: "chi", value: chi as f64 });
    }
    let mut amps = CVector::from_element(chi * dim_b, czero());
    let w = T::c(1.0 / (chi as f64).sqrt(), 0.0);
    for i in 0..chi {
        amps[i * dim_b + i] = w;
    }
    PureState::new(amps, chi, dim_b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::restoration::fig1_state;
    use approx::assert_abs_diff_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn qubit(theta: f64) -> CVector<f64> {
        CVector::from_vec(vec![
            Complex::new(theta.cos(), 0.0),
            Complex::new(theta.sin(), 0.0),
        ])
    }

    #[test]
    fn tensor_of_basis_states() {
        let zero = qubit(0.0);
        let s = tensor(&zero, &zero).unwrap();
        assert_eq!(s.dims(), (2, 2));
        assert_abs_diff_eq!(s.amplitudes()[0].re, 1.0, epsilon = 1e-15);
        for k in 1..4 {
            assert_abs_diff_eq!(s.amplitudes()[k].norm_sqr(), 0.0, epsilon = 1e-30);
        }
    }

    #[test]
    fn tensor_is_linear_in_the_left_factor() {
        let plus = qubit(std::f64::consts::FRAC_PI_4);
        let zero = qubit(0.0);
        let s = tensor(&plus, &zero).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert_abs_diff_eq!(s.amplitudes()[0].re, h, epsilon = 1e-15);
        assert_abs_diff_eq!(s.amplitudes()[2].re, h, epsilon = 1e-15);
        assert_abs_diff_eq!(s.amplitudes()[1].norm(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(s.amplitudes()[3].norm(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn tensor_preserves_norm_on_random_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..120 {
            let a = random_pure_state::<f64>(3, 1, &mut rng).unwrap();
            let b = random_pure_state::<f64>(5, 1, &mut rng).unwrap();
            let s = tensor(a.amplitudes(), b.amplitudes()).unwrap();
            assert_abs_diff_eq!(s.amplitudes().norm(), 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn tensor_rejects_empty_input() {
        let empty = CVector::<f64>::zeros(0);
        let zero = qubit(0.0);
        assert!(matches!(tensor(&empty, &zero), Err(Error::EmptyVector)));
    }

    #[test]
    fn partial_trace_of_product_state_is_rank_one() {
        let t1 = qubit(0.3);
        let t2 = qubit(1.1);
        let s = tensor(&t1, &t2).unwrap();
        let rho = partial_trace(&s, Subsystem::A);
        for i in 0..2 {
            for j in 0..2 {
                let expected = t1[i] * t1[j].conj();
                assert_abs_diff_eq!(rho.matrix()[(i, j)].re, expected.re, epsilon = 1e-12);
                assert_abs_diff_eq!(rho.matrix()[(i, j)].im, expected.im, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn partial_trace_of_bell_state_is_maximally_mixed() {
        let rho = partial_trace(&bell_state::<f64>(), Subsystem::A);
        for i in 0..2 {
            for j in 0..2 {
                let expected = if i == j { 0.5 } else { 0.0 };
                assert_abs_diff_eq!(rho.matrix()[(i, j)].re, expected, epsilon = 1e-12);
                assert_abs_diff_eq!(rho.matrix()[(i, j)].im, 0.0, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn partial_trace_of_fig1_state_is_diagonal() {
        // Same Schmidt spectrum embedded with one extra A dimension so the
        // diagonal shows a structural zero.
        let p = [1.0 - 1e-2 - 1e-4, 1e-2, 1e-4];
        let (dim_a, dim_b) = (4, 10);
        let mut amps = CVector::from_element(dim_a * dim_b, czero::<f64>());
        for (i, &pi) in p.iter().enumerate() {
            amps[i * dim_b + i] = Complex::new(pi.sqrt(), 0.0);
        }
        let s = PureState::new(amps, dim_a, dim_b).unwrap();
        let rho = partial_trace(&s, Subsystem::A);
        let expected = [p[0], p[1], p[2], 0.0];
        for (i, &e) in expected.iter().enumerate() {
            assert_abs_diff_eq!(rho.matrix()[(i, i)].re, e, epsilon = 1e-12);
        }
        assert_abs_diff_eq!(rho.trace(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn schmidt_of_fig1_state() {
        let s = fig1_state::<f64>();
        let dec = schmidt(&s, 1e-12).unwrap();
        assert_eq!(dec.rank, 3);
        assert_abs_diff_eq!(dec.coefficients[0], 1.0 - 1e-2 - 1e-4, epsilon = 1e-12);
        assert_abs_diff_eq!(dec.coefficients[1], 1e-2, epsilon = 1e-12);
        assert_abs_diff_eq!(dec.coefficients[2], 1e-4, epsilon = 1e-12);
    }

    #[test]
    fn schmidt_of_product_state_has_rank_one() {
        let s = tensor(&qubit(0.7), &qubit(2.1)).unwrap();
        let dec = schmidt(&s, 1e-12).unwrap();
        assert_eq!(dec.rank, 1);
        assert_abs_diff_eq!(dec.coefficients[0], 1.0, epsilon = 1e-12);
    }

    #[test]
    fn schmidt_of_bell_state() {
        let dec = schmidt(&bell_state::<f64>(), 1e-12).unwrap();
        assert_eq!(dec.rank, 2);
        assert_abs_diff_eq!(dec.coefficients[0], 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(dec.coefficients[1], 0.5, epsilon = 1e-12);
    }

    #[test]
    fn schmidt_coefficients_match_reduced_eigenvalues_and_reconstruct() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for &(da, db) in &[(2, 2), (3, 5), (5, 3), (8, 8), (4, 7)] {
            let s = random_pure_state::<f64>(da, db, &mut rng).unwrap();
            let dec = schmidt(&s, 1e-12).unwrap();
            let eigs = partial_trace(&s, Subsystem::A).eigenvalues();
            for (i, &p) in dec.coefficients.iter().enumerate() {
                assert_abs_diff_eq!(p, eigs[i], epsilon = 1e-9);
            }
            assert_abs_diff_eq!(dec.coefficients.iter().sum::<f64>(), 1.0, epsilon = 1e-10);
            assert!(dec.rank <= da.min(db));
            let rebuilt = dec.reconstruct(da, db).unwrap();
            let diff = (rebuilt.amplitudes() - s.amplitudes()).norm();
            assert!(diff <= 1e-9, "reconstruction residual {diff}");
            assert!(fidelity(&rebuilt, &s).unwrap() >= 1.0 - 1e-10);
        }
    }

    #[test]
    fn partial_trace_has_unit_trace_on_random_states() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let s = random_pure_state::<f64>(4, 6, &mut rng).unwrap();
            assert_abs_diff_eq!(partial_trace(&s, Subsystem::A).trace(), 1.0, epsilon = 1e-10);
            assert_abs_diff_eq!(partial_trace(&s, Subsystem::B).trace(), 1.0, epsilon = 1e-10);
        }
    }

    #[test]
    fn fidelity_examples() {
        let x = tensor(&qubit(0.4), &qubit(0.9)).unwrap();
        assert_abs_diff_eq!(fidelity(&x, &x).unwrap(), 1.0, epsilon = 1e-12);

        let a = PureState::<f64>::basis(2, 2, 0).unwrap();
        let b = PureState::<f64>::basis(2, 2, 3).unwrap();
        assert_abs_diff_eq!(fidelity(&a, &b).unwrap(), 0.0, epsilon = 1e-15);

        let t = PureState::unsplit(qubit(std::f64::consts::PI / 6.0)).unwrap();
        let z = PureState::unsplit(qubit(0.0)).unwrap();
        assert_abs_diff_eq!(fidelity(&t, &z).unwrap(), 0.75, epsilon = 1e-12);
    }

    #[test]
    fn fidelity_rejects_dimension_mismatch() {
        let a = bell_state::<f64>();
        let b = PureState::<f64>::basis(2, 1, 0).unwrap();
        assert!(matches!(fidelity(&a, &b), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn random_states_are_normalized_and_replayable() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for _ in 0..50 {
            let s = random_pure_state::<f64>(3, 4, &mut rng).unwrap();
            assert_abs_diff_eq!(s.amplitudes().norm(), 1.0, epsilon = 1e-12);
        }
        let a = random_pure_state::<f64>(3, 4, &mut ChaCha8Rng::seed_from_u64(7)).unwrap();
        let b = random_pure_state::<f64>(3, 4, &mut ChaCha8Rng::seed_from_u64(7)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn haar_average_reduced_matrix_is_maximally_mixed() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let (da, db) = (2, 3);
        let n = 10_000usize;
        let mut mean = CMatrix::<f64>::zeros(da, da);
        let mut sq = nalgebra::DMatrix::<f64>::zeros(da, da);
        for _ in 0..n {
            let s = random_pure_state::<f64>(da, db, &mut rng).unwrap();
            let rho = partial_trace(&s, Subsystem::A);
            mean += rho.matrix();
            for i in 0..da {
                for j in 0..da {
                    sq[(i, j)] += rho.matrix()[(i, j)].norm_sqr();
                }
            }
        }
        mean /= Complex::new(n as f64, 0.0);
        for i in 0..da {
            for j in 0..da {
                let target = if i == j { 1.0 / da as f64 } else { 0.0 };
                let var = (sq[(i, j)] / n as f64 - mean[(i, j)].norm_sqr()).max(0.0);
                let se = (var / n as f64).sqrt();
                let dev = (mean[(i, j)] - Complex::new(target, 0.0)).norm();
                assert!(dev <= 3.0 * se + 1e-12, "entry ({i},{j}) dev {dev} vs 3se {}", 3.0 * se);
            }
        }
    }

    #[test]
    fn json_round_trip_is_bit_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(123);
        for _ in 0..20 {
            let s = random_pure_state::<f64>(3, 4, &mut rng).unwrap();
            let text = s.to_json().unwrap();
            let back = PureState::<f64>::from_json(&text).unwrap();
            assert_eq!(back.dims(), s.dims());
            for (x, y) in back.amplitudes().iter().zip(s.amplitudes().iter()) {
                assert_eq!(x.re.to_bits(), y.re.to_bits());
                assert_eq!(x.im.to_bits(), y.im.to_bits());
            }
        }
    }

    #[test]
    fn rejects_denormalized_and_oversized_states() {
        let amps = CVector::from_vec(vec![Complex::new(0.5f64, 0.0); 4]);
        assert!(PureState::new(amps.clone(), 2, 2).is_ok());
        let bad = CVector::from_vec(vec![Complex::new(0.6f64, 0.0); 4]);
        assert!(matches!(PureState::new(bad, 2, 2), Err(Error::NotNormalized { .. })));
        assert!(matches!(
            PureState::<f64>::new(CVector::from_element(8, czero()), 3, 2),
            Err(Error::InvalidSplit { .. })
        ));
    }

    #[test]
    fn f32_states_round_trip_with_loose_tolerance() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let s = random_pure_state::<f32>(2, 3, &mut rng).unwrap();
        let dec = schmidt(&s, 1e-6f32).unwrap();
        let rebuilt = dec.reconstruct(2, 3).unwrap();
        assert!(fidelity(&rebuilt, &s).unwrap() > 1.0 - 1e-5);
    }
}
