//! Cartan-covariant channels: transfer matrices, channel action, Choi states
//! built two independent ways, Kraus extraction, and the CP / co-CP / PPT
//! predicates both analytic and numeric.
//!
//! Conventions: the Choi state is (1 ⊗ E)(|Ψ⟩⟨Ψ|) with the identity on the
//! first tensor factor; the partial transpose acts on the second factor.
//! [`choi_via_action`] realizes exactly that state. [`choi_direct`] is the
//! invariant form (1/D²)(1 − α·L + β·L̄), which coincides with it entrywise
//! for the so kind and is the (1⊗V)-conjugate of it for the sp kind.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::basis::{
    expected_subspace_dims, standard_cartan_basis, BasisChoice, CartanBasis, InvolutionKind,
};
use crate::lie::invariant_operators;
use crate::matrix::{
    dagger, hermitian_eigen, hermitian_eigenvalues, identity, is_hermitian, kron, max_abs_diff,
    trace_product, unvec, CMat, RMat, C64,
};
use crate::{Error, Result};

/// Default absolute tolerance on the analytic π values for the CP family of
/// predicates; boundary channels (π = 0) count as channels.
pub const CP_TOL: f64 = 1e-12;

/// The two-parameter covariant channel 1 ⊕ α·1_a ⊕ β·1_b.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CartanChannel {
    dim: usize,
    kind: InvolutionKind,
    alpha: f64,
    beta: f64,
}

impl CartanChannel {
    pub fn new(dim: usize, kind: InvolutionKind, alpha: f64, beta: f64) -> Result<Self> {
        if dim < 2 {
            return Err(Error::DimensionTooSmall { min: 2, got: dim });
        }
        if kind == InvolutionKind::Sp && dim % 2 != 0 {
            return Err(Error::OddSymplecticDimension(dim));
        }
        if !alpha.is_finite() || !beta.is_finite() {
            return Err(Error::InvalidInput(format!(
                "channel parameters must be finite, got ({alpha}, {beta})"
            )));
        }
        Ok(Self {
            dim,
            kind,
            alpha,
            beta,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kind(&self) -> InvolutionKind {
        self.kind
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// The α-mirrored channel, whose CP-ness is this channel's co-CP-ness.
    pub fn mirrored(&self) -> Self {
        Self {
            alpha: -self.alpha,
            ..*self
        }
    }
}

fn check_pairing(ch: &CartanChannel, cb: &CartanBasis) -> Result<()> {
    if ch.dim() != cb.dim() {
        return Err(Error::DimensionMismatch {
            context: "channel/basis pairing",
            expected: ch.dim(),
            got: cb.dim(),
        });
    }
    if ch.kind() != cb.kind() {
        return Err(Error::IncompatibleChannels(format!(
            "channel kind {} vs basis kind {}",
            ch.kind(),
            cb.kind()
        )));
    }
    Ok(())
}

/// Diagonal transfer matrix in the basis order: 1 at index 0, α on the A
/// indices, β on the B indices. The shift column is identically zero.
pub fn transfer_matrix(ch: &CartanChannel, cb: &CartanBasis) -> Result<RMat> {
    check_pairing(ch, cb)?;
    let n = cb.basis().len();
    let mut diag = vec![0.0; n];
    diag[0] = 1.0;
    for &r in cb.a_indices() {
        diag[r] = ch.alpha();
    }
    for &m in cb.b_indices() {
        diag[m] = ch.beta();
    }
    Ok(RMat::from_diagonal(&nalgebra::DVector::from_vec(diag)))
}

/// Channel action on any Hermitian operator via the basis expansion:
/// (1/D)[tr(m)·1 + α·Σ tr(A_r m)·A_r + β·Σ tr(B_μ m)·B_μ].
fn channel_action(ch: &CartanChannel, m: &CMat, cb: &CartanBasis) -> CMat {
    let d = cb.dim();
    let inv_d = C64::from(1.0 / d as f64);
    let mut out = identity(d) * (m.trace() * inv_d);
    for &r in cb.a_indices() {
        let g = cb.basis().element(r);
        out += g * (trace_product(g, m) * inv_d * ch.alpha());
    }
    for &mu in cb.b_indices() {
        let g = cb.basis().element(mu);
        out += g * (trace_product(g, m) * inv_d * ch.beta());
    }
    out
}

/// Apply the channel to a state.
pub fn apply_channel(ch: &CartanChannel, rho: &CMat, cb: &CartanBasis) -> Result<CMat> {
    check_pairing(ch, cb)?;
    if rho.nrows() != ch.dim() || rho.ncols() != ch.dim() {
        return Err(Error::DimensionMismatch {
            context: "channel input state",
            expected: ch.dim(),
            got: rho.nrows(),
        });
    }
    Ok(channel_action(ch, rho, cb))
}

/// ω = |Ψ⟩⟨Ψ| with |Ψ⟩ = (1/√D)·Σ|ii⟩, in the computational basis.
pub fn max_entangled_state(d: usize) -> CMat {
    let inv_d = C64::from(1.0 / d as f64);
    CMat::from_fn(d * d, d * d, |row, col| {
        let (a, b) = (row / d, row % d);
        let (c, e) = (col / d, col % d);
        if a == b && c == e {
            inv_d
        } else {
            C64::from(0.0)
        }
    })
}

/// Expansion coefficients c_ij = tr((G_i ⊗ G_jᵀ)·m) / D² of a D²×D² operator
/// over the product basis. O(D⁸); intended for small-dimension checks.
pub fn expansion_coefficients(m: &CMat, cb: &CartanBasis) -> CMat {
    let n = cb.basis().len();
    let inv_d2 = C64::from(1.0 / (n as f64));
    CMat::from_fn(n, n, |i, j| {
        let gj_t = cb.basis().element(j).transpose();
        let prod = kron(cb.basis().element(i), &gj_t);
        trace_product(&prod, m) * inv_d2
    })
}

/// A D²×D² Choi state with its originating channel, when known.
#[derive(Debug, Clone)]
pub struct ChoiMatrix {
    dim: usize,
    matrix: CMat,
    source: Option<CartanChannel>,
}

impl ChoiMatrix {
    /// Wrap a Hermitian D²×D² matrix. Hermiticity is enforced to 1e−12 and,
    /// when a source channel is given, unit trace likewise.
    pub fn new(dim: usize, matrix: CMat, source: Option<CartanChannel>) -> Result<Self> {
        if matrix.nrows() != dim * dim || matrix.ncols() != dim * dim {
            return Err(Error::DimensionMismatch {
                context: "Choi matrix",
                expected: dim * dim,
                got: matrix.nrows(),
            });
        }
        if !is_hermitian(&matrix, 1e-12) {
            return Err(Error::InvalidInput(
                "Choi matrix is not Hermitian within 1e-12".into(),
            ));
        }
        if source.is_some() && (matrix.trace().re - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidInput(format!(
                "trace-preserving channel must give unit-trace Choi state, got {}",
                matrix.trace().re
            )));
        }
        Ok(Self {
            dim,
            matrix,
            source,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self) -> &CMat {
        &self.matrix
    }

    pub fn source_channel(&self) -> Option<&CartanChannel> {
        self.source.as_ref()
    }
}

/// Invariant-form Choi state (1/D²)(1 − α·L + β·L̄).
pub fn choi_direct(ch: &CartanChannel, cb: &CartanBasis) -> Result<ChoiMatrix> {
    check_pairing(ch, cb)?;
    let d = cb.dim();
    let ops = invariant_operators(cb);
    let m = (identity(d * d) - ops.l * C64::from(ch.alpha()) + ops.lbar * C64::from(ch.beta()))
        * C64::from(1.0 / (d * d) as f64);
    ChoiMatrix::new(d, m, Some(*ch))
}

/// Choi state (1 ⊗ E)(ω), computed by applying the channel to the second
/// tensor factor of each term of the ω expansion: (1/D²)·Σ G_i ⊗ E[G_iᵀ].
pub fn choi_via_action(ch: &CartanChannel, cb: &CartanBasis) -> Result<ChoiMatrix> {
    check_pairing(ch, cb)?;
    let d = cb.dim();
    let mut m = CMat::zeros(d * d, d * d);
    for g in cb.basis().elements() {
        let image = channel_action(ch, &g.transpose(), cb);
        m += kron(g, &image);
    }
    m *= C64::from(1.0 / (d * d) as f64);
    ChoiMatrix::new(d, m, Some(*ch))
}

/// Transpose the second tensor factor in the computational basis.
pub fn partial_transpose(m: &CMat, d: usize) -> Result<CMat> {
    if m.nrows() != d * d || m.ncols() != d * d {
        return Err(Error::DimensionMismatch {
            context: "partial transpose",
            expected: d * d,
            got: m.nrows(),
        });
    }
    Ok(CMat::from_fn(d * d, d * d, |row, col| {
        let (a, b) = (row / d, row % d);
        let (c, e) = (col / d, col % d);
        m[(a * d + e, c * d + b)]
    }))
}

/// The analytic π values of Eqs. (CP1)/(CP2), with their multiplicities
/// (1, a, b). When the B sector is empty the β coefficients drop out
/// entirely, since β never enters the channel.
pub fn analytic_pi(ch: &CartanChannel) -> [(f64, usize); 3] {
    let d = ch.dim() as f64;
    let (a, b) = expected_subspace_dims(ch.dim(), ch.kind());
    let (alpha, beta) = (ch.alpha(), if b == 0 { 0.0 } else { ch.beta() });
    let h = 0.5 * d;
    let pi1 = 1.0 + a as f64 * alpha + b as f64 * beta;
    let (pi_a, pi_ac) = match ch.kind() {
        InvolutionKind::So => (
            1.0 + h * alpha - (h + 1.0) * beta,
            1.0 - h * alpha + (h - 1.0) * beta,
        ),
        InvolutionKind::Sp => (
            1.0 - h * alpha + (h - 1.0) * beta,
            1.0 + h * alpha - (h + 1.0) * beta,
        ),
    };
    [(pi1, 1), (pi_a, a), (pi_ac, b)]
}

/// Analytic Choi eigenvalues {π_I / D²} with multiplicities (1, a, b).
pub fn analytic_spectrum(ch: &CartanChannel) -> Vec<(f64, usize)> {
    let d2 = (ch.dim() * ch.dim()) as f64;
    analytic_pi(ch)
        .into_iter()
        .map(|(pi, mult)| (pi / d2, mult))
        .collect()
}

/// Eigenvalues of the (Hermitian) Choi matrix, ascending.
pub fn numeric_spectrum(choi: &ChoiMatrix) -> Result<Vec<f64>> {
    hermitian_eigenvalues(choi.matrix())
}

/// Analytic versus numeric Choi spectrum.
#[derive(Debug, Clone)]
pub struct SpectrumReport {
    /// (eigenvalue, multiplicity) triples; multiplicities sum to D².
    pub analytic: Vec<(f64, usize)>,
    /// Dense eigenvalues, ascending.
    pub numeric: Vec<f64>,
    /// Largest pointwise gap after expanding the analytic multiset.
    pub max_deviation: f64,
}

/// Expand an analytic spectrum into a sorted multiset.
pub fn expand_spectrum(analytic: &[(f64, usize)]) -> Vec<f64> {
    let mut vals: Vec<f64> = analytic
        .iter()
        .flat_map(|&(v, m)| std::iter::repeat(v).take(m))
        .collect();
    vals.sort_by(|a, b| a.partial_cmp(b).expect("finite spectrum"));
    vals
}

/// Build the invariant-form Choi state and compare its dense spectrum with
/// the analytic one.
pub fn spectrum_report(ch: &CartanChannel, cb: &CartanBasis) -> Result<SpectrumReport> {
    let choi = choi_direct(ch, cb)?;
    let numeric = numeric_spectrum(&choi)?;
    let analytic = analytic_spectrum(ch);
    let expanded = expand_spectrum(&analytic);
    let max_deviation = expanded
        .iter()
        .zip(numeric.iter())
        .map(|(a, n)| (a - n).abs())
        .fold(0.0, f64::max);
    Ok(SpectrumReport {
        analytic,
        numeric,
        max_deviation,
    })
}

pub fn is_cp_with_tol(ch: &CartanChannel, tol: f64) -> bool {
    analytic_pi(ch)
        .into_iter()
        .filter(|&(_, mult)| mult > 0)
        .all(|(pi, _)| pi >= -tol)
}

/// Completely positive: every analytic Choi eigenvalue is nonnegative.
pub fn is_cp(ch: &CartanChannel) -> bool {
    is_cp_with_tol(ch, CP_TOL)
}

/// Completely co-positive: the α-mirrored channel is completely positive.
pub fn is_ccp(ch: &CartanChannel) -> bool {
    is_cp(&ch.mirrored())
}

/// PPT: completely positive with positive partial transpose.
pub fn is_ppt(ch: &CartanChannel) -> bool {
    is_cp(ch) && is_ccp(ch)
}

/// Composition of two channels of the same dimension and kind. Diagonal
/// transfer matrices multiply componentwise, so the parameters just multiply.
pub fn compose(c1: &CartanChannel, c2: &CartanChannel) -> Result<CartanChannel> {
    if c1.dim() != c2.dim() || c1.kind() != c2.kind() {
        return Err(Error::IncompatibleChannels(format!(
            "cannot compose ({}, {}) with ({}, {})",
            c1.dim(),
            c1.kind(),
            c2.dim(),
            c2.kind()
        )));
    }
    CartanChannel::new(
        c1.dim(),
        c1.kind(),
        c1.alpha() * c2.alpha(),
        c1.beta() * c2.beta(),
    )
}

/// Kraus operators extracted from a Choi eigendecomposition.
#[derive(Debug, Clone)]
pub struct KrausSet {
    pub operators: Vec<CMat>,
    /// Number of Choi eigenvalues above the retention tolerance.
    pub source_rank: usize,
}

impl KrausSet {
    /// ‖Σ K†K − 1‖_max; zero for a trace-preserving channel.
    pub fn completeness_residual(&self) -> f64 {
        let d = self.operators[0].nrows();
        let mut sum = CMat::zeros(d, d);
        for k in &self.operators {
            sum += dagger(k) * k;
        }
        max_abs_diff(&sum, &identity(d))
    }
}

/// Extract Kraus operators from a positive-semidefinite Choi matrix: each
/// eigenpair (λ > tol, v) gives K = √(λ·D) · reshape(v)ᵀ, where reshape puts
/// the first tensor factor on the row index. The transposition is what makes
/// Σ K ρ K† reproduce the channel under the (1 ⊗ E) convention.
///
/// Expects the computational-basis Choi state, i.e. [`choi_via_action`];
/// for the so kind [`choi_direct`] coincides with it.
pub fn kraus_from_choi(choi: &ChoiMatrix, tol: f64) -> Result<KrausSet> {
    let d = choi.dim();
    let (vals, vecs) = hermitian_eigen(choi.matrix())?;
    if let Some(&lowest) = vals.first() {
        if lowest < -tol {
            return Err(Error::NotCompletelyPositive(lowest));
        }
    }
    let mut operators = Vec::new();
    for (idx, &lambda) in vals.iter().enumerate() {
        if lambda > tol {
            let v = vecs.column(idx).clone_owned();
            let scale = C64::from((lambda * d as f64).sqrt());
            operators.push(unvec(&v, d).transpose() * scale);
        }
    }
    Ok(KrausSet {
        source_rank: operators.len(),
        operators,
    })
}

/// Σ K ρ K†.
pub fn kraus_apply(ks: &KrausSet, rho: &CMat) -> CMat {
    let d = rho.nrows();
    let mut out = CMat::zeros(d, d);
    for k in &ks.operators {
        out += k * rho * dagger(k);
    }
    out
}

/// Complete-positivity test for multi-qubit channels via the row-swapped
/// Hadamard transform of the Pauli eigenvalue vector.
///
/// The 4^N eigenvalues are indexed by two bits (x, z) per qubit through
/// X^x·Z^z — I=(0,0), X=(1,0), Y=(1,1), Z=(0,1) — ordered
/// (x₁, z₁, …, x_N, z_N) most-significant-first; the channel is CP iff
/// H̄^{⊗2N}(ε) is componentwise nonnegative, H̄ = [[1,−1],[1,1]].
pub fn qubit_hadamard_cp_check_with_tol(ch: &CartanChannel, tol: f64) -> Result<bool> {
    let d = ch.dim();
    if !d.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(d));
    }
    let n_qubits = d.trailing_zeros() as usize;
    let cb = standard_cartan_basis(d, ch.kind(), BasisChoice::Pauli)?;

    let strings = d * d;
    let mut eps = vec![0.0f64; strings];
    let diag = transfer_matrix(ch, &cb)?;
    for s in 0..strings {
        // Map the base-4 string index to the interleaved (x, z) bit index.
        let mut bits = 0usize;
        for q in 0..n_qubits {
            let digit = (s >> (2 * (n_qubits - 1 - q))) & 3;
            let (x, z) = match digit {
                0 => (0, 0), // I
                1 => (1, 0), // X
                2 => (1, 1), // Y
                _ => (0, 1), // Z
            };
            let shift = 2 * (n_qubits - 1 - q);
            bits |= (x << (shift + 1)) | (z << shift);
        }
        eps[bits] = diag[(s, s)];
    }

    // Apply H̄ along each of the 2N bit axes.
    for p in 0..(2 * n_qubits) {
        let stride = 1usize << p;
        let mut next = vec![0.0f64; strings];
        for u in 0..strings {
            if u & stride == 0 {
                let v = u | stride;
                next[u] = eps[u] - eps[v];
                next[v] = eps[u] + eps[v];
            }
        }
        eps = next;
    }

    Ok(eps.iter().all(|&c| c >= -tol))
}

/// [`qubit_hadamard_cp_check_with_tol`] at the default tolerance. Agrees
/// with [`is_cp`] wherever both are defined.
pub fn qubit_hadamard_cp_check(ch: &CartanChannel) -> Result<bool> {
    // The Hadamard components are D²·(Pauli error probabilities), so the
    // π-value tolerance carries over.
    qubit_hadamard_cp_check_with_tol(ch, CP_TOL)
}

/// Deterministic sample of completely positive channels: rejection from the
/// uniform box (α, β) ∈ [−1, 1]², which bounds the CP region for every
/// dimension and kind.
pub fn sample_cp_channels(
    dim: usize,
    kind: InvolutionKind,
    count: usize,
    seed: u64,
) -> Result<Vec<CartanChannel>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    let mut attempts = 0usize;
    while out.len() < count {
        attempts += 1;
        if attempts > 1_000_000 {
            return Err(Error::InvalidInput(format!(
                "rejection sampling failed to find {count} CP channels for D={dim} {kind}"
            )));
        }
        let ch = CartanChannel::new(
            dim,
            kind,
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
        )?;
        if is_cp(&ch) {
            out.push(ch);
        }
    }
    Ok(out)
}
