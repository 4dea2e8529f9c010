//! Orthogonal Hermitian operator bases of u(D) and their Cartan partitions.
//!
//! A basis holds the identity at index 0 followed by D²−1 traceless Hermitian
//! matrices normalized to tr(G_i G_j) = D·δ_ij. A Cartan involution
//! `O ↦ −V·Oᵀ·V†` (V = 1 for the special orthogonal kind, V = a symplectic
//! form for the compact symplectic kind) splits the traceless sector into its
//! +1 eigenspace A and −1 eigenspace B.

use std::fmt;

use crate::exec;
use crate::matrix::{dagger, hs_inner, max_abs_diff, CMat, C64, I, ONE, ZERO};
use crate::{Error, Result};

/// Residual below which a matrix counts as an exact involution eigenvector.
const EIGENVECTOR_TOL: f64 = 1e-10;
/// Gram-Schmidt drop threshold for vectors inside an eigenspace projection.
const MGS_DROP_TOL: f64 = 1e-8;
/// Largest Pauli basis built by default: 4^N elements.
const PAULI_BUDGET: usize = 1024;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisFlavor {
    GellMann,
    PauliString,
    InvolutionEigen,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InvolutionKind {
    /// A = so(D), V = identity.
    So,
    /// A = sp(D/2), V = a symplectic form.
    Sp,
}

impl fmt::Display for InvolutionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InvolutionKind::So => write!(f, "so"),
            InvolutionKind::Sp => write!(f, "sp"),
        }
    }
}

/// Closed-form Cartan subspace dimensions (a, b) for dimension `d`.
pub fn expected_subspace_dims(d: usize, kind: InvolutionKind) -> (usize, usize) {
    match kind {
        InvolutionKind::So => (d * (d - 1) / 2, (d + 2) * (d - 1) / 2),
        InvolutionKind::Sp => (d * (d + 1) / 2, (d - 2) * (d + 1) / 2),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymplecticVariant {
    /// Block form [[0, 1], [−1, 0]].
    Canonical,
    /// i·Y₁ ⊗ X₂ ⊗ … ⊗ X_N, defined for D = 2^N.
    PauliString,
}

/// How [`standard_cartan_basis`] picks the underlying operator basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisChoice {
    GellMann,
    Pauli,
    /// Pauli strings when the dimension is a power of two within budget,
    /// generalized Gell-Mann matrices otherwise.
    Auto,
}

/// An ordered orthogonal Hermitian basis of u(D).
#[derive(Debug, Clone)]
pub struct OperatorBasis {
    dim: usize,
    elements: Vec<CMat>,
    labels: Vec<String>,
    flavor: BasisFlavor,
}

impl OperatorBasis {
    /// Identity plus the D²−1 generalized Gell-Mann matrices, rescaled so
    /// tr(G_i G_j) = D·δ_ij. Family order: antisymmetric, symmetric, diagonal,
    /// which keeps the so(D) sector contiguous.
    pub fn gellmann(d: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::DimensionTooSmall { min: 2, got: d });
        }
        let scale = C64::from((d as f64 / 2.0).sqrt());
        let mut elements = vec![CMat::identity(d, d)];
        let mut labels = vec!["I".to_string()];

        for j in 0..d {
            for k in (j + 1)..d {
                let mut m = CMat::zeros(d, d);
                m[(j, k)] = -I;
                m[(k, j)] = I;
                elements.push(m * scale);
                labels.push(format!("A({},{})", j + 1, k + 1));
            }
        }
        for j in 0..d {
            for k in (j + 1)..d {
                let mut m = CMat::zeros(d, d);
                m[(j, k)] = ONE;
                m[(k, j)] = ONE;
                elements.push(m * scale);
                labels.push(format!("S({},{})", j + 1, k + 1));
            }
        }
        for l in 1..d {
            let coeff = (2.0 / (l as f64 * (l + 1) as f64)).sqrt();
            let mut m = CMat::zeros(d, d);
            for j in 0..l {
                m[(j, j)] = C64::from(coeff);
            }
            m[(l, l)] = C64::from(-(l as f64) * coeff);
            elements.push(m * scale);
            labels.push(format!("D({l})"));
        }

        Ok(Self {
            dim: d,
            elements,
            labels,
            flavor: BasisFlavor::GellMann,
        })
    }

    /// All 4^N Pauli strings on N qubits, identity first, ordered by base-4
    /// digits (I, X, Y, Z per qubit, qubit 1 most significant).
    pub fn pauli(n_qubits: usize) -> Result<Self> {
        if n_qubits < 1 {
            return Err(Error::DimensionTooSmall {
                min: 1,
                got: n_qubits,
            });
        }
        let size = 1usize
            .checked_shl(2 * n_qubits as u32)
            .filter(|&s| s <= PAULI_BUDGET)
            .ok_or(Error::SizeBudget {
                qubits: n_qubits,
                size: usize::MAX,
                budget: PAULI_BUDGET,
            })?;
        if size > PAULI_BUDGET {
            return Err(Error::SizeBudget {
                qubits: n_qubits,
                size,
                budget: PAULI_BUDGET,
            });
        }

        let single = [
            CMat::identity(2, 2),
            CMat::from_row_slice(2, 2, &[ZERO, ONE, ONE, ZERO]),
            CMat::from_row_slice(2, 2, &[ZERO, -I, I, ZERO]),
            CMat::from_row_slice(2, 2, &[ONE, ZERO, ZERO, -ONE]),
        ];
        let letters = ['I', 'X', 'Y', 'Z'];

        let mut elements = Vec::with_capacity(size);
        let mut labels = Vec::with_capacity(size);
        for idx in 0..size {
            let mut label = String::with_capacity(n_qubits);
            let mut m: Option<CMat> = None;
            for q in 0..n_qubits {
                let digit = (idx >> (2 * (n_qubits - 1 - q))) & 3;
                label.push(letters[digit]);
                m = Some(match m {
                    None => single[digit].clone(),
                    Some(acc) => acc.kronecker(&single[digit]),
                });
            }
            elements.push(m.expect("at least one qubit"));
            labels.push(label);
        }

        Ok(Self {
            dim: 1 << n_qubits,
            elements,
            labels,
            flavor: BasisFlavor::PauliString,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn element(&self, i: usize) -> &CMat {
        &self.elements[i]
    }

    pub fn elements(&self) -> &[CMat] {
        &self.elements
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn flavor(&self) -> BasisFlavor {
        self.flavor
    }

    /// Max violation of the invariants: identity first, Hermiticity,
    /// tracelessness for i ≥ 1, and tr(G_i G_j) = D·δ_ij. O(D⁶); meant for
    /// audits, not hot paths.
    pub fn audit(&self) -> BasisAudit {
        let d = self.dim as f64;
        let id_err = max_abs_diff(&self.elements[0], &CMat::identity(self.dim, self.dim));
        let mut herm = 0.0f64;
        let mut trace = 0.0f64;
        for (i, g) in self.elements.iter().enumerate() {
            herm = herm.max(max_abs_diff(g, &dagger(g)));
            if i > 0 {
                trace = trace.max(g.trace().norm());
            }
        }
        let rows = exec::map_indices(self.len(), |i| {
            let mut worst = 0.0f64;
            for j in 0..self.len() {
                let gram = hs_inner(&self.elements[i], &self.elements[j]);
                let target = if i == j { d } else { 0.0 };
                worst = worst.max((gram - C64::from(target)).norm());
            }
            worst
        });
        BasisAudit {
            identity_error: id_err,
            hermiticity_error: herm,
            trace_error: trace,
            orthogonality_error: rows.into_iter().fold(0.0, f64::max),
        }
    }
}

/// Residuals from [`OperatorBasis::audit`].
#[derive(Debug, Clone, Copy)]
pub struct BasisAudit {
    pub identity_error: f64,
    pub hermiticity_error: f64,
    pub trace_error: f64,
    pub orthogonality_error: f64,
}

impl BasisAudit {
    pub fn max_residual(&self) -> f64 {
        self.identity_error
            .max(self.hermiticity_error)
            .max(self.trace_error)
            .max(self.orthogonality_error)
    }
}

/// The symplectic form used as the conjugator of the sp involution.
pub fn symplectic_form(d: usize, variant: SymplecticVariant) -> Result<CMat> {
    if d < 2 || d % 2 != 0 {
        return Err(Error::OddSymplecticDimension(d));
    }
    match variant {
        SymplecticVariant::Canonical => {
            let h = d / 2;
            Ok(CMat::from_fn(d, d, |r, c| {
                if c == r + h {
                    ONE
                } else if r == c + h {
                    -ONE
                } else {
                    ZERO
                }
            }))
        }
        SymplecticVariant::PauliString => {
            if !d.is_power_of_two() {
                return Err(Error::NotPowerOfTwo(d));
            }
            let n = d.trailing_zeros() as usize;
            let y = CMat::from_row_slice(2, 2, &[ZERO, -I, I, ZERO]);
            let x = CMat::from_row_slice(2, 2, &[ZERO, ONE, ONE, ZERO]);
            let mut m = y * I;
            for _ in 1..n {
                m = m.kronecker(&x);
            }
            Ok(m)
        }
    }
}

/// A Cartan involution O ↦ −V·Oᵀ·V†.
#[derive(Debug, Clone)]
pub struct CartanInvolution {
    kind: InvolutionKind,
    dim: usize,
    conjugator: CMat,
}

impl CartanInvolution {
    /// Special orthogonal involution: O ↦ −Oᵀ.
    pub fn so(d: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::DimensionTooSmall { min: 2, got: d });
        }
        Ok(Self {
            kind: InvolutionKind::So,
            dim: d,
            conjugator: CMat::identity(d, d),
        })
    }

    /// Compact symplectic involution: O ↦ −J·Oᵀ·J†.
    pub fn sp(d: usize, variant: SymplecticVariant) -> Result<Self> {
        let conjugator = symplectic_form(d, variant)?;
        Ok(Self {
            kind: InvolutionKind::Sp,
            dim: d,
            conjugator,
        })
    }

    pub fn kind(&self) -> InvolutionKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn conjugator(&self) -> &CMat {
        &self.conjugator
    }

    /// −V·Mᵀ·V†. Linear, maps Hermitian to Hermitian, squares to the identity.
    pub fn apply(&self, m: &CMat) -> Result<CMat> {
        if m.nrows() != self.dim || m.ncols() != self.dim {
            return Err(Error::DimensionMismatch {
                context: "involution operand",
                expected: self.dim,
                got: m.nrows(),
            });
        }
        Ok(-(&self.conjugator * m.transpose() * dagger(&self.conjugator)))
    }
}

/// An operator basis partitioned into involution eigenspaces.
#[derive(Debug, Clone)]
pub struct CartanBasis {
    basis: OperatorBasis,
    involution: CartanInvolution,
    a_indices: Vec<usize>,
    b_indices: Vec<usize>,
}

impl CartanBasis {
    pub fn basis(&self) -> &OperatorBasis {
        &self.basis
    }

    pub fn involution(&self) -> &CartanInvolution {
        &self.involution
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn kind(&self) -> InvolutionKind {
        self.involution.kind()
    }

    /// Indices (into the basis) of the +1 eigenspace elements A_r.
    pub fn a_indices(&self) -> &[usize] {
        &self.a_indices
    }

    /// Indices of the −1 eigenspace elements B_μ (identity excluded).
    pub fn b_indices(&self) -> &[usize] {
        &self.b_indices
    }

    pub fn a(&self) -> usize {
        self.a_indices.len()
    }

    pub fn b(&self) -> usize {
        self.b_indices.len()
    }

    pub fn a_elements(&self) -> impl Iterator<Item = &CMat> {
        self.a_indices.iter().map(|&i| self.basis.element(i))
    }

    pub fn b_elements(&self) -> impl Iterator<Item = &CMat> {
        self.b_indices.iter().map(|&i| self.basis.element(i))
    }
}

/// Partition a basis by involution eigenvalue.
///
/// When every traceless element is already an eigenvector the basis is kept
/// as-is and only the index lists are built. Otherwise the ±1 eigenprojections
/// of the involution acting on the traceless span are re-orthonormalized
/// (modified Gram-Schmidt under tr(X†Y)/D, in input order) into a fresh
/// `InvolutionEigen` basis. Either way the subspace dimensions must match the
/// closed forms for the involution kind.
pub fn cartan_partition(basis: OperatorBasis, involution: CartanInvolution) -> Result<CartanBasis> {
    if basis.dim() != involution.dim() {
        return Err(Error::DimensionMismatch {
            context: "cartan partition",
            expected: involution.dim(),
            got: basis.dim(),
        });
    }
    let d = basis.dim();
    let (expected_a, expected_b) = expected_subspace_dims(d, involution.kind());

    let mut a_indices = Vec::new();
    let mut b_indices = Vec::new();
    let mut eigenbasis = true;
    for i in 1..basis.len() {
        let g = basis.element(i);
        let t = involution.apply(g)?;
        if max_abs_diff(&t, g) <= EIGENVECTOR_TOL {
            a_indices.push(i);
        } else if max_abs_diff(&t, &(-g)) <= EIGENVECTOR_TOL {
            b_indices.push(i);
        } else {
            eigenbasis = false;
            break;
        }
    }

    if eigenbasis {
        if a_indices.len() != expected_a || b_indices.len() != expected_b {
            return Err(Error::PartitionCount {
                a: a_indices.len(),
                b: b_indices.len(),
                expected_a,
                expected_b,
            });
        }
        return Ok(CartanBasis {
            basis,
            involution,
            a_indices,
            b_indices,
        });
    }

    partition_by_projection(basis, involution, expected_a, expected_b)
}

/// Eigenprojection route for bases that do not diagonalize the involution.
fn partition_by_projection(
    basis: OperatorBasis,
    involution: CartanInvolution,
    expected_a: usize,
    expected_b: usize,
) -> Result<CartanBasis> {
    let d = basis.dim();
    let n = basis.len() - 1;
    let inv_d = 1.0 / d as f64;

    // Real matrix of the involution on the traceless coefficient space,
    // T[i][j] = tr(G_{i+1} · inv(G_{j+1})) / D. Orthogonal and involutory.
    let images: Vec<CMat> = (1..=n)
        .map(|j| involution.apply(basis.element(j)))
        .collect::<Result<_>>()?;
    let t = nalgebra::DMatrix::<f64>::from_fn(n, n, |i, j| {
        hs_inner(basis.element(i + 1), &images[j]).re * inv_d
    });

    let mut new_elements = vec![basis.element(0).clone()];
    let mut new_labels = vec!["I".to_string()];
    let mut counts = [0usize; 2];
    for (sector, (sign, prefix, expected)) in [(1.0, "A", expected_a), (-1.0, "B", expected_b)]
        .into_iter()
        .enumerate()
    {
        let mut kept: Vec<nalgebra::DVector<f64>> = Vec::with_capacity(expected);
        for j in 0..n {
            // Column j of the eigenprojection (1 ± T)/2.
            let mut v = t.column(j).clone_owned() * (0.5 * sign);
            v[j] += 0.5;
            for u in &kept {
                let overlap = u.dot(&v);
                v -= u * overlap;
            }
            let norm = v.norm();
            if norm > MGS_DROP_TOL {
                kept.push(v / norm);
            }
        }
        counts[sector] = kept.len();
        for (ord, coeffs) in kept.iter().enumerate() {
            let mut m = CMat::zeros(d, d);
            for (i, &c) in coeffs.iter().enumerate() {
                if c != 0.0 {
                    m += basis.element(i + 1) * C64::from(c);
                }
            }
            new_elements.push(m);
            new_labels.push(format!("{prefix}{}", ord + 1));
        }
    }

    if counts[0] != expected_a || counts[1] != expected_b {
        return Err(Error::PartitionCount {
            a: counts[0],
            b: counts[1],
            expected_a,
            expected_b,
        });
    }

    let rebuilt = OperatorBasis {
        dim: d,
        elements: new_elements,
        labels: new_labels,
        flavor: BasisFlavor::InvolutionEigen,
    };
    // The projections must be genuine eigenvectors; anything else means the
    // involution/basis pairing is invalid.
    for (idx, sign) in (1..=expected_a)
        .map(|i| (i, 1.0))
        .chain((expected_a + 1..=expected_a + expected_b).map(|i| (i, -1.0)))
    {
        let g = rebuilt.element(idx);
        let residual = max_abs_diff(&involution.apply(g)?, &(g * C64::from(sign)));
        if residual > EIGENVECTOR_TOL {
            return Err(Error::Eigenspace { index: idx });
        }
    }

    Ok(CartanBasis {
        basis: rebuilt,
        involution,
        a_indices: (1..=expected_a).collect(),
        b_indices: (expected_a + 1..=expected_a + expected_b).collect(),
    })
}

/// Build the conventional Cartan basis for a (dimension, kind) pair.
///
/// `Auto` picks Pauli strings for power-of-two dimensions within the size
/// budget and generalized Gell-Mann matrices otherwise. The sp conjugator is
/// the Pauli-string form i·Y⊗X⊗… for Pauli bases and the canonical block
/// form for Gell-Mann bases.
pub fn standard_cartan_basis(
    dim: usize,
    kind: InvolutionKind,
    choice: BasisChoice,
) -> Result<CartanBasis> {
    if dim < 2 {
        return Err(Error::DimensionTooSmall { min: 2, got: dim });
    }
    if kind == InvolutionKind::Sp && dim % 2 != 0 {
        return Err(Error::OddSymplecticDimension(dim));
    }
    let use_pauli = match choice {
        BasisChoice::GellMann => false,
        BasisChoice::Pauli => true,
        BasisChoice::Auto => dim.is_power_of_two() && dim * dim <= PAULI_BUDGET,
    };
    let (basis, involution) = if use_pauli {
        if !dim.is_power_of_two() {
            return Err(Error::NotPowerOfTwo(dim));
        }
        let n = dim.trailing_zeros() as usize;
        let inv = match kind {
            InvolutionKind::So => CartanInvolution::so(dim)?,
            InvolutionKind::Sp => CartanInvolution::sp(dim, SymplecticVariant::PauliString)?,
        };
        (OperatorBasis::pauli(n)?, inv)
    } else {
        let inv = match kind {
            InvolutionKind::So => CartanInvolution::so(dim)?,
            InvolutionKind::Sp => CartanInvolution::sp(dim, SymplecticVariant::Canonical)?,
        };
        (OperatorBasis::gellmann(dim)?, inv)
    };
    cartan_partition(basis, involution)
}

/// One row of the commutation audit.
#[derive(Debug, Clone)]
pub struct RelationAudit {
    /// "[A,A]⊂A", "[A,B]⊂B" or "[B,B]⊂A".
    pub name: &'static str,
    /// Largest expansion coefficient that leaked into the forbidden sector.
    pub max_leakage: f64,
    pub pairs_checked: usize,
    /// True when the sector is too small to form any pair.
    pub vacuous: bool,
}

/// Brute-force audit of the Cartan commutation relations.
#[derive(Debug, Clone)]
pub struct CommutationAudit {
    pub relations: Vec<RelationAudit>,
}

impl CommutationAudit {
    pub fn max_leakage(&self) -> f64 {
        self.relations
            .iter()
            .map(|r| r.max_leakage)
            .fold(0.0, f64::max)
    }

    pub fn pass(&self, tol: f64) -> bool {
        self.max_leakage() <= tol
    }
}

/// Expand every pairwise commutator in the basis and measure leakage into the
/// forbidden subspace for each of the three Cartan relations.
pub fn commutation_audit(cb: &CartanBasis) -> CommutationAudit {
    audit_impl(cb, true)
}

/// Sequential twin of [`commutation_audit`] (identical output).
pub fn commutation_audit_seq(cb: &CartanBasis) -> CommutationAudit {
    audit_impl(cb, false)
}

fn audit_impl(cb: &CartanBasis, parallel: bool) -> CommutationAudit {
    let d = cb.dim() as f64;
    let relations = [
        ("[A,A]⊂A", cb.a_indices(), cb.a_indices(), cb.b_indices(), true),
        ("[A,B]⊂B", cb.a_indices(), cb.b_indices(), cb.a_indices(), false),
        ("[B,B]⊂A", cb.b_indices(), cb.b_indices(), cb.b_indices(), true),
    ];
    let mut out = Vec::with_capacity(3);
    for (name, left, right, forbidden, same_sector) in relations {
        let pairs = if same_sector {
            left.len().saturating_sub(1) * left.len() / 2
        } else {
            left.len() * right.len()
        };
        if pairs == 0 {
            out.push(RelationAudit {
                name,
                max_leakage: 0.0,
                pairs_checked: 0,
                vacuous: true,
            });
            continue;
        }
        let worst_per_left = exec::map_indices_switch(left.len(), parallel, |pi| {
            let gp = cb.basis().element(left[pi]);
            let start = if same_sector { pi + 1 } else { 0 };
            let mut worst = 0.0f64;
            for &q in &right[start..] {
                let gq = cb.basis().element(q);
                let c = gp * gq - gq * gp;
                for &k in forbidden {
                    let coeff = hs_inner(cb.basis().element(k), &c).norm() / d;
                    worst = worst.max(coeff);
                }
            }
            worst
        });
        out.push(RelationAudit {
            name,
            max_leakage: worst_per_left.into_iter().fold(0.0, f64::max),
            pairs_checked: pairs,
            vacuous: false,
        });
    }
    CommutationAudit { relations: out }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::identity;
    use approx::assert_relative_eq;

    fn pauli_1q() -> [CMat; 4] {
        [
            identity(2),
            CMat::from_row_slice(2, 2, &[ZERO, ONE, ONE, ZERO]),
            CMat::from_row_slice(2, 2, &[ZERO, -I, I, ZERO]),
            CMat::from_row_slice(2, 2, &[ONE, ZERO, ZERO, -ONE]),
        ]
    }

    #[test]
    fn gellmann_d2_is_pauli_set() {
        let basis = OperatorBasis::gellmann(2).unwrap();
        let [_, x, y, z] = pauli_1q();
        // Ordering: I, antisymmetric (= Y), symmetric (= X), diagonal (= Z).
        assert_eq!(max_abs_diff(basis.element(1), &y), 0.0);
        assert_eq!(max_abs_diff(basis.element(2), &x), 0.0);
        assert_eq!(max_abs_diff(basis.element(3), &z), 0.0);
        for i in 1..4 {
            let sq = hs_inner(basis.element(i), basis.element(i)).re;
            assert_relative_eq!(sq, 2.0, epsilon = 1e-14);
        }
    }

    #[test]
    fn gellmann_d3_scales_standard_matrices() {
        // Standard Gell-Mann normalization is tr(λ²) = 2; ours is tr = D, so
        // every off-diagonal family matrix is √(D/2) times the standard one.
        let basis = OperatorBasis::gellmann(3).unwrap();
        assert_eq!(basis.len(), 9);
        let scale = (3.0f64 / 2.0).sqrt();
        // λ₂ (antisymmetric on rows 1,2) is our A(1,2).
        let lambda2 = CMat::from_row_slice(
            3,
            3,
            &[ZERO, -I, ZERO, I, ZERO, ZERO, ZERO, ZERO, ZERO],
        );
        assert!(max_abs_diff(basis.element(1), &(lambda2 * C64::from(scale))) < 1e-15);
        // λ₁ (symmetric on rows 1,2) is our S(1,2).
        let lambda1 = CMat::from_row_slice(
            3,
            3,
            &[ZERO, ONE, ZERO, ONE, ZERO, ZERO, ZERO, ZERO, ZERO],
        );
        assert!(max_abs_diff(basis.element(4), &(lambda1 * C64::from(scale))) < 1e-15);
    }

    #[test]
    fn gellmann_d5_gram_is_five_identity() {
        let basis = OperatorBasis::gellmann(5).unwrap();
        assert_eq!(basis.len(), 25);
        assert!(basis.audit().max_residual() < 1e-10);
    }

    #[test]
    fn gellmann_rejects_small_dims() {
        assert!(OperatorBasis::gellmann(1).is_err());
        assert!(OperatorBasis::gellmann(0).is_err());
    }

    #[test]
    fn pauli_n1_is_ixyz() {
        let basis = OperatorBasis::pauli(1).unwrap();
        let expected = pauli_1q();
        for (i, m) in expected.iter().enumerate() {
            assert_eq!(max_abs_diff(basis.element(i), m), 0.0);
        }
        assert_eq!(basis.labels(), &["I", "X", "Y", "Z"]);
    }

    #[test]
    fn pauli_n2_has_six_odd_y_strings() {
        let basis = OperatorBasis::pauli(2).unwrap();
        assert_eq!(basis.len(), 16);
        let odd_y = basis
            .labels()
            .iter()
            .filter(|l| l.chars().filter(|&c| c == 'Y').count() % 2 == 1)
            .count();
        // D(D−1)/2 at D = 4.
        assert_eq!(odd_y, 6);
    }

    #[test]
    fn pauli_n3_gram() {
        let basis = OperatorBasis::pauli(3).unwrap();
        assert_eq!(basis.len(), 64);
        assert!(basis.audit().max_residual() < 1e-12);
    }

    #[test]
    fn pauli_budget_rejects_large_n() {
        assert!(matches!(
            OperatorBasis::pauli(6),
            Err(Error::SizeBudget { .. })
        ));
        assert!(matches!(
            OperatorBasis::pauli(40),
            Err(Error::SizeBudget { .. })
        ));
    }

    #[test]
    fn symplectic_form_canonical_d2() {
        let j = symplectic_form(2, SymplecticVariant::Canonical).unwrap();
        let expected = CMat::from_row_slice(2, 2, &[ZERO, ONE, -ONE, ZERO]);
        assert_eq!(max_abs_diff(&j, &expected), 0.0);
        // Coincides with i·Y at D = 2.
        let jp = symplectic_form(2, SymplecticVariant::PauliString).unwrap();
        assert_eq!(max_abs_diff(&j, &jp), 0.0);
    }

    #[test]
    fn symplectic_form_d4_pauli_string() {
        let j = symplectic_form(4, SymplecticVariant::PauliString).unwrap();
        let [_, x, y, _] = pauli_1q();
        let expected = (y * I).kronecker(&x);
        assert_eq!(max_abs_diff(&j, &expected), 0.0);
        assert_eq!(max_abs_diff(&j.transpose(), &(-&j)), 0.0);
        assert!(max_abs_diff(&(&j * dagger(&j)), &identity(4)) < 1e-15);
    }

    #[test]
    fn symplectic_form_rejects_bad_dims() {
        assert!(symplectic_form(3, SymplecticVariant::Canonical).is_err());
        assert!(symplectic_form(6, SymplecticVariant::PauliString).is_err());
    }

    #[test]
    fn involution_signs_on_single_qubit() {
        let so = CartanInvolution::so(2).unwrap();
        let [_, x, y, _] = pauli_1q();
        // Y is antisymmetric: −Yᵀ = Y. X is symmetric: −Xᵀ = −X.
        assert!(max_abs_diff(&so.apply(&y).unwrap(), &y) < 1e-15);
        assert!(max_abs_diff(&so.apply(&x).unwrap(), &(-&x)) < 1e-15);

        // Canonical sp at D = 2 sends X to +X: X sits in the A sector.
        let sp = CartanInvolution::sp(2, SymplecticVariant::Canonical).unwrap();
        assert!(max_abs_diff(&sp.apply(&x).unwrap(), &x) < 1e-15);
    }

    #[test]
    fn involution_is_idempotent_on_random_hermitians() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for d in [2usize, 3, 4, 6] {
            let invs: Vec<CartanInvolution> = if d % 2 == 0 {
                vec![
                    CartanInvolution::so(d).unwrap(),
                    CartanInvolution::sp(d, SymplecticVariant::Canonical).unwrap(),
                ]
            } else {
                vec![CartanInvolution::so(d).unwrap()]
            };
            for inv in invs {
                for _ in 0..100 {
                    let raw = CMat::from_fn(d, d, |_, _| {
                        C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
                    });
                    let h = (&raw + dagger(&raw)) * C64::from(0.5);
                    let twice = inv.apply(&inv.apply(&h).unwrap()).unwrap();
                    assert!(max_abs_diff(&twice, &h) <= 1e-12);
                }
            }
        }
    }

    #[test]
    fn partition_gellmann_so_d3() {
        let cb = standard_cartan_basis(3, InvolutionKind::So, BasisChoice::GellMann).unwrap();
        assert_eq!((cb.a(), cb.b()), (3, 5));
        // The antisymmetric family comes first, so the A block is 1..=3.
        assert_eq!(cb.a_indices(), &[1, 2, 3]);
        assert_eq!(cb.basis().flavor(), BasisFlavor::GellMann);
    }

    #[test]
    fn partition_pauli_so_d4_selects_odd_y() {
        let cb = standard_cartan_basis(4, InvolutionKind::So, BasisChoice::Pauli).unwrap();
        assert_eq!((cb.a(), cb.b()), (6, 9));
        for &i in cb.a_indices() {
            let y_count = cb
                .basis()
                .label(i)
                .chars()
                .filter(|&c| c == 'Y')
                .count();
            assert_eq!(y_count % 2, 1, "A sector must be the odd-Y strings");
        }
    }

    #[test]
    fn partition_gellmann_sp_d4_rebuilds_eigenbasis() {
        let cb = standard_cartan_basis(4, InvolutionKind::Sp, BasisChoice::GellMann).unwrap();
        assert_eq!((cb.a(), cb.b()), (10, 5));
        assert_eq!(cb.basis().flavor(), BasisFlavor::InvolutionEigen);
        assert!(cb.basis().audit().max_residual() < 1e-10);
        // Every rebuilt element is an exact eigenvector.
        for &r in cb.a_indices() {
            let g = cb.basis().element(r);
            assert!(max_abs_diff(&cb.involution().apply(g).unwrap(), g) < 1e-10);
        }
    }

    #[test]
    fn partition_sp_d2_has_empty_b_sector() {
        let cb = standard_cartan_basis(2, InvolutionKind::Sp, BasisChoice::Pauli).unwrap();
        assert_eq!((cb.a(), cb.b()), (3, 0));
        assert!(cb.b_indices().is_empty());
    }

    #[test]
    fn pauli_strings_are_exact_sp_eigenvectors() {
        for d in [2usize, 4, 8] {
            let cb = standard_cartan_basis(d, InvolutionKind::Sp, BasisChoice::Pauli).unwrap();
            assert_eq!(cb.basis().flavor(), BasisFlavor::PauliString);
            let (ea, eb) = expected_subspace_dims(d, InvolutionKind::Sp);
            assert_eq!((cb.a(), cb.b()), (ea, eb));
            for (i, g) in cb.basis().elements().iter().enumerate().skip(1) {
                let t = cb.involution().apply(g).unwrap();
                let plus = max_abs_diff(&t, g);
                let minus = max_abs_diff(&t, &(-g));
                assert!(
                    plus < 1e-14 || minus < 1e-14,
                    "string {i} is not an exact eigenvector"
                );
            }
        }
    }

    #[test]
    fn audit_d3_so_leakage_is_tiny() {
        let cb = standard_cartan_basis(3, InvolutionKind::So, BasisChoice::GellMann).unwrap();
        let audit = commutation_audit(&cb);
        assert!(audit.pass(1e-10), "leakage {}", audit.max_leakage());
        assert!(audit.relations.iter().all(|r| !r.vacuous));
    }

    #[test]
    fn audit_d2_sp_flags_vacuous_b_relations() {
        let cb = standard_cartan_basis(2, InvolutionKind::Sp, BasisChoice::Pauli).unwrap();
        let audit = commutation_audit(&cb);
        let bb = audit
            .relations
            .iter()
            .find(|r| r.name == "[B,B]⊂A")
            .unwrap();
        assert!(bb.vacuous);
        let ab = audit
            .relations
            .iter()
            .find(|r| r.name == "[A,B]⊂B")
            .unwrap();
        assert!(ab.vacuous);
        assert!(audit.pass(1e-10));
    }

    #[test]
    fn audit_d4_sp_pauli() {
        let cb = standard_cartan_basis(4, InvolutionKind::Sp, BasisChoice::Pauli).unwrap();
        let audit = commutation_audit(&cb);
        assert!(audit.pass(1e-10), "leakage {}", audit.max_leakage());
        let seq = commutation_audit_seq(&cb);
        assert_eq!(audit.max_leakage(), seq.max_leakage());
    }

    #[test]
    fn partition_counts_match_closed_forms_over_range() {
        for d in 2..=8usize {
            let cb = standard_cartan_basis(d, InvolutionKind::So, BasisChoice::Auto).unwrap();
            assert_eq!((cb.a(), cb.b()), expected_subspace_dims(d, InvolutionKind::So));
            if d % 2 == 0 {
                let cb = standard_cartan_basis(d, InvolutionKind::Sp, BasisChoice::Auto).unwrap();
                assert_eq!(
                    (cb.a(), cb.b()),
                    expected_subspace_dims(d, InvolutionKind::Sp)
                );
            }
        }
    }

    #[test]
    fn standard_basis_rejects_odd_sp() {
        assert!(matches!(
            standard_cartan_basis(5, InvolutionKind::Sp, BasisChoice::Auto),
            Err(Error::OddSymplecticDimension(5))
        ));
    }
}
