use nalgebra::linalg::SymmetricEigen;
use num_complex::Complex64;

use super::gates::{is_unitary, CMatrix, CVector};
use super::pauli::{PauliLetter, PauliString};
use super::{PSD_TOL, STATE_TOL, UNITARY_TOL};
use crate::{Error, Result};

/// Exact state of an n-qubit register: a Hermitian, PSD, trace-one
/// complex matrix of dimension 2^n.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator {
    n: usize,
    data: CMatrix,
}

impl DensityOperator {
    /// Wraps a matrix after checking the state invariants.
    pub fn from_matrix(n: usize, data: CMatrix) -> Result<Self> {
        let dim = 1usize << n;
        if data.nrows() != dim || data.ncols() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: data.nrows(),
            });
        }
        let rho = Self { n, data };
        rho.validate()?;
        Ok(rho)
    }

    pub(crate) fn from_matrix_unchecked(n: usize, data: CMatrix) -> Self {
        Self { n, data }
    }

    /// |psi><psi| for a normalized amplitude vector.
    pub fn pure(n: usize, amplitudes: &CVector) -> Result<Self> {
        let dim = 1usize << n;
        if amplitudes.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: amplitudes.len(),
            });
        }
        let norm = amplitudes.norm();
        if (norm - 1.0).abs() > 1e-10 {
            return Err(Error::invalid(format!(
                "pure state amplitudes not normalized (norm {norm})"
            )));
        }
        let data = amplitudes * amplitudes.adjoint();
        Ok(Self { n, data })
    }

    /// Computational basis state |idx><idx|.
    pub fn basis_state(n: usize, idx: usize) -> Self {
        let dim = 1usize << n;
        assert!(idx < dim, "basis index out of range");
        let mut data = CMatrix::zeros(dim, dim);
        data[(idx, idx)] = Complex64::new(1.0, 0.0);
        Self { n, data }
    }

    /// |+><+|^(x)n: every entry equals 1/2^n.
    pub fn plus_state(n: usize) -> Self {
        let dim = 1usize << n;
        let v = Complex64::new(1.0 / dim as f64, 0.0);
        Self {
            n,
            data: CMatrix::from_element(dim, dim, v),
        }
    }

    /// I / 2^n.
    pub fn maximally_mixed(n: usize) -> Self {
        let dim = 1usize << n;
        Self {
            n,
            data: CMatrix::identity(dim, dim) * Complex64::new(1.0 / dim as f64, 0.0),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        1usize << self.n
    }

    pub fn data(&self) -> &CMatrix {
        &self.data
    }

    pub fn trace(&self) -> Complex64 {
        let mut t = Complex64::new(0.0, 0.0);
        for i in 0..self.dim() {
            t += self.data[(i, i)];
        }
        t
    }

    /// Max-abs deviation from Hermiticity.
    pub fn hermiticity_deviation(&self) -> f64 {
        let dim = self.dim();
        let mut dev: f64 = 0.0;
        for r in 0..dim {
            for c in r..dim {
                dev = dev.max((self.data[(r, c)] - self.data[(c, r)].conj()).norm());
            }
        }
        dev
    }

    /// Smallest eigenvalue (the matrix is Hermitian by invariant).
    pub fn min_eigenvalue(&self) -> f64 {
        let eig = SymmetricEigen::new(self.data.clone());
        eig.eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min)
    }

    /// Checks Hermiticity, unit trace and positivity.
    pub fn validate(&self) -> Result<()> {
        let herm = self.hermiticity_deviation();
        if herm > STATE_TOL {
            return Err(Error::invalid(format!(
                "state not Hermitian (deviation {herm:.3e})"
            )));
        }
        let tr = self.trace();
        if (tr - Complex64::new(1.0, 0.0)).norm() > STATE_TOL {
            return Err(Error::invalid(format!("state trace {tr} is not 1")));
        }
        let min_eig = self.min_eigenvalue();
        if min_eig < -PSD_TOL {
            return Err(Error::invalid(format!(
                "state not PSD (min eigenvalue {min_eig:.3e})"
            )));
        }
        Ok(())
    }
}

fn check_same_n(a: &DensityOperator, b: &DensityOperator) -> Result<()> {
    if a.n != b.n {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            got: b.dim(),
        });
    }
    Ok(())
}

/// U rho U&dagger; for a unitary U on the same register.
pub fn apply_unitary(rho: &DensityOperator, u: &CMatrix) -> Result<DensityOperator> {
    if u.nrows() != rho.dim() || u.ncols() != rho.dim() {
        return Err(Error::DimensionMismatch {
            expected: rho.dim(),
            got: u.nrows(),
        });
    }
    if !is_unitary(u, UNITARY_TOL) {
        return Err(Error::invalid("matrix is not unitary within 1e-10"));
    }
    Ok(DensityOperator {
        n: rho.n,
        data: u * &rho.data * u.adjoint(),
    })
}

/// Re(Tr(P rho)); the imaginary part must vanish within 1e-10.
///
/// The raw value is returned unclamped; [-1, 1] clipping is a reporting
/// concern, not a computation concern.
pub fn expectation(rho: &DensityOperator, p: &PauliString) -> Result<f64> {
    if p.n() != rho.n {
        return Err(Error::DimensionMismatch {
            expected: rho.dim(),
            got: 1usize << p.n(),
        });
    }
    let n = rho.n;
    // Each Pauli column c has a single nonzero row r = c ^ flip_mask, so
    // Tr(P rho) reduces to one pass over columns.
    let mut flip_mask = 0usize;
    for (q, letter) in p.letters().iter().enumerate() {
        if matches!(letter, PauliLetter::X | PauliLetter::Y) {
            flip_mask |= 1 << (n - 1 - q);
        }
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for col in 0..rho.dim() {
        let row = col ^ flip_mask;
        let mut val = Complex64::new(1.0, 0.0);
        for (q, letter) in p.letters().iter().enumerate() {
            let bit = (col >> (n - 1 - q)) & 1;
            match letter {
                PauliLetter::I | PauliLetter::X => {}
                PauliLetter::Y => {
                    val *= if bit == 1 {
                        Complex64::new(0.0, -1.0)
                    } else {
                        Complex64::new(0.0, 1.0)
                    };
                }
                PauliLetter::Z => {
                    if bit == 1 {
                        val = -val;
                    }
                }
            }
        }
        acc += val * rho.data[(col, row)];
    }
    if acc.im.abs() > 1e-10 {
        return Err(Error::invalid(format!(
            "expectation has imaginary part {:.3e}",
            acc.im
        )));
    }
    Ok(acc.re)
}

/// Hilbert-Schmidt (Schatten-2) distance sqrt(Tr((a-b)&dagger;(a-b))).
pub fn hs_distance(a: &DensityOperator, b: &DensityOperator) -> Result<f64> {
    check_same_n(a, b)?;
    Ok((&a.data - &b.data).norm())
}

/// Full Schatten-1 norm of (a - b): the diameter convention where
/// orthogonal pure states are at distance 2.
pub fn trace_distance(a: &DensityOperator, b: &DensityOperator) -> Result<f64> {
    check_same_n(a, b)?;
    let diff = &a.data - &b.data;
    let eig = SymmetricEigen::new(diff);
    Ok(eig.eigenvalues.iter().map(|v| v.abs()).sum())
}

/// Traces out every qubit not listed in `keep` (ascending order kept).
pub fn partial_trace(
    n_total: usize,
    data: &CMatrix,
    keep: &[usize],
) -> Result<DensityOperator> {
    let dim = 1usize << n_total;
    if data.nrows() != dim || data.ncols() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: data.nrows(),
        });
    }
    for w in keep.windows(2) {
        if w[0] >= w[1] {
            return Err(Error::invalid("keep list must be strictly ascending"));
        }
    }
    if keep.iter().any(|&q| q >= n_total) {
        return Err(Error::invalid("keep qubit out of range"));
    }
    let n_keep = keep.len();
    let traced: Vec<usize> = (0..n_total).filter(|q| !keep.contains(q)).collect();
    let kdim = 1usize << n_keep;
    let edim = 1usize << traced.len();

    // Distribute the bits of (kept, traced) sub-indices into a full index.
    let assemble = |k_idx: usize, e_idx: usize| -> usize {
        let mut full = 0usize;
        for (pos, &q) in keep.iter().enumerate() {
            let bit = (k_idx >> (n_keep - 1 - pos)) & 1;
            full |= bit << (n_total - 1 - q);
        }
        for (pos, &q) in traced.iter().enumerate() {
            let bit = (e_idx >> (traced.len() - 1 - pos)) & 1;
            full |= bit << (n_total - 1 - q);
        }
        full
    };

    let mut out = CMatrix::zeros(kdim, kdim);
    for a in 0..kdim {
        for b in 0..kdim {
            let mut acc = Complex64::new(0.0, 0.0);
            for e in 0..edim {
                acc += data[(assemble(a, e), assemble(b, e))];
            }
            out[(a, b)] = acc;
        }
    }
    Ok(DensityOperator {
        n: n_keep,
        data: out,
    })
}
