use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = nalgebra::DVector<Complex64>;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn check_finite(angle: f64) -> Result<()> {
    if angle.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid(format!("non-finite rotation angle {angle}")))
    }
}

/// R_y(a) = exp(-i a Y / 2) = [[cos(a/2), -sin(a/2)], [sin(a/2), cos(a/2)]].
pub fn gate_ry(angle: f64) -> Result<CMatrix> {
    check_finite(angle)?;
    let (s, co) = (angle / 2.0).sin_cos();
    Ok(CMatrix::from_row_slice(
        2,
        2,
        &[c(co, 0.0), c(-s, 0.0), c(s, 0.0), c(co, 0.0)],
    ))
}

/// R_x(a) = exp(-i a X / 2).
pub fn gate_rx(angle: f64) -> Result<CMatrix> {
    check_finite(angle)?;
    let (s, co) = (angle / 2.0).sin_cos();
    Ok(CMatrix::from_row_slice(
        2,
        2,
        &[c(co, 0.0), c(0.0, -s), c(0.0, -s), c(co, 0.0)],
    ))
}

/// R_z(a) = exp(-i a Z / 2) = diag(e^{-ia/2}, e^{ia/2}).
pub fn gate_rz(angle: f64) -> Result<CMatrix> {
    check_finite(angle)?;
    let half = angle / 2.0;
    let mut m = CMatrix::zeros(2, 2);
    m[(0, 0)] = Complex64::from_polar(1.0, -half);
    m[(1, 1)] = Complex64::from_polar(1.0, half);
    Ok(m)
}

/// R_zz(a) = exp(-i a Z(x)Z / 2), diagonal on two qubits.
pub fn gate_rzz(angle: f64) -> Result<CMatrix> {
    check_finite(angle)?;
    let half = angle / 2.0;
    let minus = Complex64::from_polar(1.0, -half);
    let plus = Complex64::from_polar(1.0, half);
    let mut m = CMatrix::zeros(4, 4);
    m[(0, 0)] = minus;
    m[(1, 1)] = plus;
    m[(2, 2)] = plus;
    m[(3, 3)] = minus;
    Ok(m)
}

/// Hadamard gate.
pub fn gate_h() -> CMatrix {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    CMatrix::from_row_slice(2, 2, &[c(s, 0.0), c(s, 0.0), c(s, 0.0), c(-s, 0.0)])
}

/// Max-abs deviation of U&dagger;U from the identity stays below `tol`.
pub fn is_unitary(u: &CMatrix, tol: f64) -> bool {
    if u.nrows() != u.ncols() {
        return false;
    }
    let prod = u.adjoint() * u;
    let dim = u.nrows();
    let mut dev: f64 = 0.0;
    for r in 0..dim {
        for col in 0..dim {
            let expect = if r == col { 1.0 } else { 0.0 };
            dev = dev.max((prod[(r, col)] - c(expect, 0.0)).norm());
        }
    }
    dev <= tol
}

/// Lifts a single-qubit gate to the full `n`-qubit space on `qubit`.
pub fn embed_one_qubit(gate: &CMatrix, qubit: usize, n: usize) -> Result<CMatrix> {
    if gate.nrows() != 2 || gate.ncols() != 2 {
        return Err(Error::invalid("expected a 2x2 gate"));
    }
    if qubit >= n {
        return Err(Error::invalid(format!("qubit {qubit} out of range for n={n}")));
    }
    let dim = 1usize << n;
    let shift = n - 1 - qubit;
    let mut m = CMatrix::zeros(dim, dim);
    for col in 0..dim {
        let cb = (col >> shift) & 1;
        for rb in 0..2 {
            let row = (col & !(1 << shift)) | (rb << shift);
            m[(row, col)] = gate[(rb, cb)];
        }
    }
    Ok(m)
}

/// Lifts a two-qubit gate to the full space, acting on (q1, q2) in that
/// order; the gate's basis is |b1 b2> with b1 the bit of q1.
pub fn embed_two_qubit(gate: &CMatrix, q1: usize, q2: usize, n: usize) -> Result<CMatrix> {
    if gate.nrows() != 4 || gate.ncols() != 4 {
        return Err(Error::invalid("expected a 4x4 gate"));
    }
    if q1 >= n || q2 >= n || q1 == q2 {
        return Err(Error::invalid(format!(
            "invalid qubit pair ({q1}, {q2}) for n={n}"
        )));
    }
    let dim = 1usize << n;
    let s1 = n - 1 - q1;
    let s2 = n - 1 - q2;
    let clear = !((1usize << s1) | (1usize << s2));
    let mut m = CMatrix::zeros(dim, dim);
    for col in 0..dim {
        let csub = (((col >> s1) & 1) << 1) | ((col >> s2) & 1);
        for rsub in 0..4 {
            let row = (col & clear) | ((rsub >> 1) << s1) | ((rsub & 1) << s2);
            m[(row, col)] = gate[(rsub, csub)];
        }
    }
    Ok(m)
}

/// Dense permutation matrix swapping qubits `a` and `b` when `control` is 1.
pub fn controlled_swap(n: usize, control: usize, a: usize, b: usize) -> Result<CMatrix> {
    if control >= n || a >= n || b >= n || a == b || control == a || control == b {
        return Err(Error::invalid(format!(
            "invalid controlled-swap wires ({control}, {a}, {b}) for n={n}"
        )));
    }
    let dim = 1usize << n;
    let sc = n - 1 - control;
    let sa = n - 1 - a;
    let sb = n - 1 - b;
    let mut m = CMatrix::zeros(dim, dim);
    for col in 0..dim {
        let row = if (col >> sc) & 1 == 1 {
            let ba = (col >> sa) & 1;
            let bb = (col >> sb) & 1;
            (col & !((1 << sa) | (1 << sb))) | (bb << sa) | (ba << sb)
        } else {
            col
        };
        m[(row, col)] = c(1.0, 0.0);
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    #[test]
    fn ry_zero_is_identity() {
        let g = gate_ry(0.0).unwrap();
        assert!((g.clone() - CMatrix::identity(2, 2)).norm() < 1e-15);
    }

    #[test]
    fn ry_pi_flips_zero_state() {
        let g = gate_ry(PI).unwrap();
        // |0> -> |1> up to global sign
        assert_abs_diff_eq!(g[(0, 0)].re, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(g[(1, 0)].norm(), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn ry_half_pi_gives_plus_state() {
        // angle pi/2 on |0>: <Z> = 0, <X> = 1 (direct 2x2 product)
        let g = gate_ry(PI / 2.0).unwrap();
        let a0 = g[(0, 0)];
        let a1 = g[(1, 0)];
        let z = (a0.norm_sqr() - a1.norm_sqr()).abs();
        let x = 2.0 * (a0.conj() * a1).re;
        assert_abs_diff_eq!(z, 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(x, 1.0, epsilon = 1e-14);
    }

    #[test]
    fn rzz_zero_is_identity() {
        let g = gate_rzz(0.0).unwrap();
        assert!((g.clone() - CMatrix::identity(4, 4)).norm() < 1e-15);
    }

    #[test]
    fn rz_full_turn_is_minus_identity() {
        let g = gate_rz(2.0 * PI).unwrap();
        assert!((g.clone() + CMatrix::identity(2, 2)).norm() < 1e-14);
    }

    #[test]
    fn rx_pi_flips_up_to_phase() {
        let g = gate_rx(PI).unwrap();
        assert_abs_diff_eq!(g[(0, 0)].norm(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(g[(1, 0)].norm(), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn non_finite_angle_rejected() {
        assert!(gate_ry(f64::NAN).is_err());
        assert!(gate_rzz(f64::INFINITY).is_err());
    }

    #[test]
    fn embed_two_qubit_matches_kronecker_on_adjacent_pair() {
        let g = gate_rzz(0.7).unwrap();
        let lifted = embed_two_qubit(&g, 0, 1, 3).unwrap();
        let direct = g.kronecker(&CMatrix::identity(2, 2));
        assert!((lifted - direct).norm() < 1e-14);
    }

    #[test]
    fn embed_two_qubit_handles_reversed_order() {
        // swap-conjugated embedding: acting on (1,0) equals acting on (0,1)
        // with the gate's qubits exchanged; rzz is symmetric so both agree.
        let g = gate_rzz(0.7).unwrap();
        let a = embed_two_qubit(&g, 0, 1, 2).unwrap();
        let b = embed_two_qubit(&g, 1, 0, 2).unwrap();
        assert!((a - b).norm() < 1e-14);
    }

    #[test]
    fn controlled_swap_permutes_only_when_control_set() {
        let m = controlled_swap(3, 0, 1, 2).unwrap();
        // |0ab> fixed
        for colum in 0..4 {
            assert_abs_diff_eq!(m[(colum, colum)].re, 1.0, epsilon = 1e-15);
        }
        // |110> -> |101>
        assert_abs_diff_eq!(m[(0b101, 0b110)].re, 1.0, epsilon = 1e-15);
    }

    proptest! {
        #[test]
        fn rotations_are_unitary(angle in -10.0f64..10.0) {
            prop_assert!(is_unitary(&gate_ry(angle).unwrap(), 1e-14));
            prop_assert!(is_unitary(&gate_rx(angle).unwrap(), 1e-14));
            prop_assert!(is_unitary(&gate_rz(angle).unwrap(), 1e-14));
            prop_assert!(is_unitary(&gate_rzz(angle).unwrap(), 1e-14));
        }

        #[test]
        fn embeddings_preserve_unitarity(angle in -6.0f64..6.0, q in 0usize..4) {
            let lifted = embed_one_qubit(&gate_ry(angle).unwrap(), q, 4).unwrap();
            prop_assert!(is_unitary(&lifted, 1e-12));
        }
    }
}
