//! Raw complex-matrix helpers shared by the state types and the channel
//! analysis: products, adjoints, Kronecker products, and a Hermitian
//! eigensolver (closed form at dimension 2, cyclic Jacobi above).
//!
//! Matrices are stored row-major as `Vec<Complex64>` of length `dim * dim`.
//! The solver is pinned to this pair of algorithms so that trace-distance
//! outputs are reproducible to the last digit across builds.

use num_complex::Complex64;

use crate::error::QubitError;

/// Convergence target for the Jacobi sweep: the Frobenius norm of the
/// off-diagonal part must drop below this.
pub const JACOBI_OFF_DIAGONAL_TOL: f64 = 1e-13;

const MAX_JACOBI_SWEEPS: usize = 64;

#[inline]
pub(crate) fn at(m: &[Complex64], dim: usize, i: usize, j: usize) -> Complex64 {
    m[i * dim + j]
}

pub(crate) fn identity(dim: usize) -> Vec<Complex64> {
    let mut m = vec![Complex64::new(0.0, 0.0); dim * dim];
    for i in 0..dim {
        m[i * dim + i] = Complex64::new(1.0, 0.0);
    }
    m
}

pub(crate) fn mat_mul(dim: usize, a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); dim * dim];
    for i in 0..dim {
        for k in 0..dim {
            let aik = a[i * dim + k];
            if aik == Complex64::new(0.0, 0.0) {
                continue;
            }
            for j in 0..dim {
                out[i * dim + j] += aik * b[k * dim + j];
            }
        }
    }
    out
}

pub(crate) fn mat_dagger(dim: usize, a: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); dim * dim];
    for i in 0..dim {
        for j in 0..dim {
            out[j * dim + i] = a[i * dim + j].conj();
        }
    }
    out
}

/// Kronecker product of `a` (dim_a) and `b` (dim_b); the first factor owns
/// the most significant index, matching `|a b>` basis ordering.
pub(crate) fn kron(
    dim_a: usize,
    a: &[Complex64],
    dim_b: usize,
    b: &[Complex64],
) -> Vec<Complex64> {
    let dim = dim_a * dim_b;
    let mut out = vec![Complex64::new(0.0, 0.0); dim * dim];
    for ia in 0..dim_a {
        for ja in 0..dim_a {
            let f = a[ia * dim_a + ja];
            for ib in 0..dim_b {
                for jb in 0..dim_b {
                    out[(ia * dim_b + ib) * dim + (ja * dim_b + jb)] = f * b[ib * dim_b + jb];
                }
            }
        }
    }
    out
}

/// Conjugation `u · m · u†`.
pub(crate) fn conjugate(dim: usize, u: &[Complex64], m: &[Complex64]) -> Vec<Complex64> {
    mat_mul(dim, &mat_mul(dim, u, m), &mat_dagger(dim, u))
}

/// Max entrywise distance from `a` to its Hermitian part `(a + a†)/2`.
pub(crate) fn hermitian_defect(dim: usize, a: &[Complex64]) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..dim {
        for j in 0..dim {
            let d = (a[i * dim + j] - a[j * dim + i].conj()).norm();
            worst = worst.max(d);
        }
    }
    worst / 2.0
}

fn off_diagonal_norm(dim: usize, a: &[Complex64]) -> f64 {
    let mut sum = 0.0;
    for i in 0..dim {
        for j in 0..dim {
            if i != j {
                sum += a[i * dim + j].norm_sqr();
            }
        }
    }
    sum.sqrt()
}

/// Eigenvalues of a Hermitian matrix, ascending.
///
/// Dimension 2 uses the closed form; larger dimensions run cyclic Jacobi
/// sweeps with complex plane rotations until the off-diagonal norm falls
/// below [`JACOBI_OFF_DIAGONAL_TOL`].
pub fn hermitian_eigenvalues(dim: usize, a: &[Complex64]) -> Result<Vec<f64>, QubitError> {
    assert_eq!(a.len(), dim * dim, "matrix storage length");
    if dim == 1 {
        return Ok(vec![a[0].re]);
    }
    if dim == 2 {
        let mean = (a[0].re + a[3].re) / 2.0;
        let half_gap = (a[0].re - a[3].re) / 2.0;
        let radius = (half_gap * half_gap + a[1].norm_sqr()).sqrt();
        return Ok(vec![mean - radius, mean + radius]);
    }

    let mut m = a.to_vec();
    for _ in 0..MAX_JACOBI_SWEEPS {
        if off_diagonal_norm(dim, &m) < JACOBI_OFF_DIAGONAL_TOL {
            let mut eigs: Vec<f64> = (0..dim).map(|i| m[i * dim + i].re).collect();
            eigs.sort_by(|x, y| x.partial_cmp(y).expect("finite eigenvalues"));
            return Ok(eigs);
        }
        for p in 0..dim {
            for q in (p + 1)..dim {
                jacobi_rotate(dim, &mut m, p, q);
            }
        }
        // kill the anti-Hermitian drift accumulated by the rotations
        let dag = mat_dagger(dim, &m);
        for (x, y) in m.iter_mut().zip(dag) {
            *x = (*x + y) / 2.0;
        }
    }
    Err(QubitError::EigenNotConverged)
}

/// One complex Jacobi rotation zeroing the (p, q) entry.
///
/// The phase of `m[p][q]` is absorbed first so the 2x2 block becomes real
/// symmetric, then the classical rotation angle is chosen from
/// `tan(2 theta) = 2|m_pq| / (m_pp - m_qq)` (smaller-root form).
fn jacobi_rotate(dim: usize, m: &mut Vec<Complex64>, p: usize, q: usize) {
    let z = m[p * dim + q];
    let absz = z.norm();
    if absz < 1e-18 {
        return;
    }
    let phi = z.arg();
    let app = m[p * dim + p].re;
    let aqq = m[q * dim + q].re;

    let tau = (aqq - app) / (2.0 * absz);
    let t = if tau == 0.0 {
        1.0
    } else {
        tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    let phase = Complex64::from_polar(1.0, -phi);
    let mut v = identity(dim);
    v[p * dim + p] = Complex64::new(c, 0.0);
    v[p * dim + q] = Complex64::new(s, 0.0);
    v[q * dim + p] = -s * phase;
    v[q * dim + q] = c * phase;

    *m = conjugate(dim, &mat_dagger(dim, &v), m);
}
