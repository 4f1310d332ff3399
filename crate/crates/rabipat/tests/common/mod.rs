//! Independent numerical oracles shared by the integration tests.
//!
//! Everything here deliberately avoids the library's linear-algebra path:
//! matrices are plain `Vec<Vec<f64>>`, the eigensolver is a hand-rolled
//! cyclic Jacobi iteration, and the 3×3 solver is the closed-form
//! trigonometric (Cardano) method.

/// Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations,
/// ascending.
pub fn jacobi_eigenvalues(mut a: Vec<Vec<f64>>) -> Vec<f64> {
    let n = a.len();
    for _sweep in 0..200 {
        let mut off = 0.0f64;
        for i in 0..n {
            for j in (i + 1)..n {
                off += a[i][j] * a[i][j];
            }
        }
        if off.sqrt() < 1e-14 {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (1.0 + theta * theta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut ev: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    ev.sort_by(|x, y| x.partial_cmp(y).unwrap());
    ev
}

/// Closed-form eigenvalues of a real symmetric 3×3 matrix, ascending
/// (trigonometric form of Cardano's solution).
pub fn cardano_symmetric_3x3(m: [[f64; 3]; 3]) -> [f64; 3] {
    let p1 = m[0][1] * m[0][1] + m[0][2] * m[0][2] + m[1][2] * m[1][2];
    if p1 == 0.0 {
        let mut d = [m[0][0], m[1][1], m[2][2]];
        d.sort_by(|a, b| a.partial_cmp(b).unwrap());
        return d;
    }
    let q = (m[0][0] + m[1][1] + m[2][2]) / 3.0;
    let p2 = (m[0][0] - q).powi(2) + (m[1][1] - q).powi(2) + (m[2][2] - q).powi(2) + 2.0 * p1;
    let p = (p2 / 6.0).sqrt();
    let b = |i: usize, j: usize| (m[i][j] - if i == j { q } else { 0.0 }) / p;
    let det_b = b(0, 0) * (b(1, 1) * b(2, 2) - b(1, 2) * b(2, 1))
        - b(0, 1) * (b(1, 0) * b(2, 2) - b(1, 2) * b(2, 0))
        + b(0, 2) * (b(1, 0) * b(2, 1) - b(1, 1) * b(2, 0));
    let r = (det_b / 2.0).clamp(-1.0, 1.0);
    let phi = r.acos() / 3.0;
    let eig_hi = q + 2.0 * p * phi.cos();
    let eig_lo = q + 2.0 * p * (phi + 2.0 * std::f64::consts::PI / 3.0).cos();
    let eig_mid = 3.0 * q - eig_hi - eig_lo;
    let mut out = [eig_lo, eig_mid, eig_hi];
    out.sort_by(|a, b| a.partial_cmp(b).unwrap());
    out
}

/// Matrix of the anisotropic Rabi Hamiltonian assembled element by
/// element from ⟨s,m|H|s',m'⟩, independent of the library's operator
/// algebra. Basis ordering: |↑,0⟩ … |↑,N⟩, |↓,0⟩ … |↓,N⟩.
pub fn anisotropic_matrix_by_elements(
    omega0: f64,
    omega_q: f64,
    xi1: f64,
    xi2: f64,
    fock_cutoff: usize,
) -> Vec<Vec<f64>> {
    let nf = fock_cutoff + 1;
    let dim = 2 * nf;
    let mut h = vec![vec![0.0f64; dim]; dim];
    let up = |m: usize| m;
    let down = |m: usize| nf + m;
    for m in 0..nf {
        h[up(m)][up(m)] = omega0 * m as f64 + omega_q / 2.0;
        h[down(m)][down(m)] = omega0 * m as f64 - omega_q / 2.0;
    }
    // -ξ₁ (a σ₊ + a†σ₋): ⟨↑,m-1|H|↓,m⟩ = -ξ₁ √m
    for m in 1..nf {
        let v = -xi1 * (m as f64).sqrt();
        h[up(m - 1)][down(m)] += v;
        h[down(m)][up(m - 1)] += v;
    }
    // -ξ₂ (a σ₋ + a†σ₊): ⟨↓,m-1|H|↑,m⟩ = -ξ₂ √m
    for m in 1..nf {
        let v = -xi2 * (m as f64).sqrt();
        h[down(m - 1)][up(m)] += v;
        h[up(m)][down(m - 1)] += v;
    }
    h
}
