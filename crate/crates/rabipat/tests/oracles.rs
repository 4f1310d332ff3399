//! Dual-route checks: the library's eigensolver and pattern
//! decomposition against independently coded oracles.

mod common;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rabipat::hilbert::{HilbertConfig, OperatorMatrix};
use rabipat::models::{build_anisotropic_rabi, AnisotropicRabiParams};
use rabipat::patterns::{decompose, pattern_matrix};
use rabipat::spectra::diagonalize;

use common::{anisotropic_matrix_by_elements, cardano_symmetric_3x3, jacobi_eigenvalues};

#[test]
fn ground_energy_against_independent_assembly_and_jacobi() {
    // Ω = 5ω₀, ξ₁ = 0.3ω₀, ξ₂ = 0.2ω₀ at a small cutoff
    let p = AnisotropicRabiParams::new(1.0, 5.0, 0.3, 0.2).unwrap();
    let cfg = HilbertConfig::new(6).unwrap();
    let h = build_anisotropic_rabi(&p, &cfg);
    let spec = diagonalize(&h, 3).unwrap();

    let oracle_matrix = anisotropic_matrix_by_elements(1.0, 5.0, 0.3, 0.2, 6);
    let oracle = jacobi_eigenvalues(oracle_matrix);

    assert!(
        (spec.ground_energy() - oracle[0]).abs() < 1e-12,
        "{} vs {}",
        spec.ground_energy(),
        oracle[0]
    );
}

#[test]
fn small_instance_full_spectrum_against_jacobi() {
    // 2(N+1) = 6
    let p = AnisotropicRabiParams::new(1.0, 3.0, 0.5, 0.35).unwrap();
    let cfg = HilbertConfig::new(2).unwrap();
    let h = build_anisotropic_rabi(&p, &cfg);
    let spec = diagonalize(&h, 6).unwrap();

    let oracle = jacobi_eigenvalues(anisotropic_matrix_by_elements(1.0, 3.0, 0.5, 0.35, 2));
    for (got, want) in spec.eigenvalues().iter().zip(&oracle) {
        assert!((got - want).abs() < 1e-12, "{got} vs {want}");
    }
}

#[test]
fn dense_solver_against_jacobi_on_generic_symmetric_input() {
    // a filled symmetric matrix that does not block-diagonalize by parity
    let n = 12;
    let raw: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let (a, b) = (i.min(j) as f64, i.max(j) as f64);
                    (0.3 * a - 0.11 * b).sin() + if i == j { 1.5 * a } else { 0.0 }
                })
                .collect()
        })
        .collect();
    let m = DMatrix::<Complex64>::from_fn(n, n, |i, j| Complex64::new(raw[i][j], 0.0));
    let op = OperatorMatrix::from_matrix(m).unwrap();
    assert!(op.is_hermitian());
    let spec = diagonalize(&op, n).unwrap();
    let oracle = jacobi_eigenvalues(raw);
    for (got, want) in spec.eigenvalues().iter().zip(&oracle) {
        assert!((got - want).abs() < 1e-11, "{got} vs {want}");
    }
}

#[test]
fn pattern_eigenvalues_against_cardano() {
    // the k-sweep benchmark at k = 1
    let p = AnisotropicRabiParams::new(1.0, 100.0, 0.1, 0.1).unwrap();
    let cfg = HilbertConfig::new(1).unwrap();
    let d = decompose(&pattern_matrix(&p), &cfg);
    let m = pattern_matrix(&p);
    let raw = [
        [m.entries()[(0, 0)], m.entries()[(0, 1)], m.entries()[(0, 2)]],
        [m.entries()[(1, 0)], m.entries()[(1, 1)], m.entries()[(1, 2)]],
        [m.entries()[(2, 0)], m.entries()[(2, 1)], m.entries()[(2, 2)]],
    ];
    let oracle = cardano_symmetric_3x3(raw);
    for (got, want) in d.lambdas().iter().zip(&oracle) {
        assert!((got - want).abs() < 1e-12, "{got} vs {want}");
    }
}

#[test]
fn pattern_eigenvalues_against_cardano_randomized() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(31);
    let cfg = HilbertConfig::new(1).unwrap();
    for _ in 0..300 {
        let omega_q: f64 = if rng.random_bool(0.5) { 10.0 } else { 100.0 };
        let cap = omega_q.sqrt();
        let p = AnisotropicRabiParams::new(
            1.0,
            omega_q,
            rng.random_range(0.0..cap),
            rng.random_range(0.0..cap),
        )
        .unwrap();
        let m = pattern_matrix(&p);
        let raw = [
            [m.entries()[(0, 0)], m.entries()[(0, 1)], m.entries()[(0, 2)]],
            [m.entries()[(1, 0)], m.entries()[(1, 1)], m.entries()[(1, 2)]],
            [m.entries()[(2, 0)], m.entries()[(2, 1)], m.entries()[(2, 2)]],
        ];
        let oracle = cardano_symmetric_3x3(raw);
        let d = decompose(&m, &cfg);
        for (got, want) in d.lambdas().iter().zip(&oracle) {
            let scale = omega_q.max(1.0);
            assert!((got - want).abs() < 1e-11 * scale, "{got} vs {want}");
        }
    }
}

#[test]
fn jc_point_against_closed_form_ladder() {
    // ξ₂ = 0: dressed-pair closed form, checked through the same entry
    // point the sweeps use
    let (omega0, omega_q, xi1) = (1.0, 8.0, 0.45);
    let p = AnisotropicRabiParams::new(omega0, omega_q, xi1, 0.0).unwrap();
    let cfg = HilbertConfig::new(60).unwrap();
    let spec = diagonalize(&build_anisotropic_rabi(&p, &cfg), 11).unwrap();
    let mut expected = vec![-omega_q / 2.0];
    for n in 0..10 {
        let mid = (n as f64 + 0.5) * omega0;
        let split = ((omega_q - omega0).powi(2) + 4.0 * xi1 * xi1 * (n as f64 + 1.0)).sqrt();
        expected.push(mid - split / 2.0);
        expected.push(mid + split / 2.0);
    }
    expected.sort_by(|a, b| a.partial_cmp(b).unwrap());
    for (got, want) in spec.eigenvalues().iter().zip(expected) {
        assert!((got - want).abs() < 1e-10, "{got} vs {want}");
    }
}
