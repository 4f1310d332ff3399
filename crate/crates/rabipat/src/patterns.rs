//! Operator-space pattern decomposition of the anisotropic Rabi model.
//!
//! The Hamiltonian is a quadratic form in the operator vector
//! `v = (σx, −iσy, a)` with a real symmetric 3×3 coefficient matrix `M`:
//! `H = v† M v`. Eigendecomposing `M = Σₙ λₙ uₙuₙᵀ` yields three pattern
//! operators `Aₙ = uₙ,₁ σx + uₙ,₂ (−iσy) + uₙ,₃ a` with
//! `H = Σₙ λₙ Aₙ†Aₙ`, and each eigenstate's energy and photon number can
//! be attributed pattern by pattern.
//!
//! The slot content `(σx, −iσy, a)` is the one that satisfies the
//! reconstruction identity; the alternative `(iσy, σz, a)` assembly is
//! retained only as a negative control (see `errata::PATTERN_SLOTS`).

use nalgebra::{DVector, Matrix3, Vector3};
use num_complex::Complex64;

use crate::error::{RabiError, Result};
use crate::hilbert::{annihilation, number, spin_ops, HilbertConfig, OperatorMatrix};
use crate::models::AnisotropicRabiParams;

/// Overlap margin below which a label assignment is flagged ambiguous.
pub const TRACK_AMBIGUITY_TOL: f64 = 1e-6;

/// Real symmetric 3×3 coefficient matrix of the operator-space quadratic
/// form, with rows/columns ordered (σx-slot, −iσy-slot, a-slot).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PatternMatrix {
    m: Matrix3<f64>,
}

impl PatternMatrix {
    pub fn entries(&self) -> &Matrix3<f64> {
        &self.m
    }

    pub fn trace(&self) -> f64 {
        self.m.trace()
    }
}

/// Coefficient matrix of the anisotropic Rabi Hamiltonian:
///
/// ```text
/// M = [ 0          Ω/4         −(ξ₁+ξ₂)/2 ]
///     [ Ω/4        0           (ξ₂−ξ₁)/2  ]
///     [ −(ξ₁+ξ₂)/2 (ξ₂−ξ₁)/2   ω₀         ]
/// ```
pub fn pattern_matrix(p: &AnisotropicRabiParams) -> PatternMatrix {
    let half_sum = -(p.xi1() + p.xi2()) / 2.0;
    let half_diff = (p.xi2() - p.xi1()) / 2.0;
    let quarter_q = p.omega_q() / 4.0;
    PatternMatrix {
        m: Matrix3::new(
            0.0, quarter_q, half_sum, //
            quarter_q, 0.0, half_diff, //
            half_sum, half_diff, p.omega0(),
        ),
    }
}

/// Label-tracking metadata attached to a decomposition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LabelInfo {
    /// Permutation mapping ascending-eigenvalue order to the current labels.
    pub permutation: [usize; 3],
    /// Set when two candidate assignments scored within
    /// [`TRACK_AMBIGUITY_TOL`] of each other during tracking.
    pub ambiguous: bool,
}

impl LabelInfo {
    fn base() -> Self {
        Self {
            permutation: [0, 1, 2],
            ambiguous: false,
        }
    }
}

/// Eigendecomposition of a [`PatternMatrix`] together with the assembled
/// pattern operators on a concrete truncated space.
#[derive(Debug, Clone)]
pub struct PatternDecomposition {
    lambdas: [f64; 3],
    vectors: [Vector3<f64>; 3],
    pattern_ops: [OperatorMatrix; 3],
    labeling: LabelInfo,
    cfg: HilbertConfig,
}

impl PatternDecomposition {
    pub fn lambdas(&self) -> &[f64; 3] {
        &self.lambdas
    }

    pub fn vectors(&self) -> &[Vector3<f64>; 3] {
        &self.vectors
    }

    pub fn pattern_ops(&self) -> &[OperatorMatrix; 3] {
        &self.pattern_ops
    }

    pub fn labeling(&self) -> LabelInfo {
        self.labeling
    }

    pub fn config(&self) -> &HilbertConfig {
        &self.cfg
    }

    /// Identity-shift scalar of the reconstruction,
    /// `c = Σₙ λₙ (uₙ,₁² + uₙ,₂²)`; zero up to rounding because the two
    /// spin slots of the coefficient matrix carry no diagonal weight.
    pub fn identity_shift(&self) -> f64 {
        self.lambdas
            .iter()
            .zip(&self.vectors)
            .map(|(l, u)| l * (u[0] * u[0] + u[1] * u[1]))
            .sum()
    }
}

/// Canonical slot operators (σx, −iσy, a) on the truncated space.
pub fn canonical_slots(cfg: &HilbertConfig) -> [OperatorMatrix; 3] {
    let s = spin_ops(cfg);
    let minus_i_sy = s.y.scale(Complex64::new(0.0, -1.0));
    [s.x, minus_i_sy, annihilation(cfg)]
}

/// Alternative slot assignment (iσy, σz, a). It does not satisfy the
/// reconstruction identity; the `validate` command uses it as a negative
/// control.
pub fn sigma_z_variant_slots(cfg: &HilbertConfig) -> [OperatorMatrix; 3] {
    let s = spin_ops(cfg);
    let i_sy = s.y.scale(Complex64::new(0.0, 1.0));
    [i_sy, s.z, annihilation(cfg)]
}

/// Assemble `Aₙ = Σᵢ uₙ,ᵢ slotᵢ` for each eigenvector.
pub fn assemble_pattern_ops(
    vectors: &[Vector3<f64>; 3],
    slots: &[OperatorMatrix; 3],
) -> [OperatorMatrix; 3] {
    let build = |u: &Vector3<f64>| {
        slots[0]
            .scale_real(u[0])
            .add(&slots[1].scale_real(u[1]))
            .and_then(|m| m.add(&slots[2].scale_real(u[2])))
            .expect("slot dims match")
    };
    [build(&vectors[0]), build(&vectors[1]), build(&vectors[2])]
}

/// Symmetric 3×3 eigendecomposition with ascending eigenvalues, the phase
/// of each eigenvector fixed so its largest-magnitude component is
/// positive, and the pattern operators assembled on `cfg`.
pub fn decompose(m: &PatternMatrix, cfg: &HilbertConfig) -> PatternDecomposition {
    let eig = m.m.symmetric_eigen();
    let mut order = [0usize, 1, 2];
    order.sort_by(|&a, &b| {
        eig.eigenvalues[a]
            .partial_cmp(&eig.eigenvalues[b])
            .expect("finite eigenvalues")
    });

    let mut lambdas = [0.0f64; 3];
    let mut vectors = [Vector3::zeros(); 3];
    for (slot, &src) in order.iter().enumerate() {
        lambdas[slot] = eig.eigenvalues[src];
        let mut v: Vector3<f64> = eig.eigenvectors.column(src).into();
        let mut dominant = 0;
        for i in 1..3 {
            if v[i].abs() > v[dominant].abs() {
                dominant = i;
            }
        }
        if v[dominant] < 0.0 {
            v = -v;
        }
        vectors[slot] = v;
    }

    let pattern_ops = assemble_pattern_ops(&vectors, &canonical_slots(cfg));
    PatternDecomposition {
        lambdas,
        vectors,
        pattern_ops,
        labeling: LabelInfo::base(),
        cfg: *cfg,
    }
}

/// `Σₙ λₙ Aₙ†Aₙ` together with the identity-shift scalar.
#[derive(Debug, Clone)]
pub struct Reconstruction {
    pub operator: OperatorMatrix,
    pub identity_shift: f64,
}

/// Rebuild the Hamiltonian from the decomposition. The result satisfies
/// `reconstruct(d).operator == H + c·I` elementwise with
/// `c = identity_shift`.
pub fn reconstruct(d: &PatternDecomposition) -> Reconstruction {
    let dim = d.cfg.dim();
    let mut acc = OperatorMatrix::zeros(dim);
    for (l, a) in d.lambdas.iter().zip(&d.pattern_ops) {
        let quad = a.adjoint().compose(a).expect("matched dims");
        acc = acc.add(&quad.scale_real(*l)).expect("matched dims");
    }
    Reconstruction {
        operator: acc,
        identity_shift: d.identity_shift(),
    }
}

/// Per-pattern energy and photon-number attribution for one state:
/// `E_λₙ = λₙ ⟨Ψ|Aₙ†Aₙ|Ψ⟩` and `n_λₙ = uₙ,₃² ⟨Ψ|a†a|Ψ⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PatternAttribution {
    pub energies: [f64; 3],
    pub occupations: [f64; 3],
    /// Total ⟨Ψ|a†a|Ψ⟩ the occupations were split from.
    pub total_occupation: f64,
}

pub fn attribute(
    d: &PatternDecomposition,
    state: &DVector<Complex64>,
) -> Result<PatternAttribution> {
    let norm = state.norm();
    if (norm - 1.0).abs() > crate::hilbert::NORM_TOL {
        return Err(RabiError::NotNormalized { norm });
    }
    let total_occupation = number(&d.cfg).expectation(state)?.re;
    let mut energies = [0.0f64; 3];
    let mut occupations = [0.0f64; 3];
    for n in 0..3 {
        let applied = d.pattern_ops[n].apply(state)?;
        energies[n] = d.lambdas[n] * applied.norm_squared();
        let u3 = d.vectors[n][2];
        occupations[n] = u3 * u3 * total_occupation;
    }
    Ok(PatternAttribution {
        energies,
        occupations,
        total_occupation,
    })
}

/// Result of the tracking core: how to relabel `next` so its triples line
/// up with `prev`.
#[derive(Debug, Clone, Copy)]
pub struct TrackOutcome {
    /// `permutation[slot]` = index into `next`'s ascending order.
    pub permutation: [usize; 3],
    /// Sign to apply to each relabeled vector.
    pub signs: [f64; 3],
    pub ambiguous: bool,
}

const PERMUTATIONS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

/// Pick the permutation of `next` maximizing Σₙ |uₙ_prev · u_perm(n)_next|.
pub fn track_vectors(prev: &[Vector3<f64>; 3], next: &[Vector3<f64>; 3]) -> TrackOutcome {
    let mut best = PERMUTATIONS[0];
    let mut best_score = f64::NEG_INFINITY;
    let mut runner_up = f64::NEG_INFINITY;
    for perm in PERMUTATIONS {
        let score: f64 = (0..3).map(|n| prev[n].dot(&next[perm[n]]).abs()).sum();
        if score > best_score {
            runner_up = best_score;
            best_score = score;
            best = perm;
        } else if score > runner_up {
            runner_up = score;
        }
    }
    let mut signs = [1.0f64; 3];
    for n in 0..3 {
        if prev[n].dot(&next[best[n]]) < 0.0 {
            signs[n] = -1.0;
        }
    }
    TrackOutcome {
        permutation: best,
        signs,
        ambiguous: (best_score - runner_up).abs() < TRACK_AMBIGUITY_TOL,
    }
}

/// Relabel `next`'s (λ, u, A) triples for continuity with `prev`:
/// permute to maximize the summed eigenvector overlap and flip signs so
/// every `uₙ_prev · uₙ_next > 0`. An ambiguous assignment is tagged in
/// the labeling metadata, never an error.
pub fn track_labels(
    prev: &PatternDecomposition,
    next: &PatternDecomposition,
) -> PatternDecomposition {
    let outcome = track_vectors(&prev.vectors, &next.vectors);
    let mut lambdas = [0.0f64; 3];
    let mut vectors = [Vector3::zeros(); 3];
    let mut ops: Vec<OperatorMatrix> = Vec::with_capacity(3);
    let mut permutation = [0usize; 3];
    for n in 0..3 {
        let src = outcome.permutation[n];
        lambdas[n] = next.lambdas[src];
        vectors[n] = next.vectors[src] * outcome.signs[n];
        ops.push(next.pattern_ops[src].scale_real(outcome.signs[n]));
        permutation[n] = next.labeling.permutation[src];
    }
    let ops: [OperatorMatrix; 3] = ops.try_into().expect("three ops");
    PatternDecomposition {
        lambdas,
        vectors,
        pattern_ops: ops,
        labeling: LabelInfo {
            permutation,
            ambiguous: outcome.ambiguous,
        },
        cfg: next.cfg,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::build_anisotropic_rabi;
    use crate::spectra::diagonalize;

    fn fig_sweep_params(k: f64) -> AnisotropicRabiParams {
        // benchmark configuration: Ω = 100 ω₀, ξ₁ = 0.1 ω₀, ξ₂ = k ξ₁
        AnisotropicRabiParams::new(1.0, 100.0, 0.1, 0.1 * k).unwrap()
    }

    #[test]
    fn coefficient_matrix_by_direct_substitution() {
        let p = AnisotropicRabiParams::new(1.0, 100.0, 0.1, 0.09).unwrap();
        let m = pattern_matrix(&p);
        let want = Matrix3::new(
            0.0, 25.0, -0.095, //
            25.0, 0.0, -0.005, //
            -0.095, -0.005, 1.0,
        );
        for i in 0..3 {
            for j in 0..3 {
                assert!(
                    (m.entries()[(i, j)] - want[(i, j)]).abs() < 1e-15,
                    "entry ({i},{j})"
                );
            }
        }
        assert_eq!(m.trace(), 1.0);
    }

    #[test]
    fn isotropic_coupling_decouples_second_slot() {
        let p = AnisotropicRabiParams::new(1.0, 30.0, 0.4, 0.4).unwrap();
        let m = pattern_matrix(&p);
        assert_eq!(m.entries()[(1, 2)], 0.0);
        assert_eq!(m.entries()[(2, 1)], 0.0);
    }

    #[test]
    fn decoupled_eigenvalues() {
        // ξ₁ = ξ₂ = 0: eigenvalues {−Ω/4, +Ω/4, ω₀}
        let p = AnisotropicRabiParams::new(1.0, 100.0, 0.0, 0.0).unwrap();
        let cfg = HilbertConfig::new(2).unwrap();
        let d = decompose(&pattern_matrix(&p), &cfg);
        let want = [-25.0, 1.0, 25.0];
        for (got, want) in d.lambdas().iter().zip(want) {
            assert!((got - want).abs() < 1e-12);
        }
    }

    #[test]
    fn degenerate_zero_qubit_frequency() {
        // Ω → 0 with no coupling leaves {0, 0, ω₀}
        let p = AnisotropicRabiParams::new(1.0, 1e-300, 0.0, 0.0).unwrap();
        let cfg = HilbertConfig::new(1).unwrap();
        let d = decompose(&pattern_matrix(&p), &cfg);
        assert!(d.lambdas()[0].abs() < 1e-15);
        assert!(d.lambdas()[1].abs() < 1e-15);
        assert!((d.lambdas()[2] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn eigenvectors_orthonormal() {
        let p = fig_sweep_params(1.0);
        let cfg = HilbertConfig::new(2).unwrap();
        let d = decompose(&pattern_matrix(&p), &cfg);
        for i in 0..3 {
            for j in 0..3 {
                let dot = d.vectors()[i].dot(&d.vectors()[j]);
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((dot - want).abs() < 1e-14);
            }
        }
        // column normalization under the vector sum, Σₙ uₙ,₃² = 1
        let col: f64 = d.vectors().iter().map(|u| u[2] * u[2]).sum();
        assert!((col - 1.0).abs() < 1e-14);
    }

    #[test]
    fn reconstruction_matches_hamiltonian() {
        let cfg = HilbertConfig::new(12).unwrap();
        for k in [0.0, 0.5, 1.0, 1.5] {
            let p = fig_sweep_params(k);
            let h = build_anisotropic_rabi(&p, &cfg);
            let d = decompose(&pattern_matrix(&p), &cfg);
            let rec = reconstruct(&d);
            let shifted = rec
                .operator
                .sub(&OperatorMatrix::identity(cfg.dim()).scale_real(rec.identity_shift))
                .unwrap();
            let resid = shifted.sub(&h).unwrap().max_abs();
            assert!(
                resid < 1e-10 * h.max_abs().max(1.0),
                "k={k}: residual {resid:e}"
            );
            // the diagonal of (reconstruction - H) is constant and equals c
            let diff = rec.operator.sub(&h).unwrap();
            for i in 0..cfg.dim() {
                let di = diff.entries()[(i, i)].re;
                assert!((di - rec.identity_shift).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn zero_coupling_reconstruction_exact() {
        let cfg = HilbertConfig::new(6).unwrap();
        let p = AnisotropicRabiParams::new(1.0, 40.0, 0.0, 0.0).unwrap();
        let d = decompose(&pattern_matrix(&p), &cfg);
        let rec = reconstruct(&d);
        let h = build_anisotropic_rabi(&p, &cfg);
        let shifted = rec
            .operator
            .sub(&OperatorMatrix::identity(cfg.dim()).scale_real(rec.identity_shift))
            .unwrap();
        assert!(shifted.sub(&h).unwrap().max_abs() < 1e-13);
    }

    #[test]
    fn sigma_z_variant_fails_reconstruction() {
        let cfg = HilbertConfig::new(8).unwrap();
        let p = fig_sweep_params(0.5);
        let d = decompose(&pattern_matrix(&p), &cfg);
        let bad_ops = assemble_pattern_ops(d.vectors(), &sigma_z_variant_slots(&cfg));
        let mut acc = OperatorMatrix::zeros(cfg.dim());
        for (l, a) in d.lambdas().iter().zip(&bad_ops) {
            acc = acc
                .add(&a.adjoint().compose(a).unwrap().scale_real(*l))
                .unwrap();
        }
        let h = build_anisotropic_rabi(&p, &cfg);
        // even allowing an arbitrary diagonal shift the residual is large
        let diff = acc.sub(&h).unwrap();
        let shift = diff.entries()[(0, 0)].re;
        let shifted = diff
            .sub(&OperatorMatrix::identity(cfg.dim()).scale_real(shift))
            .unwrap();
        assert!(shifted.max_abs() > 1.0);
    }

    #[test]
    fn attribution_sums_to_totals() {
        let cfg = HilbertConfig::new(24).unwrap();
        let p = fig_sweep_params(0.9);
        let h = build_anisotropic_rabi(&p, &cfg);
        let d = decompose(&pattern_matrix(&p), &cfg);
        let c = d.identity_shift();
        let spec = diagonalize(&h, 4).unwrap();
        for i in 0..4 {
            let state = spec.eigenvector(i);
            let attr = attribute(&d, state).unwrap();
            let e_sum: f64 = attr.energies.iter().sum();
            let e_i = spec.eigenvalues()[i];
            assert!(
                (e_sum - (e_i + c)).abs() < 1e-9 * (e_i.abs() + 1.0),
                "state {i}: {e_sum} vs {e_i}+{c}"
            );
            let n_sum: f64 = attr.occupations.iter().sum();
            assert!((n_sum - attr.total_occupation).abs() < 1e-10 * (attr.total_occupation + 1.0));
        }
    }

    #[test]
    fn decoupled_ground_state_attribution() {
        // ground state at zero coupling is |↓, 0⟩: zero photon part
        let cfg = HilbertConfig::new(4).unwrap();
        let p = AnisotropicRabiParams::new(1.0, 20.0, 0.0, 0.0).unwrap();
        let d = decompose(&pattern_matrix(&p), &cfg);
        let state = cfg.basis_state(crate::hilbert::Spin::Down, 0);
        let attr = attribute(&d, &state).unwrap();
        assert_eq!(attr.total_occupation, 0.0);
        assert_eq!(attr.occupations, [0.0; 3]);
        let e_sum: f64 = attr.energies.iter().sum();
        assert!((e_sum - (-10.0 + d.identity_shift())).abs() < 1e-12);
    }

    #[test]
    fn attribution_rejects_unnormalized_state() {
        let cfg = HilbertConfig::new(3).unwrap();
        let p = fig_sweep_params(1.0);
        let d = decompose(&pattern_matrix(&p), &cfg);
        let state = cfg.basis_state(crate::hilbert::Spin::Up, 1) * Complex64::new(0.5, 0.0);
        assert!(matches!(
            attribute(&d, &state),
            Err(RabiError::NotNormalized { .. })
        ));
    }

    #[test]
    fn tracking_identity_on_identical_inputs() {
        let cfg = HilbertConfig::new(2).unwrap();
        let p = fig_sweep_params(0.7);
        let d = decompose(&pattern_matrix(&p), &cfg);
        let tracked = track_labels(&d, &d);
        assert_eq!(tracked.labeling().permutation, [0, 1, 2]);
        assert_eq!(tracked.lambdas(), d.lambdas());
    }

    #[test]
    fn tracking_follows_vectors_through_crossing() {
        // synthetic family with an engineered eigenvalue crossing:
        // diag(t, 1-t, 5) in a rotated frame; the t and 1-t branches cross
        // at t = 0.5 but their eigenvectors stay put.
        let rot = {
            let axis = Vector3::new(1.0, 2.0, 0.5).normalize();
            nalgebra::Rotation3::from_axis_angle(&nalgebra::Unit::new_normalize(axis), 0.9)
        };
        let family = |t: f64| {
            let d = Matrix3::from_diagonal(&Vector3::new(t, 1.0 - t, 5.0));
            PatternMatrix {
                m: rot.matrix() * d * rot.matrix().transpose(),
            }
        };
        let cfg = HilbertConfig::new(1).unwrap();
        let mut prev = decompose(&family(0.30), &cfg);
        let first_vectors = *prev.vectors();
        for step in 1..=8 {
            let t = 0.30 + 0.05 * step as f64;
            let next = decompose(&family(t), &cfg);
            prev = track_labels(&prev, &next);
        }
        // after the crossing, label 0 still follows the "t" branch
        assert!((prev.lambdas()[0] - 0.70).abs() < 1e-12);
        assert!((prev.lambdas()[1] - 0.30).abs() < 1e-12);
        for n in 0..3 {
            assert!(first_vectors[n].dot(&prev.vectors()[n]) > 0.99);
        }
    }

    #[test]
    fn sweep_adjacent_points_keep_identity_permutation() {
        let cfg = HilbertConfig::new(2).unwrap();
        let prev = decompose(&pattern_matrix(&fig_sweep_params(40.0)), &cfg);
        let next = decompose(&pattern_matrix(&fig_sweep_params(40.5)), &cfg);
        let tracked = track_labels(&prev, &next);
        assert_eq!(tracked.labeling().permutation, [0, 1, 2]);
        assert!(!tracked.labeling().ambiguous);
    }
}
