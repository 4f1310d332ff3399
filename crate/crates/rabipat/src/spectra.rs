//! Exact diagonalization, cutoff convergence, finite differences, and the
//! parameter-sweep engine.
//!
//! All Hamiltonians produced by the model builders are real symmetric in
//! the documented basis, so [`diagonalize`] takes a real-arithmetic fast
//! path whenever every entry has exactly zero imaginary part, falling back
//! to the complex Hermitian solver otherwise.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{RabiError, Result};
use crate::hilbert::{number, HilbertConfig, OperatorMatrix};
use crate::models::{
    build_anisotropic_rabi, build_dispersive, build_parametric_jc, build_squeezed_frame,
    AnisotropicRabiParams, ParametricJCParams,
};
use crate::patterns::{attribute, decompose, pattern_matrix, track_vectors};
use crate::phases;

/// Lowest part of a Hermitian spectrum with convergence metadata.
#[derive(Debug, Clone)]
pub struct SpectrumResult {
    eigenvalues: Vec<f64>,
    eigenvectors: Vec<DVector<Complex64>>,
    cutoff_used: usize,
    converged: bool,
    convergence_residual: f64,
}

impl SpectrumResult {
    /// Ascending eigenvalues (lowest `k_levels`).
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn eigenvector(&self, i: usize) -> &DVector<Complex64> {
        &self.eigenvectors[i]
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn ground_energy(&self) -> f64 {
        self.eigenvalues[0]
    }

    /// E₁ − E₀.
    pub fn gap(&self) -> f64 {
        self.eigenvalues[1] - self.eigenvalues[0]
    }

    /// Fock cutoff the result was computed at.
    pub fn cutoff_used(&self) -> usize {
        self.cutoff_used
    }

    pub fn converged(&self) -> bool {
        self.converged
    }

    /// |E₀(N) − E₀(N_prev)| from the last convergence step.
    pub fn convergence_residual(&self) -> f64 {
        self.convergence_residual
    }

    /// max |V†V − I| over the returned eigenvector block.
    pub fn orthonormality_residual(&self) -> f64 {
        let k = self.eigenvectors.len();
        let mut worst = 0.0f64;
        for i in 0..k {
            for j in i..k {
                let dot = self.eigenvectors[i].dotc(&self.eigenvectors[j]);
                let want = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((dot - Complex64::new(want, 0.0)).norm());
            }
        }
        worst
    }
}

/// Sector membership of each basis index under Π = σz(-1)^(a†a) in the
/// spin-major ordering; `true` marks the even sector.
fn parity_pattern(dim: usize) -> Option<Vec<bool>> {
    if dim < 4 || dim % 2 != 0 {
        return None;
    }
    let nf = dim / 2;
    Some(
        (0..dim)
            .map(|i| {
                let spin_up = i < nf;
                let m_even = (i % nf) % 2 == 0;
                spin_up == m_even
            })
            .collect(),
    )
}

/// True when every entry coupling the two parity sectors is exactly zero,
/// so the matrix block-diagonalizes without any approximation.
fn splits_by_parity(h: &OperatorMatrix, pattern: &[bool]) -> bool {
    let dim = h.dim();
    for i in 0..dim {
        for j in 0..dim {
            if pattern[i] != pattern[j] && h.entries()[(i, j)] != Complex64::new(0.0, 0.0) {
                return false;
            }
        }
    }
    true
}

fn real_block_eigen(
    m: &DMatrix<f64>,
    indices: &[usize],
) -> (Vec<f64>, Vec<DVector<Complex64>>) {
    let n = indices.len();
    let block = DMatrix::<f64>::from_fn(n, n, |i, j| m[(indices[i], indices[j])]);
    let eig = block.symmetric_eigen();
    let dim = m.nrows();
    let vecs: Vec<DVector<Complex64>> = (0..n)
        .map(|c| {
            let mut v = DVector::<Complex64>::zeros(dim);
            for (row, &idx) in indices.iter().enumerate() {
                v[idx] = Complex64::new(eig.eigenvectors[(row, c)], 0.0);
            }
            v
        })
        .collect();
    (eig.eigenvalues.iter().cloned().collect(), vecs)
}

/// Lowest `k_levels` eigenpairs of a Hermitian operator, ascending.
///
/// Real symmetric matrices take a real-arithmetic path; when the matrix
/// additionally block-diagonalizes exactly over the two parity sectors
/// (every model builder here does), the sectors are solved separately,
/// which quarters the cubic cost and keeps near-degenerate doublet
/// states parity-pure.
pub fn diagonalize(h: &OperatorMatrix, k_levels: usize) -> Result<SpectrumResult> {
    if !h.is_hermitian() {
        let asym = h.max_asymmetry();
        if asym != 0.0 {
            return Err(RabiError::NonHermitian {
                max_asymmetry: asym,
            });
        }
    }
    let dim = h.dim();
    let k = k_levels.min(dim);

    let (values, vectors) = if h.is_real() {
        let m = DMatrix::<f64>::from_fn(dim, dim, |i, j| h.entries()[(i, j)].re);
        let split = parity_pattern(dim).filter(|p| splits_by_parity(h, p));
        if let Some(pattern) = split {
            let even: Vec<usize> = (0..dim).filter(|&i| pattern[i]).collect();
            let odd: Vec<usize> = (0..dim).filter(|&i| !pattern[i]).collect();
            let (mut vals, mut vecs) = real_block_eigen(&m, &even);
            let (vals_o, vecs_o) = real_block_eigen(&m, &odd);
            vals.extend(vals_o);
            vecs.extend(vecs_o);
            (vals, vecs)
        } else {
            let eig = m.symmetric_eigen();
            let vecs: Vec<DVector<Complex64>> = (0..dim)
                .map(|c| eig.eigenvectors.column(c).map(|x| Complex64::new(x, 0.0)))
                .collect();
            (eig.eigenvalues.iter().cloned().collect::<Vec<f64>>(), vecs)
        }
    } else {
        let eig = h.entries().clone().symmetric_eigen();
        let vecs: Vec<DVector<Complex64>> = (0..dim)
            .map(|c| eig.eigenvectors.column(c).into_owned())
            .collect();
        (eig.eigenvalues.iter().cloned().collect::<Vec<f64>>(), vecs)
    };

    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].partial_cmp(&values[b]).expect("finite eigenvalues"));

    let eigenvalues: Vec<f64> = order.iter().take(k).map(|&i| values[i]).collect();
    let eigenvectors: Vec<DVector<Complex64>> =
        order.iter().take(k).map(|&i| vectors[i].clone()).collect();

    Ok(SpectrumResult {
        eigenvalues,
        eigenvectors,
        cutoff_used: dim / 2 - 1,
        converged: true,
        convergence_residual: 0.0,
    })
}

/// Stopping rule for the Fock-cutoff doubling ladder.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct CutoffPolicy {
    /// Ground-energy tolerance in units of the caller's energy scale.
    pub tol_e: f64,
    /// Relative tolerance on the ground-state occupation.
    pub tol_n: f64,
    pub n_start: usize,
    pub n_max: usize,
}

impl Default for CutoffPolicy {
    fn default() -> Self {
        Self {
            tol_e: 1e-8,
            tol_n: 1e-6,
            n_start: 32,
            n_max: 512,
        }
    }
}

impl CutoffPolicy {
    pub fn validate(&self) -> Result<()> {
        if self.n_start < 1 || self.n_max < self.n_start {
            return Err(RabiError::InvalidConfig(
                "cutoff policy requires 1 <= n_start <= n_max".into(),
            ));
        }
        if !(self.tol_e > 0.0) || !(self.tol_n > 0.0) {
            return Err(RabiError::InvalidConfig(
                "cutoff tolerances must be positive".into(),
            ));
        }
        Ok(())
    }
}

fn ground_occupation(spec: &SpectrumResult, cfg: &HilbertConfig) -> Result<f64> {
    Ok(number(cfg).expectation(spec.eigenvector(0))?.re)
}

/// Double the Fock cutoff until the ground energy moves by less than
/// `tol_e * scale` and the ground occupation moves by less than `tol_n`
/// relative, then return the result at the final cutoff. Hitting `n_max`
/// flags the result instead of erroring.
pub fn converge_cutoff<F>(
    build: F,
    scale: f64,
    k_levels: usize,
    policy: &CutoffPolicy,
) -> Result<SpectrumResult>
where
    F: Fn(&HilbertConfig) -> Result<OperatorMatrix>,
{
    policy.validate()?;
    let k = k_levels.max(1);

    let mut n = policy.n_start;
    let mut cfg = HilbertConfig::new(n)?;
    let mut prev = diagonalize(&build(&cfg)?, k)?;
    let mut prev_occ = ground_occupation(&prev, &cfg)?;

    loop {
        let n_next = n * 2;
        if n_next > policy.n_max {
            prev.cutoff_used = n;
            prev.converged = false;
            return Ok(prev);
        }
        cfg = HilbertConfig::new(n_next)?;
        let mut cur = diagonalize(&build(&cfg)?, k)?;
        let cur_occ = ground_occupation(&cur, &cfg)?;

        let de = (cur.ground_energy() - prev.ground_energy()).abs();
        let dn = (cur_occ - prev_occ).abs() / (cur_occ.abs() + 1.0);
        cur.cutoff_used = n_next;
        cur.convergence_residual = de;
        if de < policy.tol_e * scale && dn < policy.tol_n {
            cur.converged = true;
            return Ok(cur);
        }
        prev = cur;
        prev_occ = cur_occ;
        n = n_next;
    }
}

/// Central-difference second derivative, `(f(x0+h) − 2 f(x0) + f(x0−h))/h²`.
pub fn second_derivative<F>(f: F, x0: f64, h: f64) -> f64
where
    F: Fn(f64) -> f64,
{
    (f(x0 + h) - 2.0 * f(x0) + f(x0 - h)) / (h * h)
}

/// One-step Richardson refinement of the central second difference.
pub fn second_derivative_refined<F>(f: F, x0: f64, h: f64) -> f64
where
    F: Fn(f64) -> f64,
{
    let coarse = second_derivative(&f, x0, h);
    let fine = second_derivative(&f, x0, h / 2.0);
    (4.0 * fine - coarse) / 3.0
}

/// Second derivative of a uniformly sampled curve at interior index `i`;
/// `None` at the endpoints.
pub fn sampled_second_derivative(values: &[f64], i: usize, h: f64) -> Option<f64> {
    if i == 0 || i + 1 >= values.len() {
        return None;
    }
    Some((values[i + 1] - 2.0 * values[i] + values[i - 1]) / (h * h))
}

/// Model selector for sweeps.
#[derive(Debug, Clone, PartialEq)]
pub enum SweepModel {
    Anisotropic(AnisotropicRabiParams),
    ParametricJc(ParametricJCParams),
    SqueezedFrame(ParametricJCParams),
    Dispersive(ParametricJCParams),
}

impl SweepModel {
    fn is_parametric(&self) -> bool {
        !matches!(self, SweepModel::Anisotropic(_))
    }
}

/// Dimensionless sweep coordinate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AxisCoordinate {
    /// k/k_c at fixed ξ₁ (anisotropic model); k_c solves ξ_c = 1.
    KOverKc,
    /// ξ₁/ξ₁c at fixed coupling ratio k (anisotropic model).
    Xi1OverXi1c { k: f64 },
    /// g/g₀ at fixed squeeze parameter (parametric family).
    GOverG0,
    /// Bare coupling g in energy units (parametric family).
    BareG,
    /// Raw squeeze parameter r (parametric family).
    SqueezeR,
}

impl AxisCoordinate {
    pub fn label(&self) -> &'static str {
        match self {
            AxisCoordinate::KOverKc => "k_over_kc",
            AxisCoordinate::Xi1OverXi1c { .. } => "xi1_over_xi1c",
            AxisCoordinate::GOverG0 => "g_over_g0",
            AxisCoordinate::BareG => "g",
            AxisCoordinate::SqueezeR => "r",
        }
    }
}

/// One swept axis: `points` values evenly spaced over `[min, max]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepAxis {
    pub coordinate: AxisCoordinate,
    pub min: f64,
    pub max: f64,
    pub points: usize,
}

impl SweepAxis {
    pub fn validate(&self) -> Result<()> {
        if !self.min.is_finite() || !self.max.is_finite() || self.max < self.min {
            return Err(RabiError::InvalidConfig("axis range must be finite".into()));
        }
        if self.points == 0 {
            return Err(RabiError::InvalidConfig("axis needs at least one point".into()));
        }
        if self.points == 1 && self.max != self.min {
            return Err(RabiError::InvalidConfig(
                "single-point axis requires min == max".into(),
            ));
        }
        Ok(())
    }

    pub fn value(&self, i: usize) -> f64 {
        if self.points == 1 {
            self.min
        } else {
            self.min + (self.max - self.min) * i as f64 / (self.points - 1) as f64
        }
    }

    pub fn step(&self) -> f64 {
        if self.points == 1 {
            0.0
        } else {
            (self.max - self.min) / (self.points - 1) as f64
        }
    }
}

/// Observables requested per sweep point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ObservableSet {
    /// Number of levels to report (energies and occupations).
    pub levels: usize,
    /// Pattern attribution per reported level (anisotropic model only).
    pub patterns: bool,
    /// Second derivatives of all energy-like columns along the primary axis.
    pub second_derivatives: bool,
}

impl Default for ObservableSet {
    fn default() -> Self {
        Self {
            levels: 4,
            patterns: false,
            second_derivatives: false,
        }
    }
}

/// Full description of a sweep.
#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub model: SweepModel,
    pub primary: SweepAxis,
    pub secondary: Option<SweepAxis>,
    pub observables: ObservableSet,
    pub cutoff: CutoffPolicy,
    /// Gap values are floored here before taking log₁₀.
    pub gap_floor: f64,
    /// Worker threads for point evaluation; output is identical for any
    /// thread count.
    pub threads: usize,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        self.primary.validate()?;
        if let Some(sec) = &self.secondary {
            sec.validate()?;
            if sec.coordinate.label() == self.primary.coordinate.label() {
                return Err(RabiError::InvalidConfig("sweep axes must be distinct".into()));
            }
            if self.observables.patterns {
                return Err(RabiError::InvalidConfig(
                    "pattern attribution requires a single-axis sweep".into(),
                ));
            }
        }
        self.cutoff.validate()?;
        if self.observables.levels < 1 {
            return Err(RabiError::InvalidConfig("levels must be at least 1".into()));
        }
        if !(self.gap_floor > 0.0) {
            return Err(RabiError::InvalidConfig("gap floor must be positive".into()));
        }
        let axis_fits = |coord: &AxisCoordinate| match (&self.model, coord) {
            (SweepModel::Anisotropic(_), AxisCoordinate::KOverKc)
            | (SweepModel::Anisotropic(_), AxisCoordinate::Xi1OverXi1c { .. }) => true,
            (m, AxisCoordinate::GOverG0)
            | (m, AxisCoordinate::BareG)
            | (m, AxisCoordinate::SqueezeR) => m.is_parametric(),
            _ => false,
        };
        if !axis_fits(&self.primary.coordinate) {
            return Err(RabiError::InvalidConfig(
                "axis coordinate does not apply to the selected model".into(),
            ));
        }
        if let Some(sec) = &self.secondary {
            if !axis_fits(&sec.coordinate) {
                return Err(RabiError::InvalidConfig(
                    "secondary axis does not apply to the selected model".into(),
                ));
            }
        }
        if self.observables.patterns && !matches!(self.model, SweepModel::Anisotropic(_)) {
            return Err(RabiError::InvalidConfig(
                "pattern attribution is defined for the anisotropic model only".into(),
            ));
        }
        Ok(())
    }
}

/// Concrete parameters in effect at one grid point.
#[derive(Debug, Clone, PartialEq)]
pub enum ResolvedParams {
    Anisotropic {
        params: AnisotropicRabiParams,
        /// Coupling ratio k = ξ₂/ξ₁ at this point.
        k: f64,
        /// Dimensionless coupling ξ_c.
        xi_c: f64,
    },
    Parametric {
        params: ParametricJCParams,
        /// Dimensionless coupling g/g₀.
        g_over_g0: f64,
    },
}

/// Pattern observables at one grid point, labels already tracked along
/// the primary axis.
#[derive(Debug, Clone)]
pub struct PatternObservables {
    pub lambdas: [f64; 3],
    pub identity_shift: f64,
    /// Per reported level: the three pattern energy contributions.
    pub energy_shares: Vec<[f64; 3]>,
    /// Per reported level: the three pattern photon-number contributions.
    pub occupation_shares: Vec<[f64; 3]>,
    pub ambiguous: bool,
}

/// One sweep row.
#[derive(Debug, Clone)]
pub struct SweepPoint {
    pub primary: f64,
    pub secondary: Option<f64>,
    pub resolved: ResolvedParams,
    pub energies: Vec<f64>,
    pub occupations: Vec<f64>,
    pub gap: f64,
    pub log10_gap: f64,
    pub cutoff_used: usize,
    pub converged: bool,
    pub convergence_residual: f64,
    pub pattern: Option<PatternObservables>,
    /// d²Eᵢ/dx² along the primary axis (NaN at endpoints), when requested.
    pub d2_energies: Vec<f64>,
    /// d²E_λₙ/dx² per level, when patterns and derivatives are requested.
    pub d2_energy_shares: Vec<[f64; 3]>,
}

/// Sweep output: rows in lexicographic grid order (primary-major).
#[derive(Debug, Clone)]
pub struct SweepTable {
    pub points: Vec<SweepPoint>,
    pub primary_label: &'static str,
    pub secondary_label: Option<&'static str>,
    pub any_unconverged: bool,
}

fn resolve_anisotropic(
    base: &AnisotropicRabiParams,
    coord: &AxisCoordinate,
    t: f64,
) -> Result<ResolvedParams> {
    match coord {
        AxisCoordinate::KOverKc => {
            let scale = (base.omega0() * base.omega_q()).sqrt();
            if base.xi1() <= 0.0 {
                return Err(RabiError::InvalidConfig(
                    "k/k_c sweep requires xi1 > 0".into(),
                ));
            }
            let k_c = scale / base.xi1() - 1.0;
            if k_c <= 0.0 {
                return Err(RabiError::InvalidConfig(
                    "k/k_c sweep requires xi1 below the critical coupling".into(),
                ));
            }
            let k = t * k_c;
            let params =
                AnisotropicRabiParams::new(base.omega0(), base.omega_q(), base.xi1(), k * base.xi1())?;
            let xi_c = (params.xi1() + params.xi2()) / scale;
            Ok(ResolvedParams::Anisotropic { params, k, xi_c })
        }
        AxisCoordinate::Xi1OverXi1c { k } => {
            if *k < 0.0 {
                return Err(RabiError::InvalidConfig("coupling ratio k must be >= 0".into()));
            }
            let scale = (base.omega0() * base.omega_q()).sqrt();
            let xi1c = scale / (1.0 + k);
            let xi1 = t * xi1c;
            let params = AnisotropicRabiParams::new(base.omega0(), base.omega_q(), xi1, k * xi1)?;
            let xi_c = (params.xi1() + params.xi2()) / scale;
            Ok(ResolvedParams::Anisotropic {
                params,
                k: *k,
                xi_c,
            })
        }
        _ => Err(RabiError::InvalidConfig(
            "axis coordinate does not apply to the anisotropic model".into(),
        )),
    }
}

fn resolve_parametric(
    base: &ParametricJCParams,
    coord: &AxisCoordinate,
    t: f64,
) -> Result<ResolvedParams> {
    match coord {
        AxisCoordinate::GOverG0 => {
            let g0 = phases::g_critical(base);
            let params = base.with_g(t * g0)?;
            Ok(ResolvedParams::Parametric {
                params,
                g_over_g0: t,
            })
        }
        AxisCoordinate::BareG => {
            let params = base.with_g(t)?;
            let g0 = phases::g_critical(&params);
            Ok(ResolvedParams::Parametric {
                params,
                g_over_g0: t / g0,
            })
        }
        AxisCoordinate::SqueezeR => {
            let params = base.with_r(t)?;
            let g0 = phases::g_critical(&params);
            Ok(ResolvedParams::Parametric {
                params,
                g_over_g0: params.g() / g0,
            })
        }
        _ => Err(RabiError::InvalidConfig(
            "axis coordinate does not apply to the parametric model".into(),
        )),
    }
}

fn resolve_point(spec: &SweepSpec, t_primary: f64, t_secondary: Option<f64>) -> Result<ResolvedParams> {
    match &spec.model {
        SweepModel::Anisotropic(base) => {
            // two anisotropic axes would fight over ξ₁/ξ₂; validate() keeps
            // anisotropic sweeps single-axis in practice
            let mut resolved = resolve_anisotropic(base, &spec.primary.coordinate, t_primary)?;
            if let (Some(sec), Some(ts)) = (&spec.secondary, t_secondary) {
                let ResolvedParams::Anisotropic { params, .. } = &resolved else {
                    unreachable!()
                };
                resolved = resolve_anisotropic(params, &sec.coordinate, ts)?;
            }
            Ok(resolved)
        }
        SweepModel::ParametricJc(base)
        | SweepModel::SqueezedFrame(base)
        | SweepModel::Dispersive(base) => {
            let mut params = *base;
            // apply the r axis first so a g/g₀ coordinate sees the final g₀
            if let (Some(sec), Some(ts)) = (&spec.secondary, t_secondary) {
                if matches!(sec.coordinate, AxisCoordinate::SqueezeR) {
                    params = params.with_r(ts)?;
                } else {
                    let ResolvedParams::Parametric { params: p, .. } =
                        resolve_parametric(&params, &sec.coordinate, ts)?
                    else {
                        unreachable!()
                    };
                    params = p;
                }
            }
            resolve_parametric(&params, &spec.primary.coordinate, t_primary)
        }
    }
}

fn build_resolved(model: &SweepModel, resolved: &ResolvedParams, cfg: &HilbertConfig) -> OperatorMatrix {
    match (model, resolved) {
        (SweepModel::Anisotropic(_), ResolvedParams::Anisotropic { params, .. }) => {
            build_anisotropic_rabi(params, cfg)
        }
        (SweepModel::ParametricJc(_), ResolvedParams::Parametric { params, .. }) => {
            build_parametric_jc(params, cfg)
        }
        (SweepModel::SqueezedFrame(_), ResolvedParams::Parametric { params, .. }) => {
            build_squeezed_frame(params, cfg)
        }
        (SweepModel::Dispersive(_), ResolvedParams::Parametric { params, .. }) => {
            build_dispersive(params, cfg)
        }
        _ => unreachable!("resolution matches the model family"),
    }
}

fn energy_scale(model: &SweepModel) -> f64 {
    match model {
        SweepModel::Anisotropic(p) => p.omega0(),
        SweepModel::ParametricJc(p) | SweepModel::SqueezedFrame(p) | SweepModel::Dispersive(p) => {
            p.delta_c()
        }
    }
}

/// Raw (untracked) per-point evaluation result.
struct RawPoint {
    point: SweepPoint,
    /// Ascending-order pattern data kept for the tracking pass.
    raw_pattern: Option<RawPattern>,
}

struct RawPattern {
    lambdas: [f64; 3],
    vectors: [nalgebra::Vector3<f64>; 3],
    identity_shift: f64,
    energy_shares: Vec<[f64; 3]>,
    occupation_shares: Vec<[f64; 3]>,
}

fn evaluate_point(spec: &SweepSpec, t_primary: f64, t_secondary: Option<f64>) -> Result<RawPoint> {
    let resolved = resolve_point(spec, t_primary, t_secondary)?;
    let levels = spec.observables.levels.max(2);
    let scale = energy_scale(&spec.model);

    let spectrum = converge_cutoff(
        |cfg| Ok(build_resolved(&spec.model, &resolved, cfg)),
        scale,
        levels,
        &spec.cutoff,
    )?;

    let cfg = HilbertConfig::new(spectrum.cutoff_used())?;
    let n_op = number(&cfg);
    let energies: Vec<f64> = spectrum.eigenvalues().to_vec();
    let occupations: Vec<f64> = (0..spectrum.len())
        .map(|i| n_op.expectation(spectrum.eigenvector(i)).map(|z| z.re))
        .collect::<Result<_>>()?;

    let gap = spectrum.gap();
    let log10_gap = gap.max(spec.gap_floor).log10();

    let raw_pattern = if spec.observables.patterns {
        let ResolvedParams::Anisotropic { params, .. } = &resolved else {
            unreachable!("validated: patterns imply the anisotropic model")
        };
        let dec = decompose(&pattern_matrix(params), &cfg);
        let mut energy_shares = Vec::with_capacity(spectrum.len());
        let mut occupation_shares = Vec::with_capacity(spectrum.len());
        for i in 0..spectrum.len() {
            let attr = attribute(&dec, spectrum.eigenvector(i))?;
            energy_shares.push(attr.energies);
            occupation_shares.push(attr.occupations);
        }
        Some(RawPattern {
            lambdas: *dec.lambdas(),
            vectors: *dec.vectors(),
            identity_shift: dec.identity_shift(),
            energy_shares,
            occupation_shares,
        })
    } else {
        None
    };

    Ok(RawPoint {
        point: SweepPoint {
            primary: t_primary,
            secondary: t_secondary,
            resolved,
            energies,
            occupations,
            gap,
            log10_gap,
            cutoff_used: spectrum.cutoff_used(),
            converged: spectrum.converged(),
            convergence_residual: spectrum.convergence_residual(),
            pattern: None,
            d2_energies: Vec::new(),
            d2_energy_shares: Vec::new(),
        },
        raw_pattern,
    })
}

/// Run a sweep. Points are evaluated independently (optionally on worker
/// threads); rows come back in lexicographic grid order regardless of the
/// execution schedule, pattern labels are tracked sequentially along the
/// primary axis, and per-point convergence failures are recorded in-row
/// without aborting the sweep.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepTable> {
    spec.validate()?;

    let grid: Vec<(f64, Option<f64>)> = match &spec.secondary {
        None => (0..spec.primary.points)
            .map(|i| (spec.primary.value(i), None))
            .collect(),
        Some(sec) => {
            let mut g = Vec::with_capacity(spec.primary.points * sec.points);
            for i in 0..spec.primary.points {
                for j in 0..sec.points {
                    g.push((spec.primary.value(i), Some(sec.value(j))));
                }
            }
            g
        }
    };

    let threads = spec.threads.max(1).min(grid.len().max(1));
    let mut raw: Vec<Option<Result<RawPoint>>> = (0..grid.len()).map(|_| None).collect();

    if threads <= 1 {
        for (slot, (tp, ts)) in raw.iter_mut().zip(&grid) {
            *slot = Some(evaluate_point(spec, *tp, *ts));
        }
    } else {
        let chunk = grid.len().div_ceil(threads);
        let results: Vec<Vec<(usize, Result<RawPoint>)>> = std::thread::scope(|scope| {
            let mut handles = Vec::new();
            for w in 0..threads {
                let lo = w * chunk;
                let hi = ((w + 1) * chunk).min(grid.len());
                if lo >= hi {
                    break;
                }
                let grid = &grid;
                handles.push(scope.spawn(move || {
                    (lo..hi)
                        .map(|idx| {
                            let (tp, ts) = grid[idx];
                            (idx, evaluate_point(spec, tp, ts))
                        })
                        .collect::<Vec<_>>()
                }));
            }
            handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
        });
        for part in results {
            for (idx, res) in part {
                raw[idx] = Some(res);
            }
        }
    }

    let mut points: Vec<SweepPoint> = Vec::with_capacity(grid.len());
    let mut raw_patterns: Vec<Option<RawPattern>> = Vec::with_capacity(grid.len());
    for slot in raw {
        let rp = slot.expect("every grid point evaluated")?;
        points.push(rp.point);
        raw_patterns.push(rp.raw_pattern);
    }

    // sequential label-tracking pass along the primary axis
    if spec.observables.patterns {
        let mut prev_vectors: Option<[nalgebra::Vector3<f64>; 3]> = None;
        for (point, raw_pattern) in points.iter_mut().zip(raw_patterns.into_iter()) {
            let rp = raw_pattern.expect("patterns requested");
            // each step permutes the current ascending-order triples to
            // line up with the previous *tracked* frame, so labels stay
            // attached to the same physical branch across the sweep
            let (perm, ambiguous, vectors) = match prev_vectors {
                None => ([0, 1, 2], false, rp.vectors),
                Some(prev) => {
                    let outcome = track_vectors(&prev, &rp.vectors);
                    let mut vecs = [nalgebra::Vector3::zeros(); 3];
                    for n in 0..3 {
                        vecs[n] = rp.vectors[outcome.permutation[n]] * outcome.signs[n];
                    }
                    (outcome.permutation, outcome.ambiguous, vecs)
                }
            };
            let mut lambdas = [0.0; 3];
            let mut energy_shares = vec![[0.0; 3]; rp.energy_shares.len()];
            let mut occupation_shares = vec![[0.0; 3]; rp.occupation_shares.len()];
            for n in 0..3 {
                lambdas[n] = rp.lambdas[perm[n]];
                for i in 0..rp.energy_shares.len() {
                    energy_shares[i][n] = rp.energy_shares[i][perm[n]];
                    occupation_shares[i][n] = rp.occupation_shares[i][perm[n]];
                }
            }
            point.pattern = Some(PatternObservables {
                lambdas,
                identity_shift: rp.identity_shift,
                energy_shares,
                occupation_shares,
                ambiguous,
            });
            prev_vectors = Some(vectors);
        }
    }

    // finite-difference post-pass along the primary axis
    if spec.observables.second_derivatives && spec.secondary.is_none() {
        let h = spec.primary.step();
        let n_levels = points.first().map_or(0, |p| p.energies.len());
        if h > 0.0 {
            for level in 0..n_levels {
                let curve: Vec<f64> = points.iter().map(|p| p.energies[level]).collect();
                for (i, p) in points.iter_mut().enumerate() {
                    if p.d2_energies.len() <= level {
                        p.d2_energies.resize(level + 1, f64::NAN);
                    }
                    p.d2_energies[level] =
                        sampled_second_derivative(&curve, i, h).unwrap_or(f64::NAN);
                }
            }
            if spec.observables.patterns {
                for level in 0..n_levels {
                    for n in 0..3 {
                        let curve: Vec<f64> = points
                            .iter()
                            .map(|p| p.pattern.as_ref().expect("tracked").energy_shares[level][n])
                            .collect();
                        for (i, p) in points.iter_mut().enumerate() {
                            if p.d2_energy_shares.len() <= level {
                                p.d2_energy_shares.resize(level + 1, [f64::NAN; 3]);
                            }
                            p.d2_energy_shares[level][n] =
                                sampled_second_derivative(&curve, i, h).unwrap_or(f64::NAN);
                        }
                    }
                }
            }
        }
    }

    let any_unconverged = points.iter().any(|p| !p.converged);
    Ok(SweepTable {
        points,
        primary_label: spec.primary.coordinate.label(),
        secondary_label: spec.secondary.as_ref().map(|a| a.coordinate.label()),
        any_unconverged,
    })
}
