//! Hamiltonian builders.
//!
//! Four models are covered:
//!
//! * the anisotropic Rabi model
//!   `H = ω₀ a†a + (Ω/2)σz − ξ₁(aσ₊ + a†σ₋) − ξ₂(aσ₋ + a†σ₊)`,
//! * the parametrically driven Jaynes-Cummings model in the frame rotating
//!   at half the drive frequency,
//!   `H = δc a†a + (δq/2)σz − (η/2)(a†² + a²) + g(a†σ₋ + aσ₊)`,
//! * its squeezed-frame form, an effective anisotropic Rabi model with
//!   oscillator frequency `δc·sech(2r)` and couplings `g₁ = g·cosh r`,
//!   `g₂ = g·sinh r`,
//! * the dispersive effective Hamiltonian obtained at second order in the
//!   couplings, valid for `δc·sech(2r) ≪ δq`.
//!
//! The squeezed-frame and dispersive builders carry the constant
//! `(δc/2)(sech 2r − 1)` produced by the frame transformation, so their
//! spectra agree with the lab-frame model without any offset bookkeeping
//! (see `errata::FRAME_VACUUM_SHIFT`).

use nalgebra::{DMatrix, Matrix2};
use num_complex::Complex64;

use crate::error::{RabiError, Result};
use crate::hilbert::{
    fock_annihilation, fock_annihilation_squared, fock_number, number, spin_fock_product,
    spin_ops, HilbertConfig, OperatorMatrix,
};

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn sigma_z_2() -> Matrix2<Complex64> {
    Matrix2::new(c(1.0), c(0.0), c(0.0), c(-1.0))
}

fn sigma_plus_2() -> Matrix2<Complex64> {
    Matrix2::new(c(0.0), c(1.0), c(0.0), c(0.0))
}

fn sigma_minus_2() -> Matrix2<Complex64> {
    Matrix2::new(c(0.0), c(0.0), c(1.0), c(0.0))
}

fn identity_2() -> Matrix2<Complex64> {
    Matrix2::new(c(1.0), c(0.0), c(0.0), c(1.0))
}

fn down_projector_2() -> Matrix2<Complex64> {
    Matrix2::new(c(0.0), c(0.0), c(0.0), c(1.0))
}

/// `a σ₊ + a† σ₋`, assembled without dense products.
pub(crate) fn rotating_coupling(cfg: &HilbertConfig) -> OperatorMatrix {
    spin_fock_product(&sigma_plus_2(), &fock_annihilation(cfg.fock_dim())).plus_adjoint()
}

/// `a σ₋ + a† σ₊`.
pub(crate) fn counter_rotating_coupling(cfg: &HilbertConfig) -> OperatorMatrix {
    spin_fock_product(&sigma_minus_2(), &fock_annihilation(cfg.fock_dim())).plus_adjoint()
}

/// `a² + a†²`.
fn two_photon_term(cfg: &HilbertConfig) -> OperatorMatrix {
    spin_fock_product(&identity_2(), &fock_annihilation_squared(cfg.fock_dim())).plus_adjoint()
}

pub(crate) fn sigma_z_term(cfg: &HilbertConfig) -> OperatorMatrix {
    let id = DMatrix::<Complex64>::identity(cfg.fock_dim(), cfg.fock_dim());
    spin_fock_product(&sigma_z_2(), &id)
}

/// Parameters of the anisotropic Rabi model. `omega0` is the oscillator
/// frequency and sets the energy scale, `omega_q` the qubit transition
/// frequency, `xi1`/`xi2` the rotating- and counter-rotating couplings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnisotropicRabiParams {
    omega0: f64,
    omega_q: f64,
    xi1: f64,
    xi2: f64,
}

impl AnisotropicRabiParams {
    pub fn new(omega0: f64, omega_q: f64, xi1: f64, xi2: f64) -> Result<Self> {
        if !(omega0 > 0.0) || !omega0.is_finite() {
            return Err(RabiError::InvalidConfig("omega0 must be positive".into()));
        }
        if !(omega_q > 0.0) || !omega_q.is_finite() {
            return Err(RabiError::InvalidConfig("omega_q must be positive".into()));
        }
        if xi1 < 0.0 || xi2 < 0.0 || !xi1.is_finite() || !xi2.is_finite() {
            return Err(RabiError::InvalidConfig(
                "coupling strengths must be nonnegative".into(),
            ));
        }
        Ok(Self {
            omega0,
            omega_q,
            xi1,
            xi2,
        })
    }

    pub fn omega0(&self) -> f64 {
        self.omega0
    }

    pub fn omega_q(&self) -> f64 {
        self.omega_q
    }

    pub fn xi1(&self) -> f64 {
        self.xi1
    }

    pub fn xi2(&self) -> f64 {
        self.xi2
    }

    /// Coupling ratio k = ξ₂/ξ₁, when defined.
    pub fn k(&self) -> Option<f64> {
        if self.xi1 != 0.0 {
            Some(self.xi2 / self.xi1)
        } else {
            None
        }
    }
}

/// Parameters of the parametrically driven Jaynes-Cummings model.
/// `delta_c`/`delta_q` are the cavity and qubit detunings from half the
/// drive frequency, `g` the bare coupling. The drive is specified either
/// by its amplitude η or by the squeeze parameter r; the two are tied by
/// `tanh 2r = η/δc` and both are stored.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParametricJCParams {
    delta_c: f64,
    delta_q: f64,
    g: f64,
    eta: f64,
    r: f64,
}

impl ParametricJCParams {
    /// Build from the drive amplitude η; requires |η| < δc.
    pub fn from_eta(delta_c: f64, delta_q: f64, g: f64, eta: f64) -> Result<Self> {
        Self::validate_base(delta_c, delta_q, g)?;
        if !(eta.abs() < delta_c) || !eta.is_finite() {
            return Err(RabiError::InvalidConfig(
                "drive amplitude must satisfy |eta| < delta_c".into(),
            ));
        }
        let r = 0.5 * (eta / delta_c).atanh();
        Ok(Self {
            delta_c,
            delta_q,
            g,
            eta,
            r,
        })
    }

    /// Build from the squeeze parameter r; η is derived as δc·tanh 2r.
    pub fn from_squeeze(delta_c: f64, delta_q: f64, g: f64, r: f64) -> Result<Self> {
        Self::validate_base(delta_c, delta_q, g)?;
        if !r.is_finite() {
            return Err(RabiError::InvalidConfig("squeeze parameter must be finite".into()));
        }
        let eta = delta_c * (2.0 * r).tanh();
        Ok(Self {
            delta_c,
            delta_q,
            g,
            eta,
            r,
        })
    }

    fn validate_base(delta_c: f64, delta_q: f64, g: f64) -> Result<()> {
        if !(delta_c > 0.0) || !delta_c.is_finite() {
            return Err(RabiError::InvalidConfig("delta_c must be positive".into()));
        }
        if !(delta_q > 0.0) || !delta_q.is_finite() {
            return Err(RabiError::InvalidConfig("delta_q must be positive".into()));
        }
        if g < 0.0 || !g.is_finite() {
            return Err(RabiError::InvalidConfig("g must be nonnegative".into()));
        }
        Ok(())
    }

    pub fn delta_c(&self) -> f64 {
        self.delta_c
    }

    pub fn delta_q(&self) -> f64 {
        self.delta_q
    }

    pub fn g(&self) -> f64 {
        self.g
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    /// Effective oscillator frequency in the squeezed frame, δc·sech 2r.
    pub fn effective_frequency(&self) -> f64 {
        self.delta_c / (2.0 * self.r).cosh()
    }

    /// Copy with a different bare coupling.
    pub fn with_g(&self, g: f64) -> Result<Self> {
        Self::from_squeeze(self.delta_c, self.delta_q, g, self.r)
    }

    /// Copy with a different squeeze parameter.
    pub fn with_r(&self, r: f64) -> Result<Self> {
        Self::from_squeeze(self.delta_c, self.delta_q, self.g, r)
    }
}

/// Rotating- and counter-rotating couplings induced by the squeezing
/// transformation: `(g₁, g₂) = (g·cosh r, g·sinh r)`.
///
/// This convention is fixed by requiring that the squeezed-frame spectrum
/// reproduce the lab-frame spectrum (see `errata::SQUEEZE_COUPLINGS`); it
/// also makes `g₁ + g₂ = g·eʳ`, consistent with the critical coupling
/// `g₀ = √(δc sech(2r)·δq)/eʳ`.
pub fn squeeze_couplings(p: &ParametricJCParams) -> (f64, f64) {
    (p.g * p.r.cosh(), p.g * p.r.sinh())
}

/// Constant energy shift produced by the squeezing transformation,
/// `(δc/2)(sech 2r − 1)`.
pub fn squeeze_vacuum_shift(p: &ParametricJCParams) -> f64 {
    0.5 * (p.effective_frequency() - p.delta_c)
}

/// `H = ω₀ a†a + (Ω/2)σz − ξ₁(aσ₊ + a†σ₋) − ξ₂(aσ₋ + a†σ₊)`.
pub fn build_anisotropic_rabi(p: &AnisotropicRabiParams, cfg: &HilbertConfig) -> OperatorMatrix {
    let mut h = number(cfg).scale_real(p.omega0);
    h.add_assign_scaled(&sigma_z_term(cfg), 0.5 * p.omega_q)
        .expect("matched dims");
    h.add_assign_scaled(&rotating_coupling(cfg), -p.xi1)
        .expect("matched dims");
    h.add_assign_scaled(&counter_rotating_coupling(cfg), -p.xi2)
        .expect("matched dims");
    debug_assert!(h.is_hermitian());
    h
}

/// `H = δc a†a + (δq/2)σz − (η/2)(a†² + a²) + g(a†σ₋ + aσ₊)`.
pub fn build_parametric_jc(p: &ParametricJCParams, cfg: &HilbertConfig) -> OperatorMatrix {
    let mut h = number(cfg).scale_real(p.delta_c);
    h.add_assign_scaled(&sigma_z_term(cfg), 0.5 * p.delta_q)
        .expect("matched dims");
    h.add_assign_scaled(&two_photon_term(cfg), -0.5 * p.eta)
        .expect("matched dims");
    h.add_assign_scaled(&rotating_coupling(cfg), p.g)
        .expect("matched dims");
    debug_assert!(h.is_hermitian());
    h
}

/// Squeezed-frame form of the driven model: an anisotropic Rabi Hamiltonian
/// `δc sech(2r) a†a + (δq/2)σz + g₁(aσ₊ + a†σ₋) + g₂(aσ₋ + a†σ₊)`
/// plus the constant `(δc/2)(sech 2r − 1)` from the frame transformation.
pub fn build_squeezed_frame(p: &ParametricJCParams, cfg: &HilbertConfig) -> OperatorMatrix {
    let (g1, g2) = squeeze_couplings(p);
    let mut h = number(cfg).scale_real(p.effective_frequency());
    h.add_assign_scaled(&sigma_z_term(cfg), 0.5 * p.delta_q)
        .expect("matched dims");
    h.add_assign_scaled(&rotating_coupling(cfg), g1)
        .expect("matched dims");
    h.add_assign_scaled(&counter_rotating_coupling(cfg), g2)
        .expect("matched dims");
    h.shift_diagonal(squeeze_vacuum_shift(p));
    debug_assert!(h.is_hermitian());
    h
}

/// Dispersive effective Hamiltonian, second order in g₁, g₂:
///
/// ```text
/// H = δc sech(2r) a†a + ((g₁²+g₂²)/δq) a†a σz + (g₁²/δq + δq/2) σz
///     + (g₁g₂/δq)(a†² + a²) σz + ((g₁²−g₂²)/δq) σ₋σ₊
/// ```
///
/// plus the frame constant. Valid in the regime δc·sech(2r)/δq → 0.
pub fn build_dispersive(p: &ParametricJCParams, cfg: &HilbertConfig) -> OperatorMatrix {
    let (g1, g2) = squeeze_couplings(p);
    let dq = p.delta_q;
    let nf = cfg.fock_dim();

    let n_sz = spin_fock_product(&sigma_z_2(), &fock_number(nf));
    let two_photon_sz =
        spin_fock_product(&sigma_z_2(), &fock_annihilation_squared(nf)).plus_adjoint();
    let proj_down = spin_fock_product(
        &down_projector_2(),
        &DMatrix::<Complex64>::identity(nf, nf),
    );

    let mut h = number(cfg).scale_real(p.effective_frequency());
    h.add_assign_scaled(&n_sz, (g1 * g1 + g2 * g2) / dq)
        .expect("matched dims");
    h.add_assign_scaled(&sigma_z_term(cfg), g1 * g1 / dq + 0.5 * dq)
        .expect("matched dims");
    h.add_assign_scaled(&two_photon_sz, g1 * g2 / dq)
        .expect("matched dims");
    h.add_assign_scaled(&proj_down, (g1 * g1 - g2 * g2) / dq)
        .expect("matched dims");
    h.shift_diagonal(squeeze_vacuum_shift(p));
    debug_assert!(h.is_hermitian());
    h
}

/// Conjugate an operator by the spin gauge σz ⊗ 1 (flips the sign of both
/// coupling terms while leaving the diagonal parts untouched). Used by
/// tests to verify coupling-sign invariance of spectra.
pub fn spin_gauge_flip(op: &OperatorMatrix, cfg: &HilbertConfig) -> OperatorMatrix {
    let s = spin_ops(cfg);
    let flipped = s
        .z
        .compose(op)
        .and_then(|m| m.compose(&s.z))
        .expect("matched dims");
    // σz M σz of a Hermitian M is Hermitian with the same entries magnitude
    OperatorMatrix::from_matrix(flipped.entries().clone()).expect("square")
}
