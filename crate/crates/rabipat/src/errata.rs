//! Machine-readable ledger of the places where this implementation
//! departs from commonly printed forms of the model's effective formulas.
//!
//! Each entry records the printed form, the form implemented here, and the
//! check that decides between them. The `validate` command prints the
//! ledger and exercises the deciding checks; CSV emitters quote the
//! entries relevant to the run in their header comment block.

/// Which part of the library an entry applies to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Area {
    Patterns,
    Models,
    Phases,
}

impl Area {
    pub fn label(&self) -> &'static str {
        match self {
            Area::Patterns => "patterns",
            Area::Models => "models",
            Area::Phases => "phases",
        }
    }
}

/// One documented divergence between a printed formula and the
/// implemented algebra.
#[derive(Debug, Clone, Copy)]
pub struct ErrataEntry {
    pub id: &'static str,
    pub area: Area,
    pub printed: &'static str,
    pub implemented: &'static str,
    pub basis: &'static str,
}

pub const PATTERN_SLOTS: ErrataEntry = ErrataEntry {
    id: "pattern-slots",
    area: Area::Patterns,
    printed: "pattern operators assembled from the slots (i sigma_y, sigma_z, a)",
    implemented: "pattern operators assembled from the slots (sigma_x, -i sigma_y, a), matching the quadratic-form vector",
    basis: "reconstruction identity: sum_n lambda_n A_n^dag A_n must reproduce the Hamiltonian; the sigma_z variant leaves a residual above 1 omega0",
};

pub const SQUEEZE_COUPLINGS: ErrataEntry = ErrataEntry {
    id: "squeeze-couplings",
    area: Area::Models,
    printed: "squeezed-frame couplings g1 = g cosh(2r), g2 = g sinh(2r)",
    implemented: "g1 = g cosh(r), g2 = g sinh(r)",
    basis: "lab- and squeezed-frame spectra must coincide; also forced by g0 = sqrt(delta_c sech(2r) delta_q)/e^r, which requires g1 + g2 = g e^r",
};

pub const FRAME_VACUUM_SHIFT: ErrataEntry = ErrataEntry {
    id: "frame-vacuum-shift",
    area: Area::Models,
    printed: "squeezed-frame Hamiltonian written without a constant term",
    implemented: "squeezed-frame and dispersive Hamiltonians carry the constant (delta_c/2)(sech 2r - 1) produced by the frame transformation",
    basis: "exact unitary equivalence of the lab- and squeezed-frame spectra at converged cutoffs",
};

pub const NORMAL_GAP_DENOMINATOR: ErrataEntry = ErrataEntry {
    id: "normal-gap-denominator",
    area: Area::Phases,
    printed: "normal-phase excitation radicand (omega0 - (xi1^2+xi2^2)/2)^2",
    implemented: "(omega0 - (xi1^2+xi2^2)/Omega)^2",
    basis: "dimensional analysis and the oscillator coefficient of the projected quadratic form",
};

pub const SIMULATED_GAP_RADICAND: ErrataEntry = ErrataEntry {
    id: "simulated-gap-radicand",
    area: Area::Phases,
    printed: "driven-model excitation radicand subtracts g^4 sinh^2(2r)/delta_q",
    implemented: "subtracts (g^2 sinh(2r)/delta_q)^2, i.e. the square of the two-photon coefficient 2 g1 g2/delta_q",
    basis: "dimensional analysis; consistency with the (g1 g2/delta_q) coefficient of the dispersive Hamiltonian",
};

pub const NORMAL_GROUND_CONSTANT: ErrataEntry = ErrataEntry {
    id: "normal-ground-constant",
    area: Area::Phases,
    printed: "normal-phase ground energy drops the constant -xi2^2/Omega (-g2^2/delta_q) of the projected Hamiltonian",
    implemented: "the constant is kept: E_np = (eps_np - omega_eff + (xi1^2+xi2^2)/Omega)/2 - xi2^2/Omega - Omega/2",
    basis: "spin-down projection of the dispersive Hamiltonian and continuity of E_G at the critical point",
};

pub const SUPERRADIANT_CONSTANT_SQUARE: ErrataEntry = ErrataEntry {
    id: "superradiant-constant-square",
    area: Area::Phases,
    printed: "superradiant constant term linear in the couplings, [(xi1+xi2) xi_c^-2 - (xi1-xi2)]/(2 Omega xi_c^2)",
    implemented: "the bracket enters squared: -[(xi1+xi2) xi_c^-2 - (xi1-xi2)]^2/(4 Omega xi_c^2)",
    basis: "dimensional analysis (the printed form is not an energy) and continuity of E_G at the critical point",
};

pub const SUPERRADIANT_GROUND_ASSEMBLY: ErrataEntry = ErrataEntry {
    id: "superradiant-ground-assembly",
    area: Area::Phases,
    printed: "superradiant ground energy transcribed with the normal-phase combination -(xi1^2+xi2^2)/Omega inside the half-sum",
    implemented: "E_sp = (eps_sp - omega_sp)/2 + constant terms, with omega_sp the oscillator coefficient of the superradiant quadratic form",
    basis: "Bogoliubov vacuum shift of the projected quadratic form; cross-checked against exact diagonalization in the large-Omega regime",
};

/// Every ledger entry, in a stable order.
pub fn entries() -> [&'static ErrataEntry; 8] {
    [
        &PATTERN_SLOTS,
        &SQUEEZE_COUPLINGS,
        &FRAME_VACUUM_SHIFT,
        &NORMAL_GAP_DENOMINATOR,
        &SIMULATED_GAP_RADICAND,
        &NORMAL_GROUND_CONSTANT,
        &SUPERRADIANT_CONSTANT_SQUARE,
        &SUPERRADIANT_GROUND_ASSEMBLY,
    ]
}

/// Entries touching a given area.
pub fn entries_for(areas: &[Area]) -> Vec<&'static ErrataEntry> {
    entries()
        .into_iter()
        .filter(|e| areas.contains(&e.area))
        .collect()
}
