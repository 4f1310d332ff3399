//! Truncated Fock ⊗ spin operator algebra.
//!
//! All operators act on the product space of a single qubit and a harmonic
//! oscillator truncated at Fock level `N`. The basis ordering is fixed and
//! spin-major:
//!
//! ```text
//! |↑,0⟩, |↑,1⟩, …, |↑,N⟩, |↓,0⟩, |↓,1⟩, …, |↓,N⟩
//! ```
//!
//! so the total dimension is `2(N+1)` and every spin block is contiguous.
//! Constructors assemble Hermitian matrices symmetrically, never by
//! post-hoc symmetrization, so `max|H - H†| == 0` holds exactly for
//! flagged operators.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{RabiError, Result};

/// Norm tolerance accepted by [`OperatorMatrix::expectation`].
pub const NORM_TOL: f64 = 1e-10;

/// Truncation and basis-ordering configuration for the spin ⊗ boson space.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HilbertConfig {
    fock_cutoff: usize,
}

/// Qubit basis label in the fixed spin-major ordering.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spin {
    Up,
    Down,
}

impl HilbertConfig {
    /// `fock_cutoff` is the maximum photon number retained (N ≥ 1).
    pub fn new(fock_cutoff: usize) -> Result<Self> {
        if fock_cutoff < 1 {
            return Err(RabiError::InvalidConfig(
                "fock_cutoff must be at least 1".into(),
            ));
        }
        Ok(Self { fock_cutoff })
    }

    pub fn fock_cutoff(&self) -> usize {
        self.fock_cutoff
    }

    /// Number of retained Fock states, N + 1.
    pub fn fock_dim(&self) -> usize {
        self.fock_cutoff + 1
    }

    /// Total dimension 2(N + 1).
    pub fn dim(&self) -> usize {
        2 * self.fock_dim()
    }

    /// Flat index of |spin, m⟩ in the spin-major ordering.
    pub fn index(&self, spin: Spin, m: usize) -> usize {
        debug_assert!(m <= self.fock_cutoff);
        match spin {
            Spin::Up => m,
            Spin::Down => self.fock_dim() + m,
        }
    }

    /// Basis state |spin, m⟩ as a unit vector.
    pub fn basis_state(&self, spin: Spin, m: usize) -> DVector<Complex64> {
        let mut v = DVector::zeros(self.dim());
        v[self.index(spin, m)] = Complex64::new(1.0, 0.0);
        v
    }
}

/// Dense complex matrix with a Hermiticity flag maintained by construction.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    entries: DMatrix<Complex64>,
    hermitian: bool,
}

impl OperatorMatrix {
    /// Wrap a raw matrix. The Hermiticity flag is set only if the matrix is
    /// exactly Hermitian entrywise.
    pub fn from_matrix(entries: DMatrix<Complex64>) -> Result<Self> {
        if entries.nrows() != entries.ncols() {
            return Err(RabiError::DimensionMismatch {
                left: entries.nrows(),
                right: entries.ncols(),
            });
        }
        let mut op = Self {
            entries,
            hermitian: false,
        };
        op.hermitian = op.max_asymmetry() == 0.0;
        Ok(op)
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            entries: DMatrix::zeros(dim, dim),
            hermitian: true,
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            entries: DMatrix::identity(dim, dim),
            hermitian: true,
        }
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    /// True when the constructor chain guarantees exact Hermiticity.
    pub fn is_hermitian(&self) -> bool {
        self.hermitian
    }

    /// max_ij |M_ij - conj(M_ji)|.
    pub fn max_asymmetry(&self) -> f64 {
        let n = self.dim();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i..n {
                let d = (self.entries[(i, j)] - self.entries[(j, i)].conj()).norm();
                if d > worst {
                    worst = d;
                }
            }
        }
        worst
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// True when every entry has exactly zero imaginary part.
    pub fn is_real(&self) -> bool {
        self.entries.iter().all(|z| z.im == 0.0)
    }

    /// Matrix product `self * other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(Self {
            entries: &self.entries * &other.entries,
            hermitian: false,
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(Self {
            entries: &self.entries + &other.entries,
            hermitian: self.hermitian && other.hermitian,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(Self {
            entries: &self.entries - &other.entries,
            hermitian: self.hermitian && other.hermitian,
        })
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            entries: &self.entries * factor,
            hermitian: self.hermitian && factor.im == 0.0,
        }
    }

    pub fn scale_real(&self, factor: f64) -> Self {
        self.scale(Complex64::new(factor, 0.0))
    }

    pub fn adjoint(&self) -> Self {
        Self {
            entries: self.entries.adjoint(),
            hermitian: self.hermitian,
        }
    }

    /// `self + self†`, assembled so that the result is exactly Hermitian.
    pub fn plus_adjoint(&self) -> Self {
        let n = self.dim();
        let mut out = DMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = self.entries[(i, j)] + self.entries[(j, i)].conj();
            }
        }
        Self {
            entries: out,
            hermitian: true,
        }
    }

    /// Hermitian part `(self + self†)/2`.
    pub fn hermitian_part(&self) -> Self {
        self.plus_adjoint().scale_real(0.5)
    }

    /// Add `c` to every diagonal entry (a real scalar shift).
    pub fn shift_diagonal(&mut self, c: f64) {
        for i in 0..self.dim() {
            self.entries[(i, i)] += Complex64::new(c, 0.0);
        }
    }

    /// `self += factor * other`, in place. The Hermitian flag survives
    /// only when both operands carry it.
    pub fn add_assign_scaled(&mut self, other: &Self, factor: f64) -> Result<()> {
        self.check_dim(other)?;
        let f = Complex64::new(factor, 0.0);
        self.entries.zip_apply(&other.entries, |a, b| *a += f * b);
        self.hermitian = self.hermitian && other.hermitian;
        Ok(())
    }

    /// `self * other - other * self`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        let ab = self.compose(other)?;
        let ba = other.compose(self)?;
        ab.sub(&ba)
    }

    /// Apply to a state vector.
    pub fn apply(&self, state: &DVector<Complex64>) -> Result<DVector<Complex64>> {
        if state.len() != self.dim() {
            return Err(RabiError::DimensionMismatch {
                left: self.dim(),
                right: state.len(),
            });
        }
        Ok(&self.entries * state)
    }

    /// ⟨ψ|O|ψ⟩ for a normalized |ψ⟩.
    pub fn expectation(&self, state: &DVector<Complex64>) -> Result<Complex64> {
        let norm = state.norm();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(RabiError::NotNormalized { norm });
        }
        let applied = self.apply(state)?;
        Ok(state.dotc(&applied))
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(RabiError::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        Ok(())
    }
}

/// The five qubit operators tensored with the boson identity.
#[derive(Debug, Clone)]
pub struct SpinOps {
    pub x: OperatorMatrix,
    pub y: OperatorMatrix,
    pub z: OperatorMatrix,
    pub plus: OperatorMatrix,
    pub minus: OperatorMatrix,
}

fn kron_spin_fock(spin: &DMatrix<Complex64>, fock: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    // spin-major ordering = spin factor on the left of the Kronecker product
    spin.kronecker(fock)
}

/// Boson-factor matrix of the annihilation operator, ⟨m-1|a|m⟩ = √m.
pub(crate) fn fock_annihilation(nf: usize) -> DMatrix<Complex64> {
    let mut a = DMatrix::<Complex64>::zeros(nf, nf);
    for m in 1..nf {
        a[(m - 1, m)] = Complex64::new((m as f64).sqrt(), 0.0);
    }
    a
}

/// Boson-factor matrix of a², ⟨m-2|a²|m⟩ = √(m(m-1)).
pub(crate) fn fock_annihilation_squared(nf: usize) -> DMatrix<Complex64> {
    let mut a2 = DMatrix::<Complex64>::zeros(nf, nf);
    for m in 2..nf {
        a2[(m - 2, m)] = Complex64::new((m as f64 * (m as f64 - 1.0)).sqrt(), 0.0);
    }
    a2
}

/// Boson-factor matrix of a†a.
pub(crate) fn fock_number(nf: usize) -> DMatrix<Complex64> {
    let mut n = DMatrix::<Complex64>::zeros(nf, nf);
    for m in 0..nf {
        n[(m, m)] = Complex64::new(m as f64, 0.0);
    }
    n
}

/// Product operator spin ⊗ fock in the documented spin-major ordering.
/// The Hermiticity flag is set by an exact entrywise check, so dense
/// multiplications are never needed to assemble product terms.
pub fn spin_fock_product(
    spin: &nalgebra::Matrix2<Complex64>,
    fock: &DMatrix<Complex64>,
) -> OperatorMatrix {
    let spin_dyn = DMatrix::from_fn(2, 2, |i, j| spin[(i, j)]);
    OperatorMatrix::from_matrix(kron_spin_fock(&spin_dyn, fock)).expect("square by construction")
}

/// Annihilation operator a ⊗ 1_spin: ⟨m-1|a|m⟩ = √m for 1 ≤ m ≤ N.
pub fn annihilation(cfg: &HilbertConfig) -> OperatorMatrix {
    let spin_id = DMatrix::<Complex64>::identity(2, 2);
    OperatorMatrix {
        entries: kron_spin_fock(&spin_id, &fock_annihilation(cfg.fock_dim())),
        hermitian: false,
    }
}

/// Creation operator a† ⊗ 1_spin.
pub fn creation(cfg: &HilbertConfig) -> OperatorMatrix {
    annihilation(cfg).adjoint()
}

/// Number operator a†a ⊗ 1_spin (diagonal, exactly Hermitian).
pub fn number(cfg: &HilbertConfig) -> OperatorMatrix {
    let spin_id = DMatrix::<Complex64>::identity(2, 2);
    OperatorMatrix {
        entries: kron_spin_fock(&spin_id, &fock_number(cfg.fock_dim())),
        hermitian: true,
    }
}

/// Pauli matrices and ladder operators σ± = (σx ± iσy)/2, each tensored
/// with the boson identity. σz|↑⟩ = +|↑⟩ in the documented ordering.
pub fn spin_ops(cfg: &HilbertConfig) -> SpinOps {
    let o = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);

    let sx = DMatrix::from_row_slice(2, 2, &[o, one, one, o]);
    let sy = DMatrix::from_row_slice(2, 2, &[o, -i, i, o]);
    let sz = DMatrix::from_row_slice(2, 2, &[one, o, o, -one]);
    let sp = DMatrix::from_row_slice(2, 2, &[o, one, o, o]);
    let sm = DMatrix::from_row_slice(2, 2, &[o, o, one, o]);

    let fock_id = DMatrix::<Complex64>::identity(cfg.fock_dim(), cfg.fock_dim());
    let lift = |m: DMatrix<Complex64>, hermitian: bool| OperatorMatrix {
        entries: kron_spin_fock(&m, &fock_id),
        hermitian,
    };

    SpinOps {
        x: lift(sx, true),
        y: lift(sy, true),
        z: lift(sz, true),
        plus: lift(sp, false),
        minus: lift(sm, false),
    }
}

/// Parity operator Π = σz · (-1)^(a†a), diagonal with entries ±1.
pub fn parity(cfg: &HilbertConfig) -> OperatorMatrix {
    let dim = cfg.dim();
    let nf = cfg.fock_dim();
    let mut p = DMatrix::<Complex64>::zeros(dim, dim);
    for m in 0..nf {
        let boson_sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        p[(m, m)] = Complex64::new(boson_sign, 0.0);
        p[(nf + m, nf + m)] = Complex64::new(-boson_sign, 0.0);
    }
    OperatorMatrix {
        entries: p,
        hermitian: true,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(n: usize) -> HilbertConfig {
        HilbertConfig::new(n).unwrap()
    }

    #[test]
    fn cutoff_below_one_rejected() {
        assert!(HilbertConfig::new(0).is_err());
        assert_eq!(cfg(1).dim(), 4);
        assert_eq!(cfg(200).dim(), 402);
    }

    #[test]
    fn annihilation_has_sqrt_m_elements() {
        let c = cfg(1);
        let a = annihilation(&c);
        // N=1: the only nonzero element per spin block is √1 at (fock 0 ← fock 1)
        for spin in [Spin::Up, Spin::Down] {
            let row = c.index(spin, 0);
            let col = c.index(spin, 1);
            assert_eq!(a.entries()[(row, col)], Complex64::new(1.0, 0.0));
        }
        let nonzero = a.entries().iter().filter(|z| z.norm() > 0.0).count();
        assert_eq!(nonzero, 2);

        let c3 = cfg(3);
        let a3 = annihilation(&c3);
        let elem = a3.entries()[(c3.index(Spin::Up, 2), c3.index(Spin::Up, 3))];
        assert!((elem.re - 3.0f64.sqrt()).abs() < 1e-15);
        assert_eq!(elem.im, 0.0);
    }

    #[test]
    fn number_operator_doubly_degenerate_ladder() {
        let c = cfg(4);
        let n = number(&c);
        // diagonal, each Fock value appears once per spin block
        let mut diag: Vec<f64> = (0..c.dim()).map(|i| n.entries()[(i, i)].re).collect();
        diag.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let expected: Vec<f64> = vec![0., 0., 1., 1., 2., 2., 3., 3., 4., 4.];
        assert_eq!(diag, expected);
    }

    #[test]
    fn pauli_product_relation() {
        let c = cfg(2);
        let s = spin_ops(&c);
        // σx σy = i σz, elementwise
        let xy = s.x.compose(&s.y).unwrap();
        let iz = s.z.scale(Complex64::new(0.0, 1.0));
        let diff = xy.sub(&iz).unwrap();
        assert_eq!(diff.max_abs(), 0.0);
    }

    #[test]
    fn raising_operator_maps_down_to_up() {
        let c = cfg(3);
        let s = spin_ops(&c);
        for m in 0..=3 {
            let down = c.basis_state(Spin::Down, m);
            let up = c.basis_state(Spin::Up, m);
            let raised = s.plus.apply(&down).unwrap();
            assert_eq!((raised - up).norm(), 0.0);
        }
    }

    #[test]
    fn sigma_z_traceless() {
        for n in [1, 5, 40] {
            let c = cfg(n);
            let s = spin_ops(&c);
            let trace: Complex64 = (0..c.dim()).map(|i| s.z.entries()[(i, i)]).sum();
            assert_eq!(trace, Complex64::new(0.0, 0.0));
        }
    }

    #[test]
    fn ladder_anticommutator_is_identity() {
        let c = cfg(4);
        let s = spin_ops(&c);
        let pm = s.plus.compose(&s.minus).unwrap();
        let mp = s.minus.compose(&s.plus).unwrap();
        let sum = pm.add(&mp).unwrap();
        let diff = sum.sub(&OperatorMatrix::identity(c.dim())).unwrap();
        assert_eq!(diff.max_abs(), 0.0);
    }

    #[test]
    fn commutator_identity_off_truncation_edge() {
        let c = cfg(6);
        let a = annihilation(&c);
        let adag = creation(&c);
        let comm = a.commutator(&adag).unwrap();
        // identity after deleting the last Fock level in each spin block,
        // to the rounding of sqrt(m)*sqrt(m)
        let nf = c.fock_dim();
        for i in 0..c.dim() {
            for j in 0..c.dim() {
                let at_edge = i % nf == nf - 1 || j % nf == nf - 1;
                if at_edge {
                    continue;
                }
                let want = if i == j { 1.0 } else { 0.0 };
                let got = comm.entries()[(i, j)];
                assert!((got - Complex64::new(want, 0.0)).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn vacuum_and_eigenstate_expectations() {
        let c = cfg(5);
        let n = number(&c);
        let s = spin_ops(&c);
        let vac = c.basis_state(Spin::Down, 0);
        assert_eq!(n.expectation(&vac).unwrap(), Complex64::new(0.0, 0.0));
        for m in 0..=5 {
            let state = c.basis_state(Spin::Down, m);
            assert_eq!(s.z.expectation(&state).unwrap(), Complex64::new(-1.0, 0.0));
        }
    }

    #[test]
    fn adjoint_is_involutive() {
        let c = cfg(3);
        let a = annihilation(&c);
        let back = a.adjoint().adjoint();
        assert_eq!(a.entries(), back.entries());
    }

    #[test]
    fn constructors_are_deterministic() {
        let c = cfg(17);
        assert_eq!(annihilation(&c).entries(), annihilation(&c).entries());
        assert_eq!(spin_ops(&c).y.entries(), spin_ops(&c).y.entries());
        assert_eq!(parity(&c).entries(), parity(&c).entries());
    }

    #[test]
    fn dimension_mismatch_is_hard_error() {
        let a = annihilation(&cfg(2));
        let b = annihilation(&cfg(3));
        assert!(matches!(
            a.compose(&b),
            Err(RabiError::DimensionMismatch { .. })
        ));
        assert!(matches!(a.add(&b), Err(RabiError::DimensionMismatch { .. })));
    }

    #[test]
    fn expectation_rejects_unnormalized_state() {
        let c = cfg(2);
        let n = number(&c);
        let state = c.basis_state(Spin::Up, 1) * Complex64::new(2.0, 0.0);
        assert!(matches!(
            n.expectation(&state),
            Err(RabiError::NotNormalized { .. })
        ));
    }

    #[test]
    fn plus_adjoint_exactly_hermitian() {
        let c = cfg(4);
        let s = spin_ops(&c);
        let t = annihilation(&c).compose(&s.plus).unwrap();
        let h = t.plus_adjoint();
        assert!(h.is_hermitian());
        assert_eq!(h.max_asymmetry(), 0.0);
    }
}
