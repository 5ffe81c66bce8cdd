//! The two-level family `R_t`: a rotation path between the eigenbases of `ρ` and `σ`, the
//! functional `R_t(ρ‖σ) = Δ_{U_t†}(pinch(U_t ρ̄ U_t†), spec ρ̄, σ/tr ρ)` and randomized checks of
//! the Rényi axioms.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matcore::hermitian_eig;
use crate::rates::delta_a_closed;
use crate::{ComplexMatrix, Dist, State, Unitary, C64};

mod axioms;

pub use axioms::{axiom_suite, AxiomCheck, AxiomReport};

/// Off-diagonal size (relative to `‖σ‖`) below which `ρ` and `σ` are treated as commuting.
const COMMUTING_TOL: f64 = 1e-13;

/// `t ↦ U_t = R(−φ′t)·F` where `F` diagonalizes `ρ̄` (descending) and makes `σ`'s off-diagonal
/// entry real and nonnegative, and `R(φ)` is the planar rotation by `φ`.
#[derive(Clone, Debug, PartialEq)]
pub struct RotationPath {
    phi_prime: f64,
    frame: Unitary,
    commuting: bool,
}

impl RotationPath {
    /// Rotation angle in `[0, π/2]`; zero on the commuting branch.
    pub fn phi_prime(&self) -> f64 {
        self.phi_prime
    }

    pub fn frame(&self) -> &Unitary {
        &self.frame
    }

    pub fn is_commuting(&self) -> bool {
        self.commuting
    }

    pub fn unitary(&self, t: f64) -> Result<Unitary> {
        if !(0.0..=1.0).contains(&t) {
            return Err(Error::OutOfRange(format!("t = {t} outside [0, 1]")));
        }
        Ok(rotation(-self.phi_prime * t).compose(&self.frame))
    }
}

/// Planar rotation `[[cos φ, −sin φ], [sin φ, cos φ]]`.
pub fn rotation(phi: f64) -> Unitary {
    let (s, c) = phi.sin_cos();
    Unitary::from_trusted(ComplexMatrix::from_real_rows(&[&[c, -s], &[s, c]]).expect("2x2 rows"))
}

/// Builds the path for qubit states. Commuting pairs and maximally mixed `ρ` give the constant
/// path `U_t = F`.
pub fn rotation_path(rho: &State, sigma: &State) -> Result<RotationPath> {
    if rho.dim() != 2 || sigma.dim() != 2 {
        return Err(Error::Dimension("rotation paths are defined for qubits".into()));
    }
    let eig = hermitian_eig(rho.matrix())?;
    let f0 = eig.vectors.adjoint();
    let m = &(f0.matrix() * sigma.matrix()) * &f0.matrix().adjoint();
    let off = m[(0, 1)];
    let degenerate = (eig.values[0] - eig.values[1]).abs() <= 1e-13;
    let commuting = degenerate || off.norm() <= COMMUTING_TOL * sigma.matrix().max_abs().max(1e-300);
    let phase = if off.norm() > 0.0 { off / off.norm() } else { C64::new(1.0, 0.0) };
    let fix = Unitary::from_trusted(ComplexMatrix::new(
        2,
        2,
        vec![C64::new(1.0, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 0.0), phase],
    )?);
    let frame = fix.compose(&f0);
    if commuting {
        return Ok(RotationPath { phi_prime: 0.0, frame, commuting: true });
    }
    let z = m[(0, 0)].re - m[(1, 1)].re;
    let x = 2.0 * off.norm();
    Ok(RotationPath { phi_prime: 0.5 * x.atan2(z), frame, commuting: false })
}

/// How the `σ` argument is scaled by `ρ`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SigmaScaling {
    /// `σ / tr ρ`.
    #[default]
    InverseTrace,
    /// `tr{ρ^{-1}} · σ`.
    TraceOfInverse,
}

/// `R_t(ρ‖σ)` for `ρ ≥ 0` (nonzero, not necessarily normalized) and a qubit state `σ`.
pub fn r_t(rho: &ComplexMatrix, sigma: &State, t: f64) -> Result<f64> {
    r_t_scaled(rho, sigma, t, SigmaScaling::InverseTrace)
}

pub fn r_t_scaled(rho: &ComplexMatrix, sigma: &State, t: f64, scaling: SigmaScaling) -> Result<f64> {
    let eig = hermitian_eig(rho)?;
    if eig.values.len() != 2 {
        return Err(Error::Dimension("R_t is defined for qubits".into()));
    }
    let tr: f64 = eig.values.iter().sum();
    if eig.values[1] < -1e-12 * tr.abs().max(1.0) || !(tr > 0.0) {
        return Err(Error::NotPositive(eig.values[1]));
    }
    let rho_bar = State::from_psd(&rho.scale(1.0 / tr))?;
    let factor = match scaling {
        SigmaScaling::InverseTrace => 1.0 / tr,
        SigmaScaling::TraceOfInverse => {
            if eig.values[1] <= 0.0 {
                return Ok(f64::INFINITY);
            }
            eig.values.iter().map(|w| 1.0 / w).sum()
        }
    };
    let path = rotation_path(&rho_bar, sigma)?;
    let u = path.unitary(t)?;
    let p = Dist::from_f64(&rho_bar.conjugate(&u).pinching())?;
    let s = Dist::from_f64(&rho_bar.spectrum()?)?;
    match delta_a_closed(&p, &s, &sigma.matrix().scale(factor), u.adjoint().matrix()) {
        Ok(v) => Ok(v.rate),
        Err(Error::Infeasible(_)) => Ok(f64::INFINITY),
        Err(e) => Err(e),
    }
}

/// `d = 1` convention: `R_t(r‖s) = −log₂(s/r)`.
pub fn r_t_scalar(r: f64, s: f64) -> Result<f64> {
    if !(r > 0.0) || !(s >= 0.0) {
        return Err(Error::InvalidParameter(format!("R_t({r}‖{s})")));
    }
    Ok(-(s / r).log2())
}
