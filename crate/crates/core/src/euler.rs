//! State representations, ideal-gas equation of state and the physical flux
//! of the two-dimensional Euler equations.
//!
//! The evolved quantity is the conserved vector `q = (ρ, ρu, ρv, E)`; the
//! human-facing one is the primitive vector `w = (ρ, u, v, p)`. They are
//! related through the ideal-gas law `E = p/(γ-1) + ρ(u² + v²)/2`.
//!
//! Only the x-direction flux is implemented directly. The y-direction flux
//! follows from rotational invariance: rotate the state so that `v` becomes
//! the normal velocity, evaluate the x-flux, rotate the result back.

use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub, SubAssign};

use crate::error::PhysicsError;

/// Ideal gas with constant ratio of specific heats.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GasModel {
    pub gamma: f64,
}

impl GasModel {
    pub fn new(gamma: f64) -> Result<Self, PhysicsError> {
        if gamma.is_finite() && gamma > 1.0 {
            Ok(GasModel { gamma })
        } else {
            Err(PhysicsError::InvalidGamma(gamma))
        }
    }
}

impl Default for GasModel {
    fn default() -> Self {
        GasModel { gamma: 1.4 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrimitiveState {
    pub rho: f64,
    pub u: f64,
    pub v: f64,
    pub p: f64,
}

impl PrimitiveState {
    pub const fn new(rho: f64, u: f64, v: f64, p: f64) -> Self {
        PrimitiveState { rho, u, v, p }
    }

    pub fn as_array(&self) -> [f64; 4] {
        [self.rho, self.u, self.v, self.p]
    }

    pub fn from_array(a: [f64; 4]) -> Self {
        PrimitiveState::new(a[0], a[1], a[2], a[3])
    }
}

/// Conserved variables: density, momenta and total energy per volume.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ConservedState {
    pub rho: f64,
    pub mx: f64,
    pub my: f64,
    pub e: f64,
}

impl ConservedState {
    pub const fn new(rho: f64, mx: f64, my: f64, e: f64) -> Self {
        ConservedState { rho, mx, my, e }
    }

    pub fn as_array(&self) -> [f64; 4] {
        [self.rho, self.mx, self.my, self.e]
    }

    pub fn from_array(a: [f64; 4]) -> Self {
        ConservedState::new(a[0], a[1], a[2], a[3])
    }

    pub fn is_finite(&self) -> bool {
        self.as_array().iter().all(|x| x.is_finite())
    }

    pub fn internal_energy(&self) -> f64 {
        self.e - 0.5 * (self.mx * self.mx + self.my * self.my) / self.rho
    }
}

/// A flux through a face, laid out like [`ConservedState`].
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct FluxVector(pub [f64; 4]);

impl FluxVector {
    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|x| x.is_finite())
    }

    pub fn norm(&self) -> f64 {
        self.0.iter().map(|x| x * x).sum::<f64>().sqrt()
    }
}

impl From<ConservedState> for FluxVector {
    fn from(q: ConservedState) -> Self {
        FluxVector(q.as_array())
    }
}

impl Index<usize> for FluxVector {
    type Output = f64;
    fn index(&self, k: usize) -> &f64 {
        &self.0[k]
    }
}

impl IndexMut<usize> for FluxVector {
    fn index_mut(&mut self, k: usize) -> &mut f64 {
        &mut self.0[k]
    }
}

macro_rules! vector_ops {
    ($t:ty, $wrap:expr, $unwrap:expr) => {
        impl Add for $t {
            type Output = $t;
            fn add(self, o: $t) -> $t {
                let (a, b): ([f64; 4], [f64; 4]) = ($unwrap(self), $unwrap(o));
                $wrap([a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]])
            }
        }
        impl Sub for $t {
            type Output = $t;
            fn sub(self, o: $t) -> $t {
                let (a, b): ([f64; 4], [f64; 4]) = ($unwrap(self), $unwrap(o));
                $wrap([a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]])
            }
        }
        impl Mul<f64> for $t {
            type Output = $t;
            fn mul(self, s: f64) -> $t {
                let a: [f64; 4] = $unwrap(self);
                $wrap([a[0] * s, a[1] * s, a[2] * s, a[3] * s])
            }
        }
        impl Mul<$t> for f64 {
            type Output = $t;
            fn mul(self, q: $t) -> $t {
                q * self
            }
        }
        impl Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                self * -1.0
            }
        }
        impl AddAssign for $t {
            fn add_assign(&mut self, o: $t) {
                *self = *self + o;
            }
        }
        impl SubAssign for $t {
            fn sub_assign(&mut self, o: $t) {
                *self = *self - o;
            }
        }
    };
}

vector_ops!(ConservedState, ConservedState::from_array, |q: ConservedState| q
    .as_array());
vector_ops!(FluxVector, FluxVector, |f: FluxVector| f.0);

/// Checks `ρ > 0`, `p > 0` and finiteness.
pub fn validate_state(w: &PrimitiveState) -> Result<(), PhysicsError> {
    if !w.as_array().iter().all(|x| x.is_finite()) {
        return Err(PhysicsError::NonFinite);
    }
    if w.rho <= 0.0 {
        return Err(PhysicsError::NonPositiveDensity(w.rho));
    }
    if w.p <= 0.0 {
        return Err(PhysicsError::NonPositivePressure(w.p));
    }
    Ok(())
}

pub fn prim_to_cons(w: &PrimitiveState, gas: &GasModel) -> Result<ConservedState, PhysicsError> {
    validate_state(w)?;
    let kinetic = 0.5 * w.rho * (w.u * w.u + w.v * w.v);
    Ok(ConservedState::new(
        w.rho,
        w.rho * w.u,
        w.rho * w.v,
        w.p / (gas.gamma - 1.0) + kinetic,
    ))
}

pub fn cons_to_prim(q: &ConservedState, gas: &GasModel) -> Result<PrimitiveState, PhysicsError> {
    if !q.is_finite() {
        return Err(PhysicsError::NonFinite);
    }
    if q.rho <= 0.0 {
        return Err(PhysicsError::NonPositiveDensity(q.rho));
    }
    let eint = q.internal_energy();
    if eint <= 0.0 {
        return Err(PhysicsError::NegativeInternalEnergy(eint));
    }
    Ok(PrimitiveState::new(
        q.rho,
        q.mx / q.rho,
        q.my / q.rho,
        (gas.gamma - 1.0) * eint,
    ))
}

/// `H = (E + p)/ρ`.
pub fn total_enthalpy(q: &ConservedState, gas: &GasModel) -> Result<f64, PhysicsError> {
    let w = cons_to_prim(q, gas)?;
    Ok((q.e + w.p) / q.rho)
}

pub fn sound_speed(w: &PrimitiveState, gas: &GasModel) -> Result<f64, PhysicsError> {
    validate_state(w)?;
    Ok((gas.gamma * w.p / w.rho).sqrt())
}

/// Flux in x-direction, `(ρu, ρu² + p, ρuv, (E + p)u)`.
pub fn physical_flux_x(q: &ConservedState, gas: &GasModel) -> Result<FluxVector, PhysicsError> {
    let w = cons_to_prim(q, gas)?;
    Ok(flux_x_unchecked(q, &w))
}

/// Same as [`physical_flux_x`] for a state pair already known to be valid.
#[inline]
pub(crate) fn flux_x_unchecked(q: &ConservedState, w: &PrimitiveState) -> FluxVector {
    FluxVector([
        q.mx,
        q.mx * w.u + w.p,
        q.my * w.u,
        (q.e + w.p) * w.u,
    ])
}

/// Analytic Jacobian `∂f/∂q` of the x-flux, row-major.
pub fn flux_jacobian_x(q: &ConservedState, gas: &GasModel) -> Result<[[f64; 4]; 4], PhysicsError> {
    let w = cons_to_prim(q, gas)?;
    let h = (q.e + w.p) / q.rho;
    Ok(jacobian_from_mean(w.u, w.v, h, gas.gamma))
}

/// Jacobian of the x-flux parametrized by velocity and total enthalpy.
pub(crate) fn jacobian_from_mean(u: f64, v: f64, h: f64, gamma: f64) -> [[f64; 4]; 4] {
    let g = gamma - 1.0;
    let k = 0.5 * (u * u + v * v);
    [
        [0.0, 1.0, 0.0, 0.0],
        [g * k - u * u, (3.0 - gamma) * u, -g * v, g],
        [-u * v, v, u, 0.0],
        [u * (g * k - h), h - g * u * u, -g * u * v, gamma * u],
    ]
}

/// Rotates by -90° so that the y-velocity becomes the normal velocity:
/// `(ρ, ρu, ρv, E) ↦ (ρ, ρv, -ρu, E)`.
pub fn rotate_to_x(q: &ConservedState) -> ConservedState {
    ConservedState::new(q.rho, q.my, -q.mx, q.e)
}

/// Inverse of [`rotate_to_x`]. Also maps x-fluxes of rotated states back to
/// y-fluxes.
pub fn rotate_from_x(q: &ConservedState) -> ConservedState {
    ConservedState::new(q.rho, -q.my, q.mx, q.e)
}

pub(crate) fn rotate_prim_to_x(w: &PrimitiveState) -> PrimitiveState {
    PrimitiveState::new(w.rho, w.v, -w.u, w.p)
}

pub(crate) fn rotate_flux_from_x(f: &FluxVector) -> FluxVector {
    FluxVector([f[0], -f[2], f[1], f[3]])
}

/// Flux in y-direction via rotation of the x-flux.
pub fn physical_flux_y(q: &ConservedState, gas: &GasModel) -> Result<FluxVector, PhysicsError> {
    let fx = physical_flux_x(&rotate_to_x(q), gas)?;
    Ok(rotate_flux_from_x(&fx))
}

/// Plot quantity `s = ln(p / ρ^γ)`.
pub fn entropy_scalar(w: &PrimitiveState, gas: &GasModel) -> Result<f64, PhysicsError> {
    validate_state(w)?;
    Ok((w.p / w.rho.powf(gas.gamma)).ln())
}
