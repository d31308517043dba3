//! Roe-type interface flux with selectable numerical-viscosity models.
//!
//! The flux has the generic upwind form
//!
//! ```text
//! G(q_l, q_r) = ½ (f(q_l) + f(q_r)) − ½ R |Λ̃| L (q_r − q_l)
//! ```
//!
//! where `R` and `L` are the right and left eigenvector matrices of the flux
//! Jacobian evaluated at Roe's √ρ-weighted mean state, and `|Λ̃|` holds the
//! *viscosity speeds*. The standard Roe scheme uses the absolute wave speeds
//! `|ũ − c̃|, |ũ|, |ũ|, |ũ + c̃|`. The other [`ViscosityMode`]s replace them:
//!
//! * low dissipation caps the acoustic viscosity at `φ|ũ|`,
//! * high dissipation bounds the advective viscosity below by `c̃/φ`,
//! * the two blends interpolate between these with a weight `β ∈ [0, 1]`,
//!   geometrically or arithmetically.
//!
//! For the blends, `β` is normally produced per interface by a shock
//! indicator built from the Rankine–Hugoniot residual
//! `𝔯 = f(q_r) − f(q_l) − ũ (q_r − q_l)`, which vanishes for pure shear and
//! entropy jumps and is large across strong acoustic waves.
//!
//! The Harten entropy fix is applied to the two acoustic viscosity speeds
//! only.

use std::fmt;
use std::str::FromStr;

use crate::error::{ConfigError, PhysicsError};
use crate::euler::{
    cons_to_prim, flux_x_unchecked, jacobian_from_mean, prim_to_cons, ConservedState, FluxVector, GasModel,
    PrimitiveState,
};

/// Roe mean values at one interface.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RoeAverage {
    pub rho: f64,
    pub u: f64,
    pub v: f64,
    pub h: f64,
    pub c: f64,
}

impl RoeAverage {
    /// Analytic flux Jacobian at the mean state, i.e. the Roe matrix.
    pub fn jacobian(&self, gas: &GasModel) -> [[f64; 4]; 4] {
        jacobian_from_mean(self.u, self.v, self.h, gas.gamma)
    }
}

pub fn roe_average(
    ql: &ConservedState,
    qr: &ConservedState,
    gas: &GasModel,
) -> Result<RoeAverage, PhysicsError> {
    let wl = cons_to_prim(ql, gas)?;
    let wr = cons_to_prim(qr, gas)?;
    average_of(ql, &wl, qr, &wr, gas)
}

fn average_of(
    ql: &ConservedState,
    wl: &PrimitiveState,
    qr: &ConservedState,
    wr: &PrimitiveState,
    gas: &GasModel,
) -> Result<RoeAverage, PhysicsError> {
    let sl = wl.rho.sqrt();
    let sr = wr.rho.sqrt();
    let wsum = sl + sr;
    let (al, ar) = (sl / wsum, sr / wsum);
    let hl = (ql.e + wl.p) / wl.rho;
    let hr = (qr.e + wr.p) / wr.rho;
    let u = al * wl.u + ar * wr.u;
    let v = al * wl.v + ar * wr.v;
    let h = al * hl + ar * hr;
    let c2 = (gas.gamma - 1.0) * (h - 0.5 * (u * u + v * v));
    if !c2.is_finite() || c2 <= 0.0 {
        return Err(PhysicsError::DegenerateSoundSpeed(c2));
    }
    Ok(RoeAverage {
        rho: (wl.rho * wr.rho).sqrt(),
        u,
        v,
        h,
        c: c2.sqrt(),
    })
}

/// Wave speeds, viscosity speeds, eigenvectors and wave strengths at one
/// interface.
///
/// `right[k]` is the k-th right eigenvector (a column of `R`), `left[k]` the
/// k-th left eigenvector (a row of `L`), normalized so that `L = R⁻¹`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveSystem {
    pub lambda: [f64; 4],
    pub lambda_visc: [f64; 4],
    pub right: [[f64; 4]; 4],
    pub left: [[f64; 4]; 4],
    pub alpha: [f64; 4],
}

/// Eigen-decomposition of the Roe matrix. Strengths are zero and the
/// viscosity speeds are the absolute wave speeds until set otherwise.
pub fn eigensystem(avg: &RoeAverage, _gas: &GasModel) -> Result<WaveSystem, PhysicsError> {
    let RoeAverage { u, v, h, c, .. } = *avg;
    if c.is_nan() || c <= 0.0 {
        return Err(PhysicsError::DegenerateSoundSpeed(c * c));
    }
    let q2 = u * u + v * v;
    let k = 0.5 * q2;
    let right = [
        [1.0, u - c, v, h - c * u],
        [1.0, u, v, k],
        [0.0, 0.0, 1.0, v],
        [1.0, u + c, v, h + c * u],
    ];
    let ac = 1.0 / (c * (2.0 * h - q2));
    let en = 1.0 / (h - k);
    let left = [
        [
            ac * (h * u - (u - c) * k),
            ac * (k - (h + c * u)),
            -ac * c * v,
            ac * c,
        ],
        [en * (h - q2), en * u, en * v, -en],
        [-v, 0.0, 1.0, 0.0],
        [
            ac * (-h * u + (u + c) * k),
            ac * (-k + (h - c * u)),
            -ac * c * v,
            ac * c,
        ],
    ];
    let lambda = [u - c, u, u, u + c];
    Ok(WaveSystem {
        lambda,
        lambda_visc: lambda.map(f64::abs),
        right,
        left,
        alpha: [0.0; 4],
    })
}

impl WaveSystem {
    /// Sets the wave strengths `α = L (q_r − q_l)`.
    pub fn with_jump(mut self, dq: &[f64; 4]) -> Self {
        for (a, l) in self.alpha.iter_mut().zip(&self.left) {
            *a = l[0] * dq[0] + l[1] * dq[1] + l[2] * dq[2] + l[3] * dq[3];
        }
        self
    }

    /// `R diag(d) L`.
    pub fn compose(&self, d: &[f64; 4]) -> [[f64; 4]; 4] {
        let mut m = [[0.0; 4]; 4];
        for (row, m_row) in m.iter_mut().enumerate() {
            for (col, entry) in m_row.iter_mut().enumerate() {
                *entry = (0..4)
                    .map(|k| self.right[k][row] * d[k] * self.left[k][col])
                    .sum();
            }
        }
        m
    }

    /// The Roe matrix reassembled as `R Λ L`.
    pub fn roe_matrix(&self) -> [[f64; 4]; 4] {
        self.compose(&self.lambda)
    }

    /// The viscosity matrix `R |Λ̃| L`.
    pub fn viscosity_matrix(&self) -> [[f64; 4]; 4] {
        self.compose(&self.lambda_visc)
    }

    /// `Σ_k d_k α_k r_k`.
    fn weighted_sum(&self, d: &[f64; 4]) -> [f64; 4] {
        let mut out = [0.0; 4];
        for ((dk, ak), rk) in d.iter().zip(&self.alpha).zip(&self.right) {
            let s = dk * ak;
            for (o, r) in out.iter_mut().zip(rk) {
                *o += s * r;
            }
        }
        out
    }
}

/// Harten's entropy fix: `|λ|` outside `[−δ, δ]`, `(λ² + δ²)/(2δ)` inside.
/// A nonpositive `delta` disables the fix.
pub fn harten_fix(lambda: f64, delta: f64) -> f64 {
    let a = lambda.abs();
    if delta <= 0.0 || a >= delta {
        a
    } else {
        (lambda * lambda + delta * delta) / (2.0 * delta)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ViscosityMode {
    Standard,
    LowDiss,
    HighDiss,
    BlendGeometric,
    BlendArithmetic,
}

impl ViscosityMode {
    pub const ALL: [ViscosityMode; 5] = [
        ViscosityMode::Standard,
        ViscosityMode::LowDiss,
        ViscosityMode::HighDiss,
        ViscosityMode::BlendGeometric,
        ViscosityMode::BlendArithmetic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ViscosityMode::Standard => "standard",
            ViscosityMode::LowDiss => "low_diss",
            ViscosityMode::HighDiss => "high_diss",
            ViscosityMode::BlendGeometric => "blend_geo",
            ViscosityMode::BlendArithmetic => "blend_arith",
        }
    }

    pub fn is_blend(self) -> bool {
        matches!(
            self,
            ViscosityMode::BlendGeometric | ViscosityMode::BlendArithmetic
        )
    }
}

impl fmt::Display for ViscosityMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ViscosityMode {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "standard" => Ok(ViscosityMode::Standard),
            "low_diss" => Ok(ViscosityMode::LowDiss),
            "high_diss" => Ok(ViscosityMode::HighDiss),
            "blend_geo" | "blend_geometric" => Ok(ViscosityMode::BlendGeometric),
            "blend_arith" | "blend_arithmetic" => Ok(ViscosityMode::BlendArithmetic),
            other => Err(ConfigError::invalid(
                "mode",
                format!(
                    "`{other}` is not one of standard, low_diss, high_diss, blend_geo, blend_arith"
                ),
            )),
        }
    }
}

/// `x^e` with the endpoint exponents evaluated exactly.
#[inline]
fn pow_exact(x: f64, e: f64) -> f64 {
    if e == 0.0 {
        1.0
    } else if e == 1.0 {
        x
    } else {
        x.powf(e)
    }
}

/// Signed viscosity speeds `λ̃₁..λ̃₄` of the selected model. Only their
/// absolute values enter the viscosity matrix; `beta` is ignored by the
/// non-blended modes.
pub fn wave_speed_model(avg: &RoeAverage, mode: ViscosityMode, phi: f64, beta: f64) -> [f64; 4] {
    let (u, c) = (avg.u, avg.c);
    let capped_acoustic = (phi * u.abs()).min(c);
    let floored_advective = u.signum() * (c / phi).max(u.abs());
    match mode {
        ViscosityMode::Standard => [u - c, u, u, u + c],
        ViscosityMode::LowDiss => [u - capped_acoustic, u, u, u + capped_acoustic],
        ViscosityMode::HighDiss => [u - c, floored_advective, floored_advective, u + c],
        ViscosityMode::BlendGeometric => {
            let acoustic = pow_exact(c, beta) * pow_exact(capped_acoustic, 1.0 - beta);
            let advective = u.signum()
                * pow_exact((c / phi).max(u.abs()), beta)
                * pow_exact(u.abs(), 1.0 - beta);
            [u - acoustic, advective, advective, u + acoustic]
        }
        ViscosityMode::BlendArithmetic => {
            let acoustic = beta * c + (1.0 - beta) * capped_acoustic;
            let advective = beta * floored_advective + (1.0 - beta) * u;
            [u - acoustic, advective, advective, u + acoustic]
        }
    }
}

/// Rankine–Hugoniot residual `f(q_r) − f(q_l) − ũ (q_r − q_l)`.
pub fn rh_residual(
    ql: &ConservedState,
    qr: &ConservedState,
    avg: &RoeAverage,
    gas: &GasModel,
) -> Result<FluxVector, PhysicsError> {
    let wl = cons_to_prim(ql, gas)?;
    let wr = cons_to_prim(qr, gas)?;
    Ok(residual_of(ql, &wl, qr, &wr, avg.u))
}

fn residual_of(
    ql: &ConservedState,
    wl: &PrimitiveState,
    qr: &ConservedState,
    wr: &PrimitiveState,
    u_mean: f64,
) -> FluxVector {
    flux_x_unchecked(qr, wr) - flux_x_unchecked(ql, wl) - FluxVector::from(*qr - *ql) * u_mean
}

/// Reference values turning `𝔯` into the indicator strength: the residual
/// is divided by the sound speed `c` and, when `units` is set, componentwise
/// by `(ρ, ρc, ρc, ρc²)` of the given density and sound speed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IndicatorScale {
    pub c: f64,
    pub units: Option<(f64, f64)>,
}

/// How the indicator scalarizes the vector `𝔯/c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum IndicatorScaling {
    /// Divide by `c̃`; nondimensionalize with Roe-mean density and sound speed.
    RoeMean,
    /// Divide by `c̃`; nondimensionalize with the smaller density and the
    /// smaller sound speed of the two interface states.
    MinSide,
    /// Plain Euclidean norm of `𝔯/c̃`, in the units of the data.
    Dimensional,
    /// Plain Euclidean norm of `𝔯/c`, with `c` the smaller sound speed of
    /// the two interface states.
    #[default]
    DimensionalMinC,
}

impl IndicatorScaling {
    pub const ALL: [IndicatorScaling; 4] = [
        IndicatorScaling::RoeMean,
        IndicatorScaling::MinSide,
        IndicatorScaling::Dimensional,
        IndicatorScaling::DimensionalMinC,
    ];

    pub fn name(self) -> &'static str {
        match self {
            IndicatorScaling::RoeMean => "roe_mean",
            IndicatorScaling::MinSide => "min_side",
            IndicatorScaling::Dimensional => "dimensional",
            IndicatorScaling::DimensionalMinC => "dimensional_min_c",
        }
    }

    pub fn scale(
        self,
        avg: &RoeAverage,
        wl: &PrimitiveState,
        wr: &PrimitiveState,
        gas: &GasModel,
    ) -> IndicatorScale {
        let c_min = || (gas.gamma * wl.p / wl.rho).sqrt().min((gas.gamma * wr.p / wr.rho).sqrt());
        match self {
            IndicatorScaling::RoeMean => IndicatorScale {
                c: avg.c,
                units: Some((avg.rho, avg.c)),
            },
            IndicatorScaling::MinSide => IndicatorScale {
                c: avg.c,
                units: Some((wl.rho.min(wr.rho), c_min())),
            },
            IndicatorScaling::Dimensional => IndicatorScale { c: avg.c, units: None },
            IndicatorScaling::DimensionalMinC => IndicatorScale { c: c_min(), units: None },
        }
    }
}

impl fmt::Display for IndicatorScaling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IndicatorScaling {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        IndicatorScaling::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| {
                ConfigError::invalid(
                    "indicator_scaling",
                    format!("`{s}` is not one of roe_mean, min_side, dimensional, dimensional_min_c"),
                )
            })
    }
}

/// Euclidean norm of the scaled residual.
pub fn indicator_strength(residual: &FluxVector, scale: IndicatorScale) -> f64 {
    let units = match scale.units {
        Some((rho, c)) => [rho, rho * c, rho * c, rho * c * c],
        None => [1.0; 4],
    };
    residual
        .0
        .iter()
        .zip(units)
        .map(|(r, u)| {
            let x = r / (scale.c * u);
            x * x
        })
        .sum::<f64>()
        .sqrt()
}

/// `β = min(log₁₀(max(s, 1)), 1)`.
pub fn beta_from_strength(s: f64) -> f64 {
    s.max(1.0).log10().clamp(0.0, 1.0)
}

pub fn beta_indicator(residual: &FluxVector, scale: IndicatorScale) -> f64 {
    beta_from_strength(indicator_strength(residual, scale))
}

/// Indicator weight for the interface between two primitive states.
pub fn indicator_beta_for(
    wl: &PrimitiveState,
    wr: &PrimitiveState,
    scaling: IndicatorScaling,
    gas: &GasModel,
) -> Result<f64, PhysicsError> {
    let ql = prim_to_cons(wl, gas)?;
    let qr = prim_to_cons(wr, gas)?;
    let avg = average_of(&ql, wl, &qr, wr, gas)?;
    let residual = residual_of(&ql, wl, &qr, wr, avg.u);
    Ok(beta_indicator(&residual, scaling.scale(&avg, wl, wr, gas)))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BetaSource {
    /// Per-interface shock indicator.
    Indicator,
    /// Constant weight; the indicator is switched off.
    Fixed(f64),
}

/// Parameters of the numerical viscosity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ViscosityModel {
    pub mode: ViscosityMode,
    pub phi: f64,
    /// Harten parameter as a fraction of the Roe-mean sound speed; zero
    /// disables the fix.
    pub delta_frac: f64,
    pub beta: BetaSource,
    pub scaling: IndicatorScaling,
}

impl ViscosityModel {
    pub const DEFAULT_PHI: f64 = 5.0;
    pub const DEFAULT_DELTA_FRAC: f64 = 0.1;

    pub fn new(mode: ViscosityMode) -> Self {
        ViscosityModel {
            mode,
            phi: Self::DEFAULT_PHI,
            delta_frac: Self::DEFAULT_DELTA_FRAC,
            beta: BetaSource::Indicator,
            scaling: IndicatorScaling::default(),
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if !(self.phi > 0.0 && self.phi.is_finite()) {
            return Err(ConfigError::invalid("phi", format!("{} is not positive", self.phi)));
        }
        if !(0.0..1.0).contains(&self.delta_frac) {
            return Err(ConfigError::invalid(
                "delta_frac",
                format!("{} is outside [0, 1)", self.delta_frac),
            ));
        }
        if let BetaSource::Fixed(b) = self.beta {
            if !(0.0..=1.0).contains(&b) {
                return Err(ConfigError::invalid("beta", format!("{b} is outside [0, 1]")));
            }
        }
        Ok(())
    }
}

impl Default for ViscosityModel {
    fn default() -> Self {
        ViscosityModel::new(ViscosityMode::Standard)
    }
}

/// Numerical flux together with the blend weight used to build it (zero
/// for the non-blended modes).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FluxDetail {
    pub flux: FluxVector,
    pub beta: f64,
}

/// Numerical flux in x-direction between two conserved states.
pub fn interface_flux(
    ql: &ConservedState,
    qr: &ConservedState,
    model: &ViscosityModel,
    gas: &GasModel,
) -> Result<FluxVector, PhysicsError> {
    let wl = cons_to_prim(ql, gas)?;
    let wr = cons_to_prim(qr, gas)?;
    Ok(flux_detail(ql, &wl, qr, &wr, model, gas)?.flux)
}

/// Workhorse behind [`interface_flux`] for states whose primitive form is
/// already known to be valid.
pub fn flux_detail(
    ql: &ConservedState,
    wl: &PrimitiveState,
    qr: &ConservedState,
    wr: &PrimitiveState,
    model: &ViscosityModel,
    gas: &GasModel,
) -> Result<FluxDetail, PhysicsError> {
    let fl = flux_x_unchecked(ql, wl);
    let fr = flux_x_unchecked(qr, wr);
    let avg = average_of(ql, wl, qr, wr, gas)?;
    let dq = (*qr - *ql).as_array();
    let mut waves = eigensystem(&avg, gas)?.with_jump(&dq);

    let beta = if model.mode.is_blend() {
        match model.beta {
            BetaSource::Fixed(b) => b,
            BetaSource::Indicator => {
                let residual = residual_of(ql, wl, qr, wr, avg.u);
                let scale = model.scaling.scale(&avg, wl, wr, gas);
                beta_indicator(&residual, scale)
            }
        }
    } else {
        0.0
    };

    let speeds = wave_speed_model(&avg, model.mode, model.phi, beta);
    let delta = model.delta_frac * avg.c;
    waves.lambda_visc = [
        harten_fix(speeds[0], delta),
        speeds[1].abs(),
        speeds[2].abs(),
        harten_fix(speeds[3], delta),
    ];
    let dissipation = waves.weighted_sum(&waves.lambda_visc);

    let mut flux = (fl + fr) * 0.5;
    for k in 0..4 {
        flux[k] -= 0.5 * dissipation[k];
    }
    if !flux.is_finite() {
        return Err(PhysicsError::NonFiniteFlux);
    }
    Ok(FluxDetail { flux, beta })
}
