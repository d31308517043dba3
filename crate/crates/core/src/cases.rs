//! Initial data, boundary setups and seeded noise for the test battery,
//! plus the normal-shock relations used to build shocked initial data.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{ConfigError, PhysicsError};
use crate::euler::{
    cons_to_prim, entropy_scalar, prim_to_cons, validate_state, ConservedState, GasModel,
    PrimitiveState,
};
use crate::grid::{Boundary, BoundarySpec, Field2D, Order, TimeDependentBc};

/// Scalar written to slice-scatter files.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantity {
    Density,
    XVelocity,
    TransverseVelocity,
    Pressure,
    Entropy,
    VerticalMomentum,
}

impl Quantity {
    pub const ALL: [Quantity; 6] = [
        Quantity::Density,
        Quantity::Pressure,
        Quantity::XVelocity,
        Quantity::TransverseVelocity,
        Quantity::Entropy,
        Quantity::VerticalMomentum,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Quantity::Density => "density",
            Quantity::XVelocity => "u",
            Quantity::TransverseVelocity => "transverse_velocity",
            Quantity::Pressure => "pressure",
            Quantity::Entropy => "entropy",
            Quantity::VerticalMomentum => "vertical_momentum",
        }
    }

    pub fn evaluate(self, q: &ConservedState, gas: &GasModel) -> Result<f64, PhysicsError> {
        let w = cons_to_prim(q, gas)?;
        Ok(match self {
            Quantity::Density => w.rho,
            Quantity::XVelocity => w.u,
            Quantity::TransverseVelocity => w.v,
            Quantity::Pressure => w.p,
            Quantity::Entropy => entropy_scalar(&w, gas)?,
            Quantity::VerticalMomentum => q.my,
        })
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Quantity {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Quantity::ALL
            .into_iter()
            .find(|q| q.name() == s)
            .ok_or_else(|| ConfigError::invalid("quantity", format!("unknown quantity `{s}`")))
    }
}

/// Uniform noise on `[−A, A]` added independently to the selected
/// primitive variables `(ρ, u, v, p)` of every interior cell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseSpec {
    pub amplitude: f64,
    pub targets: [bool; 4],
}

impl NoiseSpec {
    pub const fn none() -> Self {
        NoiseSpec {
            amplitude: 0.0,
            targets: [false; 4],
        }
    }

    pub const fn primitive(amplitude: f64) -> Self {
        NoiseSpec {
            amplitude,
            targets: [true; 4],
        }
    }
}

/// Perturbs the interior of `field`. The RNG is seeded here and owned by
/// the call, so equal seeds give identical fields.
pub fn apply_noise(
    field: &mut Field2D,
    spec: &NoiseSpec,
    seed: u64,
    gas: &GasModel,
) -> Result<(), PhysicsError> {
    let a = spec.amplitude;
    if a == 0.0 || !spec.targets.contains(&true) {
        return Ok(());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for j in 0..field.ny {
        for i in 0..field.nx {
            let base = cons_to_prim(&field.cell(i, j), gas)?.as_array();
            let mut redraws = 0;
            let perturbed = loop {
                let mut w = base;
                for (x, on) in w.iter_mut().zip(spec.targets) {
                    if on {
                        *x += rng.gen_range(-a..=a);
                    }
                }
                let w = PrimitiveState::from_array(w);
                match validate_state(&w) {
                    Ok(()) => break w,
                    Err(e) if redraws >= 100 => return Err(e),
                    Err(_) => {
                        redraws += 1;
                        log::warn!("noise made cell ({i}, {j}) inadmissible; redrawing");
                    }
                }
            };
            *field.cell_mut(i, j) = prim_to_cons(&perturbed, gas)?;
        }
    }
    Ok(())
}

/// Both sides of a stationary normal shock.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShockPair {
    pub upstream: PrimitiveState,
    pub downstream: PrimitiveState,
}

/// Stationary normal shock with upstream Mach number `mach`. The upstream
/// density and velocities are taken from `upstream`; its pressure is set so
/// that `|u|/c = mach`. The tangential velocity passes unchanged.
pub fn rankine_hugoniot_downstream(
    upstream: PrimitiveState,
    mach: f64,
    gas: &GasModel,
) -> Result<ShockPair, PhysicsError> {
    if mach.is_nan() || mach <= 1.0 {
        return Err(PhysicsError::SubsonicShock(mach));
    }
    let g = gas.gamma;
    let m2 = mach * mach;
    let p1 = upstream.rho * upstream.u * upstream.u / (g * m2);
    let up = PrimitiveState::new(upstream.rho, upstream.u, upstream.v, p1);
    validate_state(&up)?;
    let density_ratio = (g + 1.0) * m2 / ((g - 1.0) * m2 + 2.0);
    let pressure_ratio = (2.0 * g * m2 - (g - 1.0)) / (g + 1.0);
    let down = PrimitiveState::new(
        up.rho * density_ratio,
        up.u / density_ratio,
        up.v,
        p1 * pressure_ratio,
    );
    Ok(ShockPair {
        upstream: up,
        downstream: down,
    })
}

/// How the initial data is laid out over the grid.
#[derive(Debug, Clone, PartialEq)]
pub enum Initializer {
    Uniform(PrimitiveState),
    /// `left` for cell centers with `x < position`, `right` otherwise.
    Split {
        position: f64,
        left: PrimitiveState,
        right: PrimitiveState,
    },
    /// A split whose upstream part has zero velocity in grid row `row`.
    Elling {
        position: f64,
        upstream: PrimitiveState,
        downstream: PrimitiveState,
        row: isize,
    },
    /// Three horizontal bands with opposite x-velocities and a sinusoidal
    /// y-velocity perturbation.
    ShearBands {
        center: f64,
        half_width: f64,
        inner_u: f64,
        outer_u: f64,
        amplitude: f64,
        wavelength: f64,
    },
    /// Oblique shock through `(ramp_x, 0)` inclined at 60° to the x-axis.
    ObliqueShock {
        ramp_x: f64,
        pre: PrimitiveState,
        post: PrimitiveState,
    },
}

impl Initializer {
    pub fn state(&self, _i: isize, j: isize, x: f64, y: f64) -> PrimitiveState {
        match *self {
            Initializer::Uniform(w) => w,
            Initializer::Split { position, left, right } => {
                if x < position {
                    left
                } else {
                    right
                }
            }
            Initializer::Elling {
                position,
                upstream,
                downstream,
                row,
            } => {
                if x >= position {
                    downstream
                } else if j == row {
                    PrimitiveState { u: 0.0, v: 0.0, ..upstream }
                } else {
                    upstream
                }
            }
            Initializer::ShearBands {
                center,
                half_width,
                inner_u,
                outer_u,
                amplitude,
                wavelength,
            } => {
                let u = if (y - center).abs() < half_width { inner_u } else { outer_u };
                PrimitiveState::new(1.0, u, amplitude * (2.0 * PI * x / wavelength).sin(), 1.0)
            }
            Initializer::ObliqueShock { ramp_x, pre, post } => {
                if x < ramp_x + y / 3f64.sqrt() {
                    post
                } else {
                    pre
                }
            }
        }
    }
}

/// Region over which density oscillations are measured.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PlateauWindow {
    /// Union of fixed x-intervals.
    Fixed(&'static [(f64, f64)]),
    /// From `x0` up to `margin` short of the foremost cell whose density
    /// exceeds `threshold`, scanning from the right.
    BehindShock { x0: f64, margin: f64, threshold: f64 },
}

/// A fully specified test problem.
#[derive(Debug, Clone, PartialEq)]
pub struct TestCase {
    pub name: String,
    pub lower: (f64, f64),
    pub upper: (f64, f64),
    pub nx: usize,
    pub ny: usize,
    pub boundaries: BoundarySpec,
    pub init: Initializer,
    pub noise: NoiseSpec,
    pub t_end: f64,
    pub quantity: Quantity,
    pub required_order: Option<Order>,
    pub plateau: Option<PlateauWindow>,
}

impl TestCase {
    /// Noise-free initial data on the interior and ghost cells, then seeded
    /// noise on the interior.
    pub fn initial_field(&self, seed: u64, gas: &GasModel) -> Result<Field2D, PhysicsError> {
        let mut field = Field2D::from_primitive(self.nx, self.ny, self.lower, self.upper, gas, |i, j, x, y| {
            self.init.state(i, j, x, y)
        })?;
        apply_noise(&mut field, &self.noise, seed, gas)?;
        Ok(field)
    }
}

/// Grid and gas choices that change how a case is built.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CaseOptions {
    pub gas: GasModel,
    pub nx: Option<usize>,
    pub ny: Option<usize>,
}

/// Groups of runnable case names, one group per test problem.
pub const CASE_GROUPS: [(&str, &[&str]); 8] = [
    ("steady shear wave", &["shear_1d", "shear_2d"]),
    ("colliding flow", &["colliding_1d", "colliding_2d"]),
    ("uniform flow", &["uniform_m20", "uniform_m0.05"]),
    ("steady shock", &["steady_shock"]),
    ("quirk", &["quirk"]),
    ("elling", &["elling"]),
    ("kelvin-helmholtz", &["kelvin_helmholtz"]),
    ("double mach reflection", &["dmr"]),
];

pub fn case_names() -> impl Iterator<Item = &'static str> {
    CASE_GROUPS.iter().flat_map(|(_, names)| names.iter().copied())
}

pub fn make_case(name: &str) -> Result<TestCase, ConfigError> {
    build_case(name, &CaseOptions::default())
}

/// The upstream/downstream pair of the Mach-20 steady shock.
pub fn mach20_shock(gas: &GasModel) -> ShockPair {
    rankine_hugoniot_downstream(PrimitiveState::new(1.0, 1.0, 0.0, 1.0), 20.0, gas)
        .expect("Mach 20 > 1")
}

/// Pre- and post-shock states of a Mach-10 shock running into gas at rest
/// with `ρ = 1.4, p = 1`, post-shock velocity directed at −30°.
pub fn double_mach_states(gas: &GasModel) -> (PrimitiveState, PrimitiveState) {
    let mach = 10.0;
    let rho = 1.4;
    let c = (gas.gamma / rho).sqrt();
    let speed = mach * c;
    let pair = rankine_hugoniot_downstream(PrimitiveState::new(rho, speed, 0.0, 1.0), mach, gas)
        .expect("Mach 10 > 1");
    let normal = speed - pair.downstream.u;
    let (s, co) = (PI / 6.0).sin_cos();
    let pre = PrimitiveState::new(rho, 0.0, 0.0, pair.upstream.p);
    let post = PrimitiveState::new(pair.downstream.rho, normal * co, -normal * s, pair.downstream.p);
    (pre, post)
}

pub fn build_case(name: &str, opts: &CaseOptions) -> Result<TestCase, ConfigError> {
    let gas = opts.gas;
    let g = gas.gamma;
    let quasi_1d = |left, right| BoundarySpec {
        left,
        right,
        bottom: Boundary::Periodic,
        top: Boundary::Periodic,
    };
    let grid = |nx: usize, ny: usize| (opts.nx.unwrap_or(nx), opts.ny.unwrap_or(ny));

    let case = match name {
        "shear_1d" | "shear_2d" => {
            let (nx, ny) = grid(40, if name == "shear_1d" { 1 } else { 20 });
            TestCase {
                name: name.into(),
                lower: (0.0, 0.0),
                upper: (2.0, 1.0),
                nx,
                ny,
                boundaries: quasi_1d(Boundary::Outflow, Boundary::Outflow),
                init: Initializer::Split {
                    position: 1.0,
                    left: PrimitiveState::new(1.0, 0.0, -1.0, 1.0),
                    right: PrimitiveState::new(1.0, 0.0, 1.0, 1.0),
                },
                noise: NoiseSpec::primitive(1e-6),
                t_end: 2.5,
                quantity: Quantity::TransverseVelocity,
                required_order: None,
                plateau: None,
            }
        }
        "colliding_1d" | "colliding_2d" => {
            let (nx, ny) = grid(60, if name == "colliding_1d" { 1 } else { 30 });
            TestCase {
                name: name.into(),
                lower: (0.0, 0.0),
                upper: (60.0, 30.0),
                nx,
                ny,
                boundaries: quasi_1d(Boundary::Outflow, Boundary::Outflow),
                init: Initializer::Split {
                    position: 30.0,
                    left: PrimitiveState::new(1.0, 20.0, 0.0, 1.0),
                    right: PrimitiveState::new(1.0, -20.0, 0.0, 1.0),
                },
                noise: NoiseSpec::primitive(1e-6),
                t_end: 30.0,
                quantity: Quantity::Density,
                required_order: None,
                // the wall-heating dip at x = 30 is excluded
                plateau: Some(PlateauWindow::Fixed(&[(5.0, 25.0), (35.0, 55.0)])),
            }
        }
        "uniform_m20" | "uniform_m0.05" => {
            let mach: f64 = if name == "uniform_m20" { 20.0 } else { 0.05 };
            let (nx, ny) = grid(40, 20);
            TestCase {
                name: name.into(),
                lower: (0.0, 0.0),
                upper: (2.0, 1.0),
                nx,
                ny,
                boundaries: quasi_1d(Boundary::Outflow, Boundary::Outflow),
                init: Initializer::Uniform(PrimitiveState::new(1.0, 1.0, 0.0, 1.0 / (g * mach * mach))),
                noise: NoiseSpec::primitive(1e-6),
                t_end: 5.0,
                quantity: Quantity::Density,
                required_order: None,
                plateau: None,
            }
        }
        "steady_shock" | "elling" => {
            let (nx, ny) = grid(100, 40);
            let pair = mach20_shock(&gas);
            let position = 50.0;
            let init = if name == "elling" {
                Initializer::Elling {
                    position,
                    upstream: pair.upstream,
                    downstream: pair.downstream,
                    row: (ny / 2) as isize,
                }
            } else {
                Initializer::Split {
                    position,
                    left: pair.upstream,
                    right: pair.downstream,
                }
            };
            TestCase {
                name: name.into(),
                lower: (0.0, 0.0),
                upper: (100.0, 40.0),
                nx,
                ny,
                boundaries: quasi_1d(Boundary::Frozen, Boundary::Outflow),
                init,
                noise: NoiseSpec::primitive(1e-6),
                t_end: 100.0,
                quantity: Quantity::Density,
                required_order: None,
                plateau: None,
            }
        }
        "quirk" => {
            let (nx, ny) = grid(1600, 20);
            let inflow = PrimitiveState::new(5.26829268, 4.86111111, 0.0, 29.88095238);
            TestCase {
                name: name.into(),
                lower: (0.0, 0.0),
                upper: (1600.0, 20.0),
                nx,
                ny,
                boundaries: BoundarySpec {
                    left: Boundary::Dirichlet(inflow),
                    right: Boundary::Outflow,
                    bottom: Boundary::Reflective,
                    top: Boundary::Reflective,
                },
                init: Initializer::Uniform(PrimitiveState::new(1.0, 0.0, 0.0, 1.0 / g)),
                noise: NoiseSpec::primitive(1e-3),
                t_end: 150.0,
                quantity: Quantity::Density,
                required_order: None,
                plateau: Some(PlateauWindow::BehindShock {
                    x0: 100.0,
                    margin: 50.0,
                    threshold: 3.0,
                }),
            }
        }
        "kelvin_helmholtz" => {
            let (nx, ny) = grid(100, 100);
            let speed = g.sqrt() / 2.0;
            TestCase {
                name: name.into(),
                lower: (0.0, 0.0),
                upper: (1.0, 1.0),
                nx,
                ny,
                boundaries: BoundarySpec::periodic(),
                init: Initializer::ShearBands {
                    center: 0.5,
                    half_width: 0.25,
                    inner_u: -speed,
                    outer_u: speed,
                    amplitude: 0.01,
                    wavelength: 1.0,
                },
                noise: NoiseSpec::none(),
                t_end: 4.0,
                quantity: Quantity::Entropy,
                required_order: Some(Order::Second),
                plateau: None,
            }
        }
        "dmr" => {
            let (nx, ny) = grid(480, 240);
            let (pre, post) = double_mach_states(&gas);
            let ramp_x = 1.0 / 6.0;
            let cot = 1.0 / 3f64.sqrt();
            // normal shock speed 10·c_pre, traced along x
            let speed_x = 10.0 * (g * pre.p / pre.rho).sqrt() / (PI / 3.0).sin();
            TestCase {
                name: name.into(),
                lower: (0.0, 0.0),
                upper: (4.0, 2.0),
                nx,
                ny,
                boundaries: BoundarySpec {
                    left: Boundary::Frozen,
                    right: Boundary::Outflow,
                    bottom: Boundary::TimeDependent(TimeDependentBc::RampWall { ramp_x, post }),
                    top: Boundary::TimeDependent(TimeDependentBc::ObliqueShock {
                        ramp_x,
                        cot_angle: cot,
                        speed_x,
                        pre,
                        post,
                    }),
                },
                init: Initializer::ObliqueShock { ramp_x, pre, post },
                noise: NoiseSpec::none(),
                t_end: 0.2,
                quantity: Quantity::VerticalMomentum,
                required_order: None,
                plateau: None,
            }
        }
        other => return Err(ConfigError::UnknownCase(other.to_string())),
    };
    Ok(case)
}

/// One-dimensional Sod shock tube on `[0, 1]` with `nx` cells, for
/// convergence checks against the exact Riemann solution.
pub fn sod_case(nx: usize) -> TestCase {
    TestCase {
        name: "sod".into(),
        lower: (0.0, 0.0),
        upper: (1.0, 1.0),
        nx,
        ny: 1,
        boundaries: BoundarySpec {
            left: Boundary::Outflow,
            right: Boundary::Outflow,
            bottom: Boundary::Periodic,
            top: Boundary::Periodic,
        },
        init: Initializer::Split {
            position: 0.5,
            left: PrimitiveState::new(1.0, 0.0, 0.0, 1.0),
            right: PrimitiveState::new(0.125, 0.0, 0.0, 0.1),
        },
        noise: NoiseSpec::none(),
        t_end: 0.2,
        quantity: Quantity::Density,
        required_order: None,
        plateau: None,
    }
}
