//! Structured Cartesian finite volumes: ghost cells, boundary conditions,
//! MUSCL reconstruction, time-step control and explicit time integration.
//!
//! Fluxes in x and y are evaluated from the same stage state (unsplit,
//! dimension by dimension). The y-direction reuses the x-direction Roe flux
//! through a rotation of the states. First order uses the explicit Euler
//! method on piecewise-constant data; second order uses minmod-limited
//! linear reconstruction of the primitive variables with the two-stage
//! strong-stability-preserving Runge–Kutta method.

use std::fmt;

use crate::error::{ConfigError, PhysicsError};
use crate::euler::{
    cons_to_prim, prim_to_cons, rotate_flux_from_x, rotate_prim_to_x, rotate_to_x,
    ConservedState, FluxVector, GasModel, PrimitiveState,
};
use crate::roe::{flux_detail, ViscosityModel};

/// Width of the ghost layer; enough for MUSCL stencils.
pub const GHOST: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Order {
    First,
    Second,
}

impl Order {
    pub fn as_u8(self) -> u8 {
        match self {
            Order::First => 1,
            Order::Second => 2,
        }
    }

    pub fn from_u8(n: u8) -> Result<Self, ConfigError> {
        match n {
            1 => Ok(Order::First),
            2 => Ok(Order::Second),
            _ => Err(ConfigError::invalid("order", format!("{n} is not 1 or 2"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    X,
    Y,
}

/// Cell-centered conserved data on a uniform grid with a ghost layer.
#[derive(Debug, Clone, PartialEq)]
pub struct Field2D {
    pub nx: usize,
    pub ny: usize,
    pub dx: f64,
    pub dy: f64,
    pub ghost: usize,
    /// Lower-left corner of the interior domain.
    pub origin: (f64, f64),
    data: Vec<ConservedState>,
}

impl Field2D {
    /// Evaluates `init(i, j, x, y)` at every cell center, ghost cells
    /// included (ghost indices are negative or beyond `nx`/`ny`).
    pub fn from_primitive<F>(
        nx: usize,
        ny: usize,
        lower: (f64, f64),
        upper: (f64, f64),
        gas: &GasModel,
        mut init: F,
    ) -> Result<Self, PhysicsError>
    where
        F: FnMut(isize, isize, f64, f64) -> PrimitiveState,
    {
        assert!(nx >= 1 && ny >= 1, "grid needs at least one cell per direction");
        let dx = (upper.0 - lower.0) / nx as f64;
        let dy = (upper.1 - lower.1) / ny as f64;
        assert!(dx > 0.0 && dy > 0.0, "domain extents must be positive");
        let mut field = Field2D {
            nx,
            ny,
            dx,
            dy,
            ghost: GHOST,
            origin: lower,
            data: vec![ConservedState::default(); (nx + 2 * GHOST) * (ny + 2 * GHOST)],
        };
        let g = GHOST as isize;
        for j in -g..ny as isize + g {
            for i in -g..nx as isize + g {
                let (x, y) = field.center(i, j);
                let q = prim_to_cons(&init(i, j, x, y), gas)?;
                *field.at_mut(i, j) = q;
            }
        }
        Ok(field)
    }

    #[inline]
    fn index(&self, i: isize, j: isize) -> usize {
        let g = self.ghost as isize;
        debug_assert!(i >= -g && i < self.nx as isize + g);
        debug_assert!(j >= -g && j < self.ny as isize + g);
        ((j + g) as usize) * (self.nx + 2 * self.ghost) + (i + g) as usize
    }

    /// Any cell, ghosts included.
    #[inline]
    pub fn at(&self, i: isize, j: isize) -> ConservedState {
        self.data[self.index(i, j)]
    }

    #[inline]
    pub fn at_mut(&mut self, i: isize, j: isize) -> &mut ConservedState {
        let k = self.index(i, j);
        &mut self.data[k]
    }

    /// Interior cell.
    #[inline]
    pub fn cell(&self, i: usize, j: usize) -> ConservedState {
        self.at(i as isize, j as isize)
    }

    #[inline]
    pub fn cell_mut(&mut self, i: usize, j: usize) -> &mut ConservedState {
        self.at_mut(i as isize, j as isize)
    }

    pub fn center(&self, i: isize, j: isize) -> (f64, f64) {
        (
            self.origin.0 + (i as f64 + 0.5) * self.dx,
            self.origin.1 + (j as f64 + 0.5) * self.dy,
        )
    }

    pub fn primitive(&self, i: usize, j: usize, gas: &GasModel) -> Result<PrimitiveState, PhysicsError> {
        cons_to_prim(&self.cell(i, j), gas)
    }

    /// Interior cells in row-major order (`j` outer, `i` inner).
    pub fn interior(&self) -> impl Iterator<Item = (usize, usize, ConservedState)> + '_ {
        (0..self.ny).flat_map(move |j| (0..self.nx).map(move |i| (i, j, self.cell(i, j))))
    }

    /// Domain integrals of the conserved variables.
    pub fn totals(&self) -> [f64; 4] {
        let mut sum = [0.0; 4];
        for (_, _, q) in self.interior() {
            for (s, x) in sum.iter_mut().zip(q.as_array()) {
                *s += x;
            }
        }
        sum.map(|s| s * self.dx * self.dy)
    }

    fn first_invalid(&self, gas: &GasModel) -> Option<CellFault> {
        self.interior().find_map(|(i, j, q)| {
            cons_to_prim(&q, gas).err().map(|cause| CellFault {
                cell: (i as isize, j as isize),
                cause,
            })
        })
    }
}

/// Boundary condition on one side of the domain.
#[derive(Debug, Clone, PartialEq)]
pub enum Boundary {
    Dirichlet(PrimitiveState),
    /// Ghost values stay at whatever the initial data put there.
    Frozen,
    /// Zero-gradient extrapolation.
    Outflow,
    Reflective,
    Periodic,
    TimeDependent(TimeDependentBc),
}

/// Boundary conditions whose ghost values depend on position and time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TimeDependentBc {
    /// Post-shock inflow left of `ramp_x`, reflecting wall right of it.
    RampWall { ramp_x: f64, post: PrimitiveState },
    /// Exact position of an oblique shock moving along the top boundary:
    /// post-shock state for `x < ramp_x + y·cot_angle + speed_x·t`.
    ObliqueShock {
        ramp_x: f64,
        cot_angle: f64,
        speed_x: f64,
        pre: PrimitiveState,
        post: PrimitiveState,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundarySpec {
    pub left: Boundary,
    pub right: Boundary,
    pub bottom: Boundary,
    pub top: Boundary,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Side {
    Left,
    Right,
    Bottom,
    Top,
}

impl BoundarySpec {
    pub fn periodic() -> Self {
        BoundarySpec {
            left: Boundary::Periodic,
            right: Boundary::Periodic,
            bottom: Boundary::Periodic,
            top: Boundary::Periodic,
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let lr = matches!(self.left, Boundary::Periodic) == matches!(self.right, Boundary::Periodic);
        let bt = matches!(self.bottom, Boundary::Periodic) == matches!(self.top, Boundary::Periodic);
        if !(lr && bt) {
            return Err(ConfigError::invalid(
                "boundaries",
                "periodic conditions must be paired on opposite sides",
            ));
        }
        Ok(())
    }

    /// Fills all ghost cells adjacent to the interior for time `t`.
    pub fn apply(&self, field: &mut Field2D, t: f64, gas: &GasModel) -> Result<(), PhysicsError> {
        fill_side(field, &self.left, Side::Left, t, gas)?;
        fill_side(field, &self.right, Side::Right, t, gas)?;
        fill_side(field, &self.bottom, Side::Bottom, t, gas)?;
        fill_side(field, &self.top, Side::Top, t, gas)
    }
}

fn mirror(q: ConservedState, dir: Direction) -> ConservedState {
    match dir {
        Direction::X => ConservedState::new(q.rho, -q.mx, q.my, q.e),
        Direction::Y => ConservedState::new(q.rho, q.mx, -q.my, q.e),
    }
}

fn fill_side(
    field: &mut Field2D,
    bc: &Boundary,
    side: Side,
    t: f64,
    gas: &GasModel,
) -> Result<(), PhysicsError> {
    if matches!(bc, Boundary::Frozen) {
        return Ok(());
    }
    let (n, m, dir) = match side {
        Side::Left | Side::Right => (field.nx as isize, field.ny, Direction::X),
        Side::Bottom | Side::Top => (field.ny as isize, field.nx, Direction::Y),
    };
    let fixed = match bc {
        Boundary::Dirichlet(w) => Some(prim_to_cons(w, gas)?),
        _ => None,
    };
    let g = field.ghost as isize;
    // (normal index, tangential index) -> (i, j)
    let ij = |normal: isize, tangential: isize| match dir {
        Direction::X => (normal, tangential),
        Direction::Y => (tangential, normal),
    };
    for tan in 0..m as isize {
        for k in 0..g {
            // ghost layer k counted outward from the boundary
            let (ghost_n, inner_n, periodic_n) = match side {
                Side::Left | Side::Bottom => (-1 - k, k.min(n - 1), (-1 - k).rem_euclid(n)),
                Side::Right | Side::Top => (n + k, (n - 1 - k).max(0), (n + k).rem_euclid(n)),
            };
            let (gi, gj) = ij(ghost_n, tan);
            let value = match bc {
                Boundary::Dirichlet(_) => fixed.unwrap(),
                Boundary::Frozen => unreachable!(),
                Boundary::Outflow => {
                    let edge = match side {
                        Side::Left | Side::Bottom => 0,
                        Side::Right | Side::Top => n - 1,
                    };
                    let (i, j) = ij(edge, tan);
                    field.at(i, j)
                }
                Boundary::Reflective => {
                    let (i, j) = ij(inner_n, tan);
                    mirror(field.at(i, j), dir)
                }
                Boundary::Periodic => {
                    let (i, j) = ij(periodic_n, tan);
                    field.at(i, j)
                }
                Boundary::TimeDependent(td) => {
                    let (x, y) = field.center(gi, gj);
                    match *td {
                        TimeDependentBc::RampWall { ramp_x, post } => {
                            if x < ramp_x {
                                prim_to_cons(&post, gas)?
                            } else {
                                let (i, j) = ij(inner_n, tan);
                                mirror(field.at(i, j), dir)
                            }
                        }
                        TimeDependentBc::ObliqueShock {
                            ramp_x,
                            cot_angle,
                            speed_x,
                            pre,
                            post,
                        } => {
                            let front = ramp_x + y * cot_angle + speed_x * t;
                            prim_to_cons(if x < front { &post } else { &pre }, gas)?
                        }
                    }
                }
            };
            *field.at_mut(gi, gj) = value;
        }
    }
    Ok(())
}

/// `0` on sign disagreement, otherwise the argument of smaller magnitude.
pub fn minmod(a: f64, b: f64) -> f64 {
    if a * b <= 0.0 {
        0.0
    } else if a.abs() < b.abs() {
        a
    } else {
        b
    }
}

fn limited_slope(wm: &PrimitiveState, w0: &PrimitiveState, wp: &PrimitiveState) -> [f64; 4] {
    let (m, c, p) = (wm.as_array(), w0.as_array(), wp.as_array());
    [0, 1, 2, 3].map(|k| minmod(c[k] - m[k], p[k] - c[k]))
}

fn extrapolate(w: &PrimitiveState, slope: &[f64; 4], sign: f64) -> PrimitiveState {
    let a = w.as_array();
    PrimitiveState::from_array([0, 1, 2, 3].map(|k| a[k] + sign * 0.5 * slope[k]))
}

/// Left/right states at the `n + 1` interfaces of a line of `n` cells.
/// `line` holds the cells padded with [`GHOST`] ghost cells on each side.
pub fn muscl_line(line: &[PrimitiveState], _gas: &GasModel) -> Vec<(PrimitiveState, PrimitiveState)> {
    let g = GHOST;
    let n = line.len() - 2 * g;
    // face values of cells g-1 ..= g+n
    let faces: Vec<(PrimitiveState, PrimitiveState)> = (g - 1..=g + n)
        .map(|c| {
            let slope = limited_slope(&line[c - 1], &line[c], &line[c + 1]);
            let lo = extrapolate(&line[c], &slope, -1.0);
            let hi = extrapolate(&line[c], &slope, 1.0);
            if crate::euler::validate_state(&lo).is_ok() && crate::euler::validate_state(&hi).is_ok() {
                (lo, hi)
            } else {
                log::debug!("reconstruction in line cell {c} inadmissible; using constant data");
                (line[c], line[c])
            }
        })
        .collect();
    (0..=n).map(|m| (faces[m].1, faces[m + 1].0)).collect()
}

/// Interface states of a whole field, one vector per grid line: rows for
/// [`Direction::X`], columns for [`Direction::Y`]. Ghost cells must be
/// populated. States are in the unrotated frame.
pub fn reconstruct_muscl(
    field: &Field2D,
    direction: Direction,
    gas: &GasModel,
) -> Result<Vec<Vec<(PrimitiveState, PrimitiveState)>>, PhysicsError> {
    let g = field.ghost as isize;
    let (lines, len) = match direction {
        Direction::X => (field.ny, field.nx as isize),
        Direction::Y => (field.nx, field.ny as isize),
    };
    let mut out = Vec::with_capacity(lines);
    for l in 0..lines as isize {
        let line = (-g..len + g)
            .map(|k| {
                let q = match direction {
                    Direction::X => field.at(k, l),
                    Direction::Y => field.at(l, k),
                };
                cons_to_prim(&q, gas)
            })
            .collect::<Result<Vec<_>, _>>()?;
        out.push(muscl_line(&line, gas));
    }
    Ok(out)
}

/// Stable explicit step `cfl / max((|u| + c)/dx + (|v| + c)/dy)`.
pub fn compute_dt(field: &Field2D, cfl: f64, gas: &GasModel) -> Result<f64, CellFault> {
    let mut rate: f64 = 0.0;
    for (i, j, q) in field.interior() {
        let w = cons_to_prim(&q, gas).map_err(|cause| CellFault {
            cell: (i as isize, j as isize),
            cause,
        })?;
        let c = (gas.gamma * w.p / w.rho).sqrt();
        rate = rate.max((w.u.abs() + c) / field.dx + (w.v.abs() + c) / field.dy);
    }
    let dt = cfl / rate;
    if dt.is_finite() && dt > 0.0 {
        Ok(dt)
    } else {
        Err(CellFault {
            cell: (0, 0),
            cause: PhysicsError::NonFinite,
        })
    }
}

/// Location and cause of a failure inside the field.
#[derive(Debug, Clone, PartialEq)]
pub struct CellFault {
    pub cell: (isize, isize),
    pub cause: PhysicsError,
}

/// A run stopped by a nonphysical state.
#[derive(Debug, Clone, PartialEq)]
pub struct AbortDiagnostic {
    pub time: f64,
    pub step: u64,
    pub stage: u8,
    pub cell: (isize, isize),
    pub cause: PhysicsError,
}

impl fmt::Display for AbortDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} in cell ({}, {}) at t={} (step {}, stage {})",
            self.cause, self.cell.0, self.cell.1, self.time, self.step, self.stage
        )
    }
}

/// Everything the stepper needs besides the field.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub cfl: f64,
    pub t_end: f64,
    pub order: Order,
    pub model: ViscosityModel,
    pub gas: GasModel,
    pub seed: u64,
    /// Extra snapshot times before `t_end`; `t_end` is always written.
    pub output_times: Vec<f64>,
    pub max_steps: u64,
}

impl RunConfig {
    pub const DEFAULT_CFL: f64 = 0.45;
    pub const DEFAULT_SEED: u64 = 20_210_614;

    pub fn validate(&self) -> Result<(), ConfigError> {
        if !(self.cfl > 0.0 && self.cfl < 1.0) {
            return Err(ConfigError::invalid("cfl", format!("{} is outside (0, 1)", self.cfl)));
        }
        if !(self.t_end >= 0.0 && self.t_end.is_finite()) {
            return Err(ConfigError::invalid("t_end", format!("{} is negative", self.t_end)));
        }
        if let Some(t) = self.output_times.iter().find(|t| !(**t >= 0.0 && **t <= self.t_end)) {
            return Err(ConfigError::invalid(
                "output_times",
                format!("{t} is outside [0, t_end]"),
            ));
        }
        self.model.validate()
    }
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            cfl: Self::DEFAULT_CFL,
            t_end: 1.0,
            order: Order::First,
            model: ViscosityModel::default(),
            gas: GasModel::default(),
            seed: Self::DEFAULT_SEED,
            output_times: Vec::new(),
            max_steps: 10_000_000,
        }
    }
}

/// Numerical fluxes at the `n + 1` interfaces of one grid line in the
/// rotated x-frame. `q` and `w` include the ghost padding.
fn line_fluxes(
    q: &[ConservedState],
    w: &[PrimitiveState],
    order: Order,
    model: &ViscosityModel,
    gas: &GasModel,
    out: &mut Vec<FluxVector>,
) -> Result<(), (usize, PhysicsError)> {
    let g = GHOST;
    let n = q.len() - 2 * g;
    out.clear();
    match order {
        Order::First => {
            for m in 0..=n {
                let (a, b) = (g + m - 1, g + m);
                let d = flux_detail(&q[a], &w[a], &q[b], &w[b], model, gas).map_err(|e| (m, e))?;
                out.push(d.flux);
            }
        }
        Order::Second => {
            for (m, (wl, wr)) in muscl_line(w, gas).into_iter().enumerate() {
                let ql = prim_to_cons(&wl, gas).map_err(|e| (m, e))?;
                let qr = prim_to_cons(&wr, gas).map_err(|e| (m, e))?;
                let d = flux_detail(&ql, &wl, &qr, &wr, model, gas).map_err(|e| (m, e))?;
                out.push(d.flux);
            }
        }
    }
    Ok(())
}

/// Time derivative `−(ΔG_x/dx + ΔG_y/dy)` of every interior cell, row-major.
/// Ghost cells must be populated.
pub fn spatial_residual(
    field: &Field2D,
    order: Order,
    model: &ViscosityModel,
    gas: &GasModel,
) -> Result<Vec<ConservedState>, CellFault> {
    let (nx, ny) = (field.nx, field.ny);
    let g = field.ghost as isize;
    let mut rhs = vec![ConservedState::default(); nx * ny];
    let mut qline = Vec::new();
    let mut wline = Vec::new();
    let mut fluxes = Vec::new();

    let to_prim = |q: &ConservedState, i: isize, j: isize| {
        cons_to_prim(q, gas).map_err(|cause| CellFault { cell: (i, j), cause })
    };

    for j in 0..ny as isize {
        qline.clear();
        wline.clear();
        for i in -g..nx as isize + g {
            let q = field.at(i, j);
            wline.push(to_prim(&q, i, j)?);
            qline.push(q);
        }
        line_fluxes(&qline, &wline, order, model, gas, &mut fluxes).map_err(|(m, cause)| {
            CellFault {
                cell: (m as isize, j),
                cause,
            }
        })?;
        let row = &mut rhs[j as usize * nx..(j as usize + 1) * nx];
        for (i, r) in row.iter_mut().enumerate() {
            let df = fluxes[i + 1] - fluxes[i];
            *r = ConservedState::from_array(df.0) * (-1.0 / field.dx);
        }
    }

    for i in 0..nx as isize {
        qline.clear();
        wline.clear();
        for j in -g..ny as isize + g {
            let q = field.at(i, j);
            let w = to_prim(&q, i, j)?;
            qline.push(rotate_to_x(&q));
            wline.push(rotate_prim_to_x(&w));
        }
        line_fluxes(&qline, &wline, order, model, gas, &mut fluxes).map_err(|(m, cause)| {
            CellFault {
                cell: (i, m as isize),
                cause,
            }
        })?;
        for j in 0..ny {
            let df = rotate_flux_from_x(&fluxes[j + 1]) - rotate_flux_from_x(&fluxes[j]);
            rhs[j * nx + i as usize] -= ConservedState::from_array(df.0) * (1.0 / field.dy);
        }
    }
    Ok(rhs)
}

/// Advances `field` by one step of size `dt` from time `t`. Boundaries are
/// applied before every stage. Returns the failing stage on error.
pub fn step(
    field: &mut Field2D,
    bcs: &BoundarySpec,
    t: f64,
    dt: f64,
    config: &RunConfig,
) -> Result<(), (u8, CellFault)> {
    let gas = &config.gas;
    let model = &config.model;
    let ghost_fault = |cause| (1, CellFault { cell: (-1, -1), cause });
    bcs.apply(field, t, gas).map_err(ghost_fault)?;
    let r0 = spatial_residual(field, config.order, model, gas).map_err(|f| (1, f))?;
    match config.order {
        Order::First => {
            update(field, &r0, dt, |q, r| q + r);
            field.first_invalid(gas).map_or(Ok(()), |f| Err((1, f)))
        }
        Order::Second => {
            let start = field.data.clone();
            update(field, &r0, dt, |q, r| q + r);
            if let Some(f) = field.first_invalid(gas) {
                return Err((1, f));
            }
            bcs.apply(field, t + dt, gas)
                .map_err(|cause| (2, CellFault { cell: (-1, -1), cause }))?;
            let r1 = spatial_residual(field, config.order, model, gas).map_err(|f| (2, f))?;
            let (nx, ny, g) = (field.nx, field.ny, field.ghost);
            for j in 0..ny {
                for i in 0..nx {
                    let k = (j + g) * (nx + 2 * g) + i + g;
                    let stage = field.data[k] + r1[j * nx + i] * dt;
                    field.data[k] = (start[k] + stage) * 0.5;
                }
            }
            field.first_invalid(gas).map_or(Ok(()), |f| Err((2, f)))
        }
    }
}

fn update<F>(field: &mut Field2D, rhs: &[ConservedState], dt: f64, combine: F)
where
    F: Fn(ConservedState, ConservedState) -> ConservedState,
{
    let (nx, ny) = (field.nx, field.ny);
    for j in 0..ny {
        for i in 0..nx {
            let q = field.cell(i, j);
            *field.cell_mut(i, j) = combine(q, rhs[j * nx + i] * dt);
        }
    }
}

/// Owns a field during a run and advances it in time.
#[derive(Debug, Clone)]
pub struct Solver {
    pub field: Field2D,
    pub bcs: BoundarySpec,
    pub config: RunConfig,
    pub time: f64,
    pub steps: u64,
}

impl Solver {
    pub fn new(field: Field2D, bcs: BoundarySpec, config: RunConfig) -> Result<Self, ConfigError> {
        config.validate()?;
        bcs.validate()?;
        Ok(Solver {
            field,
            bcs,
            config,
            time: 0.0,
            steps: 0,
        })
    }

    fn abort(&self, stage: u8, fault: CellFault) -> AbortDiagnostic {
        AbortDiagnostic {
            time: self.time,
            step: self.steps,
            stage,
            cell: fault.cell,
            cause: fault.cause,
        }
    }

    /// CFL-limited step size at the current state.
    pub fn stable_dt(&self) -> Result<f64, AbortDiagnostic> {
        compute_dt(&self.field, self.config.cfl, &self.config.gas).map_err(|f| self.abort(0, f))
    }

    pub fn step(&mut self, dt: f64) -> Result<(), AbortDiagnostic> {
        match step(&mut self.field, &self.bcs, self.time, dt, &self.config) {
            Ok(()) => {
                self.time += dt;
                self.steps += 1;
                Ok(())
            }
            Err((stage, fault)) => Err(self.abort(stage, fault)),
        }
    }

    /// Steps until `target`, shortening the last step to land on it exactly.
    pub fn advance_to(&mut self, target: f64) -> Result<(), AbortDiagnostic> {
        while self.time < target {
            if self.steps >= self.config.max_steps {
                return Err(self.abort(
                    0,
                    CellFault {
                        cell: (-1, -1),
                        cause: PhysicsError::StepLimit(self.config.max_steps),
                    },
                ));
            }
            let dt = self.stable_dt()?;
            if self.time + dt >= target {
                self.step(target - self.time)?;
                self.time = target;
            } else {
                self.step(dt)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roe::ViscosityMode;

    const GAS: GasModel = GasModel { gamma: 1.4 };

    fn uniform(nx: usize, ny: usize, w: PrimitiveState) -> Field2D {
        Field2D::from_primitive(nx, ny, (0.0, 0.0), (nx as f64, ny as f64), &GAS, |_, _, _, _| w)
            .unwrap()
    }

    #[test]
    fn minmod_cases() {
        assert_eq!(minmod(1.0, 2.0), 1.0);
        assert_eq!(minmod(-1.0, 2.0), 0.0);
        assert_eq!(minmod(-3.0, -2.0), -2.0);
        assert_eq!(minmod(0.0, 5.0), 0.0);
        assert_eq!(minmod(0.0, -5.0), 0.0);
    }

    #[test]
    fn muscl_constant_linear_and_spike() {
        let w = PrimitiveState::new(1.0, 0.5, 0.0, 1.0);
        let pairs = muscl_line(&[w; 8], &GAS);
        assert_eq!(pairs.len(), 5);
        assert!(pairs.iter().all(|(l, r)| *l == w && *r == w));

        // ρ(x) = 1 + x sampled at centers x = k + 0.5, faces at integers
        let ramp: Vec<_> = (0..10)
            .map(|k| PrimitiveState::new(1.0 + k as f64 + 0.5, 0.0, 0.0, 1.0))
            .collect();
        let pairs = muscl_line(&ramp, &GAS);
        for (m, (l, r)) in pairs.iter().enumerate() {
            let face = 1.0 + (m + GHOST) as f64;
            assert!((l.rho - face).abs() < 1e-14 && (r.rho - face).abs() < 1e-14);
        }

        let mut spike = vec![w; 7];
        spike[3].rho = 5.0;
        let pairs = muscl_line(&spike, &GAS);
        // faces of the spike cell (line index 3) are interfaces 1 and 2
        assert_eq!(pairs[1].1.rho, 5.0);
        assert_eq!(pairs[2].0.rho, 5.0);
    }

    #[test]
    fn dt_of_rest_gas() {
        let f = uniform(4, 3, PrimitiveState::new(1.0, 0.0, 0.0, 1.0));
        let dt = compute_dt(&f, 0.45, &GAS).unwrap();
        assert!((dt - 0.45 / (2.0 * 1.4f64.sqrt())).abs() < 1e-15);
        let coarse = Field2D::from_primitive(4, 3, (0.0, 0.0), (8.0, 6.0), &GAS, |_, _, _, _| {
            PrimitiveState::new(1.0, 0.0, 0.0, 1.0)
        })
        .unwrap();
        assert!((compute_dt(&coarse, 0.45, &GAS).unwrap() - 2.0 * dt).abs() < 1e-15);
    }

    #[test]
    fn dt_reports_bad_cell() {
        let mut f = uniform(4, 3, PrimitiveState::new(1.0, 0.0, 0.0, 1.0));
        f.cell_mut(2, 1).rho = f64::NAN;
        let fault = compute_dt(&f, 0.45, &GAS).unwrap_err();
        assert_eq!(fault.cell, (2, 1));
    }

    #[test]
    fn uniform_flow_stays_uniform() {
        let w = PrimitiveState::new(1.0, 0.7, -0.3, 2.0);
        for mode in ViscosityMode::ALL {
            for order in [Order::First, Order::Second] {
                let f = uniform(6, 5, w);
                let config = RunConfig {
                    order,
                    model: ViscosityModel::new(mode),
                    ..RunConfig::default()
                };
                let mut s = Solver::new(f.clone(), BoundarySpec::periodic(), config).unwrap();
                for _ in 0..100 {
                    let dt = s.stable_dt().unwrap();
                    s.step(dt).unwrap();
                }
                for ((_, _, a), (_, _, b)) in s.field.interior().zip(f.interior()) {
                    for (x, y) in a.as_array().iter().zip(b.as_array()) {
                        assert!((x - y).abs() <= 1e-13);
                    }
                }
            }
        }
    }

    #[test]
    fn reflective_wall_mirrors_normal_momentum() {
        let mut f = uniform(3, 2, PrimitiveState::new(1.0, 0.4, 0.2, 1.0));
        let bcs = BoundarySpec {
            left: Boundary::Reflective,
            right: Boundary::Outflow,
            bottom: Boundary::Periodic,
            top: Boundary::Periodic,
        };
        bcs.apply(&mut f, 0.0, &GAS).unwrap();
        let inner = f.at(0, 1);
        let ghost = f.at(-1, 1);
        assert_eq!(ghost.mx, -inner.mx);
        assert_eq!(ghost.my, inner.my);
        assert_eq!(f.at(3, 0), f.at(2, 0));
        assert_eq!(f.at(1, -1), f.at(1, 1));
    }

    #[test]
    fn unpaired_periodic_rejected() {
        let bcs = BoundarySpec {
            left: Boundary::Periodic,
            right: Boundary::Outflow,
            bottom: Boundary::Periodic,
            top: Boundary::Periodic,
        };
        assert!(bcs.validate().is_err());
    }

    #[test]
    fn advance_lands_on_target() {
        let f = uniform(4, 4, PrimitiveState::new(1.0, 0.0, 0.0, 1.0));
        let config = RunConfig::default();
        let mut s = Solver::new(f, BoundarySpec::periodic(), config).unwrap();
        s.advance_to(0.3).unwrap();
        assert_eq!(s.time, 0.3);
        s.advance_to(0.3).unwrap();
        assert_eq!(s.time, 0.3);
    }
}
