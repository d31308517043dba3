//! Exact solution of the one-dimensional Riemann problem for an ideal gas,
//! used as a reference for convergence tests. The tangential velocity is
//! carried passively by the contact.

use crate::error::PhysicsError;
use crate::euler::{validate_state, GasModel, PrimitiveState};

/// Pressure and normal velocity between the two nonlinear waves.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StarState {
    pub p: f64,
    pub u: f64,
}

/// Jump function of one side and its derivative with respect to `p`.
fn side_function(p: f64, w: &PrimitiveState, gamma: f64) -> (f64, f64) {
    let c = (gamma * w.p / w.rho).sqrt();
    if p > w.p {
        let a = 2.0 / ((gamma + 1.0) * w.rho);
        let b = (gamma - 1.0) / (gamma + 1.0) * w.p;
        let root = (a / (p + b)).sqrt();
        ((p - w.p) * root, root * (1.0 - 0.5 * (p - w.p) / (b + p)))
    } else {
        let ratio = p / w.p;
        let f = 2.0 * c / (gamma - 1.0) * (ratio.powf((gamma - 1.0) / (2.0 * gamma)) - 1.0);
        let df = ratio.powf(-(gamma + 1.0) / (2.0 * gamma)) / (w.rho * c);
        (f, df)
    }
}

pub fn star_state(
    wl: &PrimitiveState,
    wr: &PrimitiveState,
    gas: &GasModel,
) -> Result<StarState, PhysicsError> {
    validate_state(wl)?;
    validate_state(wr)?;
    let gamma = gas.gamma;
    let cl = (gamma * wl.p / wl.rho).sqrt();
    let cr = (gamma * wr.p / wr.rho).sqrt();
    let du = wr.u - wl.u;
    if 2.0 / (gamma - 1.0) * (cl + cr) <= du {
        return Err(PhysicsError::Vacuum);
    }
    // two-rarefaction guess: exact when both waves are rarefactions
    let z = (gamma - 1.0) / (2.0 * gamma);
    let guess = ((cl + cr - 0.5 * (gamma - 1.0) * du) / (cl / wl.p.powf(z) + cr / wr.p.powf(z)))
        .powf(1.0 / z);
    let mut p = guess.max(1e-14 * wl.p.min(wr.p));
    for _ in 0..200 {
        let (fl, dfl) = side_function(p, wl, gamma);
        let (fr, dfr) = side_function(p, wr, gamma);
        let mut next = p - (fl + fr + du) / (dfl + dfr);
        if next <= 0.0 {
            next = 0.5 * p;
        }
        let change = (next - p).abs() / (0.5 * (next + p));
        p = next;
        if change < 1e-15 {
            break;
        }
    }
    let (fl, _) = side_function(p, wl, gamma);
    let (fr, _) = side_function(p, wr, gamma);
    Ok(StarState {
        p,
        u: 0.5 * (wl.u + wr.u) + 0.5 * (fr - fl),
    })
}

/// Solution at similarity coordinate `xi = x/t` (interface at `x = 0`).
pub fn exact_riemann(
    wl: &PrimitiveState,
    wr: &PrimitiveState,
    gas: &GasModel,
    xi: f64,
) -> Result<PrimitiveState, PhysicsError> {
    let star = star_state(wl, wr, gas)?;
    Ok(sample(wl, wr, &star, gas.gamma, xi))
}

fn sample(wl: &PrimitiveState, wr: &PrimitiveState, star: &StarState, gamma: f64, xi: f64) -> PrimitiveState {
    let g1 = (gamma - 1.0) / (2.0 * gamma);
    let g6 = (gamma - 1.0) / (gamma + 1.0);
    // Mirror the right side onto the left so one branch handles both.
    let (w, sign, v_side) = if xi <= star.u {
        (*wl, 1.0, wl.v)
    } else {
        (PrimitiveState::new(wr.rho, -wr.u, wr.v, wr.p), -1.0, wr.v)
    };
    let xi = sign * xi;
    let us = sign * star.u;
    let c = (gamma * w.p / w.rho).sqrt();
    let pr = star.p / w.p;
    let out = if star.p > w.p {
        let shock = w.u - c * ((gamma + 1.0) / (2.0 * gamma) * pr + g1).sqrt();
        if xi <= shock {
            w
        } else {
            PrimitiveState::new(w.rho * (pr + g6) / (g6 * pr + 1.0), us, v_side, star.p)
        }
    } else {
        let head = w.u - c;
        let c_star = c * pr.powf(g1);
        let tail = us - c_star;
        if xi <= head {
            w
        } else if xi >= tail {
            PrimitiveState::new(w.rho * pr.powf(1.0 / gamma), us, v_side, star.p)
        } else {
            let u = 2.0 / (gamma + 1.0) * (c + 0.5 * (gamma - 1.0) * w.u + xi);
            let cf = 2.0 / (gamma + 1.0) * (c + 0.5 * (gamma - 1.0) * (w.u - xi));
            let ratio = cf / c;
            PrimitiveState::new(
                w.rho * ratio.powf(2.0 / (gamma - 1.0)),
                u,
                v_side,
                w.p * ratio.powf(2.0 * gamma / (gamma - 1.0)),
            )
        }
    };
    PrimitiveState::new(out.rho, sign * out.u, out.v, out.p)
}
