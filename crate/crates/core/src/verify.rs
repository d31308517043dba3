//! Fast self-checks of the flux machinery against independent oracles,
//! run by `machroe verify`. Each takes well under a second.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cases::mach20_shock;
use crate::euler::{physical_flux_x, prim_to_cons, GasModel, PrimitiveState};
use crate::riemann::star_state;
use crate::roe::{
    eigensystem, indicator_beta_for, interface_flux, roe_average, wave_speed_model, IndicatorScaling,
    RoeAverage, ViscosityMode, ViscosityModel,
};

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &'static str, worst: f64, tol: f64) -> Check {
    Check {
        name,
        passed: worst <= tol,
        detail: format!("worst {worst:.3e}, tolerance {tol:.0e}"),
    }
}

/// Random admissible state with moderate Mach number.
pub fn random_state(rng: &mut impl Rng) -> PrimitiveState {
    PrimitiveState::new(
        rng.gen_range(0.1..10.0),
        rng.gen_range(-3.0..3.0),
        rng.gen_range(-3.0..3.0),
        rng.gen_range(0.1..10.0),
    )
}

/// Random Roe mean with `c ∈ [0.2, 3]` and consistent enthalpy.
pub fn random_mean(rng: &mut impl Rng, gas: &GasModel) -> RoeAverage {
    let (u, v, c) = (rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0), rng.gen_range(0.2..3.0));
    RoeAverage {
        rho: rng.gen_range(0.1..10.0),
        u,
        v,
        h: c * c / (gas.gamma - 1.0) + 0.5 * (u * u + v * v),
        c,
    }
}

pub fn quick_checks(seed: u64) -> Vec<Check> {
    let gas = GasModel::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();

    let mut worst: f64 = 0.0;
    for _ in 0..200 {
        let ql = prim_to_cons(&random_state(&mut rng), &gas).unwrap();
        let qr = prim_to_cons(&random_state(&mut rng), &gas).unwrap();
        let avg = roe_average(&ql, &qr, &gas).unwrap();
        let a = eigensystem(&avg, &gas).unwrap().roe_matrix();
        let df = physical_flux_x(&qr, &gas).unwrap() - physical_flux_x(&ql, &gas).unwrap();
        let dq = (qr - ql).as_array();
        for r in 0..4 {
            let adq: f64 = (0..4).map(|c| a[r][c] * dq[c]).sum();
            worst = worst.max((df[r] - adq).abs() / (1.0 + df.norm()));
        }
    }
    out.push(check("roe property", worst, 1e-11));

    let mut worst: f64 = 0.0;
    for _ in 0..200 {
        let ws = eigensystem(&random_mean(&mut rng, &gas), &gas).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let lr: f64 = (0..4).map(|k| ws.left[i][k] * ws.right[j][k]).sum();
                worst = worst.max((lr - f64::from(u8::from(i == j))).abs());
            }
        }
    }
    out.push(check("left/right eigenvectors inverse", worst, 1e-12));

    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let q = prim_to_cons(&random_state(&mut rng), &gas).unwrap();
        let f = physical_flux_x(&q, &gas).unwrap();
        for mode in ViscosityMode::ALL {
            let g = interface_flux(&q, &q, &ViscosityModel::new(mode), &gas).unwrap();
            worst = worst.max((g - f).norm() / (1.0 + f.norm()));
        }
    }
    out.push(check("flux consistency", worst, 1e-14));

    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let avg = random_mean(&mut rng, &gas);
        for (blend, beta, reference) in [
            (ViscosityMode::BlendGeometric, 0.0, ViscosityMode::LowDiss),
            (ViscosityMode::BlendGeometric, 1.0, ViscosityMode::HighDiss),
            (ViscosityMode::BlendArithmetic, 0.0, ViscosityMode::LowDiss),
            (ViscosityMode::BlendArithmetic, 1.0, ViscosityMode::HighDiss),
        ] {
            let a = wave_speed_model(&avg, blend, 5.0, beta);
            let b = wave_speed_model(&avg, reference, 5.0, 0.0);
            for k in 0..4 {
                worst = worst.max((a[k].abs() - b[k].abs()).abs());
            }
        }
    }
    out.push(check("blend endpoints", worst, 1e-15));

    let pair = mach20_shock(&gas);
    let beta = indicator_beta_for(&pair.upstream, &pair.downstream, IndicatorScaling::default(), &gas)
        .unwrap();
    let contact = indicator_beta_for(
        &PrimitiveState::new(1.0, 0.5, 0.0, 1.0),
        &PrimitiveState::new(3.0, 0.5, 1.0, 1.0),
        IndicatorScaling::default(),
        &gas,
    )
    .unwrap();
    out.push(Check {
        name: "shock indicator",
        passed: beta == 1.0 && contact == 0.0,
        detail: format!("beta(mach 20 shock) = {beta}, beta(contact) = {contact}"),
    });

    let star = star_state(
        &PrimitiveState::new(1.0, 0.0, 0.0, 1.0),
        &PrimitiveState::new(0.125, 0.0, 0.0, 0.1),
        &gas,
    )
    .unwrap();
    out.push(check("sod star pressure", (star.p - 0.30313).abs(), 1e-4));
    out
}
