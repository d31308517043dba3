use machroe::euler::{
    cons_to_prim, physical_flux_x, physical_flux_y, prim_to_cons, rotate_from_x, rotate_to_x, GasModel,
    PrimitiveState,
};
use machroe::roe::{
    eigensystem, harten_fix, indicator_beta_for, interface_flux, roe_average, wave_speed_model,
    IndicatorScaling, RoeAverage, ViscosityMode, ViscosityModel,
};
use proptest::prelude::*;

const GAS: GasModel = GasModel { gamma: 1.4 };

fn state() -> impl Strategy<Value = PrimitiveState> {
    (0.05f64..20.0, -5.0f64..5.0, -5.0f64..5.0, 0.05f64..50.0)
        .prop_map(|(rho, u, v, p)| PrimitiveState::new(rho, u, v, p))
}

fn mode() -> impl Strategy<Value = ViscosityMode> {
    prop::sample::select(ViscosityMode::ALL.to_vec())
}

fn mean() -> impl Strategy<Value = RoeAverage> {
    (0.1f64..10.0, -3.0f64..3.0, -3.0f64..3.0, 0.2f64..3.0).prop_map(|(rho, u, v, c)| RoeAverage {
        rho,
        u,
        v,
        h: c * c / 0.4 + 0.5 * (u * u + v * v),
        c,
    })
}

fn scale(x: &[f64; 4]) -> f64 {
    1.0 + x.iter().map(|v| v.abs()).fold(0.0, f64::max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn state_conversion_round_trips(w in state()) {
        let back = cons_to_prim(&prim_to_cons(&w, &GAS).unwrap(), &GAS).unwrap();
        for (a, b) in w.as_array().iter().zip(back.as_array()) {
            prop_assert!((a - b).abs() <= 1e-12 * (1.0 + a.abs()));
        }
    }

    #[test]
    fn roe_property(wl in state(), wr in state()) {
        let ql = prim_to_cons(&wl, &GAS).unwrap();
        let qr = prim_to_cons(&wr, &GAS).unwrap();
        let a = eigensystem(&roe_average(&ql, &qr, &GAS).unwrap(), &GAS).unwrap().roe_matrix();
        let df = (physical_flux_x(&qr, &GAS).unwrap() - physical_flux_x(&ql, &GAS).unwrap()).0;
        let dq = (qr - ql).as_array();
        for r in 0..4 {
            let adq: f64 = (0..4).map(|c| a[r][c] * dq[c]).sum();
            prop_assert!((df[r] - adq).abs() <= 1e-11 * scale(&df));
        }
    }

    #[test]
    fn roe_mean_sound_speed_is_real(wl in state(), wr in state()) {
        let ql = prim_to_cons(&wl, &GAS).unwrap();
        let qr = prim_to_cons(&wr, &GAS).unwrap();
        let avg = roe_average(&ql, &qr, &GAS).unwrap();
        prop_assert!(avg.c > 0.0 && avg.c.is_finite());
        prop_assert!(avg.u >= wl.u.min(wr.u) - 1e-12 && avg.u <= wl.u.max(wr.u) + 1e-12);
    }

    #[test]
    fn eigenvectors_are_biorthogonal(avg in mean()) {
        let ws = eigensystem(&avg, &GAS).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let lr: f64 = (0..4).map(|k| ws.left[i][k] * ws.right[j][k]).sum();
                let expected = if i == j { 1.0 } else { 0.0 };
                prop_assert!((lr - expected).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn flux_is_consistent(w in state(), m in mode()) {
        let q = prim_to_cons(&w, &GAS).unwrap();
        let f = physical_flux_x(&q, &GAS).unwrap();
        let g = interface_flux(&q, &q, &ViscosityModel::new(m), &GAS).unwrap();
        prop_assert!((g - f).norm() <= 1e-14 * (1.0 + f.norm()));
    }

    #[test]
    fn flux_is_mirror_symmetric(wl in state(), wr in state(), m in mode()) {
        // reflecting x -> -x swaps the states, negates u and the mass and energy fluxes
        let mirror = |w: &PrimitiveState| PrimitiveState { u: -w.u, ..*w };
        let model = ViscosityModel::new(m);
        let q = |w: &PrimitiveState| prim_to_cons(w, &GAS).unwrap();
        let g = interface_flux(&q(&wl), &q(&wr), &model, &GAS).unwrap();
        let h = interface_flux(&q(&mirror(&wr)), &q(&mirror(&wl)), &model, &GAS).unwrap();
        let expected = [-g[0], g[1], -g[2], -g[3]];
        for k in 0..4 {
            prop_assert!((h[k] - expected[k]).abs() <= 1e-10 * (1.0 + g.norm()));
        }
    }

    #[test]
    fn y_flux_by_rotation(w in state()) {
        let q = prim_to_cons(&w, &GAS).unwrap();
        prop_assert_eq!(rotate_from_x(&rotate_to_x(&q)), q);
        let direct = physical_flux_y(&q, &GAS).unwrap();
        let expected = [q.my, q.mx * w.v, q.my * w.v + w.p, (q.e + w.p) * w.v];
        for k in 0..4 {
            prop_assert!((direct[k] - expected[k]).abs() <= 1e-12 * (1.0 + expected[k].abs()));
        }
    }

    #[test]
    fn model_speeds_bracket_standard(avg in mean(), beta in 0.0f64..=1.0) {
        // low_diss never adds and high_diss never removes viscosity; blends lie between
        let abs = |m| wave_speed_model(&avg, m, 5.0, beta).map(f64::abs);
        let lo = abs(ViscosityMode::LowDiss);
        let hi = abs(ViscosityMode::HighDiss);
        let std = abs(ViscosityMode::Standard);
        for k in 0..4 {
            prop_assert!(lo[k] <= std[k] + 1e-15 && std[k] <= hi[k] + 1e-15);
            for blend in [ViscosityMode::BlendGeometric, ViscosityMode::BlendArithmetic] {
                let b = abs(blend)[k];
                prop_assert!(b >= lo[k] - 1e-12 && b <= hi[k] + 1e-12);
            }
        }
    }

    #[test]
    fn harten_fix_is_continuous_and_bounded(lambda in -2.0f64..2.0, delta in 1e-3f64..1.0) {
        let h = harten_fix(lambda, delta);
        prop_assert!(h >= lambda.abs() && h >= delta / 2.0 - 1e-15);
        prop_assert!(h <= lambda.abs().max(delta) + 1e-15);
        prop_assert!((harten_fix(delta, delta) - delta).abs() <= 1e-15);
    }

    #[test]
    fn indicator_is_a_weight(wl in state(), wr in state()) {
        for scaling in IndicatorScaling::ALL {
            let b = indicator_beta_for(&wl, &wr, scaling, &GAS).unwrap();
            prop_assert!((0.0..=1.0).contains(&b));
        }
    }

    #[test]
    fn indicator_ignores_contacts(rho_l in 0.1f64..10.0, rho_r in 0.1f64..10.0, u in -3.0f64..3.0,
                                  vl in -3.0f64..3.0, vr in -3.0f64..3.0, p in 0.1f64..10.0) {
        let wl = PrimitiveState::new(rho_l, u, vl, p);
        let wr = PrimitiveState::new(rho_r, u, vr, p);
        for scaling in IndicatorScaling::ALL {
            prop_assert!(indicator_beta_for(&wl, &wr, scaling, &GAS).unwrap() <= 1e-12);
        }
    }
}
