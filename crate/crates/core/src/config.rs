//! Flat `key = value` run configuration.
//!
//! Pairs are separated by newlines or commas and `#` starts a comment.
//! Recognised keys:
//!
//! | key | value | default |
//! |-----|-------|---------|
//! | `case` | case name | required |
//! | `mode` | `standard`, `low_diss`, `high_diss`, `blend_geo`, `blend_arith` | `standard` |
//! | `order` | `1` or `2` | case requirement, else `1` |
//! | `phi` | > 0 | `5` |
//! | `delta_frac` | Harten width relative to `c`, in `[0, 1)` | `0.1` |
//! | `beta_fixed` | constant blend weight in `[0, 1]`; turns the indicator off | unset |
//! | `indicator` | `on` / `off` | `on` |
//! | `indicator_scaling` | `dimensional_min_c`, `dimensional`, `min_side`, `roe_mean` | `dimensional_min_c` |
//! | `cfl` | in `(0, 1)` | `0.45` |
//! | `t_end` | final time | case value |
//! | `output_times` | space-separated extra snapshot times | none |
//! | `seed` | noise seed | `20210614` |
//! | `nx`, `ny` | grid override | case value |
//! | `gamma` | ratio of specific heats | `1.4` |
//! | `noise` | noise amplitude | case value |
//! | `max_steps` | step limit | `10000000` |
//! | `outdir` | output directory | `.` |

use std::path::PathBuf;
use std::str::FromStr;

use crate::error::ConfigError;
use crate::grid::Order;
use crate::roe::{IndicatorScaling, ViscosityMode};

/// Partially specified run settings. Layers combine with [`Overrides::merge`].
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub case: Option<String>,
    pub mode: Option<ViscosityMode>,
    pub order: Option<Order>,
    pub phi: Option<f64>,
    pub delta_frac: Option<f64>,
    pub beta_fixed: Option<f64>,
    pub indicator: Option<bool>,
    pub indicator_scaling: Option<IndicatorScaling>,
    pub cfl: Option<f64>,
    pub t_end: Option<f64>,
    pub output_times: Option<Vec<f64>>,
    pub seed: Option<u64>,
    pub nx: Option<usize>,
    pub ny: Option<usize>,
    pub gamma: Option<f64>,
    pub noise: Option<f64>,
    pub max_steps: Option<u64>,
    pub outdir: Option<PathBuf>,
}

macro_rules! merge_fields {
    ($low:ident, $high:ident; $($f:ident),*) => {
        Overrides { $($f: $high.$f.or($low.$f)),* }
    };
}

impl Overrides {
    /// Fields set in `higher` win.
    pub fn merge(self, higher: Overrides) -> Overrides {
        let low = self;
        merge_fields!(low, higher; case, mode, order, phi, delta_frac, beta_fixed, indicator,
            indicator_scaling, cfl, t_end, output_times, seed, nx, ny, gamma, noise, max_steps, outdir)
    }
}

fn value<T: FromStr>(v: &str) -> Result<T, String>
where
    T::Err: std::fmt::Display,
{
    v.parse::<T>().map_err(|e| format!("cannot parse `{v}`: {e}"))
}

fn switch(v: &str) -> Result<bool, String> {
    match v {
        "on" | "true" | "yes" => Ok(true),
        "off" | "false" | "no" => Ok(false),
        _ => Err(format!("expected on/off, got `{v}`")),
    }
}

fn set(o: &mut Overrides, key: &str, v: &str) -> Result<(), String> {
    match key {
        "case" => o.case = Some(v.to_string()),
        "mode" => o.mode = Some(v.parse().map_err(|e: ConfigError| e.to_string())?),
        "order" => o.order = Some(Order::from_u8(value(v)?).map_err(|e| e.to_string())?),
        "phi" => o.phi = Some(value(v)?),
        "delta_frac" => o.delta_frac = Some(value(v)?),
        "beta_fixed" => o.beta_fixed = Some(value(v)?),
        "indicator" => o.indicator = Some(switch(v)?),
        "indicator_scaling" => {
            o.indicator_scaling = Some(v.parse().map_err(|e: ConfigError| e.to_string())?)
        }
        "cfl" => o.cfl = Some(value(v)?),
        "t_end" => o.t_end = Some(value(v)?),
        "output_times" => {
            o.output_times = Some(v.split_whitespace().map(value).collect::<Result<_, _>>()?)
        }
        "seed" => o.seed = Some(value(v)?),
        "nx" => o.nx = Some(value(v)?),
        "ny" => o.ny = Some(value(v)?),
        "gamma" => o.gamma = Some(value(v)?),
        "noise" => o.noise = Some(value(v)?),
        "max_steps" => o.max_steps = Some(value(v)?),
        "outdir" => o.outdir = Some(PathBuf::from(v)),
        _ => return Err(format!("unknown key `{key}`")),
    }
    Ok(())
}

pub fn parse_config(text: &str) -> Result<Overrides, ConfigError> {
    let mut out = Overrides::default();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        for pair in line.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let err = |message: String| ConfigError::Parse {
                line: n + 1,
                text: raw.trim().to_string(),
                message,
            };
            let (key, v) = pair
                .split_once('=')
                .ok_or_else(|| err(format!("expected `key = value`, got `{pair}`")))?;
            let (key, v) = (key.trim(), v.trim());
            if v.is_empty() {
                return Err(err(format!("missing value for `{key}`")));
            }
            set(&mut out, key, v).map_err(err)?;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_gives_defaults() {
        assert_eq!(parse_config("").unwrap(), Overrides::default());
        assert_eq!(parse_config("# nothing\n\n   \n").unwrap(), Overrides::default());
    }

    #[test]
    fn single_and_comma_separated() {
        assert_eq!(parse_config("phi = 5.0").unwrap().phi, Some(5.0));
        let o = parse_config("mode = blend_geo, beta_fixed = 0.5, indicator = off").unwrap();
        assert_eq!(o.mode, Some(ViscosityMode::BlendGeometric));
        assert_eq!(o.beta_fixed, Some(0.5));
        assert_eq!(o.indicator, Some(false));
        let o = parse_config("order=2 # trailing\noutput_times = 1 2.5\n").unwrap();
        assert_eq!(o.order, Some(Order::Second));
        assert_eq!(o.output_times, Some(vec![1.0, 2.5]));
    }

    #[test]
    fn errors_carry_line() {
        let e = parse_config("phi = 5\nwobble = 3\n").unwrap_err();
        let ConfigError::Parse { line, text, message } = e else { panic!() };
        assert_eq!(line, 2);
        assert_eq!(text, "wobble = 3");
        assert!(message.contains("wobble"));
        assert!(matches!(parse_config("\n\nphi 5"), Err(ConfigError::Parse { line: 3, .. })));
        assert!(matches!(parse_config("order = 3"), Err(ConfigError::Parse { line: 1, .. })));
        assert!(matches!(parse_config("seed ="), Err(ConfigError::Parse { .. })));
    }

    #[test]
    fn merge_prefers_higher() {
        let file = parse_config("phi = 2, seed = 4").unwrap();
        let cli = Overrides {
            phi: Some(7.0),
            ..Default::default()
        };
        let m = file.merge(cli);
        assert_eq!((m.phi, m.seed), (Some(7.0), Some(4)));
    }
}
