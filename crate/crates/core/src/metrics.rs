//! Scalar diagnostics extracted from a field for run summaries and
//! comparisons between viscosity models.
//!
//! The functions read conserved data directly and skip no cells, so they can
//! be applied to any finite field.

use crate::cases::PlateauWindow;
use crate::grid::Field2D;

fn density_row(field: &Field2D, j: usize) -> impl Iterator<Item = (f64, f64)> + '_ {
    (0..field.nx).map(move |i| (field.center(i as isize, j as isize).0, field.cell(i, j).rho))
}

/// `max − min` of the density over all cells inside `window`; `None` when
/// the window contains no cell.
pub fn plateau_oscillation(field: &Field2D, window: &PlateauWindow) -> Option<f64> {
    let intervals: Vec<(f64, f64)> = match *window {
        PlateauWindow::Fixed(spans) => spans.to_vec(),
        PlateauWindow::BehindShock { x0, margin, threshold } => {
            let front = (0..field.ny)
                .filter_map(|j| density_row(field, j).filter(|&(_, r)| r > threshold).map(|(x, _)| x).last())
                .fold(f64::NEG_INFINITY, f64::max);
            vec![(x0, front - margin)]
        }
    };
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for j in 0..field.ny {
        for (x, r) in density_row(field, j) {
            if intervals.iter().any(|&(a, b)| x >= a && x <= b) {
                lo = lo.min(r);
                hi = hi.max(r);
            }
        }
    }
    (hi >= lo).then_some(hi - lo)
}

/// Largest `|v|` over the interior.
pub fn max_transverse_velocity(field: &Field2D) -> f64 {
    field.interior().map(|(_, _, q)| (q.my / q.rho).abs()).fold(0.0, f64::max)
}

/// Position in row `j` where the density first rises through `threshold`,
/// scanning in `+x`, linearly interpolated between cell centers.
pub fn front_position(field: &Field2D, j: usize, threshold: f64) -> Option<f64> {
    let row: Vec<(f64, f64)> = density_row(field, j).collect();
    row.windows(2).find_map(|p| {
        let ((x0, r0), (x1, r1)) = (p[0], p[1]);
        (r0 < threshold && r1 >= threshold).then(|| x0 + (threshold - r0) / (r1 - r0) * (x1 - x0))
    })
}

/// Largest distance of any row's front from `x_ref`; `None` if some row
/// has no front.
pub fn max_front_offset(field: &Field2D, threshold: f64, x_ref: f64) -> Option<f64> {
    (0..field.ny)
        .map(|j| front_position(field, j, threshold).map(|x| (x - x_ref).abs()))
        .try_fold(0.0, |m: f64, d| d.map(|d| m.max(d)))
}

/// Largest number of cells per row with `|v| < threshold`: the width of a
/// smeared `v = ±1` shear layer.
pub fn shear_layer_width(field: &Field2D, threshold: f64) -> usize {
    (0..field.ny)
        .map(|j| {
            (0..field.nx)
                .filter(|&i| {
                    let q = field.cell(i, j);
                    (q.my / q.rho).abs() < threshold
                })
                .count()
        })
        .max()
        .unwrap_or(0)
}

/// Foremost position in `+x` of density above `threshold` in row `j`.
pub fn leading_front(field: &Field2D, j: usize, threshold: f64) -> Option<f64> {
    density_row(field, j).filter(|&(_, r)| r > threshold).map(|(x, _)| x).last()
}

/// Like [`leading_front`], but linearly interpolated towards the next cell
/// so that the result moves continuously with the data.
pub fn leading_crossing(field: &Field2D, j: usize, threshold: f64) -> Option<f64> {
    let row: Vec<(f64, f64)> = density_row(field, j).collect();
    let k = row.iter().rposition(|&(_, r)| r > threshold)?;
    Some(match row.get(k + 1) {
        Some(&(x1, r1)) => {
            let (x0, r0) = row[k];
            x0 + (r0 - threshold) / (r0 - r1) * (x1 - x0)
        }
        None => row[k].0,
    })
}

/// Straightness of a near-vertical front: the interpolated leading position
/// `x_j` is found in every row with center `y ∈ [y0, y1]`, a least-squares
/// line `x(y)` is fitted, and the largest residual is returned.
pub fn front_distortion(field: &Field2D, threshold: f64, y0: f64, y1: f64) -> Option<f64> {
    let pts: Vec<(f64, f64)> = (0..field.ny)
        .filter_map(|j| {
            let y = field.center(0, j as isize).1;
            if y < y0 || y > y1 {
                return None;
            }
            leading_crossing(field, j, threshold).map(|x| (y, x))
        })
        .collect();
    if pts.len() < 3 {
        return None;
    }
    let n = pts.len() as f64;
    let my = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let mx = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let syy: f64 = pts.iter().map(|p| (p.0 - my).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - my) * (p.1 - mx)).sum();
    let slope = sxy / syy;
    pts.iter()
        .map(|&(y, x)| (x - (mx + slope * (y - my))).abs())
        .fold(None, |m: Option<f64>, r| Some(m.map_or(r, |m| m.max(r))))
}

/// Number of interior cells with `ρv > level` and with `ρv < −level`.
pub fn vertical_momentum_regions(field: &Field2D, level: f64) -> (usize, usize) {
    field.interior().fold((0, 0), |(up, down), (_, _, q)| {
        (up + usize::from(q.my > level), down + usize::from(q.my < -level))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::euler::{GasModel, PrimitiveState};

    const GAS: GasModel = GasModel { gamma: 1.4 };

    fn field(nx: usize, ny: usize, f: impl Fn(f64, f64) -> PrimitiveState) -> Field2D {
        Field2D::from_primitive(nx, ny, (0.0, 0.0), (nx as f64, ny as f64), &GAS, |_, _, x, y| f(x, y))
            .unwrap()
    }

    #[test]
    fn front_of_a_step_is_the_face() {
        let f = field(10, 3, |x, _| PrimitiveState::new(if x < 4.0 { 1.0 } else { 3.0 }, 0.0, 0.0, 1.0));
        assert_eq!(front_position(&f, 1, 2.0), Some(4.0));
        assert_eq!(max_front_offset(&f, 2.0, 4.0), Some(0.0));
        assert_eq!(leading_front(&f, 0, 2.0), Some(9.5));
        assert_eq!(front_position(&f, 0, 5.0), None);
        assert_eq!(leading_crossing(&f, 0, 2.0), Some(9.5));
        let ramp = field(4, 1, |x, _| PrimitiveState::new(6.0 - x, 0.0, 0.0, 1.0));
        // densities 5.5, 4.5, 3.5, 2.5: crossing of 3 halfway between centers 2.5 and 3.5
        assert!((leading_crossing(&ramp, 0, 3.0).unwrap() - 3.0).abs() < 1e-12);
    }

    #[test]
    fn plateau_windows() {
        let f = field(10, 2, |x, _| PrimitiveState::new(if x < 5.0 { 2.0 + 0.1 * x } else { 1.0 }, 0.0, 0.0, 1.0));
        let fixed = plateau_oscillation(&f, &PlateauWindow::Fixed(&[(0.0, 2.0)])).unwrap();
        assert!((fixed - 0.1).abs() < 1e-12);
        let behind = PlateauWindow::BehindShock { x0: 0.0, margin: 1.0, threshold: 1.5 };
        // front at x = 4.5, window [0, 3.5]
        assert!((plateau_oscillation(&f, &behind).unwrap() - 0.3).abs() < 1e-12);
        assert_eq!(plateau_oscillation(&f, &PlateauWindow::Fixed(&[(20.0, 30.0)])), None);
    }

    #[test]
    fn straight_and_kinked_fronts() {
        let straight = field(20, 10, |x, y| PrimitiveState::new(if x < 5.0 + 0.5 * y { 4.0 } else { 1.0 }, 0.0, 0.0, 1.0));
        assert!(front_distortion(&straight, 2.0, 0.0, 10.0).unwrap() <= 1.0);
        let kinked = field(20, 10, |x, y| {
            let edge = if (4.0..6.0).contains(&y) { 12.0 } else { 5.0 };
            PrimitiveState::new(if x < edge { 4.0 } else { 1.0 }, 0.0, 0.0, 1.0)
        });
        assert!(front_distortion(&kinked, 2.0, 0.0, 10.0).unwrap() > 4.0);
    }

    #[test]
    fn transverse_measures() {
        let f = field(6, 2, |x, _| PrimitiveState::new(2.0, 0.0, if x < 3.0 { -0.5 } else { 1.0 }, 1.0));
        assert_eq!(max_transverse_velocity(&f), 1.0);
        assert_eq!(shear_layer_width(&f, 0.9), 3);
        assert_eq!(vertical_momentum_regions(&f, 0.5), (6, 6));
    }
}
