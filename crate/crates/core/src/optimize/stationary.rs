use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use serde::{Deserialize, Serialize};

use crate::landscape::{self, Angles};
use crate::model::IsingModel;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StationaryKind {
    /// `cos(2 beta) = 0`, i.e. `beta` in `{pi/4, 3pi/4}`, with `F2(gamma) = 0`.
    BetaFamilyCos0,
    /// `sin(2 beta) = 0`, i.e. `beta` in `{0, pi/2, pi}`, with `F1(gamma) = 0`.
    BetaFamilySin0,
    /// `F1 = F2 = 0`: every `beta` is stationary at this `gamma`.
    Simultaneous,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StationaryPoint {
    pub angles: Angles,
    pub kind: StationaryKind,
    /// `max(|dE/dbeta|, |dE/dgamma|)` at the point.
    pub residual: f64,
}

/// Stationary points plus the raw sign-change counts of `F1` and `F2` on the
/// `delta_gamma` grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StationaryScan {
    pub points: Vec<StationaryPoint>,
    pub f1_roots: usize,
    pub f2_roots: usize,
    pub f1_sign_changes: usize,
    pub f2_sign_changes: usize,
    pub bound: usize,
}

const DEDUP_RADIUS: f64 = 1e-6;
const COS_FAMILY: [f64; 2] = [FRAC_PI_4, 3.0 * FRAC_PI_4];
const SIN_FAMILY: [f64; 3] = [0.0, FRAC_PI_2, PI];
/// Off-family representatives for `gamma` where both `F1` and `F2` vanish.
const SIMULTANEOUS_BETAS: [f64; 4] = [PI / 8.0, 3.0 * PI / 8.0, 5.0 * PI / 8.0, 7.0 * PI / 8.0];

struct Roots {
    gammas: Vec<f64>,
    sign_changes: usize,
}

/// Roots of `f` on the sample grid: samples with `|f| <= tol` plus a
/// bisection (to machine precision) of every strict sign change.
fn scan_roots(f: impl Fn(f64) -> f64, grid: &[f64], tol: f64) -> Roots {
    let vals: Vec<f64> = grid.iter().map(|&g| f(g)).collect();
    let mut gammas = Vec::new();
    let mut sign_changes = 0;
    for (k, &g) in grid.iter().enumerate() {
        if vals[k].abs() <= tol {
            gammas.push(g);
        }
        if k + 1 < grid.len() && vals[k] * vals[k + 1] < 0.0 {
            sign_changes += 1;
            let (mut lo, mut hi) = (g, grid[k + 1]);
            let mut flo = vals[k];
            loop {
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi {
                    break;
                }
                let fm = f(mid);
                if fm == 0.0 {
                    lo = mid;
                    hi = mid;
                    break;
                }
                if (fm < 0.0) == (flo < 0.0) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            gammas.push(if f(lo).abs() <= f(hi).abs() { lo } else { hi });
        }
    }
    gammas.sort_by(f64::total_cmp);
    gammas.dedup_by(|a, b| (*a - *b).abs() < DEDUP_RADIUS);
    Roots {
        gammas,
        sign_changes,
    }
}

fn residual(m: &IsingModel, a: &Angles) -> f64 {
    let (gb, gg) = landscape::gradient(m, a);
    gb.abs().max(gg.abs())
}

/// Full scan, see [`enumerate_stationary`].
pub fn stationary_scan(m: &IsingModel, tol: f64) -> StationaryScan {
    let spec = landscape::landscape_spec(m);
    let grid: Vec<f64> = (0..spec.gamma_points)
        .map(|j| spec.gamma_value(j))
        .collect();
    let f1_roots = scan_roots(|g| landscape::f1(m, g), &grid, tol);
    let f2_roots = scan_roots(|g| landscape::f2(m, g), &grid, tol);

    let mut points = Vec::new();
    // a term-free model has a flat landscape with no isolated points
    let flat = m.edge_count() == 0 && m.field_count() == 0;
    let mut push = |beta: f64, gamma: f64, kind| {
        let angles = Angles::new(beta, gamma).expect("family angles lie in the domain");
        let r = residual(m, &angles);
        if r <= tol && !flat {
            points.push(StationaryPoint {
                angles,
                kind,
                residual: r,
            });
        }
    };
    for &g in &f2_roots.gammas {
        for &b in &COS_FAMILY {
            push(b, g, StationaryKind::BetaFamilyCos0);
        }
    }
    for &g in &f1_roots.gammas {
        for &b in &SIN_FAMILY {
            push(b, g, StationaryKind::BetaFamilySin0);
        }
    }
    for &g in f1_roots.gammas.iter().chain(&f2_roots.gammas) {
        if landscape::f1(m, g).abs() <= tol / 2.0 && landscape::f2(m, g).abs() <= tol / 2.0 {
            for &b in &SIMULTANEOUS_BETAS {
                push(b, g, StationaryKind::Simultaneous);
            }
        }
    }

    points.sort_by(|a, b| {
        a.angles
            .beta()
            .total_cmp(&b.angles.beta())
            .then(a.angles.gamma().total_cmp(&b.angles.gamma()))
            .then(a.kind.cmp(&b.kind))
    });
    points.dedup_by(|later, earlier| {
        (later.angles.beta() - earlier.angles.beta()).abs() < DEDUP_RADIUS
            && (later.angles.gamma() - earlier.angles.gamma()).abs() < DEDUP_RADIUS
    });

    StationaryScan {
        points,
        f1_roots: f1_roots.gammas.len(),
        f2_roots: f2_roots.gammas.len(),
        f1_sign_changes: f1_roots.sign_changes,
        f2_sign_changes: f2_roots.sign_changes,
        bound: spec.stationary_bound,
    }
}

/// Stationary points of the closed-form landscape, sorted by `(beta, gamma)`
/// and deduplicated within `1e-6`.
///
/// Roots of `F2` (for `beta = pi/4, 3pi/4`) and `F1` (for `beta = 0, pi/2, pi`)
/// are bracketed by sign changes on the `delta_gamma` grid and bisected.
/// Tangential roots are found only when a sample already satisfies
/// `|F| <= tol`. Every returned point has gradient sup-norm `<= tol`. A model
/// without couplings or fields is flat and yields no points.
pub fn enumerate_stationary(m: &IsingModel, tol: f64) -> Vec<StationaryPoint> {
    stationary_scan(m, tol).points
}

#[cfg(test)]
mod tests {
    use std::f64::consts::TAU;

    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::*;

    fn gammas_of(points: &[StationaryPoint], kind: StationaryKind, beta: f64) -> Vec<f64> {
        points
            .iter()
            .filter(|p| p.kind == kind && p.angles.beta() == beta)
            .map(|p| p.angles.gamma())
            .collect()
    }

    fn assert_close(actual: &[f64], expected: &[f64]) {
        assert_eq!(actual.len(), expected.len(), "{actual:?} vs {expected:?}");
        for (a, e) in actual.iter().zip(expected) {
            assert!((a - e).abs() < 1e-9, "{actual:?} vs {expected:?}");
        }
    }

    #[test]
    fn single_field_roots_are_odd_quarter_pis() {
        let m = IsingModel::new(1, vec![], vec![(0, 1.0)], 0.0).unwrap();
        let pts = enumerate_stationary(&m, 1e-9);
        let expected = [1.0, 3.0, 5.0, 7.0].map(|k| k * FRAC_PI_4);
        for b in SIN_FAMILY {
            assert_close(
                &gammas_of(&pts, StationaryKind::BetaFamilySin0, b),
                &expected,
            );
        }
    }

    #[test]
    fn single_coupling_roots_are_odd_quarter_pis() {
        let m = IsingModel::new(2, vec![(0, 1, 1.0)], vec![], 0.0).unwrap();
        let pts = enumerate_stationary(&m, 1e-9);
        let expected = [1.0, 3.0, 5.0, 7.0].map(|k| k * FRAC_PI_4);
        for b in COS_FAMILY {
            assert_close(
                &gammas_of(&pts, StationaryKind::BetaFamilyCos0, b),
                &expected,
            );
        }
        // F1 = sin(2 gamma) vanishes on multiples of pi/2, sampled exactly or bracketed
        let sin0 = gammas_of(&pts, StationaryKind::BetaFamilySin0, 0.0);
        assert_close(&sin0, &[0.0, FRAC_PI_2, PI, 3.0 * FRAC_PI_2, TAU]);
    }

    #[test]
    fn tiny_models_can_exceed_six_d() {
        let m = IsingModel::new(1, vec![], vec![(0, 1.0)], 0.0).unwrap();
        let pts = enumerate_stationary(&m, 1e-8);
        // 4 F1 roots at three betas, 5 F2 roots at two betas
        assert_eq!(pts.len(), 22);
        assert!(pts.len() > 6);
    }

    #[test]
    fn random_models_respect_the_bound_and_the_tolerance() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..50 {
            let n = rng.random_range(1..=16);
            let mut c = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    if rng.random_bool(0.25) {
                        c.push((i, j, rng.random_range(-1.0..1.0)));
                    }
                }
            }
            let f: Vec<(usize, f64)> = (0..n)
                .filter_map(|i| {
                    if rng.random_bool(0.3) {
                        Some((i, rng.random_range(-1.0..1.0)))
                    } else {
                        None
                    }
                })
                .collect();
            let m = IsingModel::new(n, c, f, 0.0).unwrap();
            let tol = 1e-8;
            let scan = stationary_scan(&m, tol);
            let d = 2 * m.edge_count() + n;
            // two cos-family and three sin-family betas, at most 2D + 1 roots each on the closed interval
            assert!(
                scan.points.len() <= 10 * d + 5,
                "{} points for D = {d}",
                scan.points.len()
            );
            for p in &scan.points {
                assert!(p.residual <= tol);
            }
        }
    }
}
