//! One-dimensional bounded minimisation: a uniform coarse grid followed by
//! golden-section refinement around the best grid cell.

/// Result of [`grid_golden_min`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Minimum {
    pub x: f64,
    pub value: f64,
}

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Minimises `f` on `[lo, hi]` with a `points`-point grid, then golden-section
/// refinement to `tol` inside the bracketing cell.
///
/// When `prefer` is given and `f(prefer)` is within a relative `1e-12` of the
/// located minimum, `prefer` wins. Non-finite values are treated as `+inf`.
pub fn grid_golden_min(
    f: impl Fn(f64) -> f64,
    lo: f64,
    hi: f64,
    points: usize,
    tol: f64,
    prefer: Option<f64>,
) -> Minimum {
    let grid = linspace(lo, hi, points);
    let values: Vec<f64> = grid.iter().map(|&x| f(x)).collect();
    refine_on_grid(f, &grid, &values, tol, prefer)
}

/// `points` equally spaced values from `lo` to `hi` inclusive.
pub fn linspace(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    assert!(points >= 2 && hi > lo, "invalid search interval");
    let step = (hi - lo) / (points - 1) as f64;
    (0..points)
        .map(|i| if i + 1 == points { hi } else { lo + step * i as f64 })
        .collect()
}

/// Refines the best of precomputed grid values `values[i] = f(grid[i])`.
/// Lets several objectives share one expensive grid evaluation.
pub fn refine_on_grid(
    f: impl Fn(f64) -> f64,
    grid: &[f64],
    values: &[f64],
    tol: f64,
    prefer: Option<f64>,
) -> Minimum {
    assert_eq!(grid.len(), values.len(), "grid and values differ in length");
    let eval = |x: f64| sanitize(f(x));
    let points = grid.len();
    let best = values
        .iter()
        .map(|&v| sanitize(v))
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .map(|(i, _)| i)
        .unwrap_or(0);

    let mut result = Minimum {
        x: grid[best],
        value: sanitize(values[best]),
    };
    if result.value.is_finite() {
        let a = grid[best.saturating_sub(1)];
        let b = grid[(best + 1).min(points - 1)];
        let refined = golden_section(&eval, a, b, tol);
        if refined.value < result.value {
            result = refined;
        }
    }

    if let Some(p) = prefer {
        let vp = eval(p);
        if vp.is_finite() && vp <= result.value + 1e-12 * result.value.abs() {
            return Minimum { x: p, value: vp };
        }
        if !result.value.is_finite() {
            return Minimum { x: p, value: vp };
        }
    }
    result
}

fn sanitize(v: f64) -> f64 {
    if v.is_nan() {
        f64::INFINITY
    } else {
        v
    }
}

/// Golden-section search for a minimum of a unimodal function on `[a, b]`.
pub fn golden_section(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> Minimum {
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while (b - a).abs() > tol {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        }
    }
    let x = 0.5 * (a + b);
    let fx = f(x);
    [(x, fx), (x1, f1), (x2, f2)]
        .into_iter()
        .min_by(|p, q| p.1.total_cmp(&q.1))
        .map(|(x, value)| Minimum { x, value })
        .unwrap()
}
