//! One- and two-dimensional maximization on boxes.
//!
//! The scans are global over a uniform grid and only then refined by
//! golden-section search around the best grid node. Some revenue functions
//! here (the two-class ISP revenue in `ph`) are not concave, so a purely
//! local method started anywhere could lock onto the wrong peak.

/// `(3 - √5) / 2`, the golden-section interior fraction.
const GOLDEN: f64 = 0.381_966_011_250_105_1;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Argmax {
    pub x: f64,
    pub value: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Argmax2d {
    pub x: f64,
    pub y: f64,
    pub value: f64,
}

/// Golden-section search for a maximum of `f` on `[lo, hi]`, stopping when
/// the bracket is narrower than `tol`.
pub fn golden_section_max<F: FnMut(f64) -> f64>(mut f: F, lo: f64, hi: f64, tol: f64) -> Argmax {
    let (mut a, mut b) = (lo, hi);
    let mut c = a + GOLDEN * (b - a);
    let mut d = b - GOLDEN * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..200 {
        if b - a <= tol {
            break;
        }
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = a + GOLDEN * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = b - GOLDEN * (b - a);
            fd = f(d);
        }
    }
    if fc >= fd {
        Argmax { x: c, value: fc }
    } else {
        Argmax { x: d, value: fd }
    }
}

/// Global argmax of `f` on `[lo, hi]`: uniform scan with `grid_points`
/// nodes, then golden-section polish between the neighbours of the best
/// node. Ties resolve to the smallest price.
pub fn argmax_1d<F: FnMut(f64) -> f64>(mut f: F, lo: f64, hi: f64, grid_points: usize) -> Argmax {
    if !(hi > lo) {
        return Argmax { x: lo, value: f(lo) };
    }
    let n = grid_points.max(2);
    let span = hi - lo;
    let node = |i: usize| if i + 1 == n { hi } else { lo + span * i as f64 / (n - 1) as f64 };

    let mut best = 0;
    let mut best_value = f(lo);
    for i in 1..n {
        let v = f(node(i));
        if v > best_value {
            best = i;
            best_value = v;
        }
    }
    let a = node(best.saturating_sub(1));
    let b = node((best + 1).min(n - 1));
    let polished = golden_section_max(&mut f, a, b, 1e-13 * span.max(1.0));
    let best = if polished.value > best_value { polished } else { Argmax { x: node(best), value: best_value } };
    refine_stationary(&mut f, best, (a, b), (lo, hi))
}

/// Golden section locates a smooth maximum only to about `√ε` because
/// values near the top are indistinguishable. Where the central-difference
/// slope changes sign across `bracket`, bisection on the slope pins the
/// stationary point far more tightly. The refined point is kept unless it
/// loses more than `1e-9` relative value, which guards against kinks.
fn refine_stationary<F: FnMut(f64) -> f64>(f: &mut F, best: Argmax, bracket: (f64, f64), bounds: (f64, f64)) -> Argmax {
    let span = bounds.1 - bounds.0;
    let h = 1e-5 * span;
    let (mut a, mut b) = (bracket.0.max(bounds.0 + h), bracket.1.min(bounds.1 - h));
    if !(b > a) {
        return best;
    }
    let mut slope = |x: f64| (f(x + h) - f(x - h)) / (2.0 * h);
    if !(slope(a) > 0.0 && slope(b) < 0.0) {
        return best;
    }
    for _ in 0..64 {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        if slope(mid) > 0.0 {
            a = mid;
        } else {
            b = mid;
        }
    }
    let x = 0.5 * (a + b);
    let value = f(x);
    if value >= best.value - 1e-9 * best.value.abs() {
        Argmax { x, value }
    } else {
        best
    }
}

/// Nested argmax of `f(x, y)` over a box: the outer search runs over `x`
/// with the inner maximum over `y` as its objective.
pub fn argmax_2d<F: Fn(f64, f64) -> f64>(
    f: F,
    x_bounds: (f64, f64),
    y_bounds: (f64, f64),
    grid_points: usize,
) -> Argmax2d {
    let inner = |x: f64| argmax_1d(|y| f(x, y), y_bounds.0, y_bounds.1, grid_points);
    let outer = argmax_1d(|x| inner(x).value, x_bounds.0, x_bounds.1, grid_points);
    let y = inner(outer.x);
    Argmax2d { x: outer.x, y: y.x, value: y.value }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_on_parabola() {
        let m = golden_section_max(|x| -(x - 0.3) * (x - 0.3), 0.0, 1.0, 1e-12);
        assert!((m.x - 0.3).abs() < 1e-7);
    }

    #[test]
    fn boundary_maximum_is_exact() {
        let m = argmax_1d(|x| 0.25 - x, 0.0, 1.0, 101);
        assert_eq!(m.x, 0.0);
        let m = argmax_1d(|x| x, 0.0, 1.0, 101);
        assert_eq!(m.x, 1.0);
    }

    #[test]
    fn flat_function_picks_smallest() {
        let m = argmax_1d(|_| 0.0, 0.0, 1.0, 11);
        assert_eq!(m.x, 0.0);
    }

    #[test]
    fn finds_global_peak_of_bimodal() {
        let f = |x: f64| (-(x - 0.2f64).powi(2) / 0.001).exp() + 1.1 * (-(x - 0.8f64).powi(2) / 0.001).exp();
        let m = argmax_1d(f, 0.0, 1.0, 201);
        assert!((m.x - 0.8).abs() < 1e-6);
    }

    #[test]
    fn two_dimensional() {
        let m =
            argmax_2d(|x, y| -(x - 0.25).powi(2) - 2.0 * (y - 0.6).powi(2) - x * y * 0.1, (0.0, 1.0), (0.0, 1.0), 101);
        // stationarity: -2(x-0.25) - 0.1 y = 0, -4(y-0.6) - 0.1 x = 0
        let y = (2.4 - 0.1 * 0.25) / (4.0 - 0.1 * 0.05);
        let x = 0.25 - 0.05 * y;
        assert!((m.x - x).abs() < 1e-6 && (m.y - y).abs() < 1e-6);
    }
}
