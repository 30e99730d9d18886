use crate::error::{Error, Result};

/// Bisection on a bracket where `f` changes sign. Returns an endpoint when
/// `f` vanishes there. Stops when the bracket cannot be split further in
/// `f64` or after `max_iter` halvings.
pub fn bisect<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, max_iter: usize) -> Result<f64> {
    let (mut a, mut b) = (lo, hi);
    let (fa, fb) = (f(a), f(b));
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::domain(format!("no sign change on [{lo}, {hi}]: f(lo) = {fa:e}, f(hi) = {fb:e}")));
    }
    let neg_at_a = fa < 0.0;
    for _ in 0..max_iter {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if (fm < 0.0) == neg_at_a {
            a = mid;
        } else {
            b = mid;
        }
    }
    Ok(0.5 * (a + b))
}

/// Real roots of `a x² + b x + c` in ascending order.
///
/// Uses the cancellation-free pair `q = -(b + sign(b) √disc) / 2`,
/// `x = q / a`, `x = c / q`. Falls back to the linear root when `a = 0`.
/// Returns no roots for a negative discriminant, for `a = b = 0, c ≠ 0`,
/// and for the all-zero polynomial.
pub fn solve_quadratic(a: f64, b: f64, c: f64) -> Vec<f64> {
    if a == 0.0 {
        return if b == 0.0 { Vec::new() } else { vec![-c / b] };
    }
    let disc = b * b - 4.0 * a * c;
    if disc < 0.0 {
        return Vec::new();
    }
    if disc == 0.0 {
        return vec![-b / (2.0 * a)];
    }
    let sign = if b < 0.0 { -1.0 } else { 1.0 };
    let q = -0.5 * (b + sign * disc.sqrt());
    let (r1, r2) = (q / a, c / q);
    if r1 <= r2 {
        vec![r1, r2]
    } else {
        vec![r2, r1]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simple_roots() {
        assert_eq!(solve_quadratic(1.0, -1.0, 0.0), vec![0.0, 1.0]);
        assert_eq!(solve_quadratic(1.0, 0.0, 1.0), Vec::<f64>::new());
        assert_eq!(solve_quadratic(0.0, 2.0, -1.0), vec![0.5]);
        assert_eq!(solve_quadratic(0.0, 0.0, 3.0), Vec::<f64>::new());
        assert_eq!(solve_quadratic(1.0, -2.0, 1.0), vec![1.0]);
    }

    #[test]
    fn duopoly_quadratic_at_zero_side_payment() {
        // 5 p² - (1 + 4η) pmax p - (η + η²) pmax² at η = 0
        let roots = solve_quadratic(5.0, -1.0, 0.0);
        assert_eq!(roots.len(), 2);
        assert_eq!(roots[0], 0.0);
        assert!((roots[1] - 0.2).abs() < 1e-16);
    }

    #[test]
    fn small_root_without_cancellation() {
        let roots = solve_quadratic(1.0, -1e8, 1.0);
        assert!((roots[0] - 1e-8).abs() < 1e-22);
    }

    #[test]
    fn bisect_requires_bracket() {
        assert!(bisect(|x| x * x + 1.0, -1.0, 1.0, 100).is_err());
        let r = bisect(|x| x * x - 2.0, 0.0, 2.0, 200).unwrap();
        assert!((r - 2f64.sqrt()).abs() < 1e-15);
    }
}
