use std::f64::consts::TAU;

/// Comparison policy for continuous carriers.
///
/// Moduli and real values compare relatively above 1 and absolutely below:
/// `|x - y| <= eps * max(1, |x|, |y|)`. Angles compare absolutely.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub eps: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance { eps: 1e-9 }
    }
}

impl Tolerance {
    pub fn new(eps: f64) -> Self {
        assert!(eps >= 0.0, "tolerance must be nonnegative");
        Tolerance { eps }
    }

    pub fn slack(&self, x: f64, y: f64) -> f64 {
        self.eps * 1f64.max(x.abs()).max(y.abs())
    }

    pub fn close(&self, x: f64, y: f64) -> bool {
        (x - y).abs() <= self.slack(x, y)
    }

    /// `x <= y` up to tolerance.
    pub fn le(&self, x: f64, y: f64) -> bool {
        x <= y + self.slack(x, y)
    }

    /// `x < y` and not tolerance-equal.
    pub fn lt(&self, x: f64, y: f64) -> bool {
        x < y && !self.close(x, y)
    }

    pub fn is_zero(&self, x: f64) -> bool {
        x.abs() <= self.eps
    }

    pub fn angle_close(&self, a: f64, b: f64) -> bool {
        angle_dist(a, b) <= self.eps
    }
}

/// Reduce an angle to `[0, 2π)`.
pub fn wrap(theta: f64) -> f64 {
    let mut t = theta.rem_euclid(TAU);
    if t >= TAU {
        t = 0.0;
    }
    t
}

/// Reduce an angle to `(-π, π]`.
pub fn wrap_signed(theta: f64) -> f64 {
    let t = wrap(theta);
    if t > std::f64::consts::PI {
        t - TAU
    } else {
        t
    }
}

/// Distance between two angles along the circle, in `[0, π]`.
pub fn angle_dist(a: f64, b: f64) -> f64 {
    wrap_signed(a - b).abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn wrap_ranges() {
        assert_eq!(wrap(-PI / 2.0), 1.5 * PI);
        assert_eq!(wrap(TAU), 0.0);
        assert!((wrap_signed(1.5 * PI) + PI / 2.0).abs() < 1e-15);
        assert!((angle_dist(0.1, TAU - 0.1) - 0.2).abs() < 1e-12);
    }

    #[test]
    fn relative_above_one() {
        let t = Tolerance::default();
        assert!(t.close(1e6, 1e6 + 1e-4));
        assert!(!t.close(1.0, 1.0 + 1e-8));
        assert!(t.close(1.0, 1.0 + 1e-12));
    }
}
