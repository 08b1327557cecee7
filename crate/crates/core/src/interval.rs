use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum IntervalError {
    #[error("interval endpoints must be finite (got a = {a}, b = {b})")]
    NonFinite { a: f64, b: f64 },
    #[error("interval endpoints must satisfy a < b (got a = {a}, b = {b})")]
    NotOrdered { a: f64, b: f64 },
    #[error("m = {m} must lie in (0, 1]")]
    InvalidM { m: f64 },
    #[error("a = {a} must be below m*b = {mb}")]
    ScaledNotOrdered { a: f64, mb: f64 },
    #[error("interval [{a}, {b}] is not contained in [0, {cap}]")]
    OutsideCap { a: f64, b: f64, cap: f64 },
}

/// Closed interval `[a, b]` with finite endpoints and `a < b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    a: f64,
    b: f64,
}

impl Interval {
    pub fn new(a: f64, b: f64) -> Result<Self, IntervalError> {
        if !a.is_finite() || !b.is_finite() {
            return Err(IntervalError::NonFinite { a, b });
        }
        if a >= b {
            return Err(IntervalError::NotOrdered { a, b });
        }
        Ok(Self { a, b })
    }

    #[inline]
    pub fn a(&self) -> f64 {
        self.a
    }

    #[inline]
    pub fn b(&self) -> f64 {
        self.b
    }

    #[inline]
    pub fn width(&self) -> f64 {
        self.b - self.a
    }

    #[inline]
    pub fn midpoint(&self) -> f64 {
        0.5 * (self.a + self.b)
    }

    pub fn contains(&self, x: f64) -> bool {
        self.a <= x && x <= self.b
    }

    /// The interval `[a, m*b]` governed by the (α,m) kernel identity.
    pub fn scaled_right(&self, m: f64) -> Result<Interval, IntervalError> {
        if !(m > 0.0 && m <= 1.0) {
            return Err(IntervalError::InvalidM { m });
        }
        let mb = m * self.b;
        if self.a >= mb {
            return Err(IntervalError::ScaledNotOrdered { a: self.a, mb });
        }
        Interval::new(self.a, mb)
    }

    /// Keeps `a` fixed and multiplies the width by `factor`.
    pub fn stretched(&self, factor: f64) -> Result<Interval, IntervalError> {
        Interval::new(self.a, self.a + factor * self.width())
    }

    /// Checks `[a, b] ⊆ [0, cap]`.
    pub fn ensure_within(&self, cap: f64) -> Result<(), IntervalError> {
        if self.a < 0.0 || self.b > cap {
            return Err(IntervalError::OutsideCap {
                a: self.a,
                b: self.b,
                cap,
            });
        }
        Ok(())
    }

    /// `n` equally spaced points with both endpoints hit exactly.
    pub fn grid(&self, n: usize) -> Vec<f64> {
        match n {
            0 => Vec::new(),
            1 => vec![self.midpoint()],
            _ => {
                let step = self.width() / (n - 1) as f64;
                (0..n)
                    .map(|i| {
                        if i == n - 1 {
                            self.b
                        } else {
                            self.a + i as f64 * step
                        }
                    })
                    .collect()
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_endpoints() {
        assert!(matches!(
            Interval::new(1.0, 1.0),
            Err(IntervalError::NotOrdered { .. })
        ));
        assert!(matches!(
            Interval::new(2.0, 1.0),
            Err(IntervalError::NotOrdered { .. })
        ));
        assert!(matches!(
            Interval::new(f64::NAN, 1.0),
            Err(IntervalError::NonFinite { .. })
        ));
        assert!(matches!(
            Interval::new(0.0, f64::INFINITY),
            Err(IntervalError::NonFinite { .. })
        ));
    }

    #[test]
    fn scaled_right_requires_a_below_mb() {
        let iv = Interval::new(0.5, 1.0).unwrap();
        assert_eq!(iv.scaled_right(0.8).unwrap().b(), 0.8);
        assert!(matches!(
            iv.scaled_right(0.5),
            Err(IntervalError::ScaledNotOrdered { .. })
        ));
        assert!(matches!(
            iv.scaled_right(0.0),
            Err(IntervalError::InvalidM { .. })
        ));
        assert!(matches!(
            iv.scaled_right(1.5),
            Err(IntervalError::InvalidM { .. })
        ));
    }

    #[test]
    fn grid_hits_endpoints() {
        let iv = Interval::new(-1.0, 3.0).unwrap();
        let g = iv.grid(7);
        assert_eq!(g.len(), 7);
        assert_eq!(g[0], -1.0);
        assert_eq!(g[6], 3.0);
        assert!(g.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn cap_check() {
        let iv = Interval::new(0.0, 2.0).unwrap();
        assert!(iv.ensure_within(2.0).is_ok());
        assert!(iv.ensure_within(1.5).is_err());
        assert!(Interval::new(-0.1, 1.0)
            .unwrap()
            .ensure_within(5.0)
            .is_err());
    }
}
