use crate::num::math::{cos, sin, PI, SQRT_2};
use crate::{Error, Result};
use alloc::format;

/// Torus of revolution with center radius `R` and tube radius `r`,
/// parametrized by `Y(θ₁, θ₂) = ((R + r cos θ₁) cos θ₂, (R + r cos θ₁) sin θ₂, r sin θ₁)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TorusShape {
    big_r: f64,
    small_r: f64,
}

impl TorusShape {
    pub fn new(big_r: f64, small_r: f64) -> Result<Self> {
        if !(small_r > 0.0 && big_r > small_r && big_r.is_finite()) {
            return Err(Error::param(
                "shape",
                format!("need R > r > 0, got R = {big_r}, r = {small_r}"),
            ));
        }
        Ok(Self { big_r, small_r })
    }

    /// The Clifford torus `R = √2`, `r = 1`.
    pub fn clifford() -> Self {
        Self {
            big_r: SQRT_2,
            small_r: 1.0,
        }
    }

    /// Torus with ratio `R/r = ratio` and unit tube radius.
    pub fn with_ratio(ratio: f64) -> Result<Self> {
        Self::new(ratio, 1.0)
    }

    pub fn big_r(&self) -> f64 {
        self.big_r
    }

    pub fn small_r(&self) -> f64 {
        self.small_r
    }

    pub fn is_clifford(&self) -> bool {
        (self.big_r / self.small_r - SQRT_2).abs() <= 1e-12
    }

    /// The same torus dilated by `1/ε`.
    pub fn scaled(&self, eps: f64) -> Self {
        Self {
            big_r: self.big_r / eps,
            small_r: self.small_r / eps,
        }
    }

    /// Normal distance below which Fermi coordinates stay regular:
    /// `min(r, R − r)`.
    pub fn collar(&self) -> f64 {
        self.small_r.min(self.big_r - self.small_r)
    }

    pub fn area(&self) -> f64 {
        4.0 * PI * PI * self.big_r * self.small_r
    }

    pub fn enclosed_volume(&self) -> f64 {
        2.0 * PI * PI * self.big_r * self.small_r * self.small_r
    }

    /// `ρ = R + r cos θ₁`, the distance to the axis.
    pub fn rho(&self, theta1: f64) -> f64 {
        self.big_r + self.small_r * cos(theta1)
    }

    pub fn embedding(&self, theta1: f64, theta2: f64) -> [f64; 3] {
        let rho = self.rho(theta1);
        [
            rho * cos(theta2),
            rho * sin(theta2),
            self.small_r * sin(theta1),
        ]
    }

    /// Outward unit normal.
    pub fn normal(&self, theta1: f64, theta2: f64) -> [f64; 3] {
        let c = cos(theta1);
        [c * cos(theta2), c * sin(theta2), sin(theta1)]
    }
}
