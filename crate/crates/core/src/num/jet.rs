//! Truncated Taylor arithmetic used to differentiate smooth cutoffs exactly.

use super::math::exp;
use core::ops::{Add, Div, Mul, Neg, Sub};

pub const ORDER: usize = 4;

/// Taylor coefficients `c_k = f^{(k)}(x0)/k!` for `k ≤ 4`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet(pub [f64; ORDER + 1]);

impl Jet {
    pub fn constant(c: f64) -> Self {
        let mut a = [0.0; ORDER + 1];
        a[0] = c;
        Jet(a)
    }

    /// The independent variable at `x0`.
    pub fn variable(x0: f64) -> Self {
        let mut a = [0.0; ORDER + 1];
        a[0] = x0;
        a[1] = 1.0;
        Jet(a)
    }

    pub fn value(&self) -> f64 {
        self.0[0]
    }

    /// Derivatives `f, f′, …, f⁗`.
    pub fn derivatives(&self) -> [f64; ORDER + 1] {
        let mut d = self.0;
        let mut fact = 1.0;
        for (k, dk) in d.iter_mut().enumerate().skip(1) {
            fact *= k as f64;
            *dk *= fact;
        }
        d
    }

    pub fn exp(self) -> Self {
        let a = self.0;
        let mut e = [0.0; ORDER + 1];
        e[0] = exp(a[0]);
        for k in 1..=ORDER {
            let mut s = 0.0;
            for j in 1..=k {
                s += j as f64 * a[j] * e[k - j];
            }
            e[k] = s / k as f64;
        }
        Jet(e)
    }

    pub fn recip(self) -> Self {
        let a = self.0;
        let mut r = [0.0; ORDER + 1];
        r[0] = 1.0 / a[0];
        for k in 1..=ORDER {
            let mut s = 0.0;
            for j in 1..=k {
                s += a[j] * r[k - j];
            }
            r[k] = -s / a[0];
        }
        Jet(r)
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(self, o: Jet) -> Jet {
        let mut a = self.0;
        for (x, y) in a.iter_mut().zip(o.0) {
            *x += y;
        }
        Jet(a)
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(self, o: Jet) -> Jet {
        self + (-o)
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        Jet(self.0.map(|x| -x))
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, o: Jet) -> Jet {
        let mut c = [0.0; ORDER + 1];
        for i in 0..=ORDER {
            for j in 0..=ORDER - i {
                c[i + j] += self.0[i] * o.0[j];
            }
        }
        Jet(c)
    }
}

impl Div for Jet {
    type Output = Jet;
    fn div(self, o: Jet) -> Jet {
        self * o.recip()
    }
}

impl Mul<f64> for Jet {
    type Output = Jet;
    fn mul(self, s: f64) -> Jet {
        Jet(self.0.map(|x| x * s))
    }
}
