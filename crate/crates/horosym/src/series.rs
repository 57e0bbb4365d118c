//! Truncated power series over f64 in an abstract small parameter `q`,
//! used by the expansion-coefficient recursion of the transverse solver.

/// Truncated series `sum c[k] q^k` of fixed length.
#[derive(Debug, Clone)]
pub struct Series {
    pub c: Vec<f64>,
}

impl Series {
    pub fn zeros(n: usize) -> Self {
        Series { c: vec![0.0; n] }
    }
    pub fn one(n: usize) -> Self {
        let mut s = Self::zeros(n);
        s.c[0] = 1.0;
        s
    }
    pub fn len(&self) -> usize {
        self.c.len()
    }
    pub fn is_empty(&self) -> bool {
        self.c.is_empty()
    }

    pub fn mul(&self, other: &Series) -> Series {
        let n = self.len();
        let mut out = Series::zeros(n);
        for i in 0..n {
            if self.c[i] == 0.0 {
                continue;
            }
            for j in 0..n - i {
                out.c[i + j] += self.c[i] * other.c[j];
            }
        }
        out
    }

    pub fn add(&self, other: &Series) -> Series {
        let mut out = self.clone();
        for (a, b) in out.c.iter_mut().zip(&other.c) {
            *a += b;
        }
        out
    }

    pub fn scale(&self, s: f64) -> Series {
        Series { c: self.c.iter().map(|v| v * s).collect() }
    }

    /// `(1 + z)^alpha` where `self = 1 + z`, `z` without constant term.
    pub fn pow_frac(&self, alpha: f64) -> Series {
        assert!((self.c[0] - 1.0).abs() < 1e-12, "pow_frac needs unit constant term");
        let n = self.len();
        let mut z = self.clone();
        z.c[0] = 0.0;
        let mut out = Series::one(n);
        let mut term = Series::one(n);
        let mut coef = 1.0;
        for k in 1..n {
            term = term.mul(&z);
            coef *= (alpha - (k as f64 - 1.0)) / k as f64;
            out = out.add(&term.scale(coef));
        }
        out
    }

    /// `exp(z)` for `z` without constant term.
    pub fn exp(&self) -> Series {
        assert!(self.c[0] == 0.0, "exp needs zero constant term");
        let n = self.len();
        let mut out = Series::one(n);
        let mut term = Series::one(n);
        let mut fact = 1.0;
        for k in 1..n {
            term = term.mul(self);
            fact /= k as f64;
            out = out.add(&term.scale(fact));
        }
        out
    }

    /// Functional inverse of `F(q) = q + f2 q^2 + ...` (unit derivative).
    pub fn invert_series(&self) -> Series {
        let n = self.len();
        assert!(self.c[0] == 0.0 && (self.c[1] - 1.0).abs() < 1e-12);
        let mut g = Series::zeros(n);
        g.c[1] = 1.0;
        for k in 2..n {
            // impose zero coefficient of y^k in F(g(y))
            let comp = self.compose(&g);
            g.c[k] -= comp.c[k];
        }
        g
    }

    /// Compose `self(other)`; `other` must have zero constant term.
    pub fn compose(&self, other: &Series) -> Series {
        assert!(other.c[0] == 0.0, "compose needs zero constant term");
        let n = self.len();
        let mut out = Series::zeros(n);
        out.c[0] = self.c[0];
        let mut pow = Series::one(n);
        for k in 1..n {
            pow = pow.mul(other);
            if self.c[k] != 0.0 {
                out = out.add(&pow.scale(self.c[k]));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn invert_round_trips() {
        let mut f = Series::zeros(8);
        f.c[1] = 1.0;
        f.c[2] = -0.5;
        f.c[3] = 0.25;
        let g = f.invert_series();
        let id = f.compose(&g);
        assert!((id.c[1] - 1.0).abs() < 1e-12);
        for k in 2..8 {
            assert!(id.c[k].abs() < 1e-10, "k={k}: {}", id.c[k]);
        }
    }

    #[test]
    fn exp_and_pow() {
        let mut z = Series::zeros(6);
        z.c[1] = 0.3;
        let e = z.exp();
        assert!((e.c[2] - 0.045).abs() < 1e-12);
        let mut one_plus = Series::one(6);
        one_plus.c[1] = 0.2;
        let half = one_plus.pow_frac(0.5);
        assert!((half.c[1] - 0.1).abs() < 1e-12);
        assert!((half.c[2] + 0.005).abs() < 1e-12);
    }
}
