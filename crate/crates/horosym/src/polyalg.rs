//! Exact univariate polynomial arithmetic over `BigRational`, term-wise
//! antiderivatives, and sign-bisection isolation of a unique positive root.
//!
//! Everything here is exact; no floating point. This is the engine under the
//! K-stability functional: the Duistermaat-Heckman density restricted to a
//! line is a `RationalPoly` in the line parameter, and the criterion is the
//! vanishing of its exact first moment.

use crate::rational::{rat, rat_to_f64, sign, Rat};
use num_traits::{One, Zero};

/// Univariate polynomial, coefficients lowest degree first, normalized so the
/// leading coefficient is nonzero (the zero polynomial has no coefficients).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalPoly {
    coeffs: Vec<Rat>,
}

impl RationalPoly {
    pub fn zero() -> Self {
        RationalPoly { coeffs: vec![] }
    }

    pub fn constant(c: Rat) -> Self {
        Self::new(vec![c])
    }

    /// `c0 + c1 x` for machine integers.
    pub fn linear_i(c0: i64, c1: i64) -> Self {
        Self::new(vec![crate::rational::rint(c0), crate::rational::rint(c1)])
    }

    pub fn new(coeffs: Vec<Rat>) -> Self {
        let mut p = RationalPoly { coeffs };
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        while matches!(self.coeffs.last(), Some(c) if c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of the zero polynomial is reported as 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + rat_to_f64(c);
        }
        acc
    }

    /// Coefficients converted to `f64`, lowest degree first.
    pub fn coeffs_f64(&self) -> Vec<f64> {
        self.coeffs.iter().map(rat_to_f64).collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k) + other.coeff(k));
        }
        Self::new(out)
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::constant(Rat::one());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Multiply by the monomial `x`.
    pub fn shift_up(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut out = Vec::with_capacity(self.coeffs.len() + 1);
        out.push(Rat::zero());
        out.extend(self.coeffs.iter().cloned());
        Self::new(out)
    }

    /// Substitute `x -> a + b y`, returning the polynomial in `y`.
    pub fn compose_linear(&self, a: &Rat, b: &Rat) -> Self {
        let lin = Self::new(vec![a.clone(), b.clone()]);
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&lin).add(&Self::constant(c.clone()));
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        let mut out = Vec::with_capacity(self.coeffs.len() - 1);
        for (k, c) in self.coeffs.iter().enumerate().skip(1) {
            out.push(c * Rat::from_integer(k.into()));
        }
        Self::new(out)
    }

    /// Antiderivative with zero constant term.
    pub fn antiderivative(&self) -> Self {
        let mut out = Vec::with_capacity(self.coeffs.len() + 1);
        out.push(Rat::zero());
        for (k, c) in self.coeffs.iter().enumerate() {
            out.push(c / Rat::from_integer((k as u64 + 1).into()));
        }
        Self::new(out)
    }
}

/// Exact `∫_lo^hi q(p) dp` via the term-wise antiderivative.
pub fn poly_definite_integral(q: &RationalPoly, lo: &Rat, hi: &Rat) -> Rat {
    assert!(lo <= hi, "integration bounds out of order");
    let f = q.antiderivative();
    f.eval(hi) - f.eval(lo)
}

/// Exact sign of `q(x)`: -1, 0, +1.
pub fn poly_sign_at(q: &RationalPoly, x: &Rat) -> i8 {
    sign(&q.eval(x))
}

/// Outcome of the unique-positive-root search.
#[derive(Debug, Clone, PartialEq)]
pub enum RootIsolation {
    /// `lo < root < hi`, `hi - lo <= tol`, with a strict sign change across.
    Bracket { lo: Rat, hi: Rat },
    /// The oracle kept one sign on the whole doubling lattice up to the cap.
    NoSignChangeUpToCap { cap: Rat, sign: i8 },
    /// More than one sign change seen on the sampling lattice; aborted.
    MultipleSignChanges,
    /// The oracle vanished exactly at a lattice point.
    ExactRoot(Rat),
}

/// Default bisection tolerance, `10^-12`.
pub fn default_tol() -> Rat {
    rat(1, 1_000_000_000_000)
}

/// Default doubling cap, `2^20`.
pub fn default_cap() -> Rat {
    rat(1 << 20, 1)
}

/// Isolate the unique positive root of a continuous sign oracle.
///
/// Starting from `bracket_hint`, the upper end is doubled until the sign
/// differs from the sign near zero (sampled at `hint / 2^k` down to a small
/// floor). Bisection then narrows the bracket below `tol`. The caller
/// guarantees at most one sign change on `(0, ∞)`; a second change visible on
/// the lattice aborts loudly.
pub fn isolate_unique_positive_root<F>(
    oracle: F,
    bracket_hint: &Rat,
    tol: &Rat,
    cap: &Rat,
) -> RootIsolation
where
    F: Fn(&Rat) -> i8,
{
    // sample a small positive point for the base sign
    let mut base_pt = bracket_hint.clone() / rat(16, 1);
    // (kept as the left end of the first doubling interval)
    let floor = rat(1, 1 << 10);
    while base_pt > floor {
        base_pt /= rat(2, 1);
    }
    let base_sign = oracle(&base_pt);
    if base_sign == 0 {
        return RootIsolation::ExactRoot(base_pt);
    }

    // doubling search for a sign change
    let mut hi = bracket_hint.clone();
    let mut flips = 0usize;
    let mut bracket: Option<(Rat, Rat)> = None;
    let mut prev = base_pt.clone();
    let mut prev_sign = base_sign;
    loop {
        let s = oracle(&hi);
        if s == 0 {
            return RootIsolation::ExactRoot(hi);
        }
        if s != prev_sign {
            flips += 1;
            if bracket.is_none() {
                bracket = Some((prev.clone(), hi.clone()));
            }
        }
        prev = hi.clone();
        prev_sign = s;
        if &hi >= cap {
            break;
        }
        hi = (hi * rat(2, 1)).min(cap.clone());
    }
    if flips > 1 {
        return RootIsolation::MultipleSignChanges;
    }
    let (mut lo_b, mut hi_b) = match bracket {
        Some(b) => b,
        None => {
            return RootIsolation::NoSignChangeUpToCap {
                cap: cap.clone(),
                sign: base_sign,
            }
        }
    };
    let lo_sign = oracle(&lo_b);
    debug_assert_ne!(lo_sign, 0);
    while (&hi_b - &lo_b) > *tol {
        let mid = (&lo_b + &hi_b) / rat(2, 1);
        let s = oracle(&mid);
        if s == 0 {
            return RootIsolation::ExactRoot(mid);
        }
        if s == lo_sign {
            lo_b = mid;
        } else {
            hi_b = mid;
        }
    }
    RootIsolation::Bracket { lo: lo_b, hi: hi_b }
}

/// Exact Lagrange interpolation through `(x_i, y_i)` with distinct nodes.
pub fn lagrange_interpolate(points: &[(Rat, Rat)]) -> RationalPoly {
    let mut acc = RationalPoly::zero();
    for (i, (xi, yi)) in points.iter().enumerate() {
        if yi.is_zero() {
            continue;
        }
        let mut basis = RationalPoly::constant(Rat::one());
        let mut denom = Rat::one();
        for (j, (xj, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            basis = basis.mul(&RationalPoly::new(vec![-xj.clone(), Rat::one()]));
            denom *= xi - xj;
        }
        acc = acc.add(&basis.scale(&(yi / denom)));
    }
    acc
}

/// Exact division; returns `None` when the remainder is nonzero.
pub fn poly_div_exact(num: &RationalPoly, den: &RationalPoly) -> Option<RationalPoly> {
    assert!(!den.is_zero(), "division by zero polynomial");
    if num.is_zero() {
        return Some(RationalPoly::zero());
    }
    if num.degree() < den.degree() {
        return None;
    }
    let mut rem = num.coeffs.clone();
    let dd = den.degree();
    let lead = den.coeffs[dd].clone();
    let mut quot = vec![Rat::zero(); num.degree() - dd + 1];
    for k in (0..quot.len()).rev() {
        let c = &rem[k + dd] / &lead;
        if !c.is_zero() {
            for (j, dc) in den.coeffs.iter().enumerate() {
                let v = dc * &c;
                rem[k + j] -= v;
            }
        }
        quot[k] = c;
    }
    if rem.iter().any(|c| !c.is_zero()) {
        return None;
    }
    Some(RationalPoly::new(quot))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rint;
    use proptest::prelude::*;

    fn p(coeffs: &[i64]) -> RationalPoly {
        RationalPoly::new(coeffs.iter().map(|&c| rint(c)).collect())
    }

    #[test]
    fn odd_integrand_symmetric_interval_vanishes() {
        let q = p(&[0, 1]); // q = p
        assert!(poly_definite_integral(&q, &rat(-1, 1), &rat(1, 1)).is_zero());
    }

    #[test]
    fn constant_integral() {
        let q = p(&[1]);
        assert_eq!(poly_definite_integral(&q, &rat(0, 1), &rat(3, 2)), rat(3, 2));
    }

    #[test]
    fn a2_first_moment_vanishes() {
        // p * 2(1 - 9p^2/4) over [-2/3, 2/3]: the A2, m=1, t=1 restriction
        let p0 = RationalPoly::new(vec![rint(2), Rat::zero(), rat(-9, 2)]);
        let integrand = p0.shift_up();
        assert!(poly_definite_integral(&integrand, &rat(-2, 3), &rat(2, 3)).is_zero());
    }

    #[test]
    fn sign_examples() {
        assert_eq!(poly_sign_at(&p(&[1, 1]), &rat(-1, 1)), 0);
        assert_eq!(poly_sign_at(&p(&[-2, 0, 1]), &rat(3, 2)), 1);
        // G2 m=1 quintic at t=1: all coefficients positive
        let quintic = p(&[2376, 9225, 13407, 9357, 3179, 424]);
        assert_eq!(poly_sign_at(&quintic, &rat(1, 1)), 1);
    }

    #[test]
    fn bisection_finds_known_root() {
        let res = isolate_unique_positive_root(
            |t| crate::rational::sign(&(t - rat(1, 1))),
            &rat(2, 1),
            &rat(1, 1024),
            &default_cap(),
        );
        match res {
            RootIsolation::Bracket { lo, hi } => {
                assert!(lo < rat(1, 1) && rat(1, 1) < hi);
                assert!(&hi - &lo <= rat(1, 1024));
            }
            RootIsolation::ExactRoot(r) => assert_eq!(r, rat(1, 1)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn no_sign_change_reported() {
        let res = isolate_unique_positive_root(|_| 1, &rat(2, 1), &default_tol(), &rat(64, 1));
        assert!(matches!(res, RootIsolation::NoSignChangeUpToCap { sign: 1, .. }));
    }

    #[test]
    fn multiple_sign_changes_abort() {
        // sign changes at 3 and 5: visible on the doubling lattice {.., 4, 8}
        let res = isolate_unique_positive_root(
            |t| {
                if *t < rat(3, 1) || *t > rat(5, 1) {
                    1
                } else {
                    -1
                }
            },
            &rat(1, 1),
            &default_tol(),
            &rat(64, 1),
        );
        assert_eq!(res, RootIsolation::MultipleSignChanges);
    }

    #[test]
    fn interpolation_reproduces_polynomial() {
        let q = p(&[3, -2, 0, 5]);
        let pts: Vec<(Rat, Rat)> = (0..5).map(|k| (rint(k), q.eval(&rint(k)))).collect();
        assert_eq!(lagrange_interpolate(&pts), q);
    }

    #[test]
    fn exact_division() {
        let a = p(&[1, 2]).mul(&p(&[3, 0, 1]));
        assert_eq!(poly_div_exact(&a, &p(&[1, 2])).unwrap(), p(&[3, 0, 1]));
        assert!(poly_div_exact(&p(&[1, 1]), &p(&[1, 2])).is_none());
    }

    proptest! {
        #[test]
        fn integral_additivity(coeffs in proptest::collection::vec(-9i64..10, 0..6),
                               a in -4i64..5, b in -4i64..5, c in -4i64..5) {
            let mut ends = [a, b, c];
            ends.sort_unstable();
            let [a, b, c] = ends;
            let q = p(&coeffs);
            let left = poly_definite_integral(&q, &rint(a), &rint(b));
            let right = poly_definite_integral(&q, &rint(b), &rint(c));
            let total = poly_definite_integral(&q, &rint(a), &rint(c));
            prop_assert_eq!(left + right, total);
        }

        #[test]
        fn product_rule_under_integral(ca in proptest::collection::vec(-5i64..6, 1..4),
                                       cb in proptest::collection::vec(-5i64..6, 1..4)) {
            // ∫ (q1 q2)' = q1 q2 evaluated at the ends, checked on [0, 2]
            let q1 = p(&ca);
            let q2 = p(&cb);
            let prod = q1.mul(&q2);
            let deriv = q1.derivative().mul(&q2).add(&q1.mul(&q2.derivative()));
            let lhs = poly_definite_integral(&deriv, &rint(0), &rint(2));
            let rhs = prod.eval(&rint(2)) - prod.eval(&rint(0));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn compose_linear_matches_eval(coeffs in proptest::collection::vec(-5i64..6, 0..5),
                                       a in -3i64..4, b in -3i64..4, y in -3i64..4) {
            let q = p(&coeffs);
            let composed = q.compose_linear(&rint(a), &rint(b));
            prop_assert_eq!(composed.eval(&rint(y)), q.eval(&(rint(a) + rint(b) * rint(y))));
        }
    }
}
