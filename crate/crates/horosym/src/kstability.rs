//! The K-stability functional of horospherical degenerations.
//!
//! For a rank-two space with Duistermaat-Heckman polynomial `P` and sum of
//! positive roots `ϖ`, the Reeb direction `β ⊥ δ`, `δ = α2 - t α1`, defines a
//! conical Calabi-Yau structure on the horospherical tangent cone iff
//!
//! ```text
//! Q(t) = ∫_{λ-}^{λ+} p P(ϖ + p δ) dp = 0,
//! λ+ = -⟨α1,ϖ⟩/⟨α1,δ⟩ > 0,   λ- = -⟨α2,ϖ⟩/⟨α2,δ⟩ < 0.
//! ```
//!
//! `Q` is computed per rational `t` by exact expansion and exact integration.
//! For the `A2` and `R1xR1` kinds the root is exactly rational; for `BC2`/`B2`
//! it is certified by sign bisection; for `G2` the search reports no positive
//! root, reproducing the exclusion.

use crate::polyalg::{
    isolate_unique_positive_root, lagrange_interpolate, poly_definite_integral, poly_div_exact,
    RationalPoly, RootIsolation,
};
use crate::rational::{fmt_rat, rat, rat_to_f64, rint, sign, Rat};
use crate::rootdata::{dh_polynomial, Multiplicities, SymmetricSpaceData};
use num_traits::{Pow, Signed, Zero};
use serde::Serialize;

/// Exact value or certified bisection interval for the Reeb parameter.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum TStar {
    Exact(#[serde(serialize_with = "crate::report::ser_rat")] Rat),
    Interval {
        #[serde(serialize_with = "crate::report::ser_rat")]
        lo: Rat,
        #[serde(serialize_with = "crate::report::ser_rat")]
        hi: Rat,
    },
}

impl TStar {
    /// Rational representative (the exact value or the interval midpoint).
    pub fn representative(&self) -> Rat {
        match self {
            TStar::Exact(t) => t.clone(),
            TStar::Interval { lo, hi } => (lo + hi) / rint(2),
        }
    }
    pub fn to_f64(&self) -> f64 {
        rat_to_f64(&self.representative())
    }
    pub fn is_exact(&self) -> bool {
        matches!(self, TStar::Exact(_))
    }
}

/// Solved K-stability data at the Reeb parameter.
#[derive(Debug, Clone, PartialEq)]
pub struct KStabilityResult {
    pub t_star: TStar,
    /// `λ±` evaluated at the rational representative of `t*`.
    pub lambda_plus: Rat,
    pub lambda_minus: Rat,
    /// Vanishing orders of the restricted density at `λ±`.
    pub m_plus: usize,
    pub m_minus: usize,
    /// Normalized Reeb vector `β` in `(α1, α2)` coordinates, `⟨ϖ,β⟩ = n`.
    pub beta: [Rat; 2],
    /// `δ = α2 - t α1` at the representative.
    pub delta: [Rat; 2],
}

/// Failure modes of the Reeb solve.
#[derive(Debug, Clone, PartialEq)]
pub enum KStabilityError {
    /// `Q` kept one sign up to the cap: no K-stable Reeb vector inside the
    /// chamber (the `G2` path).
    NoPositiveRoot { sign: i8 },
    /// More than one sign change on the sampling lattice; never expected.
    MultipleSignChanges,
    /// Degenerate data (e.g. `⟨α1, δ⟩ >= 0` at the requested `t`).
    Degenerate(String),
    /// Rank-one input or otherwise unsupported space.
    Unsupported(String),
}

impl std::fmt::Display for KStabilityError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            KStabilityError::NoPositiveRoot { sign } => {
                write!(f, "Q(t) has constant sign {sign} on (0, cap]: no positive root")
            }
            KStabilityError::MultipleSignChanges => {
                write!(f, "multiple sign changes detected on the sampling lattice")
            }
            KStabilityError::Degenerate(s) => write!(f, "degenerate data: {s}"),
            KStabilityError::Unsupported(s) => write!(f, "unsupported: {s}"),
        }
    }
}

fn alpha1() -> [Rat; 2] {
    [rint(1), rint(0)]
}
fn alpha2() -> [Rat; 2] {
    [rint(0), rint(1)]
}

/// `δ = α2 - t α1` in `(α1, α2)` coordinates.
pub fn delta_coords(t: &Rat) -> [Rat; 2] {
    [-t.clone(), rint(1)]
}

/// Integration limits `λ±(t)`; errors when `⟨α1, δ⟩ >= 0`.
pub fn lambda_limits(space: &SymmetricSpaceData, t: &Rat) -> Result<(Rat, Rat), KStabilityError> {
    let d = delta_coords(t);
    let varpi = space.varpi();
    let a1d = space.roots.pair(&alpha1(), &d);
    let a2d = space.roots.pair(&alpha2(), &d);
    if !a1d.is_negative() {
        return Err(KStabilityError::Degenerate(format!(
            "<alpha1, delta> = {} not negative at t = {}",
            fmt_rat(&a1d),
            fmt_rat(t)
        )));
    }
    if !a2d.is_positive() {
        return Err(KStabilityError::Degenerate("<alpha2, delta> not positive".into()));
    }
    let lam_plus = -space.roots.pair(&alpha1(), &varpi) / a1d;
    let lam_minus = -space.roots.pair(&alpha2(), &varpi) / a2d;
    Ok((lam_minus, lam_plus))
}

/// Exact expansion of `P(ϖ + p δ)` as a polynomial in `p` at rational `t`.
pub fn restrict_dh_along_line(space: &SymmetricSpaceData, t: &Rat) -> RationalPoly {
    let d = delta_coords(t);
    let varpi = space.varpi();
    let mut acc = RationalPoly::constant(rint(1));
    for f in dh_polynomial(space).factors {
        let c0 = &f.pairing[0] * &varpi[0] + &f.pairing[1] * &varpi[1];
        let c1 = &f.pairing[0] * &d[0] + &f.pairing[1] * &d[1];
        acc = acc.mul(&RationalPoly::new(vec![c0, c1]).pow(f.mult as usize));
    }
    acc
}

/// The restricted density in factored float form: `(⟨α,ϖ⟩, ⟨α,δ⟩, m_α)` per
/// positive root, for the numerical layer (no expanded-coefficient
/// cancellation near the vanishing ends).
pub fn restricted_factors_f64(space: &SymmetricSpaceData, t: &Rat) -> Vec<(f64, f64, u32)> {
    let d = delta_coords(t);
    let varpi = space.varpi();
    dh_polynomial(space)
        .factors
        .iter()
        .map(|f| {
            (
                rat_to_f64(&(&f.pairing[0] * &varpi[0] + &f.pairing[1] * &varpi[1])),
                rat_to_f64(&(&f.pairing[0] * &d[0] + &f.pairing[1] * &d[1])),
                f.mult,
            )
        })
        .collect()
}

/// Vanishing order of the restriction at `x` (counted from the factored form).
pub fn vanishing_order(space: &SymmetricSpaceData, t: &Rat, x: &Rat) -> usize {
    let d = delta_coords(t);
    let varpi = space.varpi();
    let mut order = 0usize;
    for f in dh_polynomial(space).factors {
        let v = &f.pairing[0] * &varpi[0]
            + &f.pairing[1] * &varpi[1]
            + x * (&f.pairing[0] * &d[0] + &f.pairing[1] * &d[1]);
        if v.is_zero() {
            order += f.mult as usize;
        }
    }
    order
}

/// Exact `Q(t) = ∫_{λ-}^{λ+} p P(ϖ + p δ) dp`.
pub fn q_functional(space: &SymmetricSpaceData, t: &Rat) -> Result<Rat, KStabilityError> {
    let (lam_minus, lam_plus) = lambda_limits(space, t)?;
    let integrand = restrict_dh_along_line(space, t).shift_up();
    Ok(poly_definite_integral(&integrand, &lam_minus, &lam_plus))
}

/// Normalized Reeb vector at rational `t`: solves `⟨β, δ⟩ = 0`, `⟨ϖ, β⟩ = n`.
pub fn beta_at(space: &SymmetricSpaceData, t: &Rat) -> Result<[Rat; 2], KStabilityError> {
    let d = delta_coords(t);
    let g = &space.roots.gram;
    // beta = y a1 + x a2 with x/y = (t g11 - g12)/(g22 - t g12)
    let xn = t * &g[0][0] - &g[0][1];
    let yn = &g[1][1] - t * &g[0][1];
    if !xn.is_positive() || !yn.is_positive() {
        return Err(KStabilityError::Degenerate(
            "unnormalized Reeb direction leaves the dual cone".into(),
        ));
    }
    let raw = [yn, xn];
    let varpi = space.varpi();
    let scale = rint(space.n) / space.roots.pair(&varpi, &raw);
    let beta = [&raw[0] * &scale, &raw[1] * &scale];
    debug_assert!(space.roots.pair(&beta, &d).is_zero());
    Ok(beta)
}

/// Exact `t` for the `R1xR1` product law,
/// `t = (m1+2m̂1)(m2+m̂2+1) / ((m2+2m̂2)(m1+m̂1+1))`.
pub fn r1xr1_t_formula(m1: i64, mh1: i64, m2: i64, mh2: i64) -> Rat {
    rat((m1 + 2 * mh1) * (m2 + mh2 + 1), (m2 + 2 * mh2) * (m1 + mh1 + 1))
}

/// Rank-one K-stable Reeb coefficient `n/(n-1+m̂)` on `ω^∨`, `n = 1+m+m̂`.
pub fn rank_one_reeb(m: i64, mh: i64) -> Rat {
    assert!(m >= 1 && mh >= 0);
    let n = 1 + m + mh;
    rat(n, n - 1 + mh)
}

fn result_at(space: &SymmetricSpaceData, t_star: TStar) -> Result<KStabilityResult, KStabilityError> {
    let t = t_star.representative();
    let (lam_minus, lam_plus) = lambda_limits(space, &t)?;
    let m_plus = vanishing_order(space, &t, &lam_plus);
    let m_minus = vanishing_order(space, &t, &lam_minus);
    let beta = beta_at(space, &t)?;
    Ok(KStabilityResult {
        t_star,
        lambda_plus: lam_plus,
        lambda_minus: lam_minus,
        m_plus,
        m_minus,
        beta,
        delta: delta_coords(&t),
    })
}

/// Solve for the K-stable Reeb parameter.
///
/// `A2` and `R1xR1` return the exact rational root (with `Q = 0` asserted
/// exactly); `B2`/`BC2` bisect to a certified interval of width `tol`; `G2`
/// reports the exclusion.
pub fn solve_kstable_t(
    space: &SymmetricSpaceData,
    tol: &Rat,
) -> Result<KStabilityResult, KStabilityError> {
    if space.rank() != 2 {
        return Err(KStabilityError::Unsupported("rank-one space: use rank_one_reeb".into()));
    }
    match space.mults {
        Multiplicities::A2 { .. } => {
            let t = rint(1);
            let q = q_functional(space, &t)?;
            assert!(q.is_zero(), "Q(1) must vanish exactly on A2");
            result_at(space, TStar::Exact(t))
        }
        Multiplicities::R1xR1 { m1, mh1, m2, mh2 } => {
            let t = r1xr1_t_formula(m1, mh1, m2, mh2);
            let q = q_functional(space, &t)?;
            assert!(q.is_zero(), "Q(t_formula) must vanish exactly on R1xR1");
            result_at(space, TStar::Exact(t))
        }
        Multiplicities::Bc2 { .. } | Multiplicities::G2 { .. } => {
            let cap = if space.is_g2() { rint(64) } else { rint(1 << 20) };
            let oracle = |t: &Rat| -> i8 {
                match q_functional(space, t) {
                    Ok(q) => sign(&q),
                    Err(_) => 0,
                }
            };
            match isolate_unique_positive_root(&oracle, &rint(2), tol, &cap) {
                RootIsolation::Bracket { lo, hi } => result_at(space, TStar::Interval { lo, hi }),
                RootIsolation::ExactRoot(t) => result_at(space, TStar::Exact(t)),
                RootIsolation::NoSignChangeUpToCap { sign, .. } => {
                    Err(KStabilityError::NoPositiveRoot { sign })
                }
                RootIsolation::MultipleSignChanges => Err(KStabilityError::MultipleSignChanges),
            }
        }
        Multiplicities::RankOne { .. } => {
            Err(KStabilityError::Unsupported("rank-one space".into()))
        }
    }
}

// ---------------------------------------------------------------------------
// G2 exclusion
// ---------------------------------------------------------------------------

/// Printed exclusion polynomial for the `G2` spaces (`m = 1` quintic,
/// `m = 2` degree nine).
pub fn g2_printed_polynomial(m: i64) -> RationalPoly {
    let coeffs: Vec<i64> = match m {
        1 => vec![2376, 9225, 13407, 9357, 3179, 424],
        2 => vec![
            20558772, 134444448, 374274594, 590688162, 587394519, 383740299, 165293858, 45384306,
            7221048, 507988,
        ],
        _ => panic!("G2 exclusion is tabulated for m in {{1, 2}}"),
    };
    RationalPoly::new(coeffs.into_iter().map(rint).collect())
}

#[derive(Debug, Clone, Serialize)]
pub struct G2ExclusionReport {
    pub m: i64,
    /// Sign of `Q` on the rational sampling lattice of `(0, 64]`.
    pub lattice_sign: i8,
    pub lattice_points: usize,
    /// The interpolated cleared functional is `scalar * (3t+5)^e5 * (t+2)^e2
    /// * (2t+3)^e3 * printed`, with `scalar * sign(printed-side) < 0`.
    pub proportionality_ok: bool,
    #[serde(serialize_with = "crate::report::ser_rat")]
    pub scalar: Rat,
    pub exp_3t5: usize,
    pub exp_t2: usize,
    pub exp_2t3: usize,
    pub printed_all_positive: bool,
    pub no_positive_rational_root: bool,
}

/// Verify the `G2` exclusion along the derivation path: constant sign of `Q`
/// on a lattice, exact proportionality of the cleared functional to the
/// printed polynomial, and the rational-root theorem on the printed one.
pub fn g2_exclusion_report(m: i64) -> Result<G2ExclusionReport, KStabilityError> {
    assert!(m == 1 || m == 2, "m must be 1 or 2");
    let space = crate::rootdata::space_from_mults("G2:m", Multiplicities::G2 { m })
        .expect("valid G2 multiplicities");

    // (a) constant sign on the lattice {1/4, 1/2, ..., 64}
    let mut lattice_sign = 0i8;
    let mut lattice_points = 0usize;
    let mut t = rat(1, 4);
    while t <= rint(64) {
        let s = sign(&q_functional(&space, &t)?);
        if s == 0 {
            return Err(KStabilityError::Degenerate("Q vanished on the G2 lattice".into()));
        }
        if lattice_sign == 0 {
            lattice_sign = s;
        } else if s != lattice_sign {
            return Err(KStabilityError::MultipleSignChanges);
        }
        lattice_points += 1;
        t *= rint(2);
    }

    // (b) interpolate N(t) = Q(t) (t+2)^D (2t+3)^D, D = 6m+2, then factor
    let dd = (6 * m + 2) as usize;
    let degree_bound = 6 * m as usize + 2 * dd + 2;
    let mut points = vec![];
    for k in 1..=(degree_bound + 4) {
        let tk = rint(k as i64);
        let q = q_functional(&space, &tk)?;
        let clear = (tk.clone() + rint(2)).pow(dd as i32) * (rint(2) * &tk + rint(3)).pow(dd as i32);
        points.push((tk, q * clear));
    }
    let n_poly = lagrange_interpolate(&points);
    // consistency: one extra node must be reproduced
    let t_extra = rint((degree_bound + 5) as i64);
    let q_extra = q_functional(&space, &t_extra)?
        * (t_extra.clone() + rint(2)).pow(dd as i32)
        * (rint(2) * &t_extra + rint(3)).pow(dd as i32);
    assert_eq!(n_poly.eval(&t_extra), q_extra, "interpolation degree bound too small");

    let printed = g2_printed_polynomial(m);
    let mut quotient = poly_div_exact(&n_poly, &printed)
        .ok_or_else(|| KStabilityError::Degenerate("printed polynomial does not divide".into()))?;
    let mut exp_3t5 = 0;
    let mut exp_t2 = 0;
    let mut exp_2t3 = 0;
    loop {
        if let Some(q) = poly_div_exact(&quotient, &RationalPoly::linear_i(5, 3)) {
            quotient = q;
            exp_3t5 += 1;
        } else if let Some(q) = poly_div_exact(&quotient, &RationalPoly::linear_i(2, 1)) {
            quotient = q;
            exp_t2 += 1;
        } else if let Some(q) = poly_div_exact(&quotient, &RationalPoly::linear_i(3, 2)) {
            quotient = q;
            exp_2t3 += 1;
        } else {
            break;
        }
    }
    let proportionality_ok = quotient.degree() == 0 && !quotient.is_zero();
    let scalar = quotient.coeff(0);

    // (c) rational-root theorem on the printed polynomial: all positive
    // coefficients, hence no positive real (a fortiori rational) root
    let printed_all_positive = printed.coeffs().iter().all(|c| c.is_positive());

    Ok(G2ExclusionReport {
        m,
        lattice_sign,
        lattice_points,
        proportionality_ok,
        scalar,
        exp_3t5,
        exp_t2,
        exp_2t3,
        printed_all_positive,
        no_positive_rational_root: printed_all_positive,
    })
}

// ---------------------------------------------------------------------------
// irrationality probe
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct IrrationalityReport {
    pub family: String,
    pub r: i64,
    /// Degree of the cleared polynomial whose positive roots contain `t*`.
    pub degree: usize,
    /// Unit-width integer bracket of the unique positive root in the monic
    /// `y = lead * t` coordinates.
    pub root_bracket: (String, String),
    pub rational_root: Option<String>,
    pub verdict: String,
}

/// Families covered by the irrationality conjecture probe.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProbeFamily {
    AIIIa,
    CIIa,
}

impl ProbeFamily {
    pub fn space(&self, r: i64) -> Result<SymmetricSpaceData, String> {
        match self {
            ProbeFamily::AIIIa => crate::rootdata::catalog_space("AIIIa", Some(r)),
            ProbeFamily::CIIa => crate::rootdata::catalog_space("CIIa", Some(r)),
        }
    }
    pub fn name(&self) -> &'static str {
        match self {
            ProbeFamily::AIIIa => "AIIIa",
            ProbeFamily::CIIa => "CIIa",
        }
    }
}

/// Build the exact cleared polynomial `N(t) = Q(t) (1+t)^D (2+t)^D`, strip
/// excess positive linear factors, and decide rationality of its unique
/// positive root without integer factoring: a rational root of the primitive
/// integer polynomial corresponds to an integer root of the monic transform
/// `y = lead * t`, located by unit-width bisection.
pub fn irrationality_probe(family: ProbeFamily, r: i64) -> Result<IrrationalityReport, String> {
    let space = family.space(r)?;
    let mults = match space.mults {
        Multiplicities::Bc2 { m1, m2, m3 } => (m1, m2, m3),
        _ => unreachable!(),
    };
    let deg_p = 2 * (mults.0 + mults.1 + mults.2) as usize;
    let dd = deg_p + 2;
    let degree_bound = deg_p + 2 * dd + 2;
    let mut points = vec![];
    for k in 1..=(degree_bound + 4) {
        let tk = rint(k as i64);
        let q = q_functional(&space, &tk).map_err(|e| e.to_string())?;
        let clear = (rint(1) + &tk).pow(dd as i32) * (rint(2) + &tk).pow(dd as i32);
        points.push((tk, q * clear));
    }
    let mut n_poly = lagrange_interpolate(&points);
    let t_extra = rint((degree_bound + 5) as i64);
    let q_extra = q_functional(&space, &t_extra).map_err(|e| e.to_string())?
        * (rint(1) + &t_extra).pow(dd as i32)
        * (rint(2) + &t_extra).pow(dd as i32);
    if n_poly.eval(&t_extra) != q_extra {
        return Err("interpolation did not close; degree bound too small".into());
    }
    // strip excess positive factors so the positive roots are exactly t*
    loop {
        if let Some(q) = poly_div_exact(&n_poly, &RationalPoly::linear_i(1, 1)) {
            n_poly = q;
        } else if let Some(q) = poly_div_exact(&n_poly, &RationalPoly::linear_i(2, 1)) {
            n_poly = q;
        } else if let Some(q) = poly_div_exact(&n_poly, &RationalPoly::linear_i(3, 2)) {
            n_poly = q;
        } else {
            break;
        }
    }

    // primitive integer form with positive leading coefficient
    let mut denom_lcm = num_bigint::BigInt::from(1);
    for c in n_poly.coeffs() {
        denom_lcm = num_integer::lcm(denom_lcm, c.denom().clone());
    }
    let int_poly = n_poly.scale(&Rat::from_integer(denom_lcm));
    let mut content = num_bigint::BigInt::from(0);
    for c in int_poly.coeffs() {
        content = num_integer::gcd(content, c.numer().clone());
    }
    let mut int_poly = int_poly.scale(&(rint(1) / Rat::from_integer(content)));
    if int_poly.coeff(int_poly.degree()).is_negative() {
        int_poly = int_poly.neg();
    }

    // monic transform y = lead * t: rational roots of the primitive
    // polynomial correspond to integer roots of M(y) = lead^{d-1} P(y/lead)
    let lead = int_poly.coeff(int_poly.degree());
    let eval_scaled = |y: &Rat| -> Rat { int_poly.eval(&(y / &lead)) };

    // bracket the unique positive root of Q in y-coordinates
    let t_res = solve_kstable_t(&space, &rat(1, 1 << 20)).map_err(|e| e.to_string())?;
    let (tlo, thi) = match &t_res.t_star {
        TStar::Exact(t) => (t.clone(), t.clone()),
        TStar::Interval { lo, hi } => (lo.clone(), hi.clone()),
    };
    let mut rational_root = None;
    if let TStar::Exact(t) = &t_res.t_star {
        if int_poly.eval(t).is_zero() {
            rational_root = Some(fmt_rat(t));
        }
    }
    // integer binary search for the sign flip of the monic transform: a
    // rational root p/q of the primitive polynomial forces q | lead, so the
    // root would appear as an integer y* = lead * t* with M(y*) = 0
    let lead_rat = Rat::from_integer(lead.numer().clone());
    let mut ylo = (&tlo * &lead_rat).floor().to_integer();
    let mut yhi = (&thi * &lead_rat).ceil().to_integer();
    let (blo, bhi) = (ylo.clone(), yhi.clone());
    let sign_at = |k: &num_bigint::BigInt| -> i8 { sign(&eval_scaled(&Rat::from_integer(k.clone()))) };
    if rational_root.is_none() {
        let slo = sign_at(&ylo);
        let shi = sign_at(&yhi);
        if slo == 0 {
            rational_root = Some(fmt_rat(&(Rat::from_integer(ylo.clone()) / &lead_rat)));
        } else if shi == 0 {
            rational_root = Some(fmt_rat(&(Rat::from_integer(yhi.clone()) / &lead_rat)));
        } else if slo != shi {
            let two = num_bigint::BigInt::from(2);
            while &yhi - &ylo > num_bigint::BigInt::from(1) {
                let mid = (&ylo + &yhi) / &two;
                let sm = sign_at(&mid);
                if sm == 0 {
                    rational_root =
                        Some(fmt_rat(&(Rat::from_integer(mid.clone()) / &lead_rat)));
                    break;
                }
                if sm == slo {
                    ylo = mid;
                } else {
                    yhi = mid;
                }
            }
        }
    }

    let verdict = match &rational_root {
        None => "no rational root found".to_string(),
        Some(v) => format!("rational root {v}"),
    };
    Ok(IrrationalityReport {
        family: family.name().into(),
        r,
        degree: int_poly.degree(),
        root_bracket: (blo.to_string(), bhi.to_string()),
        rational_root,
        verdict,
    })
}

/// Float view of the solved K-stability data for the numerical layer.
#[derive(Debug, Clone, Copy)]
pub struct KStabilityF64 {
    pub t: f64,
    pub lambda_plus: f64,
    pub lambda_minus: f64,
    pub m_plus: usize,
    pub m_minus: usize,
    pub beta: [f64; 2],
    pub delta: [f64; 2],
}

impl KStabilityResult {
    pub fn to_f64(&self) -> KStabilityF64 {
        KStabilityF64 {
            t: self.t_star.to_f64(),
            lambda_plus: rat_to_f64(&self.lambda_plus),
            lambda_minus: rat_to_f64(&self.lambda_minus),
            m_plus: self.m_plus,
            m_minus: self.m_minus,
            beta: [rat_to_f64(&self.beta[0]), rat_to_f64(&self.beta[1])],
            delta: [rat_to_f64(&self.delta[0]), rat_to_f64(&self.delta[1])],
        }
    }
}
