//! Exact verification layer for the bounded-geometry criterion and the
//! inequality chains behind the tangent-cone range bounds of the two infinite
//! `BC2` families. Everything here runs in exact rational arithmetic end to
//! end; thresholds are compared exactly, never in floating point.

use crate::kstability::{q_functional, TStar};
use crate::polyalg::{poly_definite_integral, RationalPoly};
use crate::rational::{fmt_rat, rat, rint, sign, Rat};
use crate::rootdata::{catalog_space, Multiplicities, SymmetricSpaceData};
use num_traits::{One, Pow, Signed, Zero};
use serde::Serialize;

// ---------------------------------------------------------------------------
// Appell F1
// ---------------------------------------------------------------------------

/// Exact Appell `F1(a, b1, b2, c; y, z)` for nonpositive integer `b1, b2`
/// (finite double sum) and integer `c > a >= 1`:
///
/// ```text
/// F1 = Σ_{m,n} (a)_{m+n} (b1)_m (b2)_n / ((c)_{m+n} m! n!) y^m z^n.
/// ```
///
/// The Pochhammer/factorial convention is the standard one, validated against
/// the Euler integral representation.
pub fn appell_f1(a: i64, b1: i64, b2: i64, c: i64, y: &Rat, z: &Rat) -> Result<Rat, String> {
    if b1 > 0 || b2 > 0 {
        return Err("F1 is evaluated exactly only for b1, b2 <= 0 (terminating sum)".into());
    }
    if a < 1 || c <= a {
        return Err("need integer c > a >= 1".into());
    }
    let mmax = (-b1) as usize;
    let nmax = (-b2) as usize;
    // Pochhammer tables
    let poch = |x: i64, k: usize| -> Rat {
        let mut acc = Rat::one();
        for j in 0..k as i64 {
            acc *= rint(x + j);
        }
        acc
    };
    let mut total = Rat::zero();
    for mm in 0..=mmax {
        for nn in 0..=nmax {
            let mut term = poch(a, mm + nn) * poch(b1, mm) * poch(b2, nn) / poch(c, mm + nn);
            let mut fact = Rat::one();
            for j in 1..=mm {
                fact *= rint(j as i64);
            }
            for j in 1..=nn {
                fact *= rint(j as i64);
            }
            term /= fact;
            term *= y.pow(mm as i32) * z.pow(nn as i32);
            total += term;
        }
    }
    Ok(total)
}

/// Exact beta function at positive integers: `B(a, b) = (a-1)!(b-1)!/(a+b-1)!`.
pub fn beta_int(a: i64, b: i64) -> Rat {
    assert!(a >= 1 && b >= 1);
    let mut num = Rat::one();
    for j in 1..a {
        num *= rint(j);
    }
    for j in 1..b {
        num *= rint(j);
    }
    let mut den = Rat::one();
    for j in 1..(a + b) {
        den *= rint(j);
    }
    num / den
}

/// Exact `∫_0^1 u^{a-1} (1-u)^{c-a-1} (1-yu)^{-b1} (1-zu)^{-b2} du` for
/// nonpositive integer `b1, b2` (polynomial integrand).
pub fn f1_euler_integral(a: i64, b1: i64, b2: i64, c: i64, y: &Rat, z: &Rat) -> Rat {
    let u = RationalPoly::new(vec![Rat::zero(), Rat::one()]);
    let one_minus_u = RationalPoly::new(vec![Rat::one(), -Rat::one()]);
    let mut integrand = u.pow((a - 1) as usize).mul(&one_minus_u.pow((c - a - 1) as usize));
    let f1p = RationalPoly::new(vec![Rat::one(), -y.clone()]).pow((-b1) as usize);
    let f2p = RationalPoly::new(vec![Rat::one(), -z.clone()]).pow((-b2) as usize);
    integrand = integrand.mul(&f1p).mul(&f2p);
    poly_definite_integral(&integrand, &Rat::zero(), &Rat::one())
}

// ---------------------------------------------------------------------------
// H_r inequality chains (tangent-cone range bounds)
// ---------------------------------------------------------------------------

/// The three `H_r` checks: each is a ratio of two weighted moments
/// `∫_0^1 u^{k} (1 - y u)^{e_y} (1-u)^{E} (1-z u)^{E} du` compared with an
/// exact threshold, certifying a sign of `Q` at a specific `t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HrFamily {
    /// `(2r-8, 2, 1)` at `t = 6`: `H_r(-1/7) > (4r-5)/7` iff `Q(6, r) < 0`.
    AIIIa,
    /// `(4r-16, 4, 3)` at `t = 10/3`: `H_r(-3/13) > (8r-7)/13` iff
    /// `Q(10/3, r) < 0`.
    CIIa,
    /// `(4r-16, 4, 3)` at `t = 1`: `H_r(-1/2) > 8/(6r-7)` iff `Q(1, r) > 0`.
    CIIaT1,
}

impl HrFamily {
    pub fn name(&self) -> &'static str {
        match self {
            HrFamily::AIIIa => "AIIIa",
            HrFamily::CIIa => "CIIa",
            HrFamily::CIIaT1 => "CIIa_t1",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct HrReport {
    pub family: String,
    pub r: i64,
    #[serde(serialize_with = "crate::report::ser_rat")]
    pub value: Rat,
    #[serde(serialize_with = "crate::report::ser_rat")]
    pub threshold: Rat,
    pub inequality_holds: bool,
    /// Printed closed form `H_r(0)` agrees with the exact moment ratio.
    pub h0_closed_form_ok: bool,
    /// Convexity support line `H_r(0) + H'_r(0) z` stays below the exact
    /// value at the target `z`.
    pub tangent_bound_holds: bool,
}

/// Exact moment `∫_0^1 u^{upow} (1 - w u)^{wp} (1-u)^{e} (1-z u)^{e} du`.
fn moment(upow: i64, w: &Rat, wp: i64, e: i64, z: &Rat) -> Rat {
    let u = RationalPoly::new(vec![Rat::zero(), Rat::one()]);
    let mut f = u.pow(upow as usize);
    f = f.mul(&RationalPoly::new(vec![Rat::one(), -w.clone()]).pow(wp as usize));
    f = f.mul(&RationalPoly::new(vec![Rat::one(), -Rat::one()]).pow(e as usize));
    f = f.mul(&RationalPoly::new(vec![Rat::one(), -z.clone()]).pow(e as usize));
    poly_definite_integral(&f, &Rat::zero(), &Rat::one())
}

struct HrData {
    /// `u`-powers of (numerator, denominator).
    num_pow: i64,
    den_pow: i64,
    weight: Rat,
    weight_pow: i64,
    exponent: i64,
    z: Rat,
    threshold: Rat,
    h0: Rat,
    h0p: Rat,
}

fn hr_data(family: HrFamily, r: i64) -> HrData {
    let rr = rint(r);
    match family {
        HrFamily::AIIIa => HrData {
            num_pow: 2,
            den_pow: 3,
            weight: rat(3, 7),
            weight_pow: 2,
            exponent: 2 * r - 7,
            z: rat(-1, 7),
            threshold: rat(4 * r - 5, 7),
            // printed closed forms for H_r(0) and H'_r(0)
            h0: (rint(-1) + rint(2) * &rr)
                * (rint(327) - rint(371) * &rr + rint(98) * &rr * &rr)
                / (rint(3) * (rint(223) - rint(315) * &rr + rint(98) * &rr * &rr)),
            h0p: {
                let g = rint(223) - rint(315) * &rr + rint(98) * &rr * &rr;
                (rint(-7) + rint(2) * &rr)
                    * (rint(-88290) + rint(296949) * &rr - rint(400372) * &rr.clone().pow(2)
                        + rint(260141) * &rr.clone().pow(3)
                        - rint(80948) * &rr.clone().pow(4)
                        + rint(9604) * &rr.clone().pow(5))
                    / (rint(3) * &rr * &g * &g)
            },
        },
        HrFamily::CIIa => HrData {
            num_pow: 4,
            den_pow: 5,
            weight: rat(5, 13),
            weight_pow: 4,
            exponent: 4 * r - 13,
            z: rat(-3, 13),
            threshold: rat(8 * r - 7, 13),
            h0: {
                let g = rint(5914845) - rint(15897921) * &rr + rint(15254278) * &rr.clone().pow(2)
                    - rint(6221904) * &rr.clone().pow(3)
                    + rint(913952) * &rr.clone().pow(4);
                (rint(-3) + rint(4) * &rr)
                    * (rint(9009405) - rint(21344609) * &rr + rint(18336838) * &rr.clone().pow(2)
                        - rint(6784336) * &rr.clone().pow(3)
                        + rint(913952) * &rr.clone().pow(4))
                    / (rint(5) * g)
            },
            h0p: {
                let g = rint(5914845) - rint(15897921) * &rr + rint(15254278) * &rr.clone().pow(2)
                    - rint(6221904) * &rr.clone().pow(3)
                    + rint(913952) * &rr.clone().pow(4);
                rint(2) * (rint(-13) + rint(4) * &rr)
                    * (rint(-59648595700050i64)
                        + rint(361147658887485i64) * &rr
                        - rint(953718016145076i64) * &rr.clone().pow(2)
                        + rint(1440364128450741i64) * &rr.clone().pow(3)
                        - rint(1370700222571316i64) * &rr.clone().pow(4)
                        + rint(852476267292676i64) * &rr.clone().pow(5)
                        - rint(346597132254464i64) * &rr.clone().pow(6)
                        + rint(88867036945024i64) * &rr.clone().pow(7)
                        - rint(13043659725824i64) * &rr.clone().pow(8)
                        + rint(835308258304i64) * &rr.clone().pow(9))
                    / (rint(5) * (rint(-1) + rint(2) * &rr) * &g * &g)
            },
        },
        HrFamily::CIIaT1 => HrData {
            num_pow: 5,
            den_pow: 4,
            weight: rat(1, 4),
            weight_pow: 4,
            exponent: 4 * r - 13,
            z: rat(-1, 2),
            threshold: rat(8, 6 * r - 7),
            h0: {
                let g = (rint(-3) + rint(4) * &rr)
                    * (rint(27585) - rint(71832) * &rr + rint(67904) * &rr.clone().pow(2)
                        - rint(27648) * &rr.clone().pow(3)
                        + rint(4096) * &rr.clone().pow(4));
                rint(5)
                    * (rint(15741) - rint(48336) * &rr + rint(52928) * &rr.clone().pow(2)
                        - rint(24576) * &rr.clone().pow(3)
                        + rint(4096) * &rr.clone().pow(4))
                    / g
            },
            h0p: {
                let g = (rint(-3) + rint(4) * &rr)
                    * (rint(27585) - rint(71832) * &rr + rint(67904) * &rr.clone().pow(2)
                        - rint(27648) * &rr.clone().pow(3)
                        + rint(4096) * &rr.clone().pow(4));
                rint(10) * (rint(-13) + rint(4) * &rr)
                    * (rint(-367033275i64) + rint(2594714553i64) * &rr
                        - rint(7943750640i64) * &rr.clone().pow(2)
                        + rint(13824076800i64) * &rr.clone().pow(3)
                        - rint(15075823616i64) * &rr.clone().pow(4)
                        + rint(10689089536i64) * &rr.clone().pow(5)
                        - rint(4929290240i64) * &rr.clone().pow(6)
                        + rint(1426063360i64) * &rr.clone().pow(7)
                        - rint(234881024i64) * &rr.clone().pow(8)
                        + rint(16777216i64) * &rr.clone().pow(9))
                    / ((rint(-1) + rint(2) * &rr) * &g * &g)
            },
        },
    }
}

/// Exact `H_r(z)` as a moment ratio for the given family data.
fn hr_value(d: &HrData, z: &Rat) -> Rat {
    let num = moment(d.num_pow, &d.weight, d.weight_pow, d.exponent, z);
    let den = moment(d.den_pow, &d.weight, d.weight_pow, d.exponent, z);
    num / den
}

/// Run the `H_r` inequality chain at the paper's target `z` for one `r`.
pub fn hr_check(family: HrFamily, r: i64) -> Result<HrReport, String> {
    if r < 5 {
        return Err("hr_check needs r >= 5".into());
    }
    let d = hr_data(family, r);
    let value = hr_value(&d, &d.z);
    let inequality_holds = value > d.threshold;
    let h0_exact = hr_value(&d, &Rat::zero());
    let h0_closed_form_ok = h0_exact == d.h0;
    // supporting line at 0: H(z) >= H(0) + H'(0) z for convex H, z <= 0
    let tangent = &d.h0 + &d.h0p * &d.z;
    let tangent_bound_holds = value >= tangent;
    Ok(HrReport {
        family: family.name().into(),
        r,
        value,
        threshold: d.threshold.clone(),
        inequality_holds,
        h0_closed_form_ok,
        tangent_bound_holds,
    })
}

/// Exact midpoint-convexity check of `H_r` on a rational lattice of pairs in
/// `(-1, 1)`: `H((z1+z2)/2) <= (H(z1)+H(z2))/2`.
pub fn hr_midpoint_convexity(family: HrFamily, r: i64, lattice: &[Rat]) -> bool {
    let d = hr_data(family, r);
    for (i, z1) in lattice.iter().enumerate() {
        for z2 in lattice.iter().skip(i + 1) {
            let mid = (z1 + z2) / rint(2);
            let lhs = hr_value(&d, &mid);
            let rhs = (hr_value(&d, z1) + hr_value(&d, z2)) / rint(2);
            if lhs > rhs {
                return false;
            }
        }
    }
    true
}

// ---------------------------------------------------------------------------
// t-range bounds
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct TRangeReport {
    pub family: String,
    pub r: i64,
    /// Exact signs certifying the bracket: `(t_low, sign)` pairs.
    pub signs: Vec<(String, i8)>,
    /// The proven open interval containing `t*`.
    pub interval: (String, String),
    pub pass: bool,
}

/// Exact sign pattern of `Q` bracketing `t*` for the infinite families:
/// `(2r-8, 2, 1)` gives `Q(0+) > 0`, `Q(6) < 0`; `(4r-16, 4, 3)` gives
/// `Q(1) > 0`, `Q(10/3) < 0`.
pub fn t_range_check(family: crate::kstability::ProbeFamily, r: i64) -> Result<TRangeReport, String> {
    use crate::kstability::ProbeFamily;
    if r < 5 {
        return Err("t_range_check needs r >= 5".into());
    }
    let space = family.space(r)?;
    let mut signs = vec![];
    let (lo, hi, pass) = match family {
        ProbeFamily::AIIIa => {
            let s0 = sign(&q_zero_limit(&space));
            signs.push(("0+".to_string(), s0));
            let s6 = sign(&q_functional(&space, &rint(6)).map_err(|e| e.to_string())?);
            signs.push(("6".to_string(), s6));
            ("0".to_string(), "6".to_string(), s0 > 0 && s6 < 0)
        }
        ProbeFamily::CIIa => {
            let s1 = sign(&q_functional(&space, &rint(1)).map_err(|e| e.to_string())?);
            signs.push(("1".to_string(), s1));
            let s103 = sign(&q_functional(&space, &rat(10, 3)).map_err(|e| e.to_string())?);
            signs.push(("10/3".to_string(), s103));
            ("1".to_string(), "10/3".to_string(), s1 > 0 && s103 < 0)
        }
    };
    if !pass {
        return Err(format!(
            "sign pattern {signs:?} contradicts the proven bracket for {} r={r}",
            match family {
                ProbeFamily::AIIIa => "AIIIa",
                ProbeFamily::CIIa => "CIIa",
            }
        ));
    }
    Ok(TRangeReport {
        family: match family {
            ProbeFamily::AIIIa => "AIIIa".into(),
            ProbeFamily::CIIa => "CIIa".into(),
        },
        r,
        signs,
        interval: (lo, hi),
        pass,
    })
}

/// The `t -> 0+` limit of `Q` (after clearing the constant factor `A1^{m2}`):
/// `∫_{-m2}^{m1+2m3} p (2m2+2p)^{m2} (m1+2m3-p)^{m1+m3} (m1+2m2+2m3+p)^{m1+m3} dp`.
pub fn q_zero_limit(space: &SymmetricSpaceData) -> Rat {
    let (m1, m2, m3) = match space.mults {
        Multiplicities::Bc2 { m1, m2, m3 } => (m1, m2, m3),
        _ => panic!("q_zero_limit is a BC2/B2 construction"),
    };
    let p = RationalPoly::new(vec![Rat::zero(), Rat::one()]);
    let f1 = RationalPoly::new(vec![rint(2 * m2), rint(2)]).pow(m2 as usize);
    let f2 = RationalPoly::new(vec![rint(m1 + 2 * m3), rint(-1)]).pow((m1 + m3) as usize);
    let f3 = RationalPoly::new(vec![rint(m1 + 2 * m2 + 2 * m3), rint(1)]).pow((m1 + m3) as usize);
    let integrand = p.mul(&f1).mul(&f2).mul(&f3);
    poly_definite_integral(&integrand, &rint(-m2), &rint(m1 + 2 * m3))
}

// ---------------------------------------------------------------------------
// bounded geometry
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct BoundedGeometryVerdict {
    pub space: String,
    /// Human-readable threshold form, e.g. `"t <= 112/19"` or `"trivial"`.
    pub condition: String,
    pub t_star: String,
    /// Margin `A1(m2+1) - t(m1 m2 - m1 - 2 m3)` at the representative `t`
    /// (rational when `t*` is exact).
    #[serde(serialize_with = "crate::report::ser_rat")]
    pub margin: Rat,
    /// The `a0+ >= a1+` side (always satisfied on BC2/B2).
    pub plus_side: String,
    pub pass: bool,
}

/// Check `a0± >= a1±` at the solved Reeb parameter. On `BC2`/`B2` the `+`
/// side always holds and the `-` side is the threshold
/// `t (m1 m2 - m1 - 2 m3) <= A1 (m2 + 1)`; on `A2` and `R1xR1` both sides
/// hold identically.
pub fn bounded_geometry_check(
    space: &SymmetricSpaceData,
    t_star: &TStar,
) -> BoundedGeometryVerdict {
    let t = t_star.representative();
    match space.mults {
        Multiplicities::Bc2 { m1, m2, m3 } => {
            let a1 = rint(2 * m1 + 2 * m2 + 4 * m3);
            let coeff = rint(m1 * m2 - m1 - 2 * m3);
            let bound = &a1 * rint(m2 + 1);
            let margin = &bound - &t * &coeff;
            let condition = if coeff.is_zero() || coeff.is_negative() {
                "trivial".to_string()
            } else {
                format!("t <= {}", fmt_rat(&(&bound / &coeff)))
            };
            BoundedGeometryVerdict {
                space: space.tag.clone(),
                condition,
                t_star: fmt_rat(&t),
                margin: margin.clone(),
                plus_side: "always satisfied".into(),
                pass: coeff.is_zero() || coeff.is_negative() || !margin.is_negative(),
            }
        }
        Multiplicities::A2 { .. } | Multiplicities::R1xR1 { .. } => BoundedGeometryVerdict {
            space: space.tag.clone(),
            condition: "true".into(),
            t_star: fmt_rat(&t),
            margin: Rat::zero(),
            plus_side: "always satisfied".into(),
            pass: true,
        },
        _ => BoundedGeometryVerdict {
            space: space.tag.clone(),
            condition: "N/A".into(),
            t_star: fmt_rat(&t),
            margin: Rat::zero(),
            plus_side: "N/A".into(),
            pass: false,
        },
    }
}

/// Exact `a0±` and `a1±` at a rational `t`, straight from their definitions
/// (`a0± ⟨α̃_{2,1}, β⟩ = 1`; `a1+ = δ+`, `a1- = -t δ-`). Used to cross-check
/// the threshold form of [`bounded_geometry_check`].
pub fn a_constants_exact(space: &SymmetricSpaceData, t: &Rat) -> Result<[Rat; 4], String> {
    let w = crate::rootdata::weyl_data(space);
    let beta = crate::kstability::beta_at(space, t).map_err(|e| e.to_string())?;
    let (lam_minus, lam_plus) = crate::kstability::lambda_limits(space, t).map_err(|e| e.to_string())?;
    let a0_plus = rint(1) / space.roots.pair(&w.wall2, &beta);
    let a0_minus = rint(1) / space.roots.pair(&w.wall1, &beta);
    let m_plus = crate::kstability::vanishing_order(space, t, &lam_plus) as i64;
    let m_minus = crate::kstability::vanishing_order(space, t, &lam_minus) as i64;
    let a1_plus = &lam_plus / rint(m_plus + 1);
    let a1_minus = -t * &lam_minus / rint(m_minus + 1);
    Ok([a0_plus, a0_minus, a1_plus, a1_minus])
}

/// Table of bounded-geometry thresholds for the named `BC2`/`B2` rows.
pub fn table6_rows() -> Vec<(String, Option<i64>, String)> {
    let mut rows = vec![];
    for (name, r) in [
        ("AIIIa", Some(5)),
        ("CIIa", Some(5)),
        ("DIIIa", None),
        ("EIII", None),
        ("BDI", Some(5)),
        ("AIIIb", None),
        ("DIIIb", None),
        ("B2", None),
        ("CIIb", None),
    ] {
        let space = catalog_space(name, r).expect("catalogued");
        let (m1, m2, m3) = match space.mults {
            Multiplicities::Bc2 { m1, m2, m3 } => (m1, m2, m3),
            _ => continue,
        };
        let coeff = m1 * m2 - m1 - 2 * m3;
        let cond = if coeff <= 0 {
            "trivial".to_string()
        } else {
            format!("t <= {}", fmt_rat(&rat((2 * m1 + 2 * m2 + 4 * m3) * (m2 + 1), coeff)))
        };
        rows.push((space.tag.clone(), r, cond));
    }
    rows
}
