//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line.
//!
//! Criteria whose numerical targets exceed what the implemented construction
//! can deliver in double precision are asserted as stated anyway; the
//! measured values are printed so a red row carries its own analysis.

use horosym::geomchecks::{
    a_constants_exact, bounded_geometry_check, hr_check, table6_rows, t_range_check, HrFamily,
};
use horosym::gluing::{decay_rate_audit, default_field, fd_ricci, metric_comparison, GluedAnsatz, Region};
use horosym::kstability::{
    lambda_limits, q_functional, r1xr1_t_formula, restrict_dh_along_line, restricted_factors_f64,
    solve_kstable_t, g2_exclusion_report, ProbeFamily, TStar,
};
use horosym::polyalg::default_tol;
use horosym::quadrature::adaptive_simpson;
use horosym::rational::{rat, rat_to_f64, rint};
use horosym::rootdata::rank_two_tags;
use horosym::spacespec::space_from_spec;
use horosym::stenzel::stenzel_potential;
use horosym::transverse::{expansion_coefficients, fitted_decay_rate, solve_transverse, TransverseError};
use num_traits::Zero;

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

/// Criterion 1: exact constants of the representative spaces match the
/// transcribed golden values.
#[test]
fn criterion_1_table7_reproduction() {
    let t0 = std::time::Instant::now();
    let mut ok = true;

    // A2 column, m in {1, 2, 4, 8}
    for (tag, m) in [("A2:m=1", 1i64), ("A2", 2), ("A2:m=4", 4), ("A2:m=8", 8)] {
        let s = space_from_spec(tag).unwrap();
        let n = 2 + 3 * m;
        let k = solve_kstable_t(&s, &default_tol()).unwrap();
        ok &= k.t_star == TStar::Exact(rint(1));
        ok &= k.lambda_plus == rat(2 * m, 3) && k.lambda_minus == rat(-2 * m, 3);
        ok &= k.beta == [rat(n, 2 * m), rat(n, 2 * m)];
        let a = a_constants_exact(&s, &rint(1)).unwrap();
        ok &= a[0] == rat(8 * m, 3 * n) && a[1] == rat(8 * m, 3 * n);
        ok &= a[2] == rat(2 * m, 3 * (m + 1)) && a[3] == rat(2 * m, 3 * (m + 1));
        ok &= s.n == n;
    }

    // BC2 families at r = 5: t-independent exact cells
    for (tag, m123, n) in [
        ("AIIIa:r=5", (2i64, 2i64, 1i64), 12i64),
        ("CIIa:r=5", (4, 4, 3), 24),
        ("BDI:r=5", (1, 1, 0), 6),
    ] {
        let s = space_from_spec(tag).unwrap();
        let w = horosym::rootdata::weyl_data(&s);
        let (m1, m2, m3) = m123;
        ok &= w.zeta1 == rat(1, 2) && w.zeta2 == rint(1);
        ok &= w.a_1 == rint(2 * m1 + 2 * m2 + 4 * m3);
        ok &= w.a_2 == rint(m1 + 2 * m2 + 2 * m3);
        ok &= s.n == n;
    }

    // R1xR1 with (m, m̂) pairs from the rank-one table
    for (m1, mh1, m2, mh2) in [(1i64, 0i64, 1i64, 0i64), (3, 0, 2, 1), (4, 3, 8, 7), (2, 1, 2, 1)] {
        let tag = format!("R1xR1:m1={m1},mh1={mh1},m2={m2},mh2={mh2}");
        let s = space_from_spec(&tag).unwrap();
        let k = solve_kstable_t(&s, &default_tol()).unwrap();
        ok &= k.t_star == TStar::Exact(r1xr1_t_formula(m1, mh1, m2, mh2));
        ok &= k.lambda_minus == rint(-(m2 + 2 * mh2));
        ok &= k.beta == [rat(m1 + mh1 + 1, m1 + 2 * mh1), rat(m2 + mh2 + 1, m2 + 2 * mh2)];
        let t = k.t_star.representative();
        let a = a_constants_exact(&s, &t).unwrap();
        ok &= a[0] == rat(m2 + 2 * mh2, m2 + mh2 + 1) && a[2] == a[0];
        ok &= a[1] == rat(m1 + 2 * mh1, m1 + mh1 + 1) && a[3] == a[1];
    }

    let elapsed = t0.elapsed();
    println!("criterion 1 (table 7 exact cells): {} [{elapsed:?}]", verdict(ok));
    assert!(ok);
    assert!(elapsed.as_secs_f64() < 1.0, "runtime budget 1 s exceeded: {elapsed:?}");
}

/// Criterion 2: Q vanishes exactly where the paper gives rational Reeb
/// parameters; elsewhere the bisected t* is certified and cross-checked by an
/// independent float quadrature oracle.
#[test]
fn criterion_2_kstability() {
    let t0 = std::time::Instant::now();
    let mut ok = true;

    for m in [1i64, 2, 4, 8] {
        let s = space_from_spec(&format!("A2:m={m}")).unwrap();
        ok &= q_functional(&s, &rint(1)).unwrap().is_zero();
    }
    let tuples = [
        (1i64, 0i64, 1i64, 0i64),
        (2, 0, 1, 0),
        (3, 0, 2, 1),
        (1, 0, 8, 7),
        (4, 3, 8, 7),
        (2, 1, 2, 1),
        (5, 0, 3, 0),
        (2, 1, 8, 7),
        (4, 3, 2, 1),
        (6, 0, 4, 3),
    ];
    for (m1, mh1, m2, mh2) in tuples {
        let s = space_from_spec(&format!("R1xR1:m1={m1},mh1={mh1},m2={m2},mh2={mh2}")).unwrap();
        let t = r1xr1_t_formula(m1, mh1, m2, mh2);
        ok &= q_functional(&s, &t).unwrap().is_zero();
    }

    // every non-G2 rank-two catalogued space: certified interval plus an
    // independent oracle built on float quadrature only
    for tag in rank_two_tags(5) {
        let s = space_from_spec(&tag).unwrap();
        if s.is_g2() {
            continue;
        }
        let k = solve_kstable_t(&s, &default_tol()).unwrap();
        if let TStar::Interval { lo, hi } = &k.t_star {
            assert!(hi.clone() - lo.clone() <= default_tol(), "{tag}: interval too wide");
        }
        let exact_t = rat_to_f64(&k.t_star.representative());
        // float oracle: Q(t) by adaptive Simpson over the factored density,
        // root by plain bisection
        let qf = |t: f64| -> f64 {
            let tr = horosym::rational::parse_rat(&format!(
                "{}/65536",
                (t * 65536.0).round() as i64
            ))
            .unwrap();
            let factors = restricted_factors_f64(&s, &tr);
            // lambda via the f64 data
            let (lm, lp) = lambda_limits(&s, &tr)
                .map(|(a, b)| (rat_to_f64(&a), rat_to_f64(&b)))
                .unwrap();
            let f = |p: f64| -> f64 {
                let mut acc = p;
                for &(a, b, m) in &factors {
                    acc *= (a + b * p).powi(m as i32);
                }
                acc
            };
            adaptive_simpson(&f, lm, lp, 1e-12 * (lp - lm).abs().max(1.0))
        };
        // The oracle works on the 1/65536 lattice; bisect on it
        let mut lo = 1.0 / 64.0;
        let mut hi = 64.0;
        let slo = qf(lo).signum();
        for _ in 0..40 {
            let mid = 0.5 * (lo + hi);
            if qf(mid).signum() == slo {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let oracle_t = 0.5 * (lo + hi);
        ok &= (oracle_t - exact_t).abs() < 1e-4 + 2.0 / 65536.0;
        // tight continuous-oracle comparison where the lattice is not binding
        assert!(
            (oracle_t - exact_t).abs() < 1e-3,
            "{tag}: oracle {oracle_t} vs exact {exact_t}"
        );
    }

    let elapsed = t0.elapsed();
    println!("criterion 2 (K-stability): {} [{elapsed:?}]", verdict(ok));
    assert!(ok);
    assert!(elapsed.as_secs_f64() < 30.0, "runtime budget 30 s exceeded: {elapsed:?}");
}

/// Criterion 2b: the bisected t* against a fully independent high-precision
/// quadrature oracle at 1e-8 (continuous t, Newton-free bisection).
#[test]
fn criterion_2_quadrature_oracle_tight() {
    let t0 = std::time::Instant::now();
    let mut ok = true;
    for tag in rank_two_tags(5) {
        let s = space_from_spec(&tag).unwrap();
        if s.is_g2() {
            continue;
        }
        let k = solve_kstable_t(&s, &rat(1, 1i64 << 52)).unwrap();
        let exact_t = rat_to_f64(&k.t_star.representative());
        // continuous-t float oracle: everything in f64 from the root data
        let w = horosym::rootdata::weyl_data(&s);
        let gram = [
            [rat_to_f64(&s.roots.gram[0][0]), rat_to_f64(&s.roots.gram[0][1])],
            [rat_to_f64(&s.roots.gram[1][0]), rat_to_f64(&s.roots.gram[1][1])],
        ];
        let varpi = [rat_to_f64(&w.varpi[0]), rat_to_f64(&w.varpi[1])];
        let pair = |a: &[f64; 2], b: &[f64; 2]| {
            a[0] * b[0] * gram[0][0]
                + (a[0] * b[1] + a[1] * b[0]) * gram[0][1]
                + a[1] * b[1] * gram[1][1]
        };
        let qf = |t: f64| -> f64 {
            let delta = [-t, 1.0];
            let a1 = [1.0, 0.0];
            let a2 = [0.0, 1.0];
            let lp = -pair(&a1, &varpi) / pair(&a1, &delta);
            let lm = -pair(&a2, &varpi) / pair(&a2, &delta);
            let roots: Vec<(f64, f64, i32)> = s
                .roots
                .positive_roots
                .iter()
                .map(|r| {
                    let c = [r.c1 as f64, r.c2 as f64];
                    (pair(&c, &varpi), pair(&c, &delta), r.mult as i32)
                })
                .collect();
            let f = |p: f64| -> f64 {
                let mut acc = p;
                for &(a, b, m) in &roots {
                    acc *= (a + b * p).powi(m);
                }
                acc
            };
            adaptive_simpson(&f, lm, lp, 1e-13 * (lp - lm).abs().max(1.0))
        };
        let mut lo = 1.0 / 64.0;
        let mut hi = 64.0;
        let slo = qf(lo).signum();
        for _ in 0..64 {
            let mid = 0.5 * (lo + hi);
            if qf(mid).signum() == slo {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let oracle_t = 0.5 * (lo + hi);
        let diff = (oracle_t - exact_t).abs();
        if diff >= 1e-8 {
            println!("  {tag}: |oracle - exact| = {diff:.3e}");
            ok = false;
        }
    }
    let elapsed = t0.elapsed();
    println!("criterion 2 (quadrature oracle at 1e-8): {} [{elapsed:?}]", verdict(ok));
    assert!(ok);
}

/// Criterion 3: the G2 exclusion.
#[test]
fn criterion_3_g2_exclusion() {
    let t0 = std::time::Instant::now();
    let mut ok = true;
    for m in [1, 2] {
        let rep = g2_exclusion_report(m).unwrap();
        ok &= rep.lattice_sign == -1;
        ok &= rep.proportionality_ok;
        ok &= rep.printed_all_positive && rep.no_positive_rational_root;
    }
    let elapsed = t0.elapsed();
    println!("criterion 3 (G2 exclusion): {} [{elapsed:?}]", verdict(ok));
    assert!(ok);
    assert!(elapsed.as_secs_f64() < 5.0, "runtime budget 5 s exceeded: {elapsed:?}");
}

/// Criterion 4: exact sign brackets for the two infinite families on
/// r in [5, 50].
#[test]
fn criterion_4_tangent_cone_range_bounds() {
    let t0 = std::time::Instant::now();
    let mut ok = true;
    for r in 5..=50 {
        ok &= t_range_check(ProbeFamily::AIIIa, r).unwrap().pass;
        ok &= t_range_check(ProbeFamily::CIIa, r).unwrap().pass;
    }
    // and the solved t* lies inside the proven interval for moderate r
    for r in 5..=20 {
        let s = space_from_spec(&format!("AIIIa:r={r}")).unwrap();
        let k = solve_kstable_t(&s, &default_tol()).unwrap();
        let t = rat_to_f64(&k.t_star.representative());
        ok &= t > 0.0 && t < 6.0;
        let s = space_from_spec(&format!("CIIa:r={r}")).unwrap();
        let k = solve_kstable_t(&s, &default_tol()).unwrap();
        let t = rat_to_f64(&k.t_star.representative());
        ok &= t > 1.0 && t < 10.0 / 3.0;
    }
    let elapsed = t0.elapsed();
    println!("criterion 4 (range bounds r in [5,50]): {} [{elapsed:?}]", verdict(ok));
    assert!(ok);
    assert!(elapsed.as_secs_f64() < 60.0, "runtime budget 60 s exceeded: {elapsed:?}");
}

/// Criterion 5: transverse ODE for every non-G2 catalogued rank-two space.
#[test]
fn criterion_5_transverse() {
    let mut all_ok = true;
    for tag in rank_two_tags(5) {
        let t0 = std::time::Instant::now();
        let s = space_from_spec(&tag).unwrap();
        if s.is_g2() {
            continue;
        }
        let k = solve_kstable_t(&s, &rat(1, 1_000_000_000_000_000i64)).unwrap();
        let kf = k.to_f64();
        let t = k.t_star.representative();
        let p0 = restrict_dh_along_line(&s, &t);
        let factors = restricted_factors_f64(&s, &t);
        let mut row_ok = true;
        match solve_transverse(
            &p0,
            &factors,
            kf.lambda_minus,
            kf.lambda_plus,
            kf.m_plus,
            kf.m_minus,
            40.0,
            1e-10,
        ) {
            Err(e) => {
                println!("  {tag}: solve failed: {e}");
                row_ok = false;
            }
            Ok(sol) => {
                if sol.residual >= 1e-8 {
                    println!("  {tag}: residual {:.2e} (target < 1e-8)", sol.residual);
                    row_ok = false;
                }
                for plus in [true, false] {
                    match expansion_coefficients(&sol, plus, 3) {
                        Err(e) => {
                            println!("  {tag}: expansion({}) failed: {e}", if plus { "+" } else { "-" });
                            row_ok = false;
                        }
                        Ok(cj) => {
                            let fitted = fitted_decay_rate(&sol, plus, &cj);
                            let expected = -sol.delta_exponent(plus).abs();
                            let rel = ((fitted - expected) / expected).abs();
                            if rel >= 1e-3 {
                                println!(
                                    "  {tag}: fitted decay({}) {fitted:.6} vs {expected:.6} (rel {rel:.2e}, target 1e-3)",
                                    if plus { "+" } else { "-" }
                                );
                                row_ok = false;
                            }
                        }
                    }
                }
            }
        }
        // perturbing t by +-10 percent must trip the barycenter violation
        for fac in [rat(11, 10), rat(9, 10)] {
            let tp = t.clone() * fac;
            let p0p = restrict_dh_along_line(&s, &tp);
            let fp = restricted_factors_f64(&s, &tp);
            let (lm, lp) = lambda_limits(&s, &tp).unwrap();
            match solve_transverse(
                &p0p,
                &fp,
                rat_to_f64(&lm),
                rat_to_f64(&lp),
                kf.m_plus,
                kf.m_minus,
                40.0,
                1e-10,
            ) {
                Err(TransverseError::BarycenterViolation { .. }) => {}
                other => {
                    println!("  {tag}: perturbed t did not trip the violation: {:?}", other.map(|_| ()));
                    row_ok = false;
                }
            }
        }
        let elapsed = t0.elapsed();
        println!("criterion 5 ({tag}): {} [{elapsed:?}]", verdict(row_ok));
        if elapsed.as_secs_f64() >= 60.0 {
            println!("  {tag}: runtime budget 60 s exceeded");
            row_ok = false;
        }
        all_ok &= row_ok;
    }
    println!("criterion 5 (transverse ODE): {}", verdict(all_ok));
    assert!(all_ok);
}

/// Criterion 6: Stenzel K(A) round trip for ten rank-one pairs.
#[test]
fn criterion_6_stenzel_round_trip() {
    let t0 = std::time::Instant::now();
    let mut ok = true;
    let pairs = [
        (1i64, 0i64),
        (2, 0),
        (3, 0),
        (4, 0),
        (7, 0),
        (2, 1),
        (4, 1),
        (6, 1),
        (4, 3),
        (8, 7),
    ];
    for (m, mh) in pairs {
        let s = stenzel_potential(m, mh, 0.8531).unwrap();
        let rel = ((s.k_fitted - s.k_lead) / s.k_lead).abs();
        if rel >= 1e-10 {
            println!("  (m,mh)=({m},{mh}): K fit rel {rel:.2e}");
            ok = false;
        }
    }
    let elapsed = t0.elapsed();
    println!("criterion 6 (Stenzel K(A) round trip): {} [{elapsed:?}]", verdict(ok));
    assert!(ok);
}

/// Criterion 7: the gluing audit on the listed spaces. The decay-slope legs
/// are asserted as stated; with the one-improvement-step scope several
/// seam/boundary slopes sit at a structural cap below -(1+eps) (see the
/// decisions record), so those rows print their measured values and fail
/// honestly.
#[test]
fn criterion_7_gluing_audit() {
    let spaces = [
        "AI",
        "A2",
        "AIIIb",
        "CIIb",
        "AIIIa:r=5",
        "CIIa:r=5",
        "BDI:r=6",
        "R1xR1:m1=1,mh1=0,m2=1,mh2=0",
    ];
    let mut all_ok = true;
    for tag in spaces {
        let t0 = std::time::Instant::now();
        let s = space_from_spec(tag).unwrap();
        let mut row_ok = true;
        match GluedAnsatz::build(&s) {
            Err(e) => {
                println!("  {tag}: build failed: {e}");
                row_ok = false;
            }
            Ok(ansatz) => {
                // decay regression per region
                match default_field(&ansatz).and_then(|(f, inner)| {
                    decay_rate_audit(&ansatz, &f).map(|a| (a, inner, f))
                }) {
                    Err(e) => {
                        println!("  {tag}: audit failed: {e}");
                        row_ok = false;
                    }
                    Ok((audit, inner, _field)) => {
                        if !audit.pass {
                            println!(
                                "  {tag}: region slopes {:?} (inner phi {inner}), target <= -(1+eps) = -1.05",
                                audit.region_slopes
                            );
                            row_ok = false;
                        }
                    }
                }
                // generic-region analytic vs finite differences < 1e-4
                let (x1, x2) = (5.5, 6.0);
                if ansatz.region(x1, x2) == Region::Generic {
                    let exact = ansatz.ricci_generic_exact(x1, x2);
                    let fd = fd_ricci(&ansatz, &|a, b| ansatz.glued_jet(a, b).0.f, x1, x2, 1.0 / 16.0);
                    if (fd - exact).abs() >= 1e-4 {
                        println!("  {tag}: fd cross-check {:.2e}", (fd - exact).abs());
                        row_ok = false;
                    }
                }
                // one improvement step: boundary decay exponent along the
                // wall at fixed transverse coordinate
                let p = &ansatz.params;
                let mut pts = vec![];
                for i in 0..14 {
                    let x2v = 14.0 + i as f64;
                    let jet = ansatz.boundary_jet(true, true, 2.0, x2v);
                    if let Ok(pr) = ansatz.ricci_of_jet(&jet, 2.0, x2v) {
                        if pr.abs() > 1e-13 {
                            pts.push((x2v, pr.abs().ln()));
                        }
                    }
                }
                let slope = horosym::transverse::regress_slope(&pts);
                let target = -(2.0 * p.a1_plus).min(2.0) + 0.05;
                if slope > target {
                    println!("  {tag}: improved boundary rate {slope:.4} vs target {target:.4}");
                    row_ok = false;
                }
            }
        }
        let elapsed = t0.elapsed();
        println!("criterion 7 ({tag}): {} [{elapsed:?}]", verdict(row_ok));
        if elapsed.as_secs_f64() >= 300.0 {
            println!("  {tag}: runtime budget 5 min exceeded");
            row_ok = false;
        }
        all_ok &= row_ok;
    }
    println!("criterion 7 (gluing audit): {}", verdict(all_ok));
    assert!(all_ok);
}

/// Criterion 8: bounded geometry across the catalog and the H_r chains.
#[test]
fn criterion_8_bounded_geometry() {
    let t0 = std::time::Instant::now();
    let mut ok = true;

    // printed thresholds
    let rows = table6_rows();
    let find = |tag: &str| rows.iter().find(|r| r.0 == tag).unwrap().2.clone();
    ok &= find("DIIIa") == "t <= 10";
    ok &= find("EIII") == "t <= 112/19";
    ok &= find("B2") == "t <= 12";
    ok &= find("CIIb") == "t <= 7";
    ok &= find("BDI:r=5") == "trivial";

    // r sweep: t* certified below threshold in both infinite families
    for r in 5..=50 {
        for fam in ["AIIIa", "CIIa"] {
            let s = space_from_spec(&format!("{fam}:r={r}")).unwrap();
            let k = solve_kstable_t(&s, &default_tol()).unwrap();
            let v = bounded_geometry_check(&s, &k.t_star);
            if !v.pass {
                println!("  {fam}:r={r}: bounded geometry fails: {v:?}");
                ok = false;
            }
        }
    }

    // H_r inequality chains in exact arithmetic
    for r in [5, 9, 17, 33, 50] {
        for fam in [HrFamily::AIIIa, HrFamily::CIIa, HrFamily::CIIaT1] {
            let rep = hr_check(fam, r).unwrap();
            if !(rep.inequality_holds && rep.h0_closed_form_ok && rep.tangent_bound_holds) {
                println!("  {:?} r={r}: {rep:?}", fam);
                ok = false;
            }
        }
    }

    let elapsed = t0.elapsed();
    println!("criterion 8 (bounded geometry): {} [{elapsed:?}]", verdict(ok));
    assert!(ok);
    assert!(elapsed.as_secs_f64() < 120.0, "runtime budget 2 min exceeded: {elapsed:?}");
}

/// Criterion 9: singularity verdicts.
#[test]
fn criterion_9_singularity_pattern() {
    let t0 = std::time::Instant::now();
    let mut ok = true;
    for r_fam in [5, 8] {
        for tag in rank_two_tags(r_fam) {
            let s = space_from_spec(&tag).unwrap();
            let rep = horosym::conecomb::link_smoothness_report(&s).unwrap();
            ok &= rep.overall == "SINGULAR";
            // the G category cannot be separated from its group case by the
            // component-local criterion; both carry smooth couples
            let expect = matches!(s.involution.as_deref(), Some("AI" | "A2" | "G" | "G2"));
            if rep.both_pairs_smooth != expect {
                println!("  {tag}: both_pairs_smooth {} (expected {expect})", rep.both_pairs_smooth);
                ok = false;
            }
        }
    }
    // rank-one Stenzel cones: smooth link with the local-factoriality caveat
    for tag in ["BDII:r=1", "BDII:r=3", "BDII:r=5", "AIII:r=3", "CII:r=4", "FII"] {
        let s = space_from_spec(tag).unwrap();
        let rep = horosym::conecomb::link_smoothness_report(&s).unwrap();
        if !rep.overall.contains("SMOOTH LINK") {
            println!("  {tag}: {rep:?}");
            ok = false;
        }
    }
    let s = space_from_spec("BDII:r=1").unwrap();
    let rep = horosym::conecomb::link_smoothness_report(&s).unwrap();
    ok &= rep.reason.contains("locally factorial");

    let elapsed = t0.elapsed();
    println!("criterion 9 (singularity verdicts): {} [{elapsed:?}]", verdict(ok));
    assert!(ok);
    assert!(elapsed.as_secs_f64() < 1.0, "runtime budget 1 s exceeded: {elapsed:?}");
}

/// Criterion 10: the cross-module property checks not already covered by the
/// per-module suites.
#[test]
fn criterion_10_property_suites() {
    let t0 = std::time::Instant::now();
    let mut ok = true;

    // polynomial-integral additivity and odd-integrand vanishing are covered
    // by proptest in the polyalg module; F1 = Euler integral and H_r midpoint
    // convexity by geomchecks tests; here: seam continuity and determinant
    // consistency on a built ansatz
    let a = GluedAnsatz::build(&space_from_spec("AI").unwrap()).unwrap();
    let p = &a.params;
    let x2 = 12.0;
    let eps = 1e-9;
    for (x1, which_plus, improved) in [
        (p.theta_plus * x2 + eps, false, true),
        (p.theta_minus * x2 - eps, true, true),
    ] {
        let (mixed, _) = a.glued_jet(x1, x2);
        let pure = if improved {
            a.rho0_jet(x1, x2)
        } else {
            a.boundary_jet(which_plus, true, x1, x2)
        };
        if ((mixed.f - pure.f) / pure.f).abs() >= 1e-8 {
            println!("  seam continuity violated at x1={x1}");
            ok = false;
        }
    }
    let mc = metric_comparison(&a).unwrap();
    if mc.det_consistency_rel >= 1e-6 {
        println!("  determinant consistency {:.2e}", mc.det_consistency_rel);
        ok = false;
    }

    let elapsed = t0.elapsed();
    println!("criterion 10 (property suites): {} [{elapsed:?}]", verdict(ok));
    assert!(ok);
}
