//! Command-line front door: reproduces the constants tables, runs the
//! K-stability and ODE pipelines, the gluing audit, and the singularity
//! verdicts, emitting deterministic JSON/CSV/table reports.

use clap::{Parser, Subcommand, ValueEnum};
use horosym::gluing::{decay_rate_audit, default_field, metric_comparison, GluedAnsatz};
use horosym::kstability::{
    g2_exclusion_report, irrationality_probe, solve_kstable_t, KStabilityError, ProbeFamily, TStar,
};
use horosym::polyalg::default_tol;
use horosym::rational::{fmt_rat, rat_to_f64, Rat};
use horosym::report::{csv_line, fmt_f64, json_f64, sorted, ReportEnvelope, Verdict};
use horosym::rootdata::{rank_two_tags, weyl_data};
use horosym::spacespec::space_from_spec;
use serde_json::{json, Value};
use std::io::Write as _;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "horosym", version, about = "Calabi-Yau metric data on rank-two complex symmetric spaces", long_about = None)]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Write the report to a file instead of stdout
    #[arg(long, global = true)]
    out: Option<std::path::PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Weyl and ansatz constants of one space (one row of the constants table)
    Constants { space: String },
    /// Solve for the K-stable Reeb parameter t*, β, λ±
    Kstable { space: String },
    /// The G2 exclusion checks
    G2Check {
        #[arg(long)]
        m: i64,
    },
    /// Irrationality probe for an infinite family member
    Irrationality {
        family: String,
        #[arg(long)]
        r: i64,
    },
    /// Solve the transverse ODE at t* and export the grid as CSV
    Transverse { space: String },
    /// Solve the boundary Stenzel potential on one side
    Stenzel {
        space: String,
        #[arg(long, default_value = "+")]
        side: String,
    },
    /// Full gluing audit: build the ansatz, evaluate the Ricci field, regress
    /// decay rates per region
    Glue {
        space: String,
        /// Box upper end (the box is [0.5, this])
        #[arg(long, default_value_t = 30.0)]
        r#box: f64,
        #[arg(long, default_value_t = 1.0 / 16.0)]
        step: f64,
    },
    /// Bounded-geometry threshold and verdict at t*
    BoundedGeometry {
        family: String,
        #[arg(long, default_value_t = 12)]
        r_max: i64,
    },
    /// Singularity verdict of the horospherical tangent cone
    Singularity { space: String },
    /// All catalogued constants rows (exact cells)
    Table7 {
        #[arg(long)]
        all: bool,
    },
    /// All bounded-geometry thresholds
    Table6 {
        #[arg(long)]
        all: bool,
    },
    /// All singularity verdicts
    Table5 {
        #[arg(long)]
        all: bool,
    },
}

fn tstar_json(t: &TStar) -> Value {
    match t {
        TStar::Exact(v) => json!({ "exact": fmt_rat(v) }),
        TStar::Interval { lo, hi } => json!({ "lo": fmt_rat(lo), "hi": fmt_rat(hi) }),
    }
}

fn constants_row(tag: &str) -> Result<(Vec<(String, String)>, Verdict), String> {
    let space = space_from_spec(tag)?;
    if space.rank() != 2 {
        return Err("constants rows are defined for rank-two spaces".into());
    }
    let w = weyl_data(&space);
    let mut row: Vec<(String, String)> = vec![
        ("space".into(), space.tag.clone()),
        ("n".into(), space.n.to_string()),
        ("zeta1".into(), fmt_rat(&w.zeta1)),
        ("zeta2".into(), fmt_rat(&w.zeta2)),
        ("varpi_a1".into(), fmt_rat(&w.varpi[0])),
        ("varpi_a2".into(), fmt_rat(&w.varpi[1])),
        ("A1".into(), fmt_rat(&w.a_1)),
        ("A2".into(), fmt_rat(&w.a_2)),
        (
            "gram".into(),
            format!(
                "[{},{};{},{}]",
                fmt_rat(&space.roots.gram[0][0]),
                fmt_rat(&space.roots.gram[0][1]),
                fmt_rat(&space.roots.gram[1][0]),
                fmt_rat(&space.roots.gram[1][1])
            ),
        ),
    ];
    match solve_kstable_t(&space, &default_tol()) {
        Ok(k) => {
            let t = k.t_star.representative();
            row.push((
                "t".into(),
                match &k.t_star {
                    TStar::Exact(v) => fmt_rat(v),
                    TStar::Interval { .. } => format!("~{}", fmt_f64(rat_to_f64(&t))),
                },
            ));
            let exact = k.t_star.is_exact();
            let cell = |x: &Rat| -> String {
                if exact {
                    fmt_rat(x)
                } else {
                    format!("~{}", fmt_f64(rat_to_f64(x)))
                }
            };
            row.push(("m_plus".into(), k.m_plus.to_string()));
            row.push(("m_minus".into(), k.m_minus.to_string()));
            row.push(("lambda_plus".into(), cell(&k.lambda_plus)));
            row.push(("lambda_minus".into(), cell(&k.lambda_minus)));
            row.push(("beta_a1".into(), cell(&k.beta[0])));
            row.push(("beta_a2".into(), cell(&k.beta[1])));
            let a = horosym::geomchecks::a_constants_exact(&space, &t)?;
            row.push(("a0_plus".into(), cell(&a[0])));
            row.push(("a0_minus".into(), cell(&a[1])));
            row.push(("a1_plus".into(), cell(&a[2])));
            row.push(("a1_minus".into(), cell(&a[3])));
            Ok((row, Verdict::Pass))
        }
        Err(KStabilityError::NoPositiveRoot { .. }) => {
            row.push(("t".into(), "none (K-stable Reeb outside chamber)".into()));
            Ok((row, Verdict::NotApplicable))
        }
        Err(e) => Err(e.to_string()),
    }
}

fn emit(
    envelope: &ReportEnvelope,
    format: Format,
    table: Option<String>,
    csv: Option<String>,
) -> String {
    match format {
        Format::Json => envelope.to_json(),
        Format::Csv => csv.unwrap_or_else(|| envelope.to_json()),
        Format::Table => table.unwrap_or_else(|| envelope.to_json()),
    }
}

fn run() -> Result<(String, Verdict), String> {
    let cli = Cli::parse();
    let (text, verdict) = match &cli.command {
        Command::Constants { space } => {
            let (row, verdict) = constants_row(space)?;
            let payload = Value::Object(
                row.iter()
                    .map(|(k, v)| (k.clone(), Value::String(v.clone())))
                    .collect(),
            );
            let env = ReportEnvelope::new("constants", Some(space), sorted(payload), verdict);
            let table = horosym::report::text_table(
                &["field".into(), "value".into()],
                &row.iter()
                    .map(|(k, v)| vec![k.clone(), v.clone()])
                    .collect::<Vec<_>>(),
            );
            (emit(&env, cli.format, Some(table), None), verdict)
        }
        Command::Kstable { space } => {
            let s = space_from_spec(space)?;
            match solve_kstable_t(&s, &default_tol()) {
                Ok(k) => {
                    let payload = json!({
                        "space": s.tag,
                        "t_star": tstar_json(&k.t_star),
                        "beta": [fmt_rat(&k.beta[0]), fmt_rat(&k.beta[1])],
                        "lambda": [fmt_rat(&k.lambda_minus), fmt_rat(&k.lambda_plus)],
                        "multiplicities": [k.m_minus, k.m_plus],
                        "verdict": "PASS",
                    });
                    let env =
                        ReportEnvelope::new("kstable", Some(space), sorted(payload), Verdict::Pass);
                    (env.to_json(), Verdict::Pass)
                }
                Err(KStabilityError::NoPositiveRoot { sign: _ }) => {
                    let payload = json!({
                        "space": s.tag,
                        "t_star": Value::Null,
                        "verdict": "N/A",
                        "reason": "no positive root: K-stable Reeb vector outside the Weyl chamber",
                    });
                    let env = ReportEnvelope::new(
                        "kstable",
                        Some(space),
                        sorted(payload),
                        Verdict::NotApplicable,
                    );
                    (env.to_json(), Verdict::NotApplicable)
                }
                Err(e) => return Err(e.to_string()),
            }
        }
        Command::G2Check { m } => {
            let rep = g2_exclusion_report(*m).map_err(|e| e.to_string())?;
            let ok =
                rep.proportionality_ok && rep.printed_all_positive && rep.no_positive_rational_root;
            let verdict = if ok { Verdict::Pass } else { Verdict::Fail };
            let payload = serde_json::to_value(&rep).map_err(|e| e.to_string())?;
            let env = ReportEnvelope::new("g2-check", None, sorted(payload), verdict);
            (env.to_json(), verdict)
        }
        Command::Irrationality { family, r } => {
            let fam = match family.as_str() {
                "AIIIa" => ProbeFamily::AIIIa,
                "CIIa" => ProbeFamily::CIIa,
                other => return Err(format!("unknown family {other:?} (AIIIa or CIIa)")),
            };
            let rep = irrationality_probe(fam, *r)?;
            let verdict = if rep.rational_root.is_none() {
                Verdict::Pass
            } else {
                Verdict::Fail
            };
            let payload = serde_json::to_value(&rep).map_err(|e| e.to_string())?;
            let env = ReportEnvelope::new("irrationality", Some(family), sorted(payload), verdict);
            (env.to_json(), verdict)
        }
        Command::Transverse { space } => {
            let s = space_from_spec(space)?;
            let k = solve_kstable_t(&s, &default_tol()).map_err(|e| e.to_string())?;
            let kf = k.to_f64();
            let t = k.t_star.representative();
            let p0 = horosym::kstability::restrict_dh_along_line(&s, &t);
            let factors = horosym::kstability::restricted_factors_f64(&s, &t);
            let sol = horosym::transverse::solve_transverse(
                &p0,
                &factors,
                kf.lambda_minus,
                kf.lambda_plus,
                kf.m_plus,
                kf.m_minus,
                40.0,
                1e-10,
            )
            .map_err(|e| e.to_string())?;
            let cp = horosym::transverse::expansion_coefficients(&sol, true, 3)
                .map_err(|e| e.to_string())?;
            let cm = horosym::transverse::expansion_coefficients(&sol, false, 3)
                .map_err(|e| e.to_string())?;
            let mut csv = vec![csv_line(&[
                "x".into(),
                "u".into(),
                "u'".into(),
                "u''".into(),
                "residual".into(),
            ])];
            for i in (0..sol.x.len()).step_by(8) {
                csv.push(csv_line(&[
                    fmt_f64(sol.x[i]),
                    fmt_f64(sol.u[i]),
                    fmt_f64(sol.du[i]),
                    fmt_f64(sol.ddu[i]),
                    fmt_f64(sol.residual),
                ]));
            }
            let payload = json!({
                "space": s.tag,
                "lambda": [json_f64(sol.lambda_minus), json_f64(sol.lambda_plus)],
                "delta": [json_f64(sol.delta_exponent(false)), json_f64(sol.delta_exponent(true))],
                "c_shoot": json_f64(sol.c_shoot),
                "c_defect": json_f64(sol.c_defect),
                "residual": json_f64(sol.residual),
                "expansion_plus": cp.iter().map(|&c| json_f64(c)).collect::<Vec<_>>(),
                "expansion_minus": cm.iter().map(|&c| json_f64(c)).collect::<Vec<_>>(),
                "grid": [json_f64(sol.x[0]), json_f64(*sol.x.last().unwrap())],
            });
            let env =
                ReportEnvelope::new("transverse", Some(space), sorted(payload), Verdict::Pass);
            (
                emit(&env, cli.format, None, Some(csv.join("\n") + "\n")),
                Verdict::Pass,
            )
        }
        Command::Stenzel { space, side } => {
            let s = space_from_spec(space)?;
            let plus = match side.as_str() {
                "+" | "plus" => true,
                "-" | "minus" => false,
                other => return Err(format!("side must be + or -, got {other:?}")),
            };
            let ansatz = GluedAnsatz::build(&s).map_err(|e| e.to_string())?;
            let st = if plus {
                &ansatz.stenzel_plus
            } else {
                &ansatz.stenzel_minus
            };
            let payload = json!({
                "space": s.tag,
                "side": if plus { "+" } else { "-" },
                "fiber": [st.m, st.mh],
                "A": json_f64(st.big_a),
                "K_closed_form": json_f64(st.k_lead),
                "K_fitted": json_f64(st.k_fitted),
                "K_target": json_f64(st.k_target),
                "leading_exponent": json_f64(st.a),
                "c_k": st.c_k.iter().map(|&c| json_f64(c)).collect::<Vec<_>>(),
            });
            let env = ReportEnvelope::new("stenzel", Some(space), sorted(payload), Verdict::Pass);
            (env.to_json(), Verdict::Pass)
        }
        Command::Glue { space, r#box, step } => {
            let s = space_from_spec(space)?;
            match GluedAnsatz::build(&s) {
                Err(e) => {
                    let payload = json!({
                        "space": s.tag,
                        "verdict": "FAIL",
                        "reason": e.to_string(),
                    });
                    let env =
                        ReportEnvelope::new("glue", Some(space), sorted(payload), Verdict::Fail);
                    (env.to_json(), Verdict::Fail)
                }
                Ok(ansatz) => {
                    let (field, inner) = if (*r#box - 30.0).abs() < 1e-12
                        && (*step - 1.0 / 16.0).abs() < 1e-12
                    {
                        default_field(&ansatz).map_err(|e| e.to_string())?
                    } else {
                        let f = horosym::gluing::ricci_potential_field(
                            &ansatz, 0.5, *r#box, *step, 5.0,
                        );
                        (f, 5.0)
                    };
                    let audit = decay_rate_audit(&ansatz, &field).map_err(|e| e.to_string())?;
                    let mc = metric_comparison(&ansatz).map_err(|e| e.to_string())?;
                    let verdict = if audit.pass { Verdict::Pass } else { Verdict::Fail };
                    let payload = json!({
                        "space": s.tag,
                        "params": serde_json::to_value(&ansatz.params).map_err(|e| e.to_string())?,
                        "inner_boundary_phi": json_f64(inner),
                        "region_slopes": audit.region_slopes.iter()
                            .map(|(k, v)| (k.clone(), json!([json_f64(v.0), v.1])))
                            .collect::<serde_json::Map<String, Value>>(),
                        "metric_comparison": serde_json::to_value(&mc).map_err(|e| e.to_string())?,
                        "verdict": verdict.as_str(),
                    });
                    let env = ReportEnvelope::new("glue", Some(space), sorted(payload), verdict);
                    let mut csv = vec![csv_line(&[
                        "x1".into(),
                        "x2".into(),
                        "rho".into(),
                        "P".into(),
                        "region".into(),
                    ])];
                    for n in field.nodes.iter().step_by(37) {
                        csv.push(csv_line(&[
                            fmt_f64(n.0),
                            fmt_f64(n.1),
                            fmt_f64(n.2),
                            fmt_f64(n.3),
                            n.4.tag().to_string(),
                        ]));
                    }
                    (
                        emit(&env, cli.format, None, Some(csv.join("\n") + "\n")),
                        verdict,
                    )
                }
            }
        }
        Command::BoundedGeometry { family, r_max } => {
            let mut rows = vec![];
            let mut verdict = Verdict::Pass;
            let tags: Vec<String> = if family == "all" {
                horosym::geomchecks::table6_rows()
                    .iter()
                    .map(|r| r.0.clone())
                    .collect()
            } else if matches!(family.as_str(), "AIIIa" | "CIIa" | "BDI") {
                (5..=*r_max).map(|r| format!("{family}:r={r}")).collect()
            } else {
                vec![family.clone()]
            };
            for tag in tags {
                let s = space_from_spec(&tag)?;
                let k = solve_kstable_t(&s, &default_tol()).map_err(|e| e.to_string())?;
                let v = horosym::geomchecks::bounded_geometry_check(&s, &k.t_star);
                if !v.pass {
                    verdict = Verdict::Fail;
                }
                rows.push(serde_json::to_value(&v).map_err(|e| e.to_string())?);
            }
            let payload = json!({ "family": family, "rows": rows, "verdict": verdict.as_str() });
            let env =
                ReportEnvelope::new("bounded-geometry", Some(family), sorted(payload), verdict);
            (env.to_json(), verdict)
        }
        Command::Singularity { space } => {
            let s = space_from_spec(space)?;
            let rep = horosym::conecomb::link_smoothness_report(&s)?;
            let payload = serde_json::to_value(&rep).map_err(|e| e.to_string())?;
            let env =
                ReportEnvelope::new("singularity", Some(space), sorted(payload), Verdict::Pass);
            let table = format!(
                "space: {}\nverdict: {}\nreason: {}\npairs smooth: {:?}\nlocally factorial: {:?}\n",
                rep.space,
                rep.overall,
                rep.reason,
                rep.pair_verdicts.iter().map(|v| v.smooth).collect::<Vec<_>>(),
                rep.locally_factorial
            );
            (emit(&env, cli.format, Some(table), None), Verdict::Pass)
        }
        Command::Table7 { all: _ } => {
            let mut tags = rank_two_tags(5);
            tags.extend([
                "R1xR1:m1=1,mh1=0,m2=1,mh2=0".to_string(),
                "R1xR1:m1=3,mh1=0,m2=2,mh2=1".to_string(),
                "R1xR1:m1=4,mh1=3,m2=8,mh2=7".to_string(),
                "R1xR1:m1=2,mh1=1,m2=2,mh2=1".to_string(),
            ]);
            tags.extend([
                "A2:m=1".to_string(),
                "A2:m=4".to_string(),
                "A2:m=8".to_string(),
            ]);
            let mut out = vec![];
            let mut rows_table = vec![];
            for tag in &tags {
                let (row, _) = constants_row(tag)?;
                rows_table.push(row.clone());
                out.push(Value::Object(
                    row.into_iter()
                        .map(|(k, v)| (k, Value::String(v)))
                        .collect(),
                ));
            }
            let env = ReportEnvelope::new(
                "table7",
                None,
                sorted(json!({ "rows": out })),
                Verdict::Pass,
            );
            let header: Vec<String> = rows_table
                .iter()
                .map(|r| r.len())
                .zip(rows_table.iter())
                .max_by_key(|(len, _)| *len)
                .map(|(_, row)| row.iter().map(|(k, _)| k.clone()).collect())
                .unwrap_or_default();
            let body: Vec<Vec<String>> = rows_table
                .iter()
                .map(|row| {
                    header
                        .iter()
                        .map(|h| {
                            row.iter()
                                .find(|(k, _)| k == h)
                                .map(|(_, v)| v.clone())
                                .unwrap_or_default()
                        })
                        .collect()
                })
                .collect();
            let table = horosym::report::text_table(&header, &body);
            (emit(&env, cli.format, Some(table), None), Verdict::Pass)
        }
        Command::Table6 { all: _ } => {
            let rows = horosym::geomchecks::table6_rows();
            let payload = json!({
                "rows": rows.iter().map(|(tag, r, cond)| json!({
                    "space": tag,
                    "r": r,
                    "condition": cond,
                })).collect::<Vec<_>>(),
            });
            let env = ReportEnvelope::new("table6", None, sorted(payload), Verdict::Pass);
            let table = horosym::report::text_table(
                &["space".into(), "condition".into()],
                &rows
                    .iter()
                    .map(|(t, _, c)| vec![t.clone(), c.clone()])
                    .collect::<Vec<_>>(),
            );
            (emit(&env, cli.format, Some(table), None), Verdict::Pass)
        }
        Command::Table5 { all: _ } => {
            let mut rows = vec![];
            let mut payload_rows = vec![];
            for tag in rank_two_tags(5) {
                let s = space_from_spec(&tag)?;
                let rep = horosym::conecomb::link_smoothness_report(&s)?;
                rows.push(vec![
                    rep.space.clone(),
                    rep.pair_verdicts
                        .iter()
                        .map(|v| if v.smooth { "s" } else { "x" })
                        .collect::<Vec<_>>()
                        .join(""),
                    rep.locally_factorial
                        .iter()
                        .map(|&b| if b { "f" } else { "x" })
                        .collect::<Vec<_>>()
                        .join(""),
                    rep.overall.clone(),
                    rep.reason.clone(),
                ]);
                payload_rows.push(serde_json::to_value(&rep).map_err(|e| e.to_string())?);
            }
            let env = ReportEnvelope::new(
                "table5",
                None,
                sorted(json!({ "rows": payload_rows })),
                Verdict::Pass,
            );
            let table = horosym::report::text_table(
                &[
                    "space".into(),
                    "pairs".into(),
                    "factorial".into(),
                    "verdict".into(),
                    "reason".into(),
                ],
                &rows,
            );
            (emit(&env, cli.format, Some(table), None), Verdict::Pass)
        }
    };
    if let Some(path) = &cli.out {
        let mut f = std::fs::File::create(path).map_err(|e| e.to_string())?;
        f.write_all(text.as_bytes()).map_err(|e| e.to_string())?;
        Ok((format!("written to {}\n", path.display()), verdict))
    } else {
        Ok((text, verdict))
    }
}

fn main() -> ExitCode {
    match run() {
        Ok((text, verdict)) => {
            print!("{text}");
            ExitCode::from(verdict.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
