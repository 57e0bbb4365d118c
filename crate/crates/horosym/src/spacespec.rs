//! Parser for the space-spec grammar:
//!
//! ```text
//! NAME | NAME:r=<int> | A2:m=<int> | BC2:m1=<int>,m2=<int>,m3=<int>
//!      | B2:m1=<int>,m2=<int> | R1xR1:m1=<int>,mh1=<int>,m2=<int>,mh2=<int>
//!      | G2:m=<int>
//! ```
//!
//! `NAME` ranges over the catalogued involution tags (rank two: `AI`, `A2`,
//! `AII`, `EIV`, `AIIIa`, `CIIa`, `DIIIa`, `EIII`, `BDI`, `AIIIb`, `DIIIb`,
//! `B2`, `CIIb`, `G`, `G2`; rank one: `BDII`, `AIII`, `CII`, `FII`). A bare
//! `A2`/`B2`/`G2` is the group-case catalog entry; with key-value parameters
//! it is raw root-system input.

use crate::rootdata::{catalog_space, space_from_mults, Multiplicities, SymmetricSpaceData};

fn parse_params(s: &str) -> Result<Vec<(String, i64)>, String> {
    let mut out = vec![];
    for part in s.split(',') {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| format!("expected key=value, got {part:?}"))?;
        let v: i64 = v
            .trim()
            .parse()
            .map_err(|e| format!("bad integer in {part:?}: {e}"))?;
        out.push((k.trim().to_string(), v));
    }
    Ok(out)
}

fn take(params: &[(String, i64)], keys: &[&str]) -> Result<Vec<i64>, String> {
    if params.len() != keys.len() {
        return Err(format!(
            "expected parameters {keys:?}, got {:?}",
            params.iter().map(|(k, _)| k.as_str()).collect::<Vec<_>>()
        ));
    }
    keys.iter()
        .map(|k| {
            params
                .iter()
                .find(|(pk, _)| pk == k)
                .map(|(_, v)| *v)
                .ok_or_else(|| format!("missing parameter {k}"))
        })
        .collect()
}

/// Parse a space spec into a fully populated record. Deterministic; rejects
/// unknown tags, out-of-range family parameters, and inconsistent raw
/// multiplicities.
pub fn space_from_spec(spec: &str) -> Result<SymmetricSpaceData, String> {
    let spec = spec.trim();
    if spec.is_empty() || spec.len() > 256 {
        return Err("empty or oversized space spec".into());
    }
    let (name, rest) = match spec.split_once(':') {
        None => (spec, None),
        Some((n, r)) => (n.trim(), Some(r.trim())),
    };
    match (name, rest) {
        (_, None) => catalog_space(name, None),
        (n, Some(rest)) => {
            let params = parse_params(rest)?;
            match n {
                "AIIIa" | "CIIa" | "BDI" | "BDII" | "AIII" | "CII" => {
                    let v = take(&params, &["r"])?;
                    catalog_space(n, Some(v[0]))
                }
                "A2" => {
                    let v = take(&params, &["m"])?;
                    space_from_mults(&format!("A2:m={}", v[0]), Multiplicities::A2 { m: v[0] })
                }
                "G2" => {
                    let v = take(&params, &["m"])?;
                    space_from_mults(&format!("G2:m={}", v[0]), Multiplicities::G2 { m: v[0] })
                }
                "B2" => {
                    // m3 may be supplied explicitly but must then be zero
                    if params.iter().any(|(k, _)| k == "m3") {
                        let v = take(&params, &["m1", "m2", "m3"])?;
                        if v[2] != 0 {
                            return Err("m3 must be 0 for kind B2".into());
                        }
                        space_from_mults(
                            &format!("B2:m1={},m2={}", v[0], v[1]),
                            Multiplicities::Bc2 { m1: v[0], m2: v[1], m3: 0 },
                        )
                    } else {
                        let v = take(&params, &["m1", "m2"])?;
                        space_from_mults(
                            &format!("B2:m1={},m2={}", v[0], v[1]),
                            Multiplicities::Bc2 { m1: v[0], m2: v[1], m3: 0 },
                        )
                    }
                }
                "BC2" => {
                    let v = take(&params, &["m1", "m2", "m3"])?;
                    if v[2] < 1 {
                        return Err("kind BC2 requires m3 >= 1 (use B2 for m3 = 0)".into());
                    }
                    space_from_mults(
                        &format!("BC2:m1={},m2={},m3={}", v[0], v[1], v[2]),
                        Multiplicities::Bc2 { m1: v[0], m2: v[1], m3: v[2] },
                    )
                }
                "R1xR1" => {
                    let v = take(&params, &["m1", "mh1", "m2", "mh2"])?;
                    space_from_mults(
                        &format!("R1xR1:m1={},mh1={},m2={},mh2={}", v[0], v[1], v[2], v[3]),
                        Multiplicities::R1xR1 { m1: v[0], mh1: v[1], m2: v[2], mh2: v[3] },
                    )
                }
                other => Err(format!("tag {other:?} does not take these parameters")),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::RootKind;

    #[test]
    fn grammar_examples() {
        assert_eq!(space_from_spec("AI").unwrap().n, 5);
        assert_eq!(space_from_spec("AIIIa:r=5").unwrap().n, 12);
        assert_eq!(space_from_spec("A2:m=4").unwrap().n, 14);
        assert_eq!(
            space_from_spec("R1xR1:m1=2,mh1=0,m2=1,mh2=0").unwrap().roots.kind,
            RootKind::R1xR1
        );
        assert_eq!(space_from_spec("G2:m=2").unwrap().roots.kind, RootKind::G2);
        assert_eq!(space_from_spec("B2:m1=2,m2=2").unwrap().roots.kind, RootKind::B2);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(space_from_spec("B2:m1=2,m2=2,m3=1").is_err());
        assert!(space_from_spec("BC2:m1=2,m2=2,m3=0").is_err());
        assert!(space_from_spec("AIIIa:r=4").is_err());
        assert!(space_from_spec("nope").is_err());
        assert!(space_from_spec("").is_err());
        assert!(space_from_spec("A2:x=1").is_err());
        assert!(space_from_spec("R1xR1:m1=2").is_err());
        assert!(space_from_spec("A2:m=0").is_err());
        assert!(space_from_spec("R1xR1:m1=1,mh1=-1,m2=1,mh2=0").is_err());
    }

    #[test]
    fn bare_group_names_hit_catalog() {
        // bare A2/B2/G2 are the group cases, not raw input
        assert_eq!(space_from_spec("A2").unwrap().involution.as_deref(), Some("A2"));
        assert_eq!(space_from_spec("B2").unwrap().n, 10);
        assert_eq!(space_from_spec("G2").unwrap().n, 14);
    }
}
