//! Classification data for rank-one and rank-two complex symmetric spaces:
//! restricted root systems with multiplicities, Killing Gram matrices
//! (normalized so the short root has squared length 1), Satake diagrams, and
//! the Weyl-chamber constants derived from them.
//!
//! The catalog is transcribed from the classification tables; infinite
//! families are parameterized by `r` with multiplicities as closed-form
//! functions of `r`. Raw root-system + multiplicity input is accepted through
//! the same constructors but carries no Satake diagram.

use crate::rational::{rat, rint, Rat};
use crate::satake::{DynkinEdge, SatakeDiagram};
use num_traits::Zero;
use serde::Serialize;

/// Restricted root system kind. `A1` and `BC1` are the rank-one kinds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RootKind {
    A1,
    Bc1,
    A2,
    B2,
    Bc2,
    G2,
    R1xR1,
}

impl RootKind {
    pub fn rank(self) -> usize {
        match self {
            RootKind::A1 | RootKind::Bc1 => 1,
            _ => 2,
        }
    }
}

/// A positive restricted root `c1 α1 + c2 α2` with its multiplicity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PositiveRoot {
    pub c1: i64,
    pub c2: i64,
    pub mult: u32,
}

/// Restricted root system: kind, exact Gram matrix of the simple roots, and
/// the positive roots with multiplicities.
#[derive(Debug, Clone, PartialEq)]
pub struct RestrictedRootSystem {
    pub kind: RootKind,
    pub rank: usize,
    /// `gram[i][j] = ⟨α_{i+1}, α_{j+1}⟩`; rank-one systems use only `[0][0]`.
    pub gram: [[Rat; 2]; 2],
    pub positive_roots: Vec<PositiveRoot>,
}

impl RestrictedRootSystem {
    /// Killing pairing of two vectors given by coefficients in `(α1, α2)`.
    pub fn pair(&self, a: &[Rat; 2], b: &[Rat; 2]) -> Rat {
        let mut acc = Rat::zero();
        for i in 0..2 {
            for j in 0..2 {
                acc += &a[i] * &b[j] * &self.gram[i][j];
            }
        }
        acc
    }

    pub fn pair_root(&self, r: &PositiveRoot, b: &[Rat; 2]) -> Rat {
        self.pair(&[rint(r.c1), rint(r.c2)], b)
    }

    /// Gram matrix is positive definite (trivially checks the 2x2 minors).
    pub fn gram_positive_definite(&self) -> bool {
        use num_traits::Signed;
        if !self.gram[0][0].is_positive() {
            return false;
        }
        if self.rank == 1 {
            return true;
        }
        let det = &self.gram[0][0] * &self.gram[1][1] - &self.gram[0][1] * &self.gram[1][0];
        self.gram[1][1].is_positive() && det.is_positive()
    }
}

/// Multiplicity data per restricted-root-system kind.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Multiplicities {
    /// Rank one: `(m, m̂)` for `(α, 2α)`.
    RankOne { m: i64, mh: i64 },
    /// `A2` with common multiplicity `m`.
    A2 { m: i64 },
    /// `BC2`/`B2` per Convention: `(m1, m3)` on `(α1, 2α1)` (short), `m2` on
    /// the long root `α2`. `m3 = 0` means kind `B2`.
    Bc2 { m1: i64, m2: i64, m3: i64 },
    /// `G2` with common multiplicity `m`.
    G2 { m: i64 },
    /// Product of two rank-one systems: `(m_i, m̂_i)` per factor.
    R1xR1 { m1: i64, mh1: i64, m2: i64, mh2: i64 },
}

/// One class of white Satake nodes restricting to a common simple restricted
/// root, with the lattice pairings of its colors against the generator of
/// `M0 = Z(ω1 - ω2)` (rank two) or `M0 = Z ω` (rank one).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WhiteClass {
    /// Index of the restricted simple root (1 or 2); always 1 in rank one.
    pub restricted: usize,
    pub nodes: Vec<usize>,
    /// One entry per color of the class; the value is the pairing of the
    /// color image against the primitive lattice generator.
    pub color_pairings: Vec<i64>,
}

/// Satake diagram together with its white-node class data.
#[derive(Debug, Clone, PartialEq)]
pub struct SatakeData {
    pub diagram: SatakeDiagram,
    pub classes: Vec<WhiteClass>,
}

/// Full record of a symmetric space: the single source of truth consumed by
/// every downstream module.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricSpaceData {
    /// Normalized tag, e.g. `"AI"`, `"AIIIa:r=5"`, `"BC2:m1=2,m2=2,m3=1"`.
    pub tag: String,
    /// Catalog involution type when the space is catalogued.
    pub involution: Option<String>,
    pub roots: RestrictedRootSystem,
    pub mults: Multiplicities,
    pub hermitian: bool,
    pub satake: Option<SatakeData>,
    /// Family parameter for the infinite families.
    pub parameter: Option<i64>,
    /// Complex dimension `n = rank + Σ m_α`.
    pub n: i64,
}

impl SymmetricSpaceData {
    pub fn rank(&self) -> usize {
        self.roots.rank
    }

    /// Sum of positive restricted roots `ϖ = Σ m_α α = A1 α1 + A2 α2`.
    pub fn varpi(&self) -> [Rat; 2] {
        let mut a1 = Rat::zero();
        let mut a2 = Rat::zero();
        for r in &self.roots.positive_roots {
            a1 += rint(r.c1 * r.mult as i64);
            a2 += rint(r.c2 * r.mult as i64);
        }
        [a1, a2]
    }

    pub fn is_g2(&self) -> bool {
        self.roots.kind == RootKind::G2
    }
}

/// Weyl-chamber constants of a rank-two space.
#[derive(Debug, Clone, PartialEq)]
pub struct WeylData {
    /// `ϖ = A1 α1 + A2 α2`.
    pub varpi: [Rat; 2],
    pub a_1: Rat,
    pub a_2: Rat,
    pub zeta1: Rat,
    pub zeta2: Rat,
    /// Wall direction `α̃1 = α1 + ζ1 α2` in `(α1, α2)` coordinates.
    pub wall1: [Rat; 2],
    /// Wall direction `α̃2 = α2 + ζ2 α1`.
    pub wall2: [Rat; 2],
    pub n: i64,
}

/// Exact Weyl data: `ζ1 = -⟨α2,α1⟩/⟨α2,α2⟩`, `ζ2 = -⟨α2,α1⟩/⟨α1,α1⟩`, the
/// wall directions, and the decomposition `ϖ = A1 α1 + A2 α2`.
pub fn weyl_data(space: &SymmetricSpaceData) -> WeylData {
    assert_eq!(space.rank(), 2, "weyl_data needs a rank-two space");
    let g = &space.roots.gram;
    let zeta1 = -&g[1][0] / &g[1][1];
    let zeta2 = -&g[1][0] / &g[0][0];
    let wall1 = [rint(1), zeta1.clone()];
    let wall2 = [zeta2.clone(), rint(1)];
    let varpi = space.varpi();
    // A_i read back from the pairing with the orthogonal wall
    let alpha1 = [rint(1), rint(0)];
    let alpha2 = [rint(0), rint(1)];
    let a_1 = space.roots.pair(&varpi, &wall1) / space.roots.pair(&alpha1, &wall1);
    let a_2 = space.roots.pair(&varpi, &wall2) / space.roots.pair(&alpha2, &wall2);
    debug_assert_eq!(a_1, varpi[0]);
    debug_assert_eq!(a_2, varpi[1]);
    WeylData {
        varpi: varpi.clone(),
        a_1,
        a_2,
        zeta1,
        zeta2,
        wall1,
        wall2,
        n: space.n,
    }
}

/// One factor `⟨α, ·⟩` of the Duistermaat-Heckman polynomial, expressed by
/// its pairings against `(α1, α2)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DHFactor {
    pub root: PositiveRoot,
    /// `(⟨α, α1⟩, ⟨α, α2⟩)`: the covector of the linear form `p ↦ ⟨α, p⟩`.
    pub pairing: [Rat; 2],
    pub mult: u32,
}

/// `P(p) = ∏_{α ∈ R+} ⟨α, p⟩^{m_α}` in factored form.
#[derive(Debug, Clone, PartialEq)]
pub struct FactoredDHPoly {
    pub factors: Vec<DHFactor>,
}

impl FactoredDHPoly {
    /// Total degree `Σ m_α = n - rank`.
    pub fn degree(&self) -> i64 {
        self.factors.iter().map(|f| f.mult as i64).sum()
    }

    /// Exact evaluation at a point given in `(α1, α2)` coordinates.
    pub fn eval(&self, p: &[Rat; 2]) -> Rat {
        let mut acc = rint(1);
        for f in &self.factors {
            let v = &f.pairing[0] * &p[0] + &f.pairing[1] * &p[1];
            for _ in 0..f.mult {
                acc *= &v;
            }
        }
        acc
    }
}

pub fn dh_polynomial(space: &SymmetricSpaceData) -> FactoredDHPoly {
    let alpha1 = [rint(1), rint(0)];
    let alpha2 = [rint(0), rint(1)];
    let factors = space
        .roots
        .positive_roots
        .iter()
        .map(|r| DHFactor {
            root: *r,
            pairing: [
                space.roots.pair_root(r, &alpha1),
                space.roots.pair_root(r, &alpha2),
            ],
            mult: r.mult,
        })
        .collect();
    FactoredDHPoly { factors }
}

// ---------------------------------------------------------------------------
// constructors
// ---------------------------------------------------------------------------

fn gram_a2() -> [[Rat; 2]; 2] {
    [[rint(1), rat(-1, 2)], [rat(-1, 2), rint(1)]]
}
fn gram_bc2() -> [[Rat; 2]; 2] {
    [[rint(1), rint(-1)], [rint(-1), rint(2)]]
}
fn gram_g2() -> [[Rat; 2]; 2] {
    [[rint(1), rat(-3, 2)], [rat(-3, 2), rint(3)]]
}
fn gram_r1r1() -> [[Rat; 2]; 2] {
    [[rint(1), rint(0)], [rint(0), rint(1)]]
}
fn gram_rank1() -> [[Rat; 2]; 2] {
    [[rint(1), rint(0)], [rint(0), rint(1)]]
}

fn pr(c1: i64, c2: i64, mult: i64) -> PositiveRoot {
    PositiveRoot { c1, c2, mult: mult as u32 }
}

fn roots_for(mults: &Multiplicities) -> Result<RestrictedRootSystem, String> {
    match *mults {
        Multiplicities::RankOne { m, mh } => {
            if m < 1 || mh < 0 {
                return Err("rank-one multiplicities need m >= 1, mh >= 0".into());
            }
            let mut positive = vec![pr(1, 0, m)];
            if mh > 0 {
                positive.push(pr(2, 0, mh));
            }
            Ok(RestrictedRootSystem {
                kind: if mh > 0 { RootKind::Bc1 } else { RootKind::A1 },
                rank: 1,
                gram: gram_rank1(),
                positive_roots: positive,
            })
        }
        Multiplicities::A2 { m } => {
            if m < 1 {
                return Err("A2 needs m >= 1".into());
            }
            Ok(RestrictedRootSystem {
                kind: RootKind::A2,
                rank: 2,
                gram: gram_a2(),
                positive_roots: vec![pr(1, 0, m), pr(0, 1, m), pr(1, 1, m)],
            })
        }
        Multiplicities::Bc2 { m1, m2, m3 } => {
            if m1 < 1 || m2 < 1 || m3 < 0 {
                return Err("BC2/B2 needs m1, m2 >= 1 and m3 >= 0".into());
            }
            let mut positive = vec![pr(1, 0, m1), pr(1, 1, m1), pr(0, 1, m2), pr(2, 1, m2)];
            if m3 > 0 {
                positive.push(pr(2, 0, m3));
                positive.push(pr(2, 2, m3));
            }
            Ok(RestrictedRootSystem {
                kind: if m3 > 0 { RootKind::Bc2 } else { RootKind::B2 },
                rank: 2,
                gram: gram_bc2(),
                positive_roots: positive,
            })
        }
        Multiplicities::G2 { m } => {
            if m < 1 {
                return Err("G2 needs m >= 1".into());
            }
            Ok(RestrictedRootSystem {
                kind: RootKind::G2,
                rank: 2,
                gram: gram_g2(),
                positive_roots: vec![
                    pr(1, 0, m),
                    pr(0, 1, m),
                    pr(1, 1, m),
                    pr(2, 1, m),
                    pr(3, 1, m),
                    pr(3, 2, m),
                ],
            })
        }
        Multiplicities::R1xR1 { m1, mh1, m2, mh2 } => {
            if m1 < 1 || m2 < 1 || mh1 < 0 || mh2 < 0 {
                return Err("R1xR1 needs m1, m2 >= 1 and mh1, mh2 >= 0".into());
            }
            let mut positive = vec![pr(1, 0, m1)];
            if mh1 > 0 {
                positive.push(pr(2, 0, mh1));
            }
            positive.push(pr(0, 1, m2));
            if mh2 > 0 {
                positive.push(pr(0, 2, mh2));
            }
            Ok(RestrictedRootSystem {
                kind: RootKind::R1xR1,
                rank: 2,
                gram: gram_r1r1(),
                positive_roots: positive,
            })
        }
    }
}

/// Build a space from explicit multiplicity data (no Satake diagram).
pub fn space_from_mults(tag: &str, mults: Multiplicities) -> Result<SymmetricSpaceData, String> {
    let roots = roots_for(&mults)?;
    let n = roots.rank as i64
        + roots
            .positive_roots
            .iter()
            .map(|r| r.mult as i64)
            .sum::<i64>();
    Ok(SymmetricSpaceData {
        tag: tag.to_string(),
        involution: None,
        roots,
        mults,
        hermitian: false,
        satake: None,
        parameter: None,
        n,
    })
}

fn wc(restricted: usize, nodes: &[usize], pairings: &[i64]) -> WhiteClass {
    WhiteClass {
        restricted,
        nodes: nodes.to_vec(),
        color_pairings: pairings.to_vec(),
    }
}

fn finish(
    tag: &str,
    involution: &str,
    mults: Multiplicities,
    hermitian: bool,
    satake: Option<SatakeData>,
    parameter: Option<i64>,
) -> Result<SymmetricSpaceData, String> {
    let mut s = space_from_mults(tag, mults)?;
    s.involution = Some(involution.to_string());
    s.hermitian = hermitian;
    s.parameter = parameter;
    if let Some(sd) = &satake {
        sd.diagram.validate()?;
    }
    s.satake = satake;
    Ok(s)
}

fn doubled_diagram(ambient: &str, factor_edges: &[DynkinEdge], k: usize) -> SatakeDiagram {
    let mut edges = factor_edges.to_vec();
    for e in factor_edges {
        edges.push(DynkinEdge {
            a: e.a + k,
            b: e.b + k,
            mult: e.mult,
            short_end: e.short_end.map(|s| s + k),
        });
    }
    SatakeDiagram {
        ambient: ambient.to_string(),
        nodes: 2 * k,
        edges,
        black: vec![],
        arrows: (0..k).map(|i| (i, i + k)).collect(),
    }
}

/// Catalogued rank-two spaces by involution tag, with optional family
/// parameter. Returns a descriptive error for unknown tags or `r` below the
/// family minimum.
pub fn catalog_space(name: &str, r: Option<i64>) -> Result<SymmetricSpaceData, String> {
    let no_param = |name: &str| -> Result<(), String> {
        if r.is_some() {
            Err(format!("{name} does not take a parameter"))
        } else {
            Ok(())
        }
    };
    match name {
        // --- rank two, A2 column ---
        "AI" => {
            no_param(name)?;
            let d = SatakeDiagram {
                ambient: "A2".into(),
                nodes: 2,
                edges: crate::satake::chain(2),
                black: vec![],
                arrows: vec![],
            };
            finish(
                "AI",
                "AI",
                Multiplicities::A2 { m: 1 },
                false,
                Some(SatakeData {
                    diagram: d,
                    classes: vec![wc(1, &[0], &[2]), wc(2, &[1], &[2])],
                }),
                None,
            )
        }
        "A2" => {
            no_param(name)?;
            let d = doubled_diagram("A2xA2", &crate::satake::chain(2), 2);
            finish(
                "A2",
                "A2",
                Multiplicities::A2 { m: 2 },
                false,
                Some(SatakeData {
                    diagram: d,
                    classes: vec![wc(1, &[0, 2], &[2]), wc(2, &[1, 3], &[2])],
                }),
                None,
            )
        }
        "AII" => {
            no_param(name)?;
            let d = SatakeDiagram {
                ambient: "A5".into(),
                nodes: 5,
                edges: crate::satake::chain(5),
                black: vec![0, 2, 4],
                arrows: vec![],
            };
            finish(
                "AII",
                "AII",
                Multiplicities::A2 { m: 4 },
                false,
                Some(SatakeData {
                    diagram: d,
                    classes: vec![wc(1, &[1], &[1]), wc(2, &[3], &[1])],
                }),
                None,
            )
        }
        "EIV" => {
            no_param(name)?;
            let d = SatakeDiagram {
                ambient: "E6".into(),
                nodes: 6,
                edges: e6_edges(),
                black: vec![1, 2, 3, 4],
                arrows: vec![],
            };
            finish(
                "EIV",
                "EIV",
                Multiplicities::A2 { m: 8 },
                false,
                Some(SatakeData {
                    diagram: d,
                    classes: vec![wc(1, &[0], &[1]), wc(2, &[5], &[1])],
                }),
                None,
            )
        }
        // --- rank two, BC2 column ---
        "AIIIa" => {
            let r = r.ok_or("AIIIa requires r (AIIIa:r=<int>)")?;
            if r < 5 {
                return Err("AIIIa requires r >= 5".into());
            }
            let nn = (r - 1) as usize;
            let mut black: Vec<usize> = vec![];
            for v in 2..=(r - 4) {
                black.push(v as usize);
            }
            let d = SatakeDiagram {
                ambient: format!("A{}", r - 1),
                nodes: nn,
                edges: crate::satake::chain(nn),
                black,
                arrows: vec![(0, nn - 1), (1, nn - 2)],
            };
            finish(
                &format!("AIIIa:r={r}"),
                "AIIIa",
                Multiplicities::Bc2 { m1: 2 * r - 8, m2: 2, m3: 1 },
                true,
                Some(SatakeData {
                    diagram: d,
                    classes: vec![wc(1, &[0, nn - 1], &[1, 1]), wc(2, &[1, nn - 2], &[1, 1])],
                }),
                Some(r),
            )
        }
        "CIIa" => {
            let r = r.ok_or("CIIa requires r (CIIa:r=<int>)")?;
            if r < 5 {
                return Err("CIIa requires r >= 5".into());
            }
            let nn = r as usize;
            let mut edges = crate::satake::chain(nn);
            edges[nn - 2] = DynkinEdge::multiple(nn - 2, nn - 1, 2, nn - 2);
            let mut black = vec![0, 2];
            black.extend(4..nn);
            let d = SatakeDiagram {
                ambient: format!("C{r}"),
                nodes: nn,
                edges,
                black,
                arrows: vec![],
            };
            finish(
                &format!("CIIa:r={r}"),
                "CIIa",
                Multiplicities::Bc2 { m1: 4 * r - 16, m2: 4, m3: 3 },
                false,
                Some(SatakeData {
                    diagram: d,
                    classes: vec![wc(1, &[3], &[1]), wc(2, &[1], &[1])],
                }),
                Some(r),
            )
        }
        "DIIIa" => {
            no_param(name)?;
            let d = SatakeDiagram {
                ambient: "D5".into(),
                nodes: 5,
                edges: vec![
                    DynkinEdge::single(0, 1),
                    DynkinEdge::single(1, 2),
                    DynkinEdge::single(2, 3),
                    DynkinEdge::single(2, 4),
                ],
                black: vec![0, 2],
                arrows: vec![(3, 4)],
            };
            finish(
                "DIIIa",
                "DIIIa",
                Multiplicities::Bc2 { m1: 4, m2: 4, m3: 1 },
                true,
                Some(SatakeData {
                    diagram: d,
                    classes: vec![wc(1, &[1], &[1]), wc(2, &[3, 4], &[1, 1])],
                }),
                None,
            )
        }
        "EIII" => {
            no_param(name)?;
            let d = SatakeDiagram {
                ambient: "E6".into(),
                nodes: 6,
                edges: e6_edges(),
                black: vec![2, 3, 4],
                arrows: vec![(0, 5)],
            };
            finish(
                "EIII",
                "EIII",
                Multiplicities::Bc2 { m1: 8, m2: 6, m3: 1 },
                true,
                Some(SatakeData {
                    diagram: d,
                    classes: vec![wc(1, &[0, 5], &[1, 1]), wc(2, &[1], &[1])],
                }),
                None,
            )
        }
        // --- rank two, B2 column ---
        "BDI" => {
            let r = r.ok_or("BDI requires r (BDI:r=<int>)")?;
            if r < 5 {
                return Err("BDI requires r >= 5".into());
            }
            let (d, classes) = bdi_satake(r);
            finish(
                &format!("BDI:r={r}"),
                "BDI",
                Multiplicities::Bc2 { m1: r - 4, m2: 1, m3: 0 },
                true,
                Some(SatakeData { diagram: d, classes }),
                Some(r),
            )
        }
        "AIIIb" => {
            no_param(name)?;
            let d = SatakeDiagram {
                ambient: "A3".into(),
                nodes: 3,
                edges: crate::satake::chain(3),
                black: vec![],
                arrows: vec![(0, 2)],
            };
            finish(
                "AIIIb",
                "AIIIb",
                Multiplicities::Bc2 { m1: 2, m2: 1, m3: 0 },
                true,
                Some(SatakeData {
                    diagram: d,
                    classes: vec![wc(1, &[0, 2], &[1, 1]), wc(2, &[1], &[2])],
                }),
                None,
            )
        }
        "DIIIb" => {
            no_param(name)?;
            let d = SatakeDiagram {
                ambient: "D4".into(),
                nodes: 4,
                edges: vec![
                    DynkinEdge::single(0, 1),
                    DynkinEdge::single(1, 2),
                    DynkinEdge::single(1, 3),
                ],
                black: vec![0, 1],
                arrows: vec![],
            };
            finish(
                "DIIIb",
                "DIIIb",
                Multiplicities::Bc2 { m1: 4, m2: 1, m3: 0 },
                true,
                Some(SatakeData {
                    diagram: d,
                    classes: vec![wc(1, &[2], &[1]), wc(2, &[3], &[1])],
                }),
                None,
            )
        }
        "B2" => {
            no_param(name)?;
            let factor = vec![DynkinEdge::multiple(0, 1, 2, 1)];
            let d = doubled_diagram("B2xB2", &factor, 2);
            finish(
                "B2",
                "B2",
                Multiplicities::Bc2 { m1: 2, m2: 2, m3: 0 },
                false,
                Some(SatakeData {
                    diagram: d,
                    classes: vec![wc(1, &[1, 3], &[2]), wc(2, &[0, 2], &[2])],
                }),
                None,
            )
        }
        "CIIb" => {
            no_param(name)?;
            let mut edges = crate::satake::chain(4);
            edges[2] = DynkinEdge::multiple(2, 3, 2, 2);
            let d = SatakeDiagram {
                ambient: "C4".into(),
                nodes: 4,
                edges,
                black: vec![0, 2],
                arrows: vec![],
            };
            finish(
                "CIIb",
                "CIIb",
                Multiplicities::Bc2 { m1: 4, m2: 3, m3: 0 },
                false,
                Some(SatakeData {
                    diagram: d,
                    classes: vec![wc(1, &[1], &[1]), wc(2, &[3], &[1])],
                }),
                None,
            )
        }
        // --- rank two, G2 column ---
        "G" => {
            no_param(name)?;
            let d = SatakeDiagram {
                ambient: "G2".into(),
                nodes: 2,
                edges: vec![DynkinEdge::multiple(0, 1, 3, 0)],
                black: vec![],
                arrows: vec![],
            };
            finish(
                "G",
                "G",
                Multiplicities::G2 { m: 1 },
                false,
                Some(SatakeData {
                    diagram: d,
                    classes: vec![wc(1, &[0], &[2]), wc(2, &[1], &[2])],
                }),
                None,
            )
        }
        "G2" => {
            no_param(name)?;
            let factor = vec![DynkinEdge::multiple(0, 1, 3, 0)];
            let d = doubled_diagram("G2xG2", &factor, 2);
            finish(
                "G2",
                "G2",
                Multiplicities::G2 { m: 2 },
                false,
                Some(SatakeData {
                    diagram: d,
                    classes: vec![wc(1, &[0, 2], &[2]), wc(2, &[1, 3], &[2])],
                }),
                None,
            )
        }
        // --- rank one families ---
        "BDII" => {
            let r = r.ok_or("BDII requires r (BDII:r=<int>)")?;
            if r < 1 {
                return Err("BDII requires r >= 1".into());
            }
            let (d, classes) = bdii_satake(r);
            finish(
                &format!("BDII:r={r}"),
                "BDII",
                Multiplicities::RankOne { m: r, mh: 0 },
                r == 1,
                Some(SatakeData { diagram: d, classes }),
                Some(r),
            )
        }
        "AIII" => {
            let r = r.ok_or("AIII requires r (AIII:r=<int>)")?;
            if r < 2 {
                return Err("AIII requires r >= 2".into());
            }
            let nn = r as usize;
            let black: Vec<usize> = (1..nn - 1).collect();
            let d = SatakeDiagram {
                ambient: format!("A{r}"),
                nodes: nn,
                edges: crate::satake::chain(nn),
                black,
                arrows: vec![(0, nn - 1)],
            };
            finish(
                &format!("AIII:r={r}"),
                "AIII",
                Multiplicities::RankOne { m: 2 * r - 2, mh: 1 },
                true,
                Some(SatakeData {
                    diagram: d,
                    classes: vec![wc(1, &[0, nn - 1], &[1, 1])],
                }),
                Some(r),
            )
        }
        "CII" => {
            let r = r.ok_or("CII requires r (CII:r=<int>)")?;
            if r < 3 {
                return Err("CII requires r >= 3".into());
            }
            let nn = r as usize;
            let mut edges = crate::satake::chain(nn);
            edges[nn - 2] = DynkinEdge::multiple(nn - 2, nn - 1, 2, nn - 2);
            let mut black = vec![0];
            black.extend(2..nn);
            let d = SatakeDiagram {
                ambient: format!("C{r}"),
                nodes: nn,
                edges,
                black,
                arrows: vec![],
            };
            finish(
                &format!("CII:r={r}"),
                "CII",
                Multiplicities::RankOne { m: 4 * r - 8, mh: 3 },
                false,
                Some(SatakeData {
                    diagram: d,
                    classes: vec![wc(1, &[1], &[1])],
                }),
                Some(r),
            )
        }
        "FII" => {
            no_param(name)?;
            let mut edges = crate::satake::chain(4);
            edges[1] = DynkinEdge::multiple(1, 2, 2, 2);
            let d = SatakeDiagram {
                ambient: "F4".into(),
                nodes: 4,
                edges,
                black: vec![0, 1, 2],
                arrows: vec![],
            };
            finish(
                "FII",
                "FII",
                Multiplicities::RankOne { m: 8, mh: 7 },
                false,
                Some(SatakeData {
                    diagram: d,
                    classes: vec![wc(1, &[3], &[1])],
                }),
                None,
            )
        }
        other => Err(format!("unknown space tag {other:?}")),
    }
}

/// Bourbaki E6 support graph: chain 1-3-4-5-6 with node 2 attached to 4
/// (0-indexed: chain 0-2-3-4-5, node 1 attached to 3).
fn e6_edges() -> Vec<DynkinEdge> {
    vec![
        DynkinEdge::single(0, 2),
        DynkinEdge::single(2, 3),
        DynkinEdge::single(3, 4),
        DynkinEdge::single(4, 5),
        DynkinEdge::single(1, 3),
    ]
}

fn bdi_satake(r: i64) -> (SatakeDiagram, Vec<WhiteClass>) {
    // SO_r / SO_2 x SO_{r-2}: ambient B_{(r-1)/2} (r odd) or D_{r/2} (r even);
    // the two noncompact directions make nodes 0 and 1 white. Node 0 carries
    // theta(a) = -a (pairing 2); node 1 is entangled with the compact part for
    // r >= 7 (pairing 1); small-rank degenerations handled explicitly.
    if r % 2 == 1 {
        let k = ((r - 1) / 2) as usize;
        let mut edges = crate::satake::chain(k);
        if k >= 2 {
            edges[k - 2] = DynkinEdge::multiple(k - 2, k - 1, 2, k - 1);
        }
        let black: Vec<usize> = (2..k).collect();
        let d = SatakeDiagram {
            ambient: format!("B{k}"),
            nodes: k,
            edges,
            black,
            arrows: vec![],
        };
        let classes = if r == 5 {
            vec![wc(2, &[0], &[2]), wc(1, &[1], &[2])]
        } else {
            vec![wc(2, &[0], &[2]), wc(1, &[1], &[1])]
        };
        (d, classes)
    } else if r == 6 {
        // D3 degeneration: all white, fork nodes arrow-paired
        let d = SatakeDiagram {
            ambient: "D3".into(),
            nodes: 3,
            edges: vec![DynkinEdge::single(0, 1), DynkinEdge::single(0, 2)],
            black: vec![],
            arrows: vec![(1, 2)],
        };
        (d, vec![wc(2, &[0], &[2]), wc(1, &[1, 2], &[1, 1])])
    } else {
        let k = (r / 2) as usize;
        let mut edges = crate::satake::chain(k - 1);
        edges.push(DynkinEdge::single(k - 3, k - 1));
        let black: Vec<usize> = (2..k).collect();
        let d = SatakeDiagram {
            ambient: format!("D{k}"),
            nodes: k,
            edges,
            black,
            arrows: vec![],
        };
        (d, vec![wc(2, &[0], &[2]), wc(1, &[1], &[1])])
    }
}

fn bdii_satake(r: i64) -> (SatakeDiagram, Vec<WhiteClass>) {
    if r == 1 {
        let d = SatakeDiagram {
            ambient: "A1".into(),
            nodes: 1,
            edges: vec![],
            black: vec![],
            arrows: vec![],
        };
        (d, vec![wc(1, &[0], &[2])])
    } else if r == 2 {
        let d = SatakeDiagram {
            ambient: "A1xA1".into(),
            nodes: 2,
            edges: vec![],
            black: vec![],
            arrows: vec![(0, 1)],
        };
        (d, vec![wc(1, &[0, 1], &[2])])
    } else if r % 2 == 1 {
        let k = ((r + 1) / 2) as usize;
        let mut edges = crate::satake::chain(k);
        edges[k - 2] = DynkinEdge::multiple(k - 2, k - 1, 2, k - 1);
        let black: Vec<usize> = (1..k).collect();
        let d = SatakeDiagram {
            ambient: format!("B{k}"),
            nodes: k,
            edges,
            black,
            arrows: vec![],
        };
        (d, vec![wc(1, &[0], &[1])])
    } else {
        let k = ((r + 2) / 2) as usize;
        let mut edges = crate::satake::chain(k - 1);
        edges.push(DynkinEdge::single(k - 3, k - 1));
        let black: Vec<usize> = (1..k).collect();
        let d = SatakeDiagram {
            ambient: format!("D{k}"),
            nodes: k,
            edges,
            black,
            arrows: vec![],
        };
        (d, vec![wc(1, &[0], &[1])])
    }
}

/// Every catalogued rank-two tag, families at the given `r`.
pub fn rank_two_tags(r_family: i64) -> Vec<String> {
    vec![
        "AI".into(),
        "A2".into(),
        "AII".into(),
        "EIV".into(),
        format!("AIIIa:r={r_family}"),
        format!("CIIa:r={r_family}"),
        "DIIIa".into(),
        "EIII".into(),
        format!("BDI:r={r_family}"),
        "AIIIb".into(),
        "DIIIb".into(),
        "B2".into(),
        "CIIb".into(),
        "G".into(),
        "G2".into(),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spacespec::space_from_spec;

    #[test]
    fn dimension_table() {
        // n = k + sum of multiplicities, against the classification tables
        for (tag, n) in [
            ("AI", 5),
            ("A2", 8),
            ("AII", 14),
            ("EIV", 26),
            ("AIIIa:r=5", 12),
            ("CIIa:r=5", 24),
            ("DIIIa", 20),
            ("EIII", 32),
            ("BDI:r=5", 6),
            ("AIIIb", 8),
            ("DIIIb", 12),
            ("B2", 10),
            ("CIIb", 16),
            ("G", 8),
            ("G2", 14),
            ("BDII:r=3", 4),
            ("AIII:r=2", 4),
            ("CII:r=3", 8),
            ("FII", 16),
        ] {
            let s = space_from_spec(tag).unwrap();
            assert_eq!(s.n, n, "dimension mismatch for {tag}");
        }
    }

    #[test]
    fn ai_has_a2_system_m1_n5() {
        let s = space_from_spec("AI").unwrap();
        assert_eq!(s.roots.kind, RootKind::A2);
        assert_eq!(s.mults, Multiplicities::A2 { m: 1 });
        assert_eq!(s.n, 5);
    }

    #[test]
    fn ciib_multiplicities() {
        let s = space_from_spec("CIIb").unwrap();
        assert_eq!(s.mults, Multiplicities::Bc2 { m1: 4, m2: 3, m3: 0 });
        assert_eq!(s.roots.kind, RootKind::B2);
        assert_eq!(s.n, 16);
    }

    #[test]
    fn weyl_data_examples() {
        // A2 with m: varpi = 2m(a1 + a2), zeta = 1/2, n = 2 + 3m
        let s = space_from_spec("A2:m=3").unwrap();
        let w = weyl_data(&s);
        assert_eq!(w.zeta1, rat(1, 2));
        assert_eq!(w.zeta2, rat(1, 2));
        assert_eq!(w.varpi, [rint(6), rint(6)]);
        assert_eq!(w.n, 11);

        // BC2: zeta1 = 1/2, zeta2 = 1, A1 = 2m1+2m2+4m3, A2 = m1+2m2+2m3
        let s = space_from_spec("BC2:m1=2,m2=2,m3=1").unwrap();
        let w = weyl_data(&s);
        assert_eq!(w.zeta1, rat(1, 2));
        assert_eq!(w.zeta2, rint(1));
        assert_eq!(w.a_1, rint(2 * 2 + 2 * 2 + 4));
        assert_eq!(w.a_2, rint(2 + 4 + 2));

        // R1xR1: zeta = 0, varpi = (m1+2mh1, m2+2mh2)
        let s = space_from_spec("R1xR1:m1=2,mh1=1,m2=1,mh2=0").unwrap();
        let w = weyl_data(&s);
        assert_eq!(w.zeta1, rint(0));
        assert_eq!(w.zeta2, rint(0));
        assert_eq!(w.varpi, [rint(4), rint(1)]);
    }

    #[test]
    fn walls_are_orthogonal_to_opposite_roots() {
        for tag in rank_two_tags(5) {
            let s = space_from_spec(&tag).unwrap();
            let w = weyl_data(&s);
            let alpha1 = [rint(1), rint(0)];
            let alpha2 = [rint(0), rint(1)];
            assert!(s.roots.pair(&w.wall1, &alpha2).is_zero(), "{tag}");
            assert!(s.roots.pair(&w.wall2, &alpha1).is_zero(), "{tag}");
            // varpi strictly inside the chamber
            use num_traits::Signed;
            assert!(s.roots.pair(&w.varpi, &w.wall1).is_positive(), "{tag}");
            assert!(s.roots.pair(&w.varpi, &w.wall2).is_positive(), "{tag}");
        }
    }

    #[test]
    fn dh_polynomial_structure() {
        // BC2: six factors with multiplicities (m1, m1, m3, m3, m2, m2)
        let s = space_from_spec("BC2:m1=2,m2=2,m3=1").unwrap();
        let dh = dh_polynomial(&s);
        assert_eq!(dh.factors.len(), 6);
        assert_eq!(dh.degree(), s.n - 2);

        // A2: three factors of multiplicity m; degree n - 2
        let s = space_from_spec("A2:m=1").unwrap();
        let dh = dh_polynomial(&s);
        assert_eq!(dh.factors.len(), 3);
        assert_eq!(dh.degree(), s.n - 2);

        // positive at varpi for every catalogued space
        use num_traits::Signed;
        for tag in rank_two_tags(6) {
            let s = space_from_spec(&tag).unwrap();
            let dh = dh_polynomial(&s);
            assert_eq!(dh.degree(), s.n - 2, "{tag}");
            assert!(dh.eval(&s.varpi()).is_positive(), "{tag}");
        }
    }

    #[test]
    fn b2_with_m3_rejected() {
        assert!(space_from_spec("B2:m1=2,m2=2,m3=1").is_err());
    }

    #[test]
    fn family_minimums_enforced() {
        assert!(catalog_space("AIIIa", Some(4)).is_err());
        assert!(catalog_space("AIIIa", None).is_err());
        assert!(catalog_space("CIIa", Some(3)).is_err());
        assert!(catalog_space("BDI", Some(4)).is_err());
        assert!(catalog_space("ZZ", None).is_err());
        assert!(catalog_space("AI", Some(3)).is_err());
    }

    #[test]
    fn gram_matrices_match_table() {
        let bc2 = space_from_spec("CIIb").unwrap();
        assert_eq!(bc2.roots.gram[0][0], rint(1));
        assert_eq!(bc2.roots.gram[1][1], rint(2));
        assert_eq!(bc2.roots.gram[0][1], rint(-1));
        let g2 = space_from_spec("G").unwrap();
        assert_eq!(g2.roots.gram[1][1], rint(3));
        assert_eq!(g2.roots.gram[0][1], rat(-3, 2));
        for tag in rank_two_tags(5) {
            let s = space_from_spec(&tag).unwrap();
            assert!(s.roots.gram_positive_definite(), "{tag}");
        }
    }
}
