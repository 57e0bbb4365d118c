//! Quantitative invariants of complete Calabi-Yau metrics on rank-two complex
//! symmetric spaces with horospherical tangent cone at infinity.
//!
//! The library splits into an exact layer and a numerical layer.
//!
//! Exact (arbitrary-precision rationals everywhere, no floats):
//! - [`rootdata`]: the catalog of rank-one and rank-two symmetric spaces
//!   (restricted root system, multiplicities, Killing Gram matrix, Satake
//!   diagram) and the Weyl-chamber constants derived from it.
//! - [`polyalg`]: univariate polynomial arithmetic over `BigRational`,
//!   term-wise antiderivatives, and certified sign-bisection root isolation.
//! - [`kstability`]: the Duistermaat-Heckman functional
//!   `Q(t) = ∫ p P(ϖ + pδ) dp` whose unique positive root picks the K-stable
//!   Reeb vector of the horospherical degeneration, the rank-one Reeb formula,
//!   the G2 exclusion, and irrationality probes for the conjectured
//!   irrational Reeb parameters.
//! - [`geomchecks`]: Appell `F1` evaluation, the `H_r` inequality chain and
//!   exact `Q`-sign range bounds for the two infinite BC2 families, and the
//!   bounded-geometry threshold `t(m1 m2 - m1 - 2 m3) <= A1(m2 + 1)`.
//! - [`conecomb`]: Satake-derived horospherical data, Pasquier smoothness of
//!   couples `(I, J)`, Smith-normal-form local factoriality, colored-cone
//!   validation, and the singularity verdicts for all catalogued tangent cones.
//!
//! Numerical (f64, analytic derivatives everywhere; finite differences only
//! as cross-checks):
//! - [`transverse`]: shooting solver for the transverse Monge-Ampere ODE
//!   `u'' P0(u') = e^{-u}`, `u'(R) = (λ-, λ+)`, with the recursive extraction
//!   of the exponential expansion coefficients `C_j`.
//! - [`stenzel`]: the rank-one Stenzel potential via the exact-series
//!   reduction `(v^n)' = (n/A) e^{(n-1+m̂)x} 2^{1-n} (1-e^{-2x})^m (1-e^{-4x})^m̂`.
//! - [`gluing`]: assembly of every constant of the glued ansatz, the cutoff
//!   pasting of the Calabi potential with the two boundary potentials, one
//!   decay-improvement step, Ricci-potential fields and decay-rate audits,
//!   and metric-component comparisons against the cone models.
//!
//! [`spacespec`] parses the user-facing space grammar (`"AI"`,
//! `"AIIIa:r=5"`, `"BC2:m1=2,m2=2,m3=1"`, ...) and [`report`] renders the
//! deterministic JSON/CSV/table reports used by the CLI.

pub mod conecomb;
pub mod geomchecks;
pub mod gluing;
pub mod kstability;
pub mod polyalg;
pub mod quadrature;
pub mod rational;
pub mod report;
pub mod rootdata;
pub mod satake;
pub mod series;
pub mod spacespec;
pub mod stenzel;
pub mod transverse;

pub use rational::Rat;
