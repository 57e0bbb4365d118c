//! Satake diagrams as plain combinatorial data: a Dynkin support graph with
//! black/white node flags and arrows joining white nodes with equal
//! restriction. Diagrams ship as a static catalog transcribed from the
//! classification tables; user-supplied diagrams go through the same
//! validation path.

use serde::{Deserialize, Serialize};

/// An edge of the Dynkin support graph. `mult` is 1, 2, or 3; for a multiple
/// edge `short_end` names the node carrying the shorter root.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DynkinEdge {
    pub a: usize,
    pub b: usize,
    pub mult: u8,
    #[serde(default)]
    pub short_end: Option<usize>,
}

impl DynkinEdge {
    pub fn single(a: usize, b: usize) -> Self {
        DynkinEdge { a, b, mult: 1, short_end: None }
    }
    pub fn multiple(a: usize, b: usize, mult: u8, short_end: usize) -> Self {
        DynkinEdge { a, b, mult, short_end: Some(short_end) }
    }
    pub fn touches(&self, v: usize) -> bool {
        self.a == v || self.b == v
    }
    pub fn other(&self, v: usize) -> usize {
        if self.a == v {
            self.b
        } else {
            self.a
        }
    }
}

/// Satake diagram: support graph + black nodes + arrows between white nodes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SatakeDiagram {
    /// Human-readable ambient type tag, e.g. `"A5"`, `"E6"`, `"B2xB2"`.
    pub ambient: String,
    pub nodes: usize,
    pub edges: Vec<DynkinEdge>,
    pub black: Vec<usize>,
    pub arrows: Vec<(usize, usize)>,
}

impl SatakeDiagram {
    pub fn is_black(&self, v: usize) -> bool {
        self.black.contains(&v)
    }

    pub fn white_nodes(&self) -> Vec<usize> {
        (0..self.nodes).filter(|v| !self.is_black(*v)).collect()
    }

    /// Structural validation: indices in range, arrows pair distinct white
    /// nodes, black/white partition covers all nodes (by construction), edge
    /// multiplicities in 1..=3.
    pub fn validate(&self) -> Result<(), String> {
        for e in &self.edges {
            if e.a >= self.nodes || e.b >= self.nodes || e.a == e.b {
                return Err(format!("bad edge ({}, {})", e.a, e.b));
            }
            if !(1..=3).contains(&e.mult) {
                return Err(format!("bad edge multiplicity {}", e.mult));
            }
            if e.mult > 1 {
                match e.short_end {
                    Some(s) if e.touches(s) => {}
                    _ => return Err("multiple edge missing a valid short end".into()),
                }
            }
        }
        for &b in &self.black {
            if b >= self.nodes {
                return Err(format!("black node {b} out of range"));
            }
        }
        for &(a, b) in &self.arrows {
            if a >= self.nodes || b >= self.nodes {
                return Err(format!("arrow ({a}, {b}) out of range"));
            }
            if a == b {
                return Err("arrow must join distinct nodes".into());
            }
            if self.is_black(a) || self.is_black(b) {
                return Err("arrows must pair white nodes".into());
            }
        }
        Ok(())
    }

    /// Parse the JSON input format `{ type, n, black: [...], arrows: [[i,j],...],
    /// edges: [...] }`. `edges` may be omitted for a plain type-A chain.
    pub fn from_json(text: &str) -> Result<Self, String> {
        #[derive(Deserialize)]
        struct Raw {
            #[serde(rename = "type")]
            ambient: String,
            n: usize,
            #[serde(default)]
            black: Vec<usize>,
            #[serde(default)]
            arrows: Vec<(usize, usize)>,
            #[serde(default)]
            edges: Option<Vec<DynkinEdge>>,
        }
        let raw: Raw = serde_json::from_str(text).map_err(|e| e.to_string())?;
        if raw.n == 0 || raw.n > 64 {
            return Err("node count out of range".into());
        }
        let edges = raw.edges.unwrap_or_else(|| {
            (1..raw.n).map(|i| DynkinEdge::single(i - 1, i)).collect()
        });
        let d = SatakeDiagram {
            ambient: raw.ambient,
            nodes: raw.n,
            edges,
            black: raw.black,
            arrows: raw.arrows,
        };
        d.validate()?;
        Ok(d)
    }
}

/// A-type chain on `n` nodes.
pub fn chain(n: usize) -> Vec<DynkinEdge> {
    (1..n).map(|i| DynkinEdge::single(i - 1, i)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip_and_validation() {
        let d = SatakeDiagram::from_json(r#"{"type":"A5","n":5,"black":[0,2,4],"arrows":[]}"#)
            .unwrap();
        assert_eq!(d.white_nodes(), vec![1, 3]);
        assert!(SatakeDiagram::from_json(r#"{"type":"A2","n":2,"black":[0],"arrows":[[0,1]]}"#)
            .is_err()); // arrow touching a black node
        assert!(SatakeDiagram::from_json(r#"{"type":"A2","n":2,"black":[5]}"#).is_err());
    }
}
