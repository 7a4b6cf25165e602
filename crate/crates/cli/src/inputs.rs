//! Input parsing: polynomials with inferred variables, ring and valuation
//! selectors, presentation and chain-data files, graph files, and fixture
//! files.

use std::sync::Arc;

use num_bigint::BigInt;
use serde::Deserialize;
use tropos_core::abelian::FGAbelianGroup;
use tropos_core::alexander::{BnsFixture, ChainData};
use tropos_core::catalog::WeightedGraph;
use tropos_core::geometry::{ArcPiece, CircleSet, Dir};
use tropos_core::laurent::{infer_variables, parse_polynomial, LaurentPoly};
use tropos_core::tropical::{SphericalSet, TropRing};
use tropos_core::valuation::{self, Valuation};
use tropos_core::{Error, Result};

/// Parse polynomials over the shared variable set inferred from all of them.
pub fn parse_polys(texts: &[String]) -> Result<Vec<LaurentPoly>> {
    let refs: Vec<&str> = texts.iter().map(String::as_str).collect();
    let vars = infer_variables(&refs);
    if vars.is_empty() {
        return Err(Error::Parse { pos: 0, msg: "no variables found".into() });
    }
    let group = FGAbelianGroup::free_named(vars);
    texts.iter().map(|t| parse_polynomial(t, &group)).collect()
}

pub fn parse_poly(text: &str) -> Result<LaurentPoly> {
    Ok(parse_polys(&[text.to_string()])?.pop().unwrap())
}

pub fn valuation_from_selector(sel: &str) -> Result<Arc<dyn Valuation>> {
    valuation::from_name(sel)
}

pub fn ring_from_selector(sel: &str) -> Result<TropRing> {
    match sel {
        "z" => Ok(TropRing::Z),
        "q" => Ok(TropRing::Field(valuation::trivial())),
        _ => {
            if let Some(p) = sel.strip_prefix("fp:") {
                let p: u64 = p
                    .parse()
                    .map_err(|_| Error::UnknownValuation(sel.to_string()))?;
                Ok(TropRing::Field(valuation::modp(p)?))
            } else {
                Err(Error::UnknownValuation(sel.to_string()))
            }
        }
    }
}

/// Chain-data text format: a `vars:` line, a `ranks:` line, then one
/// `boundary i:` block per adjacent rank pair with `|`-separated polynomial
/// entries, one row per line.
pub fn parse_chain_file(text: &str) -> Result<ChainData> {
    let mut vars: Option<Vec<String>> = None;
    let mut ranks: Option<Vec<usize>> = None;
    let mut boundaries: Vec<Vec<Vec<LaurentPoly>>> = vec![];
    let mut current: Option<Vec<Vec<LaurentPoly>>> = None;
    let mut group: Option<FGAbelianGroup> = None;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("vars:") {
            let names: Vec<String> = rest.split_whitespace().map(String::from).collect();
            group = Some(FGAbelianGroup::free_named(names.clone()));
            vars = Some(names);
        } else if let Some(rest) = line.strip_prefix("ranks:") {
            ranks = Some(
                rest.split_whitespace()
                    .map(|t| {
                        t.parse().map_err(|_| Error::Parse {
                            pos: lineno,
                            msg: format!("bad rank `{t}`"),
                        })
                    })
                    .collect::<Result<_>>()?,
            );
        } else if line.starts_with("boundary") {
            if let Some(rows) = current.take() {
                boundaries.push(rows);
            }
            current = Some(vec![]);
        } else {
            let rows = current.as_mut().ok_or_else(|| Error::Parse {
                pos: lineno,
                msg: "matrix row before any boundary header".into(),
            })?;
            let g = group.as_ref().ok_or_else(|| Error::Parse {
                pos: lineno,
                msg: "matrix row before vars:".into(),
            })?;
            let row: Vec<LaurentPoly> = line
                .split('|')
                .map(|e| parse_polynomial(e.trim(), g))
                .collect::<Result<_>>()?;
            rows.push(row);
        }
    }
    if let Some(rows) = current.take() {
        boundaries.push(rows);
    }
    let _ = vars;
    let group = group.ok_or_else(|| Error::Parse { pos: 0, msg: "missing vars: line".into() })?;
    let ranks = ranks.ok_or_else(|| Error::Parse { pos: 0, msg: "missing ranks: line".into() })?;
    ChainData::new(group, ranks, boundaries)
}

#[derive(Deserialize)]
struct GraphFile {
    vertices: Vec<String>,
    edges: Vec<GraphEdge>,
}

#[derive(Deserialize)]
struct GraphEdge {
    u: String,
    v: String,
    #[serde(default = "one")]
    weight: u64,
}

fn one() -> u64 {
    1
}

pub fn parse_graph_file(text: &str) -> Result<WeightedGraph> {
    let file: GraphFile = serde_json::from_str(text)
        .map_err(|e| Error::Parse { pos: 0, msg: format!("graph file: {e}") })?;
    let index = |name: &str| -> Result<usize> {
        file.vertices
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::Parse { pos: 0, msg: format!("unknown vertex `{name}`") })
    };
    let edges = file
        .edges
        .iter()
        .map(|e| Ok((index(&e.u)?, index(&e.v)?, e.weight)))
        .collect::<Result<Vec<_>>>()?;
    WeightedGraph::new(file.vertices, edges)
}

#[derive(Deserialize)]
struct FixtureFile {
    id: String,
    citation: String,
    dim: usize,
    sigma1: FixtureSet,
}

#[derive(Deserialize)]
struct FixtureSet {
    #[serde(default)]
    neg: bool,
    #[serde(default)]
    pos: bool,
    #[serde(default)]
    points: Vec<[String; 2]>,
    #[serde(default)]
    arcs: Vec<FixtureArc>,
}

#[derive(Deserialize)]
struct FixtureArc {
    start: [String; 2],
    end: [String; 2],
    #[serde(default)]
    start_closed: bool,
    #[serde(default)]
    end_closed: bool,
}

fn parse_dir(d: &[String; 2]) -> Result<Dir> {
    let parse = |s: &String| -> Result<BigInt> {
        s.parse().map_err(|_| Error::Parse { pos: 0, msg: format!("bad integer `{s}`") })
    };
    Dir::new(parse(&d[0])?, parse(&d[1])?)
}

pub fn parse_fixture_file(text: &str) -> Result<BnsFixture> {
    let file: FixtureFile = serde_json::from_str(text)
        .map_err(|e| Error::Parse { pos: 0, msg: format!("fixture file: {e}") })?;
    let sigma1 = match file.dim {
        1 => SphericalSet::Dim1 { neg: file.sigma1.neg, pos: file.sigma1.pos },
        2 => {
            let points = file
                .sigma1
                .points
                .iter()
                .map(parse_dir)
                .collect::<Result<Vec<_>>>()?;
            let arcs = file
                .sigma1
                .arcs
                .iter()
                .map(|a| {
                    Ok(ArcPiece::new(
                        parse_dir(&a.start)?,
                        parse_dir(&a.end)?,
                        a.start_closed,
                        a.end_closed,
                    ))
                })
                .collect::<Result<Vec<_>>>()?;
            SphericalSet::Dim2(CircleSet::from_pieces(points, arcs))
        }
        n => {
            return Err(Error::Unsupported(format!(
                "fixture files support dimension 1 or 2, got {n}"
            )))
        }
    };
    Ok(BnsFixture { id: file.id, sigma1, citation: file.citation })
}
