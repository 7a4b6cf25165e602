//! Closed forms for two group families: weighted right-angled Artin groups
//! (presentations, degree-one jump loci from graph combinatorics, the Kähler
//! classification) and orbifold surface groups (Euler characteristic, θ,
//! jump loci, tropicalizations, Σ¹).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use crate::abelian::{Presentation, Word};
use crate::error::{Error, Result};

pub const DEFAULT_VERTEX_CAP: usize = 16;

/// A finite simple graph with positive integer edge weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedGraph {
    pub vertices: Vec<String>,
    /// `(u, v, weight)` with `u < v`.
    pub edges: Vec<(usize, usize, u64)>,
}

impl WeightedGraph {
    pub fn new(vertices: Vec<String>, edges: Vec<(usize, usize, u64)>) -> Result<Self> {
        let n = vertices.len();
        let mut normalized = vec![];
        for (u, v, w) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidPresentation(format!(
                    "edge endpoint out of range: ({u}, {v})"
                )));
            }
            if u == v {
                return Err(Error::InvalidPresentation(format!("loop at vertex {u}")));
            }
            if w == 0 {
                return Err(Error::InvalidPresentation("edge weight must be positive".into()));
            }
            let e = (u.min(v), u.max(v), w);
            if normalized.iter().any(|&(a, b, _)| (a, b) == (e.0, e.1)) {
                return Err(Error::InvalidPresentation(format!(
                    "duplicate edge ({}, {})",
                    e.0, e.1
                )));
            }
            normalized.push(e);
        }
        normalized.sort_unstable();
        Ok(WeightedGraph { vertices, edges: normalized })
    }

    pub fn unweighted(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        Self::new(
            (1..=n).map(|i| format!("a{i}")).collect(),
            edges.iter().map(|&(u, v)| (u, v, 1)).collect(),
        )
    }

    pub fn complete(n: usize, weight: u64) -> Self {
        let mut edges = vec![];
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v, weight));
            }
        }
        Self::new((1..=n).map(|i| format!("a{i}")).collect(), edges).unwrap()
    }

    pub fn is_complete(&self) -> bool {
        let n = self.vertices.len();
        self.edges.len() == n * (n - 1) / 2
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        let (a, b) = (u.min(v), u.max(v));
        self.edges.iter().any(|&(x, y, _)| (x, y) == (a, b))
    }

    /// Drop every edge whose weight the prime divides (no-op for `p = 0`).
    pub fn delete_divisible_edges(&self, p: u64) -> WeightedGraph {
        if p == 0 {
            return self.clone();
        }
        WeightedGraph {
            vertices: self.vertices.clone(),
            edges: self.edges.iter().copied().filter(|&(_, _, w)| w % p != 0).collect(),
        }
    }

    /// Connectivity of the induced subgraph on the bitset `mask`.
    fn induced_connected(&self, mask: u32) -> bool {
        let count = mask.count_ones();
        if count <= 1 {
            return true;
        }
        let start = mask.trailing_zeros() as usize;
        let mut seen: u32 = 1 << start;
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for &(a, b, _) in &self.edges {
                let (x, y) = (a, b);
                for (p, q) in [(x, y), (y, x)] {
                    if p == u && mask & (1 << q) != 0 && seen & (1 << q) == 0 {
                        seen |= 1 << q;
                        stack.push(q);
                    }
                }
            }
        }
        seen == mask
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertices.len();
        if n == 0 {
            return true;
        }
        self.induced_connected((1u32 << n) - 1)
    }
}

/// `⟨a_v | ([a_u, a_v])^{ℓ(e)}⟩`: one generator per vertex, one powered
/// commutator per edge.
pub fn wraag_presentation(graph: &WeightedGraph) -> Presentation {
    let relators: Vec<Word> = graph
        .edges
        .iter()
        .map(|&(u, v, w)| {
            let mut word: Word = vec![];
            for _ in 0..w {
                word.extend_from_slice(&[(u, 1), (v, 1), (u, -1), (v, -1)]);
            }
            word
        })
        .collect();
    Presentation::new(graph.vertices.clone(), relators).unwrap()
}

/// All vertex subsets whose induced subgraph is disconnected and which are
/// maximal with that property; empty iff the graph is complete.
pub fn maximally_disconnected_subsets(graph: &WeightedGraph) -> Result<Vec<Vec<usize>>> {
    let n = graph.vertices.len();
    if n > DEFAULT_VERTEX_CAP {
        return Err(Error::VertexCapExceeded { count: n, cap: DEFAULT_VERTEX_CAP });
    }
    let masks: Vec<u32> =
        (0u32..1 << n).filter(|&m| !graph.induced_connected(m)).collect();
    let maximal: Vec<u32> = masks
        .iter()
        .copied()
        .filter(|&m| !masks.iter().any(|&other| other != m && other & m == m))
        .collect();
    let mut out: Vec<Vec<usize>> = maximal
        .into_iter()
        .map(|m| (0..n).filter(|&i| m & (1 << i) != 0).collect())
        .collect();
    out.sort();
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WraagJumpLoci {
    /// Vertex subsets `W`; each contributes the subtorus `{ρ : ρ_v = 1, v ∉ W}`.
    pub components: Vec<Vec<usize>>,
    /// The whole torus is a jump locus iff the (modified) graph is disconnected.
    pub full_torus: bool,
}

/// Degree-one jump loci of a weighted RAAG over an algebraically closed
/// field of characteristic `p`: in positive characteristic every edge whose
/// weight is divisible by `p` behaves as deleted, then the unweighted
/// combinatorics applies.
pub fn jump_loci_wraag(graph: &WeightedGraph, p: u64) -> Result<WraagJumpLoci> {
    if p != 0 && !crate::valuation::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let g = graph.delete_divisible_edges(p);
    Ok(WraagJumpLoci {
        components: maximally_disconnected_subsets(&g)?,
        full_torus: !g.is_connected(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KahlerVerdict {
    pub kahler: bool,
    pub reason: String,
}

/// A weighted RAAG is a Kähler group iff the graph is complete on an even
/// number of vertices and the edges of weight at least two form a matching.
pub fn kahler_classify(graph: &WeightedGraph) -> KahlerVerdict {
    if !graph.is_complete() {
        return KahlerVerdict { kahler: false, reason: "graph is not complete".into() };
    }
    if graph.vertices.len() % 2 != 0 {
        return KahlerVerdict { kahler: false, reason: "odd number of vertices".into() };
    }
    let heavy: Vec<(usize, usize)> = graph
        .edges
        .iter()
        .filter(|&&(_, _, w)| w >= 2)
        .map(|&(u, v, _)| (u, v))
        .collect();
    for (i, &(a, b)) in heavy.iter().enumerate() {
        for &(c, d) in &heavy[i + 1..] {
            if a == c || a == d || b == c || b == d {
                return KahlerVerdict {
                    kahler: false,
                    reason: format!(
                        "heavy edges ({a}, {b}) and ({c}, {d}) share a vertex"
                    ),
                };
            }
        }
    }
    KahlerVerdict { kahler: true, reason: "complete, even, heavy edges form a matching".into() }
}

/// A closed orientable surface of genus `g ≥ 1` with `s ≥ 0` marked points
/// of multiplicities `μ_j ≥ 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbifoldData {
    pub genus: u64,
    pub mu: Vec<u64>,
}

impl OrbifoldData {
    pub fn new(genus: u64, mu: Vec<u64>) -> Result<Self> {
        if genus < 1 {
            return Err(Error::InvalidPresentation("genus must be at least 1".into()));
        }
        if mu.iter().any(|&m| m < 2) {
            return Err(Error::InvalidPresentation(
                "multiplicities must be at least 2".into(),
            ));
        }
        Ok(OrbifoldData { genus, mu })
    }
}

/// `χ^orb = 2 − 2g − Σ (1 − 1/μ_j)`.
pub fn orbifold_euler(d: &OrbifoldData) -> BigRational {
    let mut chi = BigRational::from_integer(BigInt::from(2i64 - 2 * d.genus as i64));
    for &m in &d.mu {
        chi -= BigRational::one()
            - BigRational::new(BigInt::one(), BigInt::from(m));
    }
    chi
}

/// `θ(μ) = ∏ μ_j / lcm(μ_j)`, with the empty product and lcm both 1.
pub fn theta(mu: &[u64]) -> BigInt {
    let prod = mu.iter().fold(BigInt::one(), |acc, &m| acc * BigInt::from(m));
    let lcm = mu.iter().fold(BigInt::one(), |acc, &m| acc.lcm(&BigInt::from(m)));
    prod / lcm
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum OrbifoldV1 {
    /// The whole character torus.
    FullTorus,
    /// Everything off the identity component, together with the identity.
    OffComponentsAndOne,
    /// Only the identity character.
    One,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbifoldReport {
    pub euler: BigRational,
    pub theta: BigInt,
    pub rank: u64,
    pub v1: OrbifoldV1,
    /// `true` → `Trop = R^{2g}`; `false` → `Trop = {0}`.
    pub trop_full: bool,
    /// `true` → `Σ¹ = S^{2g−1}` (the `g = 1, s = 0` torus case); otherwise `Σ¹ = ∅`.
    pub sigma1_full: bool,
}

/// The closed-form jump locus, tropicalization, and Σ¹ of an orbifold
/// surface group over an algebraically closed field of characteristic `p`.
pub fn orbifold_report(d: &OrbifoldData, p: u64) -> Result<OrbifoldReport> {
    if p != 0 && !crate::valuation::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let euler = orbifold_euler(d);
    let theta_val = theta(&d.mu);
    let rank = 2 * d.genus;
    // the convention: 0 divides no nonzero integer
    let p_divides = p != 0 && d.mu.iter().any(|&m| m % p == 0);
    if d.genus == 1 && d.mu.is_empty() {
        // χ^orb = 0: the group is Z², V¹ = {1}, Σ¹ is the whole circle
        return Ok(OrbifoldReport {
            euler,
            theta: theta_val,
            rank,
            v1: OrbifoldV1::One,
            trop_full: false,
            sigma1_full: true,
        });
    }
    let v1 = if d.genus > 1 || p_divides {
        OrbifoldV1::FullTorus
    } else if theta_val > BigInt::one() {
        OrbifoldV1::OffComponentsAndOne
    } else {
        OrbifoldV1::One
    };
    let trop_full = !(d.genus == 1 && theta_val.is_one() && !p_divides);
    Ok(OrbifoldReport {
        euler,
        theta: theta_val,
        rank,
        v1,
        trop_full,
        sigma1_full: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::abelianize;
    use crate::alexander::{jump_ideal, presentation_complex, rank_deficient_at, DEFAULT_MINOR_CAP};
    use num_traits::Zero;

    fn path3() -> WeightedGraph {
        WeightedGraph::unweighted(3, &[(0, 1), (1, 2)]).unwrap()
    }

    #[test]
    fn presentation_shapes() {
        let single = WeightedGraph::new(
            vec!["a1".into(), "a2".into()],
            vec![(0, 1, 3)],
        )
        .unwrap();
        let p = wraag_presentation(&single);
        assert_eq!(p.generators.len(), 2);
        assert_eq!(p.relators.len(), 1);
        assert_eq!(p.relators[0].len(), 12);

        let free = WeightedGraph::unweighted(2, &[]).unwrap();
        assert!(wraag_presentation(&free).relators.is_empty());

        let triangle = WeightedGraph::complete(3, 1);
        let p3 = wraag_presentation(&triangle);
        assert_eq!(p3.relators.len(), 3);
        let ab = abelianize(&p3);
        assert_eq!(ab.group.rank, 3);
        assert!(ab.group.is_torsion_free());
    }

    #[test]
    fn disjoint_union_and_join_laws() {
        let union_graph = WeightedGraph::unweighted(4, &[(0, 1), (2, 3)]).unwrap();
        let pu = wraag_presentation(&union_graph);
        // free-product block structure: every relator touches generators on
        // one side only
        for r in &pu.relators {
            let left = r.iter().all(|&(i, _)| i < 2);
            let right = r.iter().all(|&(i, _)| i >= 2);
            assert!(left || right);
        }
        // join with weight-1 edges: the direct-product relator set appears
        let join_graph =
            WeightedGraph::unweighted(4, &[(0, 1), (2, 3), (0, 2), (0, 3), (1, 2), (1, 3)])
                .unwrap();
        let pj = wraag_presentation(&join_graph);
        assert_eq!(pj.relators.len(), 6);
        for (u, v) in [(0, 2), (0, 3), (1, 2), (1, 3)] {
            let commutator: Word = vec![(u, 1), (v, 1), (u, -1), (v, -1)];
            assert!(pj.relators.contains(&commutator));
        }
    }

    #[test]
    fn maximally_disconnected_examples() {
        assert_eq!(maximally_disconnected_subsets(&path3()).unwrap(), vec![vec![0, 2]]);
        assert!(maximally_disconnected_subsets(&WeightedGraph::complete(3, 1))
            .unwrap()
            .is_empty());
        let two_edges = WeightedGraph::unweighted(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(
            maximally_disconnected_subsets(&two_edges).unwrap(),
            vec![vec![0, 1, 2, 3]]
        );
    }

    #[test]
    fn maximally_disconnected_properties() {
        for edges in [
            vec![],
            vec![(0, 1)],
            vec![(0, 1), (1, 2)],
            vec![(0, 1), (1, 2), (2, 3)],
            vec![(0, 1), (2, 3)],
            vec![(0, 1), (1, 2), (0, 2), (2, 3)],
        ] {
            let g = WeightedGraph::unweighted(4, &edges).unwrap();
            let subsets = maximally_disconnected_subsets(&g).unwrap();
            for w in &subsets {
                let mask = w.iter().fold(0u32, |m, &i| m | 1 << i);
                assert!(!g.induced_connected(mask));
            }
            for (i, a) in subsets.iter().enumerate() {
                for b in &subsets[i + 1..] {
                    assert!(!a.iter().all(|x| b.contains(x)));
                    assert!(!b.iter().all(|x| a.contains(x)));
                }
            }
        }
    }

    #[test]
    fn jump_loci_examples() {
        let k2 = WeightedGraph::new(vec!["a".into(), "b".into()], vec![(0, 1, 6)]).unwrap();
        let char0 = jump_loci_wraag(&k2, 0).unwrap();
        assert!(char0.components.is_empty());
        assert!(!char0.full_torus);
        let char2 = jump_loci_wraag(&k2, 2).unwrap();
        assert!(char2.full_torus);
        let char5 = jump_loci_wraag(&k2, 5).unwrap();
        assert!(!char5.full_torus);
        assert!(char5.components.is_empty());

        let p3 = jump_loci_wraag(&path3(), 0).unwrap();
        assert_eq!(p3.components, vec![vec![0, 2]]);
        assert!(!p3.full_torus);
    }

    #[test]
    fn kahler_examples() {
        let mut k4_matching = WeightedGraph::complete(4, 1);
        k4_matching.edges = vec![(0, 1, 2), (0, 2, 1), (0, 3, 1), (1, 2, 1), (1, 3, 1), (2, 3, 3)];
        let v = kahler_classify(&k4_matching);
        assert!(v.kahler, "{}", v.reason);

        let mut k4_adjacent = WeightedGraph::complete(4, 1);
        k4_adjacent.edges = vec![(0, 1, 2), (0, 2, 1), (0, 3, 1), (1, 2, 2), (1, 3, 1), (2, 3, 1)];
        assert!(!kahler_classify(&k4_adjacent).kahler);

        assert!(!kahler_classify(&path3()).kahler);
        assert!(!kahler_classify(&WeightedGraph::complete(3, 1)).kahler);
        assert!(kahler_classify(&WeightedGraph::complete(2, 1)).kahler);
    }

    #[test]
    fn kahler_matches_unweighted_law() {
        // weight-1 graphs: Kähler iff complete with an even vertex count
        for n in 1..=6usize {
            let pairs: Vec<(usize, usize)> =
                (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
            let m = pairs.len();
            // all graphs for n <= 4; for larger n, complete and a few others
            let masks: Vec<u64> = if n <= 4 {
                (0..1u64 << m).collect()
            } else {
                let mut v = vec![0, (1 << m) - 1];
                v.extend((0..m as u64).map(|i| ((1u64 << m) - 1) ^ (1 << i)));
                v
            };
            for mask in masks {
                let edges: Vec<(usize, usize)> = pairs
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask & (1 << i) != 0)
                    .map(|(_, &e)| e)
                    .collect();
                let g = WeightedGraph::unweighted(n, &edges).unwrap();
                let expect = g.is_complete() && n % 2 == 0;
                assert_eq!(kahler_classify(&g).kahler, expect, "n={n} mask={mask}");
            }
        }
    }

    #[test]
    fn euler_and_theta() {
        let flat = OrbifoldData::new(1, vec![]).unwrap();
        assert!(orbifold_euler(&flat).is_zero());
        let one_point = OrbifoldData::new(1, vec![2]).unwrap();
        assert_eq!(
            orbifold_euler(&one_point),
            BigRational::new(BigInt::from(-1), BigInt::from(2))
        );
        let genus2 = OrbifoldData::new(2, vec![]).unwrap();
        assert_eq!(orbifold_euler(&genus2), BigRational::from_integer(BigInt::from(-2)));

        assert_eq!(theta(&[2, 3]), BigInt::one());
        assert_eq!(theta(&[2, 2]), BigInt::from(2));
        assert_eq!(theta(&[]), BigInt::one());
    }

    #[test]
    fn orbifold_cases() {
        let r = orbifold_report(&OrbifoldData::new(2, vec![]).unwrap(), 0).unwrap();
        assert_eq!(r.v1, OrbifoldV1::FullTorus);
        assert!(r.trop_full);
        assert!(!r.sigma1_full);

        let r = orbifold_report(&OrbifoldData::new(1, vec![2, 2]).unwrap(), 3).unwrap();
        assert_eq!(r.v1, OrbifoldV1::OffComponentsAndOne);
        assert!(r.trop_full);
        assert!(!r.sigma1_full);

        let r = orbifold_report(&OrbifoldData::new(1, vec![2, 3]).unwrap(), 0).unwrap();
        assert_eq!(r.v1, OrbifoldV1::One);
        assert!(!r.trop_full);
        assert!(!r.sigma1_full);

        let r = orbifold_report(&OrbifoldData::new(1, vec![]).unwrap(), 0).unwrap();
        assert_eq!(r.v1, OrbifoldV1::One);
        assert!(!r.trop_full);
        assert!(r.sigma1_full);
    }

    #[test]
    fn orbifold_exhaustive_table() {
        for g in 1..=3u64 {
            for mu in all_mu_vectors(3, 6) {
                let d = OrbifoldData::new(g, mu.clone()).unwrap();
                let chi = orbifold_euler(&d);
                for p in [0u64, 2, 3, 5] {
                    let r = orbifold_report(&d, p).unwrap();
                    if g == 1 && mu.is_empty() {
                        assert!(chi.is_zero());
                        assert!(r.sigma1_full);
                        continue;
                    }
                    assert!(chi < BigRational::zero());
                    assert!(!r.sigma1_full);
                    let p_divides = p != 0 && mu.iter().any(|&m| m % p == 0);
                    let expect_v1 = if g > 1 || p_divides {
                        OrbifoldV1::FullTorus
                    } else if theta(&mu) > BigInt::one() {
                        OrbifoldV1::OffComponentsAndOne
                    } else {
                        OrbifoldV1::One
                    };
                    assert_eq!(r.v1, expect_v1, "g={g} mu={mu:?} p={p}");
                    assert_eq!(
                        r.trop_full,
                        !(g == 1 && theta(&mu).is_one() && !p_divides)
                    );
                }
            }
        }
    }

    fn all_mu_vectors(max_s: usize, max_mu: u64) -> Vec<Vec<u64>> {
        let mut out = vec![vec![]];
        for _ in 0..max_s {
            let extended: Vec<Vec<u64>> = out
                .iter()
                .flat_map(|v: &Vec<u64>| {
                    (2..=max_mu).map(move |m| {
                        let mut w = v.clone();
                        w.push(m);
                        w
                    })
                })
                .collect();
            out.extend(extended.into_iter().filter(|v| v.len() <= max_s));
        }
        out.sort();
        out.dedup();
        out
    }

    /// The p = 0 jump-locus combinatorics must agree with the minor-rank
    /// oracle on the Fox complex of the presentation, at sampled torus
    /// points on and off each candidate component.
    #[test]
    fn jump_loci_match_minor_oracle() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(59);
        let mut graphs: Vec<WeightedGraph> = vec![];
        for n in 1..=4usize {
            let pairs: Vec<(usize, usize)> =
                (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
            let m = pairs.len();
            for mask in 0..1u64 << m {
                let edges: Vec<(usize, usize, u64)> = pairs
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask & (1 << i) != 0)
                    .map(|(i, &(u, v))| (u, v, 1 + (i as u64 % 2)))
                    .collect();
                graphs.push(WeightedGraph::new(
                    (1..=n).map(|i| format!("a{i}")).collect(),
                    edges,
                )
                .unwrap());
            }
        }
        for g in &graphs {
            let n = g.vertices.len();
            let loci = jump_loci_wraag(g, 0).unwrap();
            let p = wraag_presentation(g);
            let (chain, ab) = presentation_complex(&p).unwrap();
            assert_eq!(ab.group.rank, n);
            let _ = jump_ideal(&chain, 1, DEFAULT_MINOR_CAP).unwrap();
            // sample: per candidate subset, a point on it; plus random points
            let mut points: Vec<Vec<BigRational>> = vec![];
            for mask in 0..1u32 << n {
                let pt: Vec<BigRational> = (0..n)
                    .map(|i| {
                        if mask & (1 << i) != 0 {
                            BigRational::from_integer(BigInt::from(rng.gen_range(2i64..=5)))
                        } else {
                            BigRational::one()
                        }
                    })
                    .collect();
                points.push(pt);
            }
            for pt in &points {
                let in_locus = rank_deficient_at(&chain, 1, pt);
                let is_one = pt.iter().all(|x| x.is_one());
                let on_component = loci.components.iter().any(|w| {
                    (0..n).all(|i| w.contains(&i) || pt[i].is_one())
                });
                let expect = loci.full_torus || is_one || on_component;
                assert_eq!(in_locus, expect, "graph {:?} at {pt:?}", g.edges);
            }
        }
    }
}
