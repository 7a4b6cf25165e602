//! Fox calculus over the abelianization, jump ideals from Fitting minors of
//! the chain complex, the tropical upper bound for the first BNSR invariant,
//! inclusion audits against known fixtures, and the finite-generation test
//! for abelian covers.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::abelian::{abelianize, Abelianization, FGAbelianGroup, GroupElement, Presentation, Word};
use crate::error::{Error, Result};
use crate::laurent::{gcd_many, CoeffDomain, LaurentPoly};
use crate::matrix::RatMatrix;
use crate::tropical::{
    prevariety, sphere_project, trop_hypersurface_z, Provenance, SphericalSet, TropRing, Verdict,
};

pub const DEFAULT_MINOR_CAP: u128 = 100_000;

fn monomial(group: &FGAbelianGroup, g: GroupElement, c: i64) -> LaurentPoly {
    LaurentPoly::from_terms(group.clone(), CoeffDomain::Int, [(g, BigInt::from(c))])
}

/// `x^g - 1` in `ZH`.
fn aug(group: &FGAbelianGroup, g: &GroupElement) -> LaurentPoly {
    LaurentPoly::from_terms(
        group.clone(),
        CoeffDomain::Int,
        [(g.clone(), BigInt::one()), (group.identity(), BigInt::from(-1))],
    )
}

/// Abelianized Fox derivative of a word with respect to one generator:
/// the free-derivative rules followed by the quotient to `H`.
pub fn fox_derivative(word: &Word, gen: usize, ab: &Abelianization) -> LaurentPoly {
    let group = &ab.group;
    let mut out = LaurentPoly::zero(group.clone(), CoeffDomain::Int);
    let mut prefix = group.identity();
    for &(i, e) in word {
        if e == 1 {
            if i == gen {
                out = out.add(&monomial(group, prefix.clone(), 1)).unwrap();
            }
            prefix = group.add(&prefix, &ab.generator_images[i]);
        } else {
            prefix = group.add(&prefix, &group.neg(&ab.generator_images[i]));
            if i == gen {
                out = out.sub(&monomial(group, prefix.clone(), 1)).unwrap();
            }
        }
    }
    out
}

/// The abelianized Fox matrix: rows indexed by generators, columns by
/// relators.
#[derive(Debug, Clone)]
pub struct FoxMatrix {
    pub group: FGAbelianGroup,
    pub entries: Vec<Vec<LaurentPoly>>,
}

/// Build the Fox matrix and verify the column identity
/// `Σ_i ∂ρ/∂a_i · (ā_i − 1) = 0` for every relator.
pub fn fox_matrix(p: &Presentation, ab: &Abelianization) -> Result<FoxMatrix> {
    let g = p.generators.len();
    let group = ab.group.clone();
    let mut entries = vec![vec![]; g];
    for (i, row) in entries.iter_mut().enumerate() {
        for rel in &p.relators {
            row.push(fox_derivative(rel, i, ab));
        }
    }
    for (j, _) in p.relators.iter().enumerate() {
        let mut acc = LaurentPoly::zero(group.clone(), CoeffDomain::Int);
        for i in 0..g {
            let factor = aug(&group, &ab.generator_images[i]);
            acc = acc.add(&entries[i][j].mul(&factor)?)?;
        }
        if !acc.is_zero() {
            return Err(Error::InvalidPresentation(format!(
                "Fox column identity fails for relator {j}"
            )));
        }
    }
    Ok(FoxMatrix { group, entries })
}

/// Chain data of a finite complex: ranks `c_0, c_1, ...` and boundary
/// matrices over `ZH`, where `boundaries[i]` is `∂_i : C_{i+1} → C_i` with
/// shape `c_i × c_{i+1}`.
#[derive(Debug, Clone)]
pub struct ChainData {
    pub group: FGAbelianGroup,
    pub ranks: Vec<usize>,
    pub boundaries: Vec<Vec<Vec<LaurentPoly>>>,
}

impl ChainData {
    pub fn new(
        group: FGAbelianGroup,
        ranks: Vec<usize>,
        boundaries: Vec<Vec<Vec<LaurentPoly>>>,
    ) -> Result<Self> {
        if boundaries.len() + 1 != ranks.len() {
            return Err(Error::InvalidPresentation(
                "chain data needs one boundary matrix per adjacent rank pair".into(),
            ));
        }
        for (i, m) in boundaries.iter().enumerate() {
            if m.len() != ranks[i] || m.iter().any(|row| row.len() != ranks[i + 1]) {
                return Err(Error::InvalidPresentation(format!(
                    "boundary {i} has the wrong shape"
                )));
            }
        }
        Ok(ChainData { group, ranks, boundaries })
    }

    /// `∂_i` as a matrix of shape `c_i × c_{i+1}`, zero-width outside range.
    fn boundary(&self, i: isize) -> Vec<Vec<LaurentPoly>> {
        if i < 0 {
            return vec![];
        }
        let i = i as usize;
        if i < self.boundaries.len() {
            return self.boundaries[i].clone();
        }
        // past the top of the complex: c_i rows, zero columns
        let rows = if i < self.ranks.len() { self.ranks[i] } else { 0 };
        vec![vec![]; rows]
    }

    pub fn rank(&self, i: isize) -> usize {
        if i < 0 || i as usize >= self.ranks.len() {
            0
        } else {
            self.ranks[i as usize]
        }
    }
}

/// The chain complex of the presentation 2-complex: `C_2 = ZH^r` →(Fox)
/// `C_1 = ZH^g` →(augmentation) `C_0 = ZH`.
pub fn presentation_complex(p: &Presentation) -> Result<(ChainData, Abelianization)> {
    let ab = abelianize(p);
    let fox = fox_matrix(p, &ab)?;
    let g = p.generators.len();
    let r = p.relators.len();
    let d0: Vec<Vec<LaurentPoly>> =
        vec![(0..g).map(|i| aug(&ab.group, &ab.generator_images[i])).collect()];
    let chain = ChainData::new(ab.group.clone(), vec![1, g, r], vec![d0, fox.entries.clone()])?;
    Ok((chain, ab))
}

#[derive(Debug, Clone)]
pub struct JumpIdeal {
    pub degree: usize,
    pub generators: Vec<LaurentPoly>,
    /// gcd of the generators (torsion-free groups only).
    pub principal_part: Option<LaurentPoly>,
    /// generators divided by the principal part.
    pub residual: Vec<LaurentPoly>,
}

fn det(m: &[Vec<&LaurentPoly>], group: &FGAbelianGroup) -> LaurentPoly {
    let n = m.len();
    if n == 0 {
        return LaurentPoly::constant(group.clone(), 1);
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = LaurentPoly::zero(group.clone(), CoeffDomain::Int);
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<&LaurentPoly>> = m[1..]
            .iter()
            .map(|row| {
                row.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, e)| *e).collect()
            })
            .collect();
        let cof = m[0][j].mul(&det(&minor, group)).unwrap();
        acc = if j % 2 == 0 { acc.add(&cof).unwrap() } else { acc.sub(&cof).unwrap() };
    }
    acc
}

fn binom(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![];
    let mut cur = vec![];
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// The degree-`i` jump ideal: all `c_i`-minors of the block-diagonal matrix
/// `diag(∂_i, ∂_{i−1})`, normalized and deduplicated.
pub fn jump_ideal(c: &ChainData, i: usize, cap: u128) -> Result<JumpIdeal> {
    let ii = i as isize;
    let k = c.rank(ii);
    let di = c.boundary(ii);
    let dprev = c.boundary(ii - 1);
    let top_cols = c.rank(ii + 1);
    let bot_cols = k;
    let rows = k + c.rank(ii - 1);
    let cols = top_cols + bot_cols;
    let zero = LaurentPoly::zero(c.group.clone(), CoeffDomain::Int);
    // block = diag(∂_i, ∂_{i−1})
    let mut block = vec![vec![zero.clone(); cols]; rows];
    for (r, row) in di.iter().enumerate() {
        for (cc, e) in row.iter().enumerate() {
            block[r][cc] = e.clone();
        }
    }
    for (r, row) in dprev.iter().enumerate() {
        for (cc, e) in row.iter().enumerate() {
            block[k + r][top_cols + cc] = e.clone();
        }
    }
    let count = binom(rows, k).saturating_mul(binom(cols, k));
    if count > cap {
        return Err(Error::MinorCapExceeded { count, cap });
    }
    let mut generators: Vec<LaurentPoly> = vec![];
    if k <= rows && k <= cols {
        for rset in subsets(rows, k) {
            for cset in subsets(cols, k) {
                let sub: Vec<Vec<&LaurentPoly>> = rset
                    .iter()
                    .map(|&r| cset.iter().map(|&cc| &block[r][cc]).collect())
                    .collect();
                let d = det(&sub, &c.group);
                if d.is_zero() {
                    continue;
                }
                let d = d.normalize_unit();
                if !generators.contains(&d) {
                    generators.push(d);
                }
            }
        }
    }
    generators.sort_by_key(|p| p.to_string());
    let (principal_part, residual) = if generators.is_empty() || !c.group.is_torsion_free() {
        (None, generators.clone())
    } else {
        let g = gcd_many(&generators)?;
        let residual = generators
            .iter()
            .map(|f| f.exact_div(&g).expect("gcd divides every generator").normalize_unit())
            .collect();
        (Some(g), residual)
    };
    Ok(JumpIdeal { degree: i, generators, principal_part, residual })
}

/// Is `f` (up to unit normalization) of the augmentation form `x_i − 1`?
fn augmentation_form(f: &LaurentPoly) -> bool {
    let f = f.normalize_unit();
    if f.num_terms() != 2 {
        return false;
    }
    let terms: Vec<_> = f.terms().collect();
    let (g0, c0) = &terms[0];
    let (g1, c1) = &terms[1];
    g0.is_identity()
        && **c0 == BigInt::from(-1)
        && (*c1).is_one()
        && g1.torsion.iter().all(Zero::is_zero)
        && g1.free.iter().filter(|e| !e.is_zero()).count() == 1
        && g1.free.iter().all(|e| e.is_zero() || e.is_one())
}

#[derive(Debug, Clone)]
pub struct BnsrBound {
    pub rank: usize,
    /// `S(Trop_Z(J^{≤1}))` or an upper bound for it.
    pub sphere: SphericalSet,
    /// Complement within the sphere when decidable (rank ≤ 2).
    pub complement: Option<SphericalSet>,
    pub provenance: Provenance,
    pub jump: JumpIdeal,
}

/// The tropical upper bound for the first BNSR invariant: `Σ¹(X;Z)` is
/// contained in the complement of the returned sphere. The degree-0 jump
/// ideal is the augmentation ideal and contributes nothing on the sphere;
/// the degree-1 ideal is split into its principal part (exact) and the
/// residual prevariety.
pub fn bnsr_upper_bound(p: &Presentation, cap: u128) -> Result<BnsrBound> {
    let (chain, ab) = presentation_complex(p)?;
    let n = ab.group.rank;
    if n == 0 {
        return Err(Error::RankZero);
    }
    let jump = jump_ideal(&chain, 1, cap)?;
    let (sphere, provenance) = if jump.generators.is_empty() {
        // zero ideal: the jump locus is the whole torus
        (SphericalSet::full(n), Provenance::Exact)
    } else {
        let principal = jump
            .principal_part
            .as_ref()
            .ok_or(Error::UndecidedTorsion)?;
        let principal_sphere = sphere_project(&trop_hypersurface_z(principal)?);
        let residual_units = jump.residual.iter().any(|f| {
            f.num_terms() == 1 && f.terms().next().map_or(false, |(_, c)| c.abs().is_one())
        });
        if residual_units {
            // the residual ideal contains a unit: it cuts out nothing
            (principal_sphere, Provenance::Exact)
        } else {
            let recognized = jump.residual.iter().all(augmentation_form);
            let region = prevariety(&jump.residual, &TropRing::Z)?;
            let residual_sphere = sphere_project(&region);
            let exact = recognized || residual_sphere.is_empty();
            (
                principal_sphere.union(&residual_sphere),
                if exact { Provenance::Exact } else { Provenance::UpperBound },
            )
        }
    };
    let complement = sphere.complement().ok();
    Ok(BnsrBound { rank: n, sphere, complement, provenance, jump })
}

/// A known BNSR invariant recorded from the literature, never computed.
#[derive(Debug, Clone)]
pub struct BnsFixture {
    pub id: String,
    pub sigma1: SphericalSet,
    pub citation: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AuditReport {
    pub included: Verdict,
    pub strict: Verdict,
}

/// Check the fixture against a computed bound complement: inclusion, and
/// strictness where equality is decidable.
pub fn audit_inclusion(fixture: &BnsFixture, bound_complement: &SphericalSet) -> AuditReport {
    let included = fixture.sigma1.is_subset(bound_complement);
    let strict = match (included, fixture.sigma1.eq_sets(bound_complement)) {
        (Verdict::True, Verdict::True) => Verdict::False,
        (Verdict::True, Verdict::False) => Verdict::True,
        _ => Verdict::Unknown,
    };
    AuditReport { included, strict }
}

/// Finite generation of the covering homology over `Z` (or over a field):
/// holds iff the tropical region of the annihilator sits inside the origin.
/// An upper-bound region inside the origin still answers yes; an
/// upper-bound region sticking out answers unknown.
pub fn dwyer_fried_test(ann_generators: &[LaurentPoly], ring: &TropRing) -> Result<Verdict> {
    let region = prevariety(ann_generators, ring)?;
    if region.is_within_origin() {
        return Ok(Verdict::True);
    }
    Ok(match region.provenance {
        Provenance::Exact => Verdict::False,
        Provenance::UpperBound => Verdict::Unknown,
    })
}

/// Evaluate a `ZH`-matrix at a rational torus point and return its rank.
fn rank_at(m: &[Vec<LaurentPoly>], point: &[BigRational]) -> usize {
    if m.is_empty() || m[0].is_empty() {
        return 0;
    }
    let rows: Vec<Vec<BigRational>> = m
        .iter()
        .map(|row| row.iter().map(|e| e.eval_rational(point)).collect())
        .collect();
    RatMatrix::from_rows(rows).rank()
}

/// Brute-force jump-locus membership at a point: `rank ∂_i + rank ∂_{i−1} < c_i`.
pub fn rank_deficient_at(c: &ChainData, i: usize, point: &[BigRational]) -> bool {
    let ii = i as isize;
    rank_at(&c.boundary(ii), point) + rank_at(&c.boundary(ii - 1), point) < c.rank(ii)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{ArcPiece, CircleSet, Dir};
    use crate::laurent::parse_polynomial;
    use crate::valuation;

    fn d(x: i64, y: i64) -> Dir {
        Dir::from_i64(x, y)
    }

    fn bs12() -> Presentation {
        Presentation::parse("gens: a b\nrel: a b a^-1 b^-2\n").unwrap()
    }

    fn brown_example() -> Presentation {
        Presentation::parse(
            "gens: a b\nrel: a^-1 b^-1 a b^2 a^-1 b^-1 a^2 b^-1 a^-1 b a^-1 b a b^-1\n",
        )
        .unwrap()
    }

    fn poly1(s: &str) -> LaurentPoly {
        parse_polynomial(s, &FGAbelianGroup::free(1)).unwrap()
    }

    fn poly2(s: &str) -> LaurentPoly {
        parse_polynomial(s, &FGAbelianGroup::free(2)).unwrap()
    }

    /// Synthetic rank-[1,2,1] chain data whose degree-1 jump ideal has
    /// principal part `f`.
    fn synthetic_chain(f: &LaurentPoly) -> ChainData {
        let g = FGAbelianGroup::free(2);
        let x1m1 = poly2("x1 - 1");
        let x2m1 = poly2("x2 - 1");
        let d0 = vec![vec![x1m1.clone(), x2m1.clone()]];
        let d1 = vec![
            vec![f.mul(&x2m1).unwrap()],
            vec![f.mul(&x1m1).unwrap().neg()],
        ];
        ChainData::new(g, vec![1, 2, 1], vec![d0, d1]).unwrap()
    }

    #[test]
    fn fox_derivative_bs12() {
        let p = bs12();
        let ab = abelianize(&p);
        let db = fox_derivative(&p.relators[0], 1, &ab);
        assert_eq!(db, poly1("x1 - 2"));
        let da = fox_derivative(&p.relators[0], 0, &ab);
        assert!(da.is_zero());
    }

    #[test]
    fn fox_matrix_brown() {
        let p = brown_example();
        let ab = abelianize(&p);
        assert_eq!(ab.group.rank, 2);
        let fm = fox_matrix(&p, &ab).unwrap();
        let expect_a = poly2("x1^-1*x2^-1 - x1^-1 - x2^-1 + 1");
        let expect_b = poly2("-x1*x2^-1 + 2*x2^-1 - x1^-1*x2^-1");
        assert_eq!(fm.entries[0][0], expect_a);
        assert_eq!(fm.entries[1][0], expect_b);
    }

    #[test]
    fn fox_identity_all_presentations() {
        for text in [
            "gens: a b\nrel: a b a^-1 b^-2\n",
            "gens: a b\nrel: [a,b]^3\n",
            "gens: a b c\nrel: [a,b]\nrel: [b,c]\n",
            "gens: a\nrel: a a a\n",
            "gens: a b\nrel: a^-1 b^-1 a b^2 a^-1 b^-1 a^2 b^-1 a^-1 b a^-1 b a b^-1\n",
        ] {
            let p = Presentation::parse(text).unwrap();
            let ab = abelianize(&p);
            assert!(fox_matrix(&p, &ab).is_ok(), "{text}");
        }
    }

    #[test]
    fn jump_ideal_bs12() {
        let p = bs12();
        let (chain, _) = presentation_complex(&p).unwrap();
        let j1 = jump_ideal(&chain, 1, DEFAULT_MINOR_CAP).unwrap();
        assert_eq!(j1.generators.len(), 1);
        let expect = poly1("x1 - 1").mul(&poly1("x1 - 2")).unwrap();
        assert_eq!(j1.generators[0], expect.normalize_unit());
        assert_eq!(j1.principal_part.as_ref().unwrap(), &expect.normalize_unit());
        assert_eq!(j1.residual, vec![LaurentPoly::constant(FGAbelianGroup::free(1), 1)]);

        let j0 = jump_ideal(&chain, 0, DEFAULT_MINOR_CAP).unwrap();
        assert_eq!(j0.generators, vec![poly1("x1 - 1")]);
    }

    #[test]
    fn jump_ideal_free_group_is_zero() {
        let p = Presentation::parse("gens: a b\n").unwrap();
        let (chain, _) = presentation_complex(&p).unwrap();
        let j1 = jump_ideal(&chain, 1, DEFAULT_MINOR_CAP).unwrap();
        assert!(j1.generators.is_empty());
    }

    #[test]
    fn bnsr_bound_bs12() {
        let bound = bnsr_upper_bound(&bs12(), DEFAULT_MINOR_CAP).unwrap();
        assert_eq!(bound.rank, 1);
        assert_eq!(bound.provenance, Provenance::Exact);
        assert_eq!(bound.sphere, SphericalSet::Dim1 { neg: false, pos: true });
        let complement = bound.complement.unwrap();
        assert_eq!(complement, SphericalSet::Dim1 { neg: true, pos: false });
        let fixture = BnsFixture {
            id: "bs12".into(),
            sigma1: SphericalSet::Dim1 { neg: true, pos: false },
            citation: "Brown's algorithm".into(),
        };
        let report = audit_inclusion(&fixture, &complement);
        assert_eq!(report.included, Verdict::True);
        assert_eq!(report.strict, Verdict::False);
        // over any field the jump variety {1,2} has empty sphere
        let gens = &bound.jump.generators;
        let field = TropRing::Field(valuation::trivial());
        let region = prevariety(gens, &field).unwrap();
        assert!(sphere_project(&region).is_empty());
    }

    #[test]
    fn bnsr_bound_brown() {
        let bound = bnsr_upper_bound(&brown_example(), DEFAULT_MINOR_CAP).unwrap();
        assert_eq!(bound.rank, 2);
        assert_eq!(bound.provenance, Provenance::Exact);
        assert_eq!(
            bound.jump.principal_part.as_ref().unwrap(),
            &poly2("x1 - 1")
        );
        assert_eq!(
            bound.sphere,
            SphericalSet::Dim2(CircleSet::from_points([d(0, 1), d(0, -1)]))
        );
        // fixture: two open arcs joining (1,0)-(0,1) and (0,1)-(-1,-1)
        let fixture = BnsFixture {
            id: "one-relator".into(),
            sigma1: SphericalSet::Dim2(CircleSet::from_pieces(
                vec![],
                vec![
                    ArcPiece::new(d(1, 0), d(0, 1), false, false),
                    ArcPiece::new(d(0, 1), d(-1, -1), false, false),
                ],
            )),
            citation: "Brown's algorithm".into(),
        };
        let report = audit_inclusion(&fixture, bound.complement.as_ref().unwrap());
        assert_eq!(report.included, Verdict::True);
        assert_eq!(report.strict, Verdict::True);
    }

    #[test]
    fn synthetic_chain_decomposition() {
        let f = poly2("x1 + x2 - 2");
        let chain = synthetic_chain(&f);
        let j1 = jump_ideal(&chain, 1, DEFAULT_MINOR_CAP).unwrap();
        let principal = j1.principal_part.as_ref().unwrap();
        assert!(principal.exact_div(&f).is_some(), "principal part divisible by f");
        assert_eq!(principal, &f.normalize_unit());
        // residual prevariety collapses to the origin: its sphere is empty
        let region = prevariety(&j1.residual, &TropRing::Z).unwrap();
        assert!(region.is_within_origin());
        assert!(sphere_project(&region).is_empty());
        // so the jump sphere equals S(Trop_Z(f)): three points plus an arc
        let sz = sphere_project(&trop_hypersurface_z(&f).unwrap());
        let expect = SphericalSet::Dim2(
            CircleSet::from_points([d(-1, -1)])
                .union(&CircleSet::from_pieces(vec![], vec![ArcPiece::closed(d(1, 0), d(0, 1))])),
        );
        assert_eq!(sz, expect);
        // the union of field spheres (4 points) is strictly smaller
        let triv = sphere_project(
            &crate::tropical::trop_hypersurface_field(&f, &valuation::trivial()).unwrap(),
        );
        let mod2 = sphere_project(
            &crate::tropical::trop_hypersurface_field(&f, &valuation::modp(2).unwrap()).unwrap(),
        );
        let union = triv.union(&mod2);
        assert_eq!(union.is_subset(&sz), Verdict::True);
        assert_eq!(union.eq_sets(&sz), Verdict::False);
    }

    #[test]
    fn dwyer_fried_x_minus_2() {
        let g = poly1("x1 - 2");
        assert_eq!(dwyer_fried_test(&[g.clone()], &TropRing::Z).unwrap(), Verdict::False);
        assert_eq!(
            dwyer_fried_test(&[g.clone()], &TropRing::Field(valuation::trivial())).unwrap(),
            Verdict::True
        );
        assert_eq!(
            dwyer_fried_test(&[g], &TropRing::Field(valuation::modp(3).unwrap())).unwrap(),
            Verdict::True
        );
        assert_eq!(
            dwyer_fried_test(&[poly1("x1 - 1")], &TropRing::Z).unwrap(),
            Verdict::True
        );
    }

    #[test]
    fn minor_rank_oracle() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(41);
        let presentations = [
            "gens: a b\nrel: a b a^-1 b^-2\n",
            "gens: a b\nrel: [a,b]\n",
            "gens: a b c\nrel: [a,b]\nrel: [b,c]\n",
            "gens: a b\n",
            "gens: a b\nrel: a^-1 b^-1 a b^2 a^-1 b^-1 a^2 b^-1 a^-1 b a^-1 b a b^-1\n",
        ];
        for text in presentations {
            let p = Presentation::parse(text).unwrap();
            let (chain, ab) = presentation_complex(&p).unwrap();
            if !ab.group.is_torsion_free() {
                continue;
            }
            for i in [0usize, 1] {
                let j = jump_ideal(&chain, i, DEFAULT_MINOR_CAP).unwrap();
                for _ in 0..100 {
                    let point: Vec<BigRational> = (0..ab.group.rank)
                        .map(|_| {
                            let n = loop {
                                let n = rng.gen_range(-7i64..=7);
                                if n != 0 {
                                    break n;
                                }
                            };
                            BigRational::new(BigInt::from(n), BigInt::from(rng.gen_range(1i64..=4)))
                        })
                        .collect();
                    let minors_vanish =
                        j.generators.iter().all(|g| g.eval_rational(&point).is_zero());
                    assert_eq!(
                        minors_vanish,
                        rank_deficient_at(&chain, i, &point),
                        "{text} degree {i} at {point:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn minor_cap_enforced() {
        let p = Presentation::parse("gens: a b c\nrel: [a,b]\nrel: [b,c]\n").unwrap();
        let (chain, _) = presentation_complex(&p).unwrap();
        assert!(matches!(
            jump_ideal(&chain, 1, 1),
            Err(Error::MinorCapExceeded { .. })
        ));
    }

    #[test]
    fn augmentation_form_recognition() {
        assert!(augmentation_form(&poly2("x1 - 1")));
        assert!(augmentation_form(&poly2("x2 - 1")));
        assert!(augmentation_form(&poly2("1 - x2")));
        assert!(!augmentation_form(&poly2("x1 - 2")));
        assert!(!augmentation_form(&poly2("x1*x2 - 1")));
        assert!(!augmentation_form(&poly2("x1^2 - 1")));
    }

    #[test]
    fn rank_zero_rejected() {
        let p = Presentation::parse("gens: a\nrel: a a a\n").unwrap();
        assert!(matches!(
            bnsr_upper_bound(&p, DEFAULT_MINOR_CAP),
            Err(Error::RankZero)
        ));
    }

    #[test]
    fn fox_product_rule_sampled() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(43);
        let p = Presentation::parse("gens: a b\n").unwrap();
        let ab = abelianize(&p);
        for _ in 0..50 {
            let rand_word = |rng: &mut rand_chacha::ChaCha8Rng| -> Word {
                (0..rng.gen_range(0..6))
                    .map(|_| (rng.gen_range(0..2), if rng.gen_bool(0.5) { 1 } else { -1 }))
                    .collect()
            };
            let u = rand_word(&mut rng);
            let v = rand_word(&mut rng);
            let mut uv = u.clone();
            uv.extend_from_slice(&v);
            for gen in 0..2 {
                // ∂(uv) = ∂u + ū·∂v
                let du = fox_derivative(&u, gen, &ab);
                let dv = fox_derivative(&v, gen, &ab);
                let duv = fox_derivative(&uv, gen, &ab);
                let u_img = ab.word_image(&u);
                let shifted = dv.shift(&u_img.free);
                assert_eq!(duv, du.add(&shifted).unwrap());
            }
        }
    }
}
