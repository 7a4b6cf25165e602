//! Tropical hypersurfaces over valued fields, tropical regions over `Z`,
//! the per-prime decomposition, prevarieties, spherical projection, and
//! pullback along surjections of character lattices.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::abelian::{pair, sphere_normalize, Character, GroupElement};
use crate::error::{Error, Result};
use crate::geometry::{CircleSet, Constraint, Dir, Polyhedron, Rel};
use crate::laurent::{CoeffDomain, LaurentPoly};
use crate::matrix::{smith_normal_form, IntMatrix};
use crate::valuation::{Val, Valuation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Provenance {
    Exact,
    UpperBound,
}

/// Why a cell belongs to the region: a tie among support elements, or a
/// unique minimizer whose coefficient is not a unit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum CellLabel {
    Tie(Vec<GroupElement>),
    UnitWitness(GroupElement),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TropicalCell {
    pub poly: Polyhedron,
    pub label: CellLabel,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TropicalRegion {
    pub dim: usize,
    pub source: String,
    pub provenance: Provenance,
    pub cells: Vec<TropicalCell>,
}

impl TropicalRegion {
    pub fn empty(dim: usize, source: String, provenance: Provenance) -> Self {
        TropicalRegion { dim, source, provenance, cells: vec![] }
    }

    pub fn full(dim: usize, source: String, provenance: Provenance) -> Self {
        TropicalRegion {
            dim,
            source,
            provenance,
            cells: vec![TropicalCell { poly: Polyhedron::full(dim), label: CellLabel::Tie(vec![]) }],
        }
    }

    pub fn contains(&self, chi: &Character) -> bool {
        assert_eq!(chi.dim(), self.dim);
        self.cells.iter().any(|c| c.poly.contains(&chi.coords))
    }

    pub fn is_empty_set(&self) -> bool {
        self.cells.iter().all(|c| c.poly.is_empty())
    }

    /// Whether the region is contained in `{0}`.
    pub fn is_within_origin(&self) -> bool {
        self.cells.iter().all(|c| {
            (0..self.dim).all(|i| {
                let mut pos = vec![0i64; self.dim];
                pos[i] = 1;
                let mut neg = vec![0i64; self.dim];
                neg[i] = -1;
                c.poly.with_constraints(&[Constraint::from_i64(&pos, 0, Rel::Gt)]).is_empty()
                    && c.poly.with_constraints(&[Constraint::from_i64(&neg, 0, Rel::Gt)]).is_empty()
            })
        })
    }
}

fn rat(x: &BigInt) -> BigRational {
    BigRational::from_integer(x.clone())
}

/// Support with finite coefficient valuations.
fn live_terms(f: &LaurentPoly, v: &Arc<dyn Valuation>) -> Vec<(GroupElement, BigRational)> {
    f.terms()
        .filter_map(|(g, c)| match v.of_int(c) {
            Val::Finite(val) => Some((g.clone(), val)),
            Val::Infinity => None,
        })
        .collect()
}

/// `min { v(a_u) + u·w }` over the support.
pub fn trop_eval(f: &LaurentPoly, v: &Arc<dyn Valuation>, w: &Character) -> Result<BigRational> {
    f.check_valuation(v)?;
    let live = live_terms(f, v);
    if live.is_empty() {
        return Err(Error::ZeroPolynomial);
    }
    live.into_iter()
        .map(|(g, val)| pair(w, &g).map(|p| p + val))
        .try_fold(None, |acc: Option<BigRational>, r| {
            let r = r?;
            Ok(Some(match acc {
                Some(a) => a.min(r),
                None => r,
            }))
        })
        .map(|m| m.unwrap())
}

/// Direct membership test for the field tropicalization: is the minimum in
/// `trop_eval` attained at least twice?
pub fn membership_field(f: &LaurentPoly, v: &Arc<dyn Valuation>, w: &Character) -> Result<bool> {
    f.check_valuation(v)?;
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let live = live_terms(f, v);
    if live.is_empty() {
        // vanishes in the residue field: the zero ideal tropicalizes to
        // everything
        return Ok(true);
    }
    let vals: Vec<BigRational> = live
        .iter()
        .map(|(g, val)| pair(w, g).map(|p| p + val))
        .collect::<Result<_>>()?;
    let min = vals.iter().min().unwrap();
    Ok(vals.iter().filter(|x| *x == min).count() >= 2)
}

/// Direct membership test for the `Z`-tropicalization: is `in_w(f)` not a
/// unit of `ZH`?
pub fn membership_z(f: &LaurentPoly, w: &Character) -> Result<bool> {
    if f.is_zero() {
        return Ok(true);
    }
    let init = f.initial_form_ring(w)?;
    Ok(!init.is_unit_over_z()?)
}

fn tie_cell(
    dim: usize,
    live: &[(GroupElement, BigRational)],
    i: usize,
    j: usize,
) -> Polyhedron {
    let (ui, vi) = &live[i];
    let (uj, vj) = &live[j];
    let mut constraints = vec![Constraint::new(
        ui.free.iter().zip(&uj.free).map(|(a, b)| rat(a) - rat(b)).collect(),
        vi - vj,
        Rel::Eq,
    )];
    for (k, (uk, vk)) in live.iter().enumerate() {
        if k == i || k == j {
            continue;
        }
        constraints.push(Constraint::new(
            uk.free.iter().zip(&ui.free).map(|(a, b)| rat(a) - rat(b)).collect(),
            vk - vi,
            Rel::Ge,
        ));
    }
    Polyhedron::new(dim, constraints)
}

fn source_tag(domain: CoeffDomain, v: &Arc<dyn Valuation>) -> String {
    match domain {
        CoeffDomain::Int => format!("Q,{}", v.name()),
        CoeffDomain::Fp(p) => format!("F{p},{}", v.name()),
    }
}

/// The tropical hypersurface of `f` over a valued field.
pub fn trop_hypersurface_field(
    f: &LaurentPoly,
    v: &Arc<dyn Valuation>,
) -> Result<TropicalRegion> {
    f.check_valuation(v)?;
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let n = f.group.rank;
    let source = source_tag(f.domain, v);
    let live = live_terms(f, v);
    if live.is_empty() {
        // f is identically zero in the residue field: zero ideal convention
        return Ok(TropicalRegion::full(n, source, Provenance::Exact));
    }
    let mut cells = vec![];
    for i in 0..live.len() {
        for j in i + 1..live.len() {
            let poly = tie_cell(n, &live, i, j);
            if poly.is_empty() {
                continue;
            }
            let cell = TropicalCell {
                poly,
                label: CellLabel::Tie(vec![live[i].0.clone(), live[j].0.clone()]),
            };
            if !cells.contains(&cell) {
                cells.push(cell);
            }
        }
    }
    Ok(TropicalRegion { dim: n, source, provenance: Provenance::Exact, cells })
}

/// The tropical region of the principal ideal `(f)` over `Z`: tie region of
/// the trivial valuation plus the cells where the unique minimizer has a
/// non-unit coefficient.
pub fn trop_hypersurface_z(f: &LaurentPoly) -> Result<TropicalRegion> {
    assert_eq!(f.domain, CoeffDomain::Int);
    let n = f.group.rank;
    let source = "Z".to_string();
    if f.is_zero() {
        return Ok(TropicalRegion::full(n, source, Provenance::Exact));
    }
    let all_unit_coeffs = f.terms().all(|(_, c)| c.abs().is_one());
    if !f.group.is_torsion_free() && !all_unit_coeffs {
        return Err(Error::UndecidedTorsion);
    }
    let live: Vec<(GroupElement, BigRational)> =
        f.terms().map(|(g, _)| (g.clone(), BigRational::zero())).collect();
    let mut cells = vec![];
    for i in 0..live.len() {
        for j in i + 1..live.len() {
            let poly = tie_cell(n, &live, i, j);
            if poly.is_empty() {
                continue;
            }
            let cell = TropicalCell {
                poly,
                label: CellLabel::Tie(vec![live[i].0.clone(), live[j].0.clone()]),
            };
            if !cells.contains(&cell) {
                cells.push(cell);
            }
        }
    }
    // closed cells where a non-unit coefficient is the minimizer; their
    // boundaries are ties, so taking closures does not change the union
    for (i, (u, _)) in live.iter().enumerate() {
        let c = f.coeff(u);
        if c.abs().is_one() {
            continue;
        }
        let constraints = live
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != i)
            .map(|(_, (uk, _))| {
                Constraint::new(
                    uk.free.iter().zip(&u.free).map(|(a, b)| rat(a) - rat(b)).collect(),
                    BigRational::zero(),
                    Rel::Ge,
                )
            })
            .collect();
        let poly = Polyhedron::new(n, constraints);
        if !poly.is_empty() {
            cells.push(TropicalCell { poly, label: CellLabel::UnitWitness(u.clone()) });
        }
    }
    Ok(TropicalRegion { dim: n, source, provenance: Provenance::Exact, cells })
}

/// Primes dividing at least one coefficient.
pub fn relevant_primes(f: &LaurentPoly) -> Result<Vec<u64>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut primes = vec![];
    for (_, c) in f.terms() {
        let mut n = c.abs();
        let mut p = BigInt::from(2u64);
        while &p * &p <= n {
            if (&n % &p).is_zero() {
                let pu = u64::try_from(&p).expect("prime fits u64");
                if !primes.contains(&pu) {
                    primes.push(pu);
                }
                while (&n % &p).is_zero() {
                    n /= &p;
                }
            }
            p += 1;
        }
        if n > BigInt::one() {
            let pu = u64::try_from(&n).expect("prime fits u64");
            if !primes.contains(&pu) {
                primes.push(pu);
            }
        }
    }
    primes.sort_unstable();
    Ok(primes)
}

/// The per-valuation family whose sphere union recovers the sphere of the
/// `Z`-tropicalization: the trivial valuation plus, for every relevant prime,
/// the p-adic and mod-p valuations.
pub fn trop_z_decomposition(f: &LaurentPoly) -> Result<Vec<(String, TropicalRegion)>> {
    assert_eq!(f.domain, CoeffDomain::Int);
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut out = vec![];
    let v0 = crate::valuation::trivial();
    out.push(("trivial".to_string(), trop_hypersurface_field(f, &v0)?));
    for p in relevant_primes(f)? {
        let vp = crate::valuation::padic(p)?;
        out.push((format!("padic:{p}"), trop_hypersurface_field(f, &vp)?));
        let mp = crate::valuation::modp(p)?;
        out.push((format!("modp:{p}"), trop_hypersurface_field(f, &mp)?));
    }
    Ok(out)
}

/// Ring over which a prevariety is computed.
#[derive(Debug, Clone)]
pub enum TropRing {
    Z,
    Field(Arc<dyn Valuation>),
}

/// Intersection of the generator-wise tropical regions: a sound upper bound
/// for the tropical set of the ideal, exact for a single generator.
pub fn prevariety(gens: &[LaurentPoly], ring: &TropRing) -> Result<TropicalRegion> {
    let Some(first) = gens.first() else {
        return Err(Error::ZeroPolynomial);
    };
    let mut acc = match ring {
        TropRing::Z => trop_hypersurface_z(first)?,
        TropRing::Field(v) => trop_hypersurface_field(first, v)?,
    };
    for g in &gens[1..] {
        let r = match ring {
            TropRing::Z => trop_hypersurface_z(g)?,
            TropRing::Field(v) => trop_hypersurface_field(g, v)?,
        };
        let mut cells = vec![];
        for a in &acc.cells {
            for b in &r.cells {
                let poly = a.poly.intersect(&b.poly);
                if poly.is_empty() {
                    continue;
                }
                let label = merge_labels(&a.label, &b.label);
                let cell = TropicalCell { poly, label };
                if !cells.contains(&cell) {
                    cells.push(cell);
                }
            }
        }
        acc = TropicalRegion {
            dim: acc.dim,
            source: acc.source,
            provenance: Provenance::UpperBound,
            cells,
        };
    }
    acc.source = match ring {
        TropRing::Z => "Z".to_string(),
        TropRing::Field(v) => source_tag(first.domain, v),
    };
    if gens.len() > 1 {
        acc.provenance = Provenance::UpperBound;
    }
    Ok(acc)
}

fn merge_labels(a: &CellLabel, b: &CellLabel) -> CellLabel {
    let mut elems = vec![];
    for l in [a, b] {
        match l {
            CellLabel::Tie(v) => elems.extend(v.iter().cloned()),
            CellLabel::UnitWitness(u) => elems.push(u.clone()),
        }
    }
    CellLabel::Tie(elems)
}

// ---------------------------------------------------------------------------
// spherical projection

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    True,
    False,
    Unknown,
}

/// The image of a region minus the origin in the sphere of directions.
/// Exact canonical forms in ranks 0..=2; general rank keeps the cells and
/// answers membership exactly per query.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum SphericalSet {
    Dim0,
    Dim1 { neg: bool, pos: bool },
    Dim2(CircleSet),
    General { dim: usize, cells: Vec<Polyhedron> },
}

impl SphericalSet {
    pub fn empty(dim: usize) -> Self {
        match dim {
            0 => SphericalSet::Dim0,
            1 => SphericalSet::Dim1 { neg: false, pos: false },
            2 => SphericalSet::Dim2(CircleSet::empty()),
            n => SphericalSet::General { dim: n, cells: vec![] },
        }
    }

    pub fn full(dim: usize) -> Self {
        match dim {
            0 => SphericalSet::Dim0,
            1 => SphericalSet::Dim1 { neg: true, pos: true },
            2 => SphericalSet::Dim2(CircleSet::full_circle()),
            n => SphericalSet::General { dim: n, cells: vec![Polyhedron::full(n)] },
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            SphericalSet::Dim0 => 0,
            SphericalSet::Dim1 { .. } => 1,
            SphericalSet::Dim2(_) => 2,
            SphericalSet::General { dim, .. } => *dim,
        }
    }

    pub fn is_empty(&self) -> bool {
        match self {
            SphericalSet::Dim0 => true,
            SphericalSet::Dim1 { neg, pos } => !neg && !pos,
            SphericalSet::Dim2(c) => c.is_empty(),
            SphericalSet::General { dim, cells } => cells
                .iter()
                .all(|c| !(0..*dim).any(|i| cell_meets_open_halfspace(c, i))),
        }
    }

    pub fn contains(&self, dir: &[BigInt]) -> bool {
        assert_eq!(dir.len(), self.dim());
        match self {
            SphericalSet::Dim0 => false,
            SphericalSet::Dim1 { neg, pos } => {
                if dir[0].is_positive() {
                    *pos
                } else if dir[0].is_negative() {
                    *neg
                } else {
                    false
                }
            }
            SphericalSet::Dim2(c) => {
                match Dir::new(dir[0].clone(), dir[1].clone()) {
                    Ok(d) => c.contains(&d),
                    Err(_) => false,
                }
            }
            SphericalSet::General { cells, .. } => {
                cells.iter().any(|c| c.attains_positive_ray(dir))
            }
        }
    }

    pub fn union(&self, other: &SphericalSet) -> SphericalSet {
        assert_eq!(self.dim(), other.dim());
        match (self, other) {
            (SphericalSet::Dim0, SphericalSet::Dim0) => SphericalSet::Dim0,
            (
                SphericalSet::Dim1 { neg: n1, pos: p1 },
                SphericalSet::Dim1 { neg: n2, pos: p2 },
            ) => SphericalSet::Dim1 { neg: *n1 || *n2, pos: *p1 || *p2 },
            (SphericalSet::Dim2(a), SphericalSet::Dim2(b)) => SphericalSet::Dim2(a.union(b)),
            (
                SphericalSet::General { dim, cells: a },
                SphericalSet::General { cells: b, .. },
            ) => {
                let mut cells = a.clone();
                cells.extend(b.iter().cloned());
                SphericalSet::General { dim: *dim, cells }
            }
            _ => unreachable!("dimension checked"),
        }
    }

    /// Complement within the sphere; exact for rank <= 2 only.
    pub fn complement(&self) -> Result<SphericalSet> {
        match self {
            SphericalSet::Dim0 => Ok(SphericalSet::Dim0),
            SphericalSet::Dim1 { neg, pos } => {
                Ok(SphericalSet::Dim1 { neg: !neg, pos: !pos })
            }
            SphericalSet::Dim2(c) => Ok(SphericalSet::Dim2(c.complement())),
            SphericalSet::General { .. } => Err(Error::Unsupported(
                "sphere complement beyond rank 2".into(),
            )),
        }
    }

    /// Containment `self ⊆ other`. Exact in ranks 0..=2; sampled in higher
    /// rank (a `False` is always witnessed, agreement yields `Unknown`).
    pub fn is_subset(&self, other: &SphericalSet) -> Verdict {
        assert_eq!(self.dim(), other.dim());
        if self.is_empty() {
            return Verdict::True;
        }
        match (self, other) {
            (SphericalSet::Dim0, SphericalSet::Dim0) => Verdict::True,
            (
                SphericalSet::Dim1 { neg: n1, pos: p1 },
                SphericalSet::Dim1 { neg: n2, pos: p2 },
            ) => {
                if (!n1 || *n2) && (!p1 || *p2) {
                    Verdict::True
                } else {
                    Verdict::False
                }
            }
            (SphericalSet::Dim2(a), SphericalSet::Dim2(b)) => {
                if &a.union(b) == b {
                    Verdict::True
                } else {
                    Verdict::False
                }
            }
            (SphericalSet::General { dim, cells: a }, SphericalSet::General { cells: b, .. }) => {
                let sb = SphericalSet::General { dim: *dim, cells: b.to_vec() };
                for d in sample_directions(*dim, a.iter().chain(b.iter())) {
                    if self.contains(&d) && !sb.contains(&d) {
                        return Verdict::False;
                    }
                }
                Verdict::Unknown
            }
            _ => unreachable!("dimension checked"),
        }
    }

    /// Set equality. Exact in ranks 0..=2 and for unions of coordinate
    /// subspaces in any rank; otherwise sampled: a `False` is always backed
    /// by a witness direction, agreement yields `Unknown`.
    pub fn eq_sets(&self, other: &SphericalSet) -> Verdict {
        assert_eq!(self.dim(), other.dim());
        match (self, other) {
            (SphericalSet::General { dim, cells: a }, SphericalSet::General { cells: b, .. }) => {
                general_eq(*dim, a, b)
            }
            _ => {
                if self == other {
                    Verdict::True
                } else {
                    Verdict::False
                }
            }
        }
    }
}

fn cell_meets_open_halfspace(c: &Polyhedron, i: usize) -> bool {
    let mut pos = vec![0i64; c.dim];
    pos[i] = 1;
    let mut neg = vec![0i64; c.dim];
    neg[i] = -1;
    !c.with_constraints(&[Constraint::from_i64(&pos, 0, Rel::Gt)]).is_empty()
        || !c.with_constraints(&[Constraint::from_i64(&neg, 0, Rel::Gt)]).is_empty()
}

/// If the cell is exactly a coordinate subspace, the set of zeroed
/// coordinates.
fn as_coordinate_subspace(c: &Polyhedron) -> Option<Vec<usize>> {
    if c.is_empty() {
        return None;
    }
    let zeroed: Vec<usize> =
        (0..c.dim).filter(|&i| !cell_meets_open_halfspace(c, i)).collect();
    let subspace = Polyhedron::new(
        c.dim,
        zeroed
            .iter()
            .map(|&i| {
                let mut v = vec![0i64; c.dim];
                v[i] = 1;
                Constraint::from_i64(&v, 0, Rel::Eq)
            })
            .collect(),
    );
    if subspace.is_subset_of(c) {
        Some(zeroed)
    } else {
        None
    }
}

fn general_eq(dim: usize, a: &[Polyhedron], b: &[Polyhedron]) -> Verdict {
    let sa = SphericalSet::General { dim, cells: a.to_vec() };
    let sb = SphericalSet::General { dim, cells: b.to_vec() };
    if sa.is_empty() || sb.is_empty() {
        return if sa.is_empty() == sb.is_empty() { Verdict::True } else { Verdict::False };
    }
    // exact path: unions of coordinate subspaces
    let subspaces = |cells: &[Polyhedron]| -> Option<Vec<Vec<usize>>> {
        cells
            .iter()
            .filter(|c| !c.is_empty())
            .map(as_coordinate_subspace)
            .collect()
    };
    if let (Some(za), Some(zb)) = (subspaces(a), subspaces(b)) {
        // each subspace (with nonempty sphere) must sit inside one on the
        // other side; containment of index sets is reversed
        let nonzero = |z: &Vec<usize>| z.len() < dim;
        let covered = |z: &Vec<usize>, other: &[Vec<usize>]| {
            other.iter().any(|w| w.iter().all(|i| z.contains(i)))
        };
        let ok_ab = za.iter().filter(|z| nonzero(z)).all(|z| covered(z, &zb));
        let ok_ba = zb.iter().filter(|z| nonzero(z)).all(|z| covered(z, &za));
        return if ok_ab && ok_ba { Verdict::True } else { Verdict::False };
    }
    // sampled path
    for d in sample_directions(dim, a.iter().chain(b.iter())) {
        if sa.contains(&d) != sb.contains(&d) {
            return Verdict::False;
        }
    }
    Verdict::Unknown
}

/// Deterministic direction samples: a primitive grid (small rank), feasible
/// points of the cells, and a seeded pseudorandom batch.
fn sample_directions<'a>(
    dim: usize,
    cells: impl Iterator<Item = &'a Polyhedron>,
) -> Vec<Vec<BigInt>> {
    use rand::{Rng, SeedableRng};
    let mut out: Vec<Vec<BigInt>> = vec![];
    let mut push = |d: Vec<BigInt>| {
        if d.iter().any(|x| !x.is_zero()) && !out.contains(&d) {
            out.push(d);
        }
    };
    if dim <= 4 {
        let mut stack = vec![vec![]];
        for _ in 0..dim {
            let mut next = vec![];
            for prefix in &stack {
                for c in -3i64..=3 {
                    let mut p: Vec<BigInt> = prefix.clone();
                    p.push(BigInt::from(c));
                    next.push(p);
                }
            }
            stack = next;
        }
        for d in stack {
            let gcd = d.iter().fold(BigInt::zero(), |acc, x| num_integer::Integer::gcd(&acc, x));
            if gcd.is_one() {
                push(d);
            }
        }
    }
    for c in cells {
        if let Some(p) = c.feasible_point() {
            if let Ok(d) = sphere_normalize(&Character { coords: p }) {
                push(d);
            }
        }
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x74726f70);
    for _ in 0..200 {
        let d: Vec<BigInt> = (0..dim).map(|_| BigInt::from(rng.gen_range(-20i64..=20))).collect();
        push(d);
    }
    out
}

/// Spherical projection of a region.
pub fn sphere_project(r: &TropicalRegion) -> SphericalSet {
    match r.dim {
        0 => SphericalSet::Dim0,
        1 => {
            let pos = r.cells.iter().any(|c| c.poly.attains_positive_ray(&[BigInt::one()]));
            let neg =
                r.cells.iter().any(|c| c.poly.attains_positive_ray(&[BigInt::from(-1)]));
            SphericalSet::Dim1 { neg, pos }
        }
        2 => {
            let mut acc = CircleSet::empty();
            for c in &r.cells {
                acc = acc.union(&cell_circle(&c.poly));
            }
            SphericalSet::Dim2(acc)
        }
        n => SphericalSet::General {
            dim: n,
            cells: r.cells.iter().map(|c| c.poly.clone()).collect(),
        },
    }
}

fn dir_from_rationals(x: &BigRational, y: &BigRational) -> Option<Dir> {
    use num_integer::Integer;
    let lcm = x.denom().lcm(y.denom());
    Dir::new(x.numer() * &lcm / x.denom(), y.numer() * &lcm / y.denom()).ok()
}

/// Exact circle image of a planar cell. The image of a convex cell is a
/// single arc (or a pair of antipodal pieces when the cell lies on a line
/// through the origin); its endpoints are directions of edges or vertices,
/// which together with per-atom ray tests pin the set down exactly.
fn cell_circle(p: &Polyhedron) -> CircleSet {
    let mut bounds = vec![];
    for c in &p.constraints {
        let (a1, a2) = (&c.coeffs[0], &c.coeffs[1]);
        if a1.is_zero() && a2.is_zero() {
            continue;
        }
        if let Some(d) = dir_from_rationals(&-a2.clone(), a1) {
            bounds.push(d.clone());
            bounds.push(Dir::new(-d.x.clone(), -d.y.clone()).unwrap());
        }
    }
    // vertices: pairwise intersections of constraint boundary lines
    let cs = &p.constraints;
    for i in 0..cs.len() {
        for j in i + 1..cs.len() {
            let (a, b) = (&cs[i], &cs[j]);
            let det = &a.coeffs[0] * &b.coeffs[1] - &a.coeffs[1] * &b.coeffs[0];
            if det.is_zero() {
                continue;
            }
            let rx = (-&a.constant * &b.coeffs[1] - &a.coeffs[1] * -&b.constant) / &det;
            let ry = (&a.coeffs[0] * -&b.constant - -&a.constant * &b.coeffs[0]) / &det;
            if p.contains(&[rx.clone(), ry.clone()]) {
                if let Some(d) = dir_from_rationals(&rx, &ry) {
                    bounds.push(d);
                }
            }
        }
    }
    CircleSet::from_indicator(bounds, |d| {
        p.attains_positive_ray(&[d.x.clone(), d.y.clone()])
    })
}

// ---------------------------------------------------------------------------
// functoriality

/// Image of a region under the transpose embedding of a surjection
/// `psi: Z^h -> Z^h'` (rows = h', cols = h). The region lives over the
/// target; the result lives over the source.
pub fn pullback(psi: &IntMatrix, region: &TropicalRegion) -> Result<TropicalRegion> {
    let hp = psi.rows;
    let h = psi.cols;
    assert_eq!(region.dim, hp);
    let (_, d, _) = smith_normal_form(psi);
    let ones = (0..hp.min(h)).filter(|&i| d[(i, i)].is_one()).count();
    if ones < hp {
        return Err(Error::NotSurjective);
    }
    // rational left inverse of psi^T
    let gram = psi.mul(&psi.transpose()).to_rational();
    let inv = gram.inverse().ok_or(Error::NotSurjective)?;
    let l = inv.mul(&psi.to_rational()); // h' x h
    // rowspace condition: (psi^T L - I) x = 0
    let pt = psi.transpose().to_rational();
    let proj = pt.mul(&l); // h x h
    let mut rowspace = vec![];
    for i in 0..h {
        let mut coeffs: Vec<BigRational> = (0..h).map(|j| proj[(i, j)].clone()).collect();
        coeffs[i] -= BigRational::one();
        if coeffs.iter().any(|c| !c.is_zero()) {
            rowspace.push(Constraint::new(coeffs, BigRational::zero(), Rel::Eq));
        }
    }
    let mut cells = vec![];
    for cell in &region.cells {
        let mut constraints = rowspace.clone();
        for c in &cell.poly.constraints {
            // c · w  with  w = L x
            let coeffs: Vec<BigRational> = (0..h)
                .map(|j| (0..hp).map(|i| &c.coeffs[i] * &l[(i, j)]).sum())
                .collect();
            constraints.push(Constraint::new(coeffs, c.constant.clone(), c.rel));
        }
        let poly = Polyhedron::new(h, constraints);
        if !poly.is_empty() {
            cells.push(TropicalCell { poly, label: cell.label.clone() });
        }
    }
    Ok(TropicalRegion {
        dim: h,
        source: format!("pullback({})", region.source),
        provenance: region.provenance,
        cells,
    })
}
