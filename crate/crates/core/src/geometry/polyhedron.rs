//! Rational polyhedra as constraint systems, with exact Fourier–Motzkin
//! elimination for feasibility, sample points, dimension, and ray queries.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::matrix::RatMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Rel {
    Eq,
    Ge,
    Gt,
}

/// `coeffs · x + constant  rel  0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Constraint {
    pub coeffs: Vec<BigRational>,
    pub constant: BigRational,
    pub rel: Rel,
}

impl Constraint {
    pub fn new(coeffs: Vec<BigRational>, constant: BigRational, rel: Rel) -> Self {
        Constraint { coeffs, constant, rel }
    }

    pub fn from_i64(coeffs: &[i64], constant: i64, rel: Rel) -> Self {
        Constraint {
            coeffs: coeffs.iter().map(|&c| BigRational::from_integer(BigInt::from(c))).collect(),
            constant: BigRational::from_integer(BigInt::from(constant)),
            rel,
        }
    }

    pub fn eval(&self, point: &[BigRational]) -> BigRational {
        self.coeffs.iter().zip(point).map(|(a, x)| a * x).sum::<BigRational>() + &self.constant
    }

    pub fn holds_at(&self, point: &[BigRational]) -> bool {
        let v = self.eval(point);
        match self.rel {
            Rel::Eq => v.is_zero(),
            Rel::Ge => !v.is_negative(),
            Rel::Gt => v.is_positive(),
        }
    }

    fn negations(&self) -> Vec<Constraint> {
        let flip = |rel| Constraint {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            constant: -self.constant.clone(),
            rel,
        };
        match self.rel {
            // not(= 0) is > 0 or < 0
            Rel::Eq => vec![
                Constraint { coeffs: self.coeffs.clone(), constant: self.constant.clone(), rel: Rel::Gt },
                flip(Rel::Gt),
            ],
            Rel::Ge => vec![flip(Rel::Gt)],
            Rel::Gt => vec![flip(Rel::Ge)],
        }
    }
}

/// An inequality `coeffs · x + constant >= 0` (or `> 0` when strict), the
/// working form for elimination.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Ineq {
    coeffs: Vec<BigRational>,
    constant: BigRational,
    strict: bool,
}

impl Ineq {
    /// Scale to a primitive integer vector; canonical for deduplication.
    fn normalize(mut self) -> Self {
        let mut lcm = BigInt::one();
        for c in self.coeffs.iter().chain([&self.constant]) {
            lcm = lcm.lcm(c.denom());
        }
        let mut gcd = BigInt::zero();
        let scaled: Vec<BigInt> = self
            .coeffs
            .iter()
            .chain([&self.constant])
            .map(|c| c.numer() * &lcm / c.denom())
            .collect();
        for s in &scaled {
            gcd = gcd.gcd(s);
        }
        if gcd.is_zero() {
            return self;
        }
        let n = self.coeffs.len();
        for (i, s) in scaled.into_iter().enumerate() {
            let v = BigRational::from_integer(s / &gcd);
            if i < n {
                self.coeffs[i] = v;
            } else {
                self.constant = v;
            }
        }
        self
    }

    /// For a constant inequality (all coefficients zero), whether it holds.
    fn constant_holds(&self) -> bool {
        if self.strict {
            self.constant.is_positive()
        } else {
            !self.constant.is_negative()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Polyhedron {
    pub dim: usize,
    pub constraints: Vec<Constraint>,
}

impl Polyhedron {
    pub fn new(dim: usize, constraints: Vec<Constraint>) -> Self {
        for c in &constraints {
            assert_eq!(c.coeffs.len(), dim);
        }
        Polyhedron { dim, constraints }
    }

    /// The whole space.
    pub fn full(dim: usize) -> Self {
        Polyhedron { dim, constraints: vec![] }
    }

    pub fn with_constraints(&self, extra: &[Constraint]) -> Polyhedron {
        let mut cs = self.constraints.clone();
        cs.extend_from_slice(extra);
        Polyhedron::new(self.dim, cs)
    }

    pub fn intersect(&self, other: &Polyhedron) -> Polyhedron {
        assert_eq!(self.dim, other.dim);
        self.with_constraints(&other.constraints)
    }

    pub fn contains(&self, point: &[BigRational]) -> bool {
        assert_eq!(point.len(), self.dim);
        self.constraints.iter().all(|c| c.holds_at(point))
    }

    fn ineqs(&self) -> Vec<Ineq> {
        let mut out = vec![];
        for c in &self.constraints {
            match c.rel {
                Rel::Eq => {
                    out.push(Ineq {
                        coeffs: c.coeffs.clone(),
                        constant: c.constant.clone(),
                        strict: false,
                    });
                    out.push(Ineq {
                        coeffs: c.coeffs.iter().map(|x| -x).collect(),
                        constant: -c.constant.clone(),
                        strict: false,
                    });
                }
                Rel::Ge | Rel::Gt => out.push(Ineq {
                    coeffs: c.coeffs.clone(),
                    constant: c.constant.clone(),
                    strict: c.rel == Rel::Gt,
                }),
            }
        }
        dedupe(out.into_iter().map(Ineq::normalize).collect())
    }

    pub fn is_empty(&self) -> bool {
        let mut sys = self.ineqs();
        for v in (0..self.dim).rev() {
            sys = eliminate(&sys, v);
        }
        !sys.iter().all(Ineq::constant_holds)
    }

    /// Any point of the polyhedron, or `None` when empty.
    pub fn feasible_point(&self) -> Option<Vec<BigRational>> {
        // stages[v] is the system with variables 0..v eliminated... built from
        // the top: stages[self.dim] = original, stages[0] = constants only
        let mut stages: Vec<Vec<Ineq>> = vec![self.ineqs()];
        for v in (0..self.dim).rev() {
            let next = eliminate(stages.last().unwrap(), v);
            stages.push(next);
        }
        stages.reverse();
        if !stages[0].iter().all(Ineq::constant_holds) {
            return None;
        }
        let mut point = vec![BigRational::zero(); self.dim];
        for v in 0..self.dim {
            // stages[v + 1] involves variables 0..=v; those below v are known
            let mut lo: Option<(BigRational, bool)> = None;
            let mut hi: Option<(BigRational, bool)> = None;
            for ineq in &stages[v + 1] {
                let a = &ineq.coeffs[v];
                if a.is_zero() {
                    continue;
                }
                let rest: BigRational = ineq.coeffs[..v]
                    .iter()
                    .zip(&point)
                    .map(|(c, x)| c * x)
                    .sum::<BigRational>()
                    + &ineq.constant;
                let bound = -rest / a;
                if a.is_positive() {
                    // x_v >= bound (or >)
                    lo = Some(match lo {
                        Some((b, s)) if b > bound || (b == bound && s) => (b, s),
                        _ => (bound, ineq.strict),
                    });
                } else {
                    hi = Some(match hi {
                        Some((b, s)) if b < bound || (b == bound && s) => (b, s),
                        _ => (bound, ineq.strict),
                    });
                }
            }
            point[v] = pick_in_interval(&lo, &hi)?;
        }
        Some(point)
    }

    /// Affine dimension, `None` when empty. Counts implicit equalities among
    /// the inequality constraints.
    pub fn dimension(&self) -> Option<usize> {
        if self.is_empty() {
            return None;
        }
        let mut normals: Vec<Vec<BigRational>> = vec![];
        for c in &self.constraints {
            match c.rel {
                Rel::Eq => normals.push(c.coeffs.clone()),
                Rel::Ge => {
                    let strict = Constraint {
                        coeffs: c.coeffs.clone(),
                        constant: c.constant.clone(),
                        rel: Rel::Gt,
                    };
                    if self.with_constraints(&[strict]).is_empty() {
                        normals.push(c.coeffs.clone());
                    }
                }
                Rel::Gt => {}
            }
        }
        if normals.is_empty() {
            return Some(self.dim);
        }
        let m = RatMatrix::from_rows(normals);
        Some(self.dim - m.rank())
    }

    /// Whether every point of `self` satisfies all constraints of `other`.
    pub fn is_subset_of(&self, other: &Polyhedron) -> bool {
        assert_eq!(self.dim, other.dim);
        other.constraints.iter().all(|q| {
            q.negations()
                .iter()
                .all(|neg| self.with_constraints(std::slice::from_ref(neg)).is_empty())
        })
    }

    /// Whether some positive multiple of `dir` lies in the polyhedron.
    pub fn attains_positive_ray(&self, dir: &[BigInt]) -> bool {
        assert_eq!(dir.len(), self.dim);
        let d: Vec<BigRational> =
            dir.iter().map(|x| BigRational::from_integer(x.clone())).collect();
        // intersect {t : t d in P} with (0, inf)
        let mut lo: (BigRational, bool) = (BigRational::zero(), true);
        let mut hi: Option<(BigRational, bool)> = None;
        for c in &self.constraints {
            let alpha: BigRational = c.coeffs.iter().zip(&d).map(|(a, x)| a * x).sum();
            if alpha.is_zero() {
                let ok = match c.rel {
                    Rel::Eq => c.constant.is_zero(),
                    Rel::Ge => !c.constant.is_negative(),
                    Rel::Gt => c.constant.is_positive(),
                };
                if !ok {
                    return false;
                }
                continue;
            }
            let t0 = -&c.constant / &alpha;
            match c.rel {
                Rel::Eq => {
                    // collapse to the single point t0
                    tighten_lo(&mut lo, (t0.clone(), false));
                    let cand = (t0, false);
                    match &hi {
                        Some(h) if !hi_is_looser(h, &cand) => {}
                        _ => hi = Some(cand),
                    }
                }
                Rel::Ge | Rel::Gt => {
                    let strict = c.rel == Rel::Gt;
                    if alpha.is_positive() {
                        tighten_lo(&mut lo, (t0, strict));
                    } else {
                        let cand = (t0, strict);
                        match &hi {
                            Some(h) if !hi_is_looser(h, &cand) => {}
                            _ => hi = Some(cand),
                        }
                    }
                }
            }
        }
        match hi {
            None => true,
            Some((h, hs)) => {
                let (l, ls) = lo;
                l < h || (l == h && !ls && !hs)
            }
        }
    }
}

/// Returns true (and tightens) when `cand` is at least as tight as `lo`.
fn tighten_lo(lo: &mut (BigRational, bool), cand: (BigRational, bool)) -> bool {
    if cand.0 > lo.0 || (cand.0 == lo.0 && cand.1 && !lo.1) {
        *lo = cand;
        true
    } else {
        false
    }
}

/// Whether `cand` is a strictly tighter upper bound than `h`.
fn hi_is_looser(h: &(BigRational, bool), cand: &(BigRational, bool)) -> bool {
    cand.0 < h.0 || (cand.0 == h.0 && cand.1 && !h.1)
}

fn pick_in_interval(
    lo: &Option<(BigRational, bool)>,
    hi: &Option<(BigRational, bool)>,
) -> Option<BigRational> {
    let one = BigRational::one();
    match (lo, hi) {
        (None, None) => Some(BigRational::zero()),
        (Some((l, ls)), None) => Some(if *ls { l + &one } else { l.clone() }),
        (None, Some((h, hs))) => Some(if *hs { h - &one } else { h.clone() }),
        (Some((l, ls)), Some((h, hs))) => {
            if l > h {
                return None;
            }
            if l == h {
                if *ls || *hs {
                    return None;
                }
                return Some(l.clone());
            }
            Some((l + h) / BigRational::from_integer(BigInt::from(2)))
        }
    }
}

fn dedupe(mut ineqs: Vec<Ineq>) -> Vec<Ineq> {
    let mut out: Vec<Ineq> = vec![];
    for i in ineqs.drain(..) {
        // drop trivially true constants
        if i.coeffs.iter().all(Zero::is_zero) && i.constant_holds() {
            continue;
        }
        if !out.contains(&i) {
            out.push(i);
        }
    }
    out
}

/// One step of Fourier–Motzkin: project away variable `v`.
fn eliminate(ineqs: &[Ineq], v: usize) -> Vec<Ineq> {
    let mut lows: Vec<&Ineq> = vec![];
    let mut highs: Vec<&Ineq> = vec![];
    let mut rest: Vec<Ineq> = vec![];
    for i in ineqs {
        if i.coeffs[v].is_positive() {
            lows.push(i);
        } else if i.coeffs[v].is_negative() {
            highs.push(i);
        } else {
            rest.push(i.clone());
        }
    }
    for l in &lows {
        for h in &highs {
            // positive combination cancelling x_v
            let a = &l.coeffs[v];
            let b = &h.coeffs[v]; // negative
            let coeffs: Vec<BigRational> = l
                .coeffs
                .iter()
                .zip(&h.coeffs)
                .map(|(lc, hc)| lc * (-b) + hc * a)
                .collect();
            let constant = &l.constant * (-b) + &h.constant * a;
            rest.push(
                Ineq { coeffs, constant, strict: l.strict || h.strict }.normalize(),
            );
        }
    }
    dedupe(rest)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn qv(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn emptiness_and_points() {
        // x >= 1, x <= 2 in R^1
        let p = Polyhedron::new(
            1,
            vec![
                Constraint::from_i64(&[1], -1, Rel::Ge),
                Constraint::from_i64(&[-1], 2, Rel::Ge),
            ],
        );
        assert!(!p.is_empty());
        let pt = p.feasible_point().unwrap();
        assert!(p.contains(&pt));

        // x > 0, x < 0 empty
        let e = Polyhedron::new(
            1,
            vec![
                Constraint::from_i64(&[1], 0, Rel::Gt),
                Constraint::from_i64(&[-1], 0, Rel::Gt),
            ],
        );
        assert!(e.is_empty());
        assert!(e.feasible_point().is_none());

        // x >= 0, x <= 0 is the origin
        let o = Polyhedron::new(
            1,
            vec![
                Constraint::from_i64(&[1], 0, Rel::Ge),
                Constraint::from_i64(&[-1], 0, Rel::Ge),
            ],
        );
        assert_eq!(o.feasible_point().unwrap(), qv(&[0]));
        assert_eq!(o.dimension(), Some(0));
    }

    #[test]
    fn strictness_matters() {
        // x >= 1, x <= 1, x != 1 (as x > 1) is empty
        let p = Polyhedron::new(
            1,
            vec![
                Constraint::from_i64(&[1], -1, Rel::Ge),
                Constraint::from_i64(&[-1], 1, Rel::Ge),
                Constraint::from_i64(&[1], -1, Rel::Gt),
            ],
        );
        assert!(p.is_empty());
    }

    #[test]
    fn dimension_of_cells() {
        // the ray w1 = w2 >= 0 in R^2
        let ray = Polyhedron::new(
            2,
            vec![
                Constraint::from_i64(&[1, -1], 0, Rel::Eq),
                Constraint::from_i64(&[1, 0], 0, Rel::Ge),
            ],
        );
        assert_eq!(ray.dimension(), Some(1));

        // quadrant
        let quad = Polyhedron::new(
            2,
            vec![
                Constraint::from_i64(&[1, 0], 0, Rel::Ge),
                Constraint::from_i64(&[0, 1], 0, Rel::Ge),
            ],
        );
        assert_eq!(quad.dimension(), Some(2));

        // implicit equality: x >= y and y >= x
        let diag = Polyhedron::new(
            2,
            vec![
                Constraint::from_i64(&[1, -1], 0, Rel::Ge),
                Constraint::from_i64(&[-1, 1], 0, Rel::Ge),
            ],
        );
        assert_eq!(diag.dimension(), Some(1));
    }

    #[test]
    fn subset_tests() {
        let quad = Polyhedron::new(
            2,
            vec![
                Constraint::from_i64(&[1, 0], 0, Rel::Ge),
                Constraint::from_i64(&[0, 1], 0, Rel::Ge),
            ],
        );
        let half = Polyhedron::new(2, vec![Constraint::from_i64(&[1, 1], 0, Rel::Ge)]);
        assert!(quad.is_subset_of(&half));
        assert!(!half.is_subset_of(&quad));
        assert!(quad.is_subset_of(&Polyhedron::full(2)));
    }

    #[test]
    fn ray_attainment() {
        // P = {(1,1)} + nonneg quadrant, shifted cone with vertex (1,1)
        let p = Polyhedron::new(
            2,
            vec![
                Constraint::from_i64(&[1, 0], -1, Rel::Ge),
                Constraint::from_i64(&[0, 1], -1, Rel::Ge),
            ],
        );
        assert!(p.attains_positive_ray(&[BigInt::from(1), BigInt::from(1)]));
        assert!(p.attains_positive_ray(&[BigInt::from(1), BigInt::from(2)]));
        assert!(!p.attains_positive_ray(&[BigInt::from(1), BigInt::from(0)]));
        assert!(!p.attains_positive_ray(&[BigInt::from(-1), BigInt::from(-1)]));

        // segment from (1,0) to (0,1): only interior directions attained
        let seg = Polyhedron::new(
            2,
            vec![
                Constraint::from_i64(&[1, 1], -1, Rel::Eq),
                Constraint::from_i64(&[1, 0], 0, Rel::Ge),
                Constraint::from_i64(&[0, 1], 0, Rel::Ge),
            ],
        );
        assert!(seg.attains_positive_ray(&[BigInt::from(1), BigInt::from(0)]));
        assert!(seg.attains_positive_ray(&[BigInt::from(1), BigInt::from(3)]));
        assert!(!seg.attains_positive_ray(&[BigInt::from(1), BigInt::from(-1)]));
    }

    #[test]
    fn feasible_point_unbounded() {
        let half = Polyhedron::new(2, vec![Constraint::from_i64(&[1, 1], -7, Rel::Gt)]);
        let pt = half.feasible_point().unwrap();
        assert!(half.contains(&pt));
        let full = Polyhedron::full(3);
        assert_eq!(full.feasible_point().unwrap(), qv(&[0, 0, 0]));
    }
}
