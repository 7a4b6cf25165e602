//! Exact Laurent-polynomial arithmetic over `Z` and `F_p` on a finitely
//! generated abelian group: ring operations, coefficient valuations,
//! initial forms, unit tests, content/primitive decomposition and gcd.

mod gcd;
mod parse;

pub use gcd::{gcd as laurent_gcd, gcd_many};
pub use parse::{infer_variables, parse_polynomial};

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};

use crate::abelian::{pair, Character, FGAbelianGroup, GroupElement};
use crate::error::{Error, Result};
use crate::valuation::{Val, Valuation};

/// Coefficient domain of a Laurent polynomial: `Z` or `F_p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoeffDomain {
    Int,
    Fp(u64),
}

impl fmt::Display for CoeffDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoeffDomain::Int => write!(f, "Z"),
            CoeffDomain::Fp(p) => write!(f, "F{p}"),
        }
    }
}

/// An element of `ZH` or `F_p H`: a finite map from group elements to
/// nonzero coefficients, kept in canonical sorted form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    pub group: FGAbelianGroup,
    pub domain: CoeffDomain,
    terms: BTreeMap<GroupElement, BigInt>,
}

impl LaurentPoly {
    pub fn zero(group: FGAbelianGroup, domain: CoeffDomain) -> Self {
        LaurentPoly { group, domain, terms: BTreeMap::new() }
    }

    pub fn from_terms(
        group: FGAbelianGroup,
        domain: CoeffDomain,
        terms: impl IntoIterator<Item = (GroupElement, BigInt)>,
    ) -> Self {
        let mut poly = Self::zero(group, domain);
        for (g, c) in terms {
            poly.add_term(g, c);
        }
        poly
    }

    /// Convenience constructor on a torsion-free group from `(exponents, coeff)`.
    pub fn from_exponents(group: &FGAbelianGroup, terms: &[(&[i64], i64)]) -> Self {
        Self::from_terms(
            group.clone(),
            CoeffDomain::Int,
            terms.iter().map(|(e, c)| (group.element_from_i64(e, &[]), BigInt::from(*c))),
        )
    }

    pub fn constant(group: FGAbelianGroup, c: i64) -> Self {
        let id = group.identity();
        Self::from_terms(group, CoeffDomain::Int, [(id, BigInt::from(c))])
    }

    fn reduce_coeff(&self, c: BigInt) -> BigInt {
        match self.domain {
            CoeffDomain::Int => c,
            CoeffDomain::Fp(p) => c.mod_floor(&BigInt::from(p)),
        }
    }

    fn add_term(&mut self, g: GroupElement, c: BigInt) {
        let c = self.reduce_coeff(c);
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        let domain = self.domain;
        match self.terms.entry(g) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let v = match domain {
                    CoeffDomain::Int => e.get() + &c,
                    CoeffDomain::Fp(p) => (e.get() + &c).mod_floor(&BigInt::from(p)),
                };
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GroupElement, &BigInt)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &GroupElement> {
        self.terms.keys()
    }

    pub fn coeff(&self, g: &GroupElement) -> BigInt {
        self.terms.get(g).cloned().unwrap_or_else(BigInt::zero)
    }

    fn check_compatible(&self, other: &LaurentPoly) -> Result<()> {
        if self.group != other.group {
            return Err(Error::GroupMismatch);
        }
        if self.domain != other.domain {
            return Err(Error::DomainMismatch(
                self.domain.to_string(),
                other.domain.to_string(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (g, c) in &other.terms {
            out.add_term(g.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> LaurentPoly {
        LaurentPoly {
            group: self.group.clone(),
            domain: self.domain,
            terms: self
                .terms
                .iter()
                .map(|(g, c)| (g.clone(), self.reduce_coeff(-c)))
                .collect(),
        }
    }

    pub fn sub(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.check_compatible(other)?;
        let mut out = LaurentPoly::zero(self.group.clone(), self.domain);
        for (g, c) in &self.terms {
            for (h, d) in &other.terms {
                out.add_term(self.group.add(g, h), c * d);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigInt) -> LaurentPoly {
        let mut out = LaurentPoly::zero(self.group.clone(), self.domain);
        for (g, k) in &self.terms {
            out.add_term(g.clone(), k * c);
        }
        out
    }

    /// Multiply by the monomial `x^shift` (free part only).
    pub fn shift(&self, shift: &[BigInt]) -> LaurentPoly {
        assert_eq!(shift.len(), self.group.rank);
        let mut out = LaurentPoly::zero(self.group.clone(), self.domain);
        for (g, c) in &self.terms {
            let free = g.free.iter().zip(shift).map(|(a, b)| a + b).collect();
            out.add_term(self.group.element(free, g.torsion.clone()), c.clone());
        }
        out
    }

    /// `deg_χ(f)`: the minimal value of `χ(h)` over the support.
    pub fn chi_degree(&self, chi: &Character) -> Result<BigRational> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut best: Option<BigRational> = None;
        for g in self.terms.keys() {
            let v = pair(chi, g)?;
            best = Some(match best {
                Some(b) => b.min(v),
                None => v,
            });
        }
        Ok(best.unwrap())
    }

    /// `in_χ(f)` over the ring: the sub-polynomial on the argmin of `χ`.
    pub fn initial_form_ring(&self, chi: &Character) -> Result<LaurentPoly> {
        let deg = self.chi_degree(chi)?;
        let mut out = LaurentPoly::zero(self.group.clone(), self.domain);
        for (g, c) in &self.terms {
            if pair(chi, g)? == deg {
                out.add_term(g.clone(), c.clone());
            }
        }
        Ok(out)
    }

    /// `in_{w,v}(f)` over a valued field: the sub-polynomial on the argmin of
    /// `v(a_u) + χ(u)`. Terms whose coefficient valuation is `∞` (mod-p case)
    /// do not take part; if all terms are dead the polynomial vanishes in the
    /// residue field and an error is raised.
    pub fn initial_form_field(
        &self,
        chi: &Character,
        v: &Arc<dyn Valuation>,
    ) -> Result<LaurentPoly> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        self.check_valuation(v)?;
        let mut best: Option<BigRational> = None;
        for (g, c) in &self.terms {
            if let Val::Finite(val) = v.of_int(c) {
                let t = val + pair(chi, g)?;
                best = Some(match best {
                    Some(b) => b.min(t),
                    None => t,
                });
            }
        }
        let Some(best) = best else {
            return Err(Error::Unsupported(format!(
                "polynomial vanishes in the residue field of {}",
                v.name()
            )));
        };
        let mut out = LaurentPoly::zero(self.group.clone(), self.domain);
        for (g, c) in &self.terms {
            if let Val::Finite(val) = v.of_int(c) {
                if val + pair(chi, g)? == best {
                    out.add_term(g.clone(), c.clone());
                }
            }
        }
        Ok(out)
    }

    pub fn check_valuation(&self, v: &Arc<dyn Valuation>) -> Result<()> {
        match (self.domain, v.residue_prime()) {
            (CoeffDomain::Fp(p), Some(q)) if p != q => Err(Error::IncompatibleValuation {
                valuation: v.name(),
                domain: self.domain.to_string(),
            }),
            _ => Ok(()),
        }
    }

    /// Whether `f` is a unit of `ZH`. For torsion-free `H` the units are
    /// exactly the single terms with coefficient `±1`. With torsion, a single
    /// `±1` term is still a unit, but the general question is undecided here.
    pub fn is_unit_over_z(&self) -> Result<bool> {
        assert_eq!(self.domain, CoeffDomain::Int);
        if self.terms.len() == 1 {
            let c = self.terms.values().next().unwrap();
            if c.abs().is_one() {
                return Ok(true);
            }
            // augmentation maps units to ±1, so a lone non-unit coefficient
            // is never a unit even with torsion
            return Ok(false);
        }
        if self.group.is_torsion_free() {
            Ok(false)
        } else {
            Err(Error::UndecidedTorsion)
        }
    }

    /// Integer content (non-negative) and primitive part.
    pub fn content_primitive(&self) -> (BigInt, LaurentPoly) {
        let content = self
            .terms
            .values()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if content.is_zero() {
            return (content, self.clone());
        }
        let prim = LaurentPoly {
            group: self.group.clone(),
            domain: self.domain,
            terms: self.terms.iter().map(|(g, c)| (g.clone(), c / &content)).collect(),
        };
        (content, prim)
    }

    /// Reduce an integral polynomial mod `p`; may return zero.
    pub fn reduce_mod_p(&self, p: u64) -> Result<LaurentPoly> {
        assert_eq!(self.domain, CoeffDomain::Int);
        if !crate::valuation::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(LaurentPoly::from_terms(
            self.group.clone(),
            CoeffDomain::Fp(p),
            self.terms.iter().map(|(g, c)| (g.clone(), c.clone())),
        ))
    }

    /// Per-coordinate minimum of the free exponents over the support.
    fn free_mins(&self) -> Vec<BigInt> {
        let n = self.group.rank;
        let mut mins = vec![BigInt::zero(); n];
        for (i, m) in mins.iter_mut().enumerate() {
            *m = self
                .terms
                .keys()
                .map(|g| g.free[i].clone())
                .min()
                .unwrap_or_else(BigInt::zero);
        }
        mins
    }

    /// Leading coefficient in the canonical term order (largest key).
    pub fn leading_coeff(&self) -> BigInt {
        self.terms
            .iter()
            .next_back()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(BigInt::zero)
    }

    /// Unit normalization: translate the free support to the non-negative
    /// orthant touching zero in every coordinate, then make the leading
    /// coefficient positive. Identity on zero.
    pub fn normalize_unit(&self) -> LaurentPoly {
        if self.is_zero() {
            return self.clone();
        }
        let shift: Vec<BigInt> = self.free_mins().into_iter().map(|m| -m).collect();
        let mut out = self.shift(&shift);
        if out.leading_coeff().is_negative() {
            out = out.neg();
        }
        out
    }

    /// Exact division in the Laurent ring; `None` when not divisible.
    /// Requires a torsion-free group.
    pub fn exact_div(&self, divisor: &LaurentPoly) -> Option<LaurentPoly> {
        assert!(self.group.is_torsion_free());
        assert!(!divisor.is_zero());
        if self.is_zero() {
            return Some(self.clone());
        }
        let f_min = self.free_mins();
        let g_min = divisor.free_mins();
        let f = self.shift(&f_min.iter().map(|m| -m).collect::<Vec<_>>());
        let g = divisor.shift(&g_min.iter().map(|m| -m).collect::<Vec<_>>());
        let q = ordinary_exact_div(&f, &g)?;
        let back: Vec<BigInt> = f_min.iter().zip(&g_min).map(|(a, b)| a - b).collect();
        Some(q.shift(&back))
    }

    /// Evaluate at a point of the rational torus (torsion-free group).
    pub fn eval_rational(&self, point: &[BigRational]) -> BigRational {
        assert!(self.group.is_torsion_free());
        assert_eq!(point.len(), self.group.rank);
        let mut acc = BigRational::zero();
        for (g, c) in &self.terms {
            let mut m = BigRational::from_integer(c.clone());
            for (x, e) in point.iter().zip(&g.free) {
                let e_i64 = i64::try_from(e).expect("exponent fits i64");
                m *= Pow::pow(x.clone(), e_i64);
            }
            acc += m;
        }
        acc
    }
}

/// Exact division of ordinary (non-negative exponent) polynomials by
/// repeated leading-term elimination in the lexicographic order.
fn ordinary_exact_div(f: &LaurentPoly, g: &LaurentPoly) -> Option<LaurentPoly> {
    let mut rem = f.clone();
    let mut quot = LaurentPoly::zero(f.group.clone(), f.domain);
    let (g_lead, g_coeff) = {
        let (k, c) = g.terms.iter().next_back().unwrap();
        (k.clone(), c.clone())
    };
    while !rem.is_zero() {
        let (r_lead, r_coeff) = {
            let (k, c) = rem.terms.iter().next_back().unwrap();
            (k.clone(), c.clone())
        };
        let exp: Vec<BigInt> = r_lead
            .free
            .iter()
            .zip(&g_lead.free)
            .map(|(a, b)| a - b)
            .collect();
        if exp.iter().any(|e| e.is_negative()) {
            return None;
        }
        let (q, r) = r_coeff.div_rem(&g_coeff);
        if !r.is_zero() {
            return None;
        }
        let t = LaurentPoly::from_terms(
            f.group.clone(),
            f.domain,
            [(f.group.element(exp, vec![]), q)],
        );
        quot = quot.add(&t).unwrap();
        rem = rem.sub(&t.mul(g).unwrap()).unwrap();
    }
    Some(quot)
}

/// `v(c)` for a coefficient under the chosen valuation strategy.
pub fn coefficient_valuation(c: &BigInt, v: &Arc<dyn Valuation>) -> Val {
    v.of_int(c)
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let labels = &self.group.generator_labels;
        let mut first = true;
        // print in descending canonical term order
        for (g, c) in self.terms.iter().rev() {
            let mut mono = String::new();
            for (i, e) in g.free.iter().chain(g.torsion.iter()).enumerate() {
                if e.is_zero() {
                    continue;
                }
                if !mono.is_empty() {
                    mono.push('*');
                }
                if e.is_one() {
                    mono.push_str(&labels[i]);
                } else {
                    mono.push_str(&format!("{}^{}", labels[i], e));
                }
            }
            let sign_neg = c.is_negative();
            let abs = c.abs();
            if first {
                if sign_neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if sign_neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{abs}*{mono}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::valuation;

    fn z2() -> FGAbelianGroup {
        FGAbelianGroup::free(2)
    }

    fn z1() -> FGAbelianGroup {
        FGAbelianGroup::free(1)
    }

    #[test]
    fn ring_ops() {
        let g = z1();
        // (x-1)(x+1) = x^2-1
        let f1 = LaurentPoly::from_exponents(&g, &[(&[1], 1), (&[0], -1)]);
        let f2 = LaurentPoly::from_exponents(&g, &[(&[1], 1), (&[0], 1)]);
        let expect = LaurentPoly::from_exponents(&g, &[(&[2], 1), (&[0], -1)]);
        assert_eq!(f1.mul(&f2).unwrap(), expect);
        assert!(f1.add(&f1.neg()).unwrap().is_zero());
    }

    #[test]
    fn mod2_reduction() {
        let g = z2();
        let f = LaurentPoly::from_exponents(&g, &[(&[1, 0], 1), (&[0, 1], 1), (&[0, 0], -2)]);
        let r = f.reduce_mod_p(2).unwrap();
        assert_eq!(r.num_terms(), 2);
        assert_eq!(r.to_string(), "x1 + x2");
        // 2x mod 2 = 0
        let two_x = LaurentPoly::from_exponents(&z1(), &[(&[1], 2)]);
        assert!(two_x.reduce_mod_p(2).unwrap().is_zero());
        // x-2 mod 3 = x+1
        let f = LaurentPoly::from_exponents(&z1(), &[(&[1], 1), (&[0], -2)]);
        assert_eq!(f.reduce_mod_p(3).unwrap().to_string(), "x1 + 1");
    }

    #[test]
    fn chi_degree_cases() {
        let g = z2();
        let f = LaurentPoly::from_exponents(&g, &[(&[1, 0], 1), (&[0, 1], 1), (&[0, 0], -2)]);
        assert_eq!(
            f.chi_degree(&Character::from_i64(&[1, 1])).unwrap(),
            BigRational::zero()
        );
        let f1 = LaurentPoly::from_exponents(&z1(), &[(&[1], 1), (&[0], -2)]);
        assert_eq!(f1.chi_degree(&Character::from_i64(&[1])).unwrap(), BigRational::zero());
        let f2 = LaurentPoly::from_exponents(&z1(), &[(&[-1], 1), (&[1], 1)]);
        assert_eq!(
            f2.chi_degree(&Character::from_i64(&[1])).unwrap(),
            -BigRational::one()
        );
    }

    #[test]
    fn initial_forms_ring() {
        let g = z2();
        let f = LaurentPoly::from_exponents(&g, &[(&[1, 0], 1), (&[0, 1], 1), (&[0, 0], -2)]);
        let i1 = f.initial_form_ring(&Character::from_i64(&[1, 1])).unwrap();
        assert_eq!(i1.to_string(), "-2");
        let i2 = f.initial_form_ring(&Character::from_i64(&[0, 0])).unwrap();
        assert_eq!(i2, f);
        let i3 = f.initial_form_ring(&Character::from_i64(&[1, 0])).unwrap();
        assert_eq!(i3.to_string(), "x2 - 2");
    }

    #[test]
    fn initial_forms_field() {
        let g = z2();
        let f = LaurentPoly::from_exponents(&g, &[(&[1, 0], 1), (&[0, 1], 1), (&[0, 0], -2)]);
        let v2 = valuation::padic(2).unwrap();
        let i1 = f.initial_form_field(&Character::from_i64(&[1, 1]), &v2).unwrap();
        assert_eq!(i1, f);
        let v0 = valuation::trivial();
        let i2 = f.initial_form_field(&Character::from_i64(&[1, 1]), &v0).unwrap();
        assert_eq!(i2.to_string(), "-2");
        let i3 = f.initial_form_field(&Character::from_i64(&[0, 0]), &v2).unwrap();
        assert_eq!(i3.to_string(), "x1 + x2");
    }

    #[test]
    fn unit_detection() {
        let g = z2();
        let m = LaurentPoly::from_exponents(&g, &[(&[1, -3], -1)]);
        assert!(m.is_unit_over_z().unwrap());
        let c = LaurentPoly::from_exponents(&g, &[(&[0, 0], -2)]);
        assert!(!c.is_unit_over_z().unwrap());
        let s = LaurentPoly::from_exponents(&g, &[(&[1, 0], 1), (&[0, 1], 1)]);
        assert!(!s.is_unit_over_z().unwrap());

        let torsion = FGAbelianGroup::new(1, vec![BigInt::from(2)]);
        let single = LaurentPoly::from_terms(
            torsion.clone(),
            CoeffDomain::Int,
            [(torsion.element_from_i64(&[0], &[1]), BigInt::one())],
        );
        assert!(single.is_unit_over_z().unwrap());
        let two = LaurentPoly::from_terms(
            torsion.clone(),
            CoeffDomain::Int,
            [
                (torsion.element_from_i64(&[0], &[1]), BigInt::one()),
                (torsion.element_from_i64(&[0], &[0]), BigInt::one()),
            ],
        );
        assert!(matches!(two.is_unit_over_z(), Err(Error::UndecidedTorsion)));
    }

    #[test]
    fn exact_division() {
        let g = z2();
        let a = LaurentPoly::from_exponents(&g, &[(&[1, 0], 1), (&[0, 0], -1)]);
        let b = LaurentPoly::from_exponents(&g, &[(&[0, 1], 1), (&[0, 0], -1)]);
        let prod = a.mul(&b).unwrap();
        assert_eq!(prod.exact_div(&a).unwrap(), b);
        assert_eq!(prod.exact_div(&b).unwrap(), a);
        assert!(a.exact_div(&b).is_none());
        // Laurent shifts divide out
        let shifted = prod.shift(&[BigInt::from(-3), BigInt::from(2)]);
        let q = shifted.exact_div(&a).unwrap();
        assert_eq!(q.mul(&a).unwrap(), shifted);
    }

    #[test]
    fn normalization() {
        let g = z2();
        // (x2^-1 - 1)(x1^-1 - 1) normalizes to (x1-1)(x2-1)
        let f = LaurentPoly::from_exponents(
            &g,
            &[(&[-1, -1], 1), (&[-1, 0], -1), (&[0, -1], -1), (&[0, 0], 1)],
        );
        let a = LaurentPoly::from_exponents(&g, &[(&[1, 0], 1), (&[0, 0], -1)]);
        let b = LaurentPoly::from_exponents(&g, &[(&[0, 1], 1), (&[0, 0], -1)]);
        assert_eq!(f.normalize_unit(), a.mul(&b).unwrap());
    }

    #[test]
    fn content_and_eval() {
        let g = z1();
        let f = LaurentPoly::from_exponents(&g, &[(&[1], 6), (&[0], 10)]);
        let (c, prim) = f.content_primitive();
        assert_eq!(c, BigInt::from(2));
        assert_eq!(prim.to_string(), "3*x1 + 5");
        let x = BigRational::new(BigInt::from(1), BigInt::from(2));
        assert_eq!(
            f.eval_rational(&[x]),
            BigRational::from_integer(BigInt::from(13))
        );
    }
}
