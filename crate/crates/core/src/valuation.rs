//! Valuations on the coefficient ring, behind a common strategy trait.
//!
//! The three valuations that matter on `Z` — trivial, `p`-adic, and mod-`p` —
//! are each a separate strategy implementing [`Valuation`]. Strategies are
//! looked up by name (`trivial`, `padic:p`, `modp:p`) so the CLI and config
//! files can select them at runtime.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// A valuation value: an exact rational or `∞`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Val {
    Finite(BigRational),
    Infinity,
}

impl Val {
    pub fn finite_i64(n: i64) -> Self {
        Val::Finite(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Val::Finite(_))
    }

    pub fn as_finite(&self) -> Option<&BigRational> {
        match self {
            Val::Finite(r) => Some(r),
            Val::Infinity => None,
        }
    }
}

impl PartialOrd for Val {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Val {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Val::Infinity, Val::Infinity) => Ordering::Equal,
            (Val::Infinity, _) => Ordering::Greater,
            (_, Val::Infinity) => Ordering::Less,
            (Val::Finite(a), Val::Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for Val {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Val::Finite(r) => write!(f, "{r}"),
            Val::Infinity => write!(f, "inf"),
        }
    }
}

/// A non-negative valuation on `Z` (equivalently, on the coefficient field
/// the tropicalization is taken over).
pub trait Valuation: fmt::Debug + Send + Sync {
    /// Registry name, e.g. `trivial`, `padic:2`, `modp:3`.
    fn name(&self) -> String;

    /// Value of an integer coefficient.
    fn of_int(&self, c: &BigInt) -> Val;

    /// `Some(p)` when the valuation factors through the residue field `F_p`
    /// (the mod-p valuation): coefficients divisible by `p` are dead.
    fn residue_prime(&self) -> Option<u64> {
        None
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Trivial;

impl Valuation for Trivial {
    fn name(&self) -> String {
        "trivial".into()
    }

    fn of_int(&self, c: &BigInt) -> Val {
        if c.is_zero() {
            Val::Infinity
        } else {
            Val::finite_i64(0)
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct PAdic {
    pub p: u64,
}

impl Valuation for PAdic {
    fn name(&self) -> String {
        format!("padic:{}", self.p)
    }

    fn of_int(&self, c: &BigInt) -> Val {
        if c.is_zero() {
            return Val::Infinity;
        }
        let p = BigInt::from(self.p);
        let mut n = c.abs();
        let mut ord = 0i64;
        while (&n % &p).is_zero() {
            n /= &p;
            ord += 1;
        }
        Val::finite_i64(ord)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct ModP {
    pub p: u64,
}

impl Valuation for ModP {
    fn name(&self) -> String {
        format!("modp:{}", self.p)
    }

    fn of_int(&self, c: &BigInt) -> Val {
        if (c % BigInt::from(self.p)).is_zero() {
            Val::Infinity
        } else {
            Val::finite_i64(0)
        }
    }

    fn residue_prime(&self) -> Option<u64> {
        Some(self.p)
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn trivial() -> Arc<dyn Valuation> {
    Arc::new(Trivial)
}

pub fn padic(p: u64) -> Result<Arc<dyn Valuation>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(Arc::new(PAdic { p }))
}

pub fn modp(p: u64) -> Result<Arc<dyn Valuation>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(Arc::new(ModP { p }))
}

/// Look up a valuation strategy by registry name.
pub fn from_name(name: &str) -> Result<Arc<dyn Valuation>> {
    if name == "trivial" {
        return Ok(trivial());
    }
    if let Some(p) = name.strip_prefix("padic:") {
        let p: u64 = p.parse().map_err(|_| Error::UnknownValuation(name.into()))?;
        return padic(p);
    }
    if let Some(p) = name.strip_prefix("modp:") {
        let p: u64 = p.parse().map_err(|_| Error::UnknownValuation(name.into()))?;
        return modp(p);
    }
    Err(Error::UnknownValuation(name.into()))
}
