//! Finitely generated abelian groups in Smith normal form, real characters,
//! and abelianization of finite group presentations.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{smith_normal_form, IntMatrix};

/// `Z^rank ⊕ Z/d_1 ⊕ ... ⊕ Z/d_m` with `d_1 | d_2 | ... | d_m`, each `d_i ≥ 2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FGAbelianGroup {
    pub rank: usize,
    pub torsion_orders: Vec<BigInt>,
    pub generator_labels: Vec<String>,
}

impl FGAbelianGroup {
    pub fn free(rank: usize) -> Self {
        FGAbelianGroup {
            rank,
            torsion_orders: vec![],
            generator_labels: (1..=rank).map(|i| format!("x{i}")).collect(),
        }
    }

    pub fn free_named(labels: Vec<String>) -> Self {
        FGAbelianGroup { rank: labels.len(), torsion_orders: vec![], generator_labels: labels }
    }

    pub fn new(rank: usize, torsion_orders: Vec<BigInt>) -> Self {
        for w in torsion_orders.windows(2) {
            assert!((&w[1] % &w[0]).is_zero(), "torsion orders must form a divisibility chain");
        }
        assert!(torsion_orders.iter().all(|d| *d >= BigInt::from(2)));
        let labels = (1..=rank)
            .map(|i| format!("x{i}"))
            .chain((1..=torsion_orders.len()).map(|i| format!("y{i}")))
            .collect();
        FGAbelianGroup { rank, torsion_orders, generator_labels: labels }
    }

    pub fn torsion_len(&self) -> usize {
        self.torsion_orders.len()
    }

    pub fn is_torsion_free(&self) -> bool {
        self.torsion_orders.is_empty()
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement {
            free: vec![BigInt::zero(); self.rank],
            torsion: vec![BigInt::zero(); self.torsion_len()],
        }
    }

    /// Element from internal coordinates, reducing torsion entries mod `d_i`.
    pub fn element(&self, free: Vec<BigInt>, torsion: Vec<BigInt>) -> GroupElement {
        assert_eq!(free.len(), self.rank);
        assert_eq!(torsion.len(), self.torsion_len());
        let torsion = torsion
            .into_iter()
            .zip(&self.torsion_orders)
            .map(|(t, d)| t.mod_floor(d))
            .collect();
        GroupElement { free, torsion }
    }

    pub fn element_from_i64(&self, free: &[i64], torsion: &[i64]) -> GroupElement {
        self.element(
            free.iter().map(|&x| BigInt::from(x)).collect(),
            torsion.iter().map(|&x| BigInt::from(x)).collect(),
        )
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.element(
            a.free.iter().zip(&b.free).map(|(x, y)| x + y).collect(),
            a.torsion.iter().zip(&b.torsion).map(|(x, y)| x + y).collect(),
        )
    }

    pub fn neg(&self, a: &GroupElement) -> GroupElement {
        self.element(
            a.free.iter().map(|x| -x).collect(),
            a.torsion.iter().map(|x| -x).collect(),
        )
    }
}

/// Internal coordinates of a group element: free part plus torsion residues.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct GroupElement {
    pub free: Vec<BigInt>,
    pub torsion: Vec<BigInt>,
}

impl GroupElement {
    pub fn is_identity(&self) -> bool {
        self.free.iter().all(Zero::is_zero) && self.torsion.iter().all(Zero::is_zero)
    }
}

/// A real character of `H`, as an exact rational vector on the free part.
/// Characters kill torsion, so only `rank` coordinates are stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Character {
    pub coords: Vec<BigRational>,
}

impl Character {
    pub fn zero(n: usize) -> Self {
        Character { coords: vec![BigRational::zero(); n] }
    }

    pub fn from_i64(v: &[i64]) -> Self {
        Character { coords: v.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect() }
    }

    pub fn from_ratios(v: &[(i64, i64)]) -> Self {
        Character {
            coords: v
                .iter()
                .map(|&(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn scale(&self, r: &BigRational) -> Character {
        Character { coords: self.coords.iter().map(|c| c * r).collect() }
    }
}

/// `χ(h)`: dot product of the character with the free part. Torsion is ignored.
pub fn pair(chi: &Character, h: &GroupElement) -> Result<BigRational> {
    if chi.coords.len() != h.free.len() {
        return Err(Error::DimensionMismatch { expected: chi.coords.len(), got: h.free.len() });
    }
    Ok(chi
        .coords
        .iter()
        .zip(&h.free)
        .map(|(c, e)| c * BigRational::from_integer(e.clone()))
        .sum())
}

/// The primitive integer direction of a nonzero character: clears
/// denominators and divides by the gcd, preserving sign.
pub fn sphere_normalize(chi: &Character) -> Result<Vec<BigInt>> {
    if chi.is_zero() {
        return Err(Error::ZeroCharacter);
    }
    let lcm = chi
        .coords
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = chi.coords.iter().map(|c| c.numer() * &lcm / c.denom()).collect();
    let gcd = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    Ok(ints.into_iter().map(|x| x / &gcd).collect())
}

/// A single letter of a word: generator index and exponent `±1`.
pub type Letter = (usize, i32);

/// A word in the free group on the presentation's generators.
pub type Word = Vec<Letter>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relators: Vec<Word>,
}

impl Presentation {
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Self> {
        let g = generators.len();
        for r in &relators {
            for &(idx, e) in r {
                if idx >= g {
                    return Err(Error::InvalidPresentation(format!(
                        "generator index {idx} out of range"
                    )));
                }
                if e != 1 && e != -1 {
                    return Err(Error::InvalidPresentation(
                        "letter exponents must be ±1".into(),
                    ));
                }
            }
        }
        Ok(Presentation { generators, relators })
    }

    pub fn generator_index(&self, name: &str) -> Result<usize> {
        self.generators
            .iter()
            .position(|g| g == name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    /// Exponent-sum matrix: rows indexed by generators, one column per relator.
    pub fn exponent_matrix(&self) -> IntMatrix {
        let mut m = IntMatrix::zero(self.generators.len(), self.relators.len());
        for (j, r) in self.relators.iter().enumerate() {
            for &(i, e) in r {
                m[(i, j)] += BigInt::from(e);
            }
        }
        m
    }

    /// Parse the one-presentation-per-file text format:
    /// a `gens: a b c` line followed by `rel: ...` lines. Relator tokens are
    /// `name`, `name^-1`, or the commutator sugar `[a,b]^m`.
    pub fn parse(text: &str) -> Result<Presentation> {
        let mut generators: Option<Vec<String>> = None;
        let mut relators: Vec<Word> = vec![];
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("gens:") {
                generators = Some(rest.split_whitespace().map(String::from).collect());
            } else if let Some(rest) = line.strip_prefix("rel:") {
                let gens = generators.as_ref().ok_or_else(|| Error::Parse {
                    pos: lineno,
                    msg: "rel: before gens:".into(),
                })?;
                relators.push(parse_relator(rest, gens, lineno)?);
            } else {
                return Err(Error::Parse { pos: lineno, msg: format!("unrecognized line `{line}`") });
            }
        }
        let generators = generators.ok_or_else(|| Error::Parse {
            pos: 0,
            msg: "missing gens: line".into(),
        })?;
        Presentation::new(generators, relators)
    }
}

fn parse_relator(s: &str, gens: &[String], lineno: usize) -> Result<Word> {
    let find = |name: &str| -> Result<usize> {
        gens.iter().position(|g| g == name).ok_or_else(|| Error::Parse {
            pos: lineno,
            msg: format!("unknown generator `{name}`"),
        })
    };
    let mut word: Word = vec![];
    for tok in s.split_whitespace() {
        if let Some(body) = tok.strip_prefix('[') {
            // commutator sugar [a,b]^m
            let (inner, m) = match body.split_once(']') {
                Some((inner, rest)) => {
                    let m = match rest.strip_prefix("^") {
                        Some(e) => e.parse::<u32>().map_err(|_| Error::Parse {
                            pos: lineno,
                            msg: format!("bad commutator power in `{tok}`"),
                        })?,
                        None if rest.is_empty() => 1,
                        None => {
                            return Err(Error::Parse {
                                pos: lineno,
                                msg: format!("bad token `{tok}`"),
                            })
                        }
                    };
                    (inner, m)
                }
                None => {
                    return Err(Error::Parse { pos: lineno, msg: format!("bad token `{tok}`") })
                }
            };
            let (a, b) = inner.split_once(',').ok_or_else(|| Error::Parse {
                pos: lineno,
                msg: format!("bad commutator `{tok}`"),
            })?;
            let (ia, ib) = (find(a.trim())?, find(b.trim())?);
            for _ in 0..m {
                word.extend_from_slice(&[(ia, 1), (ib, 1), (ia, -1), (ib, -1)]);
            }
        } else if let Some((name, exp)) = tok.split_once('^') {
            let idx = find(name)?;
            let e: i64 = exp.parse().map_err(|_| Error::Parse {
                pos: lineno,
                msg: format!("bad exponent in `{tok}`"),
            })?;
            let (letter, count) = if e < 0 { ((idx, -1), -e) } else { ((idx, 1), e) };
            for _ in 0..count {
                word.push(letter);
            }
        } else {
            word.push((find(tok)?, 1));
        }
    }
    Ok(word)
}

/// The abelianization of a presentation together with the induced map from
/// words in the free group to elements of `H`.
#[derive(Debug, Clone)]
pub struct Abelianization {
    pub group: FGAbelianGroup,
    /// Image of each presentation generator in `H`.
    pub generator_images: Vec<GroupElement>,
    /// Change of basis: `H`-coordinates of a free abelian vector `e` are
    /// obtained by applying `basis` (the SNF row transform) to `e`.
    basis: IntMatrix,
    /// per SNF-row disposition: where each transformed coordinate lands
    slots: Vec<Slot>,
}

#[derive(Debug, Clone, Copy)]
enum Slot {
    Free(usize),
    Torsion(usize),
    Killed,
}

impl Abelianization {
    /// Image in `H` of a word in the presentation's free group.
    pub fn word_image(&self, word: &Word) -> GroupElement {
        let g = self.basis.cols;
        let mut exps = vec![BigInt::zero(); g];
        for &(i, e) in word {
            exps[i] += BigInt::from(e);
        }
        self.vector_image(&exps)
    }

    /// Image in `H` of an exponent vector over the generators.
    pub fn vector_image(&self, exps: &[BigInt]) -> GroupElement {
        let y = self.basis.mul_vec(exps);
        let mut free = vec![BigInt::zero(); self.group.rank];
        let mut torsion = vec![BigInt::zero(); self.group.torsion_len()];
        for (i, slot) in self.slots.iter().enumerate() {
            match slot {
                Slot::Free(k) => free[*k] = y[i].clone(),
                Slot::Torsion(k) => torsion[*k] = y[i].clone(),
                Slot::Killed => {}
            }
        }
        self.group.element(free, torsion)
    }
}

/// Abelianize a presentation via the Smith normal form of its relator
/// exponent-sum matrix.
pub fn abelianize(p: &Presentation) -> Abelianization {
    let m = p.exponent_matrix();
    let (u, d, _v) = smith_normal_form(&m);
    let g = p.generators.len();
    let r = p.relators.len();

    // y = U x are coordinates in which the relation lattice is diagonal:
    // y_i is Z/d_i when d_i >= 2, killed when d_i == 1, free when d_i == 0
    // (or when i is past the diagonal).
    let mut slots = vec![Slot::Killed; g];
    let mut torsion_orders: Vec<BigInt> = vec![];
    let mut free_count = 0usize;
    // first pass: classify
    let mut torsion_rows: Vec<usize> = vec![];
    for i in 0..g {
        let di = if i < r.min(g) { d[(i, i)].clone() } else { BigInt::zero() };
        if di.is_zero() {
            slots[i] = Slot::Free(free_count);
            free_count += 1;
        } else if di.is_one() {
            slots[i] = Slot::Killed;
        } else {
            torsion_rows.push(i);
        }
    }
    for (k, &i) in torsion_rows.iter().enumerate() {
        slots[i] = Slot::Torsion(k);
        torsion_orders.push(d[(i, i)].clone());
    }
    let group = FGAbelianGroup::new(free_count, torsion_orders);
    let mut ab = Abelianization { group, generator_images: vec![], basis: u, slots };
    ab.generator_images = generator_images(&ab, g);
    // basis sign convention: the first generator hitting each free coordinate
    // does so with a positive entry
    for k in 0..ab.group.rank {
        let flip = ab
            .generator_images
            .iter()
            .map(|img| &img.free[k])
            .find(|c| !c.is_zero())
            .map_or(false, |c| c.is_negative());
        if flip {
            let row = ab
                .slots
                .iter()
                .position(|s| matches!(s, Slot::Free(kk) if *kk == k))
                .expect("free slot");
            for j in 0..ab.basis.cols {
                let t = -ab.basis[(row, j)].clone();
                ab.basis[(row, j)] = t;
            }
        }
    }
    ab.generator_images = generator_images(&ab, g);
    ab
}

fn generator_images(ab: &Abelianization, g: usize) -> Vec<GroupElement> {
    (0..g)
        .map(|i| {
            let mut e = vec![BigInt::zero(); g];
            e[i] = BigInt::one();
            ab.vector_image(&e)
        })
        .collect()
}

impl fmt::Display for FGAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = vec![];
        if self.rank > 0 {
            parts.push(if self.rank == 1 { "Z".into() } else { format!("Z^{}", self.rank) });
        }
        for d in &self.torsion_orders {
            parts.push(format!("Z/{d}"));
        }
        if parts.is_empty() {
            parts.push("0".into());
        }
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(letters: &[(usize, i32)]) -> Word {
        letters.to_vec()
    }

    #[test]
    fn abelianize_bs12() {
        // BS(1,2) = <a,b | a b a^-1 b^-2>
        let p = Presentation::new(
            vec!["a".into(), "b".into()],
            vec![w(&[(0, 1), (1, 1), (0, -1), (1, -1), (1, -1)])],
        )
        .unwrap();
        let ab = abelianize(&p);
        assert_eq!(ab.group.rank, 1);
        assert!(ab.group.torsion_orders.is_empty());
        let a = &ab.generator_images[0];
        let b = &ab.generator_images[1];
        assert!(b.is_identity());
        assert_eq!(a.free[0], BigInt::one());
    }

    #[test]
    fn abelianize_commutator_power() {
        // <a,b | [a,b]^m> abelianizes to Z^2
        let p = Presentation::parse("gens: a b\nrel: [a,b]^3\n").unwrap();
        let ab = abelianize(&p);
        assert_eq!(ab.group.rank, 2);
        assert!(ab.group.torsion_orders.is_empty());
        for r in &p.relators {
            assert!(ab.word_image(r).is_identity());
        }
    }

    #[test]
    fn abelianize_cyclic() {
        let p = Presentation::parse("gens: a\nrel: a a a\n").unwrap();
        let ab = abelianize(&p);
        assert_eq!(ab.group.rank, 0);
        assert_eq!(ab.group.torsion_orders, vec![BigInt::from(3)]);
    }

    #[test]
    fn relators_die_in_h() {
        let p = Presentation::parse("gens: a b\nrel: a b a^-1 b^-2\nrel: [a,b]\n").unwrap();
        let ab = abelianize(&p);
        for r in &p.relators {
            assert!(ab.word_image(r).is_identity());
        }
    }

    #[test]
    fn pair_and_normalize() {
        let h = FGAbelianGroup::free(2);
        let chi = Character::from_i64(&[1, 0]);
        let g = h.element_from_i64(&[2, 5], &[]);
        assert_eq!(pair(&chi, &g).unwrap(), BigRational::from_integer(BigInt::from(2)));

        let chi2 = Character::from_ratios(&[(1, 2), (1, 3)]);
        let g2 = h.element_from_i64(&[2, 3], &[]);
        assert_eq!(pair(&chi2, &g2).unwrap(), BigRational::from_integer(BigInt::from(2)));

        assert_eq!(
            sphere_normalize(&Character::from_ratios(&[(2, 3), (4, 3)])).unwrap(),
            vec![BigInt::from(1), BigInt::from(2)]
        );
        assert_eq!(
            sphere_normalize(&Character::from_i64(&[-1, -1])).unwrap(),
            vec![BigInt::from(-1), BigInt::from(-1)]
        );
        assert_eq!(
            sphere_normalize(&Character::from_i64(&[0, 5])).unwrap(),
            vec![BigInt::zero(), BigInt::one()]
        );
        assert!(sphere_normalize(&Character::zero(2)).is_err());
    }

    #[test]
    fn pair_kills_torsion() {
        let h = FGAbelianGroup::new(1, vec![BigInt::from(3)]);
        let chi = Character::from_i64(&[7]);
        let t = h.element_from_i64(&[0], &[2]);
        assert!(pair(&chi, &t).unwrap().is_zero());
    }
}
