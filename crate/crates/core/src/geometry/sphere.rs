//! Exact subsets of the unit circle `S^1` built from rational directions:
//! finitely many points and arcs with open or closed endpoints, kept in a
//! canonical form so set equality is structural equality.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// A primitive integer direction in the plane (a point of `S^1` with
/// rational slope).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Dir {
    pub x: BigInt,
    pub y: BigInt,
}

impl Dir {
    pub fn new(x: BigInt, y: BigInt) -> Result<Dir> {
        if x.is_zero() && y.is_zero() {
            return Err(Error::ZeroCharacter);
        }
        let g = x.gcd(&y);
        Ok(Dir { x: x / &g, y: y / &g })
    }

    pub fn from_i64(x: i64, y: i64) -> Dir {
        Dir::new(BigInt::from(x), BigInt::from(y)).unwrap()
    }

    /// Quadrant index for the counterclockwise angle order starting at the
    /// positive x-axis.
    fn quadrant(&self) -> u8 {
        if self.x.is_positive() && !self.y.is_negative() {
            0
        } else if !self.x.is_positive() && self.y.is_positive() {
            1
        } else if self.x.is_negative() && !self.y.is_positive() {
            2
        } else {
            3
        }
    }

    fn cross(&self, other: &Dir) -> BigInt {
        &self.x * &other.y - &self.y * &other.x
    }

    /// Interior direction of the counterclockwise sector from `self` to
    /// `other`; exact when the angular gap is below a half turn.
    fn midpoint(&self, other: &Dir) -> Dir {
        Dir::new(&self.x + &other.x, &self.y + &other.y).expect("directions not opposite")
    }
}

impl PartialOrd for Dir {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dir {
    fn cmp(&self, other: &Self) -> Ordering {
        self.quadrant().cmp(&other.quadrant()).then_with(|| {
            let c = self.cross(other);
            if c.is_positive() {
                Ordering::Less
            } else if c.is_negative() {
                Ordering::Greater
            } else {
                Ordering::Equal
            }
        })
    }
}

impl fmt::Display for Dir {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// A counterclockwise arc from `start` to `end`, with independently open or
/// closed endpoints. Equal endpoints mean a full turn: the whole circle with
/// the shared endpoint included iff either flag is closed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ArcPiece {
    pub start: Dir,
    pub end: Dir,
    pub start_closed: bool,
    pub end_closed: bool,
}

impl ArcPiece {
    pub fn new(start: Dir, end: Dir, start_closed: bool, end_closed: bool) -> Self {
        ArcPiece { start, end, start_closed, end_closed }
    }

    pub fn closed(start: Dir, end: Dir) -> Self {
        Self::new(start, end, true, true)
    }

    fn contains(&self, d: &Dir) -> bool {
        if self.start == self.end {
            return *d != self.start || self.start_closed || self.end_closed;
        }
        if *d == self.start {
            return self.start_closed;
        }
        if *d == self.end {
            return self.end_closed;
        }
        match self.start.cmp(&self.end) {
            Ordering::Less => *d > self.start && *d < self.end,
            Ordering::Greater => *d > self.start || *d < self.end,
            Ordering::Equal => unreachable!(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Item {
    Point(Dir),
    Arc(ArcPiece),
}

impl Item {
    fn contains(&self, d: &Dir) -> bool {
        match self {
            Item::Point(p) => p == d,
            Item::Arc(a) => a.contains(d),
        }
    }

    fn start(&self) -> &Dir {
        match self {
            Item::Point(p) => p,
            Item::Arc(a) => &a.start,
        }
    }
}

/// A canonical finite union of points and arcs on `S^1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CircleSet {
    pub full: bool,
    pub items: Vec<Item>,
}

impl CircleSet {
    pub fn empty() -> Self {
        CircleSet { full: false, items: vec![] }
    }

    pub fn full_circle() -> Self {
        CircleSet { full: true, items: vec![] }
    }

    pub fn is_empty(&self) -> bool {
        !self.full && self.items.is_empty()
    }

    pub fn from_points(points: impl IntoIterator<Item = Dir>) -> Self {
        Self::from_pieces(points.into_iter().collect(), vec![])
    }

    pub fn contains(&self, d: &Dir) -> bool {
        self.full || self.items.iter().any(|i| i.contains(d))
    }

    pub fn union(&self, other: &CircleSet) -> CircleSet {
        if self.full || other.full {
            return CircleSet::full_circle();
        }
        let mut points = vec![];
        let mut arcs = vec![];
        for item in self.items.iter().chain(&other.items) {
            match item {
                Item::Point(p) => points.push(p.clone()),
                Item::Arc(a) => arcs.push(a.clone()),
            }
        }
        CircleSet::from_pieces(points, arcs)
    }

    /// Canonicalize an arbitrary union of points and arcs.
    pub fn from_pieces(points: Vec<Dir>, arcs: Vec<ArcPiece>) -> CircleSet {
        let mut bounds: Vec<Dir> = points.clone();
        for a in &arcs {
            bounds.push(a.start.clone());
            bounds.push(a.end.clone());
        }
        Self::from_indicator(bounds, |d| {
            points.iter().any(|p| p == d) || arcs.iter().any(|a| a.contains(d))
        })
    }

    /// Complement within `S^1`; boundary flags flip.
    pub fn complement(&self) -> CircleSet {
        let mut bounds = vec![];
        for item in &self.items {
            match item {
                Item::Point(p) => bounds.push(p.clone()),
                Item::Arc(a) => {
                    bounds.push(a.start.clone());
                    bounds.push(a.end.clone());
                }
            }
        }
        Self::from_indicator(bounds, |d| !self.contains(d))
    }

    /// Build the set from a membership predicate. The predicate must be
    /// constant on each open arc between consecutive boundary directions
    /// (after the four axes are added); it is sampled once per atom.
    pub fn from_indicator(extra_bounds: Vec<Dir>, covered_by: impl Fn(&Dir) -> bool) -> CircleSet {
        // the four axes keep every angular gap below a half turn
        let mut bounds: Vec<Dir> = vec![
            Dir::from_i64(1, 0),
            Dir::from_i64(0, 1),
            Dir::from_i64(-1, 0),
            Dir::from_i64(0, -1),
        ];
        bounds.extend(extra_bounds);
        bounds.sort();
        bounds.dedup();
        let m = bounds.len();

        // alternating atoms: point b_0, gap (b_0,b_1), point b_1, ...
        let mut covered = Vec::with_capacity(2 * m);
        for i in 0..m {
            covered.push(covered_by(&bounds[i]));
            let rep = bounds[i].midpoint(&bounds[(i + 1) % m]);
            covered.push(covered_by(&rep));
        }
        if covered.iter().all(|&c| c) {
            return CircleSet::full_circle();
        }
        if covered.iter().all(|&c| !c) {
            return CircleSet::empty();
        }

        // maximal circular runs of covered atoms
        let total = 2 * m;
        let mut items = vec![];
        let mut i = 0;
        // rotate to start just after an uncovered atom
        let offset = (0..total).find(|&k| !covered[k]).unwrap() + 1;
        while i < total {
            let k = (offset + i) % total;
            if !covered[k] {
                i += 1;
                continue;
            }
            let run_start = i;
            while i < total && covered[(offset + i) % total] {
                i += 1;
            }
            let run_end = i - 1; // inclusive
            items.push(make_item(&bounds, offset, run_start, run_end));
        }
        items.sort_by(|a, b| a.start().cmp(b.start()));
        CircleSet { full: false, items }
    }
}

/// Build the item for a covered run of atoms `run_start..=run_end` (indices
/// relative to `offset` in the alternating point/gap atom list).
fn make_item(bounds: &[Dir], offset: usize, run_start: usize, run_end: usize) -> Item {
    let m = bounds.len();
    let total = 2 * m;
    // atom index -> (is_point, boundary index)
    let atom = |i: usize| -> (bool, usize) {
        let k = (offset + i) % total;
        (k % 2 == 0, k / 2)
    };
    let (sp, si) = atom(run_start);
    let (ep, ei) = atom(run_end);
    if run_start == run_end && sp {
        return Item::Point(bounds[si].clone());
    }
    // a run starting with a gap atom (b_i, b_{i+1}) has open start b_i;
    // a run ending with a gap atom has open end b_{i+1}
    let (start, start_closed) = if sp {
        (bounds[si].clone(), true)
    } else {
        (bounds[si].clone(), false)
    };
    let (end, end_closed) = if ep {
        (bounds[ei].clone(), true)
    } else {
        (bounds[(ei + 1) % m].clone(), false)
    };
    Item::Arc(ArcPiece::new(start, end, start_closed, end_closed))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(x: i64, y: i64) -> Dir {
        Dir::from_i64(x, y)
    }

    #[test]
    fn angle_order() {
        let dirs = [
            d(1, 0),
            d(2, 1),
            d(1, 1),
            d(1, 2),
            d(0, 1),
            d(-1, 1),
            d(-1, 0),
            d(-1, -1),
            d(0, -1),
            d(1, -1),
        ];
        for w in dirs.windows(2) {
            assert!(w[0] < w[1], "{} vs {}", w[0], w[1]);
        }
        assert_eq!(d(2, 2), d(1, 1));
        assert_ne!(d(1, 1), d(-1, -1));
    }

    #[test]
    fn arc_containment() {
        let a = ArcPiece::new(d(1, 0), d(0, 1), true, false);
        assert!(a.contains(&d(1, 0)));
        assert!(a.contains(&d(1, 1)));
        assert!(a.contains(&d(1, 5)));
        assert!(!a.contains(&d(0, 1)));
        assert!(!a.contains(&d(-1, 1)));
        assert!(!a.contains(&d(0, -1)));
        // wrapping arc
        let w = ArcPiece::closed(d(0, -1), d(0, 1));
        assert!(w.contains(&d(1, 0)));
        assert!(w.contains(&d(1, -1)));
        assert!(!w.contains(&d(-1, 0)));
    }

    #[test]
    fn point_closes_open_arc() {
        let open = ArcPiece::new(d(1, 0), d(0, 1), true, false);
        let s = CircleSet::from_pieces(vec![d(0, 1)], vec![open]);
        assert_eq!(
            s,
            CircleSet::from_pieces(vec![], vec![ArcPiece::closed(d(1, 0), d(0, 1))])
        );
    }

    #[test]
    fn adjacent_arcs_merge() {
        let a = ArcPiece::new(d(1, 0), d(0, 1), true, false);
        let b = ArcPiece::new(d(0, 1), d(-1, 0), true, true);
        let s = CircleSet::from_pieces(vec![], vec![a, b]);
        assert_eq!(
            s,
            CircleSet::from_pieces(vec![], vec![ArcPiece::closed(d(1, 0), d(-1, 0))])
        );
    }

    #[test]
    fn points_absorbed_into_arc() {
        let arc = ArcPiece::closed(d(1, 0), d(0, 1));
        let s = CircleSet::from_pieces(vec![d(1, 0), d(0, 1), d(-1, -1)], vec![arc.clone()]);
        assert_eq!(s.items.len(), 2);
        assert!(s.contains(&d(-1, -1)));
        assert!(s.contains(&d(2, 3)));
        assert!(!s.contains(&d(-1, 2)));
        let same = CircleSet::from_points([d(-1, -1)])
            .union(&CircleSet::from_pieces(vec![], vec![arc]));
        assert_eq!(s, same);
    }

    #[test]
    fn full_circle_from_halves() {
        let a = ArcPiece::closed(d(1, 0), d(-1, 0));
        let b = ArcPiece::closed(d(-1, 0), d(1, 0));
        let s = CircleSet::from_pieces(vec![], vec![a, b]);
        assert!(s.full);
        assert_eq!(s, CircleSet::full_circle());
    }

    #[test]
    fn punctured_circle_is_not_full() {
        let a = ArcPiece::new(d(1, 0), d(-1, 0), false, true);
        let b = ArcPiece::new(d(-1, 0), d(1, 0), false, false);
        let s = CircleSet::from_pieces(vec![], vec![a, b]);
        assert!(!s.full);
        assert_eq!(s.items.len(), 1);
        assert!(s.contains(&d(-1, 0)));
        assert!(s.contains(&d(0, 1)));
        // the open gap at (1,0) survives
        match &s.items[0] {
            Item::Arc(arc) => {
                assert_eq!(arc.start, d(1, 0));
                assert_eq!(arc.end, d(1, 0));
            }
            _ => panic!("expected arc"),
        }
    }

    #[test]
    fn complement_of_points_is_open_arcs() {
        let s = CircleSet::from_points([d(0, 1), d(0, -1)]);
        let c = s.complement();
        assert_eq!(c.items.len(), 2);
        for item in &c.items {
            match item {
                Item::Arc(a) => {
                    assert!(!a.start_closed && !a.end_closed);
                }
                _ => panic!("expected open arcs"),
            }
        }
        assert!(c.contains(&d(1, 0)));
        assert!(!c.contains(&d(0, 1)));
        assert_eq!(c.complement(), s);
        assert_eq!(CircleSet::empty().complement(), CircleSet::full_circle());
    }

    #[test]
    fn four_points_canonical() {
        let s = CircleSet::from_points([d(0, 1), d(1, 0), d(-1, -1), d(1, 1)]);
        assert_eq!(s.items.len(), 4);
        let t = CircleSet::from_points([d(1, 1), d(-1, -1), d(2, 0), d(0, 3)]);
        assert_eq!(s, t);
        assert!(!s.contains(&d(1, 2)));
    }
}
