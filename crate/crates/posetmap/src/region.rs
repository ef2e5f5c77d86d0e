//! Exact algebra of box-shaped subsets of `N^n`.
//!
//! A `RegionSet` is a finite disjoint union of boxes kept in a canonical
//! form: two `RegionSet`s denote the same point set iff they are
//! structurally identical. Canonicalization splits the union along the
//! essential cut coordinates of the denoted set, then re-merges grid cells
//! in a fixed axis order, so the result depends only on the set itself.

use std::fmt;

use crate::error::{Error, Result};
use crate::point::Point;

/// An integer interval `[lo, hi]` with `lo >= 1`; `hi = None` means
/// unbounded to the right.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: i64,
    hi: Option<i64>,
}

impl Interval {
    pub fn bounded(lo: i64, hi: i64) -> Result<Self> {
        if lo < 1 || hi < lo {
            return Err(Error::InvalidConstruction(format!(
                "bad interval [{lo},{hi}]"
            )));
        }
        Ok(Interval { lo, hi: Some(hi) })
    }

    pub fn unbounded(lo: i64) -> Result<Self> {
        if lo < 1 {
            return Err(Error::InvalidConstruction(format!("bad interval [{lo},inf)")));
        }
        Ok(Interval { lo, hi: None })
    }

    pub fn full() -> Self {
        Interval { lo: 1, hi: None }
    }

    pub fn point(v: i64) -> Result<Self> {
        Interval::bounded(v, v)
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> Option<i64> {
        self.hi
    }

    pub fn contains(&self, v: i64) -> bool {
        v >= self.lo && self.hi.map_or(true, |h| v <= h)
    }

    pub fn is_bounded(&self) -> bool {
        self.hi.is_some()
    }

    pub fn len(&self) -> Option<u64> {
        self.hi.map(|h| (h - self.lo + 1) as u64)
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = self.lo.max(other.lo);
        let hi = match (self.hi, other.hi) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (Some(a), None) => Some(a),
            (None, Some(b)) => Some(b),
            (None, None) => None,
        };
        match hi {
            Some(h) if h < lo => None,
            _ => Some(Interval { lo, hi }),
        }
    }

    /// Shift by `d`, clamping the lower end at 1. Returns `None` when the
    /// shifted interval falls entirely below 1.
    pub fn shift_clamped(&self, d: i64) -> Option<Interval> {
        let lo = self.lo + d;
        let hi = self.hi.map(|h| h + d);
        if let Some(h) = hi {
            if h < 1 {
                return None;
            }
        }
        Some(Interval {
            lo: lo.max(1),
            hi,
        })
    }

    /// Shift without clamping; errors if the result drops below 1.
    pub fn shift(&self, d: i64) -> Result<Interval> {
        let lo = self.lo + d;
        if lo < 1 {
            return Err(Error::InvalidCoordinate(format!(
                "interval shifted below 1: [{},..]+{d}",
                self.lo
            )));
        }
        Ok(Interval {
            lo,
            hi: self.hi.map(|h| h + d),
        })
    }

    /// Sort key placing bounded before unbounded ends.
    fn hi_key(&self) -> (i64, i64) {
        match self.hi {
            Some(h) => (0, h),
            None => (1, 0),
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.hi {
            Some(h) => write!(f, "[{},{}]", self.lo, h),
            None => write!(f, "[{},inf)", self.lo),
        }
    }
}

/// A nonempty product of intervals, one per coordinate.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BoxRegion {
    intervals: Vec<Interval>,
}

impl BoxRegion {
    pub fn new(intervals: Vec<Interval>) -> Result<Self> {
        if intervals.len() < 2 {
            return Err(Error::InvalidConstruction(format!(
                "boxes need dimension >= 2, got {}",
                intervals.len()
            )));
        }
        Ok(BoxRegion { intervals })
    }

    /// The whole space `N^n`.
    pub fn full(dim: usize) -> Self {
        BoxRegion {
            intervals: vec![Interval::full(); dim],
        }
    }

    /// The up-set of a point: the product of `[x_i, inf)`.
    pub fn upset(p: &Point) -> Self {
        BoxRegion {
            intervals: p
                .coords()
                .iter()
                .map(|&c| Interval { lo: c, hi: None })
                .collect(),
        }
    }

    pub fn point(p: &Point) -> Self {
        BoxRegion {
            intervals: p
                .coords()
                .iter()
                .map(|&c| Interval { lo: c, hi: Some(c) })
                .collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.intervals.len()
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn interval(&self, i: usize) -> &Interval {
        &self.intervals[i]
    }

    pub fn contains(&self, p: &Point) -> bool {
        p.dim() == self.dim()
            && self
                .intervals
                .iter()
                .zip(p.coords())
                .all(|(iv, &c)| iv.contains(c))
    }

    pub fn intersect(&self, other: &BoxRegion) -> Option<BoxRegion> {
        debug_assert_eq!(self.dim(), other.dim());
        let mut out = Vec::with_capacity(self.dim());
        for (a, b) in self.intervals.iter().zip(&other.intervals) {
            out.push(a.intersect(b)?);
        }
        Some(BoxRegion { intervals: out })
    }

    pub fn is_finite(&self) -> bool {
        self.intervals.iter().all(Interval::is_bounded)
    }

    pub fn cardinality(&self) -> Option<u64> {
        self.intervals
            .iter()
            .map(Interval::len)
            .try_fold(1u64, |acc, l| l.map(|l| acc * l))
    }

    /// Lexicographically smallest point of the box.
    pub fn lo_corner(&self) -> Point {
        Point::new(self.intervals.iter().map(|iv| iv.lo).collect()).expect("lo >= 1")
    }

    fn sort_key(&self) -> (Vec<i64>, Vec<(i64, i64)>) {
        (
            self.intervals.iter().map(|iv| iv.lo).collect(),
            self.intervals.iter().map(Interval::hi_key).collect(),
        )
    }
}

impl fmt::Display for BoxRegion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, iv) in self.intervals.iter().enumerate() {
            if i > 0 {
                write!(f, "x")?;
            }
            write!(f, "{iv}")?;
        }
        Ok(())
    }
}

/// A canonical finite disjoint union of boxes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RegionSet {
    dim: usize,
    boxes: Vec<BoxRegion>,
}

impl RegionSet {
    pub fn empty(dim: usize) -> Self {
        RegionSet { dim, boxes: vec![] }
    }

    pub fn full(dim: usize) -> Self {
        RegionSet {
            dim,
            boxes: vec![BoxRegion::full(dim)],
        }
    }

    /// Canonicalize an arbitrary (possibly overlapping) list of boxes.
    pub fn from_boxes(dim: usize, boxes: Vec<BoxRegion>) -> Result<Self> {
        for b in &boxes {
            if b.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: b.dim(),
                });
            }
        }
        Ok(canonicalize(dim, &boxes))
    }

    pub fn from_points<'a, I: IntoIterator<Item = &'a Point>>(dim: usize, pts: I) -> Result<Self> {
        let boxes: Vec<BoxRegion> = pts.into_iter().map(BoxRegion::point).collect();
        RegionSet::from_boxes(dim, boxes)
    }

    pub fn upset_of_points<'a, I: IntoIterator<Item = &'a Point>>(
        dim: usize,
        pts: I,
    ) -> Result<Self> {
        let boxes: Vec<BoxRegion> = pts.into_iter().map(BoxRegion::upset).collect();
        RegionSet::from_boxes(dim, boxes)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn boxes(&self) -> &[BoxRegion] {
        &self.boxes
    }

    pub fn is_empty(&self) -> bool {
        self.boxes.is_empty()
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.boxes.iter().any(|b| b.contains(p))
    }

    fn check_dim(&self, other: &RegionSet) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        Ok(())
    }

    pub fn union(&self, other: &RegionSet) -> Result<RegionSet> {
        self.check_dim(other)?;
        let mut boxes = self.boxes.clone();
        boxes.extend(other.boxes.iter().cloned());
        Ok(canonicalize(self.dim, &boxes))
    }

    pub fn intersect(&self, other: &RegionSet) -> Result<RegionSet> {
        self.check_dim(other)?;
        let mut boxes = Vec::new();
        for a in &self.boxes {
            for b in &other.boxes {
                if let Some(x) = a.intersect(b) {
                    boxes.push(x);
                }
            }
        }
        Ok(canonicalize(self.dim, &boxes))
    }

    /// Complement with respect to `N^n`, by coordinate-wise interval
    /// splitting: the complement of each box is at most `2n` boxes.
    pub fn complement(&self) -> RegionSet {
        let mut current = vec![BoxRegion::full(self.dim)];
        for b in &self.boxes {
            let mut next = Vec::new();
            for c in &current {
                next.extend(subtract_box(c, b));
            }
            current = next;
        }
        canonicalize(self.dim, &current)
    }

    pub fn subtract(&self, other: &RegionSet) -> Result<RegionSet> {
        self.check_dim(other)?;
        let mut current = self.boxes.clone();
        for b in &other.boxes {
            let mut next = Vec::new();
            for c in &current {
                next.extend(subtract_box(c, b));
            }
            current = next;
        }
        Ok(canonicalize(self.dim, &current))
    }

    pub fn is_finite(&self) -> bool {
        self.boxes.iter().all(BoxRegion::is_finite)
    }

    /// Exact cardinality; errors on infinite regions.
    pub fn cardinality(&self) -> Result<u64> {
        // boxes are pairwise disjoint, so the sum is exact
        self.boxes
            .iter()
            .map(|b| b.cardinality().ok_or(Error::InfiniteRegion))
            .sum()
    }

    /// All points in lexicographic order; errors on infinite regions.
    pub fn enumerate(&self) -> Result<Vec<Point>> {
        if !self.is_finite() {
            return Err(Error::InfiniteRegion);
        }
        let mut out = Vec::new();
        for b in &self.boxes {
            let mut cur: Vec<i64> = b.intervals.iter().map(|iv| iv.lo).collect();
            'points: loop {
                out.push(Point::new(cur.clone()).expect("coords >= 1"));
                // odometer increment, last coordinate fastest
                for i in (0..b.dim()).rev() {
                    if cur[i] < b.intervals[i].hi.expect("finite") {
                        cur[i] += 1;
                        for c in cur.iter_mut().skip(i + 1).zip(&b.intervals[i + 1..]) {
                            *c.0 = c.1.lo;
                        }
                        continue 'points;
                    }
                }
                break;
            }
        }
        out.sort();
        Ok(out)
    }
}

/// `a \ b` as a list of at most `2n` disjoint boxes plus nothing else.
fn subtract_box(a: &BoxRegion, b: &BoxRegion) -> Vec<BoxRegion> {
    let inter = match a.intersect(b) {
        Some(x) => x,
        None => return vec![a.clone()],
    };
    let mut out = Vec::new();
    let mut prefix: Vec<Interval> = Vec::with_capacity(a.dim());
    for i in 0..a.dim() {
        let ai = a.intervals[i];
        let xi = inter.intervals[i];
        // part of a below the intersection on axis i
        if ai.lo < xi.lo {
            let mut ivs = prefix.clone();
            ivs.push(Interval {
                lo: ai.lo,
                hi: Some(xi.lo - 1),
            });
            ivs.extend_from_slice(&a.intervals[i + 1..]);
            out.push(BoxRegion { intervals: ivs });
        }
        // part of a above the intersection on axis i
        match (ai.hi, xi.hi) {
            (_, None) => {}
            (Some(ah), Some(xh)) if ah <= xh => {}
            (ah, Some(xh)) => {
                let mut ivs = prefix.clone();
                ivs.push(Interval {
                    lo: xh + 1,
                    hi: ah,
                });
                ivs.extend_from_slice(&a.intervals[i + 1..]);
                out.push(BoxRegion { intervals: ivs });
            }
        }
        prefix.push(xi);
    }
    out
}

/// Canonical form: split along the essential cuts of the denoted set, then
/// merge grid cells along axes from last to first.
fn canonicalize(dim: usize, boxes: &[BoxRegion]) -> RegionSet {
    if boxes.is_empty() {
        return RegionSet::empty(dim);
    }
    // candidate cuts per axis: every lo and every hi+1
    let mut cuts: Vec<Vec<i64>> = vec![Vec::new(); dim];
    for b in boxes {
        for (i, iv) in b.intervals.iter().enumerate() {
            cuts[i].push(iv.lo);
            if let Some(h) = iv.hi {
                cuts[i].push(h + 1);
            }
        }
    }
    for c in cuts.iter_mut() {
        c.sort_unstable();
        c.dedup();
    }
    // atomic slabs per axis: [cut_j, cut_{j+1}-1], final [last, inf)
    let lens: Vec<usize> = cuts.iter().map(|c| c.len()).collect();
    let total: usize = lens.iter().product();
    let mut member = vec![false; total];
    let mut idx = vec![0usize; dim];
    for cell in 0..total {
        // decode cell -> slab indices
        let mut rem = cell;
        for i in (0..dim).rev() {
            idx[i] = rem % lens[i];
            rem /= lens[i];
        }
        let probe: Vec<i64> = (0..dim).map(|i| cuts[i][idx[i]]).collect();
        member[cell] =
            boxes.iter().any(|b| {
                b.intervals
                    .iter()
                    .zip(&probe)
                    .all(|(iv, &v)| iv.contains(v))
            });
    }
    // essential cuts: cut j (j >= 1) on axis i is kept iff some cross
    // section differs between slab j-1 and slab j; cut 0 is kept iff the
    // first slab is nonempty somewhere (it always is when any box starts
    // there, but pruning it is harmless when the slab equals emptiness).
    let mut keep: Vec<Vec<bool>> = Vec::with_capacity(dim);
    for i in 0..dim {
        let mut k = vec![false; lens[i]];
        for j in 0..lens[i] {
            let differs = if j == 0 {
                slab_nonempty(&member, &lens, i, 0)
            } else {
                !slabs_equal(&member, &lens, i, j - 1, j)
            };
            k[j] = differs;
        }
        keep.push(k);
    }
    // rebuild coarse cuts
    let coarse_cuts: Vec<Vec<i64>> = (0..dim)
        .map(|i| {
            cuts[i]
                .iter()
                .zip(&keep[i])
                .filter(|(_, &k)| k)
                .map(|(&c, _)| c)
                .collect()
        })
        .collect();
    if coarse_cuts.iter().any(|c| c.is_empty()) {
        // every slab equal to empty along some axis: the set is empty
        return RegionSet::empty(dim);
    }
    // unbounded tail per axis: whether any box is unbounded there
    let unbounded: Vec<bool> = (0..dim)
        .map(|i| boxes.iter().any(|b| !b.intervals[i].is_bounded()))
        .collect();
    // enumerate coarse cells and collect members as boxes
    let clens: Vec<usize> = coarse_cuts.iter().map(|c| c.len()).collect();
    let ctotal: usize = clens.iter().product();
    let mut cells: Vec<BoxRegion> = Vec::new();
    let mut cidx = vec![0usize; dim];
    for cell in 0..ctotal {
        let mut rem = cell;
        for i in (0..dim).rev() {
            cidx[i] = rem % clens[i];
            rem /= clens[i];
        }
        let probe: Vec<i64> = (0..dim).map(|i| coarse_cuts[i][cidx[i]]).collect();
        let is_member = boxes.iter().any(|b| {
            b.intervals
                .iter()
                .zip(&probe)
                .all(|(iv, &v)| iv.contains(v))
        });
        if !is_member {
            continue;
        }
        let intervals: Vec<Interval> = (0..dim)
            .map(|i| {
                let lo = coarse_cuts[i][cidx[i]];
                if cidx[i] + 1 < clens[i] {
                    Interval {
                        lo,
                        hi: Some(coarse_cuts[i][cidx[i] + 1] - 1),
                    }
                } else if unbounded[i] {
                    Interval { lo, hi: None }
                } else {
                    // last coarse slab of a bounded axis: cap at the last
                    // original cut minus one (the boundary to emptiness was
                    // essential, so it survived into coarse_cuts unless the
                    // region is unbounded; if it survived, this branch is
                    // unreachable for member cells)
                    Interval {
                        lo,
                        hi: Some(*cuts[i].last().unwrap() - 1),
                    }
                }
            })
            .collect();
        cells.push(BoxRegion { intervals });
    }
    // merge along axes, last axis first
    for axis in (0..dim).rev() {
        cells = merge_along(cells, axis);
    }
    cells.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    RegionSet { dim, boxes: cells }
}

fn slab_nonempty(member: &[bool], lens: &[usize], axis: usize, j: usize) -> bool {
    any_in_slab(member, lens, axis, j, |m| m)
}

fn slabs_equal(member: &[bool], lens: &[usize], axis: usize, a: usize, b: usize) -> bool {
    // compare cross sections of slabs a and b along `axis`
    let dim = lens.len();
    let stride: usize = lens[axis + 1..].iter().product();
    let outer: usize = lens[..axis].iter().product();
    let block = lens[axis] * stride;
    for o in 0..outer {
        let base = o * block;
        for s in 0..stride {
            if member[base + a * stride + s] != member[base + b * stride + s] {
                return false;
            }
        }
    }
    let _ = dim;
    true
}

fn any_in_slab(
    member: &[bool],
    lens: &[usize],
    axis: usize,
    j: usize,
    pred: impl Fn(bool) -> bool,
) -> bool {
    let stride: usize = lens[axis + 1..].iter().product();
    let outer: usize = lens[..axis].iter().product();
    let block = lens[axis] * stride;
    for o in 0..outer {
        let base = o * block + j * stride;
        for s in 0..stride {
            if pred(member[base + s]) {
                return true;
            }
        }
    }
    false
}

fn merge_along(mut cells: Vec<BoxRegion>, axis: usize) -> Vec<BoxRegion> {
    cells.sort_by(|a, b| {
        let ka = (
            a.intervals
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != axis)
                .map(|(_, iv)| (iv.lo, iv.hi_key()))
                .collect::<Vec<_>>(),
            a.intervals[axis].lo,
        );
        let kb = (
            b.intervals
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != axis)
                .map(|(_, iv)| (iv.lo, iv.hi_key()))
                .collect::<Vec<_>>(),
            b.intervals[axis].lo,
        );
        ka.cmp(&kb)
    });
    let mut out: Vec<BoxRegion> = Vec::with_capacity(cells.len());
    for c in cells {
        if let Some(last) = out.last_mut() {
            let same_others = last
                .intervals
                .iter()
                .zip(&c.intervals)
                .enumerate()
                .all(|(i, (a, b))| i == axis || a == b);
            if same_others {
                if let Some(h) = last.intervals[axis].hi {
                    if h + 1 == c.intervals[axis].lo {
                        last.intervals[axis].hi = c.intervals[axis].hi;
                        continue;
                    }
                }
            }
        }
        out.push(c);
    }
    out
}
