//! Finite representations of candidate elements of the monoid of monotone
//! injective partial selfmaps of `N^n` with cofinite domain and image.
//!
//! A map is finitely many disjoint box pieces each carrying a
//! permutation-plus-shift rule, a finite patch table of point overrides,
//! and a finite hole set. Everything uncovered is an implicit hole; the
//! representation forces the uncovered part to be finite, so domains are
//! cofinite by construction. Injectivity, monotonicity over the infinite
//! poset, and cofiniteness of the range are decided exactly by `validate`.

use std::collections::{BTreeMap, BTreeSet};

use crate::diffcon::DiffSystem;
use crate::error::{Error, Result};
use crate::perm::Perm;
use crate::point::Point;
use crate::region::{BoxRegion, Interval, RegionSet};
use crate::rule::Rule;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Piece {
    pub region: BoxRegion,
    pub rule: Rule,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiecewiseMap {
    dim: usize,
    pieces: Vec<Piece>,
    holes: BTreeSet<Point>,
    patch: BTreeMap<Point, Point>,
}

/// The verdict of `validate`, one flag per membership condition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidityReport {
    pub injective: bool,
    pub monotone: bool,
    pub dom_cofinite: bool,
    pub ran_cofinite: bool,
    pub injective_witness: Option<(Point, Point)>,
    pub monotone_witness: Option<(Point, Point)>,
}

impl ValidityReport {
    pub fn is_valid(&self) -> bool {
        self.injective && self.monotone && self.dom_cofinite && self.ran_cofinite
    }
}

impl PiecewiseMap {
    /// Build from raw parts, checking every representation invariant.
    pub fn from_parts(
        dim: usize,
        pieces: Vec<(BoxRegion, Rule)>,
        holes: Vec<Point>,
        patch: Vec<(Point, Point)>,
    ) -> Result<Self> {
        if dim < 2 {
            return Err(Error::InvalidConstruction(format!(
                "dimension must be >= 2, got {dim}"
            )));
        }
        for (b, r) in &pieces {
            if b.dim() != dim || r.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: b.dim().max(r.dim()),
                });
            }
            if !r.positive_on(b) {
                return Err(Error::InvalidConstruction(format!(
                    "rule {r} drops below 1 on its piece {b}"
                )));
            }
        }
        for i in 0..pieces.len() {
            for j in i + 1..pieces.len() {
                if pieces[i].0.intersect(&pieces[j].0).is_some() {
                    return Err(Error::InvalidConstruction(format!(
                        "pieces overlap: {} and {}",
                        pieces[i].0, pieces[j].0
                    )));
                }
            }
        }
        let hole_set: BTreeSet<Point> = holes.into_iter().collect();
        for h in &hole_set {
            if h.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: h.dim(),
                });
            }
        }
        let mut patch_map = BTreeMap::new();
        let mut patch_values = BTreeSet::new();
        for (k, v) in patch {
            if k.dim() != dim || v.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: k.dim().max(v.dim()),
                });
            }
            if hole_set.contains(&k) {
                return Err(Error::InvalidConstruction(format!(
                    "point {k} is both a hole and a patch source"
                )));
            }
            if !patch_values.insert(v.clone()) {
                return Err(Error::InvalidConstruction(format!(
                    "patch is not injective: value {v} repeated"
                )));
            }
            if patch_map.insert(k.clone(), v).is_some() {
                return Err(Error::InvalidConstruction(format!(
                    "patch source {k} repeated"
                )));
            }
        }
        // coverage must be cofinite
        let mut boxes: Vec<BoxRegion> = pieces.iter().map(|(b, _)| b.clone()).collect();
        boxes.extend(patch_map.keys().map(BoxRegion::point));
        let coverage = RegionSet::from_boxes(dim, boxes)?;
        if !coverage.complement().is_finite() {
            return Err(Error::InvalidConstruction(
                "uncovered part of N^n is infinite; the domain cannot be cofinite".into(),
            ));
        }
        let mut m = PiecewiseMap {
            dim,
            pieces: pieces
                .into_iter()
                .map(|(region, rule)| Piece { region, rule })
                .collect(),
            holes: hole_set,
            patch: patch_map,
        };
        m.canonicalize();
        Ok(m)
    }

    /// The total identity map.
    pub fn identity(dim: usize) -> Self {
        PiecewiseMap::unit(Perm::identity(dim))
    }

    /// The coordinate-permutation map for `perm`; these are exactly the
    /// units of the monoid.
    pub fn unit(perm: Perm) -> Self {
        let dim = perm.dim();
        PiecewiseMap {
            dim,
            pieces: vec![Piece {
                region: BoxRegion::full(dim),
                rule: Rule::permutation(perm),
            }],
            holes: BTreeSet::new(),
            patch: BTreeMap::new(),
        }
    }

    /// The idempotent: identity on `N^n` minus the finite set `off`.
    pub fn identity_off(dim: usize, off: Vec<Point>) -> Result<Self> {
        for p in &off {
            if p.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: p.dim(),
                });
            }
        }
        PiecewiseMap::from_parts(
            dim,
            vec![(BoxRegion::full(dim), Rule::identity(dim))],
            off,
            vec![],
        )
    }

    /// Shift the cylinder `{x_axis >= 1 - amount, x_j <= bounds[j] for
    /// j != axis}` by `amount < 0` along `axis`, identity elsewhere. The
    /// vacated initial block drops out of the domain.
    pub fn cylinder_shift(dim: usize, axis: usize, bounds: &[i64], amount: i64) -> Result<Self> {
        if axis >= dim || bounds.len() != dim {
            return Err(Error::InvalidConstruction(format!(
                "axis {axis} or bounds length {} out of range for dimension {dim}",
                bounds.len()
            )));
        }
        if amount > -1 {
            return Err(Error::InvalidConstruction(format!(
                "shift amount must be negative, got {amount}"
            )));
        }
        let mut ivs = Vec::with_capacity(dim);
        let mut full_ivs = Vec::with_capacity(dim);
        for j in 0..dim {
            if j == axis {
                ivs.push(Interval::unbounded(1 - amount)?);
                full_ivs.push(Interval::full());
            } else {
                if bounds[j] < 1 {
                    return Err(Error::InvalidConstruction(format!(
                        "cylinder bound {} below 1",
                        bounds[j]
                    )));
                }
                ivs.push(Interval::bounded(1, bounds[j])?);
                full_ivs.push(Interval::bounded(1, bounds[j])?);
            }
        }
        let cyl = BoxRegion::new(ivs)?;
        let mut shift = vec![0i64; dim];
        shift[axis] = amount;
        let moved = (cyl, Rule::new(Perm::identity(dim), shift)?);
        // identity outside the full cylinder
        let outside = RegionSet::from_boxes(dim, vec![BoxRegion::new(full_ivs)?])?.complement();
        let mut pieces = vec![moved];
        for b in outside.boxes() {
            pieces.push((b.clone(), Rule::identity(dim)));
        }
        PiecewiseMap::from_parts(dim, pieces, vec![], vec![])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn holes(&self) -> &BTreeSet<Point> {
        &self.holes
    }

    pub fn patch(&self) -> &BTreeMap<Point, Point> {
        &self.patch
    }

    fn is_special(&self, p: &Point) -> bool {
        self.holes.contains(p) || self.patch.contains_key(p)
    }

    /// All explicitly listed exceptional points: holes and patch sources.
    pub fn special_points(&self) -> Vec<Point> {
        self.holes
            .iter()
            .chain(self.patch.keys())
            .cloned()
            .collect()
    }

    /// Evaluate at a point; `None` means "not in the domain".
    pub fn evaluate(&self, x: &Point) -> Result<Option<Point>> {
        if x.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: x.dim(),
            });
        }
        if self.holes.contains(x) {
            return Ok(None);
        }
        if let Some(v) = self.patch.get(x) {
            return Ok(Some(v.clone()));
        }
        for p in &self.pieces {
            if p.region.contains(x) {
                return Ok(Some(p.rule.apply(x)?));
            }
        }
        Ok(None)
    }

    /// The window threshold: every finite irregularity (box bound, hole,
    /// patch point) lies strictly inside `[1..B]^n`, with margin for the
    /// largest shift.
    pub fn bound_b(&self) -> i64 {
        let mut coord_max = 1i64;
        let mut shift_max = 0i64;
        for p in &self.pieces {
            for iv in p.region.intervals() {
                coord_max = coord_max.max(iv.lo());
                if let Some(h) = iv.hi() {
                    coord_max = coord_max.max(h);
                }
            }
            for &s in p.rule.shift() {
                shift_max = shift_max.max(s.abs());
            }
        }
        for h in &self.holes {
            for &c in h.coords() {
                coord_max = coord_max.max(c);
            }
        }
        for (k, v) in &self.patch {
            for &c in k.coords().iter().chain(v.coords()) {
                coord_max = coord_max.max(c);
            }
        }
        1 + coord_max + shift_max
    }

    /// The domain as a region: covered part minus holes.
    pub fn dom_region(&self) -> RegionSet {
        let mut boxes: Vec<BoxRegion> = self.pieces.iter().map(|p| p.region.clone()).collect();
        boxes.extend(self.patch.keys().map(BoxRegion::point));
        let covered = RegionSet::from_boxes(self.dim, boxes).expect("dims checked");
        let holes = RegionSet::from_points(self.dim, self.holes.iter()).expect("dims checked");
        covered.subtract(&holes).expect("same dim")
    }

    pub fn dom_complement(&self) -> RegionSet {
        self.dom_region().complement()
    }

    /// The piece regions with all exceptional points removed.
    fn generic_region(&self, piece: &Piece) -> RegionSet {
        let base = RegionSet::from_boxes(self.dim, vec![piece.region.clone()]).expect("dim");
        let specials =
            RegionSet::from_points(self.dim, self.holes.iter().chain(self.patch.keys()))
                .expect("dim");
        base.subtract(&specials).expect("same dim")
    }

    /// The range as a region: rule images of the generic parts of the
    /// pieces, plus the patch values.
    pub fn ran_region(&self) -> RegionSet {
        let mut boxes = Vec::new();
        for p in &self.pieces {
            for b in self.generic_region(p).boxes() {
                boxes.push(p.rule.apply_box(b).expect("positivity invariant"));
            }
        }
        boxes.extend(self.patch.values().map(BoxRegion::point));
        RegionSet::from_boxes(self.dim, boxes).expect("dim")
    }

    pub fn ran_complement(&self) -> RegionSet {
        self.ran_region().complement()
    }

    /// Exact composition, left to right: `x (self; other)`.
    pub fn compose(&self, other: &PiecewiseMap) -> Result<PiecewiseMap> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        let dim = self.dim;
        let mut pieces = Vec::new();
        for p in &self.pieces {
            for q in &other.pieces {
                if let Some(pre) = p.rule.preimage_box(&q.region) {
                    if let Some(x) = p.region.intersect(&pre) {
                        pieces.push((x, p.rule.then(&q.rule)));
                    }
                }
            }
        }
        let mut holes: BTreeSet<Point> = self.holes.clone();
        let mut patch: BTreeMap<Point, Point> = BTreeMap::new();
        for (k, v) in &self.patch {
            match other.evaluate(v)? {
                Some(z) => {
                    patch.insert(k.clone(), z);
                }
                None => {
                    holes.insert(k.clone());
                }
            }
        }
        // points of our pieces landing on the other map's exceptional points
        for q_special in other.holes.iter().chain(other.patch.keys()) {
            for p in &self.pieces {
                if let Some(x) = p.rule.preimage_point(q_special) {
                    if p.region.contains(&x) && !self.is_special(&x) {
                        if let Some(z) = other.patch.get(q_special) {
                            patch.insert(x, z.clone());
                        } else {
                            holes.insert(x);
                        }
                    }
                }
            }
        }
        PiecewiseMap::from_parts(
            dim,
            pieces,
            holes.into_iter().collect(),
            patch.into_iter().collect(),
        )
    }

    /// Exact semantic equality: same domain, same value everywhere on it.
    pub fn equals(&self, other: &PiecewiseMap) -> Result<bool> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        if self.dom_region() != other.dom_region() {
            return Ok(false);
        }
        // exceptional points of either side, compared pointwise
        for s in self.special_points().iter().chain(&other.special_points()) {
            if self.evaluate(s)? != other.evaluate(s)? {
                return Ok(false);
            }
        }
        // generic points: piece against piece
        for p in &self.pieces {
            for q in &other.pieces {
                let x = match p.region.intersect(&q.region) {
                    Some(x) => x,
                    None => continue,
                };
                if x.is_finite() {
                    let set = RegionSet::from_boxes(self.dim, vec![x])?;
                    for pt in set.enumerate()? {
                        if self.evaluate(&pt)? != other.evaluate(&pt)? {
                            return Ok(false);
                        }
                    }
                } else if !rules_agree_on(&p.rule, &q.rule, &x) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Full membership decision for the monoid, over the infinite poset.
    pub fn validate(&self) -> ValidityReport {
        let (injective, injective_witness) = self.check_injective();
        let (monotone, monotone_witness) = self.check_monotone();
        let dom_cofinite = self.dom_complement().is_finite();
        let ran_cofinite = self.ran_complement().is_finite();
        ValidityReport {
            injective,
            monotone,
            dom_cofinite,
            ran_cofinite,
            injective_witness,
            monotone_witness,
        }
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_valid()
    }

    fn check_injective(&self) -> (bool, Option<(Point, Point)>) {
        // patch-vs-piece collisions: a patch value hit by a generic point
        for (k, v) in &self.patch {
            for p in &self.pieces {
                if let Some(x) = p.rule.preimage_point(v) {
                    if p.region.contains(&x) && !self.is_special(&x) {
                        return (false, Some((x, k.clone())));
                    }
                }
            }
        }
        // piece-vs-piece collisions on generic points
        let generic: Vec<RegionSet> = self.pieces.iter().map(|p| self.generic_region(p)).collect();
        let images: Vec<RegionSet> = self
            .pieces
            .iter()
            .zip(&generic)
            .map(|(p, g)| {
                let boxes = g
                    .boxes()
                    .iter()
                    .map(|b| p.rule.apply_box(b).expect("positivity"))
                    .collect();
                RegionSet::from_boxes(self.dim, boxes).expect("dim")
            })
            .collect();
        for i in 0..self.pieces.len() {
            for j in i + 1..self.pieces.len() {
                let overlap = images[i].intersect(&images[j]).expect("same dim");
                if overlap.is_empty() {
                    continue;
                }
                let y = if overlap.is_finite() {
                    overlap.enumerate().expect("finite")[0].clone()
                } else {
                    overlap.boxes()[0].lo_corner()
                };
                let x1 = self.pieces[i].rule.preimage_point(&y).expect("in image");
                let x2 = self.pieces[j].rule.preimage_point(&y).expect("in image");
                return (false, Some((x1, x2)));
            }
        }
        (true, None)
    }

    fn check_monotone(&self) -> (bool, Option<(Point, Point)>) {
        let b = self.bound_b();
        if let Some(w) = self.monotone_window_scan(b) {
            return (false, Some(w));
        }
        if let Some(w) = self.monotone_patch_far(b) {
            return (false, Some(w));
        }
        if let Some(w) = self.monotone_piece_far(b) {
            return (false, Some(w));
        }
        (true, None)
    }

    /// Stage 1: exhaustive scan of all comparable pairs inside `[1..B]^n`.
    fn monotone_window_scan(&self, b: i64) -> Option<(Point, Point)> {
        let n = self.dim;
        let bu = b as usize;
        let size = bu.pow(n as u32);
        let mut table: Vec<Option<Point>> = Vec::with_capacity(size);
        let mut coords = vec![1i64; n];
        for _ in 0..size {
            let p = Point::new(coords.clone()).expect(">=1");
            table.push(self.evaluate(&p).expect("dim ok"));
            // odometer, last coordinate fastest
            for i in (0..n).rev() {
                if coords[i] < b {
                    coords[i] += 1;
                    for c in coords.iter_mut().skip(i + 1) {
                        *c = 1;
                    }
                    break;
                }
            }
        }
        let decode = |mut lin: usize| -> Vec<i64> {
            let mut c = vec![0i64; n];
            for i in (0..n).rev() {
                c[i] = (lin % bu) as i64 + 1;
                lin /= bu;
            }
            c
        };
        for xl in 0..size {
            let fx = match &table[xl] {
                Some(v) => v,
                None => continue,
            };
            let xc = decode(xl);
            // iterate the up-set of x inside the window
            let mut yc = xc.clone();
            'ys: loop {
                let yl = yc
                    .iter()
                    .fold(0usize, |acc, &c| acc * bu + (c as usize - 1));
                if yl != xl {
                    if let Some(fy) = &table[yl] {
                        if !fx.leq(fy).expect("same dim") {
                            return Some((
                                Point::new(xc).expect(">=1"),
                                Point::new(yc).expect(">=1"),
                            ));
                        }
                    }
                }
                for i in (0..n).rev() {
                    if yc[i] < b {
                        yc[i] += 1;
                        for j in i + 1..n {
                            yc[j] = xc[j];
                        }
                        continue 'ys;
                    }
                }
                break;
            }
        }
        None
    }

    /// Stage 2: each patch point against comparable points beyond the
    /// window, decided by per-piece bound constraints.
    fn monotone_patch_far(&self, b: i64) -> Option<(Point, Point)> {
        let n = self.dim;
        for (p, v) in &self.patch {
            for q in &self.pieces {
                for k in 0..n {
                    let sb = q.rule.perm().source(k);
                    let dq = q.rule.shift()[k];
                    for m in 0..n {
                        let mut sys = DiffSystem::new(n);
                        for j in 0..n {
                            let iv = q.region.interval(j);
                            sys.lower(j + 1, iv.lo().max(p.coord(j)));
                            if let Some(h) = iv.hi() {
                                sys.upper(j + 1, h);
                            }
                        }
                        sys.lower(m + 1, b + 1);
                        // violation: y_sb + dq <= v_k - 1
                        sys.upper(sb + 1, v.coord(k) - 1 - dq);
                        if let Some(sol) = sys.solve() {
                            let y = Point::new(sol[1..=n].to_vec()).expect("bounded below by lo");
                            return Some((p.clone(), y));
                        }
                    }
                }
            }
        }
        None
    }

    /// Stage 3: piece against piece beyond the window, decided by
    /// difference-constraint feasibility with the exceptional points of
    /// the lower endpoint excluded.
    fn monotone_piece_far(&self, b: i64) -> Option<(Point, Point)> {
        let n = self.dim;
        let specials: Vec<Point> = self.special_points();
        for p in &self.pieces {
            for q in &self.pieces {
                for k in 0..n {
                    let sa = p.rule.perm().source(k);
                    let sb = q.rule.perm().source(k);
                    let dp = p.rule.shift()[k];
                    let dq = q.rule.shift()[k];
                    for m in 0..n {
                        let mut sys = DiffSystem::new(2 * n);
                        for j in 0..n {
                            let ivp = p.region.interval(j);
                            sys.lower(j + 1, ivp.lo());
                            if let Some(h) = ivp.hi() {
                                sys.upper(j + 1, h);
                            }
                            let ivq = q.region.interval(j);
                            sys.lower(n + j + 1, ivq.lo());
                            if let Some(h) = ivq.hi() {
                                sys.upper(n + j + 1, h);
                            }
                            // x <= y componentwise
                            sys.le(j + 1, n + j + 1, 0);
                        }
                        // some coordinate of y beyond the window
                        sys.lower(n + m + 1, b + 1);
                        // violation on output k: x_sa + dp >= y_sb + dq + 1
                        sys.le(n + sb + 1, sa + 1, dp - dq - 1);
                        if let Some((x, y)) =
                            solve_excluding(&sys, n, &specials, specials.len() + 1)
                        {
                            return Some((x, y));
                        }
                    }
                }
            }
        }
        None
    }

    /// Deterministic canonical form: pieces grouped by rule with regions
    /// re-normalized, redundant patch entries folded into their pieces,
    /// redundant holes dropped, everything sorted.
    fn canonicalize(&mut self) {
        let mut by_rule: Vec<(Rule, Vec<BoxRegion>)> = Vec::new();
        for p in self.pieces.drain(..) {
            match by_rule.iter_mut().find(|(r, _)| *r == p.rule) {
                Some((_, boxes)) => boxes.push(p.region),
                None => by_rule.push((p.rule, vec![p.region])),
            }
        }
        let mut pieces = Vec::new();
        for (rule, boxes) in by_rule {
            let set = RegionSet::from_boxes(self.dim, boxes).expect("dims checked");
            for b in set.boxes() {
                pieces.push(Piece {
                    region: b.clone(),
                    rule: rule.clone(),
                });
            }
        }
        pieces.sort_by(|a, b| {
            let ka: Vec<_> = a.region.intervals().iter().map(|iv| (iv.lo(), iv.hi())).collect();
            let kb: Vec<_> = b.region.intervals().iter().map(|iv| (iv.lo(), iv.hi())).collect();
            ka.cmp(&kb)
        });
        self.pieces = pieces;
        // fold patch entries that agree with the piece underneath
        let redundant: Vec<Point> = self
            .patch
            .iter()
            .filter(|(k, v)| {
                self.pieces
                    .iter()
                    .any(|p| p.region.contains(k) && &p.rule.apply(k).ok() == &Some((*v).clone()))
            })
            .map(|(k, _)| k.clone())
            .collect();
        for k in redundant {
            self.patch.remove(&k);
        }
        // holes outside every piece are implicit
        let holes = std::mem::take(&mut self.holes);
        self.holes = holes
            .into_iter()
            .filter(|h| self.pieces.iter().any(|p| p.region.contains(h)))
            .collect();
    }
}

/// Two rules agree everywhere on an (infinite) box iff for every output
/// coordinate either they read the same source with the same shift, or
/// both sources are pinned to a single value by the box and the shifted
/// values coincide.
pub(crate) fn rules_agree_on(a: &Rule, b: &Rule, x: &BoxRegion) -> bool {
    for k in 0..a.dim() {
        let sa = a.perm().source(k);
        let sb = b.perm().source(k);
        let da = a.shift()[k];
        let db = b.shift()[k];
        if sa == sb {
            if da != db {
                return false;
            }
        } else {
            let ia = x.interval(sa);
            let ib = x.interval(sb);
            let pinned = |iv: &Interval| iv.hi() == Some(iv.lo());
            if !(pinned(ia) && pinned(ib) && ia.lo() + da == ib.lo() + db) {
                return false;
            }
        }
    }
    true
}

/// Solve, then exclude the finite special set from the `x` variables by
/// branch and bound: each level splits on one coordinate of one special
/// point, so the depth is bounded by the number of specials.
fn solve_excluding(
    sys: &DiffSystem,
    n: usize,
    specials: &[Point],
    depth: usize,
) -> Option<(Point, Point)> {
    let sol = sys.solve()?;
    let x = Point::new(sol[1..=n].to_vec()).expect("box lower bounds");
    let y = Point::new(sol[n + 1..=2 * n].to_vec()).expect("box lower bounds");
    let hit = specials.iter().find(|s| **s == x);
    let s = match hit {
        None => return Some((x, y)),
        Some(s) => s,
    };
    if depth == 0 {
        return None;
    }
    for j in 0..n {
        let mut below = sys.clone();
        below.upper(j + 1, s.coord(j) - 1);
        if let Some(r) = solve_excluding(&below, n, specials, depth - 1) {
            return Some(r);
        }
        let mut above = sys.clone();
        above.lower(j + 1, s.coord(j) + 1);
        if let Some(r) = solve_excluding(&above, n, specials, depth - 1) {
            return Some(r);
        }
    }
    None
}
