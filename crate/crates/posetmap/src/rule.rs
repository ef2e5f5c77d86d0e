use std::fmt;

use crate::error::{Error, Result};
use crate::perm::Perm;
use crate::point::Point;
use crate::region::{BoxRegion, Interval};

/// The affine action on one piece: a coordinate permutation followed by an
/// integer translation. Applying to `x` yields `y` with
/// `y[k] = x[perm.source(k)] + shift[k]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Rule {
    perm: Perm,
    shift: Vec<i64>,
}

impl Rule {
    pub fn new(perm: Perm, shift: Vec<i64>) -> Result<Self> {
        if perm.dim() != shift.len() {
            return Err(Error::DimensionMismatch {
                expected: perm.dim(),
                got: shift.len(),
            });
        }
        Ok(Rule { perm, shift })
    }

    pub fn identity(n: usize) -> Self {
        Rule {
            perm: Perm::identity(n),
            shift: vec![0; n],
        }
    }

    pub fn permutation(perm: Perm) -> Self {
        let n = perm.dim();
        Rule {
            perm,
            shift: vec![0; n],
        }
    }

    pub fn dim(&self) -> usize {
        self.shift.len()
    }

    pub fn perm(&self) -> &Perm {
        &self.perm
    }

    pub fn shift(&self) -> &[i64] {
        &self.shift
    }

    pub fn is_identity(&self) -> bool {
        self.perm.is_identity() && self.shift.iter().all(|&s| s == 0)
    }

    /// Raw application; the caller guarantees positivity of the output.
    pub fn apply_raw(&self, x: &Point) -> Vec<i64> {
        (0..self.dim())
            .map(|k| x.coord(self.perm.source(k)) + self.shift[k])
            .collect()
    }

    pub fn apply(&self, x: &Point) -> Result<Point> {
        Point::new(self.apply_raw(x))
    }

    /// Unique preimage of `y`, which may have coordinates below 1.
    pub fn preimage_raw(&self, y: &Point) -> Vec<i64> {
        let mut out = vec![0; self.dim()];
        for k in 0..self.dim() {
            out[self.perm.source(k)] = y.coord(k) - self.shift[k];
        }
        out
    }

    pub fn preimage_point(&self, y: &Point) -> Option<Point> {
        Point::new(self.preimage_raw(y)).ok()
    }

    /// Image of a box is a box.
    pub fn apply_box(&self, b: &BoxRegion) -> Result<BoxRegion> {
        let mut ivs = Vec::with_capacity(self.dim());
        for k in 0..self.dim() {
            ivs.push(b.interval(self.perm.source(k)).shift(self.shift[k])?);
        }
        BoxRegion::new(ivs)
    }

    /// Preimage of a box is a box (possibly empty after clamping at 1).
    pub fn preimage_box(&self, b: &BoxRegion) -> Option<BoxRegion> {
        let mut ivs = vec![Interval::full(); self.dim()];
        for k in 0..self.dim() {
            ivs[self.perm.source(k)] = b.interval(k).shift_clamped(-self.shift[k])?;
        }
        BoxRegion::new(ivs).ok()
    }

    /// `self` followed by `other`, again a permutation plus a shift.
    pub fn then(&self, other: &Rule) -> Rule {
        let perm = self.perm.then(&other.perm);
        let shift = (0..self.dim())
            .map(|k| {
                // coordinate k of the final output came through position
                // j = other.source(k) in the intermediate point
                let j = other.perm.source(k);
                self.shift[j] + other.shift[k]
            })
            .collect();
        Rule { perm, shift }
    }

    /// The exact inverse rule (valid wherever its output is positive).
    pub fn inverse(&self) -> Rule {
        let perm = self.perm.inverse();
        let shift = (0..self.dim())
            .map(|k| -self.shift[perm.source(k)])
            .collect();
        Rule { perm, shift }
    }

    /// True iff every output coordinate stays `>= 1` on the whole box.
    pub fn positive_on(&self, b: &BoxRegion) -> bool {
        (0..self.dim()).all(|k| b.interval(self.perm.source(k)).lo() + self.shift[k] >= 1)
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "perm {} shift {:?}", self.perm, self.shift)
    }
}
