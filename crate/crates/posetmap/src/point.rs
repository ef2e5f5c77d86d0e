use std::fmt;

use crate::error::{Error, Result};

/// A lattice point of `N^n`: a tuple of coordinates, each at least 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    coords: Vec<i64>,
}

impl Point {
    pub fn new(coords: Vec<i64>) -> Result<Self> {
        if coords.len() < 2 {
            return Err(Error::InvalidConstruction(format!(
                "points need dimension >= 2, got {}",
                coords.len()
            )));
        }
        if let Some(c) = coords.iter().find(|&&c| c < 1) {
            return Err(Error::InvalidCoordinate(format!(
                "coordinate {c} below 1 in {coords:?}"
            )));
        }
        Ok(Point { coords })
    }

    /// The all-ones point, the bottom of the poset.
    pub fn ones(dim: usize) -> Self {
        Point {
            coords: vec![1; dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> i64 {
        self.coords[i]
    }

    /// Product order: `self <= other` componentwise.
    pub fn leq(&self, other: &Point) -> Result<bool> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: other.dim(),
            });
        }
        Ok(self
            .coords
            .iter()
            .zip(&other.coords)
            .all(|(a, b)| a <= b))
    }

    /// True iff the point lies on the i-th coordinate axis ray (0-based):
    /// every other coordinate equals 1.
    pub fn on_axis(&self, axis: usize) -> bool {
        self.coords
            .iter()
            .enumerate()
            .all(|(j, &c)| j == axis || c == 1)
    }

    /// The axis ray this point lies on, if any. The bottom point lies on
    /// every axis; we report axis 0 for it.
    pub fn axis_of(&self) -> Option<usize> {
        let nontrivial: Vec<usize> = (0..self.dim()).filter(|&j| self.coords[j] != 1).collect();
        match nontrivial.len() {
            0 => Some(0),
            1 => Some(nontrivial[0]),
            _ => None,
        }
    }

    pub fn is_ones(&self) -> bool {
        self.coords.iter().all(|&c| c == 1)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> Point {
        Point::new(cs.to_vec()).unwrap()
    }

    #[test]
    fn leq_componentwise() {
        assert!(p(&[1, 2, 3]).leq(&p(&[2, 2, 3])).unwrap());
        assert!(!p(&[1, 4, 1]).leq(&p(&[2, 2, 3])).unwrap());
        let x = p(&[3, 1, 7]);
        assert!(x.leq(&x).unwrap());
    }

    #[test]
    fn leq_dimension_mismatch() {
        let a = p(&[1, 2]);
        let b = p(&[1, 2, 3]);
        assert!(matches!(a.leq(&b), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn rejects_nonpositive_coordinates() {
        assert!(Point::new(vec![1, 0, 2]).is_err());
        assert!(Point::new(vec![3]).is_err());
    }

    #[test]
    fn axis_detection() {
        assert_eq!(p(&[1, 5, 1]).axis_of(), Some(1));
        assert_eq!(p(&[1, 1, 1]).axis_of(), Some(0));
        assert_eq!(p(&[2, 5, 1]).axis_of(), None);
        assert!(p(&[1, 5, 1]).on_axis(1));
        assert!(!p(&[1, 5, 1]).on_axis(2));
    }
}
