//! Order combinatorics on `N^n`: the cofiniteness criterion for unions of
//! up-sets, antichain witnesses against finite chain covers of `N^2`, and
//! explicit chain covers of complements of up-set unions.

use crate::error::{Error, Result};
use crate::point::Point;
use crate::region::RegionSet;

/// Decides whether `N^n` minus the union of the up-sets of `points` is
/// finite, by the axis criterion: the complement is finite iff every
/// coordinate axis ray carries one of the points.
pub fn upset_union_cofinite(dim: usize, points: &[Point]) -> Result<bool> {
    for p in points {
        if p.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: p.dim(),
            });
        }
        if p.is_ones() {
            return Err(Error::Precondition(format!(
                "point {p} is the bottom of the poset; its up-set is all of N^n"
            )));
        }
    }
    Ok((0..dim).all(|axis| points.iter().any(|p| p.on_axis(axis))))
}

/// The complement region `N^n \ union of up-sets`; the independent route
/// for checking `upset_union_cofinite`.
pub fn upset_union_complement(dim: usize, points: &[Point]) -> Result<RegionSet> {
    Ok(RegionSet::upset_of_points(dim, points)?.complement())
}

/// The `k+1`-element antichain `{(1,k+1),(2,k),...,(k+1,1)}` in `N^2`
/// certifying that no family of `k` chains covers `N^2`.
pub fn antichain_witness(k: i64) -> Result<Vec<Point>> {
    if k < 1 {
        return Err(Error::Precondition(format!("k must be >= 1, got {k}")));
    }
    (1..=k + 1)
        .map(|i| Point::new(vec![i, k + 2 - i]))
        .collect()
}

/// One chain of the cover in Lemma-2.8 style: all coordinates fixed except
/// one free coordinate ranging over all of `N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainDescriptor {
    pub kind: ChainKind,
    /// coordinate index -> fixed value (0-based indices)
    pub fixed: Vec<(usize, i64)>,
    pub free: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChainKind {
    /// first coordinate fixed, second free
    L,
    /// second coordinate fixed, first free
    R,
}

impl ChainDescriptor {
    pub fn contains(&self, p: &Point) -> bool {
        self.fixed.iter().all(|&(i, v)| p.coord(i) == v)
    }
}

/// The chain family covering `N^n \ (up(y12) u up(x_3) u ... u up(x_n))`.
///
/// `y12 = (y1,y2,1,...,1)` with `y1,y2 >= 2` lies on the open 1-2
/// coordinate plane; `xs[i]` lies on axis `i+2` with value `>= 2`. Returns
/// the `(y1-1 + y2-1) * prod(x_i - 1)` descriptors of the cover.
pub fn chain_cover(y12: &Point, xs: &[Point]) -> Result<Vec<ChainDescriptor>> {
    let dim = y12.dim();
    if dim < 3 {
        return Err(Error::Precondition(format!(
            "chain cover needs dimension >= 3, got {dim}"
        )));
    }
    if xs.len() != dim - 2 {
        return Err(Error::Precondition(format!(
            "expected {} axis points, got {}",
            dim - 2,
            xs.len()
        )));
    }
    let y1 = y12.coord(0);
    let y2 = y12.coord(1);
    if y1 < 2 || y2 < 2 || y12.coords()[2..].iter().any(|&c| c != 1) {
        return Err(Error::Precondition(format!(
            "{y12} is not on the open 1-2 coordinate plane"
        )));
    }
    let mut bounds = Vec::with_capacity(dim - 2);
    for (off, x) in xs.iter().enumerate() {
        let axis = off + 2;
        if x.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: x.dim(),
            });
        }
        if !x.on_axis(axis) || x.coord(axis) < 2 {
            return Err(Error::Precondition(format!(
                "{x} is not on axis {} with value >= 2",
                axis + 1
            )));
        }
        bounds.push(x.coord(axis));
    }
    // all tuples (k_3,...,k_n) with k_m < x_m
    let mut tails: Vec<Vec<i64>> = vec![vec![]];
    for &b in &bounds {
        let mut next = Vec::new();
        for t in &tails {
            for v in 1..b {
                let mut t2 = t.clone();
                t2.push(v);
                next.push(t2);
            }
        }
        tails = next;
    }
    let mut out = Vec::new();
    for tail in &tails {
        let tail_fixed = |extra: (usize, i64)| -> Vec<(usize, i64)> {
            let mut f = vec![extra];
            f.extend(tail.iter().enumerate().map(|(m, &v)| (m + 2, v)));
            f
        };
        for i in 1..y1 {
            out.push(ChainDescriptor {
                kind: ChainKind::L,
                fixed: tail_fixed((0, i)),
                free: 1,
            });
        }
        for j in 1..y2 {
            out.push(ChainDescriptor {
                kind: ChainKind::R,
                fixed: tail_fixed((1, j)),
                free: 0,
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(cs: &[i64]) -> Point {
        Point::new(cs.to_vec()).unwrap()
    }

    #[test]
    fn cofinite_criterion_all_axes_hit() {
        let pts = [pt(&[2, 1, 1]), pt(&[1, 3, 1]), pt(&[1, 1, 4])];
        assert!(upset_union_cofinite(3, &pts).unwrap());
        let comp = upset_union_complement(3, &pts).unwrap();
        assert!(comp.is_finite());
        assert_eq!(comp.cardinality().unwrap(), 6);
    }

    #[test]
    fn cofinite_criterion_missing_axis() {
        let pts = [pt(&[2, 2, 1]), pt(&[1, 1, 3])];
        assert!(!upset_union_cofinite(3, &pts).unwrap());
        assert!(!upset_union_complement(3, &pts).unwrap().is_finite());
    }

    #[test]
    fn cofinite_criterion_n2() {
        let pts = [pt(&[2, 1]), pt(&[1, 2])];
        assert!(upset_union_cofinite(2, &pts).unwrap());
    }

    #[test]
    fn bottom_point_rejected() {
        let pts = [pt(&[1, 1, 1])];
        assert!(upset_union_cofinite(3, &pts).is_err());
    }

    #[test]
    fn antichain_examples() {
        assert_eq!(
            antichain_witness(3).unwrap(),
            vec![pt(&[1, 4]), pt(&[2, 3]), pt(&[3, 2]), pt(&[4, 1])]
        );
        assert_eq!(antichain_witness(1).unwrap(), vec![pt(&[1, 2]), pt(&[2, 1])]);
    }

    #[test]
    fn antichain_pairwise_incomparable() {
        let pts = antichain_witness(10).unwrap();
        assert_eq!(pts.len(), 11);
        let mut pairs = 0;
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                assert!(!pts[i].leq(&pts[j]).unwrap());
                assert!(!pts[j].leq(&pts[i]).unwrap());
                pairs += 1;
            }
        }
        assert_eq!(pairs, 55);
    }

    #[test]
    fn no_injection_into_k_chains() {
        // pigeonhole over all assignments of the k+1 antichain points to k
        // chains: some chain always receives two incomparable points
        for k in 1..=6usize {
            let pts = antichain_witness(k as i64).unwrap();
            let mut assignment = vec![0usize; pts.len()];
            loop {
                let mut buckets: Vec<Vec<usize>> = vec![vec![]; k];
                for (p, &c) in assignment.iter().enumerate() {
                    buckets[c].push(p);
                }
                let valid_partition = buckets.iter().all(|b| {
                    b.iter().all(|&i| {
                        b.iter().all(|&j| {
                            i == j
                                || pts[i].leq(&pts[j]).unwrap()
                                || pts[j].leq(&pts[i]).unwrap()
                        })
                    })
                });
                assert!(!valid_partition);
                // next assignment
                let mut i = 0;
                while i < assignment.len() {
                    assignment[i] += 1;
                    if assignment[i] < k {
                        break;
                    }
                    assignment[i] = 0;
                    i += 1;
                }
                if i == assignment.len() {
                    break;
                }
            }
        }
    }

    #[test]
    fn chain_cover_counts() {
        let d = chain_cover(&pt(&[2, 3, 1]), &[pt(&[1, 1, 4])]).unwrap();
        assert_eq!(d.len(), 9);
        let d = chain_cover(&pt(&[2, 2, 1]), &[pt(&[1, 1, 2])]).unwrap();
        assert_eq!(d.len(), 2);
    }

    #[test]
    fn chain_cover_matches_complement_on_window() {
        let y = pt(&[2, 3, 1]);
        let x3 = pt(&[1, 1, 4]);
        let descs = chain_cover(&y, &[x3.clone()]).unwrap();
        let comp = upset_union_complement(3, &[y, x3]).unwrap();
        let m = 40;
        for a in 1..=m {
            for b in 1..=m {
                for c in 1..=m {
                    let p = pt(&[a, b, c]);
                    let in_cover = descs.iter().any(|d| d.contains(&p));
                    assert_eq!(in_cover, comp.contains(&p), "at {p}");
                }
            }
        }
    }

    #[test]
    fn chain_cover_rejects_malformed() {
        assert!(chain_cover(&pt(&[1, 3, 1]), &[pt(&[1, 1, 4])]).is_err());
        assert!(chain_cover(&pt(&[2, 3, 2]), &[pt(&[1, 1, 4])]).is_err());
        assert!(chain_cover(&pt(&[2, 3, 1]), &[pt(&[1, 4, 1])]).is_err());
    }
}
