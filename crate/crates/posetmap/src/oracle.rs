//! Brute-force finite-window reference semantics: exhaustive evaluation
//! tables over `[1..M]^n`, pairwise scans for injectivity and
//! monotonicity, and a deterministic generator of valid elements for
//! randomized cross-checking.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::perm::Perm;
use crate::pmap::PiecewiseMap;
use crate::point::Point;

/// Exhaustive restriction of a map to the window `[1..M]^n`, stored flat
/// in lexicographic order.
#[derive(Debug, Clone)]
pub struct WindowTable {
    dim: usize,
    m: i64,
    entries: Vec<Option<Point>>,
}

/// Verdicts of the pairwise window scans, with counterexample pairs.
#[derive(Debug, Clone)]
pub struct BruteReport {
    pub injective_on_window: bool,
    pub monotone_on_window: bool,
    pub injective_witness: Option<(Point, Point)>,
    pub monotone_witness: Option<(Point, Point)>,
}

impl WindowTable {
    /// Evaluate `a` at every point of `[1..M]^n`.
    pub fn materialize(a: &PiecewiseMap, m: i64) -> Result<WindowTable> {
        let dim = a.dim();
        let size = (m as usize).pow(dim as u32);
        let mut entries = Vec::with_capacity(size);
        let mut coords = vec![1i64; dim];
        for _ in 0..size {
            entries.push(a.evaluate(&Point::new(coords.clone())?)?);
            for i in (0..dim).rev() {
                if coords[i] < m {
                    coords[i] += 1;
                    for c in coords.iter_mut().skip(i + 1) {
                        *c = 1;
                    }
                    break;
                }
            }
        }
        Ok(WindowTable { dim, m, entries })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn window_bound(&self) -> i64 {
        self.m
    }

    pub fn len(&self) -> usize {
        self.entries.iter().filter(|e| e.is_some()).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn decode(&self, mut lin: usize) -> Point {
        let mu = self.m as usize;
        let mut c = vec![0i64; self.dim];
        for i in (0..self.dim).rev() {
            c[i] = (lin % mu) as i64 + 1;
            lin /= mu;
        }
        Point::new(c).expect(">= 1")
    }

    fn encode(&self, p: &Point) -> Option<usize> {
        let mu = self.m as usize;
        let mut lin = 0usize;
        for &c in p.coords() {
            if c < 1 || c > self.m {
                return None;
            }
            lin = lin * mu + (c as usize - 1);
        }
        Some(lin)
    }

    /// The table entry, if the point is inside the window.
    pub fn get(&self, p: &Point) -> Option<&Option<Point>> {
        self.encode(p).map(|lin| &self.entries[lin])
    }

    pub fn iter(&self) -> impl Iterator<Item = (Point, &Option<Point>)> + '_ {
        self.entries.iter().enumerate().map(|(lin, e)| (self.decode(lin), e))
    }

    /// Pairwise scans over the whole window.
    pub fn brute_checks(&self) -> BruteReport {
        let mut injective_on_window = true;
        let mut monotone_on_window = true;
        let mut injective_witness = None;
        let mut monotone_witness = None;
        let size = self.entries.len();
        'inj: for i in 0..size {
            let vi = match &self.entries[i] {
                Some(v) => v,
                None => continue,
            };
            for j in i + 1..size {
                if self.entries[j].as_ref() == Some(vi) {
                    injective_on_window = false;
                    injective_witness = Some((self.decode(i), self.decode(j)));
                    break 'inj;
                }
            }
        }
        'mono: for i in 0..size {
            let vi = match &self.entries[i] {
                Some(v) => v,
                None => continue,
            };
            let pi = self.decode(i);
            for j in 0..size {
                let vj = match &self.entries[j] {
                    Some(v) => v,
                    None => continue,
                };
                let pj = self.decode(j);
                if pi.leq(&pj).expect("same dim") && !vi.leq(vj).expect("same dim") {
                    monotone_on_window = false;
                    monotone_witness = Some((pi, pj));
                    break 'mono;
                }
            }
        }
        BruteReport {
            injective_on_window,
            monotone_on_window,
            injective_witness,
            monotone_witness,
        }
    }

    /// True iff `b` evaluates identically on every window point.
    pub fn pointwise_match(&self, b: &PiecewiseMap) -> Result<bool> {
        for (p, e) in self.iter() {
            if &b.evaluate(&p)? != e {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Deterministic pseudo-random valid element: a composition of `budget`
/// constructor outputs (units, finite-hole idempotents, cylinder shifts)
/// drawn from a seeded ChaCha8 stream. Identical seeds give identical
/// elements on every platform.
pub fn generate(dim: usize, seed: u64, budget: usize) -> Result<PiecewiseMap> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut acc = PiecewiseMap::identity(dim);
    let steps = budget.max(1);
    for _ in 0..steps {
        let factor = random_constructor(dim, &mut rng)?;
        acc = acc.compose(&factor)?;
    }
    Ok(acc)
}

fn random_constructor(dim: usize, rng: &mut ChaCha8Rng) -> Result<PiecewiseMap> {
    match rng.gen_range(0..3u32) {
        0 => {
            let perms = Perm::all(dim);
            let i = rng.gen_range(0..perms.len());
            Ok(PiecewiseMap::unit(perms[i].clone()))
        }
        1 => {
            let count = rng.gen_range(1..=5usize);
            let mut off = Vec::with_capacity(count);
            for _ in 0..count {
                let coords = (0..dim).map(|_| rng.gen_range(1..=4i64)).collect();
                off.push(Point::new(coords)?);
            }
            PiecewiseMap::identity_off(dim, off)
        }
        _ => {
            let axis = rng.gen_range(0..dim);
            let bounds: Vec<i64> = (0..dim)
                .map(|j| if j == axis { 0 } else { rng.gen_range(1..=4i64) })
                .collect();
            let amount = -rng.gen_range(1..=3i64);
            PiecewiseMap::cylinder_shift(dim, axis, &bounds, amount)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(cs: &[i64]) -> Point {
        Point::new(cs.to_vec()).unwrap()
    }

    #[test]
    fn materialize_identity() {
        let t = WindowTable::materialize(&PiecewiseMap::identity(3), 3).unwrap();
        assert_eq!(t.len(), 27);
        for (p, e) in t.iter() {
            assert_eq!(e.as_ref(), Some(&p));
        }
    }

    #[test]
    fn materialize_varpi_entry_count() {
        let w = PiecewiseMap::cylinder_shift(3, 0, &[0, 2, 2], -1).unwrap();
        let t = WindowTable::materialize(&w, 4).unwrap();
        assert_eq!(t.len(), 60);
    }

    #[test]
    fn materialize_idempotent_entry_count() {
        let e = PiecewiseMap::identity_off(3, vec![pt(&[2, 2, 2])]).unwrap();
        let t = WindowTable::materialize(&e, 2).unwrap();
        assert_eq!(t.len(), 7);
    }

    #[test]
    fn brute_detects_non_monotone_patch() {
        let m = PiecewiseMap::from_parts(
            3,
            vec![(
                crate::region::BoxRegion::full(3),
                crate::rule::Rule::identity(3),
            )],
            vec![pt(&[2, 2, 2])],
            vec![(pt(&[1, 1, 1]), pt(&[2, 2, 2]))],
        )
        .unwrap();
        let r = WindowTable::materialize(&m, 5).unwrap().brute_checks();
        assert!(r.injective_on_window);
        assert!(!r.monotone_on_window);
        assert_eq!(r.monotone_witness, Some((pt(&[1, 1, 1]), pt(&[1, 1, 2]))));
    }

    #[test]
    fn pointwise_match_roundtrip() {
        let w = PiecewiseMap::cylinder_shift(3, 0, &[0, 2, 2], -1).unwrap();
        let t = WindowTable::materialize(&w, 6).unwrap();
        assert!(t.pointwise_match(&w).unwrap());
        assert!(!t.pointwise_match(&PiecewiseMap::identity(3)).unwrap());
    }

    #[test]
    fn generate_is_valid_and_deterministic() {
        for seed in 0..30u64 {
            let a = generate(3, seed, 3).unwrap();
            assert!(a.is_valid(), "seed {seed}");
            let b = generate(3, seed, 3).unwrap();
            assert!(a.equals(&b).unwrap());
        }
    }

    #[test]
    fn generate_has_variety() {
        let sample: Vec<PiecewiseMap> =
            (0..40).map(|s| generate(3, s, 2).unwrap()).collect();
        let mut distinct: Vec<&PiecewiseMap> = Vec::new();
        for a in &sample {
            if !distinct.iter().any(|d| d.equals(a).unwrap()) {
                distinct.push(a);
            }
        }
        assert!(distinct.len() >= 10, "only {} distinct", distinct.len());
    }
}
