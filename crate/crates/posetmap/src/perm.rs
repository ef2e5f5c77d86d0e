use std::fmt;

use crate::error::{Error, Result};

/// A permutation of coordinate positions `{0,...,n-1}`; `target(i)` is the
/// position coordinate `i` moves to.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    targets: Vec<usize>,
}

impl Perm {
    pub fn new(targets: Vec<usize>) -> Result<Self> {
        let n = targets.len();
        let mut seen = vec![false; n];
        for &t in &targets {
            if t >= n || seen[t] {
                return Err(Error::InvalidConstruction(format!(
                    "not a permutation: {targets:?}"
                )));
            }
            seen[t] = true;
        }
        Ok(Perm { targets })
    }

    pub fn identity(n: usize) -> Self {
        Perm {
            targets: (0..n).collect(),
        }
    }

    /// All `n!` permutations, in lexicographic order of their target lists.
    pub fn all(n: usize) -> Vec<Perm> {
        use itertools::Itertools;
        (0..n)
            .permutations(n)
            .map(|targets| Perm { targets })
            .collect()
    }

    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut targets: Vec<usize> = (0..n).collect();
        targets.swap(a, b);
        Perm { targets }
    }

    pub fn dim(&self) -> usize {
        self.targets.len()
    }

    pub fn target(&self, i: usize) -> usize {
        self.targets[i]
    }

    pub fn source(&self, k: usize) -> usize {
        self.targets.iter().position(|&t| t == k).expect("bijective")
    }

    pub fn inverse(&self) -> Perm {
        let mut targets = vec![0; self.dim()];
        for (i, &t) in self.targets.iter().enumerate() {
            targets[t] = i;
        }
        Perm { targets }
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        Perm {
            targets: self.targets.iter().map(|&t| other.targets[t]).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.targets.iter().enumerate().all(|(i, &t)| i == t)
    }

    pub fn targets(&self) -> &[usize] {
        &self.targets
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, t) in self.targets.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}->{}", i + 1, t + 1)?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_and_invert() {
        let c = Perm::new(vec![1, 2, 0]).unwrap(); // 3-cycle
        assert!(c.then(&c.inverse()).is_identity());
        assert_eq!(c.then(&c).then(&c), Perm::identity(3));
        assert_eq!(Perm::all(3).len(), 6);
        assert_eq!(Perm::all(2).len(), 2);
    }

    #[test]
    fn rejects_non_permutations() {
        assert!(Perm::new(vec![0, 0, 1]).is_err());
        assert!(Perm::new(vec![0, 3, 1]).is_err());
    }
}
