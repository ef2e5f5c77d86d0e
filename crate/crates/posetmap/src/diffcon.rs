//! Feasibility of systems of difference constraints `v_a - v_b <= c` over
//! integer variables, decided exactly by negative-cycle detection on the
//! constraint graph (Bellman-Ford). Node 0 is the zero node, so unary
//! bounds are encoded against it.

/// `vars` excludes the zero node; constraints reference nodes `0..=vars`.
#[derive(Debug, Clone)]
pub struct DiffSystem {
    nodes: usize,
    /// (a, b, c) encodes `v_a - v_b <= c`
    constraints: Vec<(usize, usize, i64)>,
}

pub const ZERO: usize = 0;

impl DiffSystem {
    pub fn new(vars: usize) -> Self {
        DiffSystem {
            nodes: vars + 1,
            constraints: Vec::new(),
        }
    }

    pub fn le(&mut self, a: usize, b: usize, c: i64) {
        debug_assert!(a < self.nodes && b < self.nodes);
        self.constraints.push((a, b, c));
    }

    /// `v_a <= c`
    pub fn upper(&mut self, a: usize, c: i64) {
        self.le(a, ZERO, c);
    }

    /// `v_a >= c`
    pub fn lower(&mut self, a: usize, c: i64) {
        self.le(ZERO, a, -c);
    }

    /// Returns a satisfying assignment (zero node normalized to 0), or
    /// `None` when the system is infeasible.
    pub fn solve(&self) -> Option<Vec<i64>> {
        // edge b -> a with weight c for v_a - v_b <= c; run from a virtual
        // source at distance 0 to every node
        let mut dist = vec![0i64; self.nodes];
        for round in 0..self.nodes {
            let mut changed = false;
            for &(a, b, c) in &self.constraints {
                if dist[b] + c < dist[a] {
                    dist[a] = dist[b] + c;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
            if round == self.nodes - 1 {
                return None; // negative cycle
            }
        }
        let z = dist[ZERO];
        Some(dist.iter().map(|d| d - z).collect())
    }

    pub fn is_feasible(&self) -> bool {
        self.solve().is_some()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simple_feasible() {
        let mut s = DiffSystem::new(2);
        s.lower(1, 3);
        s.upper(1, 10);
        s.le(2, 1, -1); // v2 <= v1 - 1
        s.lower(2, 1);
        let sol = s.solve().unwrap();
        assert!(sol[1] >= 3 && sol[1] <= 10);
        assert!(sol[2] <= sol[1] - 1 && sol[2] >= 1);
    }

    #[test]
    fn infeasible_cycle() {
        let mut s = DiffSystem::new(2);
        s.le(1, 2, -1); // v1 <= v2 - 1
        s.le(2, 1, -1); // v2 <= v1 - 1
        assert!(!s.is_feasible());
    }

    #[test]
    fn infeasible_bounds() {
        let mut s = DiffSystem::new(1);
        s.lower(1, 5);
        s.upper(1, 4);
        assert!(!s.is_feasible());
    }
}
