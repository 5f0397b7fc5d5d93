use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::PolynomialQ;

/// Strict-order constraints between value classes, with a scalar weight.
///
/// Counting assigns every class a value in `1..=N` with `value(a) < value(b)`
/// for each edge `(a, b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderSystem {
    nodes: usize,
    edges: Vec<(usize, usize)>,
    weight: BigRational,
    dead: bool,
}

impl OrderSystem {
    pub fn new(nodes: usize) -> Self {
        assert!(nodes <= 32, "order systems are limited to 32 classes");
        Self {
            nodes,
            edges: Vec::new(),
            weight: BigRational::one(),
            dead: false,
        }
    }

    pub fn nodes(&self) -> usize {
        self.nodes
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn weight(&self) -> &BigRational {
        &self.weight
    }

    pub fn is_dead(&self) -> bool {
        self.dead
    }

    /// Adds `value(a) < value(b)`; a self-loop kills the system.
    pub fn add_strict(&mut self, a: usize, b: usize) {
        assert!(a < self.nodes && b < self.nodes);
        if a == b {
            self.dead = true;
        }
        self.edges.push((a, b));
    }

    pub fn scale(&mut self, s: &BigRational) {
        self.weight *= s;
    }

    pub fn kill(&mut self) {
        self.dead = true;
    }

    /// Canonical shape of the closed system, or `None` when it admits no map.
    /// Systems with equal shapes have equal counts.
    pub fn shape(&self) -> Option<Vec<u32>> {
        if self.dead {
            return None;
        }
        self.closure().map(|p| relabelled_key(&p))
    }

    /// Predecessor masks of the transitive closure, or `None` on a cycle.
    fn closure(&self) -> Option<Vec<u32>> {
        let mut preds = vec![0u32; self.nodes];
        for &(a, b) in &self.edges {
            preds[b] |= 1 << a;
        }
        loop {
            let mut changed = false;
            for v in 0..self.nodes {
                let mut m = preds[v];
                for u in 0..self.nodes {
                    if preds[v] >> u & 1 == 1 {
                        m |= preds[u];
                    }
                }
                if m != preds[v] {
                    preds[v] = m;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        if (0..self.nodes).any(|v| preds[v] >> v & 1 == 1) {
            None
        } else {
            Some(preds)
        }
    }
}

/// Key of a closed order system under a deterministic relabelling.
/// Isomorphic systems often, but not always, share a key.
fn relabelled_key(preds: &[u32]) -> Vec<u32> {
    let n = preds.len();
    let succ_count = |v: usize| preds.iter().filter(|&&m| m >> v & 1 == 1).count();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (preds[v].count_ones(), succ_count(v), v));
    let mut pos = vec![0; n];
    for (new, &old) in order.iter().enumerate() {
        pos[old] = new;
    }
    order
        .iter()
        .map(|&old| {
            let mut m = 0u32;
            for u in 0..n {
                if preds[old] >> u & 1 == 1 {
                    m |= 1 << pos[u];
                }
            }
            m
        })
        .collect()
}

/// Counts strict-order-preserving maps with a memo table keyed by the
/// relabelled transitive closure.
#[derive(Debug, Default)]
pub struct MapCounter {
    memo: HashMap<Vec<u32>, Vec<u128>>,
}

impl MapCounter {
    pub fn new() -> Self {
        Self::default()
    }

    /// `e_k` = number of surjections onto a `k`-chain respecting every edge.
    pub fn surjection_counts(&mut self, sys: &OrderSystem) -> Option<Vec<u128>> {
        let preds = sys.closure()?;
        let key = relabelled_key(&preds);
        if let Some(v) = self.memo.get(&key) {
            return Some(v.clone());
        }
        let e = level_counts(&key);
        self.memo.insert(key, e.clone());
        Some(e)
    }

    pub fn count(&mut self, sys: &OrderSystem) -> PolynomialQ {
        if sys.dead || sys.weight.is_zero() {
            return PolynomialQ::zero();
        }
        let Some(e) = self.surjection_counts(sys) else {
            return PolynomialQ::zero();
        };
        let binom: Vec<BigRational> = e
            .iter()
            .map(|&c| BigRational::from_integer(BigInt::from(c)))
            .collect();
        PolynomialQ::from_binomial(&binom).scale(&sys.weight)
    }
}

/// Ordered partitions of all nodes into levels where every node sits above
/// all of its predecessors; peels the lowest level off one subset at a time.
fn level_counts(preds: &[u32]) -> Vec<u128> {
    let n = preds.len();
    let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let mut memo: HashMap<u32, Vec<u128>> = HashMap::new();

    fn rec(mask: u32, preds: &[u32], memo: &mut HashMap<u32, Vec<u128>>) -> Vec<u128> {
        if mask == 0 {
            return vec![1];
        }
        if let Some(v) = memo.get(&mask) {
            return v.clone();
        }
        let mut minimal = 0u32;
        for (v, &p) in preds.iter().enumerate() {
            if mask >> v & 1 == 1 && p & mask == 0 {
                minimal |= 1 << v;
            }
        }
        let mut out: Vec<u128> = vec![0];
        let mut sub = minimal;
        while sub != 0 {
            let rest = rec(mask & !sub, preds, memo);
            if out.len() < rest.len() + 1 {
                out.resize(rest.len() + 1, 0);
            }
            for (k, c) in rest.iter().enumerate() {
                out[k + 1] += c;
            }
            sub = (sub - 1) & minimal;
        }
        memo.insert(mask, out.clone());
        out
    }

    rec(full, preds, &mut memo)
}

/// `e_k` for a shape returned by [`OrderSystem::shape`].
pub fn shape_level_counts(shape: &[u32]) -> Vec<u128> {
    level_counts(shape)
}

/// Polynomial `P(N)` = weight × number of maps classes → `1..=N` satisfying
/// every strict edge.
pub fn count_strict_maps(sys: &OrderSystem) -> PolynomialQ {
    MapCounter::new().count(sys)
}
