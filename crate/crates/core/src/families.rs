//! The four classical families and their combinatorial weight evaluator.
//!
//! Each arrow contracts the two arcs at its tail with the two arcs at its head
//! according to one of a handful of pattern rules. A rule fixes a sector
//! (`A` = first block of indices, `B` = second block, `U` = the extra index of
//! the odd orthogonal family) for each of the four arcs, glues them in two
//! pairs, and optionally orders the two glued values. Summing over rule
//! choices leaves a count of order-preserving labellings, which is a
//! polynomial in `N`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagrams::{ArcSlots, OrientedChordDiagram};
use crate::polycount::{shape_level_counts, OrderSystem, PolynomialQ};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    /// gl(N) on its N-dimensional representation.
    #[serde(rename = "gl")]
    Gl,
    /// so(2N) on its 2N-dimensional representation.
    #[serde(rename = "so-even")]
    SoEven,
    /// so(2N+1) on its (2N+1)-dimensional representation.
    #[serde(rename = "so-odd")]
    SoOdd,
    /// sp(N) on its 2N-dimensional representation.
    #[serde(rename = "sp")]
    Sp,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("unknown family `{0}` (expected gl, so-even, so-odd or sp)")]
pub struct UnknownFamily(pub String);

impl Family {
    pub const ALL: [Family; 4] = [Family::Gl, Family::SoEven, Family::SoOdd, Family::Sp];

    pub fn tag(self) -> &'static str {
        match self {
            Family::Gl => "gl",
            Family::SoEven => "so-even",
            Family::SoOdd => "so-odd",
            Family::Sp => "sp",
        }
    }

    /// Dimension of the defining representation at size `n`.
    pub fn matrix_dim(self, n: usize) -> usize {
        match self {
            Family::Gl => n,
            Family::SoEven | Family::Sp => 2 * n,
            Family::SoOdd => 2 * n + 1,
        }
    }

    /// Value on the bare circle, as a polynomial.
    pub fn circle_value(self) -> PolynomialQ {
        match self {
            Family::Gl => PolynomialQ::linear(1, 0),
            Family::SoEven | Family::Sp => PolynomialQ::linear(2, 0),
            Family::SoOdd => PolynomialQ::linear(2, 1),
        }
    }

    /// Offset of the `A` block in the representation (the odd family keeps
    /// index 0 for the `U` sector).
    fn block_offset(self) -> usize {
        usize::from(self == Family::SoOdd)
    }

    /// Representation index (0-based) of a sector value (1-based).
    pub fn concrete_index(self, sector: Sector, value: usize, n: usize) -> usize {
        let s = self.block_offset();
        match sector {
            Sector::A => s + value - 1,
            Sector::B => s + n + value - 1,
            Sector::U => {
                assert_eq!(self, Family::SoOdd, "only so-odd has a U sector");
                0
            }
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Family {
    type Err = UnknownFamily;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL
            .into_iter()
            .find(|f| f.tag() == s.trim())
            .ok_or_else(|| UnknownFamily(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sector {
    A,
    B,
    U,
}

/// A pair of arc slots forced to carry the same value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Join {
    /// alpha with nu
    AlphaNu,
    /// beta with mu
    BetaMu,
    /// alpha with mu
    AlphaMu,
    /// beta with nu
    BetaNu,
}

impl Join {
    /// Slot indices into `[alpha, beta, mu, nu]`.
    pub fn slots(self) -> (usize, usize) {
        match self {
            Join::AlphaNu => (0, 3),
            Join::BetaMu => (1, 2),
            Join::AlphaMu => (0, 2),
            Join::BetaNu => (1, 3),
        }
    }
}

/// Comparison between the first and second glued value of a rule.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Order {
    None,
    /// `first < second`, plus half weight on `first == second`.
    WeakLess,
    WeakGreater,
    StrictLess,
    StrictGreater,
}

impl Order {
    fn weight_at(self, a: usize, b: usize) -> BigRational {
        let half = BigRational::new(1.into(), 2.into());
        let one = BigRational::one();
        let zero = BigRational::zero();
        match self {
            Order::None => one,
            Order::WeakLess if a == b => half,
            Order::WeakGreater if a == b => half,
            Order::WeakLess | Order::StrictLess => if a < b { one } else { zero },
            Order::WeakGreater | Order::StrictGreater => if a > b { one } else { zero },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PatternRule {
    /// Sectors of `[alpha, beta, mu, nu]`.
    pub sectors: [Sector; 4],
    pub joins: [Join; 2],
    pub order: Order,
    pub sign: i8,
    /// The rule scalar is `2^-halvings`.
    pub halvings: u32,
}

impl PatternRule {
    pub fn scalar(&self) -> BigRational {
        BigRational::new(self.sign.into(), BigInt::from(1u64 << self.halvings))
    }

    /// Weight of this rule on concrete sector values of the four slots,
    /// zero unless the glued slots agree.
    pub fn weight_on(&self, values: [usize; 4]) -> BigRational {
        let [j0, j1] = self.joins.map(Join::slots);
        if values[j0.0] != values[j0.1] || values[j1.0] != values[j1.1] {
            return BigRational::zero();
        }
        self.scalar() * self.order.weight_at(values[j0.0], values[j1.0])
    }
}

fn rule(sectors: &str, joins: [Join; 2], order: Order, sign: i8, halvings: u32) -> PatternRule {
    let s: Vec<Sector> = sectors
        .chars()
        .map(|c| match c {
            'A' => Sector::A,
            'B' => Sector::B,
            _ => Sector::U,
        })
        .collect();
    PatternRule {
        sectors: [s[0], s[1], s[2], s[3]],
        joins,
        order,
        sign,
        halvings,
    }
}

/// Rules for one arrow: 1 for gl, 8 for so-even and sp, 12 for so-odd.
pub fn pattern_rules(family: Family) -> Vec<PatternRule> {
    use Join::*;
    use Order::*;
    if family == Family::Gl {
        return vec![rule("AAAA", [AlphaNu, BetaMu], WeakLess, 1, 0)];
    }
    let mut rules = vec![
        rule("AAAA", [AlphaNu, BetaMu], WeakLess, 1, 1),
        rule("AABB", [AlphaMu, BetaNu], WeakLess, -1, 1),
        rule("BBAA", [AlphaMu, BetaNu], WeakGreater, -1, 1),
        rule("BBBB", [AlphaNu, BetaMu], WeakGreater, 1, 1),
    ];
    // mixed-block generators: symmetric pairings for sp, antisymmetric for so
    let (sign, less, greater) = match family {
        Family::Sp => (1, WeakLess, WeakGreater),
        _ => (-1, StrictLess, StrictGreater),
    };
    rules.extend([
        rule("ABBA", [AlphaMu, BetaNu], greater, sign, 1),
        rule("ABBA", [AlphaNu, BetaMu], greater, 1, 1),
        rule("ABBA", [AlphaNu, BetaMu], less, 1, 1),
        rule("ABBA", [AlphaMu, BetaNu], less, sign, 1),
    ]);
    if family == Family::SoOdd {
        rules.extend([
            rule("BUAU", [AlphaMu, BetaNu], None, -1, 1),
            rule("BUUB", [AlphaNu, BetaMu], None, 1, 1),
            rule("UAAU", [AlphaNu, BetaMu], None, 1, 1),
            rule("UAUB", [AlphaMu, BetaNu], None, -1, 1),
        ]);
    }
    rules
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut c = x;
        while self.0[c] != r {
            let next = self.0[c];
            self.0[c] = r;
            c = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra] = rb;
        }
    }
}

/// Accumulated weights, scaled by `2^(2n)`, per order-system shape.
type ShapeWeights = HashMap<Vec<u32>, i128>;

struct Evaluator<'a> {
    slots: &'a [ArcSlots],
    rules: &'a [PatternRule],
    arcs: usize,
    scale_halvings: u32,
}

impl Evaluator<'_> {
    /// Depth-first over rule choices, pruning on sector clashes.
    fn descend(&self, arrow: usize, sectors: &mut [Option<Sector>], chosen: &mut Vec<usize>, acc: &mut ShapeWeights) {
        if arrow == self.slots.len() {
            self.close(chosen, sectors, acc);
            return;
        }
        let arcs = self.slots[arrow].as_array();
        for (ri, r) in self.rules.iter().enumerate() {
            let saved: Vec<Option<Sector>> = arcs.iter().map(|&a| sectors[a]).collect();
            let mut ok = true;
            for (slot, &arc) in arcs.iter().enumerate() {
                match sectors[arc] {
                    Some(s) if s != r.sectors[slot] => {
                        ok = false;
                        break;
                    }
                    _ => sectors[arc] = Some(r.sectors[slot]),
                }
            }
            if ok {
                chosen.push(ri);
                self.descend(arrow + 1, sectors, chosen, acc);
                chosen.pop();
            }
            for (&arc, s) in arcs.iter().zip(saved) {
                sectors[arc] = s;
            }
        }
    }

    /// Turns one complete rule choice into order systems.
    fn close(&self, chosen: &[usize], sectors: &[Option<Sector>], acc: &mut ShapeWeights) {
        let mut uf = UnionFind::new(self.arcs);
        for (sl, &ri) in self.slots.iter().zip(chosen) {
            let a = sl.as_array();
            for j in self.rules[ri].joins {
                let (x, y) = j.slots();
                uf.union(a[x], a[y]);
            }
        }
        // a glued class is either entirely fixed (U) or entirely free
        let mut class_of = vec![usize::MAX; self.arcs];
        let mut root_class: HashMap<usize, (usize, bool)> = HashMap::new();
        for arc in 0..self.arcs {
            let is_u = sectors[arc] == Some(Sector::U);
            let root = uf.find(arc);
            let next = root_class.len();
            let entry = root_class.entry(root).or_insert((next, is_u));
            if entry.1 != is_u {
                return;
            }
            class_of[arc] = entry.0;
        }
        let classes = root_class.len();

        let mut sign: i128 = 1;
        let mut halvings = 0u32;
        let mut strict = Vec::new();
        let mut weak = Vec::new();
        for (sl, &ri) in self.slots.iter().zip(chosen) {
            let r = &self.rules[ri];
            sign *= i128::from(r.sign);
            halvings += r.halvings;
            let a = sl.as_array();
            let c0 = class_of[a[r.joins[0].slots().0]];
            let c1 = class_of[a[r.joins[1].slots().0]];
            match r.order {
                Order::None => {}
                Order::StrictLess => strict.push((c0, c1)),
                Order::StrictGreater => strict.push((c1, c0)),
                Order::WeakLess => weak.push((c0, c1)),
                Order::WeakGreater => weak.push((c1, c0)),
            }
        }
        let fixed: Vec<bool> = {
            let mut f = vec![false; classes];
            for &(c, u) in root_class.values() {
                f[c] = u;
            }
            f
        };

        // weak edge = strict edge + half of the merged case
        for mask in 0u32..(1 << weak.len()) {
            let mut merge = UnionFind::new(classes);
            let mut edges = strict.clone();
            for (i, &(a, b)) in weak.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    merge.union(a, b);
                } else {
                    edges.push((a, b));
                }
            }
            let mut index = vec![usize::MAX; classes];
            let mut free = 0;
            for c in 0..classes {
                if fixed[c] {
                    continue;
                }
                let r = merge.find(c);
                if index[r] == usize::MAX {
                    index[r] = free;
                    free += 1;
                }
                index[c] = index[r];
            }
            let mut sys = OrderSystem::new(free);
            for (a, b) in edges {
                sys.add_strict(index[merge.find(a)], index[merge.find(b)]);
            }
            if let Some(shape) = sys.shape() {
                let h = halvings + mask.count_ones();
                *acc.entry(shape).or_insert(0) += sign << (self.scale_halvings - h);
            }
        }
    }
}

/// Weight-system value of `diagram` for `family`, as a polynomial in `N`.
pub fn evaluate_weight(family: Family, diagram: &OrientedChordDiagram) -> PolynomialQ {
    let n = diagram.n();
    if n == 0 {
        return family.circle_value();
    }
    let slots = diagram.resolve_arcs();
    let rules = pattern_rules(family);
    let ev = Evaluator {
        slots: &slots,
        rules: &rules,
        arcs: 2 * n,
        scale_halvings: 2 * n as u32,
    };
    // split the search on the first arrow's rule
    let acc: ShapeWeights = (0..rules.len())
        .into_par_iter()
        .map(|first| {
            let mut acc = ShapeWeights::new();
            let mut sectors = vec![None; 2 * n];
            let arcs = slots[0].as_array();
            let r = &rules[first];
            for (slot, &arc) in arcs.iter().enumerate() {
                if sectors[arc].is_some_and(|s| s != r.sectors[slot]) {
                    return acc;
                }
                sectors[arc] = Some(r.sectors[slot]);
            }
            ev.descend(1, &mut sectors, &mut vec![first], &mut acc);
            acc
        })
        .reduce(ShapeWeights::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        });

    let mut binomial: Vec<BigInt> = Vec::new();
    for (shape, w) in acc {
        if w == 0 {
            continue;
        }
        for (k, e) in shape_level_counts(&shape).into_iter().enumerate() {
            if binomial.len() <= k {
                binomial.resize(k + 1, BigInt::zero());
            }
            binomial[k] += BigInt::from(w) * BigInt::from(e);
        }
    }
    let denom = BigInt::one() << (2 * n);
    let coeffs: Vec<BigRational> = binomial
        .into_iter()
        .map(|c| BigRational::new(c, denom.clone()))
        .collect();
    PolynomialQ::from_binomial(&coeffs)
}

/// Sum over all rules of their weights on concrete representation indices
/// `[alpha, beta, mu, nu]` (0-based), at size `n`. This is the contraction a
/// single arrow performs; it must agree with `Σ_a ξ^a[beta][alpha] x_a[nu][mu]`.
pub fn single_arrow_contraction(family: Family, n: usize, labels: [usize; 4]) -> BigRational {
    let decode = |idx: usize| -> (Sector, usize) {
        let s = family.block_offset();
        if family == Family::SoOdd && idx == 0 {
            (Sector::U, 0)
        } else if idx - s < n {
            (Sector::A, idx - s + 1)
        } else {
            (Sector::B, idx - s - n + 1)
        }
    };
    let decoded = labels.map(decode);
    pattern_rules(family)
        .iter()
        .filter(|r| (0..4).all(|i| r.sectors[i] == decoded[i].0))
        .map(|r| r.weight_on(decoded.map(|d| d.1)))
        .sum()
}
