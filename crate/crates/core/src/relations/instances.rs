//! Generators for 6T, 4T and STU instances.
//!
//! Three marked intervals `I1, I2, I3` sit on the circle in that order, with a
//! gap after each one where spectators may go. The arrow (or chord) for a pair
//! `(a, b)` has its first end in `I_a` and its second in `I_b`; in a term
//! `XY`, the ends of `X` come before those of `Y` inside any interval they
//! share. The intervals are relabelled by every permutation so that each
//! pair direction is exercised.

use super::{RelationDiagram, RelationInstance};
use crate::diagrams::{
    ChordDiagram, Endpoint, LegDir, OrientedChordDiagram, VertexDiagram, VertexToken,
};
use crate::polycount::qi;

const PERMUTATIONS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

/// Circle made of three intervals and three gaps, filled token by token.
struct Layout<T> {
    intervals: [Vec<T>; 3],
    gaps: [Vec<T>; 3],
}

impl<T: Clone> Layout<T> {
    fn new() -> Self {
        Self {
            intervals: Default::default(),
            gaps: Default::default(),
        }
    }

    fn word(&self) -> Vec<T> {
        let mut w = Vec::new();
        for k in 0..3 {
            w.extend_from_slice(&self.intervals[k]);
            w.extend_from_slice(&self.gaps[k]);
        }
        w
    }
}

/// A spectator placed in the gaps: `(first gap, second gap)`, with the
/// first-listed end earlier when both share a gap.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Placement {
    pub first: usize,
    pub second: usize,
    /// For arrows in a shared gap: whether the head comes first.
    pub head_first: bool,
}

/// All 12 ways to put one arrow's two ends into the three gaps.
pub fn arrow_placements() -> Vec<Placement> {
    let mut out = Vec::new();
    for first in 0..3 {
        for second in 0..3 {
            out.push(Placement { first, second, head_first: false });
            if first == second {
                out.push(Placement { first, second, head_first: true });
            }
        }
    }
    out
}

/// The 6 ways to put one chord's two ends into the three gaps.
pub fn chord_placements() -> Vec<Placement> {
    let mut out = Vec::new();
    for first in 0..3 {
        for second in first..3 {
            out.push(Placement { first, second, head_first: false });
        }
    }
    out
}

fn place_spectator_arrow(layout: &mut Layout<Endpoint>, p: Placement, id: usize) {
    let (t, h) = (Endpoint::tail(id), Endpoint::head(id));
    if p.first == p.second {
        let pair = if p.head_first { [h, t] } else { [t, h] };
        layout.gaps[p.first].extend(pair);
    } else {
        layout.gaps[p.first].push(t);
        layout.gaps[p.second].push(h);
    }
}

/// Six-term instances with `spectators` extra arrows (0 or 1).
pub fn six_t_instances(spectators: usize) -> Vec<RelationInstance> {
    assert!(spectators <= 1, "at most one spectator arrow is supported");
    let pairs = [(0, 1), (0, 2), (1, 2)];
    // (X, Y, sign) for r12r13 - r13r12 + r12r23 - r23r12 + r13r23 - r23r13
    let terms = [
        (0, 1, 1),
        (1, 0, -1),
        (0, 2, 1),
        (2, 0, -1),
        (1, 2, 1),
        (2, 1, -1),
    ];
    let placements: Vec<Option<Placement>> = if spectators == 0 {
        vec![None]
    } else {
        arrow_placements().into_iter().map(Some).collect()
    };
    let mut out = Vec::new();
    for perm in PERMUTATIONS {
        for &spec in &placements {
            let mut inst_terms = Vec::new();
            for &(x, y, sign) in &terms {
                let mut layout = Layout::new();
                for (id, p) in [(1, pairs[x]), (2, pairs[y])] {
                    layout.intervals[perm[p.0]].push(Endpoint::tail(id));
                    layout.intervals[perm[p.1]].push(Endpoint::head(id));
                }
                if let Some(s) = spec {
                    place_spectator_arrow(&mut layout, s, 3);
                }
                let d = OrientedChordDiagram::new(layout.word()).expect("generated word is valid");
                inst_terms.push((qi(sign), RelationDiagram::Oriented(d)));
            }
            let note = format!(
                "intervals {:?}{}",
                perm.map(|k| k + 1),
                spec.map_or(String::new(), |s| format!(", spectator {s:?}"))
            );
            out.push(RelationInstance {
                name: format!("6t[{}{}]", perm.map(|k| (k + 1).to_string()).join(""), spec_tag(spec)),
                terms: inst_terms,
                note,
            });
        }
    }
    out
}

fn spec_tag(spec: Option<Placement>) -> String {
    match spec {
        None => String::new(),
        Some(p) => format!(
            ",s{}{}{}",
            p.first + 1,
            p.second + 1,
            if p.head_first { "h" } else { "" }
        ),
    }
}

/// Four-term instances `t12t13 - t13t12 + t12t23 - t23t12`, without and with
/// one spectator chord.
pub fn four_t_instances() -> Vec<RelationInstance> {
    let pairs = [(0, 1), (0, 2), (1, 2)];
    let terms = [(0, 1, 1), (1, 0, -1), (0, 2, 1), (2, 0, -1)];
    let mut placements: Vec<Option<Placement>> = vec![None];
    placements.extend(chord_placements().into_iter().map(Some));
    let mut out = Vec::new();
    for perm in PERMUTATIONS {
        for &spec in &placements {
            let mut inst_terms = Vec::new();
            for &(x, y, sign) in &terms {
                let mut layout: Layout<usize> = Layout::new();
                for (id, p) in [(1, pairs[x]), (2, pairs[y])] {
                    layout.intervals[perm[p.0]].push(id);
                    layout.intervals[perm[p.1]].push(id);
                }
                if let Some(s) = spec {
                    layout.gaps[s.first].push(3);
                    layout.gaps[s.second].push(3);
                }
                let c = ChordDiagram::new(layout.word()).expect("generated word is valid");
                inst_terms.push((qi(sign), RelationDiagram::Unoriented(c)));
            }
            out.push(RelationInstance {
                name: format!(
                    "4t[{}{}]",
                    perm.map(|k| (k + 1).to_string()).join(""),
                    spec.map_or(String::new(), |p| format!(",s{}{}", p.first + 1, p.second + 1))
                ),
                terms: inst_terms,
                note: format!(
                    "t12t13 - t13t12 + t12t23 - t23t12 on intervals {:?}",
                    perm.map(|k| k + 1)
                ),
            });
        }
    }
    out
}

#[derive(Clone, Copy)]
enum Mark {
    /// The attachment point that gets split in the arrow diagrams.
    Split,
    First,
    Second,
    Spectator(Endpoint),
}

/// Bracket and cobracket configurations. Each pairs a one-vertex diagram
/// with the two-arrow difference `D1 - D2` it must equal.
///
/// Bracket: in-legs at `p`, `q` and the out-leg at `s`, legs cyclically
/// `(p, q, s)`; `D1 = {p -> s2, q -> s1}`, `D2 = {p -> s1, q -> s2}` where
/// `s1` precedes `s2`. Cobracket: in-leg at `p`, out-legs at `s`, `u`, legs
/// cyclically `(p, s, u)`; `D1 = {p2 -> s, p1 -> u}`, `D2 = {p1 -> s,
/// p2 -> u}` where `p1` precedes `p2`.
pub fn stu_instances() -> Vec<(VertexDiagram, RelationInstance)> {
    let mut out = Vec::new();
    let mut spectators: Vec<Option<Placement>> = vec![None];
    spectators.extend(arrow_placements().into_iter().map(Some));
    for bracket in [true, false] {
        // circle order of the split point and the two other points
        for swapped in [false, true] {
            for rot in 0..3 {
                for &spec in &spectators {
                    out.push(stu_config(bracket, swapped, rot, spec));
                }
            }
        }
    }
    out
}

fn stu_config(
    bracket: bool,
    swapped: bool,
    rot: usize,
    spec: Option<Placement>,
) -> (VertexDiagram, RelationInstance) {
    // three attachment points in circle order, each followed by a gap
    let points = if swapped {
        [Mark::Split, Mark::Second, Mark::First]
    } else {
        [Mark::Split, Mark::First, Mark::Second]
    };
    let mut layout: Layout<Mark> = Layout::new();
    for (k, p) in points.iter().enumerate() {
        layout.intervals[k].push(*p);
    }
    if let Some(s) = spec {
        let mut tmp: Layout<Endpoint> = Layout::new();
        place_spectator_arrow(&mut tmp, s, 3);
        for k in 0..3 {
            layout.gaps[k] = tmp.gaps[k].iter().map(|e| Mark::Spectator(*e)).collect();
        }
    }
    let marks = layout.word();

    // legs, cyclically: bracket (First, Second, Split) = (p, q, s);
    // cobracket (Split, First, Second) = (p, s, u). Stored rotated by `rot`.
    let leg_of = |m: &Mark| -> usize {
        let cyc = match (bracket, m) {
            (true, Mark::First) => 0,
            (true, Mark::Second) => 1,
            (true, Mark::Split) => 2,
            (false, Mark::Split) => 0,
            (false, Mark::First) => 1,
            (false, Mark::Second) => 2,
            _ => unreachable!(),
        };
        (cyc + rot) % 3
    };
    let mut legs = [LegDir::In; 3];
    for m in [Mark::Split, Mark::First, Mark::Second] {
        let is_split = matches!(m, Mark::Split);
        legs[leg_of(&m)] = match (bracket, is_split) {
            (true, true) | (false, false) => LegDir::Out,
            _ => LegDir::In,
        };
    }
    let vword: Vec<VertexToken> = marks
        .iter()
        .map(|m| match m {
            Mark::Spectator(e) => VertexToken::Arrow(*e),
            other => VertexToken::Leg(leg_of(other)),
        })
        .collect();
    let vd = VertexDiagram::new(vword, legs).expect("generated vertex diagram is valid");

    // arrow 1 attaches to First, arrow 2 to Second; `order` lists which arrow
    // owns the earlier half of the split point
    let arrows_word = |earlier: usize, later: usize| -> OrientedChordDiagram {
        let end = |id: usize, at_split: bool| match (bracket, at_split) {
            (true, true) | (false, false) => Endpoint::head(id),
            _ => Endpoint::tail(id),
        };
        let mut w = Vec::new();
        for m in &marks {
            match m {
                Mark::Split => {
                    w.push(end(earlier, true));
                    w.push(end(later, true));
                }
                Mark::First => w.push(end(1, false)),
                Mark::Second => w.push(end(2, false)),
                Mark::Spectator(e) => w.push(*e),
            }
        }
        OrientedChordDiagram::new(w).expect("generated word is valid")
    };
    // bracket: D1 = {p -> s2, q -> s1}: q's arrow (2) lands first.
    // cobracket: D1 = {p2 -> s, p1 -> u}: u's arrow (2) leaves first.
    let d1 = arrows_word(2, 1);
    let d2 = arrows_word(1, 2);
    let kind = if bracket { "bracket" } else { "cobracket" };
    let name = format!(
        "stu[{kind},{},rot{rot}{}]",
        if swapped { "swapped" } else { "ordered" },
        spec_tag(spec)
    );
    let inst = RelationInstance {
        name,
        terms: vec![
            (qi(1), RelationDiagram::Oriented(d1)),
            (qi(-1), RelationDiagram::Oriented(d2)),
        ],
        note: format!("{kind} vertex {vd}"),
    };
    (vd, inst)
}
