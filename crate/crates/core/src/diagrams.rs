//! Oriented and unoriented chord diagrams on a single circle.
//!
//! A diagram is stored as its endpoint word read along the (counterclockwise)
//! circle. Arc `k` runs from endpoint `k` to endpoint `k + 1 (mod 2n)`; an
//! endpoint's incoming arc is the one ending at it and its outgoing arc the
//! one starting at it.
//!
//! The text format is a space-separated token list: `t<id>`/`h<id>` for arrow
//! tails and heads, `c<id>` for unoriented chord endpoints. Ids are arbitrary
//! digit strings and are renumbered `1..=n` by first occurrence. The empty
//! string is the bare circle.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Largest arrow/chord count accepted by the enumerators.
pub const MAX_ENUMERATED_ARROWS: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Role {
    Tail,
    Head,
}

impl Role {
    fn letter(self) -> char {
        match self {
            Role::Tail => 't',
            Role::Head => 'h',
        }
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Role::Tail => "tail",
            Role::Head => "head",
        })
    }
}

/// One arrow endpoint. Field order gives the canonical token order:
/// tails before heads, then ids numerically.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Endpoint {
    pub role: Role,
    /// 1-based arrow id.
    pub arrow: usize,
}

impl Endpoint {
    pub fn tail(arrow: usize) -> Self {
        Endpoint { role: Role::Tail, arrow }
    }

    pub fn head(arrow: usize) -> Self {
        Endpoint { role: Role::Head, arrow }
    }
}

impl fmt::Display for Endpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.role.letter(), self.arrow)
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("token {index}: empty token")]
    EmptyToken { index: usize },
    #[error("token {index}: non-ASCII input")]
    NonAscii { index: usize },
    #[error("token {index}: malformed token `{token}`")]
    Malformed { index: usize, token: String },
    #[error("token {index}: arrow and chord tokens cannot be mixed")]
    MixedKinds { index: usize },
    #[error("token {index}: id `{id}` already has a {role}")]
    DuplicateRole { index: usize, id: String, role: Role },
    #[error("token {index}: id `{id}` appears more than twice")]
    TooManyOccurrences { index: usize, id: String },
    #[error("token {index}: id `{id}` appears only once")]
    Unpaired { index: usize, id: String },
    #[error("expected an {expected} diagram")]
    WrongKind { expected: &'static str },
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum DiagramError {
    #[error("invalid diagram word: {0}")]
    InvalidWord(String),
    #[error("arrow count {n} outside the supported range 0..={max}")]
    OutOfRange { n: usize, max: usize },
    #[error("invalid vertex diagram: {0}")]
    InvalidVertex(String),
}

/// Arc indices around one arrow: `alpha`/`beta` are the arcs entering and
/// leaving the tail, `mu`/`nu` those entering and leaving the head.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ArcSlots {
    pub alpha: usize,
    pub beta: usize,
    pub mu: usize,
    pub nu: usize,
}

impl ArcSlots {
    pub fn as_array(&self) -> [usize; 4] {
        [self.alpha, self.beta, self.mu, self.nu]
    }
}

/// A circle with `n` arrows. Always holds a validated word with ids
/// numbered `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct OrientedChordDiagram {
    word: Vec<Endpoint>,
}

impl OrientedChordDiagram {
    pub fn bare() -> Self {
        Self::default()
    }

    /// Validates `word` and renumbers ids by first occurrence.
    pub fn new(word: Vec<Endpoint>) -> Result<Self, DiagramError> {
        let mut seen: Vec<(usize, [bool; 2])> = Vec::new();
        for ep in &word {
            let slot = match seen.iter_mut().find(|(id, _)| *id == ep.arrow) {
                Some(s) => s,
                None => {
                    seen.push((ep.arrow, [false; 2]));
                    seen.last_mut().unwrap()
                }
            };
            let r = ep.role as usize;
            if slot.1[r] {
                return Err(DiagramError::InvalidWord(format!(
                    "arrow {} has two {}s",
                    ep.arrow, ep.role
                )));
            }
            slot.1[r] = true;
        }
        if let Some((id, _)) = seen.iter().find(|(_, r)| !(r[0] && r[1])) {
            return Err(DiagramError::InvalidWord(format!(
                "arrow {id} lacks a tail or a head"
            )));
        }
        Ok(Self {
            word: renumber(&word),
        })
    }

    pub fn n(&self) -> usize {
        self.word.len() / 2
    }

    pub fn word(&self) -> &[Endpoint] {
        &self.word
    }

    /// Rotates the starting point forward by `k` endpoints.
    pub fn rotate(&self, k: usize) -> Self {
        if self.word.is_empty() {
            return self.clone();
        }
        let k = k % self.word.len();
        let mut w = self.word[k..].to_vec();
        w.extend_from_slice(&self.word[..k]);
        Self { word: renumber(&w) }
    }

    /// Lexicographically least renumbered rotation.
    pub fn canonical(&self) -> Self {
        (0..self.word.len().max(1))
            .map(|k| self.rotate(k))
            .min()
            .unwrap_or_default()
    }

    pub fn is_canonical(&self) -> bool {
        *self == self.canonical()
    }

    /// Positions of (tail, head) for arrows `1..=n`, indexed by `arrow - 1`.
    pub fn arrow_positions(&self) -> Vec<(usize, usize)> {
        let mut pos = vec![(0, 0); self.n()];
        for (k, ep) in self.word.iter().enumerate() {
            match ep.role {
                Role::Tail => pos[ep.arrow - 1].0 = k,
                Role::Head => pos[ep.arrow - 1].1 = k,
            }
        }
        pos
    }

    /// The four arcs around each arrow, indexed by `arrow - 1`.
    pub fn resolve_arcs(&self) -> Vec<ArcSlots> {
        let len = self.word.len();
        let prev = |k: usize| (k + len - 1) % len;
        self.arrow_positions()
            .into_iter()
            .map(|(t, h)| ArcSlots {
                alpha: prev(t),
                beta: t,
                mu: prev(h),
                nu: h,
            })
            .collect()
    }

    /// Reverses every arrow.
    pub fn reversed_arrows(&self) -> Self {
        let w = self
            .word
            .iter()
            .map(|ep| Endpoint {
                role: match ep.role {
                    Role::Tail => Role::Head,
                    Role::Head => Role::Tail,
                },
                arrow: ep.arrow,
            })
            .collect::<Vec<_>>();
        Self { word: renumber(&w) }
    }

    pub fn forget_orientation(&self) -> ChordDiagram {
        ChordDiagram {
            word: self.word.iter().map(|ep| ep.arrow).collect(),
        }
    }
}

impl fmt::Display for OrientedChordDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, ep) in self.word.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{ep}")?;
        }
        Ok(())
    }
}

impl FromStr for OrientedChordDiagram {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match parse_diagram(s)? {
            ParsedDiagram::Oriented(d) => Ok(d),
            ParsedDiagram::Unoriented(c) if c.n() == 0 => Ok(Self::bare()),
            ParsedDiagram::Unoriented(_) => Err(ParseError::WrongKind { expected: "oriented" }),
        }
    }
}

fn renumber(word: &[Endpoint]) -> Vec<Endpoint> {
    let mut map: Vec<(usize, usize)> = Vec::new();
    word.iter()
        .map(|ep| {
            let id = match map.iter().find(|(old, _)| *old == ep.arrow) {
                Some(&(_, new)) => new,
                None => {
                    map.push((ep.arrow, map.len() + 1));
                    map.len()
                }
            };
            Endpoint { role: ep.role, arrow: id }
        })
        .collect()
}

fn renumber_ids(word: &[usize]) -> Vec<usize> {
    let mut map: Vec<(usize, usize)> = Vec::new();
    word.iter()
        .map(|&c| match map.iter().find(|(old, _)| *old == c) {
            Some(&(_, new)) => new,
            None => {
                map.push((c, map.len() + 1));
                map.len()
            }
        })
        .collect()
}

/// A circle with `n` unoriented chords; every id occurs exactly twice.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ChordDiagram {
    word: Vec<usize>,
}

impl ChordDiagram {
    pub fn bare() -> Self {
        Self::default()
    }

    pub fn new(word: Vec<usize>) -> Result<Self, DiagramError> {
        let ids: BTreeSet<usize> = word.iter().copied().collect();
        for id in ids {
            let count = word.iter().filter(|&&c| c == id).count();
            if count != 2 {
                return Err(DiagramError::InvalidWord(format!(
                    "chord {id} occurs {count} times"
                )));
            }
        }
        Ok(Self {
            word: renumber_ids(&word),
        })
    }

    pub fn n(&self) -> usize {
        self.word.len() / 2
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn rotate(&self, k: usize) -> Self {
        if self.word.is_empty() {
            return self.clone();
        }
        let k = k % self.word.len();
        let mut w = self.word[k..].to_vec();
        w.extend_from_slice(&self.word[..k]);
        Self {
            word: renumber_ids(&w),
        }
    }

    pub fn canonical(&self) -> Self {
        (0..self.word.len().max(1))
            .map(|k| self.rotate(k))
            .min()
            .unwrap_or_default()
    }

    /// Orients every chord from its first occurrence to its second.
    pub fn orient_first_to_second(&self) -> OrientedChordDiagram {
        self.orient(0)
    }

    /// Orients chord `c` (1-based) from its second occurrence to its first
    /// when bit `c - 1` of `flips` is set, otherwise first to second.
    pub fn orient(&self, flips: u64) -> OrientedChordDiagram {
        let mut seen = vec![false; self.n()];
        let word = self
            .word
            .iter()
            .map(|&c| {
                let first = !seen[c - 1];
                seen[c - 1] = true;
                let flipped = flips >> (c - 1) & 1 == 1;
                if first != flipped {
                    Endpoint::tail(c)
                } else {
                    Endpoint::head(c)
                }
            })
            .collect::<Vec<_>>();
        OrientedChordDiagram {
            word: renumber(&word),
        }
    }
}

impl fmt::Display for ChordDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.word.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "c{c}")?;
        }
        Ok(())
    }
}

impl FromStr for ChordDiagram {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match parse_diagram(s)? {
            ParsedDiagram::Unoriented(c) => Ok(c),
            ParsedDiagram::Oriented(d) if d.n() == 0 => Ok(Self::bare()),
            ParsedDiagram::Oriented(_) => Err(ParseError::WrongKind { expected: "unoriented" }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParsedDiagram {
    Oriented(OrientedChordDiagram),
    Unoriented(ChordDiagram),
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum TokenKind {
    Arrow(Role),
    Chord,
}

/// Parses the diagram text format. The empty string is the bare circle and
/// is returned as an oriented diagram.
pub fn parse_diagram(text: &str) -> Result<ParsedDiagram, ParseError> {
    if text.is_empty() {
        return Ok(ParsedDiagram::Oriented(OrientedChordDiagram::bare()));
    }
    let mut tokens: Vec<(TokenKind, &str)> = Vec::new();
    for (index, tok) in text.split(' ').enumerate() {
        if tok.is_empty() {
            return Err(ParseError::EmptyToken { index });
        }
        if !tok.is_ascii() {
            return Err(ParseError::NonAscii { index });
        }
        let (head, digits) = tok.split_at(1);
        let kind = match head {
            "t" => TokenKind::Arrow(Role::Tail),
            "h" => TokenKind::Arrow(Role::Head),
            "c" => TokenKind::Chord,
            _ => {
                return Err(ParseError::Malformed {
                    index,
                    token: tok.to_string(),
                })
            }
        };
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(ParseError::Malformed {
                index,
                token: tok.to_string(),
            });
        }
        if let Some((first, _)) = tokens.first() {
            if (*first == TokenKind::Chord) != (kind == TokenKind::Chord) {
                return Err(ParseError::MixedKinds { index });
            }
        }
        tokens.push((kind, digits));
    }

    // Ids compare numerically, so strip leading zeros before interning.
    let canon_id = |s: &str| -> String {
        let t = s.trim_start_matches('0');
        if t.is_empty() { "0".to_string() } else { t.to_string() }
    };
    let mut ids: Vec<String> = Vec::new();
    let mut counts: Vec<(usize, [bool; 2], usize)> = Vec::new(); // (occurrences, roles, last index)
    let mut numbered = Vec::with_capacity(tokens.len());
    for (index, (kind, digits)) in tokens.iter().enumerate() {
        let id = canon_id(digits);
        let k = match ids.iter().position(|x| *x == id) {
            Some(k) => k,
            None => {
                ids.push(id.clone());
                counts.push((0, [false; 2], index));
                ids.len() - 1
            }
        };
        let entry = &mut counts[k];
        entry.0 += 1;
        entry.2 = index;
        if entry.0 > 2 {
            return Err(ParseError::TooManyOccurrences { index, id });
        }
        if let TokenKind::Arrow(role) = kind {
            if entry.1[*role as usize] {
                return Err(ParseError::DuplicateRole { index, id, role: *role });
            }
            entry.1[*role as usize] = true;
        }
        numbered.push((*kind, k + 1));
    }
    if let Some((k, c)) = counts.iter().enumerate().find(|(_, c)| c.0 != 2) {
        return Err(ParseError::Unpaired {
            index: c.2,
            id: ids[k].clone(),
        });
    }

    if tokens[0].0 == TokenKind::Chord {
        Ok(ParsedDiagram::Unoriented(ChordDiagram {
            word: numbered.into_iter().map(|(_, id)| id).collect(),
        }))
    } else {
        let word = numbered
            .into_iter()
            .map(|(kind, arrow)| match kind {
                TokenKind::Arrow(role) => Endpoint { role, arrow },
                TokenKind::Chord => unreachable!(),
            })
            .collect();
        Ok(ParsedDiagram::Oriented(OrientedChordDiagram { word }))
    }
}

/// All perfect matchings of `0..2n`, each as a list of pairs `(a, b)` with `a < b`.
fn perfect_matchings(n: usize) -> Vec<Vec<(usize, usize)>> {
    fn rec(rest: &[usize], acc: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        let Some((&a, tail)) = rest.split_first() else {
            out.push(acc.clone());
            return;
        };
        for k in 0..tail.len() {
            let b = tail[k];
            let remaining: Vec<usize> = tail
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != k)
                .map(|(_, &x)| x)
                .collect();
            acc.push((a, b));
            rec(&remaining, acc, out);
            acc.pop();
        }
    }
    let points: Vec<usize> = (0..2 * n).collect();
    let mut out = Vec::new();
    rec(&points, &mut Vec::new(), &mut out);
    out
}

fn check_range(n: usize) -> Result<(), DiagramError> {
    if n > MAX_ENUMERATED_ARROWS {
        return Err(DiagramError::OutOfRange {
            n,
            max: MAX_ENUMERATED_ARROWS,
        });
    }
    Ok(())
}

/// All oriented diagrams with `n` arrows up to rotation, canonical and sorted.
pub fn enumerate_oriented(n: usize) -> Result<Vec<OrientedChordDiagram>, DiagramError> {
    check_range(n)?;
    let mut out = BTreeSet::new();
    for matching in perfect_matchings(n) {
        for flips in 0u64..(1 << n) {
            let mut word = vec![Endpoint::tail(0); 2 * n];
            for (i, &(a, b)) in matching.iter().enumerate() {
                let (t, h) = if flips >> i & 1 == 1 { (b, a) } else { (a, b) };
                word[t] = Endpoint::tail(i + 1);
                word[h] = Endpoint::head(i + 1);
            }
            out.insert(OrientedChordDiagram { word: renumber(&word) }.canonical());
        }
    }
    Ok(out.into_iter().collect())
}

/// All unoriented diagrams with `n` chords up to rotation, canonical and sorted.
pub fn enumerate_unoriented(n: usize) -> Result<Vec<ChordDiagram>, DiagramError> {
    check_range(n)?;
    let mut out = BTreeSet::new();
    for matching in perfect_matchings(n) {
        let mut word = vec![0; 2 * n];
        for (i, &(a, b)) in matching.iter().enumerate() {
            word[a] = i + 1;
            word[b] = i + 1;
        }
        out.insert(
            ChordDiagram {
                word: renumber_ids(&word),
            }
            .canonical(),
        );
    }
    Ok(out.into_iter().collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LegDir {
    /// Edge runs from the skeleton into the vertex.
    In,
    /// Edge runs from the vertex out to the skeleton.
    Out,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VertexKind {
    /// Two incoming legs, one outgoing.
    Bracket,
    /// One incoming leg, two outgoing.
    Cobracket,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VertexToken {
    Arrow(Endpoint),
    /// Skeleton attachment of leg `k` of the vertex (0..3, in the vertex's cyclic order).
    Leg(usize),
}

/// An oriented chord diagram plus one trivalent vertex whose three legs end
/// on the skeleton.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VertexDiagram {
    word: Vec<VertexToken>,
    legs: [LegDir; 3],
}

impl VertexDiagram {
    pub fn new(word: Vec<VertexToken>, legs: [LegDir; 3]) -> Result<Self, DiagramError> {
        let ins = legs.iter().filter(|&&d| d == LegDir::In).count();
        if ins == 0 || ins == 3 {
            return Err(DiagramError::InvalidVertex(
                "all-in or all-out vertices are not allowed".into(),
            ));
        }
        for k in 0..3 {
            let c = word.iter().filter(|t| **t == VertexToken::Leg(k)).count();
            if c != 1 {
                return Err(DiagramError::InvalidVertex(format!(
                    "leg {k} attached {c} times"
                )));
            }
        }
        if let Some(VertexToken::Leg(k)) = word
            .iter()
            .find(|t| matches!(t, VertexToken::Leg(k) if *k >= 3))
        {
            return Err(DiagramError::InvalidVertex(format!("no leg {k}")));
        }
        let arrows: Vec<Endpoint> = word
            .iter()
            .filter_map(|t| match t {
                VertexToken::Arrow(ep) => Some(*ep),
                VertexToken::Leg(_) => None,
            })
            .collect();
        let checked = OrientedChordDiagram::new(arrows)?;
        let mut it = checked.word.into_iter();
        let word = word
            .into_iter()
            .map(|t| match t {
                VertexToken::Arrow(_) => VertexToken::Arrow(it.next().unwrap()),
                leg => leg,
            })
            .collect();
        Ok(Self { word, legs })
    }

    pub fn word(&self) -> &[VertexToken] {
        &self.word
    }

    pub fn legs(&self) -> [LegDir; 3] {
        self.legs
    }

    pub fn arrow_count(&self) -> usize {
        self.word
            .iter()
            .filter(|t| matches!(t, VertexToken::Arrow(_)))
            .count()
            / 2
    }

    pub fn kind(&self) -> VertexKind {
        if self.legs.iter().filter(|&&d| d == LegDir::In).count() == 2 {
            VertexKind::Bracket
        } else {
            VertexKind::Cobracket
        }
    }

    /// Same diagram with the opposite cyclic orientation at the vertex.
    pub fn reversed_vertex(&self) -> Self {
        let swap = |k: usize| match k {
            1 => 2,
            2 => 1,
            k => k,
        };
        let word = self
            .word
            .iter()
            .map(|t| match *t {
                VertexToken::Leg(k) => VertexToken::Leg(swap(k)),
                a => a,
            })
            .collect();
        let legs = [self.legs[0], self.legs[2], self.legs[1]];
        Self { word, legs }
    }
}

impl fmt::Display for VertexDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.word.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            match t {
                VertexToken::Arrow(ep) => write!(f, "{ep}")?,
                VertexToken::Leg(k) => {
                    let d = match self.legs[*k] {
                        LegDir::In => "in",
                        LegDir::Out => "out",
                    };
                    write!(f, "v{k}{d}")?
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> OrientedChordDiagram {
        s.parse().unwrap()
    }

    #[test]
    fn parses_smallest_diagram() {
        let x = d("t1 h1");
        assert_eq!(x.word(), &[Endpoint::tail(1), Endpoint::head(1)]);
        assert_eq!(x.n(), 1);
    }

    #[test]
    fn parses_crossing_diagram() {
        let x = d("t1 t2 h1 h2");
        assert_eq!(x.n(), 2);
        assert_eq!(x.to_string(), "t1 t2 h1 h2");
    }

    #[test]
    fn renumbers_by_first_occurrence() {
        assert_eq!(d("t7 h03 h7 t3").to_string(), "t1 h2 h1 t2");
    }

    #[test]
    fn parse_errors_name_the_token() {
        assert_eq!(
            parse_diagram("t1 h1 t1"),
            Err(ParseError::TooManyOccurrences { index: 2, id: "1".into() })
        );
        assert_eq!(
            parse_diagram("t1 t1"),
            Err(ParseError::DuplicateRole { index: 1, id: "1".into(), role: Role::Tail })
        );
        assert_eq!(
            parse_diagram("t1 h1 t2"),
            Err(ParseError::Unpaired { index: 2, id: "2".into() })
        );
        assert_eq!(parse_diagram("t1 c1"), Err(ParseError::MixedKinds { index: 1 }));
        assert_eq!(parse_diagram("t1  h1"), Err(ParseError::EmptyToken { index: 1 }));
        assert_eq!(parse_diagram("t1 hé"), Err(ParseError::NonAscii { index: 1 }));
        assert!(matches!(parse_diagram("x1 h1"), Err(ParseError::Malformed { index: 0, .. })));
        assert!(matches!(parse_diagram("t h1"), Err(ParseError::Malformed { index: 0, .. })));
    }

    #[test]
    fn parses_chords_and_bare_circle() {
        let c: ChordDiagram = "c5 c2 c5 c2".parse().unwrap();
        assert_eq!(c.to_string(), "c1 c2 c1 c2");
        assert_eq!(d("").n(), 0);
        assert!("c1 c1".parse::<OrientedChordDiagram>().is_err());
    }

    #[test]
    fn canonical_rotations() {
        assert_eq!(d("h1 t1").canonical().to_string(), "t1 h1");
        assert_eq!(d("t1 h1").canonical().to_string(), "t1 h1");
        let x = d("h2 h1 t2 t1");
        let c = x.canonical();
        // least over the four rotations, enumerated by hand
        let mut rots: Vec<OrientedChordDiagram> = (0..4).map(|k| x.rotate(k)).collect();
        rots.sort();
        assert_eq!(c, rots[0]);
        for k in 0..4 {
            assert_eq!(x.rotate(k).canonical(), c);
        }
        assert_eq!(c.to_string(), "t1 t2 h1 h2");
    }

    #[test]
    fn enumeration_small_cases() {
        assert_eq!(enumerate_oriented(0).unwrap(), vec![OrientedChordDiagram::bare()]);
        assert_eq!(enumerate_oriented(1).unwrap(), vec![d("t1 h1")]);
        // brute force over all 12 oriented words on 4 points
        let mut classes = BTreeSet::new();
        for m in [[(0, 1), (2, 3)], [(0, 2), (1, 3)], [(0, 3), (1, 2)]] {
            for flips in 0..4u32 {
                let mut w = vec![Endpoint::tail(0); 4];
                for (i, &(a, b)) in m.iter().enumerate() {
                    let (t, h) = if flips >> i & 1 == 1 { (b, a) } else { (a, b) };
                    w[t] = Endpoint::tail(i + 1);
                    w[h] = Endpoint::head(i + 1);
                }
                let x = OrientedChordDiagram::new(w).unwrap();
                let orbit: BTreeSet<_> = (0..4).map(|k| x.rotate(k)).collect();
                classes.insert(orbit);
            }
        }
        assert_eq!(enumerate_oriented(2).unwrap().len(), classes.len());
        assert_eq!(classes.len(), 4);
        assert!(enumerate_oriented(7).is_err());
        assert_eq!(enumerate_unoriented(2).unwrap().len(), 2);
        assert_eq!(enumerate_unoriented(3).unwrap().len(), 5);
    }

    #[test]
    fn arcs_of_single_arrow() {
        let a = d("t1 h1").resolve_arcs();
        assert_eq!(a, vec![ArcSlots { alpha: 1, beta: 0, mu: 0, nu: 1 }]);
    }

    #[test]
    fn arcs_cover_each_arc_twice() {
        for x in enumerate_oriented(3).unwrap() {
            let mut count = [0; 6];
            for s in x.resolve_arcs() {
                for a in s.as_array() {
                    count[a] += 1;
                }
            }
            assert!(count.iter().all(|&c| c == 2), "{x}");
        }
    }

    #[test]
    fn arcs_shift_under_symmetric_rotation() {
        let a = d("t1 h1 t2 h2").resolve_arcs();
        let shifted = a[0].as_array().map(|k| (k + 2) % 4);
        assert_eq!(shifted, a[1].as_array());
    }

    #[test]
    fn orientation_assignment() {
        let c: ChordDiagram = "c1 c2 c1 c2".parse().unwrap();
        assert_eq!(c.orient(0).to_string(), "t1 t2 h1 h2");
        assert_eq!(c.orient(0b01).to_string(), "h1 t2 t1 h2");
        assert_eq!(c.orient(0b11).forget_orientation(), c);
    }

    #[test]
    fn vertex_rejects_sinks_and_sources() {
        use VertexToken::Leg;
        let w = vec![Leg(0), Leg(1), Leg(2)];
        assert!(VertexDiagram::new(w.clone(), [LegDir::In; 3]).is_err());
        assert!(VertexDiagram::new(w.clone(), [LegDir::Out; 3]).is_err());
        let v = VertexDiagram::new(w, [LegDir::In, LegDir::In, LegDir::Out]).unwrap();
        assert_eq!(v.kind(), VertexKind::Bracket);
        assert_eq!(v.reversed_vertex().kind(), VertexKind::Bracket);
        assert!(VertexDiagram::new(vec![Leg(0), Leg(1)], [LegDir::In, LegDir::Out, LegDir::Out]).is_err());
    }
}
