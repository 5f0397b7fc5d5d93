//! Relation instances (6T, 4T, STU), the averaging map, the unoriented
//! Casimir weight systems, bialgebra identities, and a checker that evaluates
//! weight systems on formal combinations.

mod bialgebra;
mod casimir;
mod instances;
mod suites;

use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::diagrams::{ChordDiagram, OrientedChordDiagram, VertexDiagram};
use crate::families::{evaluate_weight, Family};
use crate::oracle::{oracle_eval, vertex_eval, OracleError};
use crate::polycount::{fmt_rational, PolynomialQ};

pub use bialgebra::{check_bialgebra_identities, check_structure_constants, BialgebraReport, IdentityResult};
pub use casimir::{ambient_basis, casimir_eval, casimir_eval_with_basis, casimir_tensor};
pub use instances::{arrow_placements, chord_placements, four_t_instances, six_t_instances, stu_instances, Placement};
pub use suites::{run_suite, Suite, SuiteOptions, UnknownSuite};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum RelationError {
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("Gram matrix of the chosen basis is singular")]
    SingularGram,
    #[error("{0} diagrams cannot be evaluated in polynomial mode")]
    NeedsNumericMode(&'static str),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RelationDiagram {
    Oriented(OrientedChordDiagram),
    Unoriented(ChordDiagram),
    Vertex(VertexDiagram),
}

impl fmt::Display for RelationDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RelationDiagram::Oriented(d) => d.fmt(f),
            RelationDiagram::Unoriented(c) => c.fmt(f),
            RelationDiagram::Vertex(v) => v.fmt(f),
        }
    }
}

/// A formal combination that every weight system should annihilate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationInstance {
    pub name: String,
    pub terms: Vec<(BigRational, RelationDiagram)>,
    /// How the instance was generated.
    pub note: String,
}

/// The `2^n` orientations of one chord diagram, each with coefficient 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AveragedSum {
    pub source: ChordDiagram,
    pub terms: Vec<OrientedChordDiagram>,
}

/// Sums over every way of directing each chord. Terms are canonical and
/// listed by orientation bitmask.
pub fn average(c: &ChordDiagram) -> AveragedSum {
    assert!(c.n() < 64);
    let terms = (0..1u64 << c.n()).map(|flips| c.orient(flips).canonical()).collect();
    AveragedSum { source: c.clone(), terms }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Exact polynomial in `N` via the combinatorial evaluator.
    Polynomial,
    /// Exact rational at a fixed `N` via the matrix oracle.
    Numeric(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// `N` as reported: a size or `"poly"`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SizeTag {
    Poly,
    At(usize),
}

impl Serialize for SizeTag {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            SizeTag::Poly => s.serialize_str("poly"),
            SizeTag::At(n) => s.serialize_u64(*n as u64),
        }
    }
}

/// One line of a check report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub check: String,
    pub family: Family,
    #[serde(rename = "N")]
    pub n: SizeTag,
    pub status: Status,
    pub residual: String,
}

impl CheckRecord {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Value of a relation term. Unoriented diagrams use the Casimir weight
/// system numerically, and the averaged oriented one in polynomial mode.
fn term_value(d: &RelationDiagram, family: Family, mode: Mode) -> Result<Residual, RelationError> {
    Ok(match (d, mode) {
        (RelationDiagram::Oriented(o), Mode::Polynomial) => Residual::Poly(evaluate_weight(family, o)),
        (RelationDiagram::Oriented(o), Mode::Numeric(n)) => Residual::Value(oracle_eval(o, family, n)?),
        (RelationDiagram::Unoriented(c), Mode::Polynomial) => Residual::Poly(
            average(c).terms.iter().map(|o| evaluate_weight(family, o)).sum(),
        ),
        (RelationDiagram::Unoriented(c), Mode::Numeric(n)) => Residual::Value(casimir_eval(c, family, n)?),
        (RelationDiagram::Vertex(_), Mode::Polynomial) => return Err(RelationError::NeedsNumericMode("vertex")),
        (RelationDiagram::Vertex(v), Mode::Numeric(n)) => Residual::Value(vertex_eval(v, family, n)?),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Residual {
    Poly(PolynomialQ),
    Value(BigRational),
}

impl Residual {
    fn zero(mode: Mode) -> Self {
        match mode {
            Mode::Polynomial => Residual::Poly(PolynomialQ::zero()),
            Mode::Numeric(_) => Residual::Value(BigRational::zero()),
        }
    }

    fn add_scaled(&mut self, c: &BigRational, other: Residual) {
        match (self, other) {
            (Residual::Poly(a), Residual::Poly(b)) => *a += b.scale(c),
            (Residual::Value(a), Residual::Value(b)) => *a += c * b,
            _ => unreachable!("mode decides the residual kind"),
        }
    }

    fn is_zero(&self) -> bool {
        match self {
            Residual::Poly(p) => p.is_zero(),
            Residual::Value(v) => v.is_zero(),
        }
    }

    fn render(&self) -> String {
        match self {
            Residual::Poly(p) => p.to_string(),
            Residual::Value(v) => fmt_rational(v),
        }
    }
}

fn size_tag(mode: Mode) -> SizeTag {
    match mode {
        Mode::Polynomial => SizeTag::Poly,
        Mode::Numeric(n) => SizeTag::At(n),
    }
}

/// `Σ coefficient × weight` over the instance; passes iff exactly zero.
pub fn check_relation(r: &RelationInstance, family: Family, mode: Mode) -> Result<CheckRecord, RelationError> {
    let mut acc = Residual::zero(mode);
    for (c, d) in &r.terms {
        acc.add_scaled(c, term_value(d, family, mode)?);
    }
    Ok(CheckRecord {
        check: r.name.clone(),
        family,
        n: size_tag(mode),
        status: if acc.is_zero() { Status::Pass } else { Status::Fail },
        residual: acc.render(),
    })
}

/// Checks `vertex_eval(vd) = Σ` over the paired two-arrow difference.
pub fn check_stu(
    vd: &VertexDiagram,
    difference: &RelationInstance,
    family: Family,
    n: usize,
) -> Result<CheckRecord, RelationError> {
    let mut with_vertex = difference.clone();
    for t in &mut with_vertex.terms {
        t.0 = -t.0.clone();
    }
    with_vertex.terms.push((BigRational::from_integer(1.into()), RelationDiagram::Vertex(vd.clone())));
    check_relation(&with_vertex, family, Mode::Numeric(n))
}
