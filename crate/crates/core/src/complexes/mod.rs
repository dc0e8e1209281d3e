//! Spanning complexes: a surface, the preimages of its double lines, cusps
//! and triple points, and the framed 4-graph along its boundary.

pub mod build;
mod complex;
pub mod cylinder;
pub mod file;
pub mod oriented;
pub mod surface;
mod surgery;

use std::fmt;

use thiserror::Error;

use crate::diagram::DiagramError;

pub use complex::{
    check_parity_constraints, classify_double_line, classify_triple_point, complex_class,
    triple_parity_violates, Boundary, ComplexClass, Cusp, CuspId, DoubleLine, LineEnd, LineId,
    LineKind, ParityViolation, Placement, SectionMarker, StandardComplex, TripleId, TripleKind,
    TriplePoint, Walk,
};
pub use cylinder::{is_normal_cylinder, meridian_parity, CylinderDiagram, Normality};
pub use file::{parse_complex, ComplexFile};
pub use surface::{ComponentGenus, Flag, Mesh, SurfaceMap};
pub use surgery::{double_complex, genus_bound, smooth_interior_line, Regluing};

/// Named clauses of the complex invariants, reported on violation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Clause {
    LineShape,
    WalkShape,
    WalkPlacement,
    Identification,
    LineEnds,
    CuspPlacement,
    TriplePoint,
    EdgeDisjoint,
    BoundaryMissing,
    BoundaryCircles,
    CrossingPositions,
    BoundaryOrder,
    ComponentCount,
    BoundaryCrossingLine,
    Sections,
    DuplicateId,
}

impl Clause {
    pub fn name(self) -> &'static str {
        match self {
            Clause::LineShape => "line-walk-count",
            Clause::WalkShape => "walk-is-simple-path",
            Clause::WalkPlacement => "walk-interior-avoids-boundary",
            Clause::Identification => "identification-aligns-walks",
            Clause::LineEnds => "line-ends-match-kind",
            Clause::CuspPlacement => "cusp-on-exactly-one-line-end",
            Clause::TriplePoint => "triple-point-three-lines-three-points",
            Clause::EdgeDisjoint => "line-preimages-edge-disjoint",
            Clause::BoundaryMissing => "boundary-diagram-present",
            Clause::BoundaryCircles => "boundary-circles-biject-with-components",
            Clause::CrossingPositions => "crossing-map-two-boundary-positions",
            Clause::BoundaryOrder => "boundary-order-matches-word",
            Clause::ComponentCount => "one-boundary-circle-per-surface-component",
            Clause::BoundaryCrossingLine => "boundary-crossing-ends-exactly-one-line",
            Clause::Sections => "section-markers-reference-lines",
            Clause::DuplicateId => "ids-unique",
        }
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("malformed map: {0}")]
    Map(String),
    #[error("schema violation: {0}")]
    Schema(String),
    #[error("invariant {clause} violated: {detail}")]
    Invariant { clause: Clause, detail: String },
    #[error("surface component {0} is not orientable")]
    NonOrientable(usize),
    #[error("unknown double line {0}")]
    UnknownLine(LineId),
    #[error("unknown triple point {0}")]
    UnknownTriple(TripleId),
    #[error("line {0} is a boundary line; only interior lines can be smoothed")]
    BoundaryLine(LineId),
    #[error("line {line} passes through triple point {triple}")]
    LineHasTriplePoint { line: LineId, triple: TripleId },
    #[error("the preimage of line {line} touches line {other}")]
    LineMeetsLine { line: LineId, other: LineId },
    #[error("a preimage curve of line {0} is one-sided")]
    OneSided(LineId),
    #[error("internal rule defect: smoothing line {line} lowered the Euler characteristic from {before} to {after}")]
    MonotonicityDefect { line: LineId, before: i64, after: i64 },
    #[error("complex has no boundary diagram")]
    NoBoundary,
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

impl ComplexError {
    pub(crate) fn invariant(clause: Clause, detail: impl Into<String>) -> Self {
        ComplexError::Invariant {
            clause,
            detail: detail.into(),
        }
    }
}
