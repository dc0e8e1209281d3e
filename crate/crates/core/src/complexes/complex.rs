use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::surface::{Flag, SurfaceMap};
use super::{Clause, ComplexError};
use crate::diagram::{Crossing, Diagram};
use crate::parity::{component_parity, parities, Parity};

pub type LineId = u32;
pub type CuspId = u32;
pub type TripleId = u32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LineKind {
    Cyclic,
    CuspCusp,
    CrossingCrossing,
    CrossingCusp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Placement {
    Interior,
    Boundary,
}

impl LineKind {
    pub fn placement(self) -> Placement {
        match self {
            LineKind::Cyclic | LineKind::CuspCusp => Placement::Interior,
            LineKind::CrossingCrossing | LineKind::CrossingCusp => Placement::Boundary,
        }
    }

    pub fn is_interior(self) -> bool {
        self.placement() == Placement::Interior
    }

    fn closed(self) -> bool {
        self.is_interior()
    }

    fn walk_count(self) -> usize {
        match self {
            LineKind::Cyclic | LineKind::CrossingCrossing => 2,
            LineKind::CuspCusp | LineKind::CrossingCusp => 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            LineKind::Cyclic => "cyclic",
            LineKind::CuspCusp => "cusp_cusp",
            LineKind::CrossingCrossing => "crossing_crossing",
            LineKind::CrossingCusp => "crossing_cusp",
        }
    }
}

impl fmt::Display for LineKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl fmt::Display for Placement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Placement::Interior => "interior",
            Placement::Boundary => "boundary",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LineEnd {
    Crossing(Crossing),
    Cusp(CuspId),
}

/// A walk along edges of the surface. Step `i` is a flag at the `i`-th
/// vertex on the `i`-th edge. A closed walk of `L` steps has `L` vertex
/// positions, an open one `L + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Walk {
    pub steps: Vec<Flag>,
    pub closed: bool,
}

impl Walk {
    pub fn new(steps: Vec<Flag>, closed: bool) -> Self {
        Walk { steps, closed }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn positions(&self) -> usize {
        if self.closed {
            self.steps.len()
        } else {
            self.steps.len() + 1
        }
    }

    /// A flag at vertex position `i`.
    pub fn vertex_flag(&self, s: &SurfaceMap, i: usize) -> Flag {
        if i < self.steps.len() {
            self.steps[i]
        } else {
            s.a0(self.steps[self.steps.len() - 1])
        }
    }
}

/// Preimage of a double line. `ident` maps vertex positions of the first
/// walk to positions of the second, or, for one-walk lines, is the folding
/// involution on the walk's own positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubleLine {
    pub id: LineId,
    pub kind: LineKind,
    pub walks: Vec<Walk>,
    pub ident: Vec<usize>,
    pub ends: Vec<LineEnd>,
}

impl DoubleLine {
    /// The point identified with position `pos` of walk `walk`.
    pub fn partner(&self, walk: usize, pos: usize) -> (usize, usize) {
        if self.walks.len() == 1 {
            (0, self.ident[pos])
        } else if walk == 0 {
            (1, self.ident[pos])
        } else {
            let back = self.ident.iter().position(|&j| j == pos).expect("bijective alignment");
            (0, back)
        }
    }

    /// Positions fixed by the fold of a one-walk line.
    pub fn branch_positions(&self) -> Vec<usize> {
        if self.walks.len() != 1 {
            return Vec::new();
        }
        (0..self.ident.len()).filter(|&i| self.ident[i] == i).collect()
    }

    pub fn crossings(&self) -> Vec<Crossing> {
        self.ends
            .iter()
            .filter_map(|e| match e {
                LineEnd::Crossing(c) => Some(*c),
                LineEnd::Cusp(_) => None,
            })
            .collect()
    }

    pub fn cusps(&self) -> Vec<CuspId> {
        self.ends
            .iter()
            .filter_map(|e| match e {
                LineEnd::Cusp(c) => Some(*c),
                LineEnd::Crossing(_) => None,
            })
            .collect()
    }
}

/// A Whitney-umbrella endpoint of a double line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Cusp {
    pub id: CuspId,
    pub line: LineId,
    /// A flag at the branch vertex.
    pub vertex: Flag,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TriplePoint {
    pub id: TripleId,
    pub lines: [LineId; 3],
    pub points: [Flag; 3],
}

/// Boundary diagram and where each crossing sits on the boundary circles.
/// `positions[c][k]` belongs to the `k`-th occurrence of `c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Boundary {
    pub diagram: Diagram,
    pub positions: BTreeMap<Crossing, [Flag; 2]>,
}

/// Records, in a closed double, which line crosses the section that used
/// to be the boundary, and at which crossing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectionMarker {
    pub crossing: String,
    pub line: LineId,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StandardComplex {
    surface: SurfaceMap,
    boundary: Option<Boundary>,
    lines: BTreeMap<LineId, DoubleLine>,
    cusps: BTreeMap<CuspId, Cusp>,
    triples: BTreeMap<TripleId, TriplePoint>,
    sections: Vec<SectionMarker>,
}

impl StandardComplex {
    pub fn new(
        surface: SurfaceMap,
        boundary: Option<Boundary>,
        lines: Vec<DoubleLine>,
        cusps: Vec<Cusp>,
        triples: Vec<TriplePoint>,
    ) -> Result<Self, ComplexError> {
        let dup = |what: &str, id: u32| ComplexError::invariant(Clause::DuplicateId, format!("{what} id {id} repeated"));
        let mut lm = BTreeMap::new();
        for l in lines {
            let id = l.id;
            if lm.insert(id, l).is_some() {
                return Err(dup("line", id));
            }
        }
        let mut cm = BTreeMap::new();
        for c in cusps {
            if cm.insert(c.id, c).is_some() {
                return Err(dup("cusp", c.id));
            }
        }
        let mut tm = BTreeMap::new();
        for t in triples {
            if tm.insert(t.id, t).is_some() {
                return Err(dup("triple point", t.id));
            }
        }
        let k = StandardComplex {
            surface,
            boundary,
            lines: lm,
            cusps: cm,
            triples: tm,
            sections: Vec::new(),
        };
        k.validate()?;
        Ok(k)
    }

    pub(crate) fn from_parts(
        surface: SurfaceMap,
        boundary: Option<Boundary>,
        lines: BTreeMap<LineId, DoubleLine>,
        cusps: BTreeMap<CuspId, Cusp>,
        triples: BTreeMap<TripleId, TriplePoint>,
        sections: Vec<SectionMarker>,
    ) -> Result<Self, ComplexError> {
        let k = StandardComplex {
            surface,
            boundary,
            lines,
            cusps,
            triples,
            sections,
        };
        k.validate()?;
        Ok(k)
    }

    pub fn with_sections(mut self, sections: Vec<SectionMarker>) -> Result<Self, ComplexError> {
        self.sections = sections;
        self.validate()?;
        Ok(self)
    }

    pub fn surface(&self) -> &SurfaceMap {
        &self.surface
    }

    pub fn boundary(&self) -> Option<&Boundary> {
        self.boundary.as_ref()
    }

    pub fn lines(&self) -> &BTreeMap<LineId, DoubleLine> {
        &self.lines
    }

    pub fn line(&self, id: LineId) -> Result<&DoubleLine, ComplexError> {
        self.lines.get(&id).ok_or(ComplexError::UnknownLine(id))
    }

    pub fn cusps(&self) -> &BTreeMap<CuspId, Cusp> {
        &self.cusps
    }

    pub fn triples(&self) -> &BTreeMap<TripleId, TriplePoint> {
        &self.triples
    }

    pub fn sections(&self) -> &[SectionMarker] {
        &self.sections
    }

    pub fn is_closed(&self) -> bool {
        self.boundary.is_none()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.surface.euler_characteristic()
    }

    pub fn interior_line_count(&self) -> usize {
        self.lines.values().filter(|l| l.kind.is_interior()).count()
    }

    pub fn validate(&self) -> Result<(), ComplexError> {
        Validator::new(self).run()
    }
}

struct Validator<'a> {
    k: &'a StandardComplex,
    vertex: Vec<usize>,
    edge: Vec<usize>,
    boundary_vertex: Vec<bool>,
}

fn fail(clause: Clause, detail: String) -> Result<(), ComplexError> {
    Err(ComplexError::invariant(clause, detail))
}

impl<'a> Validator<'a> {
    fn new(k: &'a StandardComplex) -> Self {
        let cells = k.surface.cells();
        let mut boundary_vertex = vec![false; cells.vertex.count];
        for f in 0..k.surface.flag_count() {
            if k.surface.is_boundary_flag(f) {
                boundary_vertex[cells.vertex.label[f]] = true;
            }
        }
        Validator {
            k,
            vertex: cells.vertex.label,
            edge: cells.edge.label,
            boundary_vertex,
        }
    }

    fn run(&self) -> Result<(), ComplexError> {
        let n = self.k.surface.flag_count();
        let in_range = |f: Flag| f < n;
        for l in self.k.lines.values() {
            if l.walks.iter().flat_map(|w| &w.steps).any(|&f| !in_range(f)) {
                return fail(Clause::WalkShape, format!("line {} refers to a missing flag", l.id));
            }
        }
        for c in self.k.cusps.values() {
            if !in_range(c.vertex) {
                return fail(Clause::CuspPlacement, format!("cusp {} refers to a missing flag", c.id));
            }
        }
        for t in self.k.triples.values() {
            if t.points.iter().any(|&f| !in_range(f)) {
                return fail(Clause::TriplePoint, format!("triple point {} refers to a missing flag", t.id));
            }
        }
        for l in self.k.lines.values() {
            self.line(l)?;
        }
        self.edge_disjoint()?;
        self.cusps()?;
        self.triples()?;
        self.boundary()?;
        self.sections()
    }

    fn walk_vertices(&self, w: &Walk) -> Vec<usize> {
        (0..w.positions())
            .map(|i| self.vertex[w.vertex_flag(&self.k.surface, i)])
            .collect()
    }

    fn line(&self, l: &DoubleLine) -> Result<(), ComplexError> {
        let s = &self.k.surface;
        let id = l.id;
        if l.walks.len() != l.kind.walk_count() {
            return fail(
                Clause::LineShape,
                format!("line {id} ({}) needs {} walk(s), has {}", l.kind, l.kind.walk_count(), l.walks.len()),
            );
        }
        for w in &l.walks {
            if w.closed != l.kind.closed() {
                return fail(Clause::LineShape, format!("line {id}: walk closedness does not match kind {}", l.kind));
            }
            let min = if w.closed { 2 } else { 1 };
            if w.len() < min {
                return fail(Clause::WalkShape, format!("line {id}: walk of length {} is too short", w.len()));
            }
            for i in 0..w.len() {
                let f = w.steps[i];
                if s.is_boundary_flag(f) {
                    return fail(Clause::WalkPlacement, format!("line {id}: step {i} runs along a boundary edge"));
                }
                if i + 1 < w.len() && self.vertex[s.a0(f)] != self.vertex[w.steps[i + 1]] {
                    return fail(Clause::WalkShape, format!("line {id}: steps {i} and {} are not consecutive", i + 1));
                }
            }
            if w.closed && self.vertex[s.a0(*w.steps.last().unwrap())] != self.vertex[w.steps[0]] {
                return fail(Clause::WalkShape, format!("line {id}: closed walk does not close up"));
            }
            let vs = self.walk_vertices(w);
            let distinct: BTreeSet<usize> = vs.iter().copied().collect();
            if distinct.len() != vs.len() {
                return fail(Clause::WalkShape, format!("line {id}: walk revisits a vertex"));
            }
            let last = vs.len() - 1;
            for (i, &v) in vs.iter().enumerate() {
                let endpoint = !w.closed && (i == 0 || i == last);
                if endpoint != self.boundary_vertex[v] {
                    let what = if endpoint {
                        "walk endpoint is not on the boundary"
                    } else {
                        "walk passes through a boundary vertex"
                    };
                    return fail(Clause::WalkPlacement, format!("line {id}: {what} (position {i})"));
                }
            }
        }
        if l.walks.len() == 2 {
            let (a, b) = (self.walk_vertices(&l.walks[0]), self.walk_vertices(&l.walks[1]));
            if a.len() != b.len() {
                return fail(Clause::Identification, format!("line {id}: walks have different lengths"));
            }
            if a.iter().any(|v| b.contains(v)) {
                return fail(Clause::WalkShape, format!("line {id}: its two walks meet"));
            }
        }
        self.identification(l)?;
        self.ends(l)
    }

    fn identification(&self, l: &DoubleLine) -> Result<(), ComplexError> {
        let w = &l.walks[0];
        let p = w.positions();
        let bad = |what: &str| fail(Clause::Identification, format!("line {}: {what}", l.id));
        if l.ident.len() != p || l.ident.iter().any(|&j| j >= p) {
            return bad("identification must list every vertex position once");
        }
        let len = w.len();
        match l.kind {
            LineKind::Cyclic => {
                let off = l.ident[0];
                let fwd = (0..p).all(|i| l.ident[i] == (off + i) % p);
                let rev = (0..p).all(|i| l.ident[i] == (off + p - i % p) % p);
                if !(fwd || rev) {
                    return bad("cyclic alignment must be a rotation or a reflection");
                }
            }
            LineKind::CrossingCrossing => {
                let fwd = (0..p).all(|i| l.ident[i] == i);
                let rev = (0..p).all(|i| l.ident[i] == len - i);
                if !(fwd || rev) {
                    return bad("open alignment must preserve or reverse the walk");
                }
            }
            LineKind::CuspCusp => {
                let off = l.ident[0];
                if len % 2 != 0 || off % 2 != 0 || !(0..p).all(|i| l.ident[i] == (off + p - i) % p) {
                    return bad("cusp-to-cusp fold must be a reflection with two fixed positions");
                }
            }
            LineKind::CrossingCusp => {
                if len % 2 != 0 || !(0..p).all(|i| l.ident[i] == len - i) {
                    return bad("crossing-to-cusp fold must reverse the walk about its midpoint");
                }
            }
        }
        Ok(())
    }

    fn ends(&self, l: &DoubleLine) -> Result<(), ComplexError> {
        let id = l.id;
        let bad = |what: String| fail(Clause::LineEnds, format!("line {id}: {what}"));
        let shape_ok = match (l.kind, l.ends.as_slice()) {
            (LineKind::Cyclic, []) => true,
            (LineKind::CuspCusp, [LineEnd::Cusp(a), LineEnd::Cusp(b)]) => a != b,
            (LineKind::CrossingCrossing, [LineEnd::Crossing(_), LineEnd::Crossing(_)]) => true,
            (LineKind::CrossingCusp, [LineEnd::Crossing(_), LineEnd::Cusp(_)]) => true,
            _ => false,
        };
        if !shape_ok {
            return bad(format!("ends do not match kind {}", l.kind));
        }
        if l.kind.is_interior() {
            return Ok(());
        }
        let Some(b) = &self.k.boundary else {
            return bad("boundary line in a complex without boundary".into());
        };
        let s = &self.k.surface;
        let at = |c: Crossing| -> Option<BTreeSet<usize>> {
            b.positions.get(&c).map(|ps| ps.iter().map(|&f| self.vertex[f]).collect())
        };
        let w0 = &l.walks[0];
        let last = w0.positions() - 1;
        let pair = |pos: usize| -> BTreeSet<usize> {
            let (wi, pi) = l.partner(0, pos);
            [self.vertex[w0.vertex_flag(s, pos)], self.vertex[l.walks[wi].vertex_flag(s, pi)]]
                .into_iter()
                .collect()
        };
        let crossings = l.crossings();
        match l.kind {
            LineKind::CrossingCrossing => {
                let (x, y) = (crossings[0], crossings[1]);
                let (ex, ey) = (at(x), at(y));
                if ex.is_none() || ey.is_none() {
                    return bad("end crossing is not a boundary crossing".into());
                }
                let (p0, p1) = (pair(0), pair(last));
                let direct = Some(&p0) == ex.as_ref() && Some(&p1) == ey.as_ref();
                let swapped = Some(&p0) == ey.as_ref() && Some(&p1) == ex.as_ref();
                if !(direct || swapped) {
                    return bad("walk endpoints are not the preimages of the end crossings".into());
                }
            }
            LineKind::CrossingCusp => {
                let x = crossings[0];
                if at(x) != Some(pair(0)) {
                    return bad("walk endpoints are not the two preimages of the end crossing".into());
                }
            }
            _ => {}
        }
        Ok(())
    }

    fn edge_disjoint(&self) -> Result<(), ComplexError> {
        let mut owner: HashMap<usize, LineId> = HashMap::new();
        for l in self.k.lines.values() {
            for w in &l.walks {
                for &f in &w.steps {
                    if let Some(other) = owner.insert(self.edge[f], l.id) {
                        return fail(
                            Clause::EdgeDisjoint,
                            format!("lines {other} and {} share an edge", l.id),
                        );
                    }
                }
            }
        }
        Ok(())
    }

    fn cusps(&self) -> Result<(), ComplexError> {
        let s = &self.k.surface;
        for c in self.k.cusps.values() {
            let Some(l) = self.k.lines.get(&c.line) else {
                return fail(Clause::CuspPlacement, format!("cusp {} names missing line {}", c.id, c.line));
            };
            if !l.cusps().contains(&c.id) {
                return fail(Clause::CuspPlacement, format!("cusp {} is not an end of line {}", c.id, c.line));
            }
            let branch: Vec<usize> = l
                .branch_positions()
                .into_iter()
                .map(|p| self.vertex[l.walks[0].vertex_flag(s, p)])
                .collect();
            if !branch.contains(&self.vertex[c.vertex]) {
                return fail(
                    Clause::CuspPlacement,
                    format!("cusp {} is not at a branch vertex of line {}", c.id, c.line),
                );
            }
        }
        for l in self.k.lines.values() {
            for cid in l.cusps() {
                match self.k.cusps.get(&cid) {
                    Some(c) if c.line == l.id => {}
                    _ => {
                        return fail(
                            Clause::CuspPlacement,
                            format!("line {} ends at cusp {cid}, which does not lie on it", l.id),
                        )
                    }
                }
            }
            if l.kind == LineKind::CuspCusp {
                let vs: BTreeSet<usize> = l.cusps().iter().map(|c| self.vertex[self.k.cusps[c].vertex]).collect();
                if vs.len() != 2 {
                    return fail(Clause::CuspPlacement, format!("line {}: both cusps at one branch vertex", l.id));
                }
            }
        }
        Ok(())
    }

    fn triples(&self) -> Result<(), ComplexError> {
        let s = &self.k.surface;
        for t in self.k.triples.values() {
            let points: BTreeSet<usize> = t.points.iter().map(|&f| self.vertex[f]).collect();
            if points.len() != 3 {
                return fail(Clause::TriplePoint, format!("triple point {} needs three distinct preimage points", t.id));
            }
            let distinct: BTreeSet<LineId> = t.lines.iter().copied().collect();
            let mut covered = BTreeSet::new();
            for lid in distinct {
                let Some(l) = self.k.lines.get(&lid) else {
                    return fail(Clause::TriplePoint, format!("triple point {} names missing line {lid}", t.id));
                };
                let mut hits = BTreeSet::new();
                for (wi, w) in l.walks.iter().enumerate() {
                    for p in 0..w.positions() {
                        let v = self.vertex[w.vertex_flag(s, p)];
                        if points.contains(&v) {
                            hits.insert((wi, p));
                            covered.insert(v);
                        }
                    }
                }
                let closed = hits.iter().all(|&(wi, p)| hits.contains(&l.partner(wi, p)));
                if hits.len() < 2 || !closed {
                    return fail(
                        Clause::TriplePoint,
                        format!("line {lid} does not pass through triple point {} on two identified sheets", t.id),
                    );
                }
            }
            if covered.len() != 3 {
                return fail(Clause::TriplePoint, format!("a preimage point of triple point {} lies on none of its lines", t.id));
            }
        }
        Ok(())
    }

    fn boundary(&self) -> Result<(), ComplexError> {
        let s = &self.k.surface;
        let Some(b) = &self.k.boundary else {
            if !s.is_closed() {
                return fail(Clause::BoundaryMissing, "surface has boundary but no boundary diagram".into());
            }
            return Ok(());
        };
        let circles = s.boundary_circles();
        let words = b.diagram.components();
        if circles.len() != words.len() {
            return fail(
                Clause::BoundaryCircles,
                format!("{} boundary circle(s) for {} component(s)", circles.len(), words.len()),
            );
        }
        let mut place: HashMap<usize, (usize, usize)> = HashMap::new();
        for (ci, circle) in circles.iter().enumerate() {
            for (k, &f) in circle.iter().enumerate() {
                place.entry(self.vertex[f]).or_insert((ci, k));
            }
        }
        let mut seen = BTreeSet::new();
        for c in b.diagram.crossings() {
            let Some(ps) = b.positions.get(&c) else {
                return fail(
                    Clause::CrossingPositions,
                    format!("crossing {} has no boundary positions", b.diagram.label(c)),
                );
            };
            for &f in ps {
                let v = self.vertex[f];
                if !self.boundary_vertex[v] || !place.contains_key(&v) {
                    return fail(
                        Clause::CrossingPositions,
                        format!("crossing {} is placed off the boundary", b.diagram.label(c)),
                    );
                }
                if !seen.insert(v) {
                    return fail(Clause::CrossingPositions, "two crossing passes share a boundary vertex".into());
                }
            }
        }
        if b.positions.keys().any(|c| !b.diagram.contains(*c)) {
            return fail(Clause::CrossingPositions, "crossing map names an unknown crossing".into());
        }
        let mut used_circles = BTreeSet::new();
        for (wi, word) in words.iter().enumerate() {
            if word.is_empty() {
                continue;
            }
            let mut ts = Vec::with_capacity(word.len());
            let mut circle = None;
            for (j, &c) in word.iter().enumerate() {
                let occ = b.diagram.occurrences(c).unwrap();
                let k = occ.iter().position(|o| o.component == wi && o.index == j).unwrap();
                let (ci, t) = place[&self.vertex[b.positions[&c][k]]];
                if *circle.get_or_insert(ci) != ci {
                    return fail(Clause::BoundaryOrder, format!("component {wi} is spread over two boundary circles"));
                }
                ts.push(t);
            }
            if !used_circles.insert(circle.unwrap()) {
                return fail(Clause::BoundaryOrder, "two components on one boundary circle".into());
            }
            if !cyclically_monotone(&ts) {
                return fail(
                    Clause::BoundaryOrder,
                    format!("crossings of component {wi} are out of order along their boundary circle"),
                );
            }
        }
        let comps = s.orbits(&[0, 1, 2]);
        let mut per = vec![0usize; comps.count];
        for circle in &circles {
            per[comps.label[circle[0]]] += 1;
        }
        if let Some(i) = per.iter().position(|&n| n != 1) {
            return fail(
                Clause::ComponentCount,
                format!("surface component {i} has {} boundary circles", per[i]),
            );
        }
        for c in b.diagram.crossings() {
            let n = self
                .k
                .lines
                .values()
                .filter(|l| !l.kind.is_interior() && l.crossings().contains(&c))
                .count();
            if n != 1 {
                return fail(
                    Clause::BoundaryCrossingLine,
                    format!("crossing {} ends {n} boundary lines", b.diagram.label(c)),
                );
            }
        }
        Ok(())
    }

    fn sections(&self) -> Result<(), ComplexError> {
        for m in &self.k.sections {
            if !self.k.lines.contains_key(&m.line) {
                return fail(Clause::Sections, format!("section marker {} names missing line {}", m.crossing, m.line));
            }
        }
        if !self.k.sections.is_empty() && self.k.boundary.is_some() {
            return fail(Clause::Sections, "section markers only occur on closed doubles".into());
        }
        Ok(())
    }
}

fn cyclically_monotone(ts: &[usize]) -> bool {
    let k = ts.len();
    if k <= 2 {
        return true;
    }
    let descents = (0..k).filter(|&i| ts[(i + 1) % k] < ts[i]).count();
    descents == 1 || descents == k - 1
}

pub fn classify_double_line(k: &StandardComplex, id: LineId) -> Result<(LineKind, Placement), ComplexError> {
    let l = k.line(id)?;
    let kind = match l.ends.as_slice() {
        [] => LineKind::Cyclic,
        [LineEnd::Cusp(_), LineEnd::Cusp(_)] => LineKind::CuspCusp,
        [LineEnd::Crossing(_), LineEnd::Crossing(_)] => LineKind::CrossingCrossing,
        _ => LineKind::CrossingCusp,
    };
    Ok((kind, kind.placement()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TripleKind {
    Interior,
    Exterior,
    Mixed,
}

pub fn classify_triple_point(k: &StandardComplex, id: TripleId) -> Result<TripleKind, ComplexError> {
    let t = k.triples.get(&id).ok_or(ComplexError::UnknownTriple(id))?;
    let mut interior = 0;
    for lid in t.lines {
        if k.line(lid)?.kind.is_interior() {
            interior += 1;
        }
    }
    Ok(match interior {
        3 => TripleKind::Interior,
        0 => TripleKind::Exterior,
        _ => TripleKind::Mixed,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ComplexClass {
    pub general: bool,
    pub cusp_free: bool,
    pub triple_free: bool,
    pub elementary: bool,
    pub purified: bool,
}

pub fn complex_class(k: &StandardComplex) -> ComplexClass {
    let cusp_free = k.cusps.is_empty();
    let triple_free = k.triples.is_empty();
    let cusp_on_interior_line = k
        .cusps
        .values()
        .any(|c| k.lines.get(&c.line).is_some_and(|l| l.kind.is_interior()));
    ComplexClass {
        general: true,
        cusp_free,
        triple_free,
        elementary: cusp_free && triple_free,
        purified: triple_free && !cusp_on_interior_line,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum ParityViolation {
    /// A line runs from a cusp to an odd crossing.
    CuspAtOddCrossing { line: LineId, crossing: String },
    /// The three crossings reached from a triple point have odd parity sum.
    TripleParitySum {
        triple: TripleId,
        crossings: [String; 3],
        parities: [Parity; 3],
    },
}

/// True when the parities at the three ends of a triple point add up to
/// an odd number.
pub fn triple_parity_violates(p: [Parity; 3]) -> bool {
    p.iter().map(|x| x.bit()).sum::<u8>() % 2 == 1
}

pub fn check_parity_constraints(k: &StandardComplex) -> Result<Vec<ParityViolation>, ComplexError> {
    let b = k.boundary.as_ref().ok_or(ComplexError::NoBoundary)?;
    // links use the mixed-odd parity, knots the Gaussian one
    let parity: BTreeMap<Crossing, Parity> = if b.diagram.component_count() == 1 {
        parities(&b.diagram)?
    } else {
        b.diagram
            .crossings()
            .map(|c| component_parity(&b.diagram, c).map(|p| (c, p)))
            .collect::<Result<_, _>>()?
    };
    let label = |c: Crossing| b.diagram.label(c).to_string();
    let mut out = Vec::new();
    for l in k.lines.values() {
        if l.kind == LineKind::CrossingCusp {
            let c = l.crossings()[0];
            if parity[&c].is_odd() {
                out.push(ParityViolation::CuspAtOddCrossing {
                    line: l.id,
                    crossing: label(c),
                });
            }
        }
    }
    for t in k.triples.values() {
        let ends: Option<Vec<Crossing>> = t
            .lines
            .iter()
            .map(|lid| k.lines.get(lid).and_then(|l| l.crossings().first().copied()))
            .collect();
        let Some(ends) = ends else { continue };
        let ps = [parity[&ends[0]], parity[&ends[1]], parity[&ends[2]]];
        if triple_parity_violates(ps) {
            out.push(ParityViolation::TripleParitySum {
                triple: t.id,
                crossings: [label(ends[0]), label(ends[1]), label(ends[2])],
                parities: ps,
            });
        }
    }
    Ok(out)
}
