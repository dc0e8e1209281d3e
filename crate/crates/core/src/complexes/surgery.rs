use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use super::complex::{Cusp, DoubleLine, LineEnd, LineId, LineKind, SectionMarker, StandardComplex, TriplePoint, Walk};
use super::surface::{Flag, SurfaceMap};
use super::ComplexError;

/// The two ways of regluing the sheets after cutting along a line.
///
/// For a cyclic line, `A` glues each side of one preimage circle to the
/// opposite side of the other, `B` glues like sides. For a cusp-to-cusp
/// line, `A` zips each side of the preimage circle onto itself along the
/// fold and `B` glues the two sides to each other.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regluing {
    A,
    B,
}

impl Regluing {
    pub const BOTH: [Regluing; 2] = [Regluing::A, Regluing::B];
}

impl fmt::Display for Regluing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regluing::A => "a",
            Regluing::B => "b",
        })
    }
}

impl FromStr for Regluing {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "a" | "A" => Ok(Regluing::A),
            "b" | "B" => Ok(Regluing::B),
            other => Err(format!("unknown regluing {other:?} (expected a or b)")),
        }
    }
}

/// Upper bound on total genus after a smoothing that turns `n` components
/// into `n_after`.
pub fn genus_bound(g: i64, n: i64, n_after: i64) -> i64 {
    g + (n_after - n)
}

/// Flags of one side of a closed walk: `side[i]` is at vertex `i` on edge
/// `i`, and consecutive entries lie on the same side of the curve.
fn side_flags(s: &SurfaceMap, edge: &[usize], w: &Walk, line: LineId) -> Result<Vec<Flag>, ComplexError> {
    let len = w.len();
    let mut side = Vec::with_capacity(len);
    let mut cur = w.steps[0];
    for i in 0..len {
        side.push(cur);
        let target = edge[w.steps[(i + 1) % len]];
        let mut h = s.a1(s.a0(cur));
        while edge[h] != target {
            h = s.a1(s.a2(h));
        }
        cur = h;
    }
    if cur != side[0] {
        return Err(ComplexError::OneSided(line));
    }
    Ok(side)
}

fn glue(a2: &mut [Flag], x: Flag, y: Flag) {
    a2[x] = y;
    a2[y] = x;
}

/// Cuts the surface along the preimage of interior line `id` and reglues.
pub fn smooth_interior_line(k: &StandardComplex, id: LineId, choice: Regluing) -> Result<StandardComplex, ComplexError> {
    let line = k.line(id)?;
    if !line.kind.is_interior() {
        return Err(ComplexError::BoundaryLine(id));
    }
    if let Some(t) = k.triples().values().find(|t| t.lines.contains(&id)) {
        return Err(ComplexError::LineHasTriplePoint { line: id, triple: t.id });
    }
    let s = k.surface();
    let cells = s.cells();
    let vertex = &cells.vertex.label;
    let mine: BTreeSet<usize> = line
        .walks
        .iter()
        .flat_map(|w| (0..w.positions()).map(|i| vertex[w.vertex_flag(s, i)]))
        .collect();
    for other in k.lines().values().filter(|l| l.id != id) {
        for w in &other.walks {
            if (0..w.positions()).any(|i| mine.contains(&vertex[w.vertex_flag(s, i)])) {
                return Err(ComplexError::LineMeetsLine { line: id, other: other.id });
            }
        }
    }

    let edge = &cells.edge.label;
    let mut a2 = s.alphas()[2].clone();
    let a0 = |f: Flag| s.a0(f);
    match line.kind {
        LineKind::Cyclic => {
            let (w, u) = (&line.walks[0], &line.walks[1]);
            let (pw, pu) = (side_flags(s, edge, w, id)?, side_flags(s, edge, u, id)?);
            let len = w.len();
            let reversed = is_reflection(&line.ident);
            for i in 0..len {
                let p = pw[i];
                let q = s.a2(p);
                let (j, start_to_x) = if reversed {
                    ((line.ident[i] + len - 1) % len, false)
                } else {
                    (line.ident[i], true)
                };
                let x = pu[j];
                let y = s.a2(x);
                let (to_p, to_q) = match choice {
                    Regluing::A => (y, x),
                    Regluing::B => (x, y),
                };
                if start_to_x {
                    glue(&mut a2, p, to_p);
                    glue(&mut a2, a0(p), a0(to_p));
                    glue(&mut a2, q, to_q);
                    glue(&mut a2, a0(q), a0(to_q));
                } else {
                    glue(&mut a2, p, a0(to_p));
                    glue(&mut a2, a0(p), to_p);
                    glue(&mut a2, q, a0(to_q));
                    glue(&mut a2, a0(q), to_q);
                }
            }
        }
        LineKind::CuspCusp => {
            let w = &line.walks[0];
            let pw = side_flags(s, edge, w, id)?;
            let len = w.len();
            // the fold sends positions i, i+1 to a(i), a(i) - 1
            for i in 0..len {
                let j = (line.ident[i] + len - 1) % len;
                let (p, q) = (pw[i], s.a2(pw[i]));
                let (pj, qj) = (pw[j], s.a2(pw[j]));
                match choice {
                    Regluing::A => {
                        glue(&mut a2, p, a0(pj));
                        glue(&mut a2, q, a0(qj));
                    }
                    Regluing::B => {
                        glue(&mut a2, p, a0(qj));
                        glue(&mut a2, a0(p), qj);
                    }
                }
            }
        }
        _ => unreachable!("interior kinds only"),
    }
    let surface = s.with_alpha2(a2)?;
    let (before, after) = (s.euler_characteristic(), surface.euler_characteristic());
    if after < before {
        return Err(ComplexError::MonotonicityDefect { line: id, before, after });
    }
    let mut lines = k.lines().clone();
    let removed = lines.remove(&id).expect("line exists");
    let mut cusps = k.cusps().clone();
    for c in removed.cusps() {
        cusps.remove(&c);
    }
    let sections = k.sections().iter().filter(|m| m.line != id).cloned().collect();
    StandardComplex::from_parts(surface, k.boundary().cloned(), lines, cusps, k.triples().clone(), sections)
}

fn is_reflection(ident: &[usize]) -> bool {
    let p = ident.len();
    let off = ident[0];
    (0..p).all(|i| ident[i] == (off + p - i) % p) && !(0..p).all(|i| ident[i] == (off + i) % p)
}

/// Glues `k` to its mirror image along the boundary.
///
/// Flags of the mirror copy are shifted by the flag count of `k`. Boundary
/// lines of `k` close up with their mirror images into interior lines that
/// keep their ids; all other lines, cusps and triple points get mirrored
/// copies with fresh ids. Each boundary crossing leaves a section marker.
pub fn double_complex(k: &StandardComplex) -> Result<StandardComplex, ComplexError> {
    let b = k.boundary().ok_or(ComplexError::NoBoundary)?;
    let s = k.surface();
    let n = s.flag_count();
    let al = s.alphas();
    let mut a0: Vec<Flag> = al[0].clone();
    a0.extend(al[0].iter().map(|&g| g + n));
    let mut a1: Vec<Flag> = al[1].clone();
    a1.extend(al[1].iter().map(|&g| g + n));
    let mut a2: Vec<Flag> = al[2].clone();
    a2.extend(al[2].iter().map(|&g| g + n));
    for f in 0..n {
        if s.is_boundary_flag(f) {
            a2[f] = f + n;
            a2[f + n] = f;
        }
    }
    let surface = SurfaceMap::from_involutions(a0, a1, a2)?;

    let line_shift = k.lines().keys().max().map_or(0, |m| m + 1);
    let cusp_shift = k.cusps().keys().max().map_or(0, |m| m + 1);
    let triple_shift = k.triples().keys().max().map_or(0, |m| m + 1);
    let mirror_line = |id: LineId| -> LineId {
        if k.lines()[&id].kind.is_interior() {
            id + line_shift
        } else {
            id
        }
    };

    let mut lines = BTreeMap::new();
    let mut cusps = BTreeMap::new();
    let mut sections = Vec::new();
    for l in k.lines().values() {
        if l.kind.is_interior() {
            lines.insert(l.id, l.clone());
            let mirror = DoubleLine {
                id: l.id + line_shift,
                kind: l.kind,
                walks: l
                    .walks
                    .iter()
                    .map(|w| Walk::new(w.steps.iter().map(|&f| f + n).collect(), w.closed))
                    .collect(),
                ident: l.ident.clone(),
                ends: l
                    .ends
                    .iter()
                    .map(|e| match e {
                        LineEnd::Cusp(c) => LineEnd::Cusp(c + cusp_shift),
                        other => *other,
                    })
                    .collect(),
            };
            lines.insert(mirror.id, mirror);
            continue;
        }
        let len = l.walks[0].len();
        let closed_walks: Vec<Walk> = l
            .walks
            .iter()
            .map(|w| {
                let mut steps = w.steps.clone();
                steps.extend(w.steps.iter().rev().map(|&f| s.a0(f) + n));
                Walk::new(steps, true)
            })
            .collect();
        // position k of a doubled walk: original position and copy
        let total = 2 * len;
        let split = |p: usize| if p <= len { (p, false) } else { (total - p, true) };
        let join = |p: usize, mirrored: bool| if mirrored { (total - p) % total } else { p };
        let ident: Vec<usize> = (0..total)
            .map(|p| {
                let (o, m) = split(p);
                join(l.ident[o], m)
            })
            .collect();
        for c in l.crossings() {
            sections.push(SectionMarker {
                crossing: b.diagram.label(c).to_string(),
                line: l.id,
            });
        }
        let (kind, ends) = match l.kind {
            LineKind::CrossingCrossing => (LineKind::Cyclic, Vec::new()),
            _ => {
                let c = l.cusps()[0];
                (LineKind::CuspCusp, vec![LineEnd::Cusp(c), LineEnd::Cusp(c + cusp_shift)])
            }
        };
        lines.insert(
            l.id,
            DoubleLine {
                id: l.id,
                kind,
                walks: closed_walks,
                ident,
                ends,
            },
        );
    }
    for c in k.cusps().values() {
        cusps.insert(c.id, *c);
        let m = Cusp {
            id: c.id + cusp_shift,
            line: mirror_line(c.line),
            vertex: c.vertex + n,
        };
        cusps.insert(m.id, m);
    }
    let mut triples = BTreeMap::new();
    for t in k.triples().values() {
        triples.insert(t.id, *t);
        let m = TriplePoint {
            id: t.id + triple_shift,
            lines: t.lines.map(mirror_line),
            points: t.points.map(|f| f + n),
        };
        triples.insert(m.id, m);
    }
    sections.sort_by(|x, y| (x.line, &x.crossing).cmp(&(y.line, &y.crossing)));
    StandardComplex::from_parts(surface, None, lines, cusps, triples, sections)
}
