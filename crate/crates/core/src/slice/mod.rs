//! Elementary slice certificates and the deduction engine.
//!
//! A certificate pairs up the chords of a one-component diagram and joins
//! the endpoints of each pair by two arcs, one per preimage sheet, so that
//! no two arcs cross. Each pair is the shadow of a double line between two
//! crossings in a disc; non-crossing arcs mean no triple points.

mod deduce;

use serde::Serialize;
use thiserror::Error;

use crate::complexes::{Boundary, ComplexError, DoubleLine, LineEnd, LineKind, Mesh, StandardComplex, Walk};
use crate::complexes::{Cusp, Flag};
use crate::diagram::{crossing_kind, Crossing, CrossingKind, Diagram, DiagramError};
use crate::parity::{is_iteratively_odd, is_odd};

pub use deduce::{
    deduce, parse_facts, Cobordism, DeduceError, Deduction, Fact, GenusBound, GenusKind, Predicate, RawFact, Side,
    SmoothingRecord, Transition,
};

/// Largest diagram the brute-force oracle accepts.
pub const ORACLE_MAX_CHORDS: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SliceError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error("the oracle handles at most {max} chords, got {got}")]
    OracleCap { got: usize, max: usize },
    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SliceCertificate {
    /// Matched chord pairs; a chord matched with itself appears as `[x, x]`.
    pub matching: Vec<[Crossing; 2]>,
    /// For each pair, its arcs as word positions. Two arcs per pair, one for
    /// a self-matched chord.
    pub arcs: Vec<Vec<[usize; 2]>>,
    pub self_pairs_allowed: bool,
}

impl SliceCertificate {
    pub fn empty() -> Self {
        SliceCertificate {
            matching: Vec::new(),
            arcs: Vec::new(),
            self_pairs_allowed: false,
        }
    }

    pub fn pair_count(&self) -> usize {
        self.matching.len()
    }

    /// Checks the certificate against `d`.
    pub fn verify(&self, d: &Diagram) -> Result<(), SliceError> {
        let bad = |m: String| Err(SliceError::InvalidCertificate(m));
        let word = d.require_one_component()?;
        let pos = chord_positions(word, d.crossing_count());
        if self.arcs.len() != self.matching.len() {
            return bad("one arc list per matched pair is required".into());
        }
        let mut matched = vec![false; d.crossing_count()];
        let mut used = vec![false; word.len()];
        let mut all = Vec::new();
        for (&[x, y], arcs) in self.matching.iter().zip(&self.arcs) {
            for c in [x, y] {
                if !d.contains(c) {
                    return bad(format!("unknown crossing {}", c.0));
                }
            }
            if x == y && !self.self_pairs_allowed {
                return bad(format!("crossing {} is matched with itself", d.label(x)));
            }
            for c in if x == y { vec![x] } else { vec![x, y] } {
                if std::mem::replace(&mut matched[c.index()], true) {
                    return bad(format!("crossing {} is matched twice", d.label(c)));
                }
            }
            let expected: Vec<Vec<[usize; 2]>> = if x == y {
                vec![vec![pos[x.index()]]]
            } else {
                let (p, q) = (pos[x.index()], pos[y.index()]);
                vec![vec![[p[0], q[0]], [p[1], q[1]]], vec![[p[0], q[1]], [p[1], q[0]]]]
            };
            let norm = |v: &[[usize; 2]]| {
                let mut v: Vec<[usize; 2]> = v.iter().map(|&[a, b]| [a.min(b), a.max(b)]).collect();
                v.sort();
                v
            };
            if !expected.iter().any(|e| norm(e) == norm(arcs)) {
                return bad(format!("arcs of pair ({}, {}) do not join the two sheets", d.label(x), d.label(y)));
            }
            for &[a, b] in arcs {
                used[a] = true;
                used[b] = true;
                all.push([a, b]);
            }
        }
        if matched.iter().any(|m| !m) || used.iter().any(|u| !u) {
            return bad("some chord is left unmatched".into());
        }
        for (i, &a) in all.iter().enumerate() {
            for &b in &all[i + 1..] {
                if arcs_cross(a, b) {
                    return bad(format!("arcs {a:?} and {b:?} cross"));
                }
            }
        }
        Ok(())
    }
}

fn chord_positions(word: &[Crossing], n: usize) -> Vec<[usize; 2]> {
    let mut pos = vec![[usize::MAX; 2]; n];
    for (i, c) in word.iter().enumerate() {
        let slot = &mut pos[c.index()];
        if slot[0] == usize::MAX {
            slot[0] = i;
        } else {
            slot[1] = i;
        }
    }
    pos
}

/// Two arcs between circle positions cross when exactly one endpoint of
/// one lies strictly between the endpoints of the other.
pub fn arcs_cross(a: [usize; 2], b: [usize; 2]) -> bool {
    let (lo, hi) = (a[0].min(a[1]), a[0].max(a[1]));
    let inside = |p: usize| lo < p && p < hi;
    inside(b[0]) != inside(b[1])
}

struct Search<'a> {
    pos: &'a [[usize; 2]],
    allow_self: bool,
    matched: Vec<bool>,
    arcs: Vec<[usize; 2]>,
    pairs: Vec<([Crossing; 2], Vec<[usize; 2]>)>,
}

impl Search<'_> {
    fn fits(&self, new: &[[usize; 2]]) -> bool {
        new.iter().enumerate().all(|(i, &a)| {
            self.arcs.iter().all(|&b| !arcs_cross(a, b)) && new[i + 1..].iter().all(|&b| !arcs_cross(a, b))
        })
    }

    fn run(&mut self) -> bool {
        let Some(x) = self.matched.iter().position(|m| !m) else {
            return true;
        };
        self.matched[x] = true;
        let n = self.matched.len();
        let mut options: Vec<usize> = (x + 1..n).filter(|&y| !self.matched[y]).collect();
        if self.allow_self {
            options.push(x);
        }
        for y in options {
            let (p, q) = (self.pos[x], self.pos[y]);
            let pairings: Vec<Vec<[usize; 2]>> = if x == y {
                vec![vec![p]]
            } else {
                vec![vec![[p[0], q[0]], [p[1], q[1]]], vec![[p[0], q[1]], [p[1], q[0]]]]
            };
            for arcs in pairings {
                if !self.fits(&arcs) {
                    continue;
                }
                self.matched[y] = true;
                let k = self.arcs.len();
                self.arcs.extend(&arcs);
                self.pairs.push(([Crossing(x as u32), Crossing(y as u32)], arcs));
                if self.run() {
                    return true;
                }
                self.pairs.pop();
                self.arcs.truncate(k);
                if y != x {
                    self.matched[y] = false;
                }
            }
        }
        self.matched[x] = false;
        false
    }
}

/// Depth-first search for a certificate: the smallest unmatched chord
/// takes partners in increasing order (itself last, when allowed), trying
/// the two endpoint pairings in turn. Returns the first certificate found.
pub fn elementary_certificate(d: &Diagram, allow_self_pairs: bool) -> Result<Option<SliceCertificate>, SliceError> {
    let word = d.require_one_component()?;
    let n = d.crossing_count();
    if n % 2 == 1 && !allow_self_pairs {
        return Ok(None);
    }
    let pos = chord_positions(word, n);
    let mut s = Search {
        pos: &pos,
        allow_self: allow_self_pairs,
        matched: vec![false; n],
        arcs: Vec::new(),
        pairs: Vec::new(),
    };
    if !s.run() {
        return Ok(None);
    }
    let (matching, arcs) = s.pairs.into_iter().unzip();
    Ok(Some(SliceCertificate {
        matching,
        arcs,
        self_pairs_allowed: allow_self_pairs,
    }))
}

/// Decides whether a certificate without self pairs exists, by listing
/// every perfect matching of the word positions and keeping those whose
/// arcs are non-crossing and join the two ends of some chord to the two
/// ends of one other chord.
pub fn elementary_oracle(d: &Diagram) -> Result<bool, SliceError> {
    let word = d.require_one_component()?;
    if d.crossing_count() > ORACLE_MAX_CHORDS {
        return Err(SliceError::OracleCap {
            got: d.crossing_count(),
            max: ORACLE_MAX_CHORDS,
        });
    }
    fn matchings(free: &mut Vec<usize>, acc: &mut Vec<[usize; 2]>, out: &mut Vec<Vec<[usize; 2]>>) {
        if free.is_empty() {
            out.push(acc.clone());
            return;
        }
        let a = free.remove(0);
        for k in 0..free.len() {
            let b = free.remove(k);
            acc.push([a, b]);
            matchings(free, acc, out);
            acc.pop();
            free.insert(k, b);
        }
        free.insert(0, a);
    }
    let mut all = Vec::new();
    matchings(&mut (0..word.len()).collect(), &mut Vec::new(), &mut all);
    let ok = |m: &Vec<[usize; 2]>| {
        let mut partner_chord = vec![None; d.crossing_count()];
        for &[a, b] in m {
            let (ca, cb) = (word[a], word[b]);
            if ca == cb {
                return false;
            }
            for (c, other) in [(ca, cb), (cb, ca)] {
                match partner_chord[c.index()] {
                    None => partner_chord[c.index()] = Some(other),
                    Some(o) if o == other => {}
                    Some(_) => return false,
                }
            }
        }
        (0..m.len()).all(|i| (i + 1..m.len()).all(|j| !arcs_cross(m[i], m[j])))
    };
    Ok(all.iter().any(ok))
}

/// A disc whose boundary reads `d`, with one double line per matched pair.
///
/// The boundary circle carries a corner vertex per word position with a
/// subdividing vertex between consecutive corners. Each arc is a two-edge
/// path through its own interior vertex; the arcs cut the disc into faces.
pub fn build_elementary_complex(d: &Diagram, cert: &SliceCertificate) -> Result<StandardComplex, SliceError> {
    cert.verify(d)?;
    let word = d.require_one_component()?;
    let len = word.len();
    if len == 0 {
        let mesh = Mesh::from_polygons(&[vec![0, 1, 2]])?;
        let boundary = Boundary {
            diagram: d.clone(),
            positions: Default::default(),
        };
        return Ok(StandardComplex::new(mesh.map, Some(boundary), vec![], vec![], vec![])?);
    }
    let corner = |p: usize| 2 * p;
    let mut regions: Vec<Vec<usize>> = vec![(0..2 * len).collect()];
    let mut next = 2 * len;
    let mut mids = Vec::new();
    for arcs in &cert.arcs {
        let mut m = Vec::new();
        for &[a, b] in arcs {
            let (u, v) = (corner(a), corner(b));
            let mid = next;
            next += 1;
            let r = regions
                .iter()
                .position(|r| r.contains(&u) && r.contains(&v))
                .ok_or_else(|| SliceError::InvalidCertificate("arcs cross".into()))?;
            let region = regions.swap_remove(r);
            let (i, j) = (
                region.iter().position(|&x| x == u).unwrap(),
                region.iter().position(|&x| x == v).unwrap(),
            );
            let (i, j) = (i.min(j), i.max(j));
            let mut one: Vec<usize> = region[i..=j].to_vec();
            one.push(mid);
            let mut two: Vec<usize> = region[j..].iter().chain(&region[..=i]).copied().collect();
            two.push(mid);
            regions.push(one);
            regions.push(two);
            m.push(mid);
        }
        mids.push(m);
    }
    regions.sort();
    let mesh = Mesh::from_polygons(&regions)?;
    let flag_at = |v: usize| -> Flag { mesh.flag_at(v).expect("vertex exists") };
    let mut positions = std::collections::BTreeMap::new();
    for c in d.crossings() {
        let occ = d.occurrences(c).unwrap();
        positions.insert(c, occ.map(|o| flag_at(corner(o.index))));
    }
    let mut lines = Vec::new();
    let mut cusps = Vec::new();
    for (k, ((&[x, y], arcs), m)) in cert.matching.iter().zip(&cert.arcs).zip(&mids).enumerate() {
        let id = k as u32;
        let walk = |arc: [usize; 2], mid: usize, from: usize| -> Result<Walk, ComplexError> {
            let to = if arc[0] == from { arc[1] } else { arc[0] };
            Ok(Walk::new(mesh.walk(&[corner(from), mid, corner(to)], false)?, false))
        };
        let px = d.occurrences(x).unwrap().map(|o| o.index);
        if x == y {
            lines.push(DoubleLine {
                id,
                kind: LineKind::CrossingCusp,
                walks: vec![walk(arcs[0], m[0], px[0])?],
                ident: vec![2, 1, 0],
                ends: vec![LineEnd::Crossing(x), LineEnd::Cusp(id)],
            });
            cusps.push(Cusp {
                id,
                line: id,
                vertex: flag_at(m[0]),
            });
            continue;
        }
        let first = |p: usize| arcs.iter().position(|a| a.contains(&p)).unwrap();
        let (i0, i1) = (first(px[0]), first(px[1]));
        lines.push(DoubleLine {
            id,
            kind: LineKind::CrossingCrossing,
            walks: vec![walk(arcs[i0], m[i0], px[0])?, walk(arcs[i1], m[i1], px[1])?],
            ident: vec![0, 1, 2],
            ends: vec![LineEnd::Crossing(x), LineEnd::Crossing(y)],
        });
    }
    let boundary = Boundary {
        diagram: d.clone(),
        positions,
    };
    Ok(StandardComplex::new(mesh.map, Some(boundary), lines, cusps, vec![])?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremScope {
    pub components: usize,
    /// One component, every chord linked with an odd number of chords.
    pub odd: bool,
    /// One component and iteratively odd, with the order.
    pub iteratively_odd: Option<usize>,
    /// Two components, every crossing mixed.
    pub two_components_all_mixed: bool,
}

impl TheoremScope {
    pub fn any(&self) -> bool {
        self.odd || self.iteratively_odd.is_some() || self.two_components_all_mixed
    }
}

pub fn theorem_preconditions(d: &Diagram) -> TheoremScope {
    let one = d.component_count() == 1;
    let all_mixed = d
        .crossings()
        .all(|c| crossing_kind(d, c).map(|k| k == CrossingKind::Mixed).unwrap_or(false));
    TheoremScope {
        components: d.component_count(),
        odd: one && is_odd(d).unwrap_or(false),
        iteratively_odd: if one { is_iteratively_odd(d).ok().flatten() } else { None },
        two_components_all_mixed: d.component_count() == 2 && all_mixed,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::{check_parity_constraints, complex_class};
    use crate::diagram::parse_gauss_code;

    fn d(s: &str) -> Diagram {
        parse_gauss_code(s).unwrap()
    }

    #[test]
    fn certificate_examples() {
        assert_eq!(elementary_certificate(&d("()"), false).unwrap(), Some(SliceCertificate::empty()));
        assert_eq!(elementary_certificate(&d("1 1"), false).unwrap(), None);
        let c = elementary_certificate(&d("1 1 2 2"), false).unwrap().unwrap();
        assert_eq!(c.matching, vec![[Crossing(0), Crossing(1)]]);
        assert_eq!(c.arcs, vec![vec![[0, 3], [1, 2]]]);
        assert_eq!(elementary_certificate(&d("1 1 2 2 3 3"), false).unwrap(), None);
        assert!(elementary_certificate(&d("1 2 / 1 2"), false).is_err());
    }

    #[test]
    fn self_pairs_behind_a_flag() {
        let c = elementary_certificate(&d("1 1"), true).unwrap().unwrap();
        assert_eq!(c.matching, vec![[Crossing(0), Crossing(0)]]);
        let k = build_elementary_complex(&d("1 1"), &c).unwrap();
        assert!(!complex_class(&k).elementary && complex_class(&k).purified);
        assert!(check_parity_constraints(&k).unwrap().is_empty());
    }

    #[test]
    fn oracle_examples() {
        assert!(elementary_oracle(&d("1 1 2 2")).unwrap());
        assert!(!elementary_oracle(&d("1 1")).unwrap());
        assert!(!elementary_oracle(&d("1 1 2 2 3 3")).unwrap());
        assert!(elementary_oracle(&d("1 2 3 4 1 2 3 4 5 5")).is_err());
    }

    #[test]
    fn built_complexes() {
        let disc = build_elementary_complex(&d("()"), &SliceCertificate::empty()).unwrap();
        assert_eq!(disc.euler_characteristic(), 1);
        for code in ["1 1 2 2", "1 2 1 2", "1 2 3 1 2 4 3 4"] {
            let x = d(code);
            let Some(c) = elementary_certificate(&x, false).unwrap() else { continue };
            let k = build_elementary_complex(&x, &c).unwrap();
            assert_eq!(k.surface().total_genus(), Ok(0));
            assert!(complex_class(&k).elementary);
            assert_eq!(k.lines().len(), c.pair_count());
            assert!(check_parity_constraints(&k).unwrap().is_empty());
        }
    }

    #[test]
    fn scope_examples() {
        let s = theorem_preconditions(&d("1 2 1 2"));
        assert!(s.odd && s.iteratively_odd == Some(1) && !s.two_components_all_mixed);
        assert!(theorem_preconditions(&d("1 2 / 1 2")).two_components_all_mixed);
        assert!(!theorem_preconditions(&d("1 1")).any());
    }
}
