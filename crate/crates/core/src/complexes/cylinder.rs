//! Surface diagrams on a cylinder with boundary circles `B0` and `B1`.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::ComplexError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CurveEnd {
    Boundary { circle: usize, pos: usize },
    Branch { branch: u32 },
}

impl CurveEnd {
    fn circle(self) -> Option<usize> {
        match self {
            CurveEnd::Boundary { circle, .. } => Some(circle),
            CurveEnd::Branch { .. } => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Curve {
    pub ends: [CurveEnd; 2],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CylinderDiagram {
    /// Number of endpoint positions on `B0` and `B1`.
    pub circles: [usize; 2],
    pub curves: Vec<Curve>,
    pub pairing: Vec<[usize; 2]>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub condition: u8,
    pub curve: usize,
    pub partner: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Normality {
    pub normal: bool,
    pub first_violation: Option<Violation>,
    /// Condition 1 read as "the partner's ends lie on one circle".
    pub condition1_single_circle: bool,
    /// Condition 1 read as "the partner's ends lie on the curve's circle".
    pub condition1_same_circle: bool,
}

impl CylinderDiagram {
    pub fn parse(text: &str) -> Result<Self, ComplexError> {
        let c: CylinderDiagram = serde_json::from_str(text).map_err(|e| ComplexError::Schema(e.to_string()))?;
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<(), ComplexError> {
        let bad = |m: String| Err(ComplexError::Schema(m));
        let mut used = BTreeSet::new();
        let mut branches: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
        for (i, c) in self.curves.iter().enumerate() {
            for e in c.ends {
                match e {
                    CurveEnd::Boundary { circle, pos } => {
                        if circle > 1 || pos >= self.circles[circle] {
                            return bad(format!("curve {i}: end ({circle}, {pos}) is not a boundary position"));
                        }
                        if !used.insert((circle, pos)) {
                            return bad(format!("boundary position ({circle}, {pos}) used twice"));
                        }
                    }
                    CurveEnd::Branch { branch } => branches.entry(branch).or_default().push(i),
                }
            }
        }
        let mut partner = vec![usize::MAX; self.curves.len()];
        for &[a, b] in &self.pairing {
            if a == b || a >= partner.len() || b >= partner.len() || partner[a] != usize::MAX || partner[b] != usize::MAX {
                return bad(format!("pairing entry [{a}, {b}] is not part of a fixed-point-free involution"));
            }
            partner[a] = b;
            partner[b] = a;
        }
        if let Some(i) = partner.iter().position(|&p| p == usize::MAX) {
            return bad(format!("curve {i} is unpaired"));
        }
        for (b, users) in &branches {
            let ok = match users.as_slice() {
                [_] => true,
                [x, y] => x != y && partner[*x] == *y,
                _ => false,
            };
            if !ok {
                return bad(format!("branch point {b} is shared by curves that are not partners"));
            }
        }
        Ok(())
    }

    pub fn partner(&self, i: usize) -> usize {
        self.pairing
            .iter()
            .find_map(|&[a, b]| {
                if a == i {
                    Some(b)
                } else if b == i {
                    Some(a)
                } else {
                    None
                }
            })
            .expect("validated pairing")
    }

    fn circles_of(&self, i: usize) -> [Option<usize>; 2] {
        self.curves[i].ends.map(CurveEnd::circle)
    }
}

fn one_circle(ends: [Option<usize>; 2]) -> Option<usize> {
    match ends {
        [Some(a), Some(b)] if a == b => Some(a),
        _ => None,
    }
}

fn across(ends: [Option<usize>; 2]) -> bool {
    matches!(ends, [Some(a), Some(b)] if a != b)
}

pub fn is_normal_cylinder(c: &CylinderDiagram) -> Normality {
    let mut first = None;
    let mut single = true;
    let mut same = true;
    let note = |cond: u8, curve: usize, partner: usize, first: &mut Option<Violation>| {
        let v = Violation { condition: cond, curve, partner };
        match first {
            Some(f) if (f.condition, f.curve) <= (cond, curve) => {}
            _ => *first = Some(v),
        }
    };
    for i in 0..c.curves.len() {
        let j = c.partner(i);
        let (mine, theirs) = (c.circles_of(i), c.circles_of(j));
        if let Some(circle) = one_circle(mine) {
            let p = one_circle(theirs);
            if p.is_none() {
                single = false;
                note(1, i, j, &mut first);
            }
            if p != Some(circle) {
                same = false;
            }
        }
        let shared = c.curves[i].ends.iter().enumerate().find_map(|(a, e)| {
            matches!(e, CurveEnd::Branch { .. })
                .then(|| c.curves[j].ends.iter().position(|f| f == e).map(|b| (a, b)))
                .flatten()
        });
        if let Some((a, b)) = shared {
            let (x, y) = (mine[1 - a], theirs[1 - b]);
            if let (Some(x), Some(y)) = (x, y) {
                if x != y {
                    note(2, i, j, &mut first);
                }
            }
        }
        if across(mine) && !across(theirs) {
            note(3, i, j, &mut first);
        }
    }
    Normality {
        normal: first.is_none(),
        first_violation: first,
        condition1_single_circle: single,
        condition1_same_circle: same,
    }
}

/// True when every meridian meets an even number of curves, i.e. the
/// curves running from `B0` to `B1` are even in number.
pub fn meridian_parity(c: &CylinderDiagram) -> bool {
    (0..c.curves.len()).filter(|&i| across(c.circles_of(i))).count() % 2 == 0
}
