//! JSON complex files.
//!
//! ```json
//! {
//!   "darts": [0, 1, 2, 3],
//!   "alpha": { "pairs": [[0, 1], [2, 3]], "free": [1] },
//!   "sigma": [[0, 2], [1], [3]],
//!   "boundary": { "code": "1 1", "crossing_map": { "1": [0, 3] } },
//!   "lines": [{ "id": 0, "kind": "cyclic", "walks": [[..], [..]],
//!               "ident": [[0, 0], [1, 1]], "ends": [] }],
//!   "cusps": [{ "id": 0, "line": 1, "dart": 5 }],
//!   "triples": [{ "id": 0, "lines": [0, 1, 2], "points": [4, 9, 12] }]
//! }
//! ```
//!
//! Walks, cusps, triple points and crossing positions all name darts; a
//! dart stands for its vertex on its edge. `ident` lists `[i, j]` pairs of
//! vertex positions. Line ends are `{"crossing": label}` or `{"cusp": id}`.
//! The optional `alpha.twisted` lists edges glued with a flip.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::complex::{Boundary, Cusp, DoubleLine, LineEnd, LineId, LineKind, SectionMarker, StandardComplex, TriplePoint, Walk};
use super::oriented::OrientedMap;
use super::surface::Flag;
use super::ComplexError;
use crate::diagram::parse_gauss_code;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexFile {
    pub darts: Vec<usize>,
    pub alpha: AlphaFile,
    pub sigma: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub boundary: Option<BoundaryFile>,
    #[serde(default)]
    pub lines: Vec<LineFile>,
    #[serde(default)]
    pub cusps: Vec<CuspFile>,
    #[serde(default)]
    pub triples: Vec<TripleFile>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub sections: Vec<SectionMarker>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlphaFile {
    pub pairs: Vec<[usize; 2]>,
    #[serde(default)]
    pub free: Vec<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub twisted: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundaryFile {
    pub code: String,
    pub crossing_map: BTreeMap<String, [usize; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LineFile {
    pub id: LineId,
    pub kind: LineKind,
    pub walks: Vec<Vec<usize>>,
    pub ident: Vec<[usize; 2]>,
    #[serde(default)]
    pub ends: Vec<EndFile>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EndFile {
    Crossing(String),
    Cusp(u32),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CuspFile {
    pub id: u32,
    pub line: LineId,
    pub dart: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TripleFile {
    pub id: u32,
    pub lines: [LineId; 3],
    pub points: [usize; 3],
}

fn schema(msg: impl Into<String>) -> ComplexError {
    ComplexError::Schema(msg.into())
}

/// Parses and validates a complex file.
pub fn parse_complex(text: &str) -> Result<StandardComplex, ComplexError> {
    let file: ComplexFile = serde_json::from_str(text).map_err(|e| schema(e.to_string()))?;
    file.to_complex()
}

impl ComplexFile {
    pub fn to_complex(&self) -> Result<StandardComplex, ComplexError> {
        let mut index = HashMap::new();
        for (i, &d) in self.darts.iter().enumerate() {
            if index.insert(d, i).is_some() {
                return Err(schema(format!("dart {d} listed twice")));
            }
        }
        let dart = |d: usize| -> Result<usize, ComplexError> {
            index.get(&d).copied().ok_or_else(|| schema(format!("unknown dart {d}")))
        };
        let darts = |ds: &[usize]| -> Result<Vec<usize>, ComplexError> { ds.iter().map(|&d| dart(d)).collect() };
        let om = OrientedMap {
            darts: self.darts.len(),
            alpha: self
                .alpha
                .pairs
                .iter()
                .map(|&[a, b]| Ok([dart(a)?, dart(b)?]))
                .collect::<Result<_, ComplexError>>()?,
            sigma: self.sigma.iter().map(|c| darts(c)).collect::<Result<_, _>>()?,
            free: darts(&self.alpha.free)?,
            twisted: darts(&self.alpha.twisted)?,
        };
        let (surface, table) = om.to_surface()?;
        let flag = |d: usize| -> Result<Flag, ComplexError> {
            let i = dart(d)?;
            table.any(i).ok_or_else(|| schema(format!("dart {d} has no surviving side")))
        };

        let boundary = match &self.boundary {
            None => None,
            Some(b) => {
                let diagram = parse_gauss_code(&b.code)?;
                let mut positions = BTreeMap::new();
                for (label, ds) in &b.crossing_map {
                    let c = diagram
                        .crossing(label)
                        .ok_or_else(|| schema(format!("crossing_map names unknown crossing {label}")))?;
                    positions.insert(c, [flag(ds[0])?, flag(ds[1])?]);
                }
                Some(Boundary { diagram, positions })
            }
        };
        let crossing = |label: &str| -> Result<crate::diagram::Crossing, ComplexError> {
            boundary
                .as_ref()
                .and_then(|b| b.diagram.crossing(label))
                .ok_or_else(|| schema(format!("line end names unknown crossing {label}")))
        };

        let mut lines = Vec::new();
        for l in &self.lines {
            let closed = l.kind.is_interior();
            let walks: Vec<Walk> = l
                .walks
                .iter()
                .map(|w| Ok(Walk::new(w.iter().map(|&d| flag(d)).collect::<Result<_, ComplexError>>()?, closed)))
                .collect::<Result<_, ComplexError>>()?;
            let positions = walks.first().map_or(0, Walk::positions);
            let mut ident = vec![usize::MAX; positions];
            for &[i, j] in &l.ident {
                if i >= positions || ident[i] != usize::MAX {
                    return Err(schema(format!("line {}: ident entry [{i}, {j}] is out of range or repeated", l.id)));
                }
                ident[i] = j;
            }
            if ident.contains(&usize::MAX) {
                return Err(schema(format!("line {}: ident does not cover every position", l.id)));
            }
            let ends = l
                .ends
                .iter()
                .map(|e| match e {
                    EndFile::Crossing(label) => crossing(label).map(LineEnd::Crossing),
                    EndFile::Cusp(c) => Ok(LineEnd::Cusp(*c)),
                })
                .collect::<Result<_, _>>()?;
            lines.push(DoubleLine {
                id: l.id,
                kind: l.kind,
                walks,
                ident,
                ends,
            });
        }
        let cusps = self
            .cusps
            .iter()
            .map(|c| {
                Ok(Cusp {
                    id: c.id,
                    line: c.line,
                    vertex: flag(c.dart)?,
                })
            })
            .collect::<Result<_, ComplexError>>()?;
        let triples = self
            .triples
            .iter()
            .map(|t| {
                Ok(TriplePoint {
                    id: t.id,
                    lines: t.lines,
                    points: [flag(t.points[0])?, flag(t.points[1])?, flag(t.points[2])?],
                })
            })
            .collect::<Result<_, ComplexError>>()?;
        let k = StandardComplex::new(surface, boundary, lines, cusps, triples)?;
        if self.sections.is_empty() {
            Ok(k)
        } else {
            k.with_sections(self.sections.clone())
        }
    }

    pub fn from_complex(k: &StandardComplex) -> ComplexFile {
        let (om, dart_of) = OrientedMap::from_surface(k.surface());
        let boundary = k.boundary().map(|b| BoundaryFile {
            code: b.diagram.to_string(),
            crossing_map: b
                .positions
                .iter()
                .map(|(&c, ps)| (b.diagram.label(c).to_string(), ps.map(|f| dart_of[f])))
                .collect(),
        });
        let lines = k
            .lines()
            .values()
            .map(|l| LineFile {
                id: l.id,
                kind: l.kind,
                walks: l.walks.iter().map(|w| w.steps.iter().map(|&f| dart_of[f]).collect()).collect(),
                ident: l.ident.iter().enumerate().map(|(i, &j)| [i, j]).collect(),
                ends: l
                    .ends
                    .iter()
                    .map(|e| match e {
                        LineEnd::Crossing(c) => {
                            EndFile::Crossing(k.boundary().map_or_else(String::new, |b| b.diagram.label(*c).to_string()))
                        }
                        LineEnd::Cusp(c) => EndFile::Cusp(*c),
                    })
                    .collect(),
            })
            .collect();
        ComplexFile {
            darts: (0..om.darts).collect(),
            alpha: AlphaFile {
                pairs: om.alpha,
                free: om.free,
                twisted: om.twisted,
            },
            sigma: om.sigma,
            boundary,
            lines,
            cusps: k
                .cusps()
                .values()
                .map(|c| CuspFile {
                    id: c.id,
                    line: c.line,
                    dart: dart_of[c.vertex],
                })
                .collect(),
            triples: k
                .triples()
                .values()
                .map(|t| TripleFile {
                    id: t.id,
                    lines: t.lines,
                    points: t.points.map(|f| dart_of[f]),
                })
                .collect(),
            sections: k.sections().to_vec(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("complex files always serialize")
    }
}

/// Pretty JSON for a complex.
pub fn to_json(k: &StandardComplex) -> String {
    ComplexFile::from_complex(k).to_json()
}
