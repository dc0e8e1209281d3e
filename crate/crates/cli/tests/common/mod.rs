//! Builders for the fixture files under `tests/fixtures`, shared by the
//! test targets of this crate.
#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::{Command, Output};

use freeknot::complexes::build::{alignment, cusp_line, cyclic_line, Grid, Shape};
use freeknot::complexes::file::{to_json, ComplexFile};
use freeknot::complexes::{
    Boundary, Cusp, DoubleLine, LineEnd, LineKind, Mesh, StandardComplex, TriplePoint, Walk,
};
use freeknot::diagram::{parse_gauss_code, Diagram};
use freeknot::slice::{build_elementary_complex, elementary_certificate};

pub fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

pub fn fixture(name: &str) -> PathBuf {
    fixture_dir().join(name)
}

pub fn fkt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fkt"))
        .args(args)
        .env_remove("FKT_MAX_CHORDS")
        .output()
        .expect("fkt runs")
}

pub fn json_of(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&out.stdout))
    })
}

fn elementary(code: &str, allow_self: bool) -> StandardComplex {
    let d = parse_gauss_code(code).unwrap();
    let cert = elementary_certificate(&d, allow_self).unwrap().unwrap();
    build_elementary_complex(&d, &cert).unwrap()
}

/// Splits the region holding both `u` and `v` by a path through `mids`.
fn split(regions: &mut Vec<Vec<usize>>, u: usize, v: usize, mids: &[usize]) {
    let hits: Vec<usize> = (0..regions.len())
        .filter(|&i| regions[i].contains(&u) && regions[i].contains(&v))
        .collect();
    assert_eq!(hits.len(), 1, "segment {u}-{v} has no unique region");
    let r = regions.swap_remove(hits[0]);
    let (i, j) = (r.iter().position(|&x| x == u).unwrap(), r.iter().position(|&x| x == v).unwrap());
    let (i, j, path): (usize, usize, Vec<usize>) = if i < j {
        (i, j, mids.to_vec())
    } else {
        (j, i, mids.iter().rev().copied().collect())
    };
    let mut one = r[i..=j].to_vec();
    one.extend(path.iter().rev());
    let mut two: Vec<usize> = r[j..].iter().chain(&r[..=i]).copied().collect();
    two.extend(&path);
    regions.push(one);
    regions.push(two);
}

/// A disc bounded by a 12-letter word over `xA yA xB yB xC yC` with three
/// crossing-to-crossing lines `A`, `B`, `C` that meet pairwise at the
/// preimages of one triple point. `walks` gives the boundary positions of
/// `A1 A2 B1 B2 C1 C2`; walk `A1` meets `C1`, `A2` meets `B1`, `B2` meets `C2`.
pub fn triple_disc(word: &str, walks: [(usize, usize); 6]) -> StandardComplex {
    let letters: Vec<&str> = word.split_whitespace().collect();
    assert_eq!(letters.len(), 12);
    let labels = ["xA", "yA", "xB", "yB", "xC", "yC"];
    let tokens: Vec<String> = letters
        .iter()
        .map(|l| (labels.iter().position(|x| x == l).unwrap() + 1).to_string())
        .collect();
    let d = Diagram::from_tokens(&[tokens]).unwrap();
    let corner = |p: usize| 2 * p;
    let mut regions = vec![(0..24).collect::<Vec<usize>>()];
    let mut next = 24;
    let mut fresh = || {
        next += 1;
        next - 1
    };
    let pair_of = [0, 1, 1, 2, 0, 2];
    let mut meet: [Option<usize>; 3] = [None; 3];
    let mut paths = Vec::new();
    for (w, &(s, e)) in walks.iter().enumerate() {
        let (s, e) = (corner(s), corner(e));
        let (m0, m1) = (fresh(), fresh());
        let x = match meet[pair_of[w]] {
            None => {
                let x = fresh();
                meet[pair_of[w]] = Some(x);
                split(&mut regions, s, e, &[m0, x, m1]);
                x
            }
            Some(x) => {
                split(&mut regions, s, x, &[m0]);
                split(&mut regions, x, e, &[m1]);
                x
            }
        };
        paths.push(vec![s, m0, x, m1, e]);
    }
    regions.sort();
    let mesh = Mesh::from_polygons(&regions).unwrap();
    let at = |v: usize| mesh.flag_at(v).unwrap();
    let positions = d.crossings().map(|c| (c, d.occurrences(c).unwrap().map(|o| at(corner(o.index))))).collect();
    let mut lines = Vec::new();
    for id in 0..3u32 {
        let k = id as usize;
        let (x, y) = (d.crossing(&(2 * k + 1).to_string()).unwrap(), d.crossing(&(2 * k + 2).to_string()).unwrap());
        lines.push(DoubleLine {
            id,
            kind: LineKind::CrossingCrossing,
            walks: (0..2)
                .map(|j| Walk::new(mesh.walk(&paths[2 * k + j], false).unwrap(), false))
                .collect(),
            ident: (0..5).collect(),
            ends: vec![LineEnd::Crossing(x), LineEnd::Crossing(y)],
        });
    }
    let points = meet.map(|m| at(m.unwrap()));
    let triple = TriplePoint { id: 0, lines: [0, 1, 2], points };
    let boundary = Boundary { diagram: d, positions };
    StandardComplex::new(mesh.map, Some(boundary), lines, vec![], vec![triple]).unwrap()
}

/// A punctured torus bounded by "1 2 1 2", each crossing joined to a cusp.
pub fn cusp_torus() -> StandardComplex {
    let g = Grid::new(Shape::Torus, 8, 8, 0);
    let hole = [(0, 0), (0, 1), (1, 0), (1, 1)];
    let faces: Vec<Vec<usize>> = (0..8)
        .flat_map(|r| (0..8).map(move |c| (r, c)))
        .filter(|p| !hole.contains(p))
        .map(|(r, c)| vec![g.vertex(r, c), g.vertex(r, c + 1), g.vertex(r + 1, c + 1), g.vertex(r + 1, c)])
        .collect();
    let mesh = Mesh::from_polygons(&faces).unwrap();
    let v = |r, c| g.vertex(r, c);
    let at = |u: usize| mesh.flag_at(u).unwrap();
    let d = parse_gauss_code("1 2 1 2").unwrap();
    let (one, two) = (d.crossing("1").unwrap(), d.crossing("2").unwrap());
    let positions = [(one, [at(v(0, 1)), at(v(2, 1))]), (two, [at(v(1, 2)), at(v(1, 0))])].into_iter().collect();
    let column: Vec<usize> = [0, 7, 6, 5, 4, 3, 2].iter().map(|&r| v(r, 1)).collect();
    let row: Vec<usize> = [2, 3, 4, 5, 6, 7, 0].iter().map(|&c| v(1, c)).collect();
    let mut lines = Vec::new();
    let mut cusps = Vec::new();
    for (id, (path, c)) in [(column, one), (row, two)].into_iter().enumerate() {
        let id = id as u32;
        cusps.push(Cusp { id, line: id, vertex: at(path[3]) });
        lines.push(DoubleLine {
            id,
            kind: LineKind::CrossingCusp,
            walks: vec![Walk::new(mesh.walk(&path, false).unwrap(), false)],
            ident: (0..7).rev().collect(),
            ends: vec![LineEnd::Crossing(c), LineEnd::Cusp(id)],
        });
    }
    let boundary = Boundary { diagram: d, positions };
    StandardComplex::new(mesh.map, Some(boundary), lines, cusps, vec![]).unwrap()
}

/// Two discs bounded by "1 2" and "1 2" with one line through both.
pub fn two_discs() -> StandardComplex {
    let faces = vec![vec![0, 1, 2, 4], vec![2, 3, 0, 4], vec![5, 6, 7, 9], vec![7, 8, 5, 9]];
    let mesh = Mesh::from_polygons(&faces).unwrap();
    let d = parse_gauss_code("1 2 / 1 2").unwrap();
    let (one, two) = (d.crossing("1").unwrap(), d.crossing("2").unwrap());
    let at = |v| mesh.flag_at(v).unwrap();
    let positions = [(one, [at(0), at(5)]), (two, [at(2), at(7)])].into_iter().collect();
    let line = DoubleLine {
        id: 0,
        kind: LineKind::CrossingCrossing,
        walks: vec![
            Walk::new(mesh.walk(&[0, 4, 2], false).unwrap(), false),
            Walk::new(mesh.walk(&[5, 9, 7], false).unwrap(), false),
        ],
        ident: vec![0, 1, 2],
        ends: vec![LineEnd::Crossing(one), LineEnd::Crossing(two)],
    };
    let boundary = Boundary { diagram: d, positions };
    StandardComplex::new(mesh.map, Some(boundary), vec![line], vec![], vec![]).unwrap()
}

pub fn sphere_cyclic() -> StandardComplex {
    let g = Grid::new(Shape::Sphere, 3, 6, 0);
    let mesh = g.mesh().unwrap();
    let (a, b) = (g.rectangle(1, 1, 1, 1), g.rectangle(1, 4, 1, 1));
    let line = cyclic_line(&mesh, 0, &a, &b, alignment(4, 1, false)).unwrap();
    StandardComplex::new(mesh.map, None, vec![line], vec![], vec![]).unwrap()
}

pub fn sphere_cusp() -> StandardComplex {
    let g = Grid::new(Shape::Sphere, 3, 3, 0);
    let mesh = g.mesh().unwrap();
    let path = g.rectangle(1, 1, 1, 1);
    let line = cusp_line(&mesh, 0, &path, 0, [0, 1]).unwrap();
    let cusps = vec![
        Cusp { id: 0, line: 0, vertex: mesh.flag_at(path[0]).unwrap() },
        Cusp { id: 1, line: 0, vertex: mesh.flag_at(path[2]).unwrap() },
    ];
    StandardComplex::new(mesh.map, None, vec![line], cusps, vec![]).unwrap()
}

/// A closed torus with three cyclic lines through one triple point and a
/// fourth line away from it.
pub fn torus_triple() -> StandardComplex {
    let g = Grid::new(Shape::Torus, 8, 8, 0);
    let mesh = g.mesh().unwrap();
    let r = |r, c| g.rectangle(r, c, 1, 1);
    let a = cyclic_line(&mesh, 0, &r(0, 0), &r(0, 4), alignment(4, 0, false)).unwrap();
    let b = cyclic_line(&mesh, 1, &r(7, 7), &r(3, 7), alignment(4, 0, false)).unwrap();
    let c = cyclic_line(&mesh, 2, &r(7, 3), &r(4, 0), alignment(4, 2, false)).unwrap();
    let far = cyclic_line(&mesh, 3, &r(2, 2), &r(5, 5), alignment(4, 0, false)).unwrap();
    let p = |row, col| mesh.flag_at(g.vertex(row, col)).unwrap();
    let t = TriplePoint { id: 0, lines: [0, 1, 2], points: [p(0, 0), p(0, 4), p(4, 0)] };
    StandardComplex::new(mesh.map, None, vec![a, b, c, far], vec![], vec![t]).unwrap()
}

pub const TRIPLE_EEE: (&str, [(usize, usize); 6]) =
    ("xA xC yA yC xB xA yB yA xC xB yC yB", [(0, 2), (5, 7), (4, 6), (9, 11), (1, 3), (8, 10)]);
pub const TRIPLE_EOO: (&str, [(usize, usize); 6]) =
    ("xA xC yA yC xB xA yB yA xB xC yB yC", [(0, 2), (5, 7), (4, 6), (8, 10), (1, 3), (9, 11)]);
/// The walks meeting at the triple point only touch there, so these two
/// layouts are accepted structurally although no generic map realizes them.
pub const TRIPLE_OOO: (&str, [(usize, usize); 6]) =
    ("xA yA xA yA xB yB xB yB xC yC xC yC", [(0, 1), (2, 3), (4, 5), (6, 7), (10, 11), (8, 9)]);
pub const TRIPLE_OEE: (&str, [(usize, usize); 6]) =
    ("xA yA xA yA xB yB yB xB yC xC xC yC", [(0, 1), (2, 3), (4, 5), (7, 6), (10, 11), (9, 8)]);

pub fn complexes() -> Vec<(&'static str, StandardComplex)> {
    vec![
        ("disc.json", elementary("()", false)),
        ("one_line.json", elementary("1 1 2 2", false)),
        ("odd_pair.json", elementary("1 2 1 2", false)),
        ("cusp_even.json", elementary("1 1", true)),
        ("cusp_odd.json", cusp_torus()),
        ("two_discs.json", two_discs()),
        ("sphere_cyclic.json", sphere_cyclic()),
        ("sphere_cusp.json", sphere_cusp()),
        ("torus_triple.json", torus_triple()),
        ("triple_eee.json", triple_disc(TRIPLE_EEE.0, TRIPLE_EEE.1)),
        ("triple_eoo.json", triple_disc(TRIPLE_EOO.0, TRIPLE_EOO.1)),
        ("triple_oee.json", triple_disc(TRIPLE_OEE.0, TRIPLE_OEE.1)),
        ("bad_triple.json", triple_disc(TRIPLE_OOO.0, TRIPLE_OOO.1)),
    ]
}

fn crossing_on_two_lines() -> String {
    let mut file = ComplexFile::from_complex(&elementary("1 1 2 2", false));
    let mut extra = file.lines[0].clone();
    extra.id = 9;
    file.lines.push(extra);
    file.to_json()
}

fn cylinder(circles: [usize; 2], curves: &[[serde_json::Value; 2]]) -> String {
    let pairing: Vec<[usize; 2]> = (0..curves.len() / 2).map(|k| [2 * k, 2 * k + 1]).collect();
    let curves: Vec<serde_json::Value> = curves.iter().map(|e| serde_json::json!({ "ends": e })).collect();
    let v = serde_json::json!({ "circles": circles, "curves": curves, "pairing": pairing });
    serde_json::to_string_pretty(&v).unwrap()
}

fn b(circle: usize, pos: usize) -> serde_json::Value {
    serde_json::json!({ "circle": circle, "pos": pos })
}

fn br(branch: u32) -> serde_json::Value {
    serde_json::json!({ "branch": branch })
}

fn facts(items: &[(&str, &str, serde_json::Value)]) -> String {
    let list: Vec<serde_json::Value> = items
        .iter()
        .map(|(s, p, v)| serde_json::json!({ "subject": s, "predicate": p, "value": v, "provenance": "fixture" }))
        .collect();
    serde_json::to_string_pretty(&list).unwrap()
}

/// Every fixture file by name, with its exact contents.
pub fn fixtures() -> BTreeMap<&'static str, String> {
    use serde_json::json;
    let mut out: BTreeMap<&'static str, String> =
        complexes().into_iter().map(|(n, k)| (n, to_json(&k) + "\n")).collect();
    out.insert("crossing_twice.json", crossing_on_two_lines() + "\n");
    out.insert("malformed.json", "{\"darts\": [0, 1], \"alpha\": \n".into());
    let cyl = [
        ("cyl_normal.json", cylinder([2, 2], &[[b(0, 0), b(1, 0)], [b(0, 1), b(1, 1)]])),
        ("cyl_readings.json", cylinder([2, 2], &[[b(0, 0), b(0, 1)], [b(1, 0), b(1, 1)]])),
        ("cyl_cond1.json", cylinder([3, 1], &[[b(0, 0), b(0, 1)], [b(0, 2), b(1, 0)]])),
        ("cyl_cond2.json", cylinder([1, 1], &[[br(0), b(0, 0)], [br(0), b(1, 0)]])),
        ("cyl_cond3.json", cylinder([2, 1], &[[b(0, 0), b(1, 0)], [br(0), b(0, 1)]])),
    ];
    for (n, s) in cyl {
        out.insert(n, s + "\n");
    }
    let fs = [
        ("facts_odd_slice.json", facts(&[("K", "odd", json!(true)), ("K", "elementary_slice", json!(true))])),
        ("facts_odd_not_slice.json", facts(&[("K", "odd", json!(true)), ("K", "elementary_slice", json!(false))])),
        (
            "facts_mixed_link.json",
            facts(&[
                ("L", "components", json!(2)),
                ("L", "all_mixed", json!(true)),
                ("L", "elementary_slice", json!(false)),
            ]),
        ),
        (
            "facts_cusp.json",
            facts(&[("K", "slice", json!(true)), ("K", "has_crossing_cusp_line", json!("c"))]),
        ),
        (
            "facts_contradiction.json",
            facts(&[
                ("K", "odd", json!(true)),
                ("K", "elementary_slice", json!(false)),
                ("K", "slice", json!(true)),
            ]),
        ),
    ];
    for (n, s) in fs {
        out.insert(n, s + "\n");
    }
    out.insert(
        "codes.txt",
        "# worked examples\n1 2 1 2\n1 2 1 3 2 4 3 4\n1 2 3 1 2 3\n1 2 1 3 2 3\n1 1\n()\n1 2 / 1 2  # a two-component link\n".into(),
    );
    out
}
