//! Combinatorial surfaces.
//!
//! A [`SurfaceMap`] is stored as a generalized map on flags. A flag is a
//! (vertex, edge, face) incidence; three involutions switch one of the
//! three:
//!
//! * `α0` moves to the other end of the edge,
//! * `α1` moves to the other edge at the same corner,
//! * `α2` moves to the other face along the same edge.
//!
//! `α0` and `α1` are fixed-point free. Fixed points of `α2` are boundary
//! edges. Cutting along an edge removes `α2` links and regluing adds them
//! back between other flags; vertices, edges and faces are always derived
//! as orbits, so surgery never has to split or merge vertices by hand.
//! Orientation is not part of the encoding, which lets surgery produce
//! non-orientable surfaces without special cases.

use std::collections::VecDeque;

use super::ComplexError;

pub type Flag = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceMap {
    alpha: [Vec<Flag>; 3],
}

/// Orbit labels for every flag, plus the number of orbits.
#[derive(Debug, Clone)]
pub struct Orbits {
    pub label: Vec<usize>,
    pub count: usize,
}

#[derive(Debug, Clone)]
pub struct Cells {
    pub vertex: Orbits,
    pub edge: Orbits,
    pub face: Orbits,
    pub component: Orbits,
}

/// Per-component Euler characteristic and genus data.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct ComponentGenus {
    pub chi: i64,
    pub boundary_circles: usize,
    pub orientable: bool,
    /// `None` for non-orientable components.
    pub genus: Option<i64>,
}

impl SurfaceMap {
    pub fn from_involutions(a0: Vec<Flag>, a1: Vec<Flag>, a2: Vec<Flag>) -> Result<Self, ComplexError> {
        let m = SurfaceMap { alpha: [a0, a1, a2] };
        m.check()?;
        Ok(m)
    }

    pub(crate) fn check(&self) -> Result<(), ComplexError> {
        let n = self.alpha[0].len();
        if self.alpha.iter().any(|a| a.len() != n) {
            return Err(ComplexError::Map("involutions have different lengths".into()));
        }
        for (k, a) in self.alpha.iter().enumerate() {
            for (f, &g) in a.iter().enumerate() {
                if g >= n || a[g] != f {
                    return Err(ComplexError::Map(format!("alpha{k} is not an involution at flag {f}")));
                }
                if k < 2 && g == f {
                    return Err(ComplexError::Map(format!("alpha{k} fixes flag {f}")));
                }
            }
        }
        for f in 0..n {
            let g = self.alpha[2][self.alpha[0][f]];
            if self.alpha[0][self.alpha[2][f]] != g {
                return Err(ComplexError::Map(format!("alpha0 and alpha2 do not commute at flag {f}")));
            }
        }
        Ok(())
    }

    pub fn flag_count(&self) -> usize {
        self.alpha[0].len()
    }

    pub fn a0(&self, f: Flag) -> Flag {
        self.alpha[0][f]
    }

    pub fn a1(&self, f: Flag) -> Flag {
        self.alpha[1][f]
    }

    pub fn a2(&self, f: Flag) -> Flag {
        self.alpha[2][f]
    }

    pub fn alphas(&self) -> &[Vec<Flag>; 3] {
        &self.alpha
    }

    pub fn is_boundary_flag(&self, f: Flag) -> bool {
        self.alpha[2][f] == f
    }

    pub fn is_closed(&self) -> bool {
        (0..self.flag_count()).all(|f| !self.is_boundary_flag(f))
    }

    pub fn orbits(&self, which: &[usize]) -> Orbits {
        let n = self.flag_count();
        let mut label = vec![usize::MAX; n];
        let mut count = 0;
        let mut stack = Vec::new();
        for start in 0..n {
            if label[start] != usize::MAX {
                continue;
            }
            label[start] = count;
            stack.push(start);
            while let Some(f) = stack.pop() {
                for &k in which {
                    let g = self.alpha[k][f];
                    if label[g] == usize::MAX {
                        label[g] = count;
                        stack.push(g);
                    }
                }
            }
            count += 1;
        }
        Orbits { label, count }
    }

    pub fn cells(&self) -> Cells {
        Cells {
            vertex: self.orbits(&[1, 2]),
            edge: self.orbits(&[0, 2]),
            face: self.orbits(&[0, 1]),
            component: self.orbits(&[0, 1, 2]),
        }
    }

    pub fn euler_characteristic(&self) -> i64 {
        let c = self.cells();
        c.vertex.count as i64 - c.edge.count as i64 + c.face.count as i64
    }

    /// Boundary circles as cyclic sequences of boundary flags. The k-th
    /// flag sits at the k-th boundary vertex on the boundary edge leading to
    /// the next one.
    pub fn boundary_circles(&self) -> Vec<Vec<Flag>> {
        let n = self.flag_count();
        let mut used = vec![false; n];
        let mut circles = Vec::new();
        for start in 0..n {
            if !self.is_boundary_flag(start) || used[start] || used[self.a0(start)] {
                continue;
            }
            let mut circle = Vec::new();
            let mut f = start;
            loop {
                used[f] = true;
                circle.push(f);
                let g = self.a0(f);
                used[g] = true;
                let mut h = self.a1(g);
                while !self.is_boundary_flag(h) {
                    h = self.a1(self.a2(h));
                }
                if h == start {
                    break;
                }
                f = h;
            }
            circles.push(circle);
        }
        circles
    }

    /// Two-colours the flags so that every involution link joins different
    /// colours; returns `None` per component where that fails.
    fn orientation_classes(&self, comps: &Orbits) -> Vec<bool> {
        let n = self.flag_count();
        let mut colour = vec![u8::MAX; n];
        let mut ok = vec![true; comps.count];
        let mut queue = VecDeque::new();
        for start in 0..n {
            if colour[start] != u8::MAX {
                continue;
            }
            colour[start] = 0;
            queue.push_back(start);
            while let Some(f) = queue.pop_front() {
                for a in &self.alpha {
                    let g = a[f];
                    if g == f {
                        continue;
                    }
                    if colour[g] == u8::MAX {
                        colour[g] = 1 - colour[f];
                        queue.push_back(g);
                    } else if colour[g] == colour[f] {
                        ok[comps.label[f]] = false;
                    }
                }
            }
        }
        ok
    }

    pub fn is_orientable(&self) -> bool {
        let comps = self.orbits(&[0, 1, 2]);
        self.orientation_classes(&comps).into_iter().all(|b| b)
    }

    pub fn genus_report(&self) -> Vec<ComponentGenus> {
        let cells = self.cells();
        let comps = &cells.component;
        let mut chi = vec![0i64; comps.count];
        let mut seen_v = vec![false; cells.vertex.count];
        let mut seen_e = vec![false; cells.edge.count];
        let mut seen_f = vec![false; cells.face.count];
        for f in 0..self.flag_count() {
            let c = comps.label[f];
            if !std::mem::replace(&mut seen_v[cells.vertex.label[f]], true) {
                chi[c] += 1;
            }
            if !std::mem::replace(&mut seen_e[cells.edge.label[f]], true) {
                chi[c] -= 1;
            }
            if !std::mem::replace(&mut seen_f[cells.face.label[f]], true) {
                chi[c] += 1;
            }
        }
        let mut circles = vec![0usize; comps.count];
        for circle in self.boundary_circles() {
            circles[comps.label[circle[0]]] += 1;
        }
        let orientable = self.orientation_classes(comps);
        (0..comps.count)
            .map(|c| {
                let genus = orientable[c].then(|| (2 - circles[c] as i64 - chi[c]) / 2);
                ComponentGenus {
                    chi: chi[c],
                    boundary_circles: circles[c],
                    orientable: orientable[c],
                    genus,
                }
            })
            .collect()
    }

    pub fn component_count(&self) -> usize {
        self.orbits(&[0, 1, 2]).count
    }

    /// Sum of component genera; an error if some component is
    /// non-orientable.
    pub fn total_genus(&self) -> Result<i64, ComplexError> {
        self.genus_report()
            .iter()
            .enumerate()
            .map(|(i, g)| g.genus.ok_or(ComplexError::NonOrientable(i)))
            .sum()
    }

    pub(crate) fn with_alpha2(&self, a2: Vec<Flag>) -> Result<Self, ComplexError> {
        SurfaceMap::from_involutions(self.alpha[0].clone(), self.alpha[1].clone(), a2)
    }

    /// Disjoint union; flags of `other` are shifted by `self.flag_count()`.
    pub fn disjoint_union(&self, other: &SurfaceMap) -> SurfaceMap {
        let shift = self.flag_count();
        let alpha = std::array::from_fn(|k| {
            self.alpha[k]
                .iter()
                .copied()
                .chain(other.alpha[k].iter().map(|&g| g + shift))
                .collect()
        });
        SurfaceMap { alpha }
    }
}

/// Polygon-soup constructor. Faces are cycles of vertex labels; sides with
/// the same unordered pair of endpoints are glued, sides occurring once
/// are boundary.
#[derive(Debug, Clone)]
pub struct Mesh {
    pub map: SurfaceMap,
    vertex_of: Vec<usize>,
    side_flag: std::collections::HashMap<(usize, usize), Flag>,
}

impl Mesh {
    pub fn from_polygons(faces: &[Vec<usize>]) -> Result<Self, ComplexError> {
        use std::collections::HashMap;
        let total: usize = faces.iter().map(|f| 2 * f.len()).sum();
        let mut a0 = vec![0; total];
        let mut a1 = vec![0; total];
        let mut a2: Vec<Flag> = (0..total).collect();
        let mut vertex_of = vec![0; total];
        let mut sides: HashMap<(usize, usize), Vec<(Flag, Flag)>> = HashMap::new();
        let mut base = 0;
        for face in faces {
            let k = face.len();
            if k < 2 {
                return Err(ComplexError::Map("polygon with fewer than two sides".into()));
            }
            for j in 0..k {
                let (u, v) = (face[j], face[(j + 1) % k]);
                if u == v {
                    return Err(ComplexError::Map(format!("degenerate side at vertex {u}")));
                }
                let fu = base + 2 * j;
                let fv = fu + 1;
                a0[fu] = fv;
                a0[fv] = fu;
                let next = base + 2 * ((j + 1) % k);
                a1[fv] = next;
                a1[next] = fv;
                vertex_of[fu] = u;
                vertex_of[fv] = v;
                let key = (u.min(v), u.max(v));
                // store (flag at min endpoint, flag at max endpoint)
                let pair = if u < v { (fu, fv) } else { (fv, fu) };
                sides.entry(key).or_default().push(pair);
            }
            base += 2 * k;
        }
        let mut side_flag = HashMap::new();
        for (&(u, v), list) in &sides {
            match list.as_slice() {
                [(p, q)] => {
                    side_flag.insert((u, v), *p);
                    side_flag.insert((v, u), *q);
                }
                [(p, q), (r, s)] => {
                    a2[*p] = *r;
                    a2[*r] = *p;
                    a2[*q] = *s;
                    a2[*s] = *q;
                    side_flag.insert((u, v), *p);
                    side_flag.insert((v, u), *q);
                }
                _ => {
                    return Err(ComplexError::Map(format!(
                        "edge {{{u}, {v}}} is shared by more than two polygons"
                    )))
                }
            }
        }
        let map = SurfaceMap::from_involutions(a0, a1, a2)?;
        Ok(Mesh {
            map,
            vertex_of,
            side_flag,
        })
    }

    /// A flag at `u` on the edge `{u, v}`.
    pub fn flag(&self, u: usize, v: usize) -> Option<Flag> {
        self.side_flag.get(&(u, v)).copied()
    }

    /// Any flag at vertex `u`.
    pub fn flag_at(&self, u: usize) -> Option<Flag> {
        self.vertex_of.iter().position(|&x| x == u)
    }

    pub fn vertex_label(&self, f: Flag) -> usize {
        self.vertex_of[f]
    }

    /// Step flags of the walk through the vertices `path`; pass `closed`
    /// to add the closing edge back to the first vertex.
    pub fn walk(&self, path: &[usize], closed: bool) -> Result<Vec<Flag>, ComplexError> {
        let mut steps = Vec::new();
        let n = path.len();
        let edges = if closed { n } else { n.saturating_sub(1) };
        for i in 0..edges {
            let (u, v) = (path[i], path[(i + 1) % n]);
            steps.push(
                self.flag(u, v)
                    .ok_or_else(|| ComplexError::Map(format!("no edge between {u} and {v}")))?,
            );
        }
        Ok(steps)
    }
}
