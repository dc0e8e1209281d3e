//! Conversion between dart-based rotation systems and flag maps.
//!
//! Darts are (vertex, edge) incidences. `alpha` pairs the two darts of an
//! edge, `sigma` lists the darts around each vertex in cyclic order, and a
//! dart whose face (the orbit of `sigma ∘ alpha` through it) is a hole is
//! marked free. Edges listed in `twisted` are glued with a flip, which is
//! how non-orientable surfaces are written down.

use std::collections::{BTreeSet, VecDeque};

use super::surface::{Flag, SurfaceMap};
use super::ComplexError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrientedMap {
    pub darts: usize,
    pub alpha: Vec<[usize; 2]>,
    pub sigma: Vec<Vec<usize>>,
    pub free: Vec<usize>,
    pub twisted: Vec<usize>,
}

/// Where each dart went in the flag map: the surviving flags of its two
/// sides (a side on a hole is dropped).
#[derive(Debug, Clone)]
pub struct DartFlags(pub Vec<[Option<Flag>; 2]>);

impl DartFlags {
    pub fn any(&self, dart: usize) -> Option<Flag> {
        self.0.get(dart).and_then(|[a, b]| a.or(*b))
    }
}

impl OrientedMap {
    pub fn to_surface(&self) -> Result<(SurfaceMap, DartFlags), ComplexError> {
        let n = self.darts;
        let bad = |m: String| Err(ComplexError::Map(m));
        if n % 2 != 0 {
            return bad(format!("dart count {n} is odd"));
        }
        let mut partner = vec![usize::MAX; n];
        for &[a, b] in &self.alpha {
            if a >= n || b >= n || a == b {
                return bad(format!("alpha pair ({a}, {b}) is invalid"));
            }
            if partner[a] != usize::MAX || partner[b] != usize::MAX {
                return bad(format!("dart in alpha pair ({a}, {b}) is paired twice"));
            }
            partner[a] = b;
            partner[b] = a;
        }
        if let Some(d) = partner.iter().position(|&p| p == usize::MAX) {
            return bad(format!("dart {d} is not paired by alpha"));
        }
        let mut next = vec![usize::MAX; n];
        let mut prev = vec![usize::MAX; n];
        for cycle in &self.sigma {
            if cycle.is_empty() {
                return bad("empty sigma cycle".into());
            }
            for (i, &d) in cycle.iter().enumerate() {
                let e = cycle[(i + 1) % cycle.len()];
                if d >= n || e >= n || next[d] != usize::MAX {
                    return bad(format!("sigma is not a permutation at dart {d}"));
                }
                next[d] = e;
                prev[e] = d;
            }
        }
        if let Some(d) = next.iter().position(|&p| p == usize::MAX) {
            return bad(format!("dart {d} is missing from sigma"));
        }
        let twisted: BTreeSet<usize> = self.twisted.iter().copied().collect();
        if let Some(&d) = twisted.iter().find(|&&d| d >= n) {
            return bad(format!("twisted dart {d} out of range"));
        }
        let is_twisted = |d: usize| twisted.contains(&d) || twisted.contains(&partner[d]);

        let fl = |d: usize, s: usize| 2 * d + s;
        let total = 2 * n;
        let mut a0 = vec![0; total];
        let mut a1 = vec![0; total];
        let mut a2 = vec![0; total];
        for d in 0..n {
            let e = partner[d];
            if is_twisted(d) {
                a0[fl(d, 0)] = fl(e, 0);
                a0[fl(d, 1)] = fl(e, 1);
            } else {
                a0[fl(d, 0)] = fl(e, 1);
                a0[fl(d, 1)] = fl(e, 0);
            }
            a1[fl(d, 0)] = fl(next[d], 1);
            a1[fl(d, 1)] = fl(prev[d], 0);
            a2[fl(d, 0)] = fl(d, 1);
            a2[fl(d, 1)] = fl(d, 0);
        }
        let closed = SurfaceMap::from_involutions(a0, a1, a2)?;

        let free: BTreeSet<usize> = self.free.iter().copied().collect();
        if let Some(&d) = free.iter().find(|&&d| d >= n) {
            return bad(format!("free dart {d} out of range"));
        }
        let faces = closed.orbits(&[0, 1]);
        let mut hole = vec![false; faces.count];
        for &d in &free {
            hole[faces.label[fl(d, 1)]] = true;
        }
        for d in 0..n {
            if hole[faces.label[fl(d, 1)]] && !free.contains(&d) {
                return bad(format!("dart {d} borders a hole but is not marked free"));
            }
        }
        let keep: Vec<bool> = (0..total).map(|f| !hole[faces.label[f]]).collect();
        let mut new_id = vec![usize::MAX; total];
        let mut count = 0;
        for f in 0..total {
            if keep[f] {
                new_id[f] = count;
                count += 1;
            }
        }
        let remap = |k: usize, f: usize| -> Flag {
            let g = closed.alphas()[k][f];
            if keep[g] {
                new_id[g]
            } else {
                new_id[f]
            }
        };
        let mut b = [vec![0; count], vec![0; count], vec![0; count]];
        for f in (0..total).filter(|&f| keep[f]) {
            for (k, arr) in b.iter_mut().enumerate() {
                arr[new_id[f]] = remap(k, f);
            }
        }
        let [b0, b1, b2] = b;
        let map = SurfaceMap::from_involutions(b0, b1, b2)?;
        let mut table = Vec::with_capacity(n);
        for d in 0..n {
            let side = |s| keep[fl(d, s)].then(|| new_id[fl(d, s)]);
            let entry = [side(0), side(1)];
            if entry == [None, None] {
                return bad(format!("both sides of dart {d} are holes"));
            }
            table.push(entry);
        }
        Ok((map, DartFlags(table)))
    }

    /// Writes a flag map as darts. Holes are capped with free faces, each
    /// vertex gets a rotation, and edges that cannot be made consistent
    /// with the chosen rotations are marked twisted. Returns the dart of
    /// every original flag.
    pub fn from_surface(map: &SurfaceMap) -> (OrientedMap, Vec<usize>) {
        let n = map.flag_count();
        let mut a: [Vec<Flag>; 3] = map.alphas().clone();
        // cap every boundary circle with a polygon
        let mut cap_start = n;
        for circle in map.boundary_circles() {
            let m = circle.len();
            for arr in a.iter_mut() {
                arr.resize(cap_start + 2 * m, 0);
            }
            for (k, &f) in circle.iter().enumerate() {
                let c = cap_start + 2 * k;
                let c2 = c + 1;
                let g = map.a0(f);
                a[2][f] = c;
                a[2][c] = f;
                a[2][g] = c2;
                a[2][c2] = g;
                a[0][c] = c2;
                a[0][c2] = c;
                let next = cap_start + 2 * ((k + 1) % m);
                a[1][c2] = next;
                a[1][next] = c2;
            }
            cap_start += 2 * m;
        }
        let total = a[0].len();
        let is_cap = |f: Flag| f >= n;

        // side colouring
        let mut side = vec![u8::MAX; total];
        let mut queue = VecDeque::new();
        for start in 0..total {
            if side[start] != u8::MAX {
                continue;
            }
            queue.push_back((start, 0u8));
            while let Some((f, s)) = queue.pop_front() {
                if side[f] != u8::MAX {
                    continue;
                }
                // colour the whole vertex cycle alternately
                let mut g = f;
                let mut cur = s;
                let mut use_a1 = true;
                loop {
                    side[g] = cur;
                    let h = if use_a1 { a[1][g] } else { a[2][g] };
                    use_a1 = !use_a1;
                    cur = 1 - cur;
                    if h == f {
                        break;
                    }
                    g = h;
                }
                let mut g = f;
                let mut use_a1 = true;
                loop {
                    let across = a[0][g];
                    if side[across] == u8::MAX {
                        queue.push_back((across, 1 - side[g]));
                    }
                    g = if use_a1 { a[1][g] } else { a[2][g] };
                    use_a1 = !use_a1;
                    if g == f {
                        break;
                    }
                }
            }
        }

        let mut dart_of = vec![usize::MAX; total];
        let mut count = 0;
        for f in 0..total {
            if dart_of[f] == usize::MAX {
                dart_of[f] = count;
                dart_of[a[2][f]] = count;
                count += 1;
            }
        }
        let side0 = |d_flag: Flag| if side[d_flag] == 0 { d_flag } else { a[2][d_flag] };
        let mut first_flag = vec![usize::MAX; count];
        for f in 0..total {
            if side[f] == 0 {
                first_flag[dart_of[f]] = f;
            }
        }
        let mut alpha = Vec::new();
        let mut twisted = Vec::new();
        let mut free = Vec::new();
        let mut sigma = Vec::new();
        let mut placed = vec![false; count];
        for d in 0..count {
            let f0 = first_flag[d];
            let e = dart_of[a[0][f0]];
            if d < e {
                alpha.push([d, e]);
                if side[a[0][f0]] == 0 {
                    twisted.push(d);
                }
            }
            if is_cap(a[2][f0]) {
                free.push(d);
            }
            if !placed[d] {
                let mut cycle = Vec::new();
                let mut x = d;
                while !placed[x] {
                    placed[x] = true;
                    cycle.push(x);
                    x = dart_of[side0(a[1][first_flag[x]])];
                }
                sigma.push(cycle);
            }
        }
        let om = OrientedMap {
            darts: count,
            alpha,
            sigma,
            free,
            twisted,
        };
        (om, dart_of[..n].to_vec())
    }
}
