//! Square-grid surfaces, for tests, fixtures and examples.
//!
//! ```
//! use freeknot::complexes::build::{Grid, Shape};
//!
//! let torus = Grid::new(Shape::Torus, 3, 4, 0);
//! let mesh = torus.mesh().unwrap();
//! assert_eq!(mesh.map.euler_characteristic(), 0);
//! ```

use super::complex::{DoubleLine, LineEnd, LineId, LineKind, Walk};
use super::surface::Mesh;
use super::ComplexError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    /// A `rows × cols` square of cells.
    Disc,
    /// A disc grid with its boundary capped by one extra face.
    Sphere,
    /// A `rows × cols` grid with opposite sides identified.
    Torus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Grid {
    pub shape: Shape,
    pub rows: usize,
    pub cols: usize,
    /// Label of the first vertex; lets several grids share one mesh.
    pub base: usize,
}

impl Grid {
    pub fn new(shape: Shape, rows: usize, cols: usize, base: usize) -> Self {
        Grid { shape, rows, cols, base }
    }

    pub fn vertex_count(&self) -> usize {
        match self.shape {
            Shape::Torus => self.rows * self.cols,
            _ => (self.rows + 1) * (self.cols + 1),
        }
    }

    /// The first free vertex label after this grid.
    pub fn end(&self) -> usize {
        self.base + self.vertex_count()
    }

    pub fn vertex(&self, r: usize, c: usize) -> usize {
        match self.shape {
            Shape::Torus => self.base + (r % self.rows) * self.cols + (c % self.cols),
            _ => self.base + r * (self.cols + 1) + c,
        }
    }

    /// Lattice points of the grid as `(row, col)`.
    pub fn points(&self) -> Vec<(usize, usize)> {
        let (rs, cs) = match self.shape {
            Shape::Torus => (self.rows, self.cols),
            _ => (self.rows + 1, self.cols + 1),
        };
        (0..rs).flat_map(|r| (0..cs).map(move |c| (r, c))).collect()
    }

    pub fn faces(&self) -> Vec<Vec<usize>> {
        let mut faces = Vec::new();
        for r in 0..self.rows {
            for c in 0..self.cols {
                faces.push(vec![
                    self.vertex(r, c),
                    self.vertex(r, c + 1),
                    self.vertex(r + 1, c + 1),
                    self.vertex(r + 1, c),
                ]);
            }
        }
        if self.shape == Shape::Sphere {
            let mut cap = self.ring();
            cap.reverse();
            faces.push(cap);
        }
        faces
    }

    /// The outer ring of a disc or sphere grid, clockwise from the corner.
    pub fn ring(&self) -> Vec<usize> {
        self.rectangle(0, 0, self.rows, self.cols)
    }

    /// Boundary cycle of the `h × w` block of cells with top-left corner
    /// at `(r, c)`, as a list of `2(h + w)` vertices.
    pub fn rectangle(&self, r: usize, c: usize, h: usize, w: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(2 * (h + w));
        out.extend((0..w).map(|k| self.vertex(r, c + k)));
        out.extend((0..h).map(|k| self.vertex(r + k, c + w)));
        out.extend((0..w).map(|k| self.vertex(r + h, c + w - k)));
        out.extend((0..h).map(|k| self.vertex(r + h - k, c)));
        out
    }

    /// The horizontal loop of a torus at row `r`.
    pub fn row_loop(&self, r: usize) -> Vec<usize> {
        (0..self.cols).map(|c| self.vertex(r, c)).collect()
    }

    pub fn mesh(&self) -> Result<Mesh, ComplexError> {
        Mesh::from_polygons(&self.faces())
    }
}

/// One mesh holding all grids; their vertex labels must not overlap.
pub fn mesh_of(grids: &[Grid]) -> Result<Mesh, ComplexError> {
    let faces: Vec<Vec<usize>> = grids.iter().flat_map(|g| g.faces()).collect();
    Mesh::from_polygons(&faces)
}

/// A cyclic line whose preimage is the two closed vertex paths. Position
/// `i` of the first is identified with `ident[i]` of the second.
pub fn cyclic_line(mesh: &Mesh, id: LineId, first: &[usize], second: &[usize], ident: Vec<usize>) -> Result<DoubleLine, ComplexError> {
    Ok(DoubleLine {
        id,
        kind: LineKind::Cyclic,
        walks: vec![
            Walk::new(mesh.walk(first, true)?, true),
            Walk::new(mesh.walk(second, true)?, true),
        ],
        ident,
        ends: Vec::new(),
    })
}

/// A cusp-to-cusp line on a closed path of even length, folded so that
/// position `i` meets position `offset - i`. The cusps sit at positions
/// `offset / 2` and `offset / 2 + len / 2`.
pub fn cusp_line(mesh: &Mesh, id: LineId, path: &[usize], offset: usize, cusps: [u32; 2]) -> Result<DoubleLine, ComplexError> {
    let len = path.len();
    Ok(DoubleLine {
        id,
        kind: LineKind::CuspCusp,
        walks: vec![Walk::new(mesh.walk(path, true)?, true)],
        ident: (0..len).map(|i| (offset + len - i % len) % len).collect(),
        ends: vec![LineEnd::Cusp(cusps[0]), LineEnd::Cusp(cusps[1])],
    })
}

/// Rotation `i ↦ i + shift` or reflection `i ↦ shift - i` on `len` points.
pub fn alignment(len: usize, shift: usize, reflect: bool) -> Vec<usize> {
    (0..len)
        .map(|i| if reflect { (shift + len - i) % len } else { (shift + i) % len })
        .collect()
}
