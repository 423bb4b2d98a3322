//! The approximant complexes K_n and the forgetful maps between them.
//!
//! K_n has one top cell per depth-n collared tile. Boundary slots of the
//! tiles (endpoints in 1D, edges and corners in 2D) are glued whenever two
//! tiles can sit next to each other; the glued classes are the lower cells.
//! For a discrete symmetry group K_n is just one point per collared tile.

use std::fmt::Write as _;

use thiserror::Error;

use crate::algebra::IntMatrix;
use crate::collaring::{adjacency, collar, AdjacencyRelation, CollarSet, CollaringError, Direction};
use crate::model::{Dimension, Symmetry, TilingDefinition};

/// Boundary positions of a unit interval or unit square.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Slot {
    Tail,
    Head,
    West,
    East,
    South,
    North,
    SouthWest,
    SouthEast,
    NorthWest,
    NorthEast,
}

impl Slot {
    const ENDPOINTS: [Slot; 2] = [Slot::Tail, Slot::Head];
    const EDGES: [Slot; 4] = [Slot::West, Slot::East, Slot::South, Slot::North];
    const CORNERS: [Slot; 4] = [Slot::SouthWest, Slot::SouthEast, Slot::NorthWest, Slot::NorthEast];

    /// Position within its dimension's slot list.
    fn ordinal(self) -> usize {
        match self {
            Slot::Tail | Slot::West | Slot::SouthWest => 0,
            Slot::Head | Slot::East | Slot::SouthEast => 1,
            Slot::South | Slot::NorthWest => 2,
            Slot::North | Slot::NorthEast => 3,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Slot::Tail => "tail",
            Slot::Head => "head",
            Slot::West => "west",
            Slot::East => "east",
            Slot::South => "south",
            Slot::North => "north",
            Slot::SouthWest => "southwest",
            Slot::SouthEast => "southeast",
            Slot::NorthWest => "northwest",
            Slot::NorthEast => "northeast",
        }
    }
}

/// Where a cell came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CellOrigin {
    /// A top cell (or a point, for discrete symmetry): the collared tile id.
    Tile(usize),
    /// A glued face class, named by its first slot in canonical order.
    Face { tile: usize, slot: Slot },
}

/// A finite regular CW complex with integer boundary matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CwComplex {
    cells: Vec<Vec<CellOrigin>>,
    /// `boundaries[k - 1]` is ∂_k: rows are (k-1)-cells, columns k-cells.
    boundaries: Vec<IntMatrix>,
    /// `faces[k - 1][c]` lists the (k-1)-cells on the boundary of k-cell c.
    /// For 1-cells this is `[tail, head]`.
    faces: Vec<Vec<Vec<usize>>>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ComplexError {
    #[error("boundary of boundary is nonzero in degree {0}")]
    BoundarySquare(usize),
    #[error("boundary matrix for degree {0} has the wrong shape")]
    Shape(usize),
    #[error("{dim}-cell {cell} is not on the boundary of any top cell")]
    Dangling { dim: usize, cell: usize },
}

impl CwComplex {
    pub fn new(
        cells: Vec<Vec<CellOrigin>>,
        boundaries: Vec<IntMatrix>,
        faces: Vec<Vec<Vec<usize>>>,
    ) -> Result<Self, ComplexError> {
        let k = CwComplex { cells, boundaries, faces };
        k.check()?;
        Ok(k)
    }

    pub fn dimension(&self) -> usize {
        self.cells.len() - 1
    }

    pub fn cell_counts(&self) -> Vec<usize> {
        self.cells.iter().map(Vec::len).collect()
    }

    pub fn cells(&self, dim: usize) -> &[CellOrigin] {
        &self.cells[dim]
    }

    /// ∂_k for `1 <= k <= dimension`.
    pub fn boundary(&self, k: usize) -> &IntMatrix {
        &self.boundaries[k - 1]
    }

    /// Faces of k-cell `cell`, `1 <= k <= dimension`.
    pub fn faces(&self, k: usize, cell: usize) -> &[usize] {
        &self.faces[k - 1][cell]
    }

    /// Tail and head of a 1-cell.
    pub fn edge_ends(&self, edge: usize) -> (usize, usize) {
        let f = &self.faces[0][edge];
        (f[0], f[1])
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.cells
            .iter()
            .enumerate()
            .map(|(k, c)| if k % 2 == 0 { c.len() as i64 } else { -(c.len() as i64) })
            .sum()
    }

    /// Checks shapes, ∂∂ = 0 and that every lower cell is a face of something.
    pub fn check(&self) -> Result<(), ComplexError> {
        if self.boundaries.len() + 1 != self.cells.len() || self.faces.len() != self.boundaries.len() {
            return Err(ComplexError::Shape(self.boundaries.len()));
        }
        for k in 1..=self.dimension() {
            let b = self.boundary(k);
            if b.rows() != self.cells[k - 1].len()
                || b.cols() != self.cells[k].len()
                || self.faces[k - 1].len() != self.cells[k].len()
                || self.faces[k - 1].iter().flatten().any(|&f| f >= b.rows())
            {
                return Err(ComplexError::Shape(k));
            }
        }
        for k in 2..=self.dimension() {
            if !(self.boundary(k - 1) * self.boundary(k)).is_zero() {
                return Err(ComplexError::BoundarySquare(k));
            }
        }
        // Faces of faces of top cells are faces too, so walk down from the top.
        for k in (1..=self.dimension()).rev() {
            let mut hit = vec![false; self.cells[k - 1].len()];
            self.faces[k - 1].iter().flatten().for_each(|&f| hit[f] = true);
            if let Some(cell) = hit.iter().position(|h| !h) {
                return Err(ComplexError::Dangling { dim: k - 1, cell });
            }
        }
        Ok(())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ApproximantError {
    #[error(transparent)]
    Collaring(#[from] CollaringError),
    #[error("no collared tiles at depth {0}")]
    Empty(usize),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("forgetful map requires depth >= 1")]
    DepthZero,
    #[error("complexes are not consecutive levels of the same definition")]
    Mismatch,
    #[error("face classes at depth {0} do not descend to the coarser level")]
    IllDefined(usize),
}

/// One level of the tower: the collared tiles, their adjacencies and K_n.
#[derive(Clone, Debug)]
pub struct Approximant {
    definition: TilingDefinition,
    collars: CollarSet,
    adjacency: Vec<AdjacencyRelation>,
    complex: CwComplex,
    /// For each dimension below the top: cell index of every slot
    /// `tile * slots_per_tile + ordinal`.
    slot_cells: Vec<Vec<usize>>,
}

impl Approximant {
    pub fn depth(&self) -> usize {
        self.collars.depth()
    }

    pub fn definition(&self) -> &TilingDefinition {
        &self.definition
    }

    pub fn collars(&self) -> &CollarSet {
        &self.collars
    }

    pub fn adjacency(&self) -> &[AdjacencyRelation] {
        &self.adjacency
    }

    pub fn complex(&self) -> &CwComplex {
        &self.complex
    }

    pub fn symmetry(&self) -> Symmetry {
        self.definition.symmetry
    }
}

/// Minimal union-find; roots are the smallest member so that class
/// representatives come out in canonical slot order.
struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(len: usize) -> Self {
        UnionFind {
            parent: (0..len).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }

    /// Dense class index per element, classes numbered by smallest member.
    fn classes(&mut self) -> (Vec<usize>, Vec<usize>) {
        let n = self.parent.len();
        let mut index = vec![usize::MAX; n];
        let mut reps = Vec::new();
        let mut out = vec![0; n];
        for x in 0..n {
            let r = self.find(x);
            if index[r] == usize::MAX {
                index[r] = reps.len();
                reps.push(r);
            }
            out[x] = index[r];
        }
        (out, reps)
    }
}

/// Slots of one dimension glued by an adjacency in `direction`:
/// (slot on the `from` tile, slot on the `to` tile).
fn glued_slots(dimension: Dimension, direction: Direction, slot_dim: usize) -> &'static [(Slot, Slot)] {
    use Slot::*;
    match (dimension, direction, slot_dim) {
        (Dimension::One, _, 0) => &[(Head, Tail)],
        (Dimension::Two, Direction::East, 1) => &[(East, West)],
        (Dimension::Two, Direction::East, 0) => &[(SouthEast, SouthWest), (NorthEast, NorthWest)],
        (Dimension::Two, Direction::North, 1) => &[(North, South)],
        (Dimension::Two, Direction::North, 0) => &[(NorthWest, SouthWest), (NorthEast, SouthEast)],
        _ => &[],
    }
}

fn slots_of(dimension: Dimension, slot_dim: usize) -> &'static [Slot] {
    match (dimension, slot_dim) {
        (Dimension::One, _) => &Slot::ENDPOINTS,
        (Dimension::Two, 1) => &Slot::EDGES,
        _ => &Slot::CORNERS,
    }
}

/// Tail and head corners of an edge, oriented by increasing coordinate.
fn edge_ends(edge: Slot) -> (Slot, Slot) {
    match edge {
        Slot::West => (Slot::SouthWest, Slot::NorthWest),
        Slot::East => (Slot::SouthEast, Slot::NorthEast),
        Slot::South => (Slot::SouthWest, Slot::SouthEast),
        Slot::North => (Slot::NorthWest, Slot::NorthEast),
        _ => unreachable!("not an edge"),
    }
}

/// Counterclockwise boundary of a square: south and east along their
/// orientation, north and west against it.
const SQUARE_BOUNDARY: [(Slot, i32); 4] = [
    (Slot::South, 1),
    (Slot::East, 1),
    (Slot::North, -1),
    (Slot::West, -1),
];

/// Builds K_n for the given definition and collar depth.
pub fn build_approximant(def: &TilingDefinition, depth: usize) -> Result<Approximant, ApproximantError> {
    let collars = collar(def, depth)?;
    if collars.is_empty() {
        return Err(ApproximantError::Empty(depth));
    }
    let tiles = collars.len();

    if def.symmetry == Symmetry::Discrete {
        let points = (0..tiles).map(CellOrigin::Tile).collect();
        let complex = CwComplex::new(vec![points], Vec::new(), Vec::new())?;
        return Ok(Approximant {
            definition: def.clone(),
            collars,
            adjacency: Vec::new(),
            complex,
            slot_cells: Vec::new(),
        });
    }

    let adjacency = adjacency(def, &collars)?;
    let top = def.dimension.as_usize();

    let mut cells: Vec<Vec<CellOrigin>> = vec![Vec::new(); top + 1];
    let mut slot_cells = Vec::with_capacity(top);
    for slot_dim in 0..top {
        let slots = slots_of(def.dimension, slot_dim);
        let per = slots.len();
        let mut uf = UnionFind::new(tiles * per);
        for rel in &adjacency {
            for &(a, b) in &rel.pairs {
                for &(sa, sb) in glued_slots(def.dimension, rel.direction, slot_dim) {
                    uf.union(a * per + sa.ordinal(), b * per + sb.ordinal());
                }
            }
        }
        let (class_of, reps) = uf.classes();
        cells[slot_dim] = reps
            .iter()
            .map(|&r| CellOrigin::Face {
                tile: r / per,
                slot: slots[r % per],
            })
            .collect();
        slot_cells.push(class_of);
    }
    cells[top] = (0..tiles).map(CellOrigin::Tile).collect();

    let mut faces: Vec<Vec<Vec<usize>>> = Vec::with_capacity(top);
    match def.dimension {
        Dimension::One => {
            faces.push(
                (0..tiles)
                    .map(|t| vec![slot_cells[0][t * 2 + Slot::Tail.ordinal()], slot_cells[0][t * 2 + Slot::Head.ordinal()]])
                    .collect(),
            );
        }
        Dimension::Two => {
            faces.push(
                cells[1]
                    .iter()
                    .map(|origin| {
                        let CellOrigin::Face { tile, slot } = *origin else { unreachable!() };
                        let (tail, head) = edge_ends(slot);
                        vec![slot_cells[0][tile * 4 + tail.ordinal()], slot_cells[0][tile * 4 + head.ordinal()]]
                    })
                    .collect(),
            );
            faces.push(
                (0..tiles)
                    .map(|t| SQUARE_BOUNDARY.iter().map(|(slot, _)| slot_cells[1][t * 4 + slot.ordinal()]).collect())
                    .collect(),
            );
        }
    }

    let mut boundaries = Vec::with_capacity(top);
    let mut d1 = IntMatrix::zeros(cells[0].len(), cells[1].len());
    for (e, ends) in faces[0].iter().enumerate() {
        d1[(ends[1], e)] += 1;
        d1[(ends[0], e)] -= 1;
    }
    boundaries.push(d1);
    if top == 2 {
        let mut d2 = IntMatrix::zeros(cells[1].len(), tiles);
        for (t, edges) in faces[1].iter().enumerate() {
            for (&e, (_, sign)) in edges.iter().zip(SQUARE_BOUNDARY) {
                d2[(e, t)] += sign;
            }
        }
        boundaries.push(d2);
    }
    let complex = CwComplex::new(cells, boundaries, faces)?;
    Ok(Approximant {
        definition: def.clone(),
        collars,
        adjacency,
        complex,
        slot_cells,
    })
}

/// A cellular map sending each cell to a single cell with sign +1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellularMap {
    pub source_depth: usize,
    pub target_depth: usize,
    source_counts: Vec<usize>,
    target_counts: Vec<usize>,
    /// `assignment[k][i]` is the target k-cell of source k-cell i.
    assignment: Vec<Vec<usize>>,
}

impl CellularMap {
    pub fn identity(k: &CwComplex, depth: usize) -> Self {
        let counts = k.cell_counts();
        CellularMap {
            source_depth: depth,
            target_depth: depth,
            assignment: counts.iter().map(|&n| (0..n).collect()).collect(),
            source_counts: counts.clone(),
            target_counts: counts,
        }
    }

    pub fn assignment(&self, dim: usize) -> &[usize] {
        &self.assignment[dim]
    }

    pub fn dimension(&self) -> usize {
        self.assignment.len() - 1
    }

    /// The chain map in degree `dim`: rows are target cells, columns source cells.
    pub fn chain_matrix(&self, dim: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.target_counts[dim], self.source_counts[dim]);
        for (src, &tgt) in self.assignment[dim].iter().enumerate() {
            m[(tgt, src)] += 1;
        }
        m
    }

    /// `other ∘ self`: first apply `self`, then `other`.
    pub fn then(&self, other: &CellularMap) -> Option<CellularMap> {
        if self.target_counts != other.source_counts {
            return None;
        }
        let assignment = self
            .assignment
            .iter()
            .zip(&other.assignment)
            .map(|(f, g)| f.iter().map(|&c| g[c]).collect())
            .collect();
        Some(CellularMap {
            source_depth: self.source_depth,
            target_depth: other.target_depth,
            source_counts: self.source_counts.clone(),
            target_counts: other.target_counts.clone(),
            assignment,
        })
    }

    pub fn is_surjective(&self) -> bool {
        self.assignment.iter().zip(&self.target_counts).all(|(a, &n)| {
            let mut hit = vec![false; n];
            a.iter().for_each(|&c| hit[c] = true);
            hit.into_iter().all(|h| h)
        })
    }

    /// ∂ σ_# = σ_# ∂ in every degree.
    pub fn commutes_with_boundaries(&self, source: &CwComplex, target: &CwComplex) -> bool {
        (1..=self.dimension()).all(|k| {
            &self.chain_matrix(k - 1) * source.boundary(k) == target.boundary(k) * &self.chain_matrix(k)
        })
    }
}

/// σ_n: K_n -> K_{n-1}, forgetting the outermost corona of every tile.
pub fn forgetful_map(upper: &Approximant, lower: &Approximant) -> Result<CellularMap, ApproximantError> {
    if upper.depth() == 0 {
        return Err(ApproximantError::DepthZero);
    }
    if upper.depth() != lower.depth() + 1 || upper.definition != lower.definition {
        return Err(ApproximantError::Mismatch);
    }
    let tiles = upper.collars.len();
    let mut tile_image = Vec::with_capacity(tiles);
    for t in upper.collars.tiles() {
        tile_image.push(upper.collars.forget(t, &lower.collars)?.id());
    }

    let src = &upper.complex;
    let dim = src.dimension();
    let mut assignment = vec![Vec::new(); dim + 1];
    assignment[dim] = tile_image.clone();
    for slot_dim in 0..dim {
        let per = slots_of(upper.definition.dimension, slot_dim).len();
        let mut image = vec![usize::MAX; src.cells[slot_dim].len()];
        for (slot, &cell) in upper.slot_cells[slot_dim].iter().enumerate() {
            let target = lower.slot_cells[slot_dim][tile_image[slot / per] * per + slot % per];
            if image[cell] == usize::MAX {
                image[cell] = target;
            } else if image[cell] != target {
                return Err(ApproximantError::IllDefined(upper.depth()));
            }
        }
        assignment[slot_dim] = image;
    }
    Ok(CellularMap {
        source_depth: upper.depth(),
        target_depth: lower.depth(),
        source_counts: src.cell_counts(),
        target_counts: lower.complex.cell_counts(),
        assignment,
    })
}

/// Builds K_n and K_{n-1} and the forgetful map between them.
pub fn forgetful_map_at(def: &TilingDefinition, depth: usize) -> Result<CellularMap, ApproximantError> {
    if depth == 0 {
        return Err(ApproximantError::DepthZero);
    }
    let upper = build_approximant(def, depth)?;
    let lower = build_approximant(def, depth - 1)?;
    forgetful_map(&upper, &lower)
}

/// The 1-skeleton as a DOT digraph: vertices are 0-cells, arcs are 1-cells
/// from tail to head. A 0-dimensional complex yields isolated nodes.
pub fn export_dot(k: &CwComplex) -> String {
    let mut out = String::from("digraph K {\n");
    for v in 0..k.cells(0).len() {
        let _ = writeln!(out, "  v{v};");
    }
    if k.dimension() >= 1 {
        for e in 0..k.cells(1).len() {
            let (t, h) = k.edge_ends(e);
            let _ = writeln!(out, "  v{t} -> v{h} [label=\"e{e}\"];");
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::parse_definition;

    fn def(dimension: u8, generator: &str) -> TilingDefinition {
        let alphabet = if generator.contains("\"b\"") { r#"["a", "b"]"# } else { r#"["a"]"# };
        parse_definition(&format!(
            r#"{{"name": "t", "dimension": {dimension}, "alphabet": {alphabet},
                "generator": {generator}, "symmetry": "continuous"}}"#
        ))
        .unwrap()
    }

    fn fibonacci() -> TilingDefinition {
        def(1, r#"{"type": "substitution_1d", "rules": {"a": ["a", "b"], "b": ["a"]}}"#)
    }

    #[test]
    fn periodic_line_is_a_circle() {
        let d = def(1, r#"{"type": "periodic", "pattern": ["a"]}"#);
        for n in 0..4 {
            let k = build_approximant(&d, n).unwrap();
            assert_eq!(k.complex().cell_counts(), [1, 1]);
            assert!(k.complex().boundary(1).is_zero());
        }
        let f = forgetful_map_at(&d, 2).unwrap();
        assert_eq!(f.assignment(0), [0]);
        assert_eq!(f.assignment(1), [0]);
    }

    #[test]
    fn periodic_square_is_a_torus() {
        let d = def(2, r#"{"type": "periodic", "pattern": [["a"]]}"#);
        let k = build_approximant(&d, 1).unwrap();
        let c = k.complex();
        assert_eq!(c.cell_counts(), [1, 2, 1]);
        assert!(c.boundary(1).is_zero());
        assert!(c.boundary(2).is_zero());
        assert_eq!(c.euler_characteristic(), 0);
    }

    #[test]
    fn fibonacci_graphs() {
        let d = fibonacci();
        let k0 = build_approximant(&d, 0).unwrap();
        assert_eq!(k0.complex().cell_counts(), [1, 2]);
        let k1 = build_approximant(&d, 1).unwrap();
        assert_eq!(k1.complex().cell_counts(), [3, 4]);
        assert_eq!(k1.complex().euler_characteristic(), -1);
        let dot = export_dot(k1.complex());
        assert_eq!(dot.matches(" -> ").count(), 4);
        assert_eq!(dot.lines().filter(|l| l.ends_with(';') && !l.contains("->")).count(), 3);
    }

    #[test]
    fn fibonacci_forgets_to_center_labels() {
        let d = fibonacci();
        let f = forgetful_map_at(&d, 1).unwrap();
        let to_a = f.assignment(1).iter().filter(|&&e| e == 0).count();
        let to_b = f.assignment(1).iter().filter(|&&e| e == 1).count();
        assert_eq!((to_a, to_b), (3, 1));
        assert!(f.is_surjective());
    }

    #[test]
    fn forgetful_maps_are_chain_maps_and_compose() {
        let d = def(
            2,
            r#"{"type": "block_substitution_2d", "rules": {"a": [["a","b"],["b","a"]], "b": [["b","a"],["a","b"]]}}"#,
        );
        let k: Vec<_> = (0..3).map(|n| build_approximant(&d, n).unwrap()).collect();
        let f2 = forgetful_map(&k[2], &k[1]).unwrap();
        let f1 = forgetful_map(&k[1], &k[0]).unwrap();
        assert!(f2.commutes_with_boundaries(k[2].complex(), k[1].complex()));
        assert!(f1.commutes_with_boundaries(k[1].complex(), k[0].complex()));
        let both = f2.then(&f1).unwrap();
        for dim in 0..=2 {
            assert_eq!(both.chain_matrix(dim), &f1.chain_matrix(dim) * &f2.chain_matrix(dim));
        }
        assert!(both.is_surjective());
    }

    #[test]
    fn discrete_symmetry_gives_points() {
        let text = r#"{"name": "t", "dimension": 1, "alphabet": ["a", "b"],
            "generator": {"type": "substitution_1d", "rules": {"a": ["a", "b"], "b": ["a"]}},
            "symmetry": "discrete"}"#;
        let d = parse_definition(text).unwrap();
        let k = build_approximant(&d, 2).unwrap();
        assert_eq!(k.complex().dimension(), 0);
        assert_eq!(k.complex().cell_counts(), [6]);
        let f = forgetful_map_at(&d, 2).unwrap();
        assert_eq!(f.dimension(), 0);
        assert!(f.is_surjective());
    }

    #[test]
    fn forgetful_map_rejects_bad_levels() {
        let d = fibonacci();
        assert_eq!(forgetful_map_at(&d, 0), Err(ApproximantError::DepthZero));
        let k1 = build_approximant(&d, 1).unwrap();
        let k3 = build_approximant(&d, 3).unwrap();
        assert_eq!(forgetful_map(&k3, &k1), Err(ApproximantError::Mismatch));
    }

    #[test]
    fn complex_check_catches_nonzero_square() {
        // Two vertices, one edge, one "square" whose boundary is the edge once.
        let cells = vec![
            vec![CellOrigin::Tile(0), CellOrigin::Tile(1)],
            vec![CellOrigin::Tile(0)],
            vec![CellOrigin::Tile(0)],
        ];
        let d1 = IntMatrix::from_rows(&[vec![-1], vec![1]]);
        let d2 = IntMatrix::from_rows(&[vec![1]]);
        let faces = vec![vec![vec![0, 1]], vec![vec![0]]];
        assert_eq!(
            CwComplex::new(cells, vec![d1, d2], faces),
            Err(ComplexError::BoundarySquare(2))
        );
    }
}
