//! Finite rectangular label arrays.
//!
//! A [`Pattern`] is a patch of a tiling by unit intervals or unit squares.
//! One-dimensional patterns are stored as a single row. Rows are indexed
//! from the top, so row 0 is the northernmost row of the patch.

use std::fmt;

/// Index of a prototile label in the alphabet's declared order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(pub u16);

impl Symbol {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Width and height of a rectangular window. 1D windows have height 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Shape {
    pub width: usize,
    pub height: usize,
}

impl Shape {
    pub fn new(width: usize, height: usize) -> Self {
        Shape { width, height }
    }

    pub fn line(len: usize) -> Self {
        Shape::new(len, 1)
    }

    pub fn square(side: usize) -> Self {
        Shape::new(side, side)
    }

    pub fn area(self) -> usize {
        self.width * self.height
    }

    pub fn is_empty(self) -> bool {
        self.width == 0 || self.height == 0
    }

    /// True when a window of this shape fits inside `outer`.
    pub fn fits_in(self, outer: Shape) -> bool {
        self.width <= outer.width && self.height <= outer.height
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.height == 1 {
            write!(f, "{}", self.width)
        } else {
            write!(f, "{}x{}", self.width, self.height)
        }
    }
}

/// A fully populated rectangular array of symbols, row-major.
///
/// Ordering compares shapes first and then the row-major symbol sequence,
/// which for equal shapes is the canonical lexicographic pattern order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pattern {
    shape: Shape,
    cells: Vec<Symbol>,
}

impl Pattern {
    /// Returns `None` if the shape is empty or the cell count does not match.
    pub fn new(shape: Shape, cells: Vec<Symbol>) -> Option<Self> {
        if shape.is_empty() || shape.area() != cells.len() {
            return None;
        }
        Some(Pattern { shape, cells })
    }

    pub fn from_word(word: Vec<Symbol>) -> Option<Self> {
        Pattern::new(Shape::line(word.len()), word)
    }

    /// Builds a pattern from rows listed top to bottom; rejects ragged input.
    pub fn from_rows(rows: Vec<Vec<Symbol>>) -> Option<Self> {
        let height = rows.len();
        let width = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != width) {
            return None;
        }
        Pattern::new(Shape::new(width, height), rows.into_iter().flatten().collect())
    }

    pub fn single(symbol: Symbol) -> Self {
        Pattern {
            shape: Shape::new(1, 1),
            cells: vec![symbol],
        }
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn width(&self) -> usize {
        self.shape.width
    }

    pub fn height(&self) -> usize {
        self.shape.height
    }

    pub fn cells(&self) -> &[Symbol] {
        &self.cells
    }

    pub fn get(&self, row: usize, col: usize) -> Symbol {
        self.cells[row * self.shape.width + col]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Symbol]> {
        self.cells.chunks(self.shape.width)
    }

    /// The central cell of an odd-sided pattern.
    pub fn center(&self) -> Symbol {
        self.get(self.shape.height / 2, self.shape.width / 2)
    }

    /// Sub-window with top-left corner at (`row`, `col`).
    pub fn window(&self, row: usize, col: usize, shape: Shape) -> Pattern {
        debug_assert!(row + shape.height <= self.height() && col + shape.width <= self.width());
        let mut cells = Vec::with_capacity(shape.area());
        for r in row..row + shape.height {
            let start = r * self.shape.width + col;
            cells.extend_from_slice(&self.cells[start..start + shape.width]);
        }
        Pattern { shape, cells }
    }

    /// All sub-windows of the given shape, in row-major order of their
    /// top-left corners. Empty if the shape does not fit.
    pub fn windows(&self, shape: Shape) -> impl Iterator<Item = Pattern> + '_ {
        let rows = (self.height() + 1).saturating_sub(shape.height);
        let cols = (self.width() + 1).saturating_sub(shape.width);
        let valid = !shape.is_empty() && shape.fits_in(self.shape);
        let (rows, cols) = if valid { (rows, cols) } else { (0, 0) };
        (0..rows).flat_map(move |r| (0..cols).map(move |c| self.window(r, c, shape)))
    }

    /// All windows of the doubly periodic extension of this pattern, one per
    /// starting cell of the fundamental domain.
    pub fn cyclic_windows(&self, shape: Shape) -> impl Iterator<Item = Pattern> + '_ {
        let (h, w) = (self.height(), self.width());
        (0..h).flat_map(move |r| {
            (0..w).map(move |c| {
                let mut cells = Vec::with_capacity(shape.area());
                for dr in 0..shape.height {
                    for dc in 0..shape.width {
                        cells.push(self.get((r + dr) % h, (c + dc) % w));
                    }
                }
                Pattern { shape, cells }
            })
        })
    }

    /// Concatenates 1D patterns left to right.
    pub fn concat<'a>(parts: impl IntoIterator<Item = &'a Pattern>) -> Option<Pattern> {
        let mut cells = Vec::new();
        for p in parts {
            if p.height() != 1 {
                return None;
            }
            cells.extend_from_slice(&p.cells);
        }
        Pattern::from_word(cells)
    }
}
