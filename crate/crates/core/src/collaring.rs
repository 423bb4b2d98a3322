//! n-collared tiles and their admissible adjacencies.
//!
//! A depth-n collared tile is a tile together with every tile within n
//! coronas of it, where tiles touching at a single point count as
//! neighbours. For unit intervals and unit squares this is exactly the
//! centered window of side 2n+1.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::language::{factor_language, LanguageError};
use crate::model::{Dimension, TilingDefinition};
use crate::pattern::{Pattern, Shape, Symbol};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CollaredTile {
    depth: usize,
    id: usize,
    collar: Pattern,
}

impl CollaredTile {
    pub fn depth(&self) -> usize {
        self.depth
    }

    /// Rank of the collar in canonical pattern order among tiles of this depth.
    pub fn id(&self) -> usize {
        self.id
    }

    pub fn collar(&self) -> &Pattern {
        &self.collar
    }

    pub fn center(&self) -> Symbol {
        self.collar.center()
    }

    /// The collar with its outermost corona removed.
    pub fn forget_collar(&self) -> Result<Pattern, CollaringError> {
        if self.depth == 0 {
            return Err(CollaringError::ForgetDepthZero);
        }
        let shape = self.collar.shape();
        let inner = Shape::new(
            shape.width.saturating_sub(2).max(1),
            shape.height.saturating_sub(2).max(1),
        );
        let row = (shape.height - inner.height) / 2;
        let col = (shape.width - inner.width) / 2;
        Ok(self.collar.window(row, col, inner))
    }
}

/// Axis direction of an adjacency. West and south are the mirror images.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Direction {
    East,
    North,
}

impl Direction {
    pub fn as_str(self) -> &'static str {
        match self {
            Direction::East => "east",
            Direction::North => "north",
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// All depth-n collared tiles, sorted by canonical id.
#[derive(Clone, Debug)]
pub struct CollarSet {
    depth: usize,
    dimension: Dimension,
    tiles: Vec<CollaredTile>,
    index: HashMap<Pattern, usize>,
}

impl CollarSet {
    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn dimension(&self) -> Dimension {
        self.dimension
    }

    pub fn tiles(&self) -> &[CollaredTile] {
        &self.tiles
    }

    pub fn len(&self) -> usize {
        self.tiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tiles.is_empty()
    }

    pub fn get(&self, id: usize) -> &CollaredTile {
        &self.tiles[id]
    }

    pub fn find(&self, collar: &Pattern) -> Option<&CollaredTile> {
        self.index.get(collar).map(|&i| &self.tiles[i])
    }

    /// The depth-(n-1) class of `tile`, looked up in `coarser`.
    pub fn forget<'a>(
        &self,
        tile: &CollaredTile,
        coarser: &'a CollarSet,
    ) -> Result<&'a CollaredTile, CollaringError> {
        if coarser.depth + 1 != tile.depth {
            return Err(CollaringError::DepthMismatch {
                expected: tile.depth.saturating_sub(1),
                found: coarser.depth,
            });
        }
        let inner = tile.forget_collar()?;
        coarser
            .find(&inner)
            .ok_or(CollaringError::Inconsistent { depth: coarser.depth })
    }
}

/// Ordered pairs (from, to) of tile ids such that `to` may sit immediately
/// in `direction` of `from`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjacencyRelation {
    pub depth: usize,
    pub direction: Direction,
    pub pairs: Vec<(usize, usize)>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CollaringError {
    #[error(transparent)]
    Language(#[from] LanguageError),
    #[error("cannot forget a corona of a depth-0 tile")]
    ForgetDepthZero,
    #[error("expected depth {expected} tiles, found depth {found}")]
    DepthMismatch { expected: usize, found: usize },
    #[error("collared tile {tile} at depth {depth} has no {side} neighbour; the language does not extend")]
    NotExtendable {
        depth: usize,
        tile: usize,
        side: &'static str,
    },
    #[error("admissible windows at depth {depth} are not consistent with the collared tiles")]
    Inconsistent { depth: usize },
}

/// One collared tile per admissible centered window of side 2n+1.
pub fn collar(def: &TilingDefinition, depth: usize) -> Result<CollarSet, CollaringError> {
    let shape = def.dimension.collar_shape(depth);
    let patterns = factor_language(def, shape)?.into_patterns();
    let index = patterns
        .iter()
        .enumerate()
        .map(|(i, p)| (p.clone(), i))
        .collect();
    let tiles = patterns
        .into_iter()
        .enumerate()
        .map(|(id, collar)| CollaredTile { depth, id, collar })
        .collect();
    Ok(CollarSet {
        depth,
        dimension: def.dimension,
        tiles,
        index,
    })
}

/// Admissible adjacencies of the depth-n tiles in each axis direction.
///
/// Each admissible window of the two-tile overlap shape contributes one
/// pair. Fails if some tile has no neighbour on one of its sides.
pub fn adjacency(
    def: &TilingDefinition,
    tiles: &CollarSet,
) -> Result<Vec<AdjacencyRelation>, CollaringError> {
    let n = tiles.depth;
    let side = 2 * n + 1;
    let directions: &[Direction] = match def.dimension {
        Dimension::One => &[Direction::East],
        Dimension::Two => &[Direction::East, Direction::North],
    };
    let mut relations = Vec::with_capacity(directions.len());
    for &direction in directions {
        let (shape, first, second) = match (def.dimension, direction) {
            (Dimension::One, _) => (Shape::line(side + 1), (0, 0), (0, 1)),
            (Dimension::Two, Direction::East) => (Shape::new(side + 1, side), (0, 0), (0, 1)),
            // Row 0 is the top, so the northern tile is the upper window.
            (Dimension::Two, Direction::North) => (Shape::new(side, side + 1), (1, 0), (0, 0)),
        };
        let collar_shape = def.dimension.collar_shape(n);
        let lookup = |p: &Pattern| {
            tiles
                .find(p)
                .map(CollaredTile::id)
                .ok_or(CollaringError::Inconsistent { depth: n })
        };
        let mut pairs = Vec::new();
        for window in factor_language(def, shape)?.patterns() {
            let from = lookup(&window.window(first.0, first.1, collar_shape))?;
            let to = lookup(&window.window(second.0, second.1, collar_shape))?;
            pairs.push((from, to));
        }
        pairs.sort_unstable();
        pairs.dedup();

        let mut has_next = vec![false; tiles.len()];
        let mut has_prev = vec![false; tiles.len()];
        for &(a, b) in &pairs {
            has_next[a] = true;
            has_prev[b] = true;
        }
        let (ahead, behind) = match direction {
            Direction::East => ("east", "west"),
            Direction::North => ("north", "south"),
        };
        for id in 0..tiles.len() {
            if !has_next[id] || !has_prev[id] {
                return Err(CollaringError::NotExtendable {
                    depth: n,
                    tile: id,
                    side: if has_next[id] { behind } else { ahead },
                });
            }
        }
        relations.push(AdjacencyRelation {
            depth: n,
            direction,
            pairs,
        });
    }
    Ok(relations)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::parse_definition;

    fn fibonacci() -> TilingDefinition {
        parse_definition(
            r#"{"name": "fib", "dimension": 1, "alphabet": ["a","b"],
                "generator": {"type": "substitution_1d", "rules": {"a": ["a","b"], "b": ["a"]}},
                "symmetry": "continuous"}"#,
        )
        .unwrap()
    }

    fn periodic() -> TilingDefinition {
        parse_definition(
            r#"{"name": "per", "dimension": 1, "alphabet": ["a"],
                "generator": {"type": "periodic", "pattern": ["a"]}, "symmetry": "continuous"}"#,
        )
        .unwrap()
    }

    fn names(def: &TilingDefinition, set: &CollarSet) -> Vec<String> {
        set.tiles().iter().map(|t| def.alphabet.render(t.collar())).collect()
    }

    #[test]
    fn fibonacci_depth_zero_is_alphabet() {
        let def = fibonacci();
        let set = collar(&def, 0).unwrap();
        assert_eq!(names(&def, &set), ["a", "b"]);
    }

    #[test]
    fn fibonacci_depth_one_classes() {
        let def = fibonacci();
        let set = collar(&def, 1).unwrap();
        assert_eq!(names(&def, &set), ["aab", "aba", "baa", "bab"]);
        let centers: Vec<_> = set.tiles().iter().map(|t| def.alphabet.label(t.center())).collect();
        assert_eq!(centers, ["a", "b", "a", "a"]);
    }

    #[test]
    fn fibonacci_adjacency() {
        let def = fibonacci();
        let zero = collar(&def, 0).unwrap();
        let rel = adjacency(&def, &zero).unwrap();
        assert_eq!(rel.len(), 1);
        assert_eq!(rel[0].pairs, [(0, 0), (0, 1), (1, 0)]);

        let one = collar(&def, 1).unwrap();
        let rel = adjacency(&def, &one).unwrap();
        let rendered: Vec<_> = rel[0]
            .pairs
            .iter()
            .map(|&(a, b)| {
                format!(
                    "{}>{}",
                    def.alphabet.render(one.get(a).collar()),
                    def.alphabet.render(one.get(b).collar())
                )
            })
            .collect();
        // aaba, abaa, abab, baab, baba
        assert_eq!(rendered, ["aab>aba", "aba>baa", "aba>bab", "baa>aab", "bab>aba"]);
    }

    #[test]
    fn forget_is_central_restriction() {
        let def = fibonacci();
        let zero = collar(&def, 0).unwrap();
        let one = collar(&def, 1).unwrap();
        let aab = one.tiles().iter().find(|t| def.alphabet.render(t.collar()) == "aab").unwrap();
        assert_eq!(def.alphabet.render(one.forget(aab, &zero).unwrap().collar()), "a");
        let aba = one.tiles().iter().find(|t| def.alphabet.render(t.collar()) == "aba").unwrap();
        assert_eq!(def.alphabet.render(one.forget(aba, &zero).unwrap().collar()), "b");
        assert_eq!(
            zero.get(0).forget_collar(),
            Err(CollaringError::ForgetDepthZero)
        );
        assert!(matches!(
            one.forget(aab, &one),
            Err(CollaringError::DepthMismatch { .. })
        ));
    }

    #[test]
    fn periodic_has_one_class_and_pair() {
        let def = periodic();
        for n in 0..4 {
            let set = collar(&def, n).unwrap();
            assert_eq!(set.len(), 1);
            let rel = adjacency(&def, &set).unwrap();
            assert_eq!(rel[0].pairs, [(0, 0)]);
        }
    }

    #[test]
    fn non_extendable_blocks_are_rejected() {
        let def = parse_definition(
            r#"{"name": "g", "dimension": 1, "alphabet": ["a", "b"],
                "generator": {"type": "allowed_blocks", "blocks": [["a","b"], ["b","b"]]},
                "symmetry": "continuous"}"#,
        )
        .unwrap();
        let set = collar(&def, 0).unwrap();
        assert!(matches!(
            adjacency(&def, &set),
            Err(CollaringError::NotExtendable { tile: 0, side: "west", .. })
        ));
    }

    #[test]
    fn two_dimensional_directions() {
        // Rows alternate a and b vertically, so north of an 'a' row is a 'b' row.
        let def = parse_definition(
            r#"{"name": "stripes", "dimension": 2, "alphabet": ["a", "b"],
                "generator": {"type": "periodic", "pattern": [["b"], ["a"]]},
                "symmetry": "continuous"}"#,
        )
        .unwrap();
        let set = collar(&def, 0).unwrap();
        let rel = adjacency(&def, &set).unwrap();
        assert_eq!(rel[0].direction, Direction::East);
        assert_eq!(rel[0].pairs, [(0, 0), (1, 1)]);
        assert_eq!(rel[1].direction, Direction::North);
        assert_eq!(rel[1].pairs, [(0, 1), (1, 0)]);
    }
}
