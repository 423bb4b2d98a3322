//! Admissible local patterns of a tiling space at a fixed window shape.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::model::{substitute, Dimension, Generator, TilingDefinition};
use crate::pattern::{Pattern, Shape};

/// Highest supertile order examined before giving up on closure.
pub const CLOSURE_ORDER_CAP: usize = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// Window set of the supertiles stabilised at this order.
    SubstitutionClosure { order: usize },
    Explicit,
    Periodic,
}

/// The finite set of admissible patterns of one window shape, sorted in
/// canonical pattern order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WindowLanguage {
    shape: Shape,
    patterns: Vec<Pattern>,
    provenance: Provenance,
}

impl WindowLanguage {
    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn patterns(&self) -> &[Pattern] {
        &self.patterns
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }

    pub fn contains(&self, p: &Pattern) -> bool {
        self.patterns.binary_search(p).is_ok()
    }

    pub fn into_patterns(self) -> Vec<Pattern> {
        self.patterns
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LanguageError {
    #[error("closure not reached for window {shape} within {CLOSURE_ORDER_CAP} supertile orders ({} then {} windows at the last two orders)", .previous.len(), .last.len())]
    ClosureNotReached {
        shape: Shape,
        previous: Vec<Pattern>,
        last: Vec<Pattern>,
    },
    #[error("window {shape} exceeds the declared block shape {block}")]
    UnsupportedWindow { shape: Shape, block: Shape },
    #[error("window {shape} is empty or does not match the tiling dimension")]
    InvalidShape { shape: Shape },
}

/// Enumerates the admissible patterns of `shape`.
///
/// Substitutions: the windows of all supertiles of every order, with the
/// per-order window set iterated until two consecutive orders agree.
/// Periodic: the translates of the repeating array. Allowed blocks: every
/// sub-window of a declared block.
pub fn factor_language(def: &TilingDefinition, shape: Shape) -> Result<WindowLanguage, LanguageError> {
    if shape.is_empty() || (def.dimension == Dimension::One && shape.height != 1) {
        return Err(LanguageError::InvalidShape { shape });
    }
    let (set, provenance) = match &def.generator {
        Generator::Substitution1d { .. } | Generator::BlockSubstitution2d { .. } => {
            substitution_closure(def, shape)?
        }
        Generator::Periodic { pattern } => (
            pattern.cyclic_windows(shape).collect(),
            Provenance::Periodic,
        ),
        Generator::AllowedBlocks { blocks } => {
            let block = blocks[0].shape();
            if !shape.fits_in(block) {
                return Err(LanguageError::UnsupportedWindow { shape, block });
            }
            (
                blocks.iter().flat_map(|b| b.windows(shape)).collect(),
                Provenance::Explicit,
            )
        }
    };
    Ok(WindowLanguage {
        shape,
        patterns: set.into_iter().collect(),
        provenance,
    })
}

/// Per-order windows are advanced without materialising large supertiles: a
/// window of σ(S) always lies inside σ(u) for a sub-window u of S no larger
/// than the window itself, so once every supertile covers the shape the
/// next order's windows are exactly the windows of σ applied to the current
/// ones. Supertiles still smaller than the shape are carried explicitly.
fn substitution_closure(
    def: &TilingDefinition,
    shape: Shape,
) -> Result<(BTreeSet<Pattern>, Provenance), LanguageError> {
    let mut small: Vec<Pattern> = Vec::new();
    let mut current: BTreeSet<Pattern> = BTreeSet::new();
    for s in def.alphabet.symbols() {
        let p = Pattern::single(s);
        if shape.fits_in(p.shape()) {
            current.insert(p);
        } else {
            small.push(p);
        }
    }
    let mut union = current.clone();

    for order in 1..=CLOSURE_ORDER_CAP {
        let mut next = BTreeSet::new();
        for p in &current {
            let image = substitute(p, def).expect("substitution generator");
            next.extend(image.windows(shape));
        }
        let mut still_small = Vec::new();
        for p in &small {
            let image = substitute(p, def).expect("substitution generator");
            if shape.fits_in(image.shape()) {
                next.extend(image.windows(shape));
            } else {
                still_small.push(image);
            }
        }
        union.extend(next.iter().cloned());
        let stable = small.is_empty() && still_small.is_empty() && next == current;
        if stable {
            return Ok((union, Provenance::SubstitutionClosure { order: order - 1 }));
        }
        if order == CLOSURE_ORDER_CAP {
            return Err(LanguageError::ClosureNotReached {
                shape,
                previous: current.into_iter().collect(),
                last: next.into_iter().collect(),
            });
        }
        small = still_small;
        current = next;
    }
    unreachable!()
}
