//! The tower K_first <- ... <- K_N with cohomology at every level.

use std::thread;

use thiserror::Error;

use crate::algebra::{
    analyze_tower, cohomology, induced_cohomology_map, AlgebraError, Cohomology, DirectLimitPresentation, GroupMap,
    LimitError, TowerLevel,
};
use crate::approximant::{build_approximant, forgetful_map, Approximant, ApproximantError, CellularMap};
use crate::model::TilingDefinition;

pub const DEFAULT_MAX_DEPTH: usize = 4;
pub const MAX_SAFE_DEPTH: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TowerOptions {
    pub max_depth: usize,
    /// Also keep the uncollared complex K_0 as the first level.
    pub include_k0: bool,
}

impl Default for TowerOptions {
    fn default() -> Self {
        TowerOptions {
            max_depth: DEFAULT_MAX_DEPTH,
            include_k0: false,
        }
    }
}

#[derive(Debug, Error)]
pub enum TowerError {
    #[error(transparent)]
    Approximant(#[from] ApproximantError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Limit(#[from] LimitError),
}

#[derive(Clone, Debug)]
pub struct Level {
    pub approximant: Approximant,
    pub cohomology: Vec<Cohomology>,
}

impl Level {
    pub fn depth(&self) -> usize {
        self.approximant.depth()
    }
}

#[derive(Clone, Debug)]
pub struct ApproximantTower {
    levels: Vec<Level>,
    /// `maps[i]` is the forgetful map from `levels[i + 1]` to `levels[i]`.
    maps: Vec<CellularMap>,
}

fn build_level(def: &TilingDefinition, depth: usize) -> Result<Level, TowerError> {
    let approximant = build_approximant(def, depth)?;
    let cohomology = cohomology(approximant.complex())?;
    Ok(Level {
        approximant,
        cohomology,
    })
}

/// Builds every level independently (in parallel) and links consecutive
/// levels by their forgetful maps.
pub fn build_tower(def: &TilingDefinition, options: TowerOptions) -> Result<ApproximantTower, TowerError> {
    let first = if options.include_k0 { 0 } else { 1 };
    let built: Vec<Result<Level, TowerError>> = thread::scope(|scope| {
        let handles: Vec<_> = (first..=options.max_depth)
            .map(|depth| scope.spawn(move || build_level(def, depth)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("level construction panicked"))
            .collect()
    });
    let levels = built.into_iter().collect::<Result<Vec<_>, _>>()?;
    let maps = levels
        .windows(2)
        .map(|pair| forgetful_map(&pair[1].approximant, &pair[0].approximant))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ApproximantTower { levels, maps })
}

impl ApproximantTower {
    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn maps(&self) -> &[CellularMap] {
        &self.maps
    }

    /// Dimension of every K_n in the tower.
    pub fn dimension(&self) -> usize {
        self.levels[0].approximant.complex().dimension()
    }

    /// σ_n^* in the given degree for each consecutive pair of levels.
    pub fn induced_maps(&self, degree: usize) -> Result<Vec<GroupMap>, TowerError> {
        self.maps
            .iter()
            .enumerate()
            .map(|(i, f)| {
                let lower = &self.levels[i].cohomology[degree];
                let upper = &self.levels[i + 1].cohomology[degree];
                Ok(induced_cohomology_map(f, lower, upper)?)
            })
            .collect()
    }

    pub fn limit(&self, degree: usize, window: usize) -> Result<DirectLimitPresentation, TowerError> {
        if degree > self.dimension() {
            return Err(AlgebraError::DegreeOutOfRange {
                degree,
                dimension: self.dimension(),
            }
            .into());
        }
        let levels = self
            .levels
            .iter()
            .map(|l| TowerLevel {
                level: l.depth(),
                group: l.cohomology[degree].invariants().clone(),
            })
            .collect();
        let maps = self.induced_maps(degree)?;
        Ok(analyze_tower(degree, levels, maps, window)?)
    }

    /// Limits in every degree.
    pub fn limits(&self, window: usize) -> Result<Vec<DirectLimitPresentation>, TowerError> {
        (0..=self.dimension()).map(|d| self.limit(d, window)).collect()
    }
}
