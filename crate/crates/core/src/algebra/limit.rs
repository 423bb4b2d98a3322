//! Classification of a finite tower H^k(K_1) -> H^k(K_2) -> ... by its
//! eventual behaviour.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use super::cohomology::{GroupInvariants, GroupMap};
use super::hermite::hermite_normal_form;
use super::matrix::IntMatrix;
use super::smith::smith_normal_form;

pub const DEFAULT_STAB_WINDOW: usize = 3;

/// Largest |det| for which integer eigenvalues are searched when rendering.
const EIGEN_SEARCH_LIMIT: u64 = 1 << 20;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LimitError {
    #[error("tower too short: {levels} levels, need at least {required} for a window of {window} maps")]
    TowerTooShort {
        levels: usize,
        required: usize,
        window: usize,
    },
    #[error("stabilization window must be at least 1")]
    EmptyWindow,
    #[error("tower has {levels} levels but {maps} maps")]
    Malformed { levels: usize, maps: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerLevel {
    pub level: usize,
    pub group: GroupInvariants,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification {
    /// Maps are isomorphisms from the stabilization level on.
    FinitelyGenerated { group: GroupInvariants },
    /// Constant groups whose transition matrices agree after the transported
    /// change of basis. `smith` is the Smith diagonal of `transition`
    /// (length `rank`, trailing zeros for singular transitions).
    EventualTransition {
        rank: usize,
        transition: IntMatrix,
        smith: Vec<BigInt>,
        torsion: Vec<BigInt>,
    },
    Unclassified,
}

impl Classification {
    pub fn kind(&self) -> &'static str {
        match self {
            Classification::FinitelyGenerated { .. } => "finitely_generated",
            Classification::EventualTransition { .. } => "eventual_transition",
            Classification::Unclassified => "unclassified",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectLimitPresentation {
    pub degree: usize,
    pub levels: Vec<TowerLevel>,
    /// `maps[i]` goes from `levels[i]` to `levels[i + 1]`.
    pub maps: Vec<GroupMap>,
    pub classification: Classification,
    pub stabilization_level: Option<usize>,
}

impl DirectLimitPresentation {
    /// Smith entries e >= 2 of the eventual transition: multiplication by
    /// each is invertible on some factor of the limit.
    pub fn divisibility(&self) -> Vec<BigInt> {
        match &self.classification {
            Classification::EventualTransition { smith, .. } => {
                smith.iter().filter(|e| **e > BigInt::one()).cloned().collect()
            }
            _ => Vec::new(),
        }
    }

    /// Human-readable description of the limit group.
    pub fn rendering(&self) -> String {
        match &self.classification {
            Classification::FinitelyGenerated { group } => group.to_string(),
            Classification::EventualTransition {
                rank,
                transition,
                smith,
                torsion,
            } => {
                let named = if torsion.is_empty() {
                    integer_eigenvalues(transition).map(render_diagonal)
                } else {
                    None
                };
                named.unwrap_or_else(|| {
                    let diag = smith.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
                    let tors = torsion.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
                    format!("lim(Z^{rank}, T) with T of Smith form diag({diag}); torsion [{tors}]")
                })
            }
            Classification::Unclassified => "unclassified".to_string(),
        }
    }
}

/// Limit of Z^r under a diagonal map: Z for entries ±1, Z[1/|e|] otherwise.
fn render_diagonal(mut diag: Vec<BigInt>) -> String {
    diag.iter_mut().for_each(|d| *d = d.abs());
    diag.sort();
    let units = diag.iter().filter(|d| d.is_one()).count();
    let mut parts = Vec::new();
    match units {
        0 => {}
        1 => parts.push("Z".to_string()),
        u => parts.push(format!("Z^{u}")),
    }
    parts.extend(diag.iter().filter(|d| **d > BigInt::one()).map(|d| format!("Z[1/{d}]")));
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" ⊕ ")
    }
}

/// Eigenvalues of `t` if it is diagonalisable over the integers, i.e. it has
/// a unimodular basis of integer eigenvectors. Singular matrices and very
/// large determinants are not attempted.
pub fn integer_eigenvalues(t: &IntMatrix) -> Option<Vec<BigInt>> {
    let r = t.rows();
    if !t.is_square() {
        return None;
    }
    if t.is_diagonal() {
        let diag: Vec<BigInt> = (0..r).map(|i| t[(i, i)].clone()).collect();
        return diag.iter().all(|d| !d.is_zero()).then_some(diag);
    }
    let snf = smith_normal_form(t);
    let inv = snf.invariants();
    if inv.len() != r {
        return None;
    }
    let det: BigInt = inv.iter().product();
    let det = det.to_u64().filter(|&d| d <= EIGEN_SEARCH_LIMIT)?;
    let mut eigen = Vec::new();
    let mut basis: Vec<Vec<BigInt>> = Vec::new();
    for d in (1..=det).filter(|d| det % d == 0) {
        for lambda in [BigInt::from(d), -BigInt::from(d)] {
            let mut shifted = t.clone();
            for i in 0..r {
                shifted[(i, i)] -= &lambda;
            }
            let s = smith_normal_form(&shifted);
            for c in s.rank()..r {
                basis.push(s.v.column(c));
                eigen.push(lambda.clone());
            }
        }
    }
    if basis.len() != r {
        return None;
    }
    let p = IntMatrix::from_fn(r, r, |i, j| basis[j][i].clone());
    let ps = smith_normal_form(&p);
    let unimodular = ps.rank() == r && ps.invariants().iter().all(One::is_one);
    unimodular.then_some(eigen)
}

/// Classifies the tower.
///
/// Finitely generated: every map from some level on is an isomorphism, over
/// at least `window` maps. Eventual transition: from some level on the groups
/// are constant and, transporting bases forward so each transition is in
/// Hermite normal form, every transition is the same matrix T, over at least
/// `window` maps. The earliest qualifying level is reported.
pub fn analyze_tower(
    degree: usize,
    levels: Vec<TowerLevel>,
    maps: Vec<GroupMap>,
    window: usize,
) -> Result<DirectLimitPresentation, LimitError> {
    if window == 0 {
        return Err(LimitError::EmptyWindow);
    }
    if maps.len() + 1 != levels.len() && !levels.is_empty() {
        return Err(LimitError::Malformed {
            levels: levels.len(),
            maps: maps.len(),
        });
    }
    if levels.len() < window + 1 {
        return Err(LimitError::TowerTooShort {
            levels: levels.len(),
            required: window + 1,
            window,
        });
    }

    let (classification, stabilization_level) = classify(&levels, &maps, window);
    Ok(DirectLimitPresentation {
        degree,
        levels,
        maps,
        classification,
        stabilization_level,
    })
}

fn classify(levels: &[TowerLevel], maps: &[GroupMap], window: usize) -> (Classification, Option<usize>) {
    let last = maps.len();
    let iso: Vec<bool> = maps.iter().map(GroupMap::is_isomorphism).collect();
    let mut start = last;
    while start > 0 && iso[start - 1] {
        start -= 1;
    }
    if last - start >= window {
        let group = levels[last].group.clone();
        return (Classification::FinitelyGenerated { group }, Some(levels[start].level));
    }

    let mut constant_from = last;
    while constant_from > 0 && levels[constant_from - 1].group == levels[last].group {
        constant_from -= 1;
    }
    for s in constant_from..=last.saturating_sub(window) {
        if let Some(transition) = common_transition(&maps[s..]) {
            let group = &levels[last].group;
            let rank = group.free_rank;
            let mut smith = smith_normal_form(&transition).invariants();
            smith.resize(rank, BigInt::zero());
            let c = Classification::EventualTransition {
                rank,
                transition,
                smith,
                torsion: group.torsion.clone(),
            };
            return (c, Some(levels[s].level));
        }
    }
    (Classification::Unclassified, None)
}

/// Starting from the given basis at the first level, choose each next basis
/// so the transition is in Hermite normal form; succeed if all agree.
fn common_transition(maps: &[GroupMap]) -> Option<IntMatrix> {
    let rank = maps.first()?.source.free_rank;
    let mut basis = IntMatrix::identity(rank);
    let mut common: Option<IntMatrix> = None;
    for m in maps {
        let hnf = hermite_normal_form(&(&m.free_block() * &basis));
        match &common {
            None => common = Some(hnf.h),
            Some(t) if *t == hnf.h => {}
            Some(_) => return None,
        }
        basis = hnf.w_inv;
    }
    common
}
