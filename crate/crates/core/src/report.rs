//! Report documents emitted by the command-line front end.
//!
//! Integers are written as JSON numbers when they fit in an `i64` and as
//! decimal strings otherwise.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::ser::Serializer;
use serde::Serialize;

use crate::algebra::{Classification, DirectLimitPresentation, GroupInvariants, IntMatrix};
use crate::approximant::CwComplex;
use crate::collaring::{AdjacencyRelation, CollarSet};
use crate::language::WindowLanguage;
use crate::model::TilingDefinition;
use crate::tower::ApproximantTower;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Int(pub BigInt);

impl Serialize for Int {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

fn ints(v: &[BigInt]) -> Vec<Int> {
    v.iter().cloned().map(Int).collect()
}

fn matrix_rows(m: &IntMatrix) -> Vec<Vec<Int>> {
    (0..m.rows()).map(|r| ints(m.row(r))).collect()
}

/// Sorted text, one pattern per line.
pub fn language_text(def: &TilingDefinition, lang: &WindowLanguage) -> String {
    let mut out = String::new();
    for p in lang.patterns() {
        out.push_str(&def.alphabet.render(p));
        out.push('\n');
    }
    out
}

/// `id: collar` lines followed by `direction: id -> id` lines.
pub fn collar_text(def: &TilingDefinition, tiles: &CollarSet, adjacency: &[AdjacencyRelation]) -> String {
    let mut out = String::new();
    for t in tiles.tiles() {
        let _ = writeln!(out, "{}: {}", t.id(), def.alphabet.render(t.collar()));
    }
    for rel in adjacency {
        for (a, b) in &rel.pairs {
            let _ = writeln!(out, "{}: {a} -> {b}", rel.direction);
        }
    }
    out
}

#[derive(Serialize)]
pub struct BoundaryReport {
    pub degree: usize,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<Int>>,
}

#[derive(Serialize)]
pub struct ComplexReport {
    pub definition: String,
    pub symmetry: &'static str,
    pub depth: usize,
    pub dimension: usize,
    pub cell_counts: Vec<usize>,
    pub euler_characteristic: i64,
    pub boundaries: Vec<BoundaryReport>,
}

impl ComplexReport {
    pub fn new(def: &TilingDefinition, depth: usize, k: &CwComplex) -> Self {
        ComplexReport {
            definition: def.name.clone(),
            symmetry: def.symmetry.as_str(),
            depth,
            dimension: k.dimension(),
            cell_counts: k.cell_counts(),
            euler_characteristic: k.euler_characteristic(),
            boundaries: (1..=k.dimension())
                .map(|d| {
                    let b = k.boundary(d);
                    BoundaryReport {
                        degree: d,
                        rows: b.rows(),
                        cols: b.cols(),
                        entries: matrix_rows(b),
                    }
                })
                .collect(),
        }
    }

    pub fn pretty(&self) -> String {
        let mut out = format!(
            "{} ({}), depth {}: dimension {}, cells {:?}, Euler characteristic {}\n",
            self.definition, self.symmetry, self.depth, self.dimension, self.cell_counts, self.euler_characteristic
        );
        for b in &self.boundaries {
            let _ = writeln!(out, "∂_{} ({} x {}):", b.degree, b.rows, b.cols);
            for row in &b.entries {
                let cells: Vec<String> = row.iter().map(|x| format!("{:>3}", x.0)).collect();
                let _ = writeln!(out, "  {}", cells.join(""));
            }
        }
        out
    }
}

#[derive(Serialize)]
pub struct GroupReport {
    pub degree: usize,
    pub free_rank: usize,
    pub torsion: Vec<Int>,
    pub rendering: String,
}

impl GroupReport {
    fn new(degree: usize, g: &GroupInvariants) -> Self {
        GroupReport {
            degree,
            free_rank: g.free_rank,
            torsion: ints(&g.torsion),
            rendering: g.to_string(),
        }
    }
}

#[derive(Serialize)]
pub struct LevelReport {
    pub level: usize,
    pub cell_counts: Vec<usize>,
    pub groups: Vec<GroupReport>,
}

#[derive(Serialize)]
pub struct CohomologyReport {
    pub definition: String,
    pub symmetry: &'static str,
    pub dimension: usize,
    pub levels: Vec<LevelReport>,
}

impl CohomologyReport {
    pub fn new(def: &TilingDefinition, tower: &ApproximantTower) -> Self {
        CohomologyReport {
            definition: def.name.clone(),
            symmetry: def.symmetry.as_str(),
            dimension: tower.dimension(),
            levels: tower
                .levels()
                .iter()
                .map(|l| LevelReport {
                    level: l.depth(),
                    cell_counts: l.approximant.complex().cell_counts(),
                    groups: l
                        .cohomology
                        .iter()
                        .map(|h| GroupReport::new(h.degree(), h.invariants()))
                        .collect(),
                })
                .collect(),
        }
    }

    pub fn pretty(&self) -> String {
        let mut out = format!("{} ({}), dimension {}\n", self.definition, self.symmetry, self.dimension);
        for l in &self.levels {
            let groups: Vec<String> = l.groups.iter().map(|g| format!("H^{} = {}", g.degree, g.rendering)).collect();
            let _ = writeln!(out, "K_{} cells {:?}: {}", l.level, l.cell_counts, groups.join(", "));
        }
        out
    }
}

#[derive(Serialize)]
pub struct TowerEntry {
    pub level: usize,
    pub free_rank: usize,
    pub torsion: Vec<Int>,
}

#[derive(Serialize)]
pub struct MapEntry {
    /// The map runs from level - 1 (or the previous level) into this level.
    pub level: usize,
    pub matrix: Vec<Vec<Int>>,
}

#[derive(Serialize)]
pub struct ClassificationReport {
    pub kind: &'static str,
    pub stabilization_level: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub free_rank: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub transition: Option<Vec<Vec<Int>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub smith: Option<Vec<Int>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub torsion: Option<Vec<Int>>,
    pub divisibility: Vec<Int>,
}

#[derive(Serialize)]
pub struct DegreeReport {
    pub degree: usize,
    pub tower: Vec<TowerEntry>,
    pub maps: Vec<MapEntry>,
    pub classification: ClassificationReport,
    pub rendering: String,
}

impl DegreeReport {
    pub fn new(lim: &DirectLimitPresentation) -> Self {
        let mut c = ClassificationReport {
            kind: lim.classification.kind(),
            stabilization_level: lim.stabilization_level,
            free_rank: None,
            rank: None,
            transition: None,
            smith: None,
            torsion: None,
            divisibility: ints(&lim.divisibility()),
        };
        match &lim.classification {
            Classification::FinitelyGenerated { group } => {
                c.free_rank = Some(group.free_rank);
                c.torsion = Some(ints(&group.torsion));
            }
            Classification::EventualTransition {
                rank,
                transition,
                smith,
                torsion,
            } => {
                c.rank = Some(*rank);
                c.transition = Some(matrix_rows(transition));
                c.smith = Some(ints(smith));
                c.torsion = Some(ints(torsion));
            }
            Classification::Unclassified => {}
        }
        DegreeReport {
            degree: lim.degree,
            tower: lim
                .levels
                .iter()
                .map(|l| TowerEntry {
                    level: l.level,
                    free_rank: l.group.free_rank,
                    torsion: ints(&l.group.torsion),
                })
                .collect(),
            maps: lim
                .maps
                .iter()
                .zip(lim.levels.iter().skip(1))
                .map(|(m, l)| MapEntry {
                    level: l.level,
                    matrix: matrix_rows(&m.matrix),
                })
                .collect(),
            classification: c,
            rendering: lim.rendering(),
        }
    }
}

#[derive(Serialize)]
pub struct LimitReport {
    pub definition: String,
    pub symmetry: &'static str,
    pub dimension: usize,
    pub max_depth: usize,
    pub stab_window: usize,
    pub include_k0: bool,
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<&'static str>,
    pub degrees: Vec<DegreeReport>,
}

impl LimitReport {
    pub fn all_classified(&self) -> bool {
        self.degrees.iter().all(|d| d.classification.kind != "unclassified")
    }

    pub fn pretty(&self) -> String {
        let mut out = format!(
            "{} ({}), levels up to {}, window {}{}\n",
            self.definition,
            self.symmetry,
            self.max_depth,
            self.stab_window,
            self.note.map(|n| format!(", {n}")).unwrap_or_default()
        );
        for d in &self.degrees {
            let from = d
                .classification
                .stabilization_level
                .map(|l| format!(", from level {l}"))
                .unwrap_or_default();
            let _ = writeln!(out, "H^{} = {}  [{}{}]", d.degree, d.rendering, d.classification.kind, from);
            for t in &d.tower {
                let g = GroupInvariants {
                    free_rank: t.free_rank,
                    torsion: t.torsion.iter().map(|x| x.0.clone()).collect(),
                };
                let _ = writeln!(out, "  level {}: {}", t.level, g);
            }
            if let Some(s) = &d.classification.smith {
                let diag: Vec<String> = s.iter().map(|x| x.0.to_string()).collect();
                let _ = writeln!(out, "  transition Smith form diag({})", diag.join(", "));
            }
        }
        out
    }
}

/// Written instead of a result when the language closure fails.
#[derive(Serialize)]
pub struct ClosureFailureReport {
    pub status: &'static str,
    pub error: String,
    pub shape: String,
    pub previous: Vec<String>,
    pub last: Vec<String>,
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serialization");
    s.push('\n');
    s
}
