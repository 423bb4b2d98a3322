//! Cellular cohomology with integer coefficients and induced maps.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use super::matrix::IntMatrix;
use super::smith::smith_normal_form;
use crate::approximant::{CellularMap, CwComplex};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("malformed complex: {0}")]
    Malformed(String),
    #[error("degree {degree} is out of range for a complex of dimension {dimension}")]
    DegreeOutOfRange { degree: usize, dimension: usize },
    #[error("cochain is not a cocycle or does not match the group's complex")]
    LiftInconsistency,
    #[error("cellular map does not match the complexes")]
    MapMismatch,
}

/// Isomorphism type of a finitely generated abelian group:
/// Z^free_rank ⊕ Z/t_1 ⊕ ... with t_1 | t_2 | ..., each t_i >= 2.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupInvariants {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl GroupInvariants {
    pub fn free(rank: usize) -> Self {
        GroupInvariants {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    /// Number of generators: torsion generators first, then free ones.
    pub fn generators(&self) -> usize {
        self.torsion.len() + self.free_rank
    }
}

impl fmt::Display for GroupInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" ⊕ "))
        }
    }
}

/// A presented cohomology group with generator lifts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianGroupPresentation {
    pub invariants: GroupInvariants,
    /// Column i is a cocycle representing generator i.
    pub generator_lifts: IntMatrix,
}

/// H^k of a complex, with what is needed to express cocycles in generators.
#[derive(Clone, Debug)]
pub struct Cohomology {
    degree: usize,
    presentation: AbelianGroupPresentation,
    /// δ^k, to test the cocycle condition.
    coboundary: IntMatrix,
    /// Generator coordinates of a cocycle (before reducing torsion).
    projection: IntMatrix,
}

impl Cohomology {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn presentation(&self) -> &AbelianGroupPresentation {
        &self.presentation
    }

    pub fn invariants(&self) -> &GroupInvariants {
        &self.presentation.invariants
    }

    pub fn cochain_len(&self) -> usize {
        self.coboundary.cols()
    }

    /// Coordinates of the class of `cocycle`, torsion coordinates in `[0, t_i)`.
    pub fn coordinates(&self, cocycle: &[BigInt]) -> Result<Vec<BigInt>, AlgebraError> {
        if cocycle.len() != self.cochain_len() || self.coboundary.mul_vec(cocycle).iter().any(|x| !x.is_zero()) {
            return Err(AlgebraError::LiftInconsistency);
        }
        let mut coords = self.projection.mul_vec(cocycle);
        reduce_torsion(&mut coords, &self.presentation.invariants.torsion);
        Ok(coords)
    }
}

fn reduce_torsion(coords: &mut [BigInt], torsion: &[BigInt]) {
    for (c, t) in coords.iter_mut().zip(torsion) {
        *c = c.mod_floor(t);
    }
}

/// δ^k = ∂_{k+1}^T as a (c_{k+1} x c_k) matrix, zero outside 0..dim.
fn coboundary(k: &CwComplex, degree: usize) -> IntMatrix {
    let counts = k.cell_counts();
    if degree < k.dimension() {
        k.boundary(degree + 1).transpose()
    } else {
        IntMatrix::zeros(0, counts[degree])
    }
}

/// H^k(K) for k = 0..=dim K.
///
/// With δ^k = ∂_{k+1}^T, the Smith form of δ^k gives a basis of its kernel;
/// the image of δ^{k-1} written in that basis is then put in Smith form,
/// whose invariant factors give the quotient.
pub fn cohomology(k: &CwComplex) -> Result<Vec<Cohomology>, AlgebraError> {
    k.check().map_err(|e| AlgebraError::Malformed(e.to_string()))?;
    (0..=k.dimension()).map(|d| cohomology_in_degree(k, d)).collect()
}

pub fn cohomology_in_degree(k: &CwComplex, degree: usize) -> Result<Cohomology, AlgebraError> {
    if degree > k.dimension() {
        return Err(AlgebraError::DegreeOutOfRange {
            degree,
            dimension: k.dimension(),
        });
    }
    let counts = k.cell_counts();
    let n = counts[degree];
    let outgoing = coboundary(k, degree);
    let incoming = if degree == 0 {
        IntMatrix::zeros(n, 0)
    } else {
        coboundary(k, degree - 1)
    };

    let out_snf = smith_normal_form(&outgoing);
    let r = out_snf.rank();
    let kernel = out_snf.v.col_range(r, n);
    let to_kernel = out_snf.v_inv.row_range(r, n);
    let head = out_snf.v_inv.row_range(0, r);
    if !(&head * &incoming).is_zero() {
        return Err(AlgebraError::Malformed(format!(
            "image of δ^{} is not inside the kernel of δ^{degree}",
            degree.wrapping_sub(1)
        )));
    }
    let relations = &to_kernel * &incoming;
    let rel_snf = smith_normal_form(&relations);
    let invariants = rel_snf.invariants();
    let units = invariants.iter().take_while(|d| d.is_one()).count();
    let torsion: Vec<BigInt> = invariants[units..].to_vec();
    let z = n - r;
    let free_rank = z - invariants.len();

    let generator_lifts = &kernel * &rel_snf.u_inv.col_range(units, z);
    let projection = (&rel_snf.u * &to_kernel).row_range(units, z);
    Ok(Cohomology {
        degree,
        presentation: AbelianGroupPresentation {
            invariants: GroupInvariants { free_rank, torsion },
            generator_lifts,
        },
        coboundary: outgoing,
        projection,
    })
}

/// A homomorphism between presented groups, as a matrix in their generators
/// (rows: target generators, columns: source generators). Torsion rows are
/// reduced modulo their order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupMap {
    pub source: GroupInvariants,
    pub target: GroupInvariants,
    pub matrix: IntMatrix,
}

impl GroupMap {
    pub fn new(source: GroupInvariants, target: GroupInvariants, mut matrix: IntMatrix) -> Self {
        assert_eq!(matrix.rows(), target.generators());
        assert_eq!(matrix.cols(), source.generators());
        for (r, t) in target.torsion.iter().enumerate() {
            for c in 0..matrix.cols() {
                matrix[(r, c)] = matrix[(r, c)].mod_floor(t);
            }
        }
        GroupMap { source, target, matrix }
    }

    pub fn identity(group: &GroupInvariants) -> Self {
        GroupMap::new(group.clone(), group.clone(), IntMatrix::identity(group.generators()))
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &GroupMap) -> GroupMap {
        assert_eq!(self.target, next.source, "composing incompatible maps");
        GroupMap::new(self.source.clone(), next.target.clone(), &next.matrix * &self.matrix)
    }

    /// Block acting between the free parts.
    pub fn free_block(&self) -> IntMatrix {
        let (ts, tt) = (self.source.torsion.len(), self.target.torsion.len());
        self.matrix.block(tt, self.matrix.rows(), ts, self.matrix.cols())
    }

    /// Onto: the images of the generators together with the torsion
    /// relations span the whole generator lattice of the target.
    pub fn is_surjective(&self) -> bool {
        let m = self.target.generators();
        let relations = IntMatrix::diagonal(m, self.target.torsion.len(), &self.target.torsion);
        let snf = smith_normal_form(&self.matrix.hstack(&relations));
        let inv = snf.invariants();
        inv.len() == m && inv.iter().all(One::is_one)
    }

    /// Finitely generated abelian groups are Hopfian, so an onto map between
    /// isomorphic groups is an isomorphism.
    pub fn is_isomorphism(&self) -> bool {
        self.source == self.target && self.is_surjective()
    }
}

/// σ^*: H^k(target of `f`) -> H^k(source of `f`), the pullback along `f`.
///
/// `lower` is the cohomology of the complex `f` maps into, `upper` that of
/// the complex it maps from.
pub fn induced_cohomology_map(
    f: &CellularMap,
    lower: &Cohomology,
    upper: &Cohomology,
) -> Result<GroupMap, AlgebraError> {
    let k = lower.degree;
    if upper.degree != k {
        return Err(AlgebraError::MapMismatch);
    }
    if k > f.dimension() {
        return Err(AlgebraError::DegreeOutOfRange {
            degree: k,
            dimension: f.dimension(),
        });
    }
    let assign = f.assignment(k);
    if assign.len() != upper.cochain_len() || assign.iter().any(|&c| c >= lower.cochain_len()) {
        return Err(AlgebraError::MapMismatch);
    }
    let lifts = &lower.presentation.generator_lifts;
    let mut columns = Vec::with_capacity(lifts.cols());
    for g in 0..lifts.cols() {
        let pulled: Vec<BigInt> = assign.iter().map(|&c| lifts[(c, g)].clone()).collect();
        columns.push(upper.coordinates(&pulled)?);
    }
    let rows = upper.invariants().generators();
    let matrix = IntMatrix::from_fn(rows, columns.len(), |r, c| columns[c][r].clone());
    Ok(GroupMap::new(lower.invariants().clone(), upper.invariants().clone(), matrix))
}
