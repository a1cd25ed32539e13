//! Exact integral symmetric bilinear forms with distinguished bases.

mod signature;
mod snf;

pub use signature::{signature_and_parity, Parity};
pub use snf::{smith_normal_form, SmithDecomposition};

use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LatticeError {
    #[error("gram matrix is not symmetric")]
    NotSymmetric,
    #[error("gram matrix is not square or does not match the label count")]
    ShapeMismatch,
    #[error("matrix rows have unequal lengths")]
    RaggedMatrix,
    #[error("vector length {got} does not match lattice rank {rank}")]
    DimensionMismatch { got: usize, rank: usize },
    #[error("lattice '{0}' is not unimodular")]
    NotUnimodular(String),
    #[error("lattice '{0}' is degenerate")]
    Degenerate(String),
    #[error("smoothing requires at least one positive transverse intersection")]
    NoIntersections,
    #[error("claimed intersection count {claimed} does not equal the pairing {pairing}")]
    IntersectionMismatch { claimed: i64, pairing: i64 },
    #[error("orthogonal form does not match the gram matrix")]
    BadOrthogonalForm,
    #[error("duplicate basis label '{0}'")]
    DuplicateLabel(String),
    #[error("unknown basis label '{0}'")]
    UnknownLabel(String),
    #[error("integer overflow in exact computation")]
    Overflow,
}

/// One block of a block-diagonal form: a hyperbolic plane or a rank-one
/// diagonal entry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FormBlock {
    /// `[[0,1],[1,0]]`
    Hyperbolic,
    /// `[d]`
    Diag(i64),
}

impl FormBlock {
    pub fn rank(&self) -> usize {
        match self {
            FormBlock::Hyperbolic => 2,
            FormBlock::Diag(_) => 1,
        }
    }
}

/// A change of basis that diagonalizes the lattice into standard blocks.
///
/// The rows of `transform` are the coordinates of the orthogonalized basis
/// in the raw basis; `transform · gram · transformᵀ` equals the gram matrix
/// of `blocks`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrthogonalForm {
    pub transform: Vec<Vec<i64>>,
    pub blocks: Vec<FormBlock>,
}

/// An integral symmetric bilinear form with a named, ordered basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntLattice {
    name: String,
    rank: usize,
    gram: Vec<Vec<i64>>,
    labels: Vec<String>,
    det: i128,
    orthogonal: Option<OrthogonalForm>,
}

/// An element of a lattice, in raw basis coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LatticeVector {
    pub coords: Vec<i64>,
}

impl LatticeVector {
    pub fn new(coords: Vec<i64>) -> Self {
        LatticeVector { coords }
    }

    pub fn zero(rank: usize) -> Self {
        LatticeVector {
            coords: vec![0; rank],
        }
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn negated(&self) -> Self {
        LatticeVector {
            coords: self.coords.iter().map(|&c| -c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.len(), other.len());
        LatticeVector {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.negated())
    }

    pub fn scaled(&self, k: i64) -> Self {
        LatticeVector {
            coords: self.coords.iter().map(|&c| c * k).collect(),
        }
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", c)?;
        }
        write!(f, ")")
    }
}

/// A homology class together with the genus of an embedded representative.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceClass {
    pub class: LatticeVector,
    pub genus: u32,
}

impl SurfaceClass {
    pub fn new(class: LatticeVector, genus: u32) -> Self {
        SurfaceClass { class, genus }
    }

    /// Self-intersection of the class under the given lattice.
    pub fn square(&self, lattice: &IntLattice) -> Result<i64, LatticeError> {
        pairing(lattice, &self.class, &self.class)
    }
}

impl IntLattice {
    /// Builds a lattice from an explicit symmetric gram matrix.
    pub fn new(
        name: impl Into<String>,
        gram: Vec<Vec<i64>>,
        labels: Vec<impl Into<String>>,
    ) -> Result<Self, LatticeError> {
        let name = name.into();
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let rank = gram.len();
        if labels.len() != rank || gram.iter().any(|r| r.len() != rank) {
            return Err(LatticeError::ShapeMismatch);
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[i + 1..].contains(l) {
                return Err(LatticeError::DuplicateLabel(l.clone()));
            }
        }
        for i in 0..rank {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(LatticeError::NotSymmetric);
                }
            }
        }
        let det = snf::det(
            &gram
                .iter()
                .map(|r| r.iter().map(|&x| x as i128).collect())
                .collect::<Vec<_>>(),
        )?;
        Ok(IntLattice {
            name,
            rank,
            gram,
            labels,
            det,
            orthogonal: None,
        })
    }

    /// Like [`IntLattice::new`] but additionally checks `|det| = 1`.
    pub fn unimodular(
        name: impl Into<String>,
        gram: Vec<Vec<i64>>,
        labels: Vec<impl Into<String>>,
    ) -> Result<Self, LatticeError> {
        let l = Self::new(name, gram, labels)?;
        if !l.is_unimodular() {
            return Err(LatticeError::NotUnimodular(l.name));
        }
        Ok(l)
    }

    /// Builds a block-diagonal lattice; the orthogonal form is the identity
    /// change of basis.
    pub fn from_blocks(
        name: impl Into<String>,
        blocks: Vec<FormBlock>,
        labels: Vec<impl Into<String>>,
    ) -> Result<Self, LatticeError> {
        let rank: usize = blocks.iter().map(FormBlock::rank).sum();
        let gram = block_gram(&blocks);
        if labels.len() != rank {
            return Err(LatticeError::ShapeMismatch);
        }
        let mut l = Self::new(name, gram, labels)?;
        let transform = (0..rank)
            .map(|i| (0..rank).map(|j| i64::from(i == j)).collect())
            .collect();
        l.orthogonal = Some(OrthogonalForm { transform, blocks });
        Ok(l)
    }

    /// Attaches an orthogonalizing change of basis, verifying that
    /// `T·G·Tᵀ` equals the block gram matrix and that `T` is unimodular.
    pub fn with_orthogonal_form(
        mut self,
        transform: Vec<Vec<i64>>,
        blocks: Vec<FormBlock>,
    ) -> Result<Self, LatticeError> {
        let rank = self.rank;
        if transform.len() != rank || transform.iter().any(|r| r.len() != rank) {
            return Err(LatticeError::ShapeMismatch);
        }
        let expected = block_gram(&blocks);
        if expected.len() != rank {
            return Err(LatticeError::BadOrthogonalForm);
        }
        let t: Vec<Vec<i128>> = transform
            .iter()
            .map(|r| r.iter().map(|&x| x as i128).collect())
            .collect();
        if snf::det(&t)?.abs() != 1 {
            return Err(LatticeError::BadOrthogonalForm);
        }
        for i in 0..rank {
            for j in 0..rank {
                let mut acc: i128 = 0;
                for a in 0..rank {
                    for b in 0..rank {
                        acc += t[i][a] * self.gram[a][b] as i128 * t[j][b];
                    }
                }
                if acc != expected[i][j] as i128 {
                    return Err(LatticeError::BadOrthogonalForm);
                }
            }
        }
        self.orthogonal = Some(OrthogonalForm { transform, blocks });
        Ok(self)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label_index(&self, label: &str) -> Result<usize, LatticeError> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| LatticeError::UnknownLabel(label.to_string()))
    }

    /// Basis vector for the given label.
    pub fn basis_vector(&self, label: &str) -> Result<LatticeVector, LatticeError> {
        let i = self.label_index(label)?;
        let mut v = LatticeVector::zero(self.rank);
        v.coords[i] = 1;
        Ok(v)
    }

    pub fn determinant(&self) -> i128 {
        self.det
    }

    pub fn is_unimodular(&self) -> bool {
        self.det.abs() == 1
    }

    pub fn orthogonal_form(&self) -> Option<&OrthogonalForm> {
        self.orthogonal.as_ref()
    }

    /// Direct sum with `count` additional rank-one `diag(d)` summands,
    /// labelled `prefix1, prefix2, …` continuing past any existing labels
    /// with the same prefix.
    pub fn extend_diag(
        &self,
        name: impl Into<String>,
        count: usize,
        prefix: &str,
        d: i64,
    ) -> Result<IntLattice, LatticeError> {
        let old = self.rank;
        let rank = old + count;
        let mut gram = vec![vec![0i64; rank]; rank];
        for i in 0..old {
            gram[i][..old].copy_from_slice(&self.gram[i]);
        }
        for i in old..rank {
            gram[i][i] = d;
        }
        let mut next = 1usize;
        let taken: Vec<&String> = self.labels.iter().collect();
        let mut labels = self.labels.clone();
        for _ in 0..count {
            let mut candidate = format!("{prefix}{next}");
            while taken.iter().any(|l| **l == candidate) {
                next += 1;
                candidate = format!("{prefix}{next}");
            }
            labels.push(candidate);
            next += 1;
        }
        let mut out = IntLattice::new(name, gram, labels)?;
        if let Some(orth) = &self.orthogonal {
            let mut transform = vec![vec![0i64; rank]; rank];
            for (i, row) in orth.transform.iter().enumerate() {
                transform[i][..old].copy_from_slice(row);
            }
            for i in old..rank {
                transform[i][i] = 1;
            }
            let mut blocks = orth.blocks.clone();
            blocks.extend(std::iter::repeat(FormBlock::Diag(d)).take(count));
            out = out.with_orthogonal_form(transform, blocks)?;
        }
        Ok(out)
    }

    /// Restriction to the sublattice spanned by the basis vectors whose
    /// labels are *not* listed in `killed`. The killed vectors must be
    /// orthogonal to the kept ones.
    pub fn remove_basis(
        &self,
        name: impl Into<String>,
        killed: &[&str],
    ) -> Result<IntLattice, LatticeError> {
        let mut kill_idx = Vec::with_capacity(killed.len());
        for label in killed {
            kill_idx.push(self.label_index(label)?);
        }
        let keep: Vec<usize> = (0..self.rank).filter(|i| !kill_idx.contains(i)).collect();
        for &i in &kill_idx {
            for &j in &keep {
                if self.gram[i][j] != 0 {
                    return Err(LatticeError::BadOrthogonalForm);
                }
            }
        }
        let gram = keep
            .iter()
            .map(|&i| keep.iter().map(|&j| self.gram[i][j]).collect())
            .collect();
        let labels = keep.iter().map(|&i| self.labels[i].clone()).collect();
        IntLattice::new(name, gram, labels)
    }

    fn check_dim(&self, v: &LatticeVector) -> Result<(), LatticeError> {
        if v.len() != self.rank {
            Err(LatticeError::DimensionMismatch {
                got: v.len(),
                rank: self.rank,
            })
        } else {
            Ok(())
        }
    }
}

fn block_gram(blocks: &[FormBlock]) -> Vec<Vec<i64>> {
    let rank: usize = blocks.iter().map(FormBlock::rank).sum();
    let mut gram = vec![vec![0i64; rank]; rank];
    let mut at = 0;
    for b in blocks {
        match b {
            FormBlock::Hyperbolic => {
                gram[at][at + 1] = 1;
                gram[at + 1][at] = 1;
                at += 2;
            }
            FormBlock::Diag(d) => {
                gram[at][at] = *d;
                at += 1;
            }
        }
    }
    gram
}

/// `vᵀ · gram · w`, exactly.
pub fn pairing(l: &IntLattice, v: &LatticeVector, w: &LatticeVector) -> Result<i64, LatticeError> {
    l.check_dim(v)?;
    l.check_dim(w)?;
    let mut acc: i128 = 0;
    for (i, &vi) in v.coords.iter().enumerate() {
        if vi == 0 {
            continue;
        }
        for (j, &wj) in w.coords.iter().enumerate() {
            if wj == 0 {
                continue;
            }
            acc = acc
                .checked_add(vi as i128 * l.gram[i][j] as i128 * wj as i128)
                .ok_or(LatticeError::Overflow)?;
        }
    }
    i64::try_from(acc).map_err(|_| LatticeError::Overflow)
}

/// Evaluations of `k` against every basis vector, i.e. `gram · k`.
pub fn evaluations(l: &IntLattice, k: &LatticeVector) -> Result<Vec<i64>, LatticeError> {
    l.check_dim(k)?;
    (0..l.rank)
        .map(|i| {
            let mut acc: i128 = 0;
            for (j, &kj) in k.coords.iter().enumerate() {
                acc += l.gram[i][j] as i128 * kj as i128;
            }
            i64::try_from(acc).map_err(|_| LatticeError::Overflow)
        })
        .collect()
}

/// Whether `k` is characteristic: `k·x ≡ x·x (mod 2)` for every basis
/// vector `x` (hence, by linearity mod 2, for every `x`).
///
/// Only defined here for unimodular lattices.
pub fn is_characteristic(l: &IntLattice, k: &LatticeVector) -> Result<bool, LatticeError> {
    if !l.is_unimodular() {
        return Err(LatticeError::NotUnimodular(l.name.clone()));
    }
    let evals = evaluations(l, k)?;
    Ok((0..l.rank).all(|i| (evals[i] - l.gram[i][i]) % 2 == 0))
}

/// Smooths `k` positive transverse intersection points between two embedded
/// surfaces: the class adds, the genus is `g₁ + g₂ + (k − 1)`.
///
/// `positive_intersections` must be ≥ 1 and equal the homological pairing
/// of the two classes (all intersections positive is the caller's
/// geometric assertion).
pub fn combine_surfaces(
    l: &IntLattice,
    s1: &SurfaceClass,
    s2: &SurfaceClass,
    positive_intersections: i64,
) -> Result<SurfaceClass, LatticeError> {
    if positive_intersections < 1 {
        return Err(LatticeError::NoIntersections);
    }
    let p = pairing(l, &s1.class, &s2.class)?;
    if p != positive_intersections {
        return Err(LatticeError::IntersectionMismatch {
            claimed: positive_intersections,
            pairing: p,
        });
    }
    Ok(SurfaceClass {
        class: s1.class.add(&s2.class),
        genus: s1.genus + s2.genus + (positive_intersections as u32 - 1),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag(name: &str, entries: &[i64]) -> IntLattice {
        let blocks = entries.iter().map(|&d| FormBlock::Diag(d)).collect();
        let labels: Vec<String> = (0..entries.len()).map(|i| format!("e{i}")).collect();
        IntLattice::from_blocks(name, blocks, labels).unwrap()
    }

    #[test]
    fn pairing_on_diagonal_forms() {
        let l = diag("L", &[1, -1]);
        let v = LatticeVector::new(vec![1, 0]);
        assert_eq!(pairing(&l, &v, &v).unwrap(), 1);

        let l6 = diag("L6", &[1, -1, -1, -1, -1, -1]);
        let k = LatticeVector::new(vec![3, 1, 1, 1, 1, 1]);
        assert_eq!(pairing(&l6, &k, &k).unwrap(), 4);
    }

    #[test]
    fn pairing_on_hyperbolic_pair() {
        let h = IntLattice::from_blocks("H", vec![FormBlock::Hyperbolic], vec!["u", "v"]).unwrap();
        let u = h.basis_vector("u").unwrap();
        let v = h.basis_vector("v").unwrap();
        assert_eq!(pairing(&h, &u, &v).unwrap(), 1);
        assert_eq!(pairing(&h, &u, &u).unwrap(), 0);
    }

    #[test]
    fn pairing_rejects_dimension_mismatch() {
        let l = diag("L", &[1, -1]);
        let v = LatticeVector::new(vec![1]);
        let w = LatticeVector::new(vec![1, 0]);
        assert!(matches!(
            pairing(&l, &v, &w),
            Err(LatticeError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn characteristic_vectors_in_odd_diagonal_form() {
        let l = diag("L", &[1, -1, -1, -1, -1, -1]);
        let k = LatticeVector::new(vec![3, 1, 1, 1, 1, 1]);
        assert!(is_characteristic(&l, &k).unwrap());
        let k2 = LatticeVector::new(vec![2, 1, 1, 1, 1, 1]);
        assert!(!is_characteristic(&l, &k2).unwrap());
    }

    #[test]
    fn characteristic_rejects_non_unimodular() {
        let l = diag("L", &[2]);
        let k = LatticeVector::new(vec![0]);
        assert!(matches!(
            is_characteristic(&l, &k),
            Err(LatticeError::NotUnimodular(_))
        ));
    }

    #[test]
    fn combine_surfaces_matches_smoothing_arithmetic() {
        // (g=1, sq 0) + (g=1, sq 0) meeting once → (g=2, sq 2)
        let h = IntLattice::from_blocks("H", vec![FormBlock::Hyperbolic], vec!["u", "v"]).unwrap();
        let s1 = SurfaceClass::new(h.basis_vector("u").unwrap(), 1);
        let s2 = SurfaceClass::new(h.basis_vector("v").unwrap(), 1);
        let s = combine_surfaces(&h, &s1, &s2, 1).unwrap();
        assert_eq!(s.genus, 2);
        assert_eq!(s.square(&h).unwrap(), 2);

        assert!(matches!(
            combine_surfaces(&h, &s1, &s2, 0),
            Err(LatticeError::NoIntersections)
        ));
        assert!(matches!(
            combine_surfaces(&h, &s1, &s2, 2),
            Err(LatticeError::IntersectionMismatch { .. })
        ));
    }

    #[test]
    fn unimodular_flag_is_checked() {
        assert!(IntLattice::unimodular("L", vec![vec![2]], vec!["e"]).is_err());
        assert!(IntLattice::unimodular("L", vec![vec![-1]], vec!["e"]).is_ok());
    }

    #[test]
    fn orthogonal_form_is_verified() {
        // gram [[0,1],[1,0]] is already hyperbolic; the identity works.
        let l = IntLattice::new("H", vec![vec![0, 1], vec![1, 0]], vec!["u", "v"]).unwrap();
        let ok = l
            .clone()
            .with_orthogonal_form(
                vec![vec![1, 0], vec![0, 1]],
                vec![FormBlock::Hyperbolic],
            )
            .is_ok();
        assert!(ok);
        let bad = l.with_orthogonal_form(
            vec![vec![1, 0], vec![0, 1]],
            vec![FormBlock::Diag(1), FormBlock::Diag(-1)],
        );
        assert!(bad.is_err());
    }

    #[test]
    fn extend_diag_appends_fresh_labels() {
        let l = diag("L", &[-1]);
        let l2 = l.extend_diag("L+E", 2, "E", -1).unwrap();
        assert_eq!(l2.rank(), 3);
        assert_eq!(l2.labels()[1], "E1");
        assert_eq!(l2.labels()[2], "E2");
        assert_eq!(l2.gram()[2][2], -1);
    }

    #[test]
    fn remove_basis_requires_orthogonality() {
        let h2 = IntLattice::from_blocks(
            "HH",
            vec![FormBlock::Hyperbolic, FormBlock::Hyperbolic],
            vec!["a", "b", "c", "d"],
        )
        .unwrap();
        let r = h2.remove_basis("H", &["a", "b"]).unwrap();
        assert_eq!(r.rank(), 2);
        assert_eq!(r.labels(), &["c".to_string(), "d".to_string()]);
        // removing half a hyperbolic pair leaves a non-orthogonal partner
        assert!(h2.remove_basis("bad", &["a"]).is_err());
    }
}
