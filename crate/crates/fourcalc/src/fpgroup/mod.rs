//! Exact computations with finitely presented groups.
//!
//! The centerpiece is a deterministic Todd–Coxeter coset enumerator with
//! HLT-plus-lookahead and Felsch strategies; around it sit free-word
//! algebra, abelianization through Smith normal form, and a small finite
//! quotient scanner used to produce nontriviality witnesses.

mod coset;
mod presentation;
mod quotient;
mod word;

pub use coset::{
    coset_enumerate, coset_enumerate_with, CompletionVerdict, EnumerationBounds,
    EnumerationOutcome, Strategy,
};
pub use presentation::Presentation;
pub use quotient::{finite_quotient_scan, finite_quotient_scan_with, Epimorphism};
pub use word::Word;

use crate::lattice::{smith_normal_form, LatticeError};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FpGroupError {
    #[error("invalid generator name '{0}'")]
    BadGeneratorName(String),
    #[error("duplicate generator '{0}'")]
    DuplicateGenerator(String),
    #[error("unknown generator '{0}'")]
    UnknownGenerator(String),
    #[error("generator index {index} out of range for {count} generators")]
    GeneratorOutOfRange { index: usize, count: usize },
    #[error("relator permutation is not a permutation of the relator list")]
    BadRelatorPermutation,
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("enumeration bounds must be positive")]
    NonPositiveBounds,
    #[error("quotient scan order {got} exceeds the configured ceiling {ceiling}")]
    QuotientOrderTooLarge { got: usize, ceiling: usize },
    #[error("lattice kernel error: {0}")]
    Lattice(#[from] LatticeError),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

/// Free reduction as a standalone operation (see [`Word::free_reduce`]).
pub fn free_reduce(w: &Word) -> Word {
    w.free_reduce()
}

/// Invariant factors of the abelianization of a finitely presented group:
/// `Z^free_rank ⊕ Z/t₁ ⊕ Z/t₂ ⊕ …` with `t₁ | t₂ | …`, all `tᵢ ≥ 2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    pub torsion: Vec<i64>,
}

impl AbelianInvariants {
    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

impl std::fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        if self.free_rank > 0 {
            parts.push(if self.free_rank == 1 {
                "Z".to_string()
            } else {
                format!("Z^{}", self.free_rank)
            });
        }
        for t in &self.torsion {
            parts.push(format!("Z/{}", t));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Exponent matrix of a presentation: one row per relator, one column per
/// generator.
pub fn exponent_matrix(p: &Presentation) -> Vec<Vec<i64>> {
    p.relators()
        .iter()
        .map(|r| r.exponent_sums(p.gen_count()))
        .collect()
}

/// Abelianization via the Smith normal form of the exponent matrix.
pub fn abelianization(p: &Presentation) -> AbelianInvariants {
    let m = exponent_matrix(p);
    let snf = smith_normal_form(&m).expect("exponent matrix is rectangular by construction");
    AbelianInvariants {
        free_rank: p.gen_count() - snf.rank(),
        torsion: snf.torsion(),
    }
}

/// Witness backing a `Nontrivial` verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum NontrivialityWitness {
    /// The abelianization is already nontrivial.
    Abelianization(AbelianInvariants),
    /// A surjection onto a known finite group.
    FiniteQuotient { group: String, order: usize },
    /// Enumeration completed: the group is finite of this order (> 1).
    FiniteOrder(usize),
}

impl std::fmt::Display for NontrivialityWitness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            NontrivialityWitness::Abelianization(a) => write!(f, "abelianization {}", a),
            NontrivialityWitness::FiniteQuotient { group, order } => {
                write!(f, "surjection onto {} (order {})", group, order)
            }
            NontrivialityWitness::FiniteOrder(n) => write!(f, "finite of order {}", n),
        }
    }
}

/// Certified answer to "is this presentation the trivial group?".
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TrivialityVerdict {
    /// Coset enumeration over the trivial subgroup completed with index 1.
    Trivial,
    Nontrivial(NontrivialityWitness),
    /// Bounds exhausted and no witness found.
    Unknown,
}

impl TrivialityVerdict {
    pub fn is_trivial(&self) -> bool {
        matches!(self, TrivialityVerdict::Trivial)
    }
}

impl std::fmt::Display for TrivialityVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TrivialityVerdict::Trivial => write!(f, "Trivial"),
            TrivialityVerdict::Nontrivial(w) => write!(f, "Nontrivial({})", w),
            TrivialityVerdict::Unknown => write!(f, "Unknown"),
        }
    }
}

/// Decides triviality within the given bounds.
///
/// A `Trivial` verdict is certified by a completed index-1 enumeration.
/// `Nontrivial` verdicts carry a witness: a nontrivial abelianization, a
/// completed enumeration of order > 1, or a surjection onto a finite group
/// of order ≤ 16. `Unknown` is returned only when the bounds were exceeded
/// and no witness was found.
pub fn is_trivial(
    p: &Presentation,
    bounds: EnumerationBounds,
) -> Result<TrivialityVerdict, FpGroupError> {
    let ab = abelianization(p);
    if !ab.is_trivial() {
        return Ok(TrivialityVerdict::Nontrivial(
            NontrivialityWitness::Abelianization(ab),
        ));
    }
    let outcome = coset_enumerate(p, &[], bounds)?;
    match outcome.verdict {
        CompletionVerdict::CompletedIndex(1) => Ok(TrivialityVerdict::Trivial),
        CompletionVerdict::CompletedIndex(n) => Ok(TrivialityVerdict::Nontrivial(
            NontrivialityWitness::FiniteOrder(n),
        )),
        CompletionVerdict::BoundExceeded => {
            let epis = finite_quotient_scan(p, 16)?;
            match epis.into_iter().next() {
                Some(e) => Ok(TrivialityVerdict::Nontrivial(
                    NontrivialityWitness::FiniteQuotient {
                        group: e.group,
                        order: e.order,
                    },
                )),
                None => Ok(TrivialityVerdict::Unknown),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn abelianization_of_free_abelian_rank_two() {
        let p = Presentation::parse("gens: a b; rels: [a,b]").unwrap();
        let a = abelianization(&p);
        assert_eq!(a.free_rank, 2);
        assert!(a.torsion.is_empty());
    }

    #[test]
    fn abelianization_of_cyclic_three() {
        let p = Presentation::parse("gens: a; rels: a^3").unwrap();
        let a = abelianization(&p);
        assert_eq!(a.free_rank, 0);
        assert_eq!(a.torsion, vec![3]);
    }

    #[test]
    fn trivial_presentation_is_trivial() {
        let p = Presentation::parse("gens: a b; rels: a b").unwrap();
        let v = is_trivial(&p, EnumerationBounds::default()).unwrap();
        assert_eq!(v, TrivialityVerdict::Trivial);
    }

    #[test]
    fn z2_is_nontrivial_via_abelianization() {
        let p = Presentation::parse("gens: a; rels: a^2").unwrap();
        match is_trivial(&p, EnumerationBounds::default()).unwrap() {
            TrivialityVerdict::Nontrivial(NontrivialityWitness::Abelianization(a)) => {
                assert_eq!(a.free_rank, 0);
                assert_eq!(a.torsion, vec![2]);
            }
            other => panic!("unexpected verdict {other:?}"),
        }
    }

    #[test]
    fn trivial_verdict_implies_trivial_abelianization() {
        for text in [
            "gens: a b; rels: a b",
            "gens: a; rels: a",
            "gens: a b; rels: a*b [a,b] b^-1*a",
        ] {
            let p = Presentation::parse(text).unwrap();
            if is_trivial(&p, EnumerationBounds::default())
                .unwrap()
                .is_trivial()
            {
                assert!(abelianization(&p).is_trivial());
            }
        }
    }
}
