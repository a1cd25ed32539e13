//! Exact signatures of non-degenerate symmetric forms.
//!
//! The form is diagonalized by congruence over the rationals; no floating
//! point is involved.

use super::{IntLattice, LatticeError};
use num::rational::BigRational;
use num::{BigInt, Signed, Zero};

/// Parity of an integral form: even iff every vector has even square,
/// equivalently iff every diagonal gram entry is even.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

impl std::fmt::Display for Parity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Parity::Even => write!(f, "even"),
            Parity::Odd => write!(f, "odd"),
        }
    }
}

/// Signature (positive minus negative inertia index) and parity of a
/// non-degenerate lattice.
pub fn signature_and_parity(l: &IntLattice) -> Result<(i64, Parity), LatticeError> {
    if l.determinant() == 0 {
        return Err(LatticeError::Degenerate(l.name().to_string()));
    }
    let n = l.rank();
    let mut a: Vec<Vec<BigRational>> = l
        .gram()
        .iter()
        .map(|row| {
            row.iter()
                .map(|&x| BigRational::from(BigInt::from(x)))
                .collect()
        })
        .collect();

    let mut pos = 0i64;
    let mut neg = 0i64;
    for t in 0..n {
        if a[t][t].is_zero() {
            // A zero diagonal pivot in a non-degenerate form always has a
            // nonzero off-diagonal partner; folding the partner row in makes
            // the pivot nonzero.
            let j = (t + 1..n)
                .find(|&j| !a[t][j].is_zero())
                .ok_or_else(|| LatticeError::Degenerate(l.name().to_string()))?;
            let two = BigRational::from(BigInt::from(2));
            let plus = &two * &a[t][j] + &a[j][j];
            let sign: BigInt = if plus.is_zero() {
                BigInt::from(-1)
            } else {
                BigInt::from(1)
            };
            let s = BigRational::from(sign);
            for k in 0..n {
                let add = &s * &a[j][k];
                a[t][k] += add;
            }
            for row in a.iter_mut() {
                let add = &s * &row[j];
                row[t] += add;
            }
        }
        let pivot = a[t][t].clone();
        if pivot.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        for i in t + 1..n {
            if a[i][t].is_zero() {
                continue;
            }
            let f = &a[i][t] / &pivot;
            for k in 0..n {
                let sub = &f * &a[t][k];
                a[i][k] -= sub;
            }
            for row in a.iter_mut() {
                let sub = &f * &row[t];
                row[i] -= sub;
            }
        }
    }

    let parity = if l.gram().iter().enumerate().all(|(i, r)| r[i] % 2 == 0) {
        Parity::Even
    } else {
        Parity::Odd
    };
    Ok((pos - neg, parity))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::FormBlock;

    #[test]
    fn hyperbolic_pair_is_even_signature_zero() {
        let h = IntLattice::from_blocks("H", vec![FormBlock::Hyperbolic], vec!["u", "v"]).unwrap();
        assert_eq!(signature_and_parity(&h).unwrap(), (0, Parity::Even));
    }

    #[test]
    fn odd_diagonal_form() {
        let blocks = vec![
            FormBlock::Diag(1),
            FormBlock::Diag(-1),
            FormBlock::Diag(-1),
            FormBlock::Diag(-1),
            FormBlock::Diag(-1),
            FormBlock::Diag(-1),
        ];
        let labels: Vec<String> = (0..6).map(|i| format!("e{i}")).collect();
        let l = IntLattice::from_blocks("L", blocks, labels).unwrap();
        assert_eq!(signature_and_parity(&l).unwrap(), (-4, Parity::Odd));
    }

    #[test]
    fn degenerate_forms_are_rejected() {
        let l = IntLattice::new("D", vec![vec![0, 0], vec![0, 1]], vec!["a", "b"]).unwrap();
        assert!(matches!(
            signature_and_parity(&l),
            Err(LatticeError::Degenerate(_))
        ));
    }

    #[test]
    fn dense_indefinite_form() {
        // Congruent to H ⊕ ⟨-1⟩ ⊕ ⟨-1⟩ up to basis change; signature -2, odd.
        let gram = vec![
            vec![0, 1, 0, 1],
            vec![1, 0, 0, 0],
            vec![0, 0, -1, 0],
            vec![1, 0, 0, -1],
        ];
        let l = IntLattice::new("M", gram, vec!["a", "b", "c", "d"]).unwrap();
        assert_eq!(signature_and_parity(&l).unwrap(), (-2, Parity::Odd));
    }
}
