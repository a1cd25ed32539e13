//! Free words over a generating set.
//!
//! A word is a flat sequence of signed letters: letter `+(k+1)` is generator
//! `k`, letter `-(k+1)` is its inverse. Powers are always stored expanded,
//! which keeps relator scanning in the coset enumerator trivial.

use serde::{Deserialize, Serialize};
use std::fmt;

/// A word in a free group, stored as signed generator indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Word(Vec<i32>);

impl Word {
    /// The empty word.
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// Single-letter word for generator `index`.
    pub fn generator(index: usize) -> Self {
        Word(vec![index as i32 + 1])
    }

    /// Builds a word from `(generator index, sign)` pairs. Signs must be ±1.
    pub fn from_letters<I: IntoIterator<Item = (usize, i8)>>(letters: I) -> Self {
        Word(
            letters
                .into_iter()
                .map(|(g, s)| {
                    assert!(s == 1 || s == -1, "letter sign must be ±1");
                    (g as i32 + 1) * s as i32
                })
                .collect(),
        )
    }

    pub(crate) fn from_signed(letters: Vec<i32>) -> Self {
        assert!(letters.iter().all(|&l| l != 0));
        Word(letters)
    }

    pub(crate) fn signed_letters(&self) -> &[i32] {
        &self.0
    }

    /// Iterates over `(generator index, sign)` pairs.
    pub fn letters(&self) -> impl Iterator<Item = (usize, i8)> + '_ {
        self.0
            .iter()
            .map(|&l| ((l.unsigned_abs() as usize) - 1, if l > 0 { 1 } else { -1 }))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Largest generator index used, if any.
    pub fn max_generator(&self) -> Option<usize> {
        self.0.iter().map(|l| l.unsigned_abs() as usize - 1).max()
    }

    /// Concatenation without free reduction.
    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// The inverse word (letters reversed and flipped).
    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|&l| -l).collect())
    }

    /// `self` raised to an integer power, expanded letter by letter.
    pub fn pow(&self, exponent: i32) -> Word {
        let base = if exponent < 0 {
            self.inverse()
        } else {
            self.clone()
        };
        let mut v = Vec::with_capacity(self.0.len() * exponent.unsigned_abs() as usize);
        for _ in 0..exponent.unsigned_abs() {
            v.extend_from_slice(&base.0);
        }
        Word(v)
    }

    /// The commutator `a·b·a⁻¹·b⁻¹`, unreduced.
    pub fn commutator(a: &Word, b: &Word) -> Word {
        a.concat(b).concat(&a.inverse()).concat(&b.inverse())
    }

    /// Unique freely reduced form: adjacent `g·g⁻¹` pairs cancelled until
    /// none remain.
    pub fn free_reduce(&self) -> Word {
        let mut stack: Vec<i32> = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            if stack.last() == Some(&-l) {
                stack.pop();
            } else {
                stack.push(l);
            }
        }
        Word(stack)
    }

    pub fn is_freely_reduced(&self) -> bool {
        self.0.windows(2).all(|w| w[0] != -w[1])
    }

    /// Freely reduces, then strips matching first/last letters so the result
    /// is a shortest representative of the conjugacy class.
    pub fn cyclically_reduce(&self) -> Word {
        let mut v = self.free_reduce().0;
        while v.len() >= 2 && v[0] == -v[v.len() - 1] {
            v.pop();
            v.remove(0);
        }
        Word(v)
    }

    /// Exponent sum of each of the first `gen_count` generators.
    pub fn exponent_sums(&self, gen_count: usize) -> Vec<i64> {
        let mut sums = vec![0i64; gen_count];
        for (g, s) in self.letters() {
            if g < gen_count {
                sums[g] += s as i64;
            }
        }
        sums
    }
}

impl fmt::Display for Word {
    /// Debug-oriented rendering with numeric generator names `g0, g1, …`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "1");
        }
        for (i, (g, s)) in self.letters().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            write!(f, "g{}", g)?;
            if s < 0 {
                write!(f, "^-1")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(letters: &[i32]) -> Word {
        Word::from_signed(letters.to_vec())
    }

    #[test]
    fn reduce_cancels_adjacent_inverses() {
        // a·a⁻¹ → empty
        assert_eq!(w(&[1, -1]).free_reduce(), Word::empty());
        // a·b·b⁻¹·a → a·a
        assert_eq!(w(&[1, 2, -2, 1]).free_reduce(), w(&[1, 1]));
        // empty → empty
        assert_eq!(Word::empty().free_reduce(), Word::empty());
    }

    #[test]
    fn reduce_handles_nested_cancellation() {
        // a·b·b⁻¹·a⁻¹ collapses fully
        assert_eq!(w(&[1, 2, -2, -1]).free_reduce(), Word::empty());
    }

    #[test]
    fn cyclic_reduction_strips_conjugation() {
        // a·b·a⁻¹ → b
        assert_eq!(w(&[1, 2, -1]).cyclically_reduce(), w(&[2]));
        assert_eq!(w(&[1, 2]).cyclically_reduce(), w(&[1, 2]));
    }

    #[test]
    fn commutator_and_pow_expand() {
        let a = Word::generator(0);
        let b = Word::generator(1);
        let c = Word::commutator(&a, &b);
        assert_eq!(c, w(&[1, 2, -1, -2]));
        assert_eq!(c.pow(2).len(), 8);
        assert_eq!(c.pow(-1), w(&[2, 1, -2, -1]));
        assert_eq!(a.pow(0), Word::empty());
    }

    #[test]
    fn exponent_sums_count_signs() {
        let u = w(&[1, 1, -2, 1, -1]);
        assert_eq!(u.exponent_sums(2), vec![2, -1]);
    }
}
