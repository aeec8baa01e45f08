//! Reduced words in a finitely generated free group.
//!
//! Generators are indexed `0..n`; a word stores signed 1-based letters
//! (`+k` for `x_k`, `-k` for `x_k^{-1}`) in freely reduced form. Words are
//! the images of generators under braid automorphisms and the relators of
//! the group presentations built downstream.

use std::fmt;

/// A freely reduced word in the free group on `x_1, x_2, ...`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word {
    letters: Vec<i32>,
}

impl Word {
    /// The empty word.
    pub fn identity() -> Self {
        Word { letters: Vec::new() }
    }

    /// The generator `x_i` (zero-based `i`).
    pub fn gen(i: usize) -> Self {
        Word {
            letters: vec![i as i32 + 1],
        }
    }

    /// The inverse generator `x_i^{-1}` (zero-based `i`).
    pub fn gen_inv(i: usize) -> Self {
        Word {
            letters: vec![-(i as i32 + 1)],
        }
    }

    /// Build from signed 1-based letters, freely reducing.
    pub fn from_letters(letters: impl IntoIterator<Item = i32>) -> Self {
        let mut out: Vec<i32> = Vec::new();
        for l in letters {
            assert!(l != 0, "letters are nonzero signed indices");
            if out.last().is_some_and(|&last| last == -l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word { letters: out }
    }

    /// The reduced letters (signed, 1-based).
    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    /// Word length after free reduction.
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    /// True for the empty word.
    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    /// Concatenation (with free reduction at the seam).
    pub fn mul(&self, rhs: &Word) -> Word {
        let mut out = self.letters.clone();
        for &l in &rhs.letters {
            if out.last().is_some_and(|&last| last == -l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word { letters: out }
    }

    /// Inverse word.
    pub fn inv(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|&l| -l).collect(),
        }
    }

    /// Conjugate `b^{-1} * self * b`.
    pub fn conjugate(&self, b: &Word) -> Word {
        b.inv().mul(self).mul(b)
    }

    /// Commutator `[self, b] = self * b * self^{-1} * b^{-1}`.
    pub fn commutator(&self, b: &Word) -> Word {
        self.mul(b).mul(&self.inv()).mul(&b.inv())
    }

    /// Apply the endomorphism sending `x_i` to `images[i]`.
    pub fn substitute(&self, images: &[Word]) -> Word {
        let mut out = Word::identity();
        for &l in &self.letters {
            let idx = (l.unsigned_abs() as usize) - 1;
            assert!(idx < images.len(), "letter outside generator range");
            if l > 0 {
                out = out.mul(&images[idx]);
            } else {
                out = out.mul(&images[idx].inv());
            }
        }
        out
    }

    /// Exponent-sum vector in `Z^n` (the image in the abelianization).
    pub fn abelianize(&self, n: usize) -> Vec<i64> {
        let mut v = vec![0i64; n];
        for &l in &self.letters {
            let idx = (l.unsigned_abs() as usize) - 1;
            assert!(idx < n, "letter outside generator range");
            v[idx] += l.signum() as i64;
        }
        v
    }

    /// Largest 1-based generator index appearing (0 for the empty word).
    pub fn max_generator(&self) -> usize {
        self.letters
            .iter()
            .map(|l| l.unsigned_abs() as usize)
            .max()
            .unwrap_or(0)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let mut parts = Vec::new();
        for &l in &self.letters {
            if l > 0 {
                parts.push(format!("x{l}"));
            } else {
                parts.push(format!("x{}^-1", -l));
            }
        }
        write!(f, "{}", parts.join(" "))
    }
}

/// The identity endomorphism of the free group on `n` generators, as the
/// list of generator images.
pub fn identity_images(n: usize) -> Vec<Word> {
    (0..n).map(Word::gen).collect()
}

/// Compose endomorphisms given by generator images: the result sends
/// `x_i` to `second(first(x_i))`.
pub fn compose_images(first: &[Word], second: &[Word]) -> Vec<Word> {
    first.iter().map(|w| w.substitute(second)).collect()
}
