//! Braid words and their action on the free group.
//!
//! A braid on `n` strands is stored as a word in the elementary generators
//! `s_1, ..., s_{n-1}` (signed 1-based letters). The action on the free
//! group `F_n = <x_1, ..., x_n>` is the pinned convention
//!
//! ```text
//! s_i:      x_i -> x_i x_{i+1} x_i^{-1},   x_{i+1} -> x_i
//! s_i^{-1}: x_i -> x_{i+1},                x_{i+1} -> x_{i+1}^{-1} x_i x_{i+1}
//! ```
//!
//! with all other generators fixed, and words act letter-by-letter from the
//! left: the action of `b1 b2` is (action of `b2`) composed after (action of
//! `b1`). Under this convention every braid fixes the product
//! `x_1 x_2 ... x_n`.
//!
//! The pure-braid generators `A_{rs}` (full twist of strands `r < s`, passing
//! in front of the intermediate strands) and full twists `A_I` of a block of
//! strands are provided, together with an independent closed form for the
//! `A_{rs}` action used as a cross-check.

use crate::word::{compose_images, identity_images, Word};

/// A braid word on `n` strands: signed 1-based elementary letters
/// (`+i` = `s_i`, `-i` = `s_i^{-1}`), `1 <= i < n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    /// The empty braid word.
    pub fn identity(strands: usize) -> Self {
        BraidWord {
            strands,
            letters: Vec::new(),
        }
    }

    /// Build from signed elementary letters.
    pub fn from_letters(strands: usize, letters: impl IntoIterator<Item = i32>) -> Self {
        let letters: Vec<i32> = letters.into_iter().collect();
        for &l in &letters {
            let i = l.unsigned_abs() as usize;
            assert!(l != 0 && i < strands, "elementary index out of range");
        }
        BraidWord { strands, letters }
    }

    /// Number of strands.
    pub fn strands(&self) -> usize {
        self.strands
    }

    /// The letters (signed, 1-based elementary indices).
    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    /// Concatenation.
    pub fn mul(&self, rhs: &BraidWord) -> BraidWord {
        assert_eq!(self.strands, rhs.strands);
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&rhs.letters);
        BraidWord {
            strands: self.strands,
            letters,
        }
    }

    /// Inverse braid word.
    pub fn inv(&self) -> BraidWord {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|&l| -l).collect(),
        }
    }

    /// Conjugate `d^{-1} * self * d`.
    pub fn conjugate(&self, d: &BraidWord) -> BraidWord {
        d.inv().mul(self).mul(d)
    }

    /// Generator images of the induced free-group automorphism.
    pub fn action(&self) -> Vec<Word> {
        let mut images = identity_images(self.strands);
        for &l in &self.letters {
            let step = elementary_images(self.strands, l);
            // Prefix action already computed; the new letter acts afterwards,
            // so rewrite every current image through the letter's images.
            images = compose_images(&images, &step);
        }
        images
    }

    /// Apply the induced automorphism to a word.
    pub fn apply(&self, w: &Word) -> Word {
        w.substitute(&self.action())
    }
}

/// Images of `x_1..x_n` under a single elementary letter.
fn elementary_images(n: usize, letter: i32) -> Vec<Word> {
    let i = (letter.unsigned_abs() as usize) - 1; // zero-based strand
    let mut images = identity_images(n);
    if letter > 0 {
        // x_i -> x_i x_{i+1} x_i^{-1}, x_{i+1} -> x_i.
        images[i] = Word::gen(i).mul(&Word::gen(i + 1)).mul(&Word::gen_inv(i));
        images[i + 1] = Word::gen(i);
    } else {
        // x_i -> x_{i+1}, x_{i+1} -> x_{i+1}^{-1} x_i x_{i+1}.
        images[i] = Word::gen(i + 1);
        images[i + 1] = Word::gen_inv(i + 1).mul(&Word::gen(i)).mul(&Word::gen(i + 1));
    }
    images
}

/// The pure-braid generator `A_{rs}` (1-based `r < s <= n`):
/// `(s_{s-1} ... s_{r+1}) s_r^2 (s_{r+1}^{-1} ... s_{s-1}^{-1})`.
pub fn pure_generator(n: usize, r: usize, s: usize) -> BraidWord {
    assert!(1 <= r && r < s && s <= n, "need 1 <= r < s <= n");
    let mut letters: Vec<i32> = Vec::new();
    for k in ((r + 1)..s).rev() {
        letters.push(k as i32);
    }
    letters.push(r as i32);
    letters.push(r as i32);
    for k in (r + 1)..s {
        letters.push(-(k as i32));
    }
    BraidWord::from_letters(n, letters)
}

/// The full twist `A_I` of a set of strands: the product of `A_{j,i}` over
/// pairs `j < i` in `I`, taken with `i` ascending and `j` ascending within
/// each `i` (so `A_{2,3,4} = A_{2,3} A_{2,4} A_{3,4}`).
pub fn full_twist(n: usize, block: &[usize]) -> BraidWord {
    let mut sorted = block.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let mut w = BraidWord::identity(n);
    for (bi, &i) in sorted.iter().enumerate() {
        for &j in &sorted[..bi] {
            w = w.mul(&pure_generator(n, j, i));
        }
    }
    w
}

/// Closed form for the action of `A_{rs}` (independent of the word
/// expansion), used as a cross-check:
///
/// * `x_i` fixed for `i < r` or `i > s`;
/// * `x_r -> (x_r x_s) x_r (x_r x_s)^{-1}`;
/// * `x_s -> x_r x_s x_r^{-1}`;
/// * `x_i -> [x_r, x_s] x_i [x_r, x_s]^{-1}` for `r < i < s`.
pub fn pure_generator_action_closed_form(n: usize, r: usize, s: usize) -> Vec<Word> {
    assert!(1 <= r && r < s && s <= n);
    let xr = Word::gen(r - 1);
    let xs = Word::gen(s - 1);
    let rs = xr.mul(&xs);
    let comm = xr.commutator(&xs);
    let mut images = identity_images(n);
    for i in 1..=n {
        if i == r {
            images[i - 1] = rs.mul(&xr).mul(&rs.inv());
        } else if i == s {
            images[i - 1] = xr.mul(&xs).mul(&xr.inv());
        } else if r < i && i < s {
            images[i - 1] = comm.mul(&Word::gen(i - 1)).mul(&comm.inv());
        }
    }
    images
}
