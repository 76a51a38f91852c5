//! Braid words and permutations.
//!
//! Strand bookkeeping follows one convention throughout the crate: the
//! permutation of a braid word sends a strand's start position to its end
//! position, and appending a letter `±i` post-composes with the adjacent
//! transposition `s_i`, i.e. `perm(w·σ_i^±1) = s_i ∘ perm(w)`.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use rand::Rng;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A permutation of `{1..n}`, stored 0-based together with its inverse.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    image: Vec<usize>,
    inv: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { image: (0..n).collect(), inv: (0..n).collect() }
    }

    fn from_image0(image: Vec<usize>) -> Self {
        let mut inv = vec![0; image.len()];
        for (i, &j) in image.iter().enumerate() {
            inv[j] = i;
        }
        Permutation { image, inv }
    }

    /// From one-line notation `[π(1), …, π(n)]` (1-based).
    pub fn from_one_line(one_line: &[usize]) -> Result<Self> {
        let n = one_line.len();
        let mut seen = vec![false; n];
        for &x in one_line {
            if x == 0 || x > n || seen[x - 1] {
                return Err(Error::InvalidPermutation(format!("{one_line:?} is not a bijection of 1..{n}")));
            }
            seen[x - 1] = true;
        }
        Ok(Self::from_image0(one_line.iter().map(|&x| x - 1).collect()))
    }

    /// All permutations of `{1..n}` in lexicographic order of one-line images.
    pub fn all(n: usize) -> Vec<Permutation> {
        (0..n).permutations(n).map(Self::from_image0).collect()
    }

    pub fn n(&self) -> usize {
        self.image.len()
    }

    /// `π(i)` for 1-based `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.image[i - 1] + 1
    }

    /// `π^{-1}(j)` for 1-based `j`: the position holding value `j`.
    pub fn position_of(&self, j: usize) -> usize {
        self.inv[j - 1] + 1
    }

    pub fn one_line(&self) -> Vec<usize> {
        self.image.iter().map(|&x| x + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn inverse(&self) -> Self {
        Permutation { image: self.inv.clone(), inv: self.image.clone() }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.n() != other.n() {
            return Err(Error::StrandMismatch(self.n(), other.n()));
        }
        Ok(Self::from_image0(other.image.iter().map(|&x| self.image[x]).collect()))
    }

    /// `s_i ∘ π`: swaps the values `i` and `i+1` in the one-line image.
    pub fn left_mul_simple(&self, i: usize) -> Self {
        let mut p = self.clone();
        let (a, b) = (p.inv[i - 1], p.inv[i]);
        p.image.swap(a, b);
        p.inv.swap(i - 1, i);
        p
    }

    /// Whether `ℓ(s_i ∘ π) < ℓ(π)`, i.e. value `i+1` sits left of value `i`.
    pub fn has_left_descent(&self, i: usize) -> bool {
        self.inv[i] < self.inv[i - 1]
    }

    pub fn inversions(&self) -> usize {
        let n = self.n();
        (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.image[i] > self.image[j])
            .count()
    }

    /// A reduced word `(i_1, …, i_k)` with `s_{i_k} ∘ … ∘ s_{i_1} = π`.
    ///
    /// Deterministic: repeatedly clear the smallest left descent of π, then
    /// read the clearing sequence backwards.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut p = self.clone();
        let mut clearing = Vec::with_capacity(self.inversions());
        while let Some(i) = (1..p.n()).find(|&i| p.has_left_descent(i)) {
            p = p.left_mul_simple(i);
            clearing.push(i);
        }
        clearing.reverse();
        clearing
    }

    /// The permutation of `{1..n-1}` obtained by dropping a fixed point `n`.
    pub fn restrict(&self) -> Option<Self> {
        let n = self.n();
        if n == 0 || self.image[n - 1] != n - 1 {
            return None;
        }
        Some(Self::from_image0(self.image[..n - 1].to_vec()))
    }

    pub fn cycle_count(&self) -> usize {
        let mut seen = vec![false; self.n()];
        let mut count = 0;
        for start in 0..self.n() {
            if seen[start] {
                continue;
            }
            count += 1;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.image[i];
            }
        }
        count
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.one_line().iter().join(","))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Accepts `[3,1,2]`, `3,1,2` or `3 1 2`.
impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('[').trim_end_matches(']');
        let one_line = body
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<usize>().map_err(|_| Error::Parse(format!("bad permutation entry {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::from_one_line(&one_line)
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.one_line().serialize(serializer)
    }
}

/// A word in the generators `σ_1^±1, …, σ_{n-1}^±1`. Letter `i > 0` is
/// `σ_i`, letter `-i` is `σ_i^{-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BraidWord {
    n: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(n: usize, letters: Vec<i32>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Parse("a braid needs at least one strand".into()));
        }
        for &l in &letters {
            if l == 0 || l.unsigned_abs() as usize >= n {
                return Err(Error::LetterOutOfRange { letter: l as i64, n });
            }
        }
        Ok(BraidWord { n, letters })
    }

    pub fn empty(n: usize) -> Self {
        BraidWord { n: n.max(1), letters: Vec::new() }
    }

    /// Whitespace-separated signed integers, e.g. `"-1 2"`.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let letters = text
            .split_whitespace()
            .map(|t| match t.parse::<i64>() {
                Ok(0) => Err(Error::Parse("braid letter 0".into())),
                Ok(x) if x.unsigned_abs() as usize >= n => Err(Error::LetterOutOfRange { letter: x, n }),
                Ok(x) => Ok(x as i32),
                Err(_) => Err(Error::Parse(format!("bad braid letter {t:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, letters)
    }

    /// Uniform length in `0..=max_len`, uniform nonzero letters.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, n: usize, max_len: usize, positive: bool) -> Self {
        if n < 2 {
            return Self::empty(n);
        }
        let len = rng.gen_range(0..=max_len);
        let letters = (0..len)
            .map(|_| {
                let i = rng.gen_range(1..n as i32);
                if positive || rng.gen_bool(0.5) { i } else { -i }
            })
            .collect();
        BraidWord { n, letters }
    }

    /// Every word of length at most `max_len`, shortest first.
    pub fn all_words(n: usize, max_len: usize, positive: bool) -> Vec<Self> {
        let alphabet: Vec<i32> =
            (1..n as i32).flat_map(|i| if positive { vec![i] } else { vec![i, -i] }).collect();
        let mut out = vec![Self::empty(n)];
        let mut layer = vec![Vec::new()];
        for _ in 0..max_len {
            layer = layer
                .iter()
                .flat_map(|w: &Vec<i32>| alphabet.iter().map(move |&l| [w.as_slice(), &[l]].concat()))
                .collect();
            out.extend(layer.iter().map(|w| BraidWord { n: n.max(1), letters: w.clone() }));
        }
        out
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_positive(&self) -> bool {
        self.letters.iter().all(|&l| l > 0)
    }

    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|&l| l.signum() as i64).sum()
    }

    /// Letters in reverse order, signs kept: `β ↦ β*`.
    pub fn star(&self) -> Self {
        BraidWord { n: self.n, letters: self.letters.iter().rev().copied().collect() }
    }

    pub fn inverse(&self) -> Self {
        BraidWord { n: self.n, letters: self.letters.iter().rev().map(|&l| -l).collect() }
    }

    pub fn concat(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::StrandMismatch(self.n, other.n));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord { n: self.n, letters })
    }

    /// The same word viewed in `B_m`, `m ≥ n`.
    pub fn embed(&self, m: usize) -> Result<Self> {
        if m < self.n {
            return Err(Error::StrandMismatch(self.n, m));
        }
        Ok(BraidWord { n: m, letters: self.letters.clone() })
    }

    /// Markov stabilization `w ↦ w·σ_n^±1` in `B_{n+1}`.
    pub fn stabilize(&self, positive: bool) -> Self {
        let mut letters = self.letters.clone();
        let s = self.n as i32;
        letters.push(if positive { s } else { -s });
        BraidWord { n: self.n + 1, letters }
    }

    pub fn perm(&self) -> Permutation {
        self.letters
            .iter()
            .fold(Permutation::identity(self.n), |p, &l| p.left_mul_simple(l.unsigned_abs() as usize))
    }

    /// Positive (or, with `positive = false`, negative) lift of the
    /// canonical reduced word of `π`.
    pub fn permutation_braid(pi: &Permutation, positive: bool) -> Self {
        let letters = pi
            .reduced_word()
            .into_iter()
            .map(|i| if positive { i as i32 } else { -(i as i32) })
            .collect();
        BraidWord { n: pi.n().max(1), letters }
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letters.iter().join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn perm(xs: &[usize]) -> Permutation {
        Permutation::from_one_line(xs).unwrap()
    }

    #[test]
    fn parse_examples() {
        assert_eq!(BraidWord::parse("1 1 1", 2).unwrap().letters(), &[1, 1, 1]);
        assert_eq!(BraidWord::parse("-1 2", 3).unwrap().letters(), &[-1, 2]);
        assert!(matches!(BraidWord::parse("3", 3), Err(Error::LetterOutOfRange { .. })));
        assert!(matches!(BraidWord::parse("1 x", 3), Err(Error::Parse(_))));
        assert!(matches!(BraidWord::parse("0", 3), Err(Error::Parse(_))));
        assert!(BraidWord::parse("", 1).unwrap().is_empty());
    }

    #[test]
    fn star_and_inverse() {
        let w = BraidWord::parse("1 2 -1", 3).unwrap();
        assert_eq!(w.star().letters(), &[-1, 2, 1]);
        assert_eq!(w.inverse().letters(), &[1, -2, -1]);
        assert_eq!(BraidWord::parse("1 2", 3).unwrap().inverse().letters(), &[-2, -1]);
        assert_eq!(BraidWord::parse("-1", 2).unwrap().inverse().letters(), &[1]);
        assert!(BraidWord::empty(3).star().is_empty());
        assert_eq!(BraidWord::parse("1", 2).unwrap().star().letters(), &[1]);
    }

    #[test]
    fn perm_examples() {
        assert_eq!(BraidWord::parse("1", 2).unwrap().perm(), perm(&[2, 1]));
        assert_eq!(BraidWord::parse("1 2", 3).unwrap().perm(), perm(&[3, 1, 2]));
        assert_eq!(BraidWord::parse("1 1", 2).unwrap().perm(), perm(&[1, 2]));
    }

    #[test]
    fn reduced_word_examples() {
        assert!(perm(&[1, 2, 3]).reduced_word().is_empty());
        assert_eq!(perm(&[2, 1]).reduced_word(), vec![1]);
        assert_eq!(perm(&[3, 1, 2]).reduced_word(), vec![1, 2]);
        assert_eq!(perm(&[2, 3, 1]).reduced_word(), vec![2, 1]);
    }

    #[test]
    fn inversion_examples() {
        assert_eq!(perm(&[1, 2, 3]).inversions(), 0);
        assert_eq!(perm(&[2, 1]).inversions(), 1);
        assert_eq!(perm(&[3, 1, 2]).inversions(), 2);
    }

    #[test]
    fn permutation_text() {
        assert_eq!("[3,1,2]".parse::<Permutation>().unwrap().to_string(), "[3,1,2]");
        assert_eq!("3 1 2".parse::<Permutation>().unwrap(), perm(&[3, 1, 2]));
        assert!("[1,1]".parse::<Permutation>().is_err());
        assert!("[0,1]".parse::<Permutation>().is_err());
    }

    #[test]
    fn reduced_words_exhaustive() {
        for n in 1..=6 {
            for p in Permutation::all(n) {
                let rw = p.reduced_word();
                assert_eq!(rw.len(), p.inversions(), "{p}");
                let w = BraidWord::permutation_braid(&p, true);
                assert_eq!(w.perm(), p);
            }
        }
    }

    #[test]
    fn all_is_lexicographic() {
        let all = Permutation::all(4);
        assert_eq!(all.len(), 24);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    fn arb_word() -> impl Strategy<Value = BraidWord> {
        (2usize..6).prop_flat_map(|n| {
            let m = (n - 1) as i32;
            prop::collection::vec((1..=m, any::<bool>()), 0..12).prop_map(move |ls| {
                BraidWord::new(n, ls.into_iter().map(|(i, s)| if s { i } else { -i }).collect()).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn involutions(w in arb_word()) {
            prop_assert_eq!(w.star().star(), w.clone());
            prop_assert_eq!(w.inverse().inverse(), w.clone());
            prop_assert_eq!(w.inverse().perm(), w.perm().inverse());
            prop_assert_eq!(w.exponent_sum(), -w.inverse().exponent_sum());
        }

        #[test]
        fn perm_is_compositional(u in arb_word(), k in 0usize..12) {
            let cut = k.min(u.len());
            let a = BraidWord::new(u.n(), u.letters()[..cut].to_vec()).unwrap();
            let b = BraidWord::new(u.n(), u.letters()[cut..].to_vec()).unwrap();
            prop_assert_eq!(u.perm(), b.perm().compose(&a.perm()).unwrap());
        }
    }
}
