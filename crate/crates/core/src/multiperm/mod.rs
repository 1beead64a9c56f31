//! Multipermutations over `{1..n}` with uniform multiplicity `m`, their
//! canonical (orbit) representatives and the relabelling action.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

mod invariants;
mod inversions;

pub use invariants::{delta, f_k, g_k, phi, project};
pub use inversions::{index_occurrences, EmbeddedPermutation, InversionMultiset, InversionSet};

/// A symbol of a word. Symbols are 1-based.
pub type Symbol = u32;

/// A word over `{1..n}` in which every symbol occurs exactly `m` times.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawMultipermutation")]
pub struct Multipermutation {
    n: usize,
    m: usize,
    word: Vec<Symbol>,
}

#[derive(Deserialize)]
struct RawMultipermutation {
    n: usize,
    m: usize,
    word: Vec<Symbol>,
}

impl TryFrom<RawMultipermutation> for Multipermutation {
    type Error = Error;

    fn try_from(raw: RawMultipermutation) -> Result<Self> {
        Multipermutation::new(raw.n, raw.m, raw.word)
    }
}

impl Multipermutation {
    pub fn new(n: usize, m: usize, word: Vec<Symbol>) -> Result<Self> {
        if n == 0 || m == 0 {
            return Err(Error::InvalidWord(format!(
                "alphabet size and multiplicity must be positive (n={n}, m={m})"
            )));
        }
        if word.len() != n * m {
            return Err(Error::InvalidWord(format!(
                "expected {} letters for n={n}, m={m}, got {}",
                n * m,
                word.len()
            )));
        }
        let mut counts = vec![0usize; n + 1];
        for &s in &word {
            let s = s as usize;
            if s == 0 || s > n {
                return Err(Error::InvalidWord(format!("symbol {s} outside 1..={n}")));
            }
            counts[s] += 1;
        }
        if let Some(s) = (1..=n).find(|&s| counts[s] != m) {
            return Err(Error::InvalidWord(format!(
                "symbol {s} occurs {} times, expected {m}",
                counts[s]
            )));
        }
        Ok(Self { n, m, word })
    }

    /// Infers `n` as the largest symbol and `m` as `len / n`.
    pub fn from_word(word: Vec<Symbol>) -> Result<Self> {
        let n = word.iter().copied().max().unwrap_or(0) as usize;
        if n == 0 {
            return Err(Error::InvalidWord("empty word".into()));
        }
        if !word.len().is_multiple_of(n) {
            return Err(Error::InvalidWord(format!(
                "length {} is not a multiple of the alphabet size {n}",
                word.len()
            )));
        }
        let m = word.len() / n;
        Self::new(n, m, word)
    }

    /// `1 1 .. 2 2 .. n n`, the bottom of `L(m^n)`.
    pub fn identity(n: usize, m: usize) -> Self {
        let word = (1..=n as Symbol)
            .flat_map(|s| std::iter::repeat_n(s, m))
            .collect();
        Self { n, m, word }
    }

    pub(crate) fn from_parts_unchecked(n: usize, m: usize, word: Vec<Symbol>) -> Self {
        debug_assert!(Self::new(n, m, word.clone()).is_ok());
        Self { n, m, word }
    }

    pub fn alphabet_size(&self) -> usize {
        self.n
    }

    pub fn multiplicity(&self) -> usize {
        self.m
    }

    pub fn word(&self) -> &[Symbol] {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn same_shape(&self, other: &Self) -> bool {
        self.n == other.n && self.m == other.m
    }

    pub(crate) fn require_same_shape(&self, other: &Self) -> Result<()> {
        if self.same_shape(other) {
            Ok(())
        } else {
            Err(Error::ShapeMismatch(format!(
                "L({}^{}) vs L({}^{})",
                self.m, self.n, other.m, other.n
            )))
        }
    }

    /// Symbols in order of first occurrence (the permutation `tau_s`).
    pub fn first_occurrence_order(&self) -> Permutation {
        let mut seen = vec![false; self.n + 1];
        let mut order = Vec::with_capacity(self.n);
        for &s in &self.word {
            if !seen[s as usize] {
                seen[s as usize] = true;
                order.push(s as usize);
            }
        }
        Permutation(order)
    }

    /// Symbols at their `r`-th occurrence (1-based `r`), in word order.
    pub fn occurrence_subword(&self, r: usize) -> Vec<Symbol> {
        let mut seen = vec![0usize; self.n + 1];
        let mut out = Vec::with_capacity(self.n);
        for &s in &self.word {
            seen[s as usize] += 1;
            if seen[s as usize] == r {
                out.push(s);
            }
        }
        out
    }

    /// `true` if first occurrences appear as `1, 2, .., n`.
    pub fn is_canonical(&self) -> bool {
        let mut next = 1;
        for &s in &self.word {
            if s == next {
                next += 1;
            } else if s > next {
                return false;
            }
        }
        true
    }

    /// Applies `pi` letter by letter.
    pub fn relabel(&self, pi: &Permutation) -> Result<Self> {
        if pi.len() != self.n {
            return Err(Error::ShapeMismatch(format!(
                "permutation of {} symbols applied to a word over {} symbols",
                pi.len(),
                self.n
            )));
        }
        let word = self
            .word
            .iter()
            .map(|&s| pi.apply(s as usize) as Symbol)
            .collect();
        Ok(Self {
            n: self.n,
            m: self.m,
            word,
        })
    }

    /// Canonical representative of the relabelling orbit: `tau_s^-1 . s`.
    pub fn canonicalize(&self) -> CanonicalInvariant {
        let mut rename = vec![0 as Symbol; self.n + 1];
        let mut next = 0;
        let word = self
            .word
            .iter()
            .map(|&s| {
                let slot = &mut rename[s as usize];
                if *slot == 0 {
                    next += 1;
                    *slot = next;
                }
                *slot
            })
            .collect();
        CanonicalInvariant(Self {
            n: self.n,
            m: self.m,
            word,
        })
    }

    /// Weak (multinomial Newman) order: inversion-set containment after embedding.
    pub fn newman_leq(&self, other: &Self) -> Result<bool> {
        self.require_same_shape(other)?;
        Ok(self
            .iota()
            .inversion_set()
            .is_subset(&other.iota().inversion_set()))
    }
}

impl fmt::Display for Multipermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.word.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl FromStr for Multipermutation {
    type Err = Error;

    /// Whitespace-separated positive integers, e.g. `"1 2 1 3 3 2"`.
    fn from_str(s: &str) -> Result<Self> {
        let word = s
            .split_whitespace()
            .map(|tok| {
                tok.parse::<Symbol>()
                    .map_err(|_| Error::Parse(format!("`{tok}` is not a positive integer")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_word(word)
    }
}

/// A multipermutation whose first occurrences are `1, 2, .., n` in order.
///
/// Orbits under relabelling are always represented by this value.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Multipermutation", into = "Multipermutation")]
pub struct CanonicalInvariant(Multipermutation);

impl TryFrom<Multipermutation> for CanonicalInvariant {
    type Error = Error;

    fn try_from(s: Multipermutation) -> Result<Self> {
        if s.is_canonical() {
            Ok(Self(s))
        } else {
            Err(Error::NotCanonical(s.to_string()))
        }
    }
}

impl From<CanonicalInvariant> for Multipermutation {
    fn from(c: CanonicalInvariant) -> Self {
        c.0
    }
}

impl std::ops::Deref for CanonicalInvariant {
    type Target = Multipermutation;

    fn deref(&self) -> &Multipermutation {
        &self.0
    }
}

impl fmt::Display for CanonicalInvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl FromStr for CanonicalInvariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.parse::<Multipermutation>()?.try_into()
    }
}

impl CanonicalInvariant {
    pub fn as_multipermutation(&self) -> &Multipermutation {
        &self.0
    }

    pub fn into_inner(self) -> Multipermutation {
        self.0
    }

    /// Componentwise containment of inversion multisets.
    pub fn prec(&self, other: &Self) -> Result<bool> {
        self.require_same_shape(other)?;
        Ok(self
            .inversion_multiset()
            .is_subset(&other.inversion_multiset()))
    }

    /// Rank in the barcode lattice: total multiplicity of the inversion multiset.
    pub fn rank(&self) -> usize {
        self.0.inversion_count()
    }
}

/// A permutation of `{1..n}` in one-line notation: `i -> self.apply(i)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(one_line: Vec<usize>) -> Result<Self> {
        crate::barcode::check_permutation(&one_line, one_line.len())?;
        Ok(Self(one_line))
    }

    pub fn identity(n: usize) -> Self {
        Self((1..=n).collect())
    }

    /// Swaps the images of `a` and `b` in the identity.
    pub fn transposition(n: usize, a: usize, b: usize) -> Result<Self> {
        let mut v: Vec<usize> = (1..=n).collect();
        if a == 0 || b == 0 || a > n || b > n {
            return Err(Error::InvalidPermutation(format!(
                "transposition ({a} {b}) outside 1..={n}"
            )));
        }
        v.swap(a - 1, b - 1);
        Ok(Self(v))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.0[i - 1]
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (i, &p) in self.0.iter().enumerate() {
            inv[p - 1] = i + 1;
        }
        Self(inv)
    }

    /// `(self . other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Self) -> Self {
        Self(other.0.iter().map(|&i| self.apply(i)).collect())
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}
