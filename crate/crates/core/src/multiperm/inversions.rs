//! The `iota` embedding into ordinary permutations, inversion sets and
//! inversion multisets.

use std::collections::BTreeMap;
use std::fmt;

use super::{CanonicalInvariant, Multipermutation, Symbol};

/// A permutation of `{1_1 < .. < 1_m < 2_1 < .. < n_m}` written as
/// `(symbol, copy)` pairs; copies of a symbol appear in increasing order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EmbeddedPermutation {
    m: usize,
    entries: Vec<(Symbol, u32)>,
}

impl EmbeddedPermutation {
    pub fn entries(&self) -> &[(Symbol, u32)] {
        &self.entries
    }

    pub fn multiplicity(&self) -> usize {
        self.m
    }

    /// Position of `symbol_copy` in the total order, 1-based.
    #[inline]
    pub fn rank_of(&self, (symbol, copy): (Symbol, u32)) -> usize {
        (symbol as usize - 1) * self.m + copy as usize
    }

    /// One-line notation over `1..=N`: entry `p` is the rank of the copy at `p`.
    pub fn ranks(&self) -> Vec<usize> {
        self.entries.iter().map(|&e| self.rank_of(e)).collect()
    }

    /// Inverse of [`EmbeddedPermutation::ranks`]; `None` if copies are out of order.
    pub fn from_ranks(ranks: &[usize], m: usize) -> Option<Self> {
        if m == 0 || !ranks.len().is_multiple_of(m) {
            return None;
        }
        let n = ranks.len() / m;
        let mut next_copy = vec![1u32; n + 1];
        let mut entries = Vec::with_capacity(ranks.len());
        for &r in ranks {
            if r == 0 || r > ranks.len() {
                return None;
            }
            let symbol = (r - 1) / m + 1;
            let copy = ((r - 1) % m + 1) as u32;
            if next_copy[symbol] != copy {
                return None;
            }
            next_copy[symbol] += 1;
            entries.push((symbol as Symbol, copy));
        }
        Some(Self { m, entries })
    }

    /// Drops the copy indices.
    pub fn to_multipermutation(&self) -> Multipermutation {
        let n = self.entries.len() / self.m;
        let word = self.entries.iter().map(|&(s, _)| s).collect();
        Multipermutation::from_parts_unchecked(n, self.m, word)
    }

    /// Pairs `(x, y)` with `x > y` in the total order and `x` placed before `y`.
    pub fn inversion_set(&self) -> InversionSet {
        let ranks = self.ranks();
        let mut set = InversionSet::empty(ranks.len(), self.m);
        for (p, &x) in ranks.iter().enumerate() {
            for &y in &ranks[p + 1..] {
                if x > y {
                    set.insert(x, y);
                }
            }
        }
        set
    }
}

impl fmt::Display for EmbeddedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, (s, c)) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{s}_{c}")?;
        }
        f.write_str(")")
    }
}

/// Set of inversions of a permutation of `N` ordered elements, one bit per
/// pair `(x, y)`, `x > y`, at index `(x-1)(x-2)/2 + (y-1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct InversionSet {
    size: usize,
    m: usize,
    bits: Vec<u64>,
}

impl InversionSet {
    fn empty(size: usize, m: usize) -> Self {
        let pairs = size * size.saturating_sub(1) / 2;
        Self {
            size,
            m,
            bits: vec![0; pairs.div_ceil(64)],
        }
    }

    #[inline]
    fn index(x: usize, y: usize) -> usize {
        debug_assert!(x > y && y >= 1);
        (x - 1) * (x - 2) / 2 + (y - 1)
    }

    fn insert(&mut self, x: usize, y: usize) {
        let i = Self::index(x, y);
        self.bits[i / 64] |= 1 << (i % 64);
    }

    /// Whether the pair of ranks `(x, y)`, `x > y`, is an inversion.
    pub fn contains_ranks(&self, x: usize, y: usize) -> bool {
        if x <= y || x > self.size || y == 0 {
            return false;
        }
        let i = Self::index(x, y);
        self.bits[i / 64] & (1 << (i % 64)) != 0
    }

    /// Whether `(x_sym _ x_copy, y_sym _ y_copy)` is an inversion.
    pub fn contains(&self, x: (Symbol, u32), y: (Symbol, u32)) -> bool {
        let rank = |(s, c): (Symbol, u32)| (s as usize - 1) * self.m + c as usize;
        self.contains_ranks(rank(x), rank(y))
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    /// Subset test; sets over different ground sets are never comparable.
    pub fn is_subset(&self, other: &Self) -> bool {
        self.size == other.size
            && self.m == other.m
            && self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }

    /// Inversions as `((symbol, copy), (symbol, copy))`, larger element first.
    pub fn pairs(&self) -> Vec<((Symbol, u32), (Symbol, u32))> {
        let decode = |r: usize| {
            (
                ((r - 1) / self.m + 1) as Symbol,
                ((r - 1) % self.m + 1) as u32,
            )
        };
        let mut out = Vec::new();
        for x in 2..=self.size {
            for y in 1..x {
                if self.contains_ranks(x, y) {
                    out.push((decode(x), decode(y)));
                }
            }
        }
        out
    }
}

/// Multiplicities `a_ij` of inversions `(j, i)`, `i < j`: the number of copies
/// of `j` placed before copies of `i`. Zero entries are not stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct InversionMultiset {
    // keyed by (i, j) with i < j, for (j, i)-inversions
    counts: BTreeMap<(Symbol, Symbol), usize>,
}

impl InversionMultiset {
    /// Builds from `((j, i), multiplicity)` entries.
    pub fn from_entries<I: IntoIterator<Item = ((Symbol, Symbol), usize)>>(entries: I) -> Self {
        let mut counts = BTreeMap::new();
        for ((j, i), a) in entries {
            assert!(j > i, "inversion ({j},{i}) must have j > i");
            if a > 0 {
                *counts.entry((i, j)).or_insert(0) += a;
            }
        }
        Self { counts }
    }

    /// Multiplicity of the inversion `(j, i)`.
    pub fn get(&self, j: Symbol, i: Symbol) -> usize {
        self.counts.get(&(i.min(j), i.max(j))).copied().unwrap_or(0)
    }

    /// `((j, i), a_ij)` entries, ordered by `i` then `j`.
    pub fn entries(&self) -> impl Iterator<Item = ((Symbol, Symbol), usize)> + '_ {
        self.counts.iter().map(|(&(i, j), &a)| ((j, i), a))
    }

    /// Total count with multiplicity.
    pub fn total(&self) -> usize {
        self.counts.values().sum()
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.counts
            .iter()
            .all(|(key, &a)| other.counts.get(key).is_some_and(|&b| a <= b))
    }
}

impl fmt::Display for InversionMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (idx, ((j, i), a)) in self.entries().enumerate() {
            if idx > 0 {
                f.write_str(", ")?;
            }
            write!(f, "({j},{i})^{a}")?;
        }
        f.write_str("}")
    }
}

/// Tags the `r`-th occurrence of each symbol with `r`. Works for any word,
/// including ones with uneven multiplicities.
pub fn index_occurrences(word: &[Symbol]) -> Vec<(Symbol, u32)> {
    let mut seen = std::collections::HashMap::new();
    word.iter()
        .map(|&s| {
            let r = seen.entry(s).or_insert(0u32);
            *r += 1;
            (s, *r)
        })
        .collect()
}

impl Multipermutation {
    /// Replaces the `r`-th occurrence of symbol `i` by `i_r`.
    pub fn iota(&self) -> EmbeddedPermutation {
        EmbeddedPermutation {
            m: self.m,
            entries: index_occurrences(&self.word),
        }
    }

    /// Inversion multiset of the word as written (no canonicalization).
    pub fn inversion_multiset(&self) -> InversionMultiset {
        let mut seen = vec![0usize; self.n + 1];
        let mut counts = BTreeMap::new();
        for &s in &self.word {
            for (j, &c) in seen.iter().enumerate().skip(s as usize + 1) {
                if c > 0 {
                    *counts.entry((s, j as Symbol)).or_insert(0) += c;
                }
            }
            seen[s as usize] += 1;
        }
        InversionMultiset { counts }
    }

    /// Number of pairs of positions holding a larger symbol before a smaller one.
    pub fn inversion_count(&self) -> usize {
        let mut seen = vec![0usize; self.n + 1];
        let mut total = 0;
        for &s in &self.word {
            total += seen[s as usize + 1..].iter().sum::<usize>();
            seen[s as usize] += 1;
        }
        total
    }
}

impl CanonicalInvariant {
    pub fn inversion_multiset(&self) -> InversionMultiset {
        self.as_multipermutation().inversion_multiset()
    }
}
