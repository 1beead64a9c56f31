//! The power-k barcode lattice: canonical words of `L((2^k+1)^n)` ordered by
//! the multinomial Newman order, with covers, ranks, meets and joins.
//!
//! Elements are indexed in lexicographic order of their words, so indices,
//! DOT output and JSON output are stable across runs and thread counts.

use std::collections::VecDeque;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::barcode::MAX_LEVEL;
use crate::error::{Error, Result};
use crate::multiperm::{CanonicalInvariant, Multipermutation, Symbol};

/// Default cap on `n * (2^k + 1)`.
pub const DEFAULT_POSITION_CAP: usize = 16;

/// Default cap on the number of raw (non-canonical) words scanned when
/// checking the principal-ideal description.
pub const DEFAULT_RAW_WORD_CAP: u128 = 5_000_000;

/// Size guards for enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub position_cap: usize,
    pub raw_word_cap: u128,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            position_cap: DEFAULT_POSITION_CAP,
            raw_word_cap: DEFAULT_RAW_WORD_CAP,
        }
    }
}

/// `n` bars at level `k`; words have multiplicity `m = 2^k + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct LatticeSpec {
    n: usize,
    k: u32,
}

impl LatticeSpec {
    pub fn new(n: usize, k: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidWord(
                "lattice needs at least one symbol".into(),
            ));
        }
        if k > MAX_LEVEL {
            return Err(Error::TooLarge {
                positions: usize::MAX,
                cap: DEFAULT_POSITION_CAP,
            });
        }
        Ok(Self { n, k })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn m(&self) -> usize {
        (1usize << self.k) + 1
    }

    /// Word length `n(2^k+1)`.
    pub fn positions(&self) -> usize {
        self.n * self.m()
    }

    /// `(n m)! / (m!^n n!)`, or `None` on overflow.
    pub fn expected_size(&self) -> Option<u128> {
        let raw = multinomial(self.n, self.m())?;
        let mut fact: u128 = 1;
        for i in 2..=self.n as u128 {
            fact = fact.checked_mul(i)?;
        }
        Some(raw / fact)
    }

    /// `C(n,2) 2^k (2^k+1)`, the rank of the top element.
    pub fn max_rank(&self) -> usize {
        let steps = 1usize << self.k;
        self.n * (self.n - 1) / 2 * steps * (steps + 1)
    }

    fn check(&self, limits: &Limits) -> Result<()> {
        let positions = self.positions();
        if positions > limits.position_cap {
            return Err(Error::TooLarge {
                positions,
                cap: limits.position_cap,
            });
        }
        Ok(())
    }

    fn owns(&self, s: &CanonicalInvariant) -> bool {
        s.alphabet_size() == self.n && s.multiplicity() == self.m()
    }
}

/// Number of words with `n` symbols each repeated `m` times: `(nm)!/(m!)^n`.
fn multinomial(n: usize, m: usize) -> Option<u128> {
    let mut total: u128 = 1;
    let mut remaining = (n * m) as u128;
    for _ in 0..n {
        total = total.checked_mul(binomial(remaining, m as u128)?)?;
        remaining -= m as u128;
    }
    Some(total)
}

fn binomial(n: u128, k: u128) -> Option<u128> {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul(n - i)? / (i + 1);
    }
    Some(acc)
}

/// `1 2 .. n`, then `2^k` copies of `n`, `2^k` copies of `n-1`, .., `2^k` copies of 1.
pub fn top_element(spec: LatticeSpec) -> CanonicalInvariant {
    let rest = spec.m() - 1;
    let mut word: Vec<Symbol> = (1..=spec.n as Symbol).collect();
    for s in (1..=spec.n as Symbol).rev() {
        word.extend(std::iter::repeat_n(s, rest));
    }
    Multipermutation::from_parts_unchecked(spec.n, spec.m(), word)
        .try_into()
        .expect("top element is canonical")
}

/// All canonical words of the lattice in lexicographic order.
pub fn canonical_elements(spec: LatticeSpec, limits: &Limits) -> Result<Vec<CanonicalInvariant>> {
    spec.check(limits)?;
    let (n, m) = (spec.n, spec.m());
    let mut out = Vec::new();
    let mut word = Vec::with_capacity(spec.positions());
    let mut counts = vec![0usize; n + 1];
    extend_canonical(n, m, 0, &mut word, &mut counts, &mut out);
    Ok(out)
}

fn extend_canonical(
    n: usize,
    m: usize,
    introduced: usize,
    word: &mut Vec<Symbol>,
    counts: &mut [usize],
    out: &mut Vec<CanonicalInvariant>,
) {
    if word.len() == n * m {
        let s = Multipermutation::from_parts_unchecked(n, m, word.clone());
        out.push(s.try_into().expect("generated words are canonical"));
        return;
    }
    let limit = (introduced + 1).min(n);
    for s in 1..=limit {
        if counts[s] == m {
            continue;
        }
        counts[s] += 1;
        word.push(s as Symbol);
        extend_canonical(n, m, introduced.max(s), word, counts, out);
        word.pop();
        counts[s] -= 1;
    }
}

/// Rearranges `v` into the next lexicographic permutation; `false` at the last one.
fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    let Some(i) = v.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = v
        .iter()
        .rposition(|x| *x > v[i])
        .expect("pivot has a successor");
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

/// Enumerated lattice with cover edges (lower, upper) and ranks.
#[derive(Debug, Clone)]
pub struct HasseDiagram {
    spec: LatticeSpec,
    elements: Vec<CanonicalInvariant>,
    covers: Vec<(usize, usize)>,
    ranks: Vec<usize>,
    up: Vec<Vec<usize>>,
    down: Vec<Vec<usize>>,
}

#[derive(Serialize)]
struct HasseJson<'a> {
    elements: Vec<&'a [Symbol]>,
    covers: &'a [(usize, usize)],
    ranks: &'a [usize],
}

impl HasseDiagram {
    pub fn enumerate(spec: LatticeSpec) -> Result<Self> {
        Self::enumerate_with(spec, &Limits::default())
    }

    pub fn enumerate_with(spec: LatticeSpec, limits: &Limits) -> Result<Self> {
        let elements = canonical_elements(spec, limits)?;
        let ranks: Vec<usize> = elements.par_iter().map(|s| s.rank()).collect();
        let mut covers: Vec<(usize, usize)> = elements
            .par_iter()
            .enumerate()
            .flat_map_iter(|(i, s)| {
                upper_covers(s)
                    .map(|t| {
                        let j = elements
                            .binary_search_by(|e| e.word().cmp(&t[..]))
                            .expect("upper cover of a canonical word stays in the ideal");
                        (i, j)
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
        covers.sort_unstable();
        let mut up = vec![Vec::new(); elements.len()];
        let mut down = vec![Vec::new(); elements.len()];
        for &(i, j) in &covers {
            up[i].push(j);
            down[j].push(i);
        }
        Ok(Self {
            spec,
            elements,
            covers,
            ranks,
            up,
            down,
        })
    }

    pub fn spec(&self) -> LatticeSpec {
        self.spec
    }

    pub fn elements(&self) -> &[CanonicalInvariant] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn upper_covers_of(&self, i: usize) -> &[usize] {
        &self.up[i]
    }

    pub fn lower_covers_of(&self, i: usize) -> &[usize] {
        &self.down[i]
    }

    pub fn index_of(&self, s: &CanonicalInvariant) -> Option<usize> {
        if !self.spec.owns(s) {
            return None;
        }
        self.elements.binary_search(s).ok()
    }

    fn require_index(&self, s: &CanonicalInvariant) -> Result<usize> {
        self.index_of(s)
            .ok_or_else(|| Error::NotAnElement(s.to_string()))
    }

    pub fn bottom(&self) -> usize {
        0
    }

    /// Index of the fully nested word.
    pub fn top(&self) -> usize {
        self.index_of(&top_element(self.spec))
            .expect("top element is always enumerated")
    }

    /// Counts of elements by rank, `0..=max_rank`.
    pub fn rank_vector(&self) -> Vec<usize> {
        let max = self.ranks.iter().copied().max().unwrap_or(0);
        let mut counts = vec![0; max + 1];
        for &r in &self.ranks {
            counts[r] += 1;
        }
        counts
    }

    /// Reachability along cover edges.
    pub fn leq(&self, i: usize, j: usize) -> bool {
        if i == j {
            return true;
        }
        if self.ranks[i] >= self.ranks[j] {
            return false;
        }
        let target_rank = self.ranks[j];
        let mut seen = vec![false; self.len()];
        let mut queue = VecDeque::from([i]);
        seen[i] = true;
        while let Some(v) = queue.pop_front() {
            for &w in &self.up[v] {
                if w == j {
                    return true;
                }
                if !seen[w] && self.ranks[w] < target_rank {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        false
    }

    fn closure(&self, start: usize, edges: &[Vec<usize>]) -> Vec<bool> {
        let mut seen = vec![false; self.len()];
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        while let Some(v) = queue.pop_front() {
            for &w in &edges[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    /// The unique maximal element of a down-closed set (or minimal of an up-closed one).
    fn extremum(&self, members: &[bool], outward: &[Vec<usize>], what: &str) -> Result<usize> {
        let extremes: Vec<usize> = (0..self.len())
            .filter(|&v| members[v] && outward[v].iter().all(|&w| !members[w]))
            .collect();
        match extremes.as_slice() {
            [single] => Ok(*single),
            [] => Err(Error::LatticeInvariant(format!("no {what}"))),
            many => Err(Error::LatticeInvariant(format!(
                "{what} not unique: {} candidates",
                many.len()
            ))),
        }
    }

    /// Greatest common lower bound of elements `i` and `j`.
    pub fn meet_index(&self, i: usize, j: usize) -> Result<usize> {
        let a = self.closure(i, &self.down);
        let b = self.closure(j, &self.down);
        let common: Vec<bool> = a.iter().zip(&b).map(|(x, y)| *x && *y).collect();
        self.extremum(&common, &self.up, "meet")
    }

    /// Least common upper bound of elements `i` and `j`.
    pub fn join_index(&self, i: usize, j: usize) -> Result<usize> {
        let a = self.closure(i, &self.up);
        let b = self.closure(j, &self.up);
        let common: Vec<bool> = a.iter().zip(&b).map(|(x, y)| *x && *y).collect();
        self.extremum(&common, &self.down, "join")
    }

    pub fn meet(
        &self,
        s: &CanonicalInvariant,
        t: &CanonicalInvariant,
    ) -> Result<CanonicalInvariant> {
        let i = self.meet_index(self.require_index(s)?, self.require_index(t)?)?;
        Ok(self.elements[i].clone())
    }

    pub fn join(
        &self,
        s: &CanonicalInvariant,
        t: &CanonicalInvariant,
    ) -> Result<CanonicalInvariant> {
        let i = self.join_index(self.require_index(s)?, self.require_index(t)?)?;
        Ok(self.elements[i].clone())
    }

    /// Graphviz rendering; node IDs are element indices, edges point upward.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "digraph hasse_n{}_k{} {{", self.spec.n, self.spec.k);
        out.push_str("  rankdir=BT;\n  node [shape=box];\n");
        for (i, (s, r)) in self.elements.iter().zip(&self.ranks).enumerate() {
            let _ = writeln!(out, "  {i} [label=\"{s}\\nrank {r}\"];");
        }
        for &(i, j) in &self.covers {
            let _ = writeln!(out, "  {i} -> {j};");
        }
        out.push_str("}\n");
        out
    }

    /// `{"elements": [[..]..], "covers": [[i, j]..], "ranks": [..]}`.
    pub fn to_json(&self) -> String {
        let doc = HasseJson {
            elements: self.elements.iter().map(|e| e.word()).collect(),
            covers: &self.covers,
            ranks: &self.ranks,
        };
        serde_json::to_string(&doc).expect("diagram serializes")
    }
}

/// Words obtained by swapping one adjacent increasing pair that stay canonical.
fn upper_covers(s: &CanonicalInvariant) -> impl Iterator<Item = Vec<Symbol>> + '_ {
    let w = s.word();
    (0..w.len().saturating_sub(1)).filter_map(move |p| {
        if w[p] >= w[p + 1] {
            return None;
        }
        let mut t = w.to_vec();
        t.swap(p, p + 1);
        // Swapping two first occurrences would reorder them.
        let first_a = !w[..p].contains(&w[p]);
        let first_b = !w[..p].contains(&w[p + 1]);
        (!(first_a && first_b)).then_some(t)
    })
}

pub fn enumerate(spec: LatticeSpec) -> Result<HasseDiagram> {
    HasseDiagram::enumerate(spec)
}

pub fn meet(
    s: &CanonicalInvariant,
    t: &CanonicalInvariant,
    spec: LatticeSpec,
) -> Result<CanonicalInvariant> {
    HasseDiagram::enumerate(spec)?.meet(s, t)
}

pub fn join(
    s: &CanonicalInvariant,
    t: &CanonicalInvariant,
    spec: LatticeSpec,
) -> Result<CanonicalInvariant> {
    HasseDiagram::enumerate(spec)?.join(s, t)
}

pub fn rank_vector(spec: LatticeSpec) -> Result<Vec<usize>> {
    Ok(HasseDiagram::enumerate(spec)?.rank_vector())
}

/// Outcome of comparing the canonical words against the principal ideal of
/// the fully nested word in `L(m^n)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdealReport {
    pub n: usize,
    pub k: u32,
    pub canonical_count: usize,
    pub ideal_count: usize,
    pub expected_count: Option<u128>,
    pub raw_words_scanned: u128,
    /// Canonical words not below the top element.
    pub canonical_not_in_ideal: Vec<String>,
    /// Words below the top element that are not canonical.
    pub ideal_not_canonical: Vec<String>,
    pub equal: bool,
}

pub fn verify_ideal_isomorphism(spec: LatticeSpec) -> Result<IdealReport> {
    verify_ideal_isomorphism_with(spec, &Limits::default())
}

pub fn verify_ideal_isomorphism_with(spec: LatticeSpec, limits: &Limits) -> Result<IdealReport> {
    spec.check(limits)?;
    let raw = multinomial(spec.n, spec.m()).unwrap_or(u128::MAX);
    if raw > limits.raw_word_cap {
        return Err(Error::TooLarge {
            positions: spec.positions(),
            cap: limits.position_cap,
        });
    }
    let canonical = canonical_elements(spec, limits)?;
    let top_inversions = top_element(spec).iota().inversion_set();

    let mut word = Multipermutation::identity(spec.n, spec.m()).word().to_vec();
    let mut ideal: Vec<Multipermutation> = Vec::new();
    let mut scanned: u128 = 0;
    loop {
        scanned += 1;
        let s = Multipermutation::from_parts_unchecked(spec.n, spec.m(), word.clone());
        if s.iota().inversion_set().is_subset(&top_inversions) {
            ideal.push(s);
        }
        if !next_permutation(&mut word) {
            break;
        }
    }

    // Both lists are in lexicographic order; merge to find differences.
    let mut canonical_not_in_ideal = Vec::new();
    let mut ideal_not_canonical = Vec::new();
    let (mut a, mut b) = (0, 0);
    while a < canonical.len() || b < ideal.len() {
        match (canonical.get(a), ideal.get(b)) {
            (Some(c), Some(i)) if c.word() == i.word() => {
                a += 1;
                b += 1;
            }
            (Some(c), Some(i)) if c.word() < i.word() => {
                canonical_not_in_ideal.push(c.to_string());
                a += 1;
            }
            (Some(_), Some(i)) | (None, Some(i)) => {
                ideal_not_canonical.push(i.to_string());
                b += 1;
            }
            (Some(c), None) => {
                canonical_not_in_ideal.push(c.to_string());
                a += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    let equal = canonical_not_in_ideal.is_empty() && ideal_not_canonical.is_empty();
    Ok(IdealReport {
        n: spec.n,
        k: spec.k,
        canonical_count: canonical.len(),
        ideal_count: ideal.len(),
        expected_count: spec.expected_size(),
        raw_words_scanned: scanned,
        canonical_not_in_ideal,
        ideal_not_canonical,
        equal,
    })
}
