//! Bars, barcodes, level-k sample points, crossing numbers and interval graphs.
//!
//! Bars are kept in input order and labelled by their 1-based position.
//! Nothing is reordered implicitly; relabelling always goes through
//! [`Barcode::permuted`].

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

pub use crate::error::SamplePoint;
use crate::error::{Error, Result};
use crate::rng::SplitMix64;

/// Largest supported level `k`. Each bar contributes `2^k + 1` sample points.
pub const MAX_LEVEL: u32 = 30;

/// A finite interval `(birth, death)` with `birth < death`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bar {
    birth: f64,
    death: f64,
}

impl Bar {
    pub fn new(birth: f64, death: f64) -> Result<Self> {
        if birth.is_finite() && death.is_finite() && birth < death {
            Ok(Self { birth, death })
        } else {
            Err(Error::InvalidBar { birth, death })
        }
    }

    #[inline]
    pub fn birth(&self) -> f64 {
        self.birth
    }

    #[inline]
    pub fn death(&self) -> f64 {
        self.death
    }

    #[inline]
    pub fn length(&self) -> f64 {
        self.death - self.birth
    }

    /// `true` if `self` contains `other` (closed containment).
    pub fn contains(&self, other: &Bar) -> bool {
        self.birth <= other.birth && self.death >= other.death
    }

    /// Value of the `l`-th of the `2^k + 1` equally spaced points.
    ///
    /// Evaluated as `b + l*(d-b)/2^k` in one shot. Since scaling by two is exact,
    /// the even points of level `k+1` reproduce level `k` bit for bit. The last
    /// point is pinned to `death` so that level 0 is exactly the endpoints.
    #[inline]
    pub fn sample(&self, l: u64, k: u32) -> f64 {
        let steps = 1u64 << k;
        if l == 0 {
            self.birth
        } else if l >= steps {
            self.death
        } else {
            self.birth + (l as f64 * self.length()) / steps as f64
        }
    }
}

impl Serialize for Bar {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        (self.birth, self.death).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Bar {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let (birth, death) = <(f64, f64)>::deserialize(deserializer)?;
        Bar::new(birth, death).map_err(serde::de::Error::custom)
    }
}

/// An ordered, non-empty list of bars. Label `i` refers to `bars()[i - 1]`.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Barcode {
    bars: Vec<Bar>,
}

impl<'de> Deserialize<'de> for Barcode {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let bars = Vec::<Bar>::deserialize(deserializer)?;
        Barcode::new(bars).map_err(serde::de::Error::custom)
    }
}

/// Undirected graph on bar labels `1..=n`; edges stored as `(i, j)` with `i < j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntervalGraph {
    vertex_count: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl IntervalGraph {
    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.edges
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.edges.contains(&(i.min(j), i.max(j)))
    }

    pub fn is_connected(&self) -> bool {
        if self.vertex_count <= 1 {
            return true;
        }
        let mut adjacency = vec![Vec::new(); self.vertex_count + 1];
        for &(i, j) in &self.edges {
            adjacency[i].push(j);
            adjacency[j].push(i);
        }
        let mut seen = vec![false; self.vertex_count + 1];
        let mut stack = vec![1];
        seen[1] = true;
        let mut reached = 1;
        while let Some(v) = stack.pop() {
            for &w in &adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    stack.push(w);
                }
            }
        }
        reached == self.vertex_count
    }

    /// The graph with vertex `v` renamed to `pi[v - 1]`.
    pub fn relabeled(&self, pi: &[usize]) -> IntervalGraph {
        let edges = self
            .edges
            .iter()
            .map(|&(i, j)| {
                let (a, b) = (pi[i - 1], pi[j - 1]);
                (a.min(b), a.max(b))
            })
            .collect();
        IntervalGraph {
            vertex_count: self.vertex_count,
            edges,
        }
    }
}

impl Barcode {
    pub fn new(bars: Vec<Bar>) -> Result<Self> {
        if bars.is_empty() {
            return Err(Error::EmptyBarcode);
        }
        Ok(Self { bars })
    }

    /// Builds a barcode from `(birth, death)` pairs, validating each bar.
    pub fn from_pairs<I>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (f64, f64)>,
    {
        let bars = pairs
            .into_iter()
            .map(|(b, d)| Bar::new(b, d))
            .collect::<Result<Vec<_>>>()?;
        Self::new(bars)
    }

    pub fn bars(&self) -> &[Bar] {
        &self.bars
    }

    pub fn len(&self) -> usize {
        self.bars.len()
    }

    /// Always `false`; barcodes have at least one bar.
    pub fn is_empty(&self) -> bool {
        self.bars.is_empty()
    }

    /// Bar with 1-based `label`.
    pub fn bar(&self, label: usize) -> Option<&Bar> {
        label.checked_sub(1).and_then(|i| self.bars.get(i))
    }

    /// Reorders bars: the bar labelled `i` in `self` gets label `pi[i - 1]`.
    ///
    /// `pi` must be a permutation of `1..=n` in one-line notation.
    pub fn permuted(&self, pi: &[usize]) -> Result<Barcode> {
        let n = self.len();
        check_permutation(pi, n)?;
        let mut bars = self.bars.clone();
        for (i, bar) in self.bars.iter().enumerate() {
            bars[pi[i] - 1] = *bar;
        }
        Ok(Barcode { bars })
    }

    /// All `n(2^k+1)` sample points, grouped by bar, `l` ascending within a bar.
    pub fn sample_points(&self, k: u32) -> Vec<SamplePoint> {
        assert!(k <= MAX_LEVEL, "level {k} exceeds MAX_LEVEL");
        let steps = 1u64 << k;
        let mut out = Vec::with_capacity(self.len() * (steps as usize + 1));
        for (idx, bar) in self.bars.iter().enumerate() {
            for l in 0..=steps {
                out.push(SamplePoint {
                    value: bar.sample(l, k),
                    label: idx + 1,
                });
            }
        }
        out
    }

    /// Sample points sorted by value (ties broken by label, then input order).
    pub(crate) fn sorted_sample_points(&self, k: u32) -> Vec<SamplePoint> {
        let mut points = self.sample_points(k);
        points.sort_by(|a, b| a.value.total_cmp(&b.value).then(a.label.cmp(&b.label)));
        points
    }

    /// First pair of sample points (in ascending order) closer than or equal to `eps`.
    pub fn find_collision(&self, k: u32, eps: f64) -> Option<(SamplePoint, SamplePoint)> {
        let points = self.sorted_sample_points(k);
        points
            .windows(2)
            .find(|w| (w[1].value - w[0].value) <= eps)
            .map(|w| (w[0], w[1]))
    }

    /// `true` iff all level-`k` sample points are pairwise more than `eps` apart.
    pub fn is_k_strict(&self, k: u32, eps: f64) -> bool {
        self.find_collision(k, eps).is_none()
    }

    /// Level 0 strictness: no birth or death time is shared.
    pub fn is_strict(&self) -> bool {
        self.is_k_strict(0, 0.0)
    }

    pub(crate) fn require_k_strict(&self, k: u32) -> Result<()> {
        match self.find_collision(k, 0.0) {
            None => Ok(()),
            Some((first, second)) if k == 0 => Err(Error::NotStrict { first, second }),
            Some((first, second)) => Err(Error::NotKStrict { k, first, second }),
        }
    }

    /// Crossing number of bars `i` and `j`: 0 disjoint, 1 stepped, 2 nested.
    pub fn crossing_number(&self, i: usize, j: usize) -> Result<u8> {
        let n = self.len();
        if i == j || i == 0 || j == 0 || i > n || j > n {
            return Err(Error::InvalidLabel { i, j, n });
        }
        self.require_k_strict(0)?;
        let (a, b) = (self.bars[i - 1], self.bars[j - 1]);
        let (first, second) = if a.birth < b.birth { (a, b) } else { (b, a) };
        Ok(if first.death < second.birth {
            0
        } else if first.death < second.death {
            1
        } else {
            2
        })
    }

    /// Graph with an edge `{i, j}` whenever the open intervals overlap.
    pub fn interval_graph(&self) -> IntervalGraph {
        let mut edges = BTreeSet::new();
        for (i, a) in self.bars.iter().enumerate() {
            for (j, b) in self.bars.iter().enumerate().skip(i + 1) {
                if a.birth.max(b.birth) < a.death.min(b.death) {
                    edges.insert((i + 1, j + 1));
                }
            }
        }
        IntervalGraph {
            vertex_count: self.len(),
            edges,
        }
    }

    /// Maps each bar `(b, d)` to `(alpha*b + delta, alpha*d + delta)`.
    pub fn affine_transform(&self, alpha: f64, delta: f64) -> Result<Barcode> {
        if !(alpha.is_finite() && alpha > 0.0) {
            return Err(Error::InvalidScale(alpha));
        }
        let bars = self
            .bars
            .iter()
            .map(|bar| Bar::new(alpha * bar.birth + delta, alpha * bar.death + delta))
            .collect::<Result<Vec<_>>>()?;
        Ok(Barcode { bars })
    }

    /// Label of a bar containing every other bar, preferring the earliest born.
    pub fn containing_bar(&self) -> Option<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by(|&a, &b| self.bars[a].birth.total_cmp(&self.bars[b].birth));
        order
            .into_iter()
            .find(|&c| self.bars.iter().all(|other| self.bars[c].contains(other)))
            .map(|c| c + 1)
    }

    /// Labels sorted by increasing birth.
    pub fn birth_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (1..=self.len()).collect();
        order.sort_by(|&a, &b| self.bars[a - 1].birth.total_cmp(&self.bars[b - 1].birth));
        order
    }

    /// Labels sorted by increasing death.
    pub fn death_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (1..=self.len()).collect();
        order.sort_by(|&a, &b| self.bars[a - 1].death.total_cmp(&self.bars[b - 1].death));
        order
    }
}

pub(crate) fn check_permutation(pi: &[usize], n: usize) -> Result<()> {
    if pi.len() != n {
        return Err(Error::InvalidPermutation(format!(
            "expected {n} entries, got {}",
            pi.len()
        )));
    }
    let mut seen = vec![false; n + 1];
    for &p in pi {
        if p == 0 || p > n || seen[p] {
            return Err(Error::InvalidPermutation(format!(
                "{pi:?} is not a permutation of 1..={n}"
            )));
        }
        seen[p] = true;
    }
    Ok(())
}

/// Options for [`random_barcode`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenOptions {
    pub n: usize,
    pub k: u32,
    /// Endpoints are drawn from `[0, spread]`.
    pub spread: f64,
    /// Force bar 1 to contain every other bar.
    pub contained: bool,
}

/// Minimum relative gap between sample points of generated barcodes.
///
/// Keeps generated barcodes strict under double rounding of affine maps.
pub const GEN_SEPARATION: f64 = 1e-9;

/// Draws a k-strict barcode whose sample points are separated by at least
/// `GEN_SEPARATION * spread`. Rejection-samples; panics only if `n` or
/// `spread` make that impossible after many attempts.
pub fn random_barcode(opts: GenOptions, rng: &mut SplitMix64) -> Result<Barcode> {
    let GenOptions {
        n,
        k,
        spread,
        contained,
    } = opts;
    if n == 0 {
        return Err(Error::EmptyBarcode);
    }
    if !(spread.is_finite() && spread > 0.0) {
        return Err(Error::InvalidScale(spread));
    }
    const ATTEMPTS: usize = 100_000;
    for _ in 0..ATTEMPTS {
        let mut pairs = Vec::with_capacity(n);
        if contained {
            let b = rng.uniform(0.0, 0.1 * spread);
            let d = rng.uniform(0.9 * spread, spread);
            pairs.push((b, d));
            for _ in 1..n {
                let x = rng.uniform(b, d);
                let y = rng.uniform(b, d);
                pairs.push((x.min(y), x.max(y)));
            }
        } else {
            for _ in 0..n {
                let x = rng.uniform(0.0, spread);
                let y = rng.uniform(0.0, spread);
                pairs.push((x.min(y), x.max(y)));
            }
        }
        let Ok(barcode) = Barcode::from_pairs(pairs) else {
            continue;
        };
        if contained && barcode.containing_bar() != Some(1) {
            continue;
        }
        if barcode.is_k_strict(k, GEN_SEPARATION * spread) {
            return Ok(barcode);
        }
    }
    Err(Error::RetriesExhausted(ATTEMPTS))
}
