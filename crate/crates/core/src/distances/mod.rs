//! Exact bottleneck and q-Wasserstein distances between barcodes, with bars
//! allowed to match the diagonal, plus affine alignment and the convergence
//! bound check.
//!
//! Ground cost is the l-infinity distance between diagram points. Matching a
//! bar to the diagonal costs half its length.

use serde::Serialize;

use crate::barcode::{Bar, Barcode};
use crate::error::{Error, Result};

mod alignment;
pub mod assignment;

pub use alignment::{
    align, check_convergence_bounds, perturb_preserving_invariant, Alignment, BoundReport,
    BOUND_TOLERANCE, PERTURB_ATTEMPTS,
};

/// A bar seen as the point `(birth, death)` above the diagonal.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DiagramPoint {
    pub x: f64,
    pub y: f64,
}

impl DiagramPoint {
    pub fn diagonal_projection(&self) -> DiagramPoint {
        let mid = (self.x + self.y) / 2.0;
        DiagramPoint { x: mid, y: mid }
    }

    pub fn linf(&self, other: &DiagramPoint) -> f64 {
        (self.x - other.x).abs().max((self.y - other.y).abs())
    }

    /// l-infinity distance to the diagonal.
    pub fn to_diagonal(&self) -> f64 {
        (self.y - self.x) / 2.0
    }
}

impl From<&Bar> for DiagramPoint {
    fn from(bar: &Bar) -> Self {
        DiagramPoint {
            x: bar.birth(),
            y: bar.death(),
        }
    }
}

/// One side of a matched pair: a bar label (1-based) or the diagonal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum MatchEnd {
    Bar(usize),
    Diagonal,
}

/// A perfect matching between two barcodes. Every bar of each side appears
/// exactly once; diagonal-to-diagonal pairs are left implicit.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Matching {
    pub pairs: Vec<(MatchEnd, MatchEnd)>,
    pub cost: f64,
}

impl Matching {
    /// Ground cost of each pair, in pair order.
    pub fn pair_costs(&self, left: &Barcode, right: &Barcode) -> Vec<f64> {
        let point = |b: &Barcode, label: usize| DiagramPoint::from(&b.bars()[label - 1]);
        self.pairs
            .iter()
            .map(|pair| match *pair {
                (MatchEnd::Bar(i), MatchEnd::Bar(j)) => point(left, i).linf(&point(right, j)),
                (MatchEnd::Bar(i), MatchEnd::Diagonal) => point(left, i).to_diagonal(),
                (MatchEnd::Diagonal, MatchEnd::Bar(j)) => point(right, j).to_diagonal(),
                (MatchEnd::Diagonal, MatchEnd::Diagonal) => 0.0,
            })
            .collect()
    }

    /// Largest pair cost.
    pub fn bottleneck_cost(&self, left: &Barcode, right: &Barcode) -> f64 {
        self.pair_costs(left, right).into_iter().fold(0.0, f64::max)
    }

    /// `(sum cost^q)^(1/q)`.
    pub fn wasserstein_cost(&self, left: &Barcode, right: &Barcode, q: f64) -> f64 {
        lq_norm(&self.pair_costs(left, right), q)
    }

    /// Checks that each bar of both barcodes is used exactly once.
    pub fn is_perfect(&self, left: &Barcode, right: &Barcode) -> bool {
        let mut seen_left = vec![0usize; left.len() + 1];
        let mut seen_right = vec![0usize; right.len() + 1];
        for &(a, b) in &self.pairs {
            if let MatchEnd::Bar(i) = a {
                if i == 0 || i > left.len() {
                    return false;
                }
                seen_left[i] += 1;
            }
            if let MatchEnd::Bar(j) = b {
                if j == 0 || j > right.len() {
                    return false;
                }
                seen_right[j] += 1;
            }
        }
        seen_left[1..].iter().all(|&c| c == 1) && seen_right[1..].iter().all(|&c| c == 1)
    }
}

/// `(sum x^q)^(1/q)`, scaled by the maximum to avoid under/overflow.
pub(crate) fn lq_norm(costs: &[f64], q: f64) -> f64 {
    let max = costs.iter().copied().fold(0.0, f64::max);
    if max == 0.0 {
        return 0.0;
    }
    let sum: f64 = costs.iter().map(|&c| (c / max).powf(q)).sum();
    max * sum.powf(1.0 / q)
}

/// Square cost matrix over `left bars + right diagonal slots` by
/// `right bars + left diagonal slots`. Any diagonal slot is as good as any
/// other, so bars may use any slot on the far side.
fn augmented_costs(left: &Barcode, right: &Barcode) -> Vec<Vec<f64>> {
    let (n, m) = (left.len(), right.len());
    let lp: Vec<DiagramPoint> = left.bars().iter().map(DiagramPoint::from).collect();
    let rp: Vec<DiagramPoint> = right.bars().iter().map(DiagramPoint::from).collect();
    let size = n + m;
    let mut costs = vec![vec![0.0; size]; size];
    for (i, row) in costs.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = match (i < n, j < m) {
                (true, true) => lp[i].linf(&rp[j]),
                (true, false) => lp[i].to_diagonal(),
                (false, true) => rp[j].to_diagonal(),
                (false, false) => 0.0,
            };
        }
    }
    costs
}

fn matching_from_assignment(n: usize, m: usize, assignment: &[usize]) -> Vec<(MatchEnd, MatchEnd)> {
    let mut pairs = Vec::with_capacity(n + m);
    for (i, &j) in assignment.iter().enumerate() {
        let left = if i < n {
            MatchEnd::Bar(i + 1)
        } else {
            MatchEnd::Diagonal
        };
        let right = if j < m {
            MatchEnd::Bar(j + 1)
        } else {
            MatchEnd::Diagonal
        };
        if left != MatchEnd::Diagonal || right != MatchEnd::Diagonal {
            pairs.push((left, right));
        }
    }
    pairs.sort();
    pairs
}

/// Exact bottleneck distance and an optimal matching.
///
/// Binary search over the finite set of candidate costs, testing each with a
/// threshold perfect matching.
pub fn bottleneck(left: &Barcode, right: &Barcode) -> (f64, Matching) {
    let costs = augmented_costs(left, right);
    let mut candidates: Vec<f64> = costs.iter().flatten().copied().collect();
    candidates.sort_by(f64::total_cmp);
    candidates.dedup();

    // The largest candidate is always feasible (everything to the diagonal).
    let (mut lo, mut hi) = (0usize, candidates.len() - 1);
    let mut best = perfect_matching_or_panic(&costs, candidates[hi]);
    while lo < hi {
        let mid = (lo + hi) / 2;
        match assignment::perfect_matching_below(&costs, candidates[mid]) {
            Some(found) => {
                best = found;
                hi = mid;
            }
            None => lo = mid + 1,
        }
    }
    if hi < candidates.len() - 1
        && best
            .iter()
            .enumerate()
            .any(|(i, &j)| costs[i][j] > candidates[hi])
    {
        best = perfect_matching_or_panic(&costs, candidates[hi]);
    }
    let mut matching = Matching {
        pairs: matching_from_assignment(left.len(), right.len(), &best),
        cost: 0.0,
    };
    matching.cost = matching.bottleneck_cost(left, right);
    (matching.cost, matching)
}

fn perfect_matching_or_panic(costs: &[Vec<f64>], threshold: f64) -> Vec<usize> {
    assignment::perfect_matching_below(costs, threshold)
        .expect("matching every bar to the diagonal is always feasible")
}

/// Exact q-Wasserstein distance and an optimal matching, via a minimum-cost
/// assignment on the augmented matrix of costs raised to `q`.
pub fn wasserstein(left: &Barcode, right: &Barcode, q: f64) -> Result<(f64, Matching)> {
    if !(q.is_finite() && q >= 1.0) {
        return Err(Error::InvalidQ(q));
    }
    let costs = augmented_costs(left, right);
    let max = costs.iter().flatten().copied().fold(0.0, f64::max);
    let powered: Vec<Vec<f64>> = if max == 0.0 {
        costs
    } else {
        costs
            .iter()
            .map(|row| row.iter().map(|&c| (c / max).powf(q)).collect())
            .collect()
    };
    let assignment = assignment::min_cost_assignment(&powered);
    let mut matching = Matching {
        pairs: matching_from_assignment(left.len(), right.len(), &assignment),
        cost: 0.0,
    };
    matching.cost = matching.wasserstein_cost(left, right, q);
    Ok((matching.cost, matching))
}
