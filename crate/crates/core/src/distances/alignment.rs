use serde::Serialize;

use super::{bottleneck, wasserstein};
use crate::barcode::{Bar, Barcode};
use crate::error::{Error, Precondition, Result};
use crate::multiperm::g_k;
use crate::rng::SplitMix64;

/// Relative slack allowed when comparing solver output against the bounds.
pub const BOUND_TOLERANCE: f64 = 1e-9;

/// Rejection-sampling budget of [`perturb_preserving_invariant`].
pub const PERTURB_ATTEMPTS: usize = 10_000;

/// The increasing affine map `x -> alpha*x + delta`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Alignment {
    pub alpha: f64,
    pub delta: f64,
}

impl Alignment {
    pub fn apply(&self, barcode: &Barcode) -> Result<Barcode> {
        barcode.affine_transform(self.alpha, self.delta)
    }
}

fn earliest_bar(barcode: &Barcode) -> &Bar {
    let label = barcode.birth_order()[0];
    &barcode.bars()[label - 1]
}

/// Affine map sending the earliest-born bar of `right` onto the
/// earliest-born bar of `left`.
pub fn align(left: &Barcode, right: &Barcode) -> Result<Alignment> {
    let a = earliest_bar(left);
    let b = earliest_bar(right);
    let source = b.death() - b.birth();
    if source <= 0.0 {
        return Err(Error::DegenerateBar);
    }
    let alpha = (a.death() - a.birth()) / source;
    if !(alpha.is_finite() && alpha > 0.0) {
        return Err(Error::DegenerateBar);
    }
    Ok(Alignment {
        alpha,
        delta: a.birth() - alpha * b.birth(),
    })
}

/// Outcome of [`check_convergence_bounds`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundReport {
    pub d_inf: f64,
    pub d_q: f64,
    pub bound_inf: f64,
    pub bound_q: f64,
    pub alpha: f64,
    pub delta: f64,
    pub pass: bool,
}

/// Aligns `right` onto `left` and compares the bottleneck and q-Wasserstein
/// distances with `w/2^k` and `(n-1)^(1/q) w/2^k`, where `w` is the length of
/// the bar of `left` containing all others.
pub fn check_convergence_bounds(
    left: &Barcode,
    right: &Barcode,
    k: u32,
    q: f64,
) -> Result<BoundReport> {
    if !(q.is_finite() && q >= 1.0) {
        return Err(Error::InvalidQ(q));
    }
    let mut failed = Vec::new();
    let strict = left.is_k_strict(k, 0.0) && right.is_k_strict(k, 0.0);
    if !strict {
        failed.push(Precondition::Strictness);
    }
    let same_count = left.len() == right.len();
    if !same_count {
        failed.push(Precondition::BarCount);
    }
    if strict && same_count && g_k(left, k)? != g_k(right, k)? {
        failed.push(Precondition::InvariantEquality);
    }
    let container = left.containing_bar();
    if container.is_none() {
        failed.push(Precondition::ContainingBar);
    }
    let Some(container) = container.filter(|_| failed.is_empty()) else {
        return Err(Error::PreconditionFailed(failed));
    };

    let width = left.bars()[container - 1].length();
    let alignment = align(left, right)?;
    let moved = alignment.apply(right)?;
    let (d_inf, _) = bottleneck(left, &moved);
    let (d_q, _) = wasserstein(left, &moved, q)?;

    let scale = 2f64.powi(k as i32);
    let bound_inf = width / scale;
    let bound_q = ((left.len() - 1) as f64).powf(1.0 / q) * width / scale;
    let slack = BOUND_TOLERANCE * width.max(1.0);
    Ok(BoundReport {
        d_inf,
        d_q,
        bound_inf,
        bound_q,
        alpha: alignment.alpha,
        delta: alignment.delta,
        pass: d_inf <= bound_inf + slack && d_q <= bound_q + slack,
    })
}

/// Jitters every endpoint by uniform noise in `[-magnitude, magnitude]` until
/// the result is k-strict with the same power-k invariant.
pub fn perturb_preserving_invariant(
    barcode: &Barcode,
    magnitude: f64,
    k: u32,
    seed: u64,
) -> Result<Barcode> {
    let target = g_k(barcode, k)?;
    if magnitude == 0.0 {
        return Ok(barcode.clone());
    }
    if !(magnitude.is_finite() && magnitude > 0.0) {
        return Err(Error::InvalidScale(magnitude));
    }
    let mut rng = SplitMix64::new(seed);
    for _ in 0..PERTURB_ATTEMPTS {
        let pairs: Vec<(f64, f64)> = barcode
            .bars()
            .iter()
            .map(|bar| {
                let b = bar.birth() + rng.uniform(-magnitude, magnitude);
                let d = bar.death() + rng.uniform(-magnitude, magnitude);
                (b, d)
            })
            .collect();
        let Ok(candidate) = Barcode::from_pairs(pairs) else {
            continue;
        };
        if !candidate.is_k_strict(k, 0.0) {
            continue;
        }
        if g_k(&candidate, k)? == target {
            return Ok(candidate);
        }
    }
    Err(Error::RetriesExhausted(PERTURB_ATTEMPTS))
}
