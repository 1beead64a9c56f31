//! Maps from barcodes to words: `f_k`, `g_k`, the death-order permutation
//! `phi`, and the deletion maps between levels.

use super::{CanonicalInvariant, Multipermutation, Permutation, Symbol};
use crate::barcode::Barcode;
use crate::error::{Error, Result};

/// Labelled level-k word: bar labels of all sample points in increasing order.
pub fn f_k(barcode: &Barcode, k: u32) -> Result<Multipermutation> {
    barcode.require_k_strict(k)?;
    let word = barcode
        .sorted_sample_points(k)
        .into_iter()
        .map(|p| p.label as Symbol)
        .collect();
    Ok(Multipermutation::from_parts_unchecked(
        barcode.len(),
        (1usize << k) + 1,
        word,
    ))
}

/// Power-k invariant: canonical representative of the orbit of `f_k`.
pub fn g_k(barcode: &Barcode, k: u32) -> Result<CanonicalInvariant> {
    Ok(f_k(barcode, k)?.canonicalize())
}

/// `tau^-1 . sigma`, where `tau` lists labels by birth and `sigma` by death.
pub fn phi(barcode: &Barcode) -> Result<Permutation> {
    barcode.require_k_strict(0)?;
    let tau = Permutation(barcode.birth_order());
    let sigma = Permutation(barcode.death_order());
    Ok(tau.inverse().compose(&sigma))
}

/// Level `k` such that `m = 2^k + 1`, if any.
fn level_of(m: usize) -> Option<u32> {
    let steps = m.checked_sub(1)?;
    steps.is_power_of_two().then(|| steps.trailing_zeros())
}

/// Deletion map from multiplicity `2^(k+1)+1` to `2^k+1`: drops the 2nd, 4th,
/// 6th, .. occurrence of every symbol.
pub fn delta(s: &Multipermutation) -> Result<Multipermutation> {
    let m = s.multiplicity();
    match level_of(m) {
        Some(level) if level >= 1 => {}
        _ => {
            return Err(Error::ShapeMismatch(format!(
                "deletion needs multiplicity 2^(k+1)+1 with k >= 0, got {m}"
            )))
        }
    }
    let n = s.alphabet_size();
    let mut seen = vec![0usize; n + 1];
    let word = s
        .word()
        .iter()
        .copied()
        .filter(|&sym| {
            let occurrence = seen[sym as usize];
            seen[sym as usize] += 1;
            occurrence.is_multiple_of(2)
        })
        .collect();
    Ok(Multipermutation::from_parts_unchecked(
        n,
        (m - 1) / 2 + 1,
        word,
    ))
}

/// Applies deletion maps until the multiplicity is `2^level + 1`.
pub fn project(s: &Multipermutation, level: u32) -> Result<Multipermutation> {
    let current = level_of(s.multiplicity()).ok_or_else(|| {
        Error::ShapeMismatch(format!(
            "multiplicity {} is not of the form 2^k+1",
            s.multiplicity()
        ))
    })?;
    if current < level {
        return Err(Error::ShapeMismatch(format!(
            "cannot project level {current} up to level {level}"
        )));
    }
    let mut out = s.clone();
    for _ in level..current {
        out = delta(&out)?;
    }
    Ok(out)
}
