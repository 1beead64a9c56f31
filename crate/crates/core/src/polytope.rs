//! Vertices of the barcode polytope (the `iota` images of the lattice
//! elements), its affine dimension in exact integer arithmetic, and the
//! block count of a reduced word for the top element.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedMul, CheckedSub, Signed};
use serde::Serialize;

use crate::error::Result;
use crate::lattice::{canonical_elements, top_element, LatticeSpec, Limits};
use crate::multiperm::{CanonicalInvariant, EmbeddedPermutation};

/// Permutation vectors of length `ambient`, one per lattice element, in
/// lexicographic order of the underlying words.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexSet {
    pub ambient: usize,
    pub vertices: Vec<Vec<usize>>,
}

impl VertexSet {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Decodes each vertex back to its word.
    pub fn words(&self, m: usize) -> Option<Vec<CanonicalInvariant>> {
        self.vertices
            .iter()
            .map(|v| {
                let p = EmbeddedPermutation::from_ranks(v, m)?;
                CanonicalInvariant::try_from(p.to_multipermutation()).ok()
            })
            .collect()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for v in &self.vertices {
            let line: Vec<String> = v.iter().map(ToString::to_string).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.vertices).expect("vectors of integers serialize")
    }
}

pub fn vertices(spec: LatticeSpec) -> Result<VertexSet> {
    vertices_with(spec, &Limits::default())
}

pub fn vertices_with(spec: LatticeSpec, limits: &Limits) -> Result<VertexSet> {
    let vertices = canonical_elements(spec, limits)?
        .iter()
        .map(|s| s.iota().ranks())
        .collect();
    Ok(VertexSet {
        ambient: spec.positions(),
        vertices,
    })
}

/// Dimension of the affine hull of the vertices.
pub fn affine_dimension(set: &VertexSet) -> usize {
    let Some((base, rest)) = set.vertices.split_first() else {
        return 0;
    };
    let diffs = || {
        rest.iter().map(move |v| {
            v.iter()
                .zip(base)
                .map(|(&a, &b)| a as i128 - b as i128)
                .collect::<Vec<i128>>()
        })
    };
    match integer_rank(diffs()) {
        Some(rank) => rank,
        None => integer_rank(diffs().map(|v| v.into_iter().map(BigInt::from).collect()))
            .expect("big integers do not overflow"),
    }
}

/// Rank of a family of integer vectors by incremental fraction-free
/// elimination. `None` if an intermediate value overflows `T`.
pub fn integer_rank<T, I>(vectors: I) -> Option<usize>
where
    T: Integer + Signed + Clone + CheckedMul + CheckedSub,
    I: IntoIterator<Item = Vec<T>>,
{
    // echelon rows with their pivot columns, kept primitive
    let mut basis: Vec<(usize, Vec<T>)> = Vec::new();
    for mut v in vectors {
        for (pivot, row) in &basis {
            if v[*pivot].is_zero() {
                continue;
            }
            let a = row[*pivot].clone();
            let b = v[*pivot].clone();
            for (x, y) in v.iter_mut().zip(row) {
                *x = x.checked_mul(&a)?.checked_sub(&y.checked_mul(&b)?)?;
            }
            make_primitive(&mut v);
        }
        if let Some(pivot) = v.iter().position(|x| !x.is_zero()) {
            make_primitive(&mut v);
            basis.push((pivot, v));
        }
    }
    Some(basis.len())
}

fn make_primitive<T: Integer + Signed + Clone>(v: &mut [T]) {
    let g = v.iter().fold(T::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in v.iter_mut() {
            *x = x.div_floor(&g);
        }
    }
}

/// Adjacent positions swapped along a reduced word from the identity to the
/// `iota` image of the top element. Each copy is moved right into place:
/// copies of 1 from the last to the first, then copies of 2, and so on.
///
/// Returns the 1-based swap indices `i` (positions `i`, `i+1`) in order.
pub fn reduced_word_to_top(spec: LatticeSpec) -> Vec<usize> {
    let target = top_element(spec).iota().ranks();
    let size = target.len();
    let mut target_pos = vec![0usize; size + 1];
    for (p, &r) in target.iter().enumerate() {
        target_pos[r] = p;
    }
    let mut current: Vec<usize> = (1..=size).collect();
    let mut swaps = Vec::new();
    let m = spec.m();
    for symbol in 0..spec.n() {
        for copy in (1..=m).rev() {
            let value = symbol * m + copy;
            let mut p = current
                .iter()
                .position(|&x| x == value)
                .expect("value present");
            while p < target_pos[value] {
                assert!(
                    current[p + 1] > value,
                    "reduced word would pass a smaller element"
                );
                current.swap(p, p + 1);
                swaps.push(p + 1);
                p += 1;
            }
            assert_eq!(p, target_pos[value], "copy moved past its target");
        }
    }
    assert_eq!(
        current, target,
        "reduced word does not reach the top element"
    );
    assert_eq!(swaps.len(), top_element(spec).rank(), "word is not reduced");
    swaps
}

/// Connected components of the path graph on `1..=N` whose edges are the
/// adjacent transpositions used by [`reduced_word_to_top`].
pub fn pi_partition_blocks(spec: LatticeSpec) -> usize {
    let size = spec.positions();
    let mut used = vec![false; size];
    for i in reduced_word_to_top(spec) {
        used[i] = true;
    }
    size - used.iter().filter(|&&u| u).count()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DimensionReport {
    pub ambient: usize,
    pub dim: usize,
    /// `N - 2` for at least two bars; a single bar gives a point.
    pub expected: usize,
    pub blocks: usize,
}

impl DimensionReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain struct serializes")
    }
}

pub fn dimension_report(spec: LatticeSpec, limits: &Limits) -> Result<DimensionReport> {
    let set = vertices_with(spec, limits)?;
    let ambient = spec.positions();
    Ok(DimensionReport {
        ambient,
        dim: affine_dimension(&set),
        expected: if spec.n() >= 2 { ambient - 2 } else { 0 },
        blocks: pi_partition_blocks(spec),
    })
}
