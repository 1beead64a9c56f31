#![allow(dead_code)]

use barcode_lattice::{Barcode, GenOptions, Multipermutation, SplitMix64};

/// Crossing number straight from the endpoints.
pub fn crossing_oracle(b: &Barcode, i: usize, j: usize) -> u8 {
    let (mut p, mut q) = (b.bars()[i - 1], b.bars()[j - 1]);
    if q.birth() < p.birth() {
        std::mem::swap(&mut p, &mut q);
    }
    if p.death() < q.birth() {
        0
    } else if p.death() < q.death() {
        1
    } else {
        2
    }
}

/// Multiplicity of `(j, i)`: copies of `j` placed before copies of `i`.
pub fn pair_count(word: &[u32], j: u32, i: u32) -> usize {
    let mut total = 0;
    for (a, &x) in word.iter().enumerate() {
        if x == j {
            total += word[a + 1..].iter().filter(|&&y| y == i).count();
        }
    }
    total
}

fn linf(a: (f64, f64), b: (f64, f64)) -> f64 {
    (a.0 - b.0).abs().max((a.1 - b.1).abs())
}

fn half_length(a: (f64, f64)) -> f64 {
    (a.1 - a.0) / 2.0
}

/// Every partial injection from the bars of `left` into the bars of `right`,
/// the rest going to the diagonal. Calls `visit` with the list of pair costs.
pub fn for_each_matching(left: &Barcode, right: &Barcode, mut visit: impl FnMut(&[f64])) {
    let l: Vec<(f64, f64)> = left.bars().iter().map(|b| (b.birth(), b.death())).collect();
    let r: Vec<(f64, f64)> = right
        .bars()
        .iter()
        .map(|b| (b.birth(), b.death()))
        .collect();
    fn go(
        i: usize,
        l: &[(f64, f64)],
        r: &[(f64, f64)],
        used: &mut Vec<bool>,
        costs: &mut Vec<f64>,
        visit: &mut dyn FnMut(&[f64]),
    ) {
        if i == l.len() {
            let before = costs.len();
            for (j, &bar) in r.iter().enumerate() {
                if !used[j] {
                    costs.push(half_length(bar));
                }
            }
            visit(costs);
            costs.truncate(before);
            return;
        }
        costs.push(half_length(l[i]));
        go(i + 1, l, r, used, costs, visit);
        costs.pop();
        for j in 0..r.len() {
            if !used[j] {
                used[j] = true;
                costs.push(linf(l[i], r[j]));
                go(i + 1, l, r, used, costs, visit);
                costs.pop();
                used[j] = false;
            }
        }
    }
    go(
        0,
        &l,
        &r,
        &mut vec![false; r.len()],
        &mut Vec::new(),
        &mut visit,
    );
}

pub fn brute_bottleneck(left: &Barcode, right: &Barcode) -> f64 {
    let mut best = f64::INFINITY;
    for_each_matching(left, right, |costs| {
        best = best.min(costs.iter().copied().fold(0.0, f64::max));
    });
    best
}

pub fn brute_wasserstein(left: &Barcode, right: &Barcode, q: f64) -> f64 {
    let mut best = f64::INFINITY;
    for_each_matching(left, right, |costs| {
        best = best.min(costs.iter().map(|c| c.powf(q)).sum::<f64>());
    });
    best.powf(1.0 / q)
}

/// Any barcode of `n` bars with endpoints in `[0, spread]`, not necessarily strict.
pub fn loose_barcode(rng: &mut SplitMix64, n: usize, spread: f64) -> Barcode {
    let pairs: Vec<(f64, f64)> = (0..n)
        .map(|_| {
            let x = rng.uniform(0.0, spread);
            let y = rng.uniform(0.0, spread);
            (x.min(y), x.max(y) + 1e-6)
        })
        .collect();
    Barcode::from_pairs(pairs).unwrap()
}

pub fn strict_barcode(rng: &mut SplitMix64, n: usize, k: u32, contained: bool) -> Barcode {
    barcode_lattice::random_barcode(
        GenOptions {
            n,
            k,
            spread: 10.0,
            contained,
        },
        rng,
    )
    .unwrap()
}

/// Bar `[0, 1]` containing `inner` short bars, each inside its own
/// interval `[j/256, (j+1)/256]` and away from its ends.
pub fn nested_short_bars(rng: &mut SplitMix64, inner: usize) -> Barcode {
    let mut pairs = vec![(0.0, 1.0)];
    let mut used = Vec::new();
    while pairs.len() < inner + 1 {
        let j = 1 + rng.below(254) as usize;
        if used.contains(&j) {
            continue;
        }
        used.push(j);
        let centre = (j as f64 + rng.uniform(0.25, 0.75)) / 256.0;
        let width = rng.uniform(1e-5, 1e-4);
        pairs.push((centre - width / 2.0, centre + width / 2.0));
    }
    Barcode::from_pairs(pairs).unwrap()
}

pub fn random_permutation(rng: &mut SplitMix64, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (1..=n).collect();
    rng.shuffle(&mut p);
    p
}

/// A uniformly shuffled word with `m` copies of each of `1..=n`.
pub fn random_word(rng: &mut SplitMix64, n: usize, m: usize) -> Multipermutation {
    let mut word: Vec<u32> = (1..=n as u32)
        .flat_map(|s| std::iter::repeat_n(s, m))
        .collect();
    rng.shuffle(&mut word);
    Multipermutation::new(n, m, word).unwrap()
}

/// Rank of integer vectors modulo a large prime.
pub fn rank_mod_p(rows: &[Vec<i64>]) -> usize {
    const P: i128 = (1 << 61) - 1;
    let pow = |mut b: i128, mut e: i128| {
        let mut r = 1i128;
        b %= P;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % P;
            }
            b = b * b % P;
            e >>= 1;
        }
        r
    };
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| (x as i128).rem_euclid(P)).collect())
        .collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| m[r][c] != 0) else {
            continue;
        };
        m.swap(rank, p);
        let inv = pow(m[rank][c], P - 2);
        let pivot = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && row[c] != 0 {
                let f = row[c] * inv % P;
                for (x, &y) in row.iter_mut().zip(&pivot) {
                    *x = (*x - f * y % P).rem_euclid(P);
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn factorial(n: u128) -> u128 {
    (1..=n).product()
}
