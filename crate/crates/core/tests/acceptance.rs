//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use barcode_lattice::lattice::{verify_ideal_isomorphism, HasseDiagram};
use barcode_lattice::multiperm::{delta, f_k, g_k, phi, project};
use barcode_lattice::polytope::{affine_dimension, pi_partition_blocks, vertices};
use barcode_lattice::{
    align, bottleneck, check_convergence_bounds, perturb_preserving_invariant, wasserstein,
    Barcode, CanonicalInvariant, LatticeSpec, Multipermutation, SplitMix64,
};

use common::{
    brute_bottleneck, crossing_oracle, factorial, loose_barcode, nested_short_bars, pair_count,
    random_permutation, random_word, rank_mod_p, strict_barcode,
};

type Outcome = Result<String, String>;

macro_rules! check {
    ($cond:expr, $($msg:tt)+) => {
        let ok: bool = $cond;
        if !ok {
            return Err(format!($($msg)+));
        }
    };
}

fn bc(pairs: &[(f64, f64)]) -> Barcode {
    Barcode::from_pairs(pairs.iter().copied()).unwrap()
}

fn w(s: &str) -> Multipermutation {
    s.parse().unwrap()
}

fn c(s: &str) -> CanonicalInvariant {
    s.parse().unwrap()
}

fn spec(n: usize, k: u32) -> LatticeSpec {
    LatticeSpec::new(n, k).unwrap()
}

fn worked_examples() -> Outcome {
    let b1 = bc(&[(1.0, 2.0), (1.5, 3.0), (2.5, 2.75)]);
    let b2 = bc(&[(1.5, 3.0), (1.0, 2.0), (2.5, 2.75)]);
    let pairs = [
        (f_k(&b1, 0).unwrap().to_string(), "1 2 1 3 3 2"),
        (f_k(&b2, 0).unwrap().to_string(), "2 1 2 3 3 1"),
        (
            w("2 1 4 1 3 3 2 4").canonicalize().to_string(),
            "1 2 3 2 4 4 1 3",
        ),
        (phi(&b2).unwrap().to_string(), "(1 3 2)"),
    ];
    for (got, want) in pairs {
        check!(got == want, "got {got}, want {want}");
    }
    let b = bc(&[(1.0, 2.5), (1.5, 4.0), (3.0, 3.5)]);
    let f1 = f_k(&b, 1).unwrap();
    check!(f1.to_string() == "1 2 1 1 2 3 3 3 2", "f_1 = {f1}");
    check!(
        delta(&f1).unwrap() == f_k(&b, 0).unwrap(),
        "deletion of f_1 is not f_0"
    );

    // multiset against a direct pair count
    let s = w("1 2 3 2 4 4 1 3");
    let invm = s.inversion_multiset();
    let mut oracle = Vec::new();
    for j in 2..=4u32 {
        for i in 1..j {
            let a = pair_count(s.word(), j, i);
            check!(
                invm.get(j, i) == a,
                "({j},{i}): {} vs count {a}",
                invm.get(j, i)
            );
            if a > 0 {
                oracle.push(format!("({j},{i})^{a}"));
            }
        }
    }
    check!(
        invm.total() == s.iota().inversion_set().len(),
        "multiset size differs from inversion count"
    );
    let got = invm.to_string();
    let expected = "{(2,1)^2, (3,1)^1, (4,1)^2, (3,2)^1, (4,3)^2}";
    check!(got == expected, "multiset {got}");
    Ok(format!(
        "words exact; multiset {got}: (4,3) has multiplicity 2 since both 4s precede the second 3, not 1"
    ))
}

fn two_bar_lattice() -> Outcome {
    let d = HasseDiagram::enumerate(spec(2, 1)).unwrap();
    let words: BTreeSet<String> = d
        .elements()
        .iter()
        .map(|e| e.to_string().replace(' ', ""))
        .collect();
    let expected: BTreeSet<String> = [
        "111222", "112122", "112212", "121122", "112221", "121212", "121221", "122112", "122121",
        "122211",
    ]
    .into_iter()
    .map(String::from)
    .collect();
    check!(words == expected, "elements {words:?}");
    check!(
        d.rank_vector() == vec![1, 1, 2, 2, 2, 1, 1],
        "rank vector {:?}",
        d.rank_vector()
    );
    let top = &d.elements()[d.top()];
    check!(top.to_string() == "1 2 2 2 1 1", "top {top}");
    check!(d.ranks()[d.top()] == 6, "max rank {}", d.ranks()[d.top()]);

    let idx = |s: &str| d.index_of(&c(s)).unwrap();
    let listed = [
        ("1 1 1 2 2 2", "1 1 2 1 2 2"),
        ("1 1 2 1 2 2", "1 1 2 2 1 2"),
        ("1 1 2 1 2 2", "1 2 1 1 2 2"),
        ("1 2 1 1 2 2", "1 2 1 2 1 2"),
        ("1 1 2 2 1 2", "1 1 2 2 2 1"),
        ("1 1 2 2 1 2", "1 2 1 2 1 2"),
        ("1 2 1 2 1 2", "1 2 2 1 1 2"),
        ("1 1 2 2 2 1", "1 2 1 2 2 1"),
        ("1 2 2 1 1 2", "1 2 2 1 2 1"),
        ("1 2 1 2 2 1", "1 2 2 1 2 1"),
        ("1 2 2 1 2 1", "1 2 2 2 1 1"),
    ];
    let covers: BTreeSet<(usize, usize)> = d.covers().iter().copied().collect();
    for (a, b) in listed {
        check!(
            covers.contains(&(idx(a), idx(b))),
            "missing cover {a} < {b}"
        );
    }
    let extra: Vec<(usize, usize)> = covers
        .iter()
        .copied()
        .filter(|&(i, j)| !listed.iter().any(|&(a, b)| (idx(a), idx(b)) == (i, j)))
        .collect();
    check!(
        extra == vec![(idx("1 2 1 2 1 2"), idx("1 2 1 2 2 1"))],
        "unexpected covers {extra:?}"
    );
    let (lo, hi) = (c("1 2 1 2 1 2"), c("1 2 1 2 2 1"));
    let gap = hi.iota().inversion_set().len() - lo.iota().inversion_set().len();
    check!(
        lo.newman_leq(&hi).unwrap() && gap == 1,
        "extra edge is not a cover"
    );
    Ok(
        "10 elements, 12 covers: the 11 listed edges plus 1 2 1 2 1 2 < 1 2 1 2 2 1 (rank 3 to 4)"
            .into(),
    )
}

fn orders_agree() -> Outcome {
    let d = HasseDiagram::enumerate(spec(3, 0)).unwrap();
    check!(d.len() == 15, "{} elements", d.len());
    let mut pairs = 0;
    for s in d.elements() {
        for t in d.elements() {
            check!(s.prec(t).unwrap() == s.newman_leq(t).unwrap(), "{s} vs {t}");
            pairs += 1;
        }
    }
    let mut rng = SplitMix64::new(0xACCE_0003);
    for _ in 0..10_000 {
        let s = random_word(&mut rng, 5, 2).canonicalize();
        let t = random_word(&mut rng, 5, 2).canonicalize();
        check!(
            s.prec(&t).unwrap() == s.newman_leq(&t).unwrap(),
            "{s} vs {t}"
        );
    }
    Ok(format!(
        "{pairs} exhaustive pairs and 10000 random pairs at n = 5"
    ))
}

fn crossing_rank() -> Outcome {
    let mut rng = SplitMix64::new(0xACCE_0004);
    for trial in 0..1000 {
        let n = 1 + rng.below(8) as usize;
        let b = strict_barcode(&mut rng, n, 0, false);
        let mut total = 0usize;
        for i in 1..=n {
            for j in i + 1..=n {
                total += crossing_oracle(&b, i, j) as usize;
            }
        }
        let rank = g_k(&b, 0).unwrap().rank();
        check!(
            rank == total,
            "trial {trial}: rank {rank}, crossings {total}"
        );
    }
    Ok("1000 barcodes, n <= 8".into())
}

fn principal_ideal() -> Outcome {
    let cases = [
        (2, 0, 3u128),
        (3, 0, 15),
        (4, 0, 105),
        (2, 1, 10),
        (3, 1, 280),
        (2, 2, 126),
    ];
    let mut counts = Vec::new();
    for (n, k, want) in cases {
        let m = (1u128 << k) + 1;
        let formula =
            factorial(n as u128 * m) / (factorial(m).pow(n as u32) * factorial(n as u128));
        check!(formula == want, "formula gives {formula} at ({n},{k})");
        let r = verify_ideal_isomorphism(spec(n, k)).unwrap();
        check!(r.equal, "({n},{k}) sets differ: {r:?}");
        check!(
            r.canonical_count as u128 == want && r.ideal_count as u128 == want,
            "({n},{k}): {} canonical, {} in ideal",
            r.canonical_count,
            r.ideal_count
        );
        counts.push(r.canonical_count.to_string());
    }
    Ok(format!("sets equal; counts {}", counts.join(", ")))
}

fn lattice_laws() -> Outcome {
    for (n, k) in [(3, 0), (2, 1)] {
        let d = HasseDiagram::enumerate(spec(n, k)).unwrap();
        let len = d.len();
        let mut meet = vec![vec![0; len]; len];
        let mut join = vec![vec![0; len]; len];
        for i in 0..len {
            for j in 0..len {
                meet[i][j] = d.meet_index(i, j).map_err(|e| e.to_string())?;
                join[i][j] = d.join_index(i, j).map_err(|e| e.to_string())?;
            }
        }
        for a in 0..len {
            check!(meet[a][a] == a && join[a][a] == a, "idempotence at {a}");
            for b in 0..len {
                check!(
                    meet[a][b] == meet[b][a] && join[a][b] == join[b][a],
                    "commutativity"
                );
                check!(
                    meet[a][join[a][b]] == a && join[a][meet[a][b]] == a,
                    "absorption"
                );
                check!(d.leq(meet[a][b], a) && d.leq(a, join[a][b]), "bounds");
                for c in 0..len {
                    check!(
                        meet[meet[a][b]][c] == meet[a][meet[b][c]],
                        "meet associativity"
                    );
                    check!(
                        join[join[a][b]][c] == join[a][join[b][c]],
                        "join associativity"
                    );
                }
            }
        }
    }
    Ok("(3,0) and (2,1): unique meets/joins, all laws hold on all pairs and triples".into())
}

fn invariance() -> Outcome {
    let mut rng = SplitMix64::new(0xACCE_0007);
    let mut graph_pairs = 0;
    for trial in 0..1000 {
        let n = 1 + rng.below(6) as usize;
        let k = rng.below(4) as u32;
        let b = strict_barcode(&mut rng, n, k, false);
        let g = g_k(&b, k).unwrap();

        let pi = random_permutation(&mut rng, n);
        let relabeled = b.permuted(&pi).unwrap();
        check!(
            g_k(&relabeled, k).unwrap() == g,
            "trial {trial}: relabeling changed the invariant"
        );

        let alpha = rng.uniform(0.1, 10.0);
        let shift = rng.uniform(-100.0, 100.0);
        let moved = b.affine_transform(alpha, shift).unwrap();
        check!(
            g_k(&moved, k).unwrap() == g,
            "trial {trial}: affine map changed the invariant"
        );

        for j in 0..k {
            let projected = project(&g, j).unwrap();
            check!(
                projected == g_k(&b, j).unwrap().into_inner(),
                "trial {trial}: deletion to level {j}"
            );
        }

        // same level-0 invariant: perturbed copy with labels kept, or shuffled labels
        let other = perturb_preserving_invariant(&b, 0.05, 0, trial).unwrap_or_else(|_| b.clone());
        let other = if trial % 2 == 0 {
            other
        } else {
            other.permuted(&pi).unwrap()
        };
        if g_k(&other, 0).unwrap() == g_k(&b, 0).unwrap() {
            let expected = if trial % 2 == 0 {
                b.interval_graph()
            } else {
                b.interval_graph().relabeled(&pi)
            };
            check!(
                other.interval_graph() == expected,
                "trial {trial}: interval graphs differ"
            );
            graph_pairs += 1;
        }
    }
    Ok(format!(
        "1000 trials; {graph_pairs} interval-graph pairs with equal level-0 invariants"
    ))
}

/// Smallest gap between consecutive level-`k` sample values. Moving every
/// endpoint by less than half of it keeps the sample order.
fn sample_gap(b: &Barcode, k: u32) -> f64 {
    let mut v: Vec<f64> = b.sample_points(k).iter().map(|p| p.value).collect();
    v.sort_by(f64::total_cmp);
    v.windows(2)
        .map(|w| w[1] - w[0])
        .fold(f64::INFINITY, f64::min)
}

fn convergence_pair(rng: &mut SplitMix64, seed: u64) -> (Barcode, Barcode, u32) {
    let n = 2 + rng.below(5) as usize;
    let k = 1 + rng.below(5) as u32;
    let b = strict_barcode(rng, n, k, true);
    let safe = 0.49 * sample_gap(&b, k);
    let bold = safe * 2f64.powf(rng.uniform(-2.0, 3.0));
    let p = perturb_preserving_invariant(&b, bold, k, seed)
        .or_else(|_| perturb_preserving_invariant(&b, safe, k, seed))
        .unwrap();
    let alpha = rng.uniform(0.1, 10.0);
    let shift = rng.uniform(-100.0, 100.0);
    let moved = p.affine_transform(alpha, shift).unwrap();
    if moved.is_k_strict(k, 0.0) && g_k(&moved, k).unwrap() == g_k(&b, k).unwrap() {
        (b, moved, k)
    } else {
        (b, p, k)
    }
}

fn fit_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

fn convergence_bounds() -> Outcome {
    let mut rng = SplitMix64::new(0xACCE_0008);
    let mut worst: f64 = 0.0;
    for trial in 0..1000u64 {
        let (b, p, k) = convergence_pair(&mut rng, trial);
        let q = [1.0, 2.0, 3.0][trial as usize % 3];
        let r =
            check_convergence_bounds(&b, &p, k, q).map_err(|e| format!("trial {trial}: {e}"))?;
        check!(r.pass, "trial {trial}: {r:?}");
        worst = worst.max(r.d_inf / r.bound_inf).max(r.d_q / r.bound_q);
    }

    let mut points = Vec::new();
    for k in 2..=8u32 {
        let mut ds = Vec::new();
        for t in 0..40u64 {
            let b = nested_short_bars(&mut rng, 3);
            let p =
                perturb_preserving_invariant(&b, 0.5 / 2f64.powi(k as i32), k, 1000 * k as u64 + t)
                    .map_err(|e| format!("level {k}: {e}"))?;
            let a = align(&b, &p).unwrap();
            ds.push(bottleneck(&b, &a.apply(&p).unwrap()).0);
        }
        ds.sort_by(f64::total_cmp);
        points.push((k as f64, ds[ds.len() / 2].log2()));
    }
    let exponent = -fit_slope(&points);
    check!(
        (0.8..=1.2).contains(&exponent),
        "decay exponent {exponent:.3}"
    );
    Ok(format!(
        "1000 pairs, 0 violations (largest distance/bound {worst:.3}); decay exponent {exponent:.3} over k = 2..8"
    ))
}

fn short_bar_pair() -> Outcome {
    let eps = 0.001;
    let a = bc(&[(0.0, 1.0), (1.0 - eps, 1.0 + eps)]);
    let b = bc(&[(0.0, 1.0), (1.0 - eps, 2.0)]);
    let al = align(&a, &b).unwrap();
    check!(al.alpha == 1.0 && al.delta == 0.0, "alignment {al:?}");
    let moved = al.apply(&b).unwrap();
    let (d, _) = bottleneck(&a, &moved);
    let oracle = brute_bottleneck(&a, &moved);
    check!((d - (1.0 + eps) / 2.0).abs() <= 1e-12, "bottleneck {d}");
    check!(
        (oracle - d).abs() <= 1e-12,
        "exhaustive matching gives {oracle}"
    );
    Ok(format!(
        "alignment (1, 0), bottleneck {d} = (1+eps)/2, not 1-eps = {}",
        1.0 - eps
    ))
}

fn polytope_dimension() -> Outcome {
    let mut parts = Vec::new();
    for (n, k) in [(1, 0), (2, 0), (3, 0), (2, 1)] {
        let s = spec(n, k);
        let set = vertices(s).unwrap();
        let dim = affine_dimension(&set);
        let expected = n * ((1 << k) + 1) - 2;
        check!(
            dim == expected,
            "({n},{k}): dimension {dim}, expected {expected}"
        );
        let base = &set.vertices[0];
        let rows: Vec<Vec<i64>> = set.vertices[1..]
            .iter()
            .map(|v| {
                v.iter()
                    .zip(base)
                    .map(|(&x, &y)| x as i64 - y as i64)
                    .collect()
            })
            .collect();
        check!(rank_mod_p(&rows) == dim, "({n},{k}): modular rank differs");
        let blocks = pi_partition_blocks(s);
        check!(blocks == 2, "({n},{k}): {blocks} blocks");
        check!(
            s.positions() - blocks == dim,
            "({n},{k}): N - blocks != dim"
        );
        parts.push(format!("({n},{k}) dim {dim}"));
    }
    Ok(parts.join(", "))
}

type Metric = dyn Fn(&Barcode, &Barcode) -> f64;

fn distance_sanity() -> Outcome {
    let mut rng = SplitMix64::new(0xACCE_0011);
    let tol = 1e-9;
    for trial in 0..1000 {
        let bars: Vec<usize> = (0..3).map(|_| 1 + rng.below(6) as usize).collect();
        let [x, y, z] = [0, 1, 2].map(|i| loose_barcode(&mut rng, bars[i], 10.0));
        let metrics: [&Metric; 3] = [
            &|a, b| bottleneck(a, b).0,
            &|a, b| wasserstein(a, b, 1.0).unwrap().0,
            &|a, b| wasserstein(a, b, 2.0).unwrap().0,
        ];
        for d in metrics {
            check!(
                d(&x, &x) == 0.0 && d(&y, &y) == 0.0,
                "trial {trial}: nonzero self distance"
            );
            let (xy, yx) = (d(&x, &y), d(&y, &x));
            check!(
                (xy - yx).abs() <= tol,
                "trial {trial}: asymmetric {xy} {yx}"
            );
            check!(xy >= 0.0, "trial {trial}: negative");
            let (yz, xz) = (d(&y, &z), d(&x, &z));
            check!(
                xz <= xy + yz + tol,
                "trial {trial}: triangle {xz} > {xy} + {yz}"
            );
        }
    }
    Ok("1000 triples, bottleneck and Wasserstein with q = 1, 2".into())
}

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Duration,
    run: fn() -> Outcome,
}

fn main() {
    let secs = Duration::from_secs;
    let criteria = [
        Criterion {
            id: 1,
            name: "worked examples",
            limit: secs(1),
            run: worked_examples,
        },
        Criterion {
            id: 2,
            name: "two-bar level-one lattice",
            limit: secs(1),
            run: two_bar_lattice,
        },
        Criterion {
            id: 3,
            name: "multiset order equals Newman order",
            limit: secs(10),
            run: orders_agree,
        },
        Criterion {
            id: 4,
            name: "rank equals total crossing number",
            limit: secs(10),
            run: crossing_rank,
        },
        Criterion {
            id: 5,
            name: "principal ideal of the top element",
            limit: secs(60),
            run: principal_ideal,
        },
        Criterion {
            id: 6,
            name: "lattice laws",
            limit: secs(10),
            run: lattice_laws,
        },
        Criterion {
            id: 7,
            name: "invariance suite",
            limit: secs(30),
            run: invariance,
        },
        Criterion {
            id: 8,
            name: "aligned distance bounds",
            limit: secs(120),
            run: convergence_bounds,
        },
        Criterion {
            id: 9,
            name: "short-bar pair",
            limit: secs(1),
            run: short_bar_pair,
        },
        Criterion {
            id: 10,
            name: "polytope dimension",
            limit: secs(10),
            run: polytope_dimension,
        },
        Criterion {
            id: 11,
            name: "distance sanity",
            limit: secs(30),
            run: distance_sanity,
        },
    ];
    let mut failures = 0;
    for c in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(c.run))
            .unwrap_or_else(|p| Err(format!("panicked: {:?}", p.downcast_ref::<String>())));
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > c.limit => Err(format!("too slow ({detail})")),
            other => other,
        };
        let (tag, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failures += 1;
                ("FAIL", d)
            }
        };
        println!(
            "criterion {:>2} {tag} {} [{:.2}s / {}s]: {detail}",
            c.id,
            c.name,
            elapsed.as_secs_f64(),
            c.limit.as_secs()
        );
    }
    if failures > 0 {
        println!("{failures} criteria failed");
        std::process::exit(1);
    }
}
