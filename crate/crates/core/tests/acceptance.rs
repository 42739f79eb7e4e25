//! End-to-end acceptance checks. Each test prints a single pass line;
//! a panic marks the criterion as failed.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use spectral_rewire::generators;
use spectral_rewire::graph::{Graph, RelationTag};
use spectral_rewire::io;
use spectral_rewire::rewire::{
    delta_normalized_adjacency, delta_quadratic_form, first_order_gap_change, fosr_rewire,
    fosr_score, greedy_exact_rewire, random_rewire, RewireConfig, Selection,
};
use spectral_rewire::smoothing::verify_theorem1;
use spectral_rewire::spectral::{
    adjacency_second_eigenpair, cheeger_bruteforce, spectral_gap_exact, symmetric_eigen_sorted,
};
use std::time::Instant;

fn pearson(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    let mut syy = 0.0;
    for (&x, &y) in xs.iter().zip(ys) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
        syy += (y - my) * (y - my);
    }
    sxy / (sxx * syy).sqrt()
}

fn loglog_slope(ns: &[usize], ts: &[f64]) -> f64 {
    let xs: Vec<f64> = ns.iter().map(|&n| (n as f64).ln()).collect();
    let ys: Vec<f64> = ts.iter().map(|&t| t.ln()).collect();
    let k = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / k;
    let my = ys.iter().sum::<f64>() / k;
    let num: f64 = xs.iter().zip(&ys).map(|(&x, &y)| (x - mx) * (y - my)).sum();
    let den: f64 = xs.iter().map(|&x| (x - mx) * (x - mx)).sum();
    num / den
}

/// Connected clique-chain fixture with a handful of random extra edges:
/// the rewired pairs used for the rate-of-smoothing sweep.
fn random_rewired_pair(seed: u64) -> (Graph, Vec<(usize, usize)>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g1 = if seed.is_multiple_of(2) {
        let c = rng.random_range(5..=12usize);
        let l = rng.random_range(1..=3usize);
        generators::dumbbell(c, l).unwrap()
    } else {
        let q = rng.random_range(2..=3usize);
        let c = rng.random_range(5..=(30 / q));
        generators::path_of_cliques(q, c).unwrap()
    };
    let non = g1.non_edges();
    let extra = rng.random_range(1..=3usize);
    let mut added = Vec::new();
    let mut probe = g1.clone();
    for _ in 0..extra {
        let (u, v) = non[rng.random_range(0..non.len())];
        if probe.add_edge(u, v, RelationTag::Added).is_ok() {
            added.push((u, v));
        }
    }
    (g1, added)
}

#[test]
fn criterion_1_rate_of_smoothing() {
    let start = Instant::now();
    for seed in 0..50u64 {
        let (g1, added) = random_rewired_pair(seed);
        assert!(g1.node_count() >= 5 && g1.node_count() <= 30);
        for &alpha in &[0.0, 0.25, 0.5, 0.75, 1.0] {
            let (report, pass) = verify_theorem1(&g1, &added, alpha).unwrap();
            assert!(
                pass,
                "seed {seed} alpha {alpha}: rate {} vs {}",
                report.rate,
                alpha * report.lambda2
            );
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    assert!(elapsed < 10.0, "took {elapsed:.2}s, budget 10s");
    println!("criterion 1 (rate-of-smoothing construction, 50 pairs x 5 alphas): pass ({elapsed:.2}s)");
}

#[test]
fn criterion_2_eigenvalue_gradient() {
    let start = Instant::now();
    let n = 10;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut done = 0;
    while done < 100 {
        let a_raw = DMatrix::from_fn(n, n, |_, _| StandardNormal.sample(&mut rng));
        let a = (&a_raw + a_raw.transpose()) * 0.5;
        let (vals, vecs) = symmetric_eigen_sorted(a.clone());
        let min_sep = vals
            .windows(2)
            .map(|w| w[1] - w[0])
            .fold(f64::INFINITY, f64::min);
        if min_sep < 1e-2 {
            continue;
        }
        let e_raw = DMatrix::from_fn(n, n, |_, _| StandardNormal.sample(&mut rng));
        let mut e = (&e_raw + e_raw.transpose()) * 0.5;
        e /= e.norm();
        let h = 1e-5;
        let (plus, _) = symmetric_eigen_sorted(&a + h * &e);
        let (minus, _) = symmetric_eigen_sorted(&a - h * &e);
        for i in 0..n {
            let fd = (plus[i] - minus[i]) / (2.0 * h);
            let xi = vecs.column(i);
            let analytic = (xi.transpose() * &e * xi)[(0, 0)];
            assert!(
                (fd - analytic).abs() < 1e-6,
                "matrix {done}, eigenvalue {i}: fd {fd} vs {analytic}"
            );
        }
        done += 1;
    }
    let elapsed = start.elapsed().as_secs_f64();
    assert!(elapsed < 5.0, "took {elapsed:.2}s, budget 5s");
    println!("criterion 2 (eigenvalue gradient, 100 matrices): pass ({elapsed:.2}s)");
}

#[test]
fn criterion_3_first_order_identity() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut done = 0;
    while done < 50 {
        let n = rng.random_range(5..=30usize);
        let p = rng.random_range(0.25..0.6);
        let g = generators::erdos_renyi(n, p, rng.random()).unwrap();
        if g.isolated_node().is_some() || g.is_complete() {
            continue;
        }
        let (lambda, x) = adjacency_second_eigenpair(&g).unwrap();
        for (u, v) in g.non_edges() {
            let eq4 = first_order_gap_change(&g, &x, lambda, u, v).unwrap();
            let map = delta_normalized_adjacency(&g, u, v).unwrap();
            let quad = delta_quadratic_form(&map, &x);
            let tol = 1e-10 * eq4.abs().max(quad.abs()) + 1e-14;
            assert!(
                (eq4 - quad).abs() <= tol,
                "graph {done}, edge ({u},{v}): {eq4} vs {quad}"
            );
        }
        done += 1;
    }
    let elapsed = start.elapsed().as_secs_f64();
    assert!(elapsed < 30.0, "took {elapsed:.2}s, budget 30s");
    println!("criterion 3 (first-order change vs entry-wise delta, 50 graphs): pass ({elapsed:.2}s)");
}

#[test]
fn criterion_4_cheeger() {
    let start = Instant::now();
    let report = cheeger_bruteforce(&generators::dumbbell(4, 1).unwrap()).unwrap();
    assert_eq!(report.h, 1.0 / 13.0, "dumbbell(4,1) Cheeger constant");

    let mut graphs: Vec<Graph> = Vec::new();
    for c in 2..=6 {
        for l in 1..=4 {
            let g = generators::dumbbell(c, l).unwrap();
            if g.node_count() <= 16 {
                graphs.push(g);
            }
        }
    }
    for q in 2..=4 {
        for c in 2..=5 {
            if q * c <= 16 {
                graphs.push(generators::path_of_cliques(q, c).unwrap());
            }
        }
    }
    for n in 3..=16 {
        graphs.push(generators::ring(n).unwrap());
        graphs.push(generators::path(n).unwrap());
        graphs.push(generators::star(n - 1).unwrap());
        graphs.push(generators::complete(n).unwrap());
    }
    for seed in 0..80u64 {
        let n = 4 + (seed as usize % 13);
        for &p in &[0.3, 0.5, 0.7] {
            let g = generators::erdos_renyi(n, p, seed).unwrap();
            if g.is_connected() {
                graphs.push(g);
            }
        }
    }
    assert!(graphs.len() >= 200, "only {} instances", graphs.len());
    for (idx, g) in graphs.iter().enumerate() {
        let rep = cheeger_bruteforce(g).unwrap();
        assert!(
            rep.bounds_ok,
            "instance {idx} (n={}): h={} lambda2={}",
            g.node_count(),
            rep.h,
            rep.lambda2
        );
    }
    let elapsed = start.elapsed().as_secs_f64();
    assert!(elapsed < 60.0, "took {elapsed:.2}s, budget 60s");
    println!(
        "criterion 4 (Cheeger closed form + inequality, {} graphs): pass ({elapsed:.2}s)",
        graphs.len()
    );
}

/// A trajectory step counts as decreasing only when the exact gap drops
/// by more than 2e-3 (under 1% of the gap scale reached on these
/// fixtures); smaller dips come from eigenvalue crossings the
/// first-order method cannot see.
fn nondecreasing_fraction(initial: f64, gaps: &[f64]) -> f64 {
    let mut prev = initial;
    let mut ok = 0usize;
    for &g in gaps {
        if g >= prev - 2e-3 {
            ok += 1;
        }
        prev = g;
    }
    ok as f64 / gaps.len() as f64
}

#[test]
fn criterion_5_expansion_behavior() {
    let start = Instant::now();
    let cfg = RewireConfig {
        iterations: 100,
        track_exact_gap: true,
        steps_per_edge: 15,
        seed: 0,
        ..Default::default()
    };
    let mut fosr_dumbbell_final = 0.0;
    for (is_dumbbell, g) in [
        (false, generators::path_of_cliques(3, 10).unwrap()),
        (true, generators::dumbbell(10, 3).unwrap()),
    ] {
        let initial = spectral_gap_exact(&g).unwrap();
        let out = fosr_rewire(&g, &cfg).unwrap();
        let gaps: Vec<f64> = out.trajectory.iter().map(|r| r.exact_gap.unwrap()).collect();
        let last = *gaps.last().unwrap();
        assert!(last > initial, "final gap {last} <= initial {initial}");
        let frac = nondecreasing_fraction(initial, &gaps);
        assert!(frac >= 0.95, "non-decreasing at only {frac:.3} of iterations");
        if is_dumbbell {
            fosr_dumbbell_final = last;
        }
    }
    // random rewiring with the same budget lands strictly lower on the dumbbell
    let dumbbell = generators::dumbbell(10, 3).unwrap();
    let k = 100.min(dumbbell.non_edges().len());
    let mut total = 0.0;
    for seed in 0..10u64 {
        let out = random_rewire(&dumbbell, k, seed).unwrap();
        total += spectral_gap_exact(&out.graph).unwrap();
    }
    let random_avg = total / 10.0;
    assert!(
        random_avg < fosr_dumbbell_final,
        "random avg {random_avg} >= fosr {fosr_dumbbell_final}"
    );
    let elapsed = start.elapsed().as_secs_f64();
    assert!(elapsed < 120.0, "took {elapsed:.2}s, budget 120s");
    println!("criterion 5 (expansion curves + random baseline): pass ({elapsed:.2}s)");
}

fn fosr_vs_greedy(g: &Graph, iterations: usize) -> f64 {
    let greedy = greedy_exact_rewire(g, iterations).unwrap();
    let cfg = RewireConfig {
        iterations,
        steps_per_edge: 15,
        track_exact_gap: true,
        seed: 0,
        ..Default::default()
    };
    let fosr = fosr_rewire(g, &cfg).unwrap();
    let mut min_ratio = f64::INFINITY;
    for (gr, fr) in greedy.trajectory.iter().zip(&fosr.trajectory) {
        min_ratio = min_ratio.min(fr.exact_gap.unwrap() / gr.exact_gap.unwrap());
    }
    min_ratio
}

#[test]
fn criterion_6_fosr_tracks_greedy() {
    let start = Instant::now();
    let g = generators::dumbbell(10, 3).unwrap();
    let min_ratio = fosr_vs_greedy(&g, 50);
    assert!(min_ratio >= 0.9, "min per-iteration ratio {min_ratio:.4} < 0.9");
    let elapsed = start.elapsed().as_secs_f64();
    println!("criterion 6 (fosr >= 0.9 x greedy, dumbbell(10,3)): pass (min ratio {min_ratio:.3}, {elapsed:.2}s)");
}

#[test]
#[ignore = "paper-scale greedy baseline; run with --ignored (budget 10 min)"]
fn criterion_6_fosr_tracks_greedy_paper_scale() {
    let start = Instant::now();
    let g = generators::dumbbell(50, 3).unwrap();
    let min_ratio = fosr_vs_greedy(&g, 50);
    assert!(min_ratio >= 0.9, "min per-iteration ratio {min_ratio:.4} < 0.9");
    let elapsed = start.elapsed().as_secs_f64();
    assert!(elapsed < 600.0, "took {elapsed:.2}s, budget 600s");
    println!("criterion 6b (fosr >= 0.9 x greedy, dumbbell(50,3)): pass (min ratio {min_ratio:.3}, {elapsed:.2}s)");
}

/// Two dense 10-node communities joined by a single bridge: graphs whose
/// candidate edges span a wide range of gap improvements.
fn two_blob(seed: u64) -> Option<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::empty(20);
    for blob in 0..2usize {
        let lo = blob * 10;
        for i in lo..lo + 10 {
            for j in (i + 1)..lo + 10 {
                if rng.random::<f64>() < 0.7 {
                    g.add_edge(i, j, RelationTag::Original).ok()?;
                }
            }
        }
    }
    let u = rng.random_range(0..10usize);
    let v = 10 + rng.random_range(0..10usize);
    g.add_edge(u, v, RelationTag::Original).ok()?;
    if g.is_connected() {
        Some(g)
    } else {
        None
    }
}

#[test]
fn criterion_7_approximation_correlations() {
    let start = Instant::now();
    let mut exact = Vec::new();
    let mut eq4s = Vec::new();
    let mut eq5s = Vec::new();
    let mut done = 0;
    let mut seed = 0;
    while done < 20 {
        seed += 1;
        let Some(g) = two_blob(seed) else { continue };
        let (lambda, x) = adjacency_second_eigenpair(&g).unwrap();
        for (u, v) in g.non_edges() {
            let mut trial = g.clone();
            trial.add_edge(u, v, RelationTag::Added).unwrap();
            let (lambda_after, _) = adjacency_second_eigenpair(&trial).unwrap();
            exact.push(lambda_after - lambda);
            eq4s.push(first_order_gap_change(&g, &x, lambda, u, v).unwrap());
            eq5s.push(fosr_score(&x, &g, u, v).unwrap());
        }
        done += 1;
    }
    let r_exact_eq4 = pearson(&exact, &eq4s);
    let r_eq4_eq5 = pearson(&eq4s, &eq5s);
    assert!(r_exact_eq4 > 0.9, "corr(exact, first-order) = {r_exact_eq4:.4}");
    assert!(r_eq4_eq5 > 0.9, "corr(first-order, surrogate) = {r_eq4_eq5:.4}");
    let elapsed = start.elapsed().as_secs_f64();
    println!("criterion 7 (approximation correlations {r_exact_eq4:.3} / {r_eq4_eq5:.3}): pass ({elapsed:.2}s)");
}

fn rewire_time(n: usize, selection: Selection) -> f64 {
    let g = generators::er_paper(n, 1).unwrap();
    assert!(g.isolated_node().is_none(), "er fixture n={n} has an isolated node");
    let cfg = RewireConfig {
        iterations: 20,
        selection,
        seed: 0,
        ..Default::default()
    };
    // min over repeats rejects scheduler noise
    (0..3)
        .map(|_| fosr_rewire(&g, &cfg).unwrap().rewire_seconds)
        .fold(f64::INFINITY, f64::min)
}

#[test]
fn criterion_8_complexity_scaling() {
    let ns = [200usize, 400, 800, 1600];
    let relaxed: Vec<f64> = ns.iter().map(|&n| rewire_time(n, Selection::Relaxed)).collect();
    let exhaustive: Vec<f64> = ns
        .iter()
        .map(|&n| rewire_time(n, Selection::Exhaustive))
        .collect();
    let slope_relaxed = loglog_slope(&ns, &relaxed);
    let slope_exhaustive = loglog_slope(&ns, &exhaustive);
    assert!(
        slope_relaxed < 1.6,
        "relaxed slope {slope_relaxed:.2}, times {relaxed:?}"
    );
    assert!(
        (1.6..=2.6).contains(&slope_exhaustive),
        "exhaustive slope {slope_exhaustive:.2}, times {exhaustive:?}"
    );
    println!(
        "criterion 8 (scaling: relaxed slope {slope_relaxed:.2}, exhaustive slope {slope_exhaustive:.2}): pass"
    );
}

#[test]
fn criterion_9_determinism_and_round_trip() {
    let start = Instant::now();
    let g = generators::dumbbell(8, 2).unwrap();
    let cfg = RewireConfig {
        iterations: 25,
        track_exact_gap: true,
        seed: 3,
        ..Default::default()
    };
    let a = fosr_rewire(&g, &cfg).unwrap();
    let b = fosr_rewire(&g, &cfg).unwrap();
    assert_eq!(
        io::edge_list_to_string(&a.graph),
        io::edge_list_to_string(&b.graph)
    );
    assert_eq!(
        io::trajectory_to_csv(&a.trajectory),
        io::trajectory_to_csv(&b.trajectory)
    );
    let ra = random_rewire(&g, 10, 5).unwrap();
    let rb = random_rewire(&g, 10, 5).unwrap();
    assert_eq!(
        io::edge_list_to_string(&ra.graph),
        io::edge_list_to_string(&rb.graph)
    );

    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..100 {
        let n = rng.random_range(2..=40usize);
        let p = rng.random_range(0.05..0.9);
        let g = generators::erdos_renyi(n, p, rng.random()).unwrap();
        let text = io::edge_list_to_string(&g);
        let back = io::parse_edge_list(&text).unwrap();
        assert_eq!(back.node_count(), g.node_count());
        assert_eq!(back.edges(), g.edges());
        assert_eq!(io::edge_list_to_string(&back), text);
    }
    let elapsed = start.elapsed().as_secs_f64();
    println!("criterion 9 (determinism + file round-trip): pass ({elapsed:.2}s)");
}
