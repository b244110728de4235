//! Acceptance suite: one test per criterion, each asserting the exact
//! values and finishing within its stated time budget. Run with
//! `cargo test -p overrot-cli --test acceptance`.

use overrot::farey::lf;
use overrot::kneading::{
    interval_class, kneading_of_pattern, rotation_kneading, strongest_kneading, IntervalClass,
    KneadingSequence,
};
use overrot::markov::{build_markov, enumerate_loops, forced_cycles_up_to, min_cycle_mean};
use overrot::pattern::Pattern;
use overrot::rational::Rational;
use overrot::vbo::{gamma, vbo_build, verify_vbo};
use std::cmp::Ordering;
use std::process::Command;
use std::time::{Duration, Instant};

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_overrot"))
}

fn rat(s: &str) -> Rational {
    s.parse().unwrap()
}

fn ks(s: &str) -> KneadingSequence {
    s.parse().unwrap()
}

fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn reduced_below_half(max_q: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for q in 3..=max_q {
        for p in 1..=(q - 1) / 2 {
            if gcd(p, q) == 1 {
                out.push((p, q));
            }
        }
    }
    out
}

fn finish(criterion: &str, start: Instant, budget: Duration) {
    let elapsed = start.elapsed();
    assert!(
        elapsed < budget,
        "criterion {criterion} took {elapsed:?}, budget {budget:?}"
    );
    println!("PASS  criterion {criterion} ({elapsed:?})");
}

#[test]
fn criterion_1_very_badly_ordered_six_cycle() {
    let t0 = Instant::now();
    let out = binary()
        .args(["analyze", "2 4 6 5 3 1", "--json"])
        .output()
        .expect("binary runs");
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["orp"]["p"], 2);
    assert_eq!(v["orp"]["q"], 6);
    assert_eq!(v["code_class"], "nondecreasing_not_monotone");
    assert_eq!(v["block_decompositions"].as_array().unwrap().len(), 0);
    assert_eq!(v["r"], "1/3");
    assert_eq!(v["very_badly_ordered"], true);
    finish("1 (2,6) example", t0, Duration::from_secs(1));
}

#[test]
fn criterion_2_four_ten_construction() {
    let t0 = Instant::now();
    let built = vbo_build(2, 2, 5).unwrap();
    assert_eq!(built.one_line(), "4 6 10 9 8 7 5 3 2 1");

    let code = built.code().unwrap();
    let expected: Vec<Rational> = ["0", "1/5", "1/5", "2/5", "2/5", "3/5", "1", "4/5", "4/5", "3/5"]
        .iter()
        .map(|s| rat(s))
        .collect();
    assert_eq!(code.values(), &expected[..]);

    assert_eq!(kneading_of_pattern(&built).unwrap(), ks("(RLRRLRRRRC)^inf"));

    let a = code.fixed_point();
    assert!(rat("6") < a && a < rat("7"), "fixed point {a} strictly between 6 and 7");

    let mcm = min_cycle_mean(&build_markov(&built).unwrap()).unwrap();
    assert_eq!(mcm.r, rat("2/5"));
    finish("2 (4,10) example", t0, Duration::from_secs(1));
}

#[test]
fn criterion_3_gluing_identity() {
    let t0 = Instant::now();
    assert_eq!(vbo_build(2, 1, 3).unwrap().one_line(), "2 4 6 5 3 1");
    finish("3 gluing identity", t0, Duration::from_secs(1));
}

#[test]
fn criterion_4_strongest_kneading() {
    let t0 = Instant::now();
    let strongest = strongest_kneading(2, 5).unwrap();
    assert_eq!(strongest.prefix(12), "RLRRLRRRRLRR");

    let glued = kneading_of_pattern(&vbo_build(2, 2, 5).unwrap()).unwrap();
    let d = strongest.compare_detailed(&glued);
    assert_eq!(d.ordering, Ordering::Greater);
    assert_eq!(d.first_difference, Some(9), "first difference at 1-based position 10");
    assert_eq!(d.rs_before, 7, "seven Rs before the difference");
    finish("4 strongest kneading", t0, Duration::from_secs(1));
}

#[test]
fn criterion_5_gamma_sweep() {
    let t0 = Instant::now();
    for (p, q) in reduced_below_half(25) {
        let g = gamma(p, q).unwrap();
        assert!(g.is_overtwist(), "gamma({p}, {q}) must be an over-twist");
        let orp = g.over_rotation_pair();
        assert_eq!((orp.p, orp.q), (p, q), "orp of gamma({p}, {q})");
        let mcm = min_cycle_mean(&build_markov(&g).unwrap()).unwrap();
        assert_eq!(mcm.r, Rational::new(p as i128, q as i128));
        assert_eq!(
            kneading_of_pattern(&g).unwrap(),
            rotation_kneading(p, q).unwrap()
        );
        assert_eq!(interval_class(&g, p, q).unwrap(), IntervalClass::Equals);
    }
    finish("5 gamma sweep (q <= 25)", t0, Duration::from_secs(10));
}

#[test]
fn criterion_6_vbo_sweep() {
    let t0 = Instant::now();
    for k in 2..=5usize {
        for (p, q) in reduced_below_half(12) {
            let built = vbo_build(k, p, q).unwrap();
            let report = verify_vbo(&built, p, q).unwrap();
            assert!(
                report.passed(),
                "vbo_build({k}, {p}, {q}) fails: {:?}",
                report.failing_checks()
            );
            assert!(
                report.code_nondecreasing && report.kneading_sandwich && report.r_equals_rho,
                "all three r = rho routes must agree for ({k}, {p}, {q})"
            );
        }
    }
    finish("6 vbo sweep (k <= 5, q <= 12)", t0, Duration::from_secs(60));
}

#[test]
fn criterion_7_exhaustive_theorems() {
    let t0 = Instant::now();
    let mut checked = 0usize;
    for n in 2..=7usize {
        for pat in Pattern::all_cyclic(n) {
            if !pat.is_convergent() {
                continue;
            }
            checked += 1;
            let orp = pat.over_rotation_pair();
            let rho = orp.rho();
            let graph = build_markov(&pat).unwrap();
            let mcm = min_cycle_mean(&graph).unwrap();
            let code = pat.code().unwrap();
            let overtwist = pat.is_overtwist();

            // (a) with a coprime pair, the left endpoint reaches rho exactly
            // for over-twists.
            if orp.is_coprime() {
                assert_eq!(
                    mcm.r == rho,
                    overtwist,
                    "(a) fails for {pat}: r = {}, rho = {rho}",
                    mcm.r
                );
            }

            // (b) the left endpoint reaches rho exactly when the code is
            // non-decreasing.
            assert_eq!(
                mcm.r == rho,
                code.is_nondecreasing(),
                "(b) fails for {pat}"
            );

            // (c) a coprime non-over-twist forces below the left Farey
            // neighbour.
            if orp.is_coprime() && !overtwist {
                assert!(
                    mcm.r <= lf(orp.p, orp.q),
                    "(c) fails for {pat}: r = {} > lf = {}",
                    mcm.r,
                    lf(orp.p, orp.q)
                );
            }

            // (d) equal codes on one side force a common factor.
            if !code.same_side_ties().is_empty() {
                assert!(
                    !orp.is_coprime(),
                    "(d) fails for {pat}: same-side tie with coprime pair"
                );
            }

            // (e) three routes to the left endpoint agree: Karp, the brute
            // force over enumerated loops of qualifying components, and the
            // infimum over realized forced cycles.
            let brute = brute_force_left_endpoint(&graph);
            assert_eq!(mcm.r, brute, "(e) brute-force loop minimum for {pat}");
            let forced = forced_cycles_up_to(&pat, 8).unwrap();
            let forced_min = forced
                .iter()
                .map(|fc| fc.orp.rho())
                .min()
                .expect("the pattern itself is always forced");
            assert!(forced_min >= mcm.r, "(e) realized cycle below r for {pat}");
            if mcm.attained {
                assert_eq!(
                    forced_min, mcm.r,
                    "(e) attained infimum must be realized for {pat}"
                );
            } else {
                assert!(
                    forced_min > Rational::ZERO,
                    "(e) r = 0 is never realized, {pat}"
                );
            }
        }
    }
    assert_eq!(checked, 381, "number of convergent patterns of period 2..=7");
    finish("7 exhaustive theorem sweep (381 convergent patterns)", t0, Duration::from_secs(300));
}

/// Independent route to the left endpoint: enumerate every loop up to the
/// node count, group loops into components via shared nodes, discard
/// components whose loops never switch sides, and halve the minimum mean.
fn brute_force_left_endpoint(graph: &overrot::MarkovGraph) -> Rational {
    let loops: Vec<Vec<usize>> = enumerate_loops(graph, graph.node_count()).collect();
    let weight = |l: &[usize]| -> i128 {
        (0..l.len())
            .map(|i| i128::from(graph.weight(l[i], l[(i + 1) % l.len()])))
            .sum()
    };
    // Union-find over nodes; loops sharing a node share a component.
    let mut parent: Vec<usize> = (0..graph.node_count()).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let root = find(parent, parent[x]);
            parent[x] = root;
        }
        parent[x]
    }
    for l in &loops {
        for w in l.windows(2) {
            let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
            parent[a] = b;
        }
    }
    let mut qualifying = vec![false; graph.node_count()];
    for l in &loops {
        if weight(l) > 0 {
            let root = find(&mut parent, l[0]);
            qualifying[root] = true;
        }
    }
    loops
        .iter()
        .filter(|l| {
            let root = find(&mut parent, l[0]);
            qualifying[root]
        })
        .map(|l| Rational::new(weight(l), 2 * l.len() as i128))
        .min()
        .expect("a convergent pattern graph has a qualifying loop")
}

#[test]
fn criterion_8_forced_cycle_oracle() {
    let t0 = Instant::now();
    let forced = forced_cycles_up_to(&Pattern::parse("2 3 1").unwrap(), 4).unwrap();
    assert_eq!(forced.len(), 3);

    assert_eq!(forced[0].pattern.one_line(), "2 1");
    assert_eq!((forced[0].orp.p, forced[0].orp.q), (1, 2));
    let mut orbit = forced[0].witness.clone();
    orbit.sort();
    assert_eq!(orbit, vec![rat("5/3"), rat("8/3")]);

    assert_eq!(forced[1].pattern.one_line(), "2 3 1");
    assert_eq!((forced[1].orp.p, forced[1].orp.q), (1, 3));

    assert_eq!(forced[2].pattern.one_line(), "3 4 2 1");
    assert_eq!((forced[2].orp.p, forced[2].orp.q), (2, 4));

    // Witnesses are genuine orbits: consecutive coordinates map to each
    // other under the connect-the-dots map of [2, 3, 1], exactly.
    let base = Pattern::parse("2 3 1").unwrap();
    let f_at = |x: Rational| -> Rational {
        if x.is_integer() {
            return Rational::int(base.image(x.numer() as usize) as i128);
        }
        let u = x.floor() as usize;
        let fu = base.image(u) as i128;
        let d = base.image(u + 1) as i128 - fu;
        Rational::int(fu) + Rational::int(d) * (x - Rational::int(u as i128))
    };
    for fc in &forced {
        let len = fc.witness.len();
        for i in 0..len {
            assert_eq!(
                f_at(fc.witness[i]),
                fc.witness[(i + 1) % len],
                "witness of {} steps exactly",
                fc.pattern
            );
        }
    }
    finish("8 forced-cycle oracle", t0, Duration::from_secs(1));
}

#[test]
fn criterion_9_kneading_monotonicity() {
    let t0 = Instant::now();
    let fractions = reduced_below_half(12);
    let sequences: Vec<(Rational, KneadingSequence, KneadingSequence)> = fractions
        .iter()
        .map(|&(p, q)| {
            (
                Rational::new(p as i128, q as i128),
                rotation_kneading(p, q).unwrap(),
                strongest_kneading(p, q).unwrap(),
            )
        })
        .collect();
    for (i, (s, nu_s, _)) in sequences.iter().enumerate() {
        for (t, nu_t, _) in sequences.iter().skip(i + 1) {
            if s < t {
                assert_eq!(nu_s.compare(nu_t), Ordering::Greater, "{s} vs {t}");
            } else if t < s {
                assert_eq!(nu_t.compare(nu_s), Ordering::Greater, "{t} vs {s}");
            }
        }
    }
    for (rho, nu, nu_strong) in &sequences {
        assert!(nu.is_shift_maximal(), "weakest of {rho}");
        assert!(nu_strong.is_shift_maximal(), "strongest of {rho}");
    }
    finish("9 kneading monotonicity (denominators <= 12)", t0, Duration::from_secs(10));
}
