//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line with its runtime (visible under `cargo test -- --nocapture`).
//! Expected values are exact; runtime budgets are asserted where stated.

#![allow(clippy::manual_div_ceil)]

use std::time::{Duration, Instant};

use num_bigint::BigUint;

use ffgrp::arith::{prime_power, prime_powers_upto, Lcg};
use ffgrp::bounds;
use ffgrp::gf::{construct_field, Field};
use ffgrp::grpenum::{
    self, classify_pgl2_subgroup, p1xp1_group, pgl_group, su4_f2_group,
    unipotent_polynomial_group, verify_conic_bound, DEFAULT_BFS_CAP,
};
use ffgrp::matgrp::{element_order_gl, element_order_naive, projective_order, Mat, ProjMat};
use ffgrp::maxorder::{psl2_max_element, singer_gl, singer_pgl};

fn finish(criterion: &str, start: Instant, budget: Option<Duration>, detail: String) {
    let elapsed = start.elapsed();
    println!("criterion {criterion}: PASS ({elapsed:.2?}) {detail}");
    if let Some(b) = budget {
        assert!(
            elapsed < b,
            "criterion {criterion} exceeded its runtime budget {b:?} (took {elapsed:.2?})"
        );
    }
}

/// q in {2,3,4,5,7,8,9} as (p, k) pairs, ascending in q.
fn grid_fields() -> Vec<Field> {
    [(2u64, 1u32), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2)]
        .iter()
        .map(|&(p, k)| construct_field(p, k).unwrap())
        .collect()
}

#[test]
fn criterion_01_sharp_gl_orders() {
    let start = Instant::now();
    let mut cases = 0;
    for field in grid_fields() {
        let q = field.q();
        for n in 1..=4u32 {
            let expected = q.pow(n) - 1;
            if expected > 10_000_000 {
                continue;
            }
            let g = singer_gl(&field, n).unwrap();
            let (structured, _) = element_order_gl(&g).unwrap();
            let naive = element_order_naive(&g, 20_000_000).unwrap();
            assert_eq!(structured, expected, "structured order, q={q}, n={n}");
            assert_eq!(naive, expected, "naive order, q={q}, n={n}");
            cases += 1;
        }
    }
    finish(
        "01 sharp-gl-orders",
        start,
        Some(Duration::from_secs(60)),
        format!("{cases} (q, n) pairs, order q^n - 1 exact"),
    );
}

#[test]
fn criterion_02_sharp_pgl_orders() {
    let start = Instant::now();
    let mut cases = 0;
    for field in grid_fields() {
        let q = field.q();
        for n in 1..=4u32 {
            if q.pow(n) - 1 > 10_000_000 {
                continue;
            }
            let expected = (q.pow(n) - 1) / (q - 1);
            let w = singer_pgl(&field, n).unwrap();
            assert_eq!(
                projective_order(&w).unwrap(),
                expected,
                "projective order, q={q}, n={n}"
            );
            cases += 1;
        }
    }
    finish(
        "02 sharp-pgl-orders",
        start,
        Some(Duration::from_secs(60)),
        format!("{cases} (q, n) pairs, order (q^n - 1)/(q - 1) exact"),
    );
}

#[test]
fn criterion_03_sharp_psl2_orders() {
    let start = Instant::now();
    let mut cases = 0;
    for q in (3..=81u64).step_by(2) {
        let Some((p, k)) = prime_power(q) else {
            continue;
        };
        let field = construct_field(p, k).unwrap();
        let w = psl2_max_element(&field).unwrap();
        let expected = (q + 1) / 2;
        assert_eq!(
            projective_order(&ProjMat::new(w.clone())).unwrap(),
            expected,
            "q={q}"
        );
        let minus_id = Mat::identity(&field, 2).scale(&field.one().neg());
        assert_eq!(w.pow(expected), minus_id, "power check, q={q}");
        cases += 1;
    }
    finish(
        "03 sharp-psl2-orders",
        start,
        Some(Duration::from_secs(10)),
        format!("{cases} odd q <= 81, order (q + 1)/2 with -identity power"),
    );
}

#[test]
fn criterion_04_order_oracle_equivalence() {
    let start = Instant::now();
    let fields = grid_fields();
    let mut lcg = Lcg::new(20240);
    let mut samples = 0;
    while samples < 1000 {
        let field = &fields[(samples % fields.len() as u64) as usize];
        let n = 1 + lcg.below(4) as usize;
        let entries: Vec<_> = (0..n * n)
            .map(|_| {
                let enc = lcg.below(field.q());
                let mut cs = Vec::new();
                let mut e = enc;
                for _ in 0..field.k() {
                    cs.push(e % field.p());
                    e /= field.p();
                }
                field.from_coeffs(&cs)
            })
            .collect();
        let m = Mat::from_entries(field, n, entries);
        if m.det().is_zero() {
            continue;
        }
        samples += 1;
        let (structured, _) = element_order_gl(&m).unwrap();
        let naive = element_order_naive(&m, 20_000_000).unwrap();
        assert_eq!(structured, naive, "order mismatch for {m} over F_{}", field.q());
    }
    finish(
        "04 order-oracle-equivalence",
        start,
        Some(Duration::from_secs(60)),
        format!("{samples} random invertible matrices, zero mismatches"),
    );
}

#[test]
fn criterion_05_no_normal_abelian_lemma() {
    let start = Instant::now();
    let full_cases: [(u32, u64); 4] = [(2, 4), (2, 5), (3, 2), (3, 3)];
    for (n, q) in full_cases {
        let (p, k) = prime_power(q).unwrap();
        let field = construct_field(p, k).unwrap();
        let g = pgl_group(&field, n, DEFAULT_BFS_CAP).unwrap();
        let jr = g.jordan_constant().unwrap();
        assert_eq!(
            jr.jordan_constant,
            g.order(),
            "pgl({n},{q}) must have no nontrivial normal abelian subgroup"
        );
    }
    for (q, expected) in [(2u64, 2u64), (3, 6)] {
        let (p, k) = prime_power(q).unwrap();
        let field = construct_field(p, k).unwrap();
        let g = pgl_group(&field, 2, DEFAULT_BFS_CAP).unwrap();
        assert_eq!(
            g.jordan_constant().unwrap().jordan_constant,
            expected,
            "excluded case pgl(2,{q})"
        );
    }
    finish(
        "05 no-normal-abelian",
        start,
        Some(Duration::from_secs(120)),
        "J(PGL) = |PGL| on the lemma grid; excluded cases give 2 and 6".to_string(),
    );
}

#[test]
fn criterion_06_paper_constants() {
    let start = Instant::now();
    // |PGL_3(F_2)| = 168, exactly
    assert_eq!(bounds::pgl3_order(2), BigUint::from(168u32));
    // |W(E8)| = 2^14 * 3^5 * 5^2 * 7
    assert_eq!(bounds::WE8_ORDER, 696_729_600);
    assert_eq!(
        BigUint::from(bounds::WE8_ORDER),
        BigUint::from(2u32).pow(14) * BigUint::from(3u32).pow(5) * BigUint::from(5u32).pow(2) * 7u32
    );
    // main constant over every prime power q <= 1024, against an
    // independent u128 evaluation of the closed form
    let mut checked = 0;
    for q in prime_powers_upto(1024) {
        let expected = if matches!(q, 2 | 4 | 8) {
            BigUint::from(696_729_600u64)
        } else {
            let q = q as u128;
            BigUint::from(q * q * q * (q * q - 1) * (q * q * q - 1))
        };
        assert_eq!(bounds::main_constant(q).unwrap(), expected, "q = {q}");
        checked += 1;
    }
    // the even-q regime below |W(E8)| is exactly {2, 4, 8}
    let crossover = bounds::crossover_check(1024).unwrap();
    assert_eq!(crossover.crossover_set, vec![2, 4, 8]);
    finish(
        "06 paper-constants",
        start,
        Some(Duration::from_secs(5)),
        format!("{checked} prime powers, crossover set {{2, 4, 8}}"),
    );
}

#[test]
fn criterion_07_simple_group_25920() {
    let start = Instant::now();
    let g = su4_f2_group(DEFAULT_BFS_CAP).unwrap();
    assert_eq!(g.order(), 25_920);
    let lattice = g.normal_subgroup_lattice().unwrap();
    assert_eq!(
        lattice.orders(),
        vec![1, 25_920],
        "the unitary group must be simple"
    );
    // stretch budget: overrunning downgrades to a slow suite, so the
    // elapsed time is reported but not asserted
    finish(
        "07 simple-group-25920",
        start,
        None,
        "order 25920, trivial proper normal lattice (10 min stretch budget)".to_string(),
    );
}

#[test]
fn criterion_08_product_and_unipotent_examples() {
    let start = Instant::now();
    for q in [2u64, 3] {
        let (p, k) = prime_power(q).unwrap();
        let field = construct_field(p, k).unwrap();
        let g = p1xp1_group(&field, DEFAULT_BFS_CAP).unwrap();
        let expected = 2 * q.pow(2) * (q.pow(2) - 1).pow(2);
        assert_eq!(g.order(), expected, "pair-automorphism order, q={q}");
        for n in 0..=4u32 {
            let u = unipotent_polynomial_group(&field, n, DEFAULT_BFS_CAP).unwrap();
            assert_eq!(u.order(), q.pow(n + 1), "unipotent order, q={q}, n={n}");
            assert!(u.is_abelian(), "unipotent abelian, q={q}, n={n}");
            assert!(
                u.element_orders().iter().all(|&o| o == 1 || o == p),
                "unipotent exponent p, q={q}, n={n}"
            );
        }
    }
    finish(
        "08 product-and-unipotent",
        start,
        Some(Duration::from_secs(60)),
        "2q^2(q^2-1)^2 orders and exponent-p vector groups for q in {2, 3}".to_string(),
    );
}

#[test]
fn criterion_09_conic_bound_suite() {
    let start = Instant::now();
    for q in [2u64, 3, 4, 5] {
        let (p, k) = prime_power(q).unwrap();
        let field = construct_field(p, k).unwrap();
        let report = verify_conic_bound(&field, DEFAULT_BFS_CAP).unwrap();
        let bound = (q * (q * q - 1)).max(60);
        assert_eq!(report.bound, bound);
        for row in &report.rows {
            assert!(
                row.jordan_constant <= bound,
                "q={q}: subgroup of order {} exceeds the bound",
                row.order
            );
        }
        match q {
            4 => {
                // equality attained by the full group A_5 = PGL_2(F_4)
                let extremal = report.rows.iter().find(|r| r.jordan_constant == 60);
                assert_eq!(extremal.expect("extremal class exists").order, 60);
            }
            5 => {
                // equality attained by the full group PGL_2(F_5)
                let extremal = report.rows.iter().find(|r| r.jordan_constant == 120);
                assert_eq!(extremal.expect("extremal class exists").order, 120);
            }
            _ => {}
        }
    }
    finish(
        "09 conic-bound",
        start,
        Some(Duration::from_secs(300)),
        "all subgroup classes within max(q(q^2-1), 60); equality at q = 4, 5".to_string(),
    );
}

#[test]
fn criterion_10_obstruction_suite() {
    let start = Instant::now();
    let mut cases = 0;
    for p in 2..=1024u64 {
        if !ffgrp::arith::is_prime(p) {
            continue;
        }
        let mut r = 2u32;
        while let Some(pr) = p.checked_pow(r) {
            if pr > 1 << 20 {
                break;
            }
            for k in 1..r {
                let v = bounds::psl_embedding_obstruction(p, k, r);
                assert_eq!(
                    v.verdict,
                    bounds::Verdict::Excluded,
                    "(p, k, r) = ({p}, {k}, {r})"
                );
                cases += 1;
            }
            r += 1;
        }
    }
    finish(
        "10 obstruction",
        start,
        Some(Duration::from_secs(10)),
        format!("{cases} triples with r > k, p^r <= 2^20, all excluded"),
    );
}

#[test]
fn criterion_11_classification_totality() {
    let start = Instant::now();
    let mut classes_total = 0;
    for q in [2u64, 3, 4, 5] {
        let (p, k) = prime_power(q).unwrap();
        let field = construct_field(p, k).unwrap();
        let g = pgl_group(&field, 2, DEFAULT_BFS_CAP).unwrap();
        for h in g.subgroups_up_to_conjugacy(g.order()).unwrap() {
            // a ClassificationGap error here would contradict the theorem
            let labels = classify_pgl2_subgroup(&h, p).unwrap();
            assert!(!labels.is_empty(), "order {} got no label", h.order());
            classes_total += 1;
        }
    }
    finish(
        "11 classification-totality",
        start,
        Some(Duration::from_secs(300)),
        format!("{classes_total} subgroup classes over q in {{2, 3, 4, 5}}, all labeled"),
    );
}

#[test]
fn criterion_12_determinism() {
    let start = Instant::now();
    let bin = env!("CARGO_BIN_EXE_ffgrp");
    let run = || {
        std::process::Command::new(bin)
            .args(["verify", "--suite", "all"])
            .output()
            .expect("binary runs")
    };
    let first = run();
    let second = run();
    assert!(first.status.success(), "first run failed");
    assert!(second.status.success(), "second run failed");
    assert_eq!(
        first.stdout, second.stdout,
        "verify --suite all must be byte-identical across runs"
    );
    assert!(!first.stdout.is_empty());
    finish(
        "12 determinism",
        start,
        None,
        format!(
            "two runs of `verify --suite all`, {} identical bytes",
            first.stdout.len()
        ),
    );
}

// The remaining spec-level invariant that belongs at the integration
// level: the structured order algorithm respects the semisimple bound on
// the acceptance grid.
#[test]
fn semisimple_bound_on_grid() {
    for field in grid_fields() {
        let q = field.q();
        let mut lcg = Lcg::new(q);
        for _ in 0..40 {
            let n = 1 + lcg.below(3) as usize;
            let entries: Vec<_> = (0..n * n)
                .map(|_| {
                    let enc = lcg.below(field.q());
                    let mut cs = Vec::new();
                    let mut e = enc;
                    for _ in 0..field.k() {
                        cs.push(e % field.p());
                        e /= field.p();
                    }
                    field.from_coeffs(&cs)
                })
                .collect();
            let m = Mat::from_entries(&field, n, entries);
            if m.det().is_zero() {
                continue;
            }
            let (order, decomp) = element_order_gl(&m).unwrap();
            if order % field.p() != 0 {
                assert!(order < q.pow(n as u32));
                assert_eq!(decomp.unipotent_exponent, 1);
            }
        }
    }
}

// Jordan reports surface through the group-spec interface exactly as the
// CLI consumes them.
#[test]
fn jordan_report_json_shape() {
    let spec: grpenum::GroupSpec = "pgl:3:2".parse().unwrap();
    let g = grpenum::special_group(&spec, DEFAULT_BFS_CAP).unwrap();
    let report = g.jordan_constant().unwrap();
    let v = report.to_json();
    assert_eq!(v["order"], 168);
    assert_eq!(v["jordan_constant"], 168);
    assert_eq!(v["witness_order"], 1);
    assert!(v["witness_generators"].is_array());
}
