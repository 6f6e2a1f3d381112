//! Batch command-line front end: element orders, maximal-order witnesses,
//! Jordan constants, subgroup classification, bound tables, and the
//! verification suites. Non-interactive; every command renders as text,
//! JSON, or TSV and exits 0 (pass), 1 (verified claim failed), or
//! 2 (usage or input error).

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::arith::prime_power;
use crate::bounds;
use crate::error::Error;
use crate::gf::construct_field;
use crate::grpenum::{self, pgl_group, special_group, GroupSpec};
use crate::matgrp::{element_order_gl, parse_mat, projective_order, ProjMat};
use crate::maxorder::{psl2_max_element, singer_gl, singer_pgl, verify_sharpness};
use crate::Result;

#[derive(Parser)]
#[command(
    name = "ffgrp",
    about = "Exact verification of element-order bounds and Jordan constants in finite linear groups"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Enumeration cap (number of group elements).
    #[arg(long, global = true, env = "FFGRP_CAP", default_value_t = grpenum::DEFAULT_BFS_CAP)]
    pub cap: usize,

    /// Upper end of q ranges (bounds table, crossover suite).
    #[arg(long, global = true)]
    pub qmax: Option<u64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Tsv,
}

#[derive(Subcommand)]
pub enum Command {
    /// Exact order of a matrix with its block decomposition.
    Order {
        /// Field characteristic.
        #[arg(long)]
        p: u64,
        /// Extension degree.
        #[arg(long, default_value_t = 1)]
        k: u32,
        /// Matrix literal: rows split by ';', entries by ','; extension
        /// entries as bracketed coefficient vectors like '[1 0]'.
        #[arg(long)]
        mat: String,
        /// Compute the projective order instead.
        #[arg(long)]
        projective: bool,
    },
    /// Maximal-order element of GL_n(F_q) and its projective image.
    Singer {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        k: u32,
        #[arg(long)]
        n: u32,
    },
    /// Maximal-order witness in PSL_2(F_q) for odd q.
    Pslmax {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        k: u32,
    },
    /// Jordan constant of a named group, e.g. pgl:3:2, dihedral:6, su4f2.
    Jordan {
        #[arg(long)]
        group: String,
    },
    /// Classify every subgroup class of PGL_2(F_q).
    Classify {
        #[arg(long)]
        q: u64,
    },
    /// Closed-form bound table over prime powers q <= qmax.
    Bounds {},
    /// Run a verification suite.
    Verify {
        /// One of: gl-orders, pgl-orders, psl2-orders, no-normal-abelian,
        /// conic-bound, obstruction, crossover, examples, all.
        #[arg(long)]
        suite: String,
        /// Single q for the examples suite.
        #[arg(long)]
        q: Option<u64>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Status {
    Pass,
    Fail,
    InputError,
}

/// Uniform result of one command invocation.
pub struct CommandResult {
    pub status: Status,
    pub payload: serde_json::Value,
    pub human_text: String,
    pub tsv: Option<String>,
}

impl CommandResult {
    fn pass(payload: serde_json::Value, human_text: String) -> CommandResult {
        CommandResult {
            status: Status::Pass,
            payload,
            human_text,
            tsv: None,
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.human_text.clone(),
            Format::Json => serde_json::to_string_pretty(&self.payload).unwrap(),
            Format::Tsv => self.tsv.clone().unwrap_or_else(|| self.human_text.clone()),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::InputError => 2,
        }
    }
}

/// Entry point shared by the binary and the tests: runs the command and
/// returns (rendered output, exit code).
pub fn run(cli: &Cli) -> (String, i32) {
    match dispatch(cli) {
        Ok(result) => (result.render(cli.format), result.exit_code()),
        Err(e) => (format!("error: {e}"), 2),
    }
}

fn dispatch(cli: &Cli) -> Result<CommandResult> {
    match &cli.command {
        Command::Order {
            p,
            k,
            mat,
            projective,
        } => cmd_order(*p, *k, mat, *projective),
        Command::Singer { p, k, n } => cmd_singer(*p, *k, *n),
        Command::Pslmax { p, k } => cmd_pslmax(*p, *k),
        Command::Jordan { group } => cmd_jordan(group, cli.cap),
        Command::Classify { q } => cmd_classify(*q, cli.cap),
        Command::Bounds {} => cmd_bounds(cli.qmax.unwrap_or(9)),
        Command::Verify { suite, q } => cmd_verify(suite, cli.qmax, *q, cli.cap),
    }
}

fn cmd_order(p: u64, k: u32, mat: &str, projective: bool) -> Result<CommandResult> {
    let field = construct_field(p, k)?;
    let m = parse_mat(&field, mat)?;
    let (order, decomp) = element_order_gl(&m)?;
    let mut text = String::new();
    let reported = if projective {
        let po = projective_order(&ProjMat::new(m.clone()))?;
        text.push_str(&format!("projective order: {po}\n"));
        po
    } else {
        text.push_str(&format!("order: {order}\n"));
        order
    };
    text.push_str(&format!(
        "affine order: {order}\nunipotent exponent: {}\n",
        decomp.unipotent_exponent
    ));
    for b in &decomp.blocks {
        text.push_str(&format!(
            "block ({}) degree {} order {}\n",
            b.factor, b.degree, b.block_order
        ));
    }
    let mut payload = decomp.to_json();
    payload["projective"] = json!(projective);
    payload["reported_order"] = json!(reported);
    payload["field"] = field.to_json();
    Ok(CommandResult::pass(payload, text))
}

fn cmd_singer(p: u64, k: u32, n: u32) -> Result<CommandResult> {
    let field = construct_field(p, k)?;
    let report = verify_sharpness(&field, n)?;
    let g = singer_gl(&field, n)?;
    let pg = singer_pgl(&field, n)?;
    let q = field.q();
    let text = format!(
        "q = {q}, n = {n}\ngl witness: {g}\ngl order: {} (= q^n - 1)\npgl witness: {pg}\npgl order: {} (= (q^n - 1)/(q - 1))\n",
        q.pow(n) - 1,
        (q.pow(n) - 1) / (q - 1),
    );
    let payload = json!({
        "q": q,
        "n": n,
        "field": field.to_json(),
        "gl_witness": g.to_string(),
        "gl_order": q.pow(n) - 1,
        "pgl_witness": pg.to_string(),
        "pgl_order": (q.pow(n) - 1) / (q - 1),
        "checks": report.checks.iter().map(|c| json!({
            "label": c.label, "expected": c.expected,
            "structured": c.structured, "naive": c.naive,
        })).collect::<Vec<_>>(),
    });
    Ok(CommandResult::pass(payload, text))
}

fn cmd_pslmax(p: u64, k: u32) -> Result<CommandResult> {
    let field = construct_field(p, k)?;
    let w = psl2_max_element(&field)?;
    let q = field.q();
    let po = projective_order(&ProjMat::new(w.clone()))?;
    let expected = (q + 1) / 2;
    if po != expected {
        return Err(Error::SharpnessViolation(format!(
            "psl2 witness order {po} != {expected}"
        )));
    }
    let text = format!(
        "q = {q}\nwitness: {w}\nprojective order: {po} (= (q + 1)/2)\nwitness^{po} = -identity\n"
    );
    let payload = json!({
        "q": q,
        "field": field.to_json(),
        "witness": w.to_string(),
        "projective_order": po,
    });
    Ok(CommandResult::pass(payload, text))
}

fn cmd_jordan(group: &str, cap: usize) -> Result<CommandResult> {
    let spec: GroupSpec = group.parse()?;
    let g = special_group(&spec, cap)?;
    let report = g.jordan_constant()?;
    let text = format!(
        "group: {group}\norder: {}\njordan constant: {}\nwitness order: {}\nwitness generators: {}\n",
        report.group_order,
        report.jordan_constant,
        report.witness_order,
        if report.witness_generators.is_empty() {
            "(trivial)".to_string()
        } else {
            report.witness_generators.join(" | ")
        }
    );
    Ok(CommandResult::pass(report.to_json(), text))
}

fn cmd_classify(q: u64, cap: usize) -> Result<CommandResult> {
    let (p, k) = prime_power(q).ok_or(Error::InvalidQ(q))?;
    let field = construct_field(p, k)?;
    let g = pgl_group(&field, 2, cap)?;
    let classes = g.subgroups_up_to_conjugacy(g.order())?;
    let mut rows = Vec::new();
    let mut text = format!("PGL_2(F_{q}): {} subgroup classes\n", classes.len());
    let mut tsv = String::from("order\tlabels\n");
    for h in &classes {
        let labels = grpenum::classify_pgl2_subgroup(h, p)?;
        let names: Vec<String> = labels.iter().map(|l| l.to_string()).collect();
        text.push_str(&format!("order {:>5}: {}\n", h.order(), names.join(", ")));
        tsv.push_str(&format!("{}\t{}\n", h.order(), names.join(",")));
        rows.push(json!({ "order": h.order(), "labels": names }));
    }
    Ok(CommandResult {
        status: Status::Pass,
        payload: json!({ "q": q, "classes": rows }),
        human_text: text,
        tsv: Some(tsv),
    })
}

fn cmd_bounds(qmax: u64) -> Result<CommandResult> {
    let rows = bounds::bounds_table(qmax)?;
    let mut tsv = String::from(bounds::BOUNDS_TSV_HEADER);
    tsv.push('\n');
    for row in &rows {
        tsv.push_str(&row.tsv_line());
        tsv.push('\n');
    }
    let payload = json!({
        "qmax": qmax,
        "rows": rows.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
    });
    Ok(CommandResult {
        status: Status::Pass,
        payload,
        human_text: tsv.clone(),
        tsv: Some(tsv),
    })
}

// ---------------------------------------------------------------------------
// Verification suites
// ---------------------------------------------------------------------------

/// One pass/fail line of a suite run.
struct Case {
    label: String,
    pass: bool,
    detail: String,
}

fn case(label: impl Into<String>, pass: bool, detail: impl Into<String>) -> Case {
    Case {
        label: label.into(),
        pass,
        detail: detail.into(),
    }
}

/// The (q, n) grid of the order suites: q in {2,3,4,5,7,8,9}, n <= 4.
const GRID: [(u64, u32); 7] = [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2)];

fn grid_fields() -> Vec<(u64, u32, u64)> {
    let mut v: Vec<(u64, u32, u64)> = GRID.iter().map(|&(p, k)| (p, k, p.pow(k))).collect();
    v.sort_by_key(|&(_, _, q)| q);
    v
}

fn odd_prime_powers_upto(limit: u64) -> Vec<(u64, u32, u64)> {
    let mut v = Vec::new();
    for q in (3..=limit).step_by(2) {
        if let Some((p, k)) = prime_power(q) {
            v.push((p, k, q));
        }
    }
    v
}

fn suite_gl_orders() -> Result<Vec<Case>> {
    let mut cases = Vec::new();
    for (p, k, q) in grid_fields() {
        let field = construct_field(p, k)?;
        for n in 1..=4u32 {
            let expected = q.pow(n) - 1;
            if expected > 10_000_000 {
                continue;
            }
            let rep = verify_sharpness(&field, n);
            let ok = rep.is_ok();
            cases.push(case(
                format!("gl-order q={q} n={n}"),
                ok,
                match rep {
                    Ok(_) => format!("order {expected}"),
                    Err(e) => e.to_string(),
                },
            ));
        }
    }
    Ok(cases)
}

fn suite_pgl_orders() -> Result<Vec<Case>> {
    let mut cases = Vec::new();
    for (p, k, q) in grid_fields() {
        let field = construct_field(p, k)?;
        for n in 1..=4u32 {
            if q.pow(n) - 1 > 10_000_000 {
                continue;
            }
            let expected = (q.pow(n) - 1) / (q - 1);
            let got = projective_order(&singer_pgl(&field, n)?)?;
            cases.push(case(
                format!("pgl-order q={q} n={n}"),
                got == expected,
                format!("projective order {got}, expected {expected}"),
            ));
        }
    }
    Ok(cases)
}

fn suite_psl2_orders() -> Result<Vec<Case>> {
    let mut cases = Vec::new();
    for (p, k, q) in odd_prime_powers_upto(81) {
        let field = construct_field(p, k)?;
        let rep = verify_sharpness(&field, 2);
        let ok = rep
            .as_ref()
            .map(|r| r.checks.iter().any(|c| c.label == "psl2"))
            .unwrap_or(false);
        cases.push(case(
            format!("psl2-order q={q}"),
            ok,
            match rep {
                Ok(_) => format!("projective order {}", (q + 1) / 2),
                Err(e) => e.to_string(),
            },
        ));
    }
    Ok(cases)
}

fn suite_no_normal_abelian(cap: usize) -> Result<Vec<Case>> {
    let mut cases = Vec::new();
    // (n, q, expected jordan constant); the full-group value means no
    // nontrivial normal abelian subgroup exists
    let targets: [(u32, u64, Option<u64>); 6] = [
        (2, 4, None),
        (2, 5, None),
        (3, 2, None),
        (3, 3, None),
        (2, 2, Some(2)),
        (2, 3, Some(6)),
    ];
    for (n, q, expected) in targets {
        let (p, k) = prime_power(q).expect("grid values are prime powers");
        let field = construct_field(p, k)?;
        let g = pgl_group(&field, n, cap)?;
        let jr = g.jordan_constant()?;
        let want = expected.unwrap_or(g.order());
        cases.push(case(
            format!("jordan pgl({n},{q})"),
            jr.jordan_constant == want,
            format!(
                "|G| = {}, jordan constant {} (expected {want})",
                g.order(),
                jr.jordan_constant
            ),
        ));
    }
    Ok(cases)
}

fn suite_conic_bound(cap: usize) -> Result<Vec<Case>> {
    let mut cases = Vec::new();
    for q in [2u64, 3, 4, 5] {
        let (p, k) = prime_power(q).expect("prime powers");
        let field = construct_field(p, k)?;
        match grpenum::verify_conic_bound(&field, cap) {
            Ok(report) => {
                cases.push(case(
                    format!("conic-bound q={q}"),
                    true,
                    format!(
                        "{} classes, bound {}, max jordan {}",
                        report.rows.len(),
                        report.bound,
                        report.max_jordan
                    ),
                ));
                // the stated extremal subgroups
                if q == 5 {
                    cases.push(case(
                        "conic-bound q=5 extremal",
                        report.max_jordan == 120,
                        format!("max jordan {}", report.max_jordan),
                    ));
                }
                if q == 4 {
                    cases.push(case(
                        "conic-bound q=4 extremal",
                        report.max_jordan == 60,
                        format!("max jordan {}", report.max_jordan),
                    ));
                }
            }
            Err(e) => cases.push(case(format!("conic-bound q={q}"), false, e.to_string())),
        }
    }
    Ok(cases)
}

fn suite_obstruction() -> Result<Vec<Case>> {
    let mut cases = Vec::new();
    // the worked instances
    for (p, k, r, want_excluded) in [(2u64, 1u32, 2u32, true), (3, 1, 2, true), (2, 2, 1, false)] {
        let v = bounds::psl_embedding_obstruction(p, k, r);
        let got = v.verdict == bounds::Verdict::Excluded;
        cases.push(case(
            format!("obstruction p={p} k={k} r={r}"),
            got == want_excluded,
            format!(
                "required {} vs modulus {}: {}",
                v.required_order,
                v.modulus,
                if got { "excluded" } else { "not excluded" }
            ),
        ));
    }
    // full sweep: r > k with p^r <= 2^20 must always be excluded
    let mut total = 0u64;
    let mut bad = 0u64;
    let mut p = 2u64;
    while p * p <= 1 << 20 {
        if crate::arith::is_prime(p) {
            let mut r = 2u32;
            while let Some(pr) = p.checked_pow(r) {
                if pr > 1 << 20 {
                    break;
                }
                for k in 1..r {
                    total += 1;
                    let v = bounds::psl_embedding_obstruction(p, k, r);
                    if v.verdict != bounds::Verdict::Excluded {
                        bad += 1;
                    }
                }
                r += 1;
            }
        }
        p += 1;
    }
    cases.push(case(
        "obstruction sweep r>k, p^r<=2^20",
        bad == 0,
        format!("{total} cases, {bad} unexpected divisors"),
    ));
    Ok(cases)
}

fn suite_crossover(qmax: u64) -> Result<Vec<Case>> {
    Ok(vec![match bounds::crossover_check(qmax) {
        Ok(r) => case(
            format!("crossover qmax={qmax}"),
            true,
            format!(
                "{} prime powers checked, crossover set {:?}",
                r.checked, r.crossover_set
            ),
        ),
        Err(e) => case(format!("crossover qmax={qmax}"), false, e.to_string()),
    }])
}

fn suite_examples(q: u64, cap: usize) -> Result<Vec<Case>> {
    let (p, k) = prime_power(q).ok_or(Error::InvalidQ(q))?;
    let field = construct_field(p, k)?;
    let mut cases = Vec::new();
    for entry in bounds::aut_orders_table(q)? {
        if !entry.enum_checked {
            cases.push(case(
                format!("examples q={q} {}", entry.label),
                true,
                format!("closed form {}", entry.order),
            ));
            continue;
        }
        let enumerated = match entry.label {
            "pgl3" => pgl_group(&field, 3, cap)?.order(),
            "p1xp1" => grpenum::p1xp1_group(&field, cap)?.order(),
            "fermat_cubic" => {
                let g = grpenum::su4_f2_group(cap)?;
                let lat = g.normal_subgroup_lattice()?;
                cases.push(case(
                    format!("examples q={q} fermat_cubic simple"),
                    lat.subgroups.len() == 2,
                    format!("{} normal subgroups", lat.subgroups.len()),
                ));
                g.order()
            }
            _ => unreachable!("all flagged labels handled"),
        };
        cases.push(case(
            format!("examples q={q} {}", entry.label),
            num_bigint::BigUint::from(enumerated) == entry.order,
            format!("enumerated {enumerated}, closed form {}", entry.order),
        ));
    }
    // unipotent coordinate-change groups
    for n in 0..=3u32 {
        let g = grpenum::unipotent_polynomial_group(&field, n, cap)?;
        let ok = g.order() == q.pow(n + 1)
            && g.is_abelian()
            && g.element_orders().iter().all(|&o| o == 1 || o == p);
        cases.push(case(
            format!("examples q={q} unipotent n={n}"),
            ok,
            format!("order {}, exponent {p}", g.order()),
        ));
    }
    Ok(cases)
}

fn cmd_verify(suite: &str, qmax: Option<u64>, q: Option<u64>, cap: usize) -> Result<CommandResult> {
    let mut sections: Vec<(String, Vec<Case>)> = Vec::new();
    let mut run_suite = |name: &str| -> Result<()> {
        let cases = match name {
            "gl-orders" => suite_gl_orders()?,
            "pgl-orders" => suite_pgl_orders()?,
            "psl2-orders" => suite_psl2_orders()?,
            "no-normal-abelian" => suite_no_normal_abelian(cap)?,
            "conic-bound" => suite_conic_bound(cap)?,
            "obstruction" => suite_obstruction()?,
            "crossover" => suite_crossover(qmax.unwrap_or(1024))?,
            "examples" => suite_examples(q.unwrap_or(2), cap)?,
            other => return Err(Error::Parse(format!("unknown suite {other:?}"))),
        };
        sections.push((name.to_string(), cases));
        Ok(())
    };
    if suite == "all" {
        for name in [
            "gl-orders",
            "pgl-orders",
            "psl2-orders",
            "no-normal-abelian",
            "conic-bound",
            "obstruction",
            "crossover",
            "examples",
        ] {
            run_suite(name)?;
        }
        // the examples suite over the remaining desk-scale q, including
        // the q = 4 case with the order-25920 simple group
        let field3 = construct_field(3, 1)?;
        let _ = field3;
        sections.push(("examples-q3".to_string(), suite_examples(3, cap)?));
        sections.push(("examples-q4".to_string(), suite_examples(4, cap)?));
    } else {
        run_suite(suite)?;
    }

    let mut text = String::new();
    let mut payload_sections = Vec::new();
    let mut all_pass = true;
    for (name, cases) in &sections {
        let passed = cases.iter().filter(|c| c.pass).count();
        text.push_str(&format!("suite {name}: {passed}/{} pass\n", cases.len()));
        for c in cases {
            all_pass &= c.pass;
            text.push_str(&format!(
                "  {} {}: {}\n",
                if c.pass { "ok  " } else { "FAIL" },
                c.label,
                c.detail
            ));
        }
        payload_sections.push(json!({
            "suite": name,
            "passed": passed,
            "total": cases.len(),
            "cases": cases.iter().map(|c| json!({
                "label": c.label, "pass": c.pass, "detail": c.detail,
            })).collect::<Vec<_>>(),
        }));
    }
    text.push_str(if all_pass { "ALL PASS\n" } else { "FAILURES\n" });
    Ok(CommandResult {
        status: if all_pass { Status::Pass } else { Status::Fail },
        payload: json!({ "sections": payload_sections, "all_pass": all_pass }),
        human_text: text,
        tsv: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::Parser;

    fn run_args(args: &[&str]) -> (String, i32) {
        let cli = Cli::parse_from(args);
        run(&cli)
    }

    #[test]
    fn order_command() {
        // Fibonacci matrix over F_2 cubes to the identity
        let (out, code) = run_args(&["ffgrp", "order", "--p", "2", "--mat", "0,1;1,1"]);
        assert_eq!(code, 0);
        assert!(out.contains("order: 3"), "{out}");

        let (out, code) = run_args(&["ffgrp", "order", "--p", "3", "--mat", "1,0;0,1"]);
        assert_eq!(code, 0);
        assert!(out.contains("order: 1"), "{out}");

        let (out, code) = run_args(&[
            "ffgrp",
            "order",
            "--p",
            "3",
            "--projective",
            "--mat",
            "0,-1;1,1",
        ]);
        assert_eq!(code, 0);
        assert!(out.contains("projective order: 3"), "{out}");

        // JSON payload carries the field spec and block polynomials as
        // coefficient arrays
        let (out, code) = run_args(&[
            "ffgrp", "--format", "json", "order", "--p", "2", "--mat", "0,1;1,1",
        ]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["reported_order"], 3);
        assert_eq!(v["field"], json!({"p": 2, "k": 1, "modulus": [0, 1]}));
        // x^2 + x + 1, constant first, elements as residue vectors
        assert_eq!(v["blocks"][0]["factor_coeffs"], json!([[1], [1], [1]]));
    }

    #[test]
    fn order_command_rejects_bad_input() {
        let (_, code) = run_args(&["ffgrp", "order", "--p", "2", "--mat", "1,1;1,1"]);
        assert_eq!(code, 2); // singular
        let (_, code) = run_args(&["ffgrp", "order", "--p", "2", "--mat", "1,x;1,1"]);
        assert_eq!(code, 2); // parse failure
    }

    #[test]
    fn jordan_command() {
        let (out, code) = run_args(&[
            "ffgrp", "--format", "json", "jordan", "--group", "pgl:3:2",
        ]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["order"], 168);
        assert_eq!(v["jordan_constant"], 168);

        let (_, code) = run_args(&["ffgrp", "jordan", "--group", "nonsense"]);
        assert_eq!(code, 2);
    }

    #[test]
    fn bounds_command_rows() {
        let (out, code) = run_args(&["ffgrp", "--format", "tsv", "--qmax", "9", "bounds"]);
        assert_eq!(code, 0);
        let lines: Vec<&str> = out.trim_end().lines().collect();
        assert_eq!(lines.len(), 8); // header + q in {2,3,4,5,7,8,9}
        assert!(lines[1].starts_with("2\t168\t72\t120\t60\t360\t696729600\t696729600\twe8"));
    }

    #[test]
    fn classify_command() {
        let (out, code) = run_args(&["ffgrp", "classify", "--q", "5"]);
        assert_eq!(code, 0);
        assert!(out.contains("PSL(2,5)"), "{out}");
        assert!(out.contains("A5"), "{out}");
    }

    #[test]
    fn singer_command() {
        let (out, code) = run_args(&["ffgrp", "--format", "json", "singer", "--p", "2", "--n", "3"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["gl_order"], 7);
        assert_eq!(v["pgl_order"], 7);
        assert_eq!(v["field"]["p"], 2);
        assert_eq!(v["field"]["modulus"], serde_json::json!([0, 1]));
    }

    #[test]
    fn pslmax_command() {
        let (out, code) = run_args(&["ffgrp", "pslmax", "--p", "7"]);
        assert_eq!(code, 0);
        assert!(out.contains("projective order: 4"), "{out}");
        // even q is rejected with an input error
        let (_, code) = run_args(&["ffgrp", "pslmax", "--p", "2", "--k", "2"]);
        assert_eq!(code, 2);
    }

    #[test]
    fn exit_code_mapping() {
        let r = CommandResult {
            status: Status::Fail,
            payload: json!({}),
            human_text: String::new(),
            tsv: None,
        };
        assert_eq!(r.exit_code(), 1);
        assert_eq!(
            CommandResult::pass(json!({}), String::new()).exit_code(),
            0
        );
    }

    #[test]
    fn verify_unknown_suite_is_usage_error() {
        let (_, code) = run_args(&["ffgrp", "verify", "--suite", "nope"]);
        assert_eq!(code, 2);
    }

    #[test]
    fn verify_crossover_suite() {
        let (out, code) = run_args(&["ffgrp", "verify", "--suite", "crossover"]);
        assert_eq!(code, 0);
        assert!(out.contains("crossover set [2, 4, 8]"), "{out}");
        assert!(out.contains("ALL PASS"), "{out}");
    }

    #[test]
    fn verify_obstruction_suite() {
        let (out, code) = run_args(&["ffgrp", "verify", "--suite", "obstruction"]);
        assert_eq!(code, 0);
        assert!(out.contains("0 unexpected divisors"), "{out}");
    }
}
