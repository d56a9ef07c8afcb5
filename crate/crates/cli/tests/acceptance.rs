//! Acceptance gate: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails. Runs as a plain binary under `cargo test`.

#[path = "../../core/tests/support/mod.rs"]
mod brute;

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use serde_json::Value;

use mudeg::expr::{parse_group, GroupExpr};
use mudeg_core::{
    abelian, additivity_check, coset_action, cyclic, is_faithful_action, lattice, mu_abelian,
    mu_of, paper_generators_443, wreath_cyclic, Limits, PermGroup, Permutation, SubgroupLattice,
};

type Check = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

struct Cli<'a> {
    cache: &'a Path,
}

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
    elapsed: Duration,
}

impl Cli<'_> {
    fn run(&self, args: &[&str]) -> Run {
        let start = Instant::now();
        let out = Command::new(env!("CARGO_BIN_EXE_mudeg"))
            .args(args)
            .env("MUDEG_CACHE_DIR", self.cache)
            .output()
            .expect("binary runs");
        Run {
            code: out.status.code().unwrap_or(-1),
            stdout: String::from_utf8_lossy(&out.stdout).into_owned(),
            stderr: String::from_utf8_lossy(&out.stderr).into_owned(),
            elapsed: start.elapsed(),
        }
    }

    fn json(&self, args: &[&str]) -> Result<(Value, Run), String> {
        let mut full = args.to_vec();
        full.push("--json");
        let run = self.run(&full);
        let v = serde_json::from_str(&run.stdout)
            .map_err(|e| format!("{args:?}: bad JSON ({e}); stderr: {}", run.stderr))?;
        Ok((v, run))
    }

    fn mu(&self, expr: &str) -> Result<(Value, Run), String> {
        let (v, run) = self.json(&["mu", expr, "--certificate", "--no-cache"])?;
        ensure!(run.code == 0, "mu {expr}: exit {}", run.code);
        Ok((v["result"].clone(), run))
    }
}

/// Rebuilds the certificate's action from its printed generators and checks
/// degree, index sum and faithfulness against the expected group order.
fn verify_certificate(cert: &Value, group_order: u128) -> Result<(), String> {
    let degree = cert["degree"].as_u64().ok_or("missing degree")? as usize;
    let index_sum: u64 = cert["subgroups"]
        .as_array()
        .ok_or("missing subgroups")?
        .iter()
        .map(|s| s["index"].as_u64().unwrap_or(0))
        .sum();
    ensure!(
        index_sum as usize == degree,
        "index sum {index_sum} != degree {degree}"
    );
    if degree == 0 {
        ensure!(group_order == 1, "degree 0 for a non-trivial group");
        return Ok(());
    }
    let gens: Vec<Permutation> = cert["action_generators"]
        .as_array()
        .ok_or("missing action generators")?
        .iter()
        .map(|g| Permutation::parse_cycles(degree, g.as_str().unwrap_or("")))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    let image = PermGroup::new(gens).map_err(|e| e.to_string())?;
    ensure!(
        image.order() == group_order,
        "action image has order {}, expected {group_order}",
        image.order()
    );
    ensure!(
        cert["faithful"] == Value::Bool(true),
        "certificate not marked faithful"
    );
    Ok(())
}

fn check<'a>(report: &'a Value, id: &str) -> Result<&'a Value, String> {
    let c = report["checks"]
        .as_array()
        .and_then(|cs| cs.iter().find(|c| c["id"] == id))
        .ok_or(format!("no check {id}"))?;
    ensure!(
        c["status"] == "pass",
        "{id} is {}: {}",
        c["status"],
        c["summary"]
    );
    Ok(c)
}

fn strip_runtime(json: &str) -> &str {
    json.find("\n  \"runtime\"").map_or(json, |i| &json[..i])
}

fn c1(cli: &Cli) -> Check {
    let (r, run) = cli.mu("G(4,4,3)")?;
    ensure!(r["mu"] == 12, "mu = {}", r["mu"]);
    let cert = &r["certificate"];
    let subs = cert["subgroups"].as_array().ok_or("no subgroups")?;
    ensure!(subs.len() == 1, "{} subgroups in certificate", subs.len());
    ensure!(subs[0]["index"] == 12, "index {}", subs[0]["index"]);
    verify_certificate(cert, 96)?;
    ensure!(
        run.elapsed < Duration::from_secs(60),
        "took {:?}",
        run.elapsed
    );
    Ok(format!(
        "mu = 12, one subgroup of index 12, {:.2?}",
        run.elapsed
    ))
}

fn c2(cli: &Cli) -> Check {
    let (w, run) = cli.mu("C4 wr S3")?;
    ensure!(w["mu"] == 12, "mu(C4 wr S3) = {}", w["mu"]);
    verify_certificate(&w["certificate"], 384)?;
    ensure!(
        run.elapsed < Duration::from_secs(120),
        "took {:?}",
        run.elapsed
    );
    let (b, _) = cli.mu("C4^3")?;
    ensure!(b["mu"] == 12, "mu(C4^3) = {}", b["mu"]);
    verify_certificate(&b["certificate"], 64)?;
    let formula = mu_abelian(&abelian(&[4, 4, 4]).unwrap(), 100).unwrap();
    ensure!(formula == 12, "abelian formula gives {formula}");
    Ok(format!(
        "mu(C4 wr S3) = 12 in {:.2?}, mu(C4^3) = 12",
        run.elapsed
    ))
}

fn c3(report: &Value) -> Check {
    let w = paper_generators_443(&wreath_cyclic(4, 3).unwrap()).unwrap();
    let g = PermGroup::new(w.as_vec()).unwrap();
    let r =
        additivity_check(&g, &cyclic(4).unwrap(), Limits::default()).map_err(|e| e.to_string())?;
    let got = (r.mu_g, r.mu_h, r.mu_product, r.strict);
    ensure!(got == (12, 4, 12, true), "additivity_check = {got:?}");
    let c = check(report, "s3.counterexample-12")?;
    ensure!(c["witness"]["mu_product"] == 12, "report disagrees");
    Ok("{mu_G: 12, mu_H: 4, mu_product: 12, strict: true}".into())
}

fn c4(cli: &Cli, report: &Value) -> Check {
    check(report, "lemma1.unique-minimal-normal")?;
    let (v, run) = cli.json(&["lattice", "G(4,4,3)", "--normal-only"])?;
    ensure!(run.code == 0, "lattice exit {}", run.code);
    let minimal: Vec<&Value> = v["result"]["subgroups"]
        .as_array()
        .ok_or("no subgroups")?
        .iter()
        .filter(|s| s["minimal_normal"] == true)
        .collect();
    ensure!(
        minimal.len() == 1,
        "{} minimal normal subgroups",
        minimal.len()
    );
    let gens: Vec<Permutation> = minimal[0]["generators"]
        .as_array()
        .unwrap()
        .iter()
        .map(|g| Permutation::parse_cycles(12, g.as_str().unwrap()).unwrap())
        .collect();
    let n = PermGroup::new(gens).unwrap();
    let p = paper_generators_443(&wreath_cyclic(4, 3).unwrap()).unwrap();
    let m = PermGroup::new(vec![p.x.pow(2), p.y.pow(2)]).unwrap();
    ensure!(
        n.contains_group(&m) && m.contains_group(&n),
        "minimal normal subgroup is not <x^2, y^2>"
    );
    Ok(format!(
        "unique minimal normal subgroup = <x^2,y^2>, order {}",
        m.order()
    ))
}

fn c5(report: &Value) -> Check {
    let w = &check(report, "lemma2.coset-orders")?["witness"];
    ensure!(
        w["coset_elements"] == 32,
        "coset elements {}",
        w["coset_elements"]
    );
    ensure!(
        w["coset_b_all_order_3"] == true && w["coset_b2_all_order_3"] == true,
        "coset orders"
    );
    ensure!(
        w["remaining_elements"] == 64,
        "remaining {}",
        w["remaining_elements"]
    );
    let rest: Vec<u64> = w["remaining_orders"]
        .as_array()
        .unwrap()
        .iter()
        .filter_map(Value::as_u64)
        .collect();
    ensure!(rest.iter().all(|o| 8 % o == 0), "remaining orders {rest:?}");
    let w6 = &check(report, "lemma2.no-order-6")?["witness"]["order_profile"];
    ensure!(w6.get("6").is_none(), "order-6 elements present");
    // recount independently
    let p = paper_generators_443(&wreath_cyclic(4, 3).unwrap()).unwrap();
    let elems = brute::elements(&PermGroup::new(p.as_vec()).unwrap());
    let sixes = elems
        .iter()
        .filter(|e| Permutation::from_images((*e).clone()).unwrap().order() == 6)
        .count();
    ensure!(sixes == 0, "{sixes} elements of order 6");
    Ok(format!(
        "32 of order 3, 64 with orders {rest:?}, none of order 6"
    ))
}

fn c6(report: &Value) -> Check {
    let w = &check(report, "lemma3.min-core-free-index")?["witness"];
    ensure!(w["min_index"] == 12, "min index {}", w["min_index"]);
    let o = &check(report, "lemma3.order12-contains-m")?["witness"];
    ensure!(
        o["order12_subgroups"] == o["containing_m"],
        "{} of {} order-12 subgroups contain <x^2,y^2>",
        o["containing_m"],
        o["order12_subgroups"]
    );
    Ok(format!(
        "min core-free index 12; {} order-12 subgroups all contain <x^2,y^2>",
        o["order12_subgroups"]
    ))
}

fn c7(cli: &Cli, report: &Value) -> Check {
    let w = &check(report, "presentation.g443")?["witness"];
    ensure!(w["cosets"] == 96, "cosets {}", w["cosets"]);
    ensure!(
        w["failing_relators"].as_array().is_some_and(Vec::is_empty),
        "failing relators {}",
        w["failing_relators"]
    );
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let file = dir.path().join("g443.txt");
    std::fs::write(&file, mudeg_core::presentation::G443_PRESENTATION).unwrap();
    let (v, run) = cli.json(&["enumerate", file.to_str().unwrap()])?;
    ensure!(run.code == 0, "enumerate exit {}", run.code);
    ensure!(
        v["result"]["index"] == 96,
        "enumerate index {}",
        v["result"]["index"]
    );
    Ok(format!(
        "96 cosets ({} defined), all relators hold on x, y, a, b",
        v["result"]["cosets_defined"]
    ))
}

fn c8(report: &Value) -> Check {
    let w = &check(report, "s3.internal-direct-product")?["witness"];
    ensure!(w["gamma_central"] == true, "gamma not central");
    ensure!(
        w["intersection_order"] == 1,
        "|G n H| = {}",
        w["intersection_order"]
    );
    ensure!(w["internal_direct_product"] == true, "not a direct product");
    Ok("gamma central, G n H = 1, W = G x H".into())
}

fn c9(cli: &Cli, report: &Value) -> Check {
    let (r, _) = cli.mu("G(3,3,3)")?;
    ensure!(r["mu"] == 9, "mu(G(3,3,3)) = {}", r["mu"]);
    verify_certificate(&r["certificate"], 54)?;
    let w = &check(report, "remark.g333")?["witness"];
    ensure!(w["all_proper"] == true, "some centralizer is not proper");
    let actions = w["index9_core_free_actions"].as_u64().unwrap_or(0);
    ensure!(actions > 0, "no index-9 actions");
    let (r, _) = cli.mu("G(2,2,3)")?;
    ensure!(r["mu"] == 4, "mu(G(2,2,3)) = {}", r["mu"]);
    verify_certificate(&r["certificate"], 24)?;
    let w = &check(report, "remark.g223")?["witness"];
    ensure!(
        w["image_order"] == 24 && w["image_degree"] == 4,
        "image {w}"
    );
    Ok(format!(
        "mu(G(3,3,3)) = 9, {actions} index-9 actions with proper centralizers; mu(G(2,2,3)) = 4 as Sym(4)"
    ))
}

fn c10(cli: &Cli, report: &Value) -> Check {
    let (g, _) = cli.mu("G(5,5,3)")?;
    verify_certificate(&g["certificate"], 150)?;
    let (w, _) = cli.mu("C5 wr S3")?;
    verify_certificate(&w["certificate"], 750)?;
    let (h, run) = cli.json(&["hunt", "--max-order", "800"])?;
    ensure!(run.code == 0, "hunt exit {}", run.code);
    let cases = h["result"]["cases"].as_array().ok_or("no cases")?;
    let case = |m: u64, n: u64| {
        cases
            .iter()
            .find(|c| c["m"] == m && c["n"] == n)
            .ok_or(format!("hunt did not visit ({m},{n})"))
    };
    let c53 = case(5, 3)?;
    ensure!(c53["strict"] == true, "(5,3) not strict: {c53}");
    ensure!(
        c53["mu_g"] == g["mu"],
        "hunt mu_g {} vs mu {}",
        c53["mu_g"],
        g["mu"]
    );
    ensure!(
        c53["mu_product"] == w["mu"],
        "hunt product {} vs {}",
        c53["mu_product"],
        w["mu"]
    );
    ensure!(c53["mu_h"] == 5, "mu(C5) = {}", c53["mu_h"]);
    verify_certificate(&c53["certificate_product"], 750)?;
    let (mg, mp) = (
        c53["mu_g"].as_u64().unwrap(),
        c53["mu_product"].as_u64().unwrap(),
    );
    ensure!(mp < mg + 5, "{mp} is not below {mg} + 5");
    let c43 = case(4, 3)?;
    ensure!(
        c43["strict"] == true && c43["mu_product"] == 12,
        "(4,3): {c43}"
    );
    let c33 = case(3, 3)?;
    ensure!(c33["decomposition"].is_null(), "(3,3) decomposed");
    check(report, "abstract.degree-15")?;
    Ok(format!(
        "mu(G(5,5,3)) = {mg}, mu(C5 wr S3) = {mp} < {mg} + 5"
    ))
}

fn c11() -> Check {
    let start = Instant::now();
    let mut n = 0;
    for (name, g) in brute::corpus() {
        let exact = mu_of(&g, Limits::default())
            .map_err(|e| e.to_string())?
            .value;
        let oracle = brute::brute_mu(&g);
        ensure!(exact == oracle, "{name}: mu_exact {exact}, oracle {oracle}");
        n += 1;
    }
    for orders in brute::abelian_corpus() {
        let g = abelian(&orders).unwrap();
        let exact = mu_of(&g, Limits::default()).unwrap().value as u64;
        let formula = mu_abelian(&g, 1000).unwrap();
        ensure!(
            exact == formula,
            "{orders:?}: mu_exact {exact}, abelian {formula}"
        );
        n += 1;
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(30), "took {elapsed:?}");
    Ok(format!("{n} groups agree, {elapsed:.2?}"))
}

fn perm(degree: usize) -> impl Strategy<Value = Permutation> {
    Just((0..degree as u32).collect::<Vec<u32>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

fn group() -> impl Strategy<Value = PermGroup> {
    (1usize..=5).prop_flat_map(|d| {
        prop::collection::vec(perm(d), 1..=3).prop_map(|g| PermGroup::new(g).unwrap())
    })
}

fn leaf() -> impl Strategy<Value = GroupExpr> {
    prop_oneof![
        (1u32..60).prop_map(GroupExpr::Cyclic),
        (1u32..9).prop_map(GroupExpr::Symmetric),
        (3u32..9).prop_map(GroupExpr::Alternating),
        (3u32..30).prop_map(GroupExpr::Dihedral),
        (2u32..13, 2u32..6, any::<prop::sample::Index>()).prop_map(|(m, n, i)| {
            let divisors: Vec<u32> = (1..=m).filter(|d| m % d == 0).collect();
            GroupExpr::Reflection(m, divisors[i.index(divisors.len())], n)
        }),
        (2u32..9, 2u32..6).prop_map(|(m, n)| GroupExpr::Wreath(
            Box::new(GroupExpr::Cyclic(m)),
            Box::new(GroupExpr::Symmetric(n))
        )),
    ]
}

fn expr() -> impl Strategy<Value = GroupExpr> {
    leaf().prop_recursive(3, 24, 4, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 2..4).prop_map(GroupExpr::Product),
            (inner, 1u32..6).prop_map(|(e, k)| GroupExpr::Power(Box::new(e), k)),
        ]
    })
}

fn run_property<S: Strategy>(
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    let mut runner = TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    });
    runner.run(&strategy, test).map_err(|e| e.to_string())
}

fn c12(cli: &Cli, first: &str) -> Check {
    run_property(50, group(), |g| {
        let t = g.elements().unwrap();
        let l = SubgroupLattice::build(t, 100_000).unwrap();
        for h in l.subgroups() {
            prop_assert!(lattice::is_closed(t, h.members()));
            prop_assert_eq!(t.len() % h.order(), 0);
            prop_assert_eq!(h.index_in(t) * h.order(), t.len());
        }
        Ok(())
    })
    .map_err(|e| format!("closure/Lagrange: {e}"))?;
    run_property(50, group(), |g| {
        let t = g.elements().unwrap();
        let l = SubgroupLattice::build(t, 100_000).unwrap();
        for (i, h) in l.subgroups().iter().enumerate() {
            let image = coset_action(t, h).unwrap().image;
            prop_assert_eq!(
                is_faithful_action(t.len(), &image),
                lattice::core(t, h).is_trivial()
            );
            prop_assert_eq!(
                l.core_id(i) == l.trivial_id(),
                lattice::core(t, h).is_trivial()
            );
        }
        Ok(())
    })
    .map_err(|e| format!("faithful iff core-free: {e}"))?;
    run_property(1000, expr(), |e| {
        let text = e.to_string();
        let back =
            parse_group(&text).map_err(|err| TestCaseError::fail(format!("{text}: {err}")))?;
        prop_assert_eq!(&back, &e);
        let spaced = parse_group(&text.replace(' ', "   ")).unwrap();
        prop_assert_eq!(&spaced, &e);
        Ok(())
    })
    .map_err(|e| format!("parse/print: {e}"))?;
    let second = cli.run(&["verify-paper", "--json"]);
    ensure!(
        strip_runtime(first) == strip_runtime(&second.stdout),
        "verify-paper --json differs between runs"
    );
    ensure!(
        !strip_runtime(first).contains("wall_ms"),
        "timing leaked into report body"
    );
    Ok("closure, Lagrange, faithful iff core-free, 1000 round trips, identical reruns".into())
}

fn main() {
    let cache = tempfile::tempdir().expect("tempdir");
    let cli = Cli {
        cache: cache.path(),
    };
    let suite = cli.run(&["verify-paper", "--json"]);
    let report: Value = serde_json::from_str(&suite.stdout).unwrap_or(Value::Null);
    if suite.code != 0 {
        println!("verify-paper exited {}: {}", suite.code, suite.stderr);
    }

    type Criterion<'a> = (&'static str, Box<dyn Fn() -> Check + 'a>);
    let criteria: Vec<Criterion> = vec![
        ("mu(G(4,4,3)) with certificate", Box::new(|| c1(&cli))),
        ("mu(C4 wr S3) and mu(C4^3)", Box::new(|| c2(&cli))),
        (
            "additivity fails for G(4,4,3) x C4",
            Box::new(|| c3(&report)),
        ),
        (
            "unique minimal normal subgroup",
            Box::new(|| c4(&cli, &report)),
        ),
        ("element orders in G(4,4,3)", Box::new(|| c5(&report))),
        ("minimal core-free index", Box::new(|| c6(&report))),
        ("presentation of G(4,4,3)", Box::new(|| c7(&cli, &report))),
        (
            "C4 wr S3 as an internal direct product",
            Box::new(|| c8(&report)),
        ),
        ("G(3,3,3) and G(2,2,3)", Box::new(|| c9(&cli, &report))),
        ("degree-15 counterexample", Box::new(|| c10(&cli, &report))),
        ("oracle equivalence on small groups", Box::new(c11)),
        ("property suites", Box::new(|| c12(&cli, &suite.stdout))),
    ];

    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(std::panic::AssertUnwindSafe(run))
            .unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{elapsed:.1?}]", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} [{elapsed:.1?}]", k + 1);
            }
        }
    }
    println!(
        "acceptance: {}/{} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
