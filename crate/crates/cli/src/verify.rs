//! The reproduction suite behind `verify-paper`: thirteen checks on
//! `G(4,4,3)`, the wreath product `C4 wr Sym(3)` and the related remarks.

use std::time::Instant;

use once_cell::unsync::OnceCell;
use serde_json::{json, Value};

use mudeg_core::coset::union_action;
use mudeg_core::lattice::{self, Subgroup};
use mudeg_core::presentation::{check_presentation, g443_presentation, parse_word};
use mudeg_core::{
    additivity_check, constructors, decompose_wreath, mu_abelian, Analysis, Error, G443Generators,
    Limits, PermGroup, Permutation, Wreath,
};

use crate::commands::Caps;
use crate::report::{certificate_json, cycles, CheckReport, Report, Status};

/// Deliberate corruption of one named generator, for fault-injection runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    /// Replace the generator `g` by `g·γ1`.
    Corrupt(char),
}

struct Ctx {
    caps: Caps,
    w: Wreath,
    gens: G443Generators,
    g: PermGroup,
    g_analysis: OnceCell<Analysis>,
    w_mu: OnceCell<usize>,
}

type Outcome = Result<(Status, String, Value), Error>;

impl Ctx {
    fn limits(&self) -> Limits {
        self.caps.limits()
    }

    fn analysis(&self) -> Result<&Analysis, Error> {
        self.g_analysis
            .get_or_try_init(|| Analysis::new(self.g.clone(), self.limits()))
    }

    fn idx(&self, p: &Permutation) -> Result<u32, Error> {
        self.analysis()?
            .table()
            .index_of(p)
            .ok_or_else(|| Error::NotASubgroup(format!("{p} is not in G")))
    }

    fn sub(&self, perms: &[Permutation]) -> Result<Subgroup, Error> {
        Subgroup::from_permutations(self.analysis()?.table(), perms)
    }

    /// `⟨x², y²⟩`.
    fn m(&self) -> Result<Subgroup, Error> {
        self.sub(&[self.gens.x.pow(2), self.gens.y.pow(2)])
    }

    fn mu_w(&self) -> Result<usize, Error> {
        self.w_mu
            .get_or_try_init(|| {
                Ok(Analysis::new(self.w.group().clone(), self.limits())?
                    .mu()?
                    .value)
            })
            .copied()
    }
}

fn verdict(ok: bool) -> Status {
    if ok {
        Status::Pass
    } else {
        Status::Fail
    }
}

type CheckFn = fn(&Ctx) -> Outcome;

const CHECKS: [(&str, &str, CheckFn); 13] = [
    ("order.g443", "|G(4,4,3)| = 96", check_order),
    (
        "presentation.g443",
        "presentation on x, y, a, b",
        check_presentation_g443,
    ),
    (
        "lemma1.unique-minimal-normal",
        "unique minimal normal subgroup <x^2,y^2>",
        check_unique_minimal_normal,
    ),
    (
        "lemma2.coset-orders",
        "elements of <x,y>b and <x,y>b^2 have order 3",
        check_coset_orders,
    ),
    (
        "lemma2.no-order-6",
        "no element of order 6",
        check_no_order6,
    ),
    (
        "lemma3.min-core-free-index",
        "minimal core-free index is 12",
        check_min_core_free_index,
    ),
    (
        "lemma3.order12-contains-m",
        "order-12 subgroups contain <x^2,y^2>",
        check_order12,
    ),
    ("theorem4.mu-g443", "mu(G(4,4,3)) = 12", check_mu_g443),
    (
        "s3.internal-direct-product",
        "C4 wr S3 = G(4,4,3) x <gamma>",
        check_direct,
    ),
    (
        "s3.counterexample-12",
        "mu(G x H) = 12 < mu(G) + mu(H) = 16",
        check_counterexample,
    ),
    (
        "remark.g333",
        "G(3,3,3): centralizer of a degree-9 action is proper",
        check_g333,
    ),
    (
        "remark.g223",
        "G(2,2,3) acts as Sym(4) on 4 points",
        check_g223,
    ),
    (
        "abstract.degree-15",
        "counterexample of degree 15",
        check_degree15,
    ),
];

/// Stable check ids, in run order.
pub fn check_ids() -> Vec<&'static str> {
    CHECKS.iter().map(|c| c.0).collect()
}

pub fn verify_paper(caps: Caps, fault: Option<Fault>) -> Report {
    let mut report = Report::new("verify-paper")
        .input("max_order", caps.max_order)
        .input("max_subgroups", caps.max_subgroups)
        .input("max_cosets", caps.max_cosets);
    if let Some(Fault::Corrupt(c)) = fault {
        report = report.input("fault", format!("corrupt {c}"));
    }
    let ctx = match setup(caps, fault) {
        Ok(ctx) => ctx,
        Err(e) => {
            for (id, anchor, _) in CHECKS {
                report.push(CheckReport {
                    id,
                    anchor,
                    status: Status::Fail,
                    summary: format!("setup failed: {e}"),
                    witness: json!({ "error": e.to_string() }),
                    wall_ms: 0.0,
                });
            }
            return report;
        }
    };
    for (id, anchor, run) in CHECKS {
        let start = Instant::now();
        let (status, summary, witness) = match run(&ctx) {
            Ok(x) => x,
            Err(e) => (
                Status::Fail,
                format!("error: {e}"),
                json!({ "error": e.to_string() }),
            ),
        };
        report.push(CheckReport {
            id,
            anchor,
            status,
            summary,
            witness,
            wall_ms: start.elapsed().as_secs_f64() * 1000.0,
        });
    }
    report
}

fn setup(caps: Caps, fault: Option<Fault>) -> Result<Ctx, Error> {
    let w = constructors::wreath_cyclic(4, 3)?;
    let mut gens = constructors::paper_generators_443(&w)?;
    if let Some(Fault::Corrupt(c)) = fault {
        let target = match c {
            'x' => &mut gens.x,
            'y' => &mut gens.y,
            'a' => &mut gens.a,
            'b' => &mut gens.b,
            _ => return Err(Error::InvalidParameter(format!("no generator named {c}"))),
        };
        *target = target.then(w.gamma(0));
    }
    let g = PermGroup::new(gens.as_vec())?;
    Ok(Ctx {
        caps,
        w,
        gens,
        g,
        g_analysis: OnceCell::new(),
        w_mu: OnceCell::new(),
    })
}

fn check_order(ctx: &Ctx) -> Outcome {
    let order = ctx.g.order();
    let expected = constructors::reflection_order(4, 4, 3);
    let reference = constructors::reflection_group(4, 4, 3)?.order();
    let ok = order == 96 && expected == 96 && reference == 96;
    Ok((
        verdict(ok),
        format!("|<x,y,a,b>| = {order}, m^n n!/p = {expected}"),
        json!({ "order": order as u64, "formula": expected as u64, "reflection_group_order": reference as u64 }),
    ))
}

fn check_presentation_g443(ctx: &Ctx) -> Outcome {
    let p = g443_presentation();
    let images = ctx.gens.as_vec();
    let stated = check_presentation(&p, &images, ctx.caps.max_cosets)?;
    let failing: Vec<String> = stated
        .failing_relators
        .iter()
        .map(|&k| p.format_word(&p.relators()[k]))
        .collect();
    let mut witness = json!({
        "cosets": stated.presented_order,
        "image_order": stated.image_order as u64,
        "failing_relators": failing,
    });
    if stated.presented_order > 96 {
        // The stated relators omit y^a = x; retry with it and flag the gap.
        let derived = parse_word(p.names(), "a^-1*y*a*x^-1").expect("fixed word parses");
        let extended = p.clone().with_relator(derived)?;
        let retry = check_presentation(&extended, &images, ctx.caps.max_cosets)?;
        witness["cosets_with_y^a=x"] = json!(retry.presented_order);
        let status = if retry.is_isomorphism() && retry.presented_order == 96 {
            Status::Flagged
        } else {
            Status::Fail
        };
        return Ok((
            status,
            format!(
                "stated relators enumerate {} cosets; with y^a = x added: {}",
                stated.presented_order, retry.presented_order
            ),
            witness,
        ));
    }
    let ok = stated.is_isomorphism() && stated.presented_order == 96;
    Ok((
        verdict(ok),
        format!(
            "Todd-Coxeter: {} cosets; {} relator(s) fail on (x,y,a,b); |<images>| = {}",
            stated.presented_order,
            stated.failing_relators.len(),
            stated.image_order
        ),
        witness,
    ))
}

fn check_unique_minimal_normal(ctx: &Ctx) -> Outcome {
    let a = ctx.analysis()?;
    let m = ctx.m()?;
    let minimal = a.lattice.minimal_normal_subgroups();
    let orders: Vec<usize> = minimal.iter().map(|&i| a.lattice.get(i).order()).collect();
    let ok = minimal.len() == 1
        && *a.lattice.get(minimal[0]) == m
        && m.order() == 4
        && lattice::is_normal(a.table(), &m);
    Ok((
        verdict(ok),
        format!(
            "{} minimal normal subgroup(s) of order(s) {:?}; <x^2,y^2> has order {}",
            minimal.len(),
            orders,
            m.order()
        ),
        json!({
            "minimal_normal_orders": orders,
            "m_order": m.order(),
            "m_generators": cycles(&m.generator_permutations(a.table())),
            "normal_subgroup_count": a.lattice.normal_subgroups().len(),
        }),
    ))
}

fn check_coset_orders(ctx: &Ctx) -> Outcome {
    let a = ctx.analysis()?;
    let t = a.table();
    let xy = ctx.sub(&[ctx.gens.x.clone(), ctx.gens.y.clone()])?;
    let b = ctx.idx(&ctx.gens.b)?;
    let b2 = t.mul(b, b);
    let order3_b = lattice::coset_order_check(t, &xy, b, |o| o == 3);
    let order3_b2 = lattice::coset_order_check(t, &xy, b2, |o| o == 3);
    let in_b_cosets = |e: u32| xy.contains(t.mul(e, t.inv(b))) || xy.contains(t.mul(e, t.inv(b2)));
    let coset_count = (0..t.len() as u32).filter(|&e| in_b_cosets(e)).count();
    let rest: Vec<u32> = (0..t.len() as u32).filter(|&e| !in_b_cosets(e)).collect();
    let mut rest_orders: Vec<u32> = rest.iter().map(|&e| t.order_of(e)).collect();
    rest_orders.sort_unstable();
    rest_orders.dedup();
    let rest_divides_8 = rest_orders.iter().all(|o| 8 % o == 0);
    let all_orders: Vec<u32> = lattice::order_profile(t).keys().copied().collect();
    let witness = json!({
        "coset_elements": coset_count,
        "coset_b_all_order_3": order3_b,
        "coset_b2_all_order_3": order3_b2,
        "remaining_elements": rest.len(),
        "remaining_orders": rest_orders,
        "element_orders_found": all_orders,
    });
    let summary = format!(
        "{coset_count} elements in <x,y>b u <x,y>b^2 (order 3: {}); {} others with orders {:?}",
        order3_b && order3_b2,
        rest.len(),
        rest_orders
    );
    let status = if !(order3_b && order3_b2 && coset_count == 32 && rest.len() == 64) {
        Status::Fail
    } else if !rest_divides_8 {
        // "order dividing by 8" is read as "order dividing 8"; anything else
        // is reported against the wording rather than asserted.
        Status::Flagged
    } else {
        Status::Pass
    };
    Ok((status, summary, witness))
}

fn check_no_order6(ctx: &Ctx) -> Outcome {
    let profile = lattice::order_profile(ctx.analysis()?.table());
    let sixes = profile.get(&6).copied().unwrap_or(0);
    let profile_json: serde_json::Map<String, Value> = profile
        .iter()
        .map(|(k, v)| (k.to_string(), json!(v)))
        .collect();
    Ok((
        verdict(sixes == 0),
        format!("{sixes} element(s) of order 6"),
        json!({ "order_profile": profile_json }),
    ))
}

fn check_min_core_free_index(ctx: &Ctx) -> Outcome {
    let a = ctx.analysis()?;
    let t = a.table();
    let trivial = a.lattice.trivial_id();
    let core_free: Vec<usize> = (0..a.lattice.len())
        .filter(|&i| a.lattice.core_id(i) == trivial)
        .collect();
    let min_scan = core_free
        .iter()
        .map(|&i| a.lattice.get(i).index_in(t))
        .min()
        .unwrap_or(0);
    let at_min = core_free
        .iter()
        .filter(|&&i| a.lattice.get(i).index_in(t) == min_scan)
        .count();
    let from_table = a.costs.cost_of(trivial).map(|c| c.cost).unwrap_or(0);
    let ok = min_scan == 12 && from_table == 12;
    Ok((
        verdict(ok),
        format!("minimum core-free index {min_scan} ({at_min} subgroup(s) attain it)"),
        json!({
            "core_free_subgroups": core_free.len(),
            "min_index": min_scan,
            "attaining": at_min,
            "cost_table_min": from_table,
        }),
    ))
}

fn check_order12(ctx: &Ctx) -> Outcome {
    let a = ctx.analysis()?;
    let m = ctx.m()?;
    let twelves: Vec<&Subgroup> = a
        .lattice
        .subgroups()
        .iter()
        .filter(|h| h.order() == 12)
        .collect();
    let containing = twelves.iter().filter(|h| m.is_subgroup_of(h)).count();
    let ok = containing == twelves.len();
    Ok((
        verdict(ok),
        format!(
            "{containing} of {} order-12 subgroups contain <x^2,y^2>",
            twelves.len()
        ),
        json!({ "order12_subgroups": twelves.len(), "containing_m": containing }),
    ))
}

fn check_mu_g443(ctx: &Ctx) -> Outcome {
    let a = ctx.analysis()?;
    let mu = a.mu()?;
    let c = &mu.certificate;
    let single = c.entries.len() == 1 && c.entries[0].index == 12 && c.entries[0].core_order == 1;
    let xy = PermGroup::new(vec![ctx.gens.x.clone(), ctx.gens.y.clone()])?;
    let lower = mu_abelian(&xy, ctx.caps.max_order)?;
    let upper = ctx.mu_w()?;
    let ok = mu.value == 12 && single && c.faithful;
    Ok((
        verdict(ok),
        format!(
            "mu(G) = {} via {} subgroup(s); bounds mu(<x,y>) = {lower}, mu(W) = {upper}",
            mu.value,
            c.entries.len()
        ),
        json!({
            "mu": mu.value,
            "lower_bound_mu_xy": lower,
            "upper_bound_mu_w": upper,
            "certificate": certificate_json(c),
        }),
    ))
}

fn check_direct(ctx: &Ctx) -> Outcome {
    let wt = ctx.w.group().enumerate_elements(ctx.caps.max_order)?;
    let g = Subgroup::from_permutations(wt, &ctx.gens.as_vec())?;
    let h = constructors::diagonal_center(&ctx.w, wt)?;
    let gamma = ctx.w.diagonal();
    let central = ctx
        .w
        .group()
        .generators()
        .iter()
        .all(|s| s.commutes_with(&gamma));
    let meet = g.members().intersection(h.members()).count();
    let direct = lattice::internal_direct_product(wt, &g, &h);
    let ok = central && meet == 1 && direct;
    Ok((
        verdict(ok),
        format!(
            "gamma central: {central}; |G n H| = {meet}; |G||H| = {}·{} = |W| = {}; internal direct product: {direct}",
            g.order(),
            h.order(),
            wt.len()
        ),
        json!({
            "gamma": gamma.to_string(),
            "gamma_central": central,
            "intersection_order": meet,
            "g_order": g.order(),
            "h_order": h.order(),
            "w_order": wt.len(),
            "internal_direct_product": direct,
        }),
    ))
}

fn check_counterexample(ctx: &Ctx) -> Outcome {
    let order = ctx.g.order();
    if order != 96 {
        return Ok((
            Status::Fail,
            format!("G has order {order}, not 96; product not formed"),
            json!({ "g_order": order as u64 }),
        ));
    }
    let c4 = constructors::cyclic(4)?;
    let r = additivity_check(&ctx.g, &c4, ctx.limits())?;
    let mu_w = ctx.mu_w()?;
    let ok = r.mu_g == 12 && r.mu_h == 4 && r.mu_product == 12 && r.strict && mu_w == 12;
    Ok((
        verdict(ok),
        format!(
            "mu(G x C4) = {} {} mu(G) + mu(C4) = {} + {} = {}; mu(W) = {mu_w}",
            r.mu_product,
            if r.strict { "<" } else { ">=" },
            r.mu_g,
            r.mu_h,
            r.mu_g + r.mu_h
        ),
        json!({
            "mu_g": r.mu_g,
            "mu_h": r.mu_h,
            "mu_product": r.mu_product,
            "strict": r.strict,
            "mu_w": mu_w,
            "product_certificate": certificate_json(&r.certificate_product),
        }),
    ))
}

fn check_g333(ctx: &Ctx) -> Outcome {
    let g = constructors::reflection_group(3, 3, 3)?;
    let a = Analysis::new(g, ctx.limits())?;
    let t = a.table();
    let mu = a.mu()?;
    let mut actions = 0;
    let mut all_proper = true;
    let mut centralizer_orders = Vec::new();
    for (i, h) in a.lattice.subgroups().iter().enumerate() {
        if a.lattice.core_id(i) != a.lattice.trivial_id() || h.index_in(t) != 9 {
            continue;
        }
        actions += 1;
        let image = mudeg_core::coset_action(t, h)?.image;
        let c = lattice::centralizer_in_sym(&image)?;
        let proper = image.contains_group(&c) && c.order() < image.order();
        all_proper &= proper;
        centralizer_orders.push(c.order() as u64);
    }
    centralizer_orders.sort_unstable();
    centralizer_orders.dedup();
    let split = decompose_wreath(3, 3, ctx.limits())?;
    let obstructed = split.pair().is_none();
    let ok = mu.value == 9 && actions > 0 && all_proper && obstructed;
    Ok((
        verdict(ok),
        format!(
            "mu(G(3,3,3)) = {}; {actions} faithful index-9 coset action(s), centralizer orders {:?}, all proper: {all_proper}; C3 wr S3 split obstructed: {obstructed}",
            mu.value, centralizer_orders
        ),
        json!({
            "mu": mu.value,
            "index9_core_free_actions": actions,
            "centralizer_orders": centralizer_orders,
            "all_proper": all_proper,
            "wreath_split_obstructed": obstructed,
            "certificate": certificate_json(&mu.certificate),
        }),
    ))
}

fn check_g223(ctx: &Ctx) -> Outcome {
    let g = constructors::reflection_group(2, 2, 3)?;
    let a = Analysis::new(g, ctx.limits())?;
    let t = a.table();
    let mu = a.mu()?;
    let subs: Vec<&Subgroup> = mu
        .certificate
        .entries
        .iter()
        .map(|e| a.lattice.get(e.subgroup))
        .collect();
    let image = union_action(t, &subs)?;
    let s4 = constructors::symmetric(4)?;
    let is_s4 = image.degree() == 4 && image.order() == 24 && image.contains_group(&s4);
    let ok = mu.value == 4 && is_s4;
    Ok((
        verdict(ok),
        format!(
            "mu(G(2,2,3)) = {}; degree-{} image of order {} is Sym(4): {is_s4}",
            mu.value,
            image.degree(),
            image.order()
        ),
        json!({
            "mu": mu.value,
            "image_degree": image.degree(),
            "image_order": image.order() as u64,
            "image_is_sym4": is_s4,
            "certificate": certificate_json(&mu.certificate),
        }),
    ))
}

fn check_degree15(ctx: &Ctx) -> Outcome {
    let limits = ctx.limits();
    let g553 = constructors::reflection_group(5, 5, 3)?;
    let mu_g553 = Analysis::new(g553, limits)?.mu()?;
    let w = constructors::wreath_cyclic(5, 3)?;
    let mu_w = Analysis::new(w.group().clone(), limits)?.mu()?;
    let split = decompose_wreath(5, 3, limits)?;
    let Some((g, h)) = split.pair() else {
        return Ok((
            Status::Fail,
            "C5 wr S3 does not split as G(5,5,3) x C5".into(),
            json!({ "mu_g553": mu_g553.value, "mu_w": mu_w.value }),
        ));
    };
    let t = split.table();
    let r = additivity_check(&g.to_perm_group(t), &h.to_perm_group(t), limits)?;
    let ok = r.strict && r.mu_g == mu_g553.value && r.mu_product == mu_w.value;
    Ok((
        verdict(ok),
        format!(
            "mu(G(5,5,3)) = {}, mu(C5 wr S3) = {}; mu(G x C5) = {} {} {} + {} = {}",
            mu_g553.value,
            mu_w.value,
            r.mu_product,
            if r.strict { "<" } else { ">=" },
            r.mu_g,
            r.mu_h,
            r.mu_g + r.mu_h
        ),
        json!({
            "mu_g553": mu_g553.value,
            "mu_c5_wr_s3": mu_w.value,
            "mu_g": r.mu_g,
            "mu_h": r.mu_h,
            "mu_product": r.mu_product,
            "strict": r.strict,
            "g553_certificate": certificate_json(&mu_g553.certificate),
            "wreath_certificate": certificate_json(&mu_w.certificate),
        }),
    ))
}

/// Plain-text rendering, one line per check.
pub fn render_text(report: &Report) -> String {
    let mut out = String::new();
    for (k, c) in report.checks.iter().enumerate() {
        out += &format!(
            "[{}] {:>2}. {}: {}\n",
            c.status.label(),
            k + 1,
            c.id,
            c.summary
        );
        if c.status == Status::Fail {
            out += &format!("       witness: {}\n", c.witness);
        }
    }
    out += &format!(
        "{}/{} passed, {} flagged, {} failed\n",
        report.totals.passed,
        report.checks.len(),
        report.totals.flagged,
        report.totals.failed
    );
    out
}
