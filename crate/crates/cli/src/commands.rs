//! Command implementations. Each returns a [`Report`] plus the text that
//! goes to stdout; `main` only chooses between the two renderings and maps
//! errors to exit codes.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};

use mudeg_core::presentation::{parse_word, todd_coxeter, Presentation};
use mudeg_core::{Analysis, Error, Limits, SubgroupLattice};

use crate::cache::{cache_dir, LatticeCache};
use crate::expr::{parse_group, GroupExpr};
use crate::report::{certificate_json, certificate_text, cycles, Report};
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    pub max_order: usize,
    pub max_subgroups: usize,
    pub max_cosets: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Self {
            max_order: 2000,
            max_subgroups: 200_000,
            max_cosets: mudeg_core::presentation::DEFAULT_COSET_CAP,
        }
    }
}

impl Caps {
    pub fn limits(&self) -> Limits {
        Limits {
            max_order: self.max_order,
            max_subgroups: self.max_subgroups,
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct CacheOptions {
    pub disabled: bool,
    pub dir: Option<PathBuf>,
}

/// What happened with the on-disk lattice cache. Only ever reported in the
/// `runtime` section or on stderr.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CacheStatus {
    Disabled,
    Hit,
    Stored,
    StoreFailed(String),
}

impl CacheStatus {
    pub fn describe(&self) -> String {
        match self {
            CacheStatus::Disabled => "disabled".into(),
            CacheStatus::Hit => "hit".into(),
            CacheStatus::Stored => "miss (stored)".into(),
            CacheStatus::StoreFailed(e) => format!("miss (store failed: {e})"),
        }
    }
}

pub struct Output {
    pub report: Report,
    pub text: String,
    pub success: bool,
    pub cache: Option<CacheStatus>,
}

impl Output {
    fn ok(report: Report, text: String) -> Self {
        Self {
            report,
            text,
            success: true,
            cache: None,
        }
    }
}

/// Orders above `u64::MAX` are rendered as decimal strings.
pub(crate) fn order_json(order: u128) -> Value {
    match u64::try_from(order) {
        Ok(v) => json!(v),
        Err(_) => json!(order.to_string()),
    }
}

fn parse_within_caps(text: &str, caps: &Caps) -> Result<GroupExpr, CliError> {
    let expr = parse_group(text)?;
    let order = expr.order();
    if order > caps.max_order as u128 {
        return Err(Error::OrderCap {
            order,
            cap: caps.max_order,
        }
        .into());
    }
    Ok(expr)
}

/// Builds the group, its element table and its subgroup lattice, going
/// through the cache when enabled.
pub fn analyze(
    text: &str,
    caps: &Caps,
    cache: &CacheOptions,
) -> Result<(GroupExpr, Analysis, CacheStatus), CliError> {
    let expr = parse_within_caps(text, caps)?;
    let group = expr.build()?;
    let limits = caps.limits();
    let canonical = expr.to_string();
    let table = group.enumerate_elements(caps.max_order)?;
    let (lattice, status) = if cache.disabled {
        (
            SubgroupLattice::build(table, caps.max_subgroups)?,
            CacheStatus::Disabled,
        )
    } else {
        let store = LatticeCache::new(cache_dir(cache.dir.as_deref()));
        match store.load(&canonical, limits, table) {
            Some(l) => (l, CacheStatus::Hit),
            None => {
                let l = SubgroupLattice::build(table, caps.max_subgroups)?;
                let status = match store.store(&canonical, limits, table, &l) {
                    Ok(()) => CacheStatus::Stored,
                    Err(e) => CacheStatus::StoreFailed(e.to_string()),
                };
                (l, status)
            }
        }
    };
    let analysis = Analysis::with_lattice(group, lattice, limits)?;
    Ok((expr, analysis, status))
}

fn base_report(command: &str, expr: &GroupExpr, caps: &Caps) -> Report {
    Report::new(command)
        .input("expression", expr.to_string())
        .input("max_order", caps.max_order)
        .input("max_subgroups", caps.max_subgroups)
}

pub fn order(text: &str) -> Result<Output, CliError> {
    let expr = parse_group(text)?;
    let group = expr.build()?;
    let order = group.order();
    let mut report = Report::new("order").input("expression", expr.to_string());
    report.result = Some(json!({
        "order": order_json(order),
        "degree": group.degree(),
        "generators": cycles(group.generators()),
    }));
    let text = format!("|{expr}| = {order} (degree {})\n", group.degree());
    Ok(Output::ok(report, text))
}

pub fn mu(
    text: &str,
    caps: &Caps,
    cache: &CacheOptions,
    with_certificate: bool,
) -> Result<Output, CliError> {
    let (expr, analysis, status) = analyze(text, caps, cache)?;
    let mu = analysis.mu()?;
    let mut report = base_report("mu", &expr, caps);
    let mut result = json!({
        "order": analysis.table().len(),
        "mu": mu.value,
    });
    let mut out = format!("mu({expr}) = {}\n", mu.value);
    if with_certificate {
        result["certificate"] = certificate_json(&mu.certificate);
        out += &certificate_text(&mu.certificate);
    }
    report.result = Some(result);
    let mut output = Output::ok(report, out);
    output.cache = Some(status);
    Ok(output)
}

pub fn lattice(
    text: &str,
    caps: &Caps,
    cache: &CacheOptions,
    normal_only: bool,
) -> Result<Output, CliError> {
    let (expr, analysis, status) = analyze(text, caps, cache)?;
    let table = analysis.table();
    let lat = &analysis.lattice;
    let ids: Vec<usize> = if normal_only {
        lat.normal_subgroups()
    } else {
        (0..lat.len()).collect()
    };
    let minimal = lat.minimal_normal_subgroups();
    let mut by_order: BTreeMap<usize, usize> = BTreeMap::new();
    for &i in &ids {
        *by_order.entry(lat.get(i).order()).or_default() += 1;
    }
    let entries: Vec<Value> = ids
        .iter()
        .map(|&i| {
            let h = lat.get(i);
            json!({
                "id": i,
                "order": h.order(),
                "index": h.index_in(table),
                "generators": cycles(&h.generator_permutations(table)),
                "core": lat.core_id(i),
                "normal": lat.is_normal(i),
                "minimal_normal": minimal.contains(&i),
                "class": lat.class_id(i),
            })
        })
        .collect();

    let mut out = format!(
        "{expr}: order {}, {} subgroups in {} conjugacy classes, {} normal\n",
        table.len(),
        lat.len(),
        lat.class_count(),
        lat.normal_subgroups().len()
    );
    out += if normal_only {
        "normal subgroups by order:\n"
    } else {
        "subgroups by order:\n"
    };
    for (o, c) in &by_order {
        out += &format!("  {o:>6}: {c}\n");
    }
    if normal_only {
        out += "normal subgroups:\n";
        for &i in &ids {
            let h = lat.get(i);
            let gens = h.generator_permutations(table);
            let gens = if gens.is_empty() {
                "()".to_string()
            } else {
                cycles(&gens).join(", ")
            };
            let mark = if minimal.contains(&i) {
                " [minimal]"
            } else {
                ""
            };
            out += &format!("  #{i} order {}{mark}: <{gens}>\n", h.order());
        }
    } else {
        let mut cores: BTreeMap<usize, usize> = BTreeMap::new();
        for i in 0..lat.len() {
            *cores.entry(lat.core_id(i)).or_default() += 1;
        }
        out += "cores (core id: order, subgroups with that core):\n";
        for (c, n) in &cores {
            out += &format!("  #{c}: order {}, {n}\n", lat.get(*c).order());
        }
    }

    let mut report = base_report("lattice", &expr, caps).input("normal_only", normal_only);
    report.result = Some(json!({
        "order": table.len(),
        "subgroup_count": lat.len(),
        "class_count": lat.class_count(),
        "normal_count": lat.normal_subgroups().len(),
        "minimal_normal": minimal,
        "by_order": by_order.iter().map(|(k, v)| (k.to_string(), json!(v))).collect::<serde_json::Map<_, _>>(),
        "subgroups": entries,
    }));
    let mut output = Output::ok(report, out);
    output.cache = Some(status);
    Ok(output)
}

pub fn enumerate(path: &Path, subgroup: &[String], caps: &Caps) -> Result<Output, CliError> {
    let source = std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        source: e,
    })?;
    let p = Presentation::parse(&source)?;
    let words = subgroup
        .iter()
        .map(|w| {
            parse_word(p.names(), w).map_err(|message| Error::PresentationSyntax {
                line: 0,
                message: format!("subgroup word {w:?}: {message}"),
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let table = todd_coxeter(&p, &words, caps.max_cosets)?;
    let subgroup_text: Vec<String> = words.iter().map(|w| p.format_word(w)).collect();
    let mut report = Report::new("enumerate")
        .input("file", path.display().to_string())
        .input("subgroup", subgroup_text.clone())
        .input("max_cosets", caps.max_cosets);
    report.result = Some(json!({
        "generators": p.names(),
        "relators": p.relators().iter().map(|r| p.format_word(r)).collect::<Vec<_>>(),
        "index": table.index(),
        "cosets_defined": table.total_defined,
        "generator_actions": cycles(&table.generator_permutations()),
    }));
    let text = format!(
        "index {} ({} cosets defined)\n",
        table.index(),
        table.total_defined
    );
    Ok(Output::ok(report, text))
}

pub fn verify_paper(caps: &Caps, fault: Option<crate::verify::Fault>) -> Output {
    let report = crate::verify::verify_paper(*caps, fault);
    let text = crate::verify::render_text(&report);
    let success = report.all_passed();
    Output {
        report,
        text,
        success,
        cache: None,
    }
}

pub fn hunt(caps: &Caps) -> Result<Output, CliError> {
    let (report, text) = crate::hunt::hunt(caps)?;
    Ok(Output::ok(report, text))
}
