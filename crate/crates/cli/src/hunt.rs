//! Sweep of `C_m wr Sym(n)` looking for failures of additivity of μ across
//! the split `G(m,m,n) × ⟨γ⟩`.

use serde_json::{json, Value};

use mudeg_core::mindeg::WreathSplit;
use mudeg_core::{additivity_check, decompose_wreath, AdditivityReport};

use crate::commands::Caps;
use crate::report::{certificate_json, certificate_text, Report};
use crate::CliError;

#[derive(Debug)]
pub enum Outcome {
    Obstructed { intersection_order: usize },
    Checked(Box<AdditivityReport>),
}

#[derive(Debug)]
pub struct Case {
    pub m: usize,
    pub n: usize,
    pub order: usize,
    pub outcome: Outcome,
}

impl Case {
    pub fn is_strict(&self) -> bool {
        matches!(&self.outcome, Outcome::Checked(r) if r.strict)
    }

    fn label(&self) -> String {
        format!("C{} wr S{}", self.m, self.n)
    }
}

fn factorial(n: usize) -> Option<usize> {
    (2..=n).try_fold(1usize, |acc, k| acc.checked_mul(k))
}

/// All `(m, n)` with `m, n ≥ 2` and `m^n·n! ≤ bound`, by order then `m`.
pub fn sweep_parameters(bound: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for n in 2.. {
        let Some(f) = factorial(n) else { break };
        if 2usize
            .checked_pow(n as u32)
            .and_then(|p| p.checked_mul(f))
            .is_none_or(|o| o > bound)
        {
            break;
        }
        for m in 2usize.. {
            match m.checked_pow(n as u32).and_then(|p| p.checked_mul(f)) {
                Some(o) if o <= bound => out.push((o, m, n)),
                _ => break,
            }
        }
    }
    out.sort_unstable();
    out
}

pub fn run(caps: &Caps) -> Result<Vec<Case>, CliError> {
    let limits = caps.limits();
    let mut cases = Vec::new();
    for (order, m, n) in sweep_parameters(caps.max_order) {
        let d = decompose_wreath(m, n, limits)?;
        let outcome = match &d.split {
            WreathSplit::Obstructed {
                intersection_order, ..
            } => Outcome::Obstructed {
                intersection_order: *intersection_order,
            },
            WreathSplit::Direct { g, h } => {
                let t = d.table();
                let r = additivity_check(&g.to_perm_group(t), &h.to_perm_group(t), limits)?;
                Outcome::Checked(Box::new(r))
            }
        };
        cases.push(Case {
            m,
            n,
            order,
            outcome,
        });
    }
    Ok(cases)
}

fn case_json(c: &Case) -> Value {
    let mut v = json!({ "m": c.m, "n": c.n, "order": c.order });
    match &c.outcome {
        Outcome::Obstructed { intersection_order } => {
            v["decomposition"] = json!(null);
            v["intersection_order"] = json!(intersection_order);
        }
        Outcome::Checked(r) => {
            v["decomposition"] = json!(format!("G({0},{0},{1}) x C{0}", c.m, c.n));
            v["mu_g"] = json!(r.mu_g);
            v["mu_h"] = json!(r.mu_h);
            v["mu_product"] = json!(r.mu_product);
            v["strict"] = json!(r.strict);
            if r.strict {
                v["certificate_product"] = certificate_json(&r.certificate_product);
            }
        }
    }
    v
}

pub fn hunt(caps: &Caps) -> Result<(Report, String), CliError> {
    let cases = run(caps)?;
    let mut report = Report::new("hunt")
        .input("max_order", caps.max_order)
        .input("max_subgroups", caps.max_subgroups);
    let strict: Vec<&Case> = cases.iter().filter(|c| c.is_strict()).collect();
    report.result = Some(json!({
        "cases": cases.iter().map(case_json).collect::<Vec<_>>(),
        "strict_violations": strict.len(),
    }));

    let mut out = String::new();
    for c in &cases {
        match &c.outcome {
            Outcome::Obstructed { intersection_order } => {
                out += &format!(
                    "{} (order {}): no decomposition (γ ∈ G, |G ∩ H| = {intersection_order})\n",
                    c.label(),
                    c.order
                );
            }
            Outcome::Checked(r) => {
                let rel = if r.strict { "<" } else { "=" };
                out += &format!(
                    "{} (order {}): G({m},{m},{n}) x C{m}: mu = {} {rel} {} + {} = {}{}\n",
                    c.label(),
                    c.order,
                    r.mu_product,
                    r.mu_g,
                    r.mu_h,
                    r.mu_g + r.mu_h,
                    if r.strict { "  STRICT" } else { "" },
                    m = c.m,
                    n = c.n,
                );
            }
        }
    }
    out += &format!("strict violations: {}\n", strict.len());
    for c in strict {
        if let Outcome::Checked(r) = &c.outcome {
            out += &format!("\n{}: G({m},{m},{n}) x C{m}\n", c.label(), m = c.m, n = c.n);
            out += &certificate_text(&r.certificate_product);
        }
    }
    Ok((report, out))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parameters_below_400() {
        let p: Vec<(usize, usize)> = sweep_parameters(400)
            .iter()
            .map(|&(_, m, n)| (m, n))
            .collect();
        assert!(p.contains(&(4, 3)));
        assert!(p.contains(&(3, 3)));
        assert!(p.contains(&(2, 4)));
        assert!(!p.contains(&(5, 3)));
        assert!(sweep_parameters(800)
            .iter()
            .any(|&(_, m, n)| (m, n) == (5, 3)));
        assert!(sweep_parameters(7).is_empty());
    }
}
