//! Exact minimal faithful permutation degrees.
//!
//! `μ(G)` is the least `Σ |G : G_i|` over subgroup collections whose cores
//! meet trivially. Only the cores matter, and an optimal collection never
//! repeats a core, so the search runs over the normal subgroups that occur
//! as cores, each priced at the least index of a subgroup with that core.

use std::collections::{BTreeMap, HashMap};

use crate::bitset::ElementSet;
use crate::coset::{is_faithful_action, union_action};
use crate::error::{Error, Result};
use crate::group::{ElementTable, PermGroup, DEFAULT_ELEMENT_CAP};
use crate::lattice::{self, Subgroup, SubgroupLattice, DEFAULT_SUBGROUP_CAP};
use crate::perm::Permutation;

/// Resource caps for exact computations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_order: usize,
    pub max_subgroups: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            max_order: DEFAULT_ELEMENT_CAP,
            max_subgroups: DEFAULT_SUBGROUP_CAP,
        }
    }
}

/// Cyclic primary decomposition of an abelian group: prime powers, ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianType {
    pub factors: Vec<u64>,
}

impl AbelianType {
    pub fn order(&self) -> u64 {
        self.factors.iter().product()
    }
}

fn prime_factors(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Reads the type of each Sylow subgroup off the counts of elements of
/// order dividing `p^k`: that count is `p^{Σ min(λ_i, k)}`.
pub fn abelian_invariants(group: &PermGroup, cap: usize) -> Result<AbelianType> {
    if !group.is_abelian() {
        return Err(Error::NotAbelian);
    }
    let table = group.enumerate_elements(cap)?;
    let orders: Vec<u64> = (0..table.len() as u32)
        .map(|i| table.order_of(i) as u64)
        .collect();
    let mut factors = Vec::new();
    for (p, e) in prime_factors(table.len() as u64) {
        // s[k] = log_p #{g : g^{p^k} = 1}
        let mut s = vec![0u32];
        for k in 1..=e {
            let pk = p.pow(k);
            let count = orders.iter().filter(|&&o| pk % o == 0).count() as u64;
            s.push(log_exact(count, p).ok_or_else(|| {
                Error::Verification(format!("count {count} is not a power of {p}"))
            })?);
        }
        // d[k] = #{i : λ_i ≥ k}
        let d: Vec<u32> = (1..=e as usize)
            .map(|k| s[k] - s[k - 1])
            .chain([0])
            .collect();
        for k in 1..=e as usize {
            for _ in 0..d[k - 1] - d[k] {
                factors.push(p.pow(k as u32));
            }
        }
    }
    factors.sort_unstable();
    Ok(AbelianType { factors })
}

fn log_exact(mut n: u64, p: u64) -> Option<u32> {
    let mut k = 0;
    while n > 1 {
        if !n.is_multiple_of(p) {
            return None;
        }
        n /= p;
        k += 1;
    }
    Some(k)
}

/// Sum of the primary cyclic factor orders; `0` for the trivial group.
pub fn mu_abelian(group: &PermGroup, cap: usize) -> Result<u64> {
    Ok(abelian_invariants(group, cap)?.factors.iter().sum())
}

/// Cheapest subgroup for one core.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoreCost {
    /// Lattice id of the (normal) core.
    pub core: usize,
    /// Least index of a subgroup with exactly this core.
    pub cost: usize,
    /// Least-id subgroup attaining `cost`.
    pub representative: usize,
}

#[derive(Debug, Clone)]
pub struct CoreCostTable {
    entries: Vec<CoreCost>,
}

impl CoreCostTable {
    pub fn build(table: &ElementTable, lattice: &SubgroupLattice) -> Self {
        let mut best: BTreeMap<usize, CoreCost> = BTreeMap::new();
        for (id, h) in lattice.subgroups().iter().enumerate() {
            let core = lattice.core_id(id);
            let cost = h.index_in(table);
            best.entry(core)
                .and_modify(|c| {
                    if cost < c.cost {
                        c.cost = cost;
                        c.representative = id;
                    }
                })
                .or_insert(CoreCost {
                    core,
                    cost,
                    representative: id,
                });
        }
        Self {
            entries: best.into_values().collect(),
        }
    }

    /// Entries ordered by core id.
    pub fn entries(&self) -> &[CoreCost] {
        &self.entries
    }

    pub fn cost_of(&self, core: usize) -> Option<&CoreCost> {
        self.entries.iter().find(|e| e.core == core)
    }
}

pub fn core_cost_table(table: &ElementTable, lattice: &SubgroupLattice) -> CoreCostTable {
    CoreCostTable::build(table, lattice)
}

/// One subgroup of a minimal faithful collection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificateEntry {
    pub subgroup: usize,
    pub generators: Vec<Permutation>,
    pub index: usize,
    pub core_order: usize,
}

/// A witness collection realizing `μ(G)` and the faithful action it induces.
#[derive(Debug, Clone)]
pub struct DegreeCertificate {
    pub entries: Vec<CertificateEntry>,
    pub degree: usize,
    /// Images of the group's generators on the disjoint union of coset spaces.
    pub action_generators: Vec<Permutation>,
    pub faithful: bool,
}

impl DegreeCertificate {
    /// Re-checks the witness from scratch: the cores (recomputed here, not
    /// taken from the lattice) meet trivially, the degree is the index sum,
    /// and the induced action has full order.
    pub fn verify(&self, table: &ElementTable, lattice: &SubgroupLattice) -> Result<()> {
        let mut meet = ElementSet::full(table.len());
        let mut total = 0;
        let mut subs = Vec::new();
        for e in &self.entries {
            let h = lattice.get(e.subgroup);
            let core = lattice::core(table, h);
            if core.order() != e.core_order || h.index_in(table) != e.index {
                return Err(Error::Verification(format!(
                    "certificate entry for subgroup {} is stale",
                    e.subgroup
                )));
            }
            meet = meet.intersection(core.members());
            total += e.index;
            subs.push(h);
        }
        if meet.count() != 1 {
            return Err(Error::Verification(format!(
                "cores intersect in {} elements",
                meet.count()
            )));
        }
        if total != self.degree {
            return Err(Error::Verification("degree is not the index sum".into()));
        }
        let image = union_action(table, &subs)?;
        if !is_faithful_action(table.len(), &image) {
            return Err(Error::Verification(format!(
                "induced action has order {} < {}",
                image.order(),
                table.len()
            )));
        }
        Ok(())
    }
}

/// `μ(G)` together with a verified certificate.
#[derive(Debug, Clone)]
pub struct MinDegree {
    pub value: usize,
    pub certificate: DegreeCertificate,
}

/// Everything needed to answer degree questions about one group.
#[derive(Debug)]
pub struct Analysis {
    pub group: PermGroup,
    pub lattice: SubgroupLattice,
    pub costs: CoreCostTable,
}

impl Analysis {
    pub fn new(group: PermGroup, limits: Limits) -> Result<Self> {
        let lattice = {
            let table = group.enumerate_elements(limits.max_order)?;
            SubgroupLattice::build(table, limits.max_subgroups)?
        };
        Self::with_lattice(group, lattice, limits)
    }

    /// Reuses a lattice computed earlier (for example, loaded from a cache).
    pub fn with_lattice(
        group: PermGroup,
        lattice: SubgroupLattice,
        limits: Limits,
    ) -> Result<Self> {
        let table = group.enumerate_elements(limits.max_order)?;
        let costs = CoreCostTable::build(table, &lattice);
        Ok(Self {
            group,
            lattice,
            costs,
        })
    }

    pub fn table(&self) -> &ElementTable {
        self.group
            .enumerate_elements(usize::MAX)
            .expect("table was built in the constructor")
    }

    pub fn mu(&self) -> Result<MinDegree> {
        mu_exact(self.table(), &self.lattice, &self.costs)
    }
}

/// Exact `μ(G)`.
///
/// `f(K)` is the cheapest way to cut the normal subgroup `K` down to the
/// identity: `f(1) = 0` and `f(K) = min cost(N) + f(K ∩ N)` over cores `N`
/// with `K ∩ N < K`. Among optimal collections the certificate prefers
/// fewer subgroups, then the smaller sorted index list, then smaller ids.
pub fn mu_exact(
    table: &ElementTable,
    lattice: &SubgroupLattice,
    costs: &CoreCostTable,
) -> Result<MinDegree> {
    let mut search = Search {
        lattice,
        entries: costs.entries(),
        memo: HashMap::new(),
    };
    let whole = lattice.whole_id();
    let value = search.best(whole);

    let mut solutions: Vec<Vec<usize>> = Vec::new();
    let mut chosen = Vec::new();
    search.collect(whole, 0, value, &mut chosen, &mut solutions);
    let key = |s: &Vec<usize>| {
        let mut idx: Vec<usize> = s.iter().map(|&k| search.entries[k].cost).collect();
        idx.sort_unstable();
        let mut ids: Vec<usize> = s
            .iter()
            .map(|&k| search.entries[k].representative)
            .collect();
        ids.sort_unstable();
        (s.len(), idx, ids)
    };
    let best = solutions
        .iter()
        .min_by_key(|s| key(s))
        .ok_or_else(|| Error::Verification("no optimal collection found".into()))?;

    let mut picks: Vec<&CoreCost> = best.iter().map(|&k| &search.entries[k]).collect();
    picks.sort_by_key(|c| (c.cost, c.representative));
    let entries: Vec<CertificateEntry> = picks
        .iter()
        .map(|c| CertificateEntry {
            subgroup: c.representative,
            generators: lattice.get(c.representative).generator_permutations(table),
            index: c.cost,
            core_order: lattice.get(c.core).order(),
        })
        .collect();
    let subs: Vec<&Subgroup> = picks
        .iter()
        .map(|c| lattice.get(c.representative))
        .collect();
    let image = union_action(table, &subs)?;
    let certificate = DegreeCertificate {
        degree: entries.iter().map(|e| e.index).sum(),
        entries,
        action_generators: if subs.is_empty() {
            Vec::new()
        } else {
            image.generators().to_vec()
        },
        faithful: is_faithful_action(table.len(), &image),
    };
    certificate.verify(table, lattice)?;
    if certificate.degree != value {
        return Err(Error::Verification(
            "certificate degree differs from the optimum".into(),
        ));
    }
    Ok(MinDegree { value, certificate })
}

struct Search<'a> {
    lattice: &'a SubgroupLattice,
    entries: &'a [CoreCost],
    memo: HashMap<usize, usize>,
}

impl Search<'_> {
    fn meet(&self, k: usize, n: usize) -> usize {
        let set = self
            .lattice
            .get(k)
            .members()
            .intersection(self.lattice.get(n).members());
        self.lattice
            .id_of(&set)
            .expect("intersection of subgroups is in the lattice")
    }

    fn best(&mut self, k: usize) -> usize {
        if k == self.lattice.trivial_id() {
            return 0;
        }
        if let Some(&v) = self.memo.get(&k) {
            return v;
        }
        let mut v = usize::MAX;
        for e in 0..self.entries.len() {
            let next = self.meet(k, self.entries[e].core);
            if next != k {
                v = v.min(self.entries[e].cost + self.best(next));
            }
        }
        self.memo.insert(k, v);
        v
    }

    /// All optimal collections, each listed once with entries in increasing
    /// order. In an optimal collection every member strictly shrinks the
    /// running intersection whatever the order, so this misses none.
    fn collect(
        &mut self,
        k: usize,
        from: usize,
        budget: usize,
        chosen: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if k == self.lattice.trivial_id() {
            if budget == 0 {
                out.push(chosen.clone());
            }
            return;
        }
        if self.best(k) > budget {
            return;
        }
        for e in from..self.entries.len() {
            let cost = self.entries[e].cost;
            if cost > budget {
                continue;
            }
            let next = self.meet(k, self.entries[e].core);
            if next != k {
                chosen.push(e);
                self.collect(next, e + 1, budget - cost, chosen, out);
                chosen.pop();
            }
        }
    }
}

/// `μ(G)` from scratch.
pub fn mu_of(group: &PermGroup, limits: Limits) -> Result<MinDegree> {
    Analysis::new(group.clone(), limits)?.mu()
}

/// Comparison of `μ(G × H)` with `μ(G) + μ(H)`.
#[derive(Debug, Clone)]
pub struct AdditivityReport {
    pub mu_g: usize,
    pub mu_h: usize,
    pub mu_product: usize,
    /// `μ(G × H) < μ(G) + μ(H)`.
    pub strict: bool,
    pub certificate_g: DegreeCertificate,
    pub certificate_h: DegreeCertificate,
    pub certificate_product: DegreeCertificate,
}

pub fn additivity_check(g: &PermGroup, h: &PermGroup, limits: Limits) -> Result<AdditivityReport> {
    let product = crate::constructors::direct_product(g, h);
    let order = product.order();
    if order > limits.max_order as u128 {
        return Err(Error::OrderCap {
            order,
            cap: limits.max_order,
        });
    }
    let mg = mu_of(g, limits)?;
    let mh = mu_of(h, limits)?;
    let mp = mu_of(&product, limits)?;
    Ok(AdditivityReport {
        mu_g: mg.value,
        mu_h: mh.value,
        mu_product: mp.value,
        strict: mp.value < mg.value + mh.value,
        certificate_g: mg.certificate,
        certificate_h: mh.certificate,
        certificate_product: mp.certificate,
    })
}

/// How `C_m wr Sym(n)` relates to `G(m, m, n)` and its diagonal centre.
#[derive(Debug, Clone)]
pub enum WreathSplit {
    /// `W = G × H` internally.
    Direct { g: Subgroup, h: Subgroup },
    /// `G ∩ H` is non-trivial.
    Obstructed {
        g: Subgroup,
        h: Subgroup,
        intersection_order: usize,
    },
}

#[derive(Debug, Clone)]
pub struct WreathDecomposition {
    pub wreath: crate::constructors::Wreath,
    pub split: WreathSplit,
}

impl WreathDecomposition {
    /// `(G, H)` when the split is direct.
    pub fn pair(&self) -> Option<(&Subgroup, &Subgroup)> {
        match &self.split {
            WreathSplit::Direct { g, h } => Some((g, h)),
            WreathSplit::Obstructed { .. } => None,
        }
    }

    pub fn table(&self) -> &ElementTable {
        self.wreath
            .group()
            .enumerate_elements(usize::MAX)
            .expect("table was built when decomposing")
    }
}

/// Tries to split `C_m wr Sym(n)` as `G(m, m, n) × ⟨γ_1⋯γ_n⟩`. This works
/// exactly when `gcd(m, n) = 1`, since `γ^k` lies in `G(m, m, n)` iff
/// `kn ≡ 0 (mod m)`.
pub fn decompose_wreath(m: usize, n: usize, limits: Limits) -> Result<WreathDecomposition> {
    let wreath = crate::constructors::wreath_cyclic(m, n)?;
    let (g, h) = {
        let table = wreath.group().enumerate_elements(limits.max_order)?;
        let g = Subgroup::from_permutations(table, &wreath.reflection_generators(m))?;
        let h = crate::constructors::diagonal_center(&wreath, table)?;
        (g, h)
    };
    let table = wreath.group().enumerate_elements(limits.max_order)?;
    let split = if lattice::internal_direct_product(table, &g, &h) {
        WreathSplit::Direct { g, h }
    } else {
        let intersection_order = g.members().intersection(h.members()).count();
        WreathSplit::Obstructed {
            g,
            h,
            intersection_order,
        }
    };
    Ok(WreathDecomposition { wreath, split })
}
