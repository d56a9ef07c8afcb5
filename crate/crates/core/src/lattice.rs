//! Subgroups as bitsets over an element table, the complete subgroup
//! lattice, normal cores and related queries.

use std::collections::{BTreeMap, HashMap};

use crate::bitset::ElementSet;
use crate::error::{Error, Result};
use crate::group::{ElementTable, PermGroup};
use crate::perm::Permutation;

/// Default cap on the number of subgroups explored.
pub const DEFAULT_SUBGROUP_CAP: usize = 200_000;

/// Largest degree accepted by [`centralizer_in_sym`].
pub const CENTRALIZER_MAX_DEGREE: usize = 10;

/// A subgroup of the group behind some [`ElementTable`].
#[derive(Debug, Clone)]
pub struct Subgroup {
    members: ElementSet,
    order: usize,
    generators: Vec<u32>,
}

impl Subgroup {
    pub fn trivial(table: &ElementTable) -> Self {
        Self {
            members: ElementSet::from_indices(table.len(), [0]),
            order: 1,
            generators: Vec::new(),
        }
    }

    pub fn whole(table: &ElementTable) -> Self {
        Self {
            members: ElementSet::full(table.len()),
            order: table.len(),
            generators: table
                .generators()
                .iter()
                .copied()
                .filter(|&g| g != 0)
                .collect(),
        }
    }

    /// Subgroup generated by the given element indices.
    pub fn generated(table: &ElementTable, gens: &[u32]) -> Self {
        gens.iter()
            .fold(Self::trivial(table), |h, &g| h.extend(table, g))
    }

    /// Subgroup generated by permutations that must lie in the table.
    pub fn from_permutations(table: &ElementTable, perms: &[Permutation]) -> Result<Self> {
        let gens = perms
            .iter()
            .map(|p| {
                table
                    .index_of(p)
                    .ok_or_else(|| Error::NotASubgroup(format!("{p} is not in the group")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::generated(table, &gens))
    }

    /// Wraps an element set after checking it is a subgroup.
    pub fn from_members(table: &ElementTable, members: ElementSet) -> Result<Self> {
        if members.universe() != table.len() {
            return Err(Error::NotASubgroup(
                "element set has the wrong universe".into(),
            ));
        }
        if !members.contains(0) || !is_closed(table, &members) {
            return Err(Error::NotASubgroup("element set is not closed".into()));
        }
        Ok(Self::from_members_unchecked(table, members))
    }

    pub(crate) fn from_members_unchecked(table: &ElementTable, members: ElementSet) -> Self {
        // Greedy generating set: add the least element not yet generated.
        let mut h = Self::trivial(table);
        for e in members.iter() {
            if !h.members.contains(e) {
                h = h.extend(table, e);
            }
        }
        debug_assert_eq!(h.members, members);
        h
    }

    /// `⟨self, g⟩`, computed coset by coset.
    pub fn extend(&self, table: &ElementTable, g: u32) -> Subgroup {
        if self.members.contains(g) {
            return self.clone();
        }
        let own: Vec<u32> = self.members.iter().collect();
        let mut members = self.members.clone();
        let mut gens = self.generators.clone();
        gens.push(g);
        // The result is a union of left cosets xH. Right multiplication by
        // H's generators fixes each coset, so only g needs applying.
        let mut reps: Vec<u32> = vec![0];
        let mut k = 0;
        while k < reps.len() {
            let x = reps[k];
            k += 1;
            for &h in &own {
                let y = table.mul(table.mul(x, h), g);
                if !members.contains(y) {
                    for &h2 in &own {
                        members.insert(table.mul(y, h2));
                    }
                    reps.push(y);
                }
            }
        }
        let order = members.count();
        Subgroup {
            members,
            order,
            generators: gens,
        }
    }

    pub fn members(&self) -> &ElementSet {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn index_in(&self, table: &ElementTable) -> usize {
        table.len() / self.order
    }

    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    pub fn contains(&self, e: u32) -> bool {
        self.members.contains(e)
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.members.is_subset(&other.members)
    }

    /// Generators as permutations.
    pub fn generator_permutations(&self, table: &ElementTable) -> Vec<Permutation> {
        self.generators
            .iter()
            .map(|&g| table.element(g).clone())
            .collect()
    }

    /// The subgroup as a standalone permutation group.
    pub fn to_perm_group(&self, table: &ElementTable) -> PermGroup {
        let gens = self.generator_permutations(table);
        if gens.is_empty() {
            PermGroup::trivial(table.degree())
        } else {
            PermGroup::new(gens).expect("generators share the table's degree")
        }
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}

impl Eq for Subgroup {}

/// Exhaustive closure test: every product of two members is a member.
pub fn is_closed(table: &ElementTable, set: &ElementSet) -> bool {
    let members: Vec<u32> = set.iter().collect();
    members
        .iter()
        .all(|&a| members.iter().all(|&b| set.contains(table.mul(a, b))))
}

pub fn intersect(table: &ElementTable, h: &Subgroup, k: &Subgroup) -> Subgroup {
    Subgroup::from_members_unchecked(table, h.members.intersection(&k.members))
}

/// `H^g = g⁻¹ H g`.
pub fn conjugate(table: &ElementTable, h: &Subgroup, g: u32) -> Subgroup {
    let members = ElementSet::from_indices(table.len(), h.members.iter().map(|e| table.conj(e, g)));
    let generators = h.generators.iter().map(|&e| table.conj(e, g)).collect();
    Subgroup {
        members,
        order: h.order,
        generators,
    }
}

fn conjugate_set(table: &ElementTable, set: &ElementSet, g: u32) -> ElementSet {
    ElementSet::from_indices(table.len(), set.iter().map(|e| table.conj(e, g)))
}

/// Normal iff stable under conjugation by every generator of the parent.
pub fn is_normal(table: &ElementTable, h: &Subgroup) -> bool {
    table.generators().iter().all(|&g| {
        h.generators
            .iter()
            .all(|&e| h.members.contains(table.conj(e, g)))
    })
}

/// All conjugates of `set`, as the orbit under generator conjugation.
fn conjugacy_orbit(table: &ElementTable, set: &ElementSet) -> Vec<ElementSet> {
    let mut orbit = vec![set.clone()];
    let mut seen: std::collections::HashSet<ElementSet> = [set.clone()].into_iter().collect();
    let mut k = 0;
    while k < orbit.len() {
        for &g in table.generators() {
            let c = conjugate_set(table, &orbit[k], g);
            if seen.insert(c.clone()) {
                orbit.push(c);
            }
        }
        k += 1;
    }
    orbit
}

/// The normal core: intersection of all conjugates of `h`.
pub fn core(table: &ElementTable, h: &Subgroup) -> Subgroup {
    let orbit = conjugacy_orbit(table, &h.members);
    let mut acc = h.members.clone();
    for c in &orbit[1..] {
        acc = acc.intersection(c);
    }
    Subgroup::from_members_unchecked(table, acc)
}

/// Histogram of element orders.
pub fn order_profile(table: &ElementTable) -> BTreeMap<u32, usize> {
    let mut out = BTreeMap::new();
    for i in 0..table.len() as u32 {
        *out.entry(table.order_of(i)).or_insert(0) += 1;
    }
    out
}

/// Whether every element of the coset `A·w` satisfies `predicate` on its order.
pub fn coset_order_check(
    table: &ElementTable,
    a: &Subgroup,
    w: u32,
    predicate: impl Fn(u32) -> bool,
) -> bool {
    a.members
        .iter()
        .all(|e| predicate(table.order_of(table.mul(e, w))))
}

/// `G ∩ H = 1`, `[G, H] = 1` on generators, and `|G|·|H| = |W|`.
pub fn internal_direct_product(table: &ElementTable, g: &Subgroup, h: &Subgroup) -> bool {
    let meet = g.members.intersection(&h.members);
    meet.count() == 1
        && g.generators.iter().all(|&x| {
            h.generators
                .iter()
                .all(|&y| table.mul(x, y) == table.mul(y, x))
        })
        && g.order * h.order == table.len()
}

/// The full centralizer of `group` in the symmetric group on its points,
/// found by exhaustive backtracking over all point images.
pub fn centralizer_in_sym(group: &PermGroup) -> Result<PermGroup> {
    let n = group.degree();
    if n > CENTRALIZER_MAX_DEGREE {
        return Err(Error::DegreeTooLarge {
            degree: n,
            max: CENTRALIZER_MAX_DEGREE,
        });
    }
    let gens: Vec<&Permutation> = group
        .generators()
        .iter()
        .filter(|g| !g.is_identity())
        .collect();
    let mut found = PermGroup::trivial(n);
    let mut assignment: Vec<Option<u32>> = vec![None; n];
    let mut used = vec![false; n];
    search_centralizer(&gens, &mut assignment, &mut used, &mut found);
    Ok(found)
}

fn search_centralizer(
    gens: &[&Permutation],
    assignment: &mut Vec<Option<u32>>,
    used: &mut Vec<bool>,
    found: &mut PermGroup,
) {
    let Some(p) = assignment.iter().position(Option::is_none) else {
        let images = assignment.iter().map(|x| x.unwrap()).collect();
        let c = Permutation::from_images(images).expect("assignment is a bijection");
        if !found.contains(&c) {
            let mut g = found.generators().to_vec();
            g.retain(|x| !x.is_identity());
            g.push(c);
            *found = PermGroup::new(g).unwrap();
        }
        return;
    };
    for q in 0..assignment.len() as u32 {
        if used[q as usize] {
            continue;
        }
        let saved_a = assignment.clone();
        let saved_u = used.clone();
        if propagate(gens, assignment, used, p as u32, q) {
            search_centralizer(gens, assignment, used, found);
        }
        *assignment = saved_a;
        *used = saved_u;
    }
}

/// Assigns `c(p) = q` and closes under `c(s(x)) = s(c(x))`.
fn propagate(
    gens: &[&Permutation],
    assignment: &mut [Option<u32>],
    used: &mut [bool],
    p: u32,
    q: u32,
) -> bool {
    let mut stack = vec![(p, q)];
    while let Some((x, y)) = stack.pop() {
        match assignment[x as usize] {
            Some(z) if z == y => continue,
            Some(_) => return false,
            None => {
                if used[y as usize] {
                    return false;
                }
                assignment[x as usize] = Some(y);
                used[y as usize] = true;
            }
        }
        for s in gens {
            stack.push((s.apply(x), s.apply(y)));
        }
    }
    true
}

/// Every subgroup of a finite group, with cores, normality and conjugacy
/// classes.
#[derive(Debug, Clone)]
pub struct SubgroupLattice {
    subgroups: Vec<Subgroup>,
    lookup: HashMap<ElementSet, usize>,
    core: Vec<usize>,
    normal: Vec<bool>,
    class: Vec<usize>,
}

impl SubgroupLattice {
    /// Builds the lattice by single-element extension closure: starting from
    /// the trivial subgroup, add `⟨H, g⟩` for every known `H` and every cyclic
    /// subgroup `⟨g⟩ ⊄ H` until nothing new appears.
    pub fn build(table: &ElementTable, cap: usize) -> Result<Self> {
        let cyclic = cyclic_generators(table);
        let mut subgroups = vec![Subgroup::trivial(table)];
        let mut lookup: HashMap<ElementSet, usize> = HashMap::new();
        lookup.insert(subgroups[0].members.clone(), 0);
        let mut k = 0;
        while k < subgroups.len() {
            let h = subgroups[k].clone();
            k += 1;
            for &g in &cyclic {
                if h.members.contains(g) {
                    continue;
                }
                let ext = h.extend(table, g);
                if !lookup.contains_key(&ext.members) {
                    if subgroups.len() >= cap {
                        return Err(Error::SubgroupCap { cap });
                    }
                    lookup.insert(ext.members.clone(), subgroups.len());
                    subgroups.push(ext);
                }
            }
        }
        Ok(Self::from_subgroups(table, subgroups))
    }

    /// Rebuilds a lattice from stored `(members, generators)` pairs, checking
    /// that each generator list generates exactly its member set.
    /// Completeness cannot be checked here; callers vouch for it.
    pub fn from_parts(table: &ElementTable, parts: Vec<(ElementSet, Vec<u32>)>) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        let mut subgroups = Vec::with_capacity(parts.len());
        for (set, gens) in parts {
            if set.universe() != table.len() || gens.iter().any(|&g| g as usize >= table.len()) {
                return Err(Error::NotASubgroup(
                    "stored subgroup has the wrong universe".into(),
                ));
            }
            let h = Subgroup::generated(table, &gens);
            if h.members != set {
                return Err(Error::NotASubgroup(
                    "stored generators do not match members".into(),
                ));
            }
            if !seen.insert(set) {
                return Err(Error::NotASubgroup("duplicate subgroup".into()));
            }
            subgroups.push(h);
        }
        let has = |n: usize| subgroups.iter().any(|h| h.order == n);
        if !has(1) || !has(table.len()) {
            return Err(Error::NotASubgroup(
                "lattice lacks the trivial or whole group".into(),
            ));
        }
        Ok(Self::from_subgroups(table, subgroups))
    }

    /// Sorts, indexes and annotates a complete subgroup list.
    pub(crate) fn from_subgroups(table: &ElementTable, mut subgroups: Vec<Subgroup>) -> Self {
        subgroups.sort_by(|a, b| {
            a.order
                .cmp(&b.order)
                .then_with(|| a.members.cmp(&b.members))
        });
        let lookup: HashMap<ElementSet, usize> = subgroups
            .iter()
            .enumerate()
            .map(|(i, h)| (h.members.clone(), i))
            .collect();
        let n = subgroups.len();
        let mut class = vec![usize::MAX; n];
        let mut core = vec![usize::MAX; n];
        let mut normal = vec![false; n];
        for i in 0..n {
            if class[i] != usize::MAX {
                continue;
            }
            let orbit = conjugacy_orbit(table, &subgroups[i].members);
            let mut meet = orbit[0].clone();
            for c in &orbit[1..] {
                meet = meet.intersection(c);
            }
            let core_id = lookup[&meet];
            for c in &orbit {
                let id = lookup[c];
                class[id] = i;
                core[id] = core_id;
            }
            normal[i] = orbit.len() == 1;
        }
        Self {
            subgroups,
            lookup,
            core,
            normal,
            class,
        }
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn get(&self, id: usize) -> &Subgroup {
        &self.subgroups[id]
    }

    pub fn id_of(&self, members: &ElementSet) -> Option<usize> {
        self.lookup.get(members).copied()
    }

    /// Id of the trivial subgroup (always 0).
    pub fn trivial_id(&self) -> usize {
        0
    }

    /// Id of the whole group (always last).
    pub fn whole_id(&self) -> usize {
        self.subgroups.len() - 1
    }

    pub fn core_id(&self, id: usize) -> usize {
        self.core[id]
    }

    pub fn is_normal(&self, id: usize) -> bool {
        self.normal[id]
    }

    /// Id of the least-id member of the conjugacy class.
    pub fn class_id(&self, id: usize) -> usize {
        self.class[id]
    }

    pub fn normal_subgroups(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.normal[i]).collect()
    }

    /// Non-trivial normal subgroups with no non-trivial normal subgroup
    /// properly inside.
    pub fn minimal_normal_subgroups(&self) -> Vec<usize> {
        let normal = self.normal_subgroups();
        normal
            .iter()
            .copied()
            .filter(|&n| n != 0)
            .filter(|&n| {
                !normal.iter().any(|&m| {
                    m != 0
                        && m != n
                        && self.subgroups[m]
                            .members
                            .is_subset(&self.subgroups[n].members)
                })
            })
            .collect()
    }

    /// Number of subgroups of each order.
    pub fn count_by_order(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for h in &self.subgroups {
            *out.entry(h.order).or_insert(0) += 1;
        }
        out
    }

    /// Number of conjugacy classes of subgroups.
    pub fn class_count(&self) -> usize {
        (0..self.len()).filter(|&i| self.class[i] == i).count()
    }
}

/// Shorthand for [`SubgroupLattice::build`].
pub fn all_subgroups(table: &ElementTable, cap: usize) -> Result<SubgroupLattice> {
    SubgroupLattice::build(table, cap)
}

/// Normal subgroups of the group behind `lattice`.
pub fn normal_subgroups(lattice: &SubgroupLattice) -> Vec<usize> {
    lattice.normal_subgroups()
}

pub fn minimal_normal_subgroups(lattice: &SubgroupLattice) -> Vec<usize> {
    lattice.minimal_normal_subgroups()
}

/// One generator per distinct cyclic subgroup, the least index generating it.
fn cyclic_generators(table: &ElementTable) -> Vec<u32> {
    let mut seen: std::collections::HashSet<ElementSet> = std::collections::HashSet::new();
    let mut out = Vec::new();
    for g in 1..table.len() as u32 {
        let mut set = ElementSet::new(table.len());
        let mut x = g;
        while set.insert(x) {
            x = table.mul(x, g);
        }
        if seen.insert(set) {
            out.push(g);
        }
    }
    out
}
