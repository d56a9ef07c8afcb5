//! Actions on right cosets.

use crate::bitset::ElementSet;
use crate::error::{Error, Result};
use crate::group::{ElementTable, PermGroup};
use crate::lattice::Subgroup;
use crate::perm::Permutation;

/// The permutation action of a group on the right cosets of a subgroup.
#[derive(Debug, Clone)]
pub struct CosetAction {
    /// Least element index of each coset, in coset order.
    pub representatives: Vec<u32>,
    /// Image of each group generator, aligned with the table's generators.
    pub generator_images: Vec<Permutation>,
    pub image: PermGroup,
}

impl CosetAction {
    pub fn degree(&self) -> usize {
        self.representatives.len()
    }
}

/// Right cosets `Hg`, numbered by their least element index.
fn right_cosets(table: &ElementTable, h: &Subgroup) -> (Vec<u32>, Vec<u32>) {
    let n = table.len();
    let mut coset_of = vec![u32::MAX; n];
    let mut reps = Vec::new();
    let members: Vec<u32> = h.members().iter().collect();
    for e in 0..n as u32 {
        if coset_of[e as usize] != u32::MAX {
            continue;
        }
        let k = reps.len() as u32;
        reps.push(e);
        for &x in &members {
            coset_of[table.mul(x, e) as usize] = k;
        }
    }
    (reps, coset_of)
}

fn check_subgroup(table: &ElementTable, h: &Subgroup) -> Result<()> {
    if h.members().universe() != table.len() {
        return Err(Error::NotASubgroup(format!(
            "subgroup lives in a group of order {}, not {}",
            h.members().universe(),
            table.len()
        )));
    }
    if !table.len().is_multiple_of(h.order()) || !h.contains(0) {
        return Err(Error::NotASubgroup(
            "order does not divide the group order".into(),
        ));
    }
    Ok(())
}

/// Each generator `s` maps coset `Hg` to `Hgs`.
pub fn coset_action(table: &ElementTable, h: &Subgroup) -> Result<CosetAction> {
    check_subgroup(table, h)?;
    let (reps, coset_of) = right_cosets(table, h);
    let generator_images: Vec<Permutation> = table
        .generators()
        .iter()
        .map(|&s| {
            let images = reps
                .iter()
                .map(|&r| coset_of[table.mul(r, s) as usize])
                .collect();
            Permutation::from_images(images)
        })
        .collect::<Result<_>>()
        .map_err(|_| Error::NotASubgroup("coset map is not a permutation".into()))?;
    let image = PermGroup::new(generator_images.clone())?;
    Ok(CosetAction {
        representatives: reps,
        generator_images,
        image,
    })
}

/// The diagonal action on the disjoint union of coset spaces, blocks in the
/// given order.
pub fn union_action(table: &ElementTable, subgroups: &[&Subgroup]) -> Result<PermGroup> {
    if subgroups.is_empty() {
        return Ok(PermGroup::trivial(0));
    }
    let actions = subgroups
        .iter()
        .map(|h| coset_action(table, h))
        .collect::<Result<Vec<_>>>()?;
    let degree: usize = actions.iter().map(CosetAction::degree).sum();
    let mut gens = Vec::with_capacity(table.generators().len());
    for s in 0..table.generators().len() {
        let mut images: Vec<u32> = Vec::with_capacity(degree);
        let mut offset = 0u32;
        for a in &actions {
            images.extend(a.generator_images[s].images().iter().map(|&p| p + offset));
            offset += a.degree() as u32;
        }
        gens.push(Permutation::from_images(images)?);
    }
    PermGroup::new(gens)
}

/// Faithful iff the image has the full group order.
pub fn is_faithful_action(group_order: usize, image: &PermGroup) -> bool {
    image.order() == group_order as u128
}

/// Kernel of the coset action, as an element set (the core, computed
/// directly from the action).
pub fn action_kernel(table: &ElementTable, h: &Subgroup) -> ElementSet {
    let (reps, _) = right_cosets(table, h);
    // g is in the kernel iff r g r⁻¹ ∈ H for every representative r.
    ElementSet::from_indices(
        table.len(),
        (0..table.len() as u32).filter(|&g| {
            reps.iter()
                .all(|&r| h.contains(table.mul(table.mul(r, g), table.inv(r))))
        }),
    )
}
