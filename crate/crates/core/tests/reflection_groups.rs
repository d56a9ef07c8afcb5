use mudeg_core::constructors::{check_g443_relations, diagonal_center, reflection_order};
use mudeg_core::lattice::{self, Subgroup};
use mudeg_core::presentation::{check_presentation, g443_presentation, todd_coxeter};
use mudeg_core::{
    additivity_check, cyclic, mu_abelian, paper_generators_443, reflection_group, wreath_cyclic,
    Analysis, Limits, PermGroup,
};

fn g443() -> (mudeg_core::Wreath, PermGroup) {
    let w = wreath_cyclic(4, 3).unwrap();
    let gens = paper_generators_443(&w).unwrap();
    let g = PermGroup::new(gens.as_vec()).unwrap();
    (w, g)
}

#[test]
fn g443_generators() {
    let (w, g) = g443();
    assert_eq!(w.group().order(), 384);
    assert_eq!(w.group().degree(), 12);
    assert_eq!(g.order(), 96);
    let gens = paper_generators_443(&w).unwrap();
    check_g443_relations(&gens).unwrap();
    let xy = PermGroup::new(vec![gens.x.clone(), gens.y.clone()]).unwrap();
    assert_eq!(xy.order(), 16);
    assert_eq!(mu_abelian(&xy, 100).unwrap(), 8);
    // same group as the generic construction
    let r = reflection_group(4, 4, 3).unwrap();
    assert!(r.contains_group(&g) && g.contains_group(&r));
}

#[test]
fn g443_lattice() {
    let (_, g) = g443();
    let a = Analysis::new(g, Limits::default()).unwrap();
    assert_eq!(a.lattice.len(), 114);
    assert_eq!(a.lattice.normal_subgroups().len(), 5);
    let orders: Vec<usize> = a
        .lattice
        .normal_subgroups()
        .iter()
        .map(|&i| a.lattice.get(i).order())
        .collect();
    assert_eq!(orders, vec![1, 4, 16, 48, 96]);
    assert_eq!(a.lattice.minimal_normal_subgroups().len(), 1);
}

#[test]
fn g443_degree_is_twelve() {
    let (_, g) = g443();
    let a = Analysis::new(g, Limits::default()).unwrap();
    let m = a.mu().unwrap();
    assert_eq!(m.value, 12);
    assert_eq!(m.certificate.entries.len(), 1);
    assert_eq!(m.certificate.entries[0].index, 12);
    assert_eq!(m.certificate.entries[0].core_order, 1);
    m.certificate.verify(a.table(), &a.lattice).unwrap();
}

#[test]
fn presentation_enumerates_96_cosets() {
    let p = g443_presentation();
    let t = todd_coxeter(&p, &[], 100_000).unwrap();
    assert_eq!(t.index(), 96);
    assert!(t.relators_close(p.relators()));
    let (w, _) = g443();
    let gens = paper_generators_443(&w).unwrap();
    let c = check_presentation(&p, &gens.as_vec(), 100_000).unwrap();
    assert!(c.failing_relators.is_empty());
    assert!(c.is_isomorphism());
}

#[test]
fn wreath_and_base_degrees() {
    let limits = Limits::default();
    let w = wreath_cyclic(4, 3).unwrap();
    assert_eq!(mudeg_core::mu_of(w.group(), limits).unwrap().value, 12);
    let base = mudeg_core::abelian(&[4, 4, 4]).unwrap();
    assert_eq!(mudeg_core::mu_of(&base, limits).unwrap().value, 12);
    assert_eq!(mu_abelian(&base, 1000).unwrap(), 12);
}

#[test]
fn direct_decomposition_of_w() {
    let (w, _) = g443();
    let t = w.group().elements().unwrap();
    let gens = paper_generators_443(&w).unwrap();
    let g = Subgroup::from_permutations(t, &gens.as_vec()).unwrap();
    let h = diagonal_center(&w, t).unwrap();
    assert_eq!(h.order(), 4);
    assert!(lattice::internal_direct_product(t, &g, &h));
    let w3 = wreath_cyclic(3, 3).unwrap();
    let t3 = w3.group().elements().unwrap();
    let g3 = Subgroup::from_permutations(t3, &w3.reflection_generators(3)).unwrap();
    let h3 = diagonal_center(&w3, t3).unwrap();
    assert!(!lattice::internal_direct_product(t3, &g3, &h3));
    assert!(h3.is_subgroup_of(&g3));
}

#[test]
fn counterexample_of_degree_twelve() {
    let (_, g) = g443();
    let r = additivity_check(&g, &cyclic(4).unwrap(), Limits::default()).unwrap();
    assert_eq!((r.mu_g, r.mu_h, r.mu_product, r.strict), (12, 4, 12, true));
}

#[test]
fn other_reflection_groups() {
    let limits = Limits::default();
    let mu = |m, p, n| {
        mudeg_core::mu_of(&reflection_group(m, p, n).unwrap(), limits)
            .unwrap()
            .value
    };
    assert_eq!(mu(3, 3, 3), 9);
    assert_eq!(mu(2, 2, 3), 4);
    assert_eq!(mu(5, 5, 3), 15);
    assert_eq!(reflection_order(5, 5, 3), 150);
    let w5 = wreath_cyclic(5, 3).unwrap();
    assert_eq!(mudeg_core::mu_of(w5.group(), limits).unwrap().value, 15);
}

#[test]
fn degree_fifteen_counterexample() {
    let d = mudeg_core::decompose_wreath(5, 3, Limits::default()).unwrap();
    let (g, h) = d.pair().unwrap();
    let t = d.table();
    let r = additivity_check(&g.to_perm_group(t), &h.to_perm_group(t), Limits::default()).unwrap();
    assert_eq!((r.mu_g, r.mu_h, r.mu_product, r.strict), (15, 5, 15, true));
}
