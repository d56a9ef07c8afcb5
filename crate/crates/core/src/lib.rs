//! Finite permutation groups with exact subgroup lattices and minimal
//! faithful permutation degrees.
//!
//! Points are numbered from 0 and permutations compose left to right:
//! `p.then(q)` applies `p` first. Conjugation `h^g` is `g⁻¹hg`.

pub mod bitset;
pub mod chain;
pub mod constructors;
pub mod coset;
pub mod error;
pub mod group;
pub mod lattice;
pub mod mindeg;
pub mod perm;
pub mod presentation;

pub use bitset::ElementSet;
pub use chain::StabilizerChain;
pub use constructors::{
    abelian, alternating, cyclic, diagonal_center, dihedral, direct_product, paper_generators_443,
    reflection_group, symmetric, wreath_cyclic, G443Generators, Wreath,
};
pub use coset::{coset_action, is_faithful_action, CosetAction};
pub use error::{Error, Result};
pub use group::{ElementTable, PermGroup};
pub use lattice::{Subgroup, SubgroupLattice};
pub use mindeg::{
    abelian_invariants, additivity_check, decompose_wreath, mu_abelian, mu_exact, mu_of,
    AbelianType, AdditivityReport, Analysis, DegreeCertificate, Limits, MinDegree,
};
pub use perm::{compose, element_order, Permutation};
pub use presentation::{
    evaluate_word, todd_coxeter, verify_presentation_isomorphism, CosetTable, Letter, Presentation,
    Word,
};
