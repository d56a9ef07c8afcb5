//! Permutation groups given by generators, with lazily built stabilizer
//! chains and element tables.

use std::collections::HashMap;
use std::collections::VecDeque;

use once_cell::sync::OnceCell;

use crate::chain::StabilizerChain;
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Default cap on explicit element enumeration.
pub const DEFAULT_ELEMENT_CAP: usize = 2000;

/// A permutation group given by a non-empty generator list.
#[derive(Debug, Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: OnceCell<StabilizerChain>,
    elements: OnceCell<ElementTable>,
}

impl PermGroup {
    pub fn new(generators: Vec<Permutation>) -> Result<Self> {
        let first = generators.first().ok_or_else(|| {
            Error::InvalidParameter("a group needs at least one generator".into())
        })?;
        let degree = first.degree();
        if let Some(bad) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::DegreeMismatch {
                left: degree,
                right: bad.degree(),
            });
        }
        Ok(Self {
            degree,
            generators,
            chain: OnceCell::new(),
            elements: OnceCell::new(),
        })
    }

    /// The trivial group on `degree` points.
    pub fn trivial(degree: usize) -> Self {
        Self::new(vec![Permutation::identity(degree)]).unwrap()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn chain(&self) -> &StabilizerChain {
        self.chain
            .get_or_init(|| StabilizerChain::new(self.degree, &self.generators))
    }

    pub fn order(&self) -> u128 {
        self.chain().order()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.chain().contains(g)
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .enumerate()
            .all(|(i, g)| self.generators[i + 1..].iter().all(|h| g.commutes_with(h)))
    }

    /// Full element table, refusing groups larger than `cap`.
    pub fn enumerate_elements(&self, cap: usize) -> Result<&ElementTable> {
        let order = self.order();
        if order > cap as u128 {
            return Err(Error::OrderCap { order, cap });
        }
        self.elements
            .get_or_try_init(|| ElementTable::build(self.degree, &self.generators, order as usize))
    }

    /// Element table with the default cap.
    pub fn elements(&self) -> Result<&ElementTable> {
        self.enumerate_elements(DEFAULT_ELEMENT_CAP)
    }

    /// Whether every generator of `other` lies in `self`.
    pub fn contains_group(&self, other: &PermGroup) -> bool {
        other.generators.iter().all(|g| self.contains(g))
    }
}

/// All elements of a group, sorted by image sequence (so the identity is
/// index 0), with a full multiplication table.
#[derive(Debug, Clone)]
pub struct ElementTable {
    degree: usize,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, u32>,
    /// `mul[a * n + b]` is the index of `a` followed by `b`.
    mul: Vec<u32>,
    inverse: Vec<u32>,
    orders: Vec<u32>,
    generators: Vec<u32>,
}

impl ElementTable {
    fn build(degree: usize, generators: &[Permutation], expected: usize) -> Result<Self> {
        // Breadth-first closure from the identity, remembering a parent edge
        // for every element so the full table can be filled without hashing.
        let id = Permutation::identity(degree);
        let mut found: HashMap<Permutation, usize> = HashMap::new();
        let mut bfs = vec![id.clone()];
        let mut parent: Vec<Option<(usize, usize)>> = vec![None];
        found.insert(id, 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(k) = queue.pop_front() {
            for (s, g) in generators.iter().enumerate() {
                let next = bfs[k].then(g);
                if !found.contains_key(&next) {
                    found.insert(next.clone(), bfs.len());
                    parent.push(Some((k, s)));
                    queue.push_back(bfs.len());
                    bfs.push(next);
                }
            }
        }
        if bfs.len() != expected {
            return Err(Error::Verification(format!(
                "element closure found {} elements, chain order {}",
                bfs.len(),
                expected
            )));
        }
        let n = bfs.len();

        // Sort into canonical order and relabel.
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| bfs[a].cmp(&bfs[b]));
        let mut rank = vec![0usize; n];
        for (r, &k) in order.iter().enumerate() {
            rank[k] = r;
        }
        let elements: Vec<Permutation> = order.iter().map(|&k| bfs[k].clone()).collect();
        let index: HashMap<Permutation, u32> = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i as u32))
            .collect();

        // Right multiplication by generators.
        let gen_idx: Vec<u32> = generators.iter().map(|g| index[g]).collect();
        let mut right = vec![0u32; n * generators.len()];
        for (i, e) in elements.iter().enumerate() {
            for (s, g) in generators.iter().enumerate() {
                right[i * generators.len() + s] = index[&e.then(g)];
            }
        }
        // mul[a][f] = mul[a][f'] * s where f = f' * s along the BFS tree.
        let mut mul = vec![0u32; n * n];
        for a in 0..n {
            mul[a * n] = a as u32;
        }
        // Parents precede children in discovery order.
        for k in 1..n {
            let (pk, s) = parent[k].unwrap();
            let f = rank[k];
            let fp = rank[pk];
            for a in 0..n {
                let prev = mul[a * n + fp] as usize;
                mul[a * n + f] = right[prev * generators.len() + s];
            }
        }
        let mut inverse = vec![0u32; n];
        for a in 0..n {
            for b in 0..n {
                if mul[a * n + b] == 0 {
                    inverse[a] = b as u32;
                    break;
                }
            }
        }
        let orders = elements.iter().map(|e| e.order() as u32).collect();
        Ok(Self {
            degree,
            elements,
            index,
            mul,
            inverse,
            orders,
            generators: gen_idx,
        })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn element(&self, i: u32) -> &Permutation {
        &self.elements[i as usize]
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn index_of(&self, p: &Permutation) -> Option<u32> {
        self.index.get(p).copied()
    }

    /// Index of `a` followed by `b`.
    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.elements.len() + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inverse[a as usize]
    }

    /// `g⁻¹ h g`.
    #[inline]
    pub fn conj(&self, h: u32, g: u32) -> u32 {
        self.mul(self.mul(self.inv(g), h), g)
    }

    pub fn order_of(&self, a: u32) -> u32 {
        self.orders[a as usize]
    }

    /// Indices of the group's generators, in construction order.
    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    /// Stable fingerprint of the element set (FNV-1a over the sorted images).
    pub fn fingerprint(&self) -> u64 {
        let mut h: u64 = 0xcbf29ce484222325;
        for e in &self.elements {
            for &p in e.images() {
                for byte in p.to_le_bytes() {
                    h ^= byte as u64;
                    h = h.wrapping_mul(0x100000001b3);
                }
            }
        }
        h
    }
}
