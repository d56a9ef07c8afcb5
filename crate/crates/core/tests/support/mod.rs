//! Independent brute-force oracles for small groups. Everything here works
//! on raw image vectors and never touches the library's element tables,
//! lattices or cost tables.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use mudeg_core::{abelian, alternating, cyclic, dihedral, symmetric, PermGroup, Permutation};

pub type Img = Vec<u32>;

pub fn mul(a: &Img, b: &Img) -> Img {
    a.iter().map(|&i| b[i as usize]).collect()
}

pub fn inv(a: &Img) -> Img {
    let mut out = vec![0; a.len()];
    for (i, &j) in a.iter().enumerate() {
        out[j as usize] = i as u32;
    }
    out
}

pub fn closure(degree: usize, gens: &[Img]) -> BTreeSet<Img> {
    let id: Img = (0..degree as u32).collect();
    let mut set: BTreeSet<Img> = BTreeSet::from([id.clone()]);
    let mut frontier = vec![id];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = mul(&x, g);
            if set.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    set
}

pub fn elements(g: &PermGroup) -> Vec<Img> {
    let gens: Vec<Img> = g.generators().iter().map(|p| p.images().to_vec()).collect();
    closure(g.degree(), &gens).into_iter().collect()
}

/// All subgroups, as closures of every subset of size at most
/// `floor(log2 |G|)` (every subgroup of a group of order n has a generating
/// set of that size).
pub fn brute_lattice(elems: &[Img], degree: usize) -> Vec<BTreeSet<Img>> {
    let n = elems.len();
    let k = usize::BITS as usize - 1 - n.leading_zeros() as usize;
    let mut found: HashSet<BTreeSet<Img>> = HashSet::new();
    found.insert(closure(degree, &[]));
    let mut idx = Vec::new();
    fn rec(
        start: usize,
        k: usize,
        idx: &mut Vec<usize>,
        elems: &[Img],
        degree: usize,
        found: &mut HashSet<BTreeSet<Img>>,
    ) {
        if !idx.is_empty() {
            let gens: Vec<Img> = idx.iter().map(|&i| elems[i].clone()).collect();
            found.insert(closure(degree, &gens));
        }
        if idx.len() == k {
            return;
        }
        for i in start..elems.len() {
            idx.push(i);
            rec(i + 1, k, idx, elems, degree, found);
            idx.pop();
        }
    }
    rec(1, k, &mut idx, elems, degree, &mut found);
    found.into_iter().collect()
}

pub fn core(h: &BTreeSet<Img>, elems: &[Img]) -> BTreeSet<Img> {
    h.iter()
        .filter(|x| elems.iter().all(|g| h.contains(&mul(&mul(&inv(g), x), g))))
        .cloned()
        .collect()
}

/// Exhaustive search over collections of subgroups with distinct cores.
/// Keeping only the cheapest subgroup per core loses nothing, since the
/// cost depends on the index and the constraint only on the cores.
pub fn brute_mu(g: &PermGroup) -> usize {
    let elems = elements(g);
    let n = elems.len();
    let lattice = brute_lattice(&elems, g.degree());
    let mut best_by_core: Vec<(BTreeSet<Img>, usize)> = Vec::new();
    for h in &lattice {
        let c = core(h, &elems);
        let cost = n / h.len();
        match best_by_core.iter_mut().find(|(k, _)| *k == c) {
            Some(e) => e.1 = e.1.min(cost),
            None => best_by_core.push((c, cost)),
        }
    }
    let full: BTreeSet<Img> = elems.iter().cloned().collect();
    let mut best = usize::MAX;
    fn rec(
        i: usize,
        meet: &BTreeSet<Img>,
        cost: usize,
        cores: &[(BTreeSet<Img>, usize)],
        best: &mut usize,
    ) {
        if cost >= *best {
            return;
        }
        if meet.len() == 1 {
            *best = cost;
            return;
        }
        if i == cores.len() {
            return;
        }
        let (c, w) = &cores[i];
        let next: BTreeSet<Img> = meet.intersection(c).cloned().collect();
        if next.len() < meet.len() {
            rec(i + 1, &next, cost + w, cores, best);
        }
        rec(i + 1, meet, cost, cores, best);
    }
    rec(0, &full, 0, &best_by_core, &mut best);
    if n == 1 {
        0
    } else {
        best
    }
}

pub fn perm(degree: usize, cycles: &str) -> Permutation {
    Permutation::parse_cycles(degree, cycles).unwrap()
}

/// Quaternion group acting on itself by right multiplication. Elements are
/// `±1, ±i, ±j, ±k` numbered `sign * 4 + unit`.
pub fn quaternion() -> PermGroup {
    // unit products: table[a][b] = (sign, unit) of e_a * e_b, 0=1,1=i,2=j,3=k
    let table = [
        [(0, 0), (0, 1), (0, 2), (0, 3)],
        [(0, 1), (1, 0), (0, 3), (1, 2)],
        [(0, 2), (1, 3), (1, 0), (0, 1)],
        [(0, 3), (0, 2), (1, 1), (1, 0)],
    ];
    let right = |u: usize| {
        let images: Vec<u32> = (0..8)
            .map(|x| {
                let (s, a) = (x / 4, x % 4);
                let (t, c) = table[a][u];
                (((s + t) % 2) * 4 + c) as u32
            })
            .collect();
        Permutation::from_images(images).unwrap()
    };
    PermGroup::new(vec![right(1), right(2)]).unwrap()
}

/// `C3 ⋊ C4` with the generator of order 4 inverting the 3-cycle.
pub fn dicyclic12() -> PermGroup {
    PermGroup::new(vec![perm(7, "(0 1 2)"), perm(7, "(1 2)(3 4 5 6)")]).unwrap()
}

pub fn corpus() -> Vec<(&'static str, PermGroup)> {
    let mut out: Vec<(&'static str, PermGroup)> = vec![
        ("C1", cyclic(1).unwrap()),
        ("C2", cyclic(2).unwrap()),
        ("C4", cyclic(4).unwrap()),
        ("C6", cyclic(6).unwrap()),
        ("C8", cyclic(8).unwrap()),
        ("C12", cyclic(12).unwrap()),
        ("C2 x C2", abelian(&[2, 2]).unwrap()),
        ("C2 x C4", abelian(&[2, 4]).unwrap()),
        ("C2 x C2 x C2", abelian(&[2, 2, 2]).unwrap()),
        ("C3 x C3", abelian(&[3, 3]).unwrap()),
        ("C2 x C6", abelian(&[2, 6]).unwrap()),
        ("C4 x C4", abelian(&[4, 4]).unwrap()),
        ("S3", symmetric(3).unwrap()),
        ("S4", symmetric(4).unwrap()),
        ("A4", alternating(4).unwrap()),
        ("D4", dihedral(4).unwrap()),
        ("D6", dihedral(6).unwrap()),
    ];
    out.push(("Q8", quaternion()));
    out.push(("C3 : C4", dicyclic12()));
    out
}

/// Sum of the prime-power parts of the given cyclic factors.
pub fn abelian_formula(orders: &[u64]) -> u64 {
    let mut total = 0;
    for &m in orders {
        let mut m = m;
        let mut p = 2;
        while m > 1 {
            let mut q = 1;
            while m % p == 0 {
                m /= p;
                q *= p;
            }
            if q > 1 {
                total += q;
            }
            p += 1;
        }
    }
    total
}

/// Cyclic factor orders of the abelian members checked against the formula.
pub fn abelian_corpus() -> Vec<Vec<usize>> {
    vec![
        vec![1],
        vec![2],
        vec![6],
        vec![12],
        vec![2, 2],
        vec![2, 4],
        vec![2, 6],
        vec![4, 4],
        vec![3, 3],
        vec![2, 2, 2],
    ]
}
