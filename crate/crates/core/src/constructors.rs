//! Concrete permutation realizations: cyclic, symmetric, alternating,
//! dihedral and abelian groups, direct products, the wreath products
//! `C_m wr Sym(n)` and the monomial reflection groups `G(m, p, n)`.

use crate::error::{Error, Result};
use crate::group::{ElementTable, PermGroup};
use crate::lattice::Subgroup;
use crate::perm::Permutation;

fn cycle_on(degree: usize, points: impl Iterator<Item = u32>) -> Permutation {
    let pts: Vec<u32> = points.collect();
    Permutation::from_cycles(degree, &[&pts]).expect("points are distinct and in range")
}

/// `C_m` acting on `m` points as an `m`-cycle.
pub fn cyclic(m: usize) -> Result<PermGroup> {
    if m == 0 {
        return Err(Error::InvalidParameter(
            "cyclic group order must be at least 1".into(),
        ));
    }
    PermGroup::new(vec![cycle_on(m, 0..m as u32)])
}

/// `Sym(n)` on `n` points.
pub fn symmetric(n: usize) -> Result<PermGroup> {
    match n {
        0 => Err(Error::InvalidParameter(
            "symmetric group degree must be at least 1".into(),
        )),
        1 => Ok(PermGroup::trivial(1)),
        2 => PermGroup::new(vec![cycle_on(2, 0..2)]),
        _ => PermGroup::new(vec![cycle_on(n, 0..2), cycle_on(n, 0..n as u32)]),
    }
}

/// `Alt(n)` on `n` points, `n ≥ 3`.
pub fn alternating(n: usize) -> Result<PermGroup> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!(
            "alternating group needs n ≥ 3, got {n}"
        )));
    }
    let mut gens = vec![cycle_on(n, 0..3)];
    if n > 3 {
        // An n-cycle is even for odd n; for even n use the (n-1)-cycle fixing 0.
        let start = if n % 2 == 1 { 0 } else { 1 };
        gens.push(cycle_on(n, start..n as u32));
    }
    PermGroup::new(gens)
}

/// The dihedral group of order `2n` on `n` points, `n ≥ 3`.
pub fn dihedral(n: usize) -> Result<PermGroup> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!(
            "dihedral group needs n ≥ 3, got {n}"
        )));
    }
    let rotation = cycle_on(n, 0..n as u32);
    let reflection =
        Permutation::from_images((0..n as u32).map(|i| (n as u32 - i) % n as u32).collect())?;
    PermGroup::new(vec![rotation, reflection])
}

/// Direct product of cycles, one block per order: `C_{a1} × … × C_{ak}` on
/// `a1 + … + ak` points.
pub fn abelian(orders: &[usize]) -> Result<PermGroup> {
    if orders.contains(&0) {
        return Err(Error::InvalidParameter("cyclic factor of order 0".into()));
    }
    let degree: usize = orders.iter().sum();
    let mut gens = Vec::new();
    let mut offset = 0u32;
    for &a in orders {
        if a > 1 {
            gens.push(cycle_on(degree, offset..offset + a as u32));
        }
        offset += a as u32;
    }
    if gens.is_empty() {
        return Ok(PermGroup::trivial(degree));
    }
    PermGroup::new(gens)
}

/// `G × H` on `deg G + deg H` points, `G` on the first block.
pub fn direct_product(g: &PermGroup, h: &PermGroup) -> PermGroup {
    let degree = g.degree() + h.degree();
    let mut gens: Vec<Permutation> = g
        .generators()
        .iter()
        .map(|p| p.shifted(0, degree))
        .collect();
    gens.extend(h.generators().iter().map(|p| p.shifted(g.degree(), degree)));
    PermGroup::new(gens).expect("shifted generators share one degree")
}

/// `C_m wr Sym(n)` in its imprimitive action on `m·n` points, block `i`
/// being points `m·i .. m·i + m`.
#[derive(Debug, Clone)]
pub struct Wreath {
    m: usize,
    n: usize,
    gammas: Vec<Permutation>,
    a: Permutation,
    b: Permutation,
    group: PermGroup,
}

/// Permutation of points induced by permuting blocks of size `m`.
fn block_permutation(m: usize, n: usize, blocks: &Permutation) -> Permutation {
    let images = (0..(m * n) as u32)
        .map(|p| blocks.apply(p / m as u32) * m as u32 + p % m as u32)
        .collect();
    Permutation::from_images(images).expect("block permutation is a bijection")
}

/// Generators `γ_1, …, γ_n, a, b`: `γ_i` rotates block `i`, `a` swaps the
/// last two blocks and `b` cycles block `i` to block `i + 1`. For `n = 3`
/// these are `(2 3)` and `(1 2 3)` on blocks numbered from 1.
pub fn wreath_cyclic(m: usize, n: usize) -> Result<Wreath> {
    if m < 2 || n < 2 {
        return Err(Error::InvalidParameter(format!(
            "wreath product needs m ≥ 2 and n ≥ 2, got m = {m}, n = {n}"
        )));
    }
    let degree = m * n;
    let gammas: Vec<Permutation> = (0..n)
        .map(|i| cycle_on(degree, (m * i) as u32..(m * i + m) as u32))
        .collect();
    let a = block_permutation(m, n, &cycle_on(n, n as u32 - 2..n as u32));
    let b = block_permutation(m, n, &cycle_on(n, 0..n as u32));
    let mut gens = gammas.clone();
    gens.push(a.clone());
    gens.push(b.clone());
    let group = PermGroup::new(gens)?;
    Ok(Wreath {
        m,
        n,
        gammas,
        a,
        b,
        group,
    })
}

impl Wreath {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn into_group(self) -> PermGroup {
        self.group
    }

    /// `γ_i` for `i` in `0..n`.
    pub fn gamma(&self, i: usize) -> &Permutation {
        &self.gammas[i]
    }

    pub fn a(&self) -> &Permutation {
        &self.a
    }

    pub fn b(&self) -> &Permutation {
        &self.b
    }

    /// `γ_1^{e_1} ⋯ γ_n^{e_n}`.
    pub fn base_element(&self, exponents: &[i64]) -> Permutation {
        assert_eq!(exponents.len(), self.n);
        exponents
            .iter()
            .zip(&self.gammas)
            .fold(Permutation::identity(self.m * self.n), |acc, (&e, g)| {
                acc.then(&g.pow(e))
            })
    }

    /// Exponent vector of a base-group element, or `None` if the element
    /// permutes blocks.
    pub fn exponents(&self, p: &Permutation) -> Option<Vec<i64>> {
        let m = self.m as u32;
        (0..self.n as u32)
            .map(|i| {
                let start = i * m;
                let img = p.apply(start);
                if img / m != i {
                    return None;
                }
                let e = (img - start) as i64;
                (0..m)
                    .all(|j| p.apply(start + j) == start + (j + e as u32) % m)
                    .then_some(e)
            })
            .collect()
    }

    /// The diagonal element `γ = γ_1 ⋯ γ_n`.
    pub fn diagonal(&self) -> Permutation {
        self.base_element(&vec![1; self.n])
    }

    /// Generators of `G(m, p, n)` inside this wreath product:
    /// `δ_i = γ_i γ_{i+1}⁻¹`, `γ_1^p` (omitted when trivial), `a` and `b`.
    pub fn reflection_generators(&self, p: usize) -> Vec<Permutation> {
        let mut gens: Vec<Permutation> = (0..self.n - 1)
            .map(|i| self.gammas[i].then(&self.gammas[i + 1].inverse()))
            .collect();
        let power = self.gammas[0].pow(p as i64);
        if !power.is_identity() {
            gens.push(power);
        }
        gens.push(self.a.clone());
        gens.push(self.b.clone());
        gens
    }
}

/// `G(m, p, n)`: the index-`p` subgroup of `C_m wr Sym(n)` whose base
/// exponent vectors sum to `0 mod p`. Its order is checked against
/// `m^n · n! / p`.
pub fn reflection_group(m: usize, p: usize, n: usize) -> Result<PermGroup> {
    if p == 0 || !m.is_multiple_of(p) {
        return Err(Error::InvalidParameter(format!(
            "p = {p} does not divide m = {m}"
        )));
    }
    let w = wreath_cyclic(m, n)?;
    let gens = w.reflection_generators(p);
    for g in &gens {
        if let Some(e) = w.exponents(g) {
            if e.iter().sum::<i64>().rem_euclid(p as i64) != 0 {
                return Err(Error::Verification(format!(
                    "base generator {g} has exponent sum outside A({m},{p},{n})"
                )));
            }
        }
    }
    let group = PermGroup::new(gens)?;
    let expected = reflection_order(m, p, n);
    if group.order() != expected {
        return Err(Error::Verification(format!(
            "G({m},{p},{n}) has order {} but m^n·n!/p = {expected}",
            group.order()
        )));
    }
    Ok(group)
}

/// `m^n · n! / p`.
pub fn reflection_order(m: usize, p: usize, n: usize) -> u128 {
    let mn = (m as u128).pow(n as u32);
    let nf: u128 = (1..=n as u128).product();
    mn * nf / p as u128
}

/// The four named elements of `G(4,4,3)` inside `C4 wr Sym(3)`.
#[derive(Debug, Clone)]
pub struct G443Generators {
    pub x: Permutation,
    pub y: Permutation,
    pub a: Permutation,
    pub b: Permutation,
}

impl G443Generators {
    pub fn as_vec(&self) -> Vec<Permutation> {
        vec![
            self.x.clone(),
            self.y.clone(),
            self.a.clone(),
            self.b.clone(),
        ]
    }
}

/// `x = γ1⁻¹γ2²γ3⁻¹`, `y = γ1⁻¹γ2⁻¹γ3²`, `a = (2 3)`, `b = (1 2 3)`, with
/// `xᵃ = xᵇ = y`, `yᵃ = x`, `yᵇ = x⁻¹y⁻¹` checked.
pub fn paper_generators_443(w: &Wreath) -> Result<G443Generators> {
    if w.m != 4 || w.n != 3 {
        return Err(Error::InvalidParameter(format!(
            "expected C4 wr Sym(3), got C{} wr Sym({})",
            w.m, w.n
        )));
    }
    let gens = G443Generators {
        x: w.base_element(&[-1, 2, -1]),
        y: w.base_element(&[-1, -1, 2]),
        a: w.a.clone(),
        b: w.b.clone(),
    };
    check_g443_relations(&gens)?;
    Ok(gens)
}

/// Conjugation identities tying `x, y` to `a, b`.
pub fn check_g443_relations(g: &G443Generators) -> Result<()> {
    let checks = [
        ("x^a = y", g.x.conjugate_by(&g.a) == g.y),
        ("x^b = y", g.x.conjugate_by(&g.b) == g.y),
        ("y^a = x", g.y.conjugate_by(&g.a) == g.x),
        (
            "y^b = x^-1 y^-1",
            g.y.conjugate_by(&g.b) == g.x.inverse().then(&g.y.inverse()),
        ),
    ];
    match checks.iter().find(|(_, ok)| !ok) {
        Some((name, _)) => Err(Error::Verification(format!("relation {name} fails"))),
        None => Ok(()),
    }
}

/// `H = ⟨γ_1 ⋯ γ_n⟩` as a subgroup of the wreath product's element table.
pub fn diagonal_center(w: &Wreath, table: &ElementTable) -> Result<Subgroup> {
    Subgroup::from_permutations(table, &[w.diagonal()])
}
