//! Deterministic Schreier–Sims.

use crate::perm::Permutation;

/// One level of a stabilizer chain: the orbit of the base point under the
/// level's strong generators, with a coset representative for every orbit
/// point.
#[derive(Debug, Clone)]
pub struct Level {
    pub base_point: u32,
    pub generators: Vec<Permutation>,
    /// `transversal[p]` maps the base point to `p`, when `p` is in the orbit.
    transversal: Vec<Option<Permutation>>,
    inverses: Vec<Option<Permutation>>,
    orbit: Vec<u32>,
}

impl Level {
    fn new(base_point: u32, degree: usize) -> Self {
        let mut level = Self {
            base_point,
            generators: Vec::new(),
            transversal: vec![None; degree],
            inverses: vec![None; degree],
            orbit: Vec::new(),
        };
        level.recompute_orbit(degree);
        level
    }

    fn recompute_orbit(&mut self, degree: usize) {
        self.transversal = vec![None; degree];
        self.inverses = vec![None; degree];
        let id = Permutation::identity(degree);
        self.transversal[self.base_point as usize] = Some(id.clone());
        self.inverses[self.base_point as usize] = Some(id);
        self.orbit = vec![self.base_point];
        let mut k = 0;
        while k < self.orbit.len() {
            let p = self.orbit[k];
            for s in &self.generators {
                let q = s.apply(p);
                if self.transversal[q as usize].is_none() {
                    let u = self.transversal[p as usize].as_ref().unwrap().then(s);
                    self.inverses[q as usize] = Some(u.inverse());
                    self.transversal[q as usize] = Some(u);
                    self.orbit.push(q);
                }
            }
            k += 1;
        }
    }

    pub fn orbit(&self) -> &[u32] {
        &self.orbit
    }

    pub fn representative(&self, point: u32) -> Option<&Permutation> {
        self.transversal[point as usize].as_ref()
    }
}

/// Base and strong generating set for a permutation group.
#[derive(Debug, Clone)]
pub struct StabilizerChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabilizerChain {
    /// Runs Schreier–Sims over the generators in the given order.
    pub fn new(degree: usize, generators: &[Permutation]) -> Self {
        let mut chain = StabilizerChain {
            degree,
            levels: Vec::new(),
        };
        let gens: Vec<Permutation> = generators
            .iter()
            .filter(|g| !g.is_identity())
            .cloned()
            .collect();
        if gens.is_empty() {
            return chain;
        }
        // Ensure every generator moves some base point.
        for g in &gens {
            if chain.levels.iter().all(|l| !g.moves(l.base_point)) {
                let b = g.first_moved().unwrap();
                chain.levels.push(Level::new(b, degree));
            }
        }
        for g in &gens {
            // A generator belongs to level i when it fixes base points 0..i.
            for level in chain.levels.iter_mut() {
                level.generators.push(g.clone());
                if g.moves(level.base_point) {
                    break;
                }
            }
        }
        for level in chain.levels.iter_mut() {
            level.recompute_orbit(degree);
        }

        let mut i = chain.levels.len() as isize - 1;
        'outer: while i >= 0 {
            let iu = i as usize;
            let orbit = chain.levels[iu].orbit.clone();
            let level_gens = chain.levels[iu].generators.clone();
            for &beta in &orbit {
                for s in &level_gens {
                    let gamma = s.apply(beta);
                    let u = chain.levels[iu].transversal[beta as usize]
                        .as_ref()
                        .unwrap();
                    let v_inv = chain.levels[iu].inverses[gamma as usize].as_ref().unwrap();
                    let schreier = u.then(s).then(v_inv);
                    let (residue, j) = chain.strip(schreier, iu + 1);
                    let needs_level = j == chain.levels.len() && !residue.is_identity();
                    if j < chain.levels.len() || needs_level {
                        if needs_level {
                            let b = residue.first_moved().unwrap();
                            chain.levels.push(Level::new(b, degree));
                        }
                        let top = if needs_level {
                            chain.levels.len() - 1
                        } else {
                            j
                        };
                        for l in iu + 1..=top {
                            chain.levels[l].generators.push(residue.clone());
                            chain.levels[l].recompute_orbit(degree);
                        }
                        i = top as isize;
                        continue 'outer;
                    }
                }
            }
            i -= 1;
        }
        chain
    }

    /// Sifts `g` from level `start`; returns the residue and the level where
    /// sifting stopped (`levels.len()` when it passed every level).
    fn strip(&self, mut g: Permutation, start: usize) -> (Permutation, usize) {
        for (l, level) in self.levels.iter().enumerate().skip(start) {
            let beta = g.apply(level.base_point);
            match &level.inverses[beta as usize] {
                Some(inv) => g = g.then(inv),
                None => return (g, l),
            }
        }
        (g, self.levels.len())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.base_point).collect()
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    /// Product of the orbit lengths. Saturates at `u128::MAX`, far beyond
    /// anything enumerable.
    pub fn order(&self) -> u128 {
        self.levels
            .iter()
            .fold(1u128, |acc, l| acc.saturating_mul(l.orbit.len() as u128))
    }

    /// Membership by sifting.
    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (residue, j) = self.strip(g.clone(), 0);
        j == self.levels.len() && residue.is_identity()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(n: usize, s: &str) -> Permutation {
        Permutation::parse_cycles(n, s).unwrap()
    }

    #[test]
    fn symmetric_three() {
        let chain = StabilizerChain::new(3, &[perm(3, "(0 1)"), perm(3, "(0 1 2)")]);
        assert_eq!(chain.order(), 6);
        assert!(chain.contains(&perm(3, "(1 2)")));
    }

    #[test]
    fn trivial_group() {
        let chain = StabilizerChain::new(4, &[Permutation::identity(4)]);
        assert_eq!(chain.order(), 1);
        assert!(chain.contains(&Permutation::identity(4)));
        assert!(!chain.contains(&perm(4, "(0 1)")));
    }

    #[test]
    fn symmetric_and_alternating_orders() {
        let s8 = StabilizerChain::new(8, &[perm(8, "(0 1)"), perm(8, "(0 1 2 3 4 5 6 7)")]);
        assert_eq!(s8.order(), 40320);
        let a7 = StabilizerChain::new(7, &[perm(7, "(0 1 2)"), perm(7, "(2 3 4 5 6)")]);
        assert_eq!(a7.order(), 2520);
        assert!(!a7.contains(&perm(7, "(0 1)")));
        assert!(a7.contains(&perm(7, "(0 1)(2 3)")));
    }

    #[test]
    fn generators_sift_to_identity() {
        let gens = [
            perm(9, "(0 1 2)(3 4 5)"),
            perm(9, "(0 3 6)(1 4 7)(2 5 8)"),
            perm(9, "(1 2)(4 5)(7 8)"),
        ];
        let chain = StabilizerChain::new(9, &gens);
        for g in &gens {
            assert!(chain.contains(g));
        }
    }
}
