//! Finite presentations, word evaluation and Todd–Coxeter coset
//! enumeration.
//!
//! Text format: a `gens:` line naming the generators, then one relator per
//! line. A relator is a `*`-separated product of factors `name` or
//! `name^k` (`k` may be negative); `lhs = rhs` is read as `lhs·rhs⁻¹`.
//! Blank lines and `#` comments are ignored.
//!
//! ```text
//! gens: s t
//! s^3
//! t^2
//! s*t*s*t
//! ```

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Default coset cap for enumeration.
pub const DEFAULT_COSET_CAP: usize = 100_000;

/// A generator or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: usize) -> Self {
        Self {
            generator,
            inverse: false,
        }
    }

    pub fn inv(generator: usize) -> Self {
        Self {
            generator,
            inverse: true,
        }
    }

    pub fn inverted(self) -> Self {
        Self {
            generator: self.generator,
            inverse: !self.inverse,
        }
    }

    /// Coset-table column: `2g` for the generator, `2g + 1` for its inverse.
    fn column(self) -> usize {
        2 * self.generator + self.inverse as usize
    }
}

pub type Word = Vec<Letter>;

/// `generator^k` as a word.
pub fn power(generator: usize, k: i64) -> Word {
    let letter = if k < 0 {
        Letter::inv(generator)
    } else {
        Letter::new(generator)
    };
    vec![letter; k.unsigned_abs() as usize]
}

pub fn invert_word(w: &[Letter]) -> Word {
    w.iter().rev().map(|l| l.inverted()).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    names: Vec<String>,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new(names: Vec<String>, relators: Vec<Word>) -> Result<Self> {
        if names.is_empty() {
            return Err(Error::InvalidParameter(
                "presentation needs at least one generator".into(),
            ));
        }
        for w in &relators {
            if let Some(l) = w.iter().find(|l| l.generator >= names.len()) {
                return Err(Error::LetterOutOfRange {
                    letter: l.generator,
                    count: names.len(),
                });
            }
        }
        Ok(Self { names, relators })
    }

    pub fn generator_count(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn with_relator(mut self, w: Word) -> Result<Self> {
        self.relators.push(w);
        Self::new(self.names, self.relators)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut names: Option<Vec<String>> = None;
        let mut relators = Vec::new();
        for (k, raw) in text.lines().enumerate() {
            let line_no = k + 1;
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("gens:") {
                if names.is_some() {
                    return Err(syntax(line_no, "duplicate gens line"));
                }
                let list: Vec<String> = rest
                    .split(|c: char| c.is_whitespace() || c == ',')
                    .filter(|s| !s.is_empty())
                    .map(str::to_string)
                    .collect();
                if list.is_empty() {
                    return Err(syntax(line_no, "empty generator list"));
                }
                for n in &list {
                    if !n.chars().all(|c| c.is_alphanumeric() || c == '_')
                        || n.chars().next().is_some_and(|c| c.is_ascii_digit())
                    {
                        return Err(syntax(line_no, &format!("bad generator name {n:?}")));
                    }
                }
                names = Some(list);
                continue;
            }
            let Some(gens) = names.as_ref() else {
                return Err(syntax(line_no, "relator before the gens line"));
            };
            relators.push(parse_relator(gens, line).map_err(|m| syntax(line_no, &m))?);
        }
        let names = names.ok_or_else(|| syntax(0, "missing gens line"))?;
        Self::new(names, relators)
    }

    pub fn format_word(&self, w: &[Letter]) -> String {
        if w.is_empty() {
            return "1".into();
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < w.len() {
            let mut j = i;
            while j < w.len() && w[j] == w[i] {
                j += 1;
            }
            let k = (j - i) as i64 * if w[i].inverse { -1 } else { 1 };
            let name = &self.names[w[i].generator];
            parts.push(if k == 1 {
                name.clone()
            } else {
                format!("{name}^{k}")
            });
            i = j;
        }
        parts.join("*")
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "gens: {}", self.names.join(" "))?;
        for r in &self.relators {
            writeln!(f, "{}", self.format_word(r))?;
        }
        Ok(())
    }
}

fn syntax(line: usize, message: &str) -> Error {
    Error::PresentationSyntax {
        line,
        message: message.to_string(),
    }
}

fn parse_relator(names: &[String], text: &str) -> std::result::Result<Word, String> {
    let mut sides = text.split('=');
    let lhs = parse_word(names, sides.next().unwrap())?;
    match (sides.next(), sides.next()) {
        (None, _) => Ok(lhs),
        (Some(rhs), None) => {
            let mut w = lhs;
            w.extend(invert_word(&parse_word(names, rhs)?));
            Ok(w)
        }
        _ => Err("more than one '='".into()),
    }
}

/// Parses `f1*f2*…`, each factor `name` or `name^k`; `1` is the empty word.
pub fn parse_word(names: &[String], text: &str) -> std::result::Result<Word, String> {
    let text: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if text.is_empty() {
        return Err("empty word".into());
    }
    if text == "1" {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for factor in text.split('*') {
        let (name, exp) = match factor.split_once('^') {
            Some((n, e)) => (
                n,
                e.parse::<i64>()
                    .map_err(|_| format!("bad exponent in {factor:?}"))?,
            ),
            None => (factor, 1),
        };
        let g = names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| format!("unknown generator {name:?}"))?;
        out.extend(power(g, exp));
    }
    Ok(out)
}

/// Product of the images (or their inverses) along the word.
pub fn evaluate_word(images: &[Permutation], word: &[Letter]) -> Result<Permutation> {
    let first = images
        .first()
        .ok_or_else(|| Error::InvalidParameter("no generator images".into()))?;
    let mut acc = Permutation::identity(first.degree());
    for l in word {
        let p = images.get(l.generator).ok_or(Error::LetterOutOfRange {
            letter: l.generator,
            count: images.len(),
        })?;
        acc = if l.inverse {
            acc.then(&p.inverse())
        } else {
            acc.then(p)
        };
    }
    Ok(acc)
}

const UNDEF: u32 = u32::MAX;

/// A completed coset table with live cosets renumbered `0..index`.
#[derive(Debug, Clone)]
pub struct CosetTable {
    columns: usize,
    rows: Vec<Vec<u32>>,
    /// Cosets defined during enumeration, including ones later merged away.
    pub total_defined: usize,
}

impl CosetTable {
    pub fn index(&self) -> usize {
        self.rows.len()
    }

    /// Image of coset `c` under a letter.
    pub fn act(&self, c: usize, l: Letter) -> usize {
        self.rows[c][l.column()] as usize
    }

    pub fn columns(&self) -> usize {
        self.columns
    }

    /// Every relator traces a closed loop from every coset.
    pub fn relators_close(&self, relators: &[Word]) -> bool {
        (0..self.index()).all(|c| {
            relators
                .iter()
                .all(|r| r.iter().fold(c, |d, &l| self.act(d, l)) == c)
        })
    }

    /// The permutation action of each generator on the cosets.
    pub fn generator_permutations(&self) -> Vec<Permutation> {
        (0..self.columns / 2)
            .map(|g| {
                Permutation::from_images(self.rows.iter().map(|r| r[2 * g]).collect())
                    .expect("complete coset table columns are bijections")
            })
            .collect()
    }
}

/// Working state of an HLT enumeration.
struct Enumerator<'a> {
    cols: usize,
    table: Vec<u32>,
    parent: Vec<u32>,
    cap: usize,
    relators: &'a [Word],
    queue: VecDeque<u32>,
}

impl<'a> Enumerator<'a> {
    fn new(generators: usize, relators: &'a [Word], cap: usize) -> Self {
        let cols = 2 * generators;
        Self {
            cols,
            table: vec![UNDEF; cols],
            parent: vec![0],
            cap,
            relators,
            queue: VecDeque::new(),
        }
    }

    fn count(&self) -> usize {
        self.parent.len()
    }

    #[inline]
    fn get(&self, c: u32, col: usize) -> u32 {
        self.table[c as usize * self.cols + col]
    }

    #[inline]
    fn set(&mut self, c: u32, col: usize, v: u32) {
        self.table[c as usize * self.cols + col] = v;
    }

    fn is_live(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut r = c;
        while self.parent[r as usize] != r {
            r = self.parent[r as usize];
        }
        let mut x = c;
        while self.parent[x as usize] != r {
            let next = self.parent[x as usize];
            self.parent[x as usize] = r;
            x = next;
        }
        r
    }

    fn define(&mut self, c: u32, col: usize) -> Result<()> {
        if self.count() >= self.cap {
            return Err(Error::CosetCap { cap: self.cap });
        }
        let d = self.count() as u32;
        self.parent.push(d);
        self.table.extend(std::iter::repeat_n(UNDEF, self.cols));
        self.set(c, col, d);
        self.set(d, col ^ 1, c);
        Ok(())
    }

    fn merge(&mut self, a: u32, b: u32) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a == b {
            return;
        }
        let (keep, drop) = if a < b { (a, b) } else { (b, a) };
        self.parent[drop as usize] = keep;
        self.queue.push_back(drop);
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.merge(a, b);
        while let Some(g) = self.queue.pop_front() {
            for col in 0..self.cols {
                let d = self.get(g, col);
                if d == UNDEF {
                    continue;
                }
                if self.get(d, col ^ 1) == g {
                    self.set(d, col ^ 1, UNDEF);
                }
                let mu = self.rep(g);
                let nu = self.rep(d);
                let mu_x = self.get(mu, col);
                if mu_x != UNDEF {
                    self.merge(nu, mu_x);
                } else {
                    let nu_inv = self.get(nu, col ^ 1);
                    if nu_inv != UNDEF {
                        self.merge(mu, nu_inv);
                    } else {
                        self.set(mu, col, nu);
                        self.set(nu, col ^ 1, mu);
                    }
                }
            }
        }
    }

    /// Traces `w` from coset `c` in both directions, defining new cosets
    /// until the word closes.
    fn scan_and_fill(&mut self, c: u32, w: &[Letter]) -> Result<()> {
        if w.is_empty() {
            return Ok(());
        }
        let mut f = c;
        let mut b = c;
        let mut i = 0usize;
        let mut j = w.len() as isize - 1;
        loop {
            while i as isize <= j && self.get(f, w[i].column()) != UNDEF {
                f = self.get(f, w[i].column());
                i += 1;
            }
            if i as isize > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i as isize && self.get(b, w[j as usize].column() ^ 1) != UNDEF {
                b = self.get(b, w[j as usize].column() ^ 1);
                j -= 1;
            }
            if j < i as isize {
                self.coincidence(f, b);
                return Ok(());
            } else if j == i as isize {
                let col = w[i].column();
                self.set(f, col, b);
                self.set(b, col ^ 1, f);
                return Ok(());
            } else {
                self.define(f, w[i].column())?;
            }
        }
    }

    fn run(mut self, subgroup: &[Word]) -> Result<CosetTable> {
        for w in subgroup {
            self.scan_and_fill(0, w)?;
        }
        let mut c = 0u32;
        while (c as usize) < self.count() {
            for r in 0..self.relators.len() {
                if !self.is_live(c) {
                    break;
                }
                let rel = &self.relators[r];
                self.scan_and_fill(c, rel)?;
            }
            if self.is_live(c) {
                for col in 0..self.cols {
                    if self.get(c, col) == UNDEF {
                        self.define(c, col)?;
                    }
                }
            }
            c += 1;
        }
        let total_defined = self.count();
        let live: Vec<u32> = (0..self.count() as u32)
            .filter(|&c| self.is_live(c))
            .collect();
        let mut renumber = vec![UNDEF; self.count()];
        for (k, &c) in live.iter().enumerate() {
            renumber[c as usize] = k as u32;
        }
        let rows = live
            .iter()
            .map(|&c| {
                (0..self.cols)
                    .map(|col| {
                        let d = self.get(c, col);
                        renumber[self.rep(d) as usize]
                    })
                    .collect()
            })
            .collect();
        Ok(CosetTable {
            columns: self.cols,
            rows,
            total_defined,
        })
    }
}

/// HLT coset enumeration of `⟨subgroup⟩` in the presented group; returns the
/// completed table, whose size is the index.
pub fn todd_coxeter(p: &Presentation, subgroup: &[Word], max_cosets: usize) -> Result<CosetTable> {
    if max_cosets == 0 {
        return Err(Error::InvalidParameter(
            "coset cap must be at least 1".into(),
        ));
    }
    for w in subgroup {
        if let Some(l) = w.iter().find(|l| l.generator >= p.generator_count()) {
            return Err(Error::LetterOutOfRange {
                letter: l.generator,
                count: p.generator_count(),
            });
        }
    }
    Enumerator::new(p.generator_count(), &p.relators, max_cosets).run(subgroup)
}

/// Outcome of checking that permutations realize a presentation.
#[derive(Debug, Clone)]
pub struct PresentationCheck {
    /// Relators (by position) that do not evaluate to the identity.
    pub failing_relators: Vec<usize>,
    /// Order of the presented group from coset enumeration.
    pub presented_order: usize,
    /// Order of the group generated by the images.
    pub image_order: u128,
}

impl PresentationCheck {
    /// All relators hold and the orders agree, so the map from generators to
    /// images is an isomorphism.
    pub fn is_isomorphism(&self) -> bool {
        self.failing_relators.is_empty() && self.presented_order as u128 == self.image_order
    }
}

pub fn check_presentation(
    p: &Presentation,
    images: &[Permutation],
    max_cosets: usize,
) -> Result<PresentationCheck> {
    if images.len() != p.generator_count() {
        return Err(Error::InvalidParameter(format!(
            "{} images for {} generators",
            images.len(),
            p.generator_count()
        )));
    }
    let mut failing_relators = Vec::new();
    for (k, r) in p.relators.iter().enumerate() {
        if !evaluate_word(images, r)?.is_identity() {
            failing_relators.push(k);
        }
    }
    let presented_order = todd_coxeter(p, &[], max_cosets)?.index();
    let image_order = crate::group::PermGroup::new(images.to_vec())?.order();
    Ok(PresentationCheck {
        failing_relators,
        presented_order,
        image_order,
    })
}

/// True iff every relator holds on `images` and the presented order equals
/// `|⟨images⟩|`.
pub fn verify_presentation_isomorphism(
    p: &Presentation,
    images: &[Permutation],
    max_cosets: usize,
) -> Result<bool> {
    Ok(check_presentation(p, images, max_cosets)?.is_isomorphism())
}

/// `⟨x, y, a, b | x⁴, y⁴, b³, a², [x, y], xᵃ = y, xᵇ = y, yᵇ = x⁻¹y⁻¹,
/// bᵃ = b⁻¹⟩` with conjugation relations written as relators.
pub fn g443_presentation() -> Presentation {
    Presentation::parse(G443_PRESENTATION).expect("built-in presentation parses")
}

pub const G443_PRESENTATION: &str = "\
gens: x y a b
x^4
y^4
b^3
a^2
x*y*x^-1*y^-1
a^-1*x*a*y^-1
b^-1*x*b*y^-1
b^-1*y*b*y*x
a^-1*b*a*b
";

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_two() {
        let p = Presentation::parse("gens: a\na^2\n").unwrap();
        assert_eq!(todd_coxeter(&p, &[], 100).unwrap().index(), 2);
    }

    #[test]
    fn symmetric_three() {
        let p = Presentation::parse("gens: s t\ns^3\nt^2\ns*t*s*t").unwrap();
        let t = todd_coxeter(&p, &[], 100).unwrap();
        assert_eq!(t.index(), 6);
        assert!(t.relators_close(p.relators()));
        // index of ⟨t⟩ is 3
        assert_eq!(
            todd_coxeter(&p, &[vec![Letter::new(1)]], 100)
                .unwrap()
                .index(),
            3
        );
    }

    #[test]
    fn equation_syntax() {
        let p = Presentation::parse("gens: x a\nx^a = x^-1  # dihedral\nx^4\na^2").unwrap_err();
        // `x^a` is not valid factor syntax: exponents must be integers
        assert!(matches!(p, Error::PresentationSyntax { line: 2, .. }));
        let p = Presentation::parse("gens: x a\na^-1*x*a = x^-1\nx^4\na^2").unwrap();
        assert_eq!(todd_coxeter(&p, &[], 1000).unwrap().index(), 8);
    }

    #[test]
    fn coset_cap_is_reported() {
        // free group on one generator never closes
        let p = Presentation::parse("gens: a b\na*b*a^-1*b^-1").unwrap();
        assert_eq!(
            todd_coxeter(&p, &[], 50).unwrap_err(),
            Error::CosetCap { cap: 50 }
        );
    }

    #[test]
    fn syntax_errors() {
        assert!(Presentation::parse("a^2").is_err());
        assert!(Presentation::parse("gens: a\nb^2").is_err());
        assert!(Presentation::parse("gens: a\na^x").is_err());
        assert!(Presentation::parse("").is_err());
    }

    #[test]
    fn evaluate_words() {
        let t = Permutation::parse_cycles(3, "(0 1)").unwrap();
        assert!(evaluate_word(std::slice::from_ref(&t), &[])
            .unwrap()
            .is_identity());
        assert!(evaluate_word(std::slice::from_ref(&t), &power(0, 2))
            .unwrap()
            .is_identity());
        assert_eq!(
            evaluate_word(&[t], &[Letter::new(1)]).unwrap_err(),
            Error::LetterOutOfRange {
                letter: 1,
                count: 1
            }
        );
    }

    #[test]
    fn transposition_realizes_c2() {
        let p = Presentation::parse("gens: a\na^2").unwrap();
        let t = Permutation::parse_cycles(2, "(0 1)").unwrap();
        assert!(verify_presentation_isomorphism(&p, &[t], 10).unwrap());
    }

    #[test]
    fn display_round_trip() {
        let p = g443_presentation();
        assert_eq!(Presentation::parse(&p.to_string()).unwrap(), p);
    }
}
