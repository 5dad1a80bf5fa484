//! Free-group words, finite presentations and split extensions.

mod builtin;
mod parse;

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use builtin::{builtin_group, Builtin, Graph};
pub use parse::{parse_presentation, parse_word};

/// An element of a free group, stored freely reduced as runs of
/// `(generator, exponent)` with 1-based generator indices.
///
/// Adjacent runs never share a generator and no exponent is zero, so two
/// words are equal as group elements iff they are equal as values.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FreeWord {
    letters: Vec<(usize, i64)>,
}

impl FreeWord {
    pub fn identity() -> Self {
        FreeWord::default()
    }

    pub fn generator(index: usize) -> Self {
        FreeWord::new([(index, 1)])
    }

    /// Builds a word from arbitrary runs, reducing as it goes.
    pub fn new(letters: impl IntoIterator<Item = (usize, i64)>) -> Self {
        let mut w = FreeWord::identity();
        for (g, e) in letters {
            w.push(g, e);
        }
        w
    }

    fn push(&mut self, gen: usize, exp: i64) {
        if exp == 0 {
            return;
        }
        match self.letters.last_mut() {
            Some((g, e)) if *g == gen => {
                *e += exp;
                if *e == 0 {
                    self.letters.pop();
                }
            }
            _ => self.letters.push((gen, exp)),
        }
    }

    pub fn letters(&self) -> &[(usize, i64)] {
        &self.letters
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    /// Number of letters counted with multiplicity.
    pub fn length(&self) -> usize {
        self.letters.iter().map(|(_, e)| e.unsigned_abs() as usize).sum()
    }

    /// Iterates over single letters `(generator, ±1)`.
    pub fn unit_letters(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.letters
            .iter()
            .flat_map(|&(g, e)| std::iter::repeat((g, e.signum())).take(e.unsigned_abs() as usize))
    }

    pub fn max_generator(&self) -> usize {
        self.letters.iter().map(|(g, _)| *g).max().unwrap_or(0)
    }

    pub fn exponent_sum(&self, gen: usize) -> i64 {
        self.letters.iter().filter(|(g, _)| *g == gen).map(|(_, e)| e).sum()
    }

    pub fn inverse(&self) -> Self {
        FreeWord {
            letters: self.letters.iter().rev().map(|&(g, e)| (g, -e)).collect(),
        }
    }

    pub fn mul(&self, other: &FreeWord) -> Self {
        let mut w = self.clone();
        for &(g, e) in &other.letters {
            w.push(g, e);
        }
        w
    }

    pub fn pow(&self, n: i64) -> Self {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut w = FreeWord::identity();
        for _ in 0..n.unsigned_abs() {
            w = w.mul(&base);
        }
        w
    }

    /// `u v u⁻¹ v⁻¹`.
    pub fn commutator(u: &FreeWord, v: &FreeWord) -> Self {
        u.mul(v).mul(&u.inverse()).mul(&v.inverse())
    }

    /// `u v u⁻¹`.
    pub fn conjugate(&self, by: &FreeWord) -> Self {
        by.mul(self).mul(&by.inverse())
    }

    /// Adds `offset` to every generator index.
    pub fn shifted(&self, offset: usize) -> Self {
        FreeWord {
            letters: self.letters.iter().map(|&(g, e)| (g + offset, e)).collect(),
        }
    }

    /// Replaces each generator `i` by `images[i - 1]`.
    pub fn substitute(&self, images: &[FreeWord]) -> Self {
        let mut w = FreeWord::identity();
        for &(g, e) in &self.letters {
            w = w.mul(&images[g - 1].pow(e));
        }
        w
    }

    pub fn display_with<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        WordDisplay { word: self, names }
    }
}

struct WordDisplay<'a> {
    word: &'a FreeWord,
    names: &'a [String],
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_identity() {
            return write!(f, "1");
        }
        for (k, &(g, e)) in self.word.letters.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            match self.names.get(g - 1) {
                Some(name) => write!(f, "{name}")?,
                None => write!(f, "x{g}")?,
            }
            if e != 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// A finite presentation `⟨x_1,…,x_m | r_1,…,r_ℓ⟩`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupPresentation {
    names: Vec<String>,
    relators: Vec<FreeWord>,
    pub label: String,
}

impl GroupPresentation {
    /// Validates generator indices; trivial relators are dropped.
    pub fn new(names: Vec<String>, relators: Vec<FreeWord>, label: impl Into<String>) -> Result<Self> {
        if names.is_empty() {
            return Err(Error::Invalid("empty generator set".into()));
        }
        let mut seen = HashSet::new();
        for n in &names {
            if !seen.insert(n.as_str()) {
                return Err(Error::Invalid(format!("duplicate generator name `{n}`")));
            }
        }
        for r in &relators {
            if r.max_generator() > names.len() {
                return Err(Error::Invalid(format!(
                    "generator index {} out of range (presentation has {} generators)",
                    r.max_generator(),
                    names.len()
                )));
            }
        }
        let relators = relators.into_iter().filter(|r| !r.is_identity()).collect();
        Ok(GroupPresentation { names, relators, label: label.into() })
    }

    /// Presentation on generators named `x1..xm`.
    pub fn with_generators(m: usize, relators: Vec<FreeWord>, label: impl Into<String>) -> Result<Self> {
        Self::new(default_names("x", m), relators, label)
    }

    pub fn num_generators(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn relators(&self) -> &[FreeWord] {
        &self.relators
    }

    /// Relator exponent matrix, one row per relator.
    pub fn exponent_matrix(&self) -> Vec<Vec<i64>> {
        let m = self.num_generators();
        self.relators
            .iter()
            .map(|r| (1..=m).map(|j| r.exponent_sum(j)).collect())
            .collect()
    }

    /// True when every relator has zero exponent sum in every generator, so
    /// the abelianization is free abelian on the generators.
    pub fn is_commutator_relators(&self) -> bool {
        self.exponent_matrix().iter().all(|row| row.iter().all(|&e| e == 0))
    }

    /// Canonical one-line form, re-parseable by [`parse_presentation`].
    pub fn canonical(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{} |", self.names.join(","))?;
        for (k, r) in self.relators.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, " {}", r.display_with(&self.names))?;
        }
        write!(f, ">")
    }
}

pub(crate) fn default_names(prefix: &str, m: usize) -> Vec<String> {
    (1..=m).map(|i| format!("{prefix}{i}")).collect()
}

/// A split extension `K ⋊_φ Q`: for each generator `q_j` of `Q`,
/// `action[j][i]` is the word `φ(q_j)(a_i)` in the generators of `K`.
///
/// Only the abelianized action is ever checked; whether `φ` really is an
/// automorphism respecting the relators of `K` and `Q` is the caller's
/// responsibility and is not (and in general cannot be) verified.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitExtensionData {
    pub kernel: GroupPresentation,
    pub quotient: GroupPresentation,
    pub action: Vec<Vec<FreeWord>>,
}

impl SplitExtensionData {
    pub fn new(kernel: GroupPresentation, quotient: GroupPresentation, action: Vec<Vec<FreeWord>>) -> Result<Self> {
        let ext = SplitExtensionData { kernel, quotient, action };
        ext.validate_shape()?;
        Ok(ext)
    }

    pub(crate) fn validate_shape(&self) -> Result<()> {
        let k = self.kernel.num_generators();
        if self.action.len() != self.quotient.num_generators() {
            return Err(Error::Invalid(format!(
                "action has {} entries but the quotient has {} generators",
                self.action.len(),
                self.quotient.num_generators()
            )));
        }
        for (j, images) in self.action.iter().enumerate() {
            if images.len() != k {
                return Err(Error::Invalid(format!(
                    "action of quotient generator {} lists {} images, kernel has {} generators",
                    j + 1,
                    images.len(),
                    k
                )));
            }
            if let Some(w) = images.iter().find(|w| w.max_generator() > k) {
                return Err(Error::Invalid(format!(
                    "action word uses generator {} outside the kernel",
                    w.max_generator()
                )));
            }
        }
        Ok(())
    }

    /// True if the quotient presentation visibly defines an abelian group:
    /// one generator, or a commutator relator for every pair of generators.
    pub fn quotient_is_abelian(&self) -> bool {
        let q = self.quotient.num_generators();
        if q <= 1 {
            return true;
        }
        let rels: HashSet<&FreeWord> = self.quotient.relators().iter().collect();
        for i in 1..=q {
            for j in i + 1..=q {
                let (a, b) = (FreeWord::generator(i), FreeWord::generator(j));
                let c1 = FreeWord::commutator(&a, &b);
                let c2 = FreeWord::commutator(&b, &a);
                if !rels.contains(&c1) && !rels.contains(&c2) {
                    return false;
                }
            }
        }
        true
    }
}

/// Presentation of `K ⋊_φ Q`: generators of `K` then `Q`; relators of `K`,
/// relators of `Q`, and `q_j a_i q_j⁻¹ φ_j(a_i)⁻¹`.
pub fn semidirect_presentation(ext: &SplitExtensionData) -> Result<GroupPresentation> {
    ext.validate_shape()?;
    let k = ext.kernel.num_generators();
    let mut names: Vec<String> = ext.kernel.names().to_vec();
    let taken: HashSet<&String> = ext.kernel.names().iter().collect();
    let clash = ext.quotient.names().iter().any(|n| taken.contains(n));
    if clash {
        let mut idx = 1;
        for _ in 0..ext.quotient.num_generators() {
            let mut name = format!("y{idx}");
            while taken.contains(&name) {
                idx += 1;
                name = format!("y{idx}");
            }
            names.push(name);
            idx += 1;
        }
    } else {
        names.extend(ext.quotient.names().iter().cloned());
    }

    let mut relators: Vec<FreeWord> = ext.kernel.relators().to_vec();
    relators.extend(ext.quotient.relators().iter().map(|r| r.shifted(k)));
    for (j, images) in ext.action.iter().enumerate() {
        let q = FreeWord::generator(k + j + 1);
        for (i, image) in images.iter().enumerate() {
            let a = FreeWord::generator(i + 1);
            relators.push(a.conjugate(&q).mul(&image.inverse()));
        }
    }
    let label = format!("({}) x| ({})", ext.kernel.label, ext.quotient.label);
    GroupPresentation::new(names, relators, label)
}

/// A group from either `builtin:NAME(..)` or the presentation language.
pub fn resolve_group(input: &str) -> Result<GroupPresentation> {
    match input.trim().strip_prefix("builtin:") {
        Some(name) => name.parse::<Builtin>()?.presentation(),
        None => parse_presentation(input),
    }
}

/// `⟨q_1..q_s | [q_i,q_j]⟩`.
pub fn free_abelian(s: usize) -> GroupPresentation {
    let mut rels = Vec::new();
    for i in 1..=s {
        for j in i + 1..=s {
            rels.push(FreeWord::commutator(&FreeWord::generator(i), &FreeWord::generator(j)));
        }
    }
    GroupPresentation::new(default_names("q", s.max(1)), rels, format!("Z^{s}"))
        .expect("free abelian presentation is well formed")
}
