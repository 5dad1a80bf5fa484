//! Buchberger's algorithm over a field in degree-reverse-lexicographic
//! order, with the sugar selection strategy and the product and chain
//! criteria.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::ring::Field;

/// Exponent vector ordered by degrevlex (`x_1 > x_2 > …`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mono(pub Vec<u32>);

impl Mono {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn divides(&self, other: &Mono) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Mono) -> Mono {
        Mono(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn div(&self, other: &Mono) -> Mono {
        Mono(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        Mono(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn coprime(&self, other: &Mono) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            for (x, y) in self.0.iter().zip(&other.0).rev() {
                if x != y {
                    return y.cmp(x);
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial; the largest monomial is the last key.
#[derive(Debug)]
pub struct Poly<F: Field> {
    pub terms: BTreeMap<Mono, F::Elem>,
}

impl<F: Field> Clone for Poly<F> {
    fn clone(&self) -> Self {
        Poly { terms: self.terms.clone() }
    }
}

impl<F: Field> PartialEq for Poly<F> {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl<F: Field> Poly<F> {
    pub fn zero() -> Self {
        Poly { terms: BTreeMap::new() }
    }

    pub fn from_terms(f: &F, terms: impl IntoIterator<Item = (Vec<u32>, F::Elem)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(f, Mono(m), c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<(&Mono, &F::Elem)> {
        self.terms.iter().next_back()
    }

    pub fn lm(&self) -> &Mono {
        self.lead().expect("nonzero polynomial").0
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    fn add_term(&mut self, f: &F, m: Mono, c: F::Elem) {
        if f.is_zero(&c) {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(x) => {
                let s = f.add(x, &c);
                if f.is_zero(&s) {
                    self.terms.remove(&m);
                } else {
                    *x = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    /// `self - c · x^shift · other`
    fn sub_scaled(&mut self, f: &F, other: &Poly<F>, c: &F::Elem, shift: &Mono) {
        for (m, x) in &other.terms {
            self.add_term(f, m.mul(shift), f.neg(&f.mul(c, x)));
        }
    }

    pub fn monic(&self, f: &F) -> Self {
        let Some((_, lc)) = self.lead() else { return Self::zero() };
        let inv = f.inv(lc);
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), f.mul(c, &inv))).collect() }
    }
}

/// Full reduction of `p` modulo `basis` (assumed monic).
pub fn reduce<F: Field>(f: &F, p: &Poly<F>, basis: &[Poly<F>]) -> Poly<F> {
    let mut p = p.clone();
    let mut rem = Poly::zero();
    while let Some((m, c)) = p.terms.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) {
        match basis.iter().find(|g| g.lm().divides(&m)) {
            Some(g) => {
                let shift = m.div(g.lm());
                p.sub_scaled(f, g, &c, &shift);
            }
            None => {
                p.terms.remove(&m);
                rem.terms.insert(m, c);
            }
        }
    }
    rem
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Mono,
    sugar: u32,
}

/// Limits on the work done by [`groebner_basis`].
#[derive(Clone, Copy, Debug)]
pub struct GroebnerLimits {
    pub max_basis: usize,
    pub max_pairs: usize,
}

impl Default for GroebnerLimits {
    fn default() -> Self {
        GroebnerLimits { max_basis: 5000, max_pairs: 200_000 }
    }
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
pub fn groebner_basis<F: Field>(f: &F, gens: &[Poly<F>], limits: GroebnerLimits) -> Result<Vec<Poly<F>>> {
    let mut basis: Vec<Poly<F>> = Vec::new();
    let mut sugar: Vec<u32> = Vec::new();
    let mut active: Vec<bool> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut done: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut processed = 0usize;

    let add = |p: Poly<F>,
               s: u32,
               basis: &mut Vec<Poly<F>>,
               sugar: &mut Vec<u32>,
               active: &mut Vec<bool>,
               pairs: &mut Vec<Pair>| {
        let p = p.monic(f);
        let k = basis.len();
        for i in 0..k {
            if !active[i] {
                continue;
            }
            let lcm = basis[i].lm().lcm(p.lm());
            let si = sugar[i] + lcm.degree() - basis[i].lm().degree();
            let sk = s + lcm.degree() - p.lm().degree();
            pairs.push(Pair { i, j: k, lcm, sugar: si.max(sk) });
        }
        // older elements whose leading monomial is a multiple become redundant
        for i in 0..k {
            if active[i] && p.lm().divides(basis[i].lm()) {
                active[i] = false;
            }
        }
        basis.push(p);
        sugar.push(s);
        active.push(true);
    };

    for g in gens {
        let r = reduce(f, g, &active_polys(&basis, &active));
        if !r.is_zero() {
            let s = g.degree();
            add(r, s, &mut basis, &mut sugar, &mut active, &mut pairs);
        }
    }

    while !pairs.is_empty() {
        processed += 1;
        if processed > limits.max_pairs || basis.len() > limits.max_basis {
            return Err(Error::SizeGuard(format!(
                "Gröbner basis computation exceeded {} pairs or {} basis elements",
                limits.max_pairs, limits.max_basis
            )));
        }
        // lowest sugar, then smallest lcm
        let pos = (0..pairs.len())
            .min_by(|&a, &b| pairs[a].sugar.cmp(&pairs[b].sugar).then_with(|| pairs[a].lcm.cmp(&pairs[b].lcm)))
            .unwrap();
        let Pair { i, j, lcm, sugar: s } = pairs.swap_remove(pos);
        done.insert((i, j));
        if basis[i].lm().coprime(basis[j].lm()) {
            continue;
        }
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].lm().divides(&lcm)
                && done.contains(&(i.min(k), i.max(k)))
                && done.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        let mut sp = Poly::zero();
        sp.sub_scaled(f, &basis[i], &f.neg(&f.one()), &lcm.div(basis[i].lm()));
        sp.sub_scaled(f, &basis[j], &f.one(), &lcm.div(basis[j].lm()));
        let r = reduce(f, &sp, &active_polys(&basis, &active));
        if !r.is_zero() {
            add(r, s, &mut basis, &mut sugar, &mut active, &mut pairs);
        }
    }

    // interreduce
    let mut min: Vec<Poly<F>> = active_polys(&basis, &active);
    min.sort_by(|a, b| a.lm().cmp(b.lm()));
    let mut minimal: Vec<Poly<F>> = Vec::new();
    for p in min {
        if !minimal.iter().any(|q| q.lm().divides(p.lm())) {
            minimal.push(p);
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<Poly<F>> = minimal.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, p)| p.clone()).collect();
        let lead = minimal[k].lead().map(|(m, c)| (m.clone(), c.clone())).unwrap();
        let mut tail = minimal[k].clone();
        tail.terms.remove(&lead.0);
        let mut r = reduce(f, &tail, &others);
        r.terms.insert(lead.0, lead.1);
        reduced.push(r.monic(f));
    }
    reduced.sort_by(|a, b| a.lm().cmp(b.lm()));
    Ok(reduced)
}

fn active_polys<F: Field>(basis: &[Poly<F>], active: &[bool]) -> Vec<Poly<F>> {
    basis.iter().zip(active).filter(|(_, a)| **a).map(|(p, _)| p.clone()).collect()
}

/// True if the quotient by an ideal with this Gröbner basis is
/// finite-dimensional: every variable has a pure power among the leading
/// monomials.
pub fn is_zero_dimensional<F: Field>(basis: &[Poly<F>], nvars: usize) -> bool {
    // a constant means the unit ideal, whose quotient is zero
    if basis.iter().any(|g| g.lm().degree() == 0) {
        return true;
    }
    (0..nvars).all(|v| {
        basis.iter().any(|g| {
            let m = &g.lm().0;
            m[v] > 0 && m.iter().enumerate().all(|(i, &e)| i == v || e == 0)
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{PrimeField, Rationals};
    use num_rational::BigRational;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn poly(terms: &[(&[u32], i64)]) -> Poly<Rationals> {
        Poly::from_terms(&Rationals, terms.iter().map(|(m, c)| (m.to_vec(), q(*c))))
    }

    #[test]
    fn degrevlex_ordering() {
        assert!(Mono(vec![1, 0, 1]) < Mono(vec![0, 2, 0]));
        assert!(Mono(vec![2, 0]) > Mono(vec![1, 1]));
    }

    #[test]
    fn membership_example() {
        // I = (x^2 + y^2, xy), x^3 ∈ I
        let gens = vec![poly(&[(&[2, 0], 1), (&[0, 2], 1)]), poly(&[(&[1, 1], 1)])];
        let gb = groebner_basis(&Rationals, &gens, GroebnerLimits::default()).unwrap();
        assert!(reduce(&Rationals, &poly(&[(&[3, 0], 1)]), &gb).is_zero());
        assert!(!reduce(&Rationals, &poly(&[(&[1, 0], 1)]), &gb).is_zero());
        assert!(is_zero_dimensional(&gb, 2));
    }

    #[test]
    fn unit_ideal() {
        let gens = vec![poly(&[(&[1, 0], 1), (&[0, 0], -1)]), poly(&[(&[1, 0], 1)])];
        let gb = groebner_basis(&Rationals, &gens, GroebnerLimits::default()).unwrap();
        assert_eq!(gb.len(), 1);
        assert_eq!(gb[0].lm(), &Mono(vec![0, 0]));
    }

    #[test]
    fn reduced_basis_is_canonical() {
        // twisted cubic
        let gens = vec![
            poly(&[(&[0, 2, 0, 0], 1), (&[1, 0, 1, 0], -1)]),
            poly(&[(&[0, 1, 1, 0], 1), (&[1, 0, 0, 1], -1)]),
            poly(&[(&[0, 0, 2, 0], 1), (&[0, 1, 0, 1], -1)]),
        ];
        let a = groebner_basis(&Rationals, &gens, GroebnerLimits::default()).unwrap();
        let mut rev = gens.clone();
        rev.reverse();
        let b = groebner_basis(&Rationals, &rev, GroebnerLimits::default()).unwrap();
        assert_eq!(a, b);
        assert!(!is_zero_dimensional(&a, 4));
    }

    #[test]
    fn prime_field_basis() {
        let f = PrimeField::new(2);
        // x^2 + 1 = (x + 1)^2 over F_2
        let g = Poly::from_terms(&f, vec![(vec![2], 1), (vec![0], 1)]);
        let h = Poly::from_terms(&f, vec![(vec![1], 1), (vec![0], 1)]);
        let gb = groebner_basis(&f, &[g], GroebnerLimits::default()).unwrap();
        assert!(!reduce(&f, &h, &gb).is_zero());
        let gb = groebner_basis(&f, &[h.clone()], GroebnerLimits::default()).unwrap();
        let sq = Poly::from_terms(&f, vec![(vec![2], 1), (vec![0], 1)]);
        assert!(reduce(&f, &sq, &gb).is_zero());
    }
}
