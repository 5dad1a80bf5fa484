//! Exact coefficient rings: group algebras of finitely generated abelian
//! groups (Laurent polynomials with torsion), plain polynomial rings,
//! truncated local algebras and cyclotomic fields.
//!
//! Monomials are compared in degree-reverse-lexicographic order with
//! `x_1 > x_2 > …`; canonical text lists terms from largest to smallest.

mod cyclotomic;
mod field;
mod truncated;
mod unipoly;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub use cyclotomic::{CyclotomicElem, CyclotomicField};
pub use field::{kernel, mat_mul, rank, row_reduce, transpose, Echelon, Field, PrimeField, Rationals};
pub use truncated::{laurent_to_truncated, TruncBasis, TruncatedLocalElem};
pub(crate) use truncated::laurent_to_truncated_in;
pub use unipoly::{cyclotomic_polynomial, UniPoly};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Flavor {
    Int,
    Rat,
    ModP(u64),
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Flavor::Int => write!(f, "ZZ"),
            Flavor::Rat => write!(f, "QQ"),
            Flavor::ModP(p) => write!(f, "GF({p})"),
        }
    }
}

/// Ring descriptor. In the Laurent case the variables are `nfree` invertible
/// generators followed by one generator of order `d` per torsion divisor; in
/// the polynomial case there are `nfree` ordinary variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    pub nfree: usize,
    pub torsion: Vec<u64>,
    pub flavor: Flavor,
    pub laurent: bool,
}

pub type Monomial = Vec<i64>;

/// Sparse element: exponent vector to nonzero coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct RingElem {
    terms: BTreeMap<Monomial, BigRational>,
}

impl RingElem {
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &[i64]) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Sum of coefficients (the augmentation).
    pub fn augmentation(&self) -> BigRational {
        self.terms.values().sum()
    }

    /// Terms sorted from largest to smallest monomial.
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &BigRational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| degrevlex(b.0, a.0));
        v
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.keys().max_by(|a, b| degrevlex(a, b))
    }

    /// Componentwise minimum and maximum exponent of variable `i`.
    pub fn exponent_range(&self, i: usize) -> Option<(i64, i64)> {
        let lo = self.terms.keys().map(|m| m[i]).min()?;
        let hi = self.terms.keys().map(|m| m[i]).max()?;
        Some((lo, hi))
    }
}

/// Degree-reverse-lexicographic comparison.
pub fn degrevlex(a: &[i64], b: &[i64]) -> Ordering {
    let da: i64 = a.iter().sum();
    let db: i64 = b.iter().sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

pub(crate) fn format_rational_coeff(c: &BigRational, mono: &str) -> String {
    let cs = format_rational(c);
    if mono.is_empty() {
        cs
    } else if c.is_one() {
        mono.to_string()
    } else {
        format!("{cs}*{mono}")
    }
}

/// `p/q` or `p`.
pub fn format_rational(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl Ring {
    pub fn laurent(nfree: usize, torsion: Vec<u64>, flavor: Flavor) -> Self {
        Ring { nfree, torsion, flavor, laurent: true }
    }

    pub fn polynomial(nvars: usize, flavor: Flavor) -> Self {
        Ring { nfree: nvars, torsion: Vec::new(), flavor, laurent: false }
    }

    pub fn nvars(&self) -> usize {
        self.nfree + self.torsion.len()
    }

    pub fn var_names(&self) -> Vec<String> {
        if !self.laurent {
            return (1..=self.nfree).map(|i| format!("x{i}")).collect();
        }
        let mut v: Vec<String> = if self.nfree == 1 {
            vec!["t".into()]
        } else {
            (1..=self.nfree).map(|i| format!("t{i}")).collect()
        };
        if self.torsion.len() == 1 {
            v.push("s".into());
        } else {
            v.extend((1..=self.torsion.len()).map(|i| format!("s{i}")));
        }
        v
    }

    /// Human-readable description such as `QQ[t1^±1,t2^±1,s]/(s^2-1)`.
    pub fn describe(&self) -> String {
        let names = self.var_names();
        let vars: Vec<String> = names
            .iter()
            .enumerate()
            .map(|(i, n)| if self.laurent && i < self.nfree { format!("{n}^±1") } else { n.clone() })
            .collect();
        let mut s = format!("{}[{}]", self.flavor, vars.join(","));
        if !self.torsion.is_empty() {
            let rels: Vec<String> =
                self.torsion.iter().enumerate().map(|(i, d)| format!("{}^{d}-1", names[self.nfree + i])).collect();
            s.push_str(&format!("/({})", rels.join(",")));
        }
        s
    }

    pub fn normalize_coeff(&self, c: BigRational) -> BigRational {
        match self.flavor {
            Flavor::ModP(p) => {
                let f = PrimeField::new(p);
                int(f.from_rational(&c) as i64)
            }
            _ => c,
        }
    }

    fn normalize_mono(&self, mut m: Monomial) -> Monomial {
        for (i, d) in self.torsion.iter().enumerate() {
            let e = &mut m[self.nfree + i];
            *e = e.mod_floor(&(*d as i64));
        }
        m
    }

    fn add_term(&self, terms: &mut BTreeMap<Monomial, BigRational>, m: Monomial, c: BigRational) {
        let m = self.normalize_mono(m);
        let v = self.normalize_coeff(terms.remove(&m).unwrap_or_else(BigRational::zero) + c);
        if !v.is_zero() {
            terms.insert(m, v);
        }
    }

    pub fn zero(&self) -> RingElem {
        RingElem::default()
    }

    pub fn one(&self) -> RingElem {
        self.constant(BigRational::one())
    }

    pub fn constant(&self, c: BigRational) -> RingElem {
        self.monomial(vec![0; self.nvars()], c)
    }

    pub fn from_i64(&self, n: i64) -> RingElem {
        self.constant(int(n))
    }

    pub fn monomial(&self, m: Monomial, c: BigRational) -> RingElem {
        assert_eq!(m.len(), self.nvars(), "monomial length");
        let mut terms = BTreeMap::new();
        self.add_term(&mut terms, m, c);
        RingElem { terms }
    }

    /// The `i`-th variable to the power `e`.
    pub fn var_pow(&self, i: usize, e: i64) -> RingElem {
        let mut m = vec![0; self.nvars()];
        m[i] = e;
        self.monomial(m, BigRational::one())
    }

    pub fn var(&self, i: usize) -> RingElem {
        self.var_pow(i, 1)
    }

    pub fn from_terms(&self, terms: impl IntoIterator<Item = (Monomial, BigRational)>) -> RingElem {
        let mut t = BTreeMap::new();
        for (m, c) in terms {
            assert_eq!(m.len(), self.nvars(), "monomial length");
            self.add_term(&mut t, m, c);
        }
        RingElem { terms: t }
    }

    pub fn add(&self, a: &RingElem, b: &RingElem) -> RingElem {
        let mut t = a.terms.clone();
        for (m, c) in &b.terms {
            self.add_term(&mut t, m.clone(), c.clone());
        }
        RingElem { terms: t }
    }

    pub fn neg(&self, a: &RingElem) -> RingElem {
        self.from_terms(a.terms.iter().map(|(m, c)| (m.clone(), -c)))
    }

    pub fn sub(&self, a: &RingElem, b: &RingElem) -> RingElem {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, a: &RingElem, c: &BigRational) -> RingElem {
        self.from_terms(a.terms.iter().map(|(m, x)| (m.clone(), x * c)))
    }

    pub fn mul(&self, a: &RingElem, b: &RingElem) -> RingElem {
        let mut t = BTreeMap::new();
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let m: Monomial = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
                let e = t.entry(self.normalize_mono(m)).or_insert_with(BigRational::zero);
                *e += ca * cb;
            }
        }
        self.from_terms(t)
    }

    /// Multiplies by the monomial with exponent vector `m`.
    pub fn shift(&self, a: &RingElem, m: &[i64]) -> RingElem {
        self.from_terms(a.terms.iter().map(|(k, c)| (k.iter().zip(m).map(|(x, y)| x + y).collect(), c.clone())))
    }

    pub fn sum<'a>(&self, it: impl IntoIterator<Item = &'a RingElem>) -> RingElem {
        let mut t = BTreeMap::new();
        for e in it {
            for (m, c) in &e.terms {
                let x = t.entry(m.clone()).or_insert_with(BigRational::zero);
                *x += c;
            }
        }
        self.from_terms(t)
    }

    /// Reinterprets `a` in `target`, which must have the same variables.
    pub fn coerce(&self, a: &RingElem, target: &Ring) -> RingElem {
        target.from_terms(a.terms.iter().map(|(m, c)| (m.clone(), c.clone())))
    }

    /// Substitutes each variable by a monomial exponent vector of `target`
    /// (`images[i]` is the image of variable `i`).
    pub fn map_monomial(&self, a: &RingElem, target: &Ring, images: &[Vec<i64>]) -> RingElem {
        target.from_terms(a.terms.iter().map(|(m, c)| {
            let mut out = vec![0i64; target.nvars()];
            for (e, img) in m.iter().zip(images) {
                for (o, x) in out.iter_mut().zip(img) {
                    *o += e * x;
                }
            }
            (out, c.clone())
        }))
    }

    /// Multiplies by the smallest monomial making every exponent of every
    /// free variable nonnegative with minimum 0; returns the shift used.
    pub fn clear_denominators(&self, a: &RingElem) -> (RingElem, Monomial) {
        let mut shift = vec![0i64; self.nvars()];
        for (i, s) in shift.iter_mut().enumerate().take(self.nfree) {
            if let Some((lo, _)) = a.exponent_range(i) {
                *s = -lo;
            }
        }
        (self.shift(a, &shift), shift)
    }

    /// Evaluates all variables at rationals (torsion values must be
    /// roots of unity in Q, i.e. ±1).
    pub fn eval_rational(&self, a: &RingElem, point: &[BigRational]) -> BigRational {
        a.terms
            .iter()
            .map(|(m, c)| {
                m.iter().zip(point).fold(c.clone(), |acc, (e, x)| {
                    let p = num_traits::pow(x.clone(), e.unsigned_abs() as usize);
                    if *e < 0 {
                        acc / p
                    } else {
                        acc * p
                    }
                })
            })
            .sum()
    }

    /// Canonical text form, largest monomial first.
    pub fn format(&self, a: &RingElem) -> String {
        let names = self.var_names();
        self.format_with(a, &names)
    }

    pub fn format_with(&self, a: &RingElem, names: &[String]) -> String {
        if a.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (m, c) in a.sorted_terms() {
            let mono: Vec<String> = m
                .iter()
                .zip(names)
                .filter(|(e, _)| **e != 0)
                .map(|(e, n)| if *e == 1 { n.clone() } else { format!("{n}^{e}") })
                .collect();
            let mono = mono.join("*");
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
            }
            out.push_str(&format_rational_coeff(&c.abs(), &mono));
        }
        out
    }

    /// Checks that a coefficient is allowed in this flavor.
    pub fn check_coeff(&self, c: &BigRational) -> Result<()> {
        match self.flavor {
            Flavor::Int if !c.is_integer() => Err(Error::Invalid(format!("non-integer coefficient {c} in {}", self.describe()))),
            _ => Ok(()),
        }
    }
}

/// Matrix over a [`Ring`], stored by rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAlgebraMatrix {
    pub ring: Ring,
    pub nrows: usize,
    pub ncols: usize,
    pub entries: Vec<Vec<RingElem>>,
}

impl GroupAlgebraMatrix {
    pub fn zeros(ring: Ring, nrows: usize, ncols: usize) -> Self {
        let entries = vec![vec![RingElem::default(); ncols]; nrows];
        GroupAlgebraMatrix { ring, nrows, ncols, entries }
    }

    pub fn column(&self, j: usize) -> Vec<RingElem> {
        self.entries.iter().map(|r| r[j].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<RingElem>> {
        (0..self.ncols).map(|j| self.column(j)).collect()
    }

    pub fn from_columns(ring: Ring, nrows: usize, cols: &[Vec<RingElem>]) -> Self {
        let mut m = Self::zeros(ring, nrows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), nrows, "column length");
            for (i, x) in c.iter().enumerate() {
                m.entries[i][j] = x.clone();
            }
        }
        m
    }

    pub fn format_entries(&self) -> Vec<Vec<String>> {
        self.entries.iter().map(|r| r.iter().map(|x| self.ring.format(x)).collect()).collect()
    }
}
