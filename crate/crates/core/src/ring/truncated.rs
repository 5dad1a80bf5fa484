//! The truncated local algebra `Q[x_1..x_r]/m^N`, `m = (x_1..x_r)`.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{Flavor, Ring, RingElem};
use crate::error::{Error, Result};

/// Monomials of total degree `< order`, sorted by degree, then
/// lexicographically descending within a degree.
#[derive(Debug, PartialEq, Eq)]
pub struct TruncBasis {
    pub nvars: usize,
    pub order: usize,
    pub monomials: Vec<Vec<u32>>,
    /// `degree_start[d]` is the index of the first monomial of degree `d`;
    /// has `order + 1` entries.
    pub degree_start: Vec<usize>,
    index: HashMap<Vec<u32>, usize>,
}

fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Vec<u32>> {
    if nvars == 0 {
        return if d == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=d).rev() {
        for mut rest in monomials_of_degree(nvars - 1, d - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

impl TruncBasis {
    pub fn new(nvars: usize, order: usize) -> Arc<Self> {
        let mut monomials = Vec::new();
        let mut degree_start = Vec::with_capacity(order + 1);
        for d in 0..order {
            degree_start.push(monomials.len());
            monomials.extend(monomials_of_degree(nvars, d as u32));
        }
        degree_start.push(monomials.len());
        let index = monomials.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        Arc::new(TruncBasis { nvars, order, monomials, degree_start, index })
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn index_of(&self, m: &[u32]) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn degree_of(&self, idx: usize) -> usize {
        self.monomials[idx].iter().sum::<u32>() as usize
    }

    /// Index of the product of two basis monomials, if it survives.
    pub fn product_index(&self, a: usize, b: usize) -> Option<usize> {
        let m: Vec<u32> = self.monomials[a].iter().zip(&self.monomials[b]).map(|(x, y)| x + y).collect();
        self.index_of(&m)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedLocalElem {
    pub basis: Arc<TruncBasis>,
    pub coeffs: Vec<BigRational>,
}

/// Generalized binomial coefficient `C(a, b)` for integer `a`, `b >= 0`.
pub(crate) fn binomial(a: i64, b: u32) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..b as i64 {
        num *= BigInt::from(a - i);
        den *= BigInt::from(i + 1);
    }
    num / den
}

impl TruncatedLocalElem {
    pub fn zero(basis: &Arc<TruncBasis>) -> Self {
        TruncatedLocalElem { basis: basis.clone(), coeffs: vec![BigRational::zero(); basis.len()] }
    }

    pub fn one(basis: &Arc<TruncBasis>) -> Self {
        let mut e = Self::zero(basis);
        if !e.coeffs.is_empty() {
            e.coeffs[0] = BigRational::one();
        }
        e
    }

    /// The variable `x_i`.
    pub fn var(basis: &Arc<TruncBasis>, i: usize) -> Self {
        let mut e = Self::zero(basis);
        let mut m = vec![0; basis.nvars];
        m[i] = 1;
        if let Some(k) = basis.index_of(&m) {
            e.coeffs[k] = BigRational::one();
        }
        e
    }

    /// `∏ (1 + x_i)^{a_i}` truncated.
    pub fn binomial_monomial(basis: &Arc<TruncBasis>, exps: &[i64]) -> Self {
        let mut e = Self::zero(basis);
        for (k, m) in basis.monomials.iter().enumerate() {
            let c: BigInt = m.iter().zip(exps).map(|(&b, &a)| binomial(a, b)).product();
            e.coeffs[k] = BigRational::from_integer(c);
        }
        e
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn constant_term(&self) -> BigRational {
        self.coeffs.first().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        let coeffs = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect();
        TruncatedLocalElem { basis: self.basis.clone(), coeffs }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let coeffs = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect();
        TruncatedLocalElem { basis: self.basis.clone(), coeffs }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        TruncatedLocalElem { basis: self.basis.clone(), coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let b = &self.basis;
        let mut out = Self::zero(b);
        let nz: Vec<usize> = (0..o.coeffs.len()).filter(|&j| !o.coeffs[j].is_zero()).collect();
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let di = b.degree_of(i);
            for &j in &nz {
                if di + b.degree_of(j) >= b.order {
                    continue;
                }
                let k = b.product_index(i, j).expect("degree checked");
                out.coeffs[k] += a * &o.coeffs[j];
            }
        }
        out
    }

    /// Inverse of an element with nonzero constant term.
    pub fn inverse(&self) -> Result<Self> {
        let c = self.constant_term();
        if c.is_zero() {
            return Err(Error::Invalid("element is not a unit in the truncated algebra".into()));
        }
        // self = c (1 - n), n nilpotent of order < N
        let cinv = c.recip();
        let n = Self::one(&self.basis).sub(&self.scale(&cinv));
        let mut acc = Self::one(&self.basis);
        let mut power = Self::one(&self.basis);
        for _ in 1..self.basis.order {
            power = power.mul(&n);
            if power.is_zero() {
                break;
            }
            acc = acc.add(&power);
        }
        Ok(acc.scale(&cinv))
    }
}

/// Substitutes `t_i ↦ 1 + x_i` and every torsion generator by `1`, reducing
/// modulo `m^N`.
pub fn laurent_to_truncated(ring: &Ring, f: &RingElem, order: usize) -> Result<TruncatedLocalElem> {
    let basis = TruncBasis::new(ring.nfree, order);
    laurent_to_truncated_in(ring, f, &basis)
}

pub(crate) fn laurent_to_truncated_in(ring: &Ring, f: &RingElem, basis: &Arc<TruncBasis>) -> Result<TruncatedLocalElem> {
    if basis.order == 0 {
        return Err(Error::Invalid("truncation order must be positive".into()));
    }
    if matches!(ring.flavor, Flavor::ModP(_)) {
        return Err(Error::Invalid("truncation requires rational coefficients".into()));
    }
    let mut out = TruncatedLocalElem::zero(basis);
    for (m, c) in f.terms() {
        let img = TruncatedLocalElem::binomial_monomial(basis, &m[..ring.nfree]);
        for (o, x) in out.coeffs.iter_mut().zip(&img.coeffs) {
            if !x.is_zero() {
                *o += c * x;
            }
        }
    }
    Ok(out)
}
