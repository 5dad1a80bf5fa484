//! The cyclotomic field `Q(ζ_m) = Q[z]/Φ_m(z)`.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::field::Field;
use super::unipoly::{cyclotomic_polynomial, UniPoly};
use super::{format_rational, Ring, RingElem};
use crate::error::{Error, Result};

/// Element of `Q(ζ_m)` in the power basis `1, z, …, z^{φ(m)-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclotomicElem {
    pub conductor: u64,
    pub coeffs: Vec<BigRational>,
}

impl CyclotomicElem {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// `Some(q)` if the element is rational.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coeffs.iter().skip(1).all(|c| c.is_zero()) {
            Some(self.coeffs.first().cloned().unwrap_or_else(BigRational::zero))
        } else {
            None
        }
    }
}

impl fmt::Display for CyclotomicElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&UniPoly::new(self.coeffs.clone()).format(&format!("z{}", self.conductor)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclotomicField {
    pub conductor: u64,
    phi: UniPoly,
    degree: usize,
}

impl CyclotomicField {
    pub fn new(conductor: u64) -> Result<Self> {
        if conductor == 0 || conductor > 1000 {
            return Err(Error::Invalid(format!("conductor {conductor} out of range 1..=1000")));
        }
        let phi = cyclotomic_polynomial(conductor);
        let degree = phi.degree().unwrap();
        Ok(CyclotomicField { conductor, phi, degree })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    fn wrap(&self, p: UniPoly) -> CyclotomicElem {
        let r = p.rem(&self.phi);
        let mut coeffs = r.coeffs().to_vec();
        coeffs.resize(self.degree, BigRational::zero());
        CyclotomicElem { conductor: self.conductor, coeffs }
    }

    fn unwrap(&self, a: &CyclotomicElem) -> UniPoly {
        debug_assert_eq!(a.conductor, self.conductor);
        UniPoly::new(a.coeffs.clone())
    }

    /// `ζ_m^k`.
    pub fn zeta_pow(&self, k: i64) -> CyclotomicElem {
        let k = k.rem_euclid(self.conductor as i64) as usize;
        self.wrap(UniPoly::monomial(k, BigRational::one()))
    }

    /// Element with the given power-basis coefficients, reduced mod `Φ_m`.
    pub fn from_coeffs(&self, coeffs: Vec<BigRational>) -> CyclotomicElem {
        self.wrap(UniPoly::new(coeffs))
    }

    pub fn pow(&self, a: &CyclotomicElem, e: i64) -> CyclotomicElem {
        let base = if e < 0 { self.inv(a) } else { a.clone() };
        let mut r = self.one();
        let mut b = base;
        let mut e = e.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(&r, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        r
    }

    /// Multiplicative order if `a` is a root of unity of order dividing `m`
    /// (or 2m when m is odd), otherwise `None`.
    pub fn root_of_unity_order(&self, a: &CyclotomicElem) -> Option<u64> {
        let bound = 2 * self.conductor;
        let mut p = a.clone();
        for k in 1..=bound {
            if p == self.one() {
                return Some(k);
            }
            p = self.mul(&p, a);
        }
        None
    }

    /// Evaluates a group-algebra element at a character given by one value
    /// per variable of `ring` (free values must be nonzero).
    pub fn eval(&self, ring: &Ring, f: &RingElem, values: &[CyclotomicElem]) -> CyclotomicElem {
        let inverses: Vec<Option<CyclotomicElem>> =
            values.iter().map(|v| if v.is_zero() { None } else { Some(self.inv(v)) }).collect();
        let mut acc = self.zero();
        for (m, c) in f.terms() {
            let mut term = self.from_rational(c);
            for (i, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let base = if e > 0 {
                    values[i].clone()
                } else {
                    inverses[i].clone().expect("nonzero character value")
                };
                term = self.mul(&term, &self.pow(&base, e.abs()));
            }
            acc = self.add(&acc, &term);
        }
        debug_assert_eq!(values.len(), ring.nvars());
        acc
    }

    pub fn to_json_coeffs(a: &CyclotomicElem) -> Vec<String> {
        a.coeffs.iter().map(format_rational).collect()
    }
}

impl Field for CyclotomicField {
    type Elem = CyclotomicElem;
    fn zero(&self) -> CyclotomicElem {
        CyclotomicElem { conductor: self.conductor, coeffs: vec![BigRational::zero(); self.degree] }
    }
    fn one(&self) -> CyclotomicElem {
        self.wrap(UniPoly::one())
    }
    fn is_zero(&self, a: &CyclotomicElem) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &CyclotomicElem, b: &CyclotomicElem) -> CyclotomicElem {
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect();
        CyclotomicElem { conductor: self.conductor, coeffs }
    }
    fn sub(&self, a: &CyclotomicElem, b: &CyclotomicElem) -> CyclotomicElem {
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect();
        CyclotomicElem { conductor: self.conductor, coeffs }
    }
    fn mul(&self, a: &CyclotomicElem, b: &CyclotomicElem) -> CyclotomicElem {
        self.wrap(self.unwrap(a).mul(&self.unwrap(b)))
    }
    fn neg(&self, a: &CyclotomicElem) -> CyclotomicElem {
        CyclotomicElem { conductor: self.conductor, coeffs: a.coeffs.iter().map(|x| -x).collect() }
    }
    fn inv(&self, a: &CyclotomicElem) -> CyclotomicElem {
        assert!(!a.is_zero(), "inverse of zero");
        let (g, s, _) = UniPoly::ext_gcd(&self.unwrap(a), &self.phi);
        assert_eq!(g, UniPoly::one(), "Φ_m is irreducible");
        self.wrap(s)
    }
    fn from_rational(&self, q: &BigRational) -> CyclotomicElem {
        self.wrap(UniPoly::constant(q.clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeta_relations() {
        for m in [1u64, 2, 3, 4, 5, 6, 8, 9, 12] {
            let k = CyclotomicField::new(m).unwrap();
            let z = k.zeta_pow(1);
            assert_eq!(k.pow(&z, m as i64), k.one(), "z^{m} = 1");
            let phi = cyclotomic_polynomial(m);
            let val = phi
                .coeffs()
                .iter()
                .enumerate()
                .fold(k.zero(), |acc, (i, c)| k.add(&acc, &k.mul(&k.from_rational(c), &k.pow(&z, i as i64))));
            assert!(val.is_zero(), "Φ_{m}(z) = 0");
        }
    }

    #[test]
    fn inverses() {
        let k = CyclotomicField::new(7).unwrap();
        let a = k.add(&k.zeta_pow(1), &k.from_i64(3));
        assert_eq!(k.mul(&a, &k.inv(&a)), k.one());
    }

    #[test]
    fn trefoil_vanishes_at_zeta6() {
        let k = CyclotomicField::new(6).unwrap();
        let r = Ring::laurent(1, vec![], super::super::Flavor::Rat);
        let t = r.var(0);
        let f = r.add(&r.sub(&r.mul(&t, &t), &t), &r.one());
        assert!(k.eval(&r, &f, &[k.zeta_pow(1)]).is_zero());
        assert!(!k.eval(&r, &f, &[k.zeta_pow(2)]).is_zero());
    }

    #[test]
    fn orders() {
        let k = CyclotomicField::new(6).unwrap();
        assert_eq!(k.root_of_unity_order(&k.zeta_pow(2)), Some(3));
        assert_eq!(k.root_of_unity_order(&k.from_i64(-1)), Some(2));
        assert_eq!(k.root_of_unity_order(&k.from_i64(2)), None);
    }
}
