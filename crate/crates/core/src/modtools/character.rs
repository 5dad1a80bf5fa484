//! Characters of a finitely generated abelian group with values in a
//! cyclotomic field, and exact ranks of evaluated matrices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::ring::{format_rational, rank, CyclotomicElem, CyclotomicField, Field, Flavor, GroupAlgebraMatrix, PrimeField, Ring, RingElem};

/// A character: free coordinates in `Q(ζ_m)`, torsion coordinates
/// `ζ_m^{e_j}` given by their exponents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterPoint {
    pub conductor: u64,
    pub free: Vec<CyclotomicElem>,
    pub torsion: Vec<u64>,
}

impl CharacterPoint {
    pub fn field(&self) -> Result<CyclotomicField> {
        CyclotomicField::new(self.conductor)
    }

    /// Point with rational free coordinates and torsion coordinates `±1`
    /// (`true` for `-1`).
    pub fn rational(free: &[BigRational], torsion_neg: &[bool]) -> Result<Self> {
        let conductor = if torsion_neg.iter().any(|&b| b) { 2 } else { 1 };
        let field = CyclotomicField::new(conductor)?;
        Ok(CharacterPoint {
            conductor,
            free: free.iter().map(|q| field.from_rational(q)).collect(),
            torsion: torsion_neg.iter().map(|&b| if b { 1 } else { 0 }).collect(),
        })
    }

    /// The trivial character.
    pub fn identity(nfree: usize, ntorsion: usize) -> Self {
        let field = CyclotomicField::new(1).unwrap();
        CharacterPoint { conductor: 1, free: vec![field.one(); nfree], torsion: vec![0; ntorsion] }
    }

    pub fn is_identity(&self) -> bool {
        let Ok(field) = self.field() else { return false };
        self.free.iter().all(|v| *v == field.one()) && self.torsion.iter().all(|&e| e % self.conductor == 0)
    }

    /// Checks shape and value constraints against a ring.
    pub fn validate(&self, ring: &Ring) -> Result<()> {
        if self.free.len() != ring.nfree || self.torsion.len() != ring.torsion.len() {
            return Err(Error::Invalid(format!(
                "character has {} free and {} torsion coordinates, ring {} needs {} and {}",
                self.free.len(),
                self.torsion.len(),
                ring.describe(),
                ring.nfree,
                ring.torsion.len()
            )));
        }
        for v in &self.free {
            if v.conductor != self.conductor {
                return Err(Error::Invalid("character coordinates use different conductors".into()));
            }
            if v.is_zero() {
                return Err(Error::Invalid("free character coordinates must be nonzero".into()));
            }
        }
        for (e, d) in self.torsion.iter().zip(&ring.torsion) {
            let order = self.conductor / self.conductor.gcd(&(e % self.conductor));
            let order = if e % self.conductor == 0 { 1 } else { order };
            if d % order != 0 {
                return Err(Error::Invalid(format!(
                    "torsion coordinate ζ_{}^{e} has order {order}, which does not divide {d}",
                    self.conductor
                )));
            }
        }
        Ok(())
    }

    /// Values of all ring variables (free first, then torsion).
    pub fn values(&self, field: &CyclotomicField) -> Vec<CyclotomicElem> {
        let mut v = self.free.clone();
        v.extend(self.torsion.iter().map(|&e| field.zeta_pow(e as i64)));
        v
    }

    /// Restriction to the identity component: torsion coordinates set to 1.
    pub fn with_trivial_torsion(&self) -> Self {
        CharacterPoint { torsion: vec![0; self.torsion.len()], ..self.clone() }
    }
}

/// Parses the lists inside `free=[..]` and `torsion=[..]`.
fn split_list(s: &str) -> Result<Vec<String>> {
    let s = s.trim();
    let inner = s
        .strip_prefix('[')
        .and_then(|x| x.strip_suffix(']'))
        .ok_or_else(|| Error::Invalid(format!("expected a bracketed list, got `{s}`")))?;
    Ok(inner.split(',').map(|x| x.trim().to_string()).filter(|x| !x.is_empty()).collect())
}

/// `(sign, exponent)` for `z`, `z^e`, `-z^e`.
fn parse_zeta(s: &str) -> Option<(bool, i64)> {
    let (neg, rest) = match s.strip_prefix('-') {
        Some(r) => (true, r.trim()),
        None => (false, s),
    };
    let rest = rest.strip_prefix('z')?;
    if rest.is_empty() {
        return Some((neg, 1));
    }
    rest.strip_prefix('^')?.trim().parse().ok().map(|e| (neg, e))
}

impl FromStr for CharacterPoint {
    type Err = Error;

    /// `free=[v,..];torsion=[w,..]` with an optional `;conductor=m`. Free
    /// values are rationals or `±z^e`, torsion values `1`, `-1` or `z^e`,
    /// where `z = exp(2πi/m)`. Without a conductor, `m` is 2 if some
    /// torsion value is `-1` and 1 otherwise.
    fn from_str(text: &str) -> Result<Self> {
        let text = text.replace('\u{2212}', "-");
        let (mut free, mut torsion, mut conductor) = (Vec::new(), Vec::new(), None);
        for part in text.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, value) =
                part.split_once('=').ok_or_else(|| Error::Invalid(format!("expected key=value, got `{part}`")))?;
            match key.trim() {
                "free" => free = split_list(value)?,
                "torsion" => torsion = split_list(value)?,
                "conductor" => {
                    conductor = Some(
                        value.trim().parse::<u64>().map_err(|_| Error::Invalid(format!("bad conductor `{value}`")))?,
                    )
                }
                k => return Err(Error::Invalid(format!("unknown point field `{k}`"))),
            }
        }
        let uses_zeta = free.iter().chain(&torsion).any(|v| parse_zeta(v).is_some());
        let m = match conductor {
            Some(m) => m,
            None if uses_zeta => return Err(Error::Invalid("values in z need conductor=m".into())),
            None => {
                if torsion.iter().any(|v| v == "-1") {
                    2
                } else {
                    1
                }
            }
        };
        let field = CyclotomicField::new(m)?;
        let free = free
            .iter()
            .map(|v| match parse_zeta(v) {
                Some((neg, e)) => {
                    let z = field.zeta_pow(e);
                    Ok(if neg { field.neg(&z) } else { z })
                }
                None => v
                    .parse::<BigRational>()
                    .map(|q| field.from_rational(&q))
                    .map_err(|_| Error::Invalid(format!("bad free coordinate `{v}`"))),
            })
            .collect::<Result<Vec<_>>>()?;
        let torsion = torsion
            .iter()
            .map(|v| match (v.as_str(), parse_zeta(v)) {
                ("1", _) => Ok(0),
                ("-1", _) if m % 2 == 0 => Ok(m / 2),
                ("-1", _) => Err(Error::Invalid(format!("-1 is not a power of z with conductor {m}"))),
                (_, Some((false, e))) => Ok(e.rem_euclid(m as i64) as u64),
                _ => Err(Error::Invalid(format!("bad torsion coordinate `{v}`; use 1, -1 or z^e"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(CharacterPoint { conductor: m, free, torsion })
    }
}

impl fmt::Display for CharacterPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let free: Vec<String> = self
            .free
            .iter()
            .map(|v| match v.as_rational() {
                Some(q) => format_rational(&q),
                None => format!("({v})"),
            })
            .collect();
        let torsion: Vec<String> = self.torsion.iter().map(|e| format!("z^{e}")).collect();
        write!(f, "free=[{}];torsion=[{}];conductor={}", free.join(","), torsion.join(","), self.conductor)
    }
}

fn check_flavor(ring: &Ring) -> Result<()> {
    if matches!(ring.flavor, Flavor::ModP(_)) {
        return Err(Error::Invalid("character evaluation needs integral or rational coefficients".into()));
    }
    if !ring.laurent {
        return Err(Error::Invalid("character evaluation needs a group algebra".into()));
    }
    Ok(())
}

/// Evaluates one element at a character.
pub fn eval_at_character(ring: &Ring, f: &RingElem, chi: &CharacterPoint) -> Result<CyclotomicElem> {
    check_flavor(ring)?;
    chi.validate(ring)?;
    let field = chi.field()?;
    Ok(field.eval(ring, f, &chi.values(&field)))
}

/// Exact rank over `Q(ζ_m)` of a matrix evaluated at a character.
pub fn rank_at_character(mat: &GroupAlgebraMatrix, chi: &CharacterPoint) -> Result<usize> {
    check_flavor(&mat.ring)?;
    chi.validate(&mat.ring)?;
    let field = chi.field()?;
    let values = chi.values(&field);
    let rows: Vec<Vec<CyclotomicElem>> =
        mat.entries.iter().map(|r| r.iter().map(|x| field.eval(&mat.ring, x, &values)).collect()).collect();
    Ok(rank(&field, &rows))
}

fn is_prime_u64(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// A prime `q ≡ 1 mod m` with `q > 2^30`, and an element of order exactly
/// `m` in `F_q`.
fn prime_with_root(m: u64, skip: usize) -> (u64, u64) {
    let mut q = ((1u64 << 30) / m + 1) * m + 1;
    let mut found = 0;
    loop {
        if is_prime_u64(q) {
            if found == skip {
                let f = PrimeField::new(q);
                for g in 2..q {
                    let w = f.pow(g, (q - 1) / m);
                    // order exactly m: w^(m/r) != 1 for every prime r | m
                    let ok = (2..=m).filter(|r| m % r == 0 && is_prime_u64(*r)).all(|r| f.pow(w, m / r) != 1);
                    if ok {
                        return (q, w);
                    }
                }
            }
            found += 1;
        }
        q += m;
    }
}

fn reduce_rational(f: &PrimeField, q: &BigRational) -> Option<u64> {
    let p = BigInt::from(f.p);
    if (q.denom() % &p).is_zero() {
        return None;
    }
    Some(f.from_rational(q))
}

/// Rank over `F_q` with `ζ_m` sent to an element of order `m`. Never larger
/// than the exact rank, and equal to it for all but finitely many `q`.
pub fn rank_at_character_fq(mat: &GroupAlgebraMatrix, chi: &CharacterPoint) -> Result<usize> {
    check_flavor(&mat.ring)?;
    chi.validate(&mat.ring)?;
    'primes: for skip in 0..8 {
        let (q, w) = prime_with_root(chi.conductor, skip);
        let f = PrimeField::new(q);
        let to_fq = |a: &CyclotomicElem| -> Option<u64> {
            let mut acc = 0u64;
            for (i, c) in a.coeffs.iter().enumerate() {
                let c = reduce_rational(&f, c)?;
                acc = f.add(&acc, &f.mul(&c, &f.pow(w, i as u64)));
            }
            Some(acc)
        };
        let mut values = Vec::new();
        for v in &chi.free {
            match to_fq(v) {
                Some(0) | None => continue 'primes,
                Some(x) => values.push(x),
            }
        }
        values.extend(chi.torsion.iter().map(|&e| f.pow(w, e % chi.conductor)));
        let mut rows = Vec::with_capacity(mat.nrows);
        for r in &mat.entries {
            let mut row = Vec::with_capacity(mat.ncols);
            for x in r {
                let mut acc = 0u64;
                for (mono, c) in x.terms() {
                    let Some(mut term) = reduce_rational(&f, c) else { continue 'primes };
                    for (v, &e) in values.iter().zip(mono) {
                        let base = if e < 0 { f.inv(v) } else { *v };
                        term = f.mul(&term, &f.pow(base, e.unsigned_abs()));
                    }
                    acc = f.add(&acc, &term);
                }
                row.push(acc);
            }
            rows.push(row);
        }
        return Ok(rank(&f, &rows));
    }
    Err(Error::Internal("no suitable prime found for the finite-field rank".into()))
}
