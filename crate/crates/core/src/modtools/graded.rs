//! Hilbert data of modules: associated graded pieces of the augmentation
//! filtration via truncation, and graded components of graded modules over
//! a polynomial ring, computed degree by degree or from a Gröbner basis.

use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::groebner::{self, GroebnerLimits, Mono, Poly};
use super::ModulePresentation;
use crate::error::{Error, Result};
use crate::ring::laurent_to_truncated_in;
use crate::ring::{Echelon, Flavor, Rationals, TruncBasis};

/// Dimensions `dims[i]` of the graded pieces in degrees `start + i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedDims {
    pub start: usize,
    pub dims: Vec<usize>,
}

impl GradedDims {
    pub fn get(&self, degree: usize) -> Option<usize> {
        degree.checked_sub(self.start).and_then(|i| self.dims.get(i).copied())
    }
}

pub const MAX_TRUNCATION_ORDER: usize = 24;
/// Limit on `dim (R/I^N)^g` for the truncated computation.
pub const MAX_TRUNCATED_DIM: usize = 60_000;

type SparseRow = Vec<(usize, BigRational)>;

/// Sparse elimination keeping rows whose pivot is their lowest index.
struct LowPivot {
    rows: HashMap<usize, SparseRow>,
}

impl LowPivot {
    fn new() -> Self {
        LowPivot { rows: HashMap::new() }
    }

    /// Inserts `v` (sorted by index); returns the new pivot if independent.
    fn insert(&mut self, mut v: SparseRow) -> Option<usize> {
        loop {
            let (lead, c) = v.first()?.clone();
            match self.rows.get(&lead) {
                None => {
                    let inv = c.recip();
                    for (_, x) in v.iter_mut() {
                        *x *= &inv;
                    }
                    self.rows.insert(lead, v);
                    return Some(lead);
                }
                Some(p) => v = axpy(&v, &c, p),
            }
        }
    }
}

/// `v - c·p` for sorted sparse rows.
fn axpy(v: &SparseRow, c: &BigRational, p: &SparseRow) -> SparseRow {
    let mut out = Vec::with_capacity(v.len() + p.len());
    let (mut i, mut j) = (0, 0);
    while i < v.len() || j < p.len() {
        let take_v = j >= p.len() || (i < v.len() && v[i].0 < p[j].0);
        let take_p = i >= v.len() || (j < p.len() && p[j].0 < v[i].0);
        if take_v {
            out.push(v[i].clone());
            i += 1;
        } else if take_p {
            out.push((p[j].0, -(c * &p[j].1)));
            j += 1;
        } else {
            let x = &v[i].1 - c * &p[j].1;
            if !x.is_zero() {
                out.push((v[i].0, x));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// `dim gr_n(M ⊗ Q)` for `n = 0 … N−2` with respect to the augmentation
/// ideal, computed in `M̄ = M ⊗ R/I^N` where `R/I^N = Q[x]/m^N`
/// (`t_i ↦ 1 + x_i`, torsion generators ↦ 1).
pub fn graded_dims_truncated(m: &ModulePresentation, order: usize) -> Result<GradedDims> {
    if order == 0 || order > MAX_TRUNCATION_ORDER {
        return Err(Error::SizeGuard(format!("truncation order must be in 1..={MAX_TRUNCATION_ORDER}, got {order}")));
    }
    if matches!(m.ring.flavor, Flavor::ModP(_)) || !m.ring.laurent {
        return Err(Error::Invalid(format!(
            "truncated graded dimensions need a rational group algebra, got {}",
            m.ring.describe()
        )));
    }
    let g = m.num_generators();
    let basis = TruncBasis::new(m.ring.nfree, order);
    let total = basis.len().saturating_mul(g);
    if total > MAX_TRUNCATED_DIM {
        return Err(Error::SizeGuard(format!(
            "truncated module has dimension {total} (order {order}, {} variables, {g} generators); the limit is {MAX_TRUNCATED_DIM}",
            m.ring.nfree
        )));
    }
    // truncated relation columns as sparse vectors indexed by mono * g + gen
    let mut cols: Vec<Vec<(usize, usize, BigRational)>> = Vec::new();
    for rel in &m.relations {
        let mut entries = Vec::new();
        for (gen, x) in rel.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let t = laurent_to_truncated_in(&m.ring, x, &basis)?;
            for (mono, c) in t.coeffs.iter().enumerate() {
                if !c.is_zero() {
                    entries.push((mono, gen, c.clone()));
                }
            }
        }
        if !entries.is_empty() {
            cols.push(entries);
        }
    }
    let mut elim = LowPivot::new();
    let mut pivots_by_degree = vec![0usize; order];
    // shifts of high degree first: they are short
    for shift in (0..basis.len()).rev() {
        for col in &cols {
            let mut v: SparseRow = col
                .iter()
                .filter_map(|(mono, gen, c)| basis.product_index(*mono, shift).map(|k| (k * g + gen, c.clone())))
                .collect();
            if v.is_empty() {
                continue;
            }
            v.sort_by_key(|(i, _)| *i);
            if let Some(p) = elim.insert(v) {
                pivots_by_degree[basis.degree_of(p / g)] += 1;
            }
        }
    }
    let dims = (0..order.saturating_sub(1))
        .map(|n| {
            let free = (basis.degree_start[n + 1] - basis.degree_start[n]) * g;
            free - pivots_by_degree[n]
        })
        .collect();
    Ok(GradedDims { start: 0, dims })
}

/// Exponent vectors of total degree `d` in `n` variables, lexicographically
/// descending.
pub fn monomials_of_degree(n: usize, d: usize) -> Vec<Vec<u32>> {
    if n == 0 {
        return if d == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=d).rev() {
        for mut rest in monomials_of_degree(n - 1, d - first) {
            rest.insert(0, first as u32);
            out.push(rest);
        }
    }
    out
}

/// Degrees of the relation columns of a graded presentation over a
/// polynomial ring; errors on inhomogeneous columns.
fn relation_degrees(m: &ModulePresentation) -> Result<Vec<i64>> {
    let gdeg = m.degrees.clone().unwrap_or_else(|| vec![0; m.num_generators()]);
    let mut out = Vec::with_capacity(m.num_relations());
    for (j, rel) in m.relations.iter().enumerate() {
        let mut deg: Option<i64> = None;
        for (i, x) in rel.iter().enumerate() {
            for (mono, _) in x.terms() {
                let d = gdeg[i] + mono.iter().sum::<i64>();
                if *deg.get_or_insert(d) != d {
                    return Err(Error::Invalid(format!("relation {} is not homogeneous", j + 1)));
                }
            }
        }
        out.push(deg.unwrap_or(i64::MIN));
    }
    Ok(out)
}

fn check_graded(m: &ModulePresentation) -> Result<()> {
    if m.ring.laurent || m.ring.flavor != Flavor::Rat {
        return Err(Error::Invalid(format!("graded dimensions need a rational polynomial ring, got {}", m.ring.describe())));
    }
    Ok(())
}

/// `dim M_d` for `d = start … start+count−1` of a graded module over
/// `Q[x_1..x_r]`, by linear algebra in each degree.
pub fn graded_dims_linear(m: &ModulePresentation, start: usize, count: usize) -> Result<GradedDims> {
    check_graded(m)?;
    let r = m.ring.nfree;
    let g = m.num_generators();
    let gdeg = m.degrees.clone().unwrap_or_else(|| vec![0; g]);
    let rdeg = relation_degrees(m)?;
    let mut dims = Vec::with_capacity(count);
    for d in start..start + count {
        let d = d as i64;
        // basis of F_d: (generator, monomial of degree d - deg)
        let mut index: HashMap<(usize, Vec<u32>), usize> = HashMap::new();
        for (i, &gd) in gdeg.iter().enumerate() {
            if d >= gd {
                for mono in monomials_of_degree(r, (d - gd) as usize) {
                    let k = index.len();
                    index.insert((i, mono), k);
                }
            }
        }
        let dim = index.len();
        let mut ech = Echelon::new(Rationals, dim);
        for (rel, &rd) in m.relations.iter().zip(&rdeg) {
            if rd == i64::MIN || rd > d {
                continue;
            }
            for shift in monomials_of_degree(r, (d - rd) as usize) {
                let mut v = vec![BigRational::zero(); dim];
                for (i, x) in rel.iter().enumerate() {
                    for (mono, c) in x.terms() {
                        let e: Vec<u32> = mono.iter().zip(&shift).map(|(a, b)| *a as u32 + b).collect();
                        v[index[&(i, e)]] += c;
                    }
                }
                ech.insert(&v);
                if ech.rank() == dim {
                    break;
                }
            }
        }
        dims.push(dim - ech.rank());
    }
    Ok(GradedDims { start, dims })
}

/// Same as [`graded_dims_linear`], from a Gröbner basis of the encoding
/// `Q[x, e]/(relations, e_i e_j)`: the degree-`d` piece of the module is
/// spanned by the standard monomials `x^a e_i` with `|a| = d − deg e_i`.
pub fn graded_dims_groebner(m: &ModulePresentation, start: usize, count: usize) -> Result<GradedDims> {
    check_graded(m)?;
    relation_degrees(m)?;
    let r = m.ring.nfree;
    let g = m.num_generators();
    let gdeg = m.degrees.clone().unwrap_or_else(|| vec![0; g]);
    let n = r + g;
    let f = Rationals;
    let mut gens: Vec<Poly<Rationals>> = Vec::new();
    for rel in &m.relations {
        let mut terms = Vec::new();
        for (i, x) in rel.iter().enumerate() {
            for (mono, c) in x.terms() {
                let mut e: Vec<u32> = mono.iter().map(|&a| a as u32).collect();
                e.resize(n, 0);
                e[r + i] = 1;
                terms.push((e, c.clone()));
            }
        }
        gens.push(Poly::from_terms(&f, terms));
    }
    for i in 0..g {
        for j in i..g {
            let mut e = vec![0u32; n];
            e[r + i] += 1;
            e[r + j] += 1;
            gens.push(Poly::from_terms(&f, vec![(e, BigRational::one())]));
        }
    }
    gens.retain(|p| !p.is_zero());
    let gb = groebner::groebner_basis(&f, &gens, GroebnerLimits::default())?;
    let leads: Vec<&Mono> = gb.iter().map(|p| p.lm()).collect();
    let dims = (start..start + count)
        .map(|d| {
            let mut k = 0;
            for (i, &gd) in gdeg.iter().enumerate() {
                if (d as i64) < gd {
                    continue;
                }
                for mono in monomials_of_degree(r, (d as i64 - gd) as usize) {
                    let mut e = mono;
                    e.resize(n, 0);
                    e[r + i] = 1;
                    let e = Mono(e);
                    if !leads.iter().any(|l| l.divides(&e)) {
                        k += 1;
                    }
                }
            }
            k
        })
        .collect();
    Ok(GradedDims { start, dims })
}
