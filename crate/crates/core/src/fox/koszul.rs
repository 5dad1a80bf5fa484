//! `B(G)` for commutator-relator presentations, where `G_ab = Z^m` and the
//! augmented Fox complex is the Koszul complex of `t_1-1, …, t_m-1`:
//! `B(G) = Λ²R^m / (im ∂_3 + lifts of the Fox rows through ∂_2)`.

use num_rational::BigRational;
use num_traits::Signed;

use super::{fox_matrix_with, ModulePresentation};
use crate::error::{Error, Result};
use crate::presentation::GroupPresentation;
use crate::ring::{Flavor, Ring, RingElem};

/// Position of `e_i ∧ e_j` (0-based `i < j`) among the `C(m,2)` pairs in
/// lexicographic order.
pub fn pair_index(m: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < m);
    i * (2 * m - i - 1) / 2 + (j - i - 1)
}

pub fn pair_names(m: usize) -> Vec<String> {
    let mut v = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            v.push(format!("e{}{}", i + 1, j + 1));
        }
    }
    v
}

/// `∂_k(e_S) = Σ_s (-1)^s (t_{i_s} - 1) e_{S∖i_s}` for `S` of size 2 or 3,
/// returned as a vector indexed by the basis of `Λ^{k-1}`.
pub fn koszul_boundary(ring: &Ring, m: usize, s: &[usize]) -> Vec<RingElem> {
    let one = ring.one();
    let tm1 = |i: usize| ring.sub(&ring.var(i), &one);
    match s.len() {
        2 => {
            let mut v = vec![ring.zero(); m];
            v[s[0]] = tm1(s[1]);
            v[s[1]] = ring.neg(&tm1(s[0]));
            v
        }
        3 => {
            let mut v = vec![ring.zero(); m * (m - 1) / 2];
            for (pos, &drop) in s.iter().enumerate() {
                let rest: Vec<usize> = s.iter().copied().filter(|&x| x != drop).collect();
                let sign_neg = pos % 2 == 0; // (-1)^{pos+1}
                let c = if sign_neg { ring.neg(&tm1(drop)) } else { tm1(drop) };
                v[pair_index(m, rest[0], rest[1])] = c;
            }
            v
        }
        _ => panic!("koszul_boundary supports sizes 2 and 3"),
    }
}

/// Splits `f = f|_{t_k = 1} + (t_k - 1) q`; returns `(f|_{t_k=1}, q)`.
fn peel(ring: &Ring, f: &RingElem, k: usize) -> (RingElem, RingElem) {
    let mut rest = Vec::new();
    let mut quot = Vec::new();
    for (mono, c) in f.terms() {
        let e = mono[k];
        let mut base = mono.clone();
        base[k] = 0;
        rest.push((base.clone(), c.clone()));
        // (t^e - 1)/(t - 1)
        let range: Vec<(i64, BigRational)> = if e > 0 {
            (0..e).map(|i| (i, c.clone())).collect()
        } else {
            (e..0).map(|i| (i, -c.clone())).collect()
        };
        for (i, cc) in range {
            let mut mm = base.clone();
            mm[k] = i;
            quot.push((mm, cc));
        }
    }
    (ring.from_terms(rest), ring.from_terms(quot))
}

/// Lifts `v ∈ ker ∂_1` to `c ∈ Λ²` with `∂_2 c = v` by the contracting
/// homotopy, peeling variables from the highest index down.
pub(crate) fn koszul_lift(ring: &Ring, m: usize, v: &[RingElem]) -> Result<Vec<RingElem>> {
    let mut v = v.to_vec();
    let mut c = vec![ring.zero(); m * (m - 1) / 2];
    for top in (1..m).rev() {
        for j in 0..top {
            let (r, q) = peel(ring, &v[j], top);
            if q.is_zero() {
                continue;
            }
            v[j] = r;
            // v_top -= q (1 - t_j)
            let one_minus = ring.sub(&ring.one(), &ring.var(j));
            v[top] = ring.sub(&v[top], &ring.mul(&q, &one_minus));
            let idx = pair_index(m, j, top);
            c[idx] = ring.add(&c[idx], &q);
        }
        if !v[top].is_zero() {
            return Err(Error::Internal("Fox row is not a cycle of the Koszul complex".into()));
        }
    }
    if m > 0 && !v[0].is_zero() {
        return Err(Error::Internal("Fox row is not a cycle of the Koszul complex".into()));
    }
    Ok(c)
}

/// Multiplies by -1 if the leading coefficient of the first nonzero entry
/// is negative.
fn normalize_sign(ring: &Ring, col: Vec<RingElem>) -> Vec<RingElem> {
    let neg = col
        .iter()
        .find(|x| !x.is_zero())
        .and_then(|x| x.sorted_terms().first().map(|(_, c)| c.is_negative()))
        .unwrap_or(false);
    if neg {
        col.iter().map(|x| ring.neg(x)).collect()
    } else {
        col
    }
}

/// Presentation of `B(G)` over `Z[t_1^±1..t_m^±1]` on the generators
/// `e_i ∧ e_j`: Koszul `∂_3` columns followed by one lifted column per
/// relator (zero columns dropped).
pub fn b_presentation_koszul(pres: &GroupPresentation) -> Result<ModulePresentation> {
    if !pres.is_commutator_relators() {
        return Err(Error::Precondition(
            "b_presentation_koszul needs every relator to have zero exponent sum in every generator; \
             use the univariate pipeline (b_univariate) or the truncation pipeline (chen_ranks) instead"
                .into(),
        ));
    }
    let m = pres.num_generators();
    let ring = Ring::laurent(m, Vec::new(), Flavor::Int);
    let images: Vec<Vec<i64>> = (0..m).map(|j| (0..m).map(|i| (i == j) as i64).collect()).collect();
    let mut relations = Vec::new();
    for a in 0..m {
        for b in a + 1..m {
            for c in b + 1..m {
                relations.push(koszul_boundary(&ring, m, &[a, b, c]));
            }
        }
    }
    let fox = fox_matrix_with(pres, &ring, &images)?;
    for col in fox.columns() {
        let lift = koszul_lift(&ring, m, &col)?;
        // ∂_2(lift) must reproduce the Fox row
        let mut back = vec![ring.zero(); m];
        for i in 0..m {
            for j in i + 1..m {
                let coef = &lift[pair_index(m, i, j)];
                if coef.is_zero() {
                    continue;
                }
                for (k, x) in koszul_boundary(&ring, m, &[i, j]).iter().enumerate() {
                    back[k] = ring.add(&back[k], &ring.mul(coef, x));
                }
            }
        }
        if back != col {
            return Err(Error::Internal("Koszul lift does not reproduce the Fox row".into()));
        }
        if lift.iter().any(|x| !x.is_zero()) {
            relations.push(normalize_sign(&ring, lift));
        }
    }
    Ok(ModulePresentation::new(ring, pair_names(m), relations))
}
