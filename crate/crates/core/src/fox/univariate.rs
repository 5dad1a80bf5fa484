//! `B(G) ⊗ Q` over the principal ideal domain `Q[t^±1]` when `G_ab = Z`.

use num_rational::BigRational;
use num_traits::Zero;

use super::{fox_matrix, FoxFlavor, ModulePresentation};
use crate::abelian::abelianization;
use crate::error::{Error, Result};
use crate::presentation::GroupPresentation;
use crate::ring::{Flavor, Ring, UniPoly};

/// Nonzero invariant factors (monic, each dividing the next) of a matrix
/// over `Q[t]`.
pub fn smith_over_qt(mat: &[Vec<UniPoly>]) -> Vec<UniPoly> {
    let mut a: Vec<Vec<UniPoly>> = mat.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut out = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // pivot of minimal degree
        let mut best: Option<(usize, usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(t) {
            for (j, x) in row.iter().enumerate().skip(t) {
                if let Some(d) = x.degree() {
                    if best.map_or(true, |(_, _, bd)| d < bd) {
                        best = Some((i, j, d));
                    }
                }
            }
        }
        let Some((pi, pj, _)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let (q, _) = a[i][t].div_rem(&a[t][t]);
                let pivot_row = a[t].clone();
                for (x, y) in a[i].iter_mut().zip(&pivot_row) {
                    *x = x.sub(&q.mul(y));
                }
                if !a[i][t].is_zero() {
                    a.swap(t, i);
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let (q, _) = a[t][j].div_rem(&a[t][t]);
                for row in a.iter_mut() {
                    let y = row[t].clone();
                    row[j] = row[j].sub(&q.mul(&y));
                }
                if !a[t][j].is_zero() {
                    for row in a.iter_mut() {
                        row.swap(t, j);
                    }
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            let p = a[t][t].clone();
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[i][j].rem(&p).is_zero()));
            match bad {
                Some(i) => {
                    let ri = a[i].clone();
                    for (x, y) in a[t].iter_mut().zip(&ri) {
                        *x = x.add(y);
                    }
                }
                None => break,
            }
        }
        out.push(a[t][t].monic());
        t += 1;
    }
    out
}

/// `B(G) ⊗ Q ≅ ⊕ Q[t^±1]/(d_i) ⊕ Q[t^±1]^free_rank`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnivariateNormalForm {
    /// Monic, not divisible by `t`, of positive degree, each dividing the next.
    pub invariant_factors: Vec<UniPoly>,
    pub free_rank: usize,
    pub module: ModulePresentation,
}

/// Diagonal normal form of `B(G) ⊗ Q` for groups with `G_ab = Z`.
///
/// Over a PID the Crowell sequence `0 → B → A → I → 0` splits with `I ≅ R`,
/// so `B` has the torsion of `A = coker(Fox matrix)` and one less free summand.
pub fn b_univariate(pres: &GroupPresentation) -> Result<UnivariateNormalForm> {
    let ab = abelianization(pres);
    if ab.free_rank != 1 || !ab.torsion_divisors.is_empty() {
        return Err(Error::Precondition(format!(
            "b_univariate needs G_ab = Z, got free rank {} with torsion {:?}",
            ab.free_rank,
            ab.torsion_divisors.iter().map(|d| d.to_string()).collect::<Vec<_>>()
        )));
    }
    let fox = fox_matrix(pres, FoxFlavor::Ab)?;
    let m = pres.num_generators();
    // clear powers of t column by column (units of the Laurent ring)
    let mut mat = vec![vec![UniPoly::zero(); fox.ncols]; m];
    for j in 0..fox.ncols {
        let lo = fox.entries.iter().filter_map(|r| r[j].exponent_range(0)).map(|(l, _)| l).min().unwrap_or(0);
        for i in 0..m {
            let mut coeffs: Vec<BigRational> = Vec::new();
            for (mono, c) in fox.entries[i][j].terms() {
                let k = (mono[0] - lo) as usize;
                if coeffs.len() <= k {
                    coeffs.resize(k + 1, BigRational::zero());
                }
                coeffs[k] += c;
            }
            mat[i][j] = UniPoly::new(coeffs);
        }
    }
    let factors = smith_over_qt(&mat);
    let rank = factors.len();
    if rank >= m {
        return Err(Error::Internal("Alexander matrix has full row rank".into()));
    }
    let invariant_factors: Vec<UniPoly> =
        factors.into_iter().map(|d| d.strip_x().monic()).filter(|d| d.degree().unwrap_or(0) > 0).collect();
    let free_rank = m - rank - 1;

    let ring = Ring::laurent(1, Vec::new(), Flavor::Rat);
    let g = invariant_factors.len() + free_rank;
    let names = (1..=g).map(|i| format!("b{i}")).collect();
    let relations = invariant_factors
        .iter()
        .enumerate()
        .map(|(i, d)| {
            let mut col = vec![ring.zero(); g];
            col[i] = ring.from_terms(d.coeffs().iter().enumerate().map(|(k, c)| (vec![k as i64], c.clone())));
            col
        })
        .collect();
    let module = ModulePresentation::new(ring, names, relations);
    Ok(UnivariateNormalForm { invariant_factors, free_rank, module })
}
