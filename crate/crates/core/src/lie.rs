//! Holonomy data: the comultiplication `∇: H_2 → Λ²H_1` read off a
//! commutator-relator presentation, the infinitesimal Alexander invariant
//! `𝔅` and module `𝔄`, holonomy Chen ranks and resonance membership.
//!
//! Basis conventions: `Λ²H_1` has basis `e_i∧e_j`, `i < j`, in lexicographic
//! order. The coefficient of a relator `r` on `e_i∧e_j` is `(c_ij − c_ji)/2`,
//! where `c_ij` is the coefficient of `X_iX_j` in the Magnus expansion
//! `x_i ↦ 1 + X_i`; so `[x_i, x_j]` gives exactly `e_i∧e_j`.
//!
//! `𝔄` has one relation column per relator, with entry `Σ_j n(i,j) x_j` at
//! generator `i`, where `n(i,j) = ∇(e_i∧e_j)` for `i < j` and
//! `n(i,j) = −n(j,i)`. For `Z² = ⟨x1,x2 | [x1,x2]⟩` the column is
//! `(x2, −x1)ᵀ`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::fox::{pair_index, pair_names};
use crate::modtools::{fitting_ideal, graded_dims_linear, GradedDims, Ideal, ModulePresentation};
use crate::presentation::GroupPresentation;
use crate::ring::{rank, Flavor, Rationals, Ring, RingElem};

/// First Betti number and the columns of `∇`, each of length `C(b1, 2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CupData {
    pub b1: usize,
    pub nabla: Vec<Vec<BigRational>>,
}

impl CupData {
    pub fn new(b1: usize, nabla: Vec<Vec<BigRational>>) -> Result<Self> {
        let len = b1 * b1.saturating_sub(1) / 2;
        if nabla.iter().any(|c| c.len() != len) {
            return Err(Error::Invalid(format!("every ∇ column needs C({b1},2) = {len} entries")));
        }
        Ok(CupData { b1, nabla })
    }

    /// `n(i,j)` for 0-based generators of column `c`.
    pub fn pairing(&self, c: usize, i: usize, j: usize) -> BigRational {
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self.nabla[c][pair_index(self.b1, i, j)].clone(),
            std::cmp::Ordering::Greater => -self.nabla[c][pair_index(self.b1, j, i)].clone(),
            std::cmp::Ordering::Equal => BigRational::zero(),
        }
    }

    /// Rank of `∇` over Q.
    pub fn nabla_rank(&self) -> usize {
        rank(&Rationals, &self.nabla)
    }

    /// Sparse columns `{(i, j) ↦ coefficient}` with 1-based indices.
    pub fn sparse_columns(&self) -> Vec<Vec<((usize, usize), BigRational)>> {
        let names: Vec<(usize, usize)> =
            (0..self.b1).flat_map(|i| (i + 1..self.b1).map(move |j| (i + 1, j + 1))).collect();
        self.nabla
            .iter()
            .map(|c| c.iter().zip(&names).filter(|(x, _)| !x.is_zero()).map(|(x, n)| (*n, x.clone())).collect())
            .collect()
    }
}

/// Degree-two Magnus coefficients `c_ij` of a word with zero exponent sums.
fn magnus_quadratic(word: &crate::presentation::FreeWord, m: usize) -> Vec<Vec<BigInt>> {
    let mut lin = vec![BigInt::zero(); m];
    let mut quad = vec![vec![BigInt::zero(); m]; m];
    for &(g, e) in word.letters() {
        let i = g - 1;
        // x_i^e = 1 + e X_i + C(e,2) X_i^2 + …
        for (j, a) in lin.iter().enumerate() {
            quad[j][i] += a * e;
        }
        quad[i][i] += BigInt::from(e * (e - 1) / 2);
        lin[i] += e;
    }
    quad
}

/// `∇` from the quadratic Magnus terms of the relators.
pub fn cup_data(pres: &GroupPresentation) -> Result<CupData> {
    if !pres.is_commutator_relators() {
        return Err(Error::Precondition(
            "cup_data needs every relator to have zero exponent sum in every generator".into(),
        ));
    }
    let m = pres.num_generators();
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let nabla = pres
        .relators()
        .iter()
        .map(|r| {
            let c = magnus_quadratic(r, m);
            let mut col = Vec::with_capacity(m * m.saturating_sub(1) / 2);
            for i in 0..m {
                for j in i + 1..m {
                    col.push(BigRational::from_integer(&c[i][j] - &c[j][i]) * &half);
                }
            }
            col
        })
        .collect();
    CupData::new(m, nabla)
}

/// Graded presentation of `𝔅` over `Q[x_1..x_b1]`: generators `e_i∧e_j` in
/// degree 0, relations the linear Koszul columns and the `∇` columns.
pub fn inf_alexander_invariant(cd: &CupData) -> ModulePresentation {
    let b = cd.b1;
    let ring = Ring::polynomial(b, Flavor::Rat);
    let g = b * b.saturating_sub(1) / 2;
    let mut relations = Vec::new();
    for a in 0..b {
        for c in a + 1..b {
            for d in c + 1..b {
                // linear part of the Koszul boundary: t_i − 1 ↦ x_i
                let mut col = vec![ring.zero(); g];
                col[pair_index(b, c, d)] = ring.neg(&ring.var(a));
                col[pair_index(b, a, d)] = ring.var(c);
                col[pair_index(b, a, c)] = ring.neg(&ring.var(d));
                relations.push(col);
            }
        }
    }
    for col in &cd.nabla {
        if col.iter().all(|x| x.is_zero()) {
            continue;
        }
        relations.push(col.iter().map(|x| ring.constant(x.clone())).collect());
    }
    let mut m = ModulePresentation::new(ring, pair_names(b), relations);
    m.degrees = Some(vec![0; g]);
    m
}

/// `𝔄 = coker(∂_2^H)`: `b1` generators, one column per retained `∇` column.
pub fn inf_alexander_module(cd: &CupData, h2_dim: usize) -> Result<ModulePresentation> {
    if h2_dim > cd.nabla.len() {
        return Err(Error::Invalid(format!("h2_dim {h2_dim} exceeds the {} columns of ∇", cd.nabla.len())));
    }
    let b = cd.b1;
    let ring = Ring::polynomial(b, Flavor::Rat);
    let relations: Vec<Vec<RingElem>> = (0..h2_dim)
        .map(|c| {
            (0..b)
                .map(|i| ring.sum((0..b).map(|j| ring.scale(&ring.var(j), &cd.pairing(c, i, j))).collect::<Vec<_>>().iter()))
                .collect()
        })
        .collect();
    let names = (1..=b).map(|i| format!("x{i}")).collect();
    let mut m = ModulePresentation::new(ring, names, relations).prune();
    m.degrees = Some(vec![0; b]);
    Ok(m)
}

pub const MAX_HOLONOMY_N: usize = 20;

/// `θ̄_1 = b1` and `θ̄_n = dim 𝔅_{n−2}` for `n = 2..N`, reported with
/// `start = 1`.
pub fn holonomy_chen_ranks(cd: &CupData, n: usize) -> Result<GradedDims> {
    if n == 0 || n > MAX_HOLONOMY_N {
        return Err(Error::SizeGuard(format!("holonomy Chen ranks need 1 <= N <= {MAX_HOLONOMY_N}, got {n}")));
    }
    let mut dims = vec![cd.b1];
    if n >= 2 {
        let b = inf_alexander_invariant(cd);
        dims.extend(graded_dims_linear(&b, 0, n - 1)?.dims);
    }
    Ok(GradedDims { start: 1, dims })
}

/// Defining ideal of `R_k`: `Fitt_{k+1}(𝔄)`, valid away from `0`.
pub fn resonance_ideal(cd: &CupData, k: usize) -> Result<Ideal> {
    if k == 0 {
        return Err(Error::Invalid("depth k must be at least 1".into()));
    }
    fitting_ideal(&inf_alexander_module(cd, cd.nabla.len())?, k + 1)
}

/// Matrix of `δ_a^1: H^1 → H^2`, one row per `∇` column:
/// `u ↦ ∇^T(a ∧ u)`.
fn delta_one(cd: &CupData, a: &[BigRational]) -> Vec<Vec<BigRational>> {
    (0..cd.nabla.len())
        .map(|c| {
            (0..cd.b1)
                .map(|j| (0..cd.b1).fold(BigRational::zero(), |acc, i| acc + &a[i] * cd.pairing(c, i, j)))
                .collect()
        })
        .collect()
}

/// Whether `a ∈ R_k`: `dim ker δ_a^1 − rank δ_a^0 ≥ k`.
pub fn resonance_membership(cd: &CupData, a: &[BigRational], k: usize) -> Result<bool> {
    if a.len() != cd.b1 {
        return Err(Error::Invalid(format!("point has {} coordinates, b1 = {}", a.len(), cd.b1)));
    }
    let r0 = usize::from(a.iter().any(|x| !x.is_zero()));
    let r1 = rank(&Rationals, &delta_one(cd, a));
    Ok(cd.b1 - r1 - r0 >= k)
}
