//! The mod-p Alexander invariant `B_p(G)` as a finite-dimensional
//! representation of `Z_p^b`, computed as the kernel of `A_p(G) → Λ_p`.

use super::{fox_matrix, FoxFlavor};
use crate::error::{Error, Result};
use crate::presentation::GroupPresentation;
use crate::ring::{Echelon, Field, PrimeField};

/// Largest `m · p^b` accepted by [`b_mod_p`].
pub const MOD_P_AMBIENT_LIMIT: usize = 2048;

/// An `F_p`-vector space with commuting actions of the generators of `Z_p^b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteModule {
    pub p: u64,
    pub dim: usize,
    /// Dimension of the ambient space `Λ_p^m` the basis lives in.
    pub ambient_dim: usize,
    /// Basis vectors of `B_p` as normal forms in `Λ_p^m` modulo the relations.
    pub basis: Vec<Vec<u64>>,
    /// `actions[k][i][j]`: coefficient of basis vector `i` in `h_k · basis_j`.
    pub actions: Vec<Vec<Vec<u64>>>,
}

impl FiniteModule {
    /// `dim U_n - dim U_{n+1}` for `U_0 = M`, `U_{n+1} = I · U_n`, listing
    /// `count` values.
    pub fn augmentation_filtration_quotients(&self, count: usize) -> Vec<usize> {
        let f = PrimeField::new(self.p);
        let mut current: Vec<Vec<u64>> = (0..self.dim)
            .map(|i| (0..self.dim).map(|j| (i == j) as u64).collect())
            .collect();
        let mut dims = vec![self.dim];
        while dims.len() <= count {
            let mut next = Echelon::new(f, self.dim);
            for a in &self.actions {
                for v in &current {
                    // (h - 1) v
                    let w: Vec<u64> = (0..self.dim)
                        .map(|i| {
                            let hv = (0..self.dim).fold(0, |acc, j| f.add(&acc, &f.mul(&a[i][j], &v[j])));
                            f.sub(&hv, &v[i])
                        })
                        .collect();
                    next.insert(&w);
                }
            }
            dims.push(next.rank());
            current = next.rows.clone();
        }
        dims.windows(2).map(|w| w[0] - w[1]).take(count).collect()
    }
}

fn group_index(exps: &[i64], p: u64) -> usize {
    exps.iter().rev().fold(0usize, |acc, &e| acc * p as usize + e.rem_euclid(p as i64) as usize)
}

/// Index of the product of the group elements with indices `a` and `c`
/// (digitwise addition in base `p`).
fn add_index(a: usize, c: usize, p: usize, b: usize) -> usize {
    let (mut a, mut c) = (a, c);
    let mut out = 0;
    let mut place = 1;
    for _ in 0..b {
        out += ((a % p + c % p) % p) * place;
        a /= p;
        c /= p;
        place *= p;
    }
    out
}

/// Index of `h_k · g`.
fn shift_index(g: usize, k: usize, p: usize, b: usize) -> usize {
    add_index(g, p.pow(k as u32), p, b)
}

/// `B_p(G) = ker(A_p(G) → Λ_p)`, `e_j ↦ g_j - 1`, with the actions of the
/// standard generators of `H_1(G; Z_p) = Z_p^b`.
pub fn b_mod_p(pres: &GroupPresentation, p: u64) -> Result<FiniteModule> {
    let fox = fox_matrix(pres, FoxFlavor::ModP(p))?;
    let b = fox.ring.torsion.len();
    let m = pres.num_generators();
    if b >= 12 {
        return Err(Error::SizeGuard(format!("b_1^p = {b} must be < 12")));
    }
    let n = (p as usize).checked_pow(b as u32).unwrap_or(usize::MAX);
    let ambient = m.saturating_mul(n);
    if ambient > MOD_P_AMBIENT_LIMIT {
        return Err(Error::SizeGuard(format!(
            "m * p^b = {m} * {p}^{b} exceeds {MOD_P_AMBIENT_LIMIT}"
        )));
    }
    let f = PrimeField::new(p);
    let pu = p as usize;

    // relations: Λ_p-span of the Fox columns
    let mut w = Echelon::new(f, ambient);
    for col in fox.columns() {
        let mut base = vec![0u64; ambient];
        for (j, entry) in col.iter().enumerate() {
            for (mono, c) in entry.terms() {
                let idx = j * n + group_index(mono, p);
                base[idx] = f.add(&base[idx], &f.from_rational(c));
            }
        }
        for g in 0..n {
            // multiply by the group element with index g
            let mut v = vec![0u64; ambient];
            for (idx, x) in base.iter().enumerate() {
                if *x == 0 {
                    continue;
                }
                let (j, h) = (idx / n, idx % n);
                v[j * n + add_index(h, g, pu, b)] = *x;
            }
            w.insert(&v);
        }
    }

    // kernel of Λ_p^m → Λ_p, e_j ↦ g_j - 1; row i of the map is group index i
    let h = crate::abelian::mod_p_homology(pres, p)?;
    let mut phi_rows = vec![vec![0u64; ambient]; n];
    for j in 0..m {
        let gj: Vec<i64> = h.projection[j].iter().map(|&x| x as i64).collect();
        let gidx = group_index(&gj, p);
        for g in 0..n {
            // e_j · g ↦ g (g_j - 1)
            let prod = add_index(g, gidx, pu, b);
            let col = j * n + g;
            phi_rows[prod][col] = f.add(&phi_rows[prod][col], &1);
            phi_rows[g][col] = f.sub(&phi_rows[g][col], &1);
        }
    }
    let kernel = crate::ring::kernel(&f, &phi_rows, ambient);

    // W ⊆ ker φ by the fundamental identity
    for r in &w.rows {
        for row in &phi_rows {
            let s = row.iter().zip(r).fold(0, |acc, (a, x)| f.add(&acc, &f.mul(a, x)));
            if s != 0 {
                return Err(Error::Internal("Fox relations do not lie in the Crowell kernel".into()));
            }
        }
    }

    let mut quotient = Echelon::new(f, ambient);
    for v in &kernel {
        let nf = w.reduce(v);
        quotient.insert(&nf);
    }
    let dim = quotient.rank();
    let basis = quotient.rows.clone();

    let coords = |v: &[u64]| -> Result<Vec<u64>> {
        let nf = w.reduce(v);
        let c: Vec<u64> = quotient.pivots.iter().map(|&pc| nf[pc]).collect();
        let mut rest = nf.clone();
        for (ci, row) in c.iter().zip(&quotient.rows) {
            for (x, y) in rest.iter_mut().zip(row) {
                *x = f.sub(x, &f.mul(ci, y));
            }
        }
        if rest.iter().any(|&x| x != 0) {
            return Err(Error::Internal("action leaves the Alexander invariant".into()));
        }
        Ok(c)
    };

    let mut actions = Vec::with_capacity(b);
    for k in 0..b {
        let mut mat = vec![vec![0u64; dim]; dim];
        for (jcol, v) in basis.iter().enumerate() {
            let mut hv = vec![0u64; ambient];
            for (idx, x) in v.iter().enumerate() {
                if *x != 0 {
                    let (j, g) = (idx / n, idx % n);
                    hv[j * n + shift_index(g, k, pu, b)] = *x;
                }
            }
            for (i, c) in coords(&hv)?.into_iter().enumerate() {
                mat[i][jcol] = c;
            }
        }
        actions.push(mat);
    }
    Ok(FiniteModule { p, dim, ambient_dim: ambient, basis, actions })
}
