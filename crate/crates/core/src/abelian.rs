//! Smith normal form over the integers and first homology of presentations.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::presentation::GroupPresentation;

/// Diagonal form `D = U A V` of an integer matrix, keeping `V` and `V⁻¹`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    /// Nonzero diagonal entries, positive, each dividing the next.
    pub diagonal: Vec<BigInt>,
    pub cols: usize,
    /// Column transform `V` (cols × cols).
    pub v: Vec<Vec<BigInt>>,
    /// `V⁻¹`.
    pub v_inv: Vec<Vec<BigInt>>,
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

struct SnfCalc {
    a: Vec<Vec<BigInt>>,
    v: Vec<Vec<BigInt>>,
    v_inv: Vec<Vec<BigInt>>,
}

impl SnfCalc {
    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for row in self.a.iter_mut().chain(self.v.iter_mut()) {
            row.swap(i, j);
        }
        self.v_inv.swap(i, j);
    }

    /// col_i += k col_j
    fn add_col(&mut self, i: usize, j: usize, k: &BigInt) {
        for row in self.a.iter_mut().chain(self.v.iter_mut()) {
            let t = &row[j] * k;
            row[i] += t;
        }
        let ri = self.v_inv[i].clone();
        for (x, y) in self.v_inv[j].iter_mut().zip(ri) {
            *x -= y * k;
        }
    }

    /// row_i += k row_j
    fn add_row(&mut self, i: usize, j: usize, k: &BigInt) {
        let rj = self.a[j].clone();
        for (x, y) in self.a[i].iter_mut().zip(rj) {
            *x += y * k;
        }
    }

    fn min_entry(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for (i, row) in self.a.iter().enumerate().skip(t) {
            for (j, x) in row.iter().enumerate().skip(t) {
                if !x.is_zero() && best.map_or(true, |(bi, bj)| x.abs() < self.a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        best
    }

    fn run(mut self) -> SmithForm {
        let rows = self.a.len();
        let cols = self.v.len();
        let mut diagonal = Vec::new();
        let mut t = 0;
        while t < rows.min(cols) {
            let Some((pi, pj)) = self.min_entry(t) else { break };
            self.a.swap(t, pi);
            self.swap_cols(t, pj);
            loop {
                let mut dirty = false;
                for i in t + 1..rows {
                    if self.a[i][t].is_zero() {
                        continue;
                    }
                    let q = self.a[i][t].div_floor(&self.a[t][t]);
                    self.add_row(i, t, &-q);
                    if !self.a[i][t].is_zero() {
                        self.a.swap(t, i);
                        dirty = true;
                    }
                }
                for j in t + 1..cols {
                    if self.a[t][j].is_zero() {
                        continue;
                    }
                    let q = self.a[t][j].div_floor(&self.a[t][t]);
                    self.add_col(j, t, &-q);
                    if !self.a[t][j].is_zero() {
                        self.swap_cols(t, j);
                        dirty = true;
                    }
                }
                if dirty {
                    continue;
                }
                let p = self.a[t][t].clone();
                let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !self.a[i][j].is_multiple_of(&p)));
                match bad {
                    Some(i) => self.add_row(t, i, &BigInt::one()),
                    None => break,
                }
            }
            diagonal.push(self.a[t][t].abs());
            t += 1;
        }
        SmithForm { diagonal, cols, v: self.v, v_inv: self.v_inv }
    }
}

pub fn smith_normal_form(a: &[Vec<BigInt>], cols: usize) -> SmithForm {
    SnfCalc { a: a.to_vec(), v: identity(cols), v_inv: identity(cols) }.run()
}

/// `G_ab ≅ Z^r ⊕ ⊕ Z/d_i`, with coordinates listed free part first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianizationData {
    pub free_rank: usize,
    pub torsion_divisors: Vec<BigInt>,
    /// Row `j` gives the image of generator `x_j`: `free_rank` integers,
    /// then one residue per torsion divisor.
    pub basis_change: Vec<Vec<BigInt>>,
    /// Row `c` is an exponent vector over the generators mapping to the
    /// `c`-th coordinate basis vector.
    pub section: Vec<Vec<BigInt>>,
}

impl AbelianizationData {
    pub fn num_coordinates(&self) -> usize {
        self.free_rank + self.torsion_divisors.len()
    }

    pub fn torsion_u64(&self) -> Result<Vec<u64>> {
        self.torsion_divisors
            .iter()
            .map(|d| u64::try_from(d).map_err(|_| Error::SizeGuard(format!("torsion divisor {d} too large"))))
            .collect()
    }

    /// Image of generator `j` (0-based) as (free exponents, torsion residues).
    pub fn image(&self, j: usize) -> (Vec<i64>, Vec<u64>) {
        let row = &self.basis_change[j];
        let free = row[..self.free_rank].iter().map(|x| i64::try_from(x).expect("exponent fits in i64")).collect();
        let tors = row[self.free_rank..].iter().map(|x| u64::try_from(x).expect("residue fits in u64")).collect();
        (free, tors)
    }

    /// Image of an arbitrary exponent vector.
    pub fn project(&self, exps: &[BigInt]) -> Vec<BigInt> {
        let k = self.num_coordinates();
        let mut out = vec![BigInt::zero(); k];
        for (e, row) in exps.iter().zip(&self.basis_change) {
            for (o, x) in out.iter_mut().zip(row) {
                *o += e * x;
            }
        }
        for (c, d) in self.torsion_divisors.iter().enumerate() {
            let o = &mut out[self.free_rank + c];
            *o = o.mod_floor(d);
        }
        out
    }
}

/// Abelianization of a presentation from the Smith form of its relator
/// exponent matrix.
pub fn abelianization(pres: &GroupPresentation) -> AbelianizationData {
    let m = pres.num_generators();
    let mat: Vec<Vec<BigInt>> = pres
        .exponent_matrix()
        .into_iter()
        .map(|r| r.into_iter().map(BigInt::from).collect())
        .collect();
    abelianization_of_matrix(&mat, m)
}

pub(crate) fn abelianization_of_matrix(mat: &[Vec<BigInt>], m: usize) -> AbelianizationData {
    let snf = smith_normal_form(mat, m);
    let rank = snf.diagonal.len();
    let torsion: Vec<(usize, BigInt)> = snf
        .diagonal
        .iter()
        .enumerate()
        .filter(|(_, d)| !d.is_one())
        .map(|(i, d)| (i, d.clone()))
        .collect();
    let free: Vec<usize> = (rank..m).collect();

    let basis_change = (0..m)
        .map(|j| {
            let mut row: Vec<BigInt> = free.iter().map(|&c| snf.v[j][c].clone()).collect();
            row.extend(torsion.iter().map(|(c, d)| snf.v[j][*c].mod_floor(d)));
            row
        })
        .collect();
    let section = free
        .iter()
        .chain(torsion.iter().map(|(c, _)| c))
        .map(|&c| snf.v_inv[c].clone())
        .collect();
    AbelianizationData {
        free_rank: free.len(),
        torsion_divisors: torsion.into_iter().map(|(_, d)| d).collect(),
        basis_change,
        section,
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// `H_1(G; Z_p)` with the projection of each generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModPHomology {
    pub p: u64,
    pub dim: usize,
    /// Row `j`: image of `x_j` in `Z_p^dim`.
    pub projection: Vec<Vec<u64>>,
}

pub fn mod_p_homology(pres: &GroupPresentation, p: u64) -> Result<ModPHomology> {
    if !is_prime(p) {
        return Err(Error::Invalid(format!("{p} is not prime")));
    }
    let ab = abelianization(pres);
    let pb = BigInt::from(p);
    let keep: Vec<usize> = (0..ab.free_rank)
        .chain(
            ab.torsion_divisors
                .iter()
                .enumerate()
                .filter(|(_, d)| d.is_multiple_of(&pb))
                .map(|(c, _)| ab.free_rank + c),
        )
        .collect();
    let projection = ab
        .basis_change
        .iter()
        .map(|row| keep.iter().map(|&c| u64::try_from(row[c].mod_floor(&pb)).unwrap()).collect())
        .collect();
    Ok(ModPHomology { p, dim: keep.len(), projection })
}

/// `b_1^p(G) = dim H_1(G; Z_p)`.
pub fn mod_p_h1(pres: &GroupPresentation, p: u64) -> Result<usize> {
    Ok(mod_p_homology(pres, p)?.dim)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{builtin_group, parse_presentation};

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn trefoil_is_z() {
        let ab = abelianization(&builtin_group("trefoil", &[]).unwrap());
        assert_eq!(ab.free_rank, 1);
        assert!(ab.torsion_divisors.is_empty());
    }

    #[test]
    fn klein_bottle() {
        let ab = abelianization(&builtin_group("klein_bottle", &[]).unwrap());
        assert_eq!(ab.free_rank, 1);
        assert_eq!(ab.torsion_divisors, ints(&[2]));
        // t is free, a is the torsion class
        assert_eq!(ab.image(0), (vec![1], vec![0]));
        assert_eq!(ab.image(1).1, vec![1]);
    }

    #[test]
    fn dihedral() {
        let ab = abelianization(&builtin_group("dihedral_inf", &[]).unwrap());
        assert_eq!(ab.free_rank, 0);
        assert_eq!(ab.torsion_divisors, ints(&[2, 2]));
    }

    #[test]
    fn divisibility_chain_is_enforced() {
        let g = parse_presentation("<a,b | a^4, b^6>").unwrap();
        let ab = abelianization(&g);
        assert_eq!(ab.torsion_divisors, ints(&[2, 12]));
    }

    #[test]
    fn section_inverts_projection() {
        let g = parse_presentation("<a,b,c | a^2 b^4 c^6, a b^-3 c^2, c^5 a>").unwrap();
        let ab = abelianization(&g);
        for (c, s) in ab.section.iter().enumerate() {
            let img = ab.project(s);
            for (k, x) in img.iter().enumerate() {
                assert_eq!(x, &BigInt::from((k == c) as i64), "coordinate {c}");
            }
        }
    }

    #[test]
    fn mod_p() {
        let heis = builtin_group("heisenberg", &[]).unwrap();
        assert_eq!(mod_p_h1(&heis, 2).unwrap(), 2);
        assert_eq!(mod_p_h1(&builtin_group("free", &[4]).unwrap(), 5).unwrap(), 4);
        assert_eq!(mod_p_h1(&builtin_group("klein_bottle", &[]).unwrap(), 2).unwrap(), 2);
        assert_eq!(mod_p_h1(&builtin_group("klein_bottle", &[]).unwrap(), 3).unwrap(), 1);
        assert!(mod_p_h1(&heis, 4).is_err());
    }
}
