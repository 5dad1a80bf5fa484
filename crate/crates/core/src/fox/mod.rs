//! Fox calculus and presentations of the Alexander module `A(G)` and the
//! Alexander invariant `B(G) = G'/G''`.
//!
//! Convention: `∂x_i/∂x_j = δ_ij`, `∂x_i⁻¹/∂x_j = -δ_ij x_i⁻¹`, and
//! `∂(uv)/∂x = ∂u/∂x + u ∂v/∂x`. The Alexander matrix has one row per
//! generator and one column per relator.

mod koszul;
mod modp;
mod univariate;

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

pub use koszul::{b_presentation_koszul, koszul_boundary, pair_index, pair_names};
pub use modp::{b_mod_p, FiniteModule};
pub use univariate::{b_univariate, smith_over_qt, UnivariateNormalForm};

use crate::abelian::{abelianization, mod_p_homology};
use crate::error::{Error, Result};
use crate::presentation::{FreeWord, GroupPresentation};
use crate::ring::{Flavor, GroupAlgebraMatrix, Monomial, Ring, RingElem};

pub use crate::modtools::ModulePresentation;

/// Coefficient flavor of the Alexander matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FoxFlavor {
    /// `Z[G_ab]`.
    Ab,
    /// `Z[G_abf]`, torsion killed.
    Abf,
    /// `Z_p[H_1(G; Z_p)]`.
    ModP(u64),
}

/// Ring and generator images for a flavor.
pub fn flavor_ring(pres: &GroupPresentation, flavor: FoxFlavor) -> Result<(Ring, Vec<Monomial>)> {
    match flavor {
        FoxFlavor::Ab | FoxFlavor::Abf => {
            let ab = abelianization(pres);
            let torsion = if flavor == FoxFlavor::Ab { ab.torsion_u64()? } else { Vec::new() };
            let ring = Ring::laurent(ab.free_rank, torsion.clone(), Flavor::Int);
            let images = (0..pres.num_generators())
                .map(|j| {
                    let (free, tors) = ab.image(j);
                    let mut m = free;
                    if flavor == FoxFlavor::Ab {
                        m.extend(tors.iter().map(|&x| x as i64));
                    }
                    m
                })
                .collect();
            Ok((ring, images))
        }
        FoxFlavor::ModP(p) => {
            let h = mod_p_homology(pres, p)?;
            let ring = Ring::laurent(0, vec![p; h.dim], Flavor::ModP(p));
            let images = h.projection.iter().map(|r| r.iter().map(|&x| x as i64).collect()).collect();
            Ok((ring, images))
        }
    }
}

/// Image of a word under the abelianization map given by `images`.
pub fn word_image(word: &FreeWord, ring: &Ring, images: &[Monomial]) -> Monomial {
    let mut m = vec![0i64; ring.nvars()];
    for &(g, e) in word.letters() {
        for (x, y) in m.iter_mut().zip(&images[g - 1]) {
            *x += e * y;
        }
    }
    m
}

/// All abelianized Fox derivatives `∂w/∂x_j`, `j = 1..m`.
pub fn fox_gradient(word: &FreeWord, ring: &Ring, images: &[Monomial]) -> Vec<RingElem> {
    let m = images.len();
    let mut acc: Vec<BTreeMap<Monomial, BigRational>> = vec![BTreeMap::new(); m];
    let mut prefix = vec![0i64; ring.nvars()];
    for (g, sign) in word.unit_letters() {
        let img = &images[g - 1];
        if sign > 0 {
            *acc[g - 1].entry(prefix.clone()).or_insert_with(BigRational::zero) += BigRational::one();
            for (x, y) in prefix.iter_mut().zip(img) {
                *x += y;
            }
        } else {
            for (x, y) in prefix.iter_mut().zip(img) {
                *x -= y;
            }
            *acc[g - 1].entry(prefix.clone()).or_insert_with(BigRational::zero) -= BigRational::one();
        }
    }
    acc.into_iter().map(|t| ring.from_terms(t)).collect()
}

/// Checks `Σ_j ∂r/∂x_j (x_j - 1) = r - 1` in the group algebra.
pub(crate) fn check_fundamental_identity(
    word: &FreeWord,
    grad: &[RingElem],
    ring: &Ring,
    images: &[Monomial],
) -> Result<()> {
    let lhs = ring.sum(
        grad.iter()
            .zip(images)
            .map(|(d, img)| ring.mul(d, &ring.sub(&ring.monomial(img.clone(), BigRational::one()), &ring.one())))
            .collect::<Vec<_>>()
            .iter(),
    );
    let rhs = ring.sub(&ring.monomial(word_image(word, ring, images), BigRational::one()), &ring.one());
    if lhs != rhs {
        return Err(Error::Internal(format!(
            "fundamental Fox identity fails for relator {word:?}: {} != {}",
            ring.format(&lhs),
            ring.format(&rhs)
        )));
    }
    Ok(())
}

/// The Alexander matrix in the requested flavor: entry `(j, i)` is the image
/// of `∂r_i/∂x_j`. Its cokernel presents `A(G)` (resp. its torsion-free or
/// mod-p variant).
pub fn fox_matrix(pres: &GroupPresentation, flavor: FoxFlavor) -> Result<GroupAlgebraMatrix> {
    let (ring, images) = flavor_ring(pres, flavor)?;
    fox_matrix_with(pres, &ring, &images)
}

pub(crate) fn fox_matrix_with(pres: &GroupPresentation, ring: &Ring, images: &[Monomial]) -> Result<GroupAlgebraMatrix> {
    let m = pres.num_generators();
    let mut cols = Vec::with_capacity(pres.relators().len());
    for r in pres.relators() {
        if !word_image(r, ring, images).iter().zip(ring_orders(ring)).all(|(e, d)| d.map_or(*e == 0, |d| e % d == 0)) {
            return Err(Error::Internal(format!("relator {r:?} does not vanish in the abelianization")));
        }
        let grad = fox_gradient(r, ring, images);
        check_fundamental_identity(r, &grad, ring, images)?;
        cols.push(grad);
    }
    Ok(GroupAlgebraMatrix::from_columns(ring.clone(), m, &cols))
}

fn ring_orders(ring: &Ring) -> Vec<Option<i64>> {
    (0..ring.nfree).map(|_| None).chain(ring.torsion.iter().map(|&d| Some(d as i64))).collect()
}

/// `A(G)` (or a variant) as a module presentation on generators `x_j`.
pub fn alexander_module(pres: &GroupPresentation, flavor: FoxFlavor) -> Result<ModulePresentation> {
    let mat = fox_matrix(pres, flavor)?;
    Ok(ModulePresentation::from_matrix(&mat, pres.names().to_vec()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{builtin_group, parse_presentation};

    #[test]
    fn free_group_has_no_columns() {
        let m = fox_matrix(&builtin_group("free", &[3]).unwrap(), FoxFlavor::Abf).unwrap();
        assert_eq!((m.nrows, m.ncols), (3, 0));
    }

    #[test]
    fn trefoil_column() {
        let g = builtin_group("trefoil", &[]).unwrap();
        let m = fox_matrix(&g, FoxFlavor::Ab).unwrap();
        assert_eq!(m.ncols, 1);
        let r = &m.ring;
        // x y x = y x y: both entries are ±(1 - t + t^2)
        for row in &m.entries {
            let s = r.format(&row[0]);
            assert!(s == "t^2 - t + 1" || s == "-t^2 + t - 1", "{s}");
        }
    }

    #[test]
    fn klein_bottle_entries() {
        let g = builtin_group("klein_bottle", &[]).unwrap();
        let m = fox_matrix(&g, FoxFlavor::Ab).unwrap();
        assert_eq!(m.ring.describe(), "ZZ[t^±1,s]/(s^2-1)");
        let f = m.format_entries();
        // r = t a t^-1 a: ∂/∂t = 1 - t a t^-1 = 1 - s, ∂/∂a = t + t a t^-1 = t + s
        assert_eq!(f, vec![vec!["-s + 1".to_string()], vec!["t + s".to_string()]]);
    }

    #[test]
    fn commutator_gradient() {
        let g = parse_presentation("<x1,x2 | [x1,x2]>").unwrap();
        let m = fox_matrix(&g, FoxFlavor::Ab).unwrap();
        assert_eq!(m.format_entries(), vec![vec!["-t2 + 1".to_string()], vec!["t1 - 1".to_string()]]);
    }

    #[test]
    fn mod_p_flavor() {
        let g = builtin_group("free", &[2]).unwrap();
        let m = fox_matrix(&g, FoxFlavor::ModP(2)).unwrap();
        assert_eq!(m.ring.torsion, vec![2, 2]);
        assert!(fox_matrix(&g, FoxFlavor::ModP(6)).is_err());
    }
}
