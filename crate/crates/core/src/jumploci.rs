//! Characteristic varieties `V_k`, their restriction `W_k` to the identity
//! component, and the Alexander varieties `Y_k = supp Λ^k(B ⊗ C)`.
//!
//! Ideals follow the Fitting convention of [`crate::modtools`]:
//! `V_k = V(Fitt_{k+1}(A))` and `Y_k = V(Fitt_k(B))`, both valid away from
//! the trivial character. Membership of a single point is decided by the
//! rank of the evaluated Fox matrix instead, which is also correct at 1.

use crate::abelian::abelianization;
use crate::error::{Error, Result};
use crate::fox::{alexander_module, b_presentation_koszul, b_univariate, fox_matrix, FoxFlavor};
use crate::modtools::{
    eval_at_character, exterior_power_presentation, fitting_ideal, quotient_is_finite, rank_at_character, Ideal,
    ModulePresentation,
};
use crate::presentation::GroupPresentation;
use crate::ring::{Flavor, Ring};

pub use crate::modtools::CharacterPoint;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum JumpFlavor {
    /// `V_k`, from `A(G)` over `C[G_ab]`.
    V,
    /// `W_k`, from the torsion-free Alexander module over `C[G_abf]`.
    W,
    /// `Y_k`, from `B(G)`.
    Y,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Finiteness {
    Finite,
    Infinite,
}

fn check_depth(k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::Invalid("depth k must be at least 1".into()));
    }
    Ok(())
}

fn rational(m: &ModulePresentation) -> ModulePresentation {
    let ring = Ring::laurent(m.ring.nfree, m.ring.torsion.clone(), Flavor::Rat);
    m.coerce(&ring)
}

/// `B(G) ⊗ Q`: the Koszul presentation for commutator relators, otherwise
/// the univariate normal form when `G_ab = Z`.
pub fn alexander_invariant_rational(pres: &GroupPresentation) -> Result<ModulePresentation> {
    if pres.is_commutator_relators() {
        return Ok(rational(&b_presentation_koszul(pres)?));
    }
    b_univariate(pres).map(|nf| nf.module).map_err(|_| {
        Error::Precondition(
            "Alexander varieties need commutator relators (Koszul presentation of B) or G_ab = Z".into(),
        )
    })
}

/// Defining ideal of `V_k`, `W_k` or `Y_k` over the rational group algebra.
pub fn jump_ideal(pres: &GroupPresentation, k: usize, flavor: JumpFlavor) -> Result<Ideal> {
    check_depth(k)?;
    match flavor {
        JumpFlavor::V => fitting_ideal(&rational(&alexander_module(pres, FoxFlavor::Ab)?), k + 1),
        JumpFlavor::W => fitting_ideal(&rational(&alexander_module(pres, FoxFlavor::Abf)?), k + 1),
        JumpFlavor::Y => fitting_ideal(&alexander_invariant_rational(pres)?, k),
    }
}

/// Whether every generator of `ideal` vanishes at `chi`.
pub fn ideal_vanishes_at(ideal: &Ideal, chi: &CharacterPoint) -> Result<bool> {
    for g in &ideal.generators {
        if !eval_at_character(&ideal.ring, g, chi)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `dim H_1(G; C_ρ) ≥ k`, tested as `rank ∂_2(ρ) + rank ∂_1(ρ) ≤ m − k`.
/// For `W` only the free coordinates of `ρ` are used.
pub fn cv_membership(pres: &GroupPresentation, chi: &CharacterPoint, k: usize, flavor: JumpFlavor) -> Result<bool> {
    check_depth(k)?;
    let (mat, chi) = match flavor {
        JumpFlavor::V => (fox_matrix(pres, FoxFlavor::Ab)?, chi.clone()),
        JumpFlavor::W => {
            let ab = abelianization(pres);
            if chi.free.len() != ab.free_rank {
                return Err(Error::Invalid(format!(
                    "character has {} free coordinates, b_1 = {}",
                    chi.free.len(),
                    ab.free_rank
                )));
            }
            (fox_matrix(pres, FoxFlavor::Abf)?, CharacterPoint { torsion: Vec::new(), ..chi.clone() })
        }
        JumpFlavor::Y => {
            return Err(Error::Invalid("cv_membership takes flavor V or W; use jump_ideal for Y".into()))
        }
    };
    chi.validate(&mat.ring)?;
    let m = pres.num_generators();
    let r2 = rank_at_character(&mat, &chi)?;
    let r1 = usize::from(!chi.is_identity());
    Ok(r1 + r2 + k <= m)
}

/// Whether `Y_k` is finite, i.e. `Λ^k(B ⊗ C)` is finite-dimensional: the
/// quotient by `Fitt_1(Λ^k B)` is tested for Krull dimension zero.
pub fn finiteness_test(pres: &GroupPresentation, k: usize) -> Result<Finiteness> {
    check_depth(k)?;
    let b = alexander_invariant_rational(pres)?;
    let ext = exterior_power_presentation(&b, k)?;
    let ideal = fitting_ideal(&ext, 1)?;
    Ok(if quotient_is_finite(&ideal)? { Finiteness::Finite } else { Finiteness::Infinite })
}
