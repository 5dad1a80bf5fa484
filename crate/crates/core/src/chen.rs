//! Chen ranks `θ_n = rank gr_n(G/G'')` from the Alexander invariant, and
//! their mod-p analogues from the finite module `B_p(G)`.
//!
//! For `n ≥ 2`, `θ_n = dim gr_{n−2}(B(G) ⊗ Q)` for the augmentation
//! filtration. Commutator-relator presentations use the Koszul presentation
//! of `B`. Other presentations go through the Crowell sequence
//! `0 → B → A → I → 0`, read degreewise as
//! `θ_n = dim gr_{n−1}(A ⊗ Q) − dim gr_n(Q[G_ab])`.

use crate::abelian::{abelianization, mod_p_h1};
use crate::error::{Error, Result};
use crate::fox::{alexander_module, b_mod_p, b_presentation_koszul, FoxFlavor};
use crate::modtools::{graded_dims_truncated, GradedDims};
use crate::presentation::GroupPresentation;
use crate::ring::{Flavor, Ring};

pub const MAX_CHEN_N: usize = 20;

/// Which route computed the ranks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChenMethod {
    Koszul,
    Crowell,
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 || n > MAX_CHEN_N {
        return Err(Error::SizeGuard(format!("Chen ranks need 1 <= N <= {MAX_CHEN_N}, got {n}")));
    }
    Ok(())
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// `θ_1, …, θ_N` (`start = 1`), choosing the Koszul route when possible.
pub fn chen_ranks(pres: &GroupPresentation, n: usize) -> Result<GradedDims> {
    let method = if pres.is_commutator_relators() { ChenMethod::Koszul } else { ChenMethod::Crowell };
    chen_ranks_with(pres, n, method)
}

pub fn chen_ranks_with(pres: &GroupPresentation, n: usize, method: ChenMethod) -> Result<GradedDims> {
    check_n(n)?;
    let b1 = abelianization(pres).free_rank;
    let mut dims = vec![b1];
    if n >= 2 {
        match method {
            ChenMethod::Koszul => {
                let b = b_presentation_koszul(pres)?;
                let rat = Ring::laurent(b.ring.nfree, b.ring.torsion.clone(), Flavor::Rat);
                dims.extend(graded_dims_truncated(&b.coerce(&rat), n)?.dims);
            }
            ChenMethod::Crowell => {
                let a = alexander_module(pres, FoxFlavor::Ab)?;
                let rat = Ring::laurent(a.ring.nfree, a.ring.torsion.clone(), Flavor::Rat);
                let gr_a = graded_dims_truncated(&a.coerce(&rat), n + 1)?;
                let r = rat.nfree;
                for k in 2..=n {
                    let ga = gr_a.dims[k - 1];
                    let gi = binomial(r + k - 1, k);
                    let theta = ga.checked_sub(gi).ok_or_else(|| {
                        Error::Internal(format!("Crowell sequence gives negative θ_{k}: {ga} - {gi}"))
                    })?;
                    dims.push(theta);
                }
            }
        }
    }
    Ok(GradedDims { start: 1, dims })
}

/// `θ^p_1, …, θ^p_N` (`start = 1`) from the augmentation filtration of
/// `B_p(G)`, which terminates because `I` is nilpotent.
pub fn modp_chen_ranks(pres: &GroupPresentation, p: u64, n: usize) -> Result<GradedDims> {
    check_n(n)?;
    let b1 = mod_p_h1(pres, p)?;
    let mut dims = vec![b1];
    if n >= 2 {
        let b = b_mod_p(pres, p)?;
        dims.extend(b.augmentation_filtration_quotients(n - 1));
    }
    Ok(GradedDims { start: 1, dims })
}
