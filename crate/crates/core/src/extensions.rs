//! Split extensions `1 → K → G → Q → 1`: the monodromy action on
//! `H_1(K)`, exactness criteria in the three coefficient flavors,
//! Bestvina–Brady kernels of right-angled Artin groups on trees, and
//! verification of the Chen-rank transfer statements.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::abelian::{abelianization, is_prime, AbelianizationData};
use crate::chen::{chen_ranks, modp_chen_ranks};
use crate::error::{Error, Result};
use crate::modtools::GradedDims;
use crate::presentation::{
    free_abelian, parse_word, resolve_group, semidirect_presentation, FreeWord, Graph, GroupPresentation, SplitExtensionData,
};
use crate::ring::{Field, Rationals};

/// Coefficients for the action on `H_1(K)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Coeff {
    /// On `K_ab = Z^r ⊕ ⊕ Z/d_i`, coordinates free part first; torsion rows
    /// are reduced modulo their divisor.
    Int,
    /// On `H_1(K; Q) = Q^r` (the free block of the integral matrix).
    Rat,
    /// On `H_1(K; Z_p)`.
    ModP(u64),
}

/// Exactness flavor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Exactness {
    Ab,
    Abf,
    P(u64),
}

/// Square matrix with integer entries acting on column vectors.
pub type ActionMatrix = Vec<Vec<BigInt>>;

fn exponent_vector(w: &FreeWord, m: usize) -> Vec<BigInt> {
    (1..=m).map(|g| BigInt::from(w.exponent_sum(g))).collect()
}

/// `φ_j` applied to an exponent vector of `K`.
fn apply_action(images: &[FreeWord], v: &[BigInt], m: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); m];
    for (c, w) in v.iter().zip(images) {
        if c.is_zero() {
            continue;
        }
        for (o, e) in out.iter_mut().zip(exponent_vector(w, m)) {
            *o += c * e;
        }
    }
    out
}

fn integral_actions(ext: &SplitExtensionData, ab: &AbelianizationData) -> Result<Vec<ActionMatrix>> {
    let m = ext.kernel.num_generators();
    let n = ab.num_coordinates();
    let mut out = Vec::new();
    for (j, images) in ext.action.iter().enumerate() {
        // the action must preserve the relators of K up to abelianization
        for r in ext.kernel.relators() {
            let img = ab.project(&apply_action(images, &exponent_vector(r, m), m));
            if img.iter().any(|x| !x.is_zero()) {
                return Err(Error::Invalid(format!(
                    "action of quotient generator {} does not preserve the relators of K",
                    j + 1
                )));
            }
        }
        let mut mat = vec![vec![BigInt::zero(); n]; n];
        for (c, s) in ab.section.iter().enumerate() {
            let col = ab.project(&apply_action(images, s, m));
            if c >= ab.free_rank && col[..ab.free_rank].iter().any(|x| !x.is_zero()) {
                return Err(Error::Invalid("action sends torsion to infinite order elements".into()));
            }
            for (row, x) in col.into_iter().enumerate() {
                mat[row][c] = x;
            }
        }
        let free: Vec<Vec<BigRational>> = mat[..ab.free_rank]
            .iter()
            .map(|r| r[..ab.free_rank].iter().map(|x| BigRational::from_integer(x.clone())).collect())
            .collect();
        let det = determinant_q(&free);
        if det.abs() != BigRational::one() {
            return Err(Error::Invalid(format!(
                "abelianized action of quotient generator {} is not invertible (determinant {det})",
                j + 1
            )));
        }
        out.push(mat);
    }
    Ok(out)
}

fn determinant_q(a: &[Vec<BigRational>]) -> BigRational {
    let f = Rationals;
    let n = a.len();
    let mut a = a.to_vec();
    let mut det = BigRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else { return BigRational::zero() };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= &a[c][c];
        let inv = f.inv(&a[c][c]);
        for r in c + 1..n {
            if a[r][c].is_zero() {
                continue;
            }
            let factor = &a[r][c] * &inv;
            let pivot = a[c].clone();
            for (x, y) in a[r].iter_mut().zip(&pivot) {
                *x -= &factor * y;
            }
        }
    }
    det
}

/// Matrices of the abelianized action of each generator of `Q`.
pub fn action_on_h1(ext: &SplitExtensionData, coeff: Coeff) -> Result<Vec<ActionMatrix>> {
    ext.validate_shape()?;
    let ab = abelianization(&ext.kernel);
    let int = integral_actions(ext, &ab)?;
    match coeff {
        Coeff::Int => Ok(int),
        Coeff::Rat => Ok(int
            .into_iter()
            .map(|m| m[..ab.free_rank].iter().map(|r| r[..ab.free_rank].to_vec()).collect())
            .collect()),
        Coeff::ModP(p) => {
            if !is_prime(p) {
                return Err(Error::Invalid(format!("{p} is not prime")));
            }
            let pb = BigInt::from(p);
            // coordinates surviving ⊗ Z_p: free ones and torsion divisible by p
            let keep: Vec<usize> = (0..ab.free_rank)
                .chain(
                    ab.torsion_divisors
                        .iter()
                        .enumerate()
                        .filter(|(_, d)| d.is_multiple_of(&pb))
                        .map(|(c, _)| ab.free_rank + c),
                )
                .collect();
            Ok(int
                .into_iter()
                .map(|m| keep.iter().map(|&r| keep.iter().map(|&c| m[r][c].mod_floor(&pb)).collect()).collect())
                .collect())
        }
    }
}

fn is_identity(m: &ActionMatrix) -> bool {
    m.iter().enumerate().all(|(i, r)| r.iter().enumerate().all(|(j, x)| if i == j { x.is_one() } else { x.is_zero() }))
}

/// Whether `Q` acts trivially on `H_1(K)` in the given flavor, which for
/// split extensions is exactly ab-, abf- or p-exactness.
pub fn exactness_check(ext: &SplitExtensionData, flavor: Exactness) -> Result<bool> {
    let coeff = match flavor {
        Exactness::Ab => Coeff::Int,
        Exactness::Abf => Coeff::Rat,
        Exactness::P(p) => Coeff::ModP(p),
    };
    Ok(action_on_h1(ext, coeff)?.iter().all(is_identity))
}

/// `K = N_Γ` for a tree `Γ`: free on the edges, with `g_uv = u v⁻¹`; the
/// quotient `Z` is generated by vertex 1. Conjugating `g_uv` by vertex 1
/// gives `h_u g_uv h_u⁻¹`, where `h_u` is the product of edge generators
/// along the path from 1 to `u` (because `u` and `v` commute).
pub fn bestvina_brady_tree(tree: &Graph) -> Result<SplitExtensionData> {
    if tree.n < 2 || !tree.is_tree() {
        return Err(Error::Invalid("bestvina_brady_tree needs a tree with at least 2 vertices".into()));
    }
    let edges = &tree.edges;
    let edge_gen = |a: usize, b: usize| -> FreeWord {
        match edges.iter().position(|&e| e == (a, b)) {
            Some(i) => FreeWord::generator(i + 1),
            None => FreeWord::generator(edges.iter().position(|&e| e == (b, a)).unwrap() + 1).inverse(),
        }
    };
    // h_u for every vertex, by depth-first search from 1
    let mut h: Vec<Option<FreeWord>> = vec![None; tree.n + 1];
    h[1] = Some(FreeWord::identity());
    let mut stack = vec![1];
    while let Some(v) = stack.pop() {
        let hv = h[v].clone().unwrap();
        for w in tree.neighbors(v) {
            if h[w].is_none() {
                h[w] = Some(hv.mul(&edge_gen(v, w)));
                stack.push(w);
            }
        }
    }
    let names: Vec<String> = edges.iter().map(|(u, v)| format!("g{u}_{v}")).collect();
    let kernel = GroupPresentation::new(names, vec![], format!("N({tree})"))?;
    let quotient = GroupPresentation::new(vec!["s".into()], vec![], "Z")?;
    let images = edges
        .iter()
        .enumerate()
        .map(|(i, &(u, _))| FreeWord::generator(i + 1).conjugate(h[u].as_ref().unwrap()))
        .collect();
    SplitExtensionData::new(kernel, quotient, vec![images])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// `θ_n(K) = θ_n(G)` for `n ≥ 2` is asserted and was checked.
    EqualFrom2,
    /// Only `θ_n(K) ≤ θ_n(G)` is expected; the table is reported.
    Leq,
    /// No comparison is claimed (mod-p table outside the hypotheses).
    ReportOnly,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::EqualFrom2 => "EQUAL_FROM_2",
            Verdict::Leq => "LEQ",
            Verdict::ReportOnly => "REPORT_ONLY",
        }
    }
}

/// Mod-p part of an [`ExtensionReport`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModPTransfer {
    pub p: u64,
    pub actions: Vec<ActionMatrix>,
    pub exact_split: bool,
    pub theta_kernel: GradedDims,
    pub theta_group: GradedDims,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionReport {
    pub actions_int: Vec<ActionMatrix>,
    pub actions_rat: Vec<ActionMatrix>,
    pub ab_exact_split: bool,
    pub abf_exact_split: bool,
    pub quotient_abelian: bool,
    pub theta_kernel: GradedDims,
    pub theta_group: GradedDims,
    pub verdict: Verdict,
    pub modp: Option<ModPTransfer>,
    /// Degrees `n ≥ 2` where an asserted equality failed.
    pub failures: Vec<String>,
}

impl ExtensionReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn compare(a: &GradedDims, b: &GradedDims, tag: &str, failures: &mut Vec<String>) {
    for (i, (x, y)) in a.dims.iter().zip(&b.dims).enumerate() {
        let n = a.start + i;
        if n >= 2 && x != y {
            failures.push(format!("{tag}_{n}(K) = {x} but {tag}_{n}(G) = {y}"));
        }
    }
}

/// Chen-rank tables of `K` and `G = K ⋊ Q` for `n ≤ N`, with the verdict
/// the extension criteria allow. With `p`, the mod-p tables are added and
/// compared when the split is p-exact and `Q` is elementary abelian of
/// exponent `p`.
pub fn verify_transfer(ext: &SplitExtensionData, n: usize, p: Option<u64>) -> Result<ExtensionReport> {
    let actions_int = action_on_h1(ext, Coeff::Int)?;
    let actions_rat = action_on_h1(ext, Coeff::Rat)?;
    let ab_exact_split = actions_int.iter().all(is_identity);
    let abf_exact_split = actions_rat.iter().all(is_identity);
    let quotient_abelian = ext.quotient_is_abelian();
    let g = semidirect_presentation(ext)?;
    let theta_kernel = chen_ranks(&ext.kernel, n)?;
    let theta_group = chen_ranks(&g, n)?;
    let mut failures = Vec::new();
    let verdict = if ab_exact_split && quotient_abelian {
        compare(&theta_kernel, &theta_group, "theta", &mut failures);
        Verdict::EqualFrom2
    } else {
        Verdict::Leq
    };
    let modp = match p {
        None => None,
        Some(p) => {
            let actions = action_on_h1(ext, Coeff::ModP(p))?;
            let exact_split = actions.iter().all(is_identity);
            let theta_kernel = modp_chen_ranks(&ext.kernel, p, n)?;
            let theta_group = modp_chen_ranks(&g, p, n)?;
            let qab = abelianization(&ext.quotient);
            let elementary =
                quotient_abelian && qab.free_rank == 0 && qab.torsion_divisors.iter().all(|d| *d == BigInt::from(p));
            let verdict = if exact_split && elementary {
                compare(&theta_kernel, &theta_group, "theta_p", &mut failures);
                Verdict::EqualFrom2
            } else {
                Verdict::ReportOnly
            };
            Some(ModPTransfer { p, actions, exact_split, theta_kernel, theta_group, verdict })
        }
    };
    Ok(ExtensionReport {
        actions_int,
        actions_rat,
        ab_exact_split,
        abf_exact_split,
        quotient_abelian,
        theta_kernel,
        theta_group,
        verdict,
        modp,
        failures,
    })
}

/// Splits at commas outside brackets and parentheses.
fn split_top_level(s: &str) -> Vec<&str> {
    let (mut depth, mut start, mut out) = (0i32, 0, Vec::new());
    let mut prev = ' ';
    for (i, c) in s.char_indices() {
        let arrow = prev == '-';
        prev = c;
        match c {
            '[' | '(' | '<' => depth += 1,
            '>' if arrow => {}
            ']' | ')' | '>' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out.into_iter().map(str::trim).filter(|x| !x.is_empty()).collect()
}

/// Reads a split extension. Accepted forms:
///
/// ```text
/// tree:path:3              Bestvina–Brady data for a tree
/// klein_bottle             Z ⋊ Z with t a t⁻¹ = a⁻¹
/// kernel: <a,b | >         explicit data, lines or `;` separated;
/// quotient: <t | >         one action line per quotient generator,
/// t: b -> a b a^-1         unlisted kernel generators are fixed
/// ```
pub fn parse_extension(text: &str) -> Result<SplitExtensionData> {
    let t = text.trim();
    if let Some(graph) = t.strip_prefix("tree:") {
        return bestvina_brady_tree(&graph.parse()?);
    }
    if t == "klein_bottle" {
        return Ok(klein_bottle_data());
    }
    let lines: Vec<&str> = t
        .lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .flat_map(|l| l.split(';'))
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .collect();
    let (mut kernel, mut quotient, mut actions) = (None, None, Vec::new());
    for line in lines {
        let (key, value) = line
            .split_once(':')
            .ok_or_else(|| Error::Invalid(format!("extension line `{line}` needs the form key: value")))?;
        match key.trim() {
            "kernel" => kernel = Some(resolve_group(value)?),
            "quotient" => quotient = Some(resolve_group(value)?),
            q => actions.push((q.to_string(), value.to_string())),
        }
    }
    let kernel = kernel.ok_or_else(|| Error::Invalid("extension needs a kernel line".into()))?;
    let quotient = quotient.ok_or_else(|| Error::Invalid("extension needs a quotient line".into()))?;
    let names = kernel.names().to_vec();
    let mut action: Vec<Vec<FreeWord>> =
        vec![(1..=names.len()).map(FreeWord::generator).collect(); quotient.num_generators()];
    for (q, spec) in actions {
        let j = quotient
            .names()
            .iter()
            .position(|n| *n == q)
            .ok_or_else(|| Error::Invalid(format!("`{q}` is not a generator of the quotient")))?;
        for item in split_top_level(&spec) {
            let (from, to) = item
                .split_once("->")
                .ok_or_else(|| Error::Invalid(format!("action entry `{item}` needs the form a -> word")))?;
            let i = names
                .iter()
                .position(|n| n == from.trim())
                .ok_or_else(|| Error::Invalid(format!("`{}` is not a generator of the kernel", from.trim())))?;
            action[j][i] = parse_word(to, &names)?;
        }
    }
    SplitExtensionData::new(kernel, quotient, action)
}

/// Text form accepted by [`parse_extension`].
pub fn format_extension(ext: &SplitExtensionData) -> String {
    let names = ext.kernel.names();
    let mut out = format!("kernel: {}; quotient: {}", ext.kernel.canonical(), ext.quotient.canonical());
    for (q, images) in ext.quotient.names().iter().zip(&ext.action) {
        let entries: Vec<String> =
            names.iter().zip(images).map(|(n, w)| format!("{n} -> {}", w.display_with(names))).collect();
        out.push_str(&format!("; {q}: {}", entries.join(", ")));
    }
    out
}

/// Klein bottle data `Z ⋊ Z`, `t a t⁻¹ = a⁻¹`.
pub fn klein_bottle_data() -> SplitExtensionData {
    let k = GroupPresentation::new(vec!["a".into()], vec![], "Z").unwrap();
    let q = GroupPresentation::new(vec!["t".into()], vec![], "Z").unwrap();
    SplitExtensionData::new(k, q, vec![vec![FreeWord::generator(1).inverse()]]).unwrap()
}

/// Random reduced word of length `len` in `m` generators.
fn random_word<R: Rng>(rng: &mut R, m: usize, len: usize) -> FreeWord {
    let mut letters: Vec<(usize, i64)> = Vec::with_capacity(len);
    while letters.len() < len {
        let g = rng.gen_range(1..=m);
        let e = if rng.gen_bool(0.5) { 1 } else { -1 };
        if letters.last() == Some(&(g, -e)) {
            continue;
        }
        letters.push((g, e));
    }
    FreeWord::new(letters)
}

/// `F_m ⋊ Z^s` where each generator of `Z^s` acts by conjugation by a
/// power of one word `c = u_1 ⋯ u_k` (`k ≤ 3`). The conjugators commute,
/// so the actions commute, and every instance is ab-exact.
pub fn random_inner_extension<R: Rng>(rng: &mut R, m: usize, s: usize) -> SplitExtensionData {
    let k = rng.gen_range(1..=3);
    let mut c = FreeWord::identity();
    for _ in 0..k {
        let len = rng.gen_range(1..=3);
        c = c.mul(&random_word(rng, m, len));
    }
    let kernel = GroupPresentation::with_generators(m, vec![], format!("F{m}")).unwrap();
    let quotient = free_abelian(s);
    let action = (0..s)
        .map(|_| {
            let e = rng.gen_range(-2..=2);
            let w = c.pow(e);
            (1..=m).map(|i| FreeWord::generator(i).conjugate(&w)).collect()
        })
        .collect();
    SplitExtensionData::new(kernel, quotient, action).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn int(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn extension_text_round_trip() {
        let ext = parse_extension("kernel: <a,b | >\nquotient: <t | >\nt: b -> a b a^-1 # inner\n").unwrap();
        assert_eq!(ext.action[0], vec![FreeWord::generator(1), parse_word("a b a^-1", ext.kernel.names()).unwrap()]);
        assert!(exactness_check(&ext, Exactness::Ab).unwrap());
        let text = format_extension(&ext);
        let back = parse_extension(&text).unwrap();
        assert_eq!(format_extension(&back), text);
        assert_eq!(back.action, ext.action);
        assert_eq!(parse_extension("klein_bottle").unwrap(), klein_bottle_data());
        assert_eq!(parse_extension("tree:path:3").unwrap().kernel.num_generators(), 2);
        assert!(parse_extension("kernel: <a | >; quotient: <t | >; s: a -> a").is_err());
        let comm = parse_extension("kernel: <a,b | >; quotient: <t | >; t: a -> [a,b] a [b,a], b -> b").unwrap();
        assert!(exactness_check(&comm, Exactness::Ab).unwrap());
    }

    #[test]
    fn klein_actions() {
        let ext = klein_bottle_data();
        assert_eq!(action_on_h1(&ext, Coeff::Int).unwrap(), vec![vec![vec![int(-1)]]]);
        assert_eq!(action_on_h1(&ext, Coeff::ModP(2)).unwrap(), vec![vec![vec![int(1)]]]);
        assert!(!exactness_check(&ext, Exactness::Ab).unwrap());
        assert!(!exactness_check(&ext, Exactness::Abf).unwrap());
        assert!(exactness_check(&ext, Exactness::P(2)).unwrap());
        assert!(!exactness_check(&ext, Exactness::P(3)).unwrap());
    }

    #[test]
    fn triangular_action() {
        let k = GroupPresentation::with_generators(2, vec![], "F2").unwrap();
        let q = GroupPresentation::with_generators(1, vec![], "Z").unwrap();
        let (a, b) = (FreeWord::generator(1), FreeWord::generator(2));
        let ext = SplitExtensionData::new(k, q, vec![vec![a.clone(), a.mul(&b)]]).unwrap();
        let m = action_on_h1(&ext, Coeff::Int).unwrap();
        assert_eq!(m, vec![vec![vec![int(1), int(1)], vec![int(0), int(1)]]]);
        assert!(!exactness_check(&ext, Exactness::Ab).unwrap());
        assert!(!exactness_check(&ext, Exactness::Abf).unwrap());
    }

    #[test]
    fn non_invertible_rejected() {
        let k = GroupPresentation::with_generators(1, vec![], "Z").unwrap();
        let q = GroupPresentation::with_generators(1, vec![], "Z").unwrap();
        let ext = SplitExtensionData::new(k, q, vec![vec![FreeWord::generator(1).pow(2)]]).unwrap();
        assert!(action_on_h1(&ext, Coeff::Int).is_err());
    }

    #[test]
    fn bestvina_brady_trees() {
        let p2 = bestvina_brady_tree(&Graph::path(2).unwrap()).unwrap();
        assert_eq!(p2.kernel.num_generators(), 1);
        assert!(exactness_check(&p2, Exactness::Ab).unwrap());
        let g = semidirect_presentation(&p2).unwrap();
        assert_eq!(abelianization(&g).free_rank, 2);
        for tree in [Graph::path(3).unwrap(), Graph::star(3).unwrap(), Graph::path(5).unwrap()] {
            let ext = bestvina_brady_tree(&tree).unwrap();
            assert_eq!(ext.kernel.num_generators(), tree.edges.len());
            assert!(exactness_check(&ext, Exactness::Ab).unwrap());
            let g = semidirect_presentation(&ext).unwrap();
            let ab = abelianization(&g);
            assert_eq!((ab.free_rank, ab.torsion_divisors.len()), (tree.n, 0));
        }
        assert!(bestvina_brady_tree(&Graph::cycle(3).unwrap()).is_err());
    }

    #[test]
    fn transfer_on_path_three() {
        let ext = bestvina_brady_tree(&Graph::path(3).unwrap()).unwrap();
        let rep = verify_transfer(&ext, 6, None).unwrap();
        assert_eq!(rep.verdict, Verdict::EqualFrom2);
        assert!(rep.passed(), "{:?}", rep.failures);
        assert_eq!(rep.theta_kernel.dims[1..], [1, 2, 3, 4, 5]);
    }

    #[test]
    fn transfer_on_klein_is_leq() {
        let rep = verify_transfer(&klein_bottle_data(), 4, Some(2)).unwrap();
        assert_eq!(rep.verdict, Verdict::Leq);
        let mp = rep.modp.unwrap();
        assert!(mp.exact_split);
        assert_eq!(mp.verdict, Verdict::ReportOnly);
    }

    #[test]
    fn random_inner_extensions_transfer() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..5 {
            let m = rng.gen_range(2..=3);
            let s = rng.gen_range(1..=4 - m);
            let ext = random_inner_extension(&mut rng, m, s);
            assert!(exactness_check(&ext, Exactness::Ab).unwrap());
            let rep = verify_transfer(&ext, 5, None).unwrap();
            assert_eq!(rep.verdict, Verdict::EqualFrom2);
            assert!(rep.passed(), "{:?}", rep.failures);
        }
    }
}
