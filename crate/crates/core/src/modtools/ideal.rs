//! Ideals of group algebras and polynomial rings: Fitting ideals and
//! membership through Gröbner bases.
//!
//! Convention: for a module with `g` generators, `Fitt_k` is generated by
//! the minors of size `g − k + 1` of the relation matrix. It is the unit
//! ideal when `g − k + 1 ≤ 0` and the zero ideal when there are fewer than
//! `g − k + 1` relation columns. For example, a module on 2 generators with
//! relation matrix
//!
//! ```text
//! [ t-1   0    2 ]
//! [  0   t-1   0 ]
//! ```
//!
//! over `Z[t^±1]` has `Fitt_1 = ((t-1)^2, 2(t-1))` (the 2×2 minors),
//! `Fitt_2 = (t-1, 2)` (the entries) and `Fitt_3 = (1)`.

use num_rational::BigRational;
use num_traits::{One, Signed};

use super::groebner::{self, GroebnerLimits, Poly};
use super::ModulePresentation;
use crate::error::{Error, Result};
use crate::ring::{degrevlex, Field, Flavor, PrimeField, Rationals, Ring, RingElem};

/// Limit on the number of minors enumerated by [`fitting_ideal`].
pub const MAX_MINORS: u128 = 200_000;

/// An ideal given by generators, normalized up to units and sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal {
    pub ring: Ring,
    pub generators: Vec<RingElem>,
}

impl Ideal {
    pub fn new(ring: Ring, gens: impl IntoIterator<Item = RingElem>) -> Self {
        let mut out: Vec<RingElem> = Vec::new();
        for g in gens {
            if g.is_zero() {
                continue;
            }
            let g = normalize_generator(&ring, &g);
            if is_unit(&ring, &g) {
                return Ideal { generators: vec![ring.one()], ring };
            }
            out.push(g);
        }
        out.sort_by(|a, b| {
            degrevlex(a.leading_monomial().unwrap(), b.leading_monomial().unwrap())
                .then_with(|| ring.format(a).cmp(&ring.format(b)))
        });
        out.dedup();
        Ideal { ring, generators: out }
    }

    pub fn zero(ring: Ring) -> Self {
        Ideal { ring, generators: Vec::new() }
    }

    pub fn unit(ring: Ring) -> Self {
        Ideal { generators: vec![ring.one()], ring }
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    /// True when the generator list is exactly `(1)`.
    pub fn is_unit(&self) -> bool {
        self.generators.len() == 1 && self.generators[0] == self.ring.one()
    }

    pub fn format_generators(&self) -> Vec<String> {
        self.generators.iter().map(|g| self.ring.format(g)).collect()
    }

    /// Same generators over a ring with the same variables.
    pub fn coerce(&self, ring: &Ring) -> Self {
        Ideal::new(ring.clone(), self.generators.iter().map(|g| self.ring.coerce(g, ring)))
    }
}

/// Removes monomial unit factors (Laurent case) and normalizes the leading
/// coefficient: positive over `Z`, one over a field.
fn normalize_generator(ring: &Ring, g: &RingElem) -> RingElem {
    let g = if ring.laurent { ring.clear_denominators(g).0 } else { g.clone() };
    let lead = g.sorted_terms()[0].1.clone();
    match ring.flavor {
        Flavor::Int => {
            if lead.is_negative() {
                ring.neg(&g)
            } else {
                g
            }
        }
        Flavor::Rat => ring.scale(&g, &lead.recip()),
        Flavor::ModP(p) => {
            let f = PrimeField::new(p);
            let inv = f.inv(&f.from_rational(&lead));
            ring.scale(&g, &BigRational::from_integer((inv as i64).into()))
        }
    }
}

/// Units recognized syntactically: nonzero constants over a field, ±1 over Z,
/// after monomial factors have been cleared.
fn is_unit(ring: &Ring, g: &RingElem) -> bool {
    if g.num_terms() != 1 {
        return false;
    }
    let (m, c) = g.terms().next().unwrap();
    let monomial_unit = ring.laurent || m.iter().all(|&e| e == 0);
    monomial_unit && (ring.flavor != Flavor::Int || c.abs().is_one())
}

fn binomial_u128(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc.saturating_mul((n - i) as u128) / (i as u128 + 1))
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Determinant of a square matrix over `ring` by dynamic programming over
/// column subsets (`2^s · s` products).
pub fn determinant(ring: &Ring, a: &[Vec<RingElem>]) -> RingElem {
    let s = a.len();
    if s == 0 {
        return ring.one();
    }
    let mut dp: Vec<RingElem> = vec![ring.zero(); 1 << s];
    dp[0] = ring.one();
    for mask in 0usize..(1 << s) {
        if dp[mask].is_zero() {
            continue;
        }
        let row = mask.count_ones() as usize;
        if row == s {
            continue;
        }
        for j in 0..s {
            if mask & (1 << j) != 0 || a[row][j].is_zero() {
                continue;
            }
            // sign: number of used columns to the right of j
            let above = (mask >> (j + 1)).count_ones();
            let term = ring.mul(&dp[mask], &a[row][j]);
            let term = if above % 2 == 1 { ring.neg(&term) } else { term };
            dp[mask | (1 << j)] = ring.add(&dp[mask | (1 << j)], &term);
        }
    }
    dp[(1 << s) - 1].clone()
}

/// `Fitt_k(M)`: minors of size `g − k + 1` of the relation matrix.
pub fn fitting_ideal(m: &ModulePresentation, k: usize) -> Result<Ideal> {
    let g = m.num_generators();
    let ring = m.ring.clone();
    if k > g + 1 {
        return Ok(Ideal::unit(ring));
    }
    let size = g + 1 - k;
    if size == 0 {
        return Ok(Ideal::unit(ring));
    }
    let c = m.num_relations();
    if size > c {
        return Ok(Ideal::zero(ring));
    }
    let count = binomial_u128(g, size).saturating_mul(binomial_u128(c, size));
    if count > MAX_MINORS || size > 16 {
        return Err(Error::SizeGuard(format!(
            "Fitting ideal needs {count} minors of size {size}; the limit is {MAX_MINORS}"
        )));
    }
    let mut gens = Vec::new();
    let row_sets = subsets(g, size);
    for cols in subsets(c, size) {
        for rows in &row_sets {
            let sub: Vec<Vec<RingElem>> =
                rows.iter().map(|&i| cols.iter().map(|&j| m.relations[j][i].clone()).collect()).collect();
            let d = determinant(&ring, &sub);
            if !d.is_zero() {
                gens.push(d);
            }
        }
    }
    Ok(Ideal::new(ring, gens))
}

/// Limits on exterior powers.
pub const MAX_EXTERIOR_DEGREE: usize = 4;
pub const MAX_EXTERIOR_GENERATORS: u128 = 5000;

/// `Λ^k M = coker(R ⊗ Λ^{k-1} F → Λ^k F)`: generators `e_S` for `k`-subsets
/// `S`, relations `rel_j ∧ e_T` for `(k-1)`-subsets `T`.
pub fn exterior_power_presentation(m: &ModulePresentation, k: usize) -> Result<ModulePresentation> {
    let g = m.num_generators();
    if k == 0 || k > MAX_EXTERIOR_DEGREE {
        return Err(Error::SizeGuard(format!("exterior power degree must be in 1..={MAX_EXTERIOR_DEGREE}, got {k}")));
    }
    if binomial_u128(g, k) > MAX_EXTERIOR_GENERATORS {
        return Err(Error::SizeGuard(format!(
            "exterior power has C({g},{k}) = {} generators; the limit is {MAX_EXTERIOR_GENERATORS}",
            binomial_u128(g, k)
        )));
    }
    let ring = m.ring.clone();
    let basis = subsets(g, k);
    let index: std::collections::HashMap<Vec<usize>, usize> =
        basis.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
    let names = basis
        .iter()
        .map(|s| {
            if k == 1 {
                m.generator_names[s[0]].clone()
            } else {
                format!("e{}", s.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join("_"))
            }
        })
        .collect();
    let mut relations = Vec::new();
    for rel in &m.relations {
        for t in subsets(g, k - 1) {
            let mut col = vec![ring.zero(); basis.len()];
            let mut nonzero = false;
            for (i, a) in rel.iter().enumerate() {
                if a.is_zero() || t.contains(&i) {
                    continue;
                }
                // e_i ∧ e_T = (-1)^{#{t ∈ T : t < i}} e_{T ∪ i}
                let below = t.iter().filter(|&&x| x < i).count();
                let mut s = t.clone();
                s.insert(below, i);
                let v = if below % 2 == 1 { ring.neg(a) } else { a.clone() };
                let idx = index[&s];
                col[idx] = ring.add(&col[idx], &v);
                nonzero = true;
            }
            if nonzero && col.iter().any(|x| !x.is_zero()) {
                relations.push(col);
            }
        }
    }
    Ok(ModulePresentation::new(ring, names, relations))
}

/// Number of variables of the polynomial ring used for Gröbner work: free
/// variables, torsion variables, then one inverse per free variable in the
/// Laurent case.
fn poly_nvars(ring: &Ring) -> usize {
    if ring.laurent {
        2 * ring.nfree + ring.torsion.len()
    } else {
        ring.nfree
    }
}

fn to_poly<F: Field>(f: &F, ring: &Ring, a: &RingElem) -> Poly<F> {
    let n = poly_nvars(ring);
    Poly::from_terms(
        f,
        a.terms().map(|(m, c)| {
            let mut e = vec![0u32; n];
            for (i, &x) in m.iter().enumerate() {
                if x >= 0 {
                    e[i] = x as u32;
                } else {
                    e[ring.nvars() + i] = (-x) as u32;
                }
            }
            (e, f.from_rational(c))
        }),
    )
}

/// Auxiliary relations `t_i u_i − 1` and `s_j^{d_j} − 1`.
fn auxiliary<F: Field>(f: &F, ring: &Ring) -> Vec<Poly<F>> {
    let n = poly_nvars(ring);
    let mut out = Vec::new();
    if !ring.laurent {
        return out;
    }
    for i in 0..ring.nfree {
        let mut e = vec![0u32; n];
        e[i] = 1;
        e[ring.nvars() + i] = 1;
        out.push(Poly::from_terms(f, vec![(e, f.one()), (vec![0; n], f.neg(&f.one()))]));
    }
    for (j, &d) in ring.torsion.iter().enumerate() {
        let mut e = vec![0u32; n];
        e[ring.nfree + j] = d as u32;
        out.push(Poly::from_terms(f, vec![(e, f.one()), (vec![0; n], f.neg(&f.one()))]));
    }
    out
}

/// Gröbner basis of an ideal together with the auxiliary relations.
enum Basis {
    Rat(Vec<Poly<Rationals>>),
    ModP(PrimeField, Vec<Poly<PrimeField>>),
}

fn basis_of(ideal: &Ideal) -> Result<Basis> {
    fn build<F: Field>(f: &F, ideal: &Ideal) -> Result<Vec<Poly<F>>> {
        let mut gens = auxiliary(f, &ideal.ring);
        gens.extend(ideal.generators.iter().map(|g| to_poly(f, &ideal.ring, g)));
        groebner::groebner_basis(f, &gens, GroebnerLimits::default())
    }
    match ideal.ring.flavor {
        Flavor::Int => Err(Error::Precondition(
            "Gröbner computations need field coefficients (QQ or GF(p)); Gröbner bases over ZZ are not supported".into(),
        )),
        Flavor::Rat => Ok(Basis::Rat(build(&Rationals, ideal)?)),
        Flavor::ModP(p) => {
            let f = PrimeField::new(p);
            let b = build(&f, ideal)?;
            Ok(Basis::ModP(f, b))
        }
    }
}

/// Whether `f` lies in `I` (Buchberger with sugar selection, inverse and
/// torsion variables adjoined for group algebras).
pub fn ideal_membership(ideal: &Ideal, f: &RingElem) -> Result<bool> {
    Ok(match basis_of(ideal)? {
        Basis::Rat(b) => groebner::reduce(&Rationals, &to_poly(&Rationals, &ideal.ring, f), &b).is_zero(),
        Basis::ModP(field, b) => groebner::reduce(&field, &to_poly(&field, &ideal.ring, f), &b).is_zero(),
    })
}

/// Whether `R/I` is finite-dimensional over the coefficient field, i.e.
/// `V(I)` is finite.
pub fn quotient_is_finite(ideal: &Ideal) -> Result<bool> {
    let n = poly_nvars(&ideal.ring);
    Ok(match basis_of(ideal)? {
        Basis::Rat(b) => groebner::is_zero_dimensional(&b, n),
        Basis::ModP(_, b) => groebner::is_zero_dimensional(&b, n),
    })
}

/// Whether every generator of `I` vanishes at the point, given by a
/// closure evaluating ring elements.
pub fn vanishes_at(ideal: &Ideal, mut is_zero_at: impl FnMut(&RingElem) -> bool) -> bool {
    ideal.generators.iter().all(|g| is_zero_at(g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fox::{alexander_module, b_univariate, FoxFlavor};
    use crate::presentation::builtin_group;
    use num_traits::Zero;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn free_module_has_zero_fitting_ideal() {
        let m = ModulePresentation::free(Ring::laurent(2, vec![], Flavor::Rat), 1);
        assert!(fitting_ideal(&m, 1).unwrap().is_zero());
        assert!(fitting_ideal(&m, 2).unwrap().is_unit());
    }

    #[test]
    fn trefoil_fitting_ideal() {
        let b = b_univariate(&builtin_group("trefoil", &[]).unwrap()).unwrap();
        let i = fitting_ideal(&b.module, 1).unwrap();
        assert_eq!(i.format_generators(), vec!["t^2 - t + 1"]);
    }

    #[test]
    fn worked_example_from_docs() {
        let r = Ring::laurent(1, vec![], Flavor::Int);
        let tm1 = r.sub(&r.var(0), &r.one());
        let s = r.from_i64(2);
        let m = ModulePresentation::new(
            r.clone(),
            vec!["a".into(), "b".into()],
            vec![vec![tm1.clone(), r.zero()], vec![r.zero(), tm1.clone()], vec![s.clone(), r.zero()]],
        );
        let f1 = fitting_ideal(&m, 1).unwrap();
        assert_eq!(f1.format_generators(), vec!["2*t - 2", "t^2 - 2*t + 1"]);
        let f2 = fitting_ideal(&m, 2).unwrap();
        assert_eq!(f2.format_generators(), vec!["2", "t - 1"]);
        assert!(fitting_ideal(&m, 3).unwrap().is_unit());
    }

    #[test]
    fn dihedral_fitting_zero_set() {
        let a = alexander_module(&builtin_group("dihedral_inf", &[]).unwrap(), FoxFlavor::Ab).unwrap();
        let i = fitting_ideal(&a, 2).unwrap();
        let pts = [(1, 1), (1, -1), (-1, 1), (-1, -1)];
        let zeros: Vec<_> = pts
            .iter()
            .filter(|(x, y)| i.generators.iter().all(|g| i.ring.eval_rational(g, &[q(*x), q(*y)]).is_zero()))
            .collect();
        assert_eq!(zeros, vec![&(-1, -1)]);
    }

    #[test]
    fn membership_examples() {
        let r = Ring::polynomial(2, Flavor::Rat);
        let (x, y) = (r.var(0), r.var(1));
        let i = Ideal::new(r.clone(), [r.add(&r.mul(&x, &x), &r.mul(&y, &y)), r.mul(&x, &y)]);
        assert!(ideal_membership(&i, &r.mul(&r.mul(&x, &x), &x)).unwrap());
        let j = Ideal::new(r.clone(), [x.clone()]);
        assert!(!ideal_membership(&j, &r.one()).unwrap());
    }

    #[test]
    fn trefoil_alexander_membership() {
        let a = alexander_module(&builtin_group("trefoil", &[]).unwrap(), FoxFlavor::Ab).unwrap();
        let rat = Ring::laurent(1, vec![], Flavor::Rat);
        let i = fitting_ideal(&a.coerce(&rat), 2).unwrap();
        let t = rat.var(0);
        let delta = rat.add(&rat.sub(&rat.mul(&t, &t), &t), &rat.one());
        assert!(ideal_membership(&i, &delta).unwrap());
        // t^-1 (t^2 - t + 1) too, and t - 1 is not a member
        assert!(ideal_membership(&i, &rat.shift(&delta, &[-1])).unwrap());
        assert!(!ideal_membership(&i, &rat.sub(&t, &rat.one())).unwrap());
        assert!(quotient_is_finite(&i).unwrap());
    }

    #[test]
    fn integer_flavor_rejected() {
        let r = Ring::polynomial(1, Flavor::Int);
        let i = Ideal::new(r.clone(), [r.var(0)]);
        assert!(matches!(ideal_membership(&i, &r.one()), Err(Error::Precondition(_))));
    }

    #[test]
    fn exterior_powers() {
        let r = Ring::laurent(1, vec![], Flavor::Rat);
        let cyc = ModulePresentation::new(r.clone(), vec!["b".into()], vec![vec![r.var(0)]]);
        assert_eq!(exterior_power_presentation(&cyc, 2).unwrap().num_generators(), 0);
        let free = ModulePresentation::free(r.clone(), 1);
        assert_eq!(exterior_power_presentation(&free, 2).unwrap().num_generators(), 0);
        // Λ² of coker (a, b)^T on 3 generators: relations a e_j ∧ ...
        let r3 = Ring::polynomial(3, Flavor::Rat);
        let m = ModulePresentation::new(r3.clone(), vec!["e1".into(), "e2".into(), "e3".into()], vec![vec![
            r3.var(0),
            r3.var(1),
            r3.var(2),
        ]]);
        let l2 = exterior_power_presentation(&m, 2).unwrap();
        assert_eq!(l2.generator_names, vec!["e1_2", "e1_3", "e2_3"]);
        // (x1 e1 + x2 e2 + x3 e3) ∧ e1 = -x2 e12 - x3 e13
        assert_eq!(l2.format_relations()[0], vec!["-x2", "-x3", "0"]);
        assert!(exterior_power_presentation(&m, 5).is_err());
    }

    #[test]
    fn determinant_small() {
        let r = Ring::polynomial(1, Flavor::Int);
        let x = r.var(0);
        let a = vec![vec![x.clone(), r.from_i64(2)], vec![r.from_i64(3), x.clone()]];
        assert_eq!(r.format(&determinant(&r, &a)), "x1^2 - 6");
        let id3: Vec<Vec<RingElem>> =
            (0..3).map(|i| (0..3).map(|j| if (i + 1) % 3 == j { r.one() } else { r.zero() }).collect()).collect();
        assert_eq!(determinant(&r, &id3), r.one());
    }
}
