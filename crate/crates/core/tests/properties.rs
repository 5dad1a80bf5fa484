//! Invariants checked on random presentations, characters and extensions.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use alexlab::abelian::{abelianization, mod_p_h1};
use alexlab::chen::{chen_ranks, chen_ranks_with, modp_chen_ranks, ChenMethod};
use alexlab::extensions::{exactness_check, random_inner_extension, Exactness};
use alexlab::fox::{alexander_module, b_presentation_koszul, flavor_ring, fox_gradient, fox_matrix, FoxFlavor};
use alexlab::jumploci::{cv_membership, CharacterPoint, JumpFlavor};
use alexlab::lie::cup_data;
use alexlab::modtools::{fitting_ideal, graded_dims_truncated, ideal_membership, rank_at_character};
use alexlab::presentation::{parse_presentation, semidirect_presentation, FreeWord, GroupPresentation, SplitExtensionData};
use alexlab::ring::laurent_to_truncated;
use alexlab::ring::{CyclotomicField, Field, Flavor, Rationals, Ring};

fn word(m: usize, max_len: usize) -> impl Strategy<Value = FreeWord> {
    prop::collection::vec((1..=m, prop_oneof![Just(1i64), Just(-1), Just(2), Just(-2)]), 0..=max_len)
        .prop_map(FreeWord::new)
}

fn presentation() -> impl Strategy<Value = GroupPresentation> {
    (1usize..=3).prop_flat_map(|m| {
        prop::collection::vec(word(m, 6), 0..=3)
            .prop_map(move |rels| GroupPresentation::with_generators(m, rels, "random").unwrap())
    })
}

/// Relators that are commutators of short words, so `G_ab` is free.
fn commutator_presentation() -> impl Strategy<Value = GroupPresentation> {
    (2usize..=3).prop_flat_map(|m| {
        prop::collection::vec((word(m, 3), word(m, 3)), 0..=2).prop_map(move |pairs| {
            let rels = pairs.iter().map(|(u, v)| FreeWord::commutator(u, v)).collect();
            GroupPresentation::with_generators(m, rels, "random").unwrap()
        })
    })
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn rank_q(rows: &[Vec<i64>]) -> usize {
    let rows: Vec<Vec<BigRational>> = rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
    alexlab::ring::rank(&Rationals, &rows)
}

fn nonzero_rational() -> impl Strategy<Value = BigRational> {
    (prop_oneof![-5i64..=-1, 1i64..=5], 1i64..=4).prop_map(|(a, b)| BigRational::new(a.into(), b.into()))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn parse_print_round_trip(g in presentation()) {
        let back = parse_presentation(&g.canonical()).unwrap();
        prop_assert_eq!(back.names(), g.names());
        prop_assert_eq!(back.relators(), g.relators());
        prop_assert_eq!(back.canonical(), g.canonical());
    }

    #[test]
    fn abelianization_ignores_relator_order_and_repeats(g in presentation(), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        let mut rels = g.relators().to_vec();
        let extra: Vec<FreeWord> = rels.iter().take(1).cloned().collect();
        rels.extend(extra);
        rels.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let h = GroupPresentation::with_generators(g.num_generators(), rels, "shuffled").unwrap();
        let (a, b) = (abelianization(&g), abelianization(&h));
        prop_assert_eq!((a.free_rank, a.torsion_divisors), (b.free_rank, b.torsion_divisors));
    }

    #[test]
    fn mod_p_first_homology(g in presentation(), p in prop::sample::select(vec![2u64, 3, 5, 7])) {
        let ab = abelianization(&g);
        let pb = BigInt::from(p);
        let divisible = ab.torsion_divisors.iter().filter(|d| d.is_multiple_of(&pb)).count();
        let h = mod_p_h1(&g, p).unwrap();
        prop_assert!(h >= ab.free_rank);
        prop_assert_eq!(h, ab.free_rank + divisible);
        prop_assert_eq!(h == ab.free_rank, divisible == 0);
    }

    #[test]
    fn truncation_is_a_ring_map(
        a in prop::collection::vec((-2i64..=2, -2i64..=2, -3i64..=3), 1..4),
        b in prop::collection::vec((-2i64..=2, -2i64..=2, -3i64..=3), 1..4),
        order in 1usize..=5,
    ) {
        let ring = Ring::laurent(2, vec![], Flavor::Rat);
        let elem = |terms: &[(i64, i64, i64)]| ring.from_terms(terms.iter().map(|&(x, y, c)| (vec![x, y], q(c))));
        let (f, g) = (elem(&a), elem(&b));
        let tf = laurent_to_truncated(&ring, &f, order).unwrap();
        let tg = laurent_to_truncated(&ring, &g, order).unwrap();
        let tfg = laurent_to_truncated(&ring, &ring.mul(&f, &g), order).unwrap();
        prop_assert!(tfg.sub(&tf.mul(&tg)).is_zero());
        let tsum = laurent_to_truncated(&ring, &ring.add(&f, &g), order).unwrap();
        prop_assert!(tsum.sub(&tf.add(&tg)).is_zero());
        if !f.augmentation().is_zero() {
            let inv = tf.inverse().unwrap();
            let one = laurent_to_truncated(&ring, &ring.one(), order).unwrap();
            prop_assert!(inv.mul(&tf).sub(&one).is_zero());
        }
    }

    #[test]
    fn roots_of_unity(m in 1u64..=12, k in -20i64..=20) {
        let field = CyclotomicField::new(m).unwrap();
        let z = field.zeta_pow(1);
        prop_assert_eq!(field.pow(&z, m as i64), field.one());
        prop_assert_eq!(field.pow(&z, k), field.zeta_pow(k));
    }

    #[test]
    fn fox_calculus(u in word(3, 6), v in word(3, 6)) {
        let g = GroupPresentation::with_generators(3, vec![], "F3").unwrap();
        let (ring, images) = flavor_ring(&g, FoxFlavor::Ab).unwrap();
        let grad = |w: &FreeWord| fox_gradient(w, &ring, &images);
        prop_assert!(grad(&u.mul(&u.inverse())).iter().all(|d| d.is_zero()));
        let image = |w: &FreeWord| {
            let e: Vec<i64> = (1..=3).map(|j| w.exponent_sum(j)).collect();
            ring.monomial(e, BigRational::one())
        };
        // fundamental formula
        let total = ring.sum(
            &grad(&u).iter().enumerate().map(|(j, d)| ring.mul(d, &ring.sub(&ring.var(j), &ring.one()))).collect::<Vec<_>>(),
        );
        prop_assert_eq!(total, ring.sub(&image(&u), &ring.one()));
        // product rule
        let uv = grad(&u.mul(&v));
        for ((d, du), dv) in uv.iter().zip(grad(&u)).zip(grad(&v)) {
            prop_assert_eq!(d.clone(), ring.add(&du, &ring.mul(&image(&u), &dv)));
        }
    }

    #[test]
    fn identity_character_rank(g in presentation()) {
        let mat = fox_matrix(&g, FoxFlavor::Ab).unwrap();
        let ab = abelianization(&g);
        let one = CharacterPoint::identity(ab.free_rank, ab.torsion_divisors.len());
        prop_assert_eq!(rank_at_character(&mat, &one).unwrap(), rank_q(&g.exponent_matrix()));
    }

    #[test]
    fn cv_depths_nest_and_w_matches_v(
        g in commutator_presentation(),
        vals in prop::collection::vec(prop_oneof![nonzero_rational(), Just(q(1)), Just(q(-1))], 3),
    ) {
        let m = g.num_generators();
        let chi = CharacterPoint::rational(&vals[..m], &[]).unwrap();
        let v: Vec<bool> = (1..=m + 1).map(|k| cv_membership(&g, &chi, k, JumpFlavor::V).unwrap()).collect();
        for k in 1..v.len() {
            prop_assert!(!v[k] || v[k - 1]);
        }
        for k in 1..=m {
            prop_assert_eq!(cv_membership(&g, &chi, k, JumpFlavor::W).unwrap(), v[k - 1]);
        }
    }

    #[test]
    fn chen_prefix_stability_and_second_rank(g in commutator_presentation()) {
        let long = chen_ranks(&g, 4).unwrap();
        let short = chen_ranks(&g, 3).unwrap();
        prop_assert_eq!(&long.dims[..3], &short.dims[..]);
        let b1 = long.dims[0];
        let cd = cup_data(&g).unwrap();
        prop_assert_eq!(long.dims[1], b1 * (b1 - 1) / 2 - cd.nabla_rank());
        let crowell = chen_ranks_with(&g, 4, ChenMethod::Crowell).unwrap();
        prop_assert_eq!(crowell, long);
    }

    #[test]
    fn graded_prefix_stability(g in commutator_presentation()) {
        let b = b_presentation_koszul(&g).unwrap();
        let rat = Ring::laurent(b.ring.nfree, b.ring.torsion.clone(), Flavor::Rat);
        let b = b.coerce(&rat);
        let short = graded_dims_truncated(&b, 4).unwrap();
        let long = graded_dims_truncated(&b, 5).unwrap();
        prop_assert_eq!(&long.dims[..short.dims.len()], &short.dims[..]);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 16, ..ProptestConfig::default() })]

    #[test]
    fn fitting_ideals_increase(g in presentation().prop_filter("two generators at most", |g| g.num_generators() <= 2)) {
        let a = alexander_module(&g, FoxFlavor::Ab).unwrap();
        let rat = Ring::laurent(a.ring.nfree, a.ring.torsion.clone(), Flavor::Rat);
        let a = a.coerce(&rat);
        for k in 0..=a.num_generators() {
            let small = fitting_ideal(&a, k).unwrap();
            let big = fitting_ideal(&a, k + 1).unwrap();
            for f in &small.generators {
                prop_assert!(ideal_membership(&big, f).unwrap());
            }
        }
    }

    #[test]
    fn modp_chen_ranks_vanish(g in commutator_presentation().prop_filter("two generators", |g| g.num_generators() == 2)) {
        let theta = modp_chen_ranks(&g, 2, 12).unwrap();
        prop_assert_eq!(theta.dims[0], mod_p_h1(&g, 2).unwrap());
        prop_assert!(theta.dims.iter().rev().take(2).all(|&d| d == 0), "{:?}", theta.dims);
    }

    #[test]
    fn inner_extensions_split_abelianization(seed in any::<u64>(), m in 1usize..=3, s in 1usize..=2) {
        let ext = random_inner_extension(&mut ChaCha8Rng::seed_from_u64(seed), m, s);
        let g = semidirect_presentation(&ext).unwrap();
        let ab = abelianization(&g);
        prop_assert_eq!(ab.free_rank, m + s);
        prop_assert!(ab.torsion_divisors.is_empty());
    }

    #[test]
    fn exactness_implications(j in -7i64..=7, u in prop::sample::select(vec![1i64, 5, 7]), p in prop::sample::select(vec![2u64, 3])) {
        // K = Z ⊕ Z_6, the generator of Q = Z sends a ↦ a b^j, b ↦ b^u
        let kernel = parse_presentation("<a,b | [a,b], b^6>").unwrap();
        let quotient = parse_presentation("<s | >").unwrap();
        let images = vec![FreeWord::new([(1, 1), (2, j)]), FreeWord::new([(2, u)])];
        let ext = SplitExtensionData::new(kernel, quotient, vec![images]).unwrap();
        let ab = exactness_check(&ext, Exactness::Ab).unwrap();
        let abf = exactness_check(&ext, Exactness::Abf).unwrap();
        let modp = exactness_check(&ext, Exactness::P(p)).unwrap();
        prop_assert!(abf);
        prop_assert!(!ab || modp);
        prop_assert_eq!(ab, j.mod_floor(&6) == 0 && u.mod_floor(&6) == 1);
    }
}
