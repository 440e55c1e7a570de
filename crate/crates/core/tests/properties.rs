mod common;

use common::*;
use proptest::prelude::*;
use toric_codes::codes::*;
use toric_codes::gf::{Elem, Field};
use toric_codes::groebner::{buchberger, normal_form};
use toric_codes::hilbert::affine_hilbert_value;
use toric_codes::ideals::*;
use toric_codes::mpoly::{Monomial, MonomialOrder, Polynomial, Ring};

fn arb_instance() -> impl Strategy<Value = (u64, Vec<Vec<u32>>)> {
    (prop::sample::select(vec![2u64, 3, 5, 7]), 1usize..=3, 1usize..=3)
        .prop_flat_map(|(q, s, n)| (Just(q), prop::collection::vec(prop::collection::vec(0u32..=4, n), s)))
}

fn points_u64(set: &ParameterizedSet) -> Vec<Vec<u64>> {
    set.affine_points()
        .iter()
        .map(|p| p.iter().map(|e| e.index() as u64).collect())
        .collect()
}

fn dense_to_poly(ring: &Ring, terms: &[(Vec<u32>, u64)]) -> Polynomial {
    let f = ring.field().clone();
    ring.from_terms(
        terms
            .iter()
            .map(|(m, c)| (Monomial::new(m.iter().copied()), f.from_int(*c as i64))),
    )
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    /// Every generator of both ideals vanishes on the enumerated points, both
    /// bases pass the Buchberger criterion, and the code dimensions agree
    /// with the Hilbert functions and with an independent rank.
    #[test]
    fn random_toric_sets((q, rows) in arb_instance()) {
        let matrix = ExponentMatrix::new(rows.clone()).unwrap();
        let set = enumerate_points(&matrix, &Field::prime(q as u32).unwrap()).unwrap();
        prop_assert_eq!(points_u64(&set), naive_points(&rows, q));

        let options = PipelineOptions { verify: true, compute_min_distance: false, ..PipelineOptions::default() };
        let analysis = CodeAnalysis::new(set.clone(), options).unwrap();
        let ideals = analysis.ideals();
        for g in ideals.affine.generators() {
            prop_assert!(g.is_binomial());
            for pt in set.affine_points() {
                prop_assert!(g.evaluate(pt).unwrap().is_zero());
            }
        }
        for g in ideals.projective.generators() {
            prop_assert!(g.is_homogeneous());
            for pt in set.projective_reps() {
                prop_assert!(g.evaluate(&pt).unwrap().is_zero());
            }
        }
        prop_assert_eq!(analysis.ring_degree(), set.len() as u64);
        let points = points_u64(&set);
        for d in 1..=4 {
            let h = analysis.hilbert_value(d).unwrap();
            prop_assert_eq!(analysis.parameters(d).unwrap().dimension, h);
            prop_assert_eq!(affine_hilbert_value(&ideals.affine, d).unwrap(), h);
            prop_assert_eq!(rank(&evaluation_rows(&points, d, q), q) as u64, h);
        }
    }

    /// Tables satisfy the Singleton bound and both monotonicity laws.
    #[test]
    fn tables_are_monotone((q, rows) in arb_instance()) {
        let set = enumerate_points(&ExponentMatrix::new(rows).unwrap(), &Field::prime(q as u32).unwrap()).unwrap();
        let options = PipelineOptions { md_budget: 50_000, ..PipelineOptions::default() };
        let table = parameter_table(&set, 0..=6, options).unwrap();
        check_table(&table).unwrap();
        for p in &table {
            if let Some(delta) = p.min_distance.value() {
                prop_assert!(delta >= 1 && delta <= p.singleton_bound());
            }
        }
    }

    /// Membership in I(X*) is the same as vanishing on X*, in both
    /// directions: random polynomials reduce to zero exactly when they
    /// vanish, and every interpolation-kernel polynomial reduces to zero.
    #[test]
    fn zero_membership((q, rows) in arb_instance(), seed in any::<u64>()) {
        let set = enumerate_points(&ExponentMatrix::new(rows).unwrap(), &Field::prime(q as u32).unwrap()).unwrap();
        let gb = vanishing_ideal_affine(&set).unwrap();
        let ring = gb.ring().clone();
        let points = points_u64(&set);
        let s = ring.num_vars();

        let mut state = seed | 1;
        let mut next = || { state ^= state << 13; state ^= state >> 7; state ^= state << 17; state };
        let monos = monomials(s, q as u32);
        for _ in 0..8 {
            let mut terms: Vec<(Vec<u32>, u64)> = Vec::new();
            for m in &monos {
                if next() % 3 == 0 {
                    terms.push((m.clone(), next() % q));
                }
            }
            let f = dense_to_poly(&ring, &terms);
            let vanishes = points.iter().all(|pt| eval_terms(&terms, pt, q) == 0);
            prop_assert_eq!(normal_form(&f, &gb).unwrap().is_zero(), vanishes);
        }
        for kernel_poly in interpolation_kernel(&points, q as u32, q) {
            let f = dense_to_poly(&ring, &kernel_poly);
            prop_assert!(normal_form(&f, &gb).unwrap().is_zero());
        }
    }

    /// Buchberger output satisfies the S-polynomial criterion and is
    /// reduced, for arbitrary small generating sets and both orders.
    #[test]
    fn buchberger_criterion(
        q in prop::sample::select(vec![2u32, 3, 5, 7]),
        gens in prop::collection::vec(prop::collection::vec((prop::collection::vec(0u32..4, 3), 0i64..7), 1..4), 1..4),
        lex in any::<bool>(),
    ) {
        let ring = Ring::with_prefix(Field::prime(q).unwrap(), "x", 3).unwrap();
        let f = ring.field().clone();
        let polys: Vec<Polynomial> = gens
            .iter()
            .map(|terms| ring.from_terms(terms.iter().map(|(m, c)| (Monomial::new(m.iter().copied()), f.from_int(*c)))).unwrap())
            .collect();
        let ord = if lex { MonomialOrder::Lex } else { MonomialOrder::GrevLex };
        let gb = buchberger(&polys, ord).unwrap();
        gb.verify_criterion().unwrap();
        prop_assert!(gb.check_reduced());
        for p in &polys {
            prop_assert!(gb.contains(p).unwrap());
        }
    }

    /// Scaling column j by (first coordinate of P_j)^(-d) preserves the
    /// weight distribution of the code.
    #[test]
    fn column_scaling_preserves_weights((q, rows) in arb_instance(), d in 1u32..=3) {
        prop_assume!(q > 2);
        let field = Field::prime(q as u32).unwrap();
        let set = enumerate_points(&ExponentMatrix::new(rows).unwrap(), &field).unwrap();
        let matrix = build_evaluation_matrix(&set, d).unwrap();
        let k = code_dimension(&matrix) as u32;
        prop_assume!((q as u128).pow(k) <= 100_000);
        let scales: Vec<Elem> =
            set.affine_points().iter().map(|p| field.inv(field.pow(p[0], d as u64)).unwrap()).collect();
        let scaled = matrix.scale_columns(&scales).unwrap();

        let to_u64 = |m: &EvaluationMatrix| -> Vec<Vec<u64>> {
            m.rows().iter().map(|r| r.iter().map(|e| e.index() as u64).collect()).collect()
        };
        let before = weight_distribution(&to_u64(&matrix), q);
        prop_assert_eq!(&before, &weight_distribution(&to_u64(&scaled), q));
        prop_assert_eq!(minimum_distance(&matrix, 100_000), minimum_distance(&scaled, 100_000));
        let oracle = before.iter().enumerate().skip(1).find(|(_, &c)| c > 0).unwrap().0 as u64;
        prop_assert_eq!(minimum_distance(&matrix, 100_000).value(), Some(oracle));
    }
}

/// A nonzero polynomial with every partial degree below `q - 1` does not
/// vanish on the whole torus, checked for q <= 5 and n <= 2 over 1200
/// sampled polynomials.
#[test]
fn low_degree_polynomials_do_not_vanish_on_the_torus() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand::rngs::StdRng::seed_from_u64(0x5eed);
    let fields = [
        Field::prime(3).unwrap(),
        Field::new(4, Some(&[1, 1, 1])).unwrap(),
        Field::prime(5).unwrap(),
    ];
    let mut checked = 0;
    for field in &fields {
        let q = field.order();
        for n in 1..=2usize {
            let ring = Ring::with_prefix(field.clone(), "y", n).unwrap();
            let torus: Vec<Vec<Elem>> = match n {
                1 => field.units().into_iter().map(|a| vec![a]).collect(),
                _ => field
                    .units()
                    .into_iter()
                    .flat_map(|a| field.units().into_iter().map(move |b| vec![a, b]))
                    .collect(),
            };
            let exps: Vec<Vec<u32>> = match n {
                1 => (0..q - 1).map(|a| vec![a]).collect(),
                _ => (0..q - 1).flat_map(|a| (0..q - 1).map(move |b| vec![a, b])).collect(),
            };
            for _ in 0..200 {
                let density = rng.gen_range(1..=exps.len());
                let mut terms = Vec::new();
                for e in &exps {
                    if rng.gen_range(0..exps.len()) < density {
                        terms.push((
                            Monomial::new(e.iter().copied()),
                            field.from_index(rng.gen_range(0..q)).unwrap(),
                        ));
                    }
                }
                let g = ring.from_terms(terms).unwrap();
                if g.is_zero() {
                    continue;
                }
                assert!((0..n).all(|i| g.degree_in(i) < q - 1));
                assert!(
                    torus.iter().any(|p| !g.evaluate(p).unwrap().is_zero()),
                    "{g} vanishes on the torus"
                );
                checked += 1;
            }
        }
    }
    assert!(checked >= 1000, "only {checked} nonzero samples");
}

/// The bound `deg < q - 1` is sharp: `y^(q-1) - 1` vanishes everywhere.
#[test]
fn degree_bound_is_sharp() {
    let ring = Ring::with_prefix(Field::prime(5).unwrap(), "y", 1).unwrap();
    let g = ring.parse("y1^4 - 1").unwrap();
    assert!(ring
        .field()
        .units()
        .into_iter()
        .all(|a| g.evaluate(&[a]).unwrap().is_zero()));
}

#[test]
fn threaded_pipeline_is_deterministic() {
    let m = ExponentMatrix::new(vec![vec![1, 2, 0], vec![0, 1, 3]]).unwrap();
    let set = enumerate_points(&m, &Field::prime(7).unwrap()).unwrap();
    let single = parameter_table(&set, 1..=4, PipelineOptions::default()).unwrap();
    let multi = parameter_table(
        &set,
        1..=4,
        PipelineOptions {
            threads: 4,
            ..PipelineOptions::default()
        },
    )
    .unwrap();
    assert_eq!(single, multi);
    let threaded = enumerate_points_with(
        &m,
        set.field(),
        EnumerationOptions {
            threads: 3,
            ..Default::default()
        },
    )
    .unwrap();
    assert_eq!(threaded.affine_points(), set.affine_points());
}
