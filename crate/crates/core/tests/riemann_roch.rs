use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use semistab::curve::{CurvePoint, Divisor, HyperellipticCurve};
use semistab::fixtures;
use semistab::rr::{h0, h1, is_principal, product_coordinates, rr_basis, RationalFunction};
use semistab::FieldElement;

fn curves() -> Vec<HyperellipticCurve> {
    fixtures::all_curves()
}

fn random_element(c: &HyperellipticCurve, rng: &mut ChaCha8Rng) -> FieldElement {
    let f = c.field();
    match f.small_order() {
        Some(q) => f.element_from_index(rng.gen_range(0..q)),
        None => f.from_i64(rng.gen_range(-5..=5)),
    }
}

/// A random element of `L(D)`.
fn random_section(c: &HyperellipticCurve, d: &Divisor, rng: &mut ChaCha8Rng) -> RationalFunction {
    let b = rr_basis(c, d).unwrap();
    let coords: Vec<_> = (0..b.dim()).map(|_| random_element(c, rng)).collect();
    b.combine(&coords).unwrap()
}

fn setup(idx: usize, seed: u64) -> (HyperellipticCurve, Vec<CurvePoint>, ChaCha8Rng) {
    let cs = curves();
    let c = cs[idx % cs.len()].clone();
    let pool = fixtures::point_pool(&c).unwrap();
    (c, pool, ChaCha8Rng::seed_from_u64(seed))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn riemann_roch_identity(idx in 0usize..8, seed in any::<u64>()) {
        let (c, pool, mut rng) = setup(idx, seed);
        let g = c.genus() as i64;
        let d = fixtures::random_divisor(&pool, 4 * g + 6, &mut rng);
        let lhs = h0(&c, &d).unwrap() as i64 - h1(&c, &d).unwrap() as i64;
        prop_assert_eq!(lhs, d.degree() - g + 1);
    }

    #[test]
    fn serre_duality_is_symmetric(idx in 0usize..8, seed in any::<u64>()) {
        let (c, pool, mut rng) = setup(idx, seed);
        let d = fixtures::random_divisor(&pool, 2 * c.genus() as i64 + 2, &mut rng);
        let k = c.canonical_divisor();
        prop_assert_eq!(h1(&c, &d).unwrap(), h0(&c, &k.sub(&d)).unwrap());
        prop_assert_eq!(h1(&c, &k.sub(&d)).unwrap(), h0(&c, &d).unwrap());
    }

    #[test]
    fn basis_elements_lie_in_the_space(idx in 0usize..8, seed in any::<u64>()) {
        let (c, pool, mut rng) = setup(idx, seed);
        let d = fixtures::random_divisor(&pool, 6, &mut rng);
        let b = rr_basis(&c, &d).unwrap();
        for phi in b.elements() {
            for (p, m) in d.terms() {
                prop_assert!(phi.valuation(&c, p).unwrap() >= -m);
            }
            // no poles outside the support
            for p in pool.iter().filter(|p| d.mult(p) == 0) {
                prop_assert!(phi.valuation(&c, p).unwrap() >= 0);
            }
        }
    }

    #[test]
    fn coordinates_round_trip(idx in 0usize..8, seed in any::<u64>()) {
        let (c, pool, mut rng) = setup(idx, seed);
        let d = fixtures::random_divisor(&pool, 8, &mut rng).add(&Divisor::single(CurvePoint::Infinity, 3));
        let b = rr_basis(&c, &d).unwrap();
        let coords: Vec<_> = (0..b.dim()).map(|_| random_element(&c, &mut rng)).collect();
        let phi = b.combine(&coords).unwrap();
        prop_assert_eq!(b.coordinates(&phi).unwrap(), coords);
    }

    #[test]
    fn valuations_are_additive(idx in 0usize..8, seed in any::<u64>()) {
        let (c, pool, mut rng) = setup(idx, seed);
        let d1 = fixtures::random_divisor(&pool, 6, &mut rng).add(&Divisor::single(CurvePoint::Infinity, 4));
        let d2 = fixtures::random_divisor(&pool, 6, &mut rng).add(&Divisor::single(CurvePoint::Infinity, 4));
        let f = random_section(&c, &d1, &mut rng);
        let g = random_section(&c, &d2, &mut rng);
        prop_assume!(!f.is_zero() && !g.is_zero());
        let fg = f.mul(&g, &c);
        let p = &pool[rng.gen_range(0..pool.len())];
        prop_assert_eq!(
            fg.valuation(&c, p).unwrap(),
            f.valuation(&c, p).unwrap() + g.valuation(&c, p).unwrap()
        );
        let q = f.div(&g, &c).unwrap();
        prop_assert_eq!(
            q.valuation(&c, p).unwrap(),
            f.valuation(&c, p).unwrap() - g.valuation(&c, p).unwrap()
        );
    }

    #[test]
    fn products_are_symmetric_and_bilinear(idx in 0usize..8, seed in any::<u64>()) {
        let (c, pool, mut rng) = setup(idx, seed);
        let d = fixtures::random_divisor(&pool, 4, &mut rng).add(&Divisor::single(CurvePoint::Infinity, 3));
        let target = rr_basis(&c, &d.scale(2)).unwrap();
        let s = random_section(&c, &d, &mut rng);
        let t = random_section(&c, &d, &mut rng);
        let u = random_section(&c, &d, &mut rng);
        let st = product_coordinates(&s, &t, &target).unwrap();
        prop_assert_eq!(&st, &product_coordinates(&t, &s, &target).unwrap());
        let k = random_element(&c, &mut rng);
        let lhs = product_coordinates(&s.scale(&k).add(&u), &t, &target).unwrap();
        let su = product_coordinates(&u, &t, &target).unwrap();
        let rhs: Vec<_> = st.iter().zip(&su).map(|(a, b)| &(a * &k) + b).collect();
        prop_assert_eq!(lhs, rhs);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Over finite fields the divisor of a function is computed by
    /// factoring; it has degree zero and is recognised as principal.
    #[test]
    fn principal_divisors(idx in 0usize..8, seed in any::<u64>()) {
        let (c, pool, mut rng) = setup(idx, seed);
        prop_assume!(c.field().is_finite());
        let d = fixtures::random_divisor(&pool, 4, &mut rng).add(&Divisor::single(CurvePoint::Infinity, 4));
        let f = random_section(&c, &d, &mut rng);
        prop_assume!(!f.is_zero());
        let div = f.principal_divisor(&c).unwrap();
        prop_assert_eq!(div.degree(), 0);
        let w = is_principal(&c, &div.neg()).unwrap();
        prop_assert!(w.is_some());
        // the witness agrees with f up to a constant
        let ratio = f.div(&w.unwrap(), &c).unwrap();
        prop_assert!(ratio.b().is_zero() && ratio.a().deg() == 0 && ratio.c().deg() == 0);
    }
}

#[test]
fn riemann_roch_suite_on_named_fixtures() {
    let named = [
        fixtures::elliptic_q(),
        fixtures::elliptic_f5(),
        fixtures::genus2_q(),
        fixtures::genus2_f7(),
        fixtures::genus3_f5(),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut checked = 0;
    for c in &named {
        let pool = fixtures::point_pool(c).unwrap();
        let g = c.genus() as i64;
        for _ in 0..48 {
            let d = fixtures::random_divisor(&pool, 4 * g + 6, &mut rng);
            let lhs = h0(c, &d).unwrap() as i64 - h1(c, &d).unwrap() as i64;
            assert_eq!(
                lhs,
                d.degree() - g + 1,
                "{d} on {}",
                c.label().unwrap_or("?")
            );
            checked += 1;
        }
    }
    assert!(checked >= 200);
}

#[test]
fn point_counts_over_small_fields() {
    // brute force: one point per root of f, two per nonzero square, plus infinity
    for c in fixtures::all_curves()
        .into_iter()
        .filter(|c| c.field().is_finite())
    {
        let mut n = 1u64;
        for x in c.field().elements().unwrap() {
            let v = c.f().eval(&x);
            n += if v.is_zero() {
                1
            } else if v.is_square() {
                2
            } else {
                0
            };
        }
        assert_eq!(c.rational_point_count().unwrap(), n);
        assert!(c.satisfies_weil_bound().unwrap());
    }
}

/// `(0, 1)` on `y^2 = x^3 + 1` is a flex: `div(y - 1) = 3P - 3 inf`.
#[test]
fn flex_point_has_order_three() {
    let c = fixtures::elliptic_q();
    let q = c.field().clone();
    let p = c.rational_point(&q.zero(), &q.one()).unwrap();
    let d = |k: i64| Divisor::from_terms([(p.clone(), k), (CurvePoint::Infinity, -k)]);
    assert!(is_principal(&c, &d(1)).unwrap().is_none());
    assert!(is_principal(&c, &d(2)).unwrap().is_none());
    let w = is_principal(&c, &d(-3)).unwrap().unwrap();
    assert_eq!(w.to_string(), "-1 + (1)*y");
}
