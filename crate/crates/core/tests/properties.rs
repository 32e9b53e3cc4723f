use proptest::prelude::*;

use superspin::dsl::parse;
use superspin::expr::{canonicalize, Charge, Chirality, FieldSymbol, FlavorIndex, OperatorExpr, Species};
use superspin::scalars::{Poly, RatN, Rational};
use superspin::wick::{contraction_patterns, graded_symmetry_check, normal_product, ope};

fn arb_poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(-4i64..5, 0..4).prop_map(|c| Poly::from_i64s(&c))
}

fn arb_ratn() -> impl Strategy<Value = RatN> {
    (arb_poly(), arb_poly().prop_filter("nonzero denominator", |p| !p.is_zero()))
        .prop_map(|(n, d)| RatN::new(n, d).unwrap())
}

fn arb_symbol() -> impl Strategy<Value = FieldSymbol> {
    (any::<bool>(), any::<bool>(), any::<bool>(), 0u32..3, 0usize..5).prop_map(|(anti, beta, plus, deriv, ix)| {
        let index: FlavorIndex = match ix {
            0 => "i".into(),
            1 => "j".into(),
            2 => "k".into(),
            3 => 1u32.into(),
            _ => 2u32.into(),
        };
        FieldSymbol {
            chirality: if anti { Chirality::Anti } else { Chirality::Holo },
            species: if beta { Species::Beta } else { Species::Psi },
            charge: if plus { Charge::Plus } else { Charge::Minus },
            deriv,
            index,
        }
    })
}

fn arb_factors(max: usize) -> impl Strategy<Value = Vec<FieldSymbol>> {
    prop::collection::vec(arb_symbol(), 1..=max).prop_map(|mut fs| {
        let mut seen = std::collections::BTreeMap::<String, usize>::new();
        for f in &mut fs {
            if let Some(n) = f.index.name().map(str::to_string) {
                let c = seen.entry(n).or_default();
                *c += 1;
                if *c > 2 {
                    f.index = 3u32.into();
                }
            }
        }
        fs
    })
}

fn arb_expr(max_fields: usize) -> impl Strategy<Value = OperatorExpr> {
    prop::collection::vec((arb_factors(max_fields), -3i64..4), 1..3).prop_map(|terms| {
        terms.into_iter().fold(OperatorExpr::zero(), |acc, (fs, c)| {
            acc.add(&OperatorExpr::product(fs, vec![], RatN::from_int(c)).unwrap())
        })
    })
}

/// Monomials with homogeneous parity, as graded symmetry requires.
fn arb_monomial(max_fields: usize) -> impl Strategy<Value = OperatorExpr> {
    arb_factors(max_fields).prop_map(|fs| OperatorExpr::product(fs, vec![], RatN::one()).unwrap())
}

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 256, ..ProptestConfig::default() })]

    #[test]
    fn ratn_field_axioms(a in arb_ratn(), b in arb_ratn(), c in arb_ratn()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.recip().unwrap()).is_one());
        }
    }

    #[test]
    fn ratn_eval_is_a_homomorphism(a in arb_ratn(), b in arb_ratn(), n in -6i64..7) {
        let n = q(n);
        if let (Ok(x), Ok(y)) = (a.eval(&n), b.eval(&n)) {
            prop_assert_eq!((&a + &b).eval(&n).unwrap(), &x + &y);
            prop_assert_eq!((&a * &b).eval(&n).unwrap(), &x * &y);
            if let Ok(d) = a.checked_div(&b) {
                if let Ok(v) = d.eval(&n) {
                    prop_assert_eq!(v * &y, x);
                }
            }
        }
    }

    #[test]
    fn ratn_display_round_trips(a in arb_ratn()) {
        prop_assert_eq!(a.to_string().parse::<RatN>().unwrap(), a);
    }

    #[test]
    fn canonicalize_is_idempotent(fs in arb_factors(4), c in 1i64..5) {
        if let Some((m, k)) = canonicalize(fs, vec![], RatN::from_int(c)).unwrap() {
            let again = canonicalize(m.factors().to_vec(), m.deltas().to_vec(), k.clone()).unwrap();
            prop_assert_eq!(again, Some((m, k)));
        }
    }

    #[test]
    fn canonicalize_tracks_grassmann_sign(fs in arb_factors(4), swap in 0usize..3) {
        if swap + 1 >= fs.len() {
            return Ok(());
        }
        let mut swapped = fs.clone();
        swapped.swap(swap, swap + 1);
        let sign = if fs[swap].is_odd() && fs[swap + 1].is_odd() { -1 } else { 1 };
        prop_assert_eq!(
            canonicalize(swapped, vec![], RatN::from_int(sign)).unwrap(),
            canonicalize(fs, vec![], RatN::one()).unwrap()
        );
    }

    #[test]
    fn mirror_is_an_involution(e in arb_expr(3)) {
        prop_assert_eq!(e.mirror().mirror(), e);
    }

    #[test]
    fn ope_is_bilinear(a1 in arb_expr(2), a2 in arb_expr(2), b in arb_expr(2), c in -3i64..4) {
        let c = RatN::from_int(c);
        let mut lhs = ope(&a1.scale(&c).add(&a2), &b, 3).unwrap();
        let mut rhs = ope(&a1, &b, 3).unwrap().scale(&c);
        rhs.add_assign(&ope(&a2, &b, 3).unwrap());
        lhs.add_assign(&rhs.scale(&RatN::from_int(-1)));
        prop_assert!(lhs.entries().next().is_none());
    }

    #[test]
    fn holomorphic_products_have_no_antiholomorphic_poles(a in arb_monomial(3), b in arb_monomial(3)) {
        if a.is_holomorphic() && b.is_holomorphic() {
            let l = ope(&a, &b, 2).unwrap();
            prop_assert!(l.entries().all(|(&(_, q), _)| q == 0));
        }
    }

    #[test]
    fn graded_symmetry(a in arb_monomial(2), b in arb_monomial(2)) {
        if !a.is_zero() && !b.is_zero() {
            prop_assert!(graded_symmetry_check(&a, &b, 2).unwrap());
        }
    }

    #[test]
    fn identity_is_a_unit_for_the_normal_product(a in arb_expr(3)) {
        prop_assert_eq!(normal_product(&OperatorExpr::identity(), &a).unwrap(), a.clone());
        prop_assert_eq!(normal_product(&a, &OperatorExpr::identity()).unwrap(), a);
    }

    #[test]
    fn dsl_round_trip(e in arb_expr(4)) {
        let text = e.to_string();
        let back = parse(&text).map_err(|err| TestCaseError::fail(format!("{text}: {err}")))?;
        prop_assert_eq!(&back, &e);
        prop_assert_eq!(back.to_string(), text);
    }
}

#[test]
fn contraction_pattern_counts() {
    fn choose(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }
    for s in 0..6 {
        for t in 0..6 {
            let expected: usize =
                (0..=s.min(t)).map(|k| choose(s, k) * choose(t, k) * (1..=k).product::<usize>()).sum();
            assert_eq!(contraction_patterns(s, t).len(), expected, "s={s} t={t}");
        }
    }
}
