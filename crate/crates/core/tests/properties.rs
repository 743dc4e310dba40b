use civita_core::integrate::integral_simple;
use civita_core::{
    make_delta, ExtReal, IntervalLc, LcNumber, MeasurableSet, PiecewiseFn, PowerSeriesFn, Rational, Real, RealExpr,
    Truncation,
};
use proptest::prelude::*;

const T: Truncation = Truncation { depth: 16, zeta: 0.0 };

fn term() -> impl Strategy<Value = (Rational, Real)> {
    (-4i64..10, prop::sample::select(vec![1i64, 2, 3]), -9i64..10, 1i64..6)
        .prop_filter("non-zero coefficient", |t| t.2 != 0)
        .prop_map(|(p, q, n, m)| (Rational::new(p, q), Real::ratio(n, m)))
}

fn lc() -> impl Strategy<Value = LcNumber> {
    prop::collection::vec(term(), 0..4).prop_map(|t| T.from_terms(t))
}

fn finite_lc() -> impl Strategy<Value = LcNumber> {
    prop::collection::vec(term(), 0..4)
        .prop_map(|t| T.from_terms(t.into_iter().map(|(q, c)| (if q < Rational::from_integer(0) { -q } else { q }, c))))
}

fn nonzero_lc() -> impl Strategy<Value = LcNumber> {
    prop::collection::vec(term(), 1..4).prop_map(|t| T.from_terms(t))
}

/// Sorted disjoint closed intervals with endpoints of the form `k/4 + j d`.
fn measurable_set() -> impl Strategy<Value = MeasurableSet> {
    prop::collection::vec((1i64..8, 0i64..3, 0i64..6, -2i64..3), 0..6).prop_map(|parts| {
        let mut at = T.zero();
        let mut intervals = Vec::new();
        for (gap, gap_d, len, len_d) in parts {
            let lo = &at + &(&T.ratio(gap, 4) + &(&T.int(gap_d) * &T.d()));
            let mut length = &T.ratio(len, 4) + &(&T.int(len_d) * &T.d());
            if length.signum() < 0 {
                length = -length;
            }
            let hi = &lo + &length;
            intervals.push(IntervalLc::closed(lo, hi.clone()).unwrap());
            at = hi;
        }
        MeasurableSet::new(T, intervals, None).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn addition_and_multiplication_are_commutative_and_associative(a in lc(), b in lc(), c in lc()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn distributivity_within_window(a in lc(), b in lc(), c in lc()) {
        let left = &a * &(&b + &c);
        let right = &(&a * &b) + &(&a * &c);
        prop_assert!(left.agrees_with(&right), "{} vs {}", left, right);
    }

    #[test]
    fn inverse_within_window(a in nonzero_lc()) {
        let p = &a * &a.inv().unwrap();
        prop_assert!(p.agrees_with(&T.one()), "{}", p);
    }

    #[test]
    fn order_is_compatible(a in lc(), b in lc(), c in lc()) {
        if a.lt(&b) {
            prop_assert!((&a + &c).lt(&(&b + &c)));
            if c.signum() > 0 {
                prop_assert!((&a * &c).lt(&(&b * &c)));
            }
        }
    }

    #[test]
    fn standard_part_is_a_monotone_homomorphism(a in finite_lc(), b in finite_lc()) {
        let (sa, sb) = (a.standard_part(), b.standard_part());
        let (x, y) = (sa.finite().unwrap(), sb.finite().unwrap());
        prop_assert_eq!((&a + &b).standard_part(), ExtReal::Finite(x + y));
        prop_assert_eq!((&a * &b).standard_part(), ExtReal::Finite(x * y));
        if a.le(&b) {
            prop_assert!(x <= y);
        }
    }

    #[test]
    fn valuation_is_additive(a in nonzero_lc(), b in nonzero_lc()) {
        let l = (&a * &b).lambda().unwrap();
        prop_assert_eq!(l, a.lambda().unwrap() + b.lambda().unwrap());
    }

    #[test]
    fn text_round_trip(a in lc()) {
        prop_assert_eq!(T.parse(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn standard_part_of_measure_is_real_measure(a in measurable_set()) {
        prop_assert_eq!(a.m_measure().value.standard_part(), a.ml_measure());
    }

    #[test]
    fn translation_preserves_measures(a in measurable_set(), x in lc()) {
        let moved = a.translate(&x);
        prop_assert_eq!(moved.ml_measure(), a.ml_measure());
        prop_assert_eq!(moved.m_measure().value, a.m_measure().value);
    }

    #[test]
    fn homogeneity_for_finite_factors(a in measurable_set(), x in finite_lc()) {
        let (scaled, report) = a.scale(&x);
        let factor = x.abs().standard_part();
        prop_assert_eq!(scaled.ml_measure(), a.ml_measure().scale(factor.finite().unwrap()));
        prop_assert_eq!(report.homogeneity, civita_core::measure::Homogeneity::Verified);
    }

    #[test]
    fn shadow_preserves_measure(a in measurable_set()) {
        let s = a.shadow().unwrap();
        prop_assert_eq!(ExtReal::Finite(s.measure), a.ml_measure());
    }

    #[test]
    fn monotone_and_additive(a in measurable_set(), shift in 40i64..60) {
        let b = a.translate(&T.int(shift));
        let union = a.disjoint_union(&b).unwrap();
        prop_assert!(a.is_subset_of(&union));
        prop_assert!(a.ml_measure() <= union.ml_measure());
        prop_assert_eq!(union.ml_measure(), a.ml_measure().checked_add(&b.ml_measure()).unwrap());
    }

    #[test]
    fn simple_integral_is_additive(c in prop::collection::vec(-5i64..6, 1..6), cut in 1i64..7) {
        let whole = IntervalLc::closed(T.zero(), T.int(2)).unwrap();
        let f = PowerSeriesFn::new(whole.clone(), T.one(), c.iter().map(|&n| T.int(n)).collect()).unwrap();
        let b = T.ratio(cut, 4) + T.d();
        let left = f.integral(&IntervalLc::closed(T.zero(), b.clone()).unwrap()).unwrap();
        let right = f.integral(&IntervalLc::closed(b, T.int(2)).unwrap()).unwrap();
        prop_assert!((&left + &right).agrees_with(&f.integral(&whole).unwrap()));
        let g = f.antiderivative();
        let back = g.derivative();
        prop_assert_eq!(back.finite_coeffs().unwrap(), f.finite_coeffs().unwrap());
    }

    #[test]
    fn standard_part_of_simple_integral(c in prop::collection::vec(-5i64..6, 1..5)) {
        let iv = IntervalLc::closed(T.zero(), T.one() + T.d()).unwrap();
        let f = PowerSeriesFn::new(iv.clone(), T.zero(), c.iter().map(|&n| T.int(n)).collect()).unwrap();
        let pf = PiecewiseFn::new(vec![f]).unwrap();
        let set = MeasurableSet::new(T, vec![iv], None).unwrap();
        let lc = integral_simple(&pf, &set, None).unwrap().value;
        let exact: Real = c.iter().enumerate().fold(Real::zero(), |acc, (n, &a)| &acc + &Real::ratio(a, n as i64 + 1));
        prop_assert_eq!(lc.standard_part(), ExtReal::Finite(exact));
    }

    #[test]
    fn delta_normalization(k in 0u32..5, num in -8i64..9, hp in 1i64..3) {
        let r = T.ratio(num, 8) + T.d();
        let h = T.d().powi(hp).unwrap();
        let (spec, f) = make_delta(&r, &h, k).unwrap();
        prop_assert_eq!(f.pieces()[0].integral(&spec.support()).unwrap(), T.one());
    }

    #[test]
    fn symbolic_derivative_matches_finite_differences(
        c in prop::collection::vec(-3.0f64..3.0, 1..5),
        x in -1.5f64..1.5,
        wrap in 0usize..4,
    ) {
        let poly = c.iter().enumerate().map(|(n, a)| format!("({})*x^{}", a, n)).collect::<Vec<_>>().join(" + ");
        let src = match wrap {
            0 => poly,
            1 => format!("sin({})", poly),
            2 => format!("exp(({})/4)", poly),
            _ => format!("1/(2 + ({})^2)", poly),
        };
        let e: RealExpr = src.parse().unwrap();
        let h = 1e-5;
        let fd = (e.eval(x + h).unwrap() - e.eval(x - h).unwrap()) / (2.0 * h);
        let d = e.diff().eval(x).unwrap();
        prop_assert!((fd - d).abs() <= 1e-5 * (1.0 + d.abs()), "{}: {} vs {}", src, fd, d);
    }
}
