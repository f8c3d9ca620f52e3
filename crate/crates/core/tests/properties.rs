use proptest::prelude::*;

use qec_core::aq::parse;
use qec_core::modules::{ModuleDescriptor, ModulePresentation};
use qec_core::{AqElement, LaurentPoly, Scalar};

fn scalar() -> impl Strategy<Value = Scalar> {
    (-9i64..=9, 1i64..=5).prop_map(|(n, d)| Scalar::new(n, d))
}

fn laurent() -> impl Strategy<Value = LaurentPoly> {
    (-3i64..=3, prop::collection::vec(scalar(), 0..4)).prop_map(|(lo, cs)| LaurentPoly::new(lo, cs))
}

fn element() -> impl Strategy<Value = AqElement> {
    (-2i64..=2, prop::collection::vec(laurent(), 0..4)).prop_map(|(lo, fs)| {
        AqElement::from_terms(fs.into_iter().enumerate().map(|(i, f)| (lo + i as i64, f)))
    })
}

proptest! {
    #[test]
    fn laurent_ring_laws(a in laurent(), b in laurent(), c in laurent()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        let x = Scalar::new(5, 7);
        prop_assert_eq!((&a * &b).eval(&x), &a.eval(&x) * &b.eval(&x));
    }

    #[test]
    fn qshift_is_a_ring_map(a in laurent(), b in laurent(), k in -3i64..=3) {
        prop_assert_eq!((&a * &b).qshift(k), &a.qshift(k) * &b.qshift(k));
        prop_assert_eq!(a.qshift(k).qshift(-k), a);
    }

    #[test]
    fn sigma_twists_coefficients(f in laurent(), k in -3i64..=3) {
        // σ^k f = f(q^k z) σ^k
        let lhs = &AqElement::sigma_pow(k) * &AqElement::from_laurent(f.clone());
        prop_assert_eq!(lhs, AqElement::from_term(k, f.qshift(k)));
    }

    #[test]
    fn elements_form_a_ring(x in element(), y in element(), w in element()) {
        prop_assert_eq!(&(&x * &y) * &w, &x * &(&y * &w));
        prop_assert_eq!(&(&x + &y) * &w, &(&x * &w) + &(&y * &w));
        prop_assert!((&x - &x).is_zero());
    }

    #[test]
    fn printed_elements_parse_back(x in element()) {
        prop_assert_eq!(parse(&x.to_string()).unwrap(), x);
    }

    #[test]
    fn line_descriptors_round_trip(c in scalar(), m in -6i64..=6) {
        prop_assume!(!c.is_zero());
        let l = ModulePresentation::line(c, m).unwrap();
        let text = ModuleDescriptor::from_module(&l).to_json().to_string();
        prop_assert_eq!(ModuleDescriptor::parse_json(&text).unwrap().to_module().unwrap(), l);
    }
}
