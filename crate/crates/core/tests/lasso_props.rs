use lassokit::lasso::{equivalents_within, gamma_equiv, normal_form, primitive_root, up_equal, Lasso};
use lassokit::Alphabet;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};

fn config() -> Config {
    Config { cases: 300, rng_seed: RngSeed::Fixed(11), failure_persistence: None, ..Config::default() }
}

fn lasso() -> impl Strategy<Value = Lasso> {
    ("[ab]{0,5}", "[ab]{1,5}").prop_map(|(u, v)| Lasso::new(u, v).unwrap())
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn normal_forms_are_irreducible(l in lasso()) {
        let nf = normal_form(&l);
        prop_assert_eq!(primitive_root(nf.cycle()), nf.cycle());
        prop_assert!(nf.spoke().is_empty() || nf.spoke().chars().last() != nf.cycle().chars().last());
        prop_assert!(nf.reduce_step().is_none());
    }

    #[test]
    fn stepwise_reduction_reaches_the_normal_form(l in lasso()) {
        let mut cur = l.clone();
        while let Some(next) = cur.reduce_step() {
            prop_assert!(next.size() < cur.size());
            cur = next;
        }
        prop_assert_eq!(cur, normal_form(&l));
    }

    #[test]
    fn expansions_stay_in_the_class(l in lasso(), k in 2usize..5) {
        for x in l.expansions(k) {
            prop_assert!(gamma_equiv(&x, &l));
            prop_assert!(up_equal(&x, &l));
        }
    }

    #[test]
    fn literal_round_trip(l in lasso()) {
        prop_assert_eq!(Lasso::parse(&l.to_string()).unwrap(), l);
    }

    #[test]
    fn bounded_equivalents_are_equivalent(l in lasso()) {
        let eq = equivalents_within(&l, 6, 6);
        prop_assert!(eq.iter().all(|x| gamma_equiv(x, &l) && x.spoke().len() <= 6 && x.cycle().len() <= 6));
        if l.spoke().len() <= 6 && l.cycle().len() <= 6 {
            prop_assert!(eq.contains(&l));
        }
    }
}

#[test]
fn lasso_alphabet_check() {
    let a = Alphabet::from_letters("a").unwrap();
    assert!(Lasso::parse("a:b").unwrap().check_alphabet(&a).is_err());
    assert!(Lasso::parse("a:aa").unwrap().check_alphabet(&a).is_ok());
}
