use proptest::prelude::*;

use qsym_core::character::{basis_contract, basis_expand, f_to_g, g_to_f, to_monomial};
use qsym_core::composition::{
    coarsenings, compositions_of, extend_over_refinement, nonempty_compositions_up_to, quasi_shuffle,
    rearrangements, shuffle, Composition,
};
use qsym_core::constructions::{combinatorial, even_odd_default, type_one, type_two};
use qsym_core::element::{coproduct, product, TensorElement};
use qsym_core::functional::{
    convolve, exp_functional, first_disagreement, functional_inverse, lie_bracket, log_functional,
};
use qsym_core::hopf::{is_infinitesimal_character, QSymHopf};
use qsym_core::polynomial::{expand_polynomial, multiply};
use qsym_core::rational::{int, q};
use qsym_core::universal::{canonical, Canonical};
use qsym_core::{Basis, Element, Functional};

fn composition(max_size: u32) -> impl Strategy<Value = Composition> {
    prop::collection::vec(1..=max_size, 0..=max_size as usize)
        .prop_filter("size bound", move |v| v.iter().sum::<u32>() <= max_size)
        .prop_map(|v| Composition::new(v).unwrap())
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

proptest! {
    #[test]
    fn shuffle_count_is_binomial(a in composition(5), b in composition(5)) {
        let total = shuffle(&a, &b).total();
        prop_assert_eq!(total, binomial((a.len() + b.len()) as u64, a.len() as u64));
    }

    #[test]
    fn quasi_shuffle_matches_polynomial_product(a in composition(3), b in composition(3)) {
        let vars = a.len() + b.len();
        let mut qs = Element::zero(Basis::M);
        for (c, m) in quasi_shuffle(&a, &b).iter() {
            qs.add_term(c.clone(), int(m as i64));
        }
        let lhs = expand_polynomial(&qs, vars).unwrap();
        let rhs = multiply(
            &expand_polynomial(&Element::monomial(a), vars).unwrap(),
            &expand_polynomial(&Element::monomial(b), vars).unwrap(),
        );
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn coarsenings_are_subsets_of_cuts(a in composition(8)) {
        let expected = if a.is_empty() { 1 } else { 1usize << (a.len() - 1) };
        prop_assert_eq!(coarsenings(&a).len(), expected);
    }

    #[test]
    fn refinement_extension_is_multiplicative(a1 in composition(4), a2 in composition(4), seed in 0u64..1000) {
        // pick a coarsening of each half from the seed
        let c1 = coarsenings(&a1);
        let c2 = coarsenings(&a2);
        let b1 = &c1[seed as usize % c1.len()];
        let b2 = &c2[(seed / 7) as usize % c2.len()];
        let f = |c: &Composition| q(c.len() as i64 + 1, c.size() as i64 + 2);
        let joint = extend_over_refinement(f, &a1.concat(&a2), &b1.concat(b2)).unwrap();
        let split = extend_over_refinement(f, &a1, b1).unwrap() * extend_over_refinement(f, &a2, b2).unwrap();
        prop_assert_eq!(joint, split);
    }

    #[test]
    fn rearrangement_count(a in composition(7)) {
        let n = rearrangements(&a).len() as u64;
        prop_assert_eq!(n, factorial(a.len() as u64) / a.aut() as u64);
        prop_assert!(rearrangements(&a).iter().all(|r| r.is_rearrangement_of(&a)));
    }
}

#[test]
fn bialgebra_compatibility() {
    for basis in [Basis::M, Basis::X] {
        let all: Vec<Composition> = (0..=5).flat_map(compositions_of).collect();
        for a in &all {
            for b in all.iter().filter(|b| a.size() + b.size() <= 5) {
                let x = Element::basis_element(basis.clone(), a.clone());
                let y = Element::basis_element(basis.clone(), b.clone());
                let lhs = coproduct(&product(&x, &y).unwrap()).unwrap();
                let rhs = coproduct(&x).unwrap().product(&coproduct(&y).unwrap()).unwrap();
                assert_eq!(lhs, rhs, "Δ(ab) ≠ Δ(a)Δ(b) in {basis} at {a}, {b}");
            }
        }
    }
}

#[test]
fn tensor_of_units() {
    let one = Element::unit(Basis::M);
    let t = TensorElement::tensor(&one, &one).unwrap();
    assert_eq!(t.coefficient(&Composition::empty(), &Composition::empty()), int(1));
}

#[test]
fn inverse_of_a_character_is_composition_with_the_antipode() {
    let exp_eta = exp_functional(&canonical(Canonical::Eta), 6).unwrap();
    for zeta in [canonical(Canonical::ZetaQ), canonical(Canonical::BarZetaQ), exp_eta] {
        let inv = functional_inverse(&zeta).unwrap();
        for a in nonempty_compositions_up_to(6) {
            let s = qsym_core::element::antipode_monomial(&Element::monomial(a.clone())).unwrap();
            assert_eq!(inv.eval(&a), zeta.apply_element(&s), "at {a}");
        }
        assert!(first_disagreement(&convolve(&zeta, &inv), &qsym_core::functional::counit(), 6).is_none());
    }
}

#[test]
fn bracket_of_infinitesimal_characters_is_infinitesimal() {
    let a = canonical(Canonical::Eta);
    let b = log_functional(&canonical(Canonical::ZetaQ), 6).unwrap();
    assert!(is_infinitesimal_character(&QSymHopf, &b, 6).is_ok());
    let bracket = lie_bracket(&a, &b);
    assert!(is_infinitesimal_character(&QSymHopf, &bracket, 6).is_ok());
    assert!(first_disagreement(&lie_bracket(&a, &a), &Functional::zero(), 6).is_none());
}

#[test]
fn f_and_g_round_trip_and_bases_are_inverse() {
    for f in [type_one(7).unwrap(), type_two(7).unwrap(), even_odd_default(7).unwrap(), combinatorial(7).unwrap()] {
        let g = f_to_g(&f, 7).unwrap();
        let back = g_to_f(&g, 7).unwrap();
        assert!(first_disagreement(back.functional(), f.functional(), 7).is_none(), "{}", f.name());
        for a in nonempty_compositions_up_to(7) {
            let m = to_monomial(&f, &basis_contract(&g, &a));
            assert_eq!(m, Element::monomial(a.clone()), "{}: M_{a}", f.name());
            assert_eq!(basis_expand(&f, &a).coefficient(&a), int(1));
        }
    }
}
