//! Linear functionals on a graded basis, and their convolution algebra.
//!
//! A [`Functional`] is a memoized rule on basis labels. The memo is shared
//! between clones and is written idempotently, so a functional may be
//! evaluated from several threads at once.

use std::collections::HashMap;
use std::hash::Hash;
use std::sync::{Arc, RwLock};

use num_traits::Zero;

use crate::composition::Composition;
use crate::element::{Element, Terms};
use crate::error::{Error, Result};
use crate::hopf::{HopfProvider, QSymHopf};
use crate::rational::{from_u128, factorial, one, q, zero, Rational};

type Rule<K> = dyn Fn(&Functional<K>, &K) -> Rational + Send + Sync;

struct Inner<K> {
    rule: Box<Rule<K>>,
    memo: RwLock<HashMap<K, Rational>>,
}

pub struct Functional<K = Composition> {
    inner: Arc<Inner<K>>,
}

impl<K> Clone for Functional<K> {
    fn clone(&self) -> Self {
        Functional { inner: Arc::clone(&self.inner) }
    }
}

impl<K> std::fmt::Debug for Functional<K> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let n = self.inner.memo.read().map(|m| m.len()).unwrap_or(0);
        write!(f, "Functional {{ memoized: {n} }}")
    }
}

impl<K: Clone + Eq + Hash + Send + Sync + 'static> Functional<K> {
    pub fn new(rule: impl Fn(&K) -> Rational + Send + Sync + 'static) -> Self {
        Self::recursive(move |_, k| rule(k))
    }

    /// A rule that may evaluate the functional itself on other labels.
    /// The recursion must be well founded.
    pub fn recursive(rule: impl Fn(&Functional<K>, &K) -> Rational + Send + Sync + 'static) -> Self {
        Functional { inner: Arc::new(Inner { rule: Box::new(rule), memo: RwLock::new(HashMap::new()) }) }
    }

    pub fn zero() -> Self {
        Self::new(|_| zero())
    }

    pub fn eval(&self, k: &K) -> Rational {
        if let Some(v) = self.inner.memo.read().expect("memo poisoned").get(k) {
            return v.clone();
        }
        // not holding the lock here: the rule may recurse into eval
        let v = (self.inner.rule)(self, k);
        self.inner.memo.write().expect("memo poisoned").entry(k.clone()).or_insert(v).clone()
    }

    pub fn apply(&self, terms: &Terms<K>) -> Rational
    where
        K: Ord,
    {
        terms.iter().map(|(k, c)| c * self.eval(k)).sum()
    }

    pub fn add(&self, other: &Functional<K>) -> Functional<K> {
        let (a, b) = (self.clone(), other.clone());
        Functional::new(move |k| a.eval(k) + b.eval(k))
    }

    pub fn sub(&self, other: &Functional<K>) -> Functional<K> {
        let (a, b) = (self.clone(), other.clone());
        Functional::new(move |k| a.eval(k) - b.eval(k))
    }

    pub fn scale(&self, c: &Rational) -> Functional<K> {
        let (a, c) = (self.clone(), c.clone());
        Functional::new(move |k| &c * a.eval(k))
    }
}

impl Functional<Composition> {
    /// Value at `∅` plus a rule on nonempty compositions.
    pub fn from_parts(
        at_empty: Rational,
        on_nonempty: impl Fn(&Composition) -> Rational + Send + Sync + 'static,
    ) -> Self {
        Functional::new(move |a: &Composition| if a.is_empty() { at_empty.clone() } else { on_nonempty(a) })
    }

    pub fn value_at_empty(&self) -> Rational {
        self.eval(&Composition::empty())
    }

    /// Linear extension to an element of `M` or `X`.
    pub fn apply_element(&self, h: &Element) -> Rational {
        self.apply(h.terms())
    }
}

/// The counit `ε` of a provider.
pub fn counit_in<H: HopfProvider>(h: &H) -> Functional<H::Label> {
    let h = h.clone();
    Functional::new(move |x| h.counit(x))
}

/// `(φ * ψ)(x) = Σ φ(x₁) ψ(x₂)` over `Δx`.
pub fn convolve_in<H: HopfProvider>(
    h: &H,
    phi: &Functional<H::Label>,
    psi: &Functional<H::Label>,
) -> Functional<H::Label> {
    let (h, phi, psi) = (h.clone(), phi.clone(), psi.clone());
    Functional::new(move |x| h.coproduct(x).iter().map(|((a, b), c)| c * phi.eval(a) * psi.eval(b)).sum())
}

/// Convolution inverse by recursion on degree: the terms of
/// `Σ φ⁻¹(x₁) φ(x₂) = ε(x)` with `x₂` of degree 0 are solved for `φ⁻¹(x)`.
pub fn inverse_in<H: HopfProvider>(h: &H, phi: &Functional<H::Label>) -> Result<Functional<H::Label>> {
    let at_unit = phi.eval(&h.unit());
    if at_unit.is_zero() {
        return Err(Error::NotInvertible);
    }
    let (h, phi) = (h.clone(), phi.clone());
    Ok(Functional::recursive(move |inv, x| {
        let mut rhs = h.counit(x);
        let mut lead = zero();
        for ((a, b), c) in h.coproduct(x) {
            if h.degree(&b) == 0 {
                lead += c * phi.eval(&b);
            } else {
                rhs -= c * inv.eval(&a) * phi.eval(&b);
            }
        }
        rhs / lead
    }))
}

fn check_degree_zero<H: HopfProvider>(h: &H, phi: &Functional<H::Label>, expected: Rational) -> bool {
    phi.eval(&h.unit()) == expected
}

/// Convolution powers `φ^{*0} = ε, …, φ^{*m}`.
fn powers_in<H: HopfProvider>(h: &H, phi: &Functional<H::Label>, m: usize) -> Vec<Functional<H::Label>> {
    let mut out = vec![counit_in(h)];
    for i in 1..=m {
        let next = convolve_in(h, &out[i - 1], phi);
        out.push(next);
    }
    out
}

/// `exp ξ = Σ ξ^{*m}/m!`, exact on every label of degree ≤ `max_degree`.
/// Above that degree the series is truncated at `m = max_degree`.
pub fn exp_in<H: HopfProvider>(
    h: &H,
    xi: &Functional<H::Label>,
    max_degree: usize,
) -> Result<Functional<H::Label>> {
    if !check_degree_zero(h, xi, zero()) {
        return Err(Error::NonvanishingAtEmpty);
    }
    let powers = powers_in(h, xi, max_degree);
    let h = h.clone();
    Ok(Functional::new(move |x| {
        let top = h.degree(x).min(max_degree);
        (0..=top).map(|m| powers[m].eval(x) / from_u128(factorial(m))).sum()
    }))
}

/// `log ζ = Σ_{m≥1} (-1)^{m-1}/m (ζ - ε)^{*m}`, exact up to `max_degree`.
pub fn log_in<H: HopfProvider>(
    h: &H,
    zeta: &Functional<H::Label>,
    max_degree: usize,
) -> Result<Functional<H::Label>> {
    if !check_degree_zero(h, zeta, one()) {
        return Err(Error::WrongValueAtEmpty);
    }
    let shifted = zeta.sub(&counit_in(h));
    let powers = powers_in(h, &shifted, max_degree);
    let h = h.clone();
    Ok(Functional::new(move |x| {
        let top = h.degree(x).min(max_degree);
        (1..=top)
            .map(|m| {
                let s = if m % 2 == 1 { 1 } else { -1 };
                q(s, m as i64) * powers[m].eval(x)
            })
            .sum()
    }))
}

/// `[ξ, ξ'] = ξ * ξ' - ξ' * ξ`.
pub fn lie_bracket_in<H: HopfProvider>(
    h: &H,
    a: &Functional<H::Label>,
    b: &Functional<H::Label>,
) -> Functional<H::Label> {
    convolve_in(h, a, b).sub(&convolve_in(h, b, a))
}

/// Convolution over deconcatenation, valid in both `M` and `X`.
pub fn convolve(phi: &Functional, psi: &Functional) -> Functional {
    convolve_in(&QSymHopf, phi, psi)
}

pub fn functional_inverse(phi: &Functional) -> Result<Functional> {
    inverse_in(&QSymHopf, phi)
}

pub fn exp_functional(xi: &Functional, max_degree: usize) -> Result<Functional> {
    exp_in(&QSymHopf, xi, max_degree)
}

pub fn log_functional(zeta: &Functional, max_degree: usize) -> Result<Functional> {
    log_in(&QSymHopf, zeta, max_degree)
}

pub fn lie_bracket(a: &Functional, b: &Functional) -> Functional {
    lie_bracket_in(&QSymHopf, a, b)
}

/// The counit on compositions: `1` at `∅`, `0` elsewhere.
pub fn counit() -> Functional {
    Functional::from_parts(one(), |_| zero())
}

/// Evaluations of two functionals agree on every composition of size ≤ `max_degree`;
/// returns the first disagreement in canonical order.
pub fn first_disagreement(a: &Functional, b: &Functional, max_degree: usize) -> Option<Composition> {
    (0..=max_degree)
        .flat_map(crate::composition::compositions_of)
        .find(|c| a.eval(c) != b.eval(c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::comp;
    use crate::element::{antipode_monomial, Basis};
    use crate::hopf::ShHopf;
    use crate::rational::int;

    fn zeta_q() -> Functional {
        Functional::new(|a: &Composition| if a.len() <= 1 { one() } else { zero() })
    }

    fn xi_s() -> Functional {
        Functional::new(|a: &Composition| if a.len() == 1 { one() } else { zero() })
    }

    #[test]
    fn convolution_examples() {
        let z = zeta_q();
        assert_eq!(convolve(&z, &z).eval(&comp![1]), int(2));
        let x = xi_s();
        assert_eq!(convolve(&x, &x).eval(&comp![1, 1]), int(1));
        assert!(first_disagreement(&convolve(&counit(), &z), &z, 6).is_none());
    }

    #[test]
    fn inverse_is_character_composed_with_antipode() {
        let z = zeta_q();
        let inv = functional_inverse(&z).unwrap();
        for n in 0..=6 {
            for a in crate::composition::compositions_of(n) {
                let s = antipode_monomial(&Element::basis_element(Basis::M, a.clone())).unwrap();
                assert_eq!(inv.eval(&a), z.apply_element(&s), "{a}");
            }
        }
        assert!(first_disagreement(&convolve(&inv, &z), &counit(), 6).is_none());
        assert!(first_disagreement(&convolve(&z, &inv), &counit(), 6).is_none());
        assert_eq!(functional_inverse(&xi_s()).unwrap_err(), Error::NotInvertible);
    }

    #[test]
    fn inverse_of_shifted_infinitesimal() {
        let f = xi_s().add(&counit());
        let inv = functional_inverse(&f).unwrap();
        assert!(first_disagreement(&convolve(&inv, &f), &counit(), 6).is_none());
        assert!(first_disagreement(&inverse_in(&ShHopf, &inv).unwrap(), &f, 6).is_none());
    }

    #[test]
    fn exp_and_log_examples() {
        let e = exp_functional(&Functional::zero(), 6).unwrap();
        assert!(first_disagreement(&e, &counit(), 6).is_none());
        assert_eq!(exp_functional(&xi_s(), 6).unwrap().eval(&comp![1, 1]), q(1, 2));
        assert_eq!(log_functional(&zeta_q(), 6).unwrap().eval(&comp![1, 1]), q(-1, 2));
        let l = log_functional(&counit(), 6).unwrap();
        assert!(first_disagreement(&l, &Functional::zero(), 6).is_none());
        assert_eq!(exp_functional(&zeta_q(), 3).unwrap_err(), Error::NonvanishingAtEmpty);
        assert_eq!(log_functional(&xi_s(), 3).unwrap_err(), Error::WrongValueAtEmpty);
    }

    #[test]
    fn log_exp_round_trip() {
        let z = zeta_q();
        let back = exp_functional(&log_functional(&z, 6).unwrap(), 6).unwrap();
        assert!(first_disagreement(&back, &z, 6).is_none());
    }

    #[test]
    fn bracket_is_antisymmetric() {
        let x = xi_s();
        let b = lie_bracket(&x, &x);
        assert!(first_disagreement(&b, &Functional::zero(), 6).is_none());
        let doubled = Functional::new(|a: &Composition| {
            if a.len() == 1 {
                from_u128(1u128 << a.size())
            } else {
                zero()
            }
        });
        let ab = lie_bracket(&x, &doubled);
        let ba = lie_bracket(&doubled, &x);
        for c in [comp![1, 2], comp![2, 1]] {
            assert_eq!(ab.eval(&c), -ba.eval(&c));
        }
        assert_ne!(ab.eval(&comp![1, 2]), zero());
    }

    #[test]
    fn concurrent_evaluation_is_consistent() {
        use rayon::prelude::*;
        let inv = functional_inverse(&zeta_q()).unwrap();
        let all: Vec<_> = crate::composition::nonempty_compositions_up_to(7);
        let par: Vec<_> = all.par_iter().map(|c| inv.eval(c)).collect();
        let fresh = functional_inverse(&zeta_q()).unwrap();
        let seq: Vec<_> = all.iter().map(|c| fresh.eval(c)).collect();
        assert_eq!(par, seq);
    }
}
