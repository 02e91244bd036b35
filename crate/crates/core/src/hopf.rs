//! The provider interface for connected graded Hopf algebras of finite type,
//! the two composition-indexed providers (QSym on `M`, Sh on `x`), iterated
//! coproduct components `Δ_α`, and the character predicates.

use std::fmt;
use std::hash::Hash;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::composition::{compositions_of, quasi_shuffle, shuffle, Composition};
use crate::element::{add_term, Terms};
use crate::functional::Functional;
use crate::rational::{self, one, zero, Rational};

/// A connected graded Hopf algebra presented by a graded basis.
///
/// Labels of degree 0 are exactly `unit()`. The coproduct must be graded and
/// counital; coassociativity is checkable with [`check_coassociativity`].
pub trait HopfProvider: Clone + Send + Sync + 'static {
    type Label: Clone + Eq + Hash + Ord + fmt::Debug + Send + Sync + 'static;

    fn unit(&self) -> Self::Label;

    fn degree(&self, x: &Self::Label) -> usize;

    fn basis_of_degree(&self, n: usize) -> Vec<Self::Label>;

    fn coproduct(&self, x: &Self::Label) -> Terms<(Self::Label, Self::Label)>;

    fn product(&self, a: &Self::Label, b: &Self::Label) -> Terms<Self::Label>;

    /// Largest degree up to which predicates are swept exhaustively when they
    /// guard a computation. Providers whose bases grow very fast lower this.
    fn precheck_degree(&self) -> usize {
        usize::MAX
    }

    fn counit(&self, x: &Self::Label) -> Rational {
        if self.degree(x) == 0 {
            one()
        } else {
            zero()
        }
    }
}

/// QSym in the monomial basis: quasi-shuffle product, deconcatenation.
#[derive(Clone, Copy, Debug, Default)]
pub struct QSymHopf;

/// The shuffle algebra in the basis `x_α`: shuffle product, deconcatenation.
#[derive(Clone, Copy, Debug, Default)]
pub struct ShHopf;

fn deconcatenation(x: &Composition) -> Terms<(Composition, Composition)> {
    x.deconcatenations().map(|pair| (pair, one())).collect()
}

impl HopfProvider for QSymHopf {
    type Label = Composition;

    fn unit(&self) -> Composition {
        Composition::empty()
    }

    fn degree(&self, x: &Composition) -> usize {
        x.size()
    }

    fn basis_of_degree(&self, n: usize) -> Vec<Composition> {
        compositions_of(n)
    }

    fn coproduct(&self, x: &Composition) -> Terms<(Composition, Composition)> {
        deconcatenation(x)
    }

    fn product(&self, a: &Composition, b: &Composition) -> Terms<Composition> {
        quasi_shuffle(a, b).iter().map(|(c, m)| (c.clone(), rational::from_u128(m as u128))).collect()
    }
}

impl HopfProvider for ShHopf {
    type Label = Composition;

    fn unit(&self) -> Composition {
        Composition::empty()
    }

    fn degree(&self, x: &Composition) -> usize {
        x.size()
    }

    fn basis_of_degree(&self, n: usize) -> Vec<Composition> {
        compositions_of(n)
    }

    fn coproduct(&self, x: &Composition) -> Terms<(Composition, Composition)> {
        deconcatenation(x)
    }

    fn product(&self, a: &Composition, b: &Composition) -> Terms<Composition> {
        shuffle(a, b).iter().map(|(c, m)| (c.clone(), rational::from_u128(m as u128))).collect()
    }
}

/// `Δ_α(x)`: the multidegree-`α` component of the iterated coproduct,
/// splitting off one tensor factor at a time from the left.
pub fn delta_alpha_in<H: HopfProvider>(
    h: &H,
    x: &H::Label,
    alpha: &Composition,
) -> Terms<Vec<H::Label>> {
    let mut out = Terms::new();
    if h.degree(x) != alpha.size() {
        return out;
    }
    if alpha.is_empty() {
        add_term(&mut out, Vec::new(), h.counit(x));
        return out;
    }
    let parts = alpha.parts();
    let mut partial: Vec<(Vec<H::Label>, H::Label, Rational)> = vec![(Vec::new(), x.clone(), one())];
    for &a in &parts[..parts.len() - 1] {
        let mut next = Vec::new();
        for (prefix, rest, c) in partial {
            for ((x1, x2), c2) in h.coproduct(&rest) {
                if h.degree(&x1) == a as usize {
                    let mut p = prefix.clone();
                    p.push(x1);
                    next.push((p, x2, &c * c2));
                }
            }
        }
        partial = next;
    }
    for (mut prefix, rest, c) in partial {
        prefix.push(rest);
        add_term(&mut out, prefix, c);
    }
    out
}

/// Same component computed by splitting off factors from the right; used to
/// confirm that the left-to-right iteration does not depend on bracketing.
pub fn delta_alpha_from_right<H: HopfProvider>(
    h: &H,
    x: &H::Label,
    alpha: &Composition,
) -> Terms<Vec<H::Label>> {
    let mut out = Terms::new();
    if h.degree(x) != alpha.size() {
        return out;
    }
    if alpha.is_empty() {
        add_term(&mut out, Vec::new(), h.counit(x));
        return out;
    }
    let parts = alpha.parts();
    let mut partial: Vec<(H::Label, Vec<H::Label>, Rational)> = vec![(x.clone(), Vec::new(), one())];
    for &a in parts[1..].iter().rev() {
        let mut next = Vec::new();
        for (rest, suffix, c) in partial {
            for ((x1, x2), c2) in h.coproduct(&rest) {
                if h.degree(&x2) == a as usize {
                    let mut s = vec![x2];
                    s.extend(suffix.iter().cloned());
                    next.push((x1, s, &c * c2));
                }
            }
        }
        partial = next;
    }
    for (rest, suffix, c) in partial {
        let mut v = vec![rest];
        v.extend(suffix);
        add_term(&mut out, v, c);
    }
    out
}

/// Witness returned by a failed predicate check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation<L> {
    /// Wrong value on the unit.
    UnitValue { expected: Rational, found: Rational },
    /// `φ(ab)` differs from what the predicate requires.
    Product { left: L, right: L, found: Rational, expected: Rational },
    /// A comparison that is not tied to a product (e.g. coproduct mismatch).
    Value { at: L, found: Rational, expected: Rational },
    /// The data is only defined on parts up to `bound`.
    DomainExceeded { bound: u32, degree: usize },
}

impl<L: fmt::Debug> fmt::Display for Violation<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::UnitValue { expected, found } => {
                write!(f, "value at the unit is {found}, expected {expected}")
            }
            Violation::Product { left, right, found, expected } => {
                write!(f, "at {left:?}·{right:?}: found {found}, expected {expected}")
            }
            Violation::Value { at, found, expected } => {
                write!(f, "at {at:?}: found {found}, expected {expected}")
            }
            Violation::DomainExceeded { bound, degree } => {
                write!(f, "degree {degree} exceeds the declared bound {bound}")
            }
        }
    }
}

fn positive_degree_pairs<H: HopfProvider>(h: &H, max_degree: usize) -> Vec<(H::Label, H::Label)> {
    let bases: Vec<Vec<H::Label>> = (0..=max_degree).map(|n| h.basis_of_degree(n)).collect();
    let mut pairs = Vec::new();
    for total in 2..=max_degree {
        for da in 1..total {
            for a in &bases[da] {
                for b in &bases[total - da] {
                    pairs.push((a.clone(), b.clone()));
                }
            }
        }
    }
    pairs
}

fn apply<H: HopfProvider>(phi: &Functional<H::Label>, terms: &Terms<H::Label>) -> Rational {
    terms.iter().map(|(k, c)| c * phi.eval(k)).sum()
}

/// `φ(1) = 1` and `φ(ab) = φ(a)φ(b)` for basis elements of total degree
/// at most `max_degree`. Returns the first violation in canonical order.
pub fn is_character<H: HopfProvider>(
    h: &H,
    phi: &Functional<H::Label>,
    max_degree: usize,
) -> Result<(), Violation<H::Label>> {
    let at_unit = phi.eval(&h.unit());
    if !at_unit.is_one() {
        return Err(Violation::UnitValue { expected: one(), found: at_unit });
    }
    positive_degree_pairs(h, max_degree)
        .into_par_iter()
        .find_map_first(|(a, b)| {
            let found = apply::<H>(phi, &h.product(&a, &b));
            let expected = phi.eval(&a) * phi.eval(&b);
            (found != expected).then_some(Violation::Product { left: a, right: b, found, expected })
        })
        .map_or(Ok(()), Err)
}

/// `ξ(1) = 0` and `ξ(ab) = 0` for positive-degree basis elements of total
/// degree at most `max_degree`.
pub fn is_infinitesimal_character<H: HopfProvider>(
    h: &H,
    xi: &Functional<H::Label>,
    max_degree: usize,
) -> Result<(), Violation<H::Label>> {
    let at_unit = xi.eval(&h.unit());
    if !at_unit.is_zero() {
        return Err(Violation::UnitValue { expected: zero(), found: at_unit });
    }
    positive_degree_pairs(h, max_degree)
        .into_par_iter()
        .find_map_first(|(a, b)| {
            let found = apply::<H>(xi, &h.product(&a, &b));
            (!found.is_zero()).then_some(Violation::Product { left: a, right: b, found, expected: zero() })
        })
        .map_or(Ok(()), Err)
}

/// `(Δ ⊗ id)Δ = (id ⊗ Δ)Δ` on every basis label of degree ≤ `max_degree`.
/// Returns the first label where they differ.
pub fn check_coassociativity<H: HopfProvider>(h: &H, max_degree: usize) -> Result<(), H::Label> {
    for n in 0..=max_degree {
        for x in h.basis_of_degree(n) {
            let mut left: Terms<(H::Label, H::Label, H::Label)> = Terms::new();
            let mut right: Terms<(H::Label, H::Label, H::Label)> = Terms::new();
            for ((a, b), c) in h.coproduct(&x) {
                for ((a1, a2), c1) in h.coproduct(&a) {
                    add_term(&mut left, (a1, a2, b.clone()), &c * c1);
                }
                for ((b1, b2), c2) in h.coproduct(&b) {
                    add_term(&mut right, (a.clone(), b1, b2), &c * c2);
                }
            }
            if left != right {
                return Err(x);
            }
        }
    }
    Ok(())
}

/// Counit axiom and grading of the coproduct on labels of degree ≤ `max_degree`.
pub fn check_counit_and_grading<H: HopfProvider>(h: &H, max_degree: usize) -> Result<(), H::Label> {
    for n in 0..=max_degree {
        for x in h.basis_of_degree(n) {
            let delta = h.coproduct(&x);
            let mut left = Terms::new();
            let mut right = Terms::new();
            for ((a, b), c) in &delta {
                if h.degree(a) + h.degree(b) != n {
                    return Err(x);
                }
                add_term(&mut left, b.clone(), c * h.counit(a));
                add_term(&mut right, a.clone(), c * h.counit(b));
            }
            let mut id = Terms::new();
            add_term(&mut id, x.clone(), one());
            if left != id || right != id {
                return Err(x);
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::comp;
    use crate::composition::nonempty_compositions_up_to;
    use crate::rational::int;

    #[test]
    fn composition_providers_are_coassociative() {
        assert!(check_coassociativity(&QSymHopf, 6).is_ok());
        assert!(check_counit_and_grading(&QSymHopf, 6).is_ok());
        assert!(check_counit_and_grading(&ShHopf, 6).is_ok());
    }

    #[test]
    fn delta_alpha_is_bracketing_independent() {
        for gamma in nonempty_compositions_up_to(6) {
            for alpha in compositions_of(gamma.size()) {
                assert_eq!(
                    delta_alpha_in(&QSymHopf, &gamma, &alpha),
                    delta_alpha_from_right(&QSymHopf, &gamma, &alpha)
                );
            }
        }
    }

    #[test]
    fn delta_alpha_matches_element_version() {
        let d = delta_alpha_in(&QSymHopf, &comp![1, 2, 1], &comp![3, 1]);
        assert_eq!(d.len(), 1);
        assert_eq!(d[&vec![comp![1, 2], comp![1]]], int(1));
        assert_eq!(delta_alpha_in(&QSymHopf, &comp![1, 1], &comp![2]).len(), 1);
        assert!(delta_alpha_in(&QSymHopf, &comp![2, 2], &comp![1, 3]).is_empty());
        let d = delta_alpha_in(&QSymHopf, &Composition::empty(), &Composition::empty());
        assert_eq!(d[&Vec::new()], int(1));
    }

    #[test]
    fn predicate_witnesses() {
        let xi_s = Functional::new(|a: &Composition| if a.len() == 1 { one() } else { zero() });
        assert!(is_infinitesimal_character(&ShHopf, &xi_s, 8).is_ok());
        match is_character(&ShHopf, &xi_s, 4) {
            Err(Violation::UnitValue { .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        // with value 1 at ∅ the product check must find x₁x₁
        let shifted = Functional::new(|a: &Composition| match a.len() {
            0 | 1 => one(),
            _ => zero(),
        });
        match is_character(&ShHopf, &shifted, 4) {
            Err(Violation::Product { left, right, found, expected }) => {
                assert_eq!((left, right), (comp![1], comp![1]));
                assert_eq!((found, expected), (int(0), int(1)));
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
