//! Graded elements of QSym (monomial basis `M`) and Sh (basis `x`), with
//! products, deconcatenation coproducts and antipodes.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use crate::composition::{quasi_shuffle, shuffle, Composition, CompositionMultiset};
use crate::error::{Error, Result};
use crate::rational::{self, one, sign, Rational};

/// Finitely supported linear combination with no zero coefficients stored.
pub type Terms<K> = BTreeMap<K, Rational>;

pub(crate) fn add_term<K: Ord>(terms: &mut Terms<K>, key: K, coef: Rational) {
    if coef.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match terms.entry(key) {
        Entry::Vacant(v) => {
            v.insert(coef);
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += coef;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Basis {
    /// Monomial basis `M_α` of QSym.
    M,
    /// Basis `x_α` of the shuffle algebra Sh.
    X,
    /// A derived basis of QSym (shuffle or power-sum basis), by name.
    Named(String),
}

impl Basis {
    pub fn tag(&self) -> &str {
        match self {
            Basis::M => "M",
            Basis::X => "X",
            Basis::Named(n) => n,
        }
    }

    pub fn from_tag(tag: &str) -> Basis {
        match tag {
            "M" => Basis::M,
            "X" | "x" => Basis::X,
            other => Basis::Named(other.to_string()),
        }
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// A finite linear combination of basis elements indexed by compositions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element {
    basis: Basis,
    terms: Terms<Composition>,
}

impl Element {
    pub fn zero(basis: Basis) -> Self {
        Element { basis, terms: Terms::new() }
    }

    pub fn basis_element(basis: Basis, alpha: Composition) -> Self {
        let mut e = Element::zero(basis);
        e.add_term(alpha, one());
        e
    }

    pub fn monomial(alpha: Composition) -> Self {
        Element::basis_element(Basis::M, alpha)
    }

    pub fn shuffle_basis(alpha: Composition) -> Self {
        Element::basis_element(Basis::X, alpha)
    }

    pub fn unit(basis: Basis) -> Self {
        Element::basis_element(basis, Composition::empty())
    }

    pub fn from_terms(basis: Basis, terms: impl IntoIterator<Item = (Composition, Rational)>) -> Self {
        let mut e = Element::zero(basis);
        for (c, r) in terms {
            e.add_term(c, r);
        }
        e
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    pub fn terms(&self) -> &Terms<Composition> {
        &self.terms
    }

    pub fn into_terms(self) -> Terms<Composition> {
        self.terms
    }

    pub fn coefficient(&self, alpha: &Composition) -> Rational {
        self.terms.get(alpha).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, alpha: Composition, coef: Rational) {
        add_term(&mut self.terms, alpha, coef);
    }

    pub fn scale(&self, c: &Rational) -> Element {
        Element::from_terms(self.basis.clone(), self.terms.iter().map(|(k, v)| (k.clone(), v * c)))
    }

    pub fn retag(self, basis: Basis) -> Element {
        Element { basis, ..self }
    }

    /// Restriction to compositions of size `n`.
    pub fn homogeneous_component(&self, n: usize) -> Element {
        Element::from_terms(
            self.basis.clone(),
            self.terms.iter().filter(|(k, _)| k.size() == n).map(|(k, v)| (k.clone(), v.clone())),
        )
    }

    pub fn is_homogeneous_of(&self, n: usize) -> bool {
        self.terms.keys().all(|k| k.size() == n)
    }

    pub fn max_degree(&self) -> usize {
        self.terms.keys().map(Composition::size).max().unwrap_or(0)
    }

    fn same_basis(&self, other: &Element) -> Result<()> {
        if self.basis != other.basis {
            return Err(Error::BasisMismatch {
                expected: self.basis.to_string(),
                found: other.basis.to_string(),
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Element) -> Result<Element> {
        self.same_basis(other)?;
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_term(k.clone(), v.clone());
        }
        Ok(out)
    }
}

/// Panics on a basis mismatch; use [`Element::checked_add`] otherwise.
impl Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        self.checked_add(rhs).expect("adding elements of different bases")
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        self.checked_add(&-rhs).expect("subtracting elements of different bases")
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        self.scale(&-one())
    }
}

impl Mul<&Rational> for &Element {
    type Output = Element;
    fn mul(self, rhs: &Rational) -> Element {
        self.scale(rhs)
    }
}

fn structure_constants(basis: &Basis, a: &Composition, b: &Composition) -> Result<CompositionMultiset> {
    match basis {
        Basis::M => Ok(quasi_shuffle(a, b)),
        Basis::X => Ok(shuffle(a, b)),
        Basis::Named(n) => Err(Error::BasisMismatch { expected: "M or X".into(), found: n.clone() }),
    }
}

/// Product in QSym (quasi-shuffle on `M`) or Sh (shuffle on `x`).
pub fn product(a: &Element, b: &Element) -> Result<Element> {
    a.same_basis(b)?;
    let mut out = Element::zero(a.basis.clone());
    for (ca, va) in &a.terms {
        for (cb, vb) in &b.terms {
            let coef = va * vb;
            for (c, mult) in structure_constants(&a.basis, ca, cb)?.iter() {
                out.add_term(c.clone(), &coef * rational::from_u128(mult as u128));
            }
        }
    }
    Ok(out)
}

/// An element of `H ⊗ H` in the basis `b_α ⊗ b_β`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorElement {
    pub basis: Basis,
    pub terms: Terms<(Composition, Composition)>,
}

impl TensorElement {
    pub fn zero(basis: Basis) -> Self {
        TensorElement { basis, terms: Terms::new() }
    }

    pub fn add_term(&mut self, left: Composition, right: Composition, coef: Rational) {
        add_term(&mut self.terms, (left, right), coef);
    }

    pub fn coefficient(&self, left: &Composition, right: &Composition) -> Rational {
        self.terms.get(&(left.clone(), right.clone())).cloned().unwrap_or_else(Rational::zero)
    }

    /// `(φ ⊗ ψ)` applied to this tensor.
    pub fn evaluate(
        &self,
        phi: impl Fn(&Composition) -> Rational,
        psi: impl Fn(&Composition) -> Rational,
    ) -> Rational {
        self.terms.iter().map(|((l, r), c)| c * phi(l) * psi(r)).sum()
    }

    /// `a ⊗ b` for two elements of the same basis.
    pub fn tensor(a: &Element, b: &Element) -> Result<Self> {
        a.same_basis(b)?;
        let mut out = TensorElement::zero(a.basis.clone());
        for (ca, va) in &a.terms {
            for (cb, vb) in &b.terms {
                out.add_term(ca.clone(), cb.clone(), va * vb);
            }
        }
        Ok(out)
    }

    /// Componentwise product `(a₁⊗a₂)(b₁⊗b₂) = a₁b₁ ⊗ a₂b₂`.
    pub fn product(&self, other: &TensorElement) -> Result<Self> {
        if self.basis != other.basis {
            return Err(Error::BasisMismatch {
                expected: self.basis.to_string(),
                found: other.basis.to_string(),
            });
        }
        let mut out = TensorElement::zero(self.basis.clone());
        for ((a1, a2), va) in &self.terms {
            for ((b1, b2), vb) in &other.terms {
                let left = structure_constants(&self.basis, a1, b1)?;
                let right = structure_constants(&self.basis, a2, b2)?;
                let coef = va * vb;
                for (l, ml) in left.iter() {
                    for (r, mr) in right.iter() {
                        out.add_term(l.clone(), r.clone(), &coef * rational::from_u128((ml * mr) as u128));
                    }
                }
            }
        }
        Ok(out)
    }
}

/// Deconcatenation coproduct `Δ(b_γ) = Σ_{αβ=γ} b_α ⊗ b_β`.
pub fn coproduct(h: &Element) -> Result<TensorElement> {
    if let Basis::Named(n) = &h.basis {
        return Err(Error::BasisMismatch { expected: "M or X".into(), found: n.clone() });
    }
    let mut out = TensorElement::zero(h.basis.clone());
    for (gamma, c) in &h.terms {
        for (a, b) in gamma.deconcatenations() {
            out.add_term(a, b, c.clone());
        }
    }
    Ok(out)
}

/// `Δ_α(h)`: splittings of each index into consecutive blocks of sizes
/// `α₁, …, α_ℓ`. `h` must be homogeneous of degree `|α|`.
pub fn delta_alpha(h: &Element, alpha: &Composition) -> Result<Vec<(Vec<Composition>, Rational)>> {
    if let Basis::Named(n) = &h.basis {
        return Err(Error::BasisMismatch { expected: "M or X".into(), found: n.clone() });
    }
    if !h.is_homogeneous_of(alpha.size()) {
        return Err(Error::DegreeMismatch { expected: alpha.size() });
    }
    let mut out: Terms<Vec<Composition>> = Terms::new();
    for (gamma, c) in &h.terms {
        if let Ok(blocks) = crate::composition::refinement_split(gamma, alpha) {
            add_term(&mut out, blocks, c.clone());
        }
    }
    Ok(out.into_iter().collect())
}

/// `S(x_α) = (-1)^ℓ(α) x_rev(α)`.
pub fn antipode_shuffle(h: &Element) -> Result<Element> {
    if h.basis != Basis::X {
        return Err(Error::BasisMismatch { expected: "X".into(), found: h.basis.to_string() });
    }
    Ok(Element::from_terms(
        Basis::X,
        h.terms.iter().map(|(a, c)| (a.reverse(), c * sign(a.len()))),
    ))
}

/// Antipode from the connected graded recursion
/// `S(b_γ) = -Σ_{αβ=γ, β≠∅} S(b_α) b_β`, valid in either `M` or `X`.
pub fn antipode_recursive(h: &Element) -> Result<Element> {
    if let Basis::Named(n) = &h.basis {
        return Err(Error::BasisMismatch { expected: "M or X".into(), found: n.clone() });
    }
    let mut memo = HashMap::new();
    let mut out = Element::zero(h.basis.clone());
    for (gamma, c) in &h.terms {
        let s = antipode_of_basis_element(&h.basis, gamma, &mut memo)?;
        out = &out + &s.scale(c);
    }
    Ok(out)
}

fn antipode_of_basis_element(
    basis: &Basis,
    gamma: &Composition,
    memo: &mut HashMap<Composition, Element>,
) -> Result<Element> {
    if let Some(s) = memo.get(gamma) {
        return Ok(s.clone());
    }
    let mut out = Element::zero(basis.clone());
    if gamma.is_empty() {
        out.add_term(Composition::empty(), one());
    } else {
        for (a, b) in gamma.deconcatenations() {
            if b.is_empty() {
                continue;
            }
            let sa = antipode_of_basis_element(basis, &a, memo)?;
            let term = product(&sa, &Element::basis_element(basis.clone(), b))?;
            out = &out - &term;
        }
    }
    memo.insert(gamma.clone(), out.clone());
    Ok(out)
}

/// Antipode of QSym in the monomial basis.
pub fn antipode_monomial(h: &Element) -> Result<Element> {
    if h.basis != Basis::M {
        return Err(Error::BasisMismatch { expected: "M".into(), found: h.basis.to_string() });
    }
    antipode_recursive(h)
}

/// `m ∘ (S ⊗ id) ∘ Δ` (or `m ∘ (id ⊗ S) ∘ Δ` with `left = false`).
pub fn antipode_convolution(h: &Element, left: bool) -> Result<Element> {
    let delta = coproduct(h)?;
    let mut memo = HashMap::new();
    let mut out = Element::zero(h.basis.clone());
    for ((a, b), c) in &delta.terms {
        let term = if left {
            let sa = antipode_of_basis_element(&h.basis, a, &mut memo)?;
            product(&sa, &Element::basis_element(h.basis.clone(), b.clone()))?
        } else {
            let sb = antipode_of_basis_element(&h.basis, b, &mut memo)?;
            product(&Element::basis_element(h.basis.clone(), a.clone()), &sb)?
        };
        out = &out + &term.scale(c);
    }
    Ok(out)
}

/// Symmetric power sum `p_λ = Π M_{λ_i}` in the monomial basis.
pub fn power_sum(lambda: &Composition) -> Result<Element> {
    if !lambda.is_partition() {
        return Err(Error::NotAPartition(lambda.clone()));
    }
    let mut acc = Element::unit(Basis::M);
    for &p in lambda.parts() {
        acc = product(&acc, &Element::monomial(Composition::single(p)))?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::comp;
    use crate::composition::{compositions_of, nonempty_compositions_up_to};
    use crate::rational::{int, q};

    fn m(terms: &[(Composition, Rational)]) -> Element {
        Element::from_terms(Basis::M, terms.iter().cloned())
    }

    #[test]
    fn product_examples() {
        let p = product(&Element::shuffle_basis(comp![1, 2]), &Element::shuffle_basis(comp![2])).unwrap();
        assert_eq!(p, Element::from_terms(Basis::X, [(comp![1, 2, 2], int(2)), (comp![2, 1, 2], int(1))]));
        let a = Element::monomial(comp![3, 1]);
        assert_eq!(product(&Element::unit(Basis::M), &a).unwrap(), a);
        let p = product(&Element::monomial(comp![2]), &Element::monomial(comp![1])).unwrap();
        assert_eq!(p, m(&[(comp![2, 1], int(1)), (comp![1, 2], int(1)), (comp![3], int(1))]));
        assert!(matches!(
            product(&Element::monomial(comp![1]), &Element::shuffle_basis(comp![1])),
            Err(Error::BasisMismatch { .. })
        ));
    }

    #[test]
    fn coproduct_examples() {
        let d = coproduct(&Element::shuffle_basis(comp![3, 1])).unwrap();
        assert_eq!(d.terms.len(), 3);
        assert_eq!(d.coefficient(&comp![], &comp![3, 1]), int(1));
        assert_eq!(d.coefficient(&comp![3], &comp![1]), int(1));
        assert_eq!(d.coefficient(&comp![3, 1], &comp![]), int(1));
        let d = coproduct(&Element::unit(Basis::M)).unwrap();
        assert_eq!(d.terms.len(), 1);
        assert_eq!(d.coefficient(&comp![], &comp![]), int(1));
        let d = coproduct(&Element::monomial(comp![1, 2])).unwrap();
        assert_eq!(d.coefficient(&comp![1], &comp![2]), int(1));
        assert!(coproduct(&Element::unit(Basis::Named("P".into()))).is_err());
    }

    #[test]
    fn delta_alpha_examples() {
        let d = delta_alpha(&Element::monomial(comp![1, 2, 1]), &comp![3, 1]).unwrap();
        assert_eq!(d, vec![(vec![comp![1, 2], comp![1]], int(1))]);
        let d = delta_alpha(&Element::monomial(comp![2]), &comp![2]).unwrap();
        assert_eq!(d, vec![(vec![comp![2]], int(1))]);
        // a single block of size 2 is the whole of (1,1)
        let d = delta_alpha(&Element::monomial(comp![1, 1]), &comp![2]).unwrap();
        assert_eq!(d, vec![(vec![comp![1, 1]], int(1))]);
        let d = delta_alpha(&Element::monomial(comp![1, 1, 2]), &comp![1, 3]).unwrap();
        assert_eq!(d, vec![(vec![comp![1], comp![1, 2]], int(1))]);
        assert!(delta_alpha(&Element::monomial(comp![2, 2]), &comp![1, 3]).unwrap().is_empty());
        assert!(matches!(
            delta_alpha(&Element::monomial(comp![1, 1]), &comp![3]),
            Err(Error::DegreeMismatch { expected: 3 })
        ));
    }

    #[test]
    fn antipode_examples() {
        assert_eq!(
            antipode_shuffle(&Element::shuffle_basis(comp![3, 1])).unwrap(),
            Element::shuffle_basis(comp![1, 3])
        );
        assert_eq!(antipode_shuffle(&Element::unit(Basis::X)).unwrap(), Element::unit(Basis::X));
        assert_eq!(
            antipode_shuffle(&Element::shuffle_basis(comp![2])).unwrap(),
            Element::from_terms(Basis::X, [(comp![2], int(-1))])
        );
        assert!(antipode_shuffle(&Element::monomial(comp![2])).is_err());

        assert_eq!(antipode_monomial(&Element::unit(Basis::M)).unwrap(), Element::unit(Basis::M));
        assert_eq!(
            antipode_monomial(&Element::monomial(comp![1])).unwrap(),
            m(&[(comp![1], int(-1))])
        );
        assert_eq!(
            antipode_monomial(&Element::monomial(comp![1, 1])).unwrap(),
            m(&[(comp![1, 1], int(1)), (comp![2], int(1))])
        );
        assert!(antipode_convolution(&Element::monomial(comp![1, 1]), true).unwrap().is_zero());
    }

    // Known closed form: S(M_α) = (-1)^ℓ Σ_{β ≥ rev α} M_β.
    #[test]
    fn monomial_antipode_matches_coarsening_formula() {
        for a in nonempty_compositions_up_to(6) {
            let expected = Element::from_terms(
                Basis::M,
                crate::composition::coarsenings(&a.reverse()).into_iter().map(|b| (b, sign(a.len()))),
            );
            assert_eq!(antipode_monomial(&Element::monomial(a.clone())).unwrap(), expected, "{a:?}");
        }
    }

    #[test]
    fn shuffle_antipode_matches_recursion() {
        for n in 0..=6 {
            for a in compositions_of(n) {
                let x = Element::shuffle_basis(a);
                assert_eq!(antipode_shuffle(&x).unwrap(), antipode_recursive(&x).unwrap());
            }
        }
    }

    #[test]
    fn power_sum_examples() {
        assert_eq!(power_sum(&comp![4]).unwrap(), Element::monomial(comp![4]));
        assert_eq!(
            power_sum(&comp![2, 1]).unwrap(),
            m(&[(comp![2, 1], int(1)), (comp![1, 2], int(1)), (comp![3], int(1))])
        );
        assert_eq!(power_sum(&comp![1, 1]).unwrap(), m(&[(comp![1, 1], int(2)), (comp![2], int(1))]));
        assert!(matches!(power_sum(&comp![1, 2]), Err(Error::NotAPartition(_))));
    }

    #[test]
    fn zero_pruning() {
        let a = m(&[(comp![1], q(1, 2))]);
        assert!((&a - &a).is_zero());
        assert_eq!(a.coefficient(&comp![2]), int(0));
    }
}
