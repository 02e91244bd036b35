//! Shuffle characters `f`, quasisymmetric infinitesimal characters `g`, the
//! triangular system relating them, and the change of basis between `M` and
//! the shuffle basis `X_α = Σ_{β≥α} f(α,β) M_β`.

use std::fmt;

use num_traits::{One, Zero};

use crate::composition::{coarsenings_with_blocks, product_over_blocks, Composition};
use crate::element::{Basis, Element};
use crate::error::{Error, Result};
use crate::functional::Functional;
use crate::hopf::{is_character, ShHopf, Violation};
use crate::rational::{one, zero, Rational};

/// A function on nonempty compositions, extended by `f(∅) = 1`.
///
/// `bound` is the largest part on which the data is defined (for characters
/// built from orders on a finite range); `None` means all parts.
#[derive(Clone)]
pub struct CharacterData {
    name: String,
    f: Functional,
    bound: Option<u32>,
}

/// A function on nonempty compositions, extended by `g(∅) = 0`.
#[derive(Clone)]
pub struct InfinitesimalData {
    name: String,
    g: Functional,
    bound: Option<u32>,
}

impl fmt::Debug for CharacterData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CharacterData({})", self.name)
    }
}

impl fmt::Debug for InfinitesimalData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "InfinitesimalData({})", self.name)
    }
}

fn check_bound(bound: Option<u32>, degree: usize) -> Result<()> {
    match bound {
        Some(b) if degree > b as usize => Err(Error::BoundExceeded { bound: b, degree }),
        _ => Ok(()),
    }
}

impl CharacterData {
    pub fn new(name: impl Into<String>, f: impl Fn(&Composition) -> Rational + Send + Sync + 'static) -> Self {
        CharacterData { name: name.into(), f: Functional::from_parts(one(), f), bound: None }
    }

    pub fn with_bound(mut self, bound: Option<u32>) -> Self {
        self.bound = bound;
        self
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn bound(&self) -> Option<u32> {
        self.bound
    }

    pub fn f(&self, alpha: &Composition) -> Rational {
        self.f.eval(alpha)
    }

    /// `f^Sh`: the functional on `Sh` with value 1 at `∅`.
    pub fn functional(&self) -> &Functional {
        &self.f
    }

    /// `f(α, β)`: product of `f` over the blocks of the split of `α` by `β`.
    pub fn f_pair(&self, alpha: &Composition, beta: &Composition) -> Result<Rational> {
        crate::composition::extend_over_refinement(|c| self.f(c), alpha, beta)
    }

    /// Errors if the data is not defined in degree `n`.
    pub fn check_degree(&self, n: usize) -> Result<()> {
        check_bound(self.bound, n)
    }

    /// First `n ≤ max_degree` with `f((n)) = 0`.
    pub fn check_nonsingular(&self, max_degree: usize) -> Result<()> {
        self.check_degree(max_degree)?;
        for n in 1..=max_degree as u32 {
            if self.f(&Composition::single(n)).is_zero() {
                return Err(Error::SingularCharacter { n });
            }
        }
        Ok(())
    }

    /// First `n ≤ max_degree` with `f((n)) ≠ 1`.
    pub fn check_normalized(&self, max_degree: usize) -> Result<()> {
        self.check_degree(max_degree)?;
        for n in 1..=max_degree as u32 {
            if !self.f(&Composition::single(n)).is_one() {
                return Err(Error::NotNormalized { n });
            }
        }
        Ok(())
    }
}

impl InfinitesimalData {
    pub fn new(name: impl Into<String>, g: impl Fn(&Composition) -> Rational + Send + Sync + 'static) -> Self {
        InfinitesimalData { name: name.into(), g: Functional::from_parts(zero(), g), bound: None }
    }

    pub fn with_bound(mut self, bound: Option<u32>) -> Self {
        self.bound = bound;
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn g(&self, alpha: &Composition) -> Rational {
        self.g.eval(alpha)
    }

    /// `g^QSym`: the functional on `QSym` with value 0 at `∅`.
    pub fn functional(&self) -> &Functional {
        &self.g
    }

    /// `g(α, β)`; note `g(∅, ∅) = 1` as an empty product.
    pub fn g_pair(&self, alpha: &Composition, beta: &Composition) -> Result<Rational> {
        crate::composition::extend_over_refinement(|c| self.g(c), alpha, beta)
    }

    pub fn check_nonsingular(&self, max_degree: usize) -> Result<()> {
        check_bound(self.bound, max_degree)?;
        for n in 1..=max_degree as u32 {
            if self.g(&Composition::single(n)).is_zero() {
                return Err(Error::SingularCharacter { n });
            }
        }
        Ok(())
    }
}

/// `f(α)f(β) = Σ_{γ∈α⧢β} f(γ)` for nonempty `α, β` with `|α|+|β| ≤ max_degree`.
pub fn is_shuffle_character(f: &CharacterData, max_degree: usize) -> Result<(), Violation<Composition>> {
    if let Some(b) = f.bound {
        if max_degree > b as usize {
            return Err(Violation::DomainExceeded { bound: b, degree: max_degree });
        }
    }
    is_character(&ShHopf, f.functional(), max_degree)
}

/// `f̃(α) = Π 1/f((αᵢ)) · f(α)`.
pub fn normalize(f: &CharacterData, max_degree: usize) -> Result<CharacterData> {
    f.check_nonsingular(max_degree)?;
    if f.check_normalized(max_degree).is_ok() {
        return Ok(f.clone());
    }
    let inner = f.clone();
    Ok(CharacterData::new(f.name.clone(), move |a| {
        let mut v = inner.f(a);
        for &p in a.parts() {
            v /= inner.f(&Composition::single(p));
        }
        v
    })
    .with_bound(f.bound))
}

/// The unique `g` with `Σ_{β≥α} f(α,β) g(β) = [ℓ(α)=1]`, solved by recursion
/// on length (every strict coarsening is shorter).
///
/// Nonsingularity is checked up to `max_degree`; the returned data stays
/// usable above it, but panics on a part `n` with `f((n)) = 0`.
pub fn f_to_g(f: &CharacterData, max_degree: usize) -> Result<InfinitesimalData> {
    f.check_nonsingular(max_degree)?;
    let f = f.clone();
    let bound = f.bound;
    let name = f.name.clone();
    let g = Functional::recursive(move |g: &Functional, alpha: &Composition| {
        if alpha.is_empty() {
            return zero();
        }
        let mut rhs = if alpha.len() == 1 { one() } else { zero() };
        let mut lead = zero();
        for (beta, blocks) in coarsenings_with_blocks(alpha) {
            let coef = product_over_blocks(&|c: &Composition| f.f(c), &blocks);
            if beta == *alpha {
                lead = coef;
            } else if !coef.is_zero() {
                rhs -= coef * g.eval(&beta);
            }
        }
        assert!(!lead.is_zero(), "f vanishes on a single part of {alpha}");
        rhs / lead
    });
    Ok(InfinitesimalData { name, g, bound })
}

/// Inverse of [`f_to_g`]: the same system solved for `f`, whose unknown
/// `f(α)` sits in the `β = (|α|)` term.
pub fn g_to_f(g: &InfinitesimalData, max_degree: usize) -> Result<CharacterData> {
    g.check_nonsingular(max_degree)?;
    let g = g.clone();
    let bound = g.bound;
    let name = g.name.clone();
    let f = Functional::recursive(move |f: &Functional, alpha: &Composition| {
        if alpha.is_empty() {
            return one();
        }
        let whole = Composition::single(alpha.size() as u32);
        let mut rhs = if alpha.len() == 1 { one() } else { zero() };
        for (beta, blocks) in coarsenings_with_blocks(alpha) {
            if beta == whole {
                continue;
            }
            let gb = g.g(&beta);
            if !gb.is_zero() {
                rhs -= product_over_blocks(&|c: &Composition| f.eval(c), &blocks) * gb;
            }
        }
        let lead = g.g(&whole);
        assert!(!lead.is_zero(), "g vanishes on {whole}");
        rhs / lead
    });
    Ok(CharacterData { name, f, bound })
}

/// `X_α = Σ_{β≥α} f(α,β) M_β`.
pub fn basis_expand(f: &CharacterData, alpha: &Composition) -> Element {
    Element::from_terms(
        Basis::M,
        coarsenings_with_blocks(alpha)
            .into_iter()
            .map(|(beta, blocks)| (beta, product_over_blocks(&|c: &Composition| f.f(c), &blocks))),
    )
}

/// `M_α = Σ_{β≥α} g(α,β) X_β`, tagged with the name of `g`.
pub fn basis_contract(g: &InfinitesimalData, alpha: &Composition) -> Element {
    Element::from_terms(
        Basis::Named(g.name.clone()),
        coarsenings_with_blocks(alpha)
            .into_iter()
            .map(|(beta, blocks)| (beta, product_over_blocks(&|c: &Composition| g.g(c), &blocks))),
    )
}

/// Substitutes `X_β ↦ Σ f(β,γ) M_γ` into an element of the shuffle basis.
pub fn to_monomial(f: &CharacterData, h: &Element) -> Element {
    let mut out = Element::zero(Basis::M);
    for (beta, c) in h.terms() {
        for (gamma, v) in basis_expand(f, beta).terms() {
            out.add_term(gamma.clone(), c * v);
        }
    }
    out
}

/// Rewrites an element of `M` in the shuffle basis of `g`.
pub fn from_monomial(g: &InfinitesimalData, h: &Element) -> Result<Element> {
    if *h.basis() != Basis::M {
        return Err(Error::BasisMismatch { expected: "M".into(), found: h.basis().to_string() });
    }
    let mut out = Element::zero(Basis::Named(g.name.clone()));
    for (beta, c) in h.terms() {
        for (gamma, v) in basis_contract(g, beta).terms() {
            out.add_term(gamma.clone(), c * v);
        }
    }
    Ok(out)
}
