//! Canonical functionals on QSym and Sh, the universal morphisms
//! `Φ: H → QSym` and `Ψ: H → Sh`, the map `Θ`, and the bijection between
//! characters and infinitesimal characters induced by a shuffle basis.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use num_traits::Zero;
use rayon::prelude::*;

use crate::character::{basis_expand, f_to_g, is_shuffle_character, CharacterData};
use crate::composition::{compositions_of, Composition};
use crate::constructions::even_odd_family;
use crate::element::{add_term, Basis, Element, Terms};
use crate::error::{Error, Result};
use crate::functional::{convolve, functional_inverse, Functional};
use crate::hopf::{is_character, is_infinitesimal_character, HopfProvider, QSymHopf};
use crate::rational::{from_u128, int, one, sign, zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Canonical {
    /// `ζ_Q(M_α) = [ℓ(α) ≤ 1]`
    ZetaQ,
    /// `(-1)^{|α|} ζ_Q(M_α)`
    BarZetaQ,
    /// `ξ_S(x_α) = [ℓ(α) = 1]`
    XiS,
    /// The odd character `ν_Q`, in closed form.
    NuQ,
    /// `η(M_α) = (-1)^{ℓ-1} lp(α)`
    Eta,
    Counit,
}

impl Canonical {
    pub const ALL: [Canonical; 6] =
        [Canonical::ZetaQ, Canonical::BarZetaQ, Canonical::XiS, Canonical::NuQ, Canonical::Eta, Canonical::Counit];

    pub fn name(self) -> &'static str {
        match self {
            Canonical::ZetaQ => "zeta",
            Canonical::BarZetaQ => "zeta-bar",
            Canonical::XiS => "xi",
            Canonical::NuQ => "nu",
            Canonical::Eta => "eta",
            Canonical::Counit => "counit",
        }
    }

    pub fn from_name(s: &str) -> Option<Canonical> {
        Canonical::ALL.into_iter().find(|c| c.name() == s)
    }
}

pub fn canonical(which: Canonical) -> Functional {
    match which {
        Canonical::ZetaQ => Functional::new(|a: &Composition| if a.len() <= 1 { one() } else { zero() }),
        Canonical::BarZetaQ => {
            Functional::new(|a: &Composition| if a.len() <= 1 { sign(a.size()) } else { zero() })
        }
        Canonical::XiS => Functional::new(|a: &Composition| if a.len() == 1 { one() } else { zero() }),
        Canonical::NuQ => Functional::new(|a: &Composition| {
            if a.is_empty() {
                one()
            } else if a.last_part() % 2 == 1 {
                sign(a.size() + a.len()) * int(2)
            } else {
                zero()
            }
        }),
        Canonical::Eta => Functional::from_parts(zero(), |a| sign(a.len() - 1) * int(a.last_part() as i64)),
        Canonical::Counit => Functional::from_parts(one(), |_| zero()),
    }
}

/// `ν_Q = ζ̄_Q⁻¹ * ζ_Q`, computed by convolution.
pub fn nu_via_convolution() -> Functional {
    let inv = functional_inverse(&canonical(Canonical::BarZetaQ)).expect("ζ̄_Q(∅) = 1");
    convolve(&inv, &canonical(Canonical::ZetaQ))
}

/// `h ↦ Σ_α (φ^{⊗ℓ(α)} Δ_α h) b_α`, memoized per label.
///
/// Uses the first-block recursion: the coefficient of `b_α` in the image of
/// `x` is `Σ φ(x₁) · [coefficient of b_{α₂⋯} in the image of x₂]` over
/// coproduct terms `x₁ ⊗ x₂` with `deg x₁ = α₁`.
pub struct UniversalMap<H: HopfProvider> {
    h: H,
    phi: Functional<H::Label>,
    memo: RwLock<HashMap<H::Label, Arc<Terms<Composition>>>>,
}

impl<H: HopfProvider> UniversalMap<H> {
    pub fn new(h: &H, phi: &Functional<H::Label>) -> Self {
        UniversalMap { h: h.clone(), phi: phi.clone(), memo: RwLock::new(HashMap::new()) }
    }

    pub fn image(&self, x: &H::Label) -> Arc<Terms<Composition>> {
        if let Some(t) = self.memo.read().expect("memo poisoned").get(x) {
            return t.clone();
        }
        let mut out = Terms::new();
        if self.h.degree(x) == 0 {
            add_term(&mut out, Composition::empty(), self.h.counit(x) * self.phi.eval(x));
        } else {
            for ((x1, x2), c) in self.h.coproduct(x) {
                let d = self.h.degree(&x1);
                if d == 0 {
                    continue;
                }
                let v = self.phi.eval(&x1);
                if v.is_zero() {
                    continue;
                }
                let k = c * v;
                for (rest, w) in self.image(&x2).iter() {
                    let mut parts = vec![d as u32];
                    parts.extend_from_slice(rest.parts());
                    add_term(&mut out, Composition::from_vec_unchecked(parts), &k * w);
                }
            }
        }
        let out = Arc::new(out);
        self.memo.write().expect("memo poisoned").entry(x.clone()).or_insert(out).clone()
    }

    pub fn apply(&self, h: &Terms<H::Label>) -> Terms<Composition> {
        let mut out = Terms::new();
        for (x, c) in h {
            for (a, v) in self.image(x).iter() {
                add_term(&mut out, a.clone(), c * v);
            }
        }
        out
    }
}

fn max_degree_of<H: HopfProvider>(h: &H, terms: &Terms<H::Label>) -> usize {
    terms.keys().map(|x| h.degree(x)).max().unwrap_or(0)
}

fn precheck_degree<H: HopfProvider>(h: &H, n: usize) -> usize {
    n.min(h.precheck_degree())
}

/// `Φ(h) = Σ_α (ζ^{⊗ℓ} Δ_α h) M_α`, after checking that `ζ` is a character
/// in the degrees touched.
pub fn universal_to_qsym<H: HopfProvider>(
    h: &H,
    zeta: &Functional<H::Label>,
    x: &Terms<H::Label>,
) -> Result<Element> {
    let n = precheck_degree(h, max_degree_of(h, x));
    is_character(h, zeta, n).map_err(|v| Error::NotACharacter(v.to_string()))?;
    Ok(universal_to_qsym_unchecked(h, zeta, x))
}

pub fn universal_to_qsym_unchecked<H: HopfProvider>(
    h: &H,
    zeta: &Functional<H::Label>,
    x: &Terms<H::Label>,
) -> Element {
    Element::from_terms(Basis::M, UniversalMap::new(h, zeta).apply(x))
}

/// `Ψ(h) = Σ_α (ξ^{⊗ℓ} Δ_α h) x_α`, after checking that `ξ` is an
/// infinitesimal character in the degrees touched.
pub fn universal_to_sh<H: HopfProvider>(
    h: &H,
    xi: &Functional<H::Label>,
    x: &Terms<H::Label>,
) -> Result<Element> {
    let n = precheck_degree(h, max_degree_of(h, x));
    is_infinitesimal_character(h, xi, n).map_err(|v| Error::NotAnInfinitesimalCharacter(v.to_string()))?;
    Ok(universal_to_sh_unchecked(h, xi, x))
}

/// The degree-0 part of `Ψ` is `ε(h) x_∅`, independent of `ξ(1) = 0`.
pub fn universal_to_sh_unchecked<H: HopfProvider>(
    h: &H,
    xi: &Functional<H::Label>,
    x: &Terms<H::Label>,
) -> Element {
    let (hh, xi2) = (h.clone(), xi.clone());
    let shifted = Functional::new(move |y: &H::Label| if hh.degree(y) == 0 { one() } else { xi2.eval(y) });
    Element::from_terms(Basis::X, UniversalMap::new(h, &shifted).apply(x))
}

/// Single-label convenience: `Terms` with one term of coefficient 1.
pub fn single<L: Ord>(x: L) -> Terms<L> {
    let mut t = Terms::new();
    t.insert(x, one());
    t
}

/// `Θ: (QSym, ν_Q) → (QSym, ζ_Q)`, from the universal formula.
pub fn theta(h: &Element) -> Result<Element> {
    if *h.basis() != Basis::M {
        return Err(Error::BasisMismatch { expected: "M".into(), found: h.basis().to_string() });
    }
    Ok(universal_to_qsym_unchecked(&QSymHopf, &canonical(Canonical::NuQ), h.terms()))
}

/// Shared `Θ` with memo, for sweeps.
pub struct Theta(UniversalMap<QSymHopf>);

impl Theta {
    pub fn new() -> Self {
        Theta(UniversalMap::new(&QSymHopf, &canonical(Canonical::NuQ)))
    }

    pub fn apply(&self, h: &Element) -> Element {
        Element::from_terms(Basis::M, self.0.apply(h.terms()))
    }
}

impl Default for Theta {
    fn default() -> Self {
        Self::new()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenReport {
    pub degree: usize,
    pub checked: usize,
    /// First `α` where `Θ(X_α)` is not the predicted multiple of `X_α`.
    pub failure: Option<Composition>,
}

impl fmt::Display for EigenReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.failure {
            None => write!(f, "Θ eigenvalues hold for {} compositions up to degree {}", self.checked, self.degree),
            Some(a) => write!(f, "Θ eigenvalue fails at α={a}"),
        }
    }
}

/// `Θ(X_α) = 2^{ℓ(α)} X_α` for odd `α` and `0` otherwise, where `X` is the
/// even-odd family built from `f_even`.
pub fn theta_eigencheck(f_even: &CharacterData, max_degree: usize) -> Result<EigenReport> {
    let f = even_odd_family(f_even, max_degree)?;
    let theta = Theta::new();
    let all: Vec<Composition> = (0..=max_degree).flat_map(compositions_of).collect();
    let checked = all.len();
    let failure = all.into_par_iter().find_map_first(|a| {
        let x = basis_expand(&f, &a);
        let expected = if a.is_odd() { x.scale(&from_u128(1u128 << a.len())) } else { Element::zero(Basis::M) };
        (theta.apply(&x) != expected).then_some(a)
    });
    Ok(EigenReport { degree: max_degree, checked, failure })
}

/// `ξ ↦ ζ` with `ζ(h) = Σ_α (ξ^{⊗ℓ}Δ_α h) f(α)`, i.e. `ζ_Q ∘ φ ∘ Ψ` for the
/// shuffle basis `φ(x_α) = X_α` of `f`.
pub fn infchar_to_char<H: HopfProvider>(
    h: &H,
    xi: &Functional<H::Label>,
    f: &CharacterData,
    max_degree: usize,
) -> Result<Functional<H::Label>> {
    is_infinitesimal_character(h, xi, precheck_degree(h, max_degree))
        .map_err(|v| Error::NotAnInfinitesimalCharacter(v.to_string()))?;
    is_shuffle_character(f, max_degree).map_err(|v| Error::NotAShuffleCharacter(v.to_string()))?;
    f.check_nonsingular(max_degree)?;
    let (hh, xi2) = (h.clone(), xi.clone());
    let shifted = Functional::new(move |y: &H::Label| if hh.degree(y) == 0 { one() } else { xi2.eval(y) });
    let psi = UniversalMap::new(h, &shifted);
    let f = f.clone();
    Ok(Functional::new(move |x: &H::Label| psi.image(x).iter().map(|(a, c)| c * f.f(a)).sum()))
}

/// `ζ ↦ ξ` with `ξ(h) = Σ_α (ζ^{⊗ℓ}Δ_α h) g(α)`, `g` the infinitesimal
/// character paired with `f`.
pub fn char_to_infchar<H: HopfProvider>(
    h: &H,
    zeta: &Functional<H::Label>,
    f: &CharacterData,
    max_degree: usize,
) -> Result<Functional<H::Label>> {
    is_character(h, zeta, precheck_degree(h, max_degree)).map_err(|v| Error::NotACharacter(v.to_string()))?;
    is_shuffle_character(f, max_degree).map_err(|v| Error::NotAShuffleCharacter(v.to_string()))?;
    let g = f_to_g(f, max_degree)?;
    let phi = UniversalMap::new(h, zeta);
    Ok(Functional::new(move |x: &H::Label| phi.image(x).iter().map(|(a, c)| c * g.g(a)).sum()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::comp;
    use crate::composition::nonempty_compositions_up_to;
    use crate::constructions::{one_over_length_factorial, type_two};
    use crate::functional::{exp_functional, first_disagreement};
    use crate::hopf::ShHopf;
    use crate::rational::q;

    #[test]
    fn canonical_values() {
        let nu = canonical(Canonical::NuQ);
        assert_eq!(nu.eval(&comp![1]), int(2));
        assert_eq!(nu.eval(&comp![2]), int(0));
        assert_eq!(canonical(Canonical::Eta).eval(&comp![2, 1]), int(-1));
        assert!(is_infinitesimal_character(&QSymHopf, &canonical(Canonical::Eta), 6).is_ok());
        assert!(is_character(&QSymHopf, &canonical(Canonical::ZetaQ), 6).is_ok());
        assert!(is_character(&QSymHopf, &nu, 6).is_ok());
    }

    #[test]
    fn nu_matches_closed_form() {
        assert!(first_disagreement(&nu_via_convolution(), &canonical(Canonical::NuQ), 7).is_none());
    }

    #[test]
    fn identity_morphisms() {
        let zq = canonical(Canonical::ZetaQ);
        let xs = canonical(Canonical::XiS);
        for a in nonempty_compositions_up_to(6) {
            let m = universal_to_qsym(&QSymHopf, &zq, &single(a.clone())).unwrap();
            assert_eq!(m, Element::monomial(a.clone()));
            let x = universal_to_sh(&ShHopf, &xs, &single(a.clone())).unwrap();
            assert_eq!(x, Element::shuffle_basis(a.clone()));
        }
        let x = universal_to_sh(&ShHopf, &xs, &single(Composition::empty())).unwrap();
        assert_eq!(x, Element::shuffle_basis(Composition::empty()));
    }

    #[test]
    fn psi_of_type_two_g() {
        let g = f_to_g(&type_two(4).unwrap(), 4).unwrap();
        let x = universal_to_sh(&QSymHopf, g.functional(), &single(comp![1, 1])).unwrap();
        assert_eq!(x, Element::from_terms(Basis::X, [(comp![1, 1], int(1)), (comp![2], q(-1, 2))]));
        assert!(matches!(
            universal_to_sh(&QSymHopf, &canonical(Canonical::ZetaQ), &single(comp![1])),
            Err(Error::NotAnInfinitesimalCharacter(_))
        ));
    }

    #[test]
    fn theta_examples() {
        assert_eq!(theta(&Element::monomial(comp![1])).unwrap(), Element::monomial(comp![1]).scale(&int(2)));
        assert_eq!(theta(&Element::unit(Basis::M)).unwrap(), Element::unit(Basis::M));
        let r = theta_eigencheck(&one_over_length_factorial(), 5).unwrap();
        assert_eq!(r.failure, None);
    }

    #[test]
    fn bijection_with_type_two_is_exp() {
        let xi = canonical(Canonical::Eta);
        let z = infchar_to_char(&QSymHopf, &xi, &type_two(6).unwrap(), 6).unwrap();
        let e = exp_functional(&xi, 6).unwrap();
        assert!(first_disagreement(&z, &e, 6).is_none());
        let zero_xi = Functional::from_parts(zero(), |_| zero());
        let z = infchar_to_char(&QSymHopf, &zero_xi, &type_two(4).unwrap(), 4).unwrap();
        assert!(first_disagreement(&z, &canonical(Canonical::Counit), 4).is_none());
    }
}
