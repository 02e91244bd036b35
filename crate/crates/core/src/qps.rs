//! Quasisymmetric power sums `P_α = aut(α) X_α` built from a normalized
//! shuffle character, their defining identities, and integrality.

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;

use crate::character::{basis_expand, CharacterData};
use crate::composition::{
    coarsenings_with_blocks, compositions_of, nonempty_compositions_up_to, partitions_of, product_over_blocks,
    rearrangements, shuffle, Composition,
};
use crate::element::{coproduct, power_sum, product, Basis, Element, TensorElement};
use crate::error::Result;
use crate::rational::{from_u128, is_nonnegative_integer, Rational};

/// `P_α = aut(α) Σ_{β≥α} f(α,β) M_β`. `f` must be normalized up to `|α|`.
pub fn qps_expand(f: &CharacterData, alpha: &Composition) -> Result<Element> {
    f.check_normalized(alpha.size())?;
    Ok(qps_expand_unchecked(f, alpha))
}

pub(crate) fn qps_expand_unchecked(f: &CharacterData, alpha: &Composition) -> Element {
    basis_expand(f, alpha).scale(&from_u128(alpha.aut()))
}

/// Outcome of the three power-sum axioms. Each field holds the first
/// failing index in canonical order, if any.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QpsReport {
    pub degree: usize,
    pub refinement_degree: usize,
    /// `P_α P_β = (z_α z_β / z_{αβ}) Σ_{γ∈α⧢β} P_γ`
    pub multiplication: Option<(Composition, Composition)>,
    /// `Δ(P_α) = Σ_{βγ=α} z_α/(z_β z_γ) P_β ⊗ P_γ`
    pub comultiplication: Option<Composition>,
    /// `Σ_{α∼λ} P_α = p_λ`
    pub refinement: Option<Composition>,
}

impl QpsReport {
    pub fn passed(&self) -> bool {
        self.multiplication.is_none() && self.comultiplication.is_none() && self.refinement.is_none()
    }
}

impl fmt::Display for QpsReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |ok: bool| if ok { "pass" } else { "FAIL" };
        write!(f, "multiplication (degree ≤ {}): {}", self.degree, show(self.multiplication.is_none()))?;
        if let Some((a, b)) = &self.multiplication {
            write!(f, " at α={a}, β={b}")?;
        }
        write!(f, "\ncomultiplication (degree ≤ {}): {}", self.degree, show(self.comultiplication.is_none()))?;
        if let Some(a) = &self.comultiplication {
            write!(f, " at α={a}")?;
        }
        write!(
            f,
            "\npower sum refinement (degree ≤ {}): {}",
            self.refinement_degree,
            show(self.refinement.is_none())
        )?;
        if let Some(l) = &self.refinement {
            write!(f, " at λ={l}")?;
        }
        Ok(())
    }
}

struct QpsTable {
    f: CharacterData,
    cache: HashMap<Composition, Element>,
}

impl QpsTable {
    fn new(f: &CharacterData, max_degree: usize) -> Self {
        let cache = (0..=max_degree)
            .flat_map(compositions_of)
            .collect::<Vec<_>>()
            .into_par_iter()
            .map(|a| {
                let p = qps_expand_unchecked(f, &a);
                (a, p)
            })
            .collect();
        QpsTable { f: f.clone(), cache }
    }

    fn get(&self, a: &Composition) -> Element {
        self.cache.get(a).cloned().unwrap_or_else(|| qps_expand_unchecked(&self.f, a))
    }
}

fn z_ratio(num: &[&Composition], den: &[&Composition]) -> Rational {
    let n: u128 = num.iter().map(|c| c.z()).product();
    let d: u128 = den.iter().map(|c| c.z()).product();
    from_u128(n) / from_u128(d)
}

/// First pair `(α, β)` of nonempty compositions with `|α|+|β| ≤ max_degree`
/// violating the multiplication rule.
pub fn check_multiplication(f: &CharacterData, max_degree: usize) -> Result<Option<(Composition, Composition)>> {
    f.check_normalized(max_degree)?;
    let table = QpsTable::new(f, max_degree);
    let all = nonempty_compositions_up_to(max_degree);
    let mut pairs = Vec::new();
    for a in &all {
        for b in &all {
            if a.size() + b.size() <= max_degree {
                pairs.push((a.clone(), b.clone()));
            }
        }
    }
    Ok(pairs.into_par_iter().find_map_first(|(a, b)| {
        let lhs = product(&table.get(&a), &table.get(&b)).expect("both in M");
        let mut rhs = Element::zero(Basis::M);
        for (gamma, m) in shuffle(&a, &b).iter() {
            rhs = &rhs + &table.get(gamma).scale(&from_u128(m as u128));
        }
        let ab = a.concat(&b);
        let rhs = rhs.scale(&z_ratio(&[&a, &b], &[&ab]));
        (lhs != rhs).then_some((a, b))
    }))
}

/// First `α` with `|α| ≤ max_degree` violating the comultiplication rule.
pub fn check_comultiplication(f: &CharacterData, max_degree: usize) -> Result<Option<Composition>> {
    f.check_normalized(max_degree)?;
    let table = QpsTable::new(f, max_degree);
    let all: Vec<Composition> = (0..=max_degree).flat_map(compositions_of).collect();
    Ok(all.into_par_iter().find_map_first(|a| {
        let lhs = coproduct(&table.get(&a)).expect("in M");
        let mut rhs = TensorElement::zero(Basis::M);
        for (b, c) in a.deconcatenations() {
            let t = TensorElement::tensor(&table.get(&b), &table.get(&c)).expect("both in M");
            let k = z_ratio(&[&a], &[&b, &c]);
            for ((l, r), v) in t.terms {
                rhs.add_term(l, r, v * &k);
            }
        }
        (lhs != rhs).then_some(a)
    }))
}

/// First partition `λ ⊢ n ≤ max_degree` with `Σ_{α∼λ} P_α ≠ p_λ`.
pub fn check_power_sum_refinement(f: &CharacterData, max_degree: usize) -> Result<Option<Composition>> {
    f.check_normalized(max_degree)?;
    let lambdas: Vec<Composition> = (1..=max_degree).flat_map(partitions_of).collect();
    Ok(lambdas.into_par_iter().find_map_first(|lambda| {
        let mut sum = Element::zero(Basis::M);
        for a in rearrangements(&lambda) {
            sum = &sum + &qps_expand_unchecked(f, &a);
        }
        (sum != power_sum(&lambda).expect("partition")).then_some(lambda)
    }))
}

/// All three axioms: (i) and (ii) up to `max_degree`, (iii) up to
/// `refinement_degree`.
pub fn verify_qps(f: &CharacterData, max_degree: usize, refinement_degree: usize) -> Result<QpsReport> {
    Ok(QpsReport {
        degree: max_degree,
        refinement_degree,
        multiplication: check_multiplication(f, max_degree)?,
        comultiplication: check_comultiplication(f, max_degree)?,
        refinement: check_power_sum_refinement(f, refinement_degree)?,
    })
}

/// Result of the two integrality tests, which must agree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegralityReport {
    /// Every `aut(α) f(α,β)` that is not a nonnegative integer, as `(α, β, value)`.
    pub coefficient_failures: Vec<(Composition, Composition, Rational)>,
    /// Every `aut(α) f(α)` that is not a nonnegative integer.
    pub value_failures: Vec<(Composition, Rational)>,
}

impl IntegralityReport {
    pub fn integral(&self) -> bool {
        self.coefficient_failures.is_empty() && self.value_failures.is_empty()
    }

    pub fn consistent(&self) -> bool {
        self.coefficient_failures.is_empty() == self.value_failures.is_empty()
    }

    pub fn first_witness(&self) -> Option<&(Composition, Composition, Rational)> {
        self.coefficient_failures.first()
    }
}

/// Checks that `P_α` has nonnegative integer coefficients in `M` for all
/// `|α| ≤ max_degree`, directly and through the values `aut(α) f(α)`.
pub fn check_integral_nonneg(f: &CharacterData, max_degree: usize) -> Result<IntegralityReport> {
    f.check_normalized(max_degree)?;
    let all = nonempty_compositions_up_to(max_degree);
    let coefficient_failures = all
        .par_iter()
        .flat_map_iter(|a| {
            let aut = from_u128(a.aut());
            coarsenings_with_blocks(a).into_iter().filter_map(move |(b, blocks)| {
                let v = &aut * product_over_blocks(&|c: &Composition| f.f(c), &blocks);
                (!is_nonnegative_integer(&v)).then(|| (a.clone(), b, v))
            })
        })
        .collect();
    let value_failures = all
        .par_iter()
        .filter_map(|a| {
            let v = from_u128(a.aut()) * f.f(a);
            (!is_nonnegative_integer(&v)).then(|| (a.clone(), v))
        })
        .collect();
    Ok(IntegralityReport { coefficient_failures, value_failures })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::comp;
    use crate::constructions::{combinatorial, type_one, type_two};
    use crate::error::Error;
    use crate::rational::{int, q};

    #[test]
    fn expansions() {
        let p = qps_expand(&type_one(3).unwrap(), &comp![2, 1]).unwrap();
        assert_eq!(p, Element::from_terms(Basis::M, [(comp![2, 1], int(1)), (comp![3], q(1, 3))]));
        let p = qps_expand(&type_two(3).unwrap(), &comp![2, 1]).unwrap();
        assert_eq!(p, Element::from_terms(Basis::M, [(comp![2, 1], int(1)), (comp![3], q(1, 2))]));
        let c = combinatorial(3).unwrap();
        assert_eq!(
            qps_expand(&c, &comp![2, 1]).unwrap(),
            Element::from_terms(Basis::M, [(comp![2, 1], int(1)), (comp![3], int(1))])
        );
        assert_eq!(qps_expand(&c, &comp![1, 2]).unwrap(), Element::monomial(comp![1, 2]));
        let raw = CharacterData::new("raw", |a| int(1) / from_u128(a.prefix_product()));
        assert_eq!(qps_expand(&raw, &comp![2]).unwrap_err(), Error::NotNormalized { n: 2 });
    }

    #[test]
    fn degree_three_refinement() {
        let f = type_one(3).unwrap();
        let sum = &qps_expand(&f, &comp![2, 1]).unwrap() + &qps_expand(&f, &comp![1, 2]).unwrap();
        assert_eq!(sum, power_sum(&comp![2, 1]).unwrap());
    }

    #[test]
    fn type_two_passes_and_perturbation_fails() {
        assert!(verify_qps(&type_two(5).unwrap(), 5, 6).unwrap().passed());
        let t2 = type_two(5).unwrap();
        let bad = CharacterData::new("perturbed", move |a| if *a == comp![1, 1] { int(1) } else { t2.f(a) });
        let r = verify_qps(&bad, 4, 4).unwrap();
        assert_eq!(r.multiplication, Some((comp![1], comp![1])));
    }

    #[test]
    fn integrality() {
        assert!(check_integral_nonneg(&combinatorial(6).unwrap(), 6).unwrap().integral());
        let r = check_integral_nonneg(&type_one(3).unwrap(), 3).unwrap();
        assert!(!r.integral() && r.consistent());
        assert!(r.coefficient_failures.contains(&(comp![2, 1], comp![3], q(1, 3))));
    }
}
