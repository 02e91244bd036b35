//! Ways of producing shuffle characters: prefix sums of a weight `τ`,
//! ordered partitions of the positive integers, total orders, and the named
//! bases built from them.

use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use crate::character::{is_shuffle_character, normalize, CharacterData};
use crate::composition::{compositions_of, nonempty_compositions_up_to, Composition};
use crate::error::{Error, Result};
use crate::rational::{factorial, from_u128, int, one, sign, zero, Rational};

pub type Weight = Arc<dyn Fn(u32) -> Rational + Send + Sync>;

/// `f(α) = Π_i (τ(α₁) + ⋯ + τ(αᵢ))⁻¹`.
///
/// Every prefix of a composition of size ≤ `max_degree` is itself such a
/// composition, so checking each total sum catches every vanishing prefix.
pub fn prefix_sum_character(name: impl Into<String>, tau: Weight, max_degree: usize) -> Result<CharacterData> {
    for c in nonempty_compositions_up_to(max_degree) {
        let s: Rational = c.parts().iter().map(|&p| tau(p)).sum();
        if s.is_zero() {
            return Err(Error::ZeroPrefixSum { prefix: c });
        }
    }
    Ok(CharacterData::new(name, move |a| {
        let mut acc = zero();
        let mut v = one();
        for &p in a.parts() {
            acc += tau(p);
            assert!(!acc.is_zero(), "prefix sum of {a} vanishes");
            v /= &acc;
        }
        v
    }))
}

/// An ordered partition of the positive integers: `class_of(n)` is the rank
/// of the class containing `n`, and classes are ordered by rank.
#[derive(Clone)]
pub struct OrderedPartition {
    pub class_of: Arc<dyn Fn(u32) -> i64 + Send + Sync>,
    pub per_class: Arc<dyn Fn(i64) -> CharacterData + Send + Sync>,
    /// Largest part on which `class_of` is defined.
    pub bound: Option<u32>,
}

/// `f(α) = Π_C f_C(α|_C)` if the classes of the parts of `α` appear in
/// weakly increasing order, else 0.
///
/// Each per-class character is checked, up to `max_degree`, to be a shuffle
/// character on compositions with all parts in its class.
pub fn ordered_partition_character(
    name: impl Into<String>,
    spec: &OrderedPartition,
    max_degree: usize,
) -> Result<CharacterData> {
    if let Some(b) = spec.bound {
        if max_degree > b as usize {
            return Err(Error::BoundExceeded { bound: b, degree: max_degree });
        }
    }
    let mut classes: Vec<i64> = (1..=max_degree as u32).map(|n| (spec.class_of)(n)).collect();
    classes.sort_unstable();
    classes.dedup();
    for c in classes {
        let fc = (spec.per_class)(c);
        let class_of = spec.class_of.clone();
        let extended = CharacterData::new(format!("{} on class {c}", fc.name()), move |a| {
            if a.parts().iter().all(|&p| class_of(p) == c) {
                fc.f(a)
            } else {
                zero()
            }
        });
        if let Err(v) = is_shuffle_character(&extended, max_degree) {
            return Err(Error::NotAShuffleCharacter(format!("{}: {v}", extended.name())));
        }
    }
    let bound = spec.bound;
    let spec = spec.clone();
    Ok(CharacterData::new(name, move |a| ordered_partition_value(&spec, a)).with_bound(bound))
}

fn ordered_partition_value(spec: &OrderedPartition, a: &Composition) -> Rational {
    let mut v = one();
    let mut i = 0;
    let parts = a.parts();
    let mut last: Option<i64> = None;
    while i < parts.len() {
        let c = (spec.class_of)(parts[i]);
        if last.is_some_and(|l| c <= l) {
            return zero();
        }
        let mut j = i;
        while j < parts.len() && (spec.class_of)(parts[j]) == c {
            j += 1;
        }
        let block = Composition::from_vec_unchecked(parts[i..j].to_vec());
        v *= (spec.per_class)(c).f(&block);
        if v.is_zero() {
            return v;
        }
        last = Some(c);
        i = j;
    }
    v
}

/// A strict total order on positive integers, given by a rank function.
#[derive(Clone)]
pub struct TotalOrder {
    rank: Arc<dyn Fn(u32) -> i64 + Send + Sync>,
    bound: Option<u32>,
    label: String,
}

impl fmt::Debug for TotalOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TotalOrder({})", self.label)
    }
}

impl TotalOrder {
    /// `1 ≺ 2 ≺ 3 ≺ ⋯`
    pub fn natural() -> Self {
        TotalOrder { rank: Arc::new(|n| n as i64), bound: None, label: "natural".into() }
    }

    /// `⋯ ≺ 3 ≺ 2 ≺ 1`
    pub fn reversed() -> Self {
        TotalOrder { rank: Arc::new(|n| -(n as i64)), bound: None, label: "reversed".into() }
    }

    /// The order listing `seq` from smallest to largest; `seq` must be a
    /// permutation of `1..=seq.len()`.
    pub fn from_sequence(seq: &[u32]) -> Result<Self> {
        let n = seq.len();
        let mut rank = vec![usize::MAX; n];
        for (pos, &p) in seq.iter().enumerate() {
            if p == 0 || p as usize > n || rank[p as usize - 1] != usize::MAX {
                return Err(Error::InvalidOrder(format!("{seq:?} is not a permutation of 1..={n}")));
            }
            rank[p as usize - 1] = pos;
        }
        let label = seq.iter().map(u32::to_string).collect::<Vec<_>>().join("<");
        Ok(TotalOrder {
            rank: Arc::new(move |p| {
                *rank.get(p as usize - 1).unwrap_or_else(|| panic!("part {p} outside the order")) as i64
            }),
            bound: Some(n as u32),
            label,
        })
    }

    /// Builds the order from a decision procedure on `1..=bound`, checking
    /// that it is a strict total order there.
    pub fn from_precedes(bound: u32, precedes: impl Fn(u32, u32) -> bool) -> Result<Self> {
        for i in 1..=bound {
            if precedes(i, i) {
                return Err(Error::InvalidOrder(format!("{i} precedes itself")));
            }
            for j in i + 1..=bound {
                if precedes(i, j) == precedes(j, i) {
                    return Err(Error::InvalidOrder(format!("{i} and {j} are not strictly comparable")));
                }
            }
        }
        // in a strict total order the number of predecessors is a bijection onto 0..bound
        let mut seq = vec![0u32; bound as usize];
        let mut seen = vec![false; bound as usize];
        for i in 1..=bound {
            let below = (1..=bound).filter(|&j| precedes(j, i)).count();
            if seen[below] {
                return Err(Error::InvalidOrder("relation is not transitive".into()));
            }
            seen[below] = true;
            seq[below] = i;
        }
        for (i, &a) in seq.iter().enumerate() {
            for &b in &seq[i + 1..] {
                if !precedes(a, b) {
                    return Err(Error::InvalidOrder("relation is not transitive".into()));
                }
            }
        }
        Self::from_sequence(&seq)
    }

    pub fn rank(&self, n: u32) -> i64 {
        (self.rank)(n)
    }

    pub fn bound(&self) -> Option<u32> {
        self.bound
    }

    pub fn label(&self) -> &str {
        &self.label
    }
}

fn inverse_length_factorial(name: &str) -> CharacterData {
    CharacterData::new(name, |a| one() / from_u128(factorial(a.len())))
}

/// Singleton classes ordered by `order`, each with `1/ℓ!`:
/// `f(α) = 1/aut(α)` when the parts increase weakly under `order`, else 0.
pub fn order_basis_character(order: &TotalOrder, max_degree: usize) -> Result<CharacterData> {
    let rank = order.rank.clone();
    let one_over_fact = inverse_length_factorial("1/l!");
    let spec = OrderedPartition {
        class_of: Arc::new(move |n| rank(n)),
        per_class: Arc::new(move |_| one_over_fact.clone()),
        bound: order.bound,
    };
    ordered_partition_character(format!("order:{}", order.label), &spec, max_degree)
}

/// `τ(n) = n`, normalized: `f(α) = p(α)/π(α)`.
pub fn type_one(max_degree: usize) -> Result<CharacterData> {
    let raw = prefix_sum_character("type1", Arc::new(|n| int(n as i64)), max_degree)?;
    normalize(&raw, max_degree)
}

/// `τ(n) = 1`: `f(α) = 1/ℓ(α)!`.
pub fn type_two(max_degree: usize) -> Result<CharacterData> {
    prefix_sum_character("type2", Arc::new(|_| one()), max_degree)
}

/// Reverse integer order: `1/aut(α)` on weakly decreasing `α`, else 0.
pub fn combinatorial(max_degree: usize) -> Result<CharacterData> {
    Ok(order_basis_character(&TotalOrder::reversed(), max_degree)?.renamed("combinatorial"))
}

/// Usual integer order: `1/aut(α)` on weakly increasing `α`, else 0.
pub fn reverse_combinatorial(max_degree: usize) -> Result<CharacterData> {
    Ok(order_basis_character(&TotalOrder::natural(), max_degree)?.renamed("reverse-combinatorial"))
}

/// Evens before odds, with `f_E` on the even block and `1/odd(α)!` on the
/// odd block. Not normalized unless `f_E` is.
pub fn even_odd_family(f_even: &CharacterData, max_degree: usize) -> Result<CharacterData> {
    let fe = f_even.clone();
    let fo = inverse_length_factorial("1/l!");
    let spec = OrderedPartition {
        class_of: Arc::new(|n| if n % 2 == 0 { 0 } else { 1 }),
        per_class: Arc::new(move |c| if c == 0 { fe.clone() } else { fo.clone() }),
        bound: f_even.bound(),
    };
    let f = ordered_partition_character(format!("even-odd({})", f_even.name()), &spec, max_degree)?;
    for n in (2..=max_degree as u32).step_by(2) {
        if f.f(&Composition::single(n)).is_zero() {
            return Err(Error::SingularCharacter { n });
        }
    }
    Ok(f)
}

/// The normalized even-odd character for a given `f_E`.
pub fn even_odd(f_even: &CharacterData, max_degree: usize) -> Result<CharacterData> {
    normalize(&even_odd_family(f_even, max_degree)?, max_degree)
}

/// The even-odd character with `f_E = 1/ℓ!`.
pub fn even_odd_default(max_degree: usize) -> Result<CharacterData> {
    Ok(even_odd(&inverse_length_factorial("1/l!"), max_degree)?.renamed("even-odd"))
}

/// `1/ℓ!`, available for building families.
pub fn one_over_length_factorial() -> CharacterData {
    inverse_length_factorial("1/l!")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClosedForm {
    TypeOne,
    TypeTwo,
    EvenOddOddSizes,
}

/// Closed-form values of `g` for the type I and type II bases, and for the
/// even-odd family at odd sizes.
pub fn closed_form_g(kind: ClosedForm, alpha: &Composition) -> Result<Rational> {
    if alpha.is_empty() {
        return Ok(zero());
    }
    let l = alpha.len();
    Ok(match kind {
        ClosedForm::TypeOne => sign(l - 1) * int(alpha.last_part() as i64) / int(alpha.size() as i64),
        ClosedForm::TypeTwo => sign(l - 1) / int(l as i64),
        ClosedForm::EvenOddOddSizes => {
            if alpha.size() % 2 == 0 {
                return Err(Error::EvenSizeUnsupported { size: alpha.size() });
            }
            if alpha.last_part() % 2 == 1 {
                sign(l - 1) / int(alpha.odd_count() as i64)
            } else {
                zero()
            }
        }
    })
}

/// `Σ_{odd β ⊨ m} (-2)^{ℓ(β)} / (p(β) ℓ(β)!)`, which should be `2(-1)^m`.
pub fn odd_series_coefficient(m: usize) -> Rational {
    compositions_of(m)
        .into_iter()
        .filter(Composition::is_odd)
        .map(|b| {
            let l = b.len();
            sign(l) * from_u128(1u128 << l) / (from_u128(b.part_product()) * from_u128(factorial(l)))
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::character::f_to_g;
    use crate::comp;
    use crate::rational::q;

    #[test]
    fn prefix_sum_examples() {
        let t1 = prefix_sum_character("t", Arc::new(|n| int(n as i64)), 6).unwrap();
        assert_eq!(t1.f(&comp![2, 1, 2]), q(1, 30));
        let t2 = type_two(6).unwrap();
        assert_eq!(t2.f(&comp![1, 3, 1]), q(1, 6));
        let bad = prefix_sum_character("bad", Arc::new(|n| if n == 2 { int(-1) } else { int(1) }), 4);
        assert_eq!(bad.unwrap_err(), Error::ZeroPrefixSum { prefix: comp![1, 2] });
    }

    #[test]
    fn builtin_values() {
        assert_eq!(type_one(4).unwrap().f(&comp![1, 2]), q(2, 3));
        assert_eq!(even_odd_default(4).unwrap().f(&comp![2, 1]), int(1));
        assert_eq!(even_odd_default(4).unwrap().f(&comp![1, 2]), int(0));
        let c = combinatorial(5).unwrap();
        assert_eq!(c.f(&comp![1, 2]), int(0));
        assert_eq!(c.f(&comp![2, 1, 1]), q(1, 2));
        assert_eq!(reverse_combinatorial(5).unwrap().f(&comp![1, 1, 2]), q(1, 2));
    }

    #[test]
    fn custom_orders() {
        let o = TotalOrder::from_sequence(&[2, 1, 3, 4]).unwrap();
        let f = order_basis_character(&o, 4).unwrap();
        assert_eq!(f.f(&comp![2, 1]), int(1));
        assert_eq!(f.f(&comp![1, 2]), int(0));
        assert!(matches!(order_basis_character(&o, 5), Err(Error::BoundExceeded { bound: 4, degree: 5 })));
        assert!(TotalOrder::from_sequence(&[1, 1]).is_err());
        let p = TotalOrder::from_precedes(4, |a, b| a > b).unwrap();
        assert_eq!(p.label(), "4<3<2<1");
        assert!(TotalOrder::from_precedes(3, |a, b| a != b).is_err());
        // a 3-cycle is total and antisymmetric but not transitive
        let cyc = |a: u32, b: u32| (a % 3) + 1 == b;
        assert!(TotalOrder::from_precedes(3, cyc).is_err());
    }

    #[test]
    fn ordered_partition_rejects_non_characters() {
        let ones = CharacterData::new("ones", |_| one());
        let spec = OrderedPartition {
            class_of: Arc::new(|n| (n % 2) as i64),
            per_class: Arc::new(move |_| ones.clone()),
            bound: None,
        };
        assert!(matches!(
            ordered_partition_character("x", &spec, 4),
            Err(Error::NotAShuffleCharacter(_))
        ));
    }

    #[test]
    fn closed_forms() {
        assert_eq!(closed_form_g(ClosedForm::TypeOne, &comp![2, 1]).unwrap(), q(-1, 3));
        assert_eq!(closed_form_g(ClosedForm::TypeTwo, &comp![5]).unwrap(), int(1));
        assert_eq!(closed_form_g(ClosedForm::EvenOddOddSizes, &comp![2, 1]).unwrap(), int(-1));
        assert_eq!(
            closed_form_g(ClosedForm::EvenOddOddSizes, &comp![2, 2]).unwrap_err(),
            Error::EvenSizeUnsupported { size: 4 }
        );
        let g = f_to_g(&type_one(4).unwrap(), 4).unwrap();
        assert_eq!(g.g(&comp![2, 1]), q(-1, 3));
    }

    #[test]
    fn odd_series() {
        for m in 1..=9 {
            assert_eq!(odd_series_coefficient(m), sign(m) * int(2));
        }
    }
}
