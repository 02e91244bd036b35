//! Finite posets on at most eight labeled elements, as a Hopf algebra:
//! product is disjoint union, coproduct runs over order ideals.

use std::fmt;
use std::str::FromStr;

use crate::element::{add_term, Element, Terms};
use crate::error::{Error, Result};
use crate::functional::Functional;
use crate::hopf::HopfProvider;
use crate::rational::{one, zero, Rational};
use crate::universal::{canonical, single, universal_to_qsym, Canonical};

pub const MAX_ELEMENTS: usize = 8;

/// Elements `0..n` internally, `1..=n` in text. `above[i]` is the bitmask
/// of elements strictly greater than `i`; the relation is kept transitively
/// closed.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SmallPoset {
    n: u8,
    above: [u8; MAX_ELEMENTS],
}

impl SmallPoset {
    pub fn empty() -> Self {
        SmallPoset::default()
    }

    /// Builds the order generated by the 1-based relations `u < v`.
    pub fn new(n: usize, relations: &[(usize, usize)]) -> Result<Self> {
        if n > MAX_ELEMENTS {
            return Err(Error::InvalidPoset(format!("{n} elements; at most {MAX_ELEMENTS} are supported")));
        }
        let mut above = [0u8; MAX_ELEMENTS];
        for &(u, v) in relations {
            if u == 0 || v == 0 || u > n || v > n {
                return Err(Error::InvalidPoset(format!("relation {u}<{v} is outside 1..={n}")));
            }
            above[u - 1] |= 1 << (v - 1);
        }
        // Warshall closure
        for k in 0..n {
            for i in 0..n {
                if above[i] & (1 << k) != 0 {
                    above[i] |= above[k];
                }
            }
        }
        if let Some(i) = (0..n).find(|&i| above[i] & (1 << i) != 0) {
            return Err(Error::InvalidPoset(format!("relations form a cycle through {}", i + 1)));
        }
        Ok(SmallPoset { n: n as u8, above })
    }

    pub fn chain(n: usize) -> Result<Self> {
        let rel: Vec<_> = (1..n).map(|i| (i, i + 1)).collect();
        Self::new(n, &rel)
    }

    pub fn antichain(n: usize) -> Result<Self> {
        Self::new(n, &[])
    }

    pub fn element_count(&self) -> usize {
        self.n as usize
    }

    pub fn less(&self, u: usize, v: usize) -> bool {
        self.above[u] & (1 << v) != 0
    }

    fn below_mask(&self, v: usize) -> u32 {
        (0..self.element_count()).filter(|&u| self.less(u, v)).fold(0, |m, u| m | 1 << u)
    }

    /// Cover relations, 1-based.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.element_count();
        let mut out = Vec::new();
        for u in 0..n {
            for v in 0..n {
                if self.less(u, v) && !(0..n).any(|w| self.less(u, w) && self.less(w, v)) {
                    out.push((u + 1, v + 1));
                }
            }
        }
        out
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.element_count()).filter(|&v| self.below_mask(v) == 0).collect()
    }

    /// Down-closed subsets, as bitmasks, in increasing order.
    pub fn order_ideals(&self) -> Vec<u32> {
        let n = self.element_count();
        let below: Vec<u32> = (0..n).map(|v| self.below_mask(v)).collect();
        (0u32..1 << n)
            .filter(|&mask| (0..n).all(|v| mask & (1 << v) == 0 || below[v] & !mask == 0))
            .collect()
    }

    /// Subposet induced on `mask`, relabeled in increasing element order.
    pub fn induced(&self, mask: u32) -> SmallPoset {
        let keep: Vec<usize> = (0..self.element_count()).filter(|&v| mask & (1 << v) != 0).collect();
        let mut p = SmallPoset { n: keep.len() as u8, above: [0; MAX_ELEMENTS] };
        for (i, &u) in keep.iter().enumerate() {
            for (j, &v) in keep.iter().enumerate() {
                if self.less(u, v) {
                    p.above[i] |= 1 << j;
                }
            }
        }
        p
    }

    pub fn disjoint_union(&self, other: &SmallPoset) -> Result<SmallPoset> {
        let n = self.element_count() + other.element_count();
        if n > MAX_ELEMENTS {
            return Err(Error::InvalidPoset(format!("disjoint union has {n} elements")));
        }
        let shift = self.element_count();
        let mut rel = self.covers();
        rel.extend(other.covers().into_iter().map(|(u, v)| (u + shift, v + shift)));
        SmallPoset::new(n, &rel)
    }

    /// Relabels element `i` (0-based) as `perm[i]`.
    pub fn relabel(&self, perm: &[usize]) -> SmallPoset {
        let rel: Vec<_> = self.covers().into_iter().map(|(u, v)| (perm[u - 1] + 1, perm[v - 1] + 1)).collect();
        SmallPoset::new(self.element_count(), &rel).expect("relabeling keeps the order")
    }

    /// Every naturally labeled poset on `n` elements (`u < v` in the order
    /// implies `u < v` as integers). Every isomorphism class appears.
    pub fn all_natural_on(n: usize) -> Vec<SmallPoset> {
        assert!(n <= 6, "enumerating posets on {n} elements is not supported");
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        (0u32..1 << pairs.len())
            .filter_map(|mask| {
                let mut p = SmallPoset { n: n as u8, above: [0; MAX_ELEMENTS] };
                for (i, &(u, v)) in pairs.iter().enumerate() {
                    if mask & (1 << i) != 0 {
                        p.above[u] |= 1 << v;
                    }
                }
                // keep only relations that are already transitive
                let closed = (0..n).all(|u| (0..n).all(|w| !p.less(u, w) || p.above[w] & !p.above[u] == 0));
                closed.then_some(p)
            })
            .collect()
    }
}

impl fmt::Display for SmallPoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rel: Vec<String> = self.covers().iter().map(|(u, v)| format!("{u}<{v}")).collect();
        write!(f, "{}; {}", self.n, rel.join(","))
    }
}

impl fmt::Debug for SmallPoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poset({self})")
    }
}

/// `n; u<v,u<v,...`; the relations need not be covers.
impl FromStr for SmallPoset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |m: &str| Error::InvalidPoset(format!("{m} in `{s}`"));
        let (n, rest) = s.split_once(';').unwrap_or((s, ""));
        let n: usize = n.trim().parse().map_err(|_| bad("bad element count"))?;
        let mut rel = Vec::new();
        for r in rest.split(',').map(str::trim).filter(|r| !r.is_empty()) {
            let (u, v) = r.split_once('<').ok_or_else(|| bad("relation without `<`"))?;
            let u = u.trim().parse().map_err(|_| bad("bad element"))?;
            let v = v.trim().parse().map_err(|_| bad("bad element"))?;
            rel.push((u, v));
        }
        SmallPoset::new(n, &rel)
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct PosetHopf;

impl HopfProvider for PosetHopf {
    type Label = SmallPoset;

    fn unit(&self) -> SmallPoset {
        SmallPoset::empty()
    }

    fn degree(&self, x: &SmallPoset) -> usize {
        x.element_count()
    }

    fn basis_of_degree(&self, n: usize) -> Vec<SmallPoset> {
        SmallPoset::all_natural_on(n)
    }

    fn coproduct(&self, x: &SmallPoset) -> Terms<(SmallPoset, SmallPoset)> {
        let full = (1u32 << x.element_count()) - 1;
        let mut out = Terms::new();
        for ideal in x.order_ideals() {
            add_term(&mut out, (x.induced(ideal), x.induced(full & !ideal)), one());
        }
        out
    }

    fn product(&self, a: &SmallPoset, b: &SmallPoset) -> Terms<SmallPoset> {
        single(a.disjoint_union(b).expect("product within the element limit"))
    }

    fn precheck_degree(&self) -> usize {
        5
    }
}

pub fn poset_provider() -> PosetHopf {
    PosetHopf
}

/// `ζ ≡ 1`.
pub fn all_ones() -> Functional<SmallPoset> {
    Functional::new(|_: &SmallPoset| one())
}

/// `ξ(P) = [P has a unique minimal element]`.
pub fn unique_minimum() -> Functional<SmallPoset> {
    Functional::new(|p: &SmallPoset| if p.minimal_elements().len() == 1 { one() } else { zero() })
}

/// The P-partition generating function `K_P`.
pub fn kp_generating_function(p: &SmallPoset) -> Result<Element> {
    universal_to_qsym(&PosetHopf, &all_ones(), &single(p.clone()))
}

/// `(η(K_P), ξ(P))`.
pub fn eta_check(p: &SmallPoset) -> Result<(Rational, Rational)> {
    if p.element_count() == 0 {
        return Err(Error::InvalidPoset("the check needs at least one element".into()));
    }
    let kp = kp_generating_function(p)?;
    Ok((canonical(Canonical::Eta).apply_element(&kp), unique_minimum().eval(p)))
}
