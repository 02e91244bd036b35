//! Compositions and their combinatorics: statistics, the refinement order,
//! deconcatenation, shuffles and quasi-shuffles.
//!
//! Compositions are ordered by size first and then lexicographically by
//! parts. Within a fixed size this order is a linear extension of refinement
//! (a proper refinement is lexicographically smaller), so change-of-basis
//! matrices listed in this order are upper triangular.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{one, Rational};

/// `lp(∅)`.
pub const LAST_PART_OF_EMPTY: u32 = 0;
/// `p(∅)`, `aut(∅)`, `z(∅)` and `π(∅)`.
pub const EMPTY_PRODUCT: u128 = 1;

/// A finite sequence of positive integers.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Composition(Vec<u32>);

/// Builds a [`Composition`] from literal parts; panics on a zero part.
#[macro_export]
macro_rules! comp {
    () => { $crate::composition::Composition::empty() };
    ($($p:expr),+ $(,)?) => {
        $crate::composition::Composition::new(vec![$($p),+]).expect("parts must be positive")
    };
}

impl Composition {
    pub fn new(parts: impl Into<Vec<u32>>) -> Result<Self> {
        let parts = parts.into();
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::Parse(format!("composition parts must be positive: {parts:?}")));
        }
        Ok(Composition(parts))
    }

    pub(crate) fn from_vec_unchecked(parts: Vec<u32>) -> Self {
        debug_assert!(parts.iter().all(|&p| p > 0));
        Composition(parts)
    }

    pub fn empty() -> Self {
        Composition(Vec::new())
    }

    pub fn single(n: u32) -> Self {
        assert!(n > 0, "parts must be positive");
        Composition(vec![n])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn into_parts(self) -> Vec<u32> {
        self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().map(|&p| p as usize).sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn last_part(&self) -> u32 {
        self.0.last().copied().unwrap_or(LAST_PART_OF_EMPTY)
    }

    pub fn reverse(&self) -> Self {
        Composition(self.0.iter().rev().copied().collect())
    }

    pub fn concat(&self, other: &Composition) -> Self {
        let mut parts = Vec::with_capacity(self.len() + other.len());
        parts.extend_from_slice(&self.0);
        parts.extend_from_slice(&other.0);
        Composition(parts)
    }

    pub fn push(&mut self, part: u32) {
        assert!(part > 0, "parts must be positive");
        self.0.push(part);
    }

    /// Number of parts equal to `i`.
    pub fn multiplicity(&self, i: u32) -> usize {
        self.0.iter().filter(|&&p| p == i).count()
    }

    pub fn is_partition(&self) -> bool {
        self.0.windows(2).all(|w| w[0] >= w[1])
    }

    pub fn is_weakly_increasing(&self) -> bool {
        self.0.windows(2).all(|w| w[0] <= w[1])
    }

    /// All parts odd (vacuously true for ∅).
    pub fn is_odd(&self) -> bool {
        self.0.iter().all(|p| p % 2 == 1)
    }

    /// All parts even (vacuously true for ∅).
    pub fn is_even(&self) -> bool {
        self.0.iter().all(|p| p % 2 == 0)
    }

    pub fn even_count(&self) -> usize {
        self.0.iter().filter(|&&p| p % 2 == 0).count()
    }

    pub fn odd_count(&self) -> usize {
        self.0.iter().filter(|&&p| p % 2 == 1).count()
    }

    /// The unique partition with the same multiset of parts.
    pub fn sorted_partition(&self) -> Self {
        let mut parts = self.0.clone();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Composition(parts)
    }

    /// `α ∼ β`: same multiset of parts.
    pub fn is_rearrangement_of(&self, other: &Composition) -> bool {
        self.sorted_partition() == other.sorted_partition()
    }

    /// Subsequence of the parts satisfying `keep`.
    pub fn restrict(&self, keep: impl Fn(u32) -> bool) -> Self {
        Composition(self.0.iter().copied().filter(|&p| keep(p)).collect())
    }

    /// Product of the parts, `p(α)`.
    pub fn part_product(&self) -> u128 {
        self.0.iter().map(|&p| p as u128).product()
    }

    /// `aut(α) = Π m_i(α)!`.
    pub fn aut(&self) -> u128 {
        let sorted = self.sorted_partition();
        let mut acc = EMPTY_PRODUCT;
        let mut run = 0usize;
        for (i, p) in sorted.0.iter().enumerate() {
            run = if i > 0 && sorted.0[i - 1] == *p { run + 1 } else { 1 };
            acc *= run as u128;
        }
        acc
    }

    /// `z_α = p(α) aut(α)`.
    pub fn z(&self) -> u128 {
        self.part_product() * self.aut()
    }

    /// `π(α) = α₁ (α₁+α₂) ⋯ (α₁+⋯+α_ℓ)`.
    pub fn prefix_product(&self) -> u128 {
        let mut sum = 0u128;
        let mut acc = EMPTY_PRODUCT;
        for &p in &self.0 {
            sum += p as u128;
            acc *= sum;
        }
        acc
    }

    pub fn stats(&self) -> CompositionStats {
        stats(self)
    }

    /// All splittings `γ = αβ`, from `(∅, γ)` to `(γ, ∅)`.
    pub fn deconcatenations(&self) -> impl Iterator<Item = (Composition, Composition)> + '_ {
        (0..=self.len()).map(move |i| {
            (Composition(self.0[..i].to_vec()), Composition(self.0[i..].to_vec()))
        })
    }
}

impl Ord for Composition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.size().cmp(&other.size()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Composition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("-");
        }
        let mut first = true;
        for p in &self.0 {
            if !first {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for Composition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "-" {
            return Ok(Composition::empty());
        }
        if s.is_empty() {
            return Err(Error::Parse("empty composition literal (use `-` for ∅)".into()));
        }
        let parts = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad composition part `{p}` in `{s}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Composition::new(parts)
    }
}

impl Serialize for Composition {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Composition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let parts = Vec::<u32>::deserialize(deserializer)?;
        Composition::new(parts).map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompositionStats {
    pub size: usize,
    pub length: usize,
    pub last_part: u32,
    pub part_product: u128,
    pub aut_count: u128,
    pub z_value: u128,
    pub prefix_product: u128,
    pub even_count: usize,
    pub odd_count: usize,
    pub sorted_partition: Composition,
}

pub fn stats(alpha: &Composition) -> CompositionStats {
    CompositionStats {
        size: alpha.size(),
        length: alpha.len(),
        last_part: alpha.last_part(),
        part_product: alpha.part_product(),
        aut_count: alpha.aut(),
        z_value: alpha.z(),
        prefix_product: alpha.prefix_product(),
        even_count: alpha.even_count(),
        odd_count: alpha.odd_count(),
        sorted_partition: alpha.sorted_partition(),
    }
}

/// All compositions of `n` in canonical (lexicographic) order.
pub fn compositions_of(n: usize) -> Vec<Composition> {
    fn rec(rest: usize, prefix: &mut Vec<u32>, out: &mut Vec<Composition>) {
        if rest == 0 {
            out.push(Composition(prefix.clone()));
            return;
        }
        for first in 1..=rest {
            prefix.push(first as u32);
            rec(rest - first, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::with_capacity(if n == 0 { 1 } else { 1 << (n - 1) });
    rec(n, &mut Vec::new(), &mut out);
    out
}

/// Nonempty compositions of sizes `1..=max_size`, in canonical order.
pub fn nonempty_compositions_up_to(max_size: usize) -> Vec<Composition> {
    (1..=max_size).flat_map(compositions_of).collect()
}

/// Partitions of `n`, in canonical order.
pub fn partitions_of(n: usize) -> Vec<Composition> {
    compositions_of(n).into_iter().filter(Composition::is_partition).collect()
}

/// Every `β ≥ α` together with the blocks `α⁽¹⁾,…,α⁽ℓ(β)⁾` of the split.
pub fn coarsenings_with_blocks(alpha: &Composition) -> Vec<(Composition, Vec<Composition>)> {
    if alpha.is_empty() {
        return vec![(Composition::empty(), Vec::new())];
    }
    let gaps = alpha.len() - 1;
    let mut out = Vec::with_capacity(1 << gaps);
    for mask in 0u32..(1 << gaps) {
        // bit i set: merge part i with part i+1
        let mut blocks = Vec::new();
        let mut current = vec![alpha.0[0]];
        for i in 0..gaps {
            if mask & (1 << i) == 0 {
                blocks.push(Composition(std::mem::take(&mut current)));
            }
            current.push(alpha.0[i + 1]);
        }
        blocks.push(Composition(current));
        let beta = Composition(blocks.iter().map(|b| b.size() as u32).collect());
        out.push((beta, blocks));
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

/// All `β` with `α ≤ β`, in canonical order.
pub fn coarsenings(alpha: &Composition) -> Vec<Composition> {
    coarsenings_with_blocks(alpha).into_iter().map(|(b, _)| b).collect()
}

/// The unique split `α = α⁽¹⁾⋯α⁽ℓ(β)⁾` with `α⁽ⁱ⁾ ⊨ βᵢ`.
pub fn refinement_split(alpha: &Composition, beta: &Composition) -> Result<Vec<Composition>> {
    let not = || Error::NotARefinement { fine: alpha.clone(), coarse: beta.clone() };
    if alpha.size() != beta.size() {
        return Err(not());
    }
    let mut blocks = Vec::with_capacity(beta.len());
    let mut parts = alpha.0.iter().copied();
    for &target in &beta.0 {
        let mut block = Vec::new();
        let mut sum = 0u32;
        while sum < target {
            let p = parts.next().ok_or_else(not)?;
            sum += p;
            block.push(p);
        }
        if sum != target {
            return Err(not());
        }
        blocks.push(Composition(block));
    }
    Ok(blocks)
}

/// `α ≤ β` in the refinement order. Sizes must agree.
pub fn refines(alpha: &Composition, beta: &Composition) -> Result<bool> {
    if alpha.size() != beta.size() {
        return Err(Error::NotARefinement { fine: alpha.clone(), coarse: beta.clone() });
    }
    Ok(refinement_split(alpha, beta).is_ok())
}

/// `f(α, β) = f(α⁽¹⁾) ⋯ f(α⁽ℓ(β)⁾)`, with `f(∅, ∅) = 1`.
pub fn extend_over_refinement(
    f: impl Fn(&Composition) -> Rational,
    alpha: &Composition,
    beta: &Composition,
) -> Result<Rational> {
    let blocks = refinement_split(alpha, beta)?;
    Ok(product_over_blocks(&f, &blocks))
}

pub(crate) fn product_over_blocks(
    f: &impl Fn(&Composition) -> Rational,
    blocks: &[Composition],
) -> Rational {
    let mut acc = one();
    for b in blocks {
        let v = f(b);
        if num_traits::Zero::is_zero(&v) {
            return v;
        }
        acc *= v;
    }
    acc
}

/// A finite multiset of compositions with positive multiplicities.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CompositionMultiset(BTreeMap<Composition, u64>);

impl CompositionMultiset {
    pub fn singleton(c: Composition) -> Self {
        let mut m = BTreeMap::new();
        m.insert(c, 1);
        CompositionMultiset(m)
    }

    pub fn insert(&mut self, c: Composition, count: u64) {
        if count > 0 {
            *self.0.entry(c).or_insert(0) += count;
        }
    }

    pub fn get(&self, c: &Composition) -> u64 {
        self.0.get(c).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.0.values().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Composition, u64)> {
        self.0.iter().map(|(c, &m)| (c, m))
    }
}

impl FromIterator<(Composition, u64)> for CompositionMultiset {
    fn from_iter<I: IntoIterator<Item = (Composition, u64)>>(iter: I) -> Self {
        let mut m = CompositionMultiset::default();
        for (c, k) in iter {
            m.insert(c, k);
        }
        m
    }
}

fn interleave(a: &[u32], b: &[u32], merge: bool, prefix: &mut Vec<u32>, out: &mut CompositionMultiset) {
    if a.is_empty() || b.is_empty() {
        let mut parts = prefix.clone();
        parts.extend_from_slice(a);
        parts.extend_from_slice(b);
        out.insert(Composition(parts), 1);
        return;
    }
    prefix.push(a[0]);
    interleave(&a[1..], b, merge, prefix, out);
    prefix.pop();
    prefix.push(b[0]);
    interleave(a, &b[1..], merge, prefix, out);
    prefix.pop();
    if merge {
        prefix.push(a[0] + b[0]);
        interleave(&a[1..], &b[1..], merge, prefix, out);
        prefix.pop();
    }
}

/// `α ⧢ β`: order-preserving interleavings, with multiplicity.
pub fn shuffle(alpha: &Composition, beta: &Composition) -> CompositionMultiset {
    let mut out = CompositionMultiset::default();
    interleave(&alpha.0, &beta.0, false, &mut Vec::new(), &mut out);
    out
}

/// Overlapping shuffle: interleavings where a part of `α` may also merge with
/// a part of `β` into their sum. These are the structure constants of the
/// monomial basis of QSym.
pub fn quasi_shuffle(alpha: &Composition, beta: &Composition) -> CompositionMultiset {
    let mut out = CompositionMultiset::default();
    interleave(&alpha.0, &beta.0, true, &mut Vec::new(), &mut out);
    out
}

/// Distinct rearrangements `β ∼ α`.
pub fn rearrangements(alpha: &Composition) -> Vec<Composition> {
    let mut parts = alpha.0.clone();
    parts.sort_unstable();
    let mut out = vec![Composition(parts.clone())];
    // next lexicographic permutation
    loop {
        let n = parts.len();
        let Some(i) = (1..n).rev().find(|&i| parts[i - 1] < parts[i]) else { break };
        let j = (i..n).rev().find(|&j| parts[j] > parts[i - 1]).unwrap();
        parts.swap(i - 1, j);
        parts[i..].reverse();
        out.push(Composition(parts.clone()));
    }
    out.sort();
    out
}
