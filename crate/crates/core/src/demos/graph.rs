//! Finite simple graphs on at most eight labeled vertices, as a Hopf
//! algebra: product is disjoint union, coproduct splits the vertex set.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::character::CharacterData;
use crate::composition::Composition;
use crate::element::{add_term, Basis, Element, Terms};
use crate::error::{Error, Result};
use crate::functional::Functional;
use crate::hopf::HopfProvider;
use crate::rational::{from_u128, one, zero, Rational};
use crate::universal::{char_to_infchar, single, universal_to_qsym};

pub const MAX_VERTICES: usize = 8;

/// Vertices `0..n` internally, `1..=n` in text. `adj[i]` is a bitmask.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SmallGraph {
    n: u8,
    adj: [u8; MAX_VERTICES],
}

impl SmallGraph {
    pub fn empty() -> Self {
        SmallGraph::default()
    }

    /// Edges are 1-based vertex pairs.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::InvalidGraph(format!("{n} vertices; at most {MAX_VERTICES} are supported")));
        }
        let mut g = SmallGraph { n: n as u8, adj: [0; MAX_VERTICES] };
        for &(u, v) in edges {
            if u == 0 || v == 0 || u > n || v > n {
                return Err(Error::InvalidGraph(format!("edge {u}-{v} is outside 1..={n}")));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("loop at {u}")));
            }
            let (a, b) = (u - 1, v - 1);
            if g.adj[a] & (1 << b) != 0 {
                return Err(Error::InvalidGraph(format!("repeated edge {u}-{v}")));
            }
            g.adj[a] |= 1 << b;
            g.adj[b] |= 1 << a;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Result<Self> {
        let edges: Vec<_> = (1..=n).flat_map(|u| (u + 1..=n).map(move |v| (u, v))).collect();
        Self::new(n, &edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.n as usize
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.vertex_count();
        (0..n).flat_map(|u| (u + 1..n).filter(move |&v| self.adj[u] & (1 << v) != 0).map(move |v| (u + 1, v + 1))).collect()
    }

    pub fn has_edges(&self) -> bool {
        self.adj.iter().any(|&m| m != 0)
    }

    fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u] & (1 << v) != 0
    }

    /// Subgraph induced on `mask`, relabeled in increasing vertex order.
    pub fn induced(&self, mask: u32) -> SmallGraph {
        let keep: Vec<usize> = (0..self.vertex_count()).filter(|&v| mask & (1 << v) != 0).collect();
        let mut g = SmallGraph { n: keep.len() as u8, adj: [0; MAX_VERTICES] };
        for (i, &u) in keep.iter().enumerate() {
            for (j, &v) in keep.iter().enumerate() {
                if self.adjacent(u, v) {
                    g.adj[i] |= 1 << j;
                }
            }
        }
        g
    }

    /// `self ⊔ other`, with `other`'s vertices shifted after `self`'s.
    pub fn disjoint_union(&self, other: &SmallGraph) -> Result<SmallGraph> {
        let n = self.vertex_count() + other.vertex_count();
        if n > MAX_VERTICES {
            return Err(Error::InvalidGraph(format!("disjoint union has {n} vertices")));
        }
        let shift = self.vertex_count();
        let mut edges = self.edges();
        edges.extend(other.edges().into_iter().map(|(u, v)| (u + shift, v + shift)));
        SmallGraph::new(n, &edges)
    }

    /// Relabels vertex `i` (0-based) as `perm[i]`.
    pub fn relabel(&self, perm: &[usize]) -> SmallGraph {
        let edges: Vec<_> = self.edges().into_iter().map(|(u, v)| (perm[u - 1] + 1, perm[v - 1] + 1)).collect();
        SmallGraph::new(self.vertex_count(), &edges).expect("permutation keeps the graph simple")
    }

    /// All labeled graphs on `n` vertices.
    pub fn all_on(n: usize) -> Vec<SmallGraph> {
        assert!(n <= 6, "enumerating all labeled graphs on {n} vertices is not supported");
        let pairs: Vec<(usize, usize)> = (1..=n).flat_map(|u| (u + 1..=n).map(move |v| (u, v))).collect();
        (0u32..1 << pairs.len())
            .map(|mask| {
                let edges: Vec<_> =
                    pairs.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, &e)| e).collect();
                SmallGraph::new(n, &edges).expect("valid")
            })
            .collect()
    }

    /// Number of proper colorings with `k` colors, by backtracking.
    pub fn count_colorings(&self, k: usize) -> u64 {
        let n = self.vertex_count();
        let mut colors = vec![usize::MAX; n];
        fn go(g: &SmallGraph, v: usize, k: usize, colors: &mut Vec<usize>) -> u64 {
            if v == colors.len() {
                return 1;
            }
            let mut total = 0;
            for c in 0..k {
                if (0..v).all(|u| !g.adjacent(u, v) || colors[u] != c) {
                    colors[v] = c;
                    total += go(g, v + 1, k, colors);
                }
            }
            total
        }
        go(self, 0, k, &mut colors)
    }
}

impl fmt::Display for SmallGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<String> = self.edges().iter().map(|(u, v)| format!("{u}-{v}")).collect();
        write!(f, "{}; {}", self.n, edges.join(","))
    }
}

impl fmt::Debug for SmallGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph({self})")
    }
}

/// `n; u-v,u-v,...` with 1-based vertices; the edge list may be empty.
impl FromStr for SmallGraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |m: &str| Error::InvalidGraph(format!("{m} in `{s}`"));
        let (n, rest) = s.split_once(';').unwrap_or((s, ""));
        let n: usize = n.trim().parse().map_err(|_| bad("bad vertex count"))?;
        let mut edges = Vec::new();
        for e in rest.split(',').map(str::trim).filter(|e| !e.is_empty()) {
            let (u, v) = e.split_once('-').ok_or_else(|| bad("edge without `-`"))?;
            let u = u.trim().parse().map_err(|_| bad("bad vertex"))?;
            let v = v.trim().parse().map_err(|_| bad("bad vertex"))?;
            edges.push((u, v));
        }
        SmallGraph::new(n, &edges)
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct GraphHopf;

impl HopfProvider for GraphHopf {
    type Label = SmallGraph;

    fn unit(&self) -> SmallGraph {
        SmallGraph::empty()
    }

    fn degree(&self, x: &SmallGraph) -> usize {
        x.vertex_count()
    }

    fn basis_of_degree(&self, n: usize) -> Vec<SmallGraph> {
        SmallGraph::all_on(n)
    }

    fn coproduct(&self, x: &SmallGraph) -> Terms<(SmallGraph, SmallGraph)> {
        let n = x.vertex_count();
        let full = (1u32 << n) - 1;
        let mut out = Terms::new();
        for mask in 0..=full {
            add_term(&mut out, (x.induced(mask), x.induced(full & !mask)), one());
        }
        out
    }

    fn product(&self, a: &SmallGraph, b: &SmallGraph) -> Terms<SmallGraph> {
        single(a.disjoint_union(b).expect("product within the vertex limit"))
    }

    fn precheck_degree(&self) -> usize {
        5
    }
}

pub fn graph_provider() -> GraphHopf {
    GraphHopf
}

/// `ζ(G) = [G has no edges]`.
pub fn no_edges() -> Functional<SmallGraph> {
    Functional::new(|g: &SmallGraph| if g.has_edges() { zero() } else { one() })
}

/// The chromatic symmetric function `X_G`, as the universal image of `G`.
pub fn chromatic_symmetric(g: &SmallGraph) -> Result<Element> {
    universal_to_qsym(&GraphHopf, &no_edges(), &single(g.clone()))
}

/// `X_G` from proper colorings: the coefficient of `M_α` counts colorings
/// using exactly the colors `1..ℓ(α)`, color `i` on `αᵢ` vertices.
pub fn chromatic_symmetric_by_colorings(g: &SmallGraph) -> Element {
    let n = g.vertex_count();
    let mut out = Element::zero(Basis::M);
    let mut colors = vec![0usize; n];
    fn go(g: &SmallGraph, v: usize, colors: &mut Vec<usize>, out: &mut Element) {
        let n = colors.len();
        if v == n {
            let mut counts = vec![0u32; n];
            for &c in colors.iter() {
                counts[c] += 1;
            }
            let used = counts.iter().take_while(|&&c| c > 0).count();
            if counts[used..].iter().all(|&c| c == 0) {
                let alpha = Composition::new(counts[..used].to_vec()).expect("positive");
                out.add_term(alpha, one());
            }
            return;
        }
        for c in 0..n {
            if (0..v).all(|u| !g.adjacent(u, v) || colors[u] != c) {
                colors[v] = c;
                go(g, v + 1, colors, out);
            }
        }
    }
    if n == 0 {
        return Element::unit(Basis::M);
    }
    go(g, 0, &mut colors, &mut out);
    out
}

/// Integer polynomial, coefficients of `k⁰, k¹, …`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPolynomial(pub Vec<BigInt>);

impl IntPolynomial {
    pub fn coefficient(&self, i: usize) -> BigInt {
        self.0.get(i).cloned().unwrap_or_default()
    }

    pub fn eval(&self, k: i64) -> BigInt {
        self.0.iter().rev().fold(BigInt::zero(), |acc, c| acc * k + c)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c < &BigInt::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let mag_one = mag == BigInt::from(1);
            match i {
                0 => write!(f, "{mag}")?,
                1 if mag_one => write!(f, "k")?,
                1 => write!(f, "{mag}k")?,
                _ if mag_one => write!(f, "k^{i}")?,
                _ => write!(f, "{mag}k^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Exact interpolation through `(k, values[k])`, `k = 0..values.len()`,
/// in Newton form with binomial basis polynomials.
fn interpolate(values: &[Rational]) -> Vec<Rational> {
    let m = values.len();
    let mut diffs = values.to_vec();
    let mut newton = Vec::with_capacity(m);
    for _ in 0..m {
        newton.push(diffs[0].clone());
        diffs = diffs.windows(2).map(|w| &w[1] - &w[0]).collect();
    }
    // binom(k, j) as a polynomial in k, accumulated
    let mut coeffs = vec![zero(); m.max(1)];
    let mut basis = vec![one()];
    for (j, d) in newton.iter().enumerate() {
        for (i, b) in basis.iter().enumerate() {
            coeffs[i] += d * b;
        }
        // basis *= (k - j) / (j + 1)
        let mut next = vec![zero(); basis.len() + 1];
        for (i, b) in basis.iter().enumerate() {
            next[i + 1] += b;
            next[i] -= b * from_u128(j as u128);
        }
        let scale = from_u128(j as u128 + 1);
        basis = next.into_iter().map(|b| b / &scale).collect();
    }
    coeffs
}

/// `χ_G(k)` from coloring counts at `k = 0..=n`.
pub fn chromatic_polynomial(g: &SmallGraph) -> IntPolynomial {
    let n = g.vertex_count();
    let values: Vec<Rational> = (0..=n).map(|k| from_u128(g.count_colorings(k) as u128)).collect();
    let coeffs = interpolate(&values);
    IntPolynomial(
        coeffs
            .into_iter()
            .map(|c| {
                assert!(c.is_integer(), "chromatic polynomial has integer coefficients");
                c.to_integer()
            })
            .collect(),
    )
}

/// `([k¹] χ_G, ξ(G))` with `ξ` the infinitesimal character corresponding to
/// `ζ = [no edges]` under the shuffle basis of `f`.
pub fn graph_infchar_two_ways(g: &SmallGraph, f: &CharacterData) -> Result<(Rational, Rational)> {
    if g.vertex_count() == 0 {
        return Err(Error::InvalidGraph("the two-way check needs at least one vertex".into()));
    }
    let chi = chromatic_polynomial(g);
    let xi = char_to_infchar(&GraphHopf, &no_edges(), f, g.vertex_count())?;
    Ok((Rational::from_integer(chi.coefficient(1)), xi.eval(g)))
}
