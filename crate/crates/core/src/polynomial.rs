//! Truncation to finitely many commuting variables, used as an independent
//! check on the monomial-basis product.

use std::collections::BTreeMap;

use crate::composition::Composition;
use crate::element::{add_term, Basis, Element};
use crate::error::{Error, Result};
use crate::rational::{binomial, from_u128, Rational};

/// Exponent vector (one entry per variable) to coefficient.
pub type Polynomial = BTreeMap<Vec<u32>, Rational>;

fn increasing_tuples(len: usize, n: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, left: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < left {
                break;
            }
            cur.push(i);
            go(i + 1, left - 1, n, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, len, n, &mut Vec::new(), &mut out);
    out
}

/// `M_α(x₁, …, x_n, 0, 0, …)`.
pub fn monomial_polynomial(alpha: &Composition, num_vars: usize) -> Polynomial {
    let mut out = Polynomial::new();
    for idx in increasing_tuples(alpha.len(), num_vars) {
        let mut exps = vec![0u32; num_vars];
        for (&i, &p) in idx.iter().zip(alpha.parts()) {
            exps[i] = p;
        }
        add_term(&mut out, exps, from_u128(1));
    }
    out
}

/// Sets all variables beyond the first `num_vars` to zero.
pub fn expand_polynomial(h: &Element, num_vars: usize) -> Result<Polynomial> {
    if *h.basis() != Basis::M {
        return Err(Error::BasisMismatch { expected: "M".into(), found: h.basis().to_string() });
    }
    let mut out = Polynomial::new();
    for (alpha, c) in h.terms() {
        for (e, v) in monomial_polynomial(alpha, num_vars) {
            add_term(&mut out, e, c * v);
        }
    }
    Ok(out)
}

pub fn multiply(a: &Polynomial, b: &Polynomial) -> Polynomial {
    let mut out = Polynomial::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            add_term(&mut out, e, ca * cb);
        }
    }
    out
}

/// `h(1, …, 1, 0, …)` with `k` ones, i.e. `Σ c_α binom(k, ℓ(α))`.
pub fn principal_specialization(h: &Element, k: usize) -> Result<Rational> {
    if *h.basis() != Basis::M {
        return Err(Error::BasisMismatch { expected: "M".into(), found: h.basis().to_string() });
    }
    Ok(h.terms().iter().map(|(a, c)| c * from_u128(binomial(k, a.len()))).sum())
}
