//! Named bases for the command line: `type1`, `type2`, `even-odd`,
//! `combinatorial`, `reverse-combinatorial`, `prefix-sum:<tau>` and
//! `order:<permutation>`.
//!
//! `<tau>` is `id` (τ(n) = n), `one` (τ(n) = 1), `square` (τ(n) = n²), or an
//! explicit list `t1,t2,...` of rationals giving τ(1), τ(2), …; an explicit
//! list bounds the usable degree by its length. `<permutation>` lists
//! `1..=k` from smallest to largest in the order, e.g. `order:2,1,3`.

use std::sync::Arc;

use crate::character::{normalize, CharacterData};
use crate::constructions::{
    combinatorial, even_odd_default, order_basis_character, prefix_sum_character, reverse_combinatorial,
    type_one, type_two, TotalOrder, Weight,
};
use crate::error::{Error, Result};
use crate::rational::{self, int, Rational};

pub const KNOWN: &[&str] = &[
    "type1",
    "type2",
    "even-odd",
    "combinatorial",
    "reverse-combinatorial",
    "prefix-sum:<id|one|square|t1,t2,...>",
    "order:<permutation of 1..k>",
];

fn unknown(name: &str) -> Error {
    Error::UnknownBasis { name: name.to_string(), known: KNOWN.join(", ") }
}

fn parse_tau(spec: &str) -> Result<(Weight, Option<u32>)> {
    Ok(match spec {
        "id" => (Arc::new(|n| int(n as i64)), None),
        "one" => (Arc::new(|_| int(1)), None),
        "square" => (Arc::new(|n| int(n as i64 * n as i64)), None),
        list => {
            let values: Vec<Rational> = list.split(',').map(rational::parse).collect::<Result<_>>()?;
            let k = values.len() as u32;
            let tau: Weight = Arc::new(move |n| {
                values.get(n as usize - 1).cloned().unwrap_or_else(|| panic!("τ({n}) is not given"))
            });
            (tau, Some(k))
        }
    })
}

/// The normalized shuffle character registered under `name`, valid up to
/// `degree`.
pub fn resolve(name: &str, degree: usize) -> Result<CharacterData> {
    match name {
        "type1" => type_one(degree),
        "type2" => type_two(degree),
        "even-odd" => even_odd_default(degree),
        "combinatorial" => combinatorial(degree),
        "reverse-combinatorial" => reverse_combinatorial(degree),
        _ => {
            if let Some(spec) = name.strip_prefix("prefix-sum:") {
                let (tau, bound) = parse_tau(spec)?;
                if let Some(b) = bound {
                    if degree > b as usize {
                        return Err(Error::BoundExceeded { bound: b, degree });
                    }
                }
                let raw = prefix_sum_character(name, tau, degree)?.with_bound(bound);
                normalize(&raw, degree)
            } else if let Some(spec) = name.strip_prefix("order:") {
                let seq: Vec<u32> = spec
                    .split(',')
                    .map(|p| p.trim().parse().map_err(|_| Error::InvalidOrder(format!("bad entry `{p}`"))))
                    .collect::<Result<_>>()?;
                let order = TotalOrder::from_sequence(&seq)?;
                Ok(order_basis_character(&order, degree)?.renamed(name))
            } else {
                Err(unknown(name))
            }
        }
    }
}
