//! Text and JSON forms of graded elements.
//!
//! Text: `M[2,1] + 1/3 M[3]`, `-X[-]` for `-x_∅`, `0` for the zero element.
//! JSON: `{"basis":"M","terms":[{"comp":[2,1],"coef":"1/3"}]}`.

use serde::{Deserialize, Serialize};

use num_traits::{One, Signed};

use crate::composition::Composition;
use crate::element::{Basis, Element};
use crate::error::{Error, Result};
use crate::rational::{self, one};

#[derive(Serialize, Deserialize)]
struct ElementJson {
    basis: String,
    terms: Vec<TermJson>,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    comp: Composition,
    coef: String,
}

fn to_json_struct(h: &Element) -> ElementJson {
    ElementJson {
        basis: h.basis().tag().to_string(),
        terms: h.terms().iter().map(|(c, v)| TermJson { comp: c.clone(), coef: rational::format(v) }).collect(),
    }
}

/// Compact JSON with keys in the documented order.
pub fn to_json(h: &Element) -> String {
    serde_json::to_string(&to_json_struct(h)).expect("serializable")
}

pub fn to_json_pretty(h: &Element) -> String {
    serde_json::to_string_pretty(&to_json_struct(h)).expect("serializable")
}

pub fn from_json(s: &str) -> Result<Element> {
    let e: ElementJson = serde_json::from_str(s).map_err(|err| Error::Parse(format!("element JSON: {err}")))?;
    let mut out = Element::zero(Basis::from_tag(&e.basis));
    for t in e.terms {
        out.add_term(t.comp, rational::parse(&t.coef)?);
    }
    Ok(out)
}

pub fn to_text(h: &Element) -> String {
    if h.is_zero() {
        return "0".into();
    }
    let tag = h.basis().tag();
    let mut s = String::new();
    for (i, (c, v)) in h.terms().iter().enumerate() {
        let neg = v.is_negative();
        let mag = v.abs();
        match (i, neg) {
            (0, true) => s.push('-'),
            (0, false) => {}
            (_, true) => s.push_str(" - "),
            (_, false) => s.push_str(" + "),
        }
        if !mag.is_one() {
            s.push_str(&rational::format(&mag));
            s.push(' ');
        }
        s.push_str(&format!("{tag}[{c}]"));
    }
    s
}

/// Inverse of [`to_text`]. All terms must share one basis tag.
pub fn from_text(s: &str) -> Result<Element> {
    let s = s.trim();
    let bad = |m: &str| Error::Parse(format!("{m} in element `{s}`"));
    if s == "0" {
        return Ok(Element::zero(Basis::M));
    }
    let normalized = s.replace(" - ", " + -");
    let mut basis: Option<Basis> = None;
    let mut out: Option<Element> = None;
    for term in normalized.split(" + ") {
        let term = term.trim();
        let (sign, body) = match term.strip_prefix('-') {
            Some(rest) => (-one(), rest.trim_start()),
            None => (one(), term),
        };
        let (coef, atom) = match body.rsplit_once(' ') {
            Some((c, a)) => (rational::parse(c)?, a),
            None => (one(), body),
        };
        let open = atom.find('[').ok_or_else(|| bad("missing `[`"))?;
        let inner = atom[open + 1..].strip_suffix(']').ok_or_else(|| bad("missing `]`"))?;
        let tag = Basis::from_tag(&atom[..open]);
        if tag.tag().is_empty() {
            return Err(bad("missing basis tag"));
        }
        if basis.as_ref().is_some_and(|b| *b != tag) {
            return Err(bad("mixed bases"));
        }
        let comp: Composition = inner.parse()?;
        let e = out.get_or_insert_with(|| Element::zero(tag.clone()));
        e.add_term(comp, sign * coef);
        basis = Some(tag);
    }
    out.ok_or_else(|| bad("no terms"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::comp;
    use crate::rational::{int, q};

    #[test]
    fn text_forms() {
        let h = Element::from_terms(Basis::M, [(comp![2, 1], int(1)), (comp![3], q(1, 3))]);
        assert_eq!(to_text(&h), "M[2,1] + 1/3 M[3]");
        let h = Element::from_terms(Basis::X, [(Composition::empty(), int(-1)), (comp![1], q(-2, 5))]);
        assert_eq!(to_text(&h), "-X[-] - 2/5 X[1]");
        assert_eq!(from_text(&to_text(&h)).unwrap(), h);
        assert_eq!(to_text(&Element::zero(Basis::M)), "0");
        assert!(from_text("M[1] + X[2]").is_err());
        assert!(from_text("M[1").is_err());
    }

    #[test]
    fn json_forms() {
        let h = Element::from_terms(Basis::M, [(comp![2, 1], q(1, 3))]);
        assert_eq!(to_json(&h), r#"{"basis":"M","terms":[{"comp":[2,1],"coef":"1/3"}]}"#);
        assert_eq!(from_json(&to_json(&h)).unwrap(), h);
        assert_eq!(from_json(r#"{"basis":"M","terms":[{"comp":[1],"coef":"2/4"}]}"#).unwrap().coefficient(&comp![1]), q(1, 2));
        assert!(from_json(r#"{"basis":"M","terms":[{"comp":[0],"coef":"1"}]}"#).is_err());
    }
}
