use serde_json::{json, Value};

use qsym_core::character::{basis_contract, basis_expand, f_to_g, from_monomial, g_to_f, is_shuffle_character};
use qsym_core::composition::{compositions_of, nonempty_compositions_up_to, Composition};
use qsym_core::demos::graph::{chromatic_polynomial, chromatic_symmetric, graph_infchar_two_ways, SmallGraph};
use qsym_core::demos::poset::{eta_check, kp_generating_function, SmallPoset};
use qsym_core::element::{antipode_convolution, antipode_recursive, antipode_shuffle};
use qsym_core::format::{from_json, from_text, to_json, to_text};
use qsym_core::functional::{exp_functional, first_disagreement, log_functional};
use qsym_core::hopf::QSymHopf;
use qsym_core::qps::{check_integral_nonneg, qps_expand, verify_qps};
use qsym_core::rational::format as fmt_rational;
use qsym_core::registry::resolve;
use qsym_core::universal::{canonical, theta, theta_eigencheck, universal_to_qsym, universal_to_sh, Canonical};
use qsym_core::{Basis, Element, Functional};

use crate::{Command, Format, Suite};

pub const DEGREE_CAP: usize = 10;

type Output = (String, u8);

fn check_degree(degree: usize) -> Result<usize, String> {
    match degree {
        0 => Err("degree must be positive".into()),
        d if d > DEGREE_CAP => Err(format!("degree {d} exceeds the hard cap {DEGREE_CAP}")),
        d => Ok(d),
    }
}

fn parse_comp(s: &str) -> Result<Composition, String> {
    let c: Composition = s.parse().map_err(|e| format!("{e}"))?;
    if c.size() > DEGREE_CAP {
        return Err(format!("composition {c} has size above the hard cap {DEGREE_CAP}"));
    }
    Ok(c)
}

/// Text or JSON form of an element of M.
fn parse_monomial_element(s: &str) -> Result<Element, String> {
    let h = if s.trim_start().starts_with('{') { from_json(s) } else { from_text(s) }.map_err(|e| e.to_string())?;
    if *h.basis() != Basis::M && !h.is_zero() {
        return Err(format!("expected an element of the M basis, found basis {}", h.basis()));
    }
    if h.max_degree() > DEGREE_CAP {
        return Err(format!("element degree {} exceeds the hard cap {DEGREE_CAP}", h.max_degree()));
    }
    Ok(h.retag(Basis::M))
}

fn canonical_by_name(name: &str) -> Result<Functional, String> {
    Canonical::from_name(name).map(canonical).ok_or_else(|| {
        let known: Vec<&str> = Canonical::ALL.iter().map(|c| c.name()).collect();
        format!("unknown functional `{name}`; known functionals: {}", known.join(", "))
    })
}

fn element_value(h: &Element) -> Value {
    serde_json::from_str(&to_json(h)).expect("element JSON is valid")
}

fn render_element(h: &Element, format: Format) -> Result<String, String> {
    match format {
        Format::Text => Ok(format!("{}\n", to_text(h))),
        Format::Json => Ok(format!("{}\n", to_json(h))),
        Format::Csv => Err("csv output is only available for tables".into()),
    }
}

fn render_json(v: &Value) -> String {
    format!("{}\n", serde_json::to_string_pretty(v).expect("serializable"))
}

/// Values of a functional on `M_α`, `|α| ≤ degree`, as an element of the
/// dual basis `M*`.
fn functional_values(phi: &Functional, degree: usize) -> Element {
    let all = (0..=degree).flat_map(compositions_of);
    Element::from_terms(Basis::Named("M*".into()), all.map(|a| (a.clone(), phi.eval(&a))))
}

pub fn run(command: &Command, format: Format) -> Result<Output, String> {
    let err = |e: qsym_core::Error| e.to_string();
    match command {
        Command::Expand { basis, comp, shuffle } => {
            let a = parse_comp(comp)?;
            let f = resolve(basis, a.size().max(1)).map_err(err)?;
            let h = if *shuffle { basis_expand(&f, &a) } else { qps_expand(&f, &a).map_err(err)? };
            Ok((render_element(&h, format)?, 0))
        }
        Command::Convert { basis, comp, element } => {
            let (h, degree) = match (comp, element) {
                (Some(c), _) => {
                    let a = parse_comp(c)?;
                    let d = a.size();
                    (Element::monomial(a), d)
                }
                (None, Some(e)) => {
                    let h = parse_monomial_element(e)?;
                    let d = h.max_degree();
                    (h, d)
                }
                (None, None) => return Err("one of --comp or --element is required".into()),
            };
            let f = resolve(basis, degree.max(1)).map_err(err)?;
            let g = f_to_g(&f, degree.max(1)).map_err(err)?;
            Ok((render_element(&from_monomial(&g, &h).map_err(err)?, format)?, 0))
        }
        Command::Table { basis, degree, inverse } => table(basis, check_degree(*degree)?, *inverse, format),
        Command::Verify { suite, basis, degree } => verify(*suite, basis, check_degree(*degree)?, format),
        Command::Theta { comp, element } => {
            let h = match (comp, element) {
                (Some(c), _) => Element::monomial(parse_comp(c)?),
                (None, Some(e)) => parse_monomial_element(e)?,
                (None, None) => return Err("one of --comp or --element is required".into()),
            };
            Ok((render_element(&theta(&h).map_err(err)?, format)?, 0))
        }
        Command::Exp { functional, degree } => {
            let d = check_degree(*degree)?;
            let z = exp_functional(&canonical_by_name(functional)?, d).map_err(err)?;
            Ok((render_element(&functional_values(&z, d), format)?, 0))
        }
        Command::Log { functional, degree } => {
            let d = check_degree(*degree)?;
            let xi = log_functional(&canonical_by_name(functional)?, d).map_err(err)?;
            Ok((render_element(&functional_values(&xi, d), format)?, 0))
        }
        Command::Phi { element, graph, poset, functional } => {
            let h = match (element, graph, poset) {
                (Some(e), _, _) => {
                    let h = parse_monomial_element(e)?;
                    universal_to_qsym(&QSymHopf, &canonical_by_name(functional)?, h.terms()).map_err(err)?
                }
                (_, Some(g), _) => chromatic_symmetric(&g.parse::<SmallGraph>().map_err(err)?).map_err(err)?,
                (_, _, Some(p)) => kp_generating_function(&p.parse::<SmallPoset>().map_err(err)?).map_err(err)?,
                _ => return Err("one of --element, --graph or --poset is required".into()),
            };
            Ok((render_element(&h, format)?, 0))
        }
        Command::Psi { element, functional } => {
            let h = parse_monomial_element(element)?;
            let out = universal_to_sh(&QSymHopf, &canonical_by_name(functional)?, h.terms()).map_err(err)?;
            Ok((render_element(&out, format)?, 0))
        }
        Command::DemoGraph { graph, basis } => demo_graph(graph, basis, format),
        Command::DemoPoset { poset } => demo_poset(poset, format),
    }
}

fn table(basis: &str, degree: usize, inverse: bool, format: Format) -> Result<Output, String> {
    let f = resolve(basis, degree).map_err(|e| e.to_string())?;
    let comps = compositions_of(degree);
    let rows: Vec<Element> = if inverse {
        let g = f_to_g(&f, degree).map_err(|e| e.to_string())?;
        comps.iter().map(|a| basis_contract(&g, a)).collect()
    } else {
        comps.iter().map(|a| basis_expand(&f, a)).collect()
    };
    let labels: Vec<String> = comps.iter().map(|c| c.to_string()).collect();
    let cells: Vec<Vec<String>> =
        rows.iter().map(|r| comps.iter().map(|b| fmt_rational(&r.coefficient(b))).collect()).collect();
    if format == Format::Json {
        let v = json!({
            "basis": f.name(),
            "degree": degree,
            "inverse": inverse,
            "labels": labels,
            "rows": cells,
        });
        return Ok((render_json(&v), 0));
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    let header = std::iter::once(String::new()).chain(labels.iter().cloned());
    w.write_record(header).map_err(|e| e.to_string())?;
    for (label, row) in labels.iter().zip(&cells) {
        w.write_record(std::iter::once(label).chain(row)).map_err(|e| e.to_string())?;
    }
    let bytes = w.into_inner().map_err(|e| e.to_string())?;
    Ok((String::from_utf8(bytes).expect("utf-8"), 0))
}

struct SuiteResult {
    passed: bool,
    details: Vec<String>,
}

fn verify(suite: Suite, basis: &str, degree: usize, format: Format) -> Result<Output, String> {
    let err = |e: qsym_core::Error| e.to_string();
    let result = match suite {
        Suite::ShuffleCharacter => {
            let f = resolve(basis, degree).map_err(err)?;
            match is_shuffle_character(&f, degree) {
                Ok(()) => SuiteResult {
                    passed: true,
                    details: vec![format!("f(α)f(β) = Σ f(γ) over shuffles for |α|+|β| ≤ {degree}")],
                },
                Err(v) => SuiteResult { passed: false, details: vec![v.to_string()] },
            }
        }
        Suite::Qps => {
            let f = resolve(basis, degree).map_err(err)?;
            let r = verify_qps(&f, degree, degree).map_err(err)?;
            SuiteResult { passed: r.passed(), details: r.to_string().lines().map(String::from).collect() }
        }
        Suite::Antipode => antipode_suite(degree),
        Suite::ThetaEigen => {
            let fe = resolve(basis, degree).map_err(err)?;
            let r = theta_eigencheck(&fe, degree).map_err(err)?;
            SuiteResult { passed: r.failure.is_none(), details: vec![r.to_string()] }
        }
        Suite::Integrality => {
            let f = resolve(basis, degree).map_err(err)?;
            let r = check_integral_nonneg(&f, degree).map_err(err)?;
            let mut details = Vec::new();
            if !r.consistent() {
                details.push("the coefficient and value tests disagree".to_string());
            }
            match r.first_witness() {
                None => details.push(format!("P_α has nonnegative integer coefficients for |α| ≤ {degree}")),
                Some((a, b, v)) => {
                    details.push(format!("P_{a} has coefficient {} at M_{b}", fmt_rational(v)));
                    details.push(format!(
                        "{} coefficient failures, {} value failures",
                        r.coefficient_failures.len(),
                        r.value_failures.len()
                    ));
                }
            }
            SuiteResult { passed: r.integral() && r.consistent(), details }
        }
        Suite::FgRoundtrip => {
            let f = resolve(basis, degree).map_err(err)?;
            let back = g_to_f(&f_to_g(&f, degree).map_err(err)?, degree).map_err(err)?;
            match first_disagreement(back.functional(), f.functional(), degree) {
                None => SuiteResult {
                    passed: true,
                    details: vec![format!("f → g → f is the identity for |α| ≤ {degree}")],
                },
                Some(a) => SuiteResult { passed: false, details: vec![format!("round trip differs at {a}")] },
            }
        }
    };
    let name = suite_name(suite);
    let status = if result.passed { 0 } else { 2 };
    let text = match format {
        Format::Json => render_json(&json!({
            "suite": name,
            "basis": basis,
            "degree": degree,
            "passed": result.passed,
            "details": result.details,
        })),
        _ => {
            let verdict = if result.passed { "PASS" } else { "FAIL" };
            let mut s = format!("{verdict} {name} basis={basis} degree={degree}\n");
            for d in &result.details {
                s.push_str(&format!("  {d}\n"));
            }
            s
        }
    };
    Ok((text, status))
}

fn suite_name(suite: Suite) -> &'static str {
    match suite {
        Suite::ShuffleCharacter => "shuffle-character",
        Suite::Qps => "qps",
        Suite::Antipode => "antipode",
        Suite::ThetaEigen => "theta-eigen",
        Suite::Integrality => "integrality",
        Suite::FgRoundtrip => "fg-roundtrip",
    }
}

fn antipode_suite(degree: usize) -> SuiteResult {
    for a in nonempty_compositions_up_to(degree) {
        let x = Element::shuffle_basis(a.clone());
        if antipode_shuffle(&x).ok() != antipode_recursive(&x).ok() {
            return SuiteResult { passed: false, details: vec![format!("shuffle antipode formula fails at {a}")] };
        }
    }
    for basis in [Basis::M, Basis::X] {
        for a in (0..=degree).flat_map(compositions_of) {
            let h = Element::basis_element(basis.clone(), a.clone());
            let expected = if a.is_empty() { Element::unit(basis.clone()) } else { Element::zero(basis.clone()) };
            for left in [true, false] {
                if antipode_convolution(&h, left).ok().as_ref() != Some(&expected) {
                    return SuiteResult {
                        passed: false,
                        details: vec![format!("antipode axiom fails in {basis} at {a}")],
                    };
                }
            }
        }
    }
    SuiteResult {
        passed: true,
        details: vec![
            format!("shuffle antipode formula matches the recursion for |α| ≤ {degree}"),
            format!("m(S ⊗ id)Δ = m(id ⊗ S)Δ = uε in M and X up to degree {degree}"),
        ],
    }
}

fn demo_graph(graph: &str, basis: &str, format: Format) -> Result<Output, String> {
    let g: SmallGraph = graph.parse().map_err(|e: qsym_core::Error| e.to_string())?;
    let f = resolve(basis, g.vertex_count().max(1)).map_err(|e| e.to_string())?;
    let x = chromatic_symmetric(&g).map_err(|e| e.to_string())?;
    let chi = chromatic_polynomial(&g);
    let (xi, linear) = graph_infchar_two_ways(&g, &f).map_err(|e| e.to_string())?;
    let agree = xi == linear;
    let text = match format {
        Format::Json => render_json(&json!({
            "graph": g.to_string(),
            "basis": f.name(),
            "chromatic_symmetric": element_value(&x),
            "chromatic_polynomial": chi.to_string(),
            "infinitesimal_character": fmt_rational(&xi),
            "linear_coefficient": fmt_rational(&linear),
            "agree": agree,
        })),
        _ => format!(
            "graph: {g}\nX_G = {}\nχ_G(k) = {chi}\nξ(G) = {}\n[k]χ_G = {}\n{}\n",
            to_text(&x),
            fmt_rational(&xi),
            fmt_rational(&linear),
            if agree { "PASS" } else { "FAIL" }
        ),
    };
    Ok((text, if agree { 0 } else { 2 }))
}

fn demo_poset(poset: &str, format: Format) -> Result<Output, String> {
    let p: SmallPoset = poset.parse().map_err(|e: qsym_core::Error| e.to_string())?;
    let kp = kp_generating_function(&p).map_err(|e| e.to_string())?;
    let (eta, xi) = eta_check(&p).map_err(|e| e.to_string())?;
    let agree = eta == xi;
    let text = match format {
        Format::Json => render_json(&json!({
            "poset": p.to_string(),
            "k_p": element_value(&kp),
            "eta_of_k_p": fmt_rational(&eta),
            "unique_minimum": fmt_rational(&xi),
            "agree": agree,
        })),
        _ => format!(
            "poset: {p}\nK_P = {}\nη(K_P) = {}\nξ(P) = {}\n{}\n",
            to_text(&kp),
            fmt_rational(&eta),
            fmt_rational(&xi),
            if agree { "PASS" } else { "FAIL" }
        ),
    };
    Ok((text, if agree { 0 } else { 2 }))
}
