use std::process::{Command, Output};

fn qsym(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qsym")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = qsym(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

const BASES: &[&str] = &[
    "type1",
    "type2",
    "even-odd",
    "combinatorial",
    "reverse-combinatorial",
    "prefix-sum:square",
    "order:3,1,2,6,4,5",
];

fn compositions_up_to(n: u32) -> Vec<Vec<u32>> {
    fn rec(rest: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(prefix.clone());
            return;
        }
        for p in 1..=rest {
            prefix.push(p);
            rec(rest - p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    for size in 1..=n {
        rec(size, &mut Vec::new(), &mut out);
    }
    out
}

fn aut(parts: &[u32]) -> u64 {
    let mut counts = std::collections::BTreeMap::new();
    for p in parts {
        *counts.entry(p).or_insert(0u64) += 1;
    }
    counts.values().map(|&m| (1..=m).product::<u64>()).product()
}

#[test]
fn expand_examples() {
    assert_eq!(stdout(&["expand", "--basis", "type1", "--comp", "2,1"]), "M[2,1] + 1/3 M[3]\n");
    assert_eq!(stdout(&["expand", "--basis", "combinatorial", "--comp", "1,2"]), "M[1,2]\n");
    assert_eq!(stdout(&["expand", "--basis", "type2", "--comp", "1,1", "--shuffle"]), "M[1,1] + 1/2 M[2]\n");
    assert_eq!(stdout(&["expand", "--basis", "type2", "--comp", "1,1"]), "2 M[1,1] + M[2]\n");
}

#[test]
fn expand_then_convert_recovers_the_index() {
    for basis in BASES {
        for parts in compositions_up_to(6) {
            let label: Vec<String> = parts.iter().map(u32::to_string).collect();
            let label = label.join(",");
            let x = stdout(&["expand", "--basis", basis, "--comp", &label, "--shuffle"]);
            let back = stdout(&["convert", "--basis", basis, "--element", x.trim()]);
            assert_eq!(back, format!("{basis}[{label}]\n"), "{basis} at {label}");
            if parts.len() == 3 {
                let p = stdout(&["expand", "--basis", basis, "--comp", &label]);
                let back = stdout(&["convert", "--basis", basis, "--element", p.trim()]);
                let a = aut(&parts);
                let expected = if a == 1 { format!("{basis}[{label}]\n") } else { format!("{a} {basis}[{label}]\n") };
                assert_eq!(back, expected, "{basis} at {label}");
            }
        }
    }
}

#[test]
fn json_element_round_trip() {
    let json = stdout(&["expand", "--basis", "type1", "--comp", "2,1", "--format", "json"]);
    assert_eq!(json, "{\"basis\":\"M\",\"terms\":[{\"comp\":[2,1],\"coef\":\"1\"},{\"comp\":[3],\"coef\":\"1/3\"}]}\n");
    assert_eq!(stdout(&["convert", "--basis", "type1", "--element", json.trim()]), "type1[2,1]\n");
}

#[test]
fn table_is_unitriangular() {
    for n in 1..=5usize {
        let csv = stdout(&["table", "--basis", "even-odd", "--degree", &n.to_string(), "--format", "csv"]);
        let mut reader = csv::Reader::from_reader(csv.as_bytes());
        let header = reader.headers().unwrap().clone();
        assert_eq!(header.len(), (1 << (n - 1)) + 1);
        let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
        assert_eq!(rows.len(), 1 << (n - 1));
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(&row[0], &header[i + 1]);
            assert_eq!(&row[i + 1], "1");
            assert!((1..=i).all(|j| &row[j] == "0"), "row {i} of degree {n}");
        }
    }
}

#[test]
fn output_is_deterministic() {
    let args = ["table", "--basis", "type1", "--degree", "5", "--inverse", "--format", "json"];
    assert_eq!(qsym(&args).stdout, qsym(&args).stdout);
    let args = ["verify", "--suite", "integrality", "--basis", "type2", "--degree", "5"];
    assert_eq!(qsym(&args).stdout, qsym(&args).stdout);
}

#[test]
fn verification_exit_codes() {
    let ok = qsym(&["verify", "--suite", "qps", "--basis", "type2", "--degree", "6"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).starts_with("PASS qps"));
    let bad = qsym(&["verify", "--suite", "integrality", "--basis", "type1", "--degree", "5"]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stdout).contains("P_1,2 has coefficient 2/3 at M_3"));
    for suite in ["shuffle-character", "antipode", "theta-eigen", "fg-roundtrip"] {
        let out = qsym(&["verify", "--suite", suite, "--basis", "combinatorial", "--degree", "5"]);
        assert_eq!(out.status.code(), Some(0), "{suite}");
    }
}

#[test]
fn usage_errors_exit_one() {
    for args in [
        &["expand", "--basis", "unknown", "--comp", "1"][..],
        &["expand", "--basis", "type1", "--comp", "1,0"],
        &["table", "--basis", "type1", "--degree", "11"],
        &["verify", "--suite", "nope"],
        &["convert", "--basis", "type1", "--element", "M[1] + X[2]"],
        &["demo-graph", "--graph", "2; 1-3"],
        &["demo-poset", "--poset", "2; 1<2,2<1"],
        &["expand", "--basis", "order:2,1", "--comp", "3"],
    ] {
        let out = qsym(args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
    let out = qsym(&["expand", "--basis", "unknown", "--comp", "1"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("type1, type2"));
}

#[test]
fn demos_print_both_sides() {
    let g = stdout(&["demo-graph", "--graph", "3; 1-2,2-3,1-3"]);
    assert!(g.contains("χ_G(k) = k^3 - 3k^2 + 2k"));
    assert!(g.contains("ξ(G) = 2\n[k]χ_G = 2\nPASS"));
    let p = stdout(&["demo-poset", "--poset", "2; ", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&p).unwrap();
    assert_eq!(v["eta_of_k_p"], "0");
    assert_eq!(v["agree"], true);
}

#[test]
fn universal_maps() {
    assert_eq!(stdout(&["phi", "--element", "M[2,1] - M[3]"]), "M[2,1] - M[3]\n");
    assert_eq!(stdout(&["phi", "--poset", "2; 1<2"]), "M[1,1] + M[2]\n");
    assert_eq!(stdout(&["exp", "--degree", "2"]), "M*[-] + M*[1] - 1/2 M*[1,1] + 2 M*[2]\n");
    assert_eq!(stdout(&["theta", "--comp", "1"]), "2 M[1]\n");
}

#[test]
fn out_flag_writes_a_file() {
    let dir = std::env::temp_dir().join(format!("qsym-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("table.csv");
    let out = qsym(&["table", "--basis", "type2", "--degree", "3", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    assert!(std::fs::read_to_string(&path).unwrap().starts_with(",\"1,1,1\""));
    std::fs::remove_dir_all(&dir).unwrap();
}
