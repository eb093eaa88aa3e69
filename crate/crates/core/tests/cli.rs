//! The `hfc` command line, driven in-process: exit codes, golden output,
//! and JSON output checked against the shipped schema.

use std::path::{Path, PathBuf};

use hodge_filtered::cli::{run, CliOutput, PRECISION_ENV};
use hodge_filtered::io::{descriptor_from_value, descriptor_to_value};
use serde_json::Value;

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn fixture(name: &str) -> String {
    root()
        .join("fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn hfc(args: &[&str]) -> CliOutput {
    run(std::iter::once("hfc").chain(args.iter().copied()))
}

fn json_of(args: &[&str]) -> Value {
    let out = hfc(args);
    assert_eq!(out.code, 0, "{args:?}: {}", out.stderr);
    serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("{args:?}: {e}\n{}", out.stdout))
}

// --- a small validator for the subset of JSON Schema the output schema uses ---

struct Schema {
    root: Value,
}

impl Schema {
    fn load(path: &Path) -> Schema {
        let text = std::fs::read_to_string(path).unwrap();
        Schema {
            root: serde_json::from_str(&text).unwrap(),
        }
    }

    fn validate(&self, v: &Value) -> Result<(), String> {
        self.check(&self.root, v, "$")
    }

    fn resolve<'a>(&'a self, r: &str) -> &'a Value {
        let path = r.strip_prefix("#/").expect("local references only");
        path.split('/').fold(&self.root, |node, key| &node[key])
    }

    fn check(&self, s: &Value, v: &Value, at: &str) -> Result<(), String> {
        if let Some(r) = s.get("$ref").and_then(Value::as_str) {
            self.check(self.resolve(r), v, at)?;
        }
        if let Some(t) = s.get("type") {
            let allowed: Vec<&str> = match t {
                Value::String(t) => vec![t.as_str()],
                Value::Array(ts) => ts.iter().filter_map(Value::as_str).collect(),
                _ => panic!("bad type keyword"),
            };
            if !allowed.iter().any(|t| type_matches(t, v)) {
                return Err(format!("{at}: expected {allowed:?}, got {v}"));
            }
        }
        if let Some(c) = s.get("const") {
            if c != v {
                return Err(format!("{at}: expected constant {c}, got {v}"));
            }
        }
        if let Some(e) = s.get("enum").and_then(Value::as_array) {
            if !e.contains(v) {
                return Err(format!("{at}: {v} not in {e:?}"));
            }
        }
        if let (Some(m), Some(x)) = (s.get("minimum").and_then(Value::as_f64), v.as_f64()) {
            if x < m {
                return Err(format!("{at}: {x} below minimum {m}"));
            }
        }
        if let (Some(p), Some(text)) = (s.get("pattern").and_then(Value::as_str), v.as_str()) {
            if !pattern_matches(p, text) {
                return Err(format!("{at}: `{text}` does not match {p}"));
            }
        }
        if let Some(obj) = v.as_object() {
            if let Some(req) = s.get("required").and_then(Value::as_array) {
                for k in req.iter().filter_map(Value::as_str) {
                    if !obj.contains_key(k) {
                        return Err(format!("{at}: missing `{k}`"));
                    }
                }
            }
            let props = s.get("properties").and_then(Value::as_object);
            for (k, x) in obj {
                match props.and_then(|p| p.get(k)) {
                    Some(sub) => self.check(sub, x, &format!("{at}.{k}"))?,
                    None => match s.get("additionalProperties") {
                        Some(Value::Bool(false)) => {
                            return Err(format!("{at}: unexpected property `{k}`"))
                        }
                        Some(sub @ Value::Object(_)) => self.check(sub, x, &format!("{at}.{k}"))?,
                        _ => {}
                    },
                }
            }
        }
        if let Some(items) = v.as_array() {
            if let Some(m) = s.get("minItems").and_then(Value::as_u64) {
                if (items.len() as u64) < m {
                    return Err(format!("{at}: fewer than {m} items"));
                }
            }
            if let Some(m) = s.get("maxItems").and_then(Value::as_u64) {
                if (items.len() as u64) > m {
                    return Err(format!("{at}: more than {m} items"));
                }
            }
            if let Some(sub) = s.get("items") {
                for (i, x) in items.iter().enumerate() {
                    self.check(sub, x, &format!("{at}[{i}]"))?;
                }
            }
        }
        if let Some(alts) = s.get("oneOf").and_then(Value::as_array) {
            let passing = alts.iter().filter(|a| self.check(a, v, at).is_ok()).count();
            if passing != 1 {
                return Err(format!(
                    "{at}: {passing} of {} alternatives match",
                    alts.len()
                ));
            }
        }
        Ok(())
    }
}

fn type_matches(t: &str, v: &Value) -> bool {
    match t {
        "null" => v.is_null(),
        "boolean" => v.is_boolean(),
        "integer" => v.is_i64() || v.is_u64(),
        "number" => v.is_number(),
        "string" => v.is_string(),
        "array" => v.is_array(),
        "object" => v.is_object(),
        other => panic!("unknown type {other}"),
    }
}

/// Anchored patterns built from literals, `\.`, `[0-9]` and the quantifiers
/// `?`, `+`, `*`: enough for the decimal-string patterns in the schema.
fn pattern_matches(pattern: &str, text: &str) -> bool {
    #[derive(Clone, Copy)]
    enum Atom {
        Char(char),
        Digit,
    }
    let body = pattern
        .strip_prefix('^')
        .and_then(|p| p.strip_suffix('$'))
        .expect("anchored pattern");
    let mut atoms: Vec<(Atom, usize, usize)> = Vec::new();
    let mut chars = body.chars().peekable();
    while let Some(c) = chars.next() {
        let atom = match c {
            '\\' => Atom::Char(chars.next().unwrap()),
            '[' => {
                let class: String = chars.by_ref().take_while(|&c| c != ']').collect();
                assert_eq!(class, "0-9", "unsupported class");
                Atom::Digit
            }
            c => Atom::Char(c),
        };
        let (lo, hi) = match chars.peek() {
            Some('?') => (0, 1),
            Some('+') => (1, usize::MAX),
            Some('*') => (0, usize::MAX),
            _ => (1, 1),
        };
        if (lo, hi) != (1, 1) {
            chars.next();
        }
        atoms.push((atom, lo, hi));
    }
    fn go(atoms: &[(Atom, usize, usize)], text: &[char]) -> bool {
        let Some(&(atom, lo, hi)) = atoms.first() else {
            return text.is_empty();
        };
        let hit = |c: char| match atom {
            Atom::Char(a) => a == c,
            Atom::Digit => c.is_ascii_digit(),
        };
        let run = text.iter().take_while(|&&c| hit(c)).count().min(hi);
        (lo..=run).rev().any(|k| go(&atoms[1..], &text[k..]))
    }
    let text: Vec<char> = text.chars().collect();
    go(&atoms, &text)
}

fn schema() -> Schema {
    Schema::load(&root().join("schema/hfc-output.schema.json"))
}

#[test]
fn pattern_subset_behaves() {
    assert!(pattern_matches(r"^-?[0-9]+\.[0-9]+$", "-1.25"));
    assert!(pattern_matches(r"^-?[0-9]+\.[0-9]+$", "0.5"));
    assert!(!pattern_matches(r"^-?[0-9]+\.[0-9]+$", "1."));
    assert!(!pattern_matches(r"^[0-9]+$", "12a"));
    assert!(!pattern_matches(r"^[0-9]+$", ""));
}

#[test]
fn every_json_output_validates() {
    let s = schema();
    let p1 = fixture("P1.json");
    let p2 = fixture("P2.json");
    let c1 = fixture("C1.json");
    let cases: Vec<Vec<&str>> = vec![
        vec![
            "compute", "--space", &p2, "--theory", "MU", "--n", "4", "--p", "2", "--format", "json",
        ],
        vec![
            "compute", "--space", &c1, "--theory", "HQ", "--n", "1", "--p", "1", "--format", "json",
        ],
        vec![
            "compute", "--space", "Gm", "--theory", "MU", "--n", "1", "--p", "1", "--format",
            "json",
        ],
        vec![
            "point-table",
            "--theory",
            "HZ",
            "--n-range=-3..3",
            "--p-range=-1..2",
            "--format",
            "json",
        ],
        vec![
            "check",
            "splitting",
            "--space",
            &c1,
            "--n",
            "2",
            "--p",
            "1",
            "--format",
            "json",
        ],
        vec![
            "check", "mv", "--space", &p1, "--u", "A1", "--v", "A1", "--w", "Gm", "--theory", "MU",
            "--p", "1", "--format", "json",
        ],
        vec![
            "check", "a1", "--space", "Gm", "--theory", "MU", "--n", "1", "--p", "1", "--format",
            "json",
        ],
        vec![
            "check", "pbf", "--space", &p1, "--r", "2", "--theory", "MU", "--n", "2", "--p", "1",
            "--format", "json",
        ],
        vec![
            "check",
            "grothendieck",
            "--space",
            &p2,
            "--r",
            "2",
            "--chern",
            "xi",
            "--chern",
            "0",
            "--format",
            "json",
        ],
        vec![
            "check",
            "transfer",
            "--space",
            &p2,
            "--class",
            "xi",
            "--divisor",
            &p1,
            "--theory",
            "MU",
            "--format",
            "json",
        ],
        vec![
            "aj",
            "--g2",
            "0",
            "--g3",
            "8",
            "--divisor",
            "(3,10):1;inf:-1",
            "--format",
            "json",
        ],
    ];
    for args in &cases {
        let v = json_of(args);
        if let Err(e) = s.validate(&v) {
            panic!("{args:?}: {e}\n{v:#}");
        }
    }
}

#[test]
fn schema_rejects_malformed_output() {
    let s = schema();
    let mut v = json_of(&[
        "compute", "--space", "P1", "--theory", "MU", "--n", "2", "--p", "1", "--format", "json",
    ]);
    assert!(s.validate(&v).is_ok());
    v["group"]["free_rank"] = Value::from(-1);
    assert!(s.validate(&v).is_err());
    v["group"]["free_rank"] = Value::from(1);
    v["group"]["extra"] = Value::from(0);
    assert!(s.validate(&v).is_err());
    v["group"].as_object_mut().unwrap().remove("extra");
    v["command"] = Value::from("nope");
    assert!(s.validate(&v).is_err());
}

#[test]
fn golden_outputs_are_reproduced() {
    let golden =
        |name: &str| std::fs::read_to_string(root().join("fixtures/golden").join(name)).unwrap();
    let p2 = fixture("P2.json");
    let c1 = fixture("C1.json");
    let c1p1 = fixture("C1xP1.json");
    let cases: Vec<(&str, Vec<&str>)> = vec![
        (
            "point_table_mu.txt",
            vec![
                "point-table",
                "--theory",
                "MU",
                "--n-range=-12..12",
                "--p-range=-6..6",
            ],
        ),
        (
            "compute_p2_mu_4_2.txt",
            vec![
                "compute", "--space", &p2, "--theory", "MU", "--n", "4", "--p", "2",
            ],
        ),
        (
            "compute_c1_hz_2_1.txt",
            vec![
                "compute", "--space", &c1, "--theory", "HZ", "--n", "2", "--p", "1",
            ],
        ),
        (
            "compute_c1xp1_mu_3_2.json",
            vec![
                "compute", "--space", &c1p1, "--theory", "MU", "--n", "3", "--p", "2", "--format",
                "json",
            ],
        ),
    ];
    for (name, args) in cases {
        let first = hfc(&args);
        let second = hfc(&args);
        assert_eq!(first.code, 0, "{name}: {}", first.stderr);
        assert_eq!(first, second, "{name}: output differs between runs");
        assert_eq!(first.stdout, golden(name), "{name}");
    }
}

#[test]
fn builtin_names_and_files_agree() {
    for name in ["P1", "P2", "C1"] {
        let file = fixture(&format!("{name}.json"));
        for (n, p) in [(0, 0), (1, 1), (2, 1), (3, 2)] {
            let (n, p) = (n.to_string(), p.to_string());
            let a = hfc(&[
                "compute", "--space", name, "--theory", "MU", "--n", &n, "--p", &p,
            ]);
            let b = hfc(&[
                "compute", "--space", &file, "--theory", "MU", "--n", &n, "--p", &p,
            ]);
            assert_eq!(a, b);
        }
        let described = hfc(&["describe", "--space", name]);
        assert_eq!(described.stdout, std::fs::read_to_string(&file).unwrap());
    }
}

#[test]
fn descriptors_round_trip_through_json() {
    for (space, n, p) in [
        ("C1", "2", "1"),
        ("Gm", "1", "1"),
        ("pt", "-3", "1"),
        ("P2", "4", "2"),
    ] {
        let v = json_of(&[
            "compute", "--space", space, "--theory", "MU", "--n", n, "--p", p, "--format", "json",
        ]);
        let d = descriptor_from_value(&v["group"]).unwrap();
        assert_eq!(descriptor_to_value(&d), v["group"]);
    }
    let bad = serde_json::json!({
        "field": "integral", "free_rank": 0, "torsion": ["1"], "circle_rank": 0,
        "real_rank": 0, "complex_torus_dim": null, "exactness": "exact"
    });
    assert!(descriptor_from_value(&bad).is_err());
}

#[test]
fn exit_codes() {
    let ok = hfc(&[
        "compute", "--space", "pt", "--theory", "HZ", "--n", "0", "--p", "0",
    ]);
    assert_eq!(ok.code, 0);
    assert!(ok.stdout.starts_with("HZ_D^0(0)(pt) = "), "{}", ok.stdout);

    // usage errors
    for args in [
        vec![
            "compute", "--space", "pt", "--theory", "XYZ", "--n", "0", "--p", "0",
        ],
        vec![
            "compute", "--space", "Q7", "--theory", "MU", "--n", "0", "--p", "0",
        ],
        vec![
            "compute", "--space", "pt", "--theory", "MU", "--n", "zero", "--p", "0",
        ],
        vec![
            "point-table",
            "--theory",
            "MU",
            "--n-range=3..1",
            "--p-range=0..1",
        ],
        vec!["aj", "--g2", "0", "--g3", "8", "--divisor", "(3,10:1"],
        vec!["frobnicate"],
    ] {
        let out = hfc(&args);
        assert_eq!(out.code, 2, "{args:?}: {}", out.stderr);
        assert!(out.stdout.is_empty());
        assert!(!out.stderr.is_empty());
    }

    // domain errors and failed checks
    let gm = hfc(&[
        "compute",
        "--space",
        "Gm",
        "--theory",
        "MU",
        "--n",
        "1",
        "--p",
        "1",
        "--variant",
        "analytic",
    ]);
    assert_eq!(gm.code, 1, "{}", gm.stderr);
    let singular = hfc(&[
        "aj",
        "--g2",
        "3",
        "--g3",
        "1",
        "--divisor",
        "(1,0):1;inf:-1",
    ]);
    assert_eq!(singular.code, 1, "{}", singular.stderr);
    let degree = hfc(&["aj", "--g2", "0", "--g3", "8", "--divisor", "(3,10):1"]);
    assert_eq!(degree.code, 1, "{}", degree.stderr);
    let p1 = fixture("P1.json");
    let unbalanced = hfc(&[
        "check", "mv", "--space", &p1, "--u", "A1", "--v", "A1", "--w", "pt", "--theory", "MU",
        "--p", "1",
    ]);
    assert_eq!(unbalanced.code, 1);
    assert!(
        unbalanced.stdout.contains("check mv: FAIL"),
        "{}",
        unbalanced.stdout
    );

    let missing = hfc(&[
        "compute",
        "--space",
        "/nonexistent/space.json",
        "--theory",
        "MU",
        "--n",
        "0",
        "--p",
        "0",
    ]);
    assert_ne!(missing.code, 0);
}

#[test]
fn precision_variable_is_honoured() {
    // the only test touching the variable, so no other test races with it
    let args = [
        "aj",
        "--g2",
        "0",
        "--g3",
        "8",
        "--divisor",
        "(3,10):1;inf:-1",
    ];
    std::env::set_var(PRECISION_ENV, "20");
    let low = hfc(&args);
    std::env::set_var(PRECISION_ENV, "not-a-number");
    let bad = hfc(&args);
    std::env::remove_var(PRECISION_ENV);
    let default = hfc(&args);
    assert_eq!(low.code, 0, "{}", low.stderr);
    assert_eq!(bad.code, 2);
    assert_eq!(default.code, 0);
    assert!(
        default.stdout.len() > low.stdout.len(),
        "{}\n{}",
        low.stdout,
        default.stdout
    );
}

#[test]
fn help_goes_to_stdout() {
    let out = hfc(&["--help"]);
    assert_eq!(out.code, 0);
    for sub in ["compute", "point-table", "check", "aj", "describe"] {
        assert!(out.stdout.contains(sub), "{}", out.stdout);
    }
}
