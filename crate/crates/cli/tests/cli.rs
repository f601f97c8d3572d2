use patcount_cli::{run, Outcome, EXIT_FAIL, EXIT_OK, EXIT_USAGE};
use serde_json::Value;

fn call(args: &[&str]) -> Outcome {
    run(std::iter::once("patcount").chain(args.iter().copied()))
}

fn json(args: &[&str]) -> Value {
    let out = call(args);
    assert_eq!(out.code, EXIT_OK, "{args:?}: {}", out.stderr);
    serde_json::from_str(&out.stdout).expect("valid json")
}

fn fixture(name: &str) -> String {
    format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn count_examples() {
    let v = json(&[
        "count",
        "--n",
        "8",
        "--avoid",
        "123,132",
        "--pattern",
        "321",
        "--method",
        "formula",
    ]);
    assert_eq!(v["value"], "4801");
    assert_eq!(v["canonical"]["class"], "D1");
    assert_eq!(v["n"], "8");
    let v = json(&[
        "count",
        "--n",
        "5",
        "--avoid",
        "123,321",
        "--pattern",
        "213",
    ]);
    assert_eq!(v["value"], "0");
    assert_eq!(v["canonical"]["class"], "D6");
}

#[test]
fn methods_agree() {
    let cases: &[(&str, &str, &[&str])] = &[
        (
            "123,132,213",
            "312",
            &["formula", "structural", "oracle", "gf", "sum"],
        ),
        (
            "123,132",
            "213",
            &["formula", "structural", "oracle", "sum"],
        ),
        (
            "132,321",
            "213",
            &["formula", "structural", "oracle", "sum"],
        ),
        (
            "132,312",
            "123",
            &["formula", "structural", "oracle", "sum"],
        ),
        // A symmetric image of (123,132); the canonical cell is echoed.
        ("321,312", "123", &["formula", "structural", "oracle"]),
        (
            "231,312,321",
            "123",
            &["formula", "structural", "oracle", "gf"],
        ),
    ];
    for (avoid, q, methods) in cases {
        for n in ["3", "6", "9"] {
            let values: Vec<Value> = methods
                .iter()
                .map(|m| {
                    json(&[
                        "count",
                        "--n",
                        n,
                        "--avoid",
                        avoid,
                        "--pattern",
                        q,
                        "--method",
                        m,
                    ])["value"]
                        .clone()
                })
                .collect();
            assert!(
                values.windows(2).all(|w| w[0] == w[1]),
                "{avoid} {q} n={n}: {values:?}"
            );
        }
    }
}

#[test]
fn transported_counts_echo_the_canonical_cell() {
    let v = json(&[
        "count",
        "--n",
        "6",
        "--avoid",
        "321,312",
        "--pattern",
        "123",
    ]);
    assert_eq!(v["canonical"]["class"], "D1");
    assert_eq!(v["canonical"]["pattern"], "321");
    assert_eq!(v["value"], "369");
}

#[test]
fn longer_patterns_use_oracle_or_structural() {
    let a = json(&[
        "count",
        "--n",
        "7",
        "--avoid",
        "132,231",
        "--pattern",
        "1234",
        "--method",
        "oracle",
    ]);
    let b = json(&[
        "count",
        "--n",
        "7",
        "--avoid",
        "132,231",
        "--pattern",
        "1234",
        "--method",
        "structural",
    ]);
    assert_eq!(a["value"], b["value"]);
    let out = call(&[
        "count",
        "--n",
        "7",
        "--avoid",
        "132,231",
        "--pattern",
        "1234",
    ]);
    assert_eq!(out.code, EXIT_USAGE);
}

#[test]
fn enumerate_both_ways() {
    let s = json(&[
        "enumerate",
        "--n",
        "3",
        "--avoid",
        "123,132",
        "--method",
        "filter",
    ]);
    assert_eq!(
        s["permutations"],
        serde_json::json!(["2 1 3", "2 3 1", "3 1 2", "3 2 1"])
    );
    let t = json(&["enumerate", "--n", "5", "--avoid", "123,132,231"]);
    assert_eq!(t["count"], "5");
    let mut a: Vec<String> = serde_json::from_value(
        json(&["enumerate", "--n", "7", "--avoid", "132,321"])["permutations"].clone(),
    )
    .unwrap();
    let mut b: Vec<String> = serde_json::from_value(
        json(&[
            "enumerate",
            "--n",
            "7",
            "--avoid",
            "132,321",
            "--method",
            "filter",
        ])["permutations"]
            .clone(),
    )
    .unwrap();
    a.sort();
    b.sort();
    assert_eq!(a, b);
    assert_eq!(a.len(), 22);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["count", "--n", "5", "--avoid", "123", "--pattern", "213"][..],
        &[
            "count",
            "--n",
            "5",
            "--avoid",
            "123,124",
            "--pattern",
            "213",
        ],
        &["count", "--n", "5", "--avoid", "123,132", "--pattern", "21"],
        &[
            "count",
            "--n",
            "5",
            "--avoid",
            "123,132",
            "--pattern",
            "321",
            "--method",
            "gf",
        ],
        &[
            "count",
            "--n",
            "12",
            "--avoid",
            "123,132",
            "--pattern",
            "321",
            "--method",
            "oracle",
        ],
        &["gf", "--name", "custom", "--num", "x", "--den", "2-x"],
        &["gf", "--name", "custom", "--num", "x^^2", "--den", "1-x"],
        &["gf", "--name", "nope"],
        &[
            "bijection",
            "--name",
            "phi1",
            "--input",
            "1 3 2",
            "--inverse",
        ],
        &[
            "bijection",
            "--name",
            "rho",
            "--input",
            "1 2 3",
            "--occurrence",
            "1,2,3",
        ],
        &["verify", "--max-n", "5", "--classes", "Q9"],
        &["frobnicate"],
    ] {
        let out = call(args);
        assert_eq!(out.code, EXIT_USAGE, "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn gf_expansions() {
    let v = json(&["gf", "--name", "t1_321", "--terms", "8"]);
    let c: Vec<&str> = v["coefficients"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_str().unwrap())
        .collect();
    assert_eq!(c[3..], ["1", "10", "50", "180", "545", "1478"]);
    let v = json(&[
        "gf", "--name", "custom", "--num", "1", "--den", "1-x-x^2", "--terms", "10",
    ]);
    assert_eq!(v["coefficients"][10], "89");
    let v = json(&["gf", "--name", "fib", "--terms", "10"]);
    assert_eq!(v["coefficients"][10], "55");
}

#[test]
fn bijections() {
    let out = |args: &[&str]| json(args)["output"].as_str().unwrap().to_string();
    assert_eq!(
        out(&["bijection", "--name", "phi2", "--input", "3+3+1+2"]),
        "7 8 9 4 5 6 3 1 2"
    );
    assert_eq!(
        out(&[
            "bijection",
            "--name",
            "phi2",
            "--input",
            "7 8 9 4 5 6 3 1 2",
            "--inverse"
        ]),
        "3+3+1+2"
    );
    assert_eq!(
        out(&["bijection", "--name", "phi5", "--input", "2,5", "--n", "7"]),
        "4 5 1 2 3 6 7"
    );
    assert_eq!(
        out(&[
            "bijection",
            "--name",
            "phi5",
            "--input",
            "4 5 1 2 3 6 7",
            "--inverse"
        ]),
        "{2,5}"
    );
    assert_eq!(
        out(&[
            "bijection",
            "--name",
            "phi5",
            "--input",
            "1 2 3",
            "--inverse"
        ]),
        "identity"
    );
    assert_eq!(
        out(&[
            "bijection",
            "--name",
            "psi1",
            "--input",
            "9 7 8 6 4 5 2 3 1",
            "--inverse"
        ]),
        "01001010"
    );
    let v = json(&[
        "bijection",
        "--name",
        "rho",
        "--input",
        "2 1 3",
        "--occurrence",
        "1,2,3",
    ]);
    assert_eq!(v["output"], "1 2 3");
    let v = json(&[
        "bijection",
        "--name",
        "varrho",
        "--input",
        "1 2 3",
        "--occurrence",
        "1,2,3",
        "--inverse",
        "--dot",
    ]);
    assert_eq!(v["output"], "2 3 1");
    assert!(v["dot_output"].as_str().unwrap().starts_with("digraph T {"));
    let v = json(&[
        "bijection",
        "--name",
        "swap",
        "--class",
        "T4",
        "--from",
        "213",
        "--to",
        "231",
        "--input",
        "8 7 6 5 4 9 3 2 1",
        "--occurrence",
        "2,4,6",
    ]);
    assert_eq!(v["output"], "8 7 6 9 5 4 3 2 1");
    let v = json(&[
        "bijection",
        "--name",
        "swap",
        "--class",
        "T4",
        "--from",
        "213",
        "--to",
        "231",
        "--input",
        "8 7 6 9 5 4 3 2 1",
        "--occurrence",
        v["output_occurrence"]
            .as_array()
            .unwrap()
            .iter()
            .map(|x| x.as_str().unwrap())
            .collect::<Vec<_>>()
            .join(",")
            .as_str(),
        "--inverse",
    ]);
    assert_eq!(v["output"], "8 7 6 5 4 9 3 2 1");
    assert_eq!(v["output_occurrence"], serde_json::json!(["2", "4", "6"]));
}

#[test]
fn verify_green_and_csv() {
    let v = json(&["verify", "--max-n", "7"]);
    assert_eq!(v["failures"], serde_json::json!([]));
    assert_eq!(v["cells"].as_array().unwrap().len(), 35 * 6 * 5);
    assert_eq!(v["cells"][0]["n"], "3");
    let out = call(&[
        "verify",
        "--max-n",
        "5",
        "--classes",
        "t1,D5",
        "--format",
        "csv",
        "--canonical-only",
    ]);
    assert_eq!(out.code, EXIT_OK);
    let lines: Vec<&str> = out.stdout.lines().collect();
    assert!(lines[0].starts_with("set,class,word,pattern,n,oracle,structural,closed_form"));
    assert_eq!(lines.len(), 1 + 2 * 6 * 3);
    assert!(lines.iter().skip(1).all(|l| l.contains(",PASS,")));
}

#[test]
fn verify_fixtures() {
    let bad = call(&[
        "verify",
        "--max-n",
        "6",
        "--fixture",
        &fixture("corrupted_d1_321.json"),
    ]);
    assert_eq!(bad.code, EXIT_FAIL);
    assert!(bad
        .stderr
        .contains("FAIL {123,132} pattern 321 n=4 (D1 via id)"));
    let report: Value = serde_json::from_str(&bad.stdout).unwrap();
    assert!(report["failures"]
        .as_array()
        .unwrap()
        .iter()
        .any(|f| f == "{123,132} pattern 321 n=6 (D1 via id)"));
    let good = call(&[
        "verify",
        "--max-n",
        "6",
        "--fixture",
        &fixture("uncorrupted_d1_321.json"),
    ]);
    assert_eq!(good.code, EXIT_OK, "{}", good.stderr);
    let missing = call(&["verify", "--max-n", "6", "--fixture", "/nonexistent.json"]);
    assert_eq!(missing.code, EXIT_USAGE);
}
