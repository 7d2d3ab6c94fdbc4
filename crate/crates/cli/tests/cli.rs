use std::process::{Command, Output};

use sticks::report::{from_json, ConstantsReport, Report, VerifyReport};
use sticks::ExactProb;

fn sticks(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sticks"))
        .args(args)
        .env_remove("STICKS_WORKERS")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn report(args: &[&str]) -> Report {
    let out = sticks(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    from_json(&stdout(&out)).unwrap()
}

fn exact(r: &Report) -> ExactProb {
    r.result.as_ref().expect("exact block").prob().unwrap()
}

#[test]
fn compute_triangle_four_sticks() {
    let r = report(&["compute", "pn", "--model", "pickup", "--p", "2", "--n", "4"]);
    let result = r.result.as_ref().unwrap();
    assert_eq!(
        (result.exact.num.as_str(), result.exact.den.as_str()),
        ("1", "6")
    );
    assert!(!result.vacuous);
    assert_eq!(r.schema_version, 1);
    assert_eq!(r.command, "compute");
    assert_eq!((r.inputs.p, r.inputs.n), (2, Some(4)));
    assert!(r.mc.is_none());
}

#[test]
fn compute_random_subset() {
    let r = report(&["compute", "pr", "--p", "2"]);
    assert_eq!(exact(&r), ExactProb::from_ratio(1, 2).unwrap());
}

#[test]
fn compute_models() {
    let cases: &[(&[&str], (i64, i64))] = &[
        (
            &["compute", "pn", "--model", "broken", "--p", "2", "--n", "3"],
            (3, 4),
        ),
        (
            &["compute", "pn", "--model", "broken", "--p", "2", "--n", "4"],
            (3, 7),
        ),
        (
            &[
                "compute",
                "pn",
                "--model",
                "exponential",
                "--p",
                "2",
                "--n",
                "4",
            ],
            (3, 7),
        ),
        (
            &[
                "compute",
                "pn",
                "--model",
                "truncated",
                "--a",
                "1/4",
                "--p",
                "2",
                "--n",
                "3",
            ],
            (4, 27),
        ),
        (&["compute", "pa", "--p", "2", "--n", "5"], (1, 8)),
        (&["compute", "pr", "--p", "4"], (23, 24)),
    ];
    for (args, (num, den)) in cases {
        assert_eq!(
            exact(&report(args)),
            ExactProb::from_ratio(*num, *den).unwrap(),
            "{args:?}"
        );
    }
}

#[test]
fn vacuous_case_is_flagged() {
    let r = report(&["compute", "pn", "--p", "3", "--n", "3"]);
    let result = r.result.unwrap();
    assert!(result.vacuous);
    assert_eq!(result.exact.num, "1");
}

#[test]
fn truncation_echoed_in_inputs() {
    let r = report(&[
        "compute",
        "pn",
        "--model",
        "truncated",
        "--a",
        "2/20",
        "--p",
        "2",
        "--n",
        "3",
    ]);
    assert_eq!(
        r.inputs.extra_params.get("a").map(String::as_str),
        Some("1/10")
    );
    assert_eq!(exact(&r), ExactProb::from_ratio(256, 729).unwrap());
}

#[test]
fn decimal_digits() {
    let r = report(&["compute", "pn", "--p", "2", "--n", "4", "--digits", "5"]);
    assert_eq!(r.result.unwrap().decimal, "0.16667");
}

#[test]
fn json_round_trip_is_stable() {
    let out = sticks(&["compute", "pn", "--p", "3", "--n", "7"]);
    let text = stdout(&out);
    let r: Report = from_json(&text).unwrap();
    assert_eq!(sticks::report::to_json(&r), text.trim_end());
}

#[test]
fn table_csv() {
    let out = sticks(&[
        "table", "pn", "--model", "pickup", "--p", "2:4", "--n", "3:10", "--output", "csv",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let header: Vec<String> = reader
        .headers()
        .unwrap()
        .iter()
        .map(str::to_owned)
        .collect();
    assert_eq!(
        header,
        ["problem", "model", "p", "n", "exact", "decimal", "vacuous"]
    );
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 3 * 8);
    for row in &rows {
        let p: usize = row[2].parse().unwrap();
        let n: usize = row[3].parse().unwrap();
        let want = sticks::closed_form::pn_pickup(p, n).unwrap();
        assert_eq!(&row[4], want.to_string(), "p={p} n={n}");
        assert_eq!(&row[6], (n <= p).to_string());
    }
    assert_eq!(&rows[1][4], "1/6");
}

#[test]
fn table_without_decimal_column() {
    let out = sticks(&["table", "pn", "--p", "2", "--n", "3:4", "--no-decimal"]);
    assert_eq!(
        stdout(&out),
        "problem,model,p,n,exact,vacuous\npn,pickup,2,3,1/2,false\npn,pickup,2,4,1/6,false\n"
    );
}

#[test]
fn table_json_parses_back() {
    let out = sticks(&["table", "pr", "--p", "2:5", "--output", "json"]);
    assert!(out.status.success());
    let reports: Vec<Report> = from_json(&stdout(&out)).unwrap();
    assert_eq!(reports.len(), 4);
    assert_eq!(exact(&reports[1]), ExactProb::from_ratio(5, 6).unwrap());
}

#[test]
fn simulate_embeds_exact_value_and_z_score() {
    let r = report(&[
        "simulate",
        "pn",
        "--p",
        "2",
        "--n",
        "4",
        "--trials",
        "200000",
        "--seed",
        "9",
        "--workers",
        "2",
    ]);
    let mc = r.mc.as_ref().unwrap();
    assert_eq!((mc.trials, mc.seed, mc.workers), (200_000, 9, 2));
    assert_eq!(exact(&r), ExactProb::from_ratio(1, 6).unwrap());
    let z = mc.z_vs_exact.unwrap();
    assert!(z.abs() <= 4.0, "z = {z}");
}

#[test]
fn simulate_is_deterministic_across_workers() {
    let args = |w: &'static str| {
        [
            "simulate",
            "pa",
            "--p",
            "3",
            "--n",
            "5",
            "--trials",
            "50000",
            "--workers",
            w,
        ]
    };
    let a = report(&args("1"));
    let b = report(&args("3"));
    assert_eq!(
        a.mc.as_ref().unwrap().successes,
        b.mc.as_ref().unwrap().successes
    );
}

#[test]
fn simulate_without_closed_form() {
    let r = report(&[
        "simulate", "pa", "--p", "4", "--n", "6", "--trials", "20000",
    ]);
    assert!(r.result.is_none());
    assert!(r.mc.unwrap().z_vs_exact.is_none());
}

#[test]
fn workers_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_sticks"))
        .args(["simulate", "pn", "--p", "2", "--n", "3", "--trials", "1000"])
        .env("STICKS_WORKERS", "3")
        .output()
        .unwrap();
    let r: Report = from_json(&stdout(&out)).unwrap();
    assert_eq!(r.mc.unwrap().workers, 3);

    let bad = Command::new(env!("CARGO_BIN_EXE_sticks"))
        .args(["simulate", "pn", "--p", "2", "--n", "3", "--trials", "1000"])
        .env("STICKS_WORKERS", "lots")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_2() {
    let cases: &[&[&str]] = &[
        &["compute", "pn", "--p", "2", "--n", "4", "--trials", "10"],
        &["compute", "pn", "--p", "2", "--n", "4", "--a", "1/2"],
        &[
            "compute",
            "pn",
            "--p",
            "2",
            "--n",
            "4",
            "--model",
            "truncated",
        ],
        &["compute", "pn", "--p", "2"],
        &["compute", "pr", "--p", "2", "--n", "5"],
        &["compute", "pn", "--p", "1", "--n", "4"],
        &["compute", "pn", "--p", "2", "--n", "x"],
        &[
            "compute",
            "pn",
            "--model",
            "truncated",
            "--a",
            "1/0",
            "--p",
            "2",
            "--n",
            "3",
        ],
        &[
            "compute",
            "pn",
            "--model",
            "truncated",
            "--a",
            "3/2",
            "--p",
            "2",
            "--n",
            "3",
        ],
        &["compute", "pq", "--p", "2", "--n", "4"],
        &["simulate", "pn", "--p", "2", "--n", "4", "--rate", "2"],
        &["simulate", "pn", "--p", "2", "--n", "4", "--workers", "0"],
        &["simulate", "pr", "--p", "3", "--n", "3", "--trials", "10"],
        &["table", "pn", "--p", "4:2", "--n", "3:5"],
        &[
            "constants",
            "m",
            "--p",
            "2",
            "--n",
            "5",
            "--model",
            "broken",
        ],
        &[
            "constants",
            "emax",
            "--p",
            "2",
            "--n",
            "5",
            "--model",
            "truncated",
        ],
        &["verify", "--suite", "nonsense"],
        &["frobnicate"],
    ];
    for args in cases {
        let out = sticks(args);
        assert_eq!(
            out.status.code(),
            Some(2),
            "{args:?}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        assert!(out.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn unsupported_closed_form_exits_3_and_names_fallback() {
    for args in [
        &["compute", "pa", "--p", "4", "--n", "6"][..],
        &["compute", "pa", "--model", "broken", "--p", "2", "--n", "4"],
        &["table", "pa", "--p", "2:4", "--n", "5"],
    ] {
        let out = sticks(args);
        assert_eq!(out.status.code(), Some(3), "{args:?}");
        let err = String::from_utf8_lossy(&out.stderr);
        assert!(
            err.contains("Monte Carlo") || err.contains("simulate"),
            "{err}"
        );
    }
}

#[test]
fn oversized_table_is_a_resource_error() {
    let out = sticks(&["table", "pn", "--p", "2:200", "--n", "3:200"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn constants_json() {
    let parse = |args: &[&str]| -> ConstantsReport { from_json(&stdout(&sticks(args))).unwrap() };
    let values = |r: &ConstantsReport| r.values.iter().map(|e| e.value.clone()).collect::<Vec<_>>();

    let fib = parse(&["constants", "fib", "--p", "3", "--n", "6"]);
    assert_eq!(fib.values[0].index, -1);
    assert_eq!(values(&fib), ["0", "0", "1", "1", "2", "4", "7", "13"]);
    assert_eq!(
        values(&parse(&["constants", "m", "--p", "3", "--n", "5"])),
        ["5", "4", "2", "1", "1"]
    );
    assert_eq!(
        values(&parse(&["constants", "s", "--p", "2", "--n", "4"])),
        ["7", "4", "2"]
    );

    let emax = parse(&["constants", "emax", "--p", "2", "--n", "5"]);
    assert_eq!(emax.model.as_deref(), Some("pickup"));
    assert_eq!(values(&emax), ["5", "3", "2", "1"]);
    assert_eq!(emax.values[2].display.as_deref(), Some("(1 - (l_2)) / 2"));
}

#[test]
fn verify_reports_every_check_by_name() {
    let out = sticks(&[
        "verify",
        "--suite",
        "all",
        "--trials",
        "20000",
        "--workers",
        "2",
    ]);
    let r: VerifyReport = from_json(&stdout(&out)).unwrap();
    assert_eq!(out.status.code(), Some(0), "{r:?}");
    assert!(r.passed);
    let names: Vec<&str> = r.checks.iter().map(|c| c.name.as_str()).collect();
    assert_eq!(
        names,
        sticks::verify::check_names(sticks::verify::Suite::All)
    );
    assert!(r.checks.iter().all(|c| c.cases > 0));

    let out = sticks(&["verify", "--suite", "oracle"]);
    let r: VerifyReport = from_json(&stdout(&out)).unwrap();
    assert!(r.checks.iter().all(|c| c.suite == "oracle"));
}
