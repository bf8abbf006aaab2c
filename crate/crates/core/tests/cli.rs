use std::process::{Command, Output};

use taniguchi::cli::{AuditRow, TableRow};
use taniguchi::counting::{reports_from_csv, CountReport};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_taniguchi"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().unwrap()
}

#[test]
fn table_pretty_golden() {
    let o = run(&["table", "--m", "2..6"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "m      2  3  4  5  6\n#      1  1  3  6  5\nbound  1  1  2  6  4\n"
    );
}

#[test]
fn table_wraps_after_fifteen_columns() {
    let text = stdout(&run(&["table", "--m", "2..20,25"]));
    let blocks: Vec<&str> = text.split("\n\n").collect();
    assert_eq!(blocks.len(), 2);
    assert!(blocks[0].starts_with("m      2  3  4  5  6   7   8   9  10   11   12    13    14    15    16\n"));
    assert!(blocks[1].contains("#      20568  14595  82791  69988  4473950"));
    assert!(blocks[1].contains("bound  20568  14565  82791  69908  4473930"));
}

#[test]
fn table_large_m_is_exact() {
    let rows: Vec<TableRow> =
        serde_json::from_str(&stdout(&run(&["--format", "json", "table", "--m", "50,100"]))).unwrap();
    assert_eq!(rows[0].n, 75059996026770);
    assert_eq!(rows[0].bound, 75059993789510);
    assert_eq!(rows[1].n, 84510040015215368493112090420);
    assert_eq!(rows[1].bound, 84510040015215293433113547040);
}

#[test]
fn table_json_and_csv_round_trip() {
    let expected: Vec<CountReport> = (2..=12).map(|m| CountReport::compute(m).unwrap()).collect();

    let full_json: Vec<CountReport> =
        serde_json::from_str(&stdout(&run(&["--format", "json", "table", "--m", "2..12", "--full"]))).unwrap();
    assert_eq!(full_json, expected);

    let full_csv = reports_from_csv(&stdout(&run(&["--format", "csv", "table", "--m", "2..12", "--full"]))).unwrap();
    assert_eq!(full_csv, expected);

    let short: Vec<TableRow> =
        csv::Reader::from_reader(stdout(&run(&["--format", "csv", "table", "--m", "2..12"])).as_bytes())
            .deserialize()
            .collect::<Result<_, _>>()
            .unwrap();
    assert_eq!(short, expected.iter().map(TableRow::from).collect::<Vec<_>>());
}

#[test]
fn table_rejects_out_of_range_m() {
    assert_eq!(code(&["table", "--m", "1"]), 2);
    assert_eq!(code(&["table", "--m", "126"]), 2);
    assert_eq!(code(&["table", "--m", "9..3"]), 2);
}

#[test]
fn audit_passes_and_round_trips() {
    let o = run(&["--format", "csv", "audit", "--m-max", "10"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = AuditRow::from_csv(&stdout(&o)).unwrap();
    assert_eq!(rows.len(), 10);
    assert!(rows.iter().all(|r| r.pass && r.mismatches.is_empty()));
    assert_eq!(rows[4].ks, vec![1, 2]);

    let pretty = stdout(&run(&["audit", "--m-max", "5"]));
    assert_eq!(pretty.lines().last(), Some("PASS m=5 k=1,2 M=11 N=10 b=3"));

    assert_eq!(code(&["audit", "--m-max", "30"]), 2);
    assert_eq!(code(&["audit", "--m-max", "0"]), 2);
}

#[test]
fn audit_random_policy_follows_seed() {
    let a = stdout(&run(&[
        "--seed",
        "11",
        "--format",
        "json",
        "audit",
        "--m-max",
        "12",
        "--k-policy",
        "random",
    ]));
    let b = stdout(&run(&[
        "--seed",
        "11",
        "--format",
        "json",
        "audit",
        "--m-max",
        "12",
        "--k-policy",
        "random",
    ]));
    assert_eq!(a, b);
    let rows: Vec<AuditRow> = serde_json::from_str(&a).unwrap();
    assert!(rows.iter().all(|r| r.pass));
}

#[test]
fn check_apn_exit_codes() {
    assert_eq!(
        code(&[
            "check-apn",
            "taniguchi",
            "--m",
            "4",
            "--k",
            "1",
            "--alpha",
            "1",
            "--beta",
            "0x9"
        ]),
        0
    );
    assert_eq!(
        code(&[
            "check-apn",
            "taniguchi",
            "--m",
            "4",
            "--k",
            "1",
            "--alpha",
            "1",
            "--beta",
            "0x2"
        ]),
        3
    );
    assert_eq!(
        code(&[
            "check-apn",
            "--exhaustive",
            "taniguchi",
            "--m",
            "5",
            "--k",
            "1",
            "--alpha",
            "1",
            "--beta",
            "0x05"
        ]),
        3
    );
    assert_eq!(code(&["check-apn", "gold", "--n", "5", "--i", "1"]), 0);
    assert_eq!(
        code(&[
            "check-apn",
            "pott-zhou",
            "--m",
            "4",
            "--k",
            "1",
            "--s",
            "2",
            "--alpha",
            "0x2"
        ]),
        0
    );
    assert_eq!(
        code(&[
            "check-apn",
            "taniguchi",
            "--m",
            "4",
            "--k",
            "2",
            "--alpha",
            "1",
            "--beta",
            "0x9"
        ]),
        2
    );
    assert_eq!(code(&["check-apn", "taniguchi", "--m", "4"]), 2);
    assert_eq!(code(&["no-such-command"]), 2);
    assert_eq!(code(&["--help"]), 0);
}

#[test]
fn check_apn_reports_both_verdicts() {
    let o = run(&[
        "--format",
        "json",
        "check-apn",
        "--exhaustive",
        "taniguchi",
        "--m",
        "3",
        "--k",
        "1",
        "--alpha",
        "0",
        "--beta",
        "0x1",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["criterion_apn"], v["scan_apn"]);
    assert_eq!(o.status.code(), Some(if v["criterion_apn"] == true { 0 } else { 3 }));
}

#[test]
fn enumerate_beta_lists_orbits() {
    let o = run(&["--format", "json", "enumerate-beta", "--m", "4"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["size"], 5);
    let betas: Vec<&str> = v["betas"]
        .as_array()
        .unwrap()
        .iter()
        .map(|b| b.as_str().unwrap())
        .collect();
    assert_eq!(betas, ["0x1", "0x9", "0xb", "0xd", "0xe"]);
    assert_eq!(v["orbits"].as_array().unwrap().len(), 2);
}

#[test]
fn spectrum_table_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("f.apnt");
    let path = path.to_str().unwrap();
    let direct = run(&[
        "--format",
        "json",
        "spectrum",
        "--save-table",
        path,
        "taniguchi",
        "--m",
        "4",
        "--k",
        "1",
        "--alpha",
        "1",
        "--beta",
        "0x9",
    ]);
    assert_eq!(direct.status.code(), Some(0));
    assert!(std::path::Path::new(&format!("{path}.json")).exists());

    let from_file = run(&["--format", "json", "spectrum", "table", "--path", path]);
    assert_eq!(from_file.status.code(), Some(0));
    let a: serde_json::Value = serde_json::from_str(&stdout(&direct)).unwrap();
    let b: serde_json::Value = serde_json::from_str(&stdout(&from_file)).unwrap();
    assert_eq!(a, b);
    assert_eq!(a["uniformity"], 2);

    assert_eq!(code(&["spectrum", "table", "--path", "/nonexistent/f.apnt"]), 1);
}

#[test]
fn classes_match_counts() {
    for (m, n) in [(4, 3), (5, 6), (6, 5), (7, 21)] {
        let o = run(&["--format", "json", "classes", "--m", &m.to_string()]);
        let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(v.as_array().unwrap().len(), n, "m={m}");
    }
}

#[test]
fn witness_exit_codes() {
    assert_eq!(code(&["witness", "--from", "4,1,1,0x9", "--to", "4,3,0x7,0xb"]), 0);
    assert_eq!(code(&["witness", "--from", "4,1,1,0x9", "--to", "4,1,0,0x2"]), 3);
    assert_eq!(code(&["witness", "--from", "6,1,0,0x2", "--pott-zhou"]), 0);
    assert_eq!(code(&["witness", "--from", "4,1,1"]), 2);
    assert_eq!(code(&["witness", "--from", "4,1,1,0x2", "--to", "4,1,1,0x9"]), 3);
}

#[test]
fn aut_constants_and_oracle() {
    let v: serde_json::Value = serde_json::from_str(&stdout(&run(&[
        "--format", "json", "aut", "--m", "3", "--k", "1", "--alpha", "1", "--beta", "0x2",
    ])))
    .unwrap();
    assert_eq!(v["aut"], 896);
    assert_eq!(v["hard_coded"], true);
    assert_eq!(
        code(&["aut", "--oracle", "--m", "5", "--k", "1", "--alpha", "1", "--beta", "0x1"]),
        0
    );
    assert_eq!(
        code(&["aut", "--m", "4", "--k", "1", "--alpha", "1", "--beta", "0x2"]),
        3
    );
}

#[test]
fn output_does_not_depend_on_worker_count() {
    let cases: [&[&str]; 5] = [
        &["--format", "json", "table", "--m", "2..40", "--full"],
        &["--format", "csv", "audit", "--m-max", "12", "--k-policy", "all"],
        &["--format", "json", "classes", "--m", "8"],
        &[
            "--format",
            "json",
            "spectrum",
            "taniguchi",
            "--m",
            "5",
            "--k",
            "2",
            "--alpha",
            "0x3",
            "--beta",
            "0x7",
        ],
        &[
            "--format",
            "json",
            "witness",
            "--from",
            "5,1,0x3,0x7",
            "--to",
            "5,2,1,0x6",
        ],
    ];
    for args in cases {
        let one = run(&[&["--workers", "1"], args].concat());
        let four = run(&[&["--workers", "4"], args].concat());
        assert_eq!(one.status.code(), four.status.code(), "{args:?}");
        assert_eq!(one.stdout, four.stdout, "{args:?}");
    }
    assert_eq!(code(&["--workers", "0", "table", "--m", "3"]), 2);
}

#[test]
fn modulus_override_warns_and_keeps_counts() {
    let o = run(&["--modulus", "6=0x5b", "--format", "csv", "audit", "--m-max", "6"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stderr).contains("warning"));
    let standard = AuditRow::from_csv(&stdout(&run(&["--format", "csv", "audit", "--m-max", "6"]))).unwrap();
    assert_eq!(AuditRow::from_csv(&stdout(&o)).unwrap(), standard);
    assert_eq!(code(&["--modulus", "6=0x41", "table", "--m", "6"]), 2);
}
