use std::process::{Command, Output};

use nilcent_core::jordan::Partition;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nilcent"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_lines(o: &Output) -> Vec<serde_json::Value> {
    stdout(o)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

#[test]
fn verify_gl_passes() {
    let o = run(&[
        "verify",
        "--kind",
        "gl",
        "--partition",
        "3,2,1",
        "--no-timings",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let r = &json_lines(&o)[0];
    assert_eq!(r["index_z"], 6);
    assert_eq!(r["rank_of_g"], 6);
    assert_eq!(r["covector"]["xi_1^{1,2}"], "1");
    assert!(r.get("timings_ms").is_none());
    let checks = r["theorem_checks"].as_object().unwrap();
    assert_eq!(checks.len(), nilcent::CHECK_NAMES.len());
    assert_eq!(checks["so.case"]["status"], "skipped");
}

#[test]
fn verify_so8_reports_example_facts() {
    let o = run(&["verify", "--kind", "so", "--partition", "5,3"]);
    assert_eq!(o.status.code(), Some(0));
    let r = &json_lines(&o)[0];
    assert_eq!(r["index_z"], 4);
    assert_eq!(r["theorem_checks"]["so8_counterexample"]["status"], "pass");
    assert_eq!(r["theorem_checks"]["so.case"]["detail"], "case2");
}

#[test]
fn usage_errors_exit_2() {
    let o = run(&["verify", "--kind", "sp", "--partition", "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("even"));
    assert_eq!(
        run(&["verify", "--kind", "so", "--partition", "2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["verify", "--kind", "gl", "--partition", "3,x"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["verify", "--kind", "e8", "--partition", "3"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["sweep", "--kind", "gl", "--max-n", "0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&[
            "verify",
            "--kind",
            "gl",
            "--partition",
            "2,1",
            "--weights",
            "1,1"
        ])
        .status
        .code(),
        Some(2)
    );
    assert_eq!(run(&["bogus"]).status.code(), Some(2));
}

#[test]
fn custom_weights() {
    let o = run(&[
        "verify",
        "--kind",
        "gl",
        "--partition",
        "2,1",
        "--weights",
        "1/2,-3",
        "--no-timings",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json_lines(&o)[0]["covector"]["xi_1^{1,1}"], "1/2");
}

#[test]
fn gl_sweep_counts_match_partition_numbers() {
    let o = run(&["sweep", "--kind", "gl", "--max-n", "6", "--no-timings"]);
    assert_eq!(o.status.code(), Some(0));
    let rs = json_lines(&o);
    // p(1..6)
    assert_eq!(rs.len(), 1 + 2 + 3 + 5 + 7 + 11);
    let ns: Vec<u64> = rs.iter().map(|r| r["n"].as_u64().unwrap()).collect();
    assert!(ns.windows(2).all(|w| w[0] <= w[1]));
}

#[test]
fn sp_sweep_matches_filter_oracle() {
    let o = run(&["sweep", "--kind", "sp", "--max-n", "4", "--no-timings"]);
    let got: Vec<String> = json_lines(&o)
        .iter()
        .map(|r| r["partition"].as_str().unwrap().to_string())
        .collect();
    // odd parts must come with even multiplicity
    let want: Vec<String> = (1..=4)
        .flat_map(Partition::all)
        .filter(|p| {
            p.n() % 2 == 0
                && p.sizes()
                    .iter()
                    .all(|&a| a % 2 == 0 || p.multiplicity(a) % 2 == 0)
        })
        .map(|p| p.to_string())
        .collect();
    assert_eq!(got, want);
    assert_eq!(got, ["2", "1,1", "4", "2,2", "2,1,1", "1,1,1,1"]);
}

#[test]
fn so_sweep_of_one() {
    let o = run(&["sweep", "--kind", "so", "--max-n", "1"]);
    let rs = json_lines(&o);
    assert_eq!(rs.len(), 1);
    assert_eq!(rs[0]["dim_z"], 0);
    assert_eq!(rs[0]["index_z"], 0);
}

#[test]
fn sweep_is_deterministic_across_jobs() {
    let a = run(&[
        "sweep",
        "--kind",
        "so",
        "--max-n",
        "6",
        "--no-timings",
        "--jobs",
        "3",
    ]);
    let b = run(&["sweep", "--kind", "so", "--max-n", "6", "--no-timings"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn tsv_output() {
    let o = run(&["sweep", "--kind", "gl", "--max-n", "3", "--format", "tsv"]);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some(nilcent::VERIFY_TSV_HEADER));
    let first: Vec<&str> = lines.next().unwrap().split('\t').collect();
    assert_eq!(&first[..6], ["gl", "1", "1", "1", "1", "1"]);
    assert_eq!(text.lines().count(), 1 + 1 + 2 + 3);
}

#[test]
fn counterexample_is_reproducible() {
    let args = ["counterexample", "--samples", "30", "--seed", "7"];
    let a = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, run(&args).stdout);
    let r = &json_lines(&a)[0];
    assert_eq!(r["center_dim"], 3);
    assert_eq!(r["index"], 4);
    assert_eq!(r["criterion"]["criterion_holds"], false);
    assert_eq!(r["sampling"]["probabilistic"], true);
    assert_eq!(r["sampling"]["criterion_passes"], 0);
    assert_eq!(r["all_exact_facts_hold"], true);
}

#[test]
fn so9_variant_is_experimental() {
    let o = run(&["counterexample", "--samples", "3", "--extend-so9"]);
    assert_eq!(o.status.code(), Some(0));
    let rs = json_lines(&o);
    assert_eq!(rs.len(), 2);
    assert_eq!(rs[1]["algebra"], "so_9");
    assert_eq!(rs[1]["experimental"], true);
}

#[test]
fn export_structure_format() {
    let o = run(&["export-structure", "--kind", "gl", "--partition", "1,1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let data: Vec<Vec<&str>> = text
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| l.split(' ').collect())
        .collect();
    // gl_2: [E11, E12] = E12 and its relatives
    assert!(!data.is_empty());
    for row in &data {
        assert_eq!(row.len(), 4);
        let u: usize = row[0].parse().unwrap();
        let v: usize = row[1].parse().unwrap();
        assert!(u < v && v < 4);
    }
    assert!(text.starts_with("# "));
}
