use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use loopsmith::group::{left_cosets, make_group, symmetric, symmetric_point_stabilizer};
use loopsmith::loops::{make_loop, FiniteLoop};
use loopsmith::report::parse_trailer;
use loopsmith::sections::is_sharply_transitive;
use loopsmith::tbl::{parse_block_sidecar, parse_int_rows, parse_table};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    run_env(args, &[])
}

fn run_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_loopsmith"));
    cmd.args(args).env_remove("LOOPSMITH_CAP");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn trailer(o: &Output) -> BTreeMap<String, String> {
    parse_trailer(&stdout(o))
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn read_loop(path: &Path) -> FiniteLoop {
    make_loop(&parse_table(&std::fs::read_to_string(path).unwrap()).unwrap()).unwrap()
}

#[test]
fn validate_group_table() {
    let o = run(&["validate", path_str(&fixture("c6.tbl"))]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("group: yes; moufang: yes"), "{out}");
    assert_eq!(trailer(&o)["associative"], "yes");
}

#[test]
fn validate_nonassociative_loop() {
    let o = run(&["validate", path_str(&fixture("nonassoc5.tbl"))]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("loop: yes; associative: no; witness=("), "{out}");
    let t = trailer(&o);
    assert_eq!(t["group"], "no");
    // the printed witness really fails associativity
    let w: Vec<usize> = t["witness"]
        .trim_matches(|c| c == '(' || c == ')')
        .split(',')
        .map(|v| v.parse().unwrap())
        .collect();
    let rows = parse_table(&std::fs::read_to_string(fixture("nonassoc5.tbl")).unwrap()).unwrap();
    let (x, y, z) = (w[0], w[1], w[2]);
    assert_ne!(rows[rows[x][y]][z], rows[x][rows[y][z]]);
}

#[test]
fn validate_reports_witness_in_file_labels() {
    let o = run(&["validate", path_str(&fixture("shifted_c3.tbl"))]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(trailer(&o)["identity"], "2");
    assert_eq!(trailer(&o)["group"], "yes");
}

#[test]
fn validate_parse_and_domain_errors() {
    let o = run(&["validate", path_str(&fixture("malformed.tbl"))]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 3, column 3"), "{}", stderr(&o));

    let o = run(&["validate", path_str(&fixture("not_latin.tbl"))]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(trailer(&o)["loop"], "no");

    let o = run(&["validate", "/nonexistent/file.tbl"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&[]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["search-sections"]).status.code(), Some(2));
    let o = run(&["search-sections", path_str(&fixture("s3.sect.json")), "--limit", "x"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn build_product_reference_spec() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["build-product", path_str(&fixture("c3_s3_c2.prod.json")), "--out", path_str(dir.path())]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("associative=false"), "{out}");

    let l = read_loop(&dir.path().join("loop.tbl"));
    assert_eq!(l.order(), 18);
    let g = make_group(&parse_table(&std::fs::read_to_string(dir.path().join("group.tbl")).unwrap()).unwrap()).unwrap();
    assert_eq!(g.order(), 36);
    let section = parse_block_sidecar(&std::fs::read_to_string(dir.path().join("section.txt")).unwrap()).unwrap();
    assert_eq!(section.len(), 18);
    assert!(section.iter().all(|b| b.len() == 1));

    let proper = parse_trailer(&std::fs::read_to_string(dir.path().join("properness.txt")).unwrap());
    assert_eq!(proper["associative"], "false");
    assert_eq!(proper["equivalence"], "true");
    let dec = parse_trailer(&std::fs::read_to_string(dir.path().join("decomposition.txt")).unwrap());
    assert_eq!(dec["mlt_left_order"], "36");
    assert_eq!(dec["semidirect"], "true");
}

#[test]
fn build_product_from_table_matches_builder() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let o1 = run(&["build-product", path_str(&fixture("c3_s3_c2.prod.json")), "--out", path_str(a.path())]);
    let o2 = run(&["build-product", path_str(&fixture("from_table.prod.json")), "--out", path_str(b.path())]);
    assert_eq!(o1.status.code(), Some(0));
    assert_eq!(o2.status.code(), Some(0), "{}", stderr(&o2));
    let t1 = std::fs::read_to_string(a.path().join("loop.tbl")).unwrap();
    let t2 = std::fs::read_to_string(b.path().join("loop.tbl")).unwrap();
    assert_eq!(t1, t2);
}

#[test]
fn build_product_names_failed_clause() {
    let o = run(&["build-product", path_str(&fixture("homomorphic_g.prod.json"))]);
    assert_eq!(o.status.code(), Some(1));
    let clause = trailer(&o)["clause"].clone();
    assert!(clause == "GenerationFailure" || clause == "GIsHomomorphism", "{clause}");
    assert!(stderr(&o).contains(&clause));

    let o = run(&["build-product", path_str(&fixture("centre.prod.json"))]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(trailer(&o)["clause"], "CentreIntersection");
}

#[test]
fn build_product_torus_variant() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["build-product", path_str(&fixture("torus.prod.json")), "--out", path_str(dir.path())]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(read_loop(&dir.path().join("loop.tbl")).order(), 24);
}

#[test]
fn build_product_respects_closure_cap() {
    let o = run_env(&["build-product", path_str(&fixture("c3_s3_c2.prod.json"))], &[("LOOPSMITH_CAP", "10")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(trailer(&o)["mlt_left_order"], "over-cap");
    let o = run_env(&["build-product", path_str(&fixture("c3_s3_c2.prod.json"))], &[("LOOPSMITH_CAP", "zero")]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn search_counts() {
    let count = |file: &str, extra: &[&str]| {
        let f = fixture(file);
        let mut args = vec!["search-sections", path_str(&f), "--count-only"];
        args.extend_from_slice(extra);
        let o = run(&args);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        trailer(&o)["count"].parse::<usize>().unwrap()
    };
    assert_eq!(count("s3.sect.json", &["--unpinned"]), 2);
    assert_eq!(count("s4.sect.json", &["--unpinned"]), 24);
    assert_eq!(count("s4_unpinned.sect.json", &[]), 24);
    assert_eq!(count("s3.sect.json", &[]), 1);
    assert_eq!(count("s4.sect.json", &[]), 4);
    assert_eq!(count("s4.sect.json", &["--require-generation"]), 0);
    assert_eq!(count("s4.sect.json", &["--unpinned", "--parallel"]), 24);
}

fn section_lines(args: &[&str]) -> Vec<Vec<usize>> {
    let o = run(args);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    stdout(&o)
        .lines()
        .map(|l| l.split_whitespace().map(|v| v.parse().unwrap()).collect())
        .collect()
}

#[test]
fn search_streams_valid_sections() {
    let f = fixture("s4_unpinned.sect.json");
    let all = section_lines(&["search-sections", path_str(&f)]);
    assert_eq!(all.len(), 24);
    let g = symmetric(4).unwrap();
    let cs = left_cosets(&g, &symmetric_point_stabilizer(4, 0).unwrap());
    assert!(all.iter().all(|s| is_sharply_transitive(&cs, s)));
    // deterministic without --parallel
    assert_eq!(all, section_lines(&["search-sections", path_str(&f)]));

    let one = section_lines(&["search-sections", path_str(&f), "--limit", "1"]);
    assert_eq!(one.len(), 1);
    assert!(is_sharply_transitive(&cs, &one[0]));

    let mut sorted = all.clone();
    sorted.sort();
    assert_eq!(section_lines(&["search-sections", path_str(&f), "--parallel"]), sorted);
}

#[test]
fn classify_s5() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["classify", path_str(&fixture("s5.sect.json")), "--out", path_str(dir.path())]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let t = trailer(&o);
    assert_eq!(t["classes"], "6");
    assert_eq!(t["sections"], "56");
    for i in 0..6 {
        assert_eq!(read_loop(&dir.path().join(format!("class_{i}.tbl"))).order(), 5);
    }
}

#[test]
fn check_subloop_and_factor() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["check", path_str(&fixture("c6.tbl")), "--subloop", "0,2,4", "--out", path_str(dir.path())]);
    assert_eq!(o.status.code(), Some(0));
    let t = trailer(&o);
    assert_eq!(t["normal"], "yes");
    assert_eq!(t["factor_order"], "2");
    assert_eq!(t["mlt_left_order"], "6");
    assert_eq!(read_loop(&dir.path().join("factor.tbl")).order(), 2);
    let blocks = parse_block_sidecar(&std::fs::read_to_string(dir.path().join("factor.blocks")).unwrap()).unwrap();
    assert_eq!(blocks, vec![vec![0, 2, 4], vec![1, 3, 5]]);

    let o = run(&["check", path_str(&fixture("nonassoc5.tbl")), "--subloop", "0,1,2"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(trailer(&o)["subloop"], "no");
    assert_eq!(trailer(&o)["mlt_left_order"], "120");
}

#[test]
fn octonion_demo_default_and_exports() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["octonion-demo", "--samples", "500", "--seed", "3", "--out", path_str(dir.path())]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("closure=240 centre=2 factor=120 moufang=exact"));
    let l = read_loop(&dir.path().join("octavian.tbl"));
    assert_eq!(l.order(), 240);
    let coords = parse_int_rows(&std::fs::read_to_string(dir.path().join("octavian.coords")).unwrap(), 8).unwrap();
    assert_eq!(coords.len(), 240);
    assert!(coords.iter().all(|c| c.iter().map(|v| v * v).sum::<i64>() == 4));
    assert_eq!(read_loop(&dir.path().join("factor.tbl")).order(), 120);
}

#[test]
fn octonion_demo_is_deterministic_and_skips_floats() {
    let a = run(&["octonion-demo", "--samples", "200", "--seed", "9"]);
    let b = run(&["octonion-demo", "--samples", "200", "--seed", "9"]);
    assert_eq!(trailer(&a)["max_moufang_residual"], trailer(&b)["max_moufang_residual"]);
    let z = run(&["octonion-demo", "--samples", "0"]);
    assert_eq!(z.status.code(), Some(0));
    assert_eq!(trailer(&z)["float"], "skipped");
    assert_eq!(trailer(&z)["closure"], "240");
}
