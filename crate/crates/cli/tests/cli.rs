use std::io::Write;
use std::process::{Command, Output, Stdio};

fn spinecell(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_spinecell"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn gen(kind: &str) -> String {
    let o = spinecell(&["gen", kind], "");
    assert_eq!(o.status.code(), Some(0));
    stdout(&o)
}

#[test]
fn boundary_of_the_four_simplex_is_a_sphere() {
    let o = spinecell(&["recognize", "-"], &gen("boundary4simplex"));
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("verdict=SPHERE "));
    assert!(o.stderr.is_empty());
}

#[test]
fn lens_spaces_exit_with_two() {
    let o = spinecell(&["recognize", "-"], &gen("lens:2,1"));
    assert_eq!(o.status.code(), Some(2));
    let line = stdout(&o);
    assert!(line.starts_with("verdict=NOT_SIMPLY_CONNECTED "), "{line}");
    assert!(line.trim_end().ends_with("detail=H1=Z/2"), "{line}");
}

#[test]
fn missing_file_is_an_input_error() {
    let o = spinecell(&["recognize", "missing.tri"], "");
    assert_eq!(o.status.code(), Some(1));
    assert!(o.stdout.is_empty());
    assert!(String::from_utf8_lossy(&o.stderr).contains("missing.tri"));
}

#[test]
fn usage_errors_exit_with_one() {
    for args in [&["frobnicate"][..], &["recognize", "-", "--bogus"], &["scramble", "-"], &["gen", "torus"]] {
        let o = spinecell(args, "");
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn malformed_input_exits_with_one() {
    let o = spinecell(&["homology", "-"], "tetrahedra banana\n");
    assert_eq!(o.status.code(), Some(1));
    let o = spinecell(&["recognize", "-"], "tetrahedra 1\ntet 0: - - - -\n");
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn homology_lines() {
    let o = spinecell(&["homology", "-"], &gen("lens:3,1"));
    assert_eq!(stdout(&o), "H0 = Z^1\nH1 = Z^0 + Z/3\nH2 = Z^0\nH3 = Z^1\n");
    let o = spinecell(&["homology", "-", "--format", "text"], &gen("minimal-s3"));
    assert_eq!(stdout(&o), "(Z, 0, 0, Z)\n");
}

#[test]
fn validate_reports_counts() {
    let o = spinecell(&["validate", "-"], &gen("boundary4simplex"));
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "valid=true tets=5 vertices=5 edges=10 triangles=10 chi=0 orientable=true\n");
}

#[test]
fn star_spine_collapses_to_a_point() {
    let dir = std::env::temp_dir().join(format!("spinecell-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let trace = dir.join("spine.trace");
    let o = spinecell(&["spine", "-", "--strategy", "star", "--trace", trace.to_str().unwrap()], &gen("boundary4simplex"));
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "initial triangles=6 edges=10 vertices=5 chi=1\ncollapsed outcome=point triangles=0 edges=0 vertices=1 chi=1\n"
    );
    let text = std::fs::read_to_string(&trace).unwrap();
    assert_eq!(text.lines().count(), 11);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn scramble_pipeline_is_deterministic() {
    let d4 = gen("boundary4simplex");
    let a = spinecell(&["scramble", "-", "--moves", "50", "--seed", "9"], &d4);
    let b = spinecell(&["scramble", "-", "--moves", "50", "--seed", "9"], &d4);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = spinecell(&["validate", "-"], &stdout(&a));
    assert_eq!(v.status.code(), Some(0));
    let r1 = spinecell(&["recognize", "-", "--seed", "2"], &stdout(&a));
    let r2 = spinecell(&["recognize", "-", "--seed", "2"], &stdout(&a));
    assert_eq!(r1.stdout, r2.stdout);
    assert_eq!(r1.status.code(), Some(0), "{}", stdout(&r1));
}

#[test]
fn seed_wraps_around_the_tetrahedra() {
    let d4 = gen("boundary4simplex");
    let wide = spinecell(&["recognize", "-", "--seed", "99"], &d4);
    let narrow = spinecell(&["recognize", "-", "--seed", "4"], &d4);
    assert_eq!(wide.status.code(), Some(0));
    assert_eq!(wide.stdout, narrow.stdout);
}

#[test]
fn gen_writes_to_a_file() {
    let path = std::env::temp_dir().join(format!("spinecell-gen-{}.tri", std::process::id()));
    let o = spinecell(&["gen", "minimal-s3", "-o", path.to_str().unwrap()], "");
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), gen("minimal-s3"));
    std::fs::remove_file(&path).unwrap();
}
