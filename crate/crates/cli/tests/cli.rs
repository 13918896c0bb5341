use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn ershov(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ershov"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn gen_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.txt"), dir.path().join("b.txt"));
    for out in [&a, &b] {
        let o = ershov(&[
            "gen",
            "--kind",
            "nce:3",
            "--universe",
            "30",
            "--stages",
            "12",
            "--seed",
            "5",
            "-o",
            path(out),
        ]);
        assert!(o.status.success());
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    let o = ershov(&["classify", path(&a)]);
    assert!(stdout(&o)
        .lines()
        .any(|l| l.starts_with("level ") && l[6..].parse::<usize>().unwrap() <= 3));
}

#[test]
fn infeasible_spec_is_input_error() {
    let o = ershov(&["gen", "--kind", "nce:9", "--universe", "4", "--stages", "5"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn bound_violation_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let t = dir.path().join("t.txt");
    fs::write(
        &t,
        "ERSHOV-TABLE v1\nuniverse 2\nstages 4\nrow 0 0101\nrow 1 0110\n",
    )
    .unwrap();
    let o = ershov(&["classify", path(&t), "--f", "const:1"]);
    assert_eq!(o.status.code(), Some(1));
    let o = ershov(&["classify", path(&t), "--f", "const:3"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn transfer_and_certify() {
    let dir = tempfile::tempdir().unwrap();
    let t = dir.path().join("t.txt");
    let o = ershov(&[
        "gen",
        "--kind",
        "delta2",
        "--universe",
        "12",
        "--stages",
        "5000",
        "--settle",
        "early",
        "--seed",
        "1",
        "-o",
        path(&t),
    ]);
    assert!(o.status.success());
    let tracking = dir.path().join("tracking.csv");
    let o = ershov(&[
        "transfer",
        path(&t),
        "--horizon",
        "5000",
        "--csv",
        path(&tracking),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = fs::read_to_string(&tracking).unwrap();
    assert!(text.starts_with("x,m_x,rho_x_A,rho_mx_B,error,bound_1_over_x,ok\n"));
    assert!(text.lines().skip(1).all(|l| l.ends_with(",true")));

    let cert = dir.path().join("cert.csv");
    let o = ershov(&[
        "certify",
        path(&t),
        "--horizon",
        "5000",
        "--csv",
        path(&cert),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = fs::read_to_string(&cert).unwrap();
    assert_eq!(text.lines().count(), 5001);

    let o = ershov(&["transfer", path(&t), "--horizon", "5000", "--f", "const:3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("insufficient bound"));
}

#[test]
fn bound_from_table_file() {
    let dir = tempfile::tempdir().unwrap();
    let t = dir.path().join("t.txt");
    fs::write(&t, "ERSHOV-TABLE v1\nuniverse 2\nstages 40\nrow 0 0000000000000000000000000000000000000000\nrow 1 0000000000000000000000000000000000000000\nsettled 0 0\nsettled 1 0\n").unwrap();
    let f = dir.path().join("f.txt");
    fs::write(
        &f,
        (0..40).map(|s| s.to_string()).collect::<Vec<_>>().join(" "),
    )
    .unwrap();
    let o = ershov(&["modulus", path(&t), "--f", &format!("table:{}", path(&f))]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("\n2,5,5,0,3\n"));
}

#[test]
fn diffrep_residuals_are_exact_zero() {
    let dir = tempfile::tempdir().unwrap();
    let t = dir.path().join("t.txt");
    assert!(ershov(&[
        "gen",
        "--kind",
        "nce:4",
        "--universe",
        "50",
        "--stages",
        "20",
        "-o",
        path(&t)
    ])
    .status
    .success());
    let o = ershov(&["diffrep", path(&t)]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("s,rho_s_A,u_s,v_s,residual\n"));
    assert!(out.lines().skip(1).all(|l| l.ends_with(",0")));
}

#[test]
fn density_and_cepair() {
    let dir = tempfile::tempdir().unwrap();
    let set = dir.path().join("evens.txt");
    fs::write(
        &set,
        format!(
            "ERSHOV-SET v1\nuniverse 1001\nbits {}\n",
            (0..1001)
                .map(|n| if n % 2 == 0 { '1' } else { '0' })
                .collect::<String>()
        ),
    )
    .unwrap();
    let o = ershov(&["density", path(&set), "--window", "100:1000"]);
    assert!(o.status.success());
    assert_eq!(
        stdout(&o),
        "window,max,argmax,min,argmin\n\"[100,1000]\",51/101,101,1/2,100\n"
    );

    let seq = |v: &str| format!("ERSHOV-SEQ v1\n{}", format!("{v}\n").repeat(16));
    let (a, b) = (dir.path().join("a.seq"), dir.path().join("b.seq"));
    fs::write(&a, seq("3/4")).unwrap();
    fs::write(&b, seq("1/4")).unwrap();
    let o = ershov(&[
        "cepair",
        "--a",
        path(&a),
        "--b",
        path(&b),
        "--q",
        "1/2",
        "--universe",
        "5000",
        "--out-dir",
        path(dir.path()),
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("nested true"));
    assert!(dir.path().join("outer.txt").exists());
    let o = ershov(&[
        "cepair",
        "--a",
        path(&b),
        "--b",
        path(&a),
        "--q",
        "1/2",
        "--universe",
        "5000",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn suite_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("report.csv");
    let o = ershov(&["suite", "limsup", "--csv", path(&csv)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(fs::read_to_string(&csv)
        .unwrap()
        .starts_with("suite,check,status,residual,window,detail,runtime_ms\n"));
    assert_eq!(ershov(&["suite", "nope"]).status.code(), Some(2));
}
