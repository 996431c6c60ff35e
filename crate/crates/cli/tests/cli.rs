use std::process::{Command, Output};

fn riordan(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_riordan"))
        .args(args)
        .env_remove("RIORDAN_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn pascal_matrix_csv() {
    let o = riordan(&["matrix", "1/(1-x1)", "x1/(1-x1)", "--trunc", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "m\\n,1,x1,x1^2,x1^3\n1,1,0,0,0\nx1,1,1,0,0\nx1^2,1,2,1,0\nx1^3,1,3,3,1\n"
    );
}

#[test]
fn classic_pascal_matches_binomials() {
    let o = riordan(&["classic", "pascal", "-k", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let rows: Vec<Vec<u64>> = stdout(&o)
        .lines()
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect();
    for (n, row) in rows.iter().enumerate() {
        let mut c = 1u64;
        for (k, &v) in row.iter().enumerate() {
            assert_eq!(v, c, "row {n} col {k}");
            c = c * (n - k) as u64 / (k + 1) as u64;
        }
    }
}

#[test]
fn identity_matrix_in_two_variables() {
    let o = riordan(&["matrix", "1", "x1, x2", "--vars", "2", "--trunc", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "m\\n,1,x1,x2,x1^2,x1*x2,x2^2");
    for (i, line) in lines[1..].iter().enumerate() {
        let cells: Vec<&str> = line.split(',').skip(1).collect();
        for (j, c) in cells.iter().enumerate() {
            assert_eq!(*c, if i == j { "1" } else { "0" });
        }
    }
}

#[test]
fn json_matrix_round_trips_through_serde() {
    let o = riordan(&["matrix", "1+x1", "x1", "-k", "2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["basis"], serde_json::json!(["1", "x1", "x1^2"]));
    assert_eq!(v["rows"][1], serde_json::json!(["1", "1", "0"]));
}

#[test]
fn constant_term_in_g_is_an_algebra_error() {
    let o = riordan(&["matrix", "1", "1+x1"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("argument G"), "{}", stderr(&o));
}

#[test]
fn parse_errors_exit_two_and_name_the_argument() {
    let o = riordan(&["matrix", "1+", "x1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("argument F"));
    assert!(stderr(&o).contains("byte 2"));

    let o = riordan(&["matrix", "1", "x3", "--vars", "2"]);
    assert_eq!(o.status.code(), Some(2));

    let o = riordan(&["verify", "--suite", "bogus"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn catalan_inverse_triangle() {
    let o = riordan(&["classic", "catalan-inverse", "--trunc", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1\n0,1\n0,-1,1\n0,2,-2,1\n0,-5,5,-3,1\n");
}

#[test]
fn inverting_a_non_unit_fails() {
    let o = riordan(&["invert", "--what", "series", "2+x1"]);
    assert_eq!(o.status.code(), Some(3));
    let o = riordan(&["invert", "--what", "series", "2+x1", "--ring", "rational", "-k", "2", "--format", "text"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1/2 - 1/4*x1 + 1/8*x1^2\n");
}

#[test]
fn invert_map_and_riordan() {
    let o = riordan(&["invert", "--what", "map", "x1+x1^2", "-k", "4", "--format", "text"]);
    assert_eq!(stdout(&o), "x1 - x1^2 + 2*x1^3 - 5*x1^4\n");
    let o = riordan(&["invert", "--what", "riordan", "1/(1-x1)", "x1/(1-x1)", "-k", "3", "--format", "text"]);
    assert_eq!(stdout(&o), "f: 1 - x1 + x1^2 - x1^3\ng: x1 - x1^2 + x1^3\n");
    let o = riordan(&["invert", "--what", "map", "x1, 2*x1", "--vars", "2"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn verify_is_deterministic_across_thread_counts() {
    let run = |threads: &str| {
        let o = riordan(&[
            "verify", "--suite", "homomorphism", "--dims", "1,2", "--truncs", "3", "--trials", "10",
            "--seed", "42", "--threads", threads,
        ]);
        assert_eq!(o.status.code(), Some(0));
        stdout(&o)
    };
    let one = run("1");
    assert_eq!(one, run("4"));
    let last: serde_json::Value = serde_json::from_str(one.lines().last().unwrap()).unwrap();
    assert_eq!(last["summary"]["passed"], 20);
}

#[test]
fn verify_reads_seed_from_the_environment() {
    let args = ["verify", "--suite", "group", "--dims", "1", "--truncs", "3", "--trials", "3"];
    let with_env = Command::new(env!("CARGO_BIN_EXE_riordan"))
        .args(args)
        .env("RIORDAN_SEED", "9")
        .output()
        .unwrap();
    let mut explicit = args.to_vec();
    explicit.extend(["--seed", "9"]);
    assert_eq!(with_env.stdout, riordan(&explicit).stdout);
}
