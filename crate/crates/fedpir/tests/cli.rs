use std::path::Path;
use std::process::{Command, Output};

const MICRO: &str = "n = 4\nT = 2\nrho = 3\nz_s = 1\nz_q = 1\ns = 1\nc = 1\nj = 2\nseed = 5\n";

fn fedpir(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fedpir"))
        .args(args)
        .current_dir(cwd)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) {
    std::fs::write(dir.join(name), text).unwrap();
}

#[test]
fn simulate_micro_config() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "micro.cfg", MICRO);
    let o = fedpir(&["simulate", "--config", "micro.cfg", "--out", "out"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("mode = plain"));
    let result = std::fs::read_to_string(dir.path().join("out/result.csv")).unwrap();
    assert_eq!(result.lines().count(), 2);
    assert_eq!(result.lines().next(), Some("sample,y_1"));
    let transcript = std::fs::read_to_string(dir.path().join("out/transcript.csv")).unwrap();
    assert_eq!(transcript.lines().next(), Some("stage,src,dst,objective,partition,symbols"));
    // 12 sharing, 6 query and 4 answer messages
    assert_eq!(transcript.lines().count(), 1 + 12 + 6 + 4);

    let o = fedpir(&["simulate", "--config", "micro.cfg", "--out", "sym", "--symmetric"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("mode = symmetric"));
    let sym = std::fs::read_to_string(dir.path().join("sym/result.csv")).unwrap();
    assert_eq!(sym, result);
}

#[test]
fn identical_seed_gives_identical_files() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "c.cfg", "n = 7\nT = 4\nrho = 5\nz_s = 2\nz_q = 2\ns = 3\nc = 4\ngamma = 3\n");
    for out in ["a", "b"] {
        let o = fedpir(&["simulate", "--config", "c.cfg", "--out", out, "--seed", "42"], dir.path());
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    }
    for file in ["result.csv", "transcript.csv"] {
        let a = std::fs::read(dir.path().join("a").join(file)).unwrap();
        let b = std::fs::read(dir.path().join("b").join(file)).unwrap();
        assert_eq!(a, b, "{file}");
    }
}

#[test]
fn bad_parity_exits_with_code_2() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "bad.cfg", "n = 4\nT = 1\nrho = 4\nz_s = 1\nz_q = 1\ns = 1\nc = 1\n");
    for verb in ["simulate", "validate"] {
        let mut args = vec![verb, "--config", "bad.cfg"];
        if verb == "simulate" {
            args.extend(["--out", "x"]);
        }
        let o = fedpir(&args, dir.path());
        assert_eq!(o.status.code(), Some(2));
        assert!(stderr(&o).contains("invalid (rho,z_s,z_q)"), "{}", stderr(&o));
    }
}

#[test]
fn unknown_verb_and_missing_file() {
    let dir = tempfile::tempdir().unwrap();
    let o = fedpir(&["frobnicate"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("Usage"));
    let o = fedpir(&["validate", "--config", "nope.cfg"], dir.path());
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn explicit_assignment_and_labels() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "a.txt", "4 2 3\n1 0\n1 1\n1 1\n0 1\n");
    write(
        dir.path(),
        "l.txt",
        "# i t l y\n1 1 1 1 0\n2 1 1 1 1\n3 1 1 0 0\n2 2 1 0 1\n3 2 1 1 1\n4 2 1 0 0\n",
    );
    write(
        dir.path(),
        "e.cfg",
        "n = 4\nT = 2\nrho = 3\nz_s = 1\nz_q = 1\ns = 1\nc = 2\nassignment = a.txt\nlabels = l.txt\n",
    );
    let o = fedpir(&["simulate", "--config", "e.cfg", "--out", "o"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let result = std::fs::read_to_string(dir.path().join("o/result.csv")).unwrap();
    assert_eq!(result, "sample,y_1,y_2\n1,2,1\n");

    write(dir.path(), "j2.cfg", &format!("{}j = 2\n", std::fs::read_to_string(dir.path().join("e.cfg")).unwrap()));
    let o = fedpir(&["simulate", "--config", "j2.cfg", "--out", "o2"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let result = std::fs::read_to_string(dir.path().join("o2/result.csv")).unwrap();
    assert_eq!(result, "sample,y_1,y_2\n1,1,2\n");
}

#[test]
fn validate_prints_derived_parameters() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "micro.cfg", MICRO);
    let o = fedpir(&["validate", "--config", "micro.cfg"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for line in ["k_C = 2", "q = 5", "alpha = 2", "P = 1"] {
        assert!(text.contains(line), "{text}");
    }
}

#[test]
fn rates_for_a_config() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "r.cfg", "n = 10\nT = 10\nrho = 10\nz_s = 1\nz_q = 1\ns = 1\nc = 1\n");
    let o = fedpir(&["rates", "--config", "r.cfg"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("ours,10,10,10,1,1,5.5,0.005,0.45,202.222222222,1/200,9/20,1820/9,"), "{text}");
    assert!(text.contains("star_product,10,10,10,1,1,"), "{text}");
}

#[test]
fn sweep_writes_figures() {
    let dir = tempfile::tempdir().unwrap();
    let o = fedpir(&["sweep", "--out", "figs"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    for n in 3..=7 {
        assert!(dir.path().join(format!("figs/fig{n}.csv")).exists());
    }
    let fig3 = std::fs::read_to_string(dir.path().join("figs/fig3.csv")).unwrap();
    assert_eq!(fig3.lines().filter(|l| l.starts_with("ours,")).count(), 8);
    assert_eq!(fig3.lines().filter(|l| l.starts_with("gxstpir,")).count(), 8);
    assert_eq!(fig3.lines().filter(|l| l.starts_with("star_product,")).count(), 1);

    let o = fedpir(&["sweep", "--figure", "5", "--rho", "30..20", "--out", "empty"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let empty = std::fs::read_to_string(dir.path().join("empty/fig5.csv")).unwrap();
    assert_eq!(empty.lines().count(), 1);
    assert!(empty.starts_with("scheme,n,T,rho"));

    let o = fedpir(&["sweep", "--figure", "3", "--rho", "2..3", "--out", "low"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let low = std::fs::read_to_string(dir.path().join("low/fig3.csv")).unwrap();
    assert!(low.lines().any(|l| l.contains(",infeasible: ")), "{low}");

    let o = fedpir(&["sweep", "--figure", "8", "--out", "x"], dir.path());
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn audit_small_config_and_guard() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "a.cfg", "n = 3\nT = 1\nrho = 3\nz_s = 1\nz_q = 1\ns = 1\nc = 1\n");
    let o = fedpir(&["audit", "--config", "a.cfg"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS ")).count(), 4, "{text}");
    assert!(text.contains("MI=0 bits (exact)"));
    assert!(text.ends_with("4 cases, 0 failed\n"));

    write(dir.path(), "big.cfg", "n = 4\nT = 2\nrho = 3\nz_s = 1\nz_q = 1\ns = 2\nc = 1\n");
    let o = fedpir(&["audit", "--config", "big.cfg"], dir.path());
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
    assert!(stderr(&o).contains("limit"));

    write(dir.path(), "wide.cfg", "n = 5\nT = 1\nrho = 5\nz_s = 1\nz_q = 1\ns = 1\nc = 1\n");
    let o = fedpir(&["audit", "--config", "wide.cfg"], dir.path());
    assert_eq!(o.status.code(), Some(2));
}
