//! Black-box checks of the command-line contract: exit codes, the order
//! environment variable, file output, and report shapes.

use std::process::Command;

struct Run {
    stdout: String,
    stderr: String,
    code: i32,
}

fn sheafgen(args: &[&str], env_order: Option<&str>) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_sheafgen"));
    cmd.args(args);
    match env_order {
        Some(v) => cmd.env("SHEAFGEN_DEFAULT_ORDER", v),
        None => cmd.env_remove("SHEAFGEN_DEFAULT_ORDER"),
    };
    let out = cmd.output().expect("binary launches");
    Run {
        stdout: String::from_utf8(out.stdout).expect("stdout is UTF-8"),
        stderr: String::from_utf8(out.stderr).expect("stderr is UTF-8"),
        code: out.status.code().expect("no signal"),
    }
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(sheafgen(&["--help"], None).code, 0);
    assert_eq!(sheafgen(&["--version"], None).code, 0);
    assert_eq!(sheafgen(&["table", "--help"], None).code, 0);
}

#[test]
fn usage_errors_exit_one() {
    // unknown subcommand, unknown family, malformed values
    assert_eq!(sheafgen(&["frobnicate"], None).code, 1);
    assert_eq!(sheafgen(&["table", "--family", "bogus"], None).code, 1);
    assert_eq!(sheafgen(&["table"], None).code, 1);
    assert_eq!(sheafgen(&["dim", "--e", "-1", "--r", "0", "--xi", "one,zero", "--chi", "1"], None).code, 1);
    assert_eq!(sheafgen(&["hilb", "--qstep", "2"], None).code, 1);
}

#[test]
fn order_bounds_exit_one() {
    let run = sheafgen(&["verify", "--identity", "main", "--order", "0"], None);
    assert_eq!(run.code, 1);
    assert!(run.stderr.contains("order must be >= 1"), "stderr: {}", run.stderr);
    assert_eq!(sheafgen(&["table", "--family", "e-1", "--order", "-2"], None).code, 1);
}

#[test]
fn env_var_supplies_the_default_order() {
    let run = sheafgen(&["hilb", "--format", "json"], Some("2"));
    assert_eq!(run.code, 0);
    let parsed: serde_json::Value = serde_json::from_str(&run.stdout).unwrap();
    assert_eq!(parsed["order"], 2);

    // an explicit flag beats the environment
    let run = sheafgen(&["hilb", "--format", "json", "--order", "3"], Some("2"));
    let parsed: serde_json::Value = serde_json::from_str(&run.stdout).unwrap();
    assert_eq!(parsed["order"], 3);

    // a malformed or out-of-range environment value is an argument error
    assert_eq!(sheafgen(&["hilb"], Some("soon")).code, 1);
    assert_eq!(sheafgen(&["hilb"], Some("0")).code, 1);
}

#[test]
fn undefined_dimension_exits_one() {
    // xi = f0 = 2C0 - g with r = 0 degenerates the dimension formula
    let run = sheafgen(&["dim", "--e", "-1", "--r", "0", "--xi", "2,-1", "--chi", "5"], None);
    assert_eq!(run.code, 1);
    assert!(run.stderr.contains("dimension"), "stderr: {}", run.stderr);
    // unsupported surface invariant
    assert_eq!(sheafgen(&["dim", "--e", "2", "--r", "1", "--xi", "0,0", "--chi", "0"], None).code, 1);
}

#[test]
fn non_integral_transforms_exit_one() {
    // e = -1 needs the doubled ch2 to share the parity of s
    let run = sheafgen(&["fm", "--e", "-1", "--v", "1,1,0,0"], None);
    assert_eq!(run.code, 1);
    assert!(run.stderr.contains("integral"), "stderr: {}", run.stderr);
    // e = 0 needs an even doubled ch2
    assert_eq!(sheafgen(&["fm", "--e", "0", "--v", "0,0,0,1"], None).code, 1);
}

#[test]
fn documented_dimension_examples() {
    let run = sheafgen(&["dim", "--e", "-1", "--r", "0", "--xi", "1,0", "--chi", "1"], None);
    assert_eq!((run.code, run.stdout.trim()), (0, "2"));
    let run = sheafgen(&["dim", "--e", "0", "--r", "2", "--xi", "0,1", "--chi", "0"], None);
    assert_eq!((run.code, run.stdout.trim()), (0, "5"));
}

#[test]
fn verify_all_passes_and_reports() {
    let run = sheafgen(&["verify", "--identity", "all", "--order", "2", "--format", "json"], None);
    assert_eq!(run.code, 0);
    let parsed: serde_json::Value = serde_json::from_str(&run.stdout).unwrap();
    assert_eq!(parsed["schema"], "sheafgen/1");
    assert_eq!(parsed["status"], "PASS");
    let reports = parsed["reports"].as_array().unwrap();
    let names: Vec<&str> = reports.iter().map(|r| r["identity"].as_str().unwrap()).collect();
    assert_eq!(names, ["main", "theta", "r2", "e0", "chain"]);
    for r in reports {
        assert_eq!(r["status"], "PASS");
        assert!(r["wallTimeMs"].is_u64());
        assert!(r.get("firstMismatch").is_none());
    }

    let run = sheafgen(&["verify", "--identity", "theta", "--order", "2", "--format", "csv"], None);
    let mut lines = run.stdout.lines();
    assert_eq!(
        lines.next(),
        Some("identity,order,status,firstMismatchExpQuadrupled,wallTimeMs")
    );
    let row = lines.next().unwrap();
    assert!(row.starts_with("theta,2,PASS,,"), "row: {row}");
}

#[test]
fn table_emits_rows_in_every_format() {
    let run = sheafgen(&["table", "--family", "e0-case1", "--order", "2", "--format", "json"], None);
    assert_eq!(run.code, 0);
    let parsed: serde_json::Value = serde_json::from_str(&run.stdout).unwrap();
    assert_eq!(parsed["family"], "e0-case1");
    let rows = parsed["rows"].as_array().unwrap();
    // q^0, q^(1/2), q^1, q^(3/2): four slots below q^2
    assert_eq!(rows.len(), 4);
    assert_eq!(rows[0]["qExpQuadrupled"], 0);
    assert_eq!(rows[0]["dim"], 1);
    assert_eq!(rows[0]["betti"].as_array().unwrap().len(), 3);

    let run = sheafgen(&["table", "--family", "e0-case1", "--order", "2", "--format", "csv"], None);
    assert_eq!(run.stdout.lines().next(), Some("qExpQuadrupled,dim,euler,betti,hodge,ePoly"));
    assert_eq!(run.stdout.lines().count(), 5);

    let run = sheafgen(&["table", "--family", "e0-case1", "--order", "2"], None);
    assert!(run.stdout.contains("betti 1 2 1"), "pretty output:\n{}", run.stdout);
}

#[test]
fn output_flag_writes_the_report_to_a_file() {
    let dir = std::env::temp_dir().join(format!("sheafgen-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("hilb.json");
    let path_str = path.to_str().unwrap();

    let run = sheafgen(
        &["hilb", "--order", "2", "--format", "json", "--output", path_str],
        None,
    );
    assert_eq!(run.code, 0);
    assert!(run.stdout.is_empty(), "stdout should be empty, got: {}", run.stdout);
    let written = std::fs::read_to_string(&path).unwrap();
    let parsed: serde_json::Value = serde_json::from_str(&written).unwrap();
    assert_eq!(parsed["command"], "hilb");

    let run = sheafgen(&["hilb", "--order", "2", "--format", "json"], None);
    assert_eq!(run.stdout, written);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn hilb_lists_half_steps() {
    let run = sheafgen(&["hilb", "--order", "2", "--qstep", "1/2", "--format", "json"], None);
    let parsed: serde_json::Value = serde_json::from_str(&run.stdout).unwrap();
    assert_eq!(parsed["qstep"], "1/2");
    let exps: Vec<i64> = parsed["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["qExpQuadrupled"].as_i64().unwrap())
        .collect();
    assert_eq!(exps, [0, 2, 4, 6]);
}
