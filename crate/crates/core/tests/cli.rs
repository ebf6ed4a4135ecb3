use std::fs;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hydro2d"))
}

#[test]
fn table1_writes_the_free_atom_rows() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("table1.csv");
    let status = bin().args(["table1", "--out"]).arg(&out).status().unwrap();
    assert!(status.success());
    let text = fs::read_to_string(&out).unwrap();
    assert!(text.lines().any(|l| l == "1s,0.1250,1.5326,16.0000,1.5000,2.0000,2.2989"), "{text}");
    assert!(text.lines().any(|l| l.starts_with("2s,2.3750,0.2902,1.7777,58.5000,")));
}

#[test]
fn usage_errors_exit_with_one() {
    assert_eq!(bin().arg("frobnicate").status().unwrap().code(), Some(1));
    let dir = tempfile::tempdir().unwrap();
    let run = |args: &[&str]| bin().arg("sweep").args(args).arg("--out").arg(dir.path()).status().unwrap().code();
    assert_eq!(run(&["--states", ""]), Some(1));
    assert_eq!(run(&["--r0-min", "2", "--r0-max", "1"]), Some(1));
    assert_eq!(run(&["--spacing", "cubic"]), Some(1));
    assert_eq!(run(&["--states", "2,2"]), Some(1));
    assert_eq!(bin().arg("--help").status().unwrap().code(), Some(0));
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    fs::write(&cfg, "# small run\nstates = 1,0\nr0_min = 1\nr0_max = 5\npoints = 7\nspacing = linear\nemit_plot_data = true\n")
        .unwrap();
    let out = dir.path().join("out");
    let status = bin()
        .args(["sweep", "--config"])
        .arg(&cfg)
        .args(["--points", "3", "--jobs", "1", "--out"])
        .arg(&out)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    let csv = fs::read_to_string(out.join("sweep.csv")).unwrap();
    assert_eq!(csv.lines().count(), 4, "{csv}");
    assert!(csv.starts_with("n,m,r0,alpha_opt,energy,v_pos,f_pos,cr_pos,v_mom,f_mom,cr_mom,pos_norm_residual,mom_norm_residual\n"));
    let echo = fs::read_to_string(out.join("sweep_config.txt")).unwrap();
    assert!(echo.contains("points = 3") && echo.contains("spacing = linear"), "{echo}");
    let fig1 = fs::read_to_string(out.join("fig1_E_n1m0.dat")).unwrap();
    assert_eq!(fig1.lines().count(), 3);
    assert_eq!(fs::read_to_string(out.join("sweep_errors.csv")).unwrap(), "n,m,r0,error\n");
}

#[test]
fn unwritable_output_exits_with_three() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    fs::write(&blocker, "").unwrap();
    let code = bin()
        .args(["sweep", "--states", "1,0", "--points", "2", "--out"])
        .arg(blocker.join("sub"))
        .status()
        .unwrap()
        .code();
    assert_eq!(code, Some(3));
    let code = bin().args(["table1", "--out"]).arg(blocker.join("t.csv")).status().unwrap().code();
    assert_eq!(code, Some(3));
}

#[test]
fn missing_config_file_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    let code = bin()
        .args(["sweep", "--config"])
        .arg(dir.path().join("absent.cfg"))
        .status()
        .unwrap()
        .code();
    assert_eq!(code, Some(3));
}
