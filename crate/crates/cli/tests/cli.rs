use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn machroe(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_machroe"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn list_cases_prints_one_line_per_test() {
    let dir = tempfile::tempdir().unwrap();
    let out = machroe(&["list-cases"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 8);
    for name in ["shear_1d", "uniform_m0.05", "quirk", "dmr", "kelvin_helmholtz"] {
        assert!(text.contains(name), "{name} missing from\n{text}");
    }
}

#[test]
fn run_writes_files_and_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let out = machroe(&["run", "--case", "shear_1d", "--mode", "blend_geo", "--order", "2", "--outdir", "out"], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).contains("completed"));
    let out_dir = dir.path().join("out");
    for name in [
        "shear_1d_blend_geo_ord2_t2.5.dat",
        "shear_1d_blend_geo_ord2_t2.5.vtk",
        "shear_1d_blend_geo_ord2.manifest",
    ] {
        assert!(out_dir.join(name).is_file(), "{name}");
    }
    let manifest = fs::read_to_string(out_dir.join("shear_1d_blend_geo_ord2.manifest")).unwrap();
    assert!(manifest.contains("outcome = completed"));
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("run.cfg"), "case = colliding_1d\nmode = low_diss\nt_end = 1 # short\n").unwrap();
    let out = machroe(&["run", "--config", "run.cfg", "--mode", "high_diss", "--nx", "30"], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let manifest = fs::read_to_string(dir.path().join("colliding_1d_high_diss_ord1.manifest")).unwrap();
    assert!(manifest.contains("mode = high_diss"), "{manifest}");
    assert!(manifest.contains("final_time = 1\n"), "{manifest}");
}

#[test]
fn physical_abort_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let out = machroe(&["run", "--case", "elling", "--mode", "low_diss", "--order", "1"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).contains("ABORTED"));
    let manifest = fs::read_to_string(dir.path().join("elling_low_diss_ord1.manifest")).unwrap();
    assert!(manifest.contains("outcome = aborted"));
    assert!(manifest.contains("abort_cell = "));
}

#[test]
fn usage_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &["run", "--case", "nope"][..],
        &["run", "--case", "shear_1d", "--mode", "fast"],
        &["run", "--case", "shear_1d", "--order", "3"],
        &["run", "--case", "shear_1d", "--cfl", "2"],
        &["run", "--case", "kelvin_helmholtz", "--order", "1"],
        &["run", "--mode", "standard"],
        &["run", "--case", "shear_1d", "--bogus"],
        &["run", "--config", "missing.cfg"],
        &["sweep", "--case", "shear_1d", "--modes", ""],
        &["sweep", "--case", "shear_1d"],
    ] {
        let out = machroe(args, dir.path());
        assert_eq!(out.status.code(), Some(1), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
    assert_eq!(machroe(&["--help"], dir.path()).status.code(), Some(0));
}

#[test]
fn sweep_prints_a_table() {
    let dir = tempfile::tempdir().unwrap();
    let out = machroe(
        &["sweep", "--case", "colliding_1d", "--tend", "2", "--modes", "standard,low_diss", "--orders", "1,2"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(text.contains("case colliding_1d"));
    assert_eq!(fs::read_dir(dir.path()).unwrap().filter(|e| {
        e.as_ref().unwrap().path().extension().is_some_and(|x| x == "manifest")
    }).count(), 4);
}

#[test]
fn verify_passes() {
    let dir = tempfile::tempdir().unwrap();
    let out = machroe(&["verify"], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(!stdout(&out).contains("FAIL"));
}

#[test]
fn repeated_runs_are_byte_identical() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    for dir in [&a, &b] {
        let out = machroe(&["run", "--case", "colliding_2d", "--mode", "blend_arith", "--tend", "2"], dir.path());
        assert_eq!(out.status.code(), Some(0));
    }
    let mut names: Vec<_> = fs::read_dir(a.path()).unwrap().map(|e| e.unwrap().file_name()).collect();
    names.sort();
    assert_eq!(names.len(), 3);
    for n in names {
        assert_eq!(fs::read(a.path().join(&n)).unwrap(), fs::read(b.path().join(&n)).unwrap(), "{n:?}");
    }
}
