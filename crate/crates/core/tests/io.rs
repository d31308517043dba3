use std::fs;

use machroe::cases::{make_case, Quantity};
use machroe::config::{parse_config, Overrides};
use machroe::error::{ConfigError, Error};
use machroe::euler::{GasModel, PrimitiveState};
use machroe::grid::{Field2D, Order};
use machroe::output::{read_field, read_slice_scatter, write_field, write_slice_scatter, RunManifest};
use machroe::roe::ViscosityMode;
use machroe::runner::{execute, RunRequest};

const GAS: GasModel = GasModel { gamma: 1.4 };

fn wavy() -> Field2D {
    Field2D::from_primitive(7, 4, (-1.0, 0.5), (2.5, 2.5), &GAS, |_, _, x, y| {
        PrimitiveState::new(1.0 + 0.3 * x.sin(), 0.1 * y, -1.0 / 3.0, 3.0 + 0.5 * (x * y).sin())
    })
    .unwrap()
}

#[test]
fn slice_scatter_round_trip_is_exact() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.dat");
    let field = wavy();
    write_slice_scatter(&field, Quantity::Entropy, "wavy", 0.1 + 0.2, &GAS, &path).unwrap();
    let back = read_slice_scatter(&path).unwrap();
    assert_eq!(back.time, 0.1 + 0.2);
    assert_eq!(back.case, "wavy");
    assert_eq!(back.x.len(), 7);
    assert_eq!(back.values.len(), 4);
    for j in 0..4 {
        for i in 0..7 {
            assert_eq!(back.values[j][i], Quantity::Entropy.evaluate(&field.cell(i, j), &GAS).unwrap());
        }
    }
}

#[test]
fn structured_field_round_trip_is_exact() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("f.vtk");
    let field = wavy();
    write_field(&field, &Quantity::ALL, "wavy", &GAS, &path).unwrap();
    let back = read_field(&path).unwrap();
    assert_eq!(back.dimensions, (8, 5));
    assert_eq!(back.origin, (-1.0, 0.5));
    assert_eq!(back.arrays.len(), Quantity::ALL.len());
    let rho = back.array("density").unwrap();
    let rho_v = back.array("rho_v").unwrap();
    for (k, (_, _, q)) in field.interior().enumerate() {
        assert_eq!(rho[k], q.rho);
        assert_eq!(rho_v[k], q.my);
    }
}

#[test]
fn malformed_files_are_format_errors() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.vtk");
    fs::write(&path, "# vtk DataFile Version 3.0\nnot really\n").unwrap();
    assert!(matches!(read_field(&path), Err(Error::Format { .. })));
    assert!(matches!(read_slice_scatter(&dir.path().join("missing.dat")), Err(Error::Io { .. })));
}

#[test]
fn config_text_and_errors() {
    let o = parse_config("# sweep base\ncase = quirk, mode = blend_arith\norder = 2\nphi = 4.5 # trailing\n")
        .unwrap();
    assert_eq!(o.case.as_deref(), Some("quirk"));
    assert_eq!(o.mode, Some(ViscosityMode::BlendArithmetic));
    assert_eq!(o.order, Some(Order::Second));
    assert_eq!(o.phi, Some(4.5));

    match parse_config("case = shear_1d\n\nbogus = 3\n") {
        Err(ConfigError::Parse { line, text, .. }) => {
            assert_eq!(line, 3);
            assert_eq!(text, "bogus = 3");
        }
        other => panic!("{other:?}"),
    }
    assert!(matches!(parse_config("order = 3"), Err(ConfigError::Parse { line: 1, .. })));
    assert!(matches!(parse_config("phi"), Err(ConfigError::Parse { .. })));

    let cli = Overrides { phi: Some(6.0), ..Overrides::default() };
    assert_eq!(o.clone().merge(cli).phi, Some(6.0));
    assert_eq!(o.merge(Overrides::default()).phi, Some(4.5));
}

#[test]
fn run_writes_snapshots_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let o = Overrides {
        case: Some("colliding_1d".into()),
        mode: Some(ViscosityMode::HighDiss),
        t_end: Some(1.0),
        output_times: Some(vec![0.5, 0.25]),
        outdir: Some(dir.path().to_path_buf()),
        ..Overrides::default()
    };
    let report = execute(&RunRequest::resolve(&o).unwrap()).unwrap();
    let names: Vec<String> = report
        .files
        .iter()
        .map(|p| p.file_name().unwrap().to_string_lossy().into_owned())
        .collect();
    assert_eq!(
        names,
        [
            "colliding_1d_high_diss_ord1_t0.25.dat",
            "colliding_1d_high_diss_ord1_t0.25.vtk",
            "colliding_1d_high_diss_ord1_t0.5.dat",
            "colliding_1d_high_diss_ord1_t0.5.vtk",
            "colliding_1d_high_diss_ord1_t1.dat",
            "colliding_1d_high_diss_ord1_t1.vtk",
            "colliding_1d_high_diss_ord1.manifest",
        ]
    );
    let text = fs::read_to_string(report.files.last().unwrap()).unwrap();
    let manifest = RunManifest {
        entries: text
            .lines()
            .map(|l| {
                let (k, v) = l.split_once(" = ").unwrap();
                (k.to_string(), v.to_string())
            })
            .collect(),
    };
    assert_eq!(manifest.get("outcome"), Some("completed"));
    assert_eq!(manifest.get("mode"), Some("high_diss"));
    assert_eq!(manifest.get("final_time"), Some("1"));
    assert_eq!(manifest.render(), text);

    let slice = read_slice_scatter(&dir.path().join("colliding_1d_high_diss_ord1_t1.dat")).unwrap();
    assert_eq!(slice.quantity, make_case("colliding_1d").unwrap().quantity.name());
    let last = report.field.cell(3, 0);
    assert_eq!(slice.values[0][3], Quantity::Density.evaluate(&last, &GAS).unwrap());
}
