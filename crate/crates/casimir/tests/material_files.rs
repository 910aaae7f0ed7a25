//! File-level tests of the material database: shipped set round trips,
//! directory overlays, and tabulated CSV companions.

use std::path::Path;

use casimir::materials::{
    load_material, save_material, MaterialDb, MaterialKind, MaterialRecord,
};

fn shipped_dir() -> std::path::PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("materials")
}

#[test]
fn shipped_set_round_trips_bit_exactly() {
    let tmp = tempfile::tempdir().unwrap();
    let mut checked = 0;
    for entry in std::fs::read_dir(shipped_dir()).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_none_or(|e| e != "mat") {
            continue;
        }
        let original = load_material(&path).unwrap();
        let copy_path = tmp.path().join(path.file_name().unwrap());
        save_material(&original, &copy_path).unwrap();
        let reloaded = load_material(&copy_path).unwrap();
        assert_eq!(original, reloaded, "{}", path.display());
        checked += 1;
    }
    assert_eq!(checked, 7, "expected the full shipped set");
}

#[test]
fn tabulated_record_round_trips_with_csv() {
    let tmp = tempfile::tempdir().unwrap();
    let record = MaterialRecord {
        name: "sampled".into(),
        kind: MaterialKind::Tabulated {
            table_csv: "sampled_table.csv".into(),
            rows: vec![
                (0.0, 11.66),
                (1e13, 11.6599),
                (1e15, 10.0 / 3.0),
                (1e17, 1.0000321),
            ],
        },
    };
    let path = tmp.path().join("sampled.mat");
    save_material(&record, &path).unwrap();
    assert!(tmp.path().join("sampled_table.csv").exists());
    let reloaded = load_material(&path).unwrap();
    assert_eq!(record, reloaded);

    // And the reloaded record resolves to an evaluable model.
    let mut db = MaterialDb::empty();
    db.insert(reloaded);
    let model = db.resolve("sampled").unwrap();
    assert_eq!(model.eval(0.0).unwrap(), 11.66);
}

#[test]
fn directory_overlay_replaces_builtins() {
    let tmp = tempfile::tempdir().unwrap();
    std::fs::write(
        tmp.path().join("si.mat"),
        "[material]\nname = si\nkind = constant\neps = 5.0\n",
    )
    .unwrap();
    std::fs::write(
        tmp.path().join("mystuff.mat"),
        "[material]\nname = mystuff\nkind = constant\neps = 2.5\n",
    )
    .unwrap();
    // Non-.mat files are ignored.
    std::fs::write(tmp.path().join("notes.txt"), "not a material").unwrap();

    let mut db = MaterialDb::builtin();
    let loaded = db.overlay_dir(tmp.path()).unwrap();
    assert_eq!(loaded, 2);
    assert_eq!(db.resolve("si").unwrap().eval(1e15).unwrap(), 5.0);
    assert_eq!(db.resolve("mystuff").unwrap().eval(0.0).unwrap(), 2.5);
    // Untouched builtins survive.
    assert_eq!(db.resolve("ethanol").unwrap().eval(0.0).unwrap(), 25.692);
    // si_lit now augments the overridden base.
    let lit = db.resolve("si_lit").unwrap();
    assert!(lit.eval(1e15).unwrap() > 5.0);
}

#[test]
fn missing_file_and_bad_dir_report_io_errors() {
    assert!(load_material("/nonexistent/nothing.mat").is_err());
    let mut db = MaterialDb::empty();
    assert!(db.overlay_dir("/nonexistent/dir").is_err());
}
