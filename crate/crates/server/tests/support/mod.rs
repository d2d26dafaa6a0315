#![allow(dead_code)]

use std::path::PathBuf;

/// Compares `actual` with a committed file; `UPDATE_GOLDEN=1` rewrites it.
pub fn golden(relative: &str, actual: &str) {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(relative);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, actual).unwrap();
        return;
    }
    let expected = std::fs::read_to_string(&path)
        .unwrap_or_else(|e| panic!("{}: {e} (run with UPDATE_GOLDEN=1 to create)", path.display()));
    assert!(
        expected == actual,
        "{} is out of date; rerun with UPDATE_GOLDEN=1 if the change is intended\n--- actual ---\n{actual}",
        path.display()
    );
}
