use std::fs;
use std::os::unix::fs::PermissionsExt;
use std::path::{Path, PathBuf};

use dsopforge::{build_sop, dsop, verify_dsop, Cover, DsopConfig, Error, FunctionSpec, MinimizerBackend};

fn script(dir: &Path, name: &str, body: &str) -> MinimizerBackend {
    let path: PathBuf = dir.join(name);
    fs::write(&path, format!("#!/bin/sh\n{body}\n")).unwrap();
    fs::set_permissions(&path, fs::Permissions::from_mode(0o755)).unwrap();
    MinimizerBackend::External(path)
}

fn four_cubes() -> FunctionSpec {
    FunctionSpec::completely_specified(Cover::parse(4, &["0-0-", "-1-1", "01--", "1-1-"]).unwrap())
}

#[test]
fn echo_backend_behaves_like_identity() {
    let dir = tempfile::tempdir().unwrap();
    let echo = script(dir.path(), "echo.sh", "cat \"$1\"");
    let f = FunctionSpec::new(Cover::parse(3, &["000", "11-"]).unwrap(), Cover::parse(3, &["001"]).unwrap()).unwrap();
    // the dc row comes back as a dc row and is not part of the SOP
    assert_eq!(build_sop(&f, &echo).unwrap(), Cover::parse(3, &["000", "11-"]).unwrap());

    let cfg = DsopConfig::default().with_backend(echo);
    let d = dsop(&four_cubes(), &cfg).unwrap();
    assert!(verify_dsop(&four_cubes(), &d).unwrap().ok);
    let identity = DsopConfig::default().with_backend(MinimizerBackend::Identity);
    assert_eq!(d, dsop(&four_cubes(), &identity).unwrap());
}

#[test]
fn nonzero_exit_is_a_backend_error() {
    let dir = tempfile::tempdir().unwrap();
    let bad = script(dir.path(), "bad.sh", "echo nope >&2; exit 3");
    let err = build_sop(&four_cubes(), &bad).unwrap_err();
    assert!(matches!(&err, Error::Backend { message, .. } if message.contains("nope")), "{err}");
}

#[test]
fn garbage_output_is_a_backend_error() {
    let dir = tempfile::tempdir().unwrap();
    let junk = script(dir.path(), "junk.sh", "echo '.i 4'; echo '.o 1'; echo 'xx 1'");
    assert!(matches!(build_sop(&four_cubes(), &junk), Err(Error::Backend { .. })));
    let shape = script(dir.path(), "shape.sh", "printf '.i 3\\n.o 1\\n1-- 1\\n.e\\n'");
    assert!(matches!(build_sop(&four_cubes(), &shape), Err(Error::Backend { .. })));
}

#[test]
fn results_leaving_the_care_set_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let greedy = script(dir.path(), "greedy.sh", "printf '.i 4\\n.o 1\\n---- 1\\n.e\\n'");
    let err = build_sop(&four_cubes(), &greedy).unwrap_err();
    assert!(err.to_string().contains("leaves"), "{err}");
    let lazy = script(dir.path(), "lazy.sh", "printf '.i 4\\n.o 1\\n01-- 1\\n.e\\n'");
    let err = build_sop(&four_cubes(), &lazy).unwrap_err();
    assert!(err.to_string().contains("not covered"), "{err}");
}

#[test]
fn missing_executable() {
    let backend = MinimizerBackend::External("/nonexistent/espresso".into());
    assert!(matches!(build_sop(&four_cubes(), &backend), Err(Error::Backend { .. })));
}
