//! Compile and run the C example against the generated header and the
//! built cdylib, verifying the ABI end to end. Skips quietly when no C
//! compiler is available.

use std::path::PathBuf;
use std::process::Command;

fn target_dir() -> PathBuf {
    // tests live in target/<profile>/deps/
    std::env::current_exe()
        .unwrap()
        .parent()
        .unwrap()
        .parent()
        .unwrap()
        .to_path_buf()
}

#[test]
fn c_example_compiles_and_runs() {
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    if Command::new(&cc).arg("--version").output().is_err() {
        eprintln!("skipping: no C compiler ({cc}) available");
        return;
    }

    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let header_dir = manifest.join("include");
    assert!(header_dir.join("mollow.h").exists(), "cbindgen header missing");
    let source = manifest.join("examples/demo.c");
    let lib_dir = target_dir();
    let exe = lib_dir.join("mollow_capi_demo_smoke");

    let compile = Command::new(&cc)
        .arg(&source)
        .arg(format!("-I{}", header_dir.display()))
        .arg(format!("-L{}", lib_dir.display()))
        .arg("-lmollow_capi")
        .arg("-lm")
        .arg("-o")
        .arg(&exe)
        .output()
        .expect("spawn compiler");
    assert!(
        compile.status.success(),
        "C compilation failed:\n{}",
        String::from_utf8_lossy(&compile.stderr)
    );

    let run = Command::new(&exe)
        .env("LD_LIBRARY_PATH", &lib_dir)
        .output()
        .expect("run C demo");
    assert!(
        run.status.success(),
        "C demo failed:\n{}",
        String::from_utf8_lossy(&run.stderr)
    );
    let stdout = String::from_utf8_lossy(&run.stdout);
    assert!(stdout.contains("omega_C"), "unexpected demo output:\n{stdout}");
    assert!(stdout.contains("1.00572"), "prediction value missing:\n{stdout}");
}
