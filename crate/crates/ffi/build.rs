use std::path::PathBuf;

fn main() {
    let dir = PathBuf::from(std::env::var("CARGO_MANIFEST_DIR").expect("set by cargo"));
    println!("cargo:rerun-if-changed=src/lib.rs");
    println!("cargo:rerun-if-changed=cbindgen.toml");
    let config = cbindgen::Config::from_file(dir.join("cbindgen.toml")).expect("valid cbindgen.toml");
    let bindings = cbindgen::generate_with_config(&dir, config).expect("header generation");
    let header = dir.join("include").join("cayley_embed.h");
    let mut text = Vec::new();
    bindings.write(&mut text);
    // rewrite only on change so the checked-in header does not churn
    if std::fs::read(&header).ok().as_deref() != Some(&text[..]) {
        std::fs::write(&header, text).expect("writable include dir");
    }
}
