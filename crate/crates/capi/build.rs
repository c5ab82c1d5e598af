fn main() {
    let crate_dir = std::env::var("CARGO_MANIFEST_DIR").unwrap();
    let out = std::path::Path::new(&crate_dir).join("include/mc_capi.h");
    std::fs::create_dir_all(out.parent().unwrap()).unwrap();
    let mut config = cbindgen::Config::default();
    config.language = cbindgen::Language::C;
    config.include_guard = Some("MC_CAPI_H".into());
    config.cpp_compat = true;
    config.enumeration.prefix_with_name = true;
    config.documentation = true;
    cbindgen::Builder::new()
        .with_crate(&crate_dir)
        .with_config(config)
        .generate()
        .expect("cbindgen failed")
        .write_to_file(out);
    println!("cargo:rerun-if-changed=src/lib.rs");
}
