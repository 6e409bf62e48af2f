//! Regenerates include/fdclab.h when built with the `generate-header`
//! feature. The committed header is authoritative for normal builds, so
//! downstream users do not need cbindgen installed.

fn main() {
    println!("cargo:rerun-if-changed=src/lib.rs");
    println!("cargo:rerun-if-changed=cbindgen.toml");
    #[cfg(feature = "generate-header")]
    {
        let crate_dir = std::env::var("CARGO_MANIFEST_DIR").expect("manifest dir");
        cbindgen::generate(&crate_dir)
            .expect("cbindgen failed")
            .write_to_file(format!("{crate_dir}/include/fdclab.h"));
    }
}
