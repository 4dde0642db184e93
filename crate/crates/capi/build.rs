#[cfg(feature = "gen-header")]
extern crate cbindgen;

fn main() {
    #[cfg(feature = "gen-header")]
    {
        let crate_dir = std::env::var("CARGO_MANIFEST_DIR").unwrap();
        let bindings = cbindgen::generate(&crate_dir).unwrap();
        bindings.write_to_file(format!("{crate_dir}/include/bnstab.h"));
    }
}
