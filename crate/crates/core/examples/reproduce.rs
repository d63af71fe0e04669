//! Run every clustering method on the bundled sample corpus and print the
//! comparison table.
//!
//!     cargo run --example reproduce -- [OUT_DIR]

use std::path::PathBuf;

fn main() -> fpcluster::Result<()> {
    let out = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("fpcluster-sample"));
    let table = fpcluster::fixture::reproduce(&out)?;
    print!("{table}");
    println!("results written to {}", out.display());
    Ok(())
}
