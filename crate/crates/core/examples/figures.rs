//! Writes the five reference density plots as SVG into a directory (default `figures/`).
//!
//! ```text
//! cargo run --example figures -- out/
//! ```

use std::path::Path;

use hermite_equilibrium::cli::figure;

pub fn write_figures(dir: &Path) {
    std::fs::create_dir_all(dir).unwrap();
    for id in 1..=5 {
        let path = dir.join(format!("figure{id}.svg"));
        std::fs::write(&path, figure(id, 200).unwrap().render()).unwrap();
        println!("wrote {}", path.display());
    }
}

#[allow(dead_code)]
pub fn main() {
    let dir = std::env::args().nth(1).unwrap_or_else(|| "figures".into());
    write_figures(Path::new(&dir));
}
