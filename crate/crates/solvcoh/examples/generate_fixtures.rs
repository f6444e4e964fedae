//! Regenerate the bundled fixture files from the built-in models.
//!
//! Usage: cargo run -p solvcoh --example generate_fixtures [output-dir]

use solvcoh::{fixture, fixtures};

fn main() -> std::io::Result<()> {
    let dir = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "fixtures".to_string());
    std::fs::create_dir_all(&dir)?;
    let specs = [
        fixtures::torus(),
        fixtures::complex_torus(),
        fixtures::heisenberg(),
        fixtures::kodaira_thurston(),
        fixtures::kodaira_thurston_complex(),
        fixtures::iwasawa(),
        fixtures::sec8(),
    ];
    for spec in specs {
        let path = format!("{}/{}.fixture", dir, spec.name);
        std::fs::write(&path, fixture::serialize(&spec))?;
        println!("wrote {}", path);
    }
    Ok(())
}
