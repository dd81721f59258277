//! Writes the built-in demonstration problems as canonical problem files.

use std::error::Error;
use std::path::PathBuf;

use stepode::cli::canonical_json;
use stepode::demos;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    write_to(std::env::temp_dir())
}

fn write_to(dir: PathBuf) -> Result<(), Box<dyn Error>> {
    for (name, problem) in [
        ("demo41.json", demos::demo41()),
        ("demo44.json", demos::demo44()),
    ] {
        let path = dir.join(name);
        std::fs::write(&path, canonical_json(&problem, Some(20)))?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    match std::env::args().nth(1) {
        Some(dir) => write_to(PathBuf::from(dir)),
        None => run_example(),
    }
}
