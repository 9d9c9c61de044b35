//! Full verdict on a spec file, printed as a text report.
//!
//! ```text
//! cargo run --release --example verdict -- crates/core/specs/conforming-n8.toml
//! ```

use gost_alt::report::{verdict_sections, Report};
use gost_alt::specfile::SpecFile;
use gost_alt::verify::{full_verdict, VerifyOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/specs/conforming-n8.toml").into());
    let file = SpecFile::load(&path)?;
    let v = full_verdict(&file.cipher()?, &VerifyOptions::default())?;
    let mut report = Report::new(vec![("spec".into(), path)]);
    report.sections = verdict_sections(&v);
    report.conclusion = Some(v.conclusion.name().into());
    print!("{}", report.to_text());
    Ok(())
}
