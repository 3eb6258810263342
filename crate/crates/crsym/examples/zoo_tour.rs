//! One-line verdict summary for every built-in zoo model.
//!
//! Run with: `cargo run -p crsym --example zoo_tour`

use crsym::cli::zoo::zoo;
use crsym::cli::{build_report, Options};

fn main() {
    let opts = Options::default();
    println!(
        "{:<20} {:>5}  {:<14} {:<8} {:<8} {:>4}  dims",
        "model", "total", "psd", "shape", "gc_zero", "jet"
    );
    for entry in zoo() {
        let model = entry.build();
        let report = build_report(&model, Some(entry.name.to_string()), &opts);
        let grading = report.grading.as_ref().unwrap();
        let verdicts = report.verdicts.as_ref().unwrap();
        let levi = report.pseudoconvexity.as_ref().unwrap();
        let dims: Vec<String> = grading
            .degrees
            .iter()
            .filter(|d| d.dim > 0)
            .map(|d| format!("{}:{}", d.degree, d.dim))
            .collect();
        println!(
            "{:<20} {:>5}  {:<14} {:<8} {:<8} {:>4}  {{{}}}",
            entry.name,
            grading.total_dim,
            levi.status,
            verdicts.grading_shape,
            verdicts.gc_zero,
            verdicts.jet_order,
            dims.join(", ")
        );
    }
}
