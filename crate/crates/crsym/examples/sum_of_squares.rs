//! Gradings of sum-of-squares models.
//!
//! Homogeneous sums of squares of degree above two are three-graded: only
//! the components at -1, 0 and 1 survive, and the extremes are
//! one-dimensional. Weighted sums of squares additionally carry components
//! at ±1/2 whose dimension is twice the number of weights equal to 1/2.
//!
//! Run with: `cargo run -p crsym --example sum_of_squares`

use crsym::arith::{format_rat, parse_rat};
use crsym::cli::parse::parse_holo_poly;
use crsym::ring::WeightVector;
use crsym::solver::full_grading;
use crsym::Model;

fn show(label: &str, mu: &[&str], factors: &[&str]) {
    let wv = WeightVector::new(mu.iter().map(|s| parse_rat(s).unwrap()).collect()).unwrap();
    let n = wv.n();
    let q = factors
        .iter()
        .map(|s| parse_holo_poly(s, n).unwrap())
        .collect();
    let model = Model::build_sos(wv, q).unwrap();
    let report = full_grading(&model);
    let dims: Vec<String> = report
        .components
        .iter()
        .filter(|c| c.dim > 0)
        .map(|c| format!("{}:{}", format_rat(&c.degree), c.dim))
        .collect();
    println!("{label}");
    println!("  Im w = {}", model.p().text());
    println!("  kappa = {}", model.mu().kappa());
    println!(
        "  nonzero components {{{}}}, total {}",
        dims.join(", "),
        report.total_dim
    );
    println!();
}

fn main() {
    show("homogeneous quartic, one variable:", &["1/4"], &["z1^2"]);
    show(
        "homogeneous quartic, two variables:",
        &["1/4", "1/4"],
        &["z1^2", "z1 z2", "z2^2"],
    );
    show("weighted, kappa = 1:", &["1/2", "1/4"], &["z1", "z2^2"]);
    show(
        "hyperquadric (degree two, for contrast):",
        &["1/2", "1/2"],
        &["z1", "z2"],
    );
}
