//! Computing the full graded symmetry algebra of a model.
//!
//! The solver enumerates the admissible weighted degrees, imposes the
//! tangency condition as an exact rational linear system at each degree, and
//! returns kernel bases normalized to primitive integer coordinates.
//!
//! Run with: `cargo run -p crsym --example full_grading`

use crsym::arith::{format_rat, rat};
use crsym::cli::parse::parse_real_poly;
use crsym::ring::WeightVector;
use crsym::solver::{degree_menu, full_grading};
use crsym::Model;

fn main() {
    let mu = WeightVector::new(vec![rat(1, 2)]).unwrap();
    let p = parse_real_poly("abs2(z1)", 1).unwrap();
    let model = Model::validate(mu, p).unwrap();

    let menu = degree_menu(model.mu());
    let degrees: Vec<String> = menu.degrees().iter().map(format_rat).collect();
    println!("model: Im w = {}", model.p().text());
    println!("admissible degrees: {}", degrees.join(", "));
    println!();

    let report = full_grading(&model);
    for c in &report.components {
        println!(
            "degree {:>4}: real dimension {}",
            format_rat(&c.degree),
            c.dim
        );
        for b in &c.basis {
            println!("    {}", b.field.text());
        }
    }
    println!();
    println!("total real dimension: {}", report.total_dim);
    println!(
        "rigid intermediate fields: {}, non-rigid intermediate fields: {}",
        if report.flags.has_gc {
            "present"
        } else {
            "none"
        },
        if report.flags.has_gn {
            "present"
        } else {
            "none"
        },
    );
}
