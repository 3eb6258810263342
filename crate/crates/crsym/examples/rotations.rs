//! Classifying the weight-zero component: the Euler line and rotations.
//!
//! After removing the Euler direction, every remaining weight-zero symmetry
//! of a pseudoconvex nondegenerate model is a rotation: semisimple with
//! purely imaginary spectrum. Both properties are decided symbolically
//! (squarefreeness via exact gcd, spectrum reality via Sturm sequences).
//! The non-pseudoconvex tube shows what a violation looks like.
//!
//! Run with: `cargo run -p crsym --example rotations`

use crsym::analysis::classify_g0;
use crsym::arith::{format_gauss, rat, rat_int};
use crsym::cli::parse::{parse_holo_poly, parse_real_poly};
use crsym::ring::WeightVector;
use crsym::solver::solve_graded;
use crsym::Model;

fn classify(label: &str, model: &Model) {
    let basis = solve_graded(model, &rat_int(0));
    println!("{label}: Im w = {}", model.p().text());
    println!("  weight-0 kernel dimension: {}", basis.len());
    let cls = classify_g0(&basis, model).unwrap();
    for (i, entry) in cls.rotations.iter().enumerate() {
        let rows: Vec<String> = entry
            .linear
            .a
            .iter()
            .map(|r| {
                let cells: Vec<String> = r.iter().map(format_gauss).collect();
                format!("[{}]", cells.join(", "))
            })
            .collect();
        match entry.verdict {
            Some(v) => println!(
                "  rotation {}: A = {}  semisimple={} purely_imaginary={}{}",
                i,
                rows.join(" "),
                v.semisimple,
                v.purely_imaginary,
                if v.real_part_zero {
                    ""
                } else {
                    "  <- VIOLATION"
                }
            ),
            None => println!(
                "  field {}: nonlinear monomials, outside the linear analysis",
                i
            ),
        }
    }
    println!();
}

fn main() {
    // hyperquadric in C^3: the rotation complement is a u(2) worth of fields
    let mu = WeightVector::new(vec![rat(1, 2), rat(1, 2)]).unwrap();
    let q = vec![
        parse_holo_poly("z1", 2).unwrap(),
        parse_holo_poly("z2", 2).unwrap(),
    ];
    classify("hyperquadric", &Model::build_sos(mu, q).unwrap());

    // quartic: a single diagonal rotation next to the Euler line
    let mu = WeightVector::new(vec![rat(1, 4)]).unwrap();
    classify(
        "homogeneous quartic",
        &Model::build_sos(mu, vec![parse_holo_poly("z1^2", 1).unwrap()]).unwrap(),
    );

    // the tube is not pseudoconvex and admits a rotation with real spectrum
    let mu = WeightVector::new(vec![rat(1, 2), rat(1, 4)]).unwrap();
    let p = parse_real_poly("Re(z1) abs2(z2)", 2).unwrap();
    classify("tube (not pseudoconvex)", &Model::validate(mu, p).unwrap());
}
