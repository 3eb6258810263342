//! Levi forms and exact pseudoconvexity verdicts.
//!
//! Sum-of-squares models are certified structurally (their Levi form is a
//! Gram matrix). Generic models are probed at coordinate axis points and
//! seeded rational points; a violation is an exact negative principal minor
//! and comes with the witness point.
//!
//! Run with: `cargo run -p crsym --example levi_pseudoconvexity`

use crsym::arith::{format_gauss, format_rat, rat};
use crsym::cli::parse::parse_real_poly;
use crsym::model::LeviStatus;
use crsym::ring::WeightVector;
use crsym::Model;

fn main() {
    // not pseudoconvex: Im w = Re(z1) |z2|^2
    let mu = WeightVector::new(vec![rat(1, 2), rat(1, 4)]).unwrap();
    let p = parse_real_poly("Re(z1) abs2(z2)", 2).unwrap();
    let tube = Model::validate(mu, p).unwrap();

    println!("Levi form of Im w = {}:", tube.p().text());
    for row in tube.levi_form() {
        let cells: Vec<String> = row.iter().map(|e| e.text()).collect();
        println!("  [ {} ]", cells.join(" , "));
    }

    let verdict = tube.pseudoconvexity(100, 1);
    match &verdict.status {
        LeviStatus::NotPsd {
            witness,
            minor,
            minor_value,
        } => {
            let pt: Vec<String> = witness.iter().map(format_gauss).collect();
            println!(
                "verdict: not psd at z = ({}); principal minor {:?} = {}",
                pt.join(", "),
                minor,
                format_rat(minor_value)
            );
        }
        other => println!("verdict: {other:?}"),
    }

    // certified: the same polynomial shape as a sum of squares
    let mu = WeightVector::new(vec![rat(1, 4), rat(1, 4)]).unwrap();
    let q = ["z1^2", "z1 z2", "z2^2"]
        .iter()
        .map(|s| crsym::cli::parse::parse_holo_poly(s, 2).unwrap())
        .collect();
    let sos = Model::build_sos(mu, q).unwrap();
    let verdict = sos.pseudoconvexity(100, 1);
    println!("Im w = {}: {:?}", sos.p().text(), verdict.status);

    // the same polynomial declared as a bare expression is only sampled
    let mu = WeightVector::new(vec![rat(1, 4), rat(1, 4)]).unwrap();
    let p = parse_real_poly("abs2(z1^2) + abs2(z1 z2) + abs2(z2^2)", 2).unwrap();
    let generic = Model::validate(mu, p).unwrap();
    let verdict = generic.pseudoconvexity(100, 1);
    println!(
        "same P, generic provenance: {:?} after {} exact sample points",
        verdict.status, verdict.samples_checked
    );
}
