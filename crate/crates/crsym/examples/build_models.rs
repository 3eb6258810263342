//! Building and validating model hypersurfaces Im w = P(z, zbar).
//!
//! A model needs weights 0 < mu_n <= ... <= mu_1 <= 1/2 and a defining
//! polynomial that is weighted homogeneous of degree one, real-valued and
//! free of pluriharmonic terms. Validation lists every violated invariant.
//!
//! Run with: `cargo run -p crsym --example build_models`

use crsym::arith::rat;
use crsym::cli::parse::{parse_holo_poly, parse_real_poly};
use crsym::ring::WeightVector;
use crsym::Model;

fn main() {
    // the hyperquadric Im w = |z1|^2, weights (1/2)
    let mu = WeightVector::new(vec![rat(1, 2)]).unwrap();
    let p = parse_real_poly("abs2(z1)", 1).unwrap();
    let model = Model::validate(mu, p).unwrap();
    println!("valid: Im w = {}", model.p().text());

    // sum-of-squares construction: P = |z1|^2 + |z2|^4 from Q = [z1, z2^2]
    let mu = WeightVector::new(vec![rat(1, 2), rat(1, 4)]).unwrap();
    let q = vec![
        parse_holo_poly("z1", 2).unwrap(),
        parse_holo_poly("z2^2", 2).unwrap(),
    ];
    let model = Model::build_sos(mu, q).unwrap();
    println!("valid: Im w = {} (sum of squares)", model.p().text());

    // a pluriharmonic term is rejected with the offending monomial named
    let mu = WeightVector::new(vec![rat(1, 2)]).unwrap();
    let p = parse_real_poly("z1^2 + zb1^2", 1).unwrap();
    match Model::validate(mu, p) {
        Err(e) => println!("rejected: {e}"),
        Ok(_) => unreachable!(),
    }

    // wrong weights make the polynomial inhomogeneous
    let mu = WeightVector::new(vec![rat(1, 4)]).unwrap();
    let p = parse_real_poly("abs2(z1)", 1).unwrap();
    match Model::validate(mu, p) {
        Err(e) => println!("rejected: {e}"),
        Ok(_) => unreachable!(),
    }

    // sum-of-squares factors must have weighted degree exactly 1/2
    let mu = WeightVector::new(vec![rat(1, 2)]).unwrap();
    match Model::build_sos(mu, vec![parse_holo_poly("1", 1).unwrap()]) {
        Err(e) => println!("rejected: {e}"),
        Ok(_) => unreachable!(),
    }
}
