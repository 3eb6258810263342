//! The explicit symmetry constructors and the tangency operator.
//!
//! A holomorphic field X is an infinitesimal automorphism of
//! Im w = P(z, zbar) exactly when its tangency residue is the zero
//! polynomial. The residue of a non-symmetry shows which monomials
//! obstruct it.
//!
//! Run with: `cargo run -p crsym --example known_symmetries`

use crsym::arith::{format_rat, rat};
use crsym::cli::parse::parse_holo_poly;
use crsym::fields::w_field;
use crsym::ring::WeightVector;
use crsym::Model;

fn main() {
    // weighted sum of squares Im w = |z1|^2 + |z2|^4
    let mu = WeightVector::new(vec![rat(1, 2), rat(1, 4)]).unwrap();
    let q = vec![
        parse_holo_poly("z1", 2).unwrap(),
        parse_holo_poly("z2^2", 2).unwrap(),
    ];
    let model = Model::build_sos(mu, q).unwrap();

    println!("model: Im w = {}", model.p().text());
    println!("constructor fields and their tangency residues:");
    for nf in model.known_fields() {
        let residue = model.tangency(&nf.field).unwrap();
        println!(
            "  {:10} degree {:>4}   {}",
            nf.name,
            format_rat(&nf.degree),
            if residue.is_zero() {
                "residue = 0 (symmetry)".to_string()
            } else {
                residue.text()
            }
        );
        println!("             {}", nf.field.text());
    }

    // a field that is NOT a symmetry: d/dz1 on the hyperquadric
    let mu = WeightVector::new(vec![rat(1, 2)]).unwrap();
    let p = crsym::cli::parse::parse_real_poly("abs2(z1)", 1).unwrap();
    let hq = Model::validate(mu, p).unwrap();
    let dz = crsym::VField::new(
        vec![crsym::ring::HoloPoly::one(1)],
        crsym::ring::HoloPoly::zero(1),
    )
    .unwrap();
    let residue = hq.tangency(&dz).unwrap();
    println!("\nd/dz1 on Im w = |z1|^2 -> residue {}", residue.text());

    // d/dw is a symmetry of every model
    println!(
        "d/dw   on Im w = |z1|^2 -> residue {}",
        hq.tangency(&w_field(1)).unwrap().text()
    );
}
