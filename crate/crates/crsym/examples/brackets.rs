//! Lie brackets of holomorphic fields and the grading relations.
//!
//! The Euler field E acts as the grading element: [E, X] = d X for a
//! degree-d eigenfield, and bracketing the translation d/dw with the top
//! symmetry recovers E itself.
//!
//! Run with: `cargo run -p crsym --example brackets`

use crsym::arith::{format_rat, rat};
use crsym::fields::{euler, half_weight_pair, third_symmetry, w_field};
use crsym::ring::WeightVector;

fn main() {
    let mu = WeightVector::new(vec![rat(1, 2), rat(1, 4)]).unwrap();
    let e = euler(&mu);
    let w = w_field(2);
    let g1 = third_symmetry(&mu);
    let [h1, hi] = half_weight_pair(2, 1);

    println!("E  = {}", e.text());
    println!("W  = {}", w.text());
    println!("G1 = {}", g1.text());
    println!();
    println!(
        "[E, W]  = {}   (= -W: W has degree -1)",
        e.bracket(&w).unwrap().text()
    );
    println!("[W, G1] = {}   (= E)", w.bracket(&g1).unwrap().text());
    println!(
        "[E, G1] = {}   (= G1: degree 1)",
        e.bracket(&g1).unwrap().text()
    );
    println!("[E, X]  = {}   (= -1/2 X for the half-weight field X)", {
        e.bracket(&h1).unwrap().text()
    });

    // degrees add under brackets
    for (name, x, y) in [("[X_1, G1]", &h1, &g1), ("[X_i, G1]", &hi, &g1)] {
        let b = x.bracket(y).unwrap();
        let dx = x.graded_degree(&mu).unwrap();
        let dy = y.graded_degree(&mu).unwrap();
        let db = b.graded_degree(&mu).unwrap();
        println!(
            "{name}: degree {} + {} = {}  -> {}",
            format_rat(&dx),
            format_rat(&dy),
            format_rat(&db),
            b.text()
        );
    }

    // antisymmetry and the Jacobi identity, exactly
    let jac = |x: &crsym::VField, y: &crsym::VField, z: &crsym::VField| {
        x.bracket(&y.bracket(z).unwrap())
            .unwrap()
            .add(&y.bracket(&z.bracket(x).unwrap()).unwrap())
            .unwrap()
            .add(&z.bracket(&x.bracket(y).unwrap()).unwrap())
            .unwrap()
    };
    println!();
    println!("[G1, G1] = {}", g1.bracket(&g1).unwrap().text());
    println!("Jacobi identity on (E, W, G1): {}", jac(&e, &w, &g1).text());
    println!(
        "Jacobi identity on (X_1, X_i, G1): {}",
        jac(&h1, &hi, &g1).text()
    );
}
