//! Parsing defining polynomials from expression strings.
//!
//! Run with: `cargo run -p crsym --example parse_expressions`

use crsym::cli::parse::{parse_holo_poly, parse_real_poly};

fn main() {
    // abs2(q) expands to q * conj(q); juxtaposition multiplies.
    for (expr, n) in [
        ("abs2(z1)", 1),
        ("abs2(z1) + abs2(z2^2)", 2),
        ("Re(z1) abs2(z2)", 2),
        ("1/2 z1 zb2^2 + 1/2 z2^2 zb1", 2),
    ] {
        let p = parse_real_poly(expr, n).unwrap();
        println!("{expr:32} -> {}", p.text());
    }

    // holomorphic polynomials (sum-of-squares factors) may not contain zb
    let q = parse_holo_poly("z1^2 + i z1 z2", 2).unwrap();
    println!("{:32} -> {}", "z1^2 + i z1 z2", q.text());

    // errors carry the byte position of the offending token
    for bad in ["z3 + z1", "abs2(z1", "(z1 + zb1)/2", "z1^2"] {
        match parse_real_poly(bad, 2) {
            Err(e) => println!("{bad:32} -> error: {e}"),
            Ok(p) => println!("{bad:32} -> {}", p.text()),
        }
    }
}
