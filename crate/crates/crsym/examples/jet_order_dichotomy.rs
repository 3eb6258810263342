//! Balance, jet-determination order and the Re z_l decomposition.
//!
//! A model is balanced when every monomial has holomorphic and
//! antiholomorphic weighted length 1/2 (equivalently, the imaginary Euler
//! field is a symmetry); local automorphisms are then determined by their
//! 2-jets, and by their 1-jets otherwise. The dichotomy classifier reports
//! whether P is linear or quadratic in Re z_l with z_l-free coefficients.
//!
//! Run with: `cargo run -p crsym --example jet_order_dichotomy`

use crsym::analysis::{gn_dichotomy, structure_verdict};
use crsym::cli::zoo::zoo;
use crsym::fields::imaginary_euler;
use crsym::solver::full_grading;

fn main() {
    let cap = crsym::arith::rat_int(1);
    for entry in zoo() {
        let model = entry.build();
        let info = model.balance_info();
        let etilde_tangent = model
            .tangency(&imaginary_euler(model.mu()))
            .unwrap()
            .is_zero();
        let report = full_grading(&model);
        let levi = model.pseudoconvexity(100, 1);
        let nondeg = model.holomorphic_nondegeneracy(&cap);
        let verdict = structure_verdict(&report, &model, &levi, &nondeg);
        let forms: Vec<String> = gn_dichotomy(&model)
            .iter()
            .map(|f| format!("{f:?}"))
            .collect();
        println!("{}", entry.name);
        println!("  Im w = {}", model.p().text());
        println!(
            "  balanced: {} (imaginary Euler field tangent: {}), kappa = {}",
            info.balanced, etilde_tangent, info.kappa
        );
        println!("  jet order: {}", verdict.jet_order);
        println!("  dichotomy by variable: {}", forms.join(", "));
        println!();
    }
}
