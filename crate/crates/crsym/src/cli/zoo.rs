//! Built-in model zoo.
//!
//! Each entry carries the source it is built from (an expression or
//! sum-of-squares factors), plus the expected verdicts that `zoo-run-all`
//! asserts against a fresh run. Models cover the strongly pseudoconvex
//! hyperquadrics, homogeneous and weighted sum-of-squares models, two
//! non-pseudoconvex tube-like controls, and a holomorphically degenerate
//! negative control.

use crate::analysis::GradingShape;
use crate::arith::parse_rat;
use crate::cli::parse::{parse_holo_poly, parse_real_poly};
use crate::model::Model;
use crate::ring::WeightVector;

/// How a zoo model is specified (also echoed in reports).
#[derive(Debug, Clone, Copy)]
pub enum ZooSource {
    Expr(&'static str),
    Sos(&'static [&'static str]),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExpectedPsd {
    Certified,
    Sampled,
    NotPsd,
}

/// Verdicts a zoo run must reproduce. Dimensions are pinned only where a
/// structure theorem (or an independent derivation) fixes them; for the
/// negative controls the golden files freeze the observed grading instead.
#[derive(Debug, Clone)]
pub struct Expectations {
    pub psd: ExpectedPsd,
    pub nondegenerate: bool,
    pub balanced: bool,
    pub jet_order: u8,
    pub shape: GradingShape,
    pub gc_zero: bool,
    /// `(degree, real dimension)` pairs; degrees not listed must be zero.
    pub dims: Option<&'static [(&'static str, usize)]>,
    pub total_dim: Option<usize>,
}

pub struct ZooEntry {
    pub name: &'static str,
    pub description: &'static str,
    pub mu: &'static [&'static str],
    pub source: ZooSource,
    pub expected: Expectations,
}

impl ZooEntry {
    pub fn weight_vector(&self) -> WeightVector {
        WeightVector::new(
            self.mu
                .iter()
                .map(|s| parse_rat(s).expect("zoo weight"))
                .collect(),
        )
        .expect("zoo weights are valid")
    }

    pub fn build(&self) -> Model {
        let mu = self.weight_vector();
        let n = mu.n();
        match self.source {
            ZooSource::Expr(expr) => {
                let p = parse_real_poly(expr, n).expect("zoo expression parses");
                Model::validate(mu, p).expect("zoo model validates")
            }
            ZooSource::Sos(factors) => {
                let q = factors
                    .iter()
                    .map(|s| parse_holo_poly(s, n).expect("zoo factor parses"))
                    .collect();
                Model::build_sos(mu, q).expect("zoo sum of squares validates")
            }
        }
    }
}

/// The built-in models, in report order.
pub fn zoo() -> Vec<ZooEntry> {
    vec![
        ZooEntry {
            name: "hyperquadric1",
            description: "Im w = |z1|^2, the strongly pseudoconvex hyperquadric in C^2",
            mu: &["1/2"],
            source: ZooSource::Sos(&["z1"]),
            expected: Expectations {
                psd: ExpectedPsd::Certified,
                nondegenerate: true,
                balanced: true,
                jet_order: 2,
                shape: GradingShape::Thm11,
                gc_zero: true,
                dims: Some(&[("-1", 1), ("-1/2", 2), ("0", 2), ("1/2", 2), ("1", 1)]),
                total_dim: Some(8),
            },
        },
        ZooEntry {
            name: "hyperquadric2",
            description: "Im w = |z1|^2 + |z2|^2, the strongly pseudoconvex hyperquadric in C^3",
            mu: &["1/2", "1/2"],
            source: ZooSource::Sos(&["z1", "z2"]),
            expected: Expectations {
                psd: ExpectedPsd::Certified,
                nondegenerate: true,
                balanced: true,
                jet_order: 2,
                shape: GradingShape::Thm11,
                gc_zero: true,
                dims: Some(&[("-1", 1), ("-1/2", 4), ("0", 5), ("1/2", 4), ("1", 1)]),
                total_dim: Some(15),
            },
        },
        ZooEntry {
            name: "quartic_1var",
            description: "Im w = |z1|^4, homogeneous sum of squares of degree 4",
            mu: &["1/4"],
            source: ZooSource::Sos(&["z1^2"]),
            expected: Expectations {
                psd: ExpectedPsd::Certified,
                nondegenerate: true,
                balanced: true,
                jet_order: 2,
                shape: GradingShape::Thm53,
                gc_zero: true,
                dims: Some(&[("-1", 1), ("0", 2), ("1", 1)]),
                total_dim: Some(4),
            },
        },
        ZooEntry {
            name: "sos_quartic_2var",
            description: "Im w = |z1^2|^2 + |z1 z2|^2 + |z2^2|^2, homogeneous sum of squares",
            mu: &["1/4", "1/4"],
            source: ZooSource::Sos(&["z1^2", "z1 z2", "z2^2"]),
            expected: Expectations {
                psd: ExpectedPsd::Certified,
                nondegenerate: true,
                balanced: true,
                jet_order: 2,
                shape: GradingShape::Thm53,
                gc_zero: true,
                dims: Some(&[("-1", 1), ("0", 3), ("1", 1)]),
                total_dim: Some(5),
            },
        },
        ZooEntry {
            name: "sos_1_4",
            description: "Im w = |z1|^2 + |z2|^4, weighted sum of squares with kappa = 1",
            mu: &["1/2", "1/4"],
            source: ZooSource::Sos(&["z1", "z2^2"]),
            expected: Expectations {
                psd: ExpectedPsd::Certified,
                nondegenerate: true,
                balanced: true,
                jet_order: 2,
                shape: GradingShape::Thm54,
                gc_zero: true,
                dims: Some(&[("-1", 1), ("-1/2", 2), ("0", 3), ("1/2", 2), ("1", 1)]),
                total_dim: Some(9),
            },
        },
        ZooEntry {
            name: "weighted_kappa2",
            description: "Im w = |z1|^2 + |z2|^2 + |z3|^4, weighted sum of squares with kappa = 2",
            mu: &["1/2", "1/2", "1/4"],
            source: ZooSource::Sos(&["z1", "z2", "z3^2"]),
            expected: Expectations {
                psd: ExpectedPsd::Certified,
                nondegenerate: true,
                balanced: true,
                jet_order: 2,
                shape: GradingShape::Thm54,
                gc_zero: true,
                dims: Some(&[("-1", 1), ("-1/2", 4), ("0", 6), ("1/2", 4), ("1", 1)]),
                total_dim: Some(16),
            },
        },
        ZooEntry {
            name: "quartic_mixed_expr",
            description: "the sos_quartic_2var polynomial declared as a bare expression \
                          (generic provenance, pseudoconvexity by sampling)",
            mu: &["1/4", "1/4"],
            source: ZooSource::Expr("abs2(z1^2) + abs2(z1 z2) + abs2(z2^2)"),
            expected: Expectations {
                psd: ExpectedPsd::Sampled,
                nondegenerate: true,
                balanced: true,
                jet_order: 2,
                shape: GradingShape::Thm11,
                gc_zero: true,
                dims: Some(&[("-1", 1), ("0", 3), ("1", 1)]),
                total_dim: Some(5),
            },
        },
        ZooEntry {
            name: "tube_x1z2",
            description: "Im w = Re(z1) |z2|^2, tube-like and not pseudoconvex",
            mu: &["1/2", "1/4"],
            source: ZooSource::Expr("Re(z1) abs2(z2)"),
            expected: Expectations {
                psd: ExpectedPsd::NotPsd,
                nondegenerate: true,
                balanced: false,
                jet_order: 1,
                shape: GradingShape::Other,
                gc_zero: false,
                dims: None,
                total_dim: None,
            },
        },
        ZooEntry {
            name: "cubic_tube1",
            description: "Im w = z1^2 zb1 + z1 zb1^2 = 2 Re(z1) |z1|^2, not pseudoconvex",
            mu: &["1/3"],
            source: ZooSource::Expr("z1^2 zb1 + z1 zb1^2"),
            expected: Expectations {
                psd: ExpectedPsd::NotPsd,
                nondegenerate: true,
                balanced: false,
                jet_order: 1,
                shape: GradingShape::Other,
                gc_zero: true,
                dims: None,
                total_dim: None,
            },
        },
        ZooEntry {
            name: "degenerate_plane",
            description: "Im w = |z1|^2 in C^3: z2 is absent, holomorphically degenerate",
            mu: &["1/2", "1/2"],
            source: ZooSource::Sos(&["z1"]),
            expected: Expectations {
                psd: ExpectedPsd::Certified,
                nondegenerate: false,
                balanced: true,
                jet_order: 2,
                shape: GradingShape::Other,
                gc_zero: false,
                dims: None,
                total_dim: None,
            },
        },
    ]
}

pub fn find(name: &str) -> Option<ZooEntry> {
    zoo().into_iter().find(|e| e.name == name)
}

/// Golden report committed for each zoo model, embedded at compile time.
pub fn golden_for(name: &str) -> Option<&'static str> {
    match name {
        "hyperquadric1" => Some(include_str!("../../golden/hyperquadric1.json")),
        "hyperquadric2" => Some(include_str!("../../golden/hyperquadric2.json")),
        "quartic_1var" => Some(include_str!("../../golden/quartic_1var.json")),
        "sos_quartic_2var" => Some(include_str!("../../golden/sos_quartic_2var.json")),
        "sos_1_4" => Some(include_str!("../../golden/sos_1_4.json")),
        "weighted_kappa2" => Some(include_str!("../../golden/weighted_kappa2.json")),
        "quartic_mixed_expr" => Some(include_str!("../../golden/quartic_mixed_expr.json")),
        "tube_x1z2" => Some(include_str!("../../golden/tube_x1z2.json")),
        "cubic_tube1" => Some(include_str!("../../golden/cubic_tube1.json")),
        "degenerate_plane" => Some(include_str!("../../golden/degenerate_plane.json")),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zoo_builds_and_validates() {
        for entry in zoo() {
            let m = entry.build();
            assert_eq!(m.n(), entry.weight_vector().n(), "{}", entry.name);
        }
    }

    #[test]
    fn zoo_names_are_unique() {
        let mut names: Vec<_> = zoo().iter().map(|e| e.name).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), zoo().len());
    }
}
