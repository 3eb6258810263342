//! Golden-report regression tests: every zoo model's JSON report must be
//! byte-identical to the committed golden file, and the canonical text forms
//! must survive a parse round trip.
//!
//! Regenerate goldens after an intentional change with
//! `cargo run -p crsym -- zoo-run-all --write-golden crates/crsym/golden`.

use crsym::cli::zoo::{golden_for, zoo};
use crsym::cli::{build_report, parse, report_to_json, Options};

#[test]
fn zoo_reports_match_committed_goldens() {
    let opts = Options::default();
    for entry in zoo() {
        let model = entry.build();
        let report = build_report(&model, Some(entry.name.to_string()), &opts);
        let fresh = report_to_json(&report);
        let golden = golden_for(entry.name)
            .unwrap_or_else(|| panic!("no golden committed for {}", entry.name));
        assert_eq!(golden, fresh, "golden drift for {}", entry.name);
    }
}

#[test]
fn golden_reports_have_schema_one() {
    for entry in zoo() {
        let golden = golden_for(entry.name).unwrap();
        let v: serde_json::Value = serde_json::from_str(golden).expect("golden is valid JSON");
        assert_eq!(v["schema"], 1, "{}", entry.name);
        assert_eq!(v["name"], entry.name);
        assert!(v["validation"]["valid"].as_bool().unwrap());
    }
}

#[test]
fn defining_polynomials_round_trip_through_text() {
    for entry in zoo() {
        let model = entry.build();
        let text = model.p().text();
        let reparsed = parse::parse_real_poly(&text, model.n()).expect("canonical text reparses");
        assert_eq!(&reparsed, model.p(), "round trip for {}", entry.name);
    }
}

#[test]
fn sos_factors_round_trip_through_text() {
    for entry in zoo() {
        let model = entry.build();
        if let crsym::model::Provenance::SumOfSquares(q) = model.provenance() {
            for factor in q {
                let text = factor.text();
                let reparsed =
                    parse::parse_holo_poly(&text, model.n()).expect("factor text reparses");
                assert_eq!(&reparsed, factor, "factor round trip for {}", entry.name);
            }
        }
    }
}
