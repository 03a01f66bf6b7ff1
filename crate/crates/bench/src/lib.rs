//! Shared inputs for the criterion benchmarks.

use gr1w_core::{parse_spec, Gr1Spec};

pub const EXT_LIFT: &str = include_str!("../../../benchmarks/ext_lift.gr1");
pub const LIFT: &str = include_str!("../../../benchmarks/lift.gr1");

/// `base` with the units of `extra` appended; both must declare the same variables.
pub fn refined(base: &str, extra: &str) -> Gr1Spec {
    let base = parse_spec(base).expect("benchmark spec parses");
    let extra = parse_spec(extra).expect("benchmark refinement parses");
    base.conjoin_spec(&extra)
        .expect("benchmark variables agree")
}

pub fn lift_with(fair: &str) -> Gr1Spec {
    parse_spec(&format!("{LIFT}env fair GF {fair};")).expect("lift refinement parses")
}
