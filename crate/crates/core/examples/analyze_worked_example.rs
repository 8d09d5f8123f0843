//! Classifies the two posets of the worked example: both are non-level even
//! though deleting the floating element leaves a pure poset of rank 6.

use hibi::{classify, fixtures, Budgets};

pub fn run_example() -> String {
    let mut out = String::new();
    for (name, poset) in [("p1", fixtures::p1()), ("p2", fixtures::p2())] {
        let ep = poset.extend();
        let report = classify(&ep, &Budgets::default()).expect("fixture is consistent");
        let keep: Vec<usize> = (0..ep.len())
            .filter(|x| !report.floating.iter().any(|f| f == ep.name(*x)))
            .collect();
        let sub = ep.subposet(&keep).unwrap();
        out += &format!(
            "{name}: r={} r_max={} level={} type={} degrees={:?} floating={:?} pure_without_F={} rank_without_F={}\n",
            report.r,
            report.r_max,
            report.level,
            report.cm_type.unwrap(),
            report.degree_histogram.unwrap(),
            report.floating,
            sub.is_pure(),
            sub.height(),
        );
    }
    out
}

fn main() {
    print!("{}", run_example());
}
