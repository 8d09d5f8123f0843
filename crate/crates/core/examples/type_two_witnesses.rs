//! Type-2 rings recognised from the poset alone, without enumerating generators.

use hibi::classify::{level_type2_witness, nonlevel_type2_witness};
use hibi::{classify, fixtures, Budgets};

pub fn run_example() -> String {
    let mut out = String::new();
    for (name, poset) in [("l6", fixtures::l6()), ("n7", fixtures::n7()), ("p1", fixtures::p1())] {
        let ep = poset.extend();
        let report = classify(&ep, &Budgets::default()).unwrap();
        let level = level_type2_witness(&ep).map(|z| ep.name(z).to_owned());
        let nonlevel = nonlevel_type2_witness(&ep).map(|(x, y)| format!("{} < {}", ep.name(x), ep.name(y)));
        out += &format!(
            "{name}: level={} type={:?} level witness={level:?} non-level witness={nonlevel:?}\n",
            report.level, report.cm_type
        );
    }
    out
}

fn main() {
    print!("{}", run_example());
}
