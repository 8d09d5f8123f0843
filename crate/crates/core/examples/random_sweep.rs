//! Audits a batch of random posets against every property suite.

use std::collections::BTreeMap;

use hibi::{audit, random_poset, Budgets};

pub fn run_example() -> String {
    let budgets = Budgets::default();
    let mut types: BTreeMap<usize, usize> = BTreeMap::new();
    let mut failures = 0;
    let mut level = 0;
    for seed in 0..60 {
        let p = random_poset(2 + (seed % 8) as usize, 0.35, seed);
        let a = audit(&p, None, &budgets).unwrap();
        *types.entry(a.cm_type).or_default() += 1;
        level += usize::from(a.level);
        if !a.passed() {
            failures += 1;
        }
    }
    format!("60 posets, {level} level, types {types:?}, {failures} failed\n")
}

fn main() {
    print!("{}", run_example());
}
