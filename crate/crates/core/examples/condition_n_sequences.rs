//! Enumerates condition-N sequences, finds r_max and builds the two extremal
//! generators from a maximizing sequence.

use hibi::condn::{enumerate_condn, maximizing_sequences, r_of_sequence};
use hibi::{compute_rmax, fixtures, nu_down, nu_up};

pub fn run_example() -> String {
    let ep = fixtures::n7().extend();
    let mut out = String::new();
    for s in enumerate_condn(&ep, 1_000_000).unwrap() {
        out += &format!("{:<24} r = {}\n", s.describe(&ep), r_of_sequence(&ep, &s).unwrap());
    }
    let (rmax, _) = compute_rmax(&ep, 1_000_000).unwrap();
    out += &format!("r = {}, r_max = {rmax}\n", ep.global_rank());
    for s in maximizing_sequences(&ep, rmax, 1_000_000).unwrap() {
        let down = nu_down(&ep, &s).unwrap();
        let up = nu_up(&ep, &s, rmax).unwrap();
        let show = |v: &hibi::Valuation| {
            ep.base().map(|x| format!("{}={}", ep.name(x), v.get(x))).collect::<Vec<_>>().join(" ")
        };
        out += &format!("{}\n  down: {}\n  up:   {}\n", s.describe(&ep), show(&down), show(&up));
    }
    out
}

fn main() {
    print!("{}", run_example());
}
