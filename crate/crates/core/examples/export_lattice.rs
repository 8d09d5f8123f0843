//! The Hibi ring generators: one monomial per nonempty order ideal of P.

use hibi::fixtures;

pub fn run_example() -> String {
    let mut out = String::new();
    for (name, poset) in [("chain3", fixtures::chain3()), ("vee", fixtures::vee()), ("n7", fixtures::n7())] {
        let ep = poset.extend();
        let ideals = ep.poset_ideals(1 << 20).unwrap();
        out += &format!("{name}: {} generators\n", ideals.len());
        for ideal in ideals.iter().take(4) {
            let monomial: Vec<String> = ep.names_of(ideal).iter().map(|x| format!("T_{x}")).collect();
            out += &format!("  {}\n", monomial.join("*"));
        }
    }
    out
}

fn main() {
    print!("{}", run_example());
}
