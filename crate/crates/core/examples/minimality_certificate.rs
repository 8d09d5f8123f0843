//! Decides minimality of valuations in T(P) with the U/D closure and prints
//! the certificate: a condition-N sequence for a generator, a lowering ideal
//! otherwise.

use std::collections::BTreeMap;

use hibi::{fixtures, Valuation};

pub fn run_example() -> String {
    let ep = fixtures::n7().extend();
    let named: BTreeMap<String, i64> = [("x0", 5), ("a1", 4), ("a2", 3), ("a3", 2), ("z", 3), ("b1", 2), ("b2", 1)]
        .into_iter()
        .map(|(k, v)| (k.to_owned(), v))
        .collect();
    let nu = Valuation::from_named(&ep, &named).unwrap();
    let lifted = Valuation::from_values(
        &ep,
        (0..ep.len()).map(|x| if x == ep.top() { 0 } else { nu.get(x) + 1 }).collect(),
    )
    .unwrap();

    let mut out = String::new();
    for (label, v) in [("nu", &nu), ("nu+1", &lifted)] {
        let c = v.ud_closure(&ep).unwrap();
        let layers: Vec<Vec<String>> = c.layers.iter().map(|l| ep.names_of(l)).collect();
        out += &format!("{label}: degree {} layers {layers:?}\n", v.degree(&ep));
        if let Some(w) = &c.witness {
            out += &format!("  minimal, witnessed by {}\n", w.describe(&ep));
        }
        if let Some(ideal) = &c.reduction_ideal {
            let lower = v.ideal_reduce(&ep, ideal).unwrap();
            out += &format!(
                "  not minimal: lower on {:?} to degree {}\n",
                ep.names_of(ideal),
                lower.degree(&ep)
            );
        }
    }
    out
}

fn main() {
    print!("{}", run_example());
}
