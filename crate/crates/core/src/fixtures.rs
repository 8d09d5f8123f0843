//! Named posets shipped with the crate (also under `fixtures/*.json`).
//!
//! * `chain3`: x0 ⋖ p1 ⋖ p2.
//! * `vee`: x0 ⋖ a, x0 ⋖ b.
//! * `l6`: a 3-chain c1 ⋖ c2 ⋖ c3 over x0 and x0 ⋖ z ⋖ c3. Level, type 2.
//! * `n7`: x0 ⋖ a1 ⋖ a2 ⋖ a3, x0 ⋖ z ⋖ a3, z ⋖ b1 ⋖ b2. Non-level, type 2.
//! * `p1`: two 5-chains a, b over x0 with x0 ⋖ z, z ⋖ a5, z ⋖ b3.
//! * `p2`: three 5-chains a, b, c over x0 with x0 ⋖ z, z ⋖ a5, z ⋖ b4, z ⋖ c3.

use crate::poset::{parse_poset, Poset, PosetDocument};

pub const CHAIN3: &str = include_str!("../fixtures/chain3.json");
pub const VEE: &str = include_str!("../fixtures/vee.json");
pub const L6: &str = include_str!("../fixtures/l6.json");
pub const N7: &str = include_str!("../fixtures/n7.json");
pub const P1: &str = include_str!("../fixtures/p1.json");
pub const P2: &str = include_str!("../fixtures/p2.json");

/// All fixtures as `(name, json)`.
pub const ALL: [(&str, &str); 6] =
    [("chain3", CHAIN3), ("vee", VEE), ("l6", L6), ("n7", N7), ("p1", P1), ("p2", P2)];

fn load(src: &str) -> Poset {
    parse_poset(src).expect("bundled fixture is valid")
}

pub fn chain3() -> Poset {
    load(CHAIN3)
}

pub fn vee() -> Poset {
    load(VEE)
}

pub fn l6() -> Poset {
    load(L6)
}

pub fn n7() -> Poset {
    load(N7)
}

pub fn p1() -> Poset {
    load(P1)
}

pub fn p2() -> Poset {
    load(P2)
}

/// The raw document, including any `expected` block.
pub fn document(src: &str) -> PosetDocument {
    serde_json::from_str(src).expect("bundled fixture is valid JSON")
}

/// Looks a fixture up by name.
pub fn by_name(name: &str) -> Option<Poset> {
    ALL.iter().find(|(n, _)| *n == name).map(|(_, src)| load(src))
}
