use hibi::{fixtures, random_poset, Poset};

/// Random posets with |P| ≤ 9, weighted towards the sizes where non-level
/// rings appear, followed by the small fixtures.
pub fn corpus() -> Vec<(String, Poset)> {
    let mut out = Vec::new();
    for n in 1..=9usize {
        for d in [0.2, 0.35, 0.5, 0.7] {
            for seed in 0..8u64 {
                out.push((format!("random n={n} d={d} seed={seed}"), random_poset(n, d, seed)));
            }
        }
    }
    for seed in 100..500u64 {
        let (n, d) = [(8, 0.5), (9, 0.25), (9, 0.35)][(seed % 3) as usize];
        out.push((format!("random n={n} d={d} seed={seed}"), random_poset(n, d, seed)));
    }
    for name in ["chain3", "vee", "l6", "n7"] {
        out.push((name.to_owned(), fixtures::by_name(name).unwrap()));
    }
    out
}
