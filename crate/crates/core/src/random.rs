use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::poset::Poset;

/// A random poset on `n` elements (including `x0`), deterministic in
/// `(n, density, seed)`.
///
/// Samples a DAG on `v1 … v{n-1}` with each edge `vi → vj` (i < j) present
/// with probability `density`, transitively reduces it, and puts `x0` under
/// every minimal node.
pub fn random_poset(n: usize, density: f64, seed: u64) -> Poset {
    let n = n.max(1);
    let m = n - 1;
    let density = density.clamp(0.0, 1.0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edge = vec![vec![false; m]; m];
    for (i, row) in edge.iter_mut().enumerate() {
        for cell in row.iter_mut().skip(i + 1) {
            *cell = rng.gen_bool(density);
        }
    }
    // Reachability; indices already form a topological order.
    let mut reach = edge.clone();
    for i in (0..m).rev() {
        for j in i + 1..m {
            if edge[i][j] {
                for k in j + 1..m {
                    if reach[j][k] {
                        reach[i][k] = true;
                    }
                }
            }
        }
    }
    let name = |i: usize| format!("v{}", i + 1);
    let mut covers: Vec<(String, String)> = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            if edge[i][j] && !(i + 1..j).any(|k| reach[i][k] && reach[k][j]) {
                covers.push((name(i), name(j)));
            }
        }
    }
    for j in 0..m {
        if !(0..j).any(|i| edge[i][j]) {
            covers.push(("x0".to_owned(), name(j)));
        }
    }
    let mut elements = vec!["x0".to_owned()];
    elements.extend((0..m).map(name));
    Poset::new(&elements, "x0", &covers).expect("construction yields a valid poset")
}
