//! Condition-N sequences y1 > x1 < y2 > x2 < ⋯ < yt > xt, their scores
//! r(y1, x1, …, yt, xt), the invariant r_max, and the extremal valuations
//! ν↓ and ν↑ built from a sequence.

use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{HibiError, Result};
use crate::poset::ExtendedPoset;
use crate::valuation::Valuation;

/// An alternating sequence `y1, x1, …, yt, xt` (possibly empty).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct CondNSequence {
    pub ys: Vec<usize>,
    pub xs: Vec<usize>,
}

/// JSON form: `{"ys": ["a3"], "xs": ["z"], "value": 5}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceRecord {
    pub ys: Vec<String>,
    pub xs: Vec<String>,
    pub value: i64,
}

impl CondNSequence {
    pub fn new(ys: Vec<usize>, xs: Vec<usize>) -> Self {
        assert_eq!(ys.len(), xs.len(), "ys and xs must pair up");
        Self { ys, xs }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_names<S: AsRef<str>>(ep: &ExtendedPoset, pairs: &[(S, S)]) -> Result<Self> {
        let mut ys = Vec::with_capacity(pairs.len());
        let mut xs = Vec::with_capacity(pairs.len());
        for (y, x) in pairs {
            ys.push(ep.index_of(y.as_ref())?);
            xs.push(ep.index_of(x.as_ref())?);
        }
        Ok(Self { ys, xs })
    }

    /// t, the number of (y, x) pairs.
    pub fn len(&self) -> usize {
        self.ys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ys.is_empty()
    }

    /// `y1, x1, y2, x2, …`; the order used for lexicographic tie-breaks.
    pub fn interleaved(&self) -> Vec<usize> {
        self.ys.iter().zip(&self.xs).flat_map(|(&y, &x)| [y, x]).collect()
    }

    /// The same chain read in the order dual: `y'_i = x_{t+1-i}`, `x'_i = y_{t+1-i}`.
    pub fn dual(&self) -> Self {
        Self {
            ys: self.xs.iter().rev().copied().collect(),
            xs: self.ys.iter().rev().copied().collect(),
        }
    }

    pub fn to_record(&self, ep: &ExtendedPoset, value: i64) -> SequenceRecord {
        SequenceRecord { ys: ep.names_of(&self.ys), xs: ep.names_of(&self.xs), value }
    }

    pub fn describe(&self, ep: &ExtendedPoset) -> String {
        if self.is_empty() {
            return "()".to_owned();
        }
        let parts: Vec<String> =
            self.ys.iter().zip(&self.xs).map(|(&y, &x)| format!("{}, {}", ep.name(y), ep.name(x))).collect();
        format!("({})", parts.join(", "))
    }
}

/// Checks conditions 1–3; errors only for elements outside the base poset.
pub fn is_condition_n(ep: &ExtendedPoset, seq: &CondNSequence) -> Result<bool> {
    for &e in seq.ys.iter().chain(&seq.xs) {
        if e >= ep.len() || e == ep.top() {
            let name = ep.names().get(e).cloned().unwrap_or_else(|| format!("#{e}"));
            return Err(HibiError::UnknownElement(name));
        }
    }
    Ok(violation(ep, seq).is_none())
}

fn violation(ep: &ExtendedPoset, seq: &CondNSequence) -> Option<String> {
    if seq.ys.len() != seq.xs.len() {
        return Some("ys and xs differ in length".to_owned());
    }
    let t = seq.len();
    if t == 0 {
        return None;
    }
    if seq.xs[0] == ep.bottom() {
        return Some(format!("x1 is {}", ep.name(ep.bottom())));
    }
    for i in 0..t {
        if !ep.lt(seq.xs[i], seq.ys[i]) {
            return Some(format!("y{} = {} is not above x{} = {}", i + 1, ep.name(seq.ys[i]), i + 1, ep.name(seq.xs[i])));
        }
        if i + 1 < t && !ep.lt(seq.xs[i], seq.ys[i + 1]) {
            return Some(format!("x{} = {} is not below y{} = {}", i + 1, ep.name(seq.xs[i]), i + 2, ep.name(seq.ys[i + 1])));
        }
    }
    for i in 0..t {
        for j in i + 1..t {
            if ep.leq(seq.xs[j], seq.ys[i]) {
                return Some(format!("y{} = {} >= x{} = {}", i + 1, ep.name(seq.ys[i]), j + 1, ep.name(seq.xs[j])));
            }
        }
    }
    None
}

fn require_condition_n(ep: &ExtendedPoset, seq: &CondNSequence) -> Result<()> {
    if !is_condition_n(ep, seq)? {
        let why = violation(ep, seq).unwrap_or_default();
        return Err(HibiError::NotConditionN(why));
    }
    Ok(())
}

/// Σ (rank[x_{i−1}, y_i] − rank[x_i, y_i]) + rank[x_t, ∞] with x_0 = x0, unchecked.
fn score(ep: &ExtendedPoset, seq: &CondNSequence) -> i64 {
    let mut prev = ep.bottom();
    let mut sum = 0;
    for (&y, &x) in seq.ys.iter().zip(&seq.xs) {
        sum += ep.r(prev, y) - ep.r(x, y);
        prev = x;
    }
    sum + ep.r(prev, ep.top())
}

/// r(y1, x1, …, yt, xt). The empty sequence scores r.
pub fn r_of_sequence(ep: &ExtendedPoset, seq: &CondNSequence) -> Result<i64> {
    require_condition_n(ep, seq)?;
    Ok(score(ep, seq))
}

fn sequence_guard(limit: u64) -> HibiError {
    HibiError::SizeGuard {
        what: "condition-N sequence search (partial sequences visited)".to_owned(),
        limit,
        hint: "--max-sequences".to_owned(),
    }
}

struct Walker<'a> {
    ep: &'a ExtendedPoset,
    base: Vec<usize>,
    visited: &'a AtomicU64,
    limit: u64,
}

impl Walker<'_> {
    fn tick(&self) -> Result<()> {
        if self.visited.fetch_add(1, Ordering::Relaxed) >= self.limit {
            return Err(sequence_guard(self.limit));
        }
        Ok(())
    }

    /// Pairs (y, x) that may follow a sequence ending in `last_x` with the given ys.
    fn extensions(&self, last_x: usize, ys: &[usize]) -> Vec<(usize, usize)> {
        let ep = self.ep;
        let mut out = Vec::new();
        for &y in &self.base {
            if !ep.lt(last_x, y) {
                continue;
            }
            for &x in &self.base {
                if x == ep.bottom() || !ep.lt(x, y) {
                    continue;
                }
                if ys.iter().any(|&yk| ep.leq(x, yk)) {
                    continue;
                }
                out.push((y, x));
            }
        }
        out
    }

    /// Preorder walk below `seq`, children in (y, x) name order.
    fn walk(&self, seq: &mut CondNSequence, partial: i64, visit: &mut dyn FnMut(&CondNSequence, i64)) -> Result<()> {
        self.tick()?;
        let last = seq.xs.last().copied().unwrap_or(self.ep.bottom());
        visit(seq, partial + self.ep.r(last, self.ep.top()));
        for (y, x) in self.extensions(last, &seq.ys) {
            let step = self.ep.r(last, y) - self.ep.r(x, y);
            seq.ys.push(y);
            seq.xs.push(x);
            self.walk(seq, partial + step, visit)?;
            seq.ys.pop();
            seq.xs.pop();
        }
        Ok(())
    }
}

/// Runs `visit` on every condition-N sequence below each first pair, in
/// parallel over first pairs; results come back in first-pair order.
fn par_walk<T: Send>(
    ep: &ExtendedPoset,
    max_sequences: u64,
    init: impl Fn() -> T + Sync,
    visit: impl Fn(&mut T, &CondNSequence, i64) + Sync,
) -> Result<(T, Vec<T>)> {
    let visited = AtomicU64::new(0);
    let walker = Walker { ep, base: ep.base().collect(), visited: &visited, limit: max_sequences };
    walker.tick()?;
    let mut root = init();
    visit(&mut root, &CondNSequence::empty(), ep.r(ep.bottom(), ep.top()));
    let firsts = walker.extensions(ep.bottom(), &[]);
    let branches: Vec<Result<T>> = firsts
        .par_iter()
        .map(|&(y, x)| {
            let mut acc = init();
            let mut seq = CondNSequence::new(vec![y], vec![x]);
            let step = ep.r(ep.bottom(), y) - ep.r(x, y);
            walker.walk(&mut seq, step, &mut |s, v| visit(&mut acc, s, v))?;
            Ok(acc)
        })
        .collect();
    let branches = branches.into_iter().collect::<Result<Vec<T>>>()?;
    Ok((root, branches))
}

/// Every condition-N sequence, the empty one first, in lexicographic order of
/// `y1, x1, y2, x2, …` by name.
pub fn enumerate_condn(ep: &ExtendedPoset, max_sequences: u64) -> Result<Vec<CondNSequence>> {
    let (root, branches) = par_walk(ep, max_sequences, Vec::new, |acc: &mut Vec<CondNSequence>, s, _| acc.push(s.clone()))?;
    Ok(root.into_iter().chain(branches.into_iter().flatten()).collect())
}

/// r_max and the lexicographically least sequence attaining it.
pub fn compute_rmax(ep: &ExtendedPoset, max_sequences: u64) -> Result<(i64, CondNSequence)> {
    let keep_first_max = |acc: &mut Option<(i64, CondNSequence)>, s: &CondNSequence, v: i64| {
        if acc.as_ref().is_none_or(|(best, _)| v > *best) {
            *acc = Some((v, s.clone()));
        }
    };
    let (root, branches) = par_walk(ep, max_sequences, || None, keep_first_max)?;
    let mut best = root.expect("the empty sequence is always visited");
    for (v, s) in branches.into_iter().flatten() {
        if v > best.0 {
            best = (v, s);
        }
    }
    Ok(best)
}

/// All sequences attaining `rmax`.
pub fn maximizing_sequences(ep: &ExtendedPoset, rmax: i64, max_sequences: u64) -> Result<Vec<CondNSequence>> {
    let (root, branches) = par_walk(ep, max_sequences, Vec::new, |acc: &mut Vec<CondNSequence>, s, v| {
        if v == rmax {
            acc.push(s.clone());
        }
    })?;
    Ok(root.into_iter().chain(branches.into_iter().flatten()).collect())
}

/// μ↓(y_i) for i = 1..=t+1, with y_{t+1} = ∞ scoring 0.
pub fn mu_down(ep: &ExtendedPoset, seq: &CondNSequence) -> Vec<i64> {
    let t = seq.len();
    let y_at = |i: usize| if i == t { ep.top() } else { seq.ys[i] };
    let mut mu = vec![0i64; t + 1];
    for i in (0..t).rev() {
        let x = seq.xs[i];
        mu[i] = mu[i + 1] - ep.r(x, seq.ys[i]) + ep.r(x, y_at(i + 1));
    }
    mu
}

/// ν↓(z) = max{rank[z, y_i] + μ↓(y_i) | z ≤ y_i}, with y_{t+1} = ∞.
pub fn nu_down(ep: &ExtendedPoset, seq: &CondNSequence) -> Result<Valuation> {
    require_condition_n(ep, seq)?;
    let mu = mu_down(ep, seq);
    let t = seq.len();
    let ys: Vec<usize> = seq.ys.iter().copied().chain([ep.top()]).collect();
    let values = (0..ep.len())
        .map(|z| {
            (0..=t)
                .filter(|&i| ep.leq(z, ys[i]))
                .map(|i| ep.r(z, ys[i]) + mu[i])
                .max()
                .expect("∞ lies above every element")
        })
        .collect();
    Valuation::from_values(ep, values)
}

/// ν↑(z) = min{μ↑(x_i) − rank[x_i, z] | x_i ≤ z} over i = 0..=t, before
/// setting the top to 0. The top entry equals `rmax − r(seq)`.
pub fn nu_up_raw(ep: &ExtendedPoset, seq: &CondNSequence, rmax: i64) -> Result<Vec<i64>> {
    require_condition_n(ep, seq)?;
    let value = score(ep, seq);
    if rmax < value {
        return Err(HibiError::RmaxTooSmall { rmax, value });
    }
    let t = seq.len();
    let xs: Vec<usize> = [ep.bottom()].into_iter().chain(seq.xs.iter().copied()).collect();
    let mut mu = vec![rmax; t + 1];
    for i in 1..=t {
        mu[i] = mu[i - 1] - ep.r(xs[i - 1], seq.ys[i - 1]) + ep.r(xs[i], seq.ys[i - 1]);
    }
    Ok((0..ep.len())
        .map(|z| {
            (0..=t)
                .filter(|&i| ep.leq(xs[i], z))
                .map(|i| mu[i] - ep.r(xs[i], z))
                .min()
                .expect("x0 lies below every element")
        })
        .collect())
}

/// ν↑ as a valuation (value 0 at ∞).
pub fn nu_up(ep: &ExtendedPoset, seq: &CondNSequence, rmax: i64) -> Result<Valuation> {
    let mut values = nu_up_raw(ep, seq, rmax)?;
    values[ep.top()] = 0;
    Valuation::from_values(ep, values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn seq(ep: &ExtendedPoset, pairs: &[(&str, &str)]) -> CondNSequence {
        CondNSequence::from_names(ep, pairs).unwrap()
    }

    /// Every alternating tuple of length ≤ 2t filtered by the definition.
    fn naive_condn(ep: &ExtendedPoset, max_t: usize) -> Vec<CondNSequence> {
        let base: Vec<usize> = ep.base().collect();
        let mut out = vec![CondNSequence::empty()];
        let mut frontier = vec![CondNSequence::empty()];
        for _ in 0..max_t {
            let mut next = Vec::new();
            for s in &frontier {
                for &y in &base {
                    for &x in &base {
                        let mut c = s.clone();
                        c.ys.push(y);
                        c.xs.push(x);
                        next.push(c);
                    }
                }
            }
            out.extend(next.iter().filter(|s| is_condition_n(ep, s).unwrap()).cloned());
            frontier = next;
        }
        out
    }

    #[test]
    fn condition_n_checks() {
        let ep = fixtures::n7().extend();
        assert!(is_condition_n(&ep, &CondNSequence::empty()).unwrap());
        assert!(is_condition_n(&ep, &seq(&ep, &[("a3", "z")])).unwrap());
        assert!(!is_condition_n(&ep, &seq(&ep, &[("b2", "b1"), ("a3", "z")])).unwrap());
        let top = CondNSequence::new(vec![ep.top()], vec![ep.bottom()]);
        assert!(matches!(is_condition_n(&ep, &top), Err(HibiError::UnknownElement(_))));
        assert!(matches!(
            r_of_sequence(&ep, &seq(&ep, &[("a3", "x0")])),
            Err(HibiError::NotConditionN(_))
        ));
    }

    #[test]
    fn sequence_values() {
        for (_, src) in fixtures::ALL {
            let ep = crate::poset::parse_poset(src).unwrap().extend();
            assert_eq!(r_of_sequence(&ep, &CondNSequence::empty()).unwrap(), ep.global_rank() as i64);
        }
        let ep = fixtures::n7().extend();
        assert_eq!(r_of_sequence(&ep, &seq(&ep, &[("a3", "z")])).unwrap(), 5);
        assert_eq!(r_of_sequence(&ep, &seq(&ep, &[("a3", "z"), ("b2", "b1")])).unwrap(), 5);
    }

    #[test]
    fn enumeration_matches_naive_filter() {
        let ep = fixtures::chain3().extend();
        let all = enumerate_condn(&ep, 1000).unwrap();
        assert_eq!(all, vec![CondNSequence::empty(), seq(&ep, &[("p2", "p1")])]);
        assert_eq!(enumerate_condn(&fixtures::vee().extend(), 1000).unwrap().len(), 1);

        for p in [fixtures::n7(), fixtures::l6(), fixtures::chain3()] {
            let ep = p.extend();
            let mut fast = enumerate_condn(&ep, 1_000_000).unwrap();
            let t_max = fast.iter().map(CondNSequence::len).max().unwrap();
            let mut slow = naive_condn(&ep, t_max + 1);
            let key = |s: &CondNSequence| s.interleaved();
            let sorted = {
                let mut c = fast.clone();
                c.sort_by_key(key);
                c
            };
            assert_eq!(fast, sorted, "enumeration is lexicographic");
            fast.sort_by_key(key);
            slow.sort_by_key(key);
            assert_eq!(fast, slow);
        }
        let ep = fixtures::n7().extend();
        let all = enumerate_condn(&ep, 1_000_000).unwrap();
        assert!(all.contains(&seq(&ep, &[("a3", "z")])));
        assert!(all.contains(&seq(&ep, &[("a3", "z"), ("b2", "b1")])));
        assert_eq!(all.len(), 15);
    }

    #[test]
    fn rmax_of_fixtures() {
        let ep = fixtures::chain3().extend();
        assert_eq!(compute_rmax(&ep, 1000).unwrap(), (3, CondNSequence::empty()));
        let ep = fixtures::n7().extend();
        assert_eq!(compute_rmax(&ep, 1000).unwrap(), (5, seq(&ep, &[("a2", "a1"), ("a3", "z")])));
        assert_eq!(r_of_sequence(&ep, &seq(&ep, &[("a3", "z")])).unwrap(), 5);
        let ep = fixtures::p1().extend();
        assert_eq!(compute_rmax(&ep, 1_000_000).unwrap().0, 8);
        assert_eq!(r_of_sequence(&ep, &seq(&ep, &[("a5", "z")])).unwrap(), 8);
        assert!(matches!(compute_rmax(&ep, 5), Err(HibiError::SizeGuard { .. })));
    }

    #[test]
    fn extremal_valuations_on_n7() {
        let ep = fixtures::n7().extend();
        let s = seq(&ep, &[("a3", "z")]);
        assert_eq!(mu_down(&ep, &s), vec![2, 0]);
        let down = nu_down(&ep, &s).unwrap();
        // a1 a2 a3 b1 b2 x0 z ∞
        assert_eq!(down.values(), &[4, 3, 2, 2, 1, 5, 3, 0]);
        let up = nu_up(&ep, &s, 5).unwrap();
        assert_eq!(up, down);
        assert!(down.is_minimal(&ep).unwrap());
        assert!(matches!(nu_up(&ep, &s, 4), Err(HibiError::RmaxTooSmall { .. })));
    }

    #[test]
    fn empty_sequence_valuations() {
        let ep = fixtures::n7().extend();
        assert_eq!(nu_down(&ep, &CondNSequence::empty()).unwrap(), Valuation::nu_zero(&ep));
        let up = nu_up_raw(&ep, &CondNSequence::empty(), 5).unwrap();
        for z in 0..ep.len() {
            assert_eq!(up[z], 5 - ep.r(ep.bottom(), z));
        }
        let ep = fixtures::chain3().extend();
        assert_eq!(nu_up(&ep, &CondNSequence::empty(), 3).unwrap(), Valuation::nu_zero(&ep));
    }

    #[test]
    fn p1_maximizers_give_degree_8_generators() {
        let ep = fixtures::p1().extend();
        let (rmax, witness) = compute_rmax(&ep, 1_000_000).unwrap();
        let down = nu_down(&ep, &witness).unwrap();
        assert_eq!(down.degree(&ep), rmax);
        assert!(down.is_minimal(&ep).unwrap());
        let up = nu_up(&ep, &witness, rmax).unwrap();
        assert_eq!(up.degree(&ep), rmax);
        assert!(up.is_minimal(&ep).unwrap());
    }

    #[test]
    fn records() {
        let ep = fixtures::n7().extend();
        let rec = seq(&ep, &[("a3", "z")]).to_record(&ep, 5);
        assert_eq!(serde_json::to_string(&rec).unwrap(), r#"{"ys":["a3"],"xs":["z"],"value":5}"#);
    }
}
