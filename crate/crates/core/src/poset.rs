//! Finite posets with a unique minimal element, the extension P⁺ by a top
//! element, interval ranks and purity.
//!
//! Elements are addressed by `usize` indices. Indices follow the name order
//! of the elements, so sorting by index is sorting by name; the synthetic top
//! `∞` always takes the last index.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::check::Expected;
use crate::error::{HibiError, Result};

/// Display name of the adjoined top element. Never a valid input name.
pub const TOP_NAME: &str = "∞";

/// The JSON input document: `{"elements": [...], "min": "x0", "covers": [[a, b], ...]}`.
///
/// `expected` is an optional block of known results used by `hibi check`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PosetDocument {
    pub elements: Vec<String>,
    pub min: String,
    pub covers: Vec<[String; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<Expected>,
}

/// A validated finite poset with unique minimal element `x0`, given by its
/// cover relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset {
    names: Vec<String>,
    index: HashMap<String, usize>,
    covers: Vec<(usize, usize)>,
    x0: usize,
}

fn valid_name(name: &str) -> bool {
    !name.is_empty() && name.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_')
}

/// Parses and validates a poset document.
pub fn parse_poset(document: &str) -> Result<Poset> {
    let doc: PosetDocument = serde_json::from_str(document)?;
    Poset::from_document(&doc)
}

impl Poset {
    pub fn new<S: AsRef<str>>(elements: &[S], min: &str, covers: &[(S, S)]) -> Result<Self> {
        let doc = PosetDocument {
            elements: elements.iter().map(|s| s.as_ref().to_owned()).collect(),
            min: min.to_owned(),
            covers: covers
                .iter()
                .map(|(a, b)| [a.as_ref().to_owned(), b.as_ref().to_owned()])
                .collect(),
            expected: None,
        };
        Self::from_document(&doc)
    }

    pub fn from_document(doc: &PosetDocument) -> Result<Self> {
        for name in &doc.elements {
            if !valid_name(name) {
                return Err(HibiError::InvalidName(name.clone()));
            }
        }
        let mut names = doc.elements.clone();
        names.sort();
        if let Some(w) = names.windows(2).find(|w| w[0] == w[1]) {
            return Err(HibiError::DuplicateElement(w[0].clone()));
        }
        let index: HashMap<String, usize> =
            names.iter().enumerate().map(|(i, n)| (n.clone(), i)).collect();
        let x0 = *index.get(&doc.min).ok_or_else(|| {
            HibiError::NoUniqueMinimal(format!("declared minimum {:?} is not an element", doc.min))
        })?;

        let mut covers = Vec::with_capacity(doc.covers.len());
        for [a, b] in &doc.covers {
            match (index.get(a), index.get(b)) {
                (Some(&i), Some(&j)) => covers.push((i, j)),
                _ => return Err(HibiError::UnknownElementInCover(a.clone(), b.clone())),
            }
        }
        let n = names.len();

        let mut upper = vec![Vec::new(); n];
        let mut indegree = vec![0usize; n];
        for &(a, b) in &covers {
            if a == b {
                return Err(HibiError::CycleDetected(names[a].clone()));
            }
            upper[a].push(b);
            indegree[b] += 1;
        }
        let topo = topological_order(&upper, &indegree).map_err(|i| HibiError::CycleDetected(names[i].clone()))?;

        let mut sorted = covers.clone();
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(HibiError::NonReducedCover(names[w[0].0].clone(), names[w[0].1].clone()));
        }
        // A cover is redundant iff the longest path between its ends exceeds 1.
        for &(a, b) in &sorted {
            if longest_paths_from(a, &upper, &topo)[b] > 1 {
                return Err(HibiError::NonReducedCover(names[a].clone(), names[b].clone()));
            }
        }

        let minimal: Vec<usize> = (0..n).filter(|&i| indegree[i] == 0).collect();
        if minimal != [x0] {
            let listed: Vec<&str> = minimal.iter().map(|&i| names[i].as_str()).collect();
            return Err(HibiError::NoUniqueMinimal(format!(
                "minimal elements are {listed:?}, declared minimum is {:?}",
                doc.min
            )));
        }

        Ok(Self { names, index, covers: sorted, x0 })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn x0(&self) -> usize {
        self.x0
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn to_document(&self) -> PosetDocument {
        PosetDocument {
            elements: self.names.clone(),
            min: self.names[self.x0].clone(),
            covers: self
                .covers
                .iter()
                .map(|&(a, b)| [self.names[a].clone(), self.names[b].clone()])
                .collect(),
            expected: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_document()).expect("poset document serializes")
    }

    /// Builds P⁺ together with its order relation and rank table.
    pub fn extend(&self) -> ExtendedPoset {
        let n = self.names.len();
        let top = n;
        let mut names = self.names.clone();
        names.push(TOP_NAME.to_owned());
        let mut upper = vec![Vec::new(); n + 1];
        for &(a, b) in &self.covers {
            upper[a].push(b);
        }
        for ups in upper.iter_mut().take(n) {
            if ups.is_empty() {
                ups.push(top);
            }
        }
        ExtendedPoset::build(names, upper, self.x0, top)
    }
}

/// Kahn's algorithm; returns the index of an element on a cycle on failure.
fn topological_order(upper: &[Vec<usize>], indegree: &[usize]) -> std::result::Result<Vec<usize>, usize> {
    let n = upper.len();
    let mut indegree = indegree.to_vec();
    let mut queue: VecDeque<usize> = (0..n).filter(|&i| indegree[i] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(v) = queue.pop_front() {
        order.push(v);
        for &w in &upper[v] {
            indegree[w] -= 1;
            if indegree[w] == 0 {
                queue.push_back(w);
            }
        }
    }
    if order.len() < n {
        let stuck = (0..n).find(|&i| indegree[i] > 0).unwrap_or(0);
        return Err(stuck);
    }
    Ok(order)
}

/// Longest path lengths from `src` over a DAG; `-1` marks unreachable nodes.
fn longest_paths_from(src: usize, upper: &[Vec<usize>], topo: &[usize]) -> Vec<i32> {
    let mut dist = vec![-1i32; upper.len()];
    dist[src] = 0;
    for &v in topo {
        if dist[v] < 0 {
            continue;
        }
        for &w in &upper[v] {
            dist[w] = dist[w].max(dist[v] + 1);
        }
    }
    dist
}

/// P⁺ = P ∪ {∞}: order relation and the table of interval ranks.
///
/// The same type also represents the order dual of P⁺ (see [`ExtendedPoset::dual`]),
/// in which case `bottom` is `∞` and `top` is `x0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtendedPoset {
    names: Vec<String>,
    bottom: usize,
    top: usize,
    upper: Vec<Vec<usize>>,
    lower: Vec<Vec<usize>>,
    order: Vec<Vec<bool>>,
    rank: Vec<Vec<i32>>,
    linear: Vec<usize>,
}

impl ExtendedPoset {
    fn build(names: Vec<String>, mut upper: Vec<Vec<usize>>, bottom: usize, top: usize) -> Self {
        let n = names.len();
        let mut lower = vec![Vec::new(); n];
        for (a, ups) in upper.iter_mut().enumerate() {
            ups.sort_unstable();
            for &b in ups.iter() {
                lower[b].push(a);
            }
        }
        for l in &mut lower {
            l.sort_unstable();
        }
        let mut indegree = vec![0usize; n];
        for ups in &upper {
            for &b in ups {
                indegree[b] += 1;
            }
        }
        let topo = topological_order(&upper, &indegree).expect("validated poset is acyclic");
        let rank: Vec<Vec<i32>> = (0..n).map(|s| longest_paths_from(s, &upper, &topo)).collect();
        let order = rank.iter().map(|row| row.iter().map(|&d| d >= 0).collect()).collect();
        let mut linear: Vec<usize> = (0..n).collect();
        linear.sort_by_key(|&i| (rank[bottom][i], i));
        Self { names, bottom, top, upper, lower, order, rank, linear }
    }

    /// Number of elements of P⁺.
    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// The unique minimal element (`x0`, or `∞` for a dual).
    pub fn bottom(&self) -> usize {
        self.bottom
    }

    /// The adjoined top (`∞`, or `x0` for a dual).
    pub fn top(&self) -> usize {
        self.top
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn names_of(&self, set: &[usize]) -> Vec<String> {
        set.iter().map(|&i| self.names[i].clone()).collect()
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| HibiError::UnknownElement(name.to_owned()))
    }

    /// Elements of the base poset, i.e. everything except the top, by index.
    pub fn base(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&i| i != self.top)
    }

    /// Number of elements of the base poset.
    pub fn base_len(&self) -> usize {
        self.len() - 1
    }

    /// All elements sorted by `(rank[bottom, x], name)`; a linear extension.
    pub fn linear_extension(&self) -> &[usize] {
        &self.linear
    }

    pub fn upper_covers(&self, x: usize) -> &[usize] {
        &self.upper[x]
    }

    pub fn lower_covers(&self, x: usize) -> &[usize] {
        &self.lower[x]
    }

    /// Cover pairs `(a, b)` of P⁺, `a ⋖ b`, in index order.
    pub fn cover_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.upper.iter().enumerate().flat_map(|(a, ups)| ups.iter().map(move |&b| (a, b)))
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.order[x][y]
    }

    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.order[x][y]
    }

    pub fn is_cover(&self, x: usize, y: usize) -> bool {
        self.rank[x][y] == 1
    }

    /// `rank[x, y]` when `x ≤ y`.
    pub fn rank(&self, x: usize, y: usize) -> Option<usize> {
        usize::try_from(self.rank[x][y]).ok()
    }

    /// Rank as a signed integer; callers guarantee `x ≤ y`.
    pub(crate) fn r(&self, x: usize, y: usize) -> i64 {
        debug_assert!(self.order[x][y]);
        i64::from(self.rank[x][y])
    }

    /// Length of the longest chain in the interval `[x, y]`.
    pub fn rank_interval(&self, x: usize, y: usize) -> Result<usize> {
        self.rank(x, y)
            .ok_or_else(|| HibiError::NotComparable(self.names[x].clone(), self.names[y].clone()))
    }

    /// `r = rank P⁺ = rank[x0, ∞]`.
    pub fn global_rank(&self) -> usize {
        self.rank[self.bottom][self.top] as usize
    }

    /// Elements of the closed interval `[x, y]` in index order.
    pub fn interval(&self, x: usize, y: usize) -> Vec<usize> {
        (0..self.len()).filter(|&z| self.order[x][z] && self.order[z][y]).collect()
    }

    /// Whether every maximal chain of the induced subposet on `subset` has the same length.
    pub fn is_pure(&self, subset: &[usize]) -> Result<bool> {
        Ok(self.subposet(subset)?.is_pure())
    }

    /// Induced subposet on `subset`, with its own chain ranks.
    pub fn subposet(&self, subset: &[usize]) -> Result<Subposet<'_>> {
        Subposet::new(self, subset)
    }

    /// Scans `z0 ≤ z1 ≤ z2 ≤ z3` in the induced subposet (z0 minimal, z3
    /// maximal) for a constant value of `rank[z0,z1] + rank[z1,z2] + rank[z2,z3]`.
    pub fn three_sum_check(&self, subset: &[usize]) -> Result<ThreeSum> {
        Ok(self.subposet(subset)?.three_sum_check())
    }

    /// All nonempty poset ideals of the base poset in canonical order
    /// (by size, then by sorted member names).
    pub fn poset_ideals(&self, cap: u64) -> Result<Vec<Vec<usize>>> {
        let n = self.base_len();
        let needed = 1u128 << (n.saturating_sub(1)).min(127);
        if needed > u128::from(cap) {
            return Err(HibiError::SizeGuard {
                what: format!("ideal enumeration (2^{} subsets)", n.saturating_sub(1)),
                limit: cap,
                hint: "a smaller poset".to_owned(),
            });
        }
        let order: Vec<usize> = self.linear.iter().copied().filter(|&i| i != self.top).collect();
        let mut member = vec![false; self.len()];
        let mut out = Vec::new();
        member[self.bottom] = true;
        self.ideals_rec(&order, 1, &mut member, &mut out);
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        Ok(out)
    }

    fn ideals_rec(&self, order: &[usize], pos: usize, member: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if pos == order.len() {
            out.push((0..self.len()).filter(|&i| member[i]).collect());
            return;
        }
        let x = order[pos];
        self.ideals_rec(order, pos + 1, member, out);
        if self.lower[x].iter().all(|&c| member[c]) {
            member[x] = true;
            self.ideals_rec(order, pos + 1, member, out);
            member[x] = false;
        }
    }

    /// The order dual: same elements, reversed order; `bottom` and `top` swap.
    pub fn dual(&self) -> ExtendedPoset {
        let n = self.len();
        let transpose = |m: &Vec<Vec<i32>>| -> Vec<Vec<i32>> {
            (0..n).map(|i| (0..n).map(|j| m[j][i]).collect()).collect()
        };
        let rank = transpose(&self.rank);
        let order = rank.iter().map(|row| row.iter().map(|&d| d >= 0).collect()).collect();
        let bottom = self.top;
        let mut linear: Vec<usize> = (0..n).collect();
        linear.sort_by_key(|&i| (rank[bottom][i], i));
        ExtendedPoset {
            names: self.names.clone(),
            bottom,
            top: self.bottom,
            upper: self.lower.clone(),
            lower: self.upper.clone(),
            order,
            rank,
            linear,
        }
    }
}

/// Result of [`ExtendedPoset::three_sum_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ThreeSum {
    Constant(usize),
    Counterexample { quadruple: [usize; 4], sum: usize, expected: usize },
}

/// Induced subposet of an [`ExtendedPoset`] with ranks measured inside it.
#[derive(Debug, Clone)]
pub struct Subposet<'a> {
    ep: &'a ExtendedPoset,
    members: Vec<usize>,
    local: Vec<Option<usize>>,
    rank: Vec<Vec<i32>>,
}

impl<'a> Subposet<'a> {
    fn new(ep: &'a ExtendedPoset, subset: &[usize]) -> Result<Self> {
        if subset.is_empty() {
            return Err(HibiError::EmptySubset);
        }
        let mut in_set = vec![false; ep.len()];
        for &x in subset {
            in_set[x] = true;
        }
        let members: Vec<usize> = ep.linear.iter().copied().filter(|&x| in_set[x]).collect();
        let mut local = vec![None; ep.len()];
        for (i, &x) in members.iter().enumerate() {
            local[x] = Some(i);
        }
        let k = members.len();
        let mut rank = vec![vec![-1i32; k]; k];
        for i in 0..k {
            rank[i][i] = 0;
            for j in i + 1..k {
                if !ep.lt(members[i], members[j]) {
                    continue;
                }
                let mut best = 1;
                for m in i + 1..j {
                    if rank[i][m] > 0 && ep.lt(members[m], members[j]) {
                        best = best.max(rank[i][m] + 1);
                    }
                }
                rank[i][j] = best;
            }
        }
        Ok(Self { ep, members, local, rank })
    }

    /// Members in linear-extension order.
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    /// Longest chain from `x` to `y` using only members, if both are members and `x ≤ y`.
    pub fn rank(&self, x: usize, y: usize) -> Option<usize> {
        let (i, j) = (self.local[x]?, self.local[y]?);
        usize::try_from(self.rank[i][j]).ok()
    }

    pub fn minimal(&self) -> Vec<usize> {
        let k = self.members.len();
        (0..k)
            .filter(|&j| (0..k).all(|i| i == j || self.rank[i][j] < 0))
            .map(|j| self.members[j])
            .collect()
    }

    pub fn maximal(&self) -> Vec<usize> {
        let k = self.members.len();
        (0..k)
            .filter(|&i| (0..k).all(|j| j == i || self.rank[i][j] < 0))
            .map(|i| self.members[i])
            .collect()
    }

    /// Shortest and longest length over all maximal chains.
    pub fn chain_length_range(&self) -> (usize, usize) {
        let k = self.members.len();
        // Walk members backwards (reverse linear extension): distances to a maximal element.
        let mut shortest = vec![usize::MAX; k];
        let mut longest = vec![0usize; k];
        for i in (0..k).rev() {
            let covers: Vec<usize> = (i + 1..k).filter(|&j| self.rank[i][j] == 1).collect();
            if covers.is_empty() {
                shortest[i] = 0;
                longest[i] = 0;
            } else {
                shortest[i] = covers.iter().map(|&j| shortest[j] + 1).min().unwrap_or(0);
                longest[i] = covers.iter().map(|&j| longest[j] + 1).max().unwrap_or(0);
            }
        }
        let mins: Vec<usize> = (0..k).filter(|&j| (0..j).all(|i| self.rank[i][j] < 0)).collect();
        let lo = mins.iter().map(|&i| shortest[i]).min().unwrap_or(0);
        let hi = mins.iter().map(|&i| longest[i]).max().unwrap_or(0);
        (lo, hi)
    }

    pub fn is_pure(&self) -> bool {
        let (lo, hi) = self.chain_length_range();
        lo == hi
    }

    /// Length of the longest chain of the subposet.
    pub fn height(&self) -> usize {
        self.chain_length_range().1
    }

    pub fn three_sum_check(&self) -> ThreeSum {
        let mins = self.minimal();
        let maxs = self.maximal();
        let mut expected: Option<usize> = None;
        for &z0 in &mins {
            for &z1 in &self.members {
                let Some(a) = self.rank(z0, z1) else { continue };
                for &z2 in &self.members {
                    let Some(b) = self.rank(z1, z2) else { continue };
                    for &z3 in &maxs {
                        let Some(c) = self.rank(z2, z3) else { continue };
                        let sum = a + b + c;
                        match expected {
                            None => expected = Some(sum),
                            Some(s) if s != sum => {
                                return ThreeSum::Counterexample {
                                    quadruple: [z0, z1, z2, z3],
                                    sum,
                                    expected: s,
                                }
                            }
                            Some(_) => {}
                        }
                    }
                }
            }
        }
        ThreeSum::Constant(expected.unwrap_or(0))
    }

    pub fn poset(&self) -> &ExtendedPoset {
        self.ep
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn chain3_parses_and_extends() {
        let p = fixtures::chain3();
        assert_eq!(p.len(), 3);
        assert_eq!(p.names()[p.x0()], "x0");
        let ep = p.extend();
        assert_eq!(ep.len(), 4);
        let p2 = ep.index_of("p2").unwrap();
        assert_eq!(ep.lower_covers(ep.top()), &[p2]);
        assert_eq!(ep.global_rank(), 3);
        assert!(ep.is_pure(&(0..ep.len()).collect::<Vec<_>>()).unwrap());
    }

    #[test]
    fn top_covers_maximal_elements() {
        let ep = fixtures::n7().extend();
        assert_eq!(ep.names_of(ep.lower_covers(ep.top())), ["a3", "b2"]);
        let ep = fixtures::vee().extend();
        assert_eq!(ep.names_of(ep.lower_covers(ep.top())), ["a", "b"]);
    }

    #[test]
    fn parse_errors() {
        let cycle = r#"{"elements":["x0","a","b"],"min":"x0","covers":[["x0","a"],["a","b"],["b","a"]]}"#;
        assert!(matches!(parse_poset(cycle), Err(HibiError::CycleDetected(_))));
        let two_min = r#"{"elements":["a","b"],"min":"a","covers":[]}"#;
        assert!(matches!(parse_poset(two_min), Err(HibiError::NoUniqueMinimal(_))));
        let not_min = r#"{"elements":["x0","a"],"min":"a","covers":[["x0","a"]]}"#;
        assert!(matches!(parse_poset(not_min), Err(HibiError::NoUniqueMinimal(_))));
        let dup = r#"{"elements":["x0","a","a"],"min":"x0","covers":[]}"#;
        assert!(matches!(parse_poset(dup), Err(HibiError::DuplicateElement(_))));
        let unknown = r#"{"elements":["x0"],"min":"x0","covers":[["x0","q"]]}"#;
        assert!(matches!(parse_poset(unknown), Err(HibiError::UnknownElementInCover(..))));
        let redundant =
            r#"{"elements":["x0","a","b"],"min":"x0","covers":[["x0","a"],["a","b"],["x0","b"]]}"#;
        match parse_poset(redundant) {
            Err(HibiError::NonReducedCover(a, b)) => assert_eq!((a.as_str(), b.as_str()), ("x0", "b")),
            other => panic!("unexpected {other:?}"),
        }
        let bad_name = r#"{"elements":["x0","a-b"],"min":"x0","covers":[["x0","a-b"]]}"#;
        assert!(matches!(parse_poset(bad_name), Err(HibiError::InvalidName(_))));
        assert!(matches!(parse_poset("{\"elements\": ["), Err(HibiError::Json(_))));
    }

    #[test]
    fn ranks_of_fixtures() {
        let ep = fixtures::n7().extend();
        let z = ep.index_of("z").unwrap();
        assert_eq!(ep.rank_interval(z, ep.top()).unwrap(), 3);
        assert_eq!(ep.global_rank(), 4);
        let a1 = ep.index_of("a1").unwrap();
        assert!(matches!(ep.rank_interval(z, a1), Err(HibiError::NotComparable(..))));

        let ep = fixtures::p1().extend();
        let (x0, a5, z) = (ep.bottom(), ep.index_of("a5").unwrap(), ep.index_of("z").unwrap());
        assert_eq!(ep.rank(x0, a5), Some(5));
        assert_eq!(ep.rank(z, ep.top()), Some(4));
        assert_eq!(ep.global_rank(), 6);
        assert_eq!(fixtures::p2().extend().global_rank(), 6);
        assert_eq!(fixtures::chain3().extend().global_rank(), 3);
    }

    #[test]
    fn purity_of_fixtures() {
        let ep = fixtures::p1().extend();
        let all: Vec<usize> = (0..ep.len()).collect();
        assert!(!ep.is_pure(&all).unwrap());
        let z = ep.index_of("z").unwrap();
        let without_z: Vec<usize> = all.iter().copied().filter(|&i| i != z).collect();
        let sub = ep.subposet(&without_z).unwrap();
        assert!(sub.is_pure());
        assert_eq!(sub.height(), 6);

        let ep = fixtures::n7().extend();
        let base: Vec<usize> = ep.base().collect();
        assert_eq!(ep.subposet(&base).unwrap().chain_length_range(), (2, 3));
        assert!(!ep.is_pure(&base).unwrap());
        assert!(matches!(ep.is_pure(&[]), Err(HibiError::EmptySubset)));
    }

    #[test]
    fn three_sum_on_fixtures() {
        let ep = fixtures::chain3().extend();
        let all: Vec<usize> = (0..ep.len()).collect();
        assert_eq!(ep.three_sum_check(&all).unwrap(), ThreeSum::Constant(3));

        let ep = fixtures::p1().extend();
        let z = ep.index_of("z").unwrap();
        let all: Vec<usize> = (0..ep.len()).collect();
        match ep.three_sum_check(&all).unwrap() {
            ThreeSum::Counterexample { quadruple, .. } => assert!(quadruple.contains(&z)),
            other => panic!("expected counterexample, got {other:?}"),
        }
        let rest: Vec<usize> = all.into_iter().filter(|&i| i != z).collect();
        assert_eq!(ep.three_sum_check(&rest).unwrap(), ThreeSum::Constant(6));
        assert!(matches!(ep.three_sum_check(&[]), Err(HibiError::EmptySubset)));
    }

    #[test]
    fn ideals_of_small_posets() {
        let ep = fixtures::chain3().extend();
        let ideals: Vec<Vec<String>> =
            ep.poset_ideals(1 << 20).unwrap().iter().map(|i| ep.names_of(i)).collect();
        assert_eq!(ideals, [vec!["x0"], vec!["p1", "x0"], vec!["p1", "p2", "x0"]]);
        assert_eq!(fixtures::vee().extend().poset_ideals(1 << 20).unwrap().len(), 4);
        assert!(matches!(
            fixtures::p2().extend().poset_ideals(16),
            Err(HibiError::SizeGuard { .. })
        ));
    }

    #[test]
    fn dual_reverses_ranks() {
        let ep = fixtures::n7().extend();
        let d = ep.dual();
        assert_eq!(d.bottom(), ep.top());
        assert_eq!(d.top(), ep.bottom());
        let z = ep.index_of("z").unwrap();
        assert_eq!(d.rank(ep.top(), z), Some(3));
        for x in 0..ep.len() {
            for y in 0..ep.len() {
                assert_eq!(d.rank(y, x), ep.rank(x, y));
            }
        }
        assert_eq!(d.dual(), ep);

        let c = fixtures::chain3().extend();
        let cd = c.dual();
        assert_eq!(cd.global_rank(), 3);
        let p1 = c.index_of("p1").unwrap();
        assert_eq!(cd.rank(c.top(), p1), Some(2));
    }
}
