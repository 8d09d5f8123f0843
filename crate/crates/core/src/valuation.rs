//! Order-reversing maps ν: P⁺ → ℕ with ν(∞) = 0, the interior T(P), and the
//! minimal elements of T(P), which index the canonical-module generators.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::condn::CondNSequence;
use crate::error::{HibiError, Result};
use crate::poset::ExtendedPoset;

/// Values of ν indexed like the elements of the [`ExtendedPoset`] it belongs to.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Valuation {
    values: Vec<i64>,
}

/// JSON form: `{"values": {"x0": 5, ...}, "degree": 5, "minimal": true}`; ∞ omitted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValuationRecord {
    pub values: BTreeMap<String, i64>,
    pub degree: i64,
    pub minimal: bool,
}

impl Valuation {
    pub fn from_values(ep: &ExtendedPoset, values: Vec<i64>) -> Result<Self> {
        if values.len() != ep.len() {
            return Err(HibiError::ValuationShape(format!(
                "{} values for {} elements",
                values.len(),
                ep.len()
            )));
        }
        if values[ep.top()] != 0 {
            return Err(HibiError::ValuationShape(format!(
                "value at {} must be 0",
                ep.name(ep.top())
            )));
        }
        if let Some(i) = values.iter().position(|&v| v < 0) {
            return Err(HibiError::ValuationShape(format!("negative value at {}", ep.name(i))));
        }
        Ok(Self { values })
    }

    /// Builds ν from named values; every element except the top must be present.
    pub fn from_named(ep: &ExtendedPoset, named: &BTreeMap<String, i64>) -> Result<Self> {
        let mut values = vec![0; ep.len()];
        for (name, &v) in named {
            values[ep.index_of(name)?] = v;
        }
        if let Some(missing) = ep.base().find(|&i| !named.contains_key(ep.name(i))) {
            return Err(HibiError::ValuationShape(format!("no value for {}", ep.name(missing))));
        }
        Self::from_values(ep, values)
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn get(&self, x: usize) -> i64 {
        self.values[x]
    }

    /// deg T^ν = ν(x0).
    pub fn degree(&self, ep: &ExtendedPoset) -> i64 {
        self.values[ep.bottom()]
    }

    pub fn to_record(&self, ep: &ExtendedPoset, minimal: bool) -> ValuationRecord {
        ValuationRecord {
            values: ep.base().map(|i| (ep.name(i).to_owned(), self.values[i])).collect(),
            degree: self.degree(ep),
            minimal,
        }
    }

    /// ν0(x) = rank[x, ∞].
    pub fn nu_zero(ep: &ExtendedPoset) -> Self {
        let top = ep.top();
        Self { values: (0..ep.len()).map(|x| ep.r(x, top)).collect() }
    }

    /// Membership in T̄(P): weakly decreasing along every cover.
    pub fn in_tbar(&self, ep: &ExtendedPoset) -> bool {
        ep.cover_pairs().all(|(a, b)| self.values[a] >= self.values[b])
    }

    /// Membership in T(P): strictly decreasing along every cover of P⁺.
    /// Positivity on P follows from ν(∞) = 0.
    pub fn in_t(&self, ep: &ExtendedPoset) -> bool {
        ep.cover_pairs().all(|(a, b)| self.values[a] > self.values[b])
    }

    fn require_t(&self, ep: &ExtendedPoset) -> Result<()> {
        match ep.cover_pairs().find(|&(a, b)| self.values[a] <= self.values[b]) {
            None => Ok(()),
            Some((a, b)) => Err(HibiError::NotInT(format!(
                "{}({}) <= {}({}) although {} < {}",
                ep.name(a),
                self.values[a],
                ep.name(b),
                self.values[b],
                ep.name(a),
                ep.name(b)
            ))),
        }
    }

    /// `self ≤ other` in T(P): `other − self` lies in T̄(P).
    pub fn leq(&self, ep: &ExtendedPoset, other: &Valuation) -> bool {
        let diff = |x: usize| other.values[x] - self.values[x];
        (0..ep.len()).all(|x| diff(x) >= 0) && ep.cover_pairs().all(|(a, b)| diff(a) >= diff(b))
    }

    /// Lowers ν by one on the ideal `ideal`, given a gap of at least 2 across
    /// its upper boundary. The result lies in T(P) and is strictly below ν.
    pub fn ideal_reduce(&self, ep: &ExtendedPoset, ideal: &[usize]) -> Result<Valuation> {
        self.require_t(ep)?;
        let mut member = vec![false; ep.len()];
        for &x in ideal {
            member[x] = true;
        }
        if ideal.is_empty() {
            return Err(HibiError::NotAnIdeal("empty".to_owned()));
        }
        if member[ep.top()] {
            return Err(HibiError::NotAnIdeal(format!("contains {}", ep.name(ep.top()))));
        }
        for (a, b) in ep.cover_pairs() {
            if member[b] && !member[a] {
                return Err(HibiError::NotAnIdeal(format!(
                    "{} is in the set but {} below it is not",
                    ep.name(b),
                    ep.name(a)
                )));
            }
        }
        // A gap of 2 on every boundary cover gives it on every comparable boundary pair.
        for (a, b) in ep.cover_pairs() {
            if member[a] && !member[b] && self.values[a] - self.values[b] < 2 {
                return Err(HibiError::GapTooSmall(ep.name(a).to_owned(), ep.name(b).to_owned()));
            }
        }
        let values = self
            .values
            .iter()
            .enumerate()
            .map(|(x, &v)| if member[x] { v - 1 } else { v })
            .collect();
        Ok(Valuation { values })
    }

    /// `{z ∈ P⁺ | ν(z) > rank[z, ∞]}`.
    pub fn excess_set(&self, ep: &ExtendedPoset) -> Vec<usize> {
        let top = ep.top();
        (0..ep.len()).filter(|&z| self.values[z] > ep.r(z, top)).collect()
    }

    /// Runs the alternating U/D layer construction that decides minimality.
    pub fn ud_closure(&self, ep: &ExtendedPoset) -> Result<UdClosure> {
        self.require_t(ep)?;
        Ok(ud_closure_unchecked(ep, self))
    }

    pub fn is_minimal(&self, ep: &ExtendedPoset) -> Result<bool> {
        self.require_t(ep)?;
        Ok(reaches_top(ep, self))
    }

    /// ν_k(x) = max{ν(x) − k, rank[x, ∞]}; defined for minimal ν only.
    pub fn truncate(&self, ep: &ExtendedPoset, k: u32) -> Result<Valuation> {
        if !self.is_minimal(ep)? {
            return Err(HibiError::NotMinimal);
        }
        let top = ep.top();
        let k = i64::from(k);
        let values = (0..ep.len()).map(|x| (self.values[x] - k).max(ep.r(x, top))).collect();
        Ok(Valuation { values })
    }

    /// Key of the canonical output order: degree, then values by element name.
    fn sort_key(&self, ep: &ExtendedPoset) -> (i64, &[i64]) {
        (self.degree(ep), &self.values)
    }
}

/// Sorts valuations by degree, then lexicographically by values in element-name order.
pub fn sort_canonical(ep: &ExtendedPoset, valuations: &mut [Valuation]) {
    valuations.sort_by(|a, b| a.sort_key(ep).cmp(&b.sort_key(ep)));
}

/// Layers U1, D1, U2, D2, … of the minimality procedure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UdClosure {
    /// Alternating nonempty layers, starting with U1.
    pub layers: Vec<Vec<usize>>,
    /// Union of all layers, sorted.
    pub union: Vec<usize>,
    pub reached_top: bool,
    /// Condition-N sequence certifying minimality (present iff `reached_top`).
    pub witness: Option<CondNSequence>,
    /// Ideal on which ν can be lowered (present iff not `reached_top`).
    pub reduction_ideal: Option<Vec<usize>>,
}

fn is_tight(ep: &ExtendedPoset, nu: &Valuation, x: usize, y: usize) -> bool {
    ep.lt(x, y) && ep.r(x, y) == nu.values[x] - nu.values[y]
}

/// Builds the layers; `member` ends up marking the union.
fn build_layers(ep: &ExtendedPoset, nu: &Valuation, member: &mut [bool]) -> Vec<Vec<usize>> {
    let n = ep.len();
    let x0 = ep.bottom();
    let mut layers: Vec<Vec<usize>> = Vec::new();
    let u1: Vec<usize> = (0..n).filter(|&y| ep.leq(x0, y) && ep.r(x0, y) == nu.values[x0] - nu.values[y]).collect();
    for &y in &u1 {
        member[y] = true;
    }
    layers.push(u1);
    loop {
        let ups = layers.last().expect("U1 is never empty");
        let down: Vec<usize> = (0..n).filter(|&x| !member[x] && ups.iter().any(|&y| ep.lt(x, y))).collect();
        if down.is_empty() {
            break;
        }
        for &x in &down {
            member[x] = true;
        }
        let up: Vec<usize> =
            (0..n).filter(|&y| !member[y] && down.iter().any(|&x| is_tight(ep, nu, x, y))).collect();
        layers.push(down);
        if up.is_empty() {
            break;
        }
        for &y in &up {
            member[y] = true;
        }
        layers.push(up);
    }
    layers
}

fn reaches_top(ep: &ExtendedPoset, nu: &Valuation) -> bool {
    let mut member = vec![false; ep.len()];
    build_layers(ep, nu, &mut member);
    member[ep.top()]
}

fn ud_closure_unchecked(ep: &ExtendedPoset, nu: &Valuation) -> UdClosure {
    let mut member = vec![false; ep.len()];
    let layers = build_layers(ep, nu, &mut member);
    let union: Vec<usize> = (0..ep.len()).filter(|&x| member[x]).collect();
    let top = ep.top();
    if !member[top] {
        return UdClosure { layers, union: union.clone(), reached_top: false, witness: None, reduction_ideal: Some(union) };
    }
    // U_{t+1} holds ∞; walk back choosing the smallest qualifying name at each step.
    let top_layer = layers.iter().position(|l| l.contains(&top)).expect("top is in some layer");
    debug_assert_eq!(top_layer % 2, 0);
    let t = top_layer / 2;
    let mut ys = vec![0usize; t];
    let mut xs = vec![0usize; t];
    let mut next_y = top;
    for i in (1..=t).rev() {
        let d_i = &layers[2 * i - 1];
        let u_i = &layers[2 * i - 2];
        let x = *d_i
            .iter()
            .find(|&&x| is_tight(ep, nu, x, next_y))
            .expect("every U-layer element is tight above the previous D-layer");
        let y = *u_i.iter().find(|&&y| ep.lt(x, y)).expect("every D-layer element lies below the previous U-layer");
        xs[i - 1] = x;
        ys[i - 1] = y;
        next_y = y;
    }
    UdClosure {
        layers,
        union,
        reached_top: true,
        witness: Some(CondNSequence::new(ys, xs)),
        reduction_ideal: None,
    }
}

fn box_guard(limit: u64) -> HibiError {
    HibiError::SizeGuard {
        what: "minimal-element search (lattice points of T(P) visited)".to_owned(),
        limit,
        hint: "--max-box or HIBI_MAX_BOX".to_owned(),
    }
}

/// All minimal elements of T(P), assuming every one has degree at most `rmax`.
///
/// Depth-first over a linear extension; each element x ranges over
/// `[rank[x,∞], rmax − rank[x0,x]]` capped by its lower covers, so every
/// leaf is a member of T(P). Leaves are kept when the U/D closure reaches ∞.
pub fn enumerate_minimal(ep: &ExtendedPoset, rmax: i64, max_box: u64) -> Result<Vec<Valuation>> {
    let order: Vec<usize> = ep.linear_extension().iter().copied().filter(|&x| x != ep.top()).collect();
    let x0 = ep.bottom();
    let top = ep.top();
    let lo_x0 = ep.r(x0, top);
    let visited = AtomicU64::new(0);

    let branches: Vec<Result<Vec<Valuation>>> = (lo_x0..=rmax)
        .into_par_iter()
        .map(|d| {
            let mut values = vec![0i64; ep.len()];
            values[x0] = d;
            let mut search = BoxSearch { ep, order: &order, rmax, values, visited: &visited, max_box, found: Vec::new() };
            search.descend(1)?;
            Ok(search.found)
        })
        .collect();
    let mut found = Vec::new();
    for b in branches {
        found.extend(b?);
    }
    sort_canonical(ep, &mut found);
    Ok(found)
}

struct BoxSearch<'a> {
    ep: &'a ExtendedPoset,
    order: &'a [usize],
    rmax: i64,
    values: Vec<i64>,
    visited: &'a AtomicU64,
    max_box: u64,
    found: Vec<Valuation>,
}

impl BoxSearch<'_> {
    fn descend(&mut self, pos: usize) -> Result<()> {
        if pos == self.order.len() {
            if self.visited.fetch_add(1, Ordering::Relaxed) >= self.max_box {
                return Err(box_guard(self.max_box));
            }
            let nu = Valuation { values: self.values.clone() };
            if reaches_top(self.ep, &nu) {
                self.found.push(nu);
            }
            return Ok(());
        }
        let ep = self.ep;
        let x = self.order[pos];
        let lo = ep.r(x, ep.top());
        let mut hi = self.rmax - ep.r(ep.bottom(), x);
        for &c in ep.lower_covers(x) {
            hi = hi.min(self.values[c] - 1);
        }
        for v in lo..=hi {
            self.values[x] = v;
            self.descend(pos + 1)?;
        }
        Ok(())
    }
}

/// Independent oracle: every member of T(P) with ν(x0) ≤ `degree_bound`, then
/// the minimal ones by pairwise comparison. No use of the U/D closure.
///
/// The region is closed downwards in T(P), so the answer is exact for all
/// minimal elements of degree at most `degree_bound`.
pub fn brute_force_minimal(ep: &ExtendedPoset, degree_bound: i64, cap: usize) -> Result<Vec<Valuation>> {
    if ep.base_len() > cap {
        return Err(HibiError::SizeGuard {
            what: format!("brute-force oracle on {} elements", ep.base_len()),
            limit: cap as u64,
            hint: "a smaller poset".to_owned(),
        });
    }
    let n = ep.len();
    let (x0, top) = (ep.bottom(), ep.top());
    let lo: Vec<i64> = (0..n).map(|x| ep.r(x, top)).collect();
    let hi: Vec<i64> = (0..n).map(|x| if x == top { 0 } else { degree_bound - ep.r(x0, x) }).collect();
    let mut members = Vec::new();
    if (0..n).any(|x| lo[x] > hi[x]) {
        return Ok(members);
    }
    // Odometer over the full box.
    let mut cur = lo.clone();
    loop {
        let nu = Valuation { values: cur.clone() };
        if nu.in_t(ep) {
            members.push(nu);
        }
        let mut i = 0;
        loop {
            if i == n {
                return Ok(pairwise_minimal(ep, members));
            }
            if cur[i] < hi[i] {
                cur[i] += 1;
                break;
            }
            cur[i] = lo[i];
            i += 1;
        }
    }
}

fn pairwise_minimal(ep: &ExtendedPoset, mut members: Vec<Valuation>) -> Vec<Valuation> {
    let total = |v: &Valuation| v.values.iter().sum::<i64>();
    members.sort_by_key(total);
    let sums: Vec<i64> = members.iter().map(total).collect();
    let mut out: Vec<Valuation> = Vec::new();
    for (i, nu) in members.iter().enumerate() {
        // Anything strictly below ν has a strictly smaller value sum.
        let below = members[..i]
            .iter()
            .zip(&sums[..i])
            .any(|(mu, &s)| s < sums[i] && mu.values.iter().zip(&nu.values).all(|(a, b)| a <= b) && mu.leq(ep, nu));
        if !below {
            out.push(nu.clone());
        }
    }
    sort_canonical(ep, &mut out);
    out
}
