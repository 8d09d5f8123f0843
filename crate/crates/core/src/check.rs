//! Property audit of a single poset: every structural result the library
//! relies on, checked against direct computation. Used by `hibi check` and
//! the acceptance suite.

use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::budget::Budgets;
use crate::classify::{self, floating_family, floating_set, level_type2_witness, nonlevel_type2_witness, Verdict};
use crate::condn::{compute_rmax, is_condition_n, maximizing_sequences, mu_down, nu_down, nu_up, nu_up_raw};
use crate::error::{HibiError, Result};
use crate::poset::{ExtendedPoset, Poset, ThreeSum};
use crate::valuation::{brute_force_minimal, enumerate_minimal, Valuation};

/// Known results a poset document may declare; compared by `hibi check`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expected {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r_max: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub level: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gorenstein: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cm_type: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree_histogram: Option<BTreeMap<i64, usize>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Property {
    /// All cross-checks of `classify` pass.
    CrossChecks,
    /// U/D-filtered search equals the pairwise brute-force oracle.
    OracleEquivalence,
    /// level ⟺ r_max = r ⟺ every generator has degree r; pure upper intervals force level.
    LevelCriterion,
    /// Generator degrees are exactly r..=r_max.
    ConsecutiveDegrees,
    /// Gorenstein ⟺ P pure ⟺ type 1.
    GorensteinCriterion,
    /// Type-2 witnesses present ⟺ type 2 with the matching level flag.
    TypeTwoCriteria,
    /// type > |F|, realised by the floating family of degree-r generators.
    FloatingBound,
    /// level ⇒ P⁺∖F pure of rank r, three-term rank identity, ranks unchanged by deleting F.
    FloatDeletion,
    /// ν↓, ν↑ of every maximizing sequence are generators of degree r_max.
    ExtremalValuations,
    /// Truncations of generators are generators.
    TruncationClosure,
    /// U/D witnesses satisfy condition N; reduction ideals lower non-minimal valuations.
    ClosureSoundness,
    /// Constant three-term sums imply purity of that rank.
    ThreeSumPurity,
    /// Ideal enumeration equals a brute-force subset filter.
    IdealEnumeration,
    /// Results declared in the document's `expected` block.
    Expected,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyResult {
    pub property: Property,
    pub verdict: Verdict,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct Audit {
    pub poset: Poset,
    pub r: usize,
    pub r_max: i64,
    pub cm_type: usize,
    pub level: bool,
    pub results: Vec<PropertyResult>,
}

impl Audit {
    pub fn failures(&self) -> impl Iterator<Item = &PropertyResult> {
        self.results.iter().filter(|r| r.verdict == Verdict::Fail)
    }

    pub fn passed(&self) -> bool {
        self.failures().next().is_none()
    }

    pub fn verdict(&self, property: Property) -> Option<Verdict> {
        self.results.iter().find(|r| r.property == property).map(|r| r.verdict)
    }
}

struct Recorder(Vec<PropertyResult>);

impl Recorder {
    fn push(&mut self, property: Property, failures: Vec<String>, ok_detail: impl Into<String>) {
        let (verdict, detail) = if failures.is_empty() {
            (Verdict::Pass, ok_detail.into())
        } else {
            (Verdict::Fail, failures.join("; "))
        };
        self.0.push(PropertyResult { property, verdict, detail });
    }

    fn skip(&mut self, property: Property, why: &str) {
        self.0.push(PropertyResult { property, verdict: Verdict::Skipped, detail: why.to_owned() });
    }
}

/// Audits one poset. Budget overruns are errors, not failures.
pub fn audit(poset: &Poset, expected: Option<&Expected>, budgets: &Budgets) -> Result<Audit> {
    let ep = poset.extend();
    let r = ep.global_rank();
    let ri = r as i64;
    let mut rec = Recorder(Vec::new());

    let report = match classify::classify(&ep, budgets) {
        Ok(rep) => {
            rec.push(Property::CrossChecks, vec![], "all cross-checks pass");
            Some(rep)
        }
        Err(HibiError::Inconsistent(rep)) => {
            rec.push(Property::CrossChecks, rep.failed_checks(), "");
            Some(*rep)
        }
        Err(e) => return Err(e),
    };
    let report = report.expect("classify returned a report");

    let (rmax, _) = compute_rmax(&ep, budgets.max_sequences)?;
    let gens = enumerate_minimal(&ep, rmax, budgets.max_box)?;
    let gen_set: HashSet<&Valuation> = gens.iter().collect();
    let cm_type = gens.len();
    let level = rmax == ri;
    let degrees: Vec<i64> = gens.iter().map(|g| g.degree(&ep)).collect();

    // Oracle equivalence, with one degree of slack above r_max.
    if poset.len() <= budgets.oracle_elements {
        let oracle = brute_force_minimal(&ep, rmax + 1, budgets.oracle_elements)?;
        let mut f = Vec::new();
        if oracle != gens {
            let missing = oracle.iter().filter(|v| !gen_set.contains(v)).count();
            let extra = gens.len() - (oracle.len() - missing);
            f.push(format!("oracle has {} generators, search has {} ({missing} missing, {extra} extra)", oracle.len(), gens.len()));
        }
        rec.push(Property::OracleEquivalence, f, format!("{} generators agree", gens.len()));
    } else {
        rec.skip(Property::OracleEquivalence, "poset exceeds the oracle size cap");
    }

    {
        let mut f = Vec::new();
        let all_r = degrees.iter().all(|&d| d == ri);
        if level != all_r {
            f.push(format!("r_max = r is {level} but all degrees r is {all_r}"));
        }
        if report.level != level {
            f.push("report level flag disagrees".to_owned());
        }
        let upper_pure = ep.base().filter(|&x| x != ep.bottom()).all(|x| ep.is_pure(&ep.interval(x, ep.top())).unwrap_or(false));
        if upper_pure && !level {
            f.push("all [x, ∞] pure but not level".to_owned());
        }
        rec.push(Property::LevelCriterion, f, format!("level={level}"));
    }

    {
        let mut f = Vec::new();
        let present: Vec<i64> = report.degree_histogram.as_ref().map(|h| h.keys().copied().collect()).unwrap_or_default();
        let want: Vec<i64> = (ri..=rmax).collect();
        if present != want {
            f.push(format!("degrees {present:?} != {want:?}"));
        }
        if let Some(&d) = degrees.iter().find(|&&d| d < ri || d > rmax) {
            f.push(format!("degree {d} outside [r, r_max]"));
        }
        rec.push(Property::ConsecutiveDegrees, f, format!("degrees {ri}..={rmax}"));
    }

    {
        let mut f = Vec::new();
        let gor = classify::is_gorenstein(&ep);
        let pure = maximal_chain_lengths(&ep).len() == 1;
        if gor != pure || gor != (cm_type == 1) {
            f.push(format!("gorenstein={gor}, P pure={pure}, type={cm_type}"));
        }
        rec.push(Property::GorensteinCriterion, f, format!("gorenstein={gor}"));
    }

    {
        let mut f = Vec::new();
        let lt2 = level_type2_witness(&ep);
        let nlt2 = nonlevel_type2_witness(&ep);
        if lt2.is_some() != (level && cm_type == 2) {
            f.push(format!("level witness {} but level={level}, type={cm_type}", lt2.is_some()));
        }
        if nlt2.is_some() != (!level && cm_type == 2) {
            f.push(format!("non-level witness {} but level={level}, type={cm_type}", nlt2.is_some()));
        }
        rec.push(Property::TypeTwoCriteria, f, format!("type={cm_type}"));
    }

    let floating = floating_set(&ep);
    {
        let mut f = Vec::new();
        if cm_type <= floating.len() {
            f.push(format!("type {cm_type} <= |F| = {}", floating.len()));
        }
        let family = floating_family(&ep);
        let distinct: HashSet<&Valuation> = family.iter().collect();
        if family.len() != floating.len() + 1 || distinct.len() != family.len() {
            f.push("floating family members are not distinct".to_owned());
        }
        for v in &family {
            if v.degree(&ep) != ri || !gen_set.contains(v) {
                f.push("floating family member is not a degree-r generator".to_owned());
                break;
            }
        }
        let at_r = degrees.iter().filter(|&&d| d == ri).count();
        if at_r < floating.len() + 1 {
            f.push(format!("only {at_r} generators of degree r"));
        }
        rec.push(Property::FloatingBound, f, format!("|F|={}", floating.len()));
    }

    if level {
        let mut f = Vec::new();
        let keep: Vec<usize> = (0..ep.len()).filter(|z| !floating.contains(z)).collect();
        let sub = ep.subposet(&keep)?;
        if !sub.is_pure() || sub.height() != r {
            f.push(format!("P+ minus F: pure={}, rank={}", sub.is_pure(), sub.height()));
        }
        if ep.three_sum_check(&keep)? != ThreeSum::Constant(r) {
            f.push("three-sum scan of P+ minus F is not constant r".to_owned());
        }
        let (x0, top) = (ep.bottom(), ep.top());
        for &a in &keep {
            for &b in &keep {
                if !ep.leq(a, b) {
                    continue;
                }
                if ep.r(x0, a) + ep.r(a, b) + ep.r(b, top) != ri {
                    f.push(format!("three-term identity fails at ({}, {})", ep.name(a), ep.name(b)));
                }
                if sub.rank(a, b) != ep.rank(a, b) {
                    f.push(format!("rank[{}, {}] changes without F", ep.name(a), ep.name(b)));
                }
            }
        }
        rec.push(Property::FloatDeletion, f, "P+ minus F pure of rank r");
    } else {
        rec.skip(Property::FloatDeletion, "not level");
    }

    {
        let mut f = Vec::new();
        let dual = ep.dual();
        let seqs = maximizing_sequences(&ep, rmax, budgets.max_sequences)?;
        for s in &seqs {
            let down = nu_down(&ep, s)?;
            let up = nu_up(&ep, s, rmax)?;
            for (label, v) in [("down", &down), ("up", &up)] {
                if !v.in_t(&ep) || v.degree(&ep) != rmax || !gen_set.contains(v) {
                    f.push(format!("nu_{label} of {} is not a degree-r_max generator", s.describe(&ep)));
                }
            }
            let mu = mu_down(&ep, s);
            let mut prev = ep.bottom();
            for i in 0..=s.len() {
                let y = if i < s.len() { s.ys[i] } else { ep.top() };
                if down.get(y) != mu[i] || down.get(prev) != ep.r(prev, y) + mu[i] {
                    f.push(format!("nu_down of {} misses mu at step {}", s.describe(&ep), i + 1));
                }
                if i < s.len() {
                    prev = s.xs[i];
                }
            }
            let raw = nu_up_raw(&ep, s, rmax)?;
            let mirrored = nu_down(&dual, &s.dual())?;
            if (0..ep.len()).any(|z| raw[z] != rmax - mirrored.get(z)) {
                f.push(format!("nu_up of {} is not the mirrored nu_down", s.describe(&ep)));
            }
        }
        rec.push(Property::ExtremalValuations, f, format!("{} maximizing sequences", seqs.len()));
    }

    {
        let mut f = Vec::new();
        for g in &gens {
            for k in 1..=(g.degree(&ep) - ri).max(0) as u32 {
                let t = g.truncate(&ep, k)?;
                if !gen_set.contains(&t) || t.degree(&ep) != (g.degree(&ep) - i64::from(k)).max(ri) {
                    f.push(format!("truncation by {k} left the generator set"));
                }
            }
        }
        rec.push(Property::TruncationClosure, f, "truncations stay generators");
    }

    {
        let mut f = Vec::new();
        for g in &gens {
            let c = g.ud_closure(&ep)?;
            let Some(w) = c.witness.filter(|_| c.reached_top) else {
                f.push("generator not certified by the closure".to_owned());
                continue;
            };
            if !is_condition_n(&ep, &w)? {
                f.push(format!("witness {} violates condition N", w.describe(&ep)));
            }
            let mut prev = ep.bottom();
            for i in 0..=w.len() {
                let y = if i < w.len() { w.ys[i] } else { ep.top() };
                if !ep.lt(prev, y) || g.get(prev) - g.get(y) != ep.r(prev, y) {
                    f.push(format!("witness {} not tight at step {}", w.describe(&ep), i + 1));
                }
                if i < w.len() {
                    prev = w.xs[i];
                }
            }
            if let excess @ [_, ..] = g.excess_set(&ep).as_slice() {
                if is_ideal(&ep, excess) {
                    f.push("generator has an ideal excess set".to_owned());
                }
            }
            // g + 1 on P is in T(P) and never minimal.
            let lifted: Vec<i64> = (0..ep.len()).map(|x| if x == ep.top() { 0 } else { g.get(x) + 1 }).collect();
            let lifted = Valuation::from_values(&ep, lifted)?;
            let c = lifted.ud_closure(&ep)?;
            match c.reduction_ideal {
                Some(ideal) if !c.reached_top => match lifted.ideal_reduce(&ep, &ideal) {
                    Ok(lower) if lower.in_t(&ep) && lower.leq(&ep, &lifted) && lower != lifted => {}
                    _ => f.push("reduction ideal does not lower the lifted valuation".to_owned()),
                },
                _ => f.push("lifted generator reported minimal".to_owned()),
            }
        }
        rec.push(Property::ClosureSoundness, f, format!("{} generators certified", gens.len()));
    }

    {
        let mut f = Vec::new();
        let subsets: Vec<Vec<usize>> = vec![(0..ep.len()).collect(), ep.base().collect()];
        for s in subsets {
            if let ThreeSum::Constant(k) = ep.three_sum_check(&s)? {
                let sub = ep.subposet(&s)?;
                if !sub.is_pure() || sub.height() != k {
                    f.push(format!("constant three-sum {k} but pure={} rank={}", sub.is_pure(), sub.height()));
                }
            }
        }
        rec.push(Property::ThreeSumPurity, f, "consistent");
    }

    if poset.len() <= 12 {
        let mut f = Vec::new();
        let ideals = ep.poset_ideals(budgets.max_ideals)?;
        let brute = brute_force_ideals(&ep);
        if ideals != brute {
            f.push(format!("{} ideals enumerated, {} by subset filter", ideals.len(), brute.len()));
        }
        rec.push(Property::IdealEnumeration, f, format!("{} ideals", ideals.len()));
    } else {
        rec.skip(Property::IdealEnumeration, "poset too large for the subset filter");
    }

    match expected {
        Some(e) => {
            let mut f = Vec::new();
            let hist = classify::histogram(&ep, &gens);
            if e.r.is_some_and(|v| v != r) {
                f.push(format!("r = {r}, expected {:?}", e.r));
            }
            if e.r_max.is_some_and(|v| v != rmax) {
                f.push(format!("r_max = {rmax}, expected {:?}", e.r_max));
            }
            if e.level.is_some_and(|v| v != level) {
                f.push(format!("level = {level}, expected {:?}", e.level));
            }
            if e.gorenstein.is_some_and(|v| v != report.gorenstein) {
                f.push(format!("gorenstein = {}, expected {:?}", report.gorenstein, e.gorenstein));
            }
            if e.cm_type.is_some_and(|v| v != cm_type) {
                f.push(format!("type = {cm_type}, expected {:?}", e.cm_type));
            }
            if e.degree_histogram.as_ref().is_some_and(|h| *h != hist) {
                f.push(format!("histogram = {hist:?}, expected {:?}", e.degree_histogram));
            }
            rec.push(Property::Expected, f, "matches the declared results");
        }
        None => rec.skip(Property::Expected, "no expected block"),
    }

    Ok(Audit { poset: poset.clone(), r, r_max: rmax, cm_type, level, results: rec.0 })
}

fn is_ideal(ep: &ExtendedPoset, set: &[usize]) -> bool {
    let mut member = vec![false; ep.len()];
    for &x in set {
        member[x] = true;
    }
    ep.cover_pairs().all(|(a, b)| !member[b] || member[a])
}

/// Lengths of all maximal chains of P, by explicit path enumeration.
fn maximal_chain_lengths(ep: &ExtendedPoset) -> std::collections::BTreeSet<usize> {
    fn walk(ep: &ExtendedPoset, x: usize, len: usize, out: &mut std::collections::BTreeSet<usize>) {
        let ups: Vec<usize> = ep.upper_covers(x).iter().copied().filter(|&y| y != ep.top()).collect();
        if ups.is_empty() {
            out.insert(len);
        }
        for y in ups {
            walk(ep, y, len + 1, out);
        }
    }
    let mut out = std::collections::BTreeSet::new();
    walk(ep, ep.bottom(), 0, &mut out);
    out
}

/// Nonempty down-closed subsets of P containing x0, by filtering all subsets.
fn brute_force_ideals(ep: &ExtendedPoset) -> Vec<Vec<usize>> {
    let base: Vec<usize> = ep.base().collect();
    let mut out = Vec::new();
    for mask in 1u64..(1u64 << base.len()) {
        let set: Vec<usize> = base.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &x)| x).collect();
        let closed = set.iter().all(|&x| base.iter().all(|&y| !ep.leq(y, x) || set.contains(&y)));
        if closed {
            out.push(set);
        }
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}
