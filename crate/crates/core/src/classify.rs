//! Gorenstein / level / Cohen–Macaulay type classification, the floating set,
//! the combinatorial type-2 criteria, and cross-validation between the
//! criteria and direct enumeration of generators.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::budget::Budgets;
use crate::condn::{compute_rmax, SequenceRecord};
use crate::error::{HibiError, Result};
use crate::poset::ExtendedPoset;
use crate::valuation::{enumerate_minimal, Valuation};

/// F = {x ∈ P | rank[x0, x] + rank[x, ∞] < r}, in linear-extension order.
pub fn floating_set(ep: &ExtendedPoset) -> Vec<usize> {
    let (x0, top) = (ep.bottom(), ep.top());
    let r = ep.global_rank() as i64;
    ep.linear_extension()
        .iter()
        .copied()
        .filter(|&x| x != top && ep.r(x0, x) + ep.r(x, top) < r)
        .collect()
}

/// Gorenstein iff the base poset P is pure.
pub fn is_gorenstein(ep: &ExtendedPoset) -> bool {
    let base: Vec<usize> = ep.base().collect();
    ep.subposet(&base).expect("P contains x0").is_pure()
}

/// Level iff r_max = r.
pub fn is_level(ep: &ExtendedPoset, max_sequences: u64) -> Result<bool> {
    Ok(compute_rmax(ep, max_sequences)?.0 == ep.global_rank() as i64)
}

/// Number of generators per degree.
pub fn histogram(ep: &ExtendedPoset, generators: &[Valuation]) -> BTreeMap<i64, usize> {
    let mut h = BTreeMap::new();
    for g in generators {
        *h.entry(g.degree(ep)).or_insert(0) += 1;
    }
    h
}

/// All canonical-module generators (minimal elements of T(P)).
pub fn generators(ep: &ExtendedPoset, budgets: &Budgets) -> Result<Vec<Valuation>> {
    guard_elements(ep, budgets)?;
    let (rmax, _) = compute_rmax(ep, budgets.max_sequences)?;
    enumerate_minimal(ep, rmax, budgets.max_box)
}

/// Cohen–Macaulay type: the number of generators.
pub fn cm_type(ep: &ExtendedPoset, budgets: &Budgets) -> Result<usize> {
    Ok(generators(ep, budgets)?.len())
}

pub fn degree_histogram(ep: &ExtendedPoset, budgets: &Budgets) -> Result<BTreeMap<i64, usize>> {
    Ok(histogram(ep, &generators(ep, budgets)?))
}

/// The |F| + 1 degree-r generators ν_1, …, ν_{|F|+1}: ν_t raises the first
/// t − 1 floating elements to r − rank[x0, x] and leaves the rest at rank[x, ∞].
pub fn floating_family(ep: &ExtendedPoset) -> Vec<Valuation> {
    let floating = floating_set(ep);
    let (x0, top) = (ep.bottom(), ep.top());
    let r = ep.global_rank() as i64;
    (0..=floating.len())
        .map(|raised| {
            let mut values: Vec<i64> = (0..ep.len()).map(|x| ep.r(x, top)).collect();
            for &f in &floating[..raised] {
                values[f] = r - ep.r(x0, f);
            }
            Valuation::from_values(ep, values).expect("floating family values are nonnegative")
        })
        .collect()
}

/// First z (by name) with rank[x0,z] + rank[z,∞] = r − 1, P⁺∖{z} pure of
/// rank r, and both [x0,z] and [z,∞] pure. Present iff level of type 2.
pub fn level_type2_witness(ep: &ExtendedPoset) -> Option<usize> {
    let (x0, top) = (ep.bottom(), ep.top());
    let r = ep.global_rank() as i64;
    ep.base().find(|&z| {
        if ep.r(x0, z) + ep.r(z, top) != r - 1 {
            return false;
        }
        let rest: Vec<usize> = (0..ep.len()).filter(|&w| w != z).collect();
        let rest = ep.subposet(&rest).expect("P⁺ minus one element is nonempty");
        if !rest.is_pure() || rest.height() as i64 != r {
            return false;
        }
        let pure = |lo: usize, hi: usize| ep.is_pure(&ep.interval(lo, hi)).expect("interval is nonempty");
        pure(x0, z) && pure(z, top)
    })
}

/// First cover pair x ⋖ y in P∖{x0} (by names of x, then y) with
/// rank[x0,y] + rank[x,∞] = r + 2, P⁺ = [x0,y] ∪ [x,∞], and
/// rank[x0,z1] + rank[z1,z2] + rank[z2,∞] = r for all other z1 ≤ z2.
/// Present iff non-level of type 2.
pub fn nonlevel_type2_witness(ep: &ExtendedPoset) -> Option<(usize, usize)> {
    let (x0, top) = (ep.bottom(), ep.top());
    let r = ep.global_rank() as i64;
    let n = ep.len();
    for x in ep.base().filter(|&x| x != x0) {
        for &y in ep.upper_covers(x) {
            if y == top {
                continue;
            }
            if ep.r(x0, y) + ep.r(x, top) != r + 2 {
                continue;
            }
            if !(0..n).all(|z| ep.leq(z, y) || ep.leq(x, z)) {
                continue;
            }
            let three_sums = (0..n).all(|z1| {
                (0..n).all(|z2| {
                    !ep.leq(z1, z2) || (z1, z2) == (x, y) || ep.r(x0, z1) + ep.r(z1, z2) + ep.r(z2, top) == r
                })
            });
            if three_sums {
                return Some((x, y));
            }
        }
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossCheck {
    pub name: String,
    pub verdict: Verdict,
    pub detail: String,
}

impl CrossCheck {
    fn new(name: &str, ok: bool, detail: impl Into<String>) -> Self {
        let verdict = if ok { Verdict::Pass } else { Verdict::Fail };
        Self { name: name.to_owned(), verdict, detail: detail.into() }
    }

    fn skipped(name: &str) -> Self {
        Self { name: name.to_owned(), verdict: Verdict::Skipped, detail: "generators not enumerated".to_owned() }
    }
}

/// Whether the generators were enumerated or only the criteria evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Full,
    CriteriaOnly,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverWitness {
    pub x: String,
    pub y: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub r: usize,
    pub r_max: i64,
    pub rmax_witness: SequenceRecord,
    pub floating: Vec<String>,
    pub gorenstein: bool,
    pub level: bool,
    pub cm_type: Option<usize>,
    pub degree_histogram: Option<BTreeMap<i64, usize>>,
    pub level_type2_witness: Option<String>,
    pub nonlevel_type2_witness: Option<CoverWitness>,
    pub mode: Mode,
    pub cross_checks: Vec<CrossCheck>,
}

impl AnalysisReport {
    pub fn failed_checks(&self) -> Vec<String> {
        self.cross_checks.iter().filter(|c| c.verdict == Verdict::Fail).map(|c| c.name.clone()).collect()
    }

    pub fn is_consistent(&self) -> bool {
        self.cross_checks.iter().all(|c| c.verdict != Verdict::Fail)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn guard_elements(ep: &ExtendedPoset, budgets: &Budgets) -> Result<()> {
    if ep.base_len() > budgets.max_elements {
        return Err(HibiError::SizeGuard {
            what: format!("poset with {} elements", ep.base_len()),
            limit: budgets.max_elements as u64,
            hint: "--max-elements".to_owned(),
        });
    }
    Ok(())
}

/// Full analysis. Falls back to criteria-only when the generator search
/// exceeds `budgets.max_box`; any failed cross-check is an error.
pub fn classify(ep: &ExtendedPoset, budgets: &Budgets) -> Result<AnalysisReport> {
    guard_elements(ep, budgets)?;
    let r = ep.global_rank();
    let ri = r as i64;
    let (rmax, witness) = compute_rmax(ep, budgets.max_sequences)?;
    let floating = floating_set(ep);
    let gorenstein = is_gorenstein(ep);
    let level = rmax == ri;
    let lt2 = level_type2_witness(ep);
    let nlt2 = nonlevel_type2_witness(ep);

    let generators = match enumerate_minimal(ep, rmax, budgets.max_box) {
        Ok(g) => Some(g),
        Err(HibiError::SizeGuard { .. }) => None,
        Err(e) => return Err(e),
    };
    let hist = generators.as_ref().map(|g| histogram(ep, g));
    let cm_type = match &generators {
        Some(g) => Some(g.len()),
        None if gorenstein => Some(1),
        None if lt2.is_some() || nlt2.is_some() => Some(2),
        None => None,
    };

    let mut checks = Vec::with_capacity(8);
    match (&generators, &hist) {
        (Some(g), Some(h)) => {
            let t = g.len();
            let all_r = g.iter().all(|v| v.degree(ep) == ri);
            checks.push(CrossCheck::new(
                "level_iff_all_degrees_r",
                level == all_r,
                format!("level={level}, all generators of degree r={all_r}"),
            ));
            checks.push(CrossCheck::new("gorenstein_iff_type_1", gorenstein == (t == 1), format!("gorenstein={gorenstein}, type={t}")));
            checks.push(CrossCheck::new(
                "type2_criteria",
                lt2.is_some() == (level && t == 2) && nlt2.is_some() == (!level && t == 2),
                format!(
                    "level witness={}, non-level witness={}, level={level}, type={t}",
                    lt2.is_some(),
                    nlt2.is_some()
                ),
            ));
            let keys: Vec<i64> = h.keys().copied().collect();
            let interval: Vec<i64> = (ri..=rmax).collect();
            checks.push(CrossCheck::new("degrees_fill_r_to_rmax", keys == interval, format!("degrees {keys:?}, expected {ri}..={rmax}")));
            checks.push(CrossCheck::new("type_exceeds_floating", t > floating.len(), format!("type={t}, |F|={}", floating.len())));
        }
        _ => {
            for name in [
                "level_iff_all_degrees_r",
                "gorenstein_iff_type_1",
                "type2_criteria",
                "degrees_fill_r_to_rmax",
                "type_exceeds_floating",
            ] {
                checks.push(CrossCheck::skipped(name));
            }
        }
    }

    let mut not_floating = vec![true; ep.len()];
    for &f in &floating {
        not_floating[f] = false;
    }
    let rest: Vec<usize> = (0..ep.len()).filter(|&z| not_floating[z]).collect();
    let rest_sub = ep.subposet(&rest).expect("x0 is never floating");
    if level {
        let pure = rest_sub.is_pure();
        let height = rest_sub.height();
        checks.push(CrossCheck::new(
            "level_implies_pure_without_floating",
            pure && height == r,
            format!("P+ minus F pure={pure}, rank={height}, r={r}"),
        ));
        let bad = rest.iter().flat_map(|&a| rest.iter().map(move |&b| (a, b))).find(|&(a, b)| {
            ep.leq(a, b) && rest_sub.rank(a, b) != ep.rank(a, b)
        });
        checks.push(CrossCheck::new(
            "level_implies_floating_free_ranks",
            bad.is_none(),
            match bad {
                None => "ranks agree on P+ minus F".to_owned(),
                Some((a, b)) => format!("rank[{}, {}] differs", ep.name(a), ep.name(b)),
            },
        ));
    } else {
        checks.push(CrossCheck::new("level_implies_pure_without_floating", true, "not level"));
        checks.push(CrossCheck::new("level_implies_floating_free_ranks", true, "not level"));
    }

    match &generators {
        Some(g) => checks.push(CrossCheck::new(
            "type_at_least_degree_span",
            g.len() as i64 > rmax - ri,
            format!("type={}, r_max-r+1={}", g.len(), rmax - ri + 1),
        )),
        None => checks.push(CrossCheck::skipped("type_at_least_degree_span")),
    }

    let report = AnalysisReport {
        r,
        r_max: rmax,
        rmax_witness: witness.to_record(ep, rmax),
        floating: ep.names_of(&floating),
        gorenstein,
        level,
        cm_type,
        degree_histogram: hist,
        level_type2_witness: lt2.map(|z| ep.name(z).to_owned()),
        nonlevel_type2_witness: nlt2.map(|(x, y)| CoverWitness { x: ep.name(x).to_owned(), y: ep.name(y).to_owned() }),
        mode: if generators.is_some() { Mode::Full } else { Mode::CriteriaOnly },
        cross_checks: checks,
    };
    if report.is_consistent() {
        Ok(report)
    } else {
        Err(HibiError::Inconsistent(Box::new(report)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn floating_sets() {
        assert!(floating_set(&fixtures::chain3().extend()).is_empty());
        assert!(floating_set(&fixtures::n7().extend()).is_empty());
        let ep = fixtures::p1().extend();
        assert_eq!(ep.names_of(&floating_set(&ep)), ["z"]);
    }

    #[test]
    fn gorenstein_by_purity() {
        assert!(is_gorenstein(&fixtures::chain3().extend()));
        assert!(!is_gorenstein(&fixtures::l6().extend()));
        assert!(!is_gorenstein(&fixtures::n7().extend()));
    }

    #[test]
    fn levelness() {
        assert!(is_level(&fixtures::l6().extend(), 1_000_000).unwrap());
        assert!(!is_level(&fixtures::n7().extend(), 1_000_000).unwrap());
        assert!(!is_level(&fixtures::p1().extend(), 1_000_000).unwrap());
        assert!(!is_level(&fixtures::p2().extend(), 10_000_000).unwrap());
    }

    #[test]
    fn types_and_histograms() {
        let b = Budgets::default();
        let ep = fixtures::chain3().extend();
        assert_eq!(cm_type(&ep, &b).unwrap(), 1);
        assert_eq!(degree_histogram(&ep, &b).unwrap(), BTreeMap::from([(3, 1)]));
        let ep = fixtures::n7().extend();
        assert_eq!(degree_histogram(&ep, &b).unwrap(), BTreeMap::from([(4, 1), (5, 1)]));
        let ep = fixtures::p1().extend();
        assert_eq!(degree_histogram(&ep, &b).unwrap(), BTreeMap::from([(6, 2), (7, 3), (8, 6)]));
    }

    #[test]
    fn floating_family_members() {
        let ep = fixtures::chain3().extend();
        assert_eq!(floating_family(&ep), vec![Valuation::nu_zero(&ep)]);
        for p in [fixtures::p1(), fixtures::p2()] {
            let ep = p.extend();
            let fam = floating_family(&ep);
            assert_eq!(fam.len(), 2);
            assert_ne!(fam[0], fam[1]);
            for v in &fam {
                assert_eq!(v.degree(&ep), 6);
                assert!(v.is_minimal(&ep).unwrap());
            }
        }
    }

    #[test]
    fn type_two_witnesses() {
        let ep = fixtures::l6().extend();
        assert_eq!(level_type2_witness(&ep).map(|z| ep.name(z)), Some("z"));
        assert_eq!(nonlevel_type2_witness(&ep), None);
        let ep = fixtures::n7().extend();
        let w = nonlevel_type2_witness(&ep).unwrap();
        assert_eq!((ep.name(w.0), ep.name(w.1)), ("z", "a3"));
        assert_eq!(level_type2_witness(&ep), None);
        for p in [fixtures::chain3(), fixtures::p1()] {
            let ep = p.extend();
            assert_eq!(level_type2_witness(&ep), None);
            assert_eq!(nonlevel_type2_witness(&ep), None);
        }
    }

    #[test]
    fn classify_fixtures() {
        let b = Budgets::default();
        let rep = classify(&fixtures::chain3().extend(), &b).unwrap();
        assert_eq!((rep.r, rep.r_max, rep.gorenstein, rep.level, rep.cm_type), (3, 3, true, true, Some(1)));
        let rep = classify(&fixtures::n7().extend(), &b).unwrap();
        assert_eq!((rep.r, rep.r_max, rep.gorenstein, rep.level, rep.cm_type), (4, 5, false, false, Some(2)));
        assert_eq!(rep.nonlevel_type2_witness, Some(CoverWitness { x: "z".into(), y: "a3".into() }));
        assert_eq!(rep.mode, Mode::Full);
        assert!(rep.cross_checks.iter().all(|c| c.verdict == Verdict::Pass));
    }

    #[test]
    fn criteria_only_when_box_budget_is_tiny() {
        let b = Budgets { max_box: 1, ..Budgets::default() };
        let rep = classify(&fixtures::n7().extend(), &b).unwrap();
        assert_eq!(rep.mode, Mode::CriteriaOnly);
        assert_eq!(rep.cm_type, Some(2));
        assert_eq!(rep.degree_histogram, None);
        let rep = classify(&fixtures::p1().extend(), &b).unwrap();
        assert_eq!(rep.cm_type, None);
    }

    #[test]
    fn element_budget() {
        let b = Budgets { max_elements: 5, ..Budgets::default() };
        assert!(matches!(classify(&fixtures::p1().extend(), &b), Err(HibiError::SizeGuard { .. })));
    }

    #[test]
    fn report_json_keys() {
        let rep = classify(&fixtures::n7().extend(), &Budgets::default()).unwrap();
        let v: serde_json::Value = serde_json::from_str(&rep.to_json()).unwrap();
        assert_eq!(v["degree_histogram"]["5"], 1);
        assert_eq!(v["mode"], "full");
        assert_eq!(v["rmax_witness"]["value"], 5);
    }
}
