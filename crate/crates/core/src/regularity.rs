//! Residual regularity of permutation complexes: regular exactly when p ∤ |G|,
//! or p = 2 with cyclic Sylow 2-subgroups. Non-regular verdicts carry a
//! witness subgroup: a Cp for odd p, otherwise a C2×C2 or Q8 in the Sylow.

use std::fmt::Write as _;

use serde::Serialize;

use crate::catalog::parse_group_with_cap;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup, TwoGroupBranch, DEFAULT_ORDER_CAP};
use crate::spectrum::{closed_points, describe_subgroup, SubgroupDescriptor};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Regular,
    NotRegular,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Reason {
    NonModular,
    P2SylowCyclic,
    OddPrimeWitnessCp,
    KleinFourWitness,
    Q8Witness,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RegularityReport {
    pub group: String,
    pub order: usize,
    pub p: u32,
    pub modular: bool,
    pub verdict: Verdict,
    pub reason: Reason,
    pub witness: Option<SubgroupDescriptor>,
    #[serde(skip)]
    pub witness_subgroup: Option<Subgroup>,
}

pub fn classify(group: &FiniteGroup, p: u32) -> Result<RegularityReport> {
    if !crate::field::is_prime(p as u64) {
        return Err(Error::NotPrime(p as u64));
    }
    let modular = group.order().is_multiple_of(p as usize);
    let report = |verdict, reason, witness: Option<Subgroup>| RegularityReport {
        group: group.name().to_string(),
        order: group.order(),
        p,
        modular,
        verdict,
        reason,
        witness: witness.as_ref().map(|w| describe_subgroup(group, w)),
        witness_subgroup: witness,
    };
    if !modular {
        return Ok(report(Verdict::Regular, Reason::NonModular, None));
    }
    if p != 2 {
        let a = group
            .element_of_order(p as usize)
            .ok_or_else(|| Error::Internal(format!("no element of order {p} despite p | |G|")))?;
        let w = group.cyclic_subgroup(a);
        return Ok(report(Verdict::NotRegular, Reason::OddPrimeWitnessCp, Some(w)));
    }
    let sylow = group.sylow_subgroup(2);
    if group.is_cyclic(&sylow) {
        return Ok(report(Verdict::Regular, Reason::P2SylowCyclic, None));
    }
    let p_group = group.subgroup_as_group(&sylow, format!("Syl2({})", group.name()));
    let tri = p_group.two_group_trichotomy()?;
    let w = Subgroup::from_set(tri.witness.members().iter().map(|&i| sylow.members()[i]));
    let reason = match tri.branch {
        TwoGroupBranch::ContainsKleinFour => Reason::KleinFourWitness,
        TwoGroupBranch::ContainsQ8 => Reason::Q8Witness,
        TwoGroupBranch::Cyclic => return Err(Error::Internal("non-cyclic Sylow classified as cyclic".into())),
    };
    Ok(report(Verdict::NotRegular, reason, Some(w)))
}

/// Whether the witness is a subgroup of the type its reason claims.
pub fn witness_is_valid(group: &FiniteGroup, r: &RegularityReport) -> bool {
    let w = r.witness_subgroup.as_ref();
    match (r.reason, w) {
        (Reason::NonModular | Reason::P2SylowCyclic, None) => r.verdict == Verdict::Regular,
        (Reason::OddPrimeWitnessCp, Some(w)) => {
            w.order() == r.p as usize && group.is_cyclic(w) && group.subgroup_from(w.members().to_vec()).is_ok()
        }
        (Reason::KleinFourWitness, Some(w)) => group.is_klein_four(w) && group.subgroup_from(w.members().to_vec()).is_ok(),
        (Reason::Q8Witness, Some(w)) => group.is_quaternion_eight(w) && group.subgroup_from(w.members().to_vec()).is_ok(),
        _ => false,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PointStatus {
    pub point: String,
    pub closed: bool,
    pub verdict: Verdict,
}

/// Per-point status for G = C_{p^n}: the n+1 closed points M(H_i), |H_i| = p^i,
/// followed by the n bottom points.
pub fn cyclic_point_report(n: u32, p: u32) -> Result<Vec<PointStatus>> {
    if n == 0 {
        return Err(Error::Unsupported("the exponent must be at least 1".into()));
    }
    let order = (p as usize)
        .checked_pow(n)
        .ok_or(Error::OrderCap { order: usize::MAX, cap: DEFAULT_ORDER_CAP })?;
    let group = parse_group_with_cap(&format!("C{order}"), order.max(DEFAULT_ORDER_CAP))?;
    let mut out: Vec<PointStatus> = closed_points(&group, p)
        .into_iter()
        .map(|pt| {
            let size = pt.representative.order();
            let verdict = if p == 2 || size == 1 { Verdict::Regular } else { Verdict::NotRegular };
            PointStatus {
                point: format!("M(C{size})").replace("M(C1)", "M(1)"),
                closed: true,
                verdict,
            }
        })
        .collect();
    // stalks at the bottom points are tt-fields
    out.extend((1..=n).map(|i| PointStatus {
        point: format!("bottom {i}"),
        closed: false,
        verdict: Verdict::Regular,
    }));
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusRow {
    pub descriptor: String,
    pub p: u32,
    pub report: Option<RegularityReport>,
    pub error: Option<String>,
}

/// Every group against every prime, group-major; failing rows keep their error.
pub fn census(descriptors: &[&str], primes: &[u32], cap: usize) -> Vec<CensusRow> {
    let mut rows = Vec::new();
    for &d in descriptors {
        let group = parse_group_with_cap(d, cap);
        for &p in primes {
            let result = group.as_ref().map_err(Clone::clone).and_then(|g| classify(g, p));
            rows.push(match result {
                Ok(r) => CensusRow {
                    descriptor: d.to_string(),
                    p,
                    report: Some(r),
                    error: None,
                },
                Err(e) => CensusRow {
                    descriptor: d.to_string(),
                    p,
                    report: None,
                    error: Some(e.to_string()),
                },
            });
        }
    }
    rows
}

pub const TSV_HEADER: &str = "group\torder\tp\tmodular\tverdict\treason\twitness";

fn witness_cell(w: &Option<SubgroupDescriptor>) -> String {
    match w {
        None => "-".into(),
        Some(w) => format!("<{}> order {}", w.generators.join(","), w.order),
    }
}

pub fn census_tsv(rows: &[CensusRow]) -> String {
    let mut out = String::from(TSV_HEADER);
    out.push('\n');
    for row in rows {
        match (&row.report, &row.error) {
            (Some(r), _) => {
                let _ = writeln!(
                    out,
                    "{}\t{}\t{}\t{}\t{:?}\t{:?}\t{}",
                    r.group,
                    r.order,
                    r.p,
                    r.modular,
                    r.verdict,
                    r.reason,
                    witness_cell(&r.witness)
                );
            }
            (None, e) => {
                let _ = writeln!(
                    out,
                    "{}\t-\t{}\t-\terror\t{}\t-",
                    row.descriptor,
                    row.p,
                    e.as_deref().unwrap_or("").replace('\t', " ")
                );
            }
        }
    }
    out
}
