//! Text descriptions of complexes of coset modules over abelian groups.
//!
//! ```text
//! group: C2xC2
//! p: 2
//! window: -1                  # optional; present for periodic complexes
//! term 0: G/G
//! term -1: G/1
//! d -1: [[1]]
//! junction: [[x,y,x+y]]
//! pattern: G/<x> + G/<y> + G/<xy> | [[1,0,y],[1,x,0],[1,x,y]]
//! pattern: G/1 + G/G + G/G | [[x,y,x+y],[1,0,1],[0,1,1]]
//! ```
//!
//! Summands are `G/1`, `G/G` or `G/<m,…>` where each `m` is a monomial in the
//! generator names (`t` for cyclic groups, `x, y, …` otherwise) read
//! multiplicatively: `<xy>` is generated by g₁g₂, `<t^2>` by g². Matrix
//! entries are group-algebra polynomials in xᵢ = gᵢ − 1; row i, column j is
//! the entry from source summand j to target summand i. Pattern line j
//! carries the term in degree `window − 1 − j` and the differential into it.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::{block_map, sum_of_cosets, variable_names, Poly};
use crate::catalog::parse_group_with_cap;
use crate::complex::{BoundedComplex, Complex, PeriodicComplex};
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::group::{FiniteGroup, Subgroup, DEFAULT_ORDER_CAP};

#[derive(Debug, Clone)]
pub struct ComplexDescription {
    pub group: Arc<FiniteGroup>,
    pub field: PrimeField,
    pub complex: Complex,
}

pub fn parse_complex(text: &str) -> Result<ComplexDescription> {
    parse_complex_with_cap(text, DEFAULT_ORDER_CAP)
}

pub fn parse_complex_with_cap(text: &str, cap: usize) -> Result<ComplexDescription> {
    let mut group = None;
    let mut p = None;
    let mut start = None;
    let mut terms: BTreeMap<i32, (usize, Vec<Subgroup>)> = BTreeMap::new();
    let mut diffs: BTreeMap<i32, (usize, String)> = BTreeMap::new();
    let mut junction = None;
    let mut pattern: Vec<(usize, Vec<Subgroup>, String)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |message: String| Error::Parse { line: line_no, message };
        let (key, value) = line
            .split_once(':')
            .ok_or_else(|| err(format!("expected `key: value`, found `{line}`")))?;
        let (key, value) = (key.trim(), value.trim());
        let need_group = || group.clone().ok_or_else(|| err("`group:` must come first".into()));
        if key == "group" {
            group = Some(parse_group_with_cap(value, cap).map_err(|e| err(e.to_string()))?);
        } else if key == "p" {
            let v: u64 = value.parse().map_err(|_| err(format!("bad prime `{value}`")))?;
            p = Some(PrimeField::new(v).map_err(|e| err(e.to_string()))?);
        } else if key == "window" {
            start = Some(parse_degree(value).map_err(err)?);
        } else if let Some(deg) = key.strip_prefix("term ") {
            let g = need_group()?;
            let n = parse_degree(deg).map_err(err)?;
            terms.insert(n, (line_no, parse_summands(&g, value).map_err(err)?));
        } else if let Some(deg) = key.strip_prefix("d ") {
            let n = parse_degree(deg).map_err(err)?;
            diffs.insert(n, (line_no, value.to_string()));
        } else if key == "junction" {
            junction = Some((line_no, value.to_string()));
        } else if key == "pattern" {
            let g = need_group()?;
            let (summands, matrix) = value
                .split_once('|')
                .ok_or_else(|| err("pattern lines are `summands | matrix`".into()))?;
            pattern.push((line_no, parse_summands(&g, summands).map_err(err)?, matrix.trim().to_string()));
        } else {
            return Err(err(format!("unknown key `{key}`")));
        }
    }

    let group = group.ok_or(Error::Parse {
        line: 0,
        message: "missing `group:`".into(),
    })?;
    let field = p.ok_or(Error::Parse {
        line: 0,
        message: "missing `p:`".into(),
    })?;
    let names = variable_names(group.generators().len());
    let at = |line: usize| move |e: Error| Error::Parse { line, message: e.to_string() };
    let no_summands = Vec::new();
    let summands_at = |n: i32| terms.get(&n).map(|(_, s)| s).unwrap_or(&no_summands);

    let mut window = BoundedComplex::new(&group, field);
    for (&n, (line, s)) in &terms {
        window.set_term(n, sum_of_cosets(&group, s, field).map_err(at(*line))?).map_err(at(*line))?;
    }
    for (&n, (line, m)) in &diffs {
        let entries = parse_matrix(m, &names).map_err(at(*line))?;
        let d = block_map(&group, field, summands_at(n), summands_at(n + 1), &entries).map_err(at(*line))?;
        window.set_differential(n, d).map_err(at(*line))?;
    }

    let complex = match start {
        None => {
            if junction.is_some() || !pattern.is_empty() {
                return Err(Error::Parse {
                    line: 0,
                    message: "`junction:` and `pattern:` need `window:`".into(),
                });
            }
            Complex::Bounded(window)
        }
        Some(w) => {
            let (jline, jtext) = junction.ok_or(Error::Parse {
                line: 0,
                message: "periodic complex without `junction:`".into(),
            })?;
            if pattern.is_empty() {
                return Err(Error::Parse {
                    line: 0,
                    message: "periodic complex without `pattern:` lines".into(),
                });
            }
            let l = pattern.len();
            let mut built = Vec::with_capacity(l);
            for j in 0..l {
                let (line, target, m) = &pattern[j];
                let source = &pattern[(j + 1) % l].1;
                let entries = parse_matrix(m, &names).map_err(at(*line))?;
                let d = block_map(&group, field, source, target, &entries).map_err(at(*line))?;
                built.push((d.target().clone(), d));
            }
            let entries = parse_matrix(&jtext, &names).map_err(at(jline))?;
            let junction = block_map(&group, field, &pattern[0].1, summands_at(w), &entries).map_err(at(jline))?;
            Complex::Periodic(PeriodicComplex::new(window, w, junction, built).map_err(at(jline))?)
        }
    };
    Ok(ComplexDescription { group, field, complex })
}

fn parse_degree(s: &str) -> std::result::Result<i32, String> {
    s.trim().parse().map_err(|_| format!("bad degree `{}`", s.trim()))
}

/// `G/1 + G/<x> + G/G`
pub fn parse_summands(group: &FiniteGroup, s: &str) -> std::result::Result<Vec<Subgroup>, String> {
    let s = s.trim();
    if s == "0" || s.is_empty() {
        return Ok(Vec::new());
    }
    s.split('+').map(|tok| parse_summand(group, tok.trim())).collect()
}

fn parse_summand(group: &FiniteGroup, tok: &str) -> std::result::Result<Subgroup, String> {
    let rest = tok
        .strip_prefix("G/")
        .ok_or_else(|| format!("summand `{tok}` does not start with `G/`"))?;
    match rest {
        "1" => return Ok(group.trivial_subgroup()),
        "G" => return Ok(group.whole()),
        _ => {}
    }
    let inner = rest
        .strip_prefix('<')
        .and_then(|r| r.strip_suffix('>'))
        .ok_or_else(|| format!("summand `{tok}` is not G/1, G/G or G/<…>"))?;
    let names = variable_names(group.generators().len());
    let mut gens = Vec::new();
    for word in inner.split(',') {
        let poly = Poly::parse(word.trim(), &names).map_err(|e| e.to_string())?;
        let [(1, exps)] = poly.terms() else {
            return Err(format!("`{}` is not a single monomial", word.trim()));
        };
        let mut element = FiniteGroup::IDENTITY;
        for (i, &e) in exps.iter().enumerate() {
            element = group.mul(element, group.pow(group.generators()[i], e as usize));
        }
        gens.push(element);
    }
    Ok(group.closure(&gens))
}

/// `[[a,b],[c,d]]`; `[]` is the empty matrix.
pub fn parse_matrix(s: &str, names: &[String]) -> Result<Vec<Vec<Poly>>> {
    let bad = |message: String| Error::Parse { line: 0, message };
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let inner = compact
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| bad(format!("matrix `{s}` is not bracketed")))?;
    if inner.is_empty() {
        return Ok(Vec::new());
    }
    let mut rows = Vec::new();
    let mut rest = inner;
    loop {
        let body = rest
            .strip_prefix('[')
            .ok_or_else(|| bad(format!("expected `[` in matrix `{s}`")))?;
        let close = body.find(']').ok_or_else(|| bad(format!("unclosed row in `{s}`")))?;
        let row = body[..close]
            .split(',')
            .map(|e| Poly::parse(e, names))
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
        rest = &body[close + 1..];
        if rest.is_empty() {
            break;
        }
        rest = rest
            .strip_prefix(',')
            .ok_or_else(|| bad(format!("expected `,` between rows of `{s}`")))?;
    }
    if rows.iter().any(|r| r.len() != rows[0].len()) {
        return Err(bad(format!("ragged matrix `{s}`")));
    }
    Ok(rows)
}
