//! Group-algebra entries for maps between cyclic quotients of kG.
//!
//! For an abelian group with chosen generators g₁..g_r, an entry is a
//! polynomial in the augmentation generators xᵢ = gᵢ − 1. A coset module
//! k(G/K) is identified with kG/I_K, where I_K is generated by h − 1 for h in
//! K, and an entry q gives the map kG/I_K1 → kG/I_K2 "multiply by q, then
//! project", which exists exactly when q·I_K1 ⊆ I_K2.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{FpMatrix, PrimeField};
use crate::group::{FiniteGroup, Subgroup};
use crate::module::{coset_module, left_cosets, ModuleMap, PermModule};

/// Variable names for the augmentation generators of a group with `n` generators.
pub fn variable_names(n: usize) -> Vec<String> {
    match n {
        1 => vec!["t".into()],
        _ => ["x", "y", "z", "w"].iter().take(n).map(|s| s.to_string()).chain((4..n).map(|i| format!("x{i}"))).collect(),
    }
}

/// A polynomial with integer coefficients in commuting variables.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly {
    /// `(coefficient, exponent per variable)`
    terms: Vec<(i64, Vec<u32>)>,
    vars: usize,
}

impl Poly {
    pub fn zero(vars: usize) -> Self {
        Poly { terms: Vec::new(), vars }
    }

    pub fn constant(c: i64, vars: usize) -> Self {
        Poly {
            terms: vec![(c, vec![0; vars])],
            vars,
        }
    }

    pub fn monomial(c: i64, exponents: Vec<u32>) -> Self {
        let vars = exponents.len();
        Poly {
            terms: vec![(c, exponents)],
            vars,
        }
    }

    pub fn terms(&self) -> &[(i64, Vec<u32>)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.iter().all(|(c, _)| *c == 0)
    }

    /// True when every coefficient vanishes modulo p.
    pub fn is_zero_mod(&self, p: u32) -> bool {
        self.terms.iter().all(|(c, _)| c.rem_euclid(p as i64) == 0)
    }

    /// Parses e.g. `x+y`, `t^2`, `-1`, `2*x*y`, `x y`.
    pub fn parse(input: &str, names: &[String]) -> Result<Poly> {
        let vars = names.len();
        let err = |message: String| Error::Parse { line: 0, message };
        let s: Vec<char> = input.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(err(format!("empty entry in {input:?}")));
        }
        let mut terms = Vec::new();
        let mut pos = 0;
        while pos < s.len() {
            let mut sign = 1i64;
            while pos < s.len() && (s[pos] == '+' || s[pos] == '-') {
                if s[pos] == '-' {
                    sign = -sign;
                }
                pos += 1;
            }
            let mut coef = 1i64;
            let mut exps = vec![0u32; vars];
            let mut any = false;
            loop {
                if pos < s.len() && s[pos] == '*' && any {
                    pos += 1;
                }
                if pos >= s.len() || s[pos] == '+' || s[pos] == '-' {
                    break;
                }
                if s[pos].is_ascii_digit() {
                    let start = pos;
                    while pos < s.len() && s[pos].is_ascii_digit() {
                        pos += 1;
                    }
                    let n: i64 = s[start..pos]
                        .iter()
                        .collect::<String>()
                        .parse()
                        .map_err(|e| err(format!("{e} in {input:?}")))?;
                    coef *= n;
                    any = true;
                    continue;
                }
                // longest matching variable name
                let var = names
                    .iter()
                    .enumerate()
                    .filter(|(_, n)| s[pos..].iter().collect::<String>().starts_with(n.as_str()))
                    .max_by_key(|(_, n)| n.len());
                let Some((v, name)) = var else {
                    return Err(err(format!("unexpected '{}' in {input:?}", s[pos])));
                };
                pos += name.chars().count();
                let mut e = 1u32;
                if pos < s.len() && s[pos] == '^' {
                    pos += 1;
                    let start = pos;
                    while pos < s.len() && s[pos].is_ascii_digit() {
                        pos += 1;
                    }
                    e = s[start..pos]
                        .iter()
                        .collect::<String>()
                        .parse()
                        .map_err(|_| err(format!("bad exponent in {input:?}")))?;
                }
                exps[v] += e;
                any = true;
            }
            if !any {
                return Err(err(format!("dangling sign in {input:?}")));
            }
            terms.push((sign * coef, exps));
        }
        Ok(Poly { terms, vars })
    }

    pub fn vars(&self) -> usize {
        self.vars
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = variable_names(self.vars);
        let nonzero: Vec<_> = self.terms.iter().filter(|(c, _)| *c != 0).collect();
        if nonzero.is_empty() {
            return write!(f, "0");
        }
        for (i, (c, exps)) in nonzero.iter().enumerate() {
            let mono: Vec<String> = exps
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(v, &e)| if e == 1 { names[v].clone() } else { format!("{}^{}", names[v], e) })
                .collect();
            let sign = if *c < 0 { "-" } else if i > 0 { "+" } else { "" };
            let mag = c.abs();
            let body = match (mag, mono.is_empty()) {
                (m, true) => m.to_string(),
                (1, false) => mono.join(""),
                (m, false) => format!("{m}{}", mono.join("")),
            };
            write!(f, "{sign}{body}")?;
        }
        Ok(())
    }
}

/// `q` as an element of kG, indexed by group element.
pub fn group_algebra_element(group: &FiniteGroup, q: &Poly, field: PrimeField) -> Result<Vec<u32>> {
    let gens = group.generators();
    if q.vars != gens.len() {
        return Err(Error::Dimension(format!(
            "entry in {} variables for a group with {} generators",
            q.vars,
            gens.len()
        )));
    }
    let n = group.order();
    let mut out = vec![0u32; n];
    for (c, exps) in &q.terms {
        let mut v = vec![0u32; n];
        v[FiniteGroup::IDENTITY] = field.reduce(*c);
        for (i, &e) in exps.iter().enumerate() {
            for _ in 0..e {
                // v ↦ (gᵢ − 1) v
                let mut w = vec![0u32; n];
                for a in 0..n {
                    if v[a] == 0 {
                        continue;
                    }
                    let ga = group.mul(gens[i], a);
                    w[ga] = field.add(w[ga], v[a]);
                    w[a] = field.sub(w[a], v[a]);
                }
                v = w;
            }
        }
        for a in 0..n {
            out[a] = field.add(out[a], v[a]);
        }
    }
    Ok(out)
}

/// The map k(G/K1) → k(G/K2) induced by multiplication with `q`.
pub fn mult_entry_map(
    group: &Arc<FiniteGroup>,
    field: PrimeField,
    q: &Poly,
    k1: &Subgroup,
    k2: &Subgroup,
) -> Result<ModuleMap> {
    if !group.is_abelian() {
        return Err(Error::Unsupported(format!(
            "group-algebra entries need an abelian group, {} is not",
            group.name()
        )));
    }
    let source = coset_module(group, k1, field);
    let target = coset_module(group, k2, field);
    let matrix = mult_entry_matrix(group, field, q, k1, k2, &source, &target)?;
    ModuleMap::new(source, target, matrix)
}

pub(crate) fn mult_entry_matrix(
    group: &Arc<FiniteGroup>,
    field: PrimeField,
    q: &Poly,
    k1: &Subgroup,
    k2: &Subgroup,
    source: &PermModule,
    target: &PermModule,
) -> Result<FpMatrix> {
    let qv = group_algebra_element(group, q, field)?;
    let (src_cosets, _) = left_cosets(group, k1);
    let (_, tgt_coset_of) = left_cosets(group, k2);
    let image = |a: usize| -> Vec<u32> {
        let mut v = vec![0u32; target.dim()];
        for (b, &c) in qv.iter().enumerate() {
            if c != 0 {
                let slot = tgt_coset_of[group.mul(b, a)];
                v[slot] = field.add(v[slot], c);
            }
        }
        v
    };
    let mut matrix = FpMatrix::zeros(field, target.dim(), source.dim());
    for (j, coset) in src_cosets.iter().enumerate() {
        let v = image(coset[0]);
        for &a in &coset[1..] {
            if image(a) != v {
                return Err(Error::IllDefinedEntry {
                    entry: q.to_string(),
                    source_coset: format!("G/{}", k1.order()),
                    target_coset: format!("G/{}", k2.order()),
                });
            }
        }
        for (i, &x) in v.iter().enumerate() {
            matrix.set(i, j, x);
        }
    }
    Ok(matrix)
}

/// `⊕ k(G/Kᵢ)` in the given order.
pub fn sum_of_cosets(group: &Arc<FiniteGroup>, summands: &[Subgroup], field: PrimeField) -> Result<PermModule> {
    let parts: Vec<PermModule> = summands.iter().map(|k| coset_module(group, k, field)).collect();
    if parts.is_empty() {
        return Ok(PermModule::zero(group, field));
    }
    PermModule::direct_sum(&parts.iter().collect::<Vec<_>>())
}

/// A map between sums of coset modules, given entry by entry.
///
/// `entries[i][j]` is the group-algebra entry from source summand `j` to
/// target summand `i`.
pub fn block_map(
    group: &Arc<FiniteGroup>,
    field: PrimeField,
    source: &[Subgroup],
    target: &[Subgroup],
    entries: &[Vec<Poly>],
) -> Result<ModuleMap> {
    if entries.len() != target.len() || entries.iter().any(|row| row.len() != source.len()) {
        return Err(Error::Dimension(format!(
            "expected a {}x{} matrix of entries",
            target.len(),
            source.len()
        )));
    }
    if !group.is_abelian() {
        return Err(Error::Unsupported(format!(
            "group-algebra entries need an abelian group, {} is not",
            group.name()
        )));
    }
    let src_parts: Vec<PermModule> = source.iter().map(|k| coset_module(group, k, field)).collect();
    let tgt_parts: Vec<PermModule> = target.iter().map(|k| coset_module(group, k, field)).collect();
    let src = sum_of_cosets(group, source, field)?;
    let tgt = sum_of_cosets(group, target, field)?;
    let mut matrix = FpMatrix::zeros(field, tgt.dim(), src.dim());
    let mut row = 0;
    for (i, k2) in target.iter().enumerate() {
        let mut col = 0;
        for (j, k1) in source.iter().enumerate() {
            let q = &entries[i][j];
            if !q.is_zero_mod(field.characteristic()) {
                let block = mult_entry_matrix(group, field, q, k1, k2, &src_parts[j], &tgt_parts[i])?;
                matrix.paste(row, col, &block);
            }
            col += src_parts[j].dim();
        }
        row += tgt_parts[i].dim();
    }
    ModuleMap::new(src, tgt, matrix)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::parse_group;

    fn gf(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn parse_and_print() {
        let xy = variable_names(2);
        assert_eq!(Poly::parse("x+y", &xy).unwrap().to_string(), "x+y");
        assert_eq!(Poly::parse(" 2*x*y - 1", &xy).unwrap().to_string(), "2xy-1");
        assert_eq!(Poly::parse("x^2y", &xy).unwrap().terms()[0].1, vec![2, 1]);
        let t = variable_names(1);
        assert_eq!(Poly::parse("t^2", &t).unwrap().to_string(), "t^2");
        assert_eq!(Poly::parse("-1", &t).unwrap().to_string(), "-1");
        assert!(Poly::parse("q", &t).is_err());
        assert!(Poly::parse("t+", &t).is_err());
    }

    #[test]
    fn norm_map_of_c2() {
        let c2 = parse_group("C2").unwrap();
        let t = Poly::parse("t", &variable_names(1)).unwrap();
        let m = mult_entry_map(&c2, gf(2), &t, &c2.whole(), &c2.trivial_subgroup()).unwrap();
        assert_eq!(m.matrix(), &FpMatrix::from_rows(gf(2), &[vec![1], vec![1]]).unwrap());
    }

    #[test]
    fn klein_entry_x_into_regular() {
        let e = parse_group("C2xC2").unwrap();
        let x = Poly::parse("x", &variable_names(2)).unwrap();
        let n0 = e.cyclic_subgroup(e.generators()[0]);
        let m = mult_entry_map(&e, gf(2), &x, &n0, &e.trivial_subgroup()).unwrap();
        assert_eq!((m.source().dim(), m.target().dim()), (2, 4));
        // but x does not descend from R/(y)
        let n1 = e.cyclic_subgroup(e.generators()[1]);
        assert!(matches!(
            mult_entry_map(&e, gf(2), &x, &n1, &e.trivial_subgroup()),
            Err(Error::IllDefinedEntry { .. })
        ));
    }

    #[test]
    fn t_squared_on_c3() {
        let c3 = parse_group("C3").unwrap();
        let q = Poly::parse("t^2", &variable_names(1)).unwrap();
        let one = c3.trivial_subgroup();
        let m = mult_entry_map(&c3, gf(3), &q, &one, &one).unwrap();
        assert_eq!(m.matrix().rank(), 1);
    }

    #[test]
    fn augmentation_is_entry_one() {
        let c3 = parse_group("C3").unwrap();
        let q = Poly::constant(1, 1);
        let m = mult_entry_map(&c3, gf(3), &q, &c3.trivial_subgroup(), &c3.whole()).unwrap();
        assert_eq!(m.matrix(), &FpMatrix::from_rows(gf(3), &[vec![1, 1, 1]]).unwrap());
        // 1 : k -> kC3 is not a module map
        assert!(mult_entry_map(&c3, gf(3), &q, &c3.whole(), &c3.trivial_subgroup()).is_err());
    }

    #[test]
    fn nonabelian_groups_are_refused() {
        let s3 = parse_group("S3").unwrap();
        let q = Poly::constant(1, 2);
        assert!(matches!(
            mult_entry_map(&s3, gf(2), &q, &s3.whole(), &s3.whole()),
            Err(Error::Unsupported(_))
        ));
    }
}
