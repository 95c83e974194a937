//! Closed points M(H) of the spectrum of compact permutation complexes.
//!
//! There is one closed point per conjugacy class of p-subgroups H, and a
//! compact complex x lies in M(H) exactly when Ψ^H(x) is exact as a complex
//! of vector spaces. Non-closed points are not modelled.

use serde::Serialize;

use crate::complex::{apply_functor, homology, Complex, Functor};
use crate::error::Result;
use crate::group::{FiniteGroup, Subgroup};

/// A subgroup as `order` plus generator words in the ambient group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubgroupDescriptor {
    pub order: usize,
    pub generators: Vec<String>,
}

pub fn describe_subgroup(group: &FiniteGroup, h: &Subgroup) -> SubgroupDescriptor {
    SubgroupDescriptor {
        order: h.order(),
        generators: group.minimal_generators(h).into_iter().map(|a| group.word(a)).collect(),
    }
}

#[derive(Debug, Clone)]
pub struct ClosedPoint {
    pub representative: Subgroup,
    pub class: Vec<Subgroup>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PointDescriptor {
    pub subgroup: SubgroupDescriptor,
    pub class_size: usize,
}

impl ClosedPoint {
    pub fn describe(&self, group: &FiniteGroup) -> PointDescriptor {
        PointDescriptor {
            subgroup: describe_subgroup(group, &self.representative),
            class_size: self.class.len(),
        }
    }
}

/// One point per conjugacy class of `p`-subgroups, trivial subgroup first.
pub fn closed_points(group: &FiniteGroup, p: u32) -> Vec<ClosedPoint> {
    group
        .conjugacy_classes_of_subgroups(None)
        .into_iter()
        .filter(|c| group.is_p_subgroup(&c.representative, p))
        .map(|c| ClosedPoint {
            representative: c.representative,
            class: c.members,
        })
        .collect()
}

/// Whether `x` lies in M(H): Ψ^H(x) is exact after forgetting the Weyl-group action.
pub fn in_closed_ideal(point: &ClosedPoint, x: &Complex) -> Result<bool> {
    in_ideal_at(&point.representative, x)
}

fn in_ideal_at(h: &Subgroup, x: &Complex) -> Result<bool> {
    let psi = apply_functor(x, &Functor::Brauer(h.clone()))?;
    Ok(homology(&psi)?.is_exact())
}

/// Closed points whose ideal does not contain `x`.
pub fn closed_support(x: &Complex) -> Result<Vec<ClosedPoint>> {
    let p = x.field().characteristic();
    let mut out = Vec::new();
    for point in closed_points(x.group(), p) {
        if !in_closed_ideal(&point, x)? {
            out.push(point);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::parse_group;
    use crate::complex::BoundedComplex;
    use crate::field::PrimeField;
    use crate::module::coset_module;

    #[test]
    fn counts() {
        assert_eq!(closed_points(&parse_group("C8").unwrap(), 2).len(), 4);
        assert_eq!(closed_points(&parse_group("C2xC2").unwrap(), 2).len(), 5);
        assert_eq!(closed_points(&parse_group("C5").unwrap(), 2).len(), 1);
        assert_eq!(closed_points(&parse_group("S3").unwrap(), 2).len(), 2);
    }

    #[test]
    fn membership() {
        let g = parse_group("C4").unwrap();
        let f = PrimeField::new(2).unwrap();
        let points = closed_points(&g, 2);
        let c2 = points.iter().find(|pt| pt.representative.order() == 2).unwrap();
        let unit: Complex = BoundedComplex::concentrated(&coset_module(&g, &g.whole(), f), 0).into();
        let free: Complex = BoundedComplex::concentrated(&coset_module(&g, &g.trivial_subgroup(), f), 0).into();
        assert!(!in_closed_ideal(c2, &unit).unwrap());
        assert!(in_closed_ideal(c2, &free).unwrap());
        assert_eq!(closed_support(&unit).unwrap().len(), 3);
        assert_eq!(closed_support(&free).unwrap().len(), 1);
    }

    #[test]
    fn descriptors() {
        let g = parse_group("C2xC2").unwrap();
        let d = describe_subgroup(&g, &g.whole());
        assert_eq!(d.order, 4);
        assert_eq!(d.generators.len(), 2);
        assert!(describe_subgroup(&g, &g.trivial_subgroup()).generators.is_empty());
    }
}
