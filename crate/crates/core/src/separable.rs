//! The ring object A = k(G/H): unit 1 ↦ Σγ, multiplication μ(γ⊗γ) = γ and
//! μ(γ⊗γ') = 0, section γ ↦ γ⊗γ.

use std::sync::Arc;

use serde::Serialize;

use crate::error::Result;
use crate::field::{FpMatrix, PrimeField};
use crate::group::{FiniteGroup, Subgroup};
use crate::module::{coset_module, tensor, ModuleMap, PermModule};

#[derive(Debug, Clone)]
pub struct SeparableRingData {
    pub a: PermModule,
    /// k(G/G) → A
    pub unit: ModuleMap,
    /// A ⊗ A → A
    pub mult: ModuleMap,
    /// A → A ⊗ A
    pub section: ModuleMap,
}

pub fn ring_structure(group: &Arc<FiniteGroup>, h: &Subgroup, field: PrimeField) -> Result<SeparableRingData> {
    let a = coset_module(group, h, field);
    let k = coset_module(group, &group.whole(), field);
    let aa = tensor(&a, &a)?;
    let n = a.dim();
    let mut unit = FpMatrix::zeros(field, n, 1);
    let mut mult = FpMatrix::zeros(field, n, n * n);
    let mut section = FpMatrix::zeros(field, n * n, n);
    for i in 0..n {
        unit.set(i, 0, 1);
        mult.set(i, i * n + i, 1);
        section.set(i * n + i, i, 1);
    }
    Ok(SeparableRingData {
        unit: ModuleMap::new(k, a.clone(), unit)?,
        mult: ModuleMap::new(aa.clone(), a.clone(), mult)?,
        section: ModuleMap::new(a.clone(), aa, section)?,
        a,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub identity: &'static str,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeparabilityCertificate {
    pub dim: usize,
    pub checks: Vec<IdentityCheck>,
    pub pass: bool,
}

/// Checks the ring and separability identities as matrix equations.
pub fn check_separability(d: &SeparableRingData) -> SeparabilityCertificate {
    let field = d.a.field();
    let n = d.a.dim();
    let id = FpMatrix::identity(field, n);
    let (mu, sigma, u) = (d.mult.matrix(), d.section.matrix(), d.unit.matrix());
    let mut swap = FpMatrix::zeros(field, n * n, n * n);
    for i in 0..n {
        for j in 0..n {
            swap.set(j * n + i, i * n + j, 1);
        }
    }
    let eq = |lhs: Result<FpMatrix>, rhs: Result<FpMatrix>| matches!((lhs, rhs), (Ok(l), Ok(r)) if l == r);
    let checks = vec![
        IdentityCheck {
            identity: "equivariance",
            pass: d.unit.is_equivariant() && d.mult.is_equivariant() && d.section.is_equivariant(),
        },
        IdentityCheck {
            identity: "μσ = id",
            pass: eq(mu.mul(sigma), Ok(id.clone())),
        },
        IdentityCheck {
            identity: "(1⊗μ)(σ⊗1) = σμ = (μ⊗1)(1⊗σ)",
            pass: {
                let left = id.kron(mu).and_then(|m| m.mul(&sigma.kron(&id)?));
                let right = mu.kron(&id).and_then(|m| m.mul(&id.kron(sigma)?));
                match sigma.mul(mu) {
                    Ok(mid) => eq(left, Ok(mid.clone())) && eq(right, Ok(mid)),
                    Err(_) => false,
                }
            },
        },
        IdentityCheck {
            identity: "μ(u⊗1) = id = μ(1⊗u)",
            pass: eq(u.kron(&id).and_then(|m| mu.mul(&m)), Ok(id.clone()))
                && eq(id.kron(u).and_then(|m| mu.mul(&m)), Ok(id.clone())),
        },
        IdentityCheck {
            identity: "μ(μ⊗1) = μ(1⊗μ)",
            pass: eq(
                mu.kron(&id).and_then(|m| mu.mul(&m)),
                id.kron(mu).and_then(|m| mu.mul(&m)),
            ),
        },
        IdentityCheck {
            identity: "μ∘swap = μ",
            pass: eq(mu.mul(&swap), Ok(mu.clone())),
        },
    ];
    let pass = checks.iter().all(|c| c.pass);
    SeparabilityCertificate { dim: n, checks, pass }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::parse_group;

    fn gf(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn regular_c2() {
        let g = parse_group("C2").unwrap();
        let d = ring_structure(&g, &g.trivial_subgroup(), gf(2)).unwrap();
        assert_eq!((d.mult.matrix().rows(), d.mult.matrix().cols()), (2, 4));
        assert_eq!(d.mult.matrix().entries(), &[1, 0, 0, 0, 0, 0, 0, 1]);
        assert!(check_separability(&d).pass);
    }

    #[test]
    fn whole_group_is_the_unit() {
        let g = parse_group("S3").unwrap();
        let d = ring_structure(&g, &g.whole(), gf(3)).unwrap();
        assert_eq!(d.a.dim(), 1);
        assert!(check_separability(&d).pass);
    }

    #[test]
    fn index_two_in_s3() {
        let g = parse_group("S3").unwrap();
        let c3 = g.all_subgroups().iter().find(|h| h.order() == 3).unwrap().clone();
        let d = ring_structure(&g, &c3, gf(2)).unwrap();
        assert_eq!(d.a.dim(), 2);
        assert!(check_separability(&d).pass);
    }

    #[test]
    fn zeroed_diagonal_breaks_the_section() {
        let g = parse_group("C3").unwrap();
        let mut d = ring_structure(&g, &g.trivial_subgroup(), gf(2)).unwrap();
        let mut m = d.mult.matrix().clone();
        m.set(1, 4, 0);
        d.mult = ModuleMap::new_unchecked(d.mult.source().clone(), d.mult.target().clone(), m).unwrap();
        let cert = check_separability(&d);
        assert!(!cert.pass);
        assert!(!cert.checks.iter().find(|c| c.identity == "μσ = id").unwrap().pass);
    }
}
