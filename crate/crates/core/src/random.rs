//! Seeded random bounded complexes of coset modules, for property tests.
//!
//! Each differential is a random combination of a basis of
//! `{A ∈ Hom_G(Cⁿ⁺¹, Cⁿ⁺²) : A dⁿ = 0}`, so d² = 0 holds by construction.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::sum_of_cosets;
use crate::complex::BoundedComplex;
use crate::error::Result;
use crate::field::{FpMatrix, PrimeField};
use crate::group::FiniteGroup;
use crate::module::{hom_space, ModuleMap};

#[derive(Debug, Clone, Copy)]
pub struct RandomComplexParams {
    pub max_length: usize,
    pub max_summands: usize,
}

impl Default for RandomComplexParams {
    fn default() -> Self {
        RandomComplexParams {
            max_length: 4,
            max_summands: 2,
        }
    }
}

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A valid complex supported in degrees `≤ 1`.
pub fn random_complex(
    group: &Arc<FiniteGroup>,
    field: PrimeField,
    params: RandomComplexParams,
    rng: &mut impl Rng,
) -> Result<BoundedComplex> {
    let subgroups = group.all_subgroups();
    let len = rng.gen_range(1..=params.max_length.max(1));
    let top = rng.gen_range(-1..=1);
    let lo = top - len as i32 + 1;
    let mut c = BoundedComplex::new(group, field);
    for n in lo..=top {
        let count = rng.gen_range(1..=params.max_summands.max(1));
        let summands: Vec<_> = (0..count)
            .map(|_| subgroups.choose(rng).expect("every group has a subgroup").clone())
            .collect();
        c.set_term(n, sum_of_cosets(group, &summands, field)?)?;
    }
    let p = field.characteristic();
    for n in lo..top {
        let source = c.module(n).clone();
        let target = c.module(n + 1).clone();
        let basis = hom_space(&source, &target)?;
        let previous = c.differential(n - 1).into_matrix();
        // columns: vec(B_k ∘ d^{n-1})
        let cols: Vec<Vec<u32>> = basis
            .iter()
            .map(|b| b.mul(&previous).map(|m| m.entries().to_vec()))
            .collect::<Result<_>>()?;
        let allowed = if previous.is_zero() || cols.is_empty() {
            (0..basis.len())
                .map(|k| {
                    let mut e = vec![0; basis.len()];
                    e[k] = 1;
                    e
                })
                .collect()
        } else {
            FpMatrix::from_columns(field, previous.cols() * target.dim(), &cols)?.kernel_basis()
        };
        let mut d = FpMatrix::zeros(field, target.dim(), source.dim());
        for v in &allowed {
            let scalar = rng.gen_range(0..p);
            if scalar == 0 {
                continue;
            }
            for (k, &coef) in v.iter().enumerate() {
                if coef != 0 {
                    d = d.add(&basis[k].scale(field.mul(scalar, coef)))?;
                }
            }
        }
        c.set_differential(n, ModuleMap::new(source, target, d)?)?;
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::parse_group;
    use crate::complex::{validate, Complex};

    #[test]
    fn random_complexes_are_valid_and_reproducible() {
        let f = PrimeField::new(2).unwrap();
        for d in ["C2", "C4", "C2xC2"] {
            let g = parse_group(d).unwrap();
            let mut rng = rng_from_seed(7);
            for _ in 0..10 {
                let c = random_complex(&g, f, RandomComplexParams::default(), &mut rng).unwrap();
                assert!(validate(&Complex::Bounded(c)).valid);
            }
            let a = random_complex(&g, f, RandomComplexParams::default(), &mut rng_from_seed(3)).unwrap();
            let b = random_complex(&g, f, RandomComplexParams::default(), &mut rng_from_seed(3)).unwrap();
            assert_eq!(a.support(), b.support());
            for n in -4..=1 {
                assert_eq!(a.differential(n).matrix(), b.differential(n).matrix());
            }
        }
    }
}
