//! The explicit residue complexes S at the closed point M(G) for C2, Cp
//! (p odd) and C2×C2, with the maps ζ: 𝟙 → S and σ: Ψ^G(S) → 𝟙, and a
//! checker for the conditions characterising S:
//!
//! * `Hom(k(G/H)[i], S)` is k for H = G, i = 0 and zero otherwise;
//! * `σ ∘ Ψ^G(ζ) = id`.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::complex::{
    apply_functor, fixed_complex, hom_from_generator, homology, validate, ChainMap, Complex, ComplexFailure,
    Functor,
};
use crate::error::{Error, Result};
use crate::field::{FpMatrix, PrimeField};
use crate::group::FiniteGroup;
use crate::module::{brauer_on_map, coset_module, fixed_points, ModuleMap};
use crate::spectrum::{describe_subgroup, SubgroupDescriptor};
use crate::text::parse_complex;

#[derive(Debug, Clone)]
pub struct ResidueCandidate {
    pub group: Arc<FiniteGroup>,
    pub field: PrimeField,
    pub s: Complex,
    /// 𝟙[0] → S
    pub zeta: ChainMap,
    /// Ψ^G(S) → 𝟙[0], over the trivial Weyl group G/G
    pub sigma: ChainMap,
    /// The text description S was parsed from.
    pub description: String,
}

impl ResidueCandidate {
    /// Builds ζ and σ as the identity of k in degree 0 around a parsed complex.
    fn from_description(description: String) -> Result<Self> {
        let parsed = parse_complex(&description)?;
        let (group, field, s) = (parsed.group, parsed.field, parsed.complex);
        let unit_module = coset_module(&group, &group.whole(), field);
        if s.module(0) != &unit_module {
            return Err(Error::InvalidComplex {
                degree: 0,
                message: "residue candidates have k in degree 0".into(),
            });
        }
        let one = FpMatrix::identity(field, 1);
        let unit = crate::complex::BoundedComplex::concentrated(&unit_module, 0);
        let zeta = ChainMap::new(unit.into(), s.clone(), BTreeMap::from([(0, one.clone())]))?;
        let psi = apply_functor(&s, &Functor::Brauer(group.whole()))?;
        let weyl_unit = coset_module(psi.group(), &psi.group().whole(), field);
        let target = crate::complex::BoundedComplex::concentrated(&weyl_unit, 0);
        let sigma = ChainMap::new(psi, target.into(), BTreeMap::from([(0, one)]))?;
        Ok(ResidueCandidate {
            group,
            field,
            s,
            zeta,
            sigma,
            description,
        })
    }

    /// Replaces `S` by a version with one differential entry overwritten.
    /// ζ and σ keep their matrices.
    pub fn with_entry(&self, degree: i32, row: usize, col: usize, value: u32) -> Result<Self> {
        let s = self.s.with_entry_unchecked(degree, row, col, value)?;
        let zeta = ChainMap::new(self.zeta.source().clone(), s.clone(), self.zeta.components().clone())?;
        Ok(ResidueCandidate {
            s,
            zeta,
            ..self.clone()
        })
    }

    pub fn with_zeta(&self, components: BTreeMap<i32, FpMatrix>) -> Result<Self> {
        let zeta = ChainMap::new(self.zeta.source().clone(), self.s.clone(), components)?;
        Ok(ResidueCandidate { zeta, ..self.clone() })
    }
}

fn check_char(field: PrimeField, p: u32, what: &str) -> Result<()> {
    if field.characteristic() != p {
        return Err(Error::Unsupported(format!(
            "{what} needs characteristic {p}, got {}",
            field.characteristic()
        )));
    }
    Ok(())
}

/// `k → kC2 → k` in degrees −2..0: norm, then augmentation.
pub fn build_s_c2(field: PrimeField) -> Result<ResidueCandidate> {
    check_char(field, 2, "the C2 residue complex")?;
    ResidueCandidate::from_description(
        "group: C2\np: 2\n\
         term 0: G/G\nterm -1: G/1\nterm -2: G/G\n\
         d -1: [[1]]\nd -2: [[t]]\n"
            .to_string(),
    )
}

/// The Cp complex with R = kCp:
/// `… →g R⊕k →f R⊕k →g R⊕k →h R →aug k → 0`.
pub fn build_s_cp(p: u32) -> Result<ResidueCandidate> {
    PrimeField::new(p as u64)?;
    if p == 2 {
        return Err(Error::Unsupported("the Cp residue complex needs an odd prime".into()));
    }
    let (a, b) = (p - 2, p - 1);
    let g = format!("[[t^{a}, t^{b}], [-1, 0]]");
    let f = format!("[[t, t^{b}], [-1, 0]]");
    ResidueCandidate::from_description(format!(
        "group: C{p}\np: {p}\nwindow: -2\n\
         term 0: G/G\nterm -1: G/1\nterm -2: G/1 + G/G\n\
         d -1: [[1]]\nd -2: [[t, t^{b}]]\n\
         junction: {g}\n\
         pattern: G/1 + G/G | {f}\n\
         pattern: G/1 + G/G | {g}\n"
    ))
}

/// The Klein-four complex with M₀ = k(E/⟨g₁⟩), M₁ = k(E/⟨g₂⟩), M∞ = k(E/⟨g₁g₂⟩):
/// `… →g M₀⊕M₁⊕M∞ →f R⊕k⊕k →g M₀⊕M₁⊕M∞ →h R → k → 0`.
pub fn build_s_klein(field: PrimeField) -> Result<ResidueCandidate> {
    check_char(field, 2, "the Klein-four residue complex")?;
    ResidueCandidate::from_description(
        "group: C2xC2\np: 2\nwindow: -1\n\
         term 0: G/G\nterm -1: G/1\n\
         d -1: [[1]]\n\
         junction: [[x, y, x+y]]\n\
         pattern: G/<x> + G/<y> + G/<xy> | [[1, 0, y], [1, x, 0], [1, x, y]]\n\
         pattern: G/1 + G/G + G/G | [[x, y, x+y], [1, 0, 1], [0, 1, 1]]\n"
            .to_string(),
    )
}

/// Degrees to inspect: everything that can carry homology of `S^K`, plus a margin.
pub fn default_degree_window(s: &Complex) -> (i32, i32) {
    let lo = match s {
        Complex::Bounded(b) => b.support().map_or(0, |r| r.0) - 1,
        Complex::Periodic(p) => p.start() - 1 - 2 * p.period() as i32,
    };
    (lo, 2)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomCell {
    pub subgroup: SubgroupDescriptor,
    pub shift: i32,
    pub dim: usize,
    pub expected: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict")]
pub enum Compactness {
    Compact,
    NotCompact {
        /// First degree of the repeating homology of Ψ^G(S).
        from_degree: i32,
        profile: Vec<usize>,
    },
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResidueCertificate {
    pub group: String,
    pub p: u32,
    pub valid: bool,
    pub failure: Option<ComplexFailure>,
    /// Shifts `i` with `Hom(k(G/H)[i], S)` inspected; the homology is checked in degrees `−i`.
    pub shift_window: (i32, i32),
    pub hom_table: Vec<HomCell>,
    pub hom_conditions: bool,
    pub section_scalar: Option<u32>,
    pub zeta_class_nonzero: bool,
    pub compactness: Compactness,
    pub pass: bool,
}

/// Evaluates the characterising conditions. Failures are recorded in the certificate.
///
/// `shift_window` overrides the inspected range of shifts `i`.
pub fn kappa_conditions_check(c: &ResidueCandidate, shift_window: Option<(i32, i32)>) -> ResidueCertificate {
    let group = &c.group;
    let (lo, hi) = default_degree_window(&c.s);
    let shift_window = shift_window.unwrap_or((-hi, -lo));
    let mut cert = ResidueCertificate {
        group: group.name().to_string(),
        p: c.field.characteristic(),
        valid: true,
        failure: None,
        shift_window,
        hom_table: Vec::new(),
        hom_conditions: false,
        section_scalar: None,
        zeta_class_nonzero: false,
        compactness: Compactness::Inconclusive,
        pass: false,
    };
    let record = |cert: &mut ResidueCertificate, degree: i32, reason: String| {
        cert.valid = false;
        cert.failure.get_or_insert(ComplexFailure { degree, reason });
    };

    let v = validate(&c.s);
    if !v.valid {
        cert.valid = false;
        cert.failure = v.failure;
        return cert;
    }
    for (name, map) in [("ζ", &c.zeta), ("σ", &c.sigma)] {
        if let Err(e) = map.validate() {
            let degree = match e {
                Error::InvalidChainMap { degree, .. } => degree,
                _ => 0,
            };
            record(&mut cert, degree, format!("{name}: {e}"));
        }
    }

    let whole = group.whole();
    let mut conditions = true;
    for class in group.conjugacy_classes_of_subgroups(None) {
        let k = &class.representative;
        for i in shift_window.0..=shift_window.1 {
            let expected = usize::from(*k == whole && i == 0);
            match hom_from_generator(k, i, &c.s) {
                Ok(dim) => {
                    conditions &= dim == expected;
                    cert.hom_table.push(HomCell {
                        subgroup: describe_subgroup(group, k),
                        shift: i,
                        dim,
                        expected,
                    });
                }
                Err(e) => {
                    conditions = false;
                    record(&mut cert, -i, e.to_string());
                }
            }
        }
    }
    cert.hom_conditions = conditions;
    cert.section_scalar = section_scalar(c).ok();
    cert.zeta_class_nonzero = zeta_class_nonzero(c).unwrap_or(false);
    cert.compactness = compactness_certificate(c);
    cert.pass = cert.valid && cert.hom_conditions && cert.section_scalar == Some(1) && cert.zeta_class_nonzero;
    cert
}

/// The scalar `σ ∘ Ψ^G(ζ)` on `k` in degree 0.
pub fn section_scalar(c: &ResidueCandidate) -> Result<u32> {
    let z0 = ModuleMap::new_unchecked(
        c.zeta.source().module(0).clone(),
        c.s.module(0).clone(),
        c.zeta.component(0),
    )?;
    let psi_z0 = brauer_on_map(&z0, &c.group.whole())?;
    let s0 = c.sigma.component(0);
    if s0.cols() != psi_z0.matrix().rows() {
        return Err(Error::Dimension("σ and Ψ(ζ) do not compose in degree 0".into()));
    }
    let m = s0.mul(psi_z0.matrix())?;
    if m.rows() != 1 || m.cols() != 1 {
        return Err(Error::Dimension("σ ∘ Ψ(ζ) is not an endomorphism of k".into()));
    }
    Ok(m.get(0, 0))
}

/// Whether ζ gives a nonzero class in `H⁰(S^G)`.
fn zeta_class_nonzero(c: &ResidueCandidate) -> Result<bool> {
    let whole = c.group.whole();
    let fixed = fixed_complex(&c.s, &whole)?;
    // ζ(1) in orbit-sum coordinates of (S⁰)^G
    let fp = fixed_points(c.s.module(0), &whole);
    let image = c.zeta.component(0);
    let mut v = FpMatrix::zeros(c.field, fp.orbits.len(), 1);
    for (o, orbit) in fp.orbits.iter().enumerate() {
        v.set(o, 0, image.get(orbit[0], 0));
    }
    let cocycle = fixed.differential(0).matrix().mul(&v)?.is_zero();
    let boundaries = fixed.differential(-1).into_matrix();
    let mut augmented = FpMatrix::zeros(c.field, v.rows(), boundaries.cols() + 1);
    augmented.paste(0, 0, &boundaries);
    augmented.paste(0, boundaries.cols(), &v);
    Ok(cocycle && augmented.rank() > boundaries.rank())
}

/// Compact when S is bounded; not compact when Ψ^G(S) has nonzero periodic homology.
pub fn compactness_certificate(c: &ResidueCandidate) -> Compactness {
    match &c.s {
        Complex::Bounded(_) => Compactness::Compact,
        Complex::Periodic(_) => {
            let Ok(table) = homology(c.sigma.source()) else {
                return Compactness::Inconclusive;
            };
            match table.periodic {
                Some(t) if t.profile.iter().any(|&d| d > 0) => Compactness::NotCompact {
                    from_degree: t.from_degree,
                    profile: t.profile,
                },
                _ => Compactness::Inconclusive,
            }
        }
    }
}
