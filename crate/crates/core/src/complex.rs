//! Cochain complexes of permutation modules.
//!
//! Grading is cohomological: `d^n : C^n → C^{n+1}`, and the shift `M[i]`
//! places `M` in degree `-i`. Two shapes are supported: finitely supported
//! complexes, and complexes that agree with a finite window in degrees `≥ w`
//! and repeat a fixed pattern of terms and differentials below it.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{FpMatrix, PrimeField};
use crate::group::{FiniteGroup, QuotientGroup, Subgroup};
use crate::module::{
    brauer_on_map_with, brauer_with, fixed_map, fixed_module, hom_space, inflate, restrict_to, same_group, tensor,
    ModuleMap, PermModule,
};

/// A finitely supported cochain complex.
#[derive(Debug, Clone)]
pub struct BoundedComplex {
    group: Arc<FiniteGroup>,
    field: PrimeField,
    zero: PermModule,
    terms: BTreeMap<i32, PermModule>,
    diffs: BTreeMap<i32, ModuleMap>,
}

impl BoundedComplex {
    pub fn new(group: &Arc<FiniteGroup>, field: PrimeField) -> Self {
        BoundedComplex {
            group: Arc::clone(group),
            field,
            zero: PermModule::zero(group, field),
            terms: BTreeMap::new(),
            diffs: BTreeMap::new(),
        }
    }

    /// `m` placed in degree `degree`.
    pub fn concentrated(m: &PermModule, degree: i32) -> Self {
        let mut c = BoundedComplex::new(m.group(), m.field());
        c.terms.insert(degree, m.clone());
        c
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn with_term(mut self, degree: i32, m: PermModule) -> Result<Self> {
        self.set_term(degree, m)?;
        Ok(self)
    }

    pub fn set_term(&mut self, degree: i32, m: PermModule) -> Result<()> {
        self.zero.check_compatible(&m)?;
        self.diffs.remove(&degree);
        self.diffs.remove(&(degree - 1));
        if m.is_zero() {
            self.terms.remove(&degree);
        } else {
            self.terms.insert(degree, m);
        }
        Ok(())
    }

    /// Sets `d^degree`; its source and target must be the terms in degrees `degree` and `degree + 1`.
    pub fn with_differential(mut self, degree: i32, d: ModuleMap) -> Result<Self> {
        self.set_differential(degree, d)?;
        Ok(self)
    }

    pub fn set_differential(&mut self, degree: i32, d: ModuleMap) -> Result<()> {
        if d.source() != self.module(degree) || d.target() != self.module(degree + 1) {
            return Err(Error::InvalidComplex {
                degree,
                message: "differential does not match the terms it connects".into(),
            });
        }
        if d.is_zero() {
            self.diffs.remove(&degree);
        } else {
            self.diffs.insert(degree, d);
        }
        Ok(())
    }

    pub fn module(&self, degree: i32) -> &PermModule {
        self.terms.get(&degree).unwrap_or(&self.zero)
    }

    pub fn differential(&self, degree: i32) -> ModuleMap {
        self.diffs.get(&degree).cloned().unwrap_or_else(|| {
            ModuleMap::zero(self.module(degree), self.module(degree + 1)).expect("terms share group and field")
        })
    }

    /// Degrees carrying a nonzero term, as an inclusive range.
    pub fn support(&self) -> Option<(i32, i32)> {
        let lo = *self.terms.keys().next()?;
        let hi = *self.terms.keys().next_back()?;
        Some((lo, hi))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Replaces every differential matrix entry-by-entry without any checks (for mutation tests).
    pub fn with_matrix_unchecked(&self, degree: i32, matrix: FpMatrix) -> Result<Self> {
        let mut c = self.clone();
        let d = ModuleMap::new_unchecked(self.module(degree).clone(), self.module(degree + 1).clone(), matrix)?;
        c.diffs.insert(degree, d);
        Ok(c)
    }

    /// `C[i]`: `C[i]^n = C^{n+i}`, with differential `(-1)^i d`.
    pub fn shift(&self, i: i32) -> BoundedComplex {
        let mut c = BoundedComplex::new(&self.group, self.field);
        for (&n, m) in &self.terms {
            c.terms.insert(n - i, m.clone());
        }
        for (&n, d) in &self.diffs {
            let d = if i % 2 == 0 {
                d.clone()
            } else {
                ModuleMap::new_unchecked(d.source().clone(), d.target().clone(), d.matrix().neg())
                    .expect("same shape")
            };
            c.diffs.insert(n - i, d);
        }
        c
    }

    pub fn direct_sum(&self, other: &BoundedComplex) -> Result<BoundedComplex> {
        self.zero.check_compatible(&other.zero)?;
        let mut c = BoundedComplex::new(&self.group, self.field);
        let (Some((a0, a1)), Some((b0, b1))) = (self.support(), other.support()) else {
            return Ok(if self.is_zero() { other.clone() } else { self.clone() });
        };
        let (lo, hi) = (a0.min(b0), a1.max(b1));
        for n in lo..=hi {
            c.set_term(n, PermModule::direct_sum(&[self.module(n), other.module(n)])?)?;
        }
        for n in lo..hi {
            let d = self.differential(n).matrix().block_diag(other.differential(n).matrix())?;
            let d = ModuleMap::new_unchecked(c.module(n).clone(), c.module(n + 1).clone(), d)?;
            c.set_differential(n, d)?;
        }
        Ok(c)
    }

    /// Degreewise `C ⊗ M` with differentials `d ⊗ id`.
    pub fn tensor_module(&self, m: &PermModule) -> Result<BoundedComplex> {
        let mut c = BoundedComplex::new(&self.group, self.field);
        for (&n, t) in &self.terms {
            c.set_term(n, tensor(t, m)?)?;
        }
        let id = FpMatrix::identity(self.field, m.dim());
        for (&n, d) in &self.diffs {
            let matrix = d.matrix().kron(&id)?;
            let d = ModuleMap::new_unchecked(c.module(n).clone(), c.module(n + 1).clone(), matrix)?;
            c.set_differential(n, d)?;
        }
        Ok(c)
    }
}

/// A complex equal to `window` in degrees `≥ start` and left periodic below.
///
/// Term `C^{start-1-j}` is `pattern[j mod ℓ].0` and the differential into it,
/// `d^{start-2-j}`, is `pattern[j mod ℓ].1`. The junction is `d^{start-1}`.
#[derive(Debug, Clone)]
pub struct PeriodicComplex {
    window: BoundedComplex,
    start: i32,
    junction: ModuleMap,
    pattern: Vec<(PermModule, ModuleMap)>,
}

impl PeriodicComplex {
    pub fn new(
        window: BoundedComplex,
        start: i32,
        junction: ModuleMap,
        pattern: Vec<(PermModule, ModuleMap)>,
    ) -> Result<Self> {
        let bad = |degree: i32, message: &str| Error::InvalidComplex {
            degree,
            message: message.into(),
        };
        if pattern.is_empty() {
            return Err(bad(start, "empty periodic pattern"));
        }
        if let Some((lo, _)) = window.support() {
            if lo < start {
                return Err(bad(lo, "window extends below its start degree"));
            }
        }
        if junction.source() != &pattern[0].0 || junction.target() != window.module(start) {
            return Err(bad(start - 1, "junction does not match its terms"));
        }
        let l = pattern.len();
        for (j, (m, d)) in pattern.iter().enumerate() {
            window.zero.check_compatible(m)?;
            if d.target() != m || d.source() != &pattern[(j + 1) % l].0 {
                return Err(bad(start - 2 - j as i32, "pattern map does not match its terms"));
            }
        }
        Ok(PeriodicComplex {
            window,
            start,
            junction,
            pattern,
        })
    }

    pub fn window(&self) -> &BoundedComplex {
        &self.window
    }

    pub fn start(&self) -> i32 {
        self.start
    }

    pub fn period(&self) -> usize {
        self.pattern.len()
    }

    pub fn junction(&self) -> &ModuleMap {
        &self.junction
    }

    pub fn pattern(&self) -> &[(PermModule, ModuleMap)] {
        &self.pattern
    }

    fn pattern_index(&self, degree: i32) -> usize {
        // degree = start - 1 - j
        ((self.start - 1 - degree) as usize) % self.pattern.len()
    }

    pub fn module(&self, degree: i32) -> &PermModule {
        if degree >= self.start {
            self.window.module(degree)
        } else {
            &self.pattern[self.pattern_index(degree)].0
        }
    }

    pub fn differential(&self, degree: i32) -> ModuleMap {
        if degree >= self.start {
            self.window.differential(degree)
        } else if degree == self.start - 1 {
            self.junction.clone()
        } else {
            self.pattern[self.pattern_index(degree + 1)].1.clone()
        }
    }

    /// Lowest degree whose homology only involves pattern maps.
    pub fn tail_start(&self) -> i32 {
        self.start - 2
    }
}

#[derive(Debug, Clone)]
pub enum Complex {
    Bounded(BoundedComplex),
    Periodic(PeriodicComplex),
}

impl From<BoundedComplex> for Complex {
    fn from(c: BoundedComplex) -> Self {
        Complex::Bounded(c)
    }
}

impl From<PeriodicComplex> for Complex {
    fn from(c: PeriodicComplex) -> Self {
        Complex::Periodic(c)
    }
}

impl Complex {
    pub fn group(&self) -> &Arc<FiniteGroup> {
        match self {
            Complex::Bounded(c) => &c.group,
            Complex::Periodic(c) => &c.window.group,
        }
    }

    pub fn field(&self) -> PrimeField {
        match self {
            Complex::Bounded(c) => c.field,
            Complex::Periodic(c) => c.window.field,
        }
    }

    pub fn module(&self, degree: i32) -> &PermModule {
        match self {
            Complex::Bounded(c) => c.module(degree),
            Complex::Periodic(c) => c.module(degree),
        }
    }

    pub fn differential(&self, degree: i32) -> ModuleMap {
        match self {
            Complex::Bounded(c) => c.differential(degree),
            Complex::Periodic(c) => c.differential(degree),
        }
    }

    pub fn is_bounded(&self) -> bool {
        matches!(self, Complex::Bounded(_))
    }

    pub fn as_bounded(&self) -> Option<&BoundedComplex> {
        match self {
            Complex::Bounded(c) => Some(c),
            Complex::Periodic(_) => None,
        }
    }

    /// Highest degree with a nonzero term.
    pub fn top(&self) -> Option<i32> {
        match self {
            Complex::Bounded(c) => c.support().map(|s| s.1),
            Complex::Periodic(c) => Some(c.window.support().map_or(c.start - 1, |s| s.1)),
        }
    }

    /// The degrees that must be inspected to decide every degree: the whole
    /// support for bounded complexes, and the window plus two periods below
    /// the junction for periodic ones.
    pub fn checked_range(&self) -> Option<(i32, i32)> {
        match self {
            Complex::Bounded(c) => c.support(),
            Complex::Periodic(c) => {
                let top = self.top().expect("periodic complexes are nonzero");
                Some((c.tail_start() + 1 - 2 * c.period() as i32, top))
            }
        }
    }

    /// For periodic complexes, a degree with the same homology as `degree`
    /// inside the first period of the tail.
    pub fn reduce_degree(&self, degree: i32) -> i32 {
        match self {
            Complex::Periodic(c) if degree < c.tail_start() => {
                let l = c.period() as i32;
                c.tail_start() - (c.tail_start() - degree) % l
            }
            _ => degree,
        }
    }

    /// `dim ker d^n − rank d^{n−1}`, without validation.
    pub fn homology_dim(&self, degree: i32) -> Result<usize> {
        let n = self.reduce_degree(degree);
        let out = self.differential(n);
        let inc = self.differential(n - 1);
        let dim = self.module(n).dim();
        Ok(dim - out.matrix().rank() - inc.matrix().rank())
    }

    /// Applies functors on terms and differentials, keeping the shape.
    pub fn map_termwise(
        &self,
        group: &Arc<FiniteGroup>,
        on_module: impl Fn(&PermModule) -> Result<PermModule>,
        on_map: impl Fn(&ModuleMap) -> Result<ModuleMap>,
    ) -> Result<Complex> {
        let map_bounded = |c: &BoundedComplex| -> Result<BoundedComplex> {
            let mut out = BoundedComplex::new(group, c.field);
            for (&n, m) in &c.terms {
                out.set_term(n, on_module(m)?)?;
            }
            for (&n, d) in &c.diffs {
                let image = on_map(d)?;
                let image = ModuleMap::new_unchecked(
                    out.module(n).clone(),
                    out.module(n + 1).clone(),
                    image.into_matrix(),
                )?;
                out.set_differential(n, image)?;
            }
            Ok(out)
        };
        match self {
            Complex::Bounded(c) => Ok(Complex::Bounded(map_bounded(c)?)),
            Complex::Periodic(c) => {
                let window = map_bounded(&c.window)?;
                let modules: Vec<PermModule> =
                    c.pattern.iter().map(|(m, _)| on_module(m)).collect::<Result<_>>()?;
                let l = modules.len();
                let pattern = c
                    .pattern
                    .iter()
                    .enumerate()
                    .map(|(j, (_, d))| {
                        let matrix = on_map(d)?.into_matrix();
                        let d = ModuleMap::new_unchecked(modules[(j + 1) % l].clone(), modules[j].clone(), matrix)?;
                        Ok((modules[j].clone(), d))
                    })
                    .collect::<Result<Vec<_>>>()?;
                let junction = ModuleMap::new_unchecked(
                    modules[0].clone(),
                    window.module(c.start).clone(),
                    on_map(&c.junction)?.into_matrix(),
                )?;
                Ok(Complex::Periodic(PeriodicComplex::new(window, c.start, junction, pattern)?))
            }
        }
    }

    /// Overwrites one entry of `d^degree` without any checks. In the periodic
    /// part this changes the pattern map, hence every period.
    pub fn with_entry_unchecked(&self, degree: i32, row: usize, col: usize, value: u32) -> Result<Complex> {
        let edit = |d: &ModuleMap| -> Result<ModuleMap> {
            let mut m = d.matrix().clone();
            if row >= m.rows() || col >= m.cols() {
                return Err(Error::Dimension(format!("no entry ({row}, {col}) in d^{degree}")));
            }
            m.set(row, col, value % self.field().characteristic());
            ModuleMap::new_unchecked(d.source().clone(), d.target().clone(), m)
        };
        match self {
            Complex::Bounded(c) => {
                let mut c = c.clone();
                c.diffs.insert(degree, edit(&c.differential(degree))?);
                Ok(Complex::Bounded(c))
            }
            Complex::Periodic(p) => {
                let mut p = p.clone();
                if degree >= p.start {
                    p.window.diffs.insert(degree, edit(&p.window.differential(degree))?);
                } else if degree == p.start - 1 {
                    p.junction = edit(&p.junction)?;
                } else {
                    let j = p.pattern_index(degree + 1);
                    p.pattern[j].1 = edit(&p.pattern[j].1)?;
                }
                Ok(Complex::Periodic(p))
            }
        }
    }

    /// The brutal truncation to degrees `≥ lo`, as a bounded complex.
    pub fn truncate_below(&self, lo: i32) -> Result<BoundedComplex> {
        let mut out = BoundedComplex::new(self.group(), self.field());
        let Some(top) = self.top() else {
            return Ok(out);
        };
        for n in lo..=top {
            out.set_term(n, self.module(n).clone())?;
        }
        for n in lo..top {
            out.set_differential(n, self.differential(n))?;
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComplexFailure {
    pub degree: i32,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationCertificate {
    pub valid: bool,
    pub failure: Option<ComplexFailure>,
}

/// Checks `d ∘ d = 0` and equivariance in every degree that matters,
/// including the junction and the wraparound of the periodic pattern.
pub fn validate(c: &Complex) -> ValidationCertificate {
    let fail = |degree: i32, reason: String| ValidationCertificate {
        valid: false,
        failure: Some(ComplexFailure { degree, reason }),
    };
    let Some((lo, hi)) = c.checked_range() else {
        return ValidationCertificate {
            valid: true,
            failure: None,
        };
    };
    for n in (lo - 1..=hi).rev() {
        let d = c.differential(n);
        if !d.is_equivariant() {
            return fail(n, format!("d^{n} is not equivariant"));
        }
        match c.differential(n + 1).compose(&d) {
            Ok(dd) if dd.is_zero() => {}
            Ok(_) => return fail(n, format!("d^{} ∘ d^{} ≠ 0", n + 1, n)),
            Err(e) => return fail(n, e.to_string()),
        }
    }
    ValidationCertificate {
        valid: true,
        failure: None,
    }
}

fn require_valid(c: &Complex) -> Result<()> {
    let cert = validate(c);
    match cert.failure {
        None => Ok(()),
        Some(f) => Err(Error::InvalidComplex {
            degree: f.degree,
            message: f.reason,
        }),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PeriodicTail {
    /// Highest degree of the repeating range.
    pub from_degree: i32,
    pub period: usize,
    /// Homology at `from_degree, from_degree − 1, …` for one period.
    pub profile: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomologyTable {
    pub dims: BTreeMap<i32, usize>,
    pub periodic: Option<PeriodicTail>,
}

impl HomologyTable {
    pub fn dim(&self, degree: i32) -> usize {
        if let Some(tail) = &self.periodic {
            if degree <= tail.from_degree {
                let j = (tail.from_degree - degree) as usize % tail.period;
                return tail.profile[j];
            }
        }
        self.dims.get(&degree).copied().unwrap_or(0)
    }

    pub fn is_exact(&self) -> bool {
        self.dims.values().all(|&d| d == 0)
            && self.periodic.as_ref().is_none_or(|t| t.profile.iter().all(|&d| d == 0))
    }

    /// Degrees with nonzero homology (tail degrees listed once, at their first occurrence).
    pub fn nonzero_degrees(&self) -> Vec<i32> {
        let mut out: Vec<i32> = self.dims.iter().filter(|(_, &d)| d > 0).map(|(&n, _)| n).collect();
        if let Some(t) = &self.periodic {
            out.extend(
                t.profile
                    .iter()
                    .enumerate()
                    .filter(|(_, &d)| d > 0)
                    .map(|(j, _)| t.from_degree - j as i32),
            );
        }
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// Homology dimensions of a validated complex.
///
/// For periodic complexes the homology is computed over the window and two
/// periods of the tail; the two copies of each pattern position must agree.
pub fn homology(c: &Complex) -> Result<HomologyTable> {
    require_valid(c)?;
    homology_unvalidated(c)
}

fn homology_unvalidated(c: &Complex) -> Result<HomologyTable> {
    let mut dims = BTreeMap::new();
    match c {
        Complex::Bounded(b) => {
            if let Some((lo, hi)) = b.support() {
                for n in lo..=hi {
                    dims.insert(n, c.homology_dim(n)?);
                }
            }
            Ok(HomologyTable { dims, periodic: None })
        }
        Complex::Periodic(p) => {
            let top = c.top().expect("periodic complexes are nonzero");
            for n in p.tail_start() + 1..=top {
                dims.insert(n, c.homology_dim(n)?);
            }
            let l = p.period();
            let direct = |n: i32| -> Result<usize> {
                let dim = c.module(n).dim();
                Ok(dim - c.differential(n).matrix().rank() - c.differential(n - 1).matrix().rank())
            };
            let from = p.tail_start();
            let mut profile = Vec::with_capacity(l);
            for j in 0..l as i32 {
                let first = direct(from - j)?;
                let second = direct(from - j - l as i32)?;
                if first != second {
                    return Err(Error::Internal(format!(
                        "homology of the periodic tail differs at degrees {} and {}",
                        from - j,
                        from - j - l as i32
                    )));
                }
                profile.push(first);
            }
            Ok(HomologyTable {
                dims,
                periodic: Some(PeriodicTail {
                    from_degree: from,
                    period: l,
                    profile,
                }),
            })
        }
    }
}

/// A degreewise functor on complexes of permutation modules.
#[derive(Debug, Clone)]
pub enum Functor {
    /// Modular fixed points Ψ^H, landing over N_G(H)/H.
    Brauer(Subgroup),
    /// Categorical fixed points (−)^H, landing over N_G(H)/H on orbit-sum bases.
    Fixed(Subgroup),
    /// Restriction to a subgroup.
    Restrict(Subgroup),
    /// Inflation along `G → G/N`; the complex must live over the quotient group.
    Inflate(QuotientGroup),
}

/// Applies `functor` degreewise and validates the image.
pub fn apply_functor(c: &Complex, functor: &Functor) -> Result<Complex> {
    let group = c.group();
    let out = match functor {
        Functor::Brauer(h) => {
            let weyl = group.weyl_group(h);
            c.map_termwise(
                &weyl.group,
                |m| Ok(brauer_with(m, h, &weyl)?.module),
                |f| brauer_on_map_with(f, h, &weyl),
            )?
        }
        Functor::Fixed(h) => {
            let weyl = group.weyl_group(h);
            c.map_termwise(&weyl.group, |m| Ok(fixed_module(m, h, &weyl)?.0), |f| fixed_map(f, h, &weyl))?
        }
        Functor::Restrict(h) => {
            let h_group = group.subgroup_as_group(h, format!("{}|{}", group.name(), h.order()));
            c.map_termwise(
                &h_group,
                |m| restrict_to(m, h, &h_group),
                |f| {
                    let s = restrict_to(f.source(), h, &h_group)?;
                    let t = restrict_to(f.target(), h, &h_group)?;
                    ModuleMap::new_unchecked(s, t, f.matrix().clone())
                },
            )?
        }
        Functor::Inflate(q) => {
            if !same_group(group, &q.group) {
                return Err(Error::GroupMismatch("complex is not over the quotient group".into()));
            }
            c.map_termwise(
                &q.ambient,
                |m| inflate(m, q),
                |f| ModuleMap::new_unchecked(inflate(f.source(), q)?, inflate(f.target(), q)?, f.matrix().clone()),
            )?
        }
    };
    require_valid(&out)?;
    Ok(out)
}

/// Fixed points under `h` as a complex of vector spaces with a Weyl-group action.
pub fn fixed_complex(c: &Complex, h: &Subgroup) -> Result<Complex> {
    apply_functor(c, &Functor::Fixed(h.clone()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AcyclicityWitness {
    pub subgroup_order: usize,
    pub subgroup: Vec<usize>,
    pub degree: i32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GAcyclicity {
    pub acyclic: bool,
    pub witness: Option<AcyclicityWitness>,
}

/// Whether `c^H` is exact for every subgroup `H` (one per conjugacy class).
pub fn is_g_acyclic(c: &Complex) -> Result<GAcyclicity> {
    require_valid(c)?;
    for class in c.group().conjugacy_classes_of_subgroups(None) {
        let h = &class.representative;
        let table = homology_unvalidated(&fixed_complex(c, h)?)?;
        if let Some(&degree) = table.nonzero_degrees().last() {
            return Ok(GAcyclicity {
                acyclic: false,
                witness: Some(AcyclicityWitness {
                    subgroup_order: h.order(),
                    subgroup: h.members().to_vec(),
                    degree,
                }),
            });
        }
    }
    Ok(GAcyclicity {
        acyclic: true,
        witness: None,
    })
}

/// `dim Hom(k(G/K)[i], S)` in the homotopy category, computed as `dim H^{−i}(S^K)`.
pub fn hom_from_generator(k: &Subgroup, i: i32, s: &Complex) -> Result<usize> {
    let fixed = fixed_complex(s, k)?;
    fixed.homology_dim(-i)
}

/// Homotopy classes of degree-`i` chain maps `a → b`, i.e. `dim H^i Hom(a, b)`.
///
/// Built from equivariant-map bases of each `Hom_G(a^m, b^{m+n})`; the
/// differential `D(φ) = d_b φ − (−1)^n φ d_a` is expressed in those bases by
/// solving linear systems.
pub fn hom_complex_dim(a: &BoundedComplex, b: &BoundedComplex, i: i32) -> Result<usize> {
    require_valid(&Complex::Bounded(a.clone()))?;
    require_valid(&Complex::Bounded(b.clone()))?;
    let hom_i = HomDegree::new(a, b, i)?;
    let hom_next = HomDegree::new(a, b, i + 1)?;
    let hom_prev = HomDegree::new(a, b, i - 1)?;
    let d_i = hom_i.differential_into(&hom_next, a, b)?;
    let d_prev = hom_prev.differential_into(&hom_i, a, b)?;
    Ok(hom_i.dim() - d_i.rank() - d_prev.rank())
}

/// One degree of the Hom complex: a basis of `⊕_m Hom_G(a^m, b^{m+n})`.
struct HomDegree {
    n: i32,
    /// `(m, basis of Hom_G(a^m, b^{m+n}))`
    blocks: Vec<(i32, Vec<FpMatrix>)>,
}

impl HomDegree {
    fn new(a: &BoundedComplex, b: &BoundedComplex, n: i32) -> Result<Self> {
        let mut blocks = Vec::new();
        if let Some((lo, hi)) = a.support() {
            for m in lo..=hi {
                let basis = hom_space(a.module(m), b.module(m + n))?;
                if !basis.is_empty() {
                    blocks.push((m, basis));
                }
            }
        }
        Ok(HomDegree { n, blocks })
    }

    fn dim(&self) -> usize {
        self.blocks.iter().map(|(_, b)| b.len()).sum()
    }

    /// Matrix of `D : Hom^n → Hom^{n+1}` in the two bases.
    fn differential_into(&self, next: &HomDegree, a: &BoundedComplex, b: &BoundedComplex) -> Result<FpMatrix> {
        let field = a.field();
        let n = self.n;
        let sign_flip = n % 2 == 0; // −(−1)^n
        // solver per target block: columns are flattened basis matrices
        let solvers: Vec<(i32, FpMatrix, usize)> = {
            let mut offset = 0;
            next.blocks
                .iter()
                .map(|(m, basis)| {
                    let rows = basis[0].rows() * basis[0].cols();
                    let cols: Vec<Vec<u32>> = basis.iter().map(|x| x.entries().to_vec()).collect();
                    let solver = FpMatrix::from_columns(field, rows, &cols).expect("uniform shapes");
                    let out = (*m, solver, offset);
                    offset += basis.len();
                    out
                })
                .collect()
        };
        let mut out = FpMatrix::zeros(field, next.dim(), self.dim());
        let mut col = 0;
        for (m, basis) in &self.blocks {
            for phi in basis {
                // component at m: d_b^{m+n} φ ; component at m−1: −(−1)^n φ d_a^{m−1}
                let mut parts: Vec<(i32, FpMatrix)> = Vec::new();
                parts.push((*m, b.differential(m + n).matrix().mul(phi)?));
                let pd = phi.mul(a.differential(m - 1).matrix())?;
                parts.push((m - 1, if sign_flip { pd.neg() } else { pd }));
                for (block, value) in parts {
                    if value.is_zero() {
                        continue;
                    }
                    let (_, solver, offset) = solvers
                        .iter()
                        .find(|(bm, _, _)| *bm == block)
                        .ok_or_else(|| Error::Internal(format!("D(φ) has a component outside Hom^{}", n + 1)))?;
                    let rhs = FpMatrix::from_columns(field, value.rows() * value.cols(), &[value.entries().to_vec()])?;
                    let sol = solver
                        .solve_space(&rhs)?
                        .ok_or_else(|| Error::Internal("D(φ) is not equivariant".into()))?;
                    for k in 0..sol.particular.rows() {
                        let v = field.add(out.get(offset + k, col), sol.particular.get(k, 0));
                        out.set(offset + k, col, v);
                    }
                }
                col += 1;
            }
        }
        Ok(out)
    }
}

/// A morphism of complexes with finitely many nonzero components.
#[derive(Debug, Clone)]
pub struct ChainMap {
    source: Complex,
    target: Complex,
    components: BTreeMap<i32, FpMatrix>,
}

impl ChainMap {
    pub fn new(source: Complex, target: Complex, components: BTreeMap<i32, FpMatrix>) -> Result<Self> {
        let map = ChainMap {
            source,
            target,
            components,
        };
        for (&n, m) in &map.components {
            if m.rows() != map.target.module(n).dim() || m.cols() != map.source.module(n).dim() {
                return Err(Error::InvalidChainMap {
                    degree: n,
                    message: format!("{}x{} component has the wrong shape", m.rows(), m.cols()),
                });
            }
        }
        Ok(map)
    }

    pub fn source(&self) -> &Complex {
        &self.source
    }

    pub fn target(&self) -> &Complex {
        &self.target
    }

    pub fn component(&self, n: i32) -> FpMatrix {
        self.components.get(&n).cloned().unwrap_or_else(|| {
            FpMatrix::zeros(
                self.source.field(),
                self.target.module(n).dim(),
                self.source.module(n).dim(),
            )
        })
    }

    pub fn components(&self) -> &BTreeMap<i32, FpMatrix> {
        &self.components
    }

    /// Equivariance of each component and `d f = f d` wherever a component is nonzero.
    pub fn validate(&self) -> Result<()> {
        let mut degrees: Vec<i32> = self.components.keys().flat_map(|&n| [n - 1, n]).collect();
        degrees.sort_unstable();
        degrees.dedup();
        for &n in self.components.keys() {
            let m = ModuleMap::new_unchecked(
                self.source.module(n).clone(),
                self.target.module(n).clone(),
                self.component(n),
            )?;
            if !m.is_equivariant() {
                return Err(Error::InvalidChainMap {
                    degree: n,
                    message: "component is not equivariant".into(),
                });
            }
        }
        for n in degrees {
            let lhs = self.target.differential(n).matrix().mul(&self.component(n))?;
            let rhs = self.component(n + 1).mul(self.source.differential(n).matrix())?;
            if lhs != rhs {
                return Err(Error::InvalidChainMap {
                    degree: n,
                    message: "does not commute with the differentials".into(),
                });
            }
        }
        Ok(())
    }

    pub fn identity(c: &BoundedComplex) -> ChainMap {
        let components = c
            .terms
            .iter()
            .map(|(&n, m)| (n, FpMatrix::identity(c.field, m.dim())))
            .collect();
        ChainMap {
            source: c.clone().into(),
            target: c.clone().into(),
            components,
        }
    }
}

/// The mapping cone of a validated chain map between bounded complexes:
/// `Cone^n = A^{n+1} ⊕ B^n`, `d = [[−d_A, 0], [f, d_B]]`.
pub fn cone(f: &ChainMap) -> Result<BoundedComplex> {
    let (Some(a), Some(b)) = (f.source.as_bounded(), f.target.as_bounded()) else {
        return Err(Error::Unsupported("cones of unbounded complexes".into()));
    };
    f.validate()?;
    let mut c = BoundedComplex::new(&a.group, a.field);
    let range = match (a.support(), b.support()) {
        (None, None) => return Ok(c),
        (Some((a0, a1)), None) => (a0 - 1, a1 - 1),
        (None, Some(r)) => r,
        (Some((a0, a1)), Some((b0, b1))) => ((a0 - 1).min(b0), (a1 - 1).max(b1)),
    };
    for n in range.0..=range.1 {
        c.set_term(n, PermModule::direct_sum(&[a.module(n + 1), b.module(n)])?)?;
    }
    for n in range.0..range.1 {
        let (a1, a2) = (a.module(n + 1).dim(), a.module(n + 2).dim());
        let (b0, b1) = (b.module(n).dim(), b.module(n + 1).dim());
        let mut d = FpMatrix::zeros(a.field, a2 + b1, a1 + b0);
        d.paste(0, 0, &a.differential(n + 1).matrix().neg());
        d.paste(a2, 0, &f.component(n + 1));
        d.paste(a2, a1, b.differential(n).matrix());
        let d = ModuleMap::new(c.module(n).clone(), c.module(n + 1).clone(), d)?;
        c.set_differential(n, d)?;
    }
    Ok(c)
}
