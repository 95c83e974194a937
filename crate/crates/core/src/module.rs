//! Permutation modules k(X) with their G-set bases, equivariant maps, and the
//! functors between module categories: tensor, restriction, inflation,
//! induction from cosets, categorical fixed points and Brauer quotients.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{FpMatrix, PrimeField};
use crate::group::{FiniteGroup, QuotientGroup, Subgroup};

/// A finite G-set, with the action of every group element tabulated.
#[derive(Clone)]
pub struct GSet {
    group: Arc<FiniteGroup>,
    labels: Vec<String>,
    /// `action[g][x] = g·x`
    action: Vec<Vec<u32>>,
}

impl PartialEq for GSet {
    fn eq(&self, other: &Self) -> bool {
        self.action == other.action && same_group(&self.group, &other.group)
    }
}

impl Eq for GSet {}

impl fmt::Debug for GSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GSet<{}>{:?}", self.group.name(), self.labels)
    }
}

pub(crate) fn same_group(a: &Arc<FiniteGroup>, b: &Arc<FiniteGroup>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl GSet {
    /// Tabulates `act(g, x)` for every element and point, and checks that it is an action.
    pub fn from_action(
        group: Arc<FiniteGroup>,
        labels: Vec<String>,
        act: impl Fn(usize, usize) -> usize,
    ) -> Result<Self> {
        let n = labels.len();
        let action: Vec<Vec<u32>> = (0..group.order())
            .map(|g| (0..n).map(|x| act(g, x) as u32).collect())
            .collect();
        let set = GSet { group, labels, action };
        set.check_action()?;
        Ok(set)
    }

    fn check_action(&self) -> Result<()> {
        let n = self.labels.len();
        let g = &self.group;
        for row in &self.action {
            let mut seen = vec![false; n];
            for &y in row {
                if y as usize >= n || std::mem::replace(&mut seen[y as usize], true) {
                    return Err(Error::InvalidGroup("group element does not act by a permutation".into()));
                }
            }
        }
        if self.action[FiniteGroup::IDENTITY].iter().enumerate().any(|(x, &y)| x != y as usize) {
            return Err(Error::InvalidGroup("identity does not act trivially".into()));
        }
        for a in 0..g.order() {
            for b in 0..g.order() {
                let ab = g.mul(a, b);
                for x in 0..n {
                    let via = self.action[a][self.action[b][x] as usize];
                    if self.action[ab][x] != via {
                        return Err(Error::InvalidGroup(format!(
                            "action is not compatible with the product of elements {a} and {b}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    #[inline]
    pub fn act(&self, g: usize, x: usize) -> usize {
        self.action[g][x] as usize
    }

    /// Orbits of a subgroup, each sorted, ordered by least point.
    pub fn orbits(&self, h: &Subgroup) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for x in 0..self.len() {
            if seen[x] {
                continue;
            }
            let mut orbit: Vec<usize> = h.members().iter().map(|&g| self.act(g, x)).collect();
            orbit.sort_unstable();
            orbit.dedup();
            for &y in &orbit {
                seen[y] = true;
            }
            out.push(orbit);
        }
        out
    }

    pub fn stabilizer(&self, x: usize) -> Subgroup {
        let members = (0..self.group.order()).filter(|&g| self.act(g, x) == x).collect();
        self.group.subgroup_from(members).expect("stabilizers are subgroups")
    }

    /// `(stabilizer, representative)` for each G-orbit.
    pub fn orbit_decomposition(&self) -> Vec<(Subgroup, usize)> {
        self.orbits(&self.group.whole())
            .into_iter()
            .map(|o| (self.stabilizer(o[0]), o[0]))
            .collect()
    }

    /// Points fixed by every element of `h`.
    pub fn fixed_points(&self, h: &Subgroup) -> Vec<usize> {
        (0..self.len())
            .filter(|&x| h.members().iter().all(|&g| self.act(g, x) == x))
            .collect()
    }
}

/// A permutation kG-module k(X).
#[derive(Clone, PartialEq, Eq)]
pub struct PermModule {
    field: PrimeField,
    basis: Arc<GSet>,
}

impl fmt::Debug for PermModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "k({:?}) over {}", self.basis, self.field)
    }
}

impl PermModule {
    pub fn new(field: PrimeField, basis: GSet) -> Self {
        PermModule {
            field,
            basis: Arc::new(basis),
        }
    }

    pub fn zero(group: &Arc<FiniteGroup>, field: PrimeField) -> Self {
        let basis = GSet {
            group: Arc::clone(group),
            labels: Vec::new(),
            action: vec![Vec::new(); group.order()],
        };
        PermModule::new(field, basis)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.basis.group()
    }

    pub fn basis(&self) -> &GSet {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    /// Matrix of the action of group element `g`.
    pub fn rho(&self, g: usize) -> FpMatrix {
        let mut m = FpMatrix::zeros(self.field, self.dim(), self.dim());
        for x in 0..self.dim() {
            m.set(self.basis.act(g, x), x, 1);
        }
        m
    }

    pub(crate) fn check_compatible(&self, other: &PermModule) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(
                self.field.characteristic(),
                other.field.characteristic(),
            ));
        }
        if !same_group(self.group(), other.group()) {
            return Err(Error::GroupMismatch(format!(
                "{} vs {}",
                self.group().name(),
                other.group().name()
            )));
        }
        Ok(())
    }

    /// Disjoint union of bases; summand `i` occupies a contiguous block of points.
    pub fn direct_sum(parts: &[&PermModule]) -> Result<PermModule> {
        let first = parts
            .first()
            .ok_or_else(|| Error::Dimension("direct sum of no modules".into()))?;
        for p in parts {
            first.check_compatible(p)?;
        }
        let group = Arc::clone(first.group());
        let mut labels = Vec::new();
        let mut offsets = Vec::new();
        for (i, p) in parts.iter().enumerate() {
            offsets.push(labels.len());
            labels.extend(p.basis.labels.iter().map(|l| {
                if parts.len() == 1 {
                    l.clone()
                } else {
                    format!("{i}:{l}")
                }
            }));
        }
        let action = (0..group.order())
            .map(|g| {
                parts
                    .iter()
                    .zip(&offsets)
                    .flat_map(|(p, &off)| p.basis.action[g].iter().map(move |&y| y + off as u32))
                    .collect()
            })
            .collect();
        Ok(PermModule::new(first.field, GSet { group, labels, action }))
    }
}

/// k(G/K) with basis the left cosets xK, listed by least element.
pub fn coset_module(group: &Arc<FiniteGroup>, k: &Subgroup, field: PrimeField) -> PermModule {
    let (cosets, coset_of) = left_cosets(group, k);
    let labels = cosets
        .iter()
        .map(|c| {
            if k.order() == group.order() {
                "G".to_string()
            } else {
                format!("{}K", group.word(c[0]))
            }
        })
        .collect();
    let action = (0..group.order())
        .map(|g| cosets.iter().map(|c| coset_of[group.mul(g, c[0])] as u32).collect())
        .collect();
    PermModule::new(
        field,
        GSet {
            group: Arc::clone(group),
            labels,
            action,
        },
    )
}

/// Left cosets of `k` (each sorted, ordered by least element) and the coset index of every element.
pub fn left_cosets(group: &FiniteGroup, k: &Subgroup) -> (Vec<Vec<usize>>, Vec<usize>) {
    let mut coset_of = vec![usize::MAX; group.order()];
    let mut cosets = Vec::new();
    for x in 0..group.order() {
        if coset_of[x] != usize::MAX {
            continue;
        }
        let mut c: Vec<usize> = k.members().iter().map(|&h| group.mul(x, h)).collect();
        c.sort_unstable();
        for &y in &c {
            coset_of[y] = cosets.len();
        }
        cosets.push(c);
    }
    (cosets, coset_of)
}

/// `m ⊗ n` with diagonal action; point `(i, j)` is `i * dim(n) + j`.
pub fn tensor(m: &PermModule, n: &PermModule) -> Result<PermModule> {
    m.check_compatible(n)?;
    let dn = n.dim();
    let labels = m
        .basis
        .labels
        .iter()
        .flat_map(|a| n.basis.labels.iter().map(move |b| format!("{a}⊗{b}")))
        .collect();
    let set = GSet::from_action(Arc::clone(m.group()), labels, |g, x| {
        m.basis.act(g, x / dn) * dn + n.basis.act(g, x % dn)
    })?;
    Ok(PermModule::new(m.field, set))
}

/// An equivariant matrix between permutation modules.
#[derive(Clone, PartialEq, Eq)]
pub struct ModuleMap {
    source: PermModule,
    target: PermModule,
    matrix: FpMatrix,
}

impl fmt::Debug for ModuleMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ModuleMap {}->{} {:?}", self.source.dim(), self.target.dim(), self.matrix)
    }
}

impl ModuleMap {
    /// Checks shapes, fields, groups and equivariance under the defining generators.
    pub fn new(source: PermModule, target: PermModule, matrix: FpMatrix) -> Result<Self> {
        let map = Self::new_unchecked(source, target, matrix)?;
        let gens = map.source.group().generators().to_vec();
        if let Some(g) = gens.iter().find(|&&g| !map.commutes_with(g)) {
            return Err(Error::NotEquivariant(format!(
                "fails to commute with generator {}",
                map.source.group().word(*g)
            )));
        }
        Ok(map)
    }

    /// Checks shapes, fields and groups but not equivariance.
    pub fn new_unchecked(source: PermModule, target: PermModule, matrix: FpMatrix) -> Result<Self> {
        source.check_compatible(&target)?;
        if matrix.field() != source.field() {
            return Err(Error::FieldMismatch(
                matrix.field().characteristic(),
                source.field().characteristic(),
            ));
        }
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(Error::Dimension(format!(
                "{}x{} matrix for a map of dimension {} -> {}",
                matrix.rows(),
                matrix.cols(),
                source.dim(),
                target.dim()
            )));
        }
        Ok(ModuleMap { source, target, matrix })
    }

    pub fn zero(source: &PermModule, target: &PermModule) -> Result<Self> {
        let m = FpMatrix::zeros(source.field(), target.dim(), source.dim());
        Self::new_unchecked(source.clone(), target.clone(), m)
    }

    pub fn identity(m: &PermModule) -> Self {
        ModuleMap {
            source: m.clone(),
            target: m.clone(),
            matrix: FpMatrix::identity(m.field(), m.dim()),
        }
    }

    pub fn source(&self) -> &PermModule {
        &self.source
    }

    pub fn target(&self) -> &PermModule {
        &self.target
    }

    pub fn matrix(&self) -> &FpMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> FpMatrix {
        self.matrix
    }

    /// `A ρ_source(g) = ρ_target(g) A`, i.e. `A[g·y][g·x] = A[y][x]`.
    fn commutes_with(&self, g: usize) -> bool {
        let (s, t) = (&self.source.basis, &self.target.basis);
        (0..t.len()).all(|y| (0..s.len()).all(|x| self.matrix.get(t.act(g, y), s.act(g, x)) == self.matrix.get(y, x)))
    }

    /// Equivariance against every group element.
    pub fn is_equivariant(&self) -> bool {
        (0..self.source.group().order()).all(|g| self.commutes_with(g))
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &ModuleMap) -> Result<ModuleMap> {
        if other.target.dim() != self.source.dim() {
            return Err(Error::Dimension(format!(
                "cannot compose {} -> {} after {} -> {}",
                self.source.dim(),
                self.target.dim(),
                other.source.dim(),
                other.target.dim()
            )));
        }
        let matrix = self.matrix.mul(&other.matrix)?;
        ModuleMap::new_unchecked(other.source.clone(), self.target.clone(), matrix)
    }

    pub fn add(&self, other: &ModuleMap) -> Result<ModuleMap> {
        ModuleMap::new_unchecked(self.source.clone(), self.target.clone(), self.matrix.add(&other.matrix)?)
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }
}

/// H-fixed points of k(X): spanned by the H-orbit sums.
#[derive(Debug, Clone)]
pub struct FixedPoints {
    pub orbits: Vec<Vec<usize>>,
    /// Columns are orbit indicator vectors.
    pub inclusion: FpMatrix,
}

impl FixedPoints {
    pub fn dim(&self) -> usize {
        self.orbits.len()
    }
}

pub fn fixed_points(m: &PermModule, h: &Subgroup) -> FixedPoints {
    let orbits = m.basis.orbits(h);
    let mut inclusion = FpMatrix::zeros(m.field(), m.dim(), orbits.len());
    for (j, o) in orbits.iter().enumerate() {
        for &x in o {
            inclusion.set(x, j, 1);
        }
    }
    FixedPoints { orbits, inclusion }
}

/// `M^H` as a permutation module over the Weyl group, on the basis of H-orbit sums.
pub fn fixed_module(m: &PermModule, h: &Subgroup, weyl: &QuotientGroup) -> Result<(PermModule, Vec<Vec<usize>>)> {
    let orbits = m.basis.orbits(h);
    let mut orbit_of = vec![0; m.dim()];
    for (j, o) in orbits.iter().enumerate() {
        for &x in o {
            orbit_of[x] = j;
        }
    }
    let labels = orbits
        .iter()
        .map(|o| format!("Σ{{{}}}", o.iter().map(|&x| m.basis.labels[x].as_str()).collect::<Vec<_>>().join(",")))
        .collect();
    let set = GSet::from_action(Arc::clone(&weyl.group), labels, |q, j| {
        orbit_of[m.basis.act(weyl.lift(q), orbits[j][0])]
    })?;
    Ok((PermModule::new(m.field(), set), orbits))
}

/// Restriction of a map to fixed points, in orbit-sum bases.
pub fn fixed_map(f: &ModuleMap, h: &Subgroup, weyl: &QuotientGroup) -> Result<ModuleMap> {
    let (src, src_orbits) = fixed_module(&f.source, h, weyl)?;
    let (tgt, tgt_orbits) = fixed_module(&f.target, h, weyl)?;
    let field = f.matrix.field();
    let mut matrix = FpMatrix::zeros(field, tgt.dim(), src.dim());
    for (b, so) in src_orbits.iter().enumerate() {
        for (a, to) in tgt_orbits.iter().enumerate() {
            let y = to[0];
            let v = so.iter().fold(0, |acc, &x| field.add(acc, f.matrix.get(y, x)));
            matrix.set(a, b, v);
        }
    }
    ModuleMap::new_unchecked(src, tgt, matrix)
}

/// Ψ^H(k(X)) = k(X^H) over N_G(H)/H, together with the H-fixed points of X it is built on.
#[derive(Debug, Clone)]
pub struct BrauerQuotient {
    pub module: PermModule,
    pub section: Vec<usize>,
}

fn check_p_subgroup(group: &FiniteGroup, h: &Subgroup, field: PrimeField) -> Result<()> {
    if !group.is_p_subgroup(h, field.characteristic()) {
        return Err(Error::NotAPGroup(format!(
            "subgroup of order {} is not a {}-subgroup",
            h.order(),
            field.characteristic()
        )));
    }
    Ok(())
}

pub fn brauer(m: &PermModule, h: &Subgroup) -> Result<BrauerQuotient> {
    let weyl = m.group().weyl_group(h);
    brauer_with(m, h, &weyl)
}

pub fn brauer_with(m: &PermModule, h: &Subgroup, weyl: &QuotientGroup) -> Result<BrauerQuotient> {
    check_p_subgroup(m.group(), h, m.field())?;
    let section = m.basis.fixed_points(h);
    let mut position = BTreeMap::new();
    for (i, &x) in section.iter().enumerate() {
        position.insert(x, i);
    }
    let labels = section.iter().map(|&x| m.basis.labels[x].clone()).collect();
    let set = GSet::from_action(Arc::clone(&weyl.group), labels, |q, i| {
        position[&m.basis.act(weyl.lift(q), section[i])]
    })?;
    Ok(BrauerQuotient {
        module: PermModule::new(m.field(), set),
        section,
    })
}

pub fn brauer_on_map(f: &ModuleMap, h: &Subgroup) -> Result<ModuleMap> {
    let weyl = f.source.group().weyl_group(h);
    brauer_on_map_with(f, h, &weyl)
}

/// Ψ^H on a map: the submatrix on H-fixed basis points of source and target.
pub fn brauer_on_map_with(f: &ModuleMap, h: &Subgroup, weyl: &QuotientGroup) -> Result<ModuleMap> {
    if !f.is_equivariant() {
        return Err(Error::NotEquivariant("Brauer quotient of a non-equivariant matrix".into()));
    }
    let src = brauer_with(&f.source, h, weyl)?;
    let tgt = brauer_with(&f.target, h, weyl)?;
    let matrix = f.matrix.select(&tgt.section, &src.section);
    ModuleMap::new(src.module, tgt.module, matrix)
}

/// Restriction to a subgroup, given as a group by [`FiniteGroup::subgroup_as_group`].
pub fn restrict_to(m: &PermModule, h: &Subgroup, h_group: &Arc<FiniteGroup>) -> Result<PermModule> {
    if h_group.order() != h.order() {
        return Err(Error::GroupMismatch("subgroup and its group realization differ in order".into()));
    }
    let set = GSet::from_action(Arc::clone(h_group), m.basis.labels.clone(), |i, x| {
        m.basis.act(h.members()[i], x)
    })?;
    Ok(PermModule::new(m.field(), set))
}

pub fn restrict(m: &PermModule, h: &Subgroup) -> Result<PermModule> {
    let h_group = m.group().subgroup_as_group(h, format!("{}|{}", m.group().name(), h.order()));
    restrict_to(m, h, &h_group)
}

/// Inflation along `G → G/N` of a module over the quotient group.
pub fn inflate(m: &PermModule, quotient: &QuotientGroup) -> Result<PermModule> {
    if !same_group(m.group(), &quotient.group) {
        return Err(Error::GroupMismatch("module is not over the quotient group".into()));
    }
    if quotient.numerator.order() != quotient.ambient.order() {
        return Err(Error::InvalidGroup("inflation needs a quotient of the whole group".into()));
    }
    let set = GSet::from_action(Arc::clone(&quotient.ambient), m.basis.labels.clone(), |g, x| {
        m.basis.act(quotient.project(g).expect("numerator is the whole group"), x)
    })?;
    Ok(PermModule::new(m.field(), set))
}

/// `Ind_H^G k(H/K) = k(G/K)` for `K ≤ H ≤ G`.
pub fn induce_coset(group: &Arc<FiniteGroup>, h: &Subgroup, k: &Subgroup, field: PrimeField) -> Result<PermModule> {
    if !k.is_subset_of(h) {
        return Err(Error::InvalidGroup("K is not contained in H".into()));
    }
    Ok(coset_module(group, k, field))
}

/// A basis of `Hom_G(m, n)`: indicator matrices of the G-orbits on target × source pairs.
pub fn hom_space(m: &PermModule, n: &PermModule) -> Result<Vec<FpMatrix>> {
    m.check_compatible(n)?;
    let (dm, dn) = (m.dim(), n.dim());
    let mut seen = vec![false; dm * dn];
    let mut basis = Vec::new();
    for start in 0..dm * dn {
        if seen[start] {
            continue;
        }
        let (y, x) = (start / dm, start % dm);
        let mut a = FpMatrix::zeros(m.field(), dn, dm);
        for g in 0..m.group().order() {
            let (gy, gx) = (n.basis.act(g, y), m.basis.act(g, x));
            seen[gy * dm + gx] = true;
            a.set(gy, gx, 1);
        }
        basis.push(a);
    }
    Ok(basis)
}

/// The same space obtained by solving `A ρ_m(s) = ρ_n(s) A` for every generator `s`.
pub fn hom_space_by_solving(m: &PermModule, n: &PermModule) -> Result<Vec<FpMatrix>> {
    m.check_compatible(n)?;
    let (dm, dn) = (m.dim(), n.dim());
    let field = m.field();
    let gens = m.group().generators();
    let unknowns = dm * dn;
    let mut system = FpMatrix::zeros(field, gens.len().max(1) * unknowns, unknowns);
    for (s, &g) in gens.iter().enumerate() {
        // (A ρ_m(g))[y][x] = A[y][g·x]; (ρ_n(g) A)[y][x] = A[g⁻¹·y][x]
        let ginv = m.group().inv(g);
        for y in 0..dn {
            for x in 0..dm {
                let row = s * unknowns + y * dm + x;
                let a = y * dm + m.basis.act(g, x);
                let b = n.basis.act(ginv, y) * dm + x;
                system.set(row, a, field.add(system.get(row, a), 1));
                system.set(row, b, field.sub(system.get(row, b), 1));
            }
        }
    }
    system
        .kernel_basis()
        .into_iter()
        .map(|v| FpMatrix::from_columns(field, unknowns, &[v]).map(|c| reshape(&c, dn, dm)))
        .collect()
}

fn reshape(column: &FpMatrix, rows: usize, cols: usize) -> FpMatrix {
    let mut out = FpMatrix::zeros(column.field(), rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            out.set(i, j, column.get(i * cols + j, 0));
        }
    }
    out
}
