use std::collections::BTreeSet;
use std::sync::Arc;

use proptest::prelude::*;

use permtt::catalog::parse_group;
use permtt::complex::{apply_functor, homology, BoundedComplex, Complex, Functor};
use permtt::field::{FpMatrix, PrimeField};
use permtt::group::FiniteGroup;
use permtt::module::{brauer, brauer_on_map, coset_module, fixed_points, hom_space, hom_space_by_solving, tensor, PermModule};
use permtt::random::{random_complex, rng_from_seed, RandomComplexParams};
use permtt::regularity::classify;
use permtt::residue::{build_s_cp, build_s_klein, kappa_conditions_check};
use permtt::spectrum::{closed_points, closed_support};

const GROUPS: [&str; 6] = ["C2", "C4", "C2xC2", "S3", "D8", "Q8"];

fn gf(p: u64) -> PrimeField {
    PrimeField::new(p).unwrap()
}

fn group(i: usize) -> Arc<FiniteGroup> {
    parse_group(GROUPS[i % GROUPS.len()]).unwrap()
}

fn matrix(p: u64, rows: usize, cols: usize, seed: Vec<i64>) -> FpMatrix {
    let entries = seed.into_iter().cycle().take(rows * cols).collect();
    FpMatrix::from_entries(gf(p), rows, cols, entries).unwrap()
}

fn support_reps(x: &Complex) -> BTreeSet<Vec<usize>> {
    closed_support(x).unwrap().into_iter().map(|pt| pt.representative.members().to_vec()).collect()
}

fn random_2complex(g: &Arc<FiniteGroup>, seed: u64) -> BoundedComplex {
    random_complex(g, gf(2), RandomComplexParams::default(), &mut rng_from_seed(seed)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rank_nullity(p in prop::sample::select(vec![2u64, 3, 5]), r in 1usize..6, c in 1usize..6,
                    seed in prop::collection::vec(-9i64..9, 1..36)) {
        let m = matrix(p, r, c, seed);
        prop_assert_eq!(m.rank() + m.kernel_basis().len(), c);
        for v in m.kernel_basis() {
            prop_assert!(m.mul_vec(&v).unwrap().iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn multiplication_is_associative(p in prop::sample::select(vec![2u64, 3, 7]), n in 1usize..5,
                                     a in prop::collection::vec(-9i64..9, 1..16),
                                     b in prop::collection::vec(-9i64..9, 1..16),
                                     c in prop::collection::vec(-9i64..9, 1..16)) {
        let (a, b, c) = (matrix(p, n, n, a), matrix(p, n, n, b), matrix(p, n, n, c));
        let left = a.mul(&b).unwrap().mul(&c).unwrap();
        let right = a.mul(&b.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn hom_space_matches_solver(gi in 0usize..6, a in 0usize..16, b in 0usize..16) {
        let g = group(gi);
        let subs = g.all_subgroups();
        let (k, l) = (&subs[a % subs.len()], &subs[b % subs.len()]);
        let (m, n) = (coset_module(&g, k, gf(2)), coset_module(&g, l, gf(2)));
        let orbit = hom_space(&m, &n).unwrap();
        let solved = hom_space_by_solving(&m, &n).unwrap();
        prop_assert_eq!(orbit.len(), solved.len());
        // double-coset count: |K\G/L|
        let mut seen = BTreeSet::new();
        for x in 0..g.order() {
            let coset: BTreeSet<usize> = k.members().iter()
                .flat_map(|&u| l.members().iter().map(move |&v| (u, v)))
                .map(|(u, v)| g.mul(g.mul(u, x), v)).collect();
            seen.insert(coset);
        }
        prop_assert_eq!(orbit.len(), seen.len());
    }

    #[test]
    fn frobenius_reciprocity(gi in 0usize..6, a in 0usize..16, b in 0usize..16) {
        // Hom(k(G/K), k(G/L)) ≅ (k(G/L))^K
        let g = group(gi);
        let subs = g.all_subgroups();
        let (k, l) = (&subs[a % subs.len()], &subs[b % subs.len()]);
        let n = coset_module(&g, l, gf(3));
        let hom = hom_space(&coset_module(&g, k, gf(3)), &n).unwrap();
        prop_assert_eq!(hom.len(), fixed_points(&n, k).dim());
    }

    #[test]
    fn tensor_with_trivial_is_identity(gi in 0usize..6, a in 0usize..16) {
        let g = group(gi);
        let subs = g.all_subgroups();
        let m = coset_module(&g, &subs[a % subs.len()], gf(2));
        let unit = coset_module(&g, &g.whole(), gf(2));
        let t = tensor(&m, &unit).unwrap();
        prop_assert_eq!(t.dim(), m.dim());
        prop_assert_eq!(t.basis().orbit_decomposition().len(), m.basis().orbit_decomposition().len());
    }

    #[test]
    fn brauer_is_functorial(gi in 0usize..6, seed in any::<u64>()) {
        let g = group(gi);
        let c = random_2complex(&g, seed);
        let Some((lo, hi)) = c.support() else { return Ok(()) };
        for h in closed_points(&g, 2).iter().map(|pt| &pt.representative) {
            for n in lo..hi - 1 {
                let (f, d) = (c.differential(n), c.differential(n + 1));
                let composite = brauer_on_map(&d.compose(&f).unwrap(), h).unwrap();
                let separately = brauer_on_map(&d, h).unwrap().compose(&brauer_on_map(&f, h).unwrap()).unwrap();
                prop_assert_eq!(composite.matrix(), separately.matrix());
            }
            let id = permtt::module::ModuleMap::identity(c.module(lo));
            prop_assert!(brauer_on_map(&id, h).unwrap().matrix().is_square());
            prop_assert_eq!(brauer_on_map(&id, h).unwrap().matrix().rows(), brauer(c.module(lo), h).unwrap().module.dim());
        }
    }

    #[test]
    fn fixed_homology_is_constant_on_classes(gi in 0usize..6, seed in any::<u64>()) {
        let g = group(gi);
        let c = Complex::Bounded(random_2complex(&g, seed));
        for class in g.conjugacy_classes_of_subgroups(None) {
            let reference = homology(&apply_functor(&c, &Functor::Fixed(class.representative.clone())).unwrap()).unwrap();
            for h in &class.members {
                let other = homology(&apply_functor(&c, &Functor::Fixed(h.clone())).unwrap()).unwrap();
                prop_assert_eq!(&reference.dims, &other.dims);
            }
        }
    }

    #[test]
    fn support_of_sum_is_union(gi in 0usize..6, s1 in any::<u64>(), s2 in any::<u64>()) {
        let g = group(gi);
        let (a, b) = (random_2complex(&g, s1), random_2complex(&g, s2));
        let sum = Complex::Bounded(a.direct_sum(&b).unwrap());
        let mut union = support_reps(&Complex::Bounded(a));
        union.extend(support_reps(&Complex::Bounded(b)));
        prop_assert_eq!(support_reps(&sum), union);
    }

    #[test]
    fn closed_ideals_are_tensor_ideals(gi in 0usize..6, seed in any::<u64>(), a in 0usize..16) {
        let g = group(gi);
        let subs = g.all_subgroups();
        let m: PermModule = coset_module(&g, &subs[a % subs.len()], gf(2));
        let c = random_2complex(&g, seed);
        let before = support_reps(&Complex::Bounded(c.clone()));
        let after = support_reps(&Complex::Bounded(c.tensor_module(&m).unwrap()));
        prop_assert!(after.is_subset(&before));
    }
}

#[test]
fn maximal_ideals_cover_all_but_the_top_point() {
    // k(G/H) for H maximal is killed by Ψ^K exactly when K is not subconjugate to H
    for d in ["C2", "C4", "C8", "C2xC2", "D8", "Q8"] {
        let g = parse_group(d).unwrap();
        let points = closed_points(&g, 2);
        let mut covered = BTreeSet::new();
        for h in g.maximal_subgroups() {
            let c = Complex::Bounded(BoundedComplex::concentrated(&coset_module(&g, &h, gf(2)), 0));
            for pt in closed_support(&c).unwrap() {
                covered.insert(pt.representative.members().to_vec());
            }
        }
        let top = g.whole();
        for pt in &points {
            let is_top = pt.representative == top;
            assert_eq!(covered.contains(pt.representative.members()), !is_top, "{d}");
        }
    }
}

#[test]
fn classification_depends_only_on_sylow() {
    for d in ["C2", "C4", "S3", "D8", "Q8", "A4", "C6", "D12", "C2xC6", "Q8xC3"] {
        let g = parse_group(d).unwrap();
        for p in [2, 3] {
            let sylow = g.sylow_subgroup(p);
            let s = g.subgroup_as_group(&sylow, "sylow");
            assert_eq!(classify(&g, p).unwrap().verdict, classify(&s, p).unwrap().verdict, "{d}, p={p}");
        }
    }
}

#[test]
fn sampled_mutations_break_residue_candidates() {
    let mut rng = rng_from_seed(99);
    for p in [3u32, 5] {
        let c = build_s_cp(p).unwrap();
        let m = c.s.differential(-2).into_matrix();
        for (r, col) in (0..m.rows()).flat_map(|r| (0..m.cols()).map(move |c| (r, c))) {
            if m.get(r, col) == 0 {
                continue;
            }
            let bad = c.with_entry(-2, r, col, 0).unwrap();
            assert!(!kappa_conditions_check(&bad, None).pass, "p={p}, ({r}, {col})");
        }
    }
    // the Klein candidate already fails; a mutation must not make it pass
    let k = build_s_klein(gf(2)).unwrap();
    for degree in [-1, -2, -3] {
        let m = k.s.differential(degree).into_matrix();
        let r = rand::Rng::gen_range(&mut rng, 0..m.rows());
        let c = rand::Rng::gen_range(&mut rng, 0..m.cols());
        let v = (m.get(r, c) + 1) % 2;
        let bad = k.with_entry(degree, r, c, v).unwrap();
        assert!(!kappa_conditions_check(&bad, None).pass, "degree {degree}");
    }
}
