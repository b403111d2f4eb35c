use num_rational::Ratio;
use proptest::prelude::*;

use hyperalg::ddhyper::Interval;
use hyperalg::functors::{f_mor, f_obj, homs_extending};
use hyperalg::fuzzy::{check_fuzzy_axioms, check_weak_morphism, signfuzzy, weak_iso};
use hyperalg::hyper::{field, krasner, signs};
use hyperalg::io::{Structure, StructureFile};
use hyperalg::matroid::{enumerate_gp_hyper, scale_gp, verify_gp_hyper};
use hyperalg::ordgrp::{hgamma_add, hgamma_mul, kgamma_add, kgamma_mul, OGElem, OGSubset};
use hyperalg::{FiniteHyperring, RationalInterval};

fn elem() -> impl Strategy<Value = OGElem<i64>> {
    prop_oneof![1 => Just(OGElem::Bottom), 6 => (-12i64..=12).prop_map(OGElem::Elem)]
}

fn subset() -> impl Strategy<Value = OGSubset<i64>> {
    prop_oneof![elem().prop_map(OGSubset::Singleton), elem().prop_map(OGSubset::down)]
}

fn interval() -> impl Strategy<Value = RationalInterval> {
    (0i64..20, 0i64..20, 1i64..4).prop_map(|(a, d, q)| Interval::new(Ratio::new(a, q), Ratio::new(a + d, q)).unwrap())
}

proptest! {
    #[test]
    fn hgamma_sum_is_reversible(x in elem(), y in elem(), z in elem()) {
        // negation is the identity on H_Gamma
        prop_assert_eq!(hgamma_add(x, y).contains(z), hgamma_add(z, y).contains(x));
    }

    #[test]
    fn hgamma_multiplication_distributes(x in elem(), y in elem(), z in elem(), w in elem()) {
        prop_assume!(x != OGElem::Bottom);
        let lhs = hgamma_add(y, z).contains(w);
        prop_assert_eq!(lhs, hgamma_add(hgamma_mul(x, y), hgamma_mul(x, z)).contains(hgamma_mul(x, w)));
    }

    #[test]
    fn kgamma_addition_laws(a in subset(), b in subset(), c in subset()) {
        prop_assert_eq!(kgamma_add(a, b), kgamma_add(b, a));
        prop_assert_eq!(kgamma_add(kgamma_add(a, b), c), kgamma_add(a, kgamma_add(b, c)));
        prop_assert_eq!(kgamma_mul(a, b), kgamma_mul(b, a));
    }

    #[test]
    fn triangle_contains_differences_and_sums(a in interval(), b in interval(), s in 0u32..=4, t in 0u32..=4) {
        let pick = |i: RationalInterval, k: u32| i.lo() + (i.hi() - i.lo()) * Ratio::new(k as i64, 4);
        let (x, y) = (pick(a, s), pick(b, t));
        let c = a.triangle(b);
        prop_assert_eq!(c, b.triangle(a));
        let diff = if x > y { x - y } else { y - x };
        prop_assert!(c.lo() <= diff && x + y <= c.hi());
        prop_assert_eq!(a.mul(b), b.mul(a));
    }

    #[test]
    fn scaling_preserves_gp(i in 0usize..1000, u in prop::sample::select(vec![1usize, 2])) {
        let s = signs();
        let all = enumerate_gp_hyper(&s, 4, 2, false).unwrap();
        let phi = &all[i % all.len()];
        prop_assert!(verify_gp_hyper(&scale_gp(phi, u, &s), &s).unwrap().passed());
    }

    #[test]
    fn relabelled_fuzzy_ring_round_trips(tail in Just((2usize..7).collect::<Vec<_>>()).prop_shuffle()) {
        let fs = f_obj(&signs()).unwrap().to_finite();
        let perm: Vec<usize> = [0, 1].into_iter().chain(tail).collect();
        let k = fs.permuted(&perm).unwrap();
        prop_assert!(check_fuzzy_axioms(&k).passed());
        prop_assert!(weak_iso(&k, &fs).is_some());
        let text = StructureFile::from_fuzzyring(&k, Some("relabelled")).to_canonical();
        let back = StructureFile::parse(&text).unwrap();
        prop_assert_eq!(back.to_canonical(), text);
        match back.into_structure().unwrap() {
            Structure::Fuzzyring(k2) => prop_assert_eq!(k2, k),
            other => prop_assert!(false, "unexpected structure {:?}", other),
        }
    }

    #[test]
    fn relabelling_must_fix_identities(perm in Just(vec![0usize, 1, 2, 3]).prop_shuffle()) {
        let fixes = perm[0] == 0 && perm[1] == 1;
        prop_assert_eq!(signfuzzy().permuted(&perm).is_ok(), fixes);
    }
}

fn all_homs(r: &FiniteHyperring, s: &FiniteHyperring) -> Vec<Vec<usize>> {
    homs_extending(r, s, &vec![None; r.size()]).1
}

#[test]
fn powerset_functor_preserves_composition() {
    let rings = [krasner(), signs(), field(2).unwrap(), field(3).unwrap()];
    let fs: Vec<_> = rings.iter().map(|r| f_obj(r).unwrap()).collect();
    let mut composites = 0;
    for a in 0..rings.len() {
        for (i, f) in all_homs(&rings[a], &rings[a]).iter().enumerate() {
            if f.iter().enumerate().all(|(x, &y)| x == y) {
                let id = f_mor(&fs[a], &fs[a], f).as_total().unwrap();
                assert!(id.iter().enumerate().all(|(x, &y)| x == y), "F(id) is not the identity, hom {i}");
            }
        }
        for b in 0..rings.len() {
            for c in 0..rings.len() {
                for f in all_homs(&rings[a], &rings[b]) {
                    for g in all_homs(&rings[b], &rings[c]) {
                        let gf: Vec<usize> = f.iter().map(|&x| g[x]).collect();
                        let lhs = f_mor(&fs[a], &fs[c], &gf).as_total().unwrap();
                        let ff = f_mor(&fs[a], &fs[b], &f).as_total().unwrap();
                        let fg = f_mor(&fs[b], &fs[c], &g).as_total().unwrap();
                        let rhs: Vec<usize> = ff.iter().map(|&x| fg[x]).collect();
                        assert_eq!(lhs, rhs);
                        composites += 1;
                    }
                }
            }
        }
    }
    assert!(composites >= 10, "only {composites} composable pairs");
}

#[test]
fn powerset_morphisms_are_weak_on_units() {
    let (k, s) = (krasner(), signs());
    let (fk, fs) = (f_obj(&k).unwrap(), f_obj(&s).unwrap());
    for f in all_homs(&s, &k) {
        let t = f_mor(&fs, &fk, &f).as_total().unwrap();
        let map: Vec<Option<usize>> = t.into_iter().map(Some).collect();
        assert!(check_weak_morphism(&fs, &fk, &map).unwrap().accepted());
    }
}
