//! One PASS/FAIL line per acceptance criterion.
//!
//! All comparisons are exact (discrete structures, rational intervals), so
//! the only pinned tolerances are the wall-clock budgets below. A criterion
//! listed in `KNOWN_DEVIATIONS` may print FAIL without failing the test;
//! any other FAIL does.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use hyperalg::ddhyper::{closure_s, f1, f2, fbar, fbar_inclusion, triangle_counterexample};
use hyperalg::functors::{
    check_roundtrips, check_roundtrips_fuzzy, f_obj, g_obj, homs_extending, strong_extension_search, unit_field_integers,
    ExtensionOutcome, ExtensionSearchConfig,
};
use hyperalg::fuzzy::{
    check_fuzzy_axioms, check_strong_morphism, check_weak_morphism, is_field_like, krasnerfuzzy, ring_as_fuzzy, signfuzzy,
    unit_group_homs, weak_iso,
};
use hyperalg::hyper::{check_doubly_distributive, check_hyperfield, field, kh, khef, krasner, quotient, signs};
use hyperalg::matroid::{basis_exchange_oracle, cross_check_onetoone, enumerate_gp_hyper, underlying_matroid};
use hyperalg::ordgrp::{
    check_fbar_hgamma_iso_kgamma, check_hgamma_dd_window, check_kgamma_window, check_zariski_pushforward,
    sample_zariski_systems,
};
use hyperalg::{AbelianGroup, FiniteFuzzyRing, FiniteHyperring, FiniteRing, FuzzyRing, SubsetMask};

/// Exact equality everywhere; no numeric tolerance is involved.
const EXACT: u32 = 0;

/// Criteria whose failure is expected and explained in the notes shipped
/// with the repository. Criterion 5: on the Klein four group the
/// identity-on-units map is not a weak morphism, because the sum of the
/// four group elements is null in `F(KHef)` but not in `F(KH)`.
const KNOWN_DEVIATIONS: &[u32] = &[5];

const MAX_UNIT_SUM: usize = 5;

struct Outcome {
    pass: bool,
    detail: String,
}

fn run(id: u32, title: &str, budget: Duration, f: impl FnOnce() -> Outcome) -> (u32, bool) {
    let t = Instant::now();
    let out = f();
    let took = t.elapsed();
    let in_time = took <= budget;
    let pass = out.pass && in_time;
    println!(
        "criterion {id:>2}: {} - {title} [{}] ({:.2}s, budget {}s, tolerance {EXACT})",
        if pass { "PASS" } else { "FAIL" },
        out.detail,
        took.as_secs_f64(),
        budget.as_secs()
    );
    (id, pass)
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

fn gf_hyperfields() -> Vec<(String, FiniteHyperring)> {
    (2..=5).filter(|&q| q != 6).map(|q| (format!("GF({q})"), field(q).unwrap())).collect()
}

fn builtin_hyperfields() -> Vec<(String, FiniteHyperring)> {
    let gf7 = FiniteRing::gf(7).unwrap();
    let squares = SubsetMask::from_elems([1, 2, 4]);
    let gf4 = FiniteRing::gf(4).unwrap();
    let mut v = vec![("K".to_string(), krasner()), ("S".to_string(), signs())];
    v.extend(gf_hyperfields());
    v.push(("GF(7)".into(), field(7).unwrap()));
    v.push(("GF(7)/squares".into(), quotient(&gf7, squares).unwrap()));
    v.push(("GF(4)/units".into(), quotient(&gf4, gf4.units()).unwrap()));
    v.push(("KH(C5)".into(), kh(&AbelianGroup::cyclic(5).unwrap()).unwrap()));
    v
}

fn criterion1() -> Outcome {
    let fk = f_obj(&krasner()).unwrap();
    let kf = krasnerfuzzy();
    let fkt = fk.to_finite();
    let k_tables = fkt.add_nested() == kf.add_nested()
        && fkt.mul_nested() == kf.mul_nested()
        && fkt.null_set() == kf.null_set()
        && fkt.epsilon() == kf.epsilon();
    let k_iso = weak_iso(&fk, &kf).is_some();
    // {0}, {1}, {-1}, S sit at mask - 1 = 0, 1, 3, 6
    let fs = f_obj(&signs()).unwrap();
    let sub = [0usize, 1, 3, 6];
    let back: HashMap<usize, usize> = sub.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let sf = signfuzzy();
    let mut s_tables = fs.size() == 7;
    for i in 0..4 {
        s_tables &= fs.is_null(sub[i]) == sf.is_null(i);
        for j in 0..4 {
            s_tables &= back.get(&fs.add(sub[i], sub[j])) == Some(&sf.add_idx(i, j));
            s_tables &= back.get(&fs.mul(sub[i], sub[j])) == Some(&sf.mul_idx(i, j));
        }
    }
    Outcome {
        pass: k_tables && k_iso && s_tables,
        detail: format!("F(K) tables equal: {k_tables}, weak iso: {k_iso}; F(S) on {{0,1,-1,S}} equals printed tables: {s_tables}"),
    }
}

fn criterion2() -> Outcome {
    let gf4 = FiniteRing::gf(4).unwrap();
    let v4 = AbelianGroup::klein_four();
    let mut rings = vec![("K".to_string(), krasner()), ("S".to_string(), signs())];
    rings.extend(gf_hyperfields());
    rings.push(("GF(4)/units".into(), quotient(&gf4, gf4.units()).unwrap()));
    rings.push(("KH(V4)".into(), kh(&v4).unwrap()));
    rings.push(("KHef(V4)".into(), khef(&v4).unwrap()));
    let mut failed = Vec::new();
    let mut sizes = Vec::new();
    for (name, r) in &rings {
        let f = f_obj(r).unwrap();
        sizes.push(format!("{name}:{}", f.size()));
        let rep = check_fuzzy_axioms(&f);
        if !rep.passed() {
            failed.push(format!("{name} {rep}"));
        }
    }
    Outcome {
        pass: failed.is_empty(),
        detail: format!("sizes {}; failures {:?}", sizes.join(" "), failed),
    }
}

fn criterion3() -> Outcome {
    let mut failed = Vec::new();
    let fields = builtin_hyperfields();
    for (name, k) in &fields {
        if !check_hyperfield(k).passed() || !check_roundtrips(k).unwrap().passed() {
            failed.push(name.clone());
        }
    }
    let fz_ok = check_roundtrips_fuzzy(&krasnerfuzzy()).unwrap().passed()
        && check_roundtrips_fuzzy(&signfuzzy()).unwrap().passed();
    Outcome {
        pass: failed.is_empty() && fz_ok,
        detail: format!("{} hyperfields, failures {:?}; fuzzy round trips: {fz_ok}", fields.len(), failed),
    }
}

fn criterion4() -> Outcome {
    let z = unit_field_integers();
    let fz = f_obj(&z).unwrap();
    let rep = is_field_like(&fz);
    let one = fz.embed(1);
    let witness = rep.first("field-like").map(|v| v.witness.clone());
    let g = g_obj(&fz).unwrap();
    let empty = g.hyper.is_partial() && g.hyper.add(1, 1).is_empty();
    Outcome {
        pass: !rep.passed() && witness == Some(vec![one, one]) && empty,
        detail: format!("field-like: {}, witness {:?}, G' gives 1+1 empty: {empty}", rep.passed(), witness),
    }
}

fn unit_identity(src: &hyperalg::PowersetFuzzyRing, dst: &hyperalg::PowersetFuzzyRing, m: usize) -> Vec<Option<usize>> {
    let mut map = vec![None; src.size()];
    for a in 0..=m {
        map[src.embed(a)] = Some(dst.embed(a));
    }
    map
}

fn criterion5() -> Outcome {
    let v4 = AbelianGroup::klein_four();
    let (he, h) = (khef(&v4).unwrap(), kh(&v4).unwrap());
    let (fhe, fh) = (f_obj(&he).unwrap(), f_obj(&h).unwrap());
    let map = unit_identity(&fhe, &fh, 4);
    let cert = check_weak_morphism(&fhe, &fh, &map).unwrap();
    let weak = cert.accepted();
    let mut fixed = vec![None; he.size()];
    for a in 0..=4 {
        fixed[a] = Some(a);
    }
    let (candidates, homs) = homs_extending(&he, &h, &fixed);
    let verdict = strong_extension_search(&fhe, &fh, &map, ExtensionSearchConfig::default()).unwrap();
    let verdict_text = match &verdict {
        ExtensionOutcome::Extends { map, .. } => format!("Extends with witness {map:?}, a discrepancy"),
        ExtensionOutcome::Refuted { certificate, nodes } => {
            format!("Refuted after {nodes} nodes{}", if certificate.is_some() { " (unit map not weak)" } else { "" })
        }
        ExtensionOutcome::Unknown { nodes } => format!("Unknown after {nodes} nodes"),
    };
    let witness: Vec<String> = cert.witness_terms.iter().map(|&t| fhe.label(t)).collect();

    // same construction on C5, where the unit map is weak
    let c5 = AbelianGroup::cyclic(5).unwrap();
    let (he5, h5) = (khef(&c5).unwrap(), kh(&c5).unwrap());
    let (fhe5, fh5) = (f_obj(&he5).unwrap(), f_obj(&h5).unwrap());
    let map5 = unit_identity(&fhe5, &fh5, 5);
    let weak5 = check_weak_morphism(&fhe5, &fh5, &map5).unwrap().accepted();
    let mut fixed5 = vec![None; he5.size()];
    for a in 0..=5 {
        fixed5[a] = Some(a);
    }
    let (cand5, homs5) = homs_extending(&he5, &h5, &fixed5);
    let v5 = strong_extension_search(&fhe5, &fh5, &map5, ExtensionSearchConfig::default()).unwrap();
    let v5_text = match &v5 {
        ExtensionOutcome::Extends { map, .. } => {
            let singles: Vec<String> = (0..=7).map(|a| fh5.label(map[fhe5.embed(a)])).collect();
            let full = fh5.index(SubsetMask::full(6));
            let top = map.iter().filter(|&&y| y == full).count();
            format!(
                "Extends, singletons go to {singles:?}, {top} others go to the full set, while {} of {cand5} hyperring candidates are homs",
                homs5.len()
            )
        }
        other => format!("{other:?}"),
    };
    Outcome {
        pass: weak && candidates == 25 && homs.is_empty(),
        detail: format!(
            "V4 unit map weak: {weak} (violating unit sum {witness:?}); {candidates} candidates, {} homs; search: {verdict_text}; C5 unit map weak: {weak5}, search: {v5_text}",
            homs.len()
        ),
    }
}

fn criterion6() -> Outcome {
    let dd = check_doubly_distributive(&krasner()).passed() && check_doubly_distributive(&signs()).passed();
    let window = check_hgamma_dd_window(4).unwrap().passed();
    let (rep, _) = triangle_counterexample();
    let tri = rep.two_tri_three == "[1, 5]" && rep.squared == "[1, 25]" && rep.expanded == "[0, 25]" && !rep.equal;
    Outcome {
        pass: dd && window && tri,
        detail: format!(
            "K,S dd: {dd}; H_Z window 4 dd: {window}; 2v3 = {}, (2v3)^2 = {}, 4v6v6v9 = {}",
            rep.two_tri_three, rep.squared, rep.expanded
        ),
    }
}

fn criterion7() -> Outcome {
    let fs = fbar(&signs(), true).unwrap();
    let labels_ok = fs.labels() == ["0", "1", "-1", "{0,1,-1}"];
    let nulls_ok = fs.null_set() == vec![0, 3];
    let mut fact = true;
    let mut incl = true;
    for f in [krasner(), signs()] {
        fact &= f2(&f1(&f).unwrap()).unwrap() == fbar(&f, true).unwrap();
        let fb = fbar(&f, true).unwrap();
        let ff = f_obj(&f).unwrap();
        let map = fbar_inclusion(&closure_s(&f), &ff);
        let injective = map.iter().collect::<std::collections::HashSet<_>>().len() == map.len();
        let units: Vec<usize> = fb.units().iter().map(|&u| map[u]).collect();
        let unit_bij = units == ff.units();
        incl &= check_strong_morphism(&fb, &ff, &map).accepted() && injective && unit_bij;
    }
    Outcome {
        pass: labels_ok && nulls_ok && fact && incl,
        detail: format!("Fbar(S) carrier {:?} nulls {:?}; F2F1 = Fbar: {fact}; inclusion strong and unit-bijective: {incl}", fs.labels(), fs.null_set()),
    }
}

fn criterion8() -> Outcome {
    let mut iso = true;
    let mut cases = Vec::new();
    for b in 1..=4 {
        let r = check_fbar_hgamma_iso_kgamma(b).unwrap();
        iso &= r.report.passed();
        cases.push(r.addition_cases);
    }
    let kz = check_kgamma_window(4).unwrap();
    let mut zs = true;
    for s in sample_zariski_systems() {
        zs &= check_zariski_pushforward(&s, 4, 2).unwrap().passed();
    }
    Outcome {
        pass: iso && kz.passed() && zs,
        detail: format!("iso on windows 1..4: {iso} ({cases:?} addition cases); K_Z FR0-FR7 on window 4: {kz}; zero sets preserved on 3 systems: {zs}"),
    }
}

fn criterion9() -> Outcome {
    let mut bij = true;
    let mut counts = Vec::new();
    for (n, r) in [(3, 1), (4, 1), (4, 2), (5, 2)] {
        let gp = enumerate_gp_hyper(&krasner(), n, r, true).unwrap();
        let mut supports: Vec<_> = gp
            .iter()
            .map(|p| {
                let mut m = underlying_matroid(p);
                m.sort();
                m
            })
            .collect();
        supports.sort();
        let oracle = basis_exchange_oracle(n, r).unwrap();
        counts.push(format!("({n},{r}):{}/{}", gp.len(), oracle.len()));
        bij &= supports == oracle;
    }
    let mut checked = 0;
    let mut agree = true;
    for f in [krasner(), signs()] {
        for n in 1..=4 {
            for r in 1..=n.min(3) {
                for phi in enumerate_gp_hyper(&f, n, r, true).unwrap() {
                    checked += 1;
                    agree &= cross_check_onetoone(&phi, &f).unwrap().passed();
                }
            }
        }
    }
    Outcome {
        pass: bij && agree,
        detail: format!("Krasner vs oracle {}: {bij}; one-to-one holds on {checked} functions: {agree}", counts.join(" ")),
    }
}

/// Multisets of `len` positions from `units`, nondecreasing.
fn unit_sums(units: &[usize], len: usize, out: &mut Vec<Vec<usize>>, cur: &mut Vec<usize>, start: usize) {
    if cur.len() == len {
        out.push(cur.clone());
        return;
    }
    for i in start..units.len() {
        cur.push(units[i]);
        unit_sums(units, len, out, cur, i);
        cur.pop();
    }
}

fn direct_weak<K: FuzzyRing, L: FuzzyRing>(k: &K, l: &L, f: &[Option<usize>]) -> bool {
    let kel = k.elements();
    let lel = l.elements();
    let pos: HashMap<_, _> = kel.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let units: Vec<usize> = k.units().iter().map(|u| pos[u]).collect();
    for len in 1..=MAX_UNIT_SUM {
        let mut all = Vec::new();
        unit_sums(&units, len, &mut all, &mut Vec::new(), 0);
        for terms in all {
            let s = k.sum(&terms.iter().map(|&i| kel[i]).collect::<Vec<_>>());
            let t = l.sum(&terms.iter().map(|&i| lel[f[i].unwrap()]).collect::<Vec<_>>());
            if k.is_null(s) && !l.is_null(t) {
                return false;
            }
        }
    }
    true
}

fn criterion10() -> Outcome {
    let rings: Vec<(&str, FiniteFuzzyRing)> = vec![
        ("krasnerfuzzy", krasnerfuzzy()),
        ("signfuzzy", signfuzzy()),
        ("F(K)", f_obj(&krasner()).unwrap().to_finite()),
        ("F(S)", f_obj(&signs()).unwrap().to_finite()),
        ("GF(3)", ring_as_fuzzy(&FiniteRing::gf(3).unwrap())),
        ("GF(5)", ring_as_fuzzy(&FiniteRing::gf(5).unwrap())),
        ("F(GF(3))", f_obj(&field(3).unwrap()).unwrap().to_finite()),
        ("F(Z units)", f_obj(&unit_field_integers()).unwrap().to_finite()),
        ("F(GF(5)/squares)", f_obj(&quotient(&FiniteRing::gf(5).unwrap(), SubsetMask::from_elems([1, 4])).unwrap()).unwrap().to_finite()),
    ];
    let (mut accepted, mut rejected, mut disagree) = (0, 0, Vec::new());
    for (kn, k) in &rings {
        for (ln, l) in &rings {
            for f in unit_group_homs(k, l) {
                let closure = check_weak_morphism(k, l, &f).unwrap().accepted();
                let direct = direct_weak(k, l, &f);
                if closure {
                    accepted += 1;
                } else {
                    rejected += 1;
                }
                if closure != direct {
                    disagree.push(format!("{kn}->{ln} {f:?}"));
                }
            }
        }
    }
    Outcome {
        pass: disagree.is_empty(),
        detail: format!("{accepted} accepted, {rejected} rejected, disagreements {disagree:?}"),
    }
}

#[test]
fn acceptance() {
    let results = [
        run(1, "printed fuzzy ring tables", secs(1), criterion1),
        run(2, "F(R) is a fuzzy ring", secs(30), criterion2),
        run(3, "equivalence round trips", secs(5), criterion3),
        run(4, "field-like boundary", secs(1), criterion4),
        run(5, "non-fullness on hyperrings", secs(10), criterion5),
        run(6, "double distributivity and the triangle", secs(5), criterion6),
        run(7, "reduced functor and factorization", secs(5), criterion7),
        run(8, "ordered-group isomorphism and Zariski systems", secs(5), criterion8),
        run(9, "matroid equivalence", secs(120), criterion9),
        run(10, "weak morphism decision soundness", secs(30), criterion10),
    ];
    let unexpected: Vec<u32> = results
        .iter()
        .filter(|&&(id, pass)| !pass && !KNOWN_DEVIATIONS.contains(&id))
        .map(|&(id, _)| id)
        .collect();
    for &(id, pass) in &results {
        if pass && KNOWN_DEVIATIONS.contains(&id) {
            println!("note: criterion {id} is listed as a known deviation but passed");
        }
    }
    assert!(unexpected.is_empty(), "unexpected failures: {unexpected:?}");
}
