use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use hyperalg::ddhyper::{check_addsame, check_partial_demifield, f1, fbar, triangle_counterexample};
use hyperalg::functors::{f_obj, g_obj, strong_extension_search, unit_field, unit_field_integers, ExtensionOutcome, ExtensionSearchConfig};
use hyperalg::fuzzy::{
    builtin_fuzzy, check_fuzzy_axioms, check_strong_morphism, check_weak_morphism, enumerate_weak_morphisms,
    is_field_like, weak_iso,
};
use hyperalg::hyper::{
    builtin_hyper, check_doubly_distributive, check_hom, check_hyperfield, check_hyperring, enumerate_homs, iso_hyper,
    kh, khef, quotient,
};
use hyperalg::io::{read_structure, Coefficient, Kind, Structure, StructureFile};
use hyperalg::matroid::{
    basis_exchange_oracle, cross_check_onetoone, cross_check_onetoone_g, enumerate_gp, enumerate_gp_hyper,
    underlying_matroid, verify_gp_fuzzy, verify_gp_hyper, FuzzyCoefficients, GPFunction,
};
use hyperalg::ordgrp::{
    check_fbar_hgamma_iso_kgamma, check_hgamma_dd_window, check_hgamma_window, check_kgamma_inclusion,
    check_kgamma_window, check_krasner_demifield_map, check_zariski, kgamma_mul,
};
use hyperalg::{AbelianGroup, FiniteFuzzyRing, FiniteHyperring, FiniteRing, FuzzyRing, SubsetMask};

use crate::report::{CliError, CliResult, RunReport};

const BUILTIN_PREFIX: &str = "builtin:";
const MAX_LISTED: usize = 64;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// A structure file path, or `builtin:<name>`.
pub fn load(input: &str) -> CliResult<(StructureFile, Structure)> {
    if let Some(name) = input.strip_prefix(BUILTIN_PREFIX) {
        if name == "unitfield-z" {
            let h = unit_field_integers();
            return Ok((StructureFile::from_hyperring(&h, Some(name)), Structure::Hyperring(h)));
        }
        if let Ok(h) = builtin_hyper(name) {
            return Ok((StructureFile::from_hyperring(&h, Some(name)), Structure::Hyperring(h)));
        }
        let k = builtin_fuzzy(name).map_err(|_| usage(format!("unknown builtin {name:?}")))?;
        return Ok((StructureFile::from_fuzzyring(&k, Some(name)), Structure::Fuzzyring(k)));
    }
    Ok(read_structure(Path::new(input))?)
}

fn load_hyper(input: &str) -> CliResult<FiniteHyperring> {
    match load(input)?.1 {
        Structure::Hyperring(h) => Ok(h),
        _ => Err(usage(format!("{input} is not a hyperring"))),
    }
}

fn load_fuzzy(input: &str) -> CliResult<FiniteFuzzyRing> {
    match load(input)?.1 {
        Structure::Fuzzyring(k) => Ok(k),
        _ => Err(usage(format!("{input} is not a fuzzy ring"))),
    }
}

fn labeller(labels: &[String]) -> impl Fn(usize) -> String + '_ {
    move |i| labels.get(i).cloned().unwrap_or_else(|| i.to_string())
}

/// Comma-separated indices; `_` marks an undefined entry.
pub fn parse_map(s: &str) -> CliResult<Vec<Option<usize>>> {
    s.split(',')
        .map(|t| match t.trim() {
            "_" => Ok(None),
            t => t.parse().map(Some).map_err(|_| usage(format!("bad map entry {t:?}"))),
        })
        .collect()
}

fn total(map: &[Option<usize>]) -> CliResult<Vec<usize>> {
    map.iter().copied().collect::<Option<Vec<_>>>().ok_or_else(|| usage("this check needs a total map"))
}

fn show_map(map: &[Option<usize>], src: &[String], dst: &[String]) -> String {
    map.iter()
        .enumerate()
        .filter_map(|(i, v)| v.map(|j| format!("{} -> {}", labeller(src)(i), labeller(dst)(j))))
        .collect::<Vec<_>>()
        .join(", ")
}

pub fn cmd_check(rep: &mut RunReport, path: &str, kind: Option<Kind>, degree: usize) -> CliResult<()> {
    let (file, s) = load(path)?;
    if let Some(k) = kind {
        if k != file.kind {
            return Err(usage(format!("{path} holds a {}, not a {}", file.kind.as_str(), k.as_str())));
        }
    }
    match s {
        Structure::Hyperring(h) => {
            rep.line(format!("hyperring on {} elements{}", h.size(), if h.is_partial() { " (partial)" } else { "" }));
            let r = check_hyperring(&h);
            rep.axioms("hyperring axioms", &r, labeller(h.labels()));
            if r.passed() {
                let field = check_hyperfield(&h).passed();
                rep.line(format!("hyperfield: {}", yes(field)));
                if field {
                    rep.line(format!("doubly distributive: {}", yes(check_doubly_distributive(&h).passed())));
                }
            }
        }
        Structure::Fuzzyring(k) => {
            rep.line(format!("fuzzy ring on {} elements, K0 = {:?}", k.size(), k.null_set()));
            let r = check_fuzzy_axioms(&k);
            rep.axioms("fuzzy ring axioms FR0-FR7", &r, labeller(k.labels()));
            if r.passed() {
                rep.line(format!("field-like: {}", yes(is_field_like(&k).passed())));
            }
        }
        Structure::Gp { phi, coefficient } => {
            rep.line(format!("rank {} function on {} points", phi.rank, phi.ground_size));
            let r = match &coefficient {
                Coefficient::Hyperring(h) => verify_gp_hyper(&phi, h)?,
                Coefficient::Fuzzyring(k) => verify_gp_fuzzy(&phi, k)?,
                Coefficient::KZ => return Err(usage("Grassmann-Pluecker checks need finite coefficients")),
            };
            rep.axioms("Grassmann-Pluecker function", &r, |i| i.to_string());
        }
        Structure::ZariskiFinite { system, coefficient: k } => {
            let r = check_zariski(&system, |a, b| k.mul_idx(a, b), |a| k.is_null(a), degree);
            rep.axioms(&format!("Zariski system, products of degree <= {degree}"), &r, |i| i.to_string());
        }
        Structure::ZariskiKZ(system) => {
            let r = check_zariski(&system, kgamma_mul, |a| a.is_null(), degree);
            rep.axioms(&format!("Zariski system over K_Z, products of degree <= {degree}"), &r, |i| i.to_string());
        }
        Structure::PartialDemifield(p) => {
            let mut r = check_partial_demifield(&p);
            r.merge(check_addsame(&p, 4));
            rep.axioms("partial demifield", &r, labeller(&p.labels));
        }
    }
    Ok(())
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum ConstructOp {
    #[value(name = "F")]
    F,
    #[value(name = "Fbar")]
    Fbar,
    #[value(name = "G")]
    G,
    #[value(name = "quotient")]
    Quotient,
    #[value(name = "KH")]
    Kh,
    #[value(name = "KHef")]
    Khef,
    #[value(name = "unitfield")]
    Unitfield,
    #[value(name = "F1")]
    F1,
}

pub struct ConstructArgs {
    pub op: ConstructOp,
    pub input: Option<String>,
    pub group: Option<String>,
    pub ring: Option<String>,
    pub subgroup: Option<String>,
    pub out: Option<PathBuf>,
    pub name: Option<String>,
    pub force: bool,
}

fn parse_group(g: &str) -> CliResult<AbelianGroup> {
    if g == "klein" {
        return Ok(AbelianGroup::klein_four());
    }
    match g.strip_prefix('c').and_then(|m| m.parse().ok()) {
        Some(m) => Ok(AbelianGroup::cyclic(m)?),
        None => Err(usage(format!("unknown group {g:?}; use klein or c<m>"))),
    }
}

fn parse_ring(r: &str) -> CliResult<FiniteRing> {
    let (kind, n) = r.split_once(':').ok_or_else(|| usage("ring must be gf:<q> or zmod:<n>"))?;
    let n: usize = n.parse().map_err(|_| usage(format!("bad ring size {n:?}")))?;
    Ok(match kind {
        "gf" => FiniteRing::gf(n)?,
        "zmod" => FiniteRing::zmod(n)?,
        _ => return Err(usage(format!("unknown ring family {kind:?}"))),
    })
}

/// Returns the text written, for callers that print to stdout.
pub fn cmd_construct(rep: &mut RunReport, a: &ConstructArgs) -> CliResult<Option<String>> {
    let input = || a.input.as_deref().ok_or_else(|| usage("this construction needs --in"));
    let name = a.name.as_deref();
    let (file, verdict) = match a.op {
        ConstructOp::F => {
            let h = load_hyper(input()?)?;
            let k = f_obj(&h)?.to_finite();
            let r = check_fuzzy_axioms(&k);
            rep.axioms("fuzzy ring axioms FR0-FR7", &r, labeller(k.labels()));
            (StructureFile::from_fuzzyring(&k, name), r.passed())
        }
        ConstructOp::Fbar => {
            let h = load_hyper(input()?)?;
            let k = fbar(&h, true)?;
            let r = check_fuzzy_axioms(&k);
            rep.axioms("fuzzy ring axioms FR0-FR7", &r, labeller(k.labels()));
            (StructureFile::from_fuzzyring(&k, name), r.passed())
        }
        ConstructOp::G => {
            let k = load_fuzzy(input()?)?;
            let h = g_obj(&k)?.hyper;
            (hyper_out(rep, &h, name), check_hyperring(&h).passed())
        }
        ConstructOp::Quotient => {
            let ring = parse_ring(a.ring.as_deref().ok_or_else(|| usage("quotient needs --ring"))?)?;
            let sub = match &a.subgroup {
                Some(s) => SubsetMask::from_elems(total(&parse_map(s)?)?),
                None => ring.units(),
            };
            let h = quotient(&ring, sub)?;
            (hyper_out(rep, &h, name), check_hyperring(&h).passed())
        }
        ConstructOp::Kh | ConstructOp::Khef => {
            let g = parse_group(a.group.as_deref().ok_or_else(|| usage("KH needs --group"))?)?;
            let h = if a.op == ConstructOp::Kh { kh(&g)? } else { khef(&g)? };
            (hyper_out(rep, &h, name), check_hyperring(&h).passed())
        }
        ConstructOp::Unitfield => {
            let h = unit_field(&load_hyper(input()?)?);
            (hyper_out(rep, &h, name), check_hyperring(&h).passed())
        }
        ConstructOp::F1 => {
            let p = f1(&load_hyper(input()?)?)?;
            let r = check_partial_demifield(&p);
            rep.axioms("partial demifield", &r, labeller(&p.labels));
            (StructureFile::from_partial_demifield(&p, name), r.passed())
        }
    };
    rep.line(format!("constructed a {} with {} labelled elements", file.kind.as_str(), file.labels.len()));
    if !verdict && !a.force {
        rep.line("not written: the result fails its axioms (use --force to write anyway)");
        return Ok(None);
    }
    let text = file.to_canonical();
    match &a.out {
        Some(p) => {
            std::fs::write(p, &text).map_err(|e| usage(format!("cannot write {}: {e}", p.display())))?;
            rep.line(format!("wrote {}", p.display()));
            Ok(None)
        }
        None => Ok(Some(text)),
    }
}

fn hyper_out(rep: &mut RunReport, h: &FiniteHyperring, name: Option<&str>) -> StructureFile {
    rep.axioms("hyperring axioms", &check_hyperring(h), labeller(h.labels()));
    StructureFile::from_hyperring(h, name)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum MorphismArg {
    Hyperring,
    Weak,
    Strong,
    Extend,
}

pub struct MorphismArgs {
    pub src: String,
    pub dst: String,
    pub kind: MorphismArg,
    pub map: Option<String>,
    pub strict: bool,
    pub budget: u64,
}

pub fn cmd_morphisms(rep: &mut RunReport, a: &MorphismArgs) -> CliResult<()> {
    let map = a.map.as_deref().map(parse_map).transpose()?;
    match a.kind {
        MorphismArg::Hyperring => {
            let (r, s) = (load_hyper(&a.src)?, load_hyper(&a.dst)?);
            match map {
                Some(m) => {
                    let m = total(&m)?;
                    if m.len() != r.size() || m.iter().any(|&x| x >= s.size()) {
                        return Err(usage("map does not fit the carriers"));
                    }
                    let check = check_hom(&m, &r, &s, a.strict);
                    rep.axioms(&format!("{}homomorphism", if a.strict { "strict " } else { "" }), &check, labeller(r.labels()));
                }
                None => {
                    let homs = enumerate_homs(&r, &s, a.strict)?;
                    rep.line(format!("{} homomorphisms", homs.len()));
                    list(rep, homs.iter().map(|h| show_map(&h.map, r.labels(), s.labels())));
                }
            }
        }
        MorphismArg::Weak => {
            let (k, l) = (load_fuzzy(&a.src)?, load_fuzzy(&a.dst)?);
            match map {
                Some(m) => {
                    if m.len() != k.size() {
                        return Err(usage("map does not fit the source carrier"));
                    }
                    let cert = check_weak_morphism(&k, &l, &m)?;
                    let w = cert.witness_terms.iter().map(|&t| k.label(t)).collect::<Vec<_>>();
                    let witnesses = if cert.accepted() { vec![] } else { vec![format!("null sum of units [{}] is sent off K0", w.join(", "))] };
                    rep.verdict("weak morphism", cert.accepted(), witnesses);
                }
                None => {
                    let all = enumerate_weak_morphisms(&k, &l);
                    rep.line(format!("{} weak morphisms", all.len()));
                    list(rep, all.iter().map(|t| show_map(&t.map, k.labels(), l.labels())));
                }
            }
        }
        MorphismArg::Strong => {
            let (k, l) = (load_fuzzy(&a.src)?, load_fuzzy(&a.dst)?);
            let m = total(&map.ok_or_else(|| usage("strong morphisms are checked, not enumerated; pass --map"))?)?;
            if m.len() != k.size() || m.iter().any(|&x| x >= l.size()) {
                return Err(usage("map does not fit the carriers"));
            }
            let cert = check_strong_morphism(&k, &l, &m);
            let w = cert.witness_terms.iter().map(|&t| k.label(t)).collect::<Vec<_>>();
            let witnesses = if cert.accepted() { vec![] } else { vec![format!("terms [{}]", w.join(", "))] };
            rep.verdict("strong morphism", cert.accepted(), witnesses);
        }
        MorphismArg::Extend => {
            let (k, l) = (load_fuzzy(&a.src)?, load_fuzzy(&a.dst)?);
            let m = map.ok_or_else(|| usage("extension search needs the weak map as --map"))?;
            if m.len() != k.size() {
                return Err(usage("map does not fit the source carrier"));
            }
            let cfg = ExtensionSearchConfig { budget: a.budget, ..ExtensionSearchConfig::default() };
            match strong_extension_search(&k, &l, &m, cfg)? {
                ExtensionOutcome::Extends { map, nodes } => {
                    rep.line(format!("extends after {nodes} nodes"));
                    let m: Vec<Option<usize>> = map.into_iter().map(Some).collect();
                    rep.line(show_map(&m, k.labels(), l.labels()));
                    rep.verdict("extends to a strong morphism", true, vec![]);
                }
                ExtensionOutcome::Refuted { certificate, nodes } => {
                    let why = match certificate {
                        Some(c) => format!("the unit map is not weak: [{}]", c.witness_terms.iter().map(|&t| k.label(t)).collect::<Vec<_>>().join(", ")),
                        None => format!("no extension exists ({nodes} nodes searched)"),
                    };
                    rep.verdict("extends to a strong morphism", false, vec![why]);
                }
                ExtensionOutcome::Unknown { nodes } => {
                    rep.verdict("extends to a strong morphism", false, vec![format!("unknown: budget exhausted after {nodes} nodes")]);
                }
            }
        }
    }
    Ok(())
}

fn list(rep: &mut RunReport, items: impl Iterator<Item = String>) {
    for (i, s) in items.enumerate() {
        if i == MAX_LISTED {
            rep.line("  ...");
            break;
        }
        rep.line(format!("  {s}"));
    }
}

pub struct MatroidArgs {
    pub coeff: String,
    pub n: usize,
    pub r: usize,
    pub oracle: bool,
    pub cross_check: bool,
    pub all: bool,
    pub list: bool,
}

pub fn cmd_matroids(rep: &mut RunReport, a: &MatroidArgs) -> CliResult<()> {
    let (file, s) = load(&a.coeff)?;
    let normalize = !a.all;
    let (found, labels): (Vec<GPFunction>, Vec<String>) = match &s {
        Structure::Hyperring(h) => (enumerate_gp_hyper(h, a.n, a.r, normalize)?, h.labels().to_vec()),
        Structure::Fuzzyring(k) => (enumerate_gp(&FuzzyCoefficients::new(k), 1, a.n, a.r, normalize)?, k.labels().to_vec()),
        _ => return Err(usage(format!("{} coefficients are not supported", file.kind.as_str()))),
    };
    let scope = if normalize { "normalized " } else { "" };
    rep.line(format!("{} {scope}Grassmann-Pluecker functions of rank {} on {} points", found.len(), a.r, a.n));
    if a.list {
        list(rep, found.iter().map(|p| p.values.iter().map(|&v| labels[v].clone()).collect::<Vec<_>>().join(" ")));
    }
    if a.oracle {
        let oracle: BTreeSet<Vec<SubsetMask>> = basis_exchange_oracle(a.n, a.r)?.into_iter().map(sorted).collect();
        let supports: BTreeSet<Vec<SubsetMask>> = found.iter().map(|p| sorted(underlying_matroid(p))).collect();
        let strays: Vec<String> = supports.difference(&oracle).map(|f| format!("{f:?}")).collect();
        rep.line(format!("oracle: {} matroids; {} distinct supports", oracle.len(), supports.len()));
        if supports == oracle && (!normalize || found.len() == oracle.len()) {
            rep.line("counts match");
        }
        rep.verdict("every support satisfies basis exchange", strays.is_empty(), strays);
    }
    if a.cross_check {
        let mut bad = Vec::new();
        for phi in &found {
            let r = match &s {
                Structure::Hyperring(h) => cross_check_onetoone(phi, h)?,
                Structure::Fuzzyring(k) => cross_check_onetoone_g(phi, k)?,
                _ => unreachable!(),
            };
            if !r.passed() {
                bad.push(format!("{:?}", phi.values));
            }
        }
        rep.verdict("validity agrees across the functors", bad.is_empty(), bad);
    }
    Ok(())
}

fn sorted(mut v: Vec<SubsetMask>) -> Vec<SubsetMask> {
    v.sort();
    v
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum IsoArg {
    Hyperring,
    FuzzyWeak,
}

pub fn cmd_iso(rep: &mut RunReport, a: &str, b: &str, kind: IsoArg) -> CliResult<()> {
    match kind {
        IsoArg::Hyperring => {
            let (r, s) = (load_hyper(a)?, load_hyper(b)?);
            let iso = iso_hyper(&r, &s);
            if let Some(m) = &iso {
                let m: Vec<Option<usize>> = m.iter().copied().map(Some).collect();
                rep.line(format!("witness: {}", show_map(&m, r.labels(), s.labels())));
            }
            rep.verdict("isomorphic hyperrings", iso.is_some(), vec![]);
        }
        IsoArg::FuzzyWeak => {
            let (k, l) = (load_fuzzy(a)?, load_fuzzy(b)?);
            let iso = weak_iso(&k, &l);
            if let Some(pairs) = &iso {
                let mut m = vec![None; k.size()];
                for &(i, j) in pairs {
                    m[i] = Some(j);
                }
                rep.line(format!("witness: {}", show_map(&m, k.labels(), l.labels())));
            }
            rep.verdict("weakly isomorphic fuzzy rings", iso.is_some(), vec![]);
        }
    }
    Ok(())
}

pub fn cmd_triangle(rep: &mut RunReport) -> CliResult<()> {
    let (t, _) = triangle_counterexample();
    rep.line(format!("2 ▽ 3 = {}", t.two_tri_three));
    rep.line(format!("(2 ▽ 3)^2 = {}", t.squared));
    rep.line(format!("4 ▽ 6 ▽ 6 ▽ 9 = {}", t.expanded));
    rep.verdict("the triangle hyperfield is not doubly distributive", !t.equal, vec![]);
    Ok(())
}

pub fn cmd_ordgrp(rep: &mut RunReport, b: i64) -> CliResult<()> {
    let iso = check_fbar_hgamma_iso_kgamma(b)?;
    rep.line(format!(
        "window [-{b}, {b}]: {} hypersums, {} iterated sums, {} addition and {} multiplication cases",
        iso.hypersum_cases, iso.closure_size, iso.addition_cases, iso.multiplication_cases
    ));
    let num = |i: usize| i.to_string();
    rep.axioms("Fbar(H_Z) agrees with K_Z", &iso.report, num);
    rep.axioms("H_Z hyperfield axioms", &check_hgamma_window(b)?, num);
    rep.axioms("H_Z double distributivity", &check_hgamma_dd_window(b)?, num);
    rep.axioms("K_Z fuzzy ring axioms", &check_kgamma_window(b)?, num);
    rep.axioms("K_Z inside F(H_Z)", &check_kgamma_inclusion(b)?, num);
    rep.axioms("Krasner partial demifield map", &check_krasner_demifield_map(), num);
    Ok(())
}
