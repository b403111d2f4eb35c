//! The files under `fixtures/` must equal the canonical dump of the
//! programmatic constructors. Set `HYPERALG_BLESS=1` to rewrite them.

use std::path::PathBuf;

use hyperalg::ddhyper::{f1, fbar};
use hyperalg::functors::{f_obj, unit_field_integers};
use hyperalg::fuzzy::{krasnerfuzzy, signfuzzy};
use hyperalg::hyper::{builtin_hyper, krasner, signs};
use hyperalg::io::{Coefficient, StructureFile};
use hyperalg::matroid::GPFunction;
use hyperalg::ordgrp::sample_zariski_systems;

fn fixtures_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn expected() -> Vec<(String, String)> {
    let mut out = Vec::new();
    let mut push = |file: &str, f: StructureFile| out.push((file.to_string(), f.to_canonical()));
    for name in ["krasner", "signs", "field2", "field3", "field4", "field5", "kh-klein", "khef-klein", "kh-c5", "khef-c5"] {
        push(&format!("{name}.json"), StructureFile::from_hyperring(&builtin_hyper(name).unwrap(), Some(name)));
    }
    push("unitfield-z.json", StructureFile::from_hyperring(&unit_field_integers(), Some("unitfield-z")));
    push("krasnerfuzzy.json", StructureFile::from_fuzzyring(&krasnerfuzzy(), Some("krasnerfuzzy")));
    push("signfuzzy.json", StructureFile::from_fuzzyring(&signfuzzy(), Some("signfuzzy")));
    push("FofKrasner.json", StructureFile::from_fuzzyring(&f_obj(&krasner()).unwrap().to_finite(), Some("F(K)")));
    push("FofSigns.json", StructureFile::from_fuzzyring(&f_obj(&signs()).unwrap().to_finite(), Some("F(S)")));
    push("FbarSigns.json", StructureFile::from_fuzzyring(&fbar(&signs(), true).unwrap(), Some("Fbar(S)")));
    push("F1signs.json", StructureFile::from_partial_demifield(&f1(&signs()).unwrap(), Some("F1(S)")));
    let phi = GPFunction { ground_size: 4, rank: 2, values: vec![1, 1, 1, 2, 2, 1] };
    push("gp-signs.json", StructureFile::from_gp(&phi, &Coefficient::Hyperring(signs()), Some("uniform oriented matroid")));
    for (i, s) in sample_zariski_systems().iter().enumerate() {
        push(&format!("zariski-kz-{i}.json"), StructureFile::from_zariski_kz(s, Some(&format!("system {i}"))));
    }
    out
}

#[test]
fn fixtures_match_builtins() {
    let dir = fixtures_dir();
    let bless = std::env::var_os("HYPERALG_BLESS").is_some();
    for (file, text) in expected() {
        let path = dir.join(&file);
        if bless {
            std::fs::write(&path, &text).unwrap();
            continue;
        }
        let on_disk = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(on_disk, text, "{file} differs from its constructor");
    }
}
