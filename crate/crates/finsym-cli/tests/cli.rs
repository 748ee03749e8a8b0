//! End-to-end tests of the `finsym` binary: document pipelines, exit
//! codes, and the headline colimit comparison between plain presheaf
//! pushouts and pushouts of partial groups.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use finsym::constructions::{classifying_map, word_classifier};
use finsym::group::{FiniteGroup, FiniteGroupoid};
use finsym::io::{parse_symset, to_json, DiagramDoc, DiagramShape, GroupoidDoc, OwnedDiagram};
use finsym::symset::{pushout_induced, pushout_sym, vertex_inclusion};
use serde_json::{json, Value};

fn finsym(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_finsym"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("the binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("terminated by exit, not by signal")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is JSON: {e}\nstdout: {}\nstderr: {}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

#[test]
fn word_classifier_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let out = finsym(
        dir.path(),
        &["construct", "word-classifier", "2", "--trunc", "3", "-o", "wc2.json"],
    );
    assert_eq!(code(&out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(stdout_json(&out)["sizes"], json!([1, 7, 25, 79]));

    let out = finsym(dir.path(), &["validate", "wc2.json"]);
    assert_eq!(code(&out), 0);

    let out = finsym(dir.path(), &["spiny", "wc2.json"]);
    assert_eq!(code(&out), 0);
    let summary = stdout_json(&out);
    assert_eq!(summary["pass"], json!(true));
    assert_eq!(summary["sizes"][1], json!(7));

    let out = finsym(dir.path(), &["spiny", "wc2.json", "--spines", "random:11:5"]);
    assert_eq!(code(&out), 0);
}

#[test]
fn construct_without_output_prints_the_document() {
    let dir = tempfile::tempdir().unwrap();
    let out = finsym(dir.path(), &["construct", "bg", "cyclic:2", "--trunc", "2"]);
    assert_eq!(code(&out), 0);
    let x = parse_symset(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!(x.trunc(), 2);
    assert_eq!((0..=2).map(|n| x.level_size(n)).collect::<Vec<_>>(), vec![1, 2, 4]);
}

#[test]
fn group_descriptor_products() {
    let dir = tempfile::tempdir().unwrap();
    let out = finsym(
        dir.path(),
        &["construct", "bg", "cyclic:2*cyclic:2", "--trunc", "2", "-o", "k4.json"],
    );
    assert_eq!(code(&out), 0);
    assert_eq!(stdout_json(&out)["sizes"], json!([1, 4, 16]));

    let out = finsym(
        dir.path(),
        &["construct", "bcom", "symmetric:3", "--trunc", "2", "-o", "bcom.json"],
    );
    assert_eq!(code(&out), 0);
    assert_eq!(stdout_json(&out)["sizes"], json!([1, 6, 18]));

    let out = finsym(
        dir.path(),
        &["construct", "bq", "dihedral:4", "3", "--trunc", "2", "-o", "bq.json"],
    );
    assert_eq!(code(&out), 0);
    assert_eq!(stdout_json(&out)["sizes"], json!([1, 8, 64]));
}

/// Two copies of the free partial group on a two-letter word, glued along
/// the wedge of two one-letter classifiers mapping onto the generators.
/// The presheaf pushout keeps both composite edges apart (nine level-1
/// cells); the partial-group pushout identifies them (seven).
fn write_counterexample(dir: &Path) {
    let f0 = word_classifier(0, 3).unwrap();
    let f1 = word_classifier(1, 3).unwrap();
    let f2 = word_classifier(2, 3).unwrap();
    let v = vertex_inclusion(&f1, 0).unwrap();
    v.check(&f0, &f1).unwrap();
    let (t, legs) = pushout_sym(&f0, &v, &f1, &v, &f1).unwrap();

    let a1 = f2.cell_index(1, "(0,1)").unwrap();
    let a2 = f2.cell_index(1, "(1,2)").unwrap();
    let (_, u) = classifying_map(&f2, 1, a1).unwrap();
    let (_, w) = classifying_map(&f2, 1, a2).unwrap();
    let tu = pushout_induced(&t, &legs, &f1, &f1, &u, &w, &f2).unwrap();

    let diagram = OwnedDiagram {
        shape: DiagramShape::Pushout,
        objects: vec![t, f2.clone(), f2],
        arrows: vec![tu.clone(), tu],
    };
    fs::write(
        dir.join("counterexample.json"),
        to_json(&DiagramDoc::from_diagram(&diagram)).unwrap(),
    )
    .unwrap();
}

#[test]
fn counterexample_pushout_depends_on_the_category() {
    let dir = tempfile::tempdir().unwrap();
    write_counterexample(dir.path());

    let out = finsym(
        dir.path(),
        &["colimit", "counterexample.json", "--category", "sym", "-o", "psym.json"],
    );
    assert_eq!(code(&out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let summary = stdout_json(&out);
    assert_eq!(summary["sizes"][1], json!(9));
    assert_eq!(summary["legs"], json!(2));

    let out = finsym(
        dir.path(),
        &["colimit", "counterexample.json", "--category", "pgrp", "-o", "pgrp.json"],
    );
    assert_eq!(code(&out), 0);
    assert_eq!(stdout_json(&out)["sizes"][1], json!(7));

    // The presheaf pushout is not a partial group: a pair of distinct
    // cells shares an edge tuple.
    let out = finsym(dir.path(), &["spiny", "psym.json"]);
    assert_eq!(code(&out), 1);
    assert_eq!(stdout_json(&out)["pass"], json!(false));

    // Both emitted documents re-validate.
    for file in ["psym.json", "pgrp.json"] {
        let out = finsym(dir.path(), &["validate", file]);
        assert_eq!(code(&out), 0);
    }
}

#[test]
fn partial_colimits_reject_objects_outside_the_category() {
    let dir = tempfile::tempdir().unwrap();

    // Spiny but not reduced: the nerve of a two-object groupoid.
    let gpd = FiniteGroupoid::from_groups(&[FiniteGroup::trivial(), FiniteGroup::trivial()]);
    let two_points = finsym::symset::nerve(&gpd, 2);
    let coproduct = OwnedDiagram {
        shape: DiagramShape::Coproduct,
        objects: vec![two_points],
        arrows: vec![],
    };
    fs::write(dir.path().join("points.json"), to_json(&DiagramDoc::from_diagram(&coproduct)).unwrap())
        .unwrap();

    let out = finsym(dir.path(), &["colimit", "points.json", "--category", "pgrp", "-o", "o.json"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("vertices"));

    let out = finsym(dir.path(), &["colimit", "points.json", "--category", "pgpd", "-o", "o.json"]);
    assert_eq!(code(&out), 0);

    // Not spiny at all: the ladder.
    let ladder = finsym::constructions::ladder(2, 2).unwrap();
    let coproduct =
        OwnedDiagram { shape: DiagramShape::Coproduct, objects: vec![ladder], arrows: vec![] };
    fs::write(dir.path().join("ladder.json"), to_json(&DiagramDoc::from_diagram(&coproduct)).unwrap())
        .unwrap();
    let out = finsym(dir.path(), &["colimit", "ladder.json", "--category", "pgpd", "-o", "o.json"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("spine"));
}

#[test]
fn reflect_reports_and_honors_the_pass_cap() {
    let dir = tempfile::tempdir().unwrap();
    let out = finsym(dir.path(), &["construct", "ladder", "3", "--trunc", "2", "-o", "l.json"]);
    assert_eq!(code(&out), 0);

    // Capped below the fixpoint: outputs are still written, exit is 3.
    let out = finsym(
        dir.path(),
        &[
            "reflect",
            "l.json",
            "--max-iters",
            "1",
            "-o",
            "partial.json",
            "--report",
            "partial-report.json",
        ],
    );
    assert_eq!(code(&out), 3);
    let report: Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("partial-report.json")).unwrap())
            .unwrap();
    assert_eq!(report["stabilized"], json!(false));
    assert_eq!(report["iterations"], json!(1));
    assert!(dir.path().join("partial.json").exists());

    // Uncapped: the ladder with three rungs to merge takes three passes.
    let out = finsym(
        dir.path(),
        &["reflect", "l.json", "-o", "full.json", "--report", "report.json"],
    );
    assert_eq!(code(&out), 0);
    let summary = stdout_json(&out);
    assert_eq!(summary["iterations"], json!(3));
    assert_eq!(summary["stabilized"], json!(true));

    let out = finsym(dir.path(), &["spiny", "full.json"]);
    assert_eq!(code(&out), 0);
}

#[test]
fn hom_enumeration_counts_and_documents() {
    let dir = tempfile::tempdir().unwrap();
    let out = finsym(dir.path(), &["construct", "bg", "cyclic:2", "--trunc", "2", "-o", "z2.json"]);
    assert_eq!(code(&out), 0);

    let out = finsym(dir.path(), &["homs", "z2.json", "z2.json", "--count-only"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout_json(&out)["count"], json!(2));

    let out = finsym(dir.path(), &["homs", "z2.json", "z2.json"]);
    assert_eq!(code(&out), 0);
    let summary = stdout_json(&out);
    let homs = summary["homs"].as_array().unwrap();
    assert_eq!(homs.len(), 2);
    for h in homs {
        assert_eq!(h["format"], json!("sym-map/v1"));
    }

    // Mismatched truncations are a malformed request.
    let out = finsym(
        dir.path(),
        &["construct", "word-classifier", "1", "--trunc", "3", "-o", "wc1.json"],
    );
    assert_eq!(code(&out), 0);
    let out = finsym(dir.path(), &["homs", "z2.json", "wc1.json"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn validate_separates_broken_laws_from_broken_documents() {
    let dir = tempfile::tempdir().unwrap();
    let out = finsym(dir.path(), &["construct", "bg", "cyclic:2", "--trunc", "2", "-o", "z2.json"]);
    assert_eq!(code(&out), 0);

    // In-range tables violating an identity: checked false, exit 1.
    let mut doc: Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("z2.json")).unwrap()).unwrap();
    doc["degeneracy"][0][0][0] = json!(1);
    fs::write(dir.path().join("broken.json"), serde_json::to_string(&doc).unwrap()).unwrap();
    let out = finsym(dir.path(), &["validate", "broken.json"]);
    assert_eq!(code(&out), 1);
    let summary = stdout_json(&out);
    assert_eq!(summary["pass"], json!(false));
    assert!(summary["report"]["witness"].is_array());

    // Unparseable or mistagged input: exit 2.
    fs::write(dir.path().join("garbage.json"), "{not json").unwrap();
    assert_eq!(code(&finsym(dir.path(), &["validate", "garbage.json"])), 2);

    let gpd = FiniteGroupoid::from_groups(&[FiniteGroup::cyclic(2)]);
    fs::write(dir.path().join("gpd.json"), to_json(&GroupoidDoc::from_groupoid(&gpd)).unwrap())
        .unwrap();
    assert_eq!(code(&finsym(dir.path(), &["validate", "gpd.json"])), 2);
}

#[test]
fn reduce_and_groupoid_constructions() {
    let dir = tempfile::tempdir().unwrap();
    let out = finsym(dir.path(), &["construct", "chaotic", "3", "--trunc", "2", "-o", "c.json"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout_json(&out)["sizes"], json!([3, 9, 27]));

    let out = finsym(dir.path(), &["reduce", "c.json", "-o", "r.json"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout_json(&out)["sizes"], json!([1, 7, 25]));
    assert_eq!(code(&finsym(dir.path(), &["validate", "r.json"])), 0);

    let gpd = FiniteGroupoid::from_groups(&[FiniteGroup::cyclic(2), FiniteGroup::cyclic(3)]);
    fs::write(dir.path().join("zz.json"), to_json(&GroupoidDoc::from_groupoid(&gpd)).unwrap())
        .unwrap();
    let out = finsym(dir.path(), &["construct", "groupoid", "zz.json", "--trunc", "2", "-o", "g.json"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout_json(&out)["sizes"][1], json!(4));
}

#[test]
fn malformed_arguments_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let out = finsym(dir.path(), &["construct", "word-classifier", "1", "--trunc", "2", "-o", "wc.json"]);
    assert_eq!(code(&out), 0);

    assert_eq!(code(&finsym(dir.path(), &["spiny", "wc.json", "--spines", "bogus"])), 2);
    assert_eq!(code(&finsym(dir.path(), &["spiny", "wc.json", "--spines", "random:x:3"])), 2);
    assert_eq!(code(&finsym(dir.path(), &["construct", "bg", "cyclic:0", "--trunc", "2"])), 2);
    assert_eq!(code(&finsym(dir.path(), &["construct", "bg", "alternating:4", "--trunc", "2"])), 2);
    assert_eq!(code(&finsym(dir.path(), &["construct", "bq", "cyclic:2", "0", "--trunc", "2"])), 2);
    // The classifier needs the truncation to reach the word length.
    assert_eq!(code(&finsym(dir.path(), &["construct", "word-classifier", "3", "--trunc", "2"])), 2);
    // Unknown enum values are rejected by the argument parser.
    let out = finsym(dir.path(), &["colimit", "wc.json", "--category", "nonsense", "-o", "o.json"]);
    assert_eq!(code(&out), 2);
}
