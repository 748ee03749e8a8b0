//! Acceptance suite: ten end-to-end checks of the headline behaviors.
//! Each test prints one `criterion N (name): PASS/FAIL — detail` line
//! (run with `--nocapture` to see the lines for passing tests; a failing
//! test shows its line in the captured output).

use std::collections::HashSet;
use std::panic::AssertUnwindSafe;
use std::time::{Duration, Instant};

use finsym::constructions::{
    b_com, b_q, classifying_map, groupoid_to_partial_group, ladder, word_classifier,
};
use finsym::group::{FiniteGroup, FiniteGroupoid, GroupHom};
use finsym::homsearch::enumerate_homs;
use finsym::reflect::{colimit_partial, reflect, reflect_with, PartialCategory};
use finsym::simplexcat::{compose, factor_through_folds, fold_power};
use finsym::spiny::{is_spiny, l_of, matrix_form, SpineChoice};
use finsym::symset::{
    coequalizer_sym, colimit_sym, empty, nerve, nerve_group, nerve_group_map, pushout_induced,
    pushout_sym, reduce, representable, terminal, vertex_inclusion, DiagramData,
};
use finsym::{Exec, SymMap, TruncSymSet, UMap};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn report(n: usize, name: &str, check: impl FnOnce() -> String) {
    match std::panic::catch_unwind(AssertUnwindSafe(check)) {
        Ok(detail) => println!("criterion {n} ({name}): PASS — {detail}"),
        Err(payload) => {
            let detail = payload
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked without a message".to_string());
            println!("criterion {n} ({name}): FAIL — {detail}");
            std::panic::resume_unwind(payload);
        }
    }
}

fn sizes(x: &TruncSymSet) -> Vec<usize> {
    (0..=x.trunc()).map(|n| x.level_size(n)).collect()
}

/// The apex and arrow of the pushout whose outcome separates the presheaf
/// and partial-group categories: two one-generator classifiers glued at
/// the vertex, mapping onto the two generator edges of the two-generator
/// classifier. Both pushout feet are that classifier, along one arrow.
fn counterexample_parts(trunc: usize) -> (TruncSymSet, TruncSymSet, SymMap) {
    let f0 = word_classifier(0, trunc).unwrap();
    let f1 = word_classifier(1, trunc).unwrap();
    let f2 = word_classifier(2, trunc).unwrap();
    let v = vertex_inclusion(&f1, 0).unwrap();
    v.check(&f0, &f1).unwrap();
    let (t, legs) = pushout_sym(&f0, &v, &f1, &v, &f1).unwrap();
    let a1 = f2.cell_index(1, "(0,1)").unwrap();
    let a2 = f2.cell_index(1, "(1,2)").unwrap();
    let (_, u) = classifying_map(&f2, 1, a1).unwrap();
    let (_, w) = classifying_map(&f2, 1, a2).unwrap();
    let tu = pushout_induced(&t, &legs, &f1, &f1, &u, &w, &f2).unwrap();
    (t, f2, tu)
}

fn counterexample_sym_pushout(trunc: usize) -> TruncSymSet {
    let (t, f2, tu) = counterexample_parts(trunc);
    pushout_sym(&t, &tu, &f2, &tu, &f2).unwrap().0
}

fn inversion_coequalizer() -> TruncSymSet {
    let z3 = FiniteGroup::cyclic(3);
    let x = nerve_group(&z3, 2);
    let id = nerve_group_map(&GroupHom::new(&z3, &z3, vec![0, 1, 2]).unwrap(), &z3, &z3, 2);
    let inv = nerve_group_map(&GroupHom::new(&z3, &z3, vec![0, 2, 1]).unwrap(), &z3, &z3, 2);
    coequalizer_sym(&x, &x, &id, &inv).unwrap().0
}

fn spiny_corpus() -> Vec<(&'static str, TruncSymSet)> {
    let z2 = FiniteGroup::cyclic(2);
    let z3 = FiniteGroup::cyclic(3);
    let z4 = FiniteGroup::cyclic(4);
    let s3 = FiniteGroup::symmetric(3);
    let d8 = FiniteGroup::dihedral(4);
    let two = FiniteGroupoid::from_groups(&[z2.clone(), z3.clone()]);
    vec![
        ("empty object", empty(2)),
        ("terminal tower", terminal(4)),
        ("interval representable", representable(1, 3)),
        ("Z2 nerve", nerve_group(&z2, 2)),
        ("Z4 nerve", nerve_group(&z4, 3)),
        ("S3 nerve", nerve_group(&s3, 4)),
        ("chaotic groupoid nerve", nerve(&FiniteGroupoid::chaotic(3), 3)),
        ("two-group groupoid nerve", nerve(&two, 2)),
        ("one-generator classifier", word_classifier(1, 4).unwrap()),
        ("two-generator classifier", word_classifier(2, 3).unwrap()),
        ("commuting chains of S3", b_com(&s3, 4).0),
        ("low-nilpotency chains of D8", b_q(&d8, 3, 2).0),
        ("reduced two-group groupoid", groupoid_to_partial_group(&two, 2).0),
        ("reduced Z4 nerve", reduce(&nerve_group(&z4, 3)).0),
        ("reflected two-rung ladder", reflect(&ladder(2, 2).unwrap()).unwrap().0),
    ]
}

fn non_spiny_corpus() -> Vec<(&'static str, TruncSymSet)> {
    vec![
        ("one-rung ladder", ladder(1, 2).unwrap()),
        ("two-rung ladder", ladder(2, 2).unwrap()),
        ("three-rung ladder", ladder(3, 2).unwrap()),
        ("inversion coequalizer", inversion_coequalizer()),
        ("counterexample presheaf pushout", counterexample_sym_pushout(3)),
    ]
}

#[test]
fn criterion_01_word_classifier_cardinalities() {
    report(1, "word-classifier cardinalities", || {
        let start = Instant::now();
        for m in 0..=4usize {
            let x = word_classifier(m, 4).unwrap();
            for n in 0..=4usize {
                let expected = (m + 1).pow(n as u32 + 1) - m;
                assert_eq!(
                    x.level_size(n),
                    expected,
                    "the {m}-letter classifier at level {n} should have (m+1)^(n+1)-m cells"
                );
            }
        }
        let elapsed = start.elapsed();
        assert!(elapsed < Duration::from_secs(5), "took {elapsed:?}, budget is 5s");
        format!("all 25 level sizes match (m+1)^(n+1)-m for m,n <= 4 in {elapsed:?}")
    });
}

#[test]
fn criterion_02_pushout_differs_by_category() {
    report(2, "pushout differs by category", || {
        let (t, f2, tu) = counterexample_parts(3);
        let data = DiagramData::Pushout {
            apex: &t,
            left: &f2,
            right: &f2,
            to_left: &tu,
            to_right: &tu,
        };
        let (psym, _) = colimit_sym(&data).unwrap();
        assert_eq!(psym.level_size(1), 9, "the presheaf pushout keeps both composites apart");
        let (pgrp, _, _) = colimit_partial(&data, PartialCategory::Pgrp).unwrap();
        assert_eq!(pgrp.level_size(1), 7, "the partial-group pushout identifies the composites");
        "gluing two one-generator classifiers along the vertex and mapping onto the \
         two-generator classifier: presheaf pushout has 9 level-1 cells, \
         partial-group pushout has 7"
            .to_string()
    });
}

#[test]
fn criterion_03_pushout_along_a_group_stays_spiny() {
    report(3, "pushout along a group stays spiny", || {
        let z2 = FiniteGroup::cyclic(2);
        let z4 = FiniteGroup::cyclic(4);
        let k4 = FiniteGroup::direct_product(&z2, &z2);
        assert_eq!(k4.name(2), "1,0");
        let to_z4 = GroupHom::new(&z2, &z4, vec![0, 2]).unwrap();
        let to_k4 = GroupHom::new(&z2, &k4, vec![0, 2]).unwrap();
        let bz2 = nerve_group(&z2, 3);
        let bz4 = nerve_group(&z4, 3);
        let bk4 = nerve_group(&k4, 3);
        let f = nerve_group_map(&to_z4, &z2, &z4, 3);
        let g = nerve_group_map(&to_k4, &z2, &k4, 3);
        let (p, _) = pushout_sym(&bz2, &f, &bz4, &g, &bk4).unwrap();
        let (q, proj, rep) = reflect(&p).unwrap();
        assert_eq!(rep.iterations, 0, "no merge passes should be needed");
        assert!(rep.merges.is_empty(), "the merge log should be empty");
        assert!(proj.is_levelwise_bijection(&p, &q), "the projection should be bijective");
        format!(
            "nerves of Z4 and Z2xZ2 glued along Z2 (1 -> 2, 1 -> (1,0)) at truncation 3: \
             reflection projection is a levelwise bijection with zero merges, sizes {:?}",
            sizes(&p)
        )
    });
}

#[test]
fn criterion_04_fold_formulas() {
    report(4, "fold formulas", || {
        for n in 0..=4usize {
            for w in 1..=4u32 {
                let mut brute = UMap::fold(n);
                for k in 1..w {
                    brute = compose(&brute, &UMap::fold((1usize << k) * n)).unwrap();
                }
                assert_eq!(
                    fold_power(n, w),
                    brute,
                    "the closed fold formula should match the iterated composite at n={n}, w={w}"
                );
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(2026);
        for trial in 0..500 {
            let m = rng.random_range(0..=6);
            let n = rng.random_range(0..=6);
            let phi = UMap::random(&mut rng, m, n);
            let fac = factor_through_folds(&phi);
            assert!(
                fac.alpha.is_order_preserving(),
                "trial {trial}: the factor alpha should be order-preserving"
            );
            let back = compose(&fold_power(fac.base, fac.power), &fac.alpha).unwrap();
            assert_eq!(back, phi, "trial {trial}: the factorization should recompose to phi");
        }
        "20 closed-form folds match brute composites; 500 random maps with levels <= 6 \
         factor through folds and recompose exactly"
            .to_string()
    });
}

#[test]
fn criterion_05_spine_system_independence() {
    report(5, "spine-system independence", || {
        let corpus = spiny_corpus();
        for (name, x) in &corpus {
            assert!(
                is_spiny(x, &SpineChoice::Standard).unwrap().pass,
                "{name} should be spiny along the standard system"
            );
            let r = is_spiny(x, &SpineChoice::Random { seed: 0x5EED, count: 50 }).unwrap();
            assert!(
                r.pass,
                "{name} should stay spiny along 50 random spine systems, \
                 found collision {:?} at level {:?}",
                r.witness, r.level
            );
        }
        let psym = counterexample_sym_pushout(3);
        let r = is_spiny(&psym, &SpineChoice::Standard).unwrap();
        assert!(!r.pass, "the counterexample presheaf pushout should fail the spine check");
        format!(
            "{} spiny objects pass 50 random spanning-tree systems each; \
             the counterexample presheaf pushout fails at level {} with witness {:?}",
            corpus.len(),
            r.level.unwrap(),
            r.witness.unwrap()
        )
    });
}

#[test]
#[allow(clippy::needless_range_loop)] // the index arithmetic (j,i), (n-i,n-j) is the law
fn criterion_06_matrix_form_laws() {
    report(6, "matrix-form laws", || {
        let s3 = FiniteGroup::symmetric(3);
        let objects =
            [("S3 nerve", nerve_group(&s3, 4)), ("commuting chains of S3", b_com(&s3, 4).0)];
        let mut cells = 0usize;
        for (name, x) in &objects {
            for n in 1..=x.trunc() {
                for c in 0..x.level_size(n) {
                    cells += 1;
                    let f = matrix_form(x, n, c).unwrap().entries;
                    for i in 0..=n {
                        let vi = x.act(&UMap::new(n, vec![i]).unwrap(), c).unwrap();
                        assert_eq!(
                            f[i][i],
                            x.deg(0, 0, vi),
                            "{name}: diagonal {i} at level {n} should be a degenerate edge"
                        );
                        for j in 0..=n {
                            assert_eq!(
                                f[j][i],
                                x.swap(1, 1, f[i][j]),
                                "{name}: transposing the matrix should apply the anti-involution"
                            );
                        }
                    }
                    let flipped = x.act(&UMap::flip(n), c).unwrap();
                    let ft = matrix_form(x, n, flipped).unwrap().entries;
                    for i in 0..=n {
                        for j in 0..=n {
                            assert_eq!(
                                ft[i][j],
                                f[n - i][n - j],
                                "{name}: the flip should reverse both matrix indices"
                            );
                        }
                    }
                    if 2 * n <= x.trunc() {
                        let l = l_of(x, n, c).unwrap();
                        let g = matrix_form(x, 2 * n, l).unwrap().entries;
                        for i in 0..=2 * n {
                            for j in 0..=2 * n {
                                assert_eq!(
                                    g[i][j],
                                    f[n.abs_diff(i)][n.abs_diff(j)],
                                    "{name}: fold-image entries should fold the original matrix"
                                );
                                assert_eq!(
                                    g[i][j],
                                    g[2 * n - i][2 * n - j],
                                    "{name}: fold images should be centrosymmetric"
                                );
                            }
                        }
                    }
                }
            }
        }
        format!(
            "{cells} cells across both truncation-4 objects satisfy the transpose, flip, \
             fold, and centrosymmetry laws"
        )
    });
}

#[test]
fn criterion_07_nilpotency_complexes() {
    report(7, "nilpotency complexes", || {
        let s3 = FiniteGroup::symmetric(3);
        let mut commuting = 0usize;
        for a in 0..s3.order() {
            for b in 0..s3.order() {
                if s3.mul(a, b) == s3.mul(b, a) {
                    commuting += 1;
                }
            }
        }
        assert_eq!(commuting, 18, "direct count of commuting pairs in S3");
        assert_eq!(
            b_com(&s3, 2).0.level_size(2),
            commuting,
            "level 2 of the commuting-chains object should match the direct pair count"
        );
        let d8 = FiniteGroup::dihedral(4);
        assert_eq!(
            b_q(&d8, 3, 2).0.level_size(2),
            64,
            "D8 has nilpotency class 2, so every pair passes the q=3 filter"
        );
        let z4 = FiniteGroup::cyclic(4);
        assert_eq!(
            b_com(&z4, 3).0,
            nerve_group(&z4, 3),
            "an abelian group keeps its whole nerve"
        );
        "commuting chains of S3 have 18 level-2 cells (matching the 36-pair scan), \
         the q=3 filter keeps all 64 D8 pairs, and Z4 keeps its whole nerve"
            .to_string()
    });
}

fn reflection_hom_bijection(
    src_name: &str,
    y: &TruncSymSet,
    tgt_name: &str,
    x: &TruncSymSet,
) -> usize {
    let (refl, proj, _) = reflect(y).unwrap();
    let upstairs = enumerate_homs(&refl, x).unwrap();
    let downstairs = enumerate_homs(y, x).unwrap();
    assert_eq!(
        upstairs.len(),
        downstairs.len(),
        "hom sets from {src_name} and from its reflection into {tgt_name} should have equal size"
    );
    let precomposed: HashSet<Vec<Vec<usize>>> =
        upstairs.iter().map(|h| proj.then(h).unwrap().levels().to_vec()).collect();
    assert_eq!(
        precomposed.len(),
        upstairs.len(),
        "precomposition with the {src_name} projection should be injective"
    );
    let all: HashSet<Vec<Vec<usize>>> =
        downstairs.iter().map(|h| h.levels().to_vec()).collect();
    assert_eq!(
        precomposed, all,
        "precomposition from {src_name} into {tgt_name} should be onto"
    );
    upstairs.len()
}

#[test]
fn criterion_08_classifier_freeness_and_reflection_homs() {
    report(8, "classifier freeness and reflection homs", || {
        let start = Instant::now();
        let s3 = FiniteGroup::symmetric(3);
        let z4 = FiniteGroup::cyclic(4);
        let targets = [
            ("one-generator classifier", word_classifier(1, 3).unwrap()),
            ("commuting chains of S3", b_com(&s3, 3).0),
            ("reduced Z4 nerve", reduce(&nerve_group(&z4, 3)).0),
        ];
        let mut counts = 0usize;
        for m in 0..=2usize {
            let fm = word_classifier(m, 3).unwrap();
            for (name, x) in &targets {
                let found = enumerate_homs(&fm, x).unwrap().len();
                assert_eq!(
                    found,
                    x.level_size(m),
                    "morphisms out of the {m}-letter classifier into {name} \
                     should match its level-{m} cells"
                );
                counts += 1;
            }
        }

        let z2 = FiniteGroup::cyclic(2);
        let z3 = FiniteGroup::cyclic(3);
        let low_targets = [
            ("Z2 nerve", nerve_group(&z2, 2)),
            ("Z3 nerve", nerve_group(&z3, 2)),
            ("reduced Z4 nerve", reduce(&nerve_group(&z4, 2)).0),
        ];
        let low_sources = [
            ("one-rung ladder", ladder(1, 2).unwrap()),
            ("two-rung ladder", ladder(2, 2).unwrap()),
            ("inversion coequalizer", inversion_coequalizer()),
        ];
        let mut pairs = 0usize;
        for (sname, y) in &low_sources {
            for (tname, x) in &low_targets {
                reflection_hom_bijection(sname, y, tname, x);
                pairs += 1;
            }
        }
        let psym = counterexample_sym_pushout(3);
        for (tname, x) in [
            ("one-generator classifier", word_classifier(1, 3).unwrap()),
            ("reduced Z4 nerve", reduce(&nerve_group(&z4, 3)).0),
        ] {
            reflection_hom_bijection("counterexample presheaf pushout", &psym, tname, &x);
            pairs += 1;
        }
        let elapsed = start.elapsed();
        assert!(elapsed < Duration::from_secs(60), "took {elapsed:?}, budget is 60s");
        format!(
            "{counts} classifier hom counts equal level sizes; precomposition with the \
             reflection projection is a bijection on {pairs} source/target pairs; {elapsed:?} total"
        )
    });
}

/// Splits a ladder cell name like `u(0,2)` into its sheet tag and tuple
/// body, with the largest post in the tuple.
fn parse_ladder_name(name: &str) -> (u8, &str, usize) {
    let tag = name.as_bytes()[0];
    let body = &name[1..];
    let max = body
        .trim_start_matches('(')
        .trim_end_matches(')')
        .split(',')
        .map(|v| v.parse::<usize>().expect("ladder tuples are numeric"))
        .max()
        .expect("ladder tuples are nonempty");
    (tag, body, max)
}

/// After `step` merge passes, exactly the `u`/`v` twin pairs whose tuple
/// stays within posts `0..=step+1` are identified, and nothing else.
fn check_ladder_step(x: &TruncSymSet, proj: &SymMap, step: usize) {
    for n in 0..=x.trunc() {
        let parsed: Vec<(u8, &str, usize)> =
            (0..x.level_size(n)).map(|c| parse_ladder_name(x.cell_name(n, c))).collect();
        for c in 0..x.level_size(n) {
            for d in c + 1..x.level_size(n) {
                let merged = proj.apply(n, c) == proj.apply(n, d);
                let (tc, bc, mc) = parsed[c];
                let (td, bd, _) = parsed[d];
                let twins = bc == bd && matches!((tc, td), (b'u', b'v') | (b'v', b'u'));
                let expected = twins && mc <= step + 1;
                assert_eq!(
                    merged,
                    expected,
                    "cells {} and {} at level {n} after {step} passes",
                    x.cell_name(n, c),
                    x.cell_name(n, d)
                );
            }
        }
    }
}

#[test]
fn criterion_09_ladder_fixpoint_scaling() {
    report(9, "ladder fixpoint scaling", || {
        let mut previous = 0usize;
        let mut iteration_counts = Vec::new();
        for k in 1..=4usize {
            let x = ladder(k, 2).unwrap();
            let (_, _, rep) = reflect(&x).unwrap();
            assert!(rep.stabilized, "the ladder with {k} rungs should reach its fixpoint");
            assert!(
                rep.iterations > previous,
                "iteration counts should strictly increase: {} rungs took {} after {}",
                k,
                rep.iterations,
                previous
            );
            previous = rep.iterations;
            iteration_counts.push(rep.iterations);
            for step in 0..=rep.iterations {
                let (_, proj, _) = reflect_with(&x, Some(step), Exec::default()).unwrap();
                check_ladder_step(&x, &proj, step);
            }
        }
        format!(
            "reflection pass counts {iteration_counts:?} for ladders with 1..=4 rungs; \
             every intermediate congruence merges exactly the twin pairs within reach"
        )
    });
}

#[test]
fn criterion_10_reflection_idempotence_and_commutation() {
    report(10, "reflection idempotence and commutation", || {
        let mut objects = spiny_corpus();
        objects.extend(non_spiny_corpus());
        let total = objects.len();
        for (name, x) in &objects {
            let (r1, _, _) = reflect(x).unwrap();
            let (r2, _, rep2) = reflect(&r1).unwrap();
            assert_eq!(rep2.iterations, 0, "{name}: a second reflection should merge nothing");
            assert!(rep2.merges.is_empty() && rep2.stabilized);
            assert_eq!(sizes(&r2), sizes(&r1));

            let reduce_then_reflect = reflect(&reduce(x).0).unwrap().0;
            let reflect_then_reduce = reduce(&r1).0;
            assert_eq!(
                sizes(&reduce_then_reflect),
                sizes(&reflect_then_reduce),
                "{name}: reducing before or after reflecting should give the same level sizes"
            );
        }
        format!(
            "reflection is idempotent and commutes with reduction (levelwise sizes) \
             on all {total} corpus objects"
        )
    });
}
