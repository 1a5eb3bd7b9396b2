mod common;

use std::time::Instant;

use common::*;
use pimtop::correspondence::bijection;
use pimtop::decomp::composition_series;
use pimtop::module::regular_module;

fn check_against_oracle(kind: &pimtop::algebra::ExampleKind, p: u64) -> Result<(), String> {
    let a = alg(kind, p);
    let reg = regular_module(&a);
    let o = oracle(&a, &reg);
    let t = bijection(&a, 0).map_err(|e| e.to_string())?;
    let tag = format!("{kind} over F_{p}");

    if t.radical.space() != &o.radical {
        return Err(format!("{tag}: radical differs"));
    }
    let mut sd: Vec<usize> = t.simples.iter().map(|s| s.dim).collect();
    sd.sort();
    if sd != o.simple_dims {
        return Err(format!("{tag}: simple dims {sd:?} vs {:?}", o.simple_dims));
    }
    let mut pd: Vec<usize> = t.pims.iter().map(|q| q.module.dim()).collect();
    pd.sort();
    if pd != o.pim_dims {
        return Err(format!("{tag}: PIM dims {pd:?} vs {:?}", o.pim_dims));
    }
    let fast = submodule_dims_fast(&reg, &t.radical, 0).ok_or(format!("{tag}: non-simple top"))?;
    if fast != o.lattice_dims {
        return Err(format!("{tag}: submodule dims {fast:?} vs {:?}", o.lattice_dims));
    }
    let cs = composition_series(&reg, 0).map_err(|e| e.to_string())?;
    if cs.class_count() != o.simple_dims.len() {
        return Err(format!("{tag}: composition factor classes"));
    }
    Ok(())
}

#[test]
fn pipeline_matches_brute_force_on_small_corpus() {
    let start = Instant::now();
    let mut checked = 0;
    let mut failures = Vec::new();
    for (kind, p) in corpus() {
        if !small_enough(&kind, p) {
            continue;
        }
        checked += 1;
        if let Err(e) = check_against_oracle(&kind, p) {
            failures.push(e);
        }
    }
    eprintln!("{checked} algebras checked in {:?}", start.elapsed());
    assert!(checked >= 40);
    assert!(failures.is_empty(), "{failures:#?}");
}

#[test]
fn oracle_on_ut2_by_hand() {
    let a = alg(&pimtop::algebra::ExampleKind::UpperTriangular(2), 5);
    let o = oracle(&a, &regular_module(&a));
    assert_eq!(o.radical.dim(), 1);
    assert_eq!(o.simple_dims, vec![1, 1]);
    assert_eq!(o.pim_dims, vec![1, 2]);
    // 0, span{e12}, five lines e11 + c e12, span{e11, e12}, span{e12, e22}, everything
    assert_eq!(o.submodule_count, 10);
}
