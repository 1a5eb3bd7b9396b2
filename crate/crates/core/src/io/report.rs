//! JSON reports. Keys are sorted, so equal inputs give byte-identical text.

use std::sync::Arc;

use serde_json::{json, Value};

use super::{
    algebra_to_file, certificate_to_data, matrix_rows, module_to_data, subspace_to_data, vector_to_strings,
};
use crate::algebra::{dickson_radical, AlgebraData};
use crate::arith::{require_finite, Field};
use crate::correspondence::{hom_dim_matrix, BijectionTable, VerificationReport};
use crate::decomp::{
    algebra_radical, composition_series, indecomposable_decomposition, radical_nilpotency_index, Certificate,
};
use crate::error::{Error, Result};
use crate::linalg::Subspace;
use crate::module::ModuleRep;

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

pub fn certificate<F: Field>(f: F, c: &Certificate<F>) -> Value {
    to_value(&certificate_to_data(f, c))
}

fn subspace<F: Field>(s: &Subspace<F>) -> Value {
    json!({ "dim": s.dim(), "basis": subspace_to_data(s).basis })
}

fn module_entry<F: Field>(m: &ModuleRep<F>, c: &Certificate<F>) -> Value {
    json!({ "dim": m.dim(), "module": to_value(&module_to_data(m)), "certificate": certificate(m.field(), c) })
}

pub fn algebra<F: Field>(a: &AlgebraData<F>) -> Value {
    to_value(&algebra_to_file(a))
}

pub fn info<F: Field>(a: &AlgebraData<F>) -> Value {
    json!({
        "field": a.field().desc().to_string(),
        "dim": a.dim(),
        "labels": a.labels(),
        "commutative": a.is_commutative(),
        "generators": a.generators().iter().map(|&i| a.labels()[i].clone()).collect::<Vec<_>>(),
        "unit": vector_to_strings(a.field(), a.unit()),
    })
}

pub fn validation<F: Field>(a: &AlgebraData<F>) -> Value {
    let r = a.validate();
    json!({ "valid": r.is_valid(), "violation": r.witness().map(|w| format!("{w:?}")) })
}

/// Radical by annihilators of simples over F_p, with the trace-form radical
/// alongside when `p > dim`; the trace-form radical alone over Q.
pub fn radical<F: Field>(a: &Arc<AlgebraData<F>>, seed: u64) -> Result<Value> {
    let dickson = match dickson_radical(a) {
        Ok(r) => Some(r),
        Err(Error::UnsupportedCharacteristic { .. }) => None,
        Err(e) => return Err(e),
    };
    if require_finite(a.field()).is_err() {
        let r = dickson.expect("trace form applies in characteristic 0");
        return Ok(json!({
            "method": "trace-form",
            "radical": subspace(r.space()),
            "nilpotency_index": radical_nilpotency_index(&r)?,
        }));
    }
    let r = algebra_radical(a, seed)?;
    let agrees = dickson.as_ref().map(|d| d.space() == r.ideal.space());
    Ok(json!({
        "method": "annihilator",
        "radical": subspace(r.ideal.space()),
        "nilpotency_index": radical_nilpotency_index(&r.ideal)?,
        "simples": r.simples.iter().zip(&r.simple_certificates).map(|(s, c)| module_entry(s, c)).collect::<Vec<_>>(),
        "trace_form_agrees": agrees,
    }))
}

pub fn comp_series<F: Field>(m: &ModuleRep<F>, seed: u64) -> Result<Value> {
    let cs = composition_series(m, seed)?;
    let factors: Vec<Value> = cs
        .factors
        .iter()
        .zip(&cs.certificates)
        .zip(&cs.factor_class_ids)
        .map(|((fac, c), id)| {
            let mut v = module_entry(fac, c);
            v["class"] = json!(id);
            v
        })
        .collect();
    let mult: Vec<Value> = cs.multiplicities().into_iter().map(|(c, k)| json!({ "class": c, "count": k })).collect();
    Ok(json!({
        "length": cs.length(),
        "chain_dims": cs.chain.iter().map(|s| s.dim()).collect::<Vec<_>>(),
        "chain": cs.chain.iter().map(|s| subspace_to_data(s).basis).collect::<Vec<_>>(),
        "factors": factors,
        "multiplicities": mult,
    }))
}

pub fn decomposition<F: Field>(m: &ModuleRep<F>, seed: u64) -> Result<Value> {
    let r = indecomposable_decomposition(m, seed)?;
    let summands: Vec<Value> = r
        .summands
        .iter()
        .zip(&r.class_ids)
        .map(|(s, id)| {
            let mut v = module_entry(&s.module, &s.certificate);
            v["class"] = json!(id);
            v["inclusion"] = json!(matrix_rows(&s.inclusion));
            v
        })
        .collect();
    Ok(json!({ "summands": summands, "class_count": r.class_count() }))
}

pub fn simples<F: Field>(t: &BijectionTable<F>) -> Value {
    let v: Vec<Value> = t
        .simples
        .iter()
        .map(|s| {
            let mut e = module_entry(&s.module, &s.certificate);
            e["class"] = json!(s.class_id);
            e["end_degree"] = json!(s.end_field_degree);
            e
        })
        .collect();
    json!({ "simples": v, "radical_dim": t.radical.dim(), "nilpotency_index": t.nilpotency_index })
}

pub fn pims<F: Field>(t: &BijectionTable<F>) -> Value {
    let f = t.algebra.field();
    let v: Vec<Value> = t
        .pims
        .iter()
        .map(|p| {
            let mut e = module_entry(&p.module, &p.indecomposable);
            e["class"] = json!(p.class_id);
            e["multiplicity"] = json!(p.multiplicity);
            e["generator"] = json!(vector_to_strings(f, &p.generator));
            e["top_class"] = json!(p.top_class_id);
            e["unique_maximal"] = subspace(&p.unique_maximal);
            e["projective"] = json!({ "module": to_value(&module_to_data(&p.module)), "certificate": certificate(f, &p.projective) });
            e
        })
        .collect();
    json!({ "pims": v })
}

pub fn check(r: &VerificationReport) -> Value {
    json!({ "all_passed": r.all_passed(), "claims": to_value(&r.claims) })
}

pub fn bijection<F: Field>(t: &BijectionTable<F>, checks: &VerificationReport) -> Result<Value> {
    let f = t.algebra.field();
    let pairs: Vec<Value> = t
        .pairs
        .iter()
        .map(|pr| {
            let p = &t.pims[pr.pim];
            let s = &t.simples[pr.simple];
            json!({
                "pim": {
                    "class": p.class_id,
                    "dim": p.module.dim(),
                    "multiplicity": p.multiplicity,
                    "generator": vector_to_strings(f, &p.generator),
                },
                "simple": { "class": s.class_id, "dim": s.dim, "end_degree": s.end_field_degree },
                "hom_dim": pr.hom_dim,
            })
        })
        .collect();
    let claims: serde_json::Map<String, Value> =
        checks.claims.iter().map(|c| (c.name.to_string(), json!(c.passed))).collect();
    Ok(json!({
        "algebra": algebra(&t.algebra),
        "pairs": pairs,
        "hom_dim_matrix": hom_dim_matrix(t)?,
        "radical_dim": t.radical.dim(),
        "nilpotency_index": t.nilpotency_index,
        "checks": claims,
        "failures": checks.failures().map(|c| json!({ "claim": c.name, "witness": c.witness })).collect::<Vec<_>>(),
        "seed": t.seed,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_example, ExampleKind};
    use crate::correspondence::{bijection as table, verify_table};
    use crate::module::test_util::*;
    use crate::module::regular_module;

    #[test]
    fn golden_bijection_report() {
        let t = table(&ut2(), 0).unwrap();
        let v = bijection(&t, &verify_table(&t).unwrap()).unwrap();
        let dims: Vec<_> = v["pairs"].as_array().unwrap().iter().map(|p| p["pim"]["dim"].as_u64().unwrap()).collect();
        assert_eq!(dims, vec![1, 2]);
        assert_eq!(v["hom_dim_matrix"], json!([[1, 0], [0, 1]]));
        assert!(v["checks"].as_object().unwrap().values().all(|b| b == &json!(true)));
        let again = bijection(&table(&ut2(), 0).unwrap(), &verify_table(&t).unwrap()).unwrap();
        assert_eq!(v.to_string(), again.to_string());
    }

    #[test]
    fn radical_reports() {
        let v = radical(&ut2(), 0).unwrap();
        assert_eq!(v["radical"]["dim"], json!(1));
        assert_eq!(v["trace_form_agrees"], json!(true));
        let q = build_example(&ExampleKind::UpperTriangular(2), crate::arith::Rationals).unwrap().shared();
        let v = radical(&q, 0).unwrap();
        assert_eq!(v["method"], json!("trace-form"));
        assert_eq!(v["nilpotency_index"], json!(2));
    }

    #[test]
    fn series_and_decomposition_reports() {
        let reg = regular_module(&ut2());
        let v = comp_series(&reg, 0).unwrap();
        assert_eq!(v["length"], json!(3));
        assert_eq!(v["chain_dims"], json!([0, 1, 2, 3]));
        let v = decomposition(&reg, 0).unwrap();
        assert_eq!(v["summands"].as_array().unwrap().len(), 2);
    }
}
