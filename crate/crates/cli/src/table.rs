use std::fmt::Write;

use serde_json::Value;

fn s(v: &Value) -> String {
    match v {
        Value::String(x) => x.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

fn vec_str(v: &Value) -> String {
    match v.as_array() {
        Some(xs) => format!("({})", xs.iter().map(s).collect::<Vec<_>>().join(", ")),
        None => s(v),
    }
}

fn header(out: &mut String, body: &Value) {
    let a = &body["algebra"];
    if !a.is_null() {
        let f = &a["field"];
        let field = match f["kind"].as_str() {
            Some("fp") => format!("F_{}", s(&f["p"])),
            _ => "Q".into(),
        };
        let _ = writeln!(out, "algebra: dimension {} over {field}   seed {}", s(&a["dim"]), s(&body["seed"]));
    }
}

fn certified_list(out: &mut String, items: &Value, title: &str) {
    for x in items.as_array().into_iter().flatten() {
        let _ = write!(out, "  {title} {:>3}  dim {:>3}", s(&x["class"]), s(&x["dim"]));
        for key in ["multiplicity", "end_degree", "top_class"] {
            if !x[key].is_null() {
                let _ = write!(out, "  {key} {}", s(&x[key]));
            }
        }
        let _ = writeln!(out, "  [{}]", s(&x["certificate"]["kind"]));
    }
}

pub fn render(command: &str, body: &Value) -> String {
    let mut out = String::new();
    header(&mut out, body);
    match command {
        "validate" => {
            if body["valid"] == Value::Bool(true) {
                out.push_str("valid\n");
            } else {
                let _ = writeln!(out, "INVALID: {}", s(&body["violation"]));
            }
        }
        "info" => {
            let _ = writeln!(out, "field:        {}", s(&body["field"]));
            let _ = writeln!(out, "labels:       {}", vec_str(&body["labels"]));
            let _ = writeln!(out, "unit:         {}", vec_str(&body["unit"]));
            let _ = writeln!(out, "commutative:  {}", s(&body["commutative"]));
            let _ = writeln!(out, "generators:   {}", vec_str(&body["generators"]));
        }
        "radical" => {
            let _ = writeln!(out, "method: {}", s(&body["method"]));
            let _ = writeln!(out, "radical dimension: {}", s(&body["radical"]["dim"]));
            for v in body["radical"]["basis"].as_array().into_iter().flatten() {
                let _ = writeln!(out, "  {}", vec_str(v));
            }
            let _ = writeln!(out, "nilpotency index: {}", s(&body["nilpotency_index"]));
            if !body["trace_form_agrees"].is_null() {
                let _ = writeln!(out, "trace-form radical agrees: {}", s(&body["trace_form_agrees"]));
            }
            if body["simples"].is_array() {
                out.push_str("simple modules:\n");
                for (i, x) in body["simples"].as_array().into_iter().flatten().enumerate() {
                    let _ = writeln!(out, "  S{i}  dim {}  [{}]", s(&x["dim"]), s(&x["certificate"]["kind"]));
                }
            }
        }
        "decompose" => {
            let _ = writeln!(out, "{} summands, {} classes", body["summands"].as_array().map_or(0, |v| v.len()), s(&body["class_count"]));
            certified_list(&mut out, &body["summands"], "class");
        }
        "comp-series" => {
            let _ = writeln!(out, "length {}   chain dimensions {}", s(&body["length"]), vec_str(&body["chain_dims"]));
            certified_list(&mut out, &body["factors"], "class");
        }
        "simples" => {
            let _ = writeln!(out, "radical dimension {}, nilpotency index {}", s(&body["radical_dim"]), s(&body["nilpotency_index"]));
            certified_list(&mut out, &body["simples"], "S");
        }
        "pims" => {
            certified_list(&mut out, &body["pims"], "P");
            for x in body["pims"].as_array().into_iter().flatten() {
                let _ = writeln!(out, "  P{} generator {}", s(&x["class"]), vec_str(&x["generator"]));
            }
        }
        "bijection" => {
            let _ = writeln!(out, "{:<6}{:>8}{:>8}   {:<6}{:>8}{:>9}{:>8}", "PIM", "dim", "mult", "simple", "dim", "End deg", "Hom");
            for p in body["pairs"].as_array().into_iter().flatten() {
                let _ = writeln!(
                    out,
                    "P{:<5}{:>8}{:>8}   S{:<5}{:>8}{:>9}{:>8}",
                    s(&p["pim"]["class"]),
                    s(&p["pim"]["dim"]),
                    s(&p["pim"]["multiplicity"]),
                    s(&p["simple"]["class"]),
                    s(&p["simple"]["dim"]),
                    s(&p["simple"]["end_degree"]),
                    s(&p["hom_dim"]),
                );
            }
            let _ = writeln!(out, "radical dimension {}, nilpotency index {}", s(&body["radical_dim"]), s(&body["nilpotency_index"]));
            check_lines(&mut out, body["checks"].as_object().map(|o| o.iter().map(|(k, v)| (k.clone(), v == &Value::Bool(true), None)).collect()).unwrap_or_default());
            for f in body["failures"].as_array().into_iter().flatten() {
                let _ = writeln!(out, "  {}: {}", s(&f["claim"]), s(&f["witness"]));
            }
        }
        "check" => {
            let claims = body["claims"]
                .as_array()
                .into_iter()
                .flatten()
                .map(|c| (s(&c["name"]), c["passed"] == Value::Bool(true), c.get("witness").map(s)))
                .collect();
            check_lines(&mut out, claims);
        }
        "verify-cert" => {
            let _ = writeln!(out, "{} of {} certificates verified", s(&body["verified"]), s(&body["certificates"]));
            for r in body["rejected"].as_array().into_iter().flatten() {
                let _ = writeln!(out, "  REJECTED {}: {}", s(&r["path"]), s(&r["reason"]));
            }
        }
        _ => {
            let _ = writeln!(out, "{body}");
        }
    }
    out
}

fn check_lines(out: &mut String, claims: Vec<(String, bool, Option<String>)>) {
    for (name, ok, w) in claims {
        let _ = write!(out, "  {:<32}{}", name, if ok { "PASS" } else { "FAIL" });
        if let Some(w) = w {
            let _ = write!(out, "  {w}");
        }
        out.push('\n');
    }
}
