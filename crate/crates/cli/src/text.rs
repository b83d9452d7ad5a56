//! Plain-text rendering of a successful output document.

use std::fmt::Write;

use serde_json::Value;

pub fn render(doc: &Value) -> String {
    let r = &doc["result"];
    let mut out = String::new();
    match doc["command"].as_str().unwrap_or_default() {
        "analyze" => analyze(&mut out, r),
        "idempotent" => {
            line(&mut out, "idempotent", &r["idempotent"]);
            line(&mut out, "vector", &r["vector"]);
            line(&mut out, "dim", &r["dimension"]);
        }
        "orbits" => {
            line(&mut out, "q", &r["q"]);
            for orbit in r["orbits"].as_array().into_iter().flatten() {
                let names: Vec<&str> = orbit.as_array().into_iter().flatten().filter_map(Value::as_str).collect();
                let _ = writeln!(out, "  {{{}}}", names.join(", "));
            }
            line(&mut out, "sizes", &r["sizes"]);
            if !r["dimension"].is_null() {
                line(&mut out, "dim", &r["dimension"]);
            }
        }
        "indicator" => {
            line(&mut out, "extension", &r["extension"]);
            line(&mut out, "theta", &r["theta"]);
            line(&mut out, "orderings", &r["orderings"]);
            grid(&mut out, "A", &r["a"]);
            grid(&mut out, "D", &r["d"]);
            if !r["element"].is_null() {
                line(&mut out, "D(e)", &r["element"]["indicator"]);
                line(&mut out, "dim", &r["element"]["dimension"]);
            }
        }
        "mindist" => {
            line(&mut out, "n", &r["n"]);
            line(&mut out, "k", &r["k"]);
            distance(&mut out, &r["distance"]);
        }
        "classify" => classify(&mut out, r),
        _ => {}
    }
    out
}

fn analyze(out: &mut String, r: &Value) {
    line(out, "dim", &r["dim_exact"]);
    line(out, "m_b", &r["min_poly_factored"]);
    line(out, "p_b", &r["char_poly_factored"]);
    for key in ["n", "u", "t", "zeta_n", "kernel_dim", "p_part", "unit", "projective"] {
        line(out, key, &r[key]);
    }
    for b in r["bounds"].as_array().into_iter().flatten() {
        let _ = writeln!(out, "bound {}: [{}, {}]{}", s(&b["tag"]), b["lower"], b["upper"], divisibility(b));
    }
    if let Some(c) = r.get("congruence") {
        let _ = writeln!(
            out,
            "congruence: eigenvalue {}, s = {}, class {} mod {}, candidates {}",
            s(&c["eigenvalue"]),
            c["s"],
            c["class_value"],
            c["modulus"],
            c["candidates"]
        );
    }
    line(out, "candidates", &r["candidates"]);
    if let Some(e) = r.get("idempotent_generator") {
        let coeffs: Vec<&str> = e.as_array().into_iter().flatten().filter_map(Value::as_str).collect();
        let _ = writeln!(out, "idempotent: {}", coeffs.join(","));
    }
    for note in r["notes"].as_array().into_iter().flatten() {
        let _ = writeln!(out, "note: {}", s(note));
    }
}

fn classify(out: &mut String, r: &Value) {
    let _ = writeln!(out, "{}", s(&r["parameters"]));
    distance(out, &r["distance"]);
    for key in ["mds", "ecd", "ecd_algebra", "singleton_defect", "idempotent_generator"] {
        if !r[key].is_null() {
            line(out, key, &r[key]);
        }
    }
    line(out, "m_b", &r["min_poly_factored"]);
    for b in r["distance_bounds"].as_array().into_iter().flatten() {
        let _ = writeln!(out, "bound {} ({}): {}  [{}]", s(&b["tag"]), s(&b["kind"]), b["value"], s(&b["note"]));
    }
    for n in r["conjecture_notes"].as_array().into_iter().flatten() {
        let tag = n["conditional"].as_str().map(|c| format!(" [conditional: {c}]")).unwrap_or_default();
        let flag = if n["contradiction"] == true { " CONTRADICTION" } else { "" };
        let _ = writeln!(out, "relation {}: {}{tag}{flag}", s(&n["id"]), s(&n["statement"]));
    }
}

fn distance(out: &mut String, d: &Value) {
    match d["status"].as_str() {
        Some("exact") => line(out, "d", &d["d"]),
        _ => {
            let _ = writeln!(out, "d <= {} (search capped after {} codewords)", d["upper"], d["examined"]);
        }
    }
}

fn divisibility(b: &Value) -> String {
    match b["divisible_by"].as_u64() {
        Some(m) if m > 1 => format!(", divisible by {m}"),
        _ => String::new(),
    }
}

fn grid(out: &mut String, name: &str, m: &Value) {
    let _ = writeln!(out, "{name} =");
    for row in m.as_array().into_iter().flatten() {
        let cells: Vec<&str> = row.as_array().into_iter().flatten().filter_map(Value::as_str).collect();
        let _ = writeln!(out, "  {}", cells.join(" "));
    }
}

fn line(out: &mut String, key: &str, v: &Value) {
    let _ = writeln!(out, "{key}: {}", s(v));
}

/// Strings without quotes, everything else as compact JSON.
fn s(v: &Value) -> String {
    match v {
        Value::String(t) => t.clone(),
        other => other.to_string(),
    }
}
