//! Browser bindings: recognition, Menger quantities and example graphs.

use std::fmt::Write;

use mengerian_core::format::GraphFile;
use mengerian_core::generate::m_subdivided_pattern;
use mengerian_core::menger::{edge_menger, vertex_menger, OracleLimits};
use mengerian_core::patterns::{crossed_graph, Pattern, PatternId};
use mengerian_core::recognizer::recognize_with_proof;
use wasm_bindgen::prelude::*;

fn js(e: impl ToString) -> JsValue {
    JsValue::from(e.to_string())
}

#[wasm_bindgen]
pub fn recognize(source: &str) -> Result<String, JsValue> {
    recognize_text(source).map_err(js)
}

#[wasm_bindgen]
pub fn menger(source: &str, s: &str, t: &str, edge: bool) -> Result<String, JsValue> {
    menger_text(source, s, t, edge).map_err(js)
}

#[wasm_bindgen]
pub fn example(name: &str, ops: usize, seed: u64) -> Result<String, JsValue> {
    example_text(name, ops, seed).map_err(js)
}

pub fn recognize_text(source: &str) -> mengerian_core::Result<String> {
    let file = GraphFile::parse(source)?;
    let (rec, proof) = recognize_with_proof(&file.graph, &OracleLimits::default());
    let mut out = String::new();
    match rec.verdict.embedding() {
        None => writeln!(out, "Mengerian").unwrap(),
        Some(emb) => {
            let pattern = Pattern::get(emb.pattern);
            writeln!(
                out,
                "non-Mengerian: contains {} as an m-topological minor",
                emb.pattern
            )
            .unwrap();
            for (i, &v) in emb.branch.iter().enumerate() {
                writeln!(out, "  {} -> {}", pattern.names[i], file.name(v)).unwrap();
            }
        }
    }
    for cs in &rec.diagnostics.crossed {
        let h: Vec<&str> = cs.h.iter().map(|&v| file.name(v)).collect();
        writeln!(out, "{:?} structure at h = {}", cs.crossing, h.join(" ")).unwrap();
    }
    if let Some(proof) = proof {
        match proof.witness {
            Some(w) => {
                writeln!(
                    out,
                    "witness for s={} t={}: {:?}",
                    file.name(w.s),
                    file.name(w.t),
                    proof.verification
                )
                .unwrap();
                let labelled = GraphFile {
                    labels: Some(w.times.labels().to_vec()),
                    ..file
                };
                out.push_str(&labelled.emit());
            }
            None => writeln!(out, "witness: {:?}", proof.verification).unwrap(),
        }
    }
    Ok(out)
}

pub fn menger_text(source: &str, s: &str, t: &str, edge: bool) -> mengerian_core::Result<String> {
    let file = GraphFile::parse(source)?;
    let tg = file.temporal()?;
    let (sv, tv) = (file.vertex(s)?, file.vertex(t)?);
    let mut out = String::new();
    let paths = if edge {
        let r = edge_menger(&tg, sv, tv)?;
        writeln!(out, "p' = c' = {}", r.value).unwrap();
        r.paths
    } else {
        let r = vertex_menger(&tg, sv, tv, &OracleLimits::default())?;
        writeln!(out, "p = {}", r.p).unwrap();
        match (r.c, r.cut) {
            (Some(c), Some(cut)) => {
                let cut: Vec<&str> = cut.iter().map(|&v| file.name(v)).collect();
                writeln!(out, "c = {c}, cut {{{}}}", cut.join(", ")).unwrap();
            }
            _ => writeln!(out, "c undefined: {s} and {t} are adjacent").unwrap(),
        }
        r.paths
    };
    for p in &paths {
        let mut line = file.name(p.vertices[0]).to_string();
        for (&e, &v) in p.edges.iter().zip(&p.vertices[1..]) {
            write!(line, " -{}- {}", tg.label(e), file.name(v)).unwrap();
        }
        writeln!(out, "  {line}").unwrap();
    }
    Ok(out)
}

/// `F1`, `F2`, `F3` (with their bad labelings when `ops` is 0, otherwise
/// m-subdivided `ops` times) or `crossed`.
pub fn example_text(name: &str, ops: usize, seed: u64) -> mengerian_core::Result<String> {
    if name.eq_ignore_ascii_case("crossed") {
        return Ok(GraphFile::unnamed(crossed_graph(), None).emit());
    }
    let id = PatternId::ALL
        .into_iter()
        .find(|id| id.to_string().eq_ignore_ascii_case(name))
        .ok_or_else(|| mengerian_core::Error::Usage(format!("unknown example {name:?}")))?;
    let pattern = Pattern::get(id);
    let graph = m_subdivided_pattern(id, ops, seed);
    let mut names: Vec<String> = pattern.names.iter().map(|s| s.to_string()).collect();
    names.extend((names.len()..graph.vertex_count()).map(|i| format!("x{i}")));
    let labels = (ops == 0).then(|| pattern.bad_labeling.labels().to_vec());
    Ok(GraphFile {
        names,
        graph,
        labels,
    }
    .emit())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn patterns_are_recognized_with_verified_witness() {
        for name in ["F1", "F2", "F3"] {
            let text = example_text(name, 2, 7).unwrap();
            let out = recognize_text(&text).unwrap();
            assert!(
                out.starts_with(&format!("non-Mengerian: contains {name}")),
                "{out}"
            );
            assert!(out.contains("Verified"), "{out}");
        }
    }

    #[test]
    fn crossed_graph_is_mengerian() {
        let out = recognize_text(&example_text("crossed", 0, 0).unwrap()).unwrap();
        assert!(out.starts_with("Mengerian"), "{out}");
        assert!(out.contains("TwoCrossed"), "{out}");
    }

    #[test]
    fn labelled_example_shows_the_gap() {
        let text = example_text("F1", 0, 0).unwrap();
        let out = menger_text(&text, "s", "t", false).unwrap();
        assert!(out.starts_with("p = 1\nc = 2"), "{out}");
        let out = menger_text(&text, "s", "t", true).unwrap();
        assert!(out.starts_with("p' = c' = 2"), "{out}");
    }

    #[test]
    fn errors_are_reported() {
        assert!(recognize_text("e a b").is_err());
        assert!(example_text("F4", 0, 0).is_err());
        let text = example_text("F1", 0, 0).unwrap();
        assert!(menger_text(&text, "s", "x", false).is_err());
        let out = menger_text(&text, "s", "u", false).unwrap();
        assert!(out.contains("c undefined"), "{out}");
    }
}
