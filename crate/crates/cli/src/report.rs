//! JSON and text rendering of results in terms of the file's vertex names.

use std::fmt::Write;

use mengerian_core::format::GraphFile;
use mengerian_core::menger::{Counterexample, EdgeMengerReport, MengerReport};
use mengerian_core::patterns::{CrossedStructure, MEmbedding, Part, Pattern};
use mengerian_core::recognizer::{Proof, Recognition};
use mengerian_core::temporal::{TemporalPath, TimeFunction};
use mengerian_core::witness::{Verification, Witness};
use serde_json::{json, Map, Value};

fn names(file: &GraphFile, vs: &[mengerian_core::multigraph::VertexId]) -> Vec<String> {
    vs.iter().map(|&v| file.name(v).to_string()).collect()
}

pub fn embedding_json(file: &GraphFile, emb: &MEmbedding) -> Value {
    let pattern = Pattern::get(emb.pattern);
    let branch: Map<String, Value> = emb
        .branch
        .iter()
        .enumerate()
        .map(|(i, &v)| (pattern.names[i].to_string(), json!(file.name(v))))
        .collect();
    let segments: Vec<Value> = emb
        .segments
        .iter()
        .map(|s| {
            json!({
                "pattern_pair": [pattern.names[s.ends.0 .0], pattern.names[s.ends.1 .0]],
                "path": names(file, &s.path),
                "hops": s.hops.iter().map(|h| h.iter().map(|e| e.0).collect::<Vec<_>>()).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({ "pattern": emb.pattern.to_string(), "branch": branch, "segments": segments })
}

fn times_json(times: &TimeFunction) -> Value {
    let map: Map<String, Value> = times
        .labels()
        .iter()
        .enumerate()
        .map(|(i, l)| (i.to_string(), json!(l)))
        .collect();
    Value::Object(map)
}

pub fn witness_json(file: &GraphFile, w: &Witness, verification: &Verification) -> Value {
    json!({
        "times": times_json(&w.times),
        "s": file.name(w.s),
        "t": file.name(w.t),
        "claimed_p": w.claimed_p,
        "claimed_c": w.claimed_c,
        "verification": verification,
    })
}

fn part_json(file: &GraphFile, part: &Part) -> Value {
    json!({
        "attachments": [file.name(part.attachments.0), file.name(part.attachments.1)],
        "vertices": names(file, &part.vertices),
        "edges": part.edges.iter().map(|e| e.0).collect::<Vec<_>>(),
    })
}

fn crossed_json(file: &GraphFile, cs: &CrossedStructure) -> Value {
    json!({
        "chain": names(file, &cs.chain.vertices),
        "h": names(file, &cs.h),
        "a1": part_json(file, &cs.a1),
        "a2": part_json(file, &cs.a2),
        "b2": part_json(file, &cs.b2),
        "b1": cs.b1.as_ref().map(|p| part_json(file, p)),
        "crossing": cs.crossing,
    })
}

pub fn recognition_json(
    file: &GraphFile,
    rec: &Recognition,
    proof: Option<&Proof>,
    elapsed_ms: f64,
) -> Value {
    let emb = rec.verdict.embedding();
    let d = &rec.diagnostics;
    json!({
        "verdict": if emb.is_some() { "non_mengerian" } else { "mengerian" },
        "pattern": emb.map(|e| e.pattern.to_string()),
        "embedding": emb.map(|e| embedding_json(file, e)),
        "witness": proof.map(|p| match &p.witness {
            Some(w) => witness_json(file, w, &p.verification),
            None => json!({ "verification": p.verification }),
        }),
        "diagnostics": {
            "blocks": d.blocks,
            "blocks_skipped": d.blocks_skipped,
            "chains_examined": d.chains_examined,
            "crossed": d.crossed.iter().map(|c| crossed_json(file, c)).collect::<Vec<_>>(),
            "elapsed_ms": elapsed_ms,
        },
    })
}

pub fn recognition_text(file: &GraphFile, rec: &Recognition, proof: Option<&Proof>) -> String {
    let mut out = String::new();
    match rec.verdict.embedding() {
        None => writeln!(out, "verdict: Mengerian").unwrap(),
        Some(emb) => {
            let pattern = Pattern::get(emb.pattern);
            writeln!(out, "verdict: non-Mengerian ({})", emb.pattern).unwrap();
            let branch: Vec<String> = emb
                .branch
                .iter()
                .enumerate()
                .map(|(i, &v)| format!("{}={}", pattern.names[i], file.name(v)))
                .collect();
            writeln!(out, "branch: {}", branch.join(" ")).unwrap();
            for s in &emb.segments {
                let hops: Vec<String> = s
                    .hops
                    .iter()
                    .map(|h| {
                        h.iter()
                            .map(|e| e.to_string())
                            .collect::<Vec<_>>()
                            .join("+")
                    })
                    .collect();
                writeln!(
                    out,
                    "segment {}-{}: {} [{}]",
                    pattern.names[s.ends.0 .0],
                    pattern.names[s.ends.1 .0],
                    names(file, &s.path).join(" "),
                    hops.join(" ")
                )
                .unwrap();
            }
        }
    }
    let d = &rec.diagnostics;
    writeln!(
        out,
        "blocks: {} ({} skipped), chains examined: {}, crossed structures: {}",
        d.blocks,
        d.blocks_skipped,
        d.chains_examined,
        d.crossed.len()
    )
    .unwrap();
    for cs in &d.crossed {
        writeln!(
            out,
            "crossed ({:?}): chain {} h {}",
            cs.crossing,
            names(file, &cs.chain.vertices).join(" "),
            names(file, &cs.h).join(" ")
        )
        .unwrap();
    }
    if let Some(p) = proof {
        match &p.witness {
            Some(w) => {
                writeln!(
                    out,
                    "witness: s={} t={} {}",
                    file.name(w.s),
                    file.name(w.t),
                    verification_text(&p.verification)
                )
                .unwrap();
                out.push_str(&labelled(file, &w.times));
            }
            None => writeln!(out, "witness: {}", verification_text(&p.verification)).unwrap(),
        }
    }
    out
}

pub fn verification_text(v: &Verification) -> String {
    match v {
        Verification::Verified { p, c } => format!("verified p={p} c={c}"),
        Verification::Mismatch { p, c } => format!("MISMATCH p={p} c={c}"),
        Verification::Skipped { reason } => format!("unverified ({reason})"),
    }
}

/// The graph file with `times` attached.
pub fn labelled(file: &GraphFile, times: &TimeFunction) -> String {
    GraphFile {
        names: file.names.clone(),
        graph: file.graph.clone(),
        labels: Some(times.labels().to_vec()),
    }
    .emit()
}

fn path_text(file: &GraphFile, times: &TimeFunction, p: &TemporalPath) -> String {
    let mut s = file.name(p.vertices[0]).to_string();
    for (e, v) in p.edges.iter().zip(&p.vertices[1..]) {
        write!(s, " -{}- {}", times.label(*e), file.name(*v)).unwrap();
    }
    s
}

pub fn menger_text(file: &GraphFile, times: &TimeFunction, r: &MengerReport) -> String {
    let mut out = String::new();
    writeln!(out, "p = {}", r.p).unwrap();
    match (r.c, &r.cut) {
        (Some(c), Some(cut)) => {
            writeln!(out, "c = {c}\ncut: {}", names(file, cut).join(" ")).unwrap()
        }
        _ => writeln!(out, "c undefined (terminals adjacent)").unwrap(),
    }
    for p in &r.paths {
        writeln!(out, "path: {}", path_text(file, times, p)).unwrap();
    }
    out
}

pub fn menger_json(file: &GraphFile, r: &MengerReport) -> Value {
    json!({
        "p": r.p,
        "c": r.c,
        "paths": r.paths.iter().map(|p| json!({
            "vertices": names(file, &p.vertices),
            "edges": p.edges.iter().map(|e| e.0).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
        "cut": r.cut.as_ref().map(|c| names(file, c)),
    })
}

pub fn edge_menger_text(file: &GraphFile, times: &TimeFunction, r: &EdgeMengerReport) -> String {
    let mut out = String::new();
    writeln!(out, "p' = c' = {}", r.value).unwrap();
    let cut: Vec<String> = r
        .edge_cut
        .iter()
        .map(|&e| {
            let [a, b] = file.graph.endpoints(e);
            format!("{e}({}-{})", file.name(a), file.name(b))
        })
        .collect();
    writeln!(out, "edge cut: {}", cut.join(" ")).unwrap();
    for p in &r.paths {
        writeln!(out, "path: {}", path_text(file, times, p)).unwrap();
    }
    out
}

pub fn edge_menger_json(file: &GraphFile, r: &EdgeMengerReport) -> Value {
    json!({
        "value": r.value,
        "paths": r.paths.iter().map(|p| json!({
            "vertices": names(file, &p.vertices),
            "edges": p.edges.iter().map(|e| e.0).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
        "edge_cut": r.edge_cut.iter().map(|e| e.0).collect::<Vec<_>>(),
    })
}

pub fn counterexample_text(file: &GraphFile, c: &Counterexample) -> String {
    format!(
        "# counterexample: s={} t={} p={} c={}\n{}",
        file.name(c.s),
        file.name(c.t),
        c.p,
        c.c,
        labelled(file, &c.times)
    )
}
