//! Decides whether a multigraph is Mengerian.
//!
//! Each block is searched independently. A block is non-Mengerian when its
//! underlying simple graph contains a gem subdivision, or when one of its
//! maximal chains yields an F1 or F2 m-subdivision.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::menger::OracleLimits;
use crate::multigraph::{Multigraph, Subgraph};
use crate::patterns::{
    find_f3_subdivision, helpcrossed, ChainOutcome, CrossedStructure, MEmbedding,
};
use crate::witness::{make_witness, verify_witness, Verification, Witness};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Mengerian,
    NonMengerian { embedding: MEmbedding },
}

impl Verdict {
    pub fn is_mengerian(&self) -> bool {
        matches!(self, Verdict::Mengerian)
    }

    pub fn embedding(&self) -> Option<&MEmbedding> {
        match self {
            Verdict::Mengerian => None,
            Verdict::NonMengerian { embedding } => Some(embedding),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostics {
    pub blocks: usize,
    pub blocks_skipped: usize,
    pub chains_examined: usize,
    pub crossed: Vec<CrossedStructure>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Recognition {
    pub verdict: Verdict,
    pub diagnostics: Diagnostics,
}

#[derive(Default)]
struct BlockResult {
    skipped: bool,
    chains: usize,
    crossed: Vec<CrossedStructure>,
    embedding: Option<MEmbedding>,
}

fn analyse_block(block: &Subgraph) -> BlockResult {
    let b = &block.graph;
    let mut out = BlockResult::default();
    if b.max_simple_degree() <= 3 && !b.has_parallel_edges() {
        out.skipped = true;
        return out;
    }
    if let Some(emb) = find_f3_subdivision(b) {
        out.embedding = Some(emb.lift_from(block));
        return out;
    }
    for chain in b.maximal_chains() {
        out.chains += 1;
        match helpcrossed(b, &chain).expect("maximal chains satisfy the chain contract") {
            ChainOutcome::Pattern(emb) => {
                out.embedding = Some(emb.lift_from(block));
                return out;
            }
            ChainOutcome::Crossed(cs) => out.crossed.push(cs.lift_from(block)),
            ChainOutcome::NoGem | ChainOutcome::NoPattern => {}
        }
    }
    out
}

/// Blocks are analysed in parallel; the evidence is the first one in block
/// order, so the result does not depend on scheduling.
pub fn recognize(g: &Multigraph) -> Recognition {
    let blocks = g.biconnected_components();
    let results: Vec<BlockResult> = blocks.par_iter().map(analyse_block).collect();
    let mut diagnostics = Diagnostics {
        blocks: blocks.len(),
        ..Diagnostics::default()
    };
    let mut verdict = Verdict::Mengerian;
    for r in results {
        diagnostics.blocks_skipped += r.skipped as usize;
        diagnostics.chains_examined += r.chains;
        diagnostics.crossed.extend(r.crossed);
        if let Some(embedding) = r.embedding {
            verdict = Verdict::NonMengerian { embedding };
            break;
        }
    }
    Recognition {
        verdict,
        diagnostics,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Proof {
    /// `None` when the embedded terminals are adjacent in the host. Such a
    /// verdict has no certificate, and it can be wrong: the wheel with four
    /// spokes contains the gem this way but admits no violating time-function.
    pub witness: Option<Witness>,
    pub verification: Verification,
}

/// Recognition plus, for non-Mengerian graphs, a witness checked by the exact
/// oracles when the host is within `limits`.
pub fn recognize_with_proof(g: &Multigraph, limits: &OracleLimits) -> (Recognition, Option<Proof>) {
    let rec = recognize(g);
    let proof = rec
        .verdict
        .embedding()
        .map(|emb| match make_witness(g, emb) {
            Ok(w) => {
                let verification = verify_witness(g, &w, limits);
                Proof {
                    witness: Some(w),
                    verification,
                }
            }
            Err(e) => Proof {
                witness: None,
                verification: Verification::Skipped {
                    reason: e.to_string(),
                },
            },
        });
    (rec, proof)
}
