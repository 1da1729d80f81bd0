use std::collections::BTreeMap;
use std::fmt::Write;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use super::{PosetElement, RankedPoset};
use crate::error::{Error, Result};

#[derive(Serialize, Deserialize)]
struct JsonElement {
    id: usize,
    sexpr: String,
    word: String,
    rank: usize,
    length: usize,
}

#[derive(Serialize, Deserialize)]
struct JsonPoset {
    elements: Vec<JsonElement>,
    covers: Vec<[usize; 2]>,
}

/// Hasse diagram in DOT, bottom to top, one `rank=same` group per rank.
pub fn export_dot(p: &RankedPoset) -> String {
    let mut out = String::from("digraph poset {\n  rankdir=BT;\n  node [shape=plaintext];\n");
    let mut by_rank: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..p.len() {
        by_rank.entry(p.rank(i)).or_default().push(i);
    }
    for (rank, ids) in &by_rank {
        let _ = write!(out, "  {{ rank=same; // rank {rank}\n");
        for &i in ids {
            let _ = writeln!(out, "    n{i} [label=\"{}\"];", p.element(i).sexpr);
        }
        out.push_str("  }\n");
    }
    for (u, v) in p.covers() {
        let _ = writeln!(out, "  n{u} -> n{v};");
    }
    out.push_str("}\n");
    out
}

/// JSON with fields `elements` (`id`, `sexpr`, `word`, `rank`, `length`) and
/// `covers` as `[lower, upper]` id pairs; ids are the element indices.
pub fn export_json(p: &RankedPoset) -> String {
    let doc = JsonPoset {
        elements: p
            .elements()
            .iter()
            .enumerate()
            .map(|(id, e)| JsonElement {
                id,
                sexpr: e.sexpr.clone(),
                word: e.word.clone(),
                rank: e.rank,
                length: e.length,
            })
            .collect(),
        covers: p.covers().into_iter().map(|(u, v)| [u, v]).collect(),
    };
    let mut text = serde_json::to_string_pretty(&doc).expect("plain data serializes");
    text.push('\n');
    text
}

/// Rebuilds a poset from [`export_json`] output, taking the order to be the
/// transitive closure of the covers.
pub fn import_json(text: &str) -> Result<RankedPoset> {
    let doc: JsonPoset =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("poset JSON: {e}")))?;
    let n = doc.elements.len();
    for (i, e) in doc.elements.iter().enumerate() {
        if e.id != i {
            return Err(Error::Parse(format!("element {i} has id {}", e.id)));
        }
    }
    let mut lower: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &[u, v] in &doc.covers {
        if u >= n || v >= n {
            return Err(Error::Parse(format!("cover [{u},{v}] out of range")));
        }
        if doc.elements[u].rank >= doc.elements[v].rank {
            return Err(Error::InconsistentRanks(u, v));
        }
        lower[v].push(u);
    }
    let mut down: Vec<FixedBitSet> = Vec::with_capacity(n);
    for v in 0..n {
        let mut row = FixedBitSet::with_capacity(n);
        row.insert(v);
        for &u in &lower[v] {
            if u > v {
                return Err(Error::Parse(format!("ids are not a linear extension at [{u},{v}]")));
            }
            row.union_with(&down[u]);
        }
        down.push(row);
    }
    let elements = doc
        .elements
        .into_iter()
        .map(|e| PosetElement {
            sexpr: e.sexpr,
            word: e.word,
            rank: e.rank,
            length: e.length,
            source: None,
        })
        .collect();
    RankedPoset::from_table(elements, down, None)
}
