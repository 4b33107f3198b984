//! JSON-lines exports of a whittled complex.
//!
//! One record per line; the layouts are described by the schemas under
//! `docs/schemas/`.

use std::collections::HashSet;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::states::{EnhancedState, StateSpace};
use crate::whittle::{GeIsomorphism, GeKind, WhittledComplex};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LoopRecord {
    pub l: usize,
    pub r: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StateRecord {
    pub strands: usize,
    pub bars: String,
    pub marks: String,
    pub h: i64,
    pub q: i64,
    pub tl_word: Vec<usize>,
    pub loops: Vec<LoopRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub survivor: Option<bool>,
    /// Filled in by classification.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub form: Option<String>,
}

impl StateRecord {
    pub fn new(space: &StateSpace, e: &EnhancedState, survivor: Option<bool>) -> Self {
        let res = space.resolution(e.state);
        let (h, q) = space.gradings(e);
        StateRecord {
            strands: space.braid().strands(),
            bars: e.state.bars_string(),
            marks: e.marks_string(),
            h,
            q,
            tl_word: res.word.gens().to_vec(),
            loops: res.loops.iter().map(|l| LoopRecord { l: l.left, r: l.right }).collect(),
            survivor,
            form: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoRecord {
    pub kind: GeKind,
    pub source: String,
    pub target: String,
    pub init: usize,
    pub fin: usize,
    pub active: usize,
}

impl From<&GeIsomorphism> for IsoRecord {
    fn from(iso: &GeIsomorphism) -> Self {
        IsoRecord {
            kind: iso.kind,
            source: iso.source.to_string(),
            target: iso.target.to_string(),
            init: iso.init,
            fin: iso.fin,
            active: iso.active,
        }
    }
}

pub fn write_jsonl<T: Serialize>(path: &Path, records: impl IntoIterator<Item = T>) -> Result<usize> {
    let mut out = BufWriter::new(File::create(path)?);
    let mut count = 0;
    for r in records {
        serde_json::to_writer(&mut out, &r)?;
        out.write_all(b"\n")?;
        count += 1;
    }
    out.flush()?;
    Ok(count)
}

pub fn read_jsonl<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<Vec<T>> {
    let reader = BufReader::new(File::open(path)?);
    let mut out = Vec::new();
    for (j, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(serde_json::from_str(&line).map_err(|e| Error::Parse(format!("line {}: {e}", j + 1)))?);
    }
    Ok(out)
}

/// Writes `states.jsonl`, `survivors.jsonl`, `isomorphisms.jsonl` and
/// `edges.jsonl` into `dir`, creating it if needed.
pub fn export_whittled(w: &WhittledComplex, dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    let space = &w.space;
    let survivors: HashSet<&EnhancedState> = w.all_survivors().collect();
    let all = space.enhanced_states();
    write_jsonl(
        &dir.join("states.jsonl"),
        all.iter().map(|e| StateRecord::new(space, e, Some(survivors.contains(e)))),
    )?;
    write_jsonl(&dir.join("survivors.jsonl"), w.all_survivors().map(|e| StateRecord::new(space, e, Some(true))))?;
    write_jsonl(&dir.join("isomorphisms.jsonl"), w.isomorphisms.iter().map(IsoRecord::from))?;
    write_jsonl(&dir.join("edges.jsonl"), &w.graph.edges)?;
    Ok(())
}
