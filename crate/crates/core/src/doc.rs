//! JSON persistence. Documents are versioned envelopes; geometry is all
//! integers and the field order is fixed, so write -> read -> write is
//! byte-identical.
//!
//! Pair schema:
//! `{formatVersion:1, kind:"pair", p, q, a:{parent:[w,h], modules:[[x,y,w,h],..]}, b:{..}, pairing:[..]}`

use crate::geom::{Dims, Partition, PartitionPair, PlacedRect};
use crate::Error;
use serde::{Deserialize, Serialize};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionBody {
    pub parent: [u64; 2],
    pub modules: Vec<[u64; 4]>,
}

impl From<&Partition> for PartitionBody {
    fn from(p: &Partition) -> Self {
        PartitionBody {
            parent: [p.parent.width, p.parent.height],
            modules: p.modules.iter().map(|m| [m.x, m.y, m.dims.width, m.dims.height]).collect(),
        }
    }
}

impl PartitionBody {
    pub fn to_partition(&self) -> Result<Partition, Error> {
        let [w, h] = self.parent;
        if w < 1 || h < 1 {
            return Err(Error::MalformedDocument("degenerate parent".into()));
        }
        let mut modules = Vec::with_capacity(self.modules.len());
        for &[x, y, mw, mh] in &self.modules {
            if mw < 1 || mh < 1 {
                return Err(Error::MalformedDocument(format!("degenerate module {mw}x{mh}")));
            }
            modules.push(PlacedRect::new(x, y, Dims::new(mw, mh)));
        }
        Ok(Partition::new(Dims::new(w, h), modules))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairDocument {
    #[serde(rename = "formatVersion")]
    pub format_version: u32,
    pub kind: String,
    pub p: u64,
    pub q: u64,
    pub a: PartitionBody,
    pub b: PartitionBody,
    pub pairing: Vec<usize>,
}

impl PairDocument {
    pub fn from_pair(pair: &PartitionPair) -> Self {
        PairDocument {
            format_version: FORMAT_VERSION,
            kind: "pair".into(),
            p: pair.a.parent.width,
            q: pair.a.parent.height,
            a: (&pair.a).into(),
            b: (&pair.b).into(),
            pairing: pair.pairing.clone(),
        }
    }

    pub fn to_pair(&self) -> Result<PartitionPair, Error> {
        if self.format_version != FORMAT_VERSION {
            return Err(Error::MalformedDocument(format!(
                "unknown formatVersion {}",
                self.format_version
            )));
        }
        if self.kind != "pair" {
            return Err(Error::MalformedDocument(format!("expected kind \"pair\", got {:?}", self.kind)));
        }
        Ok(PartitionPair {
            a: self.a.to_partition()?,
            b: self.b.to_partition()?,
            pairing: self.pairing.clone(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceRoundBody {
    pub p: u64,
    pub q: u64,
    pub delta: u64,
    pub branch: String,
    pub added: u128,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceDocument {
    #[serde(rename = "formatVersion")]
    pub format_version: u32,
    pub kind: String,
    pub p: u64,
    pub q: u64,
    pub size: u128,
    pub rounds: Vec<TraceRoundBody>,
}

impl TraceDocument {
    pub fn from_trace(p: u64, q: u64, trace: &crate::geom::SolveTrace) -> Self {
        TraceDocument {
            format_version: FORMAT_VERSION,
            kind: "trace".into(),
            p,
            q,
            size: trace.total(),
            rounds: trace
                .rounds
                .iter()
                .map(|r| TraceRoundBody {
                    p: r.p,
                    q: r.q,
                    delta: r.delta,
                    branch: match r.branch {
                        crate::geom::Branch::Base => "base".into(),
                        crate::geom::Branch::EuclidStep => "euclid".into(),
                        crate::geom::Branch::SquareTransfer => "square-transfer".into(),
                    },
                    added: r.added,
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleDocument {
    #[serde(rename = "formatVersion")]
    pub format_version: u32,
    pub kind: String,
    pub p: u64,
    pub q: u64,
    #[serde(rename = "minSize")]
    pub min_size: u128,
    pub exhausted: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<PairDocument>,
}

/// Serializes any document with the fixed layout used everywhere.
pub fn to_json<T: Serialize>(doc: &T) -> String {
    let mut out = serde_json::to_string_pretty(doc).expect("documents serialize");
    out.push('\n');
    out
}

pub fn pair_from_json(text: &str) -> Result<PartitionPair, Error> {
    let doc: PairDocument =
        serde_json::from_str(text).map_err(|e| Error::MalformedDocument(e.to_string()))?;
    doc.to_pair()
}
