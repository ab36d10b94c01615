//! JSON and CSV formats shared by the command-line tool and the tests.

use std::io::Write;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::bijection::{Redistribution, SnapshotValue, StepTrace};
use crate::color::{Color, ColorError, Level};
use crate::partition::{ColoredPart, DistinctPartition, Overpartition, PartitionError};
use crate::qseries::ExponentKey;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Color(#[from] ColorError),
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error("{0}")]
    Shape(String),
    #[error("CSV output failed: {0}")]
    Csv(#[from] csv::Error),
}

/// A colored overpartition, or a one-color partition, as stored on disk.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartitionJson {
    pub k: Level,
    pub parts: Vec<ColoredPart>,
}

impl PartitionJson {
    pub fn from_overpartition(k: Level, op: &Overpartition) -> Self {
        PartitionJson { k, parts: op.parts.clone() }
    }

    pub fn from_distinct(k: Level, mu: &DistinctPartition) -> Self {
        let parts = mu.parts().iter().map(|&v| ColoredPart::plain(v, mu.color())).collect();
        PartitionJson { k, parts }
    }

    /// The overpartition, with every color checked against the level.
    pub fn to_overpartition(&self) -> Result<Overpartition, FormatError> {
        for p in &self.parts {
            Color::in_level(p.color.get().into(), self.k)?;
        }
        Ok(Overpartition::new(self.parts.clone()))
    }

    /// A distinct partition in the top color of the stated level.
    pub fn to_distinct(&self) -> Result<DistinctPartition, FormatError> {
        let top = self.k.top();
        if let Some(p) = self.parts.iter().find(|p| p.color != top || p.overlined) {
            return Err(FormatError::Shape(format!(
                "mu must be non-overlined parts in color {top} at level {}, found {p}",
                self.k
            )));
        }
        Ok(DistinctPartition::new(top, self.parts.iter().map(|p| p.value).collect())?)
    }
}

/// Input of `map`, output of `unmap`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairJson {
    pub k: Level,
    pub lambda: PartitionJson,
    pub mu: PartitionJson,
}

impl PairJson {
    pub fn new(k: Level, lambda: &Overpartition, mu: &DistinctPartition) -> Self {
        let below = k.previous().unwrap_or(k);
        PairJson {
            k,
            lambda: PartitionJson::from_overpartition(below, lambda),
            mu: PartitionJson::from_distinct(k, mu),
        }
    }

    pub fn decode(&self) -> Result<(Overpartition, DistinctPartition), FormatError> {
        let below = self
            .k
            .previous()
            .ok_or_else(|| FormatError::Shape("a pair needs k >= 2".into()))?;
        if self.lambda.k != below || self.mu.k != self.k {
            return Err(FormatError::Shape(format!(
                "lambda must be at level {below} and mu at level {}",
                self.k
            )));
        }
        Ok((self.lambda.to_overpartition()?, self.mu.to_distinct()?))
    }
}

pub fn parse_partition(text: &str) -> Result<PartitionJson, FormatError> {
    Ok(serde_json::from_str(text)?)
}

pub fn parse_pair(text: &str) -> Result<PairJson, FormatError> {
    Ok(serde_json::from_str(text)?)
}

fn parts_value(parts: &[ColoredPart]) -> Value {
    serde_json::to_value(parts).expect("parts serialize")
}

fn snapshot_json(label: &str, value: &SnapshotValue) -> Value {
    match value {
        SnapshotValue::Over(op) => json!({"label": label, "kind": "overpartition", "parts": parts_value(&op.parts)}),
        SnapshotValue::Distinct(mu) => json!({
            "label": label, "kind": "distinct", "color": mu.color(), "parts": mu.parts(),
        }),
        SnapshotValue::Mono(mu) => json!({
            "label": label, "kind": "monochrome", "color": mu.color(), "parts": mu.parts(),
        }),
        SnapshotValue::Stair(nu) => json!({"label": label, "kind": "staircase", "parts": nu.parts()}),
    }
}

fn exchange_json(ev: &Redistribution) -> Value {
    json!({
        "index": ev.index,
        "upper": ev.upper,
        "lower": ev.lower,
        "before": [ev.before.0, ev.before.1],
        "after": [ev.after.0, ev.after.1],
    })
}

pub fn trace_json(trace: &StepTrace) -> Value {
    json!({
        "snapshots": trace.snapshots.iter().map(|s| snapshot_json(s.label, &s.value)).collect::<Vec<_>>(),
        "redistributions": trace.redistributions.iter().map(exchange_json).collect::<Vec<_>>(),
    })
}

/// Wraps `result` together with its trace.
pub fn with_trace(result: Value, trace: &StepTrace) -> Value {
    json!({"result": result, "trace": trace_json(trace)})
}

pub fn to_pretty(value: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn count_value(c: &BigInt) -> Value {
    match c.to_u64() {
        Some(v) => json!(v),
        None => json!(c.to_string()),
    }
}

/// Writes `n,m,x1,...,xk,count` rows in key order.
pub fn write_table_csv<'a, W: Write>(
    out: W,
    nvars: usize,
    rows: impl IntoIterator<Item = (&'a ExponentKey, BigInt)>,
) -> Result<(), FormatError> {
    let mut w = csv::Writer::from_writer(out);
    let mut header: Vec<String> = vec!["n".into(), "m".into()];
    header.extend((1..=nvars).map(|i| format!("x{i}")));
    header.push("count".into());
    w.write_record(&header)?;
    for (key, c) in rows {
        let mut rec: Vec<String> = vec![key.n.to_string(), key.m.to_string()];
        rec.extend(key.x.iter().map(|v| v.to_string()));
        rec.push(c.to_string());
        w.write_record(&rec)?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

pub fn table_json<'a>(
    meta: Value,
    rows: impl IntoIterator<Item = (&'a ExponentKey, BigInt)>,
) -> Value {
    let rows: Vec<Value> = rows
        .into_iter()
        .map(|(k, c)| json!({"n": k.n, "m": k.m, "x": k.x, "count": count_value(&c)}))
        .collect();
    json!({"table": meta, "rows": rows})
}
