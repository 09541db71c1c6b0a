//! Serde helpers that print coordinate indices 1-based.

use serde::ser::{SerializeSeq, Serializer};

pub fn one_based<S: Serializer>(items: &[usize], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(items.len()))?;
    for &i in items {
        seq.serialize_element(&(i + 1))?;
    }
    seq.end()
}

pub fn one_based_opt<S: Serializer>(items: &Option<Vec<usize>>, s: S) -> Result<S::Ok, S::Error> {
    match items {
        Some(v) => one_based(v, s),
        None => s.serialize_none(),
    }
}

pub fn one_based_nested<S: Serializer>(sets: &[Vec<usize>], s: S) -> Result<S::Ok, S::Error> {
    let shifted: Vec<Vec<usize>> = sets.iter().map(|v| v.iter().map(|i| i + 1).collect()).collect();
    s.collect_seq(shifted)
}

pub fn one_based_scalar<S: Serializer>(i: &usize, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_u64(*i as u64 + 1)
}

/// `{1, 2, 3}` style rendering of 0-based indices.
pub fn set_string(items: &[usize]) -> String {
    let parts: Vec<String> = items.iter().map(|i| (i + 1).to_string()).collect();
    format!("{{{}}}", parts.join(", "))
}
