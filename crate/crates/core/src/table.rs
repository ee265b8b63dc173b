//! Multigraded Betti tables and their JSON form.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::monomial::{Monomial, VariableSet};

/// Nonzero multigraded Betti numbers `β_{i,l}`; zero entries are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiTable {
    pub field: FieldSpec,
    entries: BTreeMap<(usize, Monomial), u64>,
}

#[derive(Debug, Serialize, Deserialize)]
struct TableJson {
    field: FieldSpec,
    pd: usize,
    totals: Vec<u64>,
    entries: Vec<EntryJson>,
}

#[derive(Debug, Serialize, Deserialize)]
struct EntryJson {
    hdeg: usize,
    mdeg: Monomial,
    count: u64,
}

impl BettiTable {
    pub fn new(field: FieldSpec) -> Self {
        BettiTable {
            field,
            entries: BTreeMap::new(),
        }
    }

    pub fn get(&self, hdeg: usize, mdeg: &Monomial) -> u64 {
        self.entries.get(&(hdeg, mdeg.clone())).copied().unwrap_or(0)
    }

    pub fn add(&mut self, hdeg: usize, mdeg: Monomial, count: u64) {
        if count > 0 {
            *self.entries.entry((hdeg, mdeg)).or_insert(0) += count;
        }
    }

    /// Entries sorted by `(hdeg, exponent vector)`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, &Monomial, u64)> {
        self.entries.iter().map(|((i, l), &c)| (*i, l, c))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Largest homological degree with a nonzero entry; 0 for an empty table.
    pub fn pd(&self) -> usize {
        self.entries.keys().map(|(i, _)| *i).max().unwrap_or(0)
    }

    /// `β_i` for `i = 0..=pd`; empty for an empty table.
    pub fn totals(&self) -> Vec<u64> {
        if self.entries.is_empty() {
            return Vec::new();
        }
        let mut totals = vec![0; self.pd() + 1];
        for ((i, _), c) in &self.entries {
            totals[*i] += c;
        }
        totals
    }

    /// `Σ_k β_{k,l}` for each multidegree `l` that occurs.
    pub fn sum_by_multidegree(&self) -> BTreeMap<Monomial, u64> {
        let mut out = BTreeMap::new();
        for ((_, l), c) in &self.entries {
            *out.entry(l.clone()).or_insert(0) += c;
        }
        out
    }

    /// Same entries regardless of the field label.
    pub fn same_numbers(&self, other: &BettiTable) -> bool {
        self.entries == other.entries
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self.to_json()).expect("table serializes")
    }

    fn to_json(&self) -> TableJson {
        TableJson {
            field: self.field,
            pd: self.pd(),
            totals: self.totals(),
            entries: self
                .entries()
                .map(|(hdeg, mdeg, count)| EntryJson {
                    hdeg,
                    mdeg: mdeg.clone(),
                    count,
                })
                .collect(),
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("table serializes")
    }

    /// Parses the JSON form, checking that `pd` and `totals` agree with the entries.
    pub fn from_json_str(s: &str) -> Result<Self> {
        let raw: TableJson = serde_json::from_str(s).map_err(|e| Error::Invalid(e.to_string()))?;
        let mut table = BettiTable::new(raw.field);
        let width = raw.entries.first().map(|e| e.mdeg.nvars());
        for e in raw.entries {
            if Some(e.mdeg.nvars()) != width {
                return Err(Error::Invalid("entries have different numbers of variables".into()));
            }
            if e.count == 0 {
                return Err(Error::Invalid("zero entries are not stored".into()));
            }
            if table.get(e.hdeg, &e.mdeg) != 0 {
                return Err(Error::Invalid("duplicate entry".into()));
            }
            table.add(e.hdeg, e.mdeg, e.count);
        }
        if table.pd() != raw.pd || table.totals() != raw.totals {
            return Err(Error::Invalid("pd or totals disagree with the entries".into()));
        }
        Ok(table)
    }

    /// Human-readable listing, one `beta_{i,l} = c` line per entry after a summary.
    pub fn to_text(&self, vars: &VariableSet) -> String {
        let mut out = String::new();
        let totals: Vec<String> = self.totals().iter().map(u64::to_string).collect();
        let _ = writeln!(out, "field: {}", self.field);
        let _ = writeln!(out, "pd: {}", self.pd());
        let _ = writeln!(out, "totals: ({})", totals.join(", "));
        for (i, l, c) in self.entries() {
            let _ = writeln!(out, "beta_{{{},{}}} = {}", i, vars.display(l), c);
        }
        out
    }
}
