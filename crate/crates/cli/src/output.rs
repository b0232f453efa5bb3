//! Report envelope and the three output formats.
//!
//! Every subcommand emits one envelope: the artifact version, the normalized
//! command, the search bounds actually used, and a list of entries. Numeric
//! values are decimal strings end to end, so nothing gets truncated on the
//! way out. Identical flags produce identical payloads.

use serde::{de::DeserializeOwned, Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// Versioned report payload shared by all subcommands.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Envelope<T> {
    pub version: String,
    pub command: String,
    pub bounds: serde_json::Map<String, serde_json::Value>,
    pub entries: Vec<T>,
}

impl<T: Serialize + DeserializeOwned> Envelope<T> {
    pub fn new(command: impl Into<String>) -> Self {
        Self {
            version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.into(),
            bounds: serde_json::Map::new(),
            entries: Vec::new(),
        }
    }

    pub fn bound(&mut self, key: &str, value: impl Into<serde_json::Value>) -> &mut Self {
        self.bounds.insert(key.to_string(), value.into());
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// One row of tabular output: CSV field list and the text-mode line.
pub trait Row {
    fn csv_header() -> &'static str;
    fn csv_fields(&self) -> Vec<String>;
    fn text_line(&self) -> String;
}

fn csv_escape(field: &str) -> String {
    if field.contains([',', '"', '\n']) {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

pub fn render<T: Row + Serialize + DeserializeOwned>(
    envelope: &Envelope<T>,
    format: Format,
) -> String {
    match format {
        Format::Json => envelope.to_json(),
        Format::Csv => {
            let mut out = String::from(T::csv_header());
            out.push('\n');
            for entry in &envelope.entries {
                let fields: Vec<String> =
                    entry.csv_fields().iter().map(|f| csv_escape(f)).collect();
                out.push_str(&fields.join(","));
                out.push('\n');
            }
            out
        }
        Format::Text => {
            let mut out = format!("# {} (v{})\n", envelope.command, envelope.version);
            if !envelope.bounds.is_empty() {
                let bounds: Vec<String> =
                    envelope.bounds.iter().map(|(k, v)| format!("{k}={v}")).collect();
                out.push_str(&format!("# bounds: {}\n", bounds.join(" ")));
            }
            if envelope.entries.is_empty() {
                out.push_str("(no entries)\n");
            }
            for entry in &envelope.entries {
                out.push_str(&entry.text_line());
                out.push('\n');
            }
            out
        }
    }
}

/// A sequence term.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeqRow {
    pub index: u64,
    pub value: String,
}

impl Row for SeqRow {
    fn csv_header() -> &'static str {
        "index,value"
    }
    fn csv_fields(&self) -> Vec<String> {
        vec![self.index.to_string(), self.value.clone()]
    }
    fn text_line(&self) -> String {
        format!("{:>4}  {}", self.index, self.value)
    }
}

/// A grid-search coincidence.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatchRow {
    pub kind: String,
    pub p: i64,
    pub q: i64,
    pub k: u64,
    pub ell: u64,
    pub value: String,
}

impl From<&mosaic_belts::MatchRecord> for MatchRow {
    fn from(record: &mosaic_belts::MatchRecord) -> Self {
        Self {
            kind: record.kind.to_string(),
            p: record.p,
            q: record.q,
            k: record.k,
            ell: record.ell,
            value: record.value.to_string(),
        }
    }
}

impl Row for MatchRow {
    fn csv_header() -> &'static str {
        "kind,p,q,k,ell,value"
    }
    fn csv_fields(&self) -> Vec<String> {
        vec![
            self.kind.clone(),
            self.p.to_string(),
            self.q.to_string(),
            self.k.to_string(),
            self.ell.to_string(),
            self.value.clone(),
        ]
    }
    fn text_line(&self) -> String {
        format!(
            "{{{},{}}}  {}_{} = reference_{} = {}",
            self.p, self.q, self.kind, self.k, self.ell, self.value
        )
    }
}

/// One quartic solution or rejected candidate.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuarticRow {
    pub case: String,
    pub fixed: i64,
    pub free_variable: String,
    pub value: String,
    /// Reference index for accepted solutions; absent on rejected rows.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ell: Option<u64>,
    /// Rejection reason; absent on accepted rows.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rejected: Option<String>,
}

impl Row for QuarticRow {
    fn csv_header() -> &'static str {
        "case,fixed,free_variable,value,ell,rejected"
    }
    fn csv_fields(&self) -> Vec<String> {
        vec![
            self.case.clone(),
            self.fixed.to_string(),
            self.free_variable.clone(),
            self.value.clone(),
            self.ell.map(|e| e.to_string()).unwrap_or_default(),
            self.rejected.clone().unwrap_or_default(),
        ]
    }
    fn text_line(&self) -> String {
        match (&self.ell, &self.rejected) {
            (Some(ell), _) => format!(
                "{} fixed={}  free={}  value={}  ell={}",
                self.case, self.fixed, self.free_variable, self.value, ell
            ),
            (None, Some(reason)) => format!(
                "{} fixed={}  free={}  value={}  rejected: {}",
                self.case, self.fixed, self.free_variable, self.value, reason
            ),
            (None, None) => unreachable!("row is either accepted or rejected"),
        }
    }
}

/// One materialized index-family member.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilyRow {
    pub case: String,
    pub q: i64,
    pub offset: u64,
    pub modulus: u64,
    pub ell: u64,
    pub value: String,
    pub p: String,
    pub reference_mosaic: bool,
}

impl Row for FamilyRow {
    fn csv_header() -> &'static str {
        "case,q,offset,modulus,ell,value,p,reference_mosaic"
    }
    fn csv_fields(&self) -> Vec<String> {
        vec![
            self.case.clone(),
            self.q.to_string(),
            self.offset.to_string(),
            self.modulus.to_string(),
            self.ell.to_string(),
            self.value.clone(),
            self.p.clone(),
            self.reference_mosaic.to_string(),
        ]
    }
    fn text_line(&self) -> String {
        let marker = if self.reference_mosaic { "  (reference mosaic)" } else { "" };
        format!(
            "{} q={} family {}+{}t  ell={}  value={}  p={}{marker}",
            self.case, self.q, self.offset, self.modulus, self.ell, self.value, self.p
        )
    }
}
