//! Verification reports in plain text and as JSON lines.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Verified,
    CountermodelFound,
    Exhausted,
    Timeout,
    Failed,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Verified => "verified",
            Status::CountermodelFound => "countermodel-found",
            Status::Exhausted => "exhausted",
            Status::Timeout => "timeout",
            Status::Failed => "failed",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Item {
    pub name: String,
    pub status: Status,
    pub evidence: String,
}

impl Item {
    pub fn new(name: impl Into<String>, status: Status, evidence: impl Into<String>) -> Self {
        Item {
            name: name.into(),
            status,
            evidence: evidence.into(),
        }
    }

    /// `Verified` when `ok`, `Failed` otherwise.
    pub fn check(name: impl Into<String>, ok: bool, evidence: impl Into<String>) -> Self {
        Item::new(name, if ok { Status::Verified } else { Status::Failed }, evidence)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Lines,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "text" => Ok(Format::Text),
            "lines" => Ok(Format::Lines),
            other => Err(format!("unknown format {other}")),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub items: Vec<Item>,
}

impl Report {
    pub fn push(&mut self, item: Item) {
        self.items.push(item);
    }

    pub fn failures(&self) -> impl Iterator<Item = &Item> {
        self.items.iter().filter(|i| i.status == Status::Failed)
    }

    pub fn all_passed(&self) -> bool {
        self.failures().next().is_none()
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.to_text(),
            Format::Lines => self.to_lines(),
        }
    }

    /// One `status  name: evidence` line per item, evidence on one line.
    pub fn to_text(&self) -> String {
        let width = self.items.iter().map(|i| i.status.as_str().len()).max().unwrap_or(0);
        let mut out = String::new();
        for i in &self.items {
            out.push_str(&format!(
                "{:width$}  {}: {}\n",
                i.status.as_str(),
                i.name,
                i.evidence.replace('\n', " ")
            ));
        }
        let failed = self.failures().count();
        out.push_str(&format!("{} items, {} failed\n", self.items.len(), failed));
        out
    }

    pub fn to_lines(&self) -> String {
        self.items
            .iter()
            .map(|i| serde_json::to_string(i).expect("items serialize") + "\n")
            .collect()
    }

    pub fn from_lines(src: &str) -> Result<Self, serde_json::Error> {
        let items = src
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(serde_json::from_str)
            .collect::<Result<_, _>>()?;
        Ok(Report { items })
    }
}
