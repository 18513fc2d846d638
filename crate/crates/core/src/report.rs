//! Machine-readable outcome of one verification check.

use std::fmt::Write as _;

use serde::Serialize;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    PassUpToTruncation,
}

impl Status {
    pub fn passed(self) -> bool {
        self != Status::Fail
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::PassUpToTruncation => "pass-up-to-truncation",
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Params {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub i: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub j: Option<i64>,
    /// Largest conformal weight examined.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_weight: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max: Option<u32>,
}

impl Params {
    pub fn k(k: i64) -> Self {
        Params {
            k: Some(k),
            ..Params::default()
        }
    }

    pub fn with_i(mut self, i: i64) -> Self {
        self.i = Some(i);
        self
    }

    pub fn with_j(mut self, j: i64) -> Self {
        self.j = Some(j);
        self
    }

    pub fn with_max_weight(mut self, w: i64) -> Self {
        self.max_weight = Some(w);
        self
    }

    pub fn with_max(mut self, m: u32) -> Self {
        self.max = Some(m);
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckItem {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub check: String,
    pub params: Params,
    pub status: Status,
    /// The identity or statement being verified.
    pub identity: String,
    pub items: Vec<CheckItem>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub data: Option<serde_json::Value>,
}

impl Report {
    pub fn new(check: &str, params: Params, identity: &str) -> Self {
        Report {
            check: check.to_string(),
            params,
            status: Status::Pass,
            identity: identity.to_string(),
            items: Vec::new(),
            witness: None,
            data: None,
        }
    }

    pub fn item(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) -> &mut Self {
        self.items.push(CheckItem {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
        self
    }

    pub fn with_data(mut self, data: serde_json::Value) -> Self {
        self.data = Some(data);
        self
    }

    /// Fixes the status from the items; a failure names its first failing
    /// item as the witness.
    pub fn finish(mut self, truncated: bool) -> Self {
        match self.items.iter().find(|it| !it.passed) {
            Some(bad) => {
                self.status = Status::Fail;
                self.witness = Some(format!("{}: {}", bad.name, bad.detail));
            }
            None if self.items.is_empty() => {
                self.status = Status::Fail;
                self.witness = Some("no items were checked".to_string());
            }
            None => {
                self.status = if truncated {
                    Status::PassUpToTruncation
                } else {
                    Status::Pass
                };
                self.witness = None;
            }
        }
        self
    }

    pub fn passed(&self) -> bool {
        self.status.passed()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }

    /// Human-readable rendering, one line per item.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let mut params = Vec::new();
        if let Some(k) = self.params.k {
            params.push(format!("k={k}"));
        }
        if let Some(i) = self.params.i {
            params.push(format!("i={i}"));
        }
        if let Some(j) = self.params.j {
            params.push(format!("j={j}"));
        }
        if let Some(w) = self.params.max_weight {
            params.push(format!("w<={w}"));
        }
        if let Some(m) = self.params.max {
            params.push(format!("max={m}"));
        }
        let _ = writeln!(out, "{:<22} {:<24} {}", self.check, params.join(" "), self.status.as_str());
        for it in &self.items {
            let mark = if it.passed { "ok" } else { "FAIL" };
            let _ = writeln!(out, "    {mark:<5}{}  {}", it.name, it.detail);
        }
        if let Some(w) = &self.witness {
            let _ = writeln!(out, "    witness: {w}");
        }
        out
    }
}
