//! Serializable documents: normalized product expansions and verification
//! reports.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::error::{QkError, Result};
use crate::integer::Integer;
use crate::poset::{GrassContext, HookParams, QuantumShape};
use crate::ring::{multiply_by_hook, GradedTerm, QLinearCombination};

/// `O^λ · O^{(a\b)}` written as `Σ coeff · q^degree · O^shape` with classical shapes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductDocument {
    pub context: GrassContext,
    pub shape: Vec<i64>,
    pub hook: HookParams,
    pub terms: Vec<GradedTerm>,
}

impl ProductDocument {
    pub fn compute(lambda: &QuantumShape, hook: HookParams) -> Result<Self> {
        let product = multiply_by_hook(lambda, hook)?;
        Ok(Self {
            context: lambda.context(),
            shape: lambda.parts().to_vec(),
            hook,
            terms: product.normalize(),
        })
    }

    /// Rebuilds the expansion in the quantum-shape basis, `q^d O^μ = O^{μ[d]}`.
    pub fn expansion(&self) -> Result<QLinearCombination> {
        let mut out = QLinearCombination::zero(self.context);
        for t in &self.terms {
            let base = QuantumShape::from_partition(self.context, &t.shape)?;
            out.add_term(base.shift(t.degree), t.coeff.clone())?;
        }
        Ok(out)
    }

    /// Pretty-printed JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data serializes");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let doc: Self = serde_json::from_str(s).map_err(|e| QkError::Parse(e.to_string()))?;
        GrassContext::new(doc.context.m(), doc.context.n())?;
        Ok(doc)
    }

    pub fn to_table(&self) -> String {
        let shape = QuantumShape::new(self.context, self.shape.clone())
            .map(|s| s.to_string())
            .unwrap_or_else(|_| format!("{:?}", self.shape));
        let mut out = format!(
            "{}  shape {}  hook ({}\\{})\n",
            self.context, shape, self.hook.a, self.hook.b
        );
        let rows: Vec<[String; 3]> = self
            .terms
            .iter()
            .map(|t| {
                [
                    t.degree.to_string(),
                    t.shape.to_string(),
                    t.coeff.to_string(),
                ]
            })
            .collect();
        out.push_str(&table(&["degree", "shape", "coeff"], &rows));
        out
    }
}

fn table<const N: usize>(head: &[&str; N], rows: &[[String; N]]) -> String {
    let mut width = head.map(str::len);
    for r in rows {
        for (w, cell) in width.iter_mut().zip(r) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let mut line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&width)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        let _ = writeln!(out, "{}", padded.join("  ").trim_end());
    };
    line(head.to_vec());
    for r in rows {
        line(r.iter().map(String::as_str).collect());
    }
    out
}

/// One value of a checked quantity, labelled by how it was computed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathValue {
    pub path: String,
    #[serde(with = "crate::integer::json_int")]
    pub value: Integer,
}

/// A single checked instance: every listed path should give the same integer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseRecord {
    pub input: serde_json::Value,
    pub values: Vec<PathValue>,
    pub agree: bool,
}

impl CaseRecord {
    pub fn new(input: serde_json::Value, values: Vec<(&str, Integer)>) -> Self {
        let agree = values.windows(2).all(|w| w[0].1 == w[1].1);
        Self {
            input,
            values: values
                .into_iter()
                .map(|(path, value)| PathValue {
                    path: path.to_string(),
                    value,
                })
                .collect(),
            agree,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub cases: usize,
    pub agreed: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub params: BTreeMap<String, i64>,
    pub cases: Vec<CaseRecord>,
    pub summary: Summary,
    /// Kept out of the serialized data so reports are reproducible.
    #[serde(skip)]
    pub wall_time: Duration,
}

impl VerificationReport {
    pub fn new(
        suite: &str,
        params: BTreeMap<String, i64>,
        cases: Vec<CaseRecord>,
        wall_time: Duration,
    ) -> Self {
        let agreed = cases.iter().filter(|c| c.agree).count();
        let summary = Summary {
            cases: cases.len(),
            agreed,
            failed: cases.len() - agreed,
        };
        Self {
            suite: suite.to_string(),
            params,
            cases,
            summary,
            wall_time,
        }
    }

    pub fn passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &CaseRecord> {
        self.cases.iter().filter(|c| !c.agree)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data serializes");
        s.push('\n');
        s
    }

    /// Summary line, parameters and any failing cases.
    pub fn to_table(&self) -> String {
        let params: Vec<String> = self
            .params
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        let mut out = format!("suite {}  {}\n", self.suite, params.join(" "));
        let _ = writeln!(
            out,
            "cases {}  agreed {}  failed {}",
            self.summary.cases, self.summary.agreed, self.summary.failed
        );
        let rows: Vec<[String; 2]> = self
            .failures()
            .map(|c| {
                let vals: Vec<String> = c
                    .values
                    .iter()
                    .map(|v| format!("{}={}", v.path, v.value))
                    .collect();
                [c.input.to_string(), vals.join(" ")]
            })
            .collect();
        if !rows.is_empty() {
            out.push_str(&table(&["failing input", "values"], &rows));
        }
        out
    }
}
