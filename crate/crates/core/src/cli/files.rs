//! JSON instance and result files.
//!
//! Integers are written as decimal strings so that arbitrary precision
//! survives any JSON consumer. On input, plain JSON integers are accepted too.
//! Basis columns are 1-based in files and 0-based in the library.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::arith::{IntMatrix, Integer};
use crate::cone::{ConditionReport, ShiftedConeCheck};
use crate::error::{Error, Result};
use crate::solver::{ProblemInstance, SolveOutcome};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceFile {
    pub m: usize,
    pub n: usize,
    /// Row-major entries of `A`.
    #[serde(rename = "A")]
    pub a: Vec<String>,
    pub b: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis_cols: Option<Vec<usize>>,
}

impl InstanceFile {
    pub fn from_instance(inst: &ProblemInstance) -> Self {
        InstanceFile {
            m: inst.m(),
            n: inst.n(),
            a: inst.a.entries().iter().map(ToString::to_string).collect(),
            b: inst.b.iter().map(ToString::to_string).collect(),
            basis_cols: inst.basis_cols.as_ref().map(|c| c.iter().map(|j| j + 1).collect()),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("instance serialises");
        s.push('\n');
        s
    }

    pub fn to_instance(&self) -> Result<ProblemInstance> {
        let a = parse_integers("A", &self.a)?;
        let b = parse_integers("b", &self.b)?;
        if a.len() != self.m * self.n {
            return Err(Error::Input(format!(
                "field `A`: expected m*n = {} entries, got {}",
                self.m * self.n,
                a.len()
            )));
        }
        if b.len() != self.m {
            return Err(Error::Input(format!("field `b`: expected m = {} entries, got {}", self.m, b.len())));
        }
        let a = IntMatrix::from_vec(self.m, self.n, a)?;
        let inst = ProblemInstance::new(a, b).map_err(|e| Error::Input(format!("fields `m`/`n`: {e}")))?;
        match &self.basis_cols {
            None => Ok(inst),
            Some(cols) => {
                if cols.iter().any(|&c| c == 0 || c > self.n) {
                    return Err(Error::Input(format!("field `basis_cols`: indices must be in 1..={}", self.n)));
                }
                Ok(inst.with_basis_cols(cols.iter().map(|c| c - 1).collect()))
            }
        }
    }

    /// Parses JSON text; errors carry the line/column or the offending field.
    pub fn parse(text: &str) -> Result<Self> {
        let value: Value = serde_json::from_str(text)
            .map_err(|e| Error::Input(format!("line {} column {}: {e}", e.line(), e.column())))?;
        let obj = value.as_object().ok_or_else(|| Error::Input("instance must be a JSON object".into()))?;
        let count = |key: &str| -> Result<usize> {
            obj.get(key)
                .and_then(Value::as_u64)
                .map(|v| v as usize)
                .ok_or_else(|| Error::Input(format!("field `{key}`: missing or not a nonnegative integer")))
        };
        let list = |key: &str| -> Result<Vec<String>> {
            let arr = obj
                .get(key)
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Input(format!("field `{key}`: missing or not an array")))?;
            arr.iter()
                .enumerate()
                .map(|(i, v)| integer_text(v).ok_or_else(|| Error::Input(format!("field `{key}`[{i}]: not an integer"))))
                .collect()
        };
        let basis_cols = match obj.get("basis_cols") {
            None | Some(Value::Null) => None,
            Some(Value::Array(arr)) => Some(
                arr.iter()
                    .enumerate()
                    .map(|(i, v)| {
                        v.as_u64()
                            .map(|c| c as usize)
                            .ok_or_else(|| Error::Input(format!("field `basis_cols`[{i}]: not a positive integer")))
                    })
                    .collect::<Result<_>>()?,
            ),
            Some(_) => return Err(Error::Input("field `basis_cols`: not an array".into())),
        };
        let file = InstanceFile { m: count("m")?, n: count("n")?, a: list("A")?, b: list("b")?, basis_cols };
        file.to_instance()?;
        Ok(file)
    }
}

fn integer_text(v: &Value) -> Option<String> {
    match v {
        Value::String(s) => s.trim().parse::<Integer>().ok().map(|i| i.to_string()),
        Value::Number(n) if n.is_i64() || n.is_u64() => Some(n.to_string()),
        _ => None,
    }
}

pub fn parse_integers(field: &str, items: &[String]) -> Result<Vec<Integer>> {
    items
        .iter()
        .enumerate()
        .map(|(i, s)| s.trim().parse::<Integer>().map_err(|_| Error::Input(format!("field `{field}`[{i}]: `{s}` is not an integer"))))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FacetMarginJson {
    /// 1-based facet index.
    pub facet: usize,
    pub lhs_sq: String,
    pub rhs_sq: String,
    pub lhs_nonnegative: bool,
    pub rhs_nonnegative: bool,
    pub passes: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionJson {
    pub theorem1_holds: bool,
    pub per_facet_margins: Vec<FacetMarginJson>,
    pub t_squared: String,
}

impl From<&ConditionReport> for ConditionJson {
    fn from(r: &ConditionReport) -> Self {
        ConditionJson {
            theorem1_holds: r.holds,
            per_facet_margins: r.per_facet.iter().map(facet_json).collect(),
            t_squared: r.t_squared.to_string(),
        }
    }
}

fn facet_json(f: &crate::cone::FacetMargin) -> FacetMarginJson {
    FacetMarginJson {
        facet: f.facet + 1,
        lhs_sq: f.lhs_sq.to_string(),
        rhs_sq: f.rhs_sq.to_string(),
        lhs_nonnegative: f.lhs_nonnegative,
        rhs_nonnegative: f.rhs_nonnegative,
        passes: f.passes,
    }
}

/// Single-row report: Brauer bound of the (basis-first) coefficient vector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingleRowJson {
    #[serde(rename = "G")]
    pub g: Option<String>,
    /// `b > G(A)`; false when `G` is undefined (non-positive entries or gcd > 1).
    pub applies: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoRowJson {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eq12_holds: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub not_applicable: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub margins: Option<ConditionJson>,
}

impl From<&ShiftedConeCheck> for TwoRowJson {
    fn from(c: &ShiftedConeCheck) -> Self {
        match c {
            ShiftedConeCheck::Applicable(r) => {
                TwoRowJson { eq12_holds: Some(r.holds), not_applicable: None, margins: Some(ConditionJson::from(r)) }
            }
            ShiftedConeCheck::NotApplicable => TwoRowJson { eq12_holds: None, not_applicable: Some(true), margins: None },
        }
    }
}

pub const INTEGER_ONLY_NOTE: &str =
    "integer solution with negative entries; this does not show that no nonnegative solution exists";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultFile {
    pub status: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    /// 1-based basis columns used.
    pub basis_cols: Vec<usize>,
    pub condition: ConditionJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m1: Option<SingleRowJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m2: Option<TwoRowJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

impl ResultFile {
    pub fn status_for(outcome: &SolveOutcome) -> &'static str {
        match outcome {
            SolveOutcome::IntegerInfeasible => "infeasible",
            SolveOutcome::Nonnegative(_) => "nonnegative",
            SolveOutcome::IntegerOnly(..) => "integer_only",
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("result serialises");
        s.push('\n');
        s
    }

    pub fn solution(&self) -> Result<Option<Vec<Integer>>> {
        self.x.as_ref().map(|x| parse_integers("x", x)).transpose()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ints;

    #[test]
    fn instance_round_trip() {
        let inst = ProblemInstance::new(IntMatrix::from_rows(&[[5, 2, 3]]), ints(&[4])).unwrap().with_basis_cols(vec![0]);
        let file = InstanceFile::from_instance(&inst);
        let text = file.to_json();
        assert!(text.contains("\"A\": [\n    \"5\""));
        let back = InstanceFile::parse(&text).unwrap();
        assert_eq!(back, file);
        assert_eq!(back.to_instance().unwrap(), inst);
    }

    #[test]
    fn accepts_plain_numbers_and_big_strings() {
        let text = r#"{"m": 1, "n": 2, "A": [2, "123456789012345678901234567890"], "b": ["7"]}"#;
        let inst = InstanceFile::parse(text).unwrap().to_instance().unwrap();
        assert_eq!(inst.a.get(0, 1).to_string(), "123456789012345678901234567890");
    }

    #[test]
    fn structured_errors() {
        let e = InstanceFile::parse("{\n  \"m\": 1,\n  \"n\": \n}").unwrap_err().to_string();
        assert!(e.contains("line 4 column 1"), "{e}");
        let e = InstanceFile::parse(r#"{"m": 1, "n": 3, "A": ["1", "x", "2"], "b": ["1"]}"#).unwrap_err().to_string();
        assert!(e.contains("`A`[1]"), "{e}");
        let e = InstanceFile::parse(r#"{"m": 1, "n": 3, "A": ["1", "2"], "b": ["1"]}"#).unwrap_err().to_string();
        assert!(e.contains("field `A`"), "{e}");
        let e = InstanceFile::parse(r#"{"m": 1, "n": 3, "A": ["1", "2", "3"], "b": ["1"], "basis_cols": [4]}"#)
            .unwrap_err()
            .to_string();
        assert!(e.contains("basis_cols"), "{e}");
        let e = InstanceFile::parse(r#"{"n": 3, "A": [], "b": []}"#).unwrap_err().to_string();
        assert!(e.contains("field `m`"), "{e}");
    }
}
