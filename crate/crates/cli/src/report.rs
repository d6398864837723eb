//! The ConnectedReport: the bundle of invariants the CLI emits, with
//! canonical JSON and a plain-text rendering.

use iota_forge_core::ufu_algebra::GradedModule;
use iota_forge_core::{CorrectionTerms, Grading};
use serde_json::{json, Map, Value};
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Text,
}

/// Everything the invariants pipeline knows about one ι-complex.
#[derive(Debug, Clone)]
pub struct ConnectedReport {
    pub d_lower: Grading,
    pub d: Grading,
    pub d_upper: Grading,
    pub omega: u32,
    pub towers: Vec<(Grading, u32)>,
    pub certificate: bool,
    pub timings: Option<BTreeMap<String, u128>>,
}

impl ConnectedReport {
    pub fn new(ct: CorrectionTerms, conn: &GradedModule, certificate: bool) -> Self {
        ConnectedReport {
            d_lower: ct.d_lower,
            d: ct.d,
            d_upper: ct.d_upper,
            omega: conn.max_tower_length(),
            towers: conn.towers().to_vec(),
            certificate,
            timings: None,
        }
    }

    pub fn to_json(&self) -> Value {
        let towers: Vec<Value> = self
            .towers
            .iter()
            .map(|&(top, len)| {
                let mut m = Map::new();
                m.insert("len".into(), json!(len));
                m.insert("top".into(), crate::formats::grading_to_json(top));
                Value::Object(m)
            })
            .collect();
        let mut m = Map::new();
        m.insert("certificate".into(), json!(self.certificate));
        m.insert("d".into(), crate::formats::grading_to_json(self.d));
        m.insert("d_lower".into(), crate::formats::grading_to_json(self.d_lower));
        m.insert("d_upper".into(), crate::formats::grading_to_json(self.d_upper));
        m.insert("omega".into(), json!(self.omega));
        m.insert("towers".into(), Value::Array(towers));
        if let Some(t) = &self.timings {
            let mut tm = Map::new();
            for (k, v) in t {
                tm.insert(k.clone(), json!(v));
            }
            m.insert("timings_ms".into(), Value::Object(tm));
        }
        Value::Object(m)
    }

    pub fn render(&self, format: ReportFormat) -> String {
        match format {
            ReportFormat::Json => {
                let mut s =
                    serde_json::to_string_pretty(&self.to_json()).expect("serializable");
                s.push('\n');
                s
            }
            ReportFormat::Text => {
                let mut s = String::new();
                s.push_str(&format!("d_lower = {}\n", self.d_lower));
                s.push_str(&format!("d = {}\n", self.d));
                s.push_str(&format!("d_upper = {}\n", self.d_upper));
                s.push_str(&format!("omega = {}\n", self.omega));
                if self.towers.is_empty() {
                    s.push_str("towers = 0\n");
                } else {
                    let parts: Vec<String> = self
                        .towers
                        .iter()
                        .map(|(top, len)| format!("T_({top})({len})"))
                        .collect();
                    s.push_str(&format!("towers = {}\n", parts.join(" + ")));
                }
                s.push_str(&format!("certificate = {}\n", self.certificate));
                if let Some(t) = &self.timings {
                    for (k, v) in t {
                        s.push_str(&format!("timing_ms.{k} = {v}\n"));
                    }
                }
                s
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_has_sorted_keys_and_rational_strings() {
        let report = ConnectedReport {
            d_lower: Grading::new(-9, 4),
            d: Grading::new(-1, 4),
            d_upper: Grading::new(-1, 4),
            omega: 1,
            towers: vec![(Grading::new(-5, 4), 1)],
            certificate: true,
            timings: None,
        };
        let s = report.render(ReportFormat::Json);
        let c = s.find("\"certificate\"").unwrap();
        let d = s.find("\"d\"").unwrap();
        let dl = s.find("\"d_lower\"").unwrap();
        let om = s.find("\"omega\"").unwrap();
        assert!(c < d && d < dl && dl < om);
        assert!(s.contains("\"-9/4\""));
    }

    #[test]
    fn integer_gradings_are_bare_numbers() {
        let report = ConnectedReport {
            d_lower: Grading::from_int(-2),
            d: Grading::from_int(0),
            d_upper: Grading::from_int(0),
            omega: 1,
            towers: vec![(Grading::from_int(-1), 1)],
            certificate: true,
            timings: None,
        };
        let v = report.to_json();
        assert_eq!(v["d_lower"], json!(-2));
        assert_eq!(v["towers"][0]["top"], json!(-1));
    }
}
