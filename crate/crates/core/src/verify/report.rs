use std::io::Write;

use serde::Serialize;

use super::{BoundCheck, InequalityCheck};
use crate::error::{Error, Result};

/// One line of a verification report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportRow {
    pub check_name: String,
    pub parameter_json: String,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub passed: bool,
}

impl From<&BoundCheck> for ReportRow {
    fn from(c: &BoundCheck) -> Self {
        ReportRow {
            check_name: format!("lower_bound_{}", c.application),
            parameter_json: c.parameters.to_string(),
            lhs: c.empirical_density,
            rhs: c.coefficient,
            margin: c.margin,
            passed: c.passed,
        }
    }
}

impl ReportRow {
    pub fn from_inequality(c: &InequalityCheck, parameters: serde_json::Value) -> Self {
        ReportRow {
            check_name: c.name.clone(),
            parameter_json: parameters.to_string(),
            lhs: c.lhs,
            rhs: c.rhs,
            margin: c.margin,
            passed: c.passed,
        }
    }
}

/// Writes `rows` as CSV with a header line.
pub fn write_csv<W: Write>(out: W, rows: &[ReportRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row).map_err(|e| Error::Parse(e.to_string()))?;
    }
    w.flush().map_err(|e| Error::Parse(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_layout() {
        let c = InequalityCheck::new("demo", 2.0, 1.0);
        let row = ReportRow::from_inequality(&c, serde_json::json!({ "y": 50 }));
        let mut buf = Vec::new();
        write_csv(&mut buf, &[row]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("check_name,parameter_json,lhs,rhs,margin,passed"));
        assert_eq!(lines.next(), Some(r#"demo,"{""y"":50}",2.0,1.0,1.0,true"#));
    }
}
