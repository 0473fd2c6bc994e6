//! Count tables with exact decimal rendering as CSV or JSON.

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::Result;
use crate::pipeline::{graph_table, CoreStage, Timings};

/// A named table of exact integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTable {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<BigInt>>,
}

#[derive(Serialize)]
struct Rendered<'a> {
    name: &'a str,
    columns: &'a [String],
    rows: Vec<Vec<String>>,
}

impl CountTable {
    pub fn new(name: &str, columns: &[&str]) -> CountTable {
        CountTable {
            name: name.into(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    fn decimal_rows(&self) -> Vec<Vec<String>> {
        self.rows
            .iter()
            .map(|r| r.iter().map(BigInt::to_string).collect())
            .collect()
    }

    /// Header row then data rows, comma-separated, each line ending in LF.
    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in self.decimal_rows() {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }

    /// `{"name", "columns", "rows"}` with every value a decimal string.
    pub fn to_json(&self) -> String {
        let rendered = Rendered {
            name: &self.name,
            columns: &self.columns,
            rows: self.decimal_rows(),
        };
        serde_json::to_string_pretty(&rendered).expect("strings always serialize")
    }
}

/// Smallest vertex count of a 4-regular simple graph.
pub const FIRST_ROW: u32 = 6;

/// Labelled graphs: `n, g_n, c_n, t_n` for `6 <= n <= max_n`.
pub fn graphs(max_n: u32, slack: u32, timings: &mut Timings) -> Result<CountTable> {
    let mut table = CountTable::new(
        "labelled 4-regular planar graphs",
        &["n", "g_n", "c_n", "t_n"],
    );
    if max_n < FIRST_ROW {
        return Ok(table);
    }
    let stage = CoreStage::run(max_n, slack, timings)?;
    let (gc, tc) = graph_table(&stage, timings)?;
    for n in FIRST_ROW..=max_n {
        let i = n as usize;
        table.rows.push(vec![
            n.into(),
            gc.g[i].clone(),
            gc.c[i].clone(),
            tc.t_n[i].clone(),
        ]);
    }
    Ok(table)
}

/// Rooted 3-connected maps: `k, l, t_{k,l}` for `k >= 2` and `k + l <= max_degree`.
pub fn maps3c(max_degree: u32, slack: u32, timings: &mut Timings) -> Result<CountTable> {
    let mut table = CountTable::new("rooted 3-connected 4-regular maps", &["k", "l", "t_kl"]);
    if max_degree < 2 {
        return Ok(table);
    }
    let stage = CoreStage::run(max_degree, slack, timings)?;
    for k in 2..=max_degree {
        for l in 0..=max_degree - k {
            table
                .rows
                .push(vec![k.into(), l.into(), stage.counts.t(k, l)]);
        }
    }
    Ok(table)
}

/// Simple maps: `n, t_{n,0}, M_n` for `6 <= n <= max_n`.
pub fn simple_maps(max_n: u32, slack: u32, timings: &mut Timings) -> Result<CountTable> {
    let mut table = CountTable::new("rooted simple 4-regular maps", &["n", "t_n0", "M_n"]);
    if max_n < FIRST_ROW {
        return Ok(table);
    }
    let stage = CoreStage::run(max_n, slack, timings)?;
    let m = stage.simple_maps(timings)?.counts()?;
    for n in FIRST_ROW..=max_n {
        let i = n as usize;
        table
            .rows
            .push(vec![n.into(), stage.counts.t_n0[i].clone(), m[i].clone()]);
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> CountTable {
        let mut t = CountTable::new("sample", &["n", "x"]);
        t.rows.push(vec![
            6.into(),
            "123456789012345678901234567890".parse().unwrap(),
        ]);
        t
    }

    #[test]
    fn csv_layout() {
        assert_eq!(sample().to_csv(), "n,x\n6,123456789012345678901234567890\n");
    }

    #[test]
    fn json_values_are_strings_and_match_csv() {
        let t = sample();
        let v: serde_json::Value = serde_json::from_str(&t.to_json()).unwrap();
        assert_eq!(v["name"], "sample");
        assert_eq!(v["columns"], serde_json::json!(["n", "x"]));
        assert_eq!(
            v["rows"],
            serde_json::json!([["6", "123456789012345678901234567890"]])
        );
        let csv_rows: Vec<Vec<String>> = t
            .to_csv()
            .lines()
            .skip(1)
            .map(|l| l.split(',').map(String::from).collect())
            .collect();
        assert_eq!(serde_json::to_value(csv_rows).unwrap(), v["rows"]);
    }

    #[test]
    fn small_bounds_give_empty_tables() {
        let mut timings = Timings::default();
        assert!(graphs(5, 4, &mut timings).unwrap().rows.is_empty());
        assert!(simple_maps(5, 4, &mut timings).unwrap().rows.is_empty());
    }

    #[test]
    fn first_graph_row() {
        let t = graphs(6, 4, &mut Timings::default()).unwrap();
        let expected: Vec<BigInt> = [6, 15, 15, 15].into_iter().map(BigInt::from).collect();
        assert_eq!(t.rows, vec![expected]);
    }
}
