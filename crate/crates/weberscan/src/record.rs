//! Output records and their JSONL and CSV encodings.

use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::algebra::ModPoly;
use crate::{Error, Result};

/// Factors of one component of a weber report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentFactors {
    pub divisor: u64,
    pub factors: Vec<Vec<u64>>,
}

/// One result line. Optional fields are omitted when absent; field order
/// is fixed by declaration order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub kind: String,
    #[serde(rename = "N")]
    pub n: u64,
    pub p: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<u64>,
    /// coefficient arrays, ascending degree
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub factors: Option<Vec<Vec<u64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub genus_exponent: Option<u64>,
    #[serde(rename = "d_K", default, skip_serializing_if = "Option::is_none")]
    pub d_k: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s_p: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub totally_split: Option<bool>,
    #[serde(rename = "rho_N", default, skip_serializing_if = "Option::is_none")]
    pub rho_n: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub w_rank: Option<u64>,
    #[serde(rename = "reduced_N", default, skip_serializing_if = "Option::is_none")]
    pub reduced_n: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub components: Option<Vec<ComponentFactors>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdict: Option<String>,
    /// free-form value, e.g. a Chevalley order in decimal
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
    /// error tag and message for math-level failures
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(default)]
    pub caveats: Vec<String>,
    #[serde(default)]
    pub ms: u64,
}

impl OutputRecord {
    pub fn new(kind: &str, n: u64, p: u64) -> Self {
        OutputRecord { kind: kind.to_string(), n, p, ..Default::default() }
    }

    pub fn from_error(kind: &str, n: u64, p: u64, e: &Error) -> Self {
        let mut r = OutputRecord::new(kind, n, p);
        r.error = Some(format!("{}: {e}", e.tag()));
        r
    }

    pub fn is_error(&self) -> bool {
        self.error.is_some()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("records always serialize")
    }

    pub fn from_json(line: &str) -> Result<Self> {
        Ok(serde_json::from_str(line)?)
    }
}

pub fn factors_to_arrays(factors: &[ModPoly]) -> Vec<Vec<u64>> {
    factors.iter().map(|f| f.coeffs().to_vec()).collect()
}

/// `x + 5` style rendering of a coefficient array, without the modulus.
pub fn pretty_poly(coeffs: &[u64]) -> String {
    let mut terms = Vec::new();
    for (i, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => "x".to_string(),
            _ => format!("x^{i}"),
        };
        terms.push(match (c, i) {
            (_, 0) => c.to_string(),
            (1, _) => mono,
            _ => format!("{c}*{mono}"),
        });
    }
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}

pub fn write_jsonl<W: Write>(out: &mut W, rec: &OutputRecord) -> Result<()> {
    writeln!(out, "{}", rec.to_json())?;
    Ok(())
}

pub fn read_jsonl<R: BufRead>(input: R) -> Result<Vec<OutputRecord>> {
    let mut out = Vec::new();
    for line in input.lines() {
        let line = line?;
        if !line.trim().is_empty() {
            out.push(OutputRecord::from_json(&line)?);
        }
    }
    Ok(out)
}

/// CSV columns. Nested values are JSON text; `pretty` is derived from
/// `factors` and ignored when reading.
pub const CSV_HEADER: &[&str] = &[
    "kind",
    "N",
    "p",
    "c",
    "factors",
    "pretty",
    "rank",
    "genus_exponent",
    "d_K",
    "s_p",
    "totally_split",
    "rho_N",
    "w_rank",
    "reduced_N",
    "components",
    "verdict",
    "value",
    "error",
    "caveats",
    "ms",
];

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(|x| x.to_string()).unwrap_or_default()
}

fn opt_json<T: Serialize>(v: &Option<T>) -> String {
    v.as_ref().map(|x| serde_json::to_string(x).expect("serializable")).unwrap_or_default()
}

pub fn csv_row(rec: &OutputRecord) -> Vec<String> {
    let pretty = rec
        .factors
        .as_ref()
        .map(|fs| fs.iter().map(|f| pretty_poly(f)).collect::<Vec<_>>().join("; "))
        .unwrap_or_default();
    vec![
        rec.kind.clone(),
        rec.n.to_string(),
        rec.p.to_string(),
        opt(&rec.c),
        opt_json(&rec.factors),
        pretty,
        opt(&rec.rank),
        opt(&rec.genus_exponent),
        opt(&rec.d_k),
        opt(&rec.s_p),
        opt(&rec.totally_split),
        opt(&rec.rho_n),
        opt(&rec.w_rank),
        opt(&rec.reduced_n),
        opt_json(&rec.components),
        opt(&rec.verdict),
        opt(&rec.value),
        opt(&rec.error),
        serde_json::to_string(&rec.caveats).expect("serializable"),
        rec.ms.to_string(),
    ]
}

fn bad(field: &str, v: &str) -> Error {
    Error::InvalidInput(format!("bad CSV value {v:?} in column {field}"))
}

fn parse_opt<T: std::str::FromStr>(field: &str, v: &str) -> Result<Option<T>> {
    if v.is_empty() {
        Ok(None)
    } else {
        v.parse().map(Some).map_err(|_| bad(field, v))
    }
}

fn parse_opt_json<T: serde::de::DeserializeOwned>(v: &str) -> Result<Option<T>> {
    if v.is_empty() {
        Ok(None)
    } else {
        Ok(Some(serde_json::from_str(v)?))
    }
}

pub fn from_csv_row(row: &csv::StringRecord) -> Result<OutputRecord> {
    if row.len() != CSV_HEADER.len() {
        return Err(Error::InvalidInput(format!("CSV row has {} columns", row.len())));
    }
    let g = |i: usize| &row[i];
    let text = |i: usize| (!g(i).is_empty()).then(|| g(i).to_string());
    Ok(OutputRecord {
        kind: g(0).to_string(),
        n: g(1).parse().map_err(|_| bad("N", g(1)))?,
        p: g(2).parse().map_err(|_| bad("p", g(2)))?,
        c: parse_opt("c", g(3))?,
        factors: parse_opt_json(g(4))?,
        rank: parse_opt("rank", g(6))?,
        genus_exponent: parse_opt("genus_exponent", g(7))?,
        d_k: parse_opt("d_K", g(8))?,
        s_p: parse_opt("s_p", g(9))?,
        totally_split: parse_opt("totally_split", g(10))?,
        rho_n: parse_opt("rho_N", g(11))?,
        w_rank: parse_opt("w_rank", g(12))?,
        reduced_n: parse_opt("reduced_N", g(13))?,
        components: parse_opt_json(g(14))?,
        verdict: text(15),
        value: text(16),
        error: text(17),
        caveats: serde_json::from_str(g(18))?,
        ms: g(19).parse().map_err(|_| bad("ms", g(19)))?,
    })
}

/// Writes the header on creation, then one row per record.
pub struct CsvSink<W: Write> {
    inner: csv::Writer<W>,
}

impl<W: Write> CsvSink<W> {
    pub fn new(out: W) -> Result<Self> {
        let mut inner = csv::Writer::from_writer(out);
        inner.write_record(CSV_HEADER)?;
        Ok(CsvSink { inner })
    }

    pub fn write(&mut self, rec: &OutputRecord) -> Result<()> {
        self.inner.write_record(csv_row(rec))?;
        Ok(())
    }

    pub fn flush(&mut self) -> Result<()> {
        self.inner.flush()?;
        Ok(())
    }
}

pub fn read_csv<R: std::io::Read>(input: R) -> Result<Vec<OutputRecord>> {
    let mut rdr = csv::Reader::from_reader(input);
    let mut out = Vec::new();
    for row in rdr.records() {
        out.push(from_csv_row(&row?)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_order_and_omission() {
        let mut r = OutputRecord::new("torsion", 5, 11);
        r.c = Some(2);
        r.factors = Some(vec![vec![7, 1], vec![8, 1]]);
        assert_eq!(
            r.to_json(),
            r#"{"kind":"torsion","N":5,"p":11,"c":2,"factors":[[7,1],[8,1]],"caveats":[],"ms":0}"#
        );
    }

    #[test]
    fn pretty_polys() {
        assert_eq!(pretty_poly(&[5, 1]), "x + 5");
        assert_eq!(pretty_poly(&[2, 1, 1]), "x^2 + x + 2");
        assert_eq!(pretty_poly(&[3, 0, 2, 1]), "x^3 + 2*x^2 + 3");
    }
}
