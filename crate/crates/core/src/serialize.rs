//! JSON, CSV and plain-text encodings of triangles, sign matrices and
//! verification reports.
//!
//! JSON: `{"type":"triangle","rows":[[..],..]}` (top row first),
//! `{"type":"matrix","entries":[[..],..]}` (row-major) and
//! `{"type":"report",...}`. Integers in reports are written as JSON numbers of
//! arbitrary length. CSV covers matrices (one row per line) and report detail
//! tables. Text is whitespace-separated rows.

use std::str::FromStr;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::sign_matrix::SignMatrix;
use crate::triangle::TriangularArray;
use crate::verify::VerificationReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Format {
    Json,
    Csv,
    Text,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "text" => Ok(Format::Text),
            _ => Err(Error::invalid(format!("unknown format {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Triangle(TriangularArray),
    Matrix(SignMatrix),
    Report(VerificationReport),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ValueKind {
    Triangle,
    Matrix,
    Report,
}

impl Value {
    pub fn kind(&self) -> ValueKind {
        match self {
            Value::Triangle(_) => ValueKind::Triangle,
            Value::Matrix(_) => ValueKind::Matrix,
            Value::Report(_) => ValueKind::Report,
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TriangleDoc {
    rows: Vec<Vec<i64>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixDoc {
    entries: Vec<Vec<i8>>,
}

fn tagged(tag: &str, body: serde_json::Value) -> serde_json::Value {
    let mut doc = serde_json::Map::new();
    doc.insert("type".into(), tag.into());
    if let serde_json::Value::Object(fields) = body {
        doc.extend(fields);
    }
    serde_json::Value::Object(doc)
}

pub fn serialize(value: &Value, format: Format) -> Result<Vec<u8>> {
    match format {
        Format::Json => {
            let doc = match value {
                Value::Triangle(t) => tagged("triangle", serde_json::json!({ "rows": t.rows() })),
                Value::Matrix(m) => tagged("matrix", serde_json::json!({ "entries": m.to_rows() })),
                Value::Report(r) => tagged(
                    "report",
                    serde_json::to_value(r).map_err(|e| Error::Internal(e.to_string()))?,
                ),
            };
            let mut out = serde_json::to_vec(&doc).map_err(|e| Error::Internal(e.to_string()))?;
            out.push(b'\n');
            Ok(out)
        }
        Format::Csv => {
            let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
            match value {
                Value::Triangle(_) => {
                    return Err(Error::invalid("triangles have no CSV encoding"));
                }
                Value::Matrix(m) => {
                    for r in 0..m.rows() {
                        w.write_record(m.row(r).iter().map(|v| v.to_string()))
                            .map_err(|e| Error::Internal(e.to_string()))?;
                    }
                }
                Value::Report(r) => {
                    w.write_record(["check", "expected", "actual"])
                        .map_err(|e| Error::Internal(e.to_string()))?;
                    for d in &r.details {
                        w.write_record([d.check.clone(), d.expected.to_string(), d.actual.to_string()])
                            .map_err(|e| Error::Internal(e.to_string()))?;
                    }
                }
            }
            w.into_inner().map_err(|e| Error::Internal(e.to_string()))
        }
        Format::Text => Ok(match value {
            Value::Triangle(t) => rows_text(t.rows()),
            Value::Matrix(m) => rows_text(&m.to_rows()),
            Value::Report(r) => r.to_string(),
        }
        .into_bytes()),
    }
}

fn rows_text<T: ToString>(rows: &[Vec<T>]) -> String {
    let mut s = String::new();
    for r in rows {
        let cells: Vec<String> = r.iter().map(T::to_string).collect();
        s.push_str(&cells.join(" "));
        s.push('\n');
    }
    s
}

pub fn deserialize(bytes: &[u8], kind: ValueKind, format: Format) -> Result<Value> {
    let text = std::str::from_utf8(bytes).map_err(|e| {
        Error::parse(format!("byte {}", e.valid_up_to() + 1), "input is not UTF-8")
    })?;
    match format {
        Format::Json => from_json(text, kind),
        Format::Csv => match kind {
            ValueKind::Matrix => matrix_from_rows(parse_csv(text)?, "line"),
            _ => Err(Error::invalid("only matrices are read from CSV")),
        },
        Format::Text => {
            let rows = parse_text(text)?;
            match kind {
                ValueKind::Triangle => triangle_from_rows(rows),
                ValueKind::Matrix => matrix_from_rows(
                    rows.into_iter()
                        .enumerate()
                        .map(|(i, r)| (i + 1, r))
                        .collect(),
                    "line",
                ),
                ValueKind::Report => Err(Error::invalid("reports are read from JSON only")),
            }
        }
    }
}

/// JSON if the input starts with `{`, text otherwise.
pub fn deserialize_auto(bytes: &[u8], kind: ValueKind) -> Result<Value> {
    let first = bytes.iter().find(|b| !b.is_ascii_whitespace());
    let format = if first == Some(&b'{') { Format::Json } else { Format::Text };
    deserialize(bytes, kind, format)
}

fn from_json(text: &str, kind: ValueKind) -> Result<Value> {
    let doc: serde_json::Value = serde_json::from_str(text).map_err(|e| {
        Error::parse(format!("line {} column {}", e.line(), e.column()), e.to_string())
    })?;
    let serde_json::Value::Object(mut fields) = doc else {
        return Err(Error::parse("line 1 column 1", "expected a JSON object"));
    };
    let tag = match fields.remove("type") {
        Some(serde_json::Value::String(t)) => t,
        _ => return Err(Error::parse("field type", "missing or non-string \"type\"")),
    };
    let body = serde_json::Value::Object(fields);
    let field_error = |e: serde_json::Error| Error::parse(format!("{tag} document"), e.to_string());
    let value = match tag.as_str() {
        "triangle" => {
            let doc: TriangleDoc = serde_json::from_value(body).map_err(field_error)?;
            Value::Triangle(TriangularArray::new(doc.rows).map_err(|e| Error::parse("field rows", e.to_string()))?)
        }
        "matrix" => {
            let doc: MatrixDoc = serde_json::from_value(body).map_err(field_error)?;
            Value::Matrix(SignMatrix::from_rows(doc.entries).map_err(|e| Error::parse("field entries", e.to_string()))?)
        }
        "report" => Value::Report(serde_json::from_value(body).map_err(field_error)?),
        other => return Err(Error::parse("field type", format!("unknown document type {other:?}"))),
    };
    if value.kind() != kind {
        return Err(Error::parse("field type", format!("expected {kind:?}, found {:?}", value.kind())));
    }
    Ok(value)
}

fn parse_csv(text: &str) -> Result<Vec<(usize, Vec<i64>)>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            Error::parse(format!("line {line}"), e.to_string())
        })?;
        let line = record.position().map_or(rows.len() + 1, |p| p.line() as usize);
        let mut row = Vec::with_capacity(record.len());
        for (j, cell) in record.iter().enumerate() {
            row.push(cell.parse::<i64>().map_err(|_| {
                Error::parse(format!("line {line} field {}", j + 1), format!("{cell:?} is not an integer"))
            })?);
        }
        rows.push((line, row));
    }
    Ok(rows)
}

fn parse_text(text: &str) -> Result<Vec<Vec<i64>>> {
    let mut rows = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let cells: Vec<&str> = line.split(|c: char| c.is_whitespace() || c == ',').filter(|s| !s.is_empty()).collect();
        if cells.is_empty() {
            continue;
        }
        let mut row = Vec::with_capacity(cells.len());
        for (j, cell) in cells.iter().enumerate() {
            row.push(cell.parse::<i64>().map_err(|_| {
                Error::parse(format!("line {} field {}", i + 1, j + 1), format!("{cell:?} is not an integer"))
            })?);
        }
        rows.push(row);
    }
    Ok(rows)
}

fn triangle_from_rows(rows: Vec<Vec<i64>>) -> Result<Value> {
    TriangularArray::new(rows)
        .map(Value::Triangle)
        .map_err(|e| Error::parse("rows", e.to_string()))
}

fn matrix_from_rows(rows: Vec<(usize, Vec<i64>)>, unit: &str) -> Result<Value> {
    if rows.is_empty() {
        return Err(Error::parse(format!("{unit} 1"), "no rows"));
    }
    let cols = rows[0].1.len();
    let mut out = Vec::with_capacity(rows.len());
    for (line, row) in rows {
        if row.len() != cols {
            return Err(Error::parse(
                format!("{unit} {line}"),
                format!("expected {cols} entries, found {}", row.len()),
            ));
        }
        let mut converted = Vec::with_capacity(cols);
        for (j, v) in row.into_iter().enumerate() {
            if !(-1..=1).contains(&v) {
                return Err(Error::parse(format!("{unit} {line} field {}", j + 1), format!("{v} is not in {{-1, 0, 1}}")));
            }
            converted.push(v as i8);
        }
        out.push(converted);
    }
    SignMatrix::from_rows(out).map(Value::Matrix)
}

/// Serde adapters writing big integers as JSON numbers of any length.
pub(crate) mod big_number {
    use std::str::FromStr;

    use num_bigint::BigInt;
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        serde_json::Number::from_str(&v.to_string())
            .map_err(serde::ser::Error::custom)?
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let n = serde_json::Number::deserialize(d)?;
        BigInt::from_str(&n.to_string()).map_err(|_| D::Error::custom(format!("{n} is not an integer")))
    }
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use num_bigint::BigInt;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::enumerate::{enum_matrices, enum_triangles, MatrixKind, TriangleClass};
    use crate::fixtures::{golden_two_asm, tri};
    use crate::verify::{Detail, Status};

    #[test]
    fn triangle_json_shape() {
        let bytes = serialize(&Value::Triangle(tri(&[&[4]])), Format::Json).unwrap();
        assert_eq!(String::from_utf8(bytes).unwrap().trim(), r#"{"type":"triangle","rows":[[4]]}"#);
    }

    #[test]
    fn golden_two_asm_roundtrips_in_every_format() {
        let v = Value::Matrix(golden_two_asm());
        for f in [Format::Json, Format::Csv, Format::Text] {
            let bytes = serialize(&v, f).unwrap();
            assert_eq!(deserialize(&bytes, ValueKind::Matrix, f).unwrap(), v);
        }
        let csv = String::from_utf8(serialize(&v, Format::Csv).unwrap()).unwrap();
        assert_eq!(csv.lines().nth(3), Some("0,1,-1,1,0"));
    }

    #[test]
    fn parse_errors_carry_locations() {
        let bad_json = b"{\"type\":\"triangle\",\n\"rows\":[[1],[2,]]}";
        match deserialize(bad_json, ValueKind::Triangle, Format::Json) {
            Err(Error::Parse { location, .. }) => assert!(location.starts_with("line 2"), "{location}"),
            other => panic!("{other:?}"),
        }
        match deserialize(b"0,1\n1,x\n", ValueKind::Matrix, Format::Csv) {
            Err(Error::Parse { location, .. }) => assert_eq!(location, "line 2 field 2"),
            other => panic!("{other:?}"),
        }
        match deserialize(b"1\n2 3 4\n", ValueKind::Triangle, Format::Text) {
            Err(Error::Parse { .. }) => {}
            other => panic!("{other:?}"),
        }
        match deserialize(b"0 2\n", ValueKind::Matrix, Format::Text) {
            Err(Error::Parse { location, .. }) => assert_eq!(location, "line 1 field 2"),
            other => panic!("{other:?}"),
        }
        let wrong_kind = serialize(&Value::Matrix(golden_two_asm()), Format::Json).unwrap();
        assert!(matches!(deserialize(&wrong_kind, ValueKind::Triangle, Format::Json), Err(Error::Parse { .. })));
        assert!(serialize(&Value::Triangle(tri(&[&[1]])), Format::Csv).is_err());
    }

    #[test]
    fn auto_detection() {
        let t = tri(&[&[2], &[2, 2]]);
        assert_eq!(deserialize_auto(b"2\n2 2\n", ValueKind::Triangle).unwrap(), Value::Triangle(t.clone()));
        let json = serialize(&Value::Triangle(t.clone()), Format::Json).unwrap();
        assert_eq!(deserialize_auto(&json, ValueKind::Triangle).unwrap(), Value::Triangle(t));
    }

    fn random_report(rng: &mut ChaCha8Rng) -> VerificationReport {
        let details: Vec<Detail> = (0..rng.gen_range(0..5))
            .map(|k| {
                let expected = BigInt::from(rng.gen::<i64>()) * BigInt::from(rng.gen::<i64>()) * BigInt::from(rng.gen::<u64>());
                let actual = if rng.gen_bool(0.8) { expected.clone() } else { expected.clone() + 1 };
                Detail { check: format!("check {k}, \"quoted\""), expected, actual }
            })
            .collect();
        let status = if details.iter().all(|d| d.expected == d.actual) { Status::Verified } else { Status::Failed };
        let mut parameters = BTreeMap::new();
        parameters.insert("n".to_string(), rng.gen_range(-5..50));
        VerificationReport {
            identity_id: "sample".into(),
            parameters,
            status,
            details,
            elapsed_ms: rng.gen_range(0..10_000),
            note: rng.gen_bool(0.5).then(|| "a note".to_string()),
        }
    }

    #[test]
    fn randomized_roundtrips() {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        let bottoms: Vec<Vec<i64>> = vec![vec![1, 3, 4, 6], vec![2, 4, 5, 8], vec![-3, 0, 2, 7, 9]];
        let dmts: Vec<Vec<i64>> = vec![vec![6, 3, 3, 2, 1], vec![5, 5, 3, 2, 2, 1]];
        let asms = enum_matrices(MatrixKind::Asm, 4);
        let two_asms = enum_matrices(MatrixKind::TwoAsm, 3);
        for _ in 0..50 {
            let tri = if rng.gen_bool(0.5) {
                let b = &bottoms[rng.gen_range(0..bottoms.len())];
                enum_triangles(b, TriangleClass::MT).unwrap().nth(rng.gen_range(0..20)).unwrap()
            } else {
                let b = &dmts[rng.gen_range(0..dmts.len())];
                let all: Vec<_> = enum_triangles(b, TriangleClass::DMT).unwrap().collect();
                all[rng.gen_range(0..all.len())].clone()
            };
            let m = if rng.gen_bool(0.5) {
                asms[rng.gen_range(0..asms.len())].clone()
            } else {
                two_asms[rng.gen_range(0..two_asms.len())].clone()
            };
            let r = random_report(&mut rng);
            for (v, formats) in [
                (Value::Triangle(tri), &[Format::Json, Format::Text][..]),
                (Value::Matrix(m), &[Format::Json, Format::Csv, Format::Text][..]),
                (Value::Report(r), &[Format::Json][..]),
            ] {
                for &f in formats {
                    let bytes = serialize(&v, f).unwrap();
                    assert_eq!(deserialize(&bytes, v.kind(), f).unwrap(), v);
                }
            }
        }
    }

    #[test]
    fn big_values_are_plain_json_numbers() {
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        let r = VerificationReport {
            identity_id: "x".into(),
            parameters: BTreeMap::new(),
            status: Status::Verified,
            details: vec![Detail { check: "c".into(), expected: big.clone(), actual: big }],
            elapsed_ms: 0,
            note: None,
        };
        let text = String::from_utf8(serialize(&Value::Report(r), Format::Json).unwrap()).unwrap();
        assert!(text.contains(r#""expected":123456789012345678901234567890"#), "{text}");
    }
}
