use std::io::{Read, Write};
use std::path::Path;

use super::Label;
use crate::error::{domain, Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct LabeledPoint {
    pub x: Vec<f64>,
    pub y: Label,
}

impl LabeledPoint {
    pub fn new(x: Vec<f64>, y: Label) -> Result<Self> {
        if x.is_empty() {
            return domain("a point needs at least one coordinate");
        }
        if let Some(bad) = x.iter().find(|v| !v.is_finite()) {
            return domain(format!("non-finite coordinate {bad}"));
        }
        Ok(Self { x, y })
    }
}

/// Nonempty list of labeled points of a common dimension `N`.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    points: Vec<LabeledPoint>,
    dim: usize,
}

impl Dataset {
    pub fn new(points: Vec<LabeledPoint>) -> Result<Self> {
        let Some(first) = points.first() else {
            return domain("dataset must contain at least one point");
        };
        let dim = first.x.len();
        if let Some((i, p)) = points.iter().enumerate().find(|(_, p)| p.x.len() != dim) {
            return domain(format!("point {i} has dimension {}, expected {dim}", p.x.len()));
        }
        Ok(Self { points, dim })
    }

    pub fn points(&self) -> &[LabeledPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn count(&self, label: Label) -> usize {
        self.points.iter().filter(|p| p.y == label).count()
    }

    /// Writes `x1,...,xN,y` with LF line endings. Coordinates use the
    /// shortest decimal that round-trips, labels are `-1` or `1`.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        let header: Vec<String> = (1..=self.dim).map(|i| format!("x{i}")).collect();
        writeln!(out, "{},y", header.join(","))?;
        for p in &self.points {
            for v in &p.x {
                write!(out, "{v},")?;
            }
            writeln!(out, "{}", p.y)?;
        }
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("csv output is ascii")
    }

    pub fn read_csv<R: Read>(input: R) -> Result<Self> {
        let mut reader = csv::ReaderBuilder::new().has_headers(true).from_reader(input);
        let headers = reader.headers()?.clone();
        let n = headers.len();
        if n < 2 {
            return Err(Error::Parse { line: 1, message: "need at least one feature column and y".into() });
        }
        for (i, h) in headers.iter().enumerate() {
            let expected = if i + 1 == n { "y".to_string() } else { format!("x{}", i + 1) };
            if h != expected {
                return Err(Error::Parse { line: 1, message: format!("column {} is '{h}', expected '{expected}'", i + 1) });
            }
        }
        let mut points = Vec::new();
        for (row, record) in reader.records().enumerate() {
            let record = record?;
            let line = row + 2;
            let parse_err = |message: String| Error::Parse { line, message };
            let x = record
                .iter()
                .take(n - 1)
                .map(|field| field.parse::<f64>().map_err(|e| parse_err(format!("bad coordinate '{field}': {e}"))))
                .collect::<Result<Vec<f64>>>()?;
            let y = match &record[n - 1] {
                "-1" => Label::Minus,
                "1" => Label::Plus,
                other => return Err(parse_err(format!("label must be -1 or 1, got '{other}'"))),
            };
            points.push(LabeledPoint::new(x, y).map_err(|e| parse_err(e.to_string()))?);
        }
        Self::new(points)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::read_csv(std::fs::File::open(path)?)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let file = std::io::BufWriter::new(std::fs::File::create(path)?);
        self.write_csv(file)
    }
}
