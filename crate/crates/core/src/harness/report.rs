use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// A scalar result.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Real(f64),
    Complex(Complex64),
    Int(i64),
    Bool(bool),
    Text(String),
}

impl From<f64> for Value {
    fn from(x: f64) -> Self {
        Value::Real(x)
    }
}

impl From<Complex64> for Value {
    fn from(z: Complex64) -> Self {
        Value::Complex(z)
    }
}

impl From<usize> for Value {
    fn from(n: usize) -> Self {
        Value::Int(n as i64)
    }
}

impl From<bool> for Value {
    fn from(b: bool) -> Self {
        Value::Bool(b)
    }
}

impl From<&str> for Value {
    fn from(s: &str) -> Self {
        Value::Text(s.to_string())
    }
}

impl From<String> for Value {
    fn from(s: String) -> Self {
        Value::Text(s)
    }
}

/// Pass/fail outcome of one declared invariant.
#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub name: String,
    pub passed: bool,
    pub observed: Option<f64>,
    pub lower: Option<f64>,
    pub upper: Option<f64>,
}

impl Verdict {
    pub fn at_most(name: impl Into<String>, observed: f64, upper: f64) -> Self {
        Self {
            name: name.into(),
            // NaN fails.
            passed: observed <= upper,
            observed: Some(observed),
            lower: None,
            upper: Some(upper),
        }
    }

    pub fn at_least(name: impl Into<String>, observed: f64, lower: f64) -> Self {
        Self {
            name: name.into(),
            passed: observed >= lower,
            observed: Some(observed),
            lower: Some(lower),
            upper: None,
        }
    }

    pub fn within(name: impl Into<String>, observed: f64, lower: f64, upper: f64) -> Self {
        Self {
            name: name.into(),
            passed: observed >= lower && observed <= upper,
            observed: Some(observed),
            lower: Some(lower),
            upper: Some(upper),
        }
    }

    pub fn holds(name: impl Into<String>, passed: bool) -> Self {
        Self {
            name: name.into(),
            passed,
            observed: None,
            lower: None,
            upper: None,
        }
    }
}

/// Columnar plot-ready data.
#[derive(Debug, Clone, PartialEq)]
pub struct Profile {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Report {
    pub experiment: String,
    pub inputs: Vec<(String, String)>,
    pub tolerances: Vec<(String, f64)>,
    pub results: Vec<(String, Value)>,
    pub verdicts: Vec<Verdict>,
    pub profiles: Vec<Profile>,
    /// Wall-clock seconds per stage, only when requested.
    pub runtimes: Option<Vec<(String, f64)>>,
}

impl Report {
    pub fn new(experiment: impl Into<String>) -> Self {
        Self {
            experiment: experiment.into(),
            ..Self::default()
        }
    }

    pub fn result(&mut self, name: impl Into<String>, v: impl Into<Value>) {
        self.results.push((name.into(), v.into()));
    }

    pub fn verdict(&mut self, v: Verdict) {
        self.verdicts.push(v);
    }

    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Verdict> {
        self.verdicts.iter().filter(|v| !v.passed)
    }

    /// Appends another report's results, verdicts and profiles under the
    /// prefix `{other.experiment}.`.
    pub fn absorb(&mut self, other: Report) {
        let p = &other.experiment;
        for (k, v) in other.results {
            self.results.push((format!("{p}.{k}"), v));
        }
        for mut v in other.verdicts {
            v.name = format!("{p}.{}", v.name);
            self.verdicts.push(v);
        }
        for mut pr in other.profiles {
            pr.name = format!("{p}.{}", pr.name);
            self.profiles.push(pr);
        }
        if let (Some(mine), Some(theirs)) = (self.runtimes.as_mut(), other.runtimes) {
            mine.extend(theirs.into_iter().map(|(k, t)| (format!("{p}.{k}"), t)));
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

impl Format {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(Error::UnknownFormat(other.to_string())),
        }
    }
}

/// 17 significant digits, or `null` for non-finite values.
fn num(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        "null".to_string()
    }
}

fn text(s: &str) -> String {
    serde_json::to_string(s).expect("strings always serialise")
}

fn value_json(v: &Value) -> String {
    match v {
        Value::Real(x) => num(*x),
        Value::Complex(z) => format!("{{\"re\": {}, \"im\": {}}}", num(z.re), num(z.im)),
        Value::Int(n) => n.to_string(),
        Value::Bool(b) => b.to_string(),
        Value::Text(s) => text(s),
    }
}

fn opt(x: Option<f64>) -> String {
    x.map_or("null".to_string(), num)
}

pub fn to_json(r: &Report) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{{");
    let _ = writeln!(out, "  \"experiment\": {},", text(&r.experiment));
    let _ = writeln!(out, "  \"passed\": {},", r.passed());
    let block = |out: &mut String, name: &str, items: Vec<String>, last: bool| {
        let _ = write!(out, "  \"{name}\": ");
        if items.is_empty() {
            let _ = write!(out, "[]");
        } else {
            let _ = writeln!(out, "[");
            let _ = write!(out, "{}", items.iter().map(|s| format!("    {s}")).collect::<Vec<_>>().join(",\n"));
            let _ = write!(out, "\n  ]");
        }
        let _ = writeln!(out, "{}", if last { "" } else { "," });
    };
    block(
        &mut out,
        "inputs",
        r.inputs
            .iter()
            .map(|(k, v)| format!("{{\"key\": {}, \"value\": {}}}", text(k), text(v)))
            .collect(),
        false,
    );
    block(
        &mut out,
        "results",
        r.results
            .iter()
            .map(|(k, v)| format!("{{\"name\": {}, \"value\": {}}}", text(k), value_json(v)))
            .collect(),
        false,
    );
    block(
        &mut out,
        "verdicts",
        r.verdicts
            .iter()
            .map(|v| {
                format!(
                    "{{\"name\": {}, \"passed\": {}, \"observed\": {}, \"lower\": {}, \"upper\": {}}}",
                    text(&v.name),
                    v.passed,
                    opt(v.observed),
                    opt(v.lower),
                    opt(v.upper)
                )
            })
            .collect(),
        false,
    );
    block(
        &mut out,
        "tolerances",
        r.tolerances
            .iter()
            .map(|(k, v)| format!("{{\"key\": {}, \"value\": {}}}", text(k), num(*v)))
            .collect(),
        false,
    );
    block(
        &mut out,
        "profiles",
        r.profiles
            .iter()
            .map(|p| format!("{{\"name\": {}, \"rows\": {}}}", text(&p.name), p.rows.len()))
            .collect(),
        r.runtimes.is_none(),
    );
    if let Some(rt) = &r.runtimes {
        block(
            &mut out,
            "runtimes",
            rt.iter()
                .map(|(k, v)| format!("{{\"stage\": {}, \"seconds\": {}}}", text(k), num(*v)))
                .collect(),
            true,
        );
    }
    let _ = writeln!(out, "}}");
    out
}

fn csv_string(rows: Vec<Vec<String>>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.write_record(&row)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn value_cells(v: &Value) -> (String, String) {
    match v {
        Value::Real(x) => (num(*x), String::new()),
        Value::Complex(z) => (num(z.re), num(z.im)),
        Value::Int(n) => (n.to_string(), String::new()),
        Value::Bool(b) => (b.to_string(), String::new()),
        Value::Text(s) => (s.clone(), String::new()),
    }
}

/// One row per input, result, verdict and tolerance:
/// `kind,name,value,imag,passed,lower,upper`.
pub fn to_csv(r: &Report) -> Result<String> {
    let mut rows = vec![["kind", "name", "value", "imag", "passed", "lower", "upper"]
        .map(String::from)
        .to_vec()];
    let blank = String::new;
    for (k, v) in &r.inputs {
        rows.push(vec!["input".into(), k.clone(), v.clone(), blank(), blank(), blank(), blank()]);
    }
    for (k, v) in &r.results {
        let (a, b) = value_cells(v);
        rows.push(vec!["result".into(), k.clone(), a, b, blank(), blank(), blank()]);
    }
    for v in &r.verdicts {
        let cell = |x: Option<f64>| x.map_or(String::new(), num);
        rows.push(vec![
            "verdict".into(),
            v.name.clone(),
            cell(v.observed),
            blank(),
            v.passed.to_string(),
            cell(v.lower),
            cell(v.upper),
        ]);
    }
    for (k, v) in &r.tolerances {
        rows.push(vec!["tolerance".into(), k.clone(), num(*v), blank(), blank(), blank(), blank()]);
    }
    if let Some(rt) = &r.runtimes {
        for (k, v) in rt {
            rows.push(vec!["runtime".into(), k.clone(), num(*v), blank(), blank(), blank(), blank()]);
        }
    }
    csv_string(rows)
}

pub fn profile_csv(p: &Profile) -> Result<String> {
    let mut rows = vec![p.columns.clone()];
    rows.extend(p.rows.iter().map(|r| r.iter().map(|x| num(*x)).collect()));
    csv_string(rows)
}

fn file_stem(name: &str) -> String {
    name.chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '_' { c } else { '_' })
        .collect()
}

/// Writes the report in `format` plus one CSV per profile into `dir`, and
/// returns the written paths.
pub fn emit(r: &Report, format: Format, dir: &Path) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir)?;
    let stem = file_stem(&r.experiment);
    let mut written = Vec::new();
    let main = match format {
        Format::Json => (dir.join(format!("{stem}.json")), to_json(r)),
        Format::Csv => (dir.join(format!("{stem}.csv")), to_csv(r)?),
    };
    std::fs::write(&main.0, main.1)?;
    written.push(main.0);
    for p in &r.profiles {
        let path = dir.join(format!("{stem}__{}.csv", file_stem(&p.name)));
        std::fs::write(&path, profile_csv(p)?)?;
        written.push(path);
    }
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        let mut r = Report::new("demo");
        r.inputs.push(("theory.dt".into(), "0.01".into()));
        r.result("x", 0.1);
        r.result("z", Complex64::new(1.0, -2.0));
        r.result("label", "a,\"quoted\" value");
        r.verdict(Verdict::at_most("small", 1e-9, 1e-8));
        r.verdict(Verdict::within("ratio", 2.5, 1.7, 2.3));
        r.profiles.push(Profile {
            name: "curve".into(),
            columns: vec!["x".into(), "y".into()],
            rows: vec![vec![0.0, 1.0], vec![0.5, f64::NAN]],
        });
        r
    }

    #[test]
    fn json_is_deterministic_and_valid() {
        let (a, b) = (to_json(&sample()), to_json(&sample()));
        assert_eq!(a, b);
        let v: serde_json::Value = serde_json::from_str(&a).unwrap();
        assert_eq!(v["passed"], serde_json::Value::Bool(false));
        assert!(a.contains("1.0000000000000001e-1"));
    }

    #[test]
    fn csv_quotes_fields() {
        let s = to_csv(&sample()).unwrap();
        assert!(s.starts_with("kind,name,value,imag,passed,lower,upper\n"));
        assert!(s.contains("\"a,\"\"quoted\"\" value\""));
        let p = profile_csv(&sample().profiles[0]).unwrap();
        assert_eq!(p.lines().count(), 3);
    }

    #[test]
    fn unknown_format() {
        assert!(matches!(Format::parse("xml"), Err(Error::UnknownFormat(_))));
    }

    #[test]
    fn nan_fails_bounds() {
        assert!(!Verdict::at_most("n", f64::NAN, 1.0).passed);
        assert!(!Verdict::at_least("n", f64::NAN, 1.0).passed);
    }
}
