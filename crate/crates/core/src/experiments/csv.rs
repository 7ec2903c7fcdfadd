//! Plain CSV output: `{:.16e}` floats (17 significant digits, enough to
//! round-trip any `f64`) and trailing `#` metadata rows.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use super::{ConvergenceReport, ReportConfig};
use crate::error::{Error, Result};

fn sci(x: f64) -> String {
    format!("{x:.16e}")
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> Error + '_ {
    move |source| Error::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn metadata(config: &ReportConfig) -> Vec<(&'static str, String)> {
    let mut meta = vec![("kind", config.kind.as_str().to_string()), ("alpha", config.alpha.to_string())];
    if let Some(t) = config.t {
        meta.push(("t", t.to_string()));
    }
    if let Some(f) = &config.function {
        meta.push(("function", f.clone()));
    }
    meta
}

/// Writes `abscissa,error`, one row per point, then `# key,value` rows.
pub fn emit_csv<W: Write + ?Sized>(report: &ConvergenceReport, out: &mut W) -> io::Result<()> {
    writeln!(out, "abscissa,error")?;
    for (x, e) in report.abscissae.iter().zip(&report.errors) {
        writeln!(out, "{},{}", sci(*x), sci(*e))?;
    }
    for (k, v) in metadata(&report.config) {
        writeln!(out, "# {k},{v}")?;
    }
    match report.fit {
        Some(fit) => {
            writeln!(out, "# slope,{}", sci(fit.slope))?;
            writeln!(out, "# intercept,{}", sci(fit.intercept))?;
        }
        None => writeln!(out, "# slope,degenerate")?,
    }
    Ok(())
}

/// [`emit_csv`] to a file; failures carry the path.
pub fn write_csv_file(report: &ConvergenceReport, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let file = File::create(path).map_err(io_err(path))?;
    let mut w = BufWriter::new(file);
    emit_csv(report, &mut w).map_err(io_err(path))?;
    w.flush().map_err(io_err(path))
}

/// Writes an integer index column followed by float columns.
pub fn emit_table<W, I>(out: &mut W, header: &[&str], rows: I, meta: &[(&str, String)]) -> io::Result<()>
where
    W: Write + ?Sized,
    I: IntoIterator<Item = (usize, Vec<f64>)>,
{
    writeln!(out, "{}", header.join(","))?;
    for (i, values) in rows {
        write!(out, "{i}")?;
        for v in values {
            write!(out, ",{}", sci(v))?;
        }
        writeln!(out)?;
    }
    for (k, v) in meta {
        writeln!(out, "# {k},{v}")?;
    }
    Ok(())
}

/// Data rows and metadata recovered from [`emit_csv`] output.
#[derive(Debug, Clone, PartialEq)]
pub struct ParsedCsv {
    pub abscissae: Vec<f64>,
    pub errors: Vec<f64>,
    pub metadata: Vec<(String, String)>,
}

impl ParsedCsv {
    pub fn meta(&self, key: &str) -> Option<&str> {
        self.metadata.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }
}

pub fn parse_csv(text: &str) -> Result<ParsedCsv> {
    let mut lines = text.lines();
    match lines.next() {
        Some("abscissa,error") => {}
        other => return Err(Error::domain(format!("unexpected CSV header {other:?}"))),
    }
    let mut parsed = ParsedCsv {
        abscissae: Vec::new(),
        errors: Vec::new(),
        metadata: Vec::new(),
    };
    for line in lines {
        if let Some(rest) = line.strip_prefix("# ") {
            let (k, v) = rest.split_once(',').unwrap_or((rest, ""));
            parsed.metadata.push((k.to_string(), v.to_string()));
            continue;
        }
        let bad = || Error::domain(format!("malformed CSV row `{line}`"));
        let (x, e) = line.split_once(',').ok_or_else(bad)?;
        parsed.abscissae.push(x.parse().map_err(|_| bad())?);
        parsed.errors.push(e.parse().map_err(|_| bad())?);
    }
    Ok(parsed)
}
