//! Polynomial data files: a `# weber degree=<d> form=<raw24|mod12>` header,
//! free comment lines, then one term per line.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

use super::{parse_poly_with, BivariatePoly, ParseOptions};

/// Whether the file holds the untransformed polynomial (used with the
/// `u^24` map) or an already transformed one (used with `u^12`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PolyForm {
    Raw24,
    Mod12,
}

impl PolyForm {
    pub fn as_str(&self) -> &'static str {
        match self {
            PolyForm::Raw24 => "raw24",
            PolyForm::Mod12 => "mod12",
        }
    }
}

impl fmt::Display for PolyForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PolyForm {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "raw24" => Ok(PolyForm::Raw24),
            "mod12" => Ok(PolyForm::Mod12),
            _ => Err(format!("unknown form {s:?}")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyFile {
    pub degree: u32,
    pub form: PolyForm,
    /// Comment lines after the header, without the leading `#`.
    pub comments: Vec<String>,
    pub poly: BivariatePoly,
}

impl PolyFile {
    /// Strict parse: the header is mandatory and repeated monomials are
    /// rejected.
    pub fn parse(text: &str) -> Result<PolyFile> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (hline, header) = lines.next().ok_or_else(|| Error::Parse { line: 1, msg: "missing header".into() })?;
        let (degree, form) = parse_header(header).map_err(|msg| Error::Parse { line: hline + 1, msg })?;
        let comments = text
            .lines()
            .skip(hline + 1)
            .filter_map(|l| l.trim_start().strip_prefix('#'))
            .map(|c| c.strip_prefix(' ').unwrap_or(c).to_string())
            .collect();
        let poly = parse_poly_with(text, ParseOptions { merge_duplicates: false, ..Default::default() })?;
        Ok(PolyFile { degree, form, comments, poly })
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("# weber degree={} form={}\n", self.degree, self.form);
        for c in &self.comments {
            s.push_str("# ");
            s.push_str(c);
            s.push('\n');
        }
        s.push_str(&self.poly.to_text());
        s
    }
}

fn parse_header(line: &str) -> std::result::Result<(u32, PolyForm), String> {
    let body = line.trim().strip_prefix('#').ok_or("header must start with '#'")?;
    let mut words = body.split_whitespace();
    if words.next() != Some("weber") {
        return Err("header must read '# weber degree=<d> form=<raw24|mod12>'".into());
    }
    let (mut degree, mut form) = (None, None);
    for w in words {
        match w.split_once('=') {
            Some(("degree", v)) => degree = Some(v.parse::<u32>().map_err(|_| format!("bad degree {v:?}"))?),
            Some(("form", v)) => form = Some(v.parse::<PolyForm>()?),
            _ => return Err(format!("unexpected header field {w:?}")),
        }
    }
    match (degree, form) {
        (Some(d), Some(f)) if d > 0 => Ok((d, f)),
        (Some(_), Some(_)) => Err("degree must be positive".into()),
        _ => Err("header needs degree= and form=".into()),
    }
}
