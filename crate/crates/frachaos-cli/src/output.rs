//! Claim records and the CSV/JSON writers.
//!
//! Every record carries the command, the full parameter echo, the artifact
//! version, the seed, and per-claim pass/fail with measured value, target,
//! and tolerance. Floats are serialized with 17 significant digits so files
//! round-trip losslessly; identical inputs produce byte-identical files.

use std::io::{self, Write};

/// Whether a row asserts a tolerance or only reports a measured value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClaimKind {
    Check,
    Report,
}

impl ClaimKind {
    fn as_str(self) -> &'static str {
        match self {
            ClaimKind::Check => "check",
            ClaimKind::Report => "report",
        }
    }
}

/// One verified (or reported) quantity.
#[derive(Debug, Clone)]
pub struct Claim {
    pub suite: &'static str,
    pub name: String,
    pub params: String,
    pub kind: ClaimKind,
    pub measured: f64,
    pub target: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl Claim {
    pub fn check(
        suite: &'static str,
        name: impl Into<String>,
        params: impl Into<String>,
        measured: f64,
        target: f64,
        tolerance: f64,
        pass: bool,
    ) -> Self {
        Claim {
            suite,
            name: name.into(),
            params: params.into(),
            kind: ClaimKind::Check,
            measured,
            target,
            tolerance,
            pass,
        }
    }

    pub fn report(
        suite: &'static str,
        name: impl Into<String>,
        params: impl Into<String>,
        measured: f64,
        target: f64,
    ) -> Self {
        Claim {
            suite,
            name: name.into(),
            params: params.into(),
            kind: ClaimKind::Report,
            measured,
            target,
            tolerance: 0.0,
            pass: true,
        }
    }
}

/// File-level metadata echoed into every output.
#[derive(Debug, Clone)]
pub struct Meta {
    pub command: String,
    pub params: String,
    pub version: String,
    pub seed: Option<u64>,
    pub timestamp: String,
}

/// 17-significant-digit float serialization.
pub fn fmt17(x: f64) -> String {
    if x.is_nan() {
        "nan".to_string()
    } else if x.is_infinite() {
        if x > 0.0 {
            "inf".to_string()
        } else {
            "-inf".to_string()
        }
    } else {
        format!("{x:.16e}")
    }
}

/// Deterministic output order: suite name, then claim name, then parameters.
pub fn sort_rows(rows: &mut [Claim]) {
    rows.sort_by(|a, b| (a.suite, &a.name, &a.params).cmp(&(b.suite, &b.name, &b.params)));
}

/// Quote a field when it contains a separator, quote, or newline.
fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn write_csv<W: Write + ?Sized>(w: &mut W, meta: &Meta, rows: &[Claim]) -> io::Result<()> {
    writeln!(
        w,
        "command,version,seed,suite,claim,kind,params,measured,target,tolerance,pass"
    )?;
    let seed = meta.seed.map(|s| s.to_string()).unwrap_or_default();
    for r in rows {
        writeln!(
            w,
            "{},{},{},{},{},{},{},{},{},{},{}",
            csv_field(&meta.command),
            meta.version,
            seed,
            csv_field(r.suite),
            csv_field(&r.name),
            r.kind.as_str(),
            csv_field(&r.params),
            fmt17(r.measured),
            fmt17(r.target),
            fmt17(r.tolerance),
            r.pass
        )?;
    }
    Ok(())
}

fn json_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out
}

fn json_number(x: f64) -> String {
    if x.is_finite() {
        fmt17(x)
    } else {
        // JSON has no NaN/inf literals
        "null".to_string()
    }
}

pub fn write_json<W: Write + ?Sized>(w: &mut W, meta: &Meta, rows: &[Claim]) -> io::Result<()> {
    writeln!(w, "{{")?;
    writeln!(w, "  \"meta\": {{")?;
    writeln!(w, "    \"command\": \"{}\",", json_escape(&meta.command))?;
    writeln!(w, "    \"params\": \"{}\",", json_escape(&meta.params))?;
    writeln!(w, "    \"version\": \"{}\",", json_escape(&meta.version))?;
    match meta.seed {
        Some(s) => writeln!(w, "    \"seed\": {s},")?,
        None => writeln!(w, "    \"seed\": null,")?,
    }
    writeln!(w, "    \"timestamp\": \"{}\"", json_escape(&meta.timestamp))?;
    writeln!(w, "  }},")?;
    writeln!(w, "  \"rows\": [")?;
    for (i, r) in rows.iter().enumerate() {
        let sep = if i + 1 == rows.len() { "" } else { "," };
        writeln!(
            w,
            "    {{\"suite\": \"{}\", \"claim\": \"{}\", \"kind\": \"{}\", \"params\": \"{}\", \"measured\": {}, \"target\": {}, \"tolerance\": {}, \"pass\": {}}}{}",
            json_escape(r.suite),
            json_escape(&r.name),
            r.kind.as_str(),
            json_escape(&r.params),
            json_number(r.measured),
            json_number(r.target),
            json_number(r.tolerance),
            r.pass,
            sep
        )?;
    }
    writeln!(w, "  ]")?;
    writeln!(w, "}}")?;
    Ok(())
}
