//! Verification reports and the line-oriented `key=value` record format.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    /// Index of the offending sample in the seeded stream.
    pub sample: usize,
    pub detail: String,
}

/// Outcome of one verification suite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub suite: String,
    pub samples: usize,
    pub failures: Vec<Failure>,
    /// Extra facts worth printing, in insertion order.
    pub notes: Vec<(String, String)>,
}

impl Report {
    pub fn new(suite: impl Into<String>) -> Self {
        Report { suite: suite.into(), samples: 0, failures: Vec::new(), notes: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn fail(&mut self, sample: usize, detail: impl Into<String>) {
        self.failures.push(Failure { sample, detail: detail.into() });
    }

    pub fn note(&mut self, key: impl Into<String>, value: impl ToString) {
        self.notes.push((key.into(), value.to_string()));
    }

    pub fn status(&self) -> &'static str {
        if self.passed() {
            "PASS"
        } else {
            "FAIL"
        }
    }

    /// Human readable rendering.
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "{} {}: {} samples, {} failures\n",
            self.status(),
            self.suite,
            self.samples,
            self.failures.len()
        );
        for (k, v) in &self.notes {
            out.push_str(&format!("  {k}: {v}\n"));
        }
        for f in self.failures.iter().take(10) {
            out.push_str(&format!("  sample {}: {}\n", f.sample, f.detail));
        }
        if self.failures.len() > 10 {
            out.push_str(&format!("  ... {} more\n", self.failures.len() - 10));
        }
        out
    }

    /// Machine readable rendering: one summary record, then one per failure.
    pub fn to_records(&self) -> Vec<Record> {
        let mut head = Record::new()
            .with("suite", &self.suite)
            .with("status", self.status())
            .with("samples", self.samples)
            .with("failures", self.failures.len());
        for (k, v) in &self.notes {
            head.push(k, v);
        }
        let mut out = vec![head];
        for f in &self.failures {
            out.push(
                Record::new()
                    .with("suite", &self.suite)
                    .with("failure", f.sample)
                    .with("detail", &f.detail),
            );
        }
        out
    }
}

/// An ordered list of `key=value` pairs rendered on one line. Values with
/// whitespace, quotes, `=` or nothing at all are double-quoted with `\"` and
/// `\\` escapes.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Record(pub Vec<(String, String)>);

impl Record {
    pub fn new() -> Self {
        Record(Vec::new())
    }

    pub fn with(mut self, key: &str, value: impl ToString) -> Self {
        self.push(key, value);
        self
    }

    pub fn push(&mut self, key: &str, value: impl ToString) {
        self.0.push((key.to_string(), value.to_string()));
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.0.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }
}

fn needs_quotes(v: &str) -> bool {
    v.is_empty() || v.chars().any(|c| c.is_whitespace() || c == '"' || c == '=' || c == '\\')
}

impl fmt::Display for Record {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (k, v)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            if needs_quotes(v) {
                let escaped = v.replace('\\', "\\\\").replace('"', "\\\"");
                write!(f, "{k}=\"{escaped}\"")?;
            } else {
                write!(f, "{k}={v}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for Record {
    type Err = Error;

    fn from_str(line: &str) -> Result<Self, Self::Err> {
        let bad = |why: &str| Error::Config(format!("malformed record {line:?}: {why}"));
        let mut out = Vec::new();
        let mut chars = line.trim().chars().peekable();
        loop {
            while chars.peek().is_some_and(|c| c.is_whitespace()) {
                chars.next();
            }
            if chars.peek().is_none() {
                break;
            }
            let mut key = String::new();
            loop {
                match chars.next() {
                    Some('=') => break,
                    Some(c) if !c.is_whitespace() => key.push(c),
                    _ => return Err(bad("expected `key=`")),
                }
            }
            if key.is_empty() {
                return Err(bad("empty key"));
            }
            let mut value = String::new();
            if chars.peek() == Some(&'"') {
                chars.next();
                loop {
                    match chars.next() {
                        Some('"') => break,
                        Some('\\') => value.push(chars.next().ok_or_else(|| bad("dangling escape"))?),
                        Some(c) => value.push(c),
                        None => return Err(bad("unterminated quote")),
                    }
                }
            } else {
                while let Some(&c) = chars.peek() {
                    if c.is_whitespace() {
                        break;
                    }
                    value.push(c);
                    chars.next();
                }
            }
            out.push((key, value));
        }
        Ok(Record(out))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn renders_and_parses() {
        let r = Record::new().with("word", "v0:1 v1:1").with("nl", 2).with("empty", "");
        let line = r.to_string();
        assert_eq!(line, "word=\"v0:1 v1:1\" nl=2 empty=\"\"");
        assert_eq!(line.parse::<Record>().unwrap(), r);
    }

    #[test]
    fn rejects_garbage() {
        assert!("novalue".parse::<Record>().is_err());
        assert!("k=\"open".parse::<Record>().is_err());
    }

    proptest! {
        #[test]
        fn round_trip(pairs in prop::collection::vec(("[a-z_]{1,8}", ".{0,12}"), 0..5)) {
            let r = Record(pairs);
            let back: Record = r.to_string().parse().unwrap();
            prop_assert_eq!(back, r);
        }
    }
}
