//! Text reports with a machine-readable `key=value` trailer.

use std::collections::BTreeMap;
use std::fmt;

/// Marker line separating the prose from the trailer.
pub const TRAILER_MARKER: &str = "--";

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub title: String,
    pub lines: Vec<String>,
    pub trailer: Vec<(String, String)>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report {
            title: title.into(),
            ..Default::default()
        }
    }

    pub fn line(&mut self, s: impl Into<String>) -> &mut Self {
        self.lines.push(s.into());
        self
    }

    pub fn kv(&mut self, key: &str, value: impl fmt::Display) -> &mut Self {
        self.trailer.push((key.to_string(), value.to_string()));
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.trailer.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "# {}", self.title)?;
        for l in &self.lines {
            writeln!(f, "{l}")?;
        }
        writeln!(f, "{TRAILER_MARKER}")?;
        for (k, v) in &self.trailer {
            writeln!(f, "{k}={v}")?;
        }
        Ok(())
    }
}

/// Reads the `key=value` lines after the last trailer marker.
pub fn parse_trailer(text: &str) -> BTreeMap<String, String> {
    let lines: Vec<&str> = text.lines().collect();
    let start = lines
        .iter()
        .rposition(|l| l.trim() == TRAILER_MARKER)
        .map_or(0, |i| i + 1);
    lines[start..]
        .iter()
        .filter_map(|l| l.split_once('='))
        .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
        .collect()
}

pub fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trailer_round_trip() {
        let mut r = Report::new("demo");
        r.line("associative: no").kv("associative", false).kv("order", 18);
        let text = r.to_string();
        let kv = parse_trailer(&text);
        assert_eq!(kv["associative"], "false");
        assert_eq!(kv["order"], "18");
        assert_eq!(r.get("order"), Some("18"));
    }
}
