//! Deterministic table rendering: markdown for eyeball-diffing against
//! the published layout, CSV and JSON-lines for tooling. Output is
//! byte-stable given identical inputs.

use serde::Serialize;

/// Output formats accepted by the command layer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Markdown,
    Csv,
    JsonLines,
}

impl std::str::FromStr for OutputFormat {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "md" | "markdown" => Ok(OutputFormat::Markdown),
            "csv" => Ok(OutputFormat::Csv),
            "jsonl" | "json-lines" => Ok(OutputFormat::JsonLines),
            other => Err(format!(
                "unknown format: {other} (expected md, csv, or jsonl)"
            )),
        }
    }
}

pub fn render_markdown(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = String::new();
    out.push('|');
    for h in headers {
        out.push(' ');
        out.push_str(h);
        out.push_str(" |");
    }
    out.push('\n');
    out.push('|');
    for _ in headers {
        out.push_str(" --- |");
    }
    out.push('\n');
    for row in rows {
        out.push('|');
        for cell in row {
            out.push(' ');
            out.push_str(cell);
            out.push_str(" |");
        }
        out.push('\n');
    }
    out
}

pub fn render_csv(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = String::new();
    out.push_str(&headers.join(","));
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

pub fn render_json_lines<T: Serialize>(rows: &[T]) -> String {
    let mut out = String::new();
    for row in rows {
        out.push_str(&serde_json::to_string(row).expect("row serialization cannot fail"));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn markdown_layout() {
        let got = render_markdown(
            &["g", "d"],
            &[vec!["2".into(), "7".into()], vec!["3".into(), "10".into()]],
        );
        assert_eq!(got, "| g | d |\n| --- | --- |\n| 2 | 7 |\n| 3 | 10 |\n");
    }

    #[test]
    fn rendering_is_deterministic() {
        let rows = vec![vec!["1".to_string(), "2".to_string()]];
        assert_eq!(
            render_csv(&["a", "b"], &rows),
            render_csv(&["a", "b"], &rows)
        );
    }
}
