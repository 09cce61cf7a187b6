//! Plain-text degree spec format: four integer lines prefixed by the headers
//! `d11:`, `d12:`, `d21:`, `d22:`, in that order. Blank lines and `#` comments
//! are ignored. A header with nothing after the colon is an empty sequence.

use super::DegreeSpec;
use crate::error::ParseError;

const HEADERS: [&str; 4] = ["d11:", "d12:", "d21:", "d22:"];

/// Parses the four-line degree spec format. Errors carry the offending
/// 1-based line number.
pub fn parse_degree_spec(text: &str) -> Result<DegreeSpec, ParseError> {
    let mut seqs: Vec<Vec<u32>> = Vec::with_capacity(4);
    let mut next = 0usize;
    let mut last_line = 0usize;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if next >= 4 {
            return Err(ParseError::new(
                line_no,
                "unexpected content after the four degree lines",
            ));
        }
        let header = HEADERS[next];
        let Some(rest) = line.strip_prefix(header) else {
            return Err(ParseError::new(
                line_no,
                format!("expected line starting with '{header}'"),
            ));
        };
        let mut seq = Vec::new();
        for tok in rest.split_whitespace() {
            let value: u32 = tok.parse().map_err(|_| {
                ParseError::new(line_no, format!("'{tok}' is not a nonnegative integer"))
            })?;
            seq.push(value);
        }
        seqs.push(seq);
        next += 1;
    }
    if next != 4 {
        return Err(ParseError::new(
            last_line,
            format!("missing line for '{}'", HEADERS[next]),
        ));
    }
    let d22 = seqs.pop().unwrap();
    let d21 = seqs.pop().unwrap();
    let d12 = seqs.pop().unwrap();
    let d11 = seqs.pop().unwrap();
    let spec = DegreeSpec::new(d11, d12, d21, d22);
    spec.check_shape()
        .map_err(|e| ParseError::new(last_line, e.to_string()))?;
    Ok(spec)
}

/// Serializes a spec in the format accepted by [`parse_degree_spec`].
pub fn write_degree_spec(spec: &DegreeSpec) -> String {
    let line = |header: &str, seq: &[u32]| {
        let mut s = String::from(header);
        for v in seq {
            s.push(' ');
            s.push_str(&v.to_string());
        }
        s.push('\n');
        s
    };
    let mut out = String::new();
    out.push_str(&line("d11:", &spec.d11));
    out.push_str(&line("d12:", &spec.d12));
    out.push_str(&line("d21:", &spec.d21));
    out.push_str(&line("d22:", &spec.d22));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let spec = DegreeSpec::new(vec![3, 3, 3, 3], vec![1, 1, 1, 1], vec![2, 2], vec![0, 0]);
        let text = write_degree_spec(&spec);
        assert_eq!(parse_degree_spec(&text).unwrap(), spec);
    }

    #[test]
    fn empty_sequences_round_trip() {
        let spec = DegreeSpec::new(vec![3, 3, 3, 3], vec![0, 0, 0, 0], vec![], vec![]);
        let text = write_degree_spec(&spec);
        assert_eq!(parse_degree_spec(&text).unwrap(), spec);
    }

    #[test]
    fn comments_and_blanks_ignored() {
        let text = "# a K4 sample\nd11: 3 3 3 3\n\nd12: 0 0 0 0\nd21:\nd22:\n";
        let spec = parse_degree_spec(text).unwrap();
        assert_eq!(spec.n1(), 4);
        assert_eq!(spec.n2(), 0);
    }

    #[test]
    fn bad_token_reports_line() {
        let text = "d11: 3 3\nd12: x 1\nd21:\nd22:\n";
        let err = parse_degree_spec(text).unwrap_err();
        assert_eq!(err.line, 2);
        assert!(err.message.contains('x'));
    }

    #[test]
    fn wrong_header_order_rejected() {
        let text = "d12: 1\nd11: 3\nd21:\nd22:\n";
        let err = parse_degree_spec(text).unwrap_err();
        assert_eq!(err.line, 1);
        assert!(err.message.contains("d11:"));
    }

    #[test]
    fn missing_line_rejected() {
        let err = parse_degree_spec("d11: 3 3\nd12: 1 1\n").unwrap_err();
        assert!(err.message.contains("d21:"));
    }

    #[test]
    fn shape_mismatch_rejected_at_parse() {
        let err = parse_degree_spec("d11: 3 3\nd12: 1\nd21:\nd22:\n").unwrap_err();
        assert!(err.message.contains("d12"));
    }
}
