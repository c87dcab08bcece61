//! Plain-text frame files: a "N d" header, then N whitespace-separated
//! coordinate rows. '#' starts a comment, blank lines are skipped, and
//! coordinates are written with 17 significant digits so that
//! parse(write(F)) reproduces every double bit-exactly.

use crate::error::{Error, Result};
use crate::frame::Frame;

/// Parses the frame file format. Errors carry the 1-based line number.
pub fn parse_frame_file(text: &str) -> Result<Frame> {
    let mut content = text
        .lines()
        .enumerate()
        .map(|(idx, line)| (idx + 1, line.trim()))
        .filter(|(_, line)| !line.is_empty() && !line.starts_with('#'));

    let (header_line, header) = content.next().ok_or(Error::Parse {
        line: 1,
        message: "missing header line \"N d\"".into(),
    })?;
    let mut tokens = header.split_whitespace();
    let n = parse_count(tokens.next(), header_line, "N")?;
    let d = parse_count(tokens.next(), header_line, "d")?;
    if let Some(extra) = tokens.next() {
        return Err(Error::Parse {
            line: header_line,
            message: format!("unexpected token {extra:?} after header \"N d\""),
        });
    }

    let mut rows = Vec::with_capacity(n);
    for (line_no, line) in content {
        if rows.len() == n {
            return Err(Error::Parse {
                line: line_no,
                message: format!("expected {n} rows, found more"),
            });
        }
        let mut row = Vec::with_capacity(d);
        for token in line.split_whitespace() {
            let value: f64 = token.parse().map_err(|_| Error::Parse {
                line: line_no,
                message: format!("coordinate {token:?} is not a decimal number"),
            })?;
            if !value.is_finite() {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("coordinate {token:?} is not finite"),
                });
            }
            row.push(value);
        }
        if row.len() != d {
            return Err(Error::Parse {
                line: line_no,
                message: format!("expected {d} coordinates, found {}", row.len()),
            });
        }
        rows.push(row);
    }
    if rows.len() != n {
        return Err(Error::Parse {
            line: text.lines().count().max(1),
            message: format!("expected {n} rows, found {}", rows.len()),
        });
    }
    Frame::new(rows)
}

fn parse_count(token: Option<&str>, line: usize, name: &str) -> Result<usize> {
    let token = token.ok_or_else(|| Error::Parse {
        line,
        message: format!("header is missing {name}"),
    })?;
    let value: usize = token.parse().map_err(|_| Error::Parse {
        line,
        message: format!("header {name} must be a positive integer, got {token:?}"),
    })?;
    if value == 0 {
        return Err(Error::Parse {
            line,
            message: format!("header {name} must be positive"),
        });
    }
    Ok(value)
}

/// Renders a frame in the file format, prefixed with a provenance comment
/// (catalog name, transform description, or optimizer invocation digest).
pub fn write_frame_file(f: &Frame, provenance: &str) -> String {
    let mut out = String::new();
    for line in provenance.lines() {
        out.push_str("# ");
        out.push_str(line);
        out.push('\n');
    }
    out.push_str(&format!("{} {}\n", f.n(), f.d()));
    for i in 0..f.n() {
        let row: Vec<String> = f.vector(i).iter().map(|x| format!("{x:.16e}")).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::build;
    use crate::frame::{grammian, max_correlation};
    use crate::optimizer::random_uniform_parseval;

    #[test]
    fn parses_a_plain_basis() {
        let f = parse_frame_file("3 3\n1 0 0\n0 1 0\n0 0 1").unwrap();
        assert_eq!((f.n(), f.d()), (3, 3));
        assert_eq!(f.vector(1), &[0.0, 1.0, 0.0]);
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let text = "# cube diagonals\n\n4 3\n# rows follow\n0.5 0.5 0.5\n-0.5 -0.5 0.5\n\n-0.5 0.5 -0.5\n0.5 -0.5 -0.5\n";
        let f = parse_frame_file(text).unwrap();
        let g = grammian(&f);
        for i in 0..4 {
            for j in 0..4 {
                let want = if i == j { 0.75 } else { -0.25 };
                assert!((g.matrix()[(i, j)] - want).abs() <= 1e-15);
            }
        }
    }

    #[test]
    fn row_count_mismatches_are_reported() {
        let err = parse_frame_file("2 3\n1 0 0").unwrap_err();
        match err {
            Error::Parse { message, .. } => {
                assert!(message.contains("expected 2 rows, found 1"), "{message}")
            }
            other => panic!("wrong error kind: {other}"),
        }
        let err = parse_frame_file("1 2\n1 0\n0 1").unwrap_err();
        match err {
            Error::Parse { line, message } => {
                assert_eq!(line, 3);
                assert!(message.contains("found more"), "{message}");
            }
            other => panic!("wrong error kind: {other}"),
        }
    }

    #[test]
    fn malformed_input_errors_carry_line_numbers() {
        for (text, want_line) in [
            ("", 1usize),
            ("3", 1),
            ("3 x", 1),
            ("2 2 7", 1),
            ("0 2\n", 1),
            ("2 2\n1 0\n0 banana", 3),
            ("2 2\n1 0\n0 inf", 3),
            ("2 2\n1 0 0\n0 1", 2),
        ] {
            match parse_frame_file(text) {
                Err(Error::Parse { line, .. }) => assert_eq!(line, want_line, "{text:?}"),
                other => panic!("{text:?} should be a parse error, got {other:?}"),
            }
        }
    }

    #[test]
    fn writing_prepends_provenance_and_round_trips() {
        let f = build("pentagon-complement5").unwrap();
        let text = write_frame_file(&f, "catalog pentagon-complement5");
        assert!(text.starts_with("# catalog pentagon-complement5\n5 3\n"));
        let back = parse_frame_file(&text).unwrap();
        for i in 0..f.n() {
            for (a, b) in f.vector(i).iter().zip(back.vector(i)) {
                assert_eq!(a.to_bits(), b.to_bits());
            }
        }
        assert_eq!(
            max_correlation(&f).unwrap().to_bits(),
            max_correlation(&back).unwrap().to_bits()
        );
    }

    #[test]
    fn random_frames_round_trip_bit_exactly() {
        for seed in 0..5u64 {
            let f = random_uniform_parseval(6, 3, seed).unwrap();
            let back = parse_frame_file(&write_frame_file(&f, "seeded start")).unwrap();
            for i in 0..f.n() {
                for (a, b) in f.vector(i).iter().zip(back.vector(i)) {
                    assert_eq!(a.to_bits(), b.to_bits(), "seed {seed}");
                }
            }
        }
    }

    #[test]
    fn negative_zero_survives_the_round_trip() {
        let f = Frame::new(vec![vec![-0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let back = parse_frame_file(&write_frame_file(&f, "sign check")).unwrap();
        assert_eq!(back.vector(0)[0].to_bits(), (-0.0f64).to_bits());
    }
}
