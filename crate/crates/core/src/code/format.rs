//! Line-oriented `eacq v1` code files.
//!
//! ```text
//! eacq v1
//! n 9  c1 3  c2 0
//! hq 110000000|000000000
//! ...
//! hc 10101000
//! ...
//! ```
//!
//! `hq` lines hold rows of `Ĥ` (z half, `|`, x half); `hc` lines hold rows of `H`. Blank lines
//! and `#` comments are ignored. The declared split must agree with the derived one.

use std::fmt::Write as _;

use super::EacqCode;
use crate::error::{Error, Result};
use crate::gf2::{BitMat, BitVec, SympMat, SympVec};

pub(super) fn write_code_file(code: &EacqCode) -> String {
    let mut out = String::new();
    out.push_str("eacq v1\n");
    let _ = writeln!(out, "n {}  c1 {}  c2 {}", code.n(), code.c1(), code.c2());
    for r in code.h_quantum().rows() {
        let _ = writeln!(out, "hq {r}");
    }
    for r in code.h_classical().rows() {
        let _ = writeln!(out, "hc {r}");
    }
    out
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn parse_usize(line: usize, tok: Option<&str>, what: &str) -> Result<usize> {
    tok.ok_or_else(|| parse_err(line, format!("missing value for {what}")))?
        .parse()
        .map_err(|_| parse_err(line, format!("{what} must be a nonnegative integer")))
}

/// Parses and builds a code. Errors carry 1-based line numbers.
pub fn parse_code_file(text: &str) -> Result<EacqCode> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (ln, magic) = lines.next().ok_or_else(|| parse_err(1, "empty file"))?;
    if magic.split_whitespace().collect::<Vec<_>>() != ["eacq", "v1"] {
        return Err(parse_err(ln, "expected header 'eacq v1'"));
    }

    let (ln, dims) = lines
        .next()
        .ok_or_else(|| parse_err(ln + 1, "missing 'n <int>  c1 <int>  c2 <int>' line"))?;
    let toks: Vec<&str> = dims.split_whitespace().collect();
    if toks.len() != 6 || toks[0] != "n" || toks[2] != "c1" || toks[4] != "c2" {
        return Err(parse_err(ln, "expected 'n <int>  c1 <int>  c2 <int>'"));
    }
    let n = parse_usize(ln, Some(toks[1]), "n")?;
    let c1 = parse_usize(ln, Some(toks[3]), "c1")?;
    let c2 = parse_usize(ln, Some(toks[5]), "c2")?;
    let c = c1 + 2 * c2;

    let mut hq_rows: Vec<SympVec> = Vec::new();
    let mut hc_rows: Vec<BitVec> = Vec::new();
    let mut last_line = ln;
    for (ln, line) in lines {
        last_line = ln;
        let (tag, body) = line
            .split_once(char::is_whitespace)
            .ok_or_else(|| parse_err(ln, "expected 'hq <row>' or 'hc <row>'"))?;
        let body = body.trim();
        match tag {
            "hq" => {
                if !hc_rows.is_empty() {
                    return Err(parse_err(ln, "hq rows must precede hc rows"));
                }
                let v: SympVec = body
                    .parse()
                    .map_err(|e| parse_err(ln, format!("bad hq row: {e}")))?;
                if v.n() != n {
                    return Err(parse_err(
                        ln,
                        format!("hq row acts on {} qubits, header says n = {n}", v.n()),
                    ));
                }
                hq_rows.push(v);
            }
            "hc" => {
                let m = hq_rows.len();
                if hc_rows.len() + c >= m {
                    return Err(parse_err(
                        ln,
                        format!(
                            "too many hc rows: expected {} for {m} hq rows and c = {c}",
                            m.saturating_sub(c)
                        ),
                    ));
                }
                let v: BitVec = body
                    .parse()
                    .map_err(|e| parse_err(ln, format!("bad hc row: {e}")))?;
                if v.len() != m {
                    return Err(parse_err(
                        ln,
                        format!(
                            "hc row has {} entries, expected one per hq row ({m})",
                            v.len()
                        ),
                    ));
                }
                hc_rows.push(v);
            }
            other => return Err(parse_err(ln, format!("unknown line tag {other:?}"))),
        }
    }

    let m = hq_rows.len();
    if m == 0 {
        return Err(parse_err(last_line + 1, "no hq rows"));
    }
    if hc_rows.len() + c != m {
        return Err(parse_err(
            last_line + 1,
            format!(
                "expected {} hc rows for {m} hq rows and c = {c}, found {}",
                m.saturating_sub(c),
                hc_rows.len()
            ),
        ));
    }
    let h_quantum = SympMat::from_rows(n, hq_rows)?;
    let h_classical = BitMat::from_rows(m, hc_rows)?;
    let code = EacqCode::build(h_quantum, h_classical)?;
    if (code.c1(), code.c2()) != (c1, c2) {
        return Err(Error::SplitMismatch {
            declared_c1: c1,
            declared_c2: c2,
            derived_c1: code.c1(),
            derived_c2: code.c2(),
            anticommuting: code
                .g_quantum()
                .first_anticommuting_pair()
                .map(|(a, b)| (a + 1, b + 1)),
        });
    }
    Ok(code)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn catalog_codes_round_trip() {
        for named in catalog::all() {
            let text = named.code.to_file_string();
            let back = parse_code_file(&text).unwrap();
            assert_eq!(back, named.code, "{}", named.name);
        }
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let text = "eacq v1\n# a comment\nn 1  c1 0  c2 0\n\nhq 1|0   # Z\nhc 1\n";
        let code = parse_code_file(text).unwrap();
        assert_eq!((code.n(), code.q(), code.c()), (1, 0, 0));
    }

    #[test]
    fn reports_offending_lines() {
        let good = catalog::eacq_9_1_3().code.to_file_string();
        let lines: Vec<&str> = good.lines().collect();

        let bad_magic = good.replacen("eacq v1", "eacq v2", 1);
        assert!(matches!(
            parse_code_file(&bad_magic),
            Err(Error::Parse { line: 1, .. })
        ));

        // One hc row too many: the extra line is reported.
        let mut extra = lines.clone();
        extra.push("hc 00000001");
        let err = parse_code_file(&extra.join("\n")).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 16, .. }), "{err}");

        // One hc row missing: reported just past the end.
        let short = lines[..lines.len() - 1].join("\n");
        let err = parse_code_file(&short).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 15, .. }), "{err}");

        let mut narrow = lines.clone();
        narrow[2] = "hq 11000000|000000000";
        let err = parse_code_file(&narrow.join("\n")).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");

        let mut junk = lines.clone();
        junk[12] = "hc 1010100x";
        let err = parse_code_file(&junk.join("\n")).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 13, .. }), "{err}");
    }

    #[test]
    fn declared_split_must_match() {
        let text = catalog::eacq_9_1_3()
            .code
            .to_file_string()
            .replace("c1 3  c2 0", "c1 1  c2 1");
        assert!(matches!(
            parse_code_file(&text),
            Err(Error::SplitMismatch {
                derived_c1: 3,
                derived_c2: 0,
                ..
            })
        ));
    }
}
