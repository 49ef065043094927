use std::fmt::Write;

use super::{ArgumentationFramework, Extension, Format};
use crate::error::{AfError, ParseError};

/// Parses an instance in the given format.
///
/// Arguments keep first-declaration order and duplicate attacks collapse.
pub fn parse_af(text: &str, format: Format) -> Result<ArgumentationFramework, ParseError> {
    match format {
        Format::Iccma23 => parse_iccma23(text),
        Format::Apx => parse_apx(text),
        Format::Tgf => parse_tgf(text),
    }
}

/// Serializes with stable ordering. ICCMA23 output numbers arguments by position.
pub fn serialize_af(af: &ArgumentationFramework, format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::Iccma23 => {
            writeln!(out, "p af {}", af.len()).unwrap();
            for &(a, b) in af.attacks() {
                writeln!(out, "{} {}", a + 1, b + 1).unwrap();
            }
        }
        Format::Apx => {
            for name in af.names() {
                writeln!(out, "arg({name}).").unwrap();
            }
            for &(a, b) in af.attacks() {
                writeln!(out, "att({},{}).", af.name(a), af.name(b)).unwrap();
            }
        }
        Format::Tgf => {
            for name in af.names() {
                writeln!(out, "{name}").unwrap();
            }
            out.push_str("#\n");
            for &(a, b) in af.attacks() {
                writeln!(out, "{} {}", af.name(a), af.name(b)).unwrap();
            }
        }
    }
    out
}

/// Reads an extension: a whitespace (or comma) separated id list, optionally
/// in solver `w a b c` form or wrapped in brackets. Unknown ids are errors.
pub fn parse_extension(af: &ArgumentationFramework, text: &str) -> Result<Extension, ParseError> {
    let mut ids = Vec::new();
    let mut first = true;
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let cleaned: String = line
            .chars()
            .map(|c| if matches!(c, '[' | ']' | ',') { ' ' } else { c })
            .collect();
        for token in cleaned.split_whitespace() {
            if first && token == "w" && af.id("w").is_none() {
                first = false;
                continue;
            }
            first = false;
            let id = af
                .id(token)
                .ok_or_else(|| ParseError::UnknownExtensionArgument {
                    line: lineno + 1,
                    id: token.to_string(),
                })?;
            ids.push(id);
        }
    }
    Ok(Extension::from_indices(af, ids).expect("ids come from the framework"))
}

fn declare(af: &mut ArgumentationFramework, line: usize, id: &str) -> Result<usize, ParseError> {
    af.add_argument(id).map_err(|e| match e {
        AfError::DuplicateArgument(id) => ParseError::DuplicateArgument { line, id },
        other => ParseError::Syntax {
            line,
            message: other.to_string(),
        },
    })
}

fn parse_iccma23(text: &str) -> Result<ArgumentationFramework, ParseError> {
    let mut af = ArgumentationFramework::new();
    let mut declared: Option<usize> = None;
    for (lineno, raw) in text.lines().enumerate() {
        let line_no = lineno + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens[0] == "p" {
            if declared.is_some() {
                return Err(ParseError::Header {
                    line: line_no,
                    message: "second header line".into(),
                });
            }
            let n = match tokens.as_slice() {
                ["p", "af", n] => n.parse::<usize>().map_err(|_| ParseError::Header {
                    line: line_no,
                    message: format!("invalid argument count `{n}`"),
                })?,
                _ => {
                    return Err(ParseError::Header {
                        line: line_no,
                        message: "expected `p af <n>`".into(),
                    })
                }
            };
            for i in 1..=n {
                declare(&mut af, line_no, &i.to_string())?;
            }
            declared = Some(n);
            continue;
        }
        let n = declared.ok_or_else(|| ParseError::Header {
            line: line_no,
            message: "attack before `p af <n>` header".into(),
        })?;
        if tokens.len() != 2 {
            return Err(ParseError::Syntax {
                line: line_no,
                message: format!("expected `<i> <j>`, found `{line}`"),
            });
        }
        let mut ends = [0usize; 2];
        for (slot, tok) in ends.iter_mut().zip(&tokens) {
            let v: usize = tok.parse().map_err(|_| ParseError::Syntax {
                line: line_no,
                message: format!("invalid argument index `{tok}`"),
            })?;
            if v == 0 || v > n {
                return Err(ParseError::UndeclaredArgument {
                    line: line_no,
                    id: tok.to_string(),
                });
            }
            *slot = v - 1;
        }
        af.add_attack(ends[0], ends[1]).expect("range checked");
    }
    if declared.is_none() {
        return Err(ParseError::Header {
            line: 1,
            message: "missing `p af <n>` header".into(),
        });
    }
    Ok(af)
}

/// Splits APX text into `(line, statement)` pairs terminated by `.` outside parentheses.
fn apx_statements(text: &str) -> Result<Vec<(usize, String)>, ParseError> {
    let mut out = Vec::new();
    let mut current = String::new();
    let mut start = 0;
    let mut depth = 0i32;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('%').next().unwrap_or("");
        for c in line.chars() {
            if current.trim().is_empty() && !c.is_whitespace() {
                start = lineno + 1;
            }
            match c {
                '(' => depth += 1,
                ')' => depth -= 1,
                '.' if depth == 0 => {
                    out.push((start, current.trim().to_string()));
                    current.clear();
                    continue;
                }
                _ => {}
            }
            current.push(c);
        }
        current.push(' ');
    }
    if !current.trim().is_empty() {
        return Err(ParseError::Syntax {
            line: start,
            message: format!("unterminated statement `{}`", current.trim()),
        });
    }
    Ok(out)
}

fn parse_apx(text: &str) -> Result<ArgumentationFramework, ParseError> {
    let mut af = ArgumentationFramework::new();
    let mut pending = Vec::new();
    for (line, stmt) in apx_statements(text)? {
        let body = |prefix: &str| {
            stmt.strip_prefix(prefix)
                .and_then(|s| s.trim_start().strip_prefix('('))
                .and_then(|s| s.strip_suffix(')'))
                .map(str::trim)
        };
        if let Some(id) = body("arg") {
            declare(&mut af, line, id)?;
        } else if let Some(pair) = body("att") {
            let parts: Vec<&str> = pair.split(',').map(str::trim).collect();
            if parts.len() != 2 || parts.iter().any(|p| p.is_empty()) {
                return Err(ParseError::Syntax {
                    line,
                    message: format!("malformed attack `{stmt}`"),
                });
            }
            pending.push((line, parts[0].to_string(), parts[1].to_string()));
        } else {
            return Err(ParseError::Syntax {
                line,
                message: format!("unrecognized statement `{stmt}`"),
            });
        }
    }
    for (line, a, b) in pending {
        let lookup = |id: &str| {
            af.id(id).ok_or_else(|| ParseError::UndeclaredArgument {
                line,
                id: id.to_string(),
            })
        };
        let (a, b) = (lookup(&a)?, lookup(&b)?);
        af.add_attack(a, b).expect("declared");
    }
    Ok(af)
}

fn parse_tgf(text: &str) -> Result<ArgumentationFramework, ParseError> {
    let mut af = ArgumentationFramework::new();
    let mut in_edges = false;
    for (lineno, raw) in text.lines().enumerate() {
        let line_no = lineno + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if line == "#" {
            if in_edges {
                return Err(ParseError::Syntax {
                    line: line_no,
                    message: "second `#` separator".into(),
                });
            }
            in_edges = true;
            continue;
        }
        let mut tokens = line.split_whitespace();
        let first = tokens.next().expect("non-empty line");
        if !in_edges {
            declare(&mut af, line_no, first)?;
            continue;
        }
        let second = tokens.next().ok_or_else(|| ParseError::Syntax {
            line: line_no,
            message: format!("edge line needs two endpoints, found `{line}`"),
        })?;
        let lookup = |id: &str| {
            af.id(id).ok_or_else(|| ParseError::UndeclaredArgument {
                line: line_no,
                id: id.to_string(),
            })
        };
        let (a, b) = (lookup(first)?, lookup(second)?);
        af.add_attack(a, b).expect("declared");
    }
    Ok(af)
}
