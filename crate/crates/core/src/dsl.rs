//! Text formats for bound quivers: the line-oriented quiver DSL and its JSON mirror.
//!
//! ```text
//! quiver
//! vertices: 1 2 3
//! arrows:
//!   a: 1 -> 2
//!   b: 2 -> 3
//! relations:
//!   a b          # a then b
//! ```

use crate::error::{Error, Result};
use crate::quiver::{is_token, ArrowSpec, BoundQuiver, QuiverSpec};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Lexeme {
    Word(String),
    Colon,
    To,
}

fn parse_error(line: usize, col: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        col,
        message: message.into(),
    }
}

/// Splits one line (comment already stripped) into lexemes with 1-based columns.
fn lex_line(line_no: usize, line: &str) -> Result<Vec<(usize, Lexeme)>> {
    let mut out = Vec::new();
    let mut chars = line.char_indices().peekable();
    while let Some(&(byte, c)) = chars.peek() {
        let col = line[..byte].chars().count() + 1;
        if c.is_whitespace() {
            chars.next();
        } else if c == ':' {
            chars.next();
            out.push((col, Lexeme::Colon));
        } else if c == '-' {
            chars.next();
            match chars.next() {
                Some((_, '>')) => out.push((col, Lexeme::To)),
                _ => return Err(parse_error(line_no, col, "expected `->`")),
            }
        } else if c.is_ascii_alphanumeric() || c == '_' || c == '\'' {
            let mut word = String::new();
            while let Some(&(_, c)) = chars.peek() {
                if c.is_ascii_alphanumeric() || c == '_' || c == '\'' {
                    word.push(c);
                    chars.next();
                } else {
                    break;
                }
            }
            out.push((col, Lexeme::Word(word)));
        } else {
            return Err(parse_error(
                line_no,
                col,
                format!("unexpected character `{c}`"),
            ));
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Section {
    Header,
    Vertices,
    Arrows,
    Relations,
}

/// Parses the DSL into an id-level spec without checking cross references.
pub fn parse_spec(text: &str) -> Result<QuiverSpec> {
    let mut spec = QuiverSpec::default();
    let mut section = Section::Header;
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let content = raw.split('#').next().unwrap_or("");
        let lexemes = lex_line(line_no, content)?;
        let Some((col, first)) = lexemes.first().cloned() else {
            continue;
        };

        match (section, &first) {
            (Section::Header, Lexeme::Word(w)) if w == "quiver" => {
                if let Some((col, _)) = lexemes.get(1) {
                    return Err(parse_error(
                        line_no,
                        *col,
                        "unexpected input after `quiver`",
                    ));
                }
                section = Section::Vertices;
                continue;
            }
            (Section::Header, _) => {
                return Err(parse_error(
                    line_no,
                    col,
                    "document must start with `quiver`",
                ));
            }
            _ => {}
        }

        if let (Lexeme::Word(w), Some((_, Lexeme::Colon))) = (&first, lexemes.get(1)) {
            let next_section = match w.as_str() {
                "vertices" => Some(Section::Vertices),
                "arrows" => Some(Section::Arrows),
                "relations" => Some(Section::Relations),
                _ => None,
            };
            if let Some(next_section) = next_section {
                let allowed = match next_section {
                    Section::Vertices => section == Section::Vertices && spec.vertices.is_empty(),
                    Section::Arrows => section == Section::Vertices,
                    Section::Relations => matches!(section, Section::Vertices | Section::Arrows),
                    Section::Header => false,
                };
                if !allowed {
                    return Err(parse_error(
                        line_no,
                        col,
                        format!("unexpected section `{w}:`"),
                    ));
                }
                let rest = &lexemes[2..];
                if next_section == Section::Vertices {
                    for (col, lex) in rest {
                        match lex {
                            Lexeme::Word(v) => spec.vertices.push(v.clone()),
                            _ => return Err(parse_error(line_no, *col, "expected vertex id")),
                        }
                    }
                } else if let Some((col, _)) = rest.first() {
                    return Err(parse_error(
                        line_no,
                        *col,
                        format!("`{w}:` must end its line"),
                    ));
                } else {
                    section = next_section;
                }
                continue;
            }
        }

        match section {
            Section::Arrows => match lexemes.as_slice() {
                [(_, Lexeme::Word(id)), (_, Lexeme::Colon), (_, Lexeme::Word(s)), (_, Lexeme::To), (_, Lexeme::Word(t))] =>
                {
                    spec.arrows
                        .push(ArrowSpec::new(id.as_str(), s.as_str(), t.as_str()));
                }
                _ => {
                    return Err(parse_error(
                        line_no,
                        col,
                        "expected arrow declaration `id: source -> target`",
                    ))
                }
            },
            Section::Relations => {
                let mut rel = Vec::with_capacity(lexemes.len());
                for (col, lex) in &lexemes {
                    match lex {
                        Lexeme::Word(a) => rel.push(a.clone()),
                        _ => return Err(parse_error(line_no, *col, "expected arrow id")),
                    }
                }
                spec.relations.push(rel);
            }
            _ => return Err(parse_error(line_no, col, "expected a section header")),
        }
    }

    if section == Section::Header {
        return Err(parse_error(last_line.max(1), 1, "missing `quiver` header"));
    }
    Ok(spec)
}

/// Parses and validates a DSL document.
pub fn parse_quiver(text: &str) -> Result<BoundQuiver> {
    BoundQuiver::from_spec(&parse_spec(text)?)
}

pub fn parse_json(text: &str) -> Result<BoundQuiver> {
    let spec: QuiverSpec = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        col: e.column(),
        message: e.to_string(),
    })?;
    for id in spec.relations.iter().flatten() {
        if !is_token(id) {
            return Err(Error::UnknownArrow(id.clone()));
        }
    }
    BoundQuiver::from_spec(&spec)
}

/// Accepts either format: JSON when the first non-blank character is `{`.
pub fn parse_document(text: &str) -> Result<BoundQuiver> {
    if text.trim_start().starts_with('{') {
        parse_json(text)
    } else {
        parse_quiver(text)
    }
}

pub fn to_dsl(bq: &BoundQuiver) -> String {
    let spec = bq.to_spec();
    let mut out = String::from("quiver\nvertices:");
    for v in &spec.vertices {
        out.push(' ');
        out.push_str(v);
    }
    out.push('\n');
    if !spec.arrows.is_empty() {
        out.push_str("arrows:\n");
        for a in &spec.arrows {
            out.push_str(&format!("  {}: {} -> {}\n", a.id, a.source, a.target));
        }
    }
    if !spec.relations.is_empty() {
        out.push_str("relations:\n");
        for r in &spec.relations {
            out.push_str("  ");
            out.push_str(&r.join(" "));
            out.push('\n');
        }
    }
    out
}

pub fn to_json(bq: &BoundQuiver) -> String {
    serde_json::to_string_pretty(&bq.to_spec()).expect("quiver spec serializes")
}

#[cfg(test)]
mod tests {
    use super::*;

    const SMALL: &str = "\
quiver   # header
vertices: 1 2 3
arrows:
  a: 1 -> 2
  b: 2 -> 3
relations:
  a b
";

    #[test]
    fn parses_small_document() {
        let bq = parse_quiver(SMALL).unwrap();
        assert_eq!(bq.num_vertices(), 3);
        assert_eq!(bq.num_arrows(), 2);
        assert_eq!(bq.relations().len(), 1);
    }

    #[test]
    fn one_vertex_without_arrows() {
        let bq = parse_quiver("quiver\nvertices: x\n").unwrap();
        assert_eq!(bq.num_vertices(), 1);
        assert_eq!(bq.num_arrows(), 0);
    }

    #[test]
    fn reports_position_of_bad_character() {
        let err = parse_quiver("quiver\nvertices: 1 2\narrows:\n  a: 1 => 2\n").unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                line: 4,
                col: 8,
                message: "unexpected character `=`".into()
            }
        );
    }

    #[test]
    fn rejects_missing_header_and_misplaced_sections() {
        assert!(matches!(
            parse_quiver("vertices: 1\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(parse_quiver(""), Err(Error::Parse { .. })));
        assert!(matches!(
            parse_quiver("quiver\nvertices: 1\nrelations:\narrows:\n"),
            Err(Error::Parse { line: 4, .. })
        ));
        assert!(matches!(
            parse_quiver("quiver\nvertices: 1 2\narrows:\n a 1 -> 2\n"),
            Err(Error::Parse { line: 4, .. })
        ));
    }

    #[test]
    fn non_composable_relation_is_rejected() {
        let text = "quiver\nvertices: 1 2 3\narrows:\n a: 1 -> 2\n b: 1 -> 3\nrelations:\n a b\n";
        assert!(matches!(
            parse_quiver(text),
            Err(Error::NonComposableRelation { .. })
        ));
    }

    #[test]
    fn json_mirror_uses_documented_keys() {
        let bq = parse_quiver(SMALL).unwrap();
        let value: serde_json::Value = serde_json::from_str(&to_json(&bq)).unwrap();
        assert_eq!(value["vertices"], serde_json::json!(["1", "2", "3"]));
        assert_eq!(
            value["arrows"][0],
            serde_json::json!({"id": "a", "source": "1", "target": "2"})
        );
        assert_eq!(value["relations"], serde_json::json!([["a", "b"]]));
        assert_eq!(parse_document(&to_json(&bq)).unwrap(), bq);
    }
}
