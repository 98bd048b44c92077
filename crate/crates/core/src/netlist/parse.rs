use super::{is_identifier, Circuit, CircuitBuilder, Location, NetlistError, NodeKind};
use crate::signal::Level;

/// Name given to circuits whose text has no `circuit` header.
pub const DEFAULT_CIRCUIT_NAME: &str = "top";

struct Token<'a> {
    text: &'a str,
    at: Location,
}

fn tokenize(line: &str, line_no: usize) -> Vec<Token<'_>> {
    let code = match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    };
    let mut tokens = Vec::new();
    let mut start: Option<usize> = None;
    for (i, ch) in code.char_indices().chain(std::iter::once((code.len(), ' '))) {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                tokens.push(Token {
                    text: &code[s..i],
                    at: Location {
                        line: line_no,
                        column: code[..s].chars().count() + 1,
                    },
                });
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    tokens
}

fn syntax(at: Location, message: impl Into<String>) -> NetlistError {
    NetlistError::Syntax {
        at,
        message: message.into(),
    }
}

fn ident(tok: &Token<'_>) -> Result<String, NetlistError> {
    let name = tok.text.to_ascii_lowercase();
    if is_identifier(&name) {
        Ok(name)
    } else {
        Err(NetlistError::InvalidIdentifier {
            name: tok.text.to_string(),
            at: Some(tok.at),
        })
    }
}

fn expect_len(tokens: &[Token<'_>], n: usize, usage: &str) -> Result<(), NetlistError> {
    if tokens.len() == n {
        return Ok(());
    }
    let at = tokens
        .get(n)
        .or_else(|| tokens.last())
        .map(|t| t.at)
        .expect("non-empty line");
    let what = if tokens.len() < n { "missing field" } else { "unexpected token" };
    Err(syntax(at, format!("{what}; expected `{usage}`")))
}

fn field(tok: &Token<'_>, key: &str) -> Result<String, NetlistError> {
    let lower = tok.text.to_ascii_lowercase();
    let prefix = format!("{key}=");
    match lower.strip_prefix(&prefix) {
        Some(rest) if is_identifier(rest) => Ok(rest.to_string()),
        Some(_) => Err(NetlistError::InvalidIdentifier {
            name: tok.text.to_string(),
            at: Some(tok.at),
        }),
        None => Err(syntax(tok.at, format!("expected `{prefix}NAME`"))),
    }
}

/// Parses `.net` text into a validated [`Circuit`].
///
/// ```text
/// circuit NAME
/// node NAME (in|out|wire)
/// supply NAME (0|1)
/// fet NAME src=NAME drn=NAME cg=NAME pg=NAME
/// ```
///
/// `#` starts a comment, blank lines are ignored, and everything is
/// case-insensitive. The `circuit` header is optional; without it the
/// circuit is named `top`.
pub fn parse_netlist(text: &str) -> Result<Circuit, NetlistError> {
    let mut builder = CircuitBuilder::new(DEFAULT_CIRCUIT_NAME);
    let mut seen_decl = false;

    for (i, line) in text.lines().enumerate() {
        let tokens = tokenize(line, i + 1);
        let Some(head) = tokens.first() else {
            continue;
        };
        let keyword = head.text.to_ascii_lowercase();
        match keyword.as_str() {
            "circuit" => {
                if seen_decl {
                    return Err(syntax(head.at, "`circuit` header must come first"));
                }
                expect_len(&tokens, 2, "circuit NAME")?;
                let name = ident(&tokens[1])?;
                builder.set_name(&name, Some(tokens[1].at));
            }
            "node" => {
                expect_len(&tokens, 3, "node NAME (in|out|wire)")?;
                let name = ident(&tokens[1])?;
                let kind = match tokens[2].text.to_ascii_lowercase().as_str() {
                    "in" => NodeKind::Input,
                    "out" => NodeKind::Output,
                    "wire" => NodeKind::Internal,
                    _ => return Err(syntax(tokens[2].at, "node kind must be `in`, `out` or `wire`")),
                };
                builder.node_at(&name, kind, Some(tokens[1].at));
            }
            "supply" => {
                expect_len(&tokens, 3, "supply NAME (0|1)")?;
                let name = ident(&tokens[1])?;
                let level = match tokens[2].text {
                    "0" => Level::L0,
                    "1" => Level::L1,
                    _ => return Err(syntax(tokens[2].at, "supply level must be `0` or `1`")),
                };
                builder.node_at(&name, NodeKind::Supply(level), Some(tokens[1].at));
            }
            "fet" => {
                expect_len(&tokens, 6, "fet NAME src=NAME drn=NAME cg=NAME pg=NAME")?;
                let id = ident(&tokens[1])?;
                let src = field(&tokens[2], "src")?;
                let drn = field(&tokens[3], "drn")?;
                let cg = field(&tokens[4], "cg")?;
                let pg = field(&tokens[5], "pg")?;
                builder.fet_at(&id, [&src, &drn, &cg, &pg], Some(head.at));
            }
            _ => {
                return Err(syntax(
                    head.at,
                    format!("unknown declaration `{}`", head.text),
                ))
            }
        }
        seen_decl = true;
    }

    builder.build()
}
