//! Text syntax for quivers.
//!
//! Clauses are separated by newlines or `;`. A clause is one of
//!
//! * `a -> b`: an arrow between positive integer vertex identifiers,
//! * `vertex a`: an isolated (or explicitly ordered) vertex,
//! * a preset token `A<n>`, `D<n>`, `E<n>` or `Kronecker(<r>)`, which must
//!   be the only clause.
//!
//! `#` starts a comment running to the end of the line. Vertices are ordered
//! by first mention.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::quiver::{preset, PresetFamily, Quiver, QuiverError};

/// Parses a bare preset token such as `A5` or `Kronecker(3)`.
///
/// Returns `None` if `token` does not have preset shape at all.
pub fn parse_preset_token(token: &str) -> Option<(PresetFamily, u32)> {
    let digits = |s: &str| -> Option<u32> {
        (!s.is_empty() && s.bytes().all(|b| b.is_ascii_digit())).then(|| s.parse().ok()).flatten()
    };
    if let Some(inner) = token.strip_prefix("Kronecker(").and_then(|s| s.strip_suffix(')')) {
        return digits(inner).map(|r| (PresetFamily::Kronecker, r));
    }
    let family = match token.as_bytes().first()? {
        b'A' => PresetFamily::A,
        b'D' => PresetFamily::D,
        b'E' => PresetFamily::E,
        _ => return None,
    };
    digits(&token[1..]).map(|n| (family, n))
}

fn parse_vertex(s: &str, clause: usize) -> Result<u64, QuiverError> {
    let s = s.trim();
    match s.parse::<u64>() {
        Ok(v) if v > 0 => Ok(v),
        _ if s.is_empty() => Err(QuiverError::Parse { clause, message: "missing vertex".to_string() }),
        _ => Err(QuiverError::Parse { clause, message: format!("`{s}` is not a positive integer vertex") }),
    }
}

pub fn parse_quiver(text: &str) -> Result<Quiver, QuiverError> {
    let mut vertices: Vec<u64> = Vec::new();
    let mut arrows: Vec<(u64, u64)> = Vec::new();
    let mut preset_clause: Option<(usize, (PresetFamily, u32))> = None;
    let mut clause_count = 0usize;
    let touch = |v: u64, vertices: &mut Vec<u64>| {
        if !vertices.contains(&v) {
            vertices.push(v);
        }
    };

    let clauses = text.lines().map(|line| line.split('#').next().unwrap_or("")).flat_map(|l| l.split(';'));
    for (i, raw) in clauses.enumerate() {
        let clause = i + 1;
        let c = raw.trim();
        if c.is_empty() {
            continue;
        }
        clause_count += 1;
        if let Some((lhs, rhs)) = c.split_once("->") {
            if rhs.contains("->") {
                return Err(QuiverError::Parse { clause, message: "one arrow per clause".to_string() });
            }
            let (s, t) = (parse_vertex(lhs, clause)?, parse_vertex(rhs, clause)?);
            touch(s, &mut vertices);
            touch(t, &mut vertices);
            arrows.push((s, t));
        } else if let Some(rest) = c.strip_prefix("vertex") {
            if !rest.starts_with(char::is_whitespace) {
                return Err(QuiverError::Parse { clause, message: format!("unrecognised clause `{c}`") });
            }
            touch(parse_vertex(rest, clause)?, &mut vertices);
        } else if let Some(p) = parse_preset_token(c) {
            preset_clause = Some((clause, p));
        } else if c.starts_with(|ch: char| ch.is_ascii_alphabetic()) {
            return Err(QuiverError::UnknownPreset(String::from(c)));
        } else {
            return Err(QuiverError::Parse { clause, message: format!("unrecognised clause `{c}`") });
        }
    }

    match preset_clause {
        Some((_, (family, n))) if clause_count == 1 => preset(family, n),
        Some((clause, _)) => {
            Err(QuiverError::Parse { clause, message: "a preset token must be the only clause".to_string() })
        }
        None if clause_count == 0 => {
            Err(QuiverError::Parse { clause: 1, message: "empty quiver description".to_string() })
        }
        None => Quiver::new(vertices, &arrows),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arrows_and_vertices() {
        let q = parse_quiver("1 -> 2; 2 -> 3").unwrap();
        assert_eq!(q.vertices(), &[1, 2, 3]);
        assert_eq!(q.arrows().collect::<Vec<_>>(), [(1, 2), (2, 3)]);
        let q = parse_quiver("vertex 4\n1->2\n# trailing comment\n1 -> 2").unwrap();
        assert_eq!(q.vertices(), &[4, 1, 2]);
        assert_eq!(q.arrow_indices(), &[(1, 2), (1, 2)]);
    }

    #[test]
    fn labels_are_normalised_by_first_mention() {
        let q = parse_quiver("5 -> 3").unwrap();
        assert_eq!(q.vertices(), &[5, 3]);
        assert_eq!(q.arrow_indices(), &[(0, 1)]);
    }

    #[test]
    fn preset_delegation() {
        assert_eq!(parse_quiver("A5").unwrap(), preset(PresetFamily::A, 5).unwrap());
        assert_eq!(parse_quiver(" Kronecker(3) ").unwrap(), preset(PresetFamily::Kronecker, 3).unwrap());
        assert_eq!(parse_quiver("E7\n").unwrap(), preset(PresetFamily::E, 7).unwrap());
        assert!(matches!(parse_quiver("D3"), Err(QuiverError::PresetOutOfRange { .. })));
    }

    #[test]
    fn malformed_clauses() {
        assert_eq!(parse_quiver("1 ->"), Err(QuiverError::Parse { clause: 1, message: "missing vertex".to_string() }));
        assert!(matches!(parse_quiver("1 -> 2; x -> 3"), Err(QuiverError::Parse { clause: 2, .. })));
        assert!(matches!(parse_quiver("1 -> 2 -> 3"), Err(QuiverError::Parse { clause: 1, .. })));
        assert!(matches!(parse_quiver("0 -> 1"), Err(QuiverError::Parse { .. })));
        assert!(matches!(parse_quiver(";;"), Err(QuiverError::Parse { .. })));
        assert!(matches!(parse_quiver("A3; 1 -> 2"), Err(QuiverError::Parse { clause: 1, .. })));
        assert!(matches!(parse_quiver("vertexx 1"), Err(QuiverError::Parse { .. })));
        assert!(matches!(parse_quiver("12"), Err(QuiverError::Parse { .. })));
    }

    #[test]
    fn unknown_presets() {
        assert_eq!(parse_quiver("F4"), Err(QuiverError::UnknownPreset("F4".to_string())));
        assert_eq!(parse_quiver("Kronecker(x)"), Err(QuiverError::UnknownPreset("Kronecker(x)".to_string())));
    }

    #[test]
    fn preset_tokens() {
        assert_eq!(parse_preset_token("A12"), Some((PresetFamily::A, 12)));
        assert_eq!(parse_preset_token("Kronecker(2)"), Some((PresetFamily::Kronecker, 2)));
        assert_eq!(parse_preset_token("A"), None);
        assert_eq!(parse_preset_token("B3"), None);
        assert_eq!(parse_preset_token("A-1"), None);
    }
}
