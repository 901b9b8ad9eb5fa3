//! Facet-list text format and its JSON mirror.
//!
//! ```text
//! # the 4-cycle
//! m=4
//! 1 2
//! 2 3
//! 3 4
//! 1 4
//! ```

use super::{ComplexError, ComplexJson, Face, SimplicialComplex, MAX_VERTICES};

/// Parses either format; a document whose first non-blank character is `{` is JSON.
pub fn parse_complex(text: &str) -> Result<SimplicialComplex, ComplexError> {
    if text.trim_start().starts_with('{') {
        parse_json(text)
    } else {
        parse_facets(text)
    }
}

pub fn parse_facets(text: &str) -> Result<SimplicialComplex, ComplexError> {
    let mut declared: Option<u64> = None;
    let mut rows: Vec<(usize, Vec<u64>)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        if body.starts_with('m') {
            if declared.is_some() {
                return Err(ComplexError::DuplicateHeader { line });
            }
            declared = Some(parse_header(body, line)?);
            continue;
        }
        let mut row = Vec::new();
        for token in body.split_whitespace() {
            let v: u64 = token.parse().map_err(|_| ComplexError::MalformedToken {
                line,
                token: token.to_string(),
            })?;
            row.push(v);
        }
        rows.push((line, row));
    }

    if rows.is_empty() {
        return Err(ComplexError::Empty);
    }
    let bound = declared.unwrap_or(MAX_VERTICES as u64);
    let mut seen_max = 0u64;
    let mut faces = Vec::with_capacity(rows.len());
    for (line, row) in rows {
        let mut mask = 0u64;
        for v in row {
            if v == 0 || v > bound {
                return Err(ComplexError::VertexOutOfRange {
                    line,
                    vertex: v,
                    m: bound,
                });
            }
            let bit = 1u64 << (v - 1);
            if mask & bit != 0 {
                return Err(ComplexError::DuplicateVertex {
                    line,
                    vertex: v as usize,
                });
            }
            mask |= bit;
            seen_max = seen_max.max(v);
        }
        faces.push(Face::from_mask(mask));
    }
    let m = declared.unwrap_or(seen_max);
    if m == 0 {
        return Err(ComplexError::Empty);
    }
    SimplicialComplex::from_faces(m as usize, faces)
}

fn parse_header(body: &str, line: usize) -> Result<u64, ComplexError> {
    let malformed = || ComplexError::MalformedHeader {
        line,
        text: body.to_string(),
    };
    let value = body[1..].trim_start().strip_prefix('=').ok_or_else(malformed)?.trim();
    let m: u64 = value.parse().map_err(|_| malformed())?;
    if m == 0 || m > MAX_VERTICES as u64 {
        return Err(ComplexError::UnsupportedVertexCount(m));
    }
    Ok(m)
}

pub fn parse_json(text: &str) -> Result<SimplicialComplex, ComplexError> {
    let doc: ComplexJson = serde_json::from_str(text).map_err(|e| ComplexError::Json(e.to_string()))?;
    if doc.m == 0 || doc.m > MAX_VERTICES {
        return Err(ComplexError::UnsupportedVertexCount(doc.m as u64));
    }
    if doc.facets.is_empty() {
        return Err(ComplexError::Empty);
    }
    let mut faces = Vec::with_capacity(doc.facets.len());
    for (i, list) in doc.facets.iter().enumerate() {
        let mut mask = 0u64;
        for &v in list {
            if v == 0 || v > doc.m {
                return Err(ComplexError::VertexOutOfRange {
                    line: i + 1,
                    vertex: v as u64,
                    m: doc.m as u64,
                });
            }
            let bit = 1u64 << (v - 1);
            if mask & bit != 0 {
                return Err(ComplexError::DuplicateVertex { line: i + 1, vertex: v });
            }
            mask |= bit;
        }
        faces.push(Face::from_mask(mask));
    }
    SimplicialComplex::from_faces(doc.m, faces)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn four_cycle_text() {
        let k = parse_facets("1 2\n2 3\n3 4\n1 4").unwrap();
        assert_eq!(k.vertex_count(), 4);
        assert_eq!(k.dimension(), 1);
        assert_eq!(k.facets().len(), 4);
    }

    #[test]
    fn header_and_full_simplex() {
        let k = parse_facets("m=3\n1 2 3\n").unwrap();
        assert_eq!(k.faces().unwrap().len(), 8);
    }

    #[test]
    fn subsumed_lines_are_dropped() {
        let k = parse_facets("1 2\n1 2 3").unwrap();
        assert_eq!(k.facets(), &[Face::from_vertices([1, 2, 3]).unwrap()]);
    }

    #[test]
    fn comments_blank_lines_and_ghosts() {
        let k = parse_facets("# a path\n\nm = 5\n1 2 # edge\n2 3\n").unwrap();
        assert_eq!(k.vertex_count(), 5);
        assert_eq!(k.ghost_vertices(), vec![4, 5]);
    }

    #[test]
    fn errors() {
        assert_eq!(parse_facets("").unwrap_err(), ComplexError::Empty);
        assert_eq!(parse_facets("# only\n\n").unwrap_err(), ComplexError::Empty);
        assert!(matches!(
            parse_facets("0 1").unwrap_err(),
            ComplexError::VertexOutOfRange { line: 1, vertex: 0, .. }
        ));
        assert!(matches!(
            parse_facets("m=3\n1 4").unwrap_err(),
            ComplexError::VertexOutOfRange {
                line: 2,
                vertex: 4,
                m: 3
            }
        ));
        assert!(matches!(
            parse_facets("1 x").unwrap_err(),
            ComplexError::MalformedToken { .. }
        ));
        assert!(matches!(
            parse_facets("1 -2").unwrap_err(),
            ComplexError::MalformedToken { .. }
        ));
        assert!(matches!(
            parse_facets("1 1 2").unwrap_err(),
            ComplexError::DuplicateVertex { vertex: 1, .. }
        ));
        assert!(matches!(
            parse_facets("m=3\nm=3\n1").unwrap_err(),
            ComplexError::DuplicateHeader { line: 2 }
        ));
        assert!(matches!(
            parse_facets("m=99999999999999999999999\n1").unwrap_err(),
            ComplexError::MalformedHeader { .. }
        ));
        assert!(matches!(
            parse_facets("m=1000\n1").unwrap_err(),
            ComplexError::UnsupportedVertexCount(1000)
        ));
        assert!(matches!(
            parse_facets("m=0\n1").unwrap_err(),
            ComplexError::UnsupportedVertexCount(0)
        ));
        assert!(matches!(
            parse_facets("65").unwrap_err(),
            ComplexError::VertexOutOfRange { .. }
        ));
    }

    #[test]
    fn json_mirror() {
        let k = parse_complex(r#"{"m": 4, "facets": [[1,2],[2,3],[3,4],[1,4]]}"#).unwrap();
        assert_eq!(k, parse_facets("1 2\n2 3\n3 4\n1 4").unwrap());
        assert_eq!(parse_json(&serde_json::to_string(&k.to_json()).unwrap()).unwrap(), k);
        assert!(parse_complex(r#"{"m": 2, "facets": [[3]]}"#).is_err());
        assert!(parse_complex(r#"{"m": 2}"#).is_err());
        assert!(parse_complex(r#"{"m": 2, "facets": []}"#).is_err());
    }

    #[test]
    fn facet_text_round_trip() {
        let k = super::super::cross_polytope_boundary(3).unwrap();
        assert_eq!(parse_facets(&k.to_facet_text()).unwrap(), k);
    }
}
