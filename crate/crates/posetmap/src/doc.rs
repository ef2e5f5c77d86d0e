//! Wire format: a JSON document describing a piecewise map, plus a plain
//! text point-list format. All numbers are integers; `null` in a box
//! bound means unbounded; permutation targets are 1-based to match the
//! notation of the underlying poset.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Perm;
use crate::pmap::PiecewiseMap;
use crate::point::Point;
use crate::region::{BoxRegion, Interval};
use crate::rule::Rule;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PieceDoc {
    /// Per axis: `[lo, hi]` with `hi = null` for an unbounded interval.
    #[serde(rename = "box")]
    pub box_: Vec<(i64, Option<i64>)>,
    /// 1-based target position of each coordinate.
    pub perm: Vec<usize>,
    pub shift: Vec<i64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ElementDocument {
    pub dim: usize,
    pub pieces: Vec<PieceDoc>,
    pub holes: Vec<Vec<i64>>,
    pub patch: Vec<(Vec<i64>, Vec<i64>)>,
}

impl ElementDocument {
    pub fn from_map(a: &PiecewiseMap) -> ElementDocument {
        ElementDocument {
            dim: a.dim(),
            pieces: a
                .pieces()
                .iter()
                .map(|p| PieceDoc {
                    box_: p
                        .region
                        .intervals()
                        .iter()
                        .map(|iv| (iv.lo(), iv.hi()))
                        .collect(),
                    perm: p.rule.perm().targets().iter().map(|&t| t + 1).collect(),
                    shift: p.rule.shift().to_vec(),
                })
                .collect(),
            holes: a.holes().iter().map(|h| h.coords().to_vec()).collect(),
            patch: a
                .patch()
                .iter()
                .map(|(k, v)| (k.coords().to_vec(), v.coords().to_vec()))
                .collect(),
        }
    }

    /// Reconstruct the map, reporting the offending field on failure.
    pub fn to_map(&self) -> Result<PiecewiseMap> {
        let dim = self.dim;
        let mut pieces = Vec::with_capacity(self.pieces.len());
        for (i, p) in self.pieces.iter().enumerate() {
            if p.box_.len() != dim {
                return Err(Error::Format(format!(
                    "pieces[{i}].box: expected {dim} intervals, got {}",
                    p.box_.len()
                )));
            }
            let mut ivs = Vec::with_capacity(dim);
            for (j, &(lo, hi)) in p.box_.iter().enumerate() {
                let iv = match hi {
                    Some(h) => Interval::bounded(lo, h),
                    None => Interval::unbounded(lo),
                };
                ivs.push(iv.map_err(|e| {
                    Error::Format(format!("pieces[{i}].box[{j}]: {e}"))
                })?);
            }
            let region = BoxRegion::new(ivs)
                .map_err(|e| Error::Format(format!("pieces[{i}].box: {e}")))?;
            if p.perm.len() != dim {
                return Err(Error::Format(format!(
                    "pieces[{i}].perm: expected {dim} targets, got {}",
                    p.perm.len()
                )));
            }
            for (j, &t) in p.perm.iter().enumerate() {
                if t < 1 || t > dim {
                    return Err(Error::Format(format!(
                        "pieces[{i}].perm[{j}]: target {t} outside 1..={dim}"
                    )));
                }
            }
            let perm = Perm::new(p.perm.iter().map(|&t| t - 1).collect())
                .map_err(|e| Error::Format(format!("pieces[{i}].perm: {e}")))?;
            if p.shift.len() != dim {
                return Err(Error::Format(format!(
                    "pieces[{i}].shift: expected {dim} entries, got {}",
                    p.shift.len()
                )));
            }
            let rule = Rule::new(perm, p.shift.clone())
                .map_err(|e| Error::Format(format!("pieces[{i}]: {e}")))?;
            pieces.push((region, rule));
        }
        let mut holes = Vec::with_capacity(self.holes.len());
        for (i, h) in self.holes.iter().enumerate() {
            if h.len() != dim {
                return Err(Error::Format(format!(
                    "holes[{i}]: expected {dim} coordinates, got {}",
                    h.len()
                )));
            }
            holes.push(
                Point::new(h.clone())
                    .map_err(|e| Error::Format(format!("holes[{i}]: {e}")))?,
            );
        }
        let mut patch = Vec::with_capacity(self.patch.len());
        for (i, (k, v)) in self.patch.iter().enumerate() {
            if k.len() != dim || v.len() != dim {
                return Err(Error::Format(format!(
                    "patch[{i}]: expected two points of {dim} coordinates"
                )));
            }
            let kp = Point::new(k.clone())
                .map_err(|e| Error::Format(format!("patch[{i}][0]: {e}")))?;
            let vp = Point::new(v.clone())
                .map_err(|e| Error::Format(format!("patch[{i}][1]: {e}")))?;
            patch.push((kp, vp));
        }
        PiecewiseMap::from_parts(dim, pieces, holes, patch)
            .map_err(|e| Error::Format(format!("element: {e}")))
    }
}

/// Parse an element from JSON text.
pub fn parse_element(text: &str) -> Result<PiecewiseMap> {
    let doc: ElementDocument = serde_json::from_str(text).map_err(|e| {
        Error::Format(format!("line {} column {}: {e}", e.line(), e.column()))
    })?;
    doc.to_map()
}

/// Canonical JSON for an element; `parse_element` of the output
/// reconstructs a structurally identical map.
pub fn serialize_element(a: &PiecewiseMap) -> String {
    serde_json::to_string_pretty(&ElementDocument::from_map(a)).expect("plain data")
}

/// Parse a point list like `(2,1,1) (1,3,1)`; groups are separated by
/// whitespace, coordinates by commas. All points must share a dimension.
pub fn parse_points(text: &str) -> Result<Vec<Point>> {
    let mut out = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        if !rest.starts_with('(') {
            return Err(Error::Format(format!(
                "expected '(' at: {}",
                rest.chars().take(12).collect::<String>()
            )));
        }
        let close = rest.find(')').ok_or_else(|| {
            Error::Format(format!(
                "unclosed '(' at: {}",
                rest.chars().take(12).collect::<String>()
            ))
        })?;
        let inner = &rest[1..close];
        let coords: Result<Vec<i64>> = inner
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::Format(format!("bad coordinate '{}'", t.trim())))
            })
            .collect();
        let p = Point::new(coords?)
            .map_err(|e| Error::Format(format!("point ({inner}): {e}")))?;
        if let Some(first) = out.first() {
            let f: &Point = first;
            if f.dim() != p.dim() {
                return Err(Error::Format(format!(
                    "point {p} has dimension {}, expected {}",
                    p.dim(),
                    f.dim()
                )));
            }
        }
        out.push(p);
        rest = rest[close + 1..].trim_start_matches([' ', '\t', '\n', ',']);
    }
    if out.is_empty() {
        return Err(Error::Format("empty point list".into()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::generate;

    fn pt(cs: &[i64]) -> Point {
        Point::new(cs.to_vec()).unwrap()
    }

    #[test]
    fn roundtrip_constructors() {
        let maps = vec![
            PiecewiseMap::identity(3),
            PiecewiseMap::unit(Perm::transposition(3, 0, 2)),
            PiecewiseMap::identity_off(3, vec![pt(&[2, 3, 1])]).unwrap(),
            PiecewiseMap::cylinder_shift(3, 0, &[0, 2, 2], -1).unwrap(),
        ];
        for a in maps {
            let text = serialize_element(&a);
            let back = parse_element(&text).unwrap();
            assert_eq!(back, a, "structural roundtrip for {text}");
        }
    }

    #[test]
    fn roundtrip_generated() {
        for seed in 0..25u64 {
            let a = generate(3, seed, 3).unwrap();
            let back = parse_element(&serialize_element(&a)).unwrap();
            assert_eq!(back, a);
        }
    }

    #[test]
    fn rejects_bad_json() {
        let err = parse_element("{not json").unwrap_err();
        assert!(matches!(err, Error::Format(_)));
    }

    #[test]
    fn rejects_bad_fields() {
        // wrong box arity
        let text = r#"{"dim":3,"pieces":[{"box":[[1,null],[1,null]],"perm":[1,2,3],"shift":[0,0,0]}],"holes":[],"patch":[]}"#;
        let err = parse_element(text).unwrap_err();
        assert!(err.to_string().contains("pieces[0].box"), "{err}");

        // non-permutation
        let text = r#"{"dim":3,"pieces":[{"box":[[1,null],[1,null],[1,null]],"perm":[1,1,3],"shift":[0,0,0]}],"holes":[],"patch":[]}"#;
        let err = parse_element(text).unwrap_err();
        assert!(err.to_string().contains("pieces[0].perm"), "{err}");

        // coordinate below 1 in a hole
        let text = r#"{"dim":3,"pieces":[{"box":[[1,null],[1,null],[1,null]],"perm":[1,2,3],"shift":[0,0,0]}],"holes":[[0,1,1]],"patch":[]}"#;
        let err = parse_element(text).unwrap_err();
        assert!(err.to_string().contains("holes[0]"), "{err}");
    }

    #[test]
    fn parse_points_examples() {
        let pts = parse_points("(2,1,1) (1,3,1) (1,1,4)").unwrap();
        assert_eq!(pts, vec![pt(&[2, 1, 1]), pt(&[1, 3, 1]), pt(&[1, 1, 4])]);
        assert!(parse_points("").is_err());
        assert!(parse_points("(1,2").is_err());
        assert!(parse_points("(1,x)").is_err());
        assert!(parse_points("(1,2) (1,2,3)").is_err());
    }
}
