//! Text form of directions.
//!
//! ```text
//! deg:<angle>          angle in {0, 30, 45, 60, 90, 120, 135, 150}
//! tan:<RealQuad>       direction 1 + i·tan α, e.g. tan:sqrt(7)
//! vec:(<RQ>,<RQ>)      raw components
//! i                    shorthand for deg:90
//! ```

use crate::field::{parse_real_quad, RealQuad};

use super::{Direction, GeometryError, Point};

fn parse_err(input: &str, reason: impl Into<String>) -> GeometryError {
    GeometryError::Parse { input: input.to_string(), reason: reason.into() }
}

/// Unit vector for the angles that have an exact representation in a single
/// quadratic field.
fn degree_vector(deg: u32) -> Option<Point> {
    let rq = |s: &str| parse_real_quad(s).expect("static literal");
    let p = match deg {
        0 => Point::from_ints(1, 0),
        30 => Point::new(rq("1/2*sqrt(3)"), rq("1/2")),
        45 => Point::new(rq("1/2*sqrt(2)"), rq("1/2*sqrt(2)")),
        60 => Point::new(rq("1/2"), rq("1/2*sqrt(3)")),
        90 => Point::from_ints(0, 1),
        120 => Point::new(rq("-1/2"), rq("1/2*sqrt(3)")),
        135 => Point::new(rq("-1/2*sqrt(2)"), rq("1/2*sqrt(2)")),
        150 => Point::new(rq("-1/2*sqrt(3)"), rq("1/2")),
        _ => return None,
    };
    Some(p)
}

/// Splits on commas that are not nested inside parentheses.
pub fn split_top_level(s: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(s[start..].trim());
    parts
}

/// Parses `<RealQuad>,<RealQuad>` into a point.
pub fn parse_point(s: &str) -> Result<Point, GeometryError> {
    let parts = split_top_level(s);
    let [re, im] = parts.as_slice() else {
        return Err(parse_err(s, "expected two comma-separated components"));
    };
    let p = Point::new(parse_real_quad(re)?, parse_real_quad(im)?);
    p.radicand()?;
    Ok(p)
}

pub fn parse_direction(s: &str) -> Result<Direction, GeometryError> {
    let s = s.trim();
    if s == "i" {
        return Ok(Direction::vertical());
    }
    if let Some(rest) = s.strip_prefix("deg:") {
        let deg: u32 = rest.trim().parse().map_err(|_| parse_err(s, "angle must be a nonnegative integer"))?;
        let v = degree_vector(deg)
            .ok_or_else(|| parse_err(s, "exact angles are 0, 30, 45, 60, 90, 120, 135, 150; use tan: or vec:"))?;
        return Direction::new(v);
    }
    if let Some(rest) = s.strip_prefix("tan:") {
        let t: RealQuad = parse_real_quad(rest)?;
        return Direction::from_slope(t);
    }
    if let Some(rest) = s.strip_prefix("vec:") {
        let inner = rest
            .trim()
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| parse_err(s, "expected vec:(<re>,<im>)"))?;
        return Direction::new(parse_point(inner)?);
    }
    Err(parse_err(s, "expected deg:, tan:, vec: or i"))
}

/// Parses a comma-separated list such as `tan:sqrt(7),vec:(-1,1*sqrt(7))`.
pub fn parse_direction_list(s: &str) -> Result<Vec<Direction>, GeometryError> {
    split_top_level(s).into_iter().filter(|part| !part.is_empty()).map(parse_direction).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_table() {
        let d45 = parse_direction("deg:45").unwrap();
        assert_eq!(d45, Direction::new(Point::from_ints(1, 1)).unwrap());
        assert_eq!(parse_direction("deg:90").unwrap(), parse_direction("i").unwrap());
        assert_eq!(parse_direction("deg:0").unwrap(), Direction::horizontal());
        assert_eq!(parse_direction("deg:60").unwrap(), parse_direction("tan:sqrt(3)").unwrap());
        assert_eq!(parse_direction("deg:150").unwrap(), parse_direction("vec:(-1*sqrt(3), 1)").unwrap());
        assert!(parse_direction("deg:20").is_err());
        assert!(parse_direction("deg:-45").is_err());
    }

    #[test]
    fn lists_respect_parentheses() {
        let dirs = parse_direction_list("tan:sqrt(7),vec:(-1,1*sqrt(7))").unwrap();
        assert_eq!(dirs.len(), 2);
        assert_eq!(dirs[1].vec().re, parse_real_quad("-1/7*sqrt(7)").unwrap());
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "rad:1", "vec:(1)", "vec:(0,0)", "tan:x", "vec:(sqrt(2),sqrt(3))"] {
            assert!(parse_direction(bad).is_err(), "{bad:?}");
        }
    }
}
