//! Finite-union Borel sets on the real line.
//!
//! Intervals plus explicit included/excluded point lists are exactly
//! expressive enough for finite spectra: membership only ever gets sampled
//! at finitely many reals, and the `Δ\{0}` / `0∈Δ` case analysis stays
//! representable (`excluded_points = [0]`).
//!
//! Textual form accepted by [`BorelSet::parse`]:
//!
//! ```text
//! (0.5,1.5] U {3} \ {0}
//! [-1,1] \ {0}
//! (-inf,inf)
//! R
//! ```

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl Interval {
    pub fn contains(&self, x: f64) -> bool {
        let above = if self.lo_closed { x >= self.lo } else { x > self.lo };
        let below = if self.hi_closed { x <= self.hi } else { x < self.hi };
        above && below
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct BorelSet {
    pub intervals: Vec<Interval>,
    pub extra_points: Vec<f64>,
    pub excluded_points: Vec<f64>,
}

impl BorelSet {
    pub fn empty() -> Self {
        BorelSet::default()
    }

    /// All of ℝ.
    pub fn reals() -> Self {
        BorelSet::interval(f64::NEG_INFINITY, f64::INFINITY, false, false)
    }

    pub fn interval(lo: f64, hi: f64, lo_closed: bool, hi_closed: bool) -> Self {
        BorelSet {
            intervals: vec![Interval { lo, hi, lo_closed, hi_closed }],
            ..Default::default()
        }
    }

    pub fn singleton(x: f64) -> Self {
        BorelSet {
            extra_points: vec![x],
            ..Default::default()
        }
    }

    /// (−∞, λ].
    pub fn up_to(lambda: f64) -> Self {
        BorelSet::interval(f64::NEG_INFINITY, lambda, false, true)
    }

    pub fn union(mut self, other: BorelSet) -> Self {
        self.intervals.extend(other.intervals);
        self.extra_points.extend(other.extra_points);
        self.excluded_points.extend(other.excluded_points);
        self
    }

    /// Δ \ {x}.
    pub fn without(mut self, x: f64) -> Self {
        self.extra_points.retain(|&p| p != x);
        if !self.excluded_points.contains(&x) {
            self.excluded_points.push(x);
        }
        self
    }

    /// Exactly the singleton {0}? Used to pick the Δ={0} case of the
    /// upper-bound restriction formulas.
    pub fn is_singleton_zero(&self) -> bool {
        self.intervals.is_empty()
            && self.extra_points == [0.0]
            && !self.excluded_points.contains(&0.0)
    }

    /// Membership; comparisons are exact by design — tolerance lives in
    /// eigenvalue clustering, not in set membership.
    pub fn contains(&self, x: f64) -> bool {
        if self.excluded_points.contains(&x) {
            return false;
        }
        self.extra_points.contains(&x) || self.intervals.iter().any(|iv| iv.contains(x))
    }

    /// extra_points and excluded_points must not overlap.
    pub fn validate(&self) -> Result<()> {
        for p in &self.extra_points {
            if self.excluded_points.contains(p) {
                return Err(Error::Parse {
                    pos: 0,
                    msg: format!("point {p} is both included and excluded"),
                });
            }
        }
        Ok(())
    }

    pub fn parse(input: &str) -> Result<BorelSet> {
        Parser { input: input.as_bytes(), pos: 0 }.parse_set()
    }
}

impl fmt::Display for BorelSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fmt_num = |x: f64| -> String {
            if x == f64::NEG_INFINITY {
                "-inf".into()
            } else if x == f64::INFINITY {
                "inf".into()
            } else {
                format!("{x}")
            }
        };
        let mut terms: Vec<String> = self
            .intervals
            .iter()
            .map(|iv| {
                format!(
                    "{}{},{}{}",
                    if iv.lo_closed { '[' } else { '(' },
                    fmt_num(iv.lo),
                    fmt_num(iv.hi),
                    if iv.hi_closed { ']' } else { ')' },
                )
            })
            .collect();
        if !self.extra_points.is_empty() {
            let pts: Vec<String> = self.extra_points.iter().map(|p| fmt_num(*p)).collect();
            terms.push(format!("{{{}}}", pts.join(", ")));
        }
        if terms.is_empty() {
            terms.push("{}".into());
        }
        write!(f, "{}", terms.join(" U "))?;
        if !self.excluded_points.is_empty() {
            let pts: Vec<String> = self.excluded_points.iter().map(|p| fmt_num(*p)).collect();
            write!(f, " \\ {{{}}}", pts.join(", "))?;
        }
        Ok(())
    }
}

struct Parser<'a> {
    input: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.input.len() && self.input[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.input.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        match self.bump() {
            Some(got) if got == c => Ok(()),
            Some(got) => self.err(format!("expected '{}', found '{}'", c as char, got as char)),
            None => self.err(format!("expected '{}', found end of input", c as char)),
        }
    }

    fn parse_number(&mut self) -> Result<f64> {
        self.skip_ws();
        let start = self.pos;
        if self.input[start..].starts_with(b"-inf") {
            self.pos += 4;
            return Ok(f64::NEG_INFINITY);
        }
        if self.input[start..].starts_with(b"+inf") {
            self.pos += 4;
            return Ok(f64::INFINITY);
        }
        if self.input[start..].starts_with(b"inf") {
            self.pos += 3;
            return Ok(f64::INFINITY);
        }
        let mut end = self.pos;
        while end < self.input.len() {
            let c = self.input[end];
            if c.is_ascii_digit() || matches!(c, b'+' | b'-' | b'.' | b'e' | b'E') {
                end += 1;
            } else {
                break;
            }
        }
        if end == self.pos {
            return self.err("expected a number");
        }
        let text = std::str::from_utf8(&self.input[self.pos..end]).unwrap();
        match text.parse::<f64>() {
            Ok(v) => {
                self.pos = end;
                Ok(v)
            }
            Err(_) => self.err(format!("invalid number '{text}'")),
        }
    }

    fn parse_point_list(&mut self) -> Result<Vec<f64>> {
        self.expect(b'{')?;
        let mut pts = Vec::new();
        if self.peek() == Some(b'}') {
            self.bump();
            return Ok(pts);
        }
        loop {
            pts.push(self.parse_number()?);
            match self.bump() {
                Some(b',') => continue,
                Some(b'}') => return Ok(pts),
                _ => return self.err("expected ',' or '}' in point set"),
            }
        }
    }

    fn parse_term(&mut self) -> Result<BorelSet> {
        match self.peek() {
            Some(b'(') | Some(b'[') => {
                let lo_closed = self.bump() == Some(b'[');
                let lo = self.parse_number()?;
                self.expect(b',')?;
                let hi = self.parse_number()?;
                let hi_closed = match self.bump() {
                    Some(b')') => false,
                    Some(b']') => true,
                    _ => return self.err("expected ')' or ']' to close interval"),
                };
                if lo > hi {
                    return self.err(format!("interval has lo {lo} > hi {hi}"));
                }
                Ok(BorelSet::interval(lo, hi, lo_closed, hi_closed))
            }
            Some(b'{') => Ok(BorelSet {
                extra_points: self.parse_point_list()?,
                ..Default::default()
            }),
            Some(b'R') | Some(b'r') => {
                self.bump();
                Ok(BorelSet::reals())
            }
            _ => self.err("expected an interval, a point set, or R"),
        }
    }

    fn parse_set(&mut self) -> Result<BorelSet> {
        let mut set = self.parse_term()?;
        loop {
            match self.peek() {
                Some(b'U') | Some(b'u') => {
                    self.bump();
                    set = set.union(self.parse_term()?);
                }
                Some(b'\\') => {
                    self.bump();
                    let excluded = self.parse_point_list()?;
                    for x in excluded {
                        set = set.without(x);
                    }
                    break;
                }
                None => break,
                Some(c) => return self.err(format!("unexpected '{}'", c as char)),
            }
        }
        self.skip_ws();
        if self.pos != self.input.len() {
            return self.err("trailing input after set");
        }
        set.validate()?;
        Ok(set)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn membership_with_flags() {
        let s = BorelSet::parse("(0.5,1.5]").unwrap();
        assert!(!s.contains(0.5));
        assert!(s.contains(1.0));
        assert!(s.contains(1.5));
        assert!(!s.contains(2.0));
    }

    #[test]
    fn union_and_exclusion() {
        let s = BorelSet::parse("(0.5,1.5] U {3} \\ {0}").unwrap();
        assert!(s.contains(3.0));
        assert!(s.contains(1.0));
        assert!(!s.contains(0.0));
        let s = BorelSet::parse("[-1,1] \\ {0}").unwrap();
        assert!(s.contains(-1.0));
        assert!(s.contains(1.0));
        assert!(!s.contains(0.0));
    }

    #[test]
    fn unbounded_forms() {
        for text in ["(-inf,inf)", "R"] {
            let s = BorelSet::parse(text).unwrap();
            assert!(s.contains(-1e300) && s.contains(0.0) && s.contains(1e300));
        }
        let s = BorelSet::parse("(-inf, 0]").unwrap();
        assert!(s.contains(0.0) && !s.contains(0.1));
    }

    #[test]
    fn singleton_zero_detection() {
        assert!(BorelSet::parse("{0}").unwrap().is_singleton_zero());
        assert!(!BorelSet::parse("{0, 1}").unwrap().is_singleton_zero());
        assert!(!BorelSet::parse("(-1,1)").unwrap().is_singleton_zero());
    }

    #[test]
    fn parse_errors_carry_position() {
        match BorelSet::parse("(0.5,]") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 5),
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(BorelSet::parse("(2,1)").is_err());
        assert!(BorelSet::parse("(0,1) extra").is_err());
    }

    #[test]
    fn display_round_trips_membership() {
        let s = BorelSet::parse("[0,2) U {5} \\ {1}").unwrap();
        let back = BorelSet::parse(&s.to_string()).unwrap();
        for x in [-1.0, 0.0, 0.5, 1.0, 1.9, 2.0, 5.0] {
            assert_eq!(s.contains(x), back.contains(x));
        }
    }
}
