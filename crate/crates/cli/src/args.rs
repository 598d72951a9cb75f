//! Parsers for argument values that clap cannot express directly.

use std::ops::RangeInclusive;

/// Parses a connection pair `a,b`.
pub fn parse_pair(text: &str) -> Result<(u64, u64), String> {
    let (a, b) = text
        .split_once(',')
        .ok_or_else(|| format!("expected a pair `a,b`, got {text:?}"))?;
    let parse = |s: &str| {
        s.trim()
            .parse::<u64>()
            .map_err(|_| format!("{:?} is not a non-negative integer", s.trim()))
    };
    Ok((parse(a)?, parse(b)?))
}

/// Parses `n`, `a..b` or `a..=b`; both forms of range include `b`.
pub fn parse_range(text: &str) -> Result<RangeInclusive<usize>, String> {
    let parse = |s: &str| {
        s.trim()
            .parse::<usize>()
            .map_err(|_| format!("{:?} is not a non-negative integer", s.trim()))
    };
    let (lo, hi) = match text.split_once("..") {
        Some((lo, hi)) => (parse(lo)?, parse(hi.strip_prefix('=').unwrap_or(hi))?),
        None => {
            let n = parse(text)?;
            (n, n)
        }
    };
    if lo > hi {
        return Err(format!("range {text:?} is empty"));
    }
    Ok(lo..=hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairs() {
        assert_eq!(parse_pair("1,5"), Ok((1, 5)));
        assert_eq!(parse_pair(" 3 , 7 "), Ok((3, 7)));
        assert!(parse_pair("1").is_err());
        assert!(parse_pair("1,-2").is_err());
        assert!(parse_pair("1,2,3").is_err());
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_range("6..14"), Ok(6..=14));
        assert_eq!(parse_range("6..=14"), Ok(6..=14));
        assert_eq!(parse_range("30"), Ok(30..=30));
        assert!(parse_range("9..5").is_err());
        assert!(parse_range("..5").is_err());
        assert!(parse_range("a..b").is_err());
    }
}
