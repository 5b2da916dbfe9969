use num_bigint::BigInt;

use super::IoError;
use crate::scalar::{Assignment, Rational, Value};

/// Parses `name=value,name=value,...`.
///
/// Integers, fractions `p/q` and plain decimals such as `0.25` are kept exact;
/// scientific notation (`2.5e-1`) binds a float. Blank input is the empty
/// assignment.
pub fn parse_assignment(text: &str) -> Result<Assignment, IoError> {
    let mut out = Assignment::new();
    if text.trim().is_empty() {
        return Ok(out);
    }
    let mut start = 0;
    for item in text.split(',') {
        let fail = |offset: usize, reason: String| IoError::Assignment { position: start + offset, reason };
        let (name, value) = item.split_once('=').ok_or_else(|| fail(0, format!("expected `name=value`, got `{}`", item.trim())))?;
        let value_at = name.len() + 1;
        let name = name.trim();
        let is_ident = name.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
            && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !is_ident {
            return Err(fail(0, format!("`{name}` is not a parameter name")));
        }
        if out.get(name).is_some() {
            return Err(fail(0, format!("`{name}` assigned twice")));
        }
        let parsed = parse_value(value.trim()).ok_or_else(|| fail(value_at, format!("bad value `{}`", value.trim())))?;
        out.bind(name, parsed);
        start += item.len() + 1;
    }
    Ok(out)
}

fn parse_value(text: &str) -> Option<Value> {
    if text.contains(['e', 'E']) {
        return text.parse::<f64>().ok().filter(|x| x.is_finite()).map(Value::Float);
    }
    let (negative, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text.strip_prefix('+').unwrap_or(text)),
    };
    let digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    let value = if let Some((p, q)) = body.split_once('/') {
        if !digits(p) || !digits(q) {
            return None;
        }
        Rational::new(p.parse::<BigInt>().ok()?, q.parse::<BigInt>().ok()?)?
    } else {
        let (int, frac) = body.split_once('.').unwrap_or((body, ""));
        if !(digits(int) || (int.is_empty() && digits(frac))) || !(frac.is_empty() || digits(frac)) {
            return None;
        }
        let numerator: BigInt = format!("0{int}{frac}").parse().ok()?;
        let denominator = BigInt::from(10u32).pow(frac.len() as u32);
        Rational::new(numerator, denominator)?
    };
    Some(Value::Exact(if negative { -value } else { value }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_and_float_values() {
        let a = parse_assignment("alpha=1/2, beta=0.25,gamma=-3,delta=2.5e-1, eps=.5").unwrap();
        assert_eq!(a.get("alpha"), Some(&Value::Exact(Rational::ratio(1, 2))));
        assert_eq!(a.get("beta"), Some(&Value::Exact(Rational::ratio(1, 4))));
        assert_eq!(a.get("gamma"), Some(&Value::Exact(Rational::from_integer(-3))));
        assert_eq!(a.get("delta"), Some(&Value::Float(0.25)));
        assert_eq!(a.get("eps"), Some(&Value::Exact(Rational::ratio(1, 2))));
        assert!(parse_assignment("  ").unwrap().is_empty());
    }

    #[test]
    fn malformed_lists() {
        let err = |s: &str| match parse_assignment(s) {
            Err(IoError::Assignment { position, .. }) => position,
            other => panic!("{s}: {other:?}"),
        };
        assert_eq!(err("alpha"), 0);
        assert_eq!(err("alpha=1,beta=x"), 13);
        assert_eq!(err("alpha=1/0"), 6);
        assert_eq!(err("alpha=1,alpha=2"), 8);
        assert_eq!(err("1a=2"), 0);
        assert_eq!(err("a=1.2.3"), 2);
        assert_eq!(err("a=1e999"), 2);
        assert_eq!(err("a=."), 2);
    }
}
