//! Weight-file parsing and plain-text writers shared by the command line.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};
use serde_json::json;

use crate::error::{Error, Result};
use crate::models::MassFunction;
use crate::scalar::Scalar;

/// `{:.16e}`: 17 significant digits, enough to round-trip any `f64`.
pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

/// Parses a decimal (`0.125`, `-3`, `2.5e-3`) or a fraction (`1/3`) exactly.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("'{s}' is not a decimal number or fraction"));
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|_| bad())?;
        let den: BigInt = den.trim().parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(Error::Parse(format!("zero denominator in '{s}'")));
        }
        return Ok(BigRational::new(num, den));
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (sign, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if int.is_empty() && frac.is_empty()
        || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit())
    {
        return Err(bad());
    }
    let all = format!("{int}{frac}");
    let value: BigInt = if all.is_empty() { BigInt::zero() } else { all.parse().map_err(|_| bad())? };
    let scale = exp - frac.len() as i32;
    let ten = BigInt::from(10);
    let r = if scale >= 0 {
        BigRational::from_integer(value * Pow::pow(&ten, scale as u32))
    } else {
        BigRational::new(value, Pow::pow(&ten, (-scale) as u32))
    };
    Ok(if sign < 0 { -r } else { r })
}

fn fields(text: &str) -> impl Iterator<Item = &str> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .flat_map(|l| l.split([',', ';', ' ', '\t']))
        .map(|f| f.trim().trim_matches(['[', ']']))
        .filter(|f| !f.is_empty())
}

fn check_probability(r: &BigRational, raw: &str) -> Result<()> {
    if r < &BigRational::zero() || r > &BigRational::one() {
        return Err(Error::Parse(format!("weight {raw} is not a probability")));
    }
    Ok(())
}

/// Exact weights from a weight file or an inline list: numbers separated by
/// commas, whitespace or newlines; `#` starts a comment.
pub fn parse_weights_exact(text: &str) -> Result<Vec<BigRational>> {
    let out = fields(text)
        .map(|f| {
            let r = parse_rational(f)?;
            check_probability(&r, f)?;
            Ok(r)
        })
        .collect::<Result<Vec<_>>>()?;
    if out.is_empty() {
        return Err(Error::Parse("no weights found".into()));
    }
    Ok(out)
}

/// Floating-point weights; same syntax as [`parse_weights_exact`].
pub fn parse_weights(text: &str) -> Result<Vec<f64>> {
    Ok(parse_weights_exact(text)?.iter().map(Scalar::to_f64).collect())
}

/// Parses `a`, `a:b` (inclusive) or the empty string into a list of orders.
pub fn parse_order_range(s: &str) -> Result<Vec<usize>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    let num = |x: &str| {
        x.trim()
            .parse::<usize>()
            .map_err(|_| Error::Parse(format!("bad order '{x}' in range '{s}'")))
    };
    match s.split_once(':') {
        Some((a, b)) => {
            let (a, b) = (num(a)?, num(b)?);
            if a > b {
                return Err(Error::Parse(format!("empty range '{s}'")));
            }
            Ok((a..=b).collect())
        }
        None => Ok(vec![num(s)?]),
    }
}

/// `k,mass` rows.
pub fn mass_csv<T: Scalar + std::fmt::Display>(m: &impl MassFunction<T>, exact: bool) -> String {
    let mut out = String::from("k,mass\n");
    for (i, x) in m.masses().iter().enumerate() {
        let v = if exact { format!("{x}") } else { format_float(x.to_f64()) };
        let _ = writeln!(out, "{},{v}", m.offset() + i);
    }
    out
}

/// One JSON object per line: `{"k": .., "mass": ..}`.
pub fn mass_json_lines<T: Scalar + std::fmt::Display>(m: &impl MassFunction<T>, exact: bool) -> String {
    let mut out = String::new();
    for (i, x) in m.masses().iter().enumerate() {
        let v = if exact { json!(format!("{x}")) } else { json!(x.to_f64()) };
        let _ = writeln!(out, "{}", json!({ "k": m.offset() + i, "mass": v }));
    }
    out
}

/// `k,mass,negative` rows for a signed measure.
pub fn signed_csv(m: &impl MassFunction<f64>) -> String {
    let mut out = String::from("k,mass,negative\n");
    for (i, &x) in m.masses().iter().enumerate() {
        let _ = writeln!(out, "{},{},{}", m.offset() + i, format_float(x), x < 0.0);
    }
    out
}

pub fn signed_json_lines(m: &impl MassFunction<f64>) -> String {
    let mut out = String::new();
    for (i, &x) in m.masses().iter().enumerate() {
        let _ = writeln!(out, "{}", json!({ "k": m.offset() + i, "mass": x, "negative": x < 0.0 }));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::Pmf;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("0.125").unwrap(), q(1, 8));
        assert_eq!(parse_rational("-3").unwrap(), q(-3, 1));
        assert_eq!(parse_rational("2.5e-3").unwrap(), q(1, 400));
        assert_eq!(parse_rational("1E2").unwrap(), q(100, 1));
        assert_eq!(parse_rational(".5").unwrap(), q(1, 2));
        assert_eq!(parse_rational("1/3").unwrap(), q(1, 3));
        for bad in ["", "abc", "1/0", "1.2.3", "e5", "0x1"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn weight_files() {
        let text = "# weights\n0.5\n0.25 # inline\n\n1/3\n";
        assert_eq!(parse_weights_exact(text).unwrap(), vec![q(1, 2), q(1, 4), q(1, 3)]);
        assert_eq!(parse_weights("[0.1, 0.2]").unwrap(), vec![0.1, 0.2]);
        assert!(parse_weights("1.5").is_err());
        assert!(parse_weights("# nothing").is_err());
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_order_range("").unwrap(), Vec::<usize>::new());
        assert_eq!(parse_order_range("3").unwrap(), vec![3]);
        assert_eq!(parse_order_range("0:4").unwrap(), vec![0, 1, 2, 3, 4]);
        assert!(parse_order_range("4:1").is_err());
        assert!(parse_order_range("a").is_err());
    }

    #[test]
    fn writers() {
        let p = Pmf::new(1, vec![0.75, 0.25]).unwrap();
        assert_eq!(mass_csv(&p, false), "k,mass\n1,7.5000000000000000e-1\n2,2.5000000000000000e-1\n");
        assert_eq!(mass_json_lines(&p, false), "{\"k\":1,\"mass\":0.75}\n{\"k\":2,\"mass\":0.25}\n");
        let e = Pmf::new(1, vec![q(3, 4), q(1, 4)]).unwrap();
        assert_eq!(mass_csv(&e, true), "k,mass\n1,3/4\n2,1/4\n");
        assert_eq!(format_float(0.1).parse::<f64>().unwrap(), 0.1);
    }
}
