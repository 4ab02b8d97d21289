//! Exact rational scalars and their canonical text form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;

/// Scalar type used everywhere in this crate. No floating point anywhere.
pub type Rat = BigRational;

/// Renders a rational canonically: lowest terms, positive denominator,
/// plain `p` when the denominator is 1, otherwise `p/q`.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p` or `p/q` (optionally signed). Rejects a zero denominator.
pub fn parse_rat(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    if s.is_empty() {
        return Err("empty rational literal".to_string());
    }
    let mut parts = s.splitn(2, '/');
    let numer = parts.next().unwrap_or_default();
    let p: BigInt = numer
        .trim()
        .parse()
        .map_err(|_| format!("bad integer {numer:?} in rational literal {s:?}"))?;
    match parts.next() {
        None => Ok(BigRational::from_integer(p)),
        Some(denom) => {
            let q: BigInt = denom
                .trim()
                .parse()
                .map_err(|_| format!("bad integer {denom:?} in rational literal {s:?}"))?;
            if q == BigInt::from(0) {
                return Err(format!("zero denominator in rational literal {s:?}"));
            }
            Ok(BigRational::new(p, q))
        }
    }
}

/// Smallest positive integer (as a rational) that clears every denominator.
pub fn integer_scale(values: &[Rat]) -> Rat {
    let mut l = BigInt::one();
    for v in values {
        l = l.lcm(v.denom());
    }
    BigRational::from_integer(l)
}

pub fn rat(n: i64, d: i64) -> Rat {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        assert_eq!(format_rat(&rat(4, 2)), "2");
        assert_eq!(format_rat(&rat(1, -2)), "-1/2");
        assert_eq!(format_rat(&rat(-6, -4)), "3/2");
        assert_eq!(format_rat(&rat_int(0)), "0");
    }

    #[test]
    fn denominator_clearing() {
        assert_eq!(integer_scale(&[rat(1, 2), rat(5, 3), rat_int(7)]), rat_int(6));
        assert_eq!(integer_scale(&[rat_int(4)]), rat_int(1));
        assert_eq!(integer_scale(&[]), rat_int(1));
        assert_eq!(integer_scale(&[rat(-3, 4), rat(1, 6)]), rat_int(12));
    }

    #[test]
    fn parse_round_trip() {
        for s in ["0", "7", "-3", "1/2", "-5/3", "22/7"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(format_rat(&r), s);
        }
        assert_eq!(parse_rat(" 4/6 ").unwrap(), rat(2, 3));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("").is_err());
        assert!(parse_rat("x").is_err());
        assert!(parse_rat("1/2/3").is_err());
    }
}
