//! Exact rational helpers shared by every module.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Formats as `n` or `n/d`.
pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Q::new(n, d))
        }
        None => Ok(Q::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Comma or whitespace separated list of rationals.
pub fn parse_q_list(s: &str) -> Result<Vec<Q>> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(parse_q)
        .collect()
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn to_i64(x: &Q) -> Option<i64> {
    if x.is_integer() {
        x.numer().to_i64()
    } else {
        None
    }
}

pub fn lcm_denoms<'a>(xs: impl IntoIterator<Item = &'a Q>) -> BigInt {
    xs.into_iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

pub fn mat_q(m: &[Vec<i64>]) -> Vec<Vec<Q>> {
    m.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
}

pub fn mat_vec(m: &[Vec<Q>], v: &[Q]) -> Vec<Q> {
    m.iter().map(|r| dot(r, v)).collect()
}

/// Row-reduces `[a | b]` and returns the solution of `a x = b` for square
/// invertible `a`, or `None` if `a` is singular.
pub fn solve(a: &[Vec<Q>], b: &[Vec<Q>]) -> Option<Vec<Vec<Q>>> {
    let n = a.len();
    let k = b.first().map_or(0, |r| r.len());
    let mut m: Vec<Vec<Q>> = a
        .iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().chain(rb).cloned().collect())
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        let inv = m[col][col].recip();
        for x in m[col].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                let (top, rest) = if r < col {
                    let (lo, hi) = m.split_at_mut(col);
                    (&hi[0], &mut lo[r])
                } else {
                    let (lo, hi) = m.split_at_mut(r);
                    (&lo[col], &mut hi[0])
                };
                for (x, y) in rest.iter_mut().zip(top.iter()) {
                    *x -= &f * y;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..n + k].to_vec()).collect())
}

pub fn solve_vec(a: &[Vec<Q>], b: &[Q]) -> Option<Vec<Q>> {
    let cols: Vec<Vec<Q>> = b.iter().map(|x| vec![x.clone()]).collect();
    solve(a, &cols).map(|s| s.into_iter().map(|mut r| r.remove(0)).collect())
}

pub fn identity(n: usize) -> Vec<Vec<Q>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect())
        .collect()
}

pub fn inverse(a: &[Vec<Q>]) -> Option<Vec<Vec<Q>>> {
    solve(a, &identity(a.len()))
}

pub fn det(a: &[Vec<Q>]) -> Q {
    let n = a.len();
    let mut m = a.to_vec();
    let mut d = Q::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Q::zero();
        };
        if piv != col {
            m.swap(col, piv);
            d = -d;
        }
        d *= &m[col][col];
        for r in col + 1..n {
            if !m[r][col].is_zero() {
                let f = &m[r][col] / &m[col][col];
                for c in col..n {
                    let t = &f * &m[col][c];
                    m[r][c] -= t;
                }
            }
        }
    }
    d
}

pub fn transpose<T: Clone>(a: &[Vec<T>]) -> Vec<Vec<T>> {
    if a.is_empty() {
        return vec![];
    }
    (0..a[0].len()).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}

/// Floor of a rational as a big integer.
pub fn floor(x: &Q) -> BigInt {
    x.floor().to_integer()
}

pub fn is_positive(x: &Q) -> bool {
    x.is_positive()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["0", "-3", "5/7", "-12/4"] {
            let x = parse_q(s).unwrap();
            assert_eq!(parse_q(&fmt_q(&x)).unwrap(), x);
        }
        assert_eq!(fmt_q(&parse_q("-12/4").unwrap()), "-3");
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("x").is_err());
    }

    #[test]
    fn inverse_of_a2_cartan() {
        let c = mat_q(&[vec![2, -1], vec![-1, 2]]);
        let inv = inverse(&c).unwrap();
        assert_eq!(inv[0], vec![frac(2, 3), frac(1, 3)]);
        assert_eq!(det(&c), q(3));
    }

    #[test]
    fn singular_has_no_inverse() {
        let c = mat_q(&[vec![1, 2], vec![2, 4]]);
        assert!(inverse(&c).is_none());
        assert_eq!(det(&c), q(0));
    }
}
