//! The Levi-centre criterion for split tori of SL_n.
//!
//! T(F_q) is the diagonal determinant-one subgroup: t = (g^{a_1}, …, g^{a_n})
//! with Σ a_i ≡ 0 mod q − 1 for a generator g of F_q^×. A character is an
//! exponent vector c with θ(t) = ζ_{q−1}^{Σ c_i a_i}; the caller gives the
//! first n − 1 entries and c_n = 0.

use crate::error::{Error, Result};

/// Parses "SL<n>" with n ≥ 2.
pub fn parse_sl(group: &str) -> Result<usize> {
    let n = group
        .strip_prefix("SL")
        .and_then(|s| s.parse::<usize>().ok())
        .filter(|&n| (2..=6).contains(&n))
        .ok_or_else(|| Error::Unsupported(format!("group {group}: only split SL_n with 2 ≤ n ≤ 6 is modelled")))?;
    Ok(n)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = vec![];
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

/// Restriction of the character c to Z_M for M the Levi of the two-block
/// partition (block, complement): elements x on the block and y elsewhere
/// with x^{|A|} y^{n−|A|} = 1.
fn trivial_on_centre(c: &[u64], block: u32, ord: u64) -> bool {
    let n = c.len();
    let na = block.count_ones() as u64;
    let nb = n as u64 - na;
    let ca: u64 = (0..n).filter(|i| block >> i & 1 == 1).map(|i| c[i]).sum();
    let cb: u64 = (0..n).filter(|i| block >> i & 1 == 0).map(|i| c[i]).sum();
    for a in 0..ord {
        for b in 0..ord {
            if (na * a + nb * b) % ord == 0 && (ca * a + cb * b) % ord != 0 {
                return false;
            }
        }
    }
    true
}

fn full_vector(c: &[u64], n: usize, ord: u64) -> Result<Vec<u64>> {
    if c.len() != n - 1 {
        return Err(Error::DimensionMismatch { expected: n - 1, got: c.len() });
    }
    let mut v: Vec<u64> = c.iter().map(|x| x % ord).collect();
    v.push(0);
    Ok(v)
}

/// True when θ_λ^w θ_μ is non-trivial on Z_M(F_q) for every w ∈ S_n and
/// every maximal proper semi-standard Levi M ⊇ T.
pub fn cuspidal_filter_check(group: &str, q: u64, lambda: &[u64], mu: &[u64]) -> Result<bool> {
    let n = parse_sl(group)?;
    crate::quasipoly::check_prime_power(q)?;
    if q == 2 {
        return Err(Error::Precondition("F_2^× is trivial".into()));
    }
    let ord = q - 1;
    let cl = full_vector(lambda, n, ord)?;
    let cm = full_vector(mu, n, ord)?;
    // A ∋ 0 lists each two-block partition once.
    let blocks: Vec<u32> = (1u32..(1 << n) - 1).filter(|b| b & 1 == 1).collect();
    for w in permutations(n) {
        let mut c: Vec<u64> = cm.clone();
        for i in 0..n {
            c[w[i]] = (c[w[i]] + cl[i]) % ord;
        }
        if blocks.iter().any(|&b| trivial_on_centre(&c, b, ord)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// θ_μ ≠ θ_λ^{±1} for SL_2.
pub fn sl2_condition(q: u64, kl: u64, km: u64) -> bool {
    let ord = q - 1;
    km % ord != kl % ord && (km + kl) % ord != 0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sl2_examples() {
        assert!(cuspidal_filter_check("SL2", 5, &[1], &[2]).unwrap());
        assert!(!cuspidal_filter_check("SL2", 5, &[1], &[1]).unwrap());
        assert!(!cuspidal_filter_check("SL2", 5, &[1], &[3]).unwrap());
        assert!(cuspidal_filter_check("GL2", 5, &[1], &[2]).is_err());
        assert!(cuspidal_filter_check("SL2", 5, &[1, 2], &[2]).is_err());
    }

    #[test]
    fn sl2_matches_condition() {
        for q in [3, 5, 7] {
            for a in 0..q - 1 {
                for b in 0..q - 1 {
                    assert_eq!(cuspidal_filter_check("SL2", q, &[a], &[b]).unwrap(), sl2_condition(q, a, b));
                }
            }
        }
    }

    #[test]
    fn trivial_characters_never_pass() {
        assert!(!cuspidal_filter_check("SL3", 7, &[0, 0], &[0, 0]).unwrap());
    }
}
