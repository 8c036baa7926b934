//! Exponent-lattice combinatorics: the digit-pattern relation vectors, exact
//! rational span dimension, transcendence-degree bookkeeping, the
//! algebraicity predicate, and Gross-Koblitz kernel orbits.

use num::{BigInt, BigRational, One, ToPrimitive, Zero};

use crate::digits::char_of;
use crate::error::{Error, Result};

pub type ExponentVector = Vec<i64>;

/// The d vectors delta_j in Z^{d*ell0} with delta_{j,s} = 1 iff j == s mod d.
pub fn delta_vectors(d: u32, ell0: u32) -> Vec<ExponentVector> {
    assert!(d >= 1 && ell0 >= 1);
    let len = (d * ell0) as usize;
    (0..d as usize)
        .map(|j| (0..len).map(|s| i64::from(s % d as usize == j)).collect())
        .collect()
}

/// The ell vectors lambda_j of length m (ell must divide m) with
/// lambda_{j,s} = 1 iff j == s mod ell.
pub fn lambda_vectors(ell: u32, m: u32) -> Result<Vec<ExponentVector>> {
    if ell == 0 || m == 0 || m % ell != 0 {
        return Err(Error::Domain(format!(
            "lambda vectors need ell | m, got ell = {ell}, m = {m}"
        )));
    }
    Ok((0..ell as usize)
        .map(|j| {
            (0..m as usize)
                .map(|s| i64::from(s % ell as usize == j))
                .collect()
        })
        .collect())
}

/// Dimension of the rational span, by exact fraction elimination.
pub fn span_dim(vectors: &[ExponentVector]) -> Result<usize> {
    let mut rows: Vec<Vec<BigRational>> = Vec::with_capacity(vectors.len());
    let width = vectors.first().map(|v| v.len()).unwrap_or(0);
    for v in vectors {
        if v.len() != width {
            return Err(Error::RaggedInput);
        }
        rows.push(v.iter().map(|&x| BigRational::from(BigInt::from(x))).collect());
    }
    let mut rank = 0usize;
    for col in 0..width {
        let pivot = (rank..rows.len()).find(|&r| !rows[r][col].is_zero());
        let Some(p) = pivot else { continue };
        rows.swap(rank, p);
        let inv = rows[rank][col].clone();
        for r in rank + 1..rows.len() {
            if rows[r][col].is_zero() {
                continue;
            }
            let factor = &rows[r][col] / &inv;
            for c in col..width {
                let t = &rows[rank][c] * &factor;
                rows[r][c] -= t;
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    Ok(rank)
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        a %= b;
        std::mem::swap(&mut a, &mut b);
    }
    a
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// Multiplicative order of x mod n (requires gcd(x, n) = 1, n >= 2).
pub fn multiplicative_order(x: u64, n: u64) -> Result<u64> {
    if n < 2 {
        return Err(Error::Domain(format!("order mod {n} is undefined")));
    }
    let x = x % n;
    if gcd(x, n) != 1 {
        return Err(Error::Domain(format!("{x} is not a unit mod {n}")));
    }
    let mut acc = x;
    let mut ord = 1u64;
    while acc != 1 {
        acc = acc * x % n;
        ord += 1;
    }
    Ok(ord)
}

/// Base-q digits, exactly `len` of them, of a non-negative big integer.
fn bigint_digits(mut m: BigInt, q: u64, len: usize) -> Result<Vec<i64>> {
    let qb = BigInt::from(q);
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push((&m % &qb).to_i64().expect("digit fits i64"));
        m /= &qb;
    }
    if !m.is_zero() {
        return Err(Error::InternalInconsistency(
            "digit vector does not fit its prescribed length".into(),
        ));
    }
    Ok(out)
}

/// q^k as a big integer.
fn big_pow(q: u64, k: u64) -> BigInt {
    let mut acc = BigInt::one();
    for _ in 0..k {
        acc *= q;
    }
    acc
}

/// Transcendence degree of the gamma values with denominator q^ell - 1:
/// computed both as dim span(delta, lambda) - d over the lcm-length digit
/// basis and by the closed form ell - gcd(ell, d); the two must agree.
pub fn trdeg_gamma(d: u32, ell: u32) -> Result<u32> {
    if d == 0 || ell == 0 {
        return Err(Error::Domain("d and ell must be positive".into()));
    }
    let l = lcm(d as u64, ell as u64) as u32;
    let mut vectors = delta_vectors(d, l / d);
    vectors.extend(lambda_vectors(ell, l)?);
    let lattice = span_dim(&vectors)? as i64 - d as i64;
    let closed = ell as i64 - gcd(ell as u64, d as u64) as i64;
    if lattice != closed {
        return Err(Error::InternalInconsistency(format!(
            "lattice route {lattice} != closed form {closed} at (d, ell) = ({d}, {ell})"
        )));
    }
    Ok(closed as u32)
}

/// Whether the gamma value at a/b is algebraic: true iff b | q^d - 1.
/// Cross-checked against membership of the digit vector of the reduced
/// fractional part in the span of the delta vectors.
pub fn is_algebraic(a: i64, b: i64, d: u32, q: u64) -> Result<bool> {
    if b == 0 {
        return Err(Error::InvalidDenominator {
            b,
            reason: "zero denominator".into(),
        });
    }
    let (a, b) = if b < 0 { (-a, -b) } else { (a, b) };
    let g = {
        let mut x = a.unsigned_abs();
        let mut y = b as u64;
        while y != 0 {
            x %= y;
            std::mem::swap(&mut x, &mut y);
        }
        x.max(1)
    };
    let (a, b) = (a / g as i64, b / g as i64);
    let p = char_of(q);
    if (b as u64) % p == 0 {
        return Err(Error::InvalidDenominator {
            b,
            reason: format!("p = {p} divides the denominator"),
        });
    }
    if b == 1 {
        return Ok(true);
    }
    let bu = b as u64;
    let divisor_route = {
        // q^d mod b == 1 exactly when b | q^d - 1
        let mut acc = 1u64;
        for _ in 0..d {
            acc = acc * (q % bu) % bu;
        }
        acc % bu == 1
    };

    // lattice route: a/b = 1 - a'/b with 0 <= a' < b; test the digit vector
    // of a' * (q^{d ell0} - 1)/b over length d*ell0 against span(delta)
    let qd = {
        let mut acc = 1u64;
        for _ in 0..d {
            acc = acc * (q % bu) % bu;
        }
        acc
    };
    let ell0 = multiplicative_order(qd, bu)?;
    let len = d as u64 * ell0;
    let modulus = big_pow(q, len) - 1;
    let a_prime = (-a).rem_euclid(b);
    let scaled = BigInt::from(a_prime) * (&modulus / BigInt::from(b));
    let digits = bigint_digits(scaled, q, len as usize)?;
    let deltas = delta_vectors(d, ell0 as u32);
    let base_dim = span_dim(&deltas)?;
    let mut with = deltas;
    with.push(digits);
    let lattice_route = span_dim(&with)? == base_dim;

    if divisor_route != lattice_route {
        return Err(Error::InternalInconsistency(format!(
            "algebraicity routes disagree at a/b = {a}/{b}, d = {d}, q = {q}"
        )));
    }
    Ok(divisor_route)
}

/// One orbit of multiplication by q^d on the residues a/n mod Z, together
/// with the exponent vector of the associated kernel relation over the
/// q^{rd} - 1 digit basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GkOrbit {
    pub residues: Vec<u64>,
    pub vector: ExponentVector,
}

/// Kernel generators of the gamma distribution: for each orbit of
/// multiplication by q^d on (1/n)Z / Z, the relation sum_{i<r} [q^{id} a/n]
/// with r the order of q^d mod n, emitted as a digit exponent vector of
/// length r*d.
pub fn gk_kernel_generators(n: u64, d: u32, q: u64) -> Result<Vec<GkOrbit>> {
    let p = char_of(q);
    if n == 0 || n % p == 0 {
        return Err(Error::InvalidDenominator {
            b: n as i64,
            reason: format!("p = {p} divides n"),
        });
    }
    if n == 1 {
        return Ok(Vec::new());
    }
    let qd_mod = {
        let mut acc = 1u64;
        for _ in 0..d {
            acc = acc * (q % n) % n;
        }
        acc
    };
    let r = multiplicative_order(qd_mod, n)?;
    let len = (r * d as u64) as usize;
    let modulus = big_pow(q, r * d as u64) - 1;
    let scale = &modulus / BigInt::from(n);

    let mut seen = vec![false; n as usize];
    let mut orbits = Vec::new();
    for a in 1..n {
        if seen[a as usize] {
            continue;
        }
        let mut orbit = Vec::new();
        let mut x = a;
        loop {
            if !seen[x as usize] {
                seen[x as usize] = true;
                orbit.push(x);
            }
            x = x * qd_mod % n;
            if x == a {
                break;
            }
        }
        orbit.sort_unstable();
        // exponent vector: sum over i < r of the digits of <q^{id} a/n>
        let mut vector = vec![0i64; len];
        let mut x = a;
        for _ in 0..r {
            let digits = bigint_digits(BigInt::from(x) * &scale, q, len)?;
            for (j, dj) in digits.into_iter().enumerate() {
                vector[j] += dj;
            }
            x = x * qd_mod % n;
        }
        orbits.push(GkOrbit {
            residues: orbit,
            vector,
        });
    }
    Ok(orbits)
}

/// Shared check used by the identity suite: the summed digit vector of an
/// orbit is periodic mod d, so the relation reduces to powers of the d
/// Gross-Koblitz generators.
pub fn orbit_reduces_mod_d(vector: &[i64], d: u32) -> bool {
    vector
        .iter()
        .enumerate()
        .all(|(j, &c)| c == vector[j % d as usize])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_examples() {
        assert_eq!(delta_vectors(1, 3), vec![vec![1, 1, 1]]);
        assert_eq!(
            delta_vectors(2, 2),
            vec![vec![1, 0, 1, 0], vec![0, 1, 0, 1]]
        );
        // disjoint supports span exactly d dimensions
        assert_eq!(span_dim(&delta_vectors(3, 4)).unwrap(), 3);
    }

    #[test]
    fn lambda_examples() {
        let l = lambda_vectors(2, 6).unwrap();
        assert_eq!(l[0], vec![1, 0, 1, 0, 1, 0]);
        assert_eq!(l[1], vec![0, 1, 0, 1, 0, 1]);
        // ell = m: the identity pattern basis
        let l = lambda_vectors(3, 3).unwrap();
        assert_eq!(span_dim(&l).unwrap(), 3);
        assert!(lambda_vectors(4, 6).is_err());
    }

    #[test]
    fn span_dim_examples() {
        assert_eq!(span_dim(&[]).unwrap(), 0);
        // d = 2, ell = 4 on the lcm-length basis: dim = ell + d - gcd = 4
        let mut v = delta_vectors(2, 2);
        v.extend(lambda_vectors(4, 4).unwrap());
        assert_eq!(span_dim(&v).unwrap(), 4);
        // duplicates change nothing
        let mut w = v.clone();
        w.push(v[0].clone());
        assert_eq!(span_dim(&w).unwrap(), 4);
        assert_eq!(
            span_dim(&[vec![1, 2], vec![1, 2, 3]]),
            Err(Error::RaggedInput)
        );
    }

    #[test]
    fn trdeg_examples() {
        // ell = d: Gross-Koblitz forces algebraicity
        assert_eq!(trdeg_gamma(2, 2).unwrap(), 0);
        assert_eq!(trdeg_gamma(2, 4).unwrap(), 2);
        // lattice route with lcm = 6
        assert_eq!(trdeg_gamma(2, 3).unwrap(), 2);
    }

    #[test]
    fn trdeg_routes_agree_up_to_12() {
        for d in 1..=12u32 {
            for ell in 1..=12u32 {
                let t = trdeg_gamma(d, ell).unwrap();
                assert_eq!(t, ell - gcd(ell as u64, d as u64) as u32);
            }
        }
    }

    #[test]
    fn algebraic_examples() {
        assert!(is_algebraic(7, 1, 2, 2).unwrap());
        // q = 2, d = 2: 3 | 3
        assert!(is_algebraic(1, 3, 2, 2).unwrap());
        assert!(!is_algebraic(1, 5, 2, 2).unwrap());
        assert!(is_algebraic(1, 2, 1, 2).is_err());
    }

    #[test]
    fn gk_orbit_examples() {
        // n | q^d - 1: all orbits singletons
        let orbits = gk_kernel_generators(3, 2, 2).unwrap();
        assert!(orbits.iter().all(|o| o.residues.len() == 1));
        // q = 2, d = 1, n = 3: r = 2 and the single orbit {1/3, 2/3}
        let orbits = gk_kernel_generators(3, 1, 2).unwrap();
        assert_eq!(orbits.len(), 1);
        assert_eq!(orbits[0].residues, vec![1, 2]);
        assert!(orbit_reduces_mod_d(&orbits[0].vector, 1));
        assert!(gk_kernel_generators(4, 1, 2).is_err());
    }

    #[test]
    fn orbit_vectors_reduce_mod_d() {
        for q in [2u64, 3] {
            for d in 1..=2u32 {
                for n in 2..=12u64 {
                    if n % char_of(q) == 0 {
                        continue;
                    }
                    for orbit in gk_kernel_generators(n, d, q).unwrap() {
                        assert!(
                            orbit_reduces_mod_d(&orbit.vector, d),
                            "q={q} d={d} n={n} vec={:?}",
                            orbit.vector
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn span_dim_invariant_under_scaling_and_permutation() {
        let v = vec![vec![1, 2, 3], vec![0, 1, 1], vec![2, 5, 7]];
        let base = span_dim(&v).unwrap();
        let scaled: Vec<_> = v.iter().map(|r| r.iter().map(|x| x * 7).collect()).collect();
        assert_eq!(span_dim(&scaled).unwrap(), base);
        let mut permuted = v.clone();
        permuted.swap(0, 2);
        assert_eq!(span_dim(&permuted).unwrap(), base);
    }
}
