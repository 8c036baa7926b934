//! Eventually periodic base-q digit streams of rational p-adic integers:
//! z = sum z_i q^i with 0 <= z_i < q, for z = a/b with p not dividing b.

use crate::error::{Error, Result};

/// Smallest prime factor; the digit base q is a prime power, so this is p.
pub(crate) fn char_of(q: u64) -> u64 {
    let mut d = 2;
    while d * d <= q {
        if q % d == 0 {
            return d;
        }
        d += 1;
    }
    q
}

fn inv_mod(b: i128, q: i128) -> i128 {
    // extended Euclid; gcd(b, q) = 1
    let (mut r0, mut r1) = (q, b.rem_euclid(q));
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let k = r0 / r1;
        r0 -= k * r1;
        std::mem::swap(&mut r0, &mut r1);
        t0 -= k * t1;
        std::mem::swap(&mut t0, &mut t1);
    }
    t0.rem_euclid(q)
}

/// The digit stream of a rational p-adic integer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QDigits {
    num: i64,
    den: i64,
    q: u64,
    preperiod: Vec<u64>,
    period: Vec<u64>,
}

impl QDigits {
    /// Expands a/b in base q. Errors when p divides the denominator.
    pub fn expand(a: i64, b: i64, q: u64) -> Result<QDigits> {
        assert!(q >= 2);
        if b == 0 {
            return Err(Error::Domain("zero denominator".into()));
        }
        let (mut a, mut b) = if b < 0 { (-a, -b) } else { (a, b) };
        let g = gcd(a.unsigned_abs(), b as u64) as i64;
        a /= g;
        b /= g;
        let p = char_of(q);
        if (b as u64) % p == 0 {
            return Err(Error::NotPAdicInteger { num: a, den: b, p });
        }
        let qi = q as i128;
        let binv = inv_mod(b as i128, qi);
        let mut state = a as i128;
        let mut digits: Vec<u64> = Vec::new();
        let mut seen: Vec<(i128, usize)> = Vec::new();
        let limit = 64 + 2 * b.unsigned_abs() as usize + 2 * q as usize;
        loop {
            if let Some(&(_, at)) = seen.iter().find(|(s, _)| *s == state) {
                let preperiod = digits[..at].to_vec();
                let period = digits[at..].to_vec();
                return Ok(QDigits {
                    num: a,
                    den: b,
                    q,
                    preperiod,
                    period,
                });
            }
            seen.push((state, digits.len()));
            if digits.len() > limit {
                return Err(Error::InternalInconsistency(
                    "digit expansion failed to cycle".into(),
                ));
            }
            let z = (state * binv).rem_euclid(qi) as u64 % q;
            digits.push(z);
            state = (state - z as i128 * b as i128) / qi;
        }
    }

    pub fn num(&self) -> i64 {
        self.num
    }

    pub fn den(&self) -> i64 {
        self.den
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn preperiod(&self) -> &[u64] {
        &self.preperiod
    }

    pub fn period(&self) -> &[u64] {
        &self.period
    }

    pub fn digit(&self, i: usize) -> u64 {
        if i < self.preperiod.len() {
            self.preperiod[i]
        } else {
            self.period[(i - self.preperiod.len()) % self.period.len()]
        }
    }

    pub fn prefix(&self, count: usize) -> Vec<u64> {
        (0..count).map(|i| self.digit(i)).collect()
    }

    /// ord_q(z): the largest m with q^m | z, i.e. the index of the first
    /// nonzero digit. None for z = 0.
    pub fn ord_q(&self) -> Option<u64> {
        if let Some(i) = self.preperiod.iter().position(|&d| d != 0) {
            return Some(i as u64);
        }
        self.period
            .iter()
            .position(|&d| d != 0)
            .map(|i| (self.preperiod.len() + i) as u64)
    }

    pub fn is_zero(&self) -> bool {
        self.ord_q().is_none()
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        a %= b;
        std::mem::swap(&mut a, &mut b);
    }
    a.max(1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::BigInt;

    #[test]
    fn minus_one_is_all_q_minus_one() {
        for q in [2u64, 3, 4, 9] {
            let d = QDigits::expand(-1, 1, q).unwrap();
            for i in 0..20 {
                assert_eq!(d.digit(i), q - 1);
            }
            assert_eq!(d.ord_q(), Some(0));
        }
    }

    #[test]
    fn geometric_pattern() {
        // z = -q^s/(q^l - 1) has digit 1 exactly at indices == s mod l
        for q in [2u64, 3] {
            for l in 1..=4u32 {
                for s in 0..l {
                    let den = (q.pow(l) - 1) as i64;
                    let num = -(q.pow(s) as i64);
                    let d = QDigits::expand(num, den, q).unwrap();
                    for i in 0..24u32 {
                        let expect = if i % l == s { 1 } else { 0 };
                        assert_eq!(d.digit(i as usize), expect, "q={q} l={l} s={s} i={i}");
                    }
                }
            }
        }
    }

    #[test]
    fn one_half_base_three() {
        let d = QDigits::expand(1, 2, 3).unwrap();
        assert_eq!(d.digit(0), 2);
        for i in 1..12 {
            assert_eq!(d.digit(i), 1);
        }
    }

    #[test]
    fn rejects_p_in_denominator() {
        assert!(matches!(
            QDigits::expand(1, 2, 2),
            Err(Error::NotPAdicInteger { .. })
        ));
        assert!(matches!(
            QDigits::expand(1, 6, 9),
            Err(Error::NotPAdicInteger { .. })
        ));
        // 4 = 2^2: p = 2
        assert!(QDigits::expand(1, 4, 3).is_ok());
    }

    #[test]
    fn resummation_congruence() {
        // sum z_i q^i == a/b mod q^K, i.e. q^K | a - b * S_K
        for &(a, b, q) in &[(7i64, 5i64, 2u64), (-3, 7, 3), (11, -13, 4), (1, 2, 9)] {
            let d = QDigits::expand(a, b, q).unwrap();
            let mut s = BigInt::from(0);
            let mut qk = BigInt::from(1);
            for i in 0..40 {
                s += BigInt::from(d.digit(i)) * &qk;
                qk *= q;
                let lhs = BigInt::from(a) - BigInt::from(b) * &s;
                assert_eq!(&lhs % &qk, BigInt::from(0), "a={a} b={b} q={q} K={}", i + 1);
            }
        }
    }

    #[test]
    fn period_divides_order_of_q() {
        // multiplicative order of q mod |b|
        for &(a, b, q) in &[(1i64, 7i64, 2u64), (5, 11, 3), (-4, 9, 2)] {
            let d = QDigits::expand(a, b, q).unwrap();
            let m = b.unsigned_abs();
            let mut ord = 1u64;
            let mut acc = q % m;
            while acc != 1 {
                acc = acc * q % m;
                ord += 1;
            }
            assert_eq!(ord % d.period().len() as u64, 0, "a={a} b={b} q={q}");
        }
    }
}
