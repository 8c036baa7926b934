//! Finite field arithmetic in a polynomial basis over the prime field.
//!
//! A [`FqField`] describes F_{q^m} with q = p^e, realized as `F_p[x]/(f)` where
//! f is the lexicographically smallest monic irreducible of degree e*m over
//! F_p (coefficient vectors compared constant-term first). Elements are plain
//! coefficient vectors; all arithmetic goes through the describing context.

use crate::error::{Error, Result};

/// Dense polynomials over F_p as coefficient vectors (ascending degree,
/// no trailing zeros). Internal helper layer for the quotient-ring arithmetic.
mod fpx {
    pub fn trim(v: &mut Vec<u64>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    pub fn deg(v: &[u64]) -> Option<usize> {
        if v.is_empty() {
            None
        } else {
            Some(v.len() - 1)
        }
    }

    pub fn add(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut out = vec![0u64; a.len().max(b.len())];
        for (i, o) in out.iter_mut().enumerate() {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            *o = (x + y) % p;
        }
        trim(&mut out);
        out
    }

    pub fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut out = vec![0u64; a.len().max(b.len())];
        for (i, o) in out.iter_mut().enumerate() {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            *o = (x + p - y) % p;
        }
        trim(&mut out);
        out
    }

    pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        trim(&mut out);
        out
    }

    fn inv_scalar(c: u64, p: u64) -> u64 {
        // Fermat; p is prime and c != 0.
        let mut acc = 1u64;
        let mut base = c % p;
        let mut exp = p - 2;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            exp >>= 1;
        }
        acc
    }

    /// Remainder of a by monic-or-not nonzero f.
    pub fn rem(a: &[u64], f: &[u64], p: u64) -> Vec<u64> {
        let df = deg(f).expect("division by zero polynomial");
        let lead_inv = inv_scalar(f[df], p);
        let mut r: Vec<u64> = a.to_vec();
        trim(&mut r);
        while let Some(dr) = deg(&r) {
            if dr < df {
                break;
            }
            let c = r[dr] * lead_inv % p;
            let shift = dr - df;
            for (i, &fi) in f.iter().enumerate() {
                let t = c * fi % p;
                r[i + shift] = (r[i + shift] + p - t % p) % p;
            }
            trim(&mut r);
        }
        r
    }

    pub fn mul_mod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
        rem(&mul(a, b, p), f, p)
    }

    pub fn pow_mod(base: &[u64], mut exp: u128, f: &[u64], p: u64) -> Vec<u64> {
        let mut acc = vec![1u64];
        let mut b = rem(base, f, p);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = mul_mod(&acc, &b, f, p);
            }
            b = mul_mod(&b, &b, f, p);
            exp >>= 1;
        }
        acc
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        trim(&mut x);
        trim(&mut y);
        while !y.is_empty() {
            let r = rem(&x, &y, p);
            x = y;
            y = r;
        }
        // normalize monic
        if let Some(d) = deg(&x) {
            let li = inv_scalar(x[d], p);
            for c in x.iter_mut() {
                *c = *c * li % p;
            }
        }
        x
    }

    /// Inverse of a modulo monic f (extended Euclid). None if gcd != 1.
    pub fn inv_mod(a: &[u64], f: &[u64], p: u64) -> Option<Vec<u64>> {
        let mut r0 = f.to_vec();
        let mut r1 = rem(a, f, p);
        let mut t0: Vec<u64> = Vec::new();
        let mut t1: Vec<u64> = vec![1];
        while !r1.is_empty() {
            // divide r0 by r1
            let d1 = deg(&r1).unwrap();
            let li = inv_scalar(r1[d1], p);
            let mut q = vec![0u64; r0.len().saturating_sub(r1.len()) + 1];
            let mut r = r0.clone();
            while let Some(dr) = deg(&r) {
                if dr < d1 {
                    break;
                }
                let c = r[dr] * li % p;
                let shift = dr - d1;
                q[shift] = (q[shift] + c) % p;
                for (i, &fi) in r1.iter().enumerate() {
                    let t = c * fi % p;
                    r[i + shift] = (r[i + shift] + p - t) % p;
                }
                trim(&mut r);
            }
            trim(&mut q);
            let t2 = sub(&t0, &mul(&q, &t1, p), p);
            r0 = std::mem::replace(&mut r1, r);
            t0 = std::mem::replace(&mut t1, t2);
        }
        let d = deg(&r0)?;
        if d != 0 {
            return None;
        }
        let li = inv_scalar(r0[0], p);
        let mut out = t0;
        for c in out.iter_mut() {
            *c = *c * li % p;
        }
        trim(&mut out);
        Some(rem(&out, f, p))
    }

    fn prime_factors(mut n: u64) -> Vec<u64> {
        let mut out = Vec::new();
        let mut d = 2;
        while d * d <= n {
            if n % d == 0 {
                out.push(d);
                while n % d == 0 {
                    n /= d;
                }
            }
            d += 1;
        }
        if n > 1 {
            out.push(n);
        }
        out
    }

    /// Irreducibility over F_p by the x^{p^i} ladder.
    pub fn is_irreducible(f: &[u64], p: u64) -> bool {
        let n = match deg(f) {
            Some(0) | None => return false,
            Some(1) => return true,
            Some(n) => n,
        };
        let x = vec![0u64, 1];
        // x^{p^n} must equal x mod f
        let mut h = x.clone();
        let mut at: Vec<(usize, Vec<u64>)> = Vec::new();
        let checkpoints: Vec<usize> = prime_factors(n as u64)
            .iter()
            .map(|&r| n / r as usize)
            .collect();
        for i in 1..=n {
            h = pow_mod(&h, p as u128, f, p);
            if checkpoints.contains(&i) {
                at.push((i, h.clone()));
            }
        }
        if h != rem(&x, f, p) {
            return false;
        }
        for (_, hi) in at {
            let g = gcd(&sub(&hi, &x, p), f, p);
            if deg(&g) != Some(0) {
                return false;
            }
        }
        true
    }

    /// Lexicographically smallest monic irreducible of the given degree:
    /// coefficient vectors (c_0, ..., c_{n-1}) stepped odometer-style with
    /// the last index fastest, which is ascending lex with c_0 compared first.
    pub fn smallest_irreducible(n: usize, p: u64) -> Vec<u64> {
        assert!(n >= 1);
        let mut c = vec![0u64; n];
        loop {
            let mut f = c.clone();
            f.push(1);
            if is_irreducible(&f, p) {
                return f;
            }
            let mut i = n;
            loop {
                if i == 0 {
                    unreachable!("no irreducible of degree {n} over F_{p} found");
                }
                i -= 1;
                c[i] += 1;
                if c[i] < p {
                    break;
                }
                c[i] = 0;
            }
        }
    }
}

/// An element of F_{q^m}: e*m residues mod p (ascending powers of the basis
/// generator). Context-free payload; interpret through the owning [`FqField`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElem {
    coeffs: Vec<u64>,
}

impl FieldElem {
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

/// Description of the working field F_{q^m}, q = p^e, as `F_p[x]/(modulus)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FqField {
    p: u64,
    e: u32,
    m: u32,
    modulus: Vec<u64>,
}

impl FqField {
    /// Builds F_{q^m} with the deterministic smallest-lex modulus of degree e*m.
    pub fn new(p: u64, e: u32, m: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("p = {p} is not prime")));
        }
        if e == 0 || m == 0 {
            return Err(Error::InvalidField("e and m must be >= 1".into()));
        }
        let deg = (e * m) as usize;
        // identities are degree-generic, so small q suffices: q <= 16 by default
        if p.checked_pow(e).is_none_or(|q| q > 16) {
            return Err(Error::InvalidField(format!(
                "q = {p}^{e} exceeds the default bound 16"
            )));
        }
        if deg > 20 || p.checked_pow(e * m).is_none() || p.pow(e * m) > 1 << 20 {
            return Err(Error::InvalidField(format!(
                "working field F_{{{p}^{deg}}} exceeds the enumeration bounds"
            )));
        }
        let modulus = fpx::smallest_irreducible(deg, p);
        Ok(FqField { p, e, m, modulus })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// q = p^e, the cardinality of the coefficient field F_q.
    pub fn q(&self) -> u64 {
        self.p.pow(self.e)
    }

    /// p^{e*m}, the cardinality of the working field.
    pub fn order(&self) -> u64 {
        self.p.pow(self.e * self.m)
    }

    /// Degree over F_p.
    pub fn deg(&self) -> usize {
        (self.e * self.m) as usize
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    fn make(&self, mut coeffs: Vec<u64>) -> FieldElem {
        coeffs.resize(self.deg(), 0);
        FieldElem { coeffs }
    }

    pub fn zero(&self) -> FieldElem {
        self.make(Vec::new())
    }

    pub fn one(&self) -> FieldElem {
        self.make(vec![1])
    }

    /// The class of x, a generator of the working field over F_p.
    pub fn gen(&self) -> FieldElem {
        self.make(vec![0, 1])
    }

    /// Image of an integer under Z -> F_p -> F_{q^m}.
    pub fn from_int(&self, c: i64) -> FieldElem {
        self.make(vec![c.rem_euclid(self.p as i64) as u64])
    }

    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<FieldElem> {
        if coeffs.len() > self.deg() || coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::InvalidField(format!(
                "bad coefficient vector for F_p^{} with p = {}",
                self.deg(),
                self.p
            )));
        }
        Ok(self.make(coeffs.to_vec()))
    }

    pub fn add(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        self.make(fpx::add(&a.coeffs, &b.coeffs, self.p))
    }

    pub fn sub(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        self.make(fpx::sub(&a.coeffs, &b.coeffs, self.p))
    }

    pub fn neg(&self, a: &FieldElem) -> FieldElem {
        self.make(fpx::sub(&[], &a.coeffs, self.p))
    }

    pub fn mul(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        self.make(fpx::mul_mod(&a.coeffs, &b.coeffs, &self.modulus, self.p))
    }

    pub fn inv(&self, a: &FieldElem) -> Result<FieldElem> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let inv = fpx::inv_mod(&a.coeffs, &self.modulus, self.p)
            .ok_or_else(|| Error::InternalInconsistency("non-invertible nonzero element".into()))?;
        Ok(self.make(inv))
    }

    pub fn pow(&self, a: &FieldElem, exp: u64) -> FieldElem {
        self.make(fpx::pow_mod(&a.coeffs, exp as u128, &self.modulus, self.p))
    }

    /// x^{q^n}; negative n is the inverse Frobenius, both reduced mod m
    /// (the q-Frobenius orbit length of F_{q^m}).
    pub fn frobenius(&self, a: &FieldElem, n: i64) -> FieldElem {
        let n = n.rem_euclid(self.m as i64) as u32;
        let mut out = a.clone();
        for _ in 0..n {
            out = self.pow(&out, self.q());
        }
        out
    }

    /// All p^{e*m} elements in ascending lexicographic order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElem> + '_ {
        let n = self.deg();
        let total = self.order();
        (0..total).map(move |idx| {
            // odometer: last index fastest => ascending lex (index 0 first)
            let mut coeffs = vec![0u64; n];
            let mut rest = idx;
            for i in (0..n).rev() {
                coeffs[i] = rest % self.p;
                rest /= self.p;
            }
            FieldElem { coeffs }
        })
    }

    /// Evaluates a polynomial with F_p coefficients at a point of this field.
    pub fn eval_fp_poly(&self, poly: &[u64], at: &FieldElem) -> FieldElem {
        let mut acc = self.zero();
        for &c in poly.iter().rev() {
            acc = self.mul(&acc, at);
            acc = self.add(&acc, &self.from_int(c as i64));
        }
        acc
    }

    /// Renders an element: a bare residue for prime fields, otherwise the
    /// F_p digit vector.
    pub fn fmt_elem(&self, a: &FieldElem) -> String {
        if self.deg() == 1 {
            format!("{}", a.coeffs[0])
        } else {
            let inner: Vec<String> = a.coeffs.iter().map(|c| c.to_string()).collect();
            format!("[{}]", inner.join(","))
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_modulus_choices() {
        let f2 = FqField::new(2, 1, 1).unwrap();
        assert_eq!(f2.modulus(), &[0, 1]); // x
        let f4 = FqField::new(2, 2, 1).unwrap();
        assert_eq!(f4.modulus(), &[1, 1, 1]); // x^2+x+1
        let f16 = FqField::new(2, 2, 2).unwrap();
        assert_eq!(f16.modulus(), &[1, 0, 0, 1, 1]); // x^4+x^3+1
    }

    #[test]
    fn frobenius_on_f4_generator() {
        // q=2 base, working field F_4 = F_2(g): g^2 = g+1, so g^q = g+1.
        let f4 = FqField::new(2, 1, 2).unwrap();
        let g = f4.gen();
        let expect = f4.from_coeffs(&[1, 1]).unwrap();
        // oracle: brute-force squaring in F_2[g]/(g^2+g+1)
        assert_eq!(f4.mul(&g, &g), expect);
        assert_eq!(f4.frobenius(&g, 1), expect);
    }

    #[test]
    fn frobenius_fixes_base_field() {
        let f9 = FqField::new(3, 1, 2).unwrap();
        for c in 0..3 {
            let x = f9.from_int(c);
            assert_eq!(f9.frobenius(&x, 1), x);
            assert_eq!(f9.frobenius(&x, -5), x);
        }
    }

    #[test]
    fn frobenius_order_divides_m() {
        let f = FqField::new(3, 1, 2).unwrap();
        for x in f.elements() {
            assert_eq!(f.frobenius(&x, f.m() as i64), x);
        }
    }

    #[test]
    fn inverse_roundtrip() {
        let f = FqField::new(2, 2, 2).unwrap();
        for x in f.elements().skip(1) {
            let inv = f.inv(&x).unwrap();
            assert_eq!(f.mul(&x, &inv), f.one());
        }
        assert_eq!(f.inv(&f.zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(FqField::new(4, 1, 1).is_err());
        assert!(FqField::new(2, 0, 1).is_err());
    }

    #[test]
    fn elements_are_lex_sorted() {
        let f = FqField::new(2, 2, 1).unwrap();
        let all: Vec<_> = f.elements().collect();
        assert_eq!(all.len(), 4);
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(all, sorted);
    }

    #[test]
    fn chosen_modulus_is_irreducible_by_the_public_test() {
        use crate::poly::{is_irreducible, Poly};
        for (p, e, m) in [(2u64, 1u32, 2u32), (2, 2, 2), (3, 1, 2), (2, 1, 3)] {
            let f = FqField::new(p, e, m).unwrap();
            let fp = FqField::new(p, 1, 1).unwrap();
            let modulus = Poly::from_coeffs(
                f.modulus().iter().map(|&c| fp.from_int(c as i64)).collect(),
            );
            assert!(is_irreducible(&fp, &modulus).unwrap(), "p={p} e={e} m={m}");
        }
    }
}
