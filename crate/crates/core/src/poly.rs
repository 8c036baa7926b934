//! The polynomial ring `A = F_q[theta]`: dense univariate polynomials with
//! coefficients in a [`FqField`] context, plus monic enumeration and
//! irreducibility testing.

use crate::error::{Error, Result};
use crate::field::{FieldElem, FqField};

/// Dense polynomial, ascending coefficients, no trailing zeros (empty = 0).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<FieldElem>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one(fq: &FqField) -> Self {
        Poly {
            coeffs: vec![fq.one()],
        }
    }

    pub fn constant(c: FieldElem) -> Self {
        let mut p = Poly { coeffs: vec![c] };
        p.trim();
        p
    }

    /// The variable theta.
    pub fn theta(fq: &FqField) -> Self {
        Poly {
            coeffs: vec![fq.zero(), fq.one()],
        }
    }

    pub fn from_coeffs(coeffs: Vec<FieldElem>) -> Self {
        let mut p = Poly { coeffs };
        p.trim();
        p
    }

    /// Convenience constructor from small integers (reduced mod p).
    pub fn from_ints(fq: &FqField, coeffs: &[i64]) -> Self {
        Poly::from_coeffs(coeffs.iter().map(|&c| fq.from_int(c)).collect())
    }

    fn trim(&mut self) {
        while self.coeffs.last().map(FieldElem::is_zero) == Some(true) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize, fq: &FqField) -> FieldElem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| fq.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn deg(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn is_monic(&self, fq: &FqField) -> bool {
        self.coeffs.last() == Some(&fq.one())
    }

    pub fn add(&self, other: &Poly, fq: &FqField) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(fq.add(&self.coeff(i, fq), &other.coeff(i, fq)));
        }
        Poly::from_coeffs(out)
    }

    pub fn sub(&self, other: &Poly, fq: &FqField) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(fq.sub(&self.coeff(i, fq), &other.coeff(i, fq)));
        }
        Poly::from_coeffs(out)
    }

    pub fn neg(&self, fq: &FqField) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|c| fq.neg(c)).collect())
    }

    pub fn mul(&self, other: &Poly, fq: &FqField) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        // Prime-field fast path: the Carlitz factorial oracle multiplies
        // polynomials with degrees in the hundreds.
        if fq.deg() == 1 {
            let p = fq.p();
            let a: Vec<u64> = self.coeffs.iter().map(|c| c.coeffs()[0]).collect();
            let b: Vec<u64> = other.coeffs.iter().map(|c| c.coeffs()[0]).collect();
            let mut raw = vec![0u64; a.len() + b.len() - 1];
            for (i, &x) in a.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                for (j, &y) in b.iter().enumerate() {
                    raw[i + j] = (raw[i + j] + x * y) % p;
                }
            }
            return Poly::from_coeffs(
                raw.into_iter().map(|c| fq.from_int(c as i64)).collect(),
            );
        }
        let mut out = vec![fq.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in other.coeffs.iter().enumerate() {
                out[i + j] = fq.add(&out[i + j], &fq.mul(x, y));
            }
        }
        Poly::from_coeffs(out)
    }

    pub fn scale(&self, c: &FieldElem, fq: &FqField) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|x| fq.mul(x, c)).collect())
    }

    /// Quotient and remainder by a nonzero divisor.
    pub fn divrem(&self, div: &Poly, fq: &FqField) -> Result<(Poly, Poly)> {
        let dd = div.deg().ok_or(Error::DivisionByZero)?;
        let lead_inv = fq.inv(div.coeffs.last().unwrap())?;
        let mut rem = self.clone();
        let mut quot = vec![fq.zero(); self.coeffs.len().saturating_sub(dd)];
        while let Some(dr) = rem.deg() {
            if dr < dd {
                break;
            }
            let c = fq.mul(rem.coeffs.last().unwrap(), &lead_inv);
            let shift = dr - dd;
            quot[shift] = fq.add(&quot[shift], &c);
            for (i, di) in div.coeffs.iter().enumerate() {
                let t = fq.mul(&c, di);
                rem.coeffs[i + shift] = fq.sub(&rem.coeffs[i + shift], &t);
            }
            rem.trim();
        }
        Ok((Poly::from_coeffs(quot), rem))
    }

    pub fn rem(&self, div: &Poly, fq: &FqField) -> Result<Poly> {
        Ok(self.divrem(div, fq)?.1)
    }

    pub fn gcd(&self, other: &Poly, fq: &FqField) -> Result<Poly> {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b, fq)?;
            a = b;
            b = r;
        }
        if let Some(lead) = a.coeffs.last() {
            let li = fq.inv(lead)?;
            a = a.scale(&li, fq);
        }
        Ok(a)
    }

    pub fn eval(&self, at: &FieldElem, fq: &FqField) -> FieldElem {
        let mut acc = fq.zero();
        for c in self.coeffs.iter().rev() {
            acc = fq.mul(&acc, at);
            acc = fq.add(&acc, c);
        }
        acc
    }

    pub fn pow_mod(&self, mut exp: u128, modulus: &Poly, fq: &FqField) -> Result<Poly> {
        let mut acc = Poly::one(fq);
        let mut base = self.rem(modulus, fq)?;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base, fq).rem(modulus, fq)?;
            }
            base = base.mul(&base, fq).rem(modulus, fq)?;
            exp >>= 1;
        }
        Ok(acc)
    }

    /// Multiplicity of `div` in `self` by trial division.
    pub fn ord_div(&self, div: &Poly, fq: &FqField) -> Result<u64> {
        if self.is_zero() {
            return Err(Error::Domain("ord of the zero polynomial".into()));
        }
        let mut count = 0;
        let mut cur = self.clone();
        loop {
            let (q, r) = cur.divrem(div, fq)?;
            if !r.is_zero() {
                return Ok(count);
            }
            count += 1;
            cur = q;
        }
    }

    /// Renders with variable `x`; extension-field coefficients print as
    /// F_p digit vectors.
    pub fn display(&self, fq: &FqField) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let coeff = fq.fmt_elem(c);
            let body = match i {
                0 => coeff,
                1 if coeff == "1" => "x".into(),
                1 => format!("{coeff}*x"),
                _ if coeff == "1" => format!("x^{i}"),
                _ => format!("{coeff}*x^{i}"),
            };
            terms.push(body);
        }
        terms.join(" + ")
    }
}

/// All monic polynomials of the given degree, in ascending lexicographic
/// order of the coefficient vector (c_0, ..., c_{deg-1}).
pub fn enumerate_monic(fq: &FqField, degree: usize, cap: usize) -> Result<Vec<Poly>> {
    if degree > cap {
        return Err(Error::EnumerationBound { degree, cap });
    }
    if degree == 0 {
        return Ok(vec![Poly::one(fq)]);
    }
    let elems: Vec<FieldElem> = fq.elements().collect();
    let q = elems.len();
    let mut out = Vec::with_capacity(q.pow(degree as u32));
    let mut idx = vec![0usize; degree];
    loop {
        let mut coeffs: Vec<FieldElem> = idx.iter().map(|&i| elems[i].clone()).collect();
        coeffs.push(fq.one());
        out.push(Poly::from_coeffs(coeffs));
        let mut i = degree;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            idx[i] += 1;
            if idx[i] < q {
                break;
            }
            idx[i] = 0;
        }
    }
}

/// Irreducibility over the coefficient field, by the theta^{Q^i} - theta
/// ladder (Q the field cardinality).
pub fn is_irreducible(fq: &FqField, f: &Poly) -> Result<bool> {
    let n = match f.deg() {
        None | Some(0) => {
            return Err(Error::Domain(
                "irreducibility is undefined for constants".into(),
            ))
        }
        Some(1) => return Ok(true),
        Some(n) => n,
    };
    let big_q = fq.order() as u128;
    let x = Poly::theta(fq);
    let mut h = x.clone();
    let mut checkpoints = Vec::new();
    let factors = small_prime_factors(n as u64);
    for i in 1..=n {
        h = h.pow_mod(big_q, f, fq)?;
        if factors.iter().any(|&r| i == n / r as usize) {
            checkpoints.push(h.clone());
        }
    }
    if h != x.rem(f, fq)? {
        return Ok(false);
    }
    for hi in checkpoints {
        let g = hi.sub(&x, fq).gcd(f, fq)?;
        if g.deg() != Some(0) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn small_prime_factors(mut n: u64) -> Vec<u64> {
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

/// Parses a polynomial in the variable `x` over F_q. Coefficients are
/// integers (reduced mod p); for prime-power q the tokens `g` and `g^k`
/// denote powers of the chosen generator of F_q.
pub fn parse_poly(fq: &FqField, input: &str) -> Result<Poly> {
    let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut terms: Vec<(FieldElem, usize)> = Vec::new();
    let bytes = s.as_bytes();
    let mut i = 0;
    let mut sign_next = 1i64;
    if bytes[0] == b'+' || bytes[0] == b'-' {
        sign_next = if bytes[0] == b'-' { -1 } else { 1 };
        i = 1;
    }
    while i < bytes.len() {
        // read one term: factors separated by '*'
        let start = i;
        while i < bytes.len() && bytes[i] != b'+' && bytes[i] != b'-' {
            i += 1;
        }
        let term = &s[start..i];
        let sign = sign_next;
        if i < bytes.len() {
            sign_next = if bytes[i] == b'-' { -1 } else { 1 };
            i += 1;
        }
        if term.is_empty() {
            return Err(Error::Parse(format!("dangling sign in '{input}'")));
        }
        let mut coeff = fq.from_int(sign);
        let mut degree = 0usize;
        for factor in term.split('*') {
            if factor.is_empty() {
                return Err(Error::Parse(format!("empty factor in '{term}'")));
            }
            if let Some(rest) = factor.strip_prefix('x') {
                let k = parse_exponent(rest, factor)?;
                degree += k;
            } else if let Some(rest) = factor.strip_prefix('g') {
                if fq.e() == 1 {
                    return Err(Error::Parse(
                        "generator token 'g' is only valid for prime-power q".into(),
                    ));
                }
                let k = parse_exponent(rest, factor)?;
                let g = fq.gen();
                coeff = fq.mul(&coeff, &fq.pow(&g, k as u64));
            } else {
                let n: i64 = factor
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad factor '{factor}' in '{input}'")))?;
                coeff = fq.mul(&coeff, &fq.from_int(n));
            }
        }
        terms.push((coeff, degree));
    }
    let max_deg = terms.iter().map(|t| t.1).max().unwrap_or(0);
    let mut coeffs = vec![fq.zero(); max_deg + 1];
    for (c, d) in terms {
        coeffs[d] = fq.add(&coeffs[d], &c);
    }
    Ok(Poly::from_coeffs(coeffs))
}

fn parse_exponent(rest: &str, factor: &str) -> Result<usize> {
    if rest.is_empty() {
        Ok(1)
    } else if let Some(e) = rest.strip_prefix('^') {
        e.parse()
            .map_err(|_| Error::Parse(format!("bad exponent in '{factor}'")))
    } else {
        Err(Error::Parse(format!("bad factor '{factor}'")))
    }
}
