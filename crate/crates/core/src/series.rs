//! Truncated Laurent series over the residue field of a place: the working
//! model of k_v = F_{q^d}((theta - eps)).
//!
//! A series carries a window of coefficients starting at its exact valuation.
//! Additive cancellation shrinks the window (the recorded precision deficit);
//! the absolute bound `val + len` never silently grows. An empty window means
//! "zero modulo pi^val": indistinguishable from zero at the known precision.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::FieldElem;
use crate::place::Place;
use crate::poly::Poly;

/// Relative window cap applied by `pow_q` so Frobenius powers of wide
/// windows cannot exhaust memory.
const POW_Q_WINDOW_CAP: usize = 1 << 16;

#[derive(Debug, Clone)]
pub struct LaurentSeries {
    place: Arc<Place>,
    val: i64,
    coeffs: Vec<FieldElem>,
}

/// Outcome of comparing two series: either the exact order of a visible
/// nonzero difference, or a proven lower bound when the difference vanishes
/// through the comparable window.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiffBound {
    Exact(i64),
    AtLeast(i64),
}

impl DiffBound {
    pub fn holds_to(&self, threshold: i64) -> bool {
        match self {
            DiffBound::Exact(v) => *v >= threshold,
            DiffBound::AtLeast(b) => *b >= threshold,
        }
    }
}

impl LaurentSeries {
    fn check_same_place(&self, other: &LaurentSeries) {
        if !Arc::ptr_eq(&self.place, &other.place) {
            assert!(
                self.place.base() == other.place.base() && self.place.v() == other.place.v(),
                "mixed series from different places"
            );
        }
    }

    /// Normalizing constructor: trims leading zeros, collapsing an all-zero
    /// window to the zero flag at its bound.
    pub fn from_window(place: Arc<Place>, val: i64, window: Vec<FieldElem>) -> Self {
        let lead = window.iter().position(|c| !c.is_zero());
        match lead {
            None => LaurentSeries {
                place,
                val: val + window.len() as i64,
                coeffs: Vec::new(),
            },
            Some(0) => LaurentSeries {
                place,
                val,
                coeffs: window,
            },
            Some(k) => LaurentSeries {
                place,
                val: val + k as i64,
                coeffs: window[k..].to_vec(),
            },
        }
    }

    /// Zero known modulo pi^bound.
    pub fn zero(place: Arc<Place>, bound: i64) -> Self {
        LaurentSeries {
            place,
            val: bound,
            coeffs: Vec::new(),
        }
    }

    pub fn one(place: Arc<Place>, prec: usize) -> Self {
        Self::constant(place, None, prec)
    }

    /// c * pi^0; `None` means 1.
    pub fn constant(place: Arc<Place>, c: Option<FieldElem>, prec: usize) -> Self {
        let ext = place.ext().clone();
        let c = c.unwrap_or_else(|| ext.one());
        if c.is_zero() {
            return Self::zero(place, prec as i64);
        }
        let mut coeffs = vec![ext.zero(); prec.max(1)];
        coeffs[0] = c;
        LaurentSeries {
            place,
            val: 0,
            coeffs,
        }
    }

    /// c * pi^k.
    pub fn monomial(place: Arc<Place>, c: FieldElem, k: i64, prec: usize) -> Self {
        let mut s = Self::constant(place, Some(c), prec);
        s.val += k;
        s
    }

    pub fn place(&self) -> &Arc<Place> {
        &self.place
    }

    pub fn is_zero_to_bound(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Exact valuation; None when the series is flat zero to its bound.
    pub fn valuation(&self) -> Option<i64> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.val)
        }
    }

    /// The series is known modulo pi^bound.
    pub fn bound(&self) -> i64 {
        self.val + self.coeffs.len() as i64
    }

    pub fn rel_prec(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    /// Coefficient of pi^k; zero below the valuation, panics at or past the
    /// bound (arithmetic must never read beyond the window).
    pub fn coeff_at(&self, k: i64) -> FieldElem {
        assert!(k < self.bound(), "coefficient read beyond precision window");
        if k < self.val {
            self.place.ext().zero()
        } else {
            self.coeffs[(k - self.val) as usize].clone()
        }
    }

    /// Leading coefficient (unit part constant term).
    pub fn leading(&self) -> Option<&FieldElem> {
        self.coeffs.first()
    }

    pub fn truncate(&self, rel: usize) -> LaurentSeries {
        let mut out = self.clone();
        out.coeffs.truncate(rel);
        out
    }

    pub fn add(&self, other: &LaurentSeries) -> LaurentSeries {
        self.check_same_place(other);
        let bound = self.bound().min(other.bound());
        let start = match (self.valuation(), other.valuation()) {
            (Some(a), Some(b)) => a.min(b).min(bound),
            (Some(a), None) => a.min(bound),
            (None, Some(b)) => b.min(bound),
            (None, None) => bound,
        };
        let ext = self.place.ext();
        let mut window = Vec::with_capacity((bound - start).max(0) as usize);
        let at = |s: &LaurentSeries, k: i64| -> FieldElem {
            if s.coeffs.is_empty() || k < s.val {
                ext.zero()
            } else {
                s.coeffs[(k - s.val) as usize].clone()
            }
        };
        let mut k = start;
        while k < bound {
            window.push(ext.add(&at(self, k), &at(other, k)));
            k += 1;
        }
        LaurentSeries::from_window(self.place.clone(), start, window)
    }

    pub fn neg(&self) -> LaurentSeries {
        let ext = self.place.ext();
        LaurentSeries {
            place: self.place.clone(),
            val: self.val,
            coeffs: self.coeffs.iter().map(|c| ext.neg(c)).collect(),
        }
    }

    pub fn sub(&self, other: &LaurentSeries) -> LaurentSeries {
        self.add(&other.neg())
    }

    pub fn scalar_mul(&self, c: &FieldElem) -> LaurentSeries {
        if c.is_zero() {
            return LaurentSeries::zero(self.place.clone(), self.bound());
        }
        let ext = self.place.ext();
        LaurentSeries {
            place: self.place.clone(),
            val: self.val,
            coeffs: self.coeffs.iter().map(|x| ext.mul(x, c)).collect(),
        }
    }

    pub fn mul(&self, other: &LaurentSeries) -> LaurentSeries {
        self.check_same_place(other);
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return LaurentSeries::zero(self.place.clone(), self.val + other.val);
        }
        let rel = self.coeffs.len().min(other.coeffs.len());
        let ext = self.place.ext();
        let mut out = vec![ext.zero(); rel];
        for (i, x) in self.coeffs.iter().enumerate().take(rel) {
            if x.is_zero() {
                continue;
            }
            for (j, y) in other.coeffs.iter().enumerate().take(rel - i) {
                if y.is_zero() {
                    continue;
                }
                out[i + j] = ext.add(&out[i + j], &ext.mul(x, y));
            }
        }
        // leading product of two units is nonzero: no trimming required
        LaurentSeries {
            place: self.place.clone(),
            val: self.val + other.val,
            coeffs: out,
        }
    }

    /// Multiplicative inverse; requires a visible nonzero leading coefficient.
    pub fn inv(&self) -> Result<LaurentSeries> {
        if self.coeffs.is_empty() {
            return Err(Error::DivisionByZero);
        }
        let ext = self.place.ext();
        let lead_inv = ext.inv(&self.coeffs[0])?;
        let n = self.coeffs.len();
        let mut w = Vec::with_capacity(n);
        w.push(lead_inv.clone());
        for k in 1..n {
            let mut acc = ext.zero();
            for i in 1..=k {
                acc = ext.add(&acc, &ext.mul(&self.coeffs[i], &w[k - i]));
            }
            w.push(ext.neg(&ext.mul(&lead_inv, &acc)));
        }
        Ok(LaurentSeries {
            place: self.place.clone(),
            val: -self.val,
            coeffs: w,
        })
    }

    pub fn div(&self, other: &LaurentSeries) -> Result<LaurentSeries> {
        Ok(self.mul(&other.inv()?))
    }

    /// s^k by square-and-multiply; negative k through inversion.
    pub fn pow(&self, k: i64) -> Result<LaurentSeries> {
        if k < 0 {
            return self.inv()?.pow(-k);
        }
        if k == 0 {
            if self.coeffs.is_empty() {
                return Err(Error::DivisionByZero);
            }
            return Ok(LaurentSeries::one(
                self.place.clone(),
                self.coeffs.len(),
            ));
        }
        if self.coeffs.is_empty() {
            return Ok(LaurentSeries::zero(self.place.clone(), self.val * k));
        }
        let mut acc: Option<LaurentSeries> = None;
        let mut base = self.clone();
        let mut e = k as u64;
        loop {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => a.mul(&base),
                });
            }
            e >>= 1;
            if e == 0 {
                break;
            }
            base = base.mul(&base);
        }
        Ok(acc.unwrap())
    }

    /// s^{q^j} via coefficientwise Frobenius: exact and cheap, and the
    /// absolute precision improves to q^j * bound.
    pub fn pow_q(&self, j: u32) -> LaurentSeries {
        let q = self.place.q();
        let big_q = q.pow(j) as i64;
        if self.coeffs.is_empty() {
            return LaurentSeries::zero(self.place.clone(), self.val * big_q);
        }
        let ext = self.place.ext();
        let rel = (((self.coeffs.len() - 1) as i64 * big_q) as usize + 1).min(POW_Q_WINDOW_CAP);
        let mut out = vec![ext.zero(); rel];
        for (i, c) in self.coeffs.iter().enumerate() {
            let pos = i as i64 * big_q;
            if pos as usize >= rel {
                break;
            }
            out[pos as usize] = ext.frobenius(c, j as i64);
        }
        LaurentSeries {
            place: self.place.clone(),
            val: self.val * big_q,
            coeffs: out,
        }
    }

    /// ord_pi(self - other): the exact order of a visible difference, or the
    /// proven lower bound when none is visible.
    pub fn diff_valuation(&self, other: &LaurentSeries) -> DiffBound {
        let d = self.sub(other);
        match d.valuation() {
            Some(v) => DiffBound::Exact(v),
            None => DiffBound::AtLeast(d.bound()),
        }
    }

    /// Rendering format: `pi^v * (c0 + c1*pi + ...)` with an explicit
    /// O(pi^bound) tail.
    pub fn to_text(&self) -> String {
        if self.coeffs.is_empty() {
            return format!("O(pi^{})", self.val);
        }
        let ext = self.place.ext();
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let cs = ext.fmt_elem(c);
            let t = match i {
                0 => cs,
                1 if cs == "1" => "pi".into(),
                1 => format!("{cs}*pi"),
                _ if cs == "1" => format!("pi^{i}"),
                _ => format!("{cs}*pi^{i}"),
            };
            terms.push(t);
        }
        format!(
            "pi^{} * ({} + O(pi^{}))",
            self.val,
            terms.join(" + "),
            self.coeffs.len()
        )
    }

    /// Bit-exact JSON form: {"val": v, "prec": N, "coeffs": [[F_p digits]...]}.
    pub fn to_json(&self) -> serde_json::Value {
        let coeffs: Vec<serde_json::Value> = self
            .coeffs
            .iter()
            .map(|c| serde_json::json!(c.coeffs()))
            .collect();
        serde_json::json!({
            "val": self.val,
            "prec": self.coeffs.len(),
            "coeffs": coeffs,
        })
    }

    pub fn from_json(place: Arc<Place>, value: &serde_json::Value) -> Result<LaurentSeries> {
        let val = value["val"]
            .as_i64()
            .ok_or_else(|| Error::Parse("series JSON: missing val".into()))?;
        let coeffs = value["coeffs"]
            .as_array()
            .ok_or_else(|| Error::Parse("series JSON: missing coeffs".into()))?;
        let ext = place.ext().clone();
        let mut window = Vec::with_capacity(coeffs.len());
        for c in coeffs {
            let digits: Vec<u64> = c
                .as_array()
                .ok_or_else(|| Error::Parse("series JSON: coefficient not an array".into()))?
                .iter()
                .map(|d| d.as_u64().ok_or_else(|| Error::Parse("bad digit".into())))
                .collect::<Result<_>>()?;
            window.push(ext.from_coeffs(&digits)?);
        }
        Ok(LaurentSeries::from_window(place, val, window))
    }
}

/// theta = eps + pi as a series.
pub fn theta_series(place: &Arc<Place>, prec: usize) -> LaurentSeries {
    let ext = place.ext();
    let mut window = vec![ext.zero(); prec.max(2)];
    window[0] = place.eps().clone();
    window[1] = ext.one();
    LaurentSeries::from_window(place.clone(), 0, window)
}

/// theta - eps^{q^k} = (eps - eps^{q^k}) + pi. A uniformizer times a unit
/// when d | k (exactly pi), a unit otherwise.
pub fn theta_minus_eps_conj(place: &Arc<Place>, k: i64, prec: usize) -> LaurentSeries {
    let ext = place.ext();
    let c = ext.sub(place.eps(), &place.eps_conj(k));
    if c.is_zero() {
        let mut window = vec![ext.zero(); prec];
        window[0] = ext.one();
        LaurentSeries {
            place: place.clone(),
            val: 1,
            coeffs: window,
        }
    } else {
        let mut window = vec![ext.zero(); prec];
        window[0] = c;
        window[1] = ext.one();
        LaurentSeries {
            place: place.clone(),
            val: 0,
            coeffs: window,
        }
    }
}

/// theta^{q^n} - theta = (eps^{q^n} - eps) - pi + pi^{q^n}, written directly
/// in the uniformizer so the computation stabilizes once q^n exceeds the
/// window.
pub fn theta_qn_minus_theta(place: &Arc<Place>, n: u32, prec: usize) -> LaurentSeries {
    let ext = place.ext();
    let c = ext.sub(&place.eps_conj(n as i64), place.eps());
    let qn = (place.q() as u128).pow(n);
    if c.is_zero() {
        // val 1: -1 + pi^{q^n - 1}
        let mut window = vec![ext.zero(); prec];
        window[0] = ext.from_int(-1);
        if qn >= 1 && ((qn - 1) as usize) < prec {
            window[(qn - 1) as usize] = ext.one();
        }
        LaurentSeries {
            place: place.clone(),
            val: 1,
            coeffs: window,
        }
    } else {
        let mut window = vec![ext.zero(); prec];
        window[0] = c;
        window[1] = ext.from_int(-1);
        if (qn as usize) < prec {
            let idx = qn as usize;
            window[idx] = ext.add(&window[idx], &ext.one());
        }
        LaurentSeries {
            place: place.clone(),
            val: 0,
            coeffs: window,
        }
    }
}

/// The period-product factor 1 - pi^{q^k} / (theta - eps^{q^k}), for k >= 1.
/// It deviates from 1 at order q^k (d not dividing k) or q^k - 1 (d | k), so
/// it is exactly 1 to the window once that order reaches prec.
pub fn omega_factor(place: &Arc<Place>, k: u32, prec: usize) -> LaurentSeries {
    assert!(k >= 1, "omega factor needs k >= 1");
    let qk = (place.q() as u128).pow(k);
    let dev = if k % place.d() == 0 { qk - 1 } else { qk };
    if dev >= prec as u128 {
        return LaurentSeries::one(place.clone(), prec);
    }
    let one = LaurentSeries::one(place.clone(), prec);
    let pi_pow = LaurentSeries::monomial(place.clone(), place.ext().one(), qk as i64, prec);
    let denom = theta_minus_eps_conj(place, k as i64, prec);
    one.sub(&pi_pow.mul(&denom.inv().expect("theta - eps^{q^k} is nonzero")))
}

/// Ring embedding A -> k_v at the requested precision: theta maps to
/// eps + pi. Internally evaluated with a widened window so the returned
/// series keeps `prec` known coefficients past its valuation.
pub fn embed(place: &Arc<Place>, a: &Poly, prec: usize) -> LaurentSeries {
    let deg = match a.deg() {
        None => return LaurentSeries::zero(place.clone(), prec as i64),
        Some(d) => d,
    };
    let wide = prec + deg + 1;
    let theta = theta_series(place, wide);
    let coeffs = place.embed_poly_coeffs(a);
    let mut acc = LaurentSeries::constant(place.clone(), Some(coeffs[deg].clone()), wide);
    for i in (0..deg).rev() {
        acc = acc.mul(&theta).add(&LaurentSeries::constant(
            place.clone(),
            Some(coeffs[i].clone()),
            wide,
        ));
    }
    acc.truncate(prec)
}
