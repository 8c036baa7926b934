//! Carlitz factorials, the deleted products D_{i,v}, and the v-adic
//! arithmetic gamma function.

use std::cell::RefCell;
use std::sync::Arc;

use num::rational::Ratio;

use crate::digits::QDigits;
use crate::error::{Error, Result};
use crate::field::FqField;
use crate::place::Place;
use crate::poly::Poly;
use crate::series::{embed, theta_qn_minus_theta, DiffBound, LaurentSeries};

pub type Rational = Ratio<i64>;

/// Guard on exact polynomial sizes: degrees past this advise the series route.
const MAX_EXACT_DEGREE: u128 = 1 << 21;

/// D_i = prod_{j<i} (theta^{q^i} - theta^{q^j}), computed by the recursion
/// D_i = (theta^{q^i} - theta) * D_{i-1}^q; equals the product of all monic
/// polynomials of degree i.
pub fn carlitz_d(fq: &FqField, i: u32) -> Result<Poly> {
    let q = fq.q() as u128;
    let deg: u128 = i as u128 * q.checked_pow(i).unwrap_or(u128::MAX);
    if deg > MAX_EXACT_DEGREE {
        return Err(Error::DegreeCap(format!(
            "D_{i} has degree {deg}; use the v-adic series variant"
        )));
    }
    let mut d = Poly::one(fq);
    for n in 1..=i {
        let qn = (fq.q() as u128).pow(n) as usize;
        // theta^{q^n} - theta
        let mut coeffs = vec![fq.zero(); qn + 1];
        coeffs[1] = fq.from_int(-1);
        coeffs[qn] = fq.one();
        let tq = Poly::from_coeffs(coeffs);
        let mut dq = Poly::one(fq);
        for _ in 0..fq.q() {
            dq = dq.mul(&d, fq);
        }
        d = tq.mul(&dq, fq);
    }
    Ok(d)
}

/// Carlitz factorial: prod D_i^{n_i} over the base-q digits of n.
pub fn carlitz_factorial(fq: &FqField, n: u64) -> Result<Poly> {
    let q = fq.q();
    let mut digits = Vec::new();
    let mut rest = n;
    while rest > 0 {
        digits.push((rest % q) as u32);
        rest /= q;
    }
    let mut acc = Poly::one(fq);
    for (i, &ni) in digits.iter().enumerate() {
        if ni == 0 {
            continue;
        }
        let di = carlitz_d(fq, i as u32)?;
        for _ in 0..ni {
            acc = acc.mul(&di, fq);
        }
    }
    Ok(acc)
}

/// Sinnott's closed form: ord_v(Gamma_ari(n+1)) = sum_{e >= 1} floor(n / q^{e d}).
pub fn v_ord_factorial(n: u64, place: &Place) -> u64 {
    let step = (place.q() as u128).pow(place.d());
    let mut ord = 0u64;
    let mut denom = step;
    while denom <= n as u128 {
        ord += (n as u128 / denom) as u64;
        match denom.checked_mul(step) {
            Some(next) => denom = next,
            None => break,
        }
    }
    ord
}

/// A truncated gamma value together with how it was truncated.
#[derive(Debug, Clone)]
pub struct GammaValue {
    pub value: LaurentSeries,
    pub truncation_index: u32,
    pub stable: bool,
}

/// Evaluation context for one (place, precision) pair; memoizes the series
/// D_{i,v}. Thread-confined by construction (interior cache).
pub struct GammaCtx {
    place: Arc<Place>,
    prec: usize,
    dv: RefCell<Vec<LaurentSeries>>,
}

impl GammaCtx {
    pub fn new(place: Arc<Place>, prec: usize) -> Self {
        GammaCtx {
            place,
            prec,
            dv: RefCell::new(Vec::new()),
        }
    }

    pub fn place(&self) -> &Arc<Place> {
        &self.place
    }

    pub fn prec(&self) -> usize {
        self.prec
    }

    /// D_{i,v}: the product of monic degree-i polynomials coprime to v,
    /// computed in k_v by the telescoping recursion
    ///   D_{n,v}/D_{n-1,v}^q = (theta^{q^n}-theta)/(theta^{q^{n-d}}-theta)  (n > d)
    ///                       = (theta^{q^n}-theta)/v                        (n = d)
    ///                       = theta^{q^n}-theta                            (0 < n < d),
    /// seeded at D_{0,v} = 1.
    pub fn d_v(&self, i: u32) -> Result<LaurentSeries> {
        {
            let cache = self.dv.borrow();
            if let Some(s) = cache.get(i as usize) {
                return Ok(s.clone());
            }
        }
        let d = self.place.d();
        let prec = self.prec;
        let mut cache = self.dv.borrow_mut();
        if cache.is_empty() {
            cache.push(LaurentSeries::one(self.place.clone(), prec));
        }
        while cache.len() <= i as usize {
            let n = cache.len() as u32;
            let num = theta_qn_minus_theta(&self.place, n, prec);
            let ratio = if n < d {
                num
            } else if n == d {
                num.mul(&embed(&self.place, self.place.v(), prec).inv()?)
            } else {
                num.mul(&theta_qn_minus_theta(&self.place, n - d, prec).inv()?)
            };
            let next = cache.last().unwrap().pow_q(1).mul(&ratio);
            if next.valuation() != Some(0) {
                return Err(Error::InternalInconsistency(format!(
                    "D_{{{n},v}} is not a v-adic unit"
                )));
            }
            cache.push(next);
        }
        Ok(cache[i as usize].clone())
    }

    pub fn neg_d_v(&self, i: u32) -> Result<LaurentSeries> {
        Ok(self.d_v(i)?.neg())
    }

    /// Gamma_{ari,v}(w) for rational w with w - 1 a p-adic integer:
    /// the digit product prod_i (-D_{i,v})^{z_i} with z = w - 1, truncated by
    /// the stopping rule (enough indices, then 2d consecutive factors that
    /// are 1 to precision). The valuation of -D_{i,v} - 1 must be
    /// nondecreasing over the tail i >= d, otherwise evaluation aborts.
    pub fn gamma(&self, w: Rational) -> Result<GammaValue> {
        let z = w - Rational::from_integer(1);
        let q = self.place.q();
        let digits = QDigits::expand(*z.numer(), *z.denom(), q)?;
        let prec = self.prec as i64;
        if digits.is_zero() {
            return Ok(GammaValue {
                value: LaurentSeries::one(self.place.clone(), self.prec),
                truncation_index: 0,
                stable: true,
            });
        }
        let d = self.place.d();
        // smallest k with q^k >= prec, plus d
        let min_index = {
            let mut k = 0u32;
            let mut pow = 1u128;
            while pow < self.prec as u128 {
                pow *= q as u128;
                k += 1;
            }
            k + d
        };
        let run_needed = 2 * d;
        let hard_cap = min_index + run_needed + 64;

        let one = LaurentSeries::one(self.place.clone(), self.prec);
        let mut acc = one.clone();
        let mut run = 0u32;
        let mut prev_ord: Option<i64> = None;
        let mut i = 0u32;
        loop {
            let factor = self.neg_d_v(i)?;
            let ord = match factor.diff_valuation(&one) {
                DiffBound::Exact(v) => v,
                DiffBound::AtLeast(b) => b,
            };
            if i >= d {
                if let Some(prev) = prev_ord {
                    if ord < prev {
                        return Err(Error::Convergence(format!(
                            "ord_pi(-D_{{i,v}} - 1) dropped from {prev} to {ord} at i = {i}"
                        )));
                    }
                }
                prev_ord = Some(ord);
            }
            let zi = digits.digit(i as usize);
            if zi > 0 {
                acc = acc.mul(&factor.pow(zi as i64)?);
            }
            if ord >= prec {
                run += 1;
            } else {
                run = 0;
            }
            if i + 1 >= min_index && run >= run_needed {
                break;
            }
            if i > hard_cap {
                return Err(Error::Convergence(format!(
                    "gamma product did not stabilize by index {i}"
                )));
            }
            i += 1;
        }
        if acc.valuation() != Some(0) {
            return Err(Error::InternalInconsistency(
                "gamma value is not a v-adic unit".into(),
            ));
        }
        Ok(GammaValue {
            value: acc,
            truncation_index: i,
            stable: true,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::enumerate_monic;

    fn f2() -> FqField {
        FqField::new(2, 1, 1).unwrap()
    }

    fn place_q2_theta() -> Arc<Place> {
        let fq = f2();
        Arc::new(Place::new(&fq, &Poly::theta(&fq)).unwrap())
    }

    fn place_q2_quad() -> Arc<Place> {
        let fq = f2();
        Arc::new(Place::new(&fq, &Poly::from_ints(&fq, &[1, 1, 1])).unwrap())
    }

    fn place_q3_quad() -> Arc<Place> {
        let fq = FqField::new(3, 1, 1).unwrap();
        Arc::new(Place::new(&fq, &Poly::from_ints(&fq, &[1, 0, 1])).unwrap())
    }

    #[test]
    fn carlitz_d_small() {
        let fq = f2();
        assert_eq!(carlitz_d(&fq, 0).unwrap(), Poly::one(&fq));
        // D_1 = theta^2 + theta (the product theta*(theta+1))
        assert_eq!(carlitz_d(&fq, 1).unwrap(), Poly::from_ints(&fq, &[0, 1, 1]));
        // D_2 = (theta^4+theta)(theta^4+theta^2): brute-force the 4 monic quadratics
        let a = Poly::from_ints(&fq, &[0, 1, 0, 0, 1]);
        let b = Poly::from_ints(&fq, &[0, 0, 1, 0, 1]);
        assert_eq!(carlitz_d(&fq, 2).unwrap(), a.mul(&b, &fq));
    }

    #[test]
    fn carlitz_d_equals_monic_product() {
        // up to the full enumeration cap for q = 2, spot degrees for q = 3
        for (p, max_i) in [(2u64, 6u32), (3, 3)] {
            let fq = FqField::new(p, 1, 1).unwrap();
            for i in 0..=max_i {
                let brute = enumerate_monic(&fq, i as usize, 6)
                    .unwrap()
                    .iter()
                    .fold(Poly::one(&fq), |acc, f| acc.mul(f, &fq));
                assert_eq!(carlitz_d(&fq, i).unwrap(), brute, "q={p} i={i}");
            }
        }
    }

    #[test]
    fn factorial_examples() {
        let fq = f2();
        assert_eq!(carlitz_factorial(&fq, 0).unwrap(), Poly::one(&fq));
        assert_eq!(carlitz_factorial(&fq, 1).unwrap(), Poly::one(&fq));
        // n = 3 has base-2 digits (1,1): D_0 * D_1 = theta^2 + theta
        assert_eq!(
            carlitz_factorial(&fq, 3).unwrap(),
            Poly::from_ints(&fq, &[0, 1, 1])
        );
    }

    #[test]
    fn sinnott_valuation_examples() {
        let fq = f2();
        let place = Place::new(&fq, &Poly::theta(&fq)).unwrap();
        // n < q^d
        assert_eq!(v_ord_factorial(1, &place), 0);
        // q=2, d=1, n=5: floor(5/2)+floor(5/4) = 3, matching trial division
        assert_eq!(v_ord_factorial(5, &place), 3);
        let fact = carlitz_factorial(&fq, 5).unwrap();
        assert_eq!(fact.ord_div(place.v(), &fq).unwrap(), 3);

        let f3 = FqField::new(3, 1, 1).unwrap();
        let place9 = Place::new(&f3, &Poly::from_ints(&f3, &[1, 0, 1])).unwrap();
        assert_eq!(v_ord_factorial(10, &place9), 1);
        let fact = carlitz_factorial(&f3, 10).unwrap();
        assert_eq!(fact.ord_div(place9.v(), &f3).unwrap(), 1);
    }

    #[test]
    fn d_v_small_cases() {
        let place = place_q2_theta();
        let ctx = GammaCtx::new(place.clone(), 32);
        let one = LaurentSeries::one(place.clone(), 32);
        assert!(ctx.d_v(0).unwrap().diff_valuation(&one).holds_to(32));
        // q=2, v=theta: D_{1,v} = theta + 1 = 1 + pi
        let d1 = ctx.d_v(1).unwrap();
        let expect = embed(&place, &Poly::from_ints(place.base(), &[1, 1]), 32);
        assert!(d1.diff_valuation(&expect).holds_to(31));
    }

    #[test]
    fn d_v_below_d_is_plain_d() {
        let place = place_q2_quad();
        let ctx = GammaCtx::new(place.clone(), 48);
        let d1 = carlitz_d(place.base(), 1).unwrap();
        let expect = embed(&place, &d1, 48);
        assert!(ctx.d_v(1).unwrap().diff_valuation(&expect).holds_to(47));
    }

    #[test]
    fn d_v_matches_coprime_brute_product() {
        for place in [place_q2_theta(), place_q2_quad(), place_q3_quad()] {
            let fq = place.base().clone();
            let ctx = GammaCtx::new(place.clone(), 64);
            for i in 0..=3usize {
                let brute = enumerate_monic(&fq, i, 6)
                    .unwrap()
                    .into_iter()
                    .filter(|f| f.rem(place.v(), &fq).map(|r| !r.is_zero()).unwrap_or(false))
                    .fold(Poly::one(&fq), |acc, f| acc.mul(&f, &fq));
                let expect = embed(&place, &brute, 64);
                let got = ctx.d_v(i as u32).unwrap();
                let db = got.diff_valuation(&expect);
                assert!(db.holds_to(60), "i={i}, diff {db:?}");
            }
        }
    }

    #[test]
    fn gamma_at_one_is_one() {
        let ctx = GammaCtx::new(place_q2_theta(), 64);
        let g = ctx.gamma(Rational::from_integer(1)).unwrap();
        let one = LaurentSeries::one(ctx.place().clone(), 64);
        assert!(g.value.diff_valuation(&one).holds_to(64));
        assert!(g.stable);
    }

    #[test]
    fn gamma_at_zero_is_sign() {
        // Gamma(0) = (-1)^{d-1}
        for (place, d) in [
            (place_q2_theta(), 1u32),
            (place_q2_quad(), 2),
            (place_q3_quad(), 2),
        ] {
            let ctx = GammaCtx::new(place.clone(), 96);
            let g = ctx.gamma(Rational::from_integer(0)).unwrap();
            let sign = if (d - 1) % 2 == 0 { 1 } else { -1 };
            let expect =
                LaurentSeries::constant(place.clone(), Some(place.ext().from_int(sign)), 96);
            let db = g.value.diff_valuation(&expect);
            assert!(db.holds_to(88), "d={d}: {db:?}");
        }
    }

    #[test]
    fn gamma_digit_pattern_matches_partial_product() {
        // Gamma(1 - q^s/(q^l - 1)) = prod_n (-D_{l n + s, v}) truncated
        let place = place_q3_quad();
        let ctx = GammaCtx::new(place.clone(), 64);
        let q = place.q() as i64;
        let (l, s) = (3u32, 1u32);
        let w = Rational::new(-(q.pow(s)), q.pow(l) - 1) + Rational::from_integer(1);
        let g = ctx.gamma(w).unwrap();
        let mut partial = LaurentSeries::one(place.clone(), 64);
        let mut k = s;
        while k <= g.truncation_index {
            partial = partial.mul(&ctx.neg_d_v(k).unwrap());
            k += l;
        }
        assert!(g.value.diff_valuation(&partial).holds_to(60));
    }

    #[test]
    fn gamma_root_convention() {
        // Gamma(1 - 1/(q-1))^{q-1} = Gamma(0), q = 3
        let place = place_q3_quad();
        let ctx = GammaCtx::new(place.clone(), 96);
        let g = ctx.gamma(Rational::new(1, 2)).unwrap(); // 1 - 1/2
        let lhs = g.value.pow(2).unwrap();
        let g0 = ctx.gamma(Rational::from_integer(0)).unwrap();
        assert!(lhs.diff_valuation(&g0.value).holds_to(88));
    }

    #[test]
    fn gamma_rejects_non_p_adic() {
        let ctx = GammaCtx::new(place_q2_theta(), 32);
        assert!(matches!(
            ctx.gamma(Rational::new(1, 2)),
            Err(Error::NotPAdicInteger { .. })
        ));
    }
}
