//! Specialized period products: the 1-unit infinite products attached to a
//! place, the diagonal crystalline-de Rham period matrix, and the isocrystal
//! row coefficient computed purely from period products and algebraic factors.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::place::Place;
use crate::series::{embed, omega_factor, theta_minus_eps_conj, LaurentSeries};

/// Index combinatorics for degree d and rank ell, at row 0 <= s < ell:
/// n_s is minimal with s + n_s*ell >= d, s_1 = s + n_s*ell - d, s_0 is the
/// residue of s + d mod ell, and n_s' = (s + d - s_0)/ell = n_{s_0}.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PeriodIndex {
    pub ell: u32,
    pub d: u32,
    pub s: u32,
    pub n_s: u32,
    pub s1: u32,
    pub s0: u32,
    pub n_s_prime: u32,
}

fn smallest_n(s: u32, ell: u32, d: u32) -> u32 {
    if s >= d {
        0
    } else {
        (d - s).div_ceil(ell)
    }
}

pub fn period_index(ell: u32, d: u32, s: u32) -> Result<PeriodIndex> {
    if ell == 0 || d == 0 {
        return Err(Error::Domain("ell and d must be positive".into()));
    }
    if s >= ell {
        return Err(Error::IndexRange(format!("s = {s} must satisfy 0 <= s < ell = {ell}")));
    }
    let n_s = smallest_n(s, ell, d);
    let s1 = s + n_s * ell - d;
    let s0 = (s + d) % ell;
    let n_s_prime = (s + d - s0) / ell;
    if n_s_prime != smallest_n(s0, ell, d) {
        return Err(Error::InternalInconsistency(format!(
            "n_s' = {n_s_prime} differs from n_{{s_0}} at (ell, d, s) = ({ell}, {d}, {s})"
        )));
    }
    Ok(PeriodIndex {
        ell,
        d,
        s,
        n_s,
        s1,
        s0,
        n_s_prime,
    })
}

/// Omega_{ell,v,s}(v) = prod_{n>=0} (1 - pi^{q^{ell n + s}}/(theta - eps^{q^{ell n + s}})),
/// truncated exactly: the factor at exponent k deviates from 1 at order
/// q^k (d not dividing k) or q^k - 1 (d | k), so the product stops once that
/// deviation reaches prec. Requires s >= 1; s > ell is allowed (recurrence
/// checks shift it).
pub fn omega(place: &Arc<Place>, ell: u32, s: u32, prec: usize) -> LaurentSeries {
    assert!(ell >= 1 && s >= 1, "omega needs ell >= 1 and s >= 1");
    let mut acc = LaurentSeries::one(place.clone(), prec);
    let mut k = s;
    loop {
        let dev = deviation_order(place, k);
        if dev >= prec as u128 {
            return acc;
        }
        acc = acc.mul(&omega_factor(place, k, prec));
        k += ell;
    }
}

fn deviation_order(place: &Arc<Place>, k: u32) -> u128 {
    let qk = (place.q() as u128).saturating_pow(k);
    if k % place.d() == 0 {
        qk - 1
    } else {
        qk
    }
}

/// Phi_{v,s}(v) = prod_{n >= n_s} (1 - pi^{q^{ell n + s}}/(theta - eps^{q^{ell n + s}})).
pub fn phi(place: &Arc<Place>, ell: u32, s: u32, prec: usize) -> Result<LaurentSeries> {
    let pi = period_index(ell, place.d(), s)?;
    let mut acc = LaurentSeries::one(place.clone(), prec);
    let mut k = s + pi.n_s * ell;
    loop {
        let dev = deviation_order(place, k);
        if dev >= prec as u128 {
            return Ok(acc);
        }
        acc = acc.mul(&omega_factor(place, k, prec));
        k += ell;
    }
}

/// The diagonal period matrix: Phi_{v,s}(v) for 0 <= s < ell, together with
/// the companion products Omega_{ell,v,s}(v) for 1 <= s <= ell.
#[derive(Debug, Clone)]
pub struct PeriodMatrix {
    pub ell: u32,
    pub prec: usize,
    pub diag: Vec<LaurentSeries>,
    pub omega: Vec<LaurentSeries>,
}

pub fn period_matrix(place: &Arc<Place>, ell: u32, prec: usize) -> Result<PeriodMatrix> {
    if ell == 0 {
        return Err(Error::Domain("ell must be positive".into()));
    }
    let diag = (0..ell)
        .map(|s| phi(place, ell, s, prec))
        .collect::<Result<Vec<_>>>()?;
    let omegas = (1..=ell).map(|s| omega(place, ell, s, prec)).collect();
    Ok(PeriodMatrix {
        ell,
        prec,
        diag,
        omega: omegas,
    })
}

/// alpha_s: the factor 1 - pi^{q^s}/(theta - eps^{q^s}) for s > 0, and 1/pi
/// for s = 0.
pub fn alpha(place: &Arc<Place>, s: u32, prec: usize) -> LaurentSeries {
    if s == 0 {
        LaurentSeries::monomial(place.clone(), place.ext().one(), -1, prec)
    } else {
        omega_factor(place, s, prec)
    }
}

/// The row coefficient c_s of the Frobenius action in the global de Rham
/// basis, computed purely from period products and algebraic factors:
///   c_s = [prod_{n>=1} f(ell n + s_0) / prod_{n>=1} f(ell n + s)]
///         * prod_{n=0}^{n_{s_0}-1} (theta - eps^{q^{s_0 + n ell}})
///         * alpha_{s_0} / alpha_s,
/// where f(k) is the standard 1-unit factor.
pub fn rho_row_period(place: &Arc<Place>, ell: u32, s: u32, prec: usize) -> Result<LaurentSeries> {
    let pi = period_index(ell, place.d(), s)?;
    let num = omega(place, ell, pi.s0 + ell, prec);
    let den = omega(place, ell, s + ell, prec);
    let mut conj = LaurentSeries::one(place.clone(), prec);
    for n in 0..pi.n_s_prime {
        conj = conj.mul(&theta_minus_eps_conj(place, (pi.s0 + n * ell) as i64, prec));
    }
    Ok(num
        .mul(&den.inv()?)
        .mul(&conj)
        .mul(&alpha(place, pi.s0, prec))
        .mul(&alpha(place, s, prec).inv()?))
}

/// Utility for identity checks: embed of v as a series.
pub fn v_series(place: &Arc<Place>, prec: usize) -> LaurentSeries {
    embed(place, place.v(), prec)
}
