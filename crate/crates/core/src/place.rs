//! Finite places of F_q(theta): a monic irreducible v, its residue field
//! F_{q^d} realized as a concrete working field, and the chosen root eps of v
//! (the Teichmueller image of theta mod v) together with its Frobenius orbit.

use crate::error::{Error, Result};
use crate::field::{FieldElem, FqField};
use crate::poly::{is_irreducible, Poly};

#[derive(Debug, Clone)]
pub struct Place {
    base: FqField,
    ext: FqField,
    v: Poly,
    d: u32,
    base_root: FieldElem,
    eps: FieldElem,
    conjugates: Vec<FieldElem>,
}

impl Place {
    /// Builds the place attached to a monic irreducible v over F_q.
    ///
    /// eps is the lexicographically smallest root of v in F_{q^d}; the
    /// construction verifies prod_j (X - eps^{q^j}) = v exactly and fails
    /// otherwise.
    pub fn new(base: &FqField, v: &Poly) -> Result<Place> {
        if base.m() != 1 {
            return Err(Error::PlaceConstruction(
                "the coefficient context must be F_q itself (m = 1)".into(),
            ));
        }
        let d = match v.deg() {
            None | Some(0) => {
                return Err(Error::PlaceConstruction(
                    "v must be non-constant".into(),
                ))
            }
            Some(d) => d as u32,
        };
        if !v.is_monic(base) {
            return Err(Error::PlaceConstruction("v must be monic".into()));
        }
        if !is_irreducible(base, v)? {
            return Err(Error::PlaceConstruction(format!(
                "v = {} is reducible over F_{}",
                v.display(base),
                base.q()
            )));
        }

        let (ext, base_root) = if d == 1 {
            (base.clone(), base.gen())
        } else {
            let ext = FqField::new(base.p(), base.e(), d)?;
            let modulus: Vec<u64> = base.modulus().to_vec();
            let root = ext
                .elements()
                .find(|z| ext.eval_fp_poly(&modulus, z).is_zero())
                .ok_or_else(|| {
                    Error::PlaceConstruction("no embedding of F_q into F_{q^d} found".into())
                })?;
            (ext, root)
        };

        let embed = |a: &FieldElem| -> FieldElem {
            let mut acc = ext.zero();
            for &c in a.coeffs().iter().rev() {
                acc = ext.mul(&acc, &base_root);
                acc = ext.add(&acc, &ext.from_int(c as i64));
            }
            acc
        };

        let v_ext: Vec<FieldElem> = v.coeffs().iter().map(&embed).collect();
        let v_ext_poly = Poly::from_coeffs(v_ext);

        let mut roots: Vec<FieldElem> = ext
            .elements()
            .filter(|z| v_ext_poly.eval(z, &ext).is_zero())
            .collect();
        roots.sort();
        if roots.len() != d as usize {
            return Err(Error::PlaceConstruction(format!(
                "expected {} roots of v in F_{{q^{}}}, found {}",
                d,
                d,
                roots.len()
            )));
        }
        let eps = roots[0].clone();
        let conjugates: Vec<FieldElem> =
            (0..d).map(|j| ext.frobenius(&eps, j as i64)).collect();
        let mut conj_sorted = conjugates.clone();
        conj_sorted.sort();
        if conj_sorted != roots {
            return Err(Error::PlaceConstruction(
                "the Frobenius orbit of eps does not exhaust the roots of v".into(),
            ));
        }

        // prod_j (X - eps^{q^j}) must reproduce v coefficient by coefficient
        let mut prod = Poly::one(&ext);
        for c in &conjugates {
            let lin = Poly::from_coeffs(vec![ext.neg(c), ext.one()]);
            prod = prod.mul(&lin, &ext);
        }
        if prod != v_ext_poly {
            return Err(Error::PlaceConstruction(
                "product over the conjugate orbit does not equal v".into(),
            ));
        }

        Ok(Place {
            base: base.clone(),
            ext,
            v: v.clone(),
            d,
            base_root,
            eps,
            conjugates,
        })
    }

    pub fn base(&self) -> &FqField {
        &self.base
    }

    /// The residue field F_{q^d}; all Laurent-series coefficients live here.
    pub fn ext(&self) -> &FqField {
        &self.ext
    }

    pub fn v(&self) -> &Poly {
        &self.v
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn q(&self) -> u64 {
        self.base.q()
    }

    pub fn eps(&self) -> &FieldElem {
        &self.eps
    }

    /// eps^{q^k}, with k reduced into the orbit.
    pub fn eps_conj(&self, k: i64) -> FieldElem {
        self.conjugates[k.rem_euclid(self.d as i64) as usize].clone()
    }

    pub fn conjugates(&self) -> &[FieldElem] {
        &self.conjugates
    }

    /// The embedding F_q -> F_{q^d} fixed at construction.
    pub fn embed_elem(&self, a: &FieldElem) -> FieldElem {
        let mut acc = self.ext.zero();
        for &c in a.coeffs().iter().rev() {
            acc = self.ext.mul(&acc, &self.base_root);
            acc = self.ext.add(&acc, &self.ext.from_int(c as i64));
        }
        acc
    }

    /// Coefficients of a in the residue field.
    pub fn embed_poly_coeffs(&self, a: &Poly) -> Vec<FieldElem> {
        a.coeffs().iter().map(|c| self.embed_elem(c)).collect()
    }

    /// One-line description used by the CLI so printed elements are
    /// self-describing.
    pub fn describe(&self) -> String {
        format!(
            "q = {}^{} = {}, v = {}, d = {}, residue field F_p[x]/({}), eps = {}",
            self.base.p(),
            self.base.e(),
            self.base.q(),
            self.v.display(&self.base),
            self.d,
            fmt_fp_poly(self.ext.modulus()),
            self.ext.fmt_elem(&self.eps),
        )
    }
}

fn fmt_fp_poly(coeffs: &[u64]) -> String {
    let mut terms = Vec::new();
    for (i, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let t = match i {
            0 => c.to_string(),
            1 if c == 1 => "x".into(),
            1 => format!("{c}*x"),
            _ if c == 1 => format!("x^{i}"),
            _ => format!("{c}*x^{i}"),
        };
        terms.push(t);
    }
    terms.join(" + ")
}
