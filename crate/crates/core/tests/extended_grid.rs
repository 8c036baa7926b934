//! Wider-grid checks than the acceptance run: the omega recurrence and
//! d-fold splitting across q in {2,3,4} and d up to 3, and a prime-power-q
//! pass through the gamma machinery.

use std::sync::Arc;

use carlitz::verify::{
    check_csf, check_gamma0, check_omega_recurrence, check_omega_split, CheckCtx,
    first_irreducible,
};
use carlitz::{FqField, Place};

const PREC: usize = 48;
const SLACK: usize = 8;

fn places(max_d: u32) -> Vec<Arc<Place>> {
    let mut out = Vec::new();
    for (p, e) in [(2u64, 1u32), (3, 1), (2, 2)] {
        let fq = FqField::new(p, e, 1).unwrap();
        for d in 1..=max_d {
            let v = first_irreducible(&fq, d, 6).unwrap();
            out.push(Arc::new(Place::new(&fq, &v).unwrap()));
        }
    }
    out
}

#[test]
fn omega_identities_hold_up_to_degree_three() {
    for place in places(3) {
        let ctx = CheckCtx::new(place.clone(), PREC, SLACK);
        for ell in 1..=4u32 {
            for s in 1..=ell {
                let rec = check_omega_recurrence(&ctx, ell, s).unwrap();
                assert!(rec.pass, "{}", rec.summary_line());
                let split = check_omega_split(&ctx, ell, s).unwrap();
                assert!(split.pass, "{}", split.summary_line());
            }
        }
    }
}

#[test]
fn gamma_and_csf_at_prime_power_q() {
    // q = 4: digits in base 4, residue fields F_16 / F_64
    let fq = FqField::new(2, 2, 1).unwrap();
    for d in 1..=2u32 {
        let v = first_irreducible(&fq, d, 6).unwrap();
        let place = Arc::new(Place::new(&fq, &v).unwrap());
        let ctx = CheckCtx::new(place, PREC, SLACK);
        for r in check_gamma0(&ctx).unwrap() {
            assert!(r.pass, "{}", r.summary_line());
        }
        for ell in 1..=2u32 {
            for s in 0..ell {
                let r = check_csf(&ctx, ell, s, false).unwrap();
                assert!(r.pass, "{}", r.summary_line());
            }
        }
    }
}
