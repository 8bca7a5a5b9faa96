//! The two presentations of `Z x Z` with simple-homotopy-equivalent standard
//! complexes that are not Q*-equivalent, and the data that goes with them.
//!
//! ```text
//! P = < x, y | [x,y], 1 >
//! Q = < x, y | [x,[x,y^-1]]^2 y [y^-1,x] y^-1,  [x,[[y^-1,x],x]] >
//! ```

use crate::certificates::{Certificate, CertificateError, Congruence};
use crate::presentations::Presentation;
use crate::words::{parse_word, Word};

pub const Q_RELATOR_1: &str = "[x,[x,y^-1]]^2 y [y^-1,x] y^-1";
pub const Q_RELATOR_2: &str = "[x,[[y^-1,x],x]]";

/// Certificate that `[x,y]` lies in the normal closure of Q's relators, as
/// shipped in `data/cert_ene.txt`.
pub const CERT_ENE: &str = include_str!("../data/cert_ene.txt");

/// `P = <x, y | [x,y], 1>`.
pub fn trivial_side() -> Presentation {
    Presentation::rank2(&["[x,y]", "1"]).expect("valid")
}

/// `Q`, whose `Λ` is the first column of Evans' matrix.
pub fn evans_side() -> Presentation {
    Presentation::rank2(&[Q_RELATOR_1, Q_RELATOR_2]).expect("valid")
}

pub fn shipped_cert_ene() -> Result<Certificate, CertificateError> {
    CERT_ENE.parse()
}

fn w(s: &str) -> Word {
    parse_word(s).expect("valid word")
}

/// Derives the normal-closure certificate for `[x,y]` over `Q` by chaining
/// congruences. With `d = [x,y^-1]` and `e = [x,d]`:
///
/// 1. `r2` is a conjugate of `[e,x]^±1`, so `e` commutes with `x`;
/// 2. `r1 = e^2 y d^-1 y^-1`, so `d ≡ y^-1 e^2 y`;
/// 3. `e = x d x^-1 d^-1 ≡ x y^-1 e^2 y x^-1 d^-1 = d y^-1 (x e^2 x^-1) y d^-2`
///    `≡ d (y^-1 e^2 y) d^-2 ≡ d d d^-2 = 1`;
/// 4. hence `d ≡ y^-1 e^2 y ≡ 1`, and `[x,y] = y d^-1 y^-1 ≡ 1`.
pub fn derive_cert_ene() -> Result<Congruence, CertificateError> {
    let q = evans_side();
    let one = Word::identity();
    let x = w("x");
    let d = w("[x,y^-1]");
    let e = x.commutator(&d);

    // 1. e x ≡ x e, then x e x^-1 ≡ e and x e^2 x^-1 ≡ e^2
    let ex_comm = Congruence::conjugate_of_relator(&q, &e.commutator(&x)).ok_or_else(|| {
        CertificateError::Mismatch(e.commutator(&x).to_string(), "conjugate of a relator".into())
    })?;
    let commute = ex_comm.wrap(&one, &x.mul(&e)); // e x ≡ x e
    let xex = commute.symm().wrap(&one, &x.inverse()); // x e x^-1 ≡ e
    let xe2x = xex
        .wrap(&one, &x.mul(&e).mul(&x.inverse()))
        .then(xex.wrap(&e, &one))?; // x e^2 x^-1 ≡ e^2

    // 2. y^-1 e^2 y ≡ d
    let y = w("y");
    let yi = y.inverse();
    let d_rel = Congruence::relator(&q, 1)?.wrap(&yi, &y).wrap(&one, &d);

    // 3. e ≡ 1
    let step_a = d_rel.clone().symm().wrap(&x, &x.inverse().mul(&d.inverse()));
    let d2i = d.inverse().mul(&d.inverse());
    let step_b = xe2x.wrap(&d.mul(&yi), &y.mul(&d2i));
    let step_c = d_rel.wrap(&d, &d2i);
    let e_trivial = step_a.then(step_b)?.then(step_c)?;

    // 4. d ≡ 1, then [x,y] ≡ 1
    let d_trivial = d_rel
        .symm()
        .then(e_trivial.wrap(&yi.mul(&e), &y))?
        .then(e_trivial.wrap(&yi, &y))?;
    let yx_trivial = d_trivial.wrap(&y, &yi); // y d y^-1 = [y,x]
    let xy = w("[x,y]");
    Ok(yx_trivial.symm().wrap(&one, &xy))
}
