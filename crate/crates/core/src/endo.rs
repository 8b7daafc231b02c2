//! Homomorphisms `N -> End*(Z[q])`.
//!
//! The only concrete family is [`EndoFamily`], `alpha_n(f)(q) = f(q^u(n))^v(n)`.
//! Other families plug in through [`Endomorphisms`]; the law checks below are
//! the obligations any implementation must pass.

use serde::{Deserialize, Serialize};

use crate::arith::MultFn;
use crate::error::Result;
use crate::poly::Poly;

/// A map `n -> alpha_n` into the multiplicative endomorphisms of `Z[q]`
/// that send only zero to zero.
pub trait Endomorphisms {
    fn apply(&self, n: u64, f: &Poly) -> Result<Poly>;
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EndoFamily {
    /// substitution exponent
    pub u: MultFn,
    /// power exponent
    pub v: MultFn,
}

impl EndoFamily {
    pub fn new(u: MultFn, v: MultFn) -> Self {
        EndoFamily { u, v }
    }

    /// `u = epsilon, v = one`: the family behind `f_mn(q) = f_m(q) f_n(q^m)`.
    pub fn ordinary() -> Self {
        Self::new(MultFn::Identity, MultFn::One)
    }

    /// `v = one`: `alpha_n(f)(q) = f(q^u(n))`.
    pub fn twisted(u: MultFn) -> Self {
        Self::new(u, MultFn::One)
    }

    /// The family `alpha o w`, i.e. `n -> alpha_{w(n)}`.
    pub fn compose_with(&self, w: &MultFn) -> Self {
        Self::new(MultFn::compose(&self.u, w), MultFn::compose(&self.v, w))
    }

    pub fn apply(&self, n: u64, f: &Poly) -> Result<Poly> {
        let k = self.u.eval(n)?;
        let e = self.v.eval(n)?;
        let g = if k == 1 { f.clone() } else { f.substitute_power(k)? };
        g.pow(e)
    }
}

impl Endomorphisms for EndoFamily {
    fn apply(&self, n: u64, f: &Poly) -> Result<Poly> {
        EndoFamily::apply(self, n, f)
    }
}

/// `alpha_m(alpha_n(f)) == alpha_mn(f)` for every sample.
pub fn check_homomorphism<A: Endomorphisms + ?Sized>(
    alpha: &A,
    m: u64,
    n: u64,
    samples: &[Poly],
) -> Result<bool> {
    for f in samples {
        let inner = alpha.apply(n, f)?;
        if alpha.apply(m, &inner)? != alpha.apply(m * n, f)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `alpha_n(f g) == alpha_n(f) alpha_n(g)` for every pair of samples.
pub fn check_multiplicative<A: Endomorphisms + ?Sized>(
    alpha: &A,
    n: u64,
    samples: &[Poly],
) -> Result<bool> {
    let images = samples
        .iter()
        .map(|f| alpha.apply(n, f))
        .collect::<Result<Vec<_>>>()?;
    for (i, f) in samples.iter().enumerate() {
        for (j, g) in samples.iter().enumerate().skip(i) {
            let fg = f.checked_mul(g)?;
            if alpha.apply(n, &fg)? != images[i].checked_mul(&images[j])? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `alpha_n(f) == 0` exactly when `f == 0`.
pub fn check_zero_preservation<A: Endomorphisms + ?Sized>(
    alpha: &A,
    n: u64,
    samples: &[Poly],
) -> Result<bool> {
    if !alpha.apply(n, &Poly::zero())?.is_zero() {
        return Ok(false);
    }
    for f in samples {
        if alpha.apply(n, f)?.is_zero() != f.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}
