//! The semidirect product `Z[q] x_alpha N`.

use std::fmt;
use std::sync::Arc;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::endo::EndoFamily;
use crate::error::{Error, Result};
use crate::poly::Poly;

/// An element `(s, t)` of `Z[q] x_alpha N` under
/// `(s1, t1)(s2, t2) = (s1 alpha_t1(s2), t1 t2)`.
#[derive(Debug, Clone)]
pub struct SdElem {
    s: Poly,
    t: u64,
    alpha: Arc<EndoFamily>,
}

impl SdElem {
    pub fn new(s: Poly, t: u64, alpha: Arc<EndoFamily>) -> Result<Self> {
        if t == 0 {
            return Err(Error::NonPositive("t"));
        }
        Ok(SdElem { s, t, alpha })
    }

    /// `(1, 1)`
    pub fn identity(alpha: Arc<EndoFamily>) -> Self {
        SdElem {
            s: Poly::one(),
            t: 1,
            alpha,
        }
    }

    pub fn s(&self) -> &Poly {
        &self.s
    }

    pub fn t(&self) -> u64 {
        self.t
    }

    pub fn alpha(&self) -> &Arc<EndoFamily> {
        &self.alpha
    }

    pub fn into_parts(self) -> (Poly, u64) {
        (self.s, self.t)
    }

    fn same_product(&self, other: &SdElem) -> bool {
        Arc::ptr_eq(&self.alpha, &other.alpha) || *self.alpha == *other.alpha
    }

    pub fn mul(&self, other: &SdElem) -> Result<SdElem> {
        if !self.same_product(other) {
            return Err(Error::MismatchedAlpha);
        }
        let twisted = self.alpha.apply(self.t, &other.s)?;
        Ok(SdElem {
            s: self.s.checked_mul(&twisted)?,
            t: self.t.checked_mul(other.t).ok_or(Error::Overflow("t1 t2"))?,
            alpha: Arc::clone(&self.alpha),
        })
    }

    /// `x x ... x` with `k` factors, multiplied left to right.
    pub fn pow(&self, k: u64) -> Result<SdElem> {
        if k == 0 {
            return Err(Error::NonPositive("k"));
        }
        let mut acc = self.clone();
        for _ in 1..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }
}

/// Equality of both coordinates within the same semidirect product.
impl PartialEq for SdElem {
    fn eq(&self, other: &Self) -> bool {
        self.same_product(other) && self.s == other.s && self.t == other.t
    }
}

impl Eq for SdElem {}

impl fmt::Display for SdElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.s, self.t)
    }
}

impl Serialize for SdElem {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("SdElem", 2)?;
        st.serialize_field("s", &self.s)?;
        st.serialize_field("t", &self.t.to_string())?;
        st.end()
    }
}
