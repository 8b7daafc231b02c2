//! Sparse univariate polynomials over the integers.
//!
//! A [`Poly`] stores its nonzero terms in strictly increasing exponent order,
//! so the zero polynomial is the empty term list and structural equality is
//! polynomial equality. Operations that can grow the degree multiplicatively
//! (`pow`, `substitute_power`, `checked_mul`) are guarded by a process-wide
//! degree cap, see [`set_degree_cap`].

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith;
use crate::error::{Error, Result};

pub const DEFAULT_DEGREE_CAP: u64 = 1_000_000;

static DEGREE_CAP: AtomicU64 = AtomicU64::new(DEFAULT_DEGREE_CAP);

/// Current degree cap applied by the checked operations.
pub fn degree_cap() -> u64 {
    DEGREE_CAP.load(Ordering::Relaxed)
}

/// Replace the global degree cap, returning the previous value.
pub fn set_degree_cap(cap: u64) -> u64 {
    DEGREE_CAP.swap(cap, Ordering::Relaxed)
}

fn check_degree(degree: u64) -> Result<()> {
    let cap = degree_cap();
    if degree > cap {
        Err(Error::DegreeCap { degree, cap })
    } else {
        Ok(())
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: Vec<(u64, BigInt)>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant<C: Into<BigInt>>(c: C) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * q^exp`.
    pub fn monomial<C: Into<BigInt>>(c: C, exp: u64) -> Self {
        let c = c.into();
        if c.is_zero() {
            Self::zero()
        } else {
            Poly {
                terms: vec![(exp, c)],
            }
        }
    }

    /// The variable `q`.
    pub fn q() -> Self {
        Self::monomial(1, 1)
    }

    /// Build from arbitrary `(exponent, coefficient)` pairs; repeated
    /// exponents are summed and zero coefficients dropped.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (u64, C)>,
        C: Into<BigInt>,
    {
        let mut acc: BTreeMap<u64, BigInt> = BTreeMap::new();
        for (e, c) in terms {
            *acc.entry(e).or_default() += c.into();
        }
        Poly {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    /// Dense constructor: `coeffs[i]` is the coefficient of `q^i`.
    pub fn from_coeffs(coeffs: &[i64]) -> Self {
        Self::from_terms(coeffs.iter().enumerate().map(|(i, &c)| (i as u64, c)))
    }

    fn from_sorted_unchecked(terms: Vec<(u64, BigInt)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        Poly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u64> {
        self.terms.last().map(|(e, _)| *e)
    }

    /// Smallest exponent carrying a nonzero coefficient.
    pub fn low_degree(&self) -> Option<u64> {
        self.terms.first().map(|(e, _)| *e)
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (u64, &BigInt)> + ExactSizeIterator {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, exp: u64) -> BigInt {
        match self.terms.binary_search_by_key(&exp, |(e, _)| *e) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => BigInt::zero(),
        }
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.terms.last().map(|(_, c)| c)
    }

    /// Non-negative gcd of all coefficients; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        self.terms
            .iter()
            .fold(BigInt::zero(), |g, (_, c)| g.gcd(c))
    }

    /// Divide every coefficient by `d`, which must divide each of them.
    pub fn div_scalar_exact(&self, d: &BigInt) -> Option<Poly> {
        if d.is_zero() {
            return None;
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for (e, c) in &self.terms {
            let (quot, rem) = c.div_rem(d);
            if !rem.is_zero() {
                return None;
            }
            terms.push((*e, quot));
        }
        Some(Poly::from_sorted_unchecked(terms))
    }

    pub fn scale(&self, k: &BigInt) -> Poly {
        if k.is_zero() {
            return Poly::zero();
        }
        Poly::from_sorted_unchecked(self.terms.iter().map(|(e, c)| (*e, c * k)).collect())
    }

    /// Divide by `q^k`; `None` if some term has exponent below `k`.
    pub fn shift_down(&self, k: u64) -> Option<Poly> {
        if self.low_degree().is_some_and(|lo| lo < k) {
            return None;
        }
        Some(Poly::from_sorted_unchecked(
            self.terms.iter().map(|(e, c)| (e - k, c.clone())).collect(),
        ))
    }

    /// Multiply by `q^k`.
    pub fn shift_up(&self, k: u64) -> Result<Poly> {
        if let Some(d) = self.degree() {
            let d = d.checked_add(k).ok_or(Error::Overflow("polynomial degree"))?;
            check_degree(d)?;
        }
        Ok(Poly::from_sorted_unchecked(
            self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        ))
    }

    /// Product with the degree cap enforced.
    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        if let (Some(a), Some(b)) = (self.degree(), other.degree()) {
            let d = a.checked_add(b).ok_or(Error::Overflow("polynomial degree"))?;
            check_degree(d)?;
        }
        Ok(Poly::from_sorted_unchecked(mul_terms(&self.terms, &other.terms)))
    }

    /// `self^k`, with `f^0 = 1`.
    pub fn pow(&self, k: u64) -> Result<Poly> {
        if k == 0 {
            return Ok(Poly::one());
        }
        if let Some(d) = self.degree() {
            let d = d.checked_mul(k).ok_or(Error::Overflow("polynomial degree"))?;
            check_degree(d)?;
        }
        if self.is_zero() || k == 1 {
            return Ok(self.clone());
        }
        let mut base = self.clone();
        let mut acc = Poly::one();
        let mut k = k;
        loop {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k == 0 {
                break;
            }
            base = &base * &base;
        }
        Ok(acc)
    }

    /// The substitution `q -> q^k`.
    pub fn substitute_power(&self, k: u64) -> Result<Poly> {
        if k == 0 {
            return Err(Error::NonPositive("k"));
        }
        if let Some(d) = self.degree() {
            let d = d.checked_mul(k).ok_or(Error::Overflow("polynomial degree"))?;
            check_degree(d)?;
        }
        Ok(Poly::from_sorted_unchecked(
            self.terms.iter().map(|(e, c)| (e * k, c.clone())).collect(),
        ))
    }

    /// Exact quotient `self / divisor` in `Z[q]`, or `Ok(None)` when the
    /// divisor does not divide `self` over the integers.
    pub fn divide_exact(&self, divisor: &Poly) -> Result<Option<Poly>> {
        let (db, lcb) = match divisor.terms.last() {
            Some((e, c)) => (*e, c),
            None => return Err(Error::DivisionByZero),
        };
        if self.is_zero() {
            return Ok(Some(Poly::zero()));
        }
        // Quotient coefficients over Q are forced one at a time from the top,
        // so the first non-integral one already rules out an integer quotient.
        let mut rem: BTreeMap<u64, BigInt> = self.terms.iter().cloned().collect();
        let mut quot: Vec<(u64, BigInt)> = Vec::new();
        while let Some((&e, c)) = rem.last_key_value() {
            if e < db {
                return Ok(None);
            }
            let (qc, r) = c.div_rem(lcb);
            if !r.is_zero() {
                return Ok(None);
            }
            let shift = e - db;
            for (eb, cb) in &divisor.terms {
                let slot = rem.entry(eb + shift).or_default();
                *slot -= &qc * cb;
                if slot.is_zero() {
                    rem.remove(&(eb + shift));
                }
            }
            quot.push((shift, qc));
        }
        quot.reverse();
        Ok(Some(Poly::from_sorted_unchecked(quot)))
    }

    /// Value at an integer point.
    pub fn evaluate(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        let mut prev = self.degree().unwrap_or(0);
        for (e, c) in self.terms.iter().rev() {
            acc *= num_traits::pow::pow(x.clone(), (prev - e) as usize);
            acc += c;
            prev = *e;
        }
        acc * num_traits::pow::pow(x.clone(), prev as usize)
    }
}

fn small_coeffs(terms: &[(u64, BigInt)]) -> Option<(Vec<i64>, u128)> {
    let mut out = Vec::with_capacity(terms.len());
    let mut max = 0u128;
    for (_, c) in terms {
        let v = c.to_i64()?;
        max = max.max(v.unsigned_abs() as u128);
        out.push(v);
    }
    Some((out, max))
}

fn mul_terms(a: &[(u64, BigInt)], b: &[(u64, BigInt)]) -> Vec<(u64, BigInt)> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let (a, b) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    let lo = a[0].0 + b[0].0;
    let hi = a[a.len() - 1].0 + b[b.len() - 1].0;
    let span = (hi - lo + 1) as usize;
    let pairs = a.len().saturating_mul(b.len());
    let dense = span <= pairs.saturating_mul(4).max(64);

    if dense {
        // Machine-word accumulation when every partial sum provably fits.
        if let (Some((sa, ma)), Some((sb, mb))) = (small_coeffs(a), small_coeffs(b)) {
            let bound = ma
                .checked_mul(mb)
                .and_then(|m| m.checked_mul(a.len() as u128));
            if bound.is_some_and(|m| m < (1u128 << 126)) {
                let (a0, b0) = (a[0].0, b[0].0);
                let mut acc = vec![0i128; span];
                for (i, (ea, _)) in a.iter().enumerate() {
                    let ca = sa[i] as i128;
                    let base = (ea - a0) as usize;
                    for (j, (eb, _)) in b.iter().enumerate() {
                        acc[base + (eb - b0) as usize] += ca * sb[j] as i128;
                    }
                }
                return acc
                    .into_iter()
                    .enumerate()
                    .filter(|(_, c)| *c != 0)
                    .map(|(i, c)| (i as u64 + lo, BigInt::from(c)))
                    .collect();
            }
        }
        let mut acc = vec![BigInt::zero(); span];
        for (ea, ca) in a {
            for (eb, cb) in b {
                acc[(ea + eb - lo) as usize] += ca * cb;
            }
        }
        return acc
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i as u64 + lo, c))
            .collect();
    }

    let mut acc: BTreeMap<u64, BigInt> = BTreeMap::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            *acc.entry(ea + eb).or_default() += ca * cb;
        }
    }
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

fn add_terms(a: &[(u64, BigInt)], b: &[(u64, BigInt)], negate_b: bool) -> Vec<(u64, BigInt)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let fix = |c: &BigInt| if negate_b { -c } else { c.clone() };
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push((b[j].0, fix(&b[j].1)));
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                let c = if negate_b {
                    &a[i].1 - &b[j].1
                } else {
                    &a[i].1 + &b[j].1
                };
                if !c.is_zero() {
                    out.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend(a[i..].iter().cloned());
    out.extend(b[j..].iter().map(|(e, c)| (*e, fix(c))));
    out
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        Poly::from_sorted_unchecked(add_terms(&self.terms, &rhs.terms, false))
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        Poly::from_sorted_unchecked(add_terms(&self.terms, &rhs.terms, true))
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::from_sorted_unchecked(self.terms.iter().map(|(e, c)| (*e, -c)).collect())
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

/// Unchecked product; use [`Poly::checked_mul`] where the degree cap matters.
impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        Poly::from_sorted_unchecked(mul_terms(&self.terms, &rhs.terms))
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

/// The quantum integer `[n]_q = 1 + q + ... + q^(n-1)`.
pub fn quantum_integer(n: u64) -> Result<Poly> {
    if n == 0 {
        return Err(Error::NonPositive("n"));
    }
    check_degree(n - 1)?;
    Ok(Poly::from_sorted_unchecked(
        (0..n).map(|e| (e, BigInt::one())).collect(),
    ))
}

fn cyclotomic_cache() -> &'static RwLock<HashMap<u64, Poly>> {
    static CACHE: OnceLock<RwLock<HashMap<u64, Poly>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// The `n`-th cyclotomic polynomial, via `(q^n - 1) / prod_{d | n, d < n} Phi_d`.
pub fn cyclotomic(n: u64) -> Result<Poly> {
    if n == 0 {
        return Err(Error::NonPositive("n"));
    }
    if let Some(p) = cyclotomic_cache().read().unwrap().get(&n) {
        return Ok(p.clone());
    }
    check_degree(n)?;
    let mut denom = Poly::one();
    for d in arith::divisors(n) {
        if d < n {
            denom = &denom * &cyclotomic(d)?;
        }
    }
    let numer = Poly::from_terms([(0u64, BigInt::from(-1)), (n, BigInt::one())]);
    let phi = numer
        .divide_exact(&denom)?
        .expect("q^n - 1 is divisible by the lower cyclotomic factors");
    cyclotomic_cache()
        .write()
        .unwrap()
        .entry(n)
        .or_insert_with(|| phi.clone());
    Ok(phi)
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = c.abs();
            let unit = mag.is_one();
            match *e {
                0 => write!(f, "{mag}")?,
                1 if unit => f.write_str("q")?,
                1 => write!(f, "{mag}*q")?,
                _ if unit => write!(f, "q^{e}")?,
                _ => write!(f, "{mag}*q^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.terms.iter().map(|(e, c)| (*e, c.to_string())))
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum CoeffRepr {
    Str(String),
    Int(i64),
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw: Vec<(u64, CoeffRepr)> = Vec::deserialize(deserializer)?;
        let mut terms = Vec::with_capacity(raw.len());
        for (e, c) in raw {
            let c = match c {
                CoeffRepr::Int(v) => BigInt::from(v),
                CoeffRepr::Str(s) => s
                    .trim()
                    .parse::<BigInt>()
                    .map_err(|_| D::Error::custom(format!("invalid coefficient {s:?}")))?,
            };
            terms.push((e, c));
        }
        Ok(Poly::from_terms(terms))
    }
}
