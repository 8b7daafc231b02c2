//! Cyclotomic structure of polynomials and of solution sequences.
//!
//! A polynomial is *essentially cyclotomic* here when it equals
//! `unit * q^a * prod [n]_q^(e_n)` with non-negative integer exponents.
//! Since `[n]_q = prod_{d | n, d > 1} Phi_d`, the test reduces to factoring
//! out cyclotomic polynomials and peeling quantum integers off the resulting
//! multiset from the largest index down.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};
use serde::Serialize;

use crate::arith::divisors;
use crate::error::{Error, Result};
use crate::poly::{cyclotomic, quantum_integer, Poly};
use crate::solution::Solution;

/// `unit * q^q_power * prod Phi_d^cyclo[d] * remainder`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycloFactorization {
    pub unit: BigInt,
    pub q_power: u64,
    pub cyclo: BTreeMap<u64, u32>,
    /// Primitive, positive leading coefficient, not divisible by `q` or by any
    /// `Phi_d` with `d` within the search bound.
    pub remainder: Poly,
}

impl CycloFactorization {
    pub fn is_fully_cyclotomic(&self) -> bool {
        self.remainder.is_one()
    }

    pub fn recompose(&self) -> Result<Poly> {
        let mut acc = self.remainder.scale(&self.unit).shift_up(self.q_power)?;
        for (&d, &m) in &self.cyclo {
            acc = acc.checked_mul(&cyclotomic(d)?.pow(m as u64)?)?;
        }
        Ok(acc)
    }
}

/// `unit * q^q_power * prod [n]_q^qi[n]`, meaningful when `success`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuantumDecomposition {
    pub unit: BigInt,
    pub q_power: u64,
    /// Empty unless the decomposition succeeded.
    pub qi: BTreeMap<u64, u32>,
    pub success: bool,
    pub factorization: CycloFactorization,
}

impl QuantumDecomposition {
    pub fn recompose(&self) -> Result<Poly> {
        let mut acc = Poly::constant(self.unit.clone()).shift_up(self.q_power)?;
        for (&n, &e) in &self.qi {
            acc = acc.checked_mul(&quantum_integer(n)?.pow(e as u64)?)?;
        }
        Ok(acc)
    }
}

/// All `d` with `phi(d) <= max_phi`, ascending, paired with `phi(d)`.
///
/// Enumerated directly from `phi(prod p^e) = prod (p - 1) p^(e - 1)`, so the
/// list is exact: no `d` outside it can have `Phi_d` of degree `<= max_phi`.
pub fn indices_with_totient_at_most(max_phi: u64) -> Vec<(u64, u64)> {
    let limit = max_phi.saturating_add(1);
    let primes = primes_up_to(limit);
    let mut out = Vec::new();
    fn walk(primes: &[u64], start: usize, d: u64, phi: u64, max_phi: u64, out: &mut Vec<(u64, u64)>) {
        out.push((d, phi));
        for (i, &p) in primes.iter().enumerate().skip(start) {
            let Some(mut next_phi) = phi.checked_mul(p - 1) else {
                break;
            };
            if next_phi > max_phi {
                break;
            }
            let Some(mut next_d) = d.checked_mul(p) else {
                break;
            };
            loop {
                walk(primes, i + 1, next_d, next_phi, max_phi, out);
                match (next_phi.checked_mul(p), next_d.checked_mul(p)) {
                    (Some(np), Some(nd)) if np <= max_phi => {
                        next_phi = np;
                        next_d = nd;
                    }
                    _ => break,
                }
            }
        }
    }
    walk(&primes, 0, 1, 1, max_phi, &mut out);
    out.sort_unstable();
    out
}

fn primes_up_to(n: u64) -> Vec<u64> {
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i.saturating_mul(i);
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// Smallest bound `B` such that every `Phi_d` of degree `<= degree` has `d <= B`.
pub fn default_bound(degree: u64) -> u64 {
    indices_with_totient_at_most(degree.max(1))
        .last()
        .map(|(d, _)| *d)
        .unwrap_or(1)
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for 64-bit inputs.
fn is_prime_u64(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for p in BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'bases: for a in BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// A prime `p = 1 mod d` and a primitive `d`-th root of unity modulo `p`.
fn root_of_unity(d: u64) -> (u64, u64) {
    static CACHE: OnceLock<Mutex<HashMap<u64, (u64, u64)>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(r) = cache.lock().unwrap().get(&d) {
        return *r;
    }
    let prime_divisors: Vec<u64> = divisors(d)
        .into_iter()
        .filter(|&r| r > 1 && crate::arith::is_prime(r))
        .collect();
    let mut k = ((1u64 << 40) / d).max(1);
    let found = loop {
        let p = k * d + 1;
        if is_prime_u64(p) {
            let cofactor = (p - 1) / d;
            let root = (2..p).map(|g| pow_mod(g, cofactor, p)).find(|&w| {
                prime_divisors.iter().all(|&r| pow_mod(w, d / r, p) != 1)
            });
            if let Some(w) = root {
                break (p, w);
            }
        }
        k += 1;
    };
    cache.lock().unwrap().insert(d, found);
    found
}

/// Necessary condition for `Phi_d | f`: `f` vanishes at a primitive `d`-th
/// root of unity modulo a prime `p = 1 mod d`.
fn may_divide(f: &Poly, d: u64) -> bool {
    let (p, w) = root_of_unity(d);
    let pb = BigInt::from(p);
    let mut acc = 0u64;
    for (e, c) in f.terms() {
        let mut r = c % &pb;
        if r.is_negative() {
            r += &pb;
        }
        let r = r.to_u64().expect("reduced modulo a 64-bit prime");
        acc = (acc + mul_mod(r, pow_mod(w, e % d, p), p)) % p;
    }
    acc == 0
}

/// Strip the unit and `q`-power, then divide out `Phi_d` for `d = 1..=bound`.
pub fn factor_cyclotomic(f: &Poly, bound: u64) -> Result<CycloFactorization> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if bound == 0 {
        return Err(Error::NonPositive("bound"));
    }
    let q_power = f.low_degree().expect("nonzero");
    let g = f.shift_down(q_power).expect("q_power is the low degree");
    let mut unit = g.content();
    if g.leading_coeff().expect("nonzero").is_negative() {
        unit = -unit;
    }
    let mut g = g.div_scalar_exact(&unit).expect("content divides");

    let mut cyclo = BTreeMap::new();
    let start_degree = g.degree().unwrap_or(0);
    for (d, phi) in indices_with_totient_at_most(start_degree) {
        if d > bound {
            break;
        }
        let mut mult = 0u32;
        while g.degree().unwrap_or(0) >= phi && may_divide(&g, d) {
            match g.divide_exact(&cyclotomic(d)?)? {
                Some(quot) => {
                    g = quot;
                    mult += 1;
                }
                None => break,
            }
        }
        if mult > 0 {
            cyclo.insert(d, mult);
        }
        if g.degree() == Some(0) {
            break;
        }
    }
    Ok(CycloFactorization {
        unit,
        q_power,
        cyclo,
        remainder: g,
    })
}

/// Peel quantum integers off a cyclotomic factorization, largest index first.
///
/// The largest index `N` present fixes the exponent of `[N]_q`: any larger
/// quantum integer would contribute a larger cyclotomic factor. Greedy
/// failure therefore certifies that no decomposition exists.
pub fn peel(factorization: CycloFactorization, strict: bool) -> QuantumDecomposition {
    let mut ledger: BTreeMap<u64, i64> = factorization
        .cyclo
        .iter()
        .map(|(d, m)| (*d, *m as i64))
        .collect();
    let mut qi = BTreeMap::new();
    // [n]_q never contains Phi_1 = q - 1.
    let mut ok = !ledger.contains_key(&1);
    while ok {
        let Some((&top, &e)) = ledger.iter().next_back() else {
            break;
        };
        for d in divisors(top).into_iter().filter(|&d| d > 1) {
            let slot = ledger.entry(d).or_insert(0);
            *slot -= e;
            if *slot < 0 {
                ok = false;
            }
        }
        ledger.retain(|_, m| *m != 0);
        qi.insert(top, e as u32);
    }
    let unit_ok = !strict || factorization.unit.abs().is_one();
    let success = ok && factorization.remainder.is_one() && unit_ok;
    QuantumDecomposition {
        unit: factorization.unit.clone(),
        q_power: factorization.q_power,
        qi: if success { qi } else { BTreeMap::new() },
        success,
        factorization,
    }
}

/// Lenient decomposition: any integer unit is admitted.
pub fn quantum_decompose(f: &Poly, bound: u64) -> Result<QuantumDecomposition> {
    Ok(peel(factor_cyclotomic(f, bound)?, false))
}

/// Only units `+1` and `-1` are admitted.
pub fn quantum_decompose_strict(f: &Poly, bound: u64) -> Result<QuantumDecomposition> {
    Ok(peel(factor_cyclotomic(f, bound)?, true))
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct AnalyzeOptions {
    /// Cyclotomic search bound; `None` picks [`default_bound`] per polynomial.
    pub bound: Option<u64>,
    pub strict: bool,
}

/// One row of a classification report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub n: u64,
    pub qi: BTreeMap<u64, u32>,
    pub q_power: u64,
    #[serde(serialize_with = "as_decimal")]
    pub unit: BigInt,
    pub success: bool,
    pub cyclo: BTreeMap<u64, u32>,
    pub remainder: Poly,
}

fn as_decimal<S: serde::Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

pub fn classify_poly(n: u64, f: &Poly, opts: &AnalyzeOptions) -> Result<Classification> {
    let bound = opts
        .bound
        .unwrap_or_else(|| default_bound(f.degree().unwrap_or(0)));
    let dec = peel(factor_cyclotomic(f, bound)?, opts.strict);
    Ok(Classification {
        n,
        qi: dec.qi,
        q_power: dec.q_power,
        unit: dec.unit,
        success: dec.success,
        cyclo: dec.factorization.cyclo,
        remainder: dec.factorization.remainder,
    })
}

/// Classify every nonzero `f_n` with `n <= up_to`.
pub fn classify_solution(
    sol: &Solution,
    up_to: u64,
    opts: &AnalyzeOptions,
) -> Result<Vec<Classification>> {
    if up_to == 0 {
        return Err(Error::NonPositive("up_to"));
    }
    let mut out = Vec::new();
    for n in 1..=up_to {
        let f = sol.eval(n)?;
        if !f.is_zero() {
            out.push(classify_poly(n, &f, opts)?);
        }
    }
    Ok(out)
}

impl Classification {
    /// `[2]_q^2 * [3]_q`-style rendering of a successful row.
    pub fn describe(&self) -> String {
        let mut parts = Vec::new();
        if !self.unit.is_one() {
            parts.push(self.unit.to_string());
        }
        match self.q_power {
            0 => {}
            1 => parts.push("q".to_string()),
            a => parts.push(format!("q^{a}")),
        }
        for (n, e) in &self.qi {
            parts.push(if *e == 1 {
                format!("[{n}]_q")
            } else {
                format!("[{n}]_q^{e}")
            });
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join(" * ")
        }
    }

    pub fn describe_cyclo(&self) -> String {
        if self.cyclo.is_empty() {
            return "none".to_string();
        }
        self.cyclo
            .iter()
            .map(|(d, m)| if *m == 1 { format!("Phi_{d}") } else { format!("Phi_{d}^{m}") })
            .collect::<Vec<_>>()
            .join(" * ")
    }
}
