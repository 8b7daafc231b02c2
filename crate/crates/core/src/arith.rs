//! Completely multiplicative arithmetic functions and trial-division factoring.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Prime factorization of a positive integer: prime -> multiplicity.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Factorization {
    factors: BTreeMap<u64, u32>,
}

impl Factorization {
    pub fn iter(&self) -> impl Iterator<Item = (u64, u32)> + '_ {
        self.factors.iter().map(|(p, e)| (*p, *e))
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.keys().copied()
    }

    pub fn multiplicity(&self, p: u64) -> u32 {
        self.factors.get(&p).copied().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Primes in ascending order, each repeated by its multiplicity.
    pub fn prime_sequence(&self) -> Vec<u64> {
        self.factors
            .iter()
            .flat_map(|(&p, &e)| std::iter::repeat_n(p, e as usize))
            .collect()
    }

    pub fn largest_prime(&self) -> Option<u64> {
        self.factors.keys().next_back().copied()
    }

    /// Multiply the prime powers back together.
    pub fn value(&self) -> u64 {
        self.factors.iter().map(|(p, e)| p.pow(*e)).product()
    }

    pub fn as_map(&self) -> &BTreeMap<u64, u32> {
        &self.factors
    }
}

/// Factor `n` by trial division.
pub fn factorize(n: u64) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::NonPositive("n"));
    }
    let mut factors = BTreeMap::new();
    let mut n = n;
    let mut push = |p: u64, n: &mut u64| {
        let mut e = 0;
        while n.is_multiple_of(p) {
            *n /= p;
            e += 1;
        }
        if e > 0 {
            factors.insert(p, e);
        }
    };
    push(2, &mut n);
    push(3, &mut n);
    let mut d = 5u64;
    while d.saturating_mul(d) <= n {
        push(d, &mut n);
        push(d + 2, &mut n);
        d += 6;
    }
    if n > 1 {
        factors.insert(n, 1);
    }
    Ok(Factorization { factors })
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n).is_ok_and(|f| f.multiplicity(n) == 1)
}

/// All positive divisors of `n`, ascending. `n` must be positive.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    if let Ok(f) = factorize(n) {
        for (p, e) in f.iter() {
            let len = out.len();
            let mut pk = 1u64;
            for _ in 0..e {
                pk *= p;
                for i in 0..len {
                    out.push(out[i] * pk);
                }
            }
        }
    }
    out.sort_unstable();
    out
}

/// Euler's totient.
pub fn totient(n: u64) -> u64 {
    match factorize(n) {
        Ok(f) => f
            .iter()
            .map(|(p, e)| (p - 1) * p.pow(e - 1))
            .product(),
        Err(_) => 0,
    }
}

/// A completely multiplicative function `N -> N`.
///
/// Functions are fixed by their values on primes. `Composite` is a deferred
/// evaluator for `n -> outer(inner(n))`; it is never materialized because the
/// values of `inner` may reach arbitrarily many primes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "repr::MultFnIn", into = "repr::MultFnOut")]
pub enum MultFn {
    /// `n -> n`
    Identity,
    /// `n -> 1`
    One,
    /// `p -> p^k` on primes, hence `n -> n^k`.
    Power(u32),
    /// Finite table prime -> value; undefined outside the listed primes.
    Table(BTreeMap<u64, u64>),
    Composite(Box<MultFn>, Box<MultFn>),
}

impl MultFn {
    pub fn epsilon() -> Self {
        MultFn::Identity
    }

    pub fn power(k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::NonPositive("k"));
        }
        Ok(MultFn::Power(k))
    }

    pub fn table<I: IntoIterator<Item = (u64, u64)>>(entries: I) -> Result<Self> {
        let mut table = BTreeMap::new();
        for (p, v) in entries {
            if !is_prime(p) {
                return Err(Error::NotPrime(p));
            }
            if v == 0 {
                return Err(Error::InvalidTableValue { prime: p });
            }
            table.insert(p, v);
        }
        Ok(MultFn::Table(table))
    }

    /// `n -> outer(inner(n))`, with identity and constant-one shortcuts.
    pub fn compose(outer: &MultFn, inner: &MultFn) -> MultFn {
        match (outer, inner) {
            (MultFn::Identity, w) => w.clone(),
            (u, MultFn::Identity) => u.clone(),
            (MultFn::One, _) | (_, MultFn::One) => MultFn::One,
            (MultFn::Power(a), MultFn::Power(b)) if a.checked_mul(*b).is_some() => {
                MultFn::Power(a * b)
            }
            (u, w) => MultFn::Composite(Box::new(u.clone()), Box::new(w.clone())),
        }
    }

    fn eval_prime(&self, p: u64) -> Result<u64> {
        match self {
            MultFn::Identity => Ok(p),
            MultFn::One => Ok(1),
            MultFn::Power(k) => p.checked_pow(*k).ok_or(Error::Overflow("u(p)")),
            MultFn::Table(t) => t.get(&p).copied().ok_or(Error::MissingPrime(p)),
            MultFn::Composite(outer, inner) => outer.eval(inner.eval_prime(p)?),
        }
    }

    /// `u(n) = prod u(p)^e` over the factorization of `n`.
    pub fn eval(&self, n: u64) -> Result<u64> {
        if n == 0 {
            return Err(Error::NonPositive("n"));
        }
        match self {
            MultFn::Identity => Ok(n),
            MultFn::One => Ok(1),
            MultFn::Composite(outer, inner) => outer.eval(inner.eval(n)?),
            _ => {
                let mut acc = 1u64;
                for (p, e) in factorize(n)?.iter() {
                    let pe = self
                        .eval_prime(p)?
                        .checked_pow(e)
                        .ok_or(Error::Overflow("u(n)"))?;
                    acc = acc.checked_mul(pe).ok_or(Error::Overflow("u(n)"))?;
                }
                Ok(acc)
            }
        }
    }

    /// Whether the function is defined on every positive integer.
    pub fn is_total(&self) -> bool {
        match self {
            MultFn::Identity | MultFn::One | MultFn::Power(_) => true,
            MultFn::Table(_) => false,
            MultFn::Composite(a, b) => a.is_total() && b.is_total(),
        }
    }
}

impl fmt::Display for MultFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MultFn::Identity => f.write_str("epsilon"),
            MultFn::One => f.write_str("one"),
            MultFn::Power(k) => write!(f, "power:{k}"),
            MultFn::Table(t) => {
                f.write_str("table{")?;
                for (i, (p, v)) in t.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{p}->{v}")?;
                }
                f.write_str("}")
            }
            MultFn::Composite(a, b) => write!(f, "({a})o({b})"),
        }
    }
}

mod repr {
    use std::collections::BTreeMap;

    use serde::{Deserialize, Serialize};

    use super::MultFn;
    use crate::error::Error;

    // Input and output shapes are separate: untagged enums buffer map keys as
    // strings, so table keys are parsed by hand on the way in.

    #[derive(Deserialize)]
    #[serde(untagged)]
    pub enum NumberIn {
        Int(u64),
        Str(String),
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    pub enum BuiltinIn {
        Name(String),
        Power { power: u32 },
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    pub enum MultFnIn {
        Builtin { builtin: BuiltinIn },
        Table { table: BTreeMap<String, NumberIn> },
        Compose { compose: (Box<MultFnIn>, Box<MultFnIn>) },
    }

    #[derive(Serialize)]
    #[serde(untagged)]
    pub enum BuiltinOut {
        Name(&'static str),
        Power { power: u32 },
    }

    #[derive(Serialize)]
    #[serde(untagged)]
    pub enum MultFnOut {
        Builtin { builtin: BuiltinOut },
        Table { table: BTreeMap<u64, u64> },
        Compose { compose: (Box<MultFnOut>, Box<MultFnOut>) },
    }

    fn parse_u64(s: &str, what: &str) -> Result<u64, String> {
        s.trim().parse().map_err(|_| format!("invalid {what} {s:?}"))
    }

    impl TryFrom<MultFnIn> for MultFn {
        type Error = String;

        fn try_from(r: MultFnIn) -> Result<Self, String> {
            match r {
                MultFnIn::Builtin { builtin } => match builtin {
                    BuiltinIn::Name(name) => match name.as_str() {
                        "epsilon" => Ok(MultFn::Identity),
                        "one" => Ok(MultFn::One),
                        other => Err(format!("unknown builtin function {other:?}")),
                    },
                    BuiltinIn::Power { power } => MultFn::power(power).map_err(|e| e.to_string()),
                },
                MultFnIn::Table { table } => {
                    let mut entries = Vec::with_capacity(table.len());
                    for (p, v) in table {
                        let p = parse_u64(&p, "table key")?;
                        let v = match v {
                            NumberIn::Int(v) => v,
                            NumberIn::Str(s) => parse_u64(&s, "table value")?,
                        };
                        entries.push((p, v));
                    }
                    MultFn::table(entries).map_err(|e: Error| e.to_string())
                }
                MultFnIn::Compose { compose: (a, b) } => Ok(MultFn::Composite(
                    Box::new(MultFn::try_from(*a)?),
                    Box::new(MultFn::try_from(*b)?),
                )),
            }
        }
    }

    impl From<MultFn> for MultFnOut {
        fn from(u: MultFn) -> Self {
            match u {
                MultFn::Identity => MultFnOut::Builtin {
                    builtin: BuiltinOut::Name("epsilon"),
                },
                MultFn::One => MultFnOut::Builtin {
                    builtin: BuiltinOut::Name("one"),
                },
                MultFn::Power(k) => MultFnOut::Builtin {
                    builtin: BuiltinOut::Power { power: k },
                },
                MultFn::Table(table) => MultFnOut::Table { table },
                MultFn::Composite(a, b) => MultFnOut::Compose {
                    compose: (Box::new((*a).into()), Box::new((*b).into())),
                },
            }
        }
    }
}
