//! Solution sequences of `f_mn(q) = f_m(q) alpha_u(m)(f_n(q))`.
//!
//! A [`Solution`] pairs a sequence `{f_n}` with the family `alpha` and the
//! associated completely multiplicative function `u`, i.e. it is a
//! homomorphism `n -> (f_n, u(n))` into `Z[q] x_alpha N`. Sequences are
//! evaluated lazily. Seeded solutions memoize `f_n` because each value is
//! built from the one below it.

mod files;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::{Arc, Mutex};

use rayon::prelude::*;
use serde::Serialize;

pub use files::SeedFile;

use crate::arith::{factorize, is_prime, MultFn};
use crate::endo::EndoFamily;
use crate::error::{Error, Result};
use crate::poly::{quantum_integer, Poly};
use crate::semidirect::SdElem;

/// Outcome of the pairwise seed compatibility check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Compatibility {
    Compatible,
    /// `h_p1 alpha_u(p1)(h_p2) = lhs != rhs = h_p2 alpha_u(p2)(h_p1)`
    Incompatible { p1: u64, p2: u64, lhs: Poly, rhs: Poly },
}

impl Compatibility {
    pub fn is_compatible(&self) -> bool {
        matches!(self, Compatibility::Compatible)
    }
}

/// Check `h_p1 alpha_u(p1)(h_p2) == h_p2 alpha_u(p2)(h_p1)` for every pair of
/// distinct primes, in ascending order; the first failing pair is returned.
pub fn check_compatibility(
    alpha: &EndoFamily,
    u: &MultFn,
    seeds: &BTreeMap<u64, Poly>,
) -> Result<Compatibility> {
    let entries: Vec<(u64, &Poly)> = seeds.iter().map(|(p, h)| (*p, h)).collect();
    for (i, &(p1, h1)) in entries.iter().enumerate() {
        for &(p2, h2) in &entries[i + 1..] {
            let lhs = h1.checked_mul(&alpha.apply(u.eval(p1)?, h2)?)?;
            let rhs = h2.checked_mul(&alpha.apply(u.eval(p2)?, h1)?)?;
            if lhs != rhs {
                return Ok(Compatibility::Incompatible { p1, p2, lhs, rhs });
            }
        }
    }
    Ok(Compatibility::Compatible)
}

/// `n` lies in `S(P)` when every prime factor of `n` belongs to `P`.
pub fn support_contains(primes: &BTreeSet<u64>, n: u64) -> bool {
    factorize(n).is_ok_and(|f| f.primes().all(|p| primes.contains(&p)))
}

#[derive(Debug)]
enum Kind {
    /// `f_n = 0` for every `n`.
    Zero,
    Seeded(BTreeMap<u64, Poly>),
    /// `f_n = [u(n)]_q`
    Quantum,
    /// `f_n = q^(u(n) - 1)`
    Power,
    Product(Solution, Solution),
    /// Same sequence, reassociated to `(alpha o u, epsilon)`.
    Untwisted(Solution),
    /// Same sequence, reassociated back from an untwisted solution.
    Retwisted(Solution),
    /// Explicit values overriding a base sequence; not necessarily a solution.
    Patched {
        base: Solution,
        overrides: BTreeMap<u64, Poly>,
    },
}

#[derive(Debug)]
struct Inner {
    kind: Kind,
    alpha: Arc<EndoFamily>,
    u: MultFn,
    cache: Mutex<HashMap<u64, Poly>>,
}

/// A lazily evaluated sequence `{f_n}` with its `(alpha, u)`.
///
/// Cloning is cheap and clones share the memo cache.
#[derive(Debug, Clone)]
pub struct Solution(Arc<Inner>);

impl Solution {
    fn build(kind: Kind, alpha: Arc<EndoFamily>, u: MultFn) -> Self {
        Solution(Arc::new(Inner {
            kind,
            alpha,
            u,
            cache: Mutex::new(HashMap::new()),
        }))
    }

    /// The unique solution with `f_p = h_p` on the seed primes `P` and
    /// support `S(P)`.
    pub fn from_seeds(alpha: EndoFamily, u: MultFn, seeds: BTreeMap<u64, Poly>) -> Result<Self> {
        for (&p, h) in &seeds {
            if !is_prime(p) {
                return Err(Error::NotPrime(p));
            }
            if h.is_zero() {
                return Err(Error::ZeroSeed(p));
            }
            // Everything evaluated on S(P) is then defined by multiplicativity.
            let up = u.eval(p)?;
            alpha.u.eval(up)?;
            alpha.v.eval(up)?;
        }
        if let Compatibility::Incompatible { p1, p2, lhs, rhs } =
            check_compatibility(&alpha, &u, &seeds)?
        {
            return Err(Error::Incompatible {
                p1,
                p2,
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
            });
        }
        Ok(Self::build(Kind::Seeded(seeds), Arc::new(alpha), u))
    }

    /// `f_1 = 1` and `f_n = 0` for `n > 1`.
    pub fn trivial(alpha: EndoFamily, u: MultFn) -> Self {
        Self::build(Kind::Seeded(BTreeMap::new()), Arc::new(alpha), u)
    }

    pub fn zero(alpha: EndoFamily, u: MultFn) -> Self {
        Self::build(Kind::Zero, Arc::new(alpha), u)
    }

    /// `f_n = [u(n)]_q` under the ordinary family, i.e.
    /// `f_mn(q) = f_m(q) f_n(q^u(m))`.
    pub fn quantum(u: MultFn) -> Self {
        Self::build(Kind::Quantum, Arc::new(EndoFamily::ordinary()), u)
    }

    /// `f_n = q^(u(n) - 1)` under the ordinary family.
    pub fn power(u: MultFn) -> Self {
        Self::build(Kind::Power, Arc::new(EndoFamily::ordinary()), u)
    }

    /// Pointwise product; both factors must share `(alpha, u)`.
    pub fn product(a: &Solution, b: &Solution) -> Result<Self> {
        if *a.0.alpha != *b.0.alpha || a.0.u != b.0.u {
            return Err(Error::MismatchedSolutions);
        }
        Ok(Self::build(
            Kind::Product(a.clone(), b.clone()),
            Arc::clone(&a.0.alpha),
            a.0.u.clone(),
        ))
    }

    /// The same sequence viewed in `Hom(alpha o u, epsilon)`.
    pub fn untwist(&self) -> Self {
        let beta = self.0.alpha.compose_with(&self.0.u);
        Self::build(Kind::Untwisted(self.clone()), Arc::new(beta), MultFn::Identity)
    }

    /// Inverse of [`Solution::untwist`]: reassociate a sequence in
    /// `Hom(alpha o u, epsilon)` with `(alpha, u)`.
    pub fn retwist(&self, alpha: EndoFamily, u: MultFn) -> Result<Self> {
        if self.0.u != MultFn::Identity || *self.0.alpha != alpha.compose_with(&u) {
            return Err(Error::NotUntwisted);
        }
        Ok(Self::build(Kind::Retwisted(self.clone()), Arc::new(alpha), u))
    }

    /// Replace selected values of the sequence. The result keeps `(alpha, u)`
    /// but need not satisfy the functional equation; [`Solution::verify`]
    /// reports where it fails.
    pub fn with_overrides(&self, overrides: BTreeMap<u64, Poly>) -> Self {
        Self::build(
            Kind::Patched {
                base: self.clone(),
                overrides,
            },
            Arc::clone(&self.0.alpha),
            self.0.u.clone(),
        )
    }

    pub fn alpha(&self) -> &EndoFamily {
        &self.0.alpha
    }

    pub fn u(&self) -> &MultFn {
        &self.0.u
    }

    pub fn kind_name(&self) -> &'static str {
        match self.0.kind {
            Kind::Zero => "zero",
            Kind::Seeded(_) => "seeded",
            Kind::Quantum => "quantum",
            Kind::Power => "power",
            Kind::Product(..) => "product",
            Kind::Untwisted(_) => "untwisted",
            Kind::Retwisted(_) => "retwisted",
            Kind::Patched { .. } => "patched",
        }
    }

    /// Seeds of a seeded solution.
    pub fn seeds(&self) -> Option<&BTreeMap<u64, Poly>> {
        match &self.0.kind {
            Kind::Seeded(s) => Some(s),
            _ => None,
        }
    }

    /// The prime set `P` with `supp = S(P)`, when it is known structurally.
    /// `None` means every prime (support `N`).
    pub fn support_primes(&self) -> Option<BTreeSet<u64>> {
        match &self.0.kind {
            Kind::Zero => Some(BTreeSet::new()),
            Kind::Seeded(s) => Some(s.keys().copied().collect()),
            Kind::Quantum | Kind::Power => None,
            Kind::Patched { base, .. } => base.support_primes(),
            Kind::Product(a, b) => match (a.support_primes(), b.support_primes()) {
                (None, x) | (x, None) => x,
                (Some(x), Some(y)) => Some(x.intersection(&y).copied().collect()),
            },
            Kind::Untwisted(s) | Kind::Retwisted(s) => s.support_primes(),
        }
    }

    /// A zero solution has `f_1 = 0`; every other solution has `f_1 = 1`.
    pub fn is_nonzero(&self) -> Result<bool> {
        Ok(!self.eval(1)?.is_zero())
    }

    /// The snapshot `Phi(n) = (f_n, u(n))`.
    pub fn element(&self, n: u64) -> Result<SdElem> {
        SdElem::new(self.eval(n)?, self.0.u.eval(n)?, Arc::clone(&self.0.alpha))
    }

    /// `f_n`.
    pub fn eval(&self, n: u64) -> Result<Poly> {
        if n == 0 {
            return Err(Error::NonPositive("n"));
        }
        let inner = &*self.0;
        match &inner.kind {
            Kind::Zero => Ok(Poly::zero()),
            Kind::Seeded(seeds) => self.eval_seeded(seeds, n),
            Kind::Quantum => quantum_integer(inner.u.eval(n)?),
            Kind::Power => Ok(Poly::monomial(1, inner.u.eval(n)? - 1)),
            Kind::Product(a, b) => {
                let fa = a.eval(n)?;
                if fa.is_zero() {
                    return Ok(fa);
                }
                fa.checked_mul(&b.eval(n)?)
            }
            Kind::Untwisted(s) | Kind::Retwisted(s) => s.eval(n),
            Kind::Patched { base, overrides } => match overrides.get(&n) {
                Some(f) => Ok(f.clone()),
                None => base.eval(n),
            },
        }
    }

    /// Canonical order: ascending primes with multiplicity, left-associated,
    /// so `Phi(n) = Phi(n / p) Phi(p)` for the largest prime `p | n`.
    fn eval_seeded(&self, seeds: &BTreeMap<u64, Poly>, n: u64) -> Result<Poly> {
        if n == 1 {
            return Ok(Poly::one());
        }
        if let Some(p) = seeds.get(&n) {
            return Ok(p.clone());
        }
        if let Some(f) = self.0.cache.lock().unwrap().get(&n) {
            return Ok(f.clone());
        }
        let fact = factorize(n)?;
        if !fact.primes().all(|p| seeds.contains_key(&p)) {
            return Ok(Poly::zero());
        }
        let p = fact.largest_prime().expect("n > 1");
        let m = n / p;
        let prefix = SdElem::new(self.eval_seeded(seeds, m)?, self.0.u.eval(m)?, self.alpha_arc())?;
        let last = SdElem::new(seeds[&p].clone(), self.0.u.eval(p)?, self.alpha_arc())?;
        let (f, _) = prefix.mul(&last)?.into_parts();
        self.0.cache.lock().unwrap().insert(n, f.clone());
        Ok(f)
    }

    fn alpha_arc(&self) -> Arc<EndoFamily> {
        Arc::clone(&self.0.alpha)
    }

    /// Evaluate a seeded solution by multiplying the prime seeds in the given
    /// order, which must be a rearrangement of the prime factors of `n`.
    pub fn eval_in_order(&self, n: u64, order: &[u64]) -> Result<Poly> {
        let mut sorted = order.to_vec();
        sorted.sort_unstable();
        if sorted != factorize(n)?.prime_sequence() {
            return Err(Error::InvalidFactorOrder {
                n,
                order: order.to_vec(),
            });
        }
        let Kind::Seeded(seeds) = &self.0.kind else {
            return self.eval(n);
        };
        let mut acc = SdElem::identity(self.alpha_arc());
        for p in order {
            let Some(h) = seeds.get(p) else {
                return Ok(Poly::zero());
            };
            acc = acc.mul(&SdElem::new(h.clone(), self.0.u.eval(*p)?, self.alpha_arc())?)?;
        }
        Ok(acc.into_parts().0)
    }

    /// Right-hand side `f_m alpha_u(m)(f_n)`; zero factors short-circuit.
    fn rhs(&self, m: u64, n: u64) -> Result<Poly> {
        let fm = self.eval(m)?;
        if fm.is_zero() {
            return Ok(fm);
        }
        let fn_ = self.eval(n)?;
        if fn_.is_zero() {
            return Ok(fn_);
        }
        let twisted = self.0.alpha.apply(self.0.u.eval(m)?, &fn_)?;
        fm.checked_mul(&twisted)
    }

    /// Check the functional equation on the grid `1..=max_m x 1..=max_n`.
    ///
    /// Cells where `u` or `alpha` is undefined (finite tables) are skipped and
    /// counted separately; all other errors propagate.
    pub fn verify(&self, max_m: u64, max_n: u64) -> Result<VerifyReport> {
        if max_m == 0 {
            return Err(Error::NonPositive("M"));
        }
        if max_n == 0 {
            return Err(Error::NonPositive("N"));
        }
        let cells: Vec<(u64, u64)> = (1..=max_m)
            .flat_map(|m| (1..=max_n).map(move |n| (m, n)))
            .collect();
        let outcomes = cells
            .par_iter()
            .map(|&(m, n)| {
                let mn = m.checked_mul(n).ok_or(Error::Overflow("m n"))?;
                let sides = self.eval(mn).and_then(|lhs| Ok((lhs, self.rhs(m, n)?)));
                match sides {
                    Ok((lhs, rhs)) if lhs == rhs => Ok(Cell::Holds),
                    Ok((lhs, rhs)) => Ok(Cell::Fails(Violation { m, n, lhs, rhs })),
                    Err(Error::MissingPrime(_)) => Ok(Cell::Undefined),
                    Err(e) => Err(e),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        let mut report = VerifyReport::default();
        for cell in outcomes {
            match cell {
                Cell::Holds => report.checked += 1,
                Cell::Fails(v) => {
                    report.checked += 1;
                    report.violations.push(v);
                }
                Cell::Undefined => report.skipped += 1,
            }
        }
        Ok(report)
    }
}

enum Cell {
    Holds,
    Fails(Violation),
    Undefined,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub m: u64,
    pub n: u64,
    pub lhs: Poly,
    pub rhs: Poly,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub checked: u64,
    #[serde(skip_serializing_if = "is_zero")]
    pub skipped: u64,
    pub violations: Vec<Violation>,
}

fn is_zero(n: &u64) -> bool {
    *n == 0
}

impl VerifyReport {
    pub fn is_verified(&self) -> bool {
        self.violations.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qi(n: u64) -> Poly {
        quantum_integer(n).unwrap()
    }

    fn p(c: &[i64]) -> Poly {
        Poly::from_coeffs(c)
    }

    fn seeded(seeds: &[(u64, Poly)]) -> Result<Solution> {
        Solution::from_seeds(
            EndoFamily::ordinary(),
            MultFn::Identity,
            seeds.iter().cloned().collect(),
        )
    }

    #[test]
    fn from_seeds_examples() {
        let s = seeded(&[(2, qi(2)), (3, qi(3))]).unwrap();
        assert_eq!(s.eval(6).unwrap(), qi(6));
        assert_eq!(s.eval(12).unwrap(), qi(12));

        let pw = seeded(&[(2, Poly::q())]).unwrap();
        assert_eq!(pw.eval(8).unwrap(), Poly::monomial(1, 7));

        let two = seeded(&[(2, qi(2))]).unwrap();
        assert!(two.eval(3).unwrap().is_zero());
        assert!(two.eval(6).unwrap().is_zero());
        assert_eq!(two.eval(16).unwrap(), qi(16));
    }

    #[test]
    fn seed_validation() {
        assert_eq!(seeded(&[(4, qi(4))]).unwrap_err(), Error::NotPrime(4));
        assert_eq!(seeded(&[(2, Poly::zero())]).unwrap_err(), Error::ZeroSeed(2));
        let err = seeded(&[(2, p(&[1, 1])), (3, p(&[1, 2]))]).unwrap_err();
        assert_eq!(
            err,
            Error::Incompatible {
                p1: 2,
                p2: 3,
                lhs: "1 + q + 2*q^2 + 2*q^3".into(),
                rhs: "1 + 2*q + q^3 + 2*q^4".into(),
            }
        );
        let table = MultFn::table([(2, 2)]).unwrap();
        let missing = Solution::from_seeds(
            EndoFamily::ordinary(),
            table,
            [(3u64, qi(3))].into_iter().collect(),
        );
        assert_eq!(missing.unwrap_err(), Error::MissingPrime(3));
    }

    #[test]
    fn compatibility_examples() {
        let alpha = EndoFamily::ordinary();
        let u = MultFn::Identity;
        let ok: BTreeMap<u64, Poly> = [(2, qi(2)), (3, qi(3))].into_iter().collect();
        assert!(check_compatibility(&alpha, &u, &ok).unwrap().is_compatible());
        let single: BTreeMap<u64, Poly> = [(5, p(&[7, -3, 1]))].into_iter().collect();
        assert!(check_compatibility(&alpha, &u, &single).unwrap().is_compatible());
        let bad: BTreeMap<u64, Poly> = [(2, p(&[1, 1])), (3, p(&[1, 2]))].into_iter().collect();
        assert_eq!(
            check_compatibility(&alpha, &u, &bad).unwrap(),
            Compatibility::Incompatible {
                p1: 2,
                p2: 3,
                // (1 + q)(1 + 2q^2) and (1 + 2q)(1 + q^3)
                lhs: p(&[1, 1, 2, 2]),
                rhs: p(&[1, 2, 0, 1, 2]),
            }
        );
    }

    #[test]
    fn builtin_families() {
        assert_eq!(Solution::quantum(MultFn::Identity).eval(5).unwrap(), qi(5));
        let sq = Solution::power(MultFn::Power(2));
        assert_eq!(sq.eval(6).unwrap(), Poly::monomial(1, 35));
        let t = Solution::power(MultFn::table([(2, 4), (3, 9)]).unwrap());
        assert_eq!(t.eval(6).unwrap(), Poly::monomial(1, 35));
        for s in [
            Solution::quantum(MultFn::Identity),
            Solution::power(MultFn::Power(3)),
            seeded(&[(2, qi(2))]).unwrap(),
            Solution::trivial(EndoFamily::ordinary(), MultFn::Identity),
        ] {
            assert!(s.eval(1).unwrap().is_one(), "{}", s.kind_name());
        }
    }

    #[test]
    fn verify_examples() {
        let q = Solution::quantum(MultFn::Identity);
        let r = q.verify(20, 20).unwrap();
        assert!(r.is_verified());
        assert_eq!(r.checked, 400);

        let f4 = &qi(4) + &Poly::one();
        let bad = q.with_overrides([(4u64, f4)].into_iter().collect());
        let r = bad.verify(4, 4).unwrap();
        assert!(r.violations.iter().any(|v| (v.m, v.n) == (2, 2)));
        // f_1 f_4 and f_4 f_1 are consistent with any f_4
        assert!(!r.violations.iter().any(|v| (v.m, v.n) == (1, 4) || (v.m, v.n) == (4, 1)));

        let z = Solution::zero(EndoFamily::ordinary(), MultFn::Identity);
        let r = z.verify(7, 9).unwrap();
        assert!(r.is_verified());
        assert_eq!(r.checked, 63);
        assert!(q.verify(0, 3).is_err());
    }

    #[test]
    fn verify_skips_cells_outside_a_table_domain() {
        let u = MultFn::table([(2, 3), (3, 5), (5, 2)]).unwrap();
        let r = Solution::quantum(u).verify(10, 10).unwrap();
        assert!(r.is_verified());
        assert!(r.skipped > 0);
        assert_eq!(r.checked + r.skipped, 100);
    }

    #[test]
    fn product_examples() {
        let q = Solution::quantum(MultFn::Identity);
        let ones = seeded(&[(2, Poly::one()), (3, Poly::one()), (5, Poly::one()), (7, Poly::one())])
            .unwrap();
        let prod = Solution::product(&q, &ones).unwrap();
        for n in 1..=60 {
            if support_contains(&[2, 3, 5, 7].into_iter().collect(), n) {
                assert_eq!(prod.eval(n).unwrap(), qi(n));
            } else {
                assert!(prod.eval(n).unwrap().is_zero());
            }
        }
        let pw = Solution::power(MultFn::Identity);
        let a = Solution::product(&q, &pw).unwrap();
        assert_eq!(a.eval(3).unwrap(), p(&[0, 0, 1, 1, 1]));
        let b = Solution::product(&pw, &q).unwrap();
        for n in 1..=20 {
            assert_eq!(a.eval(n).unwrap(), b.eval(n).unwrap());
        }
        let other = Solution::quantum(MultFn::Power(2));
        assert_eq!(
            Solution::product(&q, &other).unwrap_err(),
            Error::MismatchedSolutions
        );
        assert_eq!(prod.support_primes(), Some([2, 3, 5, 7].into_iter().collect()));
    }

    #[test]
    fn untwist_examples() {
        let q = Solution::quantum(MultFn::Identity);
        let uq = q.untwist();
        assert_eq!(uq.alpha(), q.alpha());
        assert_eq!(uq.u(), &MultFn::Identity);
        for n in 1..=12 {
            assert_eq!(uq.eval(n).unwrap(), q.eval(n).unwrap());
        }

        let sq = Solution::quantum(MultFn::Power(2));
        let beta = sq.untwist();
        assert_eq!(beta.alpha(), &EndoFamily::twisted(MultFn::Power(2)));
        assert!(beta.verify(10, 10).unwrap().is_verified());
        let back = beta.retwist(EndoFamily::ordinary(), MultFn::Power(2)).unwrap();
        assert_eq!(back.u(), sq.u());
        for n in 1..=30 {
            assert_eq!(back.eval(n).unwrap(), sq.eval(n).unwrap());
        }
        assert_eq!(
            sq.retwist(EndoFamily::ordinary(), MultFn::Power(2)).unwrap_err(),
            Error::NotUntwisted
        );
    }

    #[test]
    fn support_contains_examples() {
        let p23: BTreeSet<u64> = [2, 3].into_iter().collect();
        assert!(support_contains(&p23, 12));
        assert!(!support_contains(&p23, 10));
        assert!(support_contains(&p23, 1));
        assert!(support_contains(&BTreeSet::new(), 1));
        assert!(!support_contains(&BTreeSet::new(), 2));
    }

    #[test]
    fn order_independence() {
        let s = seeded(&[(2, qi(2)), (3, qi(3)), (5, qi(5))]).unwrap();
        let orders: [&[u64]; 4] = [&[2, 2, 3, 5], &[5, 3, 2, 2], &[2, 5, 2, 3], &[3, 2, 5, 2]];
        for o in orders {
            assert_eq!(s.eval_in_order(60, o).unwrap(), qi(60));
        }
        assert!(s.eval_in_order(60, &[2, 3, 5]).is_err());
    }

    #[test]
    fn zero_and_trivial() {
        let z = Solution::zero(EndoFamily::ordinary(), MultFn::Identity);
        assert!(!z.is_nonzero().unwrap());
        assert_eq!(z.support_primes(), Some(BTreeSet::new()));
        let t = Solution::trivial(EndoFamily::ordinary(), MultFn::Identity);
        assert!(t.is_nonzero().unwrap());
        assert!(t.eval(2).unwrap().is_zero());
        assert!(t.verify(10, 10).unwrap().is_verified());
    }

    #[test]
    fn element_is_the_semidirect_snapshot() {
        let s = Solution::quantum(MultFn::Identity);
        let e = s.element(2).unwrap().mul(&s.element(3).unwrap()).unwrap();
        assert_eq!(e, s.element(6).unwrap());
    }

    #[test]
    fn report_json() {
        let bad = Solution::quantum(MultFn::Identity)
            .with_overrides([(4u64, Poly::q())].into_iter().collect());
        let r = bad.verify(2, 2).unwrap();
        assert_eq!(
            serde_json::to_string(&r).unwrap(),
            concat!(
                r#"{"checked":4,"violations":[{"m":2,"n":2,"lhs":[[1,"1"]],"#,
                r#""rhs":[[0,"1"],[1,"1"],[2,"1"],[3,"1"]]}]}"#
            )
        );
    }
}
