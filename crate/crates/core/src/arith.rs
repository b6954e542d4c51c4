//! Exact integer utilities: smooth factorization and a congruence-system
//! solver over smooth moduli.
//!
//! Moduli here are orders of torsion elements, which the group constructors
//! certify to be beta-smooth. Smoothness checking is plain trial division;
//! the solver reduces every finite modulus to prime powers, keeps the
//! strongest constraint per prime, checks consistency and recombines.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// Modulus of a congruence: a positive integer, or infinity.
///
/// Congruent modulo infinity means equality, so an `Infinity` congruence is
/// an exact value constraint. Infinity is a distinct variant, never a
/// sentinel integer.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Modulus {
    Finite(BigInt),
    Infinity,
}

/// `residue mod modulus`, with `0 <= residue < modulus` when finite.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Congruence {
    residue: BigInt,
    modulus: Modulus,
}

impl Congruence {
    /// A congruence with a finite modulus `m >= 1`; the residue is reduced
    /// into `[0, m)`.
    pub fn finite(residue: BigInt, modulus: BigInt) -> Self {
        assert!(modulus.is_positive(), "modulus must be >= 1");
        let residue = residue.mod_floor(&modulus);
        Congruence {
            residue,
            modulus: Modulus::Finite(modulus),
        }
    }

    /// The exact-value constraint `x = value`.
    pub fn exact(value: BigInt) -> Self {
        Congruence {
            residue: value,
            modulus: Modulus::Infinity,
        }
    }

    /// The trivial congruence satisfied by every integer.
    pub fn any() -> Self {
        Congruence::finite(BigInt::zero(), BigInt::one())
    }

    pub fn residue(&self) -> &BigInt {
        &self.residue
    }

    pub fn modulus(&self) -> &Modulus {
        &self.modulus
    }

    pub fn is_exact(&self) -> bool {
        self.modulus == Modulus::Infinity
    }

    /// Whether `x` satisfies this congruence.
    pub fn admits(&self, x: &BigInt) -> bool {
        match &self.modulus {
            Modulus::Finite(m) => x.mod_floor(m) == self.residue,
            Modulus::Infinity => *x == self.residue,
        }
    }
}

impl std::fmt::Display for Congruence {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.modulus {
            Modulus::Finite(m) => write!(f, "{} mod {}", self.residue, m),
            Modulus::Infinity => write!(f, "{} exactly", self.residue),
        }
    }
}

/// A certified full factorization into primes `<= beta`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmoothFactorization {
    base: BigInt,
    /// `(prime, exponent)` pairs, primes strictly increasing.
    factors: Vec<(u64, u32)>,
}

impl SmoothFactorization {
    pub fn base(&self) -> &BigInt {
        &self.base
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    /// Product of the recorded prime powers; equals `base` by construction.
    pub fn product(&self) -> BigInt {
        let mut acc = BigInt::one();
        for &(p, e) in &self.factors {
            acc *= BigInt::from(p).pow(e);
        }
        acc
    }
}

/// Primes up to and including `bound`, by sieve.
pub fn primes_up_to(bound: u32) -> Vec<u64> {
    if bound < 2 {
        return Vec::new();
    }
    let n = bound as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for p in 2..=n {
        if !composite[p] {
            primes.push(p as u64);
            let mut q = p * p;
            while q <= n {
                composite[q] = true;
                q += p;
            }
        }
    }
    primes
}

/// Factor `n >= 1` by trial division over primes `<= beta`.
///
/// Returns the full factorization when every prime factor is `<= beta` and
/// `Error::NotSmooth` otherwise.
pub fn factor_smooth(n: &BigInt, beta: u32) -> Result<SmoothFactorization, Error> {
    assert!(n.is_positive(), "factor_smooth requires n >= 1");
    let mut rest = n.clone();
    let mut factors = Vec::new();
    for p in primes_up_to(beta) {
        let pb = BigInt::from(p);
        let mut e = 0u32;
        while (&rest % &pb).is_zero() {
            rest /= &pb;
            e += 1;
        }
        if e > 0 {
            factors.push((p, e));
        }
        if rest.is_one() {
            break;
        }
    }
    if !rest.is_one() {
        return Err(Error::NotSmooth {
            value: n.clone(),
            beta,
            cofactor: rest,
        });
    }
    Ok(SmoothFactorization {
        base: n.clone(),
        factors,
    })
}

/// Inverse of `a` modulo `m`, for coprime `a`, `m`.
fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let ext = a.extended_gcd(m);
    debug_assert!(ext.gcd.is_one(), "mod_inverse needs coprime inputs");
    ext.x.mod_floor(m)
}

/// Solve a simultaneous system of congruences over beta-smooth finite
/// moduli, with `Infinity` moduli acting as exact-value constraints.
///
/// Returns the full solution set as one congruence: the residue modulo the
/// lcm of the finite moduli, or an exact value when any input was exact.
/// `Ok(None)` means the system is inconsistent. `Error::NotSmooth` is
/// propagated from factoring a finite modulus.
pub fn crt_solve(congruences: &[Congruence], beta: u32) -> Result<Option<Congruence>, Error> {
    assert!(!congruences.is_empty(), "crt_solve requires a nonempty system");

    // Exact constraints dominate: all must agree and satisfy the rest.
    let mut exact: Option<&BigInt> = None;
    for c in congruences {
        if c.is_exact() {
            match exact {
                None => exact = Some(c.residue()),
                Some(v) if v == c.residue() => {}
                Some(_) => return Ok(None),
            }
        }
    }
    if let Some(v) = exact {
        for c in congruences {
            if !c.admits(v) {
                return Ok(None);
            }
        }
        return Ok(Some(Congruence::exact(v.clone())));
    }

    // Reduce each finite modulus to prime powers; keep the strongest
    // constraint per prime and check the weaker ones against it.
    use std::collections::BTreeMap;
    let mut per_prime: BTreeMap<u64, (u32, BigInt)> = BTreeMap::new();
    for c in congruences {
        let m = match c.modulus() {
            Modulus::Finite(m) => m,
            Modulus::Infinity => unreachable!(),
        };
        let fact = factor_smooth(m, beta)?;
        for &(p, e) in fact.factors() {
            let pe = BigInt::from(p).pow(e);
            let r = c.residue().mod_floor(&pe);
            match per_prime.get_mut(&p) {
                None => {
                    per_prime.insert(p, (e, r));
                }
                Some((e0, r0)) => {
                    let weaker = e.min(*e0);
                    let pw = BigInt::from(p).pow(weaker);
                    if r.mod_floor(&pw) != r0.mod_floor(&pw) {
                        return Ok(None);
                    }
                    if e > *e0 {
                        *e0 = e;
                        *r0 = r;
                    }
                }
            }
        }
    }

    // Recombine the pairwise-coprime prime-power constraints.
    let mut residue = BigInt::zero();
    let mut modulus = BigInt::one();
    for (p, (e, r)) in &per_prime {
        let pe = BigInt::from(*p).pow(*e);
        // x = residue + modulus * t, t chosen so x = r (mod p^e).
        let diff = (r - &residue).mod_floor(&pe);
        let t = (&diff * mod_inverse(&modulus, &pe)).mod_floor(&pe);
        residue += &modulus * t;
        modulus *= pe;
    }
    Ok(Some(Congruence::finite(residue, modulus)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn factor_small() {
        let f = factor_smooth(&big(12), 3).unwrap();
        assert_eq!(f.factors(), &[(2, 2), (3, 1)]);
        assert_eq!(f.product(), big(12));
    }

    #[test]
    fn factor_unit() {
        let f = factor_smooth(&big(1), 5).unwrap();
        assert!(f.factors().is_empty());
        assert_eq!(f.product(), big(1));
    }

    #[test]
    fn factor_rejects_large_prime() {
        let err = factor_smooth(&big(10), 3).unwrap_err();
        assert_eq!(
            err,
            Error::NotSmooth {
                value: big(10),
                beta: 3,
                cofactor: big(5),
            }
        );
    }

    #[test]
    fn crt_two_congruences() {
        let sys = [Congruence::finite(big(1), big(2)), Congruence::finite(big(2), big(3))];
        let sol = crt_solve(&sys, 8).unwrap().unwrap();
        assert_eq!(sol, Congruence::finite(big(5), big(6)));
    }

    #[test]
    fn crt_contradictory_parities() {
        let sys = [Congruence::finite(big(0), big(2)), Congruence::finite(big(1), big(2))];
        assert_eq!(crt_solve(&sys, 8).unwrap(), None);
    }

    #[test]
    fn crt_exact_wins() {
        let sys = [Congruence::exact(big(5)), Congruence::finite(big(1), big(2))];
        let sol = crt_solve(&sys, 8).unwrap().unwrap();
        assert_eq!(sol, Congruence::exact(big(5)));

        let bad = [Congruence::exact(big(4)), Congruence::finite(big(1), big(2))];
        assert_eq!(crt_solve(&bad, 8).unwrap(), None);
    }

    #[test]
    fn crt_conflicting_exacts() {
        let sys = [Congruence::exact(big(5)), Congruence::exact(big(6))];
        assert_eq!(crt_solve(&sys, 8).unwrap(), None);
    }

    /// Exhaustive-scan oracle: smallest non-negative solution in [0, lcm).
    fn scan_solve(sys: &[Congruence]) -> Option<BigInt> {
        let mut lcm = BigInt::one();
        for c in sys {
            if let Modulus::Finite(m) = c.modulus() {
                lcm = lcm.lcm(m);
            }
        }
        let mut x = BigInt::zero();
        while x < lcm {
            if sys.iter().all(|c| c.admits(&x)) {
                return Some(x);
            }
            x += 1;
        }
        None
    }

    proptest! {
        #[test]
        fn crt_matches_exhaustive_scan(
            picks in proptest::collection::vec((0usize..7, 0i64..24), 1..5)
        ) {
            let moduli = [2i64, 3, 4, 6, 8, 9, 12];
            let sys: Vec<Congruence> = picks
                .iter()
                .map(|&(i, r)| Congruence::finite(big(r), big(moduli[i])))
                .collect();
            let got = crt_solve(&sys, 8).unwrap();
            let want = scan_solve(&sys);
            match (got, want) {
                (None, None) => {}
                (Some(c), Some(x)) => {
                    prop_assert_eq!(c.residue(), &x);
                    // the returned modulus describes the full solution set
                    if let Modulus::Finite(m) = c.modulus() {
                        prop_assert!(sys.iter().all(|s| s.admits(&(&x + m))));
                    }
                }
                (got, want) => prop_assert!(false, "crt {:?} vs scan {:?}", got, want),
            }
        }

        #[test]
        fn factor_round_trip(n in 1u64..100_000) {
            match factor_smooth(&BigInt::from(n), 64) {
                Ok(f) => prop_assert_eq!(f.product(), BigInt::from(n)),
                Err(Error::NotSmooth { cofactor, .. }) => {
                    // the cofactor genuinely has no small prime factor
                    for p in primes_up_to(64) {
                        prop_assert!(!(&cofactor % BigInt::from(p)).is_zero());
                    }
                }
                Err(e) => prop_assert!(false, "unexpected error {e:?}"),
            }
        }
    }
}
