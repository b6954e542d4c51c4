//! The solvable Baumslag-Solitar groups BS(1,q) = <a, t | t a t^-1 = a^q>,
//! realized as the semidirect product Z[1/q] x| Z with multiplication
//! (r, m)(s, m') = (r + q^m s, m + m').
//!
//! Group elements are pairs of a q-adic rational r = num / q^exp (kept
//! reduced: q does not divide num unless num = 0 and exp = 0) and the
//! t-exponent m. Powering uses the closed geometric-series form, so the
//! power problem needs a single exact computation per candidate exponent.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::group::PowerAnswer;
use crate::word::Letter;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaumslagSolitar {
    q: u64,
    beta: u32,
}

/// The pair (num / q^exp, t).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BsElement {
    q: u64,
    num: BigInt,
    exp: u32,
    t: BigInt,
}

impl std::fmt::Display for BsElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.exp == 0 {
            write!(f, "({}, {})", self.num, self.t)
        } else {
            write!(f, "({}/{}^{}, {})", self.num, self.q, self.exp, self.t)
        }
    }
}

impl BsElement {
    pub fn rational_numerator(&self) -> &BigInt {
        &self.num
    }

    pub fn rational_exponent(&self) -> u32 {
        self.exp
    }

    pub fn t_exponent(&self) -> &BigInt {
        &self.t
    }
}

/// Exponents inside q-adic shifts stay word-sized in every procedure here;
/// a blowup past this bound indicates a misuse, not an input.
fn to_machine(k: &BigInt) -> i64 {
    i64::try_from(k).expect("q-adic exponent out of machine range")
}

impl BaumslagSolitar {
    pub fn new(q: u64, beta: u32) -> Result<Self, Error> {
        if q < 2 {
            return Err(Error::InvalidGroup(format!("BS(1,{q}) requires q >= 2")));
        }
        Ok(BaumslagSolitar { q, beta })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn beta(&self) -> u32 {
        self.beta
    }

    pub fn describe(&self) -> String {
        format!("BS(1,{})", self.q)
    }

    pub fn identity(&self) -> BsElement {
        BsElement {
            q: self.q,
            num: BigInt::zero(),
            exp: 0,
            t: BigInt::zero(),
        }
    }

    fn reduced(&self, mut num: BigInt, mut exp: u32) -> (BigInt, u32) {
        let qq = BigInt::from(self.q);
        if num.is_zero() {
            return (num, 0);
        }
        while exp > 0 && (&num % &qq).is_zero() {
            num /= &qq;
            exp -= 1;
        }
        (num, exp)
    }

    /// Build (num / q^exp, t), normalizing the rational part.
    pub fn element(&self, num: BigInt, exp: u32, t: BigInt) -> BsElement {
        let (num, exp) = self.reduced(num, exp);
        BsElement {
            q: self.q,
            num,
            exp,
            t,
        }
    }

    /// The rational part scaled by q^k.
    fn shift(&self, num: &BigInt, exp: u32, k: i64) -> (BigInt, u32) {
        if num.is_zero() {
            return (BigInt::zero(), 0);
        }
        if k >= 0 {
            let k = k as u32;
            if k <= exp {
                (num.clone(), exp - k)
            } else {
                (num * BigInt::from(self.q).pow(k - exp), 0)
            }
        } else {
            (num.clone(), exp + (-k) as u32)
        }
    }

    fn add_rationals(&self, a: (&BigInt, u32), b: (&BigInt, u32)) -> (BigInt, u32) {
        let e = a.1.max(b.1);
        let qa = BigInt::from(self.q).pow(e - a.1);
        let qb = BigInt::from(self.q).pow(e - b.1);
        self.reduced(a.0 * qa + b.0 * qb, e)
    }

    pub fn letter(&self, l: Letter) -> BsElement {
        let sign = if l.inverse { -BigInt::one() } else { BigInt::one() };
        match l.gen {
            0 => self.element(sign, 0, BigInt::zero()),
            1 => self.element(BigInt::zero(), 0, sign),
            _ => unreachable!("BS(1,q) has two generators"),
        }
    }

    pub fn multiply(&self, x: &BsElement, y: &BsElement) -> BsElement {
        let shifted = self.shift(&y.num, y.exp, to_machine(&x.t));
        let (num, exp) = self.add_rationals((&x.num, x.exp), (&shifted.0, shifted.1));
        BsElement {
            q: self.q,
            num,
            exp,
            t: &x.t + &y.t,
        }
    }

    pub fn invert(&self, x: &BsElement) -> BsElement {
        let (num, exp) = self.shift(&x.num, x.exp, to_machine(&-&x.t));
        // shifting down can leave factors of q in the numerator
        let (num, exp) = self.reduced(-num, exp);
        BsElement {
            q: self.q,
            num,
            exp,
            t: -&x.t,
        }
    }

    /// Sum 1 + q^m + ... + q^(m(l-1)) as a reduced q-adic, for l >= 1 and
    /// m != 0, via (q^(ml) - 1) / (q^m - 1).
    fn geometric_sum(&self, m: i64, l: u64) -> (BigInt, u32) {
        let u = m.unsigned_abs() as u32;
        let qu = BigInt::from(self.q).pow(u);
        let t = (qu.pow(u32::try_from(l).expect("power exponent out of range")) - 1)
            / (qu - BigInt::one());
        if m > 0 {
            self.reduced(t, 0)
        } else {
            let exp = u * (l - 1) as u32;
            self.reduced(t, exp)
        }
    }

    /// x^l in closed form: (r, m)^l = (r (q^(ml) - 1)/(q^m - 1), m l) when
    /// m != 0, and (l r, 0) when m = 0.
    pub fn pow(&self, x: &BsElement, l: &BigInt) -> BsElement {
        if l.is_negative() {
            return self.invert(&self.pow(x, &-l));
        }
        if l.is_zero() {
            return self.identity();
        }
        let m = to_machine(&x.t);
        if m == 0 {
            return self.element(&x.num * l, x.exp, BigInt::zero());
        }
        let ll = u64::try_from(l).expect("power exponent out of range");
        let (sn, se) = self.geometric_sum(m, ll);
        let (num, exp) = self.reduced(&x.num * sn, x.exp + se);
        BsElement {
            q: self.q,
            num,
            exp,
            t: &x.t * l,
        }
    }

    /// Power problem in BS(1,q).
    ///
    /// With x = (r, m) and y = (s, m'): a nonzero m' forces l = m'/m, which
    /// is verified by one closed-form powering; m' = 0 splits into the
    /// identity target (l = 0), the impossible mixed case, and the purely
    /// rational case l = s/r.
    pub fn pp(&self, x: &BsElement, y: &BsElement) -> PowerAnswer {
        if !y.t.is_zero() {
            if x.t.is_zero() {
                return PowerAnswer::NoSolution;
            }
            let (l, rem) = y.t.div_rem(&x.t);
            if !rem.is_zero() {
                return PowerAnswer::NoSolution;
            }
            if self.pow(x, &l) == *y {
                return PowerAnswer::Solution(l);
            }
            return PowerAnswer::NoSolution;
        }
        if y.num.is_zero() {
            return PowerAnswer::Solution(BigInt::zero());
        }
        if !x.t.is_zero() || x.num.is_zero() {
            return PowerAnswer::NoSolution;
        }
        // l = s / r over Z[1/q]: l * (x.num / q^x.exp) = y.num / q^y.exp.
        let num = &y.num * BigInt::from(self.q).pow(x.exp);
        let den = &x.num * BigInt::from(self.q).pow(y.exp);
        let (l, rem) = num.div_rem(&den);
        if rem.is_zero() {
            PowerAnswer::Solution(l)
        } else {
            PowerAnswer::NoSolution
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Group;
    use crate::word::Word;
    use proptest::prelude::*;

    fn bs(q: u64) -> BaumslagSolitar {
        BaumslagSolitar::new(q, 64).unwrap()
    }

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn defining_relation() {
        // t a t^-1 = a^2 in BS(1,2): (0,1)(1,0)(0,-1) = (2,0).
        let g = bs(2);
        let t = g.element(big(0), 0, big(1));
        let a = g.element(big(1), 0, big(0));
        let lhs = g.multiply(&g.multiply(&t, &a), &g.invert(&t));
        assert_eq!(lhs, g.element(big(2), 0, big(0)));
    }

    #[test]
    fn squares_and_cancellation() {
        let g = bs(2);
        let a = g.element(big(1), 0, big(0));
        let t = g.element(big(0), 0, big(1));
        assert_eq!(g.multiply(&a, &a), g.element(big(2), 0, big(0)));
        assert_eq!(g.multiply(&t, &g.invert(&t)), g.identity());
    }

    #[test]
    fn pp_rational_ratio() {
        let g = bs(2);
        let x = g.element(big(1), 0, big(0));
        let y = g.element(big(5), 0, big(0));
        assert_eq!(g.pp(&x, &y), PowerAnswer::Solution(big(5)));
    }

    #[test]
    fn pp_pure_top() {
        let g = bs(2);
        let t = g.element(big(0), 0, big(1));
        let t3 = g.element(big(0), 0, big(3));
        assert_eq!(g.pp(&t, &t3), PowerAnswer::Solution(big(3)));
    }

    #[test]
    fn pp_mixed_cube() {
        // (1,1)^3 = (1 + 2 + 4, 3) = (7, 3) in BS(1,2).
        let g = bs(2);
        let x = g.element(big(1), 0, big(1));
        let y = g.element(big(7), 0, big(3));
        assert_eq!(g.pow(&x, &big(3)), y);
        assert_eq!(g.pp(&x, &y), PowerAnswer::Solution(big(3)));
    }

    #[test]
    fn pow_matches_iterated_multiplication() {
        for q in [2u64, 3, 5] {
            let g = bs(q);
            let x = g.element(big(3), 1, big(2));
            let mut acc = g.identity();
            for l in 0..8i64 {
                assert_eq!(g.pow(&x, &big(l)), acc, "q={q} l={l}");
                assert_eq!(g.pow(&x, &big(-l)), g.invert(&acc));
                acc = g.multiply(&acc, &x);
            }
        }
    }

    #[test]
    fn cp_is_unsupported() {
        let g = Group::BaumslagSolitar(bs(2));
        let a = g.generator(0).unwrap();
        assert!(matches!(g.cp(&a, &a), Err(Error::Unsupported(_))));
    }

    fn random_word(seed: &[usize]) -> Word {
        Word::from_letters(
            seed.iter()
                .map(|&s| Letter::new(s % 2, (s / 2) % 2 == 1))
                .collect(),
        )
    }

    proptest! {
        #[test]
        fn inversion_stays_canonical(seed in proptest::collection::vec(0usize..4, 0..10), q in 2u64..5) {
            let g = Group::BaumslagSolitar(bs(q));
            let w = random_word(&seed);
            let x = g.evaluate(&w).unwrap();
            // both routes to the inverse must agree structurally
            prop_assert_eq!(g.evaluate(&w.inverse()).unwrap(), g.invert(&x));
        }

        #[test]
        fn relator_insertion_is_invisible(seed in proptest::collection::vec(0usize..4, 0..10), q in 2u64..5) {
            let g = Group::BaumslagSolitar(bs(q));
            let w = random_word(&seed);
            // append t a t^-1 a^-q
            let mut letters = w.letters.clone();
            letters.push(Letter::new(1, false));
            letters.push(Letter::new(0, false));
            letters.push(Letter::new(1, true));
            for _ in 0..q {
                letters.push(Letter::new(0, true));
            }
            let wr = Word::from_letters(letters);
            prop_assert_eq!(g.evaluate(&w).unwrap(), g.evaluate(&wr).unwrap());
        }

        #[test]
        fn pp_agrees_with_brute_scan(xs in proptest::collection::vec(0usize..4, 0..10),
                                     ys in proptest::collection::vec(0usize..4, 0..10)) {
            let gg = bs(2);
            let g = Group::BaumslagSolitar(gg.clone());
            let x = g.evaluate(&random_word(&xs)).unwrap();
            let y = g.evaluate(&random_word(&ys)).unwrap();
            let mut brute = PowerAnswer::NoSolution;
            // scan k = 0, 1, -1, ..., 64, -64: first hit is the answer under
            // the smallest-non-negative convention
            'scan: for mag in 0..=64i64 {
                for k in [mag, -mag] {
                    if g.power(&x, &big(k)) == y {
                        brute = PowerAnswer::Solution(big(k));
                        break 'scan;
                    }
                }
            }
            prop_assert_eq!(gg.pp(x.as_bs(), y.as_bs()), brute);
        }
    }
}
