//! Finitely generated abelian groups `Z^r x Z/n_1 x ... x Z/n_s`.
//!
//! Torsion moduli are fixed small constants of the group, certified
//! beta-smooth at construction. Per-coordinate torsion congruences for the
//! power problem are found by exhaustive scan over `[0, n_i)` instead of
//! extended gcd, which keeps the arithmetic aligned with the smooth-modulus
//! congruence solver.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::{crt_solve, factor_smooth, Congruence};
use crate::error::Error;
use crate::group::PowerAnswer;
use crate::word::Letter;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianGroup {
    free_rank: usize,
    torsion: Vec<u64>,
    beta: u32,
}

/// Coordinate vector; torsion coordinate `i` is kept reduced into
/// `[0, n_i)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AbelianElement {
    free: Vec<BigInt>,
    torsion: Vec<BigInt>,
}

impl std::fmt::Display for AbelianElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.free.len() + self.torsion.len() == 1 {
            let c = self.free.first().or_else(|| self.torsion.first()).unwrap();
            return write!(f, "{c}");
        }
        let free: Vec<String> = self.free.iter().map(|c| c.to_string()).collect();
        let tor: Vec<String> = self.torsion.iter().map(|c| c.to_string()).collect();
        if tor.is_empty() {
            write!(f, "({})", free.join(", "))
        } else {
            write!(f, "({} | {})", free.join(", "), tor.join(", "))
        }
    }
}

impl AbelianElement {
    pub fn free_coords(&self) -> &[BigInt] {
        &self.free
    }

    pub fn torsion_coords(&self) -> &[BigInt] {
        &self.torsion
    }
}

impl AbelianGroup {
    /// `Z^free_rank x Z/torsion[0] x ...`. Every torsion modulus must be
    /// at least 2 and beta-smooth.
    pub fn new(free_rank: usize, torsion: Vec<u64>, beta: u32) -> Result<Self, Error> {
        for &n in &torsion {
            if n < 2 {
                return Err(Error::InvalidGroup(format!(
                    "torsion modulus {n} must be >= 2"
                )));
            }
            factor_smooth(&BigInt::from(n), beta)?;
        }
        Ok(AbelianGroup {
            free_rank,
            torsion,
            beta,
        })
    }

    /// The infinite cyclic group.
    pub fn z(beta: u32) -> Self {
        AbelianGroup::new(1, Vec::new(), beta).unwrap()
    }

    /// The cyclic group of order `n`.
    pub fn z_mod(n: u64, beta: u32) -> Result<Self, Error> {
        AbelianGroup::new(0, vec![n], beta)
    }

    /// The trivial group.
    pub fn trivial(beta: u32) -> Self {
        AbelianGroup::new(0, Vec::new(), beta).unwrap()
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion_moduli(&self) -> &[u64] {
        &self.torsion
    }

    pub fn beta(&self) -> u32 {
        self.beta
    }

    pub fn num_generators(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    pub fn is_torsion_free(&self) -> bool {
        self.torsion.is_empty()
    }

    pub fn describe(&self) -> String {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for &n in &self.torsion {
            parts.push(format!("Z/{n}"));
        }
        if parts.is_empty() {
            "1".to_string()
        } else if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            format!("product({})", parts.join(", "))
        }
    }

    pub fn identity(&self) -> AbelianElement {
        AbelianElement {
            free: vec![BigInt::zero(); self.free_rank],
            torsion: vec![BigInt::zero(); self.torsion.len()],
        }
    }

    /// Build an element from raw coordinates, reducing torsion entries.
    pub fn element(&self, free: Vec<BigInt>, torsion: Vec<BigInt>) -> AbelianElement {
        assert_eq!(free.len(), self.free_rank);
        assert_eq!(torsion.len(), self.torsion.len());
        let torsion = torsion
            .into_iter()
            .zip(&self.torsion)
            .map(|(c, &n)| c.mod_floor(&BigInt::from(n)))
            .collect();
        AbelianElement { free, torsion }
    }

    pub fn letter(&self, l: Letter) -> AbelianElement {
        let mut e = self.identity();
        let delta = if l.inverse { -BigInt::one() } else { BigInt::one() };
        if l.gen < self.free_rank {
            e.free[l.gen] = delta;
        } else {
            let i = l.gen - self.free_rank;
            e.torsion[i] = delta.mod_floor(&BigInt::from(self.torsion[i]));
        }
        e
    }

    pub fn multiply(&self, x: &AbelianElement, y: &AbelianElement) -> AbelianElement {
        let free = x.free.iter().zip(&y.free).map(|(a, b)| a + b).collect();
        let torsion = x
            .torsion
            .iter()
            .zip(&y.torsion)
            .zip(&self.torsion)
            .map(|((a, b), &n)| (a + b).mod_floor(&BigInt::from(n)))
            .collect();
        AbelianElement { free, torsion }
    }

    pub fn invert(&self, x: &AbelianElement) -> AbelianElement {
        let free = x.free.iter().map(|a| -a).collect();
        let torsion = x
            .torsion
            .iter()
            .zip(&self.torsion)
            .map(|(a, &n)| (-a).mod_floor(&BigInt::from(n)))
            .collect();
        AbelianElement { free, torsion }
    }

    /// Power problem `k*u = v`, coordinate-wise.
    ///
    /// Free coordinates pin `k` to an exact ratio; torsion coordinates each
    /// contribute a congruence found by scanning `[0, n_i)`, and the system
    /// is intersected by the congruence solver.
    pub fn pp(&self, u: &AbelianElement, v: &AbelianElement) -> Result<PowerAnswer, Error> {
        // Free part: any nonzero u-coordinate pins k exactly.
        let mut pinned: Option<BigInt> = None;
        for (uc, vc) in u.free.iter().zip(&v.free) {
            if uc.is_zero() {
                if !vc.is_zero() {
                    return Ok(PowerAnswer::NoSolution);
                }
            } else {
                let (q, r) = vc.div_rem(uc);
                if !r.is_zero() {
                    return Ok(PowerAnswer::NoSolution);
                }
                match &pinned {
                    None => pinned = Some(q),
                    Some(k) if *k == q => {}
                    Some(_) => return Ok(PowerAnswer::NoSolution),
                }
            }
        }

        if let Some(k) = pinned {
            // u has infinite order; verify the torsion part directly.
            for ((uc, vc), &n) in u.torsion.iter().zip(&v.torsion).zip(&self.torsion) {
                if (&k * uc).mod_floor(&BigInt::from(n)) != *vc {
                    return Ok(PowerAnswer::NoSolution);
                }
            }
            return Ok(PowerAnswer::Solution(k));
        }

        // Pure torsion: collect one congruence per coordinate.
        let mut system = Vec::new();
        for ((uc, vc), &n) in u.torsion.iter().zip(&v.torsion).zip(&self.torsion) {
            let nn = BigInt::from(n);
            let mut hits = Vec::new();
            let mut k = BigInt::zero();
            while k < nn {
                if (&k * uc).mod_floor(&nn) == *vc {
                    hits.push(k.clone());
                }
                k += 1;
            }
            match hits.len() {
                0 => return Ok(PowerAnswer::NoSolution),
                1 => system.push(Congruence::finite(hits[0].clone(), nn)),
                _ => {
                    let period = &hits[1] - &hits[0];
                    system.push(Congruence::finite(hits[0].clone(), period));
                }
            }
        }

        if system.is_empty() {
            // k * 0 = 0: every k works; smallest non-negative is 0.
            return Ok(PowerAnswer::Solution(BigInt::zero()));
        }
        Ok(match crt_solve(&system, self.beta)? {
            Some(c) => PowerAnswer::Solution(c.residue().clone()),
            None => PowerAnswer::NoSolution,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{Element, Group, Order};
    use crate::word::Word;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn z() -> Group {
        Group::Abelian(AbelianGroup::z(64))
    }

    fn z_mod(n: u64) -> Group {
        Group::Abelian(AbelianGroup::z_mod(n, 64).unwrap())
    }

    #[test]
    fn evaluate_free_reduction() {
        let g = z();
        let w = Word::from_letters(vec![
            Letter::new(0, false),
            Letter::new(0, false),
            Letter::new(0, true),
        ]);
        let e = g.evaluate(&w).unwrap();
        assert_eq!(e, g.generator(0).unwrap());
        assert_eq!(g.evaluate(&Word::empty()).unwrap(), g.identity());
    }

    #[test]
    fn evaluate_mod_six() {
        let g = z_mod(6);
        let w = Word::from_letters(vec![Letter::new(0, false); 7]);
        assert_eq!(g.evaluate(&w).unwrap(), g.generator(0).unwrap());
        let w6 = Word::from_letters(vec![Letter::new(0, false); 6]);
        assert!(g.wp(&g.evaluate(&w6).unwrap()));
    }

    #[test]
    fn pp_componentwise_ratio() {
        let g2 = AbelianGroup::new(2, vec![], 64).unwrap();
        let u = g2.element(vec![big(2), big(4)], vec![]);
        let v = g2.element(vec![big(6), big(12)], vec![]);
        assert_eq!(g2.pp(&u, &v).unwrap(), PowerAnswer::Solution(big(3)));
    }

    #[test]
    fn pp_mixed_free_torsion() {
        // Z x Z/4: u = (1, 1), v = (5, 1) -> k = 5 (5 = 1 mod 4).
        let g = AbelianGroup::new(1, vec![4], 64).unwrap();
        let u = g.element(vec![big(1)], vec![big(1)]);
        let v = g.element(vec![big(5)], vec![big(1)]);
        assert_eq!(g.pp(&u, &v).unwrap(), PowerAnswer::Solution(big(5)));
    }

    #[test]
    fn pp_torsion_no_solution() {
        // Z/6: 2k mod 6 only reaches {0, 2, 4}.
        let g = AbelianGroup::z_mod(6, 64).unwrap();
        let u = g.element(vec![], vec![big(2)]);
        let v = g.element(vec![], vec![big(3)]);
        assert_eq!(g.pp(&u, &v).unwrap(), PowerAnswer::NoSolution);
    }

    #[test]
    fn pp_examples_from_contract() {
        let g = z();
        let two = g.power(&g.generator(0).unwrap(), &big(2));
        let ten = g.power(&g.generator(0).unwrap(), &big(10));
        let three = g.power(&g.generator(0).unwrap(), &big(3));
        assert_eq!(g.pp(&two, &ten).unwrap(), PowerAnswer::Solution(big(5)));
        assert_eq!(g.pp(&two, &three).unwrap(), PowerAnswer::NoSolution);

        let g6 = z_mod(6);
        let two = g6.power(&g6.generator(0).unwrap(), &big(2));
        let four = g6.power(&g6.generator(0).unwrap(), &big(4));
        assert_eq!(g6.pp(&two, &four).unwrap(), PowerAnswer::Solution(big(2)));
    }

    #[test]
    fn membership_from_power_problem() {
        let g = z();
        let two = g.power(&g.generator(0).unwrap(), &big(2));
        let minus_four = g.power(&g.generator(0).unwrap(), &big(-4));
        assert!(!g.csmmp(&two, &minus_four).unwrap());
        assert!(g.csgmp(&two, &minus_four).unwrap());

        let g6 = z_mod(6);
        let two = g6.power(&g6.generator(0).unwrap(), &big(2));
        let four = g6.power(&g6.generator(0).unwrap(), &big(4));
        assert!(g6.csmmp(&two, &four).unwrap());
    }

    #[test]
    fn order_values() {
        let g = z();
        assert_eq!(g.order(&g.identity()).unwrap(), Order::Finite(big(1)));
        assert_eq!(g.order(&g.generator(0).unwrap()).unwrap(), Order::Infinity);

        let g6 = z_mod(6);
        assert_eq!(
            g6.order(&g6.generator(0).unwrap()).unwrap(),
            Order::Finite(big(6))
        );
    }

    #[test]
    fn order_is_lcm_of_coordinate_orders() {
        // Exhaustive over Z/4 x Z/6.
        let g = AbelianGroup::new(0, vec![4, 6], 64).unwrap();
        let gg = Group::Abelian(g.clone());
        for a in 0..4i64 {
            for b in 0..6i64 {
                let e = Element::Abelian(g.element(vec![], vec![big(a), big(b)]));
                let ord_a = 4 / num_integer::gcd(a, 4);
                let ord_b = 6 / num_integer::gcd(b, 6);
                let want = num_integer::lcm(ord_a.max(1), ord_b.max(1));
                assert_eq!(gg.order(&e).unwrap(), Order::Finite(big(want)));
            }
        }
    }

    #[test]
    fn conjugacy_is_equality() {
        let g = z_mod(6);
        let x = g.generator(0).unwrap();
        let y = g.power(&x, &big(2));
        assert!(g.cp(&x, &x).unwrap());
        assert!(!g.cp(&x, &y).unwrap());
    }

    #[test]
    fn rejects_non_smooth_torsion() {
        assert!(matches!(
            AbelianGroup::z_mod(67, 64),
            Err(Error::NotSmooth { .. })
        ));
        assert!(AbelianGroup::z_mod(64, 64).is_ok());
    }
}
