//! The power problem in wreath products: given x = (b, f) and y = (c, g),
//! find k with x^k = y.
//!
//! The function part of (b, f)^k evaluated at t b^l is the ordered product
//! of f's values over the window [l-k+1, l] of exponents along the coset
//! t<b>. Everything here works on per-coset decompositions of supports
//! into (exponent, value) lists. For infinite-order b the candidate k is
//! pinned by the top group and verified symbolically; for finite-order b
//! the problem reduces to a power problem over the bottom group at finitely
//! many test points, yielding a congruence system over smooth moduli.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{crt_solve, Congruence, Modulus};
use crate::error::Error;
use crate::group::{Element, Group, Order, PowerAnswer};
use crate::wreath::{WreathElement, WreathGroup};

/// Per-coset view of a support: for each representative `reps[i]`, the
/// strictly increasing list of exponents e with value f(reps[i] b^e).
#[derive(Debug, Clone)]
pub struct CosetDecomposition {
    pub reps: Vec<Element>,
    pub lists: Vec<Vec<(BigInt, Element)>>,
}

/// Representatives of the pairwise distinct <b>-cosets met by a support,
/// in order of first appearance.
pub fn coset_reps(
    bg: &Group,
    support: &[(Element, Element)],
    b: &Element,
) -> Result<Vec<Element>, Error> {
    let mut reps: Vec<Element> = Vec::new();
    for (key, _) in support {
        let mut covered = false;
        for t in &reps {
            let w = bg.multiply(&bg.invert(t), key);
            if bg.csgmp(b, &w)? {
                covered = true;
                break;
            }
        }
        if !covered {
            reps.push(key.clone());
        }
    }
    Ok(reps)
}

/// Does every support key of `g` lie in one of the cosets `reps[i] <b>`?
pub fn support_in_cosets(
    bg: &Group,
    support: &[(Element, Element)],
    b: &Element,
    reps: &[Element],
) -> Result<bool, Error> {
    for (key, _) in support {
        let mut covered = false;
        for t in reps {
            let w = bg.multiply(&bg.invert(t), key);
            if bg.csgmp(b, &w)? {
                covered = true;
                break;
            }
        }
        if !covered {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Decompose a support along the given coset representatives; exponents
/// come from the top group's power problem and are sorted per coset.
pub fn coset_decompose(
    bg: &Group,
    support: &[(Element, Element)],
    b: &Element,
    reps: &[Element],
) -> Result<CosetDecomposition, Error> {
    let mut lists: Vec<Vec<(BigInt, Element)>> = vec![Vec::new(); reps.len()];
    for (key, val) in support {
        let mut placed = false;
        for (i, t) in reps.iter().enumerate() {
            let w = bg.multiply(&bg.invert(t), key);
            if let PowerAnswer::Solution(e) = bg.pp(b, &w)? {
                lists[i].push((e, val.clone()));
                placed = true;
                break;
            }
        }
        if !placed {
            return Err(Error::KeyOutsideCosets);
        }
    }
    for list in &mut lists {
        list.sort_by(|x, y| x.0.cmp(&y.0));
        debug_assert!(list.windows(2).all(|w| w[0].0 < w[1].0));
    }
    Ok(CosetDecomposition {
        reps: reps.to_vec(),
        lists,
    })
}

/// Value of the function part of (b, f)^k at t b^l, for infinite-order b:
/// the ordered product of the values a_i with e_i in [l-k+1, l].
pub fn power_function_at(
    ag: &Group,
    dec: &[(BigInt, Element)],
    k: &BigInt,
    ell: &BigInt,
) -> Element {
    let lo = ell - k + 1;
    let mut acc = ag.identity();
    for (e, a) in dec {
        if *e >= lo && e <= ell {
            acc = ag.multiply(&acc, a);
        }
    }
    acc
}

/// Wrap-aware variant for finite order(b) = period: exponents repeat
/// modulo the period, so each support point has exactly one representative
/// in any window of length k <= period.
pub fn power_function_at_mod(
    ag: &Group,
    dec: &[(BigInt, Element)],
    k: &BigInt,
    ell: &BigInt,
    period: &BigInt,
) -> Element {
    debug_assert!(k.is_positive() && k <= period);
    let lo: BigInt = ell - k + 1;
    let mut window: Vec<(BigInt, &Element)> = Vec::with_capacity(dec.len());
    for (e, a) in dec {
        // smallest e + lambda*period >= lo
        let lambda = (&lo - e + period - BigInt::one()).div_floor(period);
        let pos = e + lambda * period;
        if pos <= *ell {
            window.push((pos, a));
        }
    }
    window.sort_by(|x, y| x.0.cmp(&y.0));
    let mut acc = ag.identity();
    for (_, a) in window {
        acc = ag.multiply(&acc, a);
    }
    acc
}

/// Piecewise-constant description of l -> value of (b, f)^k at t b^l over
/// one period of a finite-order b: boundaries g_0 < ... < g_nu with
/// g_nu = g_0 + period, and the value on (g_{i-1}, g_i] stored in
/// `values[i-1]`. The number of segments is at most 2n + 1 for a coset
/// support of size n.
#[derive(Debug, Clone)]
pub struct StepFunction {
    boundaries: Vec<BigInt>,
    values: Vec<Element>,
    period: BigInt,
}

impl StepFunction {
    /// Build the step description of the k-th power's function part from a
    /// single-coset decomposition. `k = 0` yields the constant identity.
    pub fn from_power(ag: &Group, dec: &[(BigInt, Element)], k: &BigInt, period: &BigInt) -> Self {
        assert!(period.is_positive());
        assert!(!k.is_negative() && k <= period);
        if k.is_zero() || dec.is_empty() {
            return StepFunction {
                boundaries: vec![-BigInt::one(), period - 1],
                values: vec![ag.identity()],
                period: period.clone(),
            };
        }
        // The window product changes right after l = e - 1 (a point enters
        // at the top) and after l = e + k - 1 (it leaves at the bottom).
        let mut cuts: BTreeSet<BigInt> = BTreeSet::new();
        for (e, _) in dec {
            cuts.insert((e - 1i32).mod_floor(period));
            cuts.insert((e + k - 1i32).mod_floor(period));
        }
        let mut boundaries: Vec<BigInt> = cuts.into_iter().collect();
        let first = boundaries[0].clone();
        boundaries.push(&first + period);
        let values = boundaries[1..]
            .iter()
            .map(|g| power_function_at_mod(ag, dec, k, g, period))
            .collect();
        StepFunction {
            boundaries,
            values,
            period: period.clone(),
        }
    }

    pub fn boundaries(&self) -> &[BigInt] {
        &self.boundaries
    }

    pub fn segments(&self) -> usize {
        self.values.len()
    }

    /// Value at any integer offset, via reduction into the stored period.
    pub fn value_at(&self, ell: &BigInt) -> &Element {
        let g0 = &self.boundaries[0];
        let reduced = g0 + 1 + (ell - g0 - 1i32).mod_floor(&self.period);
        let idx = self.boundaries[1..].partition_point(|g| *g < reduced);
        &self.values[idx]
    }
}

/// Power problem in A wr B (top-group orders split the procedure).
pub fn power_test(
    wr: &WreathGroup,
    x: &WreathElement,
    y: &WreathElement,
) -> Result<PowerAnswer, Error> {
    let bg = wr.b();
    let b = &x.top;
    let c = &y.top;
    match bg.order(b)? {
        Order::Infinity => {
            let k = match bg.pp(b, c)? {
                PowerAnswer::NoSolution => return Ok(PowerAnswer::NoSolution),
                PowerAnswer::Solution(k) => k,
            };
            if k.is_zero() {
                // c = 1, so only x^0 = 1 is possible.
                return Ok(if wr.wp(y) {
                    PowerAnswer::Solution(BigInt::zero())
                } else {
                    PowerAnswer::NoSolution
                });
            }
            if k.is_negative() {
                // x^k = y iff x^(-k) = y^(-1); the flipped instance pins
                // the positive exponent -k.
                let yi = wr.invert(y);
                return Ok(match power_test(wr, x, &yi)? {
                    PowerAnswer::Solution(j) => PowerAnswer::Solution(-j),
                    PowerAnswer::NoSolution => PowerAnswer::NoSolution,
                });
            }
            if verify_power_infinite(wr, x, y, &k)? {
                Ok(PowerAnswer::Solution(k))
            } else {
                Ok(PowerAnswer::NoSolution)
            }
        }
        Order::Finite(period) => power_test_finite(wr, x, y, &period),
    }
}

/// Check x^k = y for pinned k > 0 and infinite-order top, comparing the
/// k-th power's function part against g coset by coset.
fn verify_power_infinite(
    wr: &WreathGroup,
    x: &WreathElement,
    y: &WreathElement,
    k: &BigInt,
) -> Result<bool, Error> {
    let ag = wr.a();
    let bg = wr.b();
    let b = &x.top;
    let reps = coset_reps(bg, &x.support, b)?;
    if !support_in_cosets(bg, &y.support, b, &reps)? {
        return Ok(false);
    }
    let fdec = coset_decompose(bg, &x.support, b, &reps)?;
    let gdec = coset_decompose(bg, &y.support, b, &reps)?;
    let id_a = ag.identity();

    for (flist, glist) in fdec.lists.iter().zip(&gdec.lists) {
        // Values must agree on g's support.
        for (e, a) in glist {
            if power_function_at(ag, flist, k, e) != *a {
                return Ok(false);
            }
        }
        // No support outside g's: enumerate the constant cells of the
        // window product. A cell holding a nontrivial value wider than
        // |supp(g)| on this coset already overflows; otherwise each of its
        // points must be one of g's exponents.
        let n = flist.len();
        let gexp: Vec<BigInt> = glist.iter().map(|(e, _)| e.clone()).collect();
        for i in 1..=n {
            for j in (i + 1)..=(n + 1) {
                let mut alpha = id_a.clone();
                for (_, a) in &flist[(i - 1)..(j - 1)] {
                    alpha = ag.multiply(&alpha, a);
                }
                if alpha == id_a {
                    continue;
                }
                // cell bounds per the window rule, with e_0 = -inf and
                // e_{n+1} = +inf dropped where they cannot bind
                let mut lo = flist[j - 2].0.clone();
                if i >= 2 {
                    lo = lo.max(&flist[i - 2].0 + k);
                }
                let mut hi = &flist[i - 1].0 + k - 1i32;
                if j <= n {
                    hi = hi.min(&flist[j - 1].0 - 1);
                }
                if lo > hi {
                    continue;
                }
                let width = &hi - &lo + 1;
                if width > BigInt::from(gexp.len()) {
                    return Ok(false);
                }
                let mut l = lo;
                while l <= hi {
                    if gexp.binary_search(&l).is_err() {
                        return Ok(false);
                    }
                    l += 1;
                }
            }
        }
    }
    Ok(true)
}

/// Finite-order branch: with order(b) = K and k0 the least non-negative
/// exponent with b^k0 = c, solutions are k0 + K x for x solving
/// (x^K)^x' = y x^(-k0), a power problem over the bottom group evaluated
/// at the step boundaries of the three involved functions. The resulting
/// congruences over smooth moduli are intersected exactly.
fn power_test_finite(
    wr: &WreathGroup,
    x: &WreathElement,
    y: &WreathElement,
    period: &BigInt,
) -> Result<PowerAnswer, Error> {
    let ag = wr.a();
    let bg = wr.b();
    let b = &x.top;
    let k0 = match bg.pp(b, &y.top)? {
        PowerAnswer::NoSolution => return Ok(PowerAnswer::NoSolution),
        PowerAnswer::Solution(k0) => k0,
    };
    debug_assert!(!k0.is_negative() && k0 < *period);

    let reps = coset_reps(bg, &x.support, b)?;
    if !support_in_cosets(bg, &y.support, b, &reps)? {
        return Ok(PowerAnswer::NoSolution);
    }
    let fdec = coset_decompose(bg, &x.support, b, &reps)?;
    let gdec = coset_decompose(bg, &y.support, b, &reps)?;

    let mut system: Vec<Congruence> = Vec::new();
    for (flist, glist) in fdec.lists.iter().zip(&gdec.lists) {
        let full = StepFunction::from_power(ag, flist, period, period);
        let partial = StepFunction::from_power(ag, flist, &k0, period);
        let target = StepFunction::from_power(ag, glist, &BigInt::one(), period);

        // Both sides of base^x = target are constant between consecutive
        // test points, so sampling them decides the equation everywhere.
        let mut points: BTreeSet<BigInt> = BTreeSet::new();
        for g in full.boundaries() {
            points.insert(g.mod_floor(period));
        }
        for g in partial.boundaries() {
            points.insert((g - &k0).mod_floor(period));
        }
        for g in target.boundaries() {
            points.insert((g - &k0).mod_floor(period));
        }

        for ell in points {
            let base = full.value_at(&ell);
            let shifted = &ell + &k0;
            let rhs = ag.multiply(
                target.value_at(&shifted),
                &ag.invert(partial.value_at(&shifted)),
            );
            match ag.pp(base, &rhs)? {
                PowerAnswer::NoSolution => return Ok(PowerAnswer::NoSolution),
                PowerAnswer::Solution(kl) => match ag.order(base)? {
                    Order::Finite(n) => system.push(Congruence::finite(kl, n)),
                    Order::Infinity => system.push(Congruence::exact(kl)),
                },
            }
        }
    }

    let combined = if system.is_empty() {
        Congruence::any()
    } else {
        match crt_solve(&system, ag.smoothness_bound())? {
            None => return Ok(PowerAnswer::NoSolution),
            Some(c) => c,
        }
    };
    // k = k0 + K x. With a finite combined modulus the residue is already
    // the least non-negative x, so k is minimal; an exact constraint means
    // x (and hence x's power class) is unique.
    let k = &k0 + period * combined.residue();
    debug_assert!(
        matches!(combined.modulus(), Modulus::Finite(_)) || {
            true // exact solutions may be negative; nothing to normalize
        }
    );
    Ok(PowerAnswer::Solution(k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::AbelianGroup;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn z_group() -> Group {
        Group::Abelian(AbelianGroup::z(64))
    }

    fn z_mod(n: u64) -> Group {
        Group::Abelian(AbelianGroup::z_mod(n, 64).unwrap())
    }

    fn z_elem(n: i64) -> Element {
        let z = AbelianGroup::z(64);
        Element::Abelian(z.element(vec![big(n)], vec![]))
    }

    fn zmod_elem(n: u64, v: i64) -> Element {
        let g = AbelianGroup::z_mod(n, 64).unwrap();
        Element::Abelian(g.element(vec![], vec![big(v)]))
    }

    fn lamplighter() -> WreathGroup {
        WreathGroup::new(z_mod(2), z_group())
    }

    fn lamp_support(keys: &[i64]) -> Vec<(Element, Element)> {
        keys.iter()
            .map(|&k| (z_elem(k), zmod_elem(2, 1)))
            .collect()
    }

    #[test]
    fn reps_merge_even_keys() {
        let g = lamplighter();
        let f = lamp_support(&[0, 1, 2, 4]);
        let reps = coset_reps(g.b(), &f, &z_elem(2)).unwrap();
        assert_eq!(reps, vec![z_elem(0), z_elem(1)]);
    }

    #[test]
    fn reps_under_trivial_subgroup() {
        let g = lamplighter();
        let f = lamp_support(&[0, 3]);
        let reps = coset_reps(g.b(), &f, &z_elem(0)).unwrap();
        assert_eq!(reps, vec![z_elem(0), z_elem(3)]);
        assert!(coset_reps(g.b(), &[], &z_elem(2)).unwrap().is_empty());
    }

    #[test]
    fn coset_membership_checks() {
        let g = lamplighter();
        let reps = vec![z_elem(0)];
        assert!(support_in_cosets(g.b(), &[], &z_elem(2), &reps).unwrap());
        assert!(support_in_cosets(g.b(), &lamp_support(&[4]), &z_elem(2), &reps).unwrap());
        assert!(!support_in_cosets(g.b(), &lamp_support(&[1]), &z_elem(2), &reps).unwrap());
    }

    #[test]
    fn decompose_by_parity() {
        let g = lamplighter();
        let f = lamp_support(&[0, 4, 1]);
        let reps = vec![z_elem(0), z_elem(1)];
        let dec = coset_decompose(g.b(), &f, &z_elem(2), &reps).unwrap();
        let exps: Vec<Vec<i64>> = dec
            .lists
            .iter()
            .map(|l| l.iter().map(|(e, _)| i64::try_from(e).unwrap()).collect())
            .collect();
        assert_eq!(exps, vec![vec![0, 2], vec![0]]);
    }

    #[test]
    fn decompose_finite_top() {
        let top = z_mod(4);
        let g = WreathGroup::new(z_mod(2), top);
        let f: Vec<_> = [0i64, 2]
            .iter()
            .map(|&k| (zmod_elem(4, k), zmod_elem(2, 1)))
            .collect();
        let b = zmod_elem(4, 1);
        let reps = coset_reps(g.b(), &f, &b).unwrap();
        assert_eq!(reps.len(), 1);
        let dec = coset_decompose(g.b(), &f, &b, &reps).unwrap();
        let exps: Vec<i64> = dec.lists[0]
            .iter()
            .map(|(e, _)| i64::try_from(e).unwrap())
            .collect();
        assert_eq!(exps, vec![0, 2]);
    }

    #[test]
    fn decompose_rejects_stray_key() {
        let g = lamplighter();
        let f = lamp_support(&[1]);
        let reps = vec![z_elem(0)];
        assert!(matches!(
            coset_decompose(g.b(), &f, &z_elem(2), &reps),
            Err(Error::KeyOutsideCosets)
        ));
    }

    /// Window products against the spec'd sample decomposition, with
    /// non-commuting-sensitive values from Z^2 to pin the order.
    #[test]
    fn window_product_samples() {
        let ag = Group::Abelian(AbelianGroup::new(2, vec![], 64).unwrap());
        let a1 = ag.generator(0).unwrap();
        let a2 = ag.generator(1).unwrap();
        let dec = vec![(big(0), a1.clone()), (big(3), a2.clone())];
        let k = big(5);
        assert_eq!(power_function_at(&ag, &dec, &k, &big(0)), a1);
        assert_eq!(
            power_function_at(&ag, &dec, &k, &big(4)),
            ag.multiply(&a1, &a2)
        );
        assert_eq!(power_function_at(&ag, &dec, &k, &big(8)), ag.identity());
        // k = 1 reproduces the function itself at each exponent
        for (e, a) in &dec {
            assert_eq!(power_function_at(&ag, &dec, &big(1), e), *a);
        }
        assert_eq!(power_function_at(&ag, &[], &k, &big(0)), ag.identity());
    }

    /// Definitional cross-check: the window product agrees with explicit
    /// k-fold wreath multiplication, read off at every coset point.
    #[test]
    fn window_product_matches_iterated_multiplication() {
        let wr = WreathGroup::new(z_mod(6), z_group());
        let ag = wr.a();
        let dec: Vec<(BigInt, Element)> = vec![
            (big(-2), zmod_elem(6, 2)),
            (big(0), zmod_elem(6, 1)),
            (big(3), zmod_elem(6, 5)),
        ];
        let x = wr.element(
            z_elem(1),
            dec.iter().map(|(e, a)| (z_elem(i64::try_from(e).unwrap()), a.clone())),
        );
        let mut acc = wr.identity();
        for k in 1..=9i64 {
            acc = wr.multiply(&acc, &x);
            for l in -14..=14i64 {
                let want = acc
                    .support
                    .iter()
                    .find(|(key, _)| *key == z_elem(l))
                    .map(|(_, v)| v.clone())
                    .unwrap_or_else(|| ag.identity());
                assert_eq!(
                    power_function_at(ag, &dec, &big(k), &big(l)),
                    want,
                    "k={k} l={l}"
                );
            }
        }
    }

    #[test]
    fn wrapped_window_product_matches_iterated_multiplication() {
        // Z/2 wr Z/4: exponents wrap modulo ord(b) = 4.
        let wr = WreathGroup::new(z_mod(2), z_mod(4));
        let ag = wr.a();
        let dec: Vec<(BigInt, Element)> = vec![(big(2), zmod_elem(2, 1))];
        let x = wr.element(zmod_elem(4, 1), [(zmod_elem(4, 2), zmod_elem(2, 1))]);
        let mut acc = x.clone();
        for k in 1..=4i64 {
            for l in 0..4i64 {
                let want = acc
                    .support
                    .iter()
                    .find(|(key, _)| *key == zmod_elem(4, l))
                    .map(|(_, v)| v.clone())
                    .unwrap_or_else(|| ag.identity());
                assert_eq!(
                    power_function_at_mod(ag, &dec, &big(k), &big(l), &big(4)),
                    want,
                    "k={k} l={l}"
                );
            }
            acc = wr.multiply(&acc, &x);
        }
    }

    #[test]
    fn step_function_invariants() {
        let ag = z_mod(6);
        let dec: Vec<(BigInt, Element)> = vec![(big(0), zmod_elem(6, 1)), (big(5), zmod_elem(6, 4))];
        let period = big(8);
        for k in 1..=8i64 {
            let sf = StepFunction::from_power(&ag, &dec, &big(k), &period);
            assert!(sf.segments() <= 2 * dec.len() + 1, "k={k}");
            let bnd = sf.boundaries();
            assert_eq!(bnd[bnd.len() - 1], &bnd[0] + &period);
            for l in -10..=10i64 {
                assert_eq!(
                    *sf.value_at(&big(l)),
                    power_function_at_mod(&ag, &dec, &big(k), &big(l), &period),
                    "k={k} l={l}"
                );
            }
        }
    }

    #[test]
    fn power_test_lamplighter_cube() {
        let wr = lamplighter();
        let x = wr.element(z_elem(1), lamp_support(&[0]));
        let cube = wr.multiply(&wr.multiply(&x, &x), &x);
        assert_eq!(cube.top, z_elem(3));
        assert_eq!(
            power_test(&wr, &x, &cube).unwrap(),
            PowerAnswer::Solution(big(3))
        );
        // (2, {0 -> 1}) differs from x^2 = (2, {0 -> 1, 1 -> 1})
        let not_square = wr.element(z_elem(2), lamp_support(&[0]));
        assert_eq!(
            power_test(&wr, &x, &not_square).unwrap(),
            PowerAnswer::NoSolution
        );
    }

    #[test]
    fn power_test_negative_exponent() {
        let wr = lamplighter();
        let x = wr.element(z_elem(1), lamp_support(&[0]));
        let y = wr.invert(&wr.multiply(&x, &x));
        assert_eq!(
            power_test(&wr, &x, &y).unwrap(),
            PowerAnswer::Solution(big(-2))
        );
    }

    #[test]
    fn power_test_finite_top_branch() {
        // Z/2 wr Z/4, x = (1, {0 -> 1}) has order 8; x^5 is found with the
        // congruence branch (K = 4, smooth moduli).
        let wr = WreathGroup::new(z_mod(2), z_mod(4));
        let x = wr.element(zmod_elem(4, 1), [(zmod_elem(4, 0), zmod_elem(2, 1))]);
        let mut pow = wr.identity();
        let mut powers = Vec::new();
        for _ in 0..16 {
            powers.push(pow.clone());
            pow = wr.multiply(&pow, &x);
        }
        assert_eq!(
            power_test(&wr, &x, &powers[5]).unwrap(),
            PowerAnswer::Solution(big(5))
        );
        // order via the group contract
        let g = Group::Wreath(Box::new(wr.clone()));
        assert_eq!(
            g.order(&Element::Wreath(Box::new(x))).unwrap(),
            Order::Finite(big(8))
        );
    }

    #[test]
    fn power_test_identity_cases() {
        let wr = lamplighter();
        let id = wr.identity();
        assert_eq!(
            power_test(&wr, &id, &id).unwrap(),
            PowerAnswer::Solution(big(0))
        );
        let lamp = wr.element(z_elem(0), lamp_support(&[0]));
        // 1^k = (0, {0 -> 1}) has no solution
        assert_eq!(
            power_test(&wr, &id, &lamp).unwrap(),
            PowerAnswer::NoSolution
        );
        // lamp^k = lamp^-1 = lamp: k = 1, so order 2
        assert_eq!(
            power_test(&wr, &lamp, &wr.invert(&lamp)).unwrap(),
            PowerAnswer::Solution(big(1))
        );
    }
}
