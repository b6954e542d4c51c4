//! Ground-truth engines for cross-validation: breadth-first Cayley-ball
//! enumeration, brute-force conjugacy and power search, and the
//! closed-form conjugacy criterion for the lamplighter group Z/2 wr Z.
//!
//! These are oracles for tests and the selftest; the decision procedures
//! never call them (the one exception being the bounded, best-effort
//! conjugacy-witness search, which cannot affect any verdict).

use num_bigint::BigInt;
use num_traits::Zero;
use std::collections::BTreeMap;

use crate::error::Error;
use crate::group::{Element, Group, PowerAnswer};
use crate::word::{Letter, Word};
use crate::DEFAULT_BALL_CAP;

/// All distinct elements represented by words of length <= radius, each
/// with a shortest witnessing word.
#[derive(Debug, Clone)]
pub struct BallIndex {
    radius: usize,
    /// True when the enumeration closed before reaching the radius, i.e.
    /// the ball is the whole (finite) group.
    complete: bool,
    elements: Vec<(Element, Word)>,
}

impl BallIndex {
    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn is_complete_group(&self) -> bool {
        self.complete
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> impl Iterator<Item = &Element> {
        self.elements.iter().map(|(e, _)| e)
    }

    pub fn entries(&self) -> &[(Element, Word)] {
        &self.elements
    }

    pub fn word_for(&self, e: &Element) -> Option<&Word> {
        self.elements
            .iter()
            .find(|(x, _)| x == e)
            .map(|(_, w)| w)
    }
}

/// Breadth-first closure over generator multiplication, deduplicated by
/// canonical form, default radius cap.
pub fn enumerate_ball(group: &Group, radius: usize) -> Result<BallIndex, Error> {
    enumerate_ball_with_cap(group, radius, DEFAULT_BALL_CAP)
}

/// Ball enumeration with an explicit cap; `radius > cap` is refused.
pub fn enumerate_ball_with_cap(
    group: &Group,
    radius: usize,
    cap: usize,
) -> Result<BallIndex, Error> {
    if radius > cap {
        return Err(Error::CapExceeded { radius, cap });
    }
    let letters: Vec<Letter> = (0..group.num_generators())
        .flat_map(|g| [Letter::new(g, false), Letter::new(g, true)])
        .collect();
    let mut seen: BTreeMap<Element, Word> = BTreeMap::new();
    seen.insert(group.identity(), Word::empty());
    let mut frontier: Vec<Element> = vec![group.identity()];
    let mut complete = false;
    for _ in 0..radius {
        let mut next = Vec::new();
        for e in &frontier {
            let base_word = seen.get(e).expect("frontier element is indexed").clone();
            for &l in &letters {
                let le = group.letter(l)?;
                let prod = group.multiply(e, &le);
                if !seen.contains_key(&prod) {
                    let mut w = base_word.clone();
                    w.letters.push(l);
                    seen.insert(prod.clone(), w);
                    next.push(prod);
                }
            }
        }
        if next.is_empty() {
            complete = true;
            break;
        }
        frontier = next;
    }
    if !complete {
        // one probe round: the ball is the whole group when the last
        // frontier generates nothing new
        complete = frontier.iter().all(|e| {
            letters.iter().all(|&l| {
                let le = group.letter(l).expect("letter indices checked above");
                seen.contains_key(&group.multiply(e, &le))
            })
        });
    }
    // shortest words first, so searches return minimal witnesses
    let mut elements: Vec<(Element, Word)> = seen.into_iter().collect();
    elements.sort_by(|(ea, wa), (eb, wb)| wa.len().cmp(&wb.len()).then_with(|| ea.cmp(eb)));
    Ok(BallIndex {
        radius,
        complete,
        elements,
    })
}

/// Outcome of a bounded conjugator search.
///
/// `NotFoundWithinRadius` is deliberately distinct from "not conjugate":
/// on infinite groups the search is one-sided. It is definitive only when
/// the ball is the whole group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConjugatorSearch {
    Found(Word),
    NotFoundWithinRadius,
}

impl ConjugatorSearch {
    pub fn found(&self) -> bool {
        matches!(self, ConjugatorSearch::Found(_))
    }
}

/// Scan the radius-ball for z with z^-1 x z = y.
pub fn brute_cp(
    group: &Group,
    x: &Element,
    y: &Element,
    radius: usize,
) -> Result<ConjugatorSearch, Error> {
    let ball = enumerate_ball_with_cap(group, radius, radius.max(DEFAULT_BALL_CAP))?;
    brute_cp_in_ball(group, x, y, &ball)
}

/// Same scan against a prebuilt ball (callers enumerating whole finite
/// groups reuse one index across many queries).
pub fn brute_cp_in_ball(
    group: &Group,
    x: &Element,
    y: &Element,
    ball: &BallIndex,
) -> Result<ConjugatorSearch, Error> {
    for (z, w) in ball.entries() {
        if group.conjugate(x, z) == *y {
            return Ok(ConjugatorSearch::Found(w.clone()));
        }
    }
    Ok(ConjugatorSearch::NotFoundWithinRadius)
}

/// Scan k in [-bound, bound] for v^k = w by repeated multiplication.
/// All non-negative exponents are tried first, matching the convention
/// that a finite-order base reports its smallest non-negative solution.
/// Definitive on a finite-order v once bound reaches its order.
pub fn brute_pp(group: &Group, v: &Element, w: &Element, bound: u64) -> PowerAnswer {
    let mut acc = group.identity();
    if acc == *w {
        return PowerAnswer::Solution(BigInt::zero());
    }
    for k in 1..=bound {
        acc = group.multiply(&acc, v);
        if acc == *w {
            return PowerAnswer::Solution(BigInt::from(k));
        }
    }
    let v_inv = group.invert(v);
    let mut acc = group.identity();
    for k in 1..=bound {
        acc = group.multiply(&acc, &v_inv);
        if acc == *w {
            return PowerAnswer::Solution(-BigInt::from(k));
        }
    }
    PowerAnswer::NoSolution
}

fn lamplighter_parts(group: &Group, e: &Element) -> Result<(BigInt, Vec<BigInt>), Error> {
    let expected = Error::WrongGroup {
        expected: "wr(Z/2, Z)",
    };
    let wr = match group {
        Group::Wreath(w) => w,
        _ => return Err(expected),
    };
    match (wr.a(), wr.b()) {
        (Group::Abelian(a), Group::Abelian(b))
            if a.free_rank() == 0
                && a.torsion_moduli() == [2]
                && b.free_rank() == 1
                && b.torsion_moduli().is_empty() => {}
        _ => return Err(expected),
    }
    let we = e.as_wreath();
    let top = we.top.as_abelian().free_coords()[0].clone();
    let keys = we
        .support
        .iter()
        .map(|(k, _)| k.as_abelian().free_coords()[0].clone())
        .collect();
    Ok((top, keys))
}

/// Closed-form conjugacy in the lamplighter group Z/2 wr Z, where supports
/// are finite subsets of Z: equal tops, and either per-residue-class lamp
/// parities matching up to a shift (top != 0) or the supports being exact
/// translates (top = 0).
pub fn lamplighter_cp(group: &Group, x: &Element, y: &Element) -> Result<bool, Error> {
    let (b, f) = lamplighter_parts(group, x)?;
    let (c, g) = lamplighter_parts(group, y)?;
    if b != c {
        return Ok(false);
    }
    if b.is_zero() {
        // translate test: sorted supports must differ by one common shift
        if f.len() != g.len() {
            return Ok(false);
        }
        if f.is_empty() {
            return Ok(true);
        }
        let shift = &f[0] - &g[0];
        return Ok(f.iter().zip(&g).all(|(a, b)| a - b == shift));
    }
    let m = u64::try_from(b.magnitude().clone()).expect("desk-scale top");
    let residue_parities = |keys: &[BigInt], shift: u64| -> Vec<bool> {
        let mm = BigInt::from(m);
        let mut par = vec![false; m as usize];
        for k in keys {
            let r = (k + BigInt::from(shift)) % &mm;
            let r = usize::try_from(((r.clone() + &mm) % &mm).magnitude().clone()).unwrap();
            par[r] ^= true;
        }
        par
    };
    let fp = residue_parities(&f, 0);
    for d in 0..m {
        if residue_parities(&g, d) == fp {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::AbelianGroup;
    use crate::wreath::WreathGroup;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn z_group() -> Group {
        Group::Abelian(AbelianGroup::z(64))
    }

    fn z_mod(n: u64) -> Group {
        Group::Abelian(AbelianGroup::z_mod(n, 64).unwrap())
    }

    fn lamplighter() -> Group {
        Group::Wreath(Box::new(WreathGroup::new(z_mod(2), z_group())))
    }

    fn lamp_elem(top: i64, keys: &[i64]) -> Element {
        let z = AbelianGroup::z(64);
        let z2 = AbelianGroup::z_mod(2, 64).unwrap();
        let wr = WreathGroup::new(z_mod(2), z_group());
        Element::Wreath(Box::new(wr.element(
            Element::Abelian(z.element(vec![big(top)], vec![])),
            keys.iter().map(|&k| {
                (
                    Element::Abelian(z.element(vec![big(k)], vec![])),
                    Element::Abelian(z2.element(vec![], vec![big(1)])),
                )
            }),
        )))
    }

    #[test]
    fn ball_of_z() {
        let ball = enumerate_ball(&z_group(), 3).unwrap();
        assert_eq!(ball.len(), 7); // {-3..3}
        assert!(!ball.is_complete_group());
    }

    #[test]
    fn ball_exhausts_small_wreath() {
        // |Z/2 wr Z/3| = 2^3 * 3 = 24
        let g = Group::Wreath(Box::new(WreathGroup::new(z_mod(2), z_mod(3))));
        let ball = enumerate_ball(&g, 6).unwrap();
        assert_eq!(ball.len(), 24);
        assert!(ball.is_complete_group());
    }

    #[test]
    fn ball_of_trivial_group() {
        let g = Group::Abelian(AbelianGroup::trivial(64));
        let ball = enumerate_ball(&g, 3).unwrap();
        assert_eq!(ball.len(), 1);
        assert!(ball.is_complete_group());
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            enumerate_ball(&z_group(), 9),
            Err(Error::CapExceeded { radius: 9, cap: 8 })
        ));
        assert!(enumerate_ball_with_cap(&z_group(), 9, 16).is_ok());
    }

    #[test]
    fn brute_cp_identity_word() {
        let g = lamplighter();
        let x = lamp_elem(1, &[0]);
        match brute_cp(&g, &x, &x, 2).unwrap() {
            ConjugatorSearch::Found(w) => assert!(w.is_empty()),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn brute_cp_finds_lamp_shift() {
        let g = lamplighter();
        let x = lamp_elem(1, &[0]);
        let y = lamp_elem(1, &[5]);
        assert!(brute_cp(&g, &x, &y, 12).unwrap().found());
    }

    #[test]
    fn brute_pp_scan() {
        let g = z_group();
        let two = g.power(&g.generator(0).unwrap(), &big(2));
        let ten = g.power(&g.generator(0).unwrap(), &big(10));
        let three = g.power(&g.generator(0).unwrap(), &big(3));
        assert_eq!(brute_pp(&g, &two, &ten, 16), PowerAnswer::Solution(big(5)));
        assert_eq!(brute_pp(&g, &two, &three, 16), PowerAnswer::NoSolution);

        let lg = lamplighter();
        let x = lamp_elem(1, &[0]);
        let x3 = lg.power(&x, &big(3));
        assert_eq!(brute_pp(&lg, &x, &x3, 8), PowerAnswer::Solution(big(3)));
    }

    #[test]
    fn lamplighter_closed_form() {
        let g = lamplighter();
        assert!(lamplighter_cp(&g, &lamp_elem(1, &[0]), &lamp_elem(1, &[5])).unwrap());
        assert!(lamplighter_cp(&g, &lamp_elem(0, &[0, 1]), &lamp_elem(0, &[3, 4])).unwrap());
        assert!(!lamplighter_cp(&g, &lamp_elem(0, &[0, 1]), &lamp_elem(0, &[0, 2])).unwrap());
        assert!(!lamplighter_cp(&g, &lamp_elem(1, &[0]), &lamp_elem(2, &[0])).unwrap());
    }

    #[test]
    fn lamplighter_oracle_rejects_other_groups() {
        let g = z_group();
        let e = g.identity();
        assert!(matches!(
            lamplighter_cp(&g, &e, &e),
            Err(Error::WrongGroup { .. })
        ));
    }
}
