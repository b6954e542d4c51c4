//! Conjugacy in wreath products.
//!
//! The invariant driving everything is the orbit product: for f: B -> A,
//! the ordered product of f's values along the <b>-orbit through t,
//! shifted by d. Two elements (b, f), (c, g) with conjugate tops are
//! conjugate exactly when their orbit products match in the way the
//! constructive criterion below prescribes; the candidate conjugating tops
//! can be read off the supports.
//!
//! The module also builds the conjugacy-pair gadgets that encode cyclic
//! subgroup (and, over a non-abelian bottom group, cyclic submonoid)
//! membership of the top group into wreath conjugacy; the test suite uses
//! them as independent oracles for the membership procedures.

use std::collections::BTreeSet;

use num_bigint::BigInt;

use crate::error::Error;
use crate::group::{ConjugacyAnswer, Element, Group, Order, PowerAnswer};
use crate::oracle::{self, ConjugatorSearch};
use crate::wreath::{WreathElement, WreathGroup};

/// Default ball radius for the best-effort witness search in the
/// all-trivial case.
pub const DEFAULT_WITNESS_RADIUS: usize = 4;

/// The orbit product of `support` along the <b>-orbit through `t`, shifted
/// by `d`: the product of the values at keys of the form t b^j d^-1, taken
/// in increasing order of j.
///
/// A support key `key` contributes at index j exactly when
/// t^-1 key d = b^j. Over an abelian bottom group the factor order is
/// irrelevant and subgroup membership suffices; over a torsion-free top
/// group with b of infinite order the factors are ordered by submonoid
/// comparisons; in general the exponents come from the power problem.
pub fn orbit_product(
    wr: &WreathGroup,
    support: &[(Element, Element)],
    t: &Element,
    b: &Element,
    d: &Element,
) -> Result<Element, Error> {
    let ag = wr.a();
    let bg = wr.b();
    let t_inv = bg.invert(t);

    if ag.is_abelian() {
        let mut acc = ag.identity();
        for (key, val) in support {
            let w = bg.multiply(&bg.multiply(&t_inv, key), d);
            if bg.csgmp(b, &w)? {
                acc = ag.multiply(&acc, val);
            }
        }
        return Ok(acc);
    }

    if bg.is_torsion_free() && !bg.wp(b) {
        let mut members: Vec<(Element, &Element)> = Vec::new();
        for (key, val) in support {
            let w = bg.multiply(&bg.multiply(&t_inv, key), d);
            if bg.csgmp(b, &w)? {
                members.push((w, val));
            }
        }
        // Sort by the orbit index without computing it: the index of w_i
        // is <= that of w_j exactly when w_i^-1 w_j is a non-negative
        // power of b.
        let n = members.len();
        let mut ranked: Vec<(usize, usize)> = Vec::with_capacity(n);
        for i in 0..n {
            let mut rank = 0;
            for (j, other) in members.iter().enumerate() {
                if i != j {
                    let diff = bg.multiply(&bg.invert(&other.0), &members[i].0);
                    if bg.csmmp(b, &diff)? {
                        rank += 1;
                    }
                }
            }
            ranked.push((rank, i));
        }
        ranked.sort();
        let mut acc = ag.identity();
        for (_, i) in ranked {
            acc = ag.multiply(&acc, members[i].1);
        }
        return Ok(acc);
    }

    let mut hits: Vec<(BigInt, &Element)> = Vec::new();
    for (key, val) in support {
        let w = bg.multiply(&bg.multiply(&t_inv, key), d);
        if let PowerAnswer::Solution(k) = bg.pp(b, &w)? {
            hits.push((k, val));
        }
    }
    hits.sort_by(|x, y| x.0.cmp(&y.0));
    let mut acc = ag.identity();
    for (_, val) in hits {
        acc = ag.multiply(&acc, val);
    }
    Ok(acc)
}

/// Decide conjugacy of x = (b, f) and y = (c, g) in A wr B.
///
/// Needs conjugacy and the power problem in B, plus conjugacy in A when b
/// has finite order; missing capabilities surface as `Unsupported`.
pub fn conjugacy_test(
    wr: &WreathGroup,
    x: &WreathElement,
    y: &WreathElement,
) -> Result<ConjugacyAnswer, Error> {
    conjugacy_test_with_witness_radius(wr, x, y, DEFAULT_WITNESS_RADIUS)
}

/// `conjugacy_test` with an explicit radius for the fallback witness
/// search; the radius cannot change the yes/no answer.
pub fn conjugacy_test_with_witness_radius(
    wr: &WreathGroup,
    x: &WreathElement,
    y: &WreathElement,
    witness_radius: usize,
) -> Result<ConjugacyAnswer, Error> {
    let ag = wr.a();
    let bg = wr.b();
    let (b, f) = (&x.top, &x.support);
    let (c, g) = (&y.top, &y.support);

    if !bg.cp(b, c)? {
        return Ok(ConjugacyAnswer::NotConjugate);
    }
    let id_a = ag.identity();
    let id_b = bg.identity();

    let mut f_orbit: Vec<(Element, Element)> = Vec::with_capacity(f.len());
    for (t, _) in f {
        f_orbit.push((t.clone(), orbit_product(wr, f, t, b, &id_b)?));
    }

    if f_orbit.iter().all(|(_, pi)| *pi == id_a) {
        // All of f's orbit products are trivial; conjugacy holds exactly
        // when the same is true of g (with respect to its own top).
        for (s, _) in g {
            if orbit_product(wr, g, s, c, &id_b)? != id_a {
                return Ok(ConjugacyAnswer::NotConjugate);
            }
        }
        let witness_top = commuting_witness(bg, b, c, f, g, witness_radius)?;
        return Ok(ConjugacyAnswer::Conjugate { witness_top });
    }

    // Some orbit product is nontrivial: the conjugating top, if any, can
    // be chosen among beta^-1 t over g's support keys beta and f's keys t
    // with a nontrivial orbit product. The comparison set consists of all
    // beta_i beta_j^-1 b_k.
    let mut comparison: BTreeSet<Element> = BTreeSet::new();
    for (bi, _) in g {
        for (bj, _) in g {
            let prefix = bg.multiply(bi, &bg.invert(bj));
            for (bk, _) in f {
                comparison.insert(bg.multiply(&prefix, bk));
            }
        }
    }
    let finite_top_order = matches!(bg.order(b)?, Order::Finite(_));
    let f_values: Vec<(Element, Element)> = {
        let mut v = Vec::with_capacity(comparison.len());
        for t in &comparison {
            v.push((t.clone(), orbit_product(wr, f, t, b, &id_b)?));
        }
        v
    };

    for (t, pi) in &f_orbit {
        if *pi == id_a {
            continue;
        }
        for (beta, _) in g {
            let d = bg.multiply(&bg.invert(beta), t);
            if bg.multiply(&d, b) != bg.multiply(c, &d) {
                continue;
            }
            let mut ok = true;
            for (tp, f_pi) in &f_values {
                let g_pi = orbit_product(wr, g, tp, b, &d)?;
                let matched = if finite_top_order {
                    ag.cp(f_pi, &g_pi)?
                } else {
                    *f_pi == g_pi
                };
                if !matched {
                    ok = false;
                    break;
                }
            }
            if ok {
                return Ok(ConjugacyAnswer::Conjugate {
                    witness_top: Some(d),
                });
            }
        }
    }
    Ok(ConjugacyAnswer::NotConjugate)
}

/// Best-effort d with d b = c d: scan the candidates readable from the
/// supports, then fall back to a bounded ball search. The conjugacy answer
/// itself never depends on finding one.
fn commuting_witness(
    bg: &Group,
    b: &Element,
    c: &Element,
    f: &[(Element, Element)],
    g: &[(Element, Element)],
    witness_radius: usize,
) -> Result<Option<Element>, Error> {
    let mut candidates = vec![bg.identity()];
    for (beta, _) in g {
        let beta_inv = bg.invert(beta);
        for (t, _) in f {
            candidates.push(bg.multiply(&beta_inv, t));
        }
    }
    for d in candidates {
        if bg.multiply(&d, b) == bg.multiply(c, &d) {
            return Ok(Some(d));
        }
    }
    if let ConjugatorSearch::Found(word) = oracle::brute_cp(bg, b, c, witness_radius)? {
        let z = bg.evaluate(&word)?;
        return Ok(Some(bg.invert(&z)));
    }
    Ok(None)
}

/// The pair ((b, 1), (b, f)) with f(1) = a, f(c) = a^-1, conjugate in
/// A wr B exactly when c lies in the cyclic subgroup <b>. The degenerate
/// c = 1 collapses the two support entries into nothing.
pub fn csgmp_gadget(
    wr: &WreathGroup,
    b: &Element,
    c: &Element,
    a: &Element,
) -> (WreathElement, WreathElement) {
    let ag = wr.a();
    assert!(*a != ag.identity(), "gadget value must be nontrivial");
    let x = wr.element(b.clone(), []);
    let y = wr.element(
        b.clone(),
        [
            (wr.b().identity(), a.clone()),
            (c.clone(), ag.invert(a)),
        ],
    );
    (x, y)
}

/// The pair ((b, f), (b, g)) with f(1) = a1 a2 and g(1) = a1, g(c) = a2,
/// conjugate exactly when c is a non-negative power of b; requires a
/// non-commuting pair a1, a2. With c = 1 the two support entries of g
/// merge into a1 a2.
pub fn csmmp_gadget(
    wr: &WreathGroup,
    b: &Element,
    c: &Element,
    a1: &Element,
    a2: &Element,
) -> Result<(WreathElement, WreathElement), Error> {
    let ag = wr.a();
    if ag.multiply(a1, a2) == ag.multiply(a2, a1) {
        return Err(Error::CommutingPair);
    }
    let x = wr.element(
        b.clone(),
        [(wr.b().identity(), ag.multiply(a1, a2))],
    );
    let y = wr.element(
        b.clone(),
        [(wr.b().identity(), a1.clone()), (c.clone(), a2.clone())],
    );
    Ok((x, y))
}
