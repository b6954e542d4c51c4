//! Free solvable groups S_{d,r} of degree d and rank r, handled through
//! the Magnus embedding into iterated wreath products of Z^r.
//!
//! The generator x_i of S_{d,r} maps to the pair whose top is the image of
//! x_i in S_{d-1,r} and whose support carries the i-th standard basis
//! vector of Z^r at the identity; degree 1 is the abelianization. The map
//! is injective and preserves conjugacy, so the word and power problems
//! delegate to the carrier while conjugacy runs the wreath criterion with
//! S_{d-1,r} as the top group, recursing through the same construction.

use crate::abelian::AbelianGroup;
use crate::conjugacy;
use crate::error::Error;
use crate::group::{ConjugacyAnswer, Element, Group};
use crate::word::{Letter, Word};
use crate::wreath::WreathGroup;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeSolvableGroup {
    degree: u32,
    rank: usize,
    beta: u32,
    carrier: Group,
    gens: Vec<Element>,
}

impl FreeSolvableGroup {
    pub fn new(degree: u32, rank: usize, beta: u32) -> Result<Self, Error> {
        if degree < 1 {
            return Err(Error::InvalidGroup("solvability degree must be >= 1".into()));
        }
        if rank < 1 {
            return Err(Error::InvalidGroup("rank must be >= 1".into()));
        }
        let free_abelian = Group::Abelian(AbelianGroup::new(rank, Vec::new(), beta)?);
        if degree == 1 {
            let gens = (0..rank)
                .map(|i| free_abelian.generator(i).expect("rank checked"))
                .collect();
            return Ok(FreeSolvableGroup {
                degree,
                rank,
                beta,
                carrier: free_abelian,
                gens,
            });
        }
        let inner = FreeSolvableGroup::new(degree - 1, rank, beta)?;
        let inner_gens = inner.gens.clone();
        let inner_group = Group::FreeSolvable(Box::new(inner));
        let inner_identity = inner_group.identity();
        let wr = WreathGroup::new(free_abelian.clone(), inner_group);
        let gens = (0..rank)
            .map(|i| {
                let basis = free_abelian.generator(i).expect("rank checked");
                Element::Wreath(Box::new(wr.element(
                    inner_gens[i].clone(),
                    [(inner_identity.clone(), basis)],
                )))
            })
            .collect();
        Ok(FreeSolvableGroup {
            degree,
            rank,
            beta,
            carrier: Group::Wreath(Box::new(wr)),
            gens,
        })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn beta(&self) -> u32 {
        self.beta
    }

    /// The iterated wreath product the group embeds into. Elements of the
    /// group are represented by their images here.
    pub fn carrier(&self) -> &Group {
        &self.carrier
    }

    pub fn is_abelian(&self) -> bool {
        // rank 1 collapses every degree to Z
        self.degree == 1 || self.rank == 1
    }

    pub fn letter(&self, l: Letter) -> Element {
        let g = self.gens[l.gen].clone();
        if l.inverse {
            self.carrier.invert(&g)
        } else {
            g
        }
    }

    /// Magnus image of a word: the product of the generator images.
    pub fn embed(&self, w: &Word) -> Result<Element, Error> {
        let mut acc = self.carrier.identity();
        for &l in &w.letters {
            if l.gen >= self.rank {
                return Err(Error::UnknownGenerator {
                    index: l.gen,
                    alphabet: self.rank,
                });
            }
            acc = self.carrier.multiply(&acc, &self.letter(l));
        }
        Ok(acc)
    }

    /// Conjugacy on embedded images. Sound because the embedding preserves
    /// conjugacy level by level.
    pub fn conjugacy(&self, x: &Element, y: &Element) -> Result<ConjugacyAnswer, Error> {
        self.conjugacy_with_witness_radius(x, y, conjugacy::DEFAULT_WITNESS_RADIUS)
    }

    pub fn conjugacy_with_witness_radius(
        &self,
        x: &Element,
        y: &Element,
        witness_radius: usize,
    ) -> Result<ConjugacyAnswer, Error> {
        if self.degree == 1 {
            return Ok(if x == y {
                ConjugacyAnswer::Conjugate {
                    witness_top: Some(self.carrier.identity()),
                }
            } else {
                ConjugacyAnswer::NotConjugate
            });
        }
        match &self.carrier {
            Group::Wreath(w) => conjugacy::conjugacy_test_with_witness_radius(
                w,
                x.as_wreath(),
                y.as_wreath(),
                witness_radius,
            ),
            _ => unreachable!("degree >= 2 carriers are wreath products"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{Group, Order, PowerAnswer};
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn s(d: u32, r: usize) -> Group {
        Group::FreeSolvable(Box::new(FreeSolvableGroup::new(d, r, 64).unwrap()))
    }

    fn gen_word(letters: &[(usize, bool)]) -> Word {
        Word::from_letters(letters.iter().map(|&(g, i)| Letter::new(g, i)).collect())
    }

    fn commutator(u: &Word, v: &Word) -> Word {
        u.inverse().concat(&v.inverse()).concat(u).concat(v)
    }

    #[test]
    fn generator_image_shape() {
        let g = s(2, 2);
        let x1 = g.generator(0).unwrap();
        let w = x1.as_wreath();
        // top is the abelianized generator, support carries e_1 at the identity
        let z2 = AbelianGroup::new(2, vec![], 64).unwrap();
        let e1 = Element::Abelian(z2.element(vec![BigInt::from(1), BigInt::from(0)], vec![]));
        assert_eq!(w.top, e1);
        assert_eq!(w.support.len(), 1);
        assert_eq!(w.support[0].1, e1);
    }

    #[test]
    fn free_reduction_vanishes() {
        let g = s(2, 2);
        let w = gen_word(&[(0, false), (0, true)]);
        assert!(g.wp(&g.evaluate(&w).unwrap()));
    }

    #[test]
    fn commutator_is_nontrivial_metabelian() {
        let g = s(2, 2);
        let c = commutator(&Word::single(0, false), &Word::single(1, false));
        let e = g.evaluate(&c).unwrap();
        assert!(!g.wp(&e));
        let w = e.as_wreath();
        assert!(g.wp(&Element::Abelian(w.top.as_abelian().clone())) || {
            // top must be the abelian identity since commutators abelianize away
            w.top == s(1, 2).identity()
        });
        assert!(!w.support.is_empty());
    }

    #[test]
    fn second_derived_relator_vanishes() {
        // [[x1,x2],[x1^-1,x2]] lies in the second derived subgroup
        let g = s(2, 2);
        let c1 = commutator(&Word::single(0, false), &Word::single(1, false));
        let c2 = commutator(&Word::single(0, true), &Word::single(1, false));
        let rel = commutator(&c1, &c2);
        assert!(g.wp(&g.evaluate(&rel).unwrap()));
        // ... but survives one degree higher
        let g3 = s(3, 2);
        assert!(!g3.wp(&g3.evaluate(&rel).unwrap()));
    }

    #[test]
    fn free_witnesses_at_degree_three() {
        let g = s(3, 3);
        let c12 = commutator(&Word::single(0, false), &Word::single(1, false));
        let c13 = commutator(&Word::single(0, false), &Word::single(2, false));
        let nested = commutator(&c12, &c13);
        assert!(!g.wp(&g.evaluate(&nested).unwrap()));
    }

    #[test]
    fn generators_are_not_conjugate() {
        let g = s(2, 2);
        let x1 = g.generator(0).unwrap();
        let x2 = g.generator(1).unwrap();
        assert!(!g.cp(&x1, &x2).unwrap());
    }

    #[test]
    fn explicit_conjugates_are_detected() {
        let g = s(2, 2);
        let w = g
            .evaluate(&gen_word(&[(0, false), (1, false), (0, true)]))
            .unwrap();
        let z = g.evaluate(&gen_word(&[(1, false), (0, false)])).unwrap();
        let conj = g.conjugate(&w, &z);
        assert!(g.cp(&w, &conj).unwrap());
    }

    #[test]
    fn power_problem_through_embedding() {
        let g = s(2, 2);
        let w = g.evaluate(&gen_word(&[(0, false), (1, false)])).unwrap();
        for k in -4..=4i64 {
            let pk = g.power(&w, &BigInt::from(k));
            assert_eq!(
                g.pp(&w, &pk).unwrap(),
                PowerAnswer::Solution(BigInt::from(k)),
                "k={k}"
            );
        }
        assert_eq!(g.order(&w).unwrap(), Order::Infinity);
    }

    fn arb_word(rank: usize) -> impl Strategy<Value = Word> {
        proptest::collection::vec((0usize..rank, proptest::bool::ANY), 0..8)
            .prop_map(|ls| Word::from_letters(ls.into_iter().map(|(g, i)| Letter::new(g, i)).collect()))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn embedding_is_a_homomorphism(u in arb_word(2), v in arb_word(2)) {
            for (d, r) in [(2u32, 2usize), (3, 2)] {
                let g = s(d, r);
                let uv = g.evaluate(&u.concat(&v)).unwrap();
                let prod = g.multiply(&g.evaluate(&u).unwrap(), &g.evaluate(&v).unwrap());
                prop_assert_eq!(uv, prod);
            }
        }
    }
}
