//! The group abstraction: canonical elements, the closed family of concrete
//! groups, and the operation contract (word problem, conjugacy problem,
//! power problem, cyclic subgroup/submonoid membership, element order).
//!
//! Elements are canonical values: two elements compare equal if and only if
//! they represent the same group element. The total order on elements makes
//! wreath-product support functions representable as sorted association
//! lists, which keeps equality structural all the way down.

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::abelian::{AbelianElement, AbelianGroup};
use crate::bs::{BaumslagSolitar, BsElement};
use crate::conjugacy;
use crate::error::Error;
use crate::power;
use crate::solvable::FreeSolvableGroup;
use crate::word::{Letter, Word};
use crate::wreath::{WreathElement, WreathGroup};

/// A canonical group element.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Element {
    Abelian(AbelianElement),
    BaumslagSolitar(BsElement),
    Wreath(Box<WreathElement>),
}

impl Element {
    pub fn as_abelian(&self) -> &AbelianElement {
        match self {
            Element::Abelian(e) => e,
            other => panic!("expected abelian element, got {other:?}"),
        }
    }

    pub fn as_bs(&self) -> &BsElement {
        match self {
            Element::BaumslagSolitar(e) => e,
            other => panic!("expected Baumslag-Solitar element, got {other:?}"),
        }
    }

    pub fn as_wreath(&self) -> &WreathElement {
        match self {
            Element::Wreath(e) => e,
            other => panic!("expected wreath element, got {other:?}"),
        }
    }
}

impl std::fmt::Display for Element {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Element::Abelian(e) => write!(f, "{e}"),
            Element::BaumslagSolitar(e) => write!(f, "{e}"),
            Element::Wreath(e) => write!(f, "{e}"),
        }
    }
}

/// Answer to the power problem `x^k = y`.
///
/// For a base of finite order the solution `k` is the smallest
/// non-negative one; for infinite order it is the unique one.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PowerAnswer {
    NoSolution,
    Solution(BigInt),
}

impl PowerAnswer {
    pub fn is_solution(&self) -> bool {
        matches!(self, PowerAnswer::Solution(_))
    }

    pub fn solution(&self) -> Option<&BigInt> {
        match self {
            PowerAnswer::Solution(k) => Some(k),
            PowerAnswer::NoSolution => None,
        }
    }
}

/// Order of a group element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Order {
    Finite(BigInt),
    Infinity,
}

impl Order {
    pub fn finite(&self) -> Option<&BigInt> {
        match self {
            Order::Finite(n) => Some(n),
            Order::Infinity => None,
        }
    }
}

/// Answer to a conjugacy query, with a best-effort top-group witness.
///
/// When `Conjugate { witness_top: Some(d) }` is returned for inputs with
/// tops `b` and `c`, the witness satisfies `d b = c d` in the top group.
/// The yes/no answer never depends on witness availability.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConjugacyAnswer {
    NotConjugate,
    Conjugate { witness_top: Option<Element> },
}

impl ConjugacyAnswer {
    pub fn is_conjugate(&self) -> bool {
        matches!(self, ConjugacyAnswer::Conjugate { .. })
    }

    pub fn witness(&self) -> Option<&Element> {
        match self {
            ConjugacyAnswer::Conjugate { witness_top } => witness_top.as_ref(),
            ConjugacyAnswer::NotConjugate => None,
        }
    }
}

/// A concrete group handle. Immutable after construction and freely
/// shareable; all operations are pure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Group {
    Abelian(AbelianGroup),
    BaumslagSolitar(BaumslagSolitar),
    Wreath(Box<WreathGroup>),
    FreeSolvable(Box<FreeSolvableGroup>),
}

impl Group {
    pub fn num_generators(&self) -> usize {
        match self {
            Group::Abelian(g) => g.num_generators(),
            Group::BaumslagSolitar(_) => 2,
            Group::Wreath(w) => w.a().num_generators() + w.b().num_generators(),
            Group::FreeSolvable(fs) => fs.rank(),
        }
    }

    /// Generator names for word parsing and display.
    ///
    /// Leaf factors of a wreath product are named `a1..` (bottom) and
    /// `t1..` (top), with an `l<level>.` qualifier for wreath levels below
    /// the outermost one; BS(1,q) contributes `a`, `t` and free solvable
    /// groups `x1..xr`.
    pub fn generator_names(&self) -> Vec<String> {
        let mut out = Vec::with_capacity(self.num_generators());
        let mut next_level = 2usize;
        collect_names(self, 1, &mut next_level, NamePos::Whole, &mut out);
        out
    }

    pub fn identity(&self) -> Element {
        match self {
            Group::Abelian(g) => Element::Abelian(g.identity()),
            Group::BaumslagSolitar(g) => Element::BaumslagSolitar(g.identity()),
            Group::Wreath(w) => Element::Wreath(Box::new(w.identity())),
            Group::FreeSolvable(fs) => fs.carrier().identity(),
        }
    }

    /// The canonical element of generator `i`.
    pub fn generator(&self, i: usize) -> Result<Element, Error> {
        self.letter(Letter::new(i, false))
    }

    /// The canonical element of a single signed letter.
    pub fn letter(&self, l: Letter) -> Result<Element, Error> {
        let n = self.num_generators();
        if l.gen >= n {
            return Err(Error::UnknownGenerator {
                index: l.gen,
                alphabet: n,
            });
        }
        Ok(match self {
            Group::Abelian(g) => Element::Abelian(g.letter(l)),
            Group::BaumslagSolitar(g) => Element::BaumslagSolitar(g.letter(l)),
            Group::Wreath(w) => Element::Wreath(Box::new(w.letter(l)?)),
            Group::FreeSolvable(fs) => fs.letter(l),
        })
    }

    /// Evaluate a word to its canonical element. The empty word evaluates
    /// to the identity.
    pub fn evaluate(&self, w: &Word) -> Result<Element, Error> {
        match self {
            Group::Wreath(wr) => Ok(Element::Wreath(Box::new(wr.collect(w)?))),
            _ => {
                let mut acc = self.identity();
                for &l in &w.letters {
                    let e = self.letter(l)?;
                    acc = self.multiply(&acc, &e);
                }
                Ok(acc)
            }
        }
    }

    pub fn multiply(&self, x: &Element, y: &Element) -> Element {
        match self {
            Group::Abelian(g) => Element::Abelian(g.multiply(x.as_abelian(), y.as_abelian())),
            Group::BaumslagSolitar(g) => {
                Element::BaumslagSolitar(g.multiply(x.as_bs(), y.as_bs()))
            }
            Group::Wreath(w) => Element::Wreath(Box::new(w.multiply(x.as_wreath(), y.as_wreath()))),
            Group::FreeSolvable(fs) => fs.carrier().multiply(x, y),
        }
    }

    pub fn invert(&self, x: &Element) -> Element {
        match self {
            Group::Abelian(g) => Element::Abelian(g.invert(x.as_abelian())),
            Group::BaumslagSolitar(g) => Element::BaumslagSolitar(g.invert(x.as_bs())),
            Group::Wreath(w) => Element::Wreath(Box::new(w.invert(x.as_wreath()))),
            Group::FreeSolvable(fs) => fs.carrier().invert(x),
        }
    }

    /// `x^k` by binary powering; `k` may be negative.
    pub fn power(&self, x: &Element, k: &BigInt) -> Element {
        if k.is_negative() {
            let inv = self.invert(x);
            return self.power(&inv, &-k);
        }
        let mut acc = self.identity();
        let mut base = x.clone();
        let mut rest = k.clone();
        let two = BigInt::from(2);
        while rest.is_positive() {
            if (&rest % &two).is_one() {
                acc = self.multiply(&acc, &base);
            }
            rest /= &two;
            if rest.is_positive() {
                base = self.multiply(&base, &base);
            }
        }
        acc
    }

    /// `z^-1 x z`.
    pub fn conjugate(&self, x: &Element, z: &Element) -> Element {
        let zi = self.invert(z);
        self.multiply(&self.multiply(&zi, x), z)
    }

    /// Word problem: is `x` the identity? Canonical forms make this a
    /// structural comparison.
    pub fn wp(&self, x: &Element) -> bool {
        *x == self.identity()
    }

    /// Conjugacy problem with witness.
    pub fn conjugacy(&self, x: &Element, y: &Element) -> Result<ConjugacyAnswer, Error> {
        self.conjugacy_with_witness_radius(x, y, conjugacy::DEFAULT_WITNESS_RADIUS)
    }

    /// Conjugacy with an explicit radius for the best-effort witness
    /// search; the radius never affects the verdict.
    pub fn conjugacy_with_witness_radius(
        &self,
        x: &Element,
        y: &Element,
        witness_radius: usize,
    ) -> Result<ConjugacyAnswer, Error> {
        match self {
            Group::Abelian(_) => Ok(if x == y {
                ConjugacyAnswer::Conjugate {
                    witness_top: Some(self.identity()),
                }
            } else {
                ConjugacyAnswer::NotConjugate
            }),
            Group::BaumslagSolitar(_) => Err(Error::Unsupported(
                "conjugacy in BS(1,q) is not provided".into(),
            )),
            Group::Wreath(w) => conjugacy::conjugacy_test_with_witness_radius(
                w,
                x.as_wreath(),
                y.as_wreath(),
                witness_radius,
            ),
            Group::FreeSolvable(fs) => fs.conjugacy_with_witness_radius(x, y, witness_radius),
        }
    }

    /// Conjugacy problem: is there `z` with `z^-1 x z = y`?
    pub fn cp(&self, x: &Element, y: &Element) -> Result<bool, Error> {
        Ok(self.conjugacy(x, y)?.is_conjugate())
    }

    /// Power problem: find `k` with `x^k = y`.
    pub fn pp(&self, x: &Element, y: &Element) -> Result<PowerAnswer, Error> {
        match self {
            Group::Abelian(g) => g.pp(x.as_abelian(), y.as_abelian()),
            Group::BaumslagSolitar(g) => Ok(g.pp(x.as_bs(), y.as_bs())),
            Group::Wreath(w) => power::power_test(w, x.as_wreath(), y.as_wreath()),
            Group::FreeSolvable(fs) => fs.carrier().pp(x, y),
        }
    }

    /// Cyclic subgroup membership: is `y` a power of `x`?
    pub fn csgmp(&self, x: &Element, y: &Element) -> Result<bool, Error> {
        Ok(self.pp(x, y)?.is_solution())
    }

    /// Cyclic submonoid membership: is `y` a non-negative power of `x`?
    ///
    /// For a finite-order base the power problem already returns the
    /// smallest non-negative exponent, so the sign check is uniform.
    pub fn csmmp(&self, x: &Element, y: &Element) -> Result<bool, Error> {
        Ok(match self.pp(x, y)? {
            PowerAnswer::Solution(k) => !k.is_negative(),
            PowerAnswer::NoSolution => false,
        })
    }

    /// Element order, computed from the power problem: the exponent `k`
    /// with `x^k = x^-1` is non-negative exactly for torsion elements, and
    /// the order is then `k + 1`.
    pub fn order(&self, x: &Element) -> Result<Order, Error> {
        let inv = self.invert(x);
        Ok(match self.pp(x, &inv)? {
            PowerAnswer::Solution(k) if !k.is_negative() => Order::Finite(k + 1),
            _ => Order::Infinity,
        })
    }

    pub fn is_abelian(&self) -> bool {
        match self {
            Group::Abelian(_) => true,
            Group::BaumslagSolitar(_) => false,
            Group::Wreath(_) => false,
            Group::FreeSolvable(fs) => fs.is_abelian(),
        }
    }

    pub fn is_torsion_free(&self) -> bool {
        match self {
            Group::Abelian(g) => g.is_torsion_free(),
            Group::BaumslagSolitar(_) => true,
            Group::Wreath(w) => w.a().is_torsion_free() && w.b().is_torsion_free(),
            Group::FreeSolvable(_) => true,
        }
    }

    /// A bound `beta` such that the order of every torsion element is
    /// beta-smooth. Torsion is introduced only by abelian factors, whose
    /// constructors certify their moduli; a wreath product inherits the
    /// larger of its factors' bounds.
    pub fn smoothness_bound(&self) -> u32 {
        match self {
            Group::Abelian(g) => g.beta(),
            Group::BaumslagSolitar(g) => g.beta(),
            Group::Wreath(w) => w.a().smoothness_bound().max(w.b().smoothness_bound()),
            Group::FreeSolvable(fs) => fs.beta(),
        }
    }

    /// Short structural description, e.g. `wr(Z/2, Z)`.
    pub fn describe(&self) -> String {
        match self {
            Group::Abelian(g) => g.describe(),
            Group::BaumslagSolitar(g) => g.describe(),
            Group::Wreath(w) => format!("wr({}, {})", w.a().describe(), w.b().describe()),
            Group::FreeSolvable(fs) => format!("freesolvable({}, {})", fs.degree(), fs.rank()),
        }
    }
}

#[derive(Clone, Copy, PartialEq)]
enum NamePos {
    Whole,
    Bottom(usize),
    Top(usize),
}

fn qualifier(level: usize) -> String {
    if level <= 1 {
        String::new()
    } else {
        format!("l{level}.")
    }
}

fn collect_names(
    g: &Group,
    level: usize,
    next_level: &mut usize,
    pos: NamePos,
    out: &mut Vec<String>,
) {
    match g {
        Group::Wreath(w) => {
            let my_level = if pos == NamePos::Whole {
                level
            } else {
                let l = *next_level;
                *next_level += 1;
                l
            };
            collect_names(w.a(), my_level, next_level, NamePos::Bottom(my_level), out);
            collect_names(w.b(), my_level, next_level, NamePos::Top(my_level), out);
        }
        Group::BaumslagSolitar(_) => {
            let q = match pos {
                NamePos::Whole => String::new(),
                NamePos::Bottom(l) | NamePos::Top(l) => qualifier(l),
            };
            out.push(format!("{q}a"));
            out.push(format!("{q}t"));
        }
        Group::FreeSolvable(fs) => {
            let q = match pos {
                NamePos::Whole => String::new(),
                NamePos::Bottom(l) | NamePos::Top(l) => qualifier(l),
            };
            for i in 1..=fs.rank() {
                out.push(format!("{q}x{i}"));
            }
        }
        Group::Abelian(ab) => {
            let (prefix, q) = match pos {
                NamePos::Whole => ("a", String::new()),
                NamePos::Bottom(l) => ("a", qualifier(l)),
                NamePos::Top(l) => ("t", qualifier(l)),
            };
            for i in 1..=ab.num_generators() {
                out.push(format!("{q}{prefix}{i}"));
            }
        }
    }
}
