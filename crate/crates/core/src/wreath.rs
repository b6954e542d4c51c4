//! The restricted wreath product A wr B of two member groups: normal
//! forms, word collection, multiplication, inversion and the word problem.
//!
//! An element is a pair (top, support): the top element of B plus the
//! finitely supported function B -> A, stored as an association list sorted
//! by the canonical order on B-elements with no identity values. The action
//! convention is f^b(x) = f(x b^-1), so right-multiplying by (c, g) shifts
//! stored keys by c on the right. Sorted deduplicated storage makes element
//! equality structural, which is what lets wreath-over-wreath recursion
//! bottom out.

use std::collections::BTreeMap;

use crate::error::Error;
use crate::group::{Element, Group};
use crate::word::{Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WreathGroup {
    a: Group,
    b: Group,
}

/// Normal form (top, support); see module docs for the storage invariants.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WreathElement {
    pub top: Element,
    /// Sorted by key, keys pairwise distinct, values never the identity.
    pub support: Vec<(Element, Element)>,
}

impl std::fmt::Display for WreathElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}; {{", self.top)?;
        for (i, (k, v)) in self.support.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{k}: {v}")?;
        }
        write!(f, "}})")
    }
}

impl WreathElement {
    pub fn support_keys(&self) -> impl Iterator<Item = &Element> {
        self.support.iter().map(|(k, _)| k)
    }
}

impl WreathGroup {
    pub fn new(a: Group, b: Group) -> Self {
        WreathGroup { a, b }
    }

    /// Bottom group (function values).
    pub fn a(&self) -> &Group {
        &self.a
    }

    /// Top group (acting part).
    pub fn b(&self) -> &Group {
        &self.b
    }

    pub fn identity(&self) -> WreathElement {
        WreathElement {
            top: self.b.identity(),
            support: Vec::new(),
        }
    }

    /// Build an element from a top part and unsorted support pairs;
    /// coinciding keys are multiplied left to right and identity values
    /// dropped.
    pub fn element(
        &self,
        top: Element,
        pairs: impl IntoIterator<Item = (Element, Element)>,
    ) -> WreathElement {
        let mut map: BTreeMap<Element, Element> = BTreeMap::new();
        for (k, v) in pairs {
            match map.remove(&k) {
                None => {
                    map.insert(k, v);
                }
                Some(old) => {
                    map.insert(k, self.a.multiply(&old, &v));
                }
            }
        }
        self.from_map(top, map)
    }

    fn from_map(&self, top: Element, map: BTreeMap<Element, Element>) -> WreathElement {
        let id_a = self.a.identity();
        let support: Vec<(Element, Element)> =
            map.into_iter().filter(|(_, v)| *v != id_a).collect();
        let e = WreathElement { top, support };
        debug_assert!(self.is_canonical(&e));
        e
    }

    /// Representation validator: sorted distinct keys, no identity values.
    pub fn is_canonical(&self, e: &WreathElement) -> bool {
        let id_a = self.a.identity();
        e.support.windows(2).all(|w| w[0].0 < w[1].0)
            && e.support.iter().all(|(_, v)| *v != id_a)
    }

    /// Number of bottom-group generators; wreath letters below this index
    /// are A-letters, the rest B-letters.
    fn split(&self) -> usize {
        self.a.num_generators()
    }

    pub fn letter(&self, l: Letter) -> Result<WreathElement, Error> {
        let na = self.split();
        if l.gen < na {
            let v = self.a.letter(l)?;
            Ok(self.element(self.b.identity(), [(self.b.identity(), v)]))
        } else {
            let v = self.b.letter(Letter::new(l.gen - na, l.inverse))?;
            Ok(WreathElement {
                top: v,
                support: Vec::new(),
            })
        }
    }

    /// Collect a word over the combined alphabet into its normal form.
    ///
    /// The top part is the ordered product of the B-letters. Each A-letter
    /// lands at the key given by the product of the B-letters to its right,
    /// and A-letters with equal keys (equality of canonical elements) are
    /// multiplied left to right.
    pub fn collect(&self, w: &Word) -> Result<WreathElement, Error> {
        let na = self.split();
        let nb = self.b.num_generators();
        // Right-to-left pass: the running suffix product of B-letters is
        // the key for every A-letter encountered.
        let mut suffix = self.b.identity();
        let mut placed: Vec<(Letter, Element)> = Vec::new();
        for &l in w.letters.iter().rev() {
            if l.gen < na {
                placed.push((l, suffix.clone()));
            } else {
                if l.gen >= na + nb {
                    return Err(Error::UnknownGenerator {
                        index: l.gen,
                        alphabet: na + nb,
                    });
                }
                let e = self.b.letter(Letter::new(l.gen - na, l.inverse))?;
                suffix = self.b.multiply(&e, &suffix);
            }
        }
        let top = suffix;
        // Forward pass over the A-letters, multiplying within each key.
        let mut map: BTreeMap<Element, Element> = BTreeMap::new();
        for (l, key) in placed.into_iter().rev() {
            let v = self.a.letter(l)?;
            match map.remove(&key) {
                None => {
                    map.insert(key, v);
                }
                Some(old) => {
                    map.insert(key, self.a.multiply(&old, &v));
                }
            }
        }
        Ok(self.from_map(top, map))
    }

    /// (b, f)(c, g) = (b c, f^c g): shift f's keys by c, then merge with g
    /// multiplying values in A where keys coincide.
    pub fn multiply(&self, x: &WreathElement, y: &WreathElement) -> WreathElement {
        let top = self.b.multiply(&x.top, &y.top);
        let mut map: BTreeMap<Element, Element> = BTreeMap::new();
        for (k, v) in &x.support {
            map.insert(self.b.multiply(k, &y.top), v.clone());
        }
        for (k, v) in &y.support {
            match map.remove(k) {
                None => {
                    map.insert(k.clone(), v.clone());
                }
                Some(fx) => {
                    map.insert(k.clone(), self.a.multiply(&fx, v));
                }
            }
        }
        self.from_map(top, map)
    }

    /// (b, f)^-1 = (b^-1, (f^-1)^(b^-1)): negate the top, move key k to
    /// k b^-1 and invert values.
    pub fn invert(&self, x: &WreathElement) -> WreathElement {
        let top = self.b.invert(&x.top);
        let mut map: BTreeMap<Element, Element> = BTreeMap::new();
        for (k, v) in &x.support {
            map.insert(self.b.multiply(k, &top), self.a.invert(v));
        }
        self.from_map(top, map)
    }

    /// Word problem: identity top and empty support.
    pub fn wp(&self, x: &WreathElement) -> bool {
        x.support.is_empty() && self.b.wp(&x.top)
    }
}
