//! Brute-force reference computations. Each routine here is deliberately
//! independent of the fast path it is used to check.

use std::collections::HashSet;

use rand::Rng;

use crate::coxeter::{root_is_positive, CoxeterSystem, Element, SimpleSubset};

/// Bruhat order by the subword property: `a ≤ b` iff `a` is the product of a
/// subword of a reduced word of `b`. All subword products are collected
/// letter by letter, so the cost is bounded by `ℓ(b)·|[e, b]|`.
pub fn bruhat_subword(sys: &CoxeterSystem, a: &Element, b: &Element) -> bool {
    lower_interval(sys, b).contains(a)
}

/// `{x : x ≤ b}` as the set of subword products of the canonical word of `b`.
pub fn lower_interval(sys: &CoxeterSystem, b: &Element) -> HashSet<Element> {
    let mut products = HashSet::new();
    products.insert(sys.identity());
    for s in sys.canonical_word(b) {
        let g = sys.generator(s);
        let extended: Vec<Element> = products.iter().map(|x| sys.mul(x, &g)).collect();
        products.extend(extended);
    }
    products
}

/// The four descriptions of `^J W`, evaluated independently on one element.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuotientCharacterizations {
    /// `w ≤ w'` for every `w'` in the coset `W_J w`.
    pub bruhat_minimal: bool,
    /// `ℓ(w) < ℓ(sw)` for every `s ∈ J`.
    pub no_left_descent: bool,
    /// `ℓ(uw) = ℓ(u) + ℓ(w)` for every `u ∈ W_J`.
    pub length_additive: bool,
    /// `w⁻¹(Φ_J⁺) ⊂ Φ⁺`.
    pub roots_positive: bool,
}

impl QuotientCharacterizations {
    pub fn agree(&self) -> bool {
        self.bruhat_minimal == self.no_left_descent
            && self.no_left_descent == self.length_additive
            && self.length_additive == self.roots_positive
    }
}

pub fn quotient_characterizations(
    sys: &CoxeterSystem,
    w: &Element,
    j: SimpleSubset,
    subgroup: &[Element],
) -> QuotientCharacterizations {
    let coset: Vec<Element> = subgroup.iter().map(|u| sys.mul(u, w)).collect();
    let bruhat_minimal = coset.iter().all(|x| sys.bruhat_leq(w, x));
    let no_left_descent = j.iter().all(|s| {
        let sw = sys.mul(&sys.generator(s), w);
        w.length() < sw.length()
    });
    let length_additive = subgroup
        .iter()
        .zip(&coset)
        .all(|(u, uw)| uw.length() == u.length() + w.length());
    let winv = sys.inverse(w);
    let roots_positive = sys
        .positive_roots_in(j)
        .iter()
        .all(|r| root_is_positive(&sys.act(&winv, r)));
    QuotientCharacterizations {
        bruhat_minimal,
        no_left_descent,
        length_additive,
        roots_positive,
    }
}

/// A pseudo-random element: a product of `3·|Φ⁺| + 1` random generators.
pub fn random_element<R: Rng>(sys: &CoxeterSystem, rng: &mut R) -> Element {
    let steps = 3 * sys.positive_roots().len() + 1 + rng.gen_range(0..2);
    let mut x = sys.identity();
    for _ in 0..steps {
        x = sys.mul_generator_right(&x, rng.gen_range(0..sys.rank()));
    }
    x
}
