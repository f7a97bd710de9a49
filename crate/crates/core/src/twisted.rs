//! The twisted specialization order `⪯_{J,δ}` on `^J W`, the Bruhat lemmas
//! it is built from, and Springer's description of `B×B`-orbit closures.

use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::OnceLock;

use rayon::prelude::*;

use crate::coxeter::{CoxeterSystem, Element, Side, SimpleSubset};
use crate::error::{Error, Result};
use crate::poset::Poset;

#[derive(Clone, Debug)]
enum Delta {
    /// `u ↦ c·F(u)·c⁻¹`.
    Conjugation { c: Element, c_inv: Element },
    /// Letterwise on reduced words, from the images of the generators.
    Letterwise,
}

/// Which of the three equivalent descriptions of `⪯` to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SpecAlgorithm {
    /// `∃ u ∈ W_J : u⁻¹ w δ(u) ≤ w'`.
    Naive,
    /// Length-preserving orbit of `w` under `x ↦ s x δ(s)`, `s ∈ J`.
    Bfs,
    /// `∃ v ≤ u in W_J : u w δ(v)⁻¹ ≤ w'`.
    Pair,
}

impl SpecAlgorithm {
    pub const ALL: [SpecAlgorithm; 3] = [Self::Naive, Self::Bfs, Self::Pair];
}

/// A label `(x, w)` of the `B×B`-orbit `Σ^{x,w}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct OrbitPair {
    pub x: Element,
    pub w: Element,
}

/// `(J, δ)` with `δ : W_J → W_K` an isomorphism mapping `J` onto `K`.
#[derive(Debug)]
pub struct TwistedOrder<'a> {
    sys: &'a CoxeterSystem,
    j: SimpleSubset,
    k: SimpleSubset,
    delta: Delta,
    /// `δ(s)` for `s ∈ J`, by generator index.
    images: Vec<usize>,
    subgroup: Vec<Element>,
    /// `(u, δ(v)⁻¹)` for all `v ≤ u` in `W_J`.
    pairs: OnceLock<Vec<(Element, Element)>>,
}

impl<'a> TwistedOrder<'a> {
    /// `δ(u) = w₀^J F(u) (w₀^J)⁻¹` and `K = w₀ J w₀`. Requires `F(J) = J`.
    pub fn new(sys: &'a CoxeterSystem, j: SimpleSubset) -> Result<Self> {
        let image = sys.frobenius_subset(j);
        if image != j {
            return Err(Error::FrobeniusDoesNotFixJ {
                j: j.to_string(),
                image: image.to_string(),
            });
        }
        let c = sys.w0_upper(j);
        let c_inv = sys.inverse(&c);
        let mut images = vec![usize::MAX; sys.rank()];
        for s in j.iter() {
            let t = sys
                .conjugate_generator(&c, sys.frobenius()[s])
                .ok_or_else(|| Error::TheoremViolation(format!("δ(s{}) is not simple", s + 1)))?;
            images[s] = t;
        }
        let k = sys.opposite(j);
        let order = Self::assemble(sys, j, Delta::Conjugation { c, c_inv }, images)?;
        if order.k != k {
            return Err(Error::TheoremViolation(format!(
                "δ(J) = {} differs from w0 J w0 = {k}",
                order.k
            )));
        }
        Ok(order)
    }

    /// An abstract `δ` given by `δ(s)` for each `s ∈ J`, in increasing order
    /// of `s`. The map must preserve the Coxeter matrix.
    pub fn with_generator_images(
        sys: &'a CoxeterSystem,
        j: SimpleSubset,
        generator_images: &[usize],
    ) -> Result<Self> {
        if generator_images.len() != j.len() {
            return Err(Error::Precondition(format!(
                "{} images given for {} generators",
                generator_images.len(),
                j.len()
            )));
        }
        let mut images = vec![usize::MAX; sys.rank()];
        for (s, &t) in j.iter().zip(generator_images) {
            if t >= sys.rank() {
                return Err(Error::InvalidIndex(format!("s{}", t + 1)));
            }
            images[s] = t;
        }
        let m = sys.coxeter_matrix();
        for s in j.iter() {
            for t in j.iter() {
                if m[s][t] != m[images[s]][images[t]] {
                    return Err(Error::NotDiagramAutomorphism(format!(
                        "δ does not preserve m(s{}, s{})",
                        s + 1,
                        t + 1
                    )));
                }
            }
        }
        Self::assemble(sys, j, Delta::Letterwise, images)
    }

    fn assemble(
        sys: &'a CoxeterSystem,
        j: SimpleSubset,
        delta: Delta,
        images: Vec<usize>,
    ) -> Result<Self> {
        let k: SimpleSubset = j.iter().map(|s| images[s]).collect();
        Ok(TwistedOrder {
            sys,
            j,
            k,
            delta,
            images,
            subgroup: sys.enumerate_subgroup(j)?,
            pairs: OnceLock::new(),
        })
    }

    pub fn system(&self) -> &'a CoxeterSystem {
        self.sys
    }

    pub fn j(&self) -> SimpleSubset {
        self.j
    }

    pub fn k(&self) -> SimpleSubset {
        self.k
    }

    /// `W_J`, breadth-first from `e`.
    pub fn subgroup(&self) -> &[Element] {
        &self.subgroup
    }

    /// `δ(s)` for `s ∈ J`.
    pub fn delta_generator(&self, s: usize) -> Option<usize> {
        self.j.contains(s).then(|| self.images[s])
    }

    /// `δ(u)` for `u ∈ W_J`.
    pub fn delta(&self, u: &Element) -> Element {
        match &self.delta {
            Delta::Conjugation { c, c_inv } => {
                self.sys.mul3(c, &self.sys.apply_frobenius(u), c_inv)
            }
            Delta::Letterwise => {
                let mut x = self.sys.identity();
                for s in self.sys.canonical_word(u) {
                    x = self.sys.mul_generator_right(&x, self.images[s]);
                }
                x
            }
        }
    }

    /// `u⁻¹ w δ(u)`.
    pub fn twisted_conjugate(&self, u: &Element, w: &Element) -> Element {
        self.sys
            .mul3(&self.sys.inverse(u), w, &self.delta(u))
    }

    /// Whether `u ≤ u' ⟺ δ(u) ≤ δ(u')` on all of `W_J`.
    pub fn delta_preserves_order(&self) -> bool {
        let images: Vec<Element> = self.subgroup.iter().map(|u| self.delta(u)).collect();
        self.subgroup.iter().zip(&images).all(|(a, da)| {
            self.subgroup
                .iter()
                .zip(&images)
                .all(|(b, db)| self.sys.bruhat_leq(a, b) == self.sys.bruhat_leq(da, db))
        })
    }

    pub fn delta_is_homomorphism(&self) -> bool {
        self.subgroup.iter().all(|a| {
            self.subgroup.iter().all(|b| {
                self.delta(&self.sys.mul(a, b)) == self.sys.mul(&self.delta(a), &self.delta(b))
            })
        })
    }

    // ---- the order ------------------------------------------------------

    /// `{u⁻¹ w δ(u) : u ∈ W_J}`, without repetitions.
    pub fn conjugates(&self, w: &Element) -> Vec<Element> {
        let mut seen = HashSet::new();
        self.subgroup
            .iter()
            .map(|u| self.twisted_conjugate(u, w))
            .filter(|x| seen.insert(*x))
            .collect()
    }

    /// The closure of `{w}` under `x ↦ s x δ(s)` for `s ∈ J`, keeping only
    /// elements of length `ℓ(w)`.
    pub fn orbit(&self, w: &Element) -> Vec<Element> {
        let mut seen = HashSet::new();
        let mut queue = VecDeque::new();
        let mut out = Vec::new();
        seen.insert(*w);
        queue.push_back(*w);
        while let Some(x) = queue.pop_front() {
            out.push(x);
            for s in self.j.iter() {
                let y = self.sys.mul_generator_right(
                    &self.sys.mul_generator_left(s, &x),
                    self.images[s],
                );
                if y.length() == w.length() && seen.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        out
    }

    fn pairs(&self) -> &[(Element, Element)] {
        self.pairs.get_or_init(|| {
            let dinv: Vec<Element> = self
                .subgroup
                .iter()
                .map(|v| self.sys.inverse(&self.delta(v)))
                .collect();
            self.subgroup
                .par_iter()
                .flat_map_iter(|u| {
                    self.subgroup
                        .iter()
                        .zip(&dinv)
                        .filter(|(v, _)| self.sys.bruhat_leq(v, u))
                        .map(|(_, d)| (*u, *d))
                        .collect::<Vec<_>>()
                })
                .collect()
        })
    }

    /// `{u w δ(v)⁻¹ : v ≤ u in W_J}`, without repetitions.
    pub fn pair_images(&self, w: &Element) -> Vec<Element> {
        let mut seen = HashSet::new();
        self.pairs()
            .iter()
            .map(|(u, d)| self.sys.mul3(u, w, d))
            .filter(|x| seen.insert(*x))
            .collect()
    }

    /// The set whose Bruhat-lower elements decide `w ⪯ ·` for the chosen
    /// algorithm: `w ⪯ w'` iff some member is `≤ w'`.
    pub fn witnesses(&self, w: &Element, algorithm: SpecAlgorithm) -> Vec<Element> {
        match algorithm {
            SpecAlgorithm::Naive => self.conjugates(w),
            SpecAlgorithm::Bfs => self.orbit(w),
            SpecAlgorithm::Pair => self.pair_images(w),
        }
    }

    pub fn spec_leq(&self, w: &Element, w2: &Element, algorithm: SpecAlgorithm) -> bool {
        self.witnesses(w, algorithm)
            .iter()
            .any(|x| self.sys.bruhat_leq(x, w2))
    }

    /// Exhaustive search over `W_J`; returns some `u` with `u⁻¹ w δ(u) ≤ w'`.
    pub fn spec_leq_naive_witness(&self, w: &Element, w2: &Element) -> Option<Element> {
        self.subgroup
            .iter()
            .find(|u| self.sys.bruhat_leq(&self.twisted_conjugate(u, w), w2))
            .copied()
    }

    pub fn spec_leq_naive(&self, w: &Element, w2: &Element) -> bool {
        self.spec_leq_naive_witness(w, w2).is_some()
    }

    /// Both arguments are expected in `^J W`; completeness of the orbit
    /// search relies on it.
    pub fn spec_leq_bfs(&self, w: &Element, w2: &Element) -> bool {
        self.spec_leq(w, w2, SpecAlgorithm::Bfs)
    }

    pub fn spec_leq_pair(&self, w: &Element, w2: &Element) -> bool {
        self.spec_leq(w, w2, SpecAlgorithm::Pair)
    }

    /// The relation on `elements` as a dense matrix, `m[i][j]` iff
    /// `elements[i] ⪯ elements[j]`.
    pub fn relation_matrix(
        &self,
        elements: &[Element],
        algorithm: SpecAlgorithm,
    ) -> Vec<Vec<bool>> {
        elements
            .par_iter()
            .map(|w| {
                let ws = self.witnesses(w, algorithm);
                elements
                    .iter()
                    .map(|w2| ws.iter().any(|x| self.sys.bruhat_leq(x, w2)))
                    .collect()
            })
            .collect()
    }

    /// `^J W`, sorted by length then canonical word.
    pub fn quotient(&self) -> Result<Vec<Element>> {
        self.sys.min_coset_reps(self.j, Side::Left)
    }

    /// `(^J W, ⪯)` with axioms checked and covers computed.
    pub fn spec_poset(&self) -> Result<Poset<Element>> {
        let reps = self.quotient()?;
        let matrix = self.relation_matrix(&reps, SpecAlgorithm::Bfs);
        Poset::from_matrix(reps, &matrix)
    }

    fn require_left_quotient(&self, w: &Element) -> Result<()> {
        if self.sys.in_quotient(w, self.j, Side::Left) {
            Ok(())
        } else {
            Err(Error::NotInQuotient {
                element: self.sys.word_string(w),
                quotient: format!("^{}W", self.j),
            })
        }
    }

    fn require_subgroup(&self, u: &Element) -> Result<()> {
        if self.sys.in_subgroup(u, self.j) {
            Ok(())
        } else {
            Err(Error::Precondition(format!(
                "{} is not in W_{}",
                self.sys.word_string(u),
                self.j
            )))
        }
    }

    /// `{w' ∈ ^J W : w' ⪯ w}`, sorted by length then canonical word.
    pub fn closure_set(&self, w: &Element) -> Result<Vec<Element>> {
        self.require_left_quotient(w)?;
        let reps = self.quotient()?;
        Ok(reps
            .par_iter()
            .filter(|x| x.length() <= w.length() && self.spec_leq_bfs(x, w))
            .copied()
            .collect())
    }

    /// `u w' δ(v)⁻¹ ≤ w`, for `w, w' ∈ ^J W` and `v ≤ u` in `W_J`.
    pub fn spec_coroll_check(
        &self,
        w: &Element,
        w2: &Element,
        u: &Element,
        v: &Element,
    ) -> Result<bool> {
        self.require_left_quotient(w)?;
        self.require_left_quotient(w2)?;
        self.require_subgroup(u)?;
        self.require_subgroup(v)?;
        if !self.sys.bruhat_leq(v, u) {
            return Err(Error::Precondition(format!(
                "{} is not below {}",
                self.sys.word_string(v),
                self.sys.word_string(u)
            )));
        }
        let x = self
            .sys
            .mul3(u, w2, &self.sys.inverse(&self.delta(v)));
        Ok(self.sys.bruhat_leq(&x, w))
    }

    /// `w ⪯ w'`, `ℓ(w) = ℓ(w')` and `w ≠ w'` all at once. Never true for
    /// a correct implementation.
    pub fn lengthequal_check(&self, w: &Element, w2: &Element) -> bool {
        w != w2 && w.length() == w2.length() && self.spec_leq_bfs(w, w2)
    }

    /// For `w ⪯ w'` in `^J W`: `(u, u')` in `W_J` with
    /// `u w ≤ u' w' δ(u')⁻¹ δ(u)` and the right side in `^J W`.
    pub fn lemma_spec1_witness(&self, w: &Element, w2: &Element) -> Result<(Element, Element)> {
        self.require_left_quotient(w)?;
        self.require_left_quotient(w2)?;
        if !self.spec_leq_bfs(w, w2) {
            return Err(Error::Precondition(format!(
                "{} is not ⪯ {}",
                self.sys.word_string(w),
                self.sys.word_string(w2)
            )));
        }
        let deltas: Vec<Element> = self.subgroup.iter().map(|u| self.delta(u)).collect();
        for (u2, d2) in self.subgroup.iter().zip(&deltas) {
            let left = self.sys.mul3(u2, w2, &self.sys.inverse(d2));
            for (u, d) in self.subgroup.iter().zip(&deltas) {
                let w1 = self.sys.mul(&left, d);
                if self.sys.in_quotient(&w1, self.j, Side::Left)
                    && self.sys.bruhat_leq(&self.sys.mul(u, w), &w1)
                {
                    return Ok((*u, *u2));
                }
            }
        }
        Err(Error::TheoremViolation(format!(
            "no (u, u') for {} ⪯ {}",
            self.sys.word_string(w),
            self.sys.word_string(w2)
        )))
    }

    /// For `w ∈ ^J W` and `v ≤ u` in `W_J`: some `x ≤ v` with a reduced word
    /// `s₁…s_r` such that every `s_i…s₁ w δ(s₁)…δ(s_i)` has length `ℓ(w)`,
    /// and `x⁻¹ w δ(x) ≤ u⁻¹ w δ(v)`. The word is returned 0-based.
    pub fn bruhatfour_witness(
        &self,
        w: &Element,
        u: &Element,
        v: &Element,
    ) -> Result<(Element, Vec<usize>)> {
        self.require_left_quotient(w)?;
        self.require_subgroup(u)?;
        self.require_subgroup(v)?;
        if !self.sys.bruhat_leq(v, u) {
            return Err(Error::Precondition(format!(
                "{} is not below {}",
                self.sys.word_string(v),
                self.sys.word_string(u)
            )));
        }
        let target = self.sys.mul3(&self.sys.inverse(u), w, &self.delta(v));
        // Breadth-first over x = s₁…s_i, tracking y = x⁻¹ w δ(x).
        let e = self.sys.identity();
        let mut parent: HashMap<Element, (Element, usize)> = HashMap::new();
        let mut queue = VecDeque::new();
        let mut seen = HashSet::new();
        seen.insert(e);
        queue.push_back((e, *w));
        while let Some((x, y)) = queue.pop_front() {
            if self.sys.bruhat_leq(&y, &target) {
                let mut word = Vec::new();
                let mut cur = x;
                while let Some(&(prev, s)) = parent.get(&cur) {
                    word.push(s);
                    cur = prev;
                }
                word.reverse();
                return Ok((x, word));
            }
            for s in self.j.iter() {
                if self.sys.is_right_descent(&x, s) {
                    continue;
                }
                let x2 = self.sys.mul_generator_right(&x, s);
                if !self.sys.bruhat_leq(&x2, v) {
                    continue;
                }
                let y2 = self.sys.mul_generator_right(
                    &self.sys.mul_generator_left(s, &y),
                    self.images[s],
                );
                if y2.length() == w.length() && seen.insert(x2) {
                    parent.insert(x2, (x, s));
                    queue.push_back((x2, y2));
                }
            }
        }
        Err(Error::TheoremViolation(format!(
            "no reduced twisted path for w = {}, u = {}, v = {}",
            self.sys.word_string(w),
            self.sys.word_string(u),
            self.sys.word_string(v)
        )))
    }

    // ---- B×B-orbits ------------------------------------------------------

    /// `Σ^{x,w} = Σ^{x',w'}`: some `u ∈ W_J` has `x' = x F(u)⁻¹` and `w' u = w`.
    pub fn springer_orbit_equal(&self, p: &OrbitPair, p2: &OrbitPair) -> bool {
        // u is forced: u = w'⁻¹ w.
        let u = self.sys.mul(&self.sys.inverse(&p2.w), &p.w);
        self.sys.in_subgroup(&u, self.j)
            && p2.x
                == self
                    .sys
                    .mul(&p.x, &self.sys.inverse(&self.sys.apply_frobenius(&u)))
    }

    /// `Σ^{x',w'} ⊆ closure(Σ^{x,w})` for `x, x' ∈ W^J`: some `u ∈ W_J` has
    /// `x u⁻¹ ≤ x'` and `F(w') u ≤ F(w)`.
    pub fn springer_orbit_in_closure(&self, p: &OrbitPair, p2: &OrbitPair) -> Result<bool> {
        for x in [&p.x, &p2.x] {
            if !self.sys.in_quotient(x, self.j, Side::Right) {
                return Err(Error::NotInQuotient {
                    element: self.sys.word_string(x),
                    quotient: format!("W^{}", self.j),
                });
            }
        }
        let fw = self.sys.apply_frobenius(&p.w);
        let fw2 = self.sys.apply_frobenius(&p2.w);
        Ok(self.subgroup.iter().any(|u| {
            self.sys.bruhat_leq(&self.sys.mul(&p.x, &self.sys.inverse(u)), &p2.x)
                && self.sys.bruhat_leq(&self.sys.mul(&fw2, u), &fw)
        }))
    }

    /// The labels `x` with `Σ^{x w₀^J, 1}` in the closure of `Σ^{w w₀^J, 1}`,
    /// which is the Bruhat cone `{x ≤ w}`.
    pub fn sigma_closure(&self, w: &Element) -> Result<Vec<Element>> {
        self.sys.lower_cone(w)
    }
}

impl CoxeterSystem {
    /// `{x ∈ W : x ≤ w}`, sorted by length then canonical word.
    pub fn lower_cone(&self, w: &Element) -> Result<Vec<Element>> {
        let mut out: Vec<Element> = self
            .elements()?
            .iter()
            .filter(|x| x.length() <= w.length() && self.bruhat_leq(x, w))
            .copied()
            .collect();
        self.sort_shortlex(&mut out);
        Ok(out)
    }

    /// The least and greatest `y` with `w y ≤ x`.
    pub fn ymin_ymax(&self, w: &Element, x: &Element) -> Result<(Element, Element)> {
        let winv = self.inverse(w);
        // w y ≤ x iff y = w⁻¹ z with z ≤ x.
        let members: Vec<Element> = self
            .lower_cone(x)?
            .iter()
            .map(|z| self.mul(&winv, z))
            .collect();
        let lo = members.iter().min_by_key(|y| y.length());
        let hi = members.iter().max_by_key(|y| y.length());
        let (Some(lo), Some(hi)) = (lo, hi) else {
            return Err(Error::TheoremViolation("{y : wy ≤ x} is empty".into()));
        };
        if members
            .iter()
            .all(|y| self.bruhat_leq(lo, y) && self.bruhat_leq(y, hi))
        {
            Ok((*lo, *hi))
        } else {
            Err(Error::TheoremViolation(format!(
                "{{y : wy ≤ x}} has no least or greatest element for w = {}, x = {}",
                self.word_string(w),
                self.word_string(x)
            )))
        }
    }

    /// For `w ≤ w'`: some `x ≤ x'` with `x w ≤ x' w'` (variant 1) or
    /// `x' w ≤ x w'` (variant 2).
    pub fn bruhat_witness_lemmas(
        &self,
        x2: &Element,
        w: &Element,
        w2: &Element,
        variant: u8,
    ) -> Result<Element> {
        if variant != 1 && variant != 2 {
            return Err(Error::Precondition(format!("unknown variant {variant}")));
        }
        if !self.bruhat_leq(w, w2) {
            return Err(Error::Precondition(format!(
                "{} is not below {}",
                self.word_string(w),
                self.word_string(w2)
            )));
        }
        let found = self.lower_cone(x2)?.into_iter().find(|x| match variant {
            1 => self.bruhat_leq(&self.mul(x, w), &self.mul(x2, w2)),
            _ => self.bruhat_leq(&self.mul(x2, w), &self.mul(x, w2)),
        });
        found.ok_or_else(|| {
            Error::TheoremViolation(format!(
                "no x ≤ {} for w = {}, w' = {} (variant {variant})",
                self.word_string(x2),
                self.word_string(w),
                self.word_string(w2)
            ))
        })
    }

    /// For `x ∈ ^J W` with `ℓ(xu) = ℓ(x) + ℓ(u)`, `xu = u' x'` and
    /// `u'₁ ≤ u'`: the `u₁ ≤ u` with `x u₁ = u'₁ x'`.
    pub fn bruhat_lifting_witness(
        &self,
        x: &Element,
        u: &Element,
        u1_prime: &Element,
        j: SimpleSubset,
    ) -> Result<Element> {
        if !self.in_quotient(x, j, Side::Left) {
            return Err(Error::NotInQuotient {
                element: self.word_string(x),
                quotient: format!("^{j}W"),
            });
        }
        let xu = self.mul(x, u);
        if xu.length() != x.length() + u.length() {
            return Err(Error::Precondition(format!(
                "ℓ({}·{}) is not additive",
                self.word_string(x),
                self.word_string(u)
            )));
        }
        let d = self.decompose(&xu, j);
        if !self.bruhat_leq(u1_prime, &d.u) {
            return Err(Error::Precondition(format!(
                "{} is not below {}",
                self.word_string(u1_prime),
                self.word_string(&d.u)
            )));
        }
        // x u₁ = u'₁ x' determines u₁.
        let u1 = self.mul3(&self.inverse(x), u1_prime, &d.w);
        if self.bruhat_leq(&u1, u) {
            Ok(u1)
        } else {
            Err(Error::TheoremViolation(format!(
                "x⁻¹ u'₁ x' = {} is not below u = {}",
                self.word_string(&u1),
                self.word_string(u)
            )))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::Family;

    fn w(s: &CoxeterSystem, word: &[usize]) -> Element {
        s.element_from_word(&word.iter().map(|i| i - 1).collect::<Vec<_>>())
            .unwrap()
    }

    fn set(ix: &[usize]) -> SimpleSubset {
        ix.iter().map(|i| i - 1).collect()
    }

    #[test]
    fn delta_examples() {
        let c3 = CoxeterSystem::new(Family::C, 3, None).unwrap();
        let t = TwistedOrder::new(&c3, set(&[1, 2])).unwrap();
        assert_eq!(t.delta(&w(&c3, &[1])), w(&c3, &[2]));
        assert_eq!(t.k(), set(&[1, 2]));
        let trivial = TwistedOrder::new(&c3, SimpleSubset::EMPTY).unwrap();
        assert_eq!(trivial.subgroup().len(), 1);
    }

    #[test]
    fn frobenius_must_fix_j() {
        let a3 = CoxeterSystem::new(Family::A, 3, Some(vec![2, 1, 0])).unwrap();
        assert!(matches!(
            TwistedOrder::new(&a3, set(&[1])),
            Err(Error::FrobeniusDoesNotFixJ { .. })
        ));
        assert!(TwistedOrder::new(&a3, set(&[1, 3])).is_ok());
    }

    #[test]
    fn abstract_delta_validation() {
        let a3 = CoxeterSystem::new(Family::A, 3, None).unwrap();
        let t = TwistedOrder::with_generator_images(&a3, set(&[1, 2]), &[2, 1]).unwrap();
        assert_eq!(t.delta(&w(&a3, &[1, 2])), w(&a3, &[3, 2]));
        assert!(TwistedOrder::with_generator_images(&a3, set(&[1, 2]), &[0, 2]).is_err());
        assert!(TwistedOrder::with_generator_images(&a3, set(&[1]), &[7]).is_err());
    }

    #[test]
    fn c2_poset_is_a_chain() {
        let c2 = CoxeterSystem::new(Family::C, 2, None).unwrap();
        let t = TwistedOrder::new(&c2, set(&[1])).unwrap();
        let p = t.spec_poset().unwrap();
        let lengths: Vec<usize> = p.labels().iter().map(|x| x.length()).collect();
        assert_eq!(lengths, vec![0, 1, 2, 3]);
        assert_eq!(p.covers(), &[(0, 1), (1, 2), (2, 3)]);
    }

    #[test]
    fn extreme_subsets() {
        let a2 = CoxeterSystem::new(Family::A, 2, None).unwrap();
        let none = TwistedOrder::new(&a2, SimpleSubset::EMPTY).unwrap();
        let p = none.spec_poset().unwrap();
        for i in 0..p.len() {
            for j in 0..p.len() {
                assert_eq!(p.leq(i, j), a2.bruhat_leq(&p.labels()[i], &p.labels()[j]));
            }
        }
        let all = TwistedOrder::new(&a2, a2.all_generators()).unwrap();
        assert_eq!(all.spec_poset().unwrap().len(), 1);
    }

    #[test]
    fn witnesses_trivial_cases() {
        let a2 = CoxeterSystem::new(Family::A, 2, None).unwrap();
        let e = a2.identity();
        let x = w(&a2, &[1, 2]);
        assert_eq!(a2.ymin_ymax(&e, &x).unwrap(), (e, x));
        // Every y has xy ≤ w₀.
        assert_eq!(a2.ymin_ymax(&x, &a2.w0()).unwrap(), (e, a2.w0()));
        assert_eq!(a2.bruhat_witness_lemmas(&e, &e, &x, 1).unwrap(), e);
        assert!(a2.bruhat_witness_lemmas(&e, &x, &e, 1).is_err());

        let t = TwistedOrder::new(&a2, set(&[1])).unwrap();
        let s2 = w(&a2, &[2]);
        let s1 = w(&a2, &[1]);
        let (x0, word) = t.bruhatfour_witness(&s2, &s1, &e).unwrap();
        assert_eq!((x0, word.len()), (e, 0));
        assert!(!t.lengthequal_check(&s2, &s2));
        assert_eq!(t.closure_set(&e).unwrap(), vec![e]);
        assert_eq!(t.spec_leq_naive_witness(&s2, &s2), Some(e));
    }

    #[test]
    fn springer_basics() {
        let a2 = CoxeterSystem::new(Family::A, 2, None).unwrap();
        let t = TwistedOrder::new(&a2, set(&[1])).unwrap();
        let p = OrbitPair {
            x: w(&a2, &[2]),
            w: w(&a2, &[1, 2]),
        };
        assert!(t.springer_orbit_equal(&p, &p));
        assert!(t.springer_orbit_in_closure(&p, &p).unwrap());
        let bad = OrbitPair {
            x: w(&a2, &[1]),
            w: a2.identity(),
        };
        assert!(t.springer_orbit_in_closure(&bad, &p).is_err());
        assert_eq!(t.sigma_closure(&a2.w0()).unwrap().len(), 6);
    }
}
