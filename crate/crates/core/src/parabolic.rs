//! Parabolic quotients `^J W`, `W^J`, `^J W^K` and the decompositions that
//! live on them.

use std::collections::{HashSet, VecDeque};

use crate::coxeter::{root_is_positive, root_support, CoxeterSystem, Element, Side, SimpleSubset};
use crate::error::{Error, Result};

/// `x = u·w` with `u ∈ W_J`, `w ∈ ^J W` and `ℓ(x) = ℓ(u) + ℓ(w)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ParabolicDecomposition {
    pub u: Element,
    pub w: Element,
}

/// `w = u·w̄·v` with `u ∈ W_J`, `w̄ ∈ ^J W^K`, `v ∈ W_K ∩ ^{K'}W` where
/// `K' = K ∩ w̄⁻¹ J w̄`, and additive lengths.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HowlettDecomposition {
    pub u: Element,
    pub wbar: Element,
    pub v: Element,
    pub k_prime: SimpleSubset,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConvertKind {
    /// `x ↦ x⁻¹`, from `^J W` onto `W^J`.
    Inverse,
    /// `x ↦ w₀ x w₀`, from `W^J` onto `W^K` with `K = w₀ J w₀`.
    ConjugateW0,
    /// `x ↦ x⁻¹ w₀^K`, from `^J W` onto `W^K`; reverses Bruhat order.
    ReverseToWK,
}

/// The types-only shadow of the refinement sequence of parabolic pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitTypeSequence {
    /// `(J_n, K_n, y_n)` for `n = 0..=stable_index`.
    pub trace: Vec<(SimpleSubset, SimpleSubset, Element)>,
    pub stable_index: usize,
}

impl OrbitTypeSequence {
    pub fn j_infinity(&self) -> SimpleSubset {
        self.trace[self.stable_index].0
    }

    pub fn k_infinity(&self) -> SimpleSubset {
        self.trace[self.stable_index].1
    }

    pub fn y_infinity(&self) -> Element {
        self.trace[self.stable_index].2
    }
}

impl CoxeterSystem {
    /// Membership in `^J W` (left) or `W^J` (right): no descents in `J` on that side.
    pub fn in_quotient(&self, x: &Element, j: SimpleSubset, side: Side) -> bool {
        self.descents(x, side).intersection(j).is_empty()
    }

    pub fn in_double_quotient(&self, x: &Element, j: SimpleSubset, k: SimpleSubset) -> bool {
        self.in_quotient(x, j, Side::Left) && self.in_quotient(x, k, Side::Right)
    }

    fn require_quotient(&self, x: &Element, j: SimpleSubset, side: Side) -> Result<()> {
        if self.in_quotient(x, j, side) {
            return Ok(());
        }
        let quotient = match side {
            Side::Left => format!("^{j}W"),
            Side::Right => format!("W^{j}"),
        };
        Err(Error::NotInQuotient {
            element: self.word_string(x),
            quotient,
        })
    }

    /// `w₀ J w₀`.
    pub fn opposite(&self, j: SimpleSubset) -> SimpleSubset {
        self.conjugate_subset(&self.w0(), j)
            .expect("w0 permutes the simple reflections")
    }

    /// `w₀^J = w₀ w_{0,J}`, the longest element of `W^J`.
    pub fn w0_upper(&self, j: SimpleSubset) -> Element {
        self.mul(&self.w0(), &self.longest_element(j))
    }

    /// Minimal length coset representatives, sorted by length then canonical
    /// word. Left gives `^J W`, right gives `W^J`.
    pub fn min_coset_reps(&self, j: SimpleSubset, side: Side) -> Result<Vec<Element>> {
        // `^J W` is closed under deleting right descents, so a walk upward
        // through right multiplication reaches all of it.
        let mut seen = HashSet::new();
        let mut queue = VecDeque::new();
        let mut reps = Vec::new();
        let e = self.identity();
        seen.insert(e);
        queue.push_back(e);
        while let Some(x) = queue.pop_front() {
            reps.push(x);
            if reps.len() > self.max_order() {
                return Err(Error::BoundExceeded {
                    what: format!("^{j}W"),
                    limit: self.max_order(),
                });
            }
            for s in 0..self.rank() {
                if self.is_right_descent(&x, s) {
                    continue;
                }
                let y = self.mul_generator_right(&x, s);
                if self.in_quotient(&y, j, Side::Left) && seen.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        if side == Side::Right {
            for x in reps.iter_mut() {
                *x = self.inverse(x);
            }
        }
        self.sort_shortlex(&mut reps);
        Ok(reps)
    }

    /// `^J W^K`, one representative per double coset `W_J \ W / W_K`.
    pub fn double_reps(&self, j: SimpleSubset, k: SimpleSubset) -> Result<Vec<Element>> {
        let mut reps = self.min_coset_reps(j, Side::Left)?;
        reps.retain(|x| self.in_quotient(x, k, Side::Right));
        Ok(reps)
    }

    /// Splits `x = u·w` into its `W_J`-part and `^J W`-part.
    pub fn decompose(&self, x: &Element, j: SimpleSubset) -> ParabolicDecomposition {
        let mut w = *x;
        let mut u = self.identity();
        while let Some(s) = self.descents(&w, Side::Left).intersection(j).iter().next() {
            w = self.mul_generator_left(s, &w);
            u = self.mul_generator_right(&u, s);
        }
        ParabolicDecomposition { u, w }
    }

    /// Splits `x = w·v` with `w ∈ W^K` and `v ∈ W_K`.
    pub fn decompose_right(&self, x: &Element, k: SimpleSubset) -> (Element, Element) {
        let mut w = *x;
        let mut v = self.identity();
        while let Some(s) = self.descents(&w, Side::Right).intersection(k).iter().next() {
            w = self.mul_generator_right(&w, s);
            v = self.mul_generator_left(s, &v);
        }
        (w, v)
    }

    /// The minimal element of the double coset `W_J x W_K`.
    pub fn min_double_rep(&self, x: &Element, j: SimpleSubset, k: SimpleSubset) -> Element {
        let mut w = *x;
        loop {
            if let Some(s) = self.descents(&w, Side::Left).intersection(j).iter().next() {
                w = self.mul_generator_left(s, &w);
            } else if let Some(s) = self.descents(&w, Side::Right).intersection(k).iter().next() {
                w = self.mul_generator_right(&w, s);
            } else {
                return w;
            }
        }
    }

    /// `K ∩ x⁻¹ J x`: the `s ∈ K` whose conjugate `x s x⁻¹` lies in `J`.
    pub fn pullback_subset(&self, x: &Element, k: SimpleSubset, j: SimpleSubset) -> SimpleSubset {
        k.iter()
            .filter(|&s| self.conjugate_generator(x, s).is_some_and(|t| j.contains(t)))
            .collect()
    }

    pub fn howlett_decompose(
        &self,
        w: &Element,
        j: SimpleSubset,
        k: SimpleSubset,
    ) -> HowlettDecomposition {
        let ParabolicDecomposition { u, w: tail } = self.decompose(w, j);
        let wbar = self.min_double_rep(w, j, k);
        let v = self.mul(&self.inverse(&wbar), &tail);
        let k_prime = self.pullback_subset(&wbar, k, j);
        HowlettDecomposition {
            u,
            wbar,
            v,
            k_prime,
        }
    }

    /// For `w ∈ w̄ W_K` with `w̄ ∈ ^J W^K`: whether the `W_J`-factor of the
    /// Howlett decomposition lies in `W_{J'}`, `J' = J ∩ w̄ K w̄⁻¹`.
    pub fn howlett_variant_check(
        &self,
        w: &Element,
        wbar: &Element,
        j: SimpleSubset,
        k: SimpleSubset,
    ) -> Result<bool> {
        if !self.in_double_quotient(wbar, j, k) {
            return Err(Error::Precondition(format!(
                "{} is not in ^{j}W^{k}",
                self.word_string(wbar)
            )));
        }
        let wbar_inv = self.inverse(wbar);
        if !self.in_subgroup(&self.mul(&wbar_inv, w), k) {
            return Err(Error::Precondition(format!(
                "{} is not in {}·W_{k}",
                self.word_string(w),
                self.word_string(wbar)
            )));
        }
        let j_prime = self.pullback_subset(&wbar_inv, j, k);
        let h = self.howlett_decompose(w, j, k);
        Ok(h.wbar == *wbar && self.in_subgroup(&h.u, j_prime))
    }

    pub fn convert(&self, x: &Element, j: SimpleSubset, kind: ConvertKind) -> Result<Element> {
        match kind {
            ConvertKind::Inverse => {
                self.require_quotient(x, j, Side::Left)?;
                Ok(self.inverse(x))
            }
            ConvertKind::ConjugateW0 => {
                self.require_quotient(x, j, Side::Right)?;
                let w0 = self.w0();
                Ok(self.mul3(&w0, x, &w0))
            }
            ConvertKind::ReverseToWK => {
                self.require_quotient(x, j, Side::Left)?;
                let k = self.opposite(j);
                Ok(self.mul(&self.inverse(x), &self.w0_upper(k)))
            }
        }
    }

    /// `J ∩ w K w⁻¹` for `w ∈ ^J W^K`.
    pub fn refinement_type(
        &self,
        j: SimpleSubset,
        k: SimpleSubset,
        w: &Element,
    ) -> Result<SimpleSubset> {
        if !self.in_double_quotient(w, j, k) {
            return Err(Error::Precondition(format!(
                "{} is not in ^{j}W^{k}",
                self.word_string(w)
            )));
        }
        Ok(self.pullback_subset(&self.inverse(w), j, k))
    }

    /// Whether `w⁻¹ Φ_J⁺ ⊂ Φ_K ∪ Φ⁺`.
    pub fn refinement_contains_borel(&self, j: SimpleSubset, k: SimpleSubset, w: &Element) -> bool {
        let winv = self.inverse(w);
        self.positive_roots_in(j).iter().all(|r| {
            let image = self.act(&winv, r);
            root_is_positive(&image) || root_support(&image, self.rank()).is_subset(k)
        })
    }

    /// `(J_∞, K_∞)` for `w ∈ ^J W`: `J_∞` is the largest `J' ⊆ J` with
    /// `(w w₀^J) J' (w w₀^J)⁻¹ = J'`, and `K_∞ = w₀^J J_∞ (w₀^J)⁻¹`.
    pub fn j_infinity(&self, w: &Element, j: SimpleSubset) -> Result<(SimpleSubset, SimpleSubset)> {
        self.require_quotient(w, j, Side::Left)?;
        let top = self.w0_upper(j);
        let x = self.mul(w, &top);
        let mut current = j;
        loop {
            let next: SimpleSubset = current
                .iter()
                .filter(|&s| {
                    self.conjugate_generator(&x, s)
                        .is_some_and(|t| current.contains(t))
                })
                .collect();
            if next == current {
                break;
            }
            current = next;
        }
        let k_inf = self
            .conjugate_subset(&top, current)
            .ok_or_else(|| Error::TheoremViolation("w0^J J_inf is not simple".into()))?;
        let via_w = self.conjugate_subset(&self.inverse(w), current);
        if via_w != Some(k_inf) {
            return Err(Error::TheoremViolation(format!(
                "K_inf mismatch for {}: w0^J-conjugate {k_inf}, w^-1-conjugate {via_w:?}",
                self.word_string(w)
            )));
        }
        Ok((current, k_inf))
    }

    /// Iterates `y_n = min(W_{J_n} w W_{K_n})`, `J_{n+1} = J_n ∩ y_n K_n y_n⁻¹`,
    /// `K_{n+1} = w₀^J J_{n+1} (w₀^J)⁻¹` from `J_0 = J`, `K_0 = w₀ J w₀` until
    /// the triple repeats.
    pub fn orbit_type_sequence(&self, w: &Element, j: SimpleSubset) -> Result<OrbitTypeSequence> {
        self.require_quotient(w, j, Side::Left)?;
        let top = self.w0_upper(j);
        let mut jn = j;
        let mut kn = self.opposite(j);
        let mut trace = Vec::new();
        loop {
            let y = self.min_double_rep(w, jn, kn);
            trace.push((jn, kn, y));
            let next_j = self.pullback_subset(&self.inverse(&y), jn, kn);
            let next_k = self
                .conjugate_subset(&top, next_j)
                .ok_or_else(|| Error::TheoremViolation("w0^J J_n is not simple".into()))?;
            let next_y = self.min_double_rep(w, next_j, next_k);
            if (next_j, next_k, next_y) == (jn, kn, y) {
                let stable_index = trace.len() - 1;
                return Ok(OrbitTypeSequence {
                    trace,
                    stable_index,
                });
            }
            jn = next_j;
            kn = next_k;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::Family;

    fn sys(f: Family, n: usize) -> CoxeterSystem {
        CoxeterSystem::new(f, n, None).unwrap()
    }

    fn w(s: &CoxeterSystem, word: &[usize]) -> Element {
        s.element_from_word(&word.iter().map(|i| i - 1).collect::<Vec<_>>())
            .unwrap()
    }

    fn set(ix: &[usize]) -> SimpleSubset {
        ix.iter().map(|i| i - 1).collect()
    }

    #[test]
    fn coset_reps_a2() {
        let a2 = sys(Family::A, 2);
        let reps = a2.min_coset_reps(set(&[1]), Side::Left).unwrap();
        assert_eq!(reps, vec![a2.identity(), w(&a2, &[2]), w(&a2, &[2, 1])]);
        assert_eq!(a2.min_coset_reps(SimpleSubset::EMPTY, Side::Left).unwrap().len(), 6);
        let right = a2.min_coset_reps(set(&[1]), Side::Right).unwrap();
        assert_eq!(right, vec![a2.identity(), w(&a2, &[2]), w(&a2, &[1, 2])]);
    }

    #[test]
    fn double_reps_a2() {
        let a2 = sys(Family::A, 2);
        assert_eq!(
            a2.double_reps(set(&[1]), set(&[2])).unwrap(),
            vec![a2.identity(), w(&a2, &[2, 1])]
        );
        let all = a2.all_generators();
        assert_eq!(a2.double_reps(all, all).unwrap(), vec![a2.identity()]);
        assert_eq!(
            a2.double_reps(SimpleSubset::EMPTY, SimpleSubset::EMPTY).unwrap().len(),
            6
        );
    }

    #[test]
    fn symplectic_quotient_has_2_pow_g() {
        for g in 2..=5 {
            let c = sys(Family::C, g);
            let j: SimpleSubset = (0..g - 1).collect();
            assert_eq!(c.min_coset_reps(j, Side::Left).unwrap().len(), 1 << g);
        }
    }

    #[test]
    fn decompose_examples() {
        let a2 = sys(Family::A, 2);
        let d = a2.decompose(&w(&a2, &[1, 2]), set(&[1]));
        assert_eq!((d.u, d.w), (w(&a2, &[1]), w(&a2, &[2])));
        let x = w(&a2, &[2, 1]);
        assert_eq!(a2.decompose(&x, set(&[1])).w, x);
        let s1 = w(&a2, &[1]);
        assert_eq!(a2.decompose(&s1, set(&[1])).u, s1);
    }

    #[test]
    fn howlett_example() {
        let a2 = sys(Family::A, 2);
        let h = a2.howlett_decompose(&a2.w0(), set(&[1]), set(&[2]));
        assert_eq!(h.u, w(&a2, &[1]));
        assert_eq!(h.wbar, w(&a2, &[2, 1]));
        assert_eq!(h.v, a2.identity());
        let s1 = w(&a2, &[1]);
        let h = a2.howlett_decompose(&s1, set(&[1]), set(&[2]));
        assert_eq!((h.u, h.wbar, h.v), (s1, a2.identity(), a2.identity()));
    }

    #[test]
    fn howlett_variant_precondition() {
        let a2 = sys(Family::A, 2);
        let e = a2.identity();
        assert!(a2.howlett_variant_check(&e, &e, set(&[1]), set(&[2])).unwrap());
        assert!(matches!(
            a2.howlett_variant_check(&w(&a2, &[1]), &e, set(&[1]), set(&[2])),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn convert_edge_cases() {
        let a2 = sys(Family::A, 2);
        let j = set(&[1]);
        let e = a2.identity();
        assert_eq!(a2.convert(&e, j, ConvertKind::Inverse).unwrap(), e);
        let k = a2.opposite(j);
        let r = a2.convert(&e, j, ConvertKind::ReverseToWK).unwrap();
        assert_eq!(r, a2.w0_upper(k));
        assert_eq!(r.length(), a2.w0_upper(k).length());
        assert!(a2.convert(&w(&a2, &[1]), j, ConvertKind::Inverse).is_err());
    }

    #[test]
    fn refinement_examples() {
        let a2 = sys(Family::A, 2);
        let e = a2.identity();
        let (j, k) = (set(&[1]), set(&[2]));
        assert_eq!(a2.refinement_type(j, k, &e).unwrap(), SimpleSubset::EMPTY);
        let all = a2.all_generators();
        assert_eq!(a2.refinement_type(all, all, &e).unwrap(), all);
        assert_eq!(a2.refinement_type(j, k, &w(&a2, &[2, 1])).unwrap(), j);
        assert!(a2.refinement_type(j, k, &w(&a2, &[1])).is_err());

        assert!(a2.refinement_contains_borel(j, SimpleSubset::EMPTY, &e));
        assert!(!a2.refinement_contains_borel(j, SimpleSubset::EMPTY, &w(&a2, &[1])));
        assert!(a2.refinement_contains_borel(j, j, &w(&a2, &[1])));
    }

    #[test]
    fn j_infinity_edge_cases() {
        let c2 = sys(Family::C, 2);
        for x in c2.elements().unwrap() {
            assert_eq!(
                c2.j_infinity(x, SimpleSubset::EMPTY).unwrap(),
                (SimpleSubset::EMPTY, SimpleSubset::EMPTY)
            );
        }
        let j = set(&[1]);
        for x in c2.min_coset_reps(j, Side::Left).unwrap() {
            let (ji, ki) = c2.j_infinity(&x, j).unwrap();
            let seq = c2.orbit_type_sequence(&x, j).unwrap();
            assert_eq!(seq.j_infinity(), ji);
            assert_eq!(seq.k_infinity(), ki);
            assert_eq!(seq.y_infinity(), x);
        }
        assert!(c2.j_infinity(&w(&c2, &[1]), j).is_err());
    }

    #[test]
    fn orbit_sequence_trivial_cases() {
        let a3 = sys(Family::A, 3);
        let x = w(&a3, &[2, 1, 3]);
        let seq = a3.orbit_type_sequence(&x, SimpleSubset::EMPTY).unwrap();
        assert_eq!(seq.stable_index, 0);
        assert_eq!(seq.y_infinity(), x);
        let seq = a3.orbit_type_sequence(&a3.identity(), set(&[1, 3])).unwrap();
        assert_eq!(seq.y_infinity(), a3.identity());
    }
}
