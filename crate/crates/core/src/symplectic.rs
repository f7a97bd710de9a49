//! The Weyl group of `Sp_{2g}` as permutations of `{1..2g}`, the `{0,1}^g`
//! labels of `^J W` for `J = {s_1..s_{g-1}}`, and the Ekedahl-Oort poset.

use std::fmt;

use crate::coxeter::{CoxeterSystem, Element, Family, Side, SimpleSubset, MAX_RANK};
use crate::error::{Error, Result};
use crate::poset::Poset;
use crate::twisted::{SpecAlgorithm, TwistedOrder};

/// Largest `g` accepted by [`eo_poset`].
pub const DEFAULT_MAX_G: usize = 8;

/// `w(1..2g)`, one-based, with `w(i) + w(2g+1-i) = 2g+1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignedPermView {
    images: Vec<usize>,
}

impl SignedPermView {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if n == 0 || n % 2 == 1 || n / 2 > MAX_RANK {
            return Err(Error::InvalidSymplectic(format!(
                "expected 2g images with 1 ≤ g ≤ {MAX_RANK}, got {n}"
            )));
        }
        let mut seen = vec![false; n + 1];
        for &v in &images {
            if v == 0 || v > n || std::mem::replace(&mut seen[v], true) {
                return Err(Error::InvalidSymplectic(format!(
                    "{images:?} is not a permutation of 1..{n}"
                )));
            }
        }
        for i in 0..n / 2 {
            if images[i] + images[n - 1 - i] != n + 1 {
                return Err(Error::InvalidSymplectic(format!(
                    "w({}) + w({}) ≠ {}",
                    i + 1,
                    n - i,
                    n + 1
                )));
            }
        }
        Ok(SignedPermView { images })
    }

    pub fn g(&self) -> usize {
        self.images.len() / 2
    }

    /// `w(i)` for one-based `i`.
    pub fn image(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn inverse(&self) -> SignedPermView {
        let mut inv = vec![0; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        SignedPermView { images: inv }
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &SignedPermView) -> SignedPermView {
        SignedPermView {
            images: other.images.iter().map(|&v| self.images[v - 1]).collect(),
        }
    }
}

/// `(ε_1, …, ε_g)`, written as the bit string `ε_1ε_2…ε_g`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EpsTuple(Vec<u8>);

impl EpsTuple {
    pub fn new(eps: Vec<u8>) -> Result<Self> {
        if eps.is_empty() || eps.len() > MAX_RANK || eps.iter().any(|&e| e > 1) {
            return Err(Error::InvalidSymplectic(format!("bad ε-tuple {eps:?}")));
        }
        Ok(EpsTuple(eps))
    }

    pub fn g(&self) -> usize {
        self.0.len()
    }

    pub fn bits(&self) -> &[u8] {
        &self.0
    }

    /// `Σ ε_i (g+1-i)`.
    pub fn dimension(&self) -> usize {
        let g = self.g();
        self.0
            .iter()
            .enumerate()
            .map(|(i, &e)| e as usize * (g - i))
            .sum()
    }

    /// All of `{0,1}^g` in lexicographic order.
    pub fn all(g: usize) -> Vec<EpsTuple> {
        (0..1usize << g)
            .map(|n| EpsTuple((0..g).map(|i| (n >> (g - 1 - i) & 1) as u8).collect()))
            .collect()
    }
}

impl fmt::Display for EpsTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.0 {
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

impl std::str::FromStr for EpsTuple {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                _ => Err(Error::InvalidSymplectic(format!("bad ε-string {s:?}"))),
            })
            .collect::<Result<Vec<u8>>>()?;
        EpsTuple::new(bits)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EoStratum {
    pub eps: EpsTuple,
    pub element: Element,
    pub dimension: usize,
}

/// Type `C_g` with `J = {s_1..s_{g-1}}`. `F` is trivial.
pub fn build_symplectic(g: usize) -> Result<(CoxeterSystem, SimpleSubset)> {
    if g < 1 {
        return Err(Error::InvalidSymplectic("g must be at least 1".into()));
    }
    if g > MAX_RANK {
        return Err(Error::UnsupportedType(format!("C{g}")));
    }
    let sys = CoxeterSystem::new_symplectic(g)?;
    Ok((sys, (0..g - 1).collect()))
}

fn require_c(sys: &CoxeterSystem) -> Result<usize> {
    if sys.family() != Family::C {
        return Err(Error::InvalidSymplectic(format!(
            "expected type C, got {}{}",
            sys.family(),
            sys.rank()
        )));
    }
    Ok(sys.rank())
}

// Roots are α_i = e_i - e_{i+1} for i < g and α_g = 2e_g.

fn root_to_e(c: &[i32], g: usize) -> Vec<i32> {
    (0..g)
        .map(|k| {
            let prev = if k == 0 { 0 } else { c[k - 1] };
            if k + 1 == g {
                2 * c[k] - prev
            } else {
                c[k] - prev
            }
        })
        .collect()
}

fn e_to_root(x: &[i32], g: usize) -> Vec<i32> {
    let mut partial = 0;
    (0..g)
        .map(|i| {
            partial += x[i];
            if i + 1 == g {
                partial / 2
            } else {
                partial
            }
        })
        .collect()
}

/// The permutation of `{1..2g}` induced by `a` on `±e_1, …, ±e_g`.
pub fn perm_view(sys: &CoxeterSystem, a: &Element) -> Result<SignedPermView> {
    let g = require_c(sys)?;
    let n = 2 * g;
    let mut images = vec![0; n];
    for j in 0..g {
        // 2e_j in root coordinates.
        let c: Vec<i32> = (0..g).map(|i| if i + 1 == g { 1 } else if i >= j { 2 } else { 0 }).collect();
        let image: Vec<i32> = (0..g)
            .map(|r| (0..g).map(|i| a.entry(r, i) as i32 * c[i]).sum())
            .collect();
        let x = root_to_e(&image, g);
        let k = x.iter().position(|&v| v != 0).expect("nonzero image");
        let v = if x[k] > 0 { k + 1 } else { n - k };
        images[j] = v;
        images[n - 1 - j] = n + 1 - v;
    }
    SignedPermView::new(images)
}

pub fn element_of_view(sys: &CoxeterSystem, view: &SignedPermView) -> Result<Element> {
    let g = require_c(sys)?;
    if view.g() != g {
        return Err(Error::InvalidSymplectic(format!(
            "view has g = {}, system has g = {g}",
            view.g()
        )));
    }
    let n = 2 * g;
    let signed_e = |j: usize| -> Vec<i32> {
        let mut x = vec![0; g];
        let v = view.image(j + 1);
        if v <= g {
            x[v - 1] = 1;
        } else {
            x[n - v] = -1;
        }
        x
    };
    // Rebuild a word by clearing descents, then multiply it out.
    let mut cur = view.clone();
    let mut word = Vec::new();
    loop {
        let d = (0..g).find(|&i| {
            if i + 1 == g {
                cur.image(g) > cur.image(g + 1)
            } else {
                cur.image(i + 1) > cur.image(i + 2)
            }
        });
        let Some(i) = d else { break };
        cur = cur.compose(&generator_view(g, i));
        word.push(i);
    }
    word.reverse();
    let a = sys.element_from_word(&word)?;
    // Cross-check against the linear images of the simple roots.
    for j in 0..g {
        let x: Vec<i32> = if j + 1 == g {
            signed_e(j).iter().map(|v| 2 * v).collect()
        } else {
            signed_e(j).iter().zip(signed_e(j + 1)).map(|(a, b)| a - b).collect()
        };
        let expected = e_to_root(&x, g);
        for (r, &want) in expected.iter().enumerate() {
            if a.entry(r, j) as i32 != want {
                return Err(Error::TheoremViolation(format!(
                    "permutation view is not a homomorphism at s{}",
                    j + 1
                )));
            }
        }
    }
    Ok(a)
}

/// `s_i` as a permutation, 0-based `i`.
fn generator_view(g: usize, i: usize) -> SignedPermView {
    let n = 2 * g;
    let mut images: Vec<usize> = (1..=n).collect();
    if i + 1 == g {
        images.swap(g - 1, g);
    } else {
        images.swap(i, i + 1);
        images.swap(n - 2 - i, n - 1 - i);
    }
    SignedPermView { images }
}

fn require_jw(sys: &CoxeterSystem, w: &Element) -> Result<SimpleSubset> {
    let g = require_c(sys)?;
    let j: SimpleSubset = (0..g - 1).collect();
    if !sys.in_quotient(w, j, Side::Left) {
        return Err(Error::NotInQuotient {
            element: sys.word_string(w),
            quotient: format!("^{j}W"),
        });
    }
    Ok(j)
}

/// The ε-label of `w ∈ ^J W`: `Σ = {w⁻¹(1), …, w⁻¹(g)}` and `ε_i = 0` iff `i ∈ Σ`.
pub fn eps_of(sys: &CoxeterSystem, w: &Element) -> Result<EpsTuple> {
    require_jw(sys, w)?;
    let g = sys.rank();
    let inv = perm_view(sys, w)?.inverse();
    let sigma: Vec<usize> = (1..=g).map(|i| inv.image(i)).collect();
    EpsTuple::new((1..=g).map(|i| u8::from(!sigma.contains(&i))).collect())
}

pub fn element_of_eps(sys: &CoxeterSystem, eps: &EpsTuple) -> Result<Element> {
    let g = require_c(sys)?;
    if eps.g() != g {
        return Err(Error::InvalidSymplectic(format!(
            "ε has length {}, expected {g}",
            eps.g()
        )));
    }
    let n = 2 * g;
    let mut sigma: Vec<usize> = eps
        .bits()
        .iter()
        .enumerate()
        .map(|(i, &e)| if e == 0 { i + 1 } else { n - i })
        .collect();
    sigma.sort_unstable();
    // w⁻¹(i) = j_i, and the pairing fixes the rest.
    let mut inv = vec![0; n];
    for (i, &j) in sigma.iter().enumerate() {
        inv[i] = j;
        inv[n - 1 - i] = n + 1 - j;
    }
    let view = SignedPermView::new(inv)?.inverse();
    element_of_view(sys, &view)
}

/// For `w, w' ∈ ^J W`: `w ≤ w'` iff `w⁻¹(i) ≤ w'⁻¹(i)` for `i = 1..g`.
pub fn jw_bruhat(sys: &CoxeterSystem, w: &Element, w2: &Element) -> Result<bool> {
    require_jw(sys, w)?;
    require_jw(sys, w2)?;
    let a = perm_view(sys, w)?.inverse();
    let b = perm_view(sys, w2)?.inverse();
    Ok((1..=sys.rank()).all(|i| a.image(i) <= b.image(i)))
}

/// The closure poset of Ekedahl-Oort strata of `A_g`, vertices in
/// lexicographic order of ε.
pub fn eo_poset(g: usize) -> Result<Poset<EoStratum>> {
    eo_poset_bounded(g, DEFAULT_MAX_G)
}

pub fn eo_poset_bounded(g: usize, max_g: usize) -> Result<Poset<EoStratum>> {
    if g > max_g {
        return Err(Error::BoundExceeded {
            what: format!("^JW for g = {g}"),
            limit: 1 << max_g,
        });
    }
    let (sys, j) = build_symplectic(g)?;
    let order = TwistedOrder::new(&sys, j)?;
    let strata = EpsTuple::all(g)
        .into_iter()
        .map(|eps| {
            let element = element_of_eps(&sys, &eps)?;
            let dimension = eps.dimension();
            Ok(EoStratum {
                eps,
                element,
                dimension,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let elements: Vec<Element> = strata.iter().map(|s| s.element).collect();
    let matrix = order.relation_matrix(&elements, SpecAlgorithm::Bfs);
    Poset::from_matrix(strata, &matrix)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_groups() {
        let (c1, j1) = build_symplectic(1).unwrap();
        assert_eq!(c1.elements().unwrap().len(), 2);
        assert!(j1.is_empty());
        let (c2, j2) = build_symplectic(2).unwrap();
        assert_eq!(c2.elements().unwrap().len(), 8);
        assert_eq!(c2.enumerate_subgroup(j2).unwrap().len(), 2);
        assert!(build_symplectic(0).is_err());
    }

    #[test]
    fn generators_and_w0() {
        for g in 1..=4 {
            let (sys, _) = build_symplectic(g).unwrap();
            let n = 2 * g;
            assert_eq!(
                perm_view(&sys, &sys.identity()).unwrap().images(),
                &(1..=n).collect::<Vec<_>>()[..]
            );
            for i in 0..g {
                let v = perm_view(&sys, &sys.generator(i)).unwrap();
                assert_eq!(v, generator_view(g, i));
            }
            let w0 = perm_view(&sys, &sys.w0()).unwrap();
            assert_eq!(w0.images(), &(1..=n).rev().collect::<Vec<_>>()[..]);
        }
    }

    #[test]
    fn eps_extremes() {
        let (sys, _) = build_symplectic(3).unwrap();
        let zero: EpsTuple = "000".parse().unwrap();
        assert_eq!(element_of_eps(&sys, &zero).unwrap(), sys.identity());
        let first: EpsTuple = "100".parse().unwrap();
        assert_eq!(element_of_eps(&sys, &first).unwrap().length(), 3);
        let ones: EpsTuple = "111".parse().unwrap();
        assert_eq!(ones.dimension(), 6);
        assert_eq!(element_of_eps(&sys, &ones).unwrap().length(), 6);
        assert!(eps_of(&sys, &sys.generator(0)).is_err());
    }

    #[test]
    fn rejects_bad_views() {
        assert!(SignedPermView::new(vec![2, 1, 3, 4]).is_err());
        assert!(SignedPermView::new(vec![2, 1, 4, 3]).is_ok());
        assert!(SignedPermView::new(vec![1, 1]).is_err());
        assert!("10x".parse::<EpsTuple>().is_err());
    }

    #[test]
    fn eo_small() {
        let p = eo_poset(1).unwrap();
        assert_eq!(p.covers(), &[(0, 1)]);
        let p = eo_poset(2).unwrap();
        let dims: Vec<usize> = p.labels().iter().map(|s| s.dimension).collect();
        assert_eq!(dims, vec![0, 1, 2, 3]);
        assert!(matches!(eo_poset_bounded(3, 2), Err(Error::BoundExceeded { .. })));
    }
}
