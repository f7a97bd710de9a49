//! Finite Weyl groups of classical type in the reflection representation.
//!
//! Elements are integer matrices acting on simple-root coordinates. Two
//! derived vectors drive the hot paths:
//!
//! * the column sums of the matrix, whose `s`-th entry is negative exactly
//!   when `s` is a right descent;
//! * the pairing `(α_t, w·2ρ)`, whose `t`-th entry is negative exactly when
//!   `t` is a left descent.
//!
//! Both vectors are faithful (the underlying weights are regular), so the
//! Bruhat recursion and the canonical word extraction never touch a full
//! matrix product.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported rank. Matrices are stored inline at this size.
pub const MAX_RANK: usize = 8;

/// Default cap on the number of elements any enumeration may produce.
pub const DEFAULT_MAX_ORDER: usize = 1_000_000;

type Mat = [i8; MAX_RANK * MAX_RANK];
type Vector = [i32; MAX_RANK];

/// A root in simple-root coordinates.
pub type Root = [i8; MAX_RANK];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
}

impl Family {
    fn datum_code(self) -> u16 {
        match self {
            Family::A => 1,
            // B and C share a Weyl group and are built from one root datum.
            Family::B | Family::C => 2,
            Family::D => 3,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Family::A),
            "B" => Ok(Family::B),
            "C" => Ok(Family::C),
            "D" => Ok(Family::D),
            other => Err(Error::UnsupportedType(format!("unknown family {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

/// A subset of the simple reflections, stored as a bitmask over 0-based indices.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimpleSubset(u16);

impl SimpleSubset {
    pub const EMPTY: SimpleSubset = SimpleSubset(0);

    pub fn full(rank: usize) -> Self {
        SimpleSubset(((1u32 << rank) - 1) as u16)
    }

    pub fn from_bits(bits: u16) -> Self {
        SimpleSubset(bits)
    }

    pub fn bits(self) -> u16 {
        self.0
    }

    pub fn singleton(i: usize) -> Self {
        SimpleSubset(1 << i)
    }

    pub fn contains(self, i: usize) -> bool {
        i < 16 && self.0 & (1 << i) != 0
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1 << i;
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: SimpleSubset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersection(self, other: SimpleSubset) -> Self {
        SimpleSubset(self.0 & other.0)
    }

    pub fn union(self, other: SimpleSubset) -> Self {
        SimpleSubset(self.0 | other.0)
    }

    /// 0-based member indices in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..16).filter(move |&i| self.0 & (1 << i) != 0)
    }

    /// 1-based member indices, the external convention.
    pub fn to_one_based(self) -> Vec<usize> {
        self.iter().map(|i| i + 1).collect()
    }

    /// All subsets of `{0, .., rank-1}` in increasing bitmask order.
    pub fn all(rank: usize) -> impl Iterator<Item = SimpleSubset> {
        (0u32..(1u32 << rank)).map(|b| SimpleSubset(b as u16))
    }
}

impl FromIterator<usize> for SimpleSubset {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        let mut s = SimpleSubset::EMPTY;
        for i in iter {
            s.insert(i);
        }
        s
    }
}

impl fmt::Debug for SimpleSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for SimpleSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.iter().map(|i| format!("s{}", i + 1)).collect();
        write!(f, "{{{}}}", items.join(","))
    }
}

/// A group element: its matrix on simple-root coordinates plus the cached length.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element {
    tag: u16,
    length: u16,
    mat: Mat,
}

impl Element {
    pub fn length(&self) -> usize {
        self.length as usize
    }

    pub fn is_identity(&self) -> bool {
        self.length == 0
    }

    pub fn rank(&self) -> usize {
        (self.tag & 0xff) as usize
    }

    pub fn entry(&self, row: usize, col: usize) -> i8 {
        self.mat[row * MAX_RANK + col]
    }

    pub fn matrix(&self) -> Vec<Vec<i8>> {
        let n = self.rank();
        (0..n)
            .map(|i| (0..n).map(|j| self.entry(i, j)).collect())
            .collect()
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element(len={}, {:?})", self.length, self.matrix())
    }
}

/// A finite Weyl group of type A, B, C or D with a diagram automorphism `F`.
#[derive(Clone)]
pub struct CoxeterSystem {
    family: Family,
    rank: usize,
    tag: u16,
    cartan: [[i8; MAX_RANK]; MAX_RANK],
    coxeter: [[u8; MAX_RANK]; MAX_RANK],
    form: [[i32; MAX_RANK]; MAX_RANK],
    positive_roots: Vec<Root>,
    two_rho: Vector,
    frobenius: Vec<usize>,
    frobenius_is_linear: bool,
    generators: Vec<Element>,
    max_order: usize,
    elements: OnceLock<Vec<Element>>,
}

impl fmt::Debug for CoxeterSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CoxeterSystem")
            .field("family", &self.family)
            .field("rank", &self.rank)
            .field("frobenius", &self.frobenius)
            .finish()
    }
}

fn cartan_matrix(family: Family, rank: usize) -> [[i8; MAX_RANK]; MAX_RANK] {
    let mut a = [[0i8; MAX_RANK]; MAX_RANK];
    for (i, row) in a.iter_mut().enumerate().take(rank) {
        row[i] = 2;
    }
    let chain_end = match family {
        Family::D => rank - 1,
        _ => rank,
    };
    for i in 1..chain_end {
        a[i - 1][i] = -1;
        a[i][i - 1] = -1;
    }
    match family {
        Family::A => {}
        // α_n is the long root: ⟨α_{n-1}^∨, α_n⟩ = -2.
        Family::B | Family::C if rank >= 2 => {
            a[rank - 2][rank - 1] = -2;
            a[rank - 1][rank - 2] = -1;
        }
        // The fork: α_{n-3} meets both α_{n-2} and α_{n-1}.
        Family::D => {
            a[rank - 3][rank - 1] = -1;
            a[rank - 1][rank - 3] = -1;
        }
        _ => {}
    }
    a
}

impl CoxeterSystem {
    /// Builds the Weyl group of the given type. `frobenius` is a permutation of
    /// the 0-based generator indices; `None` means the identity.
    pub fn new(family: Family, rank: usize, frobenius: Option<Vec<usize>>) -> Result<Self> {
        let min_rank = match family {
            Family::A => 1,
            Family::B | Family::C => 2,
            Family::D => 4,
        };
        if rank < min_rank || rank > MAX_RANK {
            return Err(Error::UnsupportedType(format!(
                "{family}{rank}: rank must be in {min_rank}..={MAX_RANK}"
            )));
        }
        Self::build(family, rank, frobenius)
    }

    /// Type C of rank 1 (equal to A1), needed by the symplectic model at g = 1.
    pub(crate) fn new_symplectic(g: usize) -> Result<Self> {
        if g == 0 || g > MAX_RANK {
            return Err(Error::UnsupportedType(format!("C{g}: need 1 <= g <= {MAX_RANK}")));
        }
        Self::build(Family::C, g, None)
    }

    fn build(family: Family, rank: usize, frobenius: Option<Vec<usize>>) -> Result<Self> {
        let cartan = cartan_matrix(family, rank);
        let mut coxeter = [[2u8; MAX_RANK]; MAX_RANK];
        for i in 0..rank {
            for j in 0..rank {
                coxeter[i][j] = if i == j {
                    1
                } else {
                    match cartan[i][j] as i32 * cartan[j][i] as i32 {
                        0 => 2,
                        1 => 3,
                        2 => 4,
                        3 => 6,
                        p => unreachable!("Cartan product {p}"),
                    }
                };
            }
        }
        // (α_i, α_j) = d_i A_ij with d_i = 2 on the long simple root of B/C.
        let mut d = [1i32; MAX_RANK];
        if matches!(family, Family::B | Family::C) && rank >= 2 {
            d[rank - 1] = 2;
        }
        let mut form = [[0i32; MAX_RANK]; MAX_RANK];
        for i in 0..rank {
            for j in 0..rank {
                form[i][j] = d[i] * cartan[i][j] as i32;
            }
        }

        let frobenius = frobenius.unwrap_or_else(|| (0..rank).collect());
        if frobenius.len() != rank {
            return Err(Error::NotDiagramAutomorphism(format!(
                "expected a permutation of {rank} indices, got {}",
                frobenius.len()
            )));
        }
        let mut seen = vec![false; rank];
        for &f in &frobenius {
            if f >= rank || seen[f] {
                return Err(Error::NotDiagramAutomorphism(format!(
                    "{frobenius:?} is not a permutation of 0..{rank}"
                )));
            }
            seen[f] = true;
        }
        for i in 0..rank {
            for j in 0..rank {
                if coxeter[frobenius[i]][frobenius[j]] != coxeter[i][j] {
                    return Err(Error::NotDiagramAutomorphism(format!(
                        "m(F(s{}),F(s{})) != m(s{},s{})",
                        i + 1,
                        j + 1,
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        let frobenius_is_linear = (0..rank)
            .all(|i| (0..rank).all(|j| cartan[frobenius[i]][frobenius[j]] == cartan[i][j]));

        let positive_roots = enumerate_positive_roots(&cartan, rank);
        let mut two_rho = [0i32; MAX_RANK];
        for r in &positive_roots {
            for k in 0..rank {
                two_rho[k] += r[k] as i32;
            }
        }

        let tag = (family.datum_code() << 8) | rank as u16;
        let mut sys = CoxeterSystem {
            family,
            rank,
            tag,
            cartan,
            coxeter,
            form,
            positive_roots,
            two_rho,
            frobenius,
            frobenius_is_linear,
            generators: Vec::new(),
            max_order: DEFAULT_MAX_ORDER,
            elements: OnceLock::new(),
        };
        sys.generators = (0..rank)
            .map(|i| sys.mul_generator_left(i, &sys.identity()))
            .collect();
        Ok(sys)
    }

    pub fn with_max_order(mut self, max_order: usize) -> Self {
        self.max_order = max_order;
        self
    }

    pub fn max_order(&self) -> usize {
        self.max_order
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn all_generators(&self) -> SimpleSubset {
        SimpleSubset::full(self.rank)
    }

    pub fn cartan(&self, i: usize, j: usize) -> i8 {
        self.cartan[i][j]
    }

    pub fn coxeter_matrix(&self) -> Vec<Vec<u8>> {
        (0..self.rank)
            .map(|i| self.coxeter[i][..self.rank].to_vec())
            .collect()
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive_roots
    }

    /// The diagram automorphism as a 0-based index permutation.
    pub fn frobenius(&self) -> &[usize] {
        &self.frobenius
    }

    pub fn frobenius_is_identity(&self) -> bool {
        self.frobenius.iter().enumerate().all(|(i, &f)| i == f)
    }

    /// |W| from the closed formulas.
    pub fn order(&self) -> u128 {
        let n = self.rank as u128;
        let fact = |k: u128| (1..=k).product::<u128>();
        match self.family {
            Family::A => fact(n + 1),
            Family::B | Family::C => (1u128 << n) * fact(n),
            Family::D => (1u128 << (n - 1)) * fact(n),
        }
    }

    /// All diagram automorphisms of the Coxeter graph, identity first.
    pub fn diagram_automorphisms(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut perm: Vec<usize> = (0..self.rank).collect();
        permutations(&mut perm, 0, &mut |p| {
            let ok = (0..self.rank)
                .all(|i| (0..self.rank).all(|j| self.coxeter[p[i]][p[j]] == self.coxeter[i][j]));
            if ok {
                out.push(p.to_vec());
            }
        });
        out.sort();
        out
    }

    /// Same group with a different diagram automorphism.
    pub fn with_frobenius(&self, frobenius: Vec<usize>) -> Result<Self> {
        let sys = Self::build(self.family, self.rank, Some(frobenius))?;
        Ok(sys.with_max_order(self.max_order))
    }

    fn check(&self, a: &Element) -> Result<()> {
        if a.tag != self.tag {
            return Err(Error::MixedSystems);
        }
        Ok(())
    }

    // ---- element construction ------------------------------------------

    pub fn identity(&self) -> Element {
        let mut mat = [0i8; MAX_RANK * MAX_RANK];
        for i in 0..self.rank {
            mat[i * MAX_RANK + i] = 1;
        }
        Element {
            tag: self.tag,
            length: 0,
            mat,
        }
    }

    /// The simple reflection with 0-based index `i`. Panics when out of range.
    pub fn generator(&self, i: usize) -> Element {
        self.generators[i]
    }

    pub fn generators(&self) -> &[Element] {
        &self.generators
    }

    /// Product of the generators in `word` (0-based indices), left to right.
    pub fn element_from_word(&self, word: &[usize]) -> Result<Element> {
        let mut x = self.identity();
        for &s in word {
            if s >= self.rank {
                return Err(Error::InvalidIndex(format!(
                    "generator index {} outside 1..={}",
                    s + 1,
                    self.rank
                )));
            }
            x = self.mul_generator_right(&x, s);
        }
        Ok(x)
    }

    // ---- arithmetic ----------------------------------------------------

    /// `a · s_i`.
    pub fn mul_generator_right(&self, a: &Element, i: usize) -> Element {
        let n = self.rank;
        let descent = self.column_sum(a, i) < 0;
        let mut mat = a.mat;
        for j in 0..n {
            let c = self.cartan[i][j];
            if j == i {
                for r in 0..n {
                    mat[r * MAX_RANK + i] = -a.mat[r * MAX_RANK + i];
                }
            } else if c != 0 {
                for r in 0..n {
                    mat[r * MAX_RANK + j] = a.mat[r * MAX_RANK + j] - c * a.mat[r * MAX_RANK + i];
                }
            }
        }
        Element {
            tag: a.tag,
            length: if descent { a.length - 1 } else { a.length + 1 },
            mat,
        }
    }

    /// `s_i · a`.
    pub fn mul_generator_left(&self, i: usize, a: &Element) -> Element {
        let n = self.rank;
        let descent = a.length > 0 && self.left_vector(a)[i] < 0;
        let mut mat = a.mat;
        for col in 0..n {
            let mut acc = 0i32;
            for j in 0..n {
                acc += self.cartan[i][j] as i32 * a.mat[j * MAX_RANK + col] as i32;
            }
            mat[i * MAX_RANK + col] = (a.mat[i * MAX_RANK + col] as i32 - acc) as i8;
        }
        Element {
            tag: a.tag,
            length: if descent { a.length - 1 } else { a.length + 1 },
            mat,
        }
    }

    /// Product `a · b`. Panics when the operands come from different groups;
    /// see [`CoxeterSystem::multiply`] for the checked form.
    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        assert_eq!(a.tag, b.tag, "elements from different Weyl groups");
        let n = self.rank;
        let mut mat = [0i8; MAX_RANK * MAX_RANK];
        for i in 0..n {
            for j in 0..n {
                let mut acc = 0i32;
                for k in 0..n {
                    acc += a.mat[i * MAX_RANK + k] as i32 * b.mat[k * MAX_RANK + j] as i32;
                }
                mat[i * MAX_RANK + j] = acc as i8;
            }
        }
        let length = self.inversion_count(&mat);
        Element {
            tag: a.tag,
            length,
            mat,
        }
    }

    pub fn multiply(&self, a: &Element, b: &Element) -> Result<Element> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul(a, b))
    }

    pub fn mul3(&self, a: &Element, b: &Element, c: &Element) -> Element {
        self.mul(&self.mul(a, b), c)
    }

    pub fn inverse(&self, a: &Element) -> Element {
        let mut x = self.identity();
        for s in self.canonical_word(a) {
            x = self.mul_generator_left(s, &x);
        }
        x
    }

    pub fn try_inverse(&self, a: &Element) -> Result<Element> {
        self.check(a)?;
        Ok(self.inverse(a))
    }

    /// `x a x⁻¹`.
    pub fn conjugate(&self, x: &Element, a: &Element) -> Element {
        self.mul3(x, a, &self.inverse(x))
    }

    fn inversion_count(&self, mat: &Mat) -> u16 {
        let n = self.rank;
        let mut sums = [0i32; MAX_RANK];
        for j in 0..n {
            for i in 0..n {
                sums[j] += mat[i * MAX_RANK + j] as i32;
            }
        }
        self.positive_roots
            .iter()
            .filter(|r| (0..n).map(|k| sums[k] * r[k] as i32).sum::<i32>() < 0)
            .count() as u16
    }

    /// Number of positive roots sent to negative roots, recomputed from the matrix.
    pub fn inversions(&self, a: &Element) -> usize {
        self.inversion_count(&a.mat) as usize
    }

    /// Image of a root (simple-root coordinates) under `a`.
    pub fn act(&self, a: &Element, root: &Root) -> Root {
        let n = self.rank;
        let mut out = [0i8; MAX_RANK];
        for i in 0..n {
            let mut acc = 0i32;
            for k in 0..n {
                acc += a.mat[i * MAX_RANK + k] as i32 * root[k] as i32;
            }
            out[i] = acc as i8;
        }
        out
    }

    // ---- descents and words -------------------------------------------

    fn column_sum(&self, a: &Element, s: usize) -> i32 {
        (0..self.rank).map(|i| a.mat[i * MAX_RANK + s] as i32).sum()
    }

    /// `t ↦ (α_t, a·2ρ)`; negative entries are the left descents of `a`.
    fn left_vector(&self, a: &Element) -> Vector {
        let n = self.rank;
        let mut image = [0i32; MAX_RANK];
        for i in 0..n {
            for k in 0..n {
                image[i] += a.mat[i * MAX_RANK + k] as i32 * self.two_rho[k];
            }
        }
        let mut out = [0i32; MAX_RANK];
        for t in 0..n {
            for i in 0..n {
                out[t] += self.form[t][i] * image[i];
            }
        }
        out
    }

    /// Effect of `a ↦ s·a` on the left vector.
    fn reflect_left_vector(&self, v: &mut Vector, s: usize) {
        let vs = v[s];
        for t in 0..self.rank {
            v[t] -= self.cartan[s][t] as i32 * vs;
        }
    }

    pub fn is_left_descent(&self, a: &Element, s: usize) -> bool {
        a.length > 0 && self.left_vector(a)[s] < 0
    }

    pub fn is_right_descent(&self, a: &Element, s: usize) -> bool {
        self.column_sum(a, s) < 0
    }

    pub fn descents(&self, a: &Element, side: Side) -> SimpleSubset {
        match side {
            Side::Left => {
                let v = self.left_vector(a);
                (0..self.rank).filter(|&t| v[t] < 0).collect()
            }
            Side::Right => (0..self.rank)
                .filter(|&s| self.column_sum(a, s) < 0)
                .collect(),
        }
    }

    /// Reduced word obtained by repeatedly stripping the smallest-indexed left
    /// descent. 0-based letters; `a` equals the product of the letters.
    pub fn canonical_word(&self, a: &Element) -> Vec<usize> {
        let mut v = self.left_vector(a);
        let mut word = Vec::with_capacity(a.length());
        for _ in 0..a.length {
            let s = (0..self.rank)
                .find(|&t| v[t] < 0)
                .expect("non-identity element has a left descent");
            word.push(s);
            self.reflect_left_vector(&mut v, s);
        }
        word
    }

    /// `s1s2s1`-style rendering with 1-based indices; `e` for the identity.
    pub fn word_string(&self, a: &Element) -> String {
        let w = self.canonical_word(a);
        if w.is_empty() {
            return "e".to_string();
        }
        w.iter().map(|s| format!("s{}", s + 1)).collect()
    }

    /// Whether `a` lies in the parabolic subgroup generated by `j`.
    pub fn in_subgroup(&self, a: &Element, j: SimpleSubset) -> bool {
        self.canonical_word(a).iter().all(|&s| j.contains(s))
    }

    /// The longest element of `W_J`.
    pub fn longest_element(&self, j: SimpleSubset) -> Element {
        let mut x = self.identity();
        loop {
            match j.iter().find(|&s| !self.is_right_descent(&x, s)) {
                Some(s) => x = self.mul_generator_right(&x, s),
                None => return x,
            }
        }
    }

    pub fn w0(&self) -> Element {
        self.longest_element(self.all_generators())
    }

    // ---- Bruhat order --------------------------------------------------

    /// Bruhat order by the lifting criterion: pick a left descent `s` of `b`;
    /// then `a ≤ b` iff `sa ≤ sb` when `s` is a left descent of `a`, and
    /// `a ≤ sb` otherwise. The recursion is linear, so it runs as a loop on
    /// the left vectors.
    pub fn bruhat_leq(&self, a: &Element, b: &Element) -> bool {
        assert_eq!(a.tag, b.tag, "elements from different Weyl groups");
        if a.length > b.length {
            return false;
        }
        if a.length == 0 {
            return true;
        }
        if a.length == b.length {
            return a.mat == b.mat;
        }
        let mut va = self.left_vector(a);
        let mut vb = self.left_vector(b);
        let (mut la, mut lb) = (a.length, b.length);
        while la < lb {
            if la == 0 {
                return true;
            }
            let s = (0..self.rank)
                .find(|&t| vb[t] < 0)
                .expect("b has positive length");
            if va[s] < 0 {
                self.reflect_left_vector(&mut va, s);
                la -= 1;
            }
            self.reflect_left_vector(&mut vb, s);
            lb -= 1;
        }
        la == lb && va == vb
    }

    pub fn try_bruhat_leq(&self, a: &Element, b: &Element) -> Result<bool> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.bruhat_leq(a, b))
    }

    // ---- Frobenius -----------------------------------------------------

    /// Image of `a` under the automorphism of `W` induced by `F`.
    pub fn apply_frobenius(&self, a: &Element) -> Element {
        if self.frobenius_is_identity() {
            return *a;
        }
        if self.frobenius_is_linear {
            // F(w)[F(i)][F(j)] = w[i][j]: conjugation by the permutation of simple roots.
            let mut mat = [0i8; MAX_RANK * MAX_RANK];
            for i in 0..self.rank {
                for j in 0..self.rank {
                    mat[self.frobenius[i] * MAX_RANK + self.frobenius[j]] =
                        a.mat[i * MAX_RANK + j];
                }
            }
            return Element { mat, ..*a };
        }
        self.apply_frobenius_letterwise(a)
    }

    /// Letterwise image of the canonical word under `F`.
    pub fn apply_frobenius_letterwise(&self, a: &Element) -> Element {
        let mut x = self.identity();
        for s in self.canonical_word(a) {
            x = self.mul_generator_right(&x, self.frobenius[s]);
        }
        x
    }

    /// `F` applied to a subset of generators.
    pub fn frobenius_subset(&self, j: SimpleSubset) -> SimpleSubset {
        j.iter().map(|s| self.frobenius[s]).collect()
    }

    // ---- enumeration ---------------------------------------------------

    /// All elements of `W_J`, each once, in breadth-first order from `e`.
    pub fn enumerate_subgroup(&self, j: SimpleSubset) -> Result<Vec<Element>> {
        let gens: Vec<usize> = j.iter().filter(|&s| s < self.rank).collect();
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        let e = self.identity();
        seen.insert(e);
        queue.push_back(e);
        while let Some(x) = queue.pop_front() {
            out.push(x);
            if out.len() > self.max_order {
                return Err(Error::BoundExceeded {
                    what: format!("W_{j}"),
                    limit: self.max_order,
                });
            }
            for &s in &gens {
                let y = self.mul_generator_right(&x, s);
                if seen.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        Ok(out)
    }

    pub fn enumerate(&self) -> Result<Vec<Element>> {
        self.enumerate_subgroup(self.all_generators())
    }

    /// All of `W`, enumerated once and cached.
    pub fn elements(&self) -> Result<&[Element]> {
        if let Some(all) = self.elements.get() {
            return Ok(all);
        }
        let all = self.enumerate()?;
        Ok(self.elements.get_or_init(|| all))
    }

    /// Sorts by length, then canonical word. Deterministic across runs.
    pub fn sort_shortlex(&self, elements: &mut [Element]) {
        elements.sort_by_cached_key(|x| (x.length, self.canonical_word(x)));
    }

    /// If `x s_i x⁻¹` is a simple reflection, its index. Reads the answer off
    /// the root `x(α_i)`, which must be `±α_t`.
    pub fn conjugate_generator(&self, x: &Element, i: usize) -> Option<usize> {
        let mut found = None;
        for r in 0..self.rank {
            let c = x.mat[r * MAX_RANK + i];
            if c == 0 {
                continue;
            }
            if (c != 1 && c != -1) || found.is_some() {
                return None;
            }
            found = Some(r);
        }
        found
    }

    /// `x J x⁻¹` when every conjugate is simple.
    pub fn conjugate_subset(&self, x: &Element, j: SimpleSubset) -> Option<SimpleSubset> {
        let mut out = SimpleSubset::EMPTY;
        for s in j.iter() {
            out.insert(self.conjugate_generator(x, s)?);
        }
        Some(out)
    }

    /// Roots whose support lies in `j`, the positive part of `Φ_J`.
    pub fn positive_roots_in(&self, j: SimpleSubset) -> Vec<Root> {
        self.positive_roots
            .iter()
            .filter(|r| root_support(r, self.rank).is_subset(j))
            .copied()
            .collect()
    }
}

/// Support of a root, as the set of simple roots with nonzero coefficient.
pub fn root_support(r: &Root, rank: usize) -> SimpleSubset {
    (0..rank).filter(|&k| r[k] != 0).collect()
}

pub fn root_is_positive(r: &Root) -> bool {
    r.iter().all(|&c| c >= 0) && r.iter().any(|&c| c > 0)
}

fn enumerate_positive_roots(cartan: &[[i8; MAX_RANK]; MAX_RANK], rank: usize) -> Vec<Root> {
    let mut roots: Vec<Root> = Vec::new();
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    for i in 0..rank {
        let mut r = [0i8; MAX_RANK];
        r[i] = 1;
        seen.insert(r);
        queue.push_back(r);
    }
    while let Some(beta) = queue.pop_front() {
        roots.push(beta);
        for i in 0..rank {
            let pairing: i32 = (0..rank).map(|j| cartan[i][j] as i32 * beta[j] as i32).sum();
            let mut gamma = beta;
            gamma[i] = (gamma[i] as i32 - pairing) as i8;
            if root_is_positive(&gamma) && seen.insert(gamma) {
                queue.push_back(gamma);
            }
        }
    }
    roots.sort_by_key(|r| (r.iter().map(|&c| c as i32).sum::<i32>(), std::cmp::Reverse(*r)));
    roots
}

fn permutations(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permutations(p, k + 1, f);
        p.swap(k, i);
    }
}
