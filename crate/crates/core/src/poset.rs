//! Finite posets stored as a dense bitset relation, with Hasse covers and
//! DOT/CSV rendering.

use std::fmt::Write as _;

use rayon::prelude::*;

use crate::error::{Error, Result};

const WORD: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset<L> {
    labels: Vec<L>,
    /// `rows[i]` has bit `j` set iff `i ≤ j`.
    rows: Vec<Vec<u64>>,
    /// `(i, j)` with `j` covering `i`, sorted.
    covers: Vec<(usize, usize)>,
}

fn words(n: usize) -> usize {
    n.div_ceil(WORD)
}

fn bit(row: &[u64], j: usize) -> bool {
    row[j / WORD] >> (j % WORD) & 1 == 1
}

impl<L: Sync> Poset<L> {
    /// Evaluates `leq(i, j)` on every ordered pair (in parallel), checks the
    /// partial order axioms and computes the covers.
    pub fn from_relation<F>(labels: Vec<L>, leq: F) -> Result<Self>
    where
        F: Fn(usize, usize) -> bool + Sync,
    {
        let n = labels.len();
        let rows: Vec<Vec<u64>> = (0..n)
            .into_par_iter()
            .map(|i| {
                let mut row = vec![0u64; words(n)];
                for j in 0..n {
                    if leq(i, j) {
                        row[j / WORD] |= 1 << (j % WORD);
                    }
                }
                row
            })
            .collect();
        Self::from_rows(labels, rows)
    }

    pub fn from_matrix(labels: Vec<L>, matrix: &[Vec<bool>]) -> Result<Self> {
        Self::from_relation(labels, |i, j| matrix[i][j])
    }

    fn from_rows(labels: Vec<L>, rows: Vec<Vec<u64>>) -> Result<Self> {
        let mut poset = Poset {
            labels,
            rows,
            covers: Vec::new(),
        };
        poset.check_axioms()?;
        poset.covers = poset.transitive_reduction();
        Ok(poset)
    }
}

impl<L> Poset<L> {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[L] {
        &self.labels
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        bit(&self.rows[i], j)
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn matrix(&self) -> Vec<Vec<bool>> {
        (0..self.len())
            .map(|i| (0..self.len()).map(|j| self.leq(i, j)).collect())
            .collect()
    }

    /// Number of related ordered pairs, the diagonal included.
    pub fn relation_size(&self) -> usize {
        self.rows
            .iter()
            .map(|r| r.iter().map(|w| w.count_ones() as usize).sum::<usize>())
            .sum()
    }

    /// Indices below `j`, itself included.
    pub fn down_set(&self, j: usize) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.leq(i, j)).collect()
    }

    pub fn up_set(&self, i: usize) -> Vec<usize> {
        (0..self.len()).filter(|&j| self.leq(i, j)).collect()
    }

    pub fn minimal(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&j| (0..self.len()).all(|i| i == j || !self.leq(i, j)))
            .collect()
    }

    pub fn maximal(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| (0..self.len()).all(|j| i == j || !self.leq(i, j)))
            .collect()
    }

    pub fn check_axioms(&self) -> Result<()> {
        let n = self.len();
        for i in 0..n {
            if !self.leq(i, i) {
                return Err(Error::PosetAxiom(format!("reflexivity fails at {i}")));
            }
            for j in i + 1..n {
                if self.leq(i, j) && self.leq(j, i) {
                    return Err(Error::PosetAxiom(format!(
                        "antisymmetry fails at ({i}, {j})"
                    )));
                }
            }
        }
        // i ≤ j ≤ k: row j must be contained in row i.
        for i in 0..n {
            for j in 0..n {
                if !self.leq(i, j) {
                    continue;
                }
                let (ri, rj) = (&self.rows[i], &self.rows[j]);
                if let Some(w) = (0..ri.len()).find(|&w| rj[w] & !ri[w] != 0) {
                    let k = w * WORD + (rj[w] & !ri[w]).trailing_zeros() as usize;
                    return Err(Error::PosetAxiom(format!(
                        "transitivity fails at ({i}, {j}, {k})"
                    )));
                }
            }
        }
        Ok(())
    }

    fn transitive_reduction(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut cols = vec![vec![0u64; words(n)]; n];
        for i in 0..n {
            for j in 0..n {
                if self.leq(i, j) {
                    cols[j][i / WORD] |= 1 << (i % WORD);
                }
            }
        }
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i == j || !self.leq(i, j) {
                    continue;
                }
                // Some k ∉ {i, j} with i ≤ k ≤ j.
                let between = (0..words(n)).any(|w| {
                    let mut both = self.rows[i][w] & cols[j][w];
                    for x in [i, j] {
                        if x / WORD == w {
                            both &= !(1 << (x % WORD));
                        }
                    }
                    both != 0
                });
                if !between {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// The relation as CSV: a header row of ids, then one row of 0/1 per
    /// element with `row[i][j] = 1` iff `i ≤ j`.
    pub fn to_csv(&self, ids: &[String]) -> String {
        let mut out = String::new();
        out.push_str(&ids.join(","));
        out.push('\n');
        for i in 0..self.len() {
            let row: Vec<&str> = (0..self.len())
                .map(|j| if self.leq(i, j) { "1" } else { "0" })
                .collect();
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }

    /// Hasse diagram with an edge from each element to the ones it covers.
    pub fn to_dot(&self, name: &str, node_labels: &[String]) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "digraph \"{name}\" {{");
        out.push_str("  rankdir=TB;\n");
        for (i, label) in node_labels.iter().enumerate() {
            let _ = writeln!(out, "  n{i} [label=\"{}\"];", label.replace('"', "\\\""));
        }
        for &(lo, hi) in &self.covers {
            let _ = writeln!(out, "  n{hi} -> n{lo};");
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn divisibility(n: usize) -> Poset<usize> {
        let labels: Vec<usize> = (1..=n).collect();
        Poset::from_relation(labels, |i, j| (j + 1) % (i + 1) == 0).unwrap()
    }

    #[test]
    fn divisors_of_twelve() {
        let p = divisibility(12);
        assert!(p.leq(1, 11));
        assert!(!p.leq(2, 3));
        assert!(p.covers().contains(&(0, 1)));
        assert!(p.covers().contains(&(5, 11)));
        assert!(!p.covers().contains(&(0, 3)));
        assert_eq!(p.minimal(), vec![0]);
        assert_eq!(p.down_set(11), vec![0, 1, 2, 3, 5, 11]);
    }

    #[test]
    fn rejects_non_orders() {
        let cycle = Poset::from_relation(vec![0, 1], |_, _| true);
        assert!(matches!(cycle, Err(Error::PosetAxiom(_))));
        let broken = Poset::from_relation(vec![0, 1, 2], |i, j| i == j || j == i + 1);
        assert!(matches!(broken, Err(Error::PosetAxiom(_))));
        let irreflexive = Poset::from_relation(vec![0], |_, _| false);
        assert!(irreflexive.is_err());
    }

    #[test]
    fn large_chain_crosses_word_boundary() {
        let p = Poset::from_relation((0..130).collect(), |i, j| i <= j).unwrap();
        assert_eq!(p.covers().len(), 129);
        assert_eq!(p.maximal(), vec![129]);
        assert_eq!(p.relation_size(), 130 * 131 / 2);
    }

    #[test]
    fn renderings() {
        let p = Poset::from_relation(vec!['a', 'b'], |i, j| i <= j).unwrap();
        let ids = vec!["a".to_string(), "b".to_string()];
        assert_eq!(p.to_csv(&ids), "a,b\n1,1\n0,1\n");
        let dot = p.to_dot("chain", &ids);
        assert!(dot.contains("n1 -> n0;"));
        assert!(dot.starts_with("digraph \"chain\" {"));
    }
}
