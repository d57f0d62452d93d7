//! Crystallographic Coxeter groups realized by integer reflection matrices.
//!
//! A Coxeter matrix with off-diagonal entries in `{2, 3, 4, 6}` determines a
//! crystallographic group; the simple reflections act on the root lattice
//! through the Cartan matrix with the convention `c[i][j] = -1` and
//! `c[j][i] = -1, -2, -3` for `m = 3, 4, 6` (`i < j`). The group is
//! enumerated by breadth-first search on right multiplication, which also
//! yields lengths, shortlex reduced words, reflections, and the Bruhat
//! order.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// The default cap on the number of enumerated elements.
pub const DEFAULT_CAP: usize = 1152;

/// Errors from Coxeter matrix validation or group enumeration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoxeterError {
    EmptyRank,
    NotSquare { rows: usize, row: usize, cols: usize },
    BadDiagonal { index: usize, value: u32 },
    NotSymmetric { i: usize, j: usize },
    NotCrystallographic { i: usize, j: usize, value: u32 },
    CapExceeded { cap: usize },
    Overflow,
}

impl fmt::Display for CoxeterError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoxeterError::EmptyRank => f.write_str("EmptyRank: the Coxeter matrix has no rows"),
            CoxeterError::NotSquare { rows, row, cols } => write!(
                f,
                "NotSquare: matrix with {rows} rows has {cols} entries in row {row}"
            ),
            CoxeterError::BadDiagonal { index, value } => write!(
                f,
                "BadDiagonal: entry ({index}, {index}) is {value}, expected 1"
            ),
            CoxeterError::NotSymmetric { i, j } => {
                write!(f, "NotSymmetric: entries ({i}, {j}) and ({j}, {i}) differ")
            }
            CoxeterError::NotCrystallographic { i, j, value } => write!(
                f,
                "NotCrystallographic: entry ({i}, {j}) is {value}, allowed values are 2, 3, 4, 6"
            ),
            CoxeterError::CapExceeded { cap } => write!(
                f,
                "CapExceeded: the group has more than {cap} elements"
            ),
            CoxeterError::Overflow => f.write_str("Overflow: matrix entry exceeds the machine word"),
        }
    }
}

impl core::error::Error for CoxeterError {}

/// A validated crystallographic Coxeter matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoxeterMatrix {
    m: Vec<Vec<u32>>,
}

impl CoxeterMatrix {
    /// Validates squareness, unit diagonal, symmetry, and the
    /// crystallographic condition `m[i][j] in {2, 3, 4, 6}` off the
    /// diagonal.
    pub fn new(m: Vec<Vec<u32>>) -> Result<Self, CoxeterError> {
        let n = m.len();
        if n == 0 {
            return Err(CoxeterError::EmptyRank);
        }
        for (i, row) in m.iter().enumerate() {
            if row.len() != n {
                return Err(CoxeterError::NotSquare {
                    rows: n,
                    row: i,
                    cols: row.len(),
                });
            }
        }
        for (i, row) in m.iter().enumerate() {
            if row[i] != 1 {
                return Err(CoxeterError::BadDiagonal {
                    index: i,
                    value: row[i],
                });
            }
            for (j, &entry) in row.iter().enumerate() {
                if entry != m[j][i] {
                    return Err(CoxeterError::NotSymmetric { i, j });
                }
                if i != j && !matches!(entry, 2 | 3 | 4 | 6) {
                    return Err(CoxeterError::NotCrystallographic {
                        i,
                        j,
                        value: entry,
                    });
                }
            }
        }
        Ok(CoxeterMatrix { m })
    }

    pub fn rank(&self) -> usize {
        self.m.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> u32 {
        self.m[i][j]
    }

    /// The Cartan matrix of the chosen integral realization.
    pub fn cartan(&self) -> Vec<Vec<i64>> {
        let n = self.rank();
        let mut c = alloc::vec![alloc::vec![0i64; n]; n];
        for (i, row) in c.iter_mut().enumerate() {
            for (j, slot) in row.iter_mut().enumerate() {
                *slot = match (i == j, self.m[i][j]) {
                    (true, _) => 2,
                    (false, 2) => 0,
                    (false, 3) => -1,
                    (false, 4) => {
                        if i < j {
                            -1
                        } else {
                            -2
                        }
                    }
                    (false, 6) => {
                        if i < j {
                            -1
                        } else {
                            -3
                        }
                    }
                    _ => unreachable!("validated on construction"),
                };
            }
        }
        c
    }
}

#[derive(Clone, Debug)]
struct Element {
    matrix: Vec<i64>,
    word: Vec<usize>,
    length: u32,
}

/// A fully enumerated finite crystallographic Coxeter group.
///
/// Elements are indexed `0..order()` in breadth-first (shortlex) discovery
/// order; index 0 is the identity.
#[derive(Clone, Debug)]
pub struct CoxeterGroup {
    rank: usize,
    elements: Vec<Element>,
    index: BTreeMap<Vec<i64>, usize>,
    /// `right_mult[w][s]` is the index of `w * s`.
    right_mult: Vec<Vec<usize>>,
    /// `left_mult[w][s]` is the index of `s * w`.
    left_mult: Vec<Vec<usize>>,
    reflections: Vec<usize>,
    /// `bruhat[w]` is a bitset over element indices `x` with `x <= w`.
    bruhat: Vec<Vec<u64>>,
}

fn mat_mul(n: usize, a: &[i64], b: &[i64]) -> Result<Vec<i64>, CoxeterError> {
    let mut out = alloc::vec![0i64; n * n];
    for r in 0..n {
        for c in 0..n {
            let mut acc: i64 = 0;
            for k in 0..n {
                let term = a[r * n + k]
                    .checked_mul(b[k * n + c])
                    .ok_or(CoxeterError::Overflow)?;
                acc = acc.checked_add(term).ok_or(CoxeterError::Overflow)?;
            }
            out[r * n + c] = acc;
        }
    }
    Ok(out)
}

impl CoxeterGroup {
    /// Enumerates the group generated by the simple reflections of `matrix`,
    /// failing with [`CoxeterError::CapExceeded`] when more than `cap`
    /// elements appear (so an infinite group is always detected).
    pub fn enumerate(matrix: &CoxeterMatrix, cap: usize) -> Result<Self, CoxeterError> {
        let n = matrix.rank();
        let cartan = matrix.cartan();
        let mut gens: Vec<Vec<i64>> = Vec::with_capacity(n);
        for (i, cartan_row) in cartan.iter().enumerate() {
            let mut g = alloc::vec![0i64; n * n];
            for r in 0..n {
                for c in 0..n {
                    g[r * n + c] = if r == i {
                        (if r == c { 1 } else { 0 }) - cartan_row[c]
                    } else if r == c {
                        1
                    } else {
                        0
                    };
                }
            }
            gens.push(g);
        }

        let mut identity = alloc::vec![0i64; n * n];
        for r in 0..n {
            identity[r * n + r] = 1;
        }

        let mut elements = alloc::vec![Element {
            matrix: identity.clone(),
            word: Vec::new(),
            length: 0,
        }];
        let mut index = BTreeMap::from([(identity, 0usize)]);
        let mut right_mult: Vec<Vec<usize>> = Vec::new();

        let mut cursor = 0;
        while cursor < elements.len() {
            let mut row = alloc::vec![usize::MAX; n];
            for s in 0..n {
                let product = mat_mul(n, &elements[cursor].matrix, &gens[s])?;
                let next = match index.get(&product) {
                    Some(&idx) => idx,
                    None => {
                        if elements.len() >= cap {
                            return Err(CoxeterError::CapExceeded { cap });
                        }
                        let mut word = elements[cursor].word.clone();
                        word.push(s);
                        let idx = elements.len();
                        elements.push(Element {
                            matrix: product.clone(),
                            word,
                            length: elements[cursor].length + 1,
                        });
                        index.insert(product, idx);
                        idx
                    }
                };
                row[s] = next;
            }
            right_mult.push(row);
            cursor += 1;
        }

        let mut left_mult = alloc::vec![alloc::vec![usize::MAX; n]; elements.len()];
        for (w, elt) in elements.iter().enumerate() {
            for s in 0..n {
                let product = mat_mul(n, &gens[s], &elt.matrix)?;
                left_mult[w][s] = *index.get(&product).expect("group is closed");
            }
        }

        let mut group = CoxeterGroup {
            rank: n,
            elements,
            index,
            right_mult,
            left_mult,
            reflections: Vec::new(),
            bruhat: Vec::new(),
        };
        group.reflections = group.compute_reflections();
        group.bruhat = group.compute_bruhat()?;
        Ok(group)
    }

    fn compute_reflections(&self) -> Vec<usize> {
        let mut set = alloc::collections::BTreeSet::new();
        for u in 0..self.order() {
            for s in 0..self.rank {
                // t = u s u^-1, computed through the multiplication tables.
                let mut t = self.left_mult[self.inverse(u)][s];
                for &g in self.elements[u].word.iter().rev() {
                    t = self.left_mult[t][g];
                }
                set.insert(t);
            }
        }
        set.into_iter().collect()
    }

    /// Downward Bruhat sets by increasing length: the set of `w` is `w`
    /// itself joined with the sets of all `t * w` of smaller length, over
    /// reflections `t`. Reflection multiples are always comparable, with the
    /// order given by length, and every Bruhat relation is a chain of them.
    fn compute_bruhat(&self) -> Result<Vec<Vec<u64>>, CoxeterError> {
        let order = self.order();
        let words = order.div_ceil(64);
        let mut by_length: Vec<usize> = (0..order).collect();
        by_length.sort_by_key(|&w| self.elements[w].length);
        let mut rows = alloc::vec![alloc::vec![0u64; words]; order];
        for &w in &by_length {
            let mut row = alloc::vec![0u64; words];
            row[w / 64] |= 1u64 << (w % 64);
            for &t in &self.reflections {
                let tw = self.multiply(t, w);
                if self.elements[tw].length < self.elements[w].length {
                    for (acc, lower) in row.iter_mut().zip(&rows[tw]) {
                        *acc |= *lower;
                    }
                }
            }
            rows[w] = row;
        }
        Ok(rows)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    /// The index of the simple reflection `s`.
    pub fn generator(&self, s: usize) -> usize {
        self.right_mult[0][s]
    }

    pub fn length(&self, w: usize) -> u32 {
        self.elements[w].length
    }

    /// The shortlex-least reduced word of `w`, as generator indices.
    pub fn word(&self, w: usize) -> &[usize] {
        &self.elements[w].word
    }

    /// Renders a word as `e` or `s1.s2.s1` (generators are 1-based).
    pub fn word_name(&self, w: usize) -> String {
        if self.elements[w].word.is_empty() {
            return String::from("e");
        }
        let parts: Vec<String> = self.elements[w]
            .word
            .iter()
            .map(|s| alloc::format!("s{}", s + 1))
            .collect();
        parts.join(".")
    }

    /// Looks up an element by any word in the generators (empty word is the
    /// identity). Returns `None` if some letter is out of range.
    pub fn element_of_word(&self, word: &[usize]) -> Option<usize> {
        let mut w = 0usize;
        for &s in word {
            if s >= self.rank {
                return None;
            }
            w = self.right_mult[w][s];
        }
        Some(w)
    }

    pub fn multiply(&self, a: usize, b: usize) -> usize {
        let mut out = a;
        for &s in &self.elements[b].word.clone() {
            out = self.right_mult[out][s];
        }
        out
    }

    pub fn inverse(&self, a: usize) -> usize {
        let mut out = 0usize;
        for &s in self.elements[a].word.iter().rev() {
            out = self.right_mult[out][s];
        }
        out
    }

    pub fn right_times_gen(&self, w: usize, s: usize) -> usize {
        self.right_mult[w][s]
    }

    pub fn gen_times_left(&self, s: usize, w: usize) -> usize {
        self.left_mult[w][s]
    }

    /// Generators `s` with `length(s * w) < length(w)`.
    pub fn left_descents(&self, w: usize) -> Vec<usize> {
        (0..self.rank)
            .filter(|&s| self.length(self.left_mult[w][s]) < self.length(w))
            .collect()
    }

    /// Generators `s` with `length(w * s) < length(w)`.
    pub fn right_descents(&self, w: usize) -> Vec<usize> {
        (0..self.rank)
            .filter(|&s| self.length(self.right_mult[w][s]) < self.length(w))
            .collect()
    }

    /// Indices of all reflections (conjugates of simple reflections).
    pub fn reflections(&self) -> &[usize] {
        &self.reflections
    }

    /// Whether `x <= w` in the Bruhat order.
    pub fn bruhat_leq(&self, x: usize, w: usize) -> bool {
        (self.bruhat[w][x / 64] >> (x % 64)) & 1 == 1
    }

    /// The index of the longest element; the group is finite so it exists
    /// and is unique.
    pub fn longest_element(&self) -> usize {
        let max_len = self
            .elements
            .iter()
            .map(|e| e.length)
            .max()
            .expect("nonempty");
        let longest: Vec<usize> = (0..self.order())
            .filter(|&w| self.elements[w].length == max_len)
            .collect();
        debug_assert_eq!(longest.len(), 1, "finite groups have a unique longest element");
        longest[0]
    }

    /// All element indices sorted by `(length, shortlex word)` — the
    /// discovery order, i.e. `0..order()`.
    pub fn by_length(&self) -> impl Iterator<Item = usize> {
        0..self.order()
    }

    /// Looks up the element with the given matrix, if it is in the group.
    pub fn element_of_matrix(&self, matrix: &[i64]) -> Option<usize> {
        self.index.get(matrix).copied()
    }
}
