//! Good subsets of an `m x n` grid.
//!
//! A set of cells is good when every function on it splits as
//! `f(i, j) = u(i) + v(j)`. Viewing each cell as an edge between row `i` and
//! column `j` of the complete bipartite graph `K_{m,n}`, a set is good
//! exactly when those edges form a forest, and the maximal good sets are the
//! spanning trees.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;
use std::ops::ControlFlow;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::det_bareiss;

pub type Cell = (usize, usize);

/// Default cap on the number of sets an enumeration may emit.
pub const DEFAULT_CAP: u64 = 1_000_000;

/// Cells of an `m x n` grid, sorted row-major and duplicate-free.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GridSubset {
    m: usize,
    n: usize,
    cells: Vec<Cell>,
}

impl GridSubset {
    pub fn new(m: usize, n: usize, mut cells: Vec<Cell>) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::EmptyGrid(m, n));
        }
        if let Some(&(i, j)) = cells.iter().find(|&&(i, j)| i >= m || j >= n) {
            return Err(Error::CellOutOfRange(i, j, m, n));
        }
        cells.sort_unstable();
        if let Some(w) = cells.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateCell(w[0].0, w[0].1));
        }
        Ok(GridSubset { m, n, cells })
    }

    pub fn full(m: usize, n: usize) -> Result<Self> {
        let cells = (0..m).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
        GridSubset::new(m, n, cells)
    }

    /// Builds from the bits of `mask` over the row-major cell order.
    pub fn from_mask(m: usize, n: usize, mask: u64) -> Result<Self> {
        let cells = (0..m * n)
            .filter(|b| mask >> b & 1 == 1)
            .map(|b| (b / n, b % n))
            .collect();
        GridSubset::new(m, n, cells)
    }

    pub fn rows(&self) -> usize {
        self.m
    }

    pub fn cols(&self) -> usize {
        self.n
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn contains(&self, cell: Cell) -> bool {
        self.cells.binary_search(&cell).is_ok()
    }

    pub fn with_cell(&self, cell: Cell) -> Result<Self> {
        let mut cells = self.cells.clone();
        cells.push(cell);
        GridSubset::new(self.m, self.n, cells)
    }
}

impl fmt::Display for GridSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, (i, j)) in self.cells.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "({i},{j})")?;
        }
        f.write_str("}")
    }
}

/// A closed alternating row/column walk through distinct cells. The first
/// cell is repeated at the end.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoopWitness {
    pub cells: Vec<Cell>,
}

impl LoopWitness {
    /// Checks the link conditions: consecutive cells agree in exactly one
    /// coordinate, and row-steps alternate with column-steps (cyclically).
    pub fn is_valid(&self) -> bool {
        let c = &self.cells;
        if c.len() < 5 || c.first() != c.last() {
            return false;
        }
        let steps: Vec<bool> = c
            .windows(2)
            .map(|w| w[0].0 == w[1].0)
            .collect();
        let exactly_one = c
            .windows(2)
            .all(|w| (w[0].0 == w[1].0) != (w[0].1 == w[1].1));
        let k = steps.len();
        let mut distinct = c[..k].to_vec();
        distinct.sort_unstable();
        distinct.dedup();
        distinct.len() == k
            && exactly_one && k.is_multiple_of(2) && (0..k).all(|s| steps[s] != steps[(s + 1) % k])
    }
}

impl fmt::Display for LoopWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("loop ")?;
        for (k, (i, j)) in self.cells.iter().enumerate() {
            if k > 0 {
                f.write_str(" -> ")?;
            }
            write!(f, "({i},{j})")?;
        }
        Ok(())
    }
}

/// Union-find with rollback, used by the spanning-tree search.
struct UndoDsu {
    parent: Vec<usize>,
    size: Vec<usize>,
    history: Vec<(usize, usize)>,
}

impl UndoDsu {
    fn new(n: usize) -> Self {
        UndoDsu {
            parent: (0..n).collect(),
            size: vec![1; n],
            history: Vec::new(),
        }
    }

    fn find(&self, mut a: usize) -> usize {
        while self.parent[a] != a {
            a = self.parent[a];
        }
        a
    }

    /// Returns false (and records nothing) if already connected.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        self.history.push((ra, rb));
        true
    }

    fn undo(&mut self) {
        let (ra, rb) = self.history.pop().expect("nothing to undo");
        self.parent[rb] = rb;
        self.size[ra] -= self.size[rb];
    }
}

/// Finds a loop in `s`, if any.
///
/// Cells are added in row-major order to a forest on the `m + n` row and
/// column vertices; the first cell joining two already connected vertices
/// closes a cycle, which is read back as a loop.
pub fn find_loop(s: &GridSubset) -> Option<LoopWitness> {
    let (m, n) = (s.m, s.n);
    let mut dsu = UndoDsu::new(m + n);
    let mut adj: Vec<Vec<(usize, Cell)>> = vec![Vec::new(); m + n];
    for &(i, j) in &s.cells {
        let (row, col) = (i, m + j);
        if dsu.union(row, col) {
            adj[row].push((col, (i, j)));
            adj[col].push((row, (i, j)));
            continue;
        }
        // BFS in the forest from row i to column j
        let mut prev: Vec<Option<(usize, Cell)>> = vec![None; m + n];
        let mut seen = vec![false; m + n];
        let mut queue = VecDeque::from([row]);
        seen[row] = true;
        while let Some(v) = queue.pop_front() {
            if v == col {
                break;
            }
            for &(w, cell) in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    prev[w] = Some((v, cell));
                    queue.push_back(w);
                }
            }
        }
        let mut path = Vec::new();
        let mut v = col;
        while let Some((p, cell)) = prev[v] {
            path.push(cell);
            v = p;
        }
        path.reverse();
        let mut cells = Vec::with_capacity(path.len() + 2);
        cells.push((i, j));
        cells.extend(path);
        cells.push((i, j));
        return Some(LoopWitness { cells });
    }
    None
}

pub fn is_good(s: &GridSubset) -> bool {
    find_loop(s).is_none()
}

/// Row and column potentials with `u[i] + v[j] = f(i, j)` on the set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub u: Vec<BigRational>,
    pub v: Vec<BigRational>,
}

/// Splits `f` on the good set `s` as `u(i) + v(j)`.
///
/// Within each connected component of the row/column graph the least row
/// gets `u = 0`; rows and columns not touched by `s` get 0.
pub fn decompose(s: &GridSubset, f: &BTreeMap<Cell, BigRational>) -> Result<Decomposition> {
    if f.len() != s.len() || !s.cells.iter().all(|c| f.contains_key(c)) {
        return Err(Error::DomainMismatch);
    }
    if let Some(w) = find_loop(s) {
        return Err(Error::NotGood(w));
    }
    let (m, n) = (s.m, s.n);
    let mut row_adj: Vec<Vec<usize>> = vec![Vec::new(); m];
    let mut col_adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(i, j) in &s.cells {
        row_adj[i].push(j);
        col_adj[j].push(i);
    }
    let mut u = vec![BigRational::zero(); m];
    let mut v = vec![BigRational::zero(); n];
    let mut row_done = vec![false; m];
    let mut col_done = vec![false; n];
    for start in 0..m {
        if row_done[start] || row_adj[start].is_empty() {
            continue;
        }
        row_done[start] = true;
        // false = row vertex, true = column vertex
        let mut queue = VecDeque::from([(false, start)]);
        while let Some((is_col, k)) = queue.pop_front() {
            if is_col {
                for &i in &col_adj[k] {
                    if !row_done[i] {
                        row_done[i] = true;
                        u[i] = &f[&(i, k)] - &v[k];
                        queue.push_back((false, i));
                    }
                }
            } else {
                for &j in &row_adj[k] {
                    if !col_done[j] {
                        col_done[j] = true;
                        v[j] = &f[&(k, j)] - &u[k];
                        queue.push_back((true, j));
                    }
                }
            }
        }
    }
    Ok(Decomposition { u, v })
}

/// Visits every maximal good set of the `m x n` grid in lexicographic
/// order of the sorted cell list.
///
/// Include/exclude backtracking over row-major cells: a cell is included
/// only if it closes no loop, and excluded only if the chosen cells plus the
/// remaining ones still connect every row and column. Every branch therefore
/// ends in a spanning tree.
pub fn visit_maximal_good<F>(m: usize, n: usize, mut visit: F) -> Result<()>
where
    F: FnMut(&[Cell]) -> ControlFlow<()>,
{
    if m == 0 || n == 0 {
        return Err(Error::EmptyGrid(m, n));
    }
    let cells: Vec<Cell> = (0..m).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
    let mut search = TreeSearch {
        m,
        n,
        cells: &cells,
        dsu: UndoDsu::new(m + n),
        chosen: Vec::with_capacity(m + n - 1),
    };
    let _ = search.run(0, &mut visit);
    Ok(())
}

struct TreeSearch<'a> {
    m: usize,
    n: usize,
    cells: &'a [Cell],
    dsu: UndoDsu,
    chosen: Vec<Cell>,
}

impl TreeSearch<'_> {
    fn run<F>(&mut self, idx: usize, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[Cell]) -> ControlFlow<()>,
    {
        if self.chosen.len() == self.m + self.n - 1 {
            return visit(&self.chosen);
        }
        let Some(&(i, j)) = self.cells.get(idx) else {
            return ControlFlow::Continue(());
        };
        if self.dsu.union(i, self.m + j) {
            self.chosen.push((i, j));
            let flow = self.run(idx + 1, visit);
            self.chosen.pop();
            self.dsu.undo();
            flow?;
        }
        if self.spans_without(idx) {
            self.run(idx + 1, visit)?;
        }
        ControlFlow::Continue(())
    }

    /// Whether chosen cells plus `cells[idx+1..]` connect all vertices.
    fn spans_without(&self, idx: usize) -> bool {
        let total = self.m + self.n;
        let mut dsu = UndoDsu::new(total);
        let mut components = total;
        for &(i, j) in self.chosen.iter().chain(&self.cells[idx + 1..]) {
            if dsu.union(i, self.m + j) {
                components -= 1;
                if components == 1 {
                    return true;
                }
            }
        }
        components == 1
    }
}

/// All maximal good sets of the `m x n` grid in canonical order, refusing
/// when there are more than `cap` of them.
pub fn enumerate_maximal_good(m: usize, n: usize, cap: u64) -> Result<Vec<GridSubset>> {
    let count = count_maximal_good(m, n);
    if count > BigUint::from(cap) {
        return Err(Error::CapExceeded {
            needed: count.to_string(),
            cap,
        });
    }
    let mut out = Vec::new();
    visit_maximal_good(m, n, |cells| {
        out.push(GridSubset {
            m,
            n,
            cells: cells.to_vec(),
        });
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

fn pow(base: usize, exp: usize) -> BigUint {
    num_traits::pow(BigUint::from(base), exp)
}

/// `m^(n-1) * n^(m-1)`, the number of maximal good sets.
pub fn count_maximal_good(m: usize, n: usize) -> BigUint {
    if m == 0 || n == 0 {
        return BigUint::zero();
    }
    pow(m, n - 1) * pow(n, m - 1)
}

/// Number of maximal good sets meeting a fixed row in exactly a given set of
/// `k` cells: `k * n^(m-2) * (m-1)^(n-k)`.
pub fn count_fixed_row_points(m: usize, n: usize, k: usize) -> Result<BigUint> {
    if m < 2 || n < 2 {
        return Err(Error::DegenerateCount(m, n));
    }
    if k == 0 || k > n {
        return Err(Error::KOutOfRange { k, max: n });
    }
    Ok(BigUint::from(k) * pow(n, m - 2) * pow(m - 1, n - k))
}

/// Column analogue of [`count_fixed_row_points`]:
/// `k * m^(n-2) * (n-1)^(m-k)`.
pub fn count_fixed_col_points(m: usize, n: usize, k: usize) -> Result<BigUint> {
    if m < 2 || n < 2 {
        return Err(Error::DegenerateCount(m, n));
    }
    if k == 0 || k > m {
        return Err(Error::KOutOfRange { k, max: m });
    }
    Ok(BigUint::from(k) * pow(m, n - 2) * pow(n - 1, m - k))
}

/// Weighted spanning-tree sum of `K_{m,n}` via the matrix-tree theorem:
/// the sum over spanning trees of the product of edge weights, computed as
/// the determinant of the weighted Laplacian with the last vertex removed.
pub fn weighted_tree_sum<W>(m: usize, n: usize, weight: W) -> BigInt
where
    W: Fn(usize, usize) -> BigInt,
{
    let total = m + n;
    if total == 0 {
        return BigInt::zero();
    }
    let mut lap = vec![vec![BigInt::zero(); total]; total];
    for i in 0..m {
        for j in 0..n {
            let w = weight(i, j);
            lap[i][i] += &w;
            lap[m + j][m + j] += &w;
            lap[i][m + j] -= &w;
            lap[m + j][i] -= &w;
        }
    }
    let minor: Vec<Vec<BigInt>> = lap
        .into_iter()
        .take(total - 1)
        .map(|mut r| {
            r.truncate(total - 1);
            r
        })
        .collect();
    det_bareiss(minor)
}

/// Spanning-tree count of `K_{m,n}` by an exact Laplacian-minor determinant.
pub fn count_spanning_trees_matrix_tree(m: usize, n: usize) -> BigInt {
    weighted_tree_sum(m, n, |_, _| BigInt::one())
}
