//! Finite sets `X`, `Y` with a permutation-group action given by generators.
//!
//! Orbits are computed by closing under the generators with a union-find;
//! the group itself is never materialized.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The action of one group element on `X` and on `Y` simultaneously.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub perm_x: Vec<usize>,
    pub perm_y: Vec<usize>,
}

/// Sizes of `X` and `Y` plus generators of the acting group. An empty
/// generator list is the trivial group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionSpec {
    pub x_size: usize,
    pub y_size: usize,
    #[serde(default)]
    pub generators: Vec<Generator>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    X,
    Y,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::X => "perm_x",
            Side::Y => "perm_y",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    EmptySet(Side),
    SizeMismatch {
        generator: usize,
        side: Side,
        expected: usize,
        got: usize,
    },
    IndexOutOfRange {
        generator: usize,
        side: Side,
        index: usize,
    },
    NotBijection {
        generator: usize,
        side: Side,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EmptySet(Side::X) => write!(f, "x_size must be positive"),
            Violation::EmptySet(Side::Y) => write!(f, "y_size must be positive"),
            Violation::SizeMismatch {
                generator,
                side,
                expected,
                got,
            } => write!(
                f,
                "generator {generator}: {side} has length {got}, expected {expected}"
            ),
            Violation::IndexOutOfRange {
                generator,
                side,
                index,
            } => write!(f, "generator {generator}: {side} image {index} out of range"),
            Violation::NotBijection { generator, side } => {
                write!(f, "generator {generator}: {side} not a bijection")
            }
        }
    }
}

/// Result of [`ActionSpec::validate`]; empty means valid.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return f.write_str("valid");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

fn check_perm(perm: &[usize], size: usize, generator: usize, side: Side, out: &mut Vec<Violation>) {
    if perm.len() != size {
        out.push(Violation::SizeMismatch {
            generator,
            side,
            expected: size,
            got: perm.len(),
        });
        return;
    }
    let mut seen = vec![false; size];
    let mut injective = true;
    for &p in perm {
        if p >= size {
            out.push(Violation::IndexOutOfRange {
                generator,
                side,
                index: p,
            });
            return;
        }
        if std::mem::replace(&mut seen[p], true) {
            injective = false;
        }
    }
    if !injective {
        out.push(Violation::NotBijection { generator, side });
    }
}

impl ActionSpec {
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        if self.x_size == 0 {
            violations.push(Violation::EmptySet(Side::X));
        }
        if self.y_size == 0 {
            violations.push(Violation::EmptySet(Side::Y));
        }
        for (g, gen) in self.generators.iter().enumerate() {
            check_perm(&gen.perm_x, self.x_size, g, Side::X, &mut violations);
            check_perm(&gen.perm_y, self.y_size, g, Side::Y, &mut violations);
        }
        ValidationReport { violations }
    }

    pub fn ensure_valid(&self) -> Result<()> {
        let report = self.validate();
        if report.is_valid() {
            Ok(())
        } else {
            Err(Error::InvalidAction(report))
        }
    }

    /// The trivial group on an `m x n` grid.
    pub fn trivial(m: usize, n: usize) -> Self {
        ActionSpec {
            x_size: m,
            y_size: n,
            generators: Vec::new(),
        }
    }

    /// `Z/2` swapping both points of a two-element `X` and `Y`.
    pub fn swap_2x2() -> Self {
        ActionSpec {
            x_size: 2,
            y_size: 2,
            generators: vec![Generator {
                perm_x: vec![1, 0],
                perm_y: vec![1, 0],
            }],
        }
    }

    /// `S_n` acting naturally on `X = {0..n-1}` and on `Y = S_n` by left
    /// composition `g(h) = g . h`. Elements of `Y` are indexed by the
    /// lexicographic rank of their one-line notation. Generated by the
    /// adjacent transpositions.
    pub fn symmetric(n: usize) -> Self {
        let perms = permutations_lex(n);
        let index = |p: &[usize]| perms.binary_search_by(|q| q.as_slice().cmp(p)).unwrap();
        let generators = (0..n.saturating_sub(1))
            .map(|t| {
                let mut tau: Vec<usize> = (0..n).collect();
                tau.swap(t, t + 1);
                let perm_y = perms
                    .iter()
                    .map(|h| {
                        let composed: Vec<usize> = h.iter().map(|&v| tau[v]).collect();
                        index(&composed)
                    })
                    .collect();
                Generator {
                    perm_x: tau,
                    perm_y,
                }
            })
            .collect();
        ActionSpec {
            x_size: n,
            y_size: perms.len(),
            generators,
        }
    }

    /// `Z/a` rotating each of `m1` blocks of `X` and `n1` blocks of `Y`,
    /// every block of size `a`. Every cell of the orbit grid then holds
    /// exactly `a` product orbits.
    pub fn cyclic_blocks(m1: usize, n1: usize, a: usize) -> Self {
        let rotate = |blocks: usize| -> Vec<usize> {
            (0..blocks * a)
                .map(|e| (e / a) * a + (e % a + 1) % a)
                .collect()
        };
        ActionSpec {
            x_size: m1 * a,
            y_size: n1 * a,
            generators: vec![Generator {
                perm_x: rotate(m1),
                perm_y: rotate(n1),
            }],
        }
    }

    pub fn orbits_x(&self) -> Result<OrbitPartition> {
        self.ensure_valid()?;
        Ok(OrbitPartition::from_generators(
            self.x_size,
            self.generators.iter().map(|g| g.perm_x.as_slice()),
        ))
    }

    pub fn orbits_y(&self) -> Result<OrbitPartition> {
        self.ensure_valid()?;
        Ok(OrbitPartition::from_generators(
            self.y_size,
            self.generators.iter().map(|g| g.perm_y.as_slice()),
        ))
    }

    /// Orbits of the diagonal action on `X x Y`; cell `(i, j)` has index
    /// `i * y_size + j`.
    pub fn orbits_product(&self) -> Result<OrbitPartition> {
        self.ensure_valid()?;
        let ny = self.y_size;
        let product: Vec<Vec<usize>> = self
            .generators
            .iter()
            .map(|g| {
                (0..self.x_size * ny)
                    .map(|c| g.perm_x[c / ny] * ny + g.perm_y[c % ny])
                    .collect()
            })
            .collect();
        Ok(OrbitPartition::from_generators(
            self.x_size * ny,
            product.iter().map(Vec::as_slice),
        ))
    }
}

fn permutations_lex(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        // next permutation
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut a: usize) -> usize {
        while self.parent[a] != a {
            self.parent[a] = self.parent[self.parent[a]];
            a = self.parent[a];
        }
        a
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        // smaller root wins, so roots are the orbit minima
        if ra < rb {
            self.parent[rb] = ra;
        } else if rb < ra {
            self.parent[ra] = rb;
        }
    }
}

/// A partition of `{0..universe_size-1}` into orbits, with ids ordered by
/// each orbit's least element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitPartition {
    orbit_of: Vec<usize>,
    orbits: Vec<Vec<usize>>,
}

impl OrbitPartition {
    fn from_generators<'a>(size: usize, perms: impl Iterator<Item = &'a [usize]>) -> Self {
        let mut uf = UnionFind::new(size);
        for perm in perms {
            for (e, &img) in perm.iter().enumerate() {
                uf.union(e, img);
            }
        }
        let mut orbit_of = vec![usize::MAX; size];
        let mut orbits: Vec<Vec<usize>> = Vec::new();
        for e in 0..size {
            let root = uf.find(e);
            if root == e {
                orbit_of[e] = orbits.len();
                orbits.push(vec![e]);
            } else {
                orbit_of[e] = orbit_of[root];
                orbits[orbit_of[root]].push(e);
            }
        }
        OrbitPartition { orbit_of, orbits }
    }

    pub fn universe_size(&self) -> usize {
        self.orbit_of.len()
    }

    pub fn num_orbits(&self) -> usize {
        self.orbits.len()
    }

    pub fn orbit_of(&self, e: usize) -> usize {
        self.orbit_of[e]
    }

    pub fn orbit(&self, id: usize) -> &[usize] {
        &self.orbits[id]
    }

    pub fn orbits(&self) -> &[Vec<usize>] {
        &self.orbits
    }

    /// True iff `values` is constant on every orbit.
    pub fn is_invariant<T: PartialEq>(&self, values: &[T]) -> Result<bool> {
        if values.len() != self.universe_size() {
            return Err(Error::LengthMismatch {
                expected: self.universe_size(),
                got: values.len(),
            });
        }
        Ok(self
            .orbits
            .iter()
            .all(|o| o.iter().all(|&e| values[e] == values[o[0]])))
    }
}
