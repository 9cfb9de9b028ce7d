//! The orbit grid `X/G x Y/G` and G-good sets of orbits.
//!
//! Every product orbit `G(x, y)` lies in exactly one block `G(x) x G(y)`;
//! `phi` sends it to that block's cell. A set of orbits is G-good iff `phi`
//! is injective on it and the image cells form a good set, so maximal G-good
//! sets are spanning trees of the orbit grid with one orbit chosen per cell.

use std::ops::ControlFlow;

use num_bigint::{BigInt, BigUint};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::good_sets::{self, Cell, GridSubset};
use crate::group_action::{ActionSpec, OrbitPartition};

/// Orbit partitions of `X`, `Y`, `X x Y` together with the quotient grid.
#[derive(Clone, Debug, Serialize)]
pub struct OrbitGrid {
    x_size: usize,
    y_size: usize,
    x_orbits: OrbitPartition,
    y_orbits: OrbitPartition,
    product_orbits: OrbitPartition,
    /// Row-major over the `m1 x n1` cells, each list sorted.
    cell_orbits: Vec<Vec<usize>>,
    orbit_cell: Vec<Cell>,
}

impl OrbitGrid {
    pub fn build(spec: &ActionSpec) -> Result<Self> {
        let x_orbits = spec.orbits_x()?;
        let y_orbits = spec.orbits_y()?;
        let product_orbits = spec.orbits_product()?;
        let (m1, n1) = (x_orbits.num_orbits(), y_orbits.num_orbits());
        let ny = spec.y_size;
        let mut cell_orbits = vec![Vec::new(); m1 * n1];
        let orbit_cell: Vec<Cell> = product_orbits
            .orbits()
            .iter()
            .enumerate()
            .map(|(id, cells)| {
                let c = cells[0];
                let cell = (x_orbits.orbit_of(c / ny), y_orbits.orbit_of(c % ny));
                cell_orbits[cell.0 * n1 + cell.1].push(id);
                cell
            })
            .collect();
        Ok(OrbitGrid {
            x_size: spec.x_size,
            y_size: spec.y_size,
            x_orbits,
            y_orbits,
            product_orbits,
            cell_orbits,
            orbit_cell,
        })
    }

    pub fn x_size(&self) -> usize {
        self.x_size
    }

    pub fn y_size(&self) -> usize {
        self.y_size
    }

    pub fn m1(&self) -> usize {
        self.x_orbits.num_orbits()
    }

    pub fn n1(&self) -> usize {
        self.y_orbits.num_orbits()
    }

    pub fn m12(&self) -> usize {
        self.product_orbits.num_orbits()
    }

    pub fn x_orbits(&self) -> &OrbitPartition {
        &self.x_orbits
    }

    pub fn y_orbits(&self) -> &OrbitPartition {
        &self.y_orbits
    }

    pub fn product_orbits(&self) -> &OrbitPartition {
        &self.product_orbits
    }

    /// Product orbits lying in block `(i, j)`.
    pub fn cell_orbits(&self, i: usize, j: usize) -> &[usize] {
        &self.cell_orbits[i * self.n1() + j]
    }

    pub fn alpha(&self, i: usize, j: usize) -> usize {
        self.cell_orbits(i, j).len()
    }

    /// `Some(a)` when every block holds exactly `a` orbits.
    pub fn constant_alpha(&self) -> Option<usize> {
        let a = self.cell_orbits[0].len();
        self.cell_orbits.iter().all(|c| c.len() == a).then_some(a)
    }

    pub fn phi(&self, orbit: usize) -> Result<Cell> {
        self.orbit_cell
            .get(orbit)
            .copied()
            .ok_or(Error::UnknownOrbit(orbit))
    }

    /// Orbit id of the point `(x, y)`.
    pub fn orbit_at(&self, x: usize, y: usize) -> usize {
        self.product_orbits.orbit_of(x * self.y_size + y)
    }

    /// Points `(x, y)` of a product orbit.
    pub fn orbit_points(&self, orbit: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        let ny = self.y_size;
        self.product_orbits
            .orbit(orbit)
            .iter()
            .map(move |&c| (c / ny, c % ny))
    }
}

/// A G-invariant subset of `X x Y`, held as its sorted list of orbit ids.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct GInvariantSubset {
    orbits: Vec<usize>,
}

impl GInvariantSubset {
    pub fn new(mut orbits: Vec<usize>) -> Self {
        orbits.sort_unstable();
        orbits.dedup();
        GInvariantSubset { orbits }
    }

    pub fn orbits(&self) -> &[usize] {
        &self.orbits
    }

    pub fn len(&self) -> usize {
        self.orbits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbits.is_empty()
    }

    pub fn contains(&self, orbit: usize) -> bool {
        self.orbits.binary_search(&orbit).is_ok()
    }

    /// Same set with `old` replaced by `new`.
    pub fn replace(&self, old: usize, new: usize) -> Self {
        let orbits = self
            .orbits
            .iter()
            .map(|&o| if o == old { new } else { o })
            .collect();
        GInvariantSubset::new(orbits)
    }

    pub fn validate(&self, grid: &OrbitGrid) -> Result<()> {
        match self.orbits.iter().find(|&&o| o >= grid.m12()) {
            Some(&o) => Err(Error::UnknownOrbit(o)),
            None => Ok(()),
        }
    }
}

/// Image of `s` under `phi`, or `None` if two orbits share a cell.
pub fn phi_image(grid: &OrbitGrid, s: &GInvariantSubset) -> Result<Option<GridSubset>> {
    s.validate(grid)?;
    let mut cells: Vec<Cell> = s.orbits.iter().map(|&o| grid.orbit_cell[o]).collect();
    cells.sort_unstable();
    if cells.windows(2).any(|w| w[0] == w[1]) {
        return Ok(None);
    }
    GridSubset::new(grid.m1(), grid.n1(), cells).map(Some)
}

/// A set of orbits is G-good iff `phi` is injective on it and the image is
/// a good set of the orbit grid.
pub fn is_ggood(grid: &OrbitGrid, s: &GInvariantSubset) -> Result<bool> {
    Ok(phi_image(grid, s)?.is_some_and(|img| good_sets::is_good(&img)))
}

pub fn is_maximal_ggood(grid: &OrbitGrid, s: &GInvariantSubset) -> Result<bool> {
    Ok(s.len() == grid.m1() + grid.n1() - 1 && is_ggood(grid, s)?)
}

/// Visits every maximal G-good set: spanning trees of the orbit grid in
/// canonical order, and for each tree every choice of one orbit per cell,
/// lexicographic in the tree's cell order.
pub fn visit_maximal_ggood<F>(grid: &OrbitGrid, mut visit: F) -> Result<()>
where
    F: FnMut(&[Cell], GInvariantSubset) -> ControlFlow<()>,
{
    good_sets::visit_maximal_good(grid.m1(), grid.n1(), |tree| {
        let lists: Vec<&[usize]> = tree.iter().map(|&(i, j)| grid.cell_orbits(i, j)).collect();
        let mut choice = vec![0usize; lists.len()];
        loop {
            let picked = choice.iter().zip(&lists).map(|(&k, l)| l[k]).collect();
            visit(tree, GInvariantSubset::new(picked))?;
            // odometer, last position fastest
            let mut pos = lists.len();
            loop {
                if pos == 0 {
                    return ControlFlow::Continue(());
                }
                pos -= 1;
                choice[pos] += 1;
                if choice[pos] < lists[pos].len() {
                    break;
                }
                choice[pos] = 0;
            }
        }
    })
}

pub fn enumerate_maximal_ggood(grid: &OrbitGrid, cap: u64) -> Result<Vec<GInvariantSubset>> {
    check_cap(grid, cap)?;
    let mut out = Vec::new();
    visit_maximal_ggood(grid, |_, s| {
        out.push(s);
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

pub(crate) fn check_cap(grid: &OrbitGrid, cap: u64) -> Result<()> {
    let count = count_maximal_ggood(grid);
    if count > BigUint::from(cap) {
        return Err(Error::CapExceeded {
            needed: count.to_string(),
            cap,
        });
    }
    Ok(())
}

/// Number of maximal G-good sets: the sum over spanning trees `T` of the
/// orbit grid of the product of `alpha` over `T`, evaluated as a weighted
/// matrix-tree determinant.
pub fn count_maximal_ggood(grid: &OrbitGrid) -> BigUint {
    good_sets::weighted_tree_sum(grid.m1(), grid.n1(), |i, j| BigInt::from(grid.alpha(i, j)))
        .to_biguint()
        .expect("weighted tree sum is nonnegative")
}
