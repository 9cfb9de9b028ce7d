//! Independent cross-checks. Nothing here is used by the production paths;
//! these are the slow, definitional computations the fast paths are tested
//! against.

use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::extreme_measures::{InvariantMeasure, Marginals};
use crate::g_good::{GInvariantSubset, OrbitGrid};
use crate::good_sets::GridSubset;
use crate::linalg::{RatMatrix, Solution};

/// Largest number of product orbits [`bruteforce_vertices`] accepts.
pub const BRUTEFORCE_MAX_ORBITS: usize = 12;

/// Rank of the `|S| x (m + n)` system `u_i + v_j = f(i, j)`. The set is
/// good iff this equals `|S|`.
pub fn incidence_rank(s: &GridSubset) -> usize {
    let (m, n) = (s.rows(), s.cols());
    let mut a = RatMatrix::zeros(s.len(), m + n);
    for (r, &(i, j)) in s.cells().iter().enumerate() {
        a.set(r, i, BigRational::one());
        a.set(r, m + j, BigRational::one());
    }
    a.rank()
}

/// Whether every invariant function on the points of `s` splits as
/// `u(x) + v(y)` with invariant `u`, `v`.
///
/// One equation per point of `s`, with unknowns one per X-orbit and
/// Y-orbit. Rows of a product orbit coincide, so the invariant right-hand
/// sides are all reachable iff the rank equals the number of orbits.
pub fn is_ggood_by_rank(grid: &OrbitGrid, s: &GInvariantSubset) -> Result<bool> {
    s.validate(grid)?;
    let (m1, n1) = (grid.m1(), grid.n1());
    let rows: Vec<(usize, usize)> = s
        .orbits()
        .iter()
        .flat_map(|&o| grid.orbit_points(o))
        .collect();
    let mut a = RatMatrix::zeros(rows.len(), m1 + n1);
    for (r, &(x, y)) in rows.iter().enumerate() {
        a.set(r, grid.x_orbits().orbit_of(x), BigRational::one());
        a.set(r, m1 + grid.y_orbits().orbit_of(y), BigRational::one());
    }
    Ok(a.rank() == s.len())
}

/// Vertices of the coupling polytope by exhaustive support search.
///
/// Every nonempty set of product orbits is tried as a support: the full
/// point-level marginal system (one equation per `x` and per `y`) is solved
/// on it, and a unique nonnegative solution is a vertex. Results are
/// deduplicated and sorted by support.
pub fn bruteforce_vertices(grid: &OrbitGrid, marg: &Marginals) -> Result<Vec<InvariantMeasure>> {
    let k = grid.m12();
    if k > BRUTEFORCE_MAX_ORBITS {
        return Err(Error::OracleTooLarge(k));
    }
    let (nx, ny) = (grid.x_size(), grid.y_size());
    let rhs: Vec<BigRational> = marg.mu1().iter().chain(marg.mu2()).cloned().collect();
    let mut found = Vec::new();
    for mask in 1u32..1 << k {
        let orbits: Vec<usize> = (0..k).filter(|o| mask >> o & 1 == 1).collect();
        let mut a = RatMatrix::zeros(nx + ny, orbits.len());
        for (c, &o) in orbits.iter().enumerate() {
            for (x, y) in grid.orbit_points(o) {
                a.add_to(x, c, &BigRational::one());
                a.add_to(nx + y, c, &BigRational::one());
            }
        }
        let Solution::Unique(sol) = a.solve(&rhs) else {
            continue;
        };
        if sol.iter().any(Signed::is_negative) {
            continue;
        }
        let mut values = vec![BigRational::default(); k];
        for (&o, v) in orbits.iter().zip(sol) {
            values[o] = v;
        }
        let mu = InvariantMeasure::from_orbit_values(grid, values)?;
        found.push((mu.support(), mu));
    }
    found.sort();
    found.dedup();
    Ok(found.into_iter().map(|(_, mu)| mu).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extreme_measures::enumerate_extreme;
    use crate::good_sets::DEFAULT_CAP;
    use crate::group_action::ActionSpec;

    #[test]
    fn rank_examples() {
        let s = GridSubset::new(2, 2, vec![(0, 0), (0, 1), (1, 0)]).unwrap();
        assert_eq!(incidence_rank(&s), 3);
        assert_eq!(incidence_rank(&GridSubset::full(2, 2).unwrap()), 3);
    }

    #[test]
    fn ggood_rank_examples() {
        let g = OrbitGrid::build(&ActionSpec::swap_2x2()).unwrap();
        assert!(!is_ggood_by_rank(&g, &GInvariantSubset::new(vec![0, 1])).unwrap());
        assert!(is_ggood_by_rank(&g, &GInvariantSubset::new(vec![0])).unwrap());
    }

    #[test]
    fn bruteforce_small() {
        let g = OrbitGrid::build(&ActionSpec::trivial(2, 3)).unwrap();
        let half = BigRational::new(1.into(), 2.into());
        let third = BigRational::new(1.into(), 3.into());
        let m = Marginals::new(&g, vec![half.clone(), half], vec![third.clone(), third.clone(), third]).unwrap();
        let brute = bruteforce_vertices(&g, &m).unwrap();
        assert_eq!(brute, enumerate_extreme(&g, &m, DEFAULT_CAP).unwrap());
        assert!(!brute.is_empty());

        let big = OrbitGrid::build(&ActionSpec::trivial(4, 4)).unwrap();
        assert!(matches!(
            bruteforce_vertices(&big, &Marginals::uniform(&big)),
            Err(Error::OracleTooLarge(16))
        ));
    }
}
