//! G-invariant couplings with fixed marginals and their extreme points.
//!
//! A measure in the polytope is extreme iff no nonzero invariant `zeta` on
//! its support has all `mu`-weighted row and column sums zero, iff its
//! support is G-good. Extreme points are found by solving the marginal
//! equations on every maximal G-good support and keeping the nonnegative
//! solutions.

use std::collections::BTreeMap;
use std::ops::ControlFlow;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::g_good::{self, GInvariantSubset, OrbitGrid};
use crate::linalg::{binomial, RatMatrix, Solution};

/// Full-support G-invariant probability vectors on `X` and `Y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Marginals {
    mu1: Vec<BigRational>,
    mu2: Vec<BigRational>,
}

fn sum(v: &[BigRational]) -> BigRational {
    v.iter().fold(BigRational::zero(), |acc, x| acc + x)
}

impl Marginals {
    pub fn new(grid: &OrbitGrid, mu1: Vec<BigRational>, mu2: Vec<BigRational>) -> Result<Self> {
        for (v, size) in [(&mu1, grid.x_size()), (&mu2, grid.y_size())] {
            if v.len() != size {
                return Err(Error::LengthMismatch {
                    expected: size,
                    got: v.len(),
                });
            }
        }
        for (which, v) in [("mu1", &mu1), ("mu2", &mu2)] {
            if let Some((index, value)) = v.iter().enumerate().find(|(_, x)| !x.is_positive()) {
                return Err(Error::NonPositiveMarginal {
                    which,
                    index,
                    value: value.to_string(),
                });
            }
        }
        let (s1, s2) = (sum(&mu1), sum(&mu2));
        if s1 != s2 {
            return Err(Error::MarginalMassMismatch(s1.to_string(), s2.to_string()));
        }
        if !s1.is_one() {
            return Err(Error::NotProbability(s1.to_string()));
        }
        if !grid.x_orbits().is_invariant(&mu1)? {
            return Err(Error::NonInvariantMarginal("mu1"));
        }
        if !grid.y_orbits().is_invariant(&mu2)? {
            return Err(Error::NonInvariantMarginal("mu2"));
        }
        Ok(Marginals { mu1, mu2 })
    }

    pub fn uniform(grid: &OrbitGrid) -> Self {
        let u = |k: usize| vec![BigRational::new(1.into(), k.into()); k];
        Marginals {
            mu1: u(grid.x_size()),
            mu2: u(grid.y_size()),
        }
    }

    /// Marginals assigning each X-orbit (resp. Y-orbit) the given relative
    /// weight per point, normalized to mass 1.
    pub fn from_orbit_weights(
        grid: &OrbitGrid,
        x_weights: &[BigRational],
        y_weights: &[BigRational],
    ) -> Result<Self> {
        let spread = |part: &crate::group_action::OrbitPartition, w: &[BigRational]| {
            if w.len() != part.num_orbits() {
                return Err(Error::LengthMismatch {
                    expected: part.num_orbits(),
                    got: w.len(),
                });
            }
            let raw: Vec<BigRational> = (0..part.universe_size())
                .map(|e| w[part.orbit_of(e)].clone())
                .collect();
            let total = sum(&raw);
            if !total.is_positive() {
                return Err(Error::NotProbability(total.to_string()));
            }
            Ok(raw.into_iter().map(|x| x / &total).collect())
        };
        let mu1 = spread(grid.x_orbits(), x_weights)?;
        let mu2 = spread(grid.y_orbits(), y_weights)?;
        Marginals::new(grid, mu1, mu2)
    }

    pub fn mu1(&self) -> &[BigRational] {
        &self.mu1
    }

    pub fn mu2(&self) -> &[BigRational] {
        &self.mu2
    }
}

/// A G-invariant measure on `X x Y`, stored as the common per-point value
/// on each product orbit.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct InvariantMeasure {
    values: Vec<BigRational>,
}

impl InvariantMeasure {
    /// Builds from per-point orbit values; they must be nonnegative and the
    /// total mass must be 1.
    pub fn from_orbit_values(grid: &OrbitGrid, values: Vec<BigRational>) -> Result<Self> {
        if values.len() != grid.m12() {
            return Err(Error::LengthMismatch {
                expected: grid.m12(),
                got: values.len(),
            });
        }
        if values.iter().any(Signed::is_negative) {
            return Err(Error::NotInPolytope);
        }
        let mu = InvariantMeasure { values };
        let mass = mu.total_mass(grid);
        if !mass.is_one() {
            return Err(Error::NotProbability(mass.to_string()));
        }
        Ok(mu)
    }

    pub fn orbit_values(&self) -> &[BigRational] {
        &self.values
    }

    pub fn value(&self, orbit: usize) -> &BigRational {
        &self.values[orbit]
    }

    pub fn cell_value(&self, grid: &OrbitGrid, x: usize, y: usize) -> &BigRational {
        &self.values[grid.orbit_at(x, y)]
    }

    /// `x_size x y_size` table of point masses.
    pub fn cell_table(&self, grid: &OrbitGrid) -> Vec<Vec<BigRational>> {
        (0..grid.x_size())
            .map(|x| {
                (0..grid.y_size())
                    .map(|y| self.cell_value(grid, x, y).clone())
                    .collect()
            })
            .collect()
    }

    pub fn total_mass(&self, grid: &OrbitGrid) -> BigRational {
        self.values
            .iter()
            .enumerate()
            .map(|(o, v)| v * BigRational::from_integer(grid.product_orbits().orbit(o).len().into()))
            .fold(BigRational::zero(), |acc, t| acc + t)
    }

    pub fn support(&self) -> GInvariantSubset {
        GInvariantSubset::new(
            self.values
                .iter()
                .enumerate()
                .filter(|(_, v)| v.is_positive())
                .map(|(o, _)| o)
                .collect(),
        )
    }

    /// `sum_k w_k * mu_k`; weights must be nonnegative and sum to 1.
    pub fn convex_combination(parts: &[(BigRational, &InvariantMeasure)]) -> Result<Self> {
        let Some((_, first)) = parts.first() else {
            return Err(Error::NotProbability("0".into()));
        };
        let total = parts
            .iter()
            .fold(BigRational::zero(), |acc, (w, _)| acc + w);
        if !total.is_one() || parts.iter().any(|(w, _)| w.is_negative()) {
            return Err(Error::NotProbability(total.to_string()));
        }
        let len = first.values.len();
        let mut values = vec![BigRational::zero(); len];
        for (w, mu) in parts {
            if mu.values.len() != len {
                return Err(Error::LengthMismatch {
                    expected: len,
                    got: mu.values.len(),
                });
            }
            for (acc, v) in values.iter_mut().zip(&mu.values) {
                *acc += w * v;
            }
        }
        Ok(InvariantMeasure { values })
    }

    fn row_sums(&self, grid: &OrbitGrid) -> Vec<BigRational> {
        (0..grid.x_size())
            .map(|x| {
                (0..grid.y_size()).fold(BigRational::zero(), |acc, y| acc + self.cell_value(grid, x, y))
            })
            .collect()
    }

    fn col_sums(&self, grid: &OrbitGrid) -> Vec<BigRational> {
        (0..grid.y_size())
            .map(|y| {
                (0..grid.x_size()).fold(BigRational::zero(), |acc, x| acc + self.cell_value(grid, x, y))
            })
            .collect()
    }
}

fn check_dims(grid: &OrbitGrid, marg: &Marginals, mu: &InvariantMeasure) -> Result<()> {
    for (got, expected) in [
        (mu.values.len(), grid.m12()),
        (marg.mu1.len(), grid.x_size()),
        (marg.mu2.len(), grid.y_size()),
    ] {
        if got != expected {
            return Err(Error::LengthMismatch { expected, got });
        }
    }
    Ok(())
}

/// True iff the row sums of `mu` equal `mu1` and the column sums equal `mu2`.
pub fn validate_membership(grid: &OrbitGrid, marg: &Marginals, mu: &InvariantMeasure) -> Result<bool> {
    check_dims(grid, marg, mu)?;
    Ok(mu.row_sums(grid) == marg.mu1 && mu.col_sums(grid) == marg.mu2)
}

fn ensure_member(grid: &OrbitGrid, marg: &Marginals, mu: &InvariantMeasure) -> Result<()> {
    if validate_membership(grid, marg, mu)? {
        Ok(())
    } else {
        Err(Error::NotInPolytope)
    }
}

/// Linear system on `zeta`, one unknown per support orbit, with one
/// equation `sum_y zeta(x,y) mu(x,y) = 0` per `x` and one per `y`.
fn zeta_system(grid: &OrbitGrid, mu: &InvariantMeasure) -> (Vec<usize>, RatMatrix) {
    let support = mu.support().orbits().to_vec();
    let (nx, ny) = (grid.x_size(), grid.y_size());
    let mut a = RatMatrix::zeros(nx + ny, support.len());
    for (k, &o) in support.iter().enumerate() {
        for (x, y) in grid.orbit_points(o) {
            a.add_to(x, k, mu.value(o));
            a.add_to(nx + y, k, mu.value(o));
        }
    }
    (support, a)
}

/// A nonzero invariant `zeta` on the support with vanishing weighted row and
/// column sums, as `(orbit, value)` pairs; `None` iff `mu` is extreme.
pub fn zeta_witness(
    grid: &OrbitGrid,
    marg: &Marginals,
    mu: &InvariantMeasure,
) -> Result<Option<Vec<(usize, BigRational)>>> {
    ensure_member(grid, marg, mu)?;
    let (support, a) = zeta_system(grid, mu);
    Ok(a.nullspace()
        .into_iter()
        .next()
        .map(|z| support.into_iter().zip(z).collect()))
}

/// Extremality by the `zeta` criterion: the weighted row/column system on
/// the support has only the zero solution.
pub fn is_extreme_zeta(grid: &OrbitGrid, marg: &Marginals, mu: &InvariantMeasure) -> Result<bool> {
    ensure_member(grid, marg, mu)?;
    let (support, a) = zeta_system(grid, mu);
    Ok(a.rank() == support.len())
}

/// Extremality by the support criterion: the support is G-good.
pub fn is_extreme_support(grid: &OrbitGrid, mu: &InvariantMeasure) -> Result<bool> {
    if mu.values.len() != grid.m12() {
        return Err(Error::LengthMismatch {
            expected: grid.m12(),
            got: mu.values.len(),
        });
    }
    g_good::is_ggood(grid, &mu.support())
}

/// Solves the marginal equations on a maximal G-good support.
///
/// By invariance it suffices to impose one row-sum equation per X-orbit and
/// one column-sum equation per Y-orbit, at the orbit's least element. The
/// solution is unique; `None` is returned when some value is negative.
/// Zero values are kept, so the returned measure may live on a smaller set.
pub fn solve_on_support(
    grid: &OrbitGrid,
    marg: &Marginals,
    support: &GInvariantSubset,
) -> Result<Option<InvariantMeasure>> {
    if !g_good::is_maximal_ggood(grid, support)? {
        return Err(Error::NotMaximalGGood);
    }
    let (m1, n1) = (grid.m1(), grid.n1());
    let x_reps: Vec<usize> = grid.x_orbits().orbits().iter().map(|o| o[0]).collect();
    let y_reps: Vec<usize> = grid.y_orbits().orbits().iter().map(|o| o[0]).collect();
    let mut a = RatMatrix::zeros(m1 + n1, support.len());
    for (k, &o) in support.orbits().iter().enumerate() {
        for (x, y) in grid.orbit_points(o) {
            if x_reps[grid.x_orbits().orbit_of(x)] == x {
                a.add_to(grid.x_orbits().orbit_of(x), k, &BigRational::one());
            }
            if y_reps[grid.y_orbits().orbit_of(y)] == y {
                a.add_to(m1 + grid.y_orbits().orbit_of(y), k, &BigRational::one());
            }
        }
    }
    let rhs: Vec<BigRational> = x_reps
        .iter()
        .map(|&x| marg.mu1[x].clone())
        .chain(y_reps.iter().map(|&y| marg.mu2[y].clone()))
        .collect();
    let Solution::Unique(sol) = a.solve(&rhs) else {
        return Err(Error::InconsistentSystem);
    };
    if sol.iter().any(Signed::is_negative) {
        return Ok(None);
    }
    let mut values = vec![BigRational::zero(); grid.m12()];
    for (&o, v) in support.orbits().iter().zip(sol) {
        values[o] = v;
    }
    Ok(Some(InvariantMeasure { values }))
}

/// All extreme points, ordered by support orbit ids.
pub fn enumerate_extreme(grid: &OrbitGrid, marg: &Marginals, cap: u64) -> Result<Vec<InvariantMeasure>> {
    g_good::check_cap(grid, cap)?;
    let mut found: BTreeMap<(GInvariantSubset, InvariantMeasure), ()> = BTreeMap::new();
    let mut failure = None;
    g_good::visit_maximal_ggood(grid, |_, s| match solve_on_support(grid, marg, &s) {
        Ok(Some(mu)) => {
            found.insert((mu.support(), mu), ());
            ControlFlow::Continue(())
        }
        Ok(None) => ControlFlow::Continue(()),
        Err(e) => {
            failure = Some(e);
            ControlFlow::Break(())
        }
    })?;
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(found.into_keys().map(|(_, mu)| mu).collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub count: usize,
    /// `C(m12, m1 + n1 - 1)`.
    pub bound: BigUint,
    pub holds: bool,
    pub sharp: bool,
}

pub fn extreme_bound(grid: &OrbitGrid) -> BigUint {
    binomial(grid.m12() as u64, (grid.m1() + grid.n1() - 1) as u64)
        .to_biguint()
        .expect("binomial is nonnegative")
}

pub fn verify_bound(grid: &OrbitGrid, marg: &Marginals, cap: u64) -> Result<BoundReport> {
    let count = enumerate_extreme(grid, marg, cap)?.len();
    let bound = extreme_bound(grid);
    let c = BigUint::from(count);
    Ok(BoundReport {
        count,
        holds: c <= bound,
        sharp: c == bound,
        bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::good_sets::DEFAULT_CAP;
    use crate::group_action::ActionSpec;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn setup(spec: ActionSpec) -> (OrbitGrid, Marginals) {
        let g = OrbitGrid::build(&spec).unwrap();
        let m = Marginals::uniform(&g);
        (g, m)
    }

    fn measure(g: &OrbitGrid, vals: &[(i64, i64)]) -> InvariantMeasure {
        InvariantMeasure::from_orbit_values(g, vals.iter().map(|&(n, d)| r(n, d)).collect()).unwrap()
    }

    #[test]
    fn marginal_validation() {
        let g = OrbitGrid::build(&ActionSpec::trivial(2, 2)).unwrap();
        assert!(matches!(
            Marginals::new(&g, vec![r(1, 2), r(1, 2)], vec![r(1, 4), r(1, 4)]),
            Err(Error::MarginalMassMismatch(..))
        ));
        assert!(matches!(
            Marginals::new(&g, vec![r(1, 1), r(0, 1)], vec![r(1, 2), r(1, 2)]),
            Err(Error::NonPositiveMarginal { which: "mu1", index: 1, .. })
        ));
        assert!(matches!(
            Marginals::new(&g, vec![r(1, 1), r(1, 1)], vec![r(1, 1), r(1, 1)]),
            Err(Error::NotProbability(_))
        ));
        assert!(matches!(
            Marginals::new(&g, vec![r(1, 1)], vec![r(1, 2), r(1, 2)]),
            Err(Error::LengthMismatch { .. })
        ));
        let s = OrbitGrid::build(&ActionSpec::swap_2x2()).unwrap();
        assert!(matches!(
            Marginals::new(&s, vec![r(1, 3), r(2, 3)], vec![r(1, 2), r(1, 2)]),
            Err(Error::NonInvariantMarginal("mu1"))
        ));
    }

    #[test]
    fn membership_examples() {
        let (g, m) = setup(ActionSpec::trivial(2, 2));
        assert!(validate_membership(&g, &m, &measure(&g, &[(1, 2), (0, 1), (0, 1), (1, 2)])).unwrap());
        assert!(validate_membership(&g, &m, &measure(&g, &[(1, 4); 4])).unwrap());
        assert!(!validate_membership(&g, &m, &measure(&g, &[(1, 2), (1, 2), (0, 1), (0, 1)])).unwrap());
    }

    #[test]
    fn extremality_examples() {
        let (g, m) = setup(ActionSpec::trivial(2, 2));
        let diag = measure(&g, &[(1, 2), (0, 1), (0, 1), (1, 2)]);
        assert!(is_extreme_zeta(&g, &m, &diag).unwrap());
        assert!(is_extreme_support(&g, &diag).unwrap());

        let product = measure(&g, &[(1, 4); 4]);
        assert!(!is_extreme_zeta(&g, &m, &product).unwrap());
        assert!(!is_extreme_support(&g, &product).unwrap());
        // zeta = +1 on the diagonal, -1 off it
        let witness = zeta_witness(&g, &m, &product).unwrap().unwrap();
        let z: Vec<BigRational> = witness.iter().map(|(_, v)| v.clone()).collect();
        assert_eq!(z[0], z[3]);
        assert_eq!(z[1], z[2]);
        assert_eq!(z[0], -z[1].clone());
        assert!(!z[0].is_zero());

        let (g3, m3) = setup(ActionSpec::symmetric(3));
        let mut vals = vec![r(0, 1); 3];
        vals[1] = r(1, 6);
        let one_orbit = InvariantMeasure::from_orbit_values(&g3, vals).unwrap();
        assert!(is_extreme_zeta(&g3, &m3, &one_orbit).unwrap());
        assert!(is_extreme_support(&g3, &one_orbit).unwrap());

        let off = measure(&g, &[(1, 2), (1, 2), (0, 1), (0, 1)]);
        assert!(matches!(is_extreme_zeta(&g, &m, &off), Err(Error::NotInPolytope)));
    }

    #[test]
    fn solve_examples() {
        let (g, m) = setup(ActionSpec::trivial(2, 2));
        let mu = solve_on_support(&g, &m, &GInvariantSubset::new(vec![0, 1, 2]))
            .unwrap()
            .unwrap();
        assert_eq!(mu.orbit_values(), &[r(0, 1), r(1, 2), r(1, 2), r(0, 1)]);
        assert_eq!(mu.support(), GInvariantSubset::new(vec![1, 2]));
        assert!(matches!(
            solve_on_support(&g, &m, &GInvariantSubset::new(vec![0, 1])),
            Err(Error::NotMaximalGGood)
        ));

        let (s, ms) = setup(ActionSpec::swap_2x2());
        let mu = solve_on_support(&s, &ms, &GInvariantSubset::new(vec![0])).unwrap().unwrap();
        assert_eq!(mu.cell_table(&s), vec![vec![r(1, 2), r(0, 1)], vec![r(0, 1), r(1, 2)]]);

        let (g3, m3) = setup(ActionSpec::symmetric(3));
        let mu = solve_on_support(&g3, &m3, &GInvariantSubset::new(vec![2])).unwrap().unwrap();
        assert_eq!(mu.value(2), &r(1, 6));
        assert!(validate_membership(&g3, &m3, &mu).unwrap());
    }

    #[test]
    fn negative_solutions_are_dropped() {
        // skewed marginals make some tree supports infeasible
        let g = OrbitGrid::build(&ActionSpec::trivial(2, 2)).unwrap();
        let m = Marginals::new(&g, vec![r(1, 4), r(3, 4)], vec![r(1, 4), r(3, 4)]).unwrap();
        let got = solve_on_support(&g, &m, &GInvariantSubset::new(vec![0, 1, 2])).unwrap();
        assert!(got.is_none());
    }

    #[test]
    fn enumeration_and_bound() {
        let (g, m) = setup(ActionSpec::trivial(2, 2));
        let ext = enumerate_extreme(&g, &m, DEFAULT_CAP).unwrap();
        assert_eq!(ext.len(), 2);
        let rep = verify_bound(&g, &m, DEFAULT_CAP).unwrap();
        assert_eq!((rep.count, rep.bound.clone(), rep.holds), (2, BigUint::from(4u32), true));

        let (s, ms) = setup(ActionSpec::swap_2x2());
        let rep = verify_bound(&s, &ms, DEFAULT_CAP).unwrap();
        assert!(rep.sharp && rep.count == 2);

        let (g3, m3) = setup(ActionSpec::symmetric(3));
        let rep = verify_bound(&g3, &m3, DEFAULT_CAP).unwrap();
        assert_eq!((rep.count, rep.bound, rep.sharp), (3, BigUint::from(3u32), true));

        let (t3, mt3) = setup(ActionSpec::trivial(3, 3));
        let rep = verify_bound(&t3, &mt3, DEFAULT_CAP).unwrap();
        assert_eq!((rep.count, rep.bound, rep.holds), (6, BigUint::from(126u32), true));
    }

    #[test]
    fn midpoints_are_not_extreme() {
        let (g, m) = setup(ActionSpec::trivial(3, 3));
        let ext = enumerate_extreme(&g, &m, DEFAULT_CAP).unwrap();
        let half = r(1, 2);
        for a in &ext {
            for b in &ext {
                if a == b {
                    continue;
                }
                let mid = InvariantMeasure::convex_combination(&[(half.clone(), a), (half.clone(), b)]).unwrap();
                assert!(!is_extreme_zeta(&g, &m, &mid).unwrap());
                assert!(!is_extreme_support(&g, &mid).unwrap());
            }
        }
    }
}
