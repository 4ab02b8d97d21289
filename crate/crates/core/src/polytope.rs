//! Exact rational polytopes in inequality form: vertex enumeration, pulling
//! triangulations, volumes, integrals of affine functionals, and lattice
//! point counts.
//!
//! The algorithms enumerate subsets of the defining inequalities, so they are
//! exponential in the dimension. They are sized for small systems (a few
//! dozen inequalities, dimension below ten), which covers every pattern
//! polytope this crate builds.

use crate::error::{Error, Result};
use crate::linalg::{affine_rank, det, feasible_nonneg_solution, solve_square};
use crate::rational::Rat;
use crate::root_datum::dot;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeSet;

/// An affine functional `x -> coeffs . x + constant`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Affine {
    pub coeffs: Vec<Rat>,
    pub constant: Rat,
}

impl Affine {
    pub fn new(coeffs: Vec<Rat>, constant: Rat) -> Affine {
        Affine { coeffs, constant }
    }

    pub fn zero(dim: usize) -> Affine {
        Affine {
            coeffs: vec![Rat::zero(); dim],
            constant: Rat::zero(),
        }
    }

    pub fn constant_fn(dim: usize, value: Rat) -> Affine {
        Affine {
            coeffs: vec![Rat::zero(); dim],
            constant: value,
        }
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn eval(&self, x: &[Rat]) -> Rat {
        debug_assert_eq!(self.coeffs.len(), x.len());
        dot(&self.coeffs, x) + &self.constant
    }

    pub fn add(&self, other: &Affine) -> Affine {
        debug_assert_eq!(self.coeffs.len(), other.coeffs.len());
        Affine {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
            constant: &self.constant + &other.constant,
        }
    }

    pub fn sub(&self, other: &Affine) -> Affine {
        debug_assert_eq!(self.coeffs.len(), other.coeffs.len());
        Affine {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
            constant: &self.constant - &other.constant,
        }
    }

    pub fn scaled(&self, f: &Rat) -> Affine {
        Affine {
            coeffs: self.coeffs.iter().map(|c| c * f).collect(),
            constant: &self.constant * f,
        }
    }
}

/// A polytope `{x : a_r . x <= b_r for all rows r}` with exact rational data.
/// Rows are canonicalized at construction: vacuous rows (zero coefficients,
/// nonnegative bound) are dropped, the rest sorted and deduplicated. A zero
/// row with a negative bound is kept: it marks the system infeasible.
#[derive(Debug, Clone)]
pub struct HPolytope {
    dim: usize,
    rows: Vec<(Vec<Rat>, Rat)>,
}

impl HPolytope {
    pub fn new(dim: usize, raw: Vec<(Vec<Rat>, Rat)>) -> Result<HPolytope> {
        let mut rows = Vec::new();
        for (coeffs, bound) in raw {
            if coeffs.len() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "inequality over {} variables in a {dim}-dimensional system",
                    coeffs.len()
                )));
            }
            if coeffs.iter().all(Zero::is_zero) && bound >= Rat::zero() {
                continue;
            }
            rows.push((coeffs, bound));
        }
        rows.sort();
        rows.dedup();
        Ok(HPolytope { dim, rows })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> &[(Vec<Rat>, Rat)] {
        &self.rows
    }

    pub fn with_extra_row(&self, coeffs: Vec<Rat>, bound: Rat) -> Result<HPolytope> {
        let mut rows = self.rows.clone();
        rows.push((coeffs, bound));
        HPolytope::new(self.dim, rows)
    }

    pub fn contains(&self, x: &[Rat]) -> Result<bool> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "point has {} coordinates, polytope lives in dimension {}",
                x.len(),
                self.dim
            )));
        }
        Ok(self.rows.iter().all(|(a, b)| dot(a, x) <= *b))
    }

    /// All vertices, deduplicated, in lexicographic order. A vertex is the
    /// unique solution of `dim` linearly independent rows turned into
    /// equalities that satisfies every remaining row.
    pub fn vertices(&self) -> Vec<Vec<Rat>> {
        if self.dim == 0 {
            // after canonicalization only infeasible rows survive here
            return if self.rows.is_empty() {
                vec![vec![]]
            } else {
                vec![]
            };
        }
        let n = self.rows.len();
        if n < self.dim {
            return vec![];
        }
        let mut out: Vec<Vec<Rat>> = Vec::new();
        let mut subset: Vec<usize> = (0..self.dim).collect();
        loop {
            let a: Vec<Vec<Rat>> = subset.iter().map(|&i| self.rows[i].0.clone()).collect();
            let b: Vec<Rat> = subset.iter().map(|&i| self.rows[i].1.clone()).collect();
            if let Some(x) = solve_square(&a, &b) {
                if self.rows.iter().all(|(c, bd)| dot(c, &x) <= *bd) {
                    out.push(x);
                }
            }
            if !next_combination(&mut subset, n) {
                break;
            }
        }
        out.sort();
        out.dedup();
        out
    }

    /// Pulling triangulation anchored at lexicographically smallest vertices.
    /// When the feasible set is empty or not full-dimensional the simplex
    /// list is empty (its volume is zero in the ambient dimension).
    pub fn triangulation(&self) -> Triangulation {
        let vertices = self.vertices();
        if self.dim == 0 {
            let simplices = if vertices.is_empty() {
                vec![]
            } else {
                vec![vec![0]]
            };
            return Triangulation {
                dim: 0,
                vertices,
                simplices,
            };
        }
        if vertices.is_empty() || affine_rank(&vertices) < self.dim {
            return Triangulation {
                dim: self.dim,
                vertices,
                simplices: vec![],
            };
        }
        let all: Vec<usize> = (0..vertices.len()).collect();
        let simplices = star(&vertices, &all, &self.rows, self.dim);
        Triangulation {
            dim: self.dim,
            vertices,
            simplices,
        }
    }

    pub fn volume(&self) -> Rat {
        self.triangulation().volume()
    }

    pub fn integrate_affine(&self, f: &Affine) -> Result<Rat> {
        self.triangulation().integrate_affine(f)
    }

    /// Number of integer points of the dilate `m * self`, by scanning the
    /// bounding box of the scaled vertex set. `m = 0` collapses a nonempty
    /// polytope to the origin.
    pub fn count_lattice_points(&self, m: u64) -> BigInt {
        if self.dim == 0 {
            return if self.rows.is_empty() {
                BigInt::one()
            } else {
                BigInt::zero()
            };
        }
        let verts = self.vertices();
        if verts.is_empty() {
            return BigInt::zero();
        }
        let mf = Rat::from_integer(BigInt::from(m));
        let lo: Vec<BigInt> = (0..self.dim)
            .map(|j| {
                let v = verts.iter().map(|p| &p[j] * &mf).min().unwrap();
                v.ceil().to_integer()
            })
            .collect();
        let hi: Vec<BigInt> = (0..self.dim)
            .map(|j| {
                let v = verts.iter().map(|p| &p[j] * &mf).max().unwrap();
                v.floor().to_integer()
            })
            .collect();
        if (0..self.dim).any(|j| lo[j] > hi[j]) {
            return BigInt::zero();
        }
        let scaled: Vec<(Vec<Rat>, Rat)> = self
            .rows
            .iter()
            .map(|(a, b)| (a.clone(), b * &mf))
            .collect();
        let mut count = BigInt::zero();
        let mut x = lo.clone();
        'scan: loop {
            let point: Vec<Rat> = x.iter().map(|v| Rat::from_integer(v.clone())).collect();
            if scaled.iter().all(|(a, b)| dot(a, &point) <= *b) {
                count += 1;
            }
            let mut j = 0;
            loop {
                if j == self.dim {
                    break 'scan;
                }
                if x[j] < hi[j] {
                    x[j] += 1;
                    for (prev, low) in x.iter_mut().zip(&lo).take(j) {
                        *prev = low.clone();
                    }
                    break;
                }
                j += 1;
            }
        }
        count
    }
}

/// A triangulation of a polytope: vertex coordinates plus simplices given as
/// index tuples of size `dim + 1`.
#[derive(Debug, Clone)]
pub struct Triangulation {
    pub dim: usize,
    pub vertices: Vec<Vec<Rat>>,
    pub simplices: Vec<Vec<usize>>,
}

impl Triangulation {
    pub fn volume(&self) -> Rat {
        self.simplices
            .iter()
            .map(|s| simplex_volume(&self.vertices, s, self.dim))
            .sum()
    }

    /// Exact integral of an affine functional: over each simplex the integral
    /// is the simplex volume times the mean of the vertex values.
    pub fn integrate_affine(&self, f: &Affine) -> Result<Rat> {
        if f.dim() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "functional over {} variables, polytope dimension {}",
                f.dim(),
                self.dim
            )));
        }
        let mut total = Rat::zero();
        for s in &self.simplices {
            let vol = simplex_volume(&self.vertices, s, self.dim);
            let sum: Rat = s.iter().map(|&i| f.eval(&self.vertices[i])).sum();
            total += vol * sum / Rat::from_integer(BigInt::from(s.len()));
        }
        Ok(total)
    }
}

fn simplex_volume(verts: &[Vec<Rat>], s: &[usize], dim: usize) -> Rat {
    if dim == 0 {
        return Rat::one();
    }
    let base = &verts[s[0]];
    let m: Vec<Vec<Rat>> = s[1..]
        .iter()
        .map(|&i| verts[i].iter().zip(base).map(|(a, b)| a - b).collect())
        .collect();
    det(&m).abs() / factorial(dim)
}

fn factorial(n: usize) -> Rat {
    let mut f = BigInt::one();
    for k in 2..=n {
        f *= BigInt::from(k);
    }
    Rat::from_integer(f)
}

/// Recursive pulling triangulation of the face spanned by `subset` (affine
/// dimension `k`): cone from the lex-smallest vertex over recursively
/// triangulated facets that avoid it. Facets are tight sets of rows.
fn star(
    points: &[Vec<Rat>],
    subset: &[usize],
    rows: &[(Vec<Rat>, Rat)],
    k: usize,
) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![subset[0]]];
    }
    if subset.len() == k + 1 {
        return vec![subset.to_vec()];
    }
    let anchor = subset
        .iter()
        .copied()
        .min_by(|&a, &b| points[a].cmp(&points[b]))
        .expect("faces always carry at least one vertex");
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut out = Vec::new();
    for (coeffs, bound) in rows {
        let mut sub: Vec<usize> = subset
            .iter()
            .copied()
            .filter(|&i| dot(coeffs, &points[i]) == *bound)
            .collect();
        sub.sort_unstable();
        if sub.len() < k || sub.contains(&anchor) {
            continue;
        }
        let pts: Vec<Vec<Rat>> = sub.iter().map(|&i| points[i].clone()).collect();
        if affine_rank(&pts) != k - 1 {
            continue;
        }
        if !seen.insert(sub.clone()) {
            continue;
        }
        for mut simplex in star(points, &sub, rows, k - 1) {
            simplex.insert(0, anchor);
            out.push(simplex);
        }
    }
    out
}

fn next_combination(subset: &mut [usize], n: usize) -> bool {
    let k = subset.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if subset[i] < n - k + i {
            subset[i] += 1;
            for j in i + 1..k {
                subset[j] = subset[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Whether `q` lies in the convex hull of `points` (exact LP feasibility).
pub fn point_in_hull(q: &[Rat], points: &[Vec<Rat>]) -> bool {
    if points.is_empty() {
        return false;
    }
    let n = points.len();
    let mut a: Vec<Vec<Rat>> = Vec::with_capacity(q.len() + 1);
    for j in 0..q.len() {
        a.push(points.iter().map(|p| p[j].clone()).collect());
    }
    a.push(vec![Rat::one(); n]);
    let mut b: Vec<Rat> = q.to_vec();
    b.push(Rat::one());
    feasible_nonneg_solution(&a, &b)
}

/// Indices of the points that are vertices of the convex hull, ascending.
/// Duplicate points count once, at their first occurrence. Exact and
/// intended for small point sets.
pub fn hull_vertices(points: &[Vec<Rat>]) -> Vec<usize> {
    let mut firsts: Vec<usize> = Vec::new();
    for (i, p) in points.iter().enumerate() {
        if !firsts.iter().any(|&f| points[f] == *p) {
            firsts.push(i);
        }
    }
    firsts
        .iter()
        .copied()
        .filter(|&i| {
            let others: Vec<Vec<Rat>> = firsts
                .iter()
                .filter(|&&f| f != i)
                .map(|&f| points[f].clone())
                .collect();
            !point_in_hull(&points[i], &others)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg;
    use crate::rational::{rat, rat_int};

    fn unit_square() -> HPolytope {
        HPolytope::new(
            2,
            vec![
                (vec![rat_int(-1), rat_int(0)], rat_int(0)),
                (vec![rat_int(1), rat_int(0)], rat_int(1)),
                (vec![rat_int(0), rat_int(-1)], rat_int(0)),
                (vec![rat_int(0), rat_int(1)], rat_int(1)),
            ],
        )
        .unwrap()
    }

    fn triangle() -> HPolytope {
        HPolytope::new(
            2,
            vec![
                (vec![rat_int(-1), rat_int(0)], rat_int(0)),
                (vec![rat_int(0), rat_int(-1)], rat_int(0)),
                (vec![rat_int(1), rat_int(1)], rat_int(1)),
            ],
        )
        .unwrap()
    }

    #[test]
    fn square_geometry() {
        let p = unit_square();
        let verts = p.vertices();
        assert_eq!(verts.len(), 4);
        assert_eq!(verts[0], vec![rat_int(0), rat_int(0)]);
        assert_eq!(verts[3], vec![rat_int(1), rat_int(1)]);
        assert_eq!(p.volume(), rat_int(1));
        let f = Affine::new(vec![rat_int(1), rat_int(1)], rat_int(0));
        assert_eq!(p.integrate_affine(&f).unwrap(), rat_int(1));
        assert_eq!(p.count_lattice_points(1), BigInt::from(4));
        assert_eq!(p.count_lattice_points(2), BigInt::from(9));
    }

    #[test]
    fn triangle_geometry() {
        let p = triangle();
        assert_eq!(p.vertices().len(), 3);
        assert_eq!(p.volume(), rat(1, 2));
        assert_eq!(p.count_lattice_points(1), BigInt::from(3));
        assert_eq!(p.count_lattice_points(2), BigInt::from(6));
        // integral of x over the triangle: 1/6
        let f = Affine::new(vec![rat_int(1), rat_int(0)], rat_int(0));
        assert_eq!(p.integrate_affine(&f).unwrap(), rat(1, 6));
    }

    #[test]
    fn halfspace_cut() {
        // square cut down to x + y <= 1 loses half its volume
        let p = unit_square()
            .with_extra_row(vec![rat_int(1), rat_int(1)], rat_int(1))
            .unwrap();
        assert_eq!(p.volume(), rat(1, 2));
        // cutting at the far corner leaves a measure-zero set
        let q = unit_square()
            .with_extra_row(vec![rat_int(-1), rat_int(-1)], rat_int(-2))
            .unwrap();
        assert_eq!(q.vertices(), vec![vec![rat_int(1), rat_int(1)]]);
        assert_eq!(q.volume(), rat_int(0));
    }

    #[test]
    fn empty_and_degenerate() {
        let empty = HPolytope::new(
            1,
            vec![
                (vec![rat_int(1)], rat_int(-1)),
                (vec![rat_int(-1)], rat_int(0)),
            ],
        )
        .unwrap();
        assert!(empty.vertices().is_empty());
        assert_eq!(empty.volume(), rat_int(0));
        assert_eq!(empty.count_lattice_points(3), BigInt::from(0));

        let point = HPolytope::new(
            1,
            vec![
                (vec![rat_int(1)], rat_int(0)),
                (vec![rat_int(-1)], rat_int(0)),
            ],
        )
        .unwrap();
        assert_eq!(point.vertices(), vec![vec![rat_int(0)]]);
        assert_eq!(point.volume(), rat_int(0));
        assert_eq!(point.count_lattice_points(5), BigInt::from(1));
    }

    #[test]
    fn zero_dimensional_conventions() {
        let pt = HPolytope::new(0, vec![(vec![], rat_int(3))]).unwrap();
        assert_eq!(pt.vertices(), vec![Vec::<Rat>::new()]);
        assert_eq!(pt.volume(), rat_int(1));
        let f = Affine::constant_fn(0, rat(7, 2));
        assert_eq!(pt.integrate_affine(&f).unwrap(), rat(7, 2));
        assert_eq!(pt.count_lattice_points(4), BigInt::from(1));

        let none = HPolytope::new(0, vec![(vec![], rat_int(-1))]).unwrap();
        assert!(none.vertices().is_empty());
        assert_eq!(none.volume(), rat_int(0));
        assert_eq!(none.count_lattice_points(4), BigInt::from(0));
    }

    #[test]
    fn triangulation_is_a_partition() {
        // every vertex appears; simplex volumes are positive; the centroid
        // of each simplex lies in exactly one simplex
        for p in [unit_square(), triangle()] {
            let tri = p.triangulation();
            let used: std::collections::BTreeSet<usize> =
                tri.simplices.iter().flatten().copied().collect();
            assert_eq!(used.len(), tri.vertices.len());
            for s in &tri.simplices {
                assert!(simplex_volume(&tri.vertices, s, tri.dim) > rat_int(0));
                let centroid = centroid(&tri.vertices, s);
                assert!(p.contains(&centroid).unwrap());
                let covering = tri
                    .simplices
                    .iter()
                    .filter(|other| in_simplex(&tri.vertices, other, &centroid))
                    .count();
                assert_eq!(covering, 1);
            }
        }
    }

    fn centroid(verts: &[Vec<Rat>], s: &[usize]) -> Vec<Rat> {
        let dim = verts[s[0]].len();
        let k = Rat::from_integer(BigInt::from(s.len()));
        (0..dim)
            .map(|j| s.iter().map(|&i| verts[i][j].clone()).sum::<Rat>() / &k)
            .collect()
    }

    fn in_simplex(verts: &[Vec<Rat>], s: &[usize], q: &[Rat]) -> bool {
        // barycentric coordinates from the affine system
        let dim = q.len();
        let mut a: Vec<Vec<Rat>> = (0..dim)
            .map(|j| s.iter().map(|&i| verts[i][j].clone()).collect())
            .collect();
        a.push(vec![rat_int(1); s.len()]);
        let mut b: Vec<Rat> = q.to_vec();
        b.push(rat_int(1));
        match linalg::solve_square(&a, &b) {
            Some(t) => t.iter().all(|v| *v >= rat_int(0)),
            None => false,
        }
    }

    #[test]
    fn hull_of_square_with_interior_point() {
        let pts = vec![
            vec![rat_int(0), rat_int(0)],
            vec![rat(1, 2), rat(1, 2)],
            vec![rat_int(0), rat_int(1)],
            vec![rat_int(1), rat_int(0)],
            vec![rat_int(1), rat_int(1)],
            vec![rat_int(1), rat_int(1)],
        ];
        assert_eq!(hull_vertices(&pts), vec![0, 2, 3, 4]);
        assert!(point_in_hull(&[rat(1, 3), rat(1, 3)], &pts));
        assert!(!point_in_hull(&[rat_int(2), rat_int(0)], &pts));
    }
}
