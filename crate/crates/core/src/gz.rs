//! The type-A pattern polytope oracle.
//!
//! For GL(n) and an integral weakly increasing weight, the interlacing
//! pattern polytope realizes the Okounkov body of the line bundle attached
//! to the weight. The concave transform of the slope data is affine on it,
//! so heights become exact integrals: this module is the independent
//! cross-check for the Weyl-averaging pipeline in `height`.
//!
//! Pattern layout: row 0 is the weight itself (n entries); row k has n-k
//! entries and interlaces row k-1:
//!
//! ```text
//! row_{k-1}[i] <= row_k[i] <= row_{k-1}[i+1]
//! ```
//!
//! Entries squeezed by equal bounds are propagated as constants, so the
//! inequality system is full-dimensional over the remaining free variables,
//! listed row-major. The weight map sends a pattern to the successive
//! differences of its row sums, ordered from the single-entry row upward.

use crate::error::{Error, Result, Violation};
use crate::height::{variety_height, FlagContext};
use crate::polytope::{Affine, HPolytope, Triangulation};
use crate::rational::{format_rat, Rat};
use crate::root_datum::{pair, CochVec, Family, RootDatum, SimpleSet, WeightVec};
use num_bigint::BigInt;
use num_traits::{One, Zero};

#[derive(Debug, Clone)]
enum Entry {
    Const(Rat),
    Var(usize),
}

/// The pattern polytope of (GL(n), lambda), with cached vertices and
/// triangulation.
#[derive(Debug, Clone)]
pub struct GzPolytope {
    datum: RootDatum,
    n: usize,
    lambda: Vec<Rat>,
    entries: Vec<Vec<Entry>>,
    free: Vec<(usize, usize)>,
    stabilizer: SimpleSet,
    poly: HPolytope,
    triangulation: Triangulation,
    volume: Rat,
}

fn validate_gz_lambda(coords: &[Rat]) -> Result<()> {
    let not_integral: Vec<Violation> = coords
        .iter()
        .enumerate()
        .filter(|(_, v)| !v.is_integer())
        .map(|(i, v)| Violation {
            index: i + 1,
            value: format_rat(v),
            requirement: "an integer".to_string(),
        })
        .collect();
    if !not_integral.is_empty() {
        return Err(Error::NotIntegral(not_integral));
    }
    let decreasing: Vec<Violation> = (1..coords.len())
        .filter(|&i| coords[i - 1] > coords[i])
        .map(|i| Violation {
            index: i,
            value: format_rat(&(&coords[i - 1] - &coords[i])),
            requirement: "the step to the next coordinate to be nonnegative".to_string(),
        })
        .collect();
    if !decreasing.is_empty() {
        return Err(Error::NotAntidominant(decreasing));
    }
    Ok(())
}

/// Builds the pattern polytope. GL only; lambda must be integral and weakly
/// increasing. The number of free variables is cross-checked against the
/// dimension of G/P for the stabilizer parabolic of lambda.
pub fn build_gz(datum: &RootDatum, lambda: &WeightVec) -> Result<GzPolytope> {
    if datum.family() != Family::Gl {
        return Err(Error::UnsupportedType(format!(
            "the pattern polytope oracle exists only for GL, not {}",
            datum.family().name()
        )));
    }
    let n = datum.coord_dim();
    let coords = lambda.coords();
    if coords.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "weight has {} coordinates, the group needs {n}",
            coords.len()
        )));
    }
    validate_gz_lambda(coords)?;

    let stab_labels: Vec<usize> = (1..n).filter(|&j| coords[j - 1] == coords[j]).collect();
    let stabilizer = SimpleSet::new(n - 1, &stab_labels)?;

    let mut entries: Vec<Vec<Entry>> = Vec::with_capacity(n);
    entries.push(coords.iter().cloned().map(Entry::Const).collect());
    let mut free: Vec<(usize, usize)> = Vec::new();
    for k in 1..n {
        let mut row = Vec::with_capacity(n - k);
        for i in 0..n - k {
            if coords[i] < coords[i + k] {
                row.push(Entry::Var(free.len()));
                free.push((k, i));
            } else {
                row.push(Entry::Const(coords[i].clone()));
            }
        }
        entries.push(row);
    }
    let d = free.len();
    let expected = datum.positive_roots_outside(&stabilizer);
    if d != expected {
        return Err(Error::InternalInconsistency(format!(
            "{d} free pattern variables, but dim G/P = {expected}"
        )));
    }

    let affine_of = |e: &Entry| match e {
        Entry::Const(c) => Affine::constant_fn(d, c.clone()),
        Entry::Var(v) => {
            let mut coeffs = vec![Rat::zero(); d];
            coeffs[*v] = Rat::one();
            Affine::new(coeffs, Rat::zero())
        }
    };
    let mut rows: Vec<(Vec<Rat>, Rat)> = Vec::new();
    let mut push_le = |lhs: &Entry, rhs: &Entry| {
        let diff = affine_of(lhs).sub(&affine_of(rhs));
        rows.push((diff.coeffs, -diff.constant));
    };
    for k in 1..n {
        for i in 0..n - k {
            push_le(&entries[k - 1][i], &entries[k][i]);
            push_le(&entries[k][i], &entries[k - 1][i + 1]);
        }
    }
    let poly = HPolytope::new(d, rows)?;
    let triangulation = poly.triangulation();
    if d > 0 && triangulation.simplices.is_empty() {
        return Err(Error::InternalInconsistency(
            "the pattern polytope must be full-dimensional over its free variables".to_string(),
        ));
    }
    if d == 0 && triangulation.vertices.len() != 1 {
        return Err(Error::InternalInconsistency(
            "a fully pinned pattern must reduce to a single point".to_string(),
        ));
    }
    let volume = triangulation.volume();
    Ok(GzPolytope {
        datum: datum.clone(),
        n,
        lambda: coords.to_vec(),
        entries,
        free,
        stabilizer,
        poly,
        triangulation,
        volume,
    })
}

impl GzPolytope {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn lambda_coords(&self) -> &[Rat] {
        &self.lambda
    }

    /// Number of free variables = dim G/P for the stabilizer of lambda.
    pub fn dim(&self) -> usize {
        self.free.len()
    }

    /// Free pattern positions (row, index), row-major; row k has n-k entries.
    pub fn free_vars(&self) -> &[(usize, usize)] {
        &self.free
    }

    /// Levi set of the parabolic stabilizing lambda.
    pub fn stabilizer(&self) -> &SimpleSet {
        &self.stabilizer
    }

    pub fn polytope(&self) -> &HPolytope {
        &self.poly
    }

    pub fn vertices(&self) -> &[Vec<Rat>] {
        &self.triangulation.vertices
    }

    pub fn triangulation(&self) -> &Triangulation {
        &self.triangulation
    }

    pub fn volume(&self) -> &Rat {
        &self.volume
    }

    fn entry_affine(&self, k: usize, i: usize) -> Affine {
        match &self.entries[k][i] {
            Entry::Const(c) => Affine::constant_fn(self.dim(), c.clone()),
            Entry::Var(v) => {
                let mut coeffs = vec![Rat::zero(); self.dim()];
                coeffs[*v] = Rat::one();
                Affine::new(coeffs, Rat::zero())
            }
        }
    }

    /// Sum of the row with `j` entries, as an affine functional (r_0 = 0).
    fn row_sum(&self, j: usize) -> Affine {
        let mut acc = Affine::zero(self.dim());
        if j == 0 {
            return acc;
        }
        let k = self.n - j;
        for i in 0..j {
            acc = acc.add(&self.entry_affine(k, i));
        }
        acc
    }

    /// The affine weight map, one functional per coordinate:
    /// p_j = r_j - r_{j-1}.
    pub fn weight_affines(&self) -> Vec<Affine> {
        (1..=self.n)
            .map(|j| self.row_sum(j).sub(&self.row_sum(j - 1)))
            .collect()
    }

    /// Image of a pattern point under the weight map. The point must lie in
    /// the polytope.
    pub fn weight_map(&self, x: &[Rat]) -> Result<WeightVec> {
        if !self.poly.contains(x)? {
            return Err(Error::PointOutside(format!(
                "({})",
                x.iter().map(format_rat).collect::<Vec<_>>().join(", ")
            )));
        }
        let coords = self.weight_affines().iter().map(|p| p.eval(x)).collect();
        Ok(WeightVec::from_coords_unchecked(coords))
    }

    /// The concave transform at a point: the slope data paired with the
    /// weight-map image. Affine in the point.
    pub fn concave_transform(&self, c: &CochVec, x: &[Rat]) -> Result<Rat> {
        pair(c, &self.weight_map(x)?)
    }

    /// The concave transform as an affine functional over the free variables.
    pub fn phi(&self, c: &CochVec) -> Result<Affine> {
        if c.coords().len() != self.n {
            return Err(Error::DimensionMismatch(format!(
                "slope vector has {} coordinates, the group needs {}",
                c.coords().len(),
                self.n
            )));
        }
        let mut acc = Affine::zero(self.dim());
        for (cj, pj) in c.coords().iter().zip(self.weight_affines()) {
            acc = acc.add(&pj.scaled(cj));
        }
        Ok(acc)
    }

    pub fn integrate_affine(&self, f: &Affine) -> Result<Rat> {
        self.triangulation.integrate_affine(f)
    }

    /// Integral mean of the concave transform, with no cross-check.
    pub fn integral_mean(&self, c: &CochVec) -> Result<Rat> {
        let integral = self.integrate_affine(&self.phi(c)?)?;
        Ok(integral / &self.volume)
    }

    /// The oracle: the integral mean of the concave transform, compared
    /// exactly against the Weyl-averaging height. Disagreement is an
    /// OracleMismatch, never silently returned.
    pub fn oracle_height(&self, c: &CochVec) -> Result<Rat> {
        let mean = self.integral_mean(c)?;
        let ctx = FlagContext::new(self.datum.clone(), self.stabilizer.clone())?;
        let lambda = WeightVec::new(&self.datum, self.lambda.clone())?;
        let averaged = variety_height(&ctx, c, &lambda)?;
        if mean != averaged {
            return Err(Error::OracleMismatch(format!(
                "integral mean {} but Weyl average {}",
                format_rat(&mean),
                format_rat(&averaged)
            )));
        }
        Ok(mean)
    }

    /// Volume of the superlevel set {x : phi(x) >= t}.
    pub fn superlevel_volume(&self, c: &CochVec, t: &Rat) -> Result<Rat> {
        let phi = self.phi(c)?;
        let coeffs: Vec<Rat> = phi.coeffs.iter().map(|v| -v).collect();
        let bound = &phi.constant - t;
        Ok(self.poly.with_extra_row(coeffs, bound)?.volume())
    }

    /// Number of integer points of the m-fold dilate.
    pub fn count_lattice_points(&self, m: u64) -> BigInt {
        self.poly.count_lattice_points(m)
    }
}

/// The classical dimension formula for GL(n): the dimension of the
/// irreducible representation with highest weight given by m * lambda
/// (lambda integral, weakly increasing), as a product over coordinate pairs:
///
/// ```text
/// prod_{i<j} (m (lambda_j - lambda_i) + (j - i)) / (j - i)
/// ```
pub fn weyl_dim_gl(lambda: &[Rat], m: u64) -> Result<BigInt> {
    validate_gz_lambda(lambda)?;
    let n = lambda.len();
    let mf = Rat::from_integer(BigInt::from(m));
    let mut product = Rat::one();
    for i in 0..n {
        for j in i + 1..n {
            let gap = Rat::from_integer(BigInt::from(j - i));
            product *= (&mf * (&lambda[j] - &lambda[i]) + &gap) / gap;
        }
    }
    if !product.is_integer() {
        return Err(Error::InternalInconsistency(format!(
            "the dimension formula produced the non-integer {}",
            format_rat(&product)
        )));
    }
    Ok(product.to_integer())
}

/// Leading coefficient of the dimension formula as a polynomial in m: the
/// product of (lambda_j - lambda_i)/(j - i) over pairs with distinct values.
/// It must equal the pattern polytope volume; the comparison certifies the
/// measure normalization without any limit process.
pub fn weyl_dim_leading_coeff(lambda: &[Rat]) -> Result<Rat> {
    validate_gz_lambda(lambda)?;
    let n = lambda.len();
    let mut product = Rat::one();
    for i in 0..n {
        for j in i + 1..n {
            if lambda[i] != lambda[j] {
                let gap = Rat::from_integer(BigInt::from(j - i));
                product *= (&lambda[j] - &lambda[i]) / gap;
            }
        }
    }
    Ok(product)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hn::{grassmann_setup, hn_to_slope_vector, HnBlocks};
    use crate::polytope::hull_vertices;
    use crate::rational::{rat, rat_int};
    use crate::root_datum::build_root_datum;
    use crate::weyl;

    fn gl(n: usize) -> RootDatum {
        build_root_datum(Family::Gl, n).unwrap()
    }

    fn weight(datum: &RootDatum, coords: &[i64]) -> WeightVec {
        WeightVec::new(datum, coords.iter().map(|&v| rat_int(v)).collect()).unwrap()
    }

    fn gr24_slope() -> CochVec {
        let datum = gl(4);
        let blocks = HnBlocks::new(vec![
            (1, rat_int(3)),
            (1, rat_int(1)),
            (1, rat_int(0)),
            (1, rat_int(-2)),
        ])
        .unwrap();
        hn_to_slope_vector(&datum, &blocks).unwrap()
    }

    #[test]
    fn gr24_pattern() {
        let datum = gl(4);
        let gz = build_gz(&datum, &weight(&datum, &[0, 0, 1, 1])).unwrap();
        assert_eq!(gz.dim(), 4);
        assert_eq!(
            gz.free_vars().to_vec(),
            vec![(1, 1), (2, 0), (2, 1), (3, 0)]
        );
        assert_eq!(gz.stabilizer().labels(), vec![1, 3]);
        let expect: Vec<Vec<Rat>> = [
            [0, 0, 0, 0],
            [0, 0, 1, 0],
            [0, 0, 1, 1],
            [1, 0, 1, 0],
            [1, 0, 1, 1],
            [1, 1, 1, 1],
        ]
        .iter()
        .map(|v| v.iter().map(|&x| rat_int(x)).collect())
        .collect();
        assert_eq!(gz.vertices(), expect.as_slice());
        assert_eq!(*gz.volume(), rat(1, 12));
    }

    #[test]
    fn segment_and_triangle() {
        let d2 = gl(2);
        let seg = build_gz(&d2, &weight(&d2, &[0, 1])).unwrap();
        assert_eq!(seg.dim(), 1);
        assert_eq!(
            seg.vertices().to_vec(),
            vec![vec![rat_int(0)], vec![rat_int(1)]]
        );
        assert_eq!(*seg.volume(), rat_int(1));
        let p = seg.weight_map(&[rat_int(0)]).unwrap();
        assert_eq!(p.coords(), &[rat_int(0), rat_int(1)]);
        assert_eq!(seg.count_lattice_points(1), BigInt::from(2));

        let d3 = gl(3);
        let tri = build_gz(&d3, &weight(&d3, &[0, 0, 1])).unwrap();
        assert_eq!(tri.dim(), 2);
        assert_eq!(tri.vertices().len(), 3);
        assert_eq!(*tri.volume(), rat(1, 2));
    }

    #[test]
    fn fully_pinned_weight() {
        let datum = gl(3);
        let gz = build_gz(&datum, &weight(&datum, &[2, 2, 2])).unwrap();
        assert_eq!(gz.dim(), 0);
        assert_eq!(*gz.volume(), rat_int(1));
        let p = gz.weight_map(&[]).unwrap();
        assert_eq!(p.coords(), &[rat_int(2), rat_int(2), rat_int(2)]);
        assert_eq!(gz.count_lattice_points(7), BigInt::from(1));
    }

    #[test]
    fn build_rejections() {
        let datum = gl(3);
        let rational = WeightVec::new(&datum, vec![rat_int(0), rat(1, 2), rat_int(1)]).unwrap();
        assert!(matches!(
            build_gz(&datum, &rational),
            Err(Error::NotIntegral(_))
        ));
        let decreasing = weight(&datum, &[1, 0, 0]);
        assert!(matches!(
            build_gz(&datum, &decreasing),
            Err(Error::NotAntidominant(_))
        ));
        let b2 = build_root_datum(Family::B, 2).unwrap();
        let lam = WeightVec::new(&b2, vec![rat_int(0), rat_int(-1)]).unwrap();
        assert!(matches!(
            build_gz(&b2, &lam),
            Err(Error::UnsupportedType(_))
        ));
    }

    #[test]
    fn gr24_transform_and_height() {
        let datum = gl(4);
        let gz = build_gz(&datum, &weight(&datum, &[0, 0, 1, 1])).unwrap();
        let c = gr24_slope();
        let phi = gz.phi(&c).unwrap();
        let mut values: Vec<Rat> = gz.vertices().iter().map(|v| phi.eval(v)).collect();
        values.sort();
        assert_eq!(
            values,
            vec![
                rat_int(-2),
                rat_int(-1),
                rat_int(1),
                rat_int(1),
                rat_int(3),
                rat_int(4)
            ]
        );
        assert_eq!(gz.integrate_affine(&phi).unwrap(), rat(1, 12));
        assert_eq!(gz.oracle_height(&c).unwrap(), rat_int(1));
    }

    #[test]
    fn transform_matches_pointwise_pairing() {
        let datum = gl(4);
        let gz = build_gz(&datum, &weight(&datum, &[0, 0, 1, 1])).unwrap();
        let c = gr24_slope();
        let phi = gz.phi(&c).unwrap();
        let x = vec![rat(1, 2), rat(1, 3), rat(2, 3), rat(1, 2)];
        assert_eq!(gz.concave_transform(&c, &x).unwrap(), phi.eval(&x));
        let outside = vec![rat_int(5), rat_int(0), rat_int(0), rat_int(0)];
        assert!(matches!(
            gz.concave_transform(&c, &outside),
            Err(Error::PointOutside(_))
        ));
    }

    #[test]
    fn weight_map_mean_and_total() {
        let datum = gl(4);
        let gz = build_gz(&datum, &weight(&datum, &[0, 0, 1, 1])).unwrap();
        let vol = gz.volume().clone();
        for p in gz.weight_affines() {
            let mean = gz.integrate_affine(&p).unwrap() / &vol;
            assert_eq!(mean, rat(1, 2));
        }
        // the coordinates of the image always sum to the total weight
        let x = vec![rat(1, 3), rat(1, 4), rat(1, 2), rat(1, 3)];
        let image = gz.weight_map(&x).unwrap();
        let total: Rat = image.coords().iter().cloned().sum();
        assert_eq!(total, rat_int(2));
    }

    #[test]
    fn semistable_transform_is_constant() {
        let datum = gl(4);
        let gz = build_gz(&datum, &weight(&datum, &[0, 0, 1, 1])).unwrap();
        let blocks = HnBlocks::new(vec![(4, rat(3, 2))]).unwrap();
        let c = hn_to_slope_vector(&datum, &blocks).unwrap();
        let phi = gz.phi(&c).unwrap();
        assert!(phi.coeffs.iter().all(Zero::is_zero));
        assert_eq!(phi.constant, rat_int(3));
        assert_eq!(gz.oracle_height(&c).unwrap(), rat_int(3));
    }

    #[test]
    fn superlevel_volumes() {
        let datum = gl(4);
        let gz = build_gz(&datum, &weight(&datum, &[0, 0, 1, 1])).unwrap();
        let c = gr24_slope();
        assert_eq!(gz.superlevel_volume(&c, &rat_int(-10)).unwrap(), rat(1, 12));
        assert_eq!(gz.superlevel_volume(&c, &rat_int(4)).unwrap(), rat_int(0));
        assert_eq!(gz.superlevel_volume(&c, &rat_int(10)).unwrap(), rat_int(0));
        // nonincreasing along a rational grid
        let mut last = rat(1, 12);
        let mut t = rat_int(-3);
        while t <= rat_int(5) {
            let v = gz.superlevel_volume(&c, &t).unwrap();
            assert!(v <= last);
            last = v;
            t += rat(1, 4);
        }
    }

    #[test]
    fn lattice_counts_match_the_dimension_formula() {
        let datum = gl(4);
        let lambda = weight(&datum, &[0, 0, 1, 1]);
        let gz = build_gz(&datum, &lambda).unwrap();
        for m in 1..=3 {
            assert_eq!(
                gz.count_lattice_points(m),
                weyl_dim_gl(lambda.coords(), m).unwrap()
            );
        }
        assert_eq!(weyl_dim_gl(lambda.coords(), 1).unwrap(), BigInt::from(6));
        assert_eq!(weyl_dim_gl(lambda.coords(), 2).unwrap(), BigInt::from(20));
        assert_eq!(weyl_dim_gl(lambda.coords(), 3).unwrap(), BigInt::from(50));
    }

    #[test]
    fn volume_is_the_leading_coefficient() {
        for (n, lam) in [
            (2, vec![0, 1]),
            (3, vec![0, 0, 1]),
            (3, vec![0, 1, 2]),
            (4, vec![0, 0, 1, 1]),
            (4, vec![-1, 0, 2, 2]),
        ] {
            let datum = gl(n);
            let lambda = weight(&datum, &lam);
            let gz = build_gz(&datum, &lambda).unwrap();
            assert_eq!(
                *gz.volume(),
                weyl_dim_leading_coeff(lambda.coords()).unwrap(),
                "lambda {lam:?}"
            );
        }
    }

    #[test]
    fn weight_image_hull_is_the_orbit_hull() {
        for (n, lam) in [(2, vec![0, 1]), (3, vec![0, 1, 2]), (4, vec![0, 0, 1, 1])] {
            let datum = gl(n);
            let lambda = weight(&datum, &lam);
            let gz = build_gz(&datum, &lambda).unwrap();
            let images: Vec<Vec<Rat>> = gz
                .vertices()
                .iter()
                .map(|v| gz.weight_map(v).unwrap().coords().to_vec())
                .collect();
            let group = weyl::enumerate(&datum).unwrap();
            let orbit: Vec<Vec<Rat>> = (0..group.order())
                .map(|w| group.act(w, &lambda).unwrap().coords().to_vec())
                .collect();
            let mut image_hull: Vec<Vec<Rat>> = hull_vertices(&images)
                .into_iter()
                .map(|i| images[i].clone())
                .collect();
            let mut orbit_hull: Vec<Vec<Rat>> = hull_vertices(&orbit)
                .into_iter()
                .map(|i| orbit[i].clone())
                .collect();
            image_hull.sort();
            orbit_hull.sort();
            assert_eq!(image_hull, orbit_hull, "lambda {lam:?}");
        }
    }

    #[test]
    fn vertex_extremes_match_minima() {
        // max and min of the transform over vertices are the first and last
        // Zhang minima of the same data
        use crate::height::{successive_minima, zhang_minima};
        let s = grassmann_setup(4, 2).unwrap();
        let c = gr24_slope();
        let ctx = FlagContext::new(s.datum.clone(), s.delta_p.clone()).unwrap();
        let table = successive_minima(&ctx, &c, &s.lambda).unwrap();
        let e = zhang_minima(&table).unwrap();
        let gz = build_gz(&s.datum, &s.lambda).unwrap();
        let phi = gz.phi(&c).unwrap();
        let values: Vec<Rat> = gz.vertices().iter().map(|v| phi.eval(v)).collect();
        assert_eq!(values.iter().max().unwrap(), &e[0]);
        assert_eq!(values.iter().min().unwrap(), e.last().unwrap());
    }
}
