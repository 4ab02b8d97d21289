//! Root data for the supported reductive families, with exact pairings.
//!
//! Two coordinate conventions coexist and are kept apart by the family tag:
//!
//! - `GL(n)`: weights live in the standard basis, coordinates
//!   `(lambda_1, ..., lambda_n)`; slope vectors live in the dual standard
//!   basis. The simple roots are `alpha_i = e_i - e_{i+1}` and
//!   `<alpha_i_vee, lambda> = lambda_i - lambda_{i+1}`.
//! - simple families (`A, B, C, D, E6, E7, F4, G2`): weight coordinates are
//!   coefficients in the fundamental-weight basis and slope coordinates are
//!   coefficients in the simple-coroot basis, so the pairing is the plain dot
//!   product and `<alpha_i_vee, lambda>` reads off coordinate `i`.
//!
//! Cartan convention, pinned once for the whole crate:
//! `cartan[i][j] = <alpha_i_vee, alpha_j>`, Bourbaki numbering. In `B_n` the
//! short simple root is `alpha_n` (so `alpha_1` is long), in `C_n` the long
//! simple root is `alpha_n`, in `G_2` `alpha_1` is short, and in `F_4` the
//! long simple roots are `alpha_1, alpha_2`.

use crate::error::{Error, Result, Violation};
use crate::linalg;
use crate::matrix::IntMat;
use crate::rational::{format_rat, Rat};
use num_traits::Zero;

pub const DEFAULT_MAX_WEYL_ORDER: u128 = 1_000_000;

/// Environment variable that overrides the default Weyl order cap.
pub const MAX_WEYL_ORDER_ENV: &str = "FLAGHEIGHT_MAX_WEYL_ORDER";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Gl,
    A,
    B,
    C,
    D,
    E6,
    E7,
    E8,
    F4,
    G2,
}

impl Family {
    pub fn parse(name: &str) -> Option<Family> {
        match name.trim().to_ascii_uppercase().as_str() {
            "GL" => Some(Family::Gl),
            "A" => Some(Family::A),
            "B" => Some(Family::B),
            "C" => Some(Family::C),
            "D" => Some(Family::D),
            "E6" => Some(Family::E6),
            "E7" => Some(Family::E7),
            "E8" => Some(Family::E8),
            "F4" => Some(Family::F4),
            "G2" => Some(Family::G2),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Family::Gl => "GL",
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
            Family::E6 => "E6",
            Family::E7 => "E7",
            Family::E8 => "E8",
            Family::F4 => "F4",
            Family::G2 => "G2",
        }
    }
}

/// A subset of the simple roots, identified by 1-based labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleSet {
    members: Vec<bool>,
}

impl SimpleSet {
    /// `labels` are 1-based simple root indices, at most `num_simple`.
    pub fn new(num_simple: usize, labels: &[usize]) -> Result<Self> {
        let mut members = vec![false; num_simple];
        for &l in labels {
            if l == 0 || l > num_simple {
                return Err(Error::DimensionMismatch(format!(
                    "simple root label {l} out of range 1..={num_simple}"
                )));
            }
            members[l - 1] = true;
        }
        Ok(SimpleSet { members })
    }

    pub fn empty(num_simple: usize) -> Self {
        SimpleSet {
            members: vec![false; num_simple],
        }
    }

    pub fn full(num_simple: usize) -> Self {
        SimpleSet {
            members: vec![true; num_simple],
        }
    }

    pub fn num_simple(&self) -> usize {
        self.members.len()
    }

    #[inline]
    pub fn contains_idx0(&self, i: usize) -> bool {
        self.members[i]
    }

    pub fn labels(&self) -> Vec<usize> {
        (0..self.members.len())
            .filter(|&i| self.members[i])
            .map(|i| i + 1)
            .collect()
    }

    pub fn complement_labels(&self) -> Vec<usize> {
        (0..self.members.len())
            .filter(|&i| !self.members[i])
            .map(|i| i + 1)
            .collect()
    }

    pub fn card(&self) -> usize {
        self.members.iter().filter(|&&b| b).count()
    }
}

/// A weight, in the coordinate convention of its family (see module docs).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightVec {
    coords: Vec<Rat>,
}

impl WeightVec {
    pub fn new(datum: &RootDatum, coords: Vec<Rat>) -> Result<Self> {
        if coords.len() != datum.coord_dim() {
            return Err(Error::DimensionMismatch(format!(
                "weight has {} coordinates, expected {}",
                coords.len(),
                datum.coord_dim()
            )));
        }
        Ok(WeightVec { coords })
    }

    pub fn zero(datum: &RootDatum) -> Self {
        WeightVec {
            coords: vec![Rat::zero(); datum.coord_dim()],
        }
    }

    pub(crate) fn from_coords_unchecked(coords: Vec<Rat>) -> Self {
        WeightVec { coords }
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn scale(&self, f: &Rat) -> WeightVec {
        WeightVec {
            coords: self.coords.iter().map(|c| c * f).collect(),
        }
    }
}

/// A slope cocharacter vector, paired against weights. Canonical-reduction
/// validity with respect to its Levi subset is checked at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CochVec {
    coords: Vec<Rat>,
    levi: SimpleSet,
}

impl CochVec {
    pub fn new(datum: &RootDatum, coords: Vec<Rat>, levi: SimpleSet) -> Result<Self> {
        if coords.len() != datum.coord_dim() {
            return Err(Error::DimensionMismatch(format!(
                "slope vector has {} coordinates, expected {}",
                coords.len(),
                datum.coord_dim()
            )));
        }
        if levi.num_simple() != datum.num_simple() {
            return Err(Error::DimensionMismatch(format!(
                "Levi set is over {} simple roots, expected {}",
                levi.num_simple(),
                datum.num_simple()
            )));
        }
        validate_canonical_slope(datum, &coords, &levi)?;
        Ok(CochVec { coords, levi })
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn levi(&self) -> &SimpleSet {
        &self.levi
    }
}

/// Pairing between a slope vector and a weight. In both conventions this is
/// the dot product of the coordinate vectors.
pub fn pair(c: &CochVec, lambda: &WeightVec) -> Result<Rat> {
    if c.coords.len() != lambda.coords.len() {
        return Err(Error::DimensionMismatch(format!(
            "pairing a {}-coordinate slope with a {}-coordinate weight",
            c.coords.len(),
            lambda.coords.len()
        )));
    }
    Ok(dot(&c.coords, &lambda.coords))
}

pub(crate) fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[derive(Debug, Clone)]
pub struct RootDatum {
    family: Family,
    rank: usize,
    cartan: Vec<Vec<i64>>,
    max_weyl_order: Option<u128>,
}

/// Builds the root datum for a family at a given rank.
///
/// E8 is excluded outright: its Weyl group (order 696729600) is far past any
/// cap this crate is willing to enumerate densely, and nothing downstream is
/// sized for it.
pub fn build_root_datum(family: Family, rank: usize) -> Result<RootDatum> {
    let bad_rank = |msg: &str| Err(Error::BadRank(format!("{} rank {rank}: {msg}", family.name())));
    match family {
        Family::E8 => {
            return Err(Error::UnsupportedType(
                "E8 is excluded by the size-cap policy (Weyl order 696729600 \
                 exceeds any dense-enumeration cap this crate supports)"
                    .to_string(),
            ))
        }
        Family::Gl => {
            if rank < 2 {
                return bad_rank("GL needs rank >= 2");
            }
        }
        Family::A => {
            if rank < 1 {
                return bad_rank("A needs rank >= 1");
            }
        }
        Family::B | Family::C => {
            if rank < 2 {
                return bad_rank("B and C need rank >= 2");
            }
        }
        Family::D => {
            if rank < 3 {
                return bad_rank("D needs rank >= 3");
            }
        }
        Family::E6 => {
            if rank != 6 {
                return bad_rank("E6 has rank exactly 6");
            }
        }
        Family::E7 => {
            if rank != 7 {
                return bad_rank("E7 has rank exactly 7");
            }
        }
        Family::F4 => {
            if rank != 4 {
                return bad_rank("F4 has rank exactly 4");
            }
        }
        Family::G2 => {
            if rank != 2 {
                return bad_rank("G2 has rank exactly 2");
            }
        }
    }
    let cartan = cartan_matrix(family, rank);
    Ok(RootDatum {
        family,
        rank,
        cartan,
        max_weyl_order: None,
    })
}

fn cartan_matrix(family: Family, rank: usize) -> Vec<Vec<i64>> {
    let s = match family {
        Family::Gl => rank - 1,
        _ => rank,
    };
    let mut m = vec![vec![0i64; s]; s];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 2;
    }
    fn bond(m: &mut [Vec<i64>], i: usize, j: usize) {
        m[i][j] = -1;
        m[j][i] = -1;
    }
    match family {
        Family::Gl | Family::A => {
            for i in 0..s.saturating_sub(1) {
                bond(&mut m, i, i + 1);
            }
        }
        Family::B => {
            for i in 0..s - 1 {
                bond(&mut m, i, i + 1);
            }
            // alpha_n short: <alpha_n_vee, alpha_{n-1}> = -2
            m[s - 1][s - 2] = -2;
        }
        Family::C => {
            for i in 0..s - 1 {
                bond(&mut m, i, i + 1);
            }
            // alpha_n long: <alpha_{n-1}_vee, alpha_n> = -2
            m[s - 2][s - 1] = -2;
        }
        Family::D => {
            for i in 0..s - 2 {
                bond(&mut m, i, i + 1);
            }
            bond(&mut m, s - 3, s - 1);
        }
        Family::E6 => {
            for (a, b) in [(0, 2), (2, 3), (3, 4), (4, 5), (1, 3)] {
                bond(&mut m, a, b);
            }
        }
        Family::E7 => {
            for (a, b) in [(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (1, 3)] {
                bond(&mut m, a, b);
            }
        }
        Family::F4 => {
            bond(&mut m, 0, 1);
            bond(&mut m, 2, 3);
            // double bond between alpha_2 (long) and alpha_3 (short)
            m[1][2] = -1;
            m[2][1] = -2;
        }
        Family::G2 => {
            // alpha_1 short, alpha_2 long
            m[0][1] = -3;
            m[1][0] = -1;
        }
        Family::E8 => unreachable!("rejected before Cartan construction"),
    }
    m
}

impl RootDatum {
    pub fn with_max_weyl_order(mut self, cap: u128) -> Self {
        self.max_weyl_order = Some(cap);
        self
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Length of weight and slope coordinate vectors.
    pub fn coord_dim(&self) -> usize {
        self.rank
    }

    /// Number of simple roots: `rank - 1` for GL, `rank` otherwise.
    pub fn num_simple(&self) -> usize {
        match self.family {
            Family::Gl => self.rank - 1,
            _ => self.rank,
        }
    }

    /// `cartan[i][j] = <alpha_i_vee, alpha_j>` (0-based here).
    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// Weyl group order, by closed form.
    pub fn weyl_order(&self) -> u128 {
        fn factorial(n: usize) -> u128 {
            (1..=n as u128).product()
        }
        match self.family {
            Family::Gl => factorial(self.rank),
            Family::A => factorial(self.rank + 1),
            Family::B | Family::C => (1u128 << self.rank) * factorial(self.rank),
            Family::D => (1u128 << (self.rank - 1)) * factorial(self.rank),
            Family::E6 => 51_840,
            Family::E7 => 2_903_040,
            Family::E8 => 696_729_600,
            Family::F4 => 1_152,
            Family::G2 => 12,
        }
    }

    /// Enumeration cap: explicit setting, else the environment override,
    /// else the default.
    pub fn weyl_order_cap(&self) -> u128 {
        if let Some(cap) = self.max_weyl_order {
            return cap;
        }
        if let Ok(s) = std::env::var(MAX_WEYL_ORDER_ENV) {
            if let Ok(cap) = s.trim().parse::<u128>() {
                return cap;
            }
        }
        DEFAULT_MAX_WEYL_ORDER
    }

    /// Action of the simple reflection `s_{i0+1}` on weight coordinates.
    pub fn reflection(&self, i0: usize) -> IntMat {
        let d = self.coord_dim();
        let mut m = IntMat::identity(d);
        match self.family {
            Family::Gl => {
                // transposition of coordinates i0, i0+1
                m.set(i0, i0, 0);
                m.set(i0 + 1, i0 + 1, 0);
                m.set(i0, i0 + 1, 1);
                m.set(i0 + 1, i0, 1);
            }
            _ => {
                // s_i(lambda) = lambda - lambda_i * alpha_i in fundamental
                // weight coordinates, where alpha_i has coordinates
                // cartan[.][i].
                for j in 0..d {
                    let v = m.get(j, i0) - self.cartan[j][i0];
                    m.set(j, i0, v);
                }
            }
        }
        m
    }

    /// `alpha_{j0+1}` written in weight coordinates.
    pub fn simple_root_weight_coords(&self, j0: usize) -> Vec<Rat> {
        let d = self.coord_dim();
        let mut v = vec![Rat::zero(); d];
        match self.family {
            Family::Gl => {
                v[j0] = Rat::from_integer(1.into());
                v[j0 + 1] = Rat::from_integer((-1).into());
            }
            _ => {
                for (x, row) in v.iter_mut().zip(&self.cartan) {
                    *x = Rat::from_integer(row[j0].into());
                }
            }
        }
        v
    }

    /// `<alpha_{i0+1}_vee, lambda>`.
    pub fn pairing_simple_coroot(&self, lambda: &WeightVec, i0: usize) -> Rat {
        match self.family {
            Family::Gl => &lambda.coords[i0] - &lambda.coords[i0 + 1],
            _ => lambda.coords[i0].clone(),
        }
    }

    /// `<c, alpha_{j0+1}>` for a raw slope coordinate vector.
    pub fn slope_pairing_simple_root(&self, coords: &[Rat], j0: usize) -> Rat {
        match self.family {
            Family::Gl => &coords[j0] - &coords[j0 + 1],
            _ => (0..self.num_simple())
                .map(|i| &coords[i] * Rat::from_integer(self.cartan[i][j0].into()))
                .sum(),
        }
    }

    /// All positive roots, as coefficient vectors over the simple roots.
    /// Built by the standard root-string induction on height.
    pub fn positive_roots(&self) -> Vec<Vec<i64>> {
        let s = self.num_simple();
        let mut roots: Vec<Vec<i64>> = Vec::new();
        let mut seen: std::collections::HashSet<Vec<i64>> = std::collections::HashSet::new();
        let mut layer: Vec<Vec<i64>> = (0..s)
            .map(|i| {
                let mut v = vec![0i64; s];
                v[i] = 1;
                v
            })
            .collect();
        for r in &layer {
            seen.insert(r.clone());
        }
        while !layer.is_empty() {
            let mut next: Vec<Vec<i64>> = Vec::new();
            for beta in &layer {
                for i in 0..s {
                    let pairing: i64 = (0..s).map(|j| beta[j] * self.cartan[i][j]).sum();
                    // walk down the alpha_i-string through beta
                    let mut p = 0i64;
                    let mut down = beta.clone();
                    loop {
                        down[i] -= 1;
                        if down[i] >= 0 && seen.contains(&down) {
                            p += 1;
                        } else if down.iter().all(|&c| c == 0) {
                            p += 1;
                            break;
                        } else {
                            break;
                        }
                    }
                    let q = p - pairing;
                    if q > 0 {
                        let mut up = beta.clone();
                        up[i] += 1;
                        if seen.insert(up.clone()) {
                            next.push(up);
                        }
                    }
                }
            }
            roots.extend(layer);
            layer = next;
        }
        roots.sort();
        roots
    }

    /// Number of positive roots not supported inside the given simple subset.
    /// This is the dimension of the flag variety G/P for the standard
    /// parabolic attached to that subset.
    pub fn positive_roots_outside(&self, p: &SimpleSet) -> usize {
        self.positive_roots()
            .iter()
            .filter(|root| {
                root.iter()
                    .enumerate()
                    .any(|(i, &c)| c != 0 && !p.contains_idx0(i))
            })
            .count()
    }
}

/// Checks that lambda is a character of the standard parabolic P:
/// `<alpha_i_vee, lambda> = 0` for every simple root in the Levi of P.
pub fn validate_character(datum: &RootDatum, lambda: &WeightVec, delta_p: &SimpleSet) -> Result<()> {
    let mut bad = Vec::new();
    for i in 0..datum.num_simple() {
        if delta_p.contains_idx0(i) {
            let v = datum.pairing_simple_coroot(lambda, i);
            if !v.is_zero() {
                bad.push(Violation {
                    index: i + 1,
                    value: format_rat(&v),
                    requirement: "pairing with the coroot to vanish".to_string(),
                });
            }
        }
    }
    if bad.is_empty() {
        Ok(())
    } else {
        Err(Error::NotACharacterOfP(bad))
    }
}

/// Checks that lambda is a strictly antidominant character of P:
/// zero pairing inside the Levi, strictly negative pairing outside it.
pub fn validate_antidominant(
    datum: &RootDatum,
    lambda: &WeightVec,
    delta_p: &SimpleSet,
) -> Result<()> {
    validate_character(datum, lambda, delta_p)?;
    let mut bad = Vec::new();
    for i in 0..datum.num_simple() {
        if !delta_p.contains_idx0(i) {
            let v = datum.pairing_simple_coroot(lambda, i);
            if v >= Rat::zero() {
                bad.push(Violation {
                    index: i + 1,
                    value: format_rat(&v),
                    requirement: "pairing with the coroot to be strictly negative".to_string(),
                });
            }
        }
    }
    if bad.is_empty() {
        Ok(())
    } else {
        Err(Error::NotStrictlyAntidominant(bad))
    }
}

/// Checks the canonical-reduction conditions on a slope coordinate vector:
/// `<c, alpha_j> = 0` on the Levi of Q and `> 0` off it.
pub fn validate_canonical_slope(
    datum: &RootDatum,
    coords: &[Rat],
    delta_q: &SimpleSet,
) -> Result<()> {
    let mut levi_bad = Vec::new();
    let mut strict_bad = Vec::new();
    for j in 0..datum.num_simple() {
        let v = datum.slope_pairing_simple_root(coords, j);
        if delta_q.contains_idx0(j) {
            if !v.is_zero() {
                levi_bad.push(Violation {
                    index: j + 1,
                    value: format_rat(&v),
                    requirement: "pairing with the simple root to vanish".to_string(),
                });
            }
        } else if v <= Rat::zero() {
            strict_bad.push(Violation {
                index: j + 1,
                value: format_rat(&v),
                requirement: "pairing with the simple root to be strictly positive".to_string(),
            });
        }
    }
    if !levi_bad.is_empty() {
        return Err(Error::SlopeNotLeviTrivial(levi_bad));
    }
    if !strict_bad.is_empty() {
        return Err(Error::SlopeNotStrictlyDecreasingAcrossBlocks(strict_bad));
    }
    Ok(())
}

/// Builds the slope vector of a simple family from its pairings with the
/// simple roots: `targets[j] = <c, alpha_{j+1}>`, which must be zero on the
/// Levi of Q and strictly positive off it. Not available for GL, where the
/// coordinate space is one dimension larger than the root span; GL slope
/// vectors come from HN block data instead.
pub fn slope_vector_from_pairings(
    datum: &RootDatum,
    delta_q: &SimpleSet,
    targets: &[Rat],
) -> Result<CochVec> {
    if datum.family() == Family::Gl {
        return Err(Error::UnsupportedType(
            "GL slope vectors are determined only up to a central twist; \
             build them from HN block data"
                .to_string(),
        ));
    }
    let n = datum.num_simple();
    if targets.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "{} pairing targets for {} simple roots",
            targets.len(),
            n
        )));
    }
    // rows[j][i] = <e_i, alpha_{j+1}>; for simple families this is the
    // transposed Cartan matrix and is invertible
    let rows: Vec<Vec<Rat>> = (0..n)
        .map(|j| {
            (0..n)
                .map(|i| {
                    let mut unit = vec![Rat::zero(); n];
                    unit[i] = Rat::from_integer(1.into());
                    datum.slope_pairing_simple_root(&unit, j)
                })
                .collect()
        })
        .collect();
    let coords = linalg::solve_square(&rows, targets).ok_or_else(|| {
        Error::InternalInconsistency(
            "the root pairing matrix of a simple family must be invertible".to_string(),
        )
    })?;
    CochVec::new(datum, coords, delta_q.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat_int;

    fn gl(n: usize) -> RootDatum {
        build_root_datum(Family::Gl, n).unwrap()
    }

    #[test]
    fn b2_cartan_is_pinned() {
        // Convention check: alpha_1 is the long root of B_2, so
        // <alpha_1_vee, alpha_2> = -1 and <alpha_2_vee, alpha_1> = -2.
        let d = build_root_datum(Family::B, 2).unwrap();
        assert_eq!(d.cartan(), &[vec![2, -1], vec![-2, 2]]);
        let c = build_root_datum(Family::C, 2).unwrap();
        assert_eq!(c.cartan(), &[vec![2, -2], vec![-1, 2]]);
        let g = build_root_datum(Family::G2, 2).unwrap();
        assert_eq!(g.cartan(), &[vec![2, -3], vec![-1, 2]]);
    }

    #[test]
    fn e8_refused_with_policy_reason() {
        let err = build_root_datum(Family::E8, 8).unwrap_err();
        match err {
            Error::UnsupportedType(msg) => assert!(msg.contains("size-cap")),
            other => panic!("expected UnsupportedType, got {other:?}"),
        }
    }

    #[test]
    fn rank_validation() {
        assert!(build_root_datum(Family::Gl, 1).is_err());
        assert!(build_root_datum(Family::B, 1).is_err());
        assert!(build_root_datum(Family::D, 2).is_err());
        assert!(build_root_datum(Family::E6, 7).is_err());
        assert!(build_root_datum(Family::F4, 3).is_err());
        assert!(build_root_datum(Family::A, 1).is_ok());
    }

    #[test]
    fn weyl_orders_closed_form() {
        assert_eq!(gl(4).weyl_order(), 24);
        assert_eq!(build_root_datum(Family::B, 3).unwrap().weyl_order(), 48);
        assert_eq!(build_root_datum(Family::D, 4).unwrap().weyl_order(), 192);
        assert_eq!(build_root_datum(Family::F4, 4).unwrap().weyl_order(), 1152);
        assert_eq!(build_root_datum(Family::G2, 2).unwrap().weyl_order(), 12);
        assert_eq!(build_root_datum(Family::E6, 6).unwrap().weyl_order(), 51840);
    }

    #[test]
    fn positive_root_counts() {
        let count = |f, r| build_root_datum(f, r).unwrap().positive_roots().len();
        assert_eq!(count(Family::Gl, 4), 6);
        assert_eq!(count(Family::A, 3), 6);
        assert_eq!(count(Family::B, 3), 9);
        assert_eq!(count(Family::C, 3), 9);
        assert_eq!(count(Family::D, 4), 12);
        assert_eq!(count(Family::G2, 2), 6);
        assert_eq!(count(Family::F4, 4), 24);
        assert_eq!(count(Family::E6, 6), 36);
    }

    #[test]
    fn grassmannian_dimension() {
        let d = gl(4);
        let p = SimpleSet::new(d.num_simple(), &[1, 3]).unwrap();
        assert_eq!(d.positive_roots_outside(&p), 4);
        let borel = SimpleSet::empty(d.num_simple());
        assert_eq!(d.positive_roots_outside(&borel), 6);
        let full = SimpleSet::full(d.num_simple());
        assert_eq!(d.positive_roots_outside(&full), 0);
    }

    #[test]
    fn gl_pairing_reads_slopes() {
        // Slope (3,1,0,-2) against the standard coordinate weights.
        let d = gl(4);
        let q = SimpleSet::empty(3);
        let c = CochVec::new(
            &d,
            vec![rat_int(3), rat_int(1), rat_int(0), rat_int(-2)],
            q,
        )
        .unwrap();
        for (i, expect) in [3i64, 1, 0, -2].into_iter().enumerate() {
            let mut coords = vec![Rat::zero(); 4];
            coords[i] = rat_int(1);
            let lam = WeightVec::new(&d, coords).unwrap();
            assert_eq!(pair(&c, &lam).unwrap(), rat_int(expect));
        }
    }

    #[test]
    fn character_and_antidominance_checks() {
        let d = gl(4);
        let p = SimpleSet::new(3, &[1, 3]).unwrap();
        let det2 = WeightVec::new(&d, vec![rat_int(0), rat_int(0), rat_int(1), rat_int(1)]).unwrap();
        validate_antidominant(&d, &det2, &p).unwrap();

        let not_char = WeightVec::new(&d, vec![rat_int(1), rat_int(0), rat_int(1), rat_int(1)]).unwrap();
        match validate_character(&d, &not_char, &p) {
            Err(Error::NotACharacterOfP(v)) => {
                assert_eq!(v.len(), 1);
                assert_eq!(v[0].index, 1);
                assert_eq!(v[0].value, "1");
            }
            other => panic!("expected character failure, got {other:?}"),
        }

        // dominant instead of antidominant: pairing off the Levi is positive
        let dominant = WeightVec::new(&d, vec![rat_int(1), rat_int(1), rat_int(0), rat_int(0)]).unwrap();
        assert!(matches!(
            validate_antidominant(&d, &dominant, &p),
            Err(Error::NotStrictlyAntidominant(_))
        ));
    }

    #[test]
    fn canonical_slope_validation() {
        let d = gl(4);
        // slopes 3 > 1 > 0 > -2, Borel-type Q
        let ok = CochVec::new(
            &d,
            vec![rat_int(3), rat_int(1), rat_int(0), rat_int(-2)],
            SimpleSet::empty(3),
        );
        assert!(ok.is_ok());
        // repeated slope needs 2 in the Levi of Q
        let needs_levi = CochVec::new(
            &d,
            vec![rat_int(3), rat_int(1), rat_int(1), rat_int(-2)],
            SimpleSet::empty(3),
        );
        assert!(matches!(
            needs_levi,
            Err(Error::SlopeNotStrictlyDecreasingAcrossBlocks(_))
        ));
        let ok2 = CochVec::new(
            &d,
            vec![rat_int(3), rat_int(1), rat_int(1), rat_int(-2)],
            SimpleSet::new(3, &[2]).unwrap(),
        );
        assert!(ok2.is_ok());
        // non-constant on the declared Levi
        let bad_levi = CochVec::new(
            &d,
            vec![rat_int(3), rat_int(1), rat_int(0), rat_int(-2)],
            SimpleSet::new(3, &[2]).unwrap(),
        );
        assert!(matches!(bad_levi, Err(Error::SlopeNotLeviTrivial(_))));
    }

    #[test]
    fn slope_vectors_from_pairings_round_trip() {
        // B_2, Borel Q: recover the slope vector from prescribed pairings
        let d = build_root_datum(Family::B, 2).unwrap();
        let q = SimpleSet::empty(2);
        let targets = vec![rat_int(1), rat_int(2)];
        let c = slope_vector_from_pairings(&d, &q, &targets).unwrap();
        for (j, want) in targets.iter().enumerate() {
            assert_eq!(&d.slope_pairing_simple_root(c.coords(), j), want);
        }
        // Levi of Q forces the pairing there to zero
        let q2 = SimpleSet::new(2, &[1]).unwrap();
        let c2 =
            slope_vector_from_pairings(&d, &q2, &[rat_int(0), rat_int(3)]).unwrap();
        assert!(d.slope_pairing_simple_root(c2.coords(), 0).is_zero());
        // a nonzero target on the Levi is rejected by slope validation
        let bad = slope_vector_from_pairings(&d, &q2, &targets);
        assert!(matches!(bad, Err(Error::SlopeNotLeviTrivial(_))));
        // GL is refused outright
        let g = gl(3);
        let refused = slope_vector_from_pairings(&g, &SimpleSet::empty(2), &targets);
        assert!(matches!(refused, Err(Error::UnsupportedType(_))));
    }

    #[test]
    fn reflections_are_involutions() {
        for (fam, rank) in [
            (Family::Gl, 4),
            (Family::B, 3),
            (Family::C, 3),
            (Family::D, 4),
            (Family::G2, 2),
            (Family::F4, 4),
        ] {
            let d = build_root_datum(fam, rank).unwrap();
            for i in 0..d.num_simple() {
                let s = d.reflection(i);
                assert_eq!(s.mul(&s), IntMat::identity(d.coord_dim()));
            }
        }
    }

    #[test]
    fn reflection_action_matches_pairing_formula() {
        // s_i(lambda) = lambda - <alpha_i_vee, lambda> alpha_i
        for (fam, rank) in [(Family::Gl, 4), (Family::B, 3), (Family::G2, 2)] {
            let d = build_root_datum(fam, rank).unwrap();
            let coords: Vec<Rat> = (0..d.coord_dim()).map(|k| rat_int(k as i64 + 1)).collect();
            let lam = WeightVec::new(&d, coords.clone()).unwrap();
            for i in 0..d.num_simple() {
                let image = d.reflection(i).apply(&coords);
                let pairing = d.pairing_simple_coroot(&lam, i);
                let alpha = d.simple_root_weight_coords(i);
                let expect: Vec<Rat> = coords
                    .iter()
                    .zip(&alpha)
                    .map(|(x, a)| x - &(&pairing * a))
                    .collect();
                assert_eq!(image, expect);
            }
        }
    }
}
