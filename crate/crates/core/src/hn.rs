//! Harder-Narasimhan block data for GL(n) and the induced slope vector,
//! plus the Grassmannian setup shorthand.

use crate::error::{Error, Result};
use crate::rational::{format_rat, Rat};
use crate::root_datum::{build_root_datum, CochVec, Family, RootDatum, SimpleSet, WeightVec};
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// One block of a Harder-Narasimhan filtration: a rank and a slope.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HnBlock {
    pub rank: usize,
    pub slope: Rat,
}

/// Validated block list: positive ranks, slopes strictly decreasing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HnBlocks {
    blocks: Vec<HnBlock>,
}

impl HnBlocks {
    pub fn new(blocks: Vec<(usize, Rat)>) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::BadRank("at least one block is required".to_string()));
        }
        for (i, (rank, _)) in blocks.iter().enumerate() {
            if *rank == 0 {
                return Err(Error::BadRank(format!("block {} has rank 0", i + 1)));
            }
        }
        for i in 1..blocks.len() {
            if blocks[i - 1].1 <= blocks[i].1 {
                return Err(Error::NonDecreasingSlopes(format!(
                    "block {} has slope {} and block {} has slope {}",
                    i,
                    format_rat(&blocks[i - 1].1),
                    i + 1,
                    format_rat(&blocks[i].1)
                )));
            }
        }
        Ok(HnBlocks {
            blocks: blocks
                .into_iter()
                .map(|(rank, slope)| HnBlock { rank, slope })
                .collect(),
        })
    }

    /// Alternative encoding by (rank, degree); the slope is degree / rank.
    pub fn from_rank_degree(blocks: Vec<(usize, Rat)>) -> Result<Self> {
        let converted = blocks
            .into_iter()
            .enumerate()
            .map(|(i, (rank, degree))| {
                if rank == 0 {
                    return Err(Error::BadRank(format!("block {} has rank 0", i + 1)));
                }
                let slope = degree / Rat::from_integer(BigInt::from(rank));
                Ok((rank, slope))
            })
            .collect::<Result<Vec<_>>>()?;
        HnBlocks::new(converted)
    }

    pub fn blocks(&self) -> &[HnBlock] {
        &self.blocks
    }

    pub fn total_rank(&self) -> usize {
        self.blocks.iter().map(|b| b.rank).sum()
    }

    /// Slopes repeated by rank, weakly decreasing.
    pub fn slope_coordinates(&self) -> Vec<Rat> {
        self.blocks
            .iter()
            .flat_map(|b| std::iter::repeat_n(b.slope.clone(), b.rank))
            .collect()
    }
}

/// The slope vector of the canonical reduction determined by the blocks:
/// coordinates are the slopes repeated by rank, and the Levi of Q consists
/// of the simple roots where consecutive coordinates agree.
pub fn hn_to_slope_vector(datum: &RootDatum, blocks: &HnBlocks) -> Result<CochVec> {
    if datum.family() != Family::Gl {
        return Err(Error::UnsupportedType(
            "Harder-Narasimhan blocks describe GL(n) slopes only".to_string(),
        ));
    }
    let n = datum.rank();
    if blocks.total_rank() != n {
        return Err(Error::DimensionMismatch(format!(
            "blocks have total rank {}, the group is GL({n})",
            blocks.total_rank()
        )));
    }
    let coords = blocks.slope_coordinates();
    let levi_labels: Vec<usize> = (1..n)
        .filter(|&i| coords[i - 1] == coords[i])
        .collect();
    let levi = SimpleSet::new(datum.num_simple(), &levi_labels)?;
    CochVec::new(datum, coords, levi)
}

/// Grassmannian flag data: for Gr(r, n) the parabolic omits the simple root
/// n - r, and the polarizing character is det_2, the sum of the last r
/// standard coordinates.
#[derive(Debug, Clone)]
pub struct GrassmannSetup {
    pub n: usize,
    pub r: usize,
    pub datum: RootDatum,
    pub delta_p: SimpleSet,
    pub lambda: WeightVec,
}

pub fn grassmann_setup(n: usize, r: usize) -> Result<GrassmannSetup> {
    if n < 2 {
        return Err(Error::BadRank(format!("GL({n}) needs n >= 2")));
    }
    if r == 0 || r >= n {
        return Err(Error::BadRank(format!(
            "Gr({r}, {n}) needs 0 < r < n"
        )));
    }
    let datum = build_root_datum(Family::Gl, n)?;
    let labels: Vec<usize> = (1..n).filter(|&i| i != n - r).collect();
    let delta_p = SimpleSet::new(datum.num_simple(), &labels)?;
    let coords: Vec<Rat> = (0..n)
        .map(|i| if i >= n - r { Rat::one() } else { Rat::zero() })
        .collect();
    let lambda = WeightVec::new(&datum, coords)?;
    Ok(GrassmannSetup {
        n,
        r,
        datum,
        delta_p,
        lambda,
    })
}
