//! The rank-two Neron-Severi model of a flag bundle: classes are pairs
//! (character, twist) representing the associated line bundle minus a
//! multiple of the fiber class. Two families of functionals are well defined
//! on such pairs: pairings of the character with simple coroots off the
//! parabolic, and slope pairings of translated characters minus the twist.
//! Together they cut out the nested movable cones; the k-th cone membership
//! is equivalent to the k-th Zhang minimum exceeding the twist, and both
//! criteria are always evaluated and compared.

use crate::error::{Error, Result};
use crate::height::{
    strictness_filtration, successive_minima, zhang_minima, FlagContext, MinimaTable,
    Stratification,
};
use crate::hn::{grassmann_setup, hn_to_slope_vector, HnBlocks};
use crate::rational::{format_rat, rat, rat_int, Rat};
use crate::root_datum::{pair, validate_antidominant, validate_character, CochVec, WeightVec};
use num_traits::{Signed, Zero};

/// A class in the rank-two model: the line bundle of `lambda` twisted down
/// by `t` fiber classes. `lambda` must be a character of P (zero pairing
/// with every coroot in the Levi); strict antidominance is not required.
#[derive(Debug, Clone)]
pub struct PolarizedClass {
    lambda: WeightVec,
    t: Rat,
}

impl PolarizedClass {
    pub fn new(ctx: &FlagContext, lambda: WeightVec, t: Rat) -> Result<PolarizedClass> {
        validate_character(ctx.datum(), &lambda, ctx.delta_p())?;
        Ok(PolarizedClass { lambda, t })
    }

    pub fn lambda(&self) -> &WeightVec {
        &self.lambda
    }

    pub fn t(&self) -> &Rat {
        &self.t
    }
}

/// The root functional: the pairing of the character with the coroot of
/// simple root `label` (1-based), which must lie outside the Levi of P.
/// Independent of the twist.
pub fn functional_root(ctx: &FlagContext, class: &PolarizedClass, label: usize) -> Result<Rat> {
    let n = ctx.datum().num_simple();
    if label == 0 || label > n {
        return Err(Error::DimensionMismatch(format!(
            "simple root label {label} out of range 1..={n}"
        )));
    }
    if ctx.delta_p().contains_idx0(label - 1) {
        return Err(Error::IndexInLevi { index: label });
    }
    Ok(ctx.datum().pairing_simple_coroot(class.lambda(), label - 1))
}

/// The Weyl functional attached to a group element: the slope pairing of the
/// translated character, minus the twist.
pub fn functional_weyl(
    ctx: &FlagContext,
    c: &CochVec,
    class: &PolarizedClass,
    w: usize,
) -> Result<Rat> {
    let image = ctx.group().act(w, class.lambda())?;
    Ok(pair(c, &image)? - class.t())
}

fn root_functionals(ctx: &FlagContext, class: &PolarizedClass) -> Result<Vec<(usize, Rat)>> {
    ctx.delta_p()
        .complement_labels()
        .into_iter()
        .map(|label| functional_root(ctx, class, label).map(|v| (label, v)))
        .collect()
}

struct CellFunctional {
    id: usize,
    length: usize,
    zeta: Rat,
}

/// Per-cell pairing values for an arbitrary character of P. Constancy over
/// each double-coset fiber is verified, not assumed; it is what makes the
/// Weyl functionals well defined on cells.
fn cell_functionals(
    ctx: &FlagContext,
    c: &CochVec,
    class: &PolarizedClass,
) -> Result<Vec<CellFunctional>> {
    let records = ctx.double_cosets_for(c)?;
    let mut out = Vec::with_capacity(records.len());
    for r in &records {
        let zeta = pair(c, &ctx.group().act(r.min_rep, class.lambda())?)?;
        for &u in &r.fiber {
            let z = pair(c, &ctx.group().act(u, class.lambda())?)?;
            if z != zeta {
                return Err(Error::InternalInconsistency(format!(
                    "pairing not constant on a double-coset fiber: {} vs {}",
                    format_rat(&z),
                    format_rat(&zeta)
                )));
            }
        }
        out.push(CellFunctional {
            id: r.id,
            length: r.length,
            zeta,
        });
    }
    Ok(out)
}

/// The augmented base locus of a class, as a union of cells.
#[derive(Debug, Clone)]
pub struct BaseLocusReport {
    pub stratum: Stratification,
    /// dim G/P minus the largest included cell dimension; None when empty.
    pub codimension: Option<i64>,
    /// Set when the character is not strictly antidominant: the class is not
    /// big on the fibers and the locus degenerates to everything.
    pub degenerate_reason: Option<String>,
}

/// Cells with zeta <= t. The boundary is non-strict here, in contrast to the
/// height filtration's strict cut; the two agree away from the jump values.
pub fn base_locus_stratum(table: &MinimaTable, t: &Rat) -> Result<Stratification> {
    strictness_filtration(table, t, false)
}

pub fn augmented_base_locus(
    ctx: &FlagContext,
    c: &CochVec,
    class: &PolarizedClass,
) -> Result<BaseLocusReport> {
    match validate_antidominant(ctx.datum(), class.lambda(), ctx.delta_p()) {
        Err(err @ Error::NotStrictlyAntidominant(_)) => {
            let records = ctx.double_cosets_for(c)?;
            let included: Vec<usize> = records.iter().map(|r| r.id).collect();
            Ok(BaseLocusReport {
                stratum: Stratification {
                    t: class.t().clone(),
                    included,
                    dimension: ctx.dim() as i64,
                    is_all: true,
                },
                codimension: Some(0),
                degenerate_reason: Some(err.to_string()),
            })
        }
        Err(other) => Err(other),
        Ok(()) => {
            let table = successive_minima(ctx, c, class.lambda())?;
            let stratum = base_locus_stratum(&table, class.t())?;
            let codimension = if stratum.included.is_empty() {
                None
            } else {
                Some(ctx.dim() as i64 - stratum.dimension)
            };
            Ok(BaseLocusReport {
                stratum,
                codimension,
                degenerate_reason: None,
            })
        }
    }
}

/// Membership of the class in the k-th movable cone, k in 1..=d+1. Strict
/// inequalities throughout: the root functionals must be negative off the
/// Levi, and every cell of dimension at least d-k+1 must carry a positive
/// Weyl functional. k = 1 is bigness, k = d+1 the ample range.
///
/// The cell condition is evaluated both over double cosets and over the
/// coset representatives, and, whenever the character is strictly
/// antidominant, compared against the k-th Zhang minimum exceeding the
/// twist. Any disagreement is an internal inconsistency.
pub fn movable_check(
    ctx: &FlagContext,
    c: &CochVec,
    class: &PolarizedClass,
    k: usize,
) -> Result<bool> {
    let d = ctx.dim();
    if k < 1 || k > d + 1 {
        return Err(Error::InvalidK {
            k: k as i64,
            max: d + 1,
        });
    }
    let threshold = d + 1 - k;
    let cells = cell_functionals(ctx, c, class)?;
    let over_records = cells
        .iter()
        .filter(|cell| cell.length >= threshold)
        .all(|cell| &cell.zeta > class.t());
    let mut over_reps = true;
    for &u in ctx.cosets().reps() {
        if ctx.group().length(u) >= threshold && functional_weyl(ctx, c, class, u)? <= Rat::zero()
        {
            over_reps = false;
        }
    }
    if over_records != over_reps {
        return Err(Error::InternalInconsistency(
            "the cell condition differs between double cosets and coset representatives"
                .to_string(),
        ));
    }
    let roots_negative = root_functionals(ctx, class)?
        .iter()
        .all(|(_, v)| *v < Rat::zero());
    if !roots_negative {
        return Ok(false);
    }
    // negative off the Levi plus the character condition is exactly strict
    // antidominance, so the Zhang cross-check is available
    let table = successive_minima(ctx, c, class.lambda())?;
    let minima = zhang_minima(&table)?;
    let via_minima = &minima[k - 1] > class.t();
    if via_minima != over_records {
        return Err(Error::InternalInconsistency(format!(
            "k = {k}: cone conditions give {over_records}, the Zhang minimum \
             criterion gives {via_minima}"
        )));
    }
    Ok(over_records)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstraintKind {
    Root,
    Weyl,
}

/// A functional that is tight or violated at the first failing cone level.
#[derive(Debug, Clone)]
pub struct BindingConstraint {
    pub kind: ConstraintKind,
    /// Simple-root label for Root, double-coset record id for Weyl.
    pub index: usize,
    /// The functional value: the coroot pairing, or zeta minus the twist.
    pub value: Rat,
}

#[derive(Debug, Clone)]
pub struct ConeReport {
    pub is_big: bool,
    /// Largest k in 1..=d+1 whose movable cone contains the class, 0 when
    /// none does. d+1 means the class is in the ample range.
    pub movable_index: usize,
    /// True when every binding functional at the first failing level is
    /// exactly zero: the class sits on that cone's boundary.
    pub on_boundary: bool,
    /// Empty for classes in the ample range.
    pub binding_constraints: Vec<BindingConstraint>,
}

/// Scans k = 1..=d+1, verifying that memberships are nested, and reports the
/// largest cone containing the class together with the constraints that
/// block the next one.
pub fn movable_index(
    ctx: &FlagContext,
    c: &CochVec,
    class: &PolarizedClass,
) -> Result<ConeReport> {
    let d = ctx.dim();
    let mut index = 0usize;
    let mut previous = true;
    for k in 1..=d + 1 {
        let ok = movable_check(ctx, c, class, k)?;
        if ok && !previous {
            return Err(Error::InternalInconsistency(
                "movable cones must be nested".to_string(),
            ));
        }
        if ok {
            index = k;
        }
        previous = ok;
    }
    let mut binding = Vec::new();
    let mut on_boundary = false;
    if index <= d {
        let threshold = d - index;
        let mut any_strict = false;
        for (label, value) in root_functionals(ctx, class)? {
            if value >= Rat::zero() {
                if value > Rat::zero() {
                    any_strict = true;
                }
                binding.push(BindingConstraint {
                    kind: ConstraintKind::Root,
                    index: label,
                    value,
                });
            }
        }
        for cell in cell_functionals(ctx, c, class)? {
            if cell.length >= threshold {
                let value = &cell.zeta - class.t();
                if value <= Rat::zero() {
                    if value < Rat::zero() {
                        any_strict = true;
                    }
                    binding.push(BindingConstraint {
                        kind: ConstraintKind::Weyl,
                        index: cell.id,
                        value,
                    });
                }
            }
        }
        if binding.is_empty() {
            return Err(Error::InternalInconsistency(
                "a failing cone level must expose a binding constraint".to_string(),
            ));
        }
        on_boundary = !any_strict;
    }
    Ok(ConeReport {
        is_big: index >= 1,
        movable_index: index,
        on_boundary,
        binding_constraints: binding,
    })
}

/// The two extremal rays of the big cone of a Grassmann bundle, in
/// (character, twist) coordinates: the fiber class (0, -1) and the twisted
/// determinant ray (det weight, sum of the r largest slopes).
#[derive(Debug, Clone)]
pub struct GrassmannRays {
    pub vertical: (WeightVec, Rat),
    pub twisted: (WeightVec, Rat),
}

pub fn grassmann_big_cone_rays(n: usize, r: usize, blocks: &HnBlocks) -> Result<GrassmannRays> {
    let setup = grassmann_setup(n, r)?;
    hn_to_slope_vector(&setup.datum, blocks)?;
    let top_sum: Rat = blocks.slope_coordinates().into_iter().take(r).sum();
    Ok(GrassmannRays {
        vertical: (WeightVec::zero(&setup.datum), rat_int(-1)),
        twisted: (setup.lambda.clone(), top_sum),
    })
}

/// Samples classes x * det - t * f on a steps-by-steps rational grid spanning
/// both sides of the big cone and checks that first-movability agrees with
/// membership in the open cone between the two rays. Returns the number of
/// grid points checked; any disagreement is an internal inconsistency.
pub fn grassmann_grid_agreement(
    n: usize,
    r: usize,
    blocks: &HnBlocks,
    steps: usize,
) -> Result<usize> {
    if steps < 2 {
        return Err(Error::BadRank(format!(
            "a grid needs at least 2 steps per axis, got {steps}"
        )));
    }
    let setup = grassmann_setup(n, r)?;
    let c = hn_to_slope_vector(&setup.datum, blocks)?;
    let rays = grassmann_big_cone_rays(n, r, blocks)?;
    let top_sum = rays.twisted.1.clone();
    let ctx = FlagContext::new(setup.datum.clone(), setup.delta_p.clone())?;
    let twist_span = top_sum.abs() + rat_int(1);
    let denom = (steps - 1) as i64;
    let mut checked = 0usize;
    for i in 0..steps {
        let x = rat_int(-2) + rat(4 * i as i64, denom);
        for j in 0..steps {
            let t = (rat_int(-2) + rat(4 * j as i64, denom)) * &twist_span;
            let class = PolarizedClass::new(&ctx, setup.lambda.scale(&x), t.clone())?;
            let member = movable_check(&ctx, &c, &class, 1)?;
            let in_open_cone = x > Rat::zero() && t < &x * &top_sum;
            if member != in_open_cone {
                return Err(Error::InternalInconsistency(format!(
                    "grid point x = {}, t = {}: first-movable {member}, open \
                     cone membership {in_open_cone}",
                    format_rat(&x),
                    format_rat(&t)
                )));
            }
            checked += 1;
        }
    }
    Ok(checked)
}
