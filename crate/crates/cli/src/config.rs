//! Job configuration: serde shapes, validation, and resolution into the
//! core library's types.

use flagheight_core::hn::{grassmann_setup, hn_to_slope_vector, HnBlocks};
use flagheight_core::rational::{format_rat, parse_rat, rat_int, Rat};
use flagheight_core::root_datum::{
    build_root_datum, CochVec, Family, RootDatum, SimpleSet, WeightVec,
};
use serde::Deserialize;
use serde_json::{json, Value};
use std::env;

use crate::{invalid, CliError};

/// A rational in transport form: a JSON integer or a "p/q" string.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum RatIn {
    Int(i64),
    Text(String),
}

impl RatIn {
    pub fn resolve(&self, what: &str) -> Result<Rat, CliError> {
        match self {
            RatIn::Int(n) => Ok(rat_int(*n)),
            RatIn::Text(s) => {
                parse_rat(s).map_err(|e| invalid(format!("{what}: {e}")))
            }
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    pub family: String,
    pub rank: usize,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlockSpec {
    pub rank: usize,
    #[serde(default)]
    pub slope: Option<RatIn>,
    #[serde(default)]
    pub degree: Option<RatIn>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HnSlopeSpec {
    pub hn_blocks: Vec<BlockSpec>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorootSlopeSpec {
    pub coroot_coeffs: Vec<RatIn>,
    #[serde(rename = "levi_Q", alias = "levi_q")]
    pub levi_q: Vec<usize>,
}

/// Exactly one slope encoding: HN block data (GL only) or explicit
/// coordinates with the Levi of Q.
#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum SlopeSpec {
    Hn(HnSlopeSpec),
    Coroot(CorootSlopeSpec),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GrassmannNr {
    pub n: usize,
    pub r: usize,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GrassmannShorthand {
    pub grassmann: GrassmannNr,
}

/// Either explicit weight coordinates or the Grassmann determinant
/// shorthand, which also pins the group and the parabolic.
#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum LambdaSpec {
    Coords(Vec<RatIn>),
    Grassmann(GrassmannShorthand),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    #[serde(default)]
    pub group: Option<GroupSpec>,
    #[serde(default, rename = "parabolic_P", alias = "parabolic_p")]
    pub parabolic_p: Option<Vec<usize>>,
    #[serde(default)]
    pub slope: Option<SlopeSpec>,
    #[serde(default)]
    pub lambda: Option<LambdaSpec>,
    #[serde(default)]
    pub t: Option<RatIn>,
    #[serde(default)]
    pub k: Option<i64>,
    #[serde(default)]
    pub max_weyl_order: Option<u64>,
}

impl JobConfig {
    pub fn from_json(text: &str) -> Result<JobConfig, CliError> {
        serde_json::from_str(text).map_err(|e| invalid(format!("configuration: {e}")))
    }
}

/// A fully validated job: core objects plus the data needed to echo the
/// inputs back canonically.
pub struct ResolvedJob {
    pub datum: RootDatum,
    pub delta_p: SimpleSet,
    pub slope: CochVec,
    pub blocks: Option<HnBlocks>,
    pub grassmann: Option<(usize, usize)>,
    pub lambda: WeightVec,
    pub t: Option<Rat>,
    pub k: Option<i64>,
    pub max_weyl_order: Option<u64>,
}

/// Exceptional families are named with their rank attached (E6, F4, G2);
/// accept the bare letter too when the rank field disambiguates.
fn parse_family(name: &str, rank: usize) -> Result<Family, CliError> {
    Family::parse(name)
        .or_else(|| Family::parse(&format!("{name}{rank}")))
        .ok_or_else(|| invalid(format!("group.family: unknown family {name:?}")))
}

impl ResolvedJob {
    pub fn resolve(cfg: &JobConfig) -> Result<ResolvedJob, CliError> {
        // the Grassmann shorthand determines group and parabolic; explicit
        // fields may repeat them but must agree
        let shorthand = match &cfg.lambda {
            Some(LambdaSpec::Grassmann(g)) => Some((g.grassmann.n, g.grassmann.r)),
            _ => None,
        };
        let (family, rank) = if let Some((n, _)) = shorthand {
            if let Some(g) = &cfg.group {
                let named = parse_family(&g.family, g.rank)?;
                if named != Family::Gl || g.rank != n {
                    return Err(invalid(format!(
                        "group: {} of rank {} conflicts with the grassmann shorthand (GL of rank {n})",
                        g.family, g.rank
                    )));
                }
            }
            (Family::Gl, n)
        } else {
            let g = cfg
                .group
                .as_ref()
                .ok_or_else(|| invalid("group: missing (or use the grassmann lambda shorthand)"))?;
            (parse_family(&g.family, g.rank)?, g.rank)
        };

        let mut datum = build_root_datum(family, rank)?;
        let cap = match env::var("FLAGHEIGHT_MAX_WEYL_ORDER") {
            Ok(text) => Some(text.parse::<u64>().map_err(|_| {
                invalid(format!(
                    "FLAGHEIGHT_MAX_WEYL_ORDER: expected a nonnegative integer, got {text:?}"
                ))
            })?),
            Err(env::VarError::NotPresent) => cfg.max_weyl_order,
            Err(env::VarError::NotUnicode(_)) => {
                return Err(invalid("FLAGHEIGHT_MAX_WEYL_ORDER: not valid unicode"));
            }
        };
        if let Some(cap) = cap {
            datum = datum.with_max_weyl_order(cap as u128);
        }

        let (delta_p, lambda, grassmann) = match (&cfg.lambda, shorthand) {
            (_, Some((n, r))) => {
                let setup = grassmann_setup(n, r)?;
                if let Some(labels) = &cfg.parabolic_p {
                    let named = SimpleSet::new(datum.num_simple(), labels)?;
                    if named != setup.delta_p {
                        return Err(invalid(format!(
                            "parabolic_P: {labels:?} conflicts with the grassmann shorthand, \
                             which fixes {:?}",
                            setup.delta_p.labels()
                        )));
                    }
                }
                (setup.delta_p, setup.lambda, Some((n, r)))
            }
            (Some(LambdaSpec::Coords(coords)), None) => {
                let labels = cfg
                    .parabolic_p
                    .as_ref()
                    .ok_or_else(|| invalid("parabolic_P: missing"))?;
                let delta_p = SimpleSet::new(datum.num_simple(), labels)?;
                let coords: Vec<Rat> = coords
                    .iter()
                    .enumerate()
                    .map(|(i, v)| v.resolve(&format!("lambda[{i}]")))
                    .collect::<Result<_, _>>()?;
                let lambda = WeightVec::new(&datum, coords)?;
                (delta_p, lambda, None)
            }
            (None, None) => return Err(invalid("lambda: missing")),
            (Some(LambdaSpec::Grassmann(_)), None) => unreachable!(),
        };

        let (slope, blocks) = match cfg.slope.as_ref().ok_or_else(|| invalid("slope: missing"))? {
            SlopeSpec::Hn(spec) => {
                let mut pairs = Vec::with_capacity(spec.hn_blocks.len());
                for (i, b) in spec.hn_blocks.iter().enumerate() {
                    let slope = match (&b.slope, &b.degree) {
                        (Some(s), None) => s.resolve(&format!("slope.hn_blocks[{i}].slope"))?,
                        (None, Some(d)) => {
                            if b.rank == 0 {
                                return Err(invalid(format!(
                                    "slope.hn_blocks[{i}]: rank must be positive"
                                )));
                            }
                            d.resolve(&format!("slope.hn_blocks[{i}].degree"))?
                                / rat_int(b.rank as i64)
                        }
                        _ => {
                            return Err(invalid(format!(
                                "slope.hn_blocks[{i}]: give exactly one of slope, degree"
                            )))
                        }
                    };
                    pairs.push((b.rank, slope));
                }
                let blocks = HnBlocks::new(pairs)?;
                let c = hn_to_slope_vector(&datum, &blocks)?;
                (c, Some(blocks))
            }
            SlopeSpec::Coroot(spec) => {
                let coords: Vec<Rat> = spec
                    .coroot_coeffs
                    .iter()
                    .enumerate()
                    .map(|(i, v)| v.resolve(&format!("slope.coroot_coeffs[{i}]")))
                    .collect::<Result<_, _>>()?;
                let levi = SimpleSet::new(datum.num_simple(), &spec.levi_q)?;
                (CochVec::new(&datum, coords, levi)?, None)
            }
        };

        let t = cfg.t.as_ref().map(|v| v.resolve("t")).transpose()?;

        Ok(ResolvedJob {
            datum,
            delta_p,
            slope,
            blocks,
            grassmann,
            lambda,
            t,
            k: cfg.k,
            max_weyl_order: cap,
        })
    }

    /// Canonical echo of the validated inputs.
    pub fn echo(&self) -> Value {
        let mut input = serde_json::Map::new();
        input.insert("family".to_string(), json!(self.datum.family().name()));
        input.insert("rank".to_string(), json!(self.datum.rank()));
        input.insert("parabolic_P".to_string(), json!(self.delta_p.labels()));
        let mut slope = serde_json::Map::new();
        slope.insert(
            "coroot_coeffs".to_string(),
            json!(rat_strings(self.slope.coords())),
        );
        slope.insert("levi_Q".to_string(), json!(self.slope.levi().labels()));
        if let Some(blocks) = &self.blocks {
            slope.insert(
                "hn_blocks".to_string(),
                Value::Array(
                    blocks
                        .blocks()
                        .iter()
                        .map(|b| json!({"rank": b.rank, "slope": format_rat(&b.slope)}))
                        .collect(),
                ),
            );
        }
        input.insert("slope".to_string(), Value::Object(slope));
        input.insert(
            "lambda".to_string(),
            json!(rat_strings(self.lambda.coords())),
        );
        if let Some((n, r)) = self.grassmann {
            input.insert("grassmann".to_string(), json!({"n": n, "r": r}));
        }
        if let Some(t) = &self.t {
            input.insert("t".to_string(), json!(format_rat(t)));
        }
        if let Some(k) = self.k {
            input.insert("k".to_string(), json!(k));
        }
        if let Some(cap) = self.max_weyl_order {
            input.insert("max_weyl_order".to_string(), json!(cap));
        }
        Value::Object(input)
    }
}

pub fn rat_strings(values: &[Rat]) -> Vec<String> {
    values.iter().map(format_rat).collect()
}
