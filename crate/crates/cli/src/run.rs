//! Command execution: each command consumes a resolved job and produces a
//! canonical JSON report plus a human-readable table.

use flagheight_core::cone::{
    augmented_base_locus, grassmann_big_cone_rays, movable_check, movable_index,
    ConstraintKind, PolarizedClass,
};
use flagheight_core::gz::build_gz;
use flagheight_core::height::{
    essential_minimum, height_filtration, successive_minima, variety_height, zhang_minima,
    FlagContext, MinimaTable, Stratification,
};
use flagheight_core::rational::{format_rat, integer_scale, Rat};
use flagheight_core::Error;
use num_traits::One;
use serde_json::{json, Value};
use std::fmt::Write as _;

use crate::config::{rat_strings, ResolvedJob};
use crate::{invalid, CliError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Minima,
    Filtration,
    Zhang,
    Height { oracle: bool },
    ConesMember,
    ConesScan,
    GrassmannRays,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Minima => "minima",
            Command::Filtration => "filtration",
            Command::Zhang => "zhang",
            Command::Height { .. } => "height",
            Command::ConesMember | Command::ConesScan => "cones",
            Command::GrassmannRays => "grassmann-rays",
        }
    }
}

pub struct RunOutput {
    pub report: Value,
    pub human: String,
}

pub fn run(command: Command, job: &ResolvedJob) -> Result<RunOutput, CliError> {
    let (result, human) = match command {
        Command::Minima => minima(job)?,
        Command::Filtration => filtration(job)?,
        Command::Zhang => zhang(job)?,
        Command::Height { oracle } => height(job, oracle)?,
        Command::ConesMember => cones_member(job)?,
        Command::ConesScan => cones_scan(job)?,
        Command::GrassmannRays => grassmann_rays(job)?,
    };
    let report = json!({
        "schema_version": 1,
        "command": command.name(),
        "input": job.echo(),
        "result": result,
    });
    Ok(RunOutput { report, human })
}

fn context(job: &ResolvedJob) -> Result<FlagContext, CliError> {
    Ok(FlagContext::new(job.datum.clone(), job.delta_p.clone())?)
}

fn require_t(job: &ResolvedJob) -> Result<&Rat, CliError> {
    job.t
        .as_ref()
        .ok_or_else(|| invalid("t: missing (give it in the config or with --t)"))
}

fn table_json(table: &MinimaTable) -> Value {
    Value::Array(
        table
            .entries
            .iter()
            .map(|e| {
                json!({
                    "cell": e.coset_id,
                    "length": e.length,
                    "multiplicity": e.multiplicity,
                    "word": e.min_rep_word,
                    "zeta": format_rat(&e.zeta),
                })
            })
            .collect(),
    )
}

fn stratum_json(s: &Stratification) -> Value {
    json!({
        "cells": s.included,
        "dimension": s.dimension,
        "is_all": s.is_all,
    })
}

fn job_heading(job: &ResolvedJob) -> String {
    format!(
        "{}({}) with P = {:?}, slope {:?} on Q = {:?}",
        job.datum.family().name(),
        job.datum.rank(),
        job.delta_p.labels(),
        rat_strings(job.slope.coords()),
        job.slope.levi().labels(),
    )
}

fn minima(job: &ResolvedJob) -> Result<(Value, String), CliError> {
    let ctx = context(job)?;
    let table = successive_minima(&ctx, &job.slope, &job.lambda)?;
    let mut human = format!("successive minima over {}\n", job_heading(job));
    let _ = writeln!(human, "{:>4} {:>6} {:>4} {:>10}  word", "cell", "length", "mult", "zeta");
    for e in &table.entries {
        let word: Vec<String> = e.min_rep_word.iter().map(usize::to_string).collect();
        let _ = writeln!(
            human,
            "{:>4} {:>6} {:>4} {:>10}  {}",
            e.coset_id,
            e.length,
            e.multiplicity,
            format_rat(&e.zeta),
            word.join("."),
        );
    }
    let result = json!({
        "dim": table.dim,
        "cells": table_json(&table),
    });
    Ok((result, human))
}

fn filtration(job: &ResolvedJob) -> Result<(Value, String), CliError> {
    let t = require_t(job)?;
    let ctx = context(job)?;
    let table = successive_minima(&ctx, &job.slope, &job.lambda)?;
    let strict = height_filtration(&table, t)?;
    let class = PolarizedClass::new(&ctx, job.lambda.clone(), t.clone())?;
    let locus = augmented_base_locus(&ctx, &job.slope, &class)?;
    let result = json!({
        "t": format_rat(t),
        "strict_sublevel": stratum_json(&strict),
        "base_locus": {
            "cells": locus.stratum.included,
            "dimension": locus.stratum.dimension,
            "is_all": locus.stratum.is_all,
            "codimension": locus.codimension,
            "degenerate_reason": locus.degenerate_reason,
        },
        "boundary_note": "the sublevel set keeps zeta < t only; the base locus \
             also keeps zeta = t, so the two differ exactly at jump values",
    });
    let mut human = format!("filtration at t = {} over {}\n", format_rat(t), job_heading(job));
    let _ = writeln!(human, "strict sublevel cells: {:?} (dimension {})", strict.included, strict.dimension);
    let _ = writeln!(
        human,
        "augmented base locus cells: {:?} (codimension {})",
        locus.stratum.included,
        locus
            .codimension
            .map_or_else(|| "none, the locus is empty".to_string(), |c| c.to_string()),
    );
    Ok((result, human))
}

fn zhang(job: &ResolvedJob) -> Result<(Value, String), CliError> {
    let ctx = context(job)?;
    let table = successive_minima(&ctx, &job.slope, &job.lambda)?;
    let minima = zhang_minima(&table)?;
    let essential = essential_minimum(&table)?;
    let result = json!({
        "dim": table.dim,
        "minima": rat_strings(&minima),
        "essential_minimum": format_rat(&essential),
    });
    let mut human = format!("Zhang minima over {}\n", job_heading(job));
    let _ = writeln!(human, "e = {:?}", rat_strings(&minima));
    let _ = writeln!(human, "essential minimum = {}", format_rat(&essential));
    Ok((result, human))
}

fn height(job: &ResolvedJob, oracle: bool) -> Result<(Value, String), CliError> {
    let ctx = context(job)?;
    let h = variety_height(&ctx, &job.slope, &job.lambda)?;
    let mut result = serde_json::Map::new();
    result.insert("height".to_string(), json!(format_rat(&h)));
    let mut human = format!("height over {}\n", job_heading(job));
    let _ = writeln!(human, "height = {}", format_rat(&h));
    if oracle {
        // the pattern polytope needs an integral weight; heights scale
        // linearly, so clear denominators and divide back out
        let scale = integer_scale(job.lambda.coords());
        let scaled = job.lambda.scale(&scale);
        let gz = build_gz(&job.datum, &scaled)?;
        let mean = gz.integral_mean(&job.slope)? / &scale;
        gz.oracle_height(&job.slope)?;
        if mean != h {
            return Err(CliError::from(Error::OracleMismatch(format!(
                "rescaled integral mean {} but Weyl average {}",
                format_rat(&mean),
                format_rat(&h)
            ))));
        }
        let mut oracle_obj = serde_json::Map::new();
        oracle_obj.insert("integral_mean".to_string(), json!(format_rat(&mean)));
        oracle_obj.insert("match".to_string(), json!(true));
        if !scale.is_one() {
            oracle_obj.insert("lambda_scale".to_string(), json!(format_rat(&scale)));
            oracle_obj.insert(
                "scaled_lambda".to_string(),
                json!(rat_strings(scaled.coords())),
            );
        }
        result.insert("oracle".to_string(), Value::Object(oracle_obj));
        let _ = writeln!(human, "polytope oracle = {} (match)", format_rat(&mean));
    }
    Ok((Value::Object(result), human))
}

fn class_for(job: &ResolvedJob, ctx: &FlagContext) -> Result<PolarizedClass, CliError> {
    let t = require_t(job)?;
    Ok(PolarizedClass::new(ctx, job.lambda.clone(), t.clone())?)
}

fn cones_member(job: &ResolvedJob) -> Result<(Value, String), CliError> {
    let k = job
        .k
        .ok_or_else(|| invalid("k: missing (give it in the config or with --k)"))?;
    let ctx = context(job)?;
    let class = class_for(job, &ctx)?;
    if k < 0 {
        return Err(CliError::from(Error::InvalidK {
            k,
            max: ctx.dim() + 1,
        }));
    }
    let member = movable_check(&ctx, &job.slope, &class, k as usize)?;
    let result = json!({
        "k": k,
        "levels": ctx.dim() + 1,
        "member": member,
    });
    let human = format!(
        "class (lambda, t = {}) over {}\nmovable at level {k}: {member}\n",
        format_rat(class.t()),
        job_heading(job),
    );
    Ok((result, human))
}

fn cones_scan(job: &ResolvedJob) -> Result<(Value, String), CliError> {
    let ctx = context(job)?;
    let class = class_for(job, &ctx)?;
    let report = movable_index(&ctx, &job.slope, &class)?;
    let bindings: Vec<Value> = report
        .binding_constraints
        .iter()
        .map(|b| {
            json!({
                "kind": match b.kind {
                    ConstraintKind::Root => "root",
                    ConstraintKind::Weyl => "weyl",
                },
                "index": b.index,
                "value": format_rat(&b.value),
            })
        })
        .collect();
    let result = json!({
        "is_big": report.is_big,
        "movable_index": report.movable_index,
        "levels": ctx.dim() + 1,
        "on_boundary": report.on_boundary,
        "binding_constraints": bindings,
    });
    let mut human = format!(
        "cone scan for (lambda, t = {}) over {}\n",
        format_rat(class.t()),
        job_heading(job),
    );
    let _ = writeln!(
        human,
        "movable index {} of {} (big: {}, on boundary: {})",
        report.movable_index,
        ctx.dim() + 1,
        report.is_big,
        report.on_boundary,
    );
    for b in &report.binding_constraints {
        let _ = writeln!(
            human,
            "binding {} constraint {} with value {}",
            match b.kind {
                ConstraintKind::Root => "root",
                ConstraintKind::Weyl => "cell",
            },
            b.index,
            format_rat(&b.value),
        );
    }
    Ok((result, human))
}

fn grassmann_rays(job: &ResolvedJob) -> Result<(Value, String), CliError> {
    let (n, r) = job.grassmann.ok_or_else(|| {
        invalid("lambda: grassmann-rays needs the grassmann {n, r} shorthand")
    })?;
    let blocks = job
        .blocks
        .as_ref()
        .ok_or_else(|| invalid("slope: grassmann-rays needs hn_blocks data"))?;
    let rays = grassmann_big_cone_rays(n, r, blocks)?;
    let result = json!({
        "vertical": {
            "lambda": rat_strings(rays.vertical.0.coords()),
            "t": format_rat(&rays.vertical.1),
        },
        "twisted": {
            "lambda": rat_strings(rays.twisted.0.coords()),
            "t": format_rat(&rays.twisted.1),
        },
    });
    let human = format!(
        "big cone rays of the rank-{r} Grassmann bundle of a rank-{n} bundle\n\
         vertical ray: (0, {})\ntwisted ray: (det, {})\n",
        format_rat(&rays.vertical.1),
        format_rat(&rays.twisted.1),
    );
    Ok((result, human))
}
