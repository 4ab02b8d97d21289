//! Built-in example suite: the worked rank-four Grassmannian family and the
//! small closed-form cases, with every value recomputed and compared.

use flagheight_core::cone::{
    functional_root, functional_weyl, grassmann_big_cone_rays, movable_check, movable_index,
    PolarizedClass,
};
use flagheight_core::error::Error;
use flagheight_core::gz::{build_gz, GzPolytope};
use flagheight_core::height::{
    essential_minimum, successive_minima, variety_height, zhang_minima, FlagContext,
};
use flagheight_core::hn::{grassmann_setup, hn_to_slope_vector, HnBlocks};
use flagheight_core::rational::{format_rat, rat, rat_int, Rat};
use flagheight_core::root_datum::{
    build_root_datum, pair, validate_character, CochVec, Family, SimpleSet, WeightVec,
};
use num_traits::Zero;
use serde_json::{json, Value};
use std::fmt::Write as _;

use crate::run::RunOutput;
use crate::CliError;

type CheckResult = Result<(), String>;

fn expect<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> CheckResult {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, want {want:?}"))
    }
}

fn expect_rat(what: &str, got: &Rat, want: &Rat) -> CheckResult {
    if got == want {
        Ok(())
    } else {
        Err(format!(
            "{what}: got {}, want {}",
            format_rat(got),
            format_rat(want)
        ))
    }
}

struct Worked {
    ctx: FlagContext,
    c: CochVec,
    lambda: WeightVec,
    gz: GzPolytope,
}

fn worked_example() -> Result<Worked, String> {
    let setup = grassmann_setup(4, 2).map_err(|e| e.to_string())?;
    let blocks = HnBlocks::new(vec![
        (1, rat_int(3)),
        (1, rat_int(1)),
        (1, rat_int(0)),
        (1, rat_int(-2)),
    ])
    .map_err(|e| e.to_string())?;
    let c = hn_to_slope_vector(&setup.datum, &blocks).map_err(|e| e.to_string())?;
    let gz = build_gz(&setup.datum, &setup.lambda).map_err(|e| e.to_string())?;
    let ctx = FlagContext::new(setup.datum, setup.delta_p).map_err(|e| e.to_string())?;
    Ok(Worked {
        ctx,
        c,
        lambda: setup.lambda,
        gz,
    })
}

fn top_rep(ctx: &FlagContext) -> usize {
    *ctx.cosets()
        .reps()
        .iter()
        .max_by_key(|&&u| ctx.group().length(u))
        .unwrap()
}

fn standard_characters_pair_to_slopes() -> CheckResult {
    let w = worked_example()?;
    let mu = [rat_int(3), rat_int(1), rat_int(0), rat_int(-2)];
    for i in 0..4 {
        let mut coords = vec![Rat::zero(); 4];
        coords[i] = rat_int(1);
        let e_i = WeightVec::new(w.ctx.datum(), coords).map_err(|e| e.to_string())?;
        let got = pair(&w.c, &e_i).map_err(|e| e.to_string())?;
        expect_rat(&format!("pairing with standard character {}", i + 1), &got, &mu[i])?;
    }
    Ok(())
}

fn block_character_is_valid() -> CheckResult {
    let datum = build_root_datum(Family::Gl, 4).map_err(|e| e.to_string())?;
    let lambda = WeightVec::new(
        &datum,
        vec![rat_int(0), rat_int(0), rat_int(1), rat_int(1)],
    )
    .map_err(|e| e.to_string())?;
    let delta_p = SimpleSet::new(3, &[1, 3]).map_err(|e| e.to_string())?;
    validate_character(&datum, &lambda, &delta_p).map_err(|e| e.to_string())
}

fn longest_representative_acts_on_det() -> CheckResult {
    let w = worked_example()?;
    let image = w
        .ctx
        .group()
        .act(top_rep(&w.ctx), &w.lambda)
        .map_err(|e| e.to_string())?;
    expect(
        "image of the determinant character",
        image.coords().to_vec(),
        vec![rat_int(1), rat_int(1), rat_int(0), rat_int(0)],
    )
}

fn grassmann_shorthand_pins_the_parabolic() -> CheckResult {
    let setup = grassmann_setup(4, 2).map_err(|e| e.to_string())?;
    expect("parabolic labels", setup.delta_p.labels(), vec![1, 3])?;
    expect(
        "determinant character",
        setup.lambda.coords().to_vec(),
        vec![rat_int(0), rat_int(0), rat_int(1), rat_int(1)],
    )
}

fn successive_minima_table() -> CheckResult {
    let w = worked_example()?;
    let table = successive_minima(&w.ctx, &w.c, &w.lambda).map_err(|e| e.to_string())?;
    let zetas: Vec<Rat> = table.entries.iter().map(|e| e.zeta.clone()).collect();
    expect(
        "zeta column",
        zetas,
        vec![
            rat_int(-2),
            rat_int(-1),
            rat_int(1),
            rat_int(1),
            rat_int(3),
            rat_int(4),
        ],
    )?;
    let lengths: Vec<usize> = table.entries.iter().map(|e| e.length).collect();
    expect("length column", lengths, vec![0, 1, 2, 2, 3, 4])?;
    expect(
        "multiplicities",
        table.entries.iter().map(|e| e.multiplicity).collect::<Vec<_>>(),
        vec![1; 6],
    )
}

fn first_zhang_minimum() -> CheckResult {
    let w = worked_example()?;
    let table = successive_minima(&w.ctx, &w.c, &w.lambda).map_err(|e| e.to_string())?;
    let e = zhang_minima(&table).map_err(|e| e.to_string())?;
    expect_rat("e_1", &e[0], &rat_int(4))
}

fn essential_minimum_is_the_top_slope_sum() -> CheckResult {
    let w = worked_example()?;
    let table = successive_minima(&w.ctx, &w.c, &w.lambda).map_err(|e| e.to_string())?;
    let ess = essential_minimum(&table).map_err(|e| e.to_string())?;
    expect_rat("essential minimum", &ess, &rat_int(4))
}

fn variety_height_averages_slopes() -> CheckResult {
    let w = worked_example()?;
    let h = variety_height(&w.ctx, &w.c, &w.lambda).map_err(|e| e.to_string())?;
    expect_rat("height", &h, &rat_int(1))
}

fn pattern_polytope_shape() -> CheckResult {
    let w = worked_example()?;
    expect("free variables", w.gz.free_vars().len(), 4)?;
    expect("polytope dimension", w.gz.dim(), 4)
}

fn pattern_polytope_vertices() -> CheckResult {
    let w = worked_example()?;
    let vertices: Vec<Vec<Rat>> = w.gz.vertices().to_vec();
    let want: Vec<Vec<Rat>> = [
        [0, 0, 0, 0],
        [0, 0, 1, 0],
        [0, 0, 1, 1],
        [1, 0, 1, 0],
        [1, 0, 1, 1],
        [1, 1, 1, 1],
    ]
    .iter()
    .map(|row| row.iter().map(|&x| rat_int(x)).collect())
    .collect();
    expect("vertex list", vertices, want)
}

fn pattern_polytope_volume() -> CheckResult {
    let w = worked_example()?;
    expect_rat("volume", w.gz.volume(), &rat(1, 12))
}

fn concave_transform_integral() -> CheckResult {
    let w = worked_example()?;
    // the integral is the slope sum divided by 24, for any block slopes
    let phi = w.gz.phi(&w.c).map_err(|e| e.to_string())?;
    let integral = w.gz.integrate_affine(&phi).map_err(|e| e.to_string())?;
    expect_rat("integral for slopes (3,1,0,-2)", &integral, &rat(1, 12))?;
    let other = HnBlocks::new(vec![
        (1, rat_int(2)),
        (1, rat_int(1)),
        (1, rat_int(-1)),
        (1, rat_int(-2)),
    ])
    .map_err(|e| e.to_string())?;
    let c2 = hn_to_slope_vector(w.ctx.datum(), &other).map_err(|e| e.to_string())?;
    let phi2 = w.gz.phi(&c2).map_err(|e| e.to_string())?;
    let integral2 = w.gz.integrate_affine(&phi2).map_err(|e| e.to_string())?;
    expect_rat("integral for slopes (2,1,-1,-2)", &integral2, &Rat::zero())
}

fn oracle_height_verdict() -> CheckResult {
    let w = worked_example()?;
    let oracle = w.gz.oracle_height(&w.c).map_err(|e| e.to_string())?;
    expect_rat("oracle height", &oracle, &rat_int(1))
}

fn root_functional_off_the_levi() -> CheckResult {
    let w = worked_example()?;
    let class = PolarizedClass::new(&w.ctx, w.lambda.clone(), rat_int(0))
        .map_err(|e| e.to_string())?;
    let value = functional_root(&w.ctx, &class, 2).map_err(|e| e.to_string())?;
    expect_rat("root functional at label 2", &value, &rat_int(-1))?;
    for label in [1usize, 3] {
        match functional_root(&w.ctx, &class, label) {
            Err(Error::IndexInLevi { index }) if index == label => {}
            other => return Err(format!("label {label}: expected the Levi error, got {other:?}")),
        }
    }
    Ok(())
}

fn weyl_functional_at_the_top_cell() -> CheckResult {
    let w = worked_example()?;
    let class = PolarizedClass::new(&w.ctx, w.lambda.clone(), rat(1, 2))
        .map_err(|e| e.to_string())?;
    let value = functional_weyl(&w.ctx, &w.c, &class, top_rep(&w.ctx))
        .map_err(|e| e.to_string())?;
    expect_rat("top-cell functional at t = 1/2", &value, &rat(7, 2))
}

fn fiber_class_evaluates_to_one() -> CheckResult {
    let w = worked_example()?;
    let fiber = PolarizedClass::new(&w.ctx, WeightVec::zero(w.ctx.datum()), rat_int(-1))
        .map_err(|e| e.to_string())?;
    for &u in w.ctx.cosets().reps() {
        let value = functional_weyl(&w.ctx, &w.c, &fiber, u).map_err(|e| e.to_string())?;
        expect_rat("fiber-class functional", &value, &rat_int(1))?;
    }
    Ok(())
}

fn bigness_threshold() -> CheckResult {
    let w = worked_example()?;
    for (t, want) in [(rat(7, 2), true), (rat_int(4), false), (rat(9, 2), false)] {
        let class = PolarizedClass::new(&w.ctx, w.lambda.clone(), t.clone())
            .map_err(|e| e.to_string())?;
        let got = movable_check(&w.ctx, &w.c, &class, 1).map_err(|e| e.to_string())?;
        expect(&format!("big at t = {}", format_rat(&t)), got, want)?;
    }
    Ok(())
}

fn big_cone_rays() -> CheckResult {
    let blocks = HnBlocks::new(vec![
        (1, rat_int(3)),
        (1, rat_int(1)),
        (1, rat_int(0)),
        (1, rat_int(-2)),
    ])
    .map_err(|e| e.to_string())?;
    let rays = grassmann_big_cone_rays(4, 2, &blocks).map_err(|e| e.to_string())?;
    if !rays.vertical.0.coords().iter().all(Zero::is_zero) {
        return Err("vertical ray carries a nonzero character".to_string());
    }
    expect_rat("vertical twist", &rays.vertical.1, &rat_int(-1))?;
    expect_rat("twisted ray coefficient", &rays.twisted.1, &rat_int(4))
}

fn two_block_minima() -> CheckResult {
    let datum = build_root_datum(Family::Gl, 2).map_err(|e| e.to_string())?;
    let blocks =
        HnBlocks::new(vec![(1, rat_int(1)), (1, rat_int(0))]).map_err(|e| e.to_string())?;
    let c = hn_to_slope_vector(&datum, &blocks).map_err(|e| e.to_string())?;
    let ctx = FlagContext::new(datum.clone(), SimpleSet::empty(1)).map_err(|e| e.to_string())?;
    let lambda =
        WeightVec::new(&datum, vec![rat_int(0), rat_int(1)]).map_err(|e| e.to_string())?;
    let table = successive_minima(&ctx, &c, &lambda).map_err(|e| e.to_string())?;
    expect("entry count", table.entries.len(), 2)?;
    expect("lengths", (table.entries[0].length, table.entries[1].length), (0, 1))?;
    expect_rat("zeta of the point cell", &table.entries[0].zeta, &rat_int(0))?;
    expect_rat("zeta of the open cell", &table.entries[1].zeta, &rat_int(1))
}

fn non_big_class_scans_to_zero() -> CheckResult {
    let w = worked_example()?;
    // t at the essential minimum: not big
    let class =
        PolarizedClass::new(&w.ctx, w.lambda.clone(), rat_int(4)).map_err(|e| e.to_string())?;
    let report = movable_index(&w.ctx, &w.c, &class).map_err(|e| e.to_string())?;
    expect("movable index", report.movable_index, 0)?;
    expect("bigness", report.is_big, false)
}

type Check = (&'static str, fn() -> CheckResult);

pub fn selftest() -> Result<RunOutput, CliError> {
    let checks: &[Check] = &[
        ("standard characters pair to slopes", standard_characters_pair_to_slopes),
        ("block character is valid", block_character_is_valid),
        ("longest representative acts on det", longest_representative_acts_on_det),
        ("grassmann shorthand pins the parabolic", grassmann_shorthand_pins_the_parabolic),
        ("successive minima table", successive_minima_table),
        ("first Zhang minimum", first_zhang_minimum),
        ("essential minimum is the top slope sum", essential_minimum_is_the_top_slope_sum),
        ("variety height averages slopes", variety_height_averages_slopes),
        ("pattern polytope shape", pattern_polytope_shape),
        ("pattern polytope vertices", pattern_polytope_vertices),
        ("pattern polytope volume", pattern_polytope_volume),
        ("concave transform integral", concave_transform_integral),
        ("oracle height verdict", oracle_height_verdict),
        ("root functional off the Levi", root_functional_off_the_levi),
        ("Weyl functional at the top cell", weyl_functional_at_the_top_cell),
        ("fiber class evaluates to one", fiber_class_evaluates_to_one),
        ("bigness threshold", bigness_threshold),
        ("big cone rays", big_cone_rays),
        ("two-block minima", two_block_minima),
        ("non-big class scans to zero", non_big_class_scans_to_zero),
    ];
    let mut human = String::new();
    let mut names = Vec::new();
    for (name, check) in checks {
        check().map_err(|msg| CliError {
            code: 4,
            message: format!("selftest failed at {name:?}: {msg}"),
        })?;
        let _ = writeln!(human, "ok {name}");
        names.push(json!({"name": name, "status": "ok"}));
    }
    let _ = writeln!(human, "{} checks passed", names.len());
    let report = json!({
        "schema_version": 1,
        "command": "selftest",
        "result": {
            "checks": Value::Array(names),
            "passed": checks.len(),
        },
    });
    Ok(RunOutput { report, human })
}
