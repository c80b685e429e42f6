use rayon::prelude::*;
use std::f64::consts::PI;
use std::path::Path;
use zetax_core::Complex64;

use zetax_core::arith::{build_weight_table, characters_mod, Character, WeightTable};
use zetax_core::eulerprod::{f_x, p_x};
use zetax_core::lcombo::{combo_lower_bound, combo_zero_count, l_x, product_zeros_right, ComboPhase, ComboSpec};
use zetax_core::refzeta::{n_of_t, s_of_t, zeta_em, MAX_HEIGHT};
use zetax_core::specfun::chi;
use zetax_core::zetax::{
    big_f_x, ratio_deviation, scan_phase, scan_star_zeros, scan_zeros_from, zero_free_interval_check, zeta_x,
    zeta_x_star, ScanReport, ZeroKind, C0,
};

use crate::cache::{zero_cache, Target};
use crate::error::{CliError, CliResult};
use crate::output::{coord, num, plot_script, write, Csv};
use crate::{
    config_error, CharArgs, Cli, Command, CountArgs, CountFunc, EvalArgs, EvalFunc, FigureArgs, RatioArgs, ZerosArgs,
    ZerosFunc,
};

const MAX_GRID: usize = 10_000_000;
const CACHE_TOL: f64 = 1e-10;

pub fn run(cli: &Cli) -> CliResult<()> {
    if let Some(n) = cli.common.jobs {
        if n == 0 {
            return Err(config_error("--jobs must be at least 1"));
        }
        // a second initialisation in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    if cli.common.plot_script.is_some() && cli.common.out.is_none() {
        return Err(config_error("--plot-script needs --out"));
    }
    let comment = format!("zetax {} {:?}", env!("CARGO_PKG_VERSION"), cli.command);
    let csv = match &cli.command {
        Command::Table { x } => table(*x, comment)?,
        Command::Eval(a) => eval(a, comment)?,
        Command::Zeros(a) => zeros(cli, a, comment)?,
        Command::Count(a) => count(a, comment)?,
        Command::Figures(a) => figures(a, comment)?,
        Command::Ratio(a) => ratio(cli, a, comment)?,
    };
    write(&csv, cli.common.out.as_deref())?;
    if let (Some(script), Some(out)) = (&cli.common.plot_script, &cli.common.out) {
        std::fs::write(script, plot_script(out, csv.columns()))?;
    }
    Ok(())
}

fn check_x(x: f64) -> CliResult<()> {
    if !(x >= 2.0 && x.is_finite()) {
        return Err(config_error(format!("X must be a finite number >= 2, got {x}")));
    }
    Ok(())
}

fn check_range(t0: f64, t1: f64) -> CliResult<()> {
    if !(t0.is_finite() && t1.is_finite() && t0 < t1) {
        return Err(config_error(format!("range must be non-empty, got [{t0}, {t1}]")));
    }
    Ok(())
}

fn check_tol(tol: f64) -> CliResult<()> {
    if !(tol > 0.0 && tol < 1e-2) {
        return Err(config_error(format!("tol must lie in (0, 1e-2), got {tol}")));
    }
    Ok(())
}

/// t0, t0+step, … up to t1 inclusive (to rounding).
fn grid(t0: f64, t1: f64, step: f64) -> CliResult<Vec<f64>> {
    if !(step > 0.0 && step.is_finite()) {
        return Err(config_error(format!("step must be positive, got {step}")));
    }
    if !(t0.is_finite() && t1.is_finite() && t0 <= t1) {
        return Err(config_error(format!("range must be non-empty, got [{t0}, {t1}]")));
    }
    let n = ((t1 - t0) / step + 1e-9).floor() as usize + 1;
    if n > MAX_GRID {
        return Err(config_error(format!("grid of {n} points exceeds {MAX_GRID}")));
    }
    Ok((0..n).map(|i| t0 + i as f64 * step).collect())
}

fn table_for(x: f64) -> CliResult<WeightTable> {
    check_x(x)?;
    Ok(build_weight_table(x)?)
}

fn character(c: &CharArgs) -> CliResult<Character> {
    let chars = characters_mod(c.q)?;
    chars.get(c.index).cloned().ok_or_else(|| config_error(format!("no character {} mod {}", c.index, c.q)))
}

fn read_combo(path: Option<&Path>) -> CliResult<ComboSpec> {
    let p = path.ok_or_else(|| config_error("--combo <file.json> is required"))?;
    let text = std::fs::read_to_string(p).map_err(|e| config_error(format!("{}: {e}", p.display())))?;
    Ok(ComboSpec::from_json(&text)?)
}

fn table(x: f64, comment: String) -> CliResult<Csv> {
    let t = table_for(x)?;
    Ok(Csv::raw(comment, t.to_csv().lines().filter(|l| !l.starts_with('#')).collect::<Vec<_>>().join("\n").as_str()))
}

fn eval(a: &EvalArgs, comment: String) -> CliResult<Csv> {
    check_range(a.t0, a.t1).or_else(|e| if a.t0 == a.t1 { Ok(()) } else { Err(e) })?;
    let ts = grid(a.t0, a.t1, a.step)?;
    let needs_table = matches!(a.func, EvalFunc::Zetax | EvalFunc::Zetaxstar | EvalFunc::Px | EvalFunc::Lx);
    let table = if needs_table { Some(table_for(a.x)?) } else { None };
    let chi_l = if a.func == EvalFunc::Lx { Some(character(&a.character)?) } else { None };
    let f = |t: f64| -> zetax_core::Result<Complex64> {
        let s = Complex64::new(a.sigma, t);
        match a.func {
            EvalFunc::Zeta => zeta_em(s),
            EvalFunc::Zetax => zeta_x(s, table.as_ref().expect("table built")),
            EvalFunc::Zetaxstar => zeta_x_star(s, table.as_ref().expect("table built")),
            EvalFunc::Px => Ok(p_x(s, table.as_ref().expect("table built")).value),
            EvalFunc::Chi => chi(s),
            EvalFunc::Lx => l_x(s, chi_l.as_ref().expect("character chosen"), table.as_ref().expect("table built")),
        }
    };
    let values = ts.par_iter().map(|&t| f(t)).collect::<zetax_core::Result<Vec<_>>>()?;
    let mut csv = Csv::new(comment, &["t", "re", "im", "abs"]);
    for (t, v) in ts.iter().zip(values) {
        csv.row(&[coord(*t), num(v.re), num(v.im), num(v.norm())]);
    }
    Ok(csv)
}

fn zeros(cli: &Cli, a: &ZerosArgs, comment: String) -> CliResult<Csv> {
    check_range(a.t0, a.t1)?;
    check_tol(a.tol)?;
    let cached = |target| -> CliResult<Csv> {
        let c = zero_cache(&cli.common, target, a.t0, a.t1, a.tol)?;
        let mut csv = Csv::new(comment.clone(), &["gamma"]);
        for g in &c.ordinates {
            csv.row(&[format!("{g:.12}")]);
        }
        Ok(csv)
    };
    match a.func {
        ZerosFunc::Zeta => cached(Target::Zeta),
        ZerosFunc::L => cached(Target::L { q: a.character.q, index: a.character.index }),
        ZerosFunc::Zetax => {
            let r = scan_zeros_from(a.t0, a.t1, &table_for(a.x)?, a.tol, a.c0)?;
            Ok(Csv::raw(comment, &r.to_csv()))
        }
        ZerosFunc::Zetaxstar => {
            let r = scan_star_zeros(a.t0, a.t1, &table_for(a.x)?, a.tol)?;
            Ok(Csv::raw(comment, &r.to_csv()))
        }
        ZerosFunc::Combo => {
            if a.t0 < C0 {
                return Err(config_error(format!("combination scans start at or above C0 = {C0}")));
            }
            let spec = read_combo(a.combo.as_deref())?;
            let table = table_for(a.x)?;
            let (z, turning_points) = scan_phase(&ComboPhase { spec: &spec, table: &table }, a.t0, a.t1, a.tol)?;
            let r = ScanReport {
                x: a.x,
                range: (a.t0, a.t1),
                zeros: z,
                count_formula: combo_lower_bound(a.t1, spec.q),
                turning_points,
            };
            Ok(Csv::raw(comment, &r.to_csv()))
        }
    }
}

fn count(a: &CountArgs, comment: String) -> CliResult<Csv> {
    if !(a.t.is_finite() && a.t >= 0.0 && a.t <= MAX_HEIGHT) {
        return Err(config_error(format!("t must lie in [0, {MAX_HEIGHT}], got {}", a.t)));
    }
    match a.func {
        CountFunc::Zeta => {
            let mut csv = Csv::new(comment, &["t", "n_of_t", "s_of_t"]);
            csv.row(&[coord(a.t), n_of_t(a.t)?.to_string(), num(s_of_t(a.t)?)]);
            Ok(csv)
        }
        CountFunc::Zetax => {
            if a.t < a.c0 {
                return Err(config_error(format!("t must be >= C0 = {}", a.c0)));
            }
            let table = table_for(a.x)?;
            let (count, second) = if a.t == a.c0 {
                (0, 0)
            } else {
                let r = scan_zeros_from(a.c0, a.t, &table, 1e-9, a.c0)?;
                (r.count(), r.zeros.iter().filter(|z| z.kind == ZeroKind::Second).count())
            };
            let formula = zetax_core::zetax::count_formula(a.t, &table);
            let mut csv = Csv::new(comment, &["t", "count", "formula", "n_of_t", "second_kind"]);
            csv.row(&[coord(a.t), count.to_string(), num(formula), n_of_t(a.t)?.to_string(), second.to_string()]);
            Ok(csv)
        }
        CountFunc::Combo => {
            let spec = read_combo(a.combo.as_deref())?;
            let table = table_for(a.x)?;
            let c = combo_zero_count(a.t, &spec, &table)?;
            let zr = if a.t > C0 { product_zeros_right(C0, a.t, &spec, &table)? } else { 0 };
            let second = c.zeros.iter().filter(|z| z.kind == ZeroKind::Second).count();
            let mut csv = Csv::new(
                comment,
                &[
                    "t",
                    "count",
                    "crossings",
                    "case1",
                    "second_kind",
                    "lower_bound",
                    "product_zeros_right",
                    "min_product_modulus",
                ],
            );
            csv.row(&[
                coord(a.t),
                c.count.to_string(),
                c.zeros.len().to_string(),
                c.case1.len().to_string(),
                second.to_string(),
                num(c.lower_bound),
                zr.to_string(),
                num(c.min_modulus),
            ]);
            Ok(csv)
        }
    }
}

fn figures(a: &FigureArgs, comment: String) -> CliResult<Csv> {
    let center = a.center.unwrap_or(if a.which == 2 { 2000.0 } else { 114.0 });
    if !(a.halfwidth > 0.0) || center - a.halfwidth <= 0.0 {
        return Err(config_error("window must be non-empty and above t = 0"));
    }
    if a.x.is_empty() {
        return Err(config_error("--x needs at least one value"));
    }
    let ts = grid(center - a.halfwidth, center + a.halfwidth, a.step)?;
    let tables = a.x.iter().map(|&x| table_for(x)).collect::<CliResult<Vec<_>>>()?;
    let (base, per_x) = match a.which {
        1 | 2 => ("two_abs_zeta", "abs_zetax"),
        3 => ("s_of_t", "minus_fx_over_pi"),
        _ => ("n_of_t", "fx_over_2pi_plus_1"),
    };
    let mut header = vec!["t".to_string(), base.to_string()];
    header.extend(a.x.iter().map(|x| format!("{per_x}_{x}")));
    let rows = ts
        .par_iter()
        .map(|&t| -> zetax_core::Result<Vec<String>> {
            let mut row = vec![coord(t)];
            match a.which {
                1 | 2 => {
                    row.push(num(2.0 * zeta_em(Complex64::new(0.5, t))?.norm()));
                    for tb in &tables {
                        row.push(num(zeta_x(Complex64::new(0.5, t), tb)?.norm()));
                    }
                }
                3 => {
                    row.push(num(s_of_t(t)?));
                    for tb in &tables {
                        row.push(num(-f_x(t, tb) / PI));
                    }
                }
                _ => {
                    row.push(n_of_t(t)?.to_string());
                    for tb in &tables {
                        row.push(num(big_f_x(t, tb) / (2.0 * PI) + 1.0));
                    }
                }
            }
            Ok(row)
        })
        .collect::<zetax_core::Result<Vec<_>>>()?;
    let header: Vec<&str> = header.iter().map(String::as_str).collect();
    let mut csv = Csv::new(comment, &header);
    for r in rows {
        csv.row(&r);
    }
    Ok(csv)
}

fn ratio(cli: &Cli, a: &RatioArgs, comment: String) -> CliResult<Csv> {
    if a.pair == 0 {
        return Err(config_error("--pair is 1-based"));
    }
    if a.grid < 2 {
        return Err(config_error("--grid must be at least 2"));
    }
    for &x in &a.x {
        check_x(x)?;
    }
    let mut height = 50.0;
    let cache = loop {
        let c = zero_cache(&cli.common, Target::Zeta, 0.0, height, CACHE_TOL)?;
        if c.len() > a.pair {
            break c;
        }
        height *= 2.0;
        if height > MAX_HEIGHT {
            return Err(CliError::Config(format!("pair {} lies beyond the supported height", a.pair)));
        }
    };
    let pair = (cache.ordinates[a.pair - 1], cache.ordinates[a.pair]);
    let report = zero_free_interval_check(pair, a.eps, &a.x, &cache)?;
    let (lo, hi) = report.interval;
    let mut csv = Csv::new(
        format!("{comment} interval=[{lo:.10}, {hi:.10}]"),
        &["x", "applicable", "margin", "deviation", "zeros_inside", "ratio_deviation"],
    );
    for row in &report.rows {
        let dev = ratio_deviation(lo, hi, &table_for(row.x)?, a.grid)?;
        csv.row(&[
            format!("{}", row.x),
            row.applicable.to_string(),
            num(row.margin),
            num(row.deviation),
            row.zeros_inside.to_string(),
            num(dev),
        ]);
    }
    Ok(csv)
}
