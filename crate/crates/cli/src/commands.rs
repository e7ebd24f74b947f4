//! One function per subcommand: parse the expression arguments, call the
//! core operation, and shape the outcome into a [`Report`].

use distcalc_core::catalog::verify_growth;
use distcalc_core::distribution::analysis::{
    ft_seminorm_check, probe_separation, recover_point, recover_point_box,
    regularity_witness, ProbeFamily, SeparationVerdict,
};
use distcalc_core::distribution::checks::{gpf_check, ibp_check};
use distcalc_core::distribution::{derivative, fourier, pair_with_error};
use distcalc_core::report::{Report, Value};
use distcalc_core::schwartz::seminorm;
use distcalc_core::{CatalogFunction, Distribution, TestFunction};

use crate::elaborate::{as_catalog, as_distribution, as_testfn, fmt_f64, format_dist};
use crate::error::{unsupported, Result};
use crate::expr::parse;

fn dist_arg(text: &str) -> Result<Distribution> {
    as_distribution(&parse(text)?)
}

fn testfn_arg(text: &str) -> Result<TestFunction> {
    as_testfn(&parse(text)?)
}

fn catalog_arg(text: &str) -> Result<CatalogFunction> {
    as_catalog(&parse(text)?)
}

pub fn cmd_eval(dist: &str, testfn: &str, tol: f64) -> Result<Report> {
    let l = dist_arg(dist)?;
    let phi = testfn_arg(testfn)?;
    let (value, err) = pair_with_error(&l, &phi, tol)?;
    Ok(Report::new("eval")
        .input("distribution", format_dist(&l))
        .input("testfn", testfn)
        .tolerance("pairing", tol)
        .summarize("value", value)
        .summarize("abs_err_bound", err))
}

pub fn cmd_ft(dist: &str) -> Result<Report> {
    let l = dist_arg(dist)?;
    let ft = fourier(&l)?;
    Ok(Report::new("ft")
        .input("operand", format_dist(&l))
        .summarize("result", format_dist(&ft))
        .summarize("atoms", ft.atoms().len()))
}

pub fn cmd_diff(dist: &str, order: usize) -> Result<Report> {
    let l = dist_arg(dist)?;
    let d = derivative(&l, order)?;
    Ok(Report::new("diff")
        .input("operand", format_dist(&l))
        .input("order", order)
        .summarize("result", format_dist(&d))
        .summarize("atoms", d.atoms().len()))
}

pub fn cmd_recover(
    dist: &str,
    at: f64,
    mollifier: Option<&str>,
    ks: &[f64],
    window: bool,
    tol: f64,
) -> Result<Report> {
    let l = dist_arg(dist)?;
    let (report, method, moll_text) = if window {
        if mollifier.is_some() {
            return Err(unsupported("--window and --mollifier are mutually exclusive"));
        }
        (recover_point_box(&l, at, ks, tol)?, "window", String::new())
    } else {
        let text = mollifier
            .ok_or_else(|| unsupported("recover needs --mollifier (or --window)"))?;
        let phi = testfn_arg(text)?;
        (
            recover_point(&l, at, &phi, ks, tol)?,
            "mollifier",
            text.to_string(),
        )
    };
    let mut out = Report::new("recover")
        .input("distribution", format_dist(&l))
        .input("at", at)
        .input("method", method);
    if !moll_text.is_empty() {
        out = out.input("mollifier", moll_text);
    }
    out = out
        .tolerance("pairing", tol)
        .columns(&["k", "estimate_re", "estimate_im", "abs_err"]);
    for step in &report.steps {
        out = out.row(vec![
            Value::Real(step.k),
            Value::Real(step.estimate.re),
            Value::Real(step.estimate.im),
            Value::Real(step.err),
        ]);
    }
    Ok(out.summarize("extrapolated", report.extrapolated))
}

pub fn cmd_witness(
    dist: &str,
    at: f64,
    mollifier: &str,
    ks: &[f64],
    tol: f64,
) -> Result<Report> {
    let l = dist_arg(dist)?;
    let phi = testfn_arg(mollifier)?;
    let report = regularity_witness(&l, at, &phi, ks, tol)?;
    let mut out = Report::new("witness")
        .input("distribution", format_dist(&l))
        .input("at", at)
        .input("mollifier", mollifier)
        .tolerance("pairing", tol)
        .columns(&["k", "value_re", "value_im", "magnitude"]);
    for step in &report.steps {
        out = out.row(vec![
            Value::Real(step.k),
            Value::Real(step.value.re),
            Value::Real(step.value.im),
            Value::Real(step.magnitude),
        ]);
    }
    Ok(out.summarize("growth_exponent", report.growth_exponent))
}

pub fn cmd_probe(
    left: &str,
    right: &str,
    family: &str,
    params: &[f64],
    tol: f64,
) -> Result<Report> {
    let fam = match family {
        "gauss" | "gauss_modulated" => ProbeFamily::GaussModulated,
        "exp" | "fourier_exponential" => ProbeFamily::FourierExponential,
        "box" | "box_window" => ProbeFamily::BoxWindow,
        other => {
            return Err(unsupported(format!(
                "unknown probe family `{other}`; use gauss, exp, or box"
            )))
        }
    };
    if params.is_empty() {
        return Err(unsupported("probe needs --omegas or --params"));
    }
    let l = dist_arg(left)?;
    let m = dist_arg(right)?;
    let report = probe_separation(&l, &m, fam, params, tol)?;
    let boxed = fam == ProbeFamily::BoxWindow;
    let mut out = Report::new("probe")
        .input("left", format_dist(&l))
        .input("right", format_dist(&m))
        .input("family", family)
        .tolerance("pairing", tol)
        .columns(if boxed {
            &["a", "b", "gap", "err", "separated"][..]
        } else {
            &["param", "gap", "err", "separated"][..]
        });
    for item in &report.items {
        let mut row: Vec<Value> = item.param.iter().map(|&p| Value::Real(p)).collect();
        row.extend([
            Value::Real(item.gap),
            Value::Real(item.err),
            Value::Bool(item.separated),
        ]);
        out = out.row(row);
    }
    Ok(match &report.verdict {
        SeparationVerdict::Separated { param, gap } => {
            let witness: Vec<String> = param.iter().map(|&p| fmt_f64(p)).collect();
            out.summarize("verdict", "separated")
                .summarize("witness_param", witness.join(","))
                .summarize("gap", *gap)
        }
        SeparationVerdict::Indistinguishable { max_gap } => out
            .summarize("verdict", "indistinguishable")
            .summarize("witness_param", Value::Null)
            .summarize("gap", *max_gap),
    })
}

pub fn cmd_seminorm(testfn: &str, m: u32, n: u32) -> Result<Report> {
    let phi = testfn_arg(testfn)?;
    let v = seminorm(&phi, m, n)?;
    Ok(Report::new("seminorm")
        .input("testfn", testfn)
        .input("m", m)
        .input("n", n)
        .summarize("value", v.value)
        .summarize("argmax_estimate", v.argmax_estimate))
}

pub fn cmd_check_gpf(f: &str, testfn: &str, tol: f64) -> Result<Report> {
    let func = catalog_arg(f)?;
    let phi = testfn_arg(testfn)?;
    let report = gpf_check(&func, &phi, tol)?;
    Ok(Report::new("check.gpf")
        .input("f", func.name())
        .input("testfn", testfn)
        .tolerance("quadrature", tol)
        .summarize("lhs", report.lhs)
        .summarize("rhs", report.rhs)
        .summarize("residual", report.residual)
        .summarize("pass", report.residual <= 2.0 * tol))
}

pub fn cmd_check_ibp(f: &str, testfn: &str, tol: f64) -> Result<Report> {
    let func = catalog_arg(f)?;
    let phi = testfn_arg(testfn)?;
    let report = ibp_check(&func, &phi, tol)?;
    Ok(Report::new("check.ibp")
        .input("f", func.name())
        .input("testfn", testfn)
        .tolerance("quadrature", tol)
        .summarize("lhs", report.lhs)
        .summarize("rhs", report.rhs)
        .summarize("residual", report.residual)
        .summarize("pass", report.residual <= 2.0 * tol))
}

pub fn cmd_check_ftic(testfn: &str, ks: &[f64], cap: u32, tol: f64) -> Result<Report> {
    let phi = testfn_arg(testfn)?;
    let report = ft_seminorm_check(&phi, ks, cap, tol)?;
    let mut names = vec!["k".to_string()];
    for m in 0..=cap {
        for n in 0..=cap {
            names.push(format!("C{m}{n}_image"));
        }
    }
    names.extend([
        "stated_lhs".to_string(),
        "stated_rhs".to_string(),
        "stated_bound_holds".to_string(),
    ]);
    let columns: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let mut out = Report::new("check.ftic")
        .input("testfn", testfn)
        .input("cap", cap)
        .tolerance("transform", tol)
        .columns(&columns);
    for step in &report.steps {
        let mut row = vec![Value::Real(step.k)];
        row.extend(step.image_seminorms.iter().map(|&v| Value::Real(v)));
        row.extend([
            Value::Real(step.stated_lhs),
            Value::Real(step.stated_rhs),
            Value::Bool(step.stated_bound_holds),
        ]);
        out = out.row(row);
    }
    Ok(out
        .summarize("monotone", report.monotone)
        .summarize(
            "stated_bound_holds_everywhere",
            report.stated_bound_holds_everywhere,
        ))
}

pub fn cmd_check_growth(f: &str) -> Result<Report> {
    let func = catalog_arg(f)?;
    let report = verify_growth(&func)?;
    let mut out = Report::new("check.growth")
        .input("f", func.name())
        .columns(&["R", "lhs", "rhs"]);
    for ((&r, &lhs), &rhs) in report
        .r_values
        .iter()
        .zip(&report.lhs)
        .zip(&report.rhs)
    {
        out = out.row(vec![Value::Real(r), Value::Real(lhs), Value::Real(rhs)]);
    }
    Ok(out.summarize("pass", report.pass))
}
