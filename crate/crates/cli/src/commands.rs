use pball_core::ball::{self, phi_limit_check, phi_quad, PhiLimitCandidate, Suite};
use pball_core::series::DEFAULT_ORDER;
use pball_core::{assemble_expansion, ball_integral, limit_value, Error, PExponent};

use crate::output::{Cell, Record, Status};

#[derive(Debug)]
pub enum CliError {
    /// Bad arguments or values outside a function's domain (exit 2).
    Usage(String),
    /// A computation failed to reach its tolerance (exit 1).
    Numeric(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Domain(_) | Error::Pole { .. } => CliError::Usage(e.to_string()),
            _ => CliError::Numeric(e.to_string()),
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn exponent(p: f64) -> Result<PExponent> {
    Ok(PExponent::new(p)?)
}

#[derive(Debug, Clone, Copy, clap::ValueEnum)]
pub enum Function {
    Sinp,
    Cosp,
    Tanp,
    Sincp,
    Arcsinp,
    Pip,
}

pub fn eval(function: Function, p: f64, x: Option<f64>) -> Result<Record> {
    let pe = exponent(p)?;
    let need_x = || x.ok_or_else(|| CliError::Usage("--x is required for this function".into()));
    let (name, value) = match function {
        Function::Pip => ("pip", pe.pi_p()),
        Function::Sinp => ("sinp", pe.try_sin_cos_p(need_x()?)?.0),
        Function::Cosp => ("cosp", pe.try_sin_cos_p(need_x()?)?.1),
        Function::Tanp => ("tanp", pe.tan_p(need_x()?)?),
        Function::Sincp => {
            let x = need_x()?;
            pe.try_sin_cos_p(x)?;
            ("sincp", pe.sinc_p(x))
        }
        Function::Arcsinp => ("arcsinp", pe.arcsin_p_signed(need_x()?)?),
    };
    let mut r = Record::new("eval", vec!["function", "p", "x", "value"]);
    r.param("function", name);
    r.param("p", p);
    let xc = x.filter(|_| !matches!(function, Function::Pip)).map_or(Cell::from(""), Cell::from);
    if let Cell::Num(x) = xc {
        r.param("x", x);
    }
    r.push(vec![name.into(), p.into(), xc, value.into()]);
    Ok(r)
}

pub fn integral(p: f64, q: f64, n: u32, tol: f64) -> Result<Record> {
    let pe = exponent(p)?;
    let quad = phi_quad(&pe, n, q, tol)?;
    let scaled = q.powf(n as f64 + 1.0 / p) * quad.value;
    let mut r = Record::new(
        "integral",
        vec!["p", "q", "n", "raw", "scaled", "err_est", "tail_remainder", "subdivisions"],
    );
    r.param("p", p);
    r.param("q", q);
    r.param("n", n);
    r.param("tol", tol);
    r.push(vec![
        p.into(),
        q.into(),
        n.into(),
        quad.value.into(),
        scaled.into(),
        quad.err_est.into(),
        quad.tail_remainder.into(),
        quad.subdivisions.into(),
    ]);
    Ok(r)
}

fn check_q_list(q_list: &[f64]) -> Result<()> {
    if q_list.is_empty() {
        return Err(CliError::Usage("q list is empty".into()));
    }
    if let Some(q) = q_list.iter().find(|q| !(**q > 1.0 && q.is_finite())) {
        return Err(CliError::Usage(format!("every q must be a finite number above 1, got {q}")));
    }
    Ok(())
}

pub fn limit_table(p: f64, q_list: &[f64], tol: f64) -> Result<Record> {
    let pe = exponent(p)?;
    check_q_list(q_list)?;
    let limit = limit_value(&pe);
    let g1 = assemble_expansion(&pe, DEFAULT_ORDER)?.regrouped()[1];
    let mut r = Record::new("limit-table", vec!["q", "I_p", "L_p", "gap", "gap_q", "g_1"]);
    r.param("p", p);
    r.param("tol", tol);
    for &q in q_list {
        let v = ball_integral(&pe, q, tol)?.value;
        let gap = v - limit;
        r.push(vec![q.into(), v.into(), limit.into(), gap.into(), (gap * q).into(), g1.into()]);
    }
    Ok(r)
}

pub fn expand(p: f64, order: usize, q: f64, tol: f64) -> Result<Record> {
    let pe = exponent(p)?;
    let e = assemble_expansion(&pe, DEFAULT_ORDER)?;
    if order > e.stable_order() {
        return Err(CliError::Usage(format!(
            "order must be at most {}, got {order}",
            e.stable_order()
        )));
    }
    let reference = ball_integral(&pe, q, tol)?.value;
    let mut r = Record::new("expand", vec!["m", "g_m", "partial_sum", "reference", "residual"]);
    r.param("p", p);
    r.param("q", q);
    r.param("order", order);
    r.param("tol", tol);
    for m in 0..=order {
        let partial = e.evaluate(q, m)?;
        r.push(vec![
            m.into(),
            e.regrouped()[m].into(),
            partial.into(),
            reference.into(),
            (reference - partial).into(),
        ]);
    }
    Ok(r)
}

pub fn verify(suite: &str, p: f64, samples: usize) -> Result<Record> {
    let pe = exponent(p)?;
    if samples == 0 {
        return Err(CliError::Usage("samples must be at least 1".into()));
    }
    let reports = if suite == "all" {
        ball::verify_all(&pe, samples)?
    } else {
        let s = Suite::from_name(suite).ok_or_else(|| {
            let names: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
            CliError::Usage(format!("unknown suite {suite:?}; expected one of {}, all", names.join(", ")))
        })?;
        ball::run_suite(s, &pe, samples)?
    };
    let mut r = Record::new(
        "verify",
        vec!["check", "grid", "points", "max_slack", "violations", "first_violation", "status"],
    );
    r.param("suite", suite);
    r.param("p", p);
    r.param("samples", samples);
    let mut all_passed = true;
    for rep in &reports {
        all_passed &= rep.passed();
        let first = rep.violations.first().map_or(Cell::from(""), |v| Cell::from(v.x));
        r.push(vec![
            rep.suite.clone().into(),
            rep.grid.clone().into(),
            rep.points.into(),
            rep.max_slack.into(),
            rep.violations.len().into(),
            first,
            if rep.passed() { "pass" } else { "fail" }.into(),
        ]);
    }
    r.status = if all_passed { Status::Pass } else { Status::Fail };
    Ok(r)
}

pub fn phi_limit(p: f64, n: u32, q_list: &[f64], rel_tol: f64) -> Result<Record> {
    let pe = exponent(p)?;
    check_q_list(q_list)?;
    let rep = phi_limit_check(&pe, n, q_list, rel_tol)?;
    let mut r = Record::new("phi-limit", vec!["q", "phi", "scaled", "stated", "derivative"]);
    r.param("p", p);
    r.param("n", n);
    r.param("rel_tol", rel_tol);
    let closer = match rep.closer {
        PhiLimitCandidate::Stated => "stated",
        PhiLimitCandidate::Derivative => "derivative",
    };
    r.param("closer", closer);
    for row in &rep.rows {
        r.push(vec![
            row.q.into(),
            row.phi.into(),
            row.scaled.into(),
            rep.stated.into(),
            rep.derivative.into(),
        ]);
    }
    Ok(r)
}
