//! Subcommand bodies. Each writes a CSV table and reports whether every check passed.

use std::io::Write;

use liouville::goldberg::{nested_commutator, verify_three_letter, verify_two_letter, Letter2, CoeffReport};
use liouville::oscillator::{
    check_generator_relations, eval_f, f_closed_form, form_times_generator, liouvillian,
    map_matrix, matrix_log_principal, rotation_angle, shadow_definiteness, shadow_energy,
    shadow_form, spectral_radius, stability_classify, step, trajectory, trajectory_exact,
};
use liouville::{Error, PhaseState, Rational, SchemeId, Word};
use num_traits::{Signed, Zero};

use crate::config::{Mode, RunConfig, XSample};
use crate::format::{sci, sci_rational, short};
use crate::CliError;

/// Entrywise tolerance for the logarithm against `x F(x) L`, on top of the
/// `--tol` truncation of `F`.
pub const LOG_TOL: f64 = 1e-12;
/// Tolerance for partial sums of `F` against its closed form.
pub const F_CLOSED_TOL: f64 = 1e-10;
/// Bit budget for exact trajectories before they are truncated.
pub const EXACT_MAX_BITS: u64 = 1 << 12;

/// Did every mathematical check pass?
pub type Passed = bool;

fn header<W: Write>(w: &mut W, cols: &[&str]) -> std::io::Result<()> {
    writeln!(w, "{}", cols.join(","))
}

fn flag(b: bool) -> &'static str {
    if b {
        "pass"
    } else {
        "fail"
    }
}

pub fn cmd_coeffs<W: Write>(cfg: &RunConfig, letters: u8, w: &mut W) -> Result<Passed, CliError> {
    let reports: Vec<CoeffReport> = match letters {
        2 => verify_two_letter(cfg.max_degree)?,
        _ => verify_three_letter(cfg.max_degree)?,
    };
    header(w, &["word", "closed_form", "oracle", "match"])?;
    for r in &reports {
        writeln!(w, "{},{},{},{}", r.label, r.closed_form, r.oracle, r.matches)?;
    }
    Ok(reports.iter().all(|r| r.matches))
}

struct VerifyRows<'a, W: Write> {
    w: &'a mut W,
    all: bool,
}

impl<W: Write> VerifyRows<'_, W> {
    fn row(&mut self, name: &str, x: &str, residual: &str, pass: bool) -> std::io::Result<()> {
        self.all &= pass;
        writeln!(self.w, "{name},{x},{residual},{}", flag(pass))
    }

    fn exact(&mut self, name: &str, x: &str, pass: bool) -> std::io::Result<()> {
        self.row(name, x, "exact", pass)
    }
}

pub fn cmd_verify<W: Write>(cfg: &RunConfig, w: &mut W) -> Result<Passed, CliError> {
    header(w, &["invariant", "x", "residual", "pass"])?;
    let mut rows = VerifyRows { w, all: true };

    for c in check_generator_relations::<Rational>() {
        rows.exact(c.name, "", c.holds)?;
    }
    let word = |l: Letter2| Word::letter(l.index());
    let two = Rational::from_integer(2.into());
    let closure_a = nested_commutator(Letter2::A, Letter2::A, Letter2::B)?;
    let closure_b = nested_commutator(Letter2::B, Letter2::A, Letter2::B)?;
    rows.exact(
        "word_rewrite_[A,[A,B]]=2A",
        "",
        closure_a.len() == 1 && closure_a.get(&word(Letter2::A)) == Some(&two),
    )?;
    rows.exact(
        "word_rewrite_[B,[A,B]]=-2B",
        "",
        closure_b.len() == 1 && closure_b.get(&word(Letter2::B)) == Some(&-two),
    )?;

    let scheme = cfg.scheme;
    let s0 = PhaseState::new(cfg.p0.clone(), cfg.q0.clone());
    for XSample { exact: xq, float: x } in &cfg.xs {
        let xs = short(*x);
        rows.exact("det_unit", &xs, map_matrix(scheme, xq).det() == num_traits::one())?;
        rows.exact("ML_antisymmetric", &xs, form_times_generator(scheme, xq).is_antisymmetric())?;
        let s1 = step(scheme, &s0, xq);
        rows.exact(
            "shadow_conserved_one_step",
            &xs,
            shadow_energy(&s1, scheme, xq) == shadow_energy(&s0, scheme, xq),
        )?;
        let want = Rational::from_integer(2.into()).cmp(&xq.abs());
        rows.exact("shadow_definiteness", &xs, shadow_definiteness(scheme, xq) == want)?;

        match eval_f(*x, cfg.rel_tol) {
            Ok(f) => {
                let closed = f_closed_form(*x)?;
                let d = (f - closed).abs();
                rows.row("F_closed_form", &xs, &format!("{d:.3e}"), d <= F_CLOSED_TOL)?;
                let expected = liouvillian(scheme, x).scale(&(x * f));
                match matrix_log_principal(&map_matrix(scheme, x)) {
                    Ok(g) => {
                        // the truncation of F enters the comparison at relative size rel_tol
                        let scale = expected.m.iter().flatten().fold(0.0f64, |a, v| a.max(v.abs()));
                        let allowed = LOG_TOL + cfg.rel_tol * scale;
                        let d = g.max_abs_diff(&expected);
                        rows.row("log_vs_generator", &xs, &format!("{d:.3e}"), d <= allowed)?;
                    }
                    Err(e) => rows.row("log_vs_generator", &xs, &e.to_string(), false)?,
                }
            }
            Err(Error::Divergent { .. }) => {
                rows.exact("F_divergence_signaled", &xs, x.abs() >= 2.0)?;
                let no_log = matches!(
                    matrix_log_principal(&map_matrix(scheme, x)),
                    Err(Error::NoEllipticLog { .. })
                );
                rows.exact("no_elliptic_log", &xs, no_log)?;
            }
            Err(e) => return Err(e.into()),
        }
    }
    Ok(rows.all)
}

pub fn cmd_simulate<W: Write>(cfg: &RunConfig, w: &mut W) -> Result<Passed, CliError> {
    let scheme = cfg.scheme;
    let xq = &cfg.xs[0].exact;
    header(w, &["step", "p", "q", "shadow_energy", "p2_plus_q2"])?;
    match cfg.mode {
        Mode::Exact => {
            let s0 = PhaseState::new(cfg.p0.clone(), cfg.q0.clone());
            let (states, err) = trajectory_exact(&s0, scheme, xq, cfg.n_steps, EXACT_MAX_BITS);
            for (n, s) in states.iter().enumerate() {
                writeln!(
                    w,
                    "{n},{},{},{},{}",
                    sci_rational(&s.p),
                    sci_rational(&s.q),
                    sci_rational(&shadow_energy(s, scheme, xq)),
                    sci_rational(&s.norm_sqr())
                )?;
            }
            if let Some(e) = err {
                warn_truncated(w, &e, 3)?;
            }
        }
        Mode::Float => {
            let x = cfg.xs[0].float;
            let s0 = PhaseState::new(to_f64(&cfg.p0), to_f64(&cfg.q0));
            for (n, s) in trajectory(&s0, scheme, &x, cfg.n_steps).iter().enumerate() {
                writeln!(
                    w,
                    "{n},{},{},{},{}",
                    sci(s.p),
                    sci(s.q),
                    sci(shadow_energy(s, scheme, &x)),
                    sci(s.norm_sqr())
                )?;
            }
        }
    }
    Ok(true)
}

fn warn_truncated<W: Write>(w: &mut W, e: &Error, empty_cols: usize) -> std::io::Result<()> {
    eprintln!("warning: {e}; trajectory truncated");
    writeln!(w, "warning,{e}; trajectory truncated{}", ",".repeat(empty_cols))
}

fn to_f64(r: &Rational) -> f64 {
    liouville::oscillator::rational_to_f64(r)
}

pub fn cmd_sweep<W: Write>(cfg: &RunConfig, w: &mut W) -> Result<Passed, CliError> {
    header(w, &["x", "trace", "stability", "spectral_radius", "shadow_det", "F", "theta"])?;
    for XSample { exact: xq, float: x } in &cfg.xs {
        let m = map_matrix(cfg.scheme, xq);
        let f = match eval_f(*x, cfg.rel_tol) {
            Ok(v) => short(v),
            Err(Error::Divergent { .. }) => "DIVERGENT".to_string(),
            Err(e) => return Err(e.into()),
        };
        let theta = rotation_angle(*x).map(short).unwrap_or_default();
        writeln!(
            w,
            "{},{},{},{},{},{},{}",
            short(*x),
            short(to_f64(&m.trace())),
            stability_classify(cfg.scheme, *x),
            short(spectral_radius(*x)),
            short(to_f64(&shadow_form(cfg.scheme, xq).det())),
            f,
            theta
        )?;
    }
    Ok(true)
}

pub fn cmd_shadow<W: Write>(cfg: &RunConfig, w: &mut W) -> Result<Passed, CliError> {
    header(
        w,
        &[
            "step",
            "first_p",
            "first_q",
            "first_residual",
            "second_p",
            "second_q",
            "second_residual",
        ],
    )?;
    let xq = &cfg.xs[0].exact;
    match cfg.mode {
        Mode::Exact => {
            let s0 = PhaseState::new(cfg.p0.clone(), cfg.q0.clone());
            let runs: Vec<_> = SchemeId::ALL
                .iter()
                .map(|&sc| trajectory_exact(&s0, sc, xq, cfg.n_steps, EXACT_MAX_BITS))
                .collect();
            let len = runs.iter().map(|(s, _)| s.len()).min().unwrap_or(0);
            let mut conserved = true;
            for n in 0..len {
                let mut cells = vec![n.to_string()];
                for (&sc, (states, _)) in SchemeId::ALL.iter().zip(&runs) {
                    let s = &states[n];
                    let r = shadow_energy(s, sc, xq) - shadow_energy(&s0, sc, xq);
                    conserved &= r.is_zero();
                    cells.extend([sci_rational(&s.p), sci_rational(&s.q), sci_rational(&r)]);
                }
                writeln!(w, "{}", cells.join(","))?;
            }
            if let Some(e) = runs.iter().find_map(|(_, e)| e.clone()) {
                warn_truncated(w, &e, 5)?;
            }
            Ok(conserved)
        }
        Mode::Float => {
            let x = cfg.xs[0].float;
            let s0 = PhaseState::new(to_f64(&cfg.p0), to_f64(&cfg.q0));
            let runs: Vec<_> =
                SchemeId::ALL.iter().map(|&sc| trajectory(&s0, sc, &x, cfg.n_steps)).collect();
            for n in 0..=cfg.n_steps {
                let mut cells = vec![n.to_string()];
                for (&sc, states) in SchemeId::ALL.iter().zip(&runs) {
                    let s = &states[n];
                    let r = shadow_energy(s, sc, &x) - shadow_energy(&s0, sc, &x);
                    cells.extend([sci(s.p), sci(s.q), sci(r)]);
                }
                writeln!(w, "{}", cells.join(","))?;
            }
            Ok(true)
        }
    }
}
