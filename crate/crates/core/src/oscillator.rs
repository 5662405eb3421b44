//! Splitting integrators for `H = (p^2 + q^2)/2` in the 2x2 matrix picture.
//!
//! The kicks are `1 + xA` and `1 + xB` with
//! `A = [[0, 0], [1, 0]]`, `B = [[0, -1], [0, 0]]`. Since `A^2 = B^2 = 0` these
//! equal `exp(xA)`, `exp(xB)`, so the one-step maps are exact products of
//! exponentials. Everything that is an algebraic identity is generic over
//! [`Scalar`] and can run in exact rationals; series sums, logarithms and
//! spectra need a [`Real`].

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{Mat2, PhaseState};
use crate::scalar::{half, int, Real, Scalar};
use crate::Rational;

/// Splitting order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SchemeId {
    /// `(1 + xA)(1 + xB)`
    FirstOrder,
    /// `(1 + (x/2)B)(1 + xA)(1 + (x/2)B)`
    SecondOrder,
}

impl SchemeId {
    pub const ALL: [SchemeId; 2] = [SchemeId::FirstOrder, SchemeId::SecondOrder];
}

impl fmt::Display for SchemeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SchemeId::FirstOrder => "first",
            SchemeId::SecondOrder => "second",
        })
    }
}

impl FromStr for SchemeId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "first" | "1" => Ok(SchemeId::FirstOrder),
            "second" | "2" => Ok(SchemeId::SecondOrder),
            other => Err(Error::InvalidArgument(format!("unknown scheme {other:?}"))),
        }
    }
}

/// Conserved quadratic form `E = (p q) M (p q)^T`.
#[derive(Clone, Debug, PartialEq)]
pub struct ShadowForm<T> {
    m: Mat2<T>,
}

impl<T: Scalar> ShadowForm<T> {
    /// Fails unless `m` is exactly symmetric.
    pub fn new(m: Mat2<T>) -> Result<Self> {
        if !m.is_symmetric() {
            return Err(Error::InvalidArgument("shadow form must be symmetric".into()));
        }
        Ok(ShadowForm { m })
    }

    pub fn matrix(&self) -> &Mat2<T> {
        &self.m
    }

    pub fn energy(&self, s: &PhaseState<T>) -> T {
        self.m.quadratic_form(s)
    }

    pub fn det(&self) -> T {
        self.m.det()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StabilityClass {
    Elliptic,
    Parabolic,
    Hyperbolic,
}

impl fmt::Display for StabilityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StabilityClass::Elliptic => "Elliptic",
            StabilityClass::Parabolic => "Parabolic",
            StabilityClass::Hyperbolic => "Hyperbolic",
        })
    }
}

/// `A = [[0, 0], [1, 0]]`, the drift `q += x p`.
pub fn generator_a<T: Scalar>() -> Mat2<T> {
    Mat2::new(T::zero(), T::zero(), T::one(), T::zero())
}

/// `B = [[0, -1], [0, 0]]`, the kick `p -= x q`.
pub fn generator_b<T: Scalar>() -> Mat2<T> {
    Mat2::new(T::zero(), -T::one(), T::zero(), T::zero())
}

/// `p' = p - x q`, `q' = q + x p'`.
pub fn step_first_order<T: Scalar>(s: &PhaseState<T>, x: &T) -> PhaseState<T> {
    let p = s.p.clone() - x.clone() * s.q.clone();
    let q = s.q.clone() + x.clone() * p.clone();
    PhaseState { p, q }
}

/// Half kick, drift, half kick.
pub fn step_second_order<T: Scalar>(s: &PhaseState<T>, x: &T) -> PhaseState<T> {
    let hx = x.clone() * half::<T>();
    let p1 = s.p.clone() - hx.clone() * s.q.clone();
    let q = s.q.clone() + x.clone() * p1.clone();
    let p = p1 - hx * q.clone();
    PhaseState { p, q }
}

pub fn step<T: Scalar>(scheme: SchemeId, s: &PhaseState<T>, x: &T) -> PhaseState<T> {
    match scheme {
        SchemeId::FirstOrder => step_first_order(s, x),
        SchemeId::SecondOrder => step_second_order(s, x),
    }
}

/// One-step matrix, written in closed form.
///
/// First order: `[[1, -x], [x, 1 - x^2]]`;
/// second order: `[[1 - x^2/2, -x + x^3/4], [x, 1 - x^2/2]]`.
pub fn map_matrix<T: Scalar>(scheme: SchemeId, x: &T) -> Mat2<T> {
    let one = T::one();
    let x2 = x.clone() * x.clone();
    match scheme {
        SchemeId::FirstOrder => Mat2::new(one.clone(), -x.clone(), x.clone(), one - x2),
        SchemeId::SecondOrder => {
            let diag = one - x2.clone() * half::<T>();
            let off = -x.clone() + x2 * x.clone() / int(4);
            Mat2::new(diag.clone(), off, x.clone(), diag)
        }
    }
}

/// The same map as a literal product of the kick factors.
pub fn map_matrix_from_factors<T: Scalar>(scheme: SchemeId, x: &T) -> Mat2<T> {
    let id = Mat2::<T>::identity();
    let kick = |k: T| &id + &generator_b::<T>().scale(&k);
    let drift = |k: T| &id + &generator_a::<T>().scale(&k);
    match scheme {
        SchemeId::FirstOrder => &drift(x.clone()) * &kick(x.clone()),
        SchemeId::SecondOrder => {
            let hx = x.clone() * half::<T>();
            &(&kick(hx.clone()) * &drift(x.clone())) * &kick(hx)
        }
    }
}

/// Effective generator direction without the `F(x)` factor.
///
/// `L1 = A + B + (x/2)[A, B] = [[x/2, -1], [1, -x/2]]`,
/// `L2 = A + (1 - x^2/4) B = [[0, -(1 - x^2/4)], [1, 0]]`.
pub fn liouvillian<T: Scalar>(scheme: SchemeId, x: &T) -> Mat2<T> {
    let a = generator_a::<T>();
    let b = generator_b::<T>();
    match scheme {
        SchemeId::FirstOrder => {
            let ab = a.commutator(&b);
            &(&a + &b) + &ab.scale(&(x.clone() * half::<T>()))
        }
        SchemeId::SecondOrder => {
            let c = T::one() - x.clone() * x.clone() / int(4);
            &a + &b.scale(&c)
        }
    }
}

/// `M1 = 1/2 [[1, -x/2], [-x/2, 1]]`, `M2 = 1/2 diag(1, 1 - x^2/4)`.
pub fn shadow_form<T: Scalar>(scheme: SchemeId, x: &T) -> ShadowForm<T> {
    let h = half::<T>();
    let m = match scheme {
        SchemeId::FirstOrder => {
            let off = -x.clone() * h.clone();
            Mat2::new(T::one(), off.clone(), off, T::one())
        }
        SchemeId::SecondOrder => {
            let c = T::one() - x.clone() * x.clone() / int(4);
            Mat2::new(T::one(), T::zero(), T::zero(), c)
        }
    };
    ShadowForm { m: m.scale(&h) }
}

pub fn shadow_energy<T: Scalar>(s: &PhaseState<T>, scheme: SchemeId, x: &T) -> T {
    shadow_form(scheme, x).energy(s)
}

/// `H = (p^2 + q^2)/2`.
pub fn true_energy<T: Scalar>(s: &PhaseState<T>) -> T {
    s.norm_sqr() * half::<T>()
}

/// The `s0, s1, ..., s_n` sequence of iterated steps.
pub fn trajectory<T: Scalar>(
    s0: &PhaseState<T>,
    scheme: SchemeId,
    x: &T,
    n_steps: usize,
) -> Vec<PhaseState<T>> {
    let mut out = Vec::with_capacity(n_steps + 1);
    out.push(s0.clone());
    for i in 0..n_steps {
        let next = step(scheme, &out[i], x);
        out.push(next);
    }
    out
}

fn rational_bits(r: &Rational) -> u64 {
    r.numer().bits().max(r.denom().bits())
}

/// Exact trajectory that stops with [`Error::RationalOverflow`] once any
/// numerator or denominator needs more than `max_bits` bits. The states
/// computed before the overflow are returned alongside the error.
pub fn trajectory_exact(
    s0: &PhaseState<Rational>,
    scheme: SchemeId,
    x: &Rational,
    n_steps: usize,
    max_bits: u64,
) -> (Vec<PhaseState<Rational>>, Option<Error>) {
    let mut out = Vec::with_capacity(n_steps + 1);
    out.push(s0.clone());
    for i in 0..n_steps {
        let next = step(scheme, &out[i], x);
        if rational_bits(&next.p).max(rational_bits(&next.q)) > max_bits {
            return (out, Some(Error::RationalOverflow { step: i + 1, limit: max_bits }));
        }
        out.push(next);
    }
    (out, None)
}

/// Exact decimal-or-fraction parsing: `"3"`, `"-1/2"`, `"2.5"`, `"1e-3"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::InvalidArgument(format!("not a rational number: {s:?}"));
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(n, d));
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty()
        || !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit())
    {
        return Err(bad());
    }
    let all: BigInt = format!("0{int_part}{frac_part}").parse().map_err(|_| bad())?;
    let scale = exp - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let mut r = if scale >= 0 {
        Rational::from_integer(all * num_traits::pow(ten, scale as usize))
    } else {
        Rational::new(all, num_traits::pow(ten, (-scale) as usize))
    };
    if neg {
        r = -r;
    }
    Ok(r)
}

// ---------------------------------------------------------------------------
// floating-point analysis

/// Partial sums of `F(x) = sum (n!)^2/(2n+1)! x^{2n}`.
///
/// Stops once the next term, together with the geometric bound on the tail
/// after it (term ratios stay below `x^2/4`), drops below `rel_tol` times the
/// running sum. Refuses `|x| >= 2`, where the series diverges.
pub fn eval_f<T: Real>(x: T, rel_tol: T) -> Result<T> {
    if rel_tol.is_nan() || rel_tol <= T::zero() {
        return Err(Error::InvalidArgument("rel_tol must be positive".into()));
    }
    let two = int::<T>(2);
    if !x.is_finite() || x.abs() >= two {
        return Err(Error::Divergent { x: x.to_f64().unwrap_or(f64::NAN) });
    }
    let x2 = x * x;
    let tail_factor = T::one() / (T::one() - x2 / int::<T>(4));
    let mut sum = T::one();
    let mut term = T::one();
    let mut n = 0i64;
    loop {
        // a_{n+1} / a_n = (n+1) / (2 (2n+3))
        term = term * x2 * int::<T>(n + 1) / (two * int::<T>(2 * n + 3));
        n += 1;
        if term * tail_factor < rel_tol * sum {
            break;
        }
        sum = sum + term;
    }
    Ok(sum)
}

/// `2 arcsin(x/2) / (x sqrt(1 - x^2/4))`, with `F(0) = 1`.
pub fn f_closed_form<T: Real>(x: T) -> Result<T> {
    let two = int::<T>(2);
    if !x.is_finite() || x.abs() >= two {
        return Err(Error::Divergent { x: x.to_f64().unwrap_or(f64::NAN) });
    }
    if x.is_zero() {
        return Ok(T::one());
    }
    let h = x / two;
    Ok(two * h.asin() / (x * (T::one() - h * h).sqrt()))
}

/// The real generator `F(x) L` whose exponential times `x` is the one-step map.
pub fn effective_generator<T: Real>(scheme: SchemeId, x: T, rel_tol: T) -> Result<Mat2<T>> {
    let f = eval_f(x, rel_tol)?;
    Ok(liouvillian(scheme, &x).scale(&f))
}

/// Real logarithm of an elliptic unit-determinant 2x2 matrix:
/// `G = theta / sin(theta) (m - tr/2 I)` with `theta = arccos(tr/2)`.
///
/// The identity maps to zero. Other matrices with `|tr| >= 2` have no real
/// logarithm with eigenvalues `+-i theta`.
pub fn matrix_log_principal<T: Real>(m: &Mat2<T>) -> Result<Mat2<T>> {
    let tr = m.trace();
    let two = int::<T>(2);
    if *m == Mat2::identity() {
        return Ok(Mat2::zero());
    }
    if !tr.is_finite() || tr.abs() >= two {
        return Err(Error::NoEllipticLog { trace: tr.to_f64().unwrap_or(f64::NAN) });
    }
    let c = tr / two;
    let theta = c.acos();
    let factor = theta / theta.sin();
    let centered = m - &Mat2::identity().scale(&c);
    Ok(centered.scale(&factor))
}

/// Classification by `x`: the trace of either map is `2 - x^2`.
///
/// `x = 0` is the identity map and counts as elliptic (bounded orbits).
pub fn stability_classify<T: Real>(_scheme: SchemeId, x: T) -> StabilityClass {
    let two = int::<T>(2);
    let ax = x.abs();
    if ax < two {
        StabilityClass::Elliptic
    } else if ax == two {
        StabilityClass::Parabolic
    } else {
        StabilityClass::Hyperbolic
    }
}

/// Largest eigenvalue modulus of the one-step map, `(x^2 - 2 + x sqrt(x^2 - 4))/2`
/// for `|x| > 2` and 1 otherwise.
pub fn spectral_radius<T: Real>(x: T) -> T {
    let ax = x.abs();
    let two = int::<T>(2);
    if ax <= two {
        return T::one();
    }
    (ax * ax - two + ax * (ax * ax - int::<T>(4)).sqrt()) / two
}

/// Rotation angle `arccos(tr/2)` of an elliptic map, `None` outside.
pub fn rotation_angle<T: Real>(x: T) -> Option<T> {
    let tr = T::one() + T::one() - x * x;
    let c = tr / int::<T>(2);
    if c.abs() <= T::one() && x.abs() < int::<T>(2) {
        Some(c.acos())
    } else {
        None
    }
}

/// `(1 / 2n) log(p_n^2 + q_n^2)` after `n` steps, renormalising every step.
pub fn log_growth_rate<T: Real>(s0: &PhaseState<T>, scheme: SchemeId, x: T, n: usize) -> T {
    let mut s = s0.clone();
    let mut log_norm = T::zero();
    for _ in 0..n {
        s = step(scheme, &s, &x);
        let r = s.norm_sqr().sqrt();
        log_norm = log_norm + r.ln();
        s = PhaseState::new(s.p / r, s.q / r);
    }
    let init = s0.norm_sqr().ln() * half::<T>();
    (log_norm + init) / int::<T>(n as i64)
}

/// Bound `4 E / lambda_min(2M)` on `p^2 + q^2` over the level set `E` of a
/// positive definite form; `None` when the form is not positive definite.
pub fn norm_bound<T: Real>(form: &ShadowForm<T>, energy: T) -> Option<T> {
    let m2 = form.matrix().scale(&int::<T>(2));
    let tr = m2.trace();
    let disc = (tr * tr / int::<T>(4) - m2.det()).max(T::zero()).sqrt();
    let lambda_min = tr / int::<T>(2) - disc;
    if lambda_min > T::zero() {
        Some(int::<T>(4) * energy / lambda_min)
    } else {
        None
    }
}

// ---------------------------------------------------------------------------
// structural identities

/// One named identity with its outcome.
#[derive(Clone, Debug, PartialEq)]
pub struct RelationCheck {
    pub name: &'static str,
    pub holds: bool,
}

/// `A^2 = 0`, `B^2 = 0`, `ABA = -A`, `BAB = -B`, `[A,[A,B]] = 2A`, `[B,[A,B]] = -2B`.
pub fn check_generator_relations<T: Scalar>() -> Vec<RelationCheck> {
    let a = generator_a::<T>();
    let b = generator_b::<T>();
    let zero = Mat2::<T>::zero();
    let ab = a.commutator(&b);
    let two = int::<T>(2);
    vec![
        RelationCheck { name: "A^2=0", holds: &a * &a == zero },
        RelationCheck { name: "B^2=0", holds: &b * &b == zero },
        RelationCheck { name: "ABA=-A", holds: &(&a * &b) * &a == -&a },
        RelationCheck { name: "BAB=-B", holds: &(&b * &a) * &b == -&b },
        RelationCheck { name: "[A,[A,B]]=2A", holds: a.commutator(&ab) == a.scale(&two) },
        RelationCheck { name: "[B,[A,B]]=-2B", holds: b.commutator(&ab) == b.scale(&-two) },
    ]
}

/// `M L` for the scheme's shadow form and generator direction.
pub fn form_times_generator<T: Scalar>(scheme: SchemeId, x: &T) -> Mat2<T> {
    shadow_form(scheme, x).matrix() * &liouvillian(scheme, x)
}

/// Sign of `det(shadow_form)` in exact arithmetic: positive inside `|x| < 2`.
pub fn shadow_definiteness(scheme: SchemeId, x: &Rational) -> std::cmp::Ordering {
    let d = shadow_form(scheme, x).det();
    if d.is_positive() {
        std::cmp::Ordering::Greater
    } else if d.is_negative() {
        std::cmp::Ordering::Less
    } else {
        std::cmp::Ordering::Equal
    }
}

/// Tolerance-free float approximation of a rational.
pub fn rational_to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}
