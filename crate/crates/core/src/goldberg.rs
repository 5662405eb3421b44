//! Closed-form Goldberg coefficients for alternating words, their collapse
//! under the nilpotent relations `AA = BB = 0`, `ABA = -A`, `BAB = -B`, and the
//! comparison against the exact free-series oracle.
//!
//! Letter conventions: two-letter series use `0 = A`, `1 = B`; three-letter
//! series use `0 = X1`, `1 = X2`, `2 = X3`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::free_series::{log_exp_product, FreeSeries, Word};
use crate::Rational;

pub const LETTER_A: usize = 0;
pub const LETTER_B: usize = 1;
pub const AB_NAMES: [&str; 2] = ["A", "B"];

pub const LETTER_X1: usize = 0;
pub const LETTER_X2: usize = 1;
pub const LETTER_X3: usize = 2;
pub const X_NAMES: [&str; 3] = ["X1", "X2", "X3"];

fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

fn ratio(num: BigInt, den: BigInt) -> Rational {
    Rational::new(num, den)
}

fn sign(n: u64) -> Rational {
    if n.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// `(n!)^2 / (2n+1)!`, the `x^{2n}` coefficient of `F`.
pub fn f_coefficient(n: u64) -> Rational {
    let f = factorial(n);
    ratio(&f * &f, factorial(2 * n + 1))
}

/// `x^{2n}` coefficient of `F2 = (1 - x^2/4) F`, written as
/// `1` for `n = 0` and `-(n-1)! n! / (2 (2n+1)!)` otherwise.
pub fn f2_coefficient(n: u64) -> Rational {
    if n == 0 {
        return Rational::one();
    }
    -ratio(factorial(n - 1) * factorial(n), BigInt::from(2) * factorial(2 * n + 1))
}

/// Coefficients of `(1 - x^2/4) F(x)` by Cauchy product, `x^{2n}` for `n <= max_n`.
pub fn damped_f_cauchy(max_n: u64) -> Vec<Rational> {
    let quarter = ratio(BigInt::one(), BigInt::from(4));
    (0..=max_n)
        .map(|n| {
            let mut c = f_coefficient(n);
            if n >= 1 {
                c -= &quarter * f_coefficient(n - 1);
            }
            c
        })
        .collect()
}

/// Letter of the two-letter alphabet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter2 {
    A,
    B,
}

impl Letter2 {
    pub fn index(self) -> usize {
        match self {
            Letter2::A => LETTER_A,
            Letter2::B => LETTER_B,
        }
    }

    fn other(self) -> Self {
        match self {
            Letter2::A => Letter2::B,
            Letter2::B => Letter2::A,
        }
    }
}

/// The strictly alternating word of `length` letters beginning with `start`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AlternatingWord2 {
    pub start: Letter2,
    pub length: usize,
}

impl AlternatingWord2 {
    pub fn new(start: Letter2, length: usize) -> Self {
        AlternatingWord2 { start, length }
    }

    pub fn word(&self) -> Word {
        let (a, b) = (self.start.index(), self.start.other().index());
        Word::from_letters((0..self.length).map(|i| if i % 2 == 0 { a } else { b }))
    }

    /// Both alternating words of every length `1..=max_len`, in graded order.
    pub fn all_up_to(max_len: usize) -> Vec<Self> {
        (1..=max_len)
            .flat_map(|len| [Letter2::A, Letter2::B].map(|s| AlternatingWord2::new(s, len)))
            .collect()
    }
}

/// Coefficient of an alternating word in `log(e^A e^B)`.
pub fn goldberg_coeff_two(w: AlternatingWord2) -> Result<Rational> {
    if w.length == 0 {
        return Err(Error::InvalidPattern("alternating word of length 0".into()));
    }
    let len = w.length as u64;
    if len % 2 == 1 {
        Ok(sign((len - 1) / 2) * f_coefficient((len - 1) / 2))
    } else {
        let n = (len - 2) / 2;
        let c = sign(n) * f_coefficient(n) / Rational::from_integer(BigInt::from(2));
        Ok(match w.start {
            Letter2::A => c,
            Letter2::B => -c,
        })
    }
}

/// Outer letters of the three-letter patterns.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OuterLetter {
    X1,
    X3,
}

impl OuterLetter {
    pub fn index(self) -> usize {
        match self {
            OuterLetter::X1 => LETTER_X1,
            OuterLetter::X3 => LETTER_X3,
        }
    }

    const BOTH: [OuterLetter; 2] = [OuterLetter::X1, OuterLetter::X3];
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PatternShape {
    /// `X2 Xi1 X2 ... Xin X2`
    Inner,
    /// `Xi1 X2 ... X2 Xi(n+1)` with the given endpoints.
    Outer { first: OuterLetter, last: OuterLetter },
}

/// A family of words of length `2n + 1` over `X1, X2, X3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ThreeWordPattern {
    pub n: usize,
    pub shape: PatternShape,
}

impl ThreeWordPattern {
    pub fn inner(n: usize) -> Self {
        ThreeWordPattern { n, shape: PatternShape::Inner }
    }

    pub fn outer(n: usize, first: OuterLetter, last: OuterLetter) -> Self {
        ThreeWordPattern { n, shape: PatternShape::Outer { first, last } }
    }

    fn validate(&self) -> Result<()> {
        match self.shape {
            PatternShape::Outer { first, last } if self.n == 0 && first != last => {
                Err(Error::InvalidPattern(
                    "an outer pattern with n = 0 is a single letter; endpoints must agree".into(),
                ))
            }
            _ => Ok(()),
        }
    }

    /// Every word in the family, one per assignment of the free `X1`/`X3` slots.
    pub fn words(&self) -> Result<Vec<Word>> {
        self.validate()?;
        let n = self.n;
        let (free_slots, fixed) = match self.shape {
            PatternShape::Inner => (n, None),
            PatternShape::Outer { first, last } if n == 0 => {
                debug_assert_eq!(first, last);
                return Ok(vec![Word::letter(first.index())]);
            }
            PatternShape::Outer { first, last } => (n - 1, Some((first, last))),
        };
        let mut out = Vec::with_capacity(1 << free_slots);
        for mask in 0..(1usize << free_slots) {
            let choice = |j: usize| OuterLetter::BOTH[(mask >> j) & 1].index();
            let mut letters = Vec::with_capacity(2 * n + 1);
            match fixed {
                None => {
                    letters.push(LETTER_X2);
                    for j in 0..n {
                        letters.push(choice(j));
                        letters.push(LETTER_X2);
                    }
                }
                Some((first, last)) => {
                    letters.push(first.index());
                    for j in 0..n - 1 {
                        letters.push(LETTER_X2);
                        letters.push(choice(j));
                    }
                    letters.push(LETTER_X2);
                    letters.push(last.index());
                }
            }
            out.push(Word::from_letters(letters));
        }
        Ok(out)
    }

    /// Every pattern whose words have length at most `max_degree`.
    pub fn all_up_to(max_degree: usize) -> Vec<Self> {
        let mut out = Vec::new();
        let mut n = 0;
        while 2 * n < max_degree {
            out.push(Self::inner(n));
            if n == 0 {
                for e in OuterLetter::BOTH {
                    out.push(Self::outer(0, e, e));
                }
            } else {
                for first in OuterLetter::BOTH {
                    for last in OuterLetter::BOTH {
                        out.push(Self::outer(n, first, last));
                    }
                }
            }
            n += 1;
        }
        out
    }
}

/// Coefficient of any word of the pattern in `log(e^X1 e^X2 e^X3)`.
pub fn goldberg_coeff_three(p: ThreeWordPattern) -> Result<Rational> {
    p.validate()?;
    let n = p.n as u64;
    let same = sign(n) * f_coefficient(n);
    Ok(match p.shape {
        PatternShape::Inner => same,
        PatternShape::Outer { first, last } if first == last => same,
        PatternShape::Outer { .. } => {
            let num = factorial(n - 1) * factorial(n + 1);
            sign(n + 1) * ratio(num, factorial(2 * n + 1))
        }
    })
}

/// Closed form against oracle for one word.
#[derive(Clone, Debug, PartialEq)]
pub struct CoeffReport {
    pub word: Word,
    pub label: String,
    pub closed_form: Rational,
    pub oracle: Rational,
    pub matches: bool,
}

impl CoeffReport {
    fn new(word: Word, names: &[&str], closed_form: Rational, oracle: Rational) -> Self {
        let matches = closed_form == oracle;
        CoeffReport { label: word.render(names), word, closed_form, oracle, matches }
    }
}

/// Exact `log(e^A e^B)` through `max_degree`.
pub fn two_letter_oracle(max_degree: usize) -> Result<FreeSeries<Rational>> {
    let one = Rational::one();
    log_exp_product(2, &[(LETTER_A, one.clone()), (LETTER_B, one)], max_degree)
}

/// Exact `log(e^X1 e^X2 e^X3)` through `max_degree`.
pub fn three_letter_oracle(max_degree: usize) -> Result<FreeSeries<Rational>> {
    let one = Rational::one();
    log_exp_product(
        3,
        &[(LETTER_X1, one.clone()), (LETTER_X2, one.clone()), (LETTER_X3, one)],
        max_degree,
    )
}

/// Compares every alternating word up to `max_degree` with the oracle.
pub fn verify_two_letter(max_degree: usize) -> Result<Vec<CoeffReport>> {
    if max_degree < 2 {
        return Err(Error::InvalidArgument("max_degree must be at least 2".into()));
    }
    let oracle = two_letter_oracle(max_degree)?;
    AlternatingWord2::all_up_to(max_degree)
        .into_iter()
        .map(|aw| {
            let w = aw.word();
            let oc = oracle.coeff(&w);
            Ok(CoeffReport::new(w, &AB_NAMES, goldberg_coeff_two(aw)?, oc))
        })
        .collect()
}

/// Nonzero oracle terms on words containing `AA` or `BB`.
///
/// These survive in the free algebra; only the collapse removes them.
pub fn non_alternating_terms(series: &FreeSeries<Rational>) -> usize {
    series.terms().filter(|(w, _)| has_repeat(w)).count()
}

fn has_repeat(w: &Word) -> bool {
    (1..w.len()).any(|i| w.get(i) == w.get(i - 1))
}

/// Compares every pattern-conforming word up to `max_degree` with the oracle.
pub fn verify_three_letter(max_degree: usize) -> Result<Vec<CoeffReport>> {
    if max_degree < 3 {
        return Err(Error::InvalidArgument("max_degree must be at least 3".into()));
    }
    let oracle = three_letter_oracle(max_degree)?;
    let mut out = Vec::new();
    for p in ThreeWordPattern::all_up_to(max_degree) {
        let closed = goldberg_coeff_three(p)?;
        for w in p.words()? {
            let oc = oracle.coeff(&w);
            out.push(CoeffReport::new(w, &X_NAMES, closed.clone(), oc));
        }
    }
    Ok(out)
}

/// Rewrites a word over `{A, B}` with `AA = BB = 0`, `ABA = -A`, `BAB = -B`.
///
/// Returns `None` when the word vanishes, otherwise the sign (`true` for minus)
/// and a normal form of length at most two.
pub fn reduce_ab_word(w: &Word) -> Option<(bool, Word)> {
    let mut letters: Vec<usize> = w.letters().collect();
    let mut negative = false;
    loop {
        if letters.windows(2).any(|p| p[0] == p[1]) {
            return None;
        }
        // without repeats every window of three is ABA or BAB
        if letters.len() < 3 {
            return Some((negative, Word::from_letters(letters)));
        }
        letters.drain(1..3);
        negative = !negative;
    }
}

/// Linear combination of normal forms `1, A, B, AB, BA`.
pub type Reduced = BTreeMap<Word, Rational>;

fn reduce_into(acc: &mut Reduced, w: &Word, c: Rational) {
    if let Some((neg, nf)) = reduce_ab_word(w) {
        let c = if neg { -c } else { c };
        let e = acc.entry(nf.clone()).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            acc.remove(&nf);
        }
    }
}

/// Reduces a two-letter series term by term.
pub fn reduce_series(s: &FreeSeries<Rational>) -> Reduced {
    let mut acc = Reduced::new();
    for (w, c) in s.terms() {
        reduce_into(&mut acc, w, c.clone());
    }
    acc
}

/// Reduced collapse of a series, bucketed by word length (the power of `x`).
pub type CollapsedSeries = BTreeMap<usize, Reduced>;

/// Substitutes each source letter `i` by `substitution[i].1 * substitution[i].0`
/// (a scalar times `A` or `B`) and reduces.
pub fn collapse(
    series: &FreeSeries<Rational>,
    substitution: &[(Letter2, Rational)],
) -> Result<CollapsedSeries> {
    if substitution.len() != series.alphabet() {
        return Err(Error::InvalidArgument(format!(
            "substitution has {} entries for an alphabet of {}",
            substitution.len(),
            series.alphabet()
        )));
    }
    let mut out = CollapsedSeries::new();
    for (w, c) in series.terms() {
        let mut scalar = c.clone();
        let mut image = Vec::with_capacity(w.len());
        for l in w.letters() {
            let (target, k) = &substitution[l];
            scalar *= k;
            image.push(target.index());
        }
        let bucket = out.entry(w.len()).or_default();
        reduce_into(bucket, &Word::from_letters(image), scalar);
    }
    out.retain(|_, r| !r.is_empty());
    Ok(out)
}

/// Per-`n` coefficients of `log(e^{xA} e^{xB})` after collapse.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoLetterCollapse {
    pub n: usize,
    /// `x^{2n+1}` coefficient of `A`.
    pub a: Rational,
    /// `x^{2n+1}` coefficient of `B`.
    pub b: Rational,
    /// `x^{2n+2}` coefficient of `AB`.
    pub ab: Rational,
    /// `x^{2n+2}` coefficient of `BA`.
    pub ba: Rational,
}

fn nf(letters: &[usize]) -> Word {
    Word::from_letters(letters.iter().copied())
}

fn read(bucket: Option<&Reduced>, letters: &[usize]) -> Rational {
    bucket.and_then(|r| r.get(&nf(letters)).cloned()).unwrap_or_else(Rational::zero)
}

/// Collapses the oracle `log(e^A e^B)` through degree `2 max_n + 2`.
pub fn collapse_two(max_n: usize) -> Result<Vec<TwoLetterCollapse>> {
    let oracle = two_letter_oracle(2 * max_n + 2)?;
    let one = Rational::one();
    let collapsed = collapse(&oracle, &[(Letter2::A, one.clone()), (Letter2::B, one)])?;
    Ok((0..=max_n)
        .map(|n| {
            let odd = collapsed.get(&(2 * n + 1));
            let even = collapsed.get(&(2 * n + 2));
            TwoLetterCollapse {
                n,
                a: read(odd, &[LETTER_A]),
                b: read(odd, &[LETTER_B]),
                ab: read(even, &[LETTER_A, LETTER_B]),
                ba: read(even, &[LETTER_B, LETTER_A]),
            }
        })
        .collect())
}

/// `f(x) = x (F1(x) A + F2(x) B)` for the symmetric product, with leftovers.
#[derive(Clone, Debug, PartialEq)]
pub struct StrangCollapse {
    /// `x^{2n}` coefficients of `F1`.
    pub f1: Vec<Rational>,
    /// `x^{2n}` coefficients of `F2`.
    pub f2: Vec<Rational>,
    /// Surviving terms at even powers of `x`; empty when `f` is odd.
    pub even_residual: CollapsedSeries,
    /// Surviving `AB`/`BA` terms at odd powers; empty when `f` lies in span{A, B}.
    pub odd_residual: CollapsedSeries,
}

/// Substitutes `X1 = X3 = (x/2) B`, `X2 = x A` into the oracle
/// `log(e^X1 e^X2 e^X3)` through degree `2 max_n + 1` and collapses.
pub fn collapse_strang(max_n: usize) -> Result<StrangCollapse> {
    let degree = 2 * max_n + 1;
    let oracle = three_letter_oracle(degree.max(2))?;
    let half = ratio(BigInt::one(), BigInt::from(2));
    let collapsed = collapse(
        &oracle,
        &[(Letter2::B, half.clone()), (Letter2::A, Rational::one()), (Letter2::B, half)],
    )?;
    let mut f1 = Vec::with_capacity(max_n + 1);
    let mut f2 = Vec::with_capacity(max_n + 1);
    let mut even_residual = CollapsedSeries::new();
    let mut odd_residual = CollapsedSeries::new();
    for (&d, r) in &collapsed {
        if d > degree {
            continue;
        }
        if d % 2 == 0 {
            even_residual.insert(d, r.clone());
            continue;
        }
        let rest: Reduced = r.iter().filter(|(w, _)| w.len() != 1).map(|(w, c)| (w.clone(), c.clone())).collect();
        if !rest.is_empty() {
            odd_residual.insert(d, rest);
        }
    }
    for n in 0..=max_n {
        let odd = collapsed.get(&(2 * n + 1));
        f1.push(read(odd, &[LETTER_A]));
        f2.push(read(odd, &[LETTER_B]));
    }
    Ok(StrangCollapse { f1, f2, even_residual, odd_residual })
}

/// `F1`, `F2` coefficients assembled from [`goldberg_coeff_three`] alone.
pub fn strang_from_closed_form(max_n: usize) -> Result<(Vec<Rational>, Vec<Rational>)> {
    let mut f1 = vec![Rational::zero(); max_n + 1];
    let mut f2 = vec![Rational::zero(); max_n + 1];
    let half = ratio(BigInt::one(), BigInt::from(2));
    for p in ThreeWordPattern::all_up_to(2 * max_n + 1) {
        let c = goldberg_coeff_three(p)?;
        for w in p.words()? {
            let outer = w.count(LETTER_X1) + w.count(LETTER_X3);
            let image = Word::from_letters(w.letters().map(|l| {
                if l == LETTER_X2 {
                    LETTER_A
                } else {
                    LETTER_B
                }
            }));
            let (neg, form) = reduce_ab_word(&image)
                .ok_or_else(|| Error::InvalidPattern("pattern word collapsed to zero".into()))?;
            let mut v = &c * num_traits::pow(half.clone(), outer);
            if neg {
                v = -v;
            }
            match form.get(0) {
                Some(LETTER_A) => f1[p.n] += v,
                _ => f2[p.n] += v,
            }
        }
    }
    Ok((f1, f2))
}

/// `[X, [X, Y]]` reduced; used to check `[A,[A,B]] = 2A` and `[B,[A,B]] = -2B`.
pub fn nested_commutator(outer: Letter2, left: Letter2, right: Letter2) -> Result<Reduced> {
    let l = |x: Letter2| FreeSeries::<Rational>::letter(2, 3, x.index());
    let comm = |a: &FreeSeries<Rational>, b: &FreeSeries<Rational>| a.mul(b)?.sub(&b.mul(a)?);
    let inner = comm(&l(left)?, &l(right)?)?;
    Ok(reduce_series(&comm(&l(outer)?, &inner)?))
}

/// Ratio-test radius `sqrt(a_n / a_{n+1})` for `F` at index `n`.
pub fn radius_estimate_at(n: u64) -> f64 {
    let r = f_coefficient(n) / f_coefficient(n + 1);
    r.to_f64().expect("ratio is a small positive rational").sqrt()
}

/// Ratio-test estimate of the radius of convergence of `F` from its first
/// `num_coeffs` coefficients.
pub fn estimate_radius(num_coeffs: usize) -> Result<f64> {
    if num_coeffs < 10 {
        return Err(Error::InvalidArgument("need at least 10 coefficients".into()));
    }
    let coeffs: Vec<Rational> = {
        // a_{n+1} = a_n (n+1)^2 / ((2n+2)(2n+3))
        let mut v = vec![Rational::one()];
        for n in 0..num_coeffs as u64 - 1 {
            let last = v.last().cloned().unwrap_or_else(Rational::one);
            let step = ratio(BigInt::from((n + 1) * (n + 1)), BigInt::from((2 * n + 2) * (2 * n + 3)));
            v.push(last * step);
        }
        v
    };
    let k = coeffs.len() - 2;
    let r = &coeffs[k] / &coeffs[k + 1];
    debug_assert!(r.is_positive());
    Ok(r.to_f64().expect("ratio near 4").sqrt())
}
