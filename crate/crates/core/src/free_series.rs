//! Truncated formal power series in noncommuting letters.
//!
//! A [`FreeSeries`] stores the coefficients of words of length at most
//! `max_degree` over an alphabet `{0, .., alphabet - 1}`. Zero coefficients are
//! never stored, so two series are equal exactly when their maps are equal.
//! With exact rational coefficients this is the brute-force oracle for
//! coefficients of `log(exp X1 exp X2 ...)`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{int, Scalar};

/// Default truncation order for two-letter computations.
pub const DEFAULT_DEGREE_TWO_LETTERS: usize = 12;
/// Default truncation order for three-letter computations.
pub const DEFAULT_DEGREE_THREE_LETTERS: usize = 8;

/// A finite sequence of letter indices. The empty word is the unit.
///
/// Words are ordered by length first, then lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(l: usize) -> Self {
        Word(vec![letter_byte(l)])
    }

    pub fn from_letters<I: IntoIterator<Item = usize>>(letters: I) -> Self {
        Word(letters.into_iter().map(letter_byte).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().map(|&b| b as usize)
    }

    pub fn get(&self, i: usize) -> Option<usize> {
        self.0.get(i).map(|&b| b as usize)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Number of occurrences of `l`.
    pub fn count(&self, l: usize) -> usize {
        self.0.iter().filter(|&&b| b as usize == l).count()
    }

    /// Renders the word with one name per letter index, e.g. `["A", "B"]`.
    pub fn render(&self, names: &[&str]) -> String {
        if self.is_empty() {
            return "1".to_string();
        }
        self.letters().map(|l| names.get(l).copied().unwrap_or("?")).collect()
    }

    /// Every word of exactly `len` letters over `alphabet`, in lexicographic order.
    pub fn all_of_length(alphabet: usize, len: usize) -> Vec<Word> {
        let mut out = vec![Word::empty()];
        for _ in 0..len {
            out = out
                .into_iter()
                .flat_map(|w| {
                    (0..alphabet).map(move |l| {
                        let mut v = w.0.clone();
                        v.push(letter_byte(l));
                        Word(v)
                    })
                })
                .collect();
        }
        out
    }
}

fn letter_byte(l: usize) -> u8 {
    u8::try_from(l).expect("letter index below 256")
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word{:?}", self.0)
    }
}

/// Truncated power series over noncommuting letters.
#[derive(Clone, PartialEq, Debug)]
pub struct FreeSeries<C> {
    alphabet: usize,
    max_degree: usize,
    coeffs: BTreeMap<Word, C>,
}

impl<C: Scalar> FreeSeries<C> {
    pub fn zero(alphabet: usize, max_degree: usize) -> Self {
        FreeSeries { alphabet, max_degree, coeffs: BTreeMap::new() }
    }

    pub fn one(alphabet: usize, max_degree: usize) -> Self {
        Self::constant(alphabet, max_degree, C::one())
    }

    pub fn constant(alphabet: usize, max_degree: usize, c: C) -> Self {
        let mut s = Self::zero(alphabet, max_degree);
        s.add_term(Word::empty(), c);
        s
    }

    /// The series consisting of the single letter `l` with coefficient 1.
    pub fn letter(alphabet: usize, max_degree: usize, l: usize) -> Result<Self> {
        Self::from_terms(alphabet, max_degree, [(Word::letter(l), C::one())])
    }

    /// Builds a series from `(word, coefficient)` pairs; repeated words add up and
    /// words longer than `max_degree` are dropped.
    pub fn from_terms<I>(alphabet: usize, max_degree: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Word, C)>,
    {
        let mut s = Self::zero(alphabet, max_degree);
        for (w, c) in terms {
            if let Some(l) = w.letters().find(|&l| l >= alphabet) {
                return Err(Error::LetterOutOfRange { letter: l, alphabet });
            }
            s.add_term(w, c);
        }
        Ok(s)
    }

    pub fn alphabet(&self) -> usize {
        self.alphabet
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    /// Coefficient of `w`; zero when absent.
    pub fn coeff(&self, w: &Word) -> C {
        self.coeffs.get(w).cloned().unwrap_or_else(C::zero)
    }

    pub fn constant_term(&self) -> C {
        self.coeff(&Word::empty())
    }

    /// Nonzero terms in graded order.
    pub fn terms(&self) -> impl Iterator<Item = (&Word, &C)> {
        self.coeffs.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn add_term(&mut self, w: Word, c: C) {
        if w.len() > self.max_degree || c.is_zero() {
            return;
        }
        match self.coeffs.get_mut(&w) {
            Some(existing) => {
                let sum = existing.clone() + c;
                if sum.is_zero() {
                    self.coeffs.remove(&w);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.coeffs.insert(w, c);
            }
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.max_degree != other.max_degree {
            return Err(Error::MismatchedDegree { left: self.max_degree, right: other.max_degree });
        }
        if self.alphabet != other.alphabet {
            return Err(Error::InvalidArgument(format!(
                "alphabet sizes differ: {} vs {}",
                self.alphabet, other.alphabet
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (w, c) in &other.coeffs {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-C::one()))
    }

    pub fn scale(&self, k: &C) -> Self {
        let mut out = Self::zero(self.alphabet, self.max_degree);
        if k.is_zero() {
            return out;
        }
        out.coeffs =
            self.coeffs.iter().map(|(w, c)| (w.clone(), c.clone() * k.clone())).collect();
        out
    }

    /// Truncated product: the coefficient of `w` is the sum of `a[u] * b[v]` over
    /// all splittings `w = uv`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let left = self.by_degree();
        let right = other.by_degree();
        let mut acc: HashMap<Word, C> = HashMap::new();
        for (la, ta) in left.iter().enumerate() {
            for tb in right.iter().take(self.max_degree + 1 - la) {
                for (wa, ca) in ta {
                    for (wb, cb) in tb {
                        let prod = (*ca).clone() * (*cb).clone();
                        let w = wa.concat(wb);
                        match acc.get_mut(&w) {
                            Some(e) => *e = e.clone() + prod,
                            None => {
                                acc.insert(w, prod);
                            }
                        }
                    }
                }
            }
        }
        let coeffs = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(FreeSeries { alphabet: self.alphabet, max_degree: self.max_degree, coeffs })
    }

    fn by_degree(&self) -> Vec<Vec<(&Word, &C)>> {
        let mut out = vec![Vec::new(); self.max_degree + 1];
        for (w, c) in &self.coeffs {
            out[w.len()].push((w, c));
        }
        out
    }

    /// `sum_{m=0}^{max_degree} a^m / m!`; requires a zero constant term.
    pub fn exp(&self) -> Result<Self> {
        if !self.constant_term().is_zero() {
            return Err(Error::NonZeroConstant);
        }
        let mut result = Self::one(self.alphabet, self.max_degree);
        let mut term = result.clone();
        for m in 1..=self.max_degree {
            term = term.mul(self)?.scale(&(C::one() / int(m as i64)));
            if term.is_zero() {
                break;
            }
            result = result.add(&term)?;
        }
        Ok(result)
    }

    /// `sum_{m=1}^{max_degree} (-1)^{m+1} (a - 1)^m / m`; requires constant term 1.
    pub fn log(&self) -> Result<Self> {
        if self.constant_term() != C::one() {
            return Err(Error::ConstantNotOne);
        }
        let y = self.sub(&Self::one(self.alphabet, self.max_degree))?;
        let mut result = Self::zero(self.alphabet, self.max_degree);
        let mut power = y.clone();
        for m in 1..=self.max_degree {
            if power.is_zero() {
                break;
            }
            let sign: C = if m % 2 == 1 { C::one() } else { -C::one() };
            result = result.add(&power.scale(&(sign / int(m as i64))))?;
            power = power.mul(&y)?;
        }
        Ok(result)
    }

    /// `exp(c * l)` for a single letter, written out directly.
    pub fn exp_letter(alphabet: usize, max_degree: usize, l: usize, c: &C) -> Result<Self> {
        if l >= alphabet {
            return Err(Error::LetterOutOfRange { letter: l, alphabet });
        }
        let mut terms = Vec::with_capacity(max_degree + 1);
        let mut k = C::one();
        for m in 0..=max_degree {
            terms.push((Word::from_letters(std::iter::repeat_n(l, m)), k.clone()));
            k = k * c.clone() / int(m as i64 + 1);
        }
        Self::from_terms(alphabet, max_degree, terms)
    }
}

/// `log(exp(c1 l1) exp(c2 l2) ...)` truncated at `max_degree`.
///
/// Letters may repeat, so the same routine covers two- and three-factor products.
pub fn log_exp_product<C: Scalar>(
    alphabet: usize,
    weights: &[(usize, C)],
    max_degree: usize,
) -> Result<FreeSeries<C>> {
    if weights.is_empty() {
        return Err(Error::EmptyProduct);
    }
    let mut product = FreeSeries::one(alphabet, max_degree);
    for (l, c) in weights {
        product = product.mul(&FreeSeries::exp_letter(alphabet, max_degree, *l, c)?)?;
    }
    product.log()
}

/// Free functions mirroring the method names.
pub fn series_mul<C: Scalar>(a: &FreeSeries<C>, b: &FreeSeries<C>) -> Result<FreeSeries<C>> {
    a.mul(b)
}

pub fn series_exp<C: Scalar>(a: &FreeSeries<C>) -> Result<FreeSeries<C>> {
    a.exp()
}

pub fn series_log<C: Scalar>(a: &FreeSeries<C>) -> Result<FreeSeries<C>> {
    a.log()
}
