//! Exact sparse bivariate integer polynomials in `(u, v)`.
//!
//! Terms are kept in a map ordered graded-lexicographically by
//! `(i + j, i)`, which is also the canonical serialization order.

mod file;

pub use file::{PolyFile, PolyForm};

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::numcore::{ComplexBall, Precision, Rational};

/// Default bound on each exponent when parsing.
pub const DEFAULT_MAX_EXPONENT: u32 = 64;

/// Exponent pair of `u^i v^j`, ordered by total degree then by `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub i: u32,
    pub j: u32,
}

impl Monomial {
    pub fn new(i: u32, j: u32) -> Monomial {
        Monomial { i, j }
    }

    fn key(&self) -> (u64, u32) {
        (self.i as u64 + self.j as u64, self.i)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.key().cmp(&other.key())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Default, PartialEq, Eq)]
pub struct BivariatePoly {
    terms: BTreeMap<Monomial, BigInt>,
}

/// Even/odd decomposition `phi = q_part - u v r_part`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolySplit {
    pub q_part: BivariatePoly,
    pub r_part: BivariatePoly,
}

/// Which variable to differentiate by.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    U,
    V,
}

impl BivariatePoly {
    pub fn zero() -> BivariatePoly {
        BivariatePoly::default()
    }

    pub fn monomial<C: Into<BigInt>>(c: C, i: u32, j: u32) -> BivariatePoly {
        let mut p = BivariatePoly::zero();
        p.add_term(c.into(), i, j);
        p
    }

    pub fn from_terms<C: Into<BigInt>, I: IntoIterator<Item = (C, u32, u32)>>(terms: I) -> BivariatePoly {
        let mut p = BivariatePoly::zero();
        for (c, i, j) in terms {
            p.add_term(c.into(), i, j);
        }
        p
    }

    /// Add `c u^i v^j`, dropping the entry if it cancels.
    pub fn add_term(&mut self, c: BigInt, i: u32, j: u32) {
        if c.is_zero() {
            return;
        }
        let m = Monomial::new(i, j);
        let entry = self.terms.entry(m).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, i: u32, j: u32) -> BigInt {
        self.terms.get(&Monomial::new(i, j)).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (Monomial, &BigInt)> {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn degree_u(&self) -> u32 {
        self.terms.keys().map(|m| m.i).max().unwrap_or(0)
    }

    pub fn degree_v(&self) -> u32 {
        self.terms.keys().map(|m| m.j).max().unwrap_or(0)
    }

    pub fn max_abs_coeff(&self) -> BigInt {
        self.terms.values().map(|c| c.abs()).max().unwrap_or_else(BigInt::zero)
    }

    /// `p(v, u)`.
    pub fn swap_vars(&self) -> BivariatePoly {
        BivariatePoly::from_terms(self.terms().map(|(m, c)| (c.clone(), m.j, m.i)))
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.swap_vars()
    }

    pub fn neg(&self) -> BivariatePoly {
        BivariatePoly { terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }

    pub fn add(&self, other: &BivariatePoly) -> BivariatePoly {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(c.clone(), m.i, m.j);
        }
        out
    }

    pub fn sub(&self, other: &BivariatePoly) -> BivariatePoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &BivariatePoly) -> BivariatePoly {
        let mut out = BivariatePoly::zero();
        for (a, ca) in self.terms() {
            for (b, cb) in other.terms() {
                out.add_term(ca * cb, a.i + b.i, a.j + b.j);
            }
        }
        out
    }

    /// Multiply by `u^a v^b`.
    pub fn shift(&self, a: u32, b: u32) -> BivariatePoly {
        BivariatePoly { terms: self.terms.iter().map(|(m, c)| (Monomial::new(m.i + a, m.j + b), c.clone())).collect() }
    }

    /// `p(-u, v)`.
    pub fn negate_u(&self) -> BivariatePoly {
        BivariatePoly::from_terms(self.terms().map(|(m, c)| (if m.i % 2 == 1 { -c } else { c.clone() }, m.i, m.j)))
    }

    /// Formal partial derivative.
    pub fn partial_derivative(&self, var: Var) -> BivariatePoly {
        let mut out = BivariatePoly::zero();
        for (m, c) in self.terms() {
            match var {
                Var::U if m.i > 0 => out.add_term(c * BigInt::from(m.i), m.i - 1, m.j),
                Var::V if m.j > 0 => out.add_term(c * BigInt::from(m.j), m.i, m.j - 1),
                _ => {}
            }
        }
        out
    }

    /// Coefficient rows: for each power of `v`, the `u`-polynomial as
    /// `(i, c)` pairs sorted by decreasing `i`.
    fn rows(&self) -> BTreeMap<u32, Vec<(u32, &BigInt)>> {
        let mut rows: BTreeMap<u32, Vec<(u32, &BigInt)>> = BTreeMap::new();
        for (m, c) in self.terms() {
            rows.entry(m.j).or_default().push((m.i, c));
        }
        for r in rows.values_mut() {
            r.sort_by(|a, b| b.0.cmp(&a.0));
        }
        rows
    }

    /// Ball enclosure of `p(u, v)` by nested Horner evaluation.
    pub fn eval(&self, u: &ComplexBall, v: &ComplexBall, p: Precision) -> ComplexBall {
        self.eval_bits(u, v, p.bits())
    }

    pub fn eval_bits(&self, u: &ComplexBall, v: &ComplexBall, prec: u64) -> ComplexBall {
        let rows = self.rows();
        let mut acc = ComplexBall::zero();
        let mut last_j: Option<u32> = None;
        for (&j, row) in rows.iter().rev() {
            if let Some(lj) = last_j {
                acc = acc.mul(&pow(v, lj - j, prec), prec);
            }
            acc = acc.add(&horner(row, u, prec), prec);
            last_j = Some(j);
        }
        if let Some(lj) = last_j {
            acc = acc.mul(&pow(v, lj, prec), prec);
        }
        acc
    }

    /// Exact value at a rational point.
    pub fn eval_rational(&self, u: &Rational, v: &Rational) -> Rational {
        let mut acc = Rational::zero();
        let mut last_j: Option<u32> = None;
        for (&j, row) in self.rows().iter().rev() {
            if let Some(lj) = last_j {
                acc *= pow_rational(v, lj - j);
            }
            let mut inner = Rational::zero();
            let mut last_i: Option<u32> = None;
            for &(i, c) in row {
                if let Some(li) = last_i {
                    inner *= pow_rational(u, li - i);
                }
                inner += Rational::from_integer(c.clone());
                last_i = Some(i);
            }
            if let Some(li) = last_i {
                inner *= pow_rational(u, li);
            }
            acc += inner;
            last_j = Some(j);
        }
        if let Some(lj) = last_j {
            acc *= pow_rational(v, lj);
        }
        acc
    }

    /// Split into the even-even part and the odd-odd part.
    ///
    /// Fails with [`Error::MixedParity`] when some monomial has `i` and `j`
    /// of different parity.
    pub fn parity_split(&self) -> Result<PolySplit> {
        let mut q_part = BivariatePoly::zero();
        let mut r_part = BivariatePoly::zero();
        for (m, c) in self.terms() {
            match (m.i % 2, m.j % 2) {
                (0, 0) => q_part.add_term(c.clone(), m.i, m.j),
                (1, 1) => r_part.add_term(-c, m.i - 1, m.j - 1),
                _ => return Err(Error::MixedParity(m.i, m.j)),
            }
        }
        Ok(PolySplit { q_part, r_part })
    }

    /// `P(u, v) = Q(sqrt u, sqrt v)^2 - u v R(sqrt u, sqrt v)^2` for
    /// `self = Q - u v R`.
    pub fn weber_transform(&self) -> Result<BivariatePoly> {
        let split = self.parity_split()?;
        let qh = split.q_part.halve_exponents();
        let rh = split.r_part.halve_exponents();
        Ok(qh.mul(&qh).sub(&rh.mul(&rh).shift(1, 1)))
    }

    fn halve_exponents(&self) -> BivariatePoly {
        BivariatePoly { terms: self.terms.iter().map(|(m, c)| (Monomial::new(m.i / 2, m.j / 2), c.clone())).collect() }
    }

    /// Canonical text: one `"<coeff> <i> <j>"` line per term.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (m, c) in self.terms() {
            s.push_str(&format!("{} {} {}\n", c, m.i, m.j));
        }
        s
    }
}

impl PolySplit {
    /// `q_part - u v r_part`.
    pub fn reconstruct(&self) -> BivariatePoly {
        self.q_part.sub(&self.r_part.shift(1, 1))
    }
}

fn pow(x: &ComplexBall, n: u32, prec: u64) -> ComplexBall {
    x.pow_int(n as i64, prec).expect("non-negative power")
}

fn pow_rational(x: &Rational, n: u32) -> Rational {
    num_traits::pow(x.clone(), n as usize)
}

fn horner(row: &[(u32, &BigInt)], u: &ComplexBall, prec: u64) -> ComplexBall {
    let mut acc = ComplexBall::zero();
    let mut last_i: Option<u32> = None;
    for &(i, c) in row {
        if let Some(li) = last_i {
            acc = acc.mul(&pow(u, li - i, prec), prec);
        }
        acc = acc.add(&ComplexBall::from_int(c.clone()), prec);
        last_i = Some(i);
    }
    if let Some(li) = last_i {
        acc = acc.mul(&pow(u, li, prec), prec);
    }
    acc
}

/// Parse options for the term-per-line format.
#[derive(Clone, Copy, Debug)]
pub struct ParseOptions {
    pub max_exponent: u32,
    /// When false, a repeated monomial is an error instead of being summed.
    pub merge_duplicates: bool,
}

impl Default for ParseOptions {
    fn default() -> Self {
        ParseOptions { max_exponent: DEFAULT_MAX_EXPONENT, merge_duplicates: true }
    }
}

/// Parse `"<coeff> <i> <j>"` lines; `#` starts a comment, blank lines are
/// ignored, repeated monomials are summed.
pub fn parse_poly(text: &str) -> Result<BivariatePoly> {
    parse_poly_with(text, ParseOptions::default())
}

pub fn parse_poly_with(text: &str, opts: ParseOptions) -> Result<BivariatePoly> {
    let mut poly = BivariatePoly::zero();
    let mut seen = std::collections::HashSet::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(Error::Parse { line: line_no, msg: format!("expected 3 fields, found {}", fields.len()) });
        }
        let c: BigInt = fields[0]
            .parse()
            .map_err(|_| Error::Parse { line: line_no, msg: format!("bad coefficient {:?}", fields[0]) })?;
        let mut exps = [0u32; 2];
        for (k, f) in fields[1..].iter().enumerate() {
            let e: u64 = f.parse().map_err(|_| Error::Parse { line: line_no, msg: format!("bad exponent {f:?}") })?;
            if e > opts.max_exponent as u64 {
                return Err(Error::ExponentOverflow { line: line_no, exp: e, max: opts.max_exponent });
            }
            exps[k] = e as u32;
        }
        if !opts.merge_duplicates && !seen.insert((exps[0], exps[1])) {
            return Err(Error::DuplicateMonomial { line: line_no, i: exps[0], j: exps[1] });
        }
        poly.add_term(c, exps[0], exps[1]);
    }
    Ok(poly)
}

impl fmt::Debug for BivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for BivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let a = c.abs();
            let mono = match (m.i, m.j) {
                (0, 0) => String::new(),
                (i, 0) => format!("u^{i}"),
                (0, j) => format!("v^{j}"),
                (i, j) => format!("u^{i}*v^{j}"),
            };
            if mono.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{a}*{mono}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numcore::ratio;

    fn poly(text: &str) -> BivariatePoly {
        parse_poly(text).unwrap()
    }

    #[test]
    fn parse_examples() {
        let p = poly("1 18 0\n1 0 18\n17 16 10");
        assert_eq!(p.len(), 3);
        assert_eq!(p.coeff(16, 10), BigInt::from(17));
        assert!(poly("").is_zero());
        assert!(poly("3 2 2\n-3 2 2").is_zero());
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        assert!(matches!(parse_poly("1 2 3\n\nx 1 1"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(parse_poly("1 2"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_poly("1 65 0"), Err(Error::ExponentOverflow { line: 1, exp: 65, .. })));
        let strict = ParseOptions { merge_duplicates: false, ..Default::default() };
        assert!(matches!(
            parse_poly_with("# c\n1 2 2\n1 2 2", strict),
            Err(Error::DuplicateMonomial { line: 3, i: 2, j: 2 })
        ));
    }

    #[test]
    fn comments_and_blank_lines() {
        let p = poly("# header\n\n  5 1 0   # trailing\n");
        assert_eq!(p, BivariatePoly::monomial(5, 1, 0));
    }

    #[test]
    fn derivatives() {
        let p = BivariatePoly::monomial(1, 3, 1);
        assert_eq!(p.partial_derivative(Var::U), BivariatePoly::monomial(3, 2, 1));
        let q = poly("1 18 0\n1 0 18");
        assert_eq!(q.partial_derivative(Var::V), BivariatePoly::monomial(18, 0, 17));
    }

    #[test]
    fn u_minus_v_vanishes_on_diagonal() {
        let p = poly("1 1 0\n-1 0 1");
        let three = ComplexBall::from_int(3);
        let r = p.eval(&three, &three, Precision::new(30).unwrap());
        assert!(r.contains_zero());
    }

    #[test]
    fn split_examples() {
        let s = poly("1 2 2").parity_split().unwrap();
        assert_eq!(s.q_part, poly("1 2 2"));
        assert!(s.r_part.is_zero());
        assert_eq!(poly("1 2 3").parity_split(), Err(Error::MixedParity(2, 3)));
    }

    #[test]
    fn transform_of_u2_minus_uv() {
        let p = poly("1 2 0\n-1 1 1");
        assert_eq!(p.weber_transform().unwrap(), poly("1 2 0\n-1 1 1"));
    }

    #[test]
    fn canonical_text_is_graded() {
        let p = poly("1 0 3\n2 3 0\n-4 1 1\n7 0 0");
        assert_eq!(p.to_text(), "7 0 0\n-4 1 1\n1 0 3\n2 3 0\n");
        assert_eq!(parse_poly(&p.to_text()).unwrap(), p);
    }

    #[test]
    fn rational_eval() {
        let p = poly("2 2 1\n-3 0 0");
        assert_eq!(p.eval_rational(&ratio(1, 2), &ratio(3, 1)), ratio(3, 2) - ratio(3, 1));
    }
}
