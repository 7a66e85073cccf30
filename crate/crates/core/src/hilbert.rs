//! Hilbert functions, rational Hilbert series claims and a growth estimate
//! for the Gelfand-Kirillov dimension.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::groebner::{GroebnerError, RewriteSystem};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HilbertError {
    #[error("malformed rational function `{text}`: {msg}")]
    Malformed { text: String, msg: String },
    #[error("denominator of the claimed series has zero constant term")]
    ZeroConstantTerm,
    #[error("growth estimate needs dimensions certified to degree {needed}, have {have}")]
    WindowTooSmall { needed: u32, have: u32 },
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
}

/// `dim A_d` for `d = 0..=certified_to`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GradedDims {
    pub dims: Vec<u64>,
    pub certified_to: u32,
}

impl GradedDims {
    pub fn new(dims: Vec<u64>) -> Self {
        let certified_to = dims.len().saturating_sub(1) as u32;
        GradedDims { dims, certified_to }
    }

    pub fn get(&self, d: i64) -> u64 {
        if d < 0 {
            0
        } else {
            self.dims.get(d as usize).copied().unwrap_or(0)
        }
    }
}

/// Count normal words of each degree up to `max_degree`.
pub fn hilbert_function(rs: &RewriteSystem, max_degree: u32) -> Result<GradedDims, HilbertError> {
    let basis = rs.normal_basis(max_degree)?;
    Ok(GradedDims::new(basis.dims().into_iter().map(|d| d as u64).collect()))
}

type Poly = Vec<BigRational>;

fn trim(mut p: Poly) -> Poly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_add(a: &Poly, b: &Poly, sign: i64) -> Poly {
    let n = a.len().max(b.len());
    let s = BigRational::from_integer(sign.into());
    trim(
        (0..n)
            .map(|i| {
                let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
                let y = b.get(i).cloned().unwrap_or_else(BigRational::zero);
                x + y * &s
            })
            .collect(),
    )
}

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

/// A rational function `num(t) / den(t)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

impl RationalFunction {
    fn constant(c: BigRational) -> Self {
        RationalFunction { num: trim(vec![c]), den: vec![BigRational::one()] }
    }

    fn var() -> Self {
        RationalFunction { num: vec![BigRational::zero(), BigRational::one()], den: vec![BigRational::one()] }
    }

    fn add(&self, o: &Self, sign: i64) -> Self {
        RationalFunction {
            num: poly_add(&poly_mul(&self.num, &o.den), &poly_mul(&o.num, &self.den), sign),
            den: poly_mul(&self.den, &o.den),
        }
    }

    fn mul(&self, o: &Self) -> Self {
        RationalFunction { num: poly_mul(&self.num, &o.num), den: poly_mul(&self.den, &o.den) }
    }

    fn div(&self, o: &Self) -> Option<Self> {
        if o.num.is_empty() {
            return None;
        }
        Some(RationalFunction { num: poly_mul(&self.num, &o.den), den: poly_mul(&self.den, &o.num) })
    }

    /// Power-series coefficients of degrees `0..n`.
    pub fn series(&self, n: usize) -> Result<Vec<BigRational>, HilbertError> {
        let d0 = self.den.first().filter(|c| !c.is_zero()).ok_or(HilbertError::ZeroConstantTerm)?;
        let mut out: Vec<BigRational> = Vec::with_capacity(n);
        for k in 0..n {
            let mut acc = self.num.get(k).cloned().unwrap_or_else(BigRational::zero);
            for i in 1..=k.min(self.den.len().saturating_sub(1)) {
                acc -= &self.den[i] * &out[k - i];
            }
            out.push(acc / d0);
        }
        Ok(out)
    }

    pub fn parse(text: &str) -> Result<Self, HilbertError> {
        let mut p = ClaimParser { text, chars: text.char_indices().collect(), pos: 0 };
        let r = p.expr()?;
        p.skip_ws();
        if p.pos < p.chars.len() {
            return Err(p.err("trailing input"));
        }
        Ok(r)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |p: &Poly| -> String {
            if p.is_empty() {
                return "0".into();
            }
            let mut s = String::new();
            for (i, c) in p.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let sign = if c.is_negative() { "-" } else { "+" };
                let mag = c.abs();
                let coeff = if mag.is_one() && i > 0 { String::new() } else { mag.to_string() };
                let mono = match i {
                    0 => String::new(),
                    1 => "t".into(),
                    _ => format!("t^{i}"),
                };
                if s.is_empty() {
                    if sign == "-" {
                        s.push('-');
                    }
                } else {
                    s.push_str(&format!(" {sign} "));
                }
                s.push_str(&coeff);
                s.push_str(&mono);
            }
            s
        };
        write!(f, "({})/({})", show(&self.num), show(&self.den))
    }
}

struct ClaimParser<'a> {
    text: &'a str,
    chars: Vec<(usize, char)>,
    pos: usize,
}

impl ClaimParser<'_> {
    fn err(&self, msg: &str) -> HilbertError {
        HilbertError::Malformed { text: self.text.to_string(), msg: format!("{msg} at offset {}", self.pos) }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].1.is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).map(|c| c.1)
    }

    fn expr(&mut self) -> Result<RationalFunction, HilbertError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?, 1);
                }
                Some('-') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?, -1);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RationalFunction, HilbertError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.unary()?);
                }
                Some('/') => {
                    self.pos += 1;
                    let d = self.unary()?;
                    acc = acc.div(&d).ok_or_else(|| self.err("division by zero"))?;
                }
                // implicit product such as `2t` or `3(1-t)`
                Some('t') | Some('(') => acc = acc.mul(&self.unary()?),
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<RationalFunction, HilbertError> {
        if self.peek() == Some('-') {
            self.pos += 1;
            let inner = self.unary()?;
            return Ok(RationalFunction::constant(BigRational::zero()).add(&inner, -1));
        }
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.integer()?.to_u32().ok_or_else(|| self.err("exponent out of range"))?;
            let mut acc = RationalFunction::constant(BigRational::one());
            for _ in 0..e {
                acc = acc.mul(&base);
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt, HilbertError> {
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].1.is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        let s: String = self.chars[start..self.pos].iter().map(|c| c.1).collect();
        Ok(s.parse().expect("digits"))
    }

    fn atom(&mut self) -> Result<RationalFunction, HilbertError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some('t') => {
                self.pos += 1;
                Ok(RationalFunction::var())
            }
            Some(c) if c.is_ascii_digit() => Ok(RationalFunction::constant(BigRational::from_integer(self.integer()?))),
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

/// True iff the expansion of `claim` agrees with `g` in every certified degree.
pub fn verify_rational(g: &GradedDims, claim: &RationalFunction) -> Result<bool, HilbertError> {
    let n = g.certified_to as usize + 1;
    let series = claim.series(n)?;
    Ok(series
        .iter()
        .enumerate()
        .all(|(d, c)| *c == BigRational::from_integer(g.get(d as i64).into())))
}

/// Successive ratios above this count as exponential growth.
pub const EXPONENTIAL_RATIO: f64 = 1.5;

/// Heuristic growth estimate; never a certified invariant.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GkEstimate {
    /// Polynomial growth exponent, `None` when growth looks exponential.
    pub estimate: Option<f64>,
    pub exponential: bool,
    /// Least-squares slope of `log S(d)` against `log d` over the same
    /// window, where `S(d)` is the cumulative dimension.
    pub loglog_slope: f64,
    pub window: (u32, u32),
    pub note: String,
}

/// Estimate GK dimension from the cumulative growth `S(d) = sum_{e<=d} dim A_e`
/// over the top half of the certified window.
///
/// The estimate is the mean of the discrete growth exponents
/// `d * (S(d) / S(d-1) - 1)`, which equal `g` exactly when `S(d) = C(d+g, g)`
/// (polynomial rings in `g` variables) and converge to the growth degree for
/// any polynomial `S`. Growth counts as exponential when every successive
/// ratio `dim A_d / dim A_(d-1)` in the window exceeds [`EXPONENTIAL_RATIO`].
pub fn gk_estimate(g: &GradedDims) -> Result<GkEstimate, HilbertError> {
    const MIN_WINDOW: u32 = 4;
    if g.certified_to < MIN_WINDOW {
        return Err(HilbertError::WindowTooSmall { needed: MIN_WINDOW, have: g.certified_to });
    }
    let top = g.certified_to;
    let lo = top.div_ceil(2);
    let cumulative: Vec<f64> = g
        .dims
        .iter()
        .take(top as usize + 1)
        .scan(0.0, |acc, &d| {
            *acc += d as f64;
            Some(*acc)
        })
        .collect();
    let window: Vec<u32> = (lo.max(1)..=top).collect();

    let exponential = window.iter().all(|&d| {
        let prev = g.get(d as i64 - 1);
        prev > 0 && g.get(d as i64) as f64 / prev as f64 > EXPONENTIAL_RATIO
    });

    let xs: Vec<f64> = window.iter().map(|&d| (d as f64).ln()).collect();
    let ys: Vec<f64> = window.iter().map(|&d| cumulative[d as usize].ln()).collect();
    let n = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / n, ys.iter().sum::<f64>() / n);
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let loglog_slope = if sxx > 0.0 { sxy / sxx } else { 0.0 };

    let exponents: Vec<f64> = window
        .iter()
        .map(|&d| d as f64 * (cumulative[d as usize] / cumulative[d as usize - 1] - 1.0))
        .collect();
    let mean = exponents.iter().sum::<f64>() / exponents.len() as f64;

    let note = if exponential {
        format!("dimension ratios exceed {EXPONENTIAL_RATIO} throughout degrees {lo}..{top}; growth looks exponential (heuristic)")
    } else {
        format!("growth exponent from degrees {lo}..{top}; heuristic, not a certified invariant")
    };
    Ok(GkEstimate {
        estimate: (!exponential).then_some(mean),
        exponential,
        loglog_slope,
        window: (lo, top),
        note,
    })
}
