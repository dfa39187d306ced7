//! Integer Laurent polynomials in `q`, with optional half-integer exponents.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// `Σ c_e q^(e / denominator)`; `denominator` is 1 or 2.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, i64>,
    denominator: i64,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new(), denominator: 1 }
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// `coeff * q^exp`.
    pub fn monomial(coeff: i64, exp: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(coeff, exp);
        p
    }

    /// A polynomial in `q^(1/2)`: the term `(c, e)` stands for `c q^(e/2)`.
    pub fn from_half_exponents(terms: impl IntoIterator<Item = (i64, i64)>) -> Self {
        let mut p = Self { terms: BTreeMap::new(), denominator: 2 };
        for (c, e) in terms {
            p.add_term(c, e);
        }
        p.normalize();
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, i64)>) -> Self {
        let mut p = Self::zero();
        for (c, e) in terms {
            p.add_term(c, e);
        }
        p
    }

    fn add_term(&mut self, coeff: i64, exp: i64) {
        if coeff == 0 {
            return;
        }
        let c = self.terms.entry(exp).or_insert(0);
        *c += coeff;
        if *c == 0 {
            self.terms.remove(&exp);
        }
    }

    /// Rewrites half-exponent polynomials with only even numerators over
    /// denominator 1.
    fn normalize(&mut self) {
        if self.denominator == 2 && self.terms.keys().all(|e| e % 2 == 0) {
            self.terms = self.terms.iter().map(|(e, c)| (e / 2, *c)).collect();
            self.denominator = 1;
        }
    }

    fn rescaled(&self, denominator: i64) -> BTreeMap<i64, i64> {
        let f = denominator / self.denominator;
        self.terms.iter().map(|(e, c)| (e * f, *c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficients keyed by numerator exponent, with the common denominator.
    pub fn terms(&self) -> (&BTreeMap<i64, i64>, i64) {
        (&self.terms, self.denominator)
    }

    /// Coefficient of `q^exp` for an integer exponent.
    pub fn coefficient(&self, exp: i64) -> i64 {
        self.terms.get(&(exp * self.denominator)).copied().unwrap_or(0)
    }

    /// Value at `q = i` as `(re, im)`, for integer exponents; `None` if some
    /// exponent is a half-integer.
    pub fn eval_at_i(&self) -> Option<(i64, i64)> {
        if self.denominator != 1 {
            return None;
        }
        let (mut re, mut im) = (0, 0);
        for (&e, &c) in &self.terms {
            match e.rem_euclid(4) {
                0 => re += c,
                1 => im += c,
                2 => re -= c,
                _ => im -= c,
            }
        }
        Some((re, im))
    }

    /// Exact division by `q + q^{-1}`, if it divides.
    pub fn div_q_plus_inverse(&self) -> Option<Self> {
        if self.denominator != 1 {
            return None;
        }
        let Some(&lo) = self.terms.keys().next() else {
            return Some(Self::zero());
        };
        let mut rem = self.terms.clone();
        let mut quot = BTreeMap::new();
        while let Some((&top, &c)) = rem.iter().next_back() {
            // The quotient's lowest term times q^-1 must produce q^lo.
            if top - 1 < lo + 1 {
                return None;
            }
            // c q^top = c q^(top-1) (q + q^-1) - c q^(top-2)
            quot.insert(top - 1, c);
            rem.remove(&top);
            let e = rem.entry(top - 2).or_insert(0);
            *e -= c;
            if *e == 0 {
                rem.remove(&(top - 2));
            }
        }
        Some(Self { terms: quot, denominator: 1 })
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let d = self.denominator.max(rhs.denominator);
        let mut out = LaurentPoly { terms: self.rescaled(d), denominator: d };
        for (e, c) in rhs.rescaled(d) {
            out.add_term(c, e);
        }
        out.normalize();
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
            denominator: self.denominator,
        }
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let d = self.denominator.max(rhs.denominator);
        let (a, b) = (self.rescaled(d), rhs.rescaled(d));
        let mut out = LaurentPoly { terms: BTreeMap::new(), denominator: d };
        for (ea, ca) in &a {
            for (eb, cb) in &b {
                out.add_term(ca * cb, ea + eb);
            }
        }
        out.normalize();
        out
    }
}

impl fmt::Display for LaurentPoly {
    /// Terms in increasing degree, e.g. `q^2 + q^6 - q^8`, `q^(5/2)`, `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (&e, &c)) in self.terms.iter().enumerate() {
            let mag = c.unsigned_abs();
            if i == 0 {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c < 0 { " - " } else { " + " })?;
            }
            let power = if self.denominator == 1 || e % self.denominator == 0 {
                let e = e / self.denominator;
                match e {
                    0 => String::new(),
                    1 => "q".to_string(),
                    _ => format!("q^{e}"),
                }
            } else {
                format!("q^({e}/{})", self.denominator)
            };
            match (mag, power.is_empty()) {
                (_, true) => write!(f, "{mag}")?,
                (1, false) => f.write_str(&power)?,
                (_, false) => write!(f, "{mag}{power}")?,
            }
        }
        Ok(())
    }
}
