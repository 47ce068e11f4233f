//! Truncated Laurent series in q over the rationals.
//!
//! A [`QSeries`] stores exact coefficients for exponents
//! `min_exp .. order` and represents a function that agrees with the
//! stored polynomial modulo `q^order`.  The guaranteed order is
//! propagated through every operation: binary operations take the
//! minimum, multiplication accounts for the shift by the other
//! factor's minimal exponent, and inversion pays twice the leading
//! exponent.  A result never claims coefficients beyond what the
//! inputs guarantee.

use num_traits::{One, Zero};

use crate::error::QError;
use crate::rational::Rat;

/// Sign of a q-Pochhammer base or of a variable substitution q -> s*q^k.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    /// s^j as a rational.
    pub fn pow(self, j: i64) -> Rat {
        match self {
            Sign::Plus => Rat::one(),
            Sign::Minus => crate::rational::sign_pow(j),
        }
    }

    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

/// Truncated Laurent series: coefficients of `q^k` for
/// `min_exp <= k < order`, exact beyond doubt in that window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QSeries {
    min_exp: i64,
    order: i64,
    coeffs: Vec<Rat>,
}

/// First coefficient disagreement found by [`compare`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub exponent: i64,
    pub lhs: Rat,
    pub rhs: Rat,
}

/// Outcome of comparing two series up to an order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Comparison {
    pub requested_order: i64,
    pub effective_order: i64,
    /// True when the requested order exceeded what both series guarantee.
    pub clamped: bool,
    pub mismatch: Option<Mismatch>,
}

impl Comparison {
    pub fn is_pass(&self) -> bool {
        self.mismatch.is_none()
    }
}

impl QSeries {
    /// Build a series from explicit coefficients.  `coeffs[i]` is the
    /// coefficient of `q^(min_exp + i)`; the length must equal
    /// `order - min_exp`.
    pub fn new(min_exp: i64, coeffs: Vec<Rat>, order: i64) -> Result<QSeries, QError> {
        assert!(order > min_exp, "order must exceed min_exp");
        let expected = (order - min_exp) as usize;
        if coeffs.len() != expected {
            return Err(QError::LengthMismatch {
                expected,
                got: coeffs.len(),
            });
        }
        Ok(QSeries {
            min_exp,
            order,
            coeffs,
        })
    }

    /// The zero series, guaranteed to the given order.
    pub fn zero(order: i64) -> QSeries {
        let min_exp = 0.min(order - 1);
        QSeries {
            min_exp,
            order,
            coeffs: vec![Rat::zero(); (order - min_exp) as usize],
        }
    }

    /// The constant series 1 + O(q^order).
    pub fn one(order: i64) -> QSeries {
        QSeries::monomial(Rat::one(), 0, order)
    }

    /// The monomial c*q^e + O(q^order).  A zero coefficient yields the
    /// zero series with the stated window.
    pub fn monomial(coef: Rat, exp: i64, order: i64) -> QSeries {
        assert!(order > exp, "order must exceed the monomial exponent");
        let mut coeffs = vec![Rat::zero(); (order - exp) as usize];
        coeffs[0] = coef;
        QSeries {
            min_exp: exp,
            order,
            coeffs,
        }
    }

    pub fn min_exp(&self) -> i64 {
        self.min_exp
    }

    /// Exponent bound below which all coefficients are guaranteed.
    pub fn order(&self) -> i64 {
        self.order
    }

    /// Coefficient of `q^k`.  Exponents below `min_exp` are zero by
    /// construction; asking at or above `order` is a caller bug.
    pub fn coeff(&self, k: i64) -> Rat {
        assert!(k < self.order, "coefficient of q^{k} is not guaranteed");
        if k < self.min_exp {
            Rat::zero()
        } else {
            self.coeffs[(k - self.min_exp) as usize].clone()
        }
    }

    /// Exponent of the first nonzero stored coefficient, if any.
    pub fn leading_exponent(&self) -> Option<i64> {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .map(|i| self.min_exp + i as i64)
    }

    pub fn is_zero(&self) -> bool {
        self.leading_exponent().is_none()
    }

    /// Stored (exponent, coefficient) pairs with nonzero coefficient.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rat)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.min_exp + i as i64, c))
    }

    /// Drop coefficients at or above `order`, shrinking the guarantee.
    pub fn truncate(&self, order: i64) -> QSeries {
        assert!(order <= self.order, "cannot extend a guarantee");
        let min_exp = self.min_exp.min(order - 1);
        let mut coeffs = self.coeffs.clone();
        if min_exp < self.min_exp {
            // order fell below the stored window; keep an all-zero stub
            coeffs = vec![Rat::zero(); (order - min_exp) as usize];
        } else {
            coeffs.truncate((order - min_exp) as usize);
        }
        QSeries {
            min_exp,
            order,
            coeffs,
        }
    }

    pub fn neg(&self) -> QSeries {
        QSeries {
            min_exp: self.min_exp,
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    /// Coefficientwise sum; the guarantee is the weaker of the two.
    pub fn add(&self, other: &QSeries) -> QSeries {
        let min_exp = self.min_exp.min(other.min_exp);
        let order = self.order.min(other.order);
        let mut coeffs = vec![Rat::zero(); (order - min_exp) as usize];
        for src in [self, other] {
            for (i, c) in src.coeffs.iter().enumerate() {
                let k = src.min_exp + i as i64;
                if k < order && !c.is_zero() {
                    coeffs[(k - min_exp) as usize] += c;
                }
            }
        }
        QSeries {
            min_exp,
            order,
            coeffs,
        }
    }

    pub fn sub(&self, other: &QSeries) -> QSeries {
        self.add(&other.neg())
    }

    /// Cauchy product.  Result guarantee:
    /// `min(order_self + min_exp_other, order_other + min_exp_self)`.
    pub fn mul(&self, other: &QSeries) -> QSeries {
        let min_exp = self.min_exp + other.min_exp;
        let order = (self.order + other.min_exp).min(other.order + self.min_exp);
        let mut coeffs = vec![Rat::zero(); (order - min_exp) as usize];
        for (ia, ca) in self.coeffs.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            let ka = self.min_exp + ia as i64;
            for (ib, cb) in other.coeffs.iter().enumerate() {
                let k = ka + other.min_exp + ib as i64;
                if k >= order {
                    break;
                }
                if !cb.is_zero() {
                    coeffs[(k - min_exp) as usize] += ca * cb;
                }
            }
        }
        QSeries {
            min_exp,
            order,
            coeffs,
        }
    }

    /// Multiply by the scalar monomial `alpha * q^e` (alpha nonzero).
    pub fn scale_monomial(&self, alpha: &Rat, e: i64) -> Result<QSeries, QError> {
        if alpha.is_zero() {
            return Err(QError::ZeroScale);
        }
        Ok(QSeries {
            min_exp: self.min_exp + e,
            order: self.order + e,
            coeffs: self.coeffs.iter().map(|c| c * alpha).collect(),
        })
    }

    /// Multiply by the exact binomial `(1 - coef * q^exp)`, `exp >= 0`.
    /// Exact polynomial factors do not shrink the guarantee.
    pub fn mul_binomial(&self, coef: &Rat, exp: i64) -> QSeries {
        assert!(exp >= 0);
        if coef.is_zero() {
            return self.clone();
        }
        if exp == 0 {
            let s = Rat::one() - coef;
            return QSeries {
                min_exp: self.min_exp,
                order: self.order,
                coeffs: self.coeffs.iter().map(|c| c * &s).collect(),
            };
        }
        let mut coeffs = self.coeffs.clone();
        let n = coeffs.len();
        let e = exp as usize;
        // subtract coef * q^exp * self, truncated to the same window
        for i in (0..n).rev() {
            if i >= e && !self.coeffs[i - e].is_zero() {
                let t = &self.coeffs[i - e] * coef;
                coeffs[i] -= t;
            }
        }
        QSeries {
            min_exp: self.min_exp,
            order: self.order,
            coeffs,
        }
    }

    /// Divide by the exact binomial `(1 - coef * q^exp)`.  For `exp = 0`
    /// this is a scalar division and `coef = 1` is a pole.
    pub fn div_binomial(&self, coef: &Rat, exp: i64) -> Result<QSeries, QError> {
        assert!(exp >= 0);
        if coef.is_zero() {
            return Ok(self.clone());
        }
        if exp == 0 {
            let s = Rat::one() - coef;
            if s.is_zero() {
                return Err(QError::Parameter(
                    "pole: constant factor (1 - c) vanishes".into(),
                ));
            }
            let inv = s.recip();
            return Ok(QSeries {
                min_exp: self.min_exp,
                order: self.order,
                coeffs: self.coeffs.iter().map(|c| c * &inv).collect(),
            });
        }
        let mut coeffs = self.coeffs.clone();
        let n = coeffs.len();
        let e = exp as usize;
        // h_k = f_k + coef * h_{k-exp}
        for i in 0..n {
            if i >= e && !coeffs[i - e].is_zero() {
                let t = &coeffs[i - e] * coef;
                coeffs[i] += t;
            }
        }
        Ok(QSeries {
            min_exp: self.min_exp,
            order: self.order,
            coeffs,
        })
    }

    /// Multiplicative inverse.  The leading stored coefficient must be
    /// nonzero somewhere below the order; if the stored `min_exp` holds
    /// zeros the series is re-normalized internally first.  The result
    /// is guaranteed to `order - 2 * leading_exponent`.
    pub fn invert(&self) -> Result<QSeries, QError> {
        let m = self.leading_exponent().ok_or(QError::NonInvertible)?;
        // u = q^{-m} * self, a unit with coefficients for 0 .. order - m
        let rel = (self.order - m) as usize;
        let mut u = vec![Rat::zero(); rel];
        for (k, c) in self.terms() {
            u[(k - m) as usize] = c.clone();
        }
        let lead = u[0].clone();
        let lead_inv = lead.recip();
        let mut inv = vec![Rat::zero(); rel];
        inv[0] = lead_inv.clone();
        for k in 1..rel {
            let mut acc = Rat::zero();
            for j in 0..k {
                if !inv[j].is_zero() && !u[k - j].is_zero() {
                    acc += &inv[j] * &u[k - j];
                }
            }
            inv[k] = -acc * &lead_inv;
        }
        QSeries::new(-m, inv, self.order - 2 * m)
    }

    /// Substitute q -> sign * q^k.  The sign is folded into the
    /// coefficients; exponents are multiplied by k.
    pub fn compose_power(&self, sign: Sign, k: i64) -> Result<QSeries, QError> {
        if k < 1 {
            return Err(QError::InvalidPower(k));
        }
        let min_exp = self.min_exp * k;
        let order = self.order * k;
        let mut coeffs = vec![Rat::zero(); (order - min_exp) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let j = self.min_exp + i as i64;
                coeffs[((j - self.min_exp) * k) as usize] = c * sign.pow(j);
            }
        }
        Ok(QSeries {
            min_exp,
            order,
            coeffs,
        })
    }

    /// Small positive integer power by repeated multiplication.
    pub fn pow(&self, k: u32) -> QSeries {
        if k == 0 {
            return QSeries::one(self.order);
        }
        let mut result = self.clone();
        for _ in 1..k {
            result = result.mul(self);
        }
        result
    }
}

/// Compare two series for exact coefficient equality below
/// `min(order, order(f), order(g))`.  Clamping is recorded, never an
/// error.
pub fn compare(f: &QSeries, g: &QSeries, order: i64) -> Comparison {
    let guaranteed = f.order().min(g.order());
    let effective = order.min(guaranteed);
    let clamped = order > guaranteed;
    let start = f.min_exp().min(g.min_exp());
    let mut mismatch = None;
    for k in start..effective {
        let a = f.coeff(k);
        let b = g.coeff(k);
        if a != b {
            mismatch = Some(Mismatch {
                exponent: k,
                lhs: a,
                rhs: b,
            });
            break;
        }
    }
    Comparison {
        requested_order: order,
        effective_order: effective,
        clamped,
        mismatch,
    }
}
