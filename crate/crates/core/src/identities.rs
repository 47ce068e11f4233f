//! Builders for both sides of every cataloged identity.
//!
//! Each builder returns `(lhs, rhs)` as series guaranteed to at least
//! the requested order, constructed purely from the series kernel, the
//! product builders and the summation engine.  Substitutions
//! q -> q^2 and q -> -q are always performed by `compose_power` on a
//! fully truncated inner series.
//!
//! Parameterized identities take rational parameter values; a few
//! parameters may also be monomials in q (the specialization x = q of
//! the two main transformations, and the +-sqrt(q) arguments of the
//! Watson-Whipple limit, which is then evaluated in the rescaled
//! variable p with q = p^2).

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::QError;
use crate::mock::MockTheta;
use crate::products::{eta_quotient, lambert_pair, poch_inf, quadform_theta, EtaQuotientSpec, PochSpec};
use crate::rational::{format_rat, parse_rat, rat, rat_pow, sign_pow, Rat};
use crate::series::{QSeries, Sign};
use crate::sums::{Binomial, Factor, QSum, SumKind};

/// Value of one free parameter: a rational, or a monomial
/// `coef * q^(half_exp / 2)` (half-integral exponents appear only in
/// the Watson-Whipple limit, where the identity is rescaled to make
/// them integral).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParamValue {
    Rat(Rat),
    Monomial { coef: Rat, half_exp: i64 },
}

impl ParamValue {
    pub fn rational(&self) -> Option<&Rat> {
        match self {
            ParamValue::Rat(r) => Some(r),
            ParamValue::Monomial { .. } => None,
        }
    }

    /// Parse "p/q", "q", "-q", "sqrt(q)" or "-sqrt(q)".
    pub fn parse(s: &str) -> Option<ParamValue> {
        match s.trim() {
            "q" => Some(ParamValue::Monomial {
                coef: Rat::one(),
                half_exp: 2,
            }),
            "-q" => Some(ParamValue::Monomial {
                coef: -Rat::one(),
                half_exp: 2,
            }),
            "sqrt(q)" => Some(ParamValue::Monomial {
                coef: Rat::one(),
                half_exp: 1,
            }),
            "-sqrt(q)" => Some(ParamValue::Monomial {
                coef: -Rat::one(),
                half_exp: 1,
            }),
            other => parse_rat(other).map(ParamValue::Rat),
        }
    }
}

impl std::fmt::Display for ParamValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ParamValue::Rat(r) => write!(f, "{}", format_rat(r)),
            ParamValue::Monomial { coef, half_exp } => {
                let body = match half_exp {
                    1 => "sqrt(q)".to_string(),
                    2 => "q".to_string(),
                    h if h % 2 == 0 => format!("q^{}", h / 2),
                    h => format!("q^({h}/2)"),
                };
                if coef.is_one() {
                    write!(f, "{body}")
                } else if (-coef.clone()).is_one() {
                    write!(f, "-{body}")
                } else {
                    write!(f, "{}*{}", format_rat(coef), body)
                }
            }
        }
    }
}

/// Named parameter values for one verification of an identity.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ParamPoint {
    values: BTreeMap<String, ParamValue>,
}

impl ParamPoint {
    pub fn empty() -> ParamPoint {
        ParamPoint::default()
    }

    pub fn with(mut self, name: &str, value: ParamValue) -> ParamPoint {
        self.values.insert(name.to_string(), value);
        self
    }

    pub fn with_rat(self, name: &str, num: i64, den: i64) -> ParamPoint {
        self.with(name, ParamValue::Rat(crate::rational::ratio(num, den)))
    }

    pub fn set(&mut self, name: &str, value: ParamValue) {
        self.values.insert(name.to_string(), value);
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &ParamValue)> {
        self.values.iter()
    }

    fn expect(&self, names: &[&str]) -> Result<(), QError> {
        for n in names {
            if !self.values.contains_key(*n) {
                return Err(QError::Parameter(format!("missing parameter `{n}`")));
            }
        }
        for k in self.values.keys() {
            if !names.contains(&k.as_str()) {
                return Err(QError::Parameter(format!("unexpected parameter `{k}`")));
            }
        }
        Ok(())
    }

    fn get(&self, name: &str) -> Result<&ParamValue, QError> {
        self.values
            .get(name)
            .ok_or_else(|| QError::Parameter(format!("missing parameter `{name}`")))
    }

    fn rat(&self, name: &str) -> Result<Rat, QError> {
        match self.get(name)? {
            ParamValue::Rat(r) => Ok(r.clone()),
            ParamValue::Monomial { .. } => Err(QError::Parameter(format!(
                "parameter `{name}` must be rational here"
            ))),
        }
    }

    fn nonzero_rat(&self, name: &str) -> Result<Rat, QError> {
        let r = self.rat(name)?;
        if r.is_zero() {
            return Err(QError::Parameter(format!("parameter `{name}` must be nonzero")));
        }
        Ok(r)
    }
}

/// A monomial `c * q^k` in the working variable, used internally when a
/// parameter may be a q-power.
#[derive(Debug, Clone)]
struct Mono {
    c: Rat,
    k: i64,
}

impl Mono {
    fn from_param(v: &ParamValue, name: &str, scale: i64) -> Result<Mono, QError> {
        let m = match v {
            ParamValue::Rat(r) => Mono { c: r.clone(), k: 0 },
            ParamValue::Monomial { coef, half_exp } => {
                if (half_exp * scale) % 2 != 0 {
                    return Err(QError::Parameter(format!(
                        "parameter `{name}` has a half-integral exponent; rescaling required"
                    )));
                }
                Mono {
                    c: coef.clone(),
                    k: half_exp * scale / 2,
                }
            }
        };
        if m.c.is_zero() {
            return Err(QError::Parameter(format!("parameter `{name}` must be nonzero")));
        }
        Ok(m)
    }

    fn recip(&self) -> Mono {
        Mono {
            c: self.c.recip(),
            k: -self.k,
        }
    }

    fn mul(&self, other: &Mono) -> Mono {
        Mono {
            c: &self.c * &other.c,
            k: self.k + other.k,
        }
    }

    /// PochSpec for `(self * q^shift; q^step)_...`, requiring a
    /// nonnegative starting exponent.
    fn poch(&self, shift: i64, step: i64) -> Result<PochSpec, QError> {
        let e = self.k + shift;
        if e < 0 {
            return Err(QError::Parameter(format!(
                "q-exponent {e} of a Pochhammer argument is negative"
            )));
        }
        Ok(PochSpec::plain(self.c.clone(), e, step))
    }
}

fn scaled(f: &QSeries, r: &Rat) -> QSeries {
    if r.is_zero() {
        QSeries::zero(f.order())
    } else {
        f.scale_monomial(r, 0).unwrap()
    }
}

/// `(alpha * q^e; q^d)_inf` truncated to `order`.
fn pi(alpha: Rat, e: i64, d: i64, order: i64) -> QSeries {
    poch_inf(&PochSpec::plain(alpha, e, d), order).expect("positive step")
}

/// The mock theta function evaluated at q^2, guaranteed past `order`.
fn mock2(m: MockTheta, order: i64) -> Result<QSeries, QError> {
    let inner = order / 2 + 1;
    m.series(inner)?.compose_power(Sign::Plus, 2)
}

/// The mock theta function evaluated at -q.
fn mock_neg(m: MockTheta, order: i64) -> Result<QSeries, QError> {
    m.series(order)?.compose_power(Sign::Minus, 1)
}

/// `q^{-1} f` for a series divisible by q.
fn shift_down(f: &QSeries) -> QSeries {
    f.scale_monomial(&Rat::one(), -1).unwrap()
}

/// RHS product of Ramanujan's first and fourth identities:
/// `(-q;q^2)_inf^2 (-q, -q^5, q^6; q^6)_inf`.
fn product_p1(order: i64) -> QSeries {
    pi(rat(-1), 1, 2, order)
        .pow(2)
        .mul(&pi(rat(-1), 1, 6, order))
        .mul(&pi(rat(-1), 5, 6, order))
        .mul(&pi(rat(1), 6, 6, order))
}

/// RHS product of the second and third identities:
/// `(-q;q^2)_inf^2 (-q^3, -q^3, q^6; q^6)_inf`.
fn product_p2(order: i64) -> QSeries {
    pi(rat(-1), 1, 2, order)
        .pow(2)
        .mul(&pi(rat(-1), 3, 6, order).pow(2))
        .mul(&pi(rat(1), 6, 6, order))
}

/// Berndt-Chan RHS products.
fn product_bc1(order: i64) -> QSeries {
    pi(rat(-1), 2, 2, order)
        .pow(3)
        .mul(&pi(rat(1), 6, 12, order).pow(2))
        .mul(&pi(rat(1), 12, 12, order))
}

fn product_bc2(order: i64) -> QSeries {
    pi(rat(-1), 2, 2, order)
        .pow(2)
        .mul(&pi(rat(-1), 6, 6, order).pow(2))
        .mul(&pi(rat(1), 6, 6, order))
        .scale_monomial(&Rat::one(), 1)
        .unwrap()
}

fn product_bc4(order: i64) -> QSeries {
    pi(rat(-1), 1, 2, order)
        .pow(3)
        .mul(&pi(rat(1), 3, 12, order))
        .mul(&pi(rat(1), 9, 12, order))
        .mul(&pi(rat(1), 12, 12, order))
}

type Sides = (QSeries, QSeries);

fn ram_eq1(order: i64) -> Result<Sides, QError> {
    let lhs = shift_down(&mock2(MockTheta::Psi, order + 1)?)
        .add(&MockTheta::Rho.series(order)?);
    Ok((lhs, product_p1(order)))
}

fn ram_eq2(order: i64) -> Result<Sides, QError> {
    let lhs = mock2(MockTheta::Phi, order)?
        .add(&scaled(&MockTheta::Sigma.series(order)?, &rat(2)));
    Ok((lhs, product_p2(order)))
}

fn ram_eq3(order: i64) -> Result<Sides, QError> {
    let lhs = scaled(&mock2(MockTheta::Phi, order)?, &rat(2))
        .sub(&scaled(&mock_neg(MockTheta::Mu, order)?, &rat(2)));
    Ok((lhs, product_p2(order)))
}

fn ram_eq4(order: i64) -> Result<Sides, QError> {
    let lhs = scaled(&shift_down(&mock2(MockTheta::Psi, order + 1)?), &rat(2))
        .add(&mock_neg(MockTheta::Lambda, order)?);
    Ok((lhs, product_p1(order)))
}

/// mu(q) = phi(q^2)/2 - sigma(-q)
fn inter_1(order: i64) -> Result<Sides, QError> {
    let lhs = MockTheta::Mu.series(order)?;
    let rhs = scaled(&mock2(MockTheta::Phi, order)?, &crate::rational::ratio(1, 2))
        .sub(&mock_neg(MockTheta::Sigma, order)?);
    Ok((lhs, rhs))
}

/// (q;q^2)_inf^3 (-q,-q^2,q^3;q^3)_inf = phi(q^2) + 2 sigma(-q)
fn inter_2(order: i64) -> Result<Sides, QError> {
    let lhs = pi(rat(1), 1, 2, order)
        .pow(3)
        .mul(&pi(rat(-1), 1, 3, order))
        .mul(&pi(rat(-1), 2, 3, order))
        .mul(&pi(rat(1), 3, 3, order));
    let rhs = mock2(MockTheta::Phi, order)?
        .add(&scaled(&mock_neg(MockTheta::Sigma, order)?, &rat(2)));
    Ok((lhs, rhs))
}

/// lambda(q) = rho(-q) + q^{-1} psi(q^2)
fn inter_3(order: i64) -> Result<Sides, QError> {
    let lhs = MockTheta::Lambda.series(order)?;
    let rhs = mock_neg(MockTheta::Rho, order)?
        .add(&shift_down(&mock2(MockTheta::Psi, order + 1)?));
    Ok((lhs, rhs))
}

/// (q;q^2)_inf^3 (-q^3,-q^3,q^3;q^3)_inf = rho(-q) - q^{-1} psi(q^2)
fn inter_4(order: i64) -> Result<Sides, QError> {
    let lhs = pi(rat(1), 1, 2, order)
        .pow(3)
        .mul(&pi(rat(-1), 3, 3, order).pow(2))
        .mul(&pi(rat(1), 3, 3, order));
    let rhs = mock_neg(MockTheta::Rho, order)?
        .sub(&shift_down(&mock2(MockTheta::Psi, order + 1)?));
    Ok((lhs, rhs))
}

fn rr1(order: i64) -> Result<Sides, QError> {
    // 2 sum (q;q^2)_n (-1)^n / (q)_n, Cesaro
    let sum = QSum::new(
        vec![
            Factor::num(PochSpec::plain(rat(1), 1, 2), 1, 0),
            Factor::den(PochSpec::plain(rat(1), 1, 1), 1, 0),
        ],
        Box::new(sign_pow),
        Box::new(|_| 0),
        SumKind::Cesaro,
    );
    let lhs = scaled(&sum.eval(order)?, &rat(2));
    let rhs = pi(rat(1), 1, 2, order)
        .mul(&pi(rat(-1), 1, 3, order))
        .mul(&pi(rat(-1), 2, 3, order))
        .mul(&pi(rat(1), 3, 3, order))
        .mul(&pi(rat(1), 2, 2, order).invert()?);
    Ok((lhs, rhs))
}

fn rr2(order: i64) -> Result<Sides, QError> {
    // sum (q;q^2)_n (-q)^n / (q)_n
    let sum = QSum::new(
        vec![
            Factor::num(PochSpec::plain(rat(1), 1, 2), 1, 0),
            Factor::den(PochSpec::plain(rat(1), 1, 1), 1, 0),
        ],
        Box::new(sign_pow),
        Box::new(|n| n),
        SumKind::Ordinary,
    );
    let lhs = sum.eval(order)?;
    let rhs = pi(rat(1), 1, 2, order)
        .mul(&pi(rat(-1), 3, 3, order).pow(2))
        .mul(&pi(rat(1), 3, 3, order))
        .mul(&pi(rat(1), 2, 2, order).invert()?);
    Ok((lhs, rhs))
}

/// Summation regime for a stream whose term exponent is
/// `slope * n + const` with coefficient ratio `r` per step.
fn kind_for(slope: i64, ratio: Rat) -> Result<SumKind, QError> {
    if slope > 0 {
        Ok(SumKind::Ordinary)
    } else if slope < 0 {
        Err(QError::Parameter(
            "term exponents decrease; the sum is formally divergent".into(),
        ))
    } else if ratio == -Rat::one() {
        Ok(SumKind::Cesaro)
    } else if ratio.is_one() {
        Err(QError::Parameter(
            "constant-exponent stream with coefficient ratio 1 diverges".into(),
        ))
    } else {
        Ok(SumKind::Geometric { ratio })
    }
}

/// LHS common to trans1 and aux-third:
/// `(-aq)_inf/(-q)_inf * sum (x;q^2)_n (aq)_n (-q/x)^n / (q^2;q^2)_n`.
fn trans1_lhs(a: &Rat, x: &Mono, order: i64) -> Result<QSeries, QError> {
    let pre = pi(-a.clone(), 1, 1, order).mul(&pi(rat(-1), 1, 1, order).invert()?);
    let step = Mono { c: -x.c.recip(), k: 1 - x.k }; // -q/x
    if step.k < 0 {
        return Err(QError::Parameter("x may be rational or q, nothing higher".into()));
    }
    let ratio = step.c.clone();
    let slope = step.k;
    let sum = QSum::new(
        vec![
            Factor::num(x.poch(0, 2)?, 1, 0),
            Factor::num(PochSpec::plain(a.clone(), 1, 1), 1, 0),
            Factor::den(PochSpec::plain(rat(1), 2, 2), 1, 0),
        ],
        Box::new(move |n| rat_pow(&ratio, n)),
        Box::new(move |n| slope * n),
        kind_for(slope, step.c.clone())?,
    );
    Ok(pre.mul(&sum.eval(order)?))
}

/// First sum of trans1's RHS (also the LHS of aux-first):
/// `sum (a^2q^2;q^2)_{2n} (-1)^n q^{2n^2} / [(q^4;q^4)_n (-a^2q/x;q^2)_{2n+1}]`.
fn trans1_sum1(a: &Rat, x: &Mono, order: i64) -> Result<QSeries, QError> {
    let a2 = a * a;
    let arg = Mono { c: -&a2 * x.c.recip(), k: 1 - x.k }; // -a^2 q / x
    let sum = QSum::new(
        vec![
            Factor::num(PochSpec::plain(a2.clone(), 2, 2), 2, 0),
            Factor::den(PochSpec::plain(rat(1), 4, 4), 1, 0),
            Factor::den(arg.poch(0, 2)?, 2, 1),
        ],
        Box::new(sign_pow),
        Box::new(|n| 2 * n * n),
        SumKind::Ordinary,
    );
    sum.eval(order)
}

/// Second sum of trans1's RHS (also appears in aux-second), reindexed
/// to start at zero:
/// `sum_{n>=1} (a^2q^2;q^2)_{n-1} (-q)^{n(n+1)/2} / [(-q;-q)_{n-1} (-a^2q^2/x;q^2)_n]`.
fn trans1_sum2(a: &Rat, x: &Mono, order: i64) -> Result<QSeries, QError> {
    let a2 = a * a;
    let arg = Mono { c: -&a2 * x.c.recip(), k: 2 - x.k }; // -a^2 q^2 / x
    let sum = QSum::new(
        vec![
            Factor::num(PochSpec::plain(a2.clone(), 2, 2), 1, 0),
            Factor::den(PochSpec::new(rat(-1), 1, Sign::Minus, 1), 1, 0),
            Factor::den(arg.poch(0, 2)?, 1, 1),
        ],
        Box::new(|m| sign_pow((m + 1) * (m + 2) / 2)),
        Box::new(|m| (m + 1) * (m + 2) / 2),
        SumKind::Ordinary,
    );
    sum.eval(order)
}

/// Quotient `(c1*q^{e}, q^2)_inf / (c2*q^{e}, q^2)_inf`-style prefactors.
fn poch_quot(num: &Mono, den: &Mono, step: i64, order: i64) -> Result<QSeries, QError> {
    let n = poch_inf(&num.poch(0, step)?, order)?;
    let d = poch_inf(&den.poch(0, step)?, order)?;
    Ok(n.mul(&d.invert()?))
}

fn trans1_sides(a: &Rat, xv: &ParamValue, order: i64) -> Result<Sides, QError> {
    let x = Mono::from_param(xv, "x", 1)?;
    if x.k > 1 || x.k < 0 {
        return Err(QError::Parameter("x must be rational or a q-monomial of degree 1".into()));
    }
    let lhs = trans1_lhs(a, &x, order)?;
    let a2 = a * a;
    let pre1 = poch_quot(
        &Mono { c: -&a2 * x.c.recip(), k: 1 - x.k },
        &Mono { c: -x.c.recip(), k: 1 - x.k },
        2,
        order,
    )?;
    let pre2 = poch_quot(
        &Mono { c: -&a2 * x.c.recip(), k: 2 - x.k },
        &Mono { c: -x.c.recip(), k: 2 - x.k },
        2,
        order,
    )?;
    let rhs = pre1
        .mul(&trans1_sum1(a, &x, order)?)
        .sub(&scaled(&pre2.mul(&trans1_sum2(a, &x, order)?), a));
    Ok((lhs, rhs))
}

fn trans2_sides(a: &Rat, xv: &ParamValue, order: i64) -> Result<Sides, QError> {
    let x = Mono::from_param(xv, "x", 1)?;
    if x.k > 1 || x.k < 0 {
        return Err(QError::Parameter("x must be rational or a q-monomial of degree 1".into()));
    }
    let a2 = a * a;
    // LHS: (-aq)_inf/(-q)_inf * sum (x;q^2)_n (aq)_n (-q^2/x)^n / (q^2;q^2)_n
    let pre = pi(-a.clone(), 1, 1, order).mul(&pi(rat(-1), 1, 1, order).invert()?);
    let step = Mono { c: -x.c.recip(), k: 2 - x.k };
    let ratio = step.c.clone();
    let slope = step.k;
    let sum = QSum::new(
        vec![
            Factor::num(x.poch(0, 2)?, 1, 0),
            Factor::num(PochSpec::plain(a.clone(), 1, 1), 1, 0),
            Factor::den(PochSpec::plain(rat(1), 2, 2), 1, 0),
        ],
        Box::new(move |n| rat_pow(&ratio, n)),
        Box::new(move |n| slope * n),
        kind_for(slope, step.c.clone())?,
    );
    let lhs = pre.mul(&sum.eval(order)?);

    // RHS first term: (-a^2q^2/x;q^2)_inf/(-q^2/x;q^2)_inf *
    //   sum (a^2q^2;q^2)_n (-q)^{n(n+1)/2} / [(-q;-q)_n (-a^2q^2/x;q^2)_{n+1}]
    let arg22 = Mono { c: -&a2 * x.c.recip(), k: 2 - x.k };
    let pre1 = poch_quot(&arg22, &Mono { c: -x.c.recip(), k: 2 - x.k }, 2, order)?;
    let sum1 = QSum::new(
        vec![
            Factor::num(PochSpec::plain(a2.clone(), 2, 2), 1, 0),
            Factor::den(PochSpec::new(rat(-1), 1, Sign::Minus, 1), 1, 0),
            Factor::den(arg22.poch(0, 2)?, 1, 1),
        ],
        Box::new(|n| sign_pow(n * (n + 1) / 2)),
        Box::new(|n| n * (n + 1) / 2),
        SumKind::Ordinary,
    )
    .eval(order)?;

    // RHS second term: a * (-a^2q^3/x;q^2)_inf/(-q^3/x;q^2)_inf *
    //   sum (a^2q^2;q^2)_{2n} (-1)^n q^{2n^2+4n+1} / [(q^4;q^4)_n (-a^2q^3/x;q^2)_{2n+1}]
    let arg3 = Mono { c: -&a2 * x.c.recip(), k: 3 - x.k };
    let pre2 = poch_quot(&arg3, &Mono { c: -x.c.recip(), k: 3 - x.k }, 2, order)?;
    let sum2 = QSum::new(
        vec![
            Factor::num(PochSpec::plain(a2.clone(), 2, 2), 2, 0),
            Factor::den(PochSpec::plain(rat(1), 4, 4), 1, 0),
            Factor::den(arg3.poch(0, 2)?, 2, 1),
        ],
        Box::new(sign_pow),
        Box::new(|n| 2 * n * n + 4 * n + 1),
        SumKind::Ordinary,
    )
    .eval(order)?;

    let rhs = pre1.mul(&sum1).add(&scaled(&pre2.mul(&sum2), a));
    Ok((lhs, rhs))
}

fn heine_constraints(b: &Rat, c: &Rat, t: &Rat, a: &Rat, square_ratio: bool) -> Result<(), QError> {
    if b.is_zero() || b.is_one() {
        return Err(QError::Parameter("b must avoid {0, 1}".into()));
    }
    if square_ratio && *b == -Rat::one() {
        return Err(QError::Parameter("b must avoid -1 (ratio b^2 = 1)".into()));
    }
    if c.is_one() {
        return Err(QError::Parameter("c = 1 is a pole of (c)_n".into()));
    }
    if t.is_one() {
        return Err(QError::Parameter("t = 1 is a pole of the geometric tail".into()));
    }
    if (a * t).is_one() {
        return Err(QError::Parameter("a*t = 1 is a pole of (at;q^2)_n".into()));
    }
    Ok(())
}

fn heine1_sides(a: &Rat, b: &Rat, c: &Rat, t: &Rat, order: i64) -> Result<Sides, QError> {
    heine_constraints(b, c, t, a, false)?;
    let tc = t.clone();
    let lhs = QSum::new(
        vec![
            Factor::num(PochSpec::plain(a.clone(), 0, 2), 1, 0),
            Factor::num(PochSpec::plain(b.clone(), 0, 1), 2, 0),
            Factor::den(PochSpec::plain(rat(1), 2, 2), 1, 0),
            Factor::den(PochSpec::plain(c.clone(), 0, 1), 2, 0),
        ],
        Box::new(move |n| rat_pow(&tc, n)),
        Box::new(|_| 0),
        kind_for(0, t.clone())?,
    )
    .eval(order)?;

    let pre = pi(b.clone(), 0, 1, order)
        .mul(&pi(a * t, 0, 2, order))
        .mul(&pi(c.clone(), 0, 1, order).invert()?)
        .mul(&pi(t.clone(), 0, 2, order).invert()?);
    let bc = b.clone();
    let sum = QSum::new(
        vec![
            Factor::num(PochSpec::plain(c / b, 0, 1), 1, 0),
            Factor::num(PochSpec::plain(t.clone(), 0, 2), 1, 0),
            Factor::den(PochSpec::plain(rat(1), 1, 1), 1, 0),
            Factor::den(PochSpec::plain(a * t, 0, 2), 1, 0),
        ],
        Box::new(move |n| rat_pow(&bc, n)),
        Box::new(|_| 0),
        kind_for(0, b.clone())?,
    )
    .eval(order)?;
    Ok((lhs, pre.mul(&sum)))
}

fn heine2_sides(a: &Rat, b: &Rat, c: &Rat, t: &Rat, order: i64) -> Result<Sides, QError> {
    heine_constraints(b, c, t, a, true)?;
    let tc = t.clone();
    let lhs = QSum::new(
        vec![
            Factor::num(PochSpec::plain(a.clone(), 0, 2), 1, 0),
            Factor::num(PochSpec::plain(b.clone(), 0, 1), 1, 0),
            Factor::den(PochSpec::plain(rat(1), 2, 2), 1, 0),
            Factor::den(PochSpec::plain(c.clone(), 0, 1), 1, 0),
        ],
        Box::new(move |n| rat_pow(&tc, n)),
        Box::new(|_| 0),
        kind_for(0, t.clone())?,
    )
    .eval(order)?;

    let b2 = b * b;
    let pre1 = pi(b.clone(), 0, 1, order)
        .mul(&pi(a * t, 0, 2, order))
        .mul(&pi(c.clone(), 0, 1, order).invert()?)
        .mul(&pi(t.clone(), 0, 2, order).invert()?);
    let bc1 = b2.clone();
    let sum1 = QSum::new(
        vec![
            Factor::num(PochSpec::plain(c / b, 0, 1), 2, 0),
            Factor::num(PochSpec::plain(t.clone(), 0, 2), 1, 0),
            Factor::den(PochSpec::plain(rat(1), 1, 1), 2, 0),
            Factor::den(PochSpec::plain(a * t, 0, 2), 1, 0),
        ],
        Box::new(move |n| rat_pow(&bc1, n)),
        Box::new(|_| 0),
        kind_for(0, b2.clone())?,
    )
    .eval(order)?;

    let pre2 = pi(b.clone(), 0, 1, order)
        .mul(&pi(a * t, 1, 2, order))
        .mul(&pi(c.clone(), 0, 1, order).invert()?)
        .mul(&pi(t.clone(), 1, 2, order).invert()?);
    let bb = b.clone();
    let bc2 = b2.clone();
    let sum2 = QSum::new(
        vec![
            Factor::num(PochSpec::plain(c / b, 0, 1), 2, 1),
            Factor::num(PochSpec::plain(t.clone(), 1, 2), 1, 0),
            Factor::den(PochSpec::plain(rat(1), 1, 1), 2, 1),
            Factor::den(PochSpec::plain(a * t, 1, 2), 1, 0),
        ],
        Box::new(move |n| &bb * rat_pow(&bc2, n)),
        Box::new(|_| 0),
        kind_for(0, b2.clone())?,
    )
    .eval(order)?;
    Ok((lhs, pre1.mul(&sum1).add(&pre2.mul(&sum2))))
}

fn aux_first_sides(a: &Rat, xv: &ParamValue, order: i64) -> Result<Sides, QError> {
    let x = Mono::from_param(xv, "x", 1)?;
    let lhs = trans1_sum1(a, &x, order)?;
    let a2 = a * a;
    let arg = Mono { c: -&a2 * x.c.recip(), k: 1 - x.k };
    let pre = pi(a2.clone(), 2, 2, order)
        .mul(&pi(rat(1), 2, 4, order))
        .mul(&poch_inf(&arg.poch(0, 2)?, order)?.invert()?);
    let ac = a.clone();
    let sum = QSum::new(
        vec![
            Factor::num(Mono { c: -x.c.recip(), k: 1 - x.k }.poch(0, 2)?, 1, 0),
            Factor::den(PochSpec::plain(rat(1), 2, 2), 1, 0),
            Factor::den(PochSpec::plain(rat(1), 2, 4), 1, 0),
        ],
        Box::new(move |n| rat_pow(&ac, 2 * n)),
        Box::new(|n| 2 * n),
        SumKind::Ordinary,
    )
    .eval(order)?;
    Ok((lhs, pre.mul(&sum)))
}

/// LHS sum of aux-second, shared with aux-third's second RHS term:
/// `sum (-q^2/x;q^2)_n a^{2n+1} q^{2n+1} / [(q)_{2n+1} (-q^2;q^2)_n]`.
fn aux_second_lhs(a: &Rat, x: &Mono, order: i64) -> Result<QSeries, QError> {
    let ac = a.clone();
    QSum::new(
        vec![
            Factor::num(Mono { c: -x.c.recip(), k: 2 - x.k }.poch(0, 2)?, 1, 0),
            Factor::den(PochSpec::plain(rat(1), 1, 1), 2, 1),
            Factor::den(PochSpec::plain(rat(-1), 2, 2), 1, 0),
        ],
        Box::new(move |n| rat_pow(&ac, 2 * n + 1)),
        Box::new(|n| 2 * n + 1),
        SumKind::Ordinary,
    )
    .eval(order)
}

fn aux_second_sides(a: &Rat, xv: &ParamValue, order: i64) -> Result<Sides, QError> {
    let x = Mono::from_param(xv, "x", 1)?;
    let lhs = aux_second_lhs(a, &x, order)?;
    let a2 = a * a;
    let arg = Mono { c: -&a2 * x.c.recip(), k: 2 - x.k };
    let pre = poch_inf(&arg.poch(0, 2)?, order)?
        .mul(&pi(rat(-1), 1, 2, order))
        .mul(&pi(a2.clone(), 2, 2, order).invert()?);
    let rhs = scaled(&pre.mul(&trans1_sum2(a, &x, order)?), &-a.clone());
    Ok((lhs, rhs))
}

fn aux_third_sides(a: &Rat, xv: &ParamValue, order: i64) -> Result<Sides, QError> {
    let x = Mono::from_param(xv, "x", 1)?;
    if x.k > 1 || x.k < 0 {
        return Err(QError::Parameter("x must be rational or a q-monomial of degree 1".into()));
    }
    let lhs = trans1_lhs(a, &x, order)?;
    let a2 = a * a;
    let euler2 = pi(a2.clone(), 2, 2, order);

    let pre1 = euler2
        .mul(&pi(rat(-1), 2, 2, order).invert()?)
        .mul(&poch_inf(&Mono { c: -x.c.recip(), k: 1 - x.k }.poch(0, 2)?, order)?.invert()?);
    let ac = a.clone();
    let sum1 = QSum::new(
        vec![
            Factor::num(Mono { c: -x.c.recip(), k: 1 - x.k }.poch(0, 2)?, 1, 0),
            Factor::den(PochSpec::plain(rat(1), 1, 1), 2, 0),
            Factor::den(PochSpec::plain(rat(-1), 1, 2), 1, 0),
        ],
        Box::new(move |n| rat_pow(&ac, 2 * n)),
        Box::new(|n| 2 * n),
        SumKind::Ordinary,
    )
    .eval(order)?;

    let pre2 = euler2
        .mul(&pi(rat(-1), 1, 2, order).invert()?)
        .mul(&poch_inf(&Mono { c: -x.c.recip(), k: 2 - x.k }.poch(0, 2)?, order)?.invert()?);
    let sum2 = aux_second_lhs(a, &x, order)?;

    Ok((lhs, pre1.mul(&sum1).add(&pre2.mul(&sum2))))
}

/// Both sides of the b, c -> infinity limit of the Watson-Whipple
/// transformation.  `a`, `d`, `e` may be rational or monomials in q;
/// half-integral exponents rescale the whole identity to p with
/// q = p^2, and `order` is then interpreted in p.
pub fn ww_limit_sides(
    av: &ParamValue,
    dv: &ParamValue,
    ev: &ParamValue,
    order: i64,
) -> Result<Sides, QError> {
    let needs_half = [av, dv, ev].iter().any(|v| {
        matches!(v, ParamValue::Monomial { half_exp, .. } if half_exp % 2 != 0)
    });
    let scale = if needs_half { 2 } else { 1 };
    let a = Mono::from_param(av, "a", scale)?;
    let d = Mono::from_param(dv, "d", scale)?;
    let e = Mono::from_param(ev, "e", scale)?;
    if a.k == 0 && (a.c.is_zero() || a.c.is_one()) {
        return Err(QError::Parameter("a must avoid {0, 1}".into()));
    }

    let aq = Mono { c: a.c.clone(), k: a.k + scale };
    let aq_d = aq.mul(&d.recip());
    let aq_e = aq.mul(&e.recip());
    let aq_de = aq.mul(&d.recip()).mul(&e.recip());

    // LHS: sum (1-aq^{2n})/(1-a) (a,d,e)_n (-1)^n q^{3n(n-1)/2} (aq)^{2n}
    //          / [(q, aq/d, aq/e)_n (de)^n]
    let (ca, ka) = (a.c.clone(), a.k);
    let aq_coef = aq.c.clone();
    let aq_k = aq.k;
    let de_c = (&d.c * &e.c).recip();
    let de_k = d.k + e.k;
    let extra_c = ca.clone();
    let sum = QSum::new(
        vec![
            Factor::num(a.poch(0, scale)?, 1, 0),
            Factor::num(d.poch(0, scale)?, 1, 0),
            Factor::num(e.poch(0, scale)?, 1, 0),
            Factor::den(PochSpec::plain(rat(1), scale, scale), 1, 0),
            Factor::den(aq_d.poch(0, scale)?, 1, 0),
            Factor::den(aq_e.poch(0, scale)?, 1, 0),
        ],
        Box::new(move |n| sign_pow(n) * rat_pow(&aq_coef, 2 * n) * rat_pow(&de_c, n)),
        Box::new(move |n| scale * 3 * n * (n - 1) / 2 + 2 * n * aq_k - n * de_k),
        SumKind::Ordinary,
    )
    .with_extra(Box::new(move |n| {
        vec![Binomial {
            coef: extra_c.clone(),
            exp: ka + 2 * n * scale,
        }]
    }));
    let lhs = sum.eval(order)?.div_binomial(&ca, ka)?.truncate(order);

    // RHS: (aq, aq/de)_inf / (aq/d, aq/e)_inf * sum (d,e)_n (aq/de)^n / (q)_n
    let pre = poch_inf(&aq.poch(0, scale)?, order)?
        .mul(&poch_inf(&aq_de.poch(0, scale)?, order)?)
        .mul(&poch_inf(&aq_d.poch(0, scale)?, order)?.invert()?)
        .mul(&poch_inf(&aq_e.poch(0, scale)?, order)?.invert()?);
    let w_c = aq_de.c.clone();
    let w_k = aq_de.k;
    let sum = QSum::new(
        vec![
            Factor::num(d.poch(0, scale)?, 1, 0),
            Factor::num(e.poch(0, scale)?, 1, 0),
            Factor::den(PochSpec::plain(rat(1), scale, scale), 1, 0),
        ],
        Box::new(move |n| rat_pow(&w_c, n)),
        Box::new(move |n| w_k * n),
        kind_for(w_k, aq_de.c.clone())?,
    );
    let rhs = pre.mul(&sum.eval(order)?);
    Ok((lhs, rhs))
}

fn ram_342(order: i64) -> Result<Sides, QError> {
    let lhs = MockTheta::Phi
        .series(order)?
        .add(&scaled(&MockTheta::PhiMinus.series(order)?, &rat(2)));
    let rhs = pi(rat(1), 1, 1, order).invert()?.mul(
        &QSeries::one(order).add(&scaled(&lambert_pair(6, 2, 4, order), &rat(6))),
    );
    Ok((lhs, rhs))
}

fn lorenz(order: i64) -> Result<Sides, QError> {
    let lhs = quadform_theta(order);
    let rhs = QSeries::one(order).add(&scaled(&lambert_pair(3, 1, 2, order), &rat(6)));
    Ok((lhs, rhs))
}

/// Both sides of Ramanujan's two-sum identity with free parameter a.
/// At a = -1 the RHS ratio `(-a^3;q^6)_inf / (-a;q^2)_inf` is first
/// rewritten as `(1 - a + a^2)(-a^3q^6;q^6)_inf / (-aq^2;q^2)_inf`
/// (cancelling the common zero of 1 + a^3 and 1 + a) and only then
/// specialized, so both sides stay finite.
pub fn ramanother_sides(a: &Rat, order: i64) -> Result<Sides, QError> {
    if a.is_zero() {
        return Err(QError::Parameter("a must be nonzero".into()));
    }
    let ac = a.clone();
    let sum1 = QSum::new(
        vec![
            Factor::num(PochSpec::plain(-a.clone(), 1, 2), 1, 0),
            Factor::den(PochSpec::plain(a.clone(), 1, 1), 2, 1),
        ],
        Box::new(move |n| rat_pow(&ac, n + 1)),
        Box::new(|n| (n + 1) * (n + 1)),
        SumKind::Ordinary,
    )
    .eval(order)?;
    let sum2 = QSum::new(
        vec![
            Factor::num(PochSpec::plain(a.recip(), 0, 1), 2, 1),
            Factor::den(PochSpec::plain(-a.recip(), 1, 2), 1, 1),
        ],
        Box::new(|_| rat(1)),
        Box::new(|m| m + 1),
        SumKind::Ordinary,
    )
    .eval(order)?;
    let lhs = sum1.sub(&sum2);

    let a3 = a * a * a;
    let ratio = if *a == -Rat::one() {
        // (1 - a + a^2) (-a^3 q^6; q^6)_inf / (-a q^2; q^2)_inf
        let head = Rat::one() - a + a * a;
        pi(-&a3, 6, 6, order)
            .mul(&pi(-a.clone(), 2, 2, order).invert()?)
            .scale_monomial(&head, 0)?
    } else {
        pi(-a3.clone(), 0, 6, order).mul(&pi(-a.clone(), 0, 2, order).invert()?)
    };
    let num = pi(rat(1), 2, 2, order)
        .mul(&pi(-a3.recip(), 6, 6, order))
        .mul(&pi(rat(1), 6, 6, order))
        .scale_monomial(&Rat::one(), 1)?;
    let den = pi(a.clone(), 1, 1, order)
        .mul(&pi(rat(1), 1, 2, order))
        .mul(&pi(-a.recip(), 2, 2, order))
        .mul(&pi(-a.recip(), 1, 2, order))
        .mul(&pi(rat(1), 2, 2, order))
        .scale_monomial(a, 0)?;
    let rhs = num.mul(&ratio).mul(&den.invert()?).truncate(order);
    Ok((lhs, rhs))
}

fn eta_g024(order: i64) -> Result<Sides, QError> {
    let lhs_spec = EtaQuotientSpec::new(&[(24, 4), (12, -2)]);
    let t1_spec = EtaQuotientSpec::new(&[(8, 1), (2, 3), (24, 1), (6, -1), (4, -2)]);
    let t2_spec = EtaQuotientSpec::new(&[(8, 4), (4, -2)]);
    // integral leading exponents 3, 1, 1 by the 24-divisibility check
    assert_eq!(lhs_spec.weight_sum() / 24, 3);
    assert_eq!(t1_spec.weight_sum() / 24, 1);
    assert_eq!(t2_spec.weight_sum() / 24, 1);
    let lhs = eta_quotient(&lhs_spec, order)?.scale_monomial(&rat(-3), 0)?;
    let rhs = eta_quotient(&t1_spec, order)?.sub(&eta_quotient(&t2_spec, order)?);
    Ok((lhs, rhs))
}

fn bc_eq1(order: i64) -> Result<Sides, QError> {
    let lhs = scaled(&shift_down(&mock2(MockTheta::PsiMinus, order + 1)?), &rat(-2))
        .add(&MockTheta::Rho.series(order)?);
    Ok((lhs, product_bc1(order)))
}

fn bc_eq2(order: i64) -> Result<Sides, QError> {
    let lhs = mock2(MockTheta::PhiMinus, order)?
        .neg()
        .add(&MockTheta::Sigma.series(order)?);
    Ok((lhs, product_bc2(order)))
}

fn bc_eq3(order: i64) -> Result<Sides, QError> {
    let lhs = scaled(&mock2(MockTheta::PhiMinus, order)?, &rat(4))
        .add(&scaled(&MockTheta::Mu.series(order)?, &rat(2)));
    Ok((lhs, product_p2(order)))
}

fn bc_eq4(order: i64) -> Result<Sides, QError> {
    let lhs = scaled(&shift_down(&mock2(MockTheta::PsiMinus, order + 1)?), &rat(4))
        .add(&MockTheta::Lambda.series(order)?);
    Ok((lhs, product_bc4(order)))
}

fn ter_eq1(order: i64) -> Result<Sides, QError> {
    let lhs = shift_down(&mock2(MockTheta::Psi, order + 1)?)
        .add(&scaled(&shift_down(&mock2(MockTheta::PsiMinus, order + 1)?), &rat(2)));
    Ok((lhs, product_p1(order).sub(&product_bc1(order))))
}

fn ter_eq2(order: i64) -> Result<Sides, QError> {
    let lhs = mock2(MockTheta::Phi, order)?
        .add(&scaled(&mock2(MockTheta::PhiMinus, order)?, &rat(2)));
    Ok((lhs, product_p2(order).sub(&scaled(&product_bc2(order), &rat(2)))))
}

fn ter_eq3(order: i64) -> Result<Sides, QError> {
    let lhs = scaled(&mock2(MockTheta::Phi, order)?, &rat(2))
        .add(&scaled(&mock2(MockTheta::PhiMinus, order)?, &rat(4)));
    let plus = pi(rat(1), 1, 2, order)
        .pow(2)
        .mul(&pi(rat(1), 3, 6, order).pow(2))
        .mul(&pi(rat(1), 6, 6, order));
    Ok((lhs, product_p2(order).add(&plus)))
}

fn ter_eq4(order: i64) -> Result<Sides, QError> {
    let lhs = scaled(&shift_down(&mock2(MockTheta::Psi, order + 1)?), &rat(2))
        .add(&scaled(&shift_down(&mock2(MockTheta::PsiMinus, order + 1)?), &rat(4)));
    let minus = pi(rat(1), 1, 2, order)
        .pow(3)
        .mul(&pi(rat(-1), 3, 12, order))
        .mul(&pi(rat(-1), 9, 12, order))
        .mul(&pi(rat(1), 12, 12, order));
    Ok((lhs, product_p1(order).sub(&minus)))
}

/// Build both sides of the named identity at a parameter point.
pub fn identity_sides(id: &str, p: &ParamPoint, order: i64) -> Result<Sides, QError> {
    assert!(order >= 1);
    let parameter_free = |p: &ParamPoint| -> Result<(), QError> {
        p.expect(&[])
    };
    match id {
        "ram-eq1" => parameter_free(p).and_then(|_| ram_eq1(order)),
        "ram-eq2" => parameter_free(p).and_then(|_| ram_eq2(order)),
        "ram-eq3" => parameter_free(p).and_then(|_| ram_eq3(order)),
        "ram-eq4" => parameter_free(p).and_then(|_| ram_eq4(order)),
        "inter-1" => parameter_free(p).and_then(|_| inter_1(order)),
        "inter-2" => parameter_free(p).and_then(|_| inter_2(order)),
        "inter-3" => parameter_free(p).and_then(|_| inter_3(order)),
        "inter-4" => parameter_free(p).and_then(|_| inter_4(order)),
        "rr1" => parameter_free(p).and_then(|_| rr1(order)),
        "rr2" => parameter_free(p).and_then(|_| rr2(order)),
        "trans1" => {
            p.expect(&["a", "x"])?;
            trans1_sides(&p.rat("a")?, p.get("x")?, order)
        }
        "trans2" => {
            p.expect(&["a", "x"])?;
            trans2_sides(&p.rat("a")?, p.get("x")?, order)
        }
        "heine1" => {
            p.expect(&["a", "b", "c", "t"])?;
            heine1_sides(
                &p.nonzero_rat("a")?,
                &p.nonzero_rat("b")?,
                &p.nonzero_rat("c")?,
                &p.nonzero_rat("t")?,
                order,
            )
        }
        "heine2" => {
            p.expect(&["a", "b", "c", "t"])?;
            heine2_sides(
                &p.nonzero_rat("a")?,
                &p.nonzero_rat("b")?,
                &p.nonzero_rat("c")?,
                &p.nonzero_rat("t")?,
                order,
            )
        }
        "aux-first" => {
            p.expect(&["a", "x"])?;
            aux_first_sides(&p.rat("a")?, p.get("x")?, order)
        }
        "aux-second" => {
            p.expect(&["a", "x"])?;
            aux_second_sides(&p.rat("a")?, p.get("x")?, order)
        }
        "aux-third" => {
            p.expect(&["a", "x"])?;
            aux_third_sides(&p.rat("a")?, p.get("x")?, order)
        }
        "ww-limit" => {
            p.expect(&["a", "d", "e"])?;
            ww_limit_sides(p.get("a")?, p.get("d")?, p.get("e")?, order)
        }
        "bc-eq1" => parameter_free(p).and_then(|_| bc_eq1(order)),
        "bc-eq2" => parameter_free(p).and_then(|_| bc_eq2(order)),
        "bc-eq3" => parameter_free(p).and_then(|_| bc_eq3(order)),
        "bc-eq4" => parameter_free(p).and_then(|_| bc_eq4(order)),
        "ter-eq1" => parameter_free(p).and_then(|_| ter_eq1(order)),
        "ter-eq2" => parameter_free(p).and_then(|_| ter_eq2(order)),
        "ter-eq3" => parameter_free(p).and_then(|_| ter_eq3(order)),
        "ter-eq4" => parameter_free(p).and_then(|_| ter_eq4(order)),
        "ram-342" => parameter_free(p).and_then(|_| ram_342(order)),
        "lorenz" => parameter_free(p).and_then(|_| lorenz(order)),
        "ramanother" => {
            p.expect(&["a"])?;
            ramanother_sides(&p.nonzero_rat("a")?, order)
        }
        "eta-g024" => parameter_free(p).and_then(|_| eta_g024(order)),
        other => Err(QError::UnknownIdentity(other.to_string())),
    }
}
