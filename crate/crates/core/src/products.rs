//! q-Pochhammer products, theta functions, Lambert series and eta
//! quotients, all as exact truncated series.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::QError;
use crate::rational::{rat_pow, Rat};
use crate::series::{QSeries, Sign};

/// A (possibly sign-alternating) q-Pochhammer base: the factor sequence
/// `(1 - alpha * sign^j * q^(e + j*step))` for j = 0, 1, 2, ...
///
/// `sign = Minus` covers bases like `(-q; -q)_n`, where the base of the
/// symbol itself is `-q`: the sign alternation is folded into the
/// coefficient so exponents stay integral.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PochSpec {
    pub alpha: Rat,
    pub e: i64,
    pub sign: Sign,
    pub step: i64,
}

impl PochSpec {
    pub fn new(alpha: Rat, e: i64, sign: Sign, step: i64) -> PochSpec {
        assert!(e >= 0, "starting exponent must be nonnegative");
        PochSpec {
            alpha,
            e,
            sign,
            step,
        }
    }

    /// `(alpha * q^e; q^step)` with a plain positive base.
    pub fn plain(alpha: Rat, e: i64, step: i64) -> PochSpec {
        PochSpec::new(alpha, e, Sign::Plus, step)
    }

    /// Coefficient and exponent of the j-th factor `(1 - c * q^k)`.
    pub fn factor(&self, j: i64) -> (Rat, i64) {
        (&self.alpha * self.sign.pow(j), self.e + j * self.step)
    }
}

/// Finite q-Pochhammer product of the first `n` factors, truncated to
/// `order`.  The empty product is 1.
pub fn poch_finite(spec: &PochSpec, n: i64, order: i64) -> QSeries {
    assert!(n >= 0);
    let mut acc = QSeries::one(order);
    for j in 0..n {
        let (c, k) = spec.factor(j);
        acc = acc.mul_binomial(&c, k);
    }
    acc
}

/// Infinite q-Pochhammer product truncated to `order`.  Includes every
/// factor whose exponent lies below the order; the rest are 1 modulo
/// `q^order`.
pub fn poch_inf(spec: &PochSpec, order: i64) -> Result<QSeries, QError> {
    if spec.step <= 0 {
        return Err(QError::DivergentProduct(spec.step));
    }
    let mut acc = QSeries::one(order);
    if spec.alpha.is_zero() {
        return Ok(acc);
    }
    let mut j = 0;
    while spec.e + j * spec.step < order {
        let (c, k) = spec.factor(j);
        acc = acc.mul_binomial(&c, k);
        j += 1;
    }
    Ok(acc)
}

/// Product side of the Jacobi triple product:
/// `(-zq, -q/z, q^2; q^2)_inf`.
pub fn triple_product(z: &Rat, order: i64) -> Result<QSeries, QError> {
    if z.is_zero() {
        return Err(QError::Parameter("triple_product requires z != 0".into()));
    }
    let a = poch_inf(&PochSpec::plain(-z.clone(), 1, 2), order)?;
    let b = poch_inf(&PochSpec::plain(-z.recip(), 1, 2), order)?;
    let c = poch_inf(&PochSpec::plain(Rat::one(), 2, 2), order)?;
    Ok(a.mul(&b).mul(&c))
}

/// Sum side of the Jacobi triple product:
/// sum over all integers n with n^2 < order of `z^n * q^(n^2)`.
pub fn theta_sum(z: &Rat, order: i64) -> Result<QSeries, QError> {
    if z.is_zero() {
        return Err(QError::Parameter("theta_sum requires z != 0".into()));
    }
    let mut acc = QSeries::zero(order);
    let mut n = 0i64;
    while n * n < order {
        let mut c = rat_pow(z, n);
        if n > 0 {
            c += rat_pow(z, -n);
        }
        acc = acc.add(&QSeries::monomial(c, n * n, order));
        n += 1;
    }
    Ok(acc)
}

/// The Lambert-series difference
/// `sum_{n >= 0} [ q^(mn+a)/(1 - q^(mn+a)) - q^(mn+b)/(1 - q^(mn+b)) ]`,
/// each geometric series expanded exactly.
pub fn lambert_pair(m: i64, a: i64, b: i64, order: i64) -> QSeries {
    assert!(m >= 1 && 1 <= a && a <= m && 1 <= b && b <= m);
    let mut coeffs = vec![Rat::zero(); order.max(1) as usize];
    let mut accumulate = |c: i64, sign: i64| {
        let mut n = 0i64;
        loop {
            let base = m * n + c;
            if base >= order {
                break;
            }
            let mut k = base;
            while k < order {
                if sign > 0 {
                    coeffs[k as usize] += Rat::one();
                } else {
                    coeffs[k as usize] -= Rat::one();
                }
                k += base;
            }
            n += 1;
        }
    };
    accumulate(a, 1);
    accumulate(b, -1);
    QSeries::new(0, coeffs, order.max(1)).unwrap()
}

/// Theta series of the hexagonal quadratic form:
/// sum over integer pairs (m, n) of `q^(m^2 + mn + n^2)`, truncated.
pub fn quadform_theta(order: i64) -> QSeries {
    let mut coeffs = vec![Rat::zero(); order.max(1) as usize];
    // m^2 + mn + n^2 >= (m^2 + n^2)/2, so |m|, |n| <= 2*sqrt(order) covers
    // every representation below the order.
    let mut bound = 0i64;
    while bound * bound < 4 * order {
        bound += 1;
    }
    for m in -bound..=bound {
        for n in -bound..=bound {
            let v = m * m + m * n + n * n;
            if v < order {
                coeffs[v as usize] += Rat::one();
            }
        }
    }
    QSeries::new(0, coeffs, order.max(1)).unwrap()
}

/// An eta quotient `prod_delta eta(delta * z)^(r_delta)`, described by
/// the map delta -> r_delta.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EtaQuotientSpec {
    pub exponents: BTreeMap<i64, i64>,
}

impl EtaQuotientSpec {
    pub fn new(pairs: &[(i64, i64)]) -> EtaQuotientSpec {
        let mut exponents = BTreeMap::new();
        for &(delta, r) in pairs {
            assert!(delta >= 1);
            exponents.insert(delta, r);
        }
        EtaQuotientSpec { exponents }
    }

    /// `sum delta * r_delta`, which must be divisible by 24.
    pub fn weight_sum(&self) -> i64 {
        self.exponents.iter().map(|(d, r)| d * r).sum()
    }
}

/// q-expansion of an eta quotient:
/// `q^(sum delta r_delta / 24) * prod (q^delta; q^delta)_inf^(r_delta)`.
pub fn eta_quotient(spec: &EtaQuotientSpec, order: i64) -> Result<QSeries, QError> {
    let w = spec.weight_sum();
    if w.rem_euclid(24) != 0 {
        return Err(QError::EtaPrefactor(w));
    }
    let shift = w / 24;
    let inner_order = (order - shift).max(1);
    let mut acc = QSeries::one(inner_order);
    for (&delta, &r) in &spec.exponents {
        if r == 0 {
            continue;
        }
        let base = poch_inf(&PochSpec::plain(Rat::one(), delta, delta), inner_order)?;
        let powed = base.pow(r.unsigned_abs() as u32);
        if r > 0 {
            acc = acc.mul(&powed);
        } else {
            acc = acc.mul(&powed.invert()?);
        }
    }
    acc.scale_monomial(&Rat::one(), shift)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, ratio};
    use crate::series::compare;

    #[test]
    fn poch_finite_examples() {
        // (q; q)_2 = (1-q)(1-q^2) = 1 - q - q^2 + q^3
        let spec = PochSpec::plain(rat(1), 1, 1);
        let p = poch_finite(&spec, 2, 5);
        assert_eq!(p.coeff(0), rat(1));
        assert_eq!(p.coeff(1), rat(-1));
        assert_eq!(p.coeff(2), rat(-1));
        assert_eq!(p.coeff(3), rat(1));
        assert_eq!(p.coeff(4), rat(0));

        // empty product
        let p = poch_finite(&spec, 0, 4);
        assert_eq!(p, QSeries::one(4));

        // signed base: (1-q)(1+q^2)(1-q^3) (oracle: hand expansion)
        let spec = PochSpec::new(rat(1), 1, Sign::Minus, 1);
        let p = poch_finite(&spec, 3, 8);
        let expected = QSeries::one(8)
            .mul_binomial(&rat(1), 1)
            .mul_binomial(&rat(-1), 2)
            .mul_binomial(&rat(1), 3);
        assert_eq!(p, expected);
        // (1-q)(1+q^2)(1-q^3) = 1 - q + q^2 - 2q^3 + q^4 - q^5 + q^6
        assert_eq!(p.coeff(3), rat(-2));
        assert_eq!(p.coeff(6), rat(1));
        assert_eq!(p.coeff(7), rat(0));
    }

    #[test]
    fn poch_inf_euler_pentagonal() {
        // (q; q)_inf = 1 - q - q^2 + q^5 + q^7 - q^12 - ...
        let p = poch_inf(&PochSpec::plain(rat(1), 1, 1), 12).unwrap();
        let pent = [(0, 1), (1, -1), (2, -1), (5, 1), (7, 1)];
        for k in 0..12 {
            let expected = pent
                .iter()
                .find(|&&(e, _)| e == k)
                .map(|&(_, c)| rat(c))
                .unwrap_or_else(rat_zero);
            assert_eq!(p.coeff(k), expected, "at q^{k}");
        }
    }

    fn rat_zero() -> Rat {
        rat(0)
    }

    #[test]
    fn poch_inf_examples() {
        // (-q; q^2)_inf = 1 + q + q^3 + ...
        let p = poch_inf(&PochSpec::plain(rat(-1), 1, 2), 4).unwrap();
        assert_eq!(p.coeff(0), rat(1));
        assert_eq!(p.coeff(1), rat(1));
        assert_eq!(p.coeff(2), rat(0));
        assert_eq!(p.coeff(3), rat(1));

        // alpha = 0 gives 1
        let p = poch_inf(&PochSpec::plain(rat(0), 1, 1), 6).unwrap();
        assert_eq!(p, QSeries::one(6));

        assert!(matches!(
            poch_inf(&PochSpec { alpha: rat(1), e: 1, sign: Sign::Plus, step: 0 }, 4),
            Err(QError::DivergentProduct(0))
        ));
    }

    #[test]
    fn poch_inf_matches_finite_at_cutoff() {
        for (alpha, e, d) in [(rat(1), 1, 1), (rat(-1), 1, 2), (ratio(2, 3), 2, 3)] {
            let spec = PochSpec::plain(alpha, e, d);
            let order = 25;
            // least n with e + n*d >= order
            let n_star = (order - spec.e + spec.step - 1) / spec.step;
            let inf = poch_inf(&spec, order).unwrap();
            let fin = poch_finite(&spec, n_star, order);
            assert_eq!(inf, fin);
        }
    }

    #[test]
    fn theta_sum_examples() {
        let t = theta_sum(&rat(1), 5).unwrap();
        assert_eq!(t.coeff(0), rat(1));
        assert_eq!(t.coeff(1), rat(2));
        assert_eq!(t.coeff(4), rat(2));
        let t = theta_sum(&rat(-1), 5).unwrap();
        assert_eq!(t.coeff(1), rat(-2));
        assert_eq!(t.coeff(4), rat(2));
        let t = theta_sum(&ratio(1, 2), 2).unwrap();
        assert_eq!(t.coeff(1), ratio(5, 2));
        assert!(theta_sum(&rat(0), 5).is_err());
    }

    #[test]
    fn triple_product_is_theta_sum() {
        // z = 1: 1 + 2q + 2q^4 + 2q^9
        let p = triple_product(&rat(1), 10).unwrap();
        assert_eq!(p.coeff(0), rat(1));
        assert_eq!(p.coeff(1), rat(2));
        assert_eq!(p.coeff(4), rat(2));
        assert_eq!(p.coeff(9), rat(2));
        for z in [rat(1), rat(-1), rat(2), ratio(1, 2), rat(-3)] {
            let lhs = triple_product(&z, 40).unwrap();
            let rhs = theta_sum(&z, 40).unwrap();
            assert!(compare(&lhs, &rhs, 40).is_pass(), "z = {z}");
        }
        assert!(triple_product(&rat(0), 5).is_err());
    }

    #[test]
    fn lambert_pair_examples() {
        // m=3, a=1, b=2: coefficients d_{1,3}(k) - d_{2,3}(k)
        let l = lambert_pair(3, 1, 2, 5);
        assert_eq!(l.coeff(0), rat(0));
        assert_eq!(l.coeff(1), rat(1));
        assert_eq!(l.coeff(2), rat(0));
        assert_eq!(l.coeff(3), rat(1));
        assert_eq!(l.coeff(4), rat(1));

        // m=6, a=2, b=4 to order 3: only q^2/(1-q^2) contributes
        let l = lambert_pair(6, 2, 4, 3);
        assert_eq!(l.coeff(1), rat(0));
        assert_eq!(l.coeff(2), rat(1));

        // a = b telescopes to zero
        let l = lambert_pair(5, 3, 3, 30);
        assert!(l.is_zero());
    }

    #[test]
    fn lambert_pair_divisor_oracle() {
        // independent oracle: count divisors in residue classes
        let order = 200;
        let l = lambert_pair(3, 1, 2, order);
        for k in 1..order {
            let mut count = 0i64;
            for d in 1..=k {
                if k % d == 0 {
                    match d % 3 {
                        1 => count += 1,
                        2 => count -= 1,
                        _ => {}
                    }
                }
            }
            assert_eq!(l.coeff(k), rat(count), "at q^{k}");
        }
    }

    #[test]
    fn quadform_theta_examples() {
        let t = quadform_theta(5);
        assert_eq!(t.coeff(0), rat(1));
        assert_eq!(t.coeff(1), rat(6));
        assert_eq!(t.coeff(2), rat(0));
        assert_eq!(t.coeff(3), rat(6));
        assert_eq!(t.coeff(4), rat(6));
    }

    #[test]
    fn lorenz_identity_cross_check() {
        let order = 120;
        let lhs = quadform_theta(order);
        let rhs = QSeries::one(order).add(
            &lambert_pair(3, 1, 2, order)
                .scale_monomial(&rat(6), 0)
                .unwrap(),
        );
        assert!(compare(&lhs, &rhs, order).is_pass());
    }

    #[test]
    fn eta_quotient_examples() {
        // eta^4(24z)/eta^2(12z) -> q^3 * (q^24)^4/(q^12)^2 expansion
        let spec = EtaQuotientSpec::new(&[(24, 4), (12, -2)]);
        let e = eta_quotient(&spec, 30).unwrap();
        assert_eq!(e.leading_exponent(), Some(3));
        assert_eq!(e.coeff(3), rat(1));
        assert_eq!(e.coeff(15), rat(2));

        // eta^4(8z)/eta^2(4z) = q + 2q^5 + q^9 + ...
        let spec = EtaQuotientSpec::new(&[(8, 4), (4, -2)]);
        let e = eta_quotient(&spec, 10).unwrap();
        assert_eq!(e.leading_exponent(), Some(1));
        assert_eq!(e.coeff(1), rat(1));
        assert_eq!(e.coeff(5), rat(2));
        assert_eq!(e.coeff(9), rat(1));

        // eta(z)^24 = q - 24q^2 + ...
        let spec = EtaQuotientSpec::new(&[(1, 24)]);
        let e = eta_quotient(&spec, 3).unwrap();
        assert_eq!(e.coeff(1), rat(1));
        assert_eq!(e.coeff(2), rat(-24));

        // all exponents zero -> 1
        let e = eta_quotient(&EtaQuotientSpec::default(), 8).unwrap();
        assert_eq!(e, QSeries::one(8));

        // 24-divisibility enforced
        assert!(matches!(
            eta_quotient(&EtaQuotientSpec::new(&[(1, 1)]), 5),
            Err(QError::EtaPrefactor(1))
        ));
    }
}
