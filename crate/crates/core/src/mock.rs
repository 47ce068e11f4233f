//! Generators for the eight sixth order mock theta functions.
//!
//! Each function is a q-hypergeometric sum built on the [`QSum`]
//! engine.  All of them converge termwise except mu, whose partial
//! sums oscillate; mu is summed in the Cesaro sense.

use std::str::FromStr;

use crate::error::QError;
use crate::rational::{rat, sign_pow};
use crate::series::QSeries;
use crate::products::PochSpec;
use crate::sums::{Factor, QSum, SumKind};

/// The eight sixth order mock theta functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MockTheta {
    Phi,
    Psi,
    Rho,
    Sigma,
    Lambda,
    Mu,
    PhiMinus,
    PsiMinus,
}

impl MockTheta {
    pub const ALL: [MockTheta; 8] = [
        MockTheta::Phi,
        MockTheta::Psi,
        MockTheta::Rho,
        MockTheta::Sigma,
        MockTheta::Lambda,
        MockTheta::Mu,
        MockTheta::PhiMinus,
        MockTheta::PsiMinus,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MockTheta::Phi => "phi",
            MockTheta::Psi => "psi",
            MockTheta::Rho => "rho",
            MockTheta::Sigma => "sigma",
            MockTheta::Lambda => "lambda",
            MockTheta::Mu => "mu",
            MockTheta::PhiMinus => "phi_minus",
            MockTheta::PsiMinus => "psi_minus",
        }
    }

    /// Declared lower bound on the min exponent of the n-th term of
    /// the zero-based term stream (for phi_minus and psi_minus this is
    /// the reindexed stream, so stream term n is the defining sum's
    /// term n + 1).
    pub fn term_bound(self, n: i64) -> i64 {
        match self {
            MockTheta::Phi => n * n,
            MockTheta::Psi => (n + 1) * (n + 1),
            MockTheta::Rho => n * (n + 1) / 2,
            MockTheta::Sigma => (n + 1) * (n + 2) / 2,
            MockTheta::Lambda => n,
            MockTheta::Mu => 0,
            // the defining sums start at n = 1; stream term n carries q^{n+1}
            MockTheta::PhiMinus | MockTheta::PsiMinus => n + 1,
        }
    }

    /// The defining sum as a term stream.  For phi_minus and psi_minus
    /// (whose sums start at n = 1) the stream is reindexed to start at
    /// zero, so stream term m is the defining sum's term n = m + 1.
    pub fn term_sum(self) -> QSum {
        let q = |e: i64, d: i64| PochSpec::plain(rat(1), e, d); // (q^e; q^d)
        let mq = |e: i64, d: i64| PochSpec::plain(rat(-1), e, d); // (-q^e; q^d)
        match self {
            // sum (-1)^n q^{n^2} (q;q^2)_n / (-q)_{2n}
            MockTheta::Phi => QSum::new(
                vec![
                    Factor::num(q(1, 2), 1, 0),
                    Factor::den(mq(1, 1), 2, 0),
                ],
                Box::new(sign_pow),
                Box::new(|n| n * n),
                SumKind::Ordinary,
            ),
            // sum (-1)^n q^{(n+1)^2} (q;q^2)_n / (-q)_{2n+1}
            MockTheta::Psi => QSum::new(
                vec![
                    Factor::num(q(1, 2), 1, 0),
                    Factor::den(mq(1, 1), 2, 1),
                ],
                Box::new(sign_pow),
                Box::new(|n| (n + 1) * (n + 1)),
                SumKind::Ordinary,
            ),
            // sum q^{n(n+1)/2} (-q)_n / (q;q^2)_{n+1}
            MockTheta::Rho => QSum::new(
                vec![
                    Factor::num(mq(1, 1), 1, 0),
                    Factor::den(q(1, 2), 1, 1),
                ],
                Box::new(|_| rat(1)),
                Box::new(|n| n * (n + 1) / 2),
                SumKind::Ordinary,
            ),
            // sum q^{(n+1)(n+2)/2} (-q)_n / (q;q^2)_{n+1}
            MockTheta::Sigma => QSum::new(
                vec![
                    Factor::num(mq(1, 1), 1, 0),
                    Factor::den(q(1, 2), 1, 1),
                ],
                Box::new(|_| rat(1)),
                Box::new(|n| (n + 1) * (n + 2) / 2),
                SumKind::Ordinary,
            ),
            // sum (-q)^n (q;q^2)_n / (-q)_n
            MockTheta::Lambda => QSum::new(
                vec![
                    Factor::num(q(1, 2), 1, 0),
                    Factor::den(mq(1, 1), 1, 0),
                ],
                Box::new(sign_pow),
                Box::new(|n| n),
                SumKind::Ordinary,
            ),
            // sum (-1)^n (q;q^2)_n / (-q)_n, Cesaro
            MockTheta::Mu => QSum::new(
                vec![
                    Factor::num(q(1, 2), 1, 0),
                    Factor::den(mq(1, 1), 1, 0),
                ],
                Box::new(sign_pow),
                Box::new(|_| 0),
                SumKind::Cesaro,
            ),
            // sum_{n >= 1} (-q)_{2n-1} q^n / (q;q^2)_n, reindexed m = n - 1
            MockTheta::PhiMinus => QSum::new(
                vec![
                    Factor::num(mq(1, 1), 2, 1),
                    Factor::den(q(1, 2), 1, 1),
                ],
                Box::new(|_| rat(1)),
                Box::new(|m| m + 1),
                SumKind::Ordinary,
            ),
            // sum_{n >= 1} (-q)_{2n-2} q^n / (q;q^2)_n, reindexed m = n - 1
            MockTheta::PsiMinus => QSum::new(
                vec![
                    Factor::num(mq(1, 1), 2, 0),
                    Factor::den(q(1, 2), 1, 1),
                ],
                Box::new(|_| rat(1)),
                Box::new(|m| m + 1),
                SumKind::Ordinary,
            ),
        }
    }

    /// Truncated q-expansion to the requested order.
    pub fn series(self, order: i64) -> Result<QSeries, QError> {
        assert!(order >= 1);
        self.term_sum().eval(order)
    }
}

impl FromStr for MockTheta {
    type Err = QError;

    fn from_str(s: &str) -> Result<MockTheta, QError> {
        MockTheta::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| QError::UnknownSeries(s.to_string()))
    }
}

/// The named mock theta function expanded to `order`.
pub fn mock_series(name: MockTheta, order: i64) -> Result<QSeries, QError> {
    name.series(order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;
    use crate::series::{compare, Sign};
    use crate::sums::{QSumIter, TermStream};

    #[test]
    fn phi_leading_terms() {
        // 1 - q + 2q^2 - q^3 + O(q^4)
        let f = mock_series(MockTheta::Phi, 4).unwrap();
        assert_eq!(f.coeff(0), rat(1));
        assert_eq!(f.coeff(1), rat(-1));
        assert_eq!(f.coeff(2), rat(2));
        assert_eq!(f.coeff(3), rat(-1));
    }

    #[test]
    fn psi_leading_terms() {
        // q - q^2 + q^3 + O(q^4)
        let f = mock_series(MockTheta::Psi, 4).unwrap();
        assert_eq!(f.coeff(0), rat(0));
        assert_eq!(f.coeff(1), rat(1));
        assert_eq!(f.coeff(2), rat(-1));
        assert_eq!(f.coeff(3), rat(1));
    }

    #[test]
    fn rho_leading_terms() {
        // 1 + 2q + 3q^2 + O(q^3)
        let f = mock_series(MockTheta::Rho, 3).unwrap();
        assert_eq!(f.coeff(0), rat(1));
        assert_eq!(f.coeff(1), rat(2));
        assert_eq!(f.coeff(2), rat(3));
    }

    #[test]
    fn mu_leading_terms() {
        // 1/2 + q + O(q^2)
        let f = mock_series(MockTheta::Mu, 2).unwrap();
        assert_eq!(f.coeff(0), ratio(1, 2));
        assert_eq!(f.coeff(1), rat(1));
    }

    #[test]
    fn psi_scaled_laurent_shift() {
        // q^{-1} psi(q^2) has leading exponent 1: psi(q^2) is divisible by q^2
        let psi = mock_series(MockTheta::Psi, 8).unwrap();
        let shifted = psi
            .compose_power(Sign::Plus, 2)
            .unwrap()
            .scale_monomial(&rat(1), -1)
            .unwrap();
        assert_eq!(shifted.leading_exponent(), Some(1));
    }

    #[test]
    fn term_bounds_are_exact() {
        // the n-th defining term's actual leading exponent equals the
        // declared bound, for every function and n <= 12
        let order = 200;
        for m in MockTheta::ALL {
            if m == MockTheta::Mu {
                continue; // bound 0 is trivially attained (constant terms)
            }
            let sum = m.term_sum();
            let mut iter = QSumIter::new(&sum, order);
            for n in 0..=12 {
                let t = iter.next_term(order).unwrap();
                assert_eq!(
                    t.leading_exponent(),
                    Some(m.term_bound(n)),
                    "{} term {n}",
                    m.name()
                );
            }
        }
        // mu's terms all start at q^0
        let sum = MockTheta::Mu.term_sum();
        let mut iter = QSumIter::new(&sum, 40);
        for n in 0..=12 {
            let t = iter.next_term(40).unwrap();
            assert_eq!(t.leading_exponent(), Some(0), "mu term {n}");
        }
    }

    #[test]
    fn mu_stabilization_across_orders() {
        // evaluating at a larger order and truncating gives the same
        // expansion: the Cesaro value does not depend on where we stop
        let a = mock_series(MockTheta::Mu, 30).unwrap();
        let b = mock_series(MockTheta::Mu, 45).unwrap();
        assert!(compare(&a, &b, 30).is_pass());
    }

    #[test]
    fn sigma_substitution_coherence() {
        // sigma(-q) via compose_power on the truncated series equals
        // term-by-term substitution q -> -q in the defining sum
        let order = 60;
        let direct = mock_series(MockTheta::Sigma, order)
            .unwrap()
            .compose_power(Sign::Minus, 1)
            .unwrap();
        let sum = MockTheta::Sigma.term_sum();
        let mut iter = QSumIter::new(&sum, order);
        let mut acc = QSeries::zero(order);
        let mut n = 0;
        while MockTheta::Sigma.term_bound(n) < order {
            let t = iter.next_term(order).unwrap();
            acc = acc.add(&t.compose_power(Sign::Minus, 1).unwrap());
            n += 1;
        }
        assert!(compare(&direct, &acc, order).is_pass());
    }

    #[test]
    fn two_mu_has_integer_coefficients() {
        let order = 100;
        let f = mock_series(MockTheta::Mu, order)
            .unwrap()
            .scale_monomial(&rat(2), 0)
            .unwrap();
        for k in 0..order {
            assert!(
                crate::rational::is_integer(&f.coeff(k)),
                "2*mu coefficient at q^{k} is {}",
                f.coeff(k)
            );
        }
    }

    #[test]
    fn names_round_trip() {
        for m in MockTheta::ALL {
            assert_eq!(m.name().parse::<MockTheta>().unwrap(), m);
        }
        assert!("nope".parse::<MockTheta>().is_err());
    }
}
