//! Summation of q-series term streams.
//!
//! Three regimes cover everything in scope:
//!
//! * ordinary summation, for streams whose terms have strictly growing
//!   minimal exponents (the declared bound `L(n)` reaches the order);
//! * Cesaro summation, for alternating streams whose partial sums
//!   oscillate between two limits -- the value is the average of the
//!   even and odd partial-sum limits, and the implementation re-checks
//!   stabilization two terms further out;
//! * geometric-tail summation, for streams of the form `r^n * g_n`
//!   with rational ratio `r != 1` and coefficientwise-stabilizing
//!   `g_n`: the stabilized tail is summed in closed form.  This is how
//!   Heine-type transformations are evaluated at rational parameter
//!   points.

use num_traits::{One, Zero};

use crate::error::QError;
use crate::products::PochSpec;
use crate::rational::Rat;
use crate::series::QSeries;

/// A stream of series terms t_0, t_1, ... together with a declared
/// nondecreasing lower bound `L(n) <= min_exp(t_n)`.
pub trait TermStream {
    /// The term at the current position, truncated to `order`;
    /// advances the stream.
    fn next_term(&mut self, order: i64) -> Result<QSeries, QError>;

    /// Declared lower bound on the minimal exponent of t_n.
    fn min_exp_bound(&self, n: i64) -> i64;
}

/// Ordinary coefficientwise summation: adds terms while `L(n) < order`.
pub fn sum_stream<S: TermStream>(stream: &mut S, order: i64) -> Result<QSeries, QError> {
    let mut acc = QSeries::zero(order);
    let mut last_contrib: i64 = 0;
    let hard_cap = 8 * order + 64;
    let mut n: i64 = 0;
    loop {
        if stream.min_exp_bound(n) >= order {
            return Ok(acc);
        }
        if n > last_contrib + order + 16 || n > hard_cap {
            return Err(QError::NonConvergent(format!(
                "term bound stuck below order {order} after {n} terms"
            )));
        }
        let t = stream.next_term(order)?;
        if !t.is_zero() {
            last_contrib = n;
        }
        acc = acc.add(&t);
        n += 1;
    }
}

/// Cesaro summation: `(S_M + S_{M+1}) / 2` for the least even M with
/// `M + 1 >= order`, with a mandatory re-check at M + 2 that turns the
/// pairwise stabilization contract into a runtime assertion.
pub fn cesaro_sum<S: TermStream>(stream: &mut S, order: i64) -> Result<QSeries, QError> {
    let mut m = (order - 1).max(0);
    if m % 2 != 0 {
        m += 1;
    }
    let half = crate::rational::ratio(1, 2);
    let mut partial = QSeries::zero(order);
    let mut snapshots = Vec::with_capacity(4);
    for n in 0..=(m + 3) {
        let t = stream.next_term(order)?;
        partial = partial.add(&t);
        if n >= m {
            snapshots.push(partial.clone());
        }
    }
    let avg = |a: &QSeries, b: &QSeries| a.add(b).scale_monomial(&half, 0).unwrap();
    let first = avg(&snapshots[0], &snapshots[1]);
    let recheck = avg(&snapshots[2], &snapshots[3]);
    let cmp = crate::series::compare(&first, &recheck, order);
    if !cmp.is_pass() {
        let mm = cmp.mismatch.unwrap();
        return Err(QError::CesaroUnstable(format!(
            "averages at M = {m} and M + 2 differ at q^{}",
            mm.exponent
        )));
    }
    Ok(first)
}

/// Linear index `slope * n + offset` giving how many factors of a
/// Pochhammer family are present in term n.
#[derive(Debug, Clone, Copy)]
pub struct LinearIndex {
    pub slope: i64,
    pub offset: i64,
}

impl LinearIndex {
    pub fn at(&self, n: i64) -> i64 {
        self.slope * n + self.offset
    }
}

/// One Pochhammer family appearing in a hypergeometric term, in the
/// numerator or (inverted) the denominator.
#[derive(Debug, Clone)]
pub struct Factor {
    pub spec: PochSpec,
    pub index: LinearIndex,
    pub inverted: bool,
}

impl Factor {
    pub fn num(spec: PochSpec, slope: i64, offset: i64) -> Factor {
        Factor {
            spec,
            index: LinearIndex { slope, offset },
            inverted: false,
        }
    }

    pub fn den(spec: PochSpec, slope: i64, offset: i64) -> Factor {
        Factor {
            spec,
            index: LinearIndex { slope, offset },
            inverted: true,
        }
    }
}

/// An exact binomial multiplier `(1 - coef * q^exp)` applied to a
/// single term (used for non-cumulative factors like `1 - a q^{2n}`).
#[derive(Debug, Clone)]
pub struct Binomial {
    pub coef: Rat,
    pub exp: i64,
}

/// Summation regime of a [`QSum`].
#[derive(Debug, Clone)]
pub enum SumKind {
    /// Terms have min exponent >= exp(n) with exp(n) -> infinity.
    Ordinary,
    /// Terms are `coef(0) * ratio^n * g_n` with stabilizing `g_n` and
    /// constant exponent; the tail is summed in closed form.
    Geometric { ratio: Rat },
    /// Geometric with ratio -1, summed per the Cesaro contract.
    Cesaro,
}

type CoefFn = Box<dyn Fn(i64) -> Rat + Send + Sync>;
type ExpFn = Box<dyn Fn(i64) -> i64 + Send + Sync>;
type ExtraFn = Box<dyn Fn(i64) -> Vec<Binomial> + Send + Sync>;

/// A q-hypergeometric sum: term n is
/// `coef(n) * q^exp(n) * prod(factors at index(n)) * prod(extra(n))`.
///
/// Pochhammer factors are maintained incrementally across terms, so a
/// full evaluation costs O(order) binomial updates rather than
/// rebuilding every product from scratch.
pub struct QSum {
    pub factors: Vec<Factor>,
    pub coef: CoefFn,
    pub exp: ExpFn,
    pub extra: Option<ExtraFn>,
    pub kind: SumKind,
}

impl QSum {
    pub fn new(factors: Vec<Factor>, coef: CoefFn, exp: ExpFn, kind: SumKind) -> QSum {
        QSum {
            factors,
            coef,
            exp,
            extra: None,
            kind,
        }
    }

    pub fn with_extra(mut self, extra: ExtraFn) -> QSum {
        self.extra = Some(extra);
        self
    }

    /// Evaluate the sum to the requested order under its regime.
    pub fn eval(&self, order: i64) -> Result<QSeries, QError> {
        let mut iter = QSumIter::new(self, order);
        match &self.kind {
            SumKind::Ordinary => sum_stream(&mut iter, order),
            SumKind::Cesaro => cesaro_sum(&mut iter, order),
            SumKind::Geometric { ratio } => self.eval_geometric(ratio, order),
        }
    }

    fn eval_geometric(&self, ratio: &Rat, order: i64) -> Result<QSeries, QError> {
        if ratio.is_one() {
            return Err(QError::NonConvergent(
                "geometric stream with ratio 1".into(),
            ));
        }
        assert!(self.extra.is_none(), "geometric tail cannot carry per-term factors");
        if (self.coef)(0).is_zero() {
            return Ok(QSeries::zero(order));
        }
        // First n from which every newly added Pochhammer factor lies
        // at or above the order, so the product side is frozen mod q^order.
        let mut n0: i64 = 0;
        for f in &self.factors {
            if f.index.slope == 0 {
                continue;
            }
            while f.spec.e + f.spec.step * f.index.at(n0) < order {
                n0 += 1;
            }
        }
        let mut iter = QSumIter::new(self, order);
        let mut acc = QSeries::zero(order);
        for _ in 0..n0 {
            acc = acc.add(&iter.next_term(order)?);
        }
        // tail: sum_{n >= n0} coef(n) * q^e * P(n0) = term(n0) / (1 - ratio)
        let head = iter.next_term(order)?;
        let tail_scale = (Rat::one() - ratio).recip();
        acc = acc.add(&head.scale_monomial(&tail_scale, 0)?);
        Ok(acc)
    }
}

/// Iteration state over a [`QSum`]'s terms.
pub struct QSumIter<'a> {
    sum: &'a QSum,
    order: i64,
    n: i64,
    product: QSeries,
    built: Vec<i64>,
}

impl<'a> QSumIter<'a> {
    pub fn new(sum: &'a QSum, order: i64) -> QSumIter<'a> {
        QSumIter {
            sum,
            order,
            n: 0,
            product: QSeries::one(order),
            built: vec![0; sum.factors.len()],
        }
    }
}

impl TermStream for QSumIter<'_> {
    fn next_term(&mut self, order: i64) -> Result<QSeries, QError> {
        assert!(order <= self.order, "iterator built for a smaller order");
        let n = self.n;
        for (f, built) in self.sum.factors.iter().zip(self.built.iter_mut()) {
            let target = f.index.at(n);
            assert!(target >= *built, "factor index must be nondecreasing");
            for j in *built..target {
                let (c, k) = f.spec.factor(j);
                self.product = if f.inverted {
                    self.product.div_binomial(&c, k)?
                } else {
                    self.product.mul_binomial(&c, k)
                };
            }
            *built = target;
        }
        self.n += 1;
        let c = (self.sum.coef)(n);
        if c.is_zero() {
            return Ok(QSeries::zero(order));
        }
        let e = (self.sum.exp)(n);
        if e >= order {
            return Ok(QSeries::zero(order));
        }
        let mut t = self.product.clone();
        if let Some(extra) = &self.sum.extra {
            for b in extra(n) {
                t = t.mul_binomial(&b.coef, b.exp);
            }
        }
        Ok(t.scale_monomial(&c, e)?.truncate(order))
    }

    fn min_exp_bound(&self, n: i64) -> i64 {
        (self.sum.exp)(n)
    }
}
