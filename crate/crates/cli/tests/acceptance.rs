//! Acceptance gate: every top-level criterion of the verification
//! harness, one test and one printed pass line per criterion.
//!
//! The oracles here are deliberately independent of the engine: the
//! low-order mock theta fixtures are recomputed with naive dense
//! polynomial arithmetic, Lambert coefficients with direct divisor
//! enumeration, and the ring properties with a self-contained
//! deterministic random generator.

use std::process::Command;
use std::time::Instant;

use qmock_core::identities::identity_sides;
use qmock_core::rational::{is_integer, rat, ratio, Rat};
use qmock_core::series::Sign;
use qmock_core::{
    compare, lambert_pair, mock_series, poch_finite, poch_inf, quadform_theta, theta_sum,
    triple_product, verify_all, MockTheta, ParamPoint, PochSpec, QSeries, Status,
};

use num_traits::{One, Zero};

fn criterion(name: &str) {
    println!("PASS: {name}");
}

#[test]
fn full_catalog_pass() {
    let order = 200;
    let start = Instant::now();
    let reports = verify_all(order);
    let elapsed = start.elapsed();
    assert!(reports.len() >= 60, "only {} reports", reports.len());
    for r in &reports {
        assert_eq!(
            r.status,
            Status::Pass,
            "{} at {:?}: {:?} {:?}",
            r.id,
            r.params,
            r.error,
            r.first_mismatch
        );
        assert!(r.effective_order >= order, "{} under-resolved", r.id);
    }
    assert!(
        elapsed.as_secs() < 60,
        "full catalog took {:?}, budget is 60s",
        elapsed
    );
    // the eta identity already distinguishes its sides at tiny orders
    let r = qmock_core::verify("eta-g024", &ParamPoint::empty(), 5);
    assert_eq!(r.status, Status::Pass);
    criterion(&format!(
        "full catalog: {} reports pass at order {order} in {:.1}s; eta-g024 also at order 5",
        reports.len(),
        elapsed.as_secs_f64()
    ));
}

#[test]
fn cross_oracle_suite() {
    // triple product equals the two-sided theta sum
    let order = 100;
    for (n, d) in [(1, 1), (-1, 1), (2, 1), (1, 2), (-3, 5)] {
        let z = ratio(n, d);
        let prod = triple_product(&z, order).unwrap();
        let sum = theta_sum(&z, order).unwrap();
        assert!(
            compare(&prod, &sum, order).is_pass(),
            "triple product vs theta sum at z = {n}/{d}"
        );
    }

    // quadratic form theta equals 1 + 6 * Lambert series, with the
    // Lambert coefficients confirmed by divisor enumeration
    let order = 120;
    let quad = quadform_theta(order);
    let lambert = lambert_pair(3, 1, 2, order);
    let rhs = QSeries::one(order).add(&lambert.scale_monomial(&rat(6), 0).unwrap());
    assert!(compare(&quad, &rhs, order).is_pass());
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
        assert_eq!(lambert.coeff(k), rat(count), "divisor count at q^{k}");
    }

    // the infinite product agrees exactly with the finite product
    // carried to the cutoff index
    let order = 60;
    for spec in [
        PochSpec::plain(rat(1), 1, 1),
        PochSpec::plain(rat(-1), 1, 2),
        PochSpec::plain(ratio(2, 3), 2, 3),
    ] {
        let inf = poch_inf(&spec, order).unwrap();
        let mut cutoff = 0;
        while spec.factor(cutoff).1 < order {
            cutoff += 1;
        }
        let fin = poch_finite(&spec, cutoff, order);
        assert!(compare(&inf, &fin, order).is_pass());
    }
    criterion("cross-oracle: triple product, Lambert divisor counts, Pochhammer cutoff");
}

#[test]
fn cesaro_suite() {
    // stability: the same expansion results from stopping later
    let order = 200;
    let mu = mock_series(MockTheta::Mu, order).unwrap();
    let mu_late = mock_series(MockTheta::Mu, order + 10).unwrap();
    assert!(compare(&mu, &mu_late, order).is_pass());

    let (rr1_lhs, _) = identity_sides("rr1", &ParamPoint::empty(), order).unwrap();
    let (rr1_late, _) = identity_sides("rr1", &ParamPoint::empty(), order + 10).unwrap();
    assert!(compare(&rr1_lhs, &rr1_late, order).is_pass());

    // hand-derived leading coefficients of mu
    assert_eq!(mu.coeff(0), ratio(1, 2));
    assert_eq!(mu.coeff(1), rat(1));

    // 2*mu is integral
    for k in 0..100 {
        let c = mu.coeff(k) * rat(2);
        assert!(is_integer(&c), "2*mu coefficient at q^{k} is {c}");
    }
    criterion("Cesaro: mu and rr1 stable under later truncation; mu = 1/2 + q + ...; 2*mu integral");
}

/// Minimal deterministic generator for the ring property cases.
struct Lcg(u64);

impl Lcg {
    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        self.0 >> 33
    }

    fn series(&mut self, order: i64) -> QSeries {
        let min_exp = (self.next() % 7) as i64 - 3;
        let coeffs: Vec<Rat> = (min_exp..order)
            .map(|_| ratio((self.next() % 41) as i64 - 20, (self.next() % 7) as i64 + 1))
            .collect();
        QSeries::new(min_exp, coeffs, order).unwrap()
    }
}

#[test]
fn ring_kernel_properties() {
    let order = 40;
    let mut rng = Lcg(0x9e3779b97f4a7c15);
    for case in 0..100 {
        let f = rng.series(order);
        let g = rng.series(order);
        let h = rng.series(order);

        let ab = f.mul(&g);
        let ba = g.mul(&f);
        assert!(
            compare(&ab, &ba, ab.order().min(ba.order())).is_pass(),
            "commutativity, case {case}"
        );

        let left = f.mul(&g).mul(&h);
        let right = f.mul(&g.mul(&h));
        assert!(
            compare(&left, &right, left.order().min(right.order())).is_pass(),
            "associativity, case {case}"
        );

        let left = f.mul(&g.add(&h));
        let right = f.mul(&g).add(&f.mul(&h));
        assert!(
            compare(&left, &right, left.order().min(right.order())).is_pass(),
            "distributivity, case {case}"
        );

        // invert round-trip on a forced unit
        let unit = f.add(&QSeries::monomial(rat(1 + (case % 5) as i64), -1, order));
        if !unit.is_zero() {
            let prod = unit.mul(&unit.invert().unwrap());
            let o = prod.order();
            assert!(
                compare(&prod, &QSeries::one(o.max(1)), o).is_pass(),
                "invert round-trip, case {case}"
            );
        }

        // q -> -q is an involution
        let twice = f
            .compose_power(Sign::Minus, 1)
            .unwrap()
            .compose_power(Sign::Minus, 1)
            .unwrap();
        assert!(
            compare(&f, &twice, f.order().min(twice.order())).is_pass(),
            "involution, case {case}"
        );
    }
    criterion("ring kernel: 100 random cases of ring axioms, inversion, involution at order 40");
}

// -- independent dense-polynomial oracle ---------------------------------

fn pmul(a: &[Rat], b: &[Rat], n: usize) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); n];
    for (i, x) in a.iter().enumerate().take(n) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if i + j >= n {
                break;
            }
            out[i + j] += x * y;
        }
    }
    out
}

fn pinv(a: &[Rat], n: usize) -> Vec<Rat> {
    assert!(!a[0].is_zero());
    let mut out = vec![Rat::zero(); n];
    out[0] = a[0].recip();
    for k in 1..n {
        let mut acc = Rat::zero();
        for j in 1..=k {
            if j < a.len() {
                acc += &a[j] * &out[k - j];
            }
        }
        out[k] = -acc / &a[0];
    }
    out
}

/// (1 + c q^e) as a dense polynomial.
fn pbinom(c: i64, e: usize, n: usize) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); n];
    out[0] = Rat::one();
    if e < n {
        out[e] = rat(c);
    }
    out
}

#[test]
fn derived_expansion_fixtures() {
    let n = 5;

    // phi: first two defining terms 1 - q(1-q)/((1+q)(1+q^2))
    let term1 = pmul(
        &pbinom(-1, 1, n),
        &pinv(&pmul(&pbinom(1, 1, n), &pbinom(1, 2, n), n), n),
        n,
    );
    let mut phi = vec![Rat::zero(); n];
    phi[0] = Rat::one();
    for k in 1..n {
        phi[k] = -term1[k - 1].clone();
    }
    assert_eq!(&phi[..4], &[rat(1), rat(-1), rat(2), rat(-1)]);

    // psi: first defining term q/(1+q); the next starts at q^4
    let psi0 = pinv(&pbinom(1, 1, n), n);
    let mut psi = vec![Rat::zero(); n];
    for k in 1..n.min(4) {
        psi[k] = psi0[k - 1].clone();
    }
    assert_eq!(&psi[..4], &[rat(0), rat(1), rat(-1), rat(1)]);

    // rho: 1/(1-q) + q(1+q)/((1-q)(1-q^3)); the next term starts at q^3
    let rho0 = pinv(&pbinom(-1, 1, n), n);
    let rho1 = pmul(
        &pbinom(1, 1, n),
        &pinv(&pmul(&pbinom(-1, 1, n), &pbinom(-1, 3, n), n), n),
        n,
    );
    let mut rho = rho0.clone();
    for k in 1..n {
        rho[k] += rho1[k - 1].clone();
    }
    assert_eq!(&rho[..3], &[rat(1), rat(2), rat(3)]);

    // and the engine reproduces every oracle value
    let phi_s = mock_series(MockTheta::Phi, 4).unwrap();
    let psi_s = mock_series(MockTheta::Psi, 4).unwrap();
    let rho_s = mock_series(MockTheta::Rho, 3).unwrap();
    for k in 0..4 {
        assert_eq!(phi_s.coeff(k), phi[k as usize], "phi at q^{k}");
        assert_eq!(psi_s.coeff(k), psi[k as usize], "psi at q^{k}");
    }
    for k in 0..3 {
        assert_eq!(rho_s.coeff(k), rho[k as usize], "rho at q^{k}");
    }
    criterion("derived fixtures: phi, psi, rho leading terms match the dense-polynomial oracle");
}

#[test]
fn failure_path() {
    // library level: perturbing one side must produce a finite mismatch
    let order = 40;
    let (lhs, rhs) = identity_sides("rr2", &ParamPoint::empty(), order).unwrap();
    let perturbed = rhs.mul_binomial(&rat(-1), 1); // multiply by (1 + q)
    let c = compare(&lhs, &perturbed, order);
    assert!(!c.is_pass());
    let m = c.mismatch.expect("mismatch recorded");
    assert!(m.exponent >= 0 && m.exponent < order);
    assert_ne!(m.lhs, m.rhs);

    // CLI level: the same perturbation exits with code 1 and reports fail
    let out = Command::new(env!("CARGO_BIN_EXE_qmock"))
        .args([
            "verify",
            "--identity",
            "rr2",
            "--order",
            "40",
            "--perturb-rhs",
        ])
        .output()
        .expect("run qmock");
    assert_eq!(out.status.code(), Some(1), "stdout: {}", String::from_utf8_lossy(&out.stdout));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("fail rr2"), "unexpected output: {text}");
    assert!(text.contains("first mismatch"), "unexpected output: {text}");
    criterion("failure path: perturbed identity fails with finite mismatch and CLI exit 1");
}
