//! The identity catalog: a fixed, deterministically ordered list of
//! every identity the engine can verify, default parameter panels for
//! the parameterized ones, and the verification driver producing
//! structured reports.

use std::time::Instant;

use crate::error::QError;
use crate::identities::{identity_sides, ParamPoint, ParamValue};
use crate::series::{compare, Mismatch};

/// Catalog entry for one identity.
#[derive(Debug, Clone)]
pub struct IdentitySpec {
    pub id: &'static str,
    pub description: &'static str,
    /// Names of free parameters, empty for parameter-free identities.
    pub param_names: &'static [&'static str],
    /// Default parameter points used by `verify_all`; one empty point
    /// for parameter-free identities.
    pub panel: Vec<ParamPoint>,
}

/// Outcome of a single verification.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Error,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Error => "error",
        }
    }
}

/// Result of verifying one identity at one parameter point.
#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub id: String,
    pub params: ParamPoint,
    pub requested_order: i64,
    pub effective_order: i64,
    pub status: Status,
    pub first_mismatch: Option<Mismatch>,
    pub error: Option<String>,
    pub elapsed_ms: u128,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

fn rp(pairs: &[(&str, i64, i64)]) -> ParamPoint {
    let mut p = ParamPoint::empty();
    for (name, num, den) in pairs {
        p = p.with_rat(name, *num, *den);
    }
    p
}

fn mono(p: ParamPoint, name: &str, text: &str) -> ParamPoint {
    p.with(name, ParamValue::parse(text).expect("valid monomial literal"))
}

// Panel points are chosen so that every derived Pochhammer constant is
// a unit or a power of two: coefficient denominators then stay dyadic
// and full-order verification avoids the worst of the bignum-gcd cost.
fn ax_panel() -> Vec<ParamPoint> {
    vec![
        rp(&[("a", 2, 1), ("x", -1, 1)]),
        rp(&[("a", -2, 1), ("x", 1, 2)]),
        rp(&[("a", 1, 2), ("x", -2, 1)]),
        rp(&[("a", 0, 1), ("x", 2, 1)]),
        rp(&[("a", 3, 1), ("x", -2, 1)]),
    ]
}

fn heine1_panel() -> Vec<ParamPoint> {
    vec![
        rp(&[("a", 3, 1), ("b", -2, 1), ("c", 2, 1), ("t", -1, 1)]),
        rp(&[("a", 2, 1), ("b", 2, 1), ("c", -1, 1), ("t", -2, 1)]),
        rp(&[("a", 5, 1), ("b", -2, 1), ("c", -1, 1), ("t", 2, 1)]),
    ]
}

fn heine2_panel() -> Vec<ParamPoint> {
    vec![
        rp(&[("a", 3, 1), ("b", -2, 1), ("c", 2, 1), ("t", -1, 1)]),
        rp(&[("a", 2, 1), ("b", 2, 1), ("c", -1, 1), ("t", -2, 1)]),
        rp(&[("a", -2, 1), ("b", 2, 1), ("c", -1, 1), ("t", -2, 1)]),
    ]
}

fn aux_panel() -> Vec<ParamPoint> {
    vec![
        rp(&[("a", 2, 1), ("x", -1, 1)]),
        rp(&[("a", -2, 1), ("x", 1, 2)]),
        rp(&[("a", 1, 2), ("x", -2, 1)]),
        rp(&[("a", 3, 1), ("x", -2, 1)]),
    ]
}

/// Every identity, in a fixed presentation order.
pub fn list_identities() -> Vec<IdentitySpec> {
    let none: Vec<ParamPoint> = vec![ParamPoint::empty()];
    let mut trans1_panel = ax_panel();
    trans1_panel.push(mono(rp(&[("a", 1, 1)]), "x", "q"));
    trans1_panel.push(mono(rp(&[("a", -1, 1)]), "x", "q"));
    let mut trans2_panel = ax_panel();
    trans2_panel.push(mono(rp(&[("a", 1, 1)]), "x", "q"));
    let mut ww_panel = vec![
        rp(&[("a", 2, 1), ("d", -1, 1), ("e", 2, 1)]),
        rp(&[("a", -2, 1), ("d", 2, 1), ("e", -1, 1)]),
        rp(&[("a", 1, 2), ("d", -2, 1), ("e", 2, 1)]),
        rp(&[("a", 4, 1), ("d", -1, 1), ("e", -2, 1)]),
    ];
    ww_panel.push(mono(
        mono(mono(ParamPoint::empty(), "a", "q"), "d", "-sqrt(q)"),
        "e",
        "sqrt(q)",
    ));
    let ramanother_panel = vec![
        rp(&[("a", 2, 1)]),
        rp(&[("a", 1, 2)]),
        rp(&[("a", -1, 1)]),
        rp(&[("a", -2, 1)]),
        rp(&[("a", 4, 1)]),
    ];

    vec![
        IdentitySpec {
            id: "ram-eq1",
            description: "q^{-1} psi(q^2) + rho(q) as an infinite product",
            param_names: &[],
            panel: none.clone(),
        },
        IdentitySpec {
            id: "ram-eq2",
            description: "phi(q^2) + 2 sigma(q) as an infinite product",
            param_names: &[],
            panel: none.clone(),
        },
        IdentitySpec {
            id: "ram-eq3",
            description: "2 phi(q^2) - 2 mu(-q) as an infinite product",
            param_names: &[],
            panel: none.clone(),
        },
        IdentitySpec {
            id: "ram-eq4",
            description: "2 q^{-1} psi(q^2) + lambda(-q) as an infinite product",
            param_names: &[],
            panel: none.clone(),
        },
        IdentitySpec {
            id: "inter-1",
            description: "mu(q) = phi(q^2)/2 - sigma(-q)",
            param_names: &[],
            panel: none.clone(),
        },
        IdentitySpec {
            id: "inter-2",
            description: "product form of phi(q^2) + 2 sigma(-q)",
            param_names: &[],
            panel: none.clone(),
        },
        IdentitySpec {
            id: "inter-3",
            description: "lambda(q) = rho(-q) + q^{-1} psi(q^2)",
            param_names: &[],
            panel: none.clone(),
        },
        IdentitySpec {
            id: "inter-4",
            description: "product form of rho(-q) - q^{-1} psi(q^2)",
            param_names: &[],
            panel: none.clone(),
        },
        IdentitySpec {
            id: "rr1",
            description: "Rogers-Ramanujan type sum with constant exponents (Cesaro)",
            param_names: &[],
            panel: none.clone(),
        },
        IdentitySpec {
            id: "rr2",
            description: "Rogers-Ramanujan type sum with linear exponents",
            param_names: &[],
            panel: none.clone(),
        },
        IdentitySpec {
            id: "trans1",
            description: "first two-parameter transformation behind the mock theta identities",
            param_names: &["a", "x"],
            panel: trans1_panel,
        },
        IdentitySpec {
            id: "trans2",
            description: "second two-parameter transformation behind the mock theta identities",
            param_names: &["a", "x"],
            panel: trans2_panel,
        },
        IdentitySpec {
            id: "heine1",
            description: "first Heine-type transformation of a split 2phi1 series",
            param_names: &["a", "b", "c", "t"],
            panel: heine1_panel(),
        },
        IdentitySpec {
            id: "heine2",
            description: "second Heine-type transformation of a split 2phi1 series",
            param_names: &["a", "b", "c", "t"],
            panel: heine2_panel(),
        },
        IdentitySpec {
            id: "aux-first",
            description: "auxiliary product form of the first transformation sum",
            param_names: &["a", "x"],
            panel: aux_panel(),
        },
        IdentitySpec {
            id: "aux-second",
            description: "auxiliary product form of the second transformation sum",
            param_names: &["a", "x"],
            panel: aux_panel(),
        },
        IdentitySpec {
            id: "aux-third",
            description: "auxiliary splitting of the transformation left side",
            param_names: &["a", "x"],
            panel: aux_panel(),
        },
        IdentitySpec {
            id: "ww-limit",
            description: "b, c -> infinity limit of the Watson-Whipple transformation",
            param_names: &["a", "d", "e"],
            panel: ww_panel,
        },
        IdentitySpec {
            id: "bc-eq1",
            description: "-2 q^{-1} psi_minus(q^2) + rho(q) as an infinite product",
            param_names: &[],
            panel: none.clone(),
        },
        IdentitySpec {
            id: "bc-eq2",
            description: "-phi_minus(q^2) + sigma(q) as an infinite product",
            param_names: &[],
            panel: none.clone(),
        },
        IdentitySpec {
            id: "bc-eq3",
            description: "4 phi_minus(q^2) + 2 mu(q) as an infinite product",
            param_names: &[],
            panel: none.clone(),
        },
        IdentitySpec {
            id: "bc-eq4",
            description: "4 q^{-1} psi_minus(q^2) + lambda(q) as an infinite product",
            param_names: &[],
            panel: none.clone(),
        },
        IdentitySpec {
            id: "ter-eq1",
            description: "psi + 2 psi_minus combination of the product identities",
            param_names: &[],
            panel: none.clone(),
        },
        IdentitySpec {
            id: "ter-eq2",
            description: "phi + 2 phi_minus combination of the product identities",
            param_names: &[],
            panel: none.clone(),
        },
        IdentitySpec {
            id: "ter-eq3",
            description: "2 phi + 4 phi_minus combination of the product identities",
            param_names: &[],
            panel: none.clone(),
        },
        IdentitySpec {
            id: "ter-eq4",
            description: "2 psi + 4 psi_minus combination of the product identities",
            param_names: &[],
            panel: none.clone(),
        },
        IdentitySpec {
            id: "ram-342",
            description: "phi + 2 phi_minus as a Lambert series over the Euler product",
            param_names: &[],
            panel: none.clone(),
        },
        IdentitySpec {
            id: "lorenz",
            description: "theta series of x^2 + xy + y^2 as a Lambert series",
            param_names: &[],
            panel: none.clone(),
        },
        IdentitySpec {
            id: "ramanother",
            description: "two-sum identity with free parameter a and its product form",
            param_names: &["a"],
            panel: ramanother_panel,
        },
        IdentitySpec {
            id: "eta-g024",
            description: "eta quotient identity underlying the weight one form of level 576",
            param_names: &[],
            panel: none,
        },
    ]
}

/// Look up one catalog entry by id.
pub fn find_identity(id: &str) -> Result<IdentitySpec, QError> {
    list_identities()
        .into_iter()
        .find(|s| s.id == id)
        .ok_or_else(|| QError::UnknownIdentity(id.to_string()))
}

/// Verify one identity at one parameter point.
pub fn verify(id: &str, point: &ParamPoint, order: i64) -> VerificationReport {
    let start = Instant::now();
    let mut report = VerificationReport {
        id: id.to_string(),
        params: point.clone(),
        requested_order: order,
        effective_order: 0,
        status: Status::Error,
        first_mismatch: None,
        error: None,
        elapsed_ms: 0,
    };
    match identity_sides(id, point, order) {
        Ok((lhs, rhs)) => {
            let c = compare(&lhs, &rhs, order);
            report.effective_order = c.effective_order;
            report.status = if c.is_pass() { Status::Pass } else { Status::Fail };
            report.first_mismatch = c.mismatch;
        }
        Err(e) => {
            report.error = Some(e.to_string());
        }
    }
    report.elapsed_ms = start.elapsed().as_millis();
    report
}

/// Verify the full catalog over its default parameter panels.
pub fn verify_all(order: i64) -> Vec<VerificationReport> {
    let mut out = Vec::new();
    for spec in list_identities() {
        for point in &spec.panel {
            out.push(verify(spec.id, point, order));
        }
    }
    out
}
