//! Exact checkers for the chain-level identities. Each checker evaluates its
//! identity on every basis tuple (sufficient by multilinearity) and reports
//! the tuples with a nonzero residual; a pass means the residual tensor is
//! identically zero over the rationals.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::exactalg::Rational;

use super::model::{apply1, apply2, apply3, ChainModel, ModelError};
use super::multiop::{add_scaled, sign, vec_is_zero};
use super::space::GradedSpace;

/// Outcome of one identity check: the identity's name and the failing basis
/// tuples, empty on pass.
#[derive(Debug, Clone)]
pub struct Report {
    pub identity: String,
    pub witnesses: Vec<Witness>,
}

/// One failing basis tuple, with a rendering of the nonzero residual.
#[derive(Debug, Clone, Serialize)]
pub struct Witness {
    pub inputs: Vec<String>,
    pub residual: String,
}

impl Report {
    pub fn new(identity: &str) -> Self {
        Report {
            identity: identity.to_string(),
            witnesses: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.witnesses.is_empty()
    }

    pub(super) fn record(
        &mut self,
        inputs: Vec<String>,
        residual: &[Rational],
        out_space: &GradedSpace,
    ) {
        if !vec_is_zero(residual) {
            self.witnesses.push(Witness {
                inputs,
                residual: out_space.describe(residual),
            });
        }
    }
}

// {"identity": ..., "status": "pass"|"fail", "witnesses": [...]}
impl Serialize for Report {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("Report", 3)?;
        s.serialize_field("identity", &self.identity)?;
        s.serialize_field("status", if self.passed() { "pass" } else { "fail" })?;
        s.serialize_field("witnesses", &self.witnesses)?;
        s.end()
    }
}

/// d^2 = 0 on the closed sector and mu1^2 = 0 on every pair complex.
pub fn check_differentials(m: &ChainModel) -> Report {
    let mut report = Report::new("differentials");
    let dim = m.closed.dim();
    for i in 0..dim {
        let once = apply1(Some(&m.d), &m.closed.basis_vector(i), dim);
        let twice = apply1(Some(&m.d), &once, dim);
        report.record(
            vec![format!("closed:{}", m.closed.label(i))],
            &twice,
            &m.closed,
        );
    }
    for ((l0, l1), pc) in &m.pairs {
        let dim = pc.space.dim();
        for i in 0..dim {
            let once = apply1(Some(&pc.mu1), &pc.space.basis_vector(i), dim);
            let twice = apply1(Some(&pc.mu1), &once, dim);
            report.record(
                vec![format!("({l0},{l1}):{}", pc.space.label(i))],
                &twice,
                &pc.space,
            );
        }
    }
    report
}

/// Homotopy associativity: mu1(mu3(a3,a2,a1)) + mu3(mu1 a3,a2,a1)
/// + (-1)^|a3| mu3(a3,mu1 a2,a1) + (-1)^{|a3|+|a2|} mu3(a3,a2,mu1 a1)
///   = mu2(a3,mu2(a2,a1)) - mu2(mu2(a3,a2),a1).
pub fn check_mu3_homotopy(
    m: &ChainModel,
    labels: (&str, &str, &str, &str),
) -> Result<Report, ModelError> {
    let (l0, l1, l2, l3) = labels;
    let s23 = &m.pair(l2, l3)?.space;
    let s12 = &m.pair(l1, l2)?.space;
    let s01 = &m.pair(l0, l1)?.space;
    let s02 = &m.pair(l0, l2)?.space;
    let s13 = &m.pair(l1, l3)?.space;
    let s03 = &m.pair(l0, l3)?.space;
    let mu1_23 = &m.pair(l2, l3)?.mu1;
    let mu1_12 = &m.pair(l1, l2)?.mu1;
    let mu1_01 = &m.pair(l0, l1)?.mu1;
    let mu1_03 = &m.pair(l0, l3)?.mu1;
    let mu3 = m.mu3_op(l0, l1, l2, l3);
    let mu2_inner = m.mu2_op(l0, l1, l2);
    let mu2_outer = m.mu2_op(l0, l2, l3);
    let mu2_left = m.mu2_op(l1, l2, l3);
    let mu2_right = m.mu2_op(l0, l1, l3);
    let out = s03.dim();

    let mut report = Report::new("mu3_homotopy");
    for i3 in 0..s23.dim() {
        let a3 = s23.basis_vector(i3);
        let da3 = apply1(Some(mu1_23), &a3, s23.dim());
        for i2 in 0..s12.dim() {
            let a2 = s12.basis_vector(i2);
            let da2 = apply1(Some(mu1_12), &a2, s12.dim());
            for i1 in 0..s01.dim() {
                let a1 = s01.basis_vector(i1);
                let da1 = apply1(Some(mu1_01), &a1, s01.dim());

                let mut lhs = apply1(Some(mu1_03), &apply3(mu3, &a3, &a2, &a1, out), out);
                add_scaled(
                    &mut lhs,
                    &apply3(mu3, &da3, &a2, &a1, out),
                    &Rational::one(),
                );
                add_scaled(
                    &mut lhs,
                    &apply3(mu3, &a3, &da2, &a1, out),
                    &sign(s23.degree(i3)),
                );
                add_scaled(
                    &mut lhs,
                    &apply3(mu3, &a3, &a2, &da1, out),
                    &sign(s23.degree(i3) + s12.degree(i2)),
                );

                let inner = apply2(mu2_inner, &a2, &a1, s02.dim());
                let mut rhs = apply2(mu2_outer, &a3, &inner, out);
                let left = apply2(mu2_left, &a3, &a2, s13.dim());
                add_scaled(
                    &mut rhs,
                    &apply2(mu2_right, &left, &a1, out),
                    &-Rational::one(),
                );

                add_scaled(&mut lhs, &rhs, &-Rational::one());
                report.record(
                    vec![
                        s23.label(i3).to_string(),
                        s12.label(i2).to_string(),
                        s01.label(i1).to_string(),
                    ],
                    &lhs,
                    s03,
                );
            }
        }
    }
    Ok(report)
}

/// mu1(phi1(b,a)) + phi1(db,a) + (-1)^|b| phi1(b,mu1 a)
/// = mu2(phi0_{L1}(b),a) - (-1)^{|a||b|} mu2(a,phi0_{L0}(b)),
/// quantified over all closed basis elements b.
pub fn check_phi1_homotopy(m: &ChainModel, labels: (&str, &str)) -> Result<Report, ModelError> {
    let (l0, l1) = labels;
    let pc = m.pair(l0, l1)?;
    let s = &pc.space;
    let s11 = &m.pair(l1, l1)?.space;
    let s00 = &m.pair(l0, l0)?.space;
    let phi1 = m.phi1_op(l0, l1);
    let phi0_l1 = m.phi0_op(l1);
    let phi0_l0 = m.phi0_op(l0);
    let mu2_l = m.mu2_op(l0, l1, l1);
    let mu2_r = m.mu2_op(l0, l0, l1);
    let out = s.dim();

    let mut report = Report::new("phi1_homotopy");
    for ib in 0..m.closed.dim() {
        let bb = m.closed.basis_vector(ib);
        let db = apply1(Some(&m.d), &bb, m.closed.dim());
        let deg_b = m.closed.degree(ib);
        let p0_l1 = apply1(phi0_l1, &bb, s11.dim());
        let p0_l0 = apply1(phi0_l0, &bb, s00.dim());
        for ia in 0..s.dim() {
            let a = s.basis_vector(ia);
            let da = apply1(Some(&pc.mu1), &a, out);
            let deg_a = s.degree(ia);

            let mut res = apply1(Some(&pc.mu1), &apply2(phi1, &bb, &a, out), out);
            add_scaled(&mut res, &apply2(phi1, &db, &a, out), &Rational::one());
            add_scaled(&mut res, &apply2(phi1, &bb, &da, out), &sign(deg_b));
            add_scaled(&mut res, &apply2(mu2_l, &p0_l1, &a, out), &-Rational::one());
            add_scaled(
                &mut res,
                &apply2(mu2_r, &a, &p0_l0, out),
                &sign(deg_a * deg_b),
            );

            report.record(
                vec![m.closed.label(ib).to_string(), s.label(ia).to_string()],
                &res,
                s,
            );
        }
    }
    Ok(report)
}

/// The full seven-term identity for phi2: see the hexagon relation
/// mu1(phi2(b,a2,a1)) - phi2(db,a2,a1) - (-1)^|b| phi2(b,mu1 a2,a1)
/// - (-1)^{|b|+|a2|} phi2(b,a2,mu1 a1)
///   = -mu3(phi0_{L2}(b),a2,a1) + (-1)^{|a2||b|} mu3(a2,phi0_{L1}(b),a1)
/// - (-1)^{(|a2|+|a1|)|b|} mu3(a2,a1,phi0_{L0}(b)) + phi1(b,mu2(a2,a1))
/// - mu2(phi1(b,a2),a1) - (-1)^{(|b|+1)|a2|} mu2(a2,phi1(b,a1)).
pub fn check_phi2_homotopy(
    m: &ChainModel,
    labels: (&str, &str, &str),
) -> Result<Report, ModelError> {
    let (l0, l1, l2) = labels;
    let s12 = &m.pair(l1, l2)?.space;
    let s01 = &m.pair(l0, l1)?.space;
    let s02 = &m.pair(l0, l2)?.space;
    let s22 = &m.pair(l2, l2)?.space;
    let s11 = &m.pair(l1, l1)?.space;
    let s00 = &m.pair(l0, l0)?.space;
    let mu1_12 = &m.pair(l1, l2)?.mu1;
    let mu1_01 = &m.pair(l0, l1)?.mu1;
    let mu1_02 = &m.pair(l0, l2)?.mu1;
    let phi2 = m.phi2_op(l0, l1, l2);
    let phi1_02 = m.phi1_op(l0, l2);
    let phi1_12 = m.phi1_op(l1, l2);
    let phi1_01 = m.phi1_op(l0, l1);
    let mu3_p2 = m.mu3_op(l0, l1, l2, l2);
    let mu3_p1 = m.mu3_op(l0, l1, l1, l2);
    let mu3_p0 = m.mu3_op(l0, l0, l1, l2);
    let mu2_012 = m.mu2_op(l0, l1, l2);
    let out = s02.dim();

    let mut report = Report::new("phi2_homotopy");
    for ib in 0..m.closed.dim() {
        let bb = m.closed.basis_vector(ib);
        let db = apply1(Some(&m.d), &bb, m.closed.dim());
        let deg_b = m.closed.degree(ib);
        let p0_l2 = apply1(m.phi0_op(l2), &bb, s22.dim());
        let p0_l1 = apply1(m.phi0_op(l1), &bb, s11.dim());
        let p0_l0 = apply1(m.phi0_op(l0), &bb, s00.dim());
        for i2 in 0..s12.dim() {
            let a2 = s12.basis_vector(i2);
            let da2 = apply1(Some(mu1_12), &a2, s12.dim());
            let deg_a2 = s12.degree(i2);
            for i1 in 0..s01.dim() {
                let a1 = s01.basis_vector(i1);
                let da1 = apply1(Some(mu1_01), &a1, s01.dim());
                let deg_a1 = s01.degree(i1);

                let mut res = apply1(Some(mu1_02), &apply3(phi2, &bb, &a2, &a1, out), out);
                add_scaled(
                    &mut res,
                    &apply3(phi2, &db, &a2, &a1, out),
                    &-Rational::one(),
                );
                add_scaled(&mut res, &apply3(phi2, &bb, &da2, &a1, out), &-sign(deg_b));
                add_scaled(
                    &mut res,
                    &apply3(phi2, &bb, &a2, &da1, out),
                    &-sign(deg_b + deg_a2),
                );

                // minus the right-hand side
                add_scaled(
                    &mut res,
                    &apply3(mu3_p2, &p0_l2, &a2, &a1, out),
                    &Rational::one(),
                );
                add_scaled(
                    &mut res,
                    &apply3(mu3_p1, &a2, &p0_l1, &a1, out),
                    &-sign(deg_a2 * deg_b),
                );
                add_scaled(
                    &mut res,
                    &apply3(mu3_p0, &a2, &a1, &p0_l0, out),
                    &sign((deg_a2 + deg_a1) * deg_b),
                );
                let prod = apply2(mu2_012, &a2, &a1, out);
                add_scaled(
                    &mut res,
                    &apply2(phi1_02, &bb, &prod, out),
                    &-Rational::one(),
                );
                let pa2 = apply2(phi1_12, &bb, &a2, s12.dim());
                add_scaled(&mut res, &apply2(mu2_012, &pa2, &a1, out), &Rational::one());
                let pa1 = apply2(phi1_01, &bb, &a1, s01.dim());
                add_scaled(
                    &mut res,
                    &apply2(mu2_012, &a2, &pa1, out),
                    &sign((deg_b + 1) * deg_a2),
                );

                report.record(
                    vec![
                        m.closed.label(ib).to_string(),
                        s12.label(i2).to_string(),
                        s01.label(i1).to_string(),
                    ],
                    &res,
                    s02,
                );
            }
        }
    }
    Ok(report)
}

/// Graded symmetry up to homotopy of the e_vee pairing:
/// h_vee(mu1 a2,a1) + (-1)^|a2| h_vee(a2,mu1 a1)
/// = e_vee_{L0}(mu2(a2,a1)) - (-1)^{|a1||a2|} e_vee_{L1}(mu2(a1,a2)).
pub fn check_hvee(m: &ChainModel, labels: (&str, &str)) -> Result<Report, ModelError> {
    let (l0, l1) = labels;
    let s10 = &m.pair(l1, l0)?.space;
    let s01 = &m.pair(l0, l1)?.space;
    let s00 = &m.pair(l0, l0)?.space;
    let s11 = &m.pair(l1, l1)?.space;
    let mu1_10 = &m.pair(l1, l0)?.mu1;
    let mu1_01 = &m.pair(l0, l1)?.mu1;
    let hvee = m.h_vee_op(l0, l1);
    let mu2_to_00 = m.mu2_op(l0, l1, l0);
    let mu2_to_11 = m.mu2_op(l1, l0, l1);
    let evee_0 = &m.lagrangian(l0)?.e_vee;
    let evee_1 = &m.lagrangian(l1)?.e_vee;
    let scalar = GradedSpace::scalar_line();

    let mut report = Report::new("h_vee_symmetry");
    for i2 in 0..s10.dim() {
        let a2 = s10.basis_vector(i2);
        let da2 = apply1(Some(mu1_10), &a2, s10.dim());
        let deg_a2 = s10.degree(i2);
        for i1 in 0..s01.dim() {
            let a1 = s01.basis_vector(i1);
            let da1 = apply1(Some(mu1_01), &a1, s01.dim());
            let deg_a1 = s01.degree(i1);

            let mut res = apply2(hvee, &da2, &a1, 1);
            add_scaled(&mut res, &apply2(hvee, &a2, &da1, 1), &sign(deg_a2));
            let prod_00 = apply2(mu2_to_00, &a2, &a1, s00.dim());
            add_scaled(
                &mut res,
                &apply1(Some(evee_0), &prod_00, 1),
                &-Rational::one(),
            );
            let prod_11 = apply2(mu2_to_11, &a1, &a2, s11.dim());
            add_scaled(
                &mut res,
                &apply1(Some(evee_1), &prod_11, 1),
                &sign(deg_a1 * deg_a2),
            );

            report.record(
                vec![s10.label(i2).to_string(), s01.label(i1).to_string()],
                &res,
                &scalar,
            );
        }
    }
    Ok(report)
}

/// k_vee(db,a) + (-1)^|b| k_vee(b,mu1 a)
/// = e_vee(phi1(b,a)) - phi0_vee(delta b,a) - h_vee(phi0(b),a).
pub fn check_kvee(m: &ChainModel, label: &str) -> Result<Report, ModelError> {
    let pc = m.pair(label, label)?;
    let s = &pc.space;
    let kvee = m.k_vee_op(label);
    let phi1 = m.phi1_op(label, label);
    let phi0 = m.phi0_op(label);
    let phi0_vee = m.phi0_vee_op(label);
    let hvee = m.h_vee_op(label, label);
    let evee = &m.lagrangian(label)?.e_vee;
    let scalar = GradedSpace::scalar_line();

    let mut report = Report::new("k_vee_interaction");
    for ib in 0..m.closed.dim() {
        let bb = m.closed.basis_vector(ib);
        let db = apply1(Some(&m.d), &bb, m.closed.dim());
        let delta_b = apply1(Some(&m.delta), &bb, m.closed.dim());
        let p0 = apply1(phi0, &bb, s.dim());
        let deg_b = m.closed.degree(ib);
        for ia in 0..s.dim() {
            let a = s.basis_vector(ia);
            let da = apply1(Some(&pc.mu1), &a, s.dim());

            let mut res = apply2(kvee, &db, &a, 1);
            add_scaled(&mut res, &apply2(kvee, &bb, &da, 1), &sign(deg_b));
            let p1 = apply2(phi1, &bb, &a, s.dim());
            add_scaled(&mut res, &apply1(Some(evee), &p1, 1), &-Rational::one());
            add_scaled(
                &mut res,
                &apply2(phi0_vee, &delta_b, &a, 1),
                &Rational::one(),
            );
            add_scaled(&mut res, &apply2(hvee, &p0, &a, 1), &Rational::one());

            report.record(
                vec![m.closed.label(ib).to_string(), s.label(ia).to_string()],
                &res,
                &scalar,
            );
        }
    }
    Ok(report)
}

/// The dilation equations: d(b) = 0 and delta(b) - e - d(beta) = 0.
pub fn check_dilation(m: &ChainModel) -> Report {
    let mut report = Report::new("dilation");
    let dim = m.closed.dim();
    let db = apply1(Some(&m.d), &m.b, dim);
    report.record(vec!["d(b)".to_string()], &db, &m.closed);

    let mut res = apply1(Some(&m.delta), &m.b, dim);
    add_scaled(&mut res, &m.e, &-Rational::one());
    let dbeta = apply1(Some(&m.d), &m.beta, dim);
    add_scaled(&mut res, &dbeta, &-Rational::one());
    report.record(vec!["delta(b) - e - d(beta)".to_string()], &res, &m.closed);
    report
}

/// The equivariance equation mu1(c_L) = phi0_L(b).
pub fn check_equivariance(m: &ChainModel, label: &str) -> Result<Report, ModelError> {
    let pc = m.pair(label, label)?;
    let lag = m.lagrangian(label)?;
    let mut report = Report::new("equivariance");
    let mut res = apply1(Some(&pc.mu1), &lag.c, pc.space.dim());
    let p0 = apply1(m.phi0_op(label), &m.b, pc.space.dim());
    add_scaled(&mut res, &p0, &-Rational::one());
    report.record(
        vec![format!("mu1(c_{label}) - phi0_{label}(b)")],
        &res,
        &pc.space,
    );
    Ok(report)
}
