//! The algebraic mapping cone attached to a Dehn twist along a sphere V:
//! T*(L0,L1) = CF*(L0,L1) + Hom*(CF(V,L0),CF(V,L1))[-1], its differential,
//! the module-type products, and the corrected equivariant endomorphism.

use crate::exactalg::Rational;

use super::checks::Report;
use super::cohomology::build_tilde_phi1;
use super::model::{apply1, apply2, apply3, ChainModel, ModelError};
use super::multiop::{add_scaled, sign, vec_is_zero, MultiOp};
use super::space::GradedSpace;

/// Which side of the cone the module product acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConeSide {
    Left,
    Right,
}

/// The cone complex of (V; L0, L1). Elements are coordinate vectors over
/// `space`; the Hom summand is spanned by rank-one generators out (x) in-dual
/// whose natural degree is deg(out) - deg(in), shifted by +1 in the cone
/// grading.
#[derive(Debug, Clone)]
pub struct ConeComplex {
    pub v: String,
    pub l0: String,
    pub l1: String,
    pub space: GradedSpace,
    pub mu1_t: MultiOp,
    pair_slots: Vec<usize>,
    hom_slots: Vec<usize>,
    hom_basis: Vec<(usize, usize)>,
}

impl ConeComplex {
    /// Cone-space index of basis element `i` of CF(L0,L1).
    pub fn pair_slot(&self, i: usize) -> usize {
        self.pair_slots[i]
    }

    /// Cone-space index of the Hom generator out (x) in-dual.
    pub fn hom_slot_of(&self, out: usize, input: usize) -> Option<usize> {
        self.hom_basis
            .iter()
            .position(|&(o, j)| o == out && j == input)
            .map(|k| self.hom_slots[k])
    }

    /// Hom generators as (out index, in index), parallel to `hom_slots`.
    pub fn hom_basis(&self) -> &[(usize, usize)] {
        &self.hom_basis
    }

    pub fn hom_slots(&self) -> &[usize] {
        &self.hom_slots
    }

    pub fn pair_slots(&self) -> &[usize] {
        &self.pair_slots
    }

    /// The natural (unshifted) degree of a Hom generator by position in
    /// `hom_basis`.
    pub fn hom_natural_degree(&self, k: usize) -> i64 {
        self.space.degree(self.hom_slots[k]) - 1
    }
}

/// Assemble T*(L0,L1) and its differential
/// mu1_T(a,alpha) = (mu1 a, v -> -mu1(alpha(v)) + (-1)^|alpha| alpha(mu1 v)
/// + mu2(a,v)), and verify (mu1_T)^2 = 0.
pub fn build_cone(
    m: &ChainModel,
    v: &str,
    labels: (&str, &str),
) -> Result<ConeComplex, ModelError> {
    let (l0, l1) = labels;
    let p = &m.pair(l0, l1)?.space;
    let a_space = &m.pair(v, l0)?.space;
    let b_space = &m.pair(v, l1)?.space;
    let mu1_p = &m.pair(l0, l1)?.mu1;
    let mu1_a = &m.pair(v, l0)?.mu1;
    let mu1_b = &m.pair(v, l1)?.mu1;
    let mu2 = m.mu2_op(v, l0, l1);

    let mut basis = Vec::new();
    for i in 0..p.dim() {
        basis.push((p.degree(i), format!("a:{}", p.label(i))));
    }
    let mut hom_basis = Vec::new();
    for o in 0..b_space.dim() {
        for j in 0..a_space.dim() {
            let nat = b_space.degree(o) - a_space.degree(j);
            basis.push((
                nat + 1,
                format!("h:{}|{}", b_space.label(o), a_space.label(j)),
            ));
            hom_basis.push((o, j));
        }
    }
    let space = GradedSpace::from_basis(basis);
    let pair_slots: Vec<usize> = (0..p.dim())
        .map(|i| {
            space
                .index_of(&format!("a:{}", p.label(i)))
                .expect("pair slot")
        })
        .collect();
    let hom_slots: Vec<usize> = hom_basis
        .iter()
        .map(|&(o, j)| {
            space
                .index_of(&format!("h:{}|{}", b_space.label(o), a_space.label(j)))
                .expect("hom slot")
        })
        .collect();

    let mut mu1_t = MultiOp::new(1, 1);
    // pair basis elements
    for i in 0..p.dim() {
        let mut output = Vec::new();
        for (idx, c) in mu1_p.eval_basis(&[i]) {
            output.push((pair_slots[*idx], c.clone()));
        }
        let a = p.basis_vector(i);
        for (k, &(o, j)) in hom_basis.iter().enumerate() {
            let image = apply2(mu2, &a, &a_space.basis_vector(j), b_space.dim());
            if !image[o].is_zero() {
                output.push((hom_slots[k], image[o].clone()));
            }
        }
        mu1_t.set_entry(vec![pair_slots[i]], output);
    }
    // hom generators
    for (k, &(o, j)) in hom_basis.iter().enumerate() {
        let nat = b_space.degree(o) - a_space.degree(j);
        let mut output = Vec::new();
        for (o2, c) in mu1_b.eval_basis(&[o]) {
            if let Some(slot) = hom_lookup(&hom_basis, &hom_slots, *o2, j) {
                output.push((slot, -c));
            }
        }
        for j2 in 0..a_space.dim() {
            for (idx, c) in mu1_a.eval_basis(&[j2]) {
                if *idx == j {
                    if let Some(slot) = hom_lookup(&hom_basis, &hom_slots, o, j2) {
                        output.push((slot, &sign(nat) * c));
                    }
                }
            }
        }
        mu1_t.set_entry(vec![hom_slots[k]], output);
    }

    mu1_t
        .validate(&[&space], &space)
        .map_err(|detail| ModelError::Degree {
            what: format!("mu1_T({v};{l0},{l1})"),
            detail,
        })?;
    for s in 0..space.dim() {
        let once = apply1(Some(&mu1_t), &space.basis_vector(s), space.dim());
        let twice = apply1(Some(&mu1_t), &once, space.dim());
        if !vec_is_zero(&twice) {
            return Err(ModelError::NotChainMap(format!(
                "mu1_T({v};{l0},{l1}) does not square to zero at {}",
                space.label(s)
            )));
        }
    }

    Ok(ConeComplex {
        v: v.to_string(),
        l0: l0.to_string(),
        l1: l1.to_string(),
        space,
        mu1_t,
        pair_slots,
        hom_slots,
        hom_basis,
    })
}

fn hom_lookup(
    hom_basis: &[(usize, usize)],
    hom_slots: &[usize],
    o: usize,
    j: usize,
) -> Option<usize> {
    hom_basis
        .iter()
        .position(|&(oo, jj)| oo == o && jj == j)
        .map(|k| hom_slots[k])
}

/// mu2_T(a2, (a1,alpha1)) = (mu2(a2,a1),
/// v -> (-1)^|a2| mu2(a2,alpha1(v)) - mu3(a2,a1,v)): the covariant module
/// product CF*(L1,L2) (x) T*(L0,L1) -> T*(L0,L2).
pub fn cone_mu2_left(
    m: &ChainModel,
    cone_in: &ConeComplex,
    cone_out: &ConeComplex,
    a2: &[Rational],
    x: &[Rational],
) -> Result<Vec<Rational>, ModelError> {
    assert_eq!(cone_in.v, cone_out.v, "cone mismatch");
    assert_eq!(cone_in.l0, cone_out.l0, "cone mismatch");
    let v = cone_in.v.as_str();
    let l0 = cone_in.l0.as_str();
    let l1 = cone_in.l1.as_str();
    let l2 = cone_out.l1.as_str();
    let s12 = &m.pair(l1, l2)?.space;
    let a_space = &m.pair(v, l0)?.space;
    let b_in = &m.pair(v, l1)?.space;
    let b_out = &m.pair(v, l2)?.space;
    let mu2_pair = m.mu2_op(l0, l1, l2);
    let mu2_hom = m.mu2_op(v, l1, l2);
    let mu3 = m.mu3_op(v, l0, l1, l2);

    let a1: Vec<Rational> = cone_in.pair_slots.iter().map(|&s| x[s].clone()).collect();
    let mut out = cone_out.space.zero_vector();

    let pair_part = apply2(mu2_pair, a2, &a1, m.pair(l0, l2)?.space.dim());
    for (i, c) in pair_part.into_iter().enumerate() {
        out[cone_out.pair_slots[i]] = c;
    }

    // (-1)^|a2| mu2(a2, alpha1(v)) term, per basis component of a2
    for (k2, a2_coeff) in a2.iter().enumerate() {
        if a2_coeff.is_zero() {
            continue;
        }
        let factor = &sign(s12.degree(k2)) * a2_coeff;
        for (k, &(o, j)) in cone_in.hom_basis.iter().enumerate() {
            let coeff = &x[cone_in.hom_slots[k]];
            if coeff.is_zero() {
                continue;
            }
            let image = apply2(
                mu2_hom,
                &s12.basis_vector(k2),
                &b_in.basis_vector(o),
                b_out.dim(),
            );
            for (o2, c) in image.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                if let Some(slot) = hom_lookup(&cone_out.hom_basis, &cone_out.hom_slots, o2, j) {
                    out[slot] += &(&(&factor * coeff) * c);
                }
            }
        }
    }
    // -mu3(a2, a1, v) term
    for j in 0..a_space.dim() {
        let image = apply3(mu3, a2, &a1, &a_space.basis_vector(j), b_out.dim());
        for (o2, c) in image.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if let Some(slot) = hom_lookup(&cone_out.hom_basis, &cone_out.hom_slots, o2, j) {
                out[slot] -= c;
            }
        }
    }
    Ok(out)
}

/// mu2_T((a2,alpha2), a1) = (mu2(a2,a1), v -> alpha2(mu2(a1,v))
/// - mu3(a2,a1,v)): the contravariant module product
///   T*(L1,L2) (x) CF*(L0,L1) -> T*(L0,L2).
pub fn cone_mu2_right(
    m: &ChainModel,
    cone_in: &ConeComplex,
    cone_out: &ConeComplex,
    x2: &[Rational],
    a1: &[Rational],
) -> Result<Vec<Rational>, ModelError> {
    assert_eq!(cone_in.v, cone_out.v, "cone mismatch");
    assert_eq!(cone_in.l1, cone_out.l1, "cone mismatch");
    let v = cone_in.v.as_str();
    let l0 = cone_out.l0.as_str();
    let l1 = cone_in.l0.as_str();
    let l2 = cone_in.l1.as_str();
    let a_out = &m.pair(v, l0)?.space;
    let a_in = &m.pair(v, l1)?.space;
    let b_out = &m.pair(v, l2)?.space;
    let mu2_pair = m.mu2_op(l0, l1, l2);
    let mu2_hom = m.mu2_op(v, l0, l1);
    let mu3 = m.mu3_op(v, l0, l1, l2);

    let a2: Vec<Rational> = cone_in.pair_slots.iter().map(|&s| x2[s].clone()).collect();
    let mut out = cone_out.space.zero_vector();

    let pair_part = apply2(mu2_pair, &a2, a1, m.pair(l0, l2)?.space.dim());
    for (i, c) in pair_part.into_iter().enumerate() {
        out[cone_out.pair_slots[i]] = c;
    }

    // alpha2(mu2(a1, v)) term
    for j2 in 0..a_out.dim() {
        let image = apply2(mu2_hom, a1, &a_out.basis_vector(j2), a_in.dim());
        for (k, &(o, j)) in cone_in.hom_basis.iter().enumerate() {
            let coeff = &x2[cone_in.hom_slots[k]];
            if coeff.is_zero() || image[j].is_zero() {
                continue;
            }
            if let Some(slot) = hom_lookup(&cone_out.hom_basis, &cone_out.hom_slots, o, j2) {
                out[slot] += &(coeff * &image[j]);
            }
        }
    }
    // -mu3(a2, a1, v) term
    for j2 in 0..a_out.dim() {
        let image = apply3(mu3, &a2, a1, &a_out.basis_vector(j2), b_out.dim());
        for (o2, c) in image.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if let Some(slot) = hom_lookup(&cone_out.hom_basis, &cone_out.hom_slots, o2, j2) {
                out[slot] -= c;
            }
        }
    }
    Ok(out)
}

/// Leibniz rule of the module products with respect to the differentials,
/// evaluated on all basis tuples.
pub fn check_cone_mu2_leibniz(
    m: &ChainModel,
    cone_in: &ConeComplex,
    cone_out: &ConeComplex,
    side: ConeSide,
) -> Result<Report, ModelError> {
    let dim_out = cone_out.space.dim();
    let mut report = Report::new(match side {
        ConeSide::Left => "cone_mu2_left_leibniz",
        ConeSide::Right => "cone_mu2_right_leibniz",
    });
    match side {
        ConeSide::Left => {
            let l1 = cone_in.l1.clone();
            let l2 = cone_out.l1.clone();
            let s12 = &m.pair(&l1, &l2)?.space;
            let mu1_12 = &m.pair(&l1, &l2)?.mu1;
            for k2 in 0..s12.dim() {
                let a2 = s12.basis_vector(k2);
                let da2 = apply1(Some(mu1_12), &a2, s12.dim());
                for s in 0..cone_in.space.dim() {
                    let x = cone_in.space.basis_vector(s);
                    let prod = cone_mu2_left(m, cone_in, cone_out, &a2, &x)?;
                    let mut res = apply1(Some(&cone_out.mu1_t), &prod, dim_out);
                    let t1 = cone_mu2_left(m, cone_in, cone_out, &da2, &x)?;
                    add_scaled(&mut res, &t1, &-Rational::one());
                    let dx = apply1(Some(&cone_in.mu1_t), &x, cone_in.space.dim());
                    let t2 = cone_mu2_left(m, cone_in, cone_out, &a2, &dx)?;
                    add_scaled(&mut res, &t2, &-sign(s12.degree(k2)));
                    report.record(
                        vec![
                            s12.label(k2).to_string(),
                            cone_in.space.label(s).to_string(),
                        ],
                        &res,
                        &cone_out.space,
                    );
                }
            }
        }
        ConeSide::Right => {
            let l0 = cone_out.l0.clone();
            let l1 = cone_in.l0.clone();
            let s01 = &m.pair(&l0, &l1)?.space;
            let mu1_01 = &m.pair(&l0, &l1)?.mu1;
            for s in 0..cone_in.space.dim() {
                let x2 = cone_in.space.basis_vector(s);
                let dx2 = apply1(Some(&cone_in.mu1_t), &x2, cone_in.space.dim());
                for k1 in 0..s01.dim() {
                    let a1 = s01.basis_vector(k1);
                    let da1 = apply1(Some(mu1_01), &a1, s01.dim());
                    let prod = cone_mu2_right(m, cone_in, cone_out, &x2, &a1)?;
                    let mut res = apply1(Some(&cone_out.mu1_t), &prod, dim_out);
                    let t1 = cone_mu2_right(m, cone_in, cone_out, &dx2, &a1)?;
                    add_scaled(&mut res, &t1, &-Rational::one());
                    let t2 = cone_mu2_right(m, cone_in, cone_out, &x2, &da1)?;
                    add_scaled(&mut res, &t2, &-sign(cone_in.space.degree(s)));
                    report.record(
                        vec![
                            cone_in.space.label(s).to_string(),
                            s01.label(k1).to_string(),
                        ],
                        &res,
                        &cone_out.space,
                    );
                }
            }
        }
    }
    Ok(report)
}

/// The corrected equivariant endomorphism of the cone:
/// tilde-phi1_T(a,alpha) = (tilde-phi1(a), v -> tilde-phi1_{V,L1}(alpha(v))
/// - alpha(tilde-phi1_{V,L0}(v)) - tilde-phi2_{V,L0,L1}(a,v)), where
///   tilde-phi2(a2,a1) = phi2(b,a2,a1) - mu3(c_{L2},a2,a1) + mu3(a2,c_{L1},a1)
/// - mu3(a2,a1,c_{L0}). Verified to be a chain map for mu1_T.
pub fn build_tilde_phi1t(m: &ChainModel, cone: &ConeComplex) -> Result<MultiOp, ModelError> {
    let v = cone.v.as_str();
    let l0 = cone.l0.as_str();
    let l1 = cone.l1.as_str();
    let p = &m.pair(l0, l1)?.space;
    let a_space = &m.pair(v, l0)?.space;
    let b_space = &m.pair(v, l1)?.space;
    let tp_pair = build_tilde_phi1(m, (l0, l1))?;
    let tp_b = build_tilde_phi1(m, (v, l1))?;
    let tp_a = build_tilde_phi1(m, (v, l0))?;
    let c_l1 = &m.lagrangian(l1)?.c;
    let c_l0 = &m.lagrangian(l0)?.c;
    let c_v = &m.lagrangian(v)?.c;
    let phi2 = m.phi2_op(v, l0, l1);
    let mu3_c2 = m.mu3_op(v, l0, l1, l1);
    let mu3_c1 = m.mu3_op(v, l0, l0, l1);
    let mu3_c0 = m.mu3_op(v, v, l0, l1);

    let tilde_phi2 = |a: &[Rational], w: &[Rational]| -> Vec<Rational> {
        let dim = b_space.dim();
        let mut out = apply3(phi2, &m.b, a, w, dim);
        add_scaled(
            &mut out,
            &apply3(mu3_c2, c_l1, a, w, dim),
            &-Rational::one(),
        );
        add_scaled(&mut out, &apply3(mu3_c1, a, c_l0, w, dim), &Rational::one());
        add_scaled(&mut out, &apply3(mu3_c0, a, w, c_v, dim), &-Rational::one());
        out
    };

    let mut op = MultiOp::new(1, 0);
    for i in 0..p.dim() {
        let a = p.basis_vector(i);
        let mut output = Vec::new();
        for (idx, c) in tp_pair.eval_basis(&[i]) {
            output.push((cone.pair_slots[*idx], c.clone()));
        }
        for j in 0..a_space.dim() {
            let image = tilde_phi2(&a, &a_space.basis_vector(j));
            for (o2, c) in image.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                if let Some(slot) = hom_lookup(&cone.hom_basis, &cone.hom_slots, o2, j) {
                    output.push((slot, -c));
                }
            }
        }
        op.set_entry(vec![cone.pair_slots[i]], output);
    }
    for (k, &(o, j)) in cone.hom_basis.iter().enumerate() {
        let mut output = Vec::new();
        for (o2, c) in tp_b.eval_basis(&[o]) {
            if let Some(slot) = hom_lookup(&cone.hom_basis, &cone.hom_slots, *o2, j) {
                output.push((slot, c.clone()));
            }
        }
        for j2 in 0..a_space.dim() {
            for (idx, c) in tp_a.eval_basis(&[j2]) {
                if *idx == j {
                    if let Some(slot) = hom_lookup(&cone.hom_basis, &cone.hom_slots, o, j2) {
                        output.push((slot, -c));
                    }
                }
            }
        }
        op.set_entry(vec![cone.hom_slots[k]], output);
    }

    for s in 0..cone.space.dim() {
        let x = cone.space.basis_vector(s);
        let mut res = apply1(
            Some(&op),
            &apply1(Some(&cone.mu1_t), &x, cone.space.dim()),
            cone.space.dim(),
        );
        let other = apply1(
            Some(&cone.mu1_t),
            &apply1(Some(&op), &x, cone.space.dim()),
            cone.space.dim(),
        );
        add_scaled(&mut res, &other, &-Rational::one());
        if !vec_is_zero(&res) {
            return Err(ModelError::NotChainMap(format!(
                "tilde_phi1_T({v};{l0},{l1})"
            )));
        }
    }
    Ok(op)
}
