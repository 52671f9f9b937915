//! A small exact model: one Lagrangian sphere V of dimension n inside a
//! Liouville manifold carrying a dilation. The closed sector is three lines
//! (a slot for beta in degree -1, the unit e in degree 0, the dilation class
//! b in degree 1) with d = 0 and delta(b) = e; the open sector is the
//! cohomology of the sphere with its cup product. The secondary operation
//! phi1(b, -) acts by zero on the unit and by the identity on the top class,
//! so the corrected endomorphism has eigenvalues 0 and 1 as predicted for a
//! Lagrangian sphere.

use crate::exactalg::Rational;

use super::model::{ChainModel, ChainModelBuilder};
use super::multiop::MultiOp;
use super::space::GradedSpace;

/// Build the sphere model in ambient dimension `n >= 2`. All identity
/// checkers pass on the result, and every tensor entry is forced by the
/// degree discipline together with the checked identities, which is what
/// makes this fixture a useful mutation target.
pub fn sphere_model(n: u32) -> ChainModel {
    assert!(n >= 2, "the sphere model needs n >= 2");
    let one = Rational::one;

    let closed = GradedSpace::from_basis([
        (-1, "beta".to_string()),
        (0, "e".to_string()),
        (1, "b".to_string()),
    ]);
    let (i_e, i_b) = (1, 2);
    let mut builder = ChainModelBuilder::new(n, closed);
    let mut delta = MultiOp::new(1, -1);
    delta.set_entry(vec![i_b], vec![(i_e, one())]);
    builder.delta = delta;
    builder.e = builder.closed.basis_vector(i_e);
    builder.b = builder.closed.basis_vector(i_b);

    // CF(V,V) = H*(S^n): unit in degree 0, top class in degree n
    let open = GradedSpace::from_basis([(0, "e".to_string()), (n as i64, "f".to_string())]);
    builder.add_lagrangian("V", open, MultiOp::new(1, 1));
    {
        let lag = builder.lagrangians.get_mut("V").unwrap();
        lag.e = vec![one(), Rational::zero()];
        lag.e_vee.set_entry(vec![1], vec![(0, one())]);
    }

    // cup product (written order: second factor first)
    let mut mu2 = MultiOp::new(2, 0);
    mu2.set_entry(vec![0, 0], vec![(0, one())]);
    mu2.set_entry(vec![0, 1], vec![(1, one())]);
    mu2.set_entry(vec![1, 0], vec![(1, one())]);
    builder
        .mu2
        .insert(("V".into(), "V".into(), "V".into()), mu2);

    // closed-open map: the closed unit goes to the open unit
    let mut phi0 = MultiOp::new(1, 0);
    phi0.set_entry(vec![i_e], vec![(0, one())]);
    builder.phi0.insert("V".into(), phi0);

    // its dual pairs the closed unit against the top class
    let mut phi0_vee = MultiOp::new(2, -(n as i64));
    phi0_vee.set_entry(vec![i_e, 1], vec![(0, one())]);
    builder.phi0_vee.insert("V".into(), phi0_vee);

    // phi1(b, -): zero on the unit, identity on the top class
    let mut phi1 = MultiOp::new(2, -1);
    phi1.set_entry(vec![i_b, 1], vec![(1, one())]);
    builder.phi1.insert(("V".into(), "V".into()), phi1);

    builder.build().expect("sphere model is valid")
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use crate::exactalg::Rational;
    use crate::qnumbers::{table_from_endomorphism, EquivariantTable};

    use super::super::checks::{
        check_differentials, check_dilation, check_equivariance, check_hvee, check_kvee,
        check_mu3_homotopy, check_phi1_homotopy, check_phi2_homotopy,
    };
    use super::super::cohomology::{build_tilde_phi1, check_derivation, cohomology};
    use super::super::cone::{build_cone, build_tilde_phi1t, check_cone_mu2_leibniz, ConeSide};
    use super::super::model::{ChainModel, PairComplex};
    use super::super::multiop::{to_seidel_convention, MultiOp};
    use super::super::space::GradedSpace;
    use super::sphere_model;

    fn r(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn all_checks_pass(m: &ChainModel) -> bool {
        let v = ("V", "V");
        check_differentials(m).passed()
            && check_mu3_homotopy(m, ("V", "V", "V", "V"))
                .unwrap()
                .passed()
            && check_phi1_homotopy(m, v).unwrap().passed()
            && check_phi2_homotopy(m, ("V", "V", "V")).unwrap().passed()
            && check_hvee(m, v).unwrap().passed()
            && check_kvee(m, "V").unwrap().passed()
            && check_dilation(m).passed()
            && check_equivariance(m, "V").unwrap().passed()
    }

    #[test]
    fn fixture_passes_all_checkers() {
        for n in [2, 3, 4] {
            assert!(all_checks_pass(&sphere_model(n)), "n = {n}");
        }
    }

    #[test]
    fn corrected_endomorphism_is_diagonal() {
        let m = sphere_model(3);
        let phi = build_tilde_phi1(&m, ("V", "V")).unwrap();
        assert_eq!(phi.eval_basis(&[0]), &[] as &[(usize, Rational)]);
        assert_eq!(phi.eval_basis(&[1]), &[(1, r(1))]);
    }

    #[test]
    fn cohomology_of_open_sector() {
        let m = sphere_model(3);
        let phi = build_tilde_phi1(&m, ("V", "V")).unwrap();
        let coh = cohomology(m.pair("V", "V").unwrap(), &phi).unwrap();
        assert_eq!(coh.total_dim(), 2);
        assert_eq!(coh.dims.get(&0), Some(&1));
        assert_eq!(coh.dims.get(&3), Some(&1));
        assert_eq!(coh.induced[&0].get(0, 0), &r(0));
        assert_eq!(coh.induced[&3].get(0, 0), &r(1));

        // the induced weights feed the q-intersection table: 1 + (-1)^n q
        let blocks: BTreeMap<i64, _> = coh.induced.clone();
        let table = table_from_endomorphism(&blocks, 3).unwrap();
        let expect = EquivariantTable::from_entries(3, [(0, r(0), 1), (3, r(1), 1)]);
        assert_eq!(table, expect);
    }

    #[test]
    fn cohomology_of_acyclic_complex() {
        // two lines with an isomorphism differential: no cohomology
        let space = GradedSpace::from_basis([(0, "x".into()), (1, "y".into())]);
        let mut mu1 = MultiOp::new(1, 1);
        mu1.set_entry(vec![0], vec![(1, r(1))]);
        let pc = PairComplex { space, mu1 };
        let coh = cohomology(&pc, &MultiOp::new(1, 0)).unwrap();
        assert_eq!(coh.total_dim(), 0);
    }

    #[test]
    fn derivation_property_holds() {
        let m = sphere_model(3);
        assert!(check_derivation(&m, ("V", "V", "V")).unwrap().passed());
    }

    #[test]
    fn bounding_cochain_shift_by_unit_shifts_phi() {
        // replacing c by c + s*e shifts the corrected endomorphism of the
        // diagonal by (s - s) = 0: the matrix must be unchanged
        let m = sphere_model(3);
        let base = build_tilde_phi1(&m, ("V", "V")).unwrap();
        let mut builder = m.clone().into_builder();
        let e_open = builder.lagrangians["V"].e.clone();
        let lag = builder.lagrangians.get_mut("V").unwrap();
        for (c, s) in lag.c.iter_mut().zip(&e_open) {
            *c += &(s * &r(5));
        }
        let shifted_model = builder.build().unwrap();
        let shifted = build_tilde_phi1(&shifted_model, ("V", "V")).unwrap();
        assert_eq!(base, shifted);
    }

    #[test]
    fn cone_structure_and_eigenvalues() {
        let m = sphere_model(3);
        let cone = build_cone(&m, "V", ("V", "V")).unwrap();
        assert_eq!(cone.space.dim(), 6);
        assert!(check_cone_mu2_leibniz(&m, &cone, &cone, ConeSide::Left)
            .unwrap()
            .passed());
        assert!(check_cone_mu2_leibniz(&m, &cone, &cone, ConeSide::Right)
            .unwrap()
            .passed());

        let tphi = build_tilde_phi1t(&m, &cone).unwrap();
        // Hom generators in out-major order: e(x)e', e(x)f', f(x)e', f(x)f'
        // carry corrected eigenvalues 0, -1, 1, 0
        let hom = tphi.block_matrix(cone.hom_slots());
        for (k, want) in [r(0), r(-1), r(1), r(0)].iter().enumerate() {
            for row in 0..4 {
                let expect = if row == k { want.clone() } else { r(0) };
                assert_eq!(hom.get(row, k), &expect, "hom block entry ({row},{k})");
            }
        }
    }

    #[test]
    fn cone_cohomology_and_supertrace_additivity() {
        let m = sphere_model(3);
        let cone = build_cone(&m, "V", ("V", "V")).unwrap();
        let tphi = build_tilde_phi1t(&m, &cone).unwrap();
        let pc = PairComplex {
            space: cone.space.clone(),
            mu1: cone.mu1_t.clone(),
        };
        let coh = cohomology(&pc, &tphi).unwrap();
        assert_eq!(coh.total_dim(), 2);
        let table = table_from_endomorphism(&coh.induced, 3).unwrap();
        // q_int(cone) = -1 + q^{-1} for n = 3
        let q_int = table.q_intersection();
        let mut expect = crate::exactalg::QLaurent::zero();
        expect.add_term(&r(-1), &r(0));
        expect.add_term(&r(1), &r(-1));
        assert_eq!(q_int, expect);
    }

    #[test]
    fn seidel_convention_round_trip_on_model_tensors() {
        let m = sphere_model(3);
        let open = &m.pair("V", "V").unwrap().space;
        let mu2 = m.mu2_op("V", "V", "V").unwrap();
        let spaces = [open, open];
        let bar = to_seidel_convention(mu2, &spaces);
        assert_eq!(&to_seidel_convention(&bar, &spaces), mu2);
    }
}
