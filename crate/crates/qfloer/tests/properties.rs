//! Property suites for the algebraic laws the library relies on.

use proptest::prelude::*;

use qfloer::exactalg::{generalized_eigenspaces, QLaurent, Rational, RationalMatrix};
use qfloer::lefschetz::{dual_pairing, sphere_self_pairing, LatticeVector, QLattice, TwistWord};
use qfloer::qnumbers::{EquivariantTable, ShiftSpec};

fn rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=9).prop_map(|(n, d)| Rational::new(n, d))
}

fn exponent() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| Rational::new(n, d))
}

fn qlaurent() -> impl Strategy<Value = QLaurent> {
    proptest::collection::vec((rational(), exponent()), 0..5).prop_map(|terms| {
        let mut out = QLaurent::zero();
        for (c, e) in terms {
            out.add_term(&c, &e);
        }
        out
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn qlaurent_ring_laws(a in qlaurent(), b in qlaurent(), c in qlaurent()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &QLaurent::one(), a.clone());
        prop_assert_eq!(&a - &a, QLaurent::zero());
    }

    #[test]
    fn qlaurent_variable_inversion_involution(a in qlaurent(), b in qlaurent()) {
        prop_assert_eq!(a.invert_variable().invert_variable(), a.clone());
        // ring homomorphism
        prop_assert_eq!(
            (&a * &b).invert_variable(),
            &a.invert_variable() * &b.invert_variable()
        );
        prop_assert_eq!(
            (&a + &b).invert_variable(),
            &a.invert_variable() + &b.invert_variable()
        );
    }

    #[test]
    fn eval_at_one_is_ring_homomorphism(a in qlaurent(), b in qlaurent()) {
        prop_assert_eq!((&a + &b).eval_at_one(), &a.eval_at_one() + &b.eval_at_one());
        prop_assert_eq!((&a * &b).eval_at_one(), &a.eval_at_one() * &b.eval_at_one());
    }

    #[test]
    fn qlaurent_serde_round_trip(a in qlaurent()) {
        let json = serde_json::to_value(&a).unwrap();
        let back: QLaurent = serde_json::from_value(json).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn eigen_decomposition_matches_constructed_spectrum(
        eigs in proptest::collection::vec(-4i64..=4, 1..5),
        seed in 0u64..1000,
    ) {
        // conjugate a diagonal matrix by a unit upper/lower triangular pair
        let k = eigs.len();
        let mut p = RationalMatrix::from_fn(k, k, |i, j| {
            if i == j {
                Rational::one()
            } else if i < j {
                Rational::from_int(((seed as i64) * (i as i64 + 2) + j as i64) % 3 - 1)
            } else {
                Rational::zero()
            }
        });
        let l = RationalMatrix::from_fn(k, k, |i, j| {
            if i == j {
                Rational::one()
            } else if i > j {
                Rational::from_int(((seed as i64) + i as i64 * j as i64) % 3 - 1)
            } else {
                Rational::zero()
            }
        });
        p = &p * &l;
        let d = RationalMatrix::from_fn(k, k, |i, j| {
            if i == j { Rational::from_int(eigs[i]) } else { Rational::zero() }
        });
        let m = &(&p * &d) * &p.inverse().unwrap();
        let decomp = generalized_eigenspaces(&m).unwrap();
        let mut got: Vec<(Rational, usize)> = decomp
            .blocks
            .iter()
            .map(|b| (b.eigenvalue.clone(), b.multiplicity))
            .collect();
        got.sort_by(|a, b| a.0.cmp(&b.0));
        let mut want: Vec<(Rational, usize)> = Vec::new();
        let mut sorted = eigs.clone();
        sorted.sort();
        for e in sorted {
            let e = Rational::from_int(e);
            if let Some(last) = want.last_mut() {
                if last.0 == e {
                    last.1 += 1;
                    continue;
                }
            }
            want.push((e, 1));
        }
        prop_assert_eq!(got, want);
    }

    #[test]
    fn table_shift_composition_and_duality(
        entries in proptest::collection::vec((0i64..=6, exponent(), 1usize..3), 1..5),
        r1 in -3i64..=3,
        s1 in exponent(),
        n in 2u32..=5,
    ) {
        let table = EquivariantTable::from_entries(n, entries);
        let id = ShiftSpec::identity();
        prop_assert_eq!(table.apply_shift(&id, &id), table.clone());
        // shifting right then undoing it is the identity
        let spec = ShiftSpec { r: r1, s: s1 };
        prop_assert_eq!(
            table.apply_shift(&id, &spec).apply_shift(&spec, &id)
                 .apply_shift(&id, &id),
            table.clone()
        );
        // duality is an involution and acts on the supertrace as
        // (-1)^n q * value(1/q)
        let dual = table.poincare_dual();
        prop_assert_eq!(dual.poincare_dual(), table.clone());
        let sign = if n % 2 == 0 { 1 } else { -1 };
        let rhs = &table.q_intersection().invert_variable()
            * &QLaurent::monomial(Rational::from_int(sign), Rational::one());
        prop_assert_eq!(dual.q_intersection(), rhs);
    }

    #[test]
    fn lattice_duality_and_word_inverse(
        upper in proptest::collection::vec(qlaurent(), 3),
        word in proptest::collection::vec((0usize..3, prop::bool::ANY), 0..5),
        n in 2u32..=4,
    ) {
        // random 3-sphere lattice: free upper triangle, duality-forced lower
        let size = 3;
        let diag = sphere_self_pairing(n);
        let mut pairing = vec![vec![QLaurent::zero(); size]; size];
        let mut it = upper.iter();
        // indexing (i, j) and (j, i) together keeps the symmetric fill explicit
        #[allow(clippy::needless_range_loop)]
        for i in 0..size {
            pairing[i][i] = diag.clone();
            for j in i + 1..size {
                let v = it.next().unwrap().clone();
                pairing[j][i] = dual_pairing(n, &v);
                pairing[i][j] = v;
            }
        }
        let lat = QLattice::new(
            n,
            (0..size).map(|i| format!("L{i}")).collect(),
            pairing,
            vec![true; size],
        ).unwrap();

        // constructor-enforced duality is observable through pair()
        for i in 0..size {
            for j in 0..size {
                let f = lat.pair(
                    &LatticeVector::basis(i, size),
                    &LatticeVector::basis(j, size),
                ).unwrap();
                let b = lat.pair(
                    &LatticeVector::basis(j, size),
                    &LatticeVector::basis(i, size),
                ).unwrap();
                prop_assert_eq!(b, dual_pairing(n, &f));
            }
        }

        // w concatenated with its inverse acts as the identity
        let word = TwistWord {
            letters: word.into_iter()
                .map(|(v, pos)| (v, if pos { 1 } else { -1 }))
                .collect(),
        };
        let mut cancel = word.clone();
        cancel.letters.extend(word.inverse().letters);
        for i in 0..size {
            let x = LatticeVector::basis(i, size);
            prop_assert_eq!(lat.apply_word(&cancel, &x).unwrap(), x);
        }
    }
}
