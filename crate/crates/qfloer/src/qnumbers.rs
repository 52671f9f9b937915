//! Equivariant Floer tables and the supertrace q-intersection number.
//!
//! A table records, per (cohomological degree, equivariant weight), the
//! dimension of the corresponding generalized eigenspace. The q-intersection
//! number is the supertrace of q^(weight) over the table. Shift and duality
//! identities act at the table level.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactalg::{generalized_eigenspaces, EigenError, QLaurent, Rational, RationalMatrix};

#[derive(Debug, Error)]
pub enum TableError {
    #[error("k = {k} does not divide n = {n}")]
    Divisibility { n: u32, k: u32 },
    #[error(transparent)]
    Eigen(#[from] EigenError),
}

/// Bigraded dimension table of HF*(L0,L1): (degree, weight) -> dim.
/// Only nonzero dimensions are stored. `n` is the complex dimension of the
/// ambient manifold, carried on the table so duality is total.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivariantTable {
    n: u32,
    entries: BTreeMap<(i64, Rational), usize>,
}

/// Combined grading shift L[r] and equivariant shift L<s>.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShiftSpec {
    pub r: i64,
    pub s: Rational,
}

impl ShiftSpec {
    pub fn identity() -> Self {
        ShiftSpec {
            r: 0,
            s: Rational::zero(),
        }
    }
}

impl EquivariantTable {
    pub fn empty(n: u32) -> Self {
        EquivariantTable {
            n,
            entries: BTreeMap::new(),
        }
    }

    pub fn from_entries(n: u32, entries: impl IntoIterator<Item = (i64, Rational, usize)>) -> Self {
        let mut t = EquivariantTable::empty(n);
        for (deg, weight, dim) in entries {
            t.add(deg, weight, dim);
        }
        t
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn add(&mut self, deg: i64, weight: Rational, dim: usize) {
        if dim == 0 {
            return;
        }
        *self.entries.entry((deg, weight)).or_insert(0) += dim;
    }

    pub fn dim(&self, deg: i64, weight: &Rational) -> usize {
        self.entries
            .get(&(deg, weight.clone()))
            .copied()
            .unwrap_or(0)
    }

    /// Entries sorted by (degree, weight).
    pub fn entries(&self) -> impl Iterator<Item = (&(i64, Rational), &usize)> {
        self.entries.iter()
    }

    /// Supertrace of q^weight: sum of (-1)^degree * dim * q^weight.
    pub fn q_intersection(&self) -> QLaurent {
        let mut out = QLaurent::zero();
        for ((deg, weight), dim) in &self.entries {
            let sign = if deg.rem_euclid(2) == 0 { 1 } else { -1 };
            out.add_term(&Rational::from_int(sign * *dim as i64), weight);
        }
        out
    }

    /// Move each entry (d, w) to (d + right.r - left.r, w + right.s - left.s).
    pub fn apply_shift(&self, left: &ShiftSpec, right: &ShiftSpec) -> EquivariantTable {
        let dr = right.r - left.r;
        let ds = &right.s - &left.s;
        let mut out = EquivariantTable::empty(self.n);
        for ((deg, weight), dim) in &self.entries {
            out.add(deg + dr, weight + &ds, *dim);
        }
        out
    }

    /// (d, w) -> (n - d, 1 - w). An involution; the q-intersection number of
    /// the dual equals (-1)^n * q * (the original evaluated at 1/q).
    pub fn poincare_dual(&self) -> EquivariantTable {
        let mut out = EquivariantTable::empty(self.n);
        for ((deg, weight), dim) in &self.entries {
            out.add(self.n as i64 - deg, Rational::one() - weight, *dim);
        }
        out
    }
}

/// Table of a space whose cohomology algebra has a single generator of
/// degree n/k: entries (n*i/k, i/k) for i = 0..=k, each one-dimensional.
pub fn single_generator_table(n: u32, k: u32) -> Result<EquivariantTable, TableError> {
    assert!(k >= 1);
    if !n.is_multiple_of(k) {
        return Err(TableError::Divisibility { n, k });
    }
    let step = (n / k) as i64;
    Ok(EquivariantTable::from_entries(
        n,
        (0..=k as i64).map(|i| (step * i, Rational::new(i, k as i64), 1)),
    ))
}

/// Read off a table from a per-degree matrix of the equivariant endomorphism:
/// each degree contributes the algebraic multiplicities of its eigenvalues.
pub fn table_from_endomorphism(
    per_degree: &BTreeMap<i64, RationalMatrix>,
    n: u32,
) -> Result<EquivariantTable, TableError> {
    let mut out = EquivariantTable::empty(n);
    for (&deg, m) in per_degree {
        let decomp = generalized_eigenspaces(m)?;
        for block in decomp.blocks {
            out.add(deg, block.eigenvalue, block.multiplicity);
        }
    }
    Ok(out)
}

/// Compact/classical case: each intersection point contributes at
/// (degree, c0 - c1), dimensions accumulated.
pub fn classical_table(points: &[(i64, Rational, Rational)], n: u32) -> EquivariantTable {
    let mut out = EquivariantTable::empty(n);
    for (deg, c0, c1) in points {
        out.add(*deg, c0 - c1, 1);
    }
    out
}

// JSON schema: {"n": int, "entries": [{"deg": int, "weight": [num,den],
// "dim": int}, ...]}, entries sorted by (deg, weight).
#[derive(Serialize, Deserialize)]
struct TableEntryJson {
    deg: i64,
    weight: Rational,
    dim: usize,
}

#[derive(Serialize, Deserialize)]
struct TableJson {
    n: u32,
    entries: Vec<TableEntryJson>,
}

impl Serialize for EquivariantTable {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        TableJson {
            n: self.n,
            entries: self
                .entries
                .iter()
                .map(|((deg, weight), dim)| TableEntryJson {
                    deg: *deg,
                    weight: weight.clone(),
                    dim: *dim,
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for EquivariantTable {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = TableJson::deserialize(deserializer)?;
        Ok(EquivariantTable::from_entries(
            raw.n,
            raw.entries.into_iter().map(|e| (e.deg, e.weight, e.dim)),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn ql(terms: &[(i64, i64, i64, i64)]) -> QLaurent {
        let mut out = QLaurent::zero();
        for (cn, cd, en, ed) in terms {
            out.add_term(&r(*cn, *cd), &r(*en, *ed));
        }
        out
    }

    #[test]
    fn cotangent_cp2_table() {
        // n=4, {(0,0):1, (2,1/2):1, (4,1):1} -> 1 + q^{1/2} + q
        let t =
            EquivariantTable::from_entries(4, [(0, r(0, 1), 1), (2, r(1, 2), 1), (4, r(1, 1), 1)]);
        assert_eq!(
            t.q_intersection(),
            ql(&[(1, 1, 0, 1), (1, 1, 1, 2), (1, 1, 1, 1)])
        );
    }

    #[test]
    fn empty_table_is_zero() {
        assert!(EquivariantTable::empty(3).q_intersection().is_zero());
    }

    #[test]
    fn sphere_table() {
        let t = EquivariantTable::from_entries(3, [(0, r(0, 1), 1), (3, r(1, 1), 1)]);
        assert_eq!(t.q_intersection(), ql(&[(1, 1, 0, 1), (-1, 1, 1, 1)]));
    }

    #[test]
    fn single_generator_examples() {
        // (n=3, k=3): 1 - q^{1/3} + q^{2/3} - q
        let t = single_generator_table(3, 3).unwrap();
        assert_eq!(
            t.q_intersection(),
            ql(&[(1, 1, 0, 1), (-1, 1, 1, 3), (1, 1, 2, 3), (-1, 1, 1, 1)])
        );
        // (n=3, k=1): sphere
        let t = single_generator_table(3, 1).unwrap();
        assert_eq!(
            t,
            EquivariantTable::from_entries(3, [(0, r(0, 1), 1), (3, r(1, 1), 1)])
        );
        // (n=4, k=2): 1 + q^{1/2} + q
        let t = single_generator_table(4, 2).unwrap();
        assert_eq!(
            t.q_intersection(),
            ql(&[(1, 1, 0, 1), (1, 1, 1, 2), (1, 1, 1, 1)])
        );
        assert!(matches!(
            single_generator_table(3, 2),
            Err(TableError::Divisibility { .. })
        ));
    }

    #[test]
    fn shift_examples() {
        let t = EquivariantTable::from_entries(3, [(0, r(0, 1), 1)]);
        let id = ShiftSpec::identity();
        assert_eq!(t.apply_shift(&id, &id), t);

        let right = ShiftSpec {
            r: 1,
            s: Rational::zero(),
        };
        let shifted = t.apply_shift(&id, &right);
        assert_eq!(
            shifted,
            EquivariantTable::from_entries(3, [(1, r(0, 1), 1)])
        );
        assert_eq!(shifted.q_intersection(), ql(&[(-1, 1, 0, 1)]));

        let right = ShiftSpec {
            r: 0,
            s: Rational::one(),
        };
        let shifted = t.apply_shift(&id, &right);
        assert_eq!(
            shifted,
            EquivariantTable::from_entries(3, [(0, r(1, 1), 1)])
        );
        assert_eq!(shifted.q_intersection(), ql(&[(1, 1, 1, 1)]));
    }

    #[test]
    fn dual_examples() {
        let t = EquivariantTable::from_entries(3, [(1, r(1, 3), 1)]);
        assert_eq!(
            t.poincare_dual(),
            EquivariantTable::from_entries(3, [(2, r(2, 3), 1)])
        );
        // middle entry is a fixed point
        let t = EquivariantTable::from_entries(4, [(2, r(1, 2), 1)]);
        assert_eq!(t.poincare_dual(), t);
        // sphere table is self-dual
        let t = EquivariantTable::from_entries(3, [(0, r(0, 1), 1), (3, r(1, 1), 1)]);
        assert_eq!(t.poincare_dual(), t);
    }

    #[test]
    fn endomorphism_examples() {
        let mut per_degree = BTreeMap::new();
        per_degree.insert(0, RationalMatrix::from_rows(vec![vec![r(0, 1)]]));
        per_degree.insert(3, RationalMatrix::from_rows(vec![vec![r(1, 1)]]));
        let t = table_from_endomorphism(&per_degree, 3).unwrap();
        assert_eq!(
            t,
            EquivariantTable::from_entries(3, [(0, r(0, 1), 1), (3, r(1, 1), 1)])
        );

        let mut per_degree = BTreeMap::new();
        per_degree.insert(
            1,
            RationalMatrix::from_rows(vec![vec![r(1, 3), r(1, 1)], vec![r(0, 1), r(1, 3)]]),
        );
        let t = table_from_endomorphism(&per_degree, 3).unwrap();
        assert_eq!(t, EquivariantTable::from_entries(3, [(1, r(1, 3), 2)]));

        let t = table_from_endomorphism(&BTreeMap::new(), 3).unwrap();
        assert!(t.is_empty());
    }

    #[test]
    fn classical_examples() {
        let t = classical_table(&[(0, r(0, 1), r(0, 1))], 2);
        assert_eq!(t, EquivariantTable::from_entries(2, [(0, r(0, 1), 1)]));

        let t = classical_table(&[(0, r(1, 2), r(0, 1)), (1, r(1, 2), r(0, 1))], 2);
        assert_eq!(
            t,
            EquivariantTable::from_entries(2, [(0, r(1, 2), 1), (1, r(1, 2), 1)])
        );
        assert!(t.q_intersection().is_zero());

        let t = classical_table(&[(2, r(1, 1), r(1, 3))], 2);
        assert_eq!(t, EquivariantTable::from_entries(2, [(2, r(2, 3), 1)]));
    }

    #[test]
    fn json_round_trip() {
        let t = single_generator_table(4, 2).unwrap();
        let s = serde_json::to_string(&t).unwrap();
        assert!(s.contains("\"deg\":2"));
        assert_eq!(serde_json::from_str::<EquivariantTable>(&s).unwrap(), t);
    }
}
