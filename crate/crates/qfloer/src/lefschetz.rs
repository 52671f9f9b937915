//! q-deformed Picard-Lefschetz representation: a lattice of Lagrangian
//! classes with a QLaurent-valued pairing, Dehn twist operators acting on the
//! left pairing slot, twist-word evaluation, and builders for the A_m and
//! affine A_1 vanishing-cycle configurations.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::exactalg::{QLaurent, Rational};

#[derive(Debug, Error)]
pub enum LatticeError {
    #[error("pairing matrix is not square with size = number of labels")]
    Shape,
    #[error("sphere diagonal invariant violated at index {0}: expected 1 + (-1)^n q")]
    SphereDiagonal(usize),
    #[error("duality invariant violated at pair ({0},{1})")]
    Duality(usize, usize),
    #[error("index {0} out of range (lattice size {1})")]
    IndexOutOfRange(usize, usize),
    #[error("index {0} is not a twistable sphere")]
    NotASphere(usize),
    #[error("vector size {0} does not match lattice size {1}")]
    SizeMismatch(usize, usize),
    #[error(
        "A_m builder supports n = 3 only (got n = {0}); the adjacent weights are pinned only there"
    )]
    UnsupportedDimension(u32),
    #[error("A_m builder needs m >= 1")]
    EmptyChain,
}

/// Basis of Lagrangian-sphere classes with a QLaurent pairing matrix.
/// Constructor-enforced invariants: sphere diagonals equal 1 + (-1)^n q and
/// the pairing satisfies pairing(j,i)(q) = (-1)^n q * pairing(i,j)(1/q).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QLattice {
    n: u32,
    labels: Vec<String>,
    pairing: Vec<Vec<QLaurent>>,
    sphere_flags: Vec<bool>,
}

/// Formal class in the free QLaurent-module over the lattice basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeVector {
    pub coords: Vec<QLaurent>,
}

/// A Picard-Lefschetz program: sequence of (sphere index, exponent +-1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistWord {
    pub letters: Vec<(usize, i8)>,
}

/// Square matrix of QLaurent entries, used for twist operators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentMatrix {
    size: usize,
    entries: Vec<QLaurent>,
}

impl LaurentMatrix {
    pub fn identity(size: usize) -> Self {
        let mut m = LaurentMatrix {
            size,
            entries: vec![QLaurent::zero(); size * size],
        };
        for i in 0..size {
            *m.get_mut(i, i) = QLaurent::one();
        }
        m
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> &QLaurent {
        &self.entries[i * self.size + j]
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut QLaurent {
        &mut self.entries[i * self.size + j]
    }

    pub fn mul(&self, rhs: &LaurentMatrix) -> LaurentMatrix {
        assert_eq!(self.size, rhs.size);
        let mut out = LaurentMatrix {
            size: self.size,
            entries: vec![QLaurent::zero(); self.size * self.size],
        };
        for i in 0..self.size {
            for j in 0..self.size {
                let mut acc = QLaurent::zero();
                for k in 0..self.size {
                    acc = &acc + &(self.get(i, k) * rhs.get(k, j));
                }
                *out.get_mut(i, j) = acc;
            }
        }
        out
    }

    pub fn sub(&self, rhs: &LaurentMatrix) -> LaurentMatrix {
        assert_eq!(self.size, rhs.size);
        LaurentMatrix {
            size: self.size,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn apply(&self, v: &LatticeVector) -> LatticeVector {
        assert_eq!(v.coords.len(), self.size);
        LatticeVector {
            coords: (0..self.size)
                .map(|i| {
                    let mut acc = QLaurent::zero();
                    for j in 0..self.size {
                        acc = &acc + &(self.get(i, j) * &v.coords[j]);
                    }
                    acc
                })
                .collect(),
        }
    }
}

impl LatticeVector {
    pub fn zero(size: usize) -> Self {
        LatticeVector {
            coords: vec![QLaurent::zero(); size],
        }
    }

    pub fn basis(index: usize, size: usize) -> Self {
        let mut v = LatticeVector::zero(size);
        v.coords[index] = QLaurent::one();
        v
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }
}

/// The sphere self-pairing 1 + (-1)^n q.
pub fn sphere_self_pairing(n: u32) -> QLaurent {
    &QLaurent::one() + &QLaurent::monomial(sign(n), Rational::one())
}

fn sign(k: u32) -> Rational {
    Rational::from_int(if k.is_multiple_of(2) { 1 } else { -1 })
}

/// The scalar (-1)^{n+1} q^{-1} in front of the Picard-Lefschetz correction.
fn twist_scalar(n: u32) -> QLaurent {
    QLaurent::monomial(sign(n + 1), Rational::from_int(-1))
}

/// What duality forces pairing(j,i) to be, given pairing(i,j):
/// (-1)^n q * value(1/q).
pub fn dual_pairing(n: u32, value: &QLaurent) -> QLaurent {
    &value.invert_variable() * &QLaurent::monomial(sign(n), Rational::one())
}

impl QLattice {
    pub fn new(
        n: u32,
        labels: Vec<String>,
        pairing: Vec<Vec<QLaurent>>,
        sphere_flags: Vec<bool>,
    ) -> Result<Self, LatticeError> {
        let size = labels.len();
        if pairing.len() != size
            || pairing.iter().any(|row| row.len() != size)
            || sphere_flags.len() != size
        {
            return Err(LatticeError::Shape);
        }
        let diag = sphere_self_pairing(n);
        for i in 0..size {
            if sphere_flags[i] && pairing[i][i] != diag {
                return Err(LatticeError::SphereDiagonal(i));
            }
        }
        // indexing both (i, j) and (j, i) keeps the transposed access explicit
        #[allow(clippy::needless_range_loop)]
        for i in 0..size {
            for j in 0..size {
                if pairing[j][i] != dual_pairing(n, &pairing[i][j]) {
                    return Err(LatticeError::Duality(i, j));
                }
            }
        }
        Ok(QLattice {
            n,
            labels,
            pairing,
            sphere_flags,
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn sphere_flags(&self) -> &[bool] {
        &self.sphere_flags
    }

    pub fn pairing_entry(&self, i: usize, j: usize) -> Result<&QLaurent, LatticeError> {
        self.check_index(i)?;
        self.check_index(j)?;
        Ok(&self.pairing[i][j])
    }

    fn check_index(&self, i: usize) -> Result<(), LatticeError> {
        if i >= self.size() {
            return Err(LatticeError::IndexOutOfRange(i, self.size()));
        }
        Ok(())
    }

    fn check_sphere(&self, v: usize) -> Result<(), LatticeError> {
        self.check_index(v)?;
        if !self.sphere_flags[v] {
            return Err(LatticeError::NotASphere(v));
        }
        Ok(())
    }

    /// Bilinear extension of the pairing: sum_{i,j} x_i y_j pairing(i,j).
    pub fn pair(&self, x: &LatticeVector, y: &LatticeVector) -> Result<QLaurent, LatticeError> {
        if x.coords.len() != self.size() {
            return Err(LatticeError::SizeMismatch(x.coords.len(), self.size()));
        }
        if y.coords.len() != self.size() {
            return Err(LatticeError::SizeMismatch(y.coords.len(), self.size()));
        }
        let mut acc = QLaurent::zero();
        for (i, xi) in x.coords.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.coords.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                acc = &acc + &(&(xi * yj) * &self.pairing[i][j]);
            }
        }
        Ok(acc)
    }

    /// Matrix of T(x) = x + (-1)^{n+1} q^{-1} pair(x, e_v) e_v in the basis.
    pub fn twist_operator(&self, v: usize) -> Result<LaurentMatrix, LatticeError> {
        self.check_sphere(v)?;
        let c = twist_scalar(self.n);
        let mut m = LaurentMatrix::identity(self.size());
        for j in 0..self.size() {
            let bump = &c * &self.pairing[j][v];
            *m.get_mut(v, j) = m.get(v, j) + &bump;
        }
        Ok(m)
    }

    /// Matrix of the inverse twist T^{-1}(y) = y - pair(y, e_v) e_v.
    pub fn inverse_twist_operator(&self, v: usize) -> Result<LaurentMatrix, LatticeError> {
        self.check_sphere(v)?;
        let mut m = LaurentMatrix::identity(self.size());
        for j in 0..self.size() {
            *m.get_mut(v, j) = m.get(v, j) - &self.pairing[j][v];
        }
        Ok(m)
    }

    /// Apply a twist word to a vector, letters composed left to right.
    pub fn apply_word(
        &self,
        word: &TwistWord,
        x: &LatticeVector,
    ) -> Result<LatticeVector, LatticeError> {
        if x.coords.len() != self.size() {
            return Err(LatticeError::SizeMismatch(x.coords.len(), self.size()));
        }
        let mut v = x.clone();
        for &(idx, exp) in &word.letters {
            let op = if exp >= 0 {
                self.twist_operator(idx)?
            } else {
                self.inverse_twist_operator(idx)?
            };
            v = op.apply(&v);
        }
        Ok(v)
    }

    /// tau_V(L_i) . L_j - L_i . L_j = (-1)^{n+1} q^{-1} pairing(i,v) pairing(v,j).
    pub fn les_defect(&self, v: usize, i: usize, j: usize) -> Result<QLaurent, LatticeError> {
        self.check_sphere(v)?;
        self.check_index(i)?;
        self.check_index(j)?;
        Ok(&twist_scalar(self.n) * &(&self.pairing[i][v] * &self.pairing[v][j]))
    }

    /// Computes T_i T_j T_i - T_j T_i T_j and reports whether it vanishes.
    /// Recorded, not asserted: no braid relation is claimed for these
    /// operators.
    pub fn braid_probe(&self, i: usize, j: usize) -> Result<BraidReport, LatticeError> {
        let ti = self.twist_operator(i)?;
        let tj = self.twist_operator(j)?;
        let lhs = ti.mul(&tj).mul(&ti);
        let rhs = tj.mul(&ti).mul(&tj);
        let difference = lhs.sub(&rhs);
        Ok(BraidReport {
            i,
            j,
            is_zero: difference.is_zero(),
            difference,
        })
    }
}

#[derive(Debug, Clone)]
pub struct BraidReport {
    pub i: usize,
    pub j: usize,
    pub is_zero: bool,
    pub difference: LaurentMatrix,
}

/// A_m chain of Lagrangian spheres in the Milnor fibre, n = 3 only: adjacent
/// pairings are -q^{1/3} (degree 1, weight 1/3) with the reverse direction
/// forced by duality; non-adjacent spheres are disjoint.
pub fn build_am(m: usize, n: u32) -> Result<QLattice, LatticeError> {
    if m < 1 {
        return Err(LatticeError::EmptyChain);
    }
    if n != 3 {
        return Err(LatticeError::UnsupportedDimension(n));
    }
    let diag = sphere_self_pairing(n);
    let above = QLaurent::monomial(Rational::from_int(-1), Rational::new(1, 3));
    let below = dual_pairing(n, &above); // q^{2/3}
    let pairing = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| {
                    if i == j {
                        diag.clone()
                    } else if j == i + 1 {
                        above.clone()
                    } else if i == j + 1 {
                        below.clone()
                    } else {
                        QLaurent::zero()
                    }
                })
                .collect()
        })
        .collect();
    QLattice::new(
        n,
        (1..=m).map(|i| format!("L{}", i)).collect(),
        pairing,
        vec![true; m],
    )
}

/// The two-sphere configuration of the affine A_1 Milnor fibre (n = 3):
/// HF^k(L0,L1) one-dimensional in degrees k = 1, 2 with weights k/3. The
/// weight normalization fixes one dilation out of the B + mu*Z family.
pub fn build_affine_a1() -> Result<QLattice, LatticeError> {
    let n = 3;
    let diag = sphere_self_pairing(n);
    // (-1)^1 q^{1/3} + (-1)^2 q^{2/3}
    let mut upper = QLaurent::zero();
    upper.add_term(&Rational::from_int(-1), &Rational::new(1, 3));
    upper.add_term(&Rational::from_int(1), &Rational::new(2, 3));
    let lower = dual_pairing(n, &upper);
    QLattice::new(
        n,
        vec!["L0".into(), "L1".into()],
        vec![vec![diag.clone(), upper], vec![lower, diag]],
        vec![true, true],
    )
}

// Lattice wire format: {"schema": 1, "n": int, "labels": [...],
// "spheres": [bool,...], "pairing": [[QLaurent,...],...]}.
#[derive(Serialize, Deserialize)]
struct LatticeJson {
    schema: u32,
    n: u32,
    labels: Vec<String>,
    spheres: Vec<bool>,
    pairing: Vec<Vec<QLaurent>>,
}

pub const SCHEMA_VERSION: u32 = 1;

impl Serialize for QLattice {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        LatticeJson {
            schema: SCHEMA_VERSION,
            n: self.n,
            labels: self.labels.clone(),
            spheres: self.sphere_flags.clone(),
            pairing: self.pairing.clone(),
        }
        .serialize(serializer)
    }
}

impl QLattice {
    /// Deserialize without invariant checks; pair with `QLattice::new` via
    /// `from_json` for validated loading.
    pub fn from_json(value: &serde_json::Value) -> Result<Self, LatticeLoadError> {
        let raw: LatticeJson =
            serde_json::from_value(value.clone()).map_err(LatticeLoadError::Schema)?;
        if raw.schema != SCHEMA_VERSION {
            return Err(LatticeLoadError::SchemaVersion(raw.schema));
        }
        QLattice::new(raw.n, raw.labels, raw.pairing, raw.spheres)
            .map_err(LatticeLoadError::Invariant)
    }
}

#[derive(Debug, Error)]
pub enum LatticeLoadError {
    #[error("lattice schema error: {0}")]
    Schema(serde_json::Error),
    #[error("unsupported schema version {0}")]
    SchemaVersion(u32),
    #[error("lattice invariant violation: {0}")]
    Invariant(LatticeError),
}

// Word wire format: [["tau", index, +1|-1], ...].
impl Serialize for TwistWord {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<(&str, usize, i8)> = self
            .letters
            .iter()
            .map(|&(idx, exp)| ("tau", idx, exp))
            .collect();
        rows.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for TwistWord {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let rows = Vec::<(String, usize, i8)>::deserialize(deserializer)?;
        let mut letters = Vec::with_capacity(rows.len());
        for (tag, idx, exp) in rows {
            if tag != "tau" {
                return Err(D::Error::custom(format!("unknown word letter tag {tag:?}")));
            }
            if exp != 1 && exp != -1 {
                return Err(D::Error::custom("exponent must be +1 or -1"));
            }
            letters.push((idx, exp));
        }
        Ok(TwistWord { letters })
    }
}

impl TwistWord {
    /// Letterwise-reversed, exponent-flipped word: the group inverse.
    pub fn inverse(&self) -> TwistWord {
        TwistWord {
            letters: self
                .letters
                .iter()
                .rev()
                .map(|&(idx, exp)| (idx, -exp))
                .collect(),
        }
    }
}
