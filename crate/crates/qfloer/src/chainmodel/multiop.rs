use std::collections::BTreeMap;

use crate::exactalg::Rational;

use super::space::GradedSpace;

/// A multilinear operation stored as a sparse tensor on basis tuples: keys
/// are input basis index tuples (in the written argument order, leftmost
/// first), values are output coordinate lists. Every stored entry must
/// respect the declared degree shift: output degree = sum of input degrees
/// + shift (validated against the participating spaces).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiOp {
    arity: usize,
    shift: i64,
    entries: BTreeMap<Vec<usize>, Vec<(usize, Rational)>>,
}

impl MultiOp {
    pub fn new(arity: usize, shift: i64) -> Self {
        MultiOp {
            arity,
            shift,
            entries: BTreeMap::new(),
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Vec<usize>, &Vec<(usize, Rational)>)> {
        self.entries.iter()
    }

    /// Replace the output for one input tuple; zero coefficients are dropped
    /// and an all-zero output removes the entry.
    pub fn set_entry(&mut self, inputs: Vec<usize>, output: Vec<(usize, Rational)>) {
        assert_eq!(inputs.len(), self.arity, "wrong input tuple length");
        let mut merged: BTreeMap<usize, Rational> = BTreeMap::new();
        for (idx, c) in output {
            let entry = merged.entry(idx).or_default();
            *entry += &c;
        }
        let output: Vec<(usize, Rational)> =
            merged.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        if output.is_empty() {
            self.entries.remove(&inputs);
        } else {
            self.entries.insert(inputs, output);
        }
    }

    /// Add `c` to the coefficient of `out_index` at the given input tuple
    /// (the single-entry perturbation used by mutation tests).
    pub fn add_to_entry(&mut self, inputs: &[usize], out_index: usize, c: Rational) {
        assert_eq!(inputs.len(), self.arity, "wrong input tuple length");
        let mut output = self.entries.get(inputs).cloned().unwrap_or_default();
        output.push((out_index, c));
        self.set_entry(inputs.to_vec(), output);
    }

    /// Output coordinates on one basis tuple (empty if no entry is stored).
    pub fn eval_basis(&self, inputs: &[usize]) -> &[(usize, Rational)] {
        assert_eq!(inputs.len(), self.arity, "wrong input tuple length");
        self.entries.get(inputs).map_or(&[], |v| v.as_slice())
    }

    /// Multilinear evaluation on coordinate vectors.
    pub fn apply(&self, args: &[&[Rational]], out_dim: usize) -> Vec<Rational> {
        assert_eq!(args.len(), self.arity, "wrong argument count");
        let mut out = vec![Rational::zero(); out_dim];
        for (inputs, output) in &self.entries {
            let mut factor = Rational::one();
            for (k, &i) in inputs.iter().enumerate() {
                factor *= &args[k][i];
                if factor.is_zero() {
                    break;
                }
            }
            if factor.is_zero() {
                continue;
            }
            for (idx, c) in output {
                out[*idx] += &(c * &factor);
            }
        }
        out
    }

    /// Check every stored entry against the degree discipline and the index
    /// ranges of the given spaces. Returns a description of the first
    /// violation, if any.
    pub fn validate(&self, inputs: &[&GradedSpace], output: &GradedSpace) -> Result<(), String> {
        if inputs.len() != self.arity {
            return Err(format!(
                "arity {} but {} input spaces",
                self.arity,
                inputs.len()
            ));
        }
        for (key, value) in &self.entries {
            let mut in_deg = 0i64;
            for (k, &i) in key.iter().enumerate() {
                if i >= inputs[k].dim() {
                    return Err(format!("input index {} out of range in slot {}", i, k));
                }
                in_deg += inputs[k].degree(i);
            }
            let expect = in_deg + self.shift;
            for (idx, _) in value {
                if *idx >= output.dim() {
                    return Err(format!("output index {} out of range", idx));
                }
                if output.degree(*idx) != expect {
                    return Err(format!(
                        "entry {:?} -> {} has degree {} but shift {} demands {}",
                        key,
                        output.label(*idx),
                        output.degree(*idx),
                        self.shift,
                        expect
                    ));
                }
            }
        }
        Ok(())
    }

    /// Matrix of an arity-1 degree-preserving operation restricted to one
    /// degree block (rows/columns indexed by `indices`).
    pub fn block_matrix(&self, indices: &[usize]) -> crate::exactalg::RationalMatrix {
        assert_eq!(self.arity, 1);
        crate::exactalg::RationalMatrix::from_fn(indices.len(), indices.len(), |r, c| {
            self.eval_basis(&[indices[c]])
                .iter()
                .find(|(idx, _)| *idx == indices[r])
                .map(|(_, v)| v.clone())
                .unwrap_or_default()
        })
    }
}

/// Translate an operation between the dga-style sign convention used
/// throughout this crate and the alternate A-infinity convention:
/// each entry on (a_d, ..., a_1) is scaled by (-1)^(|a_1| + 2|a_2| + ... +
/// d|a_d|). The map is an involution, so it also translates back.
pub fn to_seidel_convention(op: &MultiOp, inputs: &[&GradedSpace]) -> MultiOp {
    assert_eq!(inputs.len(), op.arity());
    let d = op.arity();
    let mut out = MultiOp::new(d, op.shift());
    for (key, value) in op.entries() {
        // written position k holds a_{d-k}, which carries weight d-k
        let exponent: i64 = key
            .iter()
            .enumerate()
            .map(|(k, &i)| (d - k) as i64 * inputs[k].degree(i))
            .sum();
        let scaled = if exponent.rem_euclid(2) == 0 {
            value.clone()
        } else {
            value.iter().map(|(idx, c)| (*idx, -c)).collect()
        };
        out.set_entry(key.clone(), scaled);
    }
    out
}

/// dst += c * src, componentwise.
pub(crate) fn add_scaled(dst: &mut [Rational], src: &[Rational], c: &Rational) {
    if c.is_zero() {
        return;
    }
    for (d, s) in dst.iter_mut().zip(src) {
        *d += &(s * c);
    }
}

pub(crate) fn vec_is_zero(v: &[Rational]) -> bool {
    v.iter().all(|c| c.is_zero())
}

/// (-1)^k as a rational scalar.
pub(crate) fn sign(k: i64) -> Rational {
    Rational::from_int(if k.rem_euclid(2) == 0 { 1 } else { -1 })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn eval_and_apply() {
        // cup product of H*(S^3): basis e (0), f (3)
        let s = GradedSpace::from_basis([(0, "e".into()), (3, "f".into())]);
        let mut mu2 = MultiOp::new(2, 0);
        mu2.set_entry(vec![0, 0], vec![(0, r(1))]);
        mu2.set_entry(vec![0, 1], vec![(1, r(1))]);
        mu2.set_entry(vec![1, 0], vec![(1, r(1))]);
        mu2.validate(&[&s, &s], &s).unwrap();

        let e = s.basis_vector(0);
        let f = s.basis_vector(1);
        assert_eq!(mu2.apply(&[&e, &f], 2), f);
        assert_eq!(mu2.apply(&[&f, &f], 2), s.zero_vector());
    }

    #[test]
    fn degree_validation_rejects() {
        let s = GradedSpace::from_basis([(0, "e".into()), (3, "f".into())]);
        let mut bad = MultiOp::new(1, 0);
        bad.set_entry(vec![0], vec![(1, r(1))]); // deg 0 -> deg 3 under shift 0
        assert!(bad.validate(&[&s], &s).is_err());
    }

    #[test]
    fn entry_cancellation() {
        let mut op = MultiOp::new(1, 0);
        op.add_to_entry(&[0], 0, r(1));
        op.add_to_entry(&[0], 0, r(-1));
        assert!(op.is_zero());
    }

    #[test]
    fn seidel_convention_involution_and_sign() {
        let s = GradedSpace::from_basis([(0, "e".into()), (3, "f".into())]);
        let mut mu1 = MultiOp::new(1, 1);
        // artificial arity-1 example on a shifted copy: use odd-degree input
        let t = GradedSpace::from_basis([(1, "x".into()), (2, "y".into())]);
        mu1.set_entry(vec![0], vec![(1, r(1))]);
        let bar = to_seidel_convention(&mu1, &[&t]);
        // |a_1| = 1 is odd: sign flips
        assert_eq!(bar.eval_basis(&[0]), &[(1, r(-1))]);
        assert_eq!(to_seidel_convention(&bar, &[&t]), mu1);

        // arity-2: entry on (f, e): exponent |e| + 2|f| = 0 + 6, even
        let mut mu2 = MultiOp::new(2, 0);
        mu2.set_entry(vec![1, 0], vec![(1, r(1))]);
        let bar = to_seidel_convention(&mu2, &[&s, &s]);
        assert_eq!(bar, mu2);
    }
}
