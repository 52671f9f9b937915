use num::bigint::BigInt;
use num::integer::Integer;
use num::{One, Signed};
use thiserror::Error;

use super::{Rational, RationalMatrix};

#[derive(Debug, Error)]
pub enum EigenError {
    /// The endomorphism is not rationally split: its characteristic
    /// polynomial has an irreducible factor of degree > 1 over Q.
    #[error("characteristic polynomial has an irreducible factor of degree > 1 over Q")]
    Splitting,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
}

/// One generalized eigenspace: eigenvalue, algebraic multiplicity, and a
/// basis of ker((A - lambda*I)^multiplicity).
#[derive(Debug, Clone)]
pub struct EigenBlock {
    pub eigenvalue: Rational,
    pub multiplicity: usize,
    pub basis: Vec<Vec<Rational>>,
}

/// Blocks ordered by eigenvalue; multiplicities sum to the matrix size.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub blocks: Vec<EigenBlock>,
}

impl EigenDecomposition {
    pub fn size(&self) -> usize {
        self.blocks.iter().map(|b| b.multiplicity).sum()
    }
}

/// Characteristic polynomial det(xI - A), coefficients in ascending degree
/// order (monic, length size+1). Computed exactly by evaluating the
/// determinant at size+1 integer points and Lagrange interpolation.
pub fn char_poly(m: &RationalMatrix) -> Vec<Rational> {
    assert!(m.is_square());
    let n = m.rows();
    if n == 0 {
        return vec![Rational::one()];
    }
    let points: Vec<Rational> = (0..=n as i64).map(Rational::from_int).collect();
    let values: Vec<Rational> = points
        .iter()
        .map(|x| {
            let shifted = RationalMatrix::from_fn(n, n, |i, j| {
                if i == j {
                    x - m.get(i, j)
                } else {
                    -m.get(i, j)
                }
            });
            shifted.determinant()
        })
        .collect();
    lagrange_interpolate(&points, &values)
}

fn lagrange_interpolate(points: &[Rational], values: &[Rational]) -> Vec<Rational> {
    let n = points.len();
    let mut result = vec![Rational::zero(); n];
    for i in 0..n {
        // numerator polynomial prod_{j != i} (x - x_j), and scalar denominator
        let mut num = vec![Rational::one()];
        let mut den = Rational::one();
        for j in 0..n {
            if j == i {
                continue;
            }
            num = poly_mul_linear(&num, &-&points[j]);
            den = den * (&points[i] - &points[j]);
        }
        let scale = &values[i] / &den;
        for (k, c) in num.iter().enumerate() {
            result[k] = &result[k] + &(c * &scale);
        }
    }
    result
}

/// Multiply polynomial by (x + c), ascending coefficients.
fn poly_mul_linear(p: &[Rational], c: &Rational) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); p.len() + 1];
    for (i, a) in p.iter().enumerate() {
        out[i] = &out[i] + &(a * c);
        out[i + 1] = &out[i + 1] + a;
    }
    out
}

fn poly_eval(p: &[Rational], x: &Rational) -> Rational {
    let mut acc = Rational::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// Divide p by (x - r); p must have r as a root. Ascending coefficients.
fn poly_deflate(p: &[Rational], r: &Rational) -> Vec<Rational> {
    let deg = p.len() - 1;
    let mut q = vec![Rational::zero(); deg];
    let mut carry = Rational::zero();
    for k in (0..deg).rev() {
        carry = &p[k + 1] + &(&carry * r);
        q[k] = carry.clone();
    }
    debug_assert!((&p[0] + &(&carry * r)).is_zero(), "not a root");
    q
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = BigInt::one();
    while &i * &i <= n {
        if n.is_multiple_of(&i) {
            small.push(i.clone());
            let d = &n / &i;
            if d != i {
                large.push(d);
            }
        }
        i += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// All rational roots of p with multiplicity, by the rational-root theorem
/// on the integer-cleared polynomial plus repeated deflation. Errors if the
/// polynomial does not split into rational linear factors.
fn rational_roots(poly: &[Rational]) -> Result<Vec<(Rational, usize)>, EigenError> {
    let mut p: Vec<Rational> = poly.to_vec();
    let mut roots: Vec<(Rational, usize)> = Vec::new();
    let push = |r: Rational, roots: &mut Vec<(Rational, usize)>| {
        if let Some(entry) = roots.iter_mut().find(|(x, _)| *x == r) {
            entry.1 += 1;
        } else {
            roots.push((r, 1));
        }
    };
    while p.len() > 1 {
        // zero roots first
        if p[0].is_zero() {
            push(Rational::zero(), &mut roots);
            p.remove(0);
            continue;
        }
        // clear denominators to an integer polynomial
        let lcm = p.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let int_coeffs: Vec<BigInt> = p.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
        let lead = int_coeffs.last().unwrap();
        let trail = &int_coeffs[0];
        let mut found = None;
        'search: for pn in divisors(trail) {
            for qd in divisors(lead) {
                for sign in [1i64, -1] {
                    let cand = Rational::from_big(&pn * BigInt::from(sign), qd.clone());
                    if poly_eval(&p, &cand).is_zero() {
                        found = Some(cand);
                        break 'search;
                    }
                }
            }
        }
        match found {
            Some(r) => {
                p = poly_deflate(&p, &r);
                push(r, &mut roots);
            }
            None => return Err(EigenError::Splitting),
        }
    }
    roots.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(roots)
}

/// Decompose a rationally split square matrix into generalized eigenspaces.
/// For each eigenvalue lambda, the basis spans ker((A - lambda*I)^mult).
pub fn generalized_eigenspaces(m: &RationalMatrix) -> Result<EigenDecomposition, EigenError> {
    if !m.is_square() {
        return Err(EigenError::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    if n == 0 {
        return Ok(EigenDecomposition { blocks: vec![] });
    }
    let poly = char_poly(m);
    let roots = rational_roots(&poly)?;
    debug_assert_eq!(roots.iter().map(|(_, k)| k).sum::<usize>(), n);
    let blocks = roots
        .into_iter()
        .map(|(eigenvalue, multiplicity)| {
            let shifted = m - &RationalMatrix::identity(n).scale(&eigenvalue);
            let basis = shifted.pow(multiplicity).kernel_basis();
            debug_assert_eq!(basis.len(), multiplicity);
            EigenBlock {
                eigenvalue,
                multiplicity,
                basis,
            }
        })
        .collect();
    Ok(EigenDecomposition { blocks })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn identity_single_block() {
        let d = generalized_eigenspaces(&RationalMatrix::identity(2)).unwrap();
        assert_eq!(d.blocks.len(), 1);
        assert_eq!(d.blocks[0].eigenvalue, Rational::one());
        assert_eq!(d.blocks[0].multiplicity, 2);
    }

    #[test]
    fn jordan_block_third() {
        // [[1/3, 1], [0, 1/3]]: one block, lambda = 1/3, mult 2, spans Q^2
        let m = RationalMatrix::from_rows(vec![vec![r(1, 3), r(1, 1)], vec![r(0, 1), r(1, 3)]]);
        let d = generalized_eigenspaces(&m).unwrap();
        assert_eq!(d.blocks.len(), 1);
        assert_eq!(d.blocks[0].eigenvalue, r(1, 3));
        assert_eq!(d.blocks[0].multiplicity, 2);
        let basis = RationalMatrix::from_columns(2, &d.blocks[0].basis);
        assert_eq!(basis.rank(), 2);
        // (A - lambda I)^2 annihilates the block
        let shifted = &m - &RationalMatrix::identity(2).scale(&r(1, 3));
        assert!(shifted.pow(2).is_zero());
    }

    #[test]
    fn rotation_fails_to_split() {
        // x^2 + 1 is irreducible over Q
        let m = RationalMatrix::from_rows(vec![vec![r(0, 1), r(-1, 1)], vec![r(1, 1), r(0, 1)]]);
        assert!(matches!(
            generalized_eigenspaces(&m),
            Err(EigenError::Splitting)
        ));
    }

    #[test]
    fn char_poly_companion() {
        // companion matrix of x^2 - x - 1
        let m = RationalMatrix::from_rows(vec![vec![r(0, 1), r(1, 1)], vec![r(1, 1), r(1, 1)]]);
        let p = char_poly(&m);
        assert_eq!(p, vec![r(-1, 1), r(-1, 1), r(1, 1)]);
    }

    #[test]
    fn non_square_rejected() {
        let m = RationalMatrix::zeros(2, 3);
        assert!(matches!(
            generalized_eigenspaces(&m),
            Err(EigenError::NotSquare { .. })
        ));
    }
}
