use std::collections::BTreeMap;

use crate::exactalg::Rational;

/// A finitely supported graded vector space: a flat basis, each element
/// carrying an integer degree and a label. Elements are stored sorted by
/// degree, so flat indices are stable and degree blocks are contiguous.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedSpace {
    elements: Vec<(i64, String)>,
}

impl GradedSpace {
    pub fn empty() -> Self {
        GradedSpace { elements: vec![] }
    }

    /// Space with the given labelled basis; re-sorted by degree (stable).
    pub fn from_basis(elements: impl IntoIterator<Item = (i64, String)>) -> Self {
        let mut elements: Vec<(i64, String)> = elements.into_iter().collect();
        elements.sort_by_key(|(deg, _)| *deg);
        GradedSpace { elements }
    }

    /// Space with `dims[deg]` anonymous generators per degree, labelled
    /// "d{deg}_{k}".
    pub fn from_dims(dims: &BTreeMap<i64, usize>) -> Self {
        GradedSpace::from_basis(
            dims.iter()
                .flat_map(|(&deg, &dim)| (0..dim).map(move |k| (deg, format!("d{}_{}", deg, k)))),
        )
    }

    /// One-dimensional degree-0 space: the scalar target of functionals.
    pub fn scalar_line() -> Self {
        GradedSpace::from_basis([(0, "1".to_string())])
    }

    pub fn dim(&self) -> usize {
        self.elements.len()
    }

    pub fn degree(&self, index: usize) -> i64 {
        self.elements[index].0
    }

    pub fn label(&self, index: usize) -> &str {
        &self.elements[index].1
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.elements.iter().position(|(_, l)| l == label)
    }

    pub fn indices_in_degree(&self, deg: i64) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.degree(i) == deg).collect()
    }

    pub fn dims(&self) -> BTreeMap<i64, usize> {
        let mut out = BTreeMap::new();
        for (deg, _) in &self.elements {
            *out.entry(*deg).or_insert(0) += 1;
        }
        out
    }

    /// Distinct degrees in ascending order.
    pub fn degrees(&self) -> Vec<i64> {
        self.dims().keys().copied().collect()
    }

    pub fn zero_vector(&self) -> Vec<Rational> {
        vec![Rational::zero(); self.dim()]
    }

    pub fn basis_vector(&self, index: usize) -> Vec<Rational> {
        let mut v = self.zero_vector();
        v[index] = Rational::one();
        v
    }

    /// The common degree of all nonzero components, if the vector is pure;
    /// None for the zero vector or a mixed-degree vector.
    pub fn pure_degree(&self, v: &[Rational]) -> Option<i64> {
        let mut deg = None;
        for (i, c) in v.iter().enumerate() {
            if !c.is_zero() {
                match deg {
                    None => deg = Some(self.degree(i)),
                    Some(d) if d != self.degree(i) => return None,
                    _ => {}
                }
            }
        }
        deg
    }

    /// Human-readable rendering "c1*label1 + c2*label2" of a coordinate
    /// vector; "0" when zero.
    pub fn describe(&self, v: &[Rational]) -> String {
        let parts: Vec<String> = v
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("{}*{}", c, self.label(i)))
            .collect();
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sorted_by_degree() {
        let s = GradedSpace::from_basis([(3, "f".into()), (0, "e".into())]);
        assert_eq!(s.degree(0), 0);
        assert_eq!(s.label(0), "e");
        assert_eq!(s.degree(1), 3);
        assert_eq!(s.indices_in_degree(3), vec![1]);
        assert_eq!(s.index_of("f"), Some(1));
    }

    #[test]
    fn from_dims_labels() {
        let dims = BTreeMap::from([(-1, 1), (0, 2)]);
        let s = GradedSpace::from_dims(&dims);
        assert_eq!(s.dim(), 3);
        assert_eq!(s.label(0), "d-1_0");
        assert_eq!(s.label(2), "d0_1");
        assert_eq!(s.dims(), dims);
    }

    #[test]
    fn pure_degree_detection() {
        let s = GradedSpace::from_basis([(0, "e".into()), (3, "f".into())]);
        assert_eq!(s.pure_degree(&s.basis_vector(0)), Some(0));
        assert_eq!(s.pure_degree(&s.zero_vector()), None);
        let mixed = vec![Rational::one(), Rational::one()];
        assert_eq!(s.pure_degree(&mixed), None);
    }
}
