use std::cmp::Ordering;

/// Dense exponent vector over the variables of a [`VarSet`](super::VarSet).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize, e: u32) -> Self {
        let mut v = vec![0; nvars];
        v[i] = e;
        Monomial(v)
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Total degree restricted to the listed positions.
    pub fn degree_in(&self, idx: &[usize]) -> u32 {
        idx.iter().map(|&i| self.0[i]).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    /// True when no variable occurs in both.
    pub fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Keeps only the listed positions; other exponents become zero.
    pub fn restrict(&self, idx: &[usize]) -> Monomial {
        let mut v = vec![0; self.0.len()];
        for &i in idx {
            v[i] = self.0[i];
        }
        Monomial(v)
    }

    pub fn resize(&self, nvars: usize) -> Monomial {
        let mut v = self.0.clone();
        v.resize(nvars, 0);
        Monomial(v)
    }
}

/// Monomial orders over subsets of the variable positions.
///
/// Positions not listed in an order are ignored by it, so a block order can
/// treat the parameters as part of the coefficient ring by putting them in
/// the low block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MonomialOrder {
    /// Graded reverse lexicographic, earlier positions are larger.
    Grevlex(Vec<usize>),
    /// Lexicographic, earlier positions are larger.
    Lex(Vec<usize>),
    /// Compare by `high` first, break ties with `low`.
    Block {
        high: Box<MonomialOrder>,
        low: Box<MonomialOrder>,
    },
}

impl MonomialOrder {
    pub fn grevlex_all(nvars: usize) -> Self {
        MonomialOrder::Grevlex((0..nvars).collect())
    }

    /// Elimination order: grevlex on `high`, ties broken by grevlex on `low`.
    pub fn block(high: Vec<usize>, low: Vec<usize>) -> Self {
        MonomialOrder::Block {
            high: Box::new(MonomialOrder::Grevlex(high)),
            low: Box::new(MonomialOrder::Grevlex(low)),
        }
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Grevlex(idx) => {
                let da = a.degree_in(idx);
                let db = b.degree_in(idx);
                if da != db {
                    return da.cmp(&db);
                }
                for &i in idx.iter().rev() {
                    if a.0[i] != b.0[i] {
                        return b.0[i].cmp(&a.0[i]);
                    }
                }
                Ordering::Equal
            }
            MonomialOrder::Lex(idx) => {
                for &i in idx {
                    if a.0[i] != b.0[i] {
                        return a.0[i].cmp(&b.0[i]);
                    }
                }
                Ordering::Equal
            }
            MonomialOrder::Block { high, low } => high.cmp(a, b).then_with(|| low.cmp(a, b)),
        }
    }

    /// All positions the order looks at, high block first.
    pub fn positions(&self) -> Vec<usize> {
        match self {
            MonomialOrder::Grevlex(idx) | MonomialOrder::Lex(idx) => idx.clone(),
            MonomialOrder::Block { high, low } => {
                let mut v = high.positions();
                v.extend(low.positions());
                v
            }
        }
    }

    /// Positions of the highest block.
    pub fn high_positions(&self) -> Vec<usize> {
        match self {
            MonomialOrder::Block { high, .. } => high.positions(),
            _ => self.positions(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn orders() -> Vec<MonomialOrder> {
        vec![
            MonomialOrder::grevlex_all(3),
            MonomialOrder::Lex(vec![0, 1, 2]),
            MonomialOrder::Lex(vec![2, 0, 1]),
            MonomialOrder::block(vec![1, 2], vec![0]),
        ]
    }

    #[test]
    fn grevlex_small() {
        let o = MonomialOrder::grevlex_all(2);
        let m = |a, b| Monomial(vec![a, b]);
        assert_eq!(o.cmp(&m(1, 0), &m(0, 1)), Ordering::Greater);
        assert_eq!(o.cmp(&m(1, 1), &m(2, 0)), Ordering::Less);
        assert_eq!(o.cmp(&m(0, 3), &m(2, 0)), Ordering::Greater);
    }

    #[test]
    fn block_eliminates_high() {
        let o = MonomialOrder::block(vec![1], vec![0]);
        assert_eq!(
            o.cmp(&Monomial(vec![0, 1]), &Monomial(vec![5, 0])),
            Ordering::Greater
        );
    }

    proptest! {
        #[test]
        fn order_axioms(a in prop::collection::vec(0u32..4, 3),
                        b in prop::collection::vec(0u32..4, 3),
                        c in prop::collection::vec(0u32..4, 3)) {
            let (a, b, c) = (Monomial(a), Monomial(b), Monomial(c));
            for o in orders() {
                let ab = o.cmp(&a, &b);
                prop_assert_eq!(ab, o.cmp(&b, &a).reverse());
                prop_assert_eq!(ab == Ordering::Equal, a == b);
                prop_assert_eq!(o.cmp(&a.mul(&c), &b.mul(&c)), ab);
                prop_assert_ne!(o.cmp(&Monomial::one(3), &a), Ordering::Greater);
            }
        }
    }
}
