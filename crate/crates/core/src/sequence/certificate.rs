//! Analytic Cauchy certificates for structured sequences.
//!
//! A certificate promises that for every accuracy `ell` and all indices
//! `j, k > witness(ell)`, every pair of terms of the `j`th and `k`th
//! elements differs by at most `2^-ell` in both components, so the pair
//! probability is exactly 1. It also records a bound `2^magnitude` on the
//! absolute value of every component of every term.

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CauchyCertificate {
    Constant {
        magnitude: i64,
    },
    FrozenPrefix {
        magnitude: i64,
    },
    /// Sums, differences and componentwise distances of two certified
    /// sequences.
    Sum(Box<CauchyCertificate>, Box<CauchyCertificate>),
    Product(Box<CauchyCertificate>, Box<CauchyCertificate>),
}

impl CauchyCertificate {
    pub fn sum(a: CauchyCertificate, b: CauchyCertificate) -> Self {
        CauchyCertificate::Sum(Box::new(a), Box::new(b))
    }

    pub fn product(a: CauchyCertificate, b: CauchyCertificate) -> Self {
        CauchyCertificate::Product(Box::new(a), Box::new(b))
    }

    pub fn witness(&self, ell: u32) -> usize {
        match self {
            CauchyCertificate::Constant { .. } => 1,
            CauchyCertificate::FrozenPrefix { .. } => ell as usize,
            CauchyCertificate::Sum(a, b) => a.witness(ell + 1).max(b.witness(ell + 1)),
            CauchyCertificate::Product(a, b) => {
                // |xy - x'y'| <= |x||y - y'| + |y'||x - x'| per real product,
                // and each complex component adds two such products
                let lu = a.magnitude().max(b.magnitude()).max(0) as u32;
                let inner = ell + 2 + lu;
                a.witness(inner).max(b.witness(inner))
            }
        }
    }

    pub fn magnitude(&self) -> i64 {
        match self {
            CauchyCertificate::Constant { magnitude } | CauchyCertificate::FrozenPrefix { magnitude } => *magnitude,
            CauchyCertificate::Sum(a, b) => a.magnitude().max(b.magnitude()) + 1,
            CauchyCertificate::Product(a, b) => a.magnitude() + b.magnitude() + 1,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn witness_arithmetic() {
        let fp = CauchyCertificate::FrozenPrefix { magnitude: 1 };
        let two = CauchyCertificate::Constant { magnitude: 1 };
        assert_eq!(fp.witness(5), 5);
        assert_eq!(CauchyCertificate::sum(fp.clone(), two.clone()).witness(5), 6);
        let p = CauchyCertificate::product(fp, two);
        assert_eq!(p.witness(5), 8);
        assert_eq!(p.magnitude(), 3);
    }
}
