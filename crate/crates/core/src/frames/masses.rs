use crate::scalar::Scalar;

/// `ab/(a+b)`.
pub fn reduced_mass<T: Scalar>(a: &T, b: &T) -> T {
    a.clone() * b.clone() / (a.clone() + b.clone())
}

/// Masses derived from the three-body problem `(M₁, M₂, m)`; never stored
/// independently of the bare masses.
#[derive(Clone, Debug, PartialEq)]
pub struct DerivedMasses<T> {
    pub m1: T,
    pub m2: T,
    pub m: T,
    /// `M_T = m + M₁ + M₂`
    pub total: T,
    /// `μ = mM₁/(m+M₁)`
    pub mu: T,
    /// `μ₂ = M₂M₁/(M₂+M₁)`
    pub mu2: T,
    /// `μ' = mM₂/(m+M₂)`
    pub mu_prime: T,
    /// `μ₂' = M₁(m+M₂)/(M₁+m+M₂)`
    pub mu2_prime: T,
    /// `γ = M₁M₂m/(M_T μ₂ μ)`
    pub gamma: T,
}

impl<T: Scalar> DerivedMasses<T> {
    pub fn three_body(m1: T, m2: T, m: T) -> Self {
        let total = m.clone() + m1.clone() + m2.clone();
        let mu = reduced_mass(&m, &m1);
        let mu2 = reduced_mass(&m2, &m1);
        let mu_prime = reduced_mass(&m, &m2);
        let mu2_prime = reduced_mass(&m1, &(m.clone() + m2.clone()));
        let gamma = m1.clone() * m2.clone() * m.clone() / (total.clone() * mu2.clone() * mu.clone());
        Self {
            m1,
            m2,
            m,
            total,
            mu,
            mu2,
            mu_prime,
            mu2_prime,
            gamma,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    #[test]
    fn equal_masses() {
        let d = DerivedMasses::three_body(ratio(1, 1), ratio(1, 1), ratio(1, 1));
        assert_eq!(d.total, ratio(3, 1));
        assert_eq!(d.mu, ratio(1, 2));
        assert_eq!(d.mu2, ratio(1, 2));
        assert_eq!(d.mu_prime, ratio(1, 2));
        assert_eq!(d.mu2_prime, ratio(2, 3));
        // 1 / (3 * 1/2 * 1/2)
        assert_eq!(d.gamma, ratio(4, 3));
    }

    #[test]
    fn reduced_mass_identity() {
        let (a, b) = (ratio(7, 3), ratio(5, 2));
        let mu = reduced_mass(&a, &b);
        assert_eq!(ratio(1, 1) / mu, ratio(1, 1) / a + ratio(1, 1) / b);
    }
}
