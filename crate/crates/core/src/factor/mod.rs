//! Reflection-factorization counting: character-sum formulas, brute-force
//! oracles, exponential-generating-function assembly, cancellation
//! identities, and Φ-polynomial extraction.

mod egf;
mod frobenius;
mod oracle;
mod phi;
mod transitive;

pub use egf::{egf_form, product_group_egf, EgfForm, ExpSum};
pub use frobenius::{frobenius_count, frobenius_multiset_count};
pub use oracle::{brute_force_count, brute_force_counts_upto, brute_force_weighted, brute_force_weighted_upto};
pub use phi::{cancellation_check, chapuy_stump_verify, phi_extract, BucketVerdict, CancellationReport, ChapuyStumpReport, PhiPoly, PhiResult};
pub use transitive::{transitive_egf_sn, transitive_oracle_counts, TransitiveReport};

use num_bigint::BigInt;
use num_traits::One;

/// Binomial coefficient as a big integer.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let mut acc = BigInt::one();
    for i in 0..k.min(n - k) {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Multinomial coefficient (Σ parts)! / Π parts!.
pub fn multinomial(parts: &[u64]) -> BigInt {
    let mut acc = BigInt::one();
    let mut seen = 0u64;
    for &p in parts {
        seen += p;
        acc *= binomial(seen, p);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_and_multinomial() {
        assert_eq!(binomial(4, 2), BigInt::from(6));
        assert_eq!(binomial(10, 0), BigInt::from(1));
        assert_eq!(binomial(3, 5), BigInt::from(0));
        assert_eq!(multinomial(&[2, 1, 1]), BigInt::from(12));
        assert_eq!(multinomial(&[3]), BigInt::from(1));
    }
}
