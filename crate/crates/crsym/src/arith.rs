//! Exact scalars and multi-index combinatorics.
//!
//! Everything downstream (polynomials, the tangency operator, kernel
//! elimination) is built on top of three kinds of values:
//!
//! * [`Rat`] — arbitrary-precision rationals, always in lowest terms with a
//!   positive denominator, so equality is structural and values can serve as
//!   map keys.
//! * [`GaussRat`] — Gaussian rationals `re + im*i`, the coefficient field for
//!   all polynomials.
//! * [`MultiIndex`] — exponent vectors of a fixed length.
//!
//! No floating point appears here; all arithmetic is exact.

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::str::FromStr;

/// Exact rational scalar. `BigRational` keeps lowest terms and a positive
/// denominator by construction.
pub type Rat = BigRational;

/// Gaussian rational `re + im*i`.
pub type GaussRat = Complex<Rat>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArithError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid rational literal `{0}`")]
    BadRational(String),
}

/// `p/q` as an exact rational. Panics if `q == 0`.
pub fn rat(p: i64, q: i64) -> Rat {
    assert!(q != 0, "zero denominator");
    Rat::new(BigInt::from(p), BigInt::from(q))
}

pub fn rat_int(p: i64) -> Rat {
    Rat::from_integer(BigInt::from(p))
}

pub fn gauss(re: Rat, im: Rat) -> GaussRat {
    Complex::new(re, im)
}

pub fn gauss_int(re: i64, im: i64) -> GaussRat {
    Complex::new(rat_int(re), rat_int(im))
}

/// The imaginary unit.
pub fn gauss_i() -> GaussRat {
    gauss_int(0, 1)
}

/// Exact inverse; `DivisionByZero` for the zero element.
pub fn gauss_inv(a: &GaussRat) -> Result<GaussRat, ArithError> {
    if a.is_zero() {
        return Err(ArithError::DivisionByZero);
    }
    let n = a.norm_sqr();
    Ok(gauss(a.re.clone() / n.clone(), -a.im.clone() / n))
}

/// Parses `p/q` or `p` (arbitrary precision, optional sign).
pub fn parse_rat(s: &str) -> Result<Rat, ArithError> {
    Rat::from_str(s.trim()).map_err(|_| ArithError::BadRational(s.to_string()))
}

/// Canonical text form: `p/q`, or `p` when the denominator is one.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Canonical text form for a Gaussian rational, e.g. `1/2`, `i`, `-2i`,
/// `1/2 + 3i`, `1/2 - 3i`.
pub fn format_gauss(c: &GaussRat) -> String {
    let im_part = |im: &Rat| -> String {
        if im.is_one() {
            "i".to_string()
        } else if (-im.clone()).is_one() {
            "-i".to_string()
        } else {
            format!("{}i", format_rat(im))
        }
    };
    if c.im.is_zero() {
        format_rat(&c.re)
    } else if c.re.is_zero() {
        im_part(&c.im)
    } else if c.im.is_negative() {
        let pos = -c.im.clone();
        let im_txt = if pos.is_one() {
            "i".to_string()
        } else {
            format!("{}i", format_rat(&pos))
        };
        format!("{} - {}", format_rat(&c.re), im_txt)
    } else {
        format!("{} + {}", format_rat(&c.re), im_part(&c.im))
    }
}

/// Exponent vector of fixed length. Ordering is lexicographic, which together
/// with the total degree gives the graded-lex term order used by the
/// polynomial types.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(exponents: Vec<u32>) -> Self {
        MultiIndex(exponents)
    }

    pub fn zeros(n: usize) -> Self {
        MultiIndex(vec![0; n])
    }

    /// `e_j` (zero-based `j`).
    pub fn unit(n: usize, j: usize) -> Self {
        let mut v = vec![0; n];
        v[j] = 1;
        MultiIndex(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, j: usize) -> u32 {
        self.0[j]
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Sum of the entries (the unweighted total degree).
    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn add(&self, other: &MultiIndex) -> Result<MultiIndex, ArithError> {
        if self.len() != other.len() {
            return Err(ArithError::DimensionMismatch {
                expected: self.len(),
                got: other.len(),
            });
        }
        Ok(MultiIndex(
            self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect(),
        ))
    }

    /// Componentwise difference, defined only when every entry stays
    /// nonnegative.
    pub fn checked_sub(&self, other: &MultiIndex) -> Option<MultiIndex> {
        if self.len() != other.len() {
            return None;
        }
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<u32>>>()
            .map(MultiIndex)
    }

    /// Increments entry `j` by one.
    pub fn bump(&self, j: usize) -> MultiIndex {
        let mut v = self.0.clone();
        v[j] += 1;
        MultiIndex(v)
    }

    /// Drops entry `l` (zero-based), shortening the index by one.
    pub fn drop_var(&self, l: usize) -> MultiIndex {
        let mut v = self.0.clone();
        v.remove(l);
        MultiIndex(v)
    }
}

/// Weighted length `sum_j alpha_j mu_j`.
pub fn weighted_length(alpha: &MultiIndex, mu: &[Rat]) -> Result<Rat, ArithError> {
    if alpha.len() != mu.len() {
        return Err(ArithError::DimensionMismatch {
            expected: mu.len(),
            got: alpha.len(),
        });
    }
    let mut acc = Rat::zero();
    for (a, m) in alpha.exponents().iter().zip(mu) {
        acc += m * Rat::from_integer(BigInt::from(*a));
    }
    Ok(acc)
}

/// Weighted length of a pair, `sum_j (alpha_j + beta_j) mu_j`.
pub fn pair_weighted_length(
    alpha: &MultiIndex,
    beta: &MultiIndex,
    mu: &[Rat],
) -> Result<Rat, ArithError> {
    Ok(weighted_length(alpha, mu)? + weighted_length(beta, mu)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn weighted_length_examples() {
        let mu = vec![rat(1, 2), rat(1, 2)];
        assert_eq!(
            weighted_length(&MultiIndex::zeros(2), &mu).unwrap(),
            rat_int(0)
        );
        assert_eq!(
            weighted_length(&MultiIndex::new(vec![1, 1]), &mu).unwrap(),
            rat_int(1)
        );
        let mu2 = vec![rat(1, 2), rat(1, 4)];
        assert_eq!(
            weighted_length(&MultiIndex::new(vec![1, 2]), &mu2).unwrap(),
            rat_int(1)
        );
        assert!(matches!(
            weighted_length(&MultiIndex::zeros(3), &mu),
            Err(ArithError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn pair_weighted_length_examples() {
        let one = MultiIndex::new(vec![1]);
        assert_eq!(
            pair_weighted_length(&one, &one, &[rat(1, 2)]).unwrap(),
            rat_int(1)
        );
        assert_eq!(
            pair_weighted_length(
                &MultiIndex::new(vec![2, 0]),
                &MultiIndex::new(vec![0, 2]),
                &[rat(1, 4), rat(1, 4)]
            )
            .unwrap(),
            rat_int(1)
        );
        let z = MultiIndex::zeros(1);
        assert_eq!(
            pair_weighted_length(&z, &z, &[rat(1, 2)]).unwrap(),
            rat_int(0)
        );
    }

    #[test]
    fn gauss_examples() {
        let a = gauss_int(1, 2);
        assert_eq!(a.conj(), gauss_int(1, -2));
        assert_eq!(gauss_i() * gauss_i(), gauss_int(-1, 0));
        assert_eq!(
            gauss_inv(&gauss_int(2, 0)).unwrap(),
            gauss(rat(1, 2), rat_int(0))
        );
        assert_eq!(gauss_inv(&gauss_int(0, 0)), Err(ArithError::DivisionByZero));
        // i^{-1} = -i
        assert_eq!(gauss_inv(&gauss_i()).unwrap(), gauss_int(0, -1));
    }

    #[test]
    fn format_and_parse() {
        assert_eq!(format_rat(&rat(3, 6)), "1/2");
        assert_eq!(format_rat(&rat_int(-4)), "-4");
        assert_eq!(parse_rat("-7/3").unwrap(), rat(-7, 3));
        assert_eq!(parse_rat("5").unwrap(), rat_int(5));
        assert!(parse_rat("1/0").is_err());
        assert_eq!(format_gauss(&gauss_int(0, -1)), "-i");
        assert_eq!(format_gauss(&gauss(rat(1, 2), rat(-3, 4))), "1/2 - 3/4i");
    }

    fn arb_rat() -> impl Strategy<Value = Rat> {
        (-40i64..40, 1i64..12).prop_map(|(p, q)| rat(p, q))
    }

    fn arb_gauss() -> impl Strategy<Value = GaussRat> {
        (arb_rat(), arb_rat()).prop_map(|(re, im)| gauss(re, im))
    }

    proptest! {
        #[test]
        fn rat_field_axioms(a in arb_rat(), b in arb_rat(), c in arb_rat()) {
            prop_assert_eq!((a.clone() + b.clone()) + c.clone(), a.clone() + (b.clone() + c.clone()));
            prop_assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
            prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b + a * c);
        }

        #[test]
        fn rat_string_round_trip(a in arb_rat()) {
            prop_assert_eq!(parse_rat(&format_rat(&a)).unwrap(), a);
        }

        #[test]
        fn conj_is_involution(a in arb_gauss(), b in arb_gauss()) {
            prop_assert_eq!(a.conj().conj(), a.clone());
            prop_assert_eq!((a.clone() * b.clone()).conj(), a.conj() * b.conj());
            // |a|^2 = a * conj(a) is real and equals |conj(a)|^2
            let n = a.clone() * a.conj();
            prop_assert!(n.im.is_zero());
            prop_assert_eq!(n, a.conj() * a.conj().conj());
        }

        #[test]
        fn weighted_length_additive(xs in proptest::collection::vec(0u32..6, 3),
                                    ys in proptest::collection::vec(0u32..6, 3)) {
            let mu = vec![rat(1,2), rat(1,3), rat(1,4)];
            let a = MultiIndex::new(xs);
            let b = MultiIndex::new(ys);
            let sum = a.add(&b).unwrap();
            prop_assert_eq!(
                weighted_length(&sum, &mu).unwrap(),
                weighted_length(&a, &mu).unwrap() + weighted_length(&b, &mu).unwrap()
            );
        }
    }
}
