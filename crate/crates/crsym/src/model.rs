//! Model hypersurfaces `M_P = { Im w = P(z, zbar) }`.
//!
//! A [`Model`] bundles validated weights and a defining polynomial: `P` must
//! be weighted homogeneous of degree exactly one, free of pluriharmonic
//! terms, real-valued (enforced by [`RealPoly`]) and nonzero. Validation
//! reports every violation with the offending monomial rather than stopping
//! at the first.
//!
//! On top of the validated data the module provides the Levi form and an
//! exact pseudoconvexity verdict, a holomorphic-degeneracy search, the
//! balance and diagonal predicates, and access to the explicit symmetry
//! constructors.

use crate::arith::{
    format_rat, gauss, pair_weighted_length, rat, rat_int, weighted_length, GaussRat, MultiIndex,
    Rat,
};
use crate::fields::{self, Ansatz, NamedField, VField};
use crate::linalg;
use crate::ring::{HoloPoly, MixedPoly, RealPoly, RingError, WeightVector};
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use std::collections::BTreeSet;

/// One reason a `(mu, P)` pair fails to define a model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// Monomial of weighted degree != 1.
    NotHomogeneous {
        alpha: Vec<u32>,
        beta: Vec<u32>,
        degree: String,
    },
    /// Purely (anti)holomorphic monomial.
    Pluriharmonic {
        alpha: Vec<u32>,
        beta: Vec<u32>,
    },
    ZeroPolynomial,
    DimensionMismatch {
        expected: usize,
        got: usize,
    },
    /// Sum-of-squares factor of weighted degree != 1/2.
    SosWrongWeight {
        j: usize,
        weight: Option<String>,
    },
    SosZeroFactor {
        j: usize,
    },
    SosFactorInvolvesW {
        j: usize,
    },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::NotHomogeneous {
                alpha,
                beta,
                degree,
            } => write!(
                f,
                "monomial z^{:?} zb^{:?} has weighted degree {}, expected 1",
                alpha, beta, degree
            ),
            Violation::Pluriharmonic { alpha, beta } => {
                write!(f, "pluriharmonic monomial z^{:?} zb^{:?}", alpha, beta)
            }
            Violation::ZeroPolynomial => write!(f, "defining polynomial is zero"),
            Violation::DimensionMismatch { expected, got } => {
                write!(
                    f,
                    "dimension mismatch: weights have {expected} entries, P has {got}"
                )
            }
            Violation::SosWrongWeight { j, weight } => write!(
                f,
                "sum-of-squares factor Q_{} has weighted degree {}, expected 1/2",
                j,
                weight.as_deref().unwrap_or("mixed")
            ),
            Violation::SosZeroFactor { j } => write!(f, "sum-of-squares factor Q_{j} is zero"),
            Violation::SosFactorInvolvesW { j } => {
                write!(f, "sum-of-squares factor Q_{j} involves w")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModelError {
    #[error("invalid model: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// How the defining polynomial was produced. Sum-of-squares provenance keeps
/// the factors `Q_j`, which certifies pseudoconvexity structurally.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    Generic,
    SumOfSquares(Vec<HoloPoly>),
}

/// A validated model hypersurface `Im w = P(z, zbar)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Model {
    n: usize,
    mu: WeightVector,
    p: RealPoly,
    provenance: Provenance,
}

impl Model {
    /// Checks the model invariants and returns a validated model, or the full
    /// list of violations.
    pub fn validate(mu: WeightVector, p: RealPoly) -> Result<Model, ModelError> {
        let mut violations = Vec::new();
        if mu.n() != p.n() {
            return Err(ModelError::Invalid(vec![Violation::DimensionMismatch {
                expected: mu.n(),
                got: p.n(),
            }]));
        }
        if p.is_zero() {
            violations.push(Violation::ZeroPolynomial);
        }
        let one = rat_int(1);
        for (key, _) in p.terms() {
            let d = pair_weighted_length(&key.alpha, &key.beta, mu.mu()).expect("dimension");
            if d != one {
                violations.push(Violation::NotHomogeneous {
                    alpha: key.alpha.exponents().to_vec(),
                    beta: key.beta.exponents().to_vec(),
                    degree: format_rat(&d),
                });
            }
            if key.alpha.is_zero() || key.beta.is_zero() {
                violations.push(Violation::Pluriharmonic {
                    alpha: key.alpha.exponents().to_vec(),
                    beta: key.beta.exponents().to_vec(),
                });
            }
        }
        if violations.is_empty() {
            Ok(Model {
                n: mu.n(),
                mu,
                p,
                provenance: Provenance::Generic,
            })
        } else {
            Err(ModelError::Invalid(violations))
        }
    }

    /// Builds `P = sum_j Q_j conj(Q_j)` from holomorphic factors, each
    /// required to be `z`-only and weighted homogeneous of degree 1/2.
    pub fn build_sos(mu: WeightVector, q: Vec<HoloPoly>) -> Result<Model, ModelError> {
        let n = mu.n();
        let mut violations = Vec::new();
        for (idx, qj) in q.iter().enumerate() {
            let j = idx + 1;
            if qj.n() != n {
                return Err(ModelError::Invalid(vec![Violation::DimensionMismatch {
                    expected: n,
                    got: qj.n(),
                }]));
            }
            if qj.is_zero() {
                violations.push(Violation::SosZeroFactor { j });
                continue;
            }
            if !qj.is_w_free() {
                violations.push(Violation::SosFactorInvolvesW { j });
                continue;
            }
            match qj.homogeneous_weight(&mu) {
                Some(d) if d == rat(1, 2) => {}
                other => violations.push(Violation::SosWrongWeight {
                    j,
                    weight: other.map(|d| format_rat(&d)),
                }),
            }
        }
        if !violations.is_empty() {
            return Err(ModelError::Invalid(violations));
        }
        // P = sum_j Q_j conj(Q_j), assembled directly from term pairs.
        let mut raw = Vec::new();
        for qj in &q {
            for (ka, ca) in qj.terms() {
                for (kb, cb) in qj.terms() {
                    raw.push((ka.alpha.clone(), kb.alpha.clone(), ca.clone() * cb.conj()));
                }
            }
        }
        let p = RealPoly::from_terms(n, raw)?;
        let model = Model::validate(mu, p)?;
        Ok(Model {
            provenance: Provenance::SumOfSquares(q),
            ..model
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mu(&self) -> &WeightVector {
        &self.mu
    }

    pub fn p(&self) -> &RealPoly {
        &self.p
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn is_sos(&self) -> bool {
        matches!(self.provenance, Provenance::SumOfSquares(_))
    }

    /// Tangency residue of a candidate field on this model.
    pub fn tangency(&self, x: &VField) -> Result<MixedPoly, RingError> {
        fields::tangency(x, &self.p)
    }

    /// The explicit symmetry constructors instantiated for this model.
    pub fn known_fields(&self) -> Vec<NamedField> {
        fields::known_fields(&self.mu, &self.p)
    }

    /// Levi form `[d^2 P / dz_j dzb_k]` as a Hermitian matrix of (`u`-free)
    /// polynomials.
    pub fn levi_form(&self) -> Vec<Vec<MixedPoly>> {
        levi_form(&self.p)
    }

    /// Pseudoconvexity verdict. Sum-of-squares models are certified
    /// structurally (the Levi form is a Gram matrix); generic models are
    /// probed at the coordinate axis points `e_j` and `sample_budget` seeded
    /// rational points of height at most 16, with exact principal-minor
    /// tests. A `NotPsd` verdict is exact and final; `PsdSampled` is
    /// evidence only.
    pub fn pseudoconvexity(&self, sample_budget: usize, seed: u64) -> LeviVerdict {
        if self.is_sos() {
            return LeviVerdict {
                status: LeviStatus::PsdCertified,
                samples_checked: 0,
                tolerance: 0.0,
            };
        }
        let levi = self.levi_form();
        let mut checked = 0usize;
        let mut points: Vec<Vec<GaussRat>> = Vec::new();
        for j in 0..self.n {
            let mut p = vec![GaussRat::zero(); self.n];
            p[j] = gauss(rat_int(1), rat_int(0));
            points.push(p);
        }
        let mut rng = SplitMix64::new(seed);
        for _ in 0..sample_budget {
            points.push((0..self.n).map(|_| rng.next_gauss_rat(16)).collect());
        }
        for point in points {
            checked += 1;
            let m: Vec<Vec<GaussRat>> = levi
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|e| e.eval_gauss(&point, &Rat::zero()))
                        .collect()
                })
                .collect();
            if let Some((minor, value)) = first_negative_principal_minor(&m) {
                return LeviVerdict {
                    status: LeviStatus::NotPsd {
                        witness: point,
                        minor,
                        minor_value: value,
                    },
                    samples_checked: checked,
                    tolerance: 0.0,
                };
            }
        }
        LeviVerdict {
            status: LeviStatus::PsdSampled,
            samples_checked: checked,
            tolerance: 0.0,
        }
    }

    /// Searches for a nonzero holomorphic field of weighted degree at most
    /// `degree_cap` annihilating the defining function on `M_P` (the full
    /// complex condition, not just the real part). Uses the same exact
    /// kernel machinery as the symmetry solver.
    pub fn holomorphic_nondegeneracy(&self, degree_cap: &Rat) -> Nondegeneracy {
        for d in holo_candidate_degrees(&self.mu, degree_cap) {
            let ansatz = Ansatz::new(&self.mu, &d);
            if ansatz.is_empty() {
                continue;
            }
            let t = ansatz.unknown_count();
            // T(X) = 0 is C-linear; split c_t = a_t + i b_t into two real
            // unknowns and each residue coefficient into two real rows.
            let residues: Vec<MixedPoly> = (0..t)
                .map(|i| fields::holo_tangency(&ansatz.unit_field(i), &self.p).expect("dimensions"))
                .collect();
            let mut keys = BTreeSet::new();
            for r in &residues {
                for (k, _) in r.terms() {
                    keys.insert(k.clone());
                }
            }
            let mut rows = Vec::new();
            for key in &keys {
                let mut re_row = vec![Rat::zero(); 2 * t];
                let mut im_row = vec![Rat::zero(); 2 * t];
                for (i, r) in residues.iter().enumerate() {
                    let c = r.coeff(key);
                    // (a + ib)(x + iy): re = ax - by, im = ay + bx
                    re_row[2 * i] = c.re.clone();
                    re_row[2 * i + 1] = -c.im.clone();
                    im_row[2 * i] = c.im.clone();
                    im_row[2 * i + 1] = c.re.clone();
                }
                rows.push(re_row);
                rows.push(im_row);
            }
            let kernel = linalg::kernel_basis(&rows, 2 * t);
            if let Some(v) = kernel.first() {
                let witness = ansatz.field_from_real(&linalg::primitive_normalize(v));
                return Nondegeneracy::Degenerate { witness, degree: d };
            }
        }
        Nondegeneracy::Nondegenerate {
            degree_cap: degree_cap.clone(),
        }
    }

    /// Balance data: `kappa` counts weights equal to 1/2; the model is
    /// balanced when every monomial has holomorphic and antiholomorphic
    /// weighted length both equal to 1/2 (equivalently, the imaginary Euler
    /// field is a symmetry).
    pub fn balance_info(&self) -> BalanceInfo {
        let half = rat(1, 2);
        let balanced = self.p.terms().all(|(key, _)| {
            weighted_length(&key.alpha, self.mu.mu()).expect("dimension") == half
                && weighted_length(&key.beta, self.mu.mu()).expect("dimension") == half
        });
        BalanceInfo {
            balanced,
            kappa: self.mu.kappa(),
        }
    }

    /// Checks, in the given coordinates, that for each `j` some diagonal
    /// monomial `A[alpha,alpha] != 0` has `alpha_j != 0` and `alpha_l = 0`
    /// for all `l > j`.
    pub fn diagonal_condition(&self) -> DiagonalCondition {
        for j in 0..self.n {
            let found = self.p.terms().any(|(key, _)| {
                key.alpha == key.beta
                    && key.alpha.get(j) != 0
                    && (j + 1..self.n).all(|l| key.alpha.get(l) == 0)
            });
            if !found {
                return DiagonalCondition::FailsAt { j: j + 1 };
            }
        }
        DiagonalCondition::Holds
    }

    /// Diagonal monomial exponents `{alpha : A[alpha,alpha] != 0}`, used by
    /// the span property behind the rotation lemmas.
    pub fn diagonal_exponents(&self) -> Vec<MultiIndex> {
        self.p
            .terms()
            .filter(|(key, _)| key.alpha == key.beta)
            .map(|(key, _)| key.alpha.clone())
            .collect()
    }
}

/// Levi form of a defining polynomial (entries `d^2 P / dz_j dzb_k`).
pub fn levi_form(p: &RealPoly) -> Vec<Vec<MixedPoly>> {
    let n = p.n();
    (1..=n)
        .map(|j| {
            (1..=n)
                .map(|k| {
                    p.wirtinger(j, false)
                        .expect("in range")
                        .wirtinger(k, true)
                        .expect("in range")
                })
                .collect()
        })
        .collect()
}

/// First principal minor (ordered by size, then lexicographic row set) whose
/// exact value is negative, or `None` when all are nonnegative. Minors of
/// Hermitian matrices are real; the returned value is the real part.
fn first_negative_principal_minor(m: &[Vec<GaussRat>]) -> Option<(Vec<usize>, Rat)> {
    let n = m.len();
    let mut subsets: Vec<Vec<usize>> = Vec::new();
    for mask in 1u32..(1 << n) {
        subsets.push((0..n).filter(|j| mask & (1 << j) != 0).collect());
    }
    subsets.sort_by_key(|s| (s.len(), s.clone()));
    for s in subsets {
        let sub: Vec<Vec<GaussRat>> = s
            .iter()
            .map(|&r| s.iter().map(|&c| m[r][c].clone()).collect())
            .collect();
        let d = linalg::det_gauss(&sub);
        debug_assert!(
            d.im.is_zero(),
            "principal minor of a Hermitian matrix must be real"
        );
        if d.re.is_negative() {
            return Some((s, d.re));
        }
    }
    None
}

/// Candidate weighted degrees for a graded holomorphic field with coefficient
/// monomials of `(mu,1)`-weight at most `cap + 1`.
fn holo_candidate_degrees(mu: &WeightVector, cap: &Rat) -> Vec<Rat> {
    let bound = cap.clone() + rat_int(1);
    let m_max = bound.floor().to_integer().to_u32().unwrap_or(0);
    let mut z_weights = BTreeSet::new();
    let mut stack = vec![(0usize, Rat::zero())];
    while let Some((j, acc)) = stack.pop() {
        if j == mu.n() {
            z_weights.insert(acc);
            continue;
        }
        let max = ((bound.clone() - acc.clone()) / mu.get(j).clone()).floor();
        let max = max.to_integer().to_u32().unwrap_or(0);
        for e in 0..=max {
            stack.push((j + 1, acc.clone() + mu.get(j).clone() * rat_int(e as i64)));
        }
    }
    let mut weights: BTreeSet<Rat> = BTreeSet::new();
    for zw in &z_weights {
        for m in 0..=m_max {
            let t = zw.clone() + rat_int(m as i64);
            if t <= bound {
                weights.insert(t);
            }
        }
    }
    let mut degrees: BTreeSet<Rat> = BTreeSet::new();
    for t in &weights {
        for j in 0..mu.n() {
            let d = t.clone() - mu.get(j).clone();
            if d >= rat_int(-1) && d <= *cap {
                degrees.insert(d);
            }
        }
        let d = t.clone() - rat_int(1);
        if d >= rat_int(-1) && d <= *cap {
            degrees.insert(d);
        }
    }
    degrees.into_iter().collect()
}

/// Pseudoconvexity verdict for a model.
#[derive(Debug, Clone, PartialEq)]
pub struct LeviVerdict {
    pub status: LeviStatus,
    pub samples_checked: usize,
    /// Reserved for numeric eigenvalue checks; all verdicts here come from
    /// exact arithmetic, so this is always zero.
    pub tolerance: f64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LeviStatus {
    /// Gram-structured Levi form (sum-of-squares provenance).
    PsdCertified,
    /// No violation found at any sampled point; evidence, not a proof.
    PsdSampled,
    /// Exact witness: the listed principal minor is negative at the point.
    NotPsd {
        witness: Vec<GaussRat>,
        minor: Vec<usize>,
        minor_value: Rat,
    },
    /// Reserved for future exact certification of generic models.
    Unknown,
}

impl LeviVerdict {
    pub fn is_pseudoconvex_evidence(&self) -> bool {
        matches!(
            self.status,
            LeviStatus::PsdCertified | LeviStatus::PsdSampled
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Nondegeneracy {
    Nondegenerate { degree_cap: Rat },
    Degenerate { witness: VField, degree: Rat },
}

impl Nondegeneracy {
    pub fn is_nondegenerate(&self) -> bool {
        matches!(self, Nondegeneracy::Nondegenerate { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BalanceInfo {
    pub balanced: bool,
    /// Number of multitype weights equal to 1/2.
    pub kappa: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DiagonalCondition {
    Holds,
    FailsAt { j: usize },
}

/// Deterministic splitmix64 generator used for rational sampling.
pub struct SplitMix64(u64);

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Rational with numerator in `[-height, height]` and denominator in
    /// `[1, height]`.
    pub fn next_rat(&mut self, height: u64) -> Rat {
        let num = (self.next_u64() % (2 * height + 1)) as i64 - height as i64;
        let den = (self.next_u64() % height) as i64 + 1;
        Rat::new(BigInt::from(num), BigInt::from(den))
    }

    pub fn next_gauss_rat(&mut self, height: u64) -> GaussRat {
        gauss(self.next_rat(height), self.next_rat(height))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::gauss_int;

    fn mi(v: &[u32]) -> MultiIndex {
        MultiIndex::new(v.to_vec())
    }

    fn wv(fracs: &[(i64, i64)]) -> WeightVector {
        WeightVector::new(fracs.iter().map(|(p, q)| rat(*p, *q)).collect()).unwrap()
    }

    fn hyperquadric1() -> Model {
        let p = RealPoly::from_terms(1, vec![(mi(&[1]), mi(&[1]), gauss_int(1, 0))]).unwrap();
        Model::validate(wv(&[(1, 2)]), p).unwrap()
    }

    fn tube_model() -> Model {
        let p = RealPoly::from_terms(
            2,
            vec![
                (mi(&[1, 1]), mi(&[0, 1]), gauss(rat(1, 2), rat_int(0))),
                (mi(&[0, 1]), mi(&[1, 1]), gauss(rat(1, 2), rat_int(0))),
            ],
        )
        .unwrap();
        Model::validate(wv(&[(1, 2), (1, 4)]), p).unwrap()
    }

    fn weighted_sos() -> Model {
        Model::build_sos(
            wv(&[(1, 2), (1, 4)]),
            vec![
                HoloPoly::var(2, 0),
                HoloPoly::monomial(2, mi(&[0, 2]), 0, gauss_int(1, 0)),
            ],
        )
        .unwrap()
    }

    #[test]
    fn validate_examples() {
        assert!(hyperquadric1().diagonal_condition() == DiagonalCondition::Holds);
        // z1^2 is pluriharmonic
        let p = RealPoly::from_terms(
            1,
            vec![
                (mi(&[2]), mi(&[0]), gauss_int(1, 0)),
                (mi(&[0]), mi(&[2]), gauss_int(1, 0)),
            ],
        )
        .unwrap();
        let err = Model::validate(wv(&[(1, 2)]), p).unwrap_err();
        match err {
            ModelError::Invalid(vs) => {
                assert!(vs
                    .iter()
                    .any(|v| matches!(v, Violation::Pluriharmonic { .. })))
            }
            other => panic!("unexpected error {other:?}"),
        }
        // x1 |z2|^2 with mu = (1/2, 1/4): every monomial has weighted length 1
        let t = tube_model();
        for (key, _) in t.p().terms() {
            assert_eq!(
                pair_weighted_length(&key.alpha, &key.beta, t.mu().mu()).unwrap(),
                rat_int(1)
            );
        }
        // wrong weights: |z1|^2 with mu = 1/4 is not homogeneous of degree 1
        let p = RealPoly::from_terms(1, vec![(mi(&[1]), mi(&[1]), gauss_int(1, 0))]).unwrap();
        assert!(matches!(
            Model::validate(wv(&[(1, 4)]), p),
            Err(ModelError::Invalid(vs)) if vs.iter().any(|v| matches!(v, Violation::NotHomogeneous { .. }))
        ));
        // zero polynomial
        assert!(matches!(
            Model::validate(wv(&[(1, 2)]), RealPoly::zero(1)),
            Err(ModelError::Invalid(vs)) if vs.contains(&Violation::ZeroPolynomial)
        ));
    }

    #[test]
    fn build_sos_examples() {
        // mu = 1/4, Q = [z1^2] -> P = |z1|^4
        let m = Model::build_sos(
            wv(&[(1, 4)]),
            vec![HoloPoly::monomial(1, mi(&[2]), 0, gauss_int(1, 0))],
        )
        .unwrap();
        assert_eq!(m.p().coeff(&mi(&[2]), &mi(&[2])), gauss_int(1, 0));
        assert_eq!(m.p().num_terms(), 1);
        // mu = (1/2, 1/4), Q = [z1, z2^2] -> |z1|^2 + |z2|^4
        let m = weighted_sos();
        assert_eq!(m.p().num_terms(), 2);
        assert!(m.is_sos());
        // constant factor rejected: weighted degree 0 != 1/2
        let err = Model::build_sos(wv(&[(1, 2)]), vec![HoloPoly::one(1)]).unwrap_err();
        assert!(matches!(
            err,
            ModelError::Invalid(vs) if vs.iter().any(|v| matches!(v, Violation::SosWrongWeight { .. }))
        ));
    }

    #[test]
    fn levi_form_examples() {
        // |z1|^2 -> [[1]]
        let l = hyperquadric1().levi_form();
        assert_eq!(l[0][0], MixedPoly::constant(1, gauss_int(1, 0)));
        // |z1|^4 -> [[4 |z1|^2]]
        let p = RealPoly::from_terms(1, vec![(mi(&[2]), mi(&[2]), gauss_int(1, 0))]).unwrap();
        let l = levi_form(&p);
        assert_eq!(
            l[0][0],
            MixedPoly::monomial(1, mi(&[1]), mi(&[1]), 0, gauss_int(4, 0))
        );
        // x1 |z2|^2 -> [[0, z2/2], [zb2/2, x1]]
        let t = tube_model();
        let l = t.levi_form();
        assert!(l[0][0].is_zero());
        assert_eq!(
            l[0][1],
            MixedPoly::monomial(2, mi(&[0, 1]), mi(&[0, 0]), 0, gauss(rat(1, 2), rat_int(0)))
        );
        assert_eq!(
            l[1][0],
            MixedPoly::monomial(2, mi(&[0, 0]), mi(&[0, 1]), 0, gauss(rat(1, 2), rat_int(0)))
        );
        let x1 = MixedPoly::from_terms(
            2,
            vec![
                (mi(&[1, 0]), mi(&[0, 0]), 0, gauss(rat(1, 2), rat_int(0))),
                (mi(&[0, 0]), mi(&[1, 0]), 0, gauss(rat(1, 2), rat_int(0))),
            ],
        )
        .unwrap();
        assert_eq!(l[1][1], x1);
        // Hermitian symmetry: L[j][k] = conj(L[k][j])
        for j in 0..2 {
            for k in 0..2 {
                assert_eq!(l[j][k], l[k][j].conj());
            }
        }
    }

    #[test]
    fn pseudoconvexity_examples() {
        // SOS models are certified
        let v = weighted_sos().pseudoconvexity(10, 1);
        assert_eq!(v.status, LeviStatus::PsdCertified);
        // the tube is flagged with the exact axis witness z = (0, 1)
        let v = tube_model().pseudoconvexity(10, 1);
        match &v.status {
            LeviStatus::NotPsd {
                witness,
                minor,
                minor_value,
            } => {
                assert_eq!(witness, &vec![gauss_int(0, 0), gauss_int(1, 0)]);
                assert_eq!(minor, &vec![0, 1]);
                assert_eq!(minor_value, &rat(-1, 4));
                // re-evaluating the Levi matrix at the witness reproduces the minor
                let levi = tube_model().levi_form();
                let m: Vec<Vec<GaussRat>> = levi
                    .iter()
                    .map(|row| {
                        row.iter()
                            .map(|e| e.eval_gauss(witness, &Rat::zero()))
                            .collect()
                    })
                    .collect();
                let sub: Vec<Vec<GaussRat>> = minor
                    .iter()
                    .map(|&r| minor.iter().map(|&c| m[r][c].clone()).collect())
                    .collect();
                assert_eq!(linalg::det_gauss(&sub).re, rat(-1, 4));
            }
            other => panic!("expected NotPsd, got {other:?}"),
        }
        // a generic-provenance hyperquadric is sampled clean
        let p = RealPoly::from_terms(1, vec![(mi(&[1]), mi(&[1]), gauss_int(1, 0))]).unwrap();
        let m = Model::validate(wv(&[(1, 2)]), p).unwrap();
        let v = m.pseudoconvexity(25, 7);
        assert_eq!(v.status, LeviStatus::PsdSampled);
        assert_eq!(v.samples_checked, 1 + 25);
    }

    #[test]
    fn sos_levi_equals_gram_matrix() {
        // for P = sum_l Q_l conj(Q_l), the Levi form is the Gram matrix
        // L[j][k] = sum_l dQ_l/dz_j * conj(dQ_l/dz_k)
        for m in [
            weighted_sos(),
            Model::build_sos(
                wv(&[(1, 4), (1, 4)]),
                vec![
                    HoloPoly::monomial(2, mi(&[2, 0]), 0, gauss_int(1, 0)),
                    HoloPoly::monomial(2, mi(&[1, 1]), 0, gauss_int(1, 0)),
                    HoloPoly::monomial(2, mi(&[0, 2]), 0, gauss_int(1, 0)),
                ],
            )
            .unwrap(),
        ] {
            let Provenance::SumOfSquares(q) = m.provenance().clone() else {
                panic!("sos provenance expected");
            };
            let levi = m.levi_form();
            let holo_to_mixed = |h: &HoloPoly| -> MixedPoly {
                MixedPoly::from_terms(
                    m.n(),
                    h.terms()
                        .map(|(k, c)| {
                            assert_eq!(k.w, 0);
                            (k.alpha.clone(), MultiIndex::zeros(m.n()), 0, c.clone())
                        })
                        .collect(),
                )
                .unwrap()
            };
            for j in 1..=m.n() {
                for k in 1..=m.n() {
                    let mut gram = MixedPoly::zero(m.n());
                    for ql in &q {
                        let dj = holo_to_mixed(&ql.d_z(j).unwrap());
                        let dk = holo_to_mixed(&ql.d_z(k).unwrap()).conj();
                        gram = gram.add(&dj.mul(&dk).unwrap()).unwrap();
                    }
                    assert_eq!(levi[j - 1][k - 1], gram, "Gram mismatch at ({j}, {k})");
                }
            }
        }
    }

    #[test]
    fn sos_levi_gram_psd_at_random_points() {
        // Gram-structured Levi form: exact principal minors are nonnegative
        // at 100 deterministic rational points.
        let m = weighted_sos();
        let levi = m.levi_form();
        let mut rng = SplitMix64::new(42);
        for _ in 0..100 {
            let z: Vec<GaussRat> = (0..2).map(|_| rng.next_gauss_rat(16)).collect();
            let vals: Vec<Vec<GaussRat>> = levi
                .iter()
                .map(|row| row.iter().map(|e| e.eval_gauss(&z, &Rat::zero())).collect())
                .collect();
            assert!(first_negative_principal_minor(&vals).is_none());
        }
    }

    #[test]
    fn nondegeneracy_examples() {
        // |z1|^2 in n = 2 is degenerate with witness d/dz2
        let p = RealPoly::from_terms(2, vec![(mi(&[1, 0]), mi(&[1, 0]), gauss_int(1, 0))]).unwrap();
        let m = Model::validate(wv(&[(1, 2), (1, 2)]), p).unwrap();
        match m.holomorphic_nondegeneracy(&rat_int(1)) {
            Nondegeneracy::Degenerate { witness, .. } => {
                assert!(witness.f(0).is_zero());
                assert!(!witness.f(1).is_zero());
                // the complex condition vanishes identically
                assert!(fields::holo_tangency(&witness, m.p()).unwrap().is_zero());
            }
            other => panic!("expected degenerate, got {other:?}"),
        }
        // |z1|^2 in n = 1 is nondegenerate up to the cap
        assert!(hyperquadric1()
            .holomorphic_nondegeneracy(&rat_int(1))
            .is_nondegenerate());
        // SOS with gradients spanning C^2 at generic points
        assert!(weighted_sos()
            .holomorphic_nondegeneracy(&rat_int(1))
            .is_nondegenerate());
    }

    #[test]
    fn balance_examples() {
        let m = weighted_sos();
        assert_eq!(
            m.balance_info(),
            BalanceInfo {
                balanced: true,
                kappa: 1
            }
        );
        let t = tube_model();
        assert_eq!(
            t.balance_info(),
            BalanceInfo {
                balanced: false,
                kappa: 1
            }
        );
        let q = Model::build_sos(
            wv(&[(1, 4)]),
            vec![HoloPoly::monomial(1, mi(&[2]), 0, gauss_int(1, 0))],
        )
        .unwrap();
        assert_eq!(
            q.balance_info(),
            BalanceInfo {
                balanced: true,
                kappa: 0
            }
        );
    }

    #[test]
    fn diagonal_condition_examples() {
        assert_eq!(
            weighted_sos().diagonal_condition(),
            DiagonalCondition::Holds
        );
        assert_eq!(
            tube_model().diagonal_condition(),
            DiagonalCondition::FailsAt { j: 1 }
        );
        // |z1 z2|^2 with mu = (1/4, 1/4): only diagonal term needs both variables
        let p = RealPoly::from_terms(2, vec![(mi(&[1, 1]), mi(&[1, 1]), gauss_int(1, 0))]).unwrap();
        let m = Model::validate(wv(&[(1, 4), (1, 4)]), p).unwrap();
        assert_eq!(m.diagonal_condition(), DiagonalCondition::FailsAt { j: 1 });
    }

    #[test]
    fn diagonal_condition_implies_span() {
        // when the condition holds, {2 alpha : A[alpha,alpha] != 0} spans R^n
        for m in [hyperquadric1(), weighted_sos()] {
            assert_eq!(m.diagonal_condition(), DiagonalCondition::Holds);
            let rows: Vec<Vec<Rat>> = m
                .diagonal_exponents()
                .iter()
                .map(|a| {
                    a.exponents()
                        .iter()
                        .map(|e| rat_int(2 * *e as i64))
                        .collect()
                })
                .collect();
            assert_eq!(linalg::rank(&rows, m.n()), m.n());
        }
    }

    #[test]
    fn known_fields_are_symmetries_where_expected() {
        for m in [hyperquadric1(), weighted_sos()] {
            for nf in m.known_fields() {
                assert!(
                    m.tangency(&nf.field).unwrap().is_zero(),
                    "{} not tangent",
                    nf.name
                );
            }
        }
        // on the (unbalanced) tube, W and E are symmetries but Etilde is not
        let t = tube_model();
        let named = t.known_fields();
        let get = |s: &str| named.iter().find(|nf| nf.name == s).unwrap();
        assert!(t.tangency(&get("W").field).unwrap().is_zero());
        assert!(t.tangency(&get("E").field).unwrap().is_zero());
        assert!(!t.tangency(&get("Etilde").field).unwrap().is_zero());
    }
}
