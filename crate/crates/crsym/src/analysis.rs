//! Structure verdicts on solver output.
//!
//! Weight-zero symmetries are analyzed through their linear parts: the
//! Euler direction is removed by exact elimination of the `w d/dw`
//! coordinate, and each complement field is tested for semisimplicity and a
//! purely imaginary spectrum. Both tests are fully symbolic — squarefreeness
//! of the characteristic polynomial via exact gcd, reality of the rotated
//! spectrum via Sturm-sequence root counting over the rationals — so the
//! verdicts that feed the theorem assertions never depend on floating point.
//!
//! The module also classifies the `Re z_l` decomposition shapes of the
//! defining polynomial and produces the final structure verdict (grading
//! shape, rigid-component vanishing, intermediate-weight check and jet
//! order).

use crate::arith::{format_rat, gauss, rat, rat_int, GaussRat, MultiIndex, Rat};
use crate::fields::{euler, FieldError, GradedVField, VField};
use crate::linalg;
use crate::model::{BalanceInfo, LeviVerdict, Model, Nondegeneracy};
use crate::ring::RingError;
use crate::solver::GradingReport;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AnalysisError {
    #[error("expected a field of weighted degree 0, got {0}")]
    NotDegreeZero(String),
    #[error("Euler field is not in the span of the degree-0 kernel: solver/model inconsistency")]
    EulerNotInSpan,
    #[error("degree-0 basis field lies outside its own ansatz space")]
    CoordinatesUnavailable,
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Ring(#[from] RingError),
}

// ---------------------------------------------------------------------------
// Linear parts of weight-zero fields
// ---------------------------------------------------------------------------

/// Exact decomposition of a weight-zero field: `z`-linear part `A`
/// (`X ⊇ sum A[j][k] z_k d/dz_j`), the `w d/dw` coefficient `c`, and a flag
/// for any remaining monomials (possible when weight ratios repeat, e.g.
/// `z2^2 d/dz1` for `mu = (1/2, 1/4)`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearPart {
    pub a: Vec<Vec<GaussRat>>,
    pub c: GaussRat,
    pub nonlinear_remainder: bool,
}

/// Extracts the linear part of a degree-0 graded field.
pub fn linear_part(x: &GradedVField) -> Result<LinearPart, AnalysisError> {
    if !x.degree.is_zero() {
        return Err(AnalysisError::NotDegreeZero(format_rat(&x.degree)));
    }
    let n = x.field.n();
    let mut a = vec![vec![GaussRat::zero(); n]; n];
    let mut remainder = false;
    for j in 0..n {
        for (key, coeff) in x.field.f(j).terms() {
            if key.w == 0 && key.alpha.total() == 1 {
                let k = (0..n)
                    .find(|&k| key.alpha.get(k) == 1)
                    .expect("total degree 1");
                a[j][k] = coeff.clone();
            } else {
                remainder = true;
            }
        }
    }
    let mut c = GaussRat::zero();
    for (key, coeff) in x.field.g().terms() {
        if key.w == 1 && key.alpha.is_zero() {
            c = coeff.clone();
        } else {
            remainder = true;
        }
    }
    Ok(LinearPart {
        a,
        c,
        nonlinear_remainder: remainder,
    })
}

// ---------------------------------------------------------------------------
// Exact spectral checks
// ---------------------------------------------------------------------------

/// Outcome of the exact spectral tests on a linear part.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RotationVerdict {
    /// Minimal polynomial squarefree (no nilpotent part).
    pub semisimple: bool,
    /// Every eigenvalue lies on the imaginary axis.
    pub purely_imaginary: bool,
    /// Conjunction of the two: the rotation conclusions both hold.
    pub real_part_zero: bool,
}

/// Runs the exact spectral tests on a square Gaussian-rational matrix:
/// semisimplicity via the squarefree part of the characteristic polynomial
/// annihilating the matrix, and imaginarity of the spectrum via reality of
/// `q(t) = char(i t)` (monic normalization) together with a Sturm-sequence
/// count of real roots equal to its degree.
pub fn rotation_check(a: &[Vec<GaussRat>]) -> RotationVerdict {
    let n = a.len();
    if n == 0 {
        return RotationVerdict {
            semisimple: true,
            purely_imaginary: true,
            real_part_zero: true,
        };
    }
    let chi = charpoly(a);
    let sf = squarefree_part(&chi);
    let semisimple = mat_is_zero(&eval_poly_at_matrix(&sf, a));
    // q(t) = chi(i t) / i^n
    let mut purely_imaginary = true;
    let mut q: Vec<Rat> = Vec::with_capacity(chi.len());
    for (k, coeff) in chi.iter().enumerate() {
        let rotated = coeff.clone() * pow_i(k as i64 - n as i64);
        if !rotated.im.is_zero() {
            purely_imaginary = false;
            break;
        }
        q.push(rotated.re);
    }
    if purely_imaginary {
        let q0 = real_squarefree_part(&q);
        let deg = q0.len().saturating_sub(1);
        purely_imaginary = sturm_real_root_count(&q0) == deg;
    }
    RotationVerdict {
        semisimple,
        purely_imaginary,
        real_part_zero: semisimple && purely_imaginary,
    }
}

/// `i^e` for any integer exponent.
fn pow_i(e: i64) -> GaussRat {
    match e.rem_euclid(4) {
        0 => gauss(rat_int(1), rat_int(0)),
        1 => gauss(rat_int(0), rat_int(1)),
        2 => gauss(rat_int(-1), rat_int(0)),
        _ => gauss(rat_int(0), rat_int(-1)),
    }
}

/// Monic characteristic polynomial (ascending coefficients) by the
/// Faddeev–LeVerrier recurrence, exact over the Gaussian rationals.
fn charpoly(a: &[Vec<GaussRat>]) -> Vec<GaussRat> {
    let n = a.len();
    let mut coeffs = vec![GaussRat::zero(); n + 1];
    coeffs[n] = GaussRat::one();
    let mut m = mat_identity(n);
    let mut c = GaussRat::zero();
    for k in 1..=n {
        // M_k = A (M_{k-1} + c_{n-k+1} I), c_{n-k} = -tr(M_k)/k
        m = mat_mul(a, &mat_add(&m, &mat_scale_identity(n, &c)));
        c = -mat_trace(&m) / gauss(rat_int(k as i64), rat_int(0));
        coeffs[n - k] = c.clone();
    }
    coeffs
}

fn mat_identity(n: usize) -> Vec<Vec<GaussRat>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        GaussRat::one()
                    } else {
                        GaussRat::zero()
                    }
                })
                .collect()
        })
        .collect()
}

fn mat_scale_identity(n: usize, s: &GaussRat) -> Vec<Vec<GaussRat>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { s.clone() } else { GaussRat::zero() })
                .collect()
        })
        .collect()
}

fn mat_add(a: &[Vec<GaussRat>], b: &[Vec<GaussRat>]) -> Vec<Vec<GaussRat>> {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| {
            ra.iter()
                .zip(rb)
                .map(|(x, y)| x.clone() + y.clone())
                .collect()
        })
        .collect()
}

fn mat_mul(a: &[Vec<GaussRat>], b: &[Vec<GaussRat>]) -> Vec<Vec<GaussRat>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut acc = GaussRat::zero();
                    for k in 0..n {
                        acc += a[i][k].clone() * b[k][j].clone();
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

fn mat_trace(a: &[Vec<GaussRat>]) -> GaussRat {
    let mut acc = GaussRat::zero();
    for (i, row) in a.iter().enumerate() {
        acc += row[i].clone();
    }
    acc
}

fn mat_is_zero(a: &[Vec<GaussRat>]) -> bool {
    a.iter().all(|r| r.iter().all(|x| x.is_zero()))
}

fn eval_poly_at_matrix(p: &[GaussRat], a: &[Vec<GaussRat>]) -> Vec<Vec<GaussRat>> {
    let n = a.len();
    let mut acc = mat_scale_identity(n, &GaussRat::zero());
    for coeff in p.iter().rev() {
        acc = mat_add(&mat_mul(&acc, a), &mat_scale_identity(n, coeff));
    }
    acc
}

fn trim<T: Zero>(mut p: Vec<T>) -> Vec<T> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn poly_derivative_c(p: &[GaussRat]) -> Vec<GaussRat> {
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c.clone() * gauss(rat_int(k as i64), rat_int(0)))
        .collect()
}

/// Remainder of polynomial division over the Gaussian rationals.
fn poly_rem_c(num: &[GaussRat], den: &[GaussRat]) -> Vec<GaussRat> {
    let den = trim(den.to_vec());
    assert!(!den.is_empty(), "division by zero polynomial");
    let mut rem = trim(num.to_vec());
    let dd = den.len() - 1;
    let lc = den[dd].clone();
    while rem.len() > dd {
        let shift = rem.len() - 1 - dd;
        let factor = rem.last().unwrap().clone() / lc.clone();
        for k in 0..=dd {
            let v = rem[shift + k].clone() - factor.clone() * den[k].clone();
            rem[shift + k] = v;
        }
        rem = trim(rem);
        if rem.is_empty() {
            break;
        }
    }
    rem
}

fn poly_gcd_c(a: &[GaussRat], b: &[GaussRat]) -> Vec<GaussRat> {
    let mut x = trim(a.to_vec());
    let mut y = trim(b.to_vec());
    while !y.is_empty() {
        let r = poly_rem_c(&x, &y);
        x = y;
        y = r;
    }
    if let Some(lc) = x.last().cloned() {
        x = x.iter().map(|c| c.clone() / lc.clone()).collect();
    }
    x
}

fn poly_div_exact_c(num: &[GaussRat], den: &[GaussRat]) -> Vec<GaussRat> {
    let den = trim(den.to_vec());
    let mut rem = trim(num.to_vec());
    let dd = den.len() - 1;
    let lc = den[dd].clone();
    let mut quo = vec![GaussRat::zero(); rem.len().saturating_sub(dd)];
    while rem.len() > dd {
        let shift = rem.len() - 1 - dd;
        let factor = rem.last().unwrap().clone() / lc.clone();
        quo[shift] = factor.clone();
        for k in 0..=dd {
            let v = rem[shift + k].clone() - factor.clone() * den[k].clone();
            rem[shift + k] = v;
        }
        rem = trim(rem);
        if rem.is_empty() {
            break;
        }
    }
    debug_assert!(rem.is_empty(), "inexact polynomial division");
    trim(quo)
}

fn squarefree_part(p: &[GaussRat]) -> Vec<GaussRat> {
    let d = poly_derivative_c(p);
    if trim(d.clone()).is_empty() {
        return p.to_vec();
    }
    let g = poly_gcd_c(p, &d);
    if g.len() <= 1 {
        p.to_vec()
    } else {
        poly_div_exact_c(p, &g)
    }
}

// real polynomial helpers for the Sturm sequence

fn poly_derivative_r(p: &[Rat]) -> Vec<Rat> {
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c.clone() * rat_int(k as i64))
        .collect()
}

fn poly_rem_r(num: &[Rat], den: &[Rat]) -> Vec<Rat> {
    let den = trim(den.to_vec());
    assert!(!den.is_empty());
    let mut rem = trim(num.to_vec());
    let dd = den.len() - 1;
    let lc = den[dd].clone();
    while rem.len() > dd {
        let shift = rem.len() - 1 - dd;
        let factor = rem.last().unwrap().clone() / lc.clone();
        for k in 0..=dd {
            let v = rem[shift + k].clone() - factor.clone() * den[k].clone();
            rem[shift + k] = v;
        }
        rem = trim(rem);
        if rem.is_empty() {
            break;
        }
    }
    rem
}

fn poly_gcd_r(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut x = trim(a.to_vec());
    let mut y = trim(b.to_vec());
    while !y.is_empty() {
        let r = poly_rem_r(&x, &y);
        x = y;
        y = r;
    }
    if let Some(lc) = x.last().cloned() {
        x = x.iter().map(|c| c.clone() / lc.clone()).collect();
    }
    x
}

fn poly_div_exact_r(num: &[Rat], den: &[Rat]) -> Vec<Rat> {
    let den = trim(den.to_vec());
    let mut rem = trim(num.to_vec());
    let dd = den.len() - 1;
    let lc = den[dd].clone();
    let mut quo = vec![Rat::zero(); rem.len().saturating_sub(dd)];
    while rem.len() > dd {
        let shift = rem.len() - 1 - dd;
        let factor = rem.last().unwrap().clone() / lc.clone();
        quo[shift] = factor.clone();
        for k in 0..=dd {
            let v = rem[shift + k].clone() - factor.clone() * den[k].clone();
            rem[shift + k] = v;
        }
        rem = trim(rem);
        if rem.is_empty() {
            break;
        }
    }
    trim(quo)
}

fn real_squarefree_part(p: &[Rat]) -> Vec<Rat> {
    let p = trim(p.to_vec());
    if p.len() <= 1 {
        return p;
    }
    let d = poly_derivative_r(&p);
    let g = poly_gcd_r(&p, &d);
    if g.len() <= 1 {
        p
    } else {
        poly_div_exact_r(&p, &g)
    }
}

/// Number of distinct real roots of a squarefree real polynomial, by the
/// Sturm sequence evaluated at -infinity and +infinity.
fn sturm_real_root_count(p: &[Rat]) -> usize {
    let p = trim(p.to_vec());
    if p.len() <= 1 {
        return 0;
    }
    let mut chain = vec![p.clone(), poly_derivative_r(&p)];
    loop {
        let len = chain.len();
        let r = poly_rem_r(&chain[len - 2], &chain[len - 1]);
        if r.is_empty() {
            break;
        }
        chain.push(r.iter().map(|c| -c.clone()).collect());
    }
    let sign_at = |poly: &[Rat], at_plus_infinity: bool| -> i32 {
        let deg = poly.len() - 1;
        let lc = poly.last().unwrap();
        let mut s = if lc.is_positive() { 1 } else { -1 };
        if !at_plus_infinity && deg % 2 == 1 {
            s = -s;
        }
        s
    };
    let variations = |at_plus_infinity: bool| -> usize {
        let signs: Vec<i32> = chain.iter().map(|q| sign_at(q, at_plus_infinity)).collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    };
    variations(false) - variations(true)
}

// ---------------------------------------------------------------------------
// Degree-0 classification
// ---------------------------------------------------------------------------

/// One Euler-complement basis field with its linear-part analysis. `verdict`
/// is absent when the field carries nonlinear monomials, which the rotation
/// lemmas do not cover; such fields are reported, not silently skipped.
#[derive(Debug, Clone)]
pub struct RotationEntry {
    pub field: VField,
    pub linear: LinearPart,
    pub verdict: Option<RotationVerdict>,
}

/// Result of splitting the degree-0 kernel into the Euler line and a
/// rotation complement.
#[derive(Debug, Clone)]
pub struct G0Classification {
    /// Coordinates of the Euler field in the supplied kernel basis.
    pub euler_coords: Vec<Rat>,
    pub rotations: Vec<RotationEntry>,
}

impl G0Classification {
    /// Indices of complement fields violating the rotation conclusions
    /// (semisimple with purely imaginary spectrum).
    pub fn violations(&self) -> Vec<usize> {
        self.rotations
            .iter()
            .enumerate()
            .filter(|(_, e)| e.verdict.map(|v| !v.real_part_zero).unwrap_or(false))
            .map(|(i, _)| i)
            .collect()
    }

    /// Indices of complement fields with nonlinear monomials (outside the
    /// scope of the linear rotation analysis).
    pub fn unsupported(&self) -> Vec<usize> {
        self.rotations
            .iter()
            .enumerate()
            .filter(|(_, e)| e.verdict.is_none())
            .map(|(i, _)| i)
            .collect()
    }
}

/// Splits a degree-0 kernel basis into the Euler line and a complement with
/// vanishing `w d/dw` coordinate, then runs the rotation checks on every
/// complement field. Errors when the Euler field is not in the span (it is
/// always a symmetry, so that would expose a solver or model bug).
pub fn classify_g0(
    basis: &[GradedVField],
    model: &Model,
) -> Result<G0Classification, AnalysisError> {
    for b in basis {
        if !b.degree.is_zero() {
            return Err(AnalysisError::NotDegreeZero(format_rat(&b.degree)));
        }
    }
    let ansatz = crate::solver::ansatz(model, &rat_int(0));
    let coords: Vec<Vec<Rat>> = basis
        .iter()
        .map(|b| {
            ansatz
                .real_coordinates_of(&b.field)
                .ok_or(AnalysisError::CoordinatesUnavailable)
        })
        .collect::<Result<_, _>>()?;
    let e = euler(model.mu());
    let e_coords = ansatz
        .real_coordinates_of(&e)
        .ok_or(AnalysisError::CoordinatesUnavailable)?;
    let euler_coords =
        linalg::solve_coordinates(&coords, &e_coords).ok_or(AnalysisError::EulerNotInSpan)?;
    // complement: eliminate the w d/dw coordinate against a pivot field
    let w_coeff = |x: &VField| -> GaussRat { x.g().coeff(&MultiIndex::zeros(model.n()), 1) };
    let cs: Vec<GaussRat> = basis.iter().map(|b| w_coeff(&b.field)).collect();
    let pivot = cs
        .iter()
        .position(|c| !c.is_zero())
        .ok_or(AnalysisError::EulerNotInSpan)?;
    let mut rotations = Vec::new();
    for (i, b) in basis.iter().enumerate() {
        if i == pivot {
            continue;
        }
        let field = if cs[i].is_zero() {
            b.field.clone()
        } else {
            let factor = cs[i].clone() / cs[pivot].clone();
            b.field.sub(&basis[pivot].field.scale(&factor))?
        };
        if field.is_zero() {
            continue;
        }
        let graded = GradedVField::new(field.clone(), rat_int(0), model.mu())?;
        let linear = linear_part(&graded)?;
        let verdict = if linear.nonlinear_remainder {
            None
        } else {
            Some(rotation_check(&linear.a))
        };
        rotations.push(RotationEntry {
            field,
            linear,
            verdict,
        });
    }
    Ok(G0Classification {
        euler_coords,
        rotations,
    })
}

// ---------------------------------------------------------------------------
// Dichotomy and final verdicts
// ---------------------------------------------------------------------------

/// Shape of the decomposition `P = sum_j (Re z_l)^j P_j` for one variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DichotomyForm {
    /// `P = x_l^2 P_2 + x_l P_1 + P_0` (quadratic in `Re z_l`).
    Form63,
    /// `P = x_l P_1 + P_0` (linear in `Re z_l`).
    Form64,
    /// Not expressible through `Re z_l`, or no / too high an `x_l` power.
    None,
}

/// Per-variable dichotomy verdicts (index `l-1` holds the verdict for `z_l`).
pub fn gn_dichotomy(model: &Model) -> Vec<DichotomyForm> {
    (1..=model.n())
        .map(|l| match model.p().xl_decompose(l) {
            Ok(parts) => match parts.len().saturating_sub(1) {
                1 => DichotomyForm::Form64,
                2 => DichotomyForm::Form63,
                _ => DichotomyForm::None,
            },
            Err(_) => DichotomyForm::None,
        })
        .collect()
}

/// Which structure theorem the computed grading matches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GradingShape {
    /// Pseudoconvex nondegenerate shape: components only at
    /// `-1, -mu_j, 0, 1/2, 1`.
    Thm11,
    /// Homogeneous sum-of-squares shape: exactly `-1, 0, 1` with the extreme
    /// components one-dimensional.
    Thm53,
    /// Weighted sum-of-squares shape: `-1, ±1/2, 0, 1` with extreme
    /// components one-dimensional and `±1/2` of dimension `2 kappa`.
    Thm54,
    Other,
}

/// Final structure verdict over a finished grading report.
#[derive(Debug, Clone)]
pub struct StructureVerdict {
    pub grading_shape: GradingShape,
    /// No rigid field at any intermediate degree.
    pub gc_zero: bool,
    /// Every nonzero intermediate component sits exactly at degree 1/2.
    pub gn_weight_half_only: bool,
    /// 2 for balanced models, 1 otherwise.
    pub jet_order: u8,
    pub balance: BalanceInfo,
    pub dichotomy: Vec<DichotomyForm>,
}

/// Derives the structure verdict from the grading report and the model's
/// pseudoconvexity and nondegeneracy verdicts.
pub fn structure_verdict(
    report: &GradingReport,
    model: &Model,
    levi: &LeviVerdict,
    nondeg: &Nondegeneracy,
) -> StructureVerdict {
    let balance = model.balance_info();
    let gc_zero = !report.flags.has_gc;
    let one = rat_int(1);
    let half = rat(1, 2);
    let intermediate_nonzero: Vec<Rat> = report
        .nonzero_degrees()
        .into_iter()
        .filter(|d| d.is_positive() && *d < one)
        .collect();
    let gn_weight_half_only = intermediate_nonzero.iter().all(|d| *d == half);
    let jet_order = if balance.balanced { 2 } else { 1 };
    let grading_shape = match_shape(report, model, levi, nondeg);
    StructureVerdict {
        grading_shape,
        gc_zero,
        gn_weight_half_only,
        jet_order,
        balance,
        dichotomy: gn_dichotomy(model),
    }
}

fn match_shape(
    report: &GradingReport,
    model: &Model,
    levi: &LeviVerdict,
    nondeg: &Nondegeneracy,
) -> GradingShape {
    let one = rat_int(1);
    let half = rat(1, 2);
    let nonzero = report.nonzero_degrees();
    let dim = |d: &Rat| report.dim_at(d);
    let mu = model.mu();
    let homogeneous = mu.mu().iter().all(|m| m == mu.get(0));
    // "degree k > 2" means the largest multitype entry 1/mu_n exceeds 2
    let degree_above_two = *mu.get(mu.n() - 1) < half;
    if model.is_sos() && degree_above_two && dim(&-one.clone()) == 1 && dim(&one) == 1 {
        let three_graded: Vec<Rat> = vec![-one.clone(), rat_int(0), one.clone()];
        if homogeneous && nonzero == three_graded {
            return GradingShape::Thm53;
        }
        let two_kappa = 2 * mu.kappa();
        let expected: Vec<Rat> = if two_kappa == 0 {
            three_graded
        } else {
            vec![
                -one.clone(),
                -half.clone(),
                rat_int(0),
                half.clone(),
                one.clone(),
            ]
        };
        if nonzero == expected && dim(&half) == two_kappa && dim(&-half.clone()) == two_kappa {
            return GradingShape::Thm54;
        }
    }
    if levi.is_pseudoconvex_evidence() && nondeg.is_nondegenerate() {
        let allowed: Vec<Rat> = {
            let mut v = vec![-one.clone(), rat_int(0), half.clone(), one.clone()];
            for j in 0..mu.n() {
                v.push(-mu.get(j).clone());
            }
            v
        };
        if nonzero.iter().all(|d| allowed.contains(d)) {
            return GradingShape::Thm11;
        }
    }
    GradingShape::Other
}
