//! The graded symmetry solver.
//!
//! For each admissible weighted degree `d` the space of candidate fields is
//! finite-dimensional ([`Ansatz`]). Tangency is real-linear in the field, so
//! collecting the residue coefficient of every monomial `(alpha, beta, k)`
//! and splitting complex unknowns and coefficients into real and imaginary
//! parts yields a purely rational linear system; its exact kernel is the
//! degree-`d` component of the symmetry algebra.
//!
//! Kernel bases are normalized to primitive integer coordinates with a
//! positive leading entry, which makes reports reproducible bit for bit.
//! Every returned field is re-verified by evaluating its tangency residue
//! from scratch, a code path independent of the elimination.

use crate::arith::{format_rat, rat_int, GaussRat, Rat};
use crate::fields::{tangency, Ansatz, GradedVField};
use crate::linalg;
use crate::model::Model;
use crate::ring::{MixKey, MixedPoly, WeightVector};
use num_traits::{Signed, ToPrimitive, Zero};
use std::collections::BTreeSet;

/// The admissible weighted degrees
/// `{-1} U {-mu_j} U {0} U E U {1}`, where `E` is the set of nonnegative
/// integer combinations of the weights lying strictly between 0 and 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeMenu {
    degrees: Vec<Rat>,
}

impl DegreeMenu {
    pub fn degrees(&self) -> &[Rat] {
        &self.degrees
    }

    pub fn contains(&self, d: &Rat) -> bool {
        self.degrees.contains(d)
    }

    /// Degrees strictly between 0 and 1 (where rigid `g_c` and non-rigid
    /// `g_n` components may live).
    pub fn intermediate(&self) -> Vec<Rat> {
        self.degrees
            .iter()
            .filter(|d| d.is_positive() && **d < rat_int(1))
            .cloned()
            .collect()
    }
}

/// Exact finite degree menu for the given weights.
pub fn degree_menu(mu: &WeightVector) -> DegreeMenu {
    let mut set: BTreeSet<Rat> = BTreeSet::new();
    set.insert(rat_int(-1));
    set.insert(rat_int(0));
    set.insert(rat_int(1));
    for j in 0..mu.n() {
        set.insert(-mu.get(j).clone());
    }
    for e in weight_combinations(mu) {
        set.insert(e);
    }
    DegreeMenu {
        degrees: set.into_iter().collect(),
    }
}

/// Nonnegative integer combinations of the weights in the open interval
/// (0, 1); bounded because every weight is positive.
fn weight_combinations(mu: &WeightVector) -> Vec<Rat> {
    let one = rat_int(1);
    let mut out = BTreeSet::new();
    let mut stack = vec![(0usize, Rat::zero())];
    while let Some((j, acc)) = stack.pop() {
        if acc.is_positive() && acc < one {
            out.insert(acc.clone());
        }
        if j == mu.n() {
            continue;
        }
        let max = ((one.clone() - acc.clone()) / mu.get(j).clone()).floor();
        let max = max.to_integer().to_u32().unwrap_or(0);
        for e in 0..=max {
            stack.push((j + 1, acc.clone() + mu.get(j).clone() * rat_int(e as i64)));
        }
    }
    out.into_iter().collect()
}

/// Extended candidate list used by the debug re-check: every degree in
/// `[-1, 1]` realizable by a graded holomorphic field whose coefficient
/// monomials have `(mu,1)`-weight at most 2. A sound menu decision means no
/// kernel appears at any degree outside [`degree_menu`].
pub fn extended_degree_menu(mu: &WeightVector) -> Vec<Rat> {
    let bound = rat_int(2);
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
    let mut out = BTreeSet::new();
    for zw in &z_weights {
        for m in 0..=2u32 {
            let t = zw.clone() + rat_int(m as i64);
            if t > bound {
                continue;
            }
            for j in 0..mu.n() {
                let d = t.clone() - mu.get(j).clone();
                if d >= rat_int(-1) && d <= rat_int(1) {
                    out.insert(d);
                }
            }
            let d = t.clone() - rat_int(1);
            if d >= rat_int(-1) && d <= rat_int(1) {
                out.insert(d);
            }
        }
    }
    out.into_iter().collect()
}

/// Candidate field space at degree `d` (see [`Ansatz`]).
pub fn ansatz(model: &Model, d: &Rat) -> Ansatz {
    Ansatz::new(model.mu(), d)
}

/// Which real part of a complex quantity a row or unknown refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Part {
    Re,
    Im,
}

/// Label of one real unknown: a field slot (`z`-slot index or the `w` slot),
/// the monomial inside it, and the real/imaginary part.
#[derive(Debug, Clone)]
pub struct UnknownLabel {
    pub slot: usize,
    pub monomial: String,
    pub part: Part,
}

/// Label of one equation row: the residue monomial it came from.
#[derive(Debug, Clone)]
pub struct ResidueLabel {
    pub alpha: Vec<u32>,
    pub beta: Vec<u32>,
    pub u: u32,
    pub part: Part,
}

/// The assembled rational system whose kernel is the degree component.
pub struct LinearSystem {
    pub unknowns: Vec<UnknownLabel>,
    pub rows: Vec<Vec<Rat>>,
    pub provenance: Vec<ResidueLabel>,
}

/// Builds the tangency system for the generic field of the ansatz.
///
/// For complex unknown `c_t = a_t + i b_t` with unit-field residue
/// `D_t = T(X_t)`, the full residue is
/// `R = sum_t a_t (D_t + conj D_t) + b_t (i D_t + conj(i D_t))`,
/// and `R = 0` becomes two rational rows (real and imaginary part) per
/// residue monomial. Conjugate monomial pairs carry the same information, so
/// only the canonical member of each pair is kept.
pub fn build_system(model: &Model, ansatz: &Ansatz) -> LinearSystem {
    let t_count = ansatz.unknown_count();
    let i_unit = GaussRat::new(Rat::zero(), rat_int(1));
    // per-unknown residues: U_t backs Re(c_t), V_t backs Im(c_t)
    let mut u_res: Vec<MixedPoly> = Vec::with_capacity(t_count);
    let mut v_res: Vec<MixedPoly> = Vec::with_capacity(t_count);
    for t in 0..t_count {
        let d_t = crate::fields::holo_tangency(&ansatz.unit_field(t), model.p())
            .expect("ansatz dimensions agree with the model");
        let u_t = d_t.add(&d_t.conj()).expect("same dimension");
        let i_dt = d_t.scale(&i_unit);
        let v_t = i_dt.add(&i_dt.conj()).expect("same dimension");
        u_res.push(u_t);
        v_res.push(v_t);
    }
    // canonical residue keys: one representative per conjugate pair
    let mut keys: BTreeSet<MixKey> = BTreeSet::new();
    for poly in u_res.iter().chain(v_res.iter()) {
        for (k, _) in poly.terms() {
            let conj = k.conjugate();
            keys.insert(if *k <= conj { k.clone() } else { conj });
        }
    }
    let mut rows = Vec::new();
    let mut provenance = Vec::new();
    for key in &keys {
        let mut re_row = vec![Rat::zero(); 2 * t_count];
        let mut im_row = vec![Rat::zero(); 2 * t_count];
        for t in 0..t_count {
            let cu = u_res[t].coeff(key);
            let cv = v_res[t].coeff(key);
            re_row[2 * t] = cu.re;
            re_row[2 * t + 1] = cv.re;
            im_row[2 * t] = cu.im;
            im_row[2 * t + 1] = cv.im;
        }
        for (row, part) in [(re_row, Part::Re), (im_row, Part::Im)] {
            if row.iter().any(|x| !x.is_zero()) {
                rows.push(row);
                provenance.push(ResidueLabel {
                    alpha: key.alpha.exponents().to_vec(),
                    beta: key.beta.exponents().to_vec(),
                    u: key.u,
                    part,
                });
            }
        }
    }
    let mut unknowns = Vec::with_capacity(2 * t_count);
    for t in 0..t_count {
        let (slot, key) = ansatz.unknown(t);
        let mono = format!("alpha={:?} w^{}", key.alpha.exponents(), key.w);
        unknowns.push(UnknownLabel {
            slot,
            monomial: mono.clone(),
            part: Part::Re,
        });
        unknowns.push(UnknownLabel {
            slot,
            monomial: mono,
            part: Part::Im,
        });
    }
    LinearSystem {
        unknowns,
        rows,
        provenance,
    }
}

/// Exact kernel basis at degree `d`, reconstituted as graded fields. Every
/// basis element is normalized to primitive integer coordinates with positive
/// leading entry and re-verified to have an identically zero tangency
/// residue.
pub fn solve_graded(model: &Model, d: &Rat) -> Vec<GradedVField> {
    let ansatz = ansatz(model, d);
    if ansatz.is_empty() {
        return Vec::new();
    }
    let system = build_system(model, &ansatz);
    let kernel = linalg::kernel_basis(&system.rows, ansatz.real_dim());
    kernel
        .iter()
        .map(|v| {
            let v = linalg::primitive_normalize(v);
            let field = ansatz.field_from_real(&v);
            let residue = tangency(&field, model.p()).expect("dimensions agree");
            assert!(
                residue.is_zero(),
                "solver soundness: kernel field at degree {} has nonzero tangency",
                format_rat(d)
            );
            GradedVField::new(field, d.clone(), model.mu())
                .expect("ansatz fields are homogeneous by construction")
        })
        .collect()
}

/// Real dimension of the rigid part (fields commuting with `d/dw`) of the
/// kernel at degree `d`: the kernel of the same system extended by rows
/// forcing every `w`-monomial unknown to vanish.
fn rigid_kernel_dim(model: &Model, d: &Rat) -> usize {
    let ansatz = ansatz(model, d);
    if ansatz.is_empty() {
        return 0;
    }
    let mut system = build_system(model, &ansatz);
    for t in ansatz.w_unknowns() {
        for part in [0, 1] {
            let mut row = vec![Rat::zero(); ansatz.real_dim()];
            row[2 * t + part] = rat_int(1);
            system.rows.push(row);
        }
    }
    linalg::kernel_basis(&system.rows, ansatz.real_dim()).len()
}

/// One graded component of the symmetry algebra.
#[derive(Debug, Clone)]
pub struct DegreeComponent {
    pub degree: Rat,
    pub dim: usize,
    pub basis: Vec<GradedVField>,
    /// Rigid/non-rigid split, recorded at intermediate degrees (0 < d < 1).
    pub rigid_dim: Option<usize>,
}

#[derive(Debug, Clone, Default)]
pub struct GradingFlags {
    /// A nonzero rigid field exists at some intermediate degree.
    pub has_gc: bool,
    /// A non-rigid field exists at some intermediate degree.
    pub has_gn: bool,
    /// Intermediate degrees carrying non-rigid fields.
    pub gn_weights: Vec<Rat>,
}

/// The solver's principal output: per-degree kernel bases and dimensions
/// over the full degree menu, plus the rigid/non-rigid flags.
#[derive(Debug, Clone)]
pub struct GradingReport {
    pub mu: WeightVector,
    pub p_text: String,
    pub components: Vec<DegreeComponent>,
    pub total_dim: usize,
    pub flags: GradingFlags,
}

impl GradingReport {
    pub fn component(&self, d: &Rat) -> Option<&DegreeComponent> {
        self.components.iter().find(|c| c.degree == *d)
    }

    pub fn dim_at(&self, d: &Rat) -> usize {
        self.component(d).map(|c| c.dim).unwrap_or(0)
    }

    /// Degrees with nonzero kernel, ascending.
    pub fn nonzero_degrees(&self) -> Vec<Rat> {
        self.components
            .iter()
            .filter(|c| c.dim > 0)
            .map(|c| c.degree.clone())
            .collect()
    }
}

/// Runs [`solve_graded`] over the whole degree menu and assembles the
/// grading report.
pub fn full_grading(model: &Model) -> GradingReport {
    let menu = degree_menu(model.mu());
    let intermediate = menu.intermediate();
    let mut components = Vec::new();
    let mut total = 0usize;
    let mut flags = GradingFlags::default();
    for d in menu.degrees() {
        let basis = solve_graded(model, d);
        let dim = basis.len();
        total += dim;
        let rigid_dim = if intermediate.contains(d) {
            let r = if dim == 0 {
                0
            } else {
                rigid_kernel_dim(model, d)
            };
            if r > 0 {
                flags.has_gc = true;
            }
            if dim > r {
                flags.has_gn = true;
                flags.gn_weights.push(d.clone());
            }
            Some(r)
        } else {
            None
        };
        components.push(DegreeComponent {
            degree: d.clone(),
            dim,
            basis,
            rigid_dim,
        });
    }
    GradingReport {
        mu: model.mu().clone(),
        p_text: model.p().text(),
        components,
        total_dim: total,
        flags,
    }
}

/// Debug re-check of the menu decision: solves every degree in the extended
/// candidate list and returns those outside the standard menu that carry a
/// nonzero kernel (expected to be none).
pub fn extended_menu_check(model: &Model) -> Vec<(Rat, usize)> {
    let menu = degree_menu(model.mu());
    extended_degree_menu(model.mu())
        .into_iter()
        .filter(|d| !menu.contains(d))
        .map(|d| {
            let dim = solve_graded(model, &d).len();
            (d, dim)
        })
        .filter(|(_, dim)| *dim > 0)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{gauss_int, rat, MultiIndex};
    use crate::fields::{half_weight_pair, third_symmetry, w_field};
    use crate::model::Model;
    use crate::ring::{HoloPoly, RealPoly};

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

    fn quartic1() -> Model {
        Model::build_sos(
            wv(&[(1, 4)]),
            vec![HoloPoly::monomial(1, mi(&[2]), 0, gauss_int(1, 0))],
        )
        .unwrap()
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
    fn degree_menu_examples() {
        let m = degree_menu(&wv(&[(1, 2)]));
        let expect: Vec<Rat> = [(-1, 1), (-1, 2), (0, 1), (1, 2), (1, 1)]
            .iter()
            .map(|(p, q)| rat(*p, *q))
            .collect();
        let mut expect_sorted = expect.clone();
        expect_sorted.sort();
        assert_eq!(m.degrees(), &expect_sorted[..]);

        let m = degree_menu(&wv(&[(1, 2), (1, 4)]));
        let expect: Vec<Rat> = [
            (-1, 1),
            (-1, 2),
            (-1, 4),
            (0, 1),
            (1, 4),
            (1, 2),
            (3, 4),
            (1, 1),
        ]
        .iter()
        .map(|(p, q)| rat(*p, *q))
        .collect();
        let mut expect_sorted = expect;
        expect_sorted.sort();
        assert_eq!(m.degrees(), &expect_sorted[..]);

        let m = degree_menu(&wv(&[(1, 3)]));
        let expect: Vec<Rat> = [(-1, 1), (-1, 3), (0, 1), (1, 3), (2, 3), (1, 1)]
            .iter()
            .map(|(p, q)| rat(*p, *q))
            .collect();
        let mut expect_sorted = expect;
        expect_sorted.sort();
        assert_eq!(m.degrees(), &expect_sorted[..]);
    }

    #[test]
    fn solve_graded_hyperquadric_examples() {
        let m = hyperquadric1();
        // d = -1: span{d/dw}, real dimension one
        let basis = solve_graded(&m, &rat_int(-1));
        assert_eq!(basis.len(), 1);
        assert_eq!(basis[0].field, w_field(1));
        // d = -1/2: real dimension two, containing both half-weight fields
        let basis = solve_graded(&m, &rat(-1, 2));
        assert_eq!(basis.len(), 2);
        let a = ansatz(&m, &rat(-1, 2));
        let span: Vec<Vec<Rat>> = basis
            .iter()
            .map(|g| a.real_coordinates_of(&g.field).unwrap())
            .collect();
        for f in half_weight_pair(1, 1) {
            let coords = a.real_coordinates_of(&f).unwrap();
            assert!(linalg::in_span(&span, &coords, a.real_dim()));
        }
    }

    #[test]
    fn solve_graded_quartic_top_degree() {
        // Im w = |z1|^4, d = 1: real dimension one, spanned by the third
        // symmetry up to exact scaling.
        let m = quartic1();
        let basis = solve_graded(&m, &rat_int(1));
        assert_eq!(basis.len(), 1);
        let a = ansatz(&m, &rat_int(1));
        let got = a.real_coordinates_of(&basis[0].field).unwrap();
        let expected = a.real_coordinates_of(&third_symmetry(m.mu())).unwrap();
        assert!(linalg::in_span(
            std::slice::from_ref(&got),
            &expected,
            a.real_dim()
        ));
        assert!(linalg::in_span(&[expected], &got, a.real_dim()));
    }

    #[test]
    fn full_grading_dimensions() {
        // hyperquadric: {-1:1, -1/2:2, 0:2, 1/2:2, 1:1}, total 8
        let rep = full_grading(&hyperquadric1());
        assert_eq!(rep.dim_at(&rat_int(-1)), 1);
        assert_eq!(rep.dim_at(&rat(-1, 2)), 2);
        assert_eq!(rep.dim_at(&rat_int(0)), 2);
        assert_eq!(rep.dim_at(&rat(1, 2)), 2);
        assert_eq!(rep.dim_at(&rat_int(1)), 1);
        assert_eq!(rep.total_dim, 8);
        assert!(!rep.flags.has_gc);

        // |z1|^4: {-1:1, 0:2, 1:1}, all intermediate degrees zero
        let rep = full_grading(&quartic1());
        assert_eq!(
            rep.nonzero_degrees(),
            vec![rat_int(-1), rat_int(0), rat_int(1)]
        );
        assert_eq!(rep.dim_at(&rat_int(0)), 2);
        assert_eq!(rep.total_dim, 4);

        // |z1|^2 + |z2|^4: {-1:1, -1/2:2, 0:3, 1/2:2, 1:1}
        let rep = full_grading(&weighted_sos());
        assert_eq!(rep.dim_at(&rat_int(-1)), 1);
        assert_eq!(rep.dim_at(&rat(-1, 2)), 2);
        assert_eq!(rep.dim_at(&rat_int(0)), 3);
        assert_eq!(rep.dim_at(&rat(1, 2)), 2);
        assert_eq!(rep.dim_at(&rat_int(1)), 1);
        assert_eq!(rep.dim_at(&rat(-1, 4)), 0);
        assert_eq!(rep.dim_at(&rat(1, 4)), 0);
        assert_eq!(rep.dim_at(&rat(3, 4)), 0);
        assert_eq!(rep.total_dim, 9);
        // the 1/2 component consists of non-rigid fields
        let c = rep.component(&rat(1, 2)).unwrap();
        assert_eq!(c.rigid_dim, Some(0));
        assert!(rep.flags.has_gn);
        assert!(!rep.flags.has_gc);
    }

    #[test]
    fn empty_ansatz_short_circuits() {
        let m = quartic1();
        // d = -1/2 is outside the menu but a legal query; f slot empty
        let basis = solve_graded(&m, &rat(-1, 2));
        assert_eq!(basis.len(), 0);
    }

    #[test]
    fn extended_menu_finds_nothing_new() {
        for m in [hyperquadric1(), quartic1(), weighted_sos()] {
            assert!(extended_menu_check(&m).is_empty());
        }
    }

    #[test]
    fn euler_bracket_preserves_each_kernel() {
        // [E, X] stays tangent, keeps the degree of X, and lies back in the
        // span of the degree-d kernel basis.
        use crate::fields::{euler, tangency};
        for m in [hyperquadric1(), weighted_sos()] {
            let e = euler(m.mu());
            for d in degree_menu(m.mu()).degrees() {
                let basis = solve_graded(&m, d);
                if basis.is_empty() {
                    continue;
                }
                let a = ansatz(&m, d);
                let span: Vec<Vec<Rat>> = basis
                    .iter()
                    .map(|g| a.real_coordinates_of(&g.field).unwrap())
                    .collect();
                // the basis vectors are linearly independent over R
                assert_eq!(linalg::rank(&span, a.real_dim()), basis.len());
                for x in &basis {
                    let b = e.bracket(&x.field).unwrap();
                    assert!(tangency(&b, m.p()).unwrap().is_zero());
                    if b.is_zero() {
                        continue;
                    }
                    assert_eq!(b.graded_degree(m.mu()).unwrap(), *d);
                    let coords = a.real_coordinates_of(&b).unwrap();
                    assert!(linalg::in_span(&span, &coords, a.real_dim()));
                }
            }
        }
    }
}
