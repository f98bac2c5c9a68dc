//! Graded modules and bimodules with homogeneous bases.
//!
//! A one-sided module is stored as a bimodule whose other side is the
//! ground field, so Hom, tensor and the checks are written once.

mod endo;
mod hom;
mod tensor;

pub use endo::{dual_module, end_op_algebra, Dual, EndOp};
pub use hom::{hom_component, hom_graded, is_graded_iso, is_graded_map, stabilizer, HomSpace};
pub use tensor::{apply_functor, tensor_over, TensorProduct};

use std::fmt;

use serde_json::json;

use crate::algebra::{format_combination, AlgebraHom, CrossedProductData, GradedAlgebra, SubalgebraEmbedding};
use crate::error::{Error, Result};
use crate::exact::{unit_vector, Field, Matrix, Scalar};
use crate::group::{FiniteGroup, GroupElt};
use crate::report::ValidationReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

/// An `(A, A′)`-bimodule. `left_action[i]` is the matrix of `m ↦ e_i·m`,
/// `right_action[j]` that of `m ↦ m·e′_j`. Grading: `A_g M_x A′_h ⊆ M_gxh`.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedBimodule {
    left: GradedAlgebra,
    right: GradedAlgebra,
    degrees: Vec<GroupElt>,
    labels: Vec<String>,
    left_action: Vec<Matrix>,
    right_action: Vec<Matrix>,
}

impl GradedBimodule {
    pub fn new(
        left: GradedAlgebra,
        right: GradedAlgebra,
        degrees: Vec<GroupElt>,
        left_action: Vec<Matrix>,
        right_action: Vec<Matrix>,
    ) -> Result<GradedBimodule> {
        let m = degrees.len();
        if left.group() != right.group() {
            return Err(Error::AlgebraMismatch("algebras graded by different groups".into()));
        }
        if left.field() != right.field() {
            return Err(Error::FieldMismatch(format!("{} vs {}", left.field(), right.field())));
        }
        if let Some(&g) = degrees.iter().find(|&&g| g >= left.group().order()) {
            return Err(Error::Shape(format!("degree {g} is not a group element")));
        }
        for (alg, acts, side) in [(&left, &left_action, "left"), (&right, &right_action, "right")] {
            if acts.len() != alg.dim() {
                return Err(Error::Shape(format!(
                    "{} {side} action matrices for an algebra of dimension {}",
                    acts.len(),
                    alg.dim()
                )));
            }
            if acts.iter().any(|a| a.rows() != m || a.cols() != m || a.field() != alg.field()) {
                return Err(Error::Shape(format!("{side} action matrices must be {m}×{m} over {}", alg.field())));
            }
        }
        let labels = (1..=m).map(|i| format!("m{i}")).collect();
        Ok(GradedBimodule {
            left,
            right,
            degrees,
            labels,
            left_action,
            right_action,
        })
    }

    /// `A` as an `(A, A)`-bimodule.
    pub fn regular(a: &GradedAlgebra) -> GradedBimodule {
        let left = (0..a.dim()).map(|i| a.left_mult(i).clone()).collect();
        let right = (0..a.dim()).map(|i| a.right_mult(i).clone()).collect();
        GradedBimodule::new(a.clone(), a.clone(), a.degrees().to_vec(), left, right)
            .expect("regular bimodule")
            .with_labels(a.labels().to_vec())
            .expect("labels")
    }

    pub fn zero(left: &GradedAlgebra, right: &GradedAlgebra) -> Result<GradedBimodule> {
        let f = left.field();
        GradedBimodule::new(
            left.clone(),
            right.clone(),
            vec![],
            vec![Matrix::zeros(f, 0, 0); left.dim()],
            vec![Matrix::zeros(f, 0, 0); right.dim()],
        )
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<GradedBimodule> {
        if labels.len() != self.dim() {
            return Err(Error::Shape(format!("{} labels for dimension {}", labels.len(), self.dim())));
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn left_algebra(&self) -> &GradedAlgebra {
        &self.left
    }

    pub fn right_algebra(&self) -> &GradedAlgebra {
        &self.right
    }

    pub fn group(&self) -> &FiniteGroup {
        self.left.group()
    }

    pub fn field(&self) -> Field {
        self.left.field()
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[GroupElt] {
        &self.degrees
    }

    pub fn degree(&self, i: usize) -> GroupElt {
        self.degrees[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn left_action(&self, i: usize) -> &Matrix {
        &self.left_action[i]
    }

    pub fn right_action(&self, j: usize) -> &Matrix {
        &self.right_action[j]
    }

    pub fn left_actions(&self) -> &[Matrix] {
        &self.left_action
    }

    pub fn right_actions(&self) -> &[Matrix] {
        &self.right_action
    }

    /// Matrix of `m ↦ a·m`.
    pub fn left_mult_by(&self, a: &[Scalar]) -> Matrix {
        combine(self.field(), self.dim(), &self.left_action, a)
    }

    /// Matrix of `m ↦ m·a′`.
    pub fn right_mult_by(&self, a: &[Scalar]) -> Matrix {
        combine(self.field(), self.dim(), &self.right_action, a)
    }

    pub fn act_left(&self, a: &[Scalar], m: &[Scalar]) -> Vec<Scalar> {
        apply_combination(self.field(), self.dim(), &self.left_action, a, m)
    }

    pub fn act_right(&self, m: &[Scalar], a: &[Scalar]) -> Vec<Scalar> {
        apply_combination(self.field(), self.dim(), &self.right_action, a, m)
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        unit_vector(self.field(), self.dim(), i)
    }

    pub fn zero_vector(&self) -> Vec<Scalar> {
        vec![self.field().zero(); self.dim()]
    }

    pub fn basis_of_degree(&self, g: GroupElt) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.degrees[i] == g).collect()
    }

    pub fn component_dims(&self) -> Vec<usize> {
        let mut dims = vec![0; self.group().order()];
        for &g in &self.degrees {
            dims[g] += 1;
        }
        dims
    }

    pub fn is_in_degree(&self, x: &[Scalar], g: GroupElt) -> bool {
        x.iter()
            .enumerate()
            .all(|(i, c)| c.is_zero() || self.degrees[i] == g)
    }

    pub fn format(&self, x: &[Scalar]) -> String {
        format_combination(&self.labels, x)
    }

    /// Same bimodule with the right action precomposed with `sigma`:
    /// `m * a′ = m·σ(a′)`.
    pub fn twist_right(&self, sigma: &Matrix) -> Result<GradedBimodule> {
        let acts = twisted(self.field(), self.dim(), &self.right_action, sigma, self.right.dim())?;
        Ok(GradedBimodule {
            right_action: acts,
            ..self.clone()
        })
    }

    /// Same bimodule with the left action precomposed with `sigma`.
    pub fn twist_left(&self, sigma: &Matrix) -> Result<GradedBimodule> {
        let acts = twisted(self.field(), self.dim(), &self.left_action, sigma, self.left.dim())?;
        Ok(GradedBimodule {
            left_action: acts,
            ..self.clone()
        })
    }

    /// Restriction of scalars along algebra maps into the two acting algebras.
    pub fn restrict(&self, left: &AlgebraHom, right: &AlgebraHom) -> Result<GradedBimodule> {
        if left.target() != &self.left || right.target() != &self.right {
            return Err(Error::AlgebraMismatch("restriction maps must land in the acting algebras".into()));
        }
        let l = (0..left.source().dim())
            .map(|i| self.left_mult_by(&left.matrix().column(i)))
            .collect();
        let r = (0..right.source().dim())
            .map(|j| self.right_mult_by(&right.matrix().column(j)))
            .collect();
        GradedBimodule::new(left.source().clone(), right.source().clone(), self.degrees.clone(), l, r)?
            .with_labels(self.labels.clone())
    }

    /// The left module obtained by forgetting the right action.
    pub fn left_module(&self) -> GradedModule {
        GradedModule {
            side: Side::Left,
            inner: GradedBimodule {
                right: GradedAlgebra::ground(self.group(), self.field()),
                right_action: vec![Matrix::identity(self.field(), self.dim())],
                ..self.clone()
            },
        }
    }

    /// The right module obtained by forgetting the left action.
    pub fn right_module(&self) -> GradedModule {
        GradedModule {
            side: Side::Right,
            inner: GradedBimodule {
                left: GradedAlgebra::ground(self.group(), self.field()),
                left_action: vec![Matrix::identity(self.field(), self.dim())],
                ..self.clone()
            },
        }
    }
}

impl fmt::Display for GradedBimodule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dims: Vec<String> = self.component_dims().iter().map(usize::to_string).collect();
        write!(f, "graded bimodule of dimension {} (components {})", self.dim(), dims.join(","))
    }
}

fn combine(field: Field, m: usize, mats: &[Matrix], coeffs: &[Scalar]) -> Matrix {
    let mut out = Matrix::zeros(field, m, m);
    for (a, c) in mats.iter().zip(coeffs) {
        if !c.is_zero() {
            out = out.add(&a.scale(c));
        }
    }
    out
}

fn apply_combination(field: Field, m: usize, mats: &[Matrix], coeffs: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
    let mut out = vec![field.zero(); m];
    for (a, c) in mats.iter().zip(coeffs) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(a.apply(v)) {
            if !x.is_zero() {
                *o = &*o + &(c * &x);
            }
        }
    }
    out
}

fn twisted(field: Field, m: usize, acts: &[Matrix], sigma: &Matrix, d: usize) -> Result<Vec<Matrix>> {
    if sigma.rows() != d || sigma.cols() != d {
        return Err(Error::Shape(format!("twist must be a {d}×{d} matrix")));
    }
    Ok((0..d).map(|j| combine(field, m, acts, &sigma.column(j))).collect())
}

/// Module axioms on both sides, commutation of the actions and the grading law.
pub fn check_bimodule(m: &GradedBimodule) -> ValidationReport {
    let mut report = ValidationReport::new();
    let g = m.group();
    let (a, b) = (m.left_algebra(), m.right_algebra());
    let id = Matrix::identity(m.field(), m.dim());

    let witness = (0..a.dim()).find_map(|i| {
        (0..a.dim()).find_map(|j| {
            let ok = m.left_mult_by(a.product(i, j)) == m.left_action(i).mul(m.left_action(j));
            (!ok).then(|| json!({ "pair": [a.label(i), a.label(j)] }))
        })
    });
    report.record("LeftAssociativity", "(ab)m = a(bm)", witness);
    report.expect("LeftUnit", "1m = m", m.left_mult_by(a.unit()) == id, json!({}));

    let witness = (0..b.dim()).find_map(|i| {
        (0..b.dim()).find_map(|j| {
            let ok = m.right_mult_by(b.product(i, j)) == m.right_action(j).mul(m.right_action(i));
            (!ok).then(|| json!({ "pair": [b.label(i), b.label(j)] }))
        })
    });
    report.record("RightAssociativity", "m(ab) = (ma)b", witness);
    report.expect("RightUnit", "m1 = m", m.right_mult_by(b.unit()) == id, json!({}));

    let witness = (0..a.dim()).find_map(|i| {
        (0..b.dim()).find_map(|j| {
            let ok = m.left_action(i).mul(m.right_action(j)) == m.right_action(j).mul(m.left_action(i));
            (!ok).then(|| json!({ "pair": [a.label(i), b.label(j)] }))
        })
    });
    report.record("Commuting", "(am)b = a(mb)", witness);

    let mut witness = None;
    'grading: for k in 0..m.dim() {
        let x = m.degree(k);
        for i in 0..a.dim() {
            let target = g.mul(a.degree(i), x);
            if !m.is_in_degree(&m.left_action(i).column(k), target) {
                witness = Some(json!({ "algebra": a.label(i), "element": m.label(k), "side": "left" }));
                break 'grading;
            }
        }
        for j in 0..b.dim() {
            let target = g.mul(x, b.degree(j));
            if !m.is_in_degree(&m.right_action(j).column(k), target) {
                witness = Some(json!({ "algebra": b.label(j), "element": m.label(k), "side": "right" }));
                break 'grading;
            }
        }
    }
    report.record("Grading", "A_g M_x A′_h ⊆ M_gxh", witness);
    report
}

/// A one-sided graded module. Left: `A_g M_x ⊆ M_gx`; right: `M_x A_g ⊆ M_xg`.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedModule {
    side: Side,
    inner: GradedBimodule,
}

impl GradedModule {
    /// Left module with `action[i]` the matrix of `m ↦ e_i·m`.
    pub fn left(algebra: &GradedAlgebra, degrees: Vec<GroupElt>, action: Vec<Matrix>) -> Result<GradedModule> {
        let field = algebra.field();
        let ground = GradedAlgebra::ground(algebra.group(), field);
        let id = Matrix::identity(field, degrees.len());
        let inner = GradedBimodule::new(algebra.clone(), ground, degrees, action, vec![id])?;
        Ok(GradedModule { side: Side::Left, inner })
    }

    /// Right module with `action[i]` the matrix of `m ↦ m·e_i`.
    pub fn right(algebra: &GradedAlgebra, degrees: Vec<GroupElt>, action: Vec<Matrix>) -> Result<GradedModule> {
        let field = algebra.field();
        let ground = GradedAlgebra::ground(algebra.group(), field);
        let id = Matrix::identity(field, degrees.len());
        let inner = GradedBimodule::new(ground, algebra.clone(), degrees, vec![id], action)?;
        Ok(GradedModule { side: Side::Right, inner })
    }

    pub fn regular_left(a: &GradedAlgebra) -> GradedModule {
        GradedBimodule::regular(a).left_module()
    }

    pub fn regular_right(a: &GradedAlgebra) -> GradedModule {
        GradedBimodule::regular(a).right_module()
    }

    pub fn zero(a: &GradedAlgebra, side: Side) -> GradedModule {
        let acts = vec![Matrix::zeros(a.field(), 0, 0); a.dim()];
        match side {
            Side::Left => GradedModule::left(a, vec![], acts),
            Side::Right => GradedModule::right(a, vec![], acts),
        }
        .expect("zero module")
    }

    pub fn with_labels(self, labels: Vec<String>) -> Result<GradedModule> {
        Ok(GradedModule {
            side: self.side,
            inner: self.inner.with_labels(labels)?,
        })
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn algebra(&self) -> &GradedAlgebra {
        match self.side {
            Side::Left => self.inner.left_algebra(),
            Side::Right => self.inner.right_algebra(),
        }
    }

    pub fn group(&self) -> &FiniteGroup {
        self.inner.group()
    }

    pub fn field(&self) -> Field {
        self.inner.field()
    }

    pub fn dim(&self) -> usize {
        self.inner.dim()
    }

    pub fn degrees(&self) -> &[GroupElt] {
        self.inner.degrees()
    }

    pub fn degree(&self, i: usize) -> GroupElt {
        self.inner.degree(i)
    }

    pub fn labels(&self) -> &[String] {
        self.inner.labels()
    }

    pub fn actions(&self) -> &[Matrix] {
        match self.side {
            Side::Left => self.inner.left_actions(),
            Side::Right => self.inner.right_actions(),
        }
    }

    pub fn action(&self, i: usize) -> &Matrix {
        &self.actions()[i]
    }

    /// Matrix of the action of an algebra element.
    pub fn action_by(&self, a: &[Scalar]) -> Matrix {
        match self.side {
            Side::Left => self.inner.left_mult_by(a),
            Side::Right => self.inner.right_mult_by(a),
        }
    }

    pub fn act(&self, a: &[Scalar], m: &[Scalar]) -> Vec<Scalar> {
        match self.side {
            Side::Left => self.inner.act_left(a, m),
            Side::Right => self.inner.act_right(m, a),
        }
    }

    pub fn component_dims(&self) -> Vec<usize> {
        self.inner.component_dims()
    }

    pub fn basis_of_degree(&self, g: GroupElt) -> Vec<usize> {
        self.inner.basis_of_degree(g)
    }

    /// The underlying bimodule, with the ground field on the other side.
    pub fn as_bimodule(&self) -> &GradedBimodule {
        &self.inner
    }

    /// Degree of `e_i·m` for homogeneous `e_i` and `m` (or `m·e_i` on the right).
    pub fn act_degree(&self, a: GroupElt, x: GroupElt) -> GroupElt {
        let g = self.group();
        match self.side {
            Side::Left => g.mul(a, x),
            Side::Right => g.mul(x, a),
        }
    }

    pub(crate) fn relabel(&self, degrees: Vec<GroupElt>) -> GradedModule {
        GradedModule {
            side: self.side,
            inner: GradedBimodule {
                degrees,
                ..self.inner.clone()
            },
        }
    }
}

impl fmt::Display for GradedModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dims: Vec<String> = self.component_dims().iter().map(usize::to_string).collect();
        write!(
            f,
            "graded {} module of dimension {} (components {})",
            self.side,
            self.dim(),
            dims.join(",")
        )
    }
}

/// Module axioms and grading for a one-sided module.
pub fn check_module(m: &GradedModule) -> ValidationReport {
    check_bimodule(m.as_bimodule())
}

/// The suspension `M(g)`. For a right module the basis vector of degree `d`
/// gets the degree `h` with `g·h = d`; for a left module the shift acts on
/// the other side, `h·g = d`, which is the form compatible with
/// `A_a M_x ⊆ M_ax` for nonabelian `G`, and for which a degree-`g` map
/// `M → N` is a degree-preserving map `M → N(g)`. Consequently
/// `M(g)(h) = M(hg)` for left modules and `M(gh)` for right modules; the
/// two conventions agree when `G` is abelian.
pub fn suspend(m: &GradedModule, g: GroupElt) -> GradedModule {
    let grp = m.group();
    let gi = grp.inv(g);
    let degrees = m
        .degrees()
        .iter()
        .map(|&d| match m.side() {
            Side::Left => grp.mul(d, gi),
            Side::Right => grp.mul(gi, d),
        })
        .collect();
    m.relabel(degrees)
}

/// Block-diagonal direct sum.
pub fn direct_sum(modules: &[GradedModule]) -> Result<GradedModule> {
    let first = modules
        .first()
        .ok_or_else(|| Error::Shape("direct sum of no modules".into()))?;
    let (a, side) = (first.algebra().clone(), first.side());
    for m in modules {
        if m.algebra() != &a {
            return Err(Error::AlgebraMismatch("summands over different algebras".into()));
        }
        if m.side() != side {
            return Err(Error::SideMismatch("summands on different sides".into()));
        }
    }
    let field = a.field();
    let total: usize = modules.iter().map(GradedModule::dim).sum();
    let degrees: Vec<GroupElt> = modules.iter().flat_map(|m| m.degrees().to_vec()).collect();
    let labels = modules
        .iter()
        .enumerate()
        .flat_map(|(k, m)| m.labels().iter().map(move |l| format!("{l}.{}", k + 1)))
        .collect();
    let actions = (0..a.dim())
        .map(|i| {
            let mut out = Matrix::zeros(field, total, total);
            let mut offset = 0;
            for m in modules {
                let block = m.action(i);
                for r in 0..m.dim() {
                    for c in 0..m.dim() {
                        out.set(offset + r, offset + c, block.get(r, c).clone());
                    }
                }
                offset += m.dim();
            }
            out
        })
        .collect();
    let sum = match side {
        Side::Left => GradedModule::left(&a, degrees, actions)?,
        Side::Right => GradedModule::right(&a, degrees, actions)?,
    };
    sum.with_labels(labels)
}

/// `A ⊗_B U` for a left `B`-module `U` concentrated in degree 1, where `B`
/// is the identity component of the crossed product `A`. Basis
/// `u_g ⊗ u_j`, ordered by `g` then `j`, with `u_g ⊗ u_j` in degree `g`.
pub fn induce(b: &SubalgebraEmbedding, u: &GradedModule) -> Result<GradedModule> {
    let a = b.ambient();
    let cp = CrossedProductData::find(a)?;
    induce_with(b, &cp, u)
}

/// [`induce`] with an explicit choice of units.
pub fn induce_with(b: &SubalgebraEmbedding, cp: &CrossedProductData, u: &GradedModule) -> Result<GradedModule> {
    let a = b.ambient();
    if cp.algebra() != a {
        return Err(Error::AlgebraMismatch("units belong to a different algebra".into()));
    }
    if u.algebra() != b.sub() {
        return Err(Error::AlgebraMismatch("U must be a module over the identity component".into()));
    }
    if u.side() != Side::Left {
        return Err(Error::SideMismatch("induction takes a left module".into()));
    }
    let grp = a.group();
    if u.degrees().iter().any(|&d| d != grp.identity()) {
        return Err(Error::NotDegreeOne);
    }
    if b.sub().dim() != a.basis_of_degree(grp.identity()).len() {
        return Err(Error::Invariant("B must be the identity component".into()));
    }
    let field = a.field();
    let n = grp.order();
    let k = u.dim();
    let total = n * k;
    let mut actions = Vec::with_capacity(a.dim());
    for i in 0..a.dim() {
        let h = a.degree(i);
        let e = a.basis_vector(i);
        let mut mat = Matrix::zeros(field, total, total);
        for g in grp.elements() {
            // e_i·u_g = u_hg·β with β = u_hg⁻¹·e_i·u_g ∈ B.
            let hg = grp.mul(h, g);
            let beta = a.mul(&a.mul(cp.inverse(hg), &e), cp.unit(g));
            let beta = b
                .restrict(&beta)
                .ok_or_else(|| Error::Invariant("u_hg⁻¹·a·u_g left the identity component".into()))?;
            let act = u.action_by(&beta);
            for j in 0..k {
                for r in 0..k {
                    mat.set(hg * k + r, g * k + j, act.get(r, j).clone());
                }
            }
        }
        actions.push(mat);
    }
    let degrees = (0..total).map(|q| q / k).collect();
    let labels = (0..total)
        .map(|q| format!("u_{}⊗{}", grp.label(q / k), u.labels()[q % k]))
        .collect();
    GradedModule::left(a, degrees, actions)?.with_labels(labels)
}

/// Diagonal automorphism `a_g ↦ χ(g)·a_g` for a character `χ: G → F^×`.
pub fn character_automorphism(a: &GradedAlgebra, chi: &[Scalar]) -> Result<Matrix> {
    let grp = a.group();
    if chi.len() != grp.order() {
        return Err(Error::Shape("character needs one value per group element".into()));
    }
    for x in grp.elements() {
        for y in grp.elements() {
            if chi[grp.mul(x, y)] != &chi[x] * &chi[y] || chi[x].is_zero() {
                return Err(Error::Invariant("not a character".into()));
            }
        }
    }
    let d = a.dim();
    Ok(Matrix::from_fn(a.field(), d, d, |r, c| {
        if r == c {
            chi[a.degree(r)].clone()
        } else {
            a.field().zero()
        }
    }))
}

/// Whether `f: M → N` commutes with both actions.
pub fn is_bimodule_hom(m: &GradedBimodule, n: &GradedBimodule, f: &Matrix) -> bool {
    f.rows() == n.dim()
        && f.cols() == m.dim()
        && m.left_actions()
            .iter()
            .zip(n.left_actions())
            .all(|(x, y)| f.mul(x) == y.mul(f))
        && m.right_actions()
            .iter()
            .zip(n.right_actions())
            .all(|(x, y)| f.mul(x) == y.mul(f))
}

/// Whether `f` sends every basis vector of degree `x` into degree `x`.
pub fn preserves_degrees(m: &GradedBimodule, n: &GradedBimodule, f: &Matrix) -> bool {
    (0..m.dim()).all(|c| n.is_in_degree(&f.column(c), m.degree(c)))
}

/// A graded bimodule isomorphism check: degree-preserving, bilinear, invertible.
pub fn is_graded_bimodule_iso(m: &GradedBimodule, n: &GradedBimodule, f: &Matrix) -> bool {
    m.dim() == n.dim() && preserves_degrees(m, n, f) && is_bimodule_hom(m, n, f) && f.is_invertible()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::identity_component;

    fn c2() -> FiniteGroup {
        FiniteGroup::cyclic(2)
    }

    fn e1() -> GradedAlgebra {
        GradedAlgebra::group_algebra(Field::Rational, &c2(), &c2(), &[0, 1]).unwrap()
    }

    #[test]
    fn regular_modules_pass_checks() {
        let a = e1();
        assert!(check_module(&GradedModule::regular_left(&a)).is_pass());
        assert!(check_module(&GradedModule::regular_right(&a)).is_pass());
        assert!(check_bimodule(&GradedBimodule::regular(&a)).is_pass());
        let e2 = GradedAlgebra::matrix_algebra(Field::Rational, &c2(), &[0, 1]);
        assert!(check_bimodule(&GradedBimodule::regular(&e2)).is_pass());
    }

    #[test]
    fn suspension_relabels_degrees() {
        let a = e1();
        let m = GradedModule::regular_left(&a);
        assert_eq!(suspend(&m, 0), m);
        assert_eq!(suspend(&m, 1).degrees(), [1, 0]);
        assert_eq!(suspend(&suspend(&m, 1), 1), m);
        assert!(check_module(&suspend(&m, 1)).is_pass());
    }

    #[test]
    fn left_suspension_stays_graded_over_nonabelian_groups() {
        let s3 = FiniteGroup::symmetric3();
        let a = GradedAlgebra::group_algebra(Field::prime(7).unwrap(), &s3, &s3, &[0, 1, 2, 3, 4, 5]).unwrap();
        let m = GradedModule::regular_left(&a);
        for g in s3.elements() {
            assert!(check_module(&suspend(&m, g)).is_pass());
            for h in s3.elements() {
                assert_eq!(suspend(&suspend(&m, g), h), suspend(&m, s3.mul(h, g)));
            }
        }
        let r = GradedModule::regular_right(&a);
        for g in s3.elements() {
            assert!(check_module(&suspend(&r, g)).is_pass());
        }
    }

    #[test]
    fn induction_from_identity_component() {
        let a = e1();
        let b = identity_component(&a).unwrap();
        let u = GradedModule::regular_left(b.sub());
        let m = induce(&b, &u).unwrap();
        assert_eq!(m.dim(), 2);
        assert!(check_module(&m).is_pass());
        assert!(is_graded_iso(&m, &GradedModule::regular_left(&a)).unwrap().is_some());
        let zero = induce(&b, &GradedModule::zero(b.sub(), Side::Left)).unwrap();
        assert_eq!(zero.dim(), 0);
        let shifted = suspend(&u, 1);
        assert_eq!(induce(&b, &shifted).unwrap_err(), Error::NotDegreeOne);
    }

    #[test]
    fn direct_sums_and_twists() {
        let a = e1();
        let m = GradedModule::regular_left(&a);
        let p = direct_sum(&[m.clone(), suspend(&m, 1)]).unwrap();
        assert_eq!(p.dim(), 4);
        assert_eq!(p.component_dims(), [2, 2]);
        assert!(check_module(&p).is_pass());
        let f = Field::Rational;
        let sigma = character_automorphism(&a, &[f.one(), f.from_i64(-1)]).unwrap();
        let t = GradedBimodule::regular(&a).twist_right(&sigma).unwrap();
        assert!(check_bimodule(&t).is_pass());
        assert_ne!(t, GradedBimodule::regular(&a));
    }
}
