//! Finite-dimensional G-graded algebras given by structure constants, their
//! identity components, crossed-product units, centralizers and the
//! conjugation action on centralizers.

use std::fmt;
use std::sync::{Arc, OnceLock};

use serde_json::json;

use crate::error::{Error, Result};
use crate::exact::{invertible_combination, is_zero_vec, short, unit_vector, Field, Matrix, Scalar, Span};
use crate::group::{FiniteGroup, GroupElt};
use crate::report::ValidationReport;

#[derive(Debug)]
struct AlgebraData {
    group: FiniteGroup,
    field: Field,
    degrees: Vec<GroupElt>,
    labels: Vec<String>,
    table: Vec<Vec<Vec<Scalar>>>,
    unit: Vec<Scalar>,
    left: Vec<Matrix>,
    right: Vec<Matrix>,
    generators: OnceLock<Vec<usize>>,
}

/// An associative algebra with a homogeneous basis. `table[i][j]` holds the
/// coordinates of `e_i·e_j`. Cloning is cheap.
///
/// Construction only checks shapes; the algebra axioms are checked by
/// [`check_graded_algebra`] so that broken tables can be reported on.
#[derive(Clone, Debug)]
pub struct GradedAlgebra(Arc<AlgebraData>);

impl PartialEq for GradedAlgebra {
    fn eq(&self, other: &Self) -> bool {
        let (x, y) = (&*self.0, &*other.0);
        Arc::ptr_eq(&self.0, &other.0)
            || (x.group == y.group
                && x.field == y.field
                && x.degrees == y.degrees
                && x.labels == y.labels
                && x.unit == y.unit
                && x.table == y.table)
    }
}

impl GradedAlgebra {
    pub fn new(
        group: FiniteGroup,
        field: Field,
        degrees: Vec<GroupElt>,
        table: Vec<Vec<Vec<Scalar>>>,
        unit: Vec<Scalar>,
    ) -> Result<GradedAlgebra> {
        let d = degrees.len();
        let labels = (1..=d).map(|i| format!("e{i}")).collect();
        GradedAlgebra::with_labels(group, field, degrees, labels, table, unit)
    }

    pub fn with_labels(
        group: FiniteGroup,
        field: Field,
        degrees: Vec<GroupElt>,
        labels: Vec<String>,
        table: Vec<Vec<Vec<Scalar>>>,
        unit: Vec<Scalar>,
    ) -> Result<GradedAlgebra> {
        let d = degrees.len();
        if let Some(&g) = degrees.iter().find(|&&g| g >= group.order()) {
            return Err(Error::Shape(format!("degree {g} is not a group element")));
        }
        if labels.len() != d {
            return Err(Error::Shape(format!("{} labels for dimension {d}", labels.len())));
        }
        if table.len() != d || table.iter().any(|row| row.len() != d) {
            return Err(Error::Shape(format!("structure constants must be {d}×{d}")));
        }
        if unit.len() != d || table.iter().flatten().any(|v| v.len() != d) {
            return Err(Error::Shape(format!("coordinate vectors must have length {d}")));
        }
        let foreign = table.iter().flatten().flatten().chain(&unit).find(|x| x.field() != field);
        if let Some(x) = foreign {
            return Err(Error::FieldMismatch(format!("{} in an algebra over {field}", x.field())));
        }
        let left = (0..d)
            .map(|i| Matrix::from_columns(field, d, &table[i]))
            .collect();
        let right = (0..d)
            .map(|i| {
                let cols: Vec<Vec<Scalar>> = (0..d).map(|j| table[j][i].clone()).collect();
                Matrix::from_columns(field, d, &cols)
            })
            .collect();
        Ok(GradedAlgebra(Arc::new(AlgebraData {
            group,
            field,
            degrees,
            labels,
            table,
            unit,
            left,
            right,
            generators: OnceLock::new(),
        })))
    }

    /// The ground field as an algebra concentrated in degree 1.
    pub fn ground(group: &FiniteGroup, field: Field) -> GradedAlgebra {
        GradedAlgebra::with_labels(
            group.clone(),
            field,
            vec![group.identity()],
            vec!["1".into()],
            vec![vec![vec![field.one()]]],
            vec![field.one()],
        )
        .expect("ground algebra")
    }

    /// Group algebra of `source`, graded through the homomorphism
    /// `grading_map: source → grading`.
    pub fn group_algebra(
        field: Field,
        source: &FiniteGroup,
        grading: &FiniteGroup,
        grading_map: &[GroupElt],
    ) -> Result<GradedAlgebra> {
        let n = source.order();
        if grading_map.len() != n {
            return Err(Error::Shape("grading map must be defined on every element".into()));
        }
        for a in source.elements() {
            for b in source.elements() {
                let lhs = grading_map[source.mul(a, b)];
                if lhs != grading.mul(grading_map[a], grading_map[b]) {
                    return Err(Error::Invariant(format!(
                        "grading map is not a homomorphism at ({}, {})",
                        source.label(a),
                        source.label(b)
                    )));
                }
            }
        }
        let table = (0..n)
            .map(|a| (0..n).map(|b| unit_vector(field, n, source.mul(a, b))).collect())
            .collect();
        GradedAlgebra::with_labels(
            grading.clone(),
            field,
            grading_map.to_vec(),
            source.labels().to_vec(),
            table,
            unit_vector(field, n, 0),
        )
    }

    /// `n×n` matrices graded by `deg E_ij = d_i·d_j⁻¹`. Basis `E11, E12, ...`
    /// in row-major order.
    pub fn matrix_algebra(field: Field, group: &FiniteGroup, row_degrees: &[GroupElt]) -> GradedAlgebra {
        let n = row_degrees.len();
        let d = n * n;
        let mut table = vec![vec![vec![field.zero(); d]; d]; d];
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    table[i * n + j][j * n + l] = unit_vector(field, d, i * n + l);
                }
            }
        }
        let degrees = (0..d)
            .map(|k| group.mul(row_degrees[k / n], group.inv(row_degrees[k % n])))
            .collect();
        let labels = (0..d).map(|k| format!("E{}{}", k / n + 1, k % n + 1)).collect();
        let mut unit = vec![field.zero(); d];
        for i in 0..n {
            unit[i * n + i] = field.one();
        }
        GradedAlgebra::with_labels(group.clone(), field, degrees, labels, table, unit)
            .expect("matrix algebra")
    }

    pub fn opposite(&self) -> GradedAlgebra {
        let d = self.dim();
        let table = (0..d)
            .map(|i| (0..d).map(|j| self.0.table[j][i].clone()).collect())
            .collect();
        GradedAlgebra::with_labels(
            self.group().clone(),
            self.field(),
            self.0.degrees.clone(),
            self.0.labels.clone(),
            table,
            self.0.unit.clone(),
        )
        .expect("opposite of a well-shaped algebra")
    }

    /// Same data with one structure constant replaced; used to build broken
    /// fixtures.
    pub fn with_product(&self, i: usize, j: usize, value: Vec<Scalar>) -> Result<GradedAlgebra> {
        let mut table = self.0.table.clone();
        table[i][j] = value;
        GradedAlgebra::with_labels(
            self.group().clone(),
            self.field(),
            self.0.degrees.clone(),
            self.0.labels.clone(),
            table,
            self.0.unit.clone(),
        )
    }

    /// Same data with new degree labels.
    pub fn regraded(&self, degrees: Vec<GroupElt>) -> Result<GradedAlgebra> {
        GradedAlgebra::with_labels(
            self.group().clone(),
            self.field(),
            degrees,
            self.0.labels.clone(),
            self.0.table.clone(),
            self.0.unit.clone(),
        )
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.0.group
    }

    pub fn field(&self) -> Field {
        self.0.field
    }

    pub fn dim(&self) -> usize {
        self.0.degrees.len()
    }

    pub fn degree(&self, i: usize) -> GroupElt {
        self.0.degrees[i]
    }

    pub fn degrees(&self) -> &[GroupElt] {
        &self.0.degrees
    }

    pub fn labels(&self) -> &[String] {
        &self.0.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.0.labels[i]
    }

    pub fn table(&self) -> &[Vec<Vec<Scalar>>] {
        &self.0.table
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.0.unit
    }

    pub fn zero_vector(&self) -> Vec<Scalar> {
        vec![self.field().zero(); self.dim()]
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        unit_vector(self.field(), self.dim(), i)
    }

    /// Coordinates of `e_i·e_j`.
    pub fn product(&self, i: usize, j: usize) -> &[Scalar] {
        &self.0.table[i][j]
    }

    /// Matrix of `x ↦ e_i·x`.
    pub fn left_mult(&self, i: usize) -> &Matrix {
        &self.0.left[i]
    }

    /// Matrix of `x ↦ x·e_i`.
    pub fn right_mult(&self, i: usize) -> &Matrix {
        &self.0.right[i]
    }

    pub fn left_mult_by(&self, a: &[Scalar]) -> Matrix {
        combine(self.field(), self.dim(), &self.0.left, a)
    }

    pub fn right_mult_by(&self, a: &[Scalar]) -> Matrix {
        combine(self.field(), self.dim(), &self.0.right, a)
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut out = self.zero_vector();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = xi * yj;
                for (o, t) in out.iter_mut().zip(&self.0.table[i][j]) {
                    if !t.is_zero() {
                        *o = &*o + &(&c * t);
                    }
                }
            }
        }
        out
    }

    /// Basis indices that generate the algebra together with 1, chosen
    /// greedily in index order.
    pub fn generators(&self) -> &[usize] {
        self.0.generators.get_or_init(|| {
            let d = self.dim();
            let mut gens = Vec::new();
            let mut closure = vec![self.unit().to_vec()];
            for i in 0..d {
                let e = self.basis_vector(i);
                if Span::new(self.field(), d, &closure).contains(&e) {
                    continue;
                }
                gens.push(i);
                closure = self.close_under_products(closure, e);
            }
            gens
        })
    }

    fn close_under_products(&self, mut vectors: Vec<Vec<Scalar>>, extra: Vec<Scalar>) -> Vec<Vec<Scalar>> {
        let d = self.dim();
        let mut span = Span::new(self.field(), d, &vectors);
        let mut queue = vec![extra];
        while let Some(v) = queue.pop() {
            if span.contains(&v) {
                continue;
            }
            vectors.push(v.clone());
            span = Span::new(self.field(), d, &vectors);
            for w in vectors.clone() {
                queue.push(self.mul(&v, &w));
                queue.push(self.mul(&w, &v));
            }
        }
        vectors
    }

    pub fn basis_of_degree(&self, g: GroupElt) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.degree(i) == g).collect()
    }

    /// `dim A_g` for each group element in index order.
    pub fn component_dims(&self) -> Vec<usize> {
        let mut dims = vec![0; self.group().order()];
        for &g in self.degrees() {
            dims[g] += 1;
        }
        dims
    }

    /// Whether `x` lies in `A_g`.
    pub fn is_in_degree(&self, x: &[Scalar], g: GroupElt) -> bool {
        x.iter()
            .enumerate()
            .all(|(i, c)| c.is_zero() || self.degree(i) == g)
    }

    /// The degree of a nonzero homogeneous element.
    pub fn homogeneous_degree(&self, x: &[Scalar]) -> Option<GroupElt> {
        let first = x.iter().position(|c| !c.is_zero())?;
        let g = self.degree(first);
        self.is_in_degree(x, g).then_some(g)
    }

    /// Human-readable linear combination of basis labels.
    pub fn format(&self, x: &[Scalar]) -> String {
        format_combination(self.labels(), x)
    }
}

impl fmt::Display for GradedAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dims: Vec<String> = self.component_dims().iter().map(usize::to_string).collect();
        write!(
            f,
            "graded algebra over {} of dimension {} (components {})",
            self.field(),
            self.dim(),
            dims.join(",")
        )
    }
}

fn combine(field: Field, d: usize, mats: &[Matrix], coeffs: &[Scalar]) -> Matrix {
    let mut out = Matrix::zeros(field, d, d);
    for (m, c) in mats.iter().zip(coeffs) {
        if !c.is_zero() {
            out = out.add(&m.scale(c));
        }
    }
    out
}

/// `"2·a + b"`, or `"0"`.
pub fn format_combination(labels: &[String], x: &[Scalar]) -> String {
    let terms: Vec<String> = x
        .iter()
        .zip(labels)
        .filter(|(c, _)| !c.is_zero())
        .map(|(c, l)| if c.is_one() { l.clone() } else { format!("{}·{l}", short(c)) })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

/// Associativity, unit and grading axioms on basis elements. Each axiom
/// yields one entry; failures carry the first offending basis tuple.
pub fn check_graded_algebra(a: &GradedAlgebra) -> ValidationReport {
    let mut report = ValidationReport::new();
    let d = a.dim();
    let g = a.group();

    let mut witness = None;
    'assoc: for i in 0..d {
        for j in 0..d {
            let ij = a.product(i, j);
            for k in 0..d {
                let lhs = a.right_mult(k).apply(ij);
                let rhs = a.left_mult(i).apply(a.product(j, k));
                if lhs != rhs {
                    witness = Some(json!({
                        "triple": [a.label(i), a.label(j), a.label(k)],
                        "left": a.format(&lhs),
                        "right": a.format(&rhs),
                    }));
                    break 'assoc;
                }
            }
        }
    }
    report.record("Associativity", "(xy)z = x(yz)", witness);

    let one = a.unit();
    let witness = (0..d).find_map(|i| {
        let e = a.basis_vector(i);
        let ok = a.mul(one, &e) == e && a.mul(&e, one) == e;
        (!ok).then(|| json!({ "element": a.label(i) }))
    });
    report.record("Unit", "1x = x = x1", witness);

    let homogeneous = d == 0 || (!is_zero_vec(one) && a.is_in_degree(one, g.identity()));
    report.expect(
        "UnitDegree",
        "1 ∈ A_1",
        homogeneous,
        json!({ "unit": a.format(one) }),
    );

    let mut witness = None;
    'grading: for i in 0..d {
        for j in 0..d {
            let target = g.mul(a.degree(i), a.degree(j));
            if !a.is_in_degree(a.product(i, j), target) {
                witness = Some(json!({
                    "pair": [a.label(i), a.label(j)],
                    "degrees": [g.label(a.degree(i)), g.label(a.degree(j))],
                    "product": a.format(a.product(i, j)),
                }));
                break 'grading;
            }
        }
    }
    report.record("Grading", "A_g A_h ⊆ A_gh", witness);
    report
}

/// A graded subalgebra carried as an algebra in its own right, together
/// with the coordinates of its basis in the ambient algebra.
#[derive(Clone, Debug)]
pub struct SubalgebraEmbedding {
    ambient: GradedAlgebra,
    sub: GradedAlgebra,
    inclusion: Matrix,
    span: Span,
}

impl SubalgebraEmbedding {
    /// Subalgebra spanned by `vectors`, each nonzero and homogeneous, which
    /// become the basis of the sub-algebra in the given order.
    pub fn from_homogeneous(
        ambient: &GradedAlgebra,
        vectors: Vec<Vec<Scalar>>,
        labels: Option<Vec<String>>,
    ) -> Result<SubalgebraEmbedding> {
        let field = ambient.field();
        let d = ambient.dim();
        let k = vectors.len();
        let mut degrees = Vec::with_capacity(k);
        for v in &vectors {
            if v.len() != d {
                return Err(Error::Shape(format!("vector of length {} in dimension {d}", v.len())));
            }
            let g = ambient
                .homogeneous_degree(v)
                .ok_or_else(|| Error::NotSubalgebra(format!("{} is not homogeneous", ambient.format(v))))?;
            degrees.push(g);
        }
        let span = Span::new(field, d, &vectors);
        if span.dim() != k {
            return Err(Error::NotSubalgebra("spanning vectors are dependent".into()));
        }
        let mut table = Vec::with_capacity(k);
        for x in &vectors {
            let mut row = Vec::with_capacity(k);
            for y in &vectors {
                let xy = ambient.mul(x, y);
                let c = span.coords(&xy).ok_or_else(|| {
                    Error::NotSubalgebra(format!(
                        "({})·({}) leaves the span",
                        ambient.format(x),
                        ambient.format(y)
                    ))
                })?;
                row.push(c);
            }
            table.push(row);
        }
        let unit = span
            .coords(ambient.unit())
            .ok_or_else(|| Error::NotSubalgebra("span does not contain 1".into()))?;
        let labels = labels.unwrap_or_else(|| vectors.iter().map(|v| ambient.format(v)).collect());
        let sub = GradedAlgebra::with_labels(ambient.group().clone(), field, degrees, labels, table, unit)?;
        let inclusion = Matrix::from_columns(field, d, &vectors);
        Ok(SubalgebraEmbedding {
            ambient: ambient.clone(),
            sub,
            inclusion,
            span,
        })
    }

    /// The whole algebra inside itself.
    pub fn identity(a: &GradedAlgebra) -> SubalgebraEmbedding {
        let d = a.dim();
        SubalgebraEmbedding {
            ambient: a.clone(),
            sub: a.clone(),
            inclusion: Matrix::identity(a.field(), d),
            span: Span::new(a.field(), d, &(0..d).map(|i| a.basis_vector(i)).collect::<Vec<_>>()),
        }
    }

    pub fn ambient(&self) -> &GradedAlgebra {
        &self.ambient
    }

    pub fn sub(&self) -> &GradedAlgebra {
        &self.sub
    }

    /// Ambient coordinates of the sub-basis, one column each.
    pub fn inclusion(&self) -> &Matrix {
        &self.inclusion
    }

    /// Ambient coordinates of the sub-basis vectors.
    pub fn vectors(&self) -> Vec<Vec<Scalar>> {
        (0..self.inclusion.cols()).map(|c| self.inclusion.column(c)).collect()
    }

    pub fn embed(&self, x: &[Scalar]) -> Vec<Scalar> {
        self.inclusion.apply(x)
    }

    /// Sub-coordinates of an ambient element, if it lies in the subalgebra.
    pub fn restrict(&self, x: &[Scalar]) -> Option<Vec<Scalar>> {
        self.span.coords(x)
    }

    pub fn contains(&self, x: &[Scalar]) -> bool {
        self.span.contains(x)
    }

    /// Equality of images as subspaces of the ambient algebra.
    pub fn same_subspace(&self, other: &SubalgebraEmbedding) -> bool {
        self.ambient == other.ambient
            && self.span.dim() == other.span.dim()
            && other.vectors().iter().all(|v| self.contains(v))
    }
}

/// `B = A_1`, spanned by the degree-1 basis vectors.
pub fn identity_component(a: &GradedAlgebra) -> Result<SubalgebraEmbedding> {
    let basis = a.basis_of_degree(a.group().identity());
    let vectors = basis.iter().map(|&i| a.basis_vector(i)).collect();
    let labels = basis.iter().map(|&i| a.label(i).to_string()).collect();
    SubalgebraEmbedding::from_homogeneous(a, vectors, Some(labels))
}

/// A choice of invertible homogeneous `u_g ∈ A_g` for every `g`, with `u_1 = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct CrossedProductData {
    algebra: GradedAlgebra,
    units: Vec<Vec<Scalar>>,
    inverses: Vec<Vec<Scalar>>,
}

impl CrossedProductData {
    /// Validates a unit choice: `units[g]` homogeneous of degree `g`,
    /// invertible, and `units[1] = 1`.
    pub fn new(algebra: &GradedAlgebra, units: Vec<Vec<Scalar>>) -> Result<CrossedProductData> {
        let group = algebra.group();
        if units.len() != group.order() {
            return Err(Error::Shape(format!("{} units for a group of order {}", units.len(), group.order())));
        }
        if units[0] != algebra.unit() {
            return Err(Error::Invariant("u_1 must be the unit".into()));
        }
        let mut inverses = Vec::with_capacity(units.len());
        for (g, u) in units.iter().enumerate() {
            if u.len() != algebra.dim() || !algebra.is_in_degree(u, g) || is_zero_vec(u) {
                return Err(Error::Invariant(format!("u_{} is not a nonzero element of degree {}", group.label(g), group.label(g))));
            }
            let inv = algebra
                .left_mult_by(u)
                .solve_vector(algebra.unit())?
                .filter(|v| algebra.mul(v, u) == algebra.unit())
                .ok_or(Error::NotCrossedProduct(g))?;
            inverses.push(inv);
        }
        Ok(CrossedProductData {
            algebra: algebra.clone(),
            units,
            inverses,
        })
    }

    /// Searches each component for an invertible element.
    pub fn find(algebra: &GradedAlgebra) -> Result<CrossedProductData> {
        let group = algebra.group();
        let field = algebra.field();
        let mut units = vec![algebra.unit().to_vec()];
        for g in group.elements().skip(1) {
            let basis = algebra.basis_of_degree(g);
            let mats: Vec<Matrix> = basis.iter().map(|&i| algebra.left_mult(i).clone()).collect();
            let (coeffs, _) = invertible_combination(field, algebra.dim(), &mats)?
                .ok_or(Error::NotCrossedProduct(g))?;
            let mut u = algebra.zero_vector();
            for (&i, c) in basis.iter().zip(coeffs) {
                u[i] = c;
            }
            units.push(u);
        }
        CrossedProductData::new(algebra, units)
    }

    pub fn algebra(&self) -> &GradedAlgebra {
        &self.algebra
    }

    pub fn unit(&self, g: GroupElt) -> &[Scalar] {
        &self.units[g]
    }

    pub fn inverse(&self, g: GroupElt) -> &[Scalar] {
        &self.inverses[g]
    }

    pub fn units(&self) -> &[Vec<Scalar>] {
        &self.units
    }

    /// `u_g·x·u_g⁻¹`
    pub fn conjugate(&self, g: GroupElt, x: &[Scalar]) -> Vec<Scalar> {
        let a = &self.algebra;
        a.mul(&a.mul(&self.units[g], x), &self.inverses[g])
    }
}

/// Invertible homogeneous units for every component, or `None`.
pub fn find_crossed_product(a: &GradedAlgebra) -> Option<CrossedProductData> {
    CrossedProductData::find(a).ok()
}

/// Graded algebra with one linear map per group element. The axioms
/// (automorphisms, composition, degree law) are checked by
/// `check_g_acted_algebra`.
#[derive(Clone, Debug, PartialEq)]
pub struct GActedAlgebra {
    algebra: GradedAlgebra,
    action: Vec<Matrix>,
}

impl GActedAlgebra {
    pub fn new(algebra: GradedAlgebra, action: Vec<Matrix>) -> Result<GActedAlgebra> {
        let d = algebra.dim();
        if action.len() != algebra.group().order() {
            return Err(Error::Shape("one action matrix per group element".into()));
        }
        if action.iter().any(|m| m.rows() != d || m.cols() != d || m.field() != algebra.field()) {
            return Err(Error::Shape(format!("action matrices must be {d}×{d} over {}", algebra.field())));
        }
        Ok(GActedAlgebra { algebra, action })
    }

    /// Every group element acting as the identity.
    pub fn trivial(algebra: GradedAlgebra) -> GActedAlgebra {
        let id = Matrix::identity(algebra.field(), algebra.dim());
        let action = vec![id; algebra.group().order()];
        GActedAlgebra { algebra, action }
    }

    pub fn algebra(&self) -> &GradedAlgebra {
        &self.algebra
    }

    pub fn action(&self, g: GroupElt) -> &Matrix {
        &self.action[g]
    }

    pub fn actions(&self) -> &[Matrix] {
        &self.action
    }

    /// `ᵍc`
    pub fn act(&self, g: GroupElt, c: &[Scalar]) -> Vec<Scalar> {
        self.action[g].apply(c)
    }

    /// The degree-1 part with the restricted action, and its embedding.
    pub fn identity_component(&self) -> Result<(SubalgebraEmbedding, GActedAlgebra)> {
        let emb = identity_component(&self.algebra)?;
        let field = self.algebra.field();
        let mut action = Vec::with_capacity(self.action.len());
        for (g, m) in self.action.iter().enumerate() {
            let cols = emb
                .vectors()
                .iter()
                .map(|v| emb.restrict(&m.apply(v)).ok_or(Error::ActionLeavesCentralizer(g)))
                .collect::<Result<Vec<_>>>()?;
            action.push(Matrix::from_columns(field, emb.sub().dim(), &cols));
        }
        let acted = GActedAlgebra::new(emb.sub().clone(), action)?;
        Ok((emb, acted))
    }
}

/// A linear map between algebras given by its matrix in the two bases.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraHom {
    source: GradedAlgebra,
    target: GradedAlgebra,
    matrix: Matrix,
}

impl AlgebraHom {
    pub fn new(source: GradedAlgebra, target: GradedAlgebra, matrix: Matrix) -> Result<AlgebraHom> {
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(Error::Shape(format!(
                "map matrix is {}×{}, expected {}×{}",
                matrix.rows(),
                matrix.cols(),
                target.dim(),
                source.dim()
            )));
        }
        if source.field() != target.field() || matrix.field() != source.field() {
            return Err(Error::FieldMismatch("algebra map across fields".into()));
        }
        Ok(AlgebraHom {
            source,
            target,
            matrix,
        })
    }

    pub fn source(&self) -> &GradedAlgebra {
        &self.source
    }

    pub fn target(&self) -> &GradedAlgebra {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, x: &[Scalar]) -> Vec<Scalar> {
        self.matrix.apply(x)
    }

    /// `other ∘ self`
    pub fn then(&self, other: &AlgebraHom) -> Result<AlgebraHom> {
        if self.target != other.source {
            return Err(Error::AlgebraMismatch("composing maps with different middle algebras".into()));
        }
        AlgebraHom::new(self.source.clone(), other.target.clone(), other.matrix.mul(&self.matrix))
    }

    /// Unital and multiplicative; also degree-preserving when `graded`.
    pub fn report(&self, graded: bool) -> ValidationReport {
        let (s, t) = (&self.source, &self.target);
        let mut report = ValidationReport::new();
        let image_of_one = self.apply(s.unit());
        report.expect(
            "Unital",
            "φ(1) = 1",
            image_of_one == t.unit(),
            json!({ "image_of_one": t.format(&image_of_one) }),
        );
        let images: Vec<Vec<Scalar>> = (0..s.dim()).map(|i| self.matrix.column(i)).collect();
        let witness = (0..s.dim()).find_map(|i| {
            (0..s.dim()).find_map(|j| {
                let lhs = self.apply(s.product(i, j));
                let rhs = t.mul(&images[i], &images[j]);
                (lhs != rhs).then(|| {
                    json!({
                        "pair": [s.label(i), s.label(j)],
                        "image_of_product": t.format(&lhs),
                        "product_of_images": t.format(&rhs),
                    })
                })
            })
        });
        report.record("Multiplicative", "φ(xy) = φ(x)φ(y)", witness);
        if graded {
            let witness = (0..s.dim()).find_map(|i| {
                (!t.is_in_degree(&images[i], s.degree(i))).then(|| {
                    json!({
                        "element": s.label(i),
                        "degree": s.group().label(s.degree(i)),
                        "image": t.format(&images[i]),
                    })
                })
            });
            report.record("Graded", "φ(A_h) ⊆ A′_h", witness);
        }
        report
    }
}

/// `C_A(S)`, solved one degree at a time as the kernel of `a ↦ as − sa`
/// over homogeneous `a`.
pub fn centralizer(a: &GradedAlgebra, s: &SubalgebraEmbedding) -> Result<SubalgebraEmbedding> {
    if s.ambient() != a {
        return Err(Error::AlgebraMismatch("subalgebra does not live in this algebra".into()));
    }
    let field = a.field();
    let d = a.dim();
    let blocks: Vec<Matrix> = s
        .vectors()
        .iter()
        .map(|v| a.right_mult_by(v).sub(&a.left_mult_by(v)))
        .collect();
    let rows: Vec<Vec<Scalar>> = blocks.iter().flat_map(Matrix::to_rows).collect();
    let constraints = Matrix::from_rows(field, rows)?;
    let constraints = if constraints.rows() == 0 {
        Matrix::zeros(field, 0, d)
    } else {
        constraints
    };
    let mut vectors = Vec::new();
    for g in a.group().elements() {
        let cols = a.basis_of_degree(g);
        if cols.is_empty() {
            continue;
        }
        let restricted = Matrix::from_fn(field, constraints.rows(), cols.len(), |r, c| {
            constraints.get(r, cols[c]).clone()
        });
        for k in restricted.kernel_vectors() {
            let mut v = a.zero_vector();
            for (&i, x) in cols.iter().zip(k) {
                v[i] = x;
            }
            vectors.push(v);
        }
    }
    if vectors.len() != constraints.kernel_vectors().len() {
        return Err(Error::NotGraded);
    }
    SubalgebraEmbedding::from_homogeneous(a, vectors, None)
}

/// `Z(B)`
pub fn center_of(b: &GradedAlgebra) -> Result<SubalgebraEmbedding> {
    centralizer(b, &SubalgebraEmbedding::identity(b))
}

/// Conjugation `c ↦ u_g c u_g⁻¹` on a conjugation-stable subalgebra.
pub fn conjugation_action(sub: &SubalgebraEmbedding, cp: &CrossedProductData) -> Result<GActedAlgebra> {
    if sub.ambient() != cp.algebra() {
        return Err(Error::AlgebraMismatch("units belong to a different algebra".into()));
    }
    let field = sub.ambient().field();
    let k = sub.sub().dim();
    let vectors = sub.vectors();
    let mut action = Vec::new();
    for g in sub.ambient().group().elements() {
        let cols = vectors
            .iter()
            .map(|v| sub.restrict(&cp.conjugate(g, v)).ok_or(Error::ActionLeavesCentralizer(g)))
            .collect::<Result<Vec<_>>>()?;
        action.push(Matrix::from_columns(field, k, &cols));
    }
    GActedAlgebra::new(sub.sub().clone(), action)
}

/// The centralizer `C_A(B)` of the identity component with the action
/// `ᵍc = u_g c u_g⁻¹`, together with its embedding into `A`.
pub fn miyashita_action(
    a: &GradedAlgebra,
    b: &SubalgebraEmbedding,
    cp: &CrossedProductData,
) -> Result<(SubalgebraEmbedding, GActedAlgebra)> {
    if !b.same_subspace(&identity_component(a)?) {
        return Err(Error::Invariant("B must be the identity component of A".into()));
    }
    let c = centralizer(a, b)?;
    let acted = conjugation_action(&c, cp)?;
    Ok((c, acted))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c2() -> FiniteGroup {
        FiniteGroup::cyclic(2)
    }

    fn e1() -> GradedAlgebra {
        GradedAlgebra::group_algebra(Field::Rational, &c2(), &c2(), &[0, 1]).unwrap()
    }

    fn e2() -> GradedAlgebra {
        GradedAlgebra::matrix_algebra(Field::Rational, &c2(), &[0, 1])
    }

    fn q(n: i64) -> Scalar {
        Field::Rational.from_i64(n)
    }

    #[test]
    fn e1_structure_constants() {
        let a = e1();
        assert_eq!(a.labels(), ["1", "s"]);
        assert_eq!(a.product(1, 1), [q(1), q(0)]);
        assert!(check_graded_algebra(&a).is_pass());
        // Collapsing the grading keeps every axiom.
        assert!(check_graded_algebra(&a.regraded(vec![0, 0]).unwrap()).is_pass());
    }

    #[test]
    fn e2_degrees_and_broken_associativity() {
        let a = e2();
        assert_eq!(a.labels(), ["E11", "E12", "E21", "E22"]);
        assert_eq!(a.degrees(), [0, 1, 1, 0]);
        assert!(check_graded_algebra(&a).is_pass());
        let broken = a.with_product(1, 2, a.zero_vector()).unwrap();
        let report = check_graded_algebra(&broken);
        let assoc = report.get("Associativity").unwrap();
        assert!(!assoc.passed());
        // (E12·E21)·E12 = 0 but E12·(E21·E12) = E12.
        let triple = assoc.witness["triple"].as_array().unwrap();
        assert_eq!(triple, &[json!("E12"), json!("E21"), json!("E12")]);
    }

    #[test]
    fn grading_violation_is_reported() {
        let bad = GradedAlgebra::matrix_algebra(Field::Rational, &c2(), &[0, 0])
            .regraded(vec![0, 1, 0, 0])
            .unwrap();
        let r = check_graded_algebra(&bad);
        assert!(!r.passed("Grading"));
    }

    #[test]
    fn identity_components() {
        let b = identity_component(&e1()).unwrap();
        assert_eq!(b.sub().dim(), 1);
        let b = identity_component(&e2()).unwrap();
        assert_eq!(b.sub().labels(), ["E11", "E22"]);
        assert!(b.sub().degrees().iter().all(|&g| g == 0));
    }

    #[test]
    fn crossed_product_units() {
        let cp = CrossedProductData::find(&e1()).unwrap();
        assert_eq!(cp.unit(1), [q(0), q(1)]);
        let cp = CrossedProductData::find(&e2()).unwrap();
        assert_eq!(cp.unit(1), [q(0), q(1), q(1), q(0)]);
        assert_eq!(cp.inverse(1), [q(0), q(1), q(1), q(0)]);
    }

    #[test]
    fn dual_numbers_in_degree_s_are_not_a_crossed_product() {
        // Q[x]/(x²) with x of degree s: the degree-s component is Q·x, all nilpotent.
        let f = Field::Rational;
        let table = vec![
            vec![vec![q(1), q(0)], vec![q(0), q(1)]],
            vec![vec![q(0), q(1)], vec![q(0), q(0)]],
        ];
        let a = GradedAlgebra::new(c2(), f, vec![0, 1], table, vec![q(1), q(0)]).unwrap();
        assert!(check_graded_algebra(&a).is_pass());
        assert_eq!(CrossedProductData::find(&a).unwrap_err(), Error::NotCrossedProduct(1));
    }

    #[test]
    fn centralizers() {
        let a = e1();
        let c = centralizer(&a, &identity_component(&a).unwrap()).unwrap();
        assert_eq!(c.sub().component_dims(), [1, 1]);
        let a = e2();
        let c = centralizer(&a, &identity_component(&a).unwrap()).unwrap();
        assert_eq!(c.sub().component_dims(), [2, 0]);
        let ground = SubalgebraEmbedding::from_homogeneous(&a, vec![a.unit().to_vec()], None).unwrap();
        assert_eq!(centralizer(&a, &ground).unwrap().sub().dim(), 4);
    }

    #[test]
    fn miyashita_swaps_diagonal_of_e2() {
        let a = e2();
        let b = identity_component(&a).unwrap();
        let cp = CrossedProductData::find(&a).unwrap();
        let (c, acted) = miyashita_action(&a, &b, &cp).unwrap();
        // c = diag(1, 2) ↦ diag(2, 1)
        let x = c.restrict(&[q(1), q(0), q(0), q(2)]).unwrap();
        let y = c.embed(&acted.act(1, &x));
        assert_eq!(y, [q(2), q(0), q(0), q(1)]);
        // Trivial on E1.
        let a = e1();
        let cp = CrossedProductData::find(&a).unwrap();
        let (_, acted) = miyashita_action(&a, &identity_component(&a).unwrap(), &cp).unwrap();
        assert!(acted.actions().iter().all(Matrix::is_identity));
    }

    #[test]
    fn generators_are_small() {
        assert_eq!(e1().generators(), [1]);
        assert_eq!(e2().generators(), [0, 1, 2]);
        let s3 = FiniteGroup::symmetric3();
        let a = GradedAlgebra::group_algebra(Field::prime(7).unwrap(), &s3, &c2(), &[0, 0, 0, 1, 1, 1]).unwrap();
        assert_eq!(a.generators(), [1, 3]);
        assert!(GradedAlgebra::ground(&c2(), Field::Rational).generators().is_empty());
    }

    #[test]
    fn opposite_of_matrix_algebra_transposes_products() {
        let a = e2();
        let op = a.opposite();
        assert_eq!(op.product(1, 2), a.product(2, 1));
        assert!(check_graded_algebra(&op).is_pass());
    }

    #[test]
    fn algebra_hom_checks() {
        let a = e2();
        let b = identity_component(&a).unwrap();
        let inc = AlgebraHom::new(b.sub().clone(), a.clone(), b.inclusion().clone()).unwrap();
        assert!(inc.report(true).is_pass());
        let doubled = AlgebraHom::new(b.sub().clone(), a, b.inclusion().scale(&q(2))).unwrap();
        let r = doubled.report(true);
        assert!(!r.passed("Unital"));
        assert!(!r.passed("Multiplicative"));
    }
}
