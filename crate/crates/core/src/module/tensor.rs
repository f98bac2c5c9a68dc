use crate::error::{Error, Result};
use crate::exact::{Matrix, Scalar, Span};
use crate::group::GroupElt;

use super::{GradedBimodule, GradedModule, Side};

/// `X ⊗_A Y` for an `(R, A)`-bimodule `X` and an `(A, S)`-bimodule `Y`,
/// realized as the plain tensor product modulo the span of
/// `(x·a)⊗y − x⊗(a·y)`. Plain index of `x_i ⊗ y_j` is `i·dim Y + j`.
///
/// The relations are generated degree by degree, so the relation space is
/// spanned by homogeneous vectors by construction. The quotient basis is the
/// set of plain basis vectors that are not pivots of the relation space.
#[derive(Clone, Debug)]
pub struct TensorProduct {
    left_factor: GradedBimodule,
    right_factor: GradedBimodule,
    result: GradedBimodule,
    quotient: Vec<usize>,
    position: Vec<Option<usize>>,
    blocks: Vec<(Vec<usize>, Span)>,
}

impl TensorProduct {
    pub fn bimodule(&self) -> &GradedBimodule {
        &self.result
    }

    pub fn left_factor(&self) -> &GradedBimodule {
        &self.left_factor
    }

    pub fn right_factor(&self) -> &GradedBimodule {
        &self.right_factor
    }

    pub fn dim(&self) -> usize {
        self.quotient.len()
    }

    pub fn plain_dim(&self) -> usize {
        self.left_factor.dim() * self.right_factor.dim()
    }

    /// Dimension of the relation space inside the plain tensor product.
    pub fn relation_dim(&self) -> usize {
        self.blocks.iter().map(|(_, s)| s.dim()).sum()
    }

    /// Factor indices `(i, j)` of the `q`-th quotient basis vector.
    pub fn factors(&self, q: usize) -> (usize, usize) {
        let n = self.right_factor.dim();
        (self.quotient[q] / n, self.quotient[q] % n)
    }

    /// Quotient coordinates of a plain tensor.
    pub fn project(&self, plain: &[Scalar]) -> Vec<Scalar> {
        let field = self.result.field();
        let mut out = vec![field.zero(); self.dim()];
        for (coords, span) in &self.blocks {
            let local: Vec<Scalar> = coords.iter().map(|&p| plain[p].clone()).collect();
            let reduced = span.reduce(&local);
            for (&p, x) in coords.iter().zip(reduced) {
                if let Some(q) = self.position[p] {
                    out[q] = x;
                }
            }
        }
        out
    }

    /// Quotient coordinates of `x ⊗ y`.
    pub fn pure(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let field = self.result.field();
        let n = self.right_factor.dim();
        let mut plain = vec![field.zero(); self.plain_dim()];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if !yj.is_zero() {
                    plain[i * n + j] = xi * yj;
                }
            }
        }
        self.project(&plain)
    }

    /// The linear map out of the quotient determined by the images of the
    /// plain basis vectors `x_i ⊗ y_j`. Fails if those images do not vanish
    /// on the relation space.
    pub fn induced_map<F>(&self, target_dim: usize, image: F) -> Result<Matrix>
    where
        F: Fn(usize, usize) -> Vec<Scalar>,
    {
        let field = self.result.field();
        let n = self.right_factor.dim();
        let images: Vec<Vec<Scalar>> = (0..self.plain_dim()).map(|p| image(p / n, p % n)).collect();
        if let Some(bad) = images.iter().find(|v| v.len() != target_dim) {
            return Err(Error::Shape(format!("image of length {} in dimension {target_dim}", bad.len())));
        }
        for (coords, span) in &self.blocks {
            for rel in span.echelon_basis() {
                let mut total = vec![field.zero(); target_dim];
                for (&p, c) in coords.iter().zip(rel) {
                    if c.is_zero() {
                        continue;
                    }
                    for (t, x) in total.iter_mut().zip(&images[p]) {
                        if !x.is_zero() {
                            *t = &*t + &(c * x);
                        }
                    }
                }
                if total.iter().any(|x| !x.is_zero()) {
                    return Err(Error::Invariant("map is not balanced over the middle algebra".into()));
                }
            }
        }
        let cols: Vec<Vec<Scalar>> = self.quotient.iter().map(|&p| images[p].clone()).collect();
        Ok(Matrix::from_columns(field, target_dim, &cols))
    }
}

/// `X ⊗_A Y` with its residual `(R, S)`-bimodule structure.
pub fn tensor_over(x: &GradedBimodule, y: &GradedBimodule) -> Result<TensorProduct> {
    let a = x.right_algebra();
    if a != y.left_algebra() {
        return Err(Error::AlgebraMismatch("tensor factors meet over different algebras".into()));
    }
    let field = x.field();
    let grp = x.group();
    let (m, n) = (x.dim(), y.dim());
    let plain = m * n;
    let plain_degree = |p: usize| grp.mul(x.degree(p / n), y.degree(p % n));

    let mut block_coords: Vec<Vec<usize>> = vec![Vec::new(); grp.order()];
    let mut local = vec![0; plain];
    for p in 0..plain {
        let g = plain_degree(p);
        local[p] = block_coords[g].len();
        block_coords[g].push(p);
    }
    let mut generators: Vec<Vec<Vec<Scalar>>> = vec![Vec::new(); grp.order()];
    for &k in a.generators() {
        let xk = x.right_action(k);
        let yk = y.left_action(k);
        for i in 0..m {
            for j in 0..n {
                let g: GroupElt = grp.mul(grp.mul(x.degree(i), a.degree(k)), y.degree(j));
                let mut v = vec![field.zero(); block_coords[g].len()];
                let mut homogeneous = true;
                for ip in 0..m {
                    let c = xk.get(ip, i);
                    if c.is_zero() {
                        continue;
                    }
                    let p = ip * n + j;
                    homogeneous &= plain_degree(p) == g;
                    v[local[p]] = &v[local[p]] + c;
                }
                for jp in 0..n {
                    let c = yk.get(jp, j);
                    if c.is_zero() {
                        continue;
                    }
                    let p = i * n + jp;
                    homogeneous &= plain_degree(p) == g;
                    v[local[p]] = &v[local[p]] - c;
                }
                if !homogeneous {
                    return Err(Error::Invariant(format!(
                        "relation for ({}, {}, {}) is not homogeneous",
                        x.label(i),
                        a.label(k),
                        y.label(j)
                    )));
                }
                if v.iter().any(|s| !s.is_zero()) {
                    generators[g].push(v);
                }
            }
        }
    }

    let mut blocks = Vec::new();
    let mut is_pivot = vec![false; plain];
    for (coords, gens) in block_coords.into_iter().zip(generators) {
        if coords.is_empty() {
            continue;
        }
        let span = Span::new(field, coords.len(), &gens);
        for &p in span.pivots() {
            is_pivot[coords[p]] = true;
        }
        blocks.push((coords, span));
    }
    let quotient: Vec<usize> = (0..plain).filter(|&p| !is_pivot[p]).collect();
    let mut position = vec![None; plain];
    for (q, &p) in quotient.iter().enumerate() {
        position[p] = Some(q);
    }

    let mut product = TensorProduct {
        left_factor: x.clone(),
        right_factor: y.clone(),
        result: GradedBimodule::zero(x.left_algebra(), y.right_algebra())?,
        quotient,
        position,
        blocks,
    };

    let dim = product.dim();
    let column_images = |f: &dyn Fn(usize, usize) -> Vec<Scalar>| -> Matrix {
        let cols: Vec<Vec<Scalar>> = (0..dim).map(|q| {
            let (i, j) = product.factors(q);
            product.project(&f(i, j))
        }).collect();
        Matrix::from_columns(field, dim, &cols)
    };
    let left_action: Vec<Matrix> = (0..x.left_algebra().dim())
        .map(|r| {
            let act = x.left_action(r);
            column_images(&|i, j| {
                let mut v = vec![field.zero(); plain];
                for ip in 0..m {
                    let c = act.get(ip, i);
                    if !c.is_zero() {
                        v[ip * n + j] = c.clone();
                    }
                }
                v
            })
        })
        .collect();
    let right_action: Vec<Matrix> = (0..y.right_algebra().dim())
        .map(|s| {
            let act = y.right_action(s);
            column_images(&|i, j| {
                let mut v = vec![field.zero(); plain];
                for jp in 0..n {
                    let c = act.get(jp, j);
                    if !c.is_zero() {
                        v[i * n + jp] = c.clone();
                    }
                }
                v
            })
        })
        .collect();
    let degrees = product.quotient.iter().map(|&p| plain_degree(p)).collect();
    let labels = product
        .quotient
        .iter()
        .map(|&p| format!("{}⊗{}", x.label(p / n), y.label(p % n)))
        .collect();
    product.result = GradedBimodule::new(
        x.left_algebra().clone(),
        y.right_algebra().clone(),
        degrees,
        left_action,
        right_action,
    )?
    .with_labels(labels)?;
    Ok(product)
}

/// `X ⊗_A Y` for a left `A`-module `Y`, as a left module over the left
/// algebra of `X`.
pub fn apply_functor(x: &GradedBimodule, y: &GradedModule) -> Result<(GradedModule, TensorProduct)> {
    if y.side() != Side::Left {
        return Err(Error::SideMismatch("functors act on left modules".into()));
    }
    let t = tensor_over(x, y.as_bimodule())?;
    Ok((t.bimodule().left_module(), t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{identity_component, GradedAlgebra};
    use crate::exact::Field;
    use crate::group::FiniteGroup;
    use crate::module::{check_bimodule, is_graded_iso};

    #[test]
    fn unit_law_for_regular_bimodule() {
        let c2 = FiniteGroup::cyclic(2);
        let e2 = GradedAlgebra::matrix_algebra(Field::Rational, &c2, &[0, 1]);
        let a = GradedBimodule::regular(&e2);
        let m = GradedModule::regular_left(&e2);
        let (fm, t) = apply_functor(&a, &m).unwrap();
        assert_eq!(t.dim(), 4);
        assert_eq!(t.relation_dim(), 12);
        assert!(is_graded_iso(&fm, &m).unwrap().is_some());
        assert!(check_bimodule(t.bimodule()).is_pass());
    }

    #[test]
    fn tensor_over_identity_component_of_e1() {
        let c2 = FiniteGroup::cyclic(2);
        let e1 = GradedAlgebra::group_algebra(Field::Rational, &c2, &c2, &[0, 1]).unwrap();
        let b = identity_component(&e1).unwrap();
        // A as an (A, B)-bimodule and as a (B, A)-bimodule.
        let reg = GradedBimodule::regular(&e1);
        let inc = crate::algebra::AlgebraHom::new(b.sub().clone(), e1.clone(), b.inclusion().clone()).unwrap();
        let id = crate::algebra::AlgebraHom::new(e1.clone(), e1.clone(), Matrix::identity(Field::Rational, 2)).unwrap();
        let ab = reg.restrict(&id, &inc).unwrap();
        let ba = reg.restrict(&inc, &id).unwrap();
        let t = tensor_over(&ab, &ba).unwrap();
        assert_eq!(t.dim(), 4);
    }

    #[test]
    fn induced_map_detects_unbalanced_maps() {
        let c2 = FiniteGroup::cyclic(2);
        let e1 = GradedAlgebra::group_algebra(Field::Rational, &c2, &c2, &[0, 1]).unwrap();
        let reg = GradedBimodule::regular(&e1);
        let t = tensor_over(&reg, &reg).unwrap();
        // Multiplication is balanced.
        let mul = t.induced_map(2, |i, j| e1.product(i, j).to_vec()).unwrap();
        assert!(mul.is_invertible());
        // Projection onto the first factor is not.
        let first = t.induced_map(2, |i, _| e1.basis_vector(i));
        assert!(first.is_err());
    }
}
