use crate::error::{Error, Result};
use crate::exact::{invertible_combination, Field, Matrix, Scalar, Span};
use crate::group::{stabilizer_closure, GroupElt, Subgroup};

use super::{suspend, GradedModule, Side};

/// Homogeneous basis of `Hom_A(M, N)`. A map of degree `g` sends `M_x`
/// into `N_xg` for left modules and into `N_gx` for right modules.
#[derive(Clone, Debug)]
pub struct HomSpace {
    source: GradedModule,
    target: GradedModule,
    basis: Vec<Matrix>,
    degrees: Vec<GroupElt>,
    span: Span,
}

impl HomSpace {
    pub fn source(&self) -> &GradedModule {
        &self.source
    }

    pub fn target(&self) -> &GradedModule {
        &self.target
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Matrix] {
        &self.basis
    }

    pub fn degrees(&self) -> &[GroupElt] {
        &self.degrees
    }

    pub fn degree(&self, k: usize) -> GroupElt {
        self.degrees[k]
    }

    /// `dim Hom_g` for each group element in index order.
    pub fn dims_per_degree(&self) -> Vec<usize> {
        let mut dims = vec![0; self.source.group().order()];
        for &g in &self.degrees {
            dims[g] += 1;
        }
        dims
    }

    pub fn component(&self, g: GroupElt) -> Vec<&Matrix> {
        self.basis
            .iter()
            .zip(&self.degrees)
            .filter(|(_, &d)| d == g)
            .map(|(m, _)| m)
            .collect()
    }

    /// Coordinates of `f` in the basis, if `f` is `A`-linear.
    pub fn coords(&self, f: &Matrix) -> Option<Vec<Scalar>> {
        if f.rows() != self.target.dim() || f.cols() != self.source.dim() {
            return None;
        }
        self.span.coords(f.entries())
    }

    pub fn contains(&self, f: &Matrix) -> bool {
        self.coords(f).is_some()
    }

    pub fn combination(&self, coeffs: &[Scalar]) -> Matrix {
        let f = self.source.field();
        let mut out = Matrix::zeros(f, self.target.dim(), self.source.dim());
        for (b, c) in self.basis.iter().zip(coeffs) {
            if !c.is_zero() {
                out = out.add(&b.scale(c));
            }
        }
        out
    }
}

fn compatible(m: &GradedModule, n: &GradedModule) -> Result<()> {
    if m.algebra() != n.algebra() {
        return Err(Error::AlgebraMismatch("Hom between modules over different algebras".into()));
    }
    if m.side() != n.side() {
        return Err(Error::SideMismatch(format!("{} vs {} module", m.side(), n.side())));
    }
    Ok(())
}

/// Entries `(r, c)` a degree-`g` map may use.
fn allowed_entries(m: &GradedModule, n: &GradedModule, g: GroupElt) -> Vec<(usize, usize)> {
    let grp = m.group();
    let mut out = Vec::new();
    for r in 0..n.dim() {
        for c in 0..m.dim() {
            let shifted = match m.side() {
                Side::Left => grp.mul(m.degree(c), g),
                Side::Right => grp.mul(g, m.degree(c)),
            };
            if n.degree(r) == shifted {
                out.push((r, c));
            }
        }
    }
    out
}

/// Basis of the maps `F: field^m → field^n` supported on `allowed` with
/// `F·X = Y·F` for every pair `(X, Y)`, in reduced echelon form.
pub(crate) fn intertwiners(
    field: Field,
    n: usize,
    m: usize,
    pairs: &[(&Matrix, &Matrix)],
    allowed: &[(usize, usize)],
) -> Vec<Matrix> {
    let nv = allowed.len();
    let mut basis: Vec<Vec<Scalar>> = (0..nv)
        .map(|v| {
            let mut e = vec![field.zero(); nv];
            e[v] = field.one();
            e
        })
        .collect();
    for (x, y) in pairs {
        if basis.is_empty() {
            break;
        }
        let k = basis.len();
        let mut image = vec![vec![field.zero(); k]; n * m];
        for (j, b) in basis.iter().enumerate() {
            for (v, coef) in b.iter().enumerate() {
                if coef.is_zero() {
                    continue;
                }
                let (r, c) = allowed[v];
                for cp in 0..m {
                    let xv = x.get(c, cp);
                    if !xv.is_zero() {
                        let cell = &mut image[r * m + cp][j];
                        *cell = &*cell + &(coef * xv);
                    }
                }
                for rp in 0..n {
                    let yv = y.get(rp, r);
                    if !yv.is_zero() {
                        let cell = &mut image[rp * m + c][j];
                        *cell = &*cell - &(coef * yv);
                    }
                }
            }
        }
        image.retain(|row| row.iter().any(|s| !s.is_zero()));
        if image.is_empty() {
            continue;
        }
        let system = Matrix::from_rows(field, image).expect("rectangular");
        basis = system
            .kernel_vectors()
            .into_iter()
            .map(|w| {
                let mut v = vec![field.zero(); nv];
                for (wj, bj) in w.iter().zip(&basis) {
                    if wj.is_zero() {
                        continue;
                    }
                    for (vi, bi) in v.iter_mut().zip(bj) {
                        if !bi.is_zero() {
                            *vi = &*vi + &(wj * bi);
                        }
                    }
                }
                v
            })
            .collect();
    }
    let flat: Vec<Vec<Scalar>> = basis
        .iter()
        .map(|b| {
            let mut f = vec![field.zero(); n * m];
            for (v, coef) in b.iter().enumerate() {
                let (r, c) = allowed[v];
                f[r * m + c] = coef.clone();
            }
            f
        })
        .collect();
    Span::new(field, n * m, &flat)
        .echelon_basis()
        .iter()
        .map(|row| Matrix::from_fn(field, n, m, |r, c| row[r * m + c].clone()))
        .collect()
}

fn action_pairs<'a>(m: &'a GradedModule, n: &'a GradedModule) -> Vec<(&'a Matrix, &'a Matrix)> {
    m.algebra()
        .generators()
        .iter()
        .map(|&i| (m.action(i), n.action(i)))
        .collect()
}

/// The degree-`g` component of `Hom_A(M, N)`.
pub fn hom_component(m: &GradedModule, n: &GradedModule, g: GroupElt) -> Result<Vec<Matrix>> {
    compatible(m, n)?;
    let allowed = allowed_entries(m, n, g);
    Ok(intertwiners(m.field(), n.dim(), m.dim(), &action_pairs(m, n), &allowed))
}

/// `Hom_A(M, N)` with a basis of homogeneous maps, one degree at a time.
pub fn hom_graded(m: &GradedModule, n: &GradedModule) -> Result<HomSpace> {
    compatible(m, n)?;
    let mut basis = Vec::new();
    let mut degrees = Vec::new();
    for g in m.group().elements() {
        for f in hom_component(m, n, g)? {
            basis.push(f);
            degrees.push(g);
        }
    }
    let flat: Vec<Vec<Scalar>> = basis.iter().map(|b| b.entries().to_vec()).collect();
    let span = Span::new(m.field(), n.dim() * m.dim(), &flat);
    Ok(HomSpace {
        source: m.clone(),
        target: n.clone(),
        basis,
        degrees,
        span,
    })
}

/// An invertible degree-1 homomorphism `M → N`, if any.
pub fn is_graded_iso(m: &GradedModule, n: &GradedModule) -> Result<Option<Matrix>> {
    compatible(m, n)?;
    if m.component_dims() != n.component_dims() {
        return Ok(None);
    }
    let basis = hom_component(m, n, m.group().identity())?;
    Ok(invertible_combination(m.field(), m.dim(), &basis)?.map(|(_, f)| f))
}

/// Whether `f` is an `A`-linear map `M → N` of degree `g`.
pub fn is_graded_map(m: &GradedModule, n: &GradedModule, f: &Matrix, g: GroupElt) -> bool {
    if compatible(m, n).is_err() || f.rows() != n.dim() || f.cols() != m.dim() {
        return false;
    }
    let allowed = allowed_entries(m, n, g);
    let supported = (0..n.dim()).all(|r| {
        (0..m.dim()).all(|c| f.get(r, c).is_zero() || allowed.binary_search(&(r, c)).is_ok())
    });
    supported
        && m.actions()
            .iter()
            .zip(n.actions())
            .all(|(x, y)| f.mul(x) == y.mul(f))
}

/// `G_M = {g | M ≅ M(g)}`.
pub fn stabilizer(m: &GradedModule) -> Result<Subgroup> {
    let mut members = Vec::new();
    for g in m.group().elements() {
        if is_graded_iso(m, &suspend(m, g))?.is_some() {
            members.push(g);
        }
    }
    stabilizer_closure(m.group(), &members)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::GradedAlgebra;
    use crate::group::FiniteGroup;
    use crate::module::direct_sum;

    fn c2() -> FiniteGroup {
        FiniteGroup::cyclic(2)
    }

    #[test]
    fn endomorphisms_of_regular_modules() {
        let e1 = GradedAlgebra::group_algebra(Field::Rational, &c2(), &c2(), &[0, 1]).unwrap();
        let a = GradedModule::regular_left(&e1);
        let h = hom_graded(&a, &a).unwrap();
        assert_eq!(h.dims_per_degree(), [1, 1]);
        let e2 = GradedAlgebra::matrix_algebra(Field::Rational, &c2(), &[0, 1]);
        let a = GradedModule::regular_left(&e2);
        let h = hom_graded(&a, &a).unwrap();
        assert_eq!(h.dims_per_degree(), [2, 2]);
        for (f, &g) in h.basis().iter().zip(h.degrees()) {
            assert!(is_graded_map(&a, &a, f, g));
        }
    }

    #[test]
    fn hom_rejects_mismatched_inputs() {
        let e1 = GradedAlgebra::group_algebra(Field::Rational, &c2(), &c2(), &[0, 1]).unwrap();
        let e2 = GradedAlgebra::matrix_algebra(Field::Rational, &c2(), &[0, 1]);
        let a = GradedModule::regular_left(&e1);
        let b = GradedModule::regular_left(&e2);
        assert!(matches!(hom_graded(&a, &b), Err(Error::AlgebraMismatch(_))));
        let r = GradedModule::regular_right(&e1);
        assert!(matches!(hom_graded(&a, &r), Err(Error::SideMismatch(_))));
    }

    #[test]
    fn regular_module_is_invariant() {
        let e1 = GradedAlgebra::group_algebra(Field::Rational, &c2(), &c2(), &[0, 1]).unwrap();
        let a = GradedModule::regular_left(&e1);
        let f = is_graded_iso(&a, &suspend(&a, 1)).unwrap().unwrap();
        // Right multiplication by a nonzero multiple of e_s.
        assert!(f.get(0, 0).is_zero() && !f.get(1, 0).is_zero());
        assert!(stabilizer(&a).unwrap().is_whole_group());
        let zero = GradedModule::zero(&e1, Side::Left);
        assert!(stabilizer(&zero).unwrap().is_whole_group());
        assert!(is_graded_iso(&a, &a).unwrap().is_some());
    }

    #[test]
    fn free_rank_two_endomorphisms() {
        let e1 = GradedAlgebra::group_algebra(Field::Rational, &c2(), &c2(), &[0, 1]).unwrap();
        let a = GradedModule::regular_left(&e1);
        let p = direct_sum(&[a.clone(), suspend(&a, 1)]).unwrap();
        let h = hom_graded(&p, &p).unwrap();
        assert_eq!(h.dims_per_degree(), [4, 4]);
    }
}
