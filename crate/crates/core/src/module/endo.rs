use crate::algebra::GradedAlgebra;
use crate::error::{Error, Result};
use crate::exact::{Matrix, Scalar};

use super::hom::{hom_graded, HomSpace};
use super::{GradedBimodule, GradedModule, Side};

/// `A′ = End_A(P)^op` on the homogeneous basis `f_k` of `Hom_A(P, P)`,
/// with `f * g = g ∘ f`, and `P` as an `(A, A′)`-bimodule with
/// `p·f = f(p)`.
#[derive(Clone, Debug)]
pub struct EndOp {
    hom: HomSpace,
    algebra: GradedAlgebra,
    bimodule: GradedBimodule,
}

impl EndOp {
    pub fn module(&self) -> &GradedModule {
        self.hom.source()
    }

    pub fn hom(&self) -> &HomSpace {
        &self.hom
    }

    pub fn algebra(&self) -> &GradedAlgebra {
        &self.algebra
    }

    pub fn bimodule(&self) -> &GradedBimodule {
        &self.bimodule
    }

    /// Coordinates in `A′` of an `A`-endomorphism.
    pub fn element_of(&self, f: &Matrix) -> Option<Vec<Scalar>> {
        self.hom.coords(f)
    }

    /// The endomorphism of `P` represented by an element of `A′`.
    pub fn map_of(&self, x: &[Scalar]) -> Matrix {
        self.hom.combination(x)
    }

    /// `P* = Hom_A(P, A)` as an `(A′, A)`-bimodule.
    pub fn dual(&self) -> Result<Dual> {
        let p = self.module();
        let a = p.algebra();
        let field = a.field();
        let reg = GradedModule::regular_left(a);
        let hom = hom_graded(p, &reg)?;
        let k = hom.dim();
        let coords = |f: &Matrix| {
            hom.coords(f)
                .ok_or_else(|| Error::Invariant("dual action left Hom_A(P, A)".into()))
        };
        let mut right_action = Vec::with_capacity(a.dim());
        for j in 0..a.dim() {
            let cols = hom
                .basis()
                .iter()
                .map(|phi| coords(&a.right_mult(j).mul(phi)))
                .collect::<Result<Vec<_>>>()?;
            right_action.push(Matrix::from_columns(field, k, &cols));
        }
        let mut left_action = Vec::with_capacity(self.algebra.dim());
        for f in self.hom.basis() {
            let cols = hom
                .basis()
                .iter()
                .map(|phi| coords(&phi.mul(f)))
                .collect::<Result<Vec<_>>>()?;
            left_action.push(Matrix::from_columns(field, k, &cols));
        }
        let labels = (1..=k).map(|i| format!("φ{i}")).collect();
        let bimodule = GradedBimodule::new(
            self.algebra.clone(),
            a.clone(),
            hom.degrees().to_vec(),
            left_action,
            right_action,
        )?
        .with_labels(labels)?;
        Ok(Dual { hom, bimodule })
    }
}

pub fn end_op_algebra(p: &GradedModule) -> Result<EndOp> {
    if p.side() != Side::Left {
        return Err(Error::SideMismatch("End^op is built for left modules".into()));
    }
    let field = p.field();
    let hom = hom_graded(p, p)?;
    let k = hom.dim();
    let mut table = Vec::with_capacity(k);
    for f in hom.basis() {
        let mut row = Vec::with_capacity(k);
        for g in hom.basis() {
            let c = hom
                .coords(&g.mul(f))
                .ok_or_else(|| Error::Invariant("composition left End_A(P)".into()))?;
            row.push(c);
        }
        table.push(row);
    }
    let unit = hom
        .coords(&Matrix::identity(field, p.dim()))
        .ok_or_else(|| Error::Invariant("identity is not A-linear".into()))?;
    let labels = (1..=k).map(|i| format!("f{i}")).collect();
    let algebra = GradedAlgebra::with_labels(
        p.group().clone(),
        field,
        hom.degrees().to_vec(),
        labels,
        table,
        unit,
    )?;
    let bimodule = GradedBimodule::new(
        p.algebra().clone(),
        algebra.clone(),
        p.degrees().to_vec(),
        p.actions().to_vec(),
        hom.basis().to_vec(),
    )?
    .with_labels(p.labels().to_vec())?;
    Ok(EndOp {
        hom,
        algebra,
        bimodule,
    })
}

/// `P* = Hom_A(P, A)` with `(a′φa)(p) = φ(p·a′)·a`. A functional of degree
/// `g` sends `P_x` into `A_xg`.
#[derive(Clone, Debug)]
pub struct Dual {
    hom: HomSpace,
    bimodule: GradedBimodule,
}

impl Dual {
    pub fn bimodule(&self) -> &GradedBimodule {
        &self.bimodule
    }

    pub fn hom(&self) -> &HomSpace {
        &self.hom
    }

    /// Matrix (`dim A × dim P`) of the `k`-th basis functional.
    pub fn functional(&self, k: usize) -> &Matrix {
        &self.hom.basis()[k]
    }

    /// `φ(p)` for `φ` given in dual coordinates.
    pub fn evaluate(&self, phi: &[Scalar], p: &[Scalar]) -> Vec<Scalar> {
        self.hom.combination(phi).apply(p)
    }
}

/// `P*` for a left module `P`.
pub fn dual_module(p: &GradedModule) -> Result<GradedBimodule> {
    Ok(end_op_algebra(p)?.dual()?.bimodule().clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{check_graded_algebra, find_crossed_product};
    use crate::exact::Field;
    use crate::group::FiniteGroup;
    use crate::module::{check_bimodule, direct_sum, suspend};

    fn e1() -> GradedAlgebra {
        let c2 = FiniteGroup::cyclic(2);
        GradedAlgebra::group_algebra(Field::Rational, &c2, &c2, &[0, 1]).unwrap()
    }

    #[test]
    fn end_op_of_regular_module() {
        let a = e1();
        let e = end_op_algebra(&GradedModule::regular_left(&a)).unwrap();
        assert_eq!(e.algebra().component_dims(), [1, 1]);
        assert!(check_graded_algebra(e.algebra()).is_pass());
        assert!(check_bimodule(e.bimodule()).is_pass());
        assert!(find_crossed_product(e.algebra()).is_some());
    }

    #[test]
    fn end_op_of_free_rank_two() {
        let a = GradedModule::regular_left(&e1());
        let p = direct_sum(&[a.clone(), suspend(&a, 1)]).unwrap();
        let e = end_op_algebra(&p).unwrap();
        assert_eq!(e.algebra().dim(), 8);
        assert_eq!(e.algebra().component_dims(), [4, 4]);
        assert!(check_graded_algebra(e.algebra()).is_pass());
        assert!(check_bimodule(e.bimodule()).is_pass());
    }

    #[test]
    fn duals() {
        let a = e1();
        let reg = GradedModule::regular_left(&a);
        let e = end_op_algebra(&reg).unwrap();
        let d = e.dual().unwrap();
        assert_eq!(d.bimodule().component_dims(), [1, 1]);
        assert!(check_bimodule(d.bimodule()).is_pass());
        let zero = GradedModule::zero(&a, Side::Left);
        assert_eq!(dual_module(&zero).unwrap().dim(), 0);
    }
}
