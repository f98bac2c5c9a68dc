//! Standard small instances.
//!
//! * `E1`: the group algebra `ℚ[C2]`, basis `1, s`.
//! * `E2`: `M2(ℚ)` with diagonal units in degree 1 and `E12, E21` in degree `s`.
//! * `E3`: `F7[S3]` graded by the sign map onto `C2`; its identity component
//!   is `F7[A3]`, and `U_χ` is the character of `A3` sending `(123)` to 2.

use crate::algebra::{identity_component, GradedAlgebra, SubalgebraEmbedding};
use crate::error::Result;
use crate::exact::{Field, Matrix};
use crate::group::FiniteGroup;
use crate::module::{direct_sum, induce, suspend, GradedModule};

pub fn c2() -> FiniteGroup {
    FiniteGroup::cyclic(2)
}

pub fn f7() -> Field {
    Field::Prime(7)
}

pub fn e1() -> GradedAlgebra {
    GradedAlgebra::group_algebra(Field::Rational, &c2(), &c2(), &[0, 1]).expect("E1")
}

pub fn e2() -> GradedAlgebra {
    GradedAlgebra::matrix_algebra(Field::Rational, &c2(), &[0, 1])
}

pub fn e3() -> GradedAlgebra {
    let s3 = FiniteGroup::symmetric3();
    GradedAlgebra::group_algebra(f7(), &s3, &c2(), &[0, 0, 0, 1, 1, 1]).expect("E3")
}

/// `F7[A3] ⊂ F7[S3]`, basis `1, (123), (132)`.
pub fn e3_identity_component() -> SubalgebraEmbedding {
    identity_component(&e3()).expect("identity component of E3")
}

/// The one-dimensional `F7[A3]`-module on which `(123)` acts by 2.
pub fn u_chi(b: &SubalgebraEmbedding) -> GradedModule {
    let f = f7();
    let action = [1, 2, 4]
        .iter()
        .map(|&x| Matrix::from_ints(f, &[&[x]]))
        .collect();
    GradedModule::left(b.sub(), vec![0], action)
        .and_then(|m| m.with_labels(vec!["u".into()]))
        .expect("U_χ")
}

/// `P3 = F7[S3] ⊗_{F7[A3]} U_χ`, the two-dimensional induced module.
pub fn p3() -> GradedModule {
    let b = e3_identity_component();
    induce(&b, &u_chi(&b)).expect("P3")
}

/// The columns `ℚ²` of `E2`, with the first coordinate in degree 1.
pub fn column_module() -> GradedModule {
    let a = e2();
    let f = Field::Rational;
    let units = [
        [[1, 0], [0, 0]],
        [[0, 1], [0, 0]],
        [[0, 0], [1, 0]],
        [[0, 0], [0, 1]],
    ];
    let action = units
        .iter()
        .map(|u| Matrix::from_ints(f, &[&u[0], &u[1]]))
        .collect();
    GradedModule::left(&a, vec![0, 1], action)
        .and_then(|m| m.with_labels(vec!["c1".into(), "c2".into()]))
        .expect("column module")
}

pub fn regular(a: &GradedAlgebra) -> GradedModule {
    GradedModule::regular_left(a)
}

/// `A ⊕ A(s)`.
pub fn free_rank_two(a: &GradedAlgebra) -> GradedModule {
    let reg = regular(a);
    direct_sum(&[reg.clone(), suspend(&reg, 1)]).expect("A ⊕ A(s)")
}

/// `ℚ[x]/(x²)` with `x` in degree `s`: graded, but its degree-`s` component
/// has no unit.
pub fn dual_numbers() -> Result<GradedAlgebra> {
    let f = Field::Rational;
    let z = f.zero();
    let o = f.one();
    let table = vec![
        vec![vec![o.clone(), z.clone()], vec![z.clone(), o.clone()]],
        vec![vec![z.clone(), o.clone()], vec![z.clone(), z.clone()]],
    ];
    GradedAlgebra::with_labels(c2(), f, vec![0, 1], vec!["1".into(), "x".into()], table, vec![o, z])
}
