//! Algebras and bimodules over a G-graded G-acted algebra `C`, and the
//! canonical maps into endomorphism algebras.

use serde_json::json;

use crate::algebra::{
    centralizer, check_graded_algebra, conjugation_action, identity_component, AlgebraHom, CrossedProductData,
    GActedAlgebra, GradedAlgebra, SubalgebraEmbedding,
};
use crate::error::{Error, Result};
use crate::exact::{Matrix, Scalar};
use crate::module::{end_op_algebra, hom_graded, stabilizer, EndOp, GradedBimodule, GradedModule, HomSpace, Side};
use crate::report::ValidationReport;

/// Grading, automorphism, composition and degree-conjugation laws.
pub fn check_g_acted_algebra(c: &GActedAlgebra) -> ValidationReport {
    let mut report = check_graded_algebra(c.algebra());
    let a = c.algebra();
    let grp = a.group();
    let id = Matrix::identity(a.field(), a.dim());

    report.expect("Identity", "¹c = c", c.action(grp.identity()) == &id, json!({}));

    let witness = grp.elements().find_map(|g| {
        let hom = AlgebraHom::new(a.clone(), a.clone(), c.action(g).clone()).expect("square action");
        let r = hom.report(false);
        let failed = r.failures().next().map(|f| f.axiom.clone());
        match failed {
            Some(axiom) => Some(json!({ "g": grp.label(g), "failed": axiom })),
            None if !c.action(g).is_invertible() => Some(json!({ "g": grp.label(g), "failed": "Invertible" })),
            None => None,
        }
    });
    report.record("Automorphism", "c ↦ ᵍc is an algebra automorphism", witness);

    let witness = grp.elements().find_map(|g| {
        grp.elements().find_map(|h| {
            let ok = c.action(g).mul(c.action(h)) == *c.action(grp.mul(g, h));
            (!ok).then(|| json!({ "g": grp.label(g), "h": grp.label(h) }))
        })
    });
    report.record("Composition", "ᵍ(ʰc) = ᵍʰc", witness);

    let witness = grp.elements().find_map(|g| {
        (0..a.dim()).find_map(|i| {
            let target = grp.conjugate(g, a.degree(i));
            let image = c.action(g).column(i);
            (!a.is_in_degree(&image, target)).then(|| {
                json!({
                    "g": grp.label(g),
                    "c": a.label(i),
                    "degree": grp.label(a.degree(i)),
                    "image": a.format(&image),
                })
            })
        })
    });
    report.record("DegreeLaw", "ᵍ(C_h) ⊆ C_ghg⁻¹", witness);
    report
}

/// A crossed product `A` with a chosen unit system and a map `ζ: C → A`.
/// `zeta` is `dim A × dim C`.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraOverC {
    c: GActedAlgebra,
    cp: CrossedProductData,
    zeta: Matrix,
}

impl AlgebraOverC {
    pub fn new(c: GActedAlgebra, cp: CrossedProductData, zeta: Matrix) -> Result<AlgebraOverC> {
        let a = cp.algebra();
        if zeta.rows() != a.dim() || zeta.cols() != c.algebra().dim() {
            return Err(Error::Shape(format!(
                "ζ must be {}×{}, got {}×{}",
                a.dim(),
                c.algebra().dim(),
                zeta.rows(),
                zeta.cols()
            )));
        }
        if c.algebra().group() != a.group() {
            return Err(Error::AlgebraMismatch("C and A are graded by different groups".into()));
        }
        Ok(AlgebraOverC { c, cp, zeta })
    }

    /// `C = C_A(B)` with the conjugation action and `ζ` the inclusion.
    pub fn over_centralizer(a: &GradedAlgebra) -> Result<AlgebraOverC> {
        let cp = CrossedProductData::find(a)?;
        let cent = centralizer(a, &identity_component(a)?)?;
        let acted = conjugation_action(&cent, &cp)?;
        AlgebraOverC::new(acted, cp, cent.inclusion().clone())
    }

    /// `C = Z(B) = C_A(B)_1` with the restricted action.
    pub fn over_center_of_identity_component(a: &GradedAlgebra) -> Result<AlgebraOverC> {
        let full = AlgebraOverC::over_centralizer(a)?;
        let (emb, acted) = full.c.identity_component()?;
        let zeta = full.zeta.mul(emb.inclusion());
        AlgebraOverC::new(acted, full.cp, zeta)
    }

    /// `C` = the ground field, acting trivially, `ζ` the unit map.
    pub fn over_ground(a: &GradedAlgebra) -> Result<AlgebraOverC> {
        let cp = CrossedProductData::find(a)?;
        let c = GActedAlgebra::trivial(GradedAlgebra::ground(a.group(), a.field()));
        let zeta = Matrix::column_vector(a.field(), a.unit());
        AlgebraOverC::new(c, cp, zeta)
    }

    /// Same algebra and `C` with another unit system.
    pub fn with_units(&self, cp: CrossedProductData) -> Result<AlgebraOverC> {
        if cp.algebra() != self.algebra() {
            return Err(Error::AlgebraMismatch("units belong to a different algebra".into()));
        }
        AlgebraOverC::new(self.c.clone(), cp, self.zeta.clone())
    }

    /// Same data with `ζ` replaced.
    pub fn with_zeta(&self, zeta: Matrix) -> Result<AlgebraOverC> {
        AlgebraOverC::new(self.c.clone(), self.cp.clone(), zeta)
    }

    pub fn c(&self) -> &GActedAlgebra {
        &self.c
    }

    pub fn algebra(&self) -> &GradedAlgebra {
        self.cp.algebra()
    }

    pub fn crossed_product(&self) -> &CrossedProductData {
        &self.cp
    }

    pub fn zeta(&self) -> &Matrix {
        &self.zeta
    }

    /// `ζ(c)`
    pub fn zeta_of(&self, c: &[Scalar]) -> Vec<Scalar> {
        self.zeta.apply(c)
    }

    /// `ζ` as an algebra map.
    pub fn zeta_hom(&self) -> AlgebraHom {
        AlgebraHom::new(self.c.algebra().clone(), self.algebra().clone(), self.zeta.clone()).expect("shape checked")
    }
}

/// Unital, multiplicative, lands in `C_A(B)`, graded, equivariant.
pub fn check_algebra_over_c(x: &AlgebraOverC) -> ValidationReport {
    let mut report = x.zeta_hom().report(true);
    let a = x.algebra();
    let c = x.c().algebra();
    let grp = a.group();
    let b = a.basis_of_degree(grp.identity());
    let images: Vec<Vec<Scalar>> = (0..c.dim()).map(|k| x.zeta.column(k)).collect();

    let witness = (0..c.dim()).find_map(|k| {
        b.iter().find_map(|&i| {
            let e = a.basis_vector(i);
            let ok = a.mul(&images[k], &e) == a.mul(&e, &images[k]);
            (!ok).then(|| json!({ "c": c.label(k), "b": a.label(i), "image": a.format(&images[k]) }))
        })
    });
    report.record("Centralizer", "ζ(c)b = bζ(c)", witness);

    let witness = grp.elements().find_map(|g| {
        (0..c.dim()).find_map(|k| {
            let lhs = x.zeta_of(&x.c.act(g, &c.basis_vector(k)));
            let rhs = x.cp.conjugate(g, &images[k]);
            (lhs != rhs).then(|| {
                json!({
                    "g": grp.label(g),
                    "c": c.label(k),
                    "zeta_of_action": a.format(&lhs),
                    "action_on_zeta": a.format(&rhs),
                })
            })
        })
    });
    report.record("Equivariant", "ζ(ᵍc) = ᵍζ(c)", witness);
    report
}

/// An `(A, A′)`-bimodule with `A` and `A′` over the same `C`.
#[derive(Clone, Debug)]
pub struct BimoduleOverC {
    bimodule: GradedBimodule,
    left: AlgebraOverC,
    right: AlgebraOverC,
}

impl BimoduleOverC {
    pub fn new(bimodule: GradedBimodule, left: AlgebraOverC, right: AlgebraOverC) -> Result<BimoduleOverC> {
        if bimodule.left_algebra() != left.algebra() || bimodule.right_algebra() != right.algebra() {
            return Err(Error::AlgebraMismatch("bimodule and structure maps over different algebras".into()));
        }
        if left.c() != right.c() {
            return Err(Error::AlgebraMismatch("the two sides are over different C".into()));
        }
        Ok(BimoduleOverC { bimodule, left, right })
    }

    pub fn bimodule(&self) -> &GradedBimodule {
        &self.bimodule
    }

    pub fn left(&self) -> &AlgebraOverC {
        &self.left
    }

    pub fn right(&self) -> &AlgebraOverC {
        &self.right
    }
}

fn condition(m: &BimoduleOverC, only_degree_one: bool) -> Option<serde_json::Value> {
    let b = &m.bimodule;
    let c = m.left.c();
    let ca = c.algebra();
    let grp = b.group();
    for i in 0..b.dim() {
        let g = b.degree(i);
        if only_degree_one && g != grp.identity() {
            continue;
        }
        let v = b.basis_vector(i);
        for k in 0..ca.dim() {
            let e = ca.basis_vector(k);
            let lhs = b.act_right(&v, &m.right.zeta_of(&e));
            let gc = c.act(g, &e);
            let rhs = b.act_left(&m.left.zeta_of(&gc), &v);
            if lhs != rhs {
                return Some(json!({
                    "element": b.label(i),
                    "degree": grp.label(g),
                    "c": ca.label(k),
                    "m_times_c": b.format(&lhs),
                    "gc_times_m": b.format(&rhs),
                }));
            }
        }
    }
    None
}

/// `m̃_g·c = ᵍc·m̃_g` on homogeneous basis elements.
pub fn condition_three(m: &BimoduleOverC) -> ValidationReport {
    let mut report = ValidationReport::new();
    report.record("Condition3", "m̃_g·c = ᵍc·m̃_g", condition(m, false));
    report
}

/// `m·c = c·m` for `m` in degree 1.
pub fn condition_three_prime(m: &BimoduleOverC) -> ValidationReport {
    let mut report = ValidationReport::new();
    report.record("Condition3Prime", "m̃_1·c = c·m̃_1", condition(m, true));
    report
}

/// Bimodule axioms and the compatibility with `C`.
pub fn check_bimodule_over_c(m: &BimoduleOverC) -> ValidationReport {
    let mut report = crate::module::check_bimodule(&m.bimodule);
    report.extend(condition_three(m));
    report
}

/// Solves for the unique `A`-endomorphism of `M` agreeing with left
/// multiplication by `z` on `M_1`, given `Hom_A(M, M)`. Returns its
/// coordinates in the Hom basis.
pub fn extend_from_identity_component(hom: &HomSpace, z: &[Scalar]) -> Result<Vec<Scalar>> {
    let m = hom.source();
    let field = m.field();
    let ones = m.basis_of_degree(m.group().identity());
    let n = m.dim();
    let target = m.action_by(z);
    let rows = n * ones.len();
    let system = Matrix::from_fn(field, rows, hom.dim(), |r, k| hom.basis()[k].get(r / ones.len(), ones[r % ones.len()]).clone());
    let rhs = Matrix::from_fn(field, rows, 1, |r, _| target.get(r / ones.len(), ones[r % ones.len()]).clone());
    if system.rank() != hom.dim() {
        return Err(Error::NoExtension("endomorphisms are not determined by the identity component".into()));
    }
    let x = system
        .solve(&rhs)?
        .ok_or_else(|| Error::NoExtension("left multiplication does not extend A-linearly".into()))?;
    Ok(x.column(0))
}

/// Matrices of `x ↦ x·c` on a left `A`-module `M`, one per basis element of
/// `C`, where `x·c` is the `A`-linear extension of `ζ(c)·x` from `M_1`.
pub fn c_action(x: &AlgebraOverC, m: &GradedModule) -> Result<Vec<Matrix>> {
    if m.algebra() != x.algebra() || m.side() != Side::Left {
        return Err(Error::AlgebraMismatch("C acts through ζ on left modules over its algebra".into()));
    }
    let hom = hom_graded(m, m)?;
    let c = x.c().algebra();
    (0..c.dim())
        .map(|k| {
            let coeffs = extend_from_identity_component(&hom, &x.zeta.column(k))?;
            Ok(hom.combination(&coeffs))
        })
        .collect()
}

/// `θ: C_A(B) → A′ = End_A(P)^op` for a `G`-invariant `P`: `θ(z)` is the
/// `A`-linear extension of left multiplication by `z` on `P_1`.
pub fn canonical_theta(x: &AlgebraOverC, p: &GradedModule) -> Result<AlgebraHom> {
    let endo = end_op_algebra(p)?;
    canonical_theta_on(x, &endo)
}

/// [`canonical_theta`] for an already computed `End_A(P)^op`.
pub fn canonical_theta_on(x: &AlgebraOverC, endo: &EndOp) -> Result<AlgebraHom> {
    let p = endo.module();
    let a = x.algebra();
    if p.algebra() != a {
        return Err(Error::AlgebraMismatch("P is not a module over the algebra of X".into()));
    }
    let stab = stabilizer(p)?;
    if !stab.is_whole_group() {
        return Err(Error::NotGInvariant(stab.order()));
    }
    let cent = centralizer(a, &identity_component(a)?)?;
    let a_prime = endo.algebra();
    let cp_prime = CrossedProductData::find(a_prime)?;
    let cols = cent
        .vectors()
        .iter()
        .map(|z| extend_from_identity_component(endo.hom(), z))
        .collect::<Result<Vec<_>>>()?;
    let theta = AlgebraHom::new(
        cent.sub().clone(),
        a_prime.clone(),
        Matrix::from_columns(a.field(), a_prime.dim(), &cols),
    )?;

    let b_prime = identity_component(a_prime)?;
    let c_prime = centralizer(a_prime, &b_prime)?;
    if let Some(k) = cols.iter().position(|v| !c_prime.contains(v)) {
        return Err(Error::Invariant(format!("θ({}) is not in C_A′(B′)", cent.sub().label(k))));
    }
    for g in a.group().elements() {
        for (k, z) in cent.vectors().iter().enumerate() {
            let lhs = theta.apply(&cent.restrict(&x.crossed_product().conjugate(g, z)).expect("centralizer is stable"));
            let rhs = cp_prime.conjugate(g, &cols[k]);
            if lhs != rhs {
                return Err(Error::Invariant(format!(
                    "θ is not equivariant at ({}, {})",
                    a.group().label(g),
                    cent.sub().label(k)
                )));
            }
        }
    }
    Ok(theta)
}

/// `A′ = End_A(P)^op` over `C` with `ζ′ = θ∘ζ`.
pub fn make_algebra_over_c_on_endos(x: &AlgebraOverC, p: &GradedModule) -> Result<(EndOp, AlgebraOverC)> {
    let endo = end_op_algebra(p)?;
    let over = algebra_over_c_on(x, &endo)?;
    Ok((endo, over))
}

/// [`make_algebra_over_c_on_endos`] for an already computed `End_A(P)^op`.
pub fn algebra_over_c_on(x: &AlgebraOverC, endo: &EndOp) -> Result<AlgebraOverC> {
    let theta = canonical_theta_on(x, endo)?;
    let a = x.algebra();
    let cent = centralizer(a, &identity_component(a)?)?;
    let c = x.c().algebra();
    let cols = (0..c.dim())
        .map(|k| {
            let z = x.zeta.column(k);
            cent.restrict(&z)
                .map(|w| theta.apply(&w))
                .ok_or_else(|| Error::Invariant("ζ does not land in C_A(B)".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let zeta_prime = Matrix::from_columns(a.field(), endo.algebra().dim(), &cols);
    let cp_prime = CrossedProductData::find(endo.algebra())?;
    AlgebraOverC::new(x.c().clone(), cp_prime, zeta_prime)
}

/// The identity component and centralizer of an algebra over `C`, handy
/// for assertions.
pub fn centralizer_of(x: &AlgebraOverC) -> Result<SubalgebraEmbedding> {
    let a = x.algebra();
    centralizer(a, &identity_component(a)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Field;
    use crate::fixtures::{e1, e2, free_rank_two, regular};

    #[test]
    fn centralizer_structures_pass() {
        for a in [e1(), e2()] {
            let x = AlgebraOverC::over_centralizer(&a).unwrap();
            assert!(check_g_acted_algebra(x.c()).is_pass());
            assert!(check_algebra_over_c(&x).is_pass());
            let z = AlgebraOverC::over_center_of_identity_component(&a).unwrap();
            assert!(check_g_acted_algebra(z.c()).is_pass());
            assert!(check_algebra_over_c(&z).is_pass());
            let k = AlgebraOverC::over_ground(&a).unwrap();
            assert!(check_algebra_over_c(&k).is_pass());
        }
    }

    #[test]
    fn doubled_zeta_is_not_unital() {
        let x = AlgebraOverC::over_centralizer(&e1()).unwrap();
        let bad = x.with_zeta(x.zeta().scale(&Field::Rational.from_i64(2))).unwrap();
        assert!(!check_algebra_over_c(&bad).passed("Unital"));
    }

    #[test]
    fn non_multiplicative_action_is_caught() {
        let x = AlgebraOverC::over_centralizer(&e2()).unwrap();
        let c = x.c();
        let mut action = c.actions().to_vec();
        action[1] = Matrix::from_ints(Field::Rational, &[&[1, 1], &[0, 1]]);
        let bad = GActedAlgebra::new(c.algebra().clone(), action).unwrap();
        assert!(!check_g_acted_algebra(&bad).passed("Automorphism"));
    }

    #[test]
    fn theta_on_regular_module_is_right_multiplication() {
        let a = e1();
        let x = AlgebraOverC::over_centralizer(&a).unwrap();
        let (endo, over) = make_algebra_over_c_on_endos(&x, &regular(&a)).unwrap();
        assert!(check_algebra_over_c(&over).is_pass());
        let theta = canonical_theta_on(&x, &endo).unwrap();
        for k in 0..2 {
            let f = endo.map_of(&theta.matrix().column(k));
            assert_eq!(f, a.right_mult(k).clone());
        }
    }

    #[test]
    fn theta_on_free_rank_two() {
        let a = e1();
        let x = AlgebraOverC::over_centralizer(&a).unwrap();
        let p = free_rank_two(&a);
        let (endo, over) = make_algebra_over_c_on_endos(&x, &p).unwrap();
        assert!(check_algebra_over_c(&over).is_pass());
        let theta = canonical_theta_on(&x, &endo).unwrap();
        assert!(theta.report(true).is_pass());
        // θ(e_s) has degree s and acts as e_s on each summand.
        let f = endo.map_of(&theta.matrix().column(1));
        let expected = Matrix::from_ints(
            Field::Rational,
            &[&[0, 1, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, 1], &[0, 0, 1, 0]],
        );
        assert_eq!(f, expected);
    }

    #[test]
    fn theta_requires_invariance() {
        let a = crate::fixtures::e3();
        let x = AlgebraOverC::over_centralizer(&a).unwrap();
        let err = canonical_theta(&x, &crate::fixtures::p3()).unwrap_err();
        assert_eq!(err, Error::NotGInvariant(1));
    }
}
