//! Graded Morita contexts over `C`, the canonical context of a module, and
//! verification of the two Morita theorems on concrete instances.

use std::fmt;

use serde_json::json;

use crate::algebra::{AlgebraHom, GradedAlgebra};
use crate::error::{Error, Result};
use crate::exact::{unit_vector, Matrix, Scalar, Span};
use crate::module::{
    apply_functor, check_bimodule, end_op_algebra, hom_graded, is_graded_bimodule_iso, is_graded_iso, is_graded_map,
    preserves_degrees, stabilizer, suspend, tensor_over, EndOp, GradedBimodule, GradedModule, HomSpace,
    TensorProduct,
};
use crate::over_c::{algebra_over_c_on, c_action, check_bimodule_over_c, AlgebraOverC, BimoduleOverC};
use crate::report::ValidationReport;

const ASSOCIATIVITY: &str = "(m̃m̃′)ñ = m̃(m̃′ñ)";
const ASSOCIATIVITY_PRIME: &str = "(m̃′m̃)ñ′ = m̃′(m̃ñ′)";

/// `(A, A′, M̃, M̃′, f, g)`. `f[i][j]` holds the coordinates in `A` of
/// `f(m_i, m′_j)` and `g[j][i]` those in `A′` of `g(m′_j, m_i)`.
#[derive(Clone, Debug)]
pub struct MoritaContext {
    m: GradedBimodule,
    m_prime: GradedBimodule,
    f: Vec<Vec<Vec<Scalar>>>,
    g: Vec<Vec<Vec<Scalar>>>,
    over_c: Option<(AlgebraOverC, AlgebraOverC)>,
}

impl MoritaContext {
    pub fn new(
        m: GradedBimodule,
        m_prime: GradedBimodule,
        f: Vec<Vec<Vec<Scalar>>>,
        g: Vec<Vec<Vec<Scalar>>>,
        over_c: Option<(AlgebraOverC, AlgebraOverC)>,
    ) -> Result<MoritaContext> {
        if m.left_algebra() != m_prime.right_algebra() || m.right_algebra() != m_prime.left_algebra() {
            return Err(Error::AlgebraMismatch("M must be (A, A′) and M′ must be (A′, A)".into()));
        }
        let (a, ap) = (m.left_algebra(), m.right_algebra());
        let shape_ok = |t: &Vec<Vec<Vec<Scalar>>>, rows: usize, cols: usize, d: usize| {
            t.len() == rows && t.iter().all(|r| r.len() == cols && r.iter().all(|v| v.len() == d))
        };
        if !shape_ok(&f, m.dim(), m_prime.dim(), a.dim()) {
            return Err(Error::Shape(format!("f must be {}×{}×{}", m.dim(), m_prime.dim(), a.dim())));
        }
        if !shape_ok(&g, m_prime.dim(), m.dim(), ap.dim()) {
            return Err(Error::Shape(format!("g must be {}×{}×{}", m_prime.dim(), m.dim(), ap.dim())));
        }
        if let Some((x, xp)) = &over_c {
            if x.algebra() != a || xp.algebra() != ap {
                return Err(Error::AlgebraMismatch("structure maps over the wrong algebras".into()));
            }
            if x.c() != xp.c() {
                return Err(Error::AlgebraMismatch("A and A′ are over different C".into()));
            }
        }
        Ok(MoritaContext {
            m,
            m_prime,
            f,
            g,
            over_c,
        })
    }

    pub fn a(&self) -> &GradedAlgebra {
        self.m.left_algebra()
    }

    pub fn a_prime(&self) -> &GradedAlgebra {
        self.m.right_algebra()
    }

    pub fn m(&self) -> &GradedBimodule {
        &self.m
    }

    pub fn m_prime(&self) -> &GradedBimodule {
        &self.m_prime
    }

    pub fn f(&self) -> &[Vec<Vec<Scalar>>] {
        &self.f
    }

    pub fn g(&self) -> &[Vec<Vec<Scalar>>] {
        &self.g
    }

    pub fn over_c(&self) -> Option<&(AlgebraOverC, AlgebraOverC)> {
        self.over_c.as_ref()
    }

    /// `f(m, m′)` for arbitrary vectors.
    pub fn f_of(&self, m: &[Scalar], mp: &[Scalar]) -> Vec<Scalar> {
        bilinear(&self.f, m, mp, self.a().zero_vector())
    }

    /// `g(m′, m)` for arbitrary vectors.
    pub fn g_of(&self, mp: &[Scalar], m: &[Scalar]) -> Vec<Scalar> {
        bilinear(&self.g, mp, m, self.a_prime().zero_vector())
    }

    /// The same context with `f = 0` and `g = 0`.
    pub fn with_zero_pairings(&self) -> MoritaContext {
        let mut ctx = self.clone();
        ctx.f = vec![vec![self.a().zero_vector(); self.m_prime.dim()]; self.m.dim()];
        ctx.g = vec![vec![self.a_prime().zero_vector(); self.m.dim()]; self.m_prime.dim()];
        ctx
    }

    /// The same context with one value of `g` replaced.
    pub fn with_g_value(&self, j: usize, i: usize, value: Vec<Scalar>) -> Result<MoritaContext> {
        if j >= self.m_prime.dim() || i >= self.m.dim() || value.len() != self.a_prime().dim() {
            return Err(Error::Shape("g index or value out of range".into()));
        }
        let mut ctx = self.clone();
        ctx.g[j][i] = value;
        Ok(ctx)
    }

    /// `M̃′ ⊗_A −: A-Gr → A′-Gr`.
    pub fn forward(&self) -> Result<FunctorData> {
        let over_c = match &self.over_c {
            Some((x, xp)) => Some(BimoduleOverC::new(self.m_prime.clone(), xp.clone(), x.clone())?),
            None => None,
        };
        Ok(FunctorData::new(self.m_prime.clone(), over_c, Direction::Forward))
    }

    /// `M̃ ⊗_A′ −: A′-Gr → A-Gr`.
    pub fn backward(&self) -> Result<FunctorData> {
        let over_c = match &self.over_c {
            Some((x, xp)) => Some(BimoduleOverC::new(self.m.clone(), x.clone(), xp.clone())?),
            None => None,
        };
        Ok(FunctorData::new(self.m.clone(), over_c, Direction::Backward))
    }
}

fn bilinear(table: &[Vec<Vec<Scalar>>], x: &[Scalar], y: &[Scalar], zero: Vec<Scalar>) -> Vec<Scalar> {
    let mut out = zero;
    for (i, xi) in x.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        for (j, yj) in y.iter().enumerate() {
            if yj.is_zero() {
                continue;
            }
            let c = xi * yj;
            for (o, t) in out.iter_mut().zip(&table[i][j]) {
                if !t.is_zero() {
                    *o = &*o + &(&c * t);
                }
            }
        }
    }
    out
}

/// `(A, A′, P, P*, (·,·), [·,·])` with `(p, φ) = φ(p)` and
/// `y[φ, p] = φ(y)·p`, without structure over `C`.
pub fn build_graded_context(p: &GradedModule) -> Result<MoritaContext> {
    let endo = end_op_algebra(p)?;
    graded_context_on(&endo, None)
}

/// The canonical context of a `G`-invariant `P`, with `A′ = End_A(P)^op`
/// over `C` through `θ`.
pub fn build_canonical_context(x: &AlgebraOverC, p: &GradedModule) -> Result<MoritaContext> {
    let endo = end_op_algebra(p)?;
    let xp = algebra_over_c_on(x, &endo)?;
    let ctx = graded_context_on(&endo, Some((x.clone(), xp)))?;
    if let Some(bad) = check_context(&ctx).failures().next() {
        return Err(Error::Invariant(format!("canonical context fails {}", bad.axiom)));
    }
    Ok(ctx)
}

fn graded_context_on(endo: &EndOp, over_c: Option<(AlgebraOverC, AlgebraOverC)>) -> Result<MoritaContext> {
    let p = endo.module();
    let a = p.algebra();
    let dual = endo.dual()?;
    let n = p.dim();
    let k = dual.bimodule().dim();
    let f = (0..n)
        .map(|i| (0..k).map(|j| dual.functional(j).column(i)).collect())
        .collect();
    let mut g = Vec::with_capacity(k);
    for j in 0..k {
        let phi = dual.functional(j);
        let mut row = Vec::with_capacity(n);
        for i in 0..n {
            let pi = p.as_bimodule().basis_vector(i);
            let cols: Vec<Vec<Scalar>> = (0..n).map(|y| p.act(&phi.column(y), &pi)).collect();
            let map = Matrix::from_columns(a.field(), n, &cols);
            let coords = endo
                .element_of(&map)
                .ok_or_else(|| Error::Invariant("[φ, p] is not A-linear".into()))?;
            row.push(coords);
        }
        g.push(row);
    }
    MoritaContext::new(endo.bimodule().clone(), dual.bimodule().clone(), f, g, over_c)
}

/// Balancedness, bimodule-map and grading properties of `f` and `g`, both
/// associativity laws, and the bimodule axioms (over `C` when present).
pub fn check_context(ctx: &MoritaContext) -> ValidationReport {
    let mut report = ValidationReport::new();
    let (m, mp) = (&ctx.m, &ctx.m_prime);
    let (a, ap) = (ctx.a(), ctx.a_prime());
    let grp = a.group();

    let basis_m: Vec<Vec<Scalar>> = (0..m.dim()).map(|i| m.basis_vector(i)).collect();
    let basis_mp: Vec<Vec<Scalar>> = (0..mp.dim()).map(|j| mp.basis_vector(j)).collect();
    let witness = |names: [&str; 3], vals: [String; 3], lhs: String, rhs: String| {
        json!({ names[0]: vals[0], names[1]: vals[1], names[2]: vals[2], "lhs": lhs, "rhs": rhs })
    };

    // f(m·a′, m′) = f(m, a′·m′) and g(m′·a, m) = g(m′, a·m)
    let w = first(m.dim(), ap.dim(), mp.dim(), |i, k, j| {
        let lhs = ctx.f_of(&m.act_right(&basis_m[i], &ap.basis_vector(k)), &basis_mp[j]);
        let rhs = ctx.f_of(&basis_m[i], &mp.act_left(&ap.basis_vector(k), &basis_mp[j]));
        (lhs != rhs).then(|| {
            witness(["m", "a′", "m′"], [m.label(i).into(), ap.label(k).into(), mp.label(j).into()], a.format(&lhs), a.format(&rhs))
        })
    });
    report.record("BalancedF", "f(m̃a′, m̃′) = f(m̃, a′m̃′)", w);
    let w = first(mp.dim(), a.dim(), m.dim(), |j, k, i| {
        let lhs = ctx.g_of(&mp.act_right(&basis_mp[j], &a.basis_vector(k)), &basis_m[i]);
        let rhs = ctx.g_of(&basis_mp[j], &m.act_left(&a.basis_vector(k), &basis_m[i]));
        (lhs != rhs).then(|| {
            witness(["m′", "a", "m"], [mp.label(j).into(), a.label(k).into(), m.label(i).into()], ap.format(&lhs), ap.format(&rhs))
        })
    });
    report.record("BalancedG", "g(m̃′a, m̃) = g(m̃′, am̃)", w);

    // f(a·m, m′·b) = a·f(m, m′)·b on basis elements, one side at a time.
    let w = first(a.dim(), m.dim(), mp.dim(), |k, i, j| {
        let e = a.basis_vector(k);
        let left = (ctx.f_of(&m.act_left(&e, &basis_m[i]), &basis_mp[j]), a.mul(&e, &ctx.f_of(&basis_m[i], &basis_mp[j])));
        let right = (ctx.f_of(&basis_m[i], &mp.act_right(&basis_mp[j], &e)), a.mul(&ctx.f_of(&basis_m[i], &basis_mp[j]), &e));
        [left, right].into_iter().find(|(l, r)| l != r).map(|(l, r)| {
            witness(["a", "m", "m′"], [a.label(k).into(), m.label(i).into(), mp.label(j).into()], a.format(&l), a.format(&r))
        })
    });
    report.record("BimoduleMapF", "f(am̃, m̃′b) = a f(m̃, m̃′) b", w);
    let w = first(ap.dim(), mp.dim(), m.dim(), |k, j, i| {
        let e = ap.basis_vector(k);
        let left = (ctx.g_of(&mp.act_left(&e, &basis_mp[j]), &basis_m[i]), ap.mul(&e, &ctx.g_of(&basis_mp[j], &basis_m[i])));
        let right = (ctx.g_of(&basis_mp[j], &m.act_right(&basis_m[i], &e)), ap.mul(&ctx.g_of(&basis_mp[j], &basis_m[i]), &e));
        [left, right].into_iter().find(|(l, r)| l != r).map(|(l, r)| {
            witness(["a′", "m′", "m"], [ap.label(k).into(), mp.label(j).into(), m.label(i).into()], ap.format(&l), ap.format(&r))
        })
    });
    report.record("BimoduleMapG", "g(a′m̃′, m̃b′) = a′ g(m̃′, m̃) b′", w);

    let w = (0..m.dim()).find_map(|i| {
        (0..mp.dim()).find_map(|j| {
            let d = grp.mul(m.degree(i), mp.degree(j));
            (!a.is_in_degree(&ctx.f[i][j], d)).then(|| {
                json!({ "m": m.label(i), "m′": mp.label(j), "expected_degree": grp.label(d), "value": a.format(&ctx.f[i][j]) })
            })
        })
    });
    report.record("GradedF", "f(M̃_x, M̃′_y) ⊆ A_xy", w);
    let w = (0..mp.dim()).find_map(|j| {
        (0..m.dim()).find_map(|i| {
            let d = grp.mul(mp.degree(j), m.degree(i));
            (!ap.is_in_degree(&ctx.g[j][i], d)).then(|| {
                json!({ "m′": mp.label(j), "m": m.label(i), "expected_degree": grp.label(d), "value": ap.format(&ctx.g[j][i]) })
            })
        })
    });
    report.record("GradedG", "g(M̃′_x, M̃_y) ⊆ A′_xy", w);

    let w = first(m.dim(), mp.dim(), m.dim(), |i, j, n| {
        let lhs = m.act_left(&ctx.f[i][j], &basis_m[n]);
        let rhs = m.act_right(&basis_m[i], &ctx.g[j][n]);
        (lhs != rhs).then(|| {
            witness(["m̃", "m̃′", "ñ"], [m.label(i).into(), mp.label(j).into(), m.label(n).into()], m.format(&lhs), m.format(&rhs))
        })
    });
    report.record("Associativity", ASSOCIATIVITY, w);
    let w = first(mp.dim(), m.dim(), mp.dim(), |j, i, n| {
        let lhs = mp.act_left(&ctx.g[j][i], &basis_mp[n]);
        let rhs = mp.act_right(&basis_mp[j], &ctx.f[i][n]);
        (lhs != rhs).then(|| {
            witness(["m̃′", "m̃", "ñ′"], [mp.label(j).into(), m.label(i).into(), mp.label(n).into()], mp.format(&lhs), mp.format(&rhs))
        })
    });
    report.record("AssociativityPrime", ASSOCIATIVITY_PRIME, w);

    match (ctx.forward(), ctx.backward()) {
        (Ok(fw), Ok(bw)) => {
            report.extend_prefixed("M", bimodule_report(&bw));
            report.extend_prefixed("M′", bimodule_report(&fw));
        }
        (Err(e), _) | (_, Err(e)) => report.fail("OverC", "M̃ and M̃′ are bimodules over C", json!({ "error": e.to_string() })),
    }
    report
}

fn bimodule_report(f: &FunctorData) -> ValidationReport {
    match &f.over_c {
        Some(b) => check_bimodule_over_c(b),
        None => check_bimodule(&f.bimodule),
    }
}

fn first<F>(p: usize, q: usize, r: usize, mut test: F) -> Option<serde_json::Value>
where
    F: FnMut(usize, usize, usize) -> Option<serde_json::Value>,
{
    (0..p).find_map(|i| (0..q).find_map(|j| (0..r).find_map(|k| test(i, j, k))))
}

/// The maps `M̃ ⊗_A′ M̃′ → A` and `M̃′ ⊗_A M̃ → A′` induced by `f` and `g`,
/// with the tensor products they are defined on.
pub fn pairing_maps(ctx: &MoritaContext) -> Result<((TensorProduct, Matrix), (TensorProduct, Matrix))> {
    let t = tensor_over(&ctx.m, &ctx.m_prime)?;
    let fm = t.induced_map(ctx.a().dim(), |i, j| ctx.f[i][j].clone())?;
    let tp = tensor_over(&ctx.m_prime, &ctx.m)?;
    let gm = tp.induced_map(ctx.a_prime().dim(), |j, i| ctx.g[j][i].clone())?;
    Ok(((t, fm), (tp, gm)))
}

/// Whether `f` and `g` induce bijections on the tensor products.
pub fn is_surjective_context(ctx: &MoritaContext) -> bool {
    match pairing_maps(ctx) {
        Ok(((_, f), (_, g))) => f.is_square() && f.is_invertible() && g.is_square() && g.is_invertible(),
        Err(_) => false,
    }
}

/// Trace ideal `Σ φ(P) = A` and a dual basis `x = Σ φ_i(x)·p_i`.
pub fn is_progenerator(p: &GradedModule) -> bool {
    progenerator_report(p).is_ok_and(|r| r.is_pass())
}

/// The two halves of [`is_progenerator`] as report entries.
pub fn progenerator_report(p: &GradedModule) -> Result<ValidationReport> {
    let a = p.algebra();
    let field = a.field();
    let dual = hom_graded(p, &GradedModule::regular_left(a))?;
    let values: Vec<Vec<Scalar>> = dual
        .basis()
        .iter()
        .flat_map(|phi| (0..p.dim()).map(move |i| phi.column(i)))
        .collect();
    let trace = Span::new(field, a.dim(), &values);
    let mut report = ValidationReport::new();
    report.expect(
        "Generator",
        "Σ φ(P) = A",
        trace.dim() == a.dim(),
        json!({ "trace_ideal_dim": trace.dim(), "algebra_dim": a.dim() }),
    );

    let n = p.dim();
    let mut maps = Vec::new();
    for phi in dual.basis() {
        for i in 0..n {
            let pi = unit_vector(field, n, i);
            let cols: Vec<Vec<Scalar>> = (0..n).map(|y| p.act(&phi.column(y), &pi)).collect();
            maps.push(Matrix::from_columns(field, n, &cols).entries().to_vec());
        }
    }
    let id = Matrix::identity(field, n);
    let projective = Span::new(field, n * n, &maps).contains(id.entries());
    report.expect(
        "Projective",
        "x = Σ φ_i(x)·p_i",
        projective,
        json!({ "module_dim": n }),
    );
    Ok(report)
}

/// `A′ ≅ End_A(M̃)^op` through `a′ ↦ (m ↦ m·a′)` and `M̃′ ≅ M̃*` through
/// `m′ ↦ f(−, m′)`.
pub fn check_uniqueness(ctx: &MoritaContext) -> Result<ValidationReport> {
    let mut report = ValidationReport::new();
    let m = ctx.m.left_module();
    let endo = end_op_algebra(&m)?;
    let ap = ctx.a_prime();
    let cols = (0..ap.dim())
        .map(|k| endo.element_of(ctx.m.right_action(k)))
        .collect::<Option<Vec<_>>>();
    match cols {
        Some(cols) => {
            let hom = AlgebraHom::new(ap.clone(), endo.algebra().clone(), Matrix::from_columns(ap.field(), endo.algebra().dim(), &cols))?;
            let r = hom.report(true);
            let bijective = hom.matrix().is_square() && hom.matrix().is_invertible();
            report.expect(
                "EndIso",
                "A′ ≅ End_A(M̃)^op",
                r.is_pass() && bijective,
                json!({ "failed": r.failures().map(|c| c.axiom.clone()).collect::<Vec<_>>(), "bijective": bijective }),
            );
        }
        None => report.fail("EndIso", "A′ ≅ End_A(M̃)^op", json!({ "error": "right action is not A-linear" })),
    }

    let dual = endo.dual()?;
    let a = ctx.a();
    let mp = &ctx.m_prime;
    let cols = (0..mp.dim())
        .map(|j| {
            let cols: Vec<Vec<Scalar>> = (0..ctx.m.dim()).map(|i| ctx.f[i][j].clone()).collect();
            dual.hom().coords(&Matrix::from_columns(a.field(), a.dim(), &cols))
        })
        .collect::<Option<Vec<_>>>();
    match cols {
        Some(cols) => {
            let d = Matrix::from_columns(a.field(), dual.bimodule().dim(), &cols);
            let right_linear = (0..a.dim()).all(|k| d.mul(mp.right_action(k)) == dual.bimodule().right_action(k).mul(&d));
            let graded = preserves_degrees(mp, dual.bimodule(), &d);
            let bijective = d.is_square() && d.is_invertible();
            report.expect(
                "DualIso",
                "M̃′ ≅ M̃*",
                right_linear && graded && bijective,
                json!({ "right_linear": right_linear, "graded": graded, "bijective": bijective }),
            );
        }
        None => report.fail("DualIso", "M̃′ ≅ M̃*", json!({ "error": "f(−, m̃′) is not A-linear" })),
    }
    Ok(report)
}

/// Which way a bimodule functor goes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// `A-Gr → A′-Gr`
    Forward,
    /// `A′-Gr → A-Gr`
    Backward,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Direction::Forward => write!(f, "A→A′"),
            Direction::Backward => write!(f, "A′→A"),
        }
    }
}

/// The functor `X ↦ bimodule ⊗ X`.
#[derive(Clone, Debug)]
pub struct FunctorData {
    bimodule: GradedBimodule,
    over_c: Option<BimoduleOverC>,
    direction: Direction,
}

impl FunctorData {
    pub fn new(bimodule: GradedBimodule, over_c: Option<BimoduleOverC>, direction: Direction) -> FunctorData {
        let bimodule = over_c.as_ref().map_or(bimodule, |b| b.bimodule().clone());
        FunctorData {
            bimodule,
            over_c,
            direction,
        }
    }

    pub fn over(bimodule: BimoduleOverC, direction: Direction) -> FunctorData {
        FunctorData::new(bimodule.bimodule().clone(), Some(bimodule), direction)
    }

    pub fn bimodule(&self) -> &GradedBimodule {
        &self.bimodule
    }

    pub fn over_c(&self) -> Option<&BimoduleOverC> {
        self.over_c.as_ref()
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn source(&self) -> &GradedAlgebra {
        self.bimodule.right_algebra()
    }

    pub fn target(&self) -> &GradedAlgebra {
        self.bimodule.left_algebra()
    }

    pub fn apply(&self, x: &GradedModule) -> Result<GradedModule> {
        Ok(apply_functor(&self.bimodule, x)?.0)
    }

    /// `F(φ) = id ⊗ φ` for `φ: X → Y`.
    pub fn apply_map(&self, x: &GradedModule, y: &GradedModule, phi: &Matrix) -> Result<Matrix> {
        let (_, tx) = apply_functor(&self.bimodule, x)?;
        let (_, ty) = apply_functor(&self.bimodule, y)?;
        map_between(&self.bimodule, &tx, &ty, phi)
    }
}

fn map_between(b: &GradedBimodule, tx: &TensorProduct, ty: &TensorProduct, phi: &Matrix) -> Result<Matrix> {
    tx.induced_map(ty.dim(), |j, k| ty.pure(&b.basis_vector(j), &phi.column(k)))
}

/// A named test object for naturality checks.
#[derive(Clone, Debug)]
pub struct Sample {
    pub name: String,
    pub module: GradedModule,
}

impl Sample {
    pub fn new(name: impl Into<String>, module: GradedModule) -> Sample {
        Sample {
            name: name.into(),
            module,
        }
    }
}

/// `A`, every suspension `A(g)`, and `M̃` as a left `A`-module.
pub fn default_samples(ctx: &MoritaContext) -> Vec<Sample> {
    let a = ctx.a();
    let reg = GradedModule::regular_left(a);
    let grp = a.group();
    let mut out = vec![Sample::new("A", reg.clone())];
    for g in grp.elements().skip(1) {
        out.push(Sample::new(format!("A({})", grp.label(g)), suspend(&reg, g)));
    }
    out.push(Sample::new("M̃", ctx.m.left_module()));
    out
}

struct Applied {
    name: String,
    x: GradedModule,
    y: GradedModule,
    t: TensorProduct,
}

/// Unit and counit isomorphisms, commutation with suspensions, and the
/// behavior of `F = M̃′ ⊗_A −` on homomorphisms, for each sample.
pub fn verify_morita_one(ctx: &MoritaContext, samples: &[Sample]) -> Result<ValidationReport> {
    if !is_surjective_context(ctx) {
        return Err(Error::NotSurjective);
    }
    let (m, mp) = (&ctx.m, &ctx.m_prime);
    let grp = ctx.a().group();
    let mut report = ValidationReport::new();
    let mut applied = Vec::with_capacity(samples.len());

    for s in samples {
        let x = &s.module;
        let (y, t1) = apply_functor(mp, x)?;
        let (z, t2) = apply_functor(m, &y)?;
        let unit = t2.induced_map(x.dim(), |i, q| {
            let (j, k) = t1.factors(q);
            x.act(&ctx.f[i][j], &unit_vector(x.field(), x.dim(), k))
        });
        let ok = unit.as_ref().is_ok_and(|u| is_iso_of_degree_one(&z, x, u));
        report.expect(
            &format!("{}.Unit", s.name),
            "M̃ ⊗_A′ (M̃′ ⊗_A X) ≅ X",
            ok,
            json!({ "sample": s.name, "dims": [z.dim(), x.dim()], "balanced": unit.is_ok() }),
        );

        let (u, t3) = apply_functor(mp, &z)?;
        let counit = t3.induced_map(y.dim(), |j, q| {
            let (i, r) = t2.factors(q);
            y.act(&ctx.g[j][i], &unit_vector(y.field(), y.dim(), r))
        });
        let ok = counit.as_ref().is_ok_and(|c| is_iso_of_degree_one(&u, &y, c));
        report.expect(
            &format!("{}.Counit", s.name),
            "M̃′ ⊗_A (M̃ ⊗_A′ Y) ≅ Y",
            ok,
            json!({ "sample": s.name, "dims": [u.dim(), y.dim()], "balanced": counit.is_ok() }),
        );

        for g in grp.elements() {
            let lhs = apply_functor(mp, &suspend(x, g))?.0;
            let ok = is_graded_iso(&lhs, &suspend(&y, g))?.is_some();
            report.expect(
                &format!("{}.Suspension.{}", s.name, grp.label(g)),
                "M̃′ ⊗_A X(g) ≅ (M̃′ ⊗_A X)(g)",
                ok,
                json!({ "sample": s.name, "g": grp.label(g) }),
            );
        }
        applied.push(Applied {
            name: s.name.clone(),
            x: x.clone(),
            y,
            t: t1,
        });
    }

    let actions = match &ctx.over_c {
        Some((x, xp)) => Some(
            applied
                .iter()
                .map(|s| Ok((c_action(x, &s.x)?, c_action(xp, &s.y)?)))
                .collect::<Result<Vec<_>>>()?,
        ),
        None => None,
    };

    for (p, s1) in applied.iter().enumerate() {
        for (q, s2) in applied.iter().enumerate() {
            let name = format!("{}→{}", s1.name, s2.name);
            let hom = hom_graded(&s1.x, &s2.x)?;
            let images = hom
                .basis()
                .iter()
                .map(|phi| map_between(mp, &s1.t, &s2.t, phi))
                .collect::<Result<Vec<_>>>()?;

            let bad = hom
                .basis()
                .iter()
                .zip(hom.degrees())
                .zip(&images)
                .position(|((_, &h), img)| !is_graded_map(&s1.y, &s2.y, img, h));
            report.record(
                &format!("{name}.HomGraded"),
                "F(φ) has the degree of φ",
                bad.map(|k| json!({ "source": s1.name, "target": s2.name, "basis_map": k, "degree": grp.label(hom.degree(k)) })),
            );

            let target = hom_graded(&s1.y, &s2.y)?;
            let flat: Vec<Vec<Scalar>> = images.iter().map(|m| m.entries().to_vec()).collect();
            let rank = Span::new(ctx.a().field(), s2.y.dim() * s1.y.dim(), &flat).dim();
            report.expect(
                &format!("{name}.FullyFaithful"),
                "Hom_A(X, Y) ≅ Hom_A′(FX, FY)",
                rank == hom.dim() && rank == target.dim(),
                json!({ "source_hom_dim": hom.dim(), "image_rank": rank, "target_hom_dim": target.dim() }),
            );

            if let Some(actions) = &actions {
                let w = hom_over_c(mp, s1, s2, &hom, &actions[p], &actions[q])?;
                report.record(&format!("{name}.HomOverC"), "M̃′⊗_A(cφc′) = c(M̃′⊗_Aφ)c′", w);
            }
        }
    }
    Ok(report)
}

type Actions = (Vec<Matrix>, Vec<Matrix>);

fn hom_over_c(
    mp: &GradedBimodule,
    s1: &Applied,
    s2: &Applied,
    hom: &HomSpace,
    act1: &Actions,
    act2: &Actions,
) -> Result<Option<serde_json::Value>> {
    let cdim = act1.0.len();
    for (k, phi) in hom.basis().iter().enumerate() {
        for c in 0..cdim {
            for cp in 0..cdim {
                let inner = act2.0[cp].mul(phi).mul(&act1.0[c]);
                let lhs = map_between(mp, &s1.t, &s2.t, &inner)?;
                let f_phi = map_between(mp, &s1.t, &s2.t, phi)?;
                let rhs = act2.1[cp].mul(&f_phi).mul(&act1.1[c]);
                if lhs != rhs {
                    return Ok(Some(json!({
                        "source": s1.name,
                        "target": s2.name,
                        "basis_map": k,
                        "c": c,
                        "c′": cp,
                    })));
                }
            }
        }
    }
    Ok(None)
}

fn is_iso_of_degree_one(m: &GradedModule, n: &GradedModule, f: &Matrix) -> bool {
    m.dim() == n.dim() && is_graded_map(m, n, f, m.group().identity()) && f.is_invertible()
}

/// Graded isomorphisms `QF ⊗_A QG → A′` and `QG ⊗_A′ QF → A` of bimodules,
/// given on the quotient bases of the tensor products.
#[derive(Clone, Debug)]
pub struct MoritaWitnesses {
    pub fg: Matrix,
    pub gf: Matrix,
}

/// The functors of a surjective context with the witnesses given by `g`
/// and `f`.
pub fn witnesses_from_context(ctx: &MoritaContext) -> Result<(FunctorData, FunctorData, MoritaWitnesses)> {
    let ((_, f), (_, g)) = pairing_maps(ctx)?;
    Ok((ctx.forward()?, ctx.backward()?, MoritaWitnesses { fg: g, gf: f }))
}

/// For functors `QF: A-Gr → A′-Gr` and `QG: A′-Gr → A-Gr` given by
/// bimodules over `C` and witnesses that they are mutually inverse:
/// `P = QF(A)` is a bimodule over `C`, `α(a) = (p ↦ p·a)` is a graded
/// isomorphism `A → End_A′(P)^op` with `α∘ζ = ζ″`, and `QF ≅ P ⊗_A −` on
/// the samples.
pub fn verify_morita_two(
    qf: &FunctorData,
    qg: &FunctorData,
    witnesses: &MoritaWitnesses,
    samples: &[Sample],
) -> Result<ValidationReport> {
    let (a, ap) = (qf.source(), qf.target());
    if qg.source() != ap || qg.target() != a {
        return Err(Error::AlgebraMismatch("QG must go back from A′ to A".into()));
    }
    let fg = tensor_over(qf.bimodule(), qg.bimodule())?;
    if !(fg.dim() == witnesses.fg.cols() && is_graded_bimodule_iso(fg.bimodule(), &GradedBimodule::regular(ap), &witnesses.fg)) {
        return Err(Error::WitnessNotIso("QF ⊗_A QG → A′".into()));
    }
    let gf = tensor_over(qg.bimodule(), qf.bimodule())?;
    if !(gf.dim() == witnesses.gf.cols() && is_graded_bimodule_iso(gf.bimodule(), &GradedBimodule::regular(a), &witnesses.gf)) {
        return Err(Error::WitnessNotIso("QG ⊗_A′ QF → A".into()));
    }

    let mut report = ValidationReport::new();
    let tp = tensor_over(qf.bimodule(), &GradedBimodule::regular(a))?;
    let p = tp.bimodule().clone();

    // (a)
    match qf.over_c() {
        Some(b) => match BimoduleOverC::new(p.clone(), b.left().clone(), b.right().clone()) {
            Ok(pc) => report.extend_prefixed("P", check_bimodule_over_c(&pc)),
            Err(e) => report.fail("P.OverC", "P is a bimodule over C", json!({ "error": e.to_string() })),
        },
        None => report.fail("P.OverC", "P is a bimodule over C", json!({ "error": "QF carries no structure over C" })),
    }

    // (b)
    let p_left = p.left_module();
    let endo = end_op_algebra(&p_left)?;
    let cols = (0..a.dim()).map(|i| endo.element_of(p.right_action(i))).collect::<Option<Vec<_>>>();
    let alpha = match cols {
        Some(cols) => Some(AlgebraHom::new(a.clone(), endo.algebra().clone(), Matrix::from_columns(a.field(), endo.algebra().dim(), &cols))?),
        None => None,
    };
    match &alpha {
        Some(alpha) => {
            let r = alpha.report(true);
            let bijective = alpha.matrix().is_square() && alpha.matrix().is_invertible();
            report.expect(
                "Alpha.GradedIso",
                "α: A → End_A′(P)^op is a graded isomorphism",
                r.is_pass() && bijective,
                json!({ "failed": r.failures().map(|c| c.axiom.clone()).collect::<Vec<_>>(), "bijective": bijective }),
            );
        }
        None => report.fail(
            "Alpha.GradedIso",
            "α: A → End_A′(P)^op is a graded isomorphism",
            json!({ "error": "right multiplication is not A′-linear" }),
        ),
    }
    match (qf.over_c(), &alpha) {
        (Some(b), Some(alpha)) => {
            let x = b.right();
            let xp = b.left();
            match algebra_over_c_on(xp, &endo) {
                Ok(x2) => {
                    let lhs = alpha.matrix().mul(x.zeta());
                    let w = (0..lhs.cols()).find(|&k| lhs.column(k) != x2.zeta().column(k)).map(|k| {
                        json!({
                            "c": x.c().algebra().label(k),
                            "alpha_zeta": endo.algebra().format(&lhs.column(k)),
                            "zeta_double_prime": endo.algebra().format(&x2.zeta().column(k)),
                        })
                    });
                    report.record("Alpha.Zeta", "α∘ζ = ζ″", w);
                }
                Err(e) => report.fail("Alpha.Zeta", "α∘ζ = ζ″", json!({ "error": e.to_string() })),
            }
        }
        _ => report.fail("Alpha.Zeta", "α∘ζ = ζ″", json!({ "error": "no structure over C to compare" })),
    }

    let mut natural = Vec::with_capacity(samples.len());
    for s in samples {
        let x = &s.module;
        let (fx, t_fx) = apply_functor(qf.bimodule(), x)?;
        let (px, t_px) = apply_functor(&p, x)?;
        let eta = t_px.induced_map(fx.dim(), |i, l| {
            let (j, k) = tp.factors(i);
            let ax = x.act(&a.basis_vector(k), &unit_vector(x.field(), x.dim(), l));
            t_fx.pure(&qf.bimodule().basis_vector(j), &ax)
        });
        let ok = eta.as_ref().is_ok_and(|e| is_iso_of_degree_one(&px, &fx, e));
        report.expect(
            &format!("{}.Natural", s.name),
            "P ⊗_A X ≅ QF ⊗_A X",
            ok,
            json!({ "sample": s.name, "balanced": eta.is_ok() }),
        );
        natural.push((s.name.as_str(), x.clone(), t_fx, t_px, eta.ok()));
    }
    for (n1, x1, tf1, tp1, e1) in &natural {
        for (n2, x2, tf2, tp2, e2) in &natural {
            let (Some(e1), Some(e2)) = (e1, e2) else { continue };
            let hom = hom_graded(x1, x2)?;
            let mut bad = None;
            for (k, phi) in hom.basis().iter().enumerate() {
                let f_phi = map_between(qf.bimodule(), tf1, tf2, phi)?;
                let p_phi = map_between(&p, tp1, tp2, phi)?;
                if e2.mul(&p_phi) != f_phi.mul(e1) {
                    bad = Some(k);
                    break;
                }
            }
            report.record(
                &format!("{n1}→{n2}.Naturality"),
                "η_Y∘(P⊗φ) = (QF⊗φ)∘η_X",
                bad.map(|k| json!({ "source": n1, "target": n2, "basis_map": k })),
            );
        }
    }
    Ok(report)
}

/// `G_P = G_{F(P)}`.
pub fn check_same_stabilizer(f: &FunctorData, p: &GradedModule) -> Result<ValidationReport> {
    let image = f.apply(p)?;
    let before = stabilizer(p)?;
    let after = stabilizer(&image)?;
    let mut report = ValidationReport::new();
    report.expect(
        "SameStabilizer",
        "G_P = G_F(P)",
        before.members() == after.members(),
        json!({ "direction": f.direction().to_string(), "source": before.labels(), "image": after.labels() }),
    );
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{column_module, e1, e2, e3, free_rank_two, p3, regular};
    use crate::module::{character_automorphism, GradedBimodule};

    fn canonical(a: &GradedAlgebra, p: &GradedModule) -> MoritaContext {
        let x = AlgebraOverC::over_centralizer(a).unwrap();
        build_canonical_context(&x, p).unwrap()
    }

    #[test]
    fn canonical_contexts_pass_and_are_surjective() {
        for (a, p) in [(e1(), regular(&e1())), (e2(), regular(&e2())), (e1(), free_rank_two(&e1()))] {
            let ctx = canonical(&a, &p);
            let r = check_context(&ctx);
            assert!(r.is_pass(), "{r}");
            assert!(is_surjective_context(&ctx));
            assert!(is_progenerator(&p));
            assert!(check_uniqueness(&ctx).unwrap().is_pass());
        }
        let ctx = canonical(&e1(), &free_rank_two(&e1()));
        assert_eq!((ctx.m().dim(), ctx.m_prime().dim()), (4, 4));
    }

    #[test]
    fn zero_pairings_pass_check_context() {
        let full = canonical(&e1(), &regular(&e1()));
        let ctx = full.with_zero_pairings();
        assert!(check_context(&ctx).is_pass());
        // Zeroing f alone breaks (m̃m̃′)ñ = m̃(m̃′ñ).
        let mut only_f = full.clone();
        only_f.f = ctx.f.clone();
        assert!(!check_context(&only_f).passed("Associativity"));
        assert!(!is_surjective_context(&ctx));
        assert_eq!(verify_morita_one(&ctx, &[]).unwrap_err(), Error::NotSurjective);
    }

    #[test]
    fn perturbed_g_breaks_associativity() {
        let ctx = canonical(&e2(), &regular(&e2()));
        let mut v = ctx.g()[0][0].clone();
        v[0] = &v[0] + &ctx.a_prime().field().one();
        let bad = ctx.with_g_value(0, 0, v).unwrap();
        let r = check_context(&bad);
        assert!(!r.passed("Associativity"));
        assert_eq!(r.get("Associativity").unwrap().law, ASSOCIATIVITY);
    }

    #[test]
    fn progenerators() {
        assert!(!is_progenerator(&GradedModule::zero(&e1(), crate::module::Side::Left)));
        assert!(!is_progenerator(&p3()));
        assert!(is_progenerator(&column_module()));
        let ctx = build_graded_context(&p3()).unwrap();
        assert!(check_context(&ctx).is_pass());
        assert!(!is_surjective_context(&ctx));
    }

    #[test]
    fn morita_one_on_e1() {
        let a = e1();
        let ctx = canonical(&a, &regular(&a));
        let reg = regular(&a);
        let samples = vec![
            Sample::new("A", reg.clone()),
            Sample::new("A(s)", suspend(&reg, 1)),
            Sample::new("A⊕A(s)", free_rank_two(&a)),
        ];
        let r = verify_morita_one(&ctx, &samples).unwrap();
        assert!(r.is_pass(), "{r}");
    }

    #[test]
    fn morita_one_on_e2_with_columns() {
        let a = e2();
        let ctx = canonical(&a, &regular(&a));
        let samples = vec![Sample::new("A", regular(&a)), Sample::new("col", column_module())];
        let r = verify_morita_one(&ctx, &samples).unwrap();
        assert!(r.is_pass(), "{r}");
    }

    #[test]
    fn stabilizers_are_preserved() {
        let a = e3();
        let ctx = canonical(&a, &regular(&a));
        let r = check_same_stabilizer(&ctx.forward().unwrap(), &p3()).unwrap();
        assert!(r.is_pass(), "{r}");
        assert!(stabilizer(&ctx.forward().unwrap().apply(&p3()).unwrap()).unwrap().is_trivial());
    }

    #[test]
    fn morita_two_and_twisted_negative() {
        let a = e1();
        let ctx = canonical(&a, &free_rank_two(&a));
        let (qf, qg, w) = witnesses_from_context(&ctx).unwrap();
        let samples = default_samples(&ctx);
        let r = verify_morita_two(&qf, &qg, &w, &samples).unwrap();
        assert!(r.is_pass(), "{r}");

        let field = a.field();
        let sigma = character_automorphism(&a, &[field.one(), -field.one()]).unwrap();
        let twisted = |b: &BimoduleOverC, right: bool| -> BimoduleOverC {
            let m: GradedBimodule = if right { b.bimodule().twist_right(&sigma) } else { b.bimodule().twist_left(&sigma) }.unwrap();
            BimoduleOverC::new(m, b.left().clone(), b.right().clone()).unwrap()
        };
        let qf2 = FunctorData::over(twisted(qf.over_c().unwrap(), true), Direction::Forward);
        let qg2 = FunctorData::over(twisted(qg.over_c().unwrap(), false), Direction::Backward);
        let w2 = MoritaWitnesses {
            fg: w.fg.clone(),
            gf: sigma.mul(&w.gf),
        };
        let r = verify_morita_two(&qf2, &qg2, &w2, &samples).unwrap();
        let fail = r.get("P.Condition3").unwrap();
        assert!(!fail.passed());
        assert!(fail.witness["degree"].is_string());
    }
}
