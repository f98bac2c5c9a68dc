//! Exact decision procedure for "does this linear span of square matrices
//! contain an invertible matrix?".
//!
//! The determinant of the pencil `Σ tᵢ Fᵢ` is expanded symbolically. Over a
//! prime field the expansion is reduced modulo `t^p = t`, so that a nonzero
//! reduced polynomial is exactly a polynomial function that does not vanish
//! on all of `F_p^k`. A nonvanishing point is then found by a deterministic
//! descent on the leading coefficients, using at most `deg + 1` candidate
//! values per variable.

use std::collections::{BTreeMap, HashMap};

use super::matrix::Matrix;
use super::scalar::{Field, Scalar};
use crate::error::{Error, Result};

/// Largest pencil size accepted by the symbolic expansion.
pub const MAX_PENCIL_SIZE: usize = 20;

/// Multivariate polynomial in canonical form (no zero coefficients).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenericDetPoly {
    field: Field,
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Scalar>,
}

impl GenericDetPoly {
    pub fn zero(field: Field, nvars: usize) -> Self {
        GenericDetPoly {
            field,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Scalar, nvars: usize) -> Self {
        let mut p = GenericDetPoly::zero(c.field(), nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn variable(field: Field, nvars: usize, i: usize) -> Self {
        let mut exp = vec![0; nvars];
        exp[i] = 1;
        let mut p = GenericDetPoly::zero(field, nvars);
        p.add_term(exp, field.one());
        p
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &Scalar)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn coefficient(&self, exponents: &[u32]) -> Scalar {
        self.terms
            .get(exponents)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    fn add_term(&mut self, exp: Vec<u32>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exp) {
            Some(old) => {
                let sum = &*old + &c;
                if sum.is_zero() {
                    self.terms.remove(&exp);
                } else {
                    *old = sum;
                }
            }
            None => {
                self.terms.insert(exp, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = GenericDetPoly::zero(self.field, self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    pub fn evaluate(&self, point: &[Scalar]) -> Scalar {
        assert_eq!(point.len(), self.nvars);
        let mut acc = self.field.zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (x, &k) in point.iter().zip(e) {
                for _ in 0..k {
                    term = &term * x;
                }
            }
            acc = &acc + &term;
        }
        acc
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|e| e[var]).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum())
            .max()
            .unwrap_or(0)
    }

    /// Canonical representative of the polynomial *function* on `F_p^k`
    /// (exponents reduced using `t^p = t`). Identity over `Q`.
    pub fn function_reduced(&self) -> Self {
        let Field::Prime(p) = self.field else {
            return self.clone();
        };
        let p = p as u32;
        let mut out = GenericDetPoly::zero(self.field, self.nvars);
        for (e, c) in &self.terms {
            let e = e
                .iter()
                .map(|&k| if k == 0 { 0 } else { (k - 1) % (p - 1) + 1 })
                .collect();
            out.add_term(e, c.clone());
        }
        out
    }

    fn substitute(&self, var: usize, value: &Scalar) -> Self {
        let mut out = GenericDetPoly::zero(self.field, self.nvars);
        for (e, c) in &self.terms {
            let mut c = c.clone();
            for _ in 0..e[var] {
                c = &c * value;
            }
            let mut e = e.clone();
            e[var] = 0;
            out.add_term(e, c);
        }
        out
    }

    fn leading_coefficient_in(&self, var: usize) -> Self {
        let top = self.degree_in(var);
        let mut out = GenericDetPoly::zero(self.field, self.nvars);
        for (e, c) in &self.terms {
            if e[var] == top {
                let mut e = e.clone();
                e[var] = 0;
                out.add_term(e, c.clone());
            }
        }
        out
    }

    /// Symbolic `det(Σ tᵢ Fᵢ)` by Laplace expansion over column subsets,
    /// one row at a time.
    pub fn pencil_determinant(field: Field, n: usize, basis: &[Matrix]) -> Result<Self> {
        check_pencil(field, n, basis)?;
        if n > MAX_PENCIL_SIZE {
            return Err(Error::Shape(format!(
                "pencil of size {n} exceeds the symbolic limit {MAX_PENCIL_SIZE}"
            )));
        }
        let k = basis.len();
        // Linear form of each entry: (variable, coefficient) pairs.
        let forms: Vec<Vec<Vec<(usize, Scalar)>>> = (0..n)
            .map(|r| {
                (0..n)
                    .map(|c| {
                        basis
                            .iter()
                            .enumerate()
                            .filter(|(_, m)| !m.get(r, c).is_zero())
                            .map(|(v, m)| (v, m.get(r, c).clone()))
                            .collect()
                    })
                    .collect()
            })
            .collect();

        let mut layer: HashMap<u32, GenericDetPoly> = HashMap::new();
        layer.insert(0, GenericDetPoly::constant(field.one(), k));
        for (row, row_forms) in forms.iter().enumerate() {
            let mut next: HashMap<u32, GenericDetPoly> = HashMap::new();
            for (&mask, minor) in &layer {
                for (col, form) in row_forms.iter().enumerate() {
                    if mask & (1 << col) != 0 || form.is_empty() {
                        continue;
                    }
                    let below = (mask & ((1u32 << col) - 1)).count_ones() as usize;
                    let negate = (row + below) % 2 == 1;
                    let entry = next
                        .entry(mask | (1 << col))
                        .or_insert_with(|| GenericDetPoly::zero(field, k));
                    for (e, c) in &minor.terms {
                        for (v, a) in form {
                            let mut e = e.clone();
                            e[*v] += 1;
                            let term = c * a;
                            entry.add_term(e, if negate { -term } else { term });
                        }
                    }
                }
            }
            next.retain(|_, p| !p.is_zero());
            layer = next;
        }
        let full = if n == 0 { 0 } else { (1u32 << n) - 1 };
        Ok(layer
            .remove(&full)
            .unwrap_or_else(|| GenericDetPoly::zero(field, k)))
    }

    /// A point where the polynomial function is nonzero, or `None` when it
    /// vanishes identically on the field.
    pub fn find_nonroot(&self) -> Option<Vec<Scalar>> {
        let reduced = self.function_reduced();
        let vars: Vec<usize> = (0..self.nvars).collect();
        let assignment = nonroot(&reduced, &vars)?;
        let mut point = vec![self.field.zero(); self.nvars];
        for (v, x) in assignment {
            point[v] = x;
        }
        debug_assert!(!self.evaluate(&point).is_zero());
        Some(point)
    }
}

fn nonroot(poly: &GenericDetPoly, vars: &[usize]) -> Option<Vec<(usize, Scalar)>> {
    if poly.is_zero() {
        return None;
    }
    let Some((&v, rest)) = vars.split_first() else {
        return Some(Vec::new());
    };
    let top = poly.degree_in(v);
    let mut assignment = nonroot(&poly.leading_coefficient_in(v), rest)?;
    let mut univariate = poly.clone();
    for (w, x) in &assignment {
        univariate = univariate.substitute(*w, x);
    }
    for t in 0..=top as i64 {
        let x = poly.field.from_i64(t);
        if !univariate.substitute(v, &x).is_zero() {
            assignment.push((v, x));
            return Some(assignment);
        }
    }
    unreachable!("a nonzero univariate polynomial of degree {top} has a nonroot among {top}+1 points")
}

fn check_pencil(field: Field, n: usize, basis: &[Matrix]) -> Result<()> {
    for m in basis {
        if m.field() != field {
            return Err(Error::FieldMismatch(format!(
                "pencil matrix over {} in a {field} computation",
                m.field()
            )));
        }
        if m.rows() != n || m.cols() != n {
            return Err(Error::Shape(format!(
                "pencil matrix is {}×{}, expected {n}×{n}",
                m.rows(),
                m.cols()
            )));
        }
    }
    Ok(())
}

fn combine(field: Field, n: usize, basis: &[Matrix], coeffs: &[Scalar]) -> Matrix {
    basis
        .iter()
        .zip(coeffs)
        .filter(|(_, c)| !c.is_zero())
        .fold(Matrix::zeros(field, n, n), |acc, (m, c)| acc.add(&m.scale(c)))
}

/// Coefficients of an invertible combination of `basis` (all `n×n`) together
/// with the combination itself, or `None` if every element of the span is
/// singular.
///
/// A handful of cheap probe points are tried first; the symbolic expansion
/// decides the remaining cases exactly.
pub fn invertible_combination(
    field: Field,
    n: usize,
    basis: &[Matrix],
) -> Result<Option<(Vec<Scalar>, Matrix)>> {
    check_pencil(field, n, basis)?;
    let k = basis.len();
    if n == 0 {
        return Ok(Some((vec![field.zero(); k], Matrix::zeros(field, 0, 0))));
    }
    if k == 0 {
        return Ok(None);
    }

    let mut probes: Vec<Vec<Scalar>> = (0..k)
        .map(|i| {
            let mut v = vec![field.zero(); k];
            v[i] = field.one();
            v
        })
        .collect();
    probes.push(vec![field.one(); k]);
    probes.push((1..=k as i64).map(|i| field.from_i64(i)).collect());
    for coeffs in probes {
        let m = combine(field, n, basis, &coeffs);
        if m.is_invertible() {
            return Ok(Some((coeffs, m)));
        }
    }

    let det = GenericDetPoly::pencil_determinant(field, n, basis)?;
    let Some(point) = det.find_nonroot() else {
        return Ok(None);
    };
    let m = combine(field, n, basis, &point);
    debug_assert!(m.is_invertible());
    Ok(Some((point, m)))
}

/// An invertible element of the span of `basis`, if one exists.
pub fn generic_invertible_element(basis: &[Matrix]) -> Result<Option<Matrix>> {
    let Some(first) = basis.first() else {
        return Ok(None);
    };
    if !first.is_square() {
        return Err(Error::Shape("pencil matrices must be square".into()));
    }
    Ok(invertible_combination(first.field(), first.rows(), basis)?.map(|(_, m)| m))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rational
    }

    fn e(i: usize, j: usize) -> Matrix {
        let mut m = Matrix::zeros(q(), 2, 2);
        m.set(i, j, q().one());
        m
    }

    #[test]
    fn identity_is_its_own_witness() {
        let id = Matrix::identity(q(), 3);
        assert_eq!(generic_invertible_element(&[id.clone()]).unwrap(), Some(id));
    }

    #[test]
    fn nilpotent_span_has_no_unit() {
        assert_eq!(generic_invertible_element(&[e(0, 1)]).unwrap(), None);
        let det = GenericDetPoly::pencil_determinant(q(), 2, &[e(0, 1)]).unwrap();
        assert!(det.is_zero());
    }

    #[test]
    fn diagonal_span_symbolic_determinant() {
        let det = GenericDetPoly::pencil_determinant(q(), 2, &[e(0, 0), e(1, 1)]).unwrap();
        // det(t0 E11 + t1 E22) = t0 t1
        assert_eq!(det.terms().count(), 1);
        assert_eq!(det.coefficient(&[1, 1]), q().one());
        let m = generic_invertible_element(&[e(0, 0), e(1, 1)]).unwrap().unwrap();
        assert!(!m.get(0, 0).is_zero() && !m.get(1, 1).is_zero());
    }

    #[test]
    fn antidiagonal_determinant_sign() {
        let det = GenericDetPoly::pencil_determinant(q(), 2, &[e(0, 1), e(1, 0)]).unwrap();
        assert_eq!(det.coefficient(&[1, 1]), q().from_i64(-1));
    }

    #[test]
    fn polynomial_nonzero_but_function_zero_over_f2() {
        // diag(t0, t1, t0 + t1) is singular at every point of F_2^2.
        let f2 = Field::Prime(2);
        let a = Matrix::from_ints(f2, &[&[1, 0, 0], &[0, 0, 0], &[0, 0, 1]]);
        let b = Matrix::from_ints(f2, &[&[0, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        let det = GenericDetPoly::pencil_determinant(f2, 3, &[a.clone(), b.clone()]).unwrap();
        assert!(!det.is_zero());
        assert!(det.function_reduced().is_zero());
        assert_eq!(invertible_combination(f2, 3, &[a, b]).unwrap(), None);
    }

    #[test]
    fn descent_finds_nonroot_needing_large_values() {
        // t0 (t0 - 1) (t0 - 2) t1 over Q: nonzero only for t0 ∉ {0,1,2}, t1 ≠ 0.
        let f = q();
        let t0 = GenericDetPoly::variable(f, 2, 0);
        let t1 = GenericDetPoly::variable(f, 2, 1);
        let c = |n| GenericDetPoly::constant(f.from_i64(n), 2);
        let p = t0
            .mul(&t0.add(&c(-1)))
            .mul(&t0.add(&c(-2)))
            .mul(&t1);
        let pt = p.find_nonroot().unwrap();
        assert!(!p.evaluate(&pt).is_zero());
        assert_eq!(pt, vec![f.from_i64(3), f.from_i64(1)]);
    }

    #[test]
    fn empty_cases() {
        assert_eq!(generic_invertible_element(&[]).unwrap(), None);
        let (c, m) = invertible_combination(q(), 0, &[]).unwrap().unwrap();
        assert!(c.is_empty() && m.rows() == 0);
        assert_eq!(invertible_combination(q(), 2, &[]).unwrap(), None);
    }
}
