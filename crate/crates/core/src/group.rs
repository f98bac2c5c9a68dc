//! Finite groups given by Cayley tables. Index 0 is always the identity.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// An element of a [`FiniteGroup`], by index.
pub type GroupElt = usize;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteGroup {
    table: Vec<Vec<GroupElt>>,
    inverses: Vec<GroupElt>,
    labels: Vec<String>,
}

impl FiniteGroup {
    /// Validates a Cayley table. `labels` defaults to `"1", "g1", "g2", ...`.
    pub fn new(table: Vec<Vec<GroupElt>>, labels: Option<Vec<String>>) -> Result<FiniteGroup> {
        let n = table.len();
        if n == 0 {
            return Err(Error::Shape("a group has at least one element".into()));
        }
        for row in &table {
            if row.len() != n {
                return Err(Error::Shape(format!("table row of length {} in a {n}×{n} table", row.len())));
            }
            if let Some(&bad) = row.iter().find(|&&x| x >= n) {
                return Err(Error::Shape(format!("table entry {bad} out of range 0..{n}")));
            }
        }
        for g in 0..n {
            if table[0][g] != g || table[g][0] != g {
                return Err(Error::NoIdentity(g));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::NotAssociative(a, b, c));
                    }
                }
            }
        }
        let mut inverses = Vec::with_capacity(n);
        for g in 0..n {
            let inv = (0..n).find(|&h| table[g][h] == 0 && table[h][g] == 0);
            inverses.push(inv.ok_or(Error::NoInverse(g))?);
        }
        let labels = match labels {
            Some(l) if l.len() == n => l,
            Some(l) => {
                return Err(Error::Shape(format!("{} labels for a group of order {n}", l.len())))
            }
            None => (0..n)
                .map(|g| if g == 0 { "1".to_string() } else { format!("g{g}") })
                .collect(),
        };
        Ok(FiniteGroup {
            table,
            inverses,
            labels,
        })
    }

    pub fn trivial() -> FiniteGroup {
        FiniteGroup::cyclic(1)
    }

    /// `C_n` with element `k` standing for the `k`-th power of a generator.
    pub fn cyclic(n: usize) -> FiniteGroup {
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        let labels = (0..n)
            .map(|k| match (n, k) {
                (_, 0) => "1".to_string(),
                (2, 1) => "s".to_string(),
                (_, 1) => "g".to_string(),
                _ => format!("g^{k}"),
            })
            .collect();
        FiniteGroup::new(table, Some(labels)).expect("cyclic group table")
    }

    /// Group generated by closing the given permutations under composition.
    /// Elements are ordered identity first, then by discovery.
    /// Composition is `(στ)(x) = σ(τ(x))`.
    pub fn from_permutations(generators: &[Vec<usize>]) -> Result<FiniteGroup> {
        let degree = generators.first().map_or(0, Vec::len);
        let identity: Vec<usize> = (0..degree).collect();
        let mut elements = vec![identity];
        let mut frontier = 0;
        while frontier < elements.len() {
            let current = elements[frontier].clone();
            for g in generators {
                if g.len() != degree {
                    return Err(Error::Shape("permutations of different degrees".into()));
                }
                let product: Vec<usize> = (0..degree).map(|x| current[g[x]]).collect();
                if !elements.contains(&product) {
                    elements.push(product);
                }
            }
            frontier += 1;
        }
        let index = |p: &Vec<usize>| elements.iter().position(|q| q == p).expect("closed");
        let table = elements
            .iter()
            .map(|a| {
                elements
                    .iter()
                    .map(|b| index(&(0..degree).map(|x| a[b[x]]).collect()))
                    .collect()
            })
            .collect();
        let labels = elements.iter().map(|p| cycle_notation(p)).collect();
        FiniteGroup::new(table, Some(labels))
    }

    /// `S_3` with elements `1, (123), (132), (12), (13), (23)`.
    pub fn symmetric3() -> FiniteGroup {
        let perms: [[usize; 3]; 6] = [
            [0, 1, 2],
            [1, 2, 0],
            [2, 0, 1],
            [1, 0, 2],
            [2, 1, 0],
            [0, 2, 1],
        ];
        let index = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
        let table = perms
            .iter()
            .map(|a| perms.iter().map(|b| index([a[b[0]], a[b[1]], a[b[2]]])).collect())
            .collect();
        let labels = perms.iter().map(|p| cycle_notation(p)).collect();
        FiniteGroup::new(table, Some(labels)).expect("S3 table")
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> GroupElt {
        0
    }

    pub fn elements(&self) -> std::ops::Range<GroupElt> {
        0..self.order()
    }

    pub fn mul(&self, a: GroupElt, b: GroupElt) -> GroupElt {
        self.table[a][b]
    }

    pub fn inv(&self, g: GroupElt) -> GroupElt {
        self.inverses[g]
    }

    /// `g h g⁻¹`
    pub fn conjugate(&self, g: GroupElt, h: GroupElt) -> GroupElt {
        self.mul(self.mul(g, h), self.inv(g))
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn table(&self) -> &[Vec<GroupElt>] {
        &self.table
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, g: GroupElt) -> &str {
        &self.labels[g]
    }

    /// Looks an element up by label or by decimal index.
    pub fn parse_element(&self, s: &str) -> Option<GroupElt> {
        self.labels
            .iter()
            .position(|l| l == s)
            .or_else(|| s.parse().ok().filter(|&g| g < self.order()))
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup {
            parent: self.clone(),
            members: self.elements().collect(),
        }
    }
}

impl fmt::Display for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "group of order {} {{{}}}", self.order(), self.labels.join(", "))
    }
}

fn cycle_notation(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        out.push('(');
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            out.push_str(&(x + 1).to_string());
            x = p[x];
        }
        out.push(')');
    }
    if out.is_empty() {
        "1".into()
    } else {
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    parent: FiniteGroup,
    members: Vec<GroupElt>,
}

impl Subgroup {
    pub fn parent(&self) -> &FiniteGroup {
        &self.parent
    }

    /// Sorted member indices.
    pub fn members(&self) -> &[GroupElt] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, g: GroupElt) -> bool {
        self.members.binary_search(&g).is_ok()
    }

    pub fn is_whole_group(&self) -> bool {
        self.members.len() == self.parent.order()
    }

    pub fn is_trivial(&self) -> bool {
        self.members == [0]
    }

    pub fn labels(&self) -> Vec<&str> {
        self.members.iter().map(|&g| self.parent.label(g)).collect()
    }
}

/// Wraps a member set as a subgroup after checking closure under products.
/// For a finite nonempty set closure implies the identity and inverses.
pub fn stabilizer_closure(group: &FiniteGroup, members: &[GroupElt]) -> Result<Subgroup> {
    let set: BTreeSet<GroupElt> = members.iter().copied().collect();
    if set.is_empty() {
        return Err(Error::Invariant("empty subset is not a subgroup".into()));
    }
    if let Some(&bad) = set.iter().find(|&&g| g >= group.order()) {
        return Err(Error::Shape(format!("element {bad} out of range")));
    }
    for &a in &set {
        for &b in &set {
            let ab = group.mul(a, b);
            if !set.contains(&ab) {
                return Err(Error::NotClosed(a, b, ab));
            }
        }
    }
    Ok(Subgroup {
        parent: group.clone(),
        members: set.into_iter().collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_groups_validate() {
        assert_eq!(FiniteGroup::new(vec![vec![0]], None).unwrap().order(), 1);
        let c2 = FiniteGroup::new(vec![vec![0, 1], vec![1, 0]], None).unwrap();
        assert_eq!(c2.order(), 2);
        assert_eq!(c2.inv(1), 1);
    }

    #[test]
    fn validation_errors_name_the_culprit() {
        // Identity misplaced.
        let err = FiniteGroup::new(vec![vec![1, 0], vec![0, 1]], None).unwrap_err();
        assert_eq!(err, Error::NoIdentity(0));
        // {0,1,2} with 1·1 = 1: associative monoid, no inverse for 1.
        let t = vec![vec![0, 1, 2], vec![1, 1, 1], vec![2, 1, 0]];
        assert!(matches!(FiniteGroup::new(t, None), Err(Error::NoInverse(1))));
        // Latin square with identity that is not associative.
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(FiniteGroup::new(t, None), Err(Error::NotAssociative(..))));
    }

    #[test]
    fn s3_is_nonabelian_and_conjugates_cycles() {
        let s3 = FiniteGroup::symmetric3();
        assert!(!s3.is_abelian());
        let t12 = s3.parse_element("(12)").unwrap();
        let c123 = s3.parse_element("(123)").unwrap();
        let c132 = s3.parse_element("(132)").unwrap();
        assert_eq!(s3.conjugate(t12, c123), c132);
        assert_ne!(s3.mul(t12, c123), s3.mul(c123, t12));
    }

    #[test]
    fn permutation_closure_matches_hand_table() {
        let s3 = FiniteGroup::from_permutations(&[vec![1, 2, 0], vec![1, 0, 2]]).unwrap();
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_abelian());
    }

    #[test]
    fn conjugation_is_an_action() {
        let s3 = FiniteGroup::symmetric3();
        for g in s3.elements() {
            assert_eq!(s3.conjugate(0, g), g);
            for h in s3.elements() {
                assert_eq!(s3.conjugate(g, s3.conjugate(s3.inv(g), h)), h);
            }
        }
        let c4 = FiniteGroup::cyclic(4);
        for g in c4.elements() {
            for h in c4.elements() {
                assert_eq!(c4.conjugate(g, h), h);
            }
        }
    }

    #[test]
    fn closure_checks() {
        let s3 = FiniteGroup::symmetric3();
        assert!(stabilizer_closure(&s3, &[0]).unwrap().is_trivial());
        assert!(stabilizer_closure(&s3, &[0, 1, 2, 3, 4, 5]).unwrap().is_whole_group());
        let a3 = stabilizer_closure(&s3, &[0, 1, 2]).unwrap();
        assert_eq!(a3.order(), 3);
        assert!(matches!(stabilizer_closure(&s3, &[0, 3, 4]), Err(Error::NotClosed(..))));
    }
}
