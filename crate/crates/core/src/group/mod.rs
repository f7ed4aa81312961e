//! Finite groups given by Cayley tables on `0..order`, identity at index 0.

mod builders;
mod subgroup;

pub use builders::{
    cyclic, dihedral, direct_product, projection, quaternion8, symmetric, symmetric_element,
    symmetric_index, symmetric_point_stabilizer, MAX_SYMMETRIC_DEGREE,
};
pub use subgroup::{
    center, intersection, is_normal, left_cosets, normal_core, subgroup_closure, CosetSpace,
    Subgroup,
};

use thiserror::Error;

use crate::cayley::{self, TableError};
use crate::loops::FiniteLoop;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error(transparent)]
    Table(#[from] TableError),
    #[error("not associative: ({x}*{y})*{z} != {x}*({y}*{z})")]
    NotAssociative { x: usize, y: usize, z: usize },
    #[error("{what} exceeds the size cap {cap}")]
    SizeCapExceeded { what: String, cap: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("element set is not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("invalid mapping: {0}")]
    InvalidMapping(String),
}

/// A finite group on `0..order` with identity 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u32>,
    inverse: Vec<u32>,
}

/// Validates a Cayley table and builds the group.
///
/// If the identity sits at some index `e != 0`, labels `0` and `e` are
/// swapped so that the identity becomes element 0.
pub fn make_group(rows: &[Vec<usize>]) -> Result<FiniteGroup, GroupError> {
    let (n, t) = cayley::normalize(rows)?;
    for x in 0..n {
        for y in 0..n {
            let xy = t[x * n + y];
            for z in 0..n {
                if t[xy * n + z] != t[x * n + t[y * n + z]] {
                    return Err(GroupError::NotAssociative { x, y, z });
                }
            }
        }
    }
    Ok(FiniteGroup::from_trusted_table(n, t))
}

impl FiniteGroup {
    /// Builds a group from a table known to satisfy the axioms with identity 0.
    pub(crate) fn from_trusted_table(order: usize, table: Vec<usize>) -> Self {
        debug_assert_eq!(table.len(), order * order);
        let mut inverse = vec![0u32; order];
        for x in 0..order {
            let row = &table[x * order..(x + 1) * order];
            inverse[x] = row.iter().position(|&v| v == 0).expect("row contains identity") as u32;
        }
        FiniteGroup {
            order,
            table: table.into_iter().map(|v| v as u32).collect(),
            inverse,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    /// `g x g⁻¹`
    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a + 1..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn element_order(&self, x: usize) -> usize {
        let mut k = 1;
        let mut p = x;
        while p != 0 {
            p = self.mul(p, x);
            k += 1;
        }
        k
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|a| (0..self.order).map(|b| self.mul(a, b)).collect())
            .collect()
    }

    pub fn to_loop(&self) -> FiniteLoop {
        FiniteLoop::from_trusted_table(self.order, self.table.iter().map(|&v| v as usize).collect())
    }
}

/// A map between finite groups, stored as its image list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mapping {
    pub source_order: usize,
    pub target_order: usize,
    pub image: Vec<usize>,
}

impl Mapping {
    pub fn new(source: &FiniteGroup, target: &FiniteGroup, image: Vec<usize>) -> Result<Self, GroupError> {
        if image.len() != source.order() {
            return Err(GroupError::InvalidMapping(format!(
                "{} images given for a source of order {}",
                image.len(),
                source.order()
            )));
        }
        if let Some((i, &v)) = image.iter().enumerate().find(|(_, &v)| v >= target.order()) {
            return Err(GroupError::InvalidMapping(format!(
                "image of {i} is {v}, outside a target of order {}",
                target.order()
            )));
        }
        Ok(Mapping {
            source_order: source.order(),
            target_order: target.order(),
            image,
        })
    }

    pub fn identity(g: &FiniteGroup) -> Self {
        Mapping {
            source_order: g.order(),
            target_order: g.order(),
            image: g.elements().collect(),
        }
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.image[x]
    }

    pub fn preserves_identity(&self) -> bool {
        self.image.first() == Some(&0)
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target_order];
        self.image.iter().all(|&v| !std::mem::replace(&mut seen[v], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.target_order];
        self.image.iter().for_each(|&v| seen[v] = true);
        seen.into_iter().all(|s| s)
    }

    /// `self ∘ inner`
    pub fn after(&self, inner: &Mapping) -> Mapping {
        assert_eq!(inner.target_order, self.source_order);
        Mapping {
            source_order: inner.source_order,
            target_order: self.target_order,
            image: inner.image.iter().map(|&x| self.image[x]).collect(),
        }
    }
}

/// First pair `(x, y)` with `f(xy) != f(x)f(y)`, if any.
pub fn homomorphism_violation(source: &FiniteGroup, target: &FiniteGroup, f: &Mapping) -> Option<(usize, usize)> {
    for x in source.elements() {
        for y in source.elements() {
            if f.apply(source.mul(x, y)) != target.mul(f.apply(x), f.apply(y)) {
                return Some((x, y));
            }
        }
    }
    None
}

pub fn is_homomorphism(source: &FiniteGroup, target: &FiniteGroup, f: &Mapping) -> bool {
    homomorphism_violation(source, target, f).is_none()
}

pub fn is_monomorphism(source: &FiniteGroup, target: &FiniteGroup, f: &Mapping) -> bool {
    f.is_injective() && is_homomorphism(source, target, f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z_mod(n: usize) -> Vec<Vec<usize>> {
        (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect()
    }

    #[test]
    fn trivial_group() {
        let g = make_group(&[vec![0]]).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.inv(0), 0);
    }

    #[test]
    fn integers_mod_six() {
        let g = make_group(&z_mod(6)).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(g.inv(2), 4);
        assert!(g.is_abelian());
        assert_eq!(g.element_order(2), 3);
    }

    // The order-5 loop used throughout the tests: a normalized Latin square
    // that is not a group.
    pub(crate) fn nonassociative_five() -> Vec<Vec<usize>> {
        vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ]
    }

    #[test]
    fn nonassociative_latin_square() {
        // Independent scan: first failing triple in lexicographic order.
        let t = nonassociative_five();
        let mut first = None;
        'scan: for x in 0..5 {
            for y in 0..5 {
                for z in 0..5 {
                    if t[t[x][y]][z] != t[x][t[y][z]] {
                        first = Some((x, y, z));
                        break 'scan;
                    }
                }
            }
        }
        let (x, y, z) = first.expect("table is nonassociative");
        assert_eq!(make_group(&t), Err(GroupError::NotAssociative { x, y, z }));
    }

    #[test]
    fn identity_relabeled() {
        // Z/3 written with identity 2.
        let rows = vec![vec![1, 2, 0], vec![2, 0, 1], vec![0, 1, 2]];
        let g = make_group(&rows).unwrap();
        assert_eq!(g.mul(0, 1), 1);
        assert_eq!(g.mul(1, 1), g.inv(1));
    }

    #[test]
    fn not_latin() {
        let rows = vec![vec![0, 1], vec![1, 1]];
        assert!(matches!(make_group(&rows), Err(GroupError::Table(_))));
    }

    #[test]
    fn homomorphism_checks() {
        let c3 = cyclic(3).unwrap();
        let c2 = cyclic(2).unwrap();
        let g = Mapping::new(&c3, &c2, vec![0, 1, 1]).unwrap();
        assert!(!is_homomorphism(&c3, &c2, &g));

        let c4 = cyclic(4).unwrap();
        let id = Mapping::identity(&c4);
        assert!(is_homomorphism(&c4, &c4, &id));
        assert!(is_monomorphism(&c4, &c4, &id));

        // (12) in S3 is lexicographic index 1.
        let s3 = symmetric(3).unwrap();
        let phi = Mapping::new(&c2, &s3, vec![0, 1]).unwrap();
        assert!(is_monomorphism(&c2, &s3, &phi));

        assert!(Mapping::new(&c2, &s3, vec![0]).is_err());
        assert!(Mapping::new(&c2, &s3, vec![0, 6]).is_err());
    }
}
