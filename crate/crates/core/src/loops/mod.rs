//! Finite loops: Latin squares with a two-sided identity at index 0.

mod iso;
mod normal;

pub use iso::{is_isomorphic, loop_invariant, DEFAULT_ISO_CAP};
pub use normal::{centre_of_loop, factor_loop, is_normal_subloop, FactorLoop};

use rayon::prelude::*;
use thiserror::Error;

use crate::bitset::BitSet;
use crate::cayley::{self, TableError};
use crate::perm::{perm_closure, PermClosure, PermError, Permutation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LoopError {
    #[error(transparent)]
    Table(#[from] TableError),
    #[error("subloop is not normal: {0}")]
    NotNormal(String),
    #[error("element set is not a subloop: {0}")]
    NotSubloop(String),
    #[error("order {order} exceeds the size cap {cap}")]
    SizeCapExceeded { order: usize, cap: usize },
    #[error(transparent)]
    Perm(#[from] PermError),
}

/// A loop on `0..order` with identity 0 and precomputed division tables.
///
/// `left_div(a, b)` is the unique `y` with `a·y = b`; `right_div(a, b)` is the
/// unique `x` with `x·a = b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteLoop {
    order: usize,
    table: Vec<u32>,
    left_div: Vec<u32>,
    right_div: Vec<u32>,
}

/// Validates a table as a loop. An identity found at `e != 0` is relabeled to 0.
pub fn make_loop(rows: &[Vec<usize>]) -> Result<FiniteLoop, LoopError> {
    let (n, t) = cayley::normalize(rows)?;
    Ok(FiniteLoop::from_trusted_table(n, t))
}

impl FiniteLoop {
    pub(crate) fn from_trusted_table(order: usize, table: Vec<usize>) -> Self {
        let n = order;
        let mut left_div = vec![0u32; n * n];
        let mut right_div = vec![0u32; n * n];
        for a in 0..n {
            for y in 0..n {
                let b = table[a * n + y];
                left_div[a * n + b] = y as u32;
                // a·y = b  ⇒  b / y = a
                right_div[y * n + b] = a as u32;
            }
        }
        FiniteLoop {
            order,
            table: table.into_iter().map(|v| v as u32).collect(),
            left_div,
            right_div,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    /// `a \ b`
    #[inline]
    pub fn left_div(&self, a: usize, b: usize) -> usize {
        self.left_div[a * self.order + b] as usize
    }

    /// `b / a`: the unique `x` with `x·a = b`.
    #[inline]
    pub fn right_div(&self, a: usize, b: usize) -> usize {
        self.right_div[a * self.order + b] as usize
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|a| (0..self.order).map(|b| self.mul(a, b)).collect())
            .collect()
    }

    pub fn is_commutative(&self) -> bool {
        self.elements()
            .all(|a| (a + 1..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Loop restricted to a subloop, relabeled by position in `members`.
    pub fn restrict(&self, sub: &Subloop) -> FiniteLoop {
        let pos: std::collections::HashMap<usize, usize> =
            sub.members().iter().enumerate().map(|(i, &m)| (m, i)).collect();
        let table = sub
            .members()
            .iter()
            .flat_map(|&a| sub.members().iter().map(move |&b| (a, b)))
            .map(|(a, b)| pos[&self.mul(a, b)])
            .collect();
        FiniteLoop::from_trusted_table(sub.order(), table)
    }

    /// Relabels the loop by a permutation `image` (old index ↦ new index),
    /// which must fix 0.
    pub fn relabel(&self, image: &[usize]) -> FiniteLoop {
        let n = self.order;
        let mut table = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                table[image[a] * n + image[b]] = image[self.mul(a, b)];
            }
        }
        FiniteLoop::from_trusted_table(n, table)
    }
}

/// First triple `(x, y, z)` in lexicographic order with `(xy)z != x(yz)`.
pub fn first_associator_witness(l: &FiniteLoop) -> Option<(usize, usize, usize)> {
    first_failure(l, |l, x, y, z| l.mul(l.mul(x, y), z) == l.mul(x, l.mul(y, z)))
}

pub fn is_associative(l: &FiniteLoop) -> bool {
    first_associator_witness(l).is_none()
}

/// First triple violating `(x·y)·(z·x) = (x·(y·z))·x`.
pub fn first_moufang_violation(l: &FiniteLoop) -> Option<(usize, usize, usize)> {
    first_failure(l, |l, x, y, z| {
        l.mul(l.mul(x, y), l.mul(z, x)) == l.mul(l.mul(x, l.mul(y, z)), x)
    })
}

pub fn is_moufang(l: &FiniteLoop) -> bool {
    first_moufang_violation(l).is_none()
}

/// Exhaustive triple scan, split over `x` across threads. The reported
/// witness is the lexicographically first regardless of scheduling.
fn first_failure<F>(l: &FiniteLoop, holds: F) -> Option<(usize, usize, usize)>
where
    F: Fn(&FiniteLoop, usize, usize, usize) -> bool + Sync,
{
    let n = l.order();
    (0..n)
        .into_par_iter()
        .filter_map(|x| {
            for y in 0..n {
                for z in 0..n {
                    if !holds(l, x, y, z) {
                        return Some((x, y, z));
                    }
                }
            }
            None
        })
        .min()
}

/// Row `a` of the table as the permutation `y ↦ a·y`.
pub fn left_translations(l: &FiniteLoop) -> Vec<Permutation> {
    l.elements()
        .map(|a| {
            let row: Vec<usize> = l.elements().map(|y| l.mul(a, y)).collect();
            Permutation::from_images(&row).expect("Latin rows are permutations")
        })
        .collect()
}

/// Group generated by the left translations.
pub fn mlt_left(l: &FiniteLoop, cap: usize) -> Result<PermClosure, LoopError> {
    Ok(perm_closure(&left_translations(l), cap)?)
}

/// Indices (into the closure) of the elements fixing `point`.
pub fn stabilizer_of_identity(closure: &PermClosure, point: usize) -> Vec<usize> {
    closure.stabilizer(point)
}

/// A subloop stored as a sorted element set containing 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subloop {
    members: Vec<usize>,
    mask: BitSet,
}

impl Subloop {
    pub(crate) fn from_sorted_unchecked(order: usize, members: Vec<usize>) -> Self {
        let mut mask = BitSet::new(order);
        members.iter().for_each(|&m| mask.insert(m));
        Subloop { members, mask }
    }

    /// Validates closure under multiplication and both divisions.
    pub fn new(l: &FiniteLoop, members: &[usize]) -> Result<Self, LoopError> {
        let mut sorted = members.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.first() != Some(&0) || sorted.last().is_some_and(|&m| m >= l.order()) {
            return Err(LoopError::NotSubloop("identity missing or element out of range".into()));
        }
        let s = Self::from_sorted_unchecked(l.order(), sorted);
        for &a in &s.members {
            for &b in &s.members {
                for v in [l.mul(a, b), l.left_div(a, b), l.right_div(a, b)] {
                    if !s.contains(v) {
                        return Err(LoopError::NotSubloop(format!("not closed at ({a},{b})")));
                    }
                }
            }
        }
        Ok(s)
    }

    pub fn whole(l: &FiniteLoop) -> Self {
        Self::from_sorted_unchecked(l.order(), l.elements().collect())
    }

    pub fn trivial(l: &FiniteLoop) -> Self {
        Self::from_sorted_unchecked(l.order(), vec![0])
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.mask.contains(x)
    }
}

/// Closure of `seed ∪ {0}` under multiplication and both divisions.
pub fn subloop_generated(l: &FiniteLoop, seed: &[usize]) -> Subloop {
    let mut mask = BitSet::new(l.order());
    let mut members = Vec::new();
    for &s in std::iter::once(&0).chain(seed) {
        if !mask.contains(s) {
            mask.insert(s);
            members.push(s);
        }
    }
    // Each new element is combined with every element seen so far, in both
    // orders, which reaches the full closure.
    let mut i = 0;
    while i < members.len() {
        let a = members[i];
        let mut j = 0;
        while j <= i {
            let b = members[j];
            for v in [
                l.mul(a, b),
                l.mul(b, a),
                l.left_div(a, b),
                l.left_div(b, a),
                l.right_div(a, b),
                l.right_div(b, a),
            ] {
                if !mask.contains(v) {
                    mask.insert(v);
                    members.push(v);
                }
            }
            j += 1;
        }
        i += 1;
    }
    members.sort_unstable();
    Subloop { members, mask }
}

fn subloop_is_associative(l: &FiniteLoop, s: &Subloop) -> bool {
    let m = s.members();
    m.iter().all(|&x| {
        m.iter().all(|&y| {
            let xy = l.mul(x, y);
            m.iter().all(|&z| l.mul(xy, z) == l.mul(x, l.mul(y, z)))
        })
    })
}

/// First pair `(x, y)` whose generated subloop is not associative.
pub fn first_non_diassociative_pair(l: &FiniteLoop) -> Option<(usize, usize)> {
    let n = l.order();
    (1..n)
        .into_par_iter()
        .filter_map(|x| {
            // Pairs whose second element already lies in an earlier closure
            // containing x are still checked; the subloops are small.
            (x..n).find_map(|y| {
                let s = subloop_generated(l, &[x, y]);
                (!subloop_is_associative(l, &s)).then_some((x, y))
            })
        })
        .min()
}

/// True iff every subloop generated by two elements is a group.
pub fn two_generated_subloops_associative(l: &FiniteLoop) -> bool {
    first_non_diassociative_pair(l).is_none()
}

/// Loop homomorphism as an image list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoopHom {
    pub image: Vec<usize>,
}

impl LoopHom {
    pub fn is_valid(&self, source: &FiniteLoop, target: &FiniteLoop) -> bool {
        self.image.len() == source.order()
            && self.image.first() == Some(&0)
            && self.image.iter().all(|&v| v < target.order())
            && source.elements().all(|a| {
                source
                    .elements()
                    .all(|b| self.image[source.mul(a, b)] == target.mul(self.image[a], self.image[b]))
            })
    }

    pub fn kernel(&self) -> Vec<usize> {
        self.image
            .iter()
            .enumerate()
            .filter(|(_, &v)| v == 0)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn is_bijective(&self) -> bool {
        let mut seen = vec![false; self.image.len()];
        self.image
            .iter()
            .all(|&v| v < seen.len() && !std::mem::replace(&mut seen[v], true))
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::group::{cyclic, symmetric};

    pub(crate) fn nonassociative_five() -> FiniteLoop {
        make_loop(&[
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ])
        .unwrap()
    }

    #[test]
    fn groups_are_loops() {
        let s3 = symmetric(3).unwrap();
        let l = s3.to_loop();
        for a in 0..6 {
            for b in 0..6 {
                assert_eq!(l.left_div(a, b), s3.mul(s3.inv(a), b));
                assert_eq!(l.right_div(a, b), s3.mul(b, s3.inv(a)));
            }
        }
        assert!(is_associative(&l));
        assert!(is_moufang(&l));
        assert!(two_generated_subloops_associative(&l));
    }

    #[test]
    fn order_five_loop() {
        let l = nonassociative_five();
        assert!(!is_associative(&l));
        let (x, y, z) = first_associator_witness(&l).unwrap();
        assert_ne!(l.mul(l.mul(x, y), z), l.mul(x, l.mul(y, z)));
        assert!(!is_moufang(&l));
        assert!(!two_generated_subloops_associative(&l));
    }

    #[test]
    fn rejects_bad_tables() {
        assert!(matches!(
            make_loop(&[vec![0, 1, 1], vec![1, 2, 0], vec![2, 0, 1]]),
            Err(LoopError::Table(TableError::RepeatedInRow { .. }))
        ));
        assert!(matches!(
            make_loop(&[vec![0, 2, 1], vec![2, 1, 0], vec![1, 0, 2]]),
            Err(LoopError::Table(TableError::NoIdentity))
        ));
    }

    #[test]
    fn division_consistency() {
        let l = nonassociative_five();
        for a in 0..5 {
            for b in 0..5 {
                assert_eq!(l.mul(a, l.left_div(a, b)), b);
                assert_eq!(l.mul(l.right_div(a, b), a), b);
            }
        }
    }

    #[test]
    fn translations_of_c3() {
        let l = cyclic(3).unwrap().to_loop();
        let m = mlt_left(&l, 100).unwrap();
        assert_eq!(m.order(), 3);
        assert_eq!(stabilizer_of_identity(&m, 0), vec![0]);
    }

    #[test]
    fn subloop_generation() {
        let l = nonassociative_five();
        assert_eq!(subloop_generated(&l, &[]).members(), &[0]);
        assert_eq!(subloop_generated(&l, &[0]).members(), &[0]);
        // 1·1 = 0, so {0,1} is a subloop.
        assert_eq!(subloop_generated(&l, &[1]).members(), &[0, 1]);
        assert!(Subloop::new(&l, &[0, 1]).is_ok());
        assert!(Subloop::new(&l, &[0, 1, 2]).is_err());
        let c6 = cyclic(6).unwrap().to_loop();
        assert_eq!(subloop_generated(&c6, &[2]).members(), &[0, 2, 4]);
    }
}
