//! Loop isomorphism by backtracking over generator images.
//!
//! An isomorphism is determined by the images of a generating set, so only
//! those are branched on; every other image is forced by products. Candidate
//! images must share the element invariant (cycle types of both translations
//! and the size of the generated subloop).

use super::{subloop_generated, FiniteLoop, LoopError, LoopHom};
use crate::perm::Permutation;

pub const DEFAULT_ISO_CAP: usize = 64;

type ElementInvariant = (Vec<usize>, Vec<usize>, usize);

fn element_invariants(l: &FiniteLoop) -> Vec<ElementInvariant> {
    let n = l.order();
    l.elements()
        .map(|x| {
            let left: Vec<usize> = (0..n).map(|y| l.mul(x, y)).collect();
            let right: Vec<usize> = (0..n).map(|y| l.mul(y, x)).collect();
            (
                Permutation::from_images(&left).expect("Latin row").cycle_type(),
                Permutation::from_images(&right).expect("Latin column").cycle_type(),
                subloop_generated(l, &[x]).order(),
            )
        })
        .collect()
}

/// Sorted multiset of element invariants; equal for isomorphic loops.
pub fn loop_invariant(l: &FiniteLoop) -> Vec<(Vec<usize>, Vec<usize>, usize)> {
    let mut inv = element_invariants(l);
    inv.sort();
    inv
}

#[derive(Clone)]
struct Partial {
    image: Vec<usize>,
    used: Vec<bool>,
    mapped: Vec<usize>,
}

impl Partial {
    fn set(&mut self, a: usize, b: usize) -> bool {
        if self.image[a] != usize::MAX {
            return self.image[a] == b;
        }
        if self.used[b] {
            return false;
        }
        self.image[a] = b;
        self.used[b] = true;
        self.mapped.push(a);
        true
    }

    /// Extends the map through products of mapped elements; false on conflict.
    fn propagate(&mut self, l1: &FiniteLoop, l2: &FiniteLoop, start: usize) -> bool {
        let mut i = start;
        while i < self.mapped.len() {
            let a = self.mapped[i];
            for j in 0..=i {
                let b = self.mapped[j];
                let (fa, fb) = (self.image[a], self.image[b]);
                if !self.set(l1.mul(a, b), l2.mul(fa, fb)) || !self.set(l1.mul(b, a), l2.mul(fb, fa)) {
                    return false;
                }
            }
            i += 1;
        }
        true
    }
}

/// Returns an isomorphism `L1 → L2` if one exists.
pub fn is_isomorphic(l1: &FiniteLoop, l2: &FiniteLoop, cap: usize) -> Result<Option<LoopHom>, LoopError> {
    for l in [l1, l2] {
        if l.order() > cap {
            return Err(LoopError::SizeCapExceeded { order: l.order(), cap });
        }
    }
    let n = l1.order();
    if n != l2.order() {
        return Ok(None);
    }
    let inv1 = element_invariants(l1);
    let inv2 = element_invariants(l2);
    let (mut s1, mut s2) = (inv1.clone(), inv2.clone());
    s1.sort();
    s2.sort();
    if s1 != s2 {
        return Ok(None);
    }

    // Generators of L1, preferring elements whose invariant class is small.
    let class_size = |x: usize| inv1.iter().filter(|v| **v == inv1[x]).count();
    let mut order: Vec<usize> = (1..n).collect();
    order.sort_by_key(|&x| (class_size(x), x));
    let mut gens = Vec::new();
    let mut span = subloop_generated(l1, &[]);
    for x in order {
        if !span.contains(x) {
            gens.push(x);
            span = subloop_generated(l1, &gens);
        }
    }

    let mut root = Partial {
        image: vec![usize::MAX; n],
        used: vec![false; n],
        mapped: Vec::new(),
    };
    root.set(0, 0);
    Ok(extend(l1, l2, &inv1, &inv2, &gens, 0, root).map(|image| LoopHom { image }))
}

fn extend(
    l1: &FiniteLoop,
    l2: &FiniteLoop,
    inv1: &[ElementInvariant],
    inv2: &[ElementInvariant],
    gens: &[usize],
    depth: usize,
    partial: Partial,
) -> Option<Vec<usize>> {
    let Some(&g) = gens.get(depth) else {
        return partial.image.iter().all(|&v| v != usize::MAX).then_some(partial.image);
    };
    if partial.image[g] != usize::MAX {
        return extend(l1, l2, inv1, inv2, gens, depth + 1, partial);
    }
    for cand in l2.elements() {
        if partial.used[cand] || inv2[cand] != inv1[g] {
            continue;
        }
        let mut next = partial.clone();
        let start = next.mapped.len();
        next.set(g, cand);
        if next.propagate(l1, l2, start) {
            if let Some(found) = extend(l1, l2, inv1, inv2, gens, depth + 1, next) {
                return Some(found);
            }
        }
    }
    None
}
