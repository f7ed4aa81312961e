//! Permutations of `0..degree` and breadth-first closure of permutation sets.

use std::collections::HashMap;

use thiserror::Error;

use crate::group::FiniteGroup;

/// Largest degree a [`Permutation`] can carry (points are stored as `u16`).
pub const MAX_DEGREE: usize = 1 << 16;

/// Element cap used by [`perm_closure`] callers that do not configure one.
pub const DEFAULT_CLOSURE_CAP: usize = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("not a permutation: image {image} repeated or out of range at position {position}")]
    NotBijective { position: usize, image: usize },
    #[error("degree {0} exceeds the supported maximum")]
    DegreeTooLarge(usize),
    #[error("permutations of different degree ({0} and {1})")]
    DegreeMismatch(usize, usize),
    #[error("generated group has more than {0} elements")]
    OrderCapExceeded(usize),
}

/// A bijection of `0..degree`, stored as its image list.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Box<[u16]>);

impl std::fmt::Debug for Permutation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        assert!(degree <= MAX_DEGREE);
        Permutation((0..degree).map(|i| i as u16).collect())
    }

    pub fn from_images(images: &[usize]) -> Result<Self, PermError> {
        let n = images.len();
        if n > MAX_DEGREE {
            return Err(PermError::DegreeTooLarge(n));
        }
        let mut seen = vec![false; n];
        for (position, &image) in images.iter().enumerate() {
            if image >= n || seen[image] {
                return Err(PermError::NotBijective { position, image });
            }
            seen[image] = true;
        }
        Ok(Permutation(images.iter().map(|&i| i as u16).collect()))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.0[point] as usize
    }

    pub fn images(&self) -> Vec<usize> {
        self.0.iter().map(|&i| i as usize).collect()
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&i| self.0[i as usize]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u16; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j as usize] = i as u16;
        }
        Permutation(inv.into_boxed_slice())
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j as usize)
    }

    pub fn fixes(&self, point: usize) -> bool {
        self.apply(point) == point
    }

    /// Cycle lengths, sorted ascending (fixed points included as 1-cycles).
    pub fn cycle_type(&self) -> Vec<usize> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut lengths = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.apply(x);
                len += 1;
            }
            lengths.push(len);
        }
        lengths.sort_unstable();
        lengths
    }
}

/// The group generated by a set of permutations, as an explicit element list.
///
/// Element 0 is always the identity. `witness[i]` is `(parent, generator)`
/// meaning `elements[i] = generators[generator] ∘ elements[parent]`; the
/// identity has no witness.
#[derive(Clone, Debug)]
pub struct PermClosure {
    degree: usize,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
    generators: Vec<Permutation>,
    witness: Vec<Option<(usize, usize)>>,
}

impl PermClosure {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Permutation {
        &self.elements[i]
    }

    /// Non-redundant generators actually used by the closure.
    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn witness(&self, i: usize) -> Option<(usize, usize)> {
        self.witness[i]
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.index.contains_key(p)
    }

    /// Generator word (indices into [`generators`](Self::generators)) whose
    /// product, applied right to left, equals element `i`.
    pub fn word(&self, mut i: usize) -> Vec<usize> {
        let mut word = Vec::new();
        while let Some((parent, g)) = self.witness[i] {
            word.push(g);
            i = parent;
        }
        word
    }

    /// Indices of elements fixing `point`.
    pub fn stabilizer(&self, point: usize) -> Vec<usize> {
        (0..self.order())
            .filter(|&i| self.elements[i].fixes(point))
            .collect()
    }

    /// Cayley table of the closure: `i * j` is the index of `elements[i] ∘ elements[j]`.
    pub fn to_group(&self) -> FiniteGroup {
        let n = self.order();
        // right[g][i] = index of elements[i] ∘ generators[g]
        let right: Vec<Vec<usize>> = self
            .generators
            .iter()
            .map(|g| self.elements.iter().map(|a| self.index[&a.compose(g)]).collect())
            .collect();
        // With elements[j] = gen ∘ elements[parent] and parent < j,
        // a ∘ elements[j] = (a ∘ gen) ∘ elements[parent].
        let mut table = vec![0usize; n * n];
        for i in 0..n {
            table[i * n] = i;
        }
        for j in 1..n {
            let (parent, g) = self.witness[j].expect("non-identity elements have a witness");
            for i in 0..n {
                table[i * n + j] = table[right[g][i] * n + parent];
            }
        }
        FiniteGroup::from_trusted_table(n, table)
    }
}

/// Breadth-first closure of `perms` under composition.
///
/// Generators already contained in the partial closure are skipped, so the
/// stored generator list is irredundant in the order given.
pub fn perm_closure(perms: &[Permutation], cap: usize) -> Result<PermClosure, PermError> {
    let degree = perms.first().map_or(0, Permutation::degree);
    if let Some(p) = perms.iter().find(|p| p.degree() != degree) {
        return Err(PermError::DegreeMismatch(degree, p.degree()));
    }
    let id = Permutation::identity(degree);
    let mut elements = vec![id.clone()];
    let mut index = HashMap::from([(id, 0usize)]);
    let mut witness = vec![None];
    let mut generators: Vec<Permutation> = Vec::new();

    for p in perms {
        if index.contains_key(p) {
            continue;
        }
        generators.push(p.clone());
        let gi = generators.len() - 1;
        // Existing elements only need the new generator; newly found
        // elements need every generator.
        let old = elements.len();
        let mut frontier = 0;
        loop {
            let (start_gen, i) = if frontier < old {
                (gi, frontier)
            } else if frontier < elements.len() {
                (0, frontier)
            } else {
                break;
            };
            for (g, gen) in generators.iter().enumerate().skip(start_gen) {
                let q = gen.compose(&elements[i]);
                if !index.contains_key(&q) {
                    if elements.len() >= cap {
                        return Err(PermError::OrderCapExceeded(cap));
                    }
                    index.insert(q.clone(), elements.len());
                    elements.push(q);
                    witness.push(Some((i, g)));
                }
            }
            frontier += 1;
        }
    }

    Ok(PermClosure {
        degree,
        elements,
        index,
        generators,
        witness,
    })
}

/// True iff for every ordered pair of points `(x, y)` exactly one permutation
/// in `perms` maps `x` to `y`.
pub fn is_sharply_transitive_set(perms: &[Permutation]) -> bool {
    let Some(first) = perms.first() else {
        return false;
    };
    let n = first.degree();
    if perms.len() != n || perms.iter().any(|p| p.degree() != n) {
        return false;
    }
    let mut seen = vec![false; n];
    for x in 0..n {
        seen.iter_mut().for_each(|s| *s = false);
        for p in perms {
            let y = p.apply(x);
            if seen[y] {
                return false;
            }
            seen[y] = true;
        }
    }
    true
}
