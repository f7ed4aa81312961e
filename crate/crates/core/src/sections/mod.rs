//! Sharply transitive sections of `G/H` and the loops they define.
//!
//! A section picks one representative from every left coset of `H`, with
//! the identity chosen for `H` itself. It is sharply transitive when for
//! every pair of cosets `(xH, yH)` exactly one chosen element `z` has
//! `z·xH = yH`; the coset set then carries the loop `xH ∗ yH = σ(xH)·yH`.

mod search;

pub use search::{
    classify_section_loops, count_sections, enumerate_sections, for_each_section, section_orbits,
    SearchOptions,
};

use std::sync::Arc;

use thiserror::Error;

use crate::group::{left_cosets, normal_core, CosetSpace, FiniteGroup, Subgroup};
use crate::loops::{left_translations, FiniteLoop, LoopError};
use crate::perm::{perm_closure, PermClosure, PermError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SectionError {
    #[error("choice for coset {coset} is element {element}, which lies in coset {actual}")]
    NotTransversal { coset: usize, element: usize, actual: usize },
    #[error("expected {expected} representatives, got {found}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("the section does not send H to the identity")]
    IdentityNotPinned,
    #[error("the section's image is not sharply transitive on the cosets")]
    NotSharplyTransitive,
    #[error("H contains the nontrivial normal subgroup {0:?} of G")]
    CoreNotTrivial(Vec<usize>),
    #[error(transparent)]
    Loop(#[from] LoopError),
    #[error(transparent)]
    Perm(#[from] PermError),
}

/// A transversal `coset index → element`.
#[derive(Clone, Debug)]
pub struct Section {
    cosets: Arc<CosetSpace>,
    choice: Vec<usize>,
}

impl PartialEq for Section {
    fn eq(&self, other: &Self) -> bool {
        self.choice == other.choice && Arc::ptr_eq(&self.cosets, &other.cosets)
    }
}

impl Section {
    /// Checks that `choice[c]` lies in coset `c` for every `c`.
    pub fn new(cosets: Arc<CosetSpace>, choice: Vec<usize>) -> Result<Self, SectionError> {
        if choice.len() != cosets.count() {
            return Err(SectionError::SizeMismatch {
                expected: cosets.count(),
                found: choice.len(),
            });
        }
        for (coset, &element) in choice.iter().enumerate() {
            let actual = if element < cosets.group_order() {
                cosets.coset_of(element)
            } else {
                usize::MAX
            };
            if actual != coset {
                return Err(SectionError::NotTransversal { coset, element, actual });
            }
        }
        Ok(Section { cosets, choice })
    }

    pub(crate) fn from_trusted(cosets: Arc<CosetSpace>, choice: Vec<usize>) -> Self {
        Section { cosets, choice }
    }

    pub fn cosets(&self) -> &Arc<CosetSpace> {
        &self.cosets
    }

    /// Representatives in coset order.
    pub fn image(&self) -> &[usize] {
        &self.choice
    }

    pub fn choice(&self, coset: usize) -> usize {
        self.choice[coset]
    }

    /// `σ(H) = 1`
    pub fn is_pinned(&self) -> bool {
        self.choice.first() == Some(&0)
    }
}

/// True iff for every ordered coset pair `(xH, yH)` exactly one `z ∈ s`
/// satisfies `z·xH = yH`.
pub fn is_sharply_transitive(cosets: &CosetSpace, s: &[usize]) -> bool {
    let m = cosets.count();
    let mut hits = vec![0u32; m];
    for x in 0..m {
        hits.iter_mut().for_each(|h| *h = 0);
        for &z in s {
            hits[cosets.act(z, x)] += 1;
        }
        if hits.iter().any(|&h| h != 1) {
            return false;
        }
    }
    true
}

/// The equivalent pairwise test: for distinct positions `i != j`,
/// `s[i]⁻¹·s[j]` fixes no coset.
pub fn fpf_difference_check(g: &FiniteGroup, cosets: &CosetSpace, s: &[usize]) -> Result<bool, SectionError> {
    if s.len() != cosets.count() {
        return Err(SectionError::SizeMismatch {
            expected: cosets.count(),
            found: s.len(),
        });
    }
    let fpf: Vec<bool> = g.elements().map(|x| cosets.fixed_cosets(x).is_empty()).collect();
    Ok(s.iter().enumerate().all(|(i, &a)| {
        s[i + 1..].iter().all(|&b| fpf[g.mul(g.inv(a), b)])
    }))
}

/// Loop on coset indices with `c1 ∗ c2 = σ(c1)·c2`.
pub fn loop_from_section(g: &FiniteGroup, section: &Section) -> Result<FiniteLoop, SectionError> {
    if !section.is_pinned() {
        return Err(SectionError::IdentityNotPinned);
    }
    let cosets = section.cosets();
    if !is_sharply_transitive(cosets, section.image()) {
        return Err(SectionError::NotSharplyTransitive);
    }
    let core = normal_core(g, cosets.subgroup());
    if !core.is_trivial() {
        return Err(SectionError::CoreNotTrivial(core.members().to_vec()));
    }
    Ok(loop_from_section_unchecked(section))
}

pub(crate) fn loop_from_section_unchecked(section: &Section) -> FiniteLoop {
    let cosets = section.cosets();
    let m = cosets.count();
    let table = (0..m)
        .flat_map(|c1| (0..m).map(move |c2| (c1, c2)))
        .map(|(c1, c2)| cosets.act(section.choice(c1), c2))
        .collect();
    FiniteLoop::from_trusted_table(m, table)
}

/// The section a loop induces inside its left multiplication group.
#[derive(Clone, Debug)]
pub struct LoopSection {
    /// Closure of the left translations; group element `i` is `closure.element(i)`.
    pub closure: PermClosure,
    pub group: FiniteGroup,
    /// Stabilizer of the identity element of the loop.
    pub stabilizer: Subgroup,
    pub section: Section,
    /// `translation_index[a]` is the group index of `λ_a`.
    pub translation_index: Vec<usize>,
}

/// `G = ⟨λ_a⟩`, `H = G_0`, and `σ(λ_a H) = λ_a`.
pub fn section_from_loop(l: &FiniteLoop, cap: usize) -> Result<LoopSection, SectionError> {
    let translations = left_translations(l);
    let closure = perm_closure(&translations, cap)?;
    let group = closure.to_group();
    let stabilizer = Subgroup::new(&group, &closure.stabilizer(0)).expect("point stabilizer is a subgroup");
    let cosets = left_cosets(&group, &stabilizer);
    let translation_index: Vec<usize> = translations
        .iter()
        .map(|t| closure.index_of(t).expect("translation lies in its closure"))
        .collect();
    let mut choice = vec![usize::MAX; cosets.count()];
    for &t in &translation_index {
        choice[cosets.coset_of(t)] = t;
    }
    let section = Section::new(cosets, choice)?;
    Ok(LoopSection {
        closure,
        group,
        stabilizer,
        section,
        translation_index,
    })
}
