//! Backtracking enumeration of sharply transitive sections.
//!
//! Two elements may sit together in a section iff `z₁⁻¹z₂` fixes no coset.
//! Compatibility is precomputed as one bit set per element, so extending a
//! partial section intersects the remaining domains with a single row.
//! Cosets are filled fail-first (smallest remaining domain, lowest index on
//! ties) and candidates are tried in ascending order.

use std::collections::HashMap;
use std::ops::ControlFlow;
use std::sync::Arc;

use rayon::prelude::*;

use super::{loop_from_section_unchecked, Section, SectionError};
use crate::bitset::BitSet;
use crate::group::{left_cosets, normal_core, subgroup_closure, CosetSpace, FiniteGroup, Subgroup};
use crate::loops::{is_isomorphic, loop_invariant, FiniteLoop, DEFAULT_ISO_CAP};

type LoopInvariant = Vec<(Vec<usize>, Vec<usize>, usize)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    /// Stop after this many sections (`None` = all).
    pub max_solutions: Option<usize>,
    /// Report one section per orbit of the normalizer of `H` acting by conjugation.
    pub symmetry_breaking: bool,
    /// Split the search over the first coset's candidates across threads.
    pub parallel: bool,
    /// Keep only sections whose image generates `G`.
    pub require_generation: bool,
    /// Fix `σ(H) = 1`. When false, every sharply transitive transversal is
    /// reported, whatever it picks from `H`.
    pub pin_identity: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            max_solutions: None,
            symmetry_breaking: false,
            parallel: false,
            require_generation: false,
            pin_identity: true,
        }
    }
}

struct Searcher<'a> {
    cosets: &'a CosetSpace,
    compat: Vec<BitSet>,
}

impl<'a> Searcher<'a> {
    fn new(g: &FiniteGroup, cosets: &'a CosetSpace) -> Self {
        let n = g.order();
        let fpf: Vec<bool> = g.elements().map(|x| cosets.fixed_cosets(x).is_empty()).collect();
        let compat = g
            .elements()
            .map(|a| {
                let mut row = BitSet::new(n);
                let ainv = g.inv(a);
                for b in g.elements() {
                    if fpf[g.mul(ainv, b)] {
                        row.insert(b);
                    }
                }
                row
            })
            .collect();
        Searcher { cosets, compat }
    }

    /// Root state: the initial domain of each coset and the pinned choices.
    fn root(&self, pin_identity: bool) -> (Vec<usize>, Vec<BitSet>) {
        let m = self.cosets.count();
        let n = self.cosets.group_order();
        let mut domains = vec![BitSet::new(n); m];
        for x in 0..n {
            domains[self.cosets.coset_of(x)].insert(x);
        }
        let mut choice = vec![usize::MAX; m];
        if pin_identity {
            choice[0] = 0;
            for d in domains.iter_mut().skip(1) {
                d.intersect_with(&self.compat[0]);
            }
        }
        (choice, domains)
    }

    fn next_coset(&self, choice: &[usize], domains: &[BitSet]) -> Option<usize> {
        (0..choice.len())
            .filter(|&c| choice[c] == usize::MAX)
            .min_by_key(|&c| (domains[c].count(), c))
    }

    fn assign(&self, choice: &[usize], domains: &[BitSet], coset: usize, z: usize) -> (Vec<usize>, Vec<BitSet>) {
        let mut choice = choice.to_vec();
        choice[coset] = z;
        let mut domains = domains.to_vec();
        for (c, d) in domains.iter_mut().enumerate() {
            if choice[c] == usize::MAX {
                d.intersect_with(&self.compat[z]);
            }
        }
        (choice, domains)
    }

    fn run<F>(&self, choice: Vec<usize>, domains: Vec<BitSet>, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        let Some(c) = self.next_coset(&choice, &domains) else {
            return visit(&choice);
        };
        for z in domains[c].iter() {
            let (ch, dom) = self.assign(&choice, &domains, c, z);
            self.run(ch, dom, visit)?;
        }
        ControlFlow::Continue(())
    }
}

/// Raw enumeration in deterministic order, honoring generation filter and limit.
fn raw_sections(g: &FiniteGroup, cosets: &CosetSpace, opts: &SearchOptions, limit: Option<usize>) -> Vec<Vec<usize>> {
    let searcher = Searcher::new(g, cosets);
    let (choice, domains) = searcher.root(opts.pin_identity);
    let keep = |ch: &[usize]| !opts.require_generation || subgroup_closure(g, ch).order() == g.order();

    if opts.parallel {
        if let Some(c) = searcher.next_coset(&choice, &domains) {
            let candidates: Vec<usize> = domains[c].iter().collect();
            let mut found: Vec<Vec<usize>> = candidates
                .into_par_iter()
                .flat_map_iter(|z| {
                    let (ch, dom) = searcher.assign(&choice, &domains, c, z);
                    let mut out = Vec::new();
                    let _ = searcher.run(ch, dom, &mut |s: &[usize]| {
                        if keep(s) {
                            out.push(s.to_vec());
                            if limit.is_some_and(|k| out.len() >= k) {
                                return ControlFlow::Break(());
                            }
                        }
                        ControlFlow::Continue(())
                    });
                    out
                })
                .collect();
            found.sort();
            if let Some(k) = limit {
                found.truncate(k);
            }
            return found;
        }
    }

    let mut out = Vec::new();
    let _ = searcher.run(choice, domains, &mut |s: &[usize]| {
        if keep(s) {
            out.push(s.to_vec());
            if limit.is_some_and(|k| out.len() >= k) {
                return ControlFlow::Break(());
            }
        }
        ControlFlow::Continue(())
    });
    out
}

/// Calls `visit` on each section in deterministic order (single-threaded;
/// `parallel` and `symmetry_breaking` are ignored here).
pub fn for_each_section<F>(g: &FiniteGroup, h: &Subgroup, opts: &SearchOptions, mut visit: F)
where
    F: FnMut(Section) -> ControlFlow<()>,
{
    let cosets = left_cosets(g, h);
    let searcher = Searcher::new(g, &cosets);
    let (choice, domains) = searcher.root(opts.pin_identity);
    let mut emitted = 0;
    let _ = searcher.run(choice, domains, &mut |s: &[usize]| {
        if opts.require_generation && subgroup_closure(g, s).order() != g.order() {
            return ControlFlow::Continue(());
        }
        emitted += 1;
        visit(Section::from_trusted(cosets.clone(), s.to_vec()))?;
        if opts.max_solutions.is_some_and(|k| emitted >= k) {
            return ControlFlow::Break(());
        }
        ControlFlow::Continue(())
    });
}

/// All sections (or orbit representatives under `symmetry_breaking`).
///
/// Without `parallel` the order is the search order; with it, sections are
/// sorted by their choice vectors.
pub fn enumerate_sections(g: &FiniteGroup, h: &Subgroup, opts: &SearchOptions) -> Vec<Section> {
    if opts.symmetry_breaking {
        return section_orbits(g, h, opts).into_iter().map(|(s, _)| s).collect();
    }
    let cosets = left_cosets(g, h);
    raw_sections(g, &cosets, opts, opts.max_solutions)
        .into_iter()
        .map(|ch| Section::from_trusted(cosets.clone(), ch))
        .collect()
}

pub fn count_sections(g: &FiniteGroup, h: &Subgroup, opts: &SearchOptions) -> usize {
    if opts.symmetry_breaking {
        return section_orbits(g, h, opts).len();
    }
    let cosets = left_cosets(g, h);
    if opts.parallel {
        return raw_sections(g, &cosets, opts, opts.max_solutions).len();
    }
    let searcher = Searcher::new(g, &cosets);
    let (choice, domains) = searcher.root(opts.pin_identity);
    let mut count = 0;
    let _ = searcher.run(choice, domains, &mut |s: &[usize]| {
        if !opts.require_generation || subgroup_closure(g, s).order() == g.order() {
            count += 1;
            if opts.max_solutions.is_some_and(|k| count >= k) {
                return ControlFlow::Break(());
            }
        }
        ControlFlow::Continue(())
    });
    count
}

fn normalizer(g: &FiniteGroup, h: &Subgroup) -> Vec<usize> {
    g.elements()
        .filter(|&x| h.members().iter().all(|&m| h.contains(g.conjugate(x, m))))
        .collect()
}

/// Orbit representatives of the sections under conjugation by `N_G(H)`,
/// with orbit sizes. The representative is the orbit's smallest choice
/// vector; orbits are listed in ascending representative order. Orbit sizes
/// sum to the raw section count.
pub fn section_orbits(g: &FiniteGroup, h: &Subgroup, opts: &SearchOptions) -> Vec<(Section, usize)> {
    let cosets = left_cosets(g, h);
    let raw_opts = SearchOptions {
        max_solutions: None,
        ..opts.clone()
    };
    let all = raw_sections(g, &cosets, &raw_opts, None);
    let index: HashMap<&[usize], usize> = all.iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect();
    let norm = normalizer(g, h);
    let mut seen = vec![false; all.len()];
    let mut orbits = Vec::new();
    for i in 0..all.len() {
        if seen[i] {
            continue;
        }
        let mut members = Vec::new();
        for &x in &norm {
            let mut conj = vec![0; cosets.count()];
            for &z in &all[i] {
                let y = g.conjugate(x, z);
                conj[cosets.coset_of(y)] = y;
            }
            let j = index[conj.as_slice()];
            if !seen[j] {
                seen[j] = true;
                members.push(j);
            }
        }
        let rep = *members.iter().min_by_key(|&&j| &all[j]).expect("orbit contains its seed");
        orbits.push((all[rep].clone(), members.len()));
    }
    orbits.sort();
    if let Some(k) = opts.max_solutions {
        orbits.truncate(k);
    }
    orbits
        .into_iter()
        .map(|(ch, size)| (Section::from_trusted(cosets.clone(), ch), size))
        .collect()
}

/// Isomorphism classes of the loops of all pinned sections, with
/// multiplicities, in order of first appearance.
pub fn classify_section_loops(
    g: &FiniteGroup,
    h: &Subgroup,
    opts: &SearchOptions,
) -> Result<Vec<(FiniteLoop, usize)>, SectionError> {
    let core = normal_core(g, h);
    if !core.is_trivial() {
        return Err(SectionError::CoreNotTrivial(core.members().to_vec()));
    }
    let cosets: Arc<CosetSpace> = left_cosets(g, h);
    if cosets.count() > DEFAULT_ISO_CAP {
        return Err(SectionError::Loop(crate::loops::LoopError::SizeCapExceeded {
            order: cosets.count(),
            cap: DEFAULT_ISO_CAP,
        }));
    }
    let raw_opts = SearchOptions {
        symmetry_breaking: false,
        pin_identity: true,
        ..opts.clone()
    };
    let mut classes: Vec<(FiniteLoop, usize)> = Vec::new();
    let mut buckets: HashMap<LoopInvariant, Vec<usize>> = HashMap::new();
    for ch in raw_sections(g, &cosets, &raw_opts, raw_opts.max_solutions) {
        let l = loop_from_section_unchecked(&Section::from_trusted(cosets.clone(), ch));
        let bucket = buckets.entry(loop_invariant(&l)).or_default();
        let mut hit = None;
        for &ci in bucket.iter() {
            if is_isomorphic(&classes[ci].0, &l, DEFAULT_ISO_CAP)?.is_some() {
                hit = Some(ci);
                break;
            }
        }
        match hit {
            Some(ci) => classes[ci].1 += 1,
            None => {
                bucket.push(classes.len());
                classes.push((l, 1));
            }
        }
    }
    Ok(classes)
}
