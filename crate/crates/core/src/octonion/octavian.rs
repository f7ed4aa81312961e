//! The 240 unit octavians as an exact finite loop.
//!
//! Candidates are the 16 signed basis units and the 1120 vectors with
//! entries `±1/2` on exactly four coordinates (all of norm 1). A half-unit
//! seed is tried together with the 16 basis units; its multiplicative closure
//! is accepted when it stays half-integral, reaches exactly 240 elements and
//! multiplies as a Latin square.

use std::collections::hash_map::Entry;
use std::collections::HashMap;

use super::{OctonionError, OctonionH};
use crate::loops::{centre_of_loop, factor_loop, FactorLoop, FiniteLoop};

pub const OCTAVIAN_UNITS: usize = 240;

/// Unit octavians with their loop structure. Element 0 is `1`.
#[derive(Clone, Debug)]
pub struct OctavianLoop {
    pub elements: Vec<OctonionH>,
    pub table: FiniteLoop,
    /// The half-unit that, with the basis units, generated the system.
    pub seed: OctonionH,
}

impl OctavianLoop {
    pub fn embed(&self, i: usize) -> OctonionH {
        self.elements[i]
    }

    pub fn index_of(&self, x: &OctonionH) -> Option<usize> {
        self.elements.iter().position(|e| e == x)
    }

    /// Doubled coordinates, one row per element.
    pub fn coordinate_rows(&self) -> Vec<Vec<i64>> {
        self.elements.iter().map(|e| e.0.iter().map(|&v| i64::from(v)).collect()).collect()
    }
}

fn basis_units() -> Vec<OctonionH> {
    (0..8)
        .flat_map(|i| [OctonionH::unit(i, false), OctonionH::unit(i, true)])
        .collect()
}

/// All 1120 half-units, in lexicographic order of (support, sign pattern).
pub fn half_unit_candidates() -> Vec<OctonionH> {
    let mut out = Vec::with_capacity(1120);
    for support in 0u32..256 {
        if support.count_ones() != 4 {
            continue;
        }
        let idx: Vec<usize> = (0..8).filter(|i| support & (1 << i) != 0).collect();
        for signs in 0..16 {
            let mut c = [0i32; 8];
            for (b, &i) in idx.iter().enumerate() {
                c[i] = if signs & (1 << b) != 0 { -1 } else { 1 };
            }
            out.push(OctonionH(c));
        }
    }
    out
}

/// Multiplicative closure of `start`; `None` once it leaves the half-integral
/// units or grows past `limit`.
fn closure(start: &[OctonionH], limit: usize) -> Option<Vec<OctonionH>> {
    let mut elems: Vec<OctonionH> = Vec::new();
    let mut seen: HashMap<OctonionH, usize> = HashMap::new();
    for &s in start {
        if let Entry::Vacant(e) = seen.entry(s) {
            e.insert(elems.len());
            elems.push(s);
        }
    }
    let mut i = 0;
    while i < elems.len() {
        for j in 0..=i {
            let (a, b) = (elems[i], elems[j]);
            for p in [a.mul(&b).ok()?, b.mul(&a).ok()?] {
                if p.norm2_scaled() != 4 {
                    return None;
                }
                if let Entry::Vacant(e) = seen.entry(p) {
                    if elems.len() >= limit {
                        return None;
                    }
                    e.insert(elems.len());
                    elems.push(p);
                }
            }
        }
        i += 1;
    }
    Some(elems)
}

fn loop_table(elems: &[OctonionH]) -> Option<FiniteLoop> {
    let index: HashMap<OctonionH, usize> = elems.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let rows: Vec<Vec<usize>> = elems
        .iter()
        .map(|a| elems.iter().map(|b| a.mul(b).ok().and_then(|p| index.get(&p).copied())).collect::<Option<Vec<_>>>())
        .collect::<Option<_>>()?;
    crate::loops::make_loop(&rows).ok()
}

pub fn build_octavian_units() -> Result<OctavianLoop, OctonionError> {
    let units = basis_units();
    for seed in half_unit_candidates() {
        let mut start = units.clone();
        start.push(seed);
        let Some(mut elems) = closure(&start, OCTAVIAN_UNITS) else {
            continue;
        };
        if elems.len() != OCTAVIAN_UNITS {
            continue;
        }
        // descending order puts 1 = (2,0,…,0)/2 first
        elems.sort_by(|a, b| b.cmp(a));
        debug_assert_eq!(elems[0], OctonionH::ONE);
        if let Some(table) = loop_table(&elems) {
            return Ok(OctavianLoop {
                elements: elems,
                table,
                seed,
            });
        }
    }
    Err(OctonionError::ClosureNotFound)
}

/// The 240-loop modulo its centre `{±1}`: order 120.
pub fn octavian_factor_by_centre(o: &OctavianLoop) -> Result<FactorLoop, OctonionError> {
    let z = centre_of_loop(&o.table);
    Ok(factor_loop(&o.table, &z)?)
}
