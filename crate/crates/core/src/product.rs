//! Proper loops on `K × P` from a direct product `G = K × P × S`.
//!
//! Given a monomorphism `φ: S → P` whose image meets the centre of `P`
//! trivially and a map `g: K → S` with `g(1) = 1` that is not a
//! homomorphism, the stabilizer `H = {(1, φ(s), s)}` is core-free and the set
//! `M = {(k, l·φ(g(k)), g(k))}` is a sharply transitive section of `G/H`. The
//! resulting loop lives on pairs `(a, b) ∈ K × P` with
//!
//! ```text
//! (a₁, b₁) ∗ (a₂, b₂) = (a₁a₂, b₁ · t · b₂ · t⁻¹),   t = φ(g(a₁))
//! ```
//!
//! Pair `(k, p)` is encoded as index `k·|P| + p`; `G` uses the lexicographic
//! encoding of [`direct_product`].

use std::sync::Arc;

use thiserror::Error;

use crate::group::{
    center, direct_product, is_homomorphism, is_monomorphism, left_cosets, normal_core, subgroup_closure,
    CosetSpace, FiniteGroup, GroupError, Mapping, Subgroup,
};
use crate::loops::{
    factor_loop, first_associator_witness, is_isomorphic, is_normal_subloop, mlt_left, subloop_generated,
    FiniteLoop, LoopError, Subloop, DEFAULT_ISO_CAP,
};
use crate::report::{yes_no, Report};
use crate::sections::{is_sharply_transitive, Section, SectionError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProductError {
    #[error("P must be non-abelian")]
    PAbelian,
    #[error("g(1) = {0}, expected the identity")]
    GNotIdentityPreserving(usize),
    #[error("phi is not a monomorphism S → P")]
    PhiNotMono,
    #[error("phi(S) meets the centre of P in {0:?}")]
    CentreIntersection(Vec<usize>),
    #[error("{{(k,1,g(k))}} generates a subgroup of order {generated}, expected |K×S| = {expected}")]
    GenerationFailure { generated: usize, expected: usize },
    #[error("g is a homomorphism")]
    GIsHomomorphism,
    #[error("torus variant needs s | m (got m={m}, s={s})")]
    TorusDivisibility { m: usize, s: usize },
    #[error("torus variant needs g surjective")]
    GNotSurjective,
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Loop(#[from] LoopError),
    #[error(transparent)]
    Section(#[from] SectionError),
}

impl ProductError {
    /// Stable name of the failing clause.
    pub fn clause(&self) -> &'static str {
        match self {
            ProductError::PAbelian => "PAbelian",
            ProductError::GNotIdentityPreserving(_) => "GNotIdentityPreserving",
            ProductError::PhiNotMono => "PhiNotMono",
            ProductError::CentreIntersection(_) => "CentreIntersection",
            ProductError::GenerationFailure { .. } => "GenerationFailure",
            ProductError::GIsHomomorphism => "GIsHomomorphism",
            ProductError::TorusDivisibility { .. } => "TorusDivisibility",
            ProductError::GNotSurjective => "GNotSurjective",
            ProductError::Group(_) => "InvalidInput",
            ProductError::Loop(_) => "LoopError",
            ProductError::Section(_) => "SectionError",
        }
    }
}

/// Raw construction data.
#[derive(Clone, Debug)]
pub struct ProductSpec {
    pub k: FiniteGroup,
    pub p: FiniteGroup,
    pub s: FiniteGroup,
    /// `φ: S → P`
    pub phi: Mapping,
    /// `g: K → S`
    pub g: Mapping,
}

impl ProductSpec {
    /// Checks the image lists against the group orders.
    pub fn new(k: FiniteGroup, p: FiniteGroup, s: FiniteGroup, phi: Vec<usize>, g: Vec<usize>) -> Result<Self, ProductError> {
        let phi = Mapping::new(&s, &p, phi)?;
        let g = Mapping::new(&k, &s, g)?;
        Ok(ProductSpec { k, p, s, phi, g })
    }

    /// `φ(g(k))` as an element of `P`.
    #[inline]
    pub fn twist(&self, k: usize) -> usize {
        self.phi.apply(self.g.apply(k))
    }

    pub fn encode(&self, k: usize, p: usize) -> usize {
        k * self.p.order() + p
    }

    pub fn decode(&self, i: usize) -> (usize, usize) {
        (i / self.p.order(), i % self.p.order())
    }

    /// Index of `(k, p, s)` in `K × P × S`.
    pub fn encode_triple(&self, k: usize, p: usize, s: usize) -> usize {
        (k * self.p.order() + p) * self.s.order() + s
    }

    /// The unique `(k, l, d)` with
    /// `(k, l·φ(g(k)), g(k))·(a₁, b₁, 1) = (a₂, b₂, 1)·(1, φ(d), d)`:
    /// `k = a₂a₁⁻¹`, `l = b₂·t·b₁⁻¹·t⁻¹` with `t = φ(g(k))`, `d = g(k)`.
    pub fn transport_solution(&self, (a1, b1): (usize, usize), (a2, b2): (usize, usize)) -> (usize, usize, usize) {
        let (kg, pg) = (&self.k, &self.p);
        let k = kg.mul(a2, kg.inv(a1));
        let t = self.twist(k);
        let l = pg.mul(pg.mul(pg.mul(b2, t), pg.inv(b1)), pg.inv(t));
        (k, l, self.g.apply(k))
    }
}

/// A spec that passed every clause of [`validate_spec`].
#[derive(Clone, Debug)]
pub struct ValidatedSpec(ProductSpec);

impl std::ops::Deref for ValidatedSpec {
    type Target = ProductSpec;
    fn deref(&self) -> &ProductSpec {
        &self.0
    }
}

impl ValidatedSpec {
    pub fn into_inner(self) -> ProductSpec {
        self.0
    }
}

/// `P` non-abelian, `g(1) = 1`, `φ` injective homomorphism, `φ(S) ∩ Z(P) = 1`.
fn check_loop_clauses(spec: &ProductSpec) -> Result<(), ProductError> {
    if spec.p.is_abelian() {
        return Err(ProductError::PAbelian);
    }
    if !spec.g.preserves_identity() {
        return Err(ProductError::GNotIdentityPreserving(spec.g.apply(0)));
    }
    if !is_monomorphism(&spec.s, &spec.p, &spec.phi) {
        return Err(ProductError::PhiNotMono);
    }
    let z = center(&spec.p);
    let meet: Vec<usize> = spec
        .phi
        .image
        .iter()
        .copied()
        .filter(|&x| x != 0 && z.contains(x))
        .collect();
    if !meet.is_empty() {
        let mut meet = meet;
        meet.sort_unstable();
        return Err(ProductError::CentreIntersection(meet));
    }
    Ok(())
}

/// Checks the clauses in order and names the first that fails.
pub fn validate_spec(spec: ProductSpec) -> Result<ValidatedSpec, ProductError> {
    check_loop_clauses(&spec)?;
    // generation of K × {1} × S, computed inside K × S
    let ks = direct_product(&[&spec.k, &spec.s])?;
    let gens: Vec<usize> = spec.k.elements().map(|k| k * spec.s.order() + spec.g.apply(k)).collect();
    let generated = subgroup_closure(&ks, &gens).order();
    if generated != ks.order() {
        return Err(ProductError::GenerationFailure {
            generated,
            expected: ks.order(),
        });
    }
    if is_homomorphism(&spec.k, &spec.s, &spec.g) {
        return Err(ProductError::GIsHomomorphism);
    }
    Ok(ValidatedSpec(spec))
}

/// The loop on `K × P`, with its pair encoding.
#[derive(Clone, Debug)]
pub struct ProductLoop {
    pub base: FiniteLoop,
    pub k_order: usize,
    pub p_order: usize,
}

impl ProductLoop {
    pub fn encode(&self, k: usize, p: usize) -> usize {
        k * self.p_order + p
    }

    pub fn decode(&self, i: usize) -> (usize, usize) {
        (i / self.p_order, i % self.p_order)
    }

    /// `N = {(1, l)}`
    pub fn normal_part(&self) -> Subloop {
        Subloop::from_sorted_unchecked(self.base.order(), (0..self.p_order).collect())
    }

    /// `K̄ = {(k, 1)}`
    pub fn complement(&self) -> Subloop {
        Subloop::from_sorted_unchecked(self.base.order(), (0..self.k_order).map(|k| k * self.p_order).collect())
    }
}

/// Evaluates the twisted product for any `g` with `g(1) = 1`.
pub(crate) fn twisted_loop(spec: &ProductSpec) -> FiniteLoop {
    let (kn, pn) = (spec.k.order(), spec.p.order());
    let n = kn * pn;
    let p = &spec.p;
    let mut table = Vec::with_capacity(n * n);
    for x in 0..n {
        let (a1, b1) = spec.decode(x);
        let t = spec.twist(a1);
        let tinv = p.inv(t);
        let left = p.mul(b1, t);
        for y in 0..n {
            let (a2, b2) = spec.decode(y);
            let b = p.mul(p.mul(left, b2), tinv);
            table.push(spec.encode(spec.k.mul(a1, a2), b));
        }
    }
    FiniteLoop::from_trusted_table(n, table)
}

pub fn build_product_loop(spec: &ValidatedSpec) -> ProductLoop {
    ProductLoop {
        base: twisted_loop(spec),
        k_order: spec.k.order(),
        p_order: spec.p.order(),
    }
}

/// `G = K × P × S`, the stabilizer `H`, the section `σ` and its image `M`.
#[derive(Clone, Debug)]
pub struct GroupAndSection {
    pub group: FiniteGroup,
    pub stabilizer: Subgroup,
    pub cosets: Arc<CosetSpace>,
    pub section: Section,
    /// Sorted image of the section.
    pub m: Vec<usize>,
    /// `pair_of_coset[c]` is the loop index `k·|P| + p` of the coset `(k, p, 1)H`.
    pub pair_of_coset: Vec<usize>,
}

pub fn build_group_and_section(spec: &ValidatedSpec) -> Result<GroupAndSection, ProductError> {
    let group = direct_product(&[&spec.k, &spec.p, &spec.s])?;
    let h_members: Vec<usize> = spec.s.elements().map(|x| spec.encode_triple(0, spec.phi.apply(x), x)).collect();
    let stabilizer = Subgroup::new(&group, &h_members)?;
    let core = normal_core(&group, &stabilizer);
    if !core.is_trivial() {
        return Err(SectionError::CoreNotTrivial(core.members().to_vec()).into());
    }
    let cosets = left_cosets(&group, &stabilizer);
    let mut choice = vec![usize::MAX; cosets.count()];
    let mut pair_of_coset = vec![usize::MAX; cosets.count()];
    for x in spec.k.elements() {
        let t = spec.twist(x);
        for y in spec.p.elements() {
            let c = cosets.coset_of(spec.encode_triple(x, y, 0));
            choice[c] = spec.encode_triple(x, spec.p.mul(y, t), spec.g.apply(x));
            pair_of_coset[c] = spec.encode(x, y);
        }
    }
    let section = Section::new(cosets.clone(), choice)?;
    if !is_sharply_transitive(&cosets, section.image()) {
        return Err(SectionError::NotSharplyTransitive.into());
    }
    let mut m = section.image().to_vec();
    m.sort_unstable();
    Ok(GroupAndSection {
        group,
        stabilizer,
        cosets,
        section,
        m,
        pair_of_coset,
    })
}

/// Associativity of the loop against the homomorphism test on `g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropernessReport {
    pub associative: bool,
    pub associator_witness: Option<(usize, usize, usize)>,
    pub g_is_homomorphism: bool,
    /// `φ(g(a₁)g(a₂))` and `φ(g(a₁a₂))` act identically on `P` by conjugation for all `a₁, a₂`.
    pub conjugation_criterion: bool,
    /// All three verdicts agree.
    pub equivalence_holds: bool,
}

/// Accepts specs that satisfy the loop clauses; generation and the
/// non-homomorphism clause are not required here.
pub fn properness_report(spec: &ProductSpec) -> Result<PropernessReport, ProductError> {
    check_loop_clauses(spec)?;
    let l = twisted_loop(spec);
    let associator_witness = first_associator_witness(&l);
    let associative = associator_witness.is_none();
    let g_is_homomorphism = is_homomorphism(&spec.k, &spec.s, &spec.g);
    let (k, s, p) = (&spec.k, &spec.s, &spec.p);
    let conjugation_criterion = k.elements().all(|a1| {
        k.elements().all(|a2| {
            let lhs = spec.phi.apply(s.mul(spec.g.apply(a1), spec.g.apply(a2)));
            let rhs = spec.phi.apply(spec.g.apply(k.mul(a1, a2)));
            p.elements().all(|b| p.conjugate(lhs, b) == p.conjugate(rhs, b))
        })
    });
    Ok(PropernessReport {
        associative,
        associator_witness,
        g_is_homomorphism,
        conjugation_criterion,
        equivalence_holds: associative == g_is_homomorphism && associative == conjugation_criterion,
    })
}

impl PropernessReport {
    pub fn to_report(&self) -> Report {
        let mut r = Report::new("properness");
        r.line(format!("associative: {}", yes_no(self.associative)));
        if let Some((x, y, z)) = self.associator_witness {
            r.line(format!("associator witness: ({x},{y},{z})"));
        }
        r.line(format!("g is a homomorphism: {}", yes_no(self.g_is_homomorphism)));
        r.line(format!("conjugation criterion holds: {}", yes_no(self.conjugation_criterion)));
        r.line(format!("equivalence holds: {}", yes_no(self.equivalence_holds)));
        r.kv("associative", self.associative)
            .kv("g_homomorphism", self.g_is_homomorphism)
            .kv("conjugation_criterion", self.conjugation_criterion)
            .kv("equivalence", self.equivalence_holds);
        if let Some((x, y, z)) = self.associator_witness {
            r.kv("witness", format!("{x},{y},{z}"));
        }
        r
    }
}

/// Semidirect structure `L = N ∗ K̄` with `N ≅ P` normal and `K̄ ≅ K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionReport {
    pub order: usize,
    pub n_is_subloop: bool,
    pub n_isomorphic_to_p: bool,
    pub n_is_normal: bool,
    pub complement_is_subloop: bool,
    pub complement_is_group: bool,
    pub complement_isomorphic_to_k: bool,
    /// Elements with exactly one factorization `n ∗ k̄`.
    pub uniquely_factored: usize,
    pub factor_order: usize,
    pub factor_isomorphic_to_k: bool,
    /// Order of the group generated by the left translations, if within the cap.
    pub mlt_left_order: Option<usize>,
}

impl DecompositionReport {
    pub fn holds(&self) -> bool {
        self.n_is_subloop
            && self.n_isomorphic_to_p
            && self.n_is_normal
            && self.complement_is_subloop
            && self.complement_is_group
            && self.complement_isomorphic_to_k
            && self.uniquely_factored == self.order
            && self.factor_isomorphic_to_k
    }

    pub fn to_report(&self) -> Report {
        let mut r = Report::new("decomposition");
        r.line(format!("order: {}", self.order))
            .line(format!(
                "N = {{(1,l)}}: subloop {}, isomorphic to P {}, normal {}",
                yes_no(self.n_is_subloop),
                yes_no(self.n_isomorphic_to_p),
                yes_no(self.n_is_normal)
            ))
            .line(format!(
                "K = {{(k,1)}}: subloop {}, group {}, isomorphic to K {}",
                yes_no(self.complement_is_subloop),
                yes_no(self.complement_is_group),
                yes_no(self.complement_isomorphic_to_k)
            ))
            .line(format!("unique factorizations: {}/{}", self.uniquely_factored, self.order))
            .line(format!(
                "L/N: order {}, isomorphic to K {}",
                self.factor_order,
                yes_no(self.factor_isomorphic_to_k)
            ));
        match self.mlt_left_order {
            Some(o) => r.line(format!("left multiplication group order: {o}")),
            None => r.line("left multiplication group order: above cap"),
        };
        r.kv("order", self.order)
            .kv("n_normal", self.n_is_normal)
            .kv("n_iso_p", self.n_isomorphic_to_p)
            .kv("k_iso_k", self.complement_isomorphic_to_k)
            .kv("unique_factorizations", self.uniquely_factored)
            .kv("factor_order", self.factor_order)
            .kv("factor_iso_k", self.factor_isomorphic_to_k)
            .kv(
                "mlt_left_order",
                self.mlt_left_order.map_or("over-cap".to_string(), |o| o.to_string()),
            )
            .kv("semidirect", self.holds());
        r
    }
}

/// `closure_cap` bounds the left multiplication group; above it the order is
/// reported as unknown.
pub fn decomposition_report(spec: &ValidatedSpec, closure_cap: usize) -> Result<DecompositionReport, ProductError> {
    let pl = build_product_loop(spec);
    let l = &pl.base;
    let n = pl.normal_part();
    let kbar = pl.complement();
    let n_is_subloop = Subloop::new(l, n.members()).is_ok();
    let complement_is_subloop = Subloop::new(l, kbar.members()).is_ok();
    let iso = |a: &FiniteLoop, b: &FiniteLoop| -> Result<bool, ProductError> {
        Ok(if a.order().max(b.order()) <= DEFAULT_ISO_CAP {
            is_isomorphic(a, b, DEFAULT_ISO_CAP)?.is_some()
        } else {
            false
        })
    };
    let n_loop = l.restrict(&n);
    let k_loop = l.restrict(&kbar);
    let n_isomorphic_to_p = iso(&n_loop, &spec.p.to_loop())?;
    let complement_isomorphic_to_k = iso(&k_loop, &spec.k.to_loop())?;
    let complement_is_group = crate::loops::is_associative(&k_loop);
    let n_is_normal = is_normal_subloop(l, &n);

    let mut hits = vec![0usize; l.order()];
    for &x in n.members() {
        for &y in kbar.members() {
            hits[l.mul(x, y)] += 1;
        }
    }
    let uniquely_factored = hits.iter().filter(|&&h| h == 1).count();

    let (factor_order, factor_isomorphic_to_k) = match factor_loop(l, &n) {
        Ok(f) => (f.quotient.order(), iso(&f.quotient, &spec.k.to_loop())?),
        Err(_) => (0, false),
    };
    let mlt_left_order = mlt_left(l, closure_cap).ok().map(|c| c.order());
    Ok(DecompositionReport {
        order: l.order(),
        n_is_subloop,
        n_isomorphic_to_p,
        n_is_normal,
        complement_is_subloop,
        complement_is_group,
        complement_isomorphic_to_k,
        uniquely_factored,
        factor_order,
        factor_isomorphic_to_k,
        mlt_left_order,
    })
}

/// Finite stand-in for tori: `K = C_m`, `S = C_s` with `s | m` and `g`
/// surjective.
pub fn torus_variant_builder(
    m: usize,
    s: usize,
    p: FiniteGroup,
    phi: Vec<usize>,
    g: Vec<usize>,
) -> Result<ValidatedSpec, ProductError> {
    if m == 0 || s == 0 || !m.is_multiple_of(s) {
        return Err(ProductError::TorusDivisibility { m, s });
    }
    let k = crate::group::cyclic(m)?;
    let sg = crate::group::cyclic(s)?;
    let spec = ProductSpec::new(k, p, sg, phi, g)?;
    if !spec.g.is_surjective() {
        return Err(ProductError::GNotSurjective);
    }
    validate_spec(spec)
}

/// Subloop generated by one element of `K̄`, for quick inspection.
pub fn complement_cyclic_subloop(pl: &ProductLoop, k: usize) -> Subloop {
    subloop_generated(&pl.base, &[pl.encode(k, 0)])
}
