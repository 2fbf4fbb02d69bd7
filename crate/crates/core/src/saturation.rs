//! Degree-by-degree saturation of a two-term identity.
//!
//! `H_k` is the group of `τ ∈ S_k` with `x_id = x_τ` a consequence of the
//! identity. Starting from `H_n = ⟨σ⟩`, every element of `H_k` is lifted by
//! all the `T_i` operators and the lifts generate `H_{k+1}`.
//!
//! For `q ≠ 1` the engine tracks scaled relations `x_id = c · x_τ`, which form
//! a subgroup of `S_k × ℚ^×` under `(τ, c)(ν, d) = (τν, cd)`. A pair `(id, c)`
//! with `c ≠ 1` forces `x_1 ⋯ x_k = 0`. Every finite subgroup of `ℚ^×` lies in
//! `{±1}`, so the sign is encoded as a transposition of two extra points and
//! the ordinary group engine does the rest.

use std::collections::BTreeSet;

use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::{Error, Result};
use crate::group::{PermGroup, DEFAULT_ENUMERATION_CAP};
use crate::identity::{rational_pow, TwoTermIdentity};
use crate::oracle::{EquivalenceGraph, OracleOptions};
use crate::perm::{factorial, BlockDecomposition, Permutation};

/// A relation `x_id = weight · x_perm`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScaledPerm {
    pub perm: Permutation,
    pub weight: BigRational,
}

impl ScaledPerm {
    pub fn unit(perm: Permutation) -> Self {
        ScaledPerm {
            perm,
            weight: BigRational::one(),
        }
    }
}

/// `T_i` on the permutation of a two-term identity of degree `m`, for
/// `0 ≤ i ≤ m + 1`. For interior `i` this is `ŝ_{i+1} ∘ σ ∘ ŝ_{σ⁻¹(i)+1}⁻¹`
/// with `σ` extended to fix `m + 1`.
pub fn lift(sigma: &Permutation, i: usize) -> Result<Permutation> {
    let m = sigma.size();
    if i > m + 1 {
        return Err(Error::OutOfRange {
            what: "lift index i",
            value: i,
            range: format!("0..={}", m + 1),
        });
    }
    if i == 0 {
        return Ok(sigma.shifted());
    }
    let extended = sigma.extended(m + 1);
    if i == m + 1 {
        return Ok(extended);
    }
    let j = sigma.inverse().apply(i);
    let left = Permutation::hat_cycle(i + 1, m + 1)?;
    let right = Permutation::hat_cycle(j + 1, m + 1)?.inverse();
    Ok(&(&left * &extended) * &right)
}

/// The prefix and suffix commutation relations that hold as soon as `σ`
/// moves both `1` and `n`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LatyshevSeeds {
    /// Relations of degree `n + 1`: `(1 2 ⋯ i)` and `(j+1 ⋯ n+1)`.
    pub next: Vec<ScaledPerm>,
    /// Relations of degree `n + 2`: `(1 2)` and `(n+1, n+2)`.
    pub after_next: Vec<ScaledPerm>,
}

impl LatyshevSeeds {
    pub fn is_empty(&self) -> bool {
        self.next.is_empty() && self.after_next.is_empty()
    }

    /// Seeds of degree `k` for an identity of degree `n`.
    pub fn at(&self, n: usize, k: usize) -> &[ScaledPerm] {
        if k == n + 1 {
            &self.next
        } else if k == n + 2 {
            &self.after_next
        } else {
            &[]
        }
    }
}

/// With `x_σ = x_i u = v x_j`, `i ≠ 1`, `j ≠ n`. The scalar cancels in the
/// derivation, so every seed has weight 1. Empty when `σ` fixes 1 or `n`.
pub fn latyshev_seeds(identity: &TwoTermIdentity) -> LatyshevSeeds {
    let sigma = identity.sigma();
    let n = sigma.size();
    let first = sigma.apply(1);
    let last = sigma.apply(n);
    if n < 2 || first == 1 || last == n {
        return LatyshevSeeds::default();
    }
    let cycle = |k: usize, letters: Vec<usize>| {
        ScaledPerm::unit(Permutation::from_cycles(k, &[letters]).expect("letters within range"))
    };
    LatyshevSeeds {
        next: vec![
            cycle(n + 1, (1..=first).collect()),
            cycle(n + 1, (last + 1..=n + 1).collect()),
        ],
        after_next: vec![cycle(n + 2, vec![1, 2]), cycle(n + 2, vec![n + 1, n + 2])],
    }
}

/// Scaled relations of a fixed degree, closed under composition.
#[derive(Debug, Clone)]
pub struct ScaledGroup {
    degree: usize,
    signed: bool,
    group: PermGroup,
    kernel: Option<ScaledPerm>,
}

impl ScaledGroup {
    /// `signed` selects the encoding that admits weights `±1`.
    pub fn new(degree: usize, signed: bool, enumeration_cap: u128) -> Result<Self> {
        let points = if signed { degree + 2 } else { degree };
        Ok(ScaledGroup {
            degree,
            signed,
            group: PermGroup::trivial(points)?.with_enumeration_cap(enumeration_cap),
            kernel: None,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    fn encode(&self, perm: &Permutation, negative: bool) -> Permutation {
        if !self.signed {
            return perm.clone();
        }
        let k = self.degree as u8;
        let tail = if negative { [k + 1, k] } else { [k, k + 1] };
        Permutation::from_zero_based_unchecked(perm.raw().iter().copied().chain(tail))
    }

    fn decode(&self, p: &Permutation) -> ScaledPerm {
        if !self.signed {
            return ScaledPerm::unit(p.clone());
        }
        let k = self.degree;
        let perm = Permutation::from_zero_based_unchecked(p.raw()[..k].iter().copied());
        let weight = if p.image0(k) == k {
            BigRational::one()
        } else {
            -BigRational::one()
        };
        ScaledPerm { perm, weight }
    }

    /// Adds a relation; returns whether anything new was learned.
    pub fn insert(&mut self, relation: &ScaledPerm) -> Result<bool> {
        if relation.perm.size() != self.degree {
            return Err(Error::SizeMismatch {
                expected: self.degree,
                found: relation.perm.size(),
            });
        }
        if self.kernel.is_some() {
            return Ok(false);
        }
        let w = &relation.weight;
        if !w.abs().is_one() {
            // (τ, c)^{ord τ} = (id, c^{ord τ}) and |c| ≠ 1
            let power = rational_pow(w, relation.perm.order() as i64);
            self.kernel = Some(ScaledPerm {
                perm: Permutation::identity(self.degree),
                weight: power,
            });
            return Ok(true);
        }
        let negative = !w.is_one();
        if negative && !self.signed {
            return Err(Error::Invariant(
                "weight -1 relation inserted into an unsigned group".into(),
            ));
        }
        let grew = self.group.insert(&self.encode(&relation.perm, negative))?;
        if grew && self.signed {
            let id = Permutation::identity(self.degree);
            if self.group.contains_unchecked(&self.encode(&id, true)) {
                self.kernel = Some(ScaledPerm {
                    perm: id,
                    weight: -BigRational::one(),
                });
            }
        }
        Ok(grew)
    }

    /// A relation `(id, c)` with `c ≠ 1`, if one has been derived.
    pub fn kernel_witness(&self) -> Option<&ScaledPerm> {
        self.kernel.as_ref()
    }

    pub fn is_nilpotent(&self) -> bool {
        self.kernel.is_some()
    }

    fn has_negative(&self) -> bool {
        let k = self.degree;
        self.signed && self.group.generators().iter().any(|g| g.image0(k) != k)
    }

    /// `|H_k|`, the number of `τ` with `x_id = x_τ`.
    pub fn identity_order(&self) -> u128 {
        if self.is_nilpotent() {
            return factorial(self.degree);
        }
        let order = self.group.order();
        if self.has_negative() {
            order / 2
        } else {
            order
        }
    }

    pub fn is_full(&self) -> bool {
        self.identity_order() == factorial(self.degree)
    }

    pub fn contains_alternating(&self) -> bool {
        self.identity_order() * 2 >= factorial(self.degree)
    }

    /// Whether `x_id = x_τ` holds.
    pub fn contains(&self, tau: &Permutation) -> Result<bool> {
        if tau.size() != self.degree {
            return Err(Error::SizeMismatch {
                expected: self.degree,
                found: tau.size(),
            });
        }
        Ok(self.is_nilpotent() || self.group.contains_unchecked(&self.encode(tau, false)))
    }

    /// All scaled relations, in lexicographic order of the permutation.
    /// Meaningless once nilpotent.
    pub fn elements(&self) -> Result<impl Iterator<Item = ScaledPerm> + '_> {
        Ok(self.group.elements()?.map(|p| self.decode(&p)))
    }

    /// `H_k` itself in lexicographic order; all of `S_k` once nilpotent.
    pub fn identity_elements(&self) -> Result<Vec<Permutation>> {
        if self.is_nilpotent() {
            return Ok(Permutation::all(self.degree).collect());
        }
        Ok(self
            .elements()?
            .filter(|s| s.weight.is_one())
            .map(|s| s.perm)
            .collect())
    }

    /// Largest `(a, b)` with `S(k; a, b) ⊆ H_k`.
    pub fn border_profile(&self) -> (usize, usize) {
        let k = self.degree;
        let has = |t: usize| {
            self.contains(&Permutation::transposition(k, t, t + 1).unwrap())
                .unwrap()
        };
        let a = 1 + (1..k).take_while(|&t| has(t)).count();
        let b = 1 + (1..k).rev().take_while(|&t| has(t)).count();
        (a.min(k), b.min(k))
    }
}

/// Structural tags for an identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Flag {
    LongElement,
    #[serde(rename = "transposition_1n")]
    Transposition1n,
    FullCycle,
    SharpnessFamily,
    FixesEndpoint,
    Vacuous,
}

impl Flag {
    pub fn as_str(self) -> &'static str {
        match self {
            Flag::LongElement => "long_element",
            Flag::Transposition1n => "transposition_1n",
            Flag::FullCycle => "full_cycle",
            Flag::SharpnessFamily => "sharpness_family",
            Flag::FixesEndpoint => "fixes_endpoint",
            Flag::Vacuous => "vacuous",
        }
    }
}

pub fn classify(identity: &TwoTermIdentity) -> BTreeSet<Flag> {
    let sigma = identity.sigma();
    let n = sigma.size();
    let mut flags = BTreeSet::new();
    if sigma.apply(1) == 1 || sigma.apply(n) == n {
        flags.insert(Flag::FixesEndpoint);
    }
    if sigma.is_identity() {
        flags.insert(Flag::Vacuous);
        return flags;
    }
    if *sigma == Permutation::reversal(n) {
        flags.insert(Flag::LongElement);
    }
    if *sigma == Permutation::transposition(n, 1, n).unwrap() {
        flags.insert(Flag::Transposition1n);
    }
    let rotation = Permutation::rotation(n);
    if *sigma == rotation || *sigma == rotation.inverse() {
        flags.insert(Flag::FullCycle);
    }
    if n >= 4 && *sigma == Permutation::from_cycles(n, &[vec![1, 2], vec![n - 1, n]]).unwrap() {
        flags.insert(Flag::SharpnessFamily);
    }
    flags
}

/// The degree of eventual commutativity the classification predicts for a
/// `q = 1` identity moving both endpoints, when it predicts one.
pub fn predicted_ec_degree(identity: &TwoTermIdentity) -> Option<usize> {
    if !identity.is_unscaled() {
        return None;
    }
    let flags = classify(identity);
    if flags.contains(&Flag::FixesEndpoint) {
        return None;
    }
    let n = identity.n();
    if n == 2 {
        return Some(2);
    }
    if flags.contains(&Flag::LongElement) {
        return Some(if n % 4 == 1 { n + 2 } else { n + 1 });
    }
    if flags.contains(&Flag::Transposition1n) || flags.contains(&Flag::FullCycle) {
        return Some(n + 1);
    }
    if flags.contains(&Flag::SharpnessFamily) {
        return Some(2 * n - 3);
    }
    None
}

/// The expected ceiling on the degree of eventual commutativity for `σ`
/// moving both endpoints: `n + 1` for `n ∈ {3, 4}` and `2n − 3` beyond.
///
/// Not a theorem at `n = 4`: `σ = [3,4,1,2]` swaps two blocks whose lengths
/// multiply to an even number in degree 5, so `H_5 ⊆ A_5` and the degree is 6.
pub fn ec_upper_bound(n: usize) -> usize {
    if n <= 2 {
        n
    } else {
        (2 * n - 3).max(n + 1)
    }
}

pub fn default_max_degree(n: usize) -> usize {
    (2 * n).saturating_sub(3).max(n + 2) + 1
}

#[derive(Debug, Clone)]
pub struct SaturationOptions {
    /// Defaults to [`default_max_degree`].
    pub max_degree: Option<usize>,
    pub seed_latyshev: bool,
    pub enumeration_cap: u128,
    /// Keep going after the first success until `max_degree`.
    pub run_to_max: bool,
    /// Use the signed encoding even for `q = 1`.
    pub force_scaled: bool,
}

impl Default for SaturationOptions {
    fn default() -> Self {
        SaturationOptions {
            max_degree: None,
            seed_latyshev: true,
            enumeration_cap: DEFAULT_ENUMERATION_CAP,
            run_to_max: false,
            force_scaled: false,
        }
    }
}

/// Per-degree facts about `H_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeRecord {
    pub k: usize,
    pub order: u128,
    pub is_full: bool,
    pub contains_alternating: bool,
    pub nilpotent: bool,
    /// Largest `a` with all permutations of the first `a` letters in `H_k`.
    pub prefix_block: usize,
    /// Largest `b` with all permutations of the last `b` letters in `H_k`.
    pub suffix_block: usize,
    /// Relations that enlarged the group, in insertion order.
    pub witnesses: Vec<ScaledPerm>,
    pub lifts_applied: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SaturationReport {
    pub identity: TwoTermIdentity,
    pub chain: Vec<DegreeRecord>,
    pub ec_degree: Option<usize>,
    pub nilpotency_degree: Option<usize>,
    pub nilpotency_witness: Option<ScaledPerm>,
    pub classification: BTreeSet<Flag>,
    pub bound_2n_minus_3_respected: bool,
    /// Whether the degree after the first success was computed and agreed.
    /// `None` when no success was found or `max_degree` stopped the run first.
    pub stability_verified: Option<bool>,
}

impl SaturationReport {
    pub fn record(&self, k: usize) -> Option<&DegreeRecord> {
        self.chain.iter().find(|r| r.k == k)
    }

    pub fn max_computed_degree(&self) -> usize {
        self.chain.last().map_or(0, |r| r.k)
    }
}

#[derive(Debug, Error)]
pub enum SaturationError {
    /// A resource cap was hit; `partial` holds the chain computed so far.
    #[error("{error}")]
    Resource {
        error: Error,
        partial: Box<SaturationReport>,
    },
    #[error(transparent)]
    Other(#[from] Error),
}

impl SaturationError {
    pub fn error(&self) -> &Error {
        match self {
            SaturationError::Resource { error, .. } => error,
            SaturationError::Other(e) => e,
        }
    }
}

/// A finished saturation run with every intermediate group retained.
#[derive(Debug, Clone)]
pub struct Saturation {
    groups: Vec<ScaledGroup>,
    report: SaturationReport,
}

impl Saturation {
    pub fn run(
        identity: &TwoTermIdentity,
        options: &SaturationOptions,
    ) -> Result<Saturation, SaturationError> {
        Saturator::new(identity, options)?.run()
    }

    pub fn report(&self) -> &SaturationReport {
        &self.report
    }

    pub fn into_report(self) -> SaturationReport {
        self.report
    }

    /// The group of degree `k`, if computed.
    pub fn group(&self, k: usize) -> Option<&ScaledGroup> {
        self.groups.iter().find(|g| g.degree == k)
    }
}

pub fn saturate(
    identity: &TwoTermIdentity,
    options: &SaturationOptions,
) -> Result<SaturationReport, SaturationError> {
    Saturation::run(identity, options).map(Saturation::into_report)
}

struct Saturator<'a> {
    identity: &'a TwoTermIdentity,
    options: &'a SaturationOptions,
    max_degree: usize,
    signed: bool,
    seeds: LatyshevSeeds,
    groups: Vec<ScaledGroup>,
    chain: Vec<DegreeRecord>,
}

impl<'a> Saturator<'a> {
    fn new(identity: &'a TwoTermIdentity, options: &'a SaturationOptions) -> Result<Self> {
        let n = identity.n();
        let max_degree = options.max_degree.unwrap_or_else(|| default_max_degree(n));
        if max_degree < n {
            return Err(Error::InvalidInput(format!(
                "max degree {max_degree} is below the identity degree {n}"
            )));
        }
        let seeds = if options.seed_latyshev {
            latyshev_seeds(identity)
        } else {
            LatyshevSeeds::default()
        };
        Ok(Saturator {
            identity,
            options,
            max_degree,
            signed: options.force_scaled || !identity.is_unscaled(),
            seeds,
            groups: Vec::new(),
            chain: Vec::new(),
        })
    }

    fn success(&self, group: &ScaledGroup) -> bool {
        if self.identity.is_unscaled() {
            group.is_full()
        } else {
            group.is_nilpotent()
        }
    }

    /// No further relation can change the outcome at this degree.
    fn settled(&self, group: &ScaledGroup) -> bool {
        group.is_nilpotent() || (self.identity.is_unscaled() && group.is_full())
    }

    fn push(&mut self, group: ScaledGroup, witnesses: Vec<ScaledPerm>, lifts_applied: u64) {
        let (prefix_block, suffix_block) = group.border_profile();
        self.chain.push(DegreeRecord {
            k: group.degree,
            order: group.identity_order(),
            is_full: group.is_full(),
            contains_alternating: group.contains_alternating(),
            nilpotent: group.is_nilpotent(),
            prefix_block,
            suffix_block,
            witnesses,
            lifts_applied,
        });
        self.groups.push(group);
    }

    fn next_degree(&self, current: &ScaledGroup) -> Result<(ScaledGroup, Vec<ScaledPerm>, u64)> {
        let k = current.degree;
        let n = self.identity.n();
        let mut next = ScaledGroup::new(k + 1, self.signed, self.options.enumeration_cap)?;
        let mut witnesses = Vec::new();
        let mut lifts = 0u64;
        for seed in self.seeds.at(n, k + 1) {
            if next.insert(seed)? {
                witnesses.push(seed.clone());
            }
        }
        if self.settled(&next) {
            return Ok((next, witnesses, lifts));
        }
        let sources: Box<dyn Iterator<Item = ScaledPerm>> = match current.kernel_witness() {
            Some(w) => Box::new(std::iter::once(w.clone())),
            None => Box::new(current.elements()?),
        };
        for source in sources {
            for i in 0..=k + 1 {
                let lifted = ScaledPerm {
                    perm: lift(&source.perm, i)?,
                    weight: source.weight.clone(),
                };
                lifts += 1;
                if next.insert(&lifted)? {
                    witnesses.push(lifted);
                    if self.settled(&next) {
                        return Ok((next, witnesses, lifts));
                    }
                }
            }
        }
        Ok((next, witnesses, lifts))
    }

    fn report(&self, found: Option<usize>) -> SaturationReport {
        let unscaled = self.identity.is_unscaled();
        let classification = classify(self.identity);
        let last = self.chain.last().map_or(0, |r| r.k);
        let n = self.identity.n();
        let moves_both_ends = !classification.contains(&Flag::FixesEndpoint);
        let bound_respected = if unscaled && moves_both_ends {
            match found {
                Some(d) => d <= ec_upper_bound(n),
                None => last < ec_upper_bound(n),
            }
        } else {
            true
        };
        let nilpotency_witness = if unscaled {
            None
        } else {
            found.and_then(|d| {
                self.groups
                    .iter()
                    .find(|g| g.degree == d)?
                    .kernel_witness()
                    .cloned()
            })
        };
        SaturationReport {
            identity: self.identity.clone(),
            chain: self.chain.clone(),
            ec_degree: if unscaled { found } else { None },
            nilpotency_degree: if unscaled { None } else { found },
            nilpotency_witness,
            classification,
            bound_2n_minus_3_respected: bound_respected,
            stability_verified: found.and_then(|d| (d < last).then_some(true)),
        }
    }

    fn run(mut self) -> Result<Saturation, SaturationError> {
        let n = self.identity.n();
        let mut start = ScaledGroup::new(n, self.signed, self.options.enumeration_cap)?;
        let generator = ScaledPerm {
            perm: self.identity.sigma().clone(),
            weight: self.identity.q().clone(),
        };
        if !(self.identity.is_unscaled() && generator.perm.is_identity()) {
            start.insert(&generator)?;
        }
        self.push(start, vec![generator], 0);

        let vacuous = self.identity.is_unscaled() && self.identity.sigma().is_identity();
        let mut found = None;
        let mut k = n;
        loop {
            if vacuous {
                break;
            }
            let success = self.success(self.groups.last().unwrap());
            match (found, success) {
                (None, true) => found = Some(k),
                (Some(d), false) => {
                    return Err(Error::Invariant(format!(
                        "success at degree {d} was lost at degree {k}"
                    ))
                    .into())
                }
                _ => {}
            }
            let past_success = found.is_some_and(|d| k > d);
            if k >= self.max_degree || (past_success && !self.options.run_to_max) {
                break;
            }
            match self.next_degree(self.groups.last().unwrap()) {
                Ok((group, witnesses, lifts)) => self.push(group, witnesses, lifts),
                Err(error) if error.is_resource() => {
                    return Err(SaturationError::Resource {
                        error,
                        partial: Box::new(self.report(found)),
                    })
                }
                Err(error) => return Err(error.into()),
            }
            k += 1;
        }
        let report = self.report(found);
        Ok(Saturation {
            groups: self.groups,
            report,
        })
    }
}

/// Result of analysing an identity through its fixed-border decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralAnalysis {
    pub decomposition: BlockDecomposition,
    /// Saturation of the core identity (degree `j − i`), absent when `σ = id`.
    pub core: Option<SaturationReport>,
    /// Degree of eventual commutativity (`q = 1`) or nilpotency of the core.
    pub core_degree: Option<usize>,
    /// Total degree at which every permutation of the middle letters is an
    /// identity: core degree plus both border lengths.
    pub bordered_degree: Option<usize>,
    /// The general middle-length threshold `2(j − i) + 1`.
    pub general_bound: Option<usize>,
    /// Oracle confirmation at the bordered degree, when within its cap.
    pub oracle_confirmed: Option<bool>,
}

impl GeneralAnalysis {
    pub fn is_vacuous(&self) -> bool {
        self.decomposition.core.is_none()
    }
}

pub fn analyze_general(
    identity: &TwoTermIdentity,
    options: &SaturationOptions,
    oracle: &OracleOptions,
) -> Result<GeneralAnalysis, SaturationError> {
    let decomposition = identity.sigma().block_decompose();
    let Some(core_sigma) = decomposition.core.clone() else {
        return Ok(GeneralAnalysis {
            decomposition,
            core: None,
            core_degree: None,
            bordered_degree: None,
            general_bound: None,
            oracle_confirmed: None,
        });
    };
    let n = identity.n();
    let (i, j) = (decomposition.prefix, decomposition.end);
    let core_identity = TwoTermIdentity::new(core_sigma, identity.q().clone())?;
    let core_options = SaturationOptions {
        max_degree: None,
        run_to_max: false,
        ..options.clone()
    };
    let core = saturate(&core_identity, &core_options)?;
    let core_degree = core.ec_degree.or(core.nilpotency_degree);
    let bordered_degree = core_degree.map(|d| d + i + (n - j));
    let oracle_confirmed = match bordered_degree {
        Some(k) if k <= oracle.max_degree() => {
            Some(confirm_bordered(identity, k, i, n - j, oracle)?)
        }
        _ => None,
    };
    Ok(GeneralAnalysis {
        decomposition,
        core: Some(core),
        core_degree,
        bordered_degree,
        general_bound: Some(2 * (j - i) + 1),
        oracle_confirmed,
    })
}

/// At degree `k`, every permutation fixing the first `prefix` and last
/// `suffix` letters is an identity (or, for `q ≠ 1`, the monomial vanishes).
fn confirm_bordered(
    identity: &TwoTermIdentity,
    k: usize,
    prefix: usize,
    suffix: usize,
    oracle: &OracleOptions,
) -> Result<bool> {
    let graph = EquivalenceGraph::build(identity, k, oracle)?;
    if !identity.is_unscaled() {
        return graph.vanishes(&Permutation::identity(k));
    }
    let fixes_border = |t: &Permutation| {
        (1..=prefix).all(|x| t.apply(x) == x) && (k - suffix + 1..=k).all(|x| t.apply(x) == x)
    };
    let count = graph
        .identity_group()
        .iter()
        .filter(|t| fixes_border(t))
        .count() as u128;
    Ok(count == factorial(k - prefix - suffix))
}
