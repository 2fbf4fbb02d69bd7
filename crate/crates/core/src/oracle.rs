//! Brute-force ground truth for the multilinear consequences of an identity.
//!
//! Every spanning consequence `u_0 f(u_1, …, u_n) u_{n+1}` of degree `k` has
//! exactly two monomial terms, so the consequence space restricted to
//! two-term queries is weighted connectivity on the `k!` monomials. Edge
//! weights are all `q`, so a node's potential is stored as an exponent:
//! `x_v = q^{e_v} · x_root`. A cycle of exponent `e` with `q^e ≠ 1` forces its
//! component to vanish.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::identity::{format_rational, rational_pow, rational_power_is_one, TwoTermIdentity};
use crate::perm::{factorial, Permutation};

/// Default largest degree the oracle will build (`8! = 40320` nodes).
pub const DEFAULT_MAX_DEGREE: usize = 8;
/// Degree reachable with [`OracleOptions::allow_degree_nine`].
pub const EXTENDED_MAX_DEGREE: usize = 9;

/// Scalar field for edge weights.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ScalarMode {
    #[default]
    Rational,
    /// Residues modulo a prime.
    Prime(u64),
}

#[derive(Debug, Clone, Default)]
pub struct OracleOptions {
    pub scalars: ScalarMode,
    pub allow_degree_nine: bool,
}

impl OracleOptions {
    pub fn max_degree(&self) -> usize {
        if self.allow_degree_nine {
            EXTENDED_MAX_DEGREE
        } else {
            DEFAULT_MAX_DEGREE
        }
    }
}

/// An exact scalar in the oracle's field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Scalar {
    Rational(BigRational),
    Residue { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Residue { value, .. } => *value == 1,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => f.write_str(&format_rational(r)),
            Scalar::Residue { value, modulus } => write!(f, "{value} (mod {modulus})"),
        }
    }
}

/// Answer to "is `x_a = c · x_b` a consequence?".
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Equivalence {
    /// `x_a = c · x_b` with this `c`.
    Scaled(Scalar),
    /// Both monomials vanish.
    Zero,
    /// No two-term relation between them.
    Absent,
}

impl fmt::Display for Equivalence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Equivalence::Scaled(c) => write!(f, "{c}"),
            Equivalence::Zero => f.write_str("ZERO"),
            Equivalence::Absent => f.write_str("ABSENT"),
        }
    }
}

#[derive(Debug, Clone)]
enum Field {
    Rational(BigRational),
    Prime { q: u64, p: u64 },
}

fn mod_pow(base: u64, mut exp: u64, p: u64) -> u64 {
    let p = p as u128;
    let mut acc = 1u128 % p;
    let mut b = base as u128 % p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        exp >>= 1;
    }
    acc as u64
}

fn is_prime(p: u64) -> bool {
    p >= 2
        && (2..)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d))
}

fn to_residue(r: &BigRational, p: u64) -> Result<u64> {
    let pb = BigInt::from(p);
    let reduce = |x: &BigInt| -> u64 { (((x % &pb) + &pb) % &pb).to_u64().unwrap() };
    let num = reduce(r.numer());
    let den = reduce(r.denom());
    if num == 0 || den == 0 {
        return Err(Error::InvalidInput(format!(
            "q = {} is not a unit modulo {p}",
            format_rational(r)
        )));
    }
    Ok((num as u128 * mod_pow(den, p - 2, p) as u128 % p as u128) as u64)
}

impl Field {
    fn new(q: &BigRational, mode: ScalarMode) -> Result<Field> {
        match mode {
            ScalarMode::Rational => Ok(Field::Rational(q.clone())),
            ScalarMode::Prime(p) => {
                if !is_prime(p) || p > u32::MAX as u64 {
                    return Err(Error::InvalidInput(format!(
                        "{p} is not a prime below 2^32"
                    )));
                }
                Ok(Field::Prime {
                    q: to_residue(q, p)?,
                    p,
                })
            }
        }
    }

    fn power_is_one(&self, e: i64) -> bool {
        match self {
            Field::Rational(q) => rational_power_is_one(q, e),
            Field::Prime { q, p } => mod_pow(*q, e.rem_euclid(*p as i64 - 1) as u64, *p) == 1,
        }
    }

    fn power(&self, e: i64) -> Scalar {
        match self {
            Field::Rational(q) => Scalar::Rational(rational_pow(q, e)),
            Field::Prime { q, p } => Scalar::Residue {
                value: mod_pow(*q, e.rem_euclid(*p as i64 - 1) as u64, *p),
                modulus: *p,
            },
        }
    }
}

/// One connected class of monomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub root: Permutation,
    pub size: usize,
    pub dead: bool,
}

/// Weighted disjoint-set forest over all monomials of degree `k`.
#[derive(Debug, Clone)]
pub struct EquivalenceGraph {
    k: usize,
    field: Field,
    parent: Vec<u32>,
    /// Exponent of `q` relative to `parent`; relative to the root once built.
    exponent: Vec<i64>,
    size: Vec<u32>,
    dead: Vec<bool>,
    edges: u64,
}

impl EquivalenceGraph {
    /// Builds the graph of all degree-`k` consequences of `identity`.
    pub fn build(identity: &TwoTermIdentity, k: usize, options: &OracleOptions) -> Result<Self> {
        let n = identity.n();
        if k < n {
            return Err(Error::InvalidInput(format!(
                "oracle degree k = {k} is below the identity degree n = {n}"
            )));
        }
        let cap = options.max_degree();
        if k > cap {
            return Err(Error::ResourceCap {
                what: format!("oracle degree k = {k}"),
                cap: cap as u128,
            });
        }
        let field = Field::new(identity.q(), options.scalars)?;
        let nodes = factorial(k) as usize;
        let mut graph = EquivalenceGraph {
            k,
            field,
            parent: (0..nodes as u32).collect(),
            exponent: vec![0; nodes],
            size: vec![1; nodes],
            dead: vec![false; nodes],
            edges: 0,
        };

        let splits = block_splits(k, n);
        let sigma = identity.sigma().images();
        let mut image = Vec::with_capacity(k);
        for (alpha, word) in Permutation::all(k).map(|p| p.images()).enumerate() {
            for lengths in &splits {
                let mut starts = Vec::with_capacity(n + 2);
                let mut at = 0;
                for len in lengths {
                    starts.push(at);
                    at += len;
                }
                let block = |b: usize| &word[starts[b]..starts[b] + lengths[b]];
                image.clear();
                image.extend_from_slice(block(0));
                for &s in &sigma {
                    image.extend_from_slice(block(s));
                }
                image.extend_from_slice(block(n + 1));
                let beta = Permutation::from_images(&image)?.rank();
                graph.relate(alpha, beta);
            }
        }
        graph.flatten();
        Ok(graph)
    }

    fn find(&mut self, v: usize) -> (usize, i64) {
        let mut path = Vec::new();
        let mut r = v;
        while self.parent[r] as usize != r {
            path.push(r);
            r = self.parent[r] as usize;
        }
        // Walk back from the node nearest the root, accumulating exponents.
        let mut acc = 0i64;
        for &u in path.iter().rev() {
            acc += self.exponent[u];
            self.exponent[u] = acc;
            self.parent[u] = r as u32;
        }
        (r, if path.is_empty() { 0 } else { self.exponent[v] })
    }

    /// Records `x_alpha = q · x_beta`.
    fn relate(&mut self, alpha: usize, beta: usize) {
        self.edges += 1;
        let (ra, ea) = self.find(alpha);
        let (rb, eb) = self.find(beta);
        if ra == rb {
            if !self.field.power_is_one(ea - 1 - eb) {
                self.dead[ra] = true;
            }
            return;
        }
        // x_rb = q^{ea - 1 - eb} x_ra
        let (root, child, e) = if self.size[ra] >= self.size[rb] {
            (ra, rb, ea - 1 - eb)
        } else {
            (rb, ra, eb + 1 - ea)
        };
        self.parent[child] = root as u32;
        self.exponent[child] = e;
        self.size[root] += self.size[child];
        self.dead[root] |= self.dead[child];
    }

    fn flatten(&mut self) {
        for v in 0..self.parent.len() {
            self.find(v);
        }
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn node_count(&self) -> usize {
        self.parent.len()
    }

    /// Number of spanning consequences inserted (with repetitions).
    pub fn edges_inserted(&self) -> u64 {
        self.edges
    }

    fn node(&self, t: &Permutation) -> Result<usize> {
        if t.size() != self.k {
            return Err(Error::SizeMismatch {
                expected: self.k,
                found: t.size(),
            });
        }
        Ok(t.rank())
    }

    pub fn equivalent(&self, a: &Permutation, b: &Permutation) -> Result<Equivalence> {
        let (a, b) = (self.node(a)?, self.node(b)?);
        let root = self.parent[a] as usize;
        if root != self.parent[b] as usize {
            return Ok(Equivalence::Absent);
        }
        if self.dead[root] {
            return Ok(Equivalence::Zero);
        }
        Ok(Equivalence::Scaled(
            self.field.power(self.exponent[a] - self.exponent[b]),
        ))
    }

    /// Whether the monomial `x_t` is forced to vanish.
    pub fn vanishes(&self, t: &Permutation) -> Result<bool> {
        let v = self.node(t)?;
        Ok(self.dead[self.parent[v] as usize])
    }

    /// `{τ : x_id − x_τ is a consequence}`, in lexicographic order. Vanishing
    /// monomials satisfy every such identity.
    pub fn identity_group(&self) -> Vec<Permutation> {
        let id_root = self.parent[0] as usize;
        if self.dead[id_root] {
            return Permutation::all(self.k).collect();
        }
        let e0 = self.exponent[0];
        (0..self.parent.len())
            .filter(|&v| {
                self.parent[v] as usize == id_root && self.field.power_is_one(e0 - self.exponent[v])
            })
            .map(|v| Permutation::unrank(self.k, v))
            .collect()
    }

    /// Components sorted by root (lexicographically smallest member first).
    pub fn components(&self) -> Vec<Component> {
        let mut by_root: BTreeMap<usize, usize> = BTreeMap::new();
        for v in 0..self.parent.len() {
            *by_root.entry(self.parent[v] as usize).or_default() += 1;
        }
        let mut out: Vec<Component> = by_root
            .into_iter()
            .map(|(root, size)| Component {
                root: Permutation::unrank(self.k, root),
                size,
                dead: self.dead[root],
            })
            .collect();
        out.sort_by(|a, b| a.root.cmp(&b.root));
        out
    }

    pub fn census(&self) -> Census {
        let components = self.components();
        let mut live_sizes: BTreeMap<usize, usize> = BTreeMap::new();
        let mut dead = 0;
        for c in &components {
            if c.dead {
                dead += 1;
            } else {
                *live_sizes.entry(c.size).or_default() += 1;
            }
        }
        Census {
            k: self.k,
            components: components.len(),
            dead,
            live_sizes,
            identity_group_order: self.identity_group().len(),
        }
    }
}

/// Summary of a graph's components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Census {
    pub k: usize,
    pub components: usize,
    pub dead: usize,
    /// Component size → number of live components of that size.
    pub live_sizes: BTreeMap<usize, usize>,
    pub identity_group_order: usize,
}

impl fmt::Display for Census {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let plural = |c: usize| if c == 1 { "component" } else { "components" };
        if self.dead == self.components {
            return write!(
                f,
                "all components dead ({} {})",
                self.components,
                plural(self.components)
            );
        }
        if self.live_sizes.len() == 1 && self.dead == 0 {
            let (size, count) = self.live_sizes.iter().next().unwrap();
            write!(f, "{count} {} of size {size}", plural(*count))?;
        } else {
            let parts: Vec<String> = self
                .live_sizes
                .iter()
                .map(|(size, count)| format!("{count} of size {size}"))
                .collect();
            write!(
                f,
                "{} {}: {}",
                self.components,
                plural(self.components),
                parts.join(", ")
            )?;
            if self.dead > 0 {
                write!(f, ", {} dead", self.dead)?;
            }
        }
        write!(f, "; |H_{}| = {}", self.k, self.identity_group_order)
    }
}

/// Block lengths `(|u_0|, |u_1|, …, |u_n|, |u_{n+1}|)` summing to `k`, with the
/// inner blocks non-empty, in lexicographic order.
fn block_splits(k: usize, n: usize) -> Vec<Vec<usize>> {
    fn go(
        remaining: usize,
        slot: usize,
        n: usize,
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if slot == n + 1 {
            current.push(remaining);
            out.push(current.clone());
            current.pop();
            return;
        }
        let min = if slot == 0 { 0 } else { 1 };
        // leave at least one letter for every later inner block
        let later_inner = n.saturating_sub(slot);
        for len in min..=remaining.saturating_sub(later_inner) {
            if remaining < len + later_inner {
                break;
            }
            current.push(len);
            go(remaining - len, slot + 1, n, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    if k >= n {
        go(k, 0, n, &mut Vec::new(), &mut out);
    }
    out
}

/// Whether `x_1 ⋯ x_k` vanishes in every algebra satisfying `identity`.
pub fn nilpotent_at(identity: &TwoTermIdentity, k: usize, options: &OracleOptions) -> Result<bool> {
    let graph = EquivalenceGraph::build(identity, k, options)?;
    graph.vanishes(&Permutation::identity(k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::parse_perm;

    fn ident(sigma: &str, n: usize, q: i64) -> TwoTermIdentity {
        TwoTermIdentity::with_integer_q(parse_perm(sigma, Some(n)).unwrap(), q).unwrap()
    }

    fn build(id: &TwoTermIdentity, k: usize) -> EquivalenceGraph {
        EquivalenceGraph::build(id, k, &OracleOptions::default()).unwrap()
    }

    fn binom(a: usize, b: usize) -> usize {
        (0..b).fold(1, |acc, t| acc * (a - t) / (t + 1))
    }

    #[test]
    fn split_counts() {
        for n in 1..=5 {
            for k in n..=8 {
                let splits = block_splits(k, n);
                assert_eq!(splits.len(), binom(k + 1, n + 1), "k={k} n={n}");
                assert!(splits
                    .iter()
                    .all(|s| s.len() == n + 2 && s.iter().sum::<usize>() == k));
                assert!(splits.iter().all(|s| s[1..=n].iter().all(|&l| l >= 1)));
            }
        }
    }

    #[test]
    fn commutativity_in_degree_three() {
        let g = build(&ident("(1 2)", 2, 1), 3);
        let comps = g.components();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].size, 6);
        assert!(!comps[0].dead);
    }

    #[test]
    fn anticommutativity_kills_degree_three() {
        let id = ident("(1 2)", 2, -1);
        let g = build(&id, 3);
        assert!(g.components().iter().all(|c| c.dead));
        assert!(!nilpotent_at(&id, 2, &OracleOptions::default()).unwrap());
        assert!(nilpotent_at(&id, 3, &OracleOptions::default()).unwrap());
        assert!(g.census().to_string().starts_with("all components dead"));
    }

    #[test]
    fn reversal_cosets() {
        let g = build(&ident("[3,2,1]", 3, 1), 3);
        let comps = g.components();
        assert_eq!(comps.len(), 3);
        assert!(comps.iter().all(|c| c.size == 2 && !c.dead));
        assert_eq!(g.census().to_string(), "3 components of size 2; |H_3| = 2");
    }

    #[test]
    fn equivalent_examples() {
        let g = build(&ident("(1 2)", 2, 1), 2);
        let one = Scalar::Rational(BigRational::one());
        assert_eq!(
            g.equivalent(&Permutation::identity(2), &"[2,1]".parse().unwrap())
                .unwrap(),
            Equivalence::Scaled(one)
        );
        let g = build(&ident("(1 2)", 2, 2), 2);
        for a in Permutation::all(2) {
            for b in Permutation::all(2) {
                assert_eq!(g.equivalent(&a, &b).unwrap(), Equivalence::Zero);
            }
        }
        let g = build(&ident("[3,2,1]", 3, 1), 3);
        assert_eq!(
            g.equivalent(&Permutation::identity(3), &"[2,1,3]".parse().unwrap())
                .unwrap(),
            Equivalence::Absent
        );
    }

    #[test]
    fn scaled_ratio_is_reported() {
        // x1x2x3 = -x3x2x1 at degree 3: the ratio between the two terms is -1.
        let g = build(&ident("[3,2,1]", 3, -1), 3);
        assert_eq!(
            g.equivalent(&Permutation::identity(3), &"[3,2,1]".parse().unwrap())
                .unwrap(),
            Equivalence::Scaled(Scalar::Rational(BigRational::from_integer((-1).into())))
        );
        assert_eq!(g.identity_group(), vec![Permutation::identity(3)]);
    }

    #[test]
    fn transposition_1n_is_eventually_commutative_at_six() {
        let g = build(&ident("(1 5)", 5, 1), 6);
        assert_eq!(g.identity_group().len(), 720);
    }

    #[test]
    fn sharpness_family_stays_in_border_subgroup() {
        let g = build(&ident("(1 2)(4 5)", 5, 1), 6);
        let h = g.identity_group();
        assert!(h.len() < 720);
        assert!(h.iter().all(|t| t.in_s_nab(3, 3)));
    }

    #[test]
    fn identity_group_is_closed() {
        for sigma in Permutation::all(4) {
            let g = build(&TwoTermIdentity::unscaled(sigma), 5);
            let h = g.identity_group();
            let set: std::collections::BTreeSet<_> = h.iter().cloned().collect();
            for a in &h {
                assert!(set.contains(&a.inverse()));
                for b in &h {
                    assert!(set.contains(&(a * b)));
                }
            }
        }
    }

    #[test]
    fn unscaled_components_never_die() {
        for sigma in Permutation::all(3) {
            let g = build(&TwoTermIdentity::unscaled(sigma), 5);
            assert!(g.components().iter().all(|c| !c.dead));
        }
    }

    #[test]
    fn nilpotency_is_monotone() {
        for (sigma, n) in [("(1 2)", 2), ("[3,2,1]", 3), ("(1 2 3)", 3), ("[1,3,2]", 3)] {
            for q in [-1, 2] {
                let id = ident(sigma, n, q);
                let mut before = false;
                for k in n..=6 {
                    let now = nilpotent_at(&id, k, &OracleOptions::default()).unwrap();
                    assert!(!before || now, "{sigma} q={q} k={k}");
                    before = now;
                }
            }
        }
    }

    #[test]
    fn potentials_are_consistent_in_live_components() {
        // x_a = c1 x_b and x_b = c2 x_c imply x_a = c1 c2 x_c.
        let g = build(&ident("[3,2,1]", 3, -1), 4);
        let all: Vec<_> = Permutation::all(4).collect();
        for a in &all {
            for b in &all {
                if let Equivalence::Scaled(Scalar::Rational(ab)) = g.equivalent(a, b).unwrap() {
                    if let Equivalence::Scaled(Scalar::Rational(ba)) = g.equivalent(b, a).unwrap() {
                        assert!((ab * ba).is_one());
                    } else {
                        panic!("asymmetric answer");
                    }
                }
            }
        }
    }

    #[test]
    fn prime_field_mode() {
        let opts = OracleOptions {
            scalars: ScalarMode::Prime(3),
            ..OracleOptions::default()
        };
        // q = 4 ≡ 1 (mod 3): behaves like commutativity.
        let id = ident("(1 2)", 2, 4);
        let g = EquivalenceGraph::build(&id, 3, &opts).unwrap();
        assert!(g.components().iter().all(|c| !c.dead));
        assert_eq!(g.identity_group().len(), 6);
        // q = 3 is not a unit mod 3.
        assert!(EquivalenceGraph::build(&ident("(1 2)", 2, 3), 3, &opts).is_err());
        let bad = OracleOptions {
            scalars: ScalarMode::Prime(4),
            ..OracleOptions::default()
        };
        assert!(EquivalenceGraph::build(&id, 3, &bad).is_err());
    }

    #[test]
    fn caps_and_preconditions() {
        let id = ident("(1 2)", 2, 1);
        let err = EquivalenceGraph::build(&id, 9, &OracleOptions::default()).unwrap_err();
        assert!(err.is_resource());
        assert!(
            EquivalenceGraph::build(&ident("[3,2,1]", 3, 1), 2, &OracleOptions::default()).is_err()
        );
        let g = build(&id, 3);
        assert!(g
            .equivalent(&Permutation::identity(2), &Permutation::identity(3))
            .is_err());
        assert!(!<BigRational as num_traits::Zero>::zero().is_one());
    }
}
