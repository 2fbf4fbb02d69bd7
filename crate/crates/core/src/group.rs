//! Finitely generated permutation groups.
//!
//! [`PermGroup`] keeps a stabilizer chain over the fixed base `1, 2, …, k`
//! (deterministic Schreier–Sims). Fixing the base to the natural order makes
//! lexicographic enumeration a plain depth-first walk of the transversals.

use crate::error::{Error, Result};
use crate::perm::{factorial, Permutation};

/// Default cap on the number of elements [`PermGroup::elements`] will produce.
pub const DEFAULT_ENUMERATION_CAP: u128 = 5_000_000;

/// Largest degree accepted by the group engine (`k!` must fit in a `u128`).
pub const MAX_DEGREE: usize = 34;

#[derive(Debug, Clone)]
struct Level {
    /// `reps[x]` maps the base point of this level to `x`.
    reps: Vec<Option<Permutation>>,
    inv_reps: Vec<Option<Permutation>>,
    orbit: Vec<usize>,
}

impl Level {
    fn trivial(k: usize, base: usize) -> Level {
        let mut reps = vec![None; k];
        reps[base] = Some(Permutation::identity(k));
        Level {
            inv_reps: reps.clone(),
            reps,
            orbit: vec![base],
        }
    }
}

/// A subgroup of `S_k` given by generators.
#[derive(Debug, Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    strong: Vec<Permutation>,
    levels: Vec<Level>,
    enumeration_cap: u128,
}

fn first_moved(p: &Permutation) -> Option<usize> {
    (0..p.size()).find(|&t| p.image0(t) != t)
}

impl PermGroup {
    pub fn trivial(k: usize) -> Result<PermGroup> {
        if k == 0 || k > MAX_DEGREE {
            return Err(Error::OutOfRange {
                what: "group degree",
                value: k,
                range: format!("1..={MAX_DEGREE}"),
            });
        }
        Ok(PermGroup {
            degree: k,
            generators: Vec::new(),
            strong: Vec::new(),
            levels: (0..k).map(|b| Level::trivial(k, b)).collect(),
            enumeration_cap: DEFAULT_ENUMERATION_CAP,
        })
    }

    /// `⟨gens⟩ ≤ S_k`.
    pub fn generate<'a>(
        k: usize,
        gens: impl IntoIterator<Item = &'a Permutation>,
    ) -> Result<PermGroup> {
        let mut group = PermGroup::trivial(k)?;
        for g in gens {
            group.insert(g)?;
        }
        Ok(group)
    }

    pub fn with_enumeration_cap(mut self, cap: u128) -> Self {
        self.enumeration_cap = cap;
        self
    }

    pub fn enumeration_cap(&self) -> u128 {
        self.enumeration_cap
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Generators accepted so far (those that enlarged the group).
    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    fn check_size(&self, t: &Permutation) -> Result<()> {
        if t.size() != self.degree {
            return Err(Error::SizeMismatch {
                expected: self.degree,
                found: t.size(),
            });
        }
        Ok(())
    }

    /// Adds a generator. Returns whether the group grew.
    pub fn insert(&mut self, g: &Permutation) -> Result<bool> {
        self.check_size(g)?;
        match self.sift(g, 0) {
            Ok(()) => Ok(false),
            Err((level, residue)) => {
                self.generators.push(g.clone());
                self.strong.push(residue);
                self.complete_from(level);
                Ok(true)
            }
        }
    }

    /// Strips `g` through the chain from `start`. On failure returns the level
    /// that rejected it together with the partially stripped element.
    fn sift(&self, g: &Permutation, start: usize) -> std::result::Result<(), (usize, Permutation)> {
        let mut h = g.clone();
        for (i, level) in self.levels.iter().enumerate().skip(start) {
            let x = h.image0(i);
            if x == i {
                continue;
            }
            match &level.inv_reps[x] {
                Some(inv) => h = inv.compose_unchecked(&h),
                None => return Err((i, h)),
            }
        }
        debug_assert!(h.is_identity());
        Ok(())
    }

    fn rebuild_level(&mut self, i: usize) {
        let k = self.degree;
        let gens: Vec<&Permutation> = self
            .strong
            .iter()
            .filter(|s| first_moved(s).is_some_and(|m| m >= i))
            .collect();
        let mut level = Level::trivial(k, i);
        let mut head = 0;
        while head < level.orbit.len() {
            let x = level.orbit[head];
            head += 1;
            for s in &gens {
                let y = s.image0(x);
                if level.reps[y].is_none() {
                    let rep = s.compose_unchecked(level.reps[x].as_ref().unwrap());
                    level.inv_reps[y] = Some(rep.inverse());
                    level.reps[y] = Some(rep);
                    level.orbit.push(y);
                }
            }
        }
        self.levels[i] = level;
    }

    /// Restores the chain after a strong generator moving base point `start`
    /// was added. Levels above `start` are complete on entry.
    fn complete_from(&mut self, start: usize) {
        let mut i = start;
        loop {
            self.rebuild_level(i);
            match self.find_missing_schreier_generator(i) {
                Some((j, residue)) => {
                    self.strong.push(residue);
                    i = j;
                }
                None if i == 0 => break,
                None => i -= 1,
            }
        }
    }

    fn find_missing_schreier_generator(&self, i: usize) -> Option<(usize, Permutation)> {
        let level = &self.levels[i];
        let gens = self
            .strong
            .iter()
            .filter(|s| first_moved(s).is_some_and(|m| m >= i));
        for s in gens {
            for &x in &level.orbit {
                let y = s.image0(x);
                let rep_x = level.reps[x].as_ref().unwrap();
                let inv_y = level.inv_reps[y].as_ref().unwrap();
                let schreier = inv_y.compose_unchecked(&s.compose_unchecked(rep_x));
                if let Err(found) = self.sift(&schreier, i + 1) {
                    return Some(found);
                }
            }
        }
        None
    }

    /// Exact membership test.
    pub fn contains(&self, t: &Permutation) -> Result<bool> {
        self.check_size(t)?;
        Ok(self.sift(t, 0).is_ok())
    }

    pub(crate) fn contains_unchecked(&self, t: &Permutation) -> bool {
        self.sift(t, 0).is_ok()
    }

    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    pub fn is_full(&self) -> bool {
        self.order() == factorial(self.degree)
    }

    /// Whether the group contains the alternating group `A_k`. A subgroup of
    /// index at most two in `S_k` is `A_k` or `S_k`.
    pub fn contains_alternating(&self) -> bool {
        self.order() * 2 >= factorial(self.degree)
    }

    /// Every element exactly once, in lexicographic order of one-line form.
    pub fn elements(&self) -> Result<Elements<'_>> {
        let order = self.order();
        if order > self.enumeration_cap {
            return Err(Error::ResourceCap {
                what: format!("enumerating a group of order {order}"),
                cap: self.enumeration_cap,
            });
        }
        let active: Vec<usize> = (0..self.degree)
            .filter(|&i| self.levels[i].orbit.len() > 1)
            .collect();
        let root = Frame {
            depth: 0,
            prefix: Permutation::identity(self.degree),
            pending: Vec::new(),
        };
        let mut it = Elements {
            group: self,
            active,
            stack: Vec::new(),
            leaf: None,
        };
        it.push(root);
        Ok(it)
    }
}

struct Frame {
    depth: usize,
    prefix: Permutation,
    /// Orbit points still to visit, sorted so that `pop` yields the smallest image.
    pending: Vec<usize>,
}

/// Lexicographic iterator over the elements of a [`PermGroup`].
pub struct Elements<'a> {
    group: &'a PermGroup,
    active: Vec<usize>,
    stack: Vec<Frame>,
    leaf: Option<Permutation>,
}

impl Elements<'_> {
    fn push(&mut self, mut frame: Frame) {
        if frame.depth == self.active.len() {
            self.leaf = Some(frame.prefix);
            return;
        }
        let level = &self.group.levels[self.active[frame.depth]];
        let mut pending = level.orbit.clone();
        pending.sort_unstable_by_key(|&x| std::cmp::Reverse(frame.prefix.image0(x)));
        frame.pending = pending;
        self.stack.push(frame);
    }
}

impl Iterator for Elements<'_> {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        loop {
            if let Some(leaf) = self.leaf.take() {
                return Some(leaf);
            }
            let frame = self.stack.last_mut()?;
            let Some(x) = frame.pending.pop() else {
                self.stack.pop();
                continue;
            };
            let depth = frame.depth;
            let level = &self.group.levels[self.active[depth]];
            let prefix = frame
                .prefix
                .compose_unchecked(level.reps[x].as_ref().unwrap());
            self.push(Frame {
                depth: depth + 1,
                prefix,
                pending: Vec::new(),
            });
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::parse_perm;

    fn c(k: usize, s: &str) -> Permutation {
        parse_perm(s, Some(k)).unwrap()
    }

    #[test]
    fn generate_examples() {
        let g = PermGroup::generate(4, &[c(4, "(1 2)"), c(4, "(1 2 3 4)")]).unwrap();
        assert_eq!(g.order(), 24);
        assert!(g.is_full());
        assert_eq!(PermGroup::generate(5, &[]).unwrap().order(), 1);
        // S3 × S2 on {1,2,3} and {7,8}; 3!·2! = 12 by closure.
        let g = PermGroup::generate(8, &[c(8, "(1 2)"), c(8, "(2 3)"), c(8, "(7 8)")]).unwrap();
        assert_eq!(g.order(), 12);
    }

    #[test]
    fn size_mismatch() {
        assert!(PermGroup::generate(4, &[c(3, "(1 2)")]).is_err());
        let g = PermGroup::trivial(4).unwrap();
        assert!(g.contains(&c(3, "(1 2)")).is_err());
    }

    #[test]
    fn contains_examples() {
        let g = PermGroup::generate(3, &[c(3, "(1 2 3)")]).unwrap();
        assert!(g.contains(&c(3, "(1 3 2)")).unwrap());
        assert!(!g.contains(&c(3, "(1 2)")).unwrap());
        let g = PermGroup::generate(5, &[c(5, "(1 2)"), c(5, "(1 2 3 4 5)")]).unwrap();
        assert!(Permutation::all(5).all(|t| g.contains(&t).unwrap()));
    }

    #[test]
    fn flags() {
        let a4 = PermGroup::generate(4, &[c(4, "(1 2 3)"), c(4, "(2 3 4)")]).unwrap();
        assert_eq!(a4.order(), 12);
        assert!(a4.contains_alternating());
        assert!(!a4.is_full());
        let s2 = PermGroup::generate(2, &[c(2, "(1 2)")]).unwrap();
        assert!(s2.is_full());
        let trivial = PermGroup::trivial(5).unwrap();
        assert_eq!(trivial.order(), 1);
        assert!(!trivial.is_full());
        assert!(!trivial.contains_alternating());
    }

    #[test]
    fn enumeration_is_lexicographic_and_complete() {
        let g = PermGroup::generate(6, &[c(6, "(1 4)(2 5 3)"), c(6, "(2 6)")]).unwrap();
        let elems: Vec<_> = g.elements().unwrap().collect();
        assert_eq!(elems.len() as u128, g.order());
        assert!(elems.windows(2).all(|w| w[0] < w[1]));
        assert!(elems.iter().all(|e| g.contains(e).unwrap()));
        let s5: Vec<_> = PermGroup::generate(5, &[c(5, "(1 2)"), c(5, "(1 2 3 4 5)")])
            .unwrap()
            .elements()
            .unwrap()
            .collect();
        assert_eq!(s5, Permutation::all(5).collect::<Vec<_>>());
    }

    #[test]
    fn enumeration_cap() {
        let g = PermGroup::generate(7, &[c(7, "(1 2)"), c(7, "(1 2 3 4 5 6 7)")])
            .unwrap()
            .with_enumeration_cap(1000);
        let err = g.elements().err().unwrap();
        assert!(err.is_resource());
        assert!(err.to_string().contains("1000"));
    }

    #[test]
    fn large_full_group() {
        let g =
            PermGroup::generate(10, &[c(10, "(1 2)"), c(10, "(1 2 3 4 5 6 7 8 9 10)")]).unwrap();
        assert_eq!(g.order(), 3_628_800);
        assert!(g.contains(&c(10, "(1 10)(3 7 4)")).unwrap());
    }

    #[test]
    fn insert_reports_growth() {
        let mut g = PermGroup::trivial(4).unwrap();
        assert!(g.insert(&c(4, "(1 2)")).unwrap());
        assert!(!g.insert(&c(4, "(1 2)")).unwrap());
        assert!(!g.insert(&Permutation::identity(4)).unwrap());
        assert!(g.insert(&c(4, "(3 4)")).unwrap());
        assert_eq!(g.order(), 4);
        assert_eq!(g.generators().len(), 2);
    }
}
