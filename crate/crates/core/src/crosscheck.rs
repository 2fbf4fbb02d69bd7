//! Slow, independent computations used to validate the fast paths.
//!
//! Nothing here calls into the group engine or the lifting formula.

use std::collections::BTreeSet;

use crate::perm::Permutation;

/// A multilinear monomial as a word of 1-based variable indices.
pub type Word = Vec<usize>;

/// Renders a word as `x1x3x2`.
pub fn render_word(word: &[usize]) -> String {
    word.iter().map(|t| format!("x{t}")).collect()
}

fn parse_word(text: &str) -> Word {
    text.split('x')
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().expect("well-formed word"))
        .collect()
}

/// Reads `τ` off a pair of words `(x_id, x_τ)` after relabelling so the first
/// word becomes `x1 x2 ⋯ xk`.
fn read_relation(lhs: &[usize], rhs: &[usize]) -> Permutation {
    let k = lhs.len();
    let mut position = vec![0usize; k + 1];
    for (p, &letter) in lhs.iter().enumerate() {
        position[letter] = p + 1;
    }
    let images: Vec<usize> = rhs.iter().map(|&letter| position[letter]).collect();
    Permutation::from_images(&images).expect("substitution yields a bijection")
}

/// `T_i(f_σ)` computed by literal substitution on the rendered monomials of
/// `f_σ = x_1⋯x_m − x_{σ(1)}⋯x_{σ(m)}`:
/// `i = 0` multiplies by a fresh letter on the left, `i = m+1` on the right,
/// otherwise `x_i ↦ x_i x_{i+1}` and `x_t ↦ x_{t+1}` for `t > i`.
pub fn lift_by_substitution(sigma: &Permutation, i: usize) -> Option<Permutation> {
    let m = sigma.size();
    if i > m + 1 {
        return None;
    }
    let lhs = render_word(&(1..=m).collect::<Vec<_>>());
    let rhs = render_word(&sigma.images());
    let substitute = |text: &str| -> String {
        let letters = parse_word(text);
        let mut out = String::new();
        if i == 0 {
            out.push_str("x1");
        }
        for letter in letters {
            if i == 0 || letter > i {
                out.push_str(&format!("x{}", letter + 1));
            } else if letter == i {
                out.push_str(&format!("x{}x{}", i, i + 1));
            } else {
                out.push_str(&format!("x{letter}"));
            }
        }
        if i == m + 1 {
            out.push_str(&format!("x{}", m + 1));
        }
        out
    };
    let new_lhs = parse_word(&substitute(&lhs));
    let new_rhs = parse_word(&substitute(&rhs));
    Some(read_relation(&new_lhs, &new_rhs))
}

/// The closure of `gens` under composition, by breadth-first products.
pub fn naive_closure(k: usize, gens: &[Permutation]) -> BTreeSet<Permutation> {
    let mut seen = BTreeSet::new();
    let mut frontier = vec![Permutation::identity(k)];
    seen.insert(Permutation::identity(k));
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = &x * g;
            if seen.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    seen
}
