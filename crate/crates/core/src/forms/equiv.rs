//! `GL_2(Z)`-equivalence search.
//!
//! Both inputs are reduced, then words in [`SEARCH_GENERATORS`] of length
//! at most `radius` are applied to the first reduced form. The search is
//! sound (a returned matrix is always verified) but incomplete: `None`
//! means no witness was found within the radius.

use std::collections::{HashSet, VecDeque};
use std::hash::Hash;

use super::{reduce, BinaryCubicForm, MarkedForm, Unimodular};
use crate::{Error, Result};

/// Swap, the two unit translations and `x -> -x`, as `[m11, m12, m21, m22]`.
pub const SEARCH_GENERATORS: [[i64; 4]; 4] = [[0, 1, 1, 0], [1, 0, 1, 1], [1, 0, -1, 1], [-1, 0, 0, 1]];

fn generators() -> Vec<Unimodular> {
    SEARCH_GENERATORS
        .iter()
        .map(|&[a, b, c, d]| Unimodular::new(a, b, c, d).unwrap())
        .collect()
}

/// Breadth-first search for a word `w` with `act(start, w) = target`.
fn word_search<T, F>(start: T, target: &T, radius: usize, act: F) -> Option<Unimodular>
where
    T: Clone + Eq + Hash,
    F: Fn(&T, &Unimodular) -> T,
{
    let gens = generators();
    let mut seen = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([(start, Unimodular::identity(), 0usize)]);
    while let Some((state, word, depth)) = queue.pop_front() {
        if &state == target {
            return Some(word);
        }
        if depth == radius {
            continue;
        }
        for g in &gens {
            let next = act(&state, g);
            if seen.insert(next.clone()) {
                queue.push_back((next, g.mul(&word), depth + 1));
            }
        }
    }
    None
}

/// Searches for `g` with `f.act(g) == h`.
pub fn equiv(f: &BinaryCubicForm, h: &BinaryCubicForm, radius: usize) -> Result<Option<Unimodular>> {
    let (df, dh) = (f.discriminant(), h.discriminant());
    if df == 0.into() || dh == 0.into() {
        return Err(Error::DegenerateForm);
    }
    if df != dh {
        return Ok(None);
    }
    let (f_red, gf) = reduce(f)?;
    let (h_red, gh) = reduce(h)?;
    let found = word_search(f_red, &h_red, radius, |s, g| s.act(g));
    Ok(found
        .map(|w| gh.inverse().mul(&w).mul(&gf))
        .filter(|g| &f.act(g) == h))
}

/// Searches for `g` with `a.act(g) == b`. Pairs whose marked values differ
/// are never equivalent.
pub fn equiv_marked(a: &MarkedForm, b: &MarkedForm, radius: usize) -> Result<Option<Unimodular>> {
    let (da, db) = (a.form().discriminant(), b.form().discriminant());
    if da == 0.into() || db == 0.into() {
        return Err(Error::DegenerateForm);
    }
    if da != db || a.value() != b.value() {
        return Ok(None);
    }
    let (_, ga) = reduce(a.form())?;
    let (_, gb) = reduce(b.form())?;
    let (a_red, b_red) = (a.act(&ga), b.act(&gb));
    let found = word_search(a_red, &b_red, radius, |s, g| s.act(g));
    Ok(found
        .map(|w| gb.inverse().mul(&w).mul(&ga))
        .filter(|g| &a.act(g) == b))
}
