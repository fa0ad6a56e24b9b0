//! Exhaustive enumeration of commutative monoids of small order, up to
//! isomorphism, with a canonical form so that corpora never contain two
//! isomorphic objects.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::algebra::{cyclic_nat, Elem, Semimodule, Semiring};
use crate::builtins::monoid_semimodule;
use crate::error::{Error, Result};

/// Largest order the exhaustive enumerator accepts.
pub const MAX_ENUM_ORDER: usize = 5;

/// A deduplicated family of semimodules over one semiring; built so that no
/// two entries are isomorphic (each is the canonical representative of its
/// isomorphism class).
#[derive(Debug, Clone)]
pub struct Corpus {
    pub semiring: Arc<Semiring>,
    pub objects: Vec<Arc<Semimodule>>,
}

fn permutations_fixing_zero(n: usize) -> Vec<Vec<usize>> {
    // all permutations of 0..n with p[0] = 0
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    fn rec(p: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
        if k == p.len() {
            out.push(p.clone());
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            rec(p, k + 1, out);
            p.swap(k, i);
        }
    }
    rec(&mut p, 1, &mut out);
    out
}

/// Lexicographically least relabeling of a monoid addition table over all
/// carrier permutations fixing index 0. Two monoid tables describe isomorphic
/// monoids iff their canonical forms are equal (any isomorphism must fix the
/// identity, so permutations fixing 0 cover every relabeling).
pub fn canonical_form(add: &[Vec<Elem>]) -> Vec<Vec<Elem>> {
    let n = add.len();
    let mut best: Option<Vec<Vec<Elem>>> = None;
    for p in permutations_fixing_zero(n) {
        let mut relabeled = vec![vec![0; n]; n];
        for i in 0..n {
            for j in 0..n {
                relabeled[p[i]][p[j]] = p[add[i][j]];
            }
        }
        if best.as_ref().map_or(true, |b| relabeled < *b) {
            best = Some(relabeled);
        }
    }
    best.unwrap_or_default()
}

/// Every commutative monoid of the given order, one canonical addition table
/// per isomorphism class, in lexicographic order. The identity sits at
/// index 0. Backtracking over the upper triangle with incremental
/// associativity pruning.
pub fn enumerate_commutative_monoids(n: usize) -> Result<Vec<Vec<Vec<Elem>>>> {
    if n == 0 || n > MAX_ENUM_ORDER {
        return Err(Error::OrderBound(format!(
            "monoid enumeration supports orders 1..={MAX_ENUM_ORDER}, got {n}"
        )));
    }
    const UNSET: Elem = usize::MAX;
    let mut table = vec![vec![UNSET; n]; n];
    for j in 0..n {
        table[0][j] = j;
        table[j][0] = j;
    }
    // cells to decide, upper triangle without the identity row/column
    let cells: Vec<(usize, usize)> = (1..n)
        .flat_map(|i| (i..n).map(move |j| (i, j)))
        .collect();

    fn associativity_holds_so_far(t: &[Vec<Elem>], n: usize) -> bool {
        const UNSET: Elem = usize::MAX;
        for a in 0..n {
            for b in 0..n {
                let ab = t[a][b];
                if ab == UNSET {
                    continue;
                }
                for c in 0..n {
                    let bc = t[b][c];
                    if bc == UNSET {
                        continue;
                    }
                    let left = t[ab][c];
                    let right = t[a][bc];
                    if left != UNSET && right != UNSET && left != right {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn fill(
        table: &mut Vec<Vec<Elem>>,
        cells: &[(usize, usize)],
        at: usize,
        n: usize,
        classes: &mut BTreeSet<Vec<Vec<Elem>>>,
    ) {
        if at == cells.len() {
            classes.insert(canonical_form(table));
            return;
        }
        let (i, j) = cells[at];
        for v in 0..n {
            table[i][j] = v;
            table[j][i] = v;
            if associativity_holds_so_far(table, n) {
                fill(table, cells, at + 1, n, classes);
            }
        }
        table[i][j] = usize::MAX;
        table[j][i] = usize::MAX;
    }

    let mut classes = BTreeSet::new();
    fill(&mut table, &cells, 0, n, &mut classes);
    Ok(classes.into_iter().collect())
}

/// The semiring over which every commutative monoid of order ≤ `max_order`
/// is a semimodule via repeated addition: the quotient of ℕ₀ with index
/// `max_order` and period `lcm(1..=max_order)`.
pub fn monoid_action_semiring(max_order: usize) -> Result<Arc<Semiring>> {
    let period = (1..=max_order.max(1)).fold(1usize, lcm);
    cyclic_nat(max_order.max(2), period)
}

fn lcm(a: usize, b: usize) -> usize {
    fn gcd(a: usize, b: usize) -> usize {
        if b == 0 { a } else { gcd(b, a % b) }
    }
    a / gcd(a, b) * b
}

/// Corpus of all commutative monoids of order 1..=`max_order` (one per
/// isomorphism class), wrapped as semimodules over
/// [`monoid_action_semiring`].
pub fn monoid_corpus(max_order: usize) -> Result<Corpus> {
    let semiring = monoid_action_semiring(max_order)?;
    let mut objects = Vec::new();
    for n in 1..=max_order {
        for (k, add) in enumerate_commutative_monoids(n)?.into_iter().enumerate() {
            objects.push(monoid_semimodule(
                format!("monoid_{n}_{k}"),
                add,
                semiring.clone(),
            )?);
        }
    }
    Ok(Corpus { semiring, objects })
}
