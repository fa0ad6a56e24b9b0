//! Subsemimodules, subtractive closures, congruences (generated, Bourne,
//! Iizuka) and quotient construction with canonical projections.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::algebra::{Elem, ElementSet, Semimodule};
use crate::error::{Error, Result};
use crate::morphism::Morphism;

/// A subset of a semimodule that contains 0 and is closed under addition and
/// every scalar action. Members are stored sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subsemimodule {
    pub parent: Arc<Semimodule>,
    pub members: Vec<Elem>,
}

impl Subsemimodule {
    /// Validates closure; rejects subsets that are not subsemimodules.
    pub fn new(parent: Arc<Semimodule>, mut members: Vec<Elem>) -> Result<Self> {
        members.sort_unstable();
        members.dedup();
        if members.first() != Some(&0) {
            return Err(Error::Precondition(format!(
                "subsemimodule of '{}' must contain 0",
                parent.name
            )));
        }
        if members.last().copied().unwrap_or(0) >= parent.order {
            return Err(Error::OutOfRange("subsemimodule member outside carrier".into()));
        }
        let inside = |e: Elem| members.binary_search(&e).is_ok();
        for &a in &members {
            for &b in &members {
                if !inside(parent.add(a, b)) {
                    return Err(Error::Precondition(format!(
                        "subset of '{}' not closed under addition at ({a},{b})",
                        parent.name
                    )));
                }
            }
            for s in 0..parent.semiring.order {
                if !inside(parent.act(a, s)) {
                    return Err(Error::Precondition(format!(
                        "subset of '{}' not closed under action at ({a},{s})",
                        parent.name
                    )));
                }
            }
        }
        Ok(Subsemimodule { parent, members })
    }

    pub fn contains(&self, e: Elem) -> bool {
        self.members.binary_search(&e).is_ok()
    }

    pub fn is_whole(&self) -> bool {
        self.members.len() == self.parent.order
    }

    /// Materializes the subsemimodule as a semimodule in its own right,
    /// together with the inclusion morphism into the parent.
    pub fn embed(&self) -> (Arc<Semimodule>, Morphism) {
        let n = self.members.len();
        let pos = |e: Elem| self.members.binary_search(&e).unwrap();
        let add = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| pos(self.parent.add(self.members[i], self.members[j])))
                    .collect()
            })
            .collect();
        let act = (0..n)
            .map(|i| {
                (0..self.parent.semiring.order)
                    .map(|s| pos(self.parent.act(self.members[i], s)))
                    .collect()
            })
            .collect();
        let object = Arc::new(Semimodule {
            name: format!("{}{:?}", self.parent.name, self.members),
            semiring: self.parent.semiring.clone(),
            order: n,
            add,
            act,
        });
        let inclusion = Morphism {
            name: format!("incl:{}", object.name),
            dom: object.clone(),
            cod: self.parent.clone(),
            map: self.members.clone(),
        };
        (object, inclusion)
    }
}

/// A congruence stored as the map from each element to the least element of
/// its class. This canonical form makes congruence equality table equality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Congruence {
    pub parent: Arc<Semimodule>,
    pub class_of: Vec<Elem>,
}

impl Congruence {
    pub fn new(parent: Arc<Semimodule>, class_of: Vec<Elem>) -> Result<Self> {
        let n = parent.order;
        if class_of.len() != n {
            return Err(Error::ShapeMismatch("class_of length != carrier order".into()));
        }
        for (x, &c) in class_of.iter().enumerate() {
            if c >= n || class_of[c] != c || c > x {
                return Err(Error::Precondition(format!(
                    "class_of is not a least-representative map at element {x}"
                )));
            }
        }
        for a in 0..n {
            for b in 0..n {
                if class_of[a] != class_of[b] {
                    continue;
                }
                for c in 0..n {
                    if class_of[parent.add(a, c)] != class_of[parent.add(b, c)] {
                        return Err(Error::Precondition(format!(
                            "not compatible with addition at ({a},{b},{c})"
                        )));
                    }
                }
                for s in 0..parent.semiring.order {
                    if class_of[parent.act(a, s)] != class_of[parent.act(b, s)] {
                        return Err(Error::Precondition(format!(
                            "not compatible with action at ({a},{b},{s})"
                        )));
                    }
                }
            }
        }
        Ok(Congruence { parent, class_of })
    }

    pub fn related(&self, a: Elem, b: Elem) -> bool {
        self.class_of[a] == self.class_of[b]
    }

    pub fn is_identity(&self) -> bool {
        self.class_of.iter().enumerate().all(|(i, &c)| i == c)
    }

    /// Class representatives in ascending order; representative `i` names
    /// quotient element `i`.
    pub fn representatives(&self) -> Vec<Elem> {
        let mut reps: Vec<Elem> = self.class_of.clone();
        reps.sort_unstable();
        reps.dedup();
        reps
    }
}

/// A quotient semimodule with its canonical projection.
#[derive(Debug, Clone)]
pub struct QuotientResult {
    pub quotient: Arc<Semimodule>,
    pub projection: Morphism,
    pub class_members: Vec<Vec<Elem>>,
}

/// Least subsemimodule containing `seed`: the fixpoint of one-step closure
/// under addition and action, always containing 0.
pub fn subsemimodule_generated(module: &Arc<Semimodule>, seed: &[Elem]) -> Result<Subsemimodule> {
    let n = module.order;
    if seed.iter().any(|&e| e >= n) {
        return Err(Error::OutOfRange("seed element outside carrier".into()));
    }
    let mut inside = vec![false; n];
    inside[0] = true;
    let mut stack: Vec<Elem> = vec![0];
    for &e in seed {
        if !inside[e] {
            inside[e] = true;
            stack.push(e);
        }
    }
    let mut members: Vec<Elem> = stack.clone();
    while let Some(a) = stack.pop() {
        for i in 0..members.len() {
            let b = members[i];
            let c = module.add(a, b);
            if !inside[c] {
                inside[c] = true;
                members.push(c);
                stack.push(c);
            }
        }
        for s in 0..module.semiring.order {
            let c = module.act(a, s);
            if !inside[c] {
                inside[c] = true;
                members.push(c);
                stack.push(c);
            }
        }
    }
    Subsemimodule::new(module.clone(), members)
}

/// Subtractive closure `X̄ = {s | s + x₁ = x₂ for some x₁, x₂ ∈ X}`.
pub fn subtractive_closure(module: &Arc<Semimodule>, members: &[Elem]) -> Result<ElementSet> {
    if members.is_empty() {
        return Err(Error::EmptySet("subtractive closure of the empty set".into()));
    }
    let closed: Vec<Elem> = (0..module.order)
        .filter(|&s| {
            members
                .iter()
                .any(|&x1| members.binary_search(&module.add(s, x1)).is_ok())
        })
        .collect();
    ElementSet::new(module.clone(), closed)
}

/// True iff `L` equals its subtractive closure.
pub fn is_subtractive(sub: &Subsemimodule) -> bool {
    let closure = subtractive_closure(&sub.parent, &sub.members).expect("non-empty");
    closure.members == sub.members
}

fn congruence_from_relation(
    module: &Arc<Semimodule>,
    rel: &[Vec<bool>],
    what: &str,
) -> Result<Congruence> {
    let n = module.order;
    // These relations are congruences by construction; a failure here is a
    // bug, never data to repair, so every closure property is re-verified.
    for a in 0..n {
        if !rel[a][a] {
            return Err(Error::Internal(format!("{what}: not reflexive at {a}")));
        }
        for b in 0..n {
            if rel[a][b] != rel[b][a] {
                return Err(Error::Internal(format!("{what}: not symmetric at ({a},{b})")));
            }
            for c in 0..n {
                if rel[a][b] && rel[b][c] && !rel[a][c] {
                    return Err(Error::Internal(format!(
                        "{what}: not transitive at ({a},{b},{c})"
                    )));
                }
                if rel[a][b] && !rel[module.add(a, c)][module.add(b, c)] {
                    return Err(Error::Internal(format!(
                        "{what}: not compatible with addition at ({a},{b},{c})"
                    )));
                }
            }
            if rel[a][b] {
                for s in 0..module.semiring.order {
                    if !rel[module.act(a, s)][module.act(b, s)] {
                        return Err(Error::Internal(format!(
                            "{what}: not compatible with action at ({a},{b},{s})"
                        )));
                    }
                }
            }
        }
    }
    let class_of = (0..n)
        .map(|a| (0..n).find(|&b| rel[a][b]).unwrap())
        .collect();
    Ok(Congruence { parent: module.clone(), class_of })
}

/// Bourne congruence of a subsemimodule:
/// `m₁ ≡_L m₂ ⟺ m₁ + l₁ = m₂ + l₂ for some l₁, l₂ ∈ L`.
pub fn bourne_congruence(sub: &Subsemimodule) -> Result<Congruence> {
    let module = &sub.parent;
    let n = module.order;
    let rel: Vec<Vec<bool>> = (0..n)
        .map(|m1| {
            (0..n)
                .map(|m2| {
                    sub.members.iter().any(|&l1| {
                        sub.members
                            .iter()
                            .any(|&l2| module.add(m1, l1) == module.add(m2, l2))
                    })
                })
                .collect()
        })
        .collect();
    congruence_from_relation(module, &rel, "Bourne relation")
}

/// Iizuka congruence of a subsemimodule:
/// `m₁ [≡]_L m₂ ⟺ m₁ + l₁ + m' = m₂ + l₂ + m' for some l₁, l₂ ∈ L, m' ∈ M`.
pub fn iizuka_congruence(sub: &Subsemimodule) -> Result<Congruence> {
    let module = &sub.parent;
    let n = module.order;
    let rel: Vec<Vec<bool>> = (0..n)
        .map(|m1| {
            (0..n)
                .map(|m2| {
                    sub.members.iter().any(|&l1| {
                        sub.members.iter().any(|&l2| {
                            let x = module.add(m1, l1);
                            let y = module.add(m2, l2);
                            (0..n).any(|mp| module.add(x, mp) == module.add(y, mp))
                        })
                    })
                })
                .collect()
        })
        .collect();
    congruence_from_relation(module, &rel, "Iizuka relation")
}

/// Least congruence containing the given pairs, computed by union-find
/// saturation: while any merge occurred, every related pair is re-closed
/// under translation by each element and action by each scalar.
pub fn congruence_generated(module: &Arc<Semimodule>, pairs: &[(Elem, Elem)]) -> Result<Congruence> {
    let n = module.order;
    for &(a, b) in pairs {
        if a >= n || b >= n {
            return Err(Error::OutOfRange(format!("pair ({a},{b}) outside carrier")));
        }
    }
    let mut uf: Vec<Elem> = (0..n).collect();
    fn find(uf: &mut Vec<Elem>, x: Elem) -> Elem {
        let mut r = x;
        while uf[r] != r {
            r = uf[r];
        }
        let mut c = x;
        while uf[c] != r {
            let next = uf[c];
            uf[c] = r;
            c = next;
        }
        r
    }
    fn union(uf: &mut Vec<Elem>, a: Elem, b: Elem) -> bool {
        let (ra, rb) = (find(uf, a), find(uf, b));
        if ra == rb {
            return false;
        }
        // keep the least element as root so class_of falls out directly
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        uf[hi] = lo;
        true
    }
    for &(a, b) in pairs {
        union(&mut uf, a, b);
    }
    let mut changed = true;
    while changed {
        changed = false;
        for a in 0..n {
            for b in (a + 1)..n {
                if find(&mut uf, a) != find(&mut uf, b) {
                    continue;
                }
                for c in 0..n {
                    if union(&mut uf, module.add(a, c), module.add(b, c)) {
                        changed = true;
                    }
                }
                for s in 0..module.semiring.order {
                    if union(&mut uf, module.act(a, s), module.act(b, s)) {
                        changed = true;
                    }
                }
            }
        }
    }
    let class_of = (0..n).map(|x| find(&mut uf, x)).collect();
    Congruence::new(module.clone(), class_of)
}

/// Quotient by a congruence: element `i` of the quotient is the `i`-th
/// smallest class representative, tables are induced on representatives and
/// the canonical projection is returned alongside.
pub fn quotient(congruence: &Congruence) -> Result<QuotientResult> {
    let module = &congruence.parent;
    let reps = congruence.representatives();
    let idx = |e: Elem| reps.binary_search(&congruence.class_of[e]).unwrap();
    let q = reps.len();
    let add = (0..q)
        .map(|i| (0..q).map(|j| idx(module.add(reps[i], reps[j]))).collect())
        .collect();
    let act = (0..q)
        .map(|i| {
            (0..module.semiring.order)
                .map(|s| idx(module.act(reps[i], s)))
                .collect()
        })
        .collect();
    let quotient = Arc::new(Semimodule {
        name: format!("{}/~", module.name),
        semiring: module.semiring.clone(),
        order: q,
        add,
        act,
    });
    let projection = Morphism {
        name: format!("pi:{}", quotient.name),
        dom: module.clone(),
        cod: quotient.clone(),
        map: (0..module.order).map(idx).collect(),
    };
    let mut class_members = vec![Vec::new(); q];
    for e in 0..module.order {
        class_members[idx(e)].push(e);
    }
    Ok(QuotientResult { quotient, projection, class_members })
}

/// Bourne quotient `M/L` in one step.
pub fn quotient_by_sub(sub: &Subsemimodule) -> Result<QuotientResult> {
    quotient(&bourne_congruence(sub)?)
}

/// Every subsemimodule of `M`, each exactly once, sorted by size then
/// members. Enumerates by closing each subset of the carrier.
pub fn all_subsemimodules(module: &Arc<Semimodule>) -> Result<Vec<Subsemimodule>> {
    let n = module.order;
    if n > 16 {
        return Err(Error::OrderBound(format!(
            "all_subsemimodules: order {n} exceeds 16"
        )));
    }
    let mut seen: BTreeSet<Vec<Elem>> = BTreeSet::new();
    for mask in 0..(1u32 << (n - 1)) {
        let seed: Vec<Elem> = (1..n).filter(|&e| mask >> (e - 1) & 1 == 1).collect();
        let sub = subsemimodule_generated(module, &seed)?;
        seen.insert(sub.members);
    }
    let mut subs: Vec<Vec<Elem>> = seen.into_iter().collect();
    subs.sort_by_key(|m| (m.len(), m.clone()));
    subs.into_iter()
        .map(|members| Subsemimodule::new(module.clone(), members))
        .collect()
}
