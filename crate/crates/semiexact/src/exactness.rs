//! Composable sequences of morphisms and per-junction exactness verdicts.
//!
//! At a junction `L --f--> M --g--> N` the tiers are:
//! proper-exact `f(L) = Ker g`; semi-exact `f(L)̄ = Ker g`; quasi-exact
//! semi-exact with `g` k-uniform; exact proper-exact with `g` k-uniform.
//! So exact ⇒ quasi ⇒ semi and proper ⇒ semi.

use serde::Serialize;

use crate::algebra::{zero_module, Elem};
use crate::error::{Error, Result};
use crate::morphism::{
    classify, cokernel, image, kernel, validate_morphism, zero_morphism, Morphism,
};
use crate::substructure::subtractive_closure;

/// A composable chain `f₁, .., f_n` with optional zero-object padding on
/// either end.
#[derive(Debug, Clone)]
pub struct Sequence {
    pub morphisms: Vec<Morphism>,
    pub pad_left: bool,
    pub pad_right: bool,
}

impl Sequence {
    pub fn new(morphisms: Vec<Morphism>, pad_left: bool, pad_right: bool) -> Result<Self> {
        if morphisms.is_empty() {
            return Err(Error::EmptySet("sequence with no morphisms".into()));
        }
        for pair in morphisms.windows(2) {
            if pair[0].cod != pair[1].dom {
                return Err(Error::ObjectMismatch(format!(
                    "sequence not composable between '{}' and '{}'",
                    pair[0].name, pair[1].name
                )));
            }
        }
        Ok(Sequence { morphisms, pad_left, pad_right })
    }

    /// The chain with padding applied: a zero morphism from (into) the zero
    /// object is prepended (appended) when the corresponding flag is set.
    pub fn padded(&self) -> Vec<Morphism> {
        let mut out = Vec::with_capacity(self.morphisms.len() + 2);
        if self.pad_left {
            let first = &self.morphisms[0];
            let z = zero_module(first.dom.semiring.clone());
            out.push(zero_morphism(&z, &first.dom).expect("same semiring"));
        }
        out.extend(self.morphisms.iter().cloned());
        if self.pad_right {
            let last = out.last().unwrap();
            let z = zero_module(last.cod.semiring.clone());
            out.push(zero_morphism(&last.cod, &z).expect("same semiring"));
        }
        out
    }
}

/// Which tier a junction witness refutes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JunctionWitness {
    pub tier: &'static str,
    pub elements: Vec<Elem>,
}

/// All exactness flags of one junction, with a counterexample for the
/// strongest failed tier.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JunctionVerdict {
    pub chain: bool,
    pub proper_exact: bool,
    pub semi_exact: bool,
    pub quasi_exact: bool,
    pub exact: bool,
    pub k_uniform_junction: bool,
    pub i_uniform_junction: bool,
    pub uniform_junction: bool,
    pub witness: Option<JunctionWitness>,
}

impl JunctionVerdict {
    /// The tier implications, re-checked from the raw flags.
    pub fn tiers_consistent(&self) -> bool {
        (!self.exact || self.quasi_exact)
            && (!self.quasi_exact || self.semi_exact)
            && (!self.proper_exact || self.semi_exact)
            && (!self.exact || self.proper_exact)
    }
}

/// Least element of the symmetric difference of two sorted sets.
fn first_mismatch(a: &[Elem], b: &[Elem]) -> Option<Elem> {
    let mut i = 0;
    let mut j = 0;
    loop {
        match (a.get(i), b.get(j)) {
            (Some(&x), Some(&y)) if x == y => {
                i += 1;
                j += 1;
            }
            (Some(&x), Some(&y)) => return Some(x.min(y)),
            (Some(&x), None) | (None, Some(&x)) => return Some(x),
            (None, None) => return None,
        }
    }
}

/// Least fiber pair refuting k-uniformity of `g`, if any.
fn k_uniform_witness(g: &Morphism) -> Result<Option<(Elem, Elem)>> {
    let ker = kernel(g)?;
    for x1 in 0..g.dom.order {
        for x2 in (x1 + 1)..g.dom.order {
            if g.map[x1] == g.map[x2]
                && !ker.members.iter().any(|&k1| {
                    ker.members
                        .iter()
                        .any(|&k2| g.dom.add(x1, k1) == g.dom.add(x2, k2))
                })
            {
                return Ok(Some((x1, x2)));
            }
        }
    }
    Ok(None)
}

/// Full verdict for the junction `f` then `g`.
pub fn junction_verdict(f: &Morphism, g: &Morphism) -> Result<JunctionVerdict> {
    if f.cod != g.dom {
        return Err(Error::ObjectMismatch(format!(
            "junction ({}, {}) not composable",
            f.name, g.name
        )));
    }
    let im = image(f)?;
    let ker = kernel(g)?;
    let closure = subtractive_closure(&f.cod, &im.members)?;
    let chain = im.members.iter().all(|&m| ker.contains(m));
    let proper_exact = im.members == ker.members;
    let semi_exact = closure.members == ker.members;
    let g_k_uniform_witness = k_uniform_witness(g)?;
    let g_k_uniform = g_k_uniform_witness.is_none();
    let cf = classify(f)?;
    let cg = classify(g)?;

    let witness = if !chain {
        let l = (0..f.dom.order).find(|&l| g.map[f.map[l]] != 0).unwrap();
        Some(JunctionWitness { tier: "chain", elements: vec![l, f.map[l], g.map[f.map[l]]] })
    } else if !semi_exact {
        let m = first_mismatch(&closure.members, &ker.members).unwrap();
        Some(JunctionWitness { tier: "semi_exact", elements: vec![m] })
    } else if !proper_exact {
        let m = first_mismatch(&im.members, &ker.members).unwrap();
        Some(JunctionWitness { tier: "proper_exact", elements: vec![m] })
    } else if let Some((x1, x2)) = g_k_uniform_witness {
        Some(JunctionWitness { tier: "g_k_uniform", elements: vec![x1, x2] })
    } else {
        None
    };

    let verdict = JunctionVerdict {
        chain,
        proper_exact,
        semi_exact,
        quasi_exact: semi_exact && g_k_uniform,
        exact: proper_exact && g_k_uniform,
        k_uniform_junction: cf.k_uniform && cg.k_uniform,
        i_uniform_junction: cf.i_uniform && cg.i_uniform,
        uniform_junction: cf.uniform && cg.uniform,
        witness,
    };
    if !verdict.tiers_consistent() {
        return Err(Error::Internal("junction tier implications violated".into()));
    }
    Ok(verdict)
}

/// Verdicts for every interior junction of the padded sequence.
pub fn sequence_report(sequence: &Sequence) -> Result<Vec<JunctionVerdict>> {
    let padded = sequence.padded();
    padded
        .windows(2)
        .map(|pair| junction_verdict(&pair[0], &pair[1]))
        .collect()
}

/// Outcome of a short-exactness test with the failing clause named.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShortExactReport {
    pub ok: bool,
    pub detail: String,
}

/// Is `0 → A --f--> B --g--> C → 0` exact? Characterized by: `f` injective,
/// `f(A) = Ker g`, `g` surjective and k-uniform.
pub fn is_short_exact(f: &Morphism, g: &Morphism) -> Result<ShortExactReport> {
    if f.cod != g.dom {
        return Err(Error::ObjectMismatch(format!(
            "short sequence ({}, {}) not composable",
            f.name, g.name
        )));
    }
    let mut failing = Vec::new();
    if !f.is_injective() {
        failing.push("first map not injective");
    }
    if image(f)?.members != kernel(g)?.members {
        failing.push("image of first map differs from kernel of second");
    }
    if !g.is_surjective() {
        failing.push("second map not surjective");
    }
    if k_uniform_witness(g)?.is_some() {
        failing.push("second map not k-uniform");
    }
    Ok(if failing.is_empty() {
        ShortExactReport { ok: true, detail: "short exact".into() }
    } else {
        ShortExactReport { ok: false, detail: failing.join("; ") }
    })
}

/// The induced map `f′ : L → Ker(g)` when `g ∘ f = 0`; surjective iff the
/// junction is proper-exact.
pub fn induced_into_kernel(f: &Morphism, g: &Morphism) -> Result<Morphism> {
    if f.cod != g.dom {
        return Err(Error::ObjectMismatch(format!(
            "induced_into_kernel({}, {})",
            f.name, g.name
        )));
    }
    let ker = kernel(g)?;
    let (ker_obj, _) = ker.embed();
    let map: Vec<Elem> = f
        .map
        .iter()
        .map(|&m| {
            ker.members.binary_search(&m).map_err(|_| {
                Error::Precondition(format!(
                    "g∘f ≠ 0: image element {m} of '{}' escapes Ker('{}')",
                    f.name, g.name
                ))
            })
        })
        .collect::<Result<_>>()?;
    validate_morphism(format!("{}'", f.name), f.dom.clone(), ker_obj, map)
}

/// The induced map `g″ : Coker(f) → N`, `[m] ↦ g(m)`, defined when
/// `g ∘ f = 0`; injective iff the junction is semi-exact and `g` k-uniform.
pub fn induced_from_cokernel(f: &Morphism, g: &Morphism) -> Result<Morphism> {
    if f.cod != g.dom {
        return Err(Error::ObjectMismatch(format!(
            "induced_from_cokernel({}, {})",
            f.name, g.name
        )));
    }
    let coker = cokernel(f)?;
    let mut map = vec![0usize; coker.quotient.order];
    for (class, members) in coker.class_members.iter().enumerate() {
        map[class] = g.map[members[0]];
        for &m in members {
            if g.map[m] != map[class] {
                return Err(Error::Precondition(format!(
                    "'{}' not constant on Bourne class {class} of Coker('{}'): elements {} and {}",
                    g.name, f.name, members[0], m
                )));
            }
        }
    }
    validate_morphism(
        format!("{}''", g.name),
        coker.quotient.clone(),
        g.cod.clone(),
        map,
    )
}

/// The five-term sequence `0 → Ker γ → X → Y → Coker γ → 0` with its report.
/// Always semi-exact everywhere; exact everywhere iff `γ` is uniform.
pub fn ker_coker_sequence(gamma: &Morphism) -> Result<(Sequence, Vec<JunctionVerdict>)> {
    let (_, ker_inclusion) = kernel(gamma)?.embed();
    let coker = cokernel(gamma)?;
    let sequence = Sequence::new(
        vec![ker_inclusion, gamma.clone(), coker.projection],
        true,
        true,
    )?;
    let report = sequence_report(&sequence)?;
    Ok((sequence, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{builtin_semiring, SemiringFamily};
    use crate::builtins::{cyclic_group, saturation_map, trunc_monoid};
    use crate::morphism::identity;
    use crate::substructure::{quotient_by_sub, Subsemimodule};
    use std::sync::Arc;

    fn z4ring() -> Arc<crate::algebra::Semiring> {
        builtin_semiring(SemiringFamily::Zmod, 4).unwrap()
    }

    fn nat2() -> Arc<crate::algebra::Semiring> {
        builtin_semiring(SemiringFamily::TruncNat, 2).unwrap()
    }

    /// inclusion L ↪ M and Bourne projection M ↠ M/L
    fn incl_proj(m: &Arc<crate::algebra::Semimodule>, l: Vec<Elem>) -> (Morphism, Morphism) {
        let sub = Subsemimodule::new(m.clone(), l).unwrap();
        let (_, incl) = sub.embed();
        let proj = quotient_by_sub(&sub).unwrap().projection;
        (incl, proj)
    }

    #[test]
    fn group_quotient_junction_is_exact() {
        let z4 = cyclic_group(4, z4ring()).unwrap();
        let (incl, proj) = incl_proj(&z4, vec![0, 2]);
        let v = junction_verdict(&incl, &proj).unwrap();
        assert!(v.chain && v.proper_exact && v.semi_exact && v.quasi_exact && v.exact);
        assert!(v.uniform_junction);
        assert!(v.witness.is_none());
    }

    #[test]
    fn non_subtractive_junction_is_only_semi_exact() {
        let t2 = trunc_monoid(2, nat2()).unwrap();
        let (incl, proj) = incl_proj(&t2, vec![0, 2]);
        let v = junction_verdict(&incl, &proj).unwrap();
        assert!(v.chain && v.semi_exact);
        assert!(!v.proper_exact && !v.exact);
        // Ker π = {0,1,2} ⊋ {0,2}: the least escaping element is 1
        let w = v.witness.unwrap();
        assert_eq!(w.tier, "proper_exact");
        assert_eq!(w.elements, vec![1]);
    }

    #[test]
    fn zero_through_module_junction() {
        let z2 = cyclic_group(2, z4ring()).unwrap();
        let zero = zero_module(z4ring());
        let f = zero_morphism(&zero, &z2).unwrap();
        let g = zero_morphism(&z2, &zero).unwrap();
        let v = junction_verdict(&f, &g).unwrap();
        assert!(v.chain);
        assert!(!v.proper_exact); // Ker g = Z_2 ≠ 0
        assert!(!v.exact);
    }

    #[test]
    fn short_exact_examples() {
        let z4 = cyclic_group(4, z4ring()).unwrap();
        let (incl, proj) = incl_proj(&z4, vec![0, 2]);
        assert!(is_short_exact(&incl, &proj).unwrap().ok);

        let f = saturation_map(nat2()).unwrap();
        let coker = cokernel(&f).unwrap();
        let r = is_short_exact(&f, &coker.projection).unwrap();
        assert!(!r.ok);
        assert!(r.detail.contains("not injective"));

        // 0 → M --id--> M --0--> 0 → 0 is short exact
        let id = identity(&z4);
        let g = zero_morphism(&z4, &zero_module(z4ring())).unwrap();
        assert!(is_short_exact(&id, &g).unwrap().ok);
    }

    #[test]
    fn sequence_report_padding() {
        let z4 = cyclic_group(4, z4ring()).unwrap();
        let (incl, proj) = incl_proj(&z4, vec![0, 2]);
        let s = Sequence::new(vec![incl, proj], true, true).unwrap();
        let report = sequence_report(&s).unwrap();
        assert_eq!(report.len(), 3);
        assert!(report.iter().all(|v| v.exact));
    }

    #[test]
    fn induced_maps_characterize_tiers() {
        // group case: proper-exact ⟺ f' surjective; both hold
        let z4 = cyclic_group(4, z4ring()).unwrap();
        let (incl, proj) = incl_proj(&z4, vec![0, 2]);
        let f1 = induced_into_kernel(&incl, &proj).unwrap();
        assert!(f1.is_surjective());
        let g2 = induced_from_cokernel(&incl, &proj).unwrap();
        assert!(g2.is_injective());

        // T_2 case: proper fails, so f' misses the closure point 1
        let t2 = trunc_monoid(2, nat2()).unwrap();
        let (incl, proj) = incl_proj(&t2, vec![0, 2]);
        let f1 = induced_into_kernel(&incl, &proj).unwrap();
        assert!(!f1.is_surjective());
        // semi-exact and π k-uniform, so g'' is injective regardless
        let g2 = induced_from_cokernel(&incl, &proj).unwrap();
        assert!(g2.is_injective());
    }

    #[test]
    fn ker_coker_sequence_examples() {
        let z4 = cyclic_group(4, z4ring()).unwrap();
        let (_, report) = ker_coker_sequence(&identity(&z4)).unwrap();
        assert!(report.iter().all(|v| v.exact));

        let f = saturation_map(nat2()).unwrap();
        let (_, report) = ker_coker_sequence(&f).unwrap();
        assert!(report.iter().all(|v| v.semi_exact));
        assert!(report.iter().any(|v| !v.exact)); // f_sat is not k-uniform
    }
}
