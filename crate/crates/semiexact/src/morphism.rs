//! Linear maps between semimodules: kernel/cokernel/image/coimage, the
//! canonical (surjective, injective) factorization, the classification
//! vocabulary (k-/i-uniform, semi-mono/epi, steadiness, cancellativity),
//! hom-set enumeration and isomorphism search.

use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{cancellable_elements, Elem, Semimodule, ValidationReport, Violation};
use crate::error::{Error, Result};
use crate::substructure::{
    quotient, quotient_by_sub, subtractive_closure, Congruence, QuotientResult, Subsemimodule,
};

/// A linear map between semimodules over the same semiring, stored as the
/// image index for every domain element.
#[derive(Debug, Clone)]
pub struct Morphism {
    pub name: String,
    pub dom: Arc<Semimodule>,
    pub cod: Arc<Semimodule>,
    pub map: Vec<Elem>,
}

impl PartialEq for Morphism {
    fn eq(&self, other: &Self) -> bool {
        // names are labels, not identity
        self.dom == other.dom && self.cod == other.cod && self.map == other.map
    }
}
impl Eq for Morphism {}

impl Morphism {
    pub fn apply(&self, e: Elem) -> Elem {
        self.map[e]
    }

    pub fn is_injective(&self) -> bool {
        let mut hit = vec![false; self.cod.order];
        self.map.iter().all(|&y| !std::mem::replace(&mut hit[y], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.cod.order];
        for &y in &self.map {
            hit[y] = true;
        }
        hit.into_iter().all(|h| h)
    }

    pub fn is_bijective(&self) -> bool {
        self.dom.order == self.cod.order && self.is_injective()
    }

    pub fn is_zero(&self) -> bool {
        self.map.iter().all(|&y| y == 0)
    }
}

/// Collects every linearity violation of a candidate map with witnesses.
/// `Err` is reserved for shape problems (wrong length, out-of-range entries,
/// mismatched semirings), which are distinct from linearity violations.
pub fn morphism_violations(
    dom: &Semimodule,
    cod: &Semimodule,
    map: &[Elem],
) -> Result<ValidationReport> {
    if dom.semiring != cod.semiring {
        return Err(Error::SemiringMismatch(format!(
            "morphism {} -> {}: domain over '{}', codomain over '{}'",
            dom.name, cod.name, dom.semiring.name, cod.semiring.name
        )));
    }
    if map.len() != dom.order {
        return Err(Error::ShapeMismatch(format!(
            "map has {} entries, domain has order {}",
            map.len(),
            dom.order
        )));
    }
    if let Some(&y) = map.iter().find(|&&y| y >= cod.order) {
        return Err(Error::OutOfRange(format!("map value {y} outside codomain carrier")));
    }
    let mut report = ValidationReport::default();
    if map[0] != 0 {
        report.violations.push(Violation { axiom: "zero preserved (f(0) = 0)", witness: vec![] });
    }
    for a in 0..dom.order {
        for b in 0..dom.order {
            if map[dom.add(a, b)] != cod.add(map[a], map[b]) {
                report.violations.push(Violation {
                    axiom: "additive (f(a+b) = f(a)+f(b))",
                    witness: vec![a, b],
                });
            }
        }
        for s in 0..dom.semiring.order {
            if map[dom.act(a, s)] != cod.act(map[a], s) {
                report.violations.push(Violation {
                    axiom: "linear (f(a·s) = f(a)·s)",
                    witness: vec![a, s],
                });
            }
        }
    }
    Ok(report)
}

/// Builds a morphism, rejecting any map that is not linear.
pub fn validate_morphism(
    name: impl Into<String>,
    dom: Arc<Semimodule>,
    cod: Arc<Semimodule>,
    map: Vec<Elem>,
) -> Result<Morphism> {
    let report = morphism_violations(&dom, &cod, &map)?;
    if let Some(v) = report.violations.first() {
        return Err(Error::Precondition(format!(
            "morphism axiom '{}' fails at witness {:?} ({} violation(s) total)",
            v.axiom,
            v.witness,
            report.violations.len()
        )));
    }
    Ok(Morphism { name: name.into(), dom, cod, map })
}

pub fn identity(module: &Arc<Semimodule>) -> Morphism {
    Morphism {
        name: format!("id:{}", module.name),
        dom: module.clone(),
        cod: module.clone(),
        map: (0..module.order).collect(),
    }
}

pub fn zero_morphism(dom: &Arc<Semimodule>, cod: &Arc<Semimodule>) -> Result<Morphism> {
    if dom.semiring != cod.semiring {
        return Err(Error::SemiringMismatch(format!(
            "zero morphism {} -> {}",
            dom.name, cod.name
        )));
    }
    Ok(Morphism {
        name: format!("0:{}->{}", dom.name, cod.name),
        dom: dom.clone(),
        cod: cod.clone(),
        map: vec![0; dom.order],
    })
}

/// `g ∘ f`, defined when `cod(f) = dom(g)`.
pub fn compose(g: &Morphism, f: &Morphism) -> Result<Morphism> {
    if f.cod != g.dom {
        return Err(Error::ObjectMismatch(format!(
            "compose({}, {}): codomain of the second is not the domain of the first",
            g.name, f.name
        )));
    }
    Ok(Morphism {
        name: format!("{}∘{}", g.name, f.name),
        dom: f.dom.clone(),
        cod: g.cod.clone(),
        map: f.map.iter().map(|&x| g.map[x]).collect(),
    })
}

/// `Ker(f) = {m | f(m) = 0}` as a subsemimodule of the domain.
pub fn kernel(f: &Morphism) -> Result<Subsemimodule> {
    let members = (0..f.dom.order).filter(|&m| f.map[m] == 0).collect();
    Subsemimodule::new(f.dom.clone(), members)
}

/// `Im(f) = f(M)` as a subsemimodule of the codomain.
pub fn image(f: &Morphism) -> Result<Subsemimodule> {
    Subsemimodule::new(f.cod.clone(), f.map.clone())
}

/// `Coker(f) = N/f(M)`: the Bourne quotient of the codomain by the image,
/// with the canonical projection.
pub fn cokernel(f: &Morphism) -> Result<QuotientResult> {
    quotient_by_sub(&image(f)?)
}

/// `Coim(f) = M/≡_f` where `x ≡_f x' ⟺ f(x) = f(x')` — the fiber
/// congruence, deliberately not the Bourne congruence of the kernel.
pub fn coimage(f: &Morphism) -> Result<QuotientResult> {
    let class_of = (0..f.dom.order)
        .map(|x| (0..f.dom.order).find(|&y| f.map[y] == f.map[x]).unwrap())
        .collect();
    quotient(&Congruence::new(f.dom.clone(), class_of)?)
}

/// The canonical (surjective, injective) factorization
/// `f = im_inclusion ∘ iso ∘ coim_projection` with `iso : Coim f → Im f`,
/// `[x] ↦ f(x)`, bijective.
#[derive(Debug, Clone)]
pub struct Factorization {
    pub coim_projection: Morphism,
    pub iso: Morphism,
    pub im_inclusion: Morphism,
}

pub fn factorize(f: &Morphism) -> Result<Factorization> {
    let coim = coimage(f)?;
    let (_, im_inclusion) = image(f)?.embed();
    let iso_map: Vec<Elem> = coim
        .class_members
        .iter()
        .map(|class| {
            im_inclusion
                .map
                .binary_search(&f.map[class[0]])
                .expect("class image lies in the image")
        })
        .collect();
    let iso = Morphism {
        name: format!("d:{}", f.name),
        dom: coim.quotient.clone(),
        cod: im_inclusion.dom.clone(),
        map: iso_map,
    };
    if !iso.is_bijective() {
        return Err(Error::Internal(format!(
            "canonical map Coim -> Im of '{}' is not bijective",
            f.name
        )));
    }
    let composite = compose(&im_inclusion, &compose(&iso, &coim.projection)?)?;
    if composite.map != f.map {
        return Err(Error::Internal(format!(
            "factorization of '{}' does not recompose",
            f.name
        )));
    }
    Ok(Factorization { coim_projection: coim.projection, iso, im_inclusion })
}

/// Every classification flag of a morphism, each computed from its own
/// definition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub injective: bool,
    pub surjective: bool,
    pub k_uniform: bool,
    pub i_uniform: bool,
    pub uniform: bool,
    pub steady: bool,
    pub costeady: bool,
    pub bisteady: bool,
    pub semi_mono: bool,
    pub semi_epi: bool,
    pub semi_iso: bool,
    pub cancellative_morphism: bool,
    pub cs_epi: bool,
}

impl Classification {
    pub fn is_isomorphism(&self) -> bool {
        self.injective && self.surjective
    }
}

pub fn classify(f: &Morphism) -> Result<Classification> {
    let ker = kernel(f)?;
    let im = image(f)?;
    let closure = subtractive_closure(&f.cod, &im.members)?;

    // k-uniform: equal images can always be reconciled by kernel summands
    let k_uniform = (0..f.dom.order).all(|x1| {
        (x1 + 1..f.dom.order).all(|x2| {
            f.map[x1] != f.map[x2]
                || ker.members.iter().any(|&k1| {
                    ker.members
                        .iter()
                        .any(|&k2| f.dom.add(x1, k1) == f.dom.add(x2, k2))
                })
        })
    });
    let i_uniform = closure.members == im.members;
    let semi_mono = ker.members == [0];
    let semi_epi = closure.members.len() == f.cod.order;
    let cancellable = cancellable_elements(&f.cod);
    let cancellative_morphism = im.members.iter().all(|&y| cancellable.contains(y));

    let injective = f.is_injective();
    let surjective = f.is_surjective();
    Ok(Classification {
        injective,
        surjective,
        k_uniform,
        i_uniform,
        uniform: k_uniform && i_uniform,
        steady: k_uniform,
        costeady: i_uniform,
        bisteady: k_uniform && i_uniform,
        semi_mono,
        semi_epi,
        semi_iso: semi_mono && semi_epi,
        cancellative_morphism,
        cs_epi: semi_epi,
    })
}

const BRUTE_FORCE_LIMIT: u128 = 100_000;
const BACKTRACK_NODE_BUDGET: u64 = 50_000_000;

/// All linear maps `M → N` in lexicographic order of their map tables.
/// Uses plain exhaustive search for small spaces and constraint-propagating
/// backtracking (same output order) otherwise.
pub fn hom_enumerate(dom: &Arc<Semimodule>, cod: &Arc<Semimodule>) -> Result<Vec<Morphism>> {
    if dom.semiring != cod.semiring {
        return Err(Error::SemiringMismatch(format!(
            "hom({}, {})",
            dom.name, cod.name
        )));
    }
    let space = (cod.order as u128).checked_pow(dom.order as u32);
    if space.is_some_and(|s| s <= BRUTE_FORCE_LIMIT) {
        return hom_brute_force(dom, cod);
    }
    hom_backtrack(dom, cod)
}

/// Exhaustive scan of all `|N|^|M|` maps; the reference path.
pub fn hom_brute_force(dom: &Arc<Semimodule>, cod: &Arc<Semimodule>) -> Result<Vec<Morphism>> {
    let n = dom.order;
    let mut map = vec![0usize; n];
    let mut out = Vec::new();
    loop {
        if morphism_violations(dom, cod, &map)?.ok() {
            out.push(Morphism {
                name: format!("h{}", out.len()),
                dom: dom.clone(),
                cod: cod.clone(),
                map: map.clone(),
            });
        }
        // odometer increment, most significant digit first for lex order
        let mut i = n;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            map[i] += 1;
            if map[i] < cod.order {
                break;
            }
            map[i] = 0;
        }
    }
}

/// Backtracking enumeration: elements are assigned in carrier order and each
/// linearity constraint is checked as soon as all three participants are
/// assigned, pruning dead prefixes early.
pub fn hom_backtrack(dom: &Arc<Semimodule>, cod: &Arc<Semimodule>) -> Result<Vec<Morphism>> {
    let n = dom.order;
    let mut map = vec![0usize; n];
    let mut out: Vec<Morphism> = Vec::new();
    let mut budget = BACKTRACK_NODE_BUDGET;

    fn consistent_at(dom: &Semimodule, cod: &Semimodule, map: &[Elem], j: usize) -> bool {
        if j == 0 && map[0] != 0 {
            return false;
        }
        for a in 0..=j {
            for b in a..=j {
                let c = dom.add(a, b);
                if c <= j && (a == j || b == j || c == j) && map[c] != cod.add(map[a], map[b]) {
                    return false;
                }
            }
            for s in 0..dom.semiring.order {
                let c = dom.act(a, s);
                if c <= j && (a == j || c == j) && map[c] != cod.act(map[a], s) {
                    return false;
                }
            }
        }
        true
    }

    fn rec(
        dom: &Arc<Semimodule>,
        cod: &Arc<Semimodule>,
        map: &mut Vec<Elem>,
        j: usize,
        out: &mut Vec<Morphism>,
        budget: &mut u64,
    ) -> Result<()> {
        if j == dom.order {
            out.push(Morphism {
                name: format!("h{}", out.len()),
                dom: dom.clone(),
                cod: cod.clone(),
                map: map.clone(),
            });
            return Ok(());
        }
        for v in 0..cod.order {
            if *budget == 0 {
                return Err(Error::BudgetExceeded(format!(
                    "hom({}, {}): backtracking budget exhausted",
                    dom.name, cod.name
                )));
            }
            *budget -= 1;
            map[j] = v;
            if consistent_at(dom, cod, map, j) {
                rec(dom, cod, map, j + 1, out, budget)?;
            }
        }
        map[j] = 0;
        Ok(())
    }

    rec(dom, cod, &mut map, 0, &mut out, &mut budget)?;
    Ok(out)
}

/// Cheap isomorphism invariant: the sorted multiset of self-addition orbit
/// shapes `(index, period)` over all elements.
fn addition_profile(module: &Semimodule) -> Vec<(usize, usize)> {
    let mut profile: Vec<(usize, usize)> = (0..module.order)
        .map(|e| {
            let mut seen = vec![usize::MAX; module.order];
            let mut cur = 0;
            let mut step = 0;
            loop {
                if seen[cur] != usize::MAX {
                    return (seen[cur], step - seen[cur]);
                }
                seen[cur] = step;
                cur = module.add(cur, e);
                step += 1;
            }
        })
        .collect();
    profile.sort_unstable();
    profile
}

/// Searches for a bijective linear map `M → N`. The inverse of a bijective
/// morphism is automatically linear, so a witness is a genuine isomorphism.
/// Screens by order, cancellable-element count and addition profile before
/// backtracking over bijections that fix 0.
pub fn is_isomorphic(a: &Arc<Semimodule>, b: &Arc<Semimodule>) -> Result<Option<Morphism>> {
    if a.semiring != b.semiring {
        return Err(Error::SemiringMismatch(format!(
            "is_isomorphic({}, {})",
            a.name, b.name
        )));
    }
    if a.order != b.order
        || cancellable_elements(a).members.len() != cancellable_elements(b).members.len()
        || addition_profile(a) != addition_profile(b)
    {
        return Ok(None);
    }
    let n = a.order;
    let mut map = vec![0usize; n];
    let mut used = vec![false; n];

    fn consistent_at(dom: &Semimodule, cod: &Semimodule, map: &[Elem], j: usize) -> bool {
        if j == 0 {
            return map[0] == 0;
        }
        for x in 0..=j {
            let s = dom.add(x, j);
            if s <= j && map[s] != cod.add(map[x], map[j]) {
                return false;
            }
            let s = dom.add(j, x);
            if s <= j && map[s] != cod.add(map[j], map[x]) {
                return false;
            }
        }
        for (x, sc) in [(j, 0)].into_iter().chain((0..=j).flat_map(|x| {
            (0..dom.semiring.order).map(move |s| (x, s))
        })) {
            let t = dom.act(x, sc);
            if t <= j && (x == j || t == j) && map[t] != cod.act(map[x], sc) {
                return false;
            }
        }
        true
    }

    fn rec(
        dom: &Arc<Semimodule>,
        cod: &Arc<Semimodule>,
        map: &mut Vec<Elem>,
        used: &mut Vec<bool>,
        j: usize,
    ) -> Option<Vec<Elem>> {
        if j == dom.order {
            return Some(map.clone());
        }
        for v in 0..cod.order {
            if used[v] {
                continue;
            }
            map[j] = v;
            if consistent_at(dom, cod, map, j) {
                used[v] = true;
                if let Some(found) = rec(dom, cod, map, used, j + 1) {
                    return Some(found);
                }
                used[v] = false;
            }
        }
        None
    }

    Ok(rec(a, b, &mut map, &mut used, 0).map(|map| Morphism {
        name: format!("iso:{}->{}", a.name, b.name),
        dom: a.clone(),
        cod: b.clone(),
        map,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{builtin_semiring, cyclic_nat, SemiringFamily};
    use crate::builtins::{cyclic_group, saturation_map, trunc_monoid};

    fn nat2() -> Arc<crate::algebra::Semiring> {
        builtin_semiring(SemiringFamily::TruncNat, 2).unwrap()
    }

    fn z4ring() -> Arc<crate::algebra::Semiring> {
        builtin_semiring(SemiringFamily::Zmod, 4).unwrap()
    }

    #[test]
    fn validation_examples() {
        let t2 = trunc_monoid(2, nat2()).unwrap();
        assert!(validate_morphism("id", t2.clone(), t2.clone(), vec![0, 1, 2]).is_ok());
        assert!(saturation_map(nat2()).is_ok());
        // swapping 1 and 2 breaks additivity at (1,1)
        let report = morphism_violations(&t2, &t2, &[0, 2, 1]).unwrap();
        assert!(report
            .violations
            .iter()
            .any(|v| v.axiom.starts_with("additive") && v.witness == vec![1, 1]));
    }

    #[test]
    fn kernel_cokernel_image_coimage() {
        let f = saturation_map(nat2()).unwrap();
        assert_eq!(kernel(&f).unwrap().members, vec![0]);
        assert_eq!(image(&f).unwrap().members, vec![0, 1]);
        let coim = coimage(&f).unwrap();
        assert_eq!(coim.class_members, vec![vec![0], vec![1, 2]]);

        let z4 = cyclic_group(4, z4ring()).unwrap();
        let sub = Subsemimodule::new(z4.clone(), vec![0, 2]).unwrap();
        let (obj, incl) = sub.embed();
        assert_eq!(obj.order, 2);
        let coker = cokernel(&incl).unwrap();
        assert_eq!(coker.quotient.order, 2);
        assert_eq!(coker.quotient.add, vec![vec![0, 1], vec![1, 0]]); // Z_2

        let zero = zero_morphism(&z4, &z4).unwrap();
        assert_eq!(kernel(&zero).unwrap().members, vec![0, 1, 2, 3]);
        assert_eq!(cokernel(&zero).unwrap().quotient.order, 4);
        assert_eq!(cokernel(&identity(&z4)).unwrap().quotient.order, 1);
    }

    #[test]
    fn factorization_recomposes() {
        for f in [
            saturation_map(nat2()).unwrap(),
            identity(&trunc_monoid(2, nat2()).unwrap()),
            zero_morphism(
                &trunc_monoid(2, nat2()).unwrap(),
                &trunc_monoid(1, nat2()).unwrap(),
            )
            .unwrap(),
        ] {
            let fac = factorize(&f).unwrap();
            assert!(fac.coim_projection.is_surjective());
            assert!(fac.iso.is_bijective());
            assert!(fac.im_inclusion.is_injective());
        }
        let f = saturation_map(nat2()).unwrap();
        let fac = factorize(&f).unwrap();
        assert_eq!(fac.iso.map, vec![0, 1]);
    }

    #[test]
    fn classify_f_sat() {
        let c = classify(&saturation_map(nat2()).unwrap()).unwrap();
        assert!(!c.injective);
        assert!(c.semi_mono);
        assert!(!c.k_uniform); // f(1) = f(2) with trivial kernel
        assert!(!c.steady);
        assert!(c.surjective);
        assert!(c.i_uniform);
        assert!(c.costeady);
        assert!(c.cs_epi);
        assert!(!c.uniform);
        assert!(!c.cancellative_morphism); // 1 is not cancellable in T_1
    }

    #[test]
    fn classify_subgroup_inclusion() {
        let z4 = cyclic_group(4, z4ring()).unwrap();
        let sub = Subsemimodule::new(z4, vec![0, 2]).unwrap();
        let (_, incl) = sub.embed();
        let c = classify(&incl).unwrap();
        assert!(c.injective && c.k_uniform && c.i_uniform && c.uniform);
        assert!(!c.surjective && !c.semi_epi); // closure of {0,2} in Z_4 is {0,2}
        assert!(c.cancellative_morphism);
    }

    #[test]
    fn classify_identity_all_true() {
        let t2 = trunc_monoid(2, nat2()).unwrap();
        let c = classify(&identity(&t2)).unwrap();
        assert!(c.injective && c.surjective && c.uniform && c.semi_iso && c.bisteady && c.cs_epi);
    }

    #[test]
    fn hom_counts() {
        let z4 = cyclic_group(4, z4ring()).unwrap();
        let z2 = cyclic_group(2, z4ring()).unwrap();
        assert_eq!(hom_enumerate(&z2, &z4).unwrap().len(), 2); // 1 ↦ 0 or 2

        let s = cyclic_nat(1, 2).unwrap();
        let z2 = cyclic_group(2, s.clone()).unwrap();
        let t1 = trunc_monoid(1, s.clone()).unwrap();
        assert_eq!(hom_enumerate(&z2, &t1).unwrap().len(), 1); // zero map only
        assert_eq!(hom_enumerate(&t1, &t1).unwrap().len(), 2);
    }

    #[test]
    fn hom_paths_agree() {
        let s = cyclic_nat(3, 4).unwrap();
        let z4 = cyclic_group(4, s.clone()).unwrap();
        let t3 = trunc_monoid(3, s).unwrap();
        for (a, b) in [(&z4, &t3), (&t3, &z4), (&t3, &t3), (&z4, &z4)] {
            let brute: Vec<Vec<Elem>> =
                hom_brute_force(a, b).unwrap().into_iter().map(|m| m.map).collect();
            let back: Vec<Vec<Elem>> =
                hom_backtrack(a, b).unwrap().into_iter().map(|m| m.map).collect();
            assert_eq!(brute, back);
        }
    }

    #[test]
    fn isomorphism_search() {
        let z4 = cyclic_group(4, z4ring()).unwrap();
        assert!(is_isomorphic(&z4, &z4).unwrap().is_some());

        let s = cyclic_nat(3, 4).unwrap();
        let z4 = cyclic_group(4, s.clone()).unwrap();
        let t3 = trunc_monoid(3, s).unwrap();
        assert!(is_isomorphic(&z4, &t3).unwrap().is_none());

        // Z_4 / {0,2} ≅ Z_2
        let z4 = cyclic_group(4, z4ring()).unwrap();
        let sub = Subsemimodule::new(z4, vec![0, 2]).unwrap();
        let q = quotient_by_sub(&sub).unwrap();
        let z2 = cyclic_group(2, z4ring()).unwrap();
        let w = is_isomorphic(&q.quotient, &z2).unwrap().unwrap();
        assert!(w.is_bijective());
    }

    #[test]
    fn compose_respects_identity_and_zero() {
        let f = saturation_map(nat2()).unwrap();
        assert_eq!(compose(&identity(&f.cod), &f).unwrap(), f);
        assert_eq!(compose(&f, &identity(&f.dom)).unwrap(), f);
        let z = zero_morphism(&f.cod, &f.cod).unwrap();
        assert!(compose(&z, &f).unwrap().is_zero());
        assert!(compose(&f, &identity(&f.cod)).is_err() || f.dom == f.cod);
    }
}
