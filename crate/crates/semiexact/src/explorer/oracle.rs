//! Brute-force exactness oracle, written straight from the definitions with
//! raw set comprehensions over the multiplication tables. It shares no code
//! with [`crate::exactness`] so the two can be compared differentially.

use crate::algebra::Elem;
use crate::error::{Error, Result};
use crate::exactness::{JunctionVerdict, JunctionWitness};
use crate::morphism::Morphism;

fn sorted_unique(mut v: Vec<Elem>) -> Vec<Elem> {
    v.sort_unstable();
    v.dedup();
    v
}

/// `{s | s + x₁ = x₂ for some x₁, x₂ ∈ xs}`, by exhaustive scan.
fn closure_raw(add: &[Vec<Elem>], order: usize, xs: &[Elem]) -> Vec<Elem> {
    (0..order)
        .filter(|&s| xs.iter().any(|&x1| xs.contains(&add[s][x1])))
        .collect()
}

/// k-uniformity of `g` from the definition: every pair with equal images is
/// reconciled by kernel summands. Returns the least refuting pair.
fn k_uniform_raw(g: &Morphism, ker: &[Elem]) -> Option<(Elem, Elem)> {
    let add = &g.dom.add;
    for x1 in 0..g.dom.order {
        for x2 in (x1 + 1)..g.dom.order {
            if g.map[x1] != g.map[x2] {
                continue;
            }
            let reconciled = ker
                .iter()
                .any(|&k1| ker.iter().any(|&k2| add[x1][k1] == add[x2][k2]));
            if !reconciled {
                return Some((x1, x2));
            }
        }
    }
    None
}

fn i_uniform_raw(f: &Morphism) -> bool {
    let im = sorted_unique(f.map.clone());
    let closed = closure_raw(&f.cod.add, f.cod.order, &im);
    closed == im
}

/// Independent recomputation of [`crate::exactness::junction_verdict`].
/// Every flag and the witness are rebuilt from scratch; the only shared
/// types are the verdict structs themselves.
pub fn oracle_exactness(f: &Morphism, g: &Morphism) -> Result<JunctionVerdict> {
    if f.cod != g.dom {
        return Err(Error::ObjectMismatch(format!(
            "oracle junction ({}, {}) not composable",
            f.name, g.name
        )));
    }
    let im = sorted_unique(f.map.clone());
    let ker: Vec<Elem> = (0..g.dom.order).filter(|&m| g.map[m] == 0).collect();
    let im_closure = closure_raw(&f.cod.add, f.cod.order, &im);

    let chain = im.iter().all(|&m| g.map[m] == 0);
    let proper_exact = im == ker;
    let semi_exact = im_closure == ker;
    let g_witness = k_uniform_raw(g, &ker);
    let g_k_uniform = g_witness.is_none();

    let f_ker: Vec<Elem> = (0..f.dom.order).filter(|&l| f.map[l] == 0).collect();
    let f_k_uniform = k_uniform_raw(f, &f_ker).is_none();
    let f_i_uniform = i_uniform_raw(f);
    let g_i_uniform = i_uniform_raw(g);

    let witness = if !chain {
        let l = (0..f.dom.order).find(|&l| g.map[f.map[l]] != 0).unwrap();
        Some(JunctionWitness { tier: "chain", elements: vec![l, f.map[l], g.map[f.map[l]]] })
    } else if !semi_exact {
        let m = (0..g.dom.order)
            .find(|&m| im_closure.contains(&m) != ker.contains(&m))
            .unwrap();
        Some(JunctionWitness { tier: "semi_exact", elements: vec![m] })
    } else if !proper_exact {
        let m = (0..g.dom.order)
            .find(|&m| im.contains(&m) != ker.contains(&m))
            .unwrap();
        Some(JunctionWitness { tier: "proper_exact", elements: vec![m] })
    } else if let Some((x1, x2)) = g_witness {
        Some(JunctionWitness { tier: "g_k_uniform", elements: vec![x1, x2] })
    } else {
        None
    };

    Ok(JunctionVerdict {
        chain,
        proper_exact,
        semi_exact,
        quasi_exact: semi_exact && g_k_uniform,
        exact: proper_exact && g_k_uniform,
        k_uniform_junction: f_k_uniform && g_k_uniform,
        i_uniform_junction: f_i_uniform && g_i_uniform,
        uniform_junction: f_k_uniform && f_i_uniform && g_k_uniform && g_i_uniform,
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{builtin_semiring, SemiringFamily};
    use crate::builtins::{cyclic_group, saturation_map, trunc_monoid};
    use crate::exactness::junction_verdict;
    use crate::morphism::validate_morphism;
    use crate::substructure::{quotient_by_sub, Subsemimodule};

    #[test]
    fn oracle_matches_on_group_junction() {
        let ring = builtin_semiring(SemiringFamily::Zmod, 4).unwrap();
        let z2 = cyclic_group(2, ring.clone()).unwrap();
        let z4 = cyclic_group(4, ring).unwrap();
        let f = validate_morphism("f", z2.clone(), z4.clone(), vec![0, 2]).unwrap();
        let g = validate_morphism("g", z4, z2, vec![0, 1, 0, 1]).unwrap();
        assert_eq!(oracle_exactness(&f, &g).unwrap(), junction_verdict(&f, &g).unwrap());
    }

    #[test]
    fn oracle_matches_on_semi_only_junction() {
        let nat = builtin_semiring(SemiringFamily::TruncNat, 4).unwrap();
        let t2 = trunc_monoid(2, nat.clone()).unwrap();
        let l = Subsemimodule::new(t2.clone(), vec![0, 2]).unwrap();
        let (_l_obj, incl) = l.embed();
        let q = quotient_by_sub(&l).unwrap();
        let oracle = oracle_exactness(&incl, &q.projection).unwrap();
        let real = junction_verdict(&incl, &q.projection).unwrap();
        assert_eq!(oracle, real);
        assert!(!oracle.proper_exact);
        // f_sat junction shapes too
        let fsat = saturation_map(nat.clone()).unwrap();
        let t1 = trunc_monoid(1, nat).unwrap();
        let z = crate::morphism::zero_morphism(&t1, &t1).unwrap();
        assert_eq!(
            oracle_exactness(&fsat, &z).unwrap(),
            junction_verdict(&fsat, &z).unwrap()
        );
    }
}
