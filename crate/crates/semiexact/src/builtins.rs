//! Canonical small semimodules used across the test suites and the CLI:
//! the Boolean monoid `B`, saturating monoids `T_k`, cyclic groups `Z_n`,
//! and the saturation map `f_sat : T_2 → T_1`.

use std::sync::Arc;

use crate::algebra::{natural_action, Elem, Semimodule, Semiring};
use crate::error::{Error, Result};
use crate::morphism::{validate_morphism, Morphism};

/// Wraps a commutative monoid addition table as a semimodule over a semiring
/// that is additively generated by 1, using the repeated-addition action.
pub fn monoid_semimodule(
    name: impl Into<String>,
    add: Vec<Vec<Elem>>,
    semiring: Arc<Semiring>,
) -> Result<Arc<Semimodule>> {
    let name = name.into();
    let act = natural_action(&add, &semiring).ok_or_else(|| {
        Error::SemiringMismatch(format!(
            "'{name}' is not a semimodule over '{}' via repeated addition",
            semiring.name
        ))
    })?;
    Ok(Arc::new(Semimodule { name, order: add.len(), add, act, semiring }))
}

/// The cyclic group `Z_n` with addition mod `n`.
pub fn cyclic_group(n: usize, semiring: Arc<Semiring>) -> Result<Arc<Semimodule>> {
    if n == 0 {
        return Err(Error::OutOfRange("cyclic_group(0)".into()));
    }
    let add = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
    monoid_semimodule(format!("Z_{n}"), add, semiring)
}

/// The saturating monoid `T_k = ({0..k}, min(a+b, k))`.
pub fn trunc_monoid(k: usize, semiring: Arc<Semiring>) -> Result<Arc<Semimodule>> {
    let n = k + 1;
    let add = (0..n).map(|a| (0..n).map(|b| (a + b).min(k)).collect()).collect();
    monoid_semimodule(format!("T_{k}"), add, semiring)
}

/// The Boolean monoid `B = ({0,1}, 1+1=1)`, i.e. `T_1`.
pub fn boolean_monoid(semiring: Arc<Semiring>) -> Result<Arc<Semimodule>> {
    let m = trunc_monoid(1, semiring)?;
    Ok(Arc::new(Semimodule { name: "B".into(), ..(*m).clone() }))
}

/// `f_sat : T_2 → T_1, x ↦ min(x, 1)` — the pinned regression witness for a
/// semi-monomorphism that is not injective.
pub fn saturation_map(semiring: Arc<Semiring>) -> Result<Morphism> {
    let t2 = trunc_monoid(2, semiring.clone())?;
    let t1 = trunc_monoid(1, semiring)?;
    validate_morphism("f_sat", t2, t1, vec![0, 1, 1])
}
