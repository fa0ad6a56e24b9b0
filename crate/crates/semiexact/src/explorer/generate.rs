//! Seeded random generation of semimodules, morphisms and
//! hypothesis-satisfying lemma diagrams, plus the deterministic fuzz harness.
//!
//! Determinism contract: each trial derives its own RNG from the master seed
//! and the trial index alone, so a run with the same seed produces the exact
//! same trial stream no matter how many worker threads execute it.

use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, Mutex};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{builtin_semiring, cancellable_elements, cyclic_nat, direct_sum, Elem,
    Semimodule, Semiring, SemiringFamily, zero_module};
use crate::builtins::monoid_semimodule;
use crate::diagram::{lemma_verify, induced_cokernel_map, induced_kernel_map, Diagram, LemmaId,
    ALL_LEMMAS};
use crate::error::{Error, Result};
use crate::explorer::enumerate::enumerate_commutative_monoids;
use crate::morphism::{classify, cokernel, compose, hom_enumerate, image, kernel,
    validate_morphism, zero_morphism, Morphism};
use crate::substructure::{all_subsemimodules, is_subtractive, quotient_by_sub, Subsemimodule};

/// splitmix64 finalizer over `master` and the trial index; the per-trial
/// seeds are decorrelated even for adjacent indices.
pub fn mix_seed(master: u64, index: u64) -> u64 {
    let mut z = master
        .wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Indexed candidate objects over one semiring: every commutative monoid of
/// order ≤ 4 that the semiring acts on through repeated addition, plus
/// pairwise direct sums up to `max_order`. Selection by index keeps the
/// generators rejection-free.
#[derive(Debug, Clone)]
pub struct CandidatePool {
    pub semiring: Arc<Semiring>,
    pub objects: Vec<Arc<Semimodule>>,
    // enumerating Hom(M, N) dominates generation; memoized per object pair
    hom_cache: Arc<Mutex<HashMap<(usize, usize), Arc<Vec<Morphism>>>>>,
}

impl CandidatePool {
    fn hom_set(&self, i: usize, j: usize) -> Result<Arc<Vec<Morphism>>> {
        if let Some(h) = self.hom_cache.lock().unwrap().get(&(i, j)) {
            return Ok(h.clone());
        }
        let homs = Arc::new(hom_enumerate(&self.objects[i], &self.objects[j])?);
        self.hom_cache.lock().unwrap().insert((i, j), homs.clone());
        Ok(homs)
    }
}

pub fn build_pool(semiring: &Arc<Semiring>, max_order: usize) -> Result<CandidatePool> {
    if max_order == 0 || max_order > 16 {
        return Err(Error::OrderBound(format!(
            "candidate pool supports max orders 1..=16, got {max_order}"
        )));
    }
    let mut objects: Vec<Arc<Semimodule>> = Vec::new();
    let mut seen: BTreeSet<(Vec<Vec<Elem>>, Vec<Vec<Elem>>)> = BTreeSet::new();
    for n in 1..=max_order.min(4) {
        for (k, add) in enumerate_commutative_monoids(n)?.into_iter().enumerate() {
            // skip monoids the semiring cannot act on
            if let Ok(m) = monoid_semimodule(format!("m{n}_{k}"), add, semiring.clone()) {
                if seen.insert((m.add.clone(), m.act.clone())) {
                    objects.push(m);
                }
            }
        }
    }
    let base = objects.clone();
    for a in &base {
        for b in &base {
            let order = a.order * b.order;
            if order > 1 && order <= max_order {
                let s = direct_sum(a, b)?;
                if seen.insert((s.add.clone(), s.act.clone())) {
                    objects.push(s);
                }
            }
        }
    }
    Ok(CandidatePool {
        semiring: semiring.clone(),
        objects,
        hom_cache: Arc::new(Mutex::new(HashMap::new())),
    })
}

/// Uniform choice from the indexed candidate pool of the semiring.
pub fn random_semimodule(
    semiring: &Arc<Semiring>,
    max_order: usize,
    seed: u64,
) -> Result<Arc<Semimodule>> {
    let pool = build_pool(semiring, max_order)?;
    if pool.objects.is_empty() {
        return Err(Error::EmptySet(format!(
            "no candidate semimodules over '{}' up to order {max_order}",
            semiring.name
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(pool.objects[rng.gen_range(0..pool.objects.len())].clone())
}

/// Uniform choice from the full (enumerated) hom set; `None` only when
/// `nonzero` is requested and the zero map is the whole hom set.
pub fn random_morphism(
    dom: &Arc<Semimodule>,
    cod: &Arc<Semimodule>,
    seed: u64,
    nonzero: bool,
) -> Result<Option<Morphism>> {
    let mut homs = hom_enumerate(dom, cod)?;
    if nonzero {
        homs.retain(|h| !h.is_zero());
    }
    if homs.is_empty() {
        return Ok(None);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(Some(homs.swap_remove(rng.gen_range(0..homs.len()))))
}

fn pick<'a, T>(rng: &mut ChaCha8Rng, items: &'a [T]) -> Option<&'a T> {
    if items.is_empty() {
        None
    } else {
        Some(&items[rng.gen_range(0..items.len())])
    }
}

fn subtractive_subs(m: &Arc<Semimodule>) -> Result<Vec<Subsemimodule>> {
    Ok(all_subsemimodules(m)?.into_iter().filter(is_subtractive).collect())
}

fn is_injective_map(map: &[Elem]) -> bool {
    let mut seen = vec![false; map.len().max(map.iter().copied().max().unwrap_or(0) + 1)];
    map.iter().all(|&v| !std::mem::replace(&mut seen[v], true))
}

fn is_surjective_map(map: &[Elem], cod_order: usize) -> bool {
    let mut seen = vec![false; cod_order];
    for &v in map {
        seen[v] = true;
    }
    seen.into_iter().all(|b| b)
}

/// 2×3 ladder: each row is `L ↪ M ↠ M/L` for a subtractive `L`, the middle
/// vertical is a random hom carrying `L₁` into `L₂`, and the outer verticals
/// are its restriction and the induced quotient map. Squares commute by
/// construction; row exactness comes from subtractivity. Candidate middle
/// maps are pre-filtered by the cheap part of the lemma's hypotheses so that
/// the hit rate stays usable.
fn ladder_2x3(
    pool: &CandidatePool,
    rng: &mut ChaCha8Rng,
    lemma: LemmaId,
) -> Result<Option<Diagram>> {
    if pool.objects.is_empty() {
        return Err(Error::EmptySet("pool".into()));
    }
    let i1 = rng.gen_range(0..pool.objects.len());
    // SHORT5 filters down to iso outer verticals; reusing the row keeps the
    // identity in the candidate set so the hit rate stays usable
    let i2 = if lemma == LemmaId::Short5 { i1 } else { rng.gen_range(0..pool.objects.len()) };
    let m1 = pool.objects[i1].clone();
    let m2 = pool.objects[i2].clone();
    if lemma == LemmaId::Short5 && !m1.is_cancellative() {
        return Ok(None);
    }
    let subs1 = subtractive_subs(&m1)?;
    let l1 = match pick(rng, &subs1) {
        Some(l) => l.clone(),
        None => return Ok(None),
    };
    let l2 = if lemma == LemmaId::Short5 {
        l1.clone()
    } else {
        let subs2 = subtractive_subs(&m2)?;
        match pick(rng, &subs2) {
            Some(l) => l.clone(),
            None => return Ok(None),
        }
    };
    let q1 = quotient_by_sub(&l1)?;
    let q2 = quotient_by_sub(&l2)?;

    let restriction = |h: &Morphism| -> Vec<Elem> {
        l1.members
            .iter()
            .map(|&x| l2.members.binary_search(&h.map[x]).expect("carries L₁ into L₂"))
            .collect()
    };
    let quotient_map = |h: &Morphism| -> Vec<Elem> {
        q1.class_members
            .iter()
            .map(|class| q2.projection.map[h.map[class[0]]])
            .collect()
    };

    let homs = pool.hom_set(i1, i2)?;
    let carrying: Vec<&Morphism> = homs
        .iter()
        .filter(|h| l1.members.iter().all(|&x| l2.contains(h.map[x])))
        .filter(|h| {
            let r = restriction(h);
            let q = quotient_map(h);
            match lemma {
                // base: α₁ surjective, α₃ injective
                LemmaId::Short3 => {
                    is_surjective_map(&r, l2.members.len()) && is_injective_map(&q)
                }
                // base includes α₁, α₃ isomorphisms
                LemmaId::Short5 => {
                    is_injective_map(&r)
                        && is_surjective_map(&r, l2.members.len())
                        && is_injective_map(&q)
                        && is_surjective_map(&q, q2.quotient.order)
                }
                // some part premise must trigger
                LemmaId::Diag1 => {
                    (is_surjective_map(&r, l2.members.len()) && is_injective_map(&h.map))
                        || (q.iter().enumerate().all(|(i, &v)| v != 0 || i == 0)
                            && is_surjective_map(&h.map, m2.order))
                }
                LemmaId::Diag2 => {
                    let r_ker_trivial = r.iter().enumerate().all(|(i, &v)| v != 0 || i == 0);
                    let q_ker_trivial = q.iter().enumerate().all(|(i, &v)| v != 0 || i == 0);
                    (r_ker_trivial && q_ker_trivial)
                        || (is_surjective_map(&r, l2.members.len())
                            && is_surjective_map(&q, q2.quotient.order))
                }
                _ => true,
            }
        })
        .collect();
    let a2 = match pick(rng, &carrying) {
        Some(h) => (*h).clone(),
        None => return Ok(None),
    };

    let (l1_obj, incl1) = l1.embed();
    let (l2_obj, incl2) = l2.embed();
    let a1 = validate_morphism("a1", l1_obj.clone(), l2_obj.clone(), restriction(&a2))?;
    let a3 = validate_morphism("a3", q1.quotient.clone(), q2.quotient.clone(), quotient_map(&a2))?;

    let d = Diagram::new(
        vec![
            vec![l1_obj, m1, q1.quotient.clone()],
            vec![l2_obj, m2, q2.quotient.clone()],
        ],
        vec![vec![incl1, q1.projection], vec![incl2, q2.projection]],
        vec![vec![a1, a2, a3]],
    )?;
    Ok(Some(d))
}

/// 2×5 ladder: each row is the kernel–cokernel sequence
/// `0 → Ker γ → X → Y → Coker γ` of a uniform `γ : X → Y`, with verticals
/// induced by a commuting pair of endomaps of `X` and `Y`.
fn ladder_2x5(
    pool: &CandidatePool,
    rng: &mut ChaCha8Rng,
    lemma: LemmaId,
) -> Result<Option<Diagram>> {
    if pool.objects.is_empty() {
        return Err(Error::EmptySet("pool".into()));
    }
    let ix = rng.gen_range(0..pool.objects.len());
    let iy = rng.gen_range(0..pool.objects.len());
    let x = pool.objects[ix].clone();
    let y = pool.objects[iy].clone();
    let homs = pool.hom_set(ix, iy)?;
    // bounded probing instead of classifying the whole hom set
    let probe_uniform = |rng: &mut ChaCha8Rng| -> Result<Option<Morphism>> {
        for _ in 0..24 {
            let h = &homs[rng.gen_range(0..homs.len())];
            if classify(h)?.uniform {
                return Ok(Some(h.clone()));
            }
        }
        Ok(None)
    };
    let g1 = match probe_uniform(rng)? {
        Some(g) => g,
        None => return Ok(None),
    };
    let g2 = match probe_uniform(rng)? {
        Some(g) => g,
        None => return Ok(None),
    };
    let ends_x = pool.hom_set(ix, ix)?;
    let bx = if lemma == LemmaId::Five {
        // FIVE needs the middle vertical cancellative; prefer such a draw
        let cancellable = cancellable_elements(&x);
        let mut chosen = None;
        for _ in 0..24 {
            let h = &ends_x[rng.gen_range(0..ends_x.len())];
            if h.map.iter().all(|&v| cancellable.contains(v)) {
                chosen = Some(h.clone());
                break;
            }
        }
        match chosen {
            Some(h) => h,
            None => return Ok(None),
        }
    } else {
        pick(rng, &ends_x).unwrap().clone()
    };
    let target = compose(&g2, &bx)?;
    let ends_y = pool.hom_set(iy, iy)?;
    let commuting: Vec<&Morphism> = ends_y
        .iter()
        .filter(|by| compose(by, &g1).map(|h| h.map == target.map).unwrap_or(false))
        .collect();
    let by = match pick(rng, &commuting) {
        Some(b) => (*b).clone(),
        None => return Ok(None),
    };

    let z = zero_module(pool.semiring.clone());
    let k1 = kernel(&g1)?;
    let (k1_obj, incl_k1) = k1.embed();
    let k2 = kernel(&g2)?;
    let (k2_obj, incl_k2) = k2.embed();
    let c1 = cokernel(&g1)?;
    let c2 = cokernel(&g2)?;

    let v_k = induced_kernel_map(&bx, &g1, &g2)?;
    let v_c = induced_cokernel_map(&by, &g1, &g2)?;

    let d = Diagram::new(
        vec![
            vec![z.clone(), k1_obj, x.clone(), y.clone(), c1.quotient.clone()],
            vec![z.clone(), k2_obj, x, y, c2.quotient.clone()],
        ],
        vec![
            vec![zero_morphism(&z, &v_k.dom)?, incl_k1, g1, c1.projection],
            vec![zero_morphism(&z, &v_k.cod)?, incl_k2, g2, c2.projection],
        ],
        vec![vec![zero_morphism(&z, &z)?, v_k, bx, by, v_c]],
    )?;
    Ok(Some(d))
}

/// 3×3 grid built from one object `M` and two of its subtractive
/// subsemimodules: the middle row is `L ↪ M ↠ M/L`, the middle column is
/// `W ↪ M ↠ M/W`, the first row is the intersection/image row inside `W`,
/// and the last row is the cokernels of the columns. Columns 1 and 2 and
/// row 2 are short exact by construction; column 3 is filtered by the
/// lemma's own hypothesis check.
fn grid_3x3(pool: &CandidatePool, rng: &mut ChaCha8Rng) -> Result<Option<Diagram>> {
    let m = pick(rng, &pool.objects).ok_or_else(|| Error::EmptySet("pool".into()))?.clone();
    let subs = subtractive_subs(&m)?;
    let l = match pick(rng, &subs) {
        Some(l) => l.clone(),
        None => return Ok(None),
    };
    let w = pick(rng, &subs).unwrap().clone();

    let (w_obj, a2) = w.embed();
    let (l2_obj, f2) = l.embed();
    let q_l = quotient_by_sub(&l)?;
    let g2 = q_l.projection.clone();

    // first row: (L ∩ W) ↪ W ↠ image of W in M/L
    let inter: Vec<Elem> = w
        .members
        .iter()
        .enumerate()
        .filter(|(_, &x)| l.contains(x))
        .map(|(pos, _)| pos)
        .collect();
    let l1 = Subsemimodule::new(w_obj.clone(), inter)?;
    let (l1_obj, f1) = l1.embed();
    let a1_map: Vec<Elem> = l1
        .members
        .iter()
        .map(|&pos| l.members.binary_search(&w.members[pos]).expect("L₁ ⊆ L"))
        .collect();
    let a1 = validate_morphism("a1", l1_obj.clone(), l2_obj.clone(), a1_map)?;

    let g_through = compose(&g2, &a2)?;
    let n1 = image(&g_through)?;
    let (n1_obj, a3) = n1.embed();
    let g1_map: Vec<Elem> = g_through
        .map
        .iter()
        .map(|&v| n1.members.binary_search(&v).expect("image members"))
        .collect();
    let g1 = validate_morphism("g1", w_obj.clone(), n1_obj.clone(), g1_map)?;

    // last row: cokernels of the three columns with the induced maps
    let f3 = induced_cokernel_map(&f2, &a1, &a2)?;
    let g3 = induced_cokernel_map(&g2, &a2, &a3)?;
    let b1 = cokernel(&a1)?.projection;
    let b2 = cokernel(&a2)?.projection;
    let b3 = cokernel(&a3)?.projection;

    let d = Diagram::new(
        vec![
            vec![l1_obj, w_obj, n1_obj],
            vec![l2_obj, m, q_l.quotient.clone()],
            vec![f3.dom.clone(), f3.cod.clone(), g3.cod.clone()],
        ],
        vec![vec![f1, g1], vec![f2, g2], vec![f3, g3]],
        vec![vec![a1, a2, a3], vec![b1, b2, b3]],
    )?;
    Ok(Some(d))
}

/// One constructive attempt at a diagram satisfying the lemma's hypotheses;
/// `None` when this trial's random choices land outside them (the caller
/// counts attempts, there is no rejection loop here).
pub fn generate_lemma_instance(
    lemma: LemmaId,
    pool: &CandidatePool,
    rng: &mut ChaCha8Rng,
) -> Result<Option<Diagram>> {
    let candidate = match lemma.shape() {
        (2, 3) => ladder_2x3(pool, rng, lemma)?,
        (2, 5) => ladder_2x5(pool, rng, lemma)?,
        (3, 3) => grid_3x3(pool, rng)?,
        shape => return Err(Error::ShapeMismatch(format!("unsupported lemma shape {shape:?}"))),
    };
    let d = match candidate {
        Some(d) => d,
        None => return Ok(None),
    };
    if lemma_verify(lemma, &d)?.hypotheses_satisfied {
        Ok(Some(d))
    } else {
        Ok(None)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FuzzConfig {
    pub seed: u64,
    pub trials: u64,
    pub max_order: usize,
    /// fuzz only this lemma; otherwise each trial draws one
    pub lemma: Option<LemmaId>,
    pub workers: usize,
}

/// Full dump of a refuting diagram, enough to rebuild and re-check it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiagramDump {
    pub semiring: String,
    pub objects: Vec<Vec<ObjectDump>>,
    pub horiz: Vec<Vec<Vec<Elem>>>,
    pub vert: Vec<Vec<Vec<Elem>>>,
    pub counterexample: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ObjectDump {
    pub name: String,
    pub order: usize,
    pub add: Vec<Vec<Elem>>,
    pub act: Vec<Vec<Elem>>,
}

fn dump_diagram(d: &Diagram, counterexample: Option<String>) -> DiagramDump {
    DiagramDump {
        semiring: d.objects[0][0].semiring.name.clone(),
        objects: d
            .objects
            .iter()
            .map(|row| {
                row.iter()
                    .map(|o| ObjectDump {
                        name: o.name.clone(),
                        order: o.order,
                        add: o.add.clone(),
                        act: o.act.clone(),
                    })
                    .collect()
            })
            .collect(),
        horiz: d.horiz.iter().map(|r| r.iter().map(|f| f.map.clone()).collect()).collect(),
        vert: d.vert.iter().map(|r| r.iter().map(|f| f.map.clone()).collect()).collect(),
        counterexample,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrialOutcome {
    pub index: u64,
    pub lemma: String,
    pub semiring: String,
    /// "verified" | "refuted" | "no_instance"
    pub status: String,
    pub refutation: Option<DiagramDump>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FuzzReport {
    pub seed: u64,
    pub trials: u64,
    pub max_order: usize,
    pub lemma: Option<String>,
    pub verified: u64,
    pub refuted: u64,
    pub no_instance: u64,
    pub outcomes: Vec<TrialOutcome>,
}

/// The fixed semiring rotation for fuzzing: two rings, the Boolean semiring
/// and two quotients of ℕ₀ (all non-rings but the first two).
fn fuzz_semirings() -> Result<Vec<Arc<Semiring>>> {
    Ok(vec![
        builtin_semiring(SemiringFamily::Zmod, 4)?,
        builtin_semiring(SemiringFamily::Zmod, 6)?,
        builtin_semiring(SemiringFamily::Boolean, 0)?,
        builtin_semiring(SemiringFamily::TruncNat, 3)?,
        cyclic_nat(2, 2)?,
    ])
}

fn run_trial(
    index: u64,
    config: &FuzzConfig,
    pools: &[CandidatePool],
) -> Result<TrialOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(config.seed, index));
    let pool = &pools[rng.gen_range(0..pools.len())];
    let lemma = config
        .lemma
        .unwrap_or_else(|| ALL_LEMMAS[rng.gen_range(0..ALL_LEMMAS.len())]);
    let (status, refutation) = match generate_lemma_instance(lemma, pool, &mut rng)? {
        None => ("no_instance".to_string(), None),
        Some(d) => {
            let verdict = lemma_verify(lemma, &d)?;
            match verdict.conclusion_holds {
                Some(true) => ("verified".to_string(), None),
                Some(false) => (
                    "refuted".to_string(),
                    Some(dump_diagram(&d, verdict.counterexample)),
                ),
                None => ("no_instance".to_string(), None),
            }
        }
    };
    Ok(TrialOutcome {
        index,
        lemma: lemma.as_str().to_string(),
        semiring: pool.semiring.name.clone(),
        status,
        refutation,
    })
}

/// Runs the configured trials and merges the outcomes in trial order. The
/// report depends only on the config, never on the worker count.
pub fn fuzz(config: &FuzzConfig) -> Result<FuzzReport> {
    let pools: Vec<CandidatePool> = fuzz_semirings()?
        .iter()
        .map(|s| build_pool(s, config.max_order))
        .collect::<Result<_>>()?;
    let workers = config.workers.max(1).min(config.trials.max(1) as usize);

    let mut outcomes: Vec<TrialOutcome> = if workers == 1 {
        (0..config.trials)
            .map(|i| run_trial(i, config, &pools))
            .collect::<Result<_>>()?
    } else {
        let chunks: Vec<Result<Vec<TrialOutcome>>> = std::thread::scope(|scope| {
            let handles: Vec<_> = (0..workers)
                .map(|w| {
                    let pools = &pools;
                    scope.spawn(move || {
                        (w as u64..config.trials)
                            .step_by(workers)
                            .map(|i| run_trial(i, config, pools))
                            .collect::<Result<Vec<_>>>()
                    })
                })
                .collect();
            handles.into_iter().map(|h| h.join().expect("fuzz worker panicked")).collect()
        });
        let mut all = Vec::with_capacity(config.trials as usize);
        for chunk in chunks {
            all.extend(chunk?);
        }
        all.sort_by_key(|o| o.index);
        all
    };
    outcomes.sort_by_key(|o| o.index);

    let count = |s: &str| outcomes.iter().filter(|o| o.status == s).count() as u64;
    Ok(FuzzReport {
        seed: config.seed,
        trials: config.trials,
        max_order: config.max_order,
        lemma: config.lemma.map(|l| l.as_str().to_string()),
        verified: count("verified"),
        refuted: count("refuted"),
        no_instance: count("no_instance"),
        outcomes,
    })
}
