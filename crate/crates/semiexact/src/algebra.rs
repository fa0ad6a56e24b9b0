//! Finite semirings and semimodules as operation tables.
//!
//! Every carrier is `{0, 1, .., order-1}` and index `0` is the additive zero
//! by convention; builtins, file formats and all derived constructions keep
//! that convention so quotients and isomorphism searches never have to chase
//! a floating zero.

use std::sync::Arc;

use crate::error::{Error, Result};

/// Element index into a carrier.
pub type Elem = usize;

/// Largest carrier allowed for a single user-facing object.
pub const MAX_ORDER: usize = 64;

/// A single axiom violation with a concrete counterexample.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub axiom: &'static str,
    pub witness: Vec<Elem>,
}

/// Outcome of a table validation. Collects *all* violations, not just the
/// first, so hand-authored tables get complete diagnostics.
#[derive(Debug, Clone, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    fn push(&mut self, axiom: &'static str, witness: Vec<Elem>) {
        self.violations.push(Violation { axiom, witness });
    }
}

fn check_table_shape(table: &[Vec<Elem>], rows: usize, cols: usize, what: &str) -> Result<()> {
    if table.len() != rows {
        return Err(Error::MalformedTable(format!(
            "{what}: expected {rows} rows, got {}",
            table.len()
        )));
    }
    for (i, row) in table.iter().enumerate() {
        if row.len() != cols {
            return Err(Error::MalformedTable(format!(
                "{what}: row {i} has {} entries, expected {cols} (ragged table)",
                row.len()
            )));
        }
    }
    Ok(())
}

fn check_table_range(table: &[Vec<Elem>], range: usize, what: &str) -> Result<()> {
    for (i, row) in table.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            if v >= range {
                return Err(Error::MalformedTable(format!(
                    "{what}: entry ({i},{j}) = {v} out of range 0..{range}"
                )));
            }
        }
    }
    Ok(())
}

fn check_commutative_monoid(add: &[Vec<Elem>], report: &mut ValidationReport) {
    let n = add.len();
    for a in 0..n {
        for b in 0..n {
            if add[a][b] != add[b][a] {
                report.push("addition commutative", vec![a, b]);
            }
            for c in 0..n {
                if add[add[a][b]][c] != add[a][add[b][c]] {
                    report.push("addition associative", vec![a, b, c]);
                }
            }
        }
        if add[0][a] != a {
            report.push("zero neutral for addition", vec![a]);
        }
    }
}

/// A finite semiring given by Cayley tables. The additive zero is index 0.
#[derive(Debug, Clone)]
pub struct Semiring {
    pub name: String,
    pub order: usize,
    pub add: Vec<Vec<Elem>>,
    pub mul: Vec<Vec<Elem>>,
    pub one: Elem,
}

impl PartialEq for Semiring {
    fn eq(&self, other: &Self) -> bool {
        // names are labels, not identity
        self.order == other.order
            && self.one == other.one
            && self.add == other.add
            && self.mul == other.mul
    }
}
impl Eq for Semiring {}

impl Semiring {
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.add[a][b]
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a][b]
    }

    /// Builds and fully validates a semiring; any axiom violation is an error.
    pub fn from_tables(
        name: impl Into<String>,
        add: Vec<Vec<Elem>>,
        mul: Vec<Vec<Elem>>,
        one: Elem,
    ) -> Result<Arc<Self>> {
        let report = validate_semiring(&add, &mul, one)?;
        if let Some(v) = report.violations.first() {
            return Err(Error::Precondition(format!(
                "semiring axiom '{}' fails at witness {:?} ({} violation(s) total)",
                v.axiom,
                v.witness,
                report.violations.len()
            )));
        }
        Ok(Arc::new(Semiring { name: name.into(), order: add.len(), add, mul, one }))
    }
}

/// Checks every semiring axiom over the candidate tables, returning all
/// violations with witnesses. `Err` is reserved for malformed input (ragged
/// tables, out-of-range indices), which is distinct from an axiom violation.
pub fn validate_semiring(
    add: &[Vec<Elem>],
    mul: &[Vec<Elem>],
    one: Elem,
) -> Result<ValidationReport> {
    let n = add.len();
    if n == 0 {
        return Err(Error::MalformedTable("semiring carrier is empty".into()));
    }
    check_table_shape(add, n, n, "add")?;
    check_table_shape(mul, n, n, "mul")?;
    check_table_range(add, n, "add")?;
    check_table_range(mul, n, "mul")?;
    if one >= n {
        return Err(Error::MalformedTable(format!("one = {one} out of range 0..{n}")));
    }

    let mut report = ValidationReport::default();
    check_commutative_monoid(add, &mut report);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if mul[mul[a][b]][c] != mul[a][mul[b][c]] {
                    report.push("multiplication associative", vec![a, b, c]);
                }
                if mul[a][add[b][c]] != add[mul[a][b]][mul[a][c]] {
                    report.push("left distributivity", vec![a, b, c]);
                }
                if mul[add[a][b]][c] != add[mul[a][c]][mul[b][c]] {
                    report.push("right distributivity", vec![a, b, c]);
                }
            }
        }
        if mul[one][a] != a || mul[a][one] != a {
            report.push("one neutral for multiplication", vec![a]);
        }
        if mul[0][a] != 0 || mul[a][0] != 0 {
            report.push("zero absorbing", vec![a]);
        }
    }
    if one == 0 {
        report.push("zero equals one", vec![]);
    }
    Ok(report)
}

/// Builtin semiring families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SemiringFamily {
    Boolean,
    Zmod,
    TruncNat,
    TruncTropicalMin,
}

impl SemiringFamily {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "boolean" => Ok(Self::Boolean),
            "zmod" => Ok(Self::Zmod),
            "trunc_nat" => Ok(Self::TruncNat),
            "trunc_tropical_min" => Ok(Self::TruncTropicalMin),
            other => Err(Error::UnsupportedBuiltin(format!("semiring family '{other}'"))),
        }
    }
}

/// Constructs a builtin semiring. Every builtin passes [`validate_semiring`].
pub fn builtin_semiring(family: SemiringFamily, k: usize) -> Result<Arc<Semiring>> {
    match family {
        SemiringFamily::Boolean => {
            let add = vec![vec![0, 1], vec![1, 1]];
            let mul = vec![vec![0, 0], vec![0, 1]];
            Semiring::from_tables("boolean", add, mul, 1)
        }
        SemiringFamily::Zmod => {
            if k < 2 {
                return Err(Error::OutOfRange(format!(
                    "zmod({k}): the zero semiring (0 = 1) is excluded"
                )));
            }
            if k > MAX_ORDER {
                return Err(Error::OutOfRange(format!("zmod({k}): order exceeds {MAX_ORDER}")));
            }
            let add = (0..k).map(|a| (0..k).map(|b| (a + b) % k).collect()).collect();
            let mul = (0..k).map(|a| (0..k).map(|b| (a * b) % k).collect()).collect();
            Semiring::from_tables(format!("zmod({k})"), add, mul, 1)
        }
        SemiringFamily::TruncNat => {
            if k == 0 || k + 1 > MAX_ORDER {
                return Err(Error::OutOfRange(format!("trunc_nat({k}): order must be 2..={MAX_ORDER}")));
            }
            let n = k + 1;
            let add = (0..n).map(|a| (0..n).map(|b| (a + b).min(k)).collect()).collect();
            let mul = (0..n).map(|a| (0..n).map(|b| (a * b).min(k)).collect()).collect();
            Semiring::from_tables(format!("trunc_nat({k})"), add, mul, 1)
        }
        SemiringFamily::TruncTropicalMin => {
            // Carrier {∞, 0, 1, .., k}: index 0 is ∞ (the additive zero of
            // min), index i ≥ 1 is the number i-1. Addition is min, the
            // product is saturating numeric + with ∞ absorbing, and one is
            // the number 0 at index 1.
            if k + 2 > MAX_ORDER {
                return Err(Error::OutOfRange(format!(
                    "trunc_tropical_min({k}): order exceeds {MAX_ORDER}"
                )));
            }
            let n = k + 2;
            let add: Vec<Vec<Elem>> = (0..n)
                .map(|a| {
                    (0..n)
                        .map(|b| {
                            if a == 0 {
                                b
                            } else if b == 0 {
                                a
                            } else {
                                a.min(b)
                            }
                        })
                        .collect()
                })
                .collect();
            let mul: Vec<Vec<Elem>> = (0..n)
                .map(|a| {
                    (0..n)
                        .map(|b| {
                            if a == 0 || b == 0 {
                                0
                            } else {
                                ((a - 1) + (b - 1)).min(k) + 1
                            }
                        })
                        .collect()
                })
                .collect();
            Semiring::from_tables(format!("trunc_tropical_min({k})"), add, mul, 1)
        }
    }
}

/// The quotient of the natural numbers by the congruence with the given
/// index and period: `{0, .., index+period-1}` where values at or beyond
/// `index` wrap with the given period. `cyclic_nat(k, 1)` is `trunc_nat(k)`.
///
/// Every commutative monoid of order at most `n` is a semimodule over
/// `cyclic_nat(n, lcm(1..=n))` via its repeated-addition action, which is
/// what the explorer uses to treat plain monoids as semimodules.
pub fn cyclic_nat(index: usize, period: usize) -> Result<Arc<Semiring>> {
    if period == 0 || index + period < 2 {
        return Err(Error::OutOfRange(format!("cyclic_nat({index},{period})")));
    }
    let n = index + period;
    let norm = |x: usize| if x < n { x } else { index + (x - index) % period };
    let add = (0..n).map(|a| (0..n).map(|b| norm(a + b)).collect()).collect();
    let mul = (0..n).map(|a| (0..n).map(|b| norm(a * b)).collect()).collect();
    Semiring::from_tables(format!("cyclic_nat({index},{period})"), add, mul, 1)
}

/// A finite right semimodule over a semiring, as an addition table plus a
/// scalar-action table `act[m][s] = m·s`. Index 0 is the additive zero.
#[derive(Debug, Clone)]
pub struct Semimodule {
    pub name: String,
    pub semiring: Arc<Semiring>,
    pub order: usize,
    pub add: Vec<Vec<Elem>>,
    pub act: Vec<Vec<Elem>>,
}

impl PartialEq for Semimodule {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order
            && self.semiring == other.semiring
            && self.add == other.add
            && self.act == other.act
    }
}
impl Eq for Semimodule {}

impl Semimodule {
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.add[a][b]
    }

    pub fn act(&self, m: Elem, s: Elem) -> Elem {
        self.act[m][s]
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.order
    }

    /// True iff m + m = m for every element.
    pub fn is_additively_idempotent(&self) -> bool {
        self.elements().all(|m| self.add(m, m) == m)
    }

    /// True iff every element is cancellable.
    pub fn is_cancellative(&self) -> bool {
        cancellable_elements(self).members.len() == self.order
    }

    pub fn from_tables(
        name: impl Into<String>,
        semiring: Arc<Semiring>,
        add: Vec<Vec<Elem>>,
        act: Vec<Vec<Elem>>,
    ) -> Result<Arc<Self>> {
        let report = validate_semimodule(&add, &act, &semiring)?;
        if let Some(v) = report.violations.first() {
            return Err(Error::Precondition(format!(
                "semimodule axiom '{}' fails at witness {:?} ({} violation(s) total)",
                v.axiom,
                v.witness,
                report.violations.len()
            )));
        }
        Ok(Arc::new(Semimodule { name: name.into(), semiring, order: add.len(), add, act }))
    }
}

/// Checks every semimodule axiom, returning all violations with witnesses.
pub fn validate_semimodule(
    add: &[Vec<Elem>],
    act: &[Vec<Elem>],
    semiring: &Semiring,
) -> Result<ValidationReport> {
    let n = add.len();
    if n == 0 {
        return Err(Error::MalformedTable("semimodule carrier is empty".into()));
    }
    let k = semiring.order;
    check_table_shape(add, n, n, "add")?;
    check_table_shape(act, n, k, "act")?;
    check_table_range(add, n, "add")?;
    check_table_range(act, n, "act")?;

    let mut report = ValidationReport::default();
    check_commutative_monoid(add, &mut report);
    for m in 0..n {
        for s in 0..k {
            for t in 0..k {
                // (m·s)·t = m·(s·t)
                if act[act[m][s]][t] != act[m][semiring.mul(s, t)] {
                    report.push("action associative over scalar product", vec![m, s, t]);
                }
                // m·(s+t) = m·s + m·t
                if act[m][semiring.add(s, t)] != add[act[m][s]][act[m][t]] {
                    report.push("action distributes over scalar addition", vec![m, s, t]);
                }
            }
            for m2 in 0..n {
                // (m+m')·s = m·s + m'·s
                if act[add[m][m2]][s] != add[act[m][s]][act[m2][s]] {
                    report.push("action distributes over addition", vec![m, m2, s]);
                }
            }
            if act[0][s] != 0 {
                report.push("zero element absorbed by action (0_M·s = 0_M)", vec![s]);
            }
        }
        if act[m][semiring.one] != m {
            report.push("one acts as identity (m·1 = m)", vec![m]);
        }
        if act[m][0] != 0 {
            report.push("zero scalar annihilates (m·0_S = 0_M)", vec![m]);
        }
    }
    Ok(report)
}

/// An ordered subset of a semimodule carrier, stored sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementSet {
    pub parent: Arc<Semimodule>,
    pub members: Vec<Elem>,
}

impl ElementSet {
    pub fn new(parent: Arc<Semimodule>, mut members: Vec<Elem>) -> Result<Self> {
        members.sort_unstable();
        members.dedup();
        if let Some(&m) = members.iter().find(|&&m| m >= parent.order) {
            return Err(Error::OutOfRange(format!(
                "element {m} outside carrier of '{}'",
                parent.name
            )));
        }
        Ok(ElementSet { parent, members })
    }

    pub fn contains(&self, e: Elem) -> bool {
        self.members.binary_search(&e).is_ok()
    }
}

/// The set of cancellable elements of `M`: those `s` with
/// `a + s = b + s ⇒ a = b`. `M` is cancellative iff this is the whole
/// carrier; `0` is always cancellable.
pub fn cancellable_elements(module: &Semimodule) -> ElementSet {
    let n = module.order;
    let members = (0..n)
        .filter(|&s| {
            (0..n).all(|a| (0..n).all(|b| module.add(a, s) != module.add(b, s) || a == b))
        })
        .collect();
    ElementSet { parent: Arc::new(module.clone()), members }
}

/// The repeated-addition action of a semiring that is additively generated
/// by `1` on a commutative monoid given by `add`. Returns `None` when the
/// semiring is not generated by `1` under addition, or when the induced
/// table fails the semimodule axioms (the monoid is then simply not a
/// semimodule over this semiring).
pub fn natural_action(add: &[Vec<Elem>], semiring: &Semiring) -> Option<Vec<Vec<Elem>>> {
    let k = semiring.order;
    // minimal number of 1-summands realizing each semiring element
    let mut reps: Vec<Option<usize>> = vec![None; k];
    let mut cur = 0;
    let mut count = 0usize;
    loop {
        if reps[cur].is_none() {
            reps[cur] = Some(count);
        } else if count > 0 {
            break; // entered the additive cycle of 1
        }
        cur = semiring.add(cur, semiring.one);
        count += 1;
        if count > k + 1 {
            break;
        }
    }
    let reps: Vec<usize> = reps.into_iter().collect::<Option<Vec<_>>>()?;

    let n = add.len();
    let act: Vec<Vec<Elem>> = (0..n)
        .map(|m| {
            (0..k)
                .map(|s| {
                    let mut acc = 0;
                    for _ in 0..reps[s] {
                        acc = add[acc][m];
                    }
                    acc
                })
                .collect()
        })
        .collect();
    match validate_semimodule(add, &act, semiring) {
        Ok(report) if report.ok() => Some(act),
        _ => None,
    }
}

/// The zero semimodule over a semiring.
pub fn zero_module(semiring: Arc<Semiring>) -> Arc<Semimodule> {
    let k = semiring.order;
    Arc::new(Semimodule {
        name: "0".into(),
        semiring,
        order: 1,
        add: vec![vec![0]],
        act: vec![vec![0; k]],
    })
}

/// A semiring regarded as a right semimodule over itself (action = product).
pub fn semiring_as_semimodule(semiring: Arc<Semiring>) -> Arc<Semimodule> {
    Arc::new(Semimodule {
        name: semiring.name.clone(),
        order: semiring.order,
        add: semiring.add.clone(),
        act: semiring.mul.clone(),
        semiring,
    })
}

/// Direct sum of two semimodules over the same semiring. Element `(a, b)` is
/// encoded as `a * b_order + b`, so `(0,0)` stays at index 0.
pub fn direct_sum(a: &Semimodule, b: &Semimodule) -> Result<Arc<Semimodule>> {
    if a.semiring != b.semiring {
        return Err(Error::SemiringMismatch(format!(
            "direct_sum({}, {})",
            a.name, b.name
        )));
    }
    let (na, nb) = (a.order, b.order);
    let n = na * nb;
    let enc = |x: Elem, y: Elem| x * nb + y;
    let add = (0..n)
        .map(|p| {
            (0..n)
                .map(|q| enc(a.add(p / nb, q / nb), b.add(p % nb, q % nb)))
                .collect()
        })
        .collect();
    let act = (0..n)
        .map(|p| {
            (0..a.semiring.order)
                .map(|s| enc(a.act(p / nb, s), b.act(p % nb, s)))
                .collect()
        })
        .collect();
    Ok(Arc::new(Semimodule {
        name: format!("{}(+){}", a.name, b.name),
        semiring: a.semiring.clone(),
        order: n,
        add,
        act,
    }))
}
