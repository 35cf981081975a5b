//! Invariant suites, shared by the command-line `verify` command and the tests.
//!
//! Every check is exhaustive within its bounds and stops at the first
//! counterexample, which is reported verbatim.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::capelli::{
    capelli_bitableau, capelli_determinant, capelli_immanant, column_capelli, column_capelli_alt, koszul,
    quantum_immanant, schur_element, schur_element_dyc, young_capelli, YoungCapelliBasis,
};
use crate::combinatorics::{all_sequences, enumerate_standard, Partition, Permutation, YoungTableau};
use crate::linalg::{rank, EchelonBasis};
use crate::polyalg::{
    act_column_capelli_diff, act_higher_capelli, act_ugl, bitableau, gc_coordinates, imm_operator, immanant,
    reconstruct, right_symmetrized, standard_bitableaux, straighten, straightening_order, BitabSpec, MPoly,
};
use crate::rational::{self, Coeff};
use crate::ugl::UglElement;
use crate::{Error, Result};

/// Named groups of checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Central,
    Oracle,
    Presentations,
    Recursion,
    Bases,
    Projectors,
    Action,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 8] = [
        "central",
        "oracle",
        "presentations",
        "recursion",
        "bases",
        "projectors",
        "action",
        "all",
    ];
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "central" => Suite::Central,
            "oracle" => Suite::Oracle,
            "presentations" => Suite::Presentations,
            "recursion" => Suite::Recursion,
            "bases" => Suite::Bases,
            "projectors" => Suite::Projectors,
            "action" => Suite::Action,
            "all" => Suite::All,
            other => return Err(Error::Parse(format!("unknown suite {other:?}"))),
        })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx = [
            Suite::Central,
            Suite::Oracle,
            Suite::Presentations,
            Suite::Recursion,
            Suite::Bases,
            Suite::Projectors,
            Suite::Action,
            Suite::All,
        ]
        .iter()
        .position(|s| s == self)
        .expect("listed");
        f.write_str(Suite::NAMES[idx])
    }
}

/// Size limits shared by all suites.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Bounds {
    /// Largest weight `h` of shapes, columns and polynomial degrees.
    pub max_h: usize,
    /// Largest `n` for checks that sweep over `U(gl(n))`.
    pub max_n: usize,
    /// `n` for checks at a fixed size.
    pub n: usize,
    /// Number of columns `d` of the polynomial side.
    pub d: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            max_h: 3,
            max_n: 2,
            n: 2,
            d: 2,
        }
    }
}

/// Outcome of one named check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    /// Number of cases examined before stopping.
    pub cases: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

/// All check outcomes of one suite run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub suite: String,
    pub bounds: Bounds,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// The first failing check, if any.
    pub fn first_failure(&self) -> Option<&CheckResult> {
        self.checks.iter().find(|c| !c.passed)
    }
}

/// Accumulates cases for one check and keeps the first counterexample.
struct Check {
    name: String,
    cases: usize,
    counterexample: Option<String>,
}

impl Check {
    fn new(name: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            cases: 0,
            counterexample: None,
        }
    }

    fn failed(&self) -> bool {
        self.counterexample.is_some()
    }

    /// Records one case; returns `false` once a counterexample is known.
    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) -> bool {
        if self.failed() {
            return false;
        }
        self.cases += 1;
        if !ok {
            self.counterexample = Some(describe());
        }
        ok
    }

    fn error(&mut self, e: Error) {
        if !self.failed() {
            self.counterexample = Some(format!("error: {e}"));
        }
    }

    fn finish(self) -> CheckResult {
        CheckResult {
            passed: self.counterexample.is_none(),
            name: self.name,
            cases: self.cases,
            counterexample: self.counterexample,
        }
    }
}

/// Runs `body`, turning an error into a failed check.
fn run_check(name: &str, body: impl FnOnce(&mut Check) -> Result<()>) -> CheckResult {
    let mut check = Check::new(name);
    if let Err(e) = body(&mut check) {
        check.error(e);
    }
    check.finish()
}

pub fn run(suite: Suite, bounds: &Bounds) -> Report {
    let checks = match suite {
        Suite::Central => central(bounds),
        Suite::Oracle => oracle(bounds),
        Suite::Presentations => presentations(bounds),
        Suite::Recursion => recursion(bounds),
        Suite::Bases => bases(bounds),
        Suite::Projectors => projectors(bounds),
        Suite::Action => action(bounds),
        Suite::All => [
            central(bounds),
            oracle(bounds),
            presentations(bounds),
            recursion(bounds),
            bases(bounds),
            projectors(bounds),
            action(bounds),
        ]
        .concat(),
    };
    Report {
        suite: suite.to_string(),
        bounds: *bounds,
        passed: checks.iter().all(|c| c.passed),
        checks,
    }
}

/// Shapes `μ ⊢ h ≤ max_h` whose conjugate fits in `n` rows of `U(gl(n))`.
fn nonvanishing_shapes(max_h: usize, n: usize) -> Vec<Partition> {
    (1..=max_h)
        .flat_map(Partition::all)
        .filter(|mu| mu.conjugate().first() <= n)
        .collect()
}

fn describe_noncentral(what: &str, x: &UglElement) -> String {
    match x.first_noncommuting_generator() {
        Some((i, j)) => format!("{what}: [e_{i}{j}, x] = {}", x.ad(i, j).expect("in range")),
        None => format!("{what}: central"),
    }
}

/// Centrality of Schur elements, quantum immanants and Capelli determinants.
pub fn central(b: &Bounds) -> Vec<CheckResult> {
    let mut out = Vec::new();
    out.push(run_check("schur elements are central", |c| {
        for n in 1..=b.max_n {
            for mu in nonvanishing_shapes(b.max_h, n) {
                let s = schur_element(&mu, n)?;
                if !c.record(s.is_central(), || describe_noncentral(&format!("S_{mu}({n})"), &s)) {
                    return Ok(());
                }
            }
        }
        Ok(())
    }));
    out.push(run_check("quantum immanants are central", |c| {
        for n in 1..=b.max_n {
            for mu in nonvanishing_shapes(b.max_h, n) {
                let q = quantum_immanant(&mu, n)?;
                if !c.record(q.is_central(), || describe_noncentral(&format!("qimm_{mu}({n})"), &q)) {
                    return Ok(());
                }
            }
        }
        Ok(())
    }));
    out.push(run_check("capelli determinants are central", |c| {
        for n in 1..=b.max_n {
            let x = capelli_determinant(n)?;
            if !c.record(x.is_central(), || describe_noncentral(&format!("cdet({n})"), &x)) {
                return Ok(());
            }
        }
        Ok(())
    }));
    out
}

/// Every monomial of degree `≤ max_deg` in `C[M_{n,d}]`.
pub fn monomials_up_to(max_deg: usize, n: usize, d: usize) -> Vec<MPoly> {
    (0..=max_deg).flat_map(|k| MPoly::all_monomials(k, n, d)).collect()
}

/// Column Capelli bitableau action equals its differential operator.
pub fn column_oracle_check(max_h: usize, n: usize, d: usize) -> CheckResult {
    run_check("column capelli action matches differential operator", |c| {
        let monomials = monomials_up_to(max_h, n, d);
        for h in 0..=max_h {
            let seqs = all_sequences(h, n);
            for l in &seqs {
                for r in &seqs {
                    let x = column_capelli(l, r, n)?;
                    for m in &monomials {
                        let lhs = act_ugl(&x, m)?;
                        let rhs = act_column_capelli_diff(l, r, m)?;
                        if !c.record(lhs == rhs, || format!("[{l:?}|{r:?}] on {m}: {lhs} vs {rhs}")) {
                            return Ok(());
                        }
                    }
                }
            }
        }
        Ok(())
    })
}

/// Quantum immanant action equals the higher Capelli operator on monomials
/// of degree `≤ h + 1`.
pub fn higher_capelli_check(shapes: &[Partition], n: usize, d: usize) -> CheckResult {
    run_check("quantum immanant action matches higher capelli operator", |c| {
        for mu in shapes {
            let q = quantum_immanant(mu, n)?;
            for m in monomials_up_to(mu.weight() + 1, n, d) {
                let lhs = act_ugl(&q, &m)?;
                let rhs = act_higher_capelli(mu, &m)?;
                if !c.record(lhs == rhs, || format!("mu = {mu} on {m}: {lhs} vs {rhs}")) {
                    return Ok(());
                }
            }
        }
        Ok(())
    })
}

/// Differential-operator and representation checks.
pub fn oracle(b: &Bounds) -> Vec<CheckResult> {
    let shapes: Vec<Partition> = (1..=b.max_h.min(3)).flat_map(Partition::all).collect();
    vec![
        column_oracle_check(b.max_h, b.n, b.d),
        higher_capelli_check(&shapes, b.n, b.d),
        run_check("polarizations form a representation", |c| {
            let n = b.n;
            let words: Vec<Vec<(usize, usize)>> = all_sequences(2, n)
                .into_iter()
                .flat_map(|ij| all_sequences(2, n).into_iter().map(move |kl| vec![(ij[0], ij[1]), (kl[0], kl[1])]))
                .collect();
            let monomials = monomials_up_to(b.max_h.min(3), n, b.d);
            for w in &words {
                let a = UglElement::generator(w[0].0, w[0].1, n)?;
                let g = UglElement::generator(w[1].0, w[1].1, n)?;
                let ab = a.checked_mul(&g)?;
                for m in &monomials {
                    let lhs = act_ugl(&ab, m)?;
                    let rhs = act_ugl(&a, &act_ugl(&g, m)?)?;
                    if !c.record(lhs == rhs, || format!("{a} * {g} on {m}")) {
                        return Ok(());
                    }
                }
            }
            Ok(())
        }),
    ]
}

/// Equality of the character and double Young-Capelli presentations.
pub fn presentations(b: &Bounds) -> Vec<CheckResult> {
    vec![
        run_check("schur element equals double young-capelli presentation", |c| {
            for n in 1..=b.max_n {
                for mu in (1..=b.max_h).flat_map(Partition::all) {
                    let lhs = schur_element(&mu, n)?;
                    let rhs = schur_element_dyc(&mu, n)?;
                    if !c.record(lhs == rhs, || format!("mu = {mu}, n = {n}: {lhs} vs {rhs}")) {
                        return Ok(());
                    }
                }
            }
            Ok(())
        }),
        run_check("column schur element equals capelli determinant", |c| {
            for n in 1..=b.max_n {
                let lhs = schur_element(&Partition::column(n), n)?;
                let rhs = capelli_determinant(n)?;
                if !c.record(lhs == rhs, || format!("n = {n}: {lhs} vs {rhs}")) {
                    return Ok(());
                }
            }
            Ok(())
        }),
        run_check("quantum immanant is (h!/dim) times schur element", |c| {
            for n in 1..=b.max_n {
                for mu in (1..=b.max_h).flat_map(Partition::all) {
                    let h = mu.weight();
                    let ratio = Coeff::new(
                        rational::factorial(h),
                        crate::characters::dim_irrep(&mu).into(),
                    );
                    let lhs = quantum_immanant(&mu, n)?;
                    let rhs = schur_element(&mu, n)?.scale(&ratio);
                    if !c.record(lhs == rhs, || format!("mu = {mu}, n = {n}")) {
                        return Ok(());
                    }
                }
            }
            Ok(())
        }),
    ]
}

/// PBW symbol of the top-degree part: `e_{a1 b1}..e_{ak bk} ↦ (a1|b1)..(ak|bk)`.
fn top_symbol(x: &UglElement) -> Result<MPoly> {
    let n = x.n();
    let mut out = MPoly::zero(n, n);
    if let Some(deg) = x.filtration_degree() {
        for (m, c) in x.homogeneous_part(deg).terms() {
            let word: Vec<(usize, usize)> = m.iter().map(|g| (g.row as usize, g.col as usize)).collect();
            out = &out + &MPoly::monomial(n, n, &word)?.scale(c);
        }
    }
    Ok(out)
}

/// Column Capelli recursions, invariance and filtration.
pub fn recursion(b: &Bounds) -> Vec<CheckResult> {
    let n = b.n;
    vec![
        run_check("top and bottom recursions agree", |c| {
            for h in 0..=b.max_h {
                let seqs = all_sequences(h, n);
                for l in &seqs {
                    for r in &seqs {
                        let lhs = column_capelli(l, r, n)?;
                        let rhs = column_capelli_alt(l, r, n)?;
                        if !c.record(lhs == rhs, || format!("[{l:?}|{r:?}]: {lhs} vs {rhs}")) {
                            return Ok(());
                        }
                    }
                }
            }
            Ok(())
        }),
        run_check("column capelli bitableaux are row-permutation invariant", |c| {
            for h in 0..=b.max_h {
                let seqs = all_sequences(h, n);
                for l in &seqs {
                    for r in &seqs {
                        let base = column_capelli_alt(l, r, n)?;
                        for sigma in Permutation::all(h) {
                            let (pl, pr) = (sigma.permute(l), sigma.permute(r));
                            let moved = column_capelli_alt(&pl, &pr, n)?;
                            if !c.record(moved == base, || format!("[{l:?}|{r:?}] vs [{pl:?}|{pr:?}]")) {
                                return Ok(());
                            }
                        }
                    }
                }
            }
            Ok(())
        }),
        run_check("filtration degree and top symbol of capelli bitableaux", |c| {
            for h in 1..=b.max_h {
                for shape in Partition::all(h) {
                    let fillings: Vec<YoungTableau> = all_sequences(h, n)
                        .into_iter()
                        .map(|w| YoungTableau::new(shape.clone(), w))
                        .collect::<Result<_>>()?;
                    for s in &fillings {
                        for t in &fillings {
                            let x = capelli_bitableau(s, t, n)?;
                            let sym = bitableau(s, t, n, n)?;
                            let ok = x.filtration_degree().is_none_or(|deg| deg <= h)
                                && top_symbol(&x.homogeneous_part(h))? == sym;
                            if !c.record(ok, || format!("[{s}|{t}] = {x}")) {
                                return Ok(());
                            }
                        }
                    }
                }
            }
            Ok(())
        }),
    ]
}

/// `C(a, b)` for small arguments.
fn binomial(a: usize, b: usize) -> usize {
    if b > a {
        return 0;
    }
    (0..b).fold(1usize, |acc, k| acc * (a - k) / (k + 1))
}

/// Standard, Gordan-Capelli and Young-Capelli bases, spanning by Capelli
/// immanants, and the straightening contract.
pub fn bases(b: &Bounds) -> Vec<CheckResult> {
    let (n, d) = (b.n, b.d);
    let vars = n * d;
    vec![
        run_check("standard bitableaux form a basis of each degree", |c| {
            for h in 0..=b.max_h {
                let basis = standard_bitableaux(h, n, d);
                let vecs: Vec<_> = basis
                    .iter()
                    .map(|p| bitableau(&p.left, &p.right, n, d).map(|q| q.terms().clone()))
                    .collect::<Result<_>>()?;
                let dim = binomial(h + vars - 1, vars - 1);
                let (count, r) = (basis.len(), rank(&vecs));
                if !c.record(count == dim && r == dim, || format!("h = {h}: {count} elements, rank {r}, dim {dim}")) {
                    return Ok(());
                }
            }
            Ok(())
        }),
        run_check("standard right symmetrized bitableaux form a basis", |c| {
            for h in 0..=b.max_h {
                let basis = standard_bitableaux(h, n, d);
                let vecs: Vec<_> = basis
                    .iter()
                    .map(|p| right_symmetrized(&p.left, &p.right, n, d).map(|q| q.terms().clone()))
                    .collect::<Result<_>>()?;
                let dim = binomial(h + vars - 1, vars - 1);
                let r = rank(&vecs);
                if !c.record(r == dim, || format!("h = {h}: rank {r}, dim {dim}")) {
                    return Ok(());
                }
            }
            Ok(())
        }),
        run_check("standard young-capelli bitableaux form a filtered basis", |c| {
            let sq = n * n;
            for h in 0..=b.max_h {
                let basis = YoungCapelliBasis::new(n, h)?;
                let dim = binomial(h + sq, sq);
                if !c.record(basis.len() == dim, || format!("h = {h}: {} elements, dim {dim}", basis.len())) {
                    return Ok(());
                }
            }
            Ok(())
        }),
        run_check("capelli immanants span the filtration", |c| {
            let sq = n * n;
            for h in 0..=b.max_h.min(2) {
                let mut echelon = EchelonBasis::new();
                for k in 0..=h {
                    for shape in Partition::all(k) {
                        for l in all_sequences(k, n) {
                            for r in all_sequences(k, n) {
                                echelon.insert(capelli_immanant(&shape, &l, &r, n)?.terms());
                            }
                        }
                    }
                }
                let dim = binomial(h + sq, sq);
                if !c.record(echelon.rank() == dim, || format!("h = {h}: rank {}, dim {dim}", echelon.rank())) {
                    return Ok(());
                }
            }
            Ok(())
        }),
        run_check("straightening reconstructs and respects content and order", |c| {
            for h in 1..=b.max_h {
                for shape in Partition::all(h) {
                    let lefts: Vec<YoungTableau> = all_sequences(h, n)
                        .into_iter()
                        .map(|w| YoungTableau::new(shape.clone(), w))
                        .collect::<Result<_>>()?;
                    let rights: Vec<YoungTableau> = all_sequences(h, d)
                        .into_iter()
                        .map(|w| YoungTableau::new(shape.clone(), w))
                        .collect::<Result<_>>()?;
                    for l in lefts.iter().step_by(3) {
                        for r in rights.iter().step_by(2) {
                            let spec = BitabSpec::new(l.clone(), r.clone())?;
                            let outcome = straightening_contract(&spec, n, d)?;
                            if !c.record(outcome.is_none(), || format!("({l}|{r}): {}", outcome.unwrap_or_default())) {
                                return Ok(());
                            }
                        }
                    }
                }
            }
            Ok(())
        }),
    ]
}

/// Straightens `(P|Q)` and returns a description of the first violated
/// property: reconstruction, standardness, content, or support order.
pub fn straightening_contract(spec: &BitabSpec, n: usize, d: usize) -> Result<Option<String>> {
    let p = bitableau(&spec.left, &spec.right, n, d)?;
    let exp = straighten(&p)?;
    if reconstruct(&exp, n, d)? != p {
        return Ok(Some("reconstruction differs".into()));
    }
    for (s, t) in exp.terms().keys() {
        if !(s.is_standard() && t.is_standard()) {
            return Ok(Some(format!("non-standard pair ({s}|{t}) in support")));
        }
        if s.content() != spec.left.content() || t.content() != spec.right.content() {
            return Ok(Some(format!("content changed at ({s}|{t})")));
        }
        let pair = BitabSpec::new(s.clone(), t.clone())?;
        if straightening_order(&pair, spec) == std::cmp::Ordering::Less {
            return Ok(Some(format!("({s}|{t}) lies below the input in the order")));
        }
    }
    Ok(None)
}

/// Standard pairs of one shape with `λ_1 ≤ min(n, d)`.
fn standard_pairs(shape: &Partition, n: usize, d: usize) -> Vec<(YoungTableau, YoungTableau)> {
    let lefts = enumerate_standard(shape, n);
    let rights = enumerate_standard(shape, d);
    lefts
        .iter()
        .flat_map(|l| rights.iter().map(move |r| (l.clone(), r.clone())))
        .collect()
}

/// Projector identities for `IMM_λ` and shape support of immanants on both sides.
pub fn projectors(b: &Bounds) -> Vec<CheckResult> {
    let (n, d) = (b.n, b.d);
    let shapes: Vec<Partition> = (1..=b.max_h).flat_map(Partition::all).collect();
    vec![
        run_check("scaled IMM fixes its own shape and kills the others", |c| {
            for lambda in &shapes {
                let scale = Coeff::new(One::one(), lambda.hook_number().into());
                for mu in Partition::all(lambda.weight()) {
                    if mu.first() > n.min(d) {
                        continue;
                    }
                    for (u, v) in standard_pairs(&mu, n, d) {
                        let sym = right_symmetrized(&u, &v, n, d)?;
                        let image = imm_operator(lambda, &sym)?.scale(&scale);
                        let expected = if &mu == lambda { sym.clone() } else { MPoly::zero(n, d) };
                        if !c.record(image == expected, || format!("lambda = {lambda} on ({u}|⎕{v}) of shape {mu}")) {
                            return Ok(());
                        }
                    }
                }
            }
            Ok(())
        }),
        run_check("scaled IMM is idempotent", |c| {
            for lambda in &shapes {
                let scale = Coeff::new(One::one(), lambda.hook_number().into());
                for m in MPoly::all_monomials(lambda.weight(), n, d) {
                    let once = imm_operator(lambda, &m)?.scale(&scale);
                    let twice = imm_operator(lambda, &once)?.scale(&scale);
                    if !c.record(once == twice, || format!("lambda = {lambda} on {m}")) {
                        return Ok(());
                    }
                }
            }
            Ok(())
        }),
        run_check("immanants lie in the span of their own shape", |c| {
            for lambda in &shapes {
                let h = lambda.weight();
                for l in all_sequences(h, n) {
                    for r in all_sequences(h, d).into_iter().step_by(2) {
                        let imm = immanant(lambda, &l, &r, n, d)?;
                        let shapes_hit = gc_coordinates(&imm)?.shapes();
                        let ok = shapes_hit.iter().all(|s| s == lambda);
                        if !c.record(ok, || format!("imm_{lambda}({l:?}; {r:?}) hits {shapes_hit:?}")) {
                            return Ok(());
                        }
                    }
                }
            }
            Ok(())
        }),
        run_check("immanants vanish when the first row is too long", |c| {
            for lambda in &shapes {
                let h = lambda.weight();
                if lambda.first() <= n.min(d) {
                    continue;
                }
                for l in all_sequences(h, n) {
                    for r in all_sequences(h, d) {
                        let imm = immanant(lambda, &l, &r, n, d)?;
                        if !c.record(imm.is_zero(), || format!("imm_{lambda}({l:?}; {r:?}) = {imm}")) {
                            return Ok(());
                        }
                    }
                }
            }
            Ok(())
        }),
        run_check("capelli immanants vanish when the first row is too long", |c| {
            for lambda in &shapes {
                let h = lambda.weight();
                if lambda.first() <= n {
                    continue;
                }
                for l in all_sequences(h, n) {
                    for r in all_sequences(h, n) {
                        let x = capelli_immanant(lambda, &l, &r, n)?;
                        if !c.record(x.is_zero(), || format!("Cimm_{lambda}[{l:?}; {r:?}] = {x}")) {
                            return Ok(());
                        }
                    }
                }
            }
            Ok(())
        }),
        run_check("capelli immanants expand on standard young-capelli bitableaux of their shape", |c| {
            let basis = YoungCapelliBasis::new(n, b.max_h)?;
            for lambda in &shapes {
                let h = lambda.weight();
                for l in all_sequences(h, n) {
                    for r in all_sequences(h, n) {
                        let x = capelli_immanant(lambda, &l, &r, n)?;
                        let hit = basis.expand(&x)?.shapes();
                        let ok = hit.iter().all(|s| s == lambda);
                        if !c.record(ok, || format!("Cimm_{lambda}[{l:?}; {r:?}] hits {hit:?}")) {
                            return Ok(());
                        }
                    }
                }
            }
            Ok(())
        }),
        run_check("koszul map sends capelli immanants to immanants", |c| {
            for lambda in &shapes {
                let h = lambda.weight();
                for l in all_sequences(h, n) {
                    for r in all_sequences(h, n).into_iter().step_by(3) {
                        let x = capelli_immanant(lambda, &l, &r, n)?;
                        let ok = koszul(&x)? == immanant(lambda, &l, &r, n, n)?;
                        if !c.record(ok, || format!("Cimm_{lambda}[{l:?}; {r:?}]")) {
                            return Ok(());
                        }
                    }
                }
            }
            Ok(())
        }),
    ]
}

/// For a shape `λ`, the matrix `C(T, U)` with
/// `[S|⎕T] · (U|⎕V) = C(T, U) (S|⎕V)` for all standard `S, T, U, V`, or a
/// description of the first quadruple that is not of this form.
pub fn young_capelli_pairing(shape: &Partition, n: usize) -> Result<std::result::Result<Vec<Vec<Coeff>>, String>> {
    let tabs = enumerate_standard(shape, n);
    let mut pairing: Vec<Vec<Option<Coeff>>> = vec![vec![None; tabs.len()]; tabs.len()];
    for s in &tabs {
        for (ti, t) in tabs.iter().enumerate() {
            let yc = young_capelli(s, t, n)?;
            for (ui, u) in tabs.iter().enumerate() {
                for v in &tabs {
                    let image = act_ugl(&yc, &right_symmetrized(u, v, n, n)?)?;
                    let target = right_symmetrized(s, v, n, n)?;
                    let (key, unit) = target.terms().iter().next().expect("standard symmetrized bitableaux are nonzero");
                    let k = image.coeff_of(key) / unit;
                    if image != target.scale(&k) {
                        return Ok(Err(format!("[{s}|⎕{t}] · ({u}|⎕{v}) is not a multiple of ({s}|⎕{v})")));
                    }
                    match &pairing[ti][ui] {
                        Some(prev) if *prev != k => {
                            return Ok(Err(format!("pairing of {t} and {u} depends on the outer tableaux")));
                        }
                        _ => pairing[ti][ui] = Some(k),
                    }
                }
            }
        }
    }
    Ok(Ok(pairing
        .into_iter()
        .map(|row| row.into_iter().map(|x| x.expect("filled")).collect())
        .collect()))
}

/// Determinant by exact elimination.
pub fn determinant(mut m: Vec<Vec<Coeff>>) -> Coeff {
    let size = m.len();
    let mut det = Coeff::one();
    for col in 0..size {
        let Some(pivot) = (col..size).find(|&r| !m[r][col].is_zero()) else {
            return Coeff::zero();
        };
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        det *= m[col][col].clone();
        let (upper, lower) = m.split_at_mut(col + 1);
        let pivot_row = &upper[col];
        for row in lower {
            let factor = &row[col] / &pivot_row[col];
            for (x, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *x -= &factor * p;
            }
        }
    }
    det
}

/// Young-Capelli bitableaux acting on Gordan-Capelli basis elements.
pub fn action(b: &Bounds) -> Vec<CheckResult> {
    let n = b.n;
    let shapes = |k: usize| -> Vec<Partition> { Partition::all(k).into_iter().filter(|s| s.first() <= n).collect() };
    vec![
        run_check("young-capelli action vanishes below its weight and across shapes", |c| {
            for k in 1..=b.max_h {
                for lambda in shapes(k) {
                    for (s, t) in standard_pairs(&lambda, n, n) {
                        let yc = young_capelli(&s, &t, n)?;
                        for h in 0..=k {
                            for mu in shapes(h) {
                                if h == k && mu == lambda {
                                    continue;
                                }
                                for (u, v) in standard_pairs(&mu, n, n) {
                                    let image = act_ugl(&yc, &right_symmetrized(&u, &v, n, n)?)?;
                                    if !c.record(image.is_zero(), || format!("[{s}|⎕{t}] · ({u}|⎕{v}) = {image}")) {
                                        return Ok(());
                                    }
                                }
                            }
                        }
                    }
                }
            }
            Ok(())
        }),
        run_check("young-capelli action on its own shape is nondegenerate", |c| {
            for k in 1..=b.max_h {
                for lambda in shapes(k) {
                    match young_capelli_pairing(&lambda, n)? {
                        Err(why) => {
                            c.record(false, || why);
                            return Ok(());
                        }
                        Ok(pairing) => {
                            let det = determinant(pairing);
                            if !c.record(!det.is_zero(), || format!("pairing matrix of {lambda} is singular")) {
                                return Ok(());
                            }
                        }
                    }
                }
            }
            Ok(())
        }),
    ]
}

/// Fails unless every coefficient of `exp` sits on a pair of shape `shape`.
pub fn supported_on_shape(exp: &crate::expansion::StdExpansion, shape: &Partition) -> bool {
    exp.shapes().iter().all(|s| s == shape)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for name in Suite::NAMES {
            assert_eq!(name.parse::<Suite>().unwrap().to_string(), name);
        }
        assert!("bogus".parse::<Suite>().is_err());
    }

    #[test]
    fn small_suites_pass() {
        let b = Bounds {
            max_h: 2,
            max_n: 2,
            n: 2,
            d: 2,
        };
        for suite in [Suite::Central, Suite::Presentations, Suite::Recursion, Suite::Action] {
            let report = run(suite, &b);
            assert!(report.passed, "{}", report.to_json());
        }
    }

    #[test]
    fn determinant_of_small_matrices() {
        use crate::rational::int;
        assert_eq!(determinant(vec![vec![int(2), int(1)], vec![int(4), int(3)]]), int(2));
        assert_eq!(determinant(vec![vec![int(1), int(2)], vec![int(2), int(4)]]), int(0));
        assert_eq!(determinant(vec![vec![int(0), int(1)], vec![int(1), int(0)]]), int(-1));
    }

    #[test]
    fn failing_checks_report_counterexamples() {
        let r = run_check("always fails", |c| {
            c.record(false, || "witness".into());
            Ok(())
        });
        assert!(!r.passed);
        assert_eq!(r.counterexample.as_deref(), Some("witness"));
        let e = run_check("errors", |_| Err(Error::SolveFailed("boom".into())));
        assert!(!e.passed);
    }
}
