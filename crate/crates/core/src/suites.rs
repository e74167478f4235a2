//! Randomized property suites.
//!
//! Each trial draws its instance from [`trial_rng`], rejection-sampling until
//! the preconditions hold, and reports pass or fail together with a JSON
//! dump of the instance.  Trials run in parallel; the report is assembled in
//! trial order.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::cat::morphism::{
    compose, copair_morphisms, identity, injection_left, injection_right, morphism_tests, projection_left,
    projection_right, with_morphisms,
};
use crate::cat::relocation::LocVertex;
use crate::conduct::{equiv, WitnessedBehaviour};
use crate::error::{Error, Result};
use crate::gen::{carriers, graph_on, pair, project_on, trial_rng, triple, vertex_range, GraphShape};
use crate::graph::{execute, Plugging, Vertex, WeightedGraph};
use crate::json::{graph_to_json, project_to_json};
use crate::matrix::{circuit_determinant, circuit_matrix, logdet_measure, orth_nilpotency, same_aggregate, spectral_radius_below, WeightMatrix};
use crate::measure::{measure_graphs, CircuitMap, MeasureParam, WeightTable};
use crate::project::{cut, fax, linear_combine, pairing, raw_pairing, tensor, Delocation, Project};
use crate::rational::{int, ratio};
use crate::scalar::ExtReal;
use crate::Rational;

pub const SUITES: &[&str] = &[
    "associativity",
    "cyclic",
    "adjunction",
    "nilpotency-agreement",
    "determinant",
    "mix",
    "weakening",
    "triviality",
    "category",
];

/// Length bound for circuit enumeration outside the determinant suite.
const CIRCUIT_BOUND: usize = 64;
/// Length bound of the determinant oracle.
pub const ORACLE_LENGTH: usize = 40;
const MAX_ATTEMPTS: usize = 10_000;

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub seed: u64,
    pub trials: u64,
    /// Only used where exact comparison is impossible.
    pub tolerance: f64,
    pub shape: GraphShape,
}

impl SuiteConfig {
    pub fn new(seed: u64, trials: u64) -> Self {
        SuiteConfig {
            seed,
            trials,
            tolerance: 1e-6,
            shape: GraphShape::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Failure {
    pub trial: u64,
    pub message: String,
    pub instance: Value,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub trials: u64,
    pub passed: u64,
    pub failed: u64,
    /// How many trials fell into each case of the suite.
    pub cases: BTreeMap<String, u64>,
    /// How many failures fell into each case.
    pub failed_cases: BTreeMap<String, u64>,
    /// Largest floating-point discrepancy seen, for tolerance-based checks.
    pub max_error: f64,
    pub first_failure: Option<Failure>,
}

impl SuiteReport {
    pub fn ok(&self) -> bool {
        self.failed == 0
    }

    pub fn to_json(&self) -> Value {
        json!({
            "suite": self.suite,
            "seed": self.seed,
            "trials": self.trials,
            "passed": self.passed,
            "failed": self.failed,
            "cases": self.cases,
            "failed_cases": self.failed_cases,
            "max_error": self.max_error,
            "first_failure": self.first_failure.as_ref().map(|f| json!({
                "trial": f.trial,
                "message": f.message,
                "instance": f.instance,
            })),
        })
    }
}

struct Outcome {
    case: &'static str,
    error: f64,
    failure: Option<(String, Value)>,
}

impl Outcome {
    fn pass(case: &'static str) -> Self {
        Outcome {
            case,
            error: 0.0,
            failure: None,
        }
    }

    fn check(case: &'static str, ok: bool, msg: impl FnOnce() -> String, instance: impl FnOnce() -> Value) -> Self {
        Outcome {
            case,
            error: 0.0,
            failure: (!ok).then(|| (msg(), instance())),
        }
    }
}

type Trial = fn(&mut ChaCha8Rng, &SuiteConfig) -> Result<Outcome>;

fn trial_fn(name: &str) -> Option<Trial> {
    Some(match name {
        "associativity" => associativity,
        "cyclic" => cyclic,
        "adjunction" => adjunction,
        "nilpotency-agreement" => nilpotency_agreement,
        "determinant" => determinant,
        "mix" => mix,
        "weakening" => weakening,
        "triviality" => triviality,
        "category" => category,
        _ => return None,
    })
}

pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Result<SuiteReport> {
    let trial = trial_fn(name).ok_or_else(|| Error::Invalid(format!("unknown suite {name:?}; expected one of {SUITES:?}")))?;
    let outcomes: Vec<Outcome> = (0..cfg.trials)
        .into_par_iter()
        .map(|t| trial(&mut trial_rng(cfg.seed, t), cfg))
        .collect::<Result<_>>()?;
    let mut report = SuiteReport {
        suite: name.to_string(),
        seed: cfg.seed,
        trials: cfg.trials,
        passed: 0,
        failed: 0,
        cases: BTreeMap::new(),
        failed_cases: BTreeMap::new(),
        max_error: 0.0,
        first_failure: None,
    };
    for (t, o) in outcomes.into_iter().enumerate() {
        *report.cases.entry(o.case.to_string()).or_default() += 1;
        report.max_error = report.max_error.max(o.error);
        match o.failure {
            None => report.passed += 1,
            Some((message, instance)) => {
                report.failed += 1;
                *report.failed_cases.entry(o.case.to_string()).or_default() += 1;
                report.first_failure.get_or_insert(Failure {
                    trial: t as u64,
                    message,
                    instance,
                });
            }
        }
    }
    Ok(report)
}

fn sample<T>(rng: &mut ChaCha8Rng, mut draw: impl FnMut(&mut ChaCha8Rng) -> Option<T>) -> Result<T> {
    for _ in 0..MAX_ATTEMPTS {
        if let Some(x) = draw(rng) {
            return Ok(x);
        }
    }
    Err(Error::Invalid("rejection sampling found no admissible instance".into()))
}

fn graphs_json(gs: &[(&str, &WeightedGraph)]) -> Value {
    Value::Object(gs.iter().map(|(k, g)| (k.to_string(), graph_to_json(g))).collect())
}

fn projects_json(ps: &[(&str, &Project)]) -> Value {
    Value::Object(ps.iter().map(|(k, p)| (k.to_string(), project_to_json(p))).collect())
}

fn associativity(rng: &mut ChaCha8Rng, cfg: &SuiteConfig) -> Result<Outcome> {
    let (f, g, h, left, right) = sample(rng, |r| {
        let (f, g, h) = triple(r, &cfg.shape);
        let left = execute(&execute(&f, &g).ok()?, &h).ok()?;
        let right = execute(&f, &execute(&g, &h).ok()?).ok()?;
        Some((f, g, h, left, right))
    })?;
    let ok = left.vertices() == right.vertices()
        && same_aggregate(&WeightMatrix::aggregate(&left), &WeightMatrix::aggregate(&right));
    let case = if left.edges().is_empty() { "empty" } else { "nonempty" };
    Ok(Outcome::check(
        case,
        ok,
        || "(F::G)::H and F::(G::H) differ".into(),
        || graphs_json(&[("f", &f), ("g", &g), ("h", &h)]),
    ))
}

fn sorted_weights(pairs: &[(&WeightedGraph, &WeightedGraph)]) -> Option<Vec<Rational>> {
    let mut out = Vec::new();
    for (x, y) in pairs {
        let plug = Plugging::new(x, y);
        if !plug.circuits_complete(CIRCUIT_BOUND) {
            return None;
        }
        out.extend(plug.circuits_up_to(CIRCUIT_BOUND).into_iter().map(|c| c.weight));
    }
    out.sort();
    Some(out)
}

fn det_product(pairs: &[(&WeightedGraph, &WeightedGraph)]) -> Option<Rational> {
    pairs
        .iter()
        .map(|(x, y)| circuit_determinant(x, y))
        .try_fold(Rational::one(), |acc, d| d.map(|d| acc * d))
}

/// Geometric and scalar cyclic property on graphs, then the cyclic property
/// of the pairing on sliced projects with wagers.
fn cyclic(rng: &mut ChaCha8Rng, cfg: &SuiteConfig) -> Result<Outcome> {
    let (f, g, h, fg, gh, hf) = sample(rng, |r| {
        let (f, g, h) = triple(r, &cfg.shape);
        let fg = execute(&f, &g).ok()?;
        let gh = execute(&g, &h).ok()?;
        let hf = execute(&h, &f).ok()?;
        Some((f, g, h, fg, gh, hf))
    })?;
    let sides = [
        [(&f, &g), (&fg, &h)],
        [(&g, &h), (&gh, &f)],
        [(&h, &f), (&hf, &g)],
    ];
    let instance = || graphs_json(&[("f", &f), ("g", &g), ("h", &h)]);
    let multisets: Vec<Option<Vec<Rational>>> = sides.iter().map(|s| sorted_weights(s)).collect();
    let finite = multisets.iter().all(Option::is_some);
    if finite && !(multisets[0] == multisets[1] && multisets[1] == multisets[2]) {
        return Ok(Outcome::check("finite", false, || "circuit weight multisets differ".into(), instance));
    }
    let dets: Vec<Option<Rational>> = sides.iter().map(|s| det_product(s)).collect();
    if !(dets[0] == dets[1] && dets[1] == dets[2]) {
        return Ok(Outcome::check("determinant", false, || format!("determinant products differ: {dets:?}"), instance));
    }

    let shape = GraphShape {
        max_edges: cfg.shape.max_edges / 2,
        ..cfg.shape
    };
    let p = MeasureParam::LogDet;
    let (pf, pg, ph, lhs, fh, ghf) = sample(rng, |r| {
        let universe = r.gen_range(3..=8);
        let cs = carriers(r, 3, universe, 6);
        let ps: Vec<Project> = cs.iter().map(|c| project_on(r, c, &shape, 2, false)).collect();
        let [a, b, c]: [Project; 3] = ps.try_into().ok()?;
        let lhs = raw_pairing(&cut(&a, &b, &p).ok()?, &c, &p).ok()?;
        let fh = raw_pairing(&cut(&a, &c, &p).ok()?, &b, &p).ok()?;
        let ghf = raw_pairing(&cut(&b, &c, &p).ok()?, &a, &p).ok()?;
        Some((a, b, c, lhs, fh, ghf))
    })?;
    let case = match (finite, dets[0].is_some()) {
        (true, _) => "finite",
        (false, true) => "convergent",
        (false, false) => "divergent-measure",
    };
    Ok(Outcome::check(
        case,
        lhs == fh && fh == ghf,
        || format!("project pairings differ: {lhs} / {fh} / {ghf}"),
        || projects_json(&[("f", &pf), ("g", &pg), ("h", &ph)]),
    ))
}

/// `⟨f, a⊗b⟩ = ⟨f::a, b⟩` and the three-term geometric adjunction.
fn adjunction(rng: &mut ChaCha8Rng, cfg: &SuiteConfig) -> Result<Outcome> {
    let p = MeasureParam::LogDet;
    let shape = GraphShape {
        max_edges: cfg.shape.max_edges / 2,
        ..cfg.shape
    };
    let (f, a, b, lhs, rhs) = sample(rng, |r| {
        let (vf, va, vb) = disjoint_pair_with_overlap(r, 8, 6);
        let f = project_on(r, &vf, &shape, 2, false);
        let a = project_on(r, &va, &shape, 2, false);
        let b = project_on(r, &vb, &shape, 2, false);
        let lhs = raw_pairing(&f, &tensor(&a, &b).ok()?, &p).ok()?;
        let rhs = raw_pairing(&cut(&f, &a, &p).ok()?, &b, &p).ok()?;
        Some((f, a, b, lhs, rhs))
    })?;
    if lhs != rhs {
        return Ok(Outcome::check(
            "projects",
            false,
            || format!("⟨f, a⊗b⟩ = {lhs} but ⟨f::a, b⟩ = {rhs}"),
            || projects_json(&[("f", &f), ("a", &a), ("b", &b)]),
        ));
    }
    let fg = &f.body().slices()[0].1;
    let ga = &a.body().slices()[0].1;
    let gb = &b.body().slices()[0].1;
    let Ok(fa) = execute(fg, ga) else {
        return Ok(Outcome::pass("projects"));
    };
    let union = ga.union(gb)?;
    match (sorted_weights(&[(fg, &union)]), sorted_weights(&[(fg, ga), (&fa, gb)])) {
        (Some(x), Some(y)) => Ok(Outcome::check(
            "projects+circuits",
            x == y,
            || "C(F, G∪H) and C(F,G) ∪ C(F::G,H) differ".into(),
            || graphs_json(&[("f", fg), ("g", ga), ("h", gb)]),
        )),
        _ => Ok(Outcome::pass("projects")),
    }
}

/// Carriers `V^F`, `V^A`, `V^B` with `V^A ∩ V^B = ∅`.
fn disjoint_pair_with_overlap(
    rng: &mut ChaCha8Rng,
    universe: u64,
    max: usize,
) -> (BTreeSet<Vertex>, BTreeSet<Vertex>, BTreeSet<Vertex>) {
    loop {
        let (mut f, mut a, mut b) = (BTreeSet::new(), BTreeSet::new(), BTreeSet::new());
        for v in 0..rng.gen_range(2..=universe) {
            match rng.gen_range(0..5) {
                0 => f.insert(Vertex(v)),
                1 => a.insert(Vertex(v)),
                2 => b.insert(Vertex(v)),
                3 => f.insert(Vertex(v)) & a.insert(Vertex(v)),
                _ => f.insert(Vertex(v)) & b.insert(Vertex(v)),
            };
        }
        if [&f, &a, &b].iter().all(|c| c.len() <= max) {
            return (f, a, b);
        }
    }
}

fn random_carrier(rng: &mut ChaCha8Rng, max: u64) -> BTreeSet<Vertex> {
    vertex_range(0, rng.gen_range(1..=max))
}

fn nilpotency_agreement(rng: &mut ChaCha8Rng, cfg: &SuiteConfig) -> Result<Outcome> {
    let carrier = random_carrier(rng, 6);
    let a = project_on(rng, &carrier, &cfg.shape, 3, false);
    let b = project_on(rng, &carrier, &cfg.shape, 3, false);
    let by_nilpotency = orth_nilpotency(&a, &b)?;
    let by_measure = pairing(&a, &b, &MeasureParam::AlwaysInfinite)?.is_finite_nonzero();
    Ok(Outcome::check(
        if by_measure { "orthogonal" } else { "not-orthogonal" },
        by_nilpotency == by_measure,
        || format!("nilpotency says {by_nilpotency}, m = inf says {by_measure}"),
        || projects_json(&[("a", &a), ("b", &b)]),
    ))
}

/// Truncated circuit sum at [`ORACLE_LENGTH`] against `−log det(I − M)`.
fn determinant(rng: &mut ChaCha8Rng, cfg: &SuiteConfig) -> Result<Outcome> {
    let bound = ratio(9, 10);
    let (f, g) = sample(rng, |r| {
        let (f, g) = pair(r, &cfg.shape);
        spectral_radius_below(&circuit_matrix(&f, &g), &bound).then_some((f, g))
    })?;
    let exact = logdet_measure(&f, &g);
    let plug = Plugging::new(&f, &g);
    let instance = || graphs_json(&[("f", &f), ("g", &g)]);
    if !plug.has_cycle() {
        return Ok(Outcome::check(
            "nilpotent",
            exact.is_zero(),
            || format!("nilpotent plugging has measure {exact}"),
            instance,
        ));
    }
    if plug.circuits_complete(ORACLE_LENGTH) {
        let param = MeasureParam::Truncated {
            map: CircuitMap::NegLogOneMinus,
            max_len: ORACLE_LENGTH,
        };
        let truncated = measure_graphs(&f, &g, &param)?.value;
        return Ok(Outcome::check(
            "complete",
            exact == truncated,
            || format!("complete enumeration gives {truncated} but logdet is {exact}"),
            instance,
        ));
    }
    let err = (exact.to_f64() - truncated_circuit_sum(&plug, ORACLE_LENGTH, TRACE_HORIZON)).abs();
    let mut o = Outcome::check(
        "truncated",
        err <= cfg.tolerance,
        || format!("|logdet - truncated sum| = {err:e}"),
        instance,
    );
    o.error = err;
    Ok(o)
}

/// Closed walks longer than this are dropped by [`truncated_circuit_sum`].
pub const TRACE_HORIZON: usize = 2000;

/// `Σ −log(1 − w(c))` over the 1-circuits `c` of length at most `max_len`,
/// in floating point and without enumerating circuits.
///
/// Let `A_k` be the automaton matrix whose entries sum the `k`-th powers of
/// edge weights and `a_d(k)` the sum of `w(c)^k` over 1-circuits of length
/// `d`.  Then `tr(A_k^d) = Σ_{e | d} e · a_e(k d / e)`, which is solved for
/// `a_d(k)` by increasing `d`; the result is `Σ_{d ≤ max_len} Σ_k a_d(k) / k`
/// over `d·k ≤ horizon`.
pub fn truncated_circuit_sum(plug: &Plugging<'_>, max_len: usize, horizon: usize) -> f64 {
    let n = plug.states().len();
    let base: Vec<Vec<(usize, f64)>> = (0..n)
        .map(|s| {
            plug.transitions(s)
                .iter()
                .map(|&(e, t)| (t, crate::rational::to_f64(&plug.edge(e).weight)))
                .collect()
        })
        .collect();
    let max_len = max_len.min(horizon);
    // traces[d][k] = tr(A_k^d)
    let mut traces = vec![Vec::new(); max_len + 1];
    for k in 1..=horizon {
        let dmax = max_len.min(horizon / k);
        if dmax == 0 {
            break;
        }
        let mut ak = vec![vec![0.0; n]; n];
        for (s, ts) in base.iter().enumerate() {
            for &(t, w) in ts {
                ak[s][t] += w.powi(k as i32);
            }
        }
        let mut power = ak.clone();
        for d in 1..=dmax {
            if d > 1 {
                power = mat_mul(&power, &ak);
            }
            let tr: f64 = (0..n).map(|i| power[i][i]).sum();
            traces[d].push(tr);
        }
    }
    // a[d][k - 1] = a_d(k)
    let mut a: Vec<Vec<f64>> = vec![Vec::new(); max_len + 1];
    let mut total = 0.0;
    for d in 1..=max_len {
        for k in 1..=traces[d].len() {
            let mut v = traces[d][k - 1];
            for e in (1..d).filter(|e| d % e == 0) {
                v -= e as f64 * a[e][k * d / e - 1];
            }
            let v = (v / d as f64).max(0.0);
            a[d].push(v);
            total += v / k as f64;
        }
    }
    total
}

fn mat_mul(x: &[Vec<f64>], y: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = x.len();
    let mut out = vec![vec![0.0; n]; n];
    for i in 0..n {
        for (l, &xil) in x[i].iter().enumerate() {
            if xil != 0.0 {
                for j in 0..n {
                    out[i][j] += xil * y[l][j];
                }
            }
        }
    }
    out
}

fn counting_measure() -> MeasureParam {
    MeasureParam::Truncated {
        map: CircuitMap::Table(WeightTable::constant(ExtReal::rational(int(1)))),
        max_len: CIRCUIT_BOUND,
    }
}

/// Whether every slice pair has finitely many circuits, all short enough to
/// be enumerated.
fn finitely_many_circuits(a: &Project, b: &Project) -> bool {
    a.body().slices().iter().all(|(_, x)| {
        b.body()
            .slices()
            .iter()
            .all(|(_, y)| Plugging::new(x, y).circuits_complete(CIRCUIT_BOUND))
    })
}

fn rational_pairing(a: &Project, b: &Project, p: &MeasureParam) -> Option<Rational> {
    pairing(a, b, p).ok()?.as_rational().cloned()
}

/// The bilinear identity for `⟨a⊗b, a'⊗b'⟩`, and the `λ·0` shift that
/// cancels it (computed under the circuit-counting measure, where every
/// pairing is rational).
fn mix(rng: &mut ChaCha8Rng, cfg: &SuiteConfig) -> Result<Outcome> {
    let shape = GraphShape {
        max_edges: 6,
        ..cfg.shape
    };
    let count = counting_measure();
    let (a, b, a2, b2) = sample(rng, |r| {
        let va = vertex_range(0, r.gen_range(1..=4));
        let vb = vertex_range(10, 10 + r.gen_range(1..=4));
        let a = project_on(r, &va, &shape, 2, false);
        let b = project_on(r, &vb, &shape, 2, false);
        let a2 = project_on(r, &va, &shape, 2, false);
        let b2 = project_on(r, &vb, &shape, 2, false);
        if !(finitely_many_circuits(&a, &a2) && finitely_many_circuits(&b, &b2)) {
            return None;
        }
        rational_pairing(&a, &a2, &count)?;
        rational_pairing(&b, &b2, &count)?;
        Some((a, b, a2, b2))
    })?;
    let instance = || projects_json(&[("a", &a), ("b", &b), ("a'", &a2), ("b'", &b2)]);
    for p in [MeasureParam::LogDet, count.clone()] {
        let lhs = pairing(&tensor(&a, &b)?, &tensor(&a2, &b2)?, &p)?;
        let rhs = &pairing(&b, &b2, &p)?.scale(&(a.unit() * a2.unit()))
            + &pairing(&a, &a2, &p)?.scale(&(b.unit() * b2.unit()));
        if lhs != rhs {
            return Ok(Outcome::check("identity", false, || format!("{lhs} != {rhs}"), instance));
        }
    }
    let pa = rational_pairing(&a, &a2, &count).unwrap();
    let pb = rational_pairing(&b, &b2, &count).unwrap();
    let k = a2.unit() * &pb;
    let ub = b.unit() * b2.unit();
    let a2w = a2.wager().as_rational().cloned().unwrap_or_default();
    let denom = &k + &ub * &a2w;
    if denom.is_zero() {
        return Ok(Outcome::pass("no-shift"));
    }
    let lambda = -(a.unit() * &k + &ub * &pa) / denom;
    let c = if lambda.is_zero() {
        a.clone()
    } else {
        linear_combine(&a, &lambda, &Project::zero(a.carrier().iter().copied()))?
    };
    let shifted = pairing(&tensor(&c, &b)?, &tensor(&a2, &b2)?, &count)?;
    Ok(Outcome::check(
        "shifted",
        shifted.is_zero(),
        || format!("λ = {lambda} leaves the pairing at {shifted}"),
        instance,
    ))
}

/// `(f ⊗ 0_{V^C}) :: (a ⊗ c) = 1(C)·(f :: a)` for wager-free `c`.
fn weakening(rng: &mut ChaCha8Rng, cfg: &SuiteConfig) -> Result<Outcome> {
    let p = MeasureParam::LogDet;
    let shape = GraphShape {
        max_edges: 6,
        ..cfg.shape
    };
    let (f, a, c, lhs, rhs) = sample(rng, |r| {
        let va = vertex_range(0, r.gen_range(1..=3));
        let vb = vertex_range(10, 10 + r.gen_range(1..=3));
        let vc = vertex_range(20, 20 + r.gen_range(1..=3));
        let vf: BTreeSet<Vertex> = va.union(&vb).copied().collect();
        let f = project_on(r, &vf, &shape, 2, false);
        let a = project_on(r, &va, &shape, 2, false);
        let c = project_on(r, &vc, &shape, 3, true);
        let lhs = cut(&tensor(&f, &Project::zero(vc)).ok()?, &tensor(&a, &c).ok()?, &p).ok()?;
        let rhs = cut(&f, &a, &p).ok()?.scale(&c.unit());
        Some((f, a, c, lhs, rhs))
    })?;
    Ok(Outcome::check(
        if c.unit().is_zero() { "cancelled" } else { "scaled" },
        lhs.same_normal_form(&rhs),
        || format!("wagers {} vs {}", lhs.wager(), rhs.wager()),
        || projects_json(&[("f", &f), ("a", &a), ("c", &c)]),
    ))
}

/// Under `m ≡ ∞` wager-free pairings are `0` or `∞`, so no proper
/// behaviour certifies.
fn triviality(rng: &mut ChaCha8Rng, cfg: &SuiteConfig) -> Result<Outcome> {
    let p = MeasureParam::AlwaysInfinite;
    let carrier = random_carrier(rng, 6);
    let a = project_on(rng, &carrier, &cfg.shape, 3, true);
    let b = project_on(rng, &carrier, &cfg.shape, 3, true);
    let v = pairing(&a, &b, &p)?;
    let wb = WitnessedBehaviour::new(carrier, vec![a.clone()], vec![b.clone()], true)?;
    let certifies = wb.certify(&p)?;
    Ok(Outcome::check(
        if v.is_infinite() { "infinite" } else { "zero" },
        (v.is_zero() || v.is_infinite()) && !certifies,
        || format!("pairing {v}, certifies {certifies}"),
        || projects_json(&[("a", &a), ("b", &b)]),
    ))
}

fn loc(base: u64, copy: u8) -> Vertex {
    LocVertex::new(base, copy).encode()
}

/// Witnesses on `{0..k}`: two wager-free single-slice members and two
/// wager-free single-slice copolar projects.
fn random_object(rng: &mut ChaCha8Rng, k: u64, shape: &GraphShape) -> Result<WitnessedBehaviour> {
    let carrier = vertex_range(0, k);
    let draw = |rng: &mut ChaCha8Rng| Project::from_graph(graph_on(rng, &carrier, shape.max_edges, shape.max_den));
    let members = vec![draw(rng), draw(rng)];
    let copolar = vec![draw(rng), draw(rng)];
    WitnessedBehaviour::new(carrier.clone(), members, copolar, true)
}

/// A fax along a random bijection, or a combination of two.
fn random_morphism(rng: &mut ChaCha8Rng, k: u64) -> Result<Project> {
    let src = vertex_range(0, k);
    let one = |rng: &mut ChaCha8Rng| {
        let pi = crate::gen::bijection(rng, &src, &src);
        fax(&Delocation::from_pairs(pi.0.iter().map(|(x, y)| (loc(x.0, 0), loc(y.0, 1)))))
    };
    let f = one(rng)?;
    if rng.gen_bool(0.5) {
        let g = one(rng)?;
        linear_combine(&f, &crate::gen::coefficient(rng), &g)
    } else {
        Ok(f)
    }
}

/// Identity, associativity, product and coproduct laws up to equivalence
/// against morphism tests.
fn category(rng: &mut ChaCha8Rng, cfg: &SuiteConfig) -> Result<Outcome> {
    let p = MeasureParam::LogDet;
    let k = rng.gen_range(1..=3);
    let shape = GraphShape {
        max_edges: 3,
        ..cfg.shape
    };
    let [a, b, c, d]: [WitnessedBehaviour; 4] = (0..4)
        .map(|_| random_object(rng, k, &shape))
        .collect::<Result<Vec<_>>>()?
        .try_into()
        .unwrap();
    let [f, g, h, g2]: [Project; 4] = (0..4)
        .map(|_| random_morphism(rng, k))
        .collect::<Result<Vec<_>>>()?
        .try_into()
        .unwrap();
    let x = vertex_range(0, k);
    let ab = morphism_tests(&a, &b)?;
    let ac = morphism_tests(&a, &c)?;
    let ad = morphism_tests(&a, &d)?;
    let bd = morphism_tests(&b, &d)?;
    let cd = morphism_tests(&c, &d)?;
    let id = identity(&x);
    let fg = compose(&f, &g, &p)?;
    let gh = compose(&g, &h, &p)?;
    let paired = with_morphisms(&f, &g2, &p)?;
    let copaired = copair_morphisms(&f, &g2)?;
    let laws: [(&str, Project, &Project, &[Project]); 7] = [
        ("right identity", compose(&f, &id, &p)?, &f, &ab),
        ("left identity", compose(&id, &f, &p)?, &f, &ab),
        ("associativity", compose(&fg, &h, &p)?, &compose(&f, &gh, &p)?, &ad),
        ("first projection", compose(&paired, &projection_left(&x, &x)?, &p)?, &f, &ab),
        ("second projection", compose(&paired, &projection_right(&x, &x)?, &p)?, &g2, &ac),
        ("first injection", compose(&injection_left(&x, &x)?, &copaired, &p)?, &f, &bd),
        ("second injection", compose(&injection_right(&x, &x)?, &copaired, &p)?, &g2, &cd),
    ];
    for (name, lhs, rhs, tests) in laws {
        if !equiv(&lhs, rhs, tests, &p)? {
            return Ok(Outcome::check(
                "laws",
                false,
                || format!("{name} fails"),
                || projects_json(&[("f", &f), ("g", &g), ("h", &h), ("g2", &g2)]),
            ));
        }
    }
    Ok(Outcome::pass("laws"))
}
