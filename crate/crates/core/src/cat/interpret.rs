//! Interpretation of MALL proofs as projects, and the witnesses used to
//! certify them.
//!
//! The `i`-th formula of a sequent occupies slot `i`; an atom occurrence at
//! heap position `h` of that formula (root 1, children `2h`, `2h+1`) is the
//! vertex `64·h + i`.  Slot 63 is reserved for the formula being cut.

use std::collections::{BTreeMap, BTreeSet};

use crate::cat::formula::Formula;
use crate::cat::proof::Proof;
use crate::conduct::{orthogonality_grid, WitnessedBehaviour};
use crate::error::{Error, Result};
use crate::graph::{Edge, Vertex, WeightedGraph};
use crate::measure::MeasureParam;
use crate::project::{cut, delocate, fax, lift, orthogonal, sum, tensor, Delocation, Project, SlicedGraph};
use crate::rational::{int, ratio};
use crate::scalar::ExtReal;

/// Longest sequent the addressing scheme supports.
pub const MAX_FORMULAS: usize = 63;
const CUT_SLOT: usize = 63;
const SLOTS: u64 = 64;
const MAX_DEPTH: u32 = 50;
/// Members and tests kept per formula node.
pub const MAX_WITNESSES: usize = 4;

pub fn addr(h: u64, slot: usize) -> Vertex {
    Vertex(h * SLOTS + slot as u64)
}

pub fn unaddr(v: Vertex) -> (u64, usize) {
    (v.0 / SLOTS, (v.0 % SLOTS) as usize)
}

/// Position `h` of `A` seen inside `A ∘ B`.
fn embed_left(h: u64) -> u64 {
    h + (1 << h.ilog2())
}

/// Position `h` of `B` seen inside `A ∘ B`.
fn embed_right(h: u64) -> u64 {
    h + (2 << h.ilog2())
}

fn remap(p: &Project, f: impl Fn(u64, usize) -> (u64, usize)) -> Result<Project> {
    delocate(
        p,
        &Delocation::from_fn(p.carrier(), |v| {
            let (h, i) = unaddr(v);
            let (h2, i2) = f(h, i);
            addr(h2, i2)
        }),
    )
}

pub fn formula_carrier(f: &Formula, slot: usize) -> BTreeSet<Vertex> {
    f.atom_positions().into_iter().map(|h| addr(h, slot)).collect()
}

pub fn sequent_carrier(seq: &[Formula]) -> BTreeSet<Vertex> {
    seq.iter()
        .enumerate()
        .flat_map(|(i, f)| formula_carrier(f, i))
        .collect()
}

fn depth(f: &Formula) -> u32 {
    match f.children() {
        Some((a, b)) => 1 + depth(a).max(depth(b)),
        None => 0,
    }
}

/// Atom names bound to single-vertex witnessed behaviours.
#[derive(Clone, Debug)]
pub struct Valuation {
    templates: BTreeMap<String, WitnessedBehaviour>,
    default: Option<WitnessedBehaviour>,
}

impl Default for Valuation {
    fn default() -> Self {
        Valuation {
            templates: BTreeMap::new(),
            default: Some(Valuation::default_template()),
        }
    }
}

fn loop_project(v: u64, w: crate::Rational) -> Project {
    Project::from_graph(WeightedGraph::new([Vertex(v)], vec![Edge::new(v, v, w)]).expect("valid loop"))
}

impl Valuation {
    /// A valuation binding nothing: unbound atoms are errors.
    pub fn strict() -> Self {
        Valuation {
            templates: BTreeMap::new(),
            default: None,
        }
    }

    /// Loops of weight `1/2`, `1/3` against loops of weight `1/2`, `2/3`.
    pub fn default_template() -> WitnessedBehaviour {
        let members = vec![loop_project(0, ratio(1, 2)), loop_project(0, ratio(1, 3))];
        let copolar = vec![loop_project(0, ratio(1, 2)), loop_project(0, ratio(2, 3))];
        WitnessedBehaviour::new([Vertex(0)].into(), members, copolar, true).expect("single carrier")
    }

    pub fn bind(mut self, name: &str, template: WitnessedBehaviour) -> Result<Self> {
        if template.carrier.len() != 1 {
            return Err(Error::Invalid(format!("template for {name} must have exactly one vertex")));
        }
        self.templates.insert(name.to_string(), template);
        Ok(self)
    }

    pub fn template(&self, name: &str) -> Result<&WitnessedBehaviour> {
        self.templates
            .get(name)
            .or(self.default.as_ref())
            .ok_or_else(|| Error::UnboundAtom(name.to_string()))
    }

    pub fn bindings(&self) -> &BTreeMap<String, WitnessedBehaviour> {
        &self.templates
    }
}

/// `⟦π⟧` on the carrier of its conclusion.  Convergence of every cut is
/// required.
pub fn interpret(proof: &Proof, val: &Valuation, p: &MeasureParam) -> Result<Project> {
    proof.conclusion()?;
    for name in proof.formulas().iter().flat_map(Formula::atom_names) {
        val.template(&name)?;
    }
    Ok(build(proof, p)?.0)
}

fn build(proof: &Proof, p: &MeasureParam) -> Result<(Project, Vec<Formula>)> {
    use Proof::*;
    let both = |x: &Proof, y: &Proof| {
        let (a, b) = rayon::join(|| build(x, p), || build(y, p));
        Ok::<_, Error>((a?, b?))
    };
    let (proj, seq) = match proof {
        Ax(a) => {
            let phi = Delocation::from_pairs(a.atom_positions().into_iter().map(|h| (addr(h, 0), addr(h, 1))));
            (fax(&phi)?, vec![a.dual(), a.clone()])
        }
        Cut(x, y) => {
            let ((px, gx), (py, gy)) = both(x, y)?;
            let (n, m) = (gx.len() - 1, gy.len() - 1);
            let px = remap(&px, |h, i| if i == n { (h, CUT_SLOT) } else { (h, i) })?;
            let py = remap(&py, |h, j| if j == m { (h, CUT_SLOT) } else { (h, n + j) })?;
            let seq = gx[..n].iter().chain(&gy[..m]).cloned().collect();
            (cut(&px, &py, p)?, seq)
        }
        Tensor(x, y) => {
            let ((px, gx), (py, gy)) = both(x, y)?;
            let (n, m) = (gx.len() - 1, gy.len() - 1);
            let px = remap(&px, |h, i| if i == n { (embed_left(h), n + m) } else { (h, i) })?;
            let py = remap(&py, |h, j| if j == m { (embed_right(h), n + m) } else { (h, n + j) })?;
            let mut seq: Vec<Formula> = gx[..n].iter().chain(&gy[..m]).cloned().collect();
            seq.push(Formula::tensor(gx[n].clone(), gy[m].clone()));
            (tensor(&px, &py)?, seq)
        }
        Par(x) => {
            let (px, mut g) = build(x, p)?;
            let k = g.len() - 2;
            let px = remap(&px, |h, i| match i {
                _ if i == k => (embed_left(h), k),
                _ if i == k + 1 => (embed_right(h), k),
                _ => (h, i),
            })?;
            let b = g.pop().unwrap();
            let a = g.pop().unwrap();
            g.push(Formula::par(a, b));
            (px, g)
        }
        With(x, y) => {
            let ((px, mut gx), (py, mut gy)) = both(x, y)?;
            let n = gx.len() - 1;
            let (a, b) = (gx.pop().unwrap(), gy.pop().unwrap());
            let px = remap(&px, |h, i| if i == n { (embed_left(h), n) } else { (h, i) })?;
            let py = remap(&py, |h, i| if i == n { (embed_right(h), n) } else { (h, i) })?;
            let a_part = side_carrier(&a, n, embed_left);
            let b_part = side_carrier(&b, n, embed_right);
            gx.push(Formula::with(a, b));
            (sum(&lift(&px, &b_part)?, &lift(&py, &a_part)?)?, gx)
        }
        PlusL(b, x) => {
            let (px, mut g) = build(x, p)?;
            let n = g.len() - 1;
            let a = g.pop().unwrap();
            let px = remap(&px, |h, i| if i == n { (embed_left(h), n) } else { (h, i) })?;
            let dead = Project::zero(side_carrier(b, n, embed_right));
            g.push(Formula::plus(a, b.clone()));
            (tensor(&px, &dead)?, g)
        }
        PlusR(a, x) => {
            let (px, mut g) = build(x, p)?;
            let n = g.len() - 1;
            let b = g.pop().unwrap();
            let px = remap(&px, |h, i| if i == n { (embed_right(h), n) } else { (h, i) })?;
            let dead = Project::zero(side_carrier(a, n, embed_left));
            g.push(Formula::plus(a.clone(), b));
            (tensor(&px, &dead)?, g)
        }
        Top(g) => {
            let mut seq = g.clone();
            seq.push(Formula::Top);
            let carrier = sequent_carrier(&seq);
            (Project::new(ExtReal::zero(), SlicedGraph::empty(carrier)), seq)
        }
        One => (Project::zero([]), vec![Formula::One]),
        Bot(x) => {
            let (px, mut g) = build(x, p)?;
            g.push(Formula::Bot);
            (px, g)
        }
        Ex(perm, x) => {
            let (px, g) = build(x, p)?;
            let mut inv = vec![0; perm.len()];
            for (k, &i) in perm.iter().enumerate() {
                inv[i] = k;
            }
            let px = remap(&px, |h, i| (h, inv[i]))?;
            (px, perm.iter().map(|&i| g[i].clone()).collect())
        }
    };
    if let Some(f) = seq.iter().find(|f| depth(f) > MAX_DEPTH) {
        return Err(Error::IllFormedProof(format!("formula too deep: {f}")));
    }
    Ok((proj, seq))
}

fn side_carrier(f: &Formula, slot: usize, embed: fn(u64) -> u64) -> BTreeSet<Vertex> {
    f.atom_positions().into_iter().map(|h| addr(embed(h), slot)).collect()
}

/// `(1, 1·∅)`.
fn unit_wager() -> Project {
    Project::new(ExtReal::rational(int(1)), SlicedGraph::single(WeightedGraph::empty([])))
}

fn empty_sliced(carrier: BTreeSet<Vertex>) -> Project {
    Project::new(ExtReal::zero(), SlicedGraph::empty(carrier))
}

type Witnesses = (Vec<Project>, Vec<Project>);

fn witnesses(f: &Formula, val: &Valuation, p: &MeasureParam) -> Result<Witnesses> {
    let atom = |name: &str| -> Result<Witnesses> {
        let t = val.template(name)?;
        let v = *t.carrier.iter().next().ok_or_else(|| Error::Invalid(format!("empty template for {name}")))?;
        let phi = Delocation::from_pairs([(v, addr(1, 0))]);
        let place = |xs: &[Project]| xs.iter().map(|x| delocate(x, &phi)).collect::<Result<Vec<_>>>();
        Ok((place(&t.members)?, place(&t.copolar)?))
    };
    let (members, tests) = match f {
        Formula::Atom(x) => atom(x)?,
        Formula::Dual(x) => {
            let (m, t) = atom(x)?;
            (t, m)
        }
        Formula::Top => (vec![empty_sliced(BTreeSet::new())], vec![]),
        Formula::Zero => (vec![], vec![empty_sliced(BTreeSet::new())]),
        Formula::One => (vec![Project::zero([])], vec![unit_wager()]),
        Formula::Bot => (vec![unit_wager()], vec![Project::zero([])]),
        Formula::Tensor(a, b) | Formula::Par(a, b) | Formula::With(a, b) | Formula::Plus(a, b) => {
            let shift = |xs: Vec<Project>, e: fn(u64) -> u64| {
                xs.iter()
                    .map(|x| remap(x, |h, i| (e(h), i)))
                    .collect::<Result<Vec<_>>>()
            };
            let (am, at) = witnesses(a, val, p)?;
            let (bm, bt) = witnesses(b, val, p)?;
            let (am, at) = (shift(am, embed_left)?, shift(at, embed_left)?);
            let (bm, bt) = (shift(bm, embed_right)?, shift(bt, embed_right)?);
            let ac = side_carrier(a, 0, embed_left);
            let bc = side_carrier(b, 0, embed_right);
            let pairs = |xs: &[Project], ys: &[Project], op: &dyn Fn(&Project, &Project) -> Result<Project>| {
                let mut out = Vec::new();
                for x in xs {
                    for y in ys {
                        out.push(op(x, y)?);
                    }
                }
                Ok::<_, Error>(out)
            };
            let lifted = |xs: &[Project], v: &BTreeSet<Vertex>| xs.iter().map(|x| lift(x, v)).collect::<Result<Vec<_>>>();
            let both_sides = |x: &Project, y: &Project| sum(&lift(x, &bc)?, &lift(y, &ac)?);
            match f {
                Formula::Tensor(..) | Formula::Par(..) => (pairs(&am, &bm, &tensor)?, pairs(&at, &bt, &tensor)?),
                Formula::With(..) => {
                    let mut tests = lifted(&at, &bc)?;
                    tests.extend(lifted(&bt, &ac)?);
                    (pairs(&am, &bm, &both_sides)?, tests)
                }
                _ => {
                    let mut members = lifted(&am, &bc)?;
                    members.extend(lifted(&bm, &ac)?);
                    (members, pairs(&at, &bt, &both_sides)?)
                }
            }
        }
    };
    prune(members, tests, p)
}

/// Keeps at most [`MAX_WITNESSES`] members, and as many tests orthogonal to
/// all of them.
fn prune(mut members: Vec<Project>, tests: Vec<Project>, p: &MeasureParam) -> Result<Witnesses> {
    members.truncate(MAX_WITNESSES);
    let mut kept = Vec::new();
    for t in tests {
        if kept.len() == MAX_WITNESSES {
            break;
        }
        if members.iter().map(|m| orthogonal(m, &t, p)).collect::<Result<Vec<_>>>()?.into_iter().all(|b| b) {
            kept.push(t);
        }
    }
    Ok((members, kept))
}

/// The witnessed behaviour of `f` placed at `slot`.
pub fn formula_behaviour(f: &Formula, slot: usize, val: &Valuation, p: &MeasureParam) -> Result<WitnessedBehaviour> {
    let (members, tests) = witnesses(f, val, p)?;
    let to_slot = |xs: Vec<Project>| xs.iter().map(|x| remap(x, |h, _| (h, slot))).collect::<Result<Vec<_>>>();
    WitnessedBehaviour::new(
        formula_carrier(f, slot),
        to_slot(members)?,
        to_slot(tests)?,
        !f.has_multiplicative_unit(),
    )
}

/// Tests for a proof of `⊢ Γ`: tensors of one test per formula of `Γ`.
pub fn conclusion_tests(seq: &[Formula], val: &Valuation, p: &MeasureParam) -> Result<Vec<Project>> {
    let mut acc = vec![Project::zero([])];
    for (i, f) in seq.iter().enumerate() {
        let wb = formula_behaviour(f, i, val, p)?;
        let mut next = Vec::with_capacity(acc.len() * wb.copolar.len());
        for t in &acc {
            for u in &wb.copolar {
                next.push(tensor(t, u)?);
            }
        }
        acc = next;
    }
    Ok(acc)
}

/// An interpreted proof with its pairings against the conclusion tests.
#[derive(Clone, Debug)]
pub struct InterpretReport {
    pub conclusion: Vec<Formula>,
    pub project: Project,
    pub pairings: Vec<ExtReal>,
    pub failure: Option<String>,
}

impl InterpretReport {
    pub fn certified(&self) -> bool {
        self.failure.is_none()
    }
}

pub fn certify(proof: &Proof, val: &Valuation, p: &MeasureParam) -> Result<InterpretReport> {
    let conclusion = proof.conclusion()?;
    let project = interpret(proof, val, p)?;
    let tests = conclusion_tests(&conclusion, val, p)?;
    let grid = orthogonality_grid(std::slice::from_ref(&project), &tests, p)?;
    let failure = grid
        .iter()
        .find(|(_, _, v)| !v.is_finite_nonzero())
        .map(|(_, j, v)| format!("conclusion test {j} pairs to {v}"));
    Ok(InterpretReport {
        conclusion,
        project,
        pairings: grid.into_iter().map(|(_, _, v)| v).collect(),
        failure,
    })
}

/// `⟦π⟧ ≅ ⟦π'⟧` against the conclusion tests of `π`.
pub fn reduction_equiv(proof: &Proof, reduct: &Proof, val: &Valuation, p: &MeasureParam) -> Result<bool> {
    let (g, g2) = (proof.conclusion()?, reduct.conclusion()?);
    if g != g2 {
        return Err(Error::IllFormedProof("reduct proves a different sequent".into()));
    }
    let a = interpret(proof, val, p)?;
    let b = interpret(reduct, val, p)?;
    crate::conduct::equiv(&a, &b, &conclusion_tests(&g, val, p)?, p)
}

/// Rejects proofs mentioning the multiplicative units.
pub fn check_behaviours(proof: &Proof) -> Result<()> {
    let conclusion = proof.conclusion()?;
    let uses_units = proof.rules().iter().any(|r| matches!(*r, "one" | "bot"))
        || proof.formulas().iter().chain(&conclusion).any(Formula::has_multiplicative_unit);
    if uses_units {
        return Err(Error::UnitNotBehaviour);
    }
    Ok(())
}
