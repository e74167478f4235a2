//! Finitely witnessed conducts and behaviours, the connectives at the witness
//! level, observational equivalence and the additive decompositions.
//!
//! A conduct is a bi-orthogonally closed set of projects, which is never
//! finite.  Here it is approximated by a finite set of members together with
//! a finite set of copolar witnesses (elements of its orthogonal); every
//! claim is checked against those witnesses.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::Vertex;
use crate::measure::MeasureParam;
use crate::project::{cut, fax, lift, pairing, sum, tensor, Delocation, Project};
use crate::rational::ratio;
use crate::scalar::ExtReal;
use crate::Rational;

#[derive(Clone, Debug, PartialEq)]
pub struct WitnessedBehaviour {
    pub carrier: BTreeSet<Vertex>,
    pub members: Vec<Project>,
    pub copolar: Vec<Project>,
    pub proper: bool,
}

/// Where a witnessed conduct falls in the behaviour trichotomy.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BehaviourKind {
    /// Nonempty with nonempty orthogonal; all witnesses wager-free.
    Proper,
    /// No members: the empty behaviour `0_V`.
    Empty,
    /// No copolar witnesses: the full behaviour `T_V`.
    Full,
}

/// Outcome of checking a witnessed behaviour.
#[derive(Clone, Debug, PartialEq)]
pub struct Certification {
    pub orthogonal: bool,
    pub wager_free: bool,
    pub closed: bool,
    pub failure: Option<String>,
}

impl Certification {
    pub fn ok(&self) -> bool {
        self.orthogonal && self.wager_free && self.closed
    }
}

/// The λ grid used for closure spot checks.
pub fn closure_grid() -> Vec<Rational> {
    [(1, 1), (-1, 1), (2, 1), (-2, 1), (1, 2), (-1, 2)]
        .into_iter()
        .map(|(n, d)| ratio(n, d))
        .collect()
}

impl WitnessedBehaviour {
    pub fn new(carrier: BTreeSet<Vertex>, members: Vec<Project>, copolar: Vec<Project>, proper: bool) -> Result<Self> {
        for p in members.iter().chain(&copolar) {
            if *p.carrier() != carrier {
                return Err(Error::CarrierMismatch {
                    left: carrier.clone(),
                    right: p.carrier().clone(),
                });
            }
        }
        Ok(WitnessedBehaviour {
            carrier,
            members,
            copolar,
            proper,
        })
    }

    /// Members and copolar witnesses exchanged: the witnessed orthogonal.
    pub fn dual(&self) -> WitnessedBehaviour {
        WitnessedBehaviour {
            carrier: self.carrier.clone(),
            members: self.copolar.clone(),
            copolar: self.members.clone(),
            proper: self.proper,
        }
    }

    pub fn kind(&self) -> Option<BehaviourKind> {
        if self.members.is_empty() {
            Some(BehaviourKind::Empty)
        } else if self.copolar.is_empty() {
            Some(BehaviourKind::Full)
        } else if self.members.iter().chain(&self.copolar).all(Project::is_wager_free) {
            Some(BehaviourKind::Proper)
        } else {
            None
        }
    }

    pub fn certify(&self, p: &MeasureParam) -> Result<bool> {
        Ok(self.certification(p)?.ok())
    }

    pub fn certification(&self, p: &MeasureParam) -> Result<Certification> {
        let mut report = Certification {
            orthogonal: true,
            wager_free: true,
            closed: true,
            failure: None,
        };
        let grid = orthogonality_grid(&self.members, &self.copolar, p)?;
        if let Some((i, j, v)) = grid.into_iter().find(|(_, _, v)| !v.is_finite_nonzero()) {
            report.orthogonal = false;
            report.failure = Some(format!("member {i} and copolar witness {j} pair to {v}"));
            return Ok(report);
        }
        if !self.proper {
            return Ok(report);
        }
        if let Some(k) = self.members.iter().chain(&self.copolar).position(|x| !x.is_wager_free()) {
            report.wager_free = false;
            report.failure = Some(format!("witness {k} of a proper behaviour has a nonzero wager"));
            return Ok(report);
        }
        let zero = Project::zero(self.carrier.iter().copied());
        for lambda in closure_grid() {
            let shifted: Vec<Project> = self
                .members
                .iter()
                .map(|a| crate::project::linear_combine(a, &lambda, &zero))
                .collect::<Result<_>>()?;
            let grid = orthogonality_grid(&shifted, &self.copolar, p)?;
            if let Some((i, j, v)) = grid.into_iter().find(|(_, _, v)| !v.is_finite_nonzero()) {
                report.closed = false;
                report.failure = Some(format!("member {i} shifted by {lambda}·0 pairs to {v} with copolar witness {j}"));
                return Ok(report);
            }
        }
        Ok(report)
    }
}

/// All pairings `⟨mᵢ, cⱼ⟩`, evaluated in parallel and returned in order.
pub fn orthogonality_grid(members: &[Project], copolar: &[Project], p: &MeasureParam) -> Result<Vec<(usize, usize, ExtReal)>> {
    let pairs: Vec<(usize, usize)> = (0..members.len())
        .flat_map(|i| (0..copolar.len()).map(move |j| (i, j)))
        .collect();
    pairs
        .par_iter()
        .map(|&(i, j)| Ok((i, j, pairing(&members[i], &copolar[j], p)?)))
        .collect()
}

/// `a ≅ b` relative to the tests `E`: equal pairings with every test.
pub fn equiv(a: &Project, b: &Project, tests: &[Project], p: &MeasureParam) -> Result<bool> {
    a.body().check_same_carrier(b.body())?;
    for e in tests {
        if pairing(a, e, p)? != pairing(b, e, p)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Witnessed `A ⊗ B`: pairwise tensors of members.  The copolar side is
/// whatever the caller supplies; the flag reports that none was given.
pub fn tensor_behaviour(
    a: &WitnessedBehaviour,
    b: &WitnessedBehaviour,
    copolar: Option<Vec<Project>>,
) -> Result<(WitnessedBehaviour, bool)> {
    let overlap: BTreeSet<Vertex> = a.carrier.intersection(&b.carrier).copied().collect();
    if !overlap.is_empty() {
        return Err(Error::CarrierOverlap(overlap));
    }
    let mut members = Vec::with_capacity(a.members.len() * b.members.len());
    for x in &a.members {
        for y in &b.members {
            members.push(tensor(x, y)?);
        }
    }
    let missing = copolar.is_none();
    let carrier = a.carrier.union(&b.carrier).copied().collect();
    let wb = WitnessedBehaviour::new(carrier, members, copolar.unwrap_or_default(), a.proper && b.proper)?;
    Ok((wb, missing))
}

fn check_split(f: &Project, a: &WitnessedBehaviour, b: &WitnessedBehaviour) -> Result<()> {
    let overlap: BTreeSet<Vertex> = a.carrier.intersection(&b.carrier).copied().collect();
    if !overlap.is_empty() {
        return Err(Error::CarrierOverlap(overlap));
    }
    let whole: BTreeSet<Vertex> = a.carrier.union(&b.carrier).copied().collect();
    if *f.carrier() != whole {
        return Err(Error::CarrierMismatch {
            left: f.carrier().clone(),
            right: whole,
        });
    }
    Ok(())
}

/// The tests defining `A & B`: `a'↑V^B` and `b'↑V^A`.
pub fn with_tests(a: &WitnessedBehaviour, b: &WitnessedBehaviour) -> Result<Vec<Project>> {
    let mut out = Vec::new();
    for x in &a.copolar {
        out.push(lift(x, &b.carrier)?);
    }
    for y in &b.copolar {
        out.push(lift(y, &a.carrier)?);
    }
    Ok(out)
}

/// `f ∈ A & B` relative to the witnesses.
pub fn with_membership(f: &Project, a: &WitnessedBehaviour, b: &WitnessedBehaviour, p: &MeasureParam) -> Result<bool> {
    check_split(f, a, b)?;
    for t in with_tests(a, b)? {
        if !pairing(f, &t, p)?.is_finite_nonzero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Splits `f ∈ A & B` into `f::0_{V^B} ∈ A` and `f::0_{V^A} ∈ B`, checking
/// that `f ≅ g↑V^B + h↑V^A` against the defining tests.
pub fn with_decompose(
    f: &Project,
    a: &WitnessedBehaviour,
    b: &WitnessedBehaviour,
    p: &MeasureParam,
) -> Result<(Project, Project)> {
    check_split(f, a, b)?;
    let g = cut(f, &Project::zero(b.carrier.iter().copied()), p)?;
    let h = cut(f, &Project::zero(a.carrier.iter().copied()), p)?;
    let recombined = sum(&lift(&g, &b.carrier)?, &lift(&h, &a.carrier)?)?;
    if !equiv(f, &recombined, &with_tests(a, b)?, p)? {
        return Err(Error::DecompositionMismatch);
    }
    Ok((g, h))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// For `f ∈ A ⊕ B`: the side `f` lives on, detected by which of
/// `⟨f, a0↑V^B⟩`, `⟨f, b0↑V^A⟩` vanishes, and `f` with the other side cut
/// away and lifted back.
pub fn oplus_side(
    f: &Project,
    a0: &Project,
    b0: &Project,
    p: &MeasureParam,
) -> Result<(Side, Project)> {
    let (va, vb) = (a0.carrier().clone(), b0.carrier().clone());
    let ta = lift(a0, &vb)?;
    let tb = lift(b0, &va)?;
    let pa = pairing(f, &ta, p)?;
    let pb = pairing(f, &tb, p)?;
    let (side, dead) = match (pa.is_zero(), pb.is_zero()) {
        (false, true) => (Side::Left, vb),
        (true, false) => (Side::Right, va),
        _ => return Err(Error::AmbiguousSide),
    };
    let kept = cut(f, &Project::zero(dead.iter().copied()), p)?;
    let normalized = lift(&kept, &dead)?;
    let tests = [ta.clone(), tb.clone(), sum(&ta, &tb)?];
    if !equiv(f, &normalized, &tests, p)? {
        return Err(Error::DecompositionMismatch);
    }
    Ok((side, normalized))
}

/// [`oplus_side`] against every pair of copolar witnesses of `A` and `B`,
/// requiring a consistent side.
pub fn oplus_side_in(
    f: &Project,
    a: &WitnessedBehaviour,
    b: &WitnessedBehaviour,
    p: &MeasureParam,
) -> Result<(Side, Project)> {
    check_split(f, a, b)?;
    if a.copolar.is_empty() || b.copolar.is_empty() {
        return Err(Error::InsufficientWitnesses);
    }
    let mut found: Option<(Side, Project)> = None;
    for a0 in &a.copolar {
        for b0 in &b.copolar {
            let (side, n) = oplus_side(f, a0, b0, p)?;
            match &found {
                Some((s, _)) if *s != side => return Err(Error::AmbiguousSide),
                Some(_) => {}
                None => found = Some((side, n)),
            }
        }
    }
    Ok(found.unwrap())
}

/// The tests defining `A ⊕ B`: `a'↑V^B + b'↑V^A`.
pub fn oplus_tests(a: &WitnessedBehaviour, b: &WitnessedBehaviour) -> Result<Vec<Project>> {
    let mut out = Vec::new();
    for x in &a.copolar {
        for y in &b.copolar {
            out.push(sum(&lift(x, &b.carrier)?, &lift(y, &a.carrier)?)?);
        }
    }
    Ok(out)
}

/// The two summands of the distributivity project:
/// `f1 = Fax_φ ⊗ Fax_θ ⊗ 0_{ψ(V^A) ∪ ρ(V^C)} ⊗ 0_{V^C}` and
/// `f2 = Fax_ψ ⊗ Fax_ρ ⊗ 0_{φ(V^A) ∪ θ(V^B)} ⊗ 0_{V^B}`, where `φ, ψ`
/// delocate `V^A`, `θ` delocates `V^B` and `ρ` delocates `V^C`.
pub fn distr_parts(phi: &Delocation, psi: &Delocation, theta: &Delocation, rho: &Delocation) -> Result<(Project, Project)> {
    if phi.domain() != psi.domain() {
        return Err(Error::CarrierMismatch {
            left: phi.domain(),
            right: psi.domain(),
        });
    }
    let union = |x: BTreeSet<Vertex>, y: BTreeSet<Vertex>| -> BTreeSet<Vertex> { x.union(&y).copied().collect() };
    let f1 = tensor(
        &tensor(&fax(phi)?, &fax(theta)?)?,
        &tensor(
            &Project::zero(union(psi.image(), rho.image())),
            &Project::zero(rho.domain()),
        )?,
    )?;
    let f2 = tensor(
        &tensor(&fax(psi)?, &fax(rho)?)?,
        &tensor(
            &Project::zero(union(phi.image(), theta.image())),
            &Project::zero(theta.domain()),
        )?,
    )?;
    Ok((f1, f2))
}

/// The distributivity project `f1 + f2` (see [`distr_parts`]).
pub fn build_distr(phi: &Delocation, psi: &Delocation, theta: &Delocation, rho: &Delocation) -> Result<Project> {
    let (f1, f2) = distr_parts(phi, psi, theta, rho)?;
    sum(&f1, &f2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Edge, WeightedGraph};
    use crate::project::{linear_combine, SlicedGraph};
    use crate::rational::int;

    fn loop_on(v: u64, n: i64, d: i64) -> Project {
        Project::from_graph(WeightedGraph::new([Vertex(v)], vec![Edge::new(v, v, ratio(n, d))]).unwrap())
    }

    fn atom(v: u64) -> WitnessedBehaviour {
        WitnessedBehaviour::new(
            [Vertex(v)].into(),
            vec![loop_on(v, 1, 2), loop_on(v, 1, 3)],
            vec![loop_on(v, 1, 2), loop_on(v, 2, 3)],
            true,
        )
        .unwrap()
    }

    fn wagered(w: i64, v: u64) -> Project {
        Project::new(ExtReal::rational(int(w)), SlicedGraph::single(WeightedGraph::empty([Vertex(v)])))
    }

    #[test]
    fn certification_examples() {
        let p = MeasureParam::LogDet;
        let c = WitnessedBehaviour::new([Vertex(1)].into(), vec![wagered(2, 1)], vec![wagered(3, 1)], false).unwrap();
        assert!(c.certify(&p).unwrap());
        let mut proper = c.clone();
        proper.proper = true;
        assert!(!proper.certify(&p).unwrap());
        let z = WitnessedBehaviour::new([Vertex(1)].into(), vec![wagered(0, 1)], vec![wagered(0, 1)], false).unwrap();
        assert!(!z.certify(&p).unwrap());
        assert!(atom(1).certify(&p).unwrap());
        assert_eq!(atom(1).kind(), Some(BehaviourKind::Proper));
        assert!(!atom(1).certify(&MeasureParam::AlwaysInfinite).unwrap());
    }

    #[test]
    fn equivalence_is_relative_to_tests() {
        let p = MeasureParam::LogDet;
        let a = loop_on(1, 1, 2);
        let b = loop_on(1, 1, 3);
        assert!(equiv(&a, &a, &atom(1).copolar, &p).unwrap());
        assert!(equiv(&a, &b, &[], &p).unwrap());
        assert!(!equiv(&a, &b, &atom(1).copolar, &p).unwrap());
    }

    #[test]
    fn tensor_of_behaviours() {
        let (t, missing) = tensor_behaviour(&atom(1), &atom(2), None).unwrap();
        assert!(missing);
        assert_eq!(t.members.len(), 4);
        assert!(tensor_behaviour(&atom(1), &atom(1), None).is_err());
    }

    #[test]
    fn with_decomposition_of_a_lifted_sum() {
        let p = MeasureParam::LogDet;
        let (a, b) = (atom(1), atom(2));
        let f = sum(&lift(&a.members[0], &b.carrier).unwrap(), &lift(&b.members[1], &a.carrier).unwrap()).unwrap();
        assert!(with_membership(&f, &a, &b, &p).unwrap());
        let (g, h) = with_decompose(&f, &a, &b, &p).unwrap();
        assert!(equiv(&g, &a.members[0], &a.copolar, &p).unwrap());
        assert!(equiv(&h, &b.members[1], &b.copolar, &p).unwrap());
        let zero = Project::zero([Vertex(1), Vertex(2)]);
        assert!(!with_membership(&zero, &a, &b, &p).unwrap());
    }

    #[test]
    fn cross_edge_is_invisible_to_with_tests() {
        let p = MeasureParam::LogDet;
        let (a, b) = (atom(1), atom(2));
        let cross = WeightedGraph::new(
            [Vertex(1), Vertex(2)],
            vec![Edge::new(1, 1, ratio(1, 2)), Edge::new(1, 2, ratio(1, 5))],
        )
        .unwrap();
        let f = sum(&Project::from_graph(cross), &lift(&b.members[0], &a.carrier).unwrap()).unwrap();
        let (g, _) = with_decompose(&f, &a, &b, &p).unwrap();
        assert!(equiv(&g, &a.members[0], &a.copolar, &p).unwrap());
    }

    #[test]
    fn oplus_sides() {
        let p = MeasureParam::LogDet;
        let (a, b) = (atom(1), atom(2));
        let f = lift(&a.members[0], &b.carrier).unwrap();
        let (side, n) = oplus_side_in(&f, &a, &b, &p).unwrap();
        assert_eq!(side, Side::Left);
        assert!(equiv(&n, &f, &oplus_tests(&a, &b).unwrap(), &p).unwrap());
        let g = lift(&b.members[1], &a.carrier).unwrap();
        assert_eq!(oplus_side_in(&g, &a, &b, &p).unwrap().0, Side::Right);
        let both = sum(&f, &g).unwrap();
        assert_eq!(oplus_side_in(&both, &a, &b, &p), Err(Error::AmbiguousSide));
        let empty = WitnessedBehaviour::new(b.carrier.clone(), b.members.clone(), vec![], true).unwrap();
        assert_eq!(oplus_side_in(&f, &a, &empty, &p), Err(Error::InsufficientWitnesses));
    }

    #[test]
    fn distr_shape() {
        let d = |pairs: &[(u64, u64)]| Delocation::from_pairs(pairs.iter().map(|&(x, y)| (Vertex(x), Vertex(y))));
        let distr = build_distr(&d(&[(1, 11)]), &d(&[(1, 21)]), &d(&[(2, 12)]), &d(&[(3, 23)])).unwrap();
        assert_eq!(distr.body().slices().len(), 2);
        assert_eq!(distr.unit(), int(2));
        assert!(distr.is_wager_free());
        assert!(distr
            .body()
            .slices()
            .iter()
            .flat_map(|(_, g)| g.edges())
            .all(|e| e.weight == int(1)));
    }

    #[test]
    fn closure_shift_preserves_pairing_for_wager_free_tests() {
        let p = MeasureParam::LogDet;
        let a = atom(1);
        let zero = Project::zero([Vertex(1)]);
        for l in closure_grid() {
            let s = linear_combine(&a.members[0], &l, &zero).unwrap();
            assert_eq!(pairing(&s, &a.copolar[0], &p).unwrap(), pairing(&a.members[0], &a.copolar[0], &p).unwrap());
        }
    }
}
