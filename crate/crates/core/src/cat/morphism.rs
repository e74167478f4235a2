//! Morphisms `A → B` as projects on `ψ0(V^A) ∪ ψ1(V^B)`, their composition,
//! identities, the tensor and with bifunctors, projections and injections.

use std::collections::BTreeSet;

use crate::cat::relocation::{relocate, LocVertex, Relocation};
use crate::conduct::{distr_parts, WitnessedBehaviour};
use crate::error::{Error, Result};
use crate::graph::Vertex;
use crate::measure::MeasureParam;
use crate::project::{cut, delocate, fax, lift, sum, tensor, Delocation, Project};

fn loc(base: u64, copy: u8) -> Vertex {
    LocVertex::new(base, copy).encode()
}

fn located(xs: &BTreeSet<Vertex>, copy: u8) -> BTreeSet<Vertex> {
    xs.iter().map(|v| loc(v.0, copy)).collect()
}

/// `ψ_copy(p)`.
pub fn place(p: &Project, copy: u8) -> Result<Project> {
    relocate(&Relocation::Psi(copy), p)
}

/// Source and target base carriers of a morphism.
pub fn split_carrier(f: &Project) -> Result<(BTreeSet<Vertex>, BTreeSet<Vertex>)> {
    let mut src = BTreeSet::new();
    let mut tgt = BTreeSet::new();
    for &v in f.carrier() {
        let l = LocVertex::decode(v);
        match l.copy {
            0 => src.insert(Vertex(l.base)),
            1 => tgt.insert(Vertex(l.base)),
            _ => return Err(Error::DomainViolation(v)),
        };
    }
    Ok((src, tgt))
}

/// `g ∘ f = ν(f :: μ(g))`.
pub fn compose(f: &Project, g: &Project, p: &MeasureParam) -> Result<Project> {
    let shifted = relocate(&Relocation::Mu, g)?;
    relocate(&Relocation::Nu, &cut(f, &shifted, p)?)
}

/// The fax between `ψ0(X)` and `ψ1(X)`.
pub fn identity(x: &BTreeSet<Vertex>) -> Project {
    let phi = Delocation::from_pairs(x.iter().map(|v| (loc(v.0, 0), loc(v.0, 1))));
    fax(&phi).expect("copies are disjoint")
}

/// Base carrier of `A ⊗ B` (and of `A & B`, `A ⊕ B`): `2·V^A ∪ (2·V^B + 1)`.
pub fn pair_carrier(a: &BTreeSet<Vertex>, b: &BTreeSet<Vertex>) -> BTreeSet<Vertex> {
    a.iter()
        .map(|v| Vertex(2 * v.0))
        .chain(b.iter().map(|v| Vertex(2 * v.0 + 1)))
        .collect()
}

/// `f ⊗̄ g = τ(ψ0(φ(f)) ⊗ ψ1(φ(g)))`.
pub fn tensor_morphisms(f: &Project, g: &Project) -> Result<Project> {
    let left = relocate(&Relocation::Seq(vec![Relocation::Phi, Relocation::Psi(0)]), f)?;
    let right = relocate(&Relocation::Seq(vec![Relocation::Phi, Relocation::Psi(1)]), g)?;
    relocate(&Relocation::Tau, &tensor(&left, &right)?)
}

/// Moves a morphism along a vertex map on each side.
fn remap(f: &Project, src: impl Fn(u64) -> Vertex, tgt: impl Fn(u64) -> Vertex) -> Result<Project> {
    let phi = Delocation::from_fn(f.carrier(), |v| {
        let l = LocVertex::decode(v);
        if l.copy == 0 {
            src(l.base)
        } else {
            tgt(l.base)
        }
    });
    delocate(f, &phi)
}

/// `⟨f, g⟩ : A → B & C` for `f : A → B` and `g : A → C`.
///
/// Both morphisms are delocated into copy 2 (`A` twice, `B` and `C` once
/// each) and plugged into the distributivity project.  Only the two
/// diagonal slices `f1 :: f'↑` and `f2 :: g'↑` are kept.
pub fn with_morphisms(f: &Project, g: &Project, p: &MeasureParam) -> Result<Project> {
    let (xa, xb) = split_carrier(f)?;
    let (xa2, xc) = split_carrier(g)?;
    if xa != xa2 {
        return Err(Error::CarrierMismatch { left: xa, right: xa2 });
    }
    let fp = remap(f, |x| loc(4 * x, 2), |y| loc(4 * y + 1, 2))?;
    let gp = remap(g, |x| loc(4 * x + 2, 2), |z| loc(4 * z + 3, 2))?;
    let va = located(&xa, 0);
    let phi = Delocation::from_fn(&va, |v| loc(4 * LocVertex::decode(v).base, 2));
    let psi = Delocation::from_fn(&va, |v| loc(4 * LocVertex::decode(v).base + 2, 2));
    let vb: BTreeSet<Vertex> = xb.iter().map(|y| loc(2 * y.0, 1)).collect();
    let vc: BTreeSet<Vertex> = xc.iter().map(|z| loc(2 * z.0 + 1, 1)).collect();
    let theta = Delocation::from_fn(&vb, |v| loc(4 * (LocVertex::decode(v).base / 2) + 1, 2));
    let rho = Delocation::from_fn(&vc, |v| loc(4 * (LocVertex::decode(v).base / 2) + 3, 2));
    let (f1, f2) = distr_parts(&phi, &psi, &theta, &rho)?;
    let a2c: BTreeSet<Vertex> = psi.image().union(&rho.image()).copied().collect();
    let a1b: BTreeSet<Vertex> = phi.image().union(&theta.image()).copied().collect();
    let left = cut(&f1, &lift(&fp, &a2c)?, p)?;
    let right = cut(&f2, &lift(&gp, &a1b)?, p)?;
    sum(&left, &right)
}

/// `[f, g] : B ⊕ C → D` for `f : B → D` and `g : C → D`.
pub fn copair_morphisms(f: &Project, g: &Project) -> Result<Project> {
    let (xb, xd) = split_carrier(f)?;
    let (xc, xd2) = split_carrier(g)?;
    if xd != xd2 {
        return Err(Error::CarrierMismatch { left: xd, right: xd2 });
    }
    let fp = remap(f, |y| loc(2 * y, 0), |d| loc(d, 1))?;
    let gp = remap(g, |z| loc(2 * z + 1, 0), |d| loc(d, 1))?;
    let c_part: BTreeSet<Vertex> = xc.iter().map(|z| loc(2 * z.0 + 1, 0)).collect();
    let b_part: BTreeSet<Vertex> = xb.iter().map(|y| loc(2 * y.0, 0)).collect();
    sum(&lift(&fp, &c_part)?, &lift(&gp, &b_part)?)
}

fn side_fax(pairs: Vec<(Vertex, Vertex)>, dead: BTreeSet<Vertex>) -> Result<Project> {
    tensor(&fax(&Delocation::from_pairs(pairs))?, &Project::zero(dead))
}

/// `π1 : B & C → B`.
pub fn projection_left(xb: &BTreeSet<Vertex>, xc: &BTreeSet<Vertex>) -> Result<Project> {
    side_fax(
        xb.iter().map(|y| (loc(2 * y.0, 0), loc(y.0, 1))).collect(),
        xc.iter().map(|z| loc(2 * z.0 + 1, 0)).collect(),
    )
}

/// `π2 : B & C → C`.
pub fn projection_right(xb: &BTreeSet<Vertex>, xc: &BTreeSet<Vertex>) -> Result<Project> {
    side_fax(
        xc.iter().map(|z| (loc(2 * z.0 + 1, 0), loc(z.0, 1))).collect(),
        xb.iter().map(|y| loc(2 * y.0, 0)).collect(),
    )
}

/// `ι1 : B → B ⊕ C`.
pub fn injection_left(xb: &BTreeSet<Vertex>, xc: &BTreeSet<Vertex>) -> Result<Project> {
    side_fax(
        xb.iter().map(|y| (loc(y.0, 0), loc(2 * y.0, 1))).collect(),
        xc.iter().map(|z| loc(2 * z.0 + 1, 1)).collect(),
    )
}

/// `ι2 : C → B ⊕ C`.
pub fn injection_right(xb: &BTreeSet<Vertex>, xc: &BTreeSet<Vertex>) -> Result<Project> {
    side_fax(
        xc.iter().map(|z| (loc(z.0, 0), loc(2 * z.0 + 1, 1))).collect(),
        xb.iter().map(|y| loc(2 * y.0, 1)).collect(),
    )
}

/// Tests for morphisms `A → B`: `ψ0(a) ⊗ ψ1(b')` with `a` a member of `A`
/// and `b'` a copolar witness of `B`.
pub fn morphism_tests(a: &WitnessedBehaviour, b: &WitnessedBehaviour) -> Result<Vec<Project>> {
    let mut out = Vec::with_capacity(a.members.len() * b.copolar.len());
    for x in &a.members {
        let x0 = place(x, 0)?;
        for y in &b.copolar {
            out.push(tensor(&x0, &place(y, 1)?)?);
        }
    }
    Ok(out)
}

fn shift(p: &Project, f: impl Fn(u64) -> u64) -> Result<Project> {
    delocate(p, &Delocation::from_fn(p.carrier(), |v| Vertex(f(v.0))))
}

/// Witnesses of `B & C` on [`pair_carrier`]: members `b↑ + c↑`, tests
/// `b'↑` and `c'↑`.
pub fn with_object(b: &WitnessedBehaviour, c: &WitnessedBehaviour) -> Result<WitnessedBehaviour> {
    let (bs, cs) = placed_sides(b, c)?;
    let mut members = Vec::new();
    for x in &b.members {
        for y in &c.members {
            members.push(sum(&lift(&shift(x, |v| 2 * v)?, &cs)?, &lift(&shift(y, |v| 2 * v + 1)?, &bs)?)?);
        }
    }
    let mut copolar = Vec::new();
    for x in &b.copolar {
        copolar.push(lift(&shift(x, |v| 2 * v)?, &cs)?);
    }
    for y in &c.copolar {
        copolar.push(lift(&shift(y, |v| 2 * v + 1)?, &bs)?);
    }
    WitnessedBehaviour::new(pair_carrier(&b.carrier, &c.carrier), members, copolar, b.proper && c.proper)
}

/// Witnesses of `B ⊕ C`: the dual construction of [`with_object`].
pub fn plus_object(b: &WitnessedBehaviour, c: &WitnessedBehaviour) -> Result<WitnessedBehaviour> {
    Ok(with_object(&b.dual(), &c.dual())?.dual())
}

fn placed_sides(b: &WitnessedBehaviour, c: &WitnessedBehaviour) -> Result<(BTreeSet<Vertex>, BTreeSet<Vertex>)> {
    let pc = pair_carrier(&b.carrier, &c.carrier);
    let bs: BTreeSet<Vertex> = pc.iter().copied().filter(|v| v.0 % 2 == 0).collect();
    let cs: BTreeSet<Vertex> = pc.iter().copied().filter(|v| v.0 % 2 == 1).collect();
    Ok((bs, cs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conduct::equiv;
    use crate::graph::{Edge, WeightedGraph};
    use crate::rational::ratio;

    fn set(xs: &[u64]) -> BTreeSet<Vertex> {
        xs.iter().map(|&x| Vertex(x)).collect()
    }

    fn atom(v: u64) -> WitnessedBehaviour {
        let l = |n, d| Project::from_graph(WeightedGraph::new([Vertex(v)], vec![Edge::new(v, v, ratio(n, d))]).unwrap());
        WitnessedBehaviour::new(set(&[v]), vec![l(1, 2), l(1, 3)], vec![l(1, 2), l(2, 3)], true).unwrap()
    }

    #[test]
    fn identity_laws_on_the_identity() {
        let p = MeasureParam::LogDet;
        let x = set(&[0, 1]);
        let id = identity(&x);
        assert_eq!(id.body().slices()[0].1.edges().len(), 4);
        let twice = compose(&id, &id, &p).unwrap();
        assert!(twice.same_normal_form(&id));
    }

    #[test]
    fn tensor_of_identities_is_the_identity() {
        let t = tensor_morphisms(&identity(&set(&[0])), &identity(&set(&[0, 1]))).unwrap();
        assert!(t.same_normal_form(&identity(&pair_carrier(&set(&[0]), &set(&[0, 1])))));
    }

    #[test]
    fn with_keeps_one_slice_per_summand_slice() {
        let p = MeasureParam::LogDet;
        let x = set(&[0]);
        let w = with_morphisms(&identity(&x), &identity(&x), &p).unwrap();
        assert_eq!(w.body().slices().len(), 2);
        let (src, tgt) = split_carrier(&w).unwrap();
        assert_eq!(src, x);
        assert_eq!(tgt, pair_carrier(&x, &x));
    }

    #[test]
    fn projection_and_injection_laws() {
        let p = MeasureParam::LogDet;
        let x = set(&[0]);
        let (a, b) = (atom(0), atom(0));
        let f = identity(&x);
        let w = with_morphisms(&f, &f, &p).unwrap();
        let back = compose(&w, &projection_left(&x, &x).unwrap(), &p).unwrap();
        assert!(equiv(&back, &f, &morphism_tests(&a, &b).unwrap(), &p).unwrap());
        let c = copair_morphisms(&f, &f).unwrap();
        let back = compose(&injection_right(&x, &x).unwrap(), &c, &p).unwrap();
        assert!(equiv(&back, &f, &morphism_tests(&a, &b).unwrap(), &p).unwrap());
    }

    #[test]
    fn additive_objects_certify() {
        let p = MeasureParam::LogDet;
        assert!(with_object(&atom(0), &atom(0)).unwrap().certify(&p).unwrap());
        assert!(plus_object(&atom(0), &atom(0)).unwrap().certify(&p).unwrap());
    }
}
