//! Sliced graphs and projects: pairing, cut, tensor, sums, delocation, faxes.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::{execute, Edge, Vertex, WeightedGraph};
use crate::matrix::WeightMatrix;
use crate::measure::{measure_sliced, MeasureParam};
use crate::scalar::ExtReal;
use crate::Rational;

/// A finite formal sum `Σ αᵢ Gᵢ` of graphs sharing one vertex set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlicedGraph {
    carrier: BTreeSet<Vertex>,
    slices: Vec<(Rational, WeightedGraph)>,
}

impl SlicedGraph {
    pub fn new(carrier: BTreeSet<Vertex>, slices: Vec<(Rational, WeightedGraph)>) -> Result<Self> {
        if slices.iter().any(|(_, g)| *g.vertices() != carrier) {
            return Err(Error::SliceCarrier);
        }
        Ok(SlicedGraph { carrier, slices })
    }

    pub fn single(g: WeightedGraph) -> Self {
        SlicedGraph {
            carrier: g.vertices().clone(),
            slices: vec![(Rational::one(), g)],
        }
    }

    /// The family with no slices.
    pub fn empty(carrier: BTreeSet<Vertex>) -> Self {
        SlicedGraph {
            carrier,
            slices: Vec::new(),
        }
    }

    pub fn carrier(&self) -> &BTreeSet<Vertex> {
        &self.carrier
    }

    pub fn slices(&self) -> &[(Rational, WeightedGraph)] {
        &self.slices
    }

    /// `1(F) = Σ αᵢ`.
    pub fn unit(&self) -> Rational {
        self.slices.iter().map(|(a, _)| a).sum()
    }

    pub fn check_same_carrier(&self, other: &SlicedGraph) -> Result<()> {
        if self.carrier != other.carrier {
            return Err(Error::CarrierMismatch {
                left: self.carrier.clone(),
                right: other.carrier.clone(),
            });
        }
        Ok(())
    }

    /// Slices grouped by aggregated weight matrix with summed coefficients,
    /// zero groups dropped.
    pub fn normal_form(&self) -> BTreeMap<Vec<Vec<Rational>>, Rational> {
        let mut groups: BTreeMap<Vec<Vec<Rational>>, Rational> = BTreeMap::new();
        for (a, g) in &self.slices {
            *groups
                .entry(WeightMatrix::aggregate(g).entries)
                .or_insert_with(Rational::zero) += a;
        }
        groups.retain(|_, a| !a.is_zero());
        groups
    }
}

/// A wager together with a sliced graph.
#[derive(Clone, Debug, PartialEq)]
pub struct Project {
    wager: ExtReal,
    body: SlicedGraph,
}

impl Project {
    pub fn new(wager: ExtReal, body: SlicedGraph) -> Self {
        Project { wager, body }
    }

    /// `(0, G)` with a single unit slice.
    pub fn from_graph(g: WeightedGraph) -> Self {
        Project::new(ExtReal::zero(), SlicedGraph::single(g))
    }

    /// `0_V = (0, 1·∅_V)`.
    pub fn zero(carrier: impl IntoIterator<Item = Vertex>) -> Self {
        Project::from_graph(WeightedGraph::empty(carrier))
    }

    pub fn wager(&self) -> &ExtReal {
        &self.wager
    }

    pub fn body(&self) -> &SlicedGraph {
        &self.body
    }

    pub fn carrier(&self) -> &BTreeSet<Vertex> {
        self.body.carrier()
    }

    pub fn unit(&self) -> Rational {
        self.body.unit()
    }

    pub fn is_wager_free(&self) -> bool {
        self.wager.is_zero()
    }

    /// `λ·a = (λa, Σ λαᵢ Aᵢ)`.
    pub fn scale(&self, k: &Rational) -> Project {
        let slices = self
            .body
            .slices
            .iter()
            .map(|(a, g)| (a * k, g.clone()))
            .collect();
        Project::new(
            self.wager.scale(k),
            SlicedGraph {
                carrier: self.body.carrier.clone(),
                slices,
            },
        )
    }

    /// Equal wagers and equal slice normal forms.
    pub fn same_normal_form(&self, other: &Project) -> bool {
        self.wager == other.wager
            && self.body.carrier == other.body.carrier
            && self.body.normal_form() == other.body.normal_form()
    }
}

/// `⟨a,b⟩ = a·1(B) + 1(A)·b + ⟦A,B⟧`.
pub fn pairing(a: &Project, b: &Project, p: &MeasureParam) -> Result<ExtReal> {
    a.body.check_same_carrier(&b.body)?;
    raw_pairing(a, b, p)
}

/// The pairing formula without the carrier check, as used by the cut.
pub fn raw_pairing(a: &Project, b: &Project, p: &MeasureParam) -> Result<ExtReal> {
    let m = measure_sliced(&a.body, &b.body, p)?.require_exact()?;
    let w = &a.wager.scale(&b.unit()) + &b.wager.scale(&a.unit());
    Ok(&w + &m)
}

/// `a ⊥ b`: the pairing is neither `0` nor `∞`.
pub fn orthogonal(a: &Project, b: &Project, p: &MeasureParam) -> Result<bool> {
    Ok(pairing(a, b, p)?.is_finite_nonzero())
}

/// `f::g = (⟨f,g⟩, Σ αᵢβⱼ Fᵢ::Gⱼ)`.
pub fn cut(f: &Project, g: &Project, p: &MeasureParam) -> Result<Project> {
    let wager = raw_pairing(f, g, p)?;
    let carrier: BTreeSet<Vertex> = f
        .carrier()
        .symmetric_difference(g.carrier())
        .copied()
        .collect();
    let mut slices = Vec::with_capacity(f.body.slices.len() * g.body.slices.len());
    for (a, fa) in &f.body.slices {
        for (b, gb) in &g.body.slices {
            slices.push((a * b, execute(fa, gb)?));
        }
    }
    Ok(Project::new(wager, SlicedGraph { carrier, slices }))
}

/// `a ⊗ b` for disjoint carriers.
pub fn tensor(a: &Project, b: &Project) -> Result<Project> {
    let overlap: BTreeSet<Vertex> = a.carrier().intersection(b.carrier()).copied().collect();
    if !overlap.is_empty() {
        return Err(Error::CarrierOverlap(overlap));
    }
    let wager = &a.wager.scale(&b.unit()) + &b.wager.scale(&a.unit());
    let carrier = a.carrier().union(b.carrier()).copied().collect();
    let mut slices = Vec::with_capacity(a.body.slices.len() * b.body.slices.len());
    for (x, ga) in &a.body.slices {
        for (y, gb) in &b.body.slices {
            slices.push((x * y, ga.union(gb)?));
        }
    }
    Ok(Project::new(wager, SlicedGraph { carrier, slices }))
}

/// `a + λb`.
pub fn linear_combine(a: &Project, k: &Rational, b: &Project) -> Result<Project> {
    if k.is_zero() {
        return Err(Error::ZeroScalar);
    }
    a.body.check_same_carrier(&b.body)?;
    let wager = &a.wager + &b.wager.scale(k);
    let slices = a
        .body
        .slices
        .iter()
        .cloned()
        .chain(b.body.slices.iter().map(|(x, g)| (x * k, g.clone())))
        .collect();
    Ok(Project::new(
        wager,
        SlicedGraph {
            carrier: a.carrier().clone(),
            slices,
        },
    ))
}

/// `a + b`.
pub fn sum(a: &Project, b: &Project) -> Result<Project> {
    linear_combine(a, &Rational::one(), b)
}

/// `a↑V = a ⊗ 0_V`.
pub fn lift(a: &Project, v: &BTreeSet<Vertex>) -> Result<Project> {
    tensor(a, &Project::zero(v.iter().copied()))
}

/// A finite renaming of vertices.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Delocation(pub BTreeMap<Vertex, Vertex>);

impl Delocation {
    pub fn from_pairs(pairs: impl IntoIterator<Item = (Vertex, Vertex)>) -> Self {
        Delocation(pairs.into_iter().collect())
    }

    pub fn from_fn(domain: &BTreeSet<Vertex>, f: impl Fn(Vertex) -> Vertex) -> Self {
        Delocation(domain.iter().map(|&v| (v, f(v))).collect())
    }

    pub fn identity(domain: &BTreeSet<Vertex>) -> Self {
        Self::from_fn(domain, |v| v)
    }

    pub fn domain(&self) -> BTreeSet<Vertex> {
        self.0.keys().copied().collect()
    }

    pub fn image(&self) -> BTreeSet<Vertex> {
        self.0.values().copied().collect()
    }

    pub fn apply(&self, v: Vertex) -> Option<Vertex> {
        self.0.get(&v).copied()
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &Delocation) -> Delocation {
        Delocation(
            self.0
                .iter()
                .filter_map(|(&k, v)| other.apply(*v).map(|w| (k, w)))
                .collect(),
        )
    }

    pub fn inverse(&self) -> Delocation {
        Delocation(self.0.iter().map(|(&k, &v)| (v, k)).collect())
    }

    pub fn apply_set(&self, s: &BTreeSet<Vertex>) -> Result<BTreeSet<Vertex>> {
        let out: BTreeSet<Vertex> = s
            .iter()
            .map(|v| self.apply(*v).ok_or(Error::NotInjectiveOnCarrier))
            .collect::<Result<_>>()?;
        if out.len() != s.len() {
            return Err(Error::NotInjectiveOnCarrier);
        }
        Ok(out)
    }
}

/// Renames the carrier of `a` along `phi`.
pub fn delocate(a: &Project, phi: &Delocation) -> Result<Project> {
    let carrier = phi.apply_set(a.carrier())?;
    let slices = a
        .body
        .slices
        .iter()
        .map(|(x, g)| Ok((x.clone(), g.relabel(&phi.0)?)))
        .collect::<Result<_>>()?;
    Ok(Project::new(a.wager.clone(), SlicedGraph { carrier, slices }))
}

/// `Fax_φ`: weight-1 edges `v → φ(v)` and `φ(v) → v`, wager 0.
pub fn fax(phi: &Delocation) -> Result<Project> {
    let domain = phi.domain();
    let image = phi.image();
    if image.len() != domain.len() {
        return Err(Error::NotInjectiveOnCarrier);
    }
    let overlap: BTreeSet<Vertex> = domain.intersection(&image).copied().collect();
    if !overlap.is_empty() {
        return Err(Error::CarrierOverlap(overlap));
    }
    let one = Rational::one;
    let edges: Vec<Edge> = phi
        .0
        .iter()
        .map(|(&a, &b)| Edge { src: a, tgt: b, weight: one() })
        .chain(phi.0.iter().map(|(&a, &b)| Edge { src: b, tgt: a, weight: one() }))
        .collect();
    let g = WeightedGraph::new(domain.union(&image).copied(), edges)?;
    Ok(Project::from_graph(g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn g(vs: &[u64], es: &[(u64, u64, i64, i64)]) -> WeightedGraph {
        WeightedGraph::new(
            vs.iter().map(|&v| Vertex(v)),
            es.iter().map(|&(s, t, n, d)| Edge::new(s, t, ratio(n, d))).collect(),
        )
        .unwrap()
    }

    fn vs(xs: &[u64]) -> BTreeSet<Vertex> {
        xs.iter().map(|&x| Vertex(x)).collect()
    }

    fn wagered(w: i64, carrier: &[u64]) -> Project {
        Project::new(ExtReal::rational(int(w)), SlicedGraph::single(g(carrier, &[])))
    }

    #[test]
    fn pairing_examples() {
        let p = MeasureParam::LogDet;
        assert_eq!(pairing(&wagered(2, &[1]), &wagered(3, &[1]), &p).unwrap(), ExtReal::rational(int(5)));
        let inf = Project::new(ExtReal::Infinite, SlicedGraph::single(g(&[1], &[])));
        let zero_unit = Project::new(ExtReal::rational(int(1)), SlicedGraph::empty(vs(&[1])));
        assert!(pairing(&inf, &zero_unit, &p).unwrap().is_infinite());
        let a = Project::from_graph(g(&[1, 2], &[(1, 2, 1, 2)]));
        let b = Project::from_graph(g(&[1, 2], &[(2, 1, 1, 2)]));
        assert!((pairing(&a, &b, &p).unwrap().to_f64() - (4.0f64 / 3.0).ln()).abs() < 1e-12);
        assert!(matches!(pairing(&a, &wagered(1, &[1]), &p), Err(Error::CarrierMismatch { .. })));
        assert!(orthogonal(&wagered(2, &[1]), &wagered(3, &[1]), &p).unwrap());
        assert!(!orthogonal(&wagered(0, &[1]), &wagered(0, &[1]), &p).unwrap());
        assert!(!orthogonal(&a, &b, &MeasureParam::AlwaysInfinite).unwrap());
    }

    #[test]
    fn cut_of_a_chain() {
        let f = Project::from_graph(g(&[1, 2], &[(1, 2, 1, 2)]));
        let h = Project::from_graph(g(&[2, 3], &[(2, 3, 1, 3)]));
        let r = cut(&f, &h, &MeasureParam::LogDet).unwrap();
        assert!(r.wager().is_zero());
        assert_eq!(r, Project::from_graph(g(&[1, 3], &[(1, 3, 1, 6)])));
    }

    #[test]
    fn tensor_examples() {
        let t = tensor(&wagered(2, &[1]), &wagered(3, &[2])).unwrap();
        assert_eq!(t.wager(), &ExtReal::rational(int(5)));
        assert_eq!(t.carrier(), &vs(&[1, 2]));
        assert_eq!(tensor(&Project::zero(vs(&[1])), &Project::zero(vs(&[2]))).unwrap(), Project::zero(vs(&[1, 2])));
        assert!(tensor(&wagered(1, &[1]), &wagered(1, &[1])).is_err());
    }

    #[test]
    fn fax_delocates() {
        let a = Project::from_graph(g(&[1], &[(1, 1, 1, 2)]));
        let phi = Delocation::from_pairs([(Vertex(1), Vertex(5))]);
        let fx = fax(&phi).unwrap();
        assert_eq!(fx.body().slices()[0].1.edges().len(), 2);
        let moved = cut(&fx, &a, &MeasureParam::LogDet).unwrap();
        assert_eq!(moved, delocate(&a, &phi).unwrap());
        assert!(fax(&Delocation::from_pairs([(Vertex(1), Vertex(1))])).is_err());
    }

    #[test]
    fn delocation_checks_injectivity() {
        let a = Project::zero(vs(&[1, 2]));
        let bad = Delocation::from_pairs([(Vertex(1), Vertex(3)), (Vertex(2), Vertex(3))]);
        assert_eq!(delocate(&a, &bad), Err(Error::NotInjectiveOnCarrier));
        let partial = Delocation::from_pairs([(Vertex(1), Vertex(3))]);
        assert_eq!(delocate(&a, &partial), Err(Error::NotInjectiveOnCarrier));
        assert_eq!(delocate(&a, &Delocation::identity(a.carrier())).unwrap(), a);
    }

    #[test]
    fn combinations_and_normal_forms() {
        let a = wagered(1, &[1]);
        let s = linear_combine(&a, &ratio(-1, 2), &a).unwrap();
        assert_eq!(s.unit(), ratio(1, 2));
        assert_eq!(s.wager(), &ExtReal::rational(ratio(1, 2)));
        assert!(s.same_normal_form(&a.scale(&ratio(1, 2))));
        assert_eq!(linear_combine(&a, &int(0), &a), Err(Error::ZeroScalar));
    }
}
