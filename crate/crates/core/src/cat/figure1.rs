//! The additive cut that is not preserved on the nose: for `f : A → B`,
//! `g : A → C` and `h : B → D`, the project `⟨f, g⟩ ∘ (h ⊗ 0_{V^C})` has a
//! residual slice coming from `g`, which no test of `A ⊸ D` detects.

use std::collections::BTreeSet;
use std::fmt;

use crate::cat::morphism::{compose, morphism_tests, place, split_carrier, with_morphisms};
use crate::cat::relocation::LocVertex;
use crate::conduct::{equiv, WitnessedBehaviour};
use crate::error::Result;
use crate::graph::Vertex;
use crate::measure::MeasureParam;
use crate::project::{cut, delocate, pairing, tensor, Delocation, Project, SlicedGraph};
use crate::scalar::ExtReal;

#[derive(Clone, Debug)]
pub struct Figure1Input {
    pub a: WitnessedBehaviour,
    pub b: WitnessedBehaviour,
    pub c: WitnessedBehaviour,
    pub d: WitnessedBehaviour,
    /// `A → B`.
    pub f: Project,
    /// `A → C`.
    pub g: Project,
    /// `B → D`.
    pub h: Project,
}

impl Figure1Input {
    /// Four copies of `template` and identity morphisms between them.
    pub fn identities(template: &WitnessedBehaviour) -> Self {
        let id = crate::cat::morphism::identity(&template.carrier);
        Figure1Input {
            a: template.clone(),
            b: template.clone(),
            c: template.clone(),
            d: template.clone(),
            f: id.clone(),
            g: id.clone(),
            h: id,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Figure1Report {
    /// Slices of `p = ⟨f, g⟩ ∘ (h ⊗ 0_{V^C})`.
    pub slices_p: usize,
    /// Slices of `p' = f ∘ h`.
    pub slices_p_prime: usize,
    /// The slices of `p` beyond those of `p'`, paired with each test of `A ⊸ D`.
    pub residual_pairings: Vec<ExtReal>,
    /// `p ≅ p'` against the tests of `A ⊸ D`.
    pub equiv: bool,
    /// `f :: b ≅ ⟨f, g⟩ :: (b ⊗ 0_{V^C})` against the members of `A`, for
    /// every copolar witness `b` of `B`.
    pub projection_equiv: bool,
}

impl Figure1Report {
    pub fn residual_zero(&self) -> bool {
        self.residual_pairings.iter().all(ExtReal::is_zero)
    }

    pub fn ok(&self) -> bool {
        self.slices_p == 2 && self.slices_p_prime == 1 && self.residual_zero() && self.equiv && self.projection_equiv
    }
}

impl fmt::Display for Figure1Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "slices(p)  = {}", self.slices_p)?;
        writeln!(f, "slices(p') = {}", self.slices_p_prime)?;
        let vals: Vec<String> = self.residual_pairings.iter().map(|v| v.to_string()).collect();
        writeln!(f, "residual pairings = [{}]", vals.join(", "))?;
        writeln!(f, "p ~ p' = {}", self.equiv)?;
        write!(f, "projection law = {}", self.projection_equiv)
    }
}

fn loc(base: u64, copy: u8) -> Vertex {
    LocVertex::new(base, copy).encode()
}

/// `h : B → D` seen as `B & C → D`: the source moved to the `B` half and
/// tensored with `0` on the `C` half.
fn extend_source(h: &Project, xc: &BTreeSet<Vertex>) -> Result<Project> {
    let phi = Delocation::from_fn(h.carrier(), |v| {
        let l = LocVertex::decode(v);
        if l.copy == 0 {
            loc(2 * l.base, 0)
        } else {
            v
        }
    });
    let dead: BTreeSet<Vertex> = xc.iter().map(|z| loc(2 * z.0 + 1, 0)).collect();
    tensor(&delocate(h, &phi)?, &Project::zero(dead))
}

pub fn figure1_experiment(input: &Figure1Input, p: &MeasureParam) -> Result<Figure1Report> {
    let (_, xc) = split_carrier(&input.g)?;
    let fg = with_morphisms(&input.f, &input.g, p)?;
    let big = compose(&fg, &extend_source(&input.h, &xc)?, p)?;
    let small = compose(&input.f, &input.h, p)?;
    let tests = morphism_tests(&input.a, &input.d)?;

    let k = small.body().slices().len();
    let residual = Project::new(
        ExtReal::zero(),
        SlicedGraph::new(big.carrier().clone(), big.body().slices()[k.min(big.body().slices().len())..].to_vec())?,
    );
    let residual_pairings = tests
        .iter()
        .map(|t| pairing(&residual, t, p))
        .collect::<Result<Vec<_>>>()?;

    let a_members = input
        .a
        .members
        .iter()
        .map(|x| place(x, 0))
        .collect::<Result<Vec<_>>>()?;
    let mut projection_equiv = true;
    for b in &input.b.copolar {
        let lhs = cut(&input.f, &place(b, 1)?, p)?;
        let b_half = delocate(b, &Delocation::from_fn(b.carrier(), |v| loc(2 * v.0, 1)))?;
        let dead: BTreeSet<Vertex> = xc.iter().map(|z| loc(2 * z.0 + 1, 1)).collect();
        let rhs = cut(&fg, &tensor(&b_half, &Project::zero(dead))?, p)?;
        projection_equiv &= equiv(&lhs, &rhs, &a_members, p)?;
    }

    Ok(Figure1Report {
        slices_p: big.body().slices().len(),
        slices_p_prime: k,
        residual_pairings,
        equiv: equiv(&big, &small, &tests, p)?,
        projection_equiv,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cat::interpret::Valuation;

    #[test]
    fn identities_reproduce_the_figure() {
        let input = Figure1Input::identities(&Valuation::default_template());
        let r = figure1_experiment(&input, &MeasureParam::LogDet).unwrap();
        assert_eq!((r.slices_p, r.slices_p_prime), (2, 1));
        assert_eq!(r.residual_pairings.len(), 4);
        assert!(r.residual_zero());
        assert!(r.equiv);
        assert!(r.projection_equiv);
        assert!(r.ok());
    }
}
