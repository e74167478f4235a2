//! Vertices located in three copies of ℕ and the relocations between them.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::Vertex;
use crate::project::{delocate, Delocation, Project};

/// `(base, copy)` with `copy ∈ {0,1,2}`, encoded as `3·base + copy`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LocVertex {
    pub base: u64,
    pub copy: u8,
}

impl LocVertex {
    pub fn new(base: u64, copy: u8) -> Self {
        assert!(copy < 3, "copy index out of range");
        LocVertex { base, copy }
    }

    pub fn encode(self) -> Vertex {
        Vertex(3 * self.base + self.copy as u64)
    }

    pub fn decode(v: Vertex) -> Self {
        LocVertex {
            base: v.0 / 3,
            copy: (v.0 % 3) as u8,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Relocation {
    /// `x ↦ (x, i)`.
    Psi(u8),
    /// `(x, i) ↦ (x, i+1)` on copies 0 and 1.
    Mu,
    /// `(x, 0) ↦ (x, 0)`, `(x, 2) ↦ (x, 1)`.
    Nu,
    /// `(x, i) ↦ 2x + i` on copies 0 and 1.
    Phi,
    /// `(2x+1, 0) ↔ (2x, 1)`, identity elsewhere.
    Tau,
    /// Apply left to right.
    Seq(Vec<Relocation>),
}

impl Relocation {
    pub fn apply(&self, v: Vertex) -> Result<Vertex> {
        let l = LocVertex::decode(v);
        let bad = Err(Error::DomainViolation(v));
        match self {
            Relocation::Psi(i) if *i < 3 => Ok(LocVertex::new(v.0, *i).encode()),
            Relocation::Psi(_) => bad,
            Relocation::Mu if l.copy < 2 => Ok(LocVertex::new(l.base, l.copy + 1).encode()),
            Relocation::Mu => bad,
            Relocation::Nu => match l.copy {
                0 => Ok(v),
                2 => Ok(LocVertex::new(l.base, 1).encode()),
                _ => bad,
            },
            Relocation::Phi if l.copy < 2 => Ok(Vertex(2 * l.base + l.copy as u64)),
            Relocation::Phi => bad,
            Relocation::Tau => Ok(match (l.copy, l.base % 2) {
                (0, 1) => LocVertex::new(l.base - 1, 1).encode(),
                (1, 0) => LocVertex::new(l.base + 1, 0).encode(),
                _ => v,
            }),
            Relocation::Seq(steps) => steps.iter().try_fold(v, |w, s| s.apply(w)),
        }
    }

    pub fn delocation(&self, carrier: &BTreeSet<Vertex>) -> Result<Delocation> {
        let pairs = carrier
            .iter()
            .map(|&v| Ok((v, self.apply(v)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Delocation::from_pairs(pairs))
    }

    pub fn apply_set(&self, s: &BTreeSet<Vertex>) -> Result<BTreeSet<Vertex>> {
        s.iter().map(|&v| self.apply(v)).collect()
    }
}

pub fn relocate(x: &Relocation, p: &Project) -> Result<Project> {
    delocate(p, &x.delocation(p.carrier())?)
}
