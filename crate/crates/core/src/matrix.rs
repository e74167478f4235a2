//! Weight and connectivity matrices, nilpotency, determinants and the
//! closed-form (aggregated) execution.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::{Plugging, Vertex, WeightedGraph};
use crate::project::{Project, SlicedGraph};
use crate::rational::{format_rational, to_f64};
use crate::scalar::{ExtReal, Scalar};
use crate::Rational;

/// A square or rectangular rational matrix indexed by sorted vertex lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightMatrix {
    pub rows: Vec<Vertex>,
    pub cols: Vec<Vertex>,
    pub entries: Vec<Vec<Rational>>,
}

impl WeightMatrix {
    pub fn zero(rows: Vec<Vertex>, cols: Vec<Vertex>) -> Self {
        let entries = vec![vec![Rational::zero(); cols.len()]; rows.len()];
        WeightMatrix { rows, cols, entries }
    }

    /// `Ĝ`: parallel edges summed, indexed by the vertices of `g`.
    pub fn aggregate(g: &WeightedGraph) -> Self {
        let index: Vec<Vertex> = g.vertices().iter().copied().collect();
        Self::aggregate_over(g, &index)
    }

    /// `Ĝ` embedded in a larger index (zero elsewhere).
    pub fn aggregate_over(g: &WeightedGraph, index: &[Vertex]) -> Self {
        let mut m = Self::zero(index.to_vec(), index.to_vec());
        let pos = positions(index);
        for e in g.edges() {
            m.entries[pos[&e.src]][pos[&e.tgt]] += &e.weight;
        }
        m
    }

    pub fn get(&self, u: Vertex, v: Vertex) -> Rational {
        let i = self.rows.binary_search(&u);
        let j = self.cols.binary_search(&v);
        match (i, j) {
            (Ok(i), Ok(j)) => self.entries[i][j].clone(),
            _ => Rational::zero(),
        }
    }

    pub fn mul(&self, other: &WeightMatrix) -> WeightMatrix {
        assert_eq!(self.cols, other.rows, "inner indices differ");
        let mut out = Self::zero(self.rows.clone(), other.cols.clone());
        for (i, row) in self.entries.iter().enumerate() {
            for (k, a) in row.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (j, b) in other.entries[k].iter().enumerate() {
                    if !b.is_zero() {
                        out.entries[i][j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &WeightMatrix) -> WeightMatrix {
        assert!(self.rows == other.rows && self.cols == other.cols);
        let mut out = self.clone();
        for (r, o) in out.entries.iter_mut().zip(&other.entries) {
            for (a, b) in r.iter_mut().zip(o) {
                *a += b;
            }
        }
        out
    }

    pub fn scale(&self, k: &Rational) -> WeightMatrix {
        let mut out = self.clone();
        for r in out.entries.iter_mut() {
            for a in r.iter_mut() {
                *a *= k;
            }
        }
        out
    }

    /// The submatrix on the given row and column vertices.
    pub fn restrict(&self, rows: &[Vertex], cols: &[Vertex]) -> WeightMatrix {
        let mut out = Self::zero(rows.to_vec(), cols.to_vec());
        for (i, &u) in rows.iter().enumerate() {
            for (j, &v) in cols.iter().enumerate() {
                out.entries[i][j] = self.get(u, v);
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(Zero::is_zero)
    }

    pub fn to_f64(&self) -> Vec<Vec<f64>> {
        self.entries
            .iter()
            .map(|r| r.iter().map(to_f64).collect())
            .collect()
    }
}

impl fmt::Display for WeightMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cols: Vec<String> = self.cols.iter().map(|v| v.to_string()).collect();
        writeln!(f, "      {}", cols.join("\t"))?;
        for (u, row) in self.rows.iter().zip(&self.entries) {
            let cells: Vec<String> = row.iter().map(format_rational).collect();
            writeln!(f, "{u:>5} {}", cells.join("\t"))?;
        }
        Ok(())
    }
}

fn positions(index: &[Vertex]) -> BTreeMap<Vertex, usize> {
    index.iter().enumerate().map(|(i, &v)| (v, i)).collect()
}

/// Connectivity matrix `[G]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoolMatrix {
    pub index: Vec<Vertex>,
    pub entries: Vec<Vec<bool>>,
}

impl BoolMatrix {
    pub fn connectivity(g: &WeightedGraph) -> Self {
        let index: Vec<Vertex> = g.vertices().iter().copied().collect();
        let pos = positions(&index);
        let mut entries = vec![vec![false; index.len()]; index.len()];
        for e in g.edges() {
            entries[pos[&e.src]][pos[&e.tgt]] = true;
        }
        BoolMatrix { index, entries }
    }

    pub fn mul(&self, other: &BoolMatrix) -> BoolMatrix {
        assert_eq!(self.index, other.index, "indices differ");
        let n = self.index.len();
        let mut entries = vec![vec![false; n]; n];
        for i in 0..n {
            for k in 0..n {
                if self.entries[i][k] {
                    for j in 0..n {
                        entries[i][j] |= other.entries[k][j];
                    }
                }
            }
        }
        BoolMatrix {
            index: self.index.clone(),
            entries,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(|b| !b)
    }

    /// `A^n = 0` where `n` is the dimension.
    pub fn is_nilpotent(&self) -> bool {
        let mut power = self.clone();
        for _ in 1..self.index.len() {
            if power.is_zero() {
                return true;
            }
            power = power.mul(self);
        }
        power.is_zero()
    }
}

/// `[A] ⋆ [B]` is nilpotent: every slice product `[A_i][B_j]` is.
pub fn star_nilpotent(a: &SlicedGraph, b: &SlicedGraph) -> Result<bool> {
    a.check_same_carrier(b)?;
    let bs: Vec<BoolMatrix> = b.slices().iter().map(|(_, g)| BoolMatrix::connectivity(g)).collect();
    Ok(a.slices().iter().all(|(_, g)| {
        let ma = BoolMatrix::connectivity(g);
        bs.iter().all(|mb| ma.mul(mb).is_nilpotent())
    }))
}

/// Orthogonality for the measure `m ≡ ∞`, decided through nilpotency.
pub fn orth_nilpotency(a: &Project, b: &Project) -> Result<bool> {
    if !star_nilpotent(a.body(), b.body())? {
        return Ok(false);
    }
    let s = &a.wager().scale(&b.body().unit()) + &b.wager().scale(&a.body().unit());
    Ok(s.is_finite_nonzero())
}

/// Gaussian elimination on `a` without pivoting, requiring every pivot to be
/// positive.  For `a = I − N` with `N ≥ 0` this succeeds iff `ρ(N) < 1`
/// (all leading principal minors of a nonsingular M-matrix are positive).
/// On success returns `det a` and `a⁻¹·rhs`.
pub fn mmatrix_solve(a: &WeightMatrix, rhs: Option<&WeightMatrix>) -> Option<(Rational, Option<WeightMatrix>)> {
    let n = a.rows.len();
    let mut m = a.entries.clone();
    let mut r = rhs.map(|x| x.entries.clone());
    let mut det = Rational::one();
    for k in 0..n {
        let pivot = m[k][k].clone();
        if !pivot.is_positive() {
            return None;
        }
        det *= &pivot;
        for i in k + 1..n {
            if m[i][k].is_zero() {
                continue;
            }
            let factor = &m[i][k] / &pivot;
            for j in k..n {
                let t = &factor * &m[k][j];
                m[i][j] -= t;
            }
            if let Some(r) = r.as_mut() {
                for j in 0..r[0].len() {
                    let t = &factor * &r[k][j];
                    r[i][j] -= t;
                }
            }
        }
    }
    let sol = r.map(|mut r| {
        let width = r.first().map_or(0, Vec::len);
        for k in (0..n).rev() {
            for j in 0..width {
                let mut acc = r[k][j].clone();
                for l in k + 1..n {
                    acc -= &m[k][l] * &r[l][j];
                }
                r[k][j] = acc / &m[k][k];
            }
        }
        WeightMatrix {
            rows: a.cols.clone(),
            cols: rhs.unwrap().cols.clone(),
            entries: r,
        }
    });
    Some((det, sol))
}

/// `I − k·m` for a square matrix.
pub fn identity_minus(m: &WeightMatrix, k: &Rational) -> WeightMatrix {
    let mut out = m.scale(&-k);
    for i in 0..out.rows.len() {
        out.entries[i][i] += Rational::one();
    }
    out
}

/// Exact test of `ρ(m) < r` for a nonnegative square matrix.
pub fn spectral_radius_below(m: &WeightMatrix, r: &Rational) -> bool {
    mmatrix_solve(&identity_minus(m, &r.recip()), None).is_some()
}

/// Floating-point estimate of `ρ(m)` by repeated squaring, `‖M^(2^j)‖^(2^-j)`.
pub fn spectral_radius_estimate(m: &WeightMatrix) -> f64 {
    let n = m.rows.len();
    if n == 0 {
        return 0.0;
    }
    let mut a = m.to_f64();
    let mut log_scale = 0.0f64;
    let mut exponent = 1.0f64;
    for _ in 0..40 {
        let norm = a.iter().flatten().fold(0.0f64, |x, &y| x.max(y.abs()));
        if norm == 0.0 {
            return 0.0;
        }
        for x in a.iter_mut().flatten() {
            *x /= norm;
        }
        log_scale += norm.ln();
        let mut sq = vec![vec![0.0; n]; n];
        for i in 0..n {
            for k in 0..n {
                if a[i][k] != 0.0 {
                    for j in 0..n {
                        sq[i][j] += a[i][k] * a[k][j];
                    }
                }
            }
        }
        a = sq;
        log_scale *= 2.0;
        exponent *= 2.0;
    }
    let norm = a.iter().flatten().fold(0.0f64, |x, &y| x.max(y.abs()));
    if norm == 0.0 {
        return 0.0;
    }
    ((log_scale + norm.ln()) / exponent).exp()
}

/// `M_F̂ · M_Ĝ` restricted to the cut `V^F ∩ V^G`; every alternating cycle
/// lives there, and the remaining rows or columns of the full product vanish.
pub fn circuit_matrix(f: &WeightedGraph, g: &WeightedGraph) -> WeightMatrix {
    let index: Vec<Vertex> = f.vertices().union(g.vertices()).copied().collect();
    let cut: Vec<Vertex> = f.vertices().intersection(g.vertices()).copied().collect();
    let prod = WeightMatrix::aggregate_over(f, &index).mul(&WeightMatrix::aggregate_over(g, &index));
    prod.restrict(&cut, &cut)
}

/// `−log det(I − M_F̂ M_Ĝ)`, or `∞` when the circuit series diverges.
pub fn logdet_measure(f: &WeightedGraph, g: &WeightedGraph) -> ExtReal {
    let m = circuit_matrix(f, g);
    match mmatrix_solve(&identity_minus(&m, &Rational::one()), None) {
        Some((det, _)) => ExtReal::Finite(Scalar::neg_ln(det)),
        None => ExtReal::Infinite,
    }
}

/// `det(I − M_F̂ M_Ĝ)` when the series converges.
pub fn circuit_determinant(f: &WeightedGraph, g: &WeightedGraph) -> Option<Rational> {
    let m = circuit_matrix(f, g);
    mmatrix_solve(&identity_minus(&m, &Rational::one()), None).map(|(d, _)| d)
}

/// The linear system behind aggregated execution, over the useful junction
/// states: `R = D + E·(I − N)⁻¹·X`.
#[derive(Clone, Debug)]
pub struct JunctionSystem {
    pub states: Vec<(Vertex, crate::graph::Color)>,
    pub boundary: Vec<Vertex>,
    pub transition: Vec<Vec<Rational>>,
    pub entry: Vec<Vec<Rational>>,
    pub exit: Vec<Vec<Rational>>,
    pub direct: WeightMatrix,
}

impl JunctionSystem {
    pub fn build(f: &WeightedGraph, g: &WeightedGraph) -> Self {
        let plug = Plugging::new(f, g);
        let useful = plug.useful_states();
        let keep: Vec<usize> = (0..useful.len()).filter(|&s| useful[s]).collect();
        let local: BTreeMap<usize, usize> = keep.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        let boundary: Vec<Vertex> = plug.boundary().into_iter().collect();
        let bpos = positions(&boundary);
        let n = keep.len();
        let zero = Rational::zero;
        let mut transition = vec![vec![zero(); n]; n];
        let mut entry = vec![vec![zero(); n]; boundary.len()];
        let mut exit = vec![vec![zero(); boundary.len()]; n];
        let mut direct = WeightMatrix::zero(boundary.clone(), boundary.clone());
        for (i, &s) in keep.iter().enumerate() {
            for &(e, t) in plug.transitions(s) {
                if let Some(&j) = local.get(&t) {
                    transition[i][j] += &plug.edge(e).weight;
                }
            }
            for &e in plug.exits(s) {
                let edge = plug.edge(e);
                exit[i][bpos[&edge.tgt]] += &edge.weight;
            }
        }
        for &(e, s) in plug.entries() {
            if let Some(&j) = local.get(&s) {
                let edge = plug.edge(e);
                entry[bpos[&edge.src]][j] += &edge.weight;
            }
        }
        for &e in plug.direct() {
            let edge = plug.edge(e);
            direct.entries[bpos[&edge.src]][bpos[&edge.tgt]] += &edge.weight;
        }
        JunctionSystem {
            states: keep.iter().map(|&s| plug.states()[s]).collect(),
            boundary,
            transition,
            entry,
            exit,
            direct,
        }
    }

    fn state_index(&self) -> Vec<Vertex> {
        // placeholder labels; state matrices are positional
        (0..self.states.len() as u64).map(Vertex).collect()
    }

    pub fn solve(&self) -> Result<WeightMatrix> {
        let sidx = self.state_index();
        let n_mat = WeightMatrix {
            rows: sidx.clone(),
            cols: sidx.clone(),
            entries: self.transition.clone(),
        };
        let x = WeightMatrix {
            rows: sidx.clone(),
            cols: self.boundary.clone(),
            entries: self.exit.clone(),
        };
        let e = WeightMatrix {
            rows: self.boundary.clone(),
            cols: sidx,
            entries: self.entry.clone(),
        };
        let (_, y) = mmatrix_solve(&identity_minus(&n_mat, &Rational::one()), Some(&x)).ok_or(Error::Divergent)?;
        Ok(self.direct.add(&e.mul(&y.unwrap())))
    }

    pub fn explain(&self) -> String {
        let label = |(v, c): &(Vertex, crate::graph::Color)| format!("({v},{c:?})");
        let row = |r: &[Rational]| r.iter().map(format_rational).collect::<Vec<_>>().join("\t");
        let mut out = String::new();
        out.push_str(&format!(
            "states: {}\n",
            self.states.iter().map(label).collect::<Vec<_>>().join(" ")
        ));
        out.push_str(&format!(
            "boundary: {}\n",
            self.boundary.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
        ));
        out.push_str("N:\n");
        for r in &self.transition {
            out.push_str(&format!("  {}\n", row(r)));
        }
        out.push_str("entry (boundary x states):\n");
        for r in &self.entry {
            out.push_str(&format!("  {}\n", row(r)));
        }
        out.push_str("exit (states x boundary):\n");
        for r in &self.exit {
            out.push_str(&format!("  {}\n", row(r)));
        }
        out.push_str(&format!("direct:\n{}", self.direct));
        let sidx = self.state_index();
        let n_mat = WeightMatrix {
            rows: sidx.clone(),
            cols: sidx,
            entries: self.transition.clone(),
        };
        out.push_str(&format!("spectral radius of N ~ {:.6}\n", spectral_radius_estimate(&n_mat)));
        out
    }
}

/// Σ over alternating boundary paths of their weights, in closed form.
pub fn execute_aggregated(f: &WeightedGraph, g: &WeightedGraph) -> Result<WeightMatrix> {
    JunctionSystem::build(f, g).solve()
}

/// Exact equality of aggregated graphs over possibly different vertex sets.
pub fn same_aggregate(a: &WeightMatrix, b: &WeightMatrix) -> bool {
    let rows: BTreeSet<Vertex> = a.rows.iter().chain(&b.rows).copied().collect();
    let cols: BTreeSet<Vertex> = a.cols.iter().chain(&b.cols).copied().collect();
    rows.iter()
        .all(|&u| cols.iter().all(|&v| a.get(u, v) == b.get(u, v)))
}
