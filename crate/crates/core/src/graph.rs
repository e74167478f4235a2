//! Weighted multigraphs, plugging, alternating paths and circuits, execution.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use num_traits::One;
use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};

use crate::error::{Error, Result};
use crate::rational::{format_rational, in_unit_interval};
use crate::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vertex(pub u64);

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub src: Vertex,
    pub tgt: Vertex,
    pub weight: Rational,
}

impl Edge {
    pub fn new(src: u64, tgt: u64, weight: Rational) -> Self {
        Edge {
            src: Vertex(src),
            tgt: Vertex(tgt),
            weight,
        }
    }
}

/// A finite directed multigraph with weights in `]0,1]`.  Edge identities
/// are positions in the edge sequence.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WeightedGraph {
    vertices: BTreeSet<Vertex>,
    edges: Vec<Edge>,
}

impl WeightedGraph {
    pub fn new(vertices: impl IntoIterator<Item = Vertex>, edges: Vec<Edge>) -> Result<Self> {
        let vertices: BTreeSet<Vertex> = vertices.into_iter().collect();
        for e in &edges {
            if !in_unit_interval(&e.weight) {
                return Err(Error::InvalidWeight(e.weight.clone()));
            }
            for v in [e.src, e.tgt] {
                if !vertices.contains(&v) {
                    return Err(Error::UnknownVertex(v));
                }
            }
        }
        Ok(WeightedGraph { vertices, edges })
    }

    /// The edgeless graph on `vertices`.
    pub fn empty(vertices: impl IntoIterator<Item = Vertex>) -> Self {
        WeightedGraph {
            vertices: vertices.into_iter().collect(),
            edges: Vec::new(),
        }
    }

    pub fn vertices(&self) -> &BTreeSet<Vertex> {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Disjoint union.
    pub fn union(&self, other: &WeightedGraph) -> Result<WeightedGraph> {
        let overlap: BTreeSet<Vertex> = self.vertices.intersection(&other.vertices).copied().collect();
        if !overlap.is_empty() {
            return Err(Error::CarrierOverlap(overlap));
        }
        Ok(WeightedGraph {
            vertices: self.vertices.union(&other.vertices).copied().collect(),
            edges: self.edges.iter().chain(&other.edges).cloned().collect(),
        })
    }

    /// Renames vertices; `map` must be defined and injective on the vertex set.
    pub fn relabel(&self, map: &BTreeMap<Vertex, Vertex>) -> Result<WeightedGraph> {
        let mut vertices = BTreeSet::new();
        for v in &self.vertices {
            let w = map.get(v).ok_or(Error::NotInjectiveOnCarrier)?;
            if !vertices.insert(*w) {
                return Err(Error::NotInjectiveOnCarrier);
            }
        }
        let edges = self
            .edges
            .iter()
            .map(|e| Edge {
                src: map[&e.src],
                tgt: map[&e.tgt],
                weight: e.weight.clone(),
            })
            .collect();
        Ok(WeightedGraph { vertices, edges })
    }

    pub fn to_dot(&self, name: &str) -> String {
        let mut out = format!("digraph {name} {{\n");
        for v in &self.vertices {
            out.push_str(&format!("  {v};\n"));
        }
        for e in &self.edges {
            out.push_str(&format!(
                "  {} -> {} [label=\"{}\"];\n",
                e.src,
                e.tgt,
                format_rational(&e.weight)
            ));
        }
        out.push_str("}\n");
        out
    }
}

/// Provenance of an edge in a plugging: `Left` for the first graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Color {
    Left,
    Right,
}

impl Color {
    pub fn flip(self) -> Color {
        match self {
            Color::Left => Color::Right,
            Color::Right => Color::Left,
        }
    }
}

/// An edge of a plugging.  The derived order (left edges first, then by
/// position) is the fixed edge order used for canonical rotations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PEdge {
    pub color: Color,
    pub index: usize,
}

impl PEdge {
    pub fn left(index: usize) -> Self {
        PEdge { color: Color::Left, index }
    }

    pub fn right(index: usize) -> Self {
        PEdge { color: Color::Right, index }
    }
}

impl fmt::Display for PEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self.color {
            Color::Left => 'L',
            Color::Right => 'R',
        };
        write!(f, "{c}{}", self.index)
    }
}

/// A nonempty sequence of plugged edges.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path {
    pub edges: Vec<PEdge>,
}

/// An alternating cycle up to rotation, stored as its least rotation.
/// `period` is the `k` for which the cycle is the `k`-th power of a
/// primitive cycle; members of the 1-circuit set have `period == 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circuit {
    pub edges: Vec<PEdge>,
    pub weight: Rational,
    pub period: usize,
}

/// State of the junction automaton: a cut vertex together with the color
/// of the edge that arrived there.
pub type State = (Vertex, Color);

/// The plugging `F ⫶ G` together with its junction automaton.
///
/// Every edge with both endpoints in the cut `V^F ∩ V^G` is a transition
/// `(src, !color) → (tgt, color)`, so alternating walks through the cut are
/// exactly walks in the automaton.
pub struct Plugging<'a> {
    pub left: &'a WeightedGraph,
    pub right: &'a WeightedGraph,
    cut: BTreeSet<Vertex>,
    states: Vec<State>,
    index: BTreeMap<State, usize>,
    trans: Vec<Vec<(PEdge, usize)>>,
    exits: Vec<Vec<PEdge>>,
    entries: Vec<(PEdge, usize)>,
    direct: Vec<PEdge>,
}

impl<'a> Plugging<'a> {
    pub fn new(left: &'a WeightedGraph, right: &'a WeightedGraph) -> Self {
        let cut: BTreeSet<Vertex> = left.vertices.intersection(&right.vertices).copied().collect();
        let mut states = Vec::with_capacity(2 * cut.len());
        let mut index = BTreeMap::new();
        for &v in &cut {
            for c in [Color::Left, Color::Right] {
                index.insert((v, c), states.len());
                states.push((v, c));
            }
        }
        let mut p = Plugging {
            left,
            right,
            cut,
            trans: vec![Vec::new(); states.len()],
            exits: vec![Vec::new(); states.len()],
            states,
            index,
            entries: Vec::new(),
            direct: Vec::new(),
        };
        let all: Vec<PEdge> = p.all_edges().collect();
        for pe in all {
            let e = p.edge(pe);
            let (src_in, tgt_in) = (p.cut.contains(&e.src), p.cut.contains(&e.tgt));
            let to = p.index.get(&(e.tgt, pe.color)).copied();
            let from = p.index.get(&(e.src, pe.color.flip())).copied();
            match (src_in, tgt_in) {
                (false, false) => p.direct.push(pe),
                (false, true) => p.entries.push((pe, to.unwrap())),
                (true, false) => p.exits[from.unwrap()].push(pe),
                (true, true) => p.trans[from.unwrap()].push((pe, to.unwrap())),
            }
        }
        p
    }

    pub fn graph(&self, c: Color) -> &'a WeightedGraph {
        match c {
            Color::Left => self.left,
            Color::Right => self.right,
        }
    }

    pub fn edge(&self, e: PEdge) -> &'a Edge {
        &self.graph(e.color).edges[e.index]
    }

    pub fn all_edges(&self) -> impl Iterator<Item = PEdge> + '_ {
        (0..self.left.edges.len())
            .map(PEdge::left)
            .chain((0..self.right.edges.len()).map(PEdge::right))
    }

    pub fn cut(&self) -> &BTreeSet<Vertex> {
        &self.cut
    }

    /// `V^F Δ V^G`.
    pub fn boundary(&self) -> BTreeSet<Vertex> {
        self.left
            .vertices
            .symmetric_difference(&self.right.vertices)
            .copied()
            .collect()
    }

    pub fn states(&self) -> &[State] {
        &self.states
    }

    pub fn state_index(&self, s: State) -> Option<usize> {
        self.index.get(&s).copied()
    }

    pub fn transitions(&self, state: usize) -> &[(PEdge, usize)] {
        &self.trans[state]
    }

    pub fn exits(&self, state: usize) -> &[PEdge] {
        &self.exits[state]
    }

    pub fn entries(&self) -> &[(PEdge, usize)] {
        &self.entries
    }

    pub fn direct(&self) -> &[PEdge] {
        &self.direct
    }

    pub fn weight_of(&self, edges: &[PEdge]) -> Rational {
        edges
            .iter()
            .fold(Rational::one(), |acc, &e| acc * &self.edge(e).weight)
    }

    /// States lying on some alternating path between two boundary vertices.
    pub fn useful_states(&self) -> Vec<bool> {
        let n = self.states.len();
        let mut fwd = vec![false; n];
        let mut queue: VecDeque<usize> = VecDeque::new();
        for &(_, s) in &self.entries {
            if !fwd[s] {
                fwd[s] = true;
                queue.push_back(s);
            }
        }
        while let Some(s) = queue.pop_front() {
            for &(_, t) in &self.trans[s] {
                if !fwd[t] {
                    fwd[t] = true;
                    queue.push_back(t);
                }
            }
        }
        let mut rev: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (s, ts) in self.trans.iter().enumerate() {
            for &(_, t) in ts {
                rev[t].push(s);
            }
        }
        let mut bwd = vec![false; n];
        for s in 0..n {
            if !self.exits[s].is_empty() {
                bwd[s] = true;
                queue.push_back(s);
            }
        }
        while let Some(t) = queue.pop_front() {
            for &s in &rev[t] {
                if !bwd[s] {
                    bwd[s] = true;
                    queue.push_back(s);
                }
            }
        }
        (0..n).map(|s| fwd[s] && bwd[s]).collect()
    }

    /// Some alternating cycle through the states selected by `keep`, if any.
    pub fn find_cycle(&self, keep: &[bool]) -> Option<Vec<PEdge>> {
        #[derive(Clone, Copy, PartialEq)]
        enum Mark {
            New,
            Active,
            Done,
        }
        let n = self.states.len();
        let mut mark = vec![Mark::New; n];
        for root in 0..n {
            if !keep[root] || mark[root] != Mark::New {
                continue;
            }
            // stack of (state, next transition position, edge used to arrive)
            let mut stack: Vec<(usize, usize, Option<PEdge>)> = vec![(root, 0, None)];
            mark[root] = Mark::Active;
            while let Some(top) = stack.last_mut() {
                let (s, pos) = (top.0, top.1);
                if pos < self.trans[s].len() {
                    top.1 += 1;
                    let (e, t) = self.trans[s][pos];
                    if !keep[t] {
                        continue;
                    }
                    match mark[t] {
                        Mark::New => {
                            mark[t] = Mark::Active;
                            stack.push((t, 0, Some(e)));
                        }
                        Mark::Active => {
                            let start = stack.iter().position(|f| f.0 == t).unwrap();
                            let mut cycle: Vec<PEdge> =
                                stack[start + 1..].iter().map(|f| f.2.unwrap()).collect();
                            cycle.push(e);
                            return Some(cycle);
                        }
                        Mark::Done => {}
                    }
                } else {
                    mark[s] = Mark::Done;
                    stack.pop();
                }
            }
        }
        None
    }

    /// An alternating cycle lying on a boundary-to-boundary path, witnessing
    /// that `F::G` has infinitely many edges.
    pub fn divergence_witness(&self) -> Option<Vec<PEdge>> {
        self.find_cycle(&self.useful_states())
    }

    /// Whether the plugging has any alternating cycle at all.
    pub fn has_cycle(&self) -> bool {
        self.find_cycle(&vec![true; self.states.len()]).is_some()
    }

    fn petgraph(&self) -> DiGraph<(), PEdge> {
        let mut g = DiGraph::new();
        let nodes: Vec<NodeIndex> = (0..self.states.len()).map(|_| g.add_node(())).collect();
        for (s, ts) in self.trans.iter().enumerate() {
            for &(e, t) in ts {
                g.add_edge(nodes[s], nodes[t], e);
            }
        }
        g
    }

    /// Whether every alternating 1-circuit has length at most `max_len`:
    /// each cyclic strongly connected component must be a single simple
    /// cycle (otherwise primitive cycles of every large length exist).
    pub fn circuits_complete(&self, max_len: usize) -> bool {
        let g = self.petgraph();
        for scc in tarjan_scc(&g) {
            let members: BTreeSet<usize> = scc.iter().map(|n| n.index()).collect();
            let internal: usize = members
                .iter()
                .map(|&s| self.trans[s].iter().filter(|(_, t)| members.contains(t)).count())
                .sum();
            if internal == 0 {
                continue;
            }
            if internal != members.len() || members.len() > max_len {
                return false;
            }
        }
        true
    }

    /// All alternating 1-circuits of length at most `max_len`, each once.
    ///
    /// Circuits are enumerated as Lyndon words over the edge order by the
    /// Fredricksen–Kessler–Maiorana recursion restricted to walks of the
    /// junction automaton; a word is emitted when it is Lyndon and closes.
    pub fn circuits_up_to(&self, max_len: usize) -> Vec<Circuit> {
        let mut out = Vec::new();
        let mut firsts: Vec<(PEdge, usize, usize)> = Vec::new();
        for (s, ts) in self.trans.iter().enumerate() {
            for &(e, t) in ts {
                firsts.push((e, s, t));
            }
        }
        firsts.sort();
        for &(first, start, after) in &firsts {
            let dist = self.distances_to(start, first);
            if dist[after].is_none_or(|d| 1 + d > max_len) {
                continue;
            }
            let mut word = vec![first];
            self.lyndon_walk(&mut word, 1, after, start, &dist, max_len, &mut out);
        }
        out
    }

    /// Shortest number of transitions from each state to `target`, using only
    /// edges not smaller than `min`.
    fn distances_to(&self, target: usize, min: PEdge) -> Vec<Option<usize>> {
        let n = self.states.len();
        let mut rev: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (s, ts) in self.trans.iter().enumerate() {
            for &(e, t) in ts {
                if e >= min {
                    rev[t].push(s);
                }
            }
        }
        let mut dist = vec![None; n];
        dist[target] = Some(0);
        let mut queue = VecDeque::from([target]);
        while let Some(t) = queue.pop_front() {
            let d = dist[t].unwrap();
            for &s in &rev[t] {
                if dist[s].is_none() {
                    dist[s] = Some(d + 1);
                    queue.push_back(s);
                }
            }
        }
        dist
    }

    #[allow(clippy::too_many_arguments)]
    fn lyndon_walk(
        &self,
        word: &mut Vec<PEdge>,
        p: usize,
        state: usize,
        start: usize,
        dist: &[Option<usize>],
        max_len: usize,
        out: &mut Vec<Circuit>,
    ) {
        let n = word.len();
        if state == start && p == n {
            out.push(Circuit {
                weight: self.weight_of(word),
                edges: word.clone(),
                period: 1,
            });
        }
        if n == max_len {
            return;
        }
        let bound = word[n - p];
        for &(e, t) in &self.trans[state] {
            if e < bound {
                continue;
            }
            if dist[t].is_none_or(|d| n + 1 + d > max_len) {
                continue;
            }
            word.push(e);
            let q = if e == bound { p } else { n + 1 };
            self.lyndon_walk(word, q, t, start, dist, max_len, out);
            word.pop();
        }
    }

    /// Every alternating path between boundary vertices, in a fixed order.
    pub fn boundary_paths(&self) -> Result<Vec<Vec<PEdge>>> {
        let useful = self.useful_states();
        if self.find_cycle(&useful).is_some() {
            return Err(Error::Divergent);
        }
        let mut starts: Vec<(PEdge, Option<usize>)> = self
            .direct
            .iter()
            .map(|&e| (e, None))
            .chain(self.entries.iter().map(|&(e, s)| (e, Some(s))))
            .collect();
        starts.sort();
        let mut out = Vec::new();
        for (e, s) in starts {
            match s {
                None => out.push(vec![e]),
                Some(s) if useful[s] => {
                    let mut prefix = vec![e];
                    self.paths_from(s, &useful, &mut prefix, &mut out);
                }
                Some(_) => {}
            }
        }
        Ok(out)
    }

    fn paths_from(&self, s: usize, useful: &[bool], prefix: &mut Vec<PEdge>, out: &mut Vec<Vec<PEdge>>) {
        let mut next: Vec<(PEdge, Option<usize>)> = self.exits[s]
            .iter()
            .map(|&e| (e, None))
            .chain(self.trans[s].iter().map(|&(e, t)| (e, Some(t))))
            .collect();
        next.sort();
        for (e, t) in next {
            match t {
                None => {
                    prefix.push(e);
                    out.push(prefix.clone());
                    prefix.pop();
                }
                Some(t) if useful[t] => {
                    prefix.push(e);
                    self.paths_from(t, useful, prefix, out);
                    prefix.pop();
                }
                Some(_) => {}
            }
        }
    }
}

/// Whether `F::G` has infinitely many edges.
pub fn has_divergent_composition(f: &WeightedGraph, g: &WeightedGraph) -> bool {
    Plugging::new(f, g).divergence_witness().is_some()
}

/// `F::G`: one edge per alternating path between vertices of `V^F Δ V^G`.
pub fn execute(f: &WeightedGraph, g: &WeightedGraph) -> Result<WeightedGraph> {
    Ok(execute_traced(f, g)?.0)
}

/// `F::G` together with the witnessing path of each result edge.
pub fn execute_traced(f: &WeightedGraph, g: &WeightedGraph) -> Result<(WeightedGraph, Vec<Path>)> {
    let plug = Plugging::new(f, g);
    let paths = plug.boundary_paths()?;
    let edges = paths
        .iter()
        .map(|p| Edge {
            src: plug.edge(p[0]).src,
            tgt: plug.edge(*p.last().unwrap()).tgt,
            weight: plug.weight_of(p),
        })
        .collect();
    let graph = WeightedGraph {
        vertices: plug.boundary(),
        edges,
    };
    Ok((graph, paths.into_iter().map(|edges| Path { edges }).collect()))
}

/// The alternating 1-circuits of `F ⫶ G` of length at most `max_len`, and
/// whether that is all of them.
pub fn circuits_bounded(f: &WeightedGraph, g: &WeightedGraph, max_len: usize) -> (Vec<Circuit>, bool) {
    let plug = Plugging::new(f, g);
    (plug.circuits_up_to(max_len), plug.circuits_complete(max_len))
}

/// Canonical representative and period of an alternating cycle.
pub fn rotation_class(f: &WeightedGraph, g: &WeightedGraph, cycle: &[PEdge]) -> Result<(Circuit, usize)> {
    let plug = Plugging::new(f, g);
    let n = cycle.len();
    if n == 0 {
        return Err(Error::NotACycle);
    }
    for (i, &e) in cycle.iter().enumerate() {
        let next = cycle[(i + 1) % n];
        let ok = e.index < plug.graph(e.color).edges.len()
            && next.index < plug.graph(next.color).edges.len()
            && e.color != next.color
            && plug.edge(e).tgt == plug.edge(next).src;
        if !ok {
            return Err(Error::NotACycle);
        }
    }
    let period_len = (1..=n)
        .find(|&s| n.is_multiple_of(s) && (0..n).all(|i| cycle[i] == cycle[(i + s) % n]))
        .unwrap();
    let k = n / period_len;
    let edges = (0..n)
        .map(|r| cycle[r..].iter().chain(&cycle[..r]).copied().collect::<Vec<_>>())
        .min()
        .unwrap();
    let circuit = Circuit {
        weight: plug.weight_of(&edges),
        edges,
        period: k,
    };
    Ok((circuit, k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn g(vs: &[u64], es: &[(u64, u64, i64, i64)]) -> WeightedGraph {
        WeightedGraph::new(
            vs.iter().map(|&v| Vertex(v)),
            es.iter().map(|&(s, t, n, d)| Edge::new(s, t, ratio(n, d))).collect(),
        )
        .unwrap()
    }

    #[test]
    fn validation() {
        assert!(WeightedGraph::new([Vertex(1)], vec![Edge::new(1, 2, ratio(1, 2))]).is_err());
        assert!(WeightedGraph::new([Vertex(1)], vec![Edge::new(1, 1, ratio(3, 2))]).is_err());
        assert!(WeightedGraph::new([Vertex(1)], vec![Edge::new(1, 1, ratio(0, 1))]).is_err());
    }

    #[test]
    fn union_examples() {
        let a = g(&[1], &[(1, 1, 1, 2)]);
        let b = g(&[2], &[]);
        let u = a.union(&b).unwrap();
        assert_eq!(u.vertices().len(), 2);
        assert_eq!(u.edges().len(), 1);
        assert!(matches!(g(&[3], &[]).union(&g(&[3], &[])), Err(Error::CarrierOverlap(_))));
    }

    #[test]
    fn chain_execution() {
        let f = g(&[1, 2], &[(1, 2, 1, 2)]);
        let h = g(&[2, 3], &[(2, 3, 1, 3)]);
        assert!(!has_divergent_composition(&f, &h));
        let r = execute(&f, &h).unwrap();
        assert_eq!(r, g(&[1, 3], &[(1, 3, 1, 6)]));
        assert_eq!(execute(&g(&[1], &[]), &g(&[1], &[])).unwrap(), g(&[], &[]));
    }

    #[test]
    fn fax_relocates_a_loop() {
        let a = g(&[1], &[(1, 1, 1, 2)]);
        let fax = g(&[1, 5], &[(1, 5, 1, 1), (5, 1, 1, 1)]);
        assert_eq!(execute(&a, &fax).unwrap(), g(&[5], &[(5, 5, 1, 2)]));
    }

    #[test]
    fn divergent_instance() {
        let f = g(&[1, 2], &[(2, 2, 1, 2)]);
        let h = g(&[2, 3], &[(2, 2, 1, 2), (2, 3, 1, 1)]);
        // no entry from vertex 1, so the cycle is not on a boundary path
        assert!(!has_divergent_composition(&f, &h));
        let f = g(&[1, 2], &[(1, 2, 1, 1), (2, 2, 1, 2)]);
        assert!(has_divergent_composition(&f, &h));
        assert_eq!(execute(&f, &h), Err(Error::Divergent));
    }

    #[test]
    fn circuits_of_two_cycle() {
        let f = g(&[1, 2], &[(1, 2, 1, 2)]);
        let h = g(&[1, 2], &[(2, 1, 1, 2)]);
        let (cs, complete) = circuits_bounded(&f, &h, 4);
        assert!(complete);
        assert_eq!(cs.len(), 1);
        assert_eq!(cs[0].weight, ratio(1, 4));
    }

    #[test]
    fn parallel_edges_give_lyndon_words() {
        let f = g(&[1, 2], &[(1, 2, 1, 2), (1, 2, 1, 3)]);
        let h = g(&[1, 2], &[(2, 1, 1, 2)]);
        let (cs, complete) = circuits_bounded(&f, &h, 2);
        assert!(!complete);
        let mut ws: Vec<_> = cs.iter().map(|c| c.weight.clone()).collect();
        ws.sort();
        assert_eq!(ws, vec![ratio(1, 6), ratio(1, 4)]);
        let (cs4, _) = circuits_bounded(&f, &h, 4);
        assert_eq!(cs4.iter().filter(|c| c.edges.len() == 4).count(), 1);
    }

    #[test]
    fn rotation_periods() {
        let f = g(&[1, 2], &[(1, 2, 1, 2)]);
        let h = g(&[1, 2], &[(2, 1, 1, 2)]);
        let (e, r) = (PEdge::left(0), PEdge::right(0));
        assert_eq!(rotation_class(&f, &h, &[r, e]).unwrap().1, 1);
        assert_eq!(rotation_class(&f, &h, &[e, r, e, r]).unwrap().1, 2);
        let (c, k) = rotation_class(&f, &h, &[r, e, r, e, r, e]).unwrap();
        assert_eq!(k, 3);
        assert_eq!(c.edges[0], e);
        assert_eq!(rotation_class(&f, &h, &[e, e]), Err(Error::NotACycle));
    }

    #[test]
    fn dot_labels() {
        let dot = g(&[1, 2], &[(1, 2, 1, 3)]).to_dot("g");
        assert!(dot.contains("1 -> 2 [label=\"1/3\"]"));
    }
}
