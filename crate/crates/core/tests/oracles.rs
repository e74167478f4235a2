//! Brute-force oracles, independent of the library's algorithms: depth-first
//! enumeration of alternating paths and of alternating closed walks.

use std::collections::{BTreeMap, BTreeSet};

use intgraph_core::gen::{pair, trial_rng, GraphShape};
use intgraph_core::graph::{execute, Plugging};
use intgraph_core::matrix::{circuit_determinant, execute_aggregated, logdet_measure};
use intgraph_core::measure::measure_graphs;
use intgraph_core::project::{cut, Project};
use intgraph_core::rational::{int, ratio};
use intgraph_core::scalar::Scalar;
use intgraph_core::{Color, Edge, ExtReal, MeasureParam, Rational, Vertex, WeightMatrix, WeightedGraph};
use num_traits::{One, Zero};

type Labelled = (u8, usize);

fn graph(vs: &[u64], es: &[(u64, u64, i64, i64)]) -> WeightedGraph {
    WeightedGraph::new(
        vs.iter().map(|&v| Vertex(v)),
        es.iter().map(|&(s, t, n, d)| Edge::new(s, t, ratio(n, d))).collect(),
    )
    .unwrap()
}

fn labelled(f: &WeightedGraph, g: &WeightedGraph) -> Vec<(Labelled, Edge)> {
    let left = f.edges().iter().enumerate().map(|(i, e)| ((0, i), e.clone()));
    let right = g.edges().iter().enumerate().map(|(i, e)| ((1, i), e.clone()));
    left.chain(right).collect()
}

/// Sum of alternating path weights between boundary vertices, or `None`
/// when there are infinitely many such paths.
///
/// A state `(v, c)` is a cut vertex entered by an edge of colour `c`.  Paths
/// are infinite exactly when some state both reachable from the boundary
/// and able to reach it lies on a cycle; otherwise they are enumerated
/// directly.
fn path_oracle(f: &WeightedGraph, g: &WeightedGraph) -> Option<BTreeMap<(Vertex, Vertex), Rational>> {
    let cut: BTreeSet<Vertex> = f.vertices().intersection(g.vertices()).copied().collect();
    let edges = labelled(f, g);
    let fixpoint = |step: &dyn Fn(&BTreeSet<(Vertex, u8)>, &(Labelled, Edge)) -> Option<(Vertex, u8)>| {
        let mut set = BTreeSet::new();
        loop {
            let before = set.len();
            for e in &edges {
                if let Some(s) = step(&set, e) {
                    set.insert(s);
                }
            }
            if set.len() == before {
                return set;
            }
        }
    };
    let live = fixpoint(&|set, (l, e)| {
        (cut.contains(&e.src) && (!cut.contains(&e.tgt) || set.contains(&(e.tgt, l.0)))).then_some((e.src, 1 - l.0))
    });
    let reached = fixpoint(&|set, (l, e)| {
        (cut.contains(&e.tgt) && (!cut.contains(&e.src) || set.contains(&(e.src, 1 - l.0)))).then_some((e.tgt, l.0))
    });
    let useful: BTreeSet<(Vertex, u8)> = live.intersection(&reached).copied().collect();
    let succ = |(v, c): (Vertex, u8)| {
        edges
            .iter()
            .filter(move |(l, e)| l.0 != c && e.src == v)
            .map(|(l, e)| (e.tgt, l.0))
    };
    // Remove states without useful successors until none is left or a cycle remains.
    let mut remaining = useful.clone();
    loop {
        let sinks: Vec<_> = remaining
            .iter()
            .copied()
            .filter(|&s| succ(s).all(|t| !remaining.contains(&t)))
            .collect();
        if sinks.is_empty() {
            break;
        }
        for s in sinks {
            remaining.remove(&s);
        }
    }
    if !remaining.is_empty() {
        return None;
    }
    let mut out: BTreeMap<(Vertex, Vertex), Rational> = BTreeMap::new();
    let mut stack: Vec<(Vertex, &(Labelled, Edge), Rational)> = edges
        .iter()
        .filter(|(_, e)| !cut.contains(&e.src))
        .map(|e| (e.1.src, e, Rational::one()))
        .collect();
    while let Some((start, (l, e), w)) = stack.pop() {
        let w = w * &e.weight;
        if !cut.contains(&e.tgt) {
            *out.entry((start, e.tgt)).or_insert_with(Rational::zero) += w;
        } else if useful.contains(&(e.tgt, l.0)) {
            for next in edges.iter().filter(|(m, x)| m.0 != l.0 && x.src == e.tgt) {
                stack.push((start, next, w.clone()));
            }
        }
    }
    out.retain(|_, w| !w.is_zero());
    Some(out)
}

fn aggregate(g: &WeightedGraph) -> BTreeMap<(Vertex, Vertex), Rational> {
    let mut out: BTreeMap<(Vertex, Vertex), Rational> = BTreeMap::new();
    for e in g.edges() {
        *out.entry((e.src, e.tgt)).or_insert_with(Rational::zero) += &e.weight;
    }
    out
}

fn matrix_entries(m: &WeightMatrix) -> BTreeMap<(Vertex, Vertex), Rational> {
    let mut out = BTreeMap::new();
    for (i, r) in m.rows.iter().enumerate() {
        for (j, c) in m.cols.iter().enumerate() {
            if !m.entries[i][j].is_zero() {
                out.insert((*r, *c), m.entries[i][j].clone());
            }
        }
    }
    out
}

fn min_rotation(word: &[Labelled]) -> Vec<Labelled> {
    (0..word.len())
        .map(|r| word[r..].iter().chain(&word[..r]).copied().collect::<Vec<_>>())
        .min()
        .unwrap()
}

fn is_primitive(word: &[Labelled]) -> bool {
    let n = word.len();
    (1..n).filter(|&d| n.is_multiple_of(d)).all(|d| (0..n).any(|i| word[i] != word[(i + d) % n]))
}

/// Every primitive alternating closed walk of length at most `max_len`,
/// up to rotation, with its weight.
fn circuit_oracle(f: &WeightedGraph, g: &WeightedGraph, max_len: usize) -> BTreeMap<Vec<Labelled>, Rational> {
    let edges = labelled(f, g);
    let mut out = BTreeMap::new();
    fn extend(
        edges: &[(Labelled, Edge)],
        word: &mut Vec<usize>,
        max_len: usize,
        out: &mut BTreeMap<Vec<Labelled>, Rational>,
    ) {
        let first = &edges[word[0]];
        let last = &edges[*word.last().unwrap()];
        if last.0 .0 != first.0 .0 && last.1.tgt == first.1.src {
            let labels: Vec<Labelled> = word.iter().map(|&i| edges[i].0).collect();
            if is_primitive(&labels) {
                let w = word.iter().fold(Rational::one(), |acc, &i| acc * &edges[i].1.weight);
                out.insert(min_rotation(&labels), w);
            }
        }
        if word.len() == max_len {
            return;
        }
        for (i, e) in edges.iter().enumerate() {
            if e.0 .0 != last.0 .0 && e.1.src == last.1.tgt {
                word.push(i);
                extend(edges, word, max_len, out);
                word.pop();
            }
        }
    }
    for i in 0..edges.len() {
        extend(&edges, &mut vec![i], max_len, &mut out);
    }
    out
}

fn library_circuits(f: &WeightedGraph, g: &WeightedGraph, max_len: usize) -> BTreeMap<Vec<Labelled>, Rational> {
    Plugging::new(f, g)
        .circuits_up_to(max_len)
        .into_iter()
        .map(|c| {
            let labels: Vec<Labelled> = c
                .edges
                .iter()
                .map(|e| (if e.color == Color::Left { 0 } else { 1 }, e.index))
                .collect();
            (min_rotation(&labels), c.weight)
        })
        .collect()
}

fn small() -> GraphShape {
    GraphShape {
        max_vertices: 4,
        max_edges: 6,
        max_den: 4,
    }
}

#[test]
fn execution_matches_path_enumeration() {
    let mut compared = 0;
    for t in 0..600 {
        let (f, g) = pair(&mut trial_rng(41, t), &GraphShape::default());
        let Some(paths) = path_oracle(&f, &g) else {
            assert!(execute(&f, &g).is_err(), "trial {t}");
            continue;
        };
        let h = execute(&f, &g).unwrap();
        assert_eq!(aggregate(&h), paths, "trial {t}");
        assert_eq!(matrix_entries(&execute_aggregated(&f, &g).unwrap()), paths, "trial {t}");
        compared += 1;
    }
    assert!(compared > 300);
}

#[test]
fn circuits_match_walk_enumeration() {
    let mut nonempty = 0;
    for t in 0..400 {
        let (f, g) = pair(&mut trial_rng(42, t), &small());
        let expected = circuit_oracle(&f, &g, 6);
        assert_eq!(library_circuits(&f, &g, 6), expected, "trial {t}");
        nonempty += !expected.is_empty() as usize;
    }
    assert!(nonempty > 50);
}

#[test]
fn finite_circuit_sets_give_the_determinant() {
    let mut checked = 0;
    for t in 0..800 {
        let (f, g) = pair(&mut trial_rng(43, t), &small());
        let plug = Plugging::new(&f, &g);
        if !plug.has_cycle() || !plug.circuits_complete(16) {
            continue;
        }
        let circuits = circuit_oracle(&f, &g, 16);
        let expected = circuits.values().fold(Rational::one(), |acc, w| acc * (Rational::one() - w));
        if circuits.values().any(|w| w.is_one()) {
            assert_eq!(circuit_determinant(&f, &g), None, "trial {t}");
            assert!(logdet_measure(&f, &g).is_infinite());
            continue;
        }
        assert_eq!(circuit_determinant(&f, &g), Some(expected.clone()), "trial {t}");
        let sum = circuits
            .values()
            .fold(Scalar::zero(), |acc, w| &acc + &Scalar::neg_ln(Rational::one() - w));
        assert_eq!(logdet_measure(&f, &g), ExtReal::from(sum), "trial {t}");
        checked += 1;
    }
    assert!(checked > 20, "{checked}");
}

#[test]
fn two_cycle_is_one_circuit() {
    let f = graph(&[1, 2], &[(1, 2, 1, 2)]);
    let g = graph(&[1, 2], &[(2, 1, 1, 2)]);
    let circuits = circuit_oracle(&f, &g, 4);
    assert_eq!(circuits.values().cloned().collect::<Vec<_>>(), vec![ratio(1, 4)]);
    assert!(Plugging::new(&f, &g).circuits_complete(4));
    assert_eq!(logdet_measure(&f, &g), ExtReal::from(Scalar::neg_ln(ratio(3, 4))));
    let m = measure_graphs(&f, &g, &MeasureParam::LogDet).unwrap();
    assert!((m.value.to_f64() - (4.0f64 / 3.0).ln()).abs() < 1e-12);
}

#[test]
fn parallel_edges_mix_into_longer_circuits() {
    let f = graph(&[1, 2], &[(1, 2, 1, 2), (1, 2, 1, 3)]);
    let g = graph(&[1, 2], &[(2, 1, 1, 2)]);
    let short = library_circuits(&f, &g, 2);
    let mut ws: Vec<Rational> = short.values().cloned().collect();
    ws.sort();
    assert_eq!(ws, vec![ratio(1, 6), ratio(1, 4)]);
    assert!(!Plugging::new(&f, &g).circuits_complete(2));
    let length4 = circuit_oracle(&f, &g, 4).into_keys().filter(|w| w.len() == 4).count();
    assert_eq!(length4, 1);
    assert_eq!(circuit_determinant(&f, &g), Some((int(1) - ratio(1, 4)) - ratio(1, 6)));
}

#[test]
fn geometric_series_through_a_loop() {
    let f = graph(&[1, 2], &[(1, 2, 1, 1), (2, 2, 1, 2)]);
    let g = graph(&[2, 3], &[(2, 2, 1, 2), (2, 3, 1, 1)]);
    assert!(execute(&f, &g).is_err());
    let m = execute_aggregated(&f, &g).unwrap();
    assert_eq!(matrix_entries(&m), BTreeMap::from([((Vertex(1), Vertex(3)), ratio(4, 3))]));
}

#[test]
fn cut_of_two_chains() {
    let p = MeasureParam::LogDet;
    let f = Project::from_graph(graph(&[1, 2], &[(1, 2, 1, 2)]));
    let g = Project::from_graph(graph(&[2, 3], &[(2, 3, 1, 3)]));
    let h = cut(&f, &g, &p).unwrap();
    assert!(h.wager().is_zero());
    assert_eq!(h.body().slices().len(), 1);
    assert_eq!(h.body().slices()[0].1, graph(&[1, 3], &[(1, 3, 1, 6)]));
}
