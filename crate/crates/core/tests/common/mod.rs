//! Random perturbations of graphs and algebra data that must not change
//! isomorphism classes.

#![allow(dead_code)]

use gkm_core::graph::GraphFile;
use gkm_core::poly::IntPolynomial;
use gkm_core::rigidity::AlgebraData;
use gkm_core::transport::is_gkm;
use gkm_core::GkmGraph;
use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;

/// Renames and reorders vertices, reorders edges and reverses random edge
/// records. Returns the new graph and `perm` with old vertex `i` renamed to new index `perm[i]`.
pub fn relabel<R: Rng>(rng: &mut R, g: &GkmGraph) -> (GkmGraph, Vec<usize>) {
    let file = g.to_file();
    let n = file.vertices.len();
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let tag: u32 = rng.gen_range(0..1000);
    let new_name = |i: usize| format!("w{tag}-{}", perm[i]);
    let index = |name: &str| file.vertices.iter().position(|v| v == name).unwrap();
    let mut vertices = vec![String::new(); n];
    for i in 0..n {
        vertices[perm[i]] = new_name(i);
    }
    let mut edges = file.edges.clone();
    edges.shuffle(rng);
    for e in &mut edges {
        e.from = new_name(index(&e.from));
        e.to = new_name(index(&e.to));
        if rng.gen_bool(0.5) {
            std::mem::swap(&mut e.from, &mut e.to);
            std::mem::swap(&mut e.alpha, &mut e.alpha_rev);
        }
    }
    let out = GraphFile { rank: file.rank, valence: file.valence, vertices, edges };
    (GkmGraph::from_file(&out).unwrap(), perm)
}

/// Negates every label.
pub fn negate(g: &GkmGraph) -> GkmGraph {
    let mut file = g.to_file();
    for e in &mut file.edges {
        e.alpha.iter_mut().for_each(|c| *c = -*c);
        e.alpha_rev.iter_mut().for_each(|c| *c = -*c);
    }
    GkmGraph::from_file(&file).unwrap()
}

/// Flips the sign of both labels of random edges; the result need not be GKM.
pub fn flip_edges<R: Rng>(rng: &mut R, g: &GkmGraph) -> GkmGraph {
    let mut file = g.to_file();
    for e in &mut file.edges {
        if rng.gen_bool(0.5) {
            e.alpha.iter_mut().for_each(|c| *c = -*c);
            e.alpha_rev.iter_mut().for_each(|c| *c = -*c);
        }
    }
    GkmGraph::from_file(&file).unwrap()
}

/// Edge sign flips that keep the graph GKM: a global negation plus any
/// per-edge flips that still admit a transport.
pub fn flip_keeping_gkm<R: Rng>(rng: &mut R, g: &GkmGraph) -> GkmGraph {
    let base = if rng.gen_bool(0.5) { negate(g) } else { g.clone() };
    let flipped = flip_edges(rng, &base);
    if is_gkm(&flipped) {
        flipped
    } else {
        base
    }
}

/// Relabeling plus sign flips; `keep_gkm` restricts to flips preserving GKM.
pub fn disguise<R: Rng>(rng: &mut R, g: &GkmGraph, keep_gkm: bool) -> GkmGraph {
    let flipped = if keep_gkm { flip_keeping_gkm(rng, g) } else { flip_edges(rng, g) };
    relabel(rng, &flipped).0
}

/// Replaces every graded basis by a random unimodular recombination.
pub fn scramble<R: Rng>(rng: &mut R, data: &AlgebraData) -> AlgebraData {
    let mut out = data.clone();
    for piece in &mut out.pieces {
        let k = piece.len();
        if k == 0 {
            continue;
        }
        for _ in 0..3 * k {
            let (i, j) = (rng.gen_range(0..k), rng.gen_range(0..k));
            match rng.gen_range(0..3) {
                0 if i != j => {
                    let c = BigInt::from(rng.gen_range(-3i64..=3));
                    let add: Vec<IntPolynomial> = piece[j].iter().map(|v| v.scale(&c)).collect();
                    for (x, y) in piece[i].iter_mut().zip(add) {
                        *x = &*x + &y;
                    }
                }
                1 => piece[i].iter_mut().for_each(|x| *x = -&*x),
                _ => piece.swap(i, j),
            }
        }
    }
    out
}

/// Anonymized algebra data: scrambled bases and a random point order.
pub fn anonymize<R: Rng>(rng: &mut R, g: &GkmGraph) -> (AlgebraData, Vec<usize>) {
    let data = AlgebraData::from_graph(g).unwrap();
    let mut perm: Vec<usize> = (0..g.num_vertices()).collect();
    perm.shuffle(rng);
    (scramble(rng, &data.relabel(&perm).unwrap()), perm)
}
