//! Folded core graphs (Stallings automata) of finitely generated subgroups.
//!
//! Vertices are numbered by breadth-first search from the basepoint, reading
//! edge labels in [`Letter`] order, so two builds of the same subgroup give
//! identical graphs regardless of which generating set was used.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::words::{Alphabet, Letter, Word};

/// Folded, basepointed core graph of `⟨generators⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupGraph {
    alphabet: Alphabet,
    generators: Vec<Word>,
    /// `edges[v][letter.index()]`; the inverse letter's slot holds the reverse edge.
    edges: Vec<Vec<Option<usize>>>,
}

/// Finite index (vertex count of a complete graph) or infinite index.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Index {
    Finite(usize),
    Infinite,
}

pub const BASEPOINT: usize = 0;

impl SubgroupGraph {
    /// Builds the folded core graph of the subgroup generated by `generators`.
    pub fn build(alphabet: &Alphabet, generators: &[Word]) -> Result<Self> {
        for g in generators {
            alphabet.check(g)?;
        }
        let mut folder = Folder::new(2 * alphabet.rank());
        for g in generators {
            folder.add_loop(g);
        }
        let edges = folder.finish();
        Ok(SubgroupGraph {
            alphabet: alphabet.clone(),
            generators: generators.to_vec(),
            edges,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn generators(&self) -> &[Word] {
        &self.generators
    }

    pub fn vertex_count(&self) -> usize {
        self.edges.len()
    }

    pub fn basepoint(&self) -> usize {
        BASEPOINT
    }

    pub fn target(&self, vertex: usize, letter: Letter) -> Option<usize> {
        self.edges[vertex][letter.index()]
    }

    /// Number of (positive-label) edges.
    pub fn edge_count(&self) -> usize {
        self.edges
            .iter()
            .map(|slots| slots.iter().step_by(2).flatten().count())
            .sum()
    }

    /// Rank of the subgroup: `E − V + 1` for the connected core graph.
    pub fn subgroup_rank(&self) -> usize {
        self.edge_count() + 1 - self.vertex_count()
    }

    /// Follows `w` from `start`, returning the vertex reached or `None` if the path leaves the graph.
    pub fn read(&self, start: usize, w: &Word) -> Option<usize> {
        w.letters()
            .iter()
            .try_fold(start, |v, &l| self.target(v, l))
    }

    /// Longest readable prefix: `(letters read, vertex reached)`.
    pub fn read_prefix(&self, start: usize, w: &Word) -> (usize, usize) {
        let mut v = start;
        for (i, &l) in w.letters().iter().enumerate() {
            match self.target(v, l) {
                Some(t) => v = t,
                None => return (i, v),
            }
        }
        (w.len(), v)
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.read(BASEPOINT, w) == Some(BASEPOINT)
    }

    pub fn index_info(&self) -> Index {
        let total = self
            .edges
            .iter()
            .all(|slots| slots.iter().all(Option::is_some));
        if total {
            Index::Finite(self.vertex_count())
        } else {
            Index::Infinite
        }
    }

    /// A finite permutation representation in which every subgroup generator
    /// fixes the basepoint and `f` moves it.
    ///
    /// The path of `f` is adjoined to the core graph, then each generator's
    /// partial injection is closed up by pairing unmatched sources with
    /// unmatched targets in ascending vertex order.
    pub fn separating_permutation_rep(&self, f: &Word) -> Result<PermutationRep> {
        self.alphabet.check(f)?;
        if self.contains(f) {
            return Err(Error::NotSeparable);
        }
        let mut edges = self.edges.clone();
        let slots = 2 * self.alphabet.rank();
        let (read, mut v) = self.read_prefix(BASEPOINT, f);
        for &l in &f.letters()[read..] {
            let fresh = edges.len();
            edges.push(vec![None; slots]);
            edges[v][l.index()] = Some(fresh);
            edges[fresh][l.inv().index()] = Some(v);
            v = fresh;
        }

        let degree = edges.len();
        let images = (0..self.alphabet.rank())
            .map(|g| {
                let fwd = Letter::pos(g).index();
                let back = Letter::neg(g).index();
                let mut image: Vec<Option<usize>> = edges.iter().map(|s| s[fwd]).collect();
                let free_sources = (0..degree).filter(|&u| edges[u][fwd].is_none());
                let free_targets: Vec<usize> =
                    (0..degree).filter(|&u| edges[u][back].is_none()).collect();
                for (s, t) in free_sources.zip(free_targets) {
                    image[s] = Some(t);
                }
                image
                    .into_iter()
                    .map(|t| t.expect("partial injection closes to a bijection"))
                    .collect()
            })
            .collect();
        let rep = PermutationRep::new(images)?;
        debug_assert!(rep.separates(BASEPOINT, &self.generators, f));
        if !rep.separates(BASEPOINT, &self.generators, f) {
            return Err(Error::NotSeparable);
        }
        Ok(rep)
    }
}

/// One permutation of `{0, …, degree−1}` per generator, acting on the right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermutationRep {
    images: Vec<Vec<usize>>,
    inverses: Vec<Vec<usize>>,
}

impl PermutationRep {
    pub fn new(images: Vec<Vec<usize>>) -> Result<Self> {
        let degree = images.first().map_or(0, Vec::len);
        let mut inverses = Vec::with_capacity(images.len());
        for (g, perm) in images.iter().enumerate() {
            let inv = invert_permutation(perm).filter(|_| perm.len() == degree);
            match inv {
                Some(inv) => inverses.push(inv),
                None => {
                    return Err(Error::InvalidElement {
                        group: format!("Sym({degree})"),
                        reason: format!("image of generator {g} is not a permutation"),
                    })
                }
            }
        }
        Ok(PermutationRep { images, inverses })
    }

    pub fn degree(&self) -> usize {
        self.images.first().map_or(0, Vec::len)
    }

    pub fn images(&self) -> &[Vec<usize>] {
        &self.images
    }

    pub fn act_letter(&self, point: usize, l: Letter) -> usize {
        if l.is_inverse() {
            self.inverses[l.generator()][point]
        } else {
            self.images[l.generator()][point]
        }
    }

    /// Image of `point` under `w`, letters applied left to right.
    pub fn act(&self, point: usize, w: &Word) -> usize {
        w.letters()
            .iter()
            .fold(point, |p, &l| self.act_letter(p, l))
    }

    /// Every generator fixes `basepoint` and `f` does not.
    pub fn separates(&self, basepoint: usize, generators: &[Word], f: &Word) -> bool {
        let in_range = |w: &Word| w.max_generator().is_none_or(|g| g < self.images.len());
        basepoint < self.degree()
            && in_range(f)
            && generators.iter().all(in_range)
            && generators.iter().all(|g| self.act(basepoint, g) == basepoint)
            && self.act(basepoint, f) != basepoint
    }
}

pub(crate) fn invert_permutation(perm: &[usize]) -> Option<Vec<usize>> {
    let mut inv = vec![usize::MAX; perm.len()];
    for (i, &p) in perm.iter().enumerate() {
        if p >= perm.len() || inv[p] != usize::MAX {
            return None;
        }
        inv[p] = i;
    }
    Some(inv)
}

/// Union-find folding of an edge-labelled graph.
struct Folder {
    slots: usize,
    parent: Vec<usize>,
    edges: Vec<Vec<Option<usize>>>,
    pending: Vec<(usize, usize)>,
}

impl Folder {
    fn new(slots: usize) -> Self {
        Folder {
            slots,
            parent: vec![0],
            edges: vec![vec![None; slots]],
            pending: Vec::new(),
        }
    }

    fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    fn fresh(&mut self) -> usize {
        let v = self.parent.len();
        self.parent.push(v);
        self.edges.push(vec![None; self.slots]);
        v
    }

    fn add_loop(&mut self, w: &Word) {
        let n = w.len();
        if n == 0 {
            return;
        }
        let mut v = BASEPOINT;
        for (i, &l) in w.letters().iter().enumerate() {
            let next = if i + 1 == n { BASEPOINT } else { self.fresh() };
            self.add_edge(v, l, next);
            self.fold();
            v = self.find(next);
        }
    }

    fn set_half(&mut self, u: usize, slot: usize, v: usize) {
        match self.edges[u][slot] {
            Some(w) => {
                let w = self.find(w);
                if w != v {
                    self.pending.push((w, v));
                }
            }
            None => self.edges[u][slot] = Some(v),
        }
    }

    fn add_edge(&mut self, u: usize, l: Letter, v: usize) {
        let u = self.find(u);
        let v = self.find(v);
        self.set_half(u, l.index(), v);
        self.set_half(v, l.inv().index(), u);
    }

    fn fold(&mut self) {
        while let Some((a, b)) = self.pending.pop() {
            let (a, b) = (self.find(a), self.find(b));
            if a == b {
                continue;
            }
            // Keep the smaller id so the basepoint survives as its own root.
            let (keep, gone) = if a < b { (a, b) } else { (b, a) };
            self.parent[gone] = keep;
            let moved = std::mem::replace(&mut self.edges[gone], vec![None; self.slots]);
            for (slot, target) in moved.into_iter().enumerate() {
                if let Some(t) = target {
                    let t = self.find(t);
                    self.set_half(keep, slot, t);
                    self.set_half(t, slot ^ 1, keep);
                }
            }
        }
    }

    /// Canonicalizes targets, trims hanging trees and renumbers by BFS.
    fn finish(mut self) -> Vec<Vec<Option<usize>>> {
        let n = self.parent.len();
        let roots: Vec<usize> = (0..n).map(|v| self.find(v)).collect();
        let mut edges = vec![vec![None; self.slots]; n];
        for v in 0..n {
            if roots[v] != v {
                continue;
            }
            for slot in 0..self.slots {
                edges[v][slot] = self.edges[v][slot].map(|t| roots[t]);
            }
        }
        let mut alive: Vec<bool> = (0..n).map(|v| roots[v] == v).collect();
        let degree = |slots: &[Option<usize>]| slots.iter().flatten().count();
        let mut queue: VecDeque<usize> = (0..n)
            .filter(|&v| alive[v] && v != BASEPOINT && degree(&edges[v]) <= 1)
            .collect();
        while let Some(v) = queue.pop_front() {
            if !alive[v] || degree(&edges[v]) > 1 {
                continue;
            }
            alive[v] = false;
            for slot in 0..self.slots {
                if let Some(t) = edges[v][slot].take() {
                    edges[t][slot ^ 1] = None;
                    if t != BASEPOINT && degree(&edges[t]) <= 1 {
                        queue.push_back(t);
                    }
                }
            }
        }

        let mut order = vec![usize::MAX; n];
        let mut visit = vec![BASEPOINT];
        order[BASEPOINT] = 0;
        let mut head = 0;
        while head < visit.len() {
            let v = visit[head];
            head += 1;
            for slot in 0..self.slots {
                if let Some(t) = edges[v][slot] {
                    if order[t] == usize::MAX {
                        order[t] = visit.len();
                        visit.push(t);
                    }
                }
            }
        }
        visit
            .iter()
            .map(|&v| {
                edges[v]
                    .iter()
                    .map(|t| t.map(|t| order[t]))
                    .collect()
            })
            .collect()
    }
}
