//! Brute-force reference implementations for testing `causal-explain`.
//!
//! Everything here works on plain edge lists with its own acyclicity,
//! collider and path logic, so results can be compared against the library
//! without sharing code paths. Only conversions touch library types.

use std::collections::{BTreeMap, BTreeSet};

use causal_explain::{BackgroundKnowledge, Dag, Pdag};
use rand::seq::SliceRandom;
use rand::Rng;

/// A directed graph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RawDag {
    pub n: usize,
    pub edges: BTreeSet<(usize, usize)>,
}

/// Vertex names that sort in index order: `A`, `B`, ... then `Z026`, ...
pub fn name(i: usize) -> String {
    if i < 26 {
        char::from(b'A' + i as u8).to_string()
    } else {
        format!("Z{i:03}")
    }
}

pub fn names(n: usize) -> Vec<String> {
    (0..n).map(name).collect()
}

impl RawDag {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        RawDag {
            n,
            edges: edges.into_iter().collect(),
        }
    }

    pub fn has(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&(a, b))
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.has(a, b) || self.has(b, a)
    }

    pub fn parents(&self, v: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter(|e| e.1 == v)
            .map(|e| e.0)
            .collect()
    }

    pub fn children(&self, v: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter(|e| e.0 == v)
            .map(|e| e.1)
            .collect()
    }

    /// Unordered adjacent pairs `(a, b)` with `a < b`.
    pub fn skeleton(&self) -> BTreeSet<(usize, usize)> {
        self.edges
            .iter()
            .map(|&(a, b)| (a.min(b), a.max(b)))
            .collect()
    }

    pub fn is_acyclic(&self) -> bool {
        is_acyclic(self.n, &self.edges)
    }

    /// Unshielded colliders `(a, b, c)`, `a < c`, `a → b ← c`.
    pub fn colliders(&self) -> BTreeSet<(usize, usize, usize)> {
        let mut out = BTreeSet::new();
        for b in 0..self.n {
            let pa = self.parents(b);
            for &a in &pa {
                for &c in &pa {
                    if a < c && !self.adjacent(a, c) {
                        out.insert((a, b, c));
                    }
                }
            }
        }
        out
    }

    /// Vertices reachable from `v` by directed paths, including `v`.
    pub fn descendants(&self, v: usize) -> BTreeSet<usize> {
        let mut seen = BTreeSet::from([v]);
        let mut stack = vec![v];
        while let Some(u) = stack.pop() {
            for c in self.children(u) {
                if seen.insert(c) {
                    stack.push(c);
                }
            }
        }
        seen
    }

    pub fn to_pdag(&self) -> Pdag {
        let mut g = Pdag::new(names(self.n)).unwrap();
        for &(a, b) in &self.edges {
            g.add_directed(a, b).unwrap();
        }
        g
    }

    pub fn to_dag(&self) -> Dag {
        Dag::try_from(self.to_pdag()).unwrap()
    }

    /// The directed edges of a library graph whose vertices are
    /// `names(n)`.
    pub fn from_pdag(g: &Pdag) -> Self {
        RawDag::new(g.n(), g.directed_edges())
    }
}

pub fn is_acyclic(n: usize, edges: &BTreeSet<(usize, usize)>) -> bool {
    // repeatedly strip sinks
    let mut alive: Vec<bool> = vec![true; n];
    loop {
        let sink = (0..n).find(|&v| alive[v] && !edges.iter().any(|&(a, b)| a == v && alive[b]));
        match sink {
            Some(v) => alive[v] = false,
            None => return alive.iter().all(|&x| !x),
        }
    }
}

/// Every DAG on `n` labelled vertices.
pub fn all_dags(n: usize) -> Vec<RawDag> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .collect();
    let mut out = Vec::new();
    let total = 3usize.pow(pairs.len() as u32);
    for code in 0..total {
        let mut c = code;
        let mut edges = BTreeSet::new();
        for &(a, b) in &pairs {
            match c % 3 {
                1 => {
                    edges.insert((a, b));
                }
                2 => {
                    edges.insert((b, a));
                }
                _ => {}
            }
            c /= 3;
        }
        if is_acyclic(n, &edges) {
            out.push(RawDag { n, edges });
        }
    }
    out
}

/// A random DAG: a shuffled vertex order with each forward pair joined
/// with probability `p`.
pub fn random_dag<R: Rng>(rng: &mut R, n: usize, p: f64) -> RawDag {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut edges = BTreeSet::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                edges.insert((order[i], order[j]));
            }
        }
    }
    RawDag { n, edges }
}

/// All DAGs with `skeleton` whose unshielded colliders are `colliders`.
pub fn dags_with(
    n: usize,
    skeleton: &BTreeSet<(usize, usize)>,
    colliders: &BTreeSet<(usize, usize, usize)>,
) -> Vec<RawDag> {
    let pairs: Vec<(usize, usize)> = skeleton.iter().copied().collect();
    let mut out = Vec::new();
    for mask in 0u64..(1 << pairs.len()) {
        let edges: BTreeSet<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .map(|(i, &(a, b))| if mask >> i & 1 == 0 { (a, b) } else { (b, a) })
            .collect();
        let d = RawDag { n, edges };
        if d.is_acyclic() && &d.colliders() == colliders {
            out.push(d);
        }
    }
    out
}

/// The Markov equivalence class of `d`: same skeleton, same unshielded
/// colliders.
pub fn equivalence_class(d: &RawDag) -> Vec<RawDag> {
    dags_with(d.n, &d.skeleton(), &d.colliders())
}

pub type EdgeSet = BTreeSet<(usize, usize)>;

/// Edges directed alike in every member (`directed`) and the rest
/// (`undirected`, as `(a, b)` with `a < b`). `None` for an empty class.
pub fn intersection(class: &[RawDag]) -> Option<(EdgeSet, EdgeSet)> {
    let first = class.first()?;
    let mut directed = BTreeSet::new();
    let mut undirected = BTreeSet::new();
    for &(a, b) in &first.edges {
        if class.iter().all(|d| d.has(a, b)) {
            directed.insert((a, b));
        } else {
            undirected.insert((a.min(b), a.max(b)));
        }
    }
    Some((directed, undirected))
}

/// [`intersection`] as a library graph.
pub fn intersection_pdag(class: &[RawDag]) -> Option<Pdag> {
    let n = class.first()?.n;
    let (directed, undirected) = intersection(class)?;
    let mut g = Pdag::new(names(n)).unwrap();
    for (a, b) in directed {
        g.add_directed(a, b).unwrap();
    }
    for (a, b) in undirected {
        g.add_undirected(a, b).unwrap();
    }
    Some(g)
}

/// Members with every `required` edge and no `forbidden` edge.
pub fn k_consistent(
    class: &[RawDag],
    required: &[(usize, usize)],
    forbidden: &[(usize, usize)],
) -> Vec<RawDag> {
    class
        .iter()
        .filter(|d| required.iter().all(|&(a, b)| d.has(a, b)))
        .filter(|d| forbidden.iter().all(|&(a, b)| !d.has(a, b)))
        .cloned()
        .collect()
}

/// Path-based d-connection: some simple path between `x` and `y` has every
/// non-collider outside `z` and every collider in `z` or with a
/// descendant in `z`.
pub fn d_connected(d: &RawDag, x: usize, y: usize, z: &BTreeSet<usize>) -> bool {
    if x == y {
        return true;
    }
    let opens: Vec<bool> = (0..d.n)
        .map(|v| d.descendants(v).iter().any(|w| z.contains(w)))
        .collect();
    let mut path = vec![x];
    let mut on_path = vec![false; d.n];
    on_path[x] = true;
    search(d, y, z, &opens, &mut path, &mut on_path)
}

fn search(
    d: &RawDag,
    target: usize,
    z: &BTreeSet<usize>,
    opens: &[bool],
    path: &mut Vec<usize>,
    on_path: &mut [bool],
) -> bool {
    let last = *path.last().unwrap();
    for next in 0..d.n {
        if on_path[next] || !d.adjacent(last, next) {
            continue;
        }
        if path.len() >= 2 {
            let prev = path[path.len() - 2];
            let collider = d.has(prev, last) && d.has(next, last);
            let blocked = if collider {
                !opens[last]
            } else {
                z.contains(&last)
            };
            if blocked {
                continue;
            }
        }
        if next == target {
            return true;
        }
        path.push(next);
        on_path[next] = true;
        let found = search(d, target, z, opens, path, on_path);
        path.pop();
        on_path[next] = false;
        if found {
            return true;
        }
    }
    false
}

/// Set-valued d-separation through [`d_connected`] on every pair.
pub fn d_separated(
    d: &RawDag,
    a: &BTreeSet<usize>,
    b: &BTreeSet<usize>,
    z: &BTreeSet<usize>,
) -> bool {
    a.iter()
        .all(|&x| b.iter().all(|&y| !d_connected(d, x, y, z)))
}

/// Every `(x, y, S)` with `x < y` and `x ⟂ y | S` in `d`, by paths.
pub fn pairwise_independencies(d: &RawDag) -> BTreeSet<(usize, usize, BTreeSet<usize>)> {
    let mut out = BTreeSet::new();
    for x in 0..d.n {
        for y in x + 1..d.n {
            let rest: Vec<usize> = (0..d.n).filter(|&v| v != x && v != y).collect();
            for mask in 0u64..(1 << rest.len()) {
                let s: BTreeSet<usize> = rest
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &v)| v)
                    .collect();
                if !d_connected(d, x, y, &s) {
                    out.insert((x, y, s));
                }
            }
        }
    }
    out
}

/// Orientations of the undirected edges of `g` that keep its directed
/// edges, stay acyclic, and reproduce its unshielded colliders.
pub fn consistent_extensions(g: &Pdag) -> Vec<RawDag> {
    let n = g.n();
    let fixed: BTreeSet<(usize, usize)> = g.directed_edges().into_iter().collect();
    let free = g.undirected_edges();
    let mut skeleton: BTreeSet<(usize, usize)> =
        fixed.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
    skeleton.extend(free.iter().copied());
    let pattern_colliders: BTreeSet<(usize, usize, usize)> = {
        let mut out = BTreeSet::new();
        for b in 0..n {
            for &(a, hb) in &fixed {
                for &(c, hc) in &fixed {
                    let adj = skeleton.contains(&(a.min(c), a.max(c)));
                    if hb == b && hc == b && a < c && !adj {
                        out.insert((a, b, c));
                    }
                }
            }
        }
        out
    };
    dags_with(n, &skeleton, &pattern_colliders)
        .into_iter()
        .filter(|d| fixed.iter().all(|&(a, b)| d.has(a, b)))
        .collect()
}

/// Random DAG in the form the library expects.
pub fn random_library_dag<R: Rng>(rng: &mut R, n: usize, p: f64) -> Dag {
    random_dag(rng, n, p).to_dag()
}

/// Key identifying a Markov equivalence class: skeleton and unshielded
/// colliders.
pub type ClassKey = (BTreeSet<(usize, usize)>, BTreeSet<(usize, usize, usize)>);

pub fn class_key(d: &RawDag) -> ClassKey {
    (d.skeleton(), d.colliders())
}

/// Partitions `dags` into equivalence classes.
pub fn group_by_class(dags: &[RawDag]) -> BTreeMap<ClassKey, Vec<RawDag>> {
    let mut out: BTreeMap<ClassKey, Vec<RawDag>> = BTreeMap::new();
    for d in dags {
        out.entry(class_key(d)).or_default().push(d.clone());
    }
    out
}

/// Required and forbidden edges, as index pairs.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RawKnowledge {
    pub required: Vec<(usize, usize)>,
    pub forbidden: Vec<(usize, usize)>,
}

impl RawKnowledge {
    pub fn to_library(&self) -> BackgroundKnowledge {
        let mut k = BackgroundKnowledge::new();
        for &(a, b) in &self.required {
            k.require(&name(a), &name(b)).unwrap();
        }
        for &(a, b) in &self.forbidden {
            k.forbid(&name(a), &name(b)).unwrap();
        }
        k
    }

    pub fn admits(&self, d: &RawDag) -> bool {
        self.required.iter().all(|&(a, b)| d.has(a, b))
            && self.forbidden.iter().all(|&(a, b)| !d.has(a, b))
    }
}

/// Knowledge satisfied by `member`: up to `max_r` of its edges required,
/// and up to `max_f` forbidden edges that are reversals of its edges or
/// non-adjacent pairs.
pub fn knowledge_from<R: Rng>(
    rng: &mut R,
    member: &RawDag,
    max_r: usize,
    max_f: usize,
) -> RawKnowledge {
    let edges: Vec<(usize, usize)> = member.edges.iter().copied().collect();
    let r = rng.gen_range(0..=max_r.min(edges.len()));
    let required: Vec<(usize, usize)> = edges.choose_multiple(rng, r).copied().collect();
    let mut candidates: Vec<(usize, usize)> = edges.iter().map(|&(a, b)| (b, a)).collect();
    for a in 0..member.n {
        for b in 0..member.n {
            if a != b && !member.adjacent(a, b) {
                candidates.push((a, b));
            }
        }
    }
    let f = rng.gen_range(0..=max_f.min(candidates.len()));
    let forbidden = candidates.choose_multiple(rng, f).copied().collect();
    RawKnowledge {
        required,
        forbidden,
    }
}

/// [`knowledge_from`] a random member of `class`.
pub fn knowledge_from_class<R: Rng>(
    rng: &mut R,
    class: &[RawDag],
    max_r: usize,
    max_f: usize,
) -> RawKnowledge {
    let member = class.choose(rng).expect("nonempty class").clone();
    knowledge_from(rng, &member, max_r, max_f)
}

/// Arbitrary knowledge over `n` vertices, consistent or not.
pub fn random_knowledge<R: Rng>(rng: &mut R, n: usize, max_r: usize, max_f: usize) -> RawKnowledge {
    let mut pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b)))
        .collect();
    pairs.shuffle(rng);
    let r = rng.gen_range(0..=max_r);
    let f = rng.gen_range(0..=max_f);
    let mut required = Vec::new();
    let mut forbidden = Vec::new();
    for &(a, b) in &pairs {
        if required.len() < r && !required.contains(&(b, a)) {
            required.push((a, b));
        } else if forbidden.len() < f && !required.contains(&(a, b)) {
            forbidden.push((a, b));
        }
    }
    RawKnowledge {
        required,
        forbidden,
    }
}

/// Every undirected graph on `n` vertices, as edge lists `(a, b)`, `a < b`.
pub fn all_undirected(n: usize) -> Vec<BTreeSet<(usize, usize)>> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .collect();
    (0u64..1 << pairs.len())
        .map(|mask| {
            pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect()
        })
        .collect()
}

pub fn undirected_pdag(n: usize, edges: &BTreeSet<(usize, usize)>) -> Pdag {
    let mut g = Pdag::new(names(n)).unwrap();
    for &(a, b) in edges {
        g.add_undirected(a, b).unwrap();
    }
    g
}

/// Whether some vertex order orients `edges` without an unshielded
/// collider, by backtracking: a vertex may be placed only if its placed
/// neighbours are pairwise adjacent.
pub fn has_collider_free_order(n: usize, edges: &BTreeSet<(usize, usize)>) -> bool {
    let adj = |a: usize, b: usize| edges.contains(&(a.min(b), a.max(b)));
    fn place(n: usize, placed: &mut Vec<usize>, adj: &dyn Fn(usize, usize) -> bool) -> bool {
        if placed.len() == n {
            return true;
        }
        for v in 0..n {
            if placed.contains(&v) {
                continue;
            }
            let earlier: Vec<usize> = placed.iter().copied().filter(|&u| adj(u, v)).collect();
            let ok = earlier
                .iter()
                .all(|&a| earlier.iter().all(|&b| a == b || adj(a, b)));
            if ok {
                placed.push(v);
                if place(n, placed, adj) {
                    return true;
                }
                placed.pop();
            }
        }
        false
    }
    place(n, &mut Vec::new(), &adj)
}

/// All permutations of `0..n`.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}
