//! The covering graph of basic intervals of a convergent pattern and the
//! forced over-rotation interval.
//!
//! For a convergent pattern `P` with fixed point `a`, the nodes are the
//! basic intervals of `P ∪ {a}` (the fixed point splits one `P`-basic
//! interval, giving exactly `n` nodes), and there is an edge `I -> J`
//! whenever the image hull of `I` under the P-linear map covers `J`. An
//! edge weighs 1 when its endpoints lie on opposite sides of `a`. Cycles of
//! this graph realize periodic orbits whose over-rotation number is half
//! the cycle's mean weight, so the left endpoint `r` of the forced
//! over-rotation interval `[r, 1/2]` is half the minimum cycle mean over
//! the qualifying part of the graph.
//!
//! Cycles that never switch sides are discarded: on each side of `a` the
//! map moves every point strictly toward (or across) the fixed point, so a
//! one-sided loop carries no periodic orbit besides `a` itself. A
//! component mixing a side-switching cycle with a one-sided one yields
//! orbits of arbitrarily small positive over-rotation number; its minimum
//! 0 is reported with `attained = false`.

use crate::pattern::{OverRotationPair, Pattern, Side};
use crate::rational::Rational;
use crate::{Error, Result};
use std::collections::BTreeMap;

/// One basic interval of `P ∪ {a}`, with the affine branch of the P-linear
/// map valid on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalNode {
    pub lo: Rational,
    pub hi: Rational,
    pub side: Side,
    slope: Rational,
    intercept: Rational,
}

impl IntervalNode {
    fn apply(&self, x: Rational) -> Rational {
        self.slope * x + self.intercept
    }

    pub fn contains(&self, x: Rational) -> bool {
        self.lo <= x && x <= self.hi
    }
}

/// Covering graph of a convergent pattern. Nodes are ordered left to right.
#[derive(Clone, Debug)]
pub struct MarkovGraph {
    images: Vec<usize>,
    fixed_point: Rational,
    nodes: Vec<IntervalNode>,
    adj: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
}

/// Result of [`min_cycle_mean`]: the left endpoint `r` of the forced
/// over-rotation interval, and whether the infimum is attained by an actual
/// cycle (`false` exactly when `r = 0`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MinCycleMean {
    pub r: Rational,
    pub attained: bool,
}

/// A periodic orbit of the P-linear map realized from a loop of the
/// covering graph, with its exact coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForcedCycle {
    pub pattern: Pattern,
    pub orp: OverRotationPair,
    /// Orbit coordinates in temporal order, starting in the first loop node.
    pub witness: Vec<Rational>,
    /// Node itinerary through the covering graph.
    pub loop_nodes: Vec<usize>,
    /// True when the composed branch along the loop had slope 1, so a whole
    /// segment realizes the loop; the witness is then a midpoint
    /// representative.
    pub degenerate: bool,
}

/// Builds the covering graph of a convergent pattern.
pub fn build_markov(pattern: &Pattern) -> Result<MarkovGraph> {
    let a = pattern.fixed_point()?;
    let n = pattern.period();
    let mut endpoints: Vec<Rational> = (1..=n).map(Rational::from).collect();
    let pos = endpoints.partition_point(|x| *x < a);
    endpoints.insert(pos, a);

    let mut nodes = Vec::with_capacity(n);
    for w in endpoints.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        // The containing P-basic interval is [u, u+1]; the branch there is
        // f(x) = f(u) + d (x - u). The fixed point is a fixed point of its
        // own branch, so endpoint images need no special-casing.
        let u = lo.floor() as usize;
        let fu = pattern.image(u) as i128;
        let d = pattern.image(u + 1) as i128 - fu;
        nodes.push(IntervalNode {
            lo,
            hi,
            side: if hi <= a { Side::Left } else { Side::Right },
            slope: Rational::int(d),
            intercept: Rational::int(fu - d * u as i128),
        });
    }

    let mut adj = vec![Vec::new(); n];
    let mut edges = Vec::new();
    for (i, nd) in nodes.iter().enumerate() {
        let (flo, fhi) = (nd.apply(nd.lo), nd.apply(nd.hi));
        let (lo, hi) = if flo <= fhi { (flo, fhi) } else { (fhi, flo) };
        for (j, target) in nodes.iter().enumerate() {
            if lo <= target.lo && target.hi <= hi {
                adj[i].push(j);
                edges.push((i, j));
            }
        }
    }
    Ok(MarkovGraph {
        images: pattern.images().to_vec(),
        fixed_point: a,
        nodes,
        adj,
        edges,
    })
}

impl MarkovGraph {
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[IntervalNode] {
        &self.nodes
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn fixed_point(&self) -> Rational {
        self.fixed_point
    }

    pub fn has_edge(&self, from: usize, to: usize) -> bool {
        self.adj[from].binary_search(&to).is_ok()
    }

    /// Edge weight: 1 when the two intervals straddle the fixed point.
    pub fn weight(&self, from: usize, to: usize) -> u8 {
        u8::from(self.nodes[from].side != self.nodes[to].side)
    }

    fn node_with_lo(&self, x: Rational) -> usize {
        self.nodes
            .iter()
            .position(|n| n.lo == x)
            .expect("interior endpoint has a node to its right")
    }

    fn node_with_hi(&self, x: Rational) -> usize {
        self.nodes
            .iter()
            .position(|n| n.hi == x)
            .expect("interior endpoint has a node to its left")
    }

    /// The length-n loop tracing the pattern's own orbit: node `j` carries
    /// the j-th orbit point of the leftmost point as an endpoint, and the
    /// successor is picked toward the image of the node's other endpoint.
    /// Its mean weight is twice the pattern's over-rotation number, which
    /// pins `r <= rho(P)`.
    pub fn fundamental_loop(&self) -> Vec<usize> {
        let n = self.images.len();
        let mut x = 1usize;
        let mut node = self.node_with_lo(Rational::from(1usize));
        let mut out = Vec::with_capacity(n);
        out.push(node);
        for _ in 1..n {
            let nd = &self.nodes[node];
            let other = if nd.lo == Rational::from(x) { nd.hi } else { nd.lo };
            let fx = self.images[x - 1];
            let fother = if other == self.fixed_point {
                self.fixed_point
            } else {
                Rational::from(self.images[other.floor() as usize - 1])
            };
            let next = if fother < Rational::from(fx) {
                self.node_with_hi(Rational::from(fx))
            } else {
                self.node_with_lo(Rational::from(fx))
            };
            debug_assert!(self.has_edge(node, next), "fundamental loop step must be an edge");
            out.push(next);
            node = next;
            x = fx;
        }
        debug_assert_eq!(self.images[x - 1], 1, "orbit closes at the leftmost point");
        debug_assert!(self.has_edge(*out.last().unwrap(), out[0]));
        out
    }

    /// Byte-reproducible DOT rendering: nodes left to right, edges sorted.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph markov {\n");
        for (i, nd) in self.nodes.iter().enumerate() {
            let side = match nd.side {
                Side::Left => "L",
                Side::Right => "R",
            };
            s.push_str(&format!("  n{i} [label=\"[{},{}] {side}\"];\n", nd.lo, nd.hi));
        }
        for &(u, v) in &self.edges {
            s.push_str(&format!("  n{u} -> n{v} [w={}];\n", self.weight(u, v)));
        }
        s.push_str("}\n");
        s
    }
}

/// Left endpoint of the forced over-rotation interval, as half the minimum
/// cycle mean over components that contain a side-switching cycle.
pub fn min_cycle_mean(g: &MarkovGraph) -> Result<MinCycleMean> {
    let comp = tarjan_scc(&g.adj);
    let ncomp = comp.iter().copied().max().map_or(0, |c| c + 1);
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); ncomp];
    for (v, &c) in comp.iter().enumerate() {
        members[c].push(v);
    }

    let mut best: Option<(i64, i64)> = None; // min mean as num/den
    for nodes in &members {
        let mut intra: Vec<(usize, usize, i64)> = Vec::new();
        for &u in nodes {
            for &v in &g.adj[u] {
                if comp[v] == comp[u] {
                    intra.push((u, v, i64::from(g.weight(u, v))));
                }
            }
        }
        if !intra.iter().any(|&(_, _, w)| w == 1) {
            continue; // only one-sided cycles here; they carry no orbit
        }
        let (num, den) = karp_min_mean(nodes, &intra);
        let better = match best {
            None => true,
            Some((bn, bd)) => (num as i128) * (bd as i128) < (bn as i128) * (den as i128),
        };
        if better {
            best = Some((num, den));
        }
    }
    let (num, den) = best.ok_or(Error::NoCycle)?;
    Ok(MinCycleMean {
        r: Rational::new(num as i128, 2 * den as i128),
        attained: num > 0,
    })
}

/// The forced over-rotation interval `[r, 1/2]` of a convergent pattern.
pub fn over_rotation_interval(pattern: &Pattern) -> Result<(Rational, Rational)> {
    let mcm = min_cycle_mean(&build_markov(pattern)?)?;
    Ok((mcm.r, Rational::ONE_HALF))
}

/// Karp's minimum mean cycle on one strongly connected component, exact.
/// `nodes` lists the component members; `edges` its internal edges.
fn karp_min_mean(nodes: &[usize], edges: &[(usize, usize, i64)]) -> (i64, i64) {
    let m = nodes.len();
    let mut local = BTreeMap::new();
    for (i, &v) in nodes.iter().enumerate() {
        local.insert(v, i);
    }
    // dist[k][v] = min weight of a walk with exactly k edges from source.
    let mut dist = vec![vec![None::<i64>; m]; m + 1];
    dist[0][0] = Some(0);
    for k in 1..=m {
        for &(u, v, w) in edges {
            let (u, v) = (local[&u], local[&v]);
            if let Some(du) = dist[k - 1][u] {
                let cand = du + w;
                if dist[k][v].is_none_or(|dv| cand < dv) {
                    dist[k][v] = Some(cand);
                }
            }
        }
    }
    let mut best: Option<(i64, i64)> = None;
    for v in 0..m {
        let Some(dn) = dist[m][v] else { continue };
        let mut worst: Option<(i64, i64)> = None; // max over k of (dn-dk)/(m-k)
        for k in 0..m {
            let Some(dk) = dist[k][v] else { continue };
            let cand = (dn - dk, (m - k) as i64);
            let is_worse = match worst {
                None => true,
                Some((wn, wd)) => (cand.0 as i128) * (wd as i128) > (wn as i128) * (cand.1 as i128),
            };
            if is_worse {
                worst = Some(cand);
            }
        }
        let w = worst.expect("every component node is reachable below m steps");
        let is_better = match best {
            None => true,
            Some((bn, bd)) => (w.0 as i128) * (bd as i128) < (bn as i128) * (w.1 as i128),
        };
        if is_better {
            best = Some(w);
        }
    }
    best.expect("component with an edge has a cycle")
}

fn tarjan_scc(adj: &[Vec<usize>]) -> Vec<usize> {
    struct State<'a> {
        adj: &'a [Vec<usize>],
        index: Vec<Option<usize>>,
        low: Vec<usize>,
        on_stack: Vec<bool>,
        stack: Vec<usize>,
        next_index: usize,
        comp: Vec<usize>,
        next_comp: usize,
    }
    fn visit(s: &mut State, v: usize) {
        s.index[v] = Some(s.next_index);
        s.low[v] = s.next_index;
        s.next_index += 1;
        s.stack.push(v);
        s.on_stack[v] = true;
        let adj = s.adj;
        for &w in &adj[v] {
            match s.index[w] {
                None => {
                    visit(s, w);
                    s.low[v] = s.low[v].min(s.low[w]);
                }
                Some(wi) => {
                    if s.on_stack[w] {
                        s.low[v] = s.low[v].min(wi);
                    }
                }
            }
        }
        if s.low[v] == s.index[v].unwrap() {
            loop {
                let w = s.stack.pop().unwrap();
                s.on_stack[w] = false;
                s.comp[w] = s.next_comp;
                if w == v {
                    break;
                }
            }
            s.next_comp += 1;
        }
    }
    let n = adj.len();
    let mut s = State {
        adj,
        index: vec![None; n],
        low: vec![0; n],
        on_stack: vec![false; n],
        stack: Vec::new(),
        next_index: 0,
        comp: vec![0; n],
        next_comp: 0,
    };
    for v in 0..n {
        if s.index[v].is_none() {
            visit(&mut s, v);
        }
    }
    s.comp
}

/// Streams all loops (closed walks, including non-simple ones) of length
/// `<= max_len`, each cyclic sequence exactly once up to rotation, in a
/// deterministic order.
pub fn enumerate_loops(g: &MarkovGraph, max_len: usize) -> LoopEnumerator<'_> {
    assert!(max_len >= 1);
    LoopEnumerator {
        g,
        max_len,
        start: 0,
        path: vec![0],
        cursor: vec![0],
        push_pending: None,
        done: g.node_count() == 0,
    }
}

pub struct LoopEnumerator<'g> {
    g: &'g MarkovGraph,
    max_len: usize,
    start: usize,
    path: Vec<usize>,
    cursor: Vec<usize>,
    push_pending: Option<usize>,
    done: bool,
}

impl Iterator for LoopEnumerator<'_> {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        loop {
            if let Some(nx) = self.push_pending.take() {
                self.path.push(nx);
                self.cursor.push(0);
            }
            if self.path.is_empty() {
                self.start += 1;
                if self.start >= self.g.node_count() {
                    self.done = true;
                    return None;
                }
                self.path.push(self.start);
                self.cursor.push(0);
            }
            let node = *self.path.last().unwrap();
            let ci = self.cursor.last_mut().unwrap();
            if *ci < self.g.adj[node].len() {
                let next = self.g.adj[node][*ci];
                *ci += 1;
                if next < self.start {
                    continue; // each loop is enumerated from its least node
                }
                if next == self.start {
                    // Closing edge: the current path is a loop. It may also
                    // continue through the start node (non-simple walks).
                    if self.path.len() < self.max_len {
                        self.push_pending = Some(next);
                    }
                    if is_min_rotation(&self.path) {
                        return Some(self.path.clone());
                    }
                    continue;
                }
                if self.path.len() < self.max_len {
                    self.path.push(next);
                    self.cursor.push(0);
                }
                continue;
            }
            self.path.pop();
            self.cursor.pop();
        }
    }
}

/// True when `path` is the lexicographically least among its rotations.
fn is_min_rotation(path: &[usize]) -> bool {
    let l = path.len();
    for i in 1..l {
        if path[i] != path[0] {
            continue;
        }
        for j in 0..l {
            let (a, b) = (path[(i + j) % l], path[j]);
            if a < b {
                return false;
            }
            if a > b {
                break;
            }
        }
    }
    true
}

/// Prefix compositions of the affine branches along a loop:
/// `maps[j] = (A, B)` with `x_j = A x_0 + B`. `maps[len]` is the full
/// return map.
fn prefix_maps(g: &MarkovGraph, loop_nodes: &[usize]) -> Vec<(Rational, Rational)> {
    let mut maps = Vec::with_capacity(loop_nodes.len() + 1);
    maps.push((Rational::ONE, Rational::ZERO));
    let (mut a, mut b) = (Rational::ONE, Rational::ZERO);
    for &idx in loop_nodes {
        let nd = &g.nodes[idx];
        a = nd.slope * a;
        b = nd.slope * b + nd.intercept;
        maps.push((a, b));
    }
    maps
}

fn validate_loop(g: &MarkovGraph, loop_nodes: &[usize]) -> Result<()> {
    if loop_nodes.is_empty() || loop_nodes.iter().any(|&v| v >= g.node_count()) {
        return Err(Error::LoopNotInGraph);
    }
    for i in 0..loop_nodes.len() {
        let u = loop_nodes[i];
        let v = loop_nodes[(i + 1) % loop_nodes.len()];
        if !g.has_edge(u, v) {
            return Err(Error::LoopNotInGraph);
        }
    }
    Ok(())
}

/// Builds the orbit of `x0` along the loop and packages it, rejecting
/// orbits that leave their nodes or pass through the fixed point.
fn realize_at(
    g: &MarkovGraph,
    loop_nodes: &[usize],
    maps: &[(Rational, Rational)],
    x0: Rational,
    degenerate: bool,
) -> Option<ForcedCycle> {
    let len = loop_nodes.len();
    let mut orbit = Vec::with_capacity(len);
    for (j, &idx) in loop_nodes.iter().enumerate() {
        let x = maps[j].0 * x0 + maps[j].1;
        if !g.nodes[idx].contains(x) || x == g.fixed_point {
            return None;
        }
        orbit.push(x);
    }
    // Minimal period: first return to the start (it divides the length).
    let d = (1..len).find(|&d| orbit[d] == orbit[0]).unwrap_or(len);
    debug_assert_eq!(len % d, 0);
    let witness: Vec<Rational> = orbit[..d].to_vec();
    if witness.len() < 2 {
        return None;
    }
    let mut sorted = witness.clone();
    sorted.sort();
    let spatial = |x: Rational| sorted.binary_search(&x).expect("orbit point") + 1;
    let mut images = vec![0usize; d];
    for j in 0..d {
        images[spatial(witness[j]) - 1] = spatial(witness[(j + 1) % d]);
    }
    let pattern = Pattern::new(images).expect("a periodic orbit induces a cyclic pattern");
    let orp = pattern.over_rotation_pair();
    Some(ForcedCycle {
        pattern,
        orp,
        witness,
        loop_nodes: loop_nodes.to_vec(),
        degenerate,
    })
}

/// The set of start points whose whole orbit stays inside the loop's nodes.
fn feasible_interval(
    g: &MarkovGraph,
    loop_nodes: &[usize],
    maps: &[(Rational, Rational)],
) -> Option<(Rational, Rational)> {
    let first = &g.nodes[loop_nodes[0]];
    let (mut lo, mut hi) = (first.lo, first.hi);
    for (j, &idx) in loop_nodes.iter().enumerate() {
        let (a, b) = maps[j];
        let nd = &g.nodes[idx];
        let c1 = (nd.lo - b) / a;
        let c2 = (nd.hi - b) / a;
        let (l, h) = if a > Rational::ZERO { (c1, c2) } else { (c2, c1) };
        lo = lo.max(l);
        hi = hi.min(h);
        if lo > hi {
            return None;
        }
    }
    Some((lo, hi))
}

/// Realizes a loop as a periodic orbit of the P-linear map.
///
/// The branches along the loop compose to an affine return map. When its
/// slope differs from 1 the unique fixed point is solved exactly and
/// accepted iff its orbit stays in the loop's nodes and avoids the fixed
/// point `a`. A slope-1, zero-displacement composition fixes a whole
/// segment; the midpoint is returned as representative, flagged degenerate.
pub fn loop_to_orbit(g: &MarkovGraph, loop_nodes: &[usize]) -> Result<Option<ForcedCycle>> {
    validate_loop(g, loop_nodes)?;
    let maps = prefix_maps(g, loop_nodes);
    let (a_full, b_full) = maps[loop_nodes.len()];
    if a_full == Rational::ONE {
        if !b_full.is_zero() {
            return Ok(None);
        }
        let Some((lo, hi)) = feasible_interval(g, loop_nodes, &maps) else {
            return Ok(None);
        };
        let mid = (lo + hi) / Rational::int(2);
        return Ok(realize_at(g, loop_nodes, &maps, mid, true));
    }
    let x0 = b_full / (Rational::ONE - a_full);
    Ok(realize_at(g, loop_nodes, &maps, x0, false))
}

/// Like [`loop_to_orbit`], but in the degenerate slope-1 case samples one
/// point from every subsegment on which the realized orbits keep a fixed
/// spatial order, so every pattern carried by the segment is produced.
fn loop_to_orbits(g: &MarkovGraph, loop_nodes: &[usize]) -> Vec<ForcedCycle> {
    let maps = prefix_maps(g, loop_nodes);
    let len = loop_nodes.len();
    let (a_full, b_full) = maps[len];
    if a_full != Rational::ONE {
        let x0 = b_full / (Rational::ONE - a_full);
        return realize_at(g, loop_nodes, &maps, x0, false)
            .into_iter()
            .collect();
    }
    if !b_full.is_zero() {
        return Vec::new();
    }
    let Some((lo, hi)) = feasible_interval(g, loop_nodes, &maps) else {
        return Vec::new();
    };
    // Orbit points are affine in the start point; their order can only
    // change where two of them collide or one meets the fixed point.
    let mut cuts = Vec::new();
    for i in 0..len {
        for j in i + 1..len {
            let (ai, bi) = maps[i];
            let (aj, bj) = maps[j];
            if ai == aj {
                continue;
            }
            let x = (bj - bi) / (ai - aj);
            if lo < x && x < hi {
                cuts.push(x);
            }
        }
        let (ai, bi) = maps[i];
        let x = (g.fixed_point - bi) / ai;
        if lo < x && x < hi {
            cuts.push(x);
        }
    }
    cuts.sort();
    cuts.dedup();
    let mut stops = Vec::with_capacity(cuts.len() + 2);
    stops.push(lo);
    stops.extend(cuts);
    stops.push(hi);
    let mut out = Vec::new();
    for w in stops.windows(2) {
        let sample = (w[0] + w[1]) / Rational::int(2);
        if let Some(fc) = realize_at(g, loop_nodes, &maps, sample, true) {
            out.push(fc);
        }
    }
    out
}

/// All distinct patterns of periodic orbits of the P-linear map with period
/// at most `max_period`, each with an exact witness orbit. The pattern's
/// own orbit is always present when its period qualifies.
pub fn forced_cycles_up_to(pattern: &Pattern, max_period: usize) -> Result<Vec<ForcedCycle>> {
    assert!(max_period >= 1);
    let g = build_markov(pattern)?;
    let mut found: BTreeMap<Vec<usize>, ForcedCycle> = BTreeMap::new();
    if pattern.period() <= max_period {
        // The pattern's orbit runs along node boundaries, where the generic
        // realization can collapse onto an interior orbit; seed it directly
        // with its fundamental loop.
        let loop_nodes = g.fundamental_loop();
        let mut witness = Vec::with_capacity(pattern.period());
        let mut x = 1usize;
        for _ in 0..pattern.period() {
            witness.push(Rational::from(x));
            x = pattern.image(x);
        }
        found.insert(
            pattern.images().to_vec(),
            ForcedCycle {
                pattern: pattern.clone(),
                orp: pattern.over_rotation_pair(),
                witness,
                loop_nodes,
                degenerate: false,
            },
        );
    }
    for loop_nodes in enumerate_loops(&g, max_period) {
        for fc in loop_to_orbits(&g, &loop_nodes) {
            found.entry(fc.pattern.images().to_vec()).or_insert(fc);
        }
    }
    let mut out: Vec<ForcedCycle> = found.into_values().collect();
    out.sort_by_key(|fc| (fc.pattern.period(), fc.pattern.images().to_vec()));
    Ok(out)
}

/// Horseshoe test: two intervals with disjoint interiors and endpoints in
/// `P ∪ Fix(f_P)`, each of whose images covers their union. Works for
/// divergent patterns too (all fixed points of every branch are candidates).
pub fn has_horseshoe(pattern: &Pattern) -> bool {
    let n = pattern.period();
    let mut pts: Vec<Rational> = (1..=n).map(Rational::from).collect();
    for u in 1..n {
        let fu = pattern.image(u) as i128;
        let d = pattern.image(u + 1) as i128 - fu;
        if d == 1 {
            continue; // parallel to the diagonal and off it: no fixed point
        }
        let x = Rational::new(fu - d * u as i128, 1 - d);
        if Rational::from(u) < x && x < Rational::from(u + 1) {
            pts.push(x);
        }
    }
    pts.sort();
    pts.dedup();
    let m = pts.len();

    let f_at = |x: Rational| -> Rational {
        if x.is_integer() {
            return Rational::from(pattern.image(x.numer() as usize));
        }
        let u = x.floor() as usize;
        let fu = pattern.image(u) as i128;
        let d = pattern.image(u + 1) as i128 - fu;
        Rational::int(fu) + Rational::int(d) * (x - Rational::from(u))
    };
    // Image hull over [pts[i], pts[j]]: endpoints plus interior breakpoints.
    let hull = |i: usize, j: usize| -> (Rational, Rational) {
        let mut lo = f_at(pts[i]);
        let mut hi = lo;
        let mut upd = |v: Rational| {
            lo = lo.min(v);
            hi = hi.max(v);
        };
        upd(f_at(pts[j]));
        for w in 1..=n {
            let w = Rational::from(w);
            if pts[i] < w && w < pts[j] {
                upd(f_at(w));
            }
        }
        (lo, hi)
    };

    for i in 0..m {
        for j in i + 1..m {
            let h1 = hull(i, j);
            for k in j..m {
                for l in k + 1..m {
                    let (need_lo, need_hi) = (pts[i], pts[l]);
                    if h1.0 <= need_lo && need_hi <= h1.1 {
                        let h2 = hull(k, l);
                        if h2.0 <= need_lo && need_hi <= h2.1 {
                            return true;
                        }
                    }
                }
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pat(s: &str) -> Pattern {
        Pattern::parse(s).unwrap()
    }

    fn rat(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn interval(g: &MarkovGraph, i: usize) -> (Rational, Rational) {
        (g.nodes[i].lo, g.nodes[i].hi)
    }

    #[test]
    fn graph_of_three_cycle() {
        let g = build_markov(&pat("2 3 1")).unwrap();
        assert_eq!(g.node_count(), 3);
        assert_eq!(interval(&g, 0), (rat("1"), rat("2")));
        assert_eq!(interval(&g, 1), (rat("2"), rat("7/3")));
        assert_eq!(interval(&g, 2), (rat("7/3"), rat("3")));
        assert_eq!(
            g.edges(),
            &[(0, 1), (0, 2), (1, 2), (2, 0), (2, 1)]
        );
        assert_eq!(g.weight(0, 1), 0);
        assert_eq!(g.weight(1, 2), 1);
    }

    #[test]
    fn graph_of_two_cycle() {
        let g = build_markov(&pat("2 1")).unwrap();
        assert_eq!(g.node_count(), 2);
        assert_eq!(interval(&g, 0), (rat("1"), rat("3/2")));
        assert_eq!(interval(&g, 1), (rat("3/2"), rat("2")));
        assert_eq!(g.edges(), &[(0, 1), (1, 0)]);
    }

    #[test]
    fn graph_of_badly_ordered_six_cycle() {
        let g = build_markov(&pat("2 4 6 5 3 1")).unwrap();
        assert_eq!(g.node_count(), 6);
        assert_eq!(g.fixed_point(), rat("13/3"));
        assert_eq!(interval(&g, 3), (rat("4"), rat("13/3")));
        assert_eq!(interval(&g, 4), (rat("13/3"), rat("5")));
    }

    #[test]
    fn min_cycle_means() {
        let r = |s: &str| {
            min_cycle_mean(&build_markov(&pat(s)).unwrap())
                .unwrap()
        };
        assert_eq!(r("2 3 1").r, rat("1/3"));
        assert!(r("2 3 1").attained);
        assert_eq!(r("2 4 6 5 3 1").r, rat("1/3"));
        assert_eq!(r("4 6 10 9 8 7 5 3 2 1").r, rat("2/5"));
        assert_eq!(r("2 1").r, rat("1/2"));
    }

    #[test]
    fn over_rotation_intervals() {
        assert_eq!(
            over_rotation_interval(&pat("3 5 4 2 1")).unwrap(),
            (rat("2/5"), rat("1/2"))
        );
        assert_eq!(
            over_rotation_interval(&pat("2 1")).unwrap(),
            (rat("1/2"), rat("1/2"))
        );
        assert_eq!(
            over_rotation_interval(&pat("2 4 6 5 3 1")).unwrap(),
            (rat("1/3"), rat("1/2"))
        );
        assert_eq!(
            over_rotation_interval(&pat("3 1 4 2")),
            Err(Error::DivergentPattern)
        );
    }

    #[test]
    fn loop_enumeration_small() {
        let g = build_markov(&pat("2 1")).unwrap();
        let loops: Vec<_> = enumerate_loops(&g, 2).collect();
        assert_eq!(loops, vec![vec![0, 1]]);

        let g = build_markov(&pat("2 3 1")).unwrap();
        let mut lens: Vec<usize> = enumerate_loops(&g, 3).map(|l| l.len()).collect();
        lens.sort();
        assert_eq!(lens, vec![2, 2, 3]);

        // max_len 1 yields exactly the self-loop edges (none here).
        assert_eq!(enumerate_loops(&g, 1).count(), 0);
    }

    #[test]
    fn loop_realization() {
        let g = build_markov(&pat("2 3 1")).unwrap();
        // [7/3,3] -> [1,2]: composite 8 - 2x, fixed point 8/3.
        let fc = loop_to_orbit(&g, &[2, 0]).unwrap().unwrap();
        assert_eq!(fc.witness, vec![rat("8/3"), rat("5/3")]);
        assert_eq!(fc.pattern, pat("2 1"));
        assert_eq!(fc.orp, OverRotationPair { p: 1, q: 2 });

        // [2,7/3] -> [7/3,3]: solves to the fixed point a = 7/3.
        assert_eq!(loop_to_orbit(&g, &[1, 2]).unwrap(), None);

        // Non-simple length-4 loop: solve 22 - 8x = x.
        let fc = loop_to_orbit(&g, &[2, 1, 2, 0]).unwrap().unwrap();
        let mut orbit = fc.witness.clone();
        orbit.sort();
        assert_eq!(orbit, vec![rat("13/9"), rat("19/9"), rat("22/9"), rat("25/9")]);
        assert_eq!(fc.pattern, pat("3 4 2 1"));
        assert_eq!(fc.orp, OverRotationPair { p: 2, q: 4 });

        assert_eq!(loop_to_orbit(&g, &[0, 1]), Err(Error::LoopNotInGraph));
    }

    #[test]
    fn forced_cycles_examples() {
        let fcs = forced_cycles_up_to(&pat("2 3 1"), 4).unwrap();
        let pats: Vec<_> = fcs.iter().map(|fc| fc.pattern.one_line()).collect();
        assert_eq!(pats, vec!["2 1", "2 3 1", "3 4 2 1"]);

        let fcs = forced_cycles_up_to(&pat("2 1"), 3).unwrap();
        assert_eq!(fcs.len(), 1);
        assert_eq!(fcs[0].pattern, pat("2 1"));

        let fcs = forced_cycles_up_to(&pat("2 4 6 5 3 1"), 2).unwrap();
        assert!(fcs.iter().any(|fc| fc.pattern == pat("2 1")));
    }

    #[test]
    fn forced_cycle_includes_self_on_degenerate_loops() {
        // The orbit of [3,4,2,1] is carried only by a slope-1 loop; the
        // segment sampling must still produce the pattern itself.
        let fcs = forced_cycles_up_to(&pat("3 4 2 1"), 4).unwrap();
        let pats: Vec<_> = fcs.iter().map(|fc| fc.pattern.one_line()).collect();
        assert!(pats.contains(&"3 4 2 1".to_string()), "got {pats:?}");
        assert!(pats.contains(&"2 1".to_string()));
    }

    #[test]
    fn horseshoes() {
        assert!(!has_horseshoe(&pat("2 3 1")));
        assert!(has_horseshoe(&pat("3 1 4 2")));
        assert!(!has_horseshoe(&pat("2 1")));
        assert!(!has_horseshoe(&pat("2 4 6 5 3 1")));
    }

    #[test]
    fn fundamental_loop_mean_is_rho() {
        for s in ["2 3 1", "2 4 6 5 3 1", "3 5 4 2 1", "4 6 10 9 8 7 5 3 2 1"] {
            let p = pat(s);
            let g = build_markov(&p).unwrap();
            let fl = g.fundamental_loop();
            assert_eq!(fl.len(), p.period());
            let w: i64 = (0..fl.len())
                .map(|i| i64::from(g.weight(fl[i], fl[(i + 1) % fl.len()])))
                .sum();
            assert_eq!(
                Rational::new(w as i128, 2 * fl.len() as i128),
                p.rho(),
                "fundamental loop of {s}"
            );
        }
    }

    #[test]
    fn dot_output_is_stable() {
        let g = build_markov(&pat("2 1")).unwrap();
        let dot = g.to_dot();
        assert_eq!(
            dot,
            "digraph markov {\n  n0 [label=\"[1,3/2] L\"];\n  n1 [label=\"[3/2,2] R\"];\n  n0 -> n1 [w=1];\n  n1 -> n0 [w=1];\n}\n"
        );
        assert_eq!(dot, build_markov(&pat("2 1")).unwrap().to_dot());
    }
}
