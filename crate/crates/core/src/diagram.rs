//! Connected Jacobi diagrams with colored legs, stored canonically with an
//! antisymmetry sign.
//!
//! A diagram is a uni-trivalent graph: trivalent vertices carry a cyclic
//! order of their three incident half-edges, univalent vertices ("legs")
//! carry a color. Reversing the cyclic order at one vertex negates the
//! diagram (AS). Canonicalization picks a distinguished labeled
//! representative per isomorphism class and tracks the sign relating the
//! input to it; diagrams admitting a sign-reversing automorphism are zero.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::DiagramError;

/// A leg color. The total order `Minus < Plus < Star < Free` is part of the
/// canonical form and of every printed notation.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Color {
    Minus(u32),
    Plus(u32),
    Star(u32),
    Free(String),
}

impl Color {
    pub fn minus(i: u32) -> Self {
        assert!(i >= 1, "color indices start at 1");
        Color::Minus(i)
    }

    pub fn plus(i: u32) -> Self {
        assert!(i >= 1, "color indices start at 1");
        Color::Plus(i)
    }

    pub fn star(i: u32) -> Self {
        assert!(i >= 1, "color indices start at 1");
        Color::Star(i)
    }

    pub fn free(name: impl Into<String>) -> Self {
        let name = name.into();
        assert!(!name.is_empty(), "free color names must be nonempty");
        Color::Free(name)
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Color::Minus(i) => write!(f, "{i}-"),
            Color::Plus(i) => write!(f, "{i}+"),
            Color::Star(i) => write!(f, "{i}*"),
            Color::Free(name) => write!(f, "{name}"),
        }
    }
}

/// A raw (not yet canonicalized) connected diagram.
///
/// Half-edges are identified by arbitrary `usize` ids. Every id must occur
/// exactly once among the vertex triples and legs, and exactly once in the
/// pairing. The listed order of a triple is the cyclic order at that vertex.
#[derive(Clone, Debug, Default)]
pub struct RawDiagram {
    pub triples: Vec<[usize; 3]>,
    pub legs: Vec<(usize, Color)>,
    pub pairs: Vec<(usize, usize)>,
}

impl RawDiagram {
    /// Single edge with two colored legs.
    pub fn strut(a: Color, b: Color) -> Self {
        RawDiagram {
            triples: vec![],
            legs: vec![(0, a), (1, b)],
            pairs: vec![(0, 1)],
        }
    }

    /// One trivalent vertex with legs `a, b, c` in cyclic order.
    pub fn y(a: Color, b: Color, c: Color) -> Self {
        RawDiagram {
            triples: vec![[0, 1, 2]],
            legs: vec![(3, a), (4, b), (5, c)],
            pairs: vec![(0, 3), (1, 4), (2, 5)],
        }
    }

    /// The i-deg-2 tree: legs `a, b` at one vertex, `c, d` at the other,
    /// with the internal edge last in both cyclic orders.
    pub fn h(a: Color, b: Color, c: Color, d: Color) -> Self {
        RawDiagram {
            triples: vec![[0, 1, 2], [3, 4, 5]],
            legs: vec![(6, a), (7, b), (8, c), (9, d)],
            pairs: vec![(0, 6), (1, 7), (3, 8), (4, 9), (2, 5)],
        }
    }

    /// Two trivalent vertices joined by a double edge, one leg each. The
    /// two cyclic orders traverse the double edge in opposite senses, the
    /// orientation a planar picture of the bubble induces.
    pub fn bubble(a: Color, b: Color) -> Self {
        RawDiagram {
            triples: vec![[0, 1, 2], [3, 4, 5]],
            legs: vec![(6, a), (7, b)],
            pairs: vec![(0, 6), (3, 7), (1, 5), (2, 4)],
        }
    }

    /// The closed diagram on two trivalent vertices joined by three edges.
    pub fn theta() -> Self {
        RawDiagram {
            triples: vec![[0, 1, 2], [3, 4, 5]],
            legs: vec![],
            pairs: vec![(0, 3), (1, 4), (2, 5)],
        }
    }
}

/// Result of canonicalization: either the diagram vanishes in the AS
/// quotient, or we get a canonical representative and the relating sign.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Canonical {
    Zero,
    Diagram(ConnectedDiagram, i8),
}

impl Canonical {
    pub fn is_zero(&self) -> bool {
        matches!(self, Canonical::Zero)
    }
}

/// A canonical connected Jacobi diagram.
///
/// Vertices `0..tri_count` are trivalent, vertices `tri_count..` are legs in
/// the order of `leg_colors`. `edges` is sorted; `triples[v]` lists the edge
/// ids at trivalent vertex `v` in canonical cyclic order. Values of this
/// type are only built by [`canonicalize`], so structural equality is
/// equality in the AS quotient (up to the tracked sign).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ConnectedDiagram {
    tri_count: usize,
    leg_colors: Vec<Color>,
    edges: Vec<(usize, usize)>,
    triples: Vec<[usize; 3]>,
}

impl ConnectedDiagram {
    /// Number of trivalent vertices, the internal degree.
    pub fn ideg(&self) -> usize {
        self.tri_count
    }

    pub fn leg_colors(&self) -> &[Color] {
        &self.leg_colors
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn triples(&self) -> &[[usize; 3]] {
        &self.triples
    }

    pub fn is_strut(&self) -> bool {
        self.tri_count == 0
    }

    /// First Betti number: `#edges - #vertices + 1` for a connected graph.
    pub fn loop_count(&self) -> usize {
        let vertices = self.tri_count + self.leg_colors.len();
        self.edges.len() + 1 - vertices
    }

    pub fn is_tree(&self) -> bool {
        self.loop_count() == 0
    }

    /// Multiset of leg colors, with multiplicities.
    pub fn color_counts(&self) -> BTreeMap<Color, usize> {
        let mut out = BTreeMap::new();
        for c in &self.leg_colors {
            *out.entry(c.clone()).or_insert(0) += 1;
        }
        out
    }

    /// Expands the canonical form back into a raw diagram. Half-edge ids are
    /// `2e` and `2e + 1` for edge `e`, attached to its smaller and larger
    /// endpoint respectively (first occurrence wins for parallel edges; the
    /// triples disambiguate).
    pub fn to_raw(&self) -> RawDiagram {
        let mut pairs = Vec::with_capacity(self.edges.len());
        let mut at_vertex: HashMap<usize, Vec<usize>> = HashMap::new();
        for (e, &(p, q)) in self.edges.iter().enumerate() {
            pairs.push((2 * e, 2 * e + 1));
            at_vertex.entry(p).or_default().push(2 * e);
            at_vertex.entry(q).or_default().push(2 * e + 1);
        }
        let mut triples = Vec::with_capacity(self.tri_count);
        for v in 0..self.tri_count {
            let mut darts_here = at_vertex.remove(&v).unwrap_or_default();
            let mut triple = [0usize; 3];
            for (k, &e) in self.triples[v].iter().enumerate() {
                let pos = darts_here
                    .iter()
                    .position(|&d| d / 2 == e)
                    .expect("triple references an incident edge");
                triple[k] = darts_here.remove(pos);
            }
            triples.push(triple);
        }
        let legs = self
            .leg_colors
            .iter()
            .enumerate()
            .map(|(j, c)| {
                let v = self.tri_count + j;
                let darts = &at_vertex[&v];
                (darts[0], c.clone())
            })
            .collect();
        RawDiagram {
            triples,
            legs,
            pairs,
        }
    }
}

/// Vertex-and-slot address of a half-edge after indexing a raw diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Slot {
    vertex: usize,
    slot: usize,
}

struct Indexed {
    tri_count: usize,
    leg_colors: Vec<Color>,
    /// Edge endpoints as slots.
    edges: Vec<(Slot, Slot)>,
    /// Per trivalent vertex, edge index at each cyclic position.
    vertex_edges: Vec<[usize; 3]>,
}

fn index_raw(raw: &RawDiagram) -> Result<Indexed, DiagramError> {
    let t = raw.triples.len();
    let u = raw.legs.len();
    if t + u == 0 {
        return Err(DiagramError::Malformed("diagram has no vertices".into()));
    }
    let mut dart_slot: HashMap<usize, Slot> = HashMap::new();
    for (v, triple) in raw.triples.iter().enumerate() {
        for (slot, &d) in triple.iter().enumerate() {
            if dart_slot.insert(d, Slot { vertex: v, slot }).is_some() {
                return Err(DiagramError::Malformed(format!(
                    "half-edge {d} occurs twice"
                )));
            }
        }
    }
    for (j, (d, _)) in raw.legs.iter().enumerate() {
        if dart_slot
            .insert(
                *d,
                Slot {
                    vertex: t + j,
                    slot: 0,
                },
            )
            .is_some()
        {
            return Err(DiagramError::Malformed(format!(
                "half-edge {d} occurs twice"
            )));
        }
    }
    let mut seen = vec![false; 0];
    seen.resize(0, false);
    let mut used: HashMap<usize, bool> = dart_slot.keys().map(|&d| (d, false)).collect();
    let mut edges = Vec::with_capacity(raw.pairs.len());
    for &(a, b) in &raw.pairs {
        if a == b {
            return Err(DiagramError::Malformed(format!(
                "half-edge {a} paired with itself"
            )));
        }
        let (sa, sb) = match (dart_slot.get(&a), dart_slot.get(&b)) {
            (Some(&x), Some(&y)) => (x, y),
            _ => return Err(DiagramError::Malformed(format!("dangling pair ({a}, {b})"))),
        };
        for d in [a, b] {
            let flag = used.get_mut(&d).unwrap();
            if *flag {
                return Err(DiagramError::Malformed(format!(
                    "half-edge {d} paired twice"
                )));
            }
            *flag = true;
        }
        edges.push((sa, sb));
    }
    if let Some((&d, _)) = used.iter().find(|(_, &v)| !v) {
        return Err(DiagramError::Malformed(format!(
            "half-edge {d} left unpaired"
        )));
    }
    let mut vertex_edges = vec![[usize::MAX; 3]; t];
    for (e, &(sa, sb)) in edges.iter().enumerate() {
        for s in [sa, sb] {
            if s.vertex < t {
                vertex_edges[s.vertex][s.slot] = e;
            }
        }
    }
    let _ = u;
    Ok(Indexed {
        tri_count: t,
        leg_colors: raw.legs.iter().map(|(_, c)| c.clone()).collect(),
        edges,
        vertex_edges,
    })
}

fn connected(ix: &Indexed) -> bool {
    let n = ix.tri_count + ix.leg_colors.len();
    let mut adj: Vec<Vec<usize>> = vec![vec![]; n];
    for &(a, b) in &ix.edges {
        adj[a.vertex].push(b.vertex);
        adj[b.vertex].push(a.vertex);
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0usize];
    seen[0] = true;
    let mut count = 1;
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                count += 1;
                stack.push(w);
            }
        }
    }
    count == n
}

/// Stable partition refinement: vertices keep their class until their edge
/// neighborhood distinguishes them. Trivalent vertices sort before legs, and
/// leg classes sort by color, so class order is isomorphism-invariant.
fn refine_classes(ix: &Indexed) -> Vec<usize> {
    let n = ix.tri_count + ix.leg_colors.len();
    let mut initial: Vec<(usize, Option<&Color>)> = Vec::with_capacity(n);
    for _ in 0..ix.tri_count {
        initial.push((0, None));
    }
    for c in &ix.leg_colors {
        initial.push((1, Some(c)));
    }
    let mut keys: Vec<(usize, Option<&Color>)> = initial.clone();
    keys.sort();
    keys.dedup();
    let mut class: Vec<usize> = initial
        .iter()
        .map(|k| keys.binary_search(k).unwrap())
        .collect();
    loop {
        let mut sigs: Vec<(usize, Vec<usize>)> = (0..n).map(|v| (class[v], vec![])).collect();
        for &(a, b) in &ix.edges {
            sigs[a.vertex].1.push(class[b.vertex]);
            sigs[b.vertex].1.push(class[a.vertex]);
        }
        for s in &mut sigs {
            s.1.sort_unstable();
        }
        let mut sorted = sigs.clone();
        sorted.sort();
        sorted.dedup();
        let next: Vec<usize> = sigs
            .iter()
            .map(|s| sorted.binary_search(s).unwrap())
            .collect();
        if next == class {
            return class;
        }
        class = next;
    }
}

fn min_rotation(t: [usize; 3]) -> [usize; 3] {
    let rots = [t, [t[1], t[2], t[0]], [t[2], t[0], t[1]]];
    *rots.iter().min().unwrap()
}

type Encoding = (usize, Vec<Color>, Vec<(usize, usize)>, Vec<[usize; 3]>);

/// Encodes the diagram under one vertex labeling and one ordering of each
/// parallel-edge group; returns the encoding and the AS sign relating the
/// input cyclic orders to the encoded ones.
fn encode(
    ix: &Indexed,
    label: &[usize],
    par_order: &HashMap<(usize, usize), Vec<usize>>,
) -> (Encoding, i8) {
    let t = ix.tri_count;
    // Assign edge ids: sort by labeled endpoints, parallel groups in the
    // order chosen by `par_order`.
    let mut keyed: Vec<((usize, usize), usize)> = ix
        .edges
        .iter()
        .enumerate()
        .map(|(e, &(a, b))| {
            let (x, y) = (label[a.vertex], label[b.vertex]);
            ((x.min(y), x.max(y)), e)
        })
        .collect();
    keyed.sort_by_key(|&(k, e)| {
        let within = par_order
            .get(&k)
            .map(|v| v.iter().position(|&x| x == e).unwrap())
            .unwrap_or(0);
        (k, within)
    });
    let mut edge_id = vec![0usize; ix.edges.len()];
    let mut edge_list = Vec::with_capacity(ix.edges.len());
    for (new_id, &(k, e)) in keyed.iter().enumerate() {
        edge_id[e] = new_id;
        edge_list.push(k);
    }
    // Oriented triples in label order.
    let mut inv = vec![0usize; label.len()];
    for (v, &l) in label.iter().enumerate() {
        inv[l] = v;
    }
    let mut triples = Vec::with_capacity(t);
    let mut sign = 1i8;
    for l in 0..t {
        let v = inv[l];
        let ids = ix.vertex_edges[v].map(|e| edge_id[e]);
        let fwd = min_rotation(ids);
        let rev = min_rotation([ids[2], ids[1], ids[0]]);
        debug_assert_ne!(fwd, rev, "repeated edge id implies a self-loop");
        if fwd <= rev {
            triples.push(fwd);
        } else {
            triples.push(rev);
            sign = -sign;
        }
    }
    let leg_colors: Vec<Color> = (t..label.len())
        .map(|l| ix.leg_colors[inv[l] - t].clone())
        .collect();
    ((t, leg_colors, edge_list, triples), sign)
}

fn for_each_labeling(cells: &[Vec<usize>], n: usize, f: &mut impl FnMut(&[usize])) {
    fn rec(
        cells: &[Vec<usize>],
        ci: usize,
        next: usize,
        label: &mut Vec<usize>,
        f: &mut impl FnMut(&[usize]),
    ) {
        if ci == cells.len() {
            f(label);
            return;
        }
        let cell = &cells[ci];
        fn perm(
            cell: &[usize],
            k: usize,
            cells: &[Vec<usize>],
            ci: usize,
            next: usize,
            label: &mut Vec<usize>,
            picked: &mut Vec<bool>,
            f: &mut impl FnMut(&[usize]),
        ) {
            if k == cell.len() {
                rec(cells, ci + 1, next + cell.len(), label, f);
                return;
            }
            for (i, &v) in cell.iter().enumerate() {
                if picked[i] {
                    continue;
                }
                picked[i] = true;
                label[v] = next + k;
                perm(cell, k + 1, cells, ci, next, label, picked, f);
                picked[i] = false;
            }
        }
        let mut picked = vec![false; cell.len()];
        perm(cell, 0, cells, ci, next, label, &mut picked, f);
    }
    let mut label = vec![0usize; n];
    rec(cells, 0, 0, &mut label, f);
}

fn for_each_parallel_order(
    groups: &[((usize, usize), Vec<usize>)],
    f: &mut impl FnMut(&HashMap<(usize, usize), Vec<usize>>),
) {
    fn rec(
        groups: &[((usize, usize), Vec<usize>)],
        gi: usize,
        acc: &mut HashMap<(usize, usize), Vec<usize>>,
        f: &mut impl FnMut(&HashMap<(usize, usize), Vec<usize>>),
    ) {
        if gi == groups.len() {
            f(acc);
            return;
        }
        let (key, members) = &groups[gi];
        let mut idx: Vec<usize> = (0..members.len()).collect();
        // Heap's algorithm would do; members.len() <= 3 so just enumerate.
        permute(&mut idx, 0, &mut |order| {
            let ordered: Vec<usize> = order.iter().map(|&i| members[i]).collect();
            acc.insert(*key, ordered);
            rec(groups, gi + 1, acc, f);
        });
        acc.remove(key);
    }
    fn permute(idx: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
        if k == idx.len() {
            f(idx);
            return;
        }
        for i in k..idx.len() {
            idx.swap(k, i);
            permute(idx, k + 1, f);
            idx.swap(k, i);
        }
    }
    let mut acc = HashMap::new();
    rec(groups, 0, &mut acc, f);
}

/// Canonicalizes a raw connected diagram.
///
/// Returns the canonical representative together with the AS sign `s` such
/// that the input equals `s` times the representative, or [`Canonical::Zero`]
/// when the diagram admits a sign-reversing automorphism (in particular for
/// any self-loop "tadpole").
pub fn canonicalize(raw: &RawDiagram) -> Result<Canonical, DiagramError> {
    let ix = index_raw(raw)?;
    // Self-loop at a trivalent vertex: reversing the loop is a
    // sign-reversing automorphism.
    for &(a, b) in &ix.edges {
        if a.vertex == b.vertex {
            return Ok(Canonical::Zero);
        }
    }
    if !connected(&ix) {
        return Err(DiagramError::Disconnected);
    }
    let class = refine_classes(&ix);
    let n = class.len();
    let mut cells: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (v, &c) in class.iter().enumerate() {
        cells.entry(c).or_default().push(v);
    }
    let cells: Vec<Vec<usize>> = cells.into_values().collect();

    // Parallel-edge groups keyed by class pair are labeling-independent in
    // membership, but their keys depend on labels, so group by endpoints.
    let mut par: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for (e, &(a, b)) in ix.edges.iter().enumerate() {
        let k = (a.vertex.min(b.vertex), a.vertex.max(b.vertex));
        par.entry(k).or_default().push(e);
    }
    let groups: Vec<((usize, usize), Vec<usize>)> =
        par.into_iter().filter(|(_, v)| v.len() > 1).collect();

    let mut best: Option<(Encoding, i8)> = None;
    let mut zero = false;
    for_each_labeling(&cells, n, &mut |label| {
        if zero {
            return;
        }
        // Parallel group order is expressed on labeled endpoint keys.
        let labeled_groups: Vec<((usize, usize), Vec<usize>)> = groups
            .iter()
            .map(|((a, b), v)| {
                let (x, y) = (label[*a], label[*b]);
                ((x.min(y), x.max(y)), v.clone())
            })
            .collect();
        for_each_parallel_order(&labeled_groups, &mut |par_order| {
            if zero {
                return;
            }
            let (enc, sign) = encode(&ix, label, par_order);
            match &best {
                None => best = Some((enc, sign)),
                Some((b_enc, b_sign)) => {
                    if enc < *b_enc {
                        best = Some((enc, sign));
                    } else if enc == *b_enc && sign != *b_sign {
                        zero = true;
                    }
                }
            }
        });
    });
    if zero {
        return Ok(Canonical::Zero);
    }
    let ((tri_count, leg_colors, edges, triples), sign) = best.expect("at least one labeling");
    Ok(Canonical::Diagram(
        ConnectedDiagram {
            tri_count,
            leg_colors,
            edges,
            triples,
        },
        sign,
    ))
}
