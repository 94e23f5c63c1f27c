//! The 2-skeleton of the polyhedral product `(Δ_G, G)^L` for finite vertex
//! groups: vertices are tuples in `∏ G_i`, and its 1-skeleton is the Cayley
//! graph of `∏ G_i` with respect to all syllables.
//!
//! Vertices are stored as mixed-radix integers, coordinate 0 least
//! significant.

use std::collections::BTreeSet;
use std::fmt;
use std::io::{self, Write};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::groups::GroupElem;
use crate::induce::{phi_trace, phi_word, SetMapFamily, SAMPLE_MAX_LEN};
use crate::kernels::random_word;
use crate::report::Report;
use crate::words::{Context, Syllable, Word};

pub const DEFAULT_CAP: u64 = 100_000;

#[derive(Clone, Debug)]
pub struct Skeleton2 {
    context: Arc<Context>,
    radix: Vec<u32>,
    strides: Vec<usize>,
    vertex_count: usize,
    /// Unordered edges `(u, v)` with `u < v`.
    edges: Vec<(usize, usize)>,
    triangles: Vec<[usize; 3]>,
    /// Corners in cyclic order.
    squares: Vec<[usize; 4]>,
}

/// Cell counts of a skeleton.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Census {
    pub vertices: u128,
    pub edges: u128,
    pub triangles: u128,
    pub squares: u128,
}

impl fmt::Display for Census {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "V={} E={} T={} Sq={}", self.vertices, self.edges, self.triangles, self.squares)
    }
}

fn choose(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Cell counts predicted by the closed-form formulas.
pub fn closed_form_census(orders: &[u32], edges: impl IntoIterator<Item = (usize, usize)>) -> Census {
    let n: Vec<u128> = orders.iter().map(|&o| o as u128).collect();
    let total: u128 = n.iter().product();
    let others = |skip: &[usize]| -> u128 {
        n.iter().enumerate().filter(|(j, _)| !skip.contains(j)).map(|(_, &x)| x).product()
    };
    let edges_count = (0..n.len()).map(|i| choose(n[i], 2) * others(&[i])).sum();
    let triangles = (0..n.len()).map(|i| choose(n[i], 3) * others(&[i])).sum();
    let squares = edges
        .into_iter()
        .map(|(i, k)| choose(n[i], 2) * choose(n[k], 2) * others(&[i, k]))
        .sum();
    Census { vertices: total, edges: edges_count, triangles, squares }
}

/// Builds all 0-, 1- and 2-cells. Fails on infinite groups or when `∏ |G_i|`
/// exceeds `cap`.
pub fn build_skeleton(ctx: &Arc<Context>, cap: u64) -> Result<Skeleton2> {
    let mut radix = Vec::with_capacity(ctx.vertex_count());
    for g in ctx.groups() {
        radix.push(g.order().ok_or(Error::InfiniteGroup)?);
    }
    let needed: u128 = radix.iter().map(|&o| o as u128).product();
    if needed > cap as u128 {
        return Err(Error::CapExceeded { needed, cap });
    }
    let vertex_count = needed as usize;
    let mut strides = Vec::with_capacity(radix.len());
    let mut s = 1usize;
    for &o in &radix {
        strides.push(s);
        s *= o as usize;
    }
    let mut sk = Skeleton2 {
        context: ctx.clone(),
        radix,
        strides,
        vertex_count,
        edges: Vec::new(),
        triangles: Vec::new(),
        squares: Vec::new(),
    };
    let graph_edges: Vec<(usize, usize)> = ctx.graph().edges().collect();
    for u in 0..vertex_count {
        let t = sk.tuple(u);
        for (i, &ti) in t.iter().enumerate() {
            let n = sk.radix[i];
            for h in ti + 1..n {
                let v = sk.with_coord(u, i, h);
                sk.edges.push((u, v));
                for k in h + 1..n {
                    sk.triangles.push([u, v, sk.with_coord(u, i, k)]);
                }
            }
        }
        for &(i, k) in &graph_edges {
            for hi in t[i] + 1..sk.radix[i] {
                for hk in t[k] + 1..sk.radix[k] {
                    let a = sk.with_coord(u, i, hi);
                    let c = sk.with_coord(u, k, hk);
                    let b = sk.with_coord(a, k, hk);
                    sk.squares.push([u, a, b, c]);
                }
            }
        }
    }
    Ok(sk)
}

impl Skeleton2 {
    pub fn context(&self) -> &Arc<Context> {
        &self.context
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    pub fn squares(&self) -> &[[usize; 4]] {
        &self.squares
    }

    /// Coordinates of a vertex as element indices.
    pub fn tuple(&self, v: usize) -> Vec<u32> {
        self.radix
            .iter()
            .zip(&self.strides)
            .map(|(&n, &s)| ((v / s) % n as usize) as u32)
            .collect()
    }

    pub fn index(&self, tuple: &[u32]) -> Result<usize> {
        if tuple.len() != self.radix.len() {
            return Err(Error::VertexCountMismatch(tuple.len(), self.radix.len()));
        }
        let mut v = 0;
        for ((&g, &n), &s) in tuple.iter().zip(&self.radix).zip(&self.strides) {
            if g >= n {
                return Err(Error::ElementOutOfRange { index: g as u64, order: n });
            }
            v += g as usize * s;
        }
        Ok(v)
    }

    pub fn identity_vertex(&self) -> usize {
        let ids: Vec<u32> = self
            .context
            .groups()
            .iter()
            .map(|g| match g.identity() {
                GroupElem::Finite(e) => e,
                GroupElem::Integer(_) => unreachable!("finite context"),
            })
            .collect();
        self.index(&ids).expect("identity tuple in range")
    }

    fn coord(&self, v: usize, i: usize) -> u32 {
        ((v / self.strides[i]) % self.radix[i] as usize) as u32
    }

    fn with_coord(&self, v: usize, i: usize, g: u32) -> usize {
        v - self.coord(v, i) as usize * self.strides[i] + g as usize * self.strides[i]
    }

    /// The endpoint of the directed edge labelled `s` leaving `v`.
    pub fn step(&self, v: usize, s: &Syllable) -> Result<usize> {
        if v >= self.vertex_count {
            return Err(Error::Precondition(format!("vertex {v} is not in the skeleton")));
        }
        self.context.check_syllable(s)?;
        let g = self.context.group(s.vertex);
        match g.op(&GroupElem::Finite(self.coord(v, s.vertex)), &s.elem) {
            GroupElem::Finite(h) => Ok(self.with_coord(v, s.vertex, h)),
            GroupElem::Integer(_) => Err(Error::InfiniteGroup),
        }
    }

    /// The Cayley label `g⁻¹h` of the directed edge from `u` to `v`, or `None`
    /// when they are not joined by an edge.
    pub fn label(&self, u: usize, v: usize) -> Option<Syllable> {
        if u >= self.vertex_count || v >= self.vertex_count || u == v {
            return None;
        }
        let mut differing = (0..self.radix.len()).filter(|&i| self.coord(u, i) != self.coord(v, i));
        let i = differing.next()?;
        if differing.next().is_some() {
            return None;
        }
        let g = self.context.group(i);
        let elem = g.op(&g.invert(&GroupElem::Finite(self.coord(u, i))), &GroupElem::Finite(self.coord(v, i)));
        Some(Syllable { vertex: i, elem })
    }

    /// Checks that at every vertex the outgoing edges carry every syllable
    /// exactly once, using the stored edge list.
    pub fn check_cayley(&self) -> Result<()> {
        let alphabet: BTreeSet<Syllable> = self.context.alphabet()?.into_iter().collect();
        let mut out: Vec<Vec<Syllable>> = vec![Vec::new(); self.vertex_count];
        for &(u, v) in &self.edges {
            let l = self.label(u, v).ok_or_else(|| Error::Internal(format!("edge ({u},{v}) has no label")))?;
            let back = self.label(v, u).expect("labels are symmetric");
            out[u].push(l);
            out[v].push(back);
        }
        for (v, labels) in out.into_iter().enumerate() {
            let n = labels.len();
            let set: BTreeSet<Syllable> = labels.into_iter().collect();
            if set.len() != n || set != alphabet {
                return Err(Error::Internal(format!("vertex {v} violates the Cayley property")));
            }
        }
        Ok(())
    }

    /// Counts cells and compares them with the closed-form formulas.
    pub fn census(&self) -> Result<Census> {
        let got = Census {
            vertices: self.vertex_count as u128,
            edges: self.edges.len() as u128,
            triangles: self.triangles.len() as u128,
            squares: self.squares.len() as u128,
        };
        let want = closed_form_census(&self.radix, self.context.graph().edges());
        if got != want {
            return Err(Error::Internal(format!("cell census {got} disagrees with closed form {want}")));
        }
        Ok(got)
    }

    /// The edge path starting at `base` that follows the syllables of `w`.
    pub fn edge_path(&self, w: &Word, base: usize) -> Result<Vec<usize>> {
        if **w.context() != *self.context {
            return Err(Error::ContextMismatch);
        }
        let mut path = Vec::with_capacity(w.len() + 1);
        let mut v = base;
        if v >= self.vertex_count {
            return Err(Error::Precondition(format!("base vertex {v} is not in the skeleton")));
        }
        path.push(v);
        for s in w.syllables() {
            v = self.step(v, s)?;
            path.push(v);
        }
        Ok(path)
    }

    /// One `u v label` line per unordered edge, with `label` on `u → v`.
    pub fn write_edge_list(&self, out: &mut impl Write) -> io::Result<()> {
        for &(u, v) in &self.edges {
            let l = self.label(u, v).expect("stored edges are labelled");
            writeln!(out, "{u} {v} {l}")?;
        }
        Ok(())
    }
}

pub fn cell_census(sk: &Skeleton2) -> Result<Census> {
    sk.census()
}

pub fn edge_path_of_word(sk: &Skeleton2, w: &Word, base: usize) -> Result<Vec<usize>> {
    sk.edge_path(w, base)
}

/// The cellular map induced by a set-map family on 0- and 1-cells.
#[derive(Clone, Debug)]
pub struct ComplexMap {
    pub vertex_map: Vec<usize>,
    /// Directed edges examined.
    pub directed_edges: usize,
    /// Directed edges whose endpoints have the same image.
    pub collapses: usize,
    /// Directed edges whose endpoints map to distinct non-adjacent vertices.
    pub broken_edges: Vec<(usize, usize)>,
}

impl ComplexMap {
    pub fn is_bijective_on_vertices(&self) -> bool {
        let set: BTreeSet<usize> = self.vertex_map.iter().copied().collect();
        set.len() == self.vertex_map.len()
    }

    /// The image of a path with collapsed steps removed, and the 1-based
    /// indices of the collapsed steps.
    pub fn map_path(&self, path: &[usize]) -> (Vec<usize>, Vec<usize>) {
        let mut image = Vec::with_capacity(path.len());
        let mut collapsed = Vec::new();
        for (t, &v) in path.iter().enumerate() {
            let fv = self.vertex_map[v];
            if t > 0 && image.last() == Some(&fv) {
                collapsed.push(t);
            } else {
                image.push(fv);
            }
        }
        (image, collapsed)
    }
}

fn require_shared_graph(sk: &Skeleton2, target: &Skeleton2, family: &SetMapFamily) -> Result<()> {
    if *family.source() != sk.context || *family.target() != target.context {
        return Err(Error::ContextMismatch);
    }
    if !family.psi().is_identity() || sk.context.graph() != target.context.graph() {
        return Err(Error::Precondition("the complex map needs ψ to be the identity on a shared graph".into()));
    }
    Ok(())
}

/// Applies the family coordinate-wise to every vertex, and checks every
/// directed edge either collapses or lands on an edge of `target`.
pub fn induced_complex_map(sk: &Skeleton2, target: &Skeleton2, family: &SetMapFamily) -> Result<ComplexMap> {
    require_shared_graph(sk, target, family)?;
    let mut vertex_map = Vec::with_capacity(sk.vertex_count);
    for v in 0..sk.vertex_count {
        let image: Vec<u32> = sk
            .tuple(v)
            .into_iter()
            .enumerate()
            .map(|(i, g)| match family.maps()[i].apply(&GroupElem::Finite(g))? {
                GroupElem::Finite(h) => Ok(h),
                GroupElem::Integer(_) => Err(Error::InfiniteGroup),
            })
            .collect::<Result<_>>()?;
        vertex_map.push(target.index(&image)?);
    }
    let mut map = ComplexMap { vertex_map, directed_edges: 0, collapses: 0, broken_edges: Vec::new() };
    for &(u, v) in &sk.edges {
        for (a, b) in [(u, v), (v, u)] {
            map.directed_edges += 1;
            let (fa, fb) = (map.vertex_map[a], map.vertex_map[b]);
            if fa == fb {
                map.collapses += 1;
            } else if target.label(fa, fb).is_none() {
                map.broken_edges.push((a, b));
            }
        }
    }
    Ok(map)
}

/// Compares the image of the edge path of `w` (collapses removed) with the
/// edge path of `phi_word(w)` from the image of the identity, and the
/// collapsed steps with the syllables dropped by the prefix formula.
pub fn path_agreement(
    sk: &Skeleton2,
    target: &Skeleton2,
    map: &ComplexMap,
    family: &SetMapFamily,
    w: &Word,
) -> Result<std::result::Result<(), String>> {
    require_shared_graph(sk, target, family)?;
    let base = sk.identity_vertex();
    let (image, collapsed) = map.map_path(&sk.edge_path(w, base)?);
    let phi = phi_word(w, family)?;
    let direct = target.edge_path(&phi, map.vertex_map[base])?;
    if image != direct {
        return Ok(Err(format!("{w}: complex image {image:?} but path of {phi} is {direct:?}")));
    }
    let dropped: Vec<usize> = phi_trace(w, family)?
        .iter()
        .enumerate()
        .filter(|(_, s)| s.is_none())
        .map(|(j, _)| j + 1)
        .collect();
    if dropped != collapsed {
        return Ok(Err(format!("{w}: collapsed steps {collapsed:?} but dropped syllables {dropped:?}")));
    }
    Ok(Ok(()))
}

/// Builds both skeleta, checks the edge map, then compares paths for `n`
/// random words of length at most [`SAMPLE_MAX_LEN`].
pub fn check_complex_agreement(family: &SetMapFamily, cap: u64, seed: u64, n: usize) -> Result<Report> {
    let sk = build_skeleton(family.source(), cap)?;
    let target = build_skeleton(family.target(), cap)?;
    let map = induced_complex_map(&sk, &target, family)?;
    let mut report = Report::new("oracle-agreement");
    report.note("source_vertices", sk.vertex_count());
    report.note("target_vertices", target.vertex_count());
    report.note("collapsed_edges", map.collapses);
    for &(a, b) in map.broken_edges.iter().take(10) {
        report.fail(0, format!("edge {a}->{b} maps to a non-edge"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for k in 0..n {
        let len = rng.gen_range(0..=SAMPLE_MAX_LEN);
        let w = random_word(&mut rng, family.source(), len);
        report.samples += 1;
        if let Err(detail) = path_agreement(&sk, &target, &map, family, &w)? {
            report.fail(k, detail);
        }
    }
    Ok(report)
}
