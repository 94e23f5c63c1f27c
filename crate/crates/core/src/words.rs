//! Words in a graph product, the canonical normal form, and normal length.
//!
//! A [`Word`] is a finite sequence of non-identity syllables. Its canonical
//! form is obtained in two stages: reduction (no merge or deletion is possible
//! after any sequence of commuting swaps) and then the lexicographically least
//! rearrangement reachable by commuting swaps. Two words represent the same
//! element of the graph product exactly when their canonical forms agree.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::graphs::SimplicialGraph;
use crate::groups::{Group, GroupElem};

/// A graph together with one vertex group per vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Context {
    graph: SimplicialGraph,
    groups: Vec<Arc<Group>>,
}

impl Context {
    pub fn new(graph: SimplicialGraph, groups: Vec<Arc<Group>>) -> Result<Self> {
        if graph.vertex_count() != groups.len() {
            return Err(Error::VertexCountMismatch(graph.vertex_count(), groups.len()));
        }
        Ok(Context { graph, groups })
    }

    /// Every vertex gets the same group.
    pub fn uniform(graph: SimplicialGraph, group: Group) -> Self {
        let g = Arc::new(group);
        let groups = vec![g; graph.vertex_count()];
        Context { graph, groups }
    }

    pub fn graph(&self) -> &SimplicialGraph {
        &self.graph
    }

    pub fn groups(&self) -> &[Arc<Group>] {
        &self.groups
    }

    pub fn group(&self, vertex: usize) -> &Group {
        &self.groups[vertex]
    }

    pub fn vertex_count(&self) -> usize {
        self.groups.len()
    }

    pub fn is_finite(&self) -> bool {
        self.groups.iter().all(|g| g.is_finite())
    }

    /// Same vertex groups over a different graph on the same vertices.
    pub fn with_graph(&self, graph: SimplicialGraph) -> Result<Self> {
        Context::new(graph, self.groups.clone())
    }

    /// The syllable alphabet `S`, vertex by vertex. Requires finite groups.
    pub fn alphabet(&self) -> Result<Vec<Syllable>> {
        let mut out = Vec::new();
        for (v, g) in self.groups.iter().enumerate() {
            let elems = g.nontrivial_elements().ok_or(Error::InfiniteGroup)?;
            out.extend(elems.into_iter().map(|elem| Syllable { vertex: v, elem }));
        }
        Ok(out)
    }

    /// Validates a syllable against this context. Identity syllables pass.
    pub fn check_syllable(&self, s: &Syllable) -> Result<()> {
        if s.vertex >= self.vertex_count() {
            return Err(Error::VertexOutOfRange { vertex: s.vertex, count: self.vertex_count() });
        }
        self.groups[s.vertex].check(&s.elem)
    }
}

/// One letter of a word: a group element tagged with its vertex.
///
/// Ordered by vertex, then by element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Syllable {
    pub vertex: usize,
    pub elem: GroupElem,
}

impl Syllable {
    pub fn new(vertex: usize, elem: GroupElem) -> Self {
        Syllable { vertex, elem }
    }

    pub fn fin(vertex: usize, index: u32) -> Self {
        Syllable { vertex, elem: GroupElem::Finite(index) }
    }

    pub fn int(vertex: usize, z: i64) -> Self {
        Syllable { vertex, elem: GroupElem::int(z) }
    }
}

impl fmt::Display for Syllable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}:{}", self.vertex, self.elem)
    }
}

/// A word over the syllables of a context. Not necessarily canonical.
#[derive(Clone, Debug)]
pub struct Word {
    ctx: Arc<Context>,
    syllables: Vec<Syllable>,
}

impl PartialEq for Word {
    fn eq(&self, other: &Self) -> bool {
        self.same_context(other) && self.syllables == other.syllables
    }
}

impl Eq for Word {}

impl Word {
    /// Validates every syllable; identity syllables are rejected.
    pub fn new(ctx: Arc<Context>, syllables: Vec<Syllable>) -> Result<Self> {
        for (pos, s) in syllables.iter().enumerate() {
            ctx.check_syllable(s)?;
            if s.elem.is_identity() {
                return Err(Error::IdentitySyllable(pos));
            }
        }
        Ok(Word { ctx, syllables })
    }

    /// Caller guarantees validity and the absence of identity syllables.
    pub(crate) fn from_valid(ctx: Arc<Context>, syllables: Vec<Syllable>) -> Self {
        debug_assert!(syllables.iter().all(|s| ctx.check_syllable(s).is_ok() && !s.elem.is_identity()));
        Word { ctx, syllables }
    }

    pub fn empty(ctx: Arc<Context>) -> Self {
        Word { ctx, syllables: Vec::new() }
    }

    /// Canonical word of a raw syllable sequence, which may contain identity
    /// syllables.
    pub fn canonical_from_raw(ctx: Arc<Context>, raw: Vec<Syllable>) -> Result<Self> {
        for s in &raw {
            ctx.check_syllable(s)?;
        }
        let syllables = canonical_form(&ctx, raw);
        Ok(Word { ctx, syllables })
    }

    /// Parses whitespace separated `v<i>:<elem>` tokens. `e` or an empty
    /// string is the empty word.
    pub fn parse(ctx: Arc<Context>, text: &str) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() || text == "e" {
            return Ok(Word::empty(ctx));
        }
        let mut syllables = Vec::new();
        for token in text.split_whitespace() {
            syllables.push(parse_syllable(&ctx, token)?);
        }
        Word::new(ctx, syllables)
    }

    pub fn context(&self) -> &Arc<Context> {
        &self.ctx
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn into_syllables(self) -> Vec<Syllable> {
        self.syllables
    }

    pub fn len(&self) -> usize {
        self.syllables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    pub fn same_context(&self, other: &Word) -> bool {
        Arc::ptr_eq(&self.ctx, &other.ctx) || *self.ctx == *other.ctx
    }

    fn require_same_context(&self, other: &Word) -> Result<()> {
        if self.same_context(other) {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    /// The canonical representative of the element this word represents.
    pub fn normalize(&self) -> Word {
        Word { ctx: self.ctx.clone(), syllables: canonical_form(&self.ctx, self.syllables.clone()) }
    }

    pub fn is_canonical(&self) -> bool {
        canonical_form(&self.ctx, self.syllables.clone()) == self.syllables
    }

    /// Plain concatenation, without normalizing.
    pub fn concat(&self, other: &Word) -> Result<Word> {
        self.require_same_context(other)?;
        let mut syllables = self.syllables.clone();
        syllables.extend_from_slice(&other.syllables);
        Ok(Word { ctx: self.ctx.clone(), syllables })
    }

    /// Product in the graph product, canonical.
    pub fn mul(&self, other: &Word) -> Result<Word> {
        Ok(self.concat(other)?.normalize())
    }

    /// Inverse in the graph product, canonical.
    pub fn inv(&self) -> Word {
        Word { ctx: self.ctx.clone(), syllables: self.raw_inverse() }.normalize()
    }

    /// Reversed sequence of syllable inverses, not normalized.
    pub(crate) fn raw_inverse(&self) -> Vec<Syllable> {
        self.syllables
            .iter()
            .rev()
            .map(|s| Syllable { vertex: s.vertex, elem: self.ctx.group(s.vertex).invert(&s.elem) })
            .collect()
    }

    /// Number of syllables of the normal form.
    pub fn normal_length(&self) -> usize {
        canonical_form(&self.ctx, self.syllables.clone()).len()
    }

    /// `nl(g⁻¹h)`.
    pub fn distance(&self, other: &Word) -> Result<usize> {
        self.require_same_context(other)?;
        let mut raw = self.raw_inverse();
        raw.extend_from_slice(&other.syllables);
        Ok(canonical_form(&self.ctx, raw).len())
    }

    /// Equality in the graph product.
    pub fn represents_same(&self, other: &Word) -> Result<bool> {
        self.require_same_context(other)?;
        Ok(self.normalize().syllables == other.normalize().syllables)
    }

    /// The same syllables read in another context over the same vertex groups.
    pub fn reinterpret(&self, ctx: Arc<Context>) -> Result<Word> {
        if ctx.groups() != self.ctx.groups() {
            return Err(Error::ContextMismatch);
        }
        Ok(Word { ctx, syllables: self.syllables.clone() })
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syllables.is_empty() {
            return write!(f, "e");
        }
        for (k, s) in self.syllables.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

fn parse_syllable(ctx: &Context, token: &str) -> Result<Syllable> {
    let err = |reason: &str| Error::WordSyntax { token: token.to_string(), reason: reason.to_string() };
    let rest = token.strip_prefix('v').ok_or_else(|| err("expected `v<vertex>:<element>`"))?;
    let (v, e) = rest.split_once(':').ok_or_else(|| err("missing `:`"))?;
    let vertex: usize = v.parse().map_err(|_| err("bad vertex index"))?;
    if vertex >= ctx.vertex_count() {
        return Err(err("vertex out of range"));
    }
    let elem = if ctx.group(vertex).is_finite() {
        GroupElem::Finite(e.parse().map_err(|_| err("bad element index"))?)
    } else {
        GroupElem::Integer(e.parse::<BigInt>().map_err(|_| err("bad integer"))?)
    };
    Ok(Syllable { vertex, elem })
}

/// Canonical form of a raw syllable sequence (identity syllables allowed).
pub fn canonical_form(ctx: &Context, raw: Vec<Syllable>) -> Vec<Syllable> {
    commutation_sort(ctx.graph(), reduce(ctx, raw))
}

/// Reduces a raw sequence so that no deletion or merge is reachable.
///
/// Syllables are pushed one at a time onto a reduced prefix. A new syllable
/// on vertex `i` scans backwards over syllables adjacent to `i`; if it meets
/// another `i`-syllable the two merge in place, otherwise it is appended.
/// Removing a syllable that merged to the identity never unblocks an older
/// pair: everything after it is adjacent to `i`, so it was not separating
/// two syllables of any vertex it does not commute with.
pub fn reduce(ctx: &Context, raw: Vec<Syllable>) -> Vec<Syllable> {
    let graph = ctx.graph();
    let mut out: Vec<Syllable> = Vec::with_capacity(raw.len());
    for s in raw {
        if s.elem.is_identity() {
            continue;
        }
        let mut merged = false;
        let mut k = out.len();
        while k > 0 {
            k -= 1;
            let v = out[k].vertex;
            if v == s.vertex {
                let product = ctx.group(v).op(&out[k].elem, &s.elem);
                if product.is_identity() {
                    out.remove(k);
                } else {
                    out[k].elem = product;
                }
                merged = true;
                break;
            }
            if !graph.adjacent(v, s.vertex) {
                break;
            }
        }
        if !merged {
            out.push(s);
        }
    }
    out
}

/// Lexicographically least rearrangement of `w` under commuting swaps.
///
/// Greedy: repeatedly take the smallest syllable that commutes with every
/// syllable still ahead of it. Syllables on one vertex never commute, so the
/// choice is unique.
pub fn commutation_sort(graph: &SimplicialGraph, mut w: Vec<Syllable>) -> Vec<Syllable> {
    let mut out = Vec::with_capacity(w.len());
    while !w.is_empty() {
        let mut best = 0;
        for j in 1..w.len() {
            if w[j] < w[best] && w[..j].iter().all(|x| graph.adjacent(x.vertex, w[j].vertex)) {
                best = j;
            }
        }
        out.push(w.remove(best));
    }
    out
}
