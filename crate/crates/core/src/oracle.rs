//! Brute-force ground truth: literal search over elementary moves, and
//! breadth-first enumeration of balls in the syllable metric.
//!
//! Nothing here uses the canonical form to decide equality; it is the
//! independent side against which [`crate::words`] is checked.

use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};
use crate::groups::GroupElem;
use crate::kernels::{in_kernel, random_nontrivial};
use crate::words::{canonical_form, Context, Syllable, Word};

/// A raw syllable sequence; identity syllables allowed.
pub type RawWord = Vec<Syllable>;

/// Default cap on the number of words visited by one closure.
pub const DEFAULT_BFS_LIMIT: usize = 1_000_000;

/// Every word reachable from `w` by one elementary move: deleting an
/// identity syllable, merging two neighbouring syllables of one vertex, or
/// swapping two neighbouring syllables on adjacent vertices.
pub fn successors(ctx: &Context, w: &[Syllable]) -> Vec<RawWord> {
    let mut out = Vec::new();
    for j in 0..w.len() {
        if w[j].elem.is_identity() {
            let mut next = w.to_vec();
            next.remove(j);
            out.push(next);
        }
    }
    for j in 0..w.len().saturating_sub(1) {
        let (a, b) = (&w[j], &w[j + 1]);
        if a.vertex == b.vertex {
            let mut next = w.to_vec();
            next[j].elem = ctx.group(a.vertex).op(&a.elem, &b.elem);
            next.remove(j + 1);
            out.push(next);
        } else if ctx.graph().adjacent(a.vertex, b.vertex) {
            let mut next = w.to_vec();
            next.swap(j, j + 1);
            out.push(next);
        }
    }
    out
}

/// All words reachable from `w` by elementary moves, or `None` if more than
/// `limit` words are reachable.
pub fn move_closure(ctx: &Context, w: &[Syllable], limit: usize) -> Option<HashSet<RawWord>> {
    let mut seen: HashSet<RawWord> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(w.to_vec());
    queue.push_back(w.to_vec());
    while let Some(x) = queue.pop_front() {
        for y in successors(ctx, &x) {
            if !seen.contains(&y) {
                if seen.len() >= limit {
                    return None;
                }
                seen.insert(y.clone());
                queue.push_back(y);
            }
        }
    }
    Some(seen)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BfsVerdict {
    Equal,
    Unequal,
    Inconclusive,
}

/// Equality by literal move search: two words are equal when their move
/// closures meet. Only the forward moves are applied, so both closures are
/// finite; `limit` bounds each of them.
pub fn bfs_equal(u: &Word, v: &Word, limit: usize) -> Result<BfsVerdict> {
    if !u.same_context(v) {
        return Err(Error::ContextMismatch);
    }
    if u.syllables() == v.syllables() {
        return Ok(BfsVerdict::Equal);
    }
    let ctx = u.context();
    let Some(cu) = move_closure(ctx, u.syllables(), limit) else {
        return Ok(BfsVerdict::Inconclusive);
    };
    if cu.contains(v.syllables()) {
        return Ok(BfsVerdict::Equal);
    }
    let Some(cv) = move_closure(ctx, v.syllables(), limit) else {
        return Ok(BfsVerdict::Inconclusive);
    };
    let (small, large) = if cu.len() <= cv.len() { (&cu, &cv) } else { (&cv, &cu) };
    Ok(if small.iter().any(|x| large.contains(x)) { BfsVerdict::Equal } else { BfsVerdict::Unequal })
}

/// Outcome of [`exhaustive_agreement`].
#[derive(Clone, Debug, Default)]
pub struct Agreement {
    /// Words without identity syllables, of length at most the bound.
    pub words: usize,
    /// Raw words reachable from them by elementary moves.
    pub nodes: usize,
    /// Elementary moves between those raw words.
    pub moves: usize,
    /// Distinct canonical forms among the words.
    pub classes: usize,
    pub violations: Vec<String>,
}

impl Agreement {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

const LETTER_BITS: u32 = 5;
const MAX_PACKED: usize = 12;

/// Syllables (identity included) of a finite context, numbered from 1.
struct Letters {
    vertex: Vec<usize>,
    elem: Vec<u32>,
    /// `merge[a][b]`: letter of the product of two letters on one vertex.
    merge: Vec<Vec<u8>>,
}

impl Letters {
    fn new(ctx: &Context) -> Result<Self> {
        let mut vertex = vec![usize::MAX];
        let mut elem = vec![0];
        let mut first = Vec::new();
        for v in 0..ctx.vertex_count() {
            let n = ctx.group(v).order().ok_or(Error::InfiniteGroup)?;
            first.push(vertex.len());
            for e in 0..n {
                vertex.push(v);
                elem.push(e);
            }
        }
        if vertex.len() >= 1 << LETTER_BITS {
            return Err(Error::Precondition("too many syllables to pack words".into()));
        }
        let m = vertex.len();
        let mut merge = vec![vec![0u8; m]; m];
        for a in 1..m {
            for b in 1..m {
                if vertex[a] == vertex[b] {
                    let v = vertex[a];
                    let GroupElem::Finite(p) = ctx.group(v).op(&GroupElem::Finite(elem[a]), &GroupElem::Finite(elem[b]))
                    else {
                        unreachable!("finite group")
                    };
                    merge[a][b] = (first[v] + p as usize) as u8;
                }
            }
        }
        Ok(Letters { vertex, elem, merge })
    }

    fn pack(word: &[u8]) -> u64 {
        word.iter().rev().fold(0u64, |acc, &l| (acc << LETTER_BITS) | l as u64)
    }

    fn unpack(mut code: u64, buf: &mut Vec<u8>) {
        buf.clear();
        while code != 0 {
            buf.push((code & ((1 << LETTER_BITS) - 1)) as u8);
            code >>= LETTER_BITS;
        }
    }

    fn syllables(&self, word: &[u8]) -> Vec<Syllable> {
        word.iter().map(|&l| Syllable::fin(self.vertex[l as usize], self.elem[l as usize])).collect()
    }

    fn letter_of(&self, s: &Syllable) -> u8 {
        let GroupElem::Finite(e) = s.elem else { unreachable!("finite group") };
        (1..self.vertex.len()).find(|&l| self.vertex[l] == s.vertex && self.elem[l] == e).expect("letter") as u8
    }
}

/// Exhaustive comparison of canonical forms with move-search equality on
/// every word of length at most `max_len` over a finite context.
///
/// [`bfs_equal`] declares two words equal exactly when their move closures
/// meet. The whole union of closures is built once, and two facts are
/// checked on it, which together are equivalent to agreement on every pair:
/// every elementary move preserves the canonical form, and from every word
/// some word equal to its own canonical form is reachable.
pub fn exhaustive_agreement(ctx: &Context, max_len: usize) -> Result<Agreement> {
    if max_len > MAX_PACKED {
        return Err(Error::Precondition(format!("words longer than {MAX_PACKED} cannot be packed")));
    }
    let letters = Letters::new(ctx)?;
    let live: Vec<u8> = (1..letters.vertex.len())
        .filter(|&l| letters.elem[l] != 0)
        .map(|l| l as u8)
        .collect();

    let mut index: HashMap<u64, u32> = HashMap::new();
    let mut nodes: Vec<u64> = Vec::new();
    let mut layer: Vec<Vec<u8>> = vec![Vec::new()];
    for len in 0..=max_len {
        for w in &layer {
            let code = Letters::pack(w);
            index.insert(code, nodes.len() as u32);
            nodes.push(code);
        }
        if len < max_len {
            layer = layer
                .iter()
                .flat_map(|w| live.iter().map(move |&l| w.iter().copied().chain(std::iter::once(l)).collect()))
                .collect();
        }
    }
    let words = nodes.len();

    let graph = ctx.graph();
    let mut offsets = vec![0usize];
    let mut targets: Vec<u32> = Vec::new();
    let mut buf = Vec::new();
    let mut next = Vec::new();
    let mut k = 0;
    while k < nodes.len() {
        Letters::unpack(nodes[k], &mut buf);
        let mut push = |w: &[u8], nodes: &mut Vec<u64>| {
            let code = Letters::pack(w);
            let id = *index.entry(code).or_insert_with(|| {
                nodes.push(code);
                (nodes.len() - 1) as u32
            });
            targets.push(id);
        };
        for j in 0..buf.len() {
            if letters.elem[buf[j] as usize] == 0 {
                next.clear();
                next.extend(buf.iter().enumerate().filter(|&(i, _)| i != j).map(|(_, &l)| l));
                push(&next, &mut nodes);
            }
        }
        for j in 0..buf.len().saturating_sub(1) {
            let (a, b) = (buf[j] as usize, buf[j + 1] as usize);
            let (va, vb) = (letters.vertex[a], letters.vertex[b]);
            if va == vb {
                next.clear();
                next.extend_from_slice(&buf[..j]);
                next.push(letters.merge[a][b]);
                next.extend_from_slice(&buf[j + 2..]);
                push(&next, &mut nodes);
            } else if graph.adjacent(va, vb) {
                next.clear();
                next.extend_from_slice(&buf);
                next.swap(j, j + 1);
                push(&next, &mut nodes);
            }
        }
        offsets.push(targets.len());
        k += 1;
    }

    let canon: Vec<u64> = nodes
        .iter()
        .map(|&code| {
            Letters::unpack(code, &mut buf);
            let c = canonical_form(ctx, letters.syllables(&buf));
            let packed: Vec<u8> = c.iter().map(|s| letters.letter_of(s)).collect();
            Letters::pack(&packed)
        })
        .collect();

    let mut out = Agreement { words, nodes: nodes.len(), moves: targets.len(), ..Agreement::default() };
    let show = |code: u64, buf: &mut Vec<u8>| {
        Letters::unpack(code, buf);
        let s: Vec<String> = letters.syllables(buf).iter().map(|s| s.to_string()).collect();
        if s.is_empty() { "e".to_string() } else { s.join(" ") }
    };
    for x in 0..nodes.len() {
        for &y in &targets[offsets[x]..offsets[x + 1]] {
            if canon[x] != canon[y as usize] && out.violations.len() < 10 {
                let (a, b) = (show(nodes[x], &mut buf), show(nodes[y as usize], &mut buf));
                out.violations.push(format!("move {a} -> {b} changes the canonical form"));
            }
        }
    }

    let mut preds: Vec<Vec<u32>> = vec![Vec::new(); nodes.len()];
    for x in 0..nodes.len() {
        for &y in &targets[offsets[x]..offsets[x + 1]] {
            preds[y as usize].push(x as u32);
        }
    }
    let mut reach = vec![false; nodes.len()];
    let mut stack: Vec<usize> = (0..nodes.len()).filter(|&x| canon[x] == nodes[x]).collect();
    for &x in &stack {
        reach[x] = true;
    }
    while let Some(y) = stack.pop() {
        for &x in &preds[y] {
            if !reach[x as usize] {
                reach[x as usize] = true;
                stack.push(x as usize);
            }
        }
    }
    for x in 0..words {
        if !reach[x] && out.violations.len() < 10 {
            let a = show(nodes[x], &mut buf);
            out.violations.push(format!("{a} cannot reach its canonical form by moves"));
        }
    }
    let classes: HashSet<u64> = canon[..words].iter().copied().collect();
    out.classes = classes.len();
    Ok(out)
}

/// Every word of length `1..=max_len` over the syllable alphabet of a finite
/// context, plus the empty word, shortest first.
pub fn all_words(ctx: &Context, max_len: usize) -> Result<Vec<RawWord>> {
    let alphabet = ctx.alphabet()?;
    let mut out: Vec<RawWord> = vec![Vec::new()];
    let mut layer: Vec<RawWord> = vec![Vec::new()];
    for _ in 0..max_len {
        if alphabet.is_empty() {
            break;
        }
        let mut next = Vec::with_capacity(layer.len() * alphabet.len());
        for w in &layer {
            for s in &alphabet {
                let mut x = w.clone();
                x.push(s.clone());
                next.push(x);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    Ok(out)
}

/// A random word equivalent to `w`, built by `steps` inverse elementary
/// moves: inserting `g g⁻¹`, splitting a syllable in two, or swapping two
/// neighbouring commuting syllables.
pub fn random_equivalent<R: Rng + ?Sized>(rng: &mut R, w: &Word, steps: usize) -> Word {
    let ctx = w.context().clone();
    let live: Vec<usize> = (0..ctx.vertex_count()).filter(|&v| ctx.group(v).order() != Some(1)).collect();
    if live.is_empty() {
        return w.clone();
    }
    let mut syl = w.syllables().to_vec();
    for _ in 0..steps {
        match rng.gen_range(0..3) {
            0 => {
                let v = live[rng.gen_range(0..live.len())];
                let g = random_nontrivial(rng, ctx.group(v)).expect("nontrivial");
                let pos = rng.gen_range(0..=syl.len());
                let ginv = ctx.group(v).invert(&g);
                syl.insert(pos, Syllable::new(v, ginv));
                syl.insert(pos, Syllable::new(v, g));
            }
            1 if !syl.is_empty() => {
                let pos = rng.gen_range(0..syl.len());
                let v = syl[pos].vertex;
                let group = ctx.group(v);
                let h = random_nontrivial(rng, group).expect("nontrivial");
                let rest = group.op(&group.invert(&h), &syl[pos].elem);
                if !rest.is_identity() {
                    syl[pos] = Syllable::new(v, rest);
                    syl.insert(pos, Syllable::new(v, h));
                }
            }
            _ if syl.len() >= 2 => {
                let pos = rng.gen_range(0..syl.len() - 1);
                if ctx.graph().adjacent(syl[pos].vertex, syl[pos + 1].vertex) {
                    syl.swap(pos, pos + 1);
                }
            }
            _ => {}
        }
    }
    Word::new(ctx, syl).expect("inverse moves keep syllables valid")
}

/// Which side new generators are multiplied on during ball enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// The ball of a given radius around the identity in the syllable metric.
#[derive(Clone, Debug)]
pub struct Ball {
    /// Canonical words with their distance from the identity, in discovery order.
    pub elements: Vec<(Word, usize)>,
    /// `spheres[r]` counts the elements at distance exactly `r`.
    pub spheres: Vec<usize>,
}

/// Breadth-first search in the Cayley graph with respect to all syllables.
/// Each element's BFS depth is cross-checked against its normal length.
pub fn enumerate_ball(ctx: &Arc<Context>, radius: usize, side: Side, budget: usize) -> Result<Ball> {
    let alphabet = ctx.alphabet()?;
    let mut seen: HashSet<RawWord> = HashSet::new();
    let mut elements = vec![(Word::empty(ctx.clone()), 0)];
    seen.insert(Vec::new());
    let mut spheres = vec![1];
    let mut frontier: Vec<RawWord> = vec![Vec::new()];
    for r in 1..=radius {
        let mut next = Vec::new();
        for w in &frontier {
            for s in &alphabet {
                let raw = match side {
                    Side::Right => w.iter().cloned().chain(std::iter::once(s.clone())).collect(),
                    Side::Left => std::iter::once(s.clone()).chain(w.iter().cloned()).collect(),
                };
                let c = canonical_form(ctx, raw);
                if seen.contains(&c) {
                    continue;
                }
                if seen.len() >= budget {
                    return Err(Error::BudgetExceeded(budget));
                }
                if c.len() != r {
                    return Err(Error::Internal(format!(
                        "element at BFS depth {r} has normal length {}",
                        c.len()
                    )));
                }
                seen.insert(c.clone());
                next.push(c);
            }
        }
        spheres.push(next.len());
        elements.extend(next.iter().map(|c| (Word::new(ctx.clone(), c.clone()).expect("canonical"), r)));
        frontier = next;
        if frontier.is_empty() {
            break;
        }
    }
    Ok(Ball { elements, spheres })
}

/// Number of kernel elements at each normal length up to `radius`.
pub fn kernel_census(ctx: &Arc<Context>, radius: usize, budget: usize) -> Result<Vec<usize>> {
    let ball = enumerate_ball(ctx, radius, Side::Right, budget)?;
    let mut counts = vec![0; radius + 1];
    for (w, r) in &ball.elements {
        if in_kernel(w) {
            counts[*r] += 1;
        }
    }
    Ok(counts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::SimplicialGraph;
    use crate::groups::Group;

    fn ctx(edges: &[(usize, usize)], orders: &[u32]) -> Arc<Context> {
        let graph = SimplicialGraph::new(orders.len(), edges.iter().copied()).unwrap();
        Arc::new(Context::new(graph, orders.iter().map(|&n| Arc::new(Group::cyclic(n).unwrap())).collect()).unwrap())
    }

    fn w(c: &Arc<Context>, s: &str) -> Word {
        Word::parse(c.clone(), s).unwrap()
    }

    #[test]
    fn bfs_examples() {
        let c = ctx(&[], &[2, 2]);
        let ab = w(&c, "v0:1 v1:1");
        assert_eq!(bfs_equal(&ab, &ab, 100), Ok(BfsVerdict::Equal));
        assert_eq!(bfs_equal(&w(&c, "v0:1 v0:1"), &w(&c, "e"), 100), Ok(BfsVerdict::Equal));
        assert_eq!(bfs_equal(&ab, &w(&c, "v1:1 v0:1"), 100), Ok(BfsVerdict::Unequal));
        let e = ctx(&[(0, 1)], &[2, 2]);
        assert_eq!(bfs_equal(&w(&e, "v0:1 v1:1"), &w(&e, "v1:1 v0:1"), 100), Ok(BfsVerdict::Equal));
    }

    #[test]
    fn bfs_respects_limit() {
        let c = ctx(&[(0, 1), (1, 2), (0, 2)], &[3, 3, 3]);
        let u = w(&c, "v0:1 v1:1 v2:1 v0:2 v1:2 v2:2");
        let v = w(&c, "v2:1");
        assert_eq!(bfs_equal(&u, &v, 3), Ok(BfsVerdict::Inconclusive));
        assert_eq!(bfs_equal(&u, &v, DEFAULT_BFS_LIMIT), Ok(BfsVerdict::Unequal));
        assert_eq!(bfs_equal(&u, &w(&c, "e"), DEFAULT_BFS_LIMIT), Ok(BfsVerdict::Equal));
    }

    #[test]
    fn integer_closures_are_finite() {
        let graph = SimplicialGraph::empty(2);
        let z = Arc::new(Context::uniform(graph, Group::infinite_cyclic()));
        let u = w(&z, "v0:2 v0:-2 v1:1");
        assert_eq!(bfs_equal(&u, &w(&z, "v1:1"), 1000), Ok(BfsVerdict::Equal));
    }

    #[test]
    fn ball_examples() {
        let c = ctx(&[], &[2, 2]);
        let b = enumerate_ball(&c, 0, Side::Right, 100).unwrap();
        assert_eq!(b.spheres, vec![1]);
        let b = enumerate_ball(&c, 5, Side::Right, 1000).unwrap();
        assert_eq!(b.spheres, vec![1, 2, 2, 2, 2, 2]);
        let e = ctx(&[(0, 1)], &[2, 2]);
        let b = enumerate_ball(&e, 5, Side::Right, 1000).unwrap();
        assert_eq!(b.spheres, vec![1, 2, 1, 0]);
        assert_eq!(b.elements.len(), 4);
    }

    #[test]
    fn census_of_infinite_dihedral() {
        let c = ctx(&[], &[2, 2]);
        assert_eq!(kernel_census(&c, 0, 10).unwrap(), vec![1]);
        assert_eq!(kernel_census(&c, 4, 1000).unwrap(), vec![1, 0, 0, 0, 2]);
        let ball = enumerate_ball(&c, 4, Side::Right, 1000).unwrap();
        let kernel4: Vec<String> = ball
            .elements
            .iter()
            .filter(|(x, r)| *r == 4 && in_kernel(x))
            .map(|(x, _)| x.to_string())
            .collect();
        assert_eq!(kernel4.len(), 2);
        assert!(kernel4.contains(&"v0:1 v1:1 v0:1 v1:1".to_string()));
        assert!(kernel4.contains(&"v1:1 v0:1 v1:1 v0:1".to_string()));
    }

    #[test]
    fn ball_budget() {
        let c = ctx(&[], &[3, 3]);
        assert_eq!(enumerate_ball(&c, 6, Side::Right, 10).unwrap_err(), Error::BudgetExceeded(10));
    }

    #[test]
    fn random_equivalents_are_equivalent() {
        use rand::SeedableRng;
        let c = ctx(&[(0, 1)], &[3, 2, 2]);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let x = crate::kernels::random_word(&mut rng, &c, 4);
            let y = random_equivalent(&mut rng, &x, 4);
            assert_eq!(x.normalize(), y.normalize());
            if y.len() <= 7 {
                assert_eq!(bfs_equal(&x, &y, DEFAULT_BFS_LIMIT).unwrap(), BfsVerdict::Equal);
            }
        }
    }

    #[test]
    fn exhaustive_agreement_small() {
        let c = ctx(&[(0, 1)], &[2, 3]);
        let a = exhaustive_agreement(&c, 4).unwrap();
        assert!(a.passed(), "{:?}", a.violations);
        assert_eq!(a.words, 1 + 3 + 9 + 27 + 81);
        assert_eq!(a.classes, 6);
        let free = ctx(&[], &[2, 2]);
        let a = exhaustive_agreement(&free, 3).unwrap();
        assert!(a.passed());
        assert_eq!(a.classes, 1 + 2 + 2 + 2);
    }

    #[test]
    fn all_words_counts() {
        let c = ctx(&[], &[2, 3]);
        assert_eq!(all_words(&c, 2).unwrap().len(), 1 + 3 + 9);
        let t = ctx(&[], &[1]);
        assert_eq!(all_words(&t, 4).unwrap().len(), 1);
    }
}
