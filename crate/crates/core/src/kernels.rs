//! The projection onto the direct product, kernel membership, and seeded
//! samplers of kernel elements.

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graphs::GraphExtension;
use crate::groups::{Group, GroupElem};
use crate::words::{canonical_form, Context, Syllable, Word};

/// One coordinate per vertex of the graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DirectProductElem(pub Vec<GroupElem>);

impl DirectProductElem {
    pub fn identity(ctx: &Context) -> Self {
        DirectProductElem(ctx.groups().iter().map(|g| g.identity()).collect())
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(GroupElem::is_identity)
    }

    /// Coordinate-wise product.
    pub fn mul(&self, other: &Self, ctx: &Context) -> Self {
        DirectProductElem(
            self.0
                .iter()
                .zip(&other.0)
                .enumerate()
                .map(|(i, (a, b))| ctx.group(i).op(a, b))
                .collect(),
        )
    }
}

impl fmt::Display for DirectProductElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, g) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}

/// Coordinate `i` is the ordered product of the vertex-`i` syllables.
pub fn project(w: &Word) -> DirectProductElem {
    let ctx = w.context();
    let mut coords = DirectProductElem::identity(ctx);
    for s in w.syllables() {
        coords.0[s.vertex] = ctx.group(s.vertex).op(&coords.0[s.vertex], &s.elem);
    }
    coords
}

pub fn in_kernel(w: &Word) -> bool {
    project(w).is_identity()
}

/// Whether `w` dies in the graph product over the extended graph.
pub fn in_kernel_extension(w: &Word, ext: &GraphExtension) -> Result<bool> {
    if w.context().graph() != ext.base() {
        return Err(Error::ContextMismatch);
    }
    let over = w.context().with_graph(ext.extended().clone())?;
    Ok(canonical_form(&over, w.syllables().to_vec()).is_empty())
}

/// A uniformly random non-identity element, or `None` for a trivial group.
/// Integers are drawn from `±1..=±3`.
pub fn random_nontrivial<R: Rng + ?Sized>(rng: &mut R, group: &Group) -> Option<GroupElem> {
    match group.order() {
        Some(1) => None,
        Some(n) => Some(GroupElem::Finite(rng.gen_range(1..n))),
        None => {
            let z: i64 = rng.gen_range(1..=3);
            Some(GroupElem::int(if rng.gen_bool(0.5) { z } else { -z }))
        }
    }
}

/// A random word with exactly `len` syllables, each on a vertex with a
/// nontrivial group. Empty if every vertex group is trivial.
pub fn random_word<R: Rng + ?Sized>(rng: &mut R, ctx: &Arc<Context>, len: usize) -> Word {
    let live: Vec<usize> = (0..ctx.vertex_count()).filter(|&v| ctx.group(v).order() != Some(1)).collect();
    if live.is_empty() {
        return Word::empty(ctx.clone());
    }
    let syllables = (0..len)
        .map(|_| {
            let v = live[rng.gen_range(0..live.len())];
            let elem = random_nontrivial(rng, ctx.group(v)).expect("nontrivial group");
            Syllable { vertex: v, elem }
        })
        .collect();
    Word::from_valid(ctx.clone(), syllables)
}

/// Appends one closing syllable per non-identity coordinate, ascending.
pub fn close_to_kernel(w: Word) -> Word {
    let coords = project(&w);
    let ctx = w.context().clone();
    let mut syllables = w.into_syllables();
    for (v, c) in coords.0.iter().enumerate() {
        if !c.is_identity() {
            syllables.push(Syllable { vertex: v, elem: ctx.group(v).invert(c) });
        }
    }
    Word::from_valid(ctx, syllables)
}

/// A random kernel element, built from `target_length` random syllables
/// followed by the closing syllables. The result is not normalized.
pub fn sample_kernel_with<R: Rng + ?Sized>(rng: &mut R, target_length: usize, ctx: &Arc<Context>) -> Word {
    close_to_kernel(random_word(rng, ctx, target_length))
}

pub fn sample_kernel(seed: u64, target_length: usize, ctx: &Arc<Context>) -> Word {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_kernel_with(&mut rng, target_length, ctx)
}

/// Output of [`sample_kernel_extension`].
#[derive(Clone, Debug)]
pub struct ExtensionSample {
    pub word: Word,
    /// Set when conjugates were requested but the extension adds no edges.
    pub no_added_edges: bool,
}

/// A normalized product of `count` random conjugates `u·[g_i, g_j]·u⁻¹`
/// over edges `{i, j}` added by the extension.
pub fn sample_kernel_extension_with<R: Rng + ?Sized>(
    rng: &mut R,
    count: usize,
    ctx: &Arc<Context>,
    ext: &GraphExtension,
) -> Result<ExtensionSample> {
    if ctx.graph() != ext.base() {
        return Err(Error::ContextMismatch);
    }
    let added: Vec<(usize, usize)> = ext
        .added_edges()
        .into_iter()
        .filter(|&(i, j)| ctx.group(i).order() != Some(1) && ctx.group(j).order() != Some(1))
        .collect();
    if added.is_empty() {
        return Ok(ExtensionSample { word: Word::empty(ctx.clone()), no_added_edges: count > 0 });
    }
    let mut raw = Vec::new();
    for _ in 0..count {
        let (i, j) = added[rng.gen_range(0..added.len())];
        let gi = random_nontrivial(rng, ctx.group(i)).expect("nontrivial");
        let gj = random_nontrivial(rng, ctx.group(j)).expect("nontrivial");
        let conj_len = rng.gen_range(0..=3);
        let u = random_word(rng, ctx, conj_len);
        raw.extend_from_slice(u.syllables());
        raw.push(Syllable { vertex: i, elem: gi.clone() });
        raw.push(Syllable { vertex: j, elem: gj.clone() });
        raw.push(Syllable { vertex: i, elem: ctx.group(i).invert(&gi) });
        raw.push(Syllable { vertex: j, elem: ctx.group(j).invert(&gj) });
        raw.extend(u.raw_inverse());
    }
    let word = Word::from_valid(ctx.clone(), canonical_form(ctx, raw));
    Ok(ExtensionSample { word, no_added_edges: false })
}

pub fn sample_kernel_extension(
    seed: u64,
    count: usize,
    ctx: &Arc<Context>,
    ext: &GraphExtension,
) -> Result<ExtensionSample> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_kernel_extension_with(&mut rng, count, ctx, ext)
}
