//! Maps between graph products induced by per-vertex set maps.
//!
//! Given set maps `f_i: G_i → G'_{ψ(i)}`, a word is read left to right while
//! the running product of the vertex-`i` syllables seen so far is tracked in
//! `G_i`. A syllable `s` on vertex `i` is replaced by
//!
//! ```text
//! f_i(prefix)⁻¹ · f_i(prefix · s)
//! ```
//!
//! on vertex `ψ(i)`, and dropped when that element is the identity. On the
//! kernel of the projection to the direct product this is a homomorphism; on
//! the whole graph product it is only a set map.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graphs::{GraphExtension, InjectiveSimplicialMap};
use crate::groups::{GroupElem, SetMap};
use crate::kernels::{in_kernel, in_kernel_extension, random_word, sample_kernel_extension_with, sample_kernel_with};
use crate::oracle::random_equivalent;
use crate::report::Report;
use crate::words::{Context, Syllable, Word};

/// Longest random prefix drawn by the verification samplers.
pub const SAMPLE_MAX_LEN: usize = 8;

/// Per-vertex set maps from one context to another along an injective
/// simplicial map of the underlying graphs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetMapFamily {
    source: Arc<Context>,
    target: Arc<Context>,
    psi: InjectiveSimplicialMap,
    maps: Vec<SetMap>,
}

impl SetMapFamily {
    pub fn new(
        source: Arc<Context>,
        target: Arc<Context>,
        psi: InjectiveSimplicialMap,
        maps: Vec<SetMap>,
    ) -> Result<Self> {
        if psi.source() != source.graph() || psi.target() != target.graph() {
            return Err(Error::Precondition(
                "simplicial map does not run between the context graphs".into(),
            ));
        }
        if maps.len() != source.vertex_count() {
            return Err(Error::VertexCountMismatch(maps.len(), source.vertex_count()));
        }
        for (i, f) in maps.iter().enumerate() {
            if **f.domain() != *source.group(i) {
                return Err(Error::DomainMismatch(format!("map {i} has the wrong domain")));
            }
            if **f.codomain() != *target.group(psi.apply(i)) {
                return Err(Error::DomainMismatch(format!("map {i} has the wrong codomain")));
            }
        }
        Ok(SetMapFamily { source, target, psi, maps })
    }

    /// A family over a graph shared by both contexts (ψ is the identity).
    pub fn on_shared_graph(source: Arc<Context>, target: Arc<Context>, maps: Vec<SetMap>) -> Result<Self> {
        let psi = InjectiveSimplicialMap::validate(
            (0..source.vertex_count()).collect(),
            source.graph().clone(),
            target.graph().clone(),
        )?;
        if source.graph() != target.graph() {
            return Err(Error::Precondition("contexts do not share a graph".into()));
        }
        Self::new(source, target, psi, maps)
    }

    pub fn identity(ctx: Arc<Context>) -> Self {
        let maps = ctx.groups().iter().map(|g| SetMap::identity(g.clone())).collect();
        let psi = InjectiveSimplicialMap::identity(ctx.graph().clone());
        SetMapFamily { source: ctx.clone(), target: ctx, psi, maps }
    }

    pub fn source(&self) -> &Arc<Context> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Context> {
        &self.target
    }

    pub fn psi(&self) -> &InjectiveSimplicialMap {
        &self.psi
    }

    pub fn maps(&self) -> &[SetMap] {
        &self.maps
    }

    /// `self` followed by `then`, vertex by vertex: `g_{ψ(i)} ∘ f_i`.
    pub fn then(&self, then: &SetMapFamily) -> Result<SetMapFamily> {
        if *self.target != *then.source {
            return Err(Error::Precondition("families do not compose".into()));
        }
        let psi = self.psi.then(&then.psi)?;
        let maps = self
            .maps
            .iter()
            .enumerate()
            .map(|(i, f)| SetMap::compose(f.clone(), then.maps[self.psi.apply(i)].clone()))
            .collect::<Result<Vec<_>>>()?;
        SetMapFamily::new(self.source.clone(), then.target.clone(), psi, maps)
    }

    /// The family of inverse set maps. ψ must be a bijection whose inverse is
    /// simplicial, and every map a bijection.
    pub fn inverse(&self) -> Result<SetMapFamily> {
        let m = self.target.vertex_count();
        if m != self.source.vertex_count() {
            return Err(Error::NotInvertible("ψ is not a bijection".into()));
        }
        let mut back = vec![0; m];
        for i in 0..m {
            back[self.psi.apply(i)] = i;
        }
        let psi = InjectiveSimplicialMap::validate(back.clone(), self.target.graph().clone(), self.source.graph().clone())?;
        let maps = back.iter().map(|&i| self.maps[i].inverse()).collect::<Result<Vec<_>>>()?;
        SetMapFamily::new(self.target.clone(), self.source.clone(), psi, maps)
    }

    /// `Some(true)` when every map is known to be injective.
    pub fn injective(&self) -> Option<bool> {
        let mut all = Some(true);
        for f in &self.maps {
            match f.known_injective() {
                Some(false) => return Some(false),
                None => all = None,
                Some(true) => {}
            }
        }
        all
    }

    pub fn preserves_identity(&self) -> bool {
        self.maps.iter().all(SetMap::preserves_identity)
    }

    /// The family of based maps `x ↦ f_i(e)⁻¹·f_i(x)`. It induces the same
    /// map on the kernel and fixes identities.
    pub fn based(&self) -> SetMapFamily {
        SetMapFamily { maps: self.maps.iter().map(SetMap::based).collect(), ..self.clone() }
    }

    fn require_source(&self, w: &Word) -> Result<()> {
        if Arc::ptr_eq(w.context(), &self.source) || **w.context() == *self.source {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }
}

/// Image of each input syllable: `Some` for an emitted syllable, `None` where
/// the prefix formula yields the identity.
pub fn phi_trace(w: &Word, family: &SetMapFamily) -> Result<Vec<Option<Syllable>>> {
    family.require_source(w)?;
    let src = family.source();
    let mut prefix: Vec<GroupElem> = src.groups().iter().map(|g| g.identity()).collect();
    let mut out = Vec::with_capacity(w.len());
    for s in w.syllables() {
        let i = s.vertex;
        let f = &family.maps[i];
        let before = prefix[i].clone();
        let after = src.group(i).op(&before, &s.elem);
        let target_vertex = family.psi.apply(i);
        let tgt = family.target.group(target_vertex);
        let delta = tgt.op(&tgt.invert(&f.image(&before)), &f.image(&after));
        prefix[i] = after;
        out.push((!delta.is_identity()).then_some(Syllable { vertex: target_vertex, elem: delta }));
    }
    Ok(out)
}

/// The word-level map: emitted syllables in order, not normalized.
pub fn phi_word(w: &Word, family: &SetMapFamily) -> Result<Word> {
    let syllables = phi_trace(w, family)?.into_iter().flatten().collect();
    Ok(Word::from_valid(family.target.clone(), syllables))
}

/// Canonical representative of the image in the target graph product.
pub fn phi_gamma(w: &Word, family: &SetMapFamily) -> Result<Word> {
    Ok(phi_word(w, family)?.normalize())
}

/// [`phi_gamma`] restricted to the kernel.
pub fn phi_kernel(w: &Word, family: &SetMapFamily) -> Result<Word> {
    family.require_source(w)?;
    if !in_kernel(w) {
        return Err(Error::Precondition("word is not in the kernel of the projection".into()));
    }
    phi_gamma(w, family)
}

/// [`phi_gamma`] restricted to the kernel of `G_Γ₁ → G_Γ̄₁`. The vertex map
/// must also be simplicial from `Γ̄₁` to `Γ̄₂`.
pub fn phi_kernel_extension(
    w: &Word,
    family: &SetMapFamily,
    source_ext: &GraphExtension,
    target_ext: &GraphExtension,
) -> Result<Word> {
    family.require_source(w)?;
    if source_ext.base() != family.source.graph() || target_ext.base() != family.target.graph() {
        return Err(Error::Precondition("extensions do not start at the family's graphs".into()));
    }
    family
        .psi
        .extend_to(source_ext.extended().clone(), target_ext.extended().clone())
        .map_err(|e| Error::Precondition(format!("vertex map does not extend to the extended graphs: {e}")))?;
    if !in_kernel_extension(w, source_ext)? {
        return Err(Error::Precondition("word is not in the extension kernel".into()));
    }
    phi_gamma(w, family)
}

/// Negative control: applies `f_i` to each syllable independently, ignoring
/// prefixes. Not well defined on the graph product unless every `f_i` is a
/// homomorphism.
pub fn phi_syllablewise(w: &Word, family: &SetMapFamily) -> Result<Word> {
    family.require_source(w)?;
    let syllables = w
        .syllables()
        .iter()
        .map(|s| Syllable { vertex: family.psi.apply(s.vertex), elem: family.maps[s.vertex].image(&s.elem) })
        .filter(|s| !s.elem.is_identity())
        .collect();
    Ok(Word::from_valid(family.target.clone(), syllables))
}

fn sample_kernel_element(rng: &mut ChaCha8Rng, ctx: &Arc<Context>) -> Word {
    let len = rng.gen_range(0..=SAMPLE_MAX_LEN);
    sample_kernel_with(rng, len, ctx)
}

/// Checks `map(uv) = map(u)·map(v)` on `n` seeded pairs of kernel elements.
pub fn check_homomorphism_of(
    suite: &str,
    ctx: &Arc<Context>,
    map: impl Fn(&Word) -> Result<Word>,
    seed: u64,
    n: usize,
) -> Report {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = Report::new(suite);
    for k in 0..n {
        let u = sample_kernel_element(&mut rng, ctx);
        let v = sample_kernel_element(&mut rng, ctx);
        report.samples += 1;
        let outcome = (|| -> Result<Option<String>> {
            let uv = u.mul(&v)?;
            let lhs = map(&uv)?.normalize();
            let rhs = map(&u)?.mul(&map(&v)?)?;
            Ok((lhs != rhs).then(|| format!("u={u} v={v}: Φ(uv)={lhs} but Φ(u)Φ(v)={rhs}")))
        })();
        match outcome {
            Ok(None) => {}
            Ok(Some(detail)) => report.fail(k, detail),
            Err(e) => report.fail(k, e.to_string()),
        }
    }
    report
}

pub fn check_homomorphism(family: &SetMapFamily, seed: u64, n: usize) -> Report {
    check_homomorphism_of("homomorphism", family.source(), |w| phi_kernel(w, family), seed, n)
}

/// Searches seeded pairs of arbitrary (not necessarily kernel) words for a
/// failure of multiplicativity.
pub fn find_non_homomorphic_pair(family: &SetMapFamily, seed: u64, n: usize) -> Result<Option<(Word, Word)>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ctx = family.source();
    for _ in 0..n {
        let lu = rng.gen_range(1..=4);
        let u = random_word(&mut rng, ctx, lu);
        let lv = rng.gen_range(1..=4);
        let v = random_word(&mut rng, ctx, lv);
        let lhs = phi_gamma(&u.mul(&v)?, family)?;
        let rhs = phi_gamma(&u, family)?.mul(&phi_gamma(&v, family)?)?;
        if lhs != rhs {
            return Ok(Some((u, v)));
        }
    }
    Ok(None)
}

/// Checks `Φ_{G∘F} = Φ_G ∘ Φ_F` and `Φ_id = id` on seeded kernel samples.
pub fn check_functoriality(first: &SetMapFamily, second: &SetMapFamily, seed: u64, n: usize) -> Result<Report> {
    let composite = first.then(second)?;
    let identity = SetMapFamily::identity(first.source().clone());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = Report::new("functoriality");
    for k in 0..n {
        let w = sample_kernel_element(&mut rng, first.source());
        report.samples += 1;
        let direct = phi_kernel(&w, &composite)?;
        let stepwise = phi_kernel(&phi_kernel(&w, first)?, second)?;
        if direct != stepwise {
            report.fail(k, format!("w={w}: Φ_(G∘F)(w)={direct} but Φ_G(Φ_F(w))={stepwise}"));
        }
        let id_image = phi_kernel(&w, &identity)?;
        if id_image != w.normalize() {
            report.fail(k, format!("w={w}: identity family gave {id_image}"));
        }
    }
    Ok(report)
}

/// Checks that injective families preserve normal length and distance on
/// kernel samples. Families not known to be injective are refused.
pub fn check_isometry(family: &SetMapFamily, seed: u64, n: usize) -> Result<Report> {
    if family.injective() != Some(true) {
        return Err(Error::NonInjectiveFamily);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = Report::new("isometry");
    for k in 0..n {
        let u = sample_kernel_element(&mut rng, family.source());
        let v = sample_kernel_element(&mut rng, family.source());
        report.samples += 1;
        let (pu, pv) = (phi_kernel(&u, family)?, phi_kernel(&v, family)?);
        let (a, b) = (u.normal_length(), pu.normal_length());
        if a != b {
            report.fail(k, format!("w={u}: nl={a} but nl(Φ(w))={b}"));
        }
        let (d, dp) = (u.distance(&v)?, pu.distance(&pv)?);
        if d != dp {
            report.fail(k, format!("u={u} v={v}: d={d} but d(Φu,Φv)={dp}"));
        }
    }
    Ok(report)
}

/// Checks that equivalent words (related by random inverse elementary
/// moves) have the same image.
pub fn check_well_defined(family: &SetMapFamily, seed: u64, n: usize) -> Result<Report> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = Report::new("welldefined");
    for k in 0..n {
        let len = rng.gen_range(0..=SAMPLE_MAX_LEN);
        let w = random_word(&mut rng, family.source(), len);
        let steps = rng.gen_range(1..=6);
        let u = random_equivalent(&mut rng, &w, steps);
        report.samples += 1;
        let (a, b) = (phi_gamma(&w, family)?, phi_gamma(&u, family)?);
        if a != b {
            report.fail(k, format!("w={w} ~ u={u}: Φ(w)={a} but Φ(u)={b}"));
        }
    }
    Ok(report)
}

/// Checks `Φ_G ∘ Φ_F = id` on kernel samples of the source of `F`.
pub fn check_retraction(first: &SetMapFamily, second: &SetMapFamily, seed: u64, n: usize) -> Result<Report> {
    if **second.target() != **first.source() || **first.target() != **second.source() {
        return Err(Error::Precondition("families do not form a round trip".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = Report::new("retraction");
    for k in 0..n {
        let w = sample_kernel_element(&mut rng, first.source());
        report.samples += 1;
        let there = phi_kernel(&w, first)?;
        let back = phi_kernel(&there.reinterpret(second.source().clone())?, second)?;
        if back.reinterpret(first.source().clone())? != w.normalize() {
            report.fail(k, format!("w={w}: Φ(w)={there}, Ψ(Φ(w))={back}"));
        }
    }
    Ok(report)
}

/// Checks that images of extension-kernel samples land in the target
/// extension kernel and agree with the plain kernel map.
pub fn check_extension(
    family: &SetMapFamily,
    source_ext: &GraphExtension,
    target_ext: &GraphExtension,
    seed: u64,
    n: usize,
) -> Result<Report> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = Report::new("extension");
    for k in 0..n {
        let count = rng.gen_range(1..=3);
        let sample = sample_kernel_extension_with(&mut rng, count, family.source(), source_ext)?;
        let w = sample.word;
        report.samples += 1;
        let image = phi_kernel_extension(&w, family, source_ext, target_ext)?;
        if !in_kernel_extension(&image, target_ext)? {
            report.fail(k, format!("w={w}: image {image} is not in the target extension kernel"));
        }
        if image != phi_kernel(&w, family)? {
            report.fail(k, format!("w={w}: extension map disagrees with the kernel map"));
        }
    }
    Ok(report)
}
