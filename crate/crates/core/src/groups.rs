//! Vertex groups and set maps between them.
//!
//! Two kinds of group are supported: finite groups given by a multiplication
//! table over the indices `0..n` (index 0 is always the identity), and the
//! infinite cyclic group with exact integer elements. Set maps are arbitrary
//! functions between the underlying sets; nothing requires them to be
//! homomorphisms or to fix the identity.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// An element of a vertex group.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupElem {
    /// Index into a finite multiplication table.
    Finite(u32),
    /// Exponent of the generator of the infinite cyclic group.
    Integer(BigInt),
}

impl GroupElem {
    pub fn int(z: i64) -> Self {
        GroupElem::Integer(BigInt::from(z))
    }

    /// True for index 0 and for the integer 0.
    pub fn is_identity(&self) -> bool {
        match self {
            GroupElem::Finite(i) => *i == 0,
            GroupElem::Integer(z) => z.is_zero(),
        }
    }
}

/// Finite elements by index; integers by absolute value, negative first.
impl Ord for GroupElem {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (GroupElem::Finite(a), GroupElem::Finite(b)) => a.cmp(b),
            (GroupElem::Integer(a), GroupElem::Integer(b)) => a
                .abs()
                .cmp(&b.abs())
                .then_with(|| b.is_negative().cmp(&a.is_negative())),
            (GroupElem::Finite(_), GroupElem::Integer(_)) => Ordering::Less,
            (GroupElem::Integer(_), GroupElem::Finite(_)) => Ordering::Greater,
        }
    }
}

impl PartialOrd for GroupElem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for GroupElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElem::Finite(i) => write!(f, "{i}"),
            GroupElem::Integer(z) => write!(f, "{z}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Repr {
    Table { order: u32, table: Vec<u32>, inverse: Vec<u32> },
    InfiniteCyclic,
}

/// A vertex group. Immutable once constructed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Group {
    repr: Repr,
}

impl Group {
    /// Builds a finite group from its multiplication table, `rows[a][b] = a*b`.
    ///
    /// Index 0 must be the identity. Closure, associativity, identity laws and
    /// two-sided inverses are checked exhaustively, in that order.
    pub fn from_table(rows: &[Vec<u32>]) -> Result<Group> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::ZeroOrder);
        }
        if n > u32::MAX as usize {
            return Err(Error::InvalidTable("table too large".into()));
        }
        let order = n as u32;
        let mut table = Vec::with_capacity(n * n);
        for (a, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidTable(format!(
                    "row {a} has length {}, expected {n}",
                    row.len()
                )));
            }
            for (b, &c) in row.iter().enumerate() {
                if c >= order {
                    return Err(Error::InvalidTable(format!(
                        "entry {a}*{b} = {c} is outside 0..{order}"
                    )));
                }
                table.push(c);
            }
        }
        let at = |a: u32, b: u32| table[a as usize * n + b as usize];
        for a in 0..order {
            for b in 0..order {
                let ab = at(a, b);
                for c in 0..order {
                    if at(ab, c) != at(a, at(b, c)) {
                        return Err(Error::NonAssociative { a, b, c });
                    }
                }
            }
        }
        for a in 0..order {
            if at(0, a) != a || at(a, 0) != a {
                return Err(Error::InvalidTable(format!(
                    "index 0 is not a two-sided identity for element {a}"
                )));
            }
        }
        let mut inverse = Vec::with_capacity(n);
        for a in 0..order {
            match (0..order).find(|&b| at(a, b) == 0) {
                Some(b) if at(b, a) == 0 => inverse.push(b),
                _ => {
                    return Err(Error::InvalidTable(format!(
                        "element {a} has no two-sided inverse"
                    )))
                }
            }
        }
        Ok(Group { repr: Repr::Table { order, table, inverse } })
    }

    /// The cyclic group of order `n` with element `k` standing for `k mod n`.
    pub fn cyclic(n: u32) -> Result<Group> {
        if n == 0 {
            return Err(Error::ZeroOrder);
        }
        let rows: Vec<Vec<u32>> = (0..n)
            .map(|a| (0..n).map(|b| ((a as u64 + b as u64) % n as u64) as u32).collect())
            .collect();
        Group::from_table(&rows)
    }

    pub fn infinite_cyclic() -> Group {
        Group { repr: Repr::InfiniteCyclic }
    }

    /// `None` for the infinite cyclic group.
    pub fn order(&self) -> Option<u32> {
        match &self.repr {
            Repr::Table { order, .. } => Some(*order),
            Repr::InfiniteCyclic => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.order().is_some()
    }

    pub fn identity(&self) -> GroupElem {
        match self.repr {
            Repr::Table { .. } => GroupElem::Finite(0),
            Repr::InfiniteCyclic => GroupElem::Integer(BigInt::zero()),
        }
    }

    pub fn check(&self, a: &GroupElem) -> Result<()> {
        match (&self.repr, a) {
            (Repr::Table { order, .. }, GroupElem::Finite(i)) => {
                if i < order {
                    Ok(())
                } else {
                    Err(Error::ElementOutOfRange { index: *i as u64, order: *order })
                }
            }
            (Repr::InfiniteCyclic, GroupElem::Integer(_)) => Ok(()),
            (Repr::Table { .. }, e) => Err(Error::ElementKind {
                elem: e.to_string(),
                expected: "table index",
            }),
            (Repr::InfiniteCyclic, e) => Err(Error::ElementKind {
                elem: e.to_string(),
                expected: "integer",
            }),
        }
    }

    pub fn contains(&self, a: &GroupElem) -> bool {
        self.check(a).is_ok()
    }

    /// The group law, with range checks on both arguments.
    pub fn mul(&self, a: &GroupElem, b: &GroupElem) -> Result<GroupElem> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.op(a, b))
    }

    pub fn inv(&self, a: &GroupElem) -> Result<GroupElem> {
        self.check(a)?;
        Ok(self.invert(a))
    }

    /// Unchecked group law; callers guarantee membership.
    pub(crate) fn op(&self, a: &GroupElem, b: &GroupElem) -> GroupElem {
        match (&self.repr, a, b) {
            (Repr::Table { order, table, .. }, GroupElem::Finite(x), GroupElem::Finite(y)) => {
                GroupElem::Finite(table[*x as usize * *order as usize + *y as usize])
            }
            (Repr::InfiniteCyclic, GroupElem::Integer(x), GroupElem::Integer(y)) => {
                GroupElem::Integer(x + y)
            }
            _ => unreachable!("element kind does not match group"),
        }
    }

    pub(crate) fn invert(&self, a: &GroupElem) -> GroupElem {
        match (&self.repr, a) {
            (Repr::Table { inverse, .. }, GroupElem::Finite(x)) => {
                GroupElem::Finite(inverse[*x as usize])
            }
            (Repr::InfiniteCyclic, GroupElem::Integer(x)) => GroupElem::Integer(-x),
            _ => unreachable!("element kind does not match group"),
        }
    }

    /// All elements in index order, identity first. `None` when infinite.
    pub fn elements(&self) -> Option<Vec<GroupElem>> {
        self.order().map(|n| (0..n).map(GroupElem::Finite).collect())
    }

    /// The non-identity elements, i.e. this group's share of the syllable alphabet.
    pub fn nontrivial_elements(&self) -> Option<Vec<GroupElem>> {
        self.order().map(|n| (1..n).map(GroupElem::Finite).collect())
    }

    /// The table as rows, for serialization. `None` when infinite.
    pub fn table_rows(&self) -> Option<Vec<Vec<u32>>> {
        match &self.repr {
            Repr::Table { order, table, .. } => {
                Some(table.chunks(*order as usize).map(|r| r.to_vec()).collect())
            }
            Repr::InfiniteCyclic => None,
        }
    }
}

/// How a [`SetMap`] computes its images.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SetMapKind {
    /// Explicit image of every element of a finite domain, in index order.
    Table(Vec<GroupElem>),
    /// Infinite cyclic group onto a finite group of order `n`: `z ↦ z mod n`.
    ModReduction(u32),
    Identity,
    /// Apply the first map, then the second.
    Compose(Box<SetMap>, Box<SetMap>),
    /// `x ↦ f(e)⁻¹·f(x)`: the inner map moved so that it fixes the identity.
    Based(Box<SetMap>),
}

/// An arbitrary function between the underlying sets of two groups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetMap {
    domain: Arc<Group>,
    codomain: Arc<Group>,
    kind: SetMapKind,
}

impl SetMap {
    pub fn table(domain: Arc<Group>, codomain: Arc<Group>, images: Vec<GroupElem>) -> Result<SetMap> {
        let n = domain
            .order()
            .ok_or_else(|| Error::DomainMismatch("table maps need a finite domain".into()))?;
        if images.len() != n as usize {
            return Err(Error::DomainMismatch(format!(
                "table has {} images, domain has order {n}",
                images.len()
            )));
        }
        for img in &images {
            codomain.check(img)?;
        }
        Ok(SetMap { domain, codomain, kind: SetMapKind::Table(images) })
    }

    /// Reduction of the infinite cyclic group modulo the order of `codomain`.
    pub fn mod_reduction(codomain: Arc<Group>) -> Result<SetMap> {
        let n = codomain.order().ok_or_else(|| {
            Error::DomainMismatch("mod reduction needs a finite codomain".into())
        })?;
        Ok(SetMap {
            domain: Arc::new(Group::infinite_cyclic()),
            codomain,
            kind: SetMapKind::ModReduction(n),
        })
    }

    pub fn identity(group: Arc<Group>) -> SetMap {
        SetMap { domain: group.clone(), codomain: group, kind: SetMapKind::Identity }
    }

    /// `first` followed by `then`.
    pub fn compose(first: SetMap, then: SetMap) -> Result<SetMap> {
        if *first.codomain != *then.domain {
            return Err(Error::DomainMismatch(
                "codomain of the first map is not the domain of the second".into(),
            ));
        }
        Ok(SetMap {
            domain: first.domain.clone(),
            codomain: then.codomain.clone(),
            kind: SetMapKind::Compose(Box::new(first), Box::new(then)),
        })
    }

    pub fn domain(&self) -> &Arc<Group> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<Group> {
        &self.codomain
    }

    pub fn kind(&self) -> &SetMapKind {
        &self.kind
    }

    pub fn apply(&self, a: &GroupElem) -> Result<GroupElem> {
        self.domain
            .check(a)
            .map_err(|e| Error::DomainMismatch(e.to_string()))?;
        Ok(self.image(a))
    }

    pub(crate) fn image(&self, a: &GroupElem) -> GroupElem {
        match (&self.kind, a) {
            (SetMapKind::Table(images), GroupElem::Finite(i)) => images[*i as usize].clone(),
            (SetMapKind::ModReduction(n), GroupElem::Integer(z)) => {
                let r = z.mod_floor(&BigInt::from(*n));
                GroupElem::Finite(r.to_u32().expect("residue fits in u32"))
            }
            (SetMapKind::Identity, _) => a.clone(),
            (SetMapKind::Compose(f, g), _) => g.image(&f.image(a)),
            (SetMapKind::Based(f), _) => {
                let shift = self.codomain.invert(&f.image(&self.domain.identity()));
                self.codomain.op(&shift, &f.image(a))
            }
            _ => unreachable!("element kind does not match set map domain"),
        }
    }

    /// Injectivity by exhaustive scan of a finite domain.
    pub fn is_injective(&self) -> Result<bool> {
        let elems = self.domain.elements().ok_or(Error::UndecidableInjectivity)?;
        let mut seen = std::collections::HashSet::with_capacity(elems.len());
        Ok(elems.iter().all(|a| seen.insert(self.image(a))))
    }

    /// Injectivity where it is known without a scan of an infinite domain:
    /// identities are injective, mod reductions never are.
    pub fn known_injective(&self) -> Option<bool> {
        if self.domain.is_finite() {
            return self.is_injective().ok();
        }
        match &self.kind {
            SetMapKind::Identity => Some(true),
            SetMapKind::ModReduction(_) => Some(false),
            SetMapKind::Compose(f, g) => match (f.known_injective(), g.known_injective()) {
                (Some(true), Some(true)) => Some(true),
                (Some(false), _) => Some(false),
                _ => None,
            },
            SetMapKind::Based(f) => f.known_injective(),
            SetMapKind::Table(_) => None,
        }
    }

    /// The map `x ↦ f(e)⁻¹·f(x)`, which fixes the identity. Maps that already
    /// fix it are returned unchanged.
    pub fn based(&self) -> SetMap {
        if self.preserves_identity() {
            return self.clone();
        }
        SetMap {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            kind: SetMapKind::Based(Box::new(self.clone())),
        }
    }

    /// Whether the map sends the identity to the identity.
    pub fn preserves_identity(&self) -> bool {
        self.image(&self.domain.identity()).is_identity()
    }

    /// The inverse set map of a bijection. Identities invert to themselves;
    /// otherwise domain and codomain must be finite.
    pub fn inverse(&self) -> Result<SetMap> {
        if let SetMapKind::Identity = self.kind {
            return Ok(self.clone());
        }
        let (Some(n), Some(m)) = (self.domain.order(), self.codomain.order()) else {
            return Err(Error::NotInvertible("infinite domain or codomain".into()));
        };
        if n != m || !self.is_injective()? {
            return Err(Error::NotInvertible("map is not a bijection".into()));
        }
        let mut images = vec![GroupElem::Finite(0); n as usize];
        for a in 0..n {
            let GroupElem::Finite(b) = self.image(&GroupElem::Finite(a)) else {
                unreachable!("finite codomain")
            };
            images[b as usize] = GroupElem::Finite(a);
        }
        SetMap::table(self.codomain.clone(), self.domain.clone(), images)
    }

    /// Every set map between two finite groups, as tables, in lexicographic
    /// order of the image tuple.
    pub fn enumerate_all(domain: &Arc<Group>, codomain: &Arc<Group>) -> Result<Vec<SetMap>> {
        let (Some(n), Some(m)) = (domain.order(), codomain.order()) else {
            return Err(Error::InfiniteGroup);
        };
        let total = (m as usize).pow(n);
        let mut out = Vec::with_capacity(total);
        for mut code in 0..total {
            let mut images = vec![GroupElem::Finite(0); n as usize];
            for slot in images.iter_mut().rev() {
                *slot = GroupElem::Finite((code % m as usize) as u32);
                code /= m as usize;
            }
            out.push(SetMap::table(domain.clone(), codomain.clone(), images)?);
        }
        Ok(out)
    }
}
