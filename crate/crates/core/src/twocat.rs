//! Multiplicity-level presentations of finitary 2-categories.
//!
//! A presentation records finitely many objects, finitely many
//! indecomposable 1-morphisms (one of which per object is the identity), and
//! an N-linear composition table on indecomposables. General 1-morphisms are
//! formal multisets ([`MorSum`]); composition extends bilinearly, and a pair
//! absent from the table composes to zero.
//!
//! Composition is written `compose(left, right)` and means "apply `right`
//! first, then `left`"; it requires `src(left) == tgt(right)`.

use alloc::borrow::ToOwned;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::borrow::Borrow;
use core::fmt;

/// Name of an object of a presentation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ObjectId(String);

impl ObjectId {
    pub fn new(name: impl Into<String>) -> Self {
        ObjectId(name.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl Borrow<str> for ObjectId {
    fn borrow(&self) -> &str {
        &self.0
    }
}

impl From<&str> for ObjectId {
    fn from(s: &str) -> Self {
        ObjectId(s.to_owned())
    }
}

impl fmt::Display for ObjectId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Name of an indecomposable 1-morphism.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MorId(String);

impl MorId {
    pub fn new(id: impl Into<String>) -> Self {
        MorId(id.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl Borrow<str> for MorId {
    fn borrow(&self) -> &str {
        &self.0
    }
}

impl From<&str> for MorId {
    fn from(s: &str) -> Self {
        MorId(s.to_owned())
    }
}

impl fmt::Display for MorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// An indecomposable 1-morphism `src -> tgt`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneMor {
    pub id: MorId,
    pub src: ObjectId,
    pub tgt: ObjectId,
    pub is_identity: bool,
}

/// One row of the composition table: `compose(left, right) = result`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompEntry {
    pub left: MorId,
    pub right: MorId,
    pub result: BTreeMap<MorId, u64>,
}

/// Errors from operating on a presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TwoCatError {
    UnknownObject { name: String },
    UnknownMorphism { id: String },
    TypeMismatch { detail: String },
    Overflow,
}

impl fmt::Display for TwoCatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TwoCatError::UnknownObject { name } => write!(f, "UnknownObject: no object named '{name}'"),
            TwoCatError::UnknownMorphism { id } => {
                write!(f, "UnknownMorphism: no 1-morphism named '{id}'")
            }
            TwoCatError::TypeMismatch { detail } => write!(f, "TypeMismatch: {detail}"),
            TwoCatError::Overflow => write!(f, "Overflow: multiplicity exceeds the machine word"),
        }
    }
}

impl core::error::Error for TwoCatError {}

/// A formal N-multiset of indecomposable 1-morphisms sharing a type.
///
/// The zero 1-morphism of any type is the empty multiset; stored
/// multiplicities are always positive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorSum {
    src: ObjectId,
    tgt: ObjectId,
    terms: BTreeMap<MorId, u64>,
}

impl MorSum {
    /// The zero 1-morphism `src -> tgt`.
    pub fn zero(src: ObjectId, tgt: ObjectId) -> Self {
        MorSum {
            src,
            tgt,
            terms: BTreeMap::new(),
        }
    }

    pub fn src(&self) -> &ObjectId {
        &self.src
    }

    pub fn tgt(&self) -> &ObjectId {
        &self.tgt
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Multiplicity of one indecomposable (zero when absent).
    pub fn multiplicity(&self, id: &str) -> u64 {
        self.terms.get(id).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MorId, u64)> {
        self.terms.iter().map(|(k, v)| (k, *v))
    }

    pub fn total_multiplicity(&self) -> u64 {
        self.terms.values().sum()
    }

    fn add_term(&mut self, id: MorId, mult: u64) -> Result<(), TwoCatError> {
        if mult == 0 {
            return Ok(());
        }
        let slot = self.terms.entry(id).or_insert(0);
        *slot = slot.checked_add(mult).ok_or(TwoCatError::Overflow)?;
        Ok(())
    }

    /// Multiset sum; both summands must share the type.
    pub fn add(&self, other: &MorSum) -> Result<MorSum, TwoCatError> {
        if self.src != other.src || self.tgt != other.tgt {
            return Err(TwoCatError::TypeMismatch {
                detail: format!(
                    "cannot add ({} -> {}) and ({} -> {})",
                    self.src, self.tgt, other.src, other.tgt
                ),
            });
        }
        let mut out = self.clone();
        for (id, mult) in other.terms() {
            out.add_term(id.clone(), mult)?;
        }
        Ok(out)
    }

    /// Multiset difference; `None` if types differ or any multiplicity would
    /// go negative.
    pub fn checked_sub(&self, other: &MorSum) -> Option<MorSum> {
        if self.src != other.src || self.tgt != other.tgt {
            return None;
        }
        let mut out = self.clone();
        for (id, mult) in other.terms() {
            let have = out.terms.get_mut(id.as_str())?;
            if *have < mult {
                return None;
            }
            *have -= mult;
            if *have == 0 {
                out.terms.remove(id.as_str());
            }
        }
        Some(out)
    }

    /// Whether every term of `other` occurs in `self` with at least the same
    /// multiplicity (and the types agree).
    pub fn contains(&self, other: &MorSum) -> bool {
        self.checked_sub(other).is_some()
    }
}

impl fmt::Display for MorSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (id, mult) in &self.terms {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            if *mult == 1 {
                write!(f, "{id}")?;
            } else {
                write!(f, "{mult}*{id}")?;
            }
        }
        Ok(())
    }
}

/// One violated invariant found by [`Presentation::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    DuplicateObject { name: String },
    DuplicateMorphism { id: String },
    UnknownObjectRef { mor: String, object: String },
    IdentityNotEndo { id: String },
    MissingIdentity { object: String },
    MultipleIdentities { object: String },
    UnknownCompositionRef { left: String, right: String, id: String },
    NonComposablePair { left: String, right: String },
    ResultTypeMismatch { left: String, right: String, term: String },
    DuplicateCompositionEntry { left: String, right: String },
    IdentityLawViolated { identity: String, mor: String, got: String },
    AssociativityViolated { f: String, g: String, h: String },
    OverflowDuringCheck { context: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DuplicateObject { name } => write!(f, "duplicate object '{name}'"),
            Violation::DuplicateMorphism { id } => write!(f, "duplicate 1-morphism '{id}'"),
            Violation::UnknownObjectRef { mor, object } => {
                write!(f, "1-morphism '{mor}' references unknown object '{object}'")
            }
            Violation::IdentityNotEndo { id } => {
                write!(f, "identity 1-morphism '{id}' has distinct source and target")
            }
            Violation::MissingIdentity { object } => {
                write!(f, "object '{object}' has no identity 1-morphism")
            }
            Violation::MultipleIdentities { object } => {
                write!(f, "object '{object}' has more than one identity 1-morphism")
            }
            Violation::UnknownCompositionRef { left, right, id } => write!(
                f,
                "composition entry ({left}, {right}) references unknown 1-morphism '{id}'"
            ),
            Violation::NonComposablePair { left, right } => write!(
                f,
                "composition entry ({left}, {right}) pairs non-composable 1-morphisms"
            ),
            Violation::ResultTypeMismatch { left, right, term } => write!(
                f,
                "composition entry ({left}, {right}) lists term '{term}' of the wrong type"
            ),
            Violation::DuplicateCompositionEntry { left, right } => {
                write!(f, "composition entry ({left}, {right}) appears more than once")
            }
            Violation::IdentityLawViolated { identity, mor, got } => write!(
                f,
                "identity law broken: composing '{identity}' with '{mor}' gives {got}"
            ),
            Violation::AssociativityViolated { f: ff, g, h } => write!(
                f,
                "associativity broken on the triple ({ff}, {g}, {h})"
            ),
            Violation::OverflowDuringCheck { context } => {
                write!(f, "arithmetic overflow while checking {context}")
            }
        }
    }
}

/// Outcome of validating a presentation; empty means valid.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// A finitary 2-category presented by objects, indecomposable 1-morphisms
/// and an N-linear composition table.
///
/// Construction never fails: structural defects (duplicate ids, missing
/// identities, ill-typed table rows) are reported by [`Presentation::validate`]
/// rather than thrown, and the queries operate on the well-formed part of the
/// data (first occurrence wins on duplicates). Identity-law table rows may be
/// omitted; they are synthesized for every object with exactly one identity.
#[derive(Clone, Debug)]
pub struct Presentation {
    objects: Vec<ObjectId>,
    onemors: Vec<OneMor>,
    raw_comp: Vec<CompEntry>,
    /// Cooked table: left id -> right id -> result terms. Contains only
    /// entries whose references resolve, plus synthesized identity laws.
    comp: BTreeMap<MorId, BTreeMap<MorId, BTreeMap<MorId, u64>>>,
}

impl Presentation {
    pub fn new(objects: Vec<ObjectId>, onemors: Vec<OneMor>, composition: Vec<CompEntry>) -> Self {
        let mut pres = Presentation {
            objects,
            onemors,
            raw_comp: composition,
            comp: BTreeMap::new(),
        };
        pres.cook_table();
        pres
    }

    fn cook_table(&mut self) {
        let mut comp: BTreeMap<MorId, BTreeMap<MorId, BTreeMap<MorId, u64>>> = BTreeMap::new();
        for entry in &self.raw_comp {
            let (Some(left), Some(right)) = (self.morphism(entry.left.as_str()), self.morphism(entry.right.as_str()))
            else {
                continue;
            };
            if left.src != right.tgt {
                continue;
            }
            let well_typed = entry.result.iter().all(|(id, _)| {
                self.morphism(id.as_str())
                    .is_some_and(|m| m.src == right.src && m.tgt == left.tgt)
            });
            if !well_typed {
                continue;
            }
            let terms: BTreeMap<MorId, u64> = entry
                .result
                .iter()
                .filter(|(_, m)| **m > 0)
                .map(|(k, v)| (k.clone(), *v))
                .collect();
            comp.entry(entry.left.clone())
                .or_default()
                .entry(entry.right.clone())
                .or_insert(terms);
        }
        // Synthesize identity laws for every object with exactly one identity.
        for obj in &self.objects {
            let ids: Vec<&OneMor> = self
                .unique_morphisms()
                .filter(|m| m.is_identity && m.src == *obj && m.tgt == *obj)
                .collect();
            let [identity] = ids.as_slice() else { continue };
            let identity_id = identity.id.clone();
            for mor in self.unique_morphisms() {
                if mor.tgt == *obj {
                    comp.entry(identity_id.clone())
                        .or_default()
                        .entry(mor.id.clone())
                        .or_insert_with(|| BTreeMap::from([(mor.id.clone(), 1)]));
                }
                if mor.src == *obj {
                    comp.entry(mor.id.clone())
                        .or_default()
                        .entry(identity_id.clone())
                        .or_insert_with(|| BTreeMap::from([(mor.id.clone(), 1)]));
                }
            }
        }
        self.comp = comp;
    }

    pub fn objects(&self) -> &[ObjectId] {
        &self.objects
    }

    pub fn has_object(&self, name: &str) -> bool {
        self.objects.iter().any(|o| o.as_str() == name)
    }

    /// All 1-morphism records as given, duplicates included.
    pub fn raw_morphisms(&self) -> &[OneMor] {
        &self.onemors
    }

    /// The raw composition rows as given (no synthesized identity laws).
    pub fn raw_composition(&self) -> &[CompEntry] {
        &self.raw_comp
    }

    /// First 1-morphism with the given id, if any.
    pub fn morphism(&self, id: &str) -> Option<&OneMor> {
        self.onemors.iter().find(|m| m.id.as_str() == id)
    }

    /// Unique 1-morphisms (first occurrence wins), in lexicographic id order.
    pub fn unique_morphisms(&self) -> impl Iterator<Item = &OneMor> {
        let mut seen: Vec<&OneMor> = Vec::new();
        for m in &self.onemors {
            if !seen.iter().any(|s| s.id == m.id) {
                seen.push(m);
            }
        }
        seen.sort_by(|a, b| a.id.cmp(&b.id));
        seen.into_iter()
    }

    /// The identity 1-morphism of an object, when it is unambiguous.
    pub fn identity_of(&self, object: &str) -> Option<&OneMor> {
        let mut found = None;
        for m in self.unique_morphisms() {
            if m.is_identity && m.src.as_str() == object && m.tgt.as_str() == object {
                if found.is_some() {
                    return None;
                }
                found = Some(m);
            }
        }
        found
    }

    /// Indecomposable 1-morphisms from `src` to `tgt`, sorted by id.
    pub fn indecomposables_between(&self, src: &str, tgt: &str) -> Result<Vec<&OneMor>, TwoCatError> {
        if !self.has_object(src) {
            return Err(TwoCatError::UnknownObject { name: src.to_string() });
        }
        if !self.has_object(tgt) {
            return Err(TwoCatError::UnknownObject { name: tgt.to_string() });
        }
        Ok(self
            .unique_morphisms()
            .filter(|m| m.src.as_str() == src && m.tgt.as_str() == tgt)
            .collect())
    }

    /// Indecomposable 1-morphisms whose source is `src` (any target), sorted
    /// by id.
    pub fn indecomposables_from(&self, src: &str) -> Result<Vec<&OneMor>, TwoCatError> {
        if !self.has_object(src) {
            return Err(TwoCatError::UnknownObject { name: src.to_string() });
        }
        Ok(self
            .unique_morphisms()
            .filter(|m| m.src.as_str() == src)
            .collect())
    }

    /// The raw table row for `compose(left, right)`, if present (synthesized
    /// identity laws included). Absent means the composite is zero.
    pub fn table_row(&self, left: &str, right: &str) -> Option<&BTreeMap<MorId, u64>> {
        self.comp.get(left)?.get(right)
    }

    /// The zero 1-morphism between two existing objects.
    pub fn zero_sum(&self, src: &str, tgt: &str) -> Result<MorSum, TwoCatError> {
        if !self.has_object(src) {
            return Err(TwoCatError::UnknownObject { name: src.to_string() });
        }
        if !self.has_object(tgt) {
            return Err(TwoCatError::UnknownObject { name: tgt.to_string() });
        }
        Ok(MorSum::zero(ObjectId::new(src), ObjectId::new(tgt)))
    }

    /// The singleton sum `{id: 1}`.
    pub fn singleton(&self, id: &str) -> Result<MorSum, TwoCatError> {
        let mor = self.morphism(id).ok_or_else(|| TwoCatError::UnknownMorphism { id: id.to_string() })?;
        let mut sum = MorSum::zero(mor.src.clone(), mor.tgt.clone());
        sum.add_term(mor.id.clone(), 1)?;
        Ok(sum)
    }

    /// Builds a typed sum from `(id, multiplicity)` pairs, checking that each
    /// term is a known 1-morphism `src -> tgt`. Zero multiplicities are
    /// dropped.
    pub fn sum(&self, src: &str, tgt: &str, terms: &[(&str, u64)]) -> Result<MorSum, TwoCatError> {
        let mut out = self.zero_sum(src, tgt)?;
        for (id, mult) in terms {
            let mor = self
                .morphism(id)
                .ok_or_else(|| TwoCatError::UnknownMorphism { id: (*id).to_string() })?;
            if mor.src.as_str() != src || mor.tgt.as_str() != tgt {
                return Err(TwoCatError::TypeMismatch {
                    detail: format!(
                        "term '{id}' has type {} -> {}, expected {src} -> {tgt}",
                        mor.src, mor.tgt
                    ),
                });
            }
            out.add_term(mor.id.clone(), *mult)?;
        }
        Ok(out)
    }

    /// Bilinear composition: "apply `right` first, then `left`".
    ///
    /// Requires `src(left) == tgt(right)`; table rows absent for a pair of
    /// indecomposables contribute zero.
    pub fn compose(&self, left: &MorSum, right: &MorSum) -> Result<MorSum, TwoCatError> {
        if left.src() != right.tgt() {
            return Err(TwoCatError::TypeMismatch {
                detail: format!(
                    "compose needs src(left) == tgt(right); got ({} -> {}) after ({} -> {})",
                    left.src, left.tgt, right.src, right.tgt
                ),
            });
        }
        let mut out = MorSum::zero(right.src.clone(), left.tgt.clone());
        for (lf, lm) in left.terms() {
            for (rf, rm) in right.terms() {
                let Some(row) = self.table_row(lf.as_str(), rf.as_str()) else {
                    continue;
                };
                let pair_mult = lm.checked_mul(rm).ok_or(TwoCatError::Overflow)?;
                for (id, k) in row {
                    let contribution = pair_mult.checked_mul(*k).ok_or(TwoCatError::Overflow)?;
                    out.add_term(id.clone(), contribution)?;
                }
            }
        }
        Ok(out)
    }

    /// Whether `f` is nonzero, an endo-sum, and satisfies `f o f == f`.
    pub fn is_weakly_idempotent(&self, f: &MorSum) -> Result<bool, TwoCatError> {
        if f.src() != f.tgt() {
            return Err(TwoCatError::TypeMismatch {
                detail: format!("weak idempotency needs an endo-sum; got {} -> {}", f.src, f.tgt),
            });
        }
        if f.is_zero() {
            return Ok(false);
        }
        Ok(self.compose(f, f)? == *f)
    }

    /// Checks every presentation invariant and reports all violations:
    /// duplicate ids, dangling references, identity bookkeeping, ill-typed or
    /// duplicated table rows, identity laws, and associativity on all
    /// composable triples of indecomposables.
    pub fn validate(&self) -> ValidationReport {
        let mut v = Vec::new();

        let mut seen_objects = BTreeSet::new();
        for obj in &self.objects {
            if !seen_objects.insert(obj.clone()) {
                v.push(Violation::DuplicateObject { name: obj.to_string() });
            }
        }

        let mut seen_mors = BTreeSet::new();
        for m in &self.onemors {
            if !seen_mors.insert(m.id.clone()) {
                v.push(Violation::DuplicateMorphism { id: m.id.to_string() });
            }
            for obj in [&m.src, &m.tgt] {
                if !self.has_object(obj.as_str()) {
                    v.push(Violation::UnknownObjectRef {
                        mor: m.id.to_string(),
                        object: obj.to_string(),
                    });
                }
            }
            if m.is_identity && m.src != m.tgt {
                v.push(Violation::IdentityNotEndo { id: m.id.to_string() });
            }
        }

        for obj in seen_objects.iter() {
            let count = self
                .unique_morphisms()
                .filter(|m| m.is_identity && m.src == *obj && m.tgt == *obj)
                .count();
            match count {
                0 => v.push(Violation::MissingIdentity { object: obj.to_string() }),
                1 => {}
                _ => v.push(Violation::MultipleIdentities { object: obj.to_string() }),
            }
        }

        let mut seen_pairs = BTreeSet::new();
        for entry in &self.raw_comp {
            let left_mor = self.morphism(entry.left.as_str());
            let right_mor = self.morphism(entry.right.as_str());
            for (id, mor) in [(&entry.left, left_mor), (&entry.right, right_mor)] {
                if mor.is_none() {
                    v.push(Violation::UnknownCompositionRef {
                        left: entry.left.to_string(),
                        right: entry.right.to_string(),
                        id: id.to_string(),
                    });
                }
            }
            let (Some(left_mor), Some(right_mor)) = (left_mor, right_mor) else {
                continue;
            };
            if !seen_pairs.insert((entry.left.clone(), entry.right.clone())) {
                v.push(Violation::DuplicateCompositionEntry {
                    left: entry.left.to_string(),
                    right: entry.right.to_string(),
                });
            }
            if left_mor.src != right_mor.tgt {
                v.push(Violation::NonComposablePair {
                    left: entry.left.to_string(),
                    right: entry.right.to_string(),
                });
                continue;
            }
            for id in entry.result.keys() {
                let ok = self
                    .morphism(id.as_str())
                    .is_some_and(|m| m.src == right_mor.src && m.tgt == left_mor.tgt);
                if !ok {
                    v.push(Violation::ResultTypeMismatch {
                        left: entry.left.to_string(),
                        right: entry.right.to_string(),
                        term: id.to_string(),
                    });
                }
            }
        }

        self.check_identity_laws(&mut v);
        self.check_associativity(&mut v);

        ValidationReport { violations: v }
    }

    fn check_identity_laws(&self, v: &mut Vec<Violation>) {
        for obj in &self.objects {
            let Some(identity) = self.identity_of(obj.as_str()) else {
                continue;
            };
            let identity = identity.clone();
            for mor in self.unique_morphisms() {
                let single = match self.singleton(mor.id.as_str()) {
                    Ok(s) => s,
                    Err(_) => continue,
                };
                let id_single = self.singleton(identity.id.as_str()).expect("identity exists");
                if mor.tgt == *obj {
                    match self.compose(&id_single, &single) {
                        Ok(got) if got == single => {}
                        Ok(got) => v.push(Violation::IdentityLawViolated {
                            identity: identity.id.to_string(),
                            mor: mor.id.to_string(),
                            got: got.to_string(),
                        }),
                        Err(_) => v.push(Violation::OverflowDuringCheck {
                            context: format!("identity law for '{}'", mor.id),
                        }),
                    }
                }
                if mor.src == *obj {
                    match self.compose(&single, &id_single) {
                        Ok(got) if got == single => {}
                        Ok(got) => v.push(Violation::IdentityLawViolated {
                            identity: identity.id.to_string(),
                            mor: mor.id.to_string(),
                            got: got.to_string(),
                        }),
                        Err(_) => v.push(Violation::OverflowDuringCheck {
                            context: format!("identity law for '{}'", mor.id),
                        }),
                    }
                }
            }
        }
    }

    fn check_associativity(&self, v: &mut Vec<Violation>) {
        let mors: Vec<&OneMor> = self.unique_morphisms().collect();
        for f in &mors {
            for g in &mors {
                if f.src != g.tgt {
                    continue;
                }
                for h in &mors {
                    if g.src != h.tgt {
                        continue;
                    }
                    let (fs, gs, hs) = (
                        self.singleton(f.id.as_str()),
                        self.singleton(g.id.as_str()),
                        self.singleton(h.id.as_str()),
                    );
                    let (Ok(fs), Ok(gs), Ok(hs)) = (fs, gs, hs) else { continue };
                    let lhs = self.compose(&fs, &self.compose(&gs, &hs).unwrap_or_else(|_| {
                        MorSum::zero(hs.src().clone(), gs.tgt().clone())
                    }));
                    let rhs = self.compose(&self.compose(&fs, &gs).unwrap_or_else(|_| {
                        MorSum::zero(gs.src().clone(), fs.tgt().clone())
                    }), &hs);
                    match (lhs, rhs) {
                        (Ok(l), Ok(r)) if l == r => {}
                        (Ok(_), Ok(_)) => v.push(Violation::AssociativityViolated {
                            f: f.id.to_string(),
                            g: g.id.to_string(),
                            h: h.id.to_string(),
                        }),
                        _ => v.push(Violation::OverflowDuringCheck {
                            context: format!("associativity of ({}, {}, {})", f.id, g.id, h.id),
                        }),
                    }
                }
            }
        }
    }
}
