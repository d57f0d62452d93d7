//! Quivers with monomial relations, projective-functor presentations, and
//! Morita normal forms.
//!
//! A quiver with a set of forbidden paths presents a finite-dimensional
//! algebra whose basis is the set of admissible paths (paths containing no
//! forbidden factor). The indecomposable projective bimodules give functors
//! `P[b,a]` between the projective module categories of the connected
//! components; on the level of split Grothendieck classes they compose by
//! `P[b,a] . P[d,c] = D[a][d] * P[b,c]`, where `D[a][d]` counts admissible
//! paths from `a` to `d`. Paths read left to right: in the path `x.y`, the
//! arrow `x` is traversed first.
//!
//! The Morita normal form keeps one canonical path-count matrix per
//! component, absorbs isolated semisimple points into any component
//! containing a pair of vertices joined by exactly one admissible path, and
//! collapses the remaining points to a single one. Two quivers are declared
//! equivalent exactly when their normal forms coincide.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::nnimat::{next_permutation, NniMatrix};
use crate::twocat::{CompEntry, MorId, ObjectId, OneMor, Presentation};

/// Largest component size the brute-force canonicalization accepts.
pub const MAX_CANONICAL_VERTICES: usize = 8;

/// Errors from quiver validation and path-algebra computations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuiverError {
    BadName { name: String },
    DuplicateVertex { name: String },
    DuplicateArrow { name: String },
    UnknownVertex { name: String },
    UnknownArrow { name: String },
    EmptyRelation { index: usize },
    NonComposableRelation { index: usize },
    InfiniteDimensional { bound: usize },
    ComponentTooLarge { size: usize, max: usize },
    Overflow,
}

impl fmt::Display for QuiverError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuiverError::BadName { name } => write!(
                f,
                "BadName: {name:?} is empty or contains one of ',', '[', ']'"
            ),
            QuiverError::DuplicateVertex { name } => {
                write!(f, "DuplicateVertex: {name}")
            }
            QuiverError::DuplicateArrow { name } => {
                write!(f, "DuplicateArrow: {name}")
            }
            QuiverError::UnknownVertex { name } => {
                write!(f, "UnknownVertex: {name}")
            }
            QuiverError::UnknownArrow { name } => {
                write!(f, "UnknownArrow: {name}")
            }
            QuiverError::EmptyRelation { index } => {
                write!(f, "EmptyRelation: relation {index} has no arrows")
            }
            QuiverError::NonComposableRelation { index } => write!(
                f,
                "NonComposableRelation: relation {index} is not a path"
            ),
            QuiverError::InfiniteDimensional { bound } => write!(
                f,
                "InfiniteDimensional: an admissible path longer than {bound} exists"
            ),
            QuiverError::ComponentTooLarge { size, max } => write!(
                f,
                "ComponentTooLarge: component has {size} vertices, the canonical form supports at most {max}"
            ),
            QuiverError::Overflow => {
                f.write_str("Overflow: path count exceeds the machine word")
            }
        }
    }
}

impl core::error::Error for QuiverError {}

/// An arrow between two vertex indices.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Arrow {
    name: String,
    src: usize,
    tgt: usize,
}

/// A finite quiver with monomial relations (paths declared to be zero).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    /// Each relation is a composable sequence of arrow indices.
    relations: Vec<Vec<usize>>,
}

fn check_name(name: &str) -> Result<(), QuiverError> {
    if name.is_empty() || name.contains([',', '[', ']']) {
        return Err(QuiverError::BadName {
            name: String::from(name),
        });
    }
    Ok(())
}

impl Quiver {
    /// Builds a quiver from vertex names, arrows `(name, src, tgt)`, and
    /// relations given as sequences of arrow names.
    pub fn new(
        vertices: &[&str],
        arrows: &[(&str, &str, &str)],
        relations: &[&[&str]],
    ) -> Result<Self, QuiverError> {
        let mut vertex_index: BTreeMap<String, usize> = BTreeMap::new();
        let mut vertex_names = Vec::with_capacity(vertices.len());
        for v in vertices {
            check_name(v)?;
            if vertex_index.insert(String::from(*v), vertex_names.len()).is_some() {
                return Err(QuiverError::DuplicateVertex {
                    name: String::from(*v),
                });
            }
            vertex_names.push(String::from(*v));
        }
        let mut arrow_index: BTreeMap<String, usize> = BTreeMap::new();
        let mut arrow_list = Vec::with_capacity(arrows.len());
        for (name, src, tgt) in arrows {
            check_name(name)?;
            let src = *vertex_index
                .get(*src)
                .ok_or_else(|| QuiverError::UnknownVertex {
                    name: String::from(*src),
                })?;
            let tgt = *vertex_index
                .get(*tgt)
                .ok_or_else(|| QuiverError::UnknownVertex {
                    name: String::from(*tgt),
                })?;
            if arrow_index.insert(String::from(*name), arrow_list.len()).is_some() {
                return Err(QuiverError::DuplicateArrow {
                    name: String::from(*name),
                });
            }
            arrow_list.push(Arrow {
                name: String::from(*name),
                src,
                tgt,
            });
        }
        let mut relation_list = Vec::with_capacity(relations.len());
        for (index, rel) in relations.iter().enumerate() {
            if rel.is_empty() {
                return Err(QuiverError::EmptyRelation { index });
            }
            let mut word = Vec::with_capacity(rel.len());
            for name in rel.iter() {
                let a = *arrow_index
                    .get(*name)
                    .ok_or_else(|| QuiverError::UnknownArrow {
                        name: String::from(*name),
                    })?;
                word.push(a);
            }
            for pair in word.windows(2) {
                if arrow_list[pair[0]].tgt != arrow_list[pair[1]].src {
                    return Err(QuiverError::NonComposableRelation { index });
                }
            }
            relation_list.push(word);
        }
        Ok(Quiver {
            vertices: vertex_names,
            arrows: arrow_list,
            relations: relation_list,
        })
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    /// Every arrow as `(name, source vertex, target vertex)`, in declaration
    /// order.
    pub fn arrow_list(&self) -> Vec<(&str, &str, &str)> {
        self.arrows
            .iter()
            .map(|a| {
                (
                    a.name.as_str(),
                    self.vertices[a.src].as_str(),
                    self.vertices[a.tgt].as_str(),
                )
            })
            .collect()
    }

    /// Every relation as its arrow-name word, in declaration order.  Words
    /// read left to right in path order: the first arrow is traversed first.
    pub fn relation_list(&self) -> Vec<Vec<&str>> {
        self.relations
            .iter()
            .map(|word| {
                word.iter()
                    .map(|&idx| self.arrows[idx].name.as_str())
                    .collect()
            })
            .collect()
    }

    /// Connected components of the underlying undirected graph, each sorted
    /// by vertex index; the list is sorted by the lexicographically least
    /// vertex name, which also names the component.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.vertices.len();
        let mut adjacency: Vec<Vec<usize>> = alloc::vec![Vec::new(); n];
        for arrow in &self.arrows {
            adjacency[arrow.src].push(arrow.tgt);
            adjacency[arrow.tgt].push(arrow.src);
        }
        let mut seen = alloc::vec![false; n];
        let mut components = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut stack = alloc::vec![start];
            seen[start] = true;
            let mut members = Vec::new();
            while let Some(v) = stack.pop() {
                members.push(v);
                for &w in &adjacency[v] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            members.sort_unstable();
            components.push(members);
        }
        components.sort_by(|a, b| self.vertices[a[0]].cmp(&self.vertices[b[0]]));
        components
    }

    /// The name of the component a vertex belongs to: the lex-least vertex
    /// name in it.
    fn component_names(&self) -> Vec<String> {
        let mut names = alloc::vec![String::new(); self.vertices.len()];
        for comp in self.components() {
            let least = comp
                .iter()
                .map(|&v| &self.vertices[v])
                .min()
                .expect("components are nonempty");
            for &v in &comp {
                names[v] = least.clone();
            }
        }
        names
    }

    /// Counts admissible paths between every ordered pair of vertices:
    /// entry `(a, b)` is the number of paths from `a` to `b` containing no
    /// forbidden factor. Fails with `InfiniteDimensional` when arbitrarily
    /// long admissible paths exist.
    pub fn path_dimensions(&self) -> Result<NniMatrix, QuiverError> {
        let n = self.vertices.len();
        let automaton = FactorAutomaton::build(&self.relations);
        // A (vertex, automaton state) pair repeating along a path lets the
        // enclosed cycle be pumped, so admissible paths longer than the
        // bound certify infinite dimensionality; conversely admissible
        // paths are closed under prefixes, so an empty length level ends
        // the count exactly.
        let bound = n * automaton.len();
        let mut dims = NniMatrix::zeros(n, n);
        let mut by_source: Vec<Vec<usize>> = alloc::vec![Vec::new(); n];
        for (i, arrow) in self.arrows.iter().enumerate() {
            by_source[arrow.src].push(i);
        }
        for a in 0..n {
            dims.set(a, a, dims.get(a, a).checked_add(1).ok_or(QuiverError::Overflow)?);
            let mut frontier: BTreeMap<(usize, usize), u64> = BTreeMap::new();
            frontier.insert((a, automaton.root()), 1);
            for length in 1..=bound + 1 {
                let mut next: BTreeMap<(usize, usize), u64> = BTreeMap::new();
                for (&(v, state), &count) in &frontier {
                    for &i in &by_source[v] {
                        let arrow = &self.arrows[i];
                        let state = automaton.step(state, i);
                        if automaton.is_dead(state) {
                            continue;
                        }
                        let slot = next.entry((arrow.tgt, state)).or_insert(0);
                        *slot = slot.checked_add(count).ok_or(QuiverError::Overflow)?;
                    }
                }
                if next.is_empty() {
                    frontier = next;
                    break;
                }
                if length > bound {
                    return Err(QuiverError::InfiniteDimensional { bound });
                }
                for (&(v, _), &count) in &next {
                    let total = dims
                        .get(a, v)
                        .checked_add(count)
                        .ok_or(QuiverError::Overflow)?;
                    dims.set(a, v, total);
                }
                frontier = next;
            }
            drop(frontier);
        }
        Ok(dims)
    }

    /// The 1-morphism id of the projective functor sending the projective
    /// at `a` to copies of the projective at `b`.
    /// Whether some ordered vertex pair `(a, b)` spans a one-dimensional
    /// bimodule slot, i.e. the path-dimension matrix has an entry equal to 1.
    /// This is the reduction of the idempotent-pair condition to primitive
    /// idempotents: dimensions over arbitrary idempotents are sums over
    /// primitive constituents, so a dimension-one pair exists iff a
    /// primitive (vertex) pair realizes it.
    pub fn has_dim_one_pair(&self) -> Result<bool, QuiverError> {
        let dims = self.path_dimensions()?;
        for b in 0..dims.rows() {
            for a in 0..dims.cols() {
                if dims.get(b, a) == 1 {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }

    pub fn functor_name(&self, b: usize, a: usize) -> String {
        alloc::format!("P[{},{}]", self.vertices[b], self.vertices[a])
    }

    /// Builds the presentation whose objects are the components, whose
    /// 1-morphisms are the projective functors `P[b,a]` (plus a formal
    /// identity per component), and whose composition table is
    /// `P[b,a] . P[d,c] = D[a][d] * P[b,c]`.
    ///
    /// A component consisting of a single vertex `v` with `D[v][v] = 1` is
    /// semisimple, and `P[v,v]` is its identity functor; no formal identity
    /// is added for it.
    pub fn presentation(&self) -> Result<Presentation, QuiverError> {
        let dims = self.path_dimensions()?;
        let n = self.vertices.len();
        let comp_names = self.component_names();
        let components = self.components();

        let mut objects = Vec::new();
        let mut onemors = Vec::new();
        let mut merged_identity = alloc::vec![false; n];
        for comp in &components {
            let object = ObjectId::new(comp_names[comp[0]].clone());
            objects.push(object.clone());
            let point = comp.len() == 1 && dims.get(comp[0], comp[0]) == 1;
            if point {
                merged_identity[comp[0]] = true;
            } else {
                onemors.push(OneMor {
                    id: MorId::new(alloc::format!("1[{}]", comp_names[comp[0]])),
                    src: object.clone(),
                    tgt: object,
                    is_identity: true,
                });
            }
        }
        for b in 0..n {
            for a in 0..n {
                onemors.push(OneMor {
                    id: MorId::new(self.functor_name(b, a)),
                    src: ObjectId::new(comp_names[a].clone()),
                    tgt: ObjectId::new(comp_names[b].clone()),
                    is_identity: b == a && merged_identity[a],
                });
            }
        }

        let mut comp_table = Vec::new();
        for b in 0..n {
            for a in 0..n {
                for d in 0..n {
                    if comp_names[a] != comp_names[d] {
                        continue;
                    }
                    for c in 0..n {
                        let mut result = BTreeMap::new();
                        let mult = dims.get(a, d);
                        if mult > 0 {
                            result.insert(MorId::new(self.functor_name(b, c)), mult);
                        }
                        comp_table.push(CompEntry {
                            left: MorId::new(self.functor_name(b, a)),
                            right: MorId::new(self.functor_name(d, c)),
                            result,
                        });
                    }
                }
            }
        }
        Ok(Presentation::new(objects, onemors, comp_table))
    }
}

/// Deterministic automaton tracking the longest suffix of the walked path
/// that is a prefix of some forbidden word; walking into a completed
/// forbidden word is a dead end.
struct FactorAutomaton {
    children: Vec<BTreeMap<usize, usize>>,
    fail: Vec<usize>,
    dead: Vec<bool>,
}

impl FactorAutomaton {
    fn build(relations: &[Vec<usize>]) -> Self {
        let mut children: Vec<BTreeMap<usize, usize>> = alloc::vec![BTreeMap::new()];
        let mut dead = alloc::vec![false];
        for word in relations {
            let mut node = 0;
            for &letter in word {
                node = match children[node].get(&letter) {
                    Some(&next) => next,
                    None => {
                        children.push(BTreeMap::new());
                        dead.push(false);
                        let next = children.len() - 1;
                        children[node].insert(letter, next);
                        next
                    }
                };
            }
            dead[node] = true;
        }
        // Breadth-first failure links; a node whose failure target is dead
        // contains a forbidden word as a proper suffix and is dead too.
        let mut fail = alloc::vec![0usize; children.len()];
        let mut queue: Vec<usize> = children[0].values().copied().collect();
        let mut head = 0;
        while head < queue.len() {
            let node = queue[head];
            head += 1;
            if dead[fail[node]] {
                dead[node] = true;
            }
            for (&letter, &child) in children[node].clone().iter() {
                let mut probe = fail[node];
                let target = loop {
                    if let Some(&next) = children[probe].get(&letter) {
                        break next;
                    }
                    if probe == 0 {
                        break 0;
                    }
                    probe = fail[probe];
                };
                fail[child] = if target == child { 0 } else { target };
                queue.push(child);
            }
        }
        FactorAutomaton {
            children,
            fail,
            dead,
        }
    }

    fn len(&self) -> usize {
        self.children.len()
    }

    fn root(&self) -> usize {
        0
    }

    fn is_dead(&self, state: usize) -> bool {
        self.dead[state]
    }

    fn step(&self, mut state: usize, letter: usize) -> usize {
        loop {
            if let Some(&next) = self.children[state].get(&letter) {
                return next;
            }
            if state == 0 {
                return 0;
            }
            state = self.fail[state];
        }
    }
}

/// The canonical path-count matrix of one component: the lexicographically
/// least row-major flattening over all orderings of its vertices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct CanonicalComponent {
    pub size: usize,
    pub matrix: Vec<u64>,
}

/// The Morita normal form of a quiver: canonical component matrices for the
/// non-semisimple components, plus at most one surviving free point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoritaNormalForm {
    pub core: Vec<CanonicalComponent>,
    pub has_free_point: bool,
}

impl MoritaNormalForm {
    /// The number of unremovable semisimple points: 1 when a free point
    /// survives, 0 otherwise.
    pub fn epsilon(&self) -> u8 {
        u8::from(self.has_free_point)
    }
}

impl fmt::Display for MoritaNormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("core: [")?;
        for (i, comp) in self.core.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}x{} {:?}", comp.size, comp.size, comp.matrix)?;
        }
        write!(f, "]; epsilon: {}", self.epsilon())
    }
}

fn canonicalize(dims: &NniMatrix, comp: &[usize]) -> Result<CanonicalComponent, QuiverError> {
    let size = comp.len();
    if size > MAX_CANONICAL_VERTICES {
        return Err(QuiverError::ComponentTooLarge {
            size,
            max: MAX_CANONICAL_VERTICES,
        });
    }
    let mut perm: Vec<usize> = (0..size).collect();
    let mut best: Option<Vec<u64>> = None;
    loop {
        let mut flat = Vec::with_capacity(size * size);
        for &i in &perm {
            for &j in &perm {
                flat.push(dims.get(comp[i], comp[j]));
            }
        }
        if best.as_ref().map(|b| flat < *b).unwrap_or(true) {
            best = Some(flat);
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    Ok(CanonicalComponent {
        size,
        matrix: best.expect("at least the identity ordering was scanned"),
    })
}

/// Computes the Morita normal form; see the module documentation for the
/// absorption rule.
pub fn morita_normal_form(quiver: &Quiver) -> Result<MoritaNormalForm, QuiverError> {
    let dims = quiver.path_dimensions()?;
    let mut core = Vec::new();
    let mut point_count = 0usize;
    for comp in quiver.components() {
        if comp.len() == 1 && dims.get(comp[0], comp[0]) == 1 {
            point_count += 1;
        } else {
            core.push(canonicalize(&dims, &comp)?);
        }
    }
    core.sort();
    // A point is a retract of a component exactly when that component has
    // a one-dimensional bimodule slot; retracts are redundant, and
    // surviving points are all retracts of each other. A semisimple algebra
    // (no core at all) strips down to the single-point class, labelled by
    // the empty core with no free point.
    let core_absorbs = core
        .iter()
        .any(|comp| comp.matrix.contains(&1));
    let has_free_point = point_count > 0 && !core_absorbs && !core.is_empty();
    Ok(MoritaNormalForm {
        core,
        has_free_point,
    })
}

/// Whether two quivers have the same Morita normal form.
pub fn morita_equivalent(a: &Quiver, b: &Quiver) -> Result<bool, QuiverError> {
    Ok(morita_normal_form(a)? == morita_normal_form(b)?)
}

/// The names of vertices whose projective functors `P[v,v]` are weakly
/// idempotent, i.e. with exactly one admissible loop class: `D[v][v] = 1`.
pub fn weakly_idempotent_loops(quiver: &Quiver) -> Result<Vec<String>, QuiverError> {
    let dims = quiver.path_dimensions()?;
    let mut out = Vec::new();
    for (v, name) in quiver.vertices.iter().enumerate() {
        if dims.get(v, v) == 1 {
            out.push(name.clone());
        }
    }
    Ok(out)
}

/// The distinct component names, in presentation object order.
pub fn component_labels(quiver: &Quiver) -> Vec<String> {
    let names = quiver.component_names();
    let set: BTreeSet<String> = names.into_iter().collect();
    set.into_iter().collect()
}
