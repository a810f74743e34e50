//! Isomorphism-free enumeration of finite models by class, in two modes:
//! a pruned backtracking search over table cells and a brute-force
//! generate-and-filter sweep that serves as its oracle at small sizes.
//!
//! Isomorphism is decided by full canonical forms: the lexicographically
//! least `(mul, div)` table pair over all carrier permutations.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::io::{BufRead, Write};
use std::str::FromStr;

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::axioms;
use crate::magma::{derive, Element, FiniteMagma};
use crate::Error;

/// Largest carrier size the canonicalizer and searches accept.
pub const MAX_SIZE: usize = 7;
const MAX_CELLS: usize = MAX_SIZE * MAX_SIZE;
const UNSET: u8 = 0xFF;

/// The model classes the enumerator understands.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ModelClass {
    RightResiduated,
    Narhoop,
    RightQuasigroup,
    RightHoop,
    UnitalNarhoop,
}

pub const ALL_CLASSES: [ModelClass; 5] = [
    ModelClass::RightResiduated,
    ModelClass::Narhoop,
    ModelClass::RightQuasigroup,
    ModelClass::RightHoop,
    ModelClass::UnitalNarhoop,
];

impl ModelClass {
    pub fn name(self) -> &'static str {
        match self {
            ModelClass::RightResiduated => "right_residuated",
            ModelClass::Narhoop => "narhoop",
            ModelClass::RightQuasigroup => "right_quasigroup",
            ModelClass::RightHoop => "right_hoop",
            ModelClass::UnitalNarhoop => "unital_narhoop",
        }
    }

    /// Reference membership predicate, built on the readable checkers in
    /// [`crate::axioms`]. The fast search kernel has its own equivalent
    /// implementation; the two are cross-tested.
    pub fn member(self, m: &FiniteMagma) -> bool {
        let d = derive(m);
        match self {
            ModelClass::RightResiduated => axioms::is_right_residuated(m, &d),
            ModelClass::Narhoop => axioms::is_narhoop(m, &d),
            ModelClass::RightQuasigroup => axioms::is_right_quasigroup_via_identities(m, &d),
            ModelClass::RightHoop => axioms::is_right_hoop_via_identities(m, &d),
            ModelClass::UnitalNarhoop => {
                axioms::is_narhoop(m, &d) && axioms::unital_element(m).is_some()
            }
        }
    }
}

impl fmt::Display for ModelClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ModelClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        ALL_CLASSES
            .iter()
            .copied()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::UnknownClass(s.to_string()))
    }
}

impl Serialize for ModelClass {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for ModelClass {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Search mode for [`enumerate`] and [`count`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EnumMode {
    Backtracking,
    GenerateAndFilter,
}

/// One enumeration request.
#[derive(Debug, Clone)]
pub struct EnumerationTask {
    pub size: usize,
    pub class: ModelClass,
    pub mode: EnumMode,
    /// Worker hint; `Some(1)` forces a sequential search, anything else
    /// uses the global thread pool.
    pub parallel_width: Option<usize>,
}

impl EnumerationTask {
    pub fn new(size: usize, class: ModelClass, mode: EnumMode) -> Self {
        EnumerationTask {
            size,
            class,
            mode,
            parallel_width: None,
        }
    }
}

/// Permutation-minimal representative of an isomorphism class. Two magmas
/// are isomorphic exactly when their canonical forms are equal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CanonicalForm {
    size: usize,
    mul: Vec<Vec<Element>>,
    div: Vec<Vec<Element>>,
}

impl CanonicalForm {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn mul(&self) -> &[Vec<Element>] {
        &self.mul
    }

    pub fn div(&self) -> &[Vec<Element>] {
        &self.div
    }

    pub fn to_magma(&self) -> FiniteMagma {
        FiniteMagma::new(self.mul.clone(), self.div.clone()).expect("canonical form is valid")
    }

    fn from_key(n: usize, key: &[u8]) -> CanonicalForm {
        let cells = n * n;
        let unflatten = |flat: &[u8]| -> Vec<Vec<Element>> {
            (0..n)
                .map(|x| (0..n).map(|y| flat[x * n + y] as Element).collect())
                .collect()
        };
        CanonicalForm {
            size: n,
            mul: unflatten(&key[..cells]),
            div: unflatten(&key[cells..]),
        }
    }
}

/// Minimizes the `(mul, div)` pair over all carrier permutations, comparing
/// the flattened mul table first and the flattened div table second.
pub fn canonicalize(m: &FiniteMagma) -> CanonicalForm {
    let t = Tables::from_magma(m);
    let key = t.canonical_key();
    CanonicalForm::from_key(m.size(), &key)
}

// ---------------------------------------------------------------------------
// Search kernel: compact tables with fast, allocation-free class predicates.
// ---------------------------------------------------------------------------

/// Flat operation tables sized for the search kernel. `UNSET` marks cells a
/// partial assignment has not filled yet.
#[derive(Clone, Copy)]
struct Tables {
    n: usize,
    mul: [u8; MAX_CELLS],
    div: [u8; MAX_CELLS],
}

impl Tables {
    fn empty(n: usize) -> Tables {
        Tables {
            n,
            mul: [UNSET; MAX_CELLS],
            div: [UNSET; MAX_CELLS],
        }
    }

    fn from_magma(m: &FiniteMagma) -> Tables {
        let n = m.size();
        let mut t = Tables::empty(n);
        for x in 0..n {
            for y in 0..n {
                t.mul[x * n + y] = m.mul(x, y) as u8;
                t.div[x * n + y] = m.div(x, y) as u8;
            }
        }
        t
    }

    fn to_magma(self) -> FiniteMagma {
        let n = self.n;
        let unpack = |flat: &[u8; MAX_CELLS]| {
            (0..n)
                .map(|x| (0..n).map(|y| flat[x * n + y] as Element).collect())
                .collect()
        };
        FiniteMagma::new(unpack(&self.mul), unpack(&self.div)).expect("kernel tables are valid")
    }

    #[inline]
    fn mul_at(&self, x: usize, y: usize) -> u8 {
        self.mul[x * self.n + y]
    }

    #[inline]
    fn div_at(&self, x: usize, y: usize) -> u8 {
        self.div[x * self.n + y]
    }

    /// `x⊓y` on a partial table, `None` while any needed cell is unset.
    #[inline]
    fn psq(&self, x: usize, y: usize) -> Option<usize> {
        let d = self.div_at(x, y);
        if d == UNSET {
            return None;
        }
        let s = self.mul_at(d as usize, y);
        (s != UNSET).then_some(s as usize)
    }

    /// `a ≤ b` on a partial table, `None` while undecided.
    #[inline]
    fn ple(&self, a: usize, b: usize) -> Option<bool> {
        self.psq(b, a).map(|s| s == a)
    }

    /// Flattened `mul ++ div` pair minimized over all carrier permutations.
    fn canonical_key(&self) -> Vec<u8> {
        let n = self.n;
        let cells = n * n;
        let mut best: Option<Vec<u8>> = None;
        let mut cand = vec![0u8; 2 * cells];
        for perm in (0..n as u8).permutations(n) {
            for x in 0..n {
                for y in 0..n {
                    let to = perm[x] as usize * n + perm[y] as usize;
                    cand[to] = perm[self.mul_at(x, y) as usize];
                    cand[cells + to] = perm[self.div_at(x, y) as usize];
                }
            }
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand.clone());
            }
        }
        best.expect("at least the identity permutation")
    }
}

/// Complete-table class predicates. These mirror [`ModelClass::member`] on
/// the compact representation and are cross-tested against it.
mod pred {
    use super::Tables;

    #[inline]
    fn sq(t: &Tables, x: usize, y: usize) -> usize {
        t.mul[t.div[x * t.n + y] as usize * t.n + y] as usize
    }

    #[inline]
    fn le(t: &Tables, a: usize, b: usize) -> bool {
        sq(t, b, a) == a
    }

    fn reflexive(t: &Tables) -> bool {
        (0..t.n).all(|x| sq(t, x, x) == x)
    }

    fn antisymmetric(t: &Tables) -> bool {
        for x in 0..t.n {
            for y in x + 1..t.n {
                if le(t, x, y) && le(t, y, x) {
                    return false;
                }
            }
        }
        true
    }

    fn transitive(t: &Tables) -> bool {
        for x in 0..t.n {
            for y in 0..t.n {
                if !le(t, x, y) {
                    continue;
                }
                for z in 0..t.n {
                    if le(t, y, z) && !le(t, x, z) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn rres(t: &Tables) -> bool {
        let n = t.n;
        for x in 0..n {
            for y in 0..n {
                if !le(t, sq(t, x, y), x) {
                    return false;
                }
                let q = t.div[t.mul[x * n + y] as usize * n + y] as usize;
                if !le(t, x, q) {
                    return false;
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                if !le(t, x, y) {
                    continue;
                }
                for z in 0..n {
                    if !le(t, t.mul[x * n + z] as usize, t.mul[y * n + z] as usize) {
                        return false;
                    }
                    if !le(t, t.div[x * n + z] as usize, t.div[y * n + z] as usize) {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn right_residuated(t: &Tables) -> bool {
        reflexive(t) && antisymmetric(t) && transitive(t) && rres(t)
    }

    pub fn narhoop(t: &Tables) -> bool {
        let n = t.n;
        // N1 and N2
        for x in 0..n {
            for y in 0..n {
                let s = sq(t, x, y);
                if sq(t, s, x) != s {
                    return false;
                }
                let q = t.div[t.mul[x * n + y] as usize * n + y] as usize;
                if !le(t, x, q) {
                    return false;
                }
            }
        }
        // N3 and N4
        for x in 0..n {
            for y in 0..n {
                let s = sq(t, x, y);
                for z in 0..n {
                    if !le(t, t.mul[s * n + z] as usize, t.mul[x * n + z] as usize) {
                        return false;
                    }
                    if !le(t, t.div[s * n + z] as usize, t.div[x * n + z] as usize) {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn right_quasigroup(t: &Tables) -> bool {
        let n = t.n;
        for x in 0..n {
            for y in 0..n {
                if sq(t, x, y) != x {
                    return false;
                }
                if t.div[t.mul[x * n + y] as usize * n + y] as usize != x {
                    return false;
                }
            }
        }
        true
    }

    pub fn right_hoop(t: &Tables) -> bool {
        let n = t.n;
        for x in 0..n {
            let d = t.div[x * n + x] as usize;
            for y in 0..n {
                if t.mul[d * n + y] as usize != y {
                    return false;
                }
                if sq(t, x, y) != sq(t, y, x) {
                    return false;
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let lhs = t.div[x * n + t.mul[y * n + z] as usize];
                    let rhs = t.div[t.div[x * n + z] as usize * n + y];
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn unital(t: &Tables) -> bool {
        let n = t.n;
        let u = t.div[0] as usize;
        (0..n).all(|x| t.div[x * n + x] as usize == u)
            && (0..n)
                .all(|x| (0..n).all(|y| t.mul[t.div[x * n + x] as usize * n + y] as usize == y))
            && (0..n).any(|e| (0..n).all(|y| t.mul[e * n + y] as usize == y))
    }

    pub fn satisfies(class: super::ModelClass, t: &Tables) -> bool {
        match class {
            super::ModelClass::RightResiduated => right_residuated(t),
            super::ModelClass::Narhoop => narhoop(t),
            super::ModelClass::RightQuasigroup => right_quasigroup(t),
            super::ModelClass::RightHoop => right_hoop(t),
            super::ModelClass::UnitalNarhoop => narhoop(t) && unital(t),
        }
    }
}

// ---------------------------------------------------------------------------
// Pruning: necessary conditions evaluated on partial tables. An instance
// only counts once every cell it reads is assigned, so a reported violation
// is permanent along the current branch.
// ---------------------------------------------------------------------------

mod prune {
    use super::{ModelClass, Tables, UNSET};

    /// Decided instances of `(x⊓y)/y = x/y` and `(x⊓y)⊓y = x⊓y`. Both hold
    /// in every right-residuated magma (monotonicity one way, the
    /// residuation bi-implication back, antisymmetry to close), and both
    /// read cells of a single column, so they bite while a column is still
    /// being filled.
    fn in_column(t: &Tables) -> bool {
        let n = t.n;
        for x in 0..n {
            for y in 0..n {
                let d = t.div_at(x, y);
                if d == UNSET {
                    continue;
                }
                let s = t.mul_at(d as usize, y);
                if s == UNSET {
                    continue;
                }
                let d2 = t.div_at(s as usize, y);
                if d2 != UNSET && d2 != d {
                    return false;
                }
                if let Some(s2) = t.psq(s as usize, y) {
                    if s2 != s as usize {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Decided instances of `(x/x)y/y = x/x`, which holds in every
    /// right-residuated magma with this order, and reads only columns
    /// `x` and `y`.
    fn diagonal_stable(t: &Tables) -> bool {
        let n = t.n;
        for x in 0..n {
            let d = t.div_at(x, x);
            if d == UNSET {
                continue;
            }
            for y in 0..n {
                let p = t.mul_at(d as usize, y);
                if p == UNSET {
                    continue;
                }
                let q = t.div_at(p as usize, y);
                if q != UNSET && q != d {
                    return false;
                }
            }
        }
        true
    }

    /// Fully-decided instances of N1, N2 and reflexivity (`x⊓x = x`, which
    /// every model of N1–N4 satisfies).
    fn narhoop_two_var(t: &Tables) -> bool {
        let n = t.n;
        for x in 0..n {
            if let Some(s) = t.psq(x, x) {
                if s != x {
                    return false;
                }
            }
            for y in 0..n {
                if let Some(s) = t.psq(x, y) {
                    if let Some(s2) = t.psq(s, x) {
                        if s2 != s {
                            return false;
                        }
                    }
                }
                let p = t.mul_at(x, y);
                if p == UNSET {
                    continue;
                }
                let q = t.div_at(p as usize, y);
                if q == UNSET {
                    continue;
                }
                match t.ple(x, q as usize) {
                    Some(false) => return false,
                    // N5 instance: x ⊓ (xy/y) = x
                    _ => {
                        if let Some(s) = t.psq(x, q as usize) {
                            if s != x {
                                return false;
                            }
                        }
                    }
                }
            }
        }
        true
    }

    fn narhoop_three_var(t: &Tables) -> bool {
        let n = t.n;
        for x in 0..n {
            for y in 0..n {
                let Some(s) = t.psq(x, y) else { continue };
                for z in 0..n {
                    let (a, b) = (t.mul_at(s, z), t.mul_at(x, z));
                    if a != UNSET && b != UNSET && t.ple(a as usize, b as usize) == Some(false) {
                        return false;
                    }
                    let (a, b) = (t.div_at(s, z), t.div_at(x, z));
                    if a != UNSET && b != UNSET && t.ple(a as usize, b as usize) == Some(false) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn narhoop(t: &Tables) -> bool {
        narhoop_two_var(t) && narhoop_three_var(t)
    }

    fn order(t: &Tables) -> bool {
        let n = t.n;
        for x in 0..n {
            if let Some(s) = t.psq(x, x) {
                if s != x {
                    return false;
                }
            }
            for y in x + 1..n {
                if t.ple(x, y) == Some(true) && t.ple(y, x) == Some(true) {
                    return false;
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                if t.ple(x, y) != Some(true) {
                    continue;
                }
                for z in 0..n {
                    if t.ple(y, z) == Some(true) && t.ple(x, z) == Some(false) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn residuation(t: &Tables) -> bool {
        let n = t.n;
        for x in 0..n {
            for y in 0..n {
                if let Some(s) = t.psq(x, y) {
                    if t.ple(s, x) == Some(false) {
                        return false;
                    }
                }
                let p = t.mul_at(x, y);
                if p != UNSET {
                    let q = t.div_at(p as usize, y);
                    if q != UNSET && t.ple(x, q as usize) == Some(false) {
                        return false;
                    }
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                if t.ple(x, y) != Some(true) {
                    continue;
                }
                for z in 0..n {
                    let (a, b) = (t.mul_at(x, z), t.mul_at(y, z));
                    if a != UNSET && b != UNSET && t.ple(a as usize, b as usize) == Some(false) {
                        return false;
                    }
                    let (a, b) = (t.div_at(x, z), t.div_at(y, z));
                    if a != UNSET && b != UNSET && t.ple(a as usize, b as usize) == Some(false) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn right_quasigroup(t: &Tables) -> bool {
        let n = t.n;
        for x in 0..n {
            for y in 0..n {
                if let Some(s) = t.psq(x, y) {
                    if s != x {
                        return false;
                    }
                }
                let p = t.mul_at(x, y);
                if p != UNSET {
                    let q = t.div_at(p as usize, y);
                    if q != UNSET && q as usize != x {
                        return false;
                    }
                }
            }
        }
        // both identities force injective columns
        for y in 0..n {
            for x1 in 0..n {
                for x2 in x1 + 1..n {
                    let (a, b) = (t.mul_at(x1, y), t.mul_at(x2, y));
                    if a != UNSET && a == b {
                        return false;
                    }
                    let (a, b) = (t.div_at(x1, y), t.div_at(x2, y));
                    if a != UNSET && a == b {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn right_hoop(t: &Tables) -> bool {
        let n = t.n;
        for x in 0..n {
            let d = t.div_at(x, x);
            for y in 0..n {
                if d != UNSET {
                    let v = t.mul_at(d as usize, y);
                    if v != UNSET && v as usize != y {
                        return false;
                    }
                }
                if let (Some(s1), Some(s2)) = (t.psq(x, y), t.psq(y, x)) {
                    if s1 != s2 {
                        return false;
                    }
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let p = t.mul_at(y, z);
                    if p == UNSET {
                        continue;
                    }
                    let lhs = t.div_at(x, p as usize);
                    if lhs == UNSET {
                        continue;
                    }
                    let q = t.div_at(x, z);
                    if q == UNSET {
                        continue;
                    }
                    let rhs = t.div_at(q as usize, y);
                    if rhs != UNSET && lhs != rhs {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn unital(t: &Tables) -> bool {
        let n = t.n;
        // x/x is constant and acts as a left identity
        let mut diag = UNSET;
        for x in 0..n {
            let d = t.div_at(x, x);
            if d == UNSET {
                continue;
            }
            if diag == UNSET {
                diag = d;
            } else if d != diag {
                return false;
            }
            for y in 0..n {
                let v = t.mul_at(d as usize, y);
                if v != UNSET && v as usize != y {
                    return false;
                }
            }
        }
        true
    }

    /// `false` means no completion of `t` can satisfy the class predicate.
    pub fn consistent(class: ModelClass, t: &Tables) -> bool {
        match class {
            // N3 and N4 hold in every right-residuated magma (both
            // operations preserve order in the first argument and x⊓y ≤ x),
            // so the three-variable narhoop scan is sound here as well.
            ModelClass::RightResiduated => {
                in_column(t)
                    && diagonal_stable(t)
                    && order(t)
                    && narhoop_three_var(t)
                    && residuation(t)
            }
            ModelClass::Narhoop => in_column(t) && diagonal_stable(t) && narhoop(t),
            ModelClass::RightQuasigroup => right_quasigroup(t),
            ModelClass::RightHoop => right_hoop(t),
            ModelClass::UnitalNarhoop => {
                in_column(t) && diagonal_stable(t) && narhoop(t) && unital(t)
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Backtracking mode.
// ---------------------------------------------------------------------------

#[derive(Clone, Copy)]
enum Cell {
    Div(usize, usize),
    Mul(usize, usize),
}

/// Column-major assignment order: for each column, all div cells then all
/// mul cells. The term `x⊓y = (x/y)y` reads one div and one mul cell of
/// column `y` whatever their row, so completing whole columns decides axiom
/// instances as early as possible.
fn cell_order(n: usize) -> Vec<Cell> {
    let mut order = Vec::with_capacity(2 * n * n);
    for col in 0..n {
        for row in 0..n {
            order.push(Cell::Div(row, col));
        }
        for row in 0..n {
            order.push(Cell::Mul(row, col));
        }
    }
    order
}

fn dfs(t: &mut Tables, order: &[Cell], depth: usize, class: ModelClass, out: &mut BTreeSet<Vec<u8>>) {
    if depth == order.len() {
        if pred::satisfies(class, t) {
            out.insert(t.canonical_key());
        }
        return;
    }
    let n = t.n;
    let idx = match order[depth] {
        Cell::Div(x, y) | Cell::Mul(x, y) => x * n + y,
    };
    for v in 0..n as u8 {
        match order[depth] {
            Cell::Div(..) => t.div[idx] = v,
            Cell::Mul(..) => t.mul[idx] = v,
        }
        if prune::consistent(class, t) {
            dfs(t, order, depth + 1, class, out);
        }
    }
    match order[depth] {
        Cell::Div(..) => t.div[idx] = UNSET,
        Cell::Mul(..) => t.mul[idx] = UNSET,
    }
}

/// Enumerates all consistent assignments of the first `n` cells (the first
/// div column); these are the independent work units for the parallel run.
fn search_prefixes(n: usize, class: ModelClass, order: &[Cell]) -> Vec<Tables> {
    let mut prefixes = Vec::new();
    let mut stack = vec![(Tables::empty(n), 0usize)];
    while let Some((t, depth)) = stack.pop() {
        if depth == n.min(order.len()) {
            prefixes.push(t);
            continue;
        }
        let idx = match order[depth] {
            Cell::Div(x, y) | Cell::Mul(x, y) => x * n + y,
        };
        for v in 0..n as u8 {
            let mut next = t;
            match order[depth] {
                Cell::Div(..) => next.div[idx] = v,
                Cell::Mul(..) => next.mul[idx] = v,
            }
            if prune::consistent(class, &next) {
                stack.push((next, depth + 1));
            }
        }
    }
    prefixes.sort_by_key(|t| t.div);
    prefixes
}

fn backtrack_enumerate(n: usize, class: ModelClass, width: Option<usize>) -> BTreeSet<Vec<u8>> {
    let order = cell_order(n);
    let prefixes = search_prefixes(n, class, &order);
    let run = |prefix: &Tables| {
        let mut t = *prefix;
        let mut found = BTreeSet::new();
        dfs(&mut t, &order, n.min(order.len()), class, &mut found);
        found
    };
    if width == Some(1) {
        let mut all = BTreeSet::new();
        for p in &prefixes {
            all.extend(run(p));
        }
        all
    } else {
        prefixes
            .par_iter()
            .map(run)
            .reduce(BTreeSet::new, |mut a, b| {
                a.extend(b);
                a
            })
    }
}

// ---------------------------------------------------------------------------
// Generate-and-filter mode.
// ---------------------------------------------------------------------------

/// Advances a base-`n` odometer; returns false on wrap-around.
fn bump(digits: &mut [u8], n: u8) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < n {
            return true;
        }
        *d = 0;
    }
    false
}

fn table_from_index(n: usize, mut index: u64) -> [u8; MAX_CELLS] {
    let mut t = [UNSET; MAX_CELLS];
    for cell in (0..n * n).rev() {
        t[cell] = (index % n as u64) as u8;
        index /= n as u64;
    }
    t
}

/// Sweeps the full table space for every class at once; feasible for
/// `n ≤ 3` (at most 3^18 candidate pairs).
pub fn gf_enumerate_all(
    n: usize,
    width: Option<usize>,
) -> Result<BTreeMap<ModelClass, Vec<CanonicalForm>>, Error> {
    if n == 0 || n > 3 {
        return Err(Error::Infeasible(format!(
            "full table-space sweep only runs for sizes 1-3, requested {n}"
        )));
    }
    let tables: u64 = (n as u64).pow((n * n) as u32);

    let sweep_one_mul = |mul_index: u64| {
        let mut results: Vec<(ModelClass, Vec<u8>)> = Vec::new();
        let mut t = Tables::empty(n);
        t.mul = table_from_index(n, mul_index);
        for cell in 0..n * n {
            t.div[cell] = 0;
        }
        loop {
            for class in ALL_CLASSES {
                if pred::satisfies(class, &t) {
                    results.push((class, t.canonical_key()));
                }
            }
            if !bump(&mut t.div[..n * n], n as u8) {
                break;
            }
        }
        results
    };

    let collected: Vec<(ModelClass, Vec<u8>)> = if width == Some(1) {
        (0..tables).flat_map(sweep_one_mul).collect()
    } else {
        (0..tables)
            .into_par_iter()
            .flat_map_iter(sweep_one_mul)
            .collect()
    };

    let mut sets: BTreeMap<ModelClass, BTreeSet<Vec<u8>>> =
        ALL_CLASSES.iter().map(|&c| (c, BTreeSet::new())).collect();
    for (class, key) in collected {
        sets.get_mut(&class).unwrap().insert(key);
    }
    Ok(sets
        .into_iter()
        .map(|(class, keys)| {
            (
                class,
                keys.into_iter()
                    .map(|k| CanonicalForm::from_key(n, &k))
                    .collect(),
            )
        })
        .collect())
}

/// Right quasigroups admit an exact structured candidate space: every mul
/// column is a permutation and each div column is its inverse. This keeps
/// the generate-and-filter oracle feasible at size 4.
fn gf_right_quasigroups_structured(n: usize, width: Option<usize>) -> BTreeSet<Vec<u8>> {
    let perms: Vec<Vec<u8>> = (0..n as u8).permutations(n).collect();
    let k = perms.len() as u64;
    let total = k.pow(n as u32);

    let build = |mut index: u64| {
        let mut t = Tables::empty(n);
        for col in (0..n).rev() {
            let perm = &perms[(index % k) as usize];
            index /= k;
            for row in 0..n {
                t.mul[row * n + col] = perm[row];
                t.div[perm[row] as usize * n + col] = row as u8;
            }
        }
        pred::satisfies(ModelClass::RightQuasigroup, &t).then(|| t.canonical_key())
    };

    if width == Some(1) {
        (0..total).filter_map(build).collect()
    } else {
        (0..total)
            .into_par_iter()
            .filter_map(build)
            .collect::<BTreeSet<_>>()
    }
}

fn gf_enumerate(
    n: usize,
    class: ModelClass,
    width: Option<usize>,
) -> Result<BTreeSet<Vec<u8>>, Error> {
    if n <= 3 {
        let mut all = gf_enumerate_all(n, width)?;
        let forms = all.remove(&class).unwrap_or_default();
        return Ok(forms
            .into_iter()
            .map(|f| Tables::from_magma(&f.to_magma()).canonical_key())
            .collect());
    }
    if class == ModelClass::RightQuasigroup && n == 4 {
        return Ok(gf_right_quasigroups_structured(n, width));
    }
    Err(Error::Infeasible(format!(
        "generate-and-filter cannot cover class {class} at size {n}"
    )))
}

// ---------------------------------------------------------------------------
// Public entry points.
// ---------------------------------------------------------------------------

fn validate_task(task: &EnumerationTask) -> Result<(), Error> {
    if task.size == 0 {
        return Err(Error::Precondition("enumeration size must be ≥ 1".into()));
    }
    if task.size > MAX_SIZE {
        return Err(Error::Infeasible(format!(
            "size {} exceeds the supported maximum {MAX_SIZE}",
            task.size
        )));
    }
    Ok(())
}

/// Enumerates exactly one canonical representative per isomorphism class of
/// the requested model class, in ascending canonical-form order.
pub fn enumerate(task: &EnumerationTask) -> Result<Vec<FiniteMagma>, Error> {
    validate_task(task)?;
    let keys = match task.mode {
        EnumMode::Backtracking => backtrack_enumerate(task.size, task.class, task.parallel_width),
        EnumMode::GenerateAndFilter => gf_enumerate(task.size, task.class, task.parallel_width)?,
    };
    Ok(keys
        .into_iter()
        .map(|k| CanonicalForm::from_key(task.size, &k).to_magma())
        .collect())
}

/// Number of isomorphism classes for one task.
pub fn count(task: &EnumerationTask) -> Result<usize, Error> {
    Ok(enumerate(task)?.len())
}

/// Counts for every class at the given size in one mode. In
/// generate-and-filter mode all classes are collected in a single sweep.
pub fn count_table(
    size: usize,
    mode: EnumMode,
    width: Option<usize>,
) -> Result<BTreeMap<ModelClass, usize>, Error> {
    match mode {
        EnumMode::GenerateAndFilter => Ok(gf_enumerate_all(size, width)?
            .into_iter()
            .map(|(c, v)| (c, v.len()))
            .collect()),
        EnumMode::Backtracking => {
            let mut table = BTreeMap::new();
            for class in ALL_CLASSES {
                let task = EnumerationTask {
                    size,
                    class,
                    mode,
                    parallel_width: width,
                };
                table.insert(class, count(&task)?);
            }
            Ok(table)
        }
    }
}

// ---------------------------------------------------------------------------
// Corpus files: JSON lines, one model per line, after a header line.
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusHeader {
    pub class: ModelClass,
    pub size: usize,
    pub count: usize,
}

pub fn write_corpus<W: Write>(
    out: &mut W,
    class: ModelClass,
    size: usize,
    models: &[FiniteMagma],
) -> Result<(), Error> {
    let header = CorpusHeader {
        class,
        size,
        count: models.len(),
    };
    writeln!(out, "{}", serde_json::to_string(&header).expect("header"))?;
    for m in models {
        writeln!(out, "{}", m.to_json())?;
    }
    Ok(())
}

pub fn read_corpus<R: BufRead>(reader: R) -> Result<(CorpusHeader, Vec<FiniteMagma>), Error> {
    let mut lines = reader.lines();
    let header_line = lines
        .next()
        .ok_or_else(|| Error::Parse("empty corpus file".into()))??;
    let header: CorpusHeader = serde_json::from_str(&header_line)
        .map_err(|e| Error::Parse(format!("bad corpus header: {e}")))?;
    let mut models = Vec::new();
    for line in lines {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        models.push(FiniteMagma::from_json(&line)?);
    }
    if models.len() != header.count {
        return Err(Error::Parse(format!(
            "corpus header declares {} models but {} were present",
            header.count,
            models.len()
        )));
    }
    Ok((header, models))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a1() -> FiniteMagma {
        FiniteMagma::from_tables([[0, 0], [0, 1]], [[0, 1], [0, 1]])
    }

    fn z2_xor() -> FiniteMagma {
        FiniteMagma::from_tables([[0, 1], [1, 0]], [[0, 1], [1, 0]])
    }

    #[test]
    fn canonicalize_single_element() {
        let m = FiniteMagma::from_tables([[0]], [[0]]);
        assert_eq!(canonicalize(&m).to_magma(), m);
    }

    #[test]
    fn canonicalize_identifies_relabelings() {
        let m = a1();
        let relabeled = m.relabel(&[1, 0]);
        assert_ne!(m, relabeled);
        assert_eq!(canonicalize(&m), canonicalize(&relabeled));
        // A1 itself is the lexicographic minimum of its orbit
        assert_eq!(canonicalize(&m).to_magma(), m);
    }

    #[test]
    fn canonicalize_z2_xor_is_fixed_point() {
        let m = z2_xor();
        assert_eq!(canonicalize(&m).to_magma(), m);
        assert_eq!(canonicalize(&m.relabel(&[1, 0])), canonicalize(&m));
    }

    #[test]
    fn canonicalizing_canonical_form_is_identity() {
        for m in [a1(), z2_xor()] {
            let c = canonicalize(&m);
            assert_eq!(canonicalize(&c.to_magma()), c);
        }
    }

    #[test]
    fn kernel_predicates_match_reference_exhaustively_size_2() {
        // every pair of 2x2 tables
        for mul_idx in 0..16u64 {
            for div_idx in 0..16u64 {
                let mut t = Tables::empty(2);
                t.mul = table_from_index(2, mul_idx);
                t.div = table_from_index(2, div_idx);
                let m = t.to_magma();
                for class in ALL_CLASSES {
                    assert_eq!(
                        pred::satisfies(class, &t),
                        class.member(&m),
                        "kernel and reference disagree on {class} for {}",
                        m.to_json()
                    );
                }
            }
        }
    }

    #[test]
    fn size_one_counts_are_all_one() {
        for class in ALL_CLASSES {
            for mode in [EnumMode::Backtracking, EnumMode::GenerateAndFilter] {
                let task = EnumerationTask::new(1, class, mode);
                assert_eq!(count(&task).unwrap(), 1, "{class} in {mode:?}");
            }
        }
    }

    #[test]
    fn right_quasigroup_size_2_count_is_3() {
        // independent oracle: mul columns are permutations, div columns their
        // inverses; on two elements that is 4 labeled tables, and the two
        // xor-like variants are isomorphic
        let mut forms = BTreeSet::new();
        for c0 in [[0usize, 1], [1, 0]] {
            for c1 in [[0usize, 1], [1, 0]] {
                let mul = vec![vec![c0[0], c1[0]], vec![c0[1], c1[1]]];
                let mut div = vec![vec![0; 2]; 2];
                for x in 0..2 {
                    div[c0[x]][0] = x;
                    div[c1[x]][1] = x;
                }
                let m = FiniteMagma::new(mul, div).unwrap();
                assert!(ModelClass::RightQuasigroup.member(&m));
                forms.insert(canonicalize(&m));
            }
        }
        assert_eq!(forms.len(), 3);

        for mode in [EnumMode::Backtracking, EnumMode::GenerateAndFilter] {
            let task = EnumerationTask::new(2, ModelClass::RightQuasigroup, mode);
            assert_eq!(count(&task).unwrap(), 3);
        }
    }

    #[test]
    fn modes_agree_at_size_2_for_all_classes() {
        for class in ALL_CLASSES {
            let bt = enumerate(&EnumerationTask::new(2, class, EnumMode::Backtracking)).unwrap();
            let gf =
                enumerate(&EnumerationTask::new(2, class, EnumMode::GenerateAndFilter)).unwrap();
            assert_eq!(bt, gf, "mode disagreement for {class}");
        }
    }

    #[test]
    fn enumerated_models_are_members_and_canonical() {
        for class in ALL_CLASSES {
            let models =
                enumerate(&EnumerationTask::new(3, class, EnumMode::Backtracking)).unwrap();
            for m in &models {
                assert!(class.member(m));
                assert_eq!(canonicalize(m).to_magma(), *m);
            }
            // ascending canonical order
            let mut sorted = models.clone();
            sorted.sort();
            assert_eq!(models, sorted);
        }
    }

    #[test]
    fn size_zero_rejected() {
        let task = EnumerationTask::new(0, ModelClass::Narhoop, EnumMode::Backtracking);
        assert!(matches!(enumerate(&task), Err(Error::Precondition(_))));
    }

    #[test]
    fn gf_infeasible_at_size_4_for_general_classes() {
        let task = EnumerationTask::new(4, ModelClass::Narhoop, EnumMode::GenerateAndFilter);
        assert!(matches!(enumerate(&task), Err(Error::Infeasible(_))));
    }

    #[test]
    fn class_names_round_trip() {
        for class in ALL_CLASSES {
            assert_eq!(class.name().parse::<ModelClass>().unwrap(), class);
        }
        assert!("frobnicator".parse::<ModelClass>().is_err());
    }

    #[test]
    fn corpus_round_trip() {
        let models =
            enumerate(&EnumerationTask::new(2, ModelClass::Narhoop, EnumMode::Backtracking))
                .unwrap();
        let mut buf = Vec::new();
        write_corpus(&mut buf, ModelClass::Narhoop, 2, &models).unwrap();
        let (header, parsed) = read_corpus(&buf[..]).unwrap();
        assert_eq!(header.class, ModelClass::Narhoop);
        assert_eq!(header.count, models.len());
        assert_eq!(parsed, models);
    }
}
