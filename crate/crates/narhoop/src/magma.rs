//! Finite magmas with two binary operations, given as full operation tables.

use serde::{Deserialize, Serialize};

use crate::Error;

/// Index into the carrier `{0, …, n-1}` of a finite magma.
pub type Element = usize;

/// A finite algebra `(A, ·, /)` on the carrier `{0, …, n-1}`, with both
/// operations stored as total `n×n` tables. Rows index the left argument,
/// so `mul[x][y] = x·y` and `div[x][y] = x/y`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct FiniteMagma {
    size: usize,
    mul: Vec<Vec<Element>>,
    div: Vec<Vec<Element>>,
}

/// Raw mirror of the JSON model format, validated on conversion.
#[derive(Deserialize)]
struct RawMagma {
    size: usize,
    mul: Vec<Vec<Element>>,
    div: Vec<Vec<Element>>,
}

impl TryFrom<RawMagma> for FiniteMagma {
    type Error = Error;

    fn try_from(raw: RawMagma) -> Result<Self, Error> {
        let m = FiniteMagma::new(raw.mul, raw.div)?;
        if m.size != raw.size {
            return Err(Error::InvalidTable(format!(
                "declared size {} does not match table dimension {}",
                raw.size, m.size
            )));
        }
        Ok(m)
    }
}

impl<'de> Deserialize<'de> for FiniteMagma {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = RawMagma::deserialize(deserializer)?;
        FiniteMagma::try_from(raw).map_err(serde::de::Error::custom)
    }
}

impl FiniteMagma {
    /// Builds a magma from its two tables, validating that both are square
    /// `n×n` tables with every entry in `[0, n)`.
    pub fn new(mul: Vec<Vec<Element>>, div: Vec<Vec<Element>>) -> Result<Self, Error> {
        let n = mul.len();
        if n == 0 {
            return Err(Error::InvalidTable("carrier must be nonempty".into()));
        }
        for (name, table) in [("mul", &mul), ("div", &div)] {
            if table.len() != n {
                return Err(Error::InvalidTable(format!(
                    "{name} table has {} rows, expected {n}",
                    table.len()
                )));
            }
            for (x, row) in table.iter().enumerate() {
                if row.len() != n {
                    return Err(Error::InvalidTable(format!(
                        "{name} row {x} has {} entries, expected {n}",
                        row.len()
                    )));
                }
                for (y, &v) in row.iter().enumerate() {
                    if v >= n {
                        return Err(Error::InvalidTable(format!(
                            "{name}[{x}][{y}] = {v} is out of range for size {n}"
                        )));
                    }
                }
            }
        }
        Ok(FiniteMagma { size: n, mul, div })
    }

    /// Convenience constructor from integer literals.
    pub fn from_tables<const N: usize>(mul: [[Element; N]; N], div: [[Element; N]; N]) -> Self {
        let to_vec = |t: [[Element; N]; N]| t.iter().map(|r| r.to_vec()).collect();
        FiniteMagma::new(to_vec(mul), to_vec(div)).expect("literal tables must be valid")
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn elements(&self) -> std::ops::Range<Element> {
        0..self.size
    }

    /// `x·y`
    pub fn mul(&self, x: Element, y: Element) -> Element {
        self.mul[x][y]
    }

    /// `x/y`
    pub fn div(&self, x: Element, y: Element) -> Element {
        self.div[x][y]
    }

    /// The derived term `x⊓y = (x/y)·y`.
    pub fn sqcap(&self, x: Element, y: Element) -> Element {
        self.mul[self.div[x][y]][y]
    }

    pub fn mul_table(&self) -> &[Vec<Element>] {
        &self.mul
    }

    pub fn div_table(&self) -> &[Vec<Element>] {
        &self.div
    }

    /// Relabels the carrier along `perm`, where `perm[i]` is the new name of
    /// element `i`: `mul'[perm[x]][perm[y]] = perm[mul[x][y]]`, same for div.
    pub fn relabel(&self, perm: &[Element]) -> FiniteMagma {
        let n = self.size;
        assert_eq!(perm.len(), n, "permutation length must match carrier size");
        let mut mul = vec![vec![0; n]; n];
        let mut div = vec![vec![0; n]; n];
        for x in 0..n {
            for y in 0..n {
                mul[perm[x]][perm[y]] = perm[self.mul[x][y]];
                div[perm[x]][perm[y]] = perm[self.div[x][y]];
            }
        }
        FiniteMagma { size: n, mul, div }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("magma serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, Error> {
        serde_json::from_str(s).map_err(|e| Error::InvalidTable(e.to_string()))
    }
}

/// Order-theoretic data derived from a magma: the `⊓` table, the relation
/// `x ≤ y ⟺ x = y⊓x`, and exhaustively checked partial-order diagnostics.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DerivedStructure {
    pub sqcap: Vec<Vec<Element>>,
    pub leq: Vec<Vec<bool>>,
    pub is_reflexive: bool,
    pub is_antisymmetric: bool,
    pub is_transitive: bool,
    /// First witness of a failed order property, in the check order
    /// reflexive → antisymmetric → transitive. Reflexivity failures are
    /// reported as `(x,x,x)` and antisymmetry failures as `(x,y,x)`.
    pub violation_witness: Option<(Element, Element, Element)>,
}

impl DerivedStructure {
    pub fn is_partial_order(&self) -> bool {
        self.is_reflexive && self.is_antisymmetric && self.is_transitive
    }

    /// `x ≤ y`
    pub fn le(&self, x: Element, y: Element) -> bool {
        self.leq[x][y]
    }

    /// True when `≤` relates no two distinct elements.
    pub fn leq_is_equality(&self) -> bool {
        let n = self.leq.len();
        (0..n).all(|x| (0..n).all(|y| self.leq[x][y] == (x == y)))
    }
}

/// Computes the `⊓` table and the relation defined by `x ≤ y ⟺ x = y⊓x`,
/// together with partial-order diagnostics.
pub fn derive(m: &FiniteMagma) -> DerivedStructure {
    let n = m.size();
    let mut sqcap = vec![vec![0; n]; n];
    for x in 0..n {
        for y in 0..n {
            sqcap[x][y] = m.sqcap(x, y);
        }
    }
    let mut leq = vec![vec![false; n]; n];
    for x in 0..n {
        for y in 0..n {
            leq[x][y] = x == sqcap[y][x];
        }
    }

    let mut witness = None;
    let is_reflexive = match (0..n).find(|&x| !leq[x][x]) {
        Some(x) => {
            witness = Some((x, x, x));
            false
        }
        None => true,
    };
    let mut is_antisymmetric = true;
    'anti: for x in 0..n {
        for y in 0..n {
            if x != y && leq[x][y] && leq[y][x] {
                is_antisymmetric = false;
                witness = witness.or(Some((x, y, x)));
                break 'anti;
            }
        }
    }
    let mut is_transitive = true;
    'trans: for x in 0..n {
        for y in 0..n {
            if !leq[x][y] {
                continue;
            }
            for z in 0..n {
                if leq[y][z] && !leq[x][z] {
                    is_transitive = false;
                    witness = witness.or(Some((x, y, z)));
                    break 'trans;
                }
            }
        }
    }

    DerivedStructure {
        sqcap,
        leq,
        is_reflexive,
        is_antisymmetric,
        is_transitive,
        violation_witness: witness,
    }
}

/// The two-sided order variant `x ≤' y ⟺ x⊓y = x = y⊓x`.
pub fn leq_two_sided(d: &DerivedStructure, x: Element, y: Element) -> bool {
    d.sqcap[x][y] == x && d.sqcap[y][x] == x
}
