//! Structural analysis of right-residuated magmas: `⊓`-closed subsets and
//! their reduct classification, principal order ideals, unitality and
//! extremal elements.
//!
//! Everything here presupposes a right-residuated magma whose order comes
//! from `x ≤ y ⟺ x = y⊓x`; operations check that precondition and refuse
//! other inputs.

use serde::Serialize;

use crate::axioms::{self, unital_element};
use crate::magma::{derive, DerivedStructure, Element, FiniteMagma};
use crate::Error;

/// A subset of a magma's carrier that is closed under `⊓`, suitable for
/// reduct analysis. Construction checks closure.
#[derive(Debug, Clone)]
pub struct SubsetView<'a> {
    parent: &'a FiniteMagma,
    members: Vec<Element>,
}

impl<'a> SubsetView<'a> {
    pub fn new(parent: &'a FiniteMagma, members: Vec<Element>) -> Result<Self, Error> {
        let mut members = members;
        members.sort_unstable();
        members.dedup();
        for &x in &members {
            if x >= parent.size() {
                return Err(Error::Precondition(format!(
                    "subset member {x} is outside the carrier"
                )));
            }
            for &y in &members {
                let s = parent.sqcap(x, y);
                if members.binary_search(&s).is_err() {
                    return Err(Error::Precondition(format!(
                        "subset is not closed under ⊓: {x}⊓{y} = {s} escapes"
                    )));
                }
            }
        }
        Ok(SubsetView { parent, members })
    }

    pub fn parent(&self) -> &FiniteMagma {
        self.parent
    }

    pub fn members(&self) -> &[Element] {
        &self.members
    }

    pub fn contains(&self, x: Element) -> bool {
        self.members.binary_search(&x).is_ok()
    }
}

/// Flags for the `⊓`-reduct of a closed subset, each computed independently
/// by exhaustive evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ReductClassification {
    /// idempotent semigroup satisfying `(x⊓y)⊓z = (x⊓z)⊓y`
    pub is_lnb: bool,
    /// `⊓` associative on the subset
    pub is_semigroup: bool,
    pub satisfies_n8_n9: bool,
    /// associative, commutative, idempotent
    pub is_semilattice: bool,
    pub is_commutative: bool,
    /// N1 on the subset together with `x⊓y ≤ y`
    pub satisfies_n1_and_lower_bound: bool,
}

/// Classifies the `⊓`-reduct of a closed subset, with the order inherited
/// from the parent.
pub fn classify_reduct(b: &SubsetView<'_>) -> ReductClassification {
    let m = b.parent();
    let d = derive(m);
    let sq = |x: Element, y: Element| d.sqcap[x][y];
    let e = b.members();

    let associative = e.iter().all(|&x| {
        e.iter()
            .all(|&y| e.iter().all(|&z| sq(sq(x, y), z) == sq(x, sq(y, z))))
    });
    let idempotent = e.iter().all(|&x| sq(x, x) == x);
    let left_normal = e.iter().all(|&x| {
        e.iter()
            .all(|&y| e.iter().all(|&z| sq(sq(x, y), z) == sq(sq(x, z), y)))
    });
    let commutative = e.iter().all(|&x| e.iter().all(|&y| sq(x, y) == sq(y, x)));
    let n8 = e
        .iter()
        .all(|&x| e.iter().all(|&y| sq(x, sq(y, x)) == sq(x, y)));
    let n9 = e.iter().all(|&x| {
        e.iter()
            .all(|&y| e.iter().all(|&z| sq(sq(x, sq(y, z)), z) == sq(x, sq(y, z))))
    });
    let n1 = e
        .iter()
        .all(|&x| e.iter().all(|&y| sq(sq(x, y), x) == sq(x, y)));
    let lower_bound = e.iter().all(|&x| e.iter().all(|&y| d.leq[sq(x, y)][y]));

    ReductClassification {
        is_lnb: associative && idempotent && left_normal,
        is_semigroup: associative,
        satisfies_n8_n9: n8 && n9,
        is_semilattice: associative && commutative && idempotent,
        is_commutative: commutative,
        satisfies_n1_and_lower_bound: n1 && lower_bound,
    }
}

fn require_right_residuated(m: &FiniteMagma, op: &str) -> Result<DerivedStructure, Error> {
    let d = derive(m);
    if !axioms::is_right_residuated(m, &d) {
        return Err(Error::Precondition(format!(
            "{op} requires a right-residuated magma with the derived order"
        )));
    }
    Ok(d)
}

/// The principal order ideal `(a] = {x : x ≤ a}`, computed both from the
/// order and as `{a⊓x : x ∈ A}`; the two must coincide and the result must
/// be closed under `⊓`.
pub fn principal_ideal(m: &FiniteMagma, a: Element) -> Result<SubsetView<'_>, Error> {
    let d = require_right_residuated(m, "principal_ideal")?;
    if a >= m.size() {
        return Err(Error::Precondition(format!(
            "element {a} is outside the carrier"
        )));
    }
    let by_order: Vec<Element> = m.elements().filter(|&x| d.leq[x][a]).collect();
    let mut by_term: Vec<Element> = m.elements().map(|x| d.sqcap[a][x]).collect();
    by_term.sort_unstable();
    by_term.dedup();
    if by_order != by_term {
        return Err(Error::Inconsistency(format!(
            "principal ideal definitions disagree at {a}: {by_order:?} vs {by_term:?}"
        )));
    }
    SubsetView::new(m, by_order).map_err(|_| {
        Error::TheoremViolation(format!("principal ideal ({a}] is not closed under ⊓"))
    })
}

/// All `⊓`-closed subsets of the carrier, obtained by closing every
/// nonempty subset and deduplicating. Exponential in the carrier size,
/// which is fine at desk scale.
pub fn sqcap_closed_subsets(m: &FiniteMagma) -> Vec<Vec<Element>> {
    let n = m.size();
    let d = derive(m);
    let mut seen = std::collections::BTreeSet::new();
    for mask in 1u64..(1 << n) {
        let mut set: Vec<Element> = (0..n).filter(|&x| mask & (1 << x) != 0).collect();
        loop {
            let mut grew = false;
            let snapshot = set.clone();
            for &x in &snapshot {
                for &y in &snapshot {
                    let s = d.sqcap[x][y];
                    if !set.contains(&s) {
                        set.push(s);
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }
        set.sort_unstable();
        seen.insert(set);
    }
    seen.into_iter().collect()
}

/// Unitality and extremal-element diagnostics.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnitalityRecord {
    pub is_unital: bool,
    /// The constant value of `x/x` when the magma is unital.
    pub unit: Option<Element>,
    pub left_identities: Vec<Element>,
    pub maximal_elements: Vec<Element>,
    pub top: Option<Element>,
    pub bottom: Option<Element>,
}

/// Computes the unitality record and verifies, on the fly, every general
/// fact about `x/x`, tops and bottoms that holds in right-residuated magmas
/// with this order. Violations are reported as theorem violations since
/// they cannot arise from valid input.
pub fn unitality(m: &FiniteMagma) -> Result<UnitalityRecord, Error> {
    let d = require_right_residuated(m, "unitality")?;
    let n = m.size();

    let cond_diag_constant = (1..n).all(|x| m.div(x, x) == m.div(0, 0));
    let cond_diag_identity = (0..n).all(|x| (0..n).all(|y| m.mul(m.div(x, x), y) == y));
    let left_identities: Vec<Element> = (0..n)
        .filter(|&e| (0..n).all(|y| m.mul(e, y) == y))
        .collect();
    let cond_left_identity = !left_identities.is_empty();
    if cond_diag_constant != cond_diag_identity || cond_diag_identity != cond_left_identity {
        return Err(Error::TheoremViolation(format!(
            "unitality conditions split on {}: x/x constant = {cond_diag_constant}, \
             (x/x)y = y = {cond_diag_identity}, left identity exists = {cond_left_identity}",
            m.to_json()
        )));
    }
    let is_unital = cond_diag_constant;
    let unit = is_unital.then(|| m.div(0, 0));

    let maximal_elements: Vec<Element> = (0..n)
        .filter(|&x| (0..n).all(|y| y == x || !d.leq[x][y]))
        .collect();
    let top = (0..n).find(|&t| (0..n).all(|x| d.leq[x][t]));
    let bottom = (0..n).find(|&b| (0..n).all(|x| d.leq[b][x]));

    // x/x is maximal for every x
    for x in 0..n {
        if !maximal_elements.contains(&m.div(x, x)) {
            return Err(Error::TheoremViolation(format!(
                "{x}/{x} = {} is not maximal",
                m.div(x, x)
            )));
        }
    }
    // (x/x)y/y = x/x
    for x in 0..n {
        for y in 0..n {
            if m.div(m.mul(m.div(x, x), y), y) != m.div(x, x) {
                return Err(Error::TheoremViolation(format!(
                    "(x/x)y/y = x/x fails at x={x}, y={y}"
                )));
            }
        }
    }
    if let Some(u) = unit {
        // the unit is the maximum left identity, and finiteness makes it unique
        if !left_identities.contains(&u) || left_identities.iter().any(|&e| !d.leq[e][u]) {
            return Err(Error::TheoremViolation(format!(
                "unit {u} is not the maximum left identity among {left_identities:?}"
            )));
        }
        if left_identities.len() != 1 {
            return Err(Error::TheoremViolation(format!(
                "finite unital magma has several left identities: {left_identities:?}"
            )));
        }
    }
    if top.is_some() {
        if !is_unital {
            return Err(Error::TheoremViolation(
                "top element exists but the magma is not unital".into(),
            ));
        }
        let lower_bound = (0..n)
            .all(|x| (0..n).all(|y| d.leq[d.sqcap[x][y]][x] && d.leq[d.sqcap[x][y]][y]));
        if !lower_bound {
            return Err(Error::TheoremViolation(
                "top element exists but x⊓y is not a lower bound of x and y".into(),
            ));
        }
        if bottom.is_none() {
            return Err(Error::TheoremViolation(
                "finite magma with a top element has no bottom".into(),
            ));
        }
    }
    if let Some(b) = bottom {
        if top != Some(m.div(b, b)) {
            return Err(Error::TheoremViolation(format!(
                "bottom {b} exists but {b}/{b} = {} is not the top {top:?}",
                m.div(b, b)
            )));
        }
    }

    Ok(UnitalityRecord {
        is_unital,
        unit,
        left_identities,
        maximal_elements,
        top,
        bottom,
    })
}

/// Verdict for "the left unit is the top element iff `⊓` is commutative",
/// together with the subalgebra facts about the unit's principal ideal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TopCommutativityReport {
    pub unit: Element,
    pub unit_is_top: bool,
    pub sqcap_commutative: bool,
    pub biimplication_holds: bool,
    /// First commutativity counterexample when `⊓` is not commutative.
    pub witness: Option<(Element, Element)>,
    pub unit_ideal_closed_under_ops: bool,
    pub unit_ideal_semilattice: bool,
}

impl TopCommutativityReport {
    pub fn holds(&self) -> bool {
        self.biimplication_holds && self.unit_ideal_closed_under_ops && self.unit_ideal_semilattice
    }
}

/// Checks, on a unital narhoop, that the unit is the top element exactly
/// when `⊓` is commutative, and that the unit's principal ideal is closed
/// under both operations with a semilattice reduct.
pub fn check_top_iff_commutative(m: &FiniteMagma) -> Result<TopCommutativityReport, Error> {
    let d = derive(m);
    if !axioms::is_narhoop(m, &d) {
        return Err(Error::Precondition(
            "check_top_iff_commutative requires a narhoop".into(),
        ));
    }
    let Some(unit) = unital_element(m) else {
        return Err(Error::Precondition(
            "check_top_iff_commutative requires a unital narhoop".into(),
        ));
    };
    let n = m.size();
    let unit_is_top = (0..n).all(|x| d.leq[x][unit]);
    let mut witness = None;
    'comm: for x in 0..n {
        for y in 0..n {
            if d.sqcap[x][y] != d.sqcap[y][x] {
                witness = Some((x, y));
                break 'comm;
            }
        }
    }
    let sqcap_commutative = witness.is_none();

    let ideal = principal_ideal(m, unit)?;
    let unit_ideal_closed_under_ops = ideal.members().iter().all(|&a| {
        ideal
            .members()
            .iter()
            .all(|&b| ideal.contains(m.mul(a, b)) && ideal.contains(m.div(a, b)))
    });
    let unit_ideal_semilattice = classify_reduct(&ideal).is_semilattice;

    Ok(TopCommutativityReport {
        unit,
        unit_is_top,
        sqcap_commutative,
        biimplication_holds: unit_is_top == sqcap_commutative,
        witness,
        unit_ideal_closed_under_ops,
        unit_ideal_semilattice,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g2() -> FiniteMagma {
        FiniteMagma::from_tables([[0, 0], [0, 1]], [[1, 0], [1, 1]])
    }

    fn z2_xor() -> FiniteMagma {
        FiniteMagma::from_tables([[0, 1], [1, 0]], [[0, 1], [1, 0]])
    }

    fn a3() -> FiniteMagma {
        FiniteMagma::from_tables([[0, 1], [1, 0]], [[0, 0], [1, 0]])
    }

    fn point() -> FiniteMagma {
        FiniteMagma::from_tables([[0]], [[0]])
    }

    #[test]
    fn principal_ideals_of_g2() {
        assert_eq!(principal_ideal(&g2(), 1).unwrap().members(), &[0, 1]);
        assert_eq!(principal_ideal(&g2(), 0).unwrap().members(), &[0]);
    }

    #[test]
    fn principal_ideal_of_right_quasigroup_is_singleton() {
        assert_eq!(principal_ideal(&z2_xor(), 0).unwrap().members(), &[0]);
        assert_eq!(principal_ideal(&z2_xor(), 1).unwrap().members(), &[1]);
    }

    #[test]
    fn reduct_of_g2_is_semilattice() {
        let m = g2();
        let b = SubsetView::new(&m, vec![0, 1]).unwrap();
        let r = classify_reduct(&b);
        assert!(r.is_lnb && r.is_semigroup && r.satisfies_n8_n9);
        assert!(r.is_semilattice && r.is_commutative && r.satisfies_n1_and_lower_bound);
    }

    #[test]
    fn reduct_of_z2_xor_is_left_zero_band() {
        // x⊓y = x: a left-zero band satisfies the left normal identity but
        // is not commutative on two elements
        let m = z2_xor();
        let b = SubsetView::new(&m, vec![0, 1]).unwrap();
        let r = classify_reduct(&b);
        assert!(r.is_lnb && r.is_semigroup && r.satisfies_n8_n9);
        assert!(!r.is_semilattice && !r.is_commutative && !r.satisfies_n1_and_lower_bound);
    }

    #[test]
    fn singleton_reduct_has_all_flags() {
        let m = g2();
        let b = SubsetView::new(&m, vec![0]).unwrap();
        let r = classify_reduct(&b);
        assert!(
            r.is_lnb
                && r.is_semigroup
                && r.satisfies_n8_n9
                && r.is_semilattice
                && r.is_commutative
                && r.satisfies_n1_and_lower_bound
        );
    }

    #[test]
    fn subset_view_rejects_non_closed() {
        // here sqcap(0,0) = mul[div[0][0]][0] = mul[0][0] = 1, so {0} is not closed
        let m = FiniteMagma::from_tables([[1, 1], [1, 1]], [[0, 0], [0, 0]]);
        assert!(SubsetView::new(&m, vec![0]).is_err());
    }

    #[test]
    fn unitality_of_g2() {
        let r = unitality(&g2()).unwrap();
        assert!(r.is_unital);
        assert_eq!(r.unit, Some(1));
        assert_eq!(r.left_identities, vec![1]);
        assert_eq!(r.top, Some(1));
        assert_eq!(r.bottom, Some(0));
    }

    #[test]
    fn unitality_of_z2_xor() {
        let r = unitality(&z2_xor()).unwrap();
        assert!(r.is_unital);
        assert_eq!(r.unit, Some(0));
        assert_eq!(r.left_identities, vec![0]);
        assert_eq!(r.top, None);
        assert_eq!(r.bottom, None);
        assert_eq!(r.maximal_elements, vec![0, 1]);
    }

    #[test]
    fn unitality_of_point() {
        let r = unitality(&point()).unwrap();
        assert!(r.is_unital);
        assert_eq!(r.unit, Some(0));
        assert_eq!(r.top, Some(0));
        assert_eq!(r.bottom, Some(0));
    }

    #[test]
    fn unitality_rejects_non_residuated() {
        assert!(matches!(unitality(&a3()), Err(Error::Precondition(_))));
    }

    #[test]
    fn top_iff_commutative_on_fixtures() {
        let g = check_top_iff_commutative(&g2()).unwrap();
        assert!(g.unit_is_top && g.sqcap_commutative && g.holds());

        let z = check_top_iff_commutative(&z2_xor()).unwrap();
        assert!(!z.unit_is_top && !z.sqcap_commutative && z.holds());
        assert_eq!(z.witness, Some((0, 1)));

        let p = check_top_iff_commutative(&point()).unwrap();
        assert!(p.unit_is_top && p.sqcap_commutative && p.holds());
    }

    #[test]
    fn top_iff_commutative_rejects_non_unital() {
        // left-zero right quasigroup: a narhoop with x/x = x, not unital
        let m = FiniteMagma::from_tables([[0, 0], [1, 1]], [[0, 0], [1, 1]]);
        assert!(matches!(
            check_top_iff_commutative(&m),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn closed_subsets_of_fixtures() {
        assert_eq!(
            sqcap_closed_subsets(&g2()),
            vec![vec![0], vec![0, 1], vec![1]]
        );
        assert_eq!(
            sqcap_closed_subsets(&z2_xor()),
            vec![vec![0], vec![0, 1], vec![1]]
        );
    }
}
