//! Limit search by universal property.
//!
//! A limit is never trusted from its construction: [`find_limit`] scans
//! candidate apexes in canonical order (least object id, then
//! lexicographically least legs) and returns the first cone whose universal
//! property verifies against every object and every competing cone of the
//! category. Missing limits are reported as `None`, not errors, because
//! user-supplied categories need not be finitely complete.

use super::{FiniteCategory, MorId, ObjId};

/// The shape of a limit request.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Diagram {
    Terminal,
    /// Binary product of two objects.
    Product(ObjId, ObjId),
    /// Pullback of the cospan `left: A -> C <- B :right`.
    Pullback { left: MorId, right: MorId },
}

/// A verified limit cone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LimitCone {
    pub apex: ObjId,
    /// Projections, in the order of the diagram's feet (empty for terminal).
    pub legs: Vec<MorId>,
    pub diagram: Diagram,
}

/// Competing cones over the diagram with the given apex.
fn cones_from(cat: &FiniteCategory, x: ObjId, diagram: &Diagram) -> Vec<Vec<MorId>> {
    match *diagram {
        Diagram::Terminal => vec![vec![]],
        Diagram::Product(a, b) => {
            let mut out = Vec::new();
            for &x1 in cat.hom(x, a) {
                for &x2 in cat.hom(x, b) {
                    out.push(vec![x1, x2]);
                }
            }
            out
        }
        Diagram::Pullback { left, right } => {
            let a = cat.src(left);
            let b = cat.src(right);
            let mut out = Vec::new();
            for &x1 in cat.hom(x, a) {
                for &x2 in cat.hom(x, b) {
                    if cat.compose(x1, left) == cat.compose(x2, right) {
                        out.push(vec![x1, x2]);
                    }
                }
            }
            out
        }
    }
}

/// Does the candidate cone satisfy the full universal property?
pub fn verify_limit(cat: &FiniteCategory, cone: &LimitCone) -> bool {
    match cone.diagram {
        Diagram::Terminal => {
            if !cone.legs.is_empty() {
                return false;
            }
        }
        Diagram::Product(a, b) => {
            if cone.legs.len() != 2
                || cat.src(cone.legs[0]) != cone.apex
                || cat.tgt(cone.legs[0]) != a
                || cat.src(cone.legs[1]) != cone.apex
                || cat.tgt(cone.legs[1]) != b
            {
                return false;
            }
        }
        Diagram::Pullback { left, right } => {
            if cat.tgt(left) != cat.tgt(right) {
                return false;
            }
            if cone.legs.len() != 2
                || cat.src(cone.legs[0]) != cone.apex
                || cat.tgt(cone.legs[0]) != cat.src(left)
                || cat.src(cone.legs[1]) != cone.apex
                || cat.tgt(cone.legs[1]) != cat.src(right)
            {
                return false;
            }
            if cat.compose(cone.legs[0], left) != cat.compose(cone.legs[1], right) {
                return false;
            }
        }
    }
    for x in cat.obj_ids() {
        for competing in cones_from(cat, x, &cone.diagram) {
            let mut mediators = 0;
            for &u in cat.hom(x, cone.apex) {
                let factors = cone
                    .legs
                    .iter()
                    .zip(&competing)
                    .all(|(&leg, &c)| cat.compose(u, leg) == Ok(c));
                if factors {
                    mediators += 1;
                    if mediators > 1 {
                        return false;
                    }
                }
            }
            if mediators != 1 {
                return false;
            }
        }
    }
    true
}

/// Searches for the limit of `diagram`, returning the canonical cone or
/// `None` when the category lacks it.
pub fn find_limit(cat: &FiniteCategory, diagram: Diagram) -> Option<LimitCone> {
    // Cone counts per test object prune the apex candidates: a limit apex P
    // must have |hom(X, P)| equal to the number of competing cones from X.
    let counts: Vec<usize> =
        cat.obj_ids().map(|x| cones_from(cat, x, &diagram).len()).collect();
    for apex in cat.obj_ids() {
        if cat
            .obj_ids()
            .any(|x| cat.hom(x, apex).len() != counts[x.0 as usize])
        {
            continue;
        }
        let leg_choices: Vec<Vec<MorId>> = cones_from(cat, apex, &diagram);
        for legs in leg_choices {
            let cone = LimitCone { apex, legs, diagram };
            if verify_limit(cat, &cone) {
                return Some(cone);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finset::{finset_category, FinFunction};

    #[test]
    fn product_1_2_in_finset2() {
        let u = finset_category(2).unwrap();
        let one = u.object(1);
        let two = u.object(2);
        let cone = find_limit(&u.cat, Diagram::Product(one, two)).unwrap();
        assert_eq!(cone.apex, two);
        assert_eq!(u.function_of(cone.legs[0]), FinFunction::from_table(2, 1, &[1, 1]));
        assert_eq!(u.function_of(cone.legs[1]), FinFunction::identity(2));
        assert!(verify_limit(&u.cat, &cone));
    }

    #[test]
    fn product_2_2_is_absent_in_finset2() {
        let u = finset_category(2).unwrap();
        let two = u.object(2);
        assert!(find_limit(&u.cat, Diagram::Product(two, two)).is_none());
    }

    #[test]
    fn pullback_of_collapse_along_point() {
        let u = finset_category(2).unwrap();
        let f = u.morphism(&FinFunction::from_table(2, 1, &[1, 1]));
        let g = u.morphism(&FinFunction::identity(1));
        let cone = find_limit(&u.cat, Diagram::Pullback { left: f, right: g }).unwrap();
        assert_eq!(cone.apex, u.object(2));
        assert_eq!(u.function_of(cone.legs[0]), FinFunction::identity(2));
        assert_eq!(u.function_of(cone.legs[1]), FinFunction::from_table(2, 1, &[1, 1]));
    }

    #[test]
    fn terminal_in_finset_is_singleton() {
        let u = finset_category(2).unwrap();
        let cone = find_limit(&u.cat, Diagram::Terminal).unwrap();
        assert_eq!(cone.apex, u.object(1));
    }

    #[test]
    fn chain3_products_are_meets() {
        let c = super::super::tests::chain3();
        let cone = find_limit(&c, Diagram::Product(ObjId(1), ObjId(2))).unwrap();
        assert_eq!(cone.apex, ObjId(1)); // b /\ c = b
        let cone = find_limit(&c, Diagram::Product(ObjId(0), ObjId(2))).unwrap();
        assert_eq!(cone.apex, ObjId(0)); // a /\ c = a
    }
}
