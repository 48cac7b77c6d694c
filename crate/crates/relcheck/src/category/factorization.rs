//! Orthogonal factorization systems on table categories.
//!
//! A factorization system is two morphism classes `(E, M)` such that every
//! morphism factors as an `E`-arrow followed by an `M`-arrow, uniquely up to
//! unique isomorphism, with unique diagonal fillers in every lifting square.
//! [`check_factorization_system`] decides each clause independently —
//! existence, uniqueness, orthogonality, closure, pullback-stability of `E`,
//! properness — and attaches a concrete witness to every failure.

use super::{find_limit, CatError, Diagram, FiniteCategory, MorId};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// A lifting square: `m . top = bottom . e` with `e` on the left edge and
/// `m` on the right edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LiftingSquare {
    pub e: MorId,
    pub m: MorId,
    pub top: MorId,
    pub bottom: MorId,
}

impl LiftingSquare {
    pub fn commutes(&self, cat: &FiniteCategory) -> bool {
        cat.compose(self.top, self.m) == cat.compose(self.e, self.bottom)
    }
}

/// A validated factorization system on a [`FiniteCategory`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorizationSystem {
    pub left: BTreeSet<MorId>,
    pub right: BTreeSet<MorId>,
    /// Canonical factorization `f -> (e, m)` with `m . e = f`.
    pub chosen: BTreeMap<MorId, (MorId, MorId)>,
}

impl FactorizationSystem {
    /// Builds the system and validates it; any pinned factorizations in
    /// `pins` override the canonical search.
    pub fn new(
        cat: &FiniteCategory,
        left: BTreeSet<MorId>,
        right: BTreeSet<MorId>,
        pins: BTreeMap<MorId, (MorId, MorId)>,
    ) -> Result<Self, CatError> {
        let report = check_factorization_system(cat, &left, &right);
        if !report.passed() {
            let failed: Vec<String> = report
                .clauses
                .iter()
                .filter(|c| !c.ok)
                .map(|c| c.kind.to_string())
                .collect();
            return Err(CatError::Factorization(format!(
                "validation failed: {}",
                failed.join(", ")
            )));
        }
        let mut chosen = BTreeMap::new();
        for f in cat.mor_ids() {
            if let Some(&(e, m)) = pins.get(&f) {
                if cat.compose(e, m) != Ok(f) || !left.contains(&e) || !right.contains(&m) {
                    return Err(CatError::Factorization(format!(
                        "pinned factorization of {f} does not recompose"
                    )));
                }
                chosen.insert(f, (e, m));
            } else {
                let (e, m) = canonical_factorization(cat, &left, &right, f)
                    .ok_or_else(|| CatError::Factorization(format!("no factorization of {f}")))?;
                chosen.insert(f, (e, m));
            }
        }
        Ok(FactorizationSystem { left, right, chosen })
    }

    pub fn in_left(&self, f: MorId) -> bool {
        self.left.contains(&f)
    }

    pub fn in_right(&self, f: MorId) -> bool {
        self.right.contains(&f)
    }
}

/// Lexicographically least `(e, m)` with `m . e = f`, `e` in `E`, `m` in `M`.
fn canonical_factorization(
    cat: &FiniteCategory,
    left: &BTreeSet<MorId>,
    right: &BTreeSet<MorId>,
    f: MorId,
) -> Option<(MorId, MorId)> {
    for &e in left {
        if cat.src(e) != cat.src(f) {
            continue;
        }
        for &m in right {
            if cat.src(m) != cat.tgt(e) || cat.tgt(m) != cat.tgt(f) {
                continue;
            }
            if cat.compose(e, m) == Ok(f) {
                return Some((e, m));
            }
        }
    }
    None
}

/// Returns the chosen factorization of `f`.
pub fn factorize(
    cat: &FiniteCategory,
    fs: &FactorizationSystem,
    f: MorId,
) -> Result<(MorId, MorId), CatError> {
    if f.0 as usize >= cat.morphism_count() {
        return Err(CatError::UnknownMorphism(f));
    }
    fs.chosen
        .get(&f)
        .copied()
        .ok_or_else(|| CatError::Factorization(format!("no chosen factorization for {f}")))
}

/// The unique diagonal filler of a lifting square, found by exhaustive scan.
pub fn fill_diagonal(
    cat: &FiniteCategory,
    fs: &FactorizationSystem,
    square: &LiftingSquare,
) -> Result<MorId, CatError> {
    if !fs.in_left(square.e) || !fs.in_right(square.m) {
        return Err(CatError::Factorization(format!(
            "square edges ({}, {}) are not an (E, M) pair",
            square.e, square.m
        )));
    }
    if !square.commutes(cat) {
        return Err(CatError::Factorization("lifting square boundary does not commute".into()));
    }
    let fillers = diagonal_fillers(cat, square);
    match fillers.len() {
        1 => Ok(fillers[0]),
        0 => Err(CatError::NoFiller { e: square.e, m: square.m }),
        _ => Err(CatError::AmbiguousFiller { e: square.e, m: square.m }),
    }
}

fn diagonal_fillers(cat: &FiniteCategory, square: &LiftingSquare) -> Vec<MorId> {
    cat.hom(cat.tgt(square.e), cat.src(square.m))
        .iter()
        .copied()
        .filter(|&d| {
            cat.compose(square.e, d) == Ok(square.top)
                && cat.compose(d, square.m) == Ok(square.bottom)
        })
        .collect()
}

/// The clauses a factorization system must satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FsClauseKind {
    FactorizationExists,
    FactorizationUnique,
    Orthogonality,
    LeftClosed,
    RightClosed,
    LeftStable,
    ProperLeft,
    ProperRight,
}

impl fmt::Display for FsClauseKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FsClauseKind::FactorizationExists => "factorization-existence",
            FsClauseKind::FactorizationUnique => "factorization-uniqueness",
            FsClauseKind::Orthogonality => "orthogonality",
            FsClauseKind::LeftClosed => "left-class-closure",
            FsClauseKind::RightClosed => "right-class-closure",
            FsClauseKind::LeftStable => "left-class-pullback-stability",
            FsClauseKind::ProperLeft => "properness-left-epi",
            FsClauseKind::ProperRight => "properness-right-mono",
        };
        f.write_str(s)
    }
}

/// Witness data for a failed clause.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FsWitness {
    Morphism(MorId),
    /// Every failing morphism of a per-morphism clause, in id order.
    Morphisms(Vec<MorId>),
    Pair(MorId, MorId),
    Square { square: LiftingSquare, fillers: usize },
    Factorizations { f: MorId, first: (MorId, MorId), second: (MorId, MorId), isos: usize },
    PulledBack { e: MorId, along: MorId, leg: MorId },
}

impl FsWitness {
    pub fn render(&self, cat: &FiniteCategory) -> String {
        match self {
            FsWitness::Morphism(f) => format!("morphism {}", cat.morphism_name(*f)),
            FsWitness::Morphisms(fs) => format!(
                "morphisms {}",
                fs.iter().map(|&f| cat.morphism_name(f)).collect::<Vec<_>>().join(" ")
            ),
            FsWitness::Pair(f, g) => {
                format!("pair ({}, {})", cat.morphism_name(*f), cat.morphism_name(*g))
            }
            FsWitness::Square { square, fillers } => format!(
                "square e={} m={} top={} bottom={} with {} fillers",
                cat.morphism_name(square.e),
                cat.morphism_name(square.m),
                cat.morphism_name(square.top),
                cat.morphism_name(square.bottom),
                fillers
            ),
            FsWitness::Factorizations { f, first, second, isos } => format!(
                "morphism {} factors as ({}, {}) and ({}, {}) with {} connecting isos",
                cat.morphism_name(*f),
                cat.morphism_name(first.0),
                cat.morphism_name(first.1),
                cat.morphism_name(second.0),
                cat.morphism_name(second.1),
                isos
            ),
            FsWitness::PulledBack { e, along, leg } => format!(
                "E-arrow {} pulled back along {} gives leg {} outside E",
                cat.morphism_name(*e),
                cat.morphism_name(*along),
                cat.morphism_name(*leg)
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FsClause {
    pub kind: FsClauseKind,
    pub ok: bool,
    pub witness: Option<FsWitness>,
}

/// Per-clause verdicts for a candidate `(E, M)` pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FsReport {
    pub clauses: Vec<FsClause>,
}

impl FsReport {
    pub fn passed(&self) -> bool {
        self.clauses.iter().all(|c| c.ok)
    }

    pub fn clause(&self, kind: FsClauseKind) -> &FsClause {
        self.clauses.iter().find(|c| c.kind == kind).expect("clause present")
    }

    pub fn failed_kinds(&self) -> Vec<FsClauseKind> {
        self.clauses.iter().filter(|c| !c.ok).map(|c| c.kind).collect()
    }

    pub fn render(&self, cat: &FiniteCategory) -> String {
        let mut out = String::new();
        for c in &self.clauses {
            out.push_str(&format!(
                "{}: {}{}\n",
                c.kind,
                if c.ok { "pass" } else { "fail" },
                c.witness
                    .as_ref()
                    .map(|w| format!(" ({})", w.render(cat)))
                    .unwrap_or_default()
            ));
        }
        out
    }
}

fn all_factorizations(
    cat: &FiniteCategory,
    left: &BTreeSet<MorId>,
    right: &BTreeSet<MorId>,
    f: MorId,
) -> Vec<(MorId, MorId)> {
    let mut out = Vec::new();
    for &e in left {
        if cat.src(e) != cat.src(f) {
            continue;
        }
        for &m in right {
            if cat.src(m) != cat.tgt(e) || cat.tgt(m) != cat.tgt(f) {
                continue;
            }
            if cat.compose(e, m) == Ok(f) {
                out.push((e, m));
            }
        }
    }
    out
}

/// Decides every clause of the factorization-system axioms for `(E, M)`,
/// with independent verdicts and witnesses.
pub fn check_factorization_system(
    cat: &FiniteCategory,
    left: &BTreeSet<MorId>,
    right: &BTreeSet<MorId>,
) -> FsReport {
    let mut clauses = Vec::new();

    // Existence.
    let mut witness = None;
    for f in cat.mor_ids() {
        if canonical_factorization(cat, left, right, f).is_none() {
            witness = Some(FsWitness::Morphism(f));
            break;
        }
    }
    clauses.push(FsClause {
        kind: FsClauseKind::FactorizationExists,
        ok: witness.is_none(),
        witness,
    });

    // Uniqueness up to unique isomorphism.
    let mut witness = None;
    'uniq: for f in cat.mor_ids() {
        let facts = all_factorizations(cat, left, right, f);
        for (i, &(e1, m1)) in facts.iter().enumerate() {
            for &(e2, m2) in &facts[i..] {
                let isos = cat
                    .isos_between(cat.tgt(e1), cat.tgt(e2))
                    .into_iter()
                    .filter(|&j| cat.compose(e1, j) == Ok(e2) && cat.compose(j, m2) == Ok(m1))
                    .count();
                if isos != 1 {
                    witness = Some(FsWitness::Factorizations {
                        f,
                        first: (e1, m1),
                        second: (e2, m2),
                        isos,
                    });
                    break 'uniq;
                }
            }
        }
    }
    clauses.push(FsClause {
        kind: FsClauseKind::FactorizationUnique,
        ok: witness.is_none(),
        witness,
    });

    // Orthogonality: exactly one filler on every lifting square.
    let mut witness = None;
    'orth: for &e in left {
        for &m in right {
            for &top in cat.hom(cat.src(e), cat.src(m)) {
                for &bottom in cat.hom(cat.tgt(e), cat.tgt(m)) {
                    let square = LiftingSquare { e, m, top, bottom };
                    if !square.commutes(cat) {
                        continue;
                    }
                    let fillers = diagonal_fillers(cat, &square).len();
                    if fillers != 1 {
                        witness = Some(FsWitness::Square { square, fillers });
                        break 'orth;
                    }
                }
            }
        }
    }
    clauses.push(FsClause { kind: FsClauseKind::Orthogonality, ok: witness.is_none(), witness });

    // Closure under composition and isomorphisms, for each class.
    for (kind, class) in
        [(FsClauseKind::LeftClosed, left), (FsClauseKind::RightClosed, right)]
    {
        let mut witness = None;
        for f in cat.mor_ids() {
            if cat.is_iso(f) && !class.contains(&f) {
                witness = Some(FsWitness::Morphism(f));
                break;
            }
        }
        if witness.is_none() {
            'comp: for &f in class {
                for &g in class {
                    if cat.tgt(f) == cat.src(g) {
                        let h = cat.compose(f, g).expect("composable");
                        if !class.contains(&h) {
                            witness = Some(FsWitness::Pair(f, g));
                            break 'comp;
                        }
                    }
                }
            }
        }
        clauses.push(FsClause { kind, ok: witness.is_none(), witness });
    }

    // Pullback stability of E, over the pullbacks that exist in the category.
    let mut witness = None;
    'stab: for &e in left {
        for along in cat.mor_ids() {
            if cat.tgt(along) != cat.tgt(e) {
                continue;
            }
            if let Some(cone) = find_limit(cat, Diagram::Pullback { left: along, right: e }) {
                // legs[0] is the pulled-back copy of e, over src(along).
                if !left.contains(&cone.legs[0]) {
                    witness = Some(FsWitness::PulledBack { e, along, leg: cone.legs[0] });
                    break 'stab;
                }
            }
        }
    }
    clauses.push(FsClause { kind: FsClauseKind::LeftStable, ok: witness.is_none(), witness });

    // Properness: E inside epis, M inside monos. These are per-morphism
    // predicates, so the witness carries every offender.
    let bad: Vec<MorId> = left.iter().copied().filter(|&e| !cat.is_epi(e)).collect();
    clauses.push(FsClause {
        kind: FsClauseKind::ProperLeft,
        ok: bad.is_empty(),
        witness: (!bad.is_empty()).then_some(FsWitness::Morphisms(bad)),
    });

    let bad: Vec<MorId> = right.iter().copied().filter(|&m| !cat.is_mono(m)).collect();
    clauses.push(FsClause {
        kind: FsClauseKind::ProperRight,
        ok: bad.is_empty(),
        witness: (!bad.is_empty()).then_some(FsWitness::Morphisms(bad)),
    });

    FsReport { clauses }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finset::{epi_mono_classes, finset_category, FinFunction};

    #[test]
    fn surjections_injections_pass_on_finset3() {
        let u = finset_category(3).unwrap();
        let (e, m) = epi_mono_classes(&u);
        let report = check_factorization_system(&u.cat, &e, &m);
        assert!(report.passed(), "{}", report.render(&u.cat));
    }

    #[test]
    fn all_iso_fails_exactly_properness_on_finset2() {
        let u = finset_category(2).unwrap();
        let left: BTreeSet<MorId> = u.cat.mor_ids().collect();
        let right: BTreeSet<MorId> =
            u.cat.mor_ids().filter(|&f| u.cat.is_iso(f)).collect();
        let report = check_factorization_system(&u.cat, &left, &right);
        assert_eq!(report.failed_kinds(), vec![FsClauseKind::ProperLeft]);
        let clause = report.clause(FsClauseKind::ProperLeft);
        // The witness set lists every non-epi in E; [1]: 1 -> 2 is one of
        // them (the least is []: 0 -> 1, the empty map into a point).
        let point = u.morphism(&FinFunction::from_table(1, 2, &[1]));
        match &clause.witness {
            Some(FsWitness::Morphisms(bad)) => assert!(bad.contains(&point)),
            other => panic!("unexpected witness {other:?}"),
        }
    }

    #[test]
    fn iso_all_passes_on_chain3() {
        let c = crate::category::tests::chain3();
        let left: BTreeSet<MorId> = c.mor_ids().filter(|&f| c.is_iso(f)).collect();
        let right: BTreeSet<MorId> = c.mor_ids().collect();
        let report = check_factorization_system(&c, &left, &right);
        assert!(report.passed(), "{}", report.render(&c));
    }

    #[test]
    fn chosen_factorization_recomposes() {
        let u = finset_category(3).unwrap();
        let (e, m) = epi_mono_classes(&u);
        let fs = FactorizationSystem::new(&u.cat, e, m, BTreeMap::new()).unwrap();
        for f in u.cat.mor_ids() {
            let (ef, mf) = factorize(&u.cat, &fs, f).unwrap();
            assert_eq!(u.cat.compose(ef, mf).unwrap(), f);
            assert!(fs.in_left(ef) && fs.in_right(mf));
        }
    }

    #[test]
    fn any_two_factorizations_connect_by_unique_iso() {
        let u = finset_category(2).unwrap();
        let (left, right) = epi_mono_classes(&u);
        for f in u.cat.mor_ids() {
            let facts = all_factorizations(&u.cat, &left, &right, f);
            assert!(!facts.is_empty());
            for &(e1, m1) in &facts {
                for &(e2, m2) in &facts {
                    let isos = u
                        .cat
                        .isos_between(u.cat.tgt(e1), u.cat.tgt(e2))
                        .into_iter()
                        .filter(|&j| {
                            u.cat.compose(e1, j) == Ok(e2) && u.cat.compose(j, m2) == Ok(m1)
                        })
                        .count();
                    assert_eq!(isos, 1);
                }
            }
        }
    }

    #[test]
    fn fill_diagonal_matches_spec_examples() {
        let u = finset_category(2).unwrap();
        let (e_cls, m_cls) = epi_mono_classes(&u);
        let fs = FactorizationSystem::new(&u.cat, e_cls, m_cls, BTreeMap::new()).unwrap();

        // e = [1,1]: 2->1, m = [1]: 1->2, top = [1,1], bottom = [1]: d = [1].
        let e = u.morphism(&FinFunction::from_table(2, 1, &[1, 1]));
        let m = u.morphism(&FinFunction::from_table(1, 2, &[1]));
        let top = u.morphism(&FinFunction::from_table(2, 1, &[1, 1]));
        let bottom = u.morphism(&FinFunction::from_table(1, 2, &[1]));
        let d = fill_diagonal(&u.cat, &fs, &LiftingSquare { e, m, top, bottom }).unwrap();
        assert_eq!(u.function_of(d), FinFunction::identity(1));

        // e identity: the filler is the top arrow.
        let id2 = u.morphism(&FinFunction::identity(2));
        let square = LiftingSquare { e: id2, m, top: e, bottom: u.cat.compose(e, bottom).unwrap() };
        let d = fill_diagonal(&u.cat, &fs, &square).unwrap();
        assert_eq!(d, e);

        // top = e, bottom = m: the filler is the identity.
        let square = LiftingSquare { e, m, top: e, bottom: m };
        let d = fill_diagonal(&u.cat, &fs, &square).unwrap();
        assert_eq!(u.function_of(d), FinFunction::identity(1));
    }
}
