//! Operations derived from the equipment structure.
//!
//! Restrictions are composites `f_! (x) n (x) g^*` with a cartesian cell
//! pasted from the companion/conjoint counits; extensions are the dual
//! composites `f^* (x) m (x) g_!` with an opcartesian cell pasted from the
//! units. Kernels and cokernels specialize these to external units, covers
//! and inclusions are the morphisms with trivial cokernel/kernel, and the
//! Beck-Chevalley comparison is built by factoring the square's unit cell
//! through one cartesian and one opcartesian universal property.
//!
//! Everything here works against the [`DoubleCategory`] trait only, so a
//! pass or failure means the same thing on every backend.

use super::{DblError, DoubleCategory};

/// Restriction of `n` along `(f: X -> C, g: Y -> D)` where `n: C -|-> D`:
/// the proarrow `f_! (x) n (x) g^*` together with its cartesian cell into
/// `n` over `(f, g)`.
pub fn restrict<D: DoubleCategory>(
    d: &D,
    f: &D::Arr,
    n: &D::Pro,
    g: &D::Arr,
) -> Result<(D::Pro, D::Cell), DblError> {
    if d.cod(f) != d.src(n) || d.cod(g) != d.tgt(n) {
        return Err(DblError::Boundary("restriction niche does not match".into()));
    }
    let comp = d
        .companion(f)
        .ok_or_else(|| DblError::Missing(format!("companion of {f}")))?;
    let conj = d
        .conjoint(g)
        .ok_or_else(|| DblError::Missing(format!("conjoint of {g}")))?;
    let fn_ = d.comp_pro(&comp.pro, n)?;
    let r = d.comp_pro(&fn_, &conj.pro)?;
    // counit_f (x) 1_n (x) counit_g : f_! (x) n (x) g^*  =>  y_C (x) n (x) y_D
    let pasted = d.hcomp(&d.hcomp(&comp.counit, &d.id_cell(n))?, &conj.counit)?;
    // collapse the units
    let yn = d.comp_pro(&d.unit_pro(&d.src(n)), n)?;
    let lu = d.left_unitor(n)?;
    let ru = d.right_unitor(&yn)?;
    let cleanup = d.vcomp(&ru, &lu)?;
    let cell = d.vcomp(&pasted, &cleanup)?;
    Ok((r, cell))
}

/// Extension of `m: A -|-> B` along `(f: A -> X, g: B -> Y)`: the proarrow
/// `f^* (x) m (x) g_!` together with its opcartesian cell from `m` over
/// `(f, g)`.
pub fn extend<D: DoubleCategory>(
    d: &D,
    f: &D::Arr,
    m: &D::Pro,
    g: &D::Arr,
) -> Result<(D::Pro, D::Cell), DblError> {
    if d.dom(f) != d.src(m) || d.dom(g) != d.tgt(m) {
        return Err(DblError::Boundary("extension coniche does not match".into()));
    }
    let conj = d
        .conjoint(f)
        .ok_or_else(|| DblError::Missing(format!("conjoint of {f}")))?;
    let comp = d
        .companion(g)
        .ok_or_else(|| DblError::Missing(format!("companion of {g}")))?;
    let fm = d.comp_pro(&conj.pro, m)?;
    let e = d.comp_pro(&fm, &comp.pro)?;
    // unit_f (x) 1_m (x) unit_g : y_A (x) m (x) y_B  =>  f^* (x) m (x) g_!
    let pasted = d.hcomp(&d.hcomp(&conj.unit, &d.id_cell(m))?, &comp.unit)?;
    // blow up m into y_A (x) m (x) y_B first
    let ym = d.comp_pro(&d.unit_pro(&d.src(m)), m)?;
    let lu_inv = d
        .cell_inverse(&d.left_unitor(m)?)
        .ok_or_else(|| DblError::Missing(format!("inverse left unitor of {m}")))?;
    let ru_inv = d
        .cell_inverse(&d.right_unitor(&ym)?)
        .ok_or_else(|| DblError::Missing(format!("inverse right unitor of {ym}")))?;
    let blowup = d.vcomp(&lu_inv, &ru_inv)?;
    let cell = d.vcomp(&blowup, &pasted)?;
    Ok((e, cell))
}

/// The kernel of `f: A -> B`: the restriction `f_! (x) f^*` of the unit on
/// `B` along `(f, f)`, an endo-proarrow on `A` with its cartesian cell.
pub fn kernel<D: DoubleCategory>(d: &D, f: &D::Arr) -> Result<(D::Pro, D::Cell), DblError> {
    restrict(d, f, &d.unit_pro(&d.cod(f)), f)
}

/// The cokernel of `f: A -> B`: the extension `f^* (x) f_!` of the unit on
/// `A` along `(f, f)`, an endo-proarrow on `B` with its opcartesian cell.
pub fn cokernel<D: DoubleCategory>(d: &D, f: &D::Arr) -> Result<(D::Pro, D::Cell), DblError> {
    extend(d, f, &d.unit_pro(&d.dom(f)), f)
}

/// Searches for an invertible globular cell `m => n`; returns the pair
/// `(iso, inverse)` if one exists.
pub fn globular_iso<D: DoubleCategory>(
    d: &D,
    m: &D::Pro,
    n: &D::Pro,
) -> Option<(D::Cell, D::Cell)> {
    let idm = d.id_cell(m);
    let idn = d.id_cell(n);
    for c in d.globular_cells(m, n) {
        for e in d.globular_cells(n, m) {
            if d.vcomp(&c, &e).ok() == Some(idm.clone()) && d.vcomp(&e, &c).ok() == Some(idn.clone())
            {
                return Some((c, e));
            }
        }
    }
    None
}

/// Proarrow equivalence: an invertible globular cell connects them.
pub fn pro_equiv<D: DoubleCategory>(d: &D, m: &D::Pro, n: &D::Pro) -> bool {
    m == n || globular_iso(d, m, n).is_some()
}

/// Verdict of a cartesianness scan: either the cell is cartesian or a
/// concrete factorization instance failed.
#[derive(Debug, Clone)]
pub enum FactorizationScan<D: DoubleCategory> {
    Universal,
    /// `(test cell, left factor, right factor, number of mediators)`
    Fails(D::Cell, D::Arr, D::Arr, usize),
}

impl<D: DoubleCategory> FactorizationScan<D> {
    pub fn is_universal(&self) -> bool {
        matches!(self, FactorizationScan::Universal)
    }
}

/// Exhaustive cartesianness check for `cell: m => n` over `(f, g)`: every
/// cell into `n` whose boundary factors through `(f, g)` must factor
/// through `cell` by exactly one mediating cell. Quantifies over the
/// structure's enumerated proarrows and arrows.
pub fn is_cartesian_cell<D: DoubleCategory>(d: &D, cell: &D::Cell) -> FactorizationScan<D> {
    let m = d.cell_top(cell);
    let n = d.cell_bot(cell);
    let f = d.cell_left(cell);
    let g = d.cell_right(cell);
    let (a, b) = (d.src(&m), d.tgt(&m));
    for x in d.objects() {
        for y in d.objects() {
            for p in d.proarrows(&x, &y) {
                for u in d.arrows(&x, &a) {
                    let Ok(h) = d.comp_arr(&u, &f) else { continue };
                    for v in d.arrows(&y, &b) {
                        let Ok(k) = d.comp_arr(&v, &g) else { continue };
                        for delta in d.cells(&p, &n, &h, &k) {
                            let mediators = d
                                .cells(&p, &m, &u, &v)
                                .into_iter()
                                .filter(|gamma| d.vcomp(gamma, cell).ok() == Some(delta.clone()))
                                .count();
                            if mediators != 1 {
                                return FactorizationScan::Fails(delta, u, v, mediators);
                            }
                        }
                    }
                }
            }
        }
    }
    FactorizationScan::Universal
}

/// Dual scan: every cell out of `m` whose boundary factors through `(f, g)`
/// must factor uniquely through `cell`.
pub fn is_opcartesian_cell<D: DoubleCategory>(d: &D, cell: &D::Cell) -> FactorizationScan<D> {
    let m = d.cell_top(cell);
    let n = d.cell_bot(cell);
    let f = d.cell_left(cell);
    let g = d.cell_right(cell);
    let (c, e) = (d.src(&n), d.tgt(&n));
    for x in d.objects() {
        for y in d.objects() {
            for q in d.proarrows(&x, &y) {
                for u in d.arrows(&c, &x) {
                    let Ok(h) = d.comp_arr(&f, &u) else { continue };
                    for v in d.arrows(&e, &y) {
                        let Ok(k) = d.comp_arr(&g, &v) else { continue };
                        for delta in d.cells(&m, &q, &h, &k) {
                            let mediators = d
                                .cells(&n, &q, &u, &v)
                                .into_iter()
                                .filter(|gamma| d.vcomp(cell, gamma).ok() == Some(delta.clone()))
                                .count();
                            if mediators != 1 {
                                return FactorizationScan::Fails(delta, u, v, mediators);
                            }
                        }
                    }
                }
            }
        }
    }
    FactorizationScan::Universal
}

/// A commuting square `p;f = q;g` of base arrows, `p, q` out of the apex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseSquare<D: DoubleCategory> {
    pub p: D::Arr,
    pub q: D::Arr,
    pub f: D::Arr,
    pub g: D::Arr,
}

/// Is the morphism a cover (trivial cokernel)?
pub fn is_cover<D: DoubleCategory>(d: &D, e: &D::Arr) -> Result<bool, DblError> {
    let (k, _) = cokernel(d, e)?;
    Ok(pro_equiv(d, &k, &d.unit_pro(&d.cod(e))))
}

/// Is the morphism an inclusion (trivial kernel)?
pub fn is_inclusion<D: DoubleCategory>(d: &D, m: &D::Arr) -> Result<bool, DblError> {
    let (k, _) = kernel(d, m)?;
    Ok(pro_equiv(d, &k, &d.unit_pro(&d.dom(m))))
}

/// The Beck-Chevalley comparison cell of a commuting square: the globular
/// cell from the extension `p^* (x) q_!` to the restriction `f_! (x) g^*`,
/// obtained by factoring the square's unit cell through the restriction's
/// cartesian cell and then through the extension's opcartesian cell.
pub fn beck_chevalley_cell<D: DoubleCategory>(
    d: &D,
    sq: &BaseSquare<D>,
) -> Result<D::Cell, DblError> {
    let pf = d.comp_arr(&sq.p, &sq.f)?;
    let qg = d.comp_arr(&sq.q, &sq.g)?;
    if pf != qg {
        return Err(DblError::Boundary("square does not commute".into()));
    }
    let apex = d.dom(&sq.p);
    let (ext, xi) = extend(d, &sq.p, &d.unit_pro(&apex), &sq.q)?;
    let (restr, rho) = restrict(d, &sq.f, &d.unit_pro(&d.cod(&sq.f)), &sq.g)?;
    let square_cell = d.unit_cell(&pf);
    // Factor through the cartesian cell: gamma' with gamma' ; rho = y_{pf}.
    let gamma1 = d
        .cells(&d.unit_pro(&apex), &restr, &sq.p, &sq.q)
        .into_iter()
        .find(|c| d.vcomp(c, &rho).ok() == Some(square_cell.clone()))
        .ok_or_else(|| DblError::Missing("no factorization through the restriction".into()))?;
    // Factor through the opcartesian cell: bc with xi ; bc = gamma'.
    let bc = d
        .globular_cells(&ext, &restr)
        .into_iter()
        .find(|c| d.vcomp(&xi, c).ok() == Some(gamma1.clone()))
        .ok_or_else(|| DblError::Missing("no factorization through the extension".into()))?;
    Ok(bc)
}

/// Left-to-right horizontal paste of one row of cells, then top-to-bottom
/// vertical paste of the rows. Row boundaries must match after the
/// left-nested composite choices.
pub fn paste<D: DoubleCategory>(d: &D, rows: &[Vec<D::Cell>]) -> Result<D::Cell, DblError> {
    if rows.is_empty() || rows.iter().any(|r| r.is_empty()) {
        return Err(DblError::Invalid("empty pasting arrangement".into()));
    }
    let mut pasted_rows = Vec::new();
    for row in rows {
        let mut acc = row[0].clone();
        for c in &row[1..] {
            acc = d.hcomp(&acc, c)?;
        }
        pasted_rows.push(acc);
    }
    let mut acc = pasted_rows[0].clone();
    for c in &pasted_rows[1..] {
        acc = d.vcomp(&acc, c)?;
    }
    Ok(acc)
}

/// Both companion equations for a candidate `(f_!, unit, counit)`:
/// `unit (x) counit = 1_{f_!}` modulo unitors, and the vertical composite
/// `unit ; counit = y_f`.
pub fn companion_equations_hold<D: DoubleCategory>(
    d: &D,
    f: &D::Arr,
    pro: &D::Pro,
    unit: &D::Cell,
    counit: &D::Cell,
) -> bool {
    let Ok(snake) = d.hcomp(unit, counit) else { return false };
    // snake : y_A (x) f_! => f_! (x) y_B over (1, 1)
    let (Ok(lu), Ok(ru)) = (d.left_unitor(pro), d.right_unitor(pro)) else {
        return false;
    };
    let lhs = d.vcomp(&snake, &ru);
    let rhs = Ok(lu);
    if lhs != rhs {
        return false;
    }
    d.vcomp(unit, counit).ok() == Some(d.unit_cell(f))
}

/// Both conjoint equations for a candidate `(f^*, unit, counit)`.
pub fn conjoint_equations_hold<D: DoubleCategory>(
    d: &D,
    f: &D::Arr,
    pro: &D::Pro,
    unit: &D::Cell,
    counit: &D::Cell,
) -> bool {
    let Ok(snake) = d.hcomp(counit, unit) else { return false };
    // snake : f^* (x) y_A => y_B (x) f^* over (1, 1)
    let (Ok(lu), Ok(ru)) = (d.left_unitor(pro), d.right_unitor(pro)) else {
        return false;
    };
    let lhs = d.vcomp(&snake, &lu);
    let rhs = Ok(ru);
    if lhs != rhs {
        return false;
    }
    d.vcomp(unit, counit).ok() == Some(d.unit_cell(f))
}
