//! Skeletal finite sets: function tables and relations as boolean matrices.
//!
//! Objects are sizes `0..=n`, morphisms are explicit function tables, and a
//! relation `A -|-> B` is a boolean matrix. This backend carries the fast
//! reference semantics: matrix composition is the existential join, meets
//! are entrywise conjunction, and image factorization reads the image
//! directly off the table. It also materializes the same data as a
//! [`FiniteCategory`] so the generic search engine can run against it and
//! be checked against the element-level answers.
//!
//! Elements are 0-based internally; display and file formats are 1-based.

use crate::category::{CatError, FiniteCategory, MorId, ObjId};
use std::collections::{BTreeSet, HashMap};
use std::fmt;

/// Hard cap on universe sizes; audits never need more at desk scale.
pub const DEFAULT_SIZE_CAP: usize = 6;

/// A function between finite sets, as an explicit table.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FinFunction {
    dom: usize,
    cod: usize,
    /// `map[x]` is the 0-based image of element `x`.
    map: Vec<usize>,
}

impl FinFunction {
    pub fn new(dom: usize, cod: usize, map: Vec<usize>) -> Self {
        assert_eq!(map.len(), dom, "table length must equal domain size");
        assert!(map.iter().all(|&y| y < cod), "table entry outside codomain");
        FinFunction { dom, cod, map }
    }

    /// Builds from a 1-based table, the notation used in files and reports.
    pub fn from_table(dom: usize, cod: usize, table: &[usize]) -> Self {
        let map = table.iter().map(|&y| y.checked_sub(1).expect("1-based entry")).collect();
        FinFunction::new(dom, cod, map)
    }

    pub fn identity(n: usize) -> Self {
        FinFunction { dom: n, cod: n, map: (0..n).collect() }
    }

    pub fn constant(dom: usize, cod: usize, value0: usize) -> Self {
        FinFunction::new(dom, cod, vec![value0; dom])
    }

    pub fn dom(&self) -> usize {
        self.dom
    }

    pub fn cod(&self) -> usize {
        self.cod
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn table(&self) -> &[usize] {
        &self.map
    }

    /// `self` then `g`.
    pub fn then(&self, g: &FinFunction) -> FinFunction {
        assert_eq!(self.cod, g.dom, "composition endpoint mismatch");
        FinFunction {
            dom: self.dom,
            cod: g.cod,
            map: self.map.iter().map(|&x| g.map[x]).collect(),
        }
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.cod];
        for &y in &self.map {
            if seen[y] {
                return false;
            }
            seen[y] = true;
        }
        true
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.cod];
        for &y in &self.map {
            seen[y] = true;
        }
        seen.into_iter().all(|b| b)
    }

    pub fn is_bijective(&self) -> bool {
        self.dom == self.cod && self.is_injective()
    }

    pub fn inverse(&self) -> Option<FinFunction> {
        if !self.is_bijective() {
            return None;
        }
        let mut inv = vec![0; self.cod];
        for (x, &y) in self.map.iter().enumerate() {
            inv[y] = x;
        }
        Some(FinFunction { dom: self.cod, cod: self.dom, map: inv })
    }

    /// Pairing into a row-major product: `x -> (self(x), g(x))`.
    pub fn pair(&self, g: &FinFunction) -> FinFunction {
        assert_eq!(self.dom, g.dom);
        let cod = self.cod * g.cod;
        let map = (0..self.dom).map(|x| self.map[x] * g.cod + g.map[x]).collect();
        FinFunction { dom: self.dom, cod, map }
    }

    /// All functions `dom -> cod` in lexicographic table order.
    pub fn enumerate(dom: usize, cod: usize) -> Vec<FinFunction> {
        if dom == 0 {
            return vec![FinFunction { dom, cod, map: vec![] }];
        }
        if cod == 0 {
            return vec![];
        }
        let count = cod.pow(dom as u32);
        let mut out = Vec::with_capacity(count);
        let mut map = vec![0usize; dom];
        loop {
            out.push(FinFunction { dom, cod, map: clone_map(&map) });
            // increment with the leftmost entry most significant
            let mut i = dom;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                map[i] += 1;
                if map[i] < cod {
                    break;
                }
                map[i] = 0;
            }
        }
    }
}

fn clone_map(map: &[usize]) -> Vec<usize> {
    map.to_vec()
}

impl fmt::Display for FinFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, &y) in self.map.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", y + 1)?;
        }
        write!(f, "]:{}->{}", self.dom, self.cod)
    }
}

/// Image factorization of a function table.
///
/// The image is enumerated in increasing numeric order of its elements, so
/// the mono part is the order-preserving inclusion of the image and an
/// order-preserving bijection factors as `(f, identity)`.
pub fn finset_factorize(f: &FinFunction) -> (FinFunction, FinFunction) {
    let mut in_image = vec![false; f.cod];
    for &y in &f.map {
        in_image[y] = true;
    }
    let image: Vec<usize> = (0..f.cod).filter(|&y| in_image[y]).collect();
    let mut position = vec![usize::MAX; f.cod];
    for (i, &y) in image.iter().enumerate() {
        position[y] = i;
    }
    let e = FinFunction::new(f.dom, image.len(), f.map.iter().map(|&y| position[y]).collect());
    let m = FinFunction::new(image.len(), f.cod, image);
    (e, m)
}

/// A relation `A -|-> B` as a boolean matrix, bit-packed by rows.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BoolMatrix {
    rows: usize,
    cols: usize,
    bits: Vec<u64>,
}

impl BoolMatrix {
    pub fn empty(rows: usize, cols: usize) -> Self {
        let words = (rows * cols + 63) / 64;
        BoolMatrix { rows, cols, bits: vec![0; words] }
    }

    pub fn full(rows: usize, cols: usize) -> Self {
        let mut m = BoolMatrix::empty(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m.set(r, c, true);
            }
        }
        m
    }

    pub fn diagonal(n: usize) -> Self {
        let mut m = BoolMatrix::empty(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds from 1-based pairs.
    pub fn from_pairs(rows: usize, cols: usize, pairs: &[(usize, usize)]) -> Self {
        let mut m = BoolMatrix::empty(rows, cols);
        for &(r, c) in pairs {
            m.set(r - 1, c - 1, true);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        let i = r * self.cols + c;
        self.bits[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        let i = r * self.cols + c;
        if value {
            self.bits[i / 64] |= 1 << (i % 64);
        } else {
            self.bits[i / 64] &= !(1 << (i % 64));
        }
    }

    /// 0-based pairs in row-major order.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.get(r, c) {
                    out.push((r, c));
                }
            }
        }
        out
    }

    pub fn count(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_subset_of(&self, other: &BoolMatrix) -> bool {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }

    /// All matrices of the given shape, in bit-pattern order.
    pub fn enumerate(rows: usize, cols: usize) -> Vec<BoolMatrix> {
        let n = rows * cols;
        assert!(n < 32, "enumeration restricted to small shapes");
        (0..(1u64 << n))
            .map(|pattern| {
                let mut m = BoolMatrix::empty(rows, cols);
                for i in 0..n {
                    if pattern >> i & 1 == 1 {
                        m.set(i / cols, i % cols, true);
                    }
                }
                m
            })
            .collect()
    }
}

impl fmt::Display for BoolMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (r, c)) in self.pairs().into_iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "({},{})", r + 1, c + 1)?;
        }
        write!(f, "}}:{}~>{}", self.rows, self.cols)
    }
}

impl fmt::Debug for BoolMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Relation composition as the existential join:
/// `(a, c)` holds iff some `b` has `r(a, b)` and `s(b, c)`.
pub fn matrix_compose(r: &BoolMatrix, s: &BoolMatrix) -> Result<BoolMatrix, CatError> {
    if r.cols != s.rows {
        return Err(CatError::Factorization(format!(
            "matrix dimension mismatch: {}x{} against {}x{}",
            r.rows, r.cols, s.rows, s.cols
        )));
    }
    let mut out = BoolMatrix::empty(r.rows, s.cols);
    for a in 0..r.rows {
        for b in 0..r.cols {
            if r.get(a, b) {
                for c in 0..s.cols {
                    if s.get(b, c) {
                        out.set(a, c, true);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Entrywise conjunction of parallel relations.
pub fn matrix_meet(r: &BoolMatrix, s: &BoolMatrix) -> Result<BoolMatrix, CatError> {
    if (r.rows, r.cols) != (s.rows, s.cols) {
        return Err(CatError::Factorization(format!(
            "matrix shape mismatch: {}x{} against {}x{}",
            r.rows, r.cols, s.rows, s.cols
        )));
    }
    let mut out = r.clone();
    for (w, o) in out.bits.iter_mut().zip(&s.bits) {
        *w &= o;
    }
    Ok(out)
}

/// The skeletal category of finite sets of size at most `max_size`,
/// materialized as tables plus the index maps back to function tables.
#[derive(Debug, Clone)]
pub struct FinSetUniverse {
    pub max_size: usize,
    pub cat: FiniteCategory,
    functions: Vec<FinFunction>,
    index: HashMap<FinFunction, MorId>,
}

impl FinSetUniverse {
    pub fn object(&self, size: usize) -> ObjId {
        assert!(size <= self.max_size, "object size exceeds universe");
        ObjId(size as u32)
    }

    pub fn size_of(&self, o: ObjId) -> usize {
        o.0 as usize
    }

    pub fn morphism(&self, f: &FinFunction) -> MorId {
        self.index[f]
    }

    pub fn try_morphism(&self, f: &FinFunction) -> Option<MorId> {
        self.index.get(f).copied()
    }

    pub fn function_of(&self, m: MorId) -> FinFunction {
        self.functions[m.0 as usize].clone()
    }
}

/// Builds `FinSet` restricted to sizes `0..=n` as an explicit table
/// category; `n` is capped at [`DEFAULT_SIZE_CAP`]. Sizes 5 and 6 are legal
/// but the composition table gets large.
pub fn finset_category(n: usize) -> Result<FinSetUniverse, CatError> {
    finset_category_capped(n, DEFAULT_SIZE_CAP)
}

pub fn finset_category_capped(n: usize, cap: usize) -> Result<FinSetUniverse, CatError> {
    if n > cap {
        return Err(CatError::Factorization(format!(
            "universe size {n} exceeds the cap {cap}"
        )));
    }
    let object_names: Vec<String> = (0..=n).map(|k| k.to_string()).collect();
    let mut functions = Vec::new();
    let mut index = HashMap::new();
    for a in 0..=n {
        for b in 0..=n {
            for f in FinFunction::enumerate(a, b) {
                index.insert(f.clone(), MorId(functions.len() as u32));
                functions.push(f);
            }
        }
    }
    let identities: Vec<MorId> =
        (0..=n).map(|k| index[&FinFunction::identity(k)]).collect();
    let mut composition = HashMap::new();
    for (i, f) in functions.iter().enumerate() {
        for (j, g) in functions.iter().enumerate() {
            if f.cod() == g.dom() {
                composition.insert(
                    (MorId(i as u32), MorId(j as u32)),
                    index[&f.then(g)],
                );
            }
        }
    }
    let morphisms = functions
        .iter()
        .map(|f| (f.to_string(), ObjId(f.dom() as u32), ObjId(f.cod() as u32)))
        .collect();
    // Tables are correct by construction; full validation is quadratic in
    // hom sizes, so it runs in tests for small universes instead.
    let cat = FiniteCategory::new_unchecked(object_names, morphisms, identities, composition);
    Ok(FinSetUniverse { max_size: n, cat, functions, index })
}

/// The surjection/injection classes of a universe, read off the tables.
pub fn epi_mono_classes(u: &FinSetUniverse) -> (BTreeSet<MorId>, BTreeSet<MorId>) {
    let mut left = BTreeSet::new();
    let mut right = BTreeSet::new();
    for m in u.cat.mor_ids() {
        let f = u.function_of(m);
        if f.is_surjective() {
            left.insert(m);
        }
        if f.is_injective() {
            right.insert(m);
        }
    }
    (left, right)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_universes_validate() {
        for n in 0..=3 {
            finset_category(n).unwrap().cat.validate().unwrap();
        }
    }

    #[test]
    fn universe_counts() {
        let u0 = finset_category(0).unwrap();
        assert_eq!(u0.cat.object_count(), 1);
        assert_eq!(u0.cat.morphism_count(), 1);

        let u1 = finset_category(1).unwrap();
        assert_eq!(u1.cat.object_count(), 2);
        assert_eq!(u1.cat.hom(u1.object(1), u1.object(1)).len(), 1);
        assert_eq!(u1.cat.hom(u1.object(0), u1.object(1)).len(), 1);
        assert_eq!(u1.cat.hom(u1.object(1), u1.object(0)).len(), 0);

        let u2 = finset_category(2).unwrap();
        assert_eq!(u2.cat.hom(u2.object(2), u2.object(2)).len(), 4);
        assert_eq!(u2.cat.morphism_count(), 11);

        assert!(finset_category(DEFAULT_SIZE_CAP + 1).is_err());
    }

    #[test]
    fn composition_agrees_with_table_composition() {
        let u = finset_category(2).unwrap();
        let f = FinFunction::from_table(2, 2, &[2, 1]);
        let g = FinFunction::from_table(2, 1, &[1, 1]);
        let fg = u.cat.compose(u.morphism(&f), u.morphism(&g)).unwrap();
        assert_eq!(u.function_of(fg), FinFunction::from_table(2, 1, &[1, 1]));
    }

    #[test]
    fn classification_agrees_with_tables() {
        let u = finset_category(3).unwrap();
        for m in u.cat.mor_ids() {
            let f = u.function_of(m);
            let cls = u.cat.classify_morphism(m).unwrap();
            assert_eq!(cls.epi, f.is_surjective(), "{f}");
            assert_eq!(cls.mono, f.is_injective(), "{f}");
            assert_eq!(cls.iso, f.is_bijective(), "{f}");
        }
    }

    #[test]
    fn classify_spec_examples() {
        let u = finset_category(2).unwrap();
        let collapse = u.cat.classify_morphism(u.morphism(&FinFunction::from_table(2, 1, &[1, 1]))).unwrap();
        assert!(collapse.epi && !collapse.mono && !collapse.iso);
        let point = u.cat.classify_morphism(u.morphism(&FinFunction::from_table(1, 2, &[1]))).unwrap();
        assert!(point.mono && !point.epi && !point.iso);
        let swap = u.cat.classify_morphism(u.morphism(&FinFunction::from_table(2, 2, &[2, 1]))).unwrap();
        assert!(swap.mono && swap.epi && swap.iso);
    }

    #[test]
    fn factorize_spec_examples() {
        let f = FinFunction::from_table(3, 2, &[1, 1, 2]);
        let (e, m) = finset_factorize(&f);
        assert_eq!(e, FinFunction::from_table(3, 2, &[1, 1, 2]));
        assert_eq!(m, FinFunction::identity(2));

        let f = FinFunction::from_table(2, 3, &[2, 2]);
        let (e, m) = finset_factorize(&f);
        assert_eq!(e, FinFunction::from_table(2, 1, &[1, 1]));
        assert_eq!(m, FinFunction::from_table(1, 3, &[2]));

        let id = FinFunction::identity(2);
        let (e, m) = finset_factorize(&id);
        assert_eq!(e, id);
        assert_eq!(m, FinFunction::identity(2));

        // An iso factors as (iso, identity).
        let swap = FinFunction::from_table(2, 2, &[2, 1]);
        let (e, m) = finset_factorize(&swap);
        assert_eq!(e, swap);
        assert_eq!(m, FinFunction::identity(2));
    }

    #[test]
    fn matrix_compose_spec_examples() {
        let r = BoolMatrix::from_pairs(2, 2, &[(1, 1), (1, 2)]);
        let s = BoolMatrix::from_pairs(2, 2, &[(2, 2)]);
        assert_eq!(matrix_compose(&r, &s).unwrap(), BoolMatrix::from_pairs(2, 2, &[(1, 2)]));

        let diag = BoolMatrix::diagonal(2);
        assert_eq!(matrix_compose(&r, &diag).unwrap(), r);

        let empty = BoolMatrix::empty(2, 2);
        assert_eq!(matrix_compose(&r, &empty).unwrap(), BoolMatrix::empty(2, 2));
    }

    #[test]
    fn matrix_meet_spec_examples() {
        let r = BoolMatrix::from_pairs(2, 2, &[(1, 1), (1, 2)]);
        let s = BoolMatrix::from_pairs(2, 2, &[(1, 2), (2, 2)]);
        assert_eq!(matrix_meet(&r, &s).unwrap(), BoolMatrix::from_pairs(2, 2, &[(1, 2)]));
        assert_eq!(matrix_meet(&r, &r).unwrap(), r);
        assert_eq!(matrix_meet(&r, &BoolMatrix::full(2, 2)).unwrap(), r);
    }

    #[test]
    fn matrix_dimension_mismatch_is_an_error() {
        let r = BoolMatrix::empty(2, 2);
        let s = BoolMatrix::empty(1, 2);
        assert!(matrix_compose(&r, &s).is_err());
        assert!(matrix_meet(&r, &s).is_err());
    }
}
