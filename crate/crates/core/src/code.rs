//! Linear codes given by a parity-check matrix: rank, minimum distance,
//! puncturing, low-weight dual codewords and recovery sets.
//!
//! A recovery set for coordinate `i` is the rest of the support of a dual
//! codeword `y` with `y_i != 0`: every codeword then satisfies
//! `c_i = Σ_j (-y_j / y_i) c_j`.

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{binomial, for_each_combination, mask_of, Mask, MAX_MASK_BITS};
use crate::error::{Error, Result};
use crate::gf::Field;
use crate::matrix::{axpy, nullspace, rank, rref, solve_combination, Echelon, Matrix};

/// Above this many row-space vectors the full enumeration gives way to the
/// column-subset search.
pub const FULL_ENUMERATION_LIMIT: f64 = (1u64 << 24) as f64;

/// Largest weight the column-subset dual search accepts.
pub const SUBSET_SEARCH_MAX_WEIGHT: usize = 6;

#[derive(Clone)]
pub struct LinearCode {
    field: Field,
    h: Matrix,
    echelon: Echelon,
    generator: Matrix,
}

impl fmt::Debug for LinearCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "LinearCode[n = {}, k = {}, rank = {}, {:?}]",
            self.n(),
            self.dimension(),
            self.rank(),
            self.field
        )
    }
}

impl LinearCode {
    pub fn new(field: &Field, h: Matrix) -> Result<LinearCode> {
        if let Some(&v) = h.data().iter().find(|&&v| !field.contains(v as u32)) {
            return Err(Error::param(format!("entry {v} is not in GF({})", field.order())));
        }
        let echelon = rref(field, &h);
        let generator = nullspace(field, &h);
        Ok(LinearCode {
            field: field.clone(),
            h,
            echelon,
            generator,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn parity_check(&self) -> &Matrix {
        &self.h
    }

    pub fn n(&self) -> usize {
        self.h.cols()
    }

    pub fn rank(&self) -> usize {
        self.echelon.rank()
    }

    pub fn dimension(&self) -> usize {
        self.n() - self.rank()
    }

    /// Reduced echelon basis of the row space of `H` (the dual code).
    pub fn dual_basis(&self) -> &Echelon {
        &self.echelon
    }

    /// Rows span the code.
    pub fn generator(&self) -> &Matrix {
        &self.generator
    }

    pub fn contains(&self, c: &[u16]) -> bool {
        c.len() == self.n() && self.h.mul_vec(&self.field, c).iter().all(|&v| v == 0)
    }

    /// Uniform random codeword (random combination of generator rows).
    pub fn random_codeword<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<u16> {
        let q = self.field.order();
        let mut c = vec![0u16; self.n()];
        for row in 0..self.generator.rows() {
            let a = rng.gen_range(0..q) as u16;
            axpy(&self.field, &mut c, a, self.generator.row(row));
        }
        c
    }
}

pub fn rank_and_basis(field: &Field, h: &Matrix) -> Echelon {
    rref(field, h)
}

/// Outcome of a bounded minimum-distance search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Distance {
    Exact(usize),
    /// No nonzero codeword of weight ≤ the cap.
    GreaterThan(usize),
    /// The code is `{0}`.
    ZeroCode,
}

impl Distance {
    pub fn exact(self) -> Option<usize> {
        match self {
            Distance::Exact(d) => Some(d),
            _ => None,
        }
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Exact(d) => write!(f, "{d}"),
            Distance::GreaterThan(c) => write!(f, "> {c}"),
            Distance::ZeroCode => write!(f, "inf (zero code)"),
        }
    }
}

/// Calls `f` on one representative of each nonzero vector of the row space
/// of `basis` up to scalar multiples (the first nonzero coefficient is 1).
pub fn for_each_projective_combination(field: &Field, basis: &Matrix, mut f: impl FnMut(&[u16])) {
    let q = field.order() as u16;
    fn rec(field: &Field, basis: &Matrix, row: usize, acc: &[u16], q: u16, f: &mut dyn FnMut(&[u16])) {
        if row == basis.rows() {
            f(acc);
            return;
        }
        for a in 0..q {
            let mut next = acc.to_vec();
            axpy(field, &mut next, a, basis.row(row));
            rec(field, basis, row + 1, &next, q, f);
        }
    }
    for lead in 0..basis.rows() {
        rec(field, basis, lead + 1, basis.row(lead), q, &mut f);
    }
}

fn weight(v: &[u16]) -> usize {
    v.iter().filter(|&&x| x != 0).count()
}

/// Minimum nonzero codeword weight.
///
/// Exhaustive codeword enumeration when `q^k ≤ 2^24`; otherwise the smallest
/// linearly dependent set of columns of `H` is searched up to `cap`.
pub fn min_distance(code: &LinearCode, cap: Option<usize>) -> Result<Distance> {
    if code.dimension() == 0 {
        return Ok(Distance::ZeroCode);
    }
    let q = code.field.order() as f64;
    if q.powi(code.dimension() as i32) <= FULL_ENUMERATION_LIMIT {
        let mut best = usize::MAX;
        for_each_projective_combination(&code.field, &code.generator, |c| {
            best = best.min(weight(c));
        });
        return Ok(match cap {
            Some(cap) if best > cap => Distance::GreaterThan(cap),
            _ => Distance::Exact(best),
        });
    }
    let Some(cap) = cap else {
        return Err(Error::Infeasible {
            what: "minimum distance by codeword enumeration".into(),
            estimate: q.powi(code.dimension() as i32),
            limit: FULL_ENUMERATION_LIMIT,
            hint: "pass a weight cap to search dependent column subsets instead".into(),
        });
    };
    for size in 1..=cap.min(code.n()) {
        let mut found = false;
        for_each_combination(code.n(), size, |cols| {
            found = rank(&code.field, &code.h.select_columns(cols)) < size;
            !found
        });
        if found {
            return Ok(Distance::Exact(size));
        }
    }
    Ok(Distance::GreaterThan(cap))
}

/// The code `{c|keep : c ∈ C}` with coordinates in the order of `keep`.
pub fn puncture(code: &LinearCode, keep: &[usize]) -> Result<LinearCode> {
    if keep.is_empty() {
        return Err(Error::param("puncturing needs at least one kept coordinate"));
    }
    if let Some(&c) = keep.iter().find(|&&c| c >= code.n()) {
        return Err(Error::param(format!("coordinate {} out of range", c + 1)));
    }
    let projected = code.generator.select_columns(keep);
    let h = nullspace(&code.field, &projected);
    LinearCode::new(&code.field, h)
}

/// A dual codeword, normalized so its first nonzero entry is 1.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DualWord {
    pub support: Vec<usize>,
    pub word: Vec<u16>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DualSearch {
    /// Pick by the size of the row space.
    Auto,
    /// Enumerate the whole row space of `H`.
    Full,
    /// Enumerate coordinate subsets and solve for dual words supported there.
    Subsets,
}

fn normalize(field: &Field, v: &mut [u16]) {
    if let Some(&lead) = v.iter().find(|&&x| x != 0) {
        let inv = field.inv(lead).expect("nonzero");
        for x in v.iter_mut() {
            *x = field.mul(*x, inv);
        }
    }
}

/// All dual codewords of weight ≤ `wmax`, one per scalar class, sorted by
/// weight then support.
pub fn dual_low_weight(code: &LinearCode, wmax: usize) -> Result<Vec<DualWord>> {
    dual_low_weight_with(code, wmax, DualSearch::Auto)
}

pub fn dual_low_weight_with(code: &LinearCode, wmax: usize, strategy: DualSearch) -> Result<Vec<DualWord>> {
    let q = code.field.order() as f64;
    let space = q.powi(code.rank() as i32);
    let strategy = match strategy {
        DualSearch::Auto if space <= FULL_ENUMERATION_LIMIT => DualSearch::Full,
        DualSearch::Auto => DualSearch::Subsets,
        s => s,
    };
    let mut out = match strategy {
        DualSearch::Full => {
            if space > FULL_ENUMERATION_LIMIT {
                return Err(Error::Infeasible {
                    what: "dual row-space enumeration".into(),
                    estimate: space,
                    limit: FULL_ENUMERATION_LIMIT,
                    hint: "use the subset search with a small weight bound".into(),
                });
            }
            let mut words = Vec::new();
            let basis = &code.echelon.basis;
            for_each_projective_combination(&code.field, basis, |y| {
                let w = weight(y);
                if w > 0 && w <= wmax {
                    let mut word = y.to_vec();
                    normalize(&code.field, &mut word);
                    let support = (0..word.len()).filter(|&c| word[c] != 0).collect();
                    words.push(DualWord { support, word });
                }
            });
            words
        }
        _ => dual_by_subsets(code, wmax)?,
    };
    out.sort_by(|a, b| (a.support.len(), &a.support, &a.word).cmp(&(b.support.len(), &b.support, &b.word)));
    out.dedup();
    Ok(out)
}

fn dual_by_subsets(code: &LinearCode, wmax: usize) -> Result<Vec<DualWord>> {
    let n = code.n();
    let wmax = wmax.min(n);
    if wmax > SUBSET_SEARCH_MAX_WEIGHT {
        let estimate: f64 = (1..=wmax).map(|s| binomial(n, s)).sum();
        return Err(Error::Infeasible {
            what: format!("subset search for dual words of weight <= {wmax}"),
            estimate,
            limit: (1..=SUBSET_SEARCH_MAX_WEIGHT).map(|s| binomial(n, s)).sum(),
            hint: format!("lower the weight bound to {SUBSET_SEARCH_MAX_WEIGHT} or less"),
        });
    }
    let field = &code.field;
    let g = &code.generator;
    let mut words = Vec::new();
    for size in 1..=wmax {
        for_each_combination(n, size, |cols| {
            let gs = g.select_columns(cols);
            if gs.rows() > 0 && rank(field, &gs) == size {
                return true;
            }
            let ns = nullspace(field, &gs);
            for_each_projective_combination(field, &ns, |y| {
                if y.iter().all(|&v| v != 0) {
                    let mut word = vec![0u16; n];
                    for (&c, &v) in cols.iter().zip(y) {
                        word[c] = v;
                    }
                    normalize(field, &mut word);
                    words.push(DualWord {
                        support: cols.to_vec(),
                        word,
                    });
                }
            });
            true
        });
    }
    Ok(words)
}

/// Helpers and coefficients such that `c_target = Σ coefficients[j] · c_{helpers[j]}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct RecoverySet {
    pub target: usize,
    pub helpers: Vec<usize>,
    pub coefficients: Vec<u16>,
}

impl RecoverySet {
    pub fn mask(&self) -> Mask {
        mask_of(&self.helpers)
    }

    /// Evaluates the recovery functional on `values`.
    pub fn evaluate(&self, field: &Field, values: &[u16]) -> u16 {
        self.helpers
            .iter()
            .zip(&self.coefficients)
            .fold(0, |acc, (&h, &a)| field.add(acc, field.mul(a, values[h])))
    }
}

fn recovery_from_word(field: &Field, w: &DualWord, target: usize) -> RecoverySet {
    let yi = w.word[target];
    let scale = field.neg(field.inv(yi).expect("target in support"));
    let helpers: Vec<usize> = w.support.iter().copied().filter(|&c| c != target).collect();
    let coefficients = helpers.iter().map(|&c| field.mul(w.word[c], scale)).collect();
    RecoverySet {
        target,
        helpers,
        coefficients,
    }
}

/// Every recovery set of coordinate `i` with at most `r` helpers, ordered
/// lexicographically by helper set.
pub fn recovery_sets_for(code: &LinearCode, i: usize, r: usize) -> Result<Vec<RecoverySet>> {
    if i >= code.n() {
        return Err(Error::param(format!("coordinate {} out of range", i + 1)));
    }
    let words = dual_low_weight(code, r + 1)?;
    Ok(collect_sets(code.field(), &words, i))
}

fn collect_sets(field: &Field, words: &[DualWord], i: usize) -> Vec<RecoverySet> {
    let mut sets: Vec<RecoverySet> = words
        .iter()
        .filter(|w| w.word[i] != 0)
        .map(|w| recovery_from_word(field, w, i))
        .collect();
    sets.sort();
    sets.dedup_by(|a, b| a.helpers == b.helpers);
    sets
}

/// Whether `c_i` is a fixed linear function of the coordinates in
/// `helpers`, decided from the generator columns. Returns the coefficients.
pub fn is_recovery_set(code: &LinearCode, i: usize, helpers: &[usize]) -> Option<Vec<u16>> {
    if helpers.contains(&i) {
        return None;
    }
    let g = &code.generator;
    let cols: Vec<Vec<u16>> = helpers.iter().map(|&c| g.column(c)).collect();
    solve_combination(&code.field, &cols, &g.column(i))
}

/// Recovery sets of every coordinate, computed once from the low-weight dual
/// words.
#[derive(Clone, Debug)]
pub struct RecoveryTable {
    pub r: usize,
    pub n: usize,
    /// Per coordinate, ordered lexicographically by helper set.
    pub sets: Vec<Vec<RecoverySet>>,
    /// Per coordinate, helper masks with no proper subset also present.
    pub minimal: Vec<Vec<Mask>>,
}

impl RecoveryTable {
    pub fn build(code: &LinearCode, r: usize) -> Result<RecoveryTable> {
        if code.n() > MAX_MASK_BITS {
            return Err(Error::param(format!(
                "codes longer than {MAX_MASK_BITS} are outside the exhaustive verifier's range"
            )));
        }
        let words = dual_low_weight(code, r + 1)?;
        Ok(Self::from_words(code.field(), code.n(), r, &words))
    }

    pub fn from_words(field: &Field, n: usize, r: usize, words: &[DualWord]) -> RecoveryTable {
        let words: Vec<DualWord> = words.iter().filter(|w| w.support.len() <= r + 1).cloned().collect();
        let sets: Vec<Vec<RecoverySet>> = (0..n).map(|i| collect_sets(field, &words, i)).collect();
        let minimal = sets
            .iter()
            .map(|list| {
                let masks: Vec<Mask> = list.iter().map(RecoverySet::mask).collect();
                let mut keep: Vec<Mask> = masks
                    .iter()
                    .copied()
                    .filter(|&m| !masks.iter().any(|&o| o != m && o & m == o))
                    .collect();
                keep.sort_by_key(|m| (m.count_ones(), *m));
                keep.dedup();
                keep
            })
            .collect();
        RecoveryTable { r, n, sets, minimal }
    }

    /// Some recovery set of `i` avoids every coordinate in `blocked`.
    #[inline]
    pub fn has_set_avoiding(&self, i: usize, blocked: Mask) -> bool {
        self.minimal[i].iter().any(|&m| m & blocked == 0)
    }

    /// Lexicographically first recovery set of `i` avoiding `blocked`.
    pub fn first_avoiding(&self, i: usize, blocked: Mask) -> Option<&RecoverySet> {
        self.sets[i].iter().find(|s| s.mask() & blocked == 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf4() -> Field {
        Field::new(2, 2).unwrap()
    }

    fn local_code() -> LinearCode {
        let h = Matrix::from_rows(&[vec![1, 1, 1, 1, 0], vec![1, 2, 3, 0, 1]]).unwrap();
        LinearCode::new(&gf4(), h).unwrap()
    }

    #[test]
    fn local_code_distance() {
        let c = local_code();
        assert_eq!(c.dimension(), 3);
        assert_eq!(min_distance(&c, None).unwrap(), Distance::Exact(3));
        assert_eq!(min_distance(&c, Some(2)).unwrap(), Distance::GreaterThan(2));
    }

    #[test]
    fn single_parity_distance_two() {
        let h = Matrix::from_rows(&[vec![1, 2]]).unwrap();
        let c = LinearCode::new(&gf4(), h).unwrap();
        assert_eq!(min_distance(&c, None).unwrap(), Distance::Exact(2));
    }

    #[test]
    fn identity_puncture() {
        let c = local_code();
        let p = puncture(&c, &[0, 1, 2, 3, 4]).unwrap();
        assert_eq!(p.dimension(), 3);
        for_each_projective_combination(c.field(), c.generator(), |w| assert!(p.contains(w)));
    }

    #[test]
    fn zero_vector_excluded() {
        let words = dual_low_weight(&local_code(), 5).unwrap();
        assert!(words.iter().all(|w| !w.support.is_empty()));
        // the [5,2,4] dual has (16-1)/3 = 5 projective words, all of weight 4
        assert_eq!(words.len(), 5);
        assert!(words.iter().all(|w| w.support.len() == 4));
    }

    #[test]
    fn single_parity_recovery() {
        let h = Matrix::from_rows(&[vec![1, 1, 1, 1]]).unwrap();
        let c = LinearCode::new(&gf4(), h).unwrap();
        let sets = recovery_sets_for(&c, 0, 3).unwrap();
        assert_eq!(sets.len(), 1);
        assert_eq!(sets[0].helpers, vec![1, 2, 3]);
    }

    #[test]
    fn subset_search_matches_full() {
        let c = local_code();
        for w in 1..=5 {
            let a = dual_low_weight_with(&c, w, DualSearch::Full).unwrap();
            let b = dual_low_weight_with(&c, w, DualSearch::Subsets).unwrap();
            assert_eq!(a, b, "wmax = {w}");
        }
    }

    #[test]
    fn recovery_via_generator_columns() {
        let c = local_code();
        let coeffs = is_recovery_set(&c, 0, &[1, 2, 3]).unwrap();
        let set = RecoverySet {
            target: 0,
            helpers: vec![1, 2, 3],
            coefficients: coeffs,
        };
        for_each_projective_combination(c.field(), c.generator(), |w| {
            assert_eq!(set.evaluate(c.field(), w), w[0]);
        });
        assert!(is_recovery_set(&c, 0, &[1, 2]).is_none());
    }
}
