//! Surface families, fat-graph words, and Stokes matrices.
//!
//! Two families are supported:
//! - `An`: a sphere with one hole and `n ≥ 3` order-two orbifold points,
//!   coordinates `Z_1..Z_n` on pending edges and `Y_1..Y_{n-3}` on the
//!   spine;
//! - `Cfp`: a genus-`⌊(n-1)/2⌋` surface with one (`n` odd) or two (`n` even)
//!   holes, coordinates `Z_1..Z_n` on vertical edges and `Y_1..Y_{2n-6}` on
//!   the two horizontal chains.
//!
//! The basis elements `γ_1..γ_n` are built as words in the generators
//! `R`, `L`, `F`, `X(Z)` and the half-coordinate `X(Z/2)`, and the Stokes
//! matrix has entries `S_ij = -Tr(γ_i γ_j)` for `i < j`.
//!
//! The closing element `γ_n` is constructed so that the `An` words are
//! conjugates of `F` (making `Tr γ_i = 0` and `γ_i² = -1` identities rather
//! than accidents); the turn letter on its return branch is the mirror of
//! the outgoing one, which is also what the `n = 3` geodesic formulas
//! require.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::Rng;

use crate::laurent::{GaussianRational, LaurentScalar, VarSet};
use crate::mat2::{Mat2, Ring};
use crate::{Error, Result};

// ---------------------------------------------------------------------------
// Families and points
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Family {
    An,
    Cfp,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::An => "an",
            Family::Cfp => "cfp",
        }
    }

    pub fn min_n(self) -> usize {
        match self {
            Family::An => 3,
            Family::Cfp => 4,
        }
    }
}

/// A family together with its size `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SurfaceFamily {
    pub kind: Family,
    pub n: usize,
}

impl SurfaceFamily {
    pub fn new(kind: Family, n: usize) -> Result<Self> {
        if n < kind.min_n() {
            return Err(Error::BadSize {
                family: kind.name(),
                min: kind.min_n(),
                n,
            });
        }
        Ok(SurfaceFamily { kind, n })
    }

    /// Number of `Y` coordinates.
    pub fn y_count(&self) -> usize {
        match self.kind {
            Family::An => self.n - 3,
            Family::Cfp => 2 * self.n - 6,
        }
    }

    /// Genus of the CFP surface.
    pub fn genus(&self) -> usize {
        match self.kind {
            Family::An => 0,
            Family::Cfp => (self.n - 1) / 2,
        }
    }

    /// Number of holes.
    pub fn holes(&self) -> usize {
        match self.kind {
            Family::An => 1,
            Family::Cfp => {
                if self.n % 2 == 1 {
                    1
                } else {
                    2
                }
            }
        }
    }

    /// All edge coordinates, `Z`'s first then `Y`'s.
    pub fn coords(&self) -> Vec<Coord> {
        let mut v: Vec<Coord> = (1..=self.n).map(Coord::Z).collect();
        v.extend((1..=self.y_count()).map(Coord::Y));
        v
    }

    /// The shared symbolic variable table for this family.
    pub fn var_set(&self) -> VarSet {
        VarSet::new(self.coords().iter().map(|c| c.name()))
    }
}

/// An edge coordinate (1-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Coord {
    Z(usize),
    Y(usize),
}

impl Coord {
    pub fn name(&self) -> String {
        match self {
            Coord::Z(i) => format!("Z{i}"),
            Coord::Y(j) => format!("Y{j}"),
        }
    }
}

impl std::fmt::Display for Coord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// A shear-coordinate point. `z` has length `n`, `y` length `y_count`.
#[derive(Clone, Debug)]
pub struct ShearPoint {
    pub family: SurfaceFamily,
    pub z: Vec<Complex64>,
    pub y: Vec<Complex64>,
}

impl ShearPoint {
    pub fn new(family: SurfaceFamily, z: Vec<Complex64>, y: Vec<Complex64>) -> Result<Self> {
        if z.len() != family.n {
            return Err(Error::BadPoint {
                expected: family.n,
                got: z.len(),
            });
        }
        if y.len() != family.y_count() {
            return Err(Error::BadPoint {
                expected: family.y_count(),
                got: y.len(),
            });
        }
        Ok(ShearPoint { family, z, y })
    }

    pub fn real(family: SurfaceFamily, z: &[f64], y: &[f64]) -> Result<Self> {
        ShearPoint::new(
            family,
            z.iter().map(|&v| Complex64::new(v, 0.0)).collect(),
            y.iter().map(|&v| Complex64::new(v, 0.0)).collect(),
        )
    }

    pub fn is_real(&self) -> bool {
        self.z.iter().chain(self.y.iter()).all(|v| v.im == 0.0)
    }

    pub fn value(&self, c: Coord) -> Complex64 {
        match c {
            Coord::Z(i) => self.z[i - 1],
            Coord::Y(j) => self.y[j - 1],
        }
    }

    /// Sum of all coordinates.
    pub fn coordinate_sum(&self) -> Complex64 {
        self.z.iter().chain(self.y.iter()).sum()
    }

    /// Assignment of the ring variables (quarter-exponentials) for
    /// [`LaurentScalar::evaluate`].
    pub fn quarter_exponentials(&self) -> BTreeMap<String, Complex64> {
        let mut map = BTreeMap::new();
        for c in self.family.coords() {
            map.insert(c.name(), (self.value(c) / 4.0).exp());
        }
        map
    }
}

// ---------------------------------------------------------------------------
// Words
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Letter {
    R,
    L,
    F,
    /// Edge matrix with half-coordinate exponents `exp(±Z/2)`.
    X(Coord),
    /// Edge matrix with quarter-coordinate exponents `exp(±Z/4)`.
    XHalf(Coord),
}

/// A signed word in the generators, read left to right as a matrix product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Word {
    pub neg: bool,
    pub letters: Vec<Letter>,
}

impl Word {
    pub fn positive(letters: Vec<Letter>) -> Self {
        Word {
            neg: false,
            letters,
        }
    }

    pub fn negative(letters: Vec<Letter>) -> Self {
        Word { neg: true, letters }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

impl std::fmt::Display for Word {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.neg {
            write!(f, "-")?;
        }
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|l| match l {
                Letter::R => "R".to_string(),
                Letter::L => "L".to_string(),
                Letter::F => "F".to_string(),
                Letter::X(c) => format!("X[{c}]"),
                Letter::XHalf(c) => format!("X[{c}/2]"),
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Reverse a letter string and swap the turn directions. For a word `W` made
/// of `X`, `R`, `L`, the mirror equals `±W^{-1}`, so `W F mirror(W)` is a
/// conjugate of `F` up to sign.
fn mirror(letters: &[Letter]) -> Vec<Letter> {
    letters
        .iter()
        .rev()
        .map(|l| match l {
            Letter::R => Letter::L,
            Letter::L => Letter::R,
            other => *other,
        })
        .collect()
}

/// Supplies the quarter-exponential `exp(coord/4)^k` in a target ring.
pub trait WordContext<T: Ring> {
    fn quarter_pow(&self, coord: Coord, k: i32) -> T;
}

/// Symbolic context over a family's variable table.
pub struct SymbolicCtx {
    vars: VarSet,
}

impl SymbolicCtx {
    pub fn new(family: &SurfaceFamily) -> Self {
        SymbolicCtx {
            vars: family.var_set(),
        }
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }
}

impl WordContext<LaurentScalar> for SymbolicCtx {
    fn quarter_pow(&self, coord: Coord, k: i32) -> LaurentScalar {
        LaurentScalar::monomial(&self.vars, &coord.name(), k)
            .expect("family coordinate present in its own table")
    }
}

/// Numeric context at a shear point.
pub struct NumericCtx {
    quarters: BTreeMap<Coord, Complex64>,
}

impl NumericCtx {
    pub fn new(point: &ShearPoint) -> Self {
        let quarters = point
            .family
            .coords()
            .into_iter()
            .map(|c| (c, (point.value(c) / 4.0).exp()))
            .collect();
        NumericCtx { quarters }
    }
}

impl WordContext<Complex64> for NumericCtx {
    fn quarter_pow(&self, coord: Coord, k: i32) -> Complex64 {
        self.quarters
            .get(&coord)
            .copied()
            .unwrap_or_else(|| panic!("coordinate {coord} missing from context"))
            .powi(k)
    }
}

/// The fixed generator matrices.
pub fn gen_r<T: Ring>() -> Mat2<T> {
    Mat2::new(T::one(), T::one(), T::one().neg(), T::zero())
}

pub fn gen_l<T: Ring>() -> Mat2<T> {
    Mat2::new(T::zero(), T::one(), T::one().neg(), T::one().neg())
}

pub fn gen_f<T: Ring>() -> Mat2<T> {
    Mat2::new(T::zero(), T::one(), T::one().neg(), T::zero())
}

/// `X(Z) = [[0, -exp(Z/2)], [exp(-Z/2), 0]]`.
pub fn gen_x<T: Ring, C: WordContext<T>>(ctx: &C, coord: Coord) -> Mat2<T> {
    Mat2::new(
        T::zero(),
        ctx.quarter_pow(coord, 2).neg(),
        ctx.quarter_pow(coord, -2),
        T::zero(),
    )
}

/// `X(Z/2)`: quarter exponents.
pub fn gen_x_half<T: Ring, C: WordContext<T>>(ctx: &C, coord: Coord) -> Mat2<T> {
    Mat2::new(
        T::zero(),
        ctx.quarter_pow(coord, 1).neg(),
        ctx.quarter_pow(coord, -1),
        T::zero(),
    )
}

fn letter_matrix<T: Ring, C: WordContext<T>>(ctx: &C, letter: Letter) -> Mat2<T> {
    match letter {
        Letter::R => gen_r(),
        Letter::L => gen_l(),
        Letter::F => gen_f(),
        Letter::X(c) => gen_x(ctx, c),
        Letter::XHalf(c) => gen_x_half(ctx, c),
    }
}

/// Evaluate a word in any ring.
pub fn eval_word<T: Ring, C: WordContext<T>>(ctx: &C, word: &Word) -> Mat2<T> {
    let mut acc = Mat2::identity();
    for &l in &word.letters {
        acc = acc.mul(&letter_matrix(ctx, l));
    }
    if word.neg {
        acc.neg()
    } else {
        acc
    }
}

/// Evaluate numerically with a unimodularity drift check: every generator has
/// determinant one, so `|det - 1| > 1e-8` flags an unusable product.
pub fn eval_word_checked(ctx: &NumericCtx, word: &Word) -> Result<Mat2<Complex64>> {
    let m = eval_word(ctx, word);
    let drift = (m.det() - Complex64::new(1.0, 0.0)).norm();
    if drift > 1e-8 {
        return Err(Error::Singular(format!(
            "determinant drift {drift:.3e} for word {word}"
        )));
    }
    Ok(m)
}

// ---------------------------------------------------------------------------
// Generator bases
// ---------------------------------------------------------------------------

/// The words `γ_1..γ_n` for a family.
pub fn basis_words(family: &SurfaceFamily) -> Vec<Word> {
    match family.kind {
        Family::An => an_basis_words(family.n),
        Family::Cfp => cfp_basis_words(family.n),
    }
}

fn an_basis_words(n: usize) -> Vec<Word> {
    let mut out = Vec::with_capacity(n);
    out.push(Word::positive(vec![Letter::F]));
    for i in 2..=n {
        let mut prefix = vec![Letter::X(Coord::Z(1))];
        if i < n {
            for j in 1..=i.saturating_sub(2) {
                prefix.push(Letter::R);
                prefix.push(Letter::X(Coord::Y(j)));
            }
            prefix.push(Letter::L);
        } else {
            for j in 1..=n - 3 {
                prefix.push(Letter::R);
                prefix.push(Letter::X(Coord::Y(j)));
            }
            prefix.push(Letter::R);
        }
        prefix.push(Letter::X(Coord::Z(i)));
        let mut letters = prefix.clone();
        letters.push(Letter::F);
        letters.extend(mirror(&prefix));
        out.push(Word::negative(letters));
    }
    out
}

fn cfp_basis_words(n: usize) -> Vec<Word> {
    // Top chain edges are Y_{n-3+m}, m = 1..n-3; bottom chain edges Y_1..Y_{n-3}.
    let top = |m: usize| Coord::Y(n - 3 + m);
    let mut out = Vec::with_capacity(n);
    out.push(Word::positive(vec![Letter::F]));
    for i in 2..=n {
        let mut letters = vec![Letter::XHalf(Coord::Z(1))];
        let (outgoing_turn, return_turn) = if i < n {
            (Letter::L, Letter::R)
        } else {
            (Letter::R, Letter::L)
        };
        let top_count = if i < n { i - 2 } else { n - 3 };
        for m in 1..=top_count {
            letters.push(Letter::R);
            letters.push(Letter::X(top(m)));
        }
        letters.push(outgoing_turn);
        letters.push(Letter::X(Coord::Z(i)));
        letters.push(return_turn);
        let bottom_count = if i < n { i.saturating_sub(2) } else { n - 3 };
        for j in (1..=bottom_count).rev() {
            letters.push(Letter::X(Coord::Y(j)));
            letters.push(Letter::L);
        }
        letters.push(Letter::XHalf(Coord::Z(1)));
        out.push(Word::negative(letters));
    }
    out
}

/// Evaluate the basis in a ring.
pub fn basis_matrices<T: Ring, C: WordContext<T>>(family: &SurfaceFamily, ctx: &C) -> Vec<Mat2<T>> {
    basis_words(family)
        .iter()
        .map(|w| eval_word(ctx, w))
        .collect()
}

// ---------------------------------------------------------------------------
// Stokes matrices
// ---------------------------------------------------------------------------

/// A unit upper-triangular matrix of scalars.
#[derive(Clone, Debug)]
pub struct StokesMatrix<T> {
    pub n: usize,
    /// Strict upper-triangular entries, row by row: `(i, j)` with `i < j`
    /// stored at `index(i, j)`.
    entries: Vec<T>,
}

impl<T: Ring> StokesMatrix<T> {
    fn index(n: usize, i: usize, j: usize) -> usize {
        debug_assert!(1 <= i && i < j && j <= n);
        let row_start: usize = (0..i - 1).map(|r| n - 1 - r).sum();
        row_start + (j - i - 1)
    }

    pub fn from_upper(n: usize, entries: Vec<T>) -> Self {
        assert_eq!(entries.len(), n * (n - 1) / 2);
        StokesMatrix { n, entries }
    }

    /// Entry `(i, j)`, 1-based. Unit on the diagonal, zero below.
    pub fn entry(&self, i: usize, j: usize) -> T {
        if i == j {
            T::one()
        } else if i < j {
            self.entries[Self::index(self.n, i, j)].clone()
        } else {
            T::zero()
        }
    }

    pub fn upper_entries(&self) -> impl Iterator<Item = ((usize, usize), &T)> {
        let n = self.n;
        (1..=n)
            .flat_map(move |i| (i + 1..=n).map(move |j| (i, j)))
            .zip(self.entries.iter())
    }
}

impl StokesMatrix<Complex64> {
    /// Dense complex matrix.
    pub fn to_complex_dense(&self) -> nalgebra::DMatrix<Complex64> {
        nalgebra::DMatrix::from_fn(self.n, self.n, |r, c| self.entry(r + 1, c + 1))
    }

    /// Dense real matrix; requires the imaginary parts to be negligible.
    pub fn to_real_dense(&self) -> Result<nalgebra::DMatrix<f64>> {
        let mut max_im: f64 = 0.0;
        let mut max_norm: f64 = 1.0;
        for ((_, _), v) in self.upper_entries() {
            max_im = max_im.max(v.im.abs());
            max_norm = max_norm.max(v.norm());
        }
        if max_im > 1e-9 * max_norm {
            return Err(Error::Degenerate(format!(
                "imaginary residue {max_im:.3e} in a matrix expected to be real"
            )));
        }
        Ok(nalgebra::DMatrix::from_fn(self.n, self.n, |r, c| {
            self.entry(r + 1, c + 1).re
        }))
    }
}

/// Symbolic Stokes matrix: `S_ij = -Tr(γ_i γ_j)` as exact Laurent scalars.
pub fn stokes_symbolic(family: &SurfaceFamily) -> StokesMatrix<LaurentScalar> {
    let ctx = SymbolicCtx::new(family);
    let gams = basis_matrices(family, &ctx);
    let mut entries = Vec::with_capacity(family.n * (family.n - 1) / 2);
    for i in 0..family.n {
        for j in i + 1..family.n {
            entries.push(gams[i].mul(&gams[j]).trace().neg());
        }
    }
    StokesMatrix::from_upper(family.n, entries)
}

/// Numeric Stokes matrix at a point, with a determinant drift check on every
/// basis word.
pub fn stokes_numeric(point: &ShearPoint) -> Result<StokesMatrix<Complex64>> {
    let ctx = NumericCtx::new(point);
    let words = basis_words(&point.family);
    let mut gams = Vec::with_capacity(words.len());
    for w in &words {
        gams.push(eval_word_checked(&ctx, w)?);
    }
    let n = point.family.n;
    let mut entries = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            entries.push(-gams[i].mul(&gams[j]).trace());
        }
    }
    Ok(StokesMatrix::from_upper(n, entries))
}

// ---------------------------------------------------------------------------
// Perimeters and boundary monodromy
// ---------------------------------------------------------------------------

/// Hole perimeters in the theorem normalization.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Perimeters {
    /// One hole: `P = ΣZ + ΣY` (An and odd CFP).
    One(Complex64),
    /// Two holes (even CFP): `P1 = ΣZ`, `P2 = ΣY`.
    Two(Complex64, Complex64),
}

pub fn perimeters(point: &ShearPoint) -> Perimeters {
    let sz: Complex64 = point.z.iter().sum();
    let sy: Complex64 = point.y.iter().sum();
    match point.family.kind {
        Family::An => Perimeters::One(sz + sy),
        Family::Cfp => {
            if point.family.n % 2 == 0 {
                Perimeters::Two(sz, sy)
            } else {
                Perimeters::One(sz + sy)
            }
        }
    }
}

/// `Tr((γ_1 γ_2 ⋯ γ_n)^{-1})` for the `An` family.
///
/// Empirical calibration (recorded as a tested convention): the value equals
/// `(-1)^{n-1} (e^P + e^{-P})` with `P = ΣZ + ΣY`, i.e. the exponent carried
/// by the boundary eigenvalues is twice the theorem-normalized perimeter.
pub fn boundary_monodromy_trace(point: &ShearPoint) -> Result<Complex64> {
    if point.family.kind != Family::An {
        return Err(Error::Degenerate(
            "boundary monodromy trace is defined for the An family".into(),
        ));
    }
    let ctx = NumericCtx::new(point);
    let mut prod: Mat2<Complex64> = Mat2::identity();
    for w in basis_words(&point.family) {
        prod = prod.mul(&eval_word_checked(&ctx, &w)?);
    }
    Ok(prod.inverse_unimodular().trace())
}

// ---------------------------------------------------------------------------
// CFP geodesic words
// ---------------------------------------------------------------------------

/// The closed geodesic word through vertical edges `i < j` on the CFP graph.
///
/// The displayed low cases are reproduced exactly; the trace of every word
/// agrees with `-Tr(γ_i γ_j)` (checked symbolically in the tests).
pub fn geodesic_word_cfp(i: usize, j: usize, n: usize) -> Result<Word> {
    if n < 4 {
        return Err(Error::BadSize {
            family: "cfp",
            min: 4,
            n,
        });
    }
    if !(1 <= i && i < j && j <= n) {
        return Err(Error::BadIndices(i, j, n));
    }
    let top = |m: usize| Coord::Y(n - 3 + m);
    let mut w = vec![Letter::X(Coord::Z(i))];
    // Outgoing branch along the top chain.
    if i == 1 {
        if j == 2 {
            w.push(Letter::L);
        } else {
            for m in 1..=j - 2 {
                w.push(Letter::R);
                w.push(Letter::X(top(m)));
            }
            w.push(Letter::L);
        }
    } else {
        w.push(Letter::L);
        w.push(Letter::X(top(i - 1)));
        for m in i..=j.saturating_sub(2) {
            w.push(Letter::R);
            w.push(Letter::X(top(m)));
        }
        w.push(Letter::L);
    }
    if j == n {
        // The last vertical is entered from the far end of the top chain.
        w.pop();
        w.push(if i == 1 { Letter::L } else { Letter::R });
    }
    w.push(Letter::X(Coord::Z(j)));
    // Return branch along the bottom chain.
    let first_return = if j == n { Letter::L } else { Letter::R };
    w.push(first_return);
    for t in (i.max(2) - 1..=j.saturating_sub(2)).rev() {
        w.push(Letter::X(Coord::Y(t)));
        w.push(Letter::L);
    }
    if i > 1 {
        // Close with a right turn back onto Z_i instead of the final left.
        let last = w.pop();
        debug_assert_eq!(last, Some(Letter::L));
        w.push(Letter::R);
    }
    Ok(Word::positive(w))
}

// ---------------------------------------------------------------------------
// Specialization of the An family inside CFP
// ---------------------------------------------------------------------------

/// Per-pair outcome of the specialization identity
/// `G^An_ij(Z, Y) = G^CFP_ij(2Z, Y, Y)`.
#[derive(Clone, Debug)]
pub struct SpecializationRecord {
    pub i: usize,
    pub j: usize,
    pub equal: bool,
    /// Number of terms in the difference polynomial (0 when equal).
    pub difference_terms: usize,
}

/// Verify symbolically that the An geodesic functions are the doubled-`Z`,
/// duplicated-`Y` specialization of the CFP ones.
pub fn specialization_check(n: usize) -> Result<Vec<SpecializationRecord>> {
    let an = SurfaceFamily::new(Family::An, n)?;
    let cfp = SurfaceFamily::new(Family::Cfp, n)?;
    let s_an = stokes_symbolic(&an);
    let s_cfp = stokes_symbolic(&cfp);
    // Z_i -> 2 Z_i (double the exponent on the quarter lattice);
    // Y_{n-3+j} -> Y_j (merge the top chain onto the bottom one).
    let mut map = BTreeMap::new();
    for i in 1..=n {
        map.insert(format!("Z{i}"), (format!("Z{i}"), 2));
    }
    for j in 1..=n - 3 {
        map.insert(format!("Y{}", n - 3 + j), (format!("Y{j}"), 1));
    }
    let mut out = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            let lhs = s_an.entry(i, j);
            let rhs = s_cfp.entry(i, j).substitute_vars(&map)?;
            let diff = lhs.sub(&rhs);
            out.push(SpecializationRecord {
                i,
                j,
                equal: diff.is_zero(),
                difference_terms: diff.num_terms(),
            });
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Random words
// ---------------------------------------------------------------------------

/// A random word over a family's alphabet, for skein-relation checks.
pub fn random_word<R: Rng>(family: &SurfaceFamily, max_len: usize, rng: &mut R) -> Word {
    let coords = family.coords();
    let len = rng.gen_range(1..=max_len.max(1));
    let letters = (0..len)
        .map(|_| match rng.gen_range(0..5) {
            0 => Letter::R,
            1 => Letter::L,
            2 => Letter::F,
            3 => Letter::X(coords[rng.gen_range(0..coords.len())]),
            _ => Letter::XHalf(coords[rng.gen_range(0..coords.len())]),
        })
        .collect();
    Word::positive(letters)
}

/// Convenience: the exact constant 2 as a Laurent scalar.
pub fn two() -> LaurentScalar {
    LaurentScalar::constant(GaussianRational::from_integer(2))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(family: &SurfaceFamily) -> SymbolicCtx {
        SymbolicCtx::new(family)
    }

    #[test]
    fn generator_identities() {
        let fam = SurfaceFamily::new(Family::An, 3).unwrap();
        let ctx = sym(&fam);
        let r: Mat2<LaurentScalar> = gen_r();
        let l: Mat2<LaurentScalar> = gen_l();
        let f: Mat2<LaurentScalar> = gen_f();
        // R^2 equals the displayed L matrix; R^3 = -1; F^2 = -1.
        assert_eq!(r.mul(&r), l);
        assert!(r.mul(&r).mul(&r).is_neg_identity());
        assert!(f.mul(&f).is_neg_identity());
        // det X(Z) = 1 exactly; X(Z)^2 = -1.
        let x = gen_x(&ctx, Coord::Z(1));
        assert_eq!(x.det(), LaurentScalar::one());
        assert!(x.mul(&x).is_neg_identity());
        let xh = gen_x_half(&ctx, Coord::Z(1));
        assert_eq!(xh.det(), LaurentScalar::one());
        // X(Z/2) F X(Z/2) = X(Z).
        assert_eq!(xh.mul(&f).mul(&xh), x);
    }

    #[test]
    fn an_basis_is_traceless_and_involutive() {
        for n in 3..=6 {
            let fam = SurfaceFamily::new(Family::An, n).unwrap();
            let ctx = sym(&fam);
            for (k, g) in basis_matrices(&fam, &ctx).iter().enumerate() {
                assert!(g.trace().is_zero(), "Tr γ_{} ≠ 0 for n={}", k + 1, n);
                assert!(
                    g.mul(g).is_neg_identity(),
                    "γ_{}² ≠ -1 for n={}",
                    k + 1,
                    n
                );
                assert_eq!(g.det(), LaurentScalar::one());
            }
        }
    }

    #[test]
    fn cfp_basis_is_unimodular() {
        for n in 4..=6 {
            let fam = SurfaceFamily::new(Family::Cfp, n).unwrap();
            let ctx = sym(&fam);
            for g in basis_matrices(&fam, &ctx) {
                assert_eq!(g.det(), LaurentScalar::one());
            }
        }
    }

    #[test]
    fn an_first_generator_is_f() {
        let fam = SurfaceFamily::new(Family::An, 5).unwrap();
        let words = basis_words(&fam);
        assert_eq!(words[0], Word::positive(vec![Letter::F]));
    }

    #[test]
    fn an_n3_matches_cyclic_exponential_formula() {
        // G_{i,i+1} = e^{Z_i+Z_{i+1}} + e^{Z_i-Z_{i+1}} + e^{-Z_i-Z_{i+1}},
        // with S_13 holding the cyclic G_{3,1}.
        let fam = SurfaceFamily::new(Family::An, 3).unwrap();
        let vars = fam.var_set();
        let s = stokes_symbolic(&fam);
        let term = |e: Vec<i32>| LaurentScalar::term(&vars, e, GaussianRational::one());
        // Variable order is Z1, Z2, Z3 (natural order).
        let g12 = term(vec![4, 4, 0])
            .add(&term(vec![4, -4, 0]))
            .add(&term(vec![-4, -4, 0]));
        let g23 = term(vec![0, 4, 4])
            .add(&term(vec![0, 4, -4]))
            .add(&term(vec![0, -4, -4]));
        let g31 = term(vec![4, 0, 4])
            .add(&term(vec![-4, 0, 4]))
            .add(&term(vec![-4, 0, -4]));
        assert_eq!(s.entry(1, 2), g12);
        assert_eq!(s.entry(2, 3), g23);
        assert_eq!(s.entry(1, 3), g31);
    }

    #[test]
    fn an_stokes_example_values() {
        let fam = SurfaceFamily::new(Family::An, 3).unwrap();
        let p = ShearPoint::real(fam, &[1.0, 0.0, 0.0], &[]).unwrap();
        let s = stokes_numeric(&p).unwrap();
        assert!((s.entry(1, 2).re - 5.8044430).abs() < 5e-7);
        assert!((s.entry(2, 3).re - 3.0).abs() < 1e-12);
        assert!((s.entry(1, 3).re - 3.4540407).abs() < 5e-8);
        // All coordinates zero: every entry is 3.
        let p0 = ShearPoint::real(fam, &[0.0; 3], &[]).unwrap();
        let s0 = stokes_numeric(&p0).unwrap();
        for (_, v) in s0.upper_entries() {
            assert!((v.re - 3.0).abs() < 1e-12);
        }
    }

    #[test]
    fn cfp_printed_word_anchors() {
        let n = 6;
        let z = |i| Letter::X(Coord::Z(i));
        let y = |j| Letter::X(Coord::Y(j));
        assert_eq!(
            geodesic_word_cfp(1, 2, n).unwrap().letters,
            vec![z(1), Letter::L, z(2), Letter::R]
        );
        assert_eq!(
            geodesic_word_cfp(1, 3, n).unwrap().letters,
            vec![
                z(1),
                Letter::R,
                y(n - 2),
                Letter::L,
                z(3),
                Letter::R,
                y(1),
                Letter::L
            ]
        );
        assert_eq!(geodesic_word_cfp(1, 3, n).unwrap().len(), 8);
        assert_eq!(
            geodesic_word_cfp(2, 3, n).unwrap().letters,
            vec![
                z(2),
                Letter::L,
                y(n - 2),
                Letter::L,
                z(3),
                Letter::R,
                y(1),
                Letter::R
            ]
        );
    }

    #[test]
    fn cfp_words_match_basis_traces() {
        // Tr(word_ij) must equal -Tr(γ_i γ_j) as exact polynomials.
        for n in 4..=6 {
            let fam = SurfaceFamily::new(Family::Cfp, n).unwrap();
            let ctx = sym(&fam);
            let s = stokes_symbolic(&fam);
            for i in 1..=n {
                for j in i + 1..=n {
                    let w = geodesic_word_cfp(i, j, n).unwrap();
                    let tr = eval_word(&ctx, &w).trace();
                    assert_eq!(
                        tr,
                        s.entry(i, j),
                        "word/basis mismatch at ({i},{j}), n={n}: word {w}"
                    );
                }
            }
        }
    }

    #[test]
    fn specialization_holds() {
        for n in [4usize, 5] {
            let recs = specialization_check(n).unwrap();
            for r in &recs {
                assert!(r.equal, "pair ({}, {}) differs for n={}", r.i, r.j, n);
            }
        }
    }

    #[test]
    fn specialization_negative_control() {
        // Without doubling the Z's the polynomials must differ.
        let n = 4;
        let an = SurfaceFamily::new(Family::An, n).unwrap();
        let cfp = SurfaceFamily::new(Family::Cfp, n).unwrap();
        let s_an = stokes_symbolic(&an);
        let s_cfp = stokes_symbolic(&cfp);
        let mut map = BTreeMap::new();
        for j in 1..=n - 3 {
            map.insert(format!("Y{}", n - 3 + j), (format!("Y{j}"), 1));
        }
        let lhs = s_an.entry(1, 2);
        let rhs = s_cfp.entry(1, 2).substitute_vars(&map).unwrap();
        assert_ne!(lhs, rhs);
    }

    #[test]
    fn perimeter_examples() {
        let an3 = SurfaceFamily::new(Family::An, 3).unwrap();
        let p = ShearPoint::real(an3, &[1.0, 0.0, 0.0], &[]).unwrap();
        match perimeters(&p) {
            Perimeters::One(v) => assert!((v.re - 1.0).abs() < 1e-15),
            _ => panic!("expected one perimeter"),
        }
        let cfp6 = SurfaceFamily::new(Family::Cfp, 6).unwrap();
        let p = ShearPoint::real(cfp6, &[1.0; 6], &[0.0; 6]).unwrap();
        match perimeters(&p) {
            Perimeters::Two(p1, p2) => {
                assert!((p1.re - 6.0).abs() < 1e-15);
                assert!(p2.norm() < 1e-15);
            }
            _ => panic!("expected two perimeters"),
        }
        let an4 = SurfaceFamily::new(Family::An, 4).unwrap();
        let p = ShearPoint::real(an4, &[0.0; 4], &[0.0; 1]).unwrap();
        match perimeters(&p) {
            Perimeters::One(v) => assert!(v.norm() < 1e-15),
            _ => panic!(),
        }
    }

    #[test]
    fn boundary_trace_examples() {
        // All coordinates zero: (-1)^{n-1} · 2.
        let an3 = SurfaceFamily::new(Family::An, 3).unwrap();
        let p = ShearPoint::real(an3, &[0.0; 3], &[]).unwrap();
        let t = boundary_monodromy_trace(&p).unwrap();
        assert!((t.re - 2.0).abs() < 1e-10, "{t}");
        let an4 = SurfaceFamily::new(Family::An, 4).unwrap();
        let p = ShearPoint::real(an4, &[0.0; 4], &[0.0]).unwrap();
        let t = boundary_monodromy_trace(&p).unwrap();
        assert!((t.re + 2.0).abs() < 1e-10, "{t}");
        // Z = (1,0,0): the trace carries e^P + e^{-P} with P = ΣZ + ΣY = 1,
        // i.e. the doubled-perimeter convention.
        let p = ShearPoint::real(an3, &[1.0, 0.0, 0.0], &[]).unwrap();
        let t = boundary_monodromy_trace(&p).unwrap();
        let expect = 1f64.exp() + (-1f64).exp();
        assert!((t.re - expect).abs() < 1e-10, "{t} vs {expect}");
    }

    #[test]
    fn boundary_trace_depends_only_on_perimeter() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let fam = SurfaceFamily::new(Family::An, 5).unwrap();
        for _ in 0..20 {
            let mut a: Vec<f64> = (0..7).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let b: Vec<f64> = (0..7).map(|_| rng.gen_range(-1.0..1.0)).collect();
            // shift a so both have the same coordinate sum
            let sa: f64 = a.iter().sum();
            let sb: f64 = b.iter().sum();
            a[0] += sb - sa;
            let pa = ShearPoint::real(fam, &a[..5], &a[5..]).unwrap();
            let pb = ShearPoint::real(fam, &b[..5], &b[5..]).unwrap();
            let ta = boundary_monodromy_trace(&pa).unwrap();
            let tb = boundary_monodromy_trace(&pb).unwrap();
            assert!(
                (ta - tb).norm() <= 1e-9 * (1.0 + ta.norm()),
                "{ta} vs {tb}"
            );
        }
    }

    #[test]
    fn stokes_entries_exceed_two_at_real_points() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for (kind, n) in [(Family::An, 5), (Family::Cfp, 5)] {
            let fam = SurfaceFamily::new(kind, n).unwrap();
            for _ in 0..50 {
                let z: Vec<f64> = (0..fam.n).map(|_| rng.gen_range(-1.5..1.5)).collect();
                let y: Vec<f64> = (0..fam.y_count())
                    .map(|_| rng.gen_range(-1.5..1.5))
                    .collect();
                let p = ShearPoint::real(fam, &z, &y).unwrap();
                let s = stokes_numeric(&p).unwrap();
                for ((i, j), v) in s.upper_entries() {
                    assert!(
                        v.re >= 2.0 - 1e-9,
                        "entry ({i},{j}) = {v} below 2 for {kind:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn bad_sizes_rejected() {
        assert!(SurfaceFamily::new(Family::An, 2).is_err());
        assert!(SurfaceFamily::new(Family::Cfp, 3).is_err());
        assert!(geodesic_word_cfp(2, 2, 6).is_err());
        assert!(geodesic_word_cfp(0, 2, 6).is_err());
        assert!(geodesic_word_cfp(1, 7, 6).is_err());
    }
}
