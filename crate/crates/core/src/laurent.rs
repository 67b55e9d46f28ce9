//! Exact multivariate Laurent polynomials over Gaussian rationals.
//!
//! The ring variables are quarter-exponentials of shear coordinates: the
//! variable named `Z1` stands for `exp(Z_1/4)`, so an exponent of 2 encodes
//! `exp(Z_1/2)` and an exponent of 4 encodes `exp(Z_1)`. Keeping the lattice
//! at quarter steps lets both full edge matrices (half exponents) and the
//! halved pending-edge matrices (quarter exponents) live on one integer
//! lattice.
//!
//! Coefficients are Gaussian rationals `a + b·i` with arbitrary-precision
//! rational `a`, `b`, so unit substitutions like `exp(Y/2) = ±i` stay exact.
//!
//! Values are immutable and canonically normalized: no zero coefficients are
//! stored, and two values are equal iff their term maps coincide.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

// ---------------------------------------------------------------------------
// Gaussian rationals
// ---------------------------------------------------------------------------

/// An exact Gaussian rational `re + im·i`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    pub fn zero() -> Self {
        GaussianRational::new(BigRational::zero(), BigRational::zero())
    }

    pub fn one() -> Self {
        GaussianRational::new(BigRational::one(), BigRational::zero())
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        GaussianRational::new(BigRational::zero(), BigRational::one())
    }

    pub fn from_integer(v: i64) -> Self {
        GaussianRational::new(BigRational::from_integer(BigInt::from(v)), BigRational::zero())
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        GaussianRational::new(
            BigRational::new(BigInt::from(num), BigInt::from(den)),
            BigRational::zero(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        GaussianRational::new(&self.re + &other.re, &self.im + &other.im)
    }

    pub fn sub(&self, other: &Self) -> Self {
        GaussianRational::new(&self.re - &other.re, &self.im - &other.im)
    }

    pub fn mul(&self, other: &Self) -> Self {
        GaussianRational::new(
            &self.re * &other.re - &self.im * &other.im,
            &self.re * &other.im + &self.im * &other.re,
        )
    }

    pub fn neg(&self) -> Self {
        GaussianRational::new(-self.re.clone(), -self.im.clone())
    }

    /// Multiply by `i^k` (k may be negative).
    pub fn mul_i_pow(&self, k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => self.clone(),
            1 => GaussianRational::new(-self.im.clone(), self.re.clone()),
            2 => self.neg(),
            3 => GaussianRational::new(self.im.clone(), -self.re.clone()),
            _ => unreachable!(),
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}i", self.im)
        } else if self.im.is_negative() {
            write!(f, "{}{}i", self.re, self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

// ---------------------------------------------------------------------------
// Variable tables
// ---------------------------------------------------------------------------

/// Compare variable names by (alphabetic prefix, numeric suffix), falling
/// back to plain string order. `Z2` sorts before `Z10`.
fn natural_key(name: &str) -> (String, Option<u64>, String) {
    let digits_at = name
        .char_indices()
        .find(|(_, c)| c.is_ascii_digit())
        .map(|(i, _)| i);
    match digits_at {
        Some(i) => {
            let (head, tail) = name.split_at(i);
            match tail.parse::<u64>() {
                Ok(v) => (head.to_string(), Some(v), String::new()),
                Err(_) => (head.to_string(), None, tail.to_string()),
            }
        }
        None => (name.to_string(), None, String::new()),
    }
}

fn natural_cmp(a: &str, b: &str) -> std::cmp::Ordering {
    natural_key(a).cmp(&natural_key(b))
}

/// An ordered, shared set of variable names.
#[derive(Clone, PartialEq, Eq)]
pub struct VarSet(Arc<Vec<String>>);

impl VarSet {
    /// Build from names; sorts into natural order and rejects duplicates.
    pub fn new<I: IntoIterator<Item = S>, S: Into<String>>(names: I) -> Self {
        let mut v: Vec<String> = names.into_iter().map(Into::into).collect();
        v.sort_by(|a, b| natural_cmp(a, b));
        v.dedup();
        VarSet(Arc::new(v))
    }

    pub fn empty() -> Self {
        VarSet(Arc::new(Vec::new()))
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }

    fn same(&self, other: &VarSet) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }

    /// Union of two tables in natural order, with index maps from each input.
    fn union(&self, other: &VarSet) -> (VarSet, Vec<usize>, Vec<usize>) {
        let mut all: Vec<String> = self.0.iter().chain(other.0.iter()).cloned().collect();
        all.sort_by(|a, b| natural_cmp(a, b));
        all.dedup();
        let merged = VarSet(Arc::new(all));
        let map_a = self
            .0
            .iter()
            .map(|n| merged.index_of(n).expect("name in union"))
            .collect();
        let map_b = other
            .0
            .iter()
            .map(|n| merged.index_of(n).expect("name in union"))
            .collect();
        (merged, map_a, map_b)
    }
}

impl fmt::Debug for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

// ---------------------------------------------------------------------------
// Laurent scalars
// ---------------------------------------------------------------------------

type Mono = Vec<i32>;

/// A multivariate Laurent polynomial with Gaussian-rational coefficients.
///
/// Terms map integer exponent tuples (one entry per variable, negatives
/// allowed) to nonzero coefficients. Term order is lexicographic on the
/// exponent tuple, which fixes the evaluation and serialization order.
///
/// Equality projects away variables that occur only with exponent zero, so a
/// constant is equal to itself regardless of the table it was built over.
#[derive(Clone, Eq)]
pub struct LaurentScalar {
    vars: VarSet,
    terms: BTreeMap<Mono, GaussianRational>,
}

impl PartialEq for LaurentScalar {
    fn eq(&self, other: &Self) -> bool {
        if self.vars.same(&other.vars) {
            return self.terms == other.terms;
        }
        self.support_view() == other.support_view()
    }
}

impl LaurentScalar {
    pub fn zero() -> Self {
        LaurentScalar {
            vars: VarSet::empty(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        LaurentScalar::constant(GaussianRational::one())
    }

    pub fn constant(c: GaussianRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        LaurentScalar {
            vars: VarSet::empty(),
            terms,
        }
    }

    pub fn from_integer(v: i64) -> Self {
        LaurentScalar::constant(GaussianRational::from_integer(v))
    }

    /// The monomial `var^exponent` over a given table.
    pub fn monomial(vars: &VarSet, name: &str, exponent: i32) -> Result<Self> {
        let idx = vars
            .index_of(name)
            .ok_or_else(|| Error::UnknownCoordinate(name.to_string()))?;
        let mut mono = vec![0i32; vars.len()];
        mono[idx] = exponent;
        let mut terms = BTreeMap::new();
        if exponent == 0 {
            terms.insert(vec![0i32; vars.len()], GaussianRational::one());
        } else {
            terms.insert(mono, GaussianRational::one());
        }
        Ok(LaurentScalar {
            vars: vars.clone(),
            terms,
        })
    }

    /// Arbitrary single term over a table.
    pub fn term(vars: &VarSet, exponents: Vec<i32>, coeff: GaussianRational) -> Self {
        assert_eq!(exponents.len(), vars.len(), "exponent tuple length");
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exponents, coeff);
        }
        LaurentScalar {
            vars: vars.clone(),
            terms,
        }
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &GaussianRational)> {
        self.terms.iter()
    }

    /// Coefficient of a constant polynomial, if it is one.
    pub fn as_constant(&self) -> Option<GaussianRational> {
        if self.terms.is_empty() {
            return Some(GaussianRational::zero());
        }
        if self.terms.len() == 1 {
            let (mono, c) = self.terms.iter().next().unwrap();
            if mono.iter().all(|&e| e == 0) {
                return Some(c.clone());
            }
        }
        None
    }

    /// Names that occur with a nonzero exponent, plus the terms projected to
    /// those columns. Used by equality.
    fn support_view(&self) -> (Vec<&str>, BTreeMap<Mono, &GaussianRational>) {
        let n = self.vars.len();
        let mut used = vec![false; n];
        for mono in self.terms.keys() {
            for (i, &e) in mono.iter().enumerate() {
                if e != 0 {
                    used[i] = true;
                }
            }
        }
        let names = self
            .vars
            .names()
            .iter()
            .enumerate()
            .filter(|(i, _)| used[*i])
            .map(|(_, n)| n.as_str())
            .collect();
        let terms = self
            .terms
            .iter()
            .map(|(mono, c)| {
                let m: Mono = mono
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| used[*i])
                    .map(|(_, &e)| e)
                    .collect();
                (m, c)
            })
            .collect();
        (names, terms)
    }

    fn remap(&self, target: &VarSet, map: &[usize]) -> BTreeMap<Mono, GaussianRational> {
        self.terms
            .iter()
            .map(|(mono, c)| {
                let mut m = vec![0i32; target.len()];
                for (i, &e) in mono.iter().enumerate() {
                    m[map[i]] = e;
                }
                (m, c.clone())
            })
            .collect()
    }

    /// Align two scalars onto a shared variable table.
    fn aligned(
        a: &LaurentScalar,
        b: &LaurentScalar,
    ) -> (
        VarSet,
        BTreeMap<Mono, GaussianRational>,
        BTreeMap<Mono, GaussianRational>,
    ) {
        if a.vars.same(&b.vars) {
            return (a.vars.clone(), a.terms.clone(), b.terms.clone());
        }
        let (merged, map_a, map_b) = a.vars.union(&b.vars);
        let ta = a.remap(&merged, &map_a);
        let tb = b.remap(&merged, &map_b);
        (merged, ta, tb)
    }

    pub fn add(&self, other: &Self) -> Self {
        let (vars, mut ta, tb) = Self::aligned(self, other);
        for (mono, c) in tb {
            match ta.get_mut(&mono) {
                Some(existing) => {
                    let sum = existing.add(&c);
                    if sum.is_zero() {
                        ta.remove(&mono);
                    } else {
                        *existing = sum;
                    }
                }
                None => {
                    ta.insert(mono, c);
                }
            }
        }
        LaurentScalar { vars, terms: ta }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        LaurentScalar {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return LaurentScalar::zero();
        }
        let (vars, ta, tb) = Self::aligned(self, other);
        let mut out: BTreeMap<Mono, GaussianRational> = BTreeMap::new();
        for (ma, ca) in &ta {
            for (mb, cb) in &tb {
                let mono: Mono = ma.iter().zip(mb.iter()).map(|(x, y)| x + y).collect();
                let c = ca.mul(cb);
                match out.get_mut(&mono) {
                    Some(existing) => {
                        let sum = existing.add(&c);
                        if sum.is_zero() {
                            out.remove(&mono);
                        } else {
                            *existing = sum;
                        }
                    }
                    None => {
                        if !c.is_zero() {
                            out.insert(mono, c);
                        }
                    }
                }
            }
        }
        LaurentScalar { vars, terms: out }
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return LaurentScalar::zero();
        }
        LaurentScalar {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), k.mul(c)))
                .collect(),
        }
    }

    /// Derivative with respect to the shear coordinate behind `name`.
    ///
    /// The variable is `exp(coordinate/4)`, so a term with exponent `e` in it
    /// picks up the exact factor `e/4`.
    pub fn shear_derivative(&self, name: &str) -> Result<Self> {
        let idx = self
            .vars
            .index_of(name)
            .ok_or_else(|| Error::UnknownCoordinate(name.to_string()))?;
        let quarter = GaussianRational::from_ratio(1, 4);
        let terms = self
            .terms
            .iter()
            .filter_map(|(m, c)| {
                let e = m[idx];
                if e == 0 {
                    return None;
                }
                let factor = GaussianRational::from_integer(e as i64).mul(&quarter);
                Some((m.clone(), c.mul(&factor)))
            })
            .collect();
        Ok(LaurentScalar {
            vars: self.vars.clone(),
            terms,
        })
    }

    /// Evaluate at an assignment of complex values to the ring variables.
    ///
    /// Terms are summed in lexicographic exponent order, so results are
    /// bit-reproducible.
    pub fn evaluate(&self, assignment: &BTreeMap<String, Complex64>) -> Result<Complex64> {
        let mut values = Vec::with_capacity(self.vars.len());
        for (i, name) in self.vars.names().iter().enumerate() {
            let v = assignment
                .get(name)
                .copied()
                .ok_or_else(|| Error::MissingAssignment(name.clone()))?;
            let has_negative = self.terms.keys().any(|m| m[i] < 0);
            if has_negative && v.norm_sqr() == 0.0 {
                return Err(Error::ZeroAtNegativeExponent(name.clone()));
            }
            values.push(v);
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for (mono, coeff) in &self.terms {
            let mut term = coeff.to_complex();
            for (v, &e) in values.iter().zip(mono.iter()) {
                if e != 0 {
                    term *= v.powi(e);
                }
            }
            acc += term;
        }
        if !acc.re.is_finite() || !acc.im.is_finite() {
            return Err(Error::NonFiniteValue("laurent evaluation".into()));
        }
        Ok(acc)
    }

    /// Rename/merge variables, scaling exponents: each old variable maps to
    /// `(new_name, multiplier)` with `old^e ↦ new^(multiplier·e)`. Distinct
    /// old variables may map to one new name; exponents accumulate.
    pub fn substitute_vars(&self, map: &BTreeMap<String, (String, i32)>) -> Result<Self> {
        let mut new_names: Vec<String> = Vec::new();
        for name in self.vars.names() {
            let target = map
                .get(name)
                .map(|(t, _)| t.clone())
                .unwrap_or_else(|| name.clone());
            new_names.push(target);
        }
        let target_set = VarSet::new(new_names.clone());
        let mut out: BTreeMap<Mono, GaussianRational> = BTreeMap::new();
        for (mono, coeff) in &self.terms {
            let mut m = vec![0i32; target_set.len()];
            for (i, &e) in mono.iter().enumerate() {
                let name = &self.vars.names()[i];
                let (_, mult) = map
                    .get(name)
                    .cloned()
                    .unwrap_or_else(|| (name.clone(), 1));
                let j = target_set.index_of(&new_names[i]).expect("target present");
                m[j] += mult * e;
            }
            let entry = out.entry(m).or_insert_with(GaussianRational::zero);
            let sum = entry.add(coeff);
            *entry = sum;
        }
        out.retain(|_, c| !c.is_zero());
        Ok(LaurentScalar {
            vars: target_set,
            terms: out,
        })
    }

    /// Substitute a Gaussian unit for the *square* of a variable:
    /// `var^2 ↦ i^k`. Every occurrence of the variable must carry an even
    /// exponent. The variable is removed from the table.
    pub fn substitute_square_unit(&self, name: &str, i_power: i64) -> Result<Self> {
        let idx = self
            .vars
            .index_of(name)
            .ok_or_else(|| Error::UnknownCoordinate(name.to_string()))?;
        let remaining: Vec<String> = self
            .vars
            .names()
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != idx)
            .map(|(_, n)| n.clone())
            .collect();
        let target = VarSet::new(remaining);
        let mut out: BTreeMap<Mono, GaussianRational> = BTreeMap::new();
        for (mono, coeff) in &self.terms {
            let e = mono[idx];
            if e.rem_euclid(2) != 0 {
                return Err(Error::OddExponent(name.to_string(), e));
            }
            let c = coeff.mul_i_pow(i_power * (e as i64) / 2);
            let m: Mono = mono
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != idx)
                .map(|(_, &v)| v)
                .collect();
            let entry = out.entry(m).or_insert_with(GaussianRational::zero);
            let sum = entry.add(&c);
            *entry = sum;
        }
        out.retain(|_, c| !c.is_zero());
        Ok(LaurentScalar {
            vars: target,
            terms: out,
        })
    }

    /// True when every coefficient is real.
    pub fn is_real(&self) -> bool {
        self.terms.values().all(|c| c.is_real())
    }

    // -- textual serialization ------------------------------------------------

    /// Serialize: a header line `vars: a,b,c` followed by one term per line,
    /// `coeff_re/coeff_im : e1,e2,...,ek` in lexicographic exponent order.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        out.push_str("vars: ");
        out.push_str(&self.vars.names().join(","));
        out.push('\n');
        for (mono, c) in &self.terms {
            let exps: Vec<String> = mono.iter().map(|e| e.to_string()).collect();
            out.push_str(&format!("{}/{} : {}\n", c.re, c.im, exps.join(",")));
        }
        out
    }

    /// Parse the format produced by [`LaurentScalar::serialize`].
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse("empty input".into()))?;
        let names = header
            .strip_prefix("vars:")
            .ok_or_else(|| Error::Parse("missing `vars:` header".into()))?
            .trim();
        let vars = if names.is_empty() {
            VarSet::empty()
        } else {
            VarSet::new(names.split(',').map(|s| s.trim().to_string()))
        };
        let mut result = LaurentScalar {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        };
        for line in lines {
            let (coeff_part, exp_part) = line
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("malformed term line `{line}`")))?;
            let (re_s, im_s) = coeff_part
                .trim()
                .split_once('/')
                .ok_or_else(|| Error::Parse(format!("malformed coefficient `{coeff_part}`")))?;
            let re = BigRational::from_str(re_s.trim())
                .map_err(|e| Error::Parse(format!("bad rational `{re_s}`: {e}")))?;
            let im = BigRational::from_str(im_s.trim())
                .map_err(|e| Error::Parse(format!("bad rational `{im_s}`: {e}")))?;
            let exps: Vec<i32> = if exp_part.trim().is_empty() {
                Vec::new()
            } else {
                exp_part
                    .trim()
                    .split(',')
                    .map(|s| {
                        s.trim()
                            .parse::<i32>()
                            .map_err(|e| Error::Parse(format!("bad exponent `{s}`: {e}")))
                    })
                    .collect::<Result<_>>()?
            };
            if exps.len() != vars.len() {
                return Err(Error::Parse(format!(
                    "exponent tuple length {} does not match {} variables",
                    exps.len(),
                    vars.len()
                )));
            }
            let c = GaussianRational::new(re, im);
            if !c.is_zero() {
                let entry = result
                    .terms
                    .entry(exps)
                    .or_insert_with(GaussianRational::zero);
                let sum = entry.add(&c);
                *entry = sum;
            }
        }
        result.terms.retain(|_, c| !c.is_zero());
        Ok(result)
    }
}

impl fmt::Debug for LaurentScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let names = self.vars.names();
        let mut first = true;
        for (mono, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            for (i, &e) in mono.iter().enumerate() {
                if e != 0 {
                    write!(f, "·{}^{}", names[i], e)?;
                }
            }
        }
        Ok(())
    }
}
