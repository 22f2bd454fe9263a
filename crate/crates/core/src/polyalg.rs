//! Homogeneous polynomials over F₂ in degree-one variables, Hilbert functions
//! of quotients by homogeneous ideals, regular-sequence certification for
//! square systems, Euler classes of monomial representations restricted to an
//! elementary abelian subgroup, and the power-span test for linear actions.

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::gf2::{rank, BitMatrix, BitVector};
use crate::repaction::{GroupOracle, MonomialRep};

pub const NVARS_GUARD: usize = 16;
pub const DEGREE_GUARD: usize = 64;

pub type Monomial = Vec<u32>;

fn check_guards(nvars: usize, degree: usize) -> Result<()> {
    if nvars > NVARS_GUARD {
        return Err(Error::guard("poly_nvars", NVARS_GUARD as u64, nvars as u64));
    }
    if degree > DEGREE_GUARD {
        return Err(Error::guard(
            "poly_degree",
            DEGREE_GUARD as u64,
            degree as u64,
        ));
    }
    Ok(())
}

/// A homogeneous polynomial: a set of exponent vectors of equal total degree,
/// coefficients in F₂.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedPoly {
    nvars: usize,
    degree: usize,
    monomials: BTreeSet<Monomial>,
}

impl GradedPoly {
    /// Builds a polynomial from exponent vectors; repeated monomials cancel.
    pub fn new(
        nvars: usize,
        degree: usize,
        monomials: impl IntoIterator<Item = Monomial>,
    ) -> Result<Self> {
        check_guards(nvars, degree)?;
        let mut set = BTreeSet::new();
        for m in monomials {
            if m.len() != nvars {
                return Err(Error::InvalidPolynomial(format!(
                    "exponent vector {m:?} has {} entries, expected {nvars}",
                    m.len()
                )));
            }
            let d: u64 = m.iter().map(|&e| e as u64).sum();
            if d != degree as u64 {
                return Err(Error::InvalidPolynomial(format!(
                    "monomial {m:?} has degree {d}, expected {degree}"
                )));
            }
            if !set.insert(m.clone()) {
                set.remove(&m);
            }
        }
        Ok(Self {
            nvars,
            degree,
            monomials: set,
        })
    }

    /// Infers the degree from the monomials, which must be nonempty.
    pub fn from_monomials(nvars: usize, monomials: Vec<Monomial>) -> Result<Self> {
        let degree = monomials
            .first()
            .ok_or_else(|| {
                Error::InvalidPolynomial("degree of the zero polynomial must be given".into())
            })?
            .iter()
            .map(|&e| e as usize)
            .sum();
        Self::new(nvars, degree, monomials)
    }

    pub fn zero(nvars: usize, degree: usize) -> Self {
        Self {
            nvars,
            degree,
            monomials: BTreeSet::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self {
            nvars,
            degree: 0,
            monomials: BTreeSet::from([vec![0; nvars]]),
        }
    }

    /// `x_i^e`.
    pub fn var_power(nvars: usize, i: usize, e: u32) -> Self {
        let mut m = vec![0; nvars];
        m[i] = e;
        Self {
            nvars,
            degree: e as usize,
            monomials: BTreeSet::from([m]),
        }
    }

    /// `Σ c_i x_i`.
    pub fn linear(coeffs: &BitVector) -> Self {
        let n = coeffs.len();
        Self {
            nvars: n,
            degree: 1,
            monomials: coeffs
                .ones()
                .map(|i| {
                    let mut m = vec![0; n];
                    m[i] = 1;
                    m
                })
                .collect(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn monomials(&self) -> &BTreeSet<Monomial> {
        &self.monomials
    }

    pub fn is_zero(&self) -> bool {
        self.monomials.is_empty()
    }

    /// Coefficient vector of a degree-one polynomial.
    pub fn linear_coeffs(&self) -> Result<BitVector> {
        if self.degree != 1 {
            return Err(Error::InvalidPolynomial(format!(
                "expected a linear form, got degree {}",
                self.degree
            )));
        }
        let mut v = BitVector::zeros(self.nvars);
        for m in &self.monomials {
            let i = m.iter().position(|&e| e == 1).unwrap();
            v.set(i, true);
        }
        Ok(v)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.nvars != other.nvars || self.degree != other.degree {
            return Err(Error::DimensionMismatch(format!(
                "cannot add degree {} in {} vars to degree {} in {} vars",
                self.degree, self.nvars, other.degree, other.nvars
            )));
        }
        Ok(Self {
            nvars: self.nvars,
            degree: self.degree,
            monomials: self
                .monomials
                .symmetric_difference(&other.monomials)
                .cloned()
                .collect(),
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.nvars != other.nvars {
            return Err(Error::DimensionMismatch(format!(
                "{} vs {} variables",
                self.nvars, other.nvars
            )));
        }
        let degree = self.degree + other.degree;
        check_guards(self.nvars, degree)?;
        let mut out: BTreeSet<Monomial> = BTreeSet::new();
        for a in &self.monomials {
            for b in &other.monomials {
                let m: Monomial = a.iter().zip(b).map(|(x, y)| x + y).collect();
                if !out.insert(m.clone()) {
                    out.remove(&m);
                }
            }
        }
        Ok(Self {
            nvars: self.nvars,
            degree,
            monomials: out,
        })
    }

    /// `self^{2^k}`: squaring is additive over F₂, so every exponent doubles.
    fn frobenius(&self, k: u32) -> Result<Self> {
        let degree = self.degree << k;
        check_guards(self.nvars, degree)?;
        Ok(Self {
            nvars: self.nvars,
            degree,
            monomials: self
                .monomials
                .iter()
                .map(|m| m.iter().map(|&e| e << k).collect())
                .collect(),
        })
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        check_guards(self.nvars, self.degree * e as usize)?;
        let mut out = Self::one(self.nvars);
        for k in 0..u32::BITS - e.leading_zeros() {
            if (e >> k) & 1 == 1 {
                out = out.mul(&self.frobenius(k)?)?;
            }
        }
        Ok(out)
    }

    /// Substitutes `x_j ↦ Σ_i m[i][j] x_i`, the image of `x_j` under the
    /// matrix `m` acting on coefficient vectors of linear forms.
    pub fn substitute_linear(&self, m: &BitMatrix) -> Result<Self> {
        if m.rows() != self.nvars || m.cols() != self.nvars {
            return Err(Error::DimensionMismatch(format!(
                "substitution matrix is {}x{}, expected {n}x{n}",
                m.rows(),
                m.cols(),
                n = self.nvars
            )));
        }
        let images: Vec<GradedPoly> = (0..self.nvars)
            .map(|j| {
                let col =
                    BitVector::from_bits(&(0..self.nvars).map(|i| m.get(i, j)).collect::<Vec<_>>());
                GradedPoly::linear(&col)
            })
            .collect();
        let mut out = Self::zero(self.nvars, self.degree);
        for mono in &self.monomials {
            let mut term = Self::one(self.nvars);
            for (j, &e) in mono.iter().enumerate() {
                if e > 0 {
                    term = term.mul(&images[j].pow(e)?)?;
                }
            }
            out = out.add(&term)?;
        }
        Ok(out)
    }
}

/// Generators of a homogeneous ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealGens {
    nvars: usize,
    gens: Vec<GradedPoly>,
}

impl IdealGens {
    pub fn new(nvars: usize, gens: Vec<GradedPoly>) -> Result<Self> {
        check_guards(nvars, 0)?;
        for (k, g) in gens.iter().enumerate() {
            if g.nvars != nvars {
                return Err(Error::DimensionMismatch(format!(
                    "generator {k} has {} variables, ideal has {nvars}",
                    g.nvars
                )));
            }
        }
        Ok(Self { nvars, gens })
    }

    /// `(x_1^e, …, x_n^e)`.
    pub fn powers(nvars: usize, e: u32) -> Self {
        Self {
            nvars,
            gens: (0..nvars)
                .map(|i| GradedPoly::var_power(nvars, i, e))
                .collect(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn gens(&self) -> &[GradedPoly] {
        &self.gens
    }

    pub fn substitute_linear(&self, m: &BitMatrix) -> Result<Self> {
        Ok(Self {
            nvars: self.nvars,
            gens: self
                .gens
                .iter()
                .map(|g| g.substitute_linear(m))
                .collect::<Result<_>>()?,
        })
    }
}

/// All exponent vectors of total degree `d` in `n` variables, in
/// lexicographic order.
pub fn monomials_of_degree(n: usize, d: usize) -> Vec<Monomial> {
    fn rec(n: usize, d: u32, prefix: &mut Monomial, out: &mut Vec<Monomial>) {
        if prefix.len() + 1 == n {
            prefix.push(d);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=d).rev() {
            prefix.push(e);
            rec(n, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(n, d as u32, &mut Vec::with_capacity(n), &mut out);
    out
}

/// Rank of the span of `{m · g : g ∈ gens, deg m = d − deg g}` inside the
/// degree-`d` monomial space, and that space's dimension.
fn degree_span(ideal: &IdealGens, d: usize) -> (usize, usize) {
    let basis = monomials_of_degree(ideal.nvars, d);
    let index: HashMap<&Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut rows = Vec::new();
    for g in &ideal.gens {
        if g.degree > d || g.is_zero() {
            continue;
        }
        for mult in monomials_of_degree(ideal.nvars, d - g.degree) {
            let mut row = BitVector::zeros(basis.len());
            for gm in &g.monomials {
                let prod: Monomial = gm.iter().zip(&mult).map(|(a, b)| a + b).collect();
                row.flip(index[&prod]);
            }
            rows.push(row);
        }
    }
    let m = BitMatrix::from_rows(basis.len(), rows).expect("rows have basis length");
    (rank(&m), basis.len())
}

/// `dim_{F₂} (F₂[x_1..x_n]/I)_d`.
pub fn hilbert_function(ideal: &IdealGens, d: usize) -> Result<usize> {
    check_guards(ideal.nvars, d)?;
    let (r, total) = degree_span(ideal, d);
    Ok(total - r)
}

fn check_square(ideal: &IdealGens) -> Result<usize> {
    if ideal.gens.len() != ideal.nvars {
        return Err(Error::NonSquareSystem {
            gens: ideal.gens.len(),
            nvars: ideal.nvars,
        });
    }
    let mut cutoff = 1usize;
    for (k, g) in ideal.gens.iter().enumerate() {
        if g.degree == 0 {
            return Err(Error::InvalidPolynomial(format!(
                "generator {k} has degree 0"
            )));
        }
        cutoff += g.degree - 1;
    }
    check_guards(ideal.nvars, cutoff)?;
    Ok(cutoff)
}

/// For `n` homogeneous elements of positive degree in `n` variables:
/// regular iff the quotient vanishes in degree `Σ(d_i − 1) + 1`.
pub fn is_regular_sequence(ideal: &IdealGens) -> Result<bool> {
    let cutoff = check_square(ideal)?;
    Ok(hilbert_function(ideal, cutoff)? == 0)
}

/// Total dimension of the quotient when the generators form a regular
/// sequence; `None` otherwise.
pub fn quotient_total_dim(ideal: &IdealGens) -> Result<Option<u64>> {
    let cutoff = check_square(ideal)?;
    if hilbert_function(ideal, cutoff)? != 0 {
        return Ok(None);
    }
    let mut total = 0u64;
    for d in 0..cutoff {
        total += hilbert_function(ideal, d)? as u64;
    }
    Ok(Some(total))
}

/// Euler class of a representation restricted to an elementary abelian
/// subgroup; zero exactly when the subgroup fixes a nonzero vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EulerClass {
    Zero,
    Class(GradedPoly),
}

impl EulerClass {
    pub fn is_zero(&self) -> bool {
        matches!(self, EulerClass::Zero)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerRestriction {
    /// Multiplicity of each character `λ`, indexed by `λ` read as a word
    /// (bit `i` = value on the `i`-th generator is −1).
    pub multiplicities: Vec<u64>,
    pub class: EulerClass,
}

/// Enumerates `E = ⟨e_gens⟩` by coordinates, checking it is elementary
/// abelian of rank `e_gens.len()`. Entry `c` is `Π e_i^{c_i}`.
pub fn elementary_coordinates(group: &GroupOracle, e_gens: &[usize]) -> Result<Vec<usize>> {
    let r = e_gens.len();
    if r > NVARS_GUARD {
        return Err(Error::guard("euler_rank", NVARS_GUARD as u64, r as u64));
    }
    for (i, &g) in e_gens.iter().enumerate() {
        group.check_id(g)?;
        if g == 0 || group.mul(g, g) != 0 {
            return Err(Error::NotElementaryAbelian(format!(
                "generator {g} is not an involution"
            )));
        }
        for &h in &e_gens[..i] {
            if !group.commute(g, h) {
                return Err(Error::NotElementaryAbelian(format!(
                    "generators {h} and {g} do not commute"
                )));
            }
        }
    }
    let mut elems = vec![0usize; 1 << r];
    for c in 1usize..1 << r {
        let low = c.trailing_zeros() as usize;
        elems[c] = group.mul(elems[c & (c - 1)], e_gens[low]);
    }
    let mut sorted = elems.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != elems.len() {
        return Err(Error::NotElementaryAbelian(format!(
            "generators {e_gens:?} are dependent"
        )));
    }
    Ok(elems)
}

pub fn euler_class_restriction(
    rep: &MonomialRep<'_>,
    e_gens: &[usize],
) -> Result<EulerRestriction> {
    let group = rep.group();
    let elems = elementary_coordinates(group, e_gens)?;
    let r = e_gens.len();
    let size = elems.len() as i64;
    let traces: Vec<i64> = elems.iter().map(|&e| rep.trace(e)).collect();
    let mut multiplicities = Vec::with_capacity(elems.len());
    for lambda in 0..elems.len() {
        let s: i64 = traces
            .iter()
            .enumerate()
            .map(|(c, &tr)| {
                if (c & lambda).count_ones() % 2 == 1 {
                    -tr
                } else {
                    tr
                }
            })
            .sum();
        if s < 0 || s % size != 0 {
            return Err(Error::Internal(format!(
                "character multiplicity {s}/{size} is not a nonnegative integer"
            )));
        }
        multiplicities.push((s / size) as u64);
    }
    let class = if multiplicities[0] > 0 {
        EulerClass::Zero
    } else {
        check_guards(r, rep.dim())?;
        let mut acc = GradedPoly::one(r);
        for (lambda, &m) in multiplicities.iter().enumerate().skip(1) {
            if m > 0 {
                let form = GradedPoly::linear(&BitVector::from_word(r, lambda as u64));
                acc = acc.mul(&form.pow(m as u32)?)?;
            }
        }
        EulerClass::Class(acc)
    };
    Ok(EulerRestriction {
        multiplicities,
        class,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransgressionReport {
    pub classes: Vec<EulerClass>,
    /// `None` when some class is zero and regularity was not evaluated.
    pub regular: Option<bool>,
    pub verdict: bool,
}

/// Euler classes of every representation restricted to `E`, and whether they
/// form a regular sequence in `H*(E) = F₂[x_1..x_r]`.
pub fn transgression_check(
    group: &GroupOracle,
    reps: &[MonomialRep<'_>],
    e_gens: &[usize],
) -> Result<TransgressionReport> {
    if reps.iter().any(|r| !std::ptr::eq(r.group(), group)) {
        return Err(Error::DimensionMismatch(
            "representations are over different groups".into(),
        ));
    }
    if let Some(r) = reps.iter().find(|r| r.dim() != reps[0].dim()) {
        return Err(Error::DimensionMismatch(format!(
            "representations of dimensions {} and {} are not equidimensional",
            reps[0].dim(),
            r.dim()
        )));
    }
    if reps.len() != e_gens.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} representations for a subgroup of rank {}",
            reps.len(),
            e_gens.len()
        )));
    }
    let classes: Vec<EulerClass> = reps
        .iter()
        .map(|rep| euler_class_restriction(rep, e_gens).map(|e| e.class))
        .collect::<Result<_>>()?;
    if classes.iter().any(EulerClass::is_zero) {
        return Ok(TransgressionReport {
            classes,
            regular: None,
            verdict: false,
        });
    }
    let gens = classes
        .iter()
        .map(|c| match c {
            EulerClass::Class(p) => p.clone(),
            EulerClass::Zero => unreachable!(),
        })
        .collect();
    let regular = is_regular_sequence(&IdealGens::new(e_gens.len(), gens)?)?;
    Ok(TransgressionReport {
        classes,
        regular: Some(regular),
        verdict: regular,
    })
}

/// Invertible matrices acting on coefficient vectors of linear forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearAction {
    nvars: usize,
    generators: Vec<BitMatrix>,
}

impl LinearAction {
    pub fn new(nvars: usize, generators: Vec<BitMatrix>) -> Result<Self> {
        for (k, g) in generators.iter().enumerate() {
            if g.rows() != nvars || g.cols() != nvars {
                return Err(Error::DimensionMismatch(format!(
                    "generator {k} is {}x{}, expected {nvars}x{nvars}",
                    g.rows(),
                    g.cols()
                )));
            }
            if !g.is_invertible() {
                return Err(Error::NotInvertible(format!("generator {k}")));
            }
        }
        Ok(Self { nvars, generators })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[BitMatrix] {
        &self.generators
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PowerSpanResult {
    /// `span{y_i^p}` is carried into itself by every generator.
    pub stable: bool,
    /// Every generator permutes `{y_1, …, y_n}`.
    pub permuted: bool,
}

pub fn power_span_test(act: &LinearAction, ys: &[GradedPoly], p: u32) -> Result<PowerSpanResult> {
    if p == 0 {
        return Err(Error::InvalidArgument("power must be positive".into()));
    }
    let coeffs: Vec<BitVector> = ys
        .iter()
        .map(|y| {
            if y.nvars != act.nvars {
                return Err(Error::DimensionMismatch(format!(
                    "linear form in {} variables, action on {}",
                    y.nvars, act.nvars
                )));
            }
            y.linear_coeffs()
        })
        .collect::<Result<_>>()?;
    let m = BitMatrix::from_rows(act.nvars, coeffs.clone())?;
    if rank(&m) != coeffs.len() {
        return Err(Error::DependentVectors(format!(
            "{} linear forms span a space of dimension {}",
            coeffs.len(),
            rank(&m)
        )));
    }
    let powers: Vec<GradedPoly> = ys.iter().map(|y| y.pow(p)).collect::<Result<_>>()?;
    let mut index: HashMap<Monomial, usize> = HashMap::new();
    let mut images = Vec::new();
    let mut permuted = true;
    for g in &act.generators {
        for c in &coeffs {
            let gc = g.mul_vec(c)?;
            if !coeffs.contains(&gc) {
                permuted = false;
            }
            images.push(GradedPoly::linear(&gc).pow(p)?);
        }
    }
    for poly in powers.iter().chain(&images) {
        for mono in &poly.monomials {
            let next = index.len();
            index.entry(mono.clone()).or_insert(next);
        }
    }
    let width = index.len();
    let to_row = |poly: &GradedPoly| {
        let mut row = BitVector::zeros(width);
        for mono in &poly.monomials {
            row.flip(index[mono]);
        }
        row
    };
    let span_rows: Vec<BitVector> = powers.iter().map(to_row).collect();
    let base_rank = rank(&BitMatrix::from_rows(width, span_rows.clone())?);
    let stable = images.iter().all(|img| {
        let mut rows = span_rows.clone();
        rows.push(to_row(img));
        rank(&BitMatrix::from_rows(width, rows).unwrap()) == base_rank
    });
    Ok(PowerSpanResult { stable, permuted })
}
