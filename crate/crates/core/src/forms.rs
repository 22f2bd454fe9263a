//! Families of alternating bilinear forms on `F₂ⁿ`, their quadratic
//! refinements and common radicals, plus an exhaustive common-zero search for
//! systems of quadratic polynomials.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::gf2::{kernel, BitMatrix, BitVector, Subspace};
use crate::rng::SplitMix64;

/// Largest variable count accepted by [`common_zero_quadratics`].
pub const COMMON_ZERO_GUARD: usize = 24;

/// An alternating form `φ(x, y) = xᵀ·gram·y` with symmetric, zero-diagonal
/// Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlternatingForm {
    gram: BitMatrix,
}

impl AlternatingForm {
    pub fn new(gram: BitMatrix) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::InvalidForm(format!(
                "gram matrix is {}x{}",
                gram.rows(),
                gram.cols()
            )));
        }
        for i in 0..gram.rows() {
            if gram.get(i, i) {
                return Err(Error::InvalidForm(format!("diagonal entry ({i},{i}) is 1")));
            }
            for j in 0..i {
                if gram.get(i, j) != gram.get(j, i) {
                    return Err(Error::InvalidForm(format!(
                        "entries ({i},{j}) and ({j},{i}) differ"
                    )));
                }
            }
        }
        Ok(Self { gram })
    }

    pub fn zero(n: usize) -> Self {
        Self {
            gram: BitMatrix::zeros(n, n),
        }
    }

    /// The standard symplectic form on `F₂²`.
    pub fn hyperbolic_plane() -> Self {
        Self {
            gram: BitMatrix::parse_rows(2, &["01", "10"]).unwrap(),
        }
    }

    pub fn n(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &BitMatrix {
        &self.gram
    }

    /// Strictly lower triangle of the Gram matrix.
    pub fn lower(&self) -> BitMatrix {
        let n = self.n();
        let mut l = BitMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..i {
                if self.gram.get(i, j) {
                    l.set(i, j, true);
                }
            }
        }
        l
    }
}

/// `xᵀ·gram·y`.
pub fn evaluate(phi: &AlternatingForm, x: &BitVector, y: &BitVector) -> Result<bool> {
    if y.len() != phi.n() {
        return Err(Error::LengthMismatch {
            expected: phi.n(),
            found: y.len(),
        });
    }
    phi.gram.bilinear(x, y)
}

/// A tuple `Φ = (φ_1, …, φ_t)` of alternating forms on a common `F₂ⁿ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FormFamily {
    n: usize,
    forms: Vec<AlternatingForm>,
    lower: Vec<BitMatrix>,
}

impl FormFamily {
    pub fn new(n: usize, forms: Vec<AlternatingForm>) -> Result<Self> {
        for (s, f) in forms.iter().enumerate() {
            if f.n() != n {
                return Err(Error::DimensionMismatch(format!(
                    "form {s} lives on F_2^{}, family dimension is {n}",
                    f.n()
                )));
            }
        }
        let lower = forms.iter().map(AlternatingForm::lower).collect();
        Ok(Self { n, forms, lower })
    }

    pub fn zero(n: usize, t: usize) -> Self {
        Self::new(n, vec![AlternatingForm::zero(n); t]).unwrap()
    }

    /// The one-form family on `F₂²` whose group is dihedral of order 8.
    pub fn dihedral() -> Self {
        Self::new(2, vec![AlternatingForm::hyperbolic_plane()]).unwrap()
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn t(&self) -> usize {
        self.forms.len()
    }

    pub fn forms(&self) -> &[AlternatingForm] {
        &self.forms
    }

    pub fn lower(&self) -> &[BitMatrix] {
        &self.lower
    }

    fn check(&self, v: &BitVector) -> Result<()> {
        if v.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                found: v.len(),
            });
        }
        Ok(())
    }

    /// `(φ_s(x, y))_s` as a vector of length `t`.
    pub fn evaluate_all(&self, x: &BitVector, y: &BitVector) -> Result<BitVector> {
        self.check(x)?;
        self.check(y)?;
        let mut out = BitVector::zeros(self.t());
        for (s, f) in self.forms.iter().enumerate() {
            if f.gram.bilinear(x, y)? {
                out.set(s, true);
            }
        }
        Ok(out)
    }

    /// The cocycle `β_s(e, e') = eᵀ·lower[s]·e'`.
    pub fn beta(&self, e: &BitVector, e2: &BitVector) -> Result<BitVector> {
        self.check(e)?;
        self.check(e2)?;
        let mut out = BitVector::zeros(self.t());
        for (s, l) in self.lower.iter().enumerate() {
            if l.bilinear(e, e2)? {
                out.set(s, true);
            }
        }
        Ok(out)
    }

    /// Word-packed copy for `n <= 64`, `t <= 64`.
    pub fn packed(&self) -> Option<PackedForms> {
        if self.n > 64 || self.t() > 64 {
            return None;
        }
        let rows = |m: &BitMatrix| (0..self.n).map(|i| m.row(i).to_word()).collect();
        Some(PackedForms {
            n: self.n,
            t: self.t(),
            gram: self.forms.iter().map(|f| rows(&f.gram)).collect(),
            lower: self.lower.iter().map(rows).collect(),
        })
    }
}

/// A [`FormFamily`] with every matrix row packed in one word. Vectors are
/// words too; results are masks with bit `s` for form `s`.
#[derive(Clone, Debug)]
pub struct PackedForms {
    n: usize,
    t: usize,
    gram: Vec<Vec<u64>>,
    lower: Vec<Vec<u64>>,
}

#[inline]
fn parity(x: u64) -> u64 {
    (x.count_ones() & 1) as u64
}

#[inline]
fn bilinear_mask(mats: &[Vec<u64>], x: u64, y: u64) -> u64 {
    let mut out = 0u64;
    for (s, rows) in mats.iter().enumerate() {
        let mut acc = 0u64;
        let mut xs = x;
        while xs != 0 {
            let i = xs.trailing_zeros() as usize;
            xs &= xs - 1;
            acc ^= rows[i] & y;
        }
        out |= parity(acc) << s;
    }
    out
}

impl PackedForms {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn t(&self) -> usize {
        self.t
    }

    #[inline]
    pub fn phi(&self, x: u64, y: u64) -> u64 {
        bilinear_mask(&self.gram, x, y)
    }

    #[inline]
    pub fn beta(&self, x: u64, y: u64) -> u64 {
        bilinear_mask(&self.lower, x, y)
    }

    #[inline]
    pub fn q(&self, x: u64) -> u64 {
        self.beta(x, x)
    }
}

/// `q_s(e) = eᵀ·lower[s]·e`, the b-part of the square of the normal-form word
/// with a-exponents `e`.
pub fn quadratic_refinement(fam: &FormFamily, e: &BitVector) -> Result<BitVector> {
    fam.beta(e, e)
}

/// `∩_s ker(gram_s)`.
pub fn common_radical(fam: &FormFamily) -> Subspace {
    let n = fam.n();
    let rows: Vec<BitVector> = fam
        .forms()
        .iter()
        .flat_map(|f| f.gram().row_data().iter().cloned())
        .collect();
    kernel(&BitMatrix::from_rows(n, rows).expect("rows have length n"))
}

/// Draws a family from `seed`: for each form in turn, the strictly lower
/// entries `(i, j)`, `i = 1..n`, `j = 0..i`, are fair bits of one splitmix64
/// stream, and the Gram matrix is completed by symmetry.
pub fn random_family(n: usize, t: usize, seed: u64) -> Result<FormFamily> {
    if n == 0 || t == 0 {
        return Err(Error::InvalidArgument(format!(
            "random_family needs n >= 1 and t >= 1, got n={n}, t={t}"
        )));
    }
    let mut rng = SplitMix64::new(seed);
    let mut forms = Vec::with_capacity(t);
    for _ in 0..t {
        let mut gram = BitMatrix::zeros(n, n);
        for i in 1..n {
            for j in 0..i {
                if rng.next_bit() {
                    gram.set(i, j, true);
                    gram.set(j, i, true);
                }
            }
        }
        forms.push(AlternatingForm { gram });
    }
    FormFamily::new(n, forms)
}

/// A polynomial over F₂ of degree at most 2 in `v` variables. Monomials are
/// sorted variable lists of length 0, 1 or 2 (`[i, i]` is `x_i²`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticPoly {
    monomials: BTreeSet<Vec<usize>>,
}

impl QuadraticPoly {
    /// Builds a polynomial; repeated monomials cancel in pairs.
    pub fn new(v: usize, monomials: impl IntoIterator<Item = Vec<usize>>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for mut m in monomials {
            if m.len() > 2 {
                return Err(Error::InvalidPolynomial(format!(
                    "monomial {m:?} has degree above 2"
                )));
            }
            if let Some(&bad) = m.iter().find(|&&x| x >= v) {
                return Err(Error::InvalidPolynomial(format!(
                    "variable {bad} out of range for {v} variables"
                )));
            }
            m.sort_unstable();
            if !set.insert(m.clone()) {
                set.remove(&m);
            }
        }
        Ok(Self { monomials: set })
    }

    pub fn monomials(&self) -> &BTreeSet<Vec<usize>> {
        &self.monomials
    }

    pub fn eval(&self, x: &BitVector) -> bool {
        self.monomials
            .iter()
            .fold(false, |acc, m| acc ^ m.iter().all(|&i| x.get(i)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticSystem {
    v: usize,
    polys: Vec<QuadraticPoly>,
}

impl QuadraticSystem {
    pub fn new(v: usize, polys: Vec<QuadraticPoly>) -> Result<Self> {
        for p in &polys {
            if let Some(m) = p.monomials.iter().find(|m| m.iter().any(|&i| i >= v)) {
                return Err(Error::InvalidPolynomial(format!(
                    "monomial {m:?} out of range for {v} variables"
                )));
            }
        }
        Ok(Self { v, polys })
    }

    /// `q` homogeneous quadratics in `v` variables, each monomial `x_i x_j`
    /// (`i <= j`) present with probability 1/2.
    pub fn random_homogeneous(q: usize, v: usize, seed: u64) -> Self {
        let mut rng = SplitMix64::new(seed);
        let polys = (0..q)
            .map(|_| {
                let mut monos = Vec::new();
                for i in 0..v {
                    for j in i..v {
                        if rng.next_bit() {
                            monos.push(vec![i, j]);
                        }
                    }
                }
                QuadraticPoly::new(v, monos).unwrap()
            })
            .collect();
        Self { v, polys }
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn polys(&self) -> &[QuadraticPoly] {
        &self.polys
    }

    pub fn is_common_zero(&self, x: &BitVector) -> bool {
        self.polys.iter().all(|p| !p.eval(x))
    }
}

/// One polynomial compiled for word evaluation.
struct CompiledPoly {
    constant: bool,
    linear: u64,
    /// `upper[i]` holds `j > i` for every monomial `x_i x_j`.
    upper: Vec<u64>,
}

impl CompiledPoly {
    fn new(v: usize, p: &QuadraticPoly) -> Self {
        let mut c = Self {
            constant: false,
            linear: 0,
            upper: vec![0; v],
        };
        for m in &p.monomials {
            match m.as_slice() {
                [] => c.constant ^= true,
                [i] => c.linear ^= 1 << i,
                // x_i² = x_i on points of F₂^v
                [i, j] if i == j => c.linear ^= 1 << i,
                [i, j] => c.upper[*i] ^= 1 << j,
                _ => unreachable!("degree checked at construction"),
            }
        }
        c
    }

    #[inline]
    fn eval(&self, x: u64) -> bool {
        let mut acc = (self.linear & x).count_ones() & 1;
        let mut xs = x;
        while xs != 0 {
            let i = xs.trailing_zeros() as usize;
            xs &= xs - 1;
            acc ^= (self.upper[i] & x).count_ones() & 1;
        }
        self.constant ^ (acc == 1)
    }
}

/// Exhaustively searches `F₂^v \ {0}` for a common zero, returning the one
/// with the smallest integer encoding (coordinate 0 least significant).
/// `None` proves there is none. Requires `v <= 24`.
pub fn common_zero_quadratics(sys: &QuadraticSystem) -> Result<Option<BitVector>> {
    if sys.v > COMMON_ZERO_GUARD {
        return Err(Error::guard(
            "common_zero_v",
            COMMON_ZERO_GUARD as u64,
            sys.v as u64,
        ));
    }
    let compiled: Vec<CompiledPoly> = sys
        .polys
        .iter()
        .map(|p| CompiledPoly::new(sys.v, p))
        .collect();
    let hit = (1u64..1u64 << sys.v).find(|&x| compiled.iter().all(|p| !p.eval(x)));
    Ok(hit.map(|x| BitVector::from_word(sys.v, x)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> BitVector {
        BitVector::parse01(s).unwrap()
    }

    fn random_vec(rng: &mut SplitMix64, n: usize) -> BitVector {
        BitVector::from_bits(&(0..n).map(|_| rng.next_bit()).collect::<Vec<_>>())
    }

    #[test]
    fn evaluate_examples() {
        let h = AlternatingForm::hyperbolic_plane();
        assert!(evaluate(&h, &v("10"), &v("01")).unwrap());
        assert!(!evaluate(&h, &v("11"), &v("11")).unwrap());
        assert!(evaluate(&h, &v("1"), &v("01")).is_err());
    }

    #[test]
    fn evaluate_matches_triple_loop() {
        let mut rng = SplitMix64::new(3);
        for seed in 0..50 {
            let fam = random_family(7, 1, seed).unwrap();
            let f = &fam.forms()[0];
            let (x, y) = (random_vec(&mut rng, 7), random_vec(&mut rng, 7));
            let mut naive = false;
            for i in 0..7 {
                for j in 0..7 {
                    naive ^= x.get(i) && f.gram().get(i, j) && y.get(j);
                }
            }
            assert_eq!(evaluate(f, &x, &y).unwrap(), naive);
            assert_eq!(evaluate(f, &x, &y).unwrap(), evaluate(f, &y, &x).unwrap());
            assert!(!evaluate(f, &x, &x).unwrap());
        }
    }

    #[test]
    fn rejects_bad_gram() {
        let asym = BitMatrix::parse_rows(2, &["01", "00"]).unwrap();
        assert!(AlternatingForm::new(asym).is_err());
        let diag = BitMatrix::parse_rows(2, &["10", "00"]).unwrap();
        assert!(AlternatingForm::new(diag).is_err());
    }

    #[test]
    fn refinement_examples() {
        let d8 = FormFamily::dihedral();
        assert!(quadratic_refinement(&d8, &v("10")).unwrap().is_zero());
        assert!(quadratic_refinement(&d8, &v("01")).unwrap().is_zero());
        assert_eq!(quadratic_refinement(&d8, &v("11")).unwrap(), v("1"));
        let fam = random_family(6, 3, 11).unwrap();
        for i in 0..6 {
            assert!(quadratic_refinement(&fam, &BitVector::unit(6, i))
                .unwrap()
                .is_zero());
        }
    }

    #[test]
    fn polarization_identity() {
        let mut rng = SplitMix64::new(99);
        for seed in 0..1000 {
            let n = 1 + (seed % 9) as usize;
            let t = 1 + (seed % 4) as usize;
            let fam = random_family(n, t, seed).unwrap();
            let (a, b) = (random_vec(&mut rng, n), random_vec(&mut rng, n));
            let lhs = quadratic_refinement(&fam, &a.xor(&b)).unwrap();
            let rhs = quadratic_refinement(&fam, &a)
                .unwrap()
                .xor(&quadratic_refinement(&fam, &b).unwrap())
                .xor(&fam.evaluate_all(&a, &b).unwrap());
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn packed_agrees_with_dense() {
        let mut rng = SplitMix64::new(5);
        let fam = random_family(9, 5, 1).unwrap();
        let p = fam.packed().unwrap();
        for _ in 0..200 {
            let (a, b) = (random_vec(&mut rng, 9), random_vec(&mut rng, 9));
            assert_eq!(
                p.phi(a.to_word(), b.to_word()),
                fam.evaluate_all(&a, &b).unwrap().to_word()
            );
            assert_eq!(
                p.beta(a.to_word(), b.to_word()),
                fam.beta(&a, &b).unwrap().to_word()
            );
        }
    }

    #[test]
    fn radical_examples() {
        assert_eq!(common_radical(&FormFamily::zero(4, 2)), Subspace::full(4));
        assert_eq!(common_radical(&FormFamily::dihedral()).dim(), 0);
        let block = BitMatrix::parse_rows(3, &["010", "100", "000"]).unwrap();
        let fam = FormFamily::new(3, vec![AlternatingForm::new(block).unwrap()]).unwrap();
        assert_eq!(common_radical(&fam).basis(), &[v("001")]);
    }

    #[test]
    fn radical_is_in_each_kernel() {
        for seed in 0..30 {
            let fam = random_family(6, 2, seed).unwrap();
            let rad = common_radical(&fam);
            for f in fam.forms() {
                assert!(rad.is_subspace_of(&kernel(f.gram())));
            }
        }
    }

    #[test]
    fn random_family_determinism_and_support() {
        assert_eq!(
            random_family(5, 3, 42).unwrap(),
            random_family(5, 3, 42).unwrap()
        );
        let outputs: BTreeSet<String> = (0..64)
            .map(|s| {
                random_family(2, 1, s).unwrap().forms()[0]
                    .gram()
                    .row_strings()
                    .join("|")
            })
            .collect();
        assert_eq!(outputs.len(), 2);
        assert!(random_family(0, 1, 0).is_err());
    }

    #[test]
    fn random_family_bits_are_fair() {
        // each of the 6 lower entries of a 4x4 form over 10^4 seeds;
        // binomial sd is sqrt(N/4) = 50, 5 sd = 250
        let trials = 10_000u64;
        let mut counts = [0u64; 6];
        for seed in 0..trials {
            let fam = random_family(4, 1, seed).unwrap();
            let g = fam.forms()[0].gram();
            let mut k = 0;
            for i in 1..4 {
                for j in 0..i {
                    counts[k] += g.get(i, j) as u64;
                    k += 1;
                }
            }
        }
        for c in counts {
            assert!((c as i64 - 5000).abs() <= 250, "count {c}");
        }
    }

    #[test]
    fn common_zero_examples() {
        let sys =
            QuadraticSystem::new(3, vec![QuadraticPoly::new(3, [vec![0, 1]]).unwrap()]).unwrap();
        let z = common_zero_quadratics(&sys).unwrap().unwrap();
        assert!(!z.is_zero() && sys.is_common_zero(&z));

        let aniso = QuadraticPoly::new(2, [vec![0, 0], vec![0, 1], vec![1, 1]]).unwrap();
        let sys = QuadraticSystem::new(2, vec![aniso]).unwrap();
        assert_eq!(common_zero_quadratics(&sys).unwrap(), None);
        for w in 1..4u64 {
            assert!(!sys.is_common_zero(&BitVector::from_word(2, w)));
        }

        let big = QuadraticSystem::new(25, vec![]).unwrap();
        assert!(common_zero_quadratics(&big).unwrap_err().is_guard());
    }

    #[test]
    fn compiled_evaluation_matches_monomials() {
        for seed in 0..100 {
            let sys = QuadraticSystem::random_homogeneous(2, 6, seed);
            for p in sys.polys() {
                let c = CompiledPoly::new(6, p);
                for x in 0..64u64 {
                    assert_eq!(c.eval(x), p.eval(&BitVector::from_word(6, x)));
                }
            }
        }
    }

    #[test]
    fn duplicate_monomials_cancel() {
        let p = QuadraticPoly::new(2, [vec![1, 0], vec![0, 1]]).unwrap();
        assert!(p.monomials().is_empty());
        assert!(QuadraticPoly::new(2, [vec![0, 1, 1]]).is_err());
        assert!(QuadraticPoly::new(2, [vec![2]]).is_err());
    }
}
