//! Arithmetic in the class-two 2-group `G_Φ` presented by a form family.
//!
//! Generators `a_1..a_n, b_1..b_t` satisfy `a_i² = b_j² = [a_i, b_j] =
//! [b_s, b_u] = 1` and `[a_i, a_j] = Π_s b_s^{φ_s(a_i, a_j)}`. Every element
//! has a unique normal form `a^e b^f`, and
//!
//! ```text
//! (e, f) · (e', f') = (e + e', f + f' + β(e, e'))
//! ```
//!
//! with `β_s(e, e') = eᵀ·lower[s]·e'` built from the strictly lower triangle.
//! The group has order `2^{n+t}`, `B = ⟨b⟩` is central, and squares and
//! commutators are read off the quadratic refinement and the forms.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::forms::{common_radical, quadratic_refinement, random_family, FormFamily, PackedForms};
use crate::gf2::{kernel, subspace_span, BitMatrix, BitVector, Subspace, SubspaceCursor};
use crate::rng::trial_seed;

/// Largest `n` for exhaustive isotropic-subspace search.
pub const EXHAUSTIVE_GUARD: usize = 16;
/// Largest `n` for branch-and-bound isotropic-subspace search; the search
/// starts from the full list of `q`-zero vectors of `F₂ⁿ`.
pub const BNB_GUARD: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupElement {
    pub a: BitVector,
    pub b: BitVector,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiGroup {
    fam: FormFamily,
}

impl PhiGroup {
    pub fn new(fam: FormFamily) -> Self {
        Self { fam }
    }

    pub fn family(&self) -> &FormFamily {
        &self.fam
    }

    pub fn n(&self) -> usize {
        self.fam.n()
    }

    pub fn t(&self) -> usize {
        self.fam.t()
    }

    /// `log₂ |G|`.
    pub fn order_exponent(&self) -> usize {
        self.n() + self.t()
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement {
            a: BitVector::zeros(self.n()),
            b: BitVector::zeros(self.t()),
        }
    }

    pub fn a_gen(&self, i: usize) -> GroupElement {
        GroupElement {
            a: BitVector::unit(self.n(), i),
            b: BitVector::zeros(self.t()),
        }
    }

    pub fn b_gen(&self, s: usize) -> GroupElement {
        GroupElement {
            a: BitVector::zeros(self.n()),
            b: BitVector::unit(self.t(), s),
        }
    }

    fn check(&self, g: &GroupElement) -> Result<()> {
        if g.a.len() != self.n() {
            return Err(Error::LengthMismatch {
                expected: self.n(),
                found: g.a.len(),
            });
        }
        if g.b.len() != self.t() {
            return Err(Error::LengthMismatch {
                expected: self.t(),
                found: g.b.len(),
            });
        }
        Ok(())
    }

    pub fn multiply(&self, g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
        self.check(g)?;
        self.check(h)?;
        let mut b = g.b.xor(&h.b);
        b.xor_assign(&self.fam.beta(&g.a, &h.a)?);
        Ok(GroupElement {
            a: g.a.xor(&h.a),
            b,
        })
    }

    /// `(a, b)⁻¹ = (a, b + q(a))`.
    pub fn inverse(&self, g: &GroupElement) -> Result<GroupElement> {
        self.check(g)?;
        Ok(GroupElement {
            a: g.a.clone(),
            b: g.b.xor(&quadratic_refinement(&self.fam, &g.a)?),
        })
    }

    /// `[g, h] = g⁻¹ h⁻¹ g h`.
    pub fn commutator(&self, g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
        let gi = self.inverse(g)?;
        let hi = self.inverse(h)?;
        self.multiply(&self.multiply(&gi, &hi)?, &self.multiply(g, h)?)
    }

    pub fn element_order(&self, g: &GroupElement) -> Result<u32> {
        self.check(g)?;
        if g.a.is_zero() && g.b.is_zero() {
            Ok(1)
        } else if quadratic_refinement(&self.fam, &g.a)?.is_zero() {
            Ok(2)
        } else {
            Ok(4)
        }
    }

    /// Packs `(a, b)` into the id `a | b << n`. Requires `n + t <= 64`.
    pub fn element_id(&self, g: &GroupElement) -> u64 {
        assert!(self.order_exponent() <= 64);
        g.a.to_word() | (g.b.to_word() << self.n())
    }

    pub fn element_from_id(&self, id: u64) -> GroupElement {
        let n = self.n();
        assert!(self.order_exponent() <= 64);
        GroupElement {
            a: BitVector::from_word(n, id),
            b: BitVector::from_word(self.t(), if n >= 64 { 0 } else { id >> n }),
        }
    }

    /// Word-level arithmetic on packed ids, available when `n + t <= 64`.
    pub fn packed(&self) -> Option<PackedPhi> {
        if self.order_exponent() > 64 || self.n() >= 64 {
            return None;
        }
        Some(PackedPhi {
            forms: self.fam.packed()?,
        })
    }
}

/// Multiplication on ids `a | b << n`.
#[derive(Clone, Debug)]
pub struct PackedPhi {
    forms: PackedForms,
}

impl PackedPhi {
    #[inline]
    pub fn n(&self) -> usize {
        self.forms.n()
    }

    #[inline]
    pub fn mul(&self, g: u64, h: u64) -> u64 {
        let n = self.n();
        let amask = crate::gf2::low_mask(n);
        let (ga, ha) = (g & amask, h & amask);
        g ^ h ^ (self.forms.beta(ga, ha) << n)
    }

    #[inline]
    pub fn inverse(&self, g: u64) -> u64 {
        let n = self.n();
        g ^ (self.forms.q(g & crate::gf2::low_mask(n)) << n)
    }
}

/// The center `{(e, f) : e ∈ radical}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CenterInfo {
    /// a-parts of central elements: the common radical of the family.
    pub radical: Subspace,
    /// `log₂ |Z(G)| = t + dim radical`.
    pub order_exponent: usize,
    /// a-parts of central involutions, `{e ∈ radical : q(e) = 0}`.
    pub involution_radical: Subspace,
    /// Rank of the subgroup of central elements of order at most 2,
    /// `t + dim involution_radical`.
    pub elementary_rank: usize,
    /// Whether some central element has order 4.
    pub has_order_four: bool,
}

pub fn center(g: &PhiGroup) -> CenterInfo {
    let fam = g.family();
    let radical = common_radical(fam);
    // q is additive on the radical, so its zero set there is a subspace:
    // the kernel of coefficients c ↦ Σ c_k q(r_k).
    let d = radical.dim();
    let images: Vec<BitVector> = radical
        .basis()
        .iter()
        .map(|r| quadratic_refinement(fam, r).expect("radical vectors have length n"))
        .collect();
    let mut coeff = BitMatrix::zeros(fam.t(), d);
    for (k, img) in images.iter().enumerate() {
        for s in img.ones() {
            coeff.set(s, k, true);
        }
    }
    let ker = kernel(&coeff);
    let vectors: Vec<BitVector> = ker
        .basis()
        .iter()
        .map(|c| {
            let mut v = BitVector::zeros(fam.n());
            for k in c.ones() {
                v.xor_assign(&radical.basis()[k]);
            }
            v
        })
        .collect();
    let involution_radical = subspace_span(fam.n(), &vectors).expect("lengths agree");
    CenterInfo {
        order_exponent: fam.t() + d,
        elementary_rank: fam.t() + involution_radical.dim(),
        has_order_four: involution_radical.dim() < d,
        involution_radical,
        radical,
    }
}

/// Whether every involution is central. An involution `(a, b)` has
/// `q(a) = 0`, and it is central iff `a` lies in the radical, so this holds
/// iff q has no zero outside the radical.
pub fn is_two_central(g: &PhiGroup) -> Result<bool> {
    let n = g.n();
    if n > BNB_GUARD {
        return Err(Error::guard("two_central_n", BNB_GUARD as u64, n as u64));
    }
    let forms = g
        .family()
        .packed()
        .ok_or_else(|| Error::guard("packed_t", 64, g.t() as u64))?;
    let radical = common_radical(g.family());
    Ok((1u64..1 << n).all(|a| forms.q(a) != 0 || radical.contains(&BitVector::from_word(n, a))))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SearchMode {
    Exhaustive,
    BranchAndBound,
}

impl SearchMode {
    pub fn name(self) -> &'static str {
        match self {
            SearchMode::Exhaustive => "exhaustive",
            SearchMode::BranchAndBound => "bnb",
        }
    }
}

/// A largest subspace `U ≤ F₂ⁿ` with `φ_s|_U = 0` and `q_s|_U = 0` for all s.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsotropicResult {
    pub dim: usize,
    pub witness: Subspace,
}

/// First basis row at which the span fails to be a totally isotropic `q`-zero
/// subspace, or `None` if it qualifies. Since `q` is additive where every
/// `φ_s` vanishes, checking `q` on the basis suffices.
fn first_failing_row(p: &PackedForms, basis: &[u64]) -> Option<usize> {
    basis
        .iter()
        .enumerate()
        .position(|(i, &x)| p.q(x) != 0 || basis[..i].iter().any(|&y| p.phi(x, y) != 0))
}

fn witness_from_words(n: usize, words: &[u64]) -> Subspace {
    let vs: Vec<BitVector> = words.iter().map(|&w| BitVector::from_word(n, w)).collect();
    subspace_span(n, &vs).expect("lengths agree")
}

fn exhaustive_isotropic(fam: &FormFamily) -> Result<IsotropicResult> {
    let n = fam.n();
    if n > EXHAUSTIVE_GUARD {
        return Err(Error::guard(
            "isotropic_exhaustive_n",
            EXHAUSTIVE_GUARD as u64,
            n as u64,
        ));
    }
    let p = fam.packed().expect("n <= 16 and t checked by caller");
    let mut best = IsotropicResult {
        dim: 0,
        witness: Subspace::zero(n),
    };
    // Qualifying subspaces are closed under taking subspaces, so the first
    // dimension with none bounds the answer.
    for d in 1..=n {
        let mut cursor = SubspaceCursor::new(n, d);
        let mut found = None;
        while let Some(rows) = cursor.advance() {
            match first_failing_row(&p, rows) {
                None => {
                    found = Some(rows.to_vec());
                    break;
                }
                // every subspace sharing the failing prefix fails too
                Some(i) => cursor.skip_past_row(i),
            }
        }
        match found {
            Some(rows) => {
                best = IsotropicResult {
                    dim: d,
                    witness: witness_from_words(n, &rows),
                }
            }
            None => break,
        }
    }
    Ok(best)
}

struct Bnb<'a> {
    forms: &'a PackedForms,
    best: Vec<u64>,
    /// Stop as soon as a subspace of this dimension is found.
    target: Option<usize>,
}

impl Bnb<'_> {
    fn done(&self) -> bool {
        self.target.is_some_and(|k| self.best.len() >= k)
    }

    /// `cands` are canonical coset representatives (modulo the current
    /// subspace) of q-zero vectors orthogonal to it, ordered by weight.
    fn run(&mut self, basis: &mut Vec<u64>, cands: &[u64]) {
        if basis.len() > self.best.len() {
            self.best = basis.clone();
        }
        for idx in 0..cands.len() {
            if self.done() {
                return;
            }
            // an extension by e dimensions needs 2^e - 1 representatives
            let remaining = cands.len() - idx;
            let reachable = (usize::BITS - (remaining + 1).leading_zeros() - 1) as usize;
            if basis.len() + reachable <= self.best.len() {
                return;
            }
            let v = cands[idx];
            let pivot = v & v.wrapping_neg();
            let mut next: Vec<u64> = cands[idx + 1..]
                .iter()
                .filter(|&&c| self.forms.phi(c, v) == 0)
                .map(|&c| if c & pivot != 0 { c ^ v } else { c })
                .collect();
            next.sort_unstable_by_key(|&c| (c.count_ones(), c));
            next.dedup();
            basis.push(v);
            self.run(basis, &next);
            basis.pop();
        }
    }
}

fn bnb_isotropic(fam: &FormFamily, target: Option<usize>) -> Result<IsotropicResult> {
    let n = fam.n();
    if n > BNB_GUARD {
        return Err(Error::guard("isotropic_bnb_n", BNB_GUARD as u64, n as u64));
    }
    let p = fam.packed().expect("n <= 20 and t checked by caller");
    let mut cands: Vec<u64> = (1u64..1u64 << n).filter(|&x| p.q(x) == 0).collect();
    cands.sort_unstable_by_key(|&c| (c.count_ones(), c));
    let mut bnb = Bnb {
        forms: &p,
        best: Vec::new(),
        target,
    };
    bnb.run(&mut Vec::new(), &cands);
    Ok(IsotropicResult {
        dim: bnb.best.len(),
        witness: witness_from_words(n, &bnb.best),
    })
}

fn check_t(fam: &FormFamily) -> Result<()> {
    if fam.t() > 64 {
        return Err(Error::guard("isotropic_t", 64, fam.t() as u64));
    }
    Ok(())
}

/// Maximum dimension of a totally isotropic subspace on which the quadratic
/// refinement vanishes, with a witness.
pub fn max_isotropic_qzero(fam: &FormFamily, mode: SearchMode) -> Result<IsotropicResult> {
    check_t(fam)?;
    match mode {
        SearchMode::Exhaustive => exhaustive_isotropic(fam),
        SearchMode::BranchAndBound => bnb_isotropic(fam, None),
    }
}

/// Whether some `q`-zero totally isotropic subspace of dimension `k` exists;
/// branch and bound stopping at the first hit.
pub fn has_isotropic_qzero_of_dim(fam: &FormFamily, k: usize) -> Result<Option<Subspace>> {
    check_t(fam)?;
    if k == 0 {
        return Ok(Some(Subspace::zero(fam.n())));
    }
    let r = bnb_isotropic(fam, Some(k))?;
    Ok((r.dim >= k).then_some(r.witness))
}

/// `t + max_isotropic_qzero(fam).dim`: the largest rank of an elementary
/// abelian subgroup, every maximal one containing `B`.
pub fn group_rank(g: &PhiGroup, mode: SearchMode) -> Result<usize> {
    Ok(g.t() + max_isotropic_qzero(g.family(), mode)?.dim)
}

/// `2n < t(k − 1)`, exact.
pub fn olshanskii_condition(n: u64, t: u64, k: u64) -> bool {
    let lhs = 2u128 * n as u128;
    let rhs = t as u128 * (k as u128).saturating_sub(1);
    lhs < rhs
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FoundFamily {
    pub trial_index: u64,
    pub trial_seed: u64,
    pub family: FormFamily,
    /// Exact maximum q-zero isotropic dimension of the returned family.
    pub max_isotropic_dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome {
    pub n: usize,
    pub t: usize,
    pub k: usize,
    pub trials: u64,
    pub seed: u64,
    pub condition_holds: bool,
    pub found: Option<FoundFamily>,
    /// Set when the instance is beyond the search guard; no trials ran.
    pub guard: Option<Error>,
}

/// Draws trial families `random_family(n, t, trial_seed(seed, i))` for
/// `i = 0..trials` and returns the first (smallest `i`) whose q-zero
/// isotropic subspaces all have dimension at most `k − 1`.
///
/// Trials run in parallel; the smallest qualifying index wins, so the result
/// does not depend on scheduling.
pub fn search_forms(n: usize, t: usize, k: usize, trials: u64, seed: u64) -> Result<SearchOutcome> {
    if n == 0 || t == 0 || k == 0 {
        return Err(Error::InvalidArgument(format!(
            "search needs positive n, t, k; got n={n}, t={t}, k={k}"
        )));
    }
    let mut outcome = SearchOutcome {
        n,
        t,
        k,
        trials,
        seed,
        condition_holds: olshanskii_condition(n as u64, t as u64, k as u64),
        found: None,
        guard: None,
    };
    if n > BNB_GUARD || t > 64 {
        outcome.guard = Some(if n > BNB_GUARD {
            Error::guard("isotropic_bnb_n", BNB_GUARD as u64, n as u64)
        } else {
            Error::guard("isotropic_t", 64, t as u64)
        });
        return Ok(outcome);
    }
    let hit = (0..trials).into_par_iter().find_map_first(|i| {
        let s = trial_seed(seed, i);
        let fam = random_family(n, t, s).expect("n, t positive");
        match has_isotropic_qzero_of_dim(&fam, k) {
            Ok(None) => Some((i, s, fam)),
            _ => None,
        }
    });
    if let Some((i, s, fam)) = hit {
        let dim = bnb_isotropic(&fam, None)?.dim;
        outcome.found = Some(FoundFamily {
            trial_index: i,
            trial_seed: s,
            family: fam,
            max_isotropic_dim: dim,
        });
    }
    Ok(outcome)
}

/// `1 → V → G_Φ → W → 1` with `V = {(u, f) : u ∈ U}` for a maximal q-zero
/// isotropic `U`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionProfile {
    /// rank of `V`, `t + dim U`
    pub kernel_rank: usize,
    /// rank of `W = G/V`, `n − dim U`
    pub quotient_rank: usize,
    pub v_witness: Subspace,
}

pub fn extension_profile(g: &PhiGroup, mode: SearchMode) -> Result<ExtensionProfile> {
    let iso = max_isotropic_qzero(g.family(), mode)?;
    let u = iso.witness;
    let lifts: Vec<GroupElement> = u
        .basis()
        .iter()
        .map(|a| GroupElement {
            a: a.clone(),
            b: BitVector::zeros(g.t()),
        })
        .chain((0..g.t()).map(|s| g.b_gen(s)))
        .collect();
    let id = g.identity();
    for (i, x) in lifts.iter().enumerate() {
        if g.multiply(x, x)? != id {
            return Err(Error::Internal(format!(
                "lift {i} of V does not square to 1"
            )));
        }
        for y in &lifts[..i] {
            if g.multiply(x, y)? != g.multiply(y, x)? {
                return Err(Error::Internal("lifts of V do not commute".into()));
            }
        }
        for j in 0..g.n() {
            let c = g.commutator(x, &g.a_gen(j))?;
            if !c.a.is_zero() {
                return Err(Error::Internal("V is not normal".into()));
            }
        }
    }
    Ok(ExtensionProfile {
        kernel_rank: g.t() + u.dim(),
        quotient_rank: g.n() - u.dim(),
        v_witness: u,
    })
}
