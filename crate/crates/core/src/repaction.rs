//! Finite groups as multiplication oracles, monomial representations induced
//! from ±1 characters, and exact freeness and isotropy analysis of diagonal
//! actions on products of the unit spheres of such representations.
//!
//! A group element `g` acts on `Ind_C^G(χ)` by a signed permutation of the
//! left cosets of `C`. It fixes a point of the unit sphere iff it has
//! eigenvalue +1, which for a signed permutation means some cycle has sign
//! product +1. On a product of spheres the factors are independent, so `g`
//! fixes a point of the product iff it has a +1 eigenvalue on every factor.

use std::collections::VecDeque;

use crate::elemab::{for_each_elementary_abelian, max_elementary_abelian, ElemAbSubgroup};
use crate::error::{Error, Result};
use crate::phigroup::{PackedPhi, PhiGroup};

/// Largest order accepted by any oracle.
pub const ORDER_LIMIT: usize = 1 << 16;
/// Tables up to this order are checked for associativity at construction.
pub const ASSOCIATIVITY_CHECK_LIMIT: usize = 512;
/// Largest order accepted by [`max_isotropy_rank`].
pub const ISOTROPY_GUARD: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    CayleyTable,
    PhiGroup,
}

#[derive(Clone, Debug)]
enum Mul {
    Table(Vec<u32>),
    Phi(PackedPhi),
}

/// A finite group on ids `0..order`, id 0 the identity.
#[derive(Clone, Debug)]
pub struct GroupOracle {
    order: usize,
    mul: Mul,
    inverses: Vec<u32>,
    provenance: Provenance,
    phi: Option<PhiGroup>,
}

impl GroupOracle {
    /// Validates and wraps a Cayley table. Rows and columns must be
    /// permutations of `0..N`, id 0 must be the identity, and for
    /// `N <= 512` every triple is checked for associativity.
    pub fn from_table(rows: Vec<Vec<usize>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidTable("empty table".into()));
        }
        if n > ORDER_LIMIT {
            return Err(Error::guard("group_order", ORDER_LIMIT as u64, n as u64));
        }
        let mut flat = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidTable(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            for (j, &x) in row.iter().enumerate() {
                if x >= n {
                    return Err(Error::InvalidTable(format!(
                        "entry ({i},{j}) = {x} is not an element id"
                    )));
                }
                flat.push(x as u32);
            }
        }
        for i in 0..n {
            if flat[i] as usize != i || flat[i * n] as usize != i {
                return Err(Error::InvalidTable(format!(
                    "id 0 is not the identity (row/column {i})"
                )));
            }
        }
        let mut seen = vec![0usize; n];
        for i in 0..n {
            seen.iter_mut().for_each(|c| *c = 0);
            for j in 0..n {
                seen[flat[i * n + j] as usize] += 1;
            }
            if seen.iter().any(|&c| c != 1) {
                return Err(Error::InvalidTable(format!("row {i} is not a permutation")));
            }
            seen.iter_mut().for_each(|c| *c = 0);
            for j in 0..n {
                seen[flat[j * n + i] as usize] += 1;
            }
            if seen.iter().any(|&c| c != 1) {
                return Err(Error::InvalidTable(format!(
                    "column {i} is not a permutation"
                )));
            }
        }
        if n <= ASSOCIATIVITY_CHECK_LIMIT {
            check_associative(n, &flat)?;
        }
        let mut inverses = vec![0u32; n];
        for i in 0..n {
            let j = (0..n).find(|&j| flat[i * n + j] == 0).unwrap();
            inverses[i] = j as u32;
        }
        Ok(Self {
            order: n,
            mul: Mul::Table(flat),
            inverses,
            provenance: Provenance::CayleyTable,
            phi: None,
        })
    }

    /// The group `G_Φ` on ids `a | b << n`. Requires `n + t <= 16`.
    pub fn from_phi(group: &PhiGroup) -> Result<Self> {
        let e = group.order_exponent();
        if e > 16 {
            return Err(Error::guard("group_order_log2", 16, e as u64));
        }
        let packed = group.packed().expect("n + t <= 16");
        let order = 1usize << e;
        let inverses = (0..order as u64)
            .map(|g| packed.inverse(g) as u32)
            .collect();
        let mul = if order <= ASSOCIATIVITY_CHECK_LIMIT {
            let mut flat = Vec::with_capacity(order * order);
            for g in 0..order as u64 {
                for h in 0..order as u64 {
                    flat.push(packed.mul(g, h) as u32);
                }
            }
            check_associative(order, &flat)?;
            Mul::Table(flat)
        } else {
            Mul::Phi(packed)
        };
        Ok(Self {
            order,
            mul,
            inverses,
            provenance: Provenance::PhiGroup,
            phi: Some(group.clone()),
        })
    }

    pub fn cyclic(n: usize) -> Self {
        Self::from_table(
            (0..n)
                .map(|i| (0..n).map(|j| (i + j) % n).collect())
                .collect(),
        )
        .expect("cyclic table is a group")
    }

    /// `(Z/2)^r` with ids as bit vectors under xor.
    pub fn elementary_abelian(r: usize) -> Self {
        let n = 1usize << r;
        Self::from_table((0..n).map(|i| (0..n).map(|j| i ^ j).collect()).collect())
            .expect("xor table is a group")
    }

    /// The dihedral group of order `2m`, id `k + m·e` for `r^k s^e`.
    pub fn dihedral(m: usize) -> Self {
        let n = 2 * m;
        let table = (0..n)
            .map(|x| {
                let (k, e) = (x % m, x / m);
                (0..n)
                    .map(|y| {
                        let (l, f) = (y % m, y / m);
                        let rot = if e == 0 { (k + l) % m } else { (k + m - l) % m };
                        rot + m * ((e + f) % 2)
                    })
                    .collect()
            })
            .collect();
        Self::from_table(table).expect("dihedral table is a group")
    }

    /// The quaternion group with ids `1, −1, i, −i, j, −j, k, −k` = `0..8`.
    pub fn quaternion() -> Self {
        // unit index 0..4 for 1, i, j, k; product table of units with signs
        const UNIT: [[(usize, bool); 4]; 4] = [
            [(0, false), (1, false), (2, false), (3, false)],
            [(1, false), (0, true), (3, false), (2, true)],
            [(2, false), (3, true), (0, true), (1, false)],
            [(3, false), (2, false), (1, true), (0, true)],
        ];
        let table = (0..8)
            .map(|x| {
                (0..8)
                    .map(|y| {
                        let (ux, sx) = (x / 2, x % 2 == 1);
                        let (uy, sy) = (y / 2, y % 2 == 1);
                        let (u, s) = UNIT[ux][uy];
                        2 * u + (s ^ sx ^ sy) as usize
                    })
                    .collect()
            })
            .collect();
        Self::from_table(table).expect("quaternion table is a group")
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn phi_group(&self) -> Option<&PhiGroup> {
        self.phi.as_ref()
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.mul {
            Mul::Table(t) => t[a * self.order + b] as usize,
            Mul::Phi(p) => p.mul(a as u64, b as u64) as usize,
        }
    }

    #[inline]
    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a] as usize
    }

    pub fn commute(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn involutions(&self) -> Vec<usize> {
        (1..self.order).filter(|&g| self.mul(g, g) == 0).collect()
    }

    pub fn check_id(&self, g: usize) -> Result<()> {
        if g >= self.order {
            return Err(Error::InvalidElement(g));
        }
        Ok(())
    }

    /// Elements of the subgroup generated by `gens`, in discovery order
    /// starting from the identity.
    pub fn subgroup(&self, gens: &[usize]) -> Result<Vec<usize>> {
        for &g in gens {
            self.check_id(g)?;
        }
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut out = vec![0];
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                    queue.push_back(y);
                }
            }
        }
        Ok(out)
    }
}

fn check_associative(n: usize, t: &[u32]) -> Result<()> {
    for a in 0..n {
        for b in 0..n {
            let ab = t[a * n + b] as usize;
            let row_ab = &t[ab * n..ab * n + n];
            for c in 0..n {
                let bc = t[b * n + c] as usize;
                if row_ab[c] != t[a * n + bc] {
                    return Err(Error::InvalidTable(format!(
                        "({a}·{b})·{c} != {a}·({b}·{c})"
                    )));
                }
            }
        }
    }
    Ok(())
}

/// `g` acting on `Ind(χ)`: basis vector `i` goes to `sign[i]` times basis
/// vector `image[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedPermutation {
    pub image: Vec<usize>,
    pub sign: Vec<i8>,
}

impl SignedPermutation {
    pub fn dim(&self) -> usize {
        self.image.len()
    }

    pub fn trace(&self) -> i64 {
        self.image
            .iter()
            .zip(&self.sign)
            .enumerate()
            .filter(|(i, (j, _))| i == *j)
            .map(|(_, (_, &s))| s as i64)
            .sum()
    }

    /// Cycles as (length, sign product).
    pub fn cycles(&self) -> Vec<(usize, i8)> {
        let mut seen = vec![false; self.dim()];
        let mut out = Vec::new();
        for start in 0..self.dim() {
            if seen[start] {
                continue;
            }
            let (mut len, mut sign, mut i) = (0, 1i8, start);
            while !seen[i] {
                seen[i] = true;
                sign *= self.sign[i];
                len += 1;
                i = self.image[i];
            }
            out.push((len, sign));
        }
        out
    }

    /// A cycle of length `L` with sign product `s` contributes the roots of
    /// `λ^L = s`; +1 is among them iff `s = +1`.
    pub fn has_plus_one_eigenvalue(&self) -> bool {
        self.cycles().iter().any(|&(_, s)| s == 1)
    }
}

/// `Ind_C^G(χ)` for a ±1 character `χ` of `C = ⟨c_gens⟩`.
#[derive(Clone, Debug)]
pub struct MonomialRep<'g> {
    group: &'g GroupOracle,
    subgroup_gens: Vec<usize>,
    /// χ on every element of `G`, 0 off `C`.
    character: Vec<i8>,
    subgroup_order: usize,
    cosets: Vec<usize>,
    coset_of: Vec<u32>,
}

impl<'g> MonomialRep<'g> {
    pub fn group(&self) -> &'g GroupOracle {
        self.group
    }

    pub fn dim(&self) -> usize {
        self.cosets.len()
    }

    pub fn subgroup_gens(&self) -> &[usize] {
        &self.subgroup_gens
    }

    pub fn subgroup_order(&self) -> usize {
        self.subgroup_order
    }

    /// Left-coset representatives, smallest uncovered id first.
    pub fn cosets(&self) -> &[usize] {
        &self.cosets
    }

    /// χ(c), or `None` when `c ∉ C`.
    pub fn character(&self, c: usize) -> Option<i8> {
        match self.character[c] {
            0 => None,
            s => Some(s),
        }
    }

    /// `g·r_i = r_j·c` gives `image[i] = j` and `sign[i] = χ(c)`.
    pub fn action(&self, g: usize) -> SignedPermutation {
        let gr = self.group;
        let mut image = Vec::with_capacity(self.dim());
        let mut sign = Vec::with_capacity(self.dim());
        for &r in &self.cosets {
            let x = gr.mul(g, r);
            let j = self.coset_of[x] as usize;
            let c = gr.mul(gr.inverse(self.cosets[j]), x);
            image.push(j);
            sign.push(self.character[c]);
        }
        SignedPermutation { image, sign }
    }

    pub fn trace(&self, g: usize) -> i64 {
        let gr = self.group;
        self.cosets
            .iter()
            .enumerate()
            .filter_map(|(i, &r)| {
                let x = gr.mul(g, r);
                (self.coset_of[x] as usize == i).then(|| {
                    let c = gr.mul(gr.inverse(r), x);
                    self.character[c] as i64
                })
            })
            .sum()
    }
}

pub fn build_induced<'g>(
    group: &'g GroupOracle,
    c_gens: &[usize],
    character_on_gens: &[i8],
) -> Result<MonomialRep<'g>> {
    if c_gens.len() != character_on_gens.len() {
        return Err(Error::LengthMismatch {
            expected: c_gens.len(),
            found: character_on_gens.len(),
        });
    }
    for (&g, &s) in c_gens.iter().zip(character_on_gens) {
        group.check_id(g)?;
        if s != 1 && s != -1 {
            return Err(Error::InconsistentCharacter(format!(
                "value {s} on generator {g} is not ±1"
            )));
        }
    }
    let n = group.order();
    let mut character = vec![0i8; n];
    character[0] = 1;
    let mut queue = VecDeque::from([0usize]);
    let mut subgroup_order = 1;
    while let Some(x) = queue.pop_front() {
        for (&g, &s) in c_gens.iter().zip(character_on_gens) {
            let y = group.mul(x, g);
            let value = character[x] * s;
            if character[y] == 0 {
                character[y] = value;
                subgroup_order += 1;
                queue.push_back(y);
            } else if character[y] != value {
                return Err(Error::InconsistentCharacter(format!(
                    "element {y} receives both {} and {value}",
                    character[y]
                )));
            }
        }
    }
    let mut coset_of = vec![u32::MAX; n];
    let members: Vec<usize> = (0..n).filter(|&c| character[c] != 0).collect();
    let mut cosets = Vec::new();
    for r in 0..n {
        if coset_of[r] != u32::MAX {
            continue;
        }
        let idx = cosets.len() as u32;
        cosets.push(r);
        for &c in &members {
            coset_of[group.mul(r, c)] = idx;
        }
    }
    if cosets.len() * subgroup_order != n {
        return Err(Error::Internal(format!(
            "{} cosets of a subgroup of order {subgroup_order} in a group of order {n}",
            cosets.len()
        )));
    }
    Ok(MonomialRep {
        group,
        subgroup_gens: c_gens.to_vec(),
        character,
        subgroup_order,
        cosets,
        coset_of,
    })
}

pub fn has_plus_one_eigenvalue(rep: &MonomialRep<'_>, g: usize) -> Result<bool> {
    rep.group.check_id(g)?;
    Ok(rep.action(g).has_plus_one_eigenvalue())
}

fn fixed_dim_of_elements(rep: &MonomialRep<'_>, elements: &[usize]) -> Result<usize> {
    let total: i64 = elements.iter().map(|&h| rep.trace(h)).sum();
    let order = elements.len() as i64;
    if total < 0 || total % order != 0 {
        return Err(Error::Internal(format!(
            "trace sum {total} over a subgroup of order {order} is not a nonnegative multiple"
        )));
    }
    Ok((total / order) as usize)
}

/// `(1/|H|) Σ_{h∈H} trace(h)` for `H = ⟨h_gens⟩`.
pub fn fixed_subspace_dim(rep: &MonomialRep<'_>, h_gens: &[usize]) -> Result<usize> {
    let h = rep.group.subgroup(h_gens)?;
    fixed_dim_of_elements(rep, &h)
}

fn check_same_group(group: &GroupOracle, reps: &[MonomialRep<'_>]) -> Result<()> {
    if reps.iter().any(|r| !std::ptr::eq(r.group, group)) {
        return Err(Error::DimensionMismatch(
            "representations are over different groups".into(),
        ));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreenessVerdict {
    pub free: bool,
    /// Smallest nonidentity id fixing a point of the product, if any.
    pub witness: Option<usize>,
}

pub fn is_free_on_product(
    group: &GroupOracle,
    reps: &[MonomialRep<'_>],
) -> Result<FreenessVerdict> {
    check_same_group(group, reps)?;
    let witness =
        (1..group.order()).find(|&g| reps.iter().all(|r| r.action(g).has_plus_one_eigenvalue()));
    Ok(FreenessVerdict {
        free: witness.is_none(),
        witness,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsotropyResult {
    pub rank: usize,
    pub basis: Vec<usize>,
    pub elements: Vec<usize>,
}

/// Largest rank of an elementary abelian subgroup with a common fixed point
/// on the product of spheres, i.e. positive fixed dimension on every factor.
///
/// Branch and bound over commuting involutions; below order 512 the answer is
/// also checked against a full enumeration of elementary abelian subgroups.
pub fn max_isotropy_rank(group: &GroupOracle, reps: &[MonomialRep<'_>]) -> Result<IsotropyResult> {
    check_same_group(group, reps)?;
    if group.order() > ISOTROPY_GUARD {
        return Err(Error::guard(
            "isotropy_order",
            ISOTROPY_GUARD as u64,
            group.order() as u64,
        ));
    }
    let invs = group.involutions();
    // traces on the identity and involutions are all a search needs
    let mut traces = vec![vec![0i64; group.order()]; reps.len()];
    for (k, rep) in reps.iter().enumerate() {
        traces[k][0] = rep.trace(0);
        for &g in &invs {
            traces[k][g] = rep.trace(g);
        }
    }
    let fixes = |els: &[usize]| -> bool {
        traces
            .iter()
            .all(|tr| els.iter().map(|&h| tr[h]).sum::<i64>() > 0)
    };
    let best = max_elementary_abelian(0usize, &invs, |&a, &b| group.mul(a, b), fixes);
    if group.order() < ASSOCIATIVITY_CHECK_LIMIT {
        let mut exhaustive = 0;
        for_each_elementary_abelian(
            0usize,
            &invs,
            |&a, &b| group.mul(a, b),
            |h: &ElemAbSubgroup<usize>| {
                if h.rank() > exhaustive && fixes(&h.elements) {
                    exhaustive = h.rank();
                }
            },
        );
        if exhaustive != best.rank() {
            return Err(Error::Internal(format!(
                "isotropy search found rank {}, enumeration {exhaustive}",
                best.rank()
            )));
        }
    }
    Ok(IsotropyResult {
        rank: best.rank(),
        basis: best.basis,
        elements: best.elements,
    })
}

/// Every involution is central.
pub fn is_two_central(group: &GroupOracle) -> bool {
    group
        .involutions()
        .iter()
        .all(|&x| (0..group.order()).all(|g| group.commute(x, g)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::{random_family, FormFamily};

    #[test]
    fn standard_tables_validate() {
        assert_eq!(GroupOracle::cyclic(4).order(), 4);
        assert_eq!(GroupOracle::quaternion().involutions(), vec![1]);
        assert_eq!(GroupOracle::dihedral(4).involutions().len(), 5);
        assert_eq!(GroupOracle::elementary_abelian(3).involutions().len(), 7);
    }

    #[test]
    fn rejects_bad_tables() {
        assert!(GroupOracle::from_table(vec![]).is_err());
        assert!(GroupOracle::from_table(vec![vec![0, 1], vec![1, 1]]).is_err());
        assert!(GroupOracle::from_table(vec![vec![1, 0], vec![0, 1]]).is_err());
        // a Latin square with identity that is not associative (order 5 loop)
        let loop5 = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(
            GroupOracle::from_table(loop5),
            Err(Error::InvalidTable(_))
        ));
    }

    #[test]
    fn cyclic_four_induced() {
        let g = GroupOracle::cyclic(4);
        let rep = build_induced(&g, &[2], &[-1]).unwrap();
        assert_eq!(rep.dim(), 2);
        assert_eq!(rep.cosets(), &[0, 1]);
        assert!(has_plus_one_eigenvalue(&rep, 0).unwrap());
        assert!(!has_plus_one_eigenvalue(&rep, 1).unwrap());
        assert_eq!(rep.action(1).cycles(), vec![(2, -1)]);
        let v = is_free_on_product(&g, std::slice::from_ref(&rep)).unwrap();
        assert!(v.free);
        assert_eq!(max_isotropy_rank(&g, &[rep]).unwrap().rank, 0);
    }

    #[test]
    fn trivial_character_on_whole_group() {
        let g = GroupOracle::quaternion();
        let rep = build_induced(&g, &[2, 4], &[1, 1]).unwrap();
        assert_eq!(rep.dim(), 1);
        for x in 0..8 {
            assert_eq!(rep.action(x).sign, vec![1]);
        }
    }

    #[test]
    fn inconsistent_character_rejected() {
        let g = GroupOracle::cyclic(4);
        // generator 1 has order 4; χ(1) = -1 is fine, but χ(2) = -1 clashes
        assert!(build_induced(&g, &[1], &[-1]).is_ok());
        assert!(matches!(
            build_induced(&g, &[1, 2], &[-1, -1]),
            Err(Error::InconsistentCharacter(_))
        ));
        assert!(matches!(
            build_induced(&g, &[9], &[-1]),
            Err(Error::InvalidElement(9))
        ));
    }

    #[test]
    fn d8_phi_induced_from_b() {
        let phi = PhiGroup::new(FormFamily::dihedral());
        let g = GroupOracle::from_phi(&phi).unwrap();
        let b = phi.element_id(&phi.b_gen(0)) as usize;
        let rep = build_induced(&g, &[b], &[-1]).unwrap();
        assert_eq!(rep.dim(), 4);
        assert_eq!(fixed_subspace_dim(&rep, &[b]).unwrap(), 0);
        assert!(!is_two_central(&g));
    }

    #[test]
    fn elementary_pair_construction() {
        let e = GroupOracle::elementary_abelian(2);
        let v1 = build_induced(&e, &[1], &[-1]).unwrap();
        let v2 = build_induced(&e, &[2], &[-1]).unwrap();
        assert!(has_plus_one_eigenvalue(&v1, 3).unwrap());
        assert_eq!(fixed_subspace_dim(&v1, &[2]).unwrap(), 1);
        assert_eq!(fixed_subspace_dim(&v1, &[]).unwrap(), 2);
        let verdict = is_free_on_product(&e, &[v1, v2]).unwrap();
        assert_eq!(
            verdict,
            FreenessVerdict {
                free: false,
                witness: Some(3)
            }
        );
    }

    #[test]
    fn quaternion_free_and_two_central() {
        let q = GroupOracle::quaternion();
        let rep = build_induced(&q, &[1], &[-1]).unwrap();
        assert_eq!(rep.dim(), 4);
        assert!(is_free_on_product(&q, &[rep]).unwrap().free);
        assert!(is_two_central(&q));
        assert!(is_two_central(&GroupOracle::cyclic(6)));
    }

    #[test]
    fn trivial_reps_give_group_rank() {
        let d = GroupOracle::dihedral(4);
        let rep = build_induced(&d, &(0..8).collect::<Vec<_>>(), &[1; 8]).unwrap();
        assert_eq!(max_isotropy_rank(&d, &[rep]).unwrap().rank, 2);
    }

    #[test]
    fn traces_bounded_by_dim() {
        let phi = PhiGroup::new(random_family(3, 2, 4).unwrap());
        let g = GroupOracle::from_phi(&phi).unwrap();
        let rep = build_induced(&g, &[1 << 3], &[-1]).unwrap();
        assert_eq!(rep.trace(0), rep.dim() as i64);
        for x in 0..g.order() {
            assert!(rep.trace(x).unsigned_abs() as usize <= rep.dim());
            assert_eq!(rep.trace(x), rep.action(x).trace());
        }
    }

    #[test]
    fn isotropy_guard() {
        let big = GroupOracle::from_phi(&PhiGroup::new(FormFamily::zero(7, 6))).unwrap();
        assert_eq!(big.order(), 8192);
        let rep = build_induced(&big, &[], &[]).unwrap();
        assert!(max_isotropy_rank(&big, &[rep]).unwrap_err().is_guard());
    }

    #[test]
    fn reps_over_other_group_rejected() {
        let a = GroupOracle::cyclic(4);
        let b = GroupOracle::cyclic(4);
        let rep = build_induced(&b, &[2], &[-1]).unwrap();
        assert!(is_free_on_product(&a, &[rep]).is_err());
    }
}
