//! Elementary abelian 2-subgroups of a finite group, found by search over the
//! graph of commuting involutions.
//!
//! Groups are given by an identity, the list of involutions, and a
//! multiplication closure, so the same code serves Cayley tables, permutation
//! groups and matrix groups. A subgroup is grown one involution at a time;
//! candidates are kept as canonical coset representatives (the smallest
//! element of `cH`) so each extension direction is tried once.

use std::collections::HashSet;
use std::hash::Hash;

/// An elementary abelian subgroup with a basis and its sorted element list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElemAbSubgroup<T> {
    pub basis: Vec<T>,
    pub elements: Vec<T>,
}

impl<T> ElemAbSubgroup<T> {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }
}

struct Ctx<'a, T, M> {
    mul: &'a M,
    _t: std::marker::PhantomData<T>,
}

impl<T: Clone + Ord, M: Fn(&T, &T) -> T> Ctx<'_, T, M> {
    fn commute(&self, a: &T, b: &T) -> bool {
        (self.mul)(a, b) == (self.mul)(b, a)
    }

    /// `H ∪ vH`, sorted.
    fn extend(&self, elements: &[T], v: &T) -> Vec<T> {
        let mut out: Vec<T> = elements.to_vec();
        out.extend(elements.iter().map(|h| (self.mul)(v, h)));
        out.sort();
        out
    }

    fn coset_rep(&self, elements: &[T], c: &T) -> T {
        elements
            .iter()
            .map(|h| (self.mul)(c, h))
            .min()
            .expect("subgroups are nonempty")
    }

    /// Canonical coset representatives of the candidates that commute with
    /// `v`, modulo the subgroup `elements` (which already contains `v`).
    fn refine(&self, cands: &[T], v: &T, elements: &[T]) -> Vec<T> {
        let mut out: Vec<T> = cands
            .iter()
            .filter(|c| self.commute(c, v))
            .map(|c| self.coset_rep(elements, c))
            .collect();
        out.sort();
        out.dedup();
        out
    }
}

fn floor_log2_plus_one(x: usize) -> usize {
    // largest e with 2^e - 1 <= x
    (usize::BITS - (x + 1).leading_zeros() - 1) as usize
}

/// Largest elementary abelian subgroup on which `accept` holds.
///
/// `accept` receives the sorted element list of a candidate subgroup and must
/// be closed downward: if it holds on a subgroup it holds on every subgroup of
/// it. Returns the best subgroup found, which is the trivial group when no
/// involution is accepted.
pub fn max_elementary_abelian<T, M, P>(
    identity: T,
    involutions: &[T],
    mul: M,
    mut accept: P,
) -> ElemAbSubgroup<T>
where
    T: Clone + Ord,
    M: Fn(&T, &T) -> T,
    P: FnMut(&[T]) -> bool,
{
    let ctx = Ctx {
        mul: &mul,
        _t: std::marker::PhantomData,
    };
    let mut cands: Vec<T> = involutions.to_vec();
    cands.sort();
    cands.dedup();
    let mut best = ElemAbSubgroup {
        basis: Vec::new(),
        elements: vec![identity.clone()],
    };
    let mut basis = Vec::new();
    search(
        &ctx,
        &mut basis,
        vec![identity],
        cands,
        &mut accept,
        &mut best,
    );
    best
}

fn search<T, M, P>(
    ctx: &Ctx<'_, T, M>,
    basis: &mut Vec<T>,
    elements: Vec<T>,
    cands: Vec<T>,
    accept: &mut P,
    best: &mut ElemAbSubgroup<T>,
) where
    T: Clone + Ord,
    M: Fn(&T, &T) -> T,
    P: FnMut(&[T]) -> bool,
{
    if basis.len() > best.basis.len() {
        best.basis = basis.clone();
        best.elements = elements.clone();
    }
    for idx in 0..cands.len() {
        let remaining = cands.len() - idx;
        if basis.len() + floor_log2_plus_one(remaining) <= best.basis.len() {
            return;
        }
        let v = &cands[idx];
        let next = ctx.extend(&elements, v);
        if !accept(&next) {
            continue;
        }
        let next_cands = ctx.refine(&cands[idx + 1..], v, &next);
        basis.push(v.clone());
        search(ctx, basis, next, next_cands, accept, best);
        basis.pop();
    }
}

/// Visits every elementary abelian subgroup exactly once, trivial group
/// included, in breadth-first order by rank.
pub fn for_each_elementary_abelian<T, M, V>(identity: T, involutions: &[T], mul: M, mut visit: V)
where
    T: Clone + Ord + Hash,
    M: Fn(&T, &T) -> T,
    V: FnMut(&ElemAbSubgroup<T>),
{
    let ctx = Ctx {
        mul: &mul,
        _t: std::marker::PhantomData,
    };
    let mut invs: Vec<T> = involutions.to_vec();
    invs.sort();
    invs.dedup();
    let mut layer = vec![ElemAbSubgroup {
        basis: Vec::new(),
        elements: vec![identity],
    }];
    while !layer.is_empty() {
        let mut seen: HashSet<Vec<T>> = HashSet::new();
        let mut next_layer = Vec::new();
        for h in &layer {
            visit(h);
            for c in &invs {
                if h.elements.binary_search(c).is_ok()
                    || !h.elements.iter().all(|x| ctx.commute(x, c))
                {
                    continue;
                }
                let elements = ctx.extend(&h.elements, c);
                if seen.insert(elements.clone()) {
                    let mut basis = h.basis.clone();
                    basis.push(c.clone());
                    next_layer.push(ElemAbSubgroup { basis, elements });
                }
            }
        }
        layer = next_layer;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// (Z/2)^r as xor on u32.
    fn elementary(r: u32) -> Vec<u32> {
        (1..1u32 << r).collect()
    }

    #[test]
    fn counts_subgroups_of_elementary_group() {
        // number of subspaces of F_2^4 = 1 + 15 + 35 + 15 + 1
        let mut count = 0;
        let mut by_rank = [0usize; 5];
        for_each_elementary_abelian(
            0u32,
            &elementary(4),
            |a, b| a ^ b,
            |h| {
                count += 1;
                by_rank[h.rank()] += 1;
                assert_eq!(h.elements.len(), 1 << h.rank());
            },
        );
        assert_eq!(count, 67);
        assert_eq!(by_rank, [1, 15, 35, 15, 1]);
    }

    #[test]
    fn max_on_elementary_group_is_full() {
        let best = max_elementary_abelian(0u32, &elementary(5), |a, b| a ^ b, |_| true);
        assert_eq!(best.rank(), 5);
    }

    #[test]
    fn max_respects_predicate() {
        // only subgroups avoiding the vector 0b111 accepted
        let best = max_elementary_abelian(
            0u32,
            &elementary(3),
            |a, b| a ^ b,
            |els| !els.contains(&0b111),
        );
        assert_eq!(best.rank(), 2);
        assert!(!best.elements.contains(&0b111));
    }

    #[test]
    fn log_bound() {
        assert_eq!(floor_log2_plus_one(0), 0);
        assert_eq!(floor_log2_plus_one(1), 1);
        assert_eq!(floor_log2_plus_one(2), 1);
        assert_eq!(floor_log2_plus_one(3), 2);
        assert_eq!(floor_log2_plus_one(7), 3);
    }
}
