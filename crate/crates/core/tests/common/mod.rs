//! Independent oracles shared by the integration and acceptance tests. None
//! of them call the search or elimination code they are used to check.
#![allow(dead_code)]

use num_rational::Rational64;
use tworank::phigroup::PhiGroup;
use tworank::repaction::{MonomialRep, SignedPermutation};

/// Cayley table of `G_Φ` built from `PhiGroup::multiply` alone, with the
/// packed ids as indices.
pub fn phi_table(g: &PhiGroup) -> Vec<Vec<usize>> {
    let order = 1usize << g.order_exponent();
    let els: Vec<_> = (0..order as u64).map(|id| g.element_from_id(id)).collect();
    els.iter()
        .map(|x| {
            els.iter()
                .map(|y| g.element_id(&g.multiply(x, y).unwrap()) as usize)
                .collect()
        })
        .collect()
}

/// Largest rank of an elementary abelian 2-subgroup, by depth-first search
/// over increasing sequences of commuting involutions. A subgroup `K ⊇ H`
/// lies in `H` plus the involutions centralizing `H`, which bounds its rank.
pub fn brute_force_elementary_rank(table: &[Vec<usize>]) -> usize {
    struct Search<'a> {
        table: &'a [Vec<usize>],
        members: Vec<bool>,
        elements: Vec<usize>,
        best: usize,
    }

    impl Search<'_> {
        fn commute(&self, a: usize, b: usize) -> bool {
            self.table[a][b] == self.table[b][a]
        }

        /// `cent`: involutions outside `H` commuting with `H`, ascending;
        /// generators are taken from `cent` above index `from`.
        fn dfs(&mut self, cent: &[usize], from: usize, rank: usize) {
            self.best = self.best.max(rank);
            let room = self.elements.len() + cent.len();
            let reach = (usize::BITS - room.leading_zeros() - 1) as usize;
            if reach <= self.best {
                return;
            }
            for &v in cent.iter().filter(|&&v| v > from) {
                if self.members[v] {
                    continue;
                }
                let added: Vec<usize> = self.elements.iter().map(|&h| self.table[v][h]).collect();
                for &x in &added {
                    self.members[x] = true;
                }
                let len = self.elements.len();
                self.elements.extend(&added);
                let next: Vec<usize> = cent
                    .iter()
                    .copied()
                    .filter(|&c| !self.members[c] && self.commute(c, v))
                    .collect();
                self.dfs(&next, v, rank + 1);
                self.elements.truncate(len);
                for &x in &added {
                    self.members[x] = false;
                }
            }
        }
    }

    let invs: Vec<usize> = (1..table.len()).filter(|&x| table[x][x] == 0).collect();
    let mut s = Search {
        table,
        members: vec![false; table.len()],
        elements: vec![0],
        best: 0,
    };
    s.members[0] = true;
    s.dfs(&invs, 0, 0);
    s.best
}

/// A bijection `f` with `f(x·y) = f(x)·f(y)`, found by trying every
/// permutation that fixes the identity.
pub fn find_isomorphism(a: &[Vec<usize>], b: &[Vec<usize>]) -> Option<Vec<usize>> {
    let n = a.len();
    if b.len() != n {
        return None;
    }
    fn extend(a: &[Vec<usize>], b: &[Vec<usize>], f: &mut Vec<usize>, used: &mut [bool]) -> bool {
        let n = a.len();
        if f.len() == n {
            return (0..n).all(|x| (0..n).all(|y| f[a[x][y]] == b[f[x]][f[y]]));
        }
        for v in 1..n {
            if !used[v] {
                used[v] = true;
                f.push(v);
                if extend(a, b, f, used) {
                    return true;
                }
                f.pop();
                used[v] = false;
            }
        }
        false
    }
    let mut f = vec![0];
    let mut used = vec![false; n];
    used[0] = true;
    extend(a, b, &mut f, &mut used).then_some(f)
}

/// Dense rational matrix of a signed permutation: column `i` is
/// `sign[i]·e_{image[i]}`.
pub fn signed_perm_matrix(p: &SignedPermutation) -> Vec<Vec<Rational64>> {
    let d = p.dim();
    let mut m = vec![vec![Rational64::from_integer(0); d]; d];
    for i in 0..d {
        m[p.image[i]][i] = Rational64::from_integer(p.sign[i] as i64);
    }
    m
}

/// Rank over ℚ by fraction-exact Gaussian elimination.
pub fn rational_rank(mut rows: Vec<Vec<Rational64>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let zero = Rational64::from_integer(0);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][c] != zero) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank][c];
        for r in 0..rows.len() {
            if r != rank && rows[r][c] != zero {
                let f = rows[r][c] / pivot;
                let pivot_row = rows[rank].clone();
                for (x, &p) in rows[r][c..cols].iter_mut().zip(&pivot_row[c..cols]) {
                    *x -= f * p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// `dim ∩_g ker(M_g − I)` over ℚ.
pub fn rational_fixed_dim(mats: &[Vec<Vec<Rational64>>], dim: usize) -> usize {
    let mut stacked = Vec::new();
    for m in mats {
        for (i, row) in m.iter().enumerate() {
            let mut r = row.clone();
            r[i] -= Rational64::from_integer(1);
            stacked.push(r);
        }
    }
    if stacked.is_empty() {
        return dim;
    }
    dim - rational_rank(stacked)
}

pub fn oracle_has_plus_one(rep: &MonomialRep<'_>, g: usize) -> bool {
    rational_fixed_dim(&[signed_perm_matrix(&rep.action(g))], rep.dim()) > 0
}

pub fn oracle_fixed_dim(rep: &MonomialRep<'_>, gens: &[usize]) -> usize {
    let mats: Vec<_> = gens
        .iter()
        .map(|&g| signed_perm_matrix(&rep.action(g)))
        .collect();
    rational_fixed_dim(&mats, rep.dim())
}
