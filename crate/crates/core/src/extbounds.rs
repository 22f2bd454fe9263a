//! Numeric bounds on ranks and sphere dimensions, computed in exact integer
//! arithmetic, and exhaustive audits of the rank inequalities for permutation
//! modules and for elementary abelian subgroups of `GL(n, 2)`.

use num_bigint::BigUint;

use crate::elemab::{for_each_elementary_abelian, max_elementary_abelian};
use crate::error::{Error, Result};
use crate::gf2::{invariants, BitMatrix, BitVector};

pub use crate::phigroup::olshanskii_condition;

pub const PERM_AUDIT_GUARD: usize = 7;
pub const GL_AUDIT_GUARD: usize = 4;
/// Spheres of dimension at most this are outside the standing assumption of
/// the bounds and are reported with a caveat.
pub const SMALL_SPHERE_LIMIT: u64 = 7;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FreeRank {
    pub value: u64,
    pub small_sphere_caveat: bool,
}

/// Free 2-rank of symmetry of `(RP^m)^n`-type products: `0`, `n` or `2n`
/// according as `m ≡ 0,2`, `1` or `3 (mod 4)`.
pub fn free_rank_rp(m: u64, n: u64) -> FreeRank {
    let value = match m % 4 {
        1 => n,
        3 => 2 * n,
        _ => 0,
    };
    FreeRank {
        value,
        small_sphere_caveat: m <= SMALL_SPHERE_LIMIT,
    }
}

fn require_positive(name: &str, v: u64) -> Result<()> {
    if v == 0 {
        return Err(Error::InvalidArgument(format!("{name} must be positive")));
    }
    Ok(())
}

/// Least `m` with `dim_gv ≤ (m + 1) t`.
pub fn browder_min_m(dim_gv: u64, t: u64) -> Result<u64> {
    require_positive("t", t)?;
    Ok(dim_gv.saturating_sub(t).div_ceil(t))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CarlssonBound {
    /// Least `m` with `(m + 1)^t ≥ 2^dim_gv`.
    pub exact: BigUint,
    /// `2^⌊dim_gv / t⌋ − 1`, the rounded-down deduction.
    pub paper_weak: BigUint,
}

pub fn carlsson_min_m(dim_gv: u64, t: u64) -> Result<CarlssonBound> {
    require_positive("t", t)?;
    let exponent = u32::try_from(t)
        .map_err(|_| Error::InvalidArgument(format!("t = {t} does not fit an exponent")))?;
    let target = BigUint::from(1u32) << dim_gv;
    let holds = |x: &BigUint| x.pow(exponent) >= target;
    // Search x = m + 1 in (lo, hi], with hi = 2^⌈dim_gv/t⌉ always sufficient.
    let one = BigUint::from(1u32);
    let mut lo = BigUint::from(0u32);
    let mut hi = &one << dim_gv.div_ceil(t);
    while &lo + &one < hi {
        let mid: BigUint = (&lo + &hi) >> 1;
        if holds(&mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let x = if holds(&lo) { lo } else { hi };
    Ok(CarlssonBound {
        exact: x - &one,
        paper_weak: (&one << (dim_gv / t)) - &one,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeadlineReport {
    pub n: u64,
    pub t: u64,
    pub k: u64,
    pub condition_holds: bool,
    pub t_bound: u64,
    pub n_bound: u64,
    pub sphere_dim: BigUint,
    pub browder_min_m: u64,
    pub carlsson_min_m: CarlssonBound,
    pub small_sphere_caveat: bool,
}

pub fn headline_report(n: u64, t: u64, k: u64) -> Result<HeadlineReport> {
    require_positive("n", n)?;
    require_positive("t", t)?;
    require_positive("k", k)?;
    if k > n + 1 {
        return Err(Error::InvalidArgument(format!(
            "k = {k} exceeds n + 1 = {}",
            n + 1
        )));
    }
    let t_bound = t + k - 1;
    let n_bound = n - k + 1;
    let sphere_dim = (BigUint::from(1u32) << (n + t - 1)) - BigUint::from(1u32);
    Ok(HeadlineReport {
        n,
        t,
        k,
        condition_holds: olshanskii_condition(n, t, k),
        t_bound,
        n_bound,
        small_sphere_caveat: sphere_dim <= BigUint::from(SMALL_SPHERE_LIMIT),
        sphere_dim,
        browder_min_m: browder_min_m(n_bound, t_bound)?,
        carlsson_min_m: carlsson_min_m(n_bound, t_bound)?,
    })
}

type Perm = Vec<u8>;

fn compose(a: &Perm, b: &Perm) -> Perm {
    b.iter().map(|&j| a[j as usize]).collect()
}

fn all_perms(n: usize) -> Vec<Perm> {
    fn rec(n: usize, cur: &mut Perm, used: &mut [bool], out: &mut Vec<Perm>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                cur.push(v as u8);
                rec(n, cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(n, &mut Vec::with_capacity(n), &mut vec![false; n], &mut out);
    out
}

fn orbit_count(n: usize, gens: &[Perm]) -> usize {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for g in gens {
        for (i, &j) in g.iter().enumerate() {
            let (a, b) = (find(&mut parent, i), find(&mut parent, j as usize));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    (0..n).filter(|&i| find(&mut parent, i) == i).count()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermWorstCase {
    pub rank: usize,
    pub invariants_dim: usize,
    /// `n − invariants_dim − rank`; negative only on a violation.
    pub slack: i64,
    /// Generators as images of `0..n`.
    pub generators: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermAudit {
    pub n: usize,
    pub passed: bool,
    pub subgroups_checked: u64,
    pub worst: PermWorstCase,
}

/// Checks `rk W ≤ n − dim V^W` for every elementary abelian 2-subgroup `W`
/// of the symmetric group acting on the permutation module `V = F₂ⁿ`.
///
/// The reported worst case has the least slack, then the largest rank, then
/// the lexicographically smallest element list.
pub fn perm_rank_audit(n: usize) -> Result<PermAudit> {
    if n > PERM_AUDIT_GUARD {
        return Err(Error::guard(
            "perm_audit_n",
            PERM_AUDIT_GUARD as u64,
            n as u64,
        ));
    }
    let identity: Perm = (0..n as u8).collect();
    let involutions: Vec<Perm> = all_perms(n)
        .into_iter()
        .filter(|p| *p != identity && compose(p, p) == identity)
        .collect();
    let mut passed = true;
    let mut checked = 0u64;
    let mut worst: Option<(i64, usize, Vec<Perm>, PermWorstCase)> = None;
    let mut failure: Option<Error> = None;
    for_each_elementary_abelian(identity.clone(), &involutions, compose, |h| {
        if failure.is_some() {
            return;
        }
        checked += 1;
        let mats: Vec<BitMatrix> = h
            .basis
            .iter()
            .map(|p| BitMatrix::permutation(&p.iter().map(|&x| x as usize).collect::<Vec<_>>()))
            .collect();
        let inv_dim = match invariants(n, &mats) {
            Ok(s) => s.dim(),
            Err(e) => {
                failure = Some(e);
                return;
            }
        };
        if inv_dim != orbit_count(n, &h.basis) {
            failure = Some(Error::Internal(format!(
                "invariant dimension {inv_dim} differs from orbit count for {:?}",
                h.basis
            )));
            return;
        }
        let rank = h.rank();
        if rank + inv_dim > n {
            passed = false;
        }
        let slack = n as i64 - (inv_dim + rank) as i64;
        let better = match &worst {
            None => true,
            Some((s, r, els, _)) => {
                (slack, std::cmp::Reverse(rank), &h.elements) < (*s, std::cmp::Reverse(*r), els)
            }
        };
        if better {
            worst = Some((
                slack,
                rank,
                h.elements.clone(),
                PermWorstCase {
                    rank,
                    invariants_dim: inv_dim,
                    slack,
                    generators: h
                        .basis
                        .iter()
                        .map(|p| p.iter().map(|&x| x as usize).collect())
                        .collect(),
                },
            ));
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(PermAudit {
        n,
        passed,
        subgroups_checked: checked,
        worst: worst.expect("the trivial subgroup is always visited").3,
    })
}

/// `n × n` matrices packed row-major, row `i` in bits `n·i .. n·i + n`.
fn gl_mul(n: usize, a: u16, b: u16) -> u16 {
    let mask = (1u16 << n) - 1;
    let mut out = 0u16;
    for i in 0..n {
        let row = (a >> (n * i)) & mask;
        let mut acc = 0u16;
        for j in 0..n {
            if (row >> j) & 1 == 1 {
                acc ^= (b >> (n * j)) & mask;
            }
        }
        out |= acc << (n * i);
    }
    out
}

fn gl_identity(n: usize) -> u16 {
    (0..n).fold(0, |acc, i| acc | 1 << (n * i + i))
}

fn gl_unpack(n: usize, m: u16) -> BitMatrix {
    let rows = (0..n)
        .map(|i| BitVector::from_word(n, ((m >> (n * i)) & ((1 << n) - 1)) as u64))
        .collect();
    BitMatrix::from_rows(n, rows).expect("rows have length n")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlAudit {
    pub n: usize,
    pub max_rank: usize,
    pub bound: usize,
    pub passed: bool,
    pub witness: Vec<BitMatrix>,
}

/// Largest elementary abelian 2-subgroup of `GL(n, 2)` against `⌊n²/4⌋`.
pub fn gl_rank_audit(n: usize) -> Result<GlAudit> {
    if n > GL_AUDIT_GUARD {
        return Err(Error::guard("gl_audit_n", GL_AUDIT_GUARD as u64, n as u64));
    }
    let id = gl_identity(n);
    let involutions: Vec<u16> = (0..1u32 << (n * n))
        .map(|m| m as u16)
        .filter(|&m| m != id && gl_mul(n, m, m) == id)
        .collect();
    let best = max_elementary_abelian(id, &involutions, |a, b| gl_mul(n, *a, *b), |_| true);
    let bound = n * n / 4;
    Ok(GlAudit {
        n,
        max_rank: best.rank(),
        bound,
        passed: best.rank() <= bound,
        witness: best.basis.iter().map(|&m| gl_unpack(n, m)).collect(),
    })
}
