//! Slow, independent reimplementations used to cross-check the fast paths.

use std::collections::{HashSet, VecDeque};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::constructions::{named_subgroups, natural_modules, NaturalKind};
use crate::decomp::{decompose, is_indecomposable_with, DecompOptions};
use crate::error::Result;
use crate::field::{Elem, Field};
use crate::gmod::GModule;
use crate::linalg::{left_kernel, Matrix};
use crate::perm::{Perm, PermGroup};
use crate::vertex::Check;

/// A matrix as nested vectors of field elements.
type Dense = Vec<Vec<Elem>>;

fn dense(m: &Matrix) -> Dense {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| m.get(i, j)).collect()).collect()
}

pub fn naive_mul(f: Field, a: &Dense, b: &Dense, inner: usize, cols: usize) -> Dense {
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(Elem::ZERO, |acc, k| f.add(acc, f.mul(row[k], b[k][j]))))
                .collect()
        })
        .collect()
}

/// Gauss-Jordan elimination; returns the reduced matrix and its pivot columns.
pub fn naive_rref(f: Field, a: &Dense, cols: usize) -> (Dense, Vec<usize>) {
    let mut m = a.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = f.inv(m[r][c]).expect("pivot is nonzero");
        for x in &mut m[r] {
            *x = f.mul(*x, inv);
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let s = row[c];
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x = f.add(*x, f.mul(s, *y));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (m, pivots)
}

pub fn naive_rank(f: Field, a: &Dense, cols: usize) -> usize {
    naive_rref(f, a, cols).1.len()
}

pub fn naive_inverse(f: Field, a: &Dense) -> Option<Dense> {
    let n = a.len();
    let aug: Dense = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Elem::ONE } else { Elem::ZERO }));
            r
        })
        .collect();
    let (m, pivots) = naive_rref(f, &aug, 2 * n);
    (pivots.len() >= n && pivots[n - 1] == n - 1).then(|| m.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Basis of `{x : x A = 0}` read off the reduced transpose.
pub fn naive_null_space(f: Field, a: &Dense, rows: usize, cols: usize) -> Dense {
    let t: Dense = (0..cols).map(|j| (0..rows).map(|i| a[i][j]).collect()).collect();
    let (m, pivots) = naive_rref(f, &t, rows);
    let free: Vec<usize> = (0..rows).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![Elem::ZERO; rows];
            v[fc] = Elem::ONE;
            for (k, &pc) in pivots.iter().enumerate() {
                v[pc] = m[k][fc];
            }
            v
        })
        .collect()
}

fn random_dense(f: Field, rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> Dense {
    let q = f.order() as u8;
    (0..rows)
        .map(|_| (0..cols).map(|_| f.elem(rng.gen_range(0..q)).expect("in range")).collect())
        .collect()
}

fn to_matrix(f: Field, a: &Dense, rows: usize, cols: usize) -> Matrix {
    Matrix::from_fn(f, rows, cols, |i, j| a[i][j])
}

/// Products, ranks, inverses and kernels of seeded random matrices up to
/// 64 x 64 over GF(2^k), fast path against the nested-vector oracle.
pub fn linalg_oracle_suite(cases: usize, seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut mismatches = Vec::new();
    for case in 0..cases {
        let f = Field::new(rng.gen_range(1..=4)).expect("degree in range");
        let (r, k, c) = (rng.gen_range(1..=64), rng.gen_range(1..=64), rng.gen_range(1..=64));
        let mut a = random_dense(f, &mut rng, r, k);
        if rng.gen_bool(0.5) {
            // Force rank deficiency through a repeated row.
            let i = rng.gen_range(0..r);
            let copy = a[rng.gen_range(0..r)].clone();
            a[i] = copy;
        }
        let b = random_dense(f, &mut rng, k, c);
        let (ma, mb) = (to_matrix(f, &a, r, k), to_matrix(f, &b, k, c));
        let mut ok = dense(&ma.mul(&mb)) == naive_mul(f, &a, &b, k, c);
        ok &= ma.rank() == naive_rank(f, &a, k);
        ok &= ma.transpose().rank() == ma.rank();
        let kernel = left_kernel(&ma);
        ok &= kernel.dim() == naive_null_space(f, &a, r, k).len();
        ok &= kernel.basis().mul(&ma).is_zero();
        let s = r.min(k);
        let sq: Dense = a[..s].iter().map(|row| row[..s].to_vec()).collect();
        let msq = to_matrix(f, &sq, s, s);
        ok &= msq.inverse().map(|m| dense(&m)) == naive_inverse(f, &sq);
        if !ok {
            mismatches.push(case);
        }
    }
    Check::new(
        "linalg_naive_oracle",
        mismatches.is_empty(),
        format!("{cases} cases, mismatches at {mismatches:?}"),
    )
}

/// Group order by breadth-first closure over the generators.
pub fn closure_order(g: &PermGroup) -> u128 {
    let id = Perm::identity(g.degree());
    let mut seen: HashSet<Perm> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for s in g.gens() {
            let y = x.mul(s);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen.len() as u128
}

/// Stabilizer-chain orders against closure orders on small groups.
pub fn closure_order_suite() -> Result<Check> {
    let mut groups: Vec<(String, PermGroup)> = Vec::new();
    for n in 2..=7 {
        groups.push((format!("S_{n}"), PermGroup::symmetric(n)));
        groups.push((format!("A_{n}"), PermGroup::alternating(n)));
    }
    for n in [4, 6, 8, 10, 12] {
        let s = named_subgroups(n)?;
        for (name, g) in [("P", &s.p), ("Q", &s.q), ("B", &s.b), ("Y'", &s.y_alt), ("Phi(Q)", &s.phi_q)] {
            groups.push((format!("{name}_{n}"), g.clone()));
        }
    }
    let bad: Vec<String> = groups
        .iter()
        .filter(|(_, g)| g.order() != closure_order(g))
        .map(|(name, g)| format!("{name}: chain {} vs closure {}", g.order(), closure_order(g)))
        .collect();
    Ok(Check::new("closure_vs_chain_orders", bad.is_empty(), format!("{} groups; {bad:?}", groups.len())))
}

/// Basis of `End_G(V)` from the linear system `X A_g = A_g X`, solved naively.
pub fn naive_endomorphisms(v: &GModule) -> Dense {
    let f = v.field();
    let d = v.dim();
    let mut eqs: Dense = Vec::new();
    for a in v.actions() {
        let a = dense(a);
        for k in 0..d {
            for l in 0..d {
                // (XA - AX)_{kl} = sum_j x_{kj} a_{jl} - sum_i a_{ki} x_{il}
                let mut row = vec![Elem::ZERO; d * d];
                for j in 0..d {
                    row[k * d + j] = f.add(row[k * d + j], a[j][l]);
                }
                for i in 0..d {
                    row[i * d + l] = f.add(row[i * d + l], a[k][i]);
                }
                eqs.push(row);
            }
        }
    }
    let rows = eqs.len();
    let t: Dense = (0..d * d).map(|c| (0..rows).map(|r| eqs[r][c]).collect()).collect();
    naive_null_space(f, &t, d * d, rows)
}

/// Whether some `X` in the span of `basis` other than 0 and 1 satisfies
/// `X^2 = X`, by listing every element; `None` if there are more than `limit`.
pub fn brute_force_idempotent(f: Field, basis: &Dense, d: usize, limit: u64) -> Option<bool> {
    let q = f.order() as u64;
    let total = q.checked_pow(basis.len() as u32)?;
    if total > limit {
        return None;
    }
    let elems: Vec<Elem> = f.elements().collect();
    for mut code in 0..total {
        let mut x = vec![Elem::ZERO; d * d];
        for b in basis {
            let c = elems[(code % q) as usize];
            code /= q;
            for (xi, bi) in x.iter_mut().zip(b) {
                *xi = f.add(*xi, f.mul(c, *bi));
            }
        }
        let m: Dense = x.chunks(d).map(<[Elem]>::to_vec).collect();
        let is_zero = x.iter().all(|e| e.is_zero());
        let is_one = (0..d).all(|i| (0..d).all(|j| m[i][j] == if i == j { Elem::ONE } else { Elem::ZERO }));
        if !is_zero && !is_one && naive_mul(f, &m, &m, d, d) == m {
            return Some(true);
        }
    }
    Some(false)
}

/// Small 2-groups of order at most 16 with a few points to act on.
fn small_groups() -> Vec<PermGroup> {
    let g = |n: usize, gens: &[&[&[usize]]]| {
        PermGroup::new(n, gens.iter().map(|c| Perm::cycles(n, c)).collect()).expect("valid generators")
    };
    vec![
        g(3, &[&[&[1, 2]]]),
        g(4, &[&[&[1, 2, 3, 4]]]),
        g(4, &[&[&[1, 2]], &[&[3, 4]]]),
        g(4, &[&[&[1, 2], &[3, 4]], &[&[1, 3], &[2, 4]]]),
        g(4, &[&[&[1, 2, 3, 4]], &[&[1, 3]]]),
        g(6, &[&[&[1, 2]], &[&[3, 4]], &[&[5, 6]]]),
        g(6, &[&[&[1, 2, 3, 4]], &[&[5, 6]]]),
        g(6, &[&[&[1, 2, 3, 4]], &[&[1, 3]], &[&[5, 6]]]),
        g(6, &[&[&[1, 2], &[3, 4]], &[&[3, 4], &[5, 6]]]),
    ]
}

fn random_invertible(f: Field, d: usize, rng: &mut ChaCha8Rng) -> Matrix {
    loop {
        let m = to_matrix(f, &random_dense(f, rng, d, d), d, d);
        if m.is_invertible() {
            return m;
        }
    }
}

/// A seeded module of dimension at most 6 for one of the small groups.
fn random_small_module(rng: &mut ChaCha8Rng) -> Result<GModule> {
    let groups = small_groups();
    let f = if rng.gen_bool(0.75) { Field::GF2 } else { Field::GF4 };
    loop {
        let g = Arc::new(groups[rng.gen_range(0..groups.len())].clone());
        let n = g.degree();
        let nat = natural_modules(n, f)?;
        let kinds = [NaturalKind::Permutation, NaturalKind::Augmentation, NaturalKind::Heart];
        let mut parts = vec![GModule::natural(Arc::clone(&g), &nat, kinds[rng.gen_range(0..3)], "part")?];
        if rng.gen_bool(0.5) {
            let extra = if rng.gen_bool(0.5) {
                GModule::trivial(Arc::clone(&g), f)
            } else {
                GModule::natural(Arc::clone(&g), &nat, kinds[rng.gen_range(0..3)], "part")?
            };
            parts.push(extra);
        }
        let mut v = parts[0].clone();
        for p in &parts[1..] {
            v = v.direct_sum(p)?;
        }
        if v.dim() == 0 || v.dim() > 6 {
            continue;
        }
        let p = random_invertible(f, v.dim(), rng);
        return v.change_basis(&p);
    }
}

/// Indecomposability from `decompose` and the locality test against an
/// exhaustive search for idempotents in the naively computed commutant.
pub fn idempotent_oracle_suite(cases: usize, seed: u64) -> Result<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let options = DecompOptions { seed, allow_escalation: false, enumeration_limit: 1 << 20 };
    let mut mismatches = Vec::new();
    let mut done = 0;
    let mut split = 0;
    while done < cases {
        let v = random_small_module(&mut rng)?;
        let basis = naive_endomorphisms(&v);
        let Some(splits) = brute_force_idempotent(v.field(), &basis, v.dim(), 1 << 16) else { continue };
        done += 1;
        split += usize::from(splits);
        let fast_splits = decompose(&v, &options)?.summands.len() > 1;
        let local = is_indecomposable_with(&v, seed, 1 << 20)?.is_local();
        if fast_splits != splits || local == splits {
            mismatches.push(format!("{} dim {}", v.group().order(), v.dim()));
        }
    }
    Ok(Check::new(
        "idempotent_oracle",
        mismatches.is_empty(),
        format!("{cases} modules, {split} decomposable, mismatches {mismatches:?}"),
    ))
}
