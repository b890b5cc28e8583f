use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::linalg::Matrix;
use crate::perm::{Perm, PermGroup};

use super::modules::{natural_modules, NaturalKind, NaturalModules};
use super::profile::{two_adic_profile, TwoAdicProfile};
use super::sylow::{block_generator, named_subgroups};

/// Whether some generator of `h` swaps the two halves of block `j`, i.e.
/// whether `h` maps onto `P_{n_j} / B_{n_j}`.
pub fn top_quotient_image(h: &PermGroup, j: usize, profile: &TwoAdicProfile) -> Result<bool> {
    if j >= profile.l() {
        return Err(Error::Domain(format!("block {j} does not exist")));
    }
    if profile.parts()[j] == 2 {
        return Err(Error::Domain("a block of size 2 has no half-swap quotient".into()));
    }
    let (first, second) = profile.halves(j);
    let mut swaps = false;
    for g in h.gens() {
        let to_first = first.clone().all(|p| first.contains(&g.image(p)));
        let to_second = first.clone().all(|p| second.contains(&g.image(p)));
        if !to_first && !to_second {
            return Err(Error::Domain(format!("{g} does not preserve the halves of block {}", j + 1)));
        }
        swaps |= to_second;
    }
    Ok(swaps)
}

/// The bases `B_1 = {b_1, ..}` and `B_2 = {b~_1, ..}` of two complementary
/// submodules of `M'`, as rows of `M`, for profiles `n_1 + n_2 + 2`.
pub fn split_summand_bases(n: usize, field: Field) -> Result<(Matrix, Matrix)> {
    let profile = two_adic_profile(n)?;
    if n % 2 == 1 || profile.l() != 3 || profile.last_part() != 2 {
        return Err(Error::Domain(format!("degree {n} is not of the form n_1 + n_2 + 2")));
    }
    let nat = natural_modules(n, field)?;
    let (n1, n2) = (profile.parts()[0], profile.parts()[1]);
    // 0-based δ-indices: δ_{n-1} -> n-2, δ_n -> n-1
    let tail = [n - 2, n - 1];
    let mut b1 = Vec::new();
    let first: Vec<usize> = [0, n - 2].into_iter().chain((0..n2 / 2).map(|i| n1 + 2 * i)).collect();
    b1.push(nat.delta_vector(first));
    for j in 1..n1 {
        b1.push(nat.delta_vector([j, j - 1, tail[0], tail[1]]));
    }
    let mut b2 = Vec::new();
    let first: Vec<usize> = [n1, n - 2].into_iter().chain((0..n1 / 2).map(|i| 2 * i)).collect();
    b2.push(nat.delta_vector(first));
    for j in 1..n2 {
        b2.push(nat.delta_vector([n1 + j, n1 + j - 1, tail[0], tail[1]]));
    }
    Ok((stack(field, n, &b1), stack(field, n, &b2)))
}

fn stack(field: Field, cols: usize, rows: &[Matrix]) -> Matrix {
    rows.iter().fold(Matrix::zeros(field, 0, cols), |acc, r| acc.vstack(r))
}

/// The six endomorphisms `φ_1..φ_6` of `D` commuting with the two alternating
/// groups on the halves of the first block, for profiles `n_1 + 2` with `n > 6`.
pub fn sym_endomorphism_basis(n: usize, field: Field) -> Result<Vec<Matrix>> {
    let profile = two_adic_profile(n)?;
    if n % 2 == 1 || profile.l() != 2 || profile.last_part() != 2 || n <= 6 {
        return Err(Error::Domain(format!("degree {n} is not of the form n_1 + 2 with n_1 >= 8")));
    }
    let d = n - 2;
    let h = d / 2;
    let lo = |i: usize| i < h;
    let one = |b: bool| if b { Elem::ONE } else { Elem::ZERO };
    Ok(vec![
        Matrix::from_fn(field, d, d, |i, j| one(i == j && lo(i))),
        Matrix::from_fn(field, d, d, |i, j| one(i == j && !lo(i))),
        Matrix::from_fn(field, d, d, |i, j| one(lo(i) && lo(j))),
        Matrix::from_fn(field, d, d, |i, j| one(!lo(i) && !lo(j))),
        Matrix::from_fn(field, d, d, |i, j| one(lo(i) && !lo(j))),
        Matrix::from_fn(field, d, d, |i, j| one(!lo(i) && lo(j))),
    ])
}

/// Subgroups for profiles `n_1 + 2`, with `k = n_1/2`.
#[derive(Clone, Debug)]
pub struct EndoCaseSubgroups {
    /// `S_k x S_k`.
    pub base_sym: PermGroup,
    /// `A_k x A_k`.
    pub base_alt: PermGroup,
    /// `H = S_k x S_k x S_2`.
    pub h: PermGroup,
    /// `H' = H ∩ A_n`.
    pub h_alt: PermGroup,
    /// `R_1 = B_n<y'_{n_1}>`, `R_2 = B_n<y_{n_1}>`, `R_3 = B_n<w_{2,2}>`.
    pub r: [PermGroup; 3],
    /// `R'_1 = B'_n<y'_{n_1}>`, `R'_2 = B'_n<w_{n_1,1}>`, `R'_3 = B'_n<w_{2,1} w_{2,2}>`.
    pub r_alt: [PermGroup; 3],
}

pub fn endo_case_subgroups(n: usize) -> Result<EndoCaseSubgroups> {
    let profile = two_adic_profile(n)?;
    if n % 2 == 1 || profile.l() != 2 || profile.last_part() != 2 {
        return Err(Error::Domain(format!("degree {n} is not of the form n_1 + 2")));
    }
    let k = profile.parts()[0] / 2;
    let s = named_subgroups(n)?;
    let halves = |g: &PermGroup| -> Vec<Perm> {
        g.gens().iter().flat_map(|x| [x.extend(n), x.shift(k, n)]).collect()
    };
    let base_sym = PermGroup::new(n, halves(&PermGroup::symmetric(k)))?;
    let base_alt = PermGroup::new(n, halves(&PermGroup::alternating(k)))?;
    let last = Perm::cycles(n, &[&[n - 1, n]]);
    let h = base_sym.join(std::slice::from_ref(&last));
    let h_alt = base_alt.join(&[
        Perm::cycles(n, &[&[1, 2], &[k + 1, k + 2]]),
        Perm::cycles(n, &[&[1, 2], &[n - 1, n]]),
    ]);
    let top = block_generator(&profile, profile.exponents()[0], 0);
    let w21 = block_generator(&profile, 1, 0);
    let r = [s.b.join(&[s.y_alts[0].clone()]), s.b.join(&[s.ys[0].clone()]), s.b.join(std::slice::from_ref(&last))];
    let r_alt = [
        s.b_alt.join(&[s.y_alts[0].clone()]),
        s.b_alt.join(&[top]),
        s.b_alt.join(&[w21.mul(&last)]),
    ];
    Ok(EndoCaseSubgroups { base_sym, base_alt, h, h_alt, r, r_alt })
}

/// The degree-6 example: the Klein four-group `Q`, the dihedral `Q_6`, and
/// the splitting `E = U + V` over GF(4).
#[derive(Clone, Debug)]
pub struct DegreeSixData {
    pub field: Field,
    pub q: PermGroup,
    pub q6: PermGroup,
    /// Rows of `D` spanning `U`.
    pub u_basis: Matrix,
    /// Rows of `D` spanning `V`.
    pub v_basis: Matrix,
    /// Actions of the generators of `Q_6` on the basis of `D`.
    pub actions: Vec<Matrix>,
    /// The same actions on the basis `u_1, u_2, v_1, v_2`.
    pub adapted: Vec<Matrix>,
}

pub fn degree_six_data() -> Result<DegreeSixData> {
    let field = Field::GF4;
    let n = 6;
    let q = PermGroup::new(n, vec![Perm::parse_with_degree("(1,2)(3,4)", n)?, Perm::parse_with_degree("(3,4)(5,6)", n)?])?;
    let q6 = PermGroup::new(
        n,
        vec![
            Perm::parse_with_degree("(1,3)(2,4)", n)?,
            Perm::parse_with_degree("(1,2)(3,4)", n)?,
            Perm::parse_with_degree("(3,4)(5,6)", n)?,
        ],
    )?;
    let w = field.generator();
    let pair = |a: usize, b: usize| {
        let mut v = Matrix::zeros(field, 1, 4);
        v.set(0, a, Elem::ONE);
        v.set(0, b, w);
        v
    };
    let u_basis = pair(0, 3).vstack(&pair(1, 2));
    let v_basis = pair(2, 1).vstack(&pair(3, 0));
    let nat: NaturalModules = natural_modules(n, field)?;
    let actions: Vec<Matrix> = q6.gens().iter().map(|g| nat.action(NaturalKind::Heart, g)).collect::<Result<_>>()?;
    let change = u_basis.vstack(&v_basis);
    let change_inv = change.inverse().ok_or_else(|| Error::Domain("U and V do not span E".into()))?;
    let adapted = actions.iter().map(|a| change.mul(a).mul(&change_inv)).collect();
    Ok(DegreeSixData { field, q, q6, u_basis, v_basis, actions, adapted })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::sylow::{named_subgroups, sylow_alt_group};
    use crate::linalg::Subspace;

    #[test]
    fn half_swaps() {
        let s = named_subgroups(14).unwrap();
        assert!(top_quotient_image(&s.q, 0, &s.profile).unwrap());
        for j in 0..2 {
            assert!(!top_quotient_image(&s.b, j, &s.profile).unwrap());
        }
        assert!(top_quotient_image(&s.q, 2, &s.profile).is_err());
        let s10 = named_subgroups(10).unwrap();
        let r1 = s10.b_alt.join(&[s10.y_alts[0].clone()]);
        assert!(top_quotient_image(&r1, 0, &s10.profile).unwrap());
    }

    #[test]
    fn split_bases_span_augmentation() {
        let f = Field::GF2;
        let nat = natural_modules(14, f).unwrap();
        let (b1, b2) = split_summand_bases(14, f).unwrap();
        assert_eq!((b1.rows(), b2.rows()), (8, 4));
        assert_eq!(b1.rank(), 8);
        assert_eq!(b2.rank(), 4);
        for r in 0..b1.rows() {
            assert!(nat.in_augmentation(&b1, r));
        }
        let all = b1.vstack(&b2).vstack(&nat.distinguished().total);
        assert_eq!(Subspace::from_rows(&all).dim(), 13);
        let (c1, c2) = split_summand_bases(22, f).unwrap();
        assert_eq!((c1.rows(), c2.rows()), (16, 4));
        assert!(split_summand_bases(12, f).is_err());
    }

    #[test]
    fn split_basis_action_formulas() {
        // b_j y'_{n_1} = b_1 + b_2, b_{j+1}, b_2 + .. + b_{n_1}
        let f = Field::GF2;
        let n = 14;
        let nat = natural_modules(n, f).unwrap();
        let s = named_subgroups(n).unwrap();
        let (b1, _) = split_summand_bases(n, f).unwrap();
        let act = nat.action(NaturalKind::Permutation, &s.y_alts[0]).unwrap();
        let moved = b1.mul(&act);
        let n1 = 8;
        let sum_rows = |idx: &[usize]| idx.iter().fold(Matrix::zeros(f, 1, n), |acc, &i| acc.add(&b1.row(i)));
        assert_eq!(moved.row(0), sum_rows(&[0, 1]));
        for j in 1..n1 - 1 {
            assert_eq!(moved.row(j), b1.row(j + 1));
        }
        assert_eq!(moved.row(n1 - 1), sum_rows(&(1..n1).collect::<Vec<_>>()));
    }

    #[test]
    fn endomorphism_basis_products() {
        let f = Field::GF2;
        let phi = sym_endomorphism_basis(10, f).unwrap();
        let id = Matrix::identity(f, 8);
        assert_eq!(phi[0].add(&phi[1]), id);
        assert!(phi[2].mul(&phi[4]).is_zero());
        assert_eq!(phi[0].mul(&phi[2]), phi[2]);
        let s = sylow_alt_group(4).unwrap();
        let nat = natural_modules(10, f).unwrap();
        for g in crate::perm::PermGroup::alternating(4).gens() {
            for offset in [0, 4] {
                let h = g.shift(offset, 10);
                let a = nat.action(NaturalKind::Heart, &h).unwrap();
                for p in &phi {
                    assert_eq!(a.mul(p), p.mul(&a));
                }
            }
        }
        assert_eq!(s.order(), 4);
        assert!(sym_endomorphism_basis(6, f).is_err());
    }

    #[test]
    fn degree_six_splitting() {
        let r = degree_six_data().unwrap();
        assert_eq!(r.q6.order(), 8);
        assert!(r.q6.same_group(&sylow_alt_group(6).unwrap()));
        let f = r.field;
        let w = f.generator();
        let w2 = f.mul(w, w);
        let z = Elem::ZERO;
        let expected = Matrix::from_fn(f, 4, 4, |i, j| match (i / 2 == j / 2, i / 2, i == j) {
            (false, _, _) => z,
            (true, 0, true) | (true, 1, false) => w,
            _ => w2,
        });
        assert_eq!(r.adapted[2], expected);
        assert_eq!(r.adapted[0], r.actions[0]);
        assert_eq!(r.adapted[1], r.actions[1]);
        assert_eq!(Subspace::from_rows(&r.u_basis.vstack(&r.v_basis)).dim(), 4);
        for a in &r.adapted[1..] {
            assert!(a.block(0, 2, 2, 4).is_zero() && a.block(2, 4, 0, 2).is_zero());
        }
    }

    #[test]
    fn endo_case_subgroup_orders() {
        let g = endo_case_subgroups(10).unwrap();
        assert_eq!((g.base_sym.order(), g.base_alt.order()), (576, 144));
        assert_eq!((g.h.order(), g.h_alt.order()), (1152, 576));
        let s = named_subgroups(10).unwrap();
        for (r, r_alt) in g.r.iter().zip(&g.r_alt) {
            assert_eq!(r.order() * 2, s.p.order());
            assert!(r.even_part().same_group(r_alt));
        }
        assert!(g.r[1].same_group(&crate::constructions::embedded_sym(8, 10).unwrap()));
        assert!(endo_case_subgroups(12).is_err());
    }
}
