use crate::error::{Error, Result};
use crate::perm::{Perm, PermGroup};

use super::profile::{two_adic_profile, TwoAdicProfile};

/// `w_{2^s, j}`: swaps the two halves of the first `2^s` points of block `j`.
pub fn block_generator(profile: &TwoAdicProfile, s: u32, j: usize) -> Perm {
    let start = profile.offsets()[j];
    let half = 1usize << (s - 1);
    let pairs: Vec<[usize; 2]> = (1..=half).map(|k| [start + k, start + k + half]).collect();
    let cycles: Vec<&[usize]> = pairs.iter().map(|p| &p[..]).collect();
    Perm::cycles(profile.n(), &cycles)
}

/// The generating set `W` of a Sylow 2-subgroup `P_n` of `S_n`, block by
/// block with increasing `s`.
pub fn sylow_sym(n: usize) -> Result<Vec<Perm>> {
    let profile = two_adic_profile(n)?;
    let mut gens = Vec::new();
    for j in 0..profile.l() {
        for s in 1..=profile.exponents()[j] {
            gens.push(block_generator(&profile, s, j));
        }
    }
    Ok(gens)
}

/// The generating set `W'` of `Q_n = P_n ∩ A_n`.
pub fn sylow_alt(n: usize) -> Result<Vec<Perm>> {
    if n < 4 {
        return Err(Error::Domain(format!("no alternating generator set for degree {n}")));
    }
    let profile = two_adic_profile(n)?;
    let l = profile.l();
    let mut gens = Vec::new();
    if l == 1 {
        let m = profile.parts()[0];
        gens.push(Perm::cycles(n, &[&[1, 2], &[m / 2 + 1, m / 2 + 2]]));
        for s in 2..=profile.exponents()[0] {
            gens.push(block_generator(&profile, s, 0));
        }
        return Ok(gens);
    }
    let last_swap = block_generator(&profile, 1, l - 1);
    for j in 0..l {
        for s in 1..=profile.exponents()[j] {
            match (s, j + 1 == l) {
                (1, true) => {}
                (1, false) => gens.push(block_generator(&profile, 1, j).mul(&last_swap)),
                _ => gens.push(block_generator(&profile, s, j)),
            }
        }
    }
    Ok(gens)
}

pub fn sylow_sym_group(n: usize) -> Result<PermGroup> {
    PermGroup::new(n, sylow_sym(n)?)
}

pub fn sylow_alt_group(n: usize) -> Result<PermGroup> {
    PermGroup::new(n, sylow_alt(n)?)
}

/// `Q_m` acting on the first `m` of `n` points; trivial for `m < 4`.
pub fn embedded_alt(m: usize, n: usize) -> Result<PermGroup> {
    if m > n {
        return Err(Error::Domain(format!("cannot embed degree {m} into degree {n}")));
    }
    if m < 4 {
        return Ok(PermGroup::trivial(n));
    }
    Ok(sylow_alt_group(m)?.extend_degree(n))
}

/// `P_m` acting on the first `m` of `n` points; trivial for `m < 2`.
pub fn embedded_sym(m: usize, n: usize) -> Result<PermGroup> {
    if m > n {
        return Err(Error::Domain(format!("cannot embed degree {m} into degree {n}")));
    }
    if m < 2 {
        return Ok(PermGroup::trivial(n));
    }
    Ok(sylow_sym_group(m)?.extend_degree(n))
}

/// `y_{n_j} = w_{n_j,j} .. w_{4,j} w_{2,j}`, an `n_j`-cycle on block `j`.
pub fn block_cycle(profile: &TwoAdicProfile, j: usize) -> Perm {
    (1..=profile.exponents()[j])
        .rev()
        .fold(Perm::identity(profile.n()), |acc, s| acc.mul(&block_generator(profile, s, j)))
}

/// The subgroups of `P_n` used throughout the vertex arguments, for even `n >= 4`.
#[derive(Clone, Debug)]
pub struct NamedSubgroups {
    pub profile: TwoAdicProfile,
    pub p: PermGroup,
    pub q: PermGroup,
    /// `B_n`: the product over blocks of the base groups `P'_{n_j} x P''_{n_j}`.
    pub b: PermGroup,
    /// `B_n ∩ A_n`.
    pub b_alt: PermGroup,
    pub y: PermGroup,
    pub y_alt: PermGroup,
    pub x: PermGroup,
    pub phi_p: PermGroup,
    pub phi_q: PermGroup,
    /// `y_{n_j}` per block.
    pub ys: Vec<Perm>,
    /// `y'_{n_j} = y_{n_j} y_{n_l}` per block.
    pub y_alts: Vec<Perm>,
    /// `x_{n_j} = y_{n_j}^2` per block.
    pub xs: Vec<Perm>,
}

pub fn named_subgroups(n: usize) -> Result<NamedSubgroups> {
    if n < 4 || n % 2 == 1 {
        return Err(Error::Domain(format!("named subgroups need an even degree >= 4, got {n}")));
    }
    let profile = two_adic_profile(n)?;
    let l = profile.l();
    let p = sylow_sym_group(n)?;
    let q = sylow_alt_group(n)?;
    let mut b_gens = Vec::new();
    for j in 0..l {
        let top_exp = profile.exponents()[j];
        let top = block_generator(&profile, top_exp, j);
        for s in 1..top_exp {
            let w = block_generator(&profile, s, j);
            b_gens.push(w.conj(&top));
            b_gens.push(w);
        }
    }
    let b = PermGroup::new(n, b_gens)?;
    let b_alt = b.even_part();
    let ys: Vec<Perm> = (0..l).map(|j| block_cycle(&profile, j)).collect();
    let y_alts: Vec<Perm> = ys.iter().map(|y| y.mul(&ys[l - 1])).collect();
    let xs: Vec<Perm> = ys.iter().map(|y| y.mul(y)).collect();
    let y = PermGroup::new(n, ys.clone())?;
    let y_alt = PermGroup::new(n, y_alts.clone())?;
    let x = PermGroup::new(n, xs.clone())?;
    let phi_p = p.frattini_2group()?;
    let phi_q = q.frattini_2group()?;
    let named = NamedSubgroups { profile, p, q, b, b_alt, y, y_alt, x, phi_p, phi_q, ys, y_alts, xs };
    named.check()?;
    Ok(named)
}

impl NamedSubgroups {
    pub fn n(&self) -> usize {
        self.profile.n()
    }

    /// `Q_m` on the first `m` points.
    pub fn embedded_alt(&self, m: usize) -> Result<PermGroup> {
        embedded_alt(m, self.n())
    }

    fn check(&self) -> Result<()> {
        let fail = |what: &str| Err(Error::Domain(format!("degree {}: {what}", self.n())));
        if self.p.order() != 2 * self.q.order() || !self.q.is_subgroup_of(&self.p) {
            return fail("Q_n is not of index 2 in P_n");
        }
        if self.y.order() != 2 * self.y_alt.order() || !self.y_alt.is_subgroup_of(&self.y) {
            return fail("Y'_n is not of index 2 in Y_n");
        }
        if self.profile.l() >= 2 && !self.x.is_subgroup_of(&self.phi_q) {
            return fail("X_n is not contained in the Frattini subgroup of Q_n");
        }
        for (j, y) in self.ys.iter().enumerate() {
            let nj = self.profile.parts()[j];
            let mut cycle_type: Vec<usize> = y.cycle_type().into_iter().filter(|&c| c > 1).collect();
            cycle_type.sort_unstable();
            if cycle_type != [nj] {
                return fail("y_{n_j} is not an n_j-cycle");
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::two_adic_valuation_factorial;

    fn parse_all(n: usize, texts: &[&str]) -> Vec<Perm> {
        texts.iter().map(|t| Perm::parse_with_degree(t, n).unwrap()).collect()
    }

    #[test]
    fn listed_generator_sets() {
        assert_eq!(sylow_sym(8).unwrap(), parse_all(8, &["(1,2)", "(1,3)(2,4)", "(1,5)(2,6)(3,7)(4,8)"]));
        assert_eq!(
            sylow_sym(14).unwrap(),
            parse_all(14, &["(1,2)", "(1,3)(2,4)", "(1,5)(2,6)(3,7)(4,8)", "(9,10)", "(9,11)(10,12)", "(13,14)"])
        );
        assert_eq!(sylow_sym(2).unwrap(), parse_all(2, &["(1,2)"]));
        assert_eq!(sylow_alt(8).unwrap(), parse_all(8, &["(1,2)(5,6)", "(1,3)(2,4)", "(1,5)(2,6)(3,7)(4,8)"]));
        assert_eq!(
            sylow_alt(14).unwrap(),
            parse_all(14, &["(1,2)(13,14)", "(1,3)(2,4)", "(1,5)(2,6)(3,7)(4,8)", "(9,10)(13,14)", "(9,11)(10,12)"])
        );
        assert_eq!(sylow_alt(4).unwrap(), parse_all(4, &["(1,2)(3,4)", "(1,3)(2,4)"]));
        assert!(sylow_alt(3).is_err());
    }

    #[test]
    fn sylow_orders() {
        for n in 2..=20 {
            let p = sylow_sym_group(n).unwrap();
            assert_eq!(p.order(), 1u128 << two_adic_valuation_factorial(n), "P_{n}");
            if n >= 4 {
                let q = sylow_alt_group(n).unwrap();
                assert!(q.gens().iter().all(Perm::is_even));
                assert_eq!(q.order() * 2, p.order(), "Q_{n}");
                assert!(q.same_group(&p.even_part()));
            }
        }
    }

    #[test]
    fn cycles_of_blocks() {
        let s = named_subgroups(8).unwrap();
        assert_eq!(s.ys[0].cycle_type().iter().filter(|&&c| c > 1).count(), 1);
        assert_eq!(s.xs[0], Perm::parse_with_degree("(1,3,2,4)(5,7,6,8)", 8).unwrap());
        let s = named_subgroups(14).unwrap();
        assert_eq!(s.y_alt.order(), 32);
        assert_eq!(s.y.order(), 64);
        for n in [4, 8, 16] {
            let p = two_adic_profile(n).unwrap();
            assert_eq!(block_cycle(&p, 0).order(), n as u64);
        }
    }

    #[test]
    fn base_groups() {
        let s = named_subgroups(8).unwrap();
        assert_eq!(s.b.order(), 64);
        assert_eq!(s.b_alt.order(), 32);
        let q6 = embedded_alt(6, 8).unwrap();
        assert!(q6.join(s.phi_q.gens()).same_group(&s.b_alt));
        let s10 = named_subgroups(10).unwrap();
        assert_eq!(s10.b.order(), 64);
        assert!(s10.x.is_subgroup_of(&s10.phi_q));
    }
}
