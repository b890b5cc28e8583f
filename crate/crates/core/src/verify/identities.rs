use crate::constructions::{
    block_generator, embedded_alt, embedded_sym, named_subgroups, sylow_alt, sylow_alt_group, sylow_sym,
    sylow_sym_group, two_adic_profile, NamedSubgroups,
};
use crate::error::Result;
use crate::perm::{two_adic_valuation_factorial, Perm, PermGroup};
use crate::vertex::Check;

/// Largest `|P_n|` for which the Frattini set descriptions are checked element by element.
const ELEMENTWISE_LIMIT: u128 = 1 << 16;

/// The identities about the Sylow 2-subgroups `P_n` and `Q_n`: minimal
/// generation, Frattini subgroups, and for 2-powers the base group
/// equalities. Odd degrees use `n - 1`.
pub fn sylow_identity_checks(n: usize) -> Result<Vec<Check>> {
    let mut checks = vec![convention_canary(Perm::mul)];
    let m = if n % 2 == 1 { n - 1 } else { n };
    if m < 4 {
        return Ok(checks);
    }
    let s = named_subgroups(m)?;
    checks.push(order_check(&s));
    checks.push(minimality_check(m)?);
    checks.push(block_cycle_check(&s));
    checks.extend(frattini_checks(&s)?);
    if s.profile.is_two_power() && m >= 8 {
        if s.p.order() <= ELEMENTWISE_LIMIT {
            checks.extend(frattini_set_checks(&s)?);
        }
        checks.extend(base_group_checks(&s)?);
    }
    Ok(checks)
}

/// `w_4 w_2` under the given composition must be the 4-cycle `(1,3,2,4)`.
pub fn convention_canary(compose: impl Fn(&Perm, &Perm) -> Perm) -> Check {
    let w4 = Perm::cycles(4, &[&[1, 3], &[2, 4]]);
    let w2 = Perm::cycles(4, &[&[1, 2]]);
    let y = compose(&w4, &w2);
    let expected = Perm::cycles(4, &[&[1, 3, 2, 4]]);
    Check::new("composition_convention", y == expected, format!("w_4 w_2 = {y}, expected {expected}"))
}

fn order_check(s: &NamedSubgroups) -> Check {
    let v = two_adic_valuation_factorial(s.n());
    let ok = s.p.order() == 1u128 << v && s.q.order() == 1u128 << (v - 1);
    Check::new("sylow_orders", ok, format!("|P| = {}, |Q| = {}, 2-part of n! = 2^{v}", s.p.order(), s.q.order()))
}

fn drops_order(gens: &[Perm], n: usize, order: u128) -> Result<Vec<usize>> {
    let mut bad = Vec::new();
    for i in 0..gens.len() {
        let rest: Vec<Perm> = gens.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, g)| g.clone()).collect();
        if PermGroup::new(n, rest)?.order() >= order {
            bad.push(i);
        }
    }
    Ok(bad)
}

fn minimality_check(n: usize) -> Result<Check> {
    let alt = sylow_alt(n)?;
    let sym = sylow_sym(n)?;
    let bad_alt = drops_order(&alt, n, sylow_alt_group(n)?.order())?;
    let bad_sym = drops_order(&sym, n, sylow_sym_group(n)?.order())?;
    Ok(Check::new(
        "minimal_generating_set",
        bad_alt.is_empty() && bad_sym.is_empty(),
        format!(
            "{} generators of Q, {} of P; redundant positions {bad_alt:?} / {bad_sym:?}",
            alt.len(),
            sym.len()
        ),
    ))
}

fn block_cycle_check(s: &NamedSubgroups) -> Check {
    let mut ok = true;
    for (j, (y, x)) in s.ys.iter().zip(&s.xs).enumerate() {
        let nj = s.profile.parts()[j];
        let moved = |p: &Perm| {
            let mut t: Vec<usize> = p.cycle_type().into_iter().filter(|&c| c > 1).collect();
            t.sort_unstable();
            t
        };
        ok &= moved(y) == [nj];
        let half = if nj > 2 { vec![nj / 2, nj / 2] } else { vec![] };
        ok &= moved(x) == half;
    }
    if s.profile.l() >= 2 {
        ok &= s.x.is_subgroup_of(&s.phi_q);
    }
    Check::new("block_cycles", ok, format!("y and x cycle types for parts {:?}", s.profile.parts()))
}

fn frattini_checks(s: &NamedSubgroups) -> Result<Vec<Check>> {
    let dp = s.p.derived_subgroup();
    let dq = s.q.derived_subgroup();
    let derived = dp.same_group(&s.phi_p) && dq.same_group(&s.phi_q);
    let (pp, pq) = (s.phi_p.order(), s.phi_q.order());
    let dichotomy = if s.profile.is_two_power() {
        pp == 2 * pq && s.phi_q.is_subgroup_of(&s.phi_p)
    } else {
        s.phi_p.same_group(&s.phi_q)
    };
    Ok(vec![
        Check::new(
            "frattini_is_derived",
            derived,
            format!("|Phi(P)| = {pp}, |P'| = {}, |Phi(Q)| = {pq}, |Q'| = {}", dp.order(), dq.order()),
        ),
        Check::new(
            "frattini_index",
            dichotomy,
            format!("|Phi(P) : Phi(Q)| = {}, 2-power: {}", pp / pq.max(1), s.profile.is_two_power()),
        ),
    ])
}

/// Splits `g` as `(x_1, x_2; 1)` on the two halves, if it preserves them.
fn base_coordinates(g: &Perm, h: usize) -> Option<(Perm, Perm)> {
    let img = g.images();
    if (0..h).any(|i| usize::from(img[i]) >= h) {
        return None;
    }
    let first: Vec<u8> = img[..h].to_vec();
    let second: Vec<u8> = img[h..].iter().map(|&p| p - h as u8).collect();
    Some((Perm::from_images(first).ok()?, Perm::from_images(second).ok()?))
}

fn frattini_set_checks(s: &NamedSubgroups) -> Result<Vec<Check>> {
    let n = s.n();
    let h = n / 2;
    let ph = sylow_sym_group(h)?;
    let phi_h = ph.frattini_2group()?;
    let qh = sylow_alt_group(h)?;
    let (mut bad_p, mut bad_q, mut total) = (0u64, 0u64, 0u64);
    for g in s.p.element_iter() {
        total += 1;
        let coords = base_coordinates(&g, h);
        let in_p = coords.as_ref().is_some_and(|(a, b)| phi_h.contains(&a.mul(b)));
        let in_q = coords
            .as_ref()
            .is_some_and(|(a, b)| qh.contains(a) && qh.contains(b) && phi_h.contains(&a.mul(b)));
        bad_p += u64::from(in_p != s.phi_p.contains(&g));
        bad_q += u64::from(in_q != s.phi_q.contains(&g));
    }
    Ok(vec![
        Check::new("frattini_set_p", bad_p == 0, format!("{bad_p} of {total} elements disagree")),
        Check::new("frattini_set_q", bad_q == 0, format!("{bad_q} of {total} elements disagree")),
    ])
}

fn base_group_checks(s: &NamedSubgroups) -> Result<Vec<Check>> {
    let n = s.n();
    let h = n / 2;
    let profile = two_adic_profile(n)?;
    let m = profile.exponents()[0];
    let top = block_generator(&profile, m, 0);
    let w = |k: u32| block_generator(&profile, k, 0);
    let mut alt_gens = vec![w(1).mul(&w(1).conj(&top))];
    for k in 2..m {
        alt_gens.push(w(k));
        alt_gens.push(w(k).conj(&top));
    }
    let b_cap_q = PermGroup::new(n, alt_gens)?;
    let ph = sylow_sym_group(h)?.order();
    let gens_ok = s.b.order() == ph * ph && b_cap_q.same_group(&s.b_alt) && s.b_alt.is_subgroup_of(&s.q);

    let p_half = embedded_sym(h, n)?.join(s.phi_p.gens());
    let q_half = embedded_alt(h, n)?.join(s.phi_p.gens());
    let products = p_half.same_group(&s.b) && q_half.same_group(&s.b_alt);

    let q_shift = embedded_alt(h + 2, n)?.join(s.phi_q.gens());
    let alt_product = q_shift.same_group(&s.b_alt);
    Ok(vec![
        Check::new(
            "base_group_generators",
            gens_ok,
            format!("|B| = {}, |B ∩ Q| = {}", s.b.order(), s.b_alt.order()),
        ),
        Check::new(
            "base_group_products",
            products,
            format!("|P_{h} Phi(P)| = {}, |Q_{h} Phi(P)| = {}", p_half.order(), q_half.order()),
        ),
        Check::new(
            "alternating_base_product",
            alt_product,
            format!("|Q_{} Phi(Q)| = {}", h + 2, q_shift.order()),
        ),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flipped_composition_fails_canary() {
        assert!(convention_canary(Perm::mul).passed());
        assert!(!convention_canary(|a, b| b.mul(a)).passed());
    }

    #[test]
    fn identities_for_small_degrees() {
        for n in [4usize, 5, 6, 8, 10] {
            let checks = sylow_identity_checks(n).unwrap();
            assert!(checks.iter().all(Check::passed), "n = {n}: {checks:?}");
        }
        let names: Vec<String> = sylow_identity_checks(8).unwrap().into_iter().map(|c| c.name).collect();
        assert!(names.contains(&"frattini_set_q".to_string()));
        assert!(names.contains(&"alternating_base_product".to_string()));
    }
}
