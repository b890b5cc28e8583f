use std::fmt;

use serde::Serialize;

use crate::error::Result;

use super::group::PermGroup;
use super::permutation::Perm;

/// How a conjugacy claim was settled.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConjugacyMode {
    /// Both groups are Sylow 2-subgroups of point stabilizers of equal size.
    SylowArgument,
    /// A conjugating element was found by enumerating a group.
    Exhaustive,
    /// Only orbit and element-order invariants were compared.
    InvariantOnly,
}

impl fmt::Display for ConjugacyMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ConjugacyMode::SylowArgument => "sylow-argument",
            ConjugacyMode::Exhaustive => "witness",
            ConjugacyMode::InvariantOnly => "invariant-only",
        })
    }
}

#[derive(Clone, Debug)]
pub enum ConjugacyOutcome {
    /// `a^g = b` for the given element.
    Witness { element: Perm, mode: ConjugacyMode },
    /// Conjugate by Sylow's theorem; no element was produced.
    Proven { mode: ConjugacyMode },
    /// Invariants agree but nothing stronger was established.
    InvariantCompatible,
    NotConjugate { reason: String },
}

impl ConjugacyOutcome {
    pub fn is_conjugate(&self) -> bool {
        matches!(self, ConjugacyOutcome::Witness { .. } | ConjugacyOutcome::Proven { .. })
    }

    pub fn mode(&self) -> ConjugacyMode {
        match self {
            ConjugacyOutcome::Witness { mode, .. } | ConjugacyOutcome::Proven { mode } => *mode,
            ConjugacyOutcome::InvariantCompatible | ConjugacyOutcome::NotConjugate { .. } => {
                ConjugacyMode::InvariantOnly
            }
        }
    }

    pub fn witness(&self) -> Option<&Perm> {
        match self {
            ConjugacyOutcome::Witness { element, .. } => Some(element),
            _ => None,
        }
    }
}

fn conjugates_onto(a: &PermGroup, b: &PermGroup, g: &Perm) -> bool {
    a.gens().iter().all(|x| b.contains(&x.conj(g)))
}

fn two_part(order: u128) -> u128 {
    1u128 << order.trailing_zeros()
}

/// Searches `within` for `c` with `a^c = b`; `a` and `b` must have equal order.
fn search(within: &PermGroup, a: &PermGroup, b: &PermGroup, budget: u128) -> Result<Option<Perm>> {
    for c in within.elements(budget)? {
        if conjugates_onto(a, b, &c) {
            return Ok(Some(c));
        }
    }
    Ok(None)
}

/// Some element of `g` mapping the point set `from` onto `to`, trying the
/// order-preserving bijection and its products with transpositions outside `to`.
fn set_mover(g: &PermGroup, from: &[usize], to: &[usize]) -> Option<Perm> {
    let n = g.degree();
    let rest_from: Vec<usize> = (0..n).filter(|p| !from.contains(p)).collect();
    let rest_to: Vec<usize> = (0..n).filter(|p| !to.contains(p)).collect();
    let mut images = vec![0u8; n];
    for (&x, &y) in from.iter().zip(to).chain(rest_from.iter().zip(&rest_to)) {
        images[x] = y as u8;
    }
    let pi = Perm::from_images(images).ok()?;
    if g.contains(&pi) {
        return Some(pi);
    }
    for (i, &x) in rest_to.iter().enumerate() {
        for &y in &rest_to[i + 1..] {
            let t = Perm::from_cycles(n, &[&[x + 1, y + 1]]).ok()?;
            let cand = pi.mul(&t);
            if g.contains(&cand) {
                return Some(cand);
            }
        }
    }
    None
}

/// Decides whether `a` and `b` are conjugate in `g`, trying the Sylow
/// argument on fixed-point sets, then exhaustive search, then invariants.
pub fn conjugacy_witness(g: &PermGroup, a: &PermGroup, b: &PermGroup, budget: u128) -> Result<ConjugacyOutcome> {
    if a.order() != b.order() {
        return Ok(ConjugacyOutcome::NotConjugate { reason: format!("orders {} and {} differ", a.order(), b.order()) });
    }
    let n = g.degree();
    if a.same_group(b) {
        return Ok(ConjugacyOutcome::Witness { element: Perm::identity(n), mode: ConjugacyMode::Exhaustive });
    }
    let (fa, fb) = (a.fixed_points(), b.fixed_points());
    if fa.len() == fb.len() {
        let (sa, sb) = (g.pointwise_stabilizer(&fa), g.pointwise_stabilizer(&fb));
        if a.order() == two_part(sa.order()) && b.order() == two_part(sb.order()) {
            if let Some(mover) = set_mover(g, &fa, &fb) {
                let moved = a.conjugate(&mover);
                if sb.order() <= budget {
                    if let Some(c) = search(&sb, &moved, b, budget)? {
                        return Ok(ConjugacyOutcome::Witness {
                            element: mover.mul(&c),
                            mode: ConjugacyMode::SylowArgument,
                        });
                    }
                }
                return Ok(ConjugacyOutcome::Proven { mode: ConjugacyMode::SylowArgument });
            }
        }
    }
    if g.order() <= budget {
        return Ok(match search(g, a, b, budget)? {
            Some(c) => ConjugacyOutcome::Witness { element: c, mode: ConjugacyMode::Exhaustive },
            None => ConjugacyOutcome::NotConjugate { reason: "exhaustive search found no conjugating element".into() },
        });
    }
    if a.orbit_type() != b.orbit_type() {
        return Ok(ConjugacyOutcome::NotConjugate { reason: "orbit types differ".into() });
    }
    if a.order_profile(budget)? != b.order_profile(budget)? {
        return Ok(ConjugacyOutcome::NotConjugate { reason: "element order profiles differ".into() });
    }
    Ok(ConjugacyOutcome::InvariantCompatible)
}
