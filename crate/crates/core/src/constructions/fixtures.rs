use crate::error::{Error, Result};
use crate::field::Field;
use crate::perm::{Perm, PermGroup};

use super::modules::{natural_modules, NaturalKind};
use super::special::{split_summand_bases, sym_endomorphism_basis, degree_six_data};
use super::sylow::{named_subgroups, sylow_alt, sylow_sym};
use super::profile::two_adic_profile;

/// A named text artifact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fixture {
    pub name: String,
    pub contents: String,
}

fn perm_list(perms: &[Perm]) -> String {
    perms.iter().map(|p| format!("{p}\n")).collect()
}

/// Parses one permutation per line; blank lines and `#` comments are skipped.
pub fn parse_perm_list(text: &str, degree: usize) -> Result<Vec<Perm>> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| Perm::parse_with_degree(l, degree))
        .collect()
}

/// Every construction for degree `n` in the permutation and matrix text formats.
pub fn dump_fixtures(n: usize, field: Field) -> Result<Vec<Fixture>> {
    if !(3..=64).contains(&n) {
        return Err(Error::Domain(format!("fixture dumps cover degrees 3..=64, got {n}")));
    }
    let mut out = Vec::new();
    let mut push = |name: String, contents: String| out.push(Fixture { name, contents });
    let profile = two_adic_profile(n)?;
    push("profile.txt".into(), format!("n {n}\nparts {:?}\ncase {}\n", profile.parts(), profile.case_tag().as_str()));
    push("sylow_sym.perm".into(), perm_list(&sylow_sym(n)?));
    if n >= 4 {
        push("sylow_alt.perm".into(), perm_list(&sylow_alt(n)?));
    }
    let nat = natural_modules(n, field)?;
    let delta: String = nat.delta_perm().iter().map(|g| format!("{}\n", g + 1)).collect();
    push("delta.txt".into(), delta);
    let acting = if n >= 4 { sylow_alt(n)? } else { PermGroup::alternating(n).gens().to_vec() };
    for (i, g) in acting.iter().enumerate() {
        push(format!("heart/gen{i}.mat"), nat.action(NaturalKind::Heart, g)?.to_string());
    }
    if n.is_multiple_of(2) && n >= 4 {
        let s = named_subgroups(n)?;
        let groups: [(&str, &PermGroup); 9] = [
            ("p", &s.p),
            ("q", &s.q),
            ("b", &s.b),
            ("b_alt", &s.b_alt),
            ("y", &s.y),
            ("y_alt", &s.y_alt),
            ("x", &s.x),
            ("phi_p", &s.phi_p),
            ("phi_q", &s.phi_q),
        ];
        for (name, g) in groups {
            push(format!("groups/{name}.perm"), perm_list(g.gens()));
        }
        for (label, v) in nat.distinguished().labeled() {
            push(format!("vectors/{label}.mat"), v.to_string());
        }
        if let Ok((b1, b2)) = split_summand_bases(n, field) {
            push("summand_bases/b1.mat".into(), b1.to_string());
            push("summand_bases/b2.mat".into(), b2.to_string());
        }
        if let Ok(phis) = sym_endomorphism_basis(n, field) {
            for (i, m) in phis.iter().enumerate() {
                push(format!("endo/phi{}.mat", i + 1), m.to_string());
            }
        }
        if n == 6 {
            let r = degree_six_data()?;
            push("split/u.mat".into(), r.u_basis.to_string());
            push("split/v.mat".into(), r.v_basis.to_string());
            for (i, m) in r.adapted.iter().enumerate() {
                push(format!("split/adapted{i}.mat"), m.to_string());
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Matrix;

    #[test]
    fn round_trip() {
        for n in [6, 7, 10, 14] {
            let dump = dump_fixtures(n, Field::GF2).unwrap();
            for fx in &dump {
                if fx.name.ends_with(".mat") {
                    let m: Matrix = fx.contents.parse().unwrap();
                    assert_eq!(m.to_string(), fx.contents, "{}", fx.name);
                } else if fx.name.ends_with(".perm") {
                    let perms = parse_perm_list(&fx.contents, n).unwrap();
                    assert_eq!(perm_list(&perms), fx.contents);
                }
            }
        }
        let names: Vec<String> = dump_fixtures(10, Field::GF2).unwrap().into_iter().map(|f| f.name).collect();
        assert!(names.contains(&"endo/phi6.mat".to_string()));
        assert!(dump_fixtures(2, Field::GF2).is_err());
    }
}
