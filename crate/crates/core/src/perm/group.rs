use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use rand::Rng;

use crate::error::{Error, Result};

use super::chain::StabChain;
use super::permutation::Perm;

/// A permutation group given by generators, with a lazily built stabilizer chain.
pub struct PermGroup {
    degree: usize,
    gens: Vec<Perm>,
    chain: OnceLock<StabChain>,
}

impl Clone for PermGroup {
    fn clone(&self) -> PermGroup {
        let chain = OnceLock::new();
        if let Some(c) = self.chain.get() {
            let _ = chain.set(c.clone());
        }
        PermGroup { degree: self.degree, gens: self.gens.clone(), chain }
    }
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PermGroup(degree {}, gens [", self.degree)?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, "])")
    }
}

impl PermGroup {
    pub fn new(degree: usize, gens: Vec<Perm>) -> Result<PermGroup> {
        if let Some(g) = gens.iter().find(|g| g.degree() != degree) {
            return Err(Error::Domain(format!(
                "generator {g} has degree {}, expected {degree}",
                g.degree()
            )));
        }
        Ok(PermGroup { degree, gens, chain: OnceLock::new() })
    }

    /// Builds a group whose chain was already computed for `gens`.
    fn with_chain(degree: usize, gens: Vec<Perm>, chain: StabChain) -> PermGroup {
        let cell = OnceLock::new();
        let _ = cell.set(chain);
        PermGroup { degree, gens, chain: cell }
    }

    pub fn trivial(degree: usize) -> PermGroup {
        PermGroup::with_chain(degree, Vec::new(), StabChain::trivial(degree))
    }

    /// `S_n = <(1,2), (1,..,n)>`.
    pub fn symmetric(n: usize) -> PermGroup {
        if n < 2 {
            return PermGroup::trivial(n);
        }
        let cyc: Vec<usize> = (1..=n).collect();
        let gens = vec![Perm::cycles(n, &[&[1, 2]]), Perm::cycles(n, &[&cyc])];
        PermGroup::new(n, gens).expect("generators of matching degree")
    }

    /// `A_n` generated by `(1,2,3)` and an even long cycle.
    pub fn alternating(n: usize) -> PermGroup {
        if n < 3 {
            return PermGroup::trivial(n);
        }
        let long: Vec<usize> = if n % 2 == 1 { (1..=n).collect() } else { (2..=n).collect() };
        let mut gens = vec![Perm::cycles(n, &[&[1, 2, 3]])];
        if n > 3 {
            gens.push(Perm::cycles(n, &[&long]));
        }
        PermGroup::new(n, gens).expect("generators of matching degree")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn gens(&self) -> &[Perm] {
        &self.gens
    }

    pub fn chain(&self) -> &StabChain {
        self.chain.get_or_init(|| StabChain::from_gens(self.degree, &self.gens))
    }

    pub fn order(&self) -> u128 {
        self.chain().order()
    }

    pub fn contains(&self, g: &Perm) -> bool {
        self.chain().contains(g)
    }

    pub fn is_trivial(&self) -> bool {
        self.gens.iter().all(Perm::is_identity)
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.gens.iter().all(|g| other.contains(g))
    }

    /// Equality as sets of permutations.
    pub fn same_group(&self, other: &PermGroup) -> bool {
        self.order() == other.order() && self.is_subgroup_of(other)
    }

    pub fn index_in(&self, over: &PermGroup) -> Result<u128> {
        if !self.is_subgroup_of(over) {
            return Err(Error::Domain("not a subgroup".into()));
        }
        Ok(over.order() / self.order())
    }

    pub fn is_two_group(&self) -> bool {
        self.order().is_power_of_two()
    }

    /// The group generated by `self` and `extra`.
    pub fn join(&self, extra: &[Perm]) -> PermGroup {
        let mut gens = self.gens.clone();
        gens.extend(extra.iter().filter(|g| !g.is_identity()).cloned());
        PermGroup::new(self.degree, gens).expect("degrees match")
    }

    /// Every element exactly once, in chain order.
    pub fn elements(&self, budget: u128) -> Result<Vec<Perm>> {
        let order = self.order();
        if order > budget {
            return Err(Error::Budget { what: "element enumeration".into(), needed: order, budget });
        }
        Ok(self.element_iter().collect())
    }

    /// Lazy enumeration in chain order, without a budget check.
    pub fn element_iter(&self) -> impl Iterator<Item = Perm> + '_ {
        let chain = self.chain();
        let sizes: Vec<usize> = chain.levels().iter().map(|l| l.len()).collect();
        let mut digits = vec![0usize; self.degree];
        let mut done = false;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            let g = chain.element_from_digits(&digits);
            done = true;
            for lvl in (0..digits.len()).rev() {
                digits[lvl] += 1;
                if digits[lvl] < sizes[lvl] {
                    done = false;
                    break;
                }
                digits[lvl] = 0;
            }
            Some(g)
        })
    }

    pub fn random_element<R: Rng>(&self, rng: &mut R) -> Perm {
        let chain = self.chain();
        let digits: Vec<usize> = chain.levels().iter().map(|l| rng.gen_range(0..l.len())).collect();
        chain.element_from_digits(&digits)
    }

    /// Orbits as sorted 0-based point lists, ordered by least point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let n = self.degree;
        let mut label = vec![usize::MAX; n];
        let mut out: Vec<Vec<usize>> = Vec::new();
        for start in 0..n {
            if label[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut orbit = vec![start];
            label[start] = id;
            let mut k = 0;
            while k < orbit.len() {
                let p = orbit[k];
                for g in &self.gens {
                    let q = g.image(p);
                    if label[q] == usize::MAX {
                        label[q] = id;
                        orbit.push(q);
                    }
                }
                k += 1;
            }
            orbit.sort_unstable();
            out.push(orbit);
        }
        out
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        (0..self.degree).filter(|&p| self.gens.iter().all(|g| g.image(p) == p)).collect()
    }

    pub fn is_transitive(&self) -> bool {
        self.orbits().len() <= 1
    }

    /// Smallest subgroup of `ambient` containing `gens` and normalized by `ambient`.
    pub fn normal_closure_of(ambient: &PermGroup, gens: &[Perm]) -> PermGroup {
        let n = ambient.degree;
        let mut chain = StabChain::trivial(n);
        let mut list: Vec<Perm> = Vec::new();
        for g in gens {
            if !chain.contains(g) {
                chain.add_generator(g);
                list.push(g.clone());
            }
        }
        let mut k = 0;
        while k < list.len() {
            for a in &ambient.gens {
                let c = list[k].conj(a);
                if !chain.contains(&c) {
                    chain.add_generator(&c);
                    list.push(c);
                }
            }
            k += 1;
        }
        PermGroup::with_chain(n, list, chain)
    }

    /// A generating set pruned of generators lying in the span of the earlier ones.
    pub fn reduced(&self) -> PermGroup {
        let mut chain = StabChain::trivial(self.degree);
        let mut list = Vec::new();
        for g in &self.gens {
            if !chain.contains(g) {
                chain.add_generator(g);
                list.push(g.clone());
            }
        }
        PermGroup::with_chain(self.degree, list, chain)
    }

    /// The commutator subgroup.
    pub fn derived_subgroup(&self) -> PermGroup {
        let mut comms = Vec::new();
        for (i, a) in self.gens.iter().enumerate() {
            for b in &self.gens[i + 1..] {
                let c = a.commutator(b);
                if !c.is_identity() {
                    comms.push(c);
                }
            }
        }
        PermGroup::normal_closure_of(self, &comms)
    }

    /// The Frattini subgroup of a 2-group, generated by squares and commutators.
    pub fn frattini_2group(&self) -> Result<PermGroup> {
        if !self.is_two_group() {
            return Err(Error::Domain(format!("group of order {} is not a 2-group", self.order())));
        }
        let mut seeds: Vec<Perm> = self.gens.iter().map(|g| g.mul(g)).filter(|g| !g.is_identity()).collect();
        for (i, a) in self.gens.iter().enumerate() {
            for b in &self.gens[i + 1..] {
                let c = a.commutator(b);
                if !c.is_identity() {
                    seeds.push(c);
                }
            }
        }
        Ok(PermGroup::normal_closure_of(self, &seeds))
    }

    /// The even permutations of the group, from Schreier generators for the
    /// transversal `{1, t}` with `t` the first odd generator.
    pub fn even_part(&self) -> PermGroup {
        let Some(t) = self.gens.iter().find(|g| !g.is_even()) else {
            return self.clone();
        };
        let t_inv = t.inv();
        let mut gens = Vec::new();
        for s in &self.gens {
            if s.is_even() {
                gens.push(s.clone());
                gens.push(t.mul(s).mul(&t_inv));
            } else {
                gens.push(s.mul(&t_inv));
                gens.push(t.mul(s));
            }
        }
        gens.retain(|g| !g.is_identity());
        PermGroup::new(self.degree, gens).expect("degrees match").reduced()
    }

    /// The same group acting on `n >= degree` points.
    pub fn extend_degree(&self, n: usize) -> PermGroup {
        PermGroup::new(n, self.gens.iter().map(|g| g.extend(n)).collect()).expect("degrees match")
    }

    /// Conjugate group `h^-1 G h`.
    pub fn conjugate(&self, h: &Perm) -> PermGroup {
        PermGroup::new(self.degree, self.gens.iter().map(|g| g.conj(h)).collect()).expect("degrees match")
    }

    /// The subgroup fixing every point of `points`.
    pub fn pointwise_stabilizer(&self, points: &[usize]) -> PermGroup {
        let n = self.degree;
        // move `points` to the front so a chain level gives the stabilizer
        let mut order: Vec<usize> = points.to_vec();
        order.sort_unstable();
        order.dedup();
        let front = order.len();
        order.extend((0..n).filter(|p| !points.contains(p)));
        let mut images = vec![0u8; n];
        for (new, &old) in order.iter().enumerate() {
            images[old] = new as u8;
        }
        let c = Perm::from_images(images).expect("bijection");
        let conj = self.conjugate(&c);
        let chain = conj.chain();
        let mut stab_gens: Vec<Perm> = chain
            .strong_generators()
            .filter(|s| (0..front).all(|p| s.image(p) == p))
            .map(|s| s.conj(&c.inv()))
            .collect();
        stab_gens.retain(|g| !g.is_identity());
        PermGroup::new(n, stab_gens).expect("degrees match").reduced()
    }

    /// Multiset of element orders, as `order -> count`.
    pub fn order_profile(&self, budget: u128) -> Result<BTreeMap<u64, u64>> {
        let mut prof = BTreeMap::new();
        for g in self.elements(budget)? {
            *prof.entry(g.order()).or_insert(0) += 1;
        }
        Ok(prof)
    }

    /// Sorted orbit lengths.
    pub fn orbit_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.orbits().iter().map(Vec::len).collect();
        t.sort_unstable();
        t
    }
}

/// Exponent of 2 in `n!`.
pub fn two_adic_valuation_factorial(n: usize) -> u32 {
    let mut v = 0;
    let mut p = 2;
    while p <= n {
        v += (n / p) as u32;
        p *= 2;
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn closure(gens: &[Perm], n: usize) -> HashSet<Perm> {
        let mut set: HashSet<Perm> = HashSet::new();
        let mut queue = vec![Perm::identity(n)];
        set.insert(Perm::identity(n));
        while let Some(x) = queue.pop() {
            for g in gens {
                let y = x.mul(g);
                if set.insert(y.clone()) {
                    queue.push(y);
                }
            }
        }
        set
    }

    #[test]
    fn small_orders_match_closure() {
        let s3 = PermGroup::new(3, vec![Perm::cycles(3, &[&[1, 2, 3]]), Perm::cycles(3, &[&[1, 2]])]).unwrap();
        assert_eq!(s3.order(), 6);
        for n in 2..=7 {
            assert_eq!(PermGroup::symmetric(n).order(), (1..=n as u128).product());
            let a = PermGroup::alternating(n);
            assert_eq!(a.order(), closure(a.gens(), n).len() as u128);
        }
    }

    #[test]
    fn even_part_matches_closure() {
        for n in 3..=6 {
            let s = PermGroup::symmetric(n);
            let even: HashSet<Perm> = closure(s.gens(), n).into_iter().filter(Perm::is_even).collect();
            let a = s.even_part();
            assert_eq!(a.order(), even.len() as u128);
            assert!(a.gens().iter().all(Perm::is_even));
        }
        let d8 = PermGroup::new(4, vec![Perm::cycles(4, &[&[1, 2]]), Perm::cycles(4, &[&[1, 3], &[2, 4]])]).unwrap();
        assert_eq!(d8.even_part().order(), 4);
    }

    #[test]
    fn elements_are_distinct_and_complete() {
        let g = PermGroup::alternating(5);
        let els = g.elements(1000).unwrap();
        let set: HashSet<Perm> = els.iter().cloned().collect();
        assert_eq!(set.len(), 60);
        assert_eq!(set, closure(g.gens(), 5));
        assert!(matches!(g.elements(10), Err(Error::Budget { needed: 60, .. })));
        assert_eq!(PermGroup::trivial(4).elements(1).unwrap(), vec![Perm::identity(4)]);
    }

    #[test]
    fn derived_and_frattini_of_dihedral() {
        let p4 = PermGroup::new(4, vec![Perm::cycles(4, &[&[1, 2]]), Perm::cycles(4, &[&[1, 3], &[2, 4]])]).unwrap();
        assert_eq!(p4.order(), 8);
        let d = p4.derived_subgroup();
        assert_eq!(d.order(), 2);
        assert!(d.contains(&Perm::cycles(4, &[&[1, 2], &[3, 4]])));
        assert!(p4.frattini_2group().unwrap().same_group(&d));
        assert!(PermGroup::symmetric(3).frattini_2group().is_err());
    }

    #[test]
    fn stabilizer_and_orbits() {
        let a6 = PermGroup::alternating(6);
        let st = a6.pointwise_stabilizer(&[1, 4]);
        assert_eq!(st.order(), 12);
        assert!(st.gens().iter().all(|g| g.image(1) == 1 && g.image(4) == 4));
        let h = PermGroup::new(6, vec![Perm::cycles(6, &[&[1, 2], &[3, 4]])]).unwrap();
        assert_eq!(h.fixed_points(), vec![4, 5]);
    }

    #[test]
    fn legendre() {
        assert_eq!(two_adic_valuation_factorial(8), 7);
        assert_eq!(two_adic_valuation_factorial(14), 11);
        assert_eq!(two_adic_valuation_factorial(10), 8);
    }
}
