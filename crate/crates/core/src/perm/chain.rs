//! Stabilizer chains with base `0, 1, .., n-1`, built by Schreier-Sims.
//!
//! Every transversal element and strong generator is recorded as a node of a
//! straight-line program over the group's generators, so any representation
//! given on the generators can be evaluated on the whole chain.

use super::permutation::Perm;

const NONE: u32 = u32::MAX;

/// One step of a straight-line program.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SlpNode {
    Identity,
    Gen(usize),
    Mul(usize, usize),
    Inv(usize),
}

/// A straight-line program: node `i` may refer only to nodes before it.
#[derive(Clone, Debug, Default)]
pub struct Slp {
    nodes: Vec<SlpNode>,
}

impl Slp {
    pub fn nodes(&self) -> &[SlpNode] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    fn push(&mut self, node: SlpNode) -> usize {
        self.nodes.push(node);
        self.nodes.len() - 1
    }

    /// Evaluates every node in a monoid given images of the generators.
    pub fn eval_all<T: Clone>(
        &self,
        gens: &[T],
        one: &T,
        mul: impl Fn(&T, &T) -> T,
        inv: impl Fn(&T) -> T,
    ) -> Vec<T> {
        let mut vals: Vec<T> = Vec::with_capacity(self.nodes.len());
        for node in &self.nodes {
            let v = match *node {
                SlpNode::Identity => one.clone(),
                SlpNode::Gen(i) => gens[i].clone(),
                SlpNode::Mul(a, b) => mul(&vals[a], &vals[b]),
                SlpNode::Inv(a) => inv(&vals[a]),
            };
            vals.push(v);
        }
        vals
    }
}

/// The orbit of base point `i` under the pointwise stabilizer of `0..i`.
#[derive(Clone, Debug)]
pub struct Level {
    orbit: Vec<u8>,
    pos: Vec<u32>,
    reps: Vec<Perm>,
    rep_invs: Vec<Perm>,
    rep_nodes: Vec<usize>,
    rep_inv_nodes: Vec<usize>,
    gens: Vec<usize>,
    tested: Vec<usize>,
}

impl Level {
    fn new(n: usize, point: usize, ident_node: usize) -> Level {
        let mut pos = vec![NONE; n];
        pos[point] = 0;
        Level {
            orbit: vec![point as u8],
            pos,
            reps: vec![Perm::identity(n)],
            rep_invs: vec![Perm::identity(n)],
            rep_nodes: vec![ident_node],
            rep_inv_nodes: vec![ident_node],
            gens: Vec::new(),
            tested: vec![0],
        }
    }

    pub fn orbit(&self) -> &[u8] {
        &self.orbit
    }

    pub fn len(&self) -> usize {
        self.orbit.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbit.is_empty()
    }

    /// Index of `p` in the orbit.
    pub fn position(&self, p: usize) -> Option<usize> {
        match self.pos[p] {
            NONE => None,
            i => Some(i as usize),
        }
    }

    /// The transversal element sending the base point to `orbit()[idx]`.
    pub fn rep(&self, idx: usize) -> &Perm {
        &self.reps[idx]
    }

    pub fn rep_inv(&self, idx: usize) -> &Perm {
        &self.rep_invs[idx]
    }

    pub fn rep_node(&self, idx: usize) -> usize {
        self.rep_nodes[idx]
    }
}

#[derive(Clone, Debug)]
struct Strong {
    perm: Perm,
    node: usize,
}

/// Result of stripping an element through the chain.
#[derive(Clone, Debug)]
pub struct Sifted {
    pub residue: Perm,
    /// Level at which stripping stopped; equals the degree for members.
    pub drop: usize,
    /// `(level, orbit index)` of each transversal element divided out.
    pub path: Vec<(usize, usize)>,
}

#[derive(Clone, Debug)]
pub struct StabChain {
    n: usize,
    levels: Vec<Level>,
    strong: Vec<Strong>,
    slp: Slp,
    gen_count: usize,
}

impl StabChain {
    /// The chain of the trivial group on `n` points.
    pub fn trivial(n: usize) -> StabChain {
        let mut slp = Slp::default();
        let ident = slp.push(SlpNode::Identity);
        let levels = (0..n).map(|p| Level::new(n, p, ident)).collect();
        StabChain { n, levels, strong: Vec::new(), slp, gen_count: 0 }
    }

    pub fn from_gens(n: usize, gens: &[Perm]) -> StabChain {
        let mut chain = StabChain::trivial(n);
        for g in gens {
            chain.add_generator(g);
        }
        chain
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn slp(&self) -> &Slp {
        &self.slp
    }

    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.len() as u128).product()
    }

    pub fn strong_generators(&self) -> impl Iterator<Item = &Perm> {
        self.strong.iter().map(|s| &s.perm)
    }

    /// Strips `g` through levels `from..`.
    pub fn sift_from(&self, g: &Perm, from: usize) -> Sifted {
        let mut h = g.clone();
        let mut path = Vec::new();
        for lvl in from..self.n {
            let p = h.image(lvl);
            if p == lvl {
                continue;
            }
            match self.levels[lvl].position(p) {
                None => return Sifted { residue: h, drop: lvl, path },
                Some(idx) => {
                    h = h.mul(&self.levels[lvl].rep_invs[idx]);
                    path.push((lvl, idx));
                }
            }
        }
        Sifted { residue: h, drop: self.n, path }
    }

    pub fn sift(&self, g: &Perm) -> Sifted {
        self.sift_from(g, 0)
    }

    pub fn contains(&self, g: &Perm) -> bool {
        g.degree() == self.n && self.sift(g).drop == self.n
    }

    /// Writes a member as `u_m * .. * u_1` with `u_i` transversal elements,
    /// returned in that left-to-right order.
    pub fn factor(&self, g: &Perm) -> Option<Vec<(usize, usize)>> {
        let s = self.sift(g);
        (s.drop == self.n).then(|| s.path.into_iter().rev().collect())
    }

    /// Adds the next group generator; its SLP node is `Gen(index)`.
    pub fn add_generator(&mut self, g: &Perm) {
        assert_eq!(g.degree(), self.n, "generator degree mismatch");
        let idx = self.gen_count;
        self.gen_count += 1;
        let gen_node = self.slp.push(SlpNode::Gen(idx));
        let s = self.sift(g);
        if s.drop == self.n {
            return;
        }
        let node = self.path_node(gen_node, &s.path);
        self.add_strong(s.residue, node, 0, s.drop);
        self.complete(s.drop);
    }

    fn path_node(&mut self, start: usize, path: &[(usize, usize)]) -> usize {
        let mut node = start;
        for &(lvl, idx) in path {
            let inv_node = self.levels[lvl].rep_inv_nodes[idx];
            node = self.slp.push(SlpNode::Mul(node, inv_node));
        }
        node
    }

    fn add_strong(&mut self, h: Perm, node: usize, from: usize, to: usize) {
        let sidx = self.strong.len();
        self.strong.push(Strong { perm: h, node });
        for lvl in from..=to.min(self.n - 1) {
            self.levels[lvl].gens.push(sidx);
            self.close_orbit(lvl);
        }
    }

    fn close_orbit(&mut self, lvl: usize) {
        let mut k = 0;
        let new_gen = *self.levels[lvl].gens.last().expect("level has a generator");
        let old_len = self.levels[lvl].len();
        while k < self.levels[lvl].len() {
            let gen_ids: Vec<usize> = if k < old_len {
                vec![new_gen]
            } else {
                self.levels[lvl].gens.clone()
            };
            for s in gen_ids {
                let p = self.levels[lvl].orbit[k] as usize;
                let q = self.strong[s].perm.image(p);
                if self.levels[lvl].pos[q] == NONE {
                    let rep = self.levels[lvl].reps[k].mul(&self.strong[s].perm);
                    let rep_inv = rep.inv();
                    let node = self.slp.push(SlpNode::Mul(self.levels[lvl].rep_nodes[k], self.strong[s].node));
                    let inv_node = self.slp.push(SlpNode::Inv(node));
                    let level = &mut self.levels[lvl];
                    level.pos[q] = level.orbit.len() as u32;
                    level.orbit.push(q as u8);
                    level.reps.push(rep);
                    level.rep_invs.push(rep_inv);
                    level.rep_nodes.push(node);
                    level.rep_inv_nodes.push(inv_node);
                    level.tested.push(0);
                }
            }
            k += 1;
        }
    }

    /// Schreier-Sims completion from level `top` downwards.
    fn complete(&mut self, top: usize) {
        let mut i = top.min(self.n.saturating_sub(1)) as isize;
        while i >= 0 {
            let lvl = i as usize;
            match self.failing_schreier_generator(lvl) {
                Some((h, node, drop)) => {
                    self.add_strong(h, node, lvl + 1, drop);
                    i = drop.min(self.n - 1) as isize;
                }
                None => i -= 1,
            }
        }
    }

    fn failing_schreier_generator(&mut self, lvl: usize) -> Option<(Perm, usize, usize)> {
        let mut k = 0;
        while k < self.levels[lvl].len() {
            while self.levels[lvl].tested[k] < self.levels[lvl].gens.len() {
                let gi = self.levels[lvl].tested[k];
                self.levels[lvl].tested[k] += 1;
                let s = self.levels[lvl].gens[gi];
                let level = &self.levels[lvl];
                let p = level.orbit[k] as usize;
                let q = self.strong[s].perm.image(p);
                let qi = level.pos[q] as usize;
                let schreier = level.reps[k].mul(&self.strong[s].perm).mul(&level.rep_invs[qi]);
                if schreier.is_identity() {
                    continue;
                }
                let sifted = self.sift_from(&schreier, lvl + 1);
                if sifted.drop < self.n {
                    let (rk, ss, qinv) = (level.rep_nodes[k], self.strong[s].node, level.rep_inv_nodes[qi]);
                    let a = self.slp.push(SlpNode::Mul(rk, ss));
                    let b = self.slp.push(SlpNode::Mul(a, qinv));
                    let node = self.path_node(b, &sifted.path);
                    return Some((sifted.residue, node, sifted.drop));
                }
            }
            k += 1;
        }
        None
    }

    /// The element with transversal indices `digits` (one per level), formed
    /// as `u_{n-1} * .. * u_0`.
    pub fn element_from_digits(&self, digits: &[usize]) -> Perm {
        let mut g = Perm::identity(self.n);
        for lvl in (0..self.n).rev() {
            let d = digits[lvl];
            if d != 0 {
                g = g.mul(&self.levels[lvl].reps[d]);
            }
        }
        g
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slp_nodes_evaluate_to_reps() {
        let gens = vec![Perm::cycles(5, &[&[1, 2, 3, 4, 5]]), Perm::cycles(5, &[&[1, 2]])];
        let chain = StabChain::from_gens(5, &gens);
        assert_eq!(chain.order(), 120);
        let one = Perm::identity(5);
        let vals = chain.slp().eval_all(&gens, &one, |a, b| a.mul(b), |a| a.inv());
        for level in chain.levels() {
            for idx in 0..level.len() {
                assert_eq!(&vals[level.rep_node(idx)], level.rep(idx));
            }
        }
        for s in &chain.strong {
            assert_eq!(vals[s.node], s.perm);
        }
    }

    #[test]
    fn factorization_reconstructs() {
        let gens = vec![Perm::cycles(6, &[&[1, 2, 3]]), Perm::cycles(6, &[&[2, 3, 4, 5, 6]])];
        let chain = StabChain::from_gens(6, &gens);
        assert_eq!(chain.order(), 360);
        let g = Perm::cycles(6, &[&[1, 4], &[2, 6]]);
        let word = chain.factor(&g).unwrap();
        let prod = word
            .iter()
            .fold(Perm::identity(6), |acc, &(l, i)| acc.mul(chain.levels()[l].rep(i)));
        assert_eq!(prod, g);
        assert!(chain.factor(&Perm::cycles(6, &[&[1, 2]])).is_none());
    }
}
