use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::constructions::{NaturalKind, NaturalModules};
use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::linalg::{Matrix, Subspace};
use crate::perm::{canonical_coset_key, right_transversal, Perm, PermGroup};

/// A right `FG`-module: one invertible matrix per generator of `G`.
pub struct GModule {
    group: Arc<PermGroup>,
    field: Field,
    dim: usize,
    actions: Vec<Matrix>,
    label: String,
    /// Values `(A, A^-1)` of every node of the group chain's straight-line program.
    nodes: OnceLock<Vec<(Matrix, Matrix)>>,
}

impl Clone for GModule {
    fn clone(&self) -> GModule {
        GModule {
            group: Arc::clone(&self.group),
            field: self.field,
            dim: self.dim,
            actions: self.actions.clone(),
            label: self.label.clone(),
            nodes: OnceLock::new(),
        }
    }
}

impl fmt::Debug for GModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GModule({}, dim {}, {} generators, {:?})", self.label, self.dim, self.actions.len(), self.field)
    }
}

impl GModule {
    pub fn new(group: Arc<PermGroup>, field: Field, dim: usize, actions: Vec<Matrix>, label: impl Into<String>) -> Result<GModule> {
        if actions.len() != group.gens().len() {
            return Err(Error::Domain(format!(
                "{} actions for {} generators",
                actions.len(),
                group.gens().len()
            )));
        }
        for a in &actions {
            if a.rows() != dim || a.cols() != dim || a.field() != field {
                return Err(Error::Domain(format!("action is not a {dim}x{dim} matrix over {field:?}")));
            }
            if !a.is_invertible() {
                return Err(Error::Domain("generator action is singular".into()));
            }
        }
        Ok(GModule { group, field, dim, actions, label: label.into(), nodes: OnceLock::new() })
    }

    /// `M`, `M'` or `D` restricted from `S_n` to `group`.
    pub fn natural(group: Arc<PermGroup>, nat: &NaturalModules, kind: NaturalKind, label: impl Into<String>) -> Result<GModule> {
        let actions = group.gens().iter().map(|g| nat.action(kind, g)).collect::<Result<Vec<_>>>()?;
        GModule::new(group, nat.field(), nat.dim(kind), actions, label)
    }

    pub fn trivial(group: Arc<PermGroup>, field: Field) -> GModule {
        let actions = vec![Matrix::identity(field, 1); group.gens().len()];
        GModule { group, field, dim: 1, actions, label: "trivial".into(), nodes: OnceLock::new() }
    }

    /// The regular module, with basis the group elements in chain order.
    pub fn regular(group: Arc<PermGroup>, field: Field, budget: u128) -> Result<GModule> {
        let elements = group.elements(budget)?;
        let index: HashMap<&Perm, usize> = elements.iter().enumerate().map(|(i, g)| (g, i)).collect();
        let actions = group
            .gens()
            .iter()
            .map(|s| {
                let images: Vec<usize> = elements.iter().map(|x| index[&x.mul(s)]).collect();
                Matrix::permutation(field, &images)
            })
            .collect();
        let dim = elements.len();
        Ok(GModule { group, field, dim, actions, label: "regular".into(), nodes: OnceLock::new() })
    }

    /// The permutation module on the cosets `H g`, with basis a right transversal.
    pub fn coset_module(group: Arc<PermGroup>, h: &PermGroup, field: Field, budget: u128) -> Result<GModule> {
        let trivial = GModule::trivial(Arc::new(h.clone()), field);
        let mut m = trivial.induce(group, budget)?;
        m.label = "coset permutation".into();
        Ok(m)
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn group_arc(&self) -> &Arc<PermGroup> {
        &self.group
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn actions(&self) -> &[Matrix] {
        &self.actions
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> GModule {
        self.label = label.into();
        self
    }

    fn node_values(&self) -> &[(Matrix, Matrix)] {
        self.nodes.get_or_init(|| {
            let gens: Vec<(Matrix, Matrix)> = self
                .actions
                .iter()
                .map(|a| (a.clone(), a.inverse().expect("actions are invertible")))
                .collect();
            let one = (Matrix::identity(self.field, self.dim), Matrix::identity(self.field, self.dim));
            self.group.chain().slp().eval_all(
                &gens,
                &one,
                |(a, ai), (b, bi)| (a.mul(b), bi.mul(ai)),
                |(a, ai)| (ai.clone(), a.clone()),
            )
        })
    }

    /// The matrix of an arbitrary group element, via its factorization in the chain.
    pub fn action_of(&self, g: &Perm) -> Result<Matrix> {
        Ok(self.action_pair(g)?.0)
    }

    /// The matrices of `g` and `g^-1`.
    pub fn action_pair(&self, g: &Perm) -> Result<(Matrix, Matrix)> {
        let chain = self.group.chain();
        let word = chain
            .factor(g)
            .ok_or_else(|| Error::Domain(format!("{g} is not in the acting group")))?;
        let nodes = self.node_values();
        let mut a = Matrix::identity(self.field, self.dim);
        let mut ai = Matrix::identity(self.field, self.dim);
        for &(lvl, idx) in &word {
            let (m, mi) = &nodes[chain.levels()[lvl].rep_node(idx)];
            a = a.mul(m);
            ai = mi.mul(&ai);
        }
        Ok((a, ai))
    }

    pub fn restrict(&self, h: &PermGroup) -> Result<GModule> {
        self.restrict_arc(Arc::new(h.clone()))
    }

    pub fn restrict_arc(&self, h: Arc<PermGroup>) -> Result<GModule> {
        if h.degree() != self.group.degree() {
            return Err(Error::Domain("subgroup acts on a different number of points".into()));
        }
        let actions = h.gens().iter().map(|g| self.action_of(g)).collect::<Result<Vec<_>>>()?;
        let label = format!("res({})", self.label);
        Ok(GModule { group: h, field: self.field, dim: self.dim, actions, label, nodes: OnceLock::new() })
    }

    /// `W ⊗_{FH} FG` with blocks indexed by a right transversal of `H` in `G`.
    pub fn induce(&self, g: Arc<PermGroup>, budget: u128) -> Result<GModule> {
        let h = &*self.group;
        let reps = right_transversal(&g, h, budget)?;
        let lookup: HashMap<Vec<u8>, usize> =
            reps.iter().enumerate().map(|(i, t)| (canonical_coset_key(h, t), i)).collect();
        let k = reps.len();
        let d = self.dim;
        let mut actions = Vec::with_capacity(g.gens().len());
        for x in g.gens() {
            let mut m = Matrix::zeros(self.field, k * d, k * d);
            for (i, t) in reps.iter().enumerate() {
                let tx = t.mul(x);
                let j = lookup[&canonical_coset_key(h, &tx)];
                let inner = tx.mul(&reps[j].inv());
                m.set_block(i * d, j * d, &self.action_of(&inner)?);
            }
            actions.push(m);
        }
        let label = format!("ind({})", self.label);
        Ok(GModule { group: g, field: self.field, dim: k * d, actions, label, nodes: OnceLock::new() })
    }

    pub fn extend_scalars(&self, dst: Field) -> Result<GModule> {
        let actions = self.actions.iter().map(|a| a.extend_scalars(dst)).collect::<Result<Vec<_>>>()?;
        Ok(GModule {
            group: Arc::clone(&self.group),
            field: dst,
            dim: self.dim,
            actions,
            label: self.label.clone(),
            nodes: OnceLock::new(),
        })
    }

    /// The same module written in the basis given by the rows of `p`.
    pub fn change_basis(&self, p: &Matrix) -> Result<GModule> {
        let pi = p.inverse().ok_or_else(|| Error::Domain("change of basis is singular".into()))?;
        let actions = self.actions.iter().map(|a| p.mul(a).mul(&pi)).collect();
        Ok(GModule {
            group: Arc::clone(&self.group),
            field: self.field,
            dim: self.dim,
            actions,
            label: self.label.clone(),
            nodes: OnceLock::new(),
        })
    }

    pub fn direct_sum(&self, other: &GModule) -> Result<GModule> {
        if !Arc::ptr_eq(&self.group, &other.group) && self.group.gens() != other.group.gens() {
            return Err(Error::Domain("direct sum of modules for different groups".into()));
        }
        let actions = self
            .actions
            .iter()
            .zip(&other.actions)
            .map(|(a, b)| Matrix::block_diagonal(self.field, &[a.clone(), b.clone()]))
            .collect();
        Ok(GModule {
            group: Arc::clone(&self.group),
            field: self.field,
            dim: self.dim + other.dim,
            actions,
            label: format!("{} + {}", self.label, other.label),
            nodes: OnceLock::new(),
        })
    }

    /// The submodule spanned by the rows of `basis`, which must be invariant
    /// and linearly independent; actions are written in that basis.
    pub fn submodule(&self, basis: &Matrix) -> Result<GModule> {
        if basis.rank() != basis.rows() {
            return Err(Error::Domain("submodule basis is linearly dependent".into()));
        }
        let solver = crate::linalg::SpanSolver::new(basis);
        let mut actions = Vec::with_capacity(self.actions.len());
        for a in &self.actions {
            let moved = basis.mul(a);
            let mut m = Matrix::zeros(self.field, basis.rows(), basis.rows());
            for r in 0..moved.rows() {
                let x = solver
                    .solve(&moved.row(r))
                    .ok_or_else(|| Error::Domain("subspace is not invariant".into()))?;
                for (c, v) in x.into_iter().enumerate() {
                    m.set(r, c, v);
                }
            }
            actions.push(m);
        }
        Ok(GModule {
            group: Arc::clone(&self.group),
            field: self.field,
            dim: basis.rows(),
            actions,
            label: format!("sub({})", self.label),
            nodes: OnceLock::new(),
        })
    }

    /// The quotient by an invariant subspace, on the complement of its pivot columns.
    pub fn quotient(&self, sub: &Subspace) -> Result<GModule> {
        if !sub.is_invariant(&self.actions) {
            return Err(Error::Domain("subspace is not invariant".into()));
        }
        let free: Vec<usize> = (0..self.dim).filter(|c| !sub.pivots().contains(c)).collect();
        let lift = Matrix::from_fn(self.field, free.len(), self.dim, |i, j| {
            if free[i] == j { Elem::ONE } else { Elem::ZERO }
        });
        let actions = self
            .actions
            .iter()
            .map(|a| {
                let moved = lift.mul(a);
                let reduced: Vec<Matrix> = (0..moved.rows()).map(|r| sub.reduce(&moved, r)).collect();
                let stacked = reduced.iter().fold(Matrix::zeros(self.field, 0, self.dim), |acc, r| acc.vstack(r));
                stacked.select_cols(&free)
            })
            .collect();
        Ok(GModule {
            group: Arc::clone(&self.group),
            field: self.field,
            dim: free.len(),
            actions,
            label: format!("quot({})", self.label),
            nodes: OnceLock::new(),
        })
    }

    /// Generator list followed by one matrix per generator in fixture format.
    pub fn to_fixture(&self) -> String {
        let mut out = format!(
            "module {} {} {} {}\n",
            self.group.degree(),
            self.field.degree(),
            self.dim,
            self.actions.len()
        );
        for (g, a) in self.group.gens().iter().zip(&self.actions) {
            out.push_str(&format!("gen {g}\n{a}"));
        }
        out
    }

    pub fn from_fixture(text: &str) -> Result<GModule> {
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| Error::Parse("empty module text".into()))?;
        let tokens: Vec<&str> = header.split_whitespace().collect();
        let ["module", degree, k, dim, count] = tokens[..] else {
            return Err(Error::Parse(format!("bad module header '{header}'")));
        };
        let num = |t: &str| t.parse::<usize>().map_err(|_| Error::Parse(format!("bad number '{t}'")));
        let (degree, k, dim, count) = (num(degree)?, num(k)?, num(dim)?, num(count)?);
        if degree > crate::perm::MAX_DEGREE || dim > 4096 || count > 256 {
            return Err(Error::Parse("module header exceeds limits".into()));
        }
        let field = Field::new(u8::try_from(k).map_err(|_| Error::Parse("bad field degree".into()))?)
            .map_err(|_| Error::Parse(format!("unsupported field degree {k}")))?;
        let mut gens = Vec::with_capacity(count);
        let mut actions = Vec::with_capacity(count);
        for _ in 0..count {
            let gline = lines.next().ok_or_else(|| Error::Parse("missing generator line".into()))?;
            let text = gline
                .strip_prefix("gen ")
                .ok_or_else(|| Error::Parse(format!("expected 'gen', got '{gline}'")))?;
            gens.push(Perm::parse_with_degree(text.trim(), degree)?);
            let mut block = String::new();
            for _ in 0..=dim {
                block.push_str(lines.next().ok_or_else(|| Error::Parse("truncated matrix".into()))?);
                block.push('\n');
            }
            let m: Matrix = block.parse()?;
            if m.field() != field {
                return Err(Error::Parse("matrix field differs from module field".into()));
            }
            actions.push(m);
        }
        if lines.any(|l| !l.trim().is_empty()) {
            return Err(Error::Parse("trailing data after module".into()));
        }
        let group = Arc::new(PermGroup::new(degree, gens)?);
        GModule::new(group, field, dim, actions, "fixture").map_err(|e| Error::Parse(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{natural_modules, sylow_alt_group};

    #[test]
    fn actions_of_elements_match_products() {
        let g = Arc::new(sylow_alt_group(8).unwrap());
        let nat = natural_modules(8, Field::GF2).unwrap();
        let e = GModule::natural(Arc::clone(&g), &nat, NaturalKind::Heart, "E").unwrap();
        for x in g.elements(1000).unwrap() {
            assert_eq!(e.action_of(&x).unwrap(), nat.action(NaturalKind::Heart, &x).unwrap());
            let (a, ai) = e.action_pair(&x).unwrap();
            assert!(a.mul(&ai).is_identity());
        }
        assert!(e.action_of(&Perm::cycles(8, &[&[1, 2]])).is_err());
    }

    #[test]
    fn restriction_is_transitive() {
        let g = Arc::new(PermGroup::alternating(6));
        let nat = natural_modules(6, Field::GF2).unwrap();
        let e = GModule::natural(Arc::clone(&g), &nat, NaturalKind::Heart, "E").unwrap();
        let q = sylow_alt_group(6).unwrap();
        let k = PermGroup::new(6, vec![Perm::cycles(6, &[&[1, 2], &[3, 4]])]).unwrap();
        let via = e.restrict(&q).unwrap().restrict(&k).unwrap();
        let direct = e.restrict(&k).unwrap();
        assert_eq!(via.actions(), direct.actions());
        assert!(e.restrict(&PermGroup::symmetric(6)).is_err());
    }

    #[test]
    fn induction_dimensions() {
        let g = Arc::new(PermGroup::alternating(4));
        let h = PermGroup::new(4, vec![Perm::cycles(4, &[&[1, 2], &[3, 4]])]).unwrap();
        let w = GModule::regular(Arc::new(h), Field::GF2, 100).unwrap();
        let ind = w.induce(Arc::clone(&g), 100).unwrap();
        assert_eq!(ind.dim(), 12);
        for (a, x) in ind.actions().iter().zip(g.gens()) {
            assert_eq!(a.trace(), Elem::ZERO);
            assert!(a.pow(x.order()).is_identity());
        }
    }

    #[test]
    fn fixture_round_trip() {
        let g = Arc::new(sylow_alt_group(6).unwrap());
        let nat = natural_modules(6, Field::GF4).unwrap();
        let e = GModule::natural(g, &nat, NaturalKind::Heart, "E").unwrap();
        let text = e.to_fixture();
        let back = GModule::from_fixture(&text).unwrap();
        assert_eq!(back.actions(), e.actions());
        assert_eq!(back.to_fixture(), text);
        assert!(GModule::from_fixture("module 3 1 1 1\ngen (1,2)\n1 1 1\n1\n").is_ok());
        assert!(GModule::from_fixture("module 3 1 1 1\ngen (1,2)\n1 1 1\n0\n").is_err());
    }

    #[test]
    fn submodules_and_quotients() {
        let g = Arc::new(PermGroup::symmetric(4));
        let nat = natural_modules(4, Field::GF2).unwrap();
        let m = GModule::natural(g, &nat, NaturalKind::Permutation, "M").unwrap();
        let aug = m.submodule(&nat.augmentation_in_permutation()).unwrap();
        assert_eq!(aug.dim(), 3);
        let top = m.quotient(&Subspace::from_rows(&nat.augmentation_in_permutation())).unwrap();
        assert_eq!(top.dim(), 1);
        assert!(top.actions().iter().all(Matrix::is_identity));
    }
}
