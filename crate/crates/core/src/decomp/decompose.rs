use crate::error::{Error, Result};
use crate::field::{Field, MAX_DEGREE};
use crate::gmod::GModule;
use crate::linalg::{Matrix, SpanSolver, Subspace};

use super::locality::{is_indecomposable_with, LocalityCertificate, DEFAULT_ENUMERATION_LIMIT};

/// Knobs for [`decompose`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DecompOptions {
    pub seed: u64,
    /// Whether a summand with residue degree above 1 triggers a scalar extension.
    pub allow_escalation: bool,
    pub enumeration_limit: u64,
}

impl Default for DecompOptions {
    fn default() -> DecompOptions {
        DecompOptions { seed: 0, allow_escalation: true, enumeration_limit: DEFAULT_ENUMERATION_LIMIT }
    }
}

/// `V = ⊕ W_i` with `ι_i : W_i -> V` and `π_i : V -> W_i` as matrices acting on rows.
#[derive(Clone, Debug)]
pub struct DecompositionResult {
    pub summands: Vec<GModule>,
    /// `dim W_i x dim V`.
    pub inclusions: Vec<Matrix>,
    /// `dim V x dim W_i`.
    pub projections: Vec<Matrix>,
    /// Residue degree of each summand's endomorphism algebra over `field_used`.
    pub residue_degrees: Vec<usize>,
    pub field_used: Field,
    pub escalated: bool,
    /// The module over `field_used` that was decomposed.
    pub module: GModule,
}

impl DecompositionResult {
    pub fn dims(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.summands.iter().map(GModule::dim).collect();
        d.sort_unstable();
        d
    }

    /// Whether every summand is absolutely indecomposable.
    pub fn is_absolute(&self) -> bool {
        self.residue_degrees.iter().all(|&r| r == 1)
    }

    /// Replays `Σ π_i ι_i = 1`, `ι_i π_j = δ_ij`, and the intertwining of
    /// every inclusion and projection.
    pub fn replay(&self) -> bool {
        let f = self.field_used;
        let d = self.module.dim();
        let mut total = Matrix::zeros(f, d, d);
        for (i, (inc, proj)) in self.inclusions.iter().zip(&self.projections).enumerate() {
            total.add_assign(&proj.mul(inc));
            for (j, other) in self.projections.iter().enumerate() {
                let p = inc.mul(other);
                let ok = if i == j { p.is_identity() } else { p.is_zero() };
                if !ok {
                    return false;
                }
            }
            let w = &self.summands[i];
            for (a, c) in self.module.actions().iter().zip(w.actions()) {
                if c.mul(inc) != inc.mul(a) || a.mul(proj) != proj.mul(c) {
                    return false;
                }
            }
        }
        total.is_identity()
    }
}

/// A basis of the image `V e` and the matrix sending `v` to the coordinates of `v e`.
fn image_pair(e: &Matrix) -> (Matrix, Matrix) {
    let sub = Subspace::from_rows(e);
    let basis = sub.basis().clone();
    let solver = SpanSolver::new(&basis);
    let f = e.field();
    let mut proj = Matrix::zeros(f, e.rows(), basis.rows());
    for r in 0..e.rows() {
        let x = solver.solve(&e.row(r)).expect("row of e lies in its image");
        for (c, v) in x.into_iter().enumerate() {
            proj.set(r, c, v);
        }
    }
    (basis, proj)
}

struct Piece {
    module: GModule,
    inclusion: Matrix,
    projection: Matrix,
    residue: usize,
}

fn split(v: &GModule, options: &DecompOptions, out: &mut Vec<Piece>, inc: Matrix, proj: Matrix) -> Result<()> {
    match is_indecomposable_with(v, options.seed, options.enumeration_limit)? {
        LocalityCertificate::Local { residue_degree } => {
            out.push(Piece { module: v.clone(), inclusion: inc, projection: proj, residue: residue_degree });
            Ok(())
        }
        LocalityCertificate::Splits { idempotent } => {
            let id = Matrix::identity(v.field(), v.dim());
            for e in [idempotent.clone(), id.add(&idempotent)] {
                let (basis, p) = image_pair(&e);
                let w = v.submodule(&basis)?.with_label(v.label());
                split(&w, options, out, basis.mul(&inc), proj.mul(&p))?;
            }
            Ok(())
        }
        LocalityCertificate::Unknown { reason } => Err(Error::Inconclusive(format!(
            "locality of a {}-dimensional summand of {}: {reason}",
            v.dim(),
            v.label()
        ))),
    }
}

fn decompose_over(v: &GModule, options: &DecompOptions) -> Result<Vec<Piece>> {
    let mut pieces = Vec::new();
    let id = Matrix::identity(v.field(), v.dim());
    if v.dim() > 0 {
        split(v, options, &mut pieces, id.clone(), id)?;
    }
    Ok(pieces)
}

/// Splits `V` into indecomposable summands, extending scalars until every
/// summand is absolutely indecomposable when escalation is allowed.
pub fn decompose(v: &GModule, options: &DecompOptions) -> Result<DecompositionResult> {
    let mut module = v.clone();
    let mut escalated = false;
    loop {
        let pieces = decompose_over(&module, options)?;
        let k = module.field().degree() as usize;
        let target = pieces.iter().map(|p| p.residue * k).fold(k, lcm);
        if target == k || !options.allow_escalation {
            let field_used = module.field();
            let mut result = DecompositionResult {
                summands: Vec::new(),
                inclusions: Vec::new(),
                projections: Vec::new(),
                residue_degrees: Vec::new(),
                field_used,
                escalated,
                module,
            };
            for p in pieces {
                result.summands.push(p.module);
                result.inclusions.push(p.inclusion);
                result.projections.push(p.projection);
                result.residue_degrees.push(p.residue);
            }
            return Ok(result);
        }
        if target > MAX_DEGREE as usize {
            return Err(Error::Inconclusive(format!(
                "absolute decomposition needs GF(2^{target}), beyond the supported fields"
            )));
        }
        module = module.extend_scalars(Field::new(target as u8)?)?;
        escalated = true;
    }
}

fn lcm(a: usize, b: usize) -> usize {
    let (mut x, mut y) = (a, b);
    while y != 0 {
        (x, y) = (y, x % y);
    }
    a / x * b
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::perm::{Perm, PermGroup};

    #[test]
    fn cyclic_three_over_two_and_four() {
        let c3 = Arc::new(PermGroup::new(3, vec![Perm::cycles(3, &[&[1, 2, 3]])]).unwrap());
        let reg = GModule::regular(c3, Field::GF2, 8).unwrap();
        let fixed = DecompOptions { allow_escalation: false, ..DecompOptions::default() };
        let d = decompose(&reg, &fixed).unwrap();
        assert_eq!(d.dims(), vec![1, 2]);
        assert!(!d.is_absolute());
        assert!(d.replay());
        let d = decompose(&reg, &DecompOptions::default()).unwrap();
        assert_eq!(d.dims(), vec![1, 1, 1]);
        assert!(d.escalated);
        assert_eq!(d.field_used, Field::GF4);
        assert!(d.replay());
    }
}
