use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::field::{Elem, Field};

use super::matrix::Matrix;
use super::subspace::Echelon;

/// A univariate polynomial over GF(2^k), coefficients lowest degree first.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    field: Field,
    coeffs: Vec<Elem>,
}

impl Poly {
    pub fn new(field: Field, mut coeffs: Vec<Elem>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn from_values(field: Field, values: &[u8]) -> Poly {
        Poly::new(field, values.iter().map(|&v| field.elem(v).expect("coefficient outside field")).collect())
    }

    pub fn zero(field: Field) -> Poly {
        Poly { field, coeffs: Vec::new() }
    }

    pub fn one(field: Field) -> Poly {
        Poly::constant(field, Elem::ONE)
    }

    pub fn constant(field: Field, c: Elem) -> Poly {
        Poly::new(field, vec![c])
    }

    pub fn x(field: Field) -> Poly {
        Poly::new(field, vec![Elem::ZERO, Elem::ONE])
    }

    /// `x - a`.
    pub fn linear(field: Field, a: Elem) -> Poly {
        Poly::new(field, vec![a, Elem::ONE])
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(Elem::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [Elem::ONE]
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Elem {
        self.coeffs.last().copied().unwrap_or(Elem::ZERO)
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.field.inv_nonzero(self.lead());
        self.scale(inv)
    }

    pub fn scale(&self, c: Elem) -> Poly {
        let f = self.field;
        Poly::new(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let f = self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new(f, (0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.field);
        }
        let f = self.field;
        let mut out = vec![Elem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Poly::new(f, out)
    }

    pub fn pow(&self, e: usize) -> Poly {
        (0..e).fold(Poly::one(self.field), |acc, _| acc.mul(self))
    }

    /// Quotient and remainder. Panics on division by zero.
    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        let f = self.field;
        let dd = d.degree().expect("division by the zero polynomial");
        let inv = f.inv_nonzero(d.lead());
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(f), self.clone());
        }
        let mut quot = vec![Elem::ZERO; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = f.mul(rem[i], inv);
            if c.is_zero() {
                continue;
            }
            quot[i - dd] = c;
            for (j, &b) in d.coeffs.iter().enumerate() {
                rem[i - dd + j] = f.add(rem[i - dd + j], f.mul(c, b));
            }
        }
        (Poly::new(f, quot), Poly::new(f, rem))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.divrem(d).1
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn lcm(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.field);
        }
        let g = self.gcd(other);
        self.mul(other).divrem(&g).0.monic()
    }

    /// Extended gcd: returns `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &Poly) -> (Poly, Poly, Poly) {
        let f = self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(f), Poly::zero(f));
        let (mut t0, mut t1) = (Poly::zero(f), Poly::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.add(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.add(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = f.inv_nonzero(r0.lead());
        (r0.scale(inv), s0.scale(inv), t0.scale(inv))
    }

    pub fn derivative(&self) -> Poly {
        let f = self.field;
        Poly::new(
            f,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| if i % 2 == 1 { c } else { Elem::ZERO })
                .collect(),
        )
    }

    pub fn eval(&self, x: Elem) -> Elem {
        let f = self.field;
        self.coeffs.iter().rev().fold(Elem::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// Evaluates at a square matrix by Horner's rule.
    pub fn eval_matrix(&self, a: &Matrix) -> Matrix {
        let n = a.rows();
        let f = self.field;
        let mut acc = Matrix::zeros(f, n, n);
        for &c in self.coeffs.iter().rev() {
            acc = acc.mul(a);
            if !c.is_zero() {
                acc.axpy(c, &Matrix::identity(f, n));
            }
        }
        acc
    }

    /// `self^e mod m` for possibly huge `e`, given as repeated squaring steps.
    fn powmod(&self, mut e: u128, m: &Poly) -> Poly {
        let mut base = self.rem(m);
        let mut acc = Poly::one(self.field).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).rem(m);
            }
        }
        acc
    }

    /// The polynomial whose square is `self`; requires all odd coefficients zero.
    fn sqrt(&self) -> Poly {
        let f = self.field;
        debug_assert!(self.derivative().is_zero());
        Poly::new(f, self.coeffs.iter().step_by(2).map(|&c| f.sqrt(c)).collect())
    }

    /// Whether `self` is irreducible, by distinct-degree factorization.
    pub fn is_irreducible(&self) -> bool {
        match self.degree() {
            None | Some(0) => false,
            Some(1) => true,
            Some(_) => {
                let fac = factor_poly(self);
                fac.len() == 1 && fac[0].1 == 1
            }
        }
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let show_c = *c != Elem::ONE || i == 0;
            if show_c {
                write!(f, "{}", c.to_hex())?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

/// Minimal polynomial of a square matrix, as the lcm of the minimal
/// polynomials of vectors whose cyclic subspaces exhaust the space.
pub fn min_poly(a: &Matrix) -> Poly {
    assert!(a.is_square(), "minimal polynomial of a non-square matrix");
    let f = a.field();
    let n = a.rows();
    let mut mp = Poly::one(f);
    let mut covered = Echelon::new(f, n);
    let id = Matrix::identity(f, n);
    for i in 0..n {
        if covered.dim() == n {
            break;
        }
        if covered.contains(&id, i) {
            continue;
        }
        let (mu, krylov) = vector_min_poly(&id.row(i), a);
        for r in 0..krylov.rows() {
            covered.insert(&krylov, r);
        }
        mp = mp.lcm(&mu);
    }
    mp
}

/// Minimal polynomial of `v` relative to `a`, with the Krylov vectors used.
fn vector_min_poly(v: &Matrix, a: &Matrix) -> (Poly, Matrix) {
    let f = a.field();
    let n = a.cols();
    // rows are [v a^d | e_d]; the tag block records each row as a combination of powers
    let width = 2 * n + 1;
    let mut ech = Echelon::new(f, width);
    let mut krylov = Matrix::zeros(f, 0, n);
    let mut cur = v.clone();
    for d in 0..=n {
        let mut tagged = Matrix::zeros(f, 1, width);
        for j in 0..n {
            tagged.set(0, j, cur.get(0, j));
        }
        tagged.set(0, n + d, Elem::ONE);
        let mut words = tagged.row_words(0).to_vec();
        ech.reduce_words(&mut words);
        let mut reduced = Matrix::zeros(f, 0, width);
        reduced.push_row_words(&words);
        if (0..n).all(|j| reduced.get(0, j).is_zero()) {
            let coeffs = (0..=d).map(|i| reduced.get(0, n + i)).collect();
            return (Poly::new(f, coeffs).monic(), krylov);
        }
        ech.insert_words(words);
        krylov.push_row_words(cur.row_words(0));
        cur = cur.mul(a);
    }
    unreachable!("more than n independent Krylov vectors")
}

/// Factors a nonzero polynomial into monic irreducibles with multiplicities,
/// sorted by degree then coefficients. The leading coefficient is dropped.
pub fn factor_poly(p: &Poly) -> Vec<(Poly, usize)> {
    assert!(!p.is_zero(), "factorization of the zero polynomial");
    let f = p.field();
    let monic = p.monic();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_f00d ^ monic.coeffs.len() as u64);
    let mut out: Vec<(Poly, usize)> = Vec::new();
    for (sqf, mult) in squarefree(&monic) {
        for (part, d) in distinct_degree(&sqf) {
            for irr in equal_degree(&part, d, &mut rng) {
                match out.iter_mut().find(|(q, _)| *q == irr) {
                    Some((_, m)) => *m += mult,
                    None => out.push((irr, mult)),
                }
            }
        }
    }
    out.sort_by(|(a, _), (b, _)| {
        a.degree().cmp(&b.degree()).then_with(|| {
            let av: Vec<u8> = a.coeffs.iter().map(|c| c.value()).collect();
            let bv: Vec<u8> = b.coeffs.iter().map(|c| c.value()).collect();
            av.cmp(&bv)
        })
    });
    let recon = out.iter().fold(Poly::one(f), |acc, (q, m)| acc.mul(&q.pow(*m)));
    assert_eq!(recon, monic, "factorization failed the re-multiplication check");
    out
}

/// Square-free decomposition: pairs `(g, m)` with `p = prod g^m`, each `g` square-free.
fn squarefree(p: &Poly) -> Vec<(Poly, usize)> {
    let f = p.field();
    let mut out = Vec::new();
    if p.degree().unwrap_or(0) == 0 {
        return out;
    }
    let dp = p.derivative();
    if dp.is_zero() {
        for (g, m) in squarefree(&p.sqrt()) {
            out.push((g, 2 * m));
        }
        return out;
    }
    let mut c = p.gcd(&dp);
    let mut w = p.divrem(&c).0;
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c);
        let fac = w.divrem(&y).0;
        if !fac.is_one() {
            out.push((fac.monic(), i));
        }
        i += 1;
        w = y;
        c = c.divrem(&w).0;
    }
    if !c.monic().is_one() {
        for (g, m) in squarefree(&c.monic().sqrt()) {
            out.push((g, 2 * m));
        }
    }
    let _ = f;
    out
}

/// Splits a square-free polynomial into products of irreducibles of equal degree.
fn distinct_degree(p: &Poly) -> Vec<(Poly, usize)> {
    let f = p.field();
    let q = f.order() as u128;
    let mut out = Vec::new();
    let mut rest = p.clone();
    let x = Poly::x(f);
    let mut h = x.clone();
    let mut d = 0;
    while rest.degree().unwrap_or(0) >= 2 * (d + 1) {
        d += 1;
        h = h.powmod(q, &rest);
        let g = h.add(&x).gcd(&rest);
        if !g.is_one() {
            rest = rest.divrem(&g).0;
            h = h.rem(&rest);
            out.push((g, d));
        }
    }
    if rest.degree().unwrap_or(0) > 0 {
        let deg = rest.degree().unwrap();
        out.push((rest.monic(), deg));
    }
    out
}

/// Cantor-Zassenhaus splitting using the absolute trace to GF(2).
fn equal_degree(p: &Poly, d: usize, rng: &mut ChaCha8Rng) -> Vec<Poly> {
    let deg = p.degree().unwrap_or(0);
    if deg == d {
        return vec![p.monic()];
    }
    let f = p.field();
    let trace_len = d * f.degree() as usize;
    loop {
        let a = Poly::new(f, (0..deg).map(|_| Elem::from_raw(rng.gen_range(0..f.order() as u8))).collect());
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let mut t = a.rem(p);
        let mut acc = t.clone();
        for _ in 1..trace_len {
            t = t.mul(&t).rem(p);
            acc = acc.add(&t);
        }
        let g = acc.gcd(p);
        let gd = g.degree().unwrap_or(0);
        if gd > 0 && gd < deg {
            let h = p.divrem(&g).0;
            let mut out = equal_degree(&g, d, rng);
            out.extend(equal_degree(&h, d, rng));
            return out;
        }
    }
}
