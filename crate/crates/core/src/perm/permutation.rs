use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub const MAX_DEGREE: usize = 255;

/// A permutation of `{0, .., n-1}` stored as its image list.
///
/// Products compose left to right: `i^(g*h) = (i^g)^h`. Text forms use
/// 1-based points.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<u8>,
}

impl Perm {
    pub fn identity(n: usize) -> Perm {
        assert!(n <= MAX_DEGREE, "degree {n} exceeds {MAX_DEGREE}");
        Perm { images: (0..n as u8).collect() }
    }

    /// Builds a permutation from 0-based images, checking bijectivity.
    pub fn from_images(images: Vec<u8>) -> Result<Perm> {
        if images.len() > MAX_DEGREE {
            return Err(Error::Parse(format!("degree {} exceeds {MAX_DEGREE}", images.len())));
        }
        let mut seen = vec![false; images.len()];
        for &x in &images {
            let x = x as usize;
            if x >= images.len() || std::mem::replace(&mut seen[x], true) {
                return Err(Error::Parse("image list is not a bijection".into()));
            }
        }
        Ok(Perm { images })
    }

    /// Builds a permutation of degree `n` from 1-based cycles.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Perm> {
        let mut images: Vec<u8> = (0..n as u8).collect();
        let mut touched = vec![false; n];
        for cyc in cycles {
            for (idx, &p) in cyc.iter().enumerate() {
                if p == 0 || p > n {
                    return Err(Error::Parse(format!("point {p} outside 1..={n}")));
                }
                if std::mem::replace(&mut touched[p - 1], true) {
                    return Err(Error::Parse(format!("point {p} repeated in cycles")));
                }
                let q = cyc[(idx + 1) % cyc.len()];
                if q == 0 || q > n {
                    return Err(Error::Parse(format!("point {q} outside 1..={n}")));
                }
                images[p - 1] = (q - 1) as u8;
            }
        }
        Perm::from_images(images)
    }

    /// Shorthand for tests and constructions: panics on malformed cycles.
    pub fn cycles(n: usize, cycles: &[&[usize]]) -> Perm {
        Perm::from_cycles(n, cycles).expect("well-formed cycles")
    }

    /// Parses cycle notation such as `(1,2)(3,4)` or an image list such as
    /// `[2,1,4,3]`, padding to `degree` points.
    pub fn parse_with_degree(text: &str, degree: usize) -> Result<Perm> {
        let p: Perm = text.parse()?;
        if p.degree() > degree {
            return Err(Error::Parse(format!("permutation moves points beyond {degree}")));
        }
        Ok(p.extend(degree))
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn image(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn images(&self) -> &[u8] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// `self` followed by `other`.
    pub fn mul(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm { images: self.images.iter().map(|&x| other.images[x as usize]).collect() }
    }

    pub fn inv(&self) -> Perm {
        let mut images = vec![0u8; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x as usize] = i as u8;
        }
        Perm { images }
    }

    pub fn pow(&self, e: i64) -> Perm {
        let base = if e < 0 { self.inv() } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = Perm::identity(self.degree());
        let mut b = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&b);
            }
            k >>= 1;
            if k > 0 {
                b = b.mul(&b);
            }
        }
        acc
    }

    /// `h^-1 * self * h`.
    pub fn conj(&self, h: &Perm) -> Perm {
        h.inv().mul(self).mul(h)
    }

    /// `[self, h] = self^-1 h^-1 self h`.
    pub fn commutator(&self, h: &Perm) -> Perm {
        self.inv().mul(&h.inv()).mul(self).mul(h)
    }

    /// Nontrivial cycles as 0-based point lists, each starting at its least point.
    pub fn cycle_list(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.image(start) == start {
                seen[start] = true;
                continue;
            }
            let mut cyc = vec![start];
            seen[start] = true;
            let mut p = self.image(start);
            while p != start {
                seen[p] = true;
                cyc.push(p);
                p = self.image(p);
            }
            out.push(cyc);
        }
        out
    }

    /// Lengths of all cycles including fixed points, sorted decreasingly.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycle_list().iter().map(Vec::len).collect();
        let moved: usize = t.iter().sum();
        t.extend(std::iter::repeat_n(1, self.degree() - moved));
        t.sort_unstable_by(|a, b| b.cmp(a));
        t
    }

    pub fn order(&self) -> u64 {
        self.cycle_list().iter().fold(1u64, |acc, c| lcm(acc, c.len() as u64))
    }

    pub fn is_even(&self) -> bool {
        self.cycle_list().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.degree()).filter(|&i| self.image(i) != i).collect()
    }

    /// The same permutation on `n >= degree` points, fixing the new ones.
    pub fn extend(&self, n: usize) -> Perm {
        assert!(n >= self.degree() && n <= MAX_DEGREE);
        let mut images = self.images.clone();
        images.extend(self.degree() as u8..n as u8);
        Perm { images }
    }

    /// Moves the action to points `offset..offset+degree` of a set of size `n`.
    pub fn shift(&self, offset: usize, n: usize) -> Perm {
        assert!(offset + self.degree() <= n);
        let mut images: Vec<u8> = (0..n as u8).collect();
        for (i, &x) in self.images.iter().enumerate() {
            images[offset + i] = (offset + x as usize) as u8;
        }
        Perm { images }
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Cycle notation with 1-based points; the identity prints as `()`.
impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycle_list();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let pts: Vec<String> = c.iter().map(|p| (p + 1).to_string()).collect();
            write!(f, "({})", pts.join(","))?;
        }
        Ok(())
    }
}

impl FromStr for Perm {
    type Err = Error;

    /// Accepts cycle notation `(1,2)(3,4)` (degree = largest point named) or
    /// a 1-based image list `[2,1,3]`.
    fn from_str(text: &str) -> Result<Perm> {
        let t = text.trim();
        if let Some(body) = t.strip_prefix('[') {
            let body = body
                .strip_suffix(']')
                .ok_or_else(|| Error::Parse("image list lacks a closing ']'".into()))?;
            let images: Vec<u8> = body
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|s| {
                    let v: usize = s.parse().map_err(|_| Error::Parse(format!("bad point '{s}'")))?;
                    if v == 0 || v > MAX_DEGREE {
                        return Err(Error::Parse(format!("point {v} out of range")));
                    }
                    Ok((v - 1) as u8)
                })
                .collect::<Result<_>>()?;
            return Perm::from_images(images);
        }
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut rest = t;
        while !rest.is_empty() {
            rest = rest.trim_start();
            let inner = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::Parse(format!("expected '(' in '{text}'")))?;
            let close = inner.find(')').ok_or_else(|| Error::Parse("unclosed cycle".into()))?;
            let body = &inner[..close];
            let pts: Vec<usize> = body
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|s| {
                    let v: usize = s.parse().map_err(|_| Error::Parse(format!("bad point '{s}'")))?;
                    if v == 0 || v > MAX_DEGREE {
                        return Err(Error::Parse(format!("point {v} out of range")));
                    }
                    Ok(v)
                })
                .collect::<Result<_>>()?;
            if !pts.is_empty() {
                cycles.push(pts);
            }
            rest = inner[close + 1..].trim_start();
        }
        let n = cycles.iter().flatten().copied().max().unwrap_or(0);
        let refs: Vec<&[usize]> = cycles.iter().map(Vec::as_slice).collect();
        Perm::from_cycles(n, &refs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_is_left_to_right() {
        let w4 = Perm::cycles(4, &[&[1, 3], &[2, 4]]);
        let w2 = Perm::cycles(4, &[&[1, 2]]);
        assert_eq!(w4.mul(&w2), Perm::cycles(4, &[&[1, 3, 2, 4]]));
        let t = Perm::cycles(2, &[&[1, 2]]);
        assert!(t.mul(&t).is_identity());
    }

    #[test]
    fn conjugation_by_top_generator() {
        let w8 = Perm::cycles(8, &[&[1, 5], &[2, 6], &[3, 7], &[4, 8]]);
        let w2 = Perm::cycles(8, &[&[1, 2]]);
        assert_eq!(w2.conj(&w8), Perm::cycles(8, &[&[5, 6]]));
        assert_eq!(w2.mul(&w2.conj(&w8)), Perm::cycles(8, &[&[1, 2], &[5, 6]]));
    }

    #[test]
    fn parse_and_display() {
        let p: Perm = "(1,2)(3,4)".parse().unwrap();
        assert_eq!(p.degree(), 4);
        assert_eq!(p.to_string(), "(1,2)(3,4)");
        let q: Perm = "[2,1,4,3]".parse().unwrap();
        assert_eq!(p, q);
        assert!("(1,2".parse::<Perm>().is_err());
        assert!("(1,2)(2,3)".parse::<Perm>().is_err());
        assert!("[1,1]".parse::<Perm>().is_err());
        assert!("(0,1)".parse::<Perm>().is_err());
        assert_eq!(Perm::parse_with_degree("()", 3).unwrap(), Perm::identity(3));
    }

    #[test]
    fn order_sign_and_type() {
        let g = Perm::cycles(7, &[&[1, 2, 3], &[4, 5]]);
        assert_eq!(g.order(), 6);
        assert!(!g.is_even());
        assert_eq!(g.cycle_type(), vec![3, 2, 1, 1]);
        assert_eq!(g.pow(6), Perm::identity(7));
        assert_eq!(g.pow(-1), g.inv());
    }
}
