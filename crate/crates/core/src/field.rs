//! The fields GF(2^k) for 1 <= k <= 4.
//!
//! Each degree has one fixed modulus so that serialized data is identical
//! across runs and implementations:
//!
//! | k | modulus       |
//! |---|---------------|
//! | 1 | x + 1         |
//! | 2 | x^2 + x + 1   |
//! | 3 | x^3 + x + 1   |
//! | 4 | x^4 + x + 1   |
//!
//! All four moduli are primitive, so the class of `x` generates the
//! multiplicative group when k >= 2.

use std::fmt;

use crate::error::{Error, Result};

pub const MAX_DEGREE: u8 = 4;

const MODULI: [u8; 5] = [0, 0b11, 0b111, 0b1011, 0b10011];

struct Tables {
    exp: [u8; 32],
    log: [u8; 16],
}

const fn build_tables(k: usize) -> Tables {
    let mut exp = [0u8; 32];
    let mut log = [0u8; 16];
    if k == 0 {
        return Tables { exp, log };
    }
    let q = 1usize << k;
    let units = q - 1;
    let modulus = MODULI[k] as usize;
    let mut x = 1usize;
    let mut i = 0;
    while i < units {
        exp[i] = x as u8;
        exp[i + units] = x as u8;
        log[x] = i as u8;
        if k == 1 {
            x = 1;
        } else {
            x <<= 1;
            if x & q != 0 {
                x ^= modulus;
            }
        }
        i += 1;
    }
    Tables { exp, log }
}

static TABLES: [Tables; 5] = [
    build_tables(0),
    build_tables(1),
    build_tables(2),
    build_tables(3),
    build_tables(4),
];

/// A field element, stored as its coefficient vector over GF(2).
///
/// Elements carry no reference to their field; arithmetic goes through
/// [`Field`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elem(u8);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    pub fn value(self) -> u8 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub(crate) fn from_raw(v: u8) -> Elem {
        Elem(v)
    }

    pub fn to_hex(self) -> char {
        char::from_digit(self.0 as u32, 16).expect("element values are below 16")
    }
}

/// The finite field GF(2^k).
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Field {
    degree: u8,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.order())
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.order())
    }
}

impl Field {
    pub const GF2: Field = Field { degree: 1 };
    pub const GF4: Field = Field { degree: 2 };

    pub fn new(degree: u8) -> Result<Field> {
        if (1..=MAX_DEGREE).contains(&degree) {
            Ok(Field { degree })
        } else {
            Err(Error::Config(format!(
                "field degree must lie in 1..={MAX_DEGREE}, got {degree}"
            )))
        }
    }

    pub fn degree(self) -> u8 {
        self.degree
    }

    pub fn order(self) -> usize {
        1 << self.degree
    }

    /// The modulus as a bit vector, including the leading term.
    pub fn modulus(self) -> u8 {
        MODULI[self.degree as usize]
    }

    /// The generator of the multiplicative group used by the log tables.
    pub fn generator(self) -> Elem {
        Elem(TABLES[self.degree as usize].exp[1])
    }

    /// The exponent table: `antilog()[i]` is the generator raised to `i`.
    pub fn antilog(self) -> &'static [u8] {
        &TABLES[self.degree as usize].exp[..self.order() - 1]
    }

    pub fn elem(self, value: u8) -> Result<Elem> {
        if (value as usize) < self.order() {
            Ok(Elem(value))
        } else {
            Err(Error::Domain(format!("{value} is not an element of {self}")))
        }
    }

    pub fn elements(self) -> impl Iterator<Item = Elem> {
        (0..self.order() as u8).map(Elem)
    }

    pub fn add(self, a: Elem, b: Elem) -> Elem {
        Elem(a.0 ^ b.0)
    }

    pub fn mul(self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 || b.0 == 0 {
            return Elem::ZERO;
        }
        if self.degree == 1 {
            return Elem::ONE;
        }
        let t = &TABLES[self.degree as usize];
        Elem(t.exp[t.log[a.0 as usize] as usize + t.log[b.0 as usize] as usize])
    }

    pub fn inv(self, a: Elem) -> Result<Elem> {
        if a.0 == 0 {
            return Err(Error::Domain("inverse of zero".into()));
        }
        Ok(self.inv_nonzero(a))
    }

    pub(crate) fn inv_nonzero(self, a: Elem) -> Elem {
        debug_assert!(a.0 != 0);
        if self.degree == 1 {
            return Elem::ONE;
        }
        let t = &TABLES[self.degree as usize];
        let units = self.order() - 1;
        Elem(t.exp[(units - t.log[a.0 as usize] as usize) % units])
    }

    pub fn div(self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return Elem::ONE;
        }
        if a.0 == 0 {
            return Elem::ZERO;
        }
        if self.degree == 1 {
            return Elem::ONE;
        }
        let t = &TABLES[self.degree as usize];
        let units = (self.order() - 1) as u64;
        let l = (t.log[a.0 as usize] as u64 * (e % units)) % units;
        Elem(t.exp[l as usize])
    }

    /// The inverse of the Frobenius map x -> x^2.
    pub fn sqrt(self, a: Elem) -> Elem {
        self.pow(a, 1 << (self.degree - 1))
    }

    /// Embeds `x` into `dst`, sending the generator of `self` to the
    /// `(|dst|-1)/(|self|-1)`-th power of the generator of `dst`.
    pub fn embed(self, x: Elem, dst: Field) -> Result<Elem> {
        if !dst.degree.is_multiple_of(self.degree) {
            return Err(Error::Config(format!("{self} does not embed into {dst}")));
        }
        if x.0 as usize >= self.order() {
            return Err(Error::Domain(format!("{} is not an element of {self}", x.0)));
        }
        if x.0 == 0 {
            return Ok(Elem::ZERO);
        }
        let step = (dst.order() - 1) / (self.order() - 1);
        let l = if self.degree == 1 {
            0
        } else {
            TABLES[self.degree as usize].log[x.0 as usize] as u64
        };
        Ok(dst.pow(dst.generator(), l * step as u64))
    }

    pub fn parse_elem(self, c: char) -> Result<Elem> {
        let v = c
            .to_digit(16)
            .ok_or_else(|| Error::Parse(format!("'{c}' is not a hex digit")))?;
        self.elem(v as u8)
            .map_err(|_| Error::Parse(format!("'{c}' is not an element of {self}")))
    }

    /// True when the word-parallel kernels apply (entries never straddle words).
    pub(crate) fn word_aligned(self) -> bool {
        self.degree != 3
    }

    /// Multiplies every k-bit slot of `w` by `x`. Only valid for aligned degrees.
    #[inline]
    fn mulx_word(self, w: u64) -> u64 {
        let k = self.degree as u32;
        let (top, low) = match k {
            1 => return w,
            2 => (0xAAAA_AAAA_AAAA_AAAAu64, 0b11u64),
            4 => (0x8888_8888_8888_8888u64, 0b0011u64),
            _ => unreachable!("mulx_word needs an aligned degree"),
        };
        ((w & !top) << 1) ^ (((w & top) >> (k - 1)).wrapping_mul(low))
    }

    /// Multiplies every packed entry of `w` by `c`. Only valid for aligned degrees.
    #[inline]
    pub(crate) fn scale_word(self, w: u64, c: Elem) -> u64 {
        match c.0 {
            0 => 0,
            1 => w,
            _ => {
                let mut acc = 0;
                let mut p = w;
                let mut bits = c.0;
                while bits != 0 {
                    if bits & 1 != 0 {
                        acc ^= p;
                    }
                    bits >>= 1;
                    if bits != 0 {
                        p = self.mulx_word(p);
                    }
                }
                acc
            }
        }
    }
}
