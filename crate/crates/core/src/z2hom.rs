//! Homomorphisms onto Z/2.
//!
//! A map on generators extends to a homomorphism iff every relator has even
//! weighted exponent sum, so the homomorphisms are the nullspace of the mod-2
//! exponent matrix.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::group::{Generator, Presentation};

/// Hard cap on the number of enumerated epimorphisms.
pub const MAX_SOLUTIONS: u64 = 1 << 20;

/// Bit-packed matrix over GF(2).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gf2Matrix {
    rows: usize,
    cols: usize,
    words_per_row: usize,
    data: Vec<u64>,
}

impl Gf2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words_per_row = cols.div_ceil(64);
        Gf2Matrix {
            rows,
            cols,
            words_per_row,
            data: vec![0; rows * words_per_row],
        }
    }

    pub fn from_rows(rows: &[Vec<u8>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Gf2Matrix::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            for (j, &bit) in row.iter().enumerate() {
                m.set(i, j, bit & 1 == 1);
            }
        }
        m
    }

    /// Entry `(r, g)` is the exponent sum of generator `g` in relator `r`, mod 2.
    pub fn from_presentation(p: &Presentation) -> Self {
        let mut m = Gf2Matrix::zeros(p.relators().len(), p.generators().len());
        for (i, r) in p.relators().iter().enumerate() {
            for (j, g) in p.generators().iter().enumerate() {
                m.set(i, j, r.exponent_sum(*g).rem_euclid(2) == 1);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.data[i * self.words_per_row + j / 64] >> (j % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, bit: bool) {
        let w = &mut self.data[i * self.words_per_row + j / 64];
        if bit {
            *w |= 1 << (j % 64);
        } else {
            *w &= !(1 << (j % 64));
        }
    }

    pub fn row_bits(&self, i: usize) -> Vec<u8> {
        (0..self.cols).map(|j| u8::from(self.get(i, j))).collect()
    }

    fn xor_row(&mut self, dst: usize, src: usize) {
        let w = self.words_per_row;
        for k in 0..w {
            let v = self.data[src * w + k];
            self.data[dst * w + k] ^= v;
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        let w = self.words_per_row;
        for k in 0..w {
            self.data.swap(a * w + k, b * w + k);
        }
    }

    /// Reduced row echelon form in place; returns pivot columns in order.
    fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| self.get(i, c)) else {
                continue;
            };
            self.swap_rows(r, p);
            for i in 0..self.rows {
                if i != r && self.get(i, c) {
                    self.xor_row(i, r);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of `{x : Mx = 0}`: one vector per free column, in column order.
    pub fn nullspace(&self) -> Vec<Vec<u8>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut x = vec![0u8; self.cols];
                x[f] = 1;
                for (row, &c) in pivots.iter().enumerate() {
                    x[c] = u8::from(m.get(row, f));
                }
                x
            })
            .collect()
    }
}

pub fn constraint_matrix(p: &Presentation) -> Gf2Matrix {
    Gf2Matrix::from_presentation(p)
}

pub fn gf2_nullspace(m: &Gf2Matrix) -> Vec<Vec<u8>> {
    m.nullspace()
}

/// A 0/1 value on each generator of a presentation, in generator order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Z2Hom {
    generators: Vec<Generator>,
    bits: Vec<u8>,
}

impl Z2Hom {
    pub fn new(generators: Vec<Generator>, bits: Vec<u8>) -> Result<Self, Error> {
        if generators.len() != bits.len() {
            return Err(Error::HomomorphismShape);
        }
        if let Some(b) = bits.iter().find(|b| **b > 1) {
            return Err(Error::InvalidBit {
                generator: "?".into(),
                value: b.to_string(),
            });
        }
        Ok(Z2Hom { generators, bits })
    }

    pub fn zero(generators: Vec<Generator>) -> Self {
        let bits = vec![0; generators.len()];
        Z2Hom { generators, bits }
    }

    /// Sends exactly the listed generators to 1.
    pub fn with_ones(generators: Vec<Generator>, ones: &[Generator]) -> Result<Self, Error> {
        let mut phi = Z2Hom::zero(generators);
        for g in ones {
            phi.set(*g, 1)?;
        }
        Ok(phi)
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    /// Value on `g`; generators outside the domain map to 0.
    pub fn value(&self, g: Generator) -> u8 {
        self.generators
            .iter()
            .position(|x| *x == g)
            .map_or(0, |i| self.bits[i])
    }

    pub fn set(&mut self, g: Generator, bit: u8) -> Result<(), Error> {
        if bit > 1 {
            return Err(Error::InvalidBit {
                generator: g.to_string(),
                value: bit.to_string(),
            });
        }
        let i = self
            .generators
            .iter()
            .position(|x| *x == g)
            .ok_or_else(|| Error::UnknownGenerator(g.to_string()))?;
        self.bits[i] = bit;
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.bits.iter().all(|b| *b == 0)
    }

    pub fn ones(&self) -> impl Iterator<Item = Generator> + '_ {
        self.generators
            .iter()
            .zip(&self.bits)
            .filter(|(_, b)| **b == 1)
            .map(|(g, _)| *g)
    }

    /// Parses `gen=bit,...`; unlisted generators default to 0.
    pub fn parse(text: &str, p: &Presentation) -> Result<Self, Error> {
        let mut phi = Z2Hom::zero(p.generators().to_vec());
        let mut offset = 0;
        for item in text.split(',') {
            let here = offset;
            offset += item.len() + 1;
            let item = item.trim();
            if item.is_empty() {
                continue;
            }
            let (name, value) = item.split_once('=').ok_or_else(|| Error::Syntax {
                position: here,
                message: format!("expected `gen=bit`, found `{item}`"),
            })?;
            let (name, value) = (name.trim(), value.trim());
            let g: Generator = name
                .parse()
                .map_err(|_| Error::UnknownGenerator(name.to_string()))?;
            if p.position(g).is_none() {
                return Err(Error::UnknownGenerator(name.to_string()));
            }
            let bit = match value {
                "0" => 0,
                "1" => 1,
                _ => {
                    return Err(Error::InvalidBit {
                        generator: name.to_string(),
                        value: value.to_string(),
                    })
                }
            };
            phi.set(g, bit)?;
        }
        Ok(phi)
    }
}

impl fmt::Display for Z2Hom {
    /// Every generator in order, e.g. `s1=1,s2=1,h=1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (g, b)) in self.generators.iter().zip(&self.bits).enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{g}={b}")?;
        }
        Ok(())
    }
}

impl Serialize for Z2Hom {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[derive(Deserialize)]
struct RawHom(String);

impl<'de> Deserialize<'de> for Z2Hom {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let RawHom(text) = RawHom::deserialize(deserializer)?;
        let mut generators = Vec::new();
        let mut bits = Vec::new();
        for item in text.split(',').filter(|s| !s.trim().is_empty()) {
            let (g, b) = item
                .split_once('=')
                .ok_or_else(|| serde::de::Error::custom("expected gen=bit"))?;
            generators.push(g.trim().parse().map_err(serde::de::Error::custom)?);
            bits.push(b.trim().parse().map_err(serde::de::Error::custom)?);
        }
        Z2Hom::new(generators, bits).map_err(serde::de::Error::custom)
    }
}

/// Every relator has even weighted exponent sum and `φ` is not zero.
pub fn is_valid(p: &Presentation, phi: &Z2Hom) -> bool {
    if phi.generators() != p.generators() || phi.is_zero() {
        return false;
    }
    p.relators().iter().all(|r| {
        let weight: i64 = r
            .syllables()
            .iter()
            .map(|s| s.exponent * i64::from(phi.value(s.generator)))
            .sum();
        weight.rem_euclid(2) == 0
    })
}

/// Typed form of [`is_valid`].
pub fn check_epimorphism(p: &Presentation, phi: &Z2Hom) -> Result<(), Error> {
    if phi.generators() != p.generators() {
        return Err(Error::HomomorphismShape);
    }
    if phi.is_zero() {
        return Err(Error::NotEpimorphism("the zero map is not onto".into()));
    }
    if !is_valid(p, phi) {
        return Err(Error::NotEpimorphism(format!(
            "`{phi}` does not kill every relator"
        )));
    }
    Ok(())
}

/// All `2^d - 1` epimorphisms, sorted lexicographically by their bit vectors
/// in generator order.
pub fn enumerate_epimorphisms(p: &Presentation) -> Result<Vec<Z2Hom>, Error> {
    let basis = constraint_matrix(p).nullspace();
    let d = basis.len() as u32;
    if d > 20 {
        return Err(Error::TooLarge {
            what: "number of Z/2 epimorphisms",
            value: (1u64 << d.min(63)) - 1,
            limit: MAX_SOLUTIONS,
        });
    }
    let n = p.generators().len();
    let mut out: Vec<Vec<u8>> = (1u64..1 << d)
        .map(|mask| {
            let mut x = vec![0u8; n];
            for (i, b) in basis.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    for (xi, bi) in x.iter_mut().zip(b) {
                        *xi ^= bi;
                    }
                }
            }
            x
        })
        .collect();
    out.sort();
    Ok(out
        .into_iter()
        .map(|bits| Z2Hom {
            generators: p.generators().to_vec(),
            bits,
        })
        .collect())
}
