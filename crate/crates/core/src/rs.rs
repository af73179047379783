//! Reidemeister-Schreier rewriting for index-2 subgroups.
//!
//! For an epimorphism `φ: G → Z/2` and a generator `q` with `φ(q) = 1`, the
//! cosets of `ker φ` are represented by `{1, q}`. The Schreier generators are
//! `γ(u, x) = u x rep(u x)^-1`; the one with `u = 1, x = q` is trivial and is
//! dropped. Every relator is rewritten from both cosets.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::group::{Generator, Presentation, Word};
use crate::z2hom::{check_epimorphism, Z2Hom};

/// Largest relator exponent the rewriter will expand letter by letter.
pub const MAX_EXPONENT: i64 = 99;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Coset {
    Identity,
    Q,
}

impl Coset {
    fn from_bit(b: u8) -> Self {
        if b == 0 {
            Coset::Identity
        } else {
            Coset::Q
        }
    }

    fn bit(self) -> u8 {
        match self {
            Coset::Identity => 0,
            Coset::Q => 1,
        }
    }

    fn shift(self, phi_x: u8) -> Self {
        Coset::from_bit(self.bit() ^ phi_x)
    }
}

/// Coset representatives `{1, q}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Transversal {
    q: Generator,
}

impl Transversal {
    pub fn new(phi: &Z2Hom, q: Generator) -> Result<Self, Error> {
        if phi.value(q) != 1 {
            return Err(Error::Precondition(format!(
                "transversal element {q} must map to 1"
            )));
        }
        Ok(Transversal { q })
    }

    /// `h` when `φ(h) = 1`, otherwise the first generator mapped to 1. On a
    /// Seifert presentation this is `s1` after reordering, else the first
    /// `v_j` with `φ(v_j) = 1`.
    pub fn default_for(phi: &Z2Hom) -> Result<Self, Error> {
        if phi.generators().contains(&Generator::h()) && phi.value(Generator::h()) == 1 {
            return Ok(Transversal { q: Generator::h() });
        }
        phi.ones()
            .next()
            .map(|q| Transversal { q })
            .ok_or_else(|| Error::NotEpimorphism("the zero map is not onto".into()))
    }

    /// One transversal per generator mapped to 1.
    pub fn all(phi: &Z2Hom) -> Vec<Transversal> {
        phi.ones().map(|q| Transversal { q }).collect()
    }

    pub fn q(&self) -> Generator {
        self.q
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchreierGenerator {
    pub coset: Coset,
    pub source: Generator,
    pub name: Generator,
    /// `u x rep(u x)^-1` as a word in the original generators.
    pub expression: Word,
}

/// Kernel generator name: `s_k → y_k`, `v_j → x_j`, `h → z`, anything else
/// `→ g_i` with `i` its 1-based position. Coset `q` adds a prime.
fn kernel_name(p: &Presentation, x: Generator, coset: Coset) -> Generator {
    let base = match x.letter() {
        's' if !x.is_primed() && x.index().is_some() => Generator::new('y', x.index(), false),
        'v' if !x.is_primed() && x.index().is_some() => Generator::new('x', x.index(), false),
        'h' if !x.is_primed() && x.index().is_none() => Generator::plain('z'),
        _ => {
            let pos = p.position(x).expect("declared generator") as u32 + 1;
            Generator::indexed('g', pos)
        }
    };
    match coset {
        Coset::Identity => base,
        Coset::Q => base.primed(),
    }
}

struct Rewriter<'a> {
    p: &'a Presentation,
    phi: &'a Z2Hom,
    q: Generator,
}

impl Rewriter<'_> {
    fn is_trivial(&self, coset: Coset, x: Generator) -> bool {
        coset == Coset::Identity && x == self.q
    }

    fn rep(&self, coset: Coset) -> Word {
        match coset {
            Coset::Identity => Word::identity(),
            Coset::Q => Word::letter(self.q),
        }
    }

    fn generators(&self) -> Vec<SchreierGenerator> {
        let mut out = Vec::with_capacity(2 * self.p.generators().len());
        for &x in self.p.generators() {
            for coset in [Coset::Identity, Coset::Q] {
                if self.is_trivial(coset, x) {
                    continue;
                }
                let target = coset.shift(self.phi.value(x));
                let expression = &self.rep(coset) * &Word::letter(x) * &self.rep(target).inverse();
                out.push(SchreierGenerator {
                    coset,
                    source: x,
                    name: kernel_name(self.p, x, coset),
                    expression,
                });
            }
        }
        out
    }

    fn rewrite(&self, r: &Word, start: Coset) -> Result<Word, Error> {
        let mut coset = start;
        let mut out = Vec::new();
        for s in r.syllables() {
            if s.exponent.abs() > MAX_EXPONENT {
                return Err(Error::TooLarge {
                    what: "relator exponent",
                    value: s.exponent.unsigned_abs(),
                    limit: MAX_EXPONENT as u64,
                });
            }
            let x = s.generator;
            let phi_x = self.phi.value(x);
            for _ in 0..s.exponent.abs() {
                if s.exponent > 0 {
                    if !self.is_trivial(coset, x) {
                        out.push((kernel_name(self.p, x, coset), 1));
                    }
                    coset = coset.shift(phi_x);
                } else {
                    let from = coset.shift(phi_x);
                    if !self.is_trivial(from, x) {
                        out.push((kernel_name(self.p, x, from), -1));
                    }
                    coset = from;
                }
            }
        }
        debug_assert_eq!(coset, start, "relators lie in the kernel");
        Ok(Word::from_syllables(out).free_reduce())
    }
}

pub fn schreier_generators(
    p: &Presentation,
    phi: &Z2Hom,
    t: &Transversal,
) -> Result<Vec<SchreierGenerator>, Error> {
    check_epimorphism(p, phi)?;
    Transversal::new(phi, t.q)?;
    Ok(Rewriter { p, phi, q: t.q }.generators())
}

/// Rewrites `u r u^-1` as a freely reduced word in Schreier generators.
pub fn rewrite_relator(
    p: &Presentation,
    phi: &Z2Hom,
    t: &Transversal,
    r: &Word,
    u: Coset,
) -> Result<Word, Error> {
    check_epimorphism(p, phi)?;
    Transversal::new(phi, t.q)?;
    Rewriter { p, phi, q: t.q }.rewrite(r, u)
}

/// Presentation of `ker φ` on `2G - 1` generators and `2R` relators,
/// optionally Tietze-simplified.
pub fn kernel_presentation(
    p: &Presentation,
    phi: &Z2Hom,
    t: Option<&Transversal>,
    simplify: bool,
) -> Result<Presentation, Error> {
    check_epimorphism(p, phi)?;
    let t = match t {
        Some(t) => Transversal::new(phi, t.q)?,
        None => Transversal::default_for(phi)?,
    };
    let rw = Rewriter { p, phi, q: t.q };
    let generators = rw.generators().into_iter().map(|s| s.name).collect();
    let mut relators = Vec::with_capacity(2 * p.relators().len());
    for r in p.relators() {
        relators.push(rw.rewrite(r, Coset::Identity)?);
        relators.push(rw.rewrite(r, Coset::Q)?);
    }
    let kernel = Presentation::new(generators, relators)?;
    Ok(if simplify {
        kernel.tietze_simplify()
    } else {
        kernel
    })
}
