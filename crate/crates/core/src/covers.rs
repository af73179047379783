//! Closed-form Seifert invariants of the double cover attached to an
//! epimorphism `φ: π1(N) → Z/2`.
//!
//! Two regimes: `φ(h) = 1` unwraps the regular fiber and keeps the base;
//! `φ(h) = 0` doubles the base orbifold, with orientation covers and the
//! exotic all-`v_j` covers handled separately from the ordinary formula.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::group::Generator;
use crate::seifert::{build_fm, build_foc, FiberPair, SeifertInvariants, TypeSymbol};
use crate::z2hom::{check_epimorphism, Z2Hom};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CaseTag {
    FiberCase,
    BaseOrdinary,
    BaseExotic,
    BaseOrientationCover,
}

impl CaseTag {
    pub const ALL: [CaseTag; 4] = [
        CaseTag::FiberCase,
        CaseTag::BaseOrdinary,
        CaseTag::BaseExotic,
        CaseTag::BaseOrientationCover,
    ];
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CaseTag::FiberCase => "FiberCase",
            CaseTag::BaseOrdinary => "BaseOrdinary",
            CaseTag::BaseExotic => "BaseExotic",
            CaseTag::BaseOrientationCover => "BaseOrientationCover",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CoverCase {
    pub tag: CaseTag,
    /// Number of `s_k` with `φ(s_k) = 1`.
    pub m: usize,
    /// Number of `v_j` with `φ(v_j) = 1`.
    pub r: usize,
    /// Euler-number correction in the fiber case, in `{0, 1}`; 0 otherwise.
    pub mprime: u8,
}

fn check_phi(inv: &SeifertInvariants, phi: &Z2Hom) -> Result<(), Error> {
    let p = inv.fundamental_presentation()?;
    check_epimorphism(&p, phi)
}

fn s_values(inv: &SeifertInvariants, phi: &Z2Hom) -> Vec<u8> {
    (1..=inv.fiber_count() as u32)
        .map(|k| phi.value(Generator::s(k)))
        .collect()
}

fn v_values(inv: &SeifertInvariants, phi: &Z2Hom) -> Vec<u8> {
    (1..=inv.base_generator_count() as u32)
        .map(|j| phi.value(Generator::v(j)))
        .collect()
}

/// `φ` on the `v_j` equals the indicator of `{j : ε_j = sign}`.
fn v_set_matches_sign(inv: &SeifertInvariants, phi: &Z2Hom, sign: i8) -> bool {
    let eps = inv.epsilon_vector().expect("validated");
    v_values(inv, phi)
        .iter()
        .zip(&eps.0)
        .all(|(&bit, &e)| (bit == 1) == (e == sign))
}

fn mprime(inv: &SeifertInvariants, phi: &Z2Hom) -> u8 {
    let v = v_values(inv, phi);
    match inv.kind {
        TypeSymbol::O1 | TypeSymbol::N2 => 0,
        TypeSymbol::O2 | TypeSymbol::N1 => v.iter().sum::<u8>() % 2,
        TypeSymbol::N3 => v[0],
        TypeSymbol::N4 => (v[0] + v[1]) % 2,
    }
}

pub fn classify(inv: &SeifertInvariants, phi: &Z2Hom) -> Result<CoverCase, Error> {
    check_phi(inv, phi)?;
    let m = s_values(inv, phi).iter().filter(|b| **b == 1).count();
    let v = v_values(inv, phi);
    let r = v.iter().filter(|b| **b == 1).count();
    if phi.value(Generator::h()) == 1 {
        return Ok(CoverCase {
            tag: CaseTag::FiberCase,
            m,
            r,
            mprime: mprime(inv, phi),
        });
    }
    if m % 2 != 0 {
        return Err(Error::Inconsistent(format!(
            "φ(h) = 0 but an odd number ({m}) of s_k map to 1"
        )));
    }
    let all_v = r == v.len() && r > 0;
    let tag = if m > 0 {
        CaseTag::BaseOrdinary
    } else {
        match inv.kind {
            TypeSymbol::O2 | TypeSymbol::N1 if all_v => CaseTag::BaseOrientationCover,
            TypeSymbol::N3 | TypeSymbol::N4 if v_set_matches_sign(inv, phi, 1) => {
                CaseTag::BaseOrientationCover
            }
            TypeSymbol::N2 | TypeSymbol::N3 | TypeSymbol::N4 if all_v => CaseTag::BaseExotic,
            _ => CaseTag::BaseOrdinary,
        }
    };
    Ok(CoverCase {
        tag,
        m,
        r,
        mprime: 0,
    })
}

/// Stable permutation putting the fibers with `φ(s_k) = 1` first; `φ` is
/// permuted in lockstep.
pub fn reorder_for_phi(
    inv: &SeifertInvariants,
    phi: &Z2Hom,
) -> Result<(SeifertInvariants, Z2Hom), Error> {
    if phi.value(Generator::h()) == 1 {
        return Err(Error::Precondition(
            "fiber reordering requires φ(h) = 0".into(),
        ));
    }
    let s = s_values(inv, phi);
    let order: Vec<usize> = (0..s.len())
        .filter(|&k| s[k] == 1)
        .chain((0..s.len()).filter(|&k| s[k] == 0))
        .collect();
    let mut out = inv.clone();
    out.fibers = order.iter().map(|&k| inv.fibers[k]).collect();
    let mut psi = phi.clone();
    for (new, &old) in order.iter().enumerate() {
        psi.set(Generator::s(new as u32 + 1), s[old])?;
    }
    Ok((out, psi))
}

/// Kernel of a `φ` with `φ(h) = 1`: same base, fiber `h^2`.
pub fn cover_fiber_case(inv: &SeifertInvariants, phi: &Z2Hom) -> Result<SeifertInvariants, Error> {
    let case = classify(inv, phi)?;
    if case.tag != CaseTag::FiberCase {
        return Err(Error::Precondition(format!(
            "fiber-case formula needs φ(h) = 1, got {}",
            case.tag
        )));
    }
    let mut odd = 0i64;
    let mut fibers = Vec::with_capacity(inv.fiber_count());
    for (k, pair) in inv.fibers.iter().enumerate() {
        if pair.a % 2 == 0 {
            return Err(Error::Inconsistent(format!(
                "fiber {} has even multiplicity under φ(h) = 1",
                k + 1
            )));
        }
        let b_odd = pair.b.rem_euclid(2) == 1;
        if phi.value(Generator::s(k as u32 + 1)) != u8::from(b_odd) {
            return Err(Error::Inconsistent(format!(
                "φ(s{}) differs from b mod 2",
                k + 1
            )));
        }
        let b = if b_odd {
            odd += 1;
            (pair.a + pair.b) / 2
        } else {
            pair.b / 2
        };
        fibers.push(FiberPair::new(pair.a, b));
    }
    if (inv.e + odd) % 2 != 0 {
        return Err(Error::Inconsistent(format!(
            "e + m = {} is odd",
            inv.e + odd
        )));
    }
    let e = (inv.e - odd) / 2 - i64::from(case.mprime);
    Ok(SeifertInvariants::new(e, inv.kind, inv.genus, fibers))
}

/// Kernel of a `φ` with `φ(h) = 0`. The fibers sent to 1 must come first
/// (see [`reorder_for_phi`]).
pub fn cover_base_case(inv: &SeifertInvariants, phi: &Z2Hom) -> Result<SeifertInvariants, Error> {
    if phi.value(Generator::h()) == 1 {
        return Err(Error::Precondition(
            "base-case formula needs φ(h) = 0".into(),
        ));
    }
    let case = classify(inv, phi)?;
    let s = s_values(inv, phi);
    if s.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::Precondition(
            "fibers with φ(s_k) = 1 must come first".into(),
        ));
    }
    let g = inv.genus;
    let m = case.m as u32;
    let cover = match case.tag {
        CaseTag::FiberCase => unreachable!("φ(h) = 0"),
        CaseTag::BaseOrientationCover => {
            let fibers = build_foc(&inv.fibers);
            match inv.kind {
                TypeSymbol::O2 => SeifertInvariants::new(0, TypeSymbol::O1, 2 * g - 1, fibers),
                TypeSymbol::N1 => SeifertInvariants::new(0, TypeSymbol::O1, g - 1, fibers),
                TypeSymbol::N3 | TypeSymbol::N4 => {
                    SeifertInvariants::new(0, TypeSymbol::N2, 2 * g - 2, fibers)
                }
                t => {
                    return Err(Error::Inconsistent(format!(
                        "no orientation cover for type {t}"
                    )))
                }
            }
        }
        CaseTag::BaseExotic => {
            let fibers = build_fm(&inv.fibers, 0)?;
            match inv.kind {
                TypeSymbol::N2 => SeifertInvariants::new(2 * inv.e, TypeSymbol::O1, g - 1, fibers),
                TypeSymbol::N3 | TypeSymbol::N4 => {
                    SeifertInvariants::new(0, TypeSymbol::O2, g - 1, fibers)
                }
                t => return Err(Error::Inconsistent(format!("no exotic cover for type {t}"))),
            }
        }
        CaseTag::BaseOrdinary => {
            let fibers = build_fm(&inv.fibers, case.m).map_err(|e| match e {
                Error::Precondition(msg) => Error::Inconsistent(msg),
                other => other,
            })?;
            let e = if inv.kind.total_orientable() {
                2 * inv.e
            } else {
                0
            };
            let genus = if inv.kind.base_orientable() {
                m / 2 + 2 * g - 1
            } else {
                m + 2 * g - 2
            };
            // When φ on the v_j equals the fiber-reversal character (n3 with
            // {v2..vg}, n4 with {v3..vg}), no loop of the cover reverses the
            // fiber and the cover has type n1.
            let kind = match inv.kind {
                TypeSymbol::N3 | TypeSymbol::N4 if m == 0 && v_set_matches_sign(inv, phi, -1) => {
                    TypeSymbol::N1
                }
                TypeSymbol::N3 => TypeSymbol::N4,
                t => t,
            };
            SeifertInvariants::new(e, kind, genus, fibers)
        }
    };
    if cover.kind.total_orientable() {
        Ok(cover)
    } else {
        cover.normalize_fiber_signs()
    }
}

/// Seifert invariants of the double cover with fundamental group `ker φ`.
pub fn double_cover(inv: &SeifertInvariants, phi: &Z2Hom) -> Result<SeifertInvariants, Error> {
    check_phi(inv, phi)?;
    if phi.value(Generator::h()) == 1 {
        cover_fiber_case(inv, phi)
    } else {
        let (inv, phi) = reorder_for_phi(inv, phi)?;
        cover_base_case(&inv, &phi)
    }
}
