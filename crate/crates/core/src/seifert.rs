//! Seifert invariants `{e;(type,g);(a1,b1),...,(an,bn)}` and the standard
//! presentation of the fundamental group they determine.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::group::{Generator, Presentation, Word};

/// Joint orientability class of base and total space, plus the pattern of
/// fiber-reversing base loops.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TypeSymbol {
    O1,
    O2,
    N1,
    N2,
    N3,
    N4,
}

impl TypeSymbol {
    pub const ALL: [TypeSymbol; 6] = [
        TypeSymbol::O1,
        TypeSymbol::O2,
        TypeSymbol::N1,
        TypeSymbol::N2,
        TypeSymbol::N3,
        TypeSymbol::N4,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TypeSymbol::O1 => "o1",
            TypeSymbol::O2 => "o2",
            TypeSymbol::N1 => "n1",
            TypeSymbol::N2 => "n2",
            TypeSymbol::N3 => "n3",
            TypeSymbol::N4 => "n4",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        TypeSymbol::ALL.into_iter().find(|t| t.name() == s)
    }

    pub fn base_orientable(self) -> bool {
        matches!(self, TypeSymbol::O1 | TypeSymbol::O2)
    }

    pub fn total_orientable(self) -> bool {
        matches!(self, TypeSymbol::O1 | TypeSymbol::N2)
    }

    pub fn min_genus(self) -> u32 {
        match self {
            TypeSymbol::O1 => 0,
            TypeSymbol::O2 | TypeSymbol::N1 | TypeSymbol::N2 => 1,
            TypeSymbol::N3 => 2,
            TypeSymbol::N4 => 3,
        }
    }

    /// Number of base generators `g'` for base genus `g`.
    pub fn base_generator_count(self, genus: u32) -> u32 {
        if self.base_orientable() {
            2 * genus
        } else {
            genus
        }
    }
}

impl fmt::Display for TypeSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Exceptional fiber data `(a, b)`: `a != 0` and `gcd(|a|,|b|) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FiberPair {
    pub a: i64,
    pub b: i64,
}

impl FiberPair {
    pub const fn new(a: i64, b: i64) -> Self {
        FiberPair { a, b }
    }

    fn violations(&self, k: usize, out: &mut Vec<String>) {
        if self.a == 0 {
            out.push(format!("fiber {k}: a must be nonzero"));
        } else if self.a.unsigned_abs().gcd(&self.b.unsigned_abs()) != 1 {
            out.push(format!("fiber {k}: gcd({},{}) ≠ 1", self.a, self.b));
        }
    }
}

impl fmt::Display for FiberPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SeifertInvariants {
    pub e: i64,
    #[serde(rename = "type")]
    pub kind: TypeSymbol,
    pub genus: u32,
    pub fibers: Vec<FiberPair>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub ok: bool,
    pub violations: Vec<String>,
}

/// The `ε_j` signs, one per base generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpsilonVector(pub Vec<i8>);

impl EpsilonVector {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `ε_j`, 1-based.
    pub fn get(&self, j: usize) -> i8 {
        self.0[j - 1]
    }
}

impl SeifertInvariants {
    pub fn new(e: i64, kind: TypeSymbol, genus: u32, fibers: Vec<FiberPair>) -> Self {
        SeifertInvariants {
            e,
            kind,
            genus,
            fibers,
        }
    }

    /// Fiber list builder from `(a, b)` tuples.
    pub fn with_pairs(e: i64, kind: TypeSymbol, genus: u32, pairs: &[(i64, i64)]) -> Self {
        SeifertInvariants::new(
            e,
            kind,
            genus,
            pairs.iter().map(|&(a, b)| FiberPair::new(a, b)).collect(),
        )
    }

    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let min = self.kind.min_genus();
        if self.genus < min {
            violations.push(format!("{} requires g ≥ {min}", self.kind));
        }
        for (k, pair) in self.fibers.iter().enumerate() {
            pair.violations(k + 1, &mut violations);
        }
        ValidationReport {
            ok: violations.is_empty(),
            violations,
        }
    }

    /// Fail-fast form of [`validate`](Self::validate).
    pub fn check(&self) -> Result<(), Error> {
        let report = self.validate();
        if report.ok {
            Ok(())
        } else {
            Err(Error::InvalidInvariants(report.violations))
        }
    }

    pub fn fiber_count(&self) -> usize {
        self.fibers.len()
    }

    pub fn base_generator_count(&self) -> usize {
        self.kind.base_generator_count(self.genus) as usize
    }

    /// Generators in the fixed order `s1..sn, v1..vg', h`.
    pub fn generators(&self) -> Vec<Generator> {
        let mut gens: Vec<Generator> = (1..=self.fibers.len() as u32).map(Generator::s).collect();
        gens.extend((1..=self.base_generator_count() as u32).map(Generator::v));
        gens.push(Generator::h());
        gens
    }

    pub fn epsilon_vector(&self) -> Result<EpsilonVector, Error> {
        self.check()?;
        Ok(self.epsilon_unchecked())
    }

    fn epsilon_unchecked(&self) -> EpsilonVector {
        let len = self.base_generator_count();
        let positive = match self.kind {
            TypeSymbol::O1 | TypeSymbol::N1 => len,
            TypeSymbol::O2 | TypeSymbol::N2 => 0,
            TypeSymbol::N3 => 1,
            TypeSymbol::N4 => 2,
        };
        EpsilonVector(
            (0..len)
                .map(|j| if j < positive { 1 } else { -1 })
                .collect(),
        )
    }

    /// Relators `[s_k,h]`, `s_k^a_k h^b_k`, `v_j h v_j^-1 h^-ε_j` and
    /// `h^-e s1..sn V`, in that order.
    pub fn fundamental_presentation(&self) -> Result<Presentation, Error> {
        self.check()?;
        let h = Word::letter(Generator::h());
        let mut relators =
            Vec::with_capacity(2 * self.fibers.len() + self.base_generator_count() + 1);
        for (k, pair) in self.fibers.iter().enumerate() {
            let s = Word::letter(Generator::s(k as u32 + 1));
            relators.push(Word::commutator(&s, &h));
            relators.push(
                Word::from_syllables([
                    (Generator::s(k as u32 + 1), pair.a),
                    (Generator::h(), pair.b),
                ])
                .free_reduce(),
            );
        }
        let eps = self.epsilon_unchecked();
        for j in 1..=eps.len() {
            let v = Word::letter(Generator::v(j as u32));
            relators.push(
                &v * &h * &v.inverse() * &Word::power(Generator::h(), -i64::from(eps.get(j))),
            );
        }
        let mut long = Word::power(Generator::h(), -self.e);
        for k in 1..=self.fibers.len() as u32 {
            long = long * Word::letter(Generator::s(k));
        }
        if self.kind.base_orientable() {
            for i in 0..self.genus {
                let a = Word::letter(Generator::v(2 * i + 1));
                let b = Word::letter(Generator::v(2 * i + 2));
                long = long * Word::commutator(&a, &b);
            }
        } else {
            for j in 1..=self.genus {
                long = long * Word::power(Generator::v(j), 2);
            }
        }
        relators.push(long);
        Presentation::new(self.generators(), relators)
    }

    /// `e + Σ b_k/a_k`.
    pub fn euler_number(&self) -> BigRational {
        let mut total = BigRational::from_integer(BigInt::from(self.e));
        for pair in &self.fibers {
            total += BigRational::new(BigInt::from(pair.b), BigInt::from(pair.a));
        }
        total
    }

    /// Orbifold Euler characteristic of the base, `χ(base) - Σ (1 - 1/|a_k|)`.
    pub fn chi_orb(&self) -> BigRational {
        let g = BigInt::from(self.genus);
        let base = if self.kind.base_orientable() {
            BigInt::from(2) - BigInt::from(2) * g
        } else {
            BigInt::from(2) - g
        };
        let mut total = BigRational::from_integer(base);
        for pair in &self.fibers {
            total -= BigRational::one()
                - BigRational::new(BigInt::one(), BigInt::from(pair.a.unsigned_abs()));
        }
        total
    }

    /// Replaces every negative `b_k` by its opposite. Flipping is only legal
    /// when the total space is non-orientable; an orientable symbol with no
    /// negative `b_k` is returned unchanged.
    pub fn normalize_fiber_signs(&self) -> Result<SeifertInvariants, Error> {
        if self.kind.total_orientable() && self.fibers.iter().any(|p| p.b < 0) {
            return Err(Error::Precondition(format!(
                "fiber signs cannot be flipped on orientable type {}",
                self.kind
            )));
        }
        let mut out = self.clone();
        for pair in &mut out.fibers {
            pair.b = pair.b.abs();
        }
        Ok(out)
    }

    /// Fibers sorted lexicographically; used only to compare predictions.
    pub fn canonical(&self) -> SeifertInvariants {
        let mut out = self.clone();
        out.fibers.sort();
        out
    }
}

impl fmt::Display for SeifertInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{};({},{});", self.e, self.kind, self.genus)?;
        for (i, pair) in self.fibers.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{pair}")?;
        }
        write!(f, "}}")
    }
}

/// `(a1,b1),(a1,-b1),...,(an,bn),(an,-bn)`.
pub fn build_foc(fibers: &[FiberPair]) -> Vec<FiberPair> {
    fibers
        .iter()
        .flat_map(|p| [*p, FiberPair::new(p.a, -p.b)])
        .collect()
}

/// First `m` pairs with `a` halved, every later pair duplicated in place.
pub fn build_fm(fibers: &[FiberPair], m: usize) -> Result<Vec<FiberPair>, Error> {
    if m > fibers.len() {
        return Err(Error::Precondition(format!(
            "m = {m} exceeds the {} fibers",
            fibers.len()
        )));
    }
    let mut out = Vec::with_capacity(2 * fibers.len() - m);
    for (k, p) in fibers[..m].iter().enumerate() {
        if p.a % 2 != 0 {
            return Err(Error::Precondition(format!(
                "fiber {} has odd multiplicity {} and cannot be halved",
                k + 1,
                p.a
            )));
        }
        out.push(FiberPair::new(p.a / 2, p.b));
    }
    for p in &fibers[m..] {
        out.push(*p);
        out.push(*p);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use TypeSymbol::*;

    fn sym(e: i64, t: TypeSymbol, g: u32, pairs: &[(i64, i64)]) -> SeifertInvariants {
        SeifertInvariants::with_pairs(e, t, g, pairs)
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn validation() {
        assert!(sym(0, O1, 0, &[]).validate().ok);
        let r = sym(0, N4, 2, &[]).validate();
        assert!(!r.ok);
        assert_eq!(r.violations, vec!["n4 requires g ≥ 3".to_string()]);
        let r = sym(0, O1, 0, &[(2, 4)]).validate();
        assert_eq!(r.violations, vec!["fiber 1: gcd(2,4) ≠ 1".to_string()]);
        let r = sym(0, O1, 0, &[(0, 1)]).validate();
        assert!(!r.ok);
        assert!(sym(0, O1, 0, &[(-3, 2), (1, 0)]).validate().ok);
        assert!(sym(0, O1, 0, &[(2, 0)]).validate().violations[0].contains("gcd"));
    }

    #[test]
    fn epsilon_patterns() {
        assert_eq!(
            sym(0, O1, 2, &[]).epsilon_vector().unwrap().0,
            vec![1, 1, 1, 1]
        );
        assert_eq!(sym(0, N3, 2, &[]).epsilon_vector().unwrap().0, vec![1, -1]);
        assert_eq!(
            sym(0, N4, 3, &[]).epsilon_vector().unwrap().0,
            vec![1, 1, -1]
        );
        assert_eq!(sym(0, O2, 1, &[]).epsilon_vector().unwrap().0, vec![-1, -1]);
        assert_eq!(sym(0, N1, 2, &[]).epsilon_vector().unwrap().0, vec![1, 1]);
        assert_eq!(sym(0, N2, 2, &[]).epsilon_vector().unwrap().0, vec![-1, -1]);
        assert!(sym(0, N3, 1, &[]).epsilon_vector().is_err());
    }

    #[test]
    fn presentation_of_z() {
        let p = sym(0, O1, 0, &[]).fundamental_presentation().unwrap();
        assert_eq!(p.generators(), &[Generator::h()]);
        assert_eq!(p.relators().len(), 1);
        assert!(p.relators()[0].is_identity());
    }

    #[test]
    fn presentation_n2() {
        let p = sym(0, N2, 1, &[(2, 1)]).fundamental_presentation().unwrap();
        assert_eq!(
            p.generators(),
            &[Generator::s(1), Generator::v(1), Generator::h()]
        );
        let rendered: Vec<String> = p.relators().iter().map(|r| r.to_string()).collect();
        assert_eq!(
            rendered,
            vec!["s1 h s1^-1 h^-1", "s1^2 h", "v1 h v1^-1 h", "s1 v1^2"]
        );
    }

    #[test]
    fn presentation_poincare_counts() {
        let p = sym(-1, O1, 0, &[(2, 1), (3, 1), (5, 1)])
            .fundamental_presentation()
            .unwrap();
        assert_eq!(p.generators().len(), 4);
        assert_eq!(p.relators().len(), 7);
        assert_eq!(p.relators()[6].to_string(), "h s1 s2 s3");
    }

    #[test]
    fn orientable_long_relator() {
        let p = sym(2, O1, 1, &[]).fundamental_presentation().unwrap();
        assert_eq!(
            p.relators().last().unwrap().to_string(),
            "h^-2 v1 v2 v1^-1 v2^-1"
        );
    }

    #[test]
    fn fiber_constructors() {
        let f = |v: &[(i64, i64)]| -> Vec<FiberPair> {
            v.iter().map(|&(a, b)| FiberPair::new(a, b)).collect()
        };
        assert!(build_foc(&[]).is_empty());
        assert_eq!(build_foc(&f(&[(3, 1)])), f(&[(3, 1), (3, -1)]));
        assert_eq!(
            build_foc(&f(&[(2, 1), (5, 2)])),
            f(&[(2, 1), (2, -1), (5, 2), (5, -2)])
        );
        assert_eq!(build_fm(&f(&[(3, 1)]), 0).unwrap(), f(&[(3, 1), (3, 1)]));
        assert_eq!(
            build_fm(&f(&[(2, 1), (4, 1)]), 2).unwrap(),
            f(&[(1, 1), (2, 1)])
        );
        assert!(build_fm(&[], 0).unwrap().is_empty());
        assert!(matches!(
            build_fm(&f(&[(3, 1)]), 1),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn rational_statistics() {
        assert_eq!(sym(2, O1, 1, &[]).euler_number(), q(2, 1));
        assert_eq!(
            sym(-1, O1, 0, &[(2, 1), (3, 1), (5, 1)]).euler_number(),
            q(1, 30)
        );
        assert_eq!(sym(1, O1, 0, &[(2, 1), (2, 1)]).euler_number(), q(2, 1));
        assert_eq!(sym(0, O1, 2, &[]).chi_orb(), q(-2, 1));
        assert_eq!(sym(0, N1, 1, &[(2, 1)]).chi_orb(), q(1, 2));
        assert_eq!(
            sym(-1, O1, 0, &[(2, 1), (3, 1), (5, 1)]).chi_orb(),
            q(1, 30)
        );
        assert_eq!(sym(0, O1, 0, &[(-3, 1)]).chi_orb(), q(4, 3));
    }

    #[test]
    fn sign_normalization() {
        assert_eq!(
            sym(0, O2, 1, &[(3, -1)]).normalize_fiber_signs().unwrap(),
            sym(0, O2, 1, &[(3, 1)])
        );
        assert_eq!(
            sym(0, N2, 1, &[(3, 1)]).normalize_fiber_signs().unwrap(),
            sym(0, N2, 1, &[(3, 1)])
        );
        assert!(sym(0, O1, 1, &[(3, -1)]).normalize_fiber_signs().is_err());
        assert!(sym(0, N2, 1, &[(3, -1)]).normalize_fiber_signs().is_err());
    }

    #[test]
    fn display() {
        assert_eq!(
            sym(-1, O1, 0, &[(2, 1), (3, 1), (5, 1)]).to_string(),
            "{-1;(o1,0);(2,1),(3,1),(5,1)}"
        );
        assert_eq!(sym(0, N3, 2, &[]).to_string(), "{0;(n3,2);}");
    }
}
