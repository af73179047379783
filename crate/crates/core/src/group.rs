//! Words in free groups and finite presentations.
//!
//! Words are stored as syllables `(generator, exponent)` so that relators like
//! `s1^9 h^-4` stay compact. Most constructors return freely reduced words;
//! [`Word::from_syllables`] keeps raw input so [`Word::free_reduce`] has
//! something to do.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// A named generator: a letter, an optional index and an optional prime.
///
/// Seifert presentations use `s1..sn`, `v1..vg'` and `h`; kernel presentations
/// produced by the Reidemeister-Schreier engine use `y`, `x`, `z` and their
/// primed twins.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    letter: char,
    index: Option<u32>,
    primed: bool,
}

impl Generator {
    pub const fn new(letter: char, index: Option<u32>, primed: bool) -> Self {
        Generator {
            letter,
            index,
            primed,
        }
    }

    pub const fn indexed(letter: char, index: u32) -> Self {
        Generator::new(letter, Some(index), false)
    }

    pub const fn plain(letter: char) -> Self {
        Generator::new(letter, None, false)
    }

    /// Exceptional fiber generator `s_k` (1-based).
    pub const fn s(k: u32) -> Self {
        Generator::indexed('s', k)
    }

    /// Base loop generator `v_j` (1-based).
    pub const fn v(j: u32) -> Self {
        Generator::indexed('v', j)
    }

    /// Regular fiber.
    pub const fn h() -> Self {
        Generator::plain('h')
    }

    pub fn letter(&self) -> char {
        self.letter
    }

    pub fn index(&self) -> Option<u32> {
        self.index
    }

    pub fn is_primed(&self) -> bool {
        self.primed
    }

    pub fn primed(self) -> Self {
        Generator {
            primed: true,
            ..self
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter)?;
        if let Some(i) = self.index {
            write!(f, "{i}")?;
        }
        if self.primed {
            write!(f, "'")?;
        }
        Ok(())
    }
}

impl FromStr for Generator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || Error::Syntax {
            position: 0,
            message: format!("malformed generator name `{s}`"),
        };
        let mut chars = s.chars();
        let letter = chars
            .next()
            .filter(|c| c.is_ascii_alphabetic())
            .ok_or_else(bad)?;
        let rest = chars.as_str();
        let (digits, primed) = match rest.strip_suffix('\'') {
            Some(d) => (d, true),
            None => (rest, false),
        };
        let index = if digits.is_empty() {
            None
        } else {
            if !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            Some(digits.parse::<u32>().map_err(|_| bad())?)
        };
        Ok(Generator::new(letter, index, primed))
    }
}

impl Serialize for Generator {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Generator {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Syllable {
    pub generator: Generator,
    pub exponent: i64,
}

/// An element of the free group on [`Generator`]s.
///
/// Equality is syntactic: compare freely reduced words to test equality in
/// the free group.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word {
    syllables: Vec<Syllable>,
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    /// Builds a word from raw syllables without reducing it.
    pub fn from_syllables(syllables: impl IntoIterator<Item = (Generator, i64)>) -> Self {
        Word {
            syllables: syllables
                .into_iter()
                .map(|(generator, exponent)| Syllable {
                    generator,
                    exponent,
                })
                .collect(),
        }
    }

    pub fn letter(g: Generator) -> Self {
        Word::power(g, 1)
    }

    pub fn power(g: Generator, exponent: i64) -> Self {
        if exponent == 0 {
            Word::identity()
        } else {
            Word::from_syllables([(g, exponent)])
        }
    }

    /// `a b a^-1 b^-1`.
    pub fn commutator(a: &Word, b: &Word) -> Word {
        a * b * &a.inverse() * &b.inverse()
    }

    /// Product of the given words, freely reduced.
    pub fn product<'a>(words: impl IntoIterator<Item = &'a Word>) -> Word {
        let mut out = Word::identity();
        for w in words {
            out.append(w);
        }
        out
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    pub fn syllable_count(&self) -> usize {
        self.syllables.len()
    }

    /// Letter length, i.e. the sum of absolute exponents.
    pub fn length(&self) -> u64 {
        self.syllables
            .iter()
            .map(|s| s.exponent.unsigned_abs())
            .sum()
    }

    pub fn generators(&self) -> impl Iterator<Item = Generator> + '_ {
        self.syllables.iter().map(|s| s.generator)
    }

    pub fn inverse(&self) -> Word {
        Word {
            syllables: self
                .syllables
                .iter()
                .rev()
                .map(|s| Syllable {
                    generator: s.generator,
                    exponent: -s.exponent,
                })
                .collect(),
        }
    }

    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::identity();
        for _ in 0..n.unsigned_abs() {
            out.append(&base);
        }
        out
    }

    /// Appends `other` and reduces at the seam. `self` is assumed reduced.
    fn append(&mut self, other: &Word) {
        for s in &other.syllables {
            push_reduced(&mut self.syllables, *s);
        }
    }

    /// Freely reduced form: no zero exponents, no equal adjacent generators.
    pub fn free_reduce(&self) -> Word {
        let mut out = Vec::with_capacity(self.syllables.len());
        for s in &self.syllables {
            push_reduced(&mut out, *s);
        }
        Word { syllables: out }
    }

    pub fn exponent_sum(&self, g: Generator) -> i64 {
        self.syllables
            .iter()
            .filter(|s| s.generator == g)
            .map(|s| s.exponent)
            .sum()
    }

    /// Homomorphic image under `map`, freely reduced.
    pub fn substitute(&self, map: &HashMap<Generator, Word>) -> Result<Word, Error> {
        let mut out = Word::identity();
        for s in &self.syllables {
            let image = map
                .get(&s.generator)
                .ok_or_else(|| Error::UnknownGenerator(s.generator.to_string()))?;
            out.append(&image.pow(s.exponent));
        }
        Ok(out)
    }

    /// Conjugate of a reduced word with no cancellation between its two ends.
    pub fn cyclic_reduce(&self) -> Word {
        let mut w = self.free_reduce();
        while w.syllables.len() >= 2
            && w.syllables[0].generator == w.syllables[w.syllables.len() - 1].generator
        {
            let last = w.syllables.pop().expect("non-empty");
            let mut rotated = vec![last];
            rotated.extend(w.syllables.iter().copied());
            w = Word::from_syllables(rotated.into_iter().map(|s| (s.generator, s.exponent)))
                .free_reduce();
        }
        w
    }

    /// Cyclic rotation starting at syllable `start`.
    fn rotate(&self, start: usize) -> Word {
        let mut syllables = self.syllables[start..].to_vec();
        syllables.extend_from_slice(&self.syllables[..start]);
        Word { syllables }
    }
}

fn push_reduced(out: &mut Vec<Syllable>, s: Syllable) {
    if s.exponent == 0 {
        return;
    }
    match out.last_mut() {
        Some(last) if last.generator == s.generator => {
            last.exponent += s.exponent;
            if last.exponent == 0 {
                out.pop();
            }
        }
        _ => out.push(s),
    }
}

impl Mul<&Word> for &Word {
    type Output = Word;

    fn mul(self, rhs: &Word) -> Word {
        let mut out = self.free_reduce();
        out.append(rhs);
        out
    }
}

impl Mul<&Word> for Word {
    type Output = Word;

    fn mul(self, rhs: &Word) -> Word {
        &self * rhs
    }
}

impl Mul<Word> for Word {
    type Output = Word;

    fn mul(self, rhs: Word) -> Word {
        &self * &rhs
    }
}

impl From<Generator> for Word {
    fn from(g: Generator) -> Self {
        Word::letter(g)
    }
}

impl fmt::Display for Word {
    /// Space-separated syllables, e.g. `s1^2 h^-1 v1`; the identity prints as `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syllables.is_empty() {
            return write!(f, "1");
        }
        for (i, s) in self.syllables.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            if s.exponent == 1 {
                write!(f, "{}", s.generator)?;
            } else {
                write!(f, "{}^{}", s.generator, s.exponent)?;
            }
        }
        Ok(())
    }
}

/// A finite presentation. Generator order is significant: it fixes the
/// column order of exponent matrices and homomorphism vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    generators: Vec<Generator>,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new(generators: Vec<Generator>, relators: Vec<Word>) -> Result<Self, Error> {
        let mut seen = HashSet::new();
        for g in &generators {
            if !seen.insert(*g) {
                return Err(Error::DuplicateGenerator(g.to_string()));
            }
        }
        for r in &relators {
            if let Some(g) = r.generators().find(|g| !seen.contains(g)) {
                return Err(Error::UnknownGenerator(g.to_string()));
            }
        }
        Ok(Presentation {
            generators,
            relators,
        })
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn position(&self, g: Generator) -> Option<usize> {
        self.generators.iter().position(|x| *x == g)
    }

    /// Bounded Tietze simplification.
    ///
    /// Each round drops trivial relators and then eliminates one generator
    /// that occurs exactly once, with exponent ±1, in some cyclically reduced
    /// relator. At most one round per generator is run.
    pub fn tietze_simplify(&self) -> Presentation {
        let mut generators = self.generators.clone();
        let mut relators: Vec<Word> = self.relators.iter().map(Word::cyclic_reduce).collect();
        for _ in 0..=self.generators.len() {
            relators.retain(|r| !r.is_identity());
            let Some((ri, g, value)) = find_elimination(&relators) else {
                break;
            };
            relators.remove(ri);
            generators.retain(|x| *x != g);
            let mut map: HashMap<Generator, Word> =
                generators.iter().map(|x| (*x, Word::letter(*x))).collect();
            map.insert(g, value);
            relators = relators
                .iter()
                .map(|r| {
                    r.substitute(&map)
                        .expect("relators only mention declared generators")
                        .cyclic_reduce()
                })
                .collect();
        }
        relators.retain(|r| !r.is_identity());
        Presentation {
            generators,
            relators,
        }
    }
}

/// Picks the shortest relator `g^±1 w` (up to rotation) with `g` absent from
/// `w`, returning the relator index, `g`, and the word `g` equals.
fn find_elimination(relators: &[Word]) -> Option<(usize, Generator, Word)> {
    let mut order: Vec<usize> = (0..relators.len()).collect();
    order.sort_by_key(|&i| (relators[i].length(), i));
    for ri in order {
        let r = &relators[ri];
        for (pos, s) in r.syllables().iter().enumerate() {
            if s.exponent.abs() != 1 {
                continue;
            }
            if r.generators().filter(|g| *g == s.generator).count() != 1 {
                continue;
            }
            let rotated = r.rotate(pos);
            let rest = Word {
                syllables: rotated.syllables[1..].to_vec(),
            };
            // g w = 1 gives g = w^-1; g^-1 w = 1 gives g = w.
            let value = if s.exponent == 1 {
                rest.inverse()
            } else {
                rest
            };
            return Some((ri, s.generator, value));
        }
    }
    None
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "< ")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, " | ")?;
        for (i, r) in self.relators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, " >")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(c: char) -> Generator {
        Generator::plain(c)
    }

    fn w(items: &[(char, i64)]) -> Word {
        Word::from_syllables(items.iter().map(|&(c, e)| (g(c), e)))
    }

    #[test]
    fn cancellation() {
        assert!(w(&[('x', 1), ('x', -1)]).free_reduce().is_identity());
        assert_eq!(
            w(&[('a', 1), ('b', 1), ('b', -1), ('a', 1)]).free_reduce(),
            w(&[('a', 2)])
        );
        let x = Word::letter(g('x'));
        assert!(Word::commutator(&x, &x).is_identity());
    }

    #[test]
    fn exponent_sums() {
        let s1 = Generator::s(1);
        let h = Generator::h();
        let r = Word::from_syllables([(s1, 2), (h, 1)]);
        assert_eq!(r.exponent_sum(s1), 2);
        let c = Word::commutator(
            &Word::letter(Generator::v(1)),
            &Word::letter(Generator::v(2)),
        );
        assert_eq!(c.exponent_sum(Generator::v(1)), 0);
        let long =
            Word::from_syllables([(h, -1), (s1, 1), (Generator::s(2), 1), (Generator::s(3), 1)]);
        assert_eq!(long.exponent_sum(h), -1);
    }

    #[test]
    fn substitution() {
        let x = g('x');
        let mut map = HashMap::new();
        map.insert(x, w(&[('a', 1), ('b', 1)]));
        assert_eq!(
            Word::power(x, 2).substitute(&map).unwrap(),
            w(&[('a', 1), ('b', 1), ('a', 1), ('b', 1)])
        );
        assert!(matches!(
            Word::letter(g('y')).substitute(&map),
            Err(Error::UnknownGenerator(_))
        ));
    }

    #[test]
    fn substitution_identity_map() {
        let (x, y) = (Word::letter(g('x')), Word::letter(g('y')));
        let c = Word::commutator(&x, &y);
        let map: HashMap<_, _> = [(g('x'), x.clone()), (g('y'), y.clone())].into();
        assert_eq!(c.substitute(&map).unwrap(), c);
    }

    #[test]
    fn switch_v_by_s1() {
        // v' = v s1 and s1' = v'^-1 s1^-1 v' applied to s1 v1^2
        let s1 = Word::letter(Generator::s(1));
        let v1 = Word::letter(Generator::v(1));
        let vp = &v1 * &s1;
        let sp = &vp.inverse() * &s1.inverse() * &vp;
        let map: HashMap<_, _> =
            [(Generator::s(1), sp.clone()), (Generator::v(1), vp.clone())].into();
        let r = Word::from_syllables([(Generator::s(1), 1), (Generator::v(1), 2)]);
        let image = r.substitute(&map).unwrap();
        let expected = Word::product([&sp, &vp, &vp]);
        assert_eq!(image, expected);
        assert_eq!(image, image.free_reduce());
        assert_eq!(image.to_string(), "s1^-1 v1^-1 s1^-1 v1 s1 v1 s1 v1 s1");
    }

    #[test]
    fn tietze_examples() {
        let (a, b) = (g('a'), g('b'));
        let p = Presentation::new(vec![a, b], vec![Word::letter(b)]).unwrap();
        let q = p.tietze_simplify();
        assert_eq!(q.generators(), &[a]);
        assert!(q.relators().is_empty());

        let p = Presentation::new(vec![a, b], vec![w(&[('a', 1), ('b', 1)])]).unwrap();
        let q = p.tietze_simplify();
        assert_eq!(q.generators().len(), 1);
        assert!(q.relators().is_empty());

        let z = Generator::plain('z');
        let zp = z.primed();
        let p = Presentation::new(vec![z, zp], vec![Word::letter(z)]).unwrap();
        let q = p.tietze_simplify();
        assert_eq!(q.generators(), &[zp]);
        assert!(q.relators().is_empty());
    }

    #[test]
    fn tietze_keeps_higher_powers() {
        let a = g('a');
        let p = Presentation::new(vec![a], vec![Word::power(a, 2)]).unwrap();
        assert_eq!(p.tietze_simplify(), p);
    }

    #[test]
    fn presentation_rejects_undeclared() {
        let err = Presentation::new(vec![g('a')], vec![Word::letter(g('b'))]).unwrap_err();
        assert!(matches!(err, Error::UnknownGenerator(_)));
        let err = Presentation::new(vec![g('a'), g('a')], vec![]).unwrap_err();
        assert!(matches!(err, Error::DuplicateGenerator(_)));
    }

    #[test]
    fn rendering() {
        let r = Word::from_syllables([
            (Generator::s(1), 2),
            (Generator::h(), -1),
            (Generator::v(1), 1),
        ]);
        assert_eq!(r.to_string(), "s1^2 h^-1 v1");
        assert_eq!(Word::identity().to_string(), "1");
        assert_eq!(Generator::indexed('y', 3).primed().to_string(), "y3'");
        assert_eq!(
            "y3'".parse::<Generator>().unwrap(),
            Generator::indexed('y', 3).primed()
        );
        assert_eq!("h".parse::<Generator>().unwrap(), Generator::h());
        assert!("3x".parse::<Generator>().is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_word() -> impl Strategy<Value = Word> {
            prop::collection::vec((0usize..3, -3i64..=3), 0..12).prop_map(|raw| {
                Word::from_syllables(raw.into_iter().map(|(i, e)| (g(['a', 'b', 'c'][i]), e)))
            })
        }

        proptest! {
            #[test]
            fn free_reduce_is_idempotent(w in arb_word()) {
                let r = w.free_reduce();
                prop_assert_eq!(r.free_reduce(), r.clone());
                prop_assert!(r.syllables().iter().all(|s| s.exponent != 0));
                prop_assert!(r.syllables().windows(2).all(|p| p[0].generator != p[1].generator));
            }

            #[test]
            fn inverse_cancels(w in arb_word()) {
                prop_assert!((&w * &w.inverse()).is_identity());
            }

            #[test]
            fn substitution_is_a_homomorphism(
                u in arb_word(),
                w in arb_word(),
                images in prop::collection::vec(arb_word(), 3),
            ) {
                let map: HashMap<Generator, Word> =
                    ['a', 'b', 'c'].into_iter().map(g).zip(images).collect();
                let joined = (&u * &w).substitute(&map).unwrap();
                let separate = &u.substitute(&map).unwrap() * &w.substitute(&map).unwrap();
                prop_assert_eq!(joined, separate);
            }

            #[test]
            fn exponent_sums_survive_reduction(w in arb_word()) {
                for c in ['a', 'b', 'c'] {
                    prop_assert_eq!(w.exponent_sum(g(c)), w.free_reduce().exponent_sum(g(c)));
                }
            }
        }
    }
}
