//! Explicit changes of generators in free groups, each carried with a
//! certificate that the claimed word identity holds after free reduction.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::Error;
use crate::group::{Generator, Word};

/// New generators as words in old ones, and an identity `lhs = rhs` where
/// `rhs` is `rhs_pattern` with the new generators substituted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubstitutionCertificate {
    /// Value of the sign character on each old generator; empty when the
    /// identity carries no sign data.
    pub base_signs: Vec<(Generator, i8)>,
    pub new_generators: Vec<(Generator, Word)>,
    pub lhs: Word,
    /// The right-hand side written in the new generators.
    pub rhs_pattern: Word,
    pub expected_signs: Vec<(Generator, i8)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Certification {
    pub identity: bool,
    pub signs: bool,
}

impl Certification {
    pub fn holds(&self) -> bool {
        self.identity && self.signs
    }
}

impl SubstitutionCertificate {
    /// `rhs_pattern` with every new generator replaced by its word.
    pub fn rhs(&self) -> Word {
        let map: HashMap<Generator, Word> = self.new_generators.iter().cloned().collect();
        self.rhs_pattern
            .substitute(&map)
            .expect("pattern uses only new generators")
    }

    /// Sign of a word under the base character.
    pub fn sign_of(&self, w: &Word) -> i8 {
        let odd = w
            .syllables()
            .iter()
            .filter(|s| {
                s.exponent % 2 != 0
                    && self
                        .base_signs
                        .iter()
                        .any(|(g, e)| *g == s.generator && *e < 0)
            })
            .count();
        if odd % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn check(&self) -> Certification {
        let identity = (&self.lhs * &self.rhs().inverse()).is_identity();
        let signs = self.expected_signs.iter().all(|(g, want)| {
            self.new_generators
                .iter()
                .find(|(n, _)| n == g)
                .is_some_and(|(_, w)| self.sign_of(w) == *want)
        });
        Certification { identity, signs }
    }

    pub fn certify(&self) -> bool {
        self.check().holds()
    }

    /// Number of commutator factors in the pattern, reading it as
    /// `[p1,q1][p2,q2]...` over distinct letters.
    pub fn commutator_count(&self) -> usize {
        self.rhs_pattern.syllable_count() / 4
    }
}

impl fmt::Display for SubstitutionCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (g, w) in &self.new_generators {
            writeln!(f, "{g} = {w}")?;
        }
        write!(f, "{} = {}", self.lhs, self.rhs_pattern)
    }
}

fn commutators(names: &[Generator]) -> Word {
    let letters: Vec<Word> = names.iter().map(|g| Word::letter(*g)).collect();
    let factors: Vec<Word> = letters
        .chunks(2)
        .map(|p| Word::commutator(&p[0], &p[1]))
        .collect();
    Word::product(&factors)
}

fn letters(w: &[Generator]) -> Word {
    Word::from_syllables(w.iter().map(|g| (*g, 1)))
}

/// `g0 g1 ... g2k g0^-1 ... g2k^-1` as `k` commutators `[h0,h1]...`, via
/// `h_{2i} = g_{2i} g_{2i+1}` and `h_{2i+1} = U_{i+1} g_{2i}^-1` with
/// `U_i = g_{2i} ... g_{2k}`.
pub fn conjugate_product_to_commutators(k: usize) -> SubstitutionCertificate {
    let g: Vec<Generator> = (0..=2 * k as u32)
        .map(|i| Generator::indexed('g', i))
        .collect();
    let u = |i: usize| letters(&g[2 * i..]);
    let mut new_generators = Vec::with_capacity(2 * k);
    for i in 0..k {
        let a = letters(&g[2 * i..2 * i + 2]);
        let b = &u(i + 1) * &Word::power(g[2 * i], -1);
        new_generators.push((Generator::indexed('h', 2 * i as u32), a));
        new_generators.push((Generator::indexed('h', 2 * i as u32 + 1), b));
    }
    let names: Vec<Generator> = new_generators.iter().map(|(n, _)| *n).collect();
    let lhs = Word::from_syllables(g.iter().map(|x| (*x, 1)).chain(g.iter().map(|x| (*x, -1))));
    SubstitutionCertificate {
        base_signs: Vec::new(),
        new_generators,
        lhs,
        rhs_pattern: commutators(&names),
        expected_signs: Vec::new(),
    }
}

/// `(a1 b1 c1 d1)...(ak bk ck dk)(c1^-1 d1^-1 a1^-1 b1^-1)...(ck^-1 dk^-1
/// ak^-1 bk^-1)` as `2k` commutators. Step `i` contributes
/// `[V^-1 a_i, b_i V]` and the `(b_i a_i)`-conjugate of `[V^-1 c_i, d_i V]`,
/// where `V` is the tail product of the first `i - 1` quadruples.
pub fn interleaved_product_to_commutators(k: usize) -> SubstitutionCertificate {
    let gen = |c: char, i: usize| Generator::indexed(c, i as u32);
    let l = |c: char, i: usize| Word::letter(gen(c, i));
    let tail = |i: usize| {
        Word::from_syllables([
            (gen('c', i), -1),
            (gen('d', i), -1),
            (gen('a', i), -1),
            (gen('b', i), -1),
        ])
    };
    let mut heads = Vec::new();
    let mut tails = Vec::new();
    let mut v = Word::identity();
    let mut new_generators = Vec::with_capacity(4 * k);
    for i in 1..=k {
        let vi = v.inverse();
        let ba = &l('b', i) * &l('a', i);
        let conj = |w: Word| &(&ba * &w) * &ba.inverse();
        let words = [
            &vi * &l('a', i),
            &l('b', i) * &v,
            conj(&vi * &l('c', i)),
            conj(&l('d', i) * &v),
        ];
        for w in words {
            let n = new_generators.len() as u32;
            new_generators.push((Generator::indexed('h', n), w));
        }
        heads.extend(['a', 'b', 'c', 'd'].map(|c| (gen(c, i), 1)));
        tails.extend(
            tail(i)
                .syllables()
                .iter()
                .map(|s| (s.generator, s.exponent)),
        );
        v = &v * &tail(i);
    }
    let names: Vec<Generator> = new_generators.iter().map(|(n, _)| *n).collect();
    SubstitutionCertificate {
        base_signs: Vec::new(),
        new_generators,
        lhs: Word::from_syllables(heads.into_iter().chain(tails)),
        rhs_pattern: commutators(&names),
        expected_signs: Vec::new(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SurfaceCase {
    /// `[x,y] z^2 = u^2 v^2 w^2`.
    CommutToSquares,
    /// `[x,y][z,t] = [x',y'][z',t']` with all new signs `-1`.
    OrientCommutators,
    /// `t^2 u^2 v^2 w^2 = t'^2 u'^2 v'^2 w'^2` with one sign `+1` left.
    FourSquaresNormalize,
}

impl SurfaceCase {
    pub const ALL: [SurfaceCase; 3] = [
        SurfaceCase::CommutToSquares,
        SurfaceCase::OrientCommutators,
        SurfaceCase::FourSquaresNormalize,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SurfaceCase::CommutToSquares => "commut-to-squares",
            SurfaceCase::OrientCommutators => "orient-commutators",
            SurfaceCase::FourSquaresNormalize => "four-squares-normalize",
        }
    }
}

impl FromStr for SurfaceCase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        SurfaceCase::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::UnknownCase(s.to_string()))
    }
}

impl fmt::Display for SurfaceCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub fn surface_word_substitution(case: SurfaceCase) -> SubstitutionCertificate {
    let p = Generator::plain;
    let l = |c: char| Word::letter(p(c));
    let inv = |c: char| Word::power(p(c), -1);
    let sq = |c: char| Word::power(p(c), 2);
    let primed = |c: char| p(c).primed();
    let squares = |gs: &[Generator]| Word::from_syllables(gs.iter().map(|g| (*g, 2)));
    match case {
        SurfaceCase::CommutToSquares => {
            let (x, y, z) = (l('x'), l('y'), l('z'));
            let u = &x * &z;
            let v = &(&z * &x * &z).inverse() * &(&y * &z);
            let w = &(&y * &z).inverse() * &sq('z');
            let names = [p('u'), p('v'), p('w')];
            SubstitutionCertificate {
                base_signs: vec![(p('x'), 1), (p('y'), 1), (p('z'), -1)],
                new_generators: names.into_iter().zip([u, v, w]).collect(),
                lhs: &Word::commutator(&x, &y) * &sq('z'),
                rhs_pattern: squares(&names),
                expected_signs: names.into_iter().map(|n| (n, -1)).collect(),
            }
        }
        SurfaceCase::OrientCommutators => {
            let (x, y, z, t) = (l('x'), l('y'), l('z'), l('t'));
            let yz = &inv('y') * &z;
            let x1 = &(&x * &y) * &z;
            let y1 = &inv('z') * &inv('x');
            let z1 = &(&yz.inverse() * &z) * &yz;
            let t1 = &(&t * &inv('z')) * &yz;
            let names = ['x', 'y', 'z', 't'].map(primed);
            SubstitutionCertificate {
                base_signs: vec![(p('x'), 1), (p('y'), 1), (p('z'), -1), (p('t'), -1)],
                new_generators: names.into_iter().zip([x1, y1, z1, t1]).collect(),
                lhs: &Word::commutator(&x, &y) * &Word::commutator(&z, &t),
                rhs_pattern: commutators(&names),
                expected_signs: names.into_iter().map(|n| (n, -1)).collect(),
            }
        }
        SurfaceCase::FourSquaresNormalize => {
            let (u, v, w) = (l('u'), l('v'), l('w'));
            // t' = t u^2 v u^-1, then t'u' = u^2 v w, u'w' = u v w^2,
            // u'v'w' = w solved left to right.
            let t1 = Word::product(&[l('t'), sq('u'), v.clone(), inv('u')]);
            let u1 = &t1.inverse() * &Word::product(&[sq('u'), v.clone(), w.clone()]);
            let w1 = &u1.inverse() * &Word::product(&[u, v, sq('w')]);
            let v1 = Word::product(&[u1.inverse(), w, w1.inverse()]);
            let names = ['t', 'u', 'v', 'w'].map(primed);
            SubstitutionCertificate {
                base_signs: vec![(p('t'), 1), (p('u'), 1), (p('v'), 1), (p('w'), -1)],
                new_generators: names.into_iter().zip([t1, u1, v1, w1]).collect(),
                lhs: squares(&['t', 'u', 'v', 'w'].map(p)),
                rhs_pattern: squares(&names),
                expected_signs: names.into_iter().zip([1, -1, -1, -1]).collect(),
            }
        }
    }
}
