//! Abelianization of finite presentations via integer Smith normal form.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::group::Presentation;
use crate::z2hom::Gf2Matrix;

/// Dense integer matrix, rows = relators, columns = generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn from_rows<T: Into<BigInt> + Copy>(rows: &[Vec<T>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = IntMatrix::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged matrix");
            for (j, v) in row.iter().enumerate() {
                m[(i, j)] = (*v).into();
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

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] -= q * row[src]
    fn row_axpy(&mut self, dst: usize, src: usize, q: &BigInt) {
        for j in 0..self.cols {
            let t = &self.data[src * self.cols + j] * q;
            self.data[dst * self.cols + j] -= t;
        }
    }

    /// col[dst] -= q * col[src]
    fn col_axpy(&mut self, dst: usize, src: usize, q: &BigInt) {
        for i in 0..self.rows {
            let t = &self.data[i * self.cols + src] * q;
            self.data[i * self.cols + dst] -= t;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;

    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

pub fn exponent_matrix(p: &Presentation) -> IntMatrix {
    let gens = p.generators();
    let mut m = IntMatrix::zeros(p.relators().len(), gens.len());
    for (i, r) in p.relators().iter().enumerate() {
        for s in r.syllables() {
            let j = p
                .position(s.generator)
                .expect("presentation relators use declared generators");
            m[(i, j)] += s.exponent;
        }
    }
    m
}

/// Nonzero invariant factors `d1 | d2 | ... | dr`, all positive.
///
/// Pivots on the entry of least absolute value to limit coefficient growth.
pub fn smith_normal_form(m: &IntMatrix) -> Vec<BigInt> {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut diag = Vec::new();
    for t in 0..rows.min(cols) {
        let Some((pi, pj)) = min_nonzero(&a, t) else {
            break;
        };
        a.swap_rows(t, pi);
        a.swap_cols(t, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if !a[(i, t)].is_zero() {
                    let q = a[(i, t)].div_floor(&a[(t, t)]);
                    a.row_axpy(i, t, &q);
                    if !a[(i, t)].is_zero() {
                        dirty = true;
                    }
                }
            }
            for j in t + 1..cols {
                if !a[(t, j)].is_zero() {
                    let q = a[(t, j)].div_floor(&a[(t, t)]);
                    a.col_axpy(j, t, &q);
                    if !a[(t, j)].is_zero() {
                        dirty = true;
                    }
                }
            }
            if dirty {
                // Remainders are smaller than the pivot: move the least one in.
                let (pi, pj) = min_in_cross(&a, t);
                a.swap_rows(t, pi);
                a.swap_cols(t, pj);
                continue;
            }
            // Row and column are clear; enforce divisibility on the rest.
            let pivot = a[(t, t)].clone();
            let offender = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !a[(i, j)].is_multiple_of(&pivot));
            match offender {
                Some((i, _)) => {
                    let minus_one = -BigInt::one();
                    a.row_axpy(t, i, &minus_one);
                }
                None => break,
            }
        }
        diag.push(a[(t, t)].abs());
    }
    diag
}

fn min_nonzero(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..a.rows {
        for j in t..a.cols {
            let v = &a[(i, j)];
            if v.is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| v.abs() < a[(bi, bj)].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

fn min_in_cross(a: &IntMatrix, t: usize) -> (usize, usize) {
    let mut best = (t, t);
    let candidates = (t..a.rows)
        .map(|i| (i, t))
        .chain((t + 1..a.cols).map(|j| (t, j)));
    for (i, j) in candidates {
        let v = &a[(i, j)];
        if !v.is_zero() && (a[best].is_zero() || v.abs() < a[best].abs()) {
            best = (i, j);
        }
    }
    best
}

/// First homology: `Z^rank ⊕ Z/d1 ⊕ ... ⊕ Z/dk` with `1 < d1 | d2 | ...`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct H1Invariants {
    pub rank: usize,
    #[serde(with = "decimal_strings")]
    pub torsion: Vec<BigInt>,
}

/// Torsion coefficients travel as decimal strings so they survive any size.
mod decimal_strings {
    use num_bigint::BigInt;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(ToString::to_string))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|t| t.parse().map_err(D::Error::custom))
            .collect()
    }
}

impl H1Invariants {
    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    /// `dim H1 ⊗ Z/2`.
    pub fn z2_dim(&self) -> usize {
        self.rank + self.torsion.iter().filter(|d| d.is_even()).count()
    }
}

impl fmt::Display for H1Invariants {
    /// `Z^2 + Z/2 + Z/4`; the trivial group prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

pub fn h1(p: &Presentation) -> H1Invariants {
    let d = smith_normal_form(&exponent_matrix(p));
    H1Invariants {
        rank: p.generators().len() - d.len(),
        torsion: d.into_iter().filter(|x| !x.is_one()).collect(),
    }
}

/// `dim H1 ⊗ Z/2`, computed from the mod-2 exponent matrix.
pub fn h1_z2_dim(p: &Presentation) -> usize {
    p.generators().len() - Gf2Matrix::from_presentation(p).rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{Generator, Word};
    use crate::seifert::{SeifertInvariants, TypeSymbol};

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn poincare() -> Presentation {
        SeifertInvariants::with_pairs(-1, TypeSymbol::O1, 0, &[(2, 1), (3, 1), (5, 1)])
            .fundamental_presentation()
            .unwrap()
    }

    #[test]
    fn exponent_matrices() {
        let a = Generator::plain('a');
        let p = Presentation::new(vec![a], vec![]).unwrap();
        let m = exponent_matrix(&p);
        assert_eq!((m.rows(), m.cols()), (0, 1));

        let m = exponent_matrix(&poincare());
        let nonzero: Vec<Vec<BigInt>> = (0..m.rows())
            .map(|i| m.row(i).to_vec())
            .filter(|r| r.iter().any(|x| !x.is_zero()))
            .collect();
        assert_eq!(
            nonzero,
            vec![
                ints(&[2, 0, 0, 1]),
                ints(&[0, 3, 0, 1]),
                ints(&[0, 0, 5, 1]),
                ints(&[1, 1, 1, 1])
            ]
        );
        // commutator rows vanish
        assert!(m.row(0).iter().all(Zero::is_zero));
    }

    #[test]
    fn snf_examples() {
        let id = IntMatrix::from_rows(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        assert_eq!(smith_normal_form(&id), ints(&[1, 1, 1]));
        let m = IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]]);
        assert_eq!(smith_normal_form(&m), ints(&[2, 4]));
        assert!(smith_normal_form(&IntMatrix::zeros(3, 2)).is_empty());
        let m = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        assert_eq!(smith_normal_form(&m), ints(&[1, 6]));
    }

    #[test]
    fn h1_examples() {
        let h = Generator::h();
        let z = Presentation::new(vec![h], vec![]).unwrap();
        assert_eq!(
            h1(&z),
            H1Invariants {
                rank: 1,
                torsion: vec![]
            }
        );
        assert_eq!(h1_z2_dim(&z), 1);

        assert!(h1(&poincare()).is_trivial());
        assert_eq!(h1_z2_dim(&poincare()), 0);

        let t = SeifertInvariants::with_pairs(0, TypeSymbol::O1, 1, &[])
            .fundamental_presentation()
            .unwrap();
        assert_eq!(
            h1(&t),
            H1Invariants {
                rank: 3,
                torsion: vec![]
            }
        );
        assert_eq!(h1_z2_dim(&t), 3);

        let a = Generator::plain('a');
        let z4 = Presentation::new(vec![a], vec![Word::power(a, -4)]).unwrap();
        assert_eq!(h1(&z4).to_string(), "Z/4");
    }

    #[test]
    fn rendering() {
        let h = H1Invariants {
            rank: 2,
            torsion: ints(&[2, 4]),
        };
        assert_eq!(h.to_string(), "Z^2 + Z/2 + Z/4");
        assert_eq!(
            H1Invariants {
                rank: 0,
                torsion: vec![]
            }
            .to_string(),
            "0"
        );
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        /// gcd of all k×k minors, by cofactor expansion over subsets.
        fn minor_gcd(m: &[Vec<i64>], k: usize) -> BigInt {
            fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
                (0u32..1 << n)
                    .filter(|x| x.count_ones() as usize == k)
                    .map(|x| (0..n).filter(|i| x >> i & 1 == 1).collect())
                    .collect()
            }
            fn det(m: &[Vec<BigInt>]) -> BigInt {
                if m.is_empty() {
                    return BigInt::one();
                }
                let mut total = BigInt::zero();
                for j in 0..m.len() {
                    let minor: Vec<Vec<BigInt>> = m[1..]
                        .iter()
                        .map(|r| {
                            r.iter()
                                .enumerate()
                                .filter(|(c, _)| *c != j)
                                .map(|(_, v)| v.clone())
                                .collect()
                        })
                        .collect();
                    let term = &m[0][j] * det(&minor);
                    if j % 2 == 0 {
                        total += term
                    } else {
                        total -= term
                    }
                }
                total
            }
            let mut g = BigInt::zero();
            for rows in subsets(m.len(), k) {
                for cols in subsets(m[0].len(), k) {
                    let sub: Vec<Vec<BigInt>> = rows
                        .iter()
                        .map(|&i| cols.iter().map(|&j| BigInt::from(m[i][j])).collect())
                        .collect();
                    g = g.gcd(&det(&sub));
                }
            }
            g
        }

        proptest! {
            #[test]
            fn invariant_factors_match_minor_gcds(
                (r, c, data) in (1usize..5, 1usize..5)
                    .prop_flat_map(|(r, c)| (Just(r), Just(c), prop::collection::vec(-6i64..=6, r * c)))
            ) {
                let rows: Vec<Vec<i64>> = data.chunks(c).map(<[i64]>::to_vec).collect();
                let d = smith_normal_form(&IntMatrix::from_rows(&rows));
                prop_assert!(d.windows(2).all(|w| w[1].is_multiple_of(&w[0])));
                let mut prefix = BigInt::one();
                for k in 1..=r.min(c) {
                    let expected = minor_gcd(&rows, k);
                    if k <= d.len() {
                        prefix *= &d[k - 1];
                        prop_assert_eq!(&prefix, &expected, "k = {}", k);
                    } else {
                        prop_assert!(expected.is_zero(), "k = {}", k);
                    }
                }
            }
        }
    }
}
