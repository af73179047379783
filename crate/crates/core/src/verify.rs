//! Cross-checks closed-form covers against Reidemeister–Schreier kernels.
//!
//! Verification compares first homology (rank and torsion) together with
//! the orbifold Euler characteristic and Euler number relations. Full
//! isomorphism of the two groups is not attempted.

use std::collections::BTreeMap;
use std::fmt::Display;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::abelian::{h1, H1Invariants};
use crate::covers::{classify, double_cover, CaseTag};
use crate::error::Error;
use crate::group::Generator;
use crate::rs::{kernel_presentation, Transversal};
use crate::seifert::{FiberPair, SeifertInvariants, TypeSymbol};
use crate::z2hom::{check_epimorphism, enumerate_epimorphisms, is_valid, Z2Hom};

fn as_text<T: Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

fn as_text_opt<T: Display, S: Serializer>(v: &Option<T>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(v) => s.collect_str(v),
        None => s.serialize_none(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub stage: String,
    pub expected: String,
    pub got: String,
}

impl Failure {
    fn new(stage: &str, expected: impl Display, got: impl Display) -> Self {
        Failure {
            stage: stage.into(),
            expected: expected.to_string(),
            got: got.to_string(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    #[serde(serialize_with = "as_text")]
    pub symbol: SeifertInvariants,
    #[serde(serialize_with = "as_text")]
    pub phi: Z2Hom,
    pub tag: CaseTag,
    #[serde(serialize_with = "as_text_opt")]
    pub predicted: Option<SeifertInvariants>,
    pub predicted_h1: Option<H1Invariants>,
    pub oracle_h1: H1Invariants,
    pub chi_orb_ok: Option<bool>,
    /// `None` when the Euler number relation does not apply.
    pub euler_ok: Option<bool>,
    pub pass: bool,
    pub failures: Vec<Failure>,
}

/// Predicts the cover in closed form and checks it against the oracle.
pub fn verify_cover(inv: &SeifertInvariants, phi: &Z2Hom) -> Result<VerifyReport, Error> {
    let p = inv.fundamental_presentation()?;
    check_epimorphism(&p, phi)?;
    match double_cover(inv, phi) {
        Ok(predicted) => verify_prediction(inv, phi, &predicted),
        Err(err) => {
            let tag = classify(inv, phi)?;
            let oracle = kernel_presentation(&p, phi, None, false)?;
            Ok(VerifyReport {
                symbol: inv.clone(),
                phi: phi.clone(),
                tag: tag.tag,
                predicted: None,
                predicted_h1: None,
                oracle_h1: h1(&oracle),
                chi_orb_ok: None,
                euler_ok: None,
                pass: false,
                failures: vec![Failure::new("cover", "a cover symbol", err)],
            })
        }
    }
}

/// Checks an arbitrary candidate for the cover of `(inv, φ)`.
pub fn verify_prediction(
    inv: &SeifertInvariants,
    phi: &Z2Hom,
    predicted: &SeifertInvariants,
) -> Result<VerifyReport, Error> {
    let p = inv.fundamental_presentation()?;
    let case = classify(inv, phi)?;
    let oracle_h1 = h1(&kernel_presentation(&p, phi, None, false)?);
    let mut failures = Vec::new();

    let validation = predicted.validate();
    let predicted_h1 = if validation.ok {
        Some(h1(&predicted.fundamental_presentation()?))
    } else {
        failures.push(Failure::new(
            "validate",
            "valid invariants",
            validation.violations.join("; "),
        ));
        None
    };
    if let Some(ph) = &predicted_h1 {
        if *ph != oracle_h1 {
            failures.push(Failure::new("h1", &oracle_h1, ph));
        }
    }

    let two = BigRational::from_integer(BigInt::from(2));
    let expected_chi = if case.tag == CaseTag::FiberCase {
        inv.chi_orb()
    } else {
        inv.chi_orb() * &two
    };
    let chi_orb_ok = expected_chi == predicted.chi_orb();
    if !chi_orb_ok {
        failures.push(Failure::new("chi_orb", &expected_chi, predicted.chi_orb()));
    }

    let euler_ok = if matches!(inv.kind, TypeSymbol::O1 | TypeSymbol::N2) {
        let expected = match case.tag {
            CaseTag::FiberCase => Some(inv.euler_number() / &two),
            CaseTag::BaseOrdinary => Some(inv.euler_number() * &two),
            _ => None,
        };
        expected.map(|want| {
            let got = predicted.euler_number();
            let ok = want == got;
            if !ok {
                failures.push(Failure::new("euler", &want, &got));
            }
            ok
        })
    } else {
        None
    };

    Ok(VerifyReport {
        symbol: inv.clone(),
        phi: phi.clone(),
        tag: case.tag,
        predicted: Some(predicted.clone()),
        predicted_h1,
        oracle_h1,
        chi_orb_ok: Some(chi_orb_ok),
        euler_ok,
        pass: failures.is_empty(),
        failures,
    })
}

/// Oracle `H1` for every admissible transversal element `q`.
pub fn transversal_sweep(
    inv: &SeifertInvariants,
    phi: &Z2Hom,
) -> Result<Vec<(Generator, H1Invariants)>, Error> {
    let p = inv.fundamental_presentation()?;
    Transversal::all(phi)
        .iter()
        .map(|t| Ok((t.q(), h1(&kernel_presentation(&p, phi, Some(t), false)?))))
        .collect()
}

/// One base `φ` (with `φ(v_j) = 0` for all `j`) and its valid `v`-variants.
#[derive(Clone, Debug, Serialize)]
pub struct KillVjGroup {
    #[serde(serialize_with = "as_text")]
    pub base: Z2Hom,
    pub variants: Vec<VerifyReport>,
    /// Every variant has the same predicted symbol and oracle `H1`.
    pub consistent: bool,
}

impl KillVjGroup {
    pub fn pass(&self) -> bool {
        self.consistent && self.variants.iter().all(|r| r.pass)
    }
}

const MAX_VARIANT_BITS: usize = 16;

/// For every epimorphism with `φ(h) = 0` and some `φ(s_k) = 1`, runs all
/// assignments on the `v_j` and checks that the cover does not depend on
/// them.
pub fn killvj_check(inv: &SeifertInvariants) -> Result<Vec<KillVjGroup>, Error> {
    let p = inv.fundamental_presentation()?;
    let vs: Vec<Generator> = (1..=inv.base_generator_count() as u32)
        .map(Generator::v)
        .collect();
    if vs.len() > MAX_VARIANT_BITS {
        return Err(Error::TooLarge {
            what: "v-variants per base homomorphism",
            value: 1 << vs.len().min(63),
            limit: 1 << MAX_VARIANT_BITS,
        });
    }
    let mut bases: Vec<Z2Hom> = Vec::new();
    for phi in enumerate_epimorphisms(&p)? {
        let qualifies = phi.value(Generator::h()) == 0
            && (1..=inv.fiber_count() as u32).any(|k| phi.value(Generator::s(k)) == 1);
        if !qualifies {
            continue;
        }
        let mut base = phi;
        for v in &vs {
            base.set(*v, 0)?;
        }
        if !bases.contains(&base) {
            bases.push(base);
        }
    }
    let mut groups = Vec::with_capacity(bases.len());
    for base in bases {
        let mut variants = Vec::new();
        for mask in 0u64..1 << vs.len() {
            let mut phi = base.clone();
            for (i, v) in vs.iter().enumerate() {
                phi.set(*v, (mask >> i & 1) as u8)?;
            }
            if is_valid(&p, &phi) {
                variants.push(verify_cover(inv, &phi)?);
            }
        }
        let canonical = |r: &VerifyReport| r.predicted.as_ref().map(SeifertInvariants::canonical);
        let consistent = variants
            .windows(2)
            .all(|w| canonical(&w[0]) == canonical(&w[1]) && w[0].oracle_h1 == w[1].oracle_h1);
        groups.push(KillVjGroup {
            base,
            variants,
            consistent,
        });
    }
    Ok(groups)
}

/// Bounds and seed for [`fuzz`].
#[derive(Clone, Debug, Serialize)]
pub struct FuzzConfig {
    pub count: usize,
    pub seed: u64,
    pub max_e: i64,
    pub max_g: u32,
    pub max_n: usize,
    pub max_a: i64,
    pub max_b: i64,
    /// Types to draw from; those whose minimum genus exceeds `max_g` are
    /// skipped.
    pub types: Vec<TypeSymbol>,
    /// Epimorphisms per symbol that also get a full transversal sweep.
    pub transversal_per_symbol: usize,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        FuzzConfig {
            count: 100,
            seed: 1,
            max_e: 3,
            max_g: 2,
            max_n: 3,
            max_a: 9,
            max_b: 9,
            types: TypeSymbol::ALL.to_vec(),
            transversal_per_symbol: 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FuzzFailure {
    pub case: usize,
    pub symbol: String,
    pub phi: String,
    pub stage: String,
    pub expected: String,
    pub got: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct FuzzSummary {
    pub cases: usize,
    pub epimorphisms: usize,
    pub failures: Vec<FuzzFailure>,
    /// Verified epimorphisms per case tag and input type.
    pub coverage: BTreeMap<String, BTreeMap<String, usize>>,
    pub symbols_by_type: BTreeMap<String, usize>,
    /// `(inv, φ)` pairs whose oracle was recomputed for at least two `q`.
    pub transversal_checked: usize,
    /// Base homomorphisms whose `v`-variants were compared.
    pub killvj_groups: usize,
    pub euler_checked: usize,
}

impl FuzzSummary {
    pub fn coverage_of(&self, tag: CaseTag, kind: TypeSymbol) -> usize {
        self.coverage
            .get(&tag.to_string())
            .and_then(|m| m.get(kind.name()))
            .copied()
            .unwrap_or(0)
    }
}

fn random_pair(rng: &mut ChaCha8Rng, max_a: i64, max_b: i64) -> FiberPair {
    loop {
        let a = rng.gen_range(1..=max_a);
        let b = rng.gen_range(-max_b..=max_b);
        if a.gcd(&b) == 1 {
            return FiberPair::new(a, b);
        }
    }
}

/// Deterministic random valid invariants within the bounds of `config`.
pub fn random_symbols(config: &FuzzConfig) -> Vec<SeifertInvariants> {
    let types: Vec<TypeSymbol> = config
        .types
        .iter()
        .copied()
        .filter(|t| t.min_genus() <= config.max_g)
        .collect();
    if types.is_empty() || config.max_a < 1 {
        return Vec::new();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    (0..config.count)
        .map(|_| {
            let kind = types[rng.gen_range(0..types.len())];
            let genus = rng.gen_range(kind.min_genus()..=config.max_g);
            let n = rng.gen_range(0..=config.max_n);
            let e = rng.gen_range(-config.max_e..=config.max_e);
            let fibers = (0..n)
                .map(|_| random_pair(&mut rng, config.max_a, config.max_b))
                .collect();
            SeifertInvariants::new(e, kind, genus, fibers)
        })
        .collect()
}

/// Runs every check on a seeded random corpus. Failures are data.
pub fn fuzz(config: &FuzzConfig) -> FuzzSummary {
    let mut summary = FuzzSummary::default();
    for (case, inv) in random_symbols(config).into_iter().enumerate() {
        summary.cases += 1;
        *summary
            .symbols_by_type
            .entry(inv.kind.name().to_string())
            .or_default() += 1;
        check_symbol(case, &inv, config, &mut summary);
    }
    summary.failures.sort_by_key(|f| f.case);
    summary
}

fn check_symbol(case: usize, inv: &SeifertInvariants, config: &FuzzConfig, out: &mut FuzzSummary) {
    let symbol = inv.to_string();
    let fail = |out: &mut FuzzSummary, phi: String, f: Failure| {
        out.failures.push(FuzzFailure {
            case,
            symbol: symbol.clone(),
            phi,
            stage: f.stage,
            expected: f.expected,
            got: f.got,
        })
    };
    let p = match inv.fundamental_presentation() {
        Ok(p) => p,
        Err(e) => return fail(out, String::new(), Failure::new("presentation", "ok", e)),
    };
    let epis = match enumerate_epimorphisms(&p) {
        Ok(v) => v,
        Err(e) => return fail(out, String::new(), Failure::new("enumerate", "ok", e)),
    };
    let expected_count = (1u64 << h1(&p).z2_dim()) - 1;
    if epis.len() as u64 != expected_count {
        fail(
            out,
            String::new(),
            Failure::new("count", expected_count, epis.len()),
        );
    }

    let mut swept = 0;
    for phi in &epis {
        out.epimorphisms += 1;
        let report = match verify_cover(inv, phi) {
            Ok(r) => r,
            Err(e) => {
                fail(out, phi.to_string(), Failure::new("verify", "a report", e));
                continue;
            }
        };
        *out.coverage
            .entry(report.tag.to_string())
            .or_default()
            .entry(inv.kind.name().to_string())
            .or_default() += 1;
        if report.euler_ok.is_some() {
            out.euler_checked += 1;
        }
        for f in report.failures {
            fail(out, phi.to_string(), f);
        }

        if swept < config.transversal_per_symbol && phi.ones().count() >= 2 {
            swept += 1;
            match transversal_sweep(inv, phi) {
                Ok(results) => {
                    out.transversal_checked += 1;
                    for (q, got) in &results[1..] {
                        if *got != results[0].1 {
                            let f = Failure::new(
                                "transversal",
                                format!("{} (q = {})", results[0].1, results[0].0),
                                format!("{got} (q = {q})"),
                            );
                            fail(out, phi.to_string(), f);
                        }
                    }
                }
                Err(e) => fail(out, phi.to_string(), Failure::new("transversal", "ok", e)),
            }
        }
    }

    match killvj_check(inv) {
        Ok(groups) => {
            for g in groups {
                out.killvj_groups += 1;
                if !g.consistent {
                    let first = &g.variants[0];
                    let odd = g
                        .variants
                        .iter()
                        .find(|r| r.predicted != first.predicted || r.oracle_h1 != first.oracle_h1)
                        .expect("inconsistent group has a differing variant");
                    let show = |r: &VerifyReport| {
                        format!(
                            "{} / {}",
                            r.predicted.as_ref().map_or("-".into(), ToString::to_string),
                            r.oracle_h1
                        )
                    };
                    fail(
                        out,
                        g.base.to_string(),
                        Failure::new("killvj", show(first), show(odd)),
                    );
                }
            }
        }
        Err(e) => fail(out, String::new(), Failure::new("killvj", "ok", e)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use TypeSymbol::*;

    fn sym(e: i64, t: TypeSymbol, g: u32, pairs: &[(i64, i64)]) -> SeifertInvariants {
        SeifertInvariants::with_pairs(e, t, g, pairs)
    }

    fn hom(inv: &SeifertInvariants, ones: &[Generator]) -> Z2Hom {
        Z2Hom::with_ones(inv.generators(), ones).unwrap()
    }

    #[test]
    fn verify_examples() {
        let inv = sym(2, O1, 0, &[(3, 1), (3, 1)]);
        let phi = hom(&inv, &[Generator::s(1), Generator::s(2), Generator::h()]);
        let r = verify_cover(&inv, &phi).unwrap();
        assert!(r.pass, "{:?}", r.failures);
        assert_eq!(r.euler_ok, Some(true));

        let inv = sym(1, N2, 1, &[]);
        let phi = hom(&inv, &[Generator::v(1)]);
        let r = verify_cover(&inv, &phi).unwrap();
        assert!(r.pass);
        assert_eq!(r.predicted, Some(sym(2, O1, 0, &[])));
        assert_eq!(r.oracle_h1.to_string(), "Z/2");
        assert_eq!(r.predicted_h1.unwrap().to_string(), "Z/2");
    }

    #[test]
    fn mutated_prediction_is_caught() {
        let inv = sym(1, N2, 1, &[]);
        let phi = hom(&inv, &[Generator::v(1)]);
        let mut bad = double_cover(&inv, &phi).unwrap();
        bad.e += 1;
        let r = verify_prediction(&inv, &phi, &bad).unwrap();
        assert!(!r.pass);
        assert!(r.failures.iter().any(|f| f.stage == "h1"));
    }

    #[test]
    fn fiber_reversal_subcase_needs_type_n1() {
        // φ on the v_j equals the fiber-reversal character: the ordinary
        // formula's n3 ↦ n4 / n4 ↦ n4 type is wrong here, and n1 is right.
        let inv = sym(0, N4, 3, &[]);
        let phi = hom(&inv, &[Generator::v(3)]);
        let r = verify_cover(&inv, &phi).unwrap();
        assert!(r.pass, "{:?}", r.failures);
        assert_eq!(r.predicted, Some(sym(0, N1, 4, &[])));
        let literal = verify_prediction(&inv, &phi, &sym(0, N4, 4, &[])).unwrap();
        assert!(literal.failures.iter().any(|f| f.stage == "h1"));

        let inv = sym(1, N3, 2, &[(3, 1)]);
        let phi = hom(&inv, &[Generator::v(2)]);
        let r = verify_cover(&inv, &phi).unwrap();
        assert!(r.pass, "{:?}", r.failures);
        let literal = sym(0, N4, 2, &[(3, 1), (3, 1)]);
        let literal = verify_prediction(&inv, &phi, &literal).unwrap();
        assert!(literal.failures.iter().any(|f| f.stage == "validate"));
    }

    #[test]
    fn invalid_phi_is_an_error() {
        let inv = sym(1, N2, 1, &[]);
        assert!(verify_cover(&inv, &Z2Hom::zero(inv.generators())).is_err());
    }

    #[test]
    fn killvj_examples() {
        let groups = killvj_check(&sym(1, O1, 1, &[(2, 1), (2, 1)])).unwrap();
        assert!(!groups.is_empty());
        for g in &groups {
            assert_eq!(g.variants.len(), 4);
            assert!(g.pass());
        }

        let inv = sym(0, N1, 1, &[(2, 1), (2, 1)]);
        let groups = killvj_check(&inv).unwrap();
        let base = hom(&inv, &[Generator::s(1), Generator::s(2)]);
        let g = groups.iter().find(|g| g.base == base).unwrap();
        assert_eq!(g.variants.len(), 2);
        assert!(g.pass());

        assert!(killvj_check(&sym(0, O1, 1, &[(3, 1), (5, 2)]))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn transversal_choices_agree() {
        let inv = sym(1, O1, 1, &[(2, 1), (2, 1)]);
        let phi = hom(&inv, &[Generator::s(1), Generator::s(2), Generator::v(1)]);
        let results = transversal_sweep(&inv, &phi).unwrap();
        assert_eq!(results.len(), 3);
        assert!(results.iter().all(|(_, h)| *h == results[0].1));
    }

    #[test]
    fn fuzz_small_configs() {
        let empty = fuzz(&FuzzConfig {
            count: 0,
            ..FuzzConfig::default()
        });
        assert_eq!((empty.cases, empty.failures.len()), (0, 0));

        let lens = fuzz(&FuzzConfig {
            count: 20,
            max_g: 0,
            max_n: 0,
            types: vec![O1],
            ..FuzzConfig::default()
        });
        assert_eq!(lens.cases, 20);
        assert!(lens.failures.is_empty(), "{:?}", lens.failures);
    }

    #[test]
    fn fuzz_is_deterministic() {
        let config = FuzzConfig {
            count: 5,
            seed: 7,
            ..FuzzConfig::default()
        };
        assert_eq!(random_symbols(&config), random_symbols(&config));
        let a = serde_json::to_string(&fuzz(&config)).unwrap();
        let b = serde_json::to_string(&fuzz(&config)).unwrap();
        assert_eq!(a, b);
    }
}
