use std::time::Instant;

use super::combinatorics::{
    check_count_formula, check_generators, check_h_resolution, check_ones_lemma, check_orbits,
    check_order_correspondence, check_twisting_identity,
};
use super::homomorphism::{
    check_faithful, check_homomorphism, check_kernel, HomomorphismSpec, RepSelector,
};
use super::linear_checks::{
    check_cap_identity, check_closures, check_decomposition_witnesses, check_independence,
    check_linear_morphism, check_submodule_invariance,
};
use super::report::VerificationReport;
use crate::diagram::{compose, Family, Partition};
use crate::error::{Error, Result};
use crate::rep::phi;
use crate::semiring::{semiring_laws_check, Integer, IntegerMod, Semiring, SemiringSelector};
use crate::with_semiring;

/// A named suite and the defaults it runs with.
#[derive(Clone, Copy, Debug)]
pub struct SuiteInfo {
    pub name: &'static str,
    pub description: &'static str,
}

pub const SUITES: &[SuiteInfo] = &[
    SuiteInfo { name: "twisting-identity", description: "Phi(a,b)+Phi(ab,c) = Phi(a,bc)+Phi(b,c) and associativity; exhaustive at sizes <= 3, 10^4 random at sizes <= 5" },
    SuiteInfo { name: "count-formula", description: "intertwining-set counts, Z0 minimality; exhaustive over P_{2,2} x P_{2,2}" },
    SuiteInfo { name: "ones-lemma", description: "three descriptions of the ones of phi(a) agree on P_{2,3}" },
    SuiteInfo { name: "refinement-order", description: "refinement matches reverse entrywise order on P_{2,2}, P_{2,3}" },
    SuiteInfo { name: "phi", description: "phi is a faithful morphism over Boolean and max-plus (or --semiring)" },
    SuiteInfo { name: "phi-converse", description: "phi(a)^2 != phi(a) over Integer for the two-block a in P_n, n <= 4" },
    SuiteInfo { name: "rho", description: "twisted rho over Integer (or --semiring), sizes <= 2, twists <= 4" },
    SuiteInfo { name: "rho-d", description: "truncated rho^d over Z/2^(d+1) for d = 1, 2" },
    SuiteInfo { name: "brauer-reduced", description: "reduced Brauer maps: morphisms, injective for odd rows <= 5, kernels on B_{4,4}" },
    SuiteInfo { name: "mu", description: "mu over Boolean: morphism at sizes <= 5, injective for m+n <= 10" },
    SuiteInfo { name: "generators", description: "TL factorisations for m+n <= 8, h = e e* for n <= 6" },
    SuiteInfo { name: "h-resolution", description: "phi(h_{i,n}) against the Kronecker forms for n <= 6" },
    SuiteInfo { name: "orbits", description: "orbits of subsets under P_n (n <= 3) and B_n (n <= 4)" },
    SuiteInfo { name: "linear-morphism", description: "linear phi at delta = 2 on diagrams of sizes <= 2 and random combinations" },
    SuiteInfo { name: "cap-identity", description: "c* c = 2^k id at delta = 2" },
    SuiteInfo { name: "independence", description: "rank of phi images: TL_n full for n <= 4, P_2 and B_3 deficient" },
    SuiteInfo { name: "decomposition", description: "V+/V- invariance, closures of seeds, non-faithfulness witnesses" },
    SuiteInfo { name: "semiring-laws", description: "semiring axioms and descriptor flags for every built-in semiring" },
];

/// Options shared by all suites.
#[derive(Clone, Copy, Debug, Default)]
pub struct SuiteOptions {
    pub seed: u64,
    /// Replaces the default semiring(s) of suites that take one.
    pub semiring: Option<SemiringSelector>,
}

pub fn suite_names() -> Vec<&'static str> {
    SUITES.iter().map(|s| s.name).collect()
}

/// Runs a named suite; `all` runs every suite in registry order.
pub fn run_suite(name: &str, options: &SuiteOptions) -> Result<Vec<VerificationReport>> {
    if name == "all" {
        let mut out = Vec::new();
        for info in SUITES {
            out.extend(run_suite(info.name, options)?);
        }
        return Ok(out);
    }
    let seed = options.seed;
    let semirings = |defaults: &[SemiringSelector]| -> Vec<SemiringSelector> {
        options
            .semiring
            .map_or_else(|| defaults.to_vec(), |s| vec![s])
    };
    Ok(match name {
        "twisting-identity" => vec![check_twisting_identity(
            Family::Partition,
            3,
            10_000,
            5,
            seed,
        )?],
        "count-formula" => vec![check_count_formula(2, 2, 2)?],
        "ones-lemma" => vec![check_ones_lemma(2, 3)?],
        "refinement-order" => vec![
            check_order_correspondence(2, 2)?,
            check_order_correspondence(2, 3)?,
        ],
        "phi" => {
            let mut out = Vec::new();
            for sel in semirings(&[SemiringSelector::Boolean, SemiringSelector::Tropical]) {
                let mut faithful = Vec::new();
                with_semiring!(sel, |s| {
                    out.push(check_homomorphism(
                        &HomomorphismSpec::exhaustive(RepSelector::Phi, Family::Partition, 2),
                        s,
                    )?);
                    out.push(check_homomorphism(
                        &HomomorphismSpec::random(
                            RepSelector::Phi,
                            Family::Partition,
                            4,
                            1000,
                            seed,
                        ),
                        s,
                    )?);
                    for total in 0..=6 {
                        for m in 0..=total {
                            faithful.push(check_faithful(
                                RepSelector::Phi,
                                Family::Partition,
                                m,
                                total - m,
                                s,
                            )?);
                        }
                    }
                });
                out.push(merge(
                    &format!("faithful[phi, {sel}]"),
                    "every hom-set with m+n <= 6",
                    faithful,
                ));
            }
            out
        }
        "phi-converse" => vec![check_phi_converse(4)?],
        "rho" => {
            let mut out = Vec::new();
            for sel in semirings(&[SemiringSelector::Integer]) {
                with_semiring!(sel, |s| out.extend(twisted_suite(RepSelector::Rho, s)?));
            }
            out
        }
        "rho-d" => {
            let mut out = Vec::new();
            for d in [1u32, 2] {
                match options.semiring {
                    Some(sel) => {
                        with_semiring!(sel, |s| out.extend(twisted_suite(RepSelector::RhoD(d), s)?))
                    }
                    None => out.extend(twisted_suite(
                        RepSelector::RhoD(d),
                        &IntegerMod::for_truncation(d)?,
                    )?),
                }
            }
            out
        }
        "brauer-reduced" => {
            let sel = options.semiring.unwrap_or(SemiringSelector::Boolean);
            with_semiring!(sel, |s| brauer_suite(s)?)
        }
        "mu" => {
            let sel = options.semiring.unwrap_or(SemiringSelector::Boolean);
            with_semiring!(sel, |s| {
                let mut out = vec![check_homomorphism(
                    &HomomorphismSpec::exhaustive(RepSelector::Mu, Family::TemperleyLieb, 5),
                    s,
                )?];
                let mut faithful = Vec::new();
                for total in (0..=10).step_by(2) {
                    for m in 0..=total {
                        faithful.push(check_faithful(
                            RepSelector::Mu,
                            Family::TemperleyLieb,
                            m,
                            total - m,
                            s,
                        )?);
                    }
                }
                out.push(merge(
                    "faithful[mu]",
                    &format!("every hom-set with m+n <= 10, {}", s.descriptor().name),
                    faithful,
                ));
                out
            })
        }
        "generators" => vec![check_generators(8, 6)?],
        "h-resolution" => vec![check_h_resolution(6)?],
        "orbits" => {
            let mut out = Vec::new();
            for n in 0..=3 {
                out.push(check_orbits(Family::Partition, n)?);
            }
            for n in 0..=4 {
                out.push(check_orbits(Family::Brauer, n)?);
            }
            out
        }
        "linear-morphism" => vec![check_linear_morphism(2, 1000, 3, seed)?],
        "cap-identity" => vec![check_cap_identity(8)?],
        "independence" => vec![check_independence(4)?],
        "decomposition" => vec![
            check_submodule_invariance(3)?,
            check_closures(3, 100, seed)?,
            check_decomposition_witnesses(&[2, 3], 2)?,
        ],
        "semiring-laws" => {
            let all = [
                SemiringSelector::Boolean,
                SemiringSelector::Natural,
                SemiringSelector::Integer,
                SemiringSelector::Rational,
                SemiringSelector::Tropical,
                SemiringSelector::Mod(IntegerMod::pow2(2)?),
                SemiringSelector::Mod(IntegerMod::pow2(3)?),
            ];
            let mut out = Vec::new();
            for sel in semirings(&all) {
                out.push(with_semiring!(sel, |s| laws_report(s, seed)));
            }
            out
        }
        _ => {
            return Err(Error::Parse {
                position: 0,
                message: format!(
                    "unknown suite `{name}`; available: all, {}",
                    suite_names().join(", ")
                ),
            })
        }
    })
}

/// Folds several reports into one, keeping every failure and note.
pub fn merge(
    suite: &str,
    parameters: &str,
    reports: Vec<VerificationReport>,
) -> VerificationReport {
    use super::report::Status;
    let started = Instant::now();
    let mut out = VerificationReport::new(suite, parameters);
    let mut total_ms = 0.0;
    let mut any_applicable = reports.is_empty();
    for r in reports {
        total_ms += r.wall_time_ms;
        if r.status != Status::Inapplicable {
            any_applicable = true;
        }
        out.seed = out.seed.or(r.seed);
        let base = out.cases;
        out.cases += r.cases;
        let recorded = r.failures.len() as u64;
        for f in r.failures {
            out.fail(base + f.case, format!("{}: {}", r.suite, f.counterexample));
        }
        out.failure_count += r.failure_count - recorded;
        if r.status != Status::Pass {
            for n in r.notes {
                out.note(format!("{} ({}): {n}", r.suite, r.parameters));
            }
        }
    }
    if !any_applicable {
        out.status = Status::Inapplicable;
    }
    let mut out = out.finish(started);
    out.wall_time_ms += total_ms;
    out
}

fn twisted_suite<S: Semiring>(rep: RepSelector, s: &S) -> Result<Vec<VerificationReport>> {
    let mut out = vec![check_homomorphism(
        &HomomorphismSpec::exhaustive(rep, Family::Partition, 2),
        s,
    )?];
    let mut faithful = Vec::new();
    for m in 0..=2 {
        for n in 0..=2 {
            faithful.push(check_faithful(rep, Family::Partition, m, n, s)?);
        }
    }
    out.push(merge(
        &format!("faithful[{rep}]"),
        &format!("every hom-set with m, n <= 2, {}", s.descriptor().name),
        faithful,
    ));
    Ok(out)
}

fn brauer_suite<S: Semiring>(s: &S) -> Result<Vec<VerificationReport>> {
    let mut out = Vec::new();
    for rep in [RepSelector::ReducedOdd, RepSelector::ReducedEven] {
        out.push(check_homomorphism(
            &HomomorphismSpec::exhaustive(rep, Family::Brauer, 3),
            s,
        )?);
        let mut faithful = Vec::new();
        for m in [1, 3, 5] {
            for n in [1, 3, 5] {
                faithful.push(check_faithful(rep, Family::Brauer, m, n, s)?);
            }
        }
        out.push(merge(
            &format!("faithful[{rep}]"),
            &format!("B_{{m,n}} with m, n in {{1,3,5}}, {}", s.descriptor().name),
            faithful,
        ));
        out.push(check_kernel(rep, 4, 4, s)?);
    }
    Ok(out)
}

/// `φ(a)² ≠ φ(a)` over the integers for `a = {[n]}, {[n]'}`, `1 ≤ n ≤ max_n`.
pub fn check_phi_converse(max_n: usize) -> Result<VerificationReport> {
    let started = Instant::now();
    let mut report = VerificationReport::new(
        "phi-converse",
        format!("two-block a in P_n, 1 <= n <= {max_n}, int"),
    );
    for n in 1..=max_n {
        let upper: Vec<i32> = (1..=n as i32).collect();
        let lower: Vec<i32> = upper.iter().map(|j| -j).collect();
        let a = Partition::from_blocks(n, n, &[upper, lower])?;
        let m = phi(&a, &Integer)?;
        let square = m.mat_mul(&m)?;
        report.check((square == m).then(|| format!("phi(a)^2 = phi(a) for a = {a}")));
        // In P_n itself a is idempotent, with one floating component.
        let aa = compose(&a, &a)?;
        report.check(
            (aa.product != a || aa.floats != 1)
                .then(|| format!("a = {a} is not idempotent in P_{n}")),
        );
    }
    Ok(report.finish(started))
}

fn laws_report<S: Semiring>(s: &S, seed: u64) -> VerificationReport {
    let started = Instant::now();
    let laws = semiring_laws_check(s, 2000, seed);
    let mut report = VerificationReport::new(
        format!("semiring-laws[{}]", laws.semiring),
        format!(
            "{} triples, {}",
            laws.triples_checked,
            if laws.exhaustive {
                "exhaustive"
            } else {
                "sampled"
            }
        ),
    );
    report.cases = laws.triples_checked as u64;
    for (k, v) in laws.violations.iter().enumerate() {
        report.fail(k as u64, v.clone());
    }
    if !laws.flags_consistent {
        report.fail(
            laws.triples_checked as u64,
            "descriptor flags disagree with the measured 1 + 1",
        );
    }
    report.with_seed(seed).finish(started)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite() {
        assert!(run_suite("nope", &SuiteOptions::default()).is_err());
    }

    #[test]
    fn quick_suites_pass() {
        for name in [
            "count-formula",
            "ones-lemma",
            "phi-converse",
            "semiring-laws",
            "cap-identity",
        ] {
            for r in run_suite(name, &SuiteOptions::default()).unwrap() {
                assert!(r.passed(), "{}", r.to_text());
            }
        }
    }

    #[test]
    fn merge_keeps_failures() {
        let mut a = VerificationReport::new("a", "p");
        a.check(None);
        a.check(Some("bad".into()));
        let b = VerificationReport::new("b", "q");
        let m = merge(
            "m",
            "",
            vec![a.finish(Instant::now()), b.finish(Instant::now())],
        );
        assert_eq!((m.cases, m.failure_count), (2, 1));
        assert!(!m.passed());
        assert_eq!(m.failures[0].counterexample, "a: bad");
    }
}
