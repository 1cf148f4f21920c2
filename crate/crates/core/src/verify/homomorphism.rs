use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::report::{run_batches, Batch, VerificationReport};
use super::sample::{random_composable_shape, random_diagram};
use crate::diagram::{compose, enumerate, twisted_compose, Family, Partition, TwistedElement};
use crate::error::{Error, Result};
use crate::rep::{mu, phi, reduced, rho, rho_d, IndexedMatrix, Labels, Parity};
use crate::semiring::Semiring;

/// Which representation a suite exercises.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RepSelector {
    Phi,
    ReducedOdd,
    ReducedEven,
    Mu,
    Rho,
    RhoD(u32),
}

impl FromStr for RepSelector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "phi" => RepSelector::Phi,
            "reduced-odd" | "odd" => RepSelector::ReducedOdd,
            "reduced-even" | "even" => RepSelector::ReducedEven,
            "mu" => RepSelector::Mu,
            "rho" => RepSelector::Rho,
            _ => {
                let d = s
                    .strip_prefix("rho-d:")
                    .or_else(|| s.strip_prefix("rho_d:"))
                    .and_then(|d| d.parse().ok())
                    .ok_or_else(|| Error::Parse {
                        position: 0,
                        message: format!("unknown representation `{s}`"),
                    })?;
                RepSelector::RhoD(d)
            }
        })
    }
}

impl fmt::Display for RepSelector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RepSelector::Phi => f.write_str("phi"),
            RepSelector::ReducedOdd => f.write_str("reduced-odd"),
            RepSelector::ReducedEven => f.write_str("reduced-even"),
            RepSelector::Mu => f.write_str("mu"),
            RepSelector::Rho => f.write_str("rho"),
            RepSelector::RhoD(d) => write!(f, "rho-d:{d}"),
        }
    }
}

/// Whether the semiring meets the hypothesis of the theorem behind a representation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Hypothesis {
    Holds,
    /// The check still runs; failures are the expected outcome.
    Violated(String),
    /// The representation cannot be built over this semiring.
    Inapplicable(String),
}

impl RepSelector {
    fn is_twisted(self) -> bool {
        matches!(self, RepSelector::Rho | RepSelector::RhoD(_))
    }

    /// Whether `rep(x ⊕ y) = rep(x) ⊗ rep(y)` is expected.
    pub fn preserves_tensor(self) -> bool {
        matches!(
            self,
            RepSelector::Phi | RepSelector::Rho | RepSelector::RhoD(_)
        )
    }

    pub fn hypothesis<S: Semiring>(self, s: &S) -> Hypothesis {
        let desc = s.descriptor();
        match self {
            RepSelector::Rho if !desc.is_char_zero() => Hypothesis::Inapplicable(format!(
                "rho needs characteristic 0; {} has characteristic {}",
                desc.name, desc.characteristic
            )),
            RepSelector::RhoD(d) if !desc.is_ring_of_char_pow2(d) => {
                Hypothesis::Inapplicable(format!(
                    "rho-d:{d} needs a ring of characteristic 2^{}; {} has characteristic {}",
                    d + 1,
                    desc.name,
                    desc.characteristic
                ))
            }
            RepSelector::Rho | RepSelector::RhoD(_) => Hypothesis::Holds,
            _ if !desc.is_idempotent => Hypothesis::Violated(format!(
                "{} is not idempotent, so {self} is not expected to be a morphism",
                desc.name
            )),
            _ => Hypothesis::Holds,
        }
    }

    fn check_family(self, family: Family) -> Result<()> {
        let ok = match self {
            RepSelector::ReducedOdd | RepSelector::ReducedEven => family != Family::Partition,
            RepSelector::Mu => family == Family::TemperleyLieb,
            _ => true,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::WrongFamily(format!(
                "{self} is not defined on the {family} family"
            )))
        }
    }

    pub fn matrix<S: Semiring>(self, x: &TwistedElement, s: &S) -> Result<IndexedMatrix<S>> {
        let plain = || match x {
            TwistedElement::Twisted { twist: 0, diagram } => Ok(diagram),
            _ => Err(Error::Inapplicable(format!(
                "{self} acts on untwisted diagrams, got {x}"
            ))),
        };
        match self {
            RepSelector::Phi => phi(plain()?, s),
            RepSelector::ReducedOdd => reduced(plain()?, Parity::Odd, s),
            RepSelector::ReducedEven => reduced(plain()?, Parity::Even, s),
            RepSelector::Mu => mu(plain()?, s),
            RepSelector::Rho => rho(x, s),
            RepSelector::RhoD(d) => rho_d(x, d, s),
        }
    }

    /// The identity matrix on the labels `rep` uses for row size `n`.
    fn identity_labels(self, n: usize) -> Result<Labels> {
        use crate::rep::SubsetOrdering;
        match self {
            RepSelector::ReducedOdd => Labels::with_parity(n, 1),
            RepSelector::ReducedEven => Labels::with_parity(n, 0),
            RepSelector::Mu => Labels::ordered(SubsetOrdering::EvenGap, n),
            _ => Labels::binary(n),
        }
    }

    /// Elements of the (possibly twisted) hom-set `(m, n)`.
    pub fn domain(
        self,
        family: Family,
        m: usize,
        n: usize,
        max_twist: u64,
    ) -> Result<Vec<TwistedElement>> {
        let diagrams = enumerate(family, m, n)?;
        Ok(match self {
            RepSelector::Rho => (0..=max_twist)
                .flat_map(|i| {
                    diagrams
                        .iter()
                        .map(move |a| TwistedElement::new(i, a.clone()))
                })
                .collect(),
            RepSelector::RhoD(d) => {
                let mut out: Vec<TwistedElement> = (0..=u64::from(d))
                    .flat_map(|i| {
                        diagrams
                            .iter()
                            .map(move |a| TwistedElement::new(i, a.clone()))
                    })
                    .collect();
                if !diagrams.is_empty() {
                    out.push(TwistedElement::Zero { m, n });
                }
                out
            }
            _ => diagrams
                .into_iter()
                .map(|a| TwistedElement::new(0, a))
                .collect(),
        })
    }

    fn product(self, x: &TwistedElement, y: &TwistedElement) -> Result<TwistedElement> {
        match (self, x, y) {
            (RepSelector::Rho, _, _) => twisted_compose(x, y, None),
            (RepSelector::RhoD(d), _, _) => twisted_compose(x, y, Some(u64::from(d))),
            (
                _,
                TwistedElement::Twisted { diagram: a, .. },
                TwistedElement::Twisted { diagram: b, .. },
            ) => Ok(TwistedElement::new(0, compose(a, b)?.product)),
            _ => Err(Error::Inapplicable(
                "zero element outside a truncated category".into(),
            )),
        }
    }

    fn tensor(self, x: &TwistedElement, y: &TwistedElement) -> Result<TwistedElement> {
        match self {
            RepSelector::RhoD(d) => x.tensor_sum(y, Some(u64::from(d))),
            _ => x.tensor_sum(y, None),
        }
    }

    fn show(self, x: &TwistedElement) -> String {
        match (self.is_twisted(), x) {
            (false, TwistedElement::Twisted { diagram, .. }) => diagram.to_string(),
            _ => x.to_string(),
        }
    }
}

/// How composable pairs are drawn.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sample {
    /// Every composable pair with row sizes up to the bound.
    Exhaustive,
    /// This many seeded random pairs with row sizes up to the bound.
    Random(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HomomorphismSpec {
    pub rep: RepSelector,
    pub family: Family,
    pub max_size: usize,
    pub sample: Sample,
    /// Largest twist used by the untruncated twisted representation.
    pub max_twist: u64,
    pub seed: u64,
}

impl HomomorphismSpec {
    pub fn exhaustive(rep: RepSelector, family: Family, max_size: usize) -> Self {
        HomomorphismSpec {
            rep,
            family,
            max_size,
            sample: Sample::Exhaustive,
            max_twist: 4,
            seed: 0,
        }
    }

    pub fn random(
        rep: RepSelector,
        family: Family,
        max_size: usize,
        pairs: usize,
        seed: u64,
    ) -> Self {
        HomomorphismSpec {
            rep,
            family,
            max_size,
            sample: Sample::Random(pairs),
            max_twist: 4,
            seed,
        }
    }
}

fn mismatch<S: Semiring>(
    what: &str,
    lhs: &IndexedMatrix<S>,
    rhs: &IndexedMatrix<S>,
) -> Option<String> {
    (lhs != rhs).then(|| what.to_string())
}

/// Checks that `rep` preserves composition, identities, the involution and
/// (where expected) the tensor product.
pub fn check_homomorphism<S: Semiring>(
    spec: &HomomorphismSpec,
    s: &S,
) -> Result<VerificationReport> {
    let started = Instant::now();
    let rep = spec.rep;
    rep.check_family(spec.family)?;
    let name = s.descriptor().name;
    let sample = match spec.sample {
        Sample::Exhaustive => "exhaustive".to_string(),
        Sample::Random(k) => format!("{k} random pairs"),
    };
    let params = format!(
        "family {}, row sizes <= {}, {name}, {sample}",
        spec.family, spec.max_size
    );
    let suite = format!("homomorphism[{rep}]");
    let mut report = match rep.hypothesis(s) {
        Hypothesis::Inapplicable(why) => {
            return Ok(VerificationReport::inapplicable(suite, params, why))
        }
        Hypothesis::Violated(why) => {
            let mut r = VerificationReport::new(suite, params);
            r.note(format!("hypothesis violated: {why}"));
            r
        }
        Hypothesis::Holds => VerificationReport::new(suite, params),
    };
    if rep.is_twisted() {
        report.note(match rep {
            RepSelector::RhoD(d) => format!(
                "twists 0..={d} plus the zero element; untruncated twists up to {}",
                d + 2
            ),
            _ => format!("twists 0..={}", spec.max_twist),
        });
    }
    let k = spec.max_size;
    let family = spec.family;

    // Images of every element with row sizes <= k.
    let mut domains: Vec<Vec<Vec<TwistedElement>>> = Vec::new();
    let mut images: Vec<Vec<Vec<IndexedMatrix<S>>>> = Vec::new();
    let exhaustive = spec.sample == Sample::Exhaustive;
    for m in 0..=k {
        let mut drow = Vec::new();
        let mut irow = Vec::new();
        for n in 0..=k {
            let dom = if exhaustive {
                rep.domain(family, m, n, spec.max_twist)?
            } else {
                Vec::new()
            };
            let imgs = dom
                .iter()
                .map(|x| rep.matrix(x, s))
                .collect::<Result<Vec<_>>>()?;
            drow.push(dom);
            irow.push(imgs);
        }
        domains.push(drow);
        images.push(irow);
    }

    // Identities.
    for n in 0..=k {
        let got = rep.matrix(&TwistedElement::identity(n), s)?;
        let want = IndexedMatrix::identity(s.clone(), rep.identity_labels(n)?);
        report.check(mismatch(
            &format!("rep(id_{n}) is not the identity matrix"),
            &got,
            &want,
        ));
    }

    match spec.sample {
        Sample::Exhaustive => {
            // Involution.
            for m in 0..=k {
                for n in 0..=k {
                    for (x, img) in domains[m][n].iter().zip(&images[m][n]) {
                        let star = rep.matrix(&x.involution(), s)?;
                        report.check(mismatch(
                            &format!("rep(x*) != rep(x)^T for x = {}", rep.show(x)),
                            &star,
                            &img.transpose(),
                        ));
                    }
                }
            }
            // Composition.
            let mut items = Vec::new();
            for m in 0..=k {
                for n in 0..=k {
                    for t in 0..=k {
                        for ia in 0..domains[m][n].len() {
                            if !domains[n][t].is_empty() {
                                items.push((m, n, t, ia));
                            }
                        }
                    }
                }
            }
            let batch = run_batches(&items, |&(m, n, t, ia), b: &mut Batch| {
                let x = &domains[m][n][ia];
                let rx = &images[m][n][ia];
                for (y, ry) in domains[n][t].iter().zip(&images[n][t]) {
                    b.check(composition_case(rep, s, x, y, rx, ry));
                }
            });
            report.absorb(batch);
            // Tensor.
            if rep.preserves_tensor() {
                let all: Vec<(&TwistedElement, &IndexedMatrix<S>)> = domains
                    .iter()
                    .flatten()
                    .zip(images.iter().flatten())
                    .flat_map(|(d, i)| d.iter().zip(i))
                    .collect();
                let batch = run_batches(&all, |&(x, rx), b: &mut Batch| {
                    for &(y, ry) in &all {
                        b.check(tensor_case(rep, s, x, y, rx, ry));
                    }
                });
                report.absorb(batch);
            }
            if let RepSelector::RhoD(d) = rep {
                for m in 0..=k {
                    for n in 0..=k {
                        for a in enumerate(family, m, n)? {
                            for i in 0..=u64::from(d) + 2 {
                                let want = phi(&a, s)?.scale(&s.pow2(i));
                                let got = rep.matrix(
                                    &TwistedElement::new(i, a.clone()).truncate(u64::from(d)),
                                    s,
                                )?;
                                report.check(mismatch(
                                    &format!("2^{i} phi(a) disagrees with the truncated image for a = {a}"),
                                    &got,
                                    &want,
                                ));
                            }
                        }
                    }
                }
            }
        }
        Sample::Random(count) => {
            use rand::Rng;
            let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
            let twist = |rng: &mut ChaCha8Rng, x: Partition| -> TwistedElement {
                match rep {
                    RepSelector::Rho => TwistedElement::new(rng.gen_range(0..=spec.max_twist), x),
                    RepSelector::RhoD(d) => TwistedElement::new(rng.gen_range(0..=u64::from(d)), x),
                    _ => TwistedElement::new(0, x),
                }
            };
            let mut pairs = Vec::with_capacity(count);
            for _ in 0..count {
                let (m, n, t) = random_composable_shape(family, k, &mut rng);
                let a = random_diagram(family, m, n, &mut rng)?.expect("inhabited");
                let b = random_diagram(family, n, t, &mut rng)?.expect("inhabited");
                let (x, y) = (twist(&mut rng, a), twist(&mut rng, b));
                pairs.push((x, y));
            }
            let batch = run_batches(&pairs, |(x, y), b: &mut Batch| {
                let outcome = (|| -> Result<Option<String>> {
                    let (rx, ry) = (rep.matrix(x, s)?, rep.matrix(y, s)?);
                    let mut msg = composition_case(rep, s, x, y, &rx, &ry);
                    let star = rep.matrix(&x.involution(), s)?;
                    if msg.is_none() && star != rx.transpose() {
                        msg = Some(format!("rep(x*) != rep(x)^T for x = {}", rep.show(x)));
                    }
                    if msg.is_none() && rep.preserves_tensor() {
                        msg = tensor_case(rep, s, x, y, &rx, &ry);
                    }
                    Ok(msg)
                })();
                b.check(outcome.unwrap_or_else(|e| Some(e.to_string())));
            });
            report.absorb(batch);
            report = report.with_seed(spec.seed);
        }
    }
    Ok(report.finish(started))
}

fn composition_case<S: Semiring>(
    rep: RepSelector,
    s: &S,
    x: &TwistedElement,
    y: &TwistedElement,
    rx: &IndexedMatrix<S>,
    ry: &IndexedMatrix<S>,
) -> Option<String> {
    let result = (|| -> Result<Option<String>> {
        let xy = rep.product(x, y)?;
        let want = rep.matrix(&xy, s)?;
        let got = rx.mat_mul(ry)?;
        Ok((got != want).then(|| {
            format!(
                "rep(x)rep(y) != rep(xy) for x = {}, y = {}, xy = {}",
                rep.show(x),
                rep.show(y),
                rep.show(&xy)
            )
        }))
    })();
    result.unwrap_or_else(|e| Some(e.to_string()))
}

fn tensor_case<S: Semiring>(
    rep: RepSelector,
    s: &S,
    x: &TwistedElement,
    y: &TwistedElement,
    rx: &IndexedMatrix<S>,
    ry: &IndexedMatrix<S>,
) -> Option<String> {
    let result = (|| -> Result<Option<String>> {
        let want = rep.matrix(&rep.tensor(x, y)?, s)?;
        Ok((rx.kronecker(ry)? != want).then(|| {
            format!(
                "rep(x (+) y) != rep(x) (x) rep(y) for x = {}, y = {}",
                rep.show(x),
                rep.show(y)
            )
        }))
    })();
    result.unwrap_or_else(|e| Some(e.to_string()))
}

/// Checks that `rep` is injective on the hom-set `(m, n)` of `family`.
pub fn check_faithful<S: Semiring>(
    rep: RepSelector,
    family: Family,
    m: usize,
    n: usize,
    s: &S,
) -> Result<VerificationReport> {
    let started = Instant::now();
    rep.check_family(family)?;
    let params = format!(
        "family {family}, hom-set ({m},{n}), {}",
        s.descriptor().name
    );
    let suite = format!("faithful[{rep}]");
    if let Hypothesis::Inapplicable(why) = rep.hypothesis(s) {
        return Ok(VerificationReport::inapplicable(suite, params, why));
    }
    let mut report = VerificationReport::new(suite, params);
    let domain = rep.domain(family, m, n, 4)?;
    let mut seen: HashMap<Vec<S::Elem>, usize> = HashMap::with_capacity(domain.len());
    for (i, x) in domain.iter().enumerate() {
        let image = rep.matrix(x, s)?.data().to_vec();
        let clash = seen.insert(image, i);
        report.check(clash.map(|j| {
            format!(
                "{} and {} have the same image",
                rep.show(&domain[j]),
                rep.show(x)
            )
        }));
    }
    report.note(format!("{} elements", domain.len()));
    Ok(report.finish(started))
}

/// The congruence predicted to be the kernel of a reduced Brauer map.
pub fn predicted_kernel(rep: RepSelector, a: &Partition, b: &Partition) -> bool {
    if a == b {
        return true;
    }
    if a.m() % 2 == 1 || a.n() % 2 == 1 {
        return false;
    }
    match rep {
        RepSelector::ReducedOdd => a.rank() == 0 && b.rank() == 0,
        RepSelector::ReducedEven => {
            let (sa, sb) = (a.statistics(), b.statistics());
            sa.rank == 2 && sb.rank == 2 && sa.ker == sb.ker && sa.coker == sb.coker
        }
        _ => false,
    }
}

/// Compares the pairs identified by a reduced Brauer map on `B_{m,n}` with
/// the predicted kernel.
pub fn check_kernel<S: Semiring>(
    rep: RepSelector,
    m: usize,
    n: usize,
    s: &S,
) -> Result<VerificationReport> {
    let started = Instant::now();
    if !matches!(rep, RepSelector::ReducedOdd | RepSelector::ReducedEven) {
        return Err(Error::Inapplicable(format!(
            "kernel mode is defined for the reduced maps, not {rep}"
        )));
    }
    let mut report = VerificationReport::new(
        format!("kernel[{rep}]"),
        format!("B_{{{m},{n}}}, {}", s.descriptor().name),
    );
    let all = enumerate(Family::Brauer, m, n)?;
    let images = all
        .iter()
        .map(|a| rep.matrix(&TwistedElement::new(0, a.clone()), s))
        .collect::<Result<Vec<_>>>()?;
    let (mut identified, mut predicted) = (0u64, 0u64);
    for i in 0..all.len() {
        for j in i + 1..all.len() {
            let same = images[i] == images[j];
            let expect = predicted_kernel(rep, &all[i], &all[j]);
            identified += u64::from(same);
            predicted += u64::from(expect);
            report.check((same != expect).then(|| {
                format!(
                    "{} and {}: images {}, predicted {}",
                    all[i],
                    all[j],
                    if same { "equal" } else { "differ" },
                    if expect { "identified" } else { "separated" }
                )
            }));
        }
    }
    report.note(format!(
        "{identified} identified pairs, {predicted} predicted, among {} elements",
        all.len()
    ));
    Ok(report.finish(started))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semiring::{Boolean, Integer, IntegerMod};

    #[test]
    fn selector_names() {
        for r in [
            RepSelector::Phi,
            RepSelector::ReducedOdd,
            RepSelector::Mu,
            RepSelector::RhoD(2),
        ] {
            assert_eq!(r.to_string().parse::<RepSelector>().unwrap(), r);
        }
        assert!("psi".parse::<RepSelector>().is_err());
    }

    #[test]
    fn phi_small_boolean_and_integer() {
        let spec = HomomorphismSpec::exhaustive(RepSelector::Phi, Family::Partition, 1);
        assert!(check_homomorphism(&spec, &Boolean).unwrap().passed());
        let int = check_homomorphism(&spec, &Integer).unwrap();
        assert!(!int.passed() && int.failure_count > 0);
        assert!(int.notes.iter().any(|n| n.contains("hypothesis violated")));
    }

    #[test]
    fn gating() {
        let spec = HomomorphismSpec::exhaustive(RepSelector::Rho, Family::Partition, 1);
        let r = check_homomorphism(&spec, &Boolean).unwrap();
        assert_eq!(r.status, super::super::report::Status::Inapplicable);
        let spec = HomomorphismSpec::exhaustive(RepSelector::RhoD(1), Family::Partition, 1);
        assert!(check_homomorphism(&spec, &IntegerMod::pow2(2).unwrap())
            .unwrap()
            .passed());
        let spec = HomomorphismSpec::exhaustive(RepSelector::Mu, Family::Brauer, 1);
        assert!(check_homomorphism(&spec, &Boolean).is_err());
    }

    #[test]
    fn faithful_small() {
        let r = check_faithful(RepSelector::Phi, Family::Partition, 2, 2, &Boolean).unwrap();
        assert!(r.passed() && r.cases == 15);
        assert!(check_kernel(RepSelector::ReducedOdd, 2, 2, &Boolean)
            .unwrap()
            .passed());
    }
}
