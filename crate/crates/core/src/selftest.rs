//! The acceptance suite as a deterministic, seeded report.

use std::fmt;

use crate::duoidal::{
    braided_cauchy, check_duoidal, check_duoidal_species, section_identity, species_section_identity,
    structure_maps_for, DuoidalError, DuoidalPair,
};
use crate::graded::{cauchy, hilbert, series_compose, series_mul, to_series, GradedObject};
use crate::linalg::{q, Matrix, Rational};
use crate::measuring::{
    check_associativity, check_measuring, check_transpose, check_unit_laws, classical_measuring, compose_measurings,
    convolution_monoid, duality_check, grouplike_check, grouplike_coalgebra, induced_map, truncated_polynomial_algebra,
    GrouplikeCandidate,
};
use crate::random::Gen;
use crate::serial::{canonicalize, load, save, Document};
use crate::species::{egf, species_substitution, SymmetricSequence};
use crate::structures::{check_structure, example_library, EXAMPLES};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriterionResult {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelftestReport {
    pub seed: u64,
    pub criteria: Vec<CriterionResult>,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        self.criteria.iter().all(|c| c.passed)
    }
}

impl fmt::Display for SelftestReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "selftest seed {}", self.seed)?;
        for c in &self.criteria {
            let verdict = if c.passed { "PASS" } else { "FAIL" };
            writeln!(f, "{verdict}  {:>2} {}: {}", c.id, c.name, c.detail)?;
        }
        let n = self.criteria.iter().filter(|c| c.passed).count();
        writeln!(f, "{n}/{} criteria passed", self.criteria.len())
    }
}

/// Tally of passes; the detail lists the failing cases first.
#[derive(Default)]
struct Tally {
    total: usize,
    failed: Vec<String>,
}

impl Tally {
    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.total += 1;
        if !ok {
            self.failed.push(what());
        }
    }

    fn result(self, id: usize, name: &'static str, summary: String) -> CriterionResult {
        let passed = self.failed.is_empty() && self.total > 0;
        let detail = if passed {
            summary
        } else {
            format!("{} of {} cases failed: {}", self.failed.len(), self.total, self.failed.join("; "))
        };
        CriterionResult { id, name, passed, detail }
    }
}

pub const DUOIDAL_SAMPLES: usize = 20;
pub const MEASURING_SAMPLES: usize = 100;

/// Truncation used for the random duoidal samples of `pair`.
pub fn duoidal_truncation(pair: DuoidalPair) -> usize {
    match pair {
        DuoidalPair::SubOverHadamard | DuoidalPair::HadamardOverSubPositive => 3,
        _ => 4,
    }
}

/// Truncation for random measurings; the Cauchy `◊` hom objects grow fastest.
pub fn measuring_truncation(pair: DuoidalPair) -> usize {
    match pair {
        DuoidalPair::CauchyOverHadamard => 1,
        DuoidalPair::HadamardOverSubPositive => 3,
        _ => 2,
    }
}

/// Truncation for composable chains, whose sources are iterated hom objects.
pub const CHAIN_TRUNCATION: usize = 2;

pub const MEASURING_PAIRS: [DuoidalPair; 3] =
    [DuoidalPair::CauchyOverHadamard, DuoidalPair::HadamardOverCauchy, DuoidalPair::HadamardOverSubPositive];

fn duoidal_axioms(g: &mut Gen) -> CriterionResult {
    let mut t = Tally::default();
    for pair in DuoidalPair::ALL {
        for k in 0..DUOIDAL_SAMPLES {
            let s = g.duoidal_samples(pair, duoidal_truncation(pair), 2);
            let ok = check_duoidal(pair, &s).map(|r| r.passed()).unwrap_or(false);
            t.record(ok, || format!("{pair} sample {k}"));
        }
    }
    for pair in [DuoidalPair::CauchyOverHadamard, DuoidalPair::HadamardOverCauchy] {
        for k in 0..DUOIDAL_SAMPLES {
            let s = g.species_samples(4, 2);
            let ok = check_duoidal_species(pair, &s).map(|r| r.passed()).unwrap_or(false);
            t.record(ok, || format!("species {pair} sample {k}"));
        }
    }
    let total = t.total;
    t.result(1, "duoidal axioms", format!("{total} samples, four graded and two species pairs"))
}

fn section(g: &mut Gen) -> CriterionResult {
    let mut t = Tally::default();
    for pair in [DuoidalPair::CauchyOverHadamard, DuoidalPair::SubOverHadamard] {
        for k in 0..DUOIDAL_SAMPLES {
            let n = duoidal_truncation(pair);
            let objs: Vec<GradedObject> = (0..4)
                .map(|_| if pair == DuoidalPair::SubOverHadamard { g.positive_object(n, 2) } else { g.graded_object(n, 2) })
                .collect();
            let r = section_identity(pair, [&objs[0], &objs[1], &objs[2], &objs[3]]);
            t.record(matches!(r, Ok(None)), || format!("{pair} sample {k}"));
        }
    }
    for k in 0..DUOIDAL_SAMPLES {
        let objs: Vec<SymmetricSequence> = (0..4).map(|_| g.species(3, 2, false)).collect();
        let r = species_section_identity(DuoidalPair::CauchyOverHadamard, [&objs[0], &objs[1], &objs[2], &objs[3]]);
        t.record(matches!(r, Ok(None)), || format!("species sample {k}"));
    }
    let total = t.total;
    t.result(2, "interchange section identity", format!("{total} samples"))
}

fn transpose_equivalence(g: &mut Gen) -> CriterionResult {
    let mut t = Tally::default();
    let mut counts = Vec::new();
    for pair in MEASURING_PAIRS {
        let d = pair.data();
        let (mut pass, mut fail) = (0, 0);
        for k in 0..MEASURING_SAMPLES {
            let m = match g.measuring(&d, measuring_truncation(pair)) {
                Ok(m) => m,
                Err(e) => {
                    t.record(false, || format!("{pair} sample {k}: {e}"));
                    continue;
                }
            };
            let m = if k % 2 == 0 { m } else { g.perturb(&m) };
            let a = check_measuring(&d, &m).map(|r| r.passed());
            let b = check_transpose(&d, &m).map(|r| r.passed());
            match (a, b) {
                (Ok(a), Ok(b)) => {
                    if a {
                        pass += 1;
                    } else {
                        fail += 1;
                    }
                    t.record(a == b, || format!("{pair} sample {k}: measuring {a}, transpose {b}"));
                }
                _ => t.record(false, || format!("{pair} sample {k}: error")),
            }
        }
        t.record(pass >= 10 && fail >= 10, || format!("{pair}: only {pass} passing and {fail} failing"));
        counts.push(format!("{pair} {pass}/{fail}"));
    }
    t.result(3, "transpose equivalence", format!("100% agreement, pass/fail {}", counts.join(", ")))
}

fn convolution(g: &mut Gen) -> CriterionResult {
    let mut t = Tally::default();
    let instances = [
        ("cauchy q=1", braided_cauchy(q(1)), 3),
        ("cauchy q=-1", braided_cauchy(q(-1)), 3),
        ("hadamard-over-cauchy", DuoidalPair::HadamardOverCauchy.data(), 3),
        ("cauchy-over-hadamard", DuoidalPair::CauchyOverHadamard.data(), 2),
        ("hadamard-over-sub-positive", DuoidalPair::HadamardOverSubPositive.data(), 3),
    ];
    for (name, d, n) in &instances {
        for k in 0..DUOIDAL_SAMPLES {
            let z = g.comonoid(d.star, *n);
            let v = g.monoid(d.star, *n);
            let ok = convolution_monoid(d, &z, &v).map(|c| check_structure(&c).passed()).unwrap_or(false);
            t.record(ok, || format!("{name} sample {k}"));
        }
    }
    let total = t.total;
    t.result(4, "convolution structures", format!("{total} samples over five instances"))
}

fn species_counts() -> CriterionResult {
    let mut t = Tally::default();
    let com = SymmetricSequence::com(4);
    match species_substitution(&com, &com) {
        Ok(s) => {
            let dims = s.result.underlying().dims()[1..].to_vec();
            t.record(dims == [1, 2, 5, 15], || format!("Com∘Com dims {dims:?}"));
        }
        Err(e) => t.record(false, || format!("Com∘Com: {e}")),
    }
    match example_library("ass", 4) {
        Ok(ass) => {
            let dims = ass.carrier().dims().to_vec();
            t.record(dims == [0, 1, 2, 6, 24], || format!("Ass dims {dims:?}"));
            t.record(check_structure(&ass).passed(), || "Ass operad axioms".into());
        }
        Err(e) => t.record(false, || format!("Ass: {e}")),
    }
    t.result(5, "species substitution counts", "Com∘Com 1,2,5,15; Ass n!; Ass operad at N=4".into())
}

fn generating_functions(g: &mut Gen) -> CriterionResult {
    let mut t = Tally::default();
    for k in 0..DUOIDAL_SAMPLES {
        let (v, w) = (g.graded_object(5, 3), g.graded_object(5, 3));
        let lhs = to_series(&hilbert(&cauchy(&v, &w).expect("same truncation")));
        let rhs = series_mul(&to_series(&hilbert(&v)), &to_series(&hilbert(&w)));
        t.record(lhs == rhs, || format!("Hilbert sample {k}"));
    }
    for k in 0..5 {
        let (a, b) = (g.species(5, 1, false), g.species(5, 1, true));
        let ok = species_substitution(&a, &b)
            .map(|s| Some(egf(&s.result)) == series_compose(&egf(&a), &egf(&b)))
            .unwrap_or(false);
        t.record(ok, || format!("egf sample {k}"));
    }
    t.result(6, "generating functions", "Hilbert of • and egf of ∘ at N=5".into())
}

fn classical(g: &mut Gen) -> CriterionResult {
    let mut t = Tally::default();
    let a = truncated_polynomial_algebra(3);
    let c = grouplike_coalgebra(2);
    let eval0 = Matrix::from_i64(&[&[1], &[0], &[0]]);
    let mut passing = 0;
    for k in 0..200 {
        let cols: Vec<Matrix> = (0..2).map(|_| if g.coin() { eval0.clone() } else { g.matrix(3, 1) }).collect();
        let f = Matrix::hstack(3, &cols);
        match duality_check(&a, &c, &f) {
            Ok(r) => {
                passing += usize::from(r.coalgebra_map);
                t.record(r.agree(), || format!("duality candidate {k}"));
            }
            Err(e) => t.record(false, || format!("duality candidate {k}: {e}")),
        }
    }
    let table: [(&[i64], bool); 5] =
        [(&[1, 0], true), (&[0, 1], true), (&[1, 1], false), (&[0, 0], false), (&[2, 0], false)];
    let d = DuoidalPair::CauchyOverHadamard.data();
    let inv = Matrix::from_i64(&[&[1, 0, 0], &[0, -1, 0], &[0, 0, 1]]);
    let m = classical_measuring(&[Matrix::identity(3), inv], &a, &a);
    for (x, expected) in table {
        let cand = GrouplikeCandidate { comonoid: c.clone(), degree: 0, element: Matrix::from_i64(&[&[x[0]], &[x[1]]]) };
        let got = grouplike_check(&cand).unwrap_or(!expected);
        t.record(got == expected, || format!("group-like {x:?}"));
        if expected {
            let ok = induced_map(&d, &cand, &m).map(|(_, r)| r.passed()).unwrap_or(false);
            t.record(ok, || format!("induced map of {x:?}"));
        }
    }
    t.result(7, "classical bridge", format!("200 duality candidates ({passing} coalgebra maps), group-like table"))
}

fn composition(g: &mut Gen) -> CriterionResult {
    let mut t = Tally::default();
    let mut nonzero = 0;
    for k in 0..DUOIDAL_SAMPLES {
        let pair = MEASURING_PAIRS[k % 3];
        let d = pair.data();
        let n = CHAIN_TRUNCATION;
        let run = |g: &mut Gen| -> Result<(bool, bool), crate::measuring::MeasuringError> {
            let (fc, gm) = (g.small_comonoid(d.star, n), g.small_monoid(d.star, n));
            let chi = g.measuring_into(&d, &fc, &gm)?;
            let dc = g.small_comonoid(d.star, n);
            let psi = g.measuring_into(&d, &dc, &chi.source)?;
            let cc = g.small_comonoid(d.star, n);
            let phi = g.measuring_into(&d, &cc, &psi.source)?;
            let outer = compose_measurings(&d, &chi, &compose_measurings(&d, &psi, &phi)?)?;
            let ok = check_measuring(&d, &compose_measurings(&d, &psi, &phi)?)?.passed()
                && check_measuring(&d, &compose_measurings(&d, &chi, &psi)?)?.passed()
                && check_measuring(&d, &outer)?.passed()
                && check_unit_laws(&d, &phi)?.passed()
                && check_associativity(&d, &chi, &psi, &phi)?.passed();
            Ok((ok, outer.phi.iter().any(|m| m.entries().iter().any(|x| *x != Rational::from_integer(0.into())))))
        };
        match run(g) {
            Ok((ok, nz)) => {
                nonzero += usize::from(nz);
                t.record(ok, || format!("{pair} chain {k}"));
            }
            Err(e) => t.record(false, || format!("{pair} chain {k}: {e}")),
        }
    }
    t.record(2 * nonzero >= DUOIDAL_SAMPLES, || format!("only {nonzero} chains with a nonzero triple composite"));
    t.result(
        8,
        "composition of measurings",
        format!("{DUOIDAL_SAMPLES} chains ({nonzero} nonzero); composites, unit and associativity laws"),
    )
}

fn negative_control() -> CriterionResult {
    let mut t = Tally::default();
    let pair = DuoidalPair::HadamardOverSubPositive;
    let general = structure_maps_for(pair, &GradedObject::new(vec![1, 1, 1]));
    t.record(general == Err(DuoidalError::RequiresPositive), || "non-positive input accepted".into());
    let positive = structure_maps_for(pair, &GradedObject::new(vec![0, 1, 1]));
    t.record(positive.is_ok(), || "positive input rejected".into());
    t.result(9, "negative control", "non-positive δ_I refused, positive accepted".into())
}

fn round_trip() -> CriterionResult {
    let mut t = Tally::default();
    for name in EXAMPLES {
        let n = if name == "end" { 2 } else { 3 };
        let doc = Document::Structure(example_library(name, n).expect("library example"));
        let text = save(&doc);
        let ok = load(&text).as_ref() == Ok(&doc) && canonicalize(&text).as_deref() == Ok(text.as_str());
        t.record(ok, || name.to_string());
    }
    let total = t.total;
    t.result(10, "canonical round trip", format!("{total} library examples"))
}

pub fn run(seed: u64) -> SelftestReport {
    let mut g = Gen::new(seed);
    let mut criteria = Vec::new();
    let steps: Vec<Box<dyn Fn(&mut Gen) -> CriterionResult>> = vec![
        Box::new(duoidal_axioms),
        Box::new(section),
        Box::new(transpose_equivalence),
        Box::new(convolution),
        Box::new(|_| species_counts()),
        Box::new(generating_functions),
        Box::new(classical),
        Box::new(composition),
        Box::new(|_| negative_control()),
        Box::new(|_| round_trip()),
    ];
    for step in steps {
        criteria.push(step(&mut g));
    }
    SelftestReport { seed, criteria }
}
