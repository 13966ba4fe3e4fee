//! Duoidal pairs `(◊, i, ⋆, j)` on graded objects and species.
//!
//! The interchange `ζ : (a⋆b)◊(c⋆d) → (a◊c)⋆(b◊d)` of each pair is a label
//! rewrite (see [`crate::engine`]); its matrices are 0/1 block routings.

use std::fmt;
use std::rc::Rc;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::engine::{
    associator, compose, diagonal, identity, left_unitor, lift, right_unitor, to_unit, Difference, Engine,
    EngineError, Expr, Label, LinMap, Unit,
};
use crate::graded::{positive_check, rational_pow, GradedError, GradedMap, GradedObject, Product};
use crate::linalg::Rational;
use crate::species::SymmetricSequence;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DuoidalError {
    #[error("requires positive objects")]
    RequiresPositive,
    #[error("unknown duoidal pair {0:?}")]
    UnknownPair(String),
    #[error("{0} is not available for species")]
    NotForSpecies(&'static str),
    #[error("samples need {0}")]
    Samples(String),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Graded(#[from] GradedError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DuoidalPair {
    CauchyOverHadamard,
    HadamardOverCauchy,
    SubOverHadamard,
    HadamardOverSubPositive,
}

impl DuoidalPair {
    pub const ALL: [DuoidalPair; 4] = [
        DuoidalPair::CauchyOverHadamard,
        DuoidalPair::HadamardOverCauchy,
        DuoidalPair::SubOverHadamard,
        DuoidalPair::HadamardOverSubPositive,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            DuoidalPair::CauchyOverHadamard => "cauchy-over-hadamard",
            DuoidalPair::HadamardOverCauchy => "hadamard-over-cauchy",
            DuoidalPair::SubOverHadamard => "sub-over-hadamard",
            DuoidalPair::HadamardOverSubPositive => "hadamard-over-sub-positive",
        }
    }

    /// The first product `◊`.
    pub fn diamond(self) -> Product {
        match self {
            DuoidalPair::CauchyOverHadamard => Product::Cauchy,
            DuoidalPair::SubOverHadamard => Product::Substitution,
            _ => Product::Hadamard,
        }
    }

    /// The second product `⋆`.
    pub fn star(self) -> Product {
        match self {
            DuoidalPair::HadamardOverCauchy => Product::Cauchy,
            DuoidalPair::HadamardOverSubPositive => Product::Substitution,
            _ => Product::Hadamard,
        }
    }

    pub fn requires_positive(self) -> bool {
        self == DuoidalPair::HadamardOverSubPositive
    }

    pub fn data(self) -> Duoidal {
        let (i, j) = match self {
            DuoidalPair::CauchyOverHadamard => (Unit::Cauchy, Unit::Hadamard),
            DuoidalPair::HadamardOverCauchy => (Unit::Hadamard, Unit::Cauchy),
            DuoidalPair::SubOverHadamard => (Unit::Substitution, Unit::Hadamard),
            DuoidalPair::HadamardOverSubPositive => (Unit::HadamardPositive, Unit::Substitution),
        };
        Duoidal { name: self.tag().to_string(), diamond: self.diamond(), star: self.star(), i, j, zeta: interchange_map(self) }
    }
}

impl fmt::Display for DuoidalPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for DuoidalPair {
    type Err = DuoidalError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        DuoidalPair::ALL
            .into_iter()
            .find(|p| p.tag() == s)
            .ok_or_else(|| DuoidalError::UnknownPair(s.to_string()))
    }
}

/// The data of a duoidal structure as label maps.
#[derive(Clone)]
pub struct Duoidal {
    pub name: String,
    pub diamond: Product,
    pub star: Product,
    pub i: Unit,
    pub j: Unit,
    pub zeta: LinMap,
}

impl Duoidal {
    /// `δ_i : i → i⋆i`.
    pub fn delta_i(&self, engine: &Engine) -> LinMap {
        diagonal(engine, &Expr::bin(self.star, Expr::unit(self.i), Expr::unit(self.i)))
    }

    /// `μ_j : j◊j → j`.
    pub fn mu_j(&self) -> LinMap {
        to_unit(self.j)
    }

    /// `ι : i → j`.
    pub fn iota(&self) -> LinMap {
        to_unit(self.j)
    }

    pub fn d(&self, a: Expr, b: Expr) -> Expr {
        Expr::bin(self.diamond, a, b)
    }

    pub fn s(&self, a: Expr, b: Expr) -> Expr {
        Expr::bin(self.star, a, b)
    }
}

/// The braided Cauchy product as a duoidal structure with `◊ = ⋆ = •`;
/// `ζ` carries the sign `q^{deg b · deg c}`.
pub fn braided_cauchy(q: Rational) -> Duoidal {
    let zeta: LinMap = Rc::new(move |l: &Label| match l {
        Label::Cau { left, right, .. } => match (&**left, &**right) {
            (Label::Cau { left: a, right: b, .. }, Label::Cau { left: c, right: d, .. }) => {
                let scale = rational_pow(&q, b.deg() * c.deg());
                vec![(
                    Label::cau(
                        None,
                        Label::cau(None, (**a).clone(), (**c).clone()),
                        Label::cau(None, (**b).clone(), (**d).clone()),
                    ),
                    scale,
                )]
            }
            _ => panic!("braided interchange on {l:?}"),
        },
        _ => panic!("braided interchange on {l:?}"),
    });
    Duoidal {
        name: "braided-cauchy".into(),
        diamond: Product::Cauchy,
        star: Product::Cauchy,
        i: Unit::Cauchy,
        j: Unit::Cauchy,
        zeta,
    }
}

fn one(l: Label) -> Vec<(Label, Rational)> {
    vec![(l, Rational::one())]
}

/// `ζ` for a pair, valid on graded and species labels.
pub fn interchange_map(pair: DuoidalPair) -> LinMap {
    Rc::new(move |l: &Label| match (pair, l) {
        (DuoidalPair::CauchyOverHadamard, Label::Cau { sel, left, right }) => match (&**left, &**right) {
            (Label::Had(a, b), Label::Had(c, d)) => one(Label::had(
                Label::cau(sel.clone(), (**a).clone(), (**c).clone()),
                Label::cau(sel.clone(), (**b).clone(), (**d).clone()),
            )),
            _ => panic!("interchange on {l:?}"),
        },
        (DuoidalPair::HadamardOverCauchy, Label::Had(x, y)) => match (&**x, &**y) {
            (
                Label::Cau { sel: s1, left: a, right: b },
                Label::Cau { sel: s2, left: c, right: d },
            ) => {
                if a.deg() == c.deg() && s1 == s2 {
                    one(Label::cau(
                        s1.clone(),
                        Label::had((**a).clone(), (**c).clone()),
                        Label::had((**b).clone(), (**d).clone()),
                    ))
                } else {
                    Vec::new()
                }
            }
            _ => panic!("interchange on {l:?}"),
        },
        (DuoidalPair::SubOverHadamard, Label::Sub { outer, inner }) => match &**outer {
            Label::Had(a, b) => {
                let mut cs = Vec::with_capacity(inner.len());
                let mut ds = Vec::with_capacity(inner.len());
                for x in inner {
                    match x {
                        Label::Had(c, d) => {
                            cs.push((**c).clone());
                            ds.push((**d).clone());
                        }
                        _ => panic!("interchange on {l:?}"),
                    }
                }
                one(Label::had(Label::sub((**a).clone(), cs), Label::sub((**b).clone(), ds)))
            }
            _ => panic!("interchange on {l:?}"),
        },
        (DuoidalPair::HadamardOverSubPositive, Label::Had(x, y)) => match (&**x, &**y) {
            (Label::Sub { outer: a, inner: cs }, Label::Sub { outer: b, inner: ds }) => {
                if cs.len() != ds.len() || cs.iter().zip(ds).any(|(c, d)| c.deg() != d.deg()) {
                    return Vec::new();
                }
                let inner = cs.iter().zip(ds).map(|(c, d)| Label::had(c.clone(), d.clone())).collect();
                one(Label::sub(Label::had((**a).clone(), (**b).clone()), inner))
            }
            _ => panic!("interchange on {l:?}"),
        },
        _ => panic!("interchange for {pair} on {l:?}"),
    })
}

fn check_positive(pair: DuoidalPair, objs: &[&GradedObject]) -> Result<(), DuoidalError> {
    if pair.requires_positive() && !objs.iter().all(|o| positive_check(o)) {
        return Err(DuoidalError::RequiresPositive);
    }
    Ok(())
}

fn four_slot_exprs(pair: DuoidalPair) -> (Expr, Expr) {
    let d = pair.data();
    let (a, b, c, e) = (Expr::atom(0), Expr::atom(1), Expr::atom(2), Expr::atom(3));
    (d.d(d.s(a.clone(), b.clone()), d.s(c.clone(), e.clone())), d.s(d.d(a, c), d.d(b, e)))
}

/// `ζ_{a,b,c,d}` as a graded map.
pub fn interchange(
    pair: DuoidalPair,
    a: &GradedObject,
    b: &GradedObject,
    c: &GradedObject,
    d: &GradedObject,
) -> Result<GradedMap, DuoidalError> {
    check_positive(pair, &[a, b, c, d])?;
    let eng = Engine::graded(a.truncation(), vec![a.clone(), b.clone(), c.clone(), d.clone()])?;
    let (src, tgt) = four_slot_exprs(pair);
    let comps = eng.materialize_all(&interchange_map(pair), &src, &tgt)?;
    Ok(GradedMap::new(eng.dims(&src), eng.dims(&tgt), comps)?)
}

/// `ζ_{a,b,c,d}` for species; substitution pairs are not available here.
pub fn species_interchange(
    pair: DuoidalPair,
    a: &SymmetricSequence,
    b: &SymmetricSequence,
    c: &SymmetricSequence,
    d: &SymmetricSequence,
) -> Result<GradedMap, DuoidalError> {
    if pair.diamond() == Product::Substitution || pair.star() == Product::Substitution {
        return Err(DuoidalError::NotForSpecies("the substitution interchange"));
    }
    let eng = Engine::species(a.truncation(), vec![a.clone(), b.clone(), c.clone(), d.clone()])?;
    let (src, tgt) = four_slot_exprs(pair);
    let comps = eng.materialize_all(&interchange_map(pair), &src, &tgt)?;
    Ok(GradedMap::new(eng.dims(&src), eng.dims(&tgt), comps)?)
}

/// The reverse routing: the projection for `CauchyOverHadamard`, the inclusion
/// for `HadamardOverCauchy`, and so on, as `ζ` of the partner pair.
pub fn partner(pair: DuoidalPair) -> DuoidalPair {
    match pair {
        DuoidalPair::CauchyOverHadamard => DuoidalPair::HadamardOverCauchy,
        DuoidalPair::HadamardOverCauchy => DuoidalPair::CauchyOverHadamard,
        DuoidalPair::SubOverHadamard => DuoidalPair::HadamardOverSubPositive,
        DuoidalPair::HadamardOverSubPositive => DuoidalPair::SubOverHadamard,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Setting {
    General,
    Positive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureMaps {
    pub delta_i: GradedMap,
    pub mu_j: GradedMap,
    pub iota: GradedMap,
}

pub fn structure_maps(pair: DuoidalPair, truncation: usize, setting: Setting) -> Result<StructureMaps, DuoidalError> {
    if pair.requires_positive() && setting == Setting::General {
        return Err(DuoidalError::RequiresPositive);
    }
    let d = pair.data();
    let eng = Engine::graded(truncation, Vec::new())?;
    let (i, j) = (Expr::unit(d.i), Expr::unit(d.j));
    let ii = d.s(i.clone(), i.clone());
    let jj = d.d(j.clone(), j.clone());
    let mk = |f: &LinMap, src: &Expr, tgt: &Expr| -> Result<GradedMap, DuoidalError> {
        Ok(GradedMap::new(eng.dims(src), eng.dims(tgt), eng.materialize_all(f, src, tgt)?)?)
    };
    Ok(StructureMaps {
        delta_i: mk(&d.delta_i(&eng), &i, &ii)?,
        mu_j: mk(&d.mu_j(), &jj, &j)?,
        iota: mk(&d.iota(), &i, &j)?,
    })
}

/// Structure maps in the setting of `carrier`: positive carriers use the positive setting.
pub fn structure_maps_for(pair: DuoidalPair, carrier: &GradedObject) -> Result<StructureMaps, DuoidalError> {
    let setting = if positive_check(carrier) { Setting::Positive } else { Setting::General };
    structure_maps(pair, carrier.truncation(), setting)
}

/// Objects `A..F` and maps `f: A → A'`, `g: B → B'`, `h: C → C'`, `k: D → D'`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DuoidalSamples {
    pub objects: Vec<GradedObject>,
    pub maps: Vec<GradedMap>,
}

#[derive(Clone, Debug)]
pub struct SpeciesSamples {
    pub objects: Vec<SymmetricSequence>,
    pub targets: Vec<SymmetricSequence>,
    pub maps: Vec<GradedMap>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomResult {
    pub name: String,
    pub difference: Option<Difference>,
}

impl AxiomResult {
    pub fn passed(&self) -> bool {
        self.difference.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub results: Vec<AxiomResult>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.results.iter().all(AxiomResult::passed)
    }

    pub fn failures(&self) -> Vec<&AxiomResult> {
        self.results.iter().filter(|r| !r.passed()).collect()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.results {
            match &r.difference {
                None => writeln!(f, "pass  {}", r.name)?,
                Some(d) => writeln!(
                    f,
                    "FAIL  {}  degree {} source {} target {}: {} != {}",
                    r.name,
                    d.degree,
                    d.source,
                    d.target.map_or("-".to_string(), |t| t.to_string()),
                    crate::linalg::format_rational(&d.left),
                    crate::linalg::format_rational(&d.right),
                )?,
            }
        }
        Ok(())
    }
}

pub fn check_duoidal(pair: DuoidalPair, samples: &DuoidalSamples) -> Result<Report, DuoidalError> {
    let objs: Vec<&GradedObject> =
        samples.objects.iter().chain(samples.maps.iter().map(|m| &m.target)).collect();
    check_positive(pair, &objs)?;
    check_duoidal_with(&pair.data(), samples)
}

/// Graded check with explicit structure data.
pub fn check_duoidal_with(d: &Duoidal, samples: &DuoidalSamples) -> Result<Report, DuoidalError> {
    if samples.objects.len() < 6 || samples.maps.len() < 4 {
        return Err(DuoidalError::Samples("six objects and four maps".into()));
    }
    for (k, m) in samples.maps.iter().enumerate() {
        if m.source != samples.objects[k] {
            return Err(DuoidalError::Samples(format!("map {k} must start at object {k}")));
        }
    }
    let mut slots: Vec<GradedObject> = samples.objects[..6].to_vec();
    slots.extend(samples.maps[..4].iter().map(|m| m.target.clone()));
    let eng = Engine::graded(slots[0].truncation(), slots)?;
    let maps: Vec<LinMap> =
        samples.maps[..4].iter().enumerate().map(|(k, m)| crate::engine::atom_map(6 + k, &m.components)).collect();
    Ok(run_checks(d, &eng, &maps, false))
}

/// Species check: the graded identities plus equivariance of `ζ`.
pub fn check_duoidal_species(pair: DuoidalPair, samples: &SpeciesSamples) -> Result<Report, DuoidalError> {
    if pair.diamond() == Product::Substitution || pair.star() == Product::Substitution {
        return Err(DuoidalError::NotForSpecies("the substitution pairs"));
    }
    if samples.objects.len() < 6 || samples.maps.len() < 4 || samples.targets.len() < 4 {
        return Err(DuoidalError::Samples("six objects, four targets and four maps".into()));
    }
    let mut slots: Vec<SymmetricSequence> = samples.objects[..6].to_vec();
    slots.extend(samples.targets[..4].iter().cloned());
    let eng = Engine::species(slots[0].truncation(), slots)?;
    let maps: Vec<LinMap> =
        samples.maps[..4].iter().enumerate().map(|(k, m)| crate::engine::atom_map(6 + k, &m.components)).collect();
    Ok(run_checks(&pair.data(), &eng, &maps, true))
}

fn run_checks(d: &Duoidal, eng: &Engine, maps: &[LinMap], species: bool) -> Report {
    let (di, st) = (d.diamond, d.star);
    let x = |k: usize| Expr::atom(k);
    let (i, j) = (Expr::unit(d.i), Expr::unit(d.j));
    let id = identity;
    let zeta = d.zeta.clone();
    let mut results = Vec::new();
    let mut check = |name: &str, src: Expr, tgt: Expr, f: LinMap, g: LinMap| {
        results.push(AxiomResult { name: name.to_string(), difference: eng.compare(&src, &tgt, &f, &g) });
    };

    // Naturality in all four arguments.
    let (f, g, h, k) = (maps[0].clone(), maps[1].clone(), maps[2].clone(), maps[3].clone());
    check(
        "naturality",
        d.d(d.s(x(0), x(1)), d.s(x(2), x(3))),
        d.s(d.d(x(6), x(8)), d.d(x(7), x(9))),
        compose(vec![zeta.clone(), lift(di, lift(st, f.clone(), g.clone()), lift(st, h.clone(), k.clone()))]),
        compose(vec![lift(st, lift(di, f, h), lift(di, g, k)), zeta.clone()]),
    );

    // ⋆ is lax ◊-monoidal: compatibility with the ◊-associator.
    check(
        "associativity-diamond",
        d.d(d.d(d.s(x(0), x(1)), d.s(x(2), x(3))), d.s(x(4), x(5))),
        d.s(d.d(x(0), d.d(x(2), x(4))), d.d(x(1), d.d(x(3), x(5)))),
        compose(vec![lift(st, associator(di), associator(di)), zeta.clone(), lift(di, zeta.clone(), id())]),
        compose(vec![zeta.clone(), lift(di, id(), zeta.clone()), associator(di)]),
    );

    // Compatibility with the ⋆-associator.
    check(
        "associativity-star",
        d.d(d.s(d.s(x(0), x(1)), x(2)), d.s(d.s(x(3), x(4)), x(5))),
        d.s(d.d(x(0), x(3)), d.s(d.d(x(1), x(4)), d.d(x(2), x(5)))),
        compose(vec![associator(st), lift(st, zeta.clone(), id()), zeta.clone()]),
        compose(vec![lift(st, id(), zeta.clone()), zeta.clone(), lift(di, associator(st), associator(st))]),
    );

    let delta = d.delta_i(eng);
    let (mu, iota) = (d.mu_j(), d.iota());
    check(
        "unit-left-diamond",
        d.d(i.clone(), d.s(x(0), x(1))),
        d.s(x(0), x(1)),
        left_unitor(di),
        compose(vec![lift(st, left_unitor(di), left_unitor(di)), zeta.clone(), lift(di, delta.clone(), id())]),
    );
    check(
        "unit-right-diamond",
        d.d(d.s(x(0), x(1)), i.clone()),
        d.s(x(0), x(1)),
        right_unitor(di),
        compose(vec![lift(st, right_unitor(di), right_unitor(di)), zeta.clone(), lift(di, id(), delta.clone())]),
    );
    check(
        "unit-left-star",
        d.d(d.s(j.clone(), x(0)), d.s(j.clone(), x(1))),
        d.d(x(0), x(1)),
        lift(di, left_unitor(st), left_unitor(st)),
        compose(vec![left_unitor(st), lift(st, mu.clone(), id()), zeta.clone()]),
    );
    check(
        "unit-right-star",
        d.d(d.s(x(0), j.clone()), d.s(x(1), j.clone())),
        d.d(x(0), x(1)),
        lift(di, right_unitor(st), right_unitor(st)),
        compose(vec![right_unitor(st), lift(st, id(), mu.clone()), zeta.clone()]),
    );

    // j is a ◊-monoid with unit ι.
    check(
        "j-monoid-associativity",
        d.d(d.d(j.clone(), j.clone()), j.clone()),
        j.clone(),
        compose(vec![mu.clone(), lift(di, mu.clone(), id())]),
        compose(vec![mu.clone(), lift(di, id(), mu.clone()), associator(di)]),
    );
    check(
        "j-monoid-unit-left",
        d.d(i.clone(), j.clone()),
        j.clone(),
        compose(vec![mu.clone(), lift(di, iota.clone(), id())]),
        left_unitor(di),
    );
    check(
        "j-monoid-unit-right",
        d.d(j.clone(), i.clone()),
        j.clone(),
        compose(vec![mu.clone(), lift(di, id(), iota.clone())]),
        right_unitor(di),
    );

    // i is a ⋆-comonoid with counit ι.
    check(
        "i-comonoid-coassociativity",
        i.clone(),
        d.s(i.clone(), d.s(i.clone(), i.clone())),
        compose(vec![associator(st), lift(st, delta.clone(), id()), delta.clone()]),
        compose(vec![lift(st, id(), delta.clone()), delta.clone()]),
    );
    check(
        "i-comonoid-counit-left",
        i.clone(),
        i.clone(),
        compose(vec![left_unitor(st), lift(st, iota.clone(), id()), delta.clone()]),
        id(),
    );
    check(
        "i-comonoid-counit-right",
        i.clone(),
        i.clone(),
        compose(vec![right_unitor(st), lift(st, id(), iota.clone()), delta.clone()]),
        id(),
    );

    // ι is multiplicative: μ_j ∘ (ι ◊ ι) = ι ∘ λ.
    check(
        "iota-multiplicative",
        d.d(i.clone(), i.clone()),
        j.clone(),
        compose(vec![mu.clone(), lift(di, iota.clone(), iota.clone())]),
        compose(vec![iota.clone(), left_unitor(di)]),
    );

    if species {
        let src = d.d(d.s(x(0), x(1)), d.s(x(2), x(3)));
        let tgt = d.s(d.d(x(0), x(2)), d.d(x(1), x(3)));
        results.push(AxiomResult { name: "equivariance".into(), difference: eng.equivariant(&zeta, &src, &tgt) });
    }
    Report { results }
}

/// Section identity `ζ_partner ∘ ζ = id` on the smaller sum, for the pairs
/// where `ζ` is the inclusion.
pub fn section_identity(
    pair: DuoidalPair,
    objects: [&GradedObject; 4],
) -> Result<Option<Difference>, DuoidalError> {
    let eng = Engine::graded(objects[0].truncation(), objects.iter().map(|o| (*o).clone()).collect())?;
    Ok(section_with(pair, &eng))
}

pub fn species_section_identity(
    pair: DuoidalPair,
    objects: [&SymmetricSequence; 4],
) -> Result<Option<Difference>, DuoidalError> {
    let eng = Engine::species(objects[0].truncation(), objects.iter().map(|o| (*o).clone()).collect())?;
    Ok(section_with(pair, &eng))
}

fn section_with(pair: DuoidalPair, eng: &Engine) -> Option<Difference> {
    let (src, _) = four_slot_exprs(pair);
    let back = compose(vec![interchange_map(partner(pair)), interchange_map(pair)]);
    eng.compare(&src, &src, &back, &identity())
}

/// The sum of two label maps; used for fault injection in tests.
pub fn perturb(f: LinMap, at: Label, delta: Rational) -> LinMap {
    Rc::new(move |l: &Label| {
        let mut out = f(l);
        if *l == at {
            if let Some(first) = out.first_mut() {
                first.1 += &delta;
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        out
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{q, Matrix};

    fn g(d: &[usize]) -> GradedObject {
        GradedObject::new(d.to_vec())
    }

    #[test]
    fn inter1_degree_one_example() {
        let v = g(&[1, 1]);
        let z = interchange(DuoidalPair::CauchyOverHadamard, &v, &v, &v, &v).unwrap();
        assert_eq!(z.components[1].shape(), (4, 2));
        assert!(z.components[1].is_zero_one());
        assert_eq!(z.components[1].transpose().mul(&z.components[1]), Matrix::identity(2));
    }

    #[test]
    fn zero_object_gives_zero_shaped_interchange() {
        let (v, zero) = (g(&[1, 2, 1]), GradedObject::zero(2));
        for pair in DuoidalPair::ALL {
            let (a, b) = if pair.requires_positive() { (g(&[0, 1, 2]), GradedObject::zero(2)) } else { (v.clone(), zero.clone()) };
            let z = interchange(pair, &a, &b, &a, &a).unwrap();
            assert!(z.components.iter().all(|m| m.rows() == 0 || m.cols() == 0 || m.is_zero()));
        }
    }

    #[test]
    fn structure_map_closed_forms() {
        let s = structure_maps(DuoidalPair::CauchyOverHadamard, 3, Setting::General).unwrap();
        assert_eq!(s.delta_i.components[0], Matrix::from_i64(&[&[1]]));
        assert!(s.delta_i.components[1..].iter().all(|m| m.shape() == (0, 0)));
        assert_eq!(s.mu_j.components[2], Matrix::ones(1, 3));
        let s = structure_maps(DuoidalPair::HadamardOverCauchy, 3, Setting::General).unwrap();
        assert_eq!(s.delta_i.components[2], Matrix::ones(3, 1));
        let s = structure_maps(DuoidalPair::SubOverHadamard, 3, Setting::General).unwrap();
        assert_eq!(s.iota.components[1], Matrix::from_i64(&[&[1]]));
        assert_eq!(s.iota.components[2].shape(), (1, 0));
        assert_eq!(
            structure_maps(DuoidalPair::HadamardOverSubPositive, 3, Setting::General),
            Err(DuoidalError::RequiresPositive)
        );
        let s = structure_maps(DuoidalPair::HadamardOverSubPositive, 4, Setting::Positive).unwrap();
        assert_eq!(s.delta_i.components[4], Matrix::ones(8, 1));
    }

    #[test]
    fn braided_zeta_sign() {
        let d = braided_cauchy(q(-1));
        let b = Label::Atom { slot: 1, deg: 1, idx: 0 };
        let c = Label::Atom { slot: 2, deg: 1, idx: 0 };
        let a = Label::Atom { slot: 0, deg: 0, idx: 0 };
        let src = Label::cau(None, Label::cau(None, a.clone(), b), Label::cau(None, c, a));
        assert_eq!((d.zeta)(&src)[0].1, q(-1));
    }

    fn sample_map(src: &GradedObject, tgt: &GradedObject, seed: i64) -> GradedMap {
        let comps = (0..=src.truncation())
            .map(|n| {
                let (r, c) = (tgt.dim(n), src.dim(n));
                let data = (0..r * c).map(|k| q((k as i64 * 7 + seed * 3 + n as i64) % 5 - 2)).collect();
                Matrix::new(r, c, data).unwrap()
            })
            .collect();
        GradedMap::new(src.clone(), tgt.clone(), comps).unwrap()
    }

    fn samples(dims: &[&[usize]]) -> DuoidalSamples {
        let objects: Vec<GradedObject> = dims[..6].iter().map(|d| g(d)).collect();
        let maps = (0..4).map(|k| sample_map(&objects[k], &g(dims[6 + k]), k as i64)).collect();
        DuoidalSamples { objects, maps }
    }

    #[test]
    fn all_pairs_pass_on_small_samples() {
        let general = samples(&[&[1, 2, 1], &[2, 1, 0], &[1, 1, 1], &[0, 1, 2], &[1, 0, 1], &[2, 1, 1], &[2, 1, 1], &[1, 1, 1], &[1, 2, 0], &[1, 1, 1]]);
        let positive = samples(&[&[0, 2, 1], &[0, 1, 1], &[0, 1, 2], &[0, 1, 1], &[0, 2, 1], &[0, 1, 1], &[0, 1, 1], &[0, 2, 1], &[0, 1, 1], &[0, 1, 2]]);
        for pair in DuoidalPair::ALL {
            let s = if pair.requires_positive() { &positive } else { &general };
            let r = check_duoidal(pair, s).unwrap();
            assert!(r.passed(), "{pair}:\n{r}");
            assert_eq!(r.results.len(), 14);
        }
        for qv in [q(1), q(-1), q(3)] {
            let r = check_duoidal_with(&braided_cauchy(qv), &general).unwrap();
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn flipped_zeta_entry_breaks_naturality() {
        let s = samples(&[&[1, 1], &[1, 1], &[1, 1], &[1, 1], &[1, 1], &[1, 1], &[2, 1], &[1, 2], &[1, 1], &[2, 2]]);
        let mut d = DuoidalPair::CauchyOverHadamard.data();
        let at = Label::cau(
            None,
            Label::had(Label::Atom { slot: 0, deg: 0, idx: 0 }, Label::Atom { slot: 1, deg: 0, idx: 0 }),
            Label::had(Label::Atom { slot: 2, deg: 0, idx: 0 }, Label::Atom { slot: 3, deg: 0, idx: 0 }),
        );
        d.zeta = perturb(d.zeta, at, q(1));
        let r = check_duoidal_with(&d, &s).unwrap();
        assert!(!r.results[0].passed());
    }

    #[test]
    fn hadamard_over_sub_rejects_non_positive_samples() {
        let s = samples(&[&[1, 1], &[1, 1], &[1, 1], &[1, 1], &[1, 1], &[1, 1], &[1, 1], &[1, 1], &[1, 1], &[1, 1]]);
        assert_eq!(check_duoidal(DuoidalPair::HadamardOverSubPositive, &s).unwrap_err(), DuoidalError::RequiresPositive);
    }

    #[test]
    fn section_identities() {
        let (a, b, c, e) = (g(&[1, 2, 1]), g(&[1, 1, 2]), g(&[0, 1, 1]), g(&[2, 1, 0]));
        assert_eq!(section_identity(DuoidalPair::CauchyOverHadamard, [&a, &b, &c, &e]).unwrap(), None);
        assert_eq!(section_identity(DuoidalPair::SubOverHadamard, [&a, &b, &c, &e]).unwrap(), None);
    }

    #[test]
    fn species_pairs_pass() {
        let reg = SymmetricSequence::new(
            g(&[1, 1, 2]),
            vec![vec![], vec![], vec![Matrix::from_i64(&[&[0, 1], &[1, 0]])]],
        )
        .unwrap();
        let com = SymmetricSequence::com(2);
        let objects = vec![reg.clone(), com.clone(), reg.clone(), com.clone(), reg.clone(), com.clone()];
        let sym = Matrix::from_i64(&[&[1, 1], &[1, 1]]);
        let id = GradedMap::identity(reg.underlying());
        let f = GradedMap::new(reg.underlying().clone(), reg.underlying().clone(), vec![Matrix::from_i64(&[&[2]]), Matrix::from_i64(&[&[-1]]), sym]).unwrap();
        let to_com = GradedMap::new(com.underlying().clone(), com.underlying().clone(), vec![Matrix::zeros(0, 0), Matrix::from_i64(&[&[3]]), Matrix::from_i64(&[&[2]])]).unwrap();
        let samples = SpeciesSamples {
            objects,
            targets: vec![reg.clone(), com.clone(), reg.clone(), com.clone()],
            maps: vec![f, to_com.clone(), id, to_com],
        };
        for pair in [DuoidalPair::CauchyOverHadamard, DuoidalPair::HadamardOverCauchy] {
            let r = check_duoidal_species(pair, &samples).unwrap();
            assert!(r.passed(), "{pair}:\n{r}");
        }
        assert_eq!(species_section_identity(DuoidalPair::CauchyOverHadamard, [&reg, &com, &reg, &reg]).unwrap(), None);
    }
}
