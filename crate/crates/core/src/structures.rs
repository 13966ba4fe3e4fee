//! Monoids and comonoids for the three products, in component form.
//!
//! Components are keyed by the degrees of their factors: `"n"` for the
//! Hadamard product (`A_n ⊗ A_n → A_n`), `"k,m"` for the Cauchy product
//! (`A_k ⊗ A_m → A_{k+m}`) and `"m;n1,...,nm"` for substitution
//! (`A_m ⊗ A_{n1} ⊗ … → A_{n1+…+nm}`, `"0;"` when `m = 0`). Comonoid components
//! point the other way. Components whose source or target is zero are omitted.
//!
//! With actions attached, Cauchy monoids are twisted monoids and substitution
//! monoids are symmetric operads.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::engine::{compose, lift, Engine, Expr};
use crate::duoidal::DuoidalPair;
use crate::graded::{compositions, hadamard, positive_check, GradedMap, GradedObject, Product};
use crate::linalg::{factor_permutation, kron, kron_all, Matrix, Rational};
use crate::species::{all_permutations, compose_perms, SymmetricSequence};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StructureError {
    #[error("unknown component key {0:?}")]
    UnknownKey(String),
    #[error("missing component {0:?}")]
    MissingKey(String),
    #[error("component {key:?} has shape {got:?}, expected {want:?}")]
    Shape { key: String, got: (usize, usize), want: (usize, usize) },
    #[error("requires a positive carrier")]
    NotPositive,
    #[error("structures are not compatible: {0}")]
    Incompatible(String),
    #[error("unknown example {0:?}")]
    UnknownExample(String),
    #[error("invalid actions: {0}")]
    Actions(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variance {
    Monoid,
    Comonoid,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawStructure", into = "RawStructure")]
pub struct Structure {
    product: Product,
    variance: Variance,
    carrier: GradedObject,
    actions: Option<SymmetricSequence>,
    components: BTreeMap<String, Matrix>,
    unit: BTreeMap<String, Matrix>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawStructure {
    product: Product,
    variance: Variance,
    carrier: GradedObject,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    actions: Option<Vec<Vec<Matrix>>>,
    components: BTreeMap<String, Matrix>,
    unit: BTreeMap<String, Matrix>,
}

impl TryFrom<RawStructure> for Structure {
    type Error = StructureError;
    fn try_from(r: RawStructure) -> Result<Self, StructureError> {
        let actions = match r.actions {
            None => None,
            Some(a) => Some(
                SymmetricSequence::new(r.carrier.clone(), a).map_err(|e| StructureError::Actions(e.to_string()))?,
            ),
        };
        Structure::new(r.product, r.variance, r.carrier, actions, r.components, r.unit)
    }
}

impl From<Structure> for RawStructure {
    fn from(s: Structure) -> Self {
        RawStructure {
            product: s.product,
            variance: s.variance,
            carrier: s.carrier,
            actions: s.actions.map(|a| a.actions().to_vec()),
            components: s.components,
            unit: s.unit,
        }
    }
}

/// The factor degrees of a component key and its target degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Slot {
    pub factors: Vec<usize>,
    pub target: usize,
}

pub fn key_of(product: Product, factors: &[usize]) -> String {
    match product {
        Product::Hadamard => factors[0].to_string(),
        Product::Cauchy => format!("{},{}", factors[0], factors[1]),
        Product::Substitution => {
            let inner: Vec<String> = factors[1..].iter().map(usize::to_string).collect();
            format!("{};{}", factors[0], inner.join(","))
        }
    }
}

/// Every component slot with non-zero source and target.
pub fn slots(product: Product, carrier: &GradedObject) -> Vec<Slot> {
    let n_max = carrier.truncation();
    let d = |n: usize| carrier.dim(n);
    let mut out = Vec::new();
    match product {
        Product::Hadamard => {
            for n in 0..=n_max {
                out.push(Slot { factors: vec![n], target: n });
            }
        }
        Product::Cauchy => {
            for n in 0..=n_max {
                for k in 0..=n {
                    out.push(Slot { factors: vec![k, n - k], target: n });
                }
            }
        }
        Product::Substitution => {
            for m in 0..=n_max {
                for n in 0..=n_max {
                    for c in compositions(n, m) {
                        let mut f = vec![m];
                        f.extend(c);
                        out.push(Slot { factors: f, target: n });
                    }
                }
            }
        }
    }
    out.retain(|s| d(s.target) > 0 && source_dim(product, carrier, &s.factors) > 0);
    out
}

fn source_dims(product: Product, carrier: &GradedObject, factors: &[usize]) -> Vec<usize> {
    match product {
        Product::Hadamard => vec![carrier.dim(factors[0]); 2],
        _ => factors.iter().map(|&f| carrier.dim(f)).collect(),
    }
}

fn source_dim(product: Product, carrier: &GradedObject, factors: &[usize]) -> usize {
    source_dims(product, carrier, factors).iter().product()
}

fn unit_degrees(product: Product, carrier: &GradedObject) -> Vec<usize> {
    let degs: Vec<usize> = match product {
        Product::Hadamard => (0..=carrier.truncation()).collect(),
        Product::Cauchy => vec![0],
        Product::Substitution => {
            if carrier.truncation() >= 1 {
                vec![1]
            } else {
                vec![]
            }
        }
    };
    degs.into_iter().filter(|&n| carrier.dim(n) > 0).collect()
}

fn target_of(product: Product, factors: &[usize]) -> usize {
    match product {
        Product::Hadamard => factors[0],
        Product::Cauchy => factors[0] + factors[1],
        Product::Substitution => factors[1..].iter().sum(),
    }
}

impl Structure {
    pub fn new(
        product: Product,
        variance: Variance,
        carrier: GradedObject,
        actions: Option<SymmetricSequence>,
        components: BTreeMap<String, Matrix>,
        unit: BTreeMap<String, Matrix>,
    ) -> Result<Self, StructureError> {
        if let Some(a) = &actions {
            if a.underlying() != &carrier {
                return Err(StructureError::Actions("actions do not match the carrier".into()));
            }
        }
        let expected: BTreeMap<String, (usize, usize)> = slots(product, &carrier)
            .into_iter()
            .map(|s| {
                let shape = (carrier.dim(s.target), source_dim(product, &carrier, &s.factors));
                (key_of(product, &s.factors), orient(variance, shape))
            })
            .collect();
        check_keys(&components, &expected)?;
        let expected_unit: BTreeMap<String, (usize, usize)> = unit_degrees(product, &carrier)
            .into_iter()
            .map(|n| (n.to_string(), orient(variance, (carrier.dim(n), 1))))
            .collect();
        check_keys(&unit, &expected_unit)?;
        Ok(Structure { product, variance, carrier, actions, components, unit })
    }

    pub fn product(&self) -> Product {
        self.product
    }

    pub fn variance(&self) -> Variance {
        self.variance
    }

    pub fn carrier(&self) -> &GradedObject {
        &self.carrier
    }

    pub fn actions(&self) -> Option<&SymmetricSequence> {
        self.actions.as_ref()
    }

    pub fn components(&self) -> &BTreeMap<String, Matrix> {
        &self.components
    }

    pub fn units(&self) -> &BTreeMap<String, Matrix> {
        &self.unit
    }

    pub fn truncation(&self) -> usize {
        self.carrier.truncation()
    }

    /// The component for `factors`, zero-shaped when omitted, in its stored orientation.
    pub fn component(&self, factors: &[usize]) -> Matrix {
        let key = key_of(self.product, factors);
        self.components.get(&key).cloned().unwrap_or_else(|| {
            let shape = (
                self.carrier.dim(target_of(self.product, factors)),
                source_dim(self.product, &self.carrier, factors),
            );
            let (r, c) = orient(self.variance, shape);
            Matrix::zeros(r, c)
        })
    }

    pub fn unit_at(&self, n: usize) -> Matrix {
        self.unit.get(&n.to_string()).cloned().unwrap_or_else(|| {
            let (r, c) = orient(self.variance, (self.carrier.dim(n), 1));
            Matrix::zeros(r, c)
        })
    }

    /// Transposes every matrix, exchanging monoids and comonoids.
    pub fn transpose(&self) -> Structure {
        Structure {
            product: self.product,
            variance: match self.variance {
                Variance::Monoid => Variance::Comonoid,
                Variance::Comonoid => Variance::Monoid,
            },
            carrier: self.carrier.clone(),
            actions: self.actions.as_ref().map(|a| {
                SymmetricSequence::new_unchecked(
                    a.underlying().clone(),
                    a.actions().iter().map(|g| g.iter().map(Matrix::transpose).collect()).collect(),
                )
            }),
            components: self.components.iter().map(|(k, m)| (k.clone(), m.transpose())).collect(),
            unit: self.unit.iter().map(|(k, m)| (k.clone(), m.transpose())).collect(),
        }
    }

    fn monoid_form(&self) -> Structure {
        match self.variance {
            Variance::Monoid => self.clone(),
            Variance::Comonoid => self.transpose(),
        }
    }

    /// Per degree, the multiplication `(A ◊ A)_n → A_n` on the block basis
    /// (monoid orientation).
    pub fn block_form(&self) -> Vec<Matrix> {
        let m = self.monoid_form();
        (0..=self.truncation())
            .map(|n| {
                let blocks: Vec<Matrix> = all_slots(self.product, self.truncation())
                    .into_iter()
                    .filter(|s| s.target == n)
                    .map(|s| m.component(&s.factors))
                    .collect();
                Matrix::hstack(self.carrier.dim(n), &blocks)
            })
            .collect()
    }

    /// Rebuilds components from [`Structure::block_form`] output.
    pub fn from_block_form(
        product: Product,
        carrier: GradedObject,
        actions: Option<SymmetricSequence>,
        blocks: &[Matrix],
        unit: BTreeMap<String, Matrix>,
    ) -> Result<Structure, StructureError> {
        let mut offsets = vec![0usize; carrier.truncation() + 1];
        let mut components = BTreeMap::new();
        for s in all_slots(product, carrier.truncation()) {
            let w = source_dim(product, &carrier, &s.factors);
            let (r, off) = (carrier.dim(s.target), offsets[s.target]);
            if r > 0 && w > 0 {
                components.insert(key_of(product, &s.factors), blocks[s.target].block(0, r, off, w));
            }
            offsets[s.target] += w;
        }
        Structure::new(product, Variance::Monoid, carrier, actions, components, unit)
    }

    /// The carrier with its actions, trivial when none are attached.
    pub fn sequence(&self) -> SymmetricSequence {
        self.actions.clone().unwrap_or_else(|| SymmetricSequence::trivial(self.carrier.clone()))
    }
}

/// All slots in the block order of the engine basis, including degenerate ones.
pub fn all_slots(product: Product, n_max: usize) -> Vec<Slot> {
    let mut out = Vec::new();
    for n in 0..=n_max {
        match product {
            Product::Hadamard => out.push(Slot { factors: vec![n], target: n }),
            Product::Cauchy => {
                for k in 0..=n {
                    out.push(Slot { factors: vec![k, n - k], target: n });
                }
            }
            Product::Substitution => {
                for m in 0..=n_max {
                    for c in compositions(n, m) {
                        let mut f = vec![m];
                        f.extend(c);
                        out.push(Slot { factors: f, target: n });
                    }
                }
            }
        }
    }
    out
}

fn orient(v: Variance, shape: (usize, usize)) -> (usize, usize) {
    match v {
        Variance::Monoid => shape,
        Variance::Comonoid => (shape.1, shape.0),
    }
}

fn check_keys(
    given: &BTreeMap<String, Matrix>,
    expected: &BTreeMap<String, (usize, usize)>,
) -> Result<(), StructureError> {
    for (k, m) in given {
        let want = *expected.get(k).ok_or_else(|| StructureError::UnknownKey(k.clone()))?;
        if m.shape() != want {
            return Err(StructureError::Shape { key: k.clone(), got: m.shape(), want });
        }
    }
    for k in expected.keys() {
        if !given.contains_key(k) {
            return Err(StructureError::MissingKey(k.clone()));
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub axiom: String,
    pub indices: String,
    pub difference: Option<(usize, usize)>,
}

impl Instance {
    pub fn passed(&self) -> bool {
        self.difference.is_none()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StructureReport {
    pub instances: Vec<Instance>,
}

impl StructureReport {
    pub fn passed(&self) -> bool {
        self.instances.iter().all(Instance::passed)
    }

    pub fn failures(&self) -> Vec<&Instance> {
        self.instances.iter().filter(|i| !i.passed()).collect()
    }

    fn push(&mut self, axiom: &str, indices: String, lhs: &Matrix, rhs: &Matrix) {
        self.instances.push(Instance { axiom: axiom.to_string(), indices, difference: lhs.first_difference(rhs) });
    }
}

impl fmt::Display for StructureReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in &self.instances {
            match i.difference {
                None => writeln!(f, "pass  {} [{}]", i.axiom, i.indices)?,
                Some((r, c)) => writeln!(f, "FAIL  {} [{}] first difference at ({r}, {c})", i.axiom, i.indices)?,
            }
        }
        Ok(())
    }
}

pub fn check_structure(s: &Structure) -> StructureReport {
    let m = s.monoid_form();
    let prefix = match s.variance {
        Variance::Monoid => "",
        Variance::Comonoid => "co",
    };
    let mut report = StructureReport::default();
    match s.product {
        Product::Hadamard => check_hadamard(&m, prefix, &mut report),
        Product::Cauchy => check_cauchy(&m, prefix, &mut report),
        Product::Substitution => check_operad(&m, prefix, &mut report),
    }
    report
}

fn eye(s: &Structure, n: usize) -> Matrix {
    Matrix::identity(s.carrier.dim(n))
}

fn generator(n: usize, i: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.swap(i, i + 1);
    p
}

fn check_hadamard(s: &Structure, pre: &str, r: &mut StructureReport) {
    for n in 0..=s.truncation() {
        if s.carrier.dim(n) == 0 {
            continue;
        }
        let (mu, eta, id) = (s.component(&[n]), s.unit_at(n), eye(s, n));
        r.push(&format!("{pre}associativity"), n.to_string(), &mu.mul(&kron(&mu, &id)), &mu.mul(&kron(&id, &mu)));
        r.push(&format!("{pre}unit-left"), n.to_string(), &mu.mul(&kron(&eta, &id)), &id);
        r.push(&format!("{pre}unit-right"), n.to_string(), &mu.mul(&kron(&id, &eta)), &id);
        if let Some(a) = &s.actions {
            for (i, g) in a.generators(n).iter().enumerate() {
                r.push(&format!("{pre}equivariance"), format!("{n}; s{i}"), &mu.mul(&kron(g, g)), &g.mul(&mu));
                r.push(&format!("{pre}unit-invariance"), format!("{n}; s{i}"), &g.mul(&eta), &eta);
            }
        }
    }
}

fn check_cauchy(s: &Structure, pre: &str, r: &mut StructureReport) {
    let n_max = s.truncation();
    let d = |n: usize| s.carrier.dim(n);
    for n in 0..=n_max {
        for k in 0..=n {
            for m in 0..=n - k {
                let l = n - k - m;
                if d(k) * d(m) * d(l) == 0 {
                    continue;
                }
                let lhs = s.component(&[k + m, l]).mul(&kron(&s.component(&[k, m]), &eye(s, l)));
                let rhs = s.component(&[k, m + l]).mul(&kron(&eye(s, k), &s.component(&[m, l])));
                r.push(&format!("{pre}associativity"), format!("{k},{m},{l}"), &lhs, &rhs);
            }
        }
    }
    let eta = s.unit_at(0);
    for n in 0..=n_max {
        if d(n) == 0 {
            continue;
        }
        let id = eye(s, n);
        r.push(&format!("{pre}unit-left"), n.to_string(), &s.component(&[0, n]).mul(&kron(&eta, &id)), &id);
        r.push(&format!("{pre}unit-right"), n.to_string(), &s.component(&[n, 0]).mul(&kron(&id, &eta)), &id);
    }
    if let Some(a) = &s.actions {
        for slot in slots(Product::Cauchy, &s.carrier) {
            let (k, m) = (slot.factors[0], slot.factors[1]);
            let mu = s.component(&[k, m]);
            for i in 0..k.saturating_sub(1) {
                let lhs = mu.mul(&kron(&a.generators(k)[i], &eye(s, m)));
                let rhs = a.generators(k + m)[i].mul(&mu);
                r.push(&format!("{pre}equivariance-left"), format!("{k},{m}; s{i}"), &lhs, &rhs);
            }
            for j in 0..m.saturating_sub(1) {
                let lhs = mu.mul(&kron(&eye(s, k), &a.generators(m)[j]));
                let rhs = a.generators(k + m)[k + j].mul(&mu);
                r.push(&format!("{pre}equivariance-right"), format!("{k},{m}; s{j}"), &lhs, &rhs);
            }
        }
    }
}

fn list(xs: &[usize]) -> String {
    xs.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

fn check_operad(s: &Structure, pre: &str, r: &mut StructureReport) {
    let n_max = s.truncation();
    let d = |n: usize| s.carrier.dim(n);
    let mu = |m: usize, ns: &[usize]| {
        let mut f = vec![m];
        f.extend_from_slice(ns);
        s.component(&f)
    };
    // Two-level trees (k; p_1..p_k; n_1..n_M).
    for k in 0..=n_max {
        if d(k) == 0 {
            continue;
        }
        for big_m in 0..=n_max {
            for p in compositions(big_m, k) {
                if p.iter().any(|&x| d(x) == 0) {
                    continue;
                }
                for total in 0..=n_max {
                    for ns in compositions(total, big_m) {
                        if ns.iter().any(|&x| d(x) == 0) || d(total) == 0 {
                            continue;
                        }
                        let mut lhs_factors = vec![mu(k, &p)];
                        lhs_factors.extend(ns.iter().map(|&x| eye(s, x)));
                        let lhs = mu(big_m, &ns).mul(&kron_all(&lhs_factors));

                        let mut dims = vec![d(k)];
                        dims.extend(p.iter().map(|&x| d(x)));
                        dims.extend(ns.iter().map(|&x| d(x)));
                        let mut perm = vec![0usize; 1 + k + big_m];
                        let (mut pos, mut start) = (1, 0);
                        let mut qs = Vec::with_capacity(k);
                        let mut rhs_factors = vec![eye(s, k)];
                        for (i, &pi) in p.iter().enumerate() {
                            perm[1 + i] = pos;
                            pos += 1;
                            for j in start..start + pi {
                                perm[1 + k + j] = pos;
                                pos += 1;
                            }
                            let block = &ns[start..start + pi];
                            qs.push(block.iter().sum::<usize>());
                            rhs_factors.push(mu(pi, block));
                            start += pi;
                        }
                        let rhs = mu(k, &qs).mul(&kron_all(&rhs_factors)).mul(&factor_permutation(&dims, &perm));
                        r.push(
                            &format!("{pre}associativity"),
                            format!("{k}; {}; {}", list(&p), list(&ns)),
                            &lhs,
                            &rhs,
                        );
                    }
                }
            }
        }
    }
    if d(0) > 0 {
        r.push(&format!("{pre}nullary-identity"), "0;".into(), &mu(0, &[]), &eye(s, 0));
    }
    if n_max >= 1 {
        let eta = s.unit_at(1);
        for n in 0..=n_max {
            if d(n) == 0 {
                continue;
            }
            let id = eye(s, n);
            r.push(&format!("{pre}unit-outer"), n.to_string(), &mu(1, &[n]).mul(&kron(&eta, &id)), &id);
            let mut fs = vec![id.clone()];
            fs.extend(std::iter::repeat(eta.clone()).take(n));
            r.push(&format!("{pre}unit-inner"), n.to_string(), &mu(n, &vec![1; n]).mul(&kron_all(&fs)), &id);
        }
    }
    if let Some(a) = &s.actions {
        for slot in slots(Product::Substitution, &s.carrier) {
            let m = slot.factors[0];
            let ns = &slot.factors[1..];
            let n = slot.target;
            let c = mu(m, ns);
            // Inner actions.
            let mut off = 0;
            for (t, &nt) in ns.iter().enumerate() {
                for j in 0..nt.saturating_sub(1) {
                    let mut fs = vec![eye(s, m)];
                    fs.extend(ns.iter().enumerate().map(|(u, &x)| if u == t { a.generators(x)[j].clone() } else { eye(s, x) }));
                    let lhs = c.mul(&kron_all(&fs));
                    let rhs = a.generators(n)[off + j].mul(&c);
                    r.push(&format!("{pre}equivariance-inner"), format!("{}; slot {t}; s{j}", key_of(Product::Substitution, &slot.factors)), &lhs, &rhs);
                }
                off += nt;
            }
            // Outer generators: μ_c = ρ(B)·μ_{c'}·(ρ(s_t) ⊗ 1)·P.
            let mut off = 0;
            for t in 0..m.saturating_sub(1) {
                let (a_t, b_t) = (ns[t], ns[t + 1]);
                let mut swapped = ns.to_vec();
                swapped.swap(t, t + 1);
                let mut block: Vec<usize> = (0..n).collect();
                for j in 0..b_t {
                    block[off + j] = off + a_t + j;
                }
                for j in 0..a_t {
                    block[off + b_t + j] = off + j;
                }
                let mut dims = vec![d(m)];
                dims.extend(ns.iter().map(|&x| d(x)));
                let mut perm: Vec<usize> = (0..=m).collect();
                perm.swap(t + 1, t + 2);
                let mut fs = vec![a.generators(m)[t].clone()];
                fs.extend(swapped.iter().map(|&x| eye(s, x)));
                let rhs = a
                    .act(n, &block)
                    .mul(&mu(m, &swapped))
                    .mul(&kron_all(&fs))
                    .mul(&factor_permutation(&dims, &perm));
                r.push(
                    &format!("{pre}equivariance-outer"),
                    format!("{}; s{t}", key_of(Product::Substitution, &slot.factors)),
                    &c,
                    &rhs,
                );
                off += a_t;
            }
        }
    }
}

/// `f` is a monoid map `a → b` (or a comonoid map, for comonoids).
pub fn check_monoid_map(f: &GradedMap, a: &Structure, b: &Structure) -> Result<StructureReport, StructureError> {
    if a.product != b.product || a.variance != b.variance {
        return Err(StructureError::Incompatible("different kinds".into()));
    }
    if f.source != a.carrier || f.target != b.carrier {
        return Err(StructureError::Incompatible("map does not match carriers".into()));
    }
    let (f, a, b) = match a.variance {
        Variance::Monoid => (f.clone(), a.clone(), b.clone()),
        Variance::Comonoid => {
            let ft = GradedMap {
                source: f.target.clone(),
                target: f.source.clone(),
                components: f.components.iter().map(Matrix::transpose).collect(),
            };
            (ft, b.transpose(), a.transpose())
        }
    };
    let mut r = StructureReport::default();
    let mut seen = std::collections::BTreeSet::new();
    for slot in slots(a.product, &a.carrier).into_iter().chain(slots(b.product, &b.carrier)) {
        let key = key_of(a.product, &slot.factors);
        if !seen.insert(key.clone()) {
            continue;
        }
        let fs: Vec<Matrix> = match a.product {
            Product::Hadamard => vec![f.components[slot.factors[0]].clone(); 2],
            _ => slot.factors.iter().map(|&x| f.components[x].clone()).collect(),
        };
        let lhs = f.components[slot.target].mul(&a.component(&slot.factors));
        let rhs = b.component(&slot.factors).mul(&kron_all(&fs));
        r.push("multiplicative", key, &lhs, &rhs);
    }
    let degs: std::collections::BTreeSet<usize> =
        unit_degrees(a.product, &a.carrier).into_iter().chain(unit_degrees(b.product, &b.carrier)).collect();
    for n in degs {
        r.push("unital", n.to_string(), &f.components[n].mul(&a.unit_at(n)), &b.unit_at(n));
    }
    if let (Some(sa), Some(sb)) = (&a.actions, &b.actions) {
        for n in 0..=a.truncation() {
            for (i, (ga, gb)) in sa.generators(n).iter().zip(sb.generators(n)).enumerate() {
                let c = &f.components[n];
                r.push("equivariant", format!("{n}; s{i}"), &c.mul(ga), &gb.mul(c));
            }
        }
    }
    Ok(r)
}

/// Transposes the structure data; operads need a positive carrier.
pub fn dual(s: &Structure) -> Result<Structure, StructureError> {
    if s.product == Product::Substitution && !positive_check(&s.carrier) {
        return Err(StructureError::NotPositive);
    }
    Ok(s.transpose())
}

pub fn graded_dual(s: &Structure) -> Result<Structure, StructureError> {
    dual(s)
}

pub fn operad_dual(s: &Structure) -> Result<Structure, StructureError> {
    if s.product != Product::Substitution {
        return Err(StructureError::Incompatible("not an operad or cooperad".into()));
    }
    dual(s)
}

/// The lifted Hadamard product of two monoids, or of two comonoids.
pub fn hadamard_of_monoids(a: &Structure, b: &Structure) -> Result<Structure, StructureError> {
    if a.product != b.product || a.variance != b.variance {
        return Err(StructureError::Incompatible("kinds differ".into()));
    }
    if a.truncation() != b.truncation() {
        return Err(StructureError::Incompatible("truncations differ".into()));
    }
    if a.actions.is_some() != b.actions.is_some() {
        return Err(StructureError::Incompatible("one structure has actions and the other not".into()));
    }
    if a.variance == Variance::Comonoid {
        return Ok(hadamard_of_monoids(&a.transpose(), &b.transpose())?.transpose());
    }
    let carrier = hadamard(&a.carrier, &b.carrier).map_err(|e| StructureError::Incompatible(e.to_string()))?;
    let actions = match (&a.actions, &b.actions) {
        (Some(x), Some(y)) => Some(SymmetricSequence::new_unchecked(
            carrier.clone(),
            x.actions()
                .iter()
                .zip(y.actions())
                .map(|(gx, gy)| gx.iter().zip(gy).map(|(p, q)| kron(p, q)).collect())
                .collect(),
        )),
        _ => None,
    };
    let unit: BTreeMap<String, Matrix> = unit_degrees(a.product, &carrier)
        .into_iter()
        .map(|n| (n.to_string(), kron(&a.unit_at(n), &b.unit_at(n))))
        .collect();
    let blocks: Vec<Matrix> = match a.product {
        Product::Hadamard => (0..=carrier.truncation())
            .map(|n| {
                let (da, db) = (a.carrier.dim(n), b.carrier.dim(n));
                let swap = factor_permutation(&[da, db, da, db], &[0, 2, 1, 3]);
                kron(&a.component(&[n]), &b.component(&[n])).mul(&swap)
            })
            .collect(),
        p => {
            let pair = if p == Product::Cauchy { DuoidalPair::CauchyOverHadamard } else { DuoidalPair::SubOverHadamard };
            let eng = Engine::graded(a.truncation(), vec![a.carrier.clone(), b.carrier.clone()])
                .map_err(|e| StructureError::Incompatible(e.to_string()))?;
            let (x, y) = (Expr::atom(0), Expr::atom(1));
            let mu_a = eng.matrix_map(&Expr::bin(p, x.clone(), x.clone()), &x, a.block_form());
            let mu_b = eng.matrix_map(&Expr::bin(p, y.clone(), y.clone()), &y, b.block_form());
            let f = compose(vec![lift(Product::Hadamard, mu_a, mu_b), pair.data().zeta]);
            let src = Expr::bin(p, Expr::had(x.clone(), y.clone()), Expr::had(x.clone(), y.clone()));
            let tgt = Expr::had(x, y);
            eng.materialize_all(&f, &src, &tgt).map_err(|e| StructureError::Incompatible(e.to_string()))?
        }
    };
    Structure::from_block_form(a.product, carrier, actions, &blocks, unit)
}

/// The structure carried along degreewise isomorphisms `T_n: A_n → A'_n`.
pub fn transport(s: &Structure, t: &[Matrix]) -> Result<Structure, StructureError> {
    let inv: Vec<Matrix> = t
        .iter()
        .enumerate()
        .map(|(n, m)| {
            if m.shape() != (s.carrier.dim(n), s.carrier.dim(n)) {
                return Err(StructureError::Incompatible(format!("degree {n}: wrong shape")));
            }
            m.inverse().ok_or_else(|| StructureError::Incompatible(format!("degree {n}: not invertible")))
        })
        .collect::<Result<_, _>>()?;
    if t.len() != s.truncation() + 1 {
        return Err(StructureError::Incompatible("one matrix per degree".into()));
    }
    let factor_mats = |factors: &[usize], ms: &[Matrix]| -> Matrix {
        match s.product {
            Product::Hadamard => kron(&ms[factors[0]], &ms[factors[0]]),
            _ => kron_all(&factors.iter().map(|&f| ms[f].clone()).collect::<Vec<_>>()),
        }
    };
    let mut components = BTreeMap::new();
    for slot in slots(s.product, &s.carrier) {
        let key = key_of(s.product, &slot.factors);
        let c = &s.components[&key];
        let m = match s.variance {
            Variance::Monoid => t[slot.target].mul(c).mul(&factor_mats(&slot.factors, &inv)),
            Variance::Comonoid => factor_mats(&slot.factors, t).mul(c).mul(&inv[slot.target]),
        };
        components.insert(key, m);
    }
    let unit = s
        .unit
        .iter()
        .map(|(k, m)| {
            let n: usize = k.parse().expect("numeric unit key");
            let m = match s.variance {
                Variance::Monoid => t[n].mul(m),
                Variance::Comonoid => m.mul(&inv[n]),
            };
            (k.clone(), m)
        })
        .collect();
    let actions = s.actions.as_ref().map(|a| {
        SymmetricSequence::new_unchecked(
            s.carrier.clone(),
            a.actions()
                .iter()
                .enumerate()
                .map(|(n, gs)| gs.iter().map(|g| t[n].mul(g).mul(&inv[n])).collect())
                .collect(),
        )
    });
    Ok(Structure { actions, components, unit, ..s.clone() })
}

/// Drops the actions, keeping the underlying graded structure.
pub fn forget_actions(s: &Structure) -> Structure {
    Structure { actions: None, ..s.clone() }
}

/// The quotient by everything in degrees above `k`.
///
/// For Cauchy monoids and positive operads this is an ideal.
pub fn truncate_above(s: &Structure, k: usize) -> Result<Structure, StructureError> {
    if s.product == Product::Hadamard {
        return Err(StructureError::Incompatible("degrees above k are not an ideal for the Hadamard product".into()));
    }
    if s.product == Product::Substitution && !positive_check(&s.carrier) {
        return Err(StructureError::NotPositive);
    }
    let carrier = GradedObject::new(
        s.carrier.dims().iter().enumerate().map(|(n, &d)| if n > k { 0 } else { d }).collect(),
    );
    let keep: std::collections::BTreeSet<String> =
        slots(s.product, &carrier).iter().map(|sl| key_of(s.product, &sl.factors)).collect();
    let components = s.components.iter().filter(|(key, _)| keep.contains(*key)).map(|(a, b)| (a.clone(), b.clone())).collect();
    let unit = s
        .unit
        .iter()
        .filter(|(key, _)| key.parse::<usize>().map_or(false, |n| n <= k))
        .map(|(a, b)| (a.clone(), b.clone()))
        .collect();
    let actions = s.actions.as_ref().map(|a| {
        SymmetricSequence::new_unchecked(
            carrier.clone(),
            a.actions()
                .iter()
                .enumerate()
                .map(|(n, gs)| if n > k { gs.iter().map(|_| Matrix::zeros(0, 0)).collect() } else { gs.clone() })
                .collect(),
        )
    });
    Structure::new(s.product, s.variance, carrier, actions, components, unit)
}

fn ones(r: usize, c: usize) -> Matrix {
    Matrix::ones(r, c)
}

fn single_unit(n: usize, m: Matrix) -> BTreeMap<String, Matrix> {
    BTreeMap::from([(n.to_string(), m)])
}

fn with_components(
    product: Product,
    carrier: &GradedObject,
    f: impl Fn(&Slot) -> Matrix,
) -> BTreeMap<String, Matrix> {
    slots(product, carrier).iter().map(|s| (key_of(product, &s.factors), f(s))).collect()
}

/// Positions of letters: `Ass_n` and linear orders have basis the words of
/// length `n` in `0..n`, lexicographic, acted on by relabelling letters.
fn words(n: usize) -> Vec<Vec<usize>> {
    all_permutations(n)
}

fn word_index(w: &[usize]) -> usize {
    words(w.len()).iter().position(|x| x == w).unwrap()
}

fn word_actions(n_max: usize) -> SymmetricSequence {
    let carrier = GradedObject::new((0..=n_max).map(|n| if n == 0 { 0 } else { words(n).len() }).collect());
    word_actions_on(carrier, n_max)
}

fn word_actions_on(carrier: GradedObject, n_max: usize) -> SymmetricSequence {
    let actions = (0..=n_max)
        .map(|n| {
            let ws = words(n);
            (0..n.saturating_sub(1))
                .map(|i| {
                    let g = generator(n, i);
                    let perm: Vec<usize> = ws.iter().map(|w| word_index(&compose_perms(&g, w))).collect();
                    if carrier.dim(n) == 0 {
                        Matrix::zeros(0, 0)
                    } else {
                        Matrix::permutation(&perm)
                    }
                })
                .collect()
        })
        .collect();
    SymmetricSequence::new_unchecked(carrier, actions)
}

/// `θ(w_1, …, w_m)`: the letters of `θ` in order, each replaced by the shifted block word.
fn substitute_words(theta: &[usize], ws: &[Vec<usize>]) -> Vec<usize> {
    let mut offs = vec![0usize; ws.len()];
    for t in 1..ws.len() {
        offs[t] = offs[t - 1] + ws[t - 1].len();
    }
    theta.iter().flat_map(|&t| { let o = offs[t]; ws[t].iter().map(move |&x| x + o) }).collect()
}

pub const EXAMPLES: [&str; 12] = [
    "poly",
    "divided-power",
    "exterior",
    "dual-numbers",
    "hadamard-unit",
    "exp",
    "lin",
    "com",
    "com-dual",
    "ass",
    "ass-planar",
    "end",
];

/// A named example at truncation `n`; `"end"` uses a 2-dimensional space.
pub fn example_library(name: &str, n: usize) -> Result<Structure, StructureError> {
    let all_ones = GradedObject::new(vec![1; n + 1]);
    let positive_ones = GradedObject::new((0..=n).map(|d| usize::from(d > 0)).collect());
    let mk = |p, v, c: GradedObject, a, comps, unit| Structure::new(p, v, c, a, comps, unit);
    match name {
        "poly" => mk(
            Product::Cauchy,
            Variance::Monoid,
            all_ones.clone(),
            None,
            with_components(Product::Cauchy, &all_ones, |_| ones(1, 1)),
            single_unit(0, ones(1, 1)),
        ),
        "divided-power" => Ok(example_library("poly", n)?.transpose()),
        "exterior" => {
            let carrier = GradedObject::new((0..=n).map(|d| [1, 2, 1].get(d).copied().unwrap_or(0)).collect());
            let comps = with_components(Product::Cauchy, &carrier, |s| match (s.factors[0], s.factors[1]) {
                (0, _) | (_, 0) => Matrix::identity(carrier.dim(s.target)),
                _ => Matrix::from_i64(&[&[0, 1, -1, 0]]),
            });
            mk(Product::Cauchy, Variance::Monoid, carrier, None, comps, single_unit(0, ones(1, 1)))
        }
        "dual-numbers" => {
            let carrier = GradedObject::new(vec![2; n + 1]);
            let mu = Matrix::from_i64(&[&[1, 0, 0, 0], &[0, 1, 1, 0]]);
            let unit = (0..=n).map(|d| (d.to_string(), Matrix::from_i64(&[&[1], &[0]]))).collect();
            mk(Product::Hadamard, Variance::Monoid, carrier.clone(), None, with_components(Product::Hadamard, &carrier, |_| mu.clone()), unit)
        }
        "hadamard-unit" => {
            let unit = (0..=n).map(|d| (d.to_string(), ones(1, 1))).collect();
            mk(Product::Hadamard, Variance::Monoid, all_ones.clone(), None, with_components(Product::Hadamard, &all_ones, |_| ones(1, 1)), unit)
        }
        "exp" => mk(
            Product::Cauchy,
            Variance::Monoid,
            all_ones.clone(),
            Some(SymmetricSequence::trivial(all_ones.clone())),
            with_components(Product::Cauchy, &all_ones, |_| ones(1, 1)),
            single_unit(0, ones(1, 1)),
        ),
        "lin" => {
            let carrier = GradedObject::new((0..=n).map(|d| words(d).len()).collect());
            let actions = word_actions_on(carrier.clone(), n);
            let comps = with_components(Product::Cauchy, &carrier, |s| {
                let (k, m) = (s.factors[0], s.factors[1]);
                let (wk, wm) = (words(k), words(m));
                let mut mat = Matrix::zeros(carrier.dim(k + m), wk.len() * wm.len());
                for (i, u) in wk.iter().enumerate() {
                    for (j, v) in wm.iter().enumerate() {
                        let w: Vec<usize> = u.iter().copied().chain(v.iter().map(|x| x + k)).collect();
                        mat.set(word_index(&w), i * wm.len() + j, Rational::from_integer(1.into()));
                    }
                }
                mat
            });
            mk(Product::Cauchy, Variance::Monoid, carrier, Some(actions), comps, single_unit(0, ones(1, 1)))
        }
        "com" => mk(
            Product::Substitution,
            Variance::Monoid,
            positive_ones.clone(),
            Some(SymmetricSequence::trivial(positive_ones.clone())),
            with_components(Product::Substitution, &positive_ones, |_| ones(1, 1)),
            if n >= 1 { single_unit(1, ones(1, 1)) } else { BTreeMap::new() },
        ),
        "com-dual" => dual(&example_library("com", n)?),
        "ass-planar" => mk(
            Product::Substitution,
            Variance::Monoid,
            positive_ones.clone(),
            None,
            with_components(Product::Substitution, &positive_ones, |_| ones(1, 1)),
            if n >= 1 { single_unit(1, ones(1, 1)) } else { BTreeMap::new() },
        ),
        "ass" => {
            let actions = word_actions(n);
            let carrier = actions.underlying().clone();
            let comps = with_components(Product::Substitution, &carrier, |s| {
                let m = s.factors[0];
                let ns = &s.factors[1..];
                let mut lists = vec![words(m)];
                lists.extend(ns.iter().map(|&x| words(x)));
                let sizes: Vec<usize> = lists.iter().map(Vec::len).collect();
                let mut mat = Matrix::zeros(carrier.dim(s.target), sizes.iter().product());
                for (col, idx) in crate::species::kronecker_indices(&sizes).into_iter().enumerate() {
                    let ws: Vec<Vec<usize>> = idx[1..].iter().zip(&lists[1..]).map(|(&i, l)| l[i].clone()).collect();
                    let w = substitute_words(&lists[0][idx[0]], &ws);
                    mat.set(word_index(&w), col, Rational::from_integer(1.into()));
                }
                mat
            });
            mk(Product::Substitution, Variance::Monoid, carrier, Some(actions), comps, if n >= 1 { single_unit(1, ones(1, 1)) } else { BTreeMap::new() })
        }
        "end" => end_operad(2, n),
        other => Err(StructureError::UnknownExample(other.to_string())),
    }
}

/// `End(V)_n = Hom(V^{⊗n}, V)` with basis `E_{r,c}` at index `r·d^n + c`;
/// `S_n` permutes the tensor factors of the source.
pub fn end_operad(d: usize, n_max: usize) -> Result<Structure, StructureError> {
    let pw = |n: usize| d.pow(n as u32);
    let carrier = GradedObject::new((0..=n_max).map(|n| d * pw(n)).collect());
    let digits = |mut c: usize, n: usize| {
        let mut out = vec![0; n];
        for i in (0..n).rev() {
            out[i] = c % d;
            c /= d;
        }
        out
    };
    let undigits = |ds: &[usize]| ds.iter().fold(0, |acc, &x| acc * d + x);
    let actions = (0..=n_max)
        .map(|n| {
            (0..n.saturating_sub(1))
                .map(|i| {
                    let perm: Vec<usize> = (0..d * pw(n))
                        .map(|idx| {
                            let (r, c) = (idx / pw(n), idx % pw(n));
                            let mut ds = digits(c, n);
                            ds.swap(i, i + 1);
                            r * pw(n) + undigits(&ds)
                        })
                        .collect();
                    Matrix::permutation(&perm)
                })
                .collect()
        })
        .collect();
    let actions = SymmetricSequence::new_unchecked(carrier.clone(), actions);
    let comps = with_components(Product::Substitution, &carrier, |s| {
        let m = s.factors[0];
        let ns = &s.factors[1..];
        let mut sizes = vec![d * pw(m)];
        sizes.extend(ns.iter().map(|&x| d * pw(x)));
        let mut mat = Matrix::zeros(carrier.dim(s.target), sizes.iter().product());
        for (col, idx) in crate::species::kronecker_indices(&sizes).into_iter().enumerate() {
            let (r, inputs) = (idx[0] / pw(m), digits(idx[0] % pw(m), m));
            let mut cs = Vec::new();
            let mut ok = true;
            for (t, &x) in ns.iter().enumerate() {
                let (j, c) = (idx[t + 1] / pw(x), idx[t + 1] % pw(x));
                ok &= j == inputs[t];
                cs.extend(digits(c, x));
            }
            if ok {
                mat.set(r * pw(s.target) + undigits(&cs), col, Rational::from_integer(1.into()));
            }
        }
        mat
    });
    let mut unit = BTreeMap::new();
    if n_max >= 1 {
        // The identity map of V: E_{r,r}.
        let mut eta = Matrix::zeros(d * d, 1);
        for r in 0..d {
            eta.set(r * d + r, 0, Rational::from_integer(1.into()));
        }
        unit.insert("1".to_string(), eta);
    }
    Structure::new(Product::Substitution, Variance::Monoid, carrier, Some(actions), comps, unit)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn library_passes() {
        for name in EXAMPLES {
            let n = if name == "end" { 2 } else { 4 };
            let s = example_library(name, n).unwrap();
            let r = check_structure(&s);
            assert!(r.passed(), "{name}:\n{}", r.failures().iter().map(|i| format!("{i:?}\n")).collect::<String>());
        }
    }

    #[test]
    fn wrong_actions_break_equivariance() {
        let com = example_library("com", 3).unwrap();
        let sign = SymmetricSequence::new(
            com.carrier().clone(),
            (0..=3usize).map(|n| vec![Matrix::from_i64(&[&[-1]]); n.saturating_sub(1)]).collect(),
        )
        .unwrap();
        let twisted = Structure::new(
            Product::Substitution,
            Variance::Monoid,
            com.carrier().clone(),
            Some(sign),
            com.components().clone(),
            com.units().clone(),
        )
        .unwrap();
        let r = check_structure(&twisted);
        assert!(r.failures().iter().any(|i| i.axiom == "equivariance-outer"));

        // Ass with letters permuted by position instead of by value.
        let ass = example_library("ass", 3).unwrap();
        let ws = all_permutations(3);
        let by_position: Vec<Matrix> = (0..2)
            .map(|i| {
                let g = generator(3, i);
                Matrix::permutation(&ws.iter().map(|w| word_index(&compose_perms(w, &g))).collect::<Vec<_>>())
            })
            .collect();
        let mut acts = ass.actions().unwrap().actions().to_vec();
        acts[3] = by_position;
        let wrong = Structure::new(
            Product::Substitution,
            Variance::Monoid,
            ass.carrier().clone(),
            Some(SymmetricSequence::new(ass.carrier().clone(), acts).unwrap()),
            ass.components().clone(),
            ass.units().clone(),
        )
        .unwrap();
        assert!(!check_structure(&wrong).passed());
    }

    #[test]
    fn library_dims() {
        assert_eq!(example_library("com", 3).unwrap().carrier().dims(), &[0, 1, 1, 1]);
        assert_eq!(example_library("ass", 3).unwrap().carrier().dims(), &[0, 1, 2, 6]);
        assert_eq!(example_library("end", 2).unwrap().carrier().dims(), &[2, 4, 8]);
        assert!(example_library("nope", 2).is_err());
    }

    #[test]
    fn corrupting_one_entry_fails_only_touching_instances() {
        let s = example_library("poly", 3).unwrap();
        let mut comps = s.components().clone();
        comps.insert("1,2".into(), Matrix::from_i64(&[&[2]]));
        let bad = Structure::new(Product::Cauchy, Variance::Monoid, s.carrier().clone(), None, comps, s.units().clone()).unwrap();
        let r = check_structure(&bad);
        let failed: Vec<(&str, &str)> = r.failures().iter().map(|i| (i.axiom.as_str(), i.indices.as_str())).collect();
        assert_eq!(failed, vec![("associativity", "1,1,1")]);
    }

    #[test]
    fn duals_and_double_duals() {
        let p = example_library("poly", 3).unwrap();
        let dp = graded_dual(&p).unwrap();
        assert_eq!(dp.variance(), Variance::Comonoid);
        assert!(check_structure(&dp).passed());
        assert_eq!(graded_dual(&dp).unwrap(), p);
        let cd = example_library("com-dual", 3).unwrap();
        assert!(cd.components().values().all(|m| *m == Matrix::ones(1, 1)));
        assert_eq!(operad_dual(&example_library("end", 2).unwrap()), Err(StructureError::NotPositive));
    }

    #[test]
    fn hadamard_products() {
        let com = example_library("com", 3).unwrap();
        assert_eq!(hadamard_of_monoids(&com, &com).unwrap(), com);
        let ass = example_library("ass", 3).unwrap();
        let ac = hadamard_of_monoids(&ass, &com).unwrap();
        assert_eq!(ac.carrier().dims(), &[0, 1, 2, 6]);
        assert!(check_structure(&ac).passed());
        let ext = example_library("exterior", 3).unwrap();
        let poly = example_library("poly", 3).unwrap();
        assert_eq!(hadamard_of_monoids(&ext, &poly).unwrap(), ext);
        let dn = example_library("dual-numbers", 2).unwrap();
        assert!(check_structure(&hadamard_of_monoids(&dn, &dn).unwrap()).passed());
        let dp = example_library("divided-power", 3).unwrap();
        assert!(check_structure(&hadamard_of_monoids(&dp, &dp).unwrap()).passed());
        let lin = example_library("lin", 3).unwrap();
        let exp = example_library("exp", 3).unwrap();
        assert!(check_structure(&hadamard_of_monoids(&lin, &exp).unwrap()).passed());
    }

    #[test]
    fn transport_and_truncation() {
        let ext = example_library("exterior", 3).unwrap();
        let t = vec![Matrix::from_i64(&[&[2]]), Matrix::from_i64(&[&[1, 1], &[0, 1]]), Matrix::from_i64(&[&[3]]), Matrix::zeros(0, 0)];
        let moved = transport(&ext, &t).unwrap();
        assert_ne!(moved, ext);
        assert!(check_structure(&moved).passed());
        let dual = transport(&ext.transpose(), &t).unwrap();
        assert!(check_structure(&dual).passed());
        let ass = example_library("ass", 3).unwrap();
        let perm = Matrix::permutation(&[1, 0]);
        let moved = transport(&ass, &[Matrix::zeros(0, 0), Matrix::identity(1), perm, Matrix::identity(6)]).unwrap();
        assert!(check_structure(&moved).passed());
        let com2 = truncate_above(&example_library("com", 3).unwrap(), 2).unwrap();
        assert_eq!(com2.carrier().dims(), &[0, 1, 1, 0]);
        assert!(check_structure(&com2).passed());
        let p1 = truncate_above(&example_library("poly", 3).unwrap(), 1).unwrap();
        assert!(check_structure(&p1).passed());
    }

    #[test]
    fn block_form_round_trip() {
        for name in ["poly", "ass", "end", "dual-numbers"] {
            let s = example_library(name, 2).unwrap();
            let back = Structure::from_block_form(s.product(), s.carrier().clone(), s.actions().cloned(), &s.block_form(), s.units().clone()).unwrap();
            assert_eq!(back, s);
        }
    }

    #[test]
    fn monoid_maps() {
        let p = example_library("poly", 3).unwrap();
        let id = GradedMap::identity(p.carrier());
        assert!(check_monoid_map(&id, &p, &p).unwrap().passed());
        let scale = GradedMap::new(p.carrier().clone(), p.carrier().clone(), (0..4).map(|n| Matrix::from_i64(&[&[2i64.pow(n)]])).collect()).unwrap();
        assert!(check_monoid_map(&scale, &p, &p).unwrap().passed());
        let bad = GradedMap::new(p.carrier().clone(), p.carrier().clone(), (0..4).map(|_| Matrix::from_i64(&[&[2]])).collect()).unwrap();
        assert!(!check_monoid_map(&bad, &p, &p).unwrap().passed());
    }
}
