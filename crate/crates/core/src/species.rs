//! Symmetric sequences with actions of the symmetric groups.
//!
//! Actions are stored through the adjacent transpositions `s_1, …, s_{n-1}`
//! (stored 0-based: `actions[n][i]` acts by swapping positions `i` and `i+1`).
//! Permutations are vectors with `perm[j]` the image of `j`, matching
//! [`Matrix::permutation`], and compose as functions: `(σ∘τ)(x) = σ(τ(x))`.

use std::collections::{BTreeMap, HashMap, VecDeque};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graded::{
    compositions, finitely_supported, GradedError, GradedMap, GradedObject, UnitKind,
};
use crate::linalg::{image_splitting, kron, LinalgError, Matrix, Rational, DEFAULT_GROUP_BOUND};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpeciesError {
    #[error(transparent)]
    Graded(#[from] GradedError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("invalid symmetric sequence: {0}")]
    Invalid(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawSequence", into = "RawSequence")]
pub struct SymmetricSequence {
    underlying: GradedObject,
    actions: Vec<Vec<Matrix>>,
}

/// An action generator: a full matrix or a permutation shorthand.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum ActionEntry {
    Perm { perm: Vec<usize> },
    Full(Matrix),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSequence {
    truncation: usize,
    dims: Vec<usize>,
    actions: Vec<Vec<ActionEntry>>,
}

impl TryFrom<RawSequence> for SymmetricSequence {
    type Error = String;
    fn try_from(r: RawSequence) -> Result<Self, String> {
        if r.dims.len() != r.truncation + 1 {
            return Err("dims length must be truncation + 1".into());
        }
        let mut actions = Vec::new();
        for entries in r.actions {
            let mut gens = Vec::new();
            for e in entries {
                gens.push(match e {
                    ActionEntry::Full(m) => m,
                    ActionEntry::Perm { perm } => {
                        let mut seen = vec![false; perm.len()];
                        for &p in &perm {
                            if p >= perm.len() || std::mem::replace(&mut seen[p], true) {
                                return Err(format!("{perm:?} is not a permutation"));
                            }
                        }
                        Matrix::permutation(&perm)
                    }
                });
            }
            actions.push(gens);
        }
        SymmetricSequence::new(GradedObject::new(r.dims), actions).map_err(|e| e.to_string())
    }
}

impl From<SymmetricSequence> for RawSequence {
    fn from(s: SymmetricSequence) -> Self {
        RawSequence {
            truncation: s.underlying.truncation(),
            dims: s.underlying.dims().to_vec(),
            actions: s
                .actions
                .into_iter()
                .map(|gens| gens.into_iter().map(ActionEntry::Full).collect())
                .collect(),
        }
    }
}

impl SymmetricSequence {
    /// Validates shapes and the Coxeter relations.
    pub fn new(underlying: GradedObject, actions: Vec<Vec<Matrix>>) -> Result<Self, SpeciesError> {
        let s = SymmetricSequence { underlying, actions };
        s.validate()?;
        Ok(s)
    }

    pub fn new_unchecked(underlying: GradedObject, actions: Vec<Vec<Matrix>>) -> Self {
        SymmetricSequence { underlying, actions }
    }

    /// Every generator acts as the identity.
    pub fn trivial(underlying: GradedObject) -> Self {
        let actions = underlying
            .dims()
            .iter()
            .enumerate()
            .map(|(n, &d)| (0..n.saturating_sub(1)).map(|_| Matrix::identity(d)).collect())
            .collect();
        SymmetricSequence { underlying, actions }
    }

    pub fn unit(kind: UnitKind, n: usize) -> Self {
        Self::trivial(GradedObject::unit(kind, n))
    }

    /// `Com`: the trivial one-dimensional representation in every positive degree.
    pub fn com(n: usize) -> Self {
        Self::trivial(GradedObject::new((0..=n).map(|d| usize::from(d > 0)).collect()))
    }

    pub fn truncation(&self) -> usize {
        self.underlying.truncation()
    }

    pub fn underlying(&self) -> &GradedObject {
        &self.underlying
    }

    pub fn dim(&self, n: usize) -> usize {
        self.underlying.dim(n)
    }

    pub fn generators(&self, n: usize) -> &[Matrix] {
        &self.actions[n]
    }

    pub fn actions(&self) -> &[Vec<Matrix>] {
        &self.actions
    }

    pub fn validate(&self) -> Result<(), SpeciesError> {
        let n_max = self.underlying.truncation();
        if self.actions.len() != n_max + 1 {
            return Err(SpeciesError::Invalid(format!(
                "{} action lists for truncation {n_max}",
                self.actions.len()
            )));
        }
        for (n, gens) in self.actions.iter().enumerate() {
            let d = self.underlying.dim(n);
            if gens.len() != n.saturating_sub(1) {
                return Err(SpeciesError::Invalid(format!("degree {n} needs {} generators", n.saturating_sub(1))));
            }
            for (i, g) in gens.iter().enumerate() {
                if g.shape() != (d, d) {
                    return Err(SpeciesError::Invalid(format!("degree {n}, generator {i}: wrong shape")));
                }
                if g.mul(g) != Matrix::identity(d) {
                    return Err(SpeciesError::Invalid(format!("degree {n}: s_{i} does not square to 1")));
                }
                if let Some(h) = gens.get(i + 1) {
                    if g.mul(h).mul(g) != h.mul(g).mul(h) {
                        return Err(SpeciesError::Invalid(format!("degree {n}: braid relation fails at {i}")));
                    }
                }
                for h in gens.iter().skip(i + 2) {
                    if g.mul(h) != h.mul(g) {
                        return Err(SpeciesError::Invalid(format!("degree {n}: far generators do not commute")));
                    }
                }
            }
        }
        Ok(())
    }

    /// `ρ(σ)` on the degree-`n` component.
    pub fn act(&self, n: usize, perm: &[usize]) -> Matrix {
        assert_eq!(perm.len(), n);
        let mut out = Matrix::identity(self.dim(n));
        for i in reduced_word(perm) {
            out = out.mul(&self.actions[n][i]);
        }
        out
    }
}

pub fn forget_to_graded(a: &SymmetricSequence) -> GradedObject {
    a.underlying.clone()
}

pub fn egf(a: &SymmetricSequence) -> Vec<Rational> {
    let mut fact = Rational::one();
    a.underlying
        .dims()
        .iter()
        .enumerate()
        .map(|(n, &d)| {
            if n > 0 {
                fact *= Rational::from_integer(n.into());
            }
            Rational::from_integer(d.into()) / &fact
        })
        .collect()
}

/// A word `[i_1, …, i_k]` with `perm = s_{i_1} ∘ … ∘ s_{i_k}`, of minimal length.
pub fn reduced_word(perm: &[usize]) -> Vec<usize> {
    let mut p = perm.to_vec();
    let mut word = Vec::new();
    loop {
        match (0..p.len().saturating_sub(1)).find(|&j| p[j] > p[j + 1]) {
            Some(j) => {
                p.swap(j, j + 1);
                word.push(j);
            }
            None => break,
        }
    }
    word.reverse();
    word
}

pub fn compose_perms(sigma: &[usize], tau: &[usize]) -> Vec<usize> {
    tau.iter().map(|&t| sigma[t]).collect()
}

pub fn invert_perm(sigma: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; sigma.len()];
    for (i, &s) in sigma.iter().enumerate() {
        inv[s] = i;
    }
    inv
}

/// All permutations of `0..m` in lexicographic order.
pub fn all_permutations(m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..m).collect();
    loop {
        out.push(p.clone());
        let Some(i) = (0..m.saturating_sub(1)).rev().find(|&i| p[i] < p[i + 1]) else {
            break;
        };
        let j = (i + 1..m).rev().find(|&j| p[j] > p[i]).unwrap();
        p.swap(i, j);
        p[i + 1..].reverse();
    }
    out
}

/// Positions (0-based) of each block of a shuffle.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Shuffle {
    pub parts: Vec<usize>,
    pub blocks: Vec<Vec<usize>>,
}

/// Shuffles of `parts`, lexicographic in the concatenated position sets.
pub fn shuffles(parts: &[usize]) -> Vec<Shuffle> {
    fn combos(avail: &[usize], k: usize) -> Vec<Vec<usize>> {
        fn go(avail: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            for i in start..avail.len() {
                if avail.len() - i < k - cur.len() {
                    break;
                }
                cur.push(avail[i]);
                go(avail, k, i + 1, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(avail, k, 0, &mut Vec::new(), &mut out);
        out
    }
    fn go(avail: Vec<usize>, parts: &[usize], prefix: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        let Some((&first, rest)) = parts.split_first() else {
            out.push(prefix.clone());
            return;
        };
        for c in combos(&avail, first) {
            let remaining: Vec<usize> = avail.iter().copied().filter(|x| !c.contains(x)).collect();
            prefix.push(c);
            go(remaining, rest, prefix, out);
            prefix.pop();
        }
    }
    let n: usize = parts.iter().sum();
    let mut out = Vec::new();
    go((0..n).collect(), parts, &mut Vec::new(), &mut out);
    out.into_iter().map(|blocks| Shuffle { parts: parts.to_vec(), blocks }).collect()
}

/// A basis label of a species Cauchy product `A_1 • … • A_m` in degree `n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CauchyLabel {
    pub shuffle: Shuffle,
    pub inner: Vec<usize>,
}

/// Labels in the normative order: composition, shuffle, then inner indices.
pub fn cauchy_labels(factors: &[&SymmetricSequence], n: usize) -> Vec<CauchyLabel> {
    let mut out = Vec::new();
    for comp in compositions(n, factors.len()) {
        let dims: Vec<usize> = comp.iter().zip(factors).map(|(&k, f)| f.dim(k)).collect();
        if dims.iter().any(|&d| d == 0) {
            continue;
        }
        for sh in shuffles(&comp) {
            for inner in kronecker_indices(&dims) {
                out.push(CauchyLabel { shuffle: sh.clone(), inner });
            }
        }
    }
    out
}

pub(crate) fn kronecker_indices(dims: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &d in dims {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..d).map(move |i| {
                    let mut p = prefix.clone();
                    p.push(i);
                    p
                })
            })
            .collect();
    }
    out
}

pub(crate) type Sparse<L> = Vec<(L, Rational)>;

/// Action of `s_p` on a Cauchy label, as a combination of labels.
pub fn cauchy_label_action(factors: &[&SymmetricSequence], label: &CauchyLabel, p: usize) -> Sparse<CauchyLabel> {
    let blocks = &label.shuffle.blocks;
    let owner = |x: usize| blocks.iter().position(|b| b.contains(&x)).unwrap();
    let (t, u) = (owner(p), owner(p + 1));
    if t == u {
        let local = blocks[t].iter().position(|&x| x == p).unwrap();
        let k = blocks[t].len();
        let g = &factors[t].actions[k][local];
        let col = label.inner[t];
        (0..g.rows())
            .filter(|&r| !g.get(r, col).is_zero())
            .map(|r| {
                let mut l = label.clone();
                l.inner[t] = r;
                (l, g.get(r, col).clone())
            })
            .collect()
    } else {
        let mut l = label.clone();
        for x in l.shuffle.blocks[t].iter_mut() {
            if *x == p {
                *x = p + 1;
            }
        }
        for x in l.shuffle.blocks[u].iter_mut() {
            if *x == p + 1 {
                *x = p;
            }
        }
        vec![(l, Rational::one())]
    }
}

/// Moves factor `t` to position `perm[t]`.
pub fn permute_factors(label: &CauchyLabel, perm: &[usize]) -> CauchyLabel {
    let m = perm.len();
    let mut parts = vec![0; m];
    let mut blocks = vec![Vec::new(); m];
    let mut inner = vec![0; m];
    for t in 0..m {
        parts[perm[t]] = label.shuffle.parts[t];
        blocks[perm[t]] = label.shuffle.blocks[t].clone();
        inner[perm[t]] = label.inner[t];
    }
    CauchyLabel { shuffle: Shuffle { parts, blocks }, inner }
}

fn label_index(labels: &[CauchyLabel]) -> HashMap<CauchyLabel, usize> {
    labels.iter().cloned().enumerate().map(|(i, l)| (l, i)).collect()
}

fn cauchy_action_matrices(factors: &[&SymmetricSequence], labels: &[CauchyLabel], n: usize) -> Vec<Matrix> {
    let index = label_index(labels);
    (0..n.saturating_sub(1))
        .map(|p| {
            let mut m = Matrix::zeros(labels.len(), labels.len());
            for (j, l) in labels.iter().enumerate() {
                for (t, c) in cauchy_label_action(factors, l, p) {
                    m.add_at(index[&t], j, &c);
                }
            }
            m
        })
        .collect()
}

fn same_truncation(factors: &[&SymmetricSequence]) -> Result<usize, SpeciesError> {
    let n = factors[0].truncation();
    for f in factors {
        if f.truncation() != n {
            return Err(GradedError::TruncationMismatch(n, f.truncation()).into());
        }
    }
    Ok(n)
}

/// Cauchy product of several species at truncation `n_max`.
pub fn species_cauchy_many(factors: &[&SymmetricSequence], n_max: usize) -> SymmetricSequence {
    let mut dims = Vec::new();
    let mut actions = Vec::new();
    for n in 0..=n_max {
        let labels = cauchy_labels(factors, n);
        dims.push(labels.len());
        actions.push(cauchy_action_matrices(factors, &labels, n));
    }
    SymmetricSequence::new_unchecked(GradedObject::new(dims), actions)
}

pub fn species_cauchy(a: &SymmetricSequence, b: &SymmetricSequence) -> Result<SymmetricSequence, SpeciesError> {
    let n = same_truncation(&[a, b])?;
    Ok(species_cauchy_many(&[a, b], n))
}

/// Degreewise tensor product with the diagonal action.
pub fn species_hadamard(a: &SymmetricSequence, b: &SymmetricSequence) -> Result<SymmetricSequence, SpeciesError> {
    let n_max = same_truncation(&[a, b])?;
    let dims = (0..=n_max).map(|n| a.dim(n) * b.dim(n)).collect();
    let actions = (0..=n_max)
        .map(|n| a.generators(n).iter().zip(b.generators(n)).map(|(x, y)| kron(x, y)).collect())
        .collect();
    Ok(SymmetricSequence::new_unchecked(GradedObject::new(dims), actions))
}

/// `A^{•m}` and the action of the factor swaps `t ↔ t+1` per degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MFold {
    pub product: SymmetricSequence,
    pub block_actions: Vec<Vec<Matrix>>,
}

pub fn species_m_fold(a: &SymmetricSequence, m: usize) -> MFold {
    let factors = vec![a; m];
    let n_max = a.truncation();
    let product = species_cauchy_many(&factors, n_max);
    let block_actions = (0..=n_max)
        .map(|n| {
            let labels = cauchy_labels(&factors, n);
            let index = label_index(&labels);
            (0..m.saturating_sub(1))
                .map(|t| {
                    let mut perm: Vec<usize> = (0..m).collect();
                    perm.swap(t, t + 1);
                    let mut mat = Matrix::zeros(labels.len(), labels.len());
                    for (j, l) in labels.iter().enumerate() {
                        mat.set(index[&permute_factors(l, &perm)], j, Rational::one());
                    }
                    mat
                })
                .collect()
        })
        .collect();
    MFold { product, block_actions }
}

/// One `P_m`-orbit of Cauchy labels with its stabilizer coinvariants.
#[derive(Clone, Debug)]
struct Orbit {
    members: Vec<usize>,
    /// `q_H ∘ ρ_A(g_x⁻¹)` for each member `x = g_x·r`.
    to_quotient: Vec<Matrix>,
    /// `ρ_A(g_x) ∘ inc_H` for each member.
    from_quotient: Vec<Matrix>,
    dim: usize,
}

/// The substitution product with its raw presentation.
///
/// The raw space in degree `n` is `⊕_m A_m ⊗ (B^{•m})_n`, ordered by ascending
/// `m`, each block a Kronecker product with the `A_m` index outermost.
#[derive(Clone, Debug)]
pub struct Substitution {
    pub result: SymmetricSequence,
    pub raw_dims: Vec<usize>,
    pub quotient: Vec<Matrix>,
    pub inclusion: Vec<Matrix>,
}

pub fn species_substitution(a: &SymmetricSequence, b: &SymmetricSequence) -> Result<Substitution, SpeciesError> {
    species_substitution_bounded(a, b, DEFAULT_GROUP_BOUND)
}

pub fn species_substitution_bounded(
    a: &SymmetricSequence,
    b: &SymmetricSequence,
    max_group: usize,
) -> Result<Substitution, SpeciesError> {
    let n_max = same_truncation(&[a, b])?;
    if b.dim(0) != 0 && !finitely_supported(a.underlying()) {
        return Err(GradedError::InfiniteSum.into());
    }
    let mut perms_by_m = Vec::new();
    let mut order = 1usize;
    for m in 0..=n_max {
        if m > 0 {
            order = order.saturating_mul(m);
        }
        if a.dim(m) > 0 && order > max_group {
            return Err(LinalgError::GroupTooLarge(max_group).into());
        }
        perms_by_m.push(if a.dim(m) > 0 { all_permutations(m) } else { Vec::new() });
    }
    let mut dims = Vec::new();
    let mut actions = Vec::new();
    let mut raw_dims = Vec::new();
    let mut quotients = Vec::new();
    let mut inclusions = Vec::new();
    for n in 0..=n_max {
        let mut blocks = Vec::new();
        for m in 0..=n_max {
            if a.dim(m) == 0 {
                continue;
            }
            let factors = vec![b; m];
            let labels = cauchy_labels(&factors, n);
            if labels.is_empty() {
                continue;
            }
            let orbits = orbits_for(a, m, &labels, &perms_by_m[m]);
            blocks.push((m, factors, labels, orbits));
        }
        let raw: usize = blocks.iter().map(|(m, _, l, _)| a.dim(*m) * l.len()).sum();
        let dim: usize = blocks.iter().map(|(_, _, _, o)| o.iter().map(|x| x.dim).sum::<usize>()).sum();
        let mut quotient = Matrix::zeros(dim, raw);
        let mut inclusion = Matrix::zeros(raw, dim);
        let (mut raw_off, mut q_off) = (0, 0);
        let mut placements = Vec::new();
        for (m, factors, labels, orbits) in &blocks {
            let am = a.dim(*m);
            let l = labels.len();
            let mut member_place = vec![(0usize, 0usize); l];
            for orbit in orbits {
                let size = Rational::from_integer(orbit.members.len().into());
                for (k, &x) in orbit.members.iter().enumerate() {
                    member_place[x] = (q_off, k);
                    for ai in 0..am {
                        for j in 0..orbit.dim {
                            quotient.set(q_off + j, raw_off + ai * l + x, orbit.to_quotient[k].get(j, ai).clone());
                            inclusion.set(
                                raw_off + ai * l + x,
                                q_off + j,
                                orbit.from_quotient[k].get(ai, j).clone() / &size,
                            );
                        }
                    }
                }
                q_off += orbit.dim;
            }
            placements.push((raw_off, *m, factors.clone(), labels.clone()));
            raw_off += am * l;
        }
        let gens = (0..n.saturating_sub(1))
            .map(|p| {
                let mut act = Matrix::zeros(raw, raw);
                for (off, m, factors, labels) in &placements {
                    let index = label_index(labels);
                    let l = labels.len();
                    for (x, lab) in labels.iter().enumerate() {
                        for (t, c) in cauchy_label_action(factors, lab, p) {
                            for ai in 0..a.dim(*m) {
                                act.add_at(off + ai * l + index[&t], off + ai * l + x, &c);
                            }
                        }
                    }
                }
                quotient.mul(&act).mul(&inclusion)
            })
            .collect();
        dims.push(dim);
        actions.push(gens);
        raw_dims.push(raw);
        quotients.push(quotient);
        inclusions.push(inclusion);
    }
    Ok(Substitution {
        result: SymmetricSequence::new_unchecked(GradedObject::new(dims), actions),
        raw_dims,
        quotient: quotients,
        inclusion: inclusions,
    })
}

fn orbits_for(a: &SymmetricSequence, m: usize, labels: &[CauchyLabel], perms: &[Vec<usize>]) -> Vec<Orbit> {
    let index = label_index(labels);
    let rho: BTreeMap<Vec<usize>, Matrix> = perms.iter().map(|g| (g.clone(), a.act(m, g))).collect();
    let mut seen = vec![false; labels.len()];
    let mut out = Vec::new();
    for r in 0..labels.len() {
        if seen[r] {
            continue;
        }
        // Breadth-first over the orbit, recording a group element reaching each member.
        let mut reach: Vec<(usize, Vec<usize>)> = Vec::new();
        let mut queue = VecDeque::from([(r, (0..m).collect::<Vec<usize>>())]);
        seen[r] = true;
        while let Some((x, g)) = queue.pop_front() {
            for t in 0..m.saturating_sub(1) {
                let mut s: Vec<usize> = (0..m).collect();
                s.swap(t, t + 1);
                let y = index[&permute_factors(&labels[x], &s)];
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back((y, compose_perms(&s, &g)));
                }
            }
            reach.push((x, g));
        }
        reach.sort();
        let stabilizer: Vec<&Vec<usize>> =
            perms.iter().filter(|g| permute_factors(&labels[r], g) == labels[r]).collect();
        let d = a.dim(m);
        let mut e = Matrix::zeros(d, d);
        for h in &stabilizer {
            e = e.add(&rho[*h]);
        }
        let e = e.scale(&(Rational::one() / Rational::from_integer(stabilizer.len().into())));
        let (inc, quo) = image_splitting(&e);
        let mut orbit = Orbit { members: Vec::new(), to_quotient: Vec::new(), from_quotient: Vec::new(), dim: inc.cols() };
        for (x, g) in reach {
            orbit.members.push(x);
            orbit.to_quotient.push(quo.mul(&rho[&invert_perm(&g)]));
            orbit.from_quotient.push(rho[&g].mul(&inc));
        }
        out.push(orbit);
    }
    out
}

pub fn equivariance_check(f: &GradedMap, a: &SymmetricSequence, b: &SymmetricSequence) -> Result<bool, SpeciesError> {
    if &f.source != a.underlying() || &f.target != b.underlying() {
        return Err(SpeciesError::Shape("map does not match the given species".into()));
    }
    Ok(f.components.iter().enumerate().all(|(n, c)| {
        a.actions[n].iter().zip(&b.actions[n]).all(|(ga, gb)| c.mul(ga) == gb.mul(c))
    }))
}
