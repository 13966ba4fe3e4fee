//! Truncated ℕ-graded objects and the Hadamard, Cauchy and substitution products.
//!
//! A [`GradedObject`] records `dim V_n` for `0 ≤ n ≤ N`. Block orderings are fixed
//! crate-wide: Cauchy blocks `(k, n-k)` by ascending `k`; substitution blocks by
//! ascending arity `m`, then compositions `(n_1, …, n_m)` in lexicographic order,
//! each block a Kronecker product `V_m ⊗ W_{n_1} ⊗ … ⊗ W_{n_m}`.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{direct_sum, kron, kron_all, Matrix, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GradedError {
    #[error("truncation mismatch: {0} vs {1}")]
    TruncationMismatch(usize, usize),
    #[error("infinite m-sum at truncation")]
    InfiniteSum,
    #[error("braiding parameter q must be nonzero")]
    ZeroBraiding,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("graded object needs at least one degree")]
    Empty,
}

/// The three products on graded objects.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Product {
    Hadamard,
    Cauchy,
    Substitution,
}

impl Product {
    pub fn unit(self) -> UnitKind {
        match self {
            Product::Hadamard => UnitKind::Hadamard,
            Product::Cauchy => UnitKind::Cauchy,
            Product::Substitution => UnitKind::Substitution,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Product::Hadamard => "⊗",
            Product::Cauchy => "•",
            Product::Substitution => "∘",
        }
    }
}

/// Units: `𝐈` (all ones), `𝟏` (one in degree 0), `𝐗` (one in degree 1).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum UnitKind {
    Hadamard,
    Cauchy,
    Substitution,
}

impl UnitKind {
    pub fn dim(self, n: usize) -> usize {
        match self {
            UnitKind::Hadamard => 1,
            UnitKind::Cauchy => usize::from(n == 0),
            UnitKind::Substitution => usize::from(n == 1),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawGraded", deny_unknown_fields)]
pub struct GradedObject {
    truncation: usize,
    dims: Vec<usize>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGraded {
    truncation: usize,
    dims: Vec<usize>,
}

impl TryFrom<RawGraded> for GradedObject {
    type Error = String;
    fn try_from(r: RawGraded) -> Result<Self, String> {
        if r.dims.len() != r.truncation + 1 {
            return Err(format!(
                "dims has {} entries but truncation {} needs {}",
                r.dims.len(),
                r.truncation,
                r.truncation + 1
            ));
        }
        Ok(GradedObject { truncation: r.truncation, dims: r.dims })
    }
}

impl GradedObject {
    /// Truncation is `dims.len() - 1`.
    pub fn new(dims: Vec<usize>) -> Self {
        assert!(!dims.is_empty(), "a graded object has at least degree 0");
        GradedObject { truncation: dims.len() - 1, dims }
    }

    pub fn zero(n: usize) -> Self {
        Self::new(vec![0; n + 1])
    }

    pub fn unit(kind: UnitKind, n: usize) -> Self {
        Self::new((0..=n).map(|d| kind.dim(d)).collect())
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, n: usize) -> usize {
        self.dims.get(n).copied().unwrap_or(0)
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }
}

pub fn positive_check(v: &GradedObject) -> bool {
    v.dims[0] == 0
}

pub fn positive_truncate(v: &GradedObject) -> GradedObject {
    let mut dims = v.dims.clone();
    dims[0] = 0;
    GradedObject::new(dims)
}

/// Support of `v` ends strictly below the truncation degree.
pub fn finitely_supported(v: &GradedObject) -> bool {
    v.dims[v.truncation] == 0
}

fn same_truncation(v: &GradedObject, w: &GradedObject) -> Result<usize, GradedError> {
    if v.truncation != w.truncation {
        return Err(GradedError::TruncationMismatch(v.truncation, w.truncation));
    }
    Ok(v.truncation)
}

pub fn hadamard(v: &GradedObject, w: &GradedObject) -> Result<GradedObject, GradedError> {
    let n = same_truncation(v, w)?;
    Ok(GradedObject::new((0..=n).map(|d| v.dims[d] * w.dims[d]).collect()))
}

pub fn cauchy(v: &GradedObject, w: &GradedObject) -> Result<GradedObject, GradedError> {
    let n = same_truncation(v, w)?;
    Ok(GradedObject::new(
        (0..=n).map(|d| (0..=d).map(|k| v.dims[k] * w.dims[d - k]).sum()).collect(),
    ))
}

/// Compositions of `n` into `m` non-negative parts, lexicographic.
pub fn compositions(n: usize, m: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, m: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if m == 0 {
            if n == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        if m == 1 {
            prefix.push(n);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for first in 0..=n {
            prefix.push(first);
            go(n - first, m - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, m, &mut Vec::new(), &mut out);
    out
}

/// Compositions of `n` into `m` positive parts, lexicographic.
pub fn positive_compositions(n: usize, m: usize) -> Vec<Vec<usize>> {
    compositions(n, m).into_iter().filter(|c| c.iter().all(|&x| x > 0)).collect()
}

pub fn m_fold_cauchy(v: &GradedObject, m: usize) -> GradedObject {
    let n = v.truncation;
    GradedObject::new(
        (0..=n)
            .map(|d| compositions(d, m).iter().map(|c| c.iter().map(|&x| v.dims[x]).product::<usize>()).sum())
            .collect(),
    )
}

/// Arity range contributing to `(v ∘ w)` in degrees `≤ N`.
pub fn substitution_arities(v: &GradedObject, w: &GradedObject) -> Result<usize, GradedError> {
    let n = same_truncation(v, w)?;
    if w.dims[0] != 0 && !finitely_supported(v) {
        return Err(GradedError::InfiniteSum);
    }
    Ok(n)
}

pub fn substitution(v: &GradedObject, w: &GradedObject) -> Result<GradedObject, GradedError> {
    let n = substitution_arities(v, w)?;
    Ok(substitution_dims(v, w, n))
}

/// Substitution dimensions with arities bounded by `max_arity` and no
/// finiteness check.
pub fn substitution_dims(v: &GradedObject, w: &GradedObject, max_arity: usize) -> GradedObject {
    let n = v.truncation;
    GradedObject::new(
        (0..=n)
            .map(|d| {
                (0..=max_arity)
                    .map(|m| {
                        v.dims[m.min(n)] * usize::from(m <= n)
                            * compositions(d, m)
                                .iter()
                                .map(|c| c.iter().map(|&x| w.dims[x]).product::<usize>())
                                .sum::<usize>()
                    })
                    .sum()
            })
            .collect(),
    )
}

pub fn internal_hom(kind: Product, v: &GradedObject, w: &GradedObject) -> Result<GradedObject, GradedError> {
    let n = same_truncation(v, w)?;
    let dims = match kind {
        Product::Hadamard => (0..=n).map(|d| v.dims[d] * w.dims[d]).collect(),
        Product::Cauchy => (0..=n).map(|d| (0..=n - d).map(|i| v.dims[i] * w.dims[i + d]).sum()).collect(),
        Product::Substitution => (0..=n)
            .map(|d| {
                let vd = m_fold_cauchy(v, d);
                (0..=n).map(|m| vd.dims[m] * w.dims[m]).sum()
            })
            .collect(),
    };
    Ok(GradedObject::new(dims))
}

/// Coefficients of the Hilbert polynomial.
pub fn hilbert(v: &GradedObject) -> Vec<usize> {
    v.dims.clone()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawGradedMap", deny_unknown_fields)]
pub struct GradedMap {
    pub source: GradedObject,
    pub target: GradedObject,
    pub components: Vec<Matrix>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGradedMap {
    source: GradedObject,
    target: GradedObject,
    components: Vec<Matrix>,
}

impl TryFrom<RawGradedMap> for GradedMap {
    type Error = String;
    fn try_from(r: RawGradedMap) -> Result<Self, String> {
        GradedMap::new(r.source, r.target, r.components).map_err(|e| e.to_string())
    }
}

impl GradedMap {
    pub fn new(source: GradedObject, target: GradedObject, components: Vec<Matrix>) -> Result<Self, GradedError> {
        same_truncation(&source, &target)?;
        if components.len() != source.truncation + 1 {
            return Err(GradedError::Shape(format!(
                "{} components for truncation {}",
                components.len(),
                source.truncation
            )));
        }
        for (n, c) in components.iter().enumerate() {
            if c.shape() != (target.dims[n], source.dims[n]) {
                return Err(GradedError::Shape(format!(
                    "degree {n}: component is {}x{}, expected {}x{}",
                    c.rows(),
                    c.cols(),
                    target.dims[n],
                    source.dims[n]
                )));
            }
        }
        Ok(GradedMap { source, target, components })
    }

    pub fn identity(v: &GradedObject) -> Self {
        GradedMap {
            source: v.clone(),
            target: v.clone(),
            components: v.dims.iter().map(|&d| Matrix::identity(d)).collect(),
        }
    }

    pub fn zero(source: &GradedObject, target: &GradedObject) -> Self {
        GradedMap {
            source: source.clone(),
            target: target.clone(),
            components: (0..=source.truncation).map(|n| Matrix::zeros(target.dims[n], source.dims[n])).collect(),
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &GradedMap) -> Result<GradedMap, GradedError> {
        if other.target != self.source {
            return Err(GradedError::Shape("composable maps need matching middle object".into()));
        }
        Ok(GradedMap {
            source: other.source.clone(),
            target: self.target.clone(),
            components: self.components.iter().zip(&other.components).map(|(a, b)| a.mul(b)).collect(),
        })
    }

    pub fn first_difference(&self, other: &GradedMap) -> Option<(usize, usize, usize)> {
        for (n, (a, b)) in self.components.iter().zip(&other.components).enumerate() {
            if let Some((r, c)) = a.first_difference(b) {
                return Some((n, r, c));
            }
        }
        None
    }
}

pub fn hadamard_maps(f: &GradedMap, g: &GradedMap) -> Result<GradedMap, GradedError> {
    Ok(GradedMap {
        source: hadamard(&f.source, &g.source)?,
        target: hadamard(&f.target, &g.target)?,
        components: f.components.iter().zip(&g.components).map(|(a, b)| kron(a, b)).collect(),
    })
}

pub fn cauchy_maps(f: &GradedMap, g: &GradedMap) -> Result<GradedMap, GradedError> {
    let n = same_truncation(&f.source, &g.source)?;
    let components = (0..=n)
        .map(|d| {
            let blocks: Vec<Matrix> = (0..=d).map(|k| kron(&f.components[k], &g.components[d - k])).collect();
            direct_sum(&blocks)
        })
        .collect();
    Ok(GradedMap { source: cauchy(&f.source, &g.source)?, target: cauchy(&f.target, &g.target)?, components })
}

pub fn substitution_maps(f: &GradedMap, g: &GradedMap) -> Result<GradedMap, GradedError> {
    let n = same_truncation(&f.source, &g.source)?;
    let source = substitution(&f.source, &g.source)?;
    let target = substitution(&f.target, &g.target)?;
    let components = (0..=n)
        .map(|d| {
            let mut blocks = Vec::new();
            for m in 0..=n {
                for c in compositions(d, m) {
                    let mut factors = vec![f.components[m].clone()];
                    factors.extend(c.iter().map(|&x| g.components[x].clone()));
                    blocks.push(kron_all(&factors));
                }
            }
            direct_sum(&blocks)
        })
        .collect();
    Ok(GradedMap { source, target, components })
}

/// Product of truncated power series; the result has the shorter length.
pub fn series_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().min(b.len());
    (0..n).map(|k| (0..=k).map(|i| &a[i] * &b[k - i]).sum()).collect()
}

/// `f(g(x))` for `g(0) = 0`, by Horner's rule; `None` if `g(0) ≠ 0`.
pub fn series_compose(f: &[Rational], g: &[Rational]) -> Option<Vec<Rational>> {
    if g.first().is_some_and(|c| !c.is_zero()) {
        return None;
    }
    let n = f.len().min(g.len());
    let mut out = vec![Rational::zero(); n];
    for c in f[..n].iter().rev() {
        out = series_mul(&out, &g[..n]);
        out[0] += c;
    }
    Some(out)
}

pub fn to_series(dims: &[usize]) -> Vec<Rational> {
    dims.iter().map(|&d| Rational::from_integer(d.into())).collect()
}

pub fn rational_pow(q: &Rational, e: usize) -> Rational {
    let mut out = Rational::one();
    for _ in 0..e {
        out *= q;
    }
    out
}

/// `β_q : V•W → W•V`, block `(k,m)` to block `(m,k)` scaled by `q^{km}`.
pub fn cauchy_braiding(v: &GradedObject, w: &GradedObject, q: &Rational) -> Result<GradedMap, GradedError> {
    let n = same_truncation(v, w)?;
    if q.is_zero() {
        return Err(GradedError::ZeroBraiding);
    }
    let source = cauchy(v, w)?;
    let target = cauchy(w, v)?;
    let mut components = Vec::new();
    for d in 0..=n {
        let mut m = Matrix::zeros(target.dims[d], source.dims[d]);
        let mut src_off = vec![0; d + 1];
        let mut tgt_off = vec![0; d + 1];
        for k in 1..=d {
            src_off[k] = src_off[k - 1] + v.dims[k - 1] * w.dims[d - k + 1];
            tgt_off[k] = tgt_off[k - 1] + w.dims[k - 1] * v.dims[d - k + 1];
        }
        for k in 0..=d {
            let mm = d - k;
            let scale = rational_pow(q, k * mm);
            for i in 0..v.dims[k] {
                for j in 0..w.dims[mm] {
                    let s = src_off[k] + i * w.dims[mm] + j;
                    let t = tgt_off[mm] + j * v.dims[k] + i;
                    m.set(t, s, scale.clone());
                }
            }
        }
        components.push(m);
    }
    Ok(GradedMap { source, target, components })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q as r;

    fn g(d: &[usize]) -> GradedObject {
        GradedObject::new(d.to_vec())
    }

    #[test]
    fn product_dimension_examples() {
        assert_eq!(hadamard(&g(&[2, 3]), &g(&[4, 5])).unwrap(), g(&[8, 15]));
        assert_eq!(cauchy(&g(&[1, 1, 0]), &g(&[0, 2, 0])).unwrap(), g(&[0, 2, 2]));
        assert_eq!(m_fold_cauchy(&g(&[0, 1, 1, 1]), 2).dims()[3], 2);
        assert_eq!(m_fold_cauchy(&g(&[3, 1, 2]), 0), GradedObject::unit(UnitKind::Cauchy, 2));
        assert_eq!(substitution(&g(&[0, 1, 1]), &g(&[0, 1, 1])).unwrap().dims()[2], 2);
        let one = GradedObject::unit(UnitKind::Cauchy, 3);
        assert_eq!(hadamard(&one, &one).unwrap(), one);
    }

    #[test]
    fn substitution_units_and_error() {
        let x = GradedObject::unit(UnitKind::Substitution, 3);
        let w = g(&[1, 2, 0, 1]);
        let v = g(&[0, 2, 1, 1]);
        assert_eq!(substitution(&x, &w).unwrap(), w);
        assert_eq!(substitution(&v, &x).unwrap(), v);
        assert_eq!(substitution(&g(&[1, 1]), &g(&[1, 1])), Err(GradedError::InfiniteSum));
    }

    #[test]
    fn internal_hom_examples() {
        assert_eq!(internal_hom(Product::Cauchy, &g(&[1, 1]), &g(&[1, 1])).unwrap(), g(&[2, 1]));
        let w = g(&[2, 0, 3]);
        assert_eq!(internal_hom(Product::Hadamard, &GradedObject::unit(UnitKind::Hadamard, 2), &w).unwrap(), w);
    }

    #[test]
    fn positivity() {
        assert!(positive_check(&GradedObject::unit(UnitKind::Substitution, 2)));
        assert!(!positive_check(&GradedObject::unit(UnitKind::Cauchy, 2)));
        assert_eq!(positive_truncate(&g(&[2, 1])), g(&[0, 1]));
    }

    #[test]
    fn braiding_squares_to_diagonal() {
        let v = g(&[1, 2, 1]);
        let w = g(&[2, 1, 1]);
        let qv = r(-1);
        let b1 = cauchy_braiding(&v, &w, &qv).unwrap();
        let b2 = cauchy_braiding(&w, &v, &qv).unwrap();
        let sq = b2.compose(&b1).unwrap();
        assert_eq!(sq, GradedMap::identity(&cauchy(&v, &w).unwrap()));
        let q2 = r(2);
        let s = cauchy_braiding(&w, &v, &q2).unwrap().compose(&cauchy_braiding(&v, &w, &q2).unwrap()).unwrap();
        // block (1,1) of degree 2 has scale 2^{2}.
        let off = v.dims()[0] * w.dims()[2];
        assert_eq!(s.components[2].get(off, off), &r(4));
        assert_eq!(cauchy_braiding(&v, &w, &r(0)), Err(GradedError::ZeroBraiding));
    }

    #[test]
    fn q_minus_one_signs_degree_one_swap() {
        let v = g(&[0, 1]);
        let b = cauchy_braiding(&v, &v, &r(-1)).unwrap();
        let m = &b.components[1];
        assert_eq!(m.shape(), (0, 0));
        let v2 = g(&[0, 1, 0]);
        let b = cauchy_braiding(&v2, &v2, &r(-1)).unwrap();
        assert_eq!(b.components[2], Matrix::from_i64(&[&[-1]]));
    }

    #[test]
    fn compositions_are_lexicographic() {
        assert_eq!(compositions(2, 2), vec![vec![0, 2], vec![1, 1], vec![2, 0]]);
        assert_eq!(compositions(0, 0), vec![Vec::<usize>::new()]);
        assert!(compositions(1, 0).is_empty());
        assert_eq!(positive_compositions(3, 2), vec![vec![1, 2], vec![2, 1]]);
    }

    #[test]
    fn series_arithmetic() {
        let one_plus_x = to_series(&[1, 1, 0, 0]);
        assert_eq!(series_mul(&one_plus_x, &one_plus_x), to_series(&[1, 2, 1, 0]));
        // exp(x) - 1 composed into 1/(1-x).
        let geo = to_series(&[1, 1, 1, 1]);
        let e = vec![Rational::zero(), Rational::one(), Rational::new(1.into(), 2.into()), Rational::new(1.into(), 6.into())];
        let c = series_compose(&geo, &e).unwrap();
        assert_eq!(c[3], Rational::new(13.into(), 6.into()));
        assert_eq!(series_compose(&geo, &geo), None);
    }
}
