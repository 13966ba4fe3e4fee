//! Seeded generators for objects, maps, species, structures and measurings.

use std::collections::BTreeMap;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::duoidal::{Duoidal, DuoidalPair, DuoidalSamples, SpeciesSamples};
use crate::graded::{GradedMap, GradedObject, Product};
use crate::linalg::{direct_sum, frac, Matrix, Rational};
use crate::measuring::{convolution_monoid, untranspose_maps, MeasuringCandidate, MeasuringError};
use crate::species::{all_permutations, invert_perm, SymmetricSequence};
use crate::structures::{example_library, forget_actions, transport, truncate_above, Structure, Variance};

pub struct Gen {
    rng: ChaCha8Rng,
}

/// A one- or two-dimensional irreducible representation of `S_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Irrep {
    Trivial,
    Sign,
    /// The two-dimensional representation of `S_3`, pulled back to `S_4`.
    Standard,
}

impl Irrep {
    fn dim(self) -> usize {
        if self == Irrep::Standard {
            2
        } else {
            1
        }
    }

    /// The image of `s_i` in `S_n`.
    fn generator(self, n: usize, i: usize) -> Matrix {
        match self {
            Irrep::Trivial => Matrix::identity(1),
            Irrep::Sign => Matrix::from_i64(&[&[-1]]),
            Irrep::Standard => {
                let j = if n == 4 && i == 2 { 0 } else { i };
                if j == 0 {
                    Matrix::from_i64(&[&[-1, 1], &[0, 1]])
                } else {
                    Matrix::from_i64(&[&[1, 0], &[1, -1]])
                }
            }
        }
    }
}

impl Gen {
    pub fn new(seed: u64) -> Self {
        Gen { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn below(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    pub fn coin(&mut self) -> bool {
        self.rng.gen_bool(0.5)
    }

    /// `p/q` with `|p| ≤ 3`, `q ∈ {1, 2}`.
    pub fn rational(&mut self) -> Rational {
        let p = self.rng.gen_range(-3..=3);
        let q = self.rng.gen_range(1..=2);
        frac(p, q)
    }

    pub fn nonzero_rational(&mut self) -> Rational {
        loop {
            let r = self.rational();
            if !r.is_zero() {
                return r;
            }
        }
    }

    pub fn matrix(&mut self, rows: usize, cols: usize) -> Matrix {
        let data = (0..rows * cols).map(|_| self.rational()).collect();
        Matrix::new(rows, cols, data).expect("sized data")
    }

    /// A product of a permutation and unit triangular factors with a nonzero diagonal.
    pub fn invertible(&mut self, n: usize) -> Matrix {
        let mut lower = Matrix::identity(n);
        let mut upper = Matrix::identity(n);
        for r in 0..n {
            for c in 0..n {
                if r > c {
                    lower.set(r, c, self.rational());
                } else if r < c {
                    upper.set(r, c, self.rational());
                } else {
                    upper.set(r, c, self.nonzero_rational());
                }
            }
        }
        let mut perm: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            perm.swap(i, self.below(i + 1));
        }
        Matrix::permutation(&perm).mul(&lower).mul(&upper)
    }

    pub fn graded_object(&mut self, truncation: usize, max_dim: usize) -> GradedObject {
        GradedObject::new((0..=truncation).map(|_| self.below(max_dim + 1)).collect())
    }

    pub fn positive_object(&mut self, truncation: usize, max_dim: usize) -> GradedObject {
        GradedObject::new((0..=truncation).map(|n| if n == 0 { 0 } else { self.below(max_dim + 1) }).collect())
    }

    pub fn graded_map(&mut self, source: &GradedObject, target: &GradedObject) -> GradedMap {
        let comps = (0..=source.truncation()).map(|n| self.matrix(target.dim(n), source.dim(n))).collect();
        GradedMap::new(source.clone(), target.clone(), comps).expect("matching truncations")
    }

    /// Six objects and four maps; positive when the pair needs it.
    pub fn duoidal_samples(&mut self, pair: DuoidalPair, truncation: usize, max_dim: usize) -> DuoidalSamples {
        let positive = pair.requires_positive();
        let obj = |g: &mut Gen| {
            if positive {
                g.positive_object(truncation, max_dim)
            } else {
                g.graded_object(truncation, max_dim)
            }
        };
        let objects: Vec<GradedObject> = (0..6).map(|_| obj(self)).collect();
        let maps = (0..4)
            .map(|i| {
                let t = obj(self);
                self.graded_map(&objects[i], &t)
            })
            .collect();
        DuoidalSamples { objects, maps }
    }

    fn irreps(&mut self, n: usize, max_dim: usize) -> Vec<Irrep> {
        let dim = self.below(max_dim.min(2) + 1);
        let one = |g: &mut Gen| if n >= 2 && g.coin() { Irrep::Sign } else { Irrep::Trivial };
        match dim {
            0 => Vec::new(),
            1 => vec![one(self)],
            _ => {
                if (n == 3 || n == 4) && self.below(3) == 0 {
                    vec![Irrep::Standard]
                } else {
                    vec![one(self), one(self)]
                }
            }
        }
    }

    /// Sums of small irreducibles in each degree, in a random basis.
    pub fn species(&mut self, truncation: usize, max_dim: usize, positive: bool) -> SymmetricSequence {
        let mut dims = Vec::new();
        let mut actions = Vec::new();
        for n in 0..=truncation {
            let parts = if positive && n == 0 { Vec::new() } else { self.irreps(n, max_dim) };
            let d: usize = parts.iter().map(|p| p.dim()).sum();
            let t = self.invertible(d);
            let t_inv = t.inverse().expect("invertible");
            let gens = (0..n.saturating_sub(1))
                .map(|i| {
                    let blocks: Vec<Matrix> = parts.iter().map(|p| p.generator(n, i)).collect();
                    t.mul(&direct_sum(&blocks)).mul(&t_inv)
                })
                .collect();
            dims.push(d);
            actions.push(gens);
        }
        SymmetricSequence::new(GradedObject::new(dims), actions).expect("irreducible sums satisfy the relations")
    }

    /// The average over `S_n` of a random map, which is equivariant.
    pub fn equivariant_map(&mut self, source: &SymmetricSequence, target: &SymmetricSequence) -> GradedMap {
        let comps = (0..=source.truncation())
            .map(|n| {
                let m = self.matrix(target.dim(n), source.dim(n));
                let perms = all_permutations(n);
                let mut acc = Matrix::zeros(m.rows(), m.cols());
                for p in &perms {
                    acc = acc.add(&target.act(n, p).mul(&m).mul(&source.act(n, &invert_perm(p))));
                }
                acc.scale(&frac(1, perms.len() as i64))
            })
            .collect();
        GradedMap::new(source.underlying().clone(), target.underlying().clone(), comps).expect("matching truncations")
    }

    pub fn species_samples(&mut self, truncation: usize, max_dim: usize) -> SpeciesSamples {
        let objects: Vec<SymmetricSequence> = (0..6).map(|_| self.species(truncation, max_dim, false)).collect();
        let targets: Vec<SymmetricSequence> = (0..4).map(|_| self.species(truncation, max_dim, false)).collect();
        let maps = (0..4).map(|i| self.equivariant_map(&objects[i], &targets[i])).collect();
        SpeciesSamples { objects, targets, maps }
    }

    fn transport_randomly(&mut self, s: &Structure) -> Structure {
        let t: Vec<Matrix> = s.carrier().dims().iter().map(|&d| self.invertible(d)).collect();
        transport(s, &t).expect("invertible maps")
    }

    /// A random algebra in each degree, in a random basis.
    pub fn hadamard_monoid(&mut self, truncation: usize) -> Structure {
        self.hadamard_monoid_bounded(truncation, 2)
    }

    /// Degreewise algebras of dimension at most `max_dim` (1 or 2).
    pub fn hadamard_monoid_bounded(&mut self, truncation: usize, max_dim: usize) -> Structure {
        let mut dims = Vec::new();
        let mut comps = BTreeMap::new();
        let mut unit = BTreeMap::new();
        for n in 0..=truncation {
            let pick = if max_dim >= 2 { self.below(4) } else { 3 * self.below(2) };
            let (mu, eta) = match pick {
                0 => (Matrix::ones(1, 1), Matrix::ones(1, 1)),
                // k[ε]/(ε²)
                1 => (Matrix::from_i64(&[&[1, 0, 0, 0], &[0, 1, 1, 0]]), Matrix::from_i64(&[&[1], &[0]])),
                // k × k
                2 => (Matrix::from_i64(&[&[1, 0, 0, 0], &[0, 0, 0, 1]]), Matrix::from_i64(&[&[1], &[1]])),
                _ => (Matrix::zeros(0, 0), Matrix::zeros(0, 1)),
            };
            dims.push(mu.rows());
            if mu.rows() > 0 {
                comps.insert(n.to_string(), mu);
                unit.insert(n.to_string(), eta);
            }
        }
        let s = Structure::new(Product::Hadamard, Variance::Monoid, GradedObject::new(dims), None, comps, unit)
            .expect("degreewise algebras");
        self.transport_randomly(&s)
    }

    pub fn cauchy_monoid(&mut self, truncation: usize) -> Structure {
        let n = truncation;
        let base = match self.below(4) {
            0 => example_library("poly", n),
            1 => example_library("exterior", n),
            2 => even_polynomials(n),
            _ => {
                let k = self.below(n + 1);
                truncate_above(&example_library("poly", n).expect("library"), k)
            }
        }
        .expect("library example");
        self.transport_randomly(&base)
    }

    /// Positive non-symmetric operads with small components.
    pub fn operad(&mut self, truncation: usize) -> Structure {
        let n = truncation;
        let base = match self.below(3) {
            0 => example_library("com", n),
            1 => example_library("ass-planar", n),
            _ => {
                let k = 1 + self.below(n.max(1));
                truncate_above(&example_library("com", n).expect("library"), k)
            }
        }
        .expect("library example");
        self.transport_randomly(&forget_actions(&base))
    }

    pub fn monoid(&mut self, product: Product, truncation: usize) -> Structure {
        match product {
            Product::Hadamard => self.hadamard_monoid(truncation),
            Product::Cauchy => self.cauchy_monoid(truncation),
            Product::Substitution => self.operad(truncation),
        }
    }

    pub fn comonoid(&mut self, product: Product, truncation: usize) -> Structure {
        self.monoid(product, truncation).transpose()
    }

    /// Like `monoid`, with components of dimension at most one.
    pub fn small_monoid(&mut self, product: Product, truncation: usize) -> Structure {
        match product {
            Product::Hadamard => self.hadamard_monoid_bounded(truncation, 1),
            _ => self.monoid(product, truncation),
        }
    }

    pub fn small_comonoid(&mut self, product: Product, truncation: usize) -> Structure {
        self.small_monoid(product, truncation).transpose()
    }

    /// A measuring into `b`: `A` is the convolution monoid on `[C,B]` in a
    /// random basis `T`, and `φ` is the untransposed `T⁻¹`.
    pub fn measuring_into(&mut self, d: &Duoidal, c: &Structure, b: &Structure) -> Result<MeasuringCandidate, MeasuringError> {
        let hom = convolution_monoid(d, c, b)?;
        let t: Vec<Matrix> = hom.carrier().dims().iter().map(|&k| self.invertible(k)).collect();
        let a = transport(&hom, &t)?;
        let t_inv: Vec<Matrix> = t.iter().map(|m| m.inverse().expect("invertible")).collect();
        let phi = untranspose_maps(d.diamond, c.carrier(), a.carrier(), b.carrier(), &t_inv)?;
        Ok(MeasuringCandidate { comonoid: c.clone(), source: a, target: b.clone(), phi })
    }

    pub fn measuring(&mut self, d: &Duoidal, truncation: usize) -> Result<MeasuringCandidate, MeasuringError> {
        let c = self.comonoid(d.star, truncation);
        let b = self.monoid(d.star, truncation);
        self.measuring_into(d, &c, &b)
    }

    /// Adds a nonzero value to one entry of `φ`, when `φ` has any entries.
    pub fn perturb(&mut self, m: &MeasuringCandidate) -> MeasuringCandidate {
        let mut out = m.clone();
        let sized: Vec<usize> = (0..m.phi.len()).filter(|&n| m.phi[n].rows() * m.phi[n].cols() > 0).collect();
        if sized.is_empty() {
            return out;
        }
        let n = sized[self.below(sized.len())];
        let (r, c) = (self.below(m.phi[n].rows()), self.below(m.phi[n].cols()));
        let v = m.phi[n].get(r, c) + self.nonzero_rational();
        out.phi[n].set(r, c, v);
        out
    }
}

/// `k[y]` with `y` in degree 2.
pub fn even_polynomials(truncation: usize) -> Result<Structure, crate::structures::StructureError> {
    let carrier = GradedObject::new((0..=truncation).map(|n| usize::from(n % 2 == 0)).collect());
    let comps = crate::structures::slots(Product::Cauchy, &carrier)
        .iter()
        .map(|s| (crate::structures::key_of(Product::Cauchy, &s.factors), Matrix::ones(1, 1)))
        .collect();
    Structure::new(
        Product::Cauchy,
        Variance::Monoid,
        carrier,
        None,
        comps,
        BTreeMap::from([("0".to_string(), Matrix::ones(1, 1))]),
    )
}
