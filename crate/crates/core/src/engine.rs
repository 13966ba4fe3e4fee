//! Basis labels for nested products and linear maps between them.
//!
//! An [`Expr`] is a bracketed product of slot objects and units. Its basis in
//! degree `n` is a list of [`Label`] trees in the normative block order, so a
//! map given as a label rewrite can be materialized as a matrix. Substitution
//! sums over arities `m ≤ N`.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::graded::{compositions, GradedError, GradedObject, Product};
use crate::linalg::{Matrix, Rational};
use crate::species::{kronecker_indices, SymmetricSequence};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error(transparent)]
    Graded(#[from] GradedError),
    #[error("label {0} is not in the target basis")]
    MissingLabel(String),
    #[error("substitution of species is not supported by the label engine")]
    SpeciesSubstitution,
    #[error("shape mismatch: {0}")]
    Shape(String),
}

/// Units, including the positive Hadamard unit (`𝐈` with degree 0 removed).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Unit {
    Hadamard,
    Cauchy,
    Substitution,
    HadamardPositive,
}

impl Unit {
    pub fn dim(self, n: usize) -> usize {
        match self {
            Unit::Hadamard => 1,
            Unit::Cauchy => usize::from(n == 0),
            Unit::Substitution => usize::from(n == 1),
            Unit::HadamardPositive => usize::from(n > 0),
        }
    }

    pub fn object(self, n: usize) -> GradedObject {
        GradedObject::new((0..=n).map(|d| self.dim(d)).collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Expr {
    Atom(usize),
    Unit(Unit),
    Bin(Product, Rc<Expr>, Rc<Expr>),
}

impl Expr {
    pub fn atom(slot: usize) -> Expr {
        Expr::Atom(slot)
    }

    pub fn unit(u: Unit) -> Expr {
        Expr::Unit(u)
    }

    pub fn bin(p: Product, a: Expr, b: Expr) -> Expr {
        Expr::Bin(p, Rc::new(a), Rc::new(b))
    }

    pub fn had(a: Expr, b: Expr) -> Expr {
        Self::bin(Product::Hadamard, a, b)
    }

    pub fn cau(a: Expr, b: Expr) -> Expr {
        Self::bin(Product::Cauchy, a, b)
    }

    pub fn sub(a: Expr, b: Expr) -> Expr {
        Self::bin(Product::Substitution, a, b)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Atom { slot: usize, deg: usize, idx: usize },
    Unit { deg: usize },
    Had(Box<Label>, Box<Label>),
    /// `sel` holds the positions of the left factor for species, `None` for graded.
    Cau { sel: Option<Vec<usize>>, left: Box<Label>, right: Box<Label> },
    Sub { outer: Box<Label>, inner: Vec<Label> },
}

impl Label {
    pub fn deg(&self) -> usize {
        match self {
            Label::Atom { deg, .. } | Label::Unit { deg } => *deg,
            Label::Had(a, _) => a.deg(),
            Label::Cau { left, right, .. } => left.deg() + right.deg(),
            Label::Sub { inner, .. } => inner.iter().map(Label::deg).sum(),
        }
    }

    pub fn had(a: Label, b: Label) -> Label {
        Label::Had(Box::new(a), Box::new(b))
    }

    pub fn cau(sel: Option<Vec<usize>>, a: Label, b: Label) -> Label {
        Label::Cau { sel, left: Box::new(a), right: Box::new(b) }
    }

    pub fn sub(outer: Label, inner: Vec<Label>) -> Label {
        Label::Sub { outer: Box::new(outer), inner }
    }
}

pub type Comb = Vec<(Label, Rational)>;
pub type LinMap = Rc<dyn Fn(&Label) -> Comb>;

pub struct Basis {
    pub labels: Vec<Label>,
    pub index: HashMap<Label, usize>,
}

struct Inner {
    truncation: usize,
    species: bool,
    slots: Vec<SymmetricSequence>,
    cache: RefCell<HashMap<(Expr, usize), Rc<Basis>>>,
}

/// Slot objects plus a basis cache.
#[derive(Clone)]
pub struct Engine {
    inner: Rc<Inner>,
}

/// Where two maps first disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Difference {
    pub degree: usize,
    pub source: usize,
    pub target: Option<usize>,
    pub left: Rational,
    pub right: Rational,
}

impl Engine {
    pub fn graded(truncation: usize, slots: Vec<GradedObject>) -> Result<Engine, EngineError> {
        for s in &slots {
            if s.truncation() != truncation {
                return Err(GradedError::TruncationMismatch(truncation, s.truncation()).into());
            }
        }
        Ok(Self::build(truncation, false, slots.into_iter().map(SymmetricSequence::trivial).collect()))
    }

    pub fn species(truncation: usize, slots: Vec<SymmetricSequence>) -> Result<Engine, EngineError> {
        for s in &slots {
            if s.truncation() != truncation {
                return Err(GradedError::TruncationMismatch(truncation, s.truncation()).into());
            }
        }
        Ok(Self::build(truncation, true, slots))
    }

    fn build(truncation: usize, species: bool, slots: Vec<SymmetricSequence>) -> Engine {
        Engine { inner: Rc::new(Inner { truncation, species, slots, cache: RefCell::new(HashMap::new()) }) }
    }

    pub fn truncation(&self) -> usize {
        self.inner.truncation
    }

    pub fn is_species(&self) -> bool {
        self.inner.species
    }

    pub fn slot(&self, s: usize) -> &SymmetricSequence {
        &self.inner.slots[s]
    }

    pub fn basis(&self, e: &Expr, n: usize) -> Rc<Basis> {
        if let Some(b) = self.inner.cache.borrow().get(&(e.clone(), n)) {
            return b.clone();
        }
        let labels = self.enumerate(e, n);
        let index = labels.iter().cloned().enumerate().map(|(i, l)| (l, i)).collect();
        let b = Rc::new(Basis { labels, index });
        self.inner.cache.borrow_mut().insert((e.clone(), n), b.clone());
        b
    }

    pub fn dims(&self, e: &Expr) -> GradedObject {
        GradedObject::new((0..=self.truncation()).map(|n| self.basis(e, n).labels.len()).collect())
    }

    fn enumerate(&self, e: &Expr, n: usize) -> Vec<Label> {
        match e {
            Expr::Atom(s) => {
                (0..self.inner.slots[*s].dim(n)).map(|idx| Label::Atom { slot: *s, deg: n, idx }).collect()
            }
            Expr::Unit(u) => {
                if u.dim(n) == 1 {
                    vec![Label::Unit { deg: n }]
                } else {
                    Vec::new()
                }
            }
            Expr::Bin(Product::Hadamard, a, b) => {
                let (ba, bb) = (self.basis(a, n), self.basis(b, n));
                let mut out = Vec::with_capacity(ba.labels.len() * bb.labels.len());
                for x in &ba.labels {
                    for y in &bb.labels {
                        out.push(Label::had(x.clone(), y.clone()));
                    }
                }
                out
            }
            Expr::Bin(Product::Cauchy, a, b) => {
                let mut out = Vec::new();
                for k in 0..=n {
                    let (ba, bb) = (self.basis(a, k), self.basis(b, n - k));
                    if ba.labels.is_empty() || bb.labels.is_empty() {
                        continue;
                    }
                    let sels: Vec<Option<Vec<usize>>> = if self.inner.species {
                        subsets(n, k).into_iter().map(Some).collect()
                    } else {
                        vec![None]
                    };
                    for sel in sels {
                        for x in &ba.labels {
                            for y in &bb.labels {
                                out.push(Label::cau(sel.clone(), x.clone(), y.clone()));
                            }
                        }
                    }
                }
                out
            }
            Expr::Bin(Product::Substitution, a, b) => {
                assert!(!self.inner.species, "{}", EngineError::SpeciesSubstitution);
                let mut out = Vec::new();
                for m in 0..=self.truncation() {
                    let outer = self.basis(a, m);
                    if outer.labels.is_empty() {
                        continue;
                    }
                    for comp in compositions(n, m) {
                        let inner: Vec<Rc<Basis>> = comp.iter().map(|&d| self.basis(b, d)).collect();
                        let sizes: Vec<usize> = inner.iter().map(|x| x.labels.len()).collect();
                        if sizes.contains(&0) {
                            continue;
                        }
                        let tuples = kronecker_indices(&sizes);
                        for o in &outer.labels {
                            for t in &tuples {
                                let ls = t.iter().zip(&inner).map(|(&i, bs)| bs.labels[i].clone()).collect();
                                out.push(Label::sub(o.clone(), ls));
                            }
                        }
                    }
                }
                out
            }
        }
    }

    /// Matrix of `f` from `src` to `tgt` in degree `n`.
    pub fn materialize(&self, f: &LinMap, src: &Expr, tgt: &Expr, n: usize) -> Result<Matrix, EngineError> {
        let (bs, bt) = (self.basis(src, n), self.basis(tgt, n));
        let mut m = Matrix::zeros(bt.labels.len(), bs.labels.len());
        for (j, l) in bs.labels.iter().enumerate() {
            for (t, c) in f(l) {
                let i = bt.index.get(&t).ok_or_else(|| EngineError::MissingLabel(format!("{t:?}")))?;
                m.add_at(*i, j, &c);
            }
        }
        Ok(m)
    }

    pub fn materialize_all(&self, f: &LinMap, src: &Expr, tgt: &Expr) -> Result<Vec<Matrix>, EngineError> {
        (0..=self.truncation()).map(|n| self.materialize(f, src, tgt, n)).collect()
    }

    /// The map whose degree-`n` matrix on the bases of `src`, `tgt` is `comps[n]`.
    pub fn matrix_map(&self, src: &Expr, tgt: &Expr, comps: Vec<Matrix>) -> LinMap {
        let eng = self.clone();
        let (src, tgt) = (src.clone(), tgt.clone());
        let comps = Rc::new(comps);
        Rc::new(move |l: &Label| {
            let n = l.deg();
            let bs = eng.basis(&src, n);
            let Some(&j) = bs.index.get(l) else { return Vec::new() };
            let bt = eng.basis(&tgt, n);
            let m = &comps[n];
            (0..m.rows())
                .filter(|&i| !m.get(i, j).is_zero())
                .map(|i| (bt.labels[i].clone(), m.get(i, j).clone()))
                .collect()
        })
    }

    /// First source label on which `f` and `g` differ, in degrees `≤ N`.
    pub fn compare(&self, src: &Expr, tgt: &Expr, f: &LinMap, g: &LinMap) -> Option<Difference> {
        for n in 0..=self.truncation() {
            let bs = self.basis(src, n);
            for (j, l) in bs.labels.iter().enumerate() {
                let (a, b) = (normalize(f(l)), normalize(g(l)));
                if a != b {
                    let bad = a.keys().chain(b.keys()).find(|k| a.get(*k) != b.get(*k)).unwrap().clone();
                    let zero = Rational::zero();
                    return Some(Difference {
                        degree: n,
                        source: j,
                        target: self.basis(tgt, n).index.get(&bad).copied(),
                        left: a.get(&bad).unwrap_or(&zero).clone(),
                        right: b.get(&bad).unwrap_or(&zero).clone(),
                    });
                }
            }
        }
        None
    }

    /// Action of the adjacent transposition `s_p` on a species label.
    pub fn act(&self, l: &Label, p: usize) -> Comb {
        match l {
            Label::Atom { slot, deg, idx } => {
                let g = &self.inner.slots[*slot].generators(*deg)[p];
                (0..g.rows())
                    .filter(|&r| !g.get(r, *idx).is_zero())
                    .map(|r| (Label::Atom { slot: *slot, deg: *deg, idx: r }, g.get(r, *idx).clone()))
                    .collect()
            }
            Label::Unit { .. } => vec![(l.clone(), Rational::one())],
            Label::Had(a, b) => tensor2(&self.act(a, p), &self.act(b, p), Label::had),
            Label::Cau { sel, left, right } => {
                let sel = sel.as_ref().expect("species label");
                let (ip, iq) = (sel.binary_search(&p), sel.binary_search(&(p + 1)));
                match (ip, iq) {
                    (Ok(r), Ok(_)) => self
                        .act(left, r)
                        .into_iter()
                        .map(|(x, c)| (Label::cau(Some(sel.clone()), x, (**right).clone()), c))
                        .collect(),
                    (Err(r), Err(_)) => {
                        let local = p - r;
                        self.act(right, local)
                            .into_iter()
                            .map(|(y, c)| (Label::cau(Some(sel.clone()), (**left).clone(), y), c))
                            .collect()
                    }
                    _ => {
                        let moved: Vec<usize> = sel
                            .iter()
                            .map(|&x| if x == p { p + 1 } else if x == p + 1 { p } else { x })
                            .collect();
                        vec![(Label::cau(Some(moved), (**left).clone(), (**right).clone()), Rational::one())]
                    }
                }
            }
            Label::Sub { .. } => panic!("{}", EngineError::SpeciesSubstitution),
        }
    }

    /// Matrix of `s_p` on the degree-`n` basis of `e`.
    pub fn action_matrix(&self, e: &Expr, n: usize, p: usize) -> Matrix {
        let b = self.basis(e, n);
        let mut m = Matrix::zeros(b.labels.len(), b.labels.len());
        for (j, l) in b.labels.iter().enumerate() {
            for (t, c) in self.act(l, p) {
                m.add_at(b.index[&t], j, &c);
            }
        }
        m
    }

    /// Whether `f` commutes with every `s_p` on the degree `≤ N` bases.
    pub fn equivariant(&self, f: &LinMap, src: &Expr, tgt: &Expr) -> Option<Difference> {
        for p in 0..self.truncation().saturating_sub(1) {
            let eng = self.clone();
            let f1 = f.clone();
            let lhs: LinMap = Rc::new(move |l: &Label| {
                if l.deg() < p + 2 {
                    return f1(l);
                }
                apply(&f1, &eng.act(l, p))
            });
            let eng = self.clone();
            let f2 = f.clone();
            let rhs: LinMap = Rc::new(move |l: &Label| {
                let img = f2(l);
                if l.deg() < p + 2 {
                    return img;
                }
                img.iter().flat_map(|(t, c)| eng.act(t, p).into_iter().map(move |(u, d)| (u, d * c))).collect()
            });
            if let Some(d) = self.compare(src, tgt, &lhs, &rhs) {
                return Some(d);
            }
        }
        None
    }
}

/// `k`-subsets of `0..n`, lexicographic.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(n, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, k, 0, &mut Vec::new(), &mut out);
    out
}

pub fn normalize(c: Comb) -> BTreeMap<Label, Rational> {
    let mut out: BTreeMap<Label, Rational> = BTreeMap::new();
    for (l, r) in c {
        *out.entry(l).or_insert_with(Rational::zero) += r;
    }
    out.retain(|_, v| !v.is_zero());
    out
}

pub fn apply(f: &LinMap, c: &Comb) -> Comb {
    c.iter().flat_map(|(l, r)| f(l).into_iter().map(move |(t, s)| (t, s * r))).collect()
}

fn tensor2(a: &Comb, b: &Comb, mk: impl Fn(Label, Label) -> Label) -> Comb {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for (x, c) in a {
        for (y, d) in b {
            out.push((mk(x.clone(), y.clone()), c * d));
        }
    }
    out
}

pub fn identity() -> LinMap {
    Rc::new(|l: &Label| vec![(l.clone(), Rational::one())])
}

pub fn zero() -> LinMap {
    Rc::new(|_: &Label| Vec::new())
}

/// `fs[0] ∘ fs[1] ∘ …`.
pub fn compose(fs: Vec<LinMap>) -> LinMap {
    Rc::new(move |l: &Label| {
        let mut c = vec![(l.clone(), Rational::one())];
        for f in fs.iter().rev() {
            c = apply(f, &c);
        }
        c
    })
}

/// A degreewise map on one slot, relabelling atoms to `target_slot`.
pub fn atom_map(target_slot: usize, components: &[Matrix]) -> LinMap {
    let comps: Rc<Vec<Matrix>> = Rc::new(components.to_vec());
    Rc::new(move |l: &Label| match l {
        Label::Atom { deg, idx, .. } => {
            let m = &comps[*deg];
            (0..m.rows())
                .filter(|&r| !m.get(r, *idx).is_zero())
                .map(|r| (Label::Atom { slot: target_slot, deg: *deg, idx: r }, m.get(r, *idx).clone()))
                .collect()
        }
        other => panic!("atom map applied to {other:?}"),
    })
}

/// Every label goes to the single unit label of its degree, if `target` has one.
pub fn to_unit(target: Unit) -> LinMap {
    Rc::new(move |l: &Label| {
        let d = l.deg();
        if target.dim(d) == 1 {
            vec![(Label::Unit { deg: d }, Rational::one())]
        } else {
            Vec::new()
        }
    })
}

/// The unit label goes to the sum of all labels of `tgt` in its degree.
pub fn diagonal(engine: &Engine, tgt: &Expr) -> LinMap {
    let eng = engine.clone();
    let tgt = tgt.clone();
    Rc::new(move |l: &Label| {
        eng.basis(&tgt, l.deg()).labels.iter().map(|t| (t.clone(), Rational::one())).collect()
    })
}

/// `f ◊ g` for the product `p`.
pub fn lift(p: Product, f: LinMap, g: LinMap) -> LinMap {
    Rc::new(move |l: &Label| match (p, l) {
        (Product::Hadamard, Label::Had(a, b)) => tensor2(&f(a), &g(b), Label::had),
        (Product::Cauchy, Label::Cau { sel, left, right }) => {
            tensor2(&f(left), &g(right), |x, y| Label::cau(sel.clone(), x, y))
        }
        (Product::Substitution, Label::Sub { outer, inner }) => {
            let mut acc: Vec<(Label, Vec<Label>, Rational)> =
                f(outer).into_iter().map(|(o, c)| (o, Vec::new(), c)).collect();
            for x in inner {
                let gx = g(x);
                let mut next = Vec::with_capacity(acc.len() * gx.len());
                for (o, ls, c) in &acc {
                    for (y, d) in &gx {
                        let mut ls2 = ls.clone();
                        ls2.push(y.clone());
                        next.push((o.clone(), ls2, c * d));
                    }
                }
                acc = next;
            }
            acc.into_iter().map(|(o, ls, c)| (Label::sub(o, ls), c)).collect()
        }
        (p, l) => panic!("lift over {p:?} applied to {l:?}"),
    })
}

fn single(l: Label) -> Comb {
    vec![(l, Rational::one())]
}

/// `(x y) z → x (y z)`.
pub fn associator(p: Product) -> LinMap {
    Rc::new(move |l: &Label| match (p, l) {
        (Product::Hadamard, Label::Had(xy, z)) => match &**xy {
            Label::Had(x, y) => single(Label::had((**x).clone(), Label::had((**y).clone(), (**z).clone()))),
            other => panic!("associator on {other:?}"),
        },
        (Product::Cauchy, Label::Cau { sel, left, right: z }) => match &**left {
            Label::Cau { sel: inner_sel, left: x, right: y } => {
                let (outer, inner) = match (sel, inner_sel) {
                    (Some(s), Some(t)) => {
                        let n = l.deg();
                        let xs: Vec<usize> = t.iter().map(|&i| s[i]).collect();
                        let rest: Vec<usize> = (0..n).filter(|i| xs.binary_search(i).is_err()).collect();
                        let ys: Vec<usize> = (0..s.len()).filter(|i| t.binary_search(i).is_err()).map(|i| s[i]).collect();
                        let u: Vec<usize> = ys.iter().map(|p| rest.binary_search(p).unwrap()).collect();
                        (Some(xs), Some(u))
                    }
                    _ => (None, None),
                };
                single(Label::cau(outer, (**x).clone(), Label::cau(inner, (**y).clone(), (**z).clone())))
            }
            other => panic!("associator on {other:?}"),
        },
        (Product::Substitution, Label::Sub { outer, inner: zs }) => match &**outer {
            Label::Sub { outer: x, inner: ys } => {
                let mut pos = 0;
                let mut new_inner = Vec::with_capacity(ys.len());
                for y in ys {
                    let k = y.deg();
                    new_inner.push(Label::sub(y.clone(), zs[pos..pos + k].to_vec()));
                    pos += k;
                }
                single(Label::sub((**x).clone(), new_inner))
            }
            other => panic!("associator on {other:?}"),
        },
        (p, l) => panic!("associator over {p:?} applied to {l:?}"),
    })
}

/// `u x → x` for the unit on the left.
pub fn left_unitor(p: Product) -> LinMap {
    Rc::new(move |l: &Label| match (p, l) {
        (Product::Hadamard, Label::Had(_, x)) => single((**x).clone()),
        (Product::Cauchy, Label::Cau { right, .. }) => single((**right).clone()),
        (Product::Substitution, Label::Sub { inner, .. }) if inner.len() == 1 => single(inner[0].clone()),
        (p, l) => panic!("left unitor over {p:?} applied to {l:?}"),
    })
}

/// `x u → x` for the unit on the right.
pub fn right_unitor(p: Product) -> LinMap {
    Rc::new(move |l: &Label| match (p, l) {
        (Product::Hadamard, Label::Had(x, _)) => single((**x).clone()),
        (Product::Cauchy, Label::Cau { left, .. }) => single((**left).clone()),
        (Product::Substitution, Label::Sub { outer, .. }) => single((**outer).clone()),
        (p, l) => panic!("right unitor over {p:?} applied to {l:?}"),
    })
}

/// `x → u x`, the inverse of [`left_unitor`].
pub fn left_unitor_inv(p: Product, species: bool) -> LinMap {
    Rc::new(move |l: &Label| {
        let d = l.deg();
        single(match p {
            Product::Hadamard => Label::had(Label::Unit { deg: d }, l.clone()),
            Product::Cauchy => Label::cau(species.then(Vec::new), Label::Unit { deg: 0 }, l.clone()),
            Product::Substitution => Label::sub(Label::Unit { deg: 1 }, vec![l.clone()]),
        })
    })
}

/// `x → x u`, the inverse of [`right_unitor`].
pub fn right_unitor_inv(p: Product, species: bool) -> LinMap {
    Rc::new(move |l: &Label| {
        let d = l.deg();
        single(match p {
            Product::Hadamard => Label::had(l.clone(), Label::Unit { deg: d }),
            Product::Cauchy => Label::cau(species.then(|| (0..d).collect()), l.clone(), Label::Unit { deg: 0 }),
            Product::Substitution => Label::sub(l.clone(), vec![Label::Unit { deg: 1 }; d]),
        })
    })
}
