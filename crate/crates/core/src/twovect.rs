//! Reflexive graphs internal to rational vector spaces, 2-vector spaces, and
//! a finite checker for the Eckmann–Hilton argument.
//!
//! A reflexive graph is `s, t : C₁ → C₀` with `i : C₀ → C₁` and
//! `s·i = t·i = id`. Its arrow part is `f̂ = f − i(s(f))` and the
//! composite of composable `f` then `g` is `g ⋄ f = f̂ + ĝ + i(s(f))`.
//! The unit laws alone pin down a linear composition; see
//! [`solve_composition`].

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::chain::{matrix_from_strings, matrix_to_strings};
use crate::ratlinalg::{
    add_vectors, format_vector, kernel_basis, rat, solve_affine, solve_unique, sub_vectors,
    unit_vector, zero_vector, AffineSolution, LinalgError, Matrix, Rational, Vector,
};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum TwoVectError {
    #[error("matrix {name} has shape {found:?}, expected {expected:?}")]
    Shape {
        name: &'static str,
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("{0} is not the identity on C₀")]
    NotReflexive(&'static str),
    #[error("vector has length {found}, expected {expected}")]
    VectorLength { expected: usize, found: usize },
    #[error("not composable: s(g) = {source_of_g} but t(f) = {target_of_f}")]
    NotComposable {
        source_of_g: String,
        target_of_f: String,
    },
    #[error("composition axiom fails: {0}")]
    Axiom(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// `s, t : C₁ → C₀` and `i : C₀ → C₁` with `s·i = t·i = id`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReflexiveVectGraph {
    dim0: usize,
    dim1: usize,
    s: Matrix,
    t: Matrix,
    i: Matrix,
}

impl ReflexiveVectGraph {
    pub fn new(
        dim0: usize,
        dim1: usize,
        s: Matrix,
        t: Matrix,
        i: Matrix,
    ) -> Result<Self, TwoVectError> {
        for (name, m, expected) in [
            ("s", &s, (dim0, dim1)),
            ("t", &t, (dim0, dim1)),
            ("i", &i, (dim1, dim0)),
        ] {
            if m.shape() != expected {
                return Err(TwoVectError::Shape {
                    name,
                    expected,
                    found: m.shape(),
                });
            }
        }
        let id = Matrix::identity(dim0);
        if &s * &i != id {
            return Err(TwoVectError::NotReflexive("s·i"));
        }
        if &t * &i != id {
            return Err(TwoVectError::NotReflexive("t·i"));
        }
        Ok(Self {
            dim0,
            dim1,
            s,
            t,
            i,
        })
    }

    /// `C₁ = ℚ⁴`, `C₀ = ℚ²`, `s(a,b,c,d) = (a,b)`, `t(a,b,c,d) = (a+c, b+d)`,
    /// `i(a,b) = (a,b,0,0)`: arrows in the plane with a base point.
    pub fn plane_arrows() -> Self {
        let s = Matrix::from_i64(&[&[1, 0, 0, 0], &[0, 1, 0, 0]]);
        let t = Matrix::from_i64(&[&[1, 0, 1, 0], &[0, 1, 0, 1]]);
        let i = s.transpose();
        Self::new(2, 4, s, t, i).expect("plane arrows form a reflexive graph")
    }

    /// `dim0 ≤ dim1`; `i` is the inclusion of the first `dim0` coordinates and
    /// `s`, `t` are `[id | random]` blocks with entries in `-3..=3`.
    pub fn random<R: Rng>(rng: &mut R, dim0: usize, dim1: usize) -> Self {
        assert!(dim0 <= dim1, "C₀ must embed in C₁");
        let block = |rng: &mut R| {
            let mut m = Matrix::zeros(dim0, dim1);
            for r in 0..dim0 {
                m.set(r, r, rat(1));
                for c in dim0..dim1 {
                    m.set(r, c, rat(rng.gen_range(-3..=3)));
                }
            }
            m
        };
        let s = block(rng);
        let t = block(rng);
        let mut i = Matrix::zeros(dim1, dim0);
        for k in 0..dim0 {
            i.set(k, k, rat(1));
        }
        Self::new(dim0, dim1, s, t, i).expect("block graphs are reflexive")
    }

    pub fn dim0(&self) -> usize {
        self.dim0
    }

    pub fn dim1(&self) -> usize {
        self.dim1
    }

    pub fn source_map(&self) -> &Matrix {
        &self.s
    }

    pub fn target_map(&self) -> &Matrix {
        &self.t
    }

    pub fn identity_map(&self) -> &Matrix {
        &self.i
    }

    fn check_len(&self, v: &[Rational]) -> Result<(), TwoVectError> {
        if v.len() != self.dim1 {
            return Err(TwoVectError::VectorLength {
                expected: self.dim1,
                found: v.len(),
            });
        }
        Ok(())
    }

    pub fn source(&self, f: &[Rational]) -> Result<Vector, TwoVectError> {
        self.check_len(f)?;
        Ok(self.s.apply(f)?)
    }

    pub fn target(&self, f: &[Rational]) -> Result<Vector, TwoVectError> {
        self.check_len(f)?;
        Ok(self.t.apply(f)?)
    }

    pub fn unit(&self, x: &[Rational]) -> Result<Vector, TwoVectError> {
        if x.len() != self.dim0 {
            return Err(TwoVectError::VectorLength {
                expected: self.dim0,
                found: x.len(),
            });
        }
        Ok(self.i.apply(x)?)
    }

    /// `f̂ = f − i(s(f))`
    pub fn arrow_part(&self, f: &[Rational]) -> Result<Vector, TwoVectError> {
        let base = self.i.apply(&self.source(f)?)?;
        Ok(sub_vectors(f, &base))
    }

    /// `g ⋄ f = f̂ + ĝ + i(s(f))`, defined when `s(g) = t(f)`.
    pub fn diamond(&self, g: &[Rational], f: &[Rational]) -> Result<Vector, TwoVectError> {
        let sg = self.source(g)?;
        let tf = self.target(f)?;
        if sg != tf {
            return Err(TwoVectError::NotComposable {
                source_of_g: format_vector(&sg),
                target_of_f: format_vector(&tf),
            });
        }
        let base = self.i.apply(&self.s.apply(f)?)?;
        Ok(add_vectors(
            &add_vectors(&self.arrow_part(f)?, &self.arrow_part(g)?),
            &base,
        ))
    }

    /// `s·π₁ − t·π₂ : C₁ ⊕ C₁ → C₀` on pairs `(g, f)`.
    fn pullback_constraint(&self) -> Matrix {
        self.s.hstack(&-&self.t).expect("s and t share a shape")
    }

    /// Kernel basis of `s·π₁ − t·π₂`, as columns of a `2·dim1 × k` matrix.
    pub fn pullback_basis(&self) -> Vec<Vector> {
        kernel_basis(&self.pullback_constraint())
    }

    /// `⋄` as a linear map on `C₁ ⊕ C₁`: `(g, f) ↦ f + g − i·s·g`.
    fn diamond_on_pairs(&self) -> Matrix {
        let id = Matrix::identity(self.dim1);
        let left = &id - &(&self.i * &self.s);
        left.hstack(&id).expect("square blocks")
    }

    /// `⋄` in the coordinates of `basis`.
    pub fn diamond_matrix(&self, basis: &[Vector]) -> Matrix {
        let k =
            Matrix::from_columns(basis, 2 * self.dim1).expect("pullback vectors live in C₁ ⊕ C₁");
        &self.diamond_on_pairs() * &k
    }
}

fn pair(g: &[Rational], f: &[Rational]) -> Vector {
    g.iter().chain(f).cloned().collect()
}

/// A reflexive graph with a linear composition on the pullback
/// `C₁ ×_{C₀} C₁ = {(g, f) : s(g) = t(f)}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoVectSpace {
    graph: ReflexiveVectGraph,
    pullback_basis: Vec<Vector>,
    /// `dim1 × |pullback_basis|`
    compose: Matrix,
}

impl TwoVectSpace {
    /// Checks every axiom: basis vectors lie in the pullback and are
    /// independent and spanning, unit laws, source/target compatibility, and
    /// associativity on a basis of the triple pullback.
    pub fn new(
        graph: ReflexiveVectGraph,
        pullback_basis: Vec<Vector>,
        compose: Matrix,
    ) -> Result<Self, TwoVectError> {
        let d1 = graph.dim1;
        let constraint = graph.pullback_constraint();
        let expected_dim = 2 * d1 - constraint.rank();
        for v in &pullback_basis {
            if v.len() != 2 * d1 || !constraint.apply(v)?.iter().all(Zero::is_zero) {
                return Err(TwoVectError::Axiom(
                    "pullback basis vector outside the pullback".into(),
                ));
            }
        }
        let k = Matrix::from_columns(&pullback_basis, 2 * d1)?;
        if pullback_basis.len() != expected_dim || k.rank() != expected_dim {
            return Err(TwoVectError::Axiom("pullback basis is not a basis".into()));
        }
        if compose.shape() != (d1, pullback_basis.len()) {
            return Err(TwoVectError::Shape {
                name: "compose",
                expected: (d1, pullback_basis.len()),
                found: compose.shape(),
            });
        }
        let space = Self {
            graph,
            pullback_basis,
            compose,
        };
        space.check_axioms()?;
        Ok(space)
    }

    fn check_axioms(&self) -> Result<(), TwoVectError> {
        let g = &self.graph;
        let d1 = g.dim1;
        for j in 0..d1 {
            let f = unit_vector(d1, j);
            let right = self.compose_pair(&f, &g.unit(&g.source(&f)?)?)?;
            if right != f {
                return Err(TwoVectError::Axiom(format!(
                    "right unit law on basis vector {j}"
                )));
            }
            let left = self.compose_pair(&g.unit(&g.target(&f)?)?, &f)?;
            if left != f {
                return Err(TwoVectError::Axiom(format!(
                    "left unit law on basis vector {j}"
                )));
            }
        }
        for v in &self.pullback_basis {
            let (gm, fm) = v.split_at(d1);
            let c = self.compose_pair(gm, fm)?;
            if g.source(&c)? != g.source(fm)? || g.target(&c)? != g.target(gm)? {
                return Err(TwoVectError::Axiom(
                    "composite has the wrong source or target".into(),
                ));
            }
        }
        // Triples (h, g, f) with s(h) = t(g) and s(g) = t(f).
        let zero = Matrix::zeros(g.dim0, d1);
        let row1 = g.s.hstack(&-&g.t)?.hstack(&zero)?;
        let row2 = zero.hstack(&g.s)?.hstack(&-&g.t)?;
        for v in kernel_basis(&row1.vstack(&row2)?) {
            let (h, rest) = v.split_at(d1);
            let (gm, fm) = rest.split_at(d1);
            let left = self.compose_pair(h, &self.compose_pair(gm, fm)?)?;
            let right = self.compose_pair(&self.compose_pair(h, gm)?, fm)?;
            if left != right {
                return Err(TwoVectError::Axiom("associativity".into()));
            }
        }
        Ok(())
    }

    pub fn graph(&self) -> &ReflexiveVectGraph {
        &self.graph
    }

    pub fn pullback_basis(&self) -> &[Vector] {
        &self.pullback_basis
    }

    pub fn compose_matrix(&self) -> &Matrix {
        &self.compose
    }

    /// `g ∘ f` by expressing `(g, f)` in pullback coordinates.
    pub fn compose_pair(&self, g: &[Rational], f: &[Rational]) -> Result<Vector, TwoVectError> {
        let d1 = self.graph.dim1;
        if g.len() != d1 || f.len() != d1 {
            return Err(TwoVectError::VectorLength {
                expected: d1,
                found: g.len().max(f.len()),
            });
        }
        let k = Matrix::from_columns(&self.pullback_basis, 2 * d1)?;
        let coords = solve_unique(&k, &pair(g, f)).ok_or_else(|| TwoVectError::NotComposable {
            source_of_g: format_vector(&self.graph.s.apply(g).unwrap_or_default()),
            target_of_f: format_vector(&self.graph.t.apply(f).unwrap_or_default()),
        })?;
        Ok(self.compose.apply(&coords)?)
    }

    /// Same composition as `other` on every pullback basis vector of `self`.
    pub fn same_composition(&self, other: &TwoVectSpace) -> bool {
        if self.graph != other.graph {
            return false;
        }
        let d1 = self.graph.dim1;
        self.pullback_basis.iter().all(|v| {
            let (g, f) = v.split_at(d1);
            self.compose_pair(g, f).ok() == other.compose_pair(g, f).ok()
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CompositionSolution {
    /// The unit laws force exactly one linear composition.
    Unique {
        space: TwoVectSpace,
        equals_diamond: bool,
    },
    Affine(usize),
    None,
}

/// Treats the composition matrix `M` (in pullback coordinates) as unknown
/// and imposes only the unit laws `M(f, i·s·f) = f` and `M(i·t·f, f) = f`
/// for every basis vector `f` of `C₁`. Source/target compatibility and
/// associativity are checked afterwards on a unique solution.
pub fn solve_composition(g: &ReflexiveVectGraph) -> Result<CompositionSolution, TwoVectError> {
    let d1 = g.dim1;
    let basis = g.pullback_basis();
    let k = basis.len();
    let kmat = Matrix::from_columns(&basis, 2 * d1)?;
    let is = &g.i * &g.s;
    let it = &g.i * &g.t;

    // Row r of M·c = f reads Σⱼ M[r][j]·c[j] = f[r]; unknowns are M row-major.
    let mut constraints = Vec::with_capacity(2 * d1);
    for j in 0..d1 {
        let f = unit_vector(d1, j);
        for p in [pair(&f, &is.apply(&f)?), pair(&it.apply(&f)?, &f)] {
            let c = solve_unique(&kmat, &p).expect("unit-law pairs lie in the pullback");
            let mut a = Matrix::zeros(d1, d1 * k);
            for r in 0..d1 {
                for (col, cj) in c.iter().enumerate() {
                    a.set(r, r * k + col, cj.clone());
                }
            }
            constraints.push((a, f.clone()));
        }
    }
    match solve_affine(d1 * k, &constraints)? {
        AffineSolution::None => Ok(CompositionSolution::None),
        AffineSolution::Affine(d) => Ok(CompositionSolution::Affine(d)),
        AffineSolution::Unique(x) => {
            let rows = x
                .chunks(k.max(1))
                .take(d1)
                .map(<[Rational]>::to_vec)
                .collect();
            let m = if k == 0 {
                Matrix::zeros(d1, 0)
            } else {
                Matrix::from_rows(rows, k)?
            };
            let equals_diamond = m == g.diamond_matrix(&basis);
            let space = TwoVectSpace::new(g.clone(), basis, m)?;
            Ok(CompositionSolution::Unique {
                space,
                equals_diamond,
            })
        }
    }
}

/// Equips a reflexive graph with `⋄`.
pub fn graph_to_category(g: &ReflexiveVectGraph) -> TwoVectSpace {
    let basis = g.pullback_basis();
    let m = g.diamond_matrix(&basis);
    TwoVectSpace::new(g.clone(), basis, m)
        .expect("⋄ satisfies the category axioms on any reflexive graph")
}

/// The underlying reflexive graph.
pub fn category_to_graph(c: &TwoVectSpace) -> ReflexiveVectGraph {
    c.graph.clone()
}

/// JSON form of a reflexive graph; matrices are rows of rational strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDocument {
    pub dim0: usize,
    pub dim1: usize,
    pub s: Vec<Vec<String>>,
    pub t: Vec<Vec<String>>,
    pub i: Vec<Vec<String>>,
}

impl GraphDocument {
    pub fn to_graph(&self) -> Result<ReflexiveVectGraph, TwoVectError> {
        let s = matrix_from_strings(&self.s, self.dim1)?;
        let t = matrix_from_strings(&self.t, self.dim1)?;
        let i = matrix_from_strings(&self.i, self.dim0)?;
        ReflexiveVectGraph::new(self.dim0, self.dim1, s, t, i)
    }

    pub fn from_graph(g: &ReflexiveVectGraph) -> Self {
        Self {
            dim0: g.dim0,
            dim1: g.dim1,
            s: matrix_to_strings(&g.s),
            t: matrix_to_strings(&g.t),
            i: matrix_to_strings(&g.i),
        }
    }
}

/// A finite set with two unital binary operations given by tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MagmaPair {
    carrier: Vec<String>,
    /// `op1[a][b] = a + b`
    op1: Vec<Vec<usize>>,
    /// `op2[a][b] = a ∘ b`
    op2: Vec<Vec<usize>>,
    unit1: usize,
    unit2: usize,
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum MagmaError {
    #[error("unknown element {0:?}")]
    UnknownElement(String),
    #[error("duplicate element {0:?}")]
    DuplicateElement(String),
    #[error("table {0} is not {1}×{1}")]
    TableShape(&'static str, usize),
    #[error("{element} is not a two-sided unit for {table}")]
    NotAUnit {
        table: &'static str,
        element: String,
    },
}

/// JSON form of a magma pair; tables are rows of element ids.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MagmaDocument {
    pub carrier: Vec<String>,
    pub op1: Vec<Vec<String>>,
    pub op2: Vec<Vec<String>>,
    pub unit1: String,
    pub unit2: String,
}

impl MagmaPair {
    pub fn new(
        carrier: Vec<String>,
        op1: Vec<Vec<usize>>,
        op2: Vec<Vec<usize>>,
        unit1: usize,
        unit2: usize,
    ) -> Result<Self, MagmaError> {
        let n = carrier.len();
        for (name, t) in [("op1", &op1), ("op2", &op2)] {
            if t.len() != n || t.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
                return Err(MagmaError::TableShape(name, n));
            }
        }
        for (name, t, u) in [("op1", &op1, unit1), ("op2", &op2, unit2)] {
            if u >= n || (0..n).any(|a| t[u][a] != a || t[a][u] != a) {
                let element = carrier.get(u).cloned().unwrap_or_else(|| u.to_string());
                return Err(MagmaError::NotAUnit {
                    table: name,
                    element,
                });
            }
        }
        Ok(Self {
            carrier,
            op1,
            op2,
            unit1,
            unit2,
        })
    }

    pub fn from_document(doc: &MagmaDocument) -> Result<Self, MagmaError> {
        let mut index = BTreeMap::new();
        for (k, x) in doc.carrier.iter().enumerate() {
            if index.insert(x.as_str(), k).is_some() {
                return Err(MagmaError::DuplicateElement(x.clone()));
            }
        }
        let look = |x: &String| {
            index
                .get(x.as_str())
                .copied()
                .ok_or_else(|| MagmaError::UnknownElement(x.clone()))
        };
        let table = |t: &Vec<Vec<String>>| -> Result<Vec<Vec<usize>>, MagmaError> {
            t.iter().map(|r| r.iter().map(look).collect()).collect()
        };
        Self::new(
            doc.carrier.clone(),
            table(&doc.op1)?,
            table(&doc.op2)?,
            look(&doc.unit1)?,
            look(&doc.unit2)?,
        )
    }

    /// Both operations equal to addition mod `n`.
    pub fn cyclic(n: usize) -> Self {
        let t: Vec<Vec<usize>> = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        Self::new((0..n).map(|k| k.to_string()).collect(), t.clone(), t, 0, 0)
            .expect("ℤ/n is unital")
    }

    pub fn size(&self) -> usize {
        self.carrier.len()
    }

    pub fn carrier(&self) -> &[String] {
        &self.carrier
    }

    pub fn plus(&self, a: usize, b: usize) -> usize {
        self.op1[a][b]
    }

    pub fn circ(&self, a: usize, b: usize) -> usize {
        self.op2[a][b]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EhVerdict {
    /// Interchange holds; the operations coincide, commute, and share `unit`.
    Confirmed { unit: String },
    /// `(a + b) ∘ (c + d) ≠ (a ∘ c) + (b ∘ d)`.
    InterchangeViolation {
        a: String,
        b: String,
        c: String,
        d: String,
    },
}

impl fmt::Display for EhVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EhVerdict::Confirmed { unit } => {
                write!(f, "Confirmed: operations coincide and commute; unit {unit}")
            }
            EhVerdict::InterchangeViolation { a, b, c, d } => {
                write!(
                    f,
                    "InterchangeViolation: ({a} + {b}) ∘ ({c} + {d}) ≠ ({a} ∘ {c}) + ({b} ∘ {d})"
                )
            }
        }
    }
}

/// Interchange held but a conclusion failed. Reaching this means the
/// checker itself is wrong.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
#[error("interchange holds but {0}")]
pub struct EhFalsified(pub String);

/// Exhaustively tests interchange on all quadruples; if it holds, confirms
/// that the tables agree, are commutative, and share their unit.
pub fn eckmann_hilton_check(p: &MagmaPair) -> Result<EhVerdict, EhFalsified> {
    let n = p.size();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    if p.circ(p.plus(a, b), p.plus(c, d)) != p.plus(p.circ(a, c), p.circ(b, d)) {
                        let name = |k: usize| p.carrier[k].clone();
                        return Ok(EhVerdict::InterchangeViolation {
                            a: name(a),
                            b: name(b),
                            c: name(c),
                            d: name(d),
                        });
                    }
                }
            }
        }
    }
    if p.unit1 != p.unit2 {
        return Err(EhFalsified("the units differ".into()));
    }
    if p.op1 != p.op2 {
        return Err(EhFalsified("the operations differ".into()));
    }
    if (0..n).any(|a| (0..n).any(|b| p.plus(a, b) != p.plus(b, a))) {
        return Err(EhFalsified("the operation is not commutative".into()));
    }
    Ok(EhVerdict::Confirmed {
        unit: p.carrier[p.unit1].clone(),
    })
}

/// Every unital table on `0..n` with the given unit (row and column of the
/// unit fixed), `n^((n−1)²)` of them.
pub fn unital_tables(n: usize, unit: usize) -> Vec<Vec<Vec<usize>>> {
    let free: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .filter(|&(a, b)| a != unit && b != unit)
        .collect();
    let total = n.pow(free.len() as u32);
    (0..total)
        .map(|mut code| {
            let mut t = vec![vec![0; n]; n];
            for k in 0..n {
                t[unit][k] = k;
                t[k][unit] = k;
            }
            for &(a, b) in &free {
                t[a][b] = code % n;
                code /= n;
            }
            t
        })
        .collect()
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EhSummary {
    pub carrier_size: usize,
    pub pairs_checked: usize,
    pub interchange_pairs: usize,
    pub counterexamples: Vec<String>,
}

fn check_pair(summary: &mut EhSummary, p: &MagmaPair) {
    summary.pairs_checked += 1;
    match eckmann_hilton_check(p) {
        Ok(EhVerdict::Confirmed { .. }) => summary.interchange_pairs += 1,
        Ok(EhVerdict::InterchangeViolation { .. }) => {}
        Err(e) => {
            summary.interchange_pairs += 1;
            summary
                .counterexamples
                .push(format!("{e}: op1={:?} op2={:?}", p.op1, p.op2));
        }
    }
}

/// All pairs of unital tables on a carrier of size `n`, over every choice of
/// the two units. Work is split by `unit1` across threads.
pub fn eckmann_hilton_exhaustive(n: usize) -> EhSummary {
    let carrier: Vec<String> = (0..n).map(|k| k.to_string()).collect();
    let tables: Vec<Vec<Vec<Vec<usize>>>> = (0..n).map(|u| unital_tables(n, u)).collect();
    let parts: Vec<EhSummary> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..n)
            .map(|u1| {
                let tables = &tables;
                let carrier = &carrier;
                scope.spawn(move || {
                    let mut s = EhSummary::default();
                    for u2 in 0..n {
                        for t1 in &tables[u1] {
                            for t2 in &tables[u2] {
                                let p =
                                    MagmaPair::new(carrier.clone(), t1.clone(), t2.clone(), u1, u2)
                                        .expect("generated tables are unital");
                                check_pair(&mut s, &p);
                            }
                        }
                    }
                    s
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("worker panicked"))
            .collect()
    });
    let mut total = EhSummary {
        carrier_size: n,
        ..Default::default()
    };
    for p in parts {
        total.pairs_checked += p.pairs_checked;
        total.interchange_pairs += p.interchange_pairs;
        total.counterexamples.extend(p.counterexamples);
    }
    total
}

/// Random unital table pairs on a carrier of size `n`, for sizes where
/// enumeration is too large.
pub fn eckmann_hilton_sampled<R: Rng>(rng: &mut R, n: usize, samples: usize) -> EhSummary {
    let carrier: Vec<String> = (0..n).map(|k| k.to_string()).collect();
    let table = |rng: &mut R, u: usize| {
        let mut t = vec![vec![0; n]; n];
        for a in 0..n {
            for b in 0..n {
                t[a][b] = if a == u {
                    b
                } else if b == u {
                    a
                } else {
                    rng.gen_range(0..n)
                };
            }
        }
        t
    };
    let mut s = EhSummary {
        carrier_size: n,
        ..Default::default()
    };
    for _ in 0..samples {
        if rng.gen_bool(0.25) {
            // ℤ/n relabelled by a random permutation, used for both operations.
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(rng);
            let mut t = vec![vec![0; n]; n];
            for a in 0..n {
                for b in 0..n {
                    t[perm[a]][perm[b]] = perm[(a + b) % n];
                }
            }
            let p = MagmaPair::new(carrier.clone(), t.clone(), t, perm[0], perm[0])
                .expect("ℤ/n is unital");
            check_pair(&mut s, &p);
            continue;
        }
        let (u1, u2) = (rng.gen_range(0..n), rng.gen_range(0..n));
        let t1 = table(rng, u1);
        let t2 = if rng.gen_bool(0.5) {
            t1.clone()
        } else {
            table(rng, u2)
        };
        let u2 = if t2 == t1 { u1 } else { u2 };
        let p = MagmaPair::new(carrier.clone(), t1, t2, u1, u2).expect("sampled tables are unital");
        check_pair(&mut s, &p);
    }
    s
}

pub fn vector_is_zero(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn zero_in(g: &ReflexiveVectGraph) -> Vector {
    zero_vector(g.dim1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratlinalg::parse_vector;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn v(s: &str) -> Vector {
        parse_vector(s).unwrap()
    }

    #[test]
    fn arrow_parts_in_the_plane() {
        let g = ReflexiveVectGraph::plane_arrows();
        assert_eq!(g.arrow_part(&v("1,2,3,4")).unwrap(), v("0,0,3,4"));
        assert!(vector_is_zero(
            &g.arrow_part(&g.unit(&v("5,-7")).unwrap()).unwrap()
        ));
        assert!(vector_is_zero(&g.arrow_part(&zero_in(&g)).unwrap()));
        assert!(matches!(
            g.arrow_part(&v("1,2")),
            Err(TwoVectError::VectorLength { .. })
        ));
    }

    #[test]
    fn diamond_in_the_plane() {
        let g = ReflexiveVectGraph::plane_arrows();
        let f = v("0,0,1,0");
        let h = v("1,0,0,1");
        assert_eq!(g.diamond(&h, &f).unwrap(), v("0,0,1,1"));
        let unit_t = g.unit(&g.target(&f).unwrap()).unwrap();
        let unit_s = g.unit(&g.source(&f).unwrap()).unwrap();
        assert_eq!(g.diamond(&unit_t, &f).unwrap(), f);
        assert_eq!(g.diamond(&f, &unit_s).unwrap(), f);
        let ix = g.unit(&v("2,3")).unwrap();
        assert_eq!(g.diamond(&ix, &ix).unwrap(), ix);
        assert!(matches!(
            g.diamond(&f, &f),
            Err(TwoVectError::NotComposable { .. })
        ));
    }

    #[test]
    fn composition_is_forced() {
        let g = ReflexiveVectGraph::plane_arrows();
        match solve_composition(&g).unwrap() {
            CompositionSolution::Unique {
                space,
                equals_diamond,
            } => {
                assert!(equals_diamond);
                assert_eq!(space, graph_to_category(&g));
            }
            other => panic!("unexpected {other:?}"),
        }
        let one = Matrix::identity(1);
        let line = ReflexiveVectGraph::new(1, 1, one.clone(), one.clone(), one).unwrap();
        assert!(matches!(
            solve_composition(&line).unwrap(),
            CompositionSolution::Unique {
                equals_diamond: true,
                ..
            }
        ));
    }

    #[test]
    fn random_graphs_have_diamond_composition() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let d0 = rng.gen_range(0..=3);
            let d1 = rng.gen_range(d0.max(1)..=6);
            let g = ReflexiveVectGraph::random(&mut rng, d0, d1);
            match solve_composition(&g).unwrap() {
                CompositionSolution::Unique { equals_diamond, .. } => assert!(equals_diamond),
                other => panic!("unexpected {other:?}"),
            }
        }
    }

    #[test]
    fn zero_graph_round_trip() {
        let z = Matrix::zeros(0, 0);
        let g = ReflexiveVectGraph::new(0, 0, z.clone(), z.clone(), z).unwrap();
        let c = graph_to_category(&g);
        assert!(c.pullback_basis().is_empty());
        assert_eq!(category_to_graph(&c), g);
    }

    #[test]
    fn rejects_non_reflexive() {
        let s = Matrix::from_i64(&[&[1, 0]]);
        let t = Matrix::from_i64(&[&[0, 1]]);
        let i = Matrix::from_i64(&[&[1], &[0]]);
        assert_eq!(
            ReflexiveVectGraph::new(1, 2, s, t, i),
            Err(TwoVectError::NotReflexive("t·i"))
        );
    }

    #[test]
    fn wrong_composition_is_rejected() {
        let g = ReflexiveVectGraph::plane_arrows();
        let basis = g.pullback_basis();
        let m = g.diamond_matrix(&basis).scale(&rat(2));
        assert!(matches!(
            TwoVectSpace::new(g, basis, m),
            Err(TwoVectError::Axiom(_))
        ));
    }

    #[test]
    fn eckmann_hilton_examples() {
        assert_eq!(
            eckmann_hilton_check(&MagmaPair::cyclic(3)).unwrap(),
            EhVerdict::Confirmed { unit: "0".into() }
        );
        assert_eq!(
            eckmann_hilton_check(&MagmaPair::cyclic(2)).unwrap(),
            EhVerdict::Confirmed { unit: "0".into() }
        );

        // e is the unit; otherwise x·y = x.
        let t = vec![vec![0, 1, 2], vec![1, 1, 1], vec![2, 2, 2]];
        let carrier = vec!["e".to_string(), "a".into(), "b".into()];
        let p = MagmaPair::new(carrier, t.clone(), t, 0, 0).unwrap();
        match eckmann_hilton_check(&p).unwrap() {
            EhVerdict::InterchangeViolation { a, b, c, d } => {
                let idx = |s: &str| ["e", "a", "b"].iter().position(|x| *x == s).unwrap();
                let (a, b, c, d) = (idx(&a), idx(&b), idx(&c), idx(&d));
                assert_ne!(
                    p.circ(p.plus(a, b), p.plus(c, d)),
                    p.plus(p.circ(a, c), p.circ(b, d))
                );
            }
            other => panic!("expected a violation, got {other:?}"),
        }
    }

    #[test]
    fn magma_validation() {
        let doc = MagmaDocument {
            carrier: vec!["0".into(), "1".into()],
            op1: vec![vec!["0".into(), "1".into()], vec!["1".into(), "0".into()]],
            op2: vec![vec!["0".into(), "1".into()], vec!["1".into(), "1".into()]],
            unit1: "0".into(),
            unit2: "1".into(),
        };
        assert_eq!(
            MagmaPair::from_document(&doc),
            Err(MagmaError::NotAUnit {
                table: "op2",
                element: "1".into()
            })
        );
    }

    #[test]
    fn table_enumeration_sizes() {
        assert_eq!(unital_tables(2, 0).len(), 2);
        assert_eq!(unital_tables(3, 1).len(), 81);
        assert!(unital_tables(3, 2)
            .iter()
            .all(|t| (0..3).all(|k| t[2][k] == k && t[k][2] == k)));
    }
}
