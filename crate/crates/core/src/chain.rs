//! Chain complexes of finite-dimensional rational vector spaces.
//!
//! The free vector space on a truncated simplicial set gives a simplicial
//! vector space; its alternating face map complex has `δₙ = Σᵢ₌₀ⁿ (−1)ⁱ dᵢ`.
//! Normalization quotients each degree by the span of degenerate simplices.

use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::nerve::SimplicialSetTrunc;
use crate::ratlinalg::{parse_rational, rank, rat, LinalgError, Matrix, Rational};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ChainError {
    #[error("boundary δ{degree} has shape {found:?}, expected {expected:?}")]
    BoundaryShape {
        degree: usize,
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("δ{} ∘ δ{} ≠ 0", .degree, .degree + 1)]
    BoundarySquareNonzero { degree: usize },
    #[error("degree {requested} is out of range; reliable degrees are below {top}")]
    DegreeOutOfRange { requested: usize, top: usize },
    #[error("component in degree {degree} has shape {found:?}, expected {expected:?}")]
    ComponentShape {
        degree: usize,
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("chain maps are not parallel")]
    NotParallel,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// A vector space with a distinguished, labelled basis.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BasedVectorSpace {
    labels: Vec<String>,
}

impl BasedVectorSpace {
    pub fn new(labels: Vec<String>) -> Self {
        debug_assert!(
            {
                let mut l = labels.clone();
                l.sort();
                l.windows(2).all(|w| w[0] != w[1])
            },
            "basis labels must be unique"
        );
        Self { labels }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn position(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
}

/// `F` applied to a truncated simplicial set: a space per degree and the
/// linearized face and degeneracy maps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialVectorSpace {
    pub spaces: Vec<BasedVectorSpace>,
    /// `faces[n][i]` is the matrix of `dᵢ : Xₙ → Xₙ₋₁` (empty for `n = 0`).
    pub faces: Vec<Vec<Matrix>>,
    /// `degeneracies[n][i]` is the matrix of `sᵢ : Xₙ → Xₙ₊₁`.
    pub degeneracies: Vec<Vec<Matrix>>,
}

/// The 0/1 matrix of a function between finite bases.
pub fn function_matrix(map: &[usize], codomain: usize) -> Matrix {
    let mut m = Matrix::zeros(codomain, map.len());
    for (k, &img) in map.iter().enumerate() {
        m.set(img, k, Rational::one());
    }
    m
}

pub fn free_simplicial_vector_space(s: &SimplicialSetTrunc) -> SimplicialVectorSpace {
    let top = s.max_dim();
    let spaces = (0..=top)
        .map(|n| BasedVectorSpace::new(s.labels(n).to_vec()))
        .collect();
    let mut faces = vec![Vec::new()];
    for n in 1..=top {
        faces.push(
            (0..=n)
                .map(|i| {
                    let map: Vec<usize> = (0..s.count(n)).map(|k| s.face(n, k, i)).collect();
                    function_matrix(&map, s.count(n - 1))
                })
                .collect(),
        );
    }
    let degeneracies = (0..top)
        .map(|n| {
            (0..=n)
                .map(|i| {
                    let map: Vec<usize> = (0..s.count(n)).map(|k| s.degeneracy(n, k, i)).collect();
                    function_matrix(&map, s.count(n + 1))
                })
                .collect()
        })
        .collect();
    SimplicialVectorSpace {
        spaces,
        faces,
        degeneracies,
    }
}

/// A bounded chain complex `C_top → … → C₁ → C₀`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainComplex {
    spaces: Vec<BasedVectorSpace>,
    /// `boundaries[n - 1] = δₙ`
    boundaries: Vec<Matrix>,
}

impl ChainComplex {
    /// Checks shapes and `δₙ ∘ δₙ₊₁ = 0` exactly.
    pub fn new(spaces: Vec<BasedVectorSpace>, boundaries: Vec<Matrix>) -> Result<Self, ChainError> {
        assert!(!spaces.is_empty(), "a chain complex needs degree 0");
        assert_eq!(
            boundaries.len(),
            spaces.len() - 1,
            "one boundary per positive degree"
        );
        for (k, d) in boundaries.iter().enumerate() {
            let expected = (spaces[k].dim(), spaces[k + 1].dim());
            if d.shape() != expected {
                return Err(ChainError::BoundaryShape {
                    degree: k + 1,
                    expected,
                    found: d.shape(),
                });
            }
        }
        for k in 1..boundaries.len() {
            if !(&boundaries[k - 1] * &boundaries[k]).is_zero() {
                return Err(ChainError::BoundarySquareNonzero { degree: k });
            }
        }
        Ok(Self { spaces, boundaries })
    }

    pub fn top_degree(&self) -> usize {
        self.spaces.len() - 1
    }

    pub fn space(&self, n: usize) -> &BasedVectorSpace {
        &self.spaces[n]
    }

    pub fn dim(&self, n: usize) -> usize {
        self.spaces[n].dim()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.spaces.iter().map(BasedVectorSpace::dim).collect()
    }

    /// `δₙ` for `1 ≤ n ≤ top`.
    pub fn boundary(&self, n: usize) -> &Matrix {
        assert!(
            n >= 1 && n <= self.top_degree(),
            "δ{n} outside the truncation"
        );
        &self.boundaries[n - 1]
    }

    /// `δₙ`, with `δ₀ : C₀ → 0` as the empty-rowed zero map.
    pub fn boundary_or_zero(&self, n: usize) -> Matrix {
        if n == 0 {
            Matrix::zeros(0, self.dim(0))
        } else {
            self.boundary(n).clone()
        }
    }

    /// Betti numbers `b₀ … b_up_to`; degrees must lie below the top degree,
    /// whose incoming boundary is not known.
    pub fn betti(&self, up_to: usize) -> Result<Vec<usize>, ChainError> {
        betti(self, up_to)
    }

    pub fn to_document(&self) -> ChainComplexDocument {
        ChainComplexDocument {
            degrees: self.top_degree(),
            bases: self.spaces.iter().map(|s| s.labels().to_vec()).collect(),
            boundaries: self.boundaries.iter().map(matrix_to_strings).collect(),
        }
    }

    pub fn from_document(doc: &ChainComplexDocument) -> Result<Self, ChainError> {
        if doc.bases.len() != doc.degrees + 1 || doc.boundaries.len() != doc.degrees {
            return Err(ChainError::BoundaryShape {
                degree: 0,
                expected: (doc.degrees, 0),
                found: (doc.bases.len(), 0),
            });
        }
        let spaces: Vec<BasedVectorSpace> = doc
            .bases
            .iter()
            .map(|b| BasedVectorSpace::new(b.clone()))
            .collect();
        let boundaries = doc
            .boundaries
            .iter()
            .enumerate()
            .map(|(k, rows)| matrix_from_strings(rows, spaces[k + 1].dim()))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(spaces, boundaries)
    }
}

pub fn matrix_to_strings(m: &Matrix) -> Vec<Vec<String>> {
    m.to_rows()
        .iter()
        .map(|r| r.iter().map(|x| x.to_string()).collect())
        .collect()
}

pub fn matrix_from_strings(rows: &[Vec<String>], cols: usize) -> Result<Matrix, LinalgError> {
    let parsed = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| parse_rational(x))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Matrix::from_rows(parsed, cols)
}

/// JSON form of a chain complex; `boundaries[n-1]` holds `δₙ` as rows of
/// rational strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainComplexDocument {
    pub degrees: usize,
    pub bases: Vec<Vec<String>>,
    pub boundaries: Vec<Vec<Vec<String>>>,
}

/// `δₙ = Σᵢ₌₀ⁿ (−1)ⁱ dᵢ`.
pub fn alternating_complex(sv: &SimplicialVectorSpace) -> Result<ChainComplex, ChainError> {
    let boundaries = (1..sv.spaces.len())
        .map(|n| {
            let mut d = Matrix::zeros(sv.spaces[n - 1].dim(), sv.spaces[n].dim());
            for (i, face) in sv.faces[n].iter().enumerate() {
                let sign = if i % 2 == 0 { rat(1) } else { rat(-1) };
                for k in 0..face.cols() {
                    for r in 0..face.rows() {
                        if !face.get(r, k).is_zero() {
                            d.add_to(r, k, &(face.get(r, k) * &sign));
                        }
                    }
                }
            }
            d
        })
        .collect();
    ChainComplex::new(sv.spaces.clone(), boundaries)
}

/// Kills the degenerate basis vectors: rows are the nondegenerate ones.
pub fn normalization_projection(degenerate: &[bool]) -> Matrix {
    let keep: Vec<usize> = (0..degenerate.len()).filter(|&k| !degenerate[k]).collect();
    let mut p = Matrix::zeros(keep.len(), degenerate.len());
    for (row, &k) in keep.iter().enumerate() {
        p.set(row, k, Rational::one());
    }
    p
}

/// Includes the nondegenerate basis vectors (transpose of the projection).
pub fn nondegenerate_inclusion(degenerate: &[bool]) -> Matrix {
    normalization_projection(degenerate).transpose()
}

fn nondegenerate(flags: &[bool]) -> Vec<usize> {
    (0..flags.len()).filter(|&k| !flags[k]).collect()
}

/// `P_rows · m · I_cols`, computed by selecting rows and columns.
pub fn restrict_to_nondegenerate(
    m: &Matrix,
    row_degenerate: &[bool],
    col_degenerate: &[bool],
) -> Matrix {
    m.select_rows(&nondegenerate(row_degenerate))
        .select_columns(&nondegenerate(col_degenerate))
}

/// The normalized complex: basis = nondegenerate simplices, boundary =
/// project ∘ δ ∘ include.
pub fn normalize(c: &ChainComplex, degenerate: &[Vec<bool>]) -> Result<ChainComplex, ChainError> {
    assert_eq!(degenerate.len(), c.spaces.len(), "one flag list per degree");
    let spaces = c
        .spaces
        .iter()
        .zip(degenerate)
        .map(|(s, flags)| {
            BasedVectorSpace::new(
                s.labels
                    .iter()
                    .zip(flags)
                    .filter(|(_, d)| !**d)
                    .map(|(l, _)| l.clone())
                    .collect(),
            )
        })
        .collect();
    let boundaries = (1..=c.top_degree())
        .map(|n| restrict_to_nondegenerate(c.boundary(n), &degenerate[n - 1], &degenerate[n]))
        .collect();
    ChainComplex::new(spaces, boundaries)
}

/// `bₙ = dim ker δₙ − rank δₙ₊₁` for `n ≤ up_to < top`.
pub fn betti(c: &ChainComplex, up_to: usize) -> Result<Vec<usize>, ChainError> {
    let top = c.top_degree();
    if up_to >= top {
        return Err(ChainError::DegreeOutOfRange {
            requested: up_to,
            top,
        });
    }
    let ranks: Vec<usize> = (0..=up_to + 1)
        .map(|n| if n == 0 { 0 } else { rank(c.boundary(n)) })
        .collect();
    Ok((0..=up_to)
        .map(|n| c.dim(n) - ranks[n] - ranks[n + 1])
        .collect())
}

/// A degreewise family of matrices `fₙ : Cₙ → Dₙ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainMap {
    source: Arc<ChainComplex>,
    target: Arc<ChainComplex>,
    components: Vec<Matrix>,
}

impl ChainMap {
    /// Shape-checked constructor; use [`verify_chain_map`] for the
    /// commuting squares. Components cover degrees `0..=min(tops)`.
    pub fn new(
        source: Arc<ChainComplex>,
        target: Arc<ChainComplex>,
        components: Vec<Matrix>,
    ) -> Result<Self, ChainError> {
        let top = source.top_degree().min(target.top_degree());
        assert_eq!(components.len(), top + 1, "one component per common degree");
        for (n, f) in components.iter().enumerate() {
            let expected = (target.dim(n), source.dim(n));
            if f.shape() != expected {
                return Err(ChainError::ComponentShape {
                    degree: n,
                    expected,
                    found: f.shape(),
                });
            }
        }
        Ok(Self {
            source,
            target,
            components,
        })
    }

    pub fn identity(c: Arc<ChainComplex>) -> Self {
        let components = (0..=c.top_degree())
            .map(|n| Matrix::identity(c.dim(n)))
            .collect();
        Self {
            source: c.clone(),
            target: c,
            components,
        }
    }

    pub fn source(&self) -> &Arc<ChainComplex> {
        &self.source
    }

    pub fn target(&self) -> &Arc<ChainComplex> {
        &self.target
    }

    pub fn component(&self, n: usize) -> &Matrix {
        &self.components[n]
    }

    pub fn components(&self) -> &[Matrix] {
        &self.components
    }

    pub fn top_degree(&self) -> usize {
        self.components.len() - 1
    }

    /// `self ∘ inner`, degreewise.
    pub fn after(&self, inner: &ChainMap) -> Result<ChainMap, ChainError> {
        let top = self.top_degree().min(inner.top_degree());
        let components = (0..=top)
            .map(|n| self.components[n].matmul(&inner.components[n]))
            .collect::<Result<_, _>>()?;
        Ok(ChainMap {
            source: inner.source.clone(),
            target: self.target.clone(),
            components,
        })
    }

    /// Restricts to nondegenerate bases: `P_D ∘ fₙ ∘ I_C`.
    pub fn normalized(
        &self,
        source: Arc<ChainComplex>,
        target: Arc<ChainComplex>,
        source_degenerate: &[Vec<bool>],
        target_degenerate: &[Vec<bool>],
    ) -> Result<ChainMap, ChainError> {
        let components = self
            .components
            .iter()
            .enumerate()
            .map(|(n, f)| {
                restrict_to_nondegenerate(f, &target_degenerate[n], &source_degenerate[n])
            })
            .collect();
        ChainMap::new(source, target, components)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MapCheck {
    Ok,
    Violation { degree: usize },
}

/// Checks `δₙ fₙ = fₙ₋₁ δₙ` in every degree.
pub fn verify_chain_map(m: &ChainMap) -> MapCheck {
    for n in 1..=m.top_degree() {
        let lhs = m.target.boundary(n) * &m.components[n];
        let rhs = &m.components[n - 1] * m.source.boundary(n);
        if lhs != rhs {
            return MapCheck::Violation { degree: n };
        }
    }
    MapCheck::Ok
}

/// Degree-raising maps `hₙ : Cₙ → Dₙ₊₁` between two parallel chain maps,
/// subject to `δₙ₊₁ hₙ + hₙ₋₁ δₙ = toₙ − fromₙ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainHomotopy {
    from: ChainMap,
    to: ChainMap,
    components: Vec<Matrix>,
}

impl ChainHomotopy {
    /// Components cover degrees `0..top` where `top = min` of the two maps'
    /// common degrees, so every `hₙ` lands inside the target truncation.
    pub fn new(from: ChainMap, to: ChainMap, components: Vec<Matrix>) -> Result<Self, ChainError> {
        if from.source != to.source || from.target != to.target {
            return Err(ChainError::NotParallel);
        }
        let top = from.top_degree().min(to.top_degree());
        assert_eq!(
            components.len(),
            top,
            "one homotopy component per degree below the top"
        );
        for (n, h) in components.iter().enumerate() {
            let expected = (from.target.dim(n + 1), from.source.dim(n));
            if h.shape() != expected {
                return Err(ChainError::ComponentShape {
                    degree: n,
                    expected,
                    found: h.shape(),
                });
            }
        }
        Ok(Self {
            from,
            to,
            components,
        })
    }

    /// The zero family between two parallel maps.
    pub fn zero(from: ChainMap, to: ChainMap) -> Result<Self, ChainError> {
        let top = from.top_degree().min(to.top_degree());
        let components = (0..top)
            .map(|n| Matrix::zeros(from.target.dim(n + 1), from.source.dim(n)))
            .collect();
        Self::new(from, to, components)
    }

    pub fn from(&self) -> &ChainMap {
        &self.from
    }

    pub fn to(&self) -> &ChainMap {
        &self.to
    }

    pub fn component(&self, n: usize) -> &Matrix {
        &self.components[n]
    }

    pub fn components(&self) -> &[Matrix] {
        &self.components
    }

    /// Degrees at which the homotopy identity can be checked.
    pub fn checked_degrees(&self) -> std::ops::Range<usize> {
        0..self.components.len()
    }

    /// `(toₙ − fromₙ) − (δₙ₊₁ hₙ + hₙ₋₁ δₙ)` for every checkable degree.
    pub fn defects(&self) -> Vec<Matrix> {
        let src = &self.from.source;
        let tgt = &self.from.target;
        self.checked_degrees()
            .map(|n| {
                let mut rhs = tgt.boundary(n + 1) * &self.components[n];
                if n > 0 {
                    rhs = &rhs + &(&self.components[n - 1] * src.boundary(n));
                }
                &(&self.to.components[n] - &self.from.components[n]) - &rhs
            })
            .collect()
    }

    pub fn normalized(
        &self,
        from: ChainMap,
        to: ChainMap,
        source_degenerate: &[Vec<bool>],
        target_degenerate: &[Vec<bool>],
    ) -> Result<ChainHomotopy, ChainError> {
        let components = self
            .components
            .iter()
            .enumerate()
            .map(|(n, h)| {
                restrict_to_nondegenerate(h, &target_degenerate[n + 1], &source_degenerate[n])
            })
            .collect();
        ChainHomotopy::new(from, to, components)
    }

    /// Degreewise difference of two homotopies between the same maps.
    pub fn difference(&self, other: &ChainHomotopy) -> Vec<Matrix> {
        self.components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a - b)
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HomotopyCheck {
    Ok,
    Violation { degree: usize, defect: Matrix },
}

pub fn verify_homotopy(h: &ChainHomotopy) -> HomotopyCheck {
    for (n, d) in h.defects().into_iter().enumerate() {
        if !d.is_zero() {
            return HomotopyCheck::Violation {
                degree: n,
                defect: d,
            };
        }
    }
    HomotopyCheck::Ok
}

/// `δ d + d δ` for a degree-raising family `d` on `c → e`: zero iff `d` is a
/// homotopy from a map to itself.
pub fn homotopy_boundary(
    d: &[Matrix],
    source: &ChainComplex,
    target: &ChainComplex,
) -> Vec<Matrix> {
    (0..d.len())
        .map(|n| {
            let mut acc = target.boundary(n + 1) * &d[n];
            if n > 0 {
                acc = &acc + &(&d[n - 1] * source.boundary(n));
            }
            acc
        })
        .collect()
}

/// Signed combination `Σ cₖ eₖ` rendered with basis labels, e.g. `y - x`.
pub fn format_combination(v: &[Rational], basis: &BasedVectorSpace) -> String {
    let mut out = String::new();
    for (k, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let label = &basis.labels[k];
        let neg = *c < Rational::zero();
        let mag = if neg { -c.clone() } else { c.clone() };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if mag != rat(1) {
            out.push_str(&format!("{mag}·"));
        }
        out.push_str(label);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::catalog::*;
    use crate::nerve::{nerve, Chain};
    use crate::ratlinalg::unit_vector;

    fn complex_of(c: &crate::fincat::FinCategory, n: usize) -> (ChainComplex, Vec<Vec<bool>>) {
        let nv = nerve(c, n);
        let cx = alternating_complex(&free_simplicial_vector_space(nv.set())).unwrap();
        (cx, nv.set().degenerate_flags())
    }

    #[test]
    fn terminal_complex() {
        let (c, flags) = complex_of(&terminal(), 5);
        assert_eq!(c.dims(), vec![1; 6]);
        for n in 1..=5 {
            let expected = if n % 2 == 0 {
                Matrix::identity(1)
            } else {
                Matrix::zeros(1, 1)
            };
            assert_eq!(c.boundary(n), &expected, "δ{n}");
        }
        let nc = normalize(&c, &flags).unwrap();
        assert_eq!(nc.dims(), vec![1, 0, 0, 0, 0, 0]);
    }

    #[test]
    fn walking_arrow_boundaries() {
        let cat = walking_arrow();
        let nv = nerve(&cat, 3);
        let sv = free_simplicial_vector_space(nv.set());
        let mut basis1: Vec<&str> = sv.spaces[1].labels().iter().map(String::as_str).collect();
        basis1.sort();
        assert_eq!(basis1, ["(f)", "(id_x)", "(id_y)"]);
        let c = alternating_complex(&sv).unwrap();
        let f = c.space(1).position("(f)").unwrap();
        let image = c.boundary(1).apply(&unit_vector(3, f)).unwrap();
        assert_eq!(format_combination(&image, c.space(0)), "-x + y");
        for id in ["(id_x)", "(id_y)"] {
            let k = c.space(1).position(id).unwrap();
            assert!(c
                .boundary(1)
                .apply(&unit_vector(3, k))
                .unwrap()
                .iter()
                .all(Zero::is_zero));
        }
        let nc = normalize(&c, &nv.set().degenerate_flags()).unwrap();
        assert_eq!(nc.space(1).labels(), ["(f)"]);
    }

    #[test]
    fn two_simplex_boundary_is_g_minus_gf_plus_f() {
        let cat = commutative_square();
        let nv = nerve(&cat, 2);
        let c = alternating_complex(&free_simplicial_vector_space(nv.set())).unwrap();
        let (a, b) = (cat.morphism_id("a").unwrap(), cat.morphism_id("b").unwrap());
        let k = nv
            .index_of(&Chain {
                start: 0,
                morphisms: vec![a, b],
            })
            .unwrap();
        let image = c.boundary(2).apply(&unit_vector(c.dim(2), k)).unwrap();
        assert_eq!(format_combination(&image, c.space(1)), "(a) + (b) - (ba)");
    }

    #[test]
    fn empty_category_is_zero() {
        let (c, _) = complex_of(&empty(), 3);
        assert_eq!(c.dims(), vec![0; 4]);
    }

    #[test]
    fn normalized_z2() {
        let (c, flags) = complex_of(&cyclic_group(2), 6);
        let nc = normalize(&c, &flags).unwrap();
        assert_eq!(nc.dims(), vec![1; 7]);
        for n in 1..=6 {
            let expected = if n % 2 == 0 {
                Matrix::from_i64(&[&[2]])
            } else {
                Matrix::zeros(1, 1)
            };
            assert_eq!(nc.boundary(n), &expected, "δ{n}");
        }
    }

    #[test]
    fn betti_numbers() {
        let (c, _) = complex_of(&walking_arrow(), 4);
        assert_eq!(betti(&c, 2).unwrap(), vec![1, 0, 0]);
        let (c, flags) = complex_of(&discrete(3), 4);
        assert_eq!(betti(&c, 2).unwrap(), vec![3, 0, 0]);
        assert_eq!(
            betti(&normalize(&c, &flags).unwrap(), 2).unwrap(),
            vec![3, 0, 0]
        );
        let (c, _) = complex_of(&cyclic_group(2), 5);
        assert_eq!(betti(&c, 3).unwrap(), vec![1, 0, 0, 0]);
        assert_eq!(
            betti(&c, 5),
            Err(ChainError::DegreeOutOfRange {
                requested: 5,
                top: 5
            })
        );
    }

    #[test]
    fn rejects_nonzero_square() {
        let spaces = vec![BasedVectorSpace::new(vec!["a".into()]); 3];
        let one = Matrix::identity(1);
        assert_eq!(
            ChainComplex::new(spaces, vec![one.clone(), one]),
            Err(ChainError::BoundarySquareNonzero { degree: 1 })
        );
    }

    #[test]
    fn map_and_homotopy_checks() {
        let (c, _) = complex_of(&walking_arrow(), 3);
        let c = Arc::new(c);
        let id = ChainMap::identity(c.clone());
        assert_eq!(verify_chain_map(&id), MapCheck::Ok);
        assert_eq!(
            verify_homotopy(&ChainHomotopy::zero(id.clone(), id.clone()).unwrap()),
            HomotopyCheck::Ok
        );

        let zero = ChainMap::new(
            c.clone(),
            c.clone(),
            c.dims().iter().map(|&d| Matrix::zeros(d, d)).collect(),
        )
        .unwrap();
        match verify_homotopy(&ChainHomotopy::zero(zero, id).unwrap()) {
            HomotopyCheck::Violation { degree: 0, defect } => {
                assert_eq!(defect, Matrix::identity(2))
            }
            other => panic!("unexpected {other:?}"),
        }

        let mut broken = (0..=3)
            .map(|n| Matrix::identity(c.dim(n)))
            .collect::<Vec<_>>();
        broken[1] = Matrix::zeros(3, 3);
        let m = ChainMap::new(c.clone(), c, broken).unwrap();
        assert_eq!(verify_chain_map(&m), MapCheck::Violation { degree: 1 });
    }

    #[test]
    fn document_round_trip() {
        let (c, _) = complex_of(&commutative_square(), 3);
        let doc = c.to_document();
        let json = serde_json::to_string(&doc).unwrap();
        let back: ChainComplexDocument = serde_json::from_str(&json).unwrap();
        assert_eq!(ChainComplex::from_document(&back).unwrap(), c);
    }
}
