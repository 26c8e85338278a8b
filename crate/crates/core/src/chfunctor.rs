//! `Ch = A ∘ F ∘ N`: categories to chain complexes, functors to chain maps,
//! natural transformations to chain homotopies.
//!
//! A transformation `α : F ⇒ G` acts on an `n`-chain
//! `x₀ → x₁ → … → xₙ` by the prism sum `hₙ = Σᵢ (−1)ⁱ Pᵢ`, where
//! `Pᵢ = (F f₁, …, F fᵢ, α_{xᵢ}, G fᵢ₊₁, …, G fₙ)`. In degree 0 this
//! is `α_x`; in degree 1 it is `B − A` with `B = (α_x, G f)` and
//! `A = (F f, α_y)`. The identity satisfied is `δh + hδ = G − F`.

use std::fmt;
use std::sync::Arc;

use crate::chain::{
    alternating_complex, format_combination, free_simplicial_vector_space, homotopy_boundary,
    normalize, ChainComplex, ChainError, ChainHomotopy, ChainMap,
};
use crate::fincat::{FinCategory, Functor, NatTransf};
use crate::nerve::{nerve, Chain, Nerve};
use crate::ratlinalg::{rat, Matrix, Rational};

/// Every stage of the pipeline for one category at one truncation.
#[derive(Debug, Clone)]
pub struct ChResult {
    pub category: Arc<FinCategory>,
    pub truncation: usize,
    pub nerve: Nerve,
    pub complex: Arc<ChainComplex>,
    pub normalized: Arc<ChainComplex>,
    /// `degenerate[n][k]` for the `k`-th `n`-simplex.
    pub degenerate: Vec<Vec<bool>>,
}

pub fn ch_category(c: Arc<FinCategory>, truncation: usize) -> Result<ChResult, ChainError> {
    let nerve = nerve(&c, truncation);
    let complex = alternating_complex(&free_simplicial_vector_space(nerve.set()))?;
    let degenerate = nerve.set().degenerate_flags();
    let normalized = normalize(&complex, &degenerate)?;
    Ok(ChResult {
        category: c,
        truncation,
        nerve,
        complex: Arc::new(complex),
        normalized: Arc::new(normalized),
        degenerate,
    })
}

impl ChResult {
    pub fn basis_index(&self, chain: &Chain) -> usize {
        self.nerve
            .index_of(chain)
            .expect("chain lies within the truncation")
    }
}

fn image(f: &Functor, ch: &Chain) -> Chain {
    Chain {
        start: f.map_object(ch.start),
        morphisms: ch.morphisms.iter().map(|&m| f.map_morphism(m)).collect(),
    }
}

/// The linearized `N(F)` from `src` to `tgt`, which must be the pipelines of
/// `F`'s source and target.
pub fn ch_functor_between(
    f: &Functor,
    src: &ChResult,
    tgt: &ChResult,
) -> Result<ChainMap, ChainError> {
    let top = src.truncation.min(tgt.truncation);
    let components = (0..=top)
        .map(|n| {
            let mut m = Matrix::zeros(tgt.complex.dim(n), src.complex.dim(n));
            for (k, ch) in src.nerve.chains(n).iter().enumerate() {
                m.set(tgt.basis_index(&image(f, ch)), k, rat(1));
            }
            m
        })
        .collect();
    ChainMap::new(src.complex.clone(), tgt.complex.clone(), components)
}

pub fn ch_functor(f: &Functor, truncation: usize) -> Result<ChainMap, ChainError> {
    let src = ch_category(f.source().clone(), truncation)?;
    let tgt = ch_category(f.target().clone(), truncation)?;
    ch_functor_between(f, &src, &tgt)
}

pub fn normalized_map(
    m: &ChainMap,
    src: &ChResult,
    tgt: &ChResult,
) -> Result<ChainMap, ChainError> {
    m.normalized(
        src.normalized.clone(),
        tgt.normalized.clone(),
        &src.degenerate,
        &tgt.degenerate,
    )
}

/// The prism `(n+1)`-chains `P₀, …, Pₙ` over an `n`-chain.
pub fn prism_chains(a: &NatTransf, ch: &Chain) -> Vec<Chain> {
    let (f, g) = (a.from(), a.to());
    let c = f.source();
    let n = ch.dim();
    (0..=n)
        .map(|i| {
            let mut morphisms: Vec<usize> = ch.morphisms[..i]
                .iter()
                .map(|&m| f.map_morphism(m))
                .collect();
            morphisms.push(a.component(ch.vertex(c, i)));
            morphisms.extend(ch.morphisms[i..].iter().map(|&m| g.map_morphism(m)));
            Chain {
                start: f.map_object(ch.start),
                morphisms,
            }
        })
        .collect()
}

/// The prism homotopy from `Ch(F)` to `Ch(G)` on the alternating complexes.
pub fn ch_nat_transf_between(
    a: &NatTransf,
    src: &ChResult,
    tgt: &ChResult,
) -> Result<ChainHomotopy, ChainError> {
    let from = ch_functor_between(a.from(), src, tgt)?;
    let to = ch_functor_between(a.to(), src, tgt)?;
    let top = from.top_degree();
    let components = (0..top)
        .map(|n| {
            let mut m = Matrix::zeros(tgt.complex.dim(n + 1), src.complex.dim(n));
            for (k, ch) in src.nerve.chains(n).iter().enumerate() {
                for (i, p) in prism_chains(a, ch).iter().enumerate() {
                    let sign = if i % 2 == 0 { rat(1) } else { rat(-1) };
                    m.add_to(tgt.basis_index(p), k, &sign);
                }
            }
            m
        })
        .collect();
    ChainHomotopy::new(from, to, components)
}

pub fn ch_nat_transf(a: &NatTransf, truncation: usize) -> Result<ChainHomotopy, ChainError> {
    let src = ch_category(a.from().source().clone(), truncation)?;
    let tgt = ch_category(a.from().target().clone(), truncation)?;
    ch_nat_transf_between(a, &src, &tgt)
}

pub fn normalized_homotopy(
    h: &ChainHomotopy,
    src: &ChResult,
    tgt: &ChResult,
) -> Result<ChainHomotopy, ChainError> {
    let from = normalized_map(h.from(), src, tgt)?;
    let to = normalized_map(h.to(), src, tgt)?;
    h.normalized(from, to, &src.degenerate, &tgt.degenerate)
}

/// `h₁(f)` split as `B − A` for one morphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeOneSplit {
    pub morphism: String,
    pub b: String,
    pub a: String,
    /// `h₁(f)` as a combination of degree-2 basis labels.
    pub image: String,
    /// `h₁(f)` has exactly the entries `+1` at `B` and `−1` at `A`.
    pub literal: bool,
}

/// Homotopy defects for every checkable degree plus the degree-one split.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomotopyReport {
    /// `(degree, ‖defect‖₁ alternating, ‖defect‖₁ normalized)`
    pub degrees: Vec<(usize, Rational, Rational)>,
    pub splits: Vec<DegreeOneSplit>,
}

impl HomotopyReport {
    pub fn is_ok(&self) -> bool {
        self.degrees
            .iter()
            .all(|(_, a, n)| a == &rat(0) && n == &rat(0))
    }
}

impl fmt::Display for HomotopyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, a, b) in &self.degrees {
            writeln!(
                f,
                "degree {n}: defect norm {a} (alternating), {b} (normalized)"
            )?;
        }
        for s in &self.splits {
            writeln!(
                f,
                "h1({}) = B - A = {} - {} = {}",
                s.morphism, s.b, s.a, s.image
            )?;
        }
        write!(f, "{}", if self.is_ok() { "Ok" } else { "Violation" })
    }
}

pub fn homotopy_report(
    a: &NatTransf,
    src: &ChResult,
    tgt: &ChResult,
) -> Result<HomotopyReport, ChainError> {
    let h = ch_nat_transf_between(a, src, tgt)?;
    let hn = normalized_homotopy(&h, src, tgt)?;
    let alt = h.defects();
    let norm = hn.defects();
    let degrees = alt
        .iter()
        .zip(&norm)
        .enumerate()
        .map(|(n, (x, y))| (n, x.l1_norm(), y.l1_norm()))
        .collect();

    let mut splits = Vec::new();
    if h.components().len() >= 2 {
        let c = &src.category;
        let d = &tgt.category;
        let h1 = h.component(1);
        for (k, ch) in src.nerve.chains(1).iter().enumerate() {
            let p = prism_chains(a, ch);
            let (b, a_chain) = (&p[0], &p[1]);
            let column = h1.column(k);
            let (bi, ai) = (tgt.basis_index(b), tgt.basis_index(a_chain));
            let mut expected = vec![rat(0); column.len()];
            expected[bi] = rat(1);
            expected[ai] = &expected[ai] - rat(1);
            splits.push(DegreeOneSplit {
                morphism: c.morphism_name(ch.morphisms[0]).to_string(),
                b: b.label(d),
                a: a_chain.label(d),
                image: format_combination(&column, tgt.complex.space(2)),
                literal: bi != ai && column == expected,
            });
        }
    }
    Ok(HomotopyReport { degrees, splits })
}

/// For `α : F ⇒ G` and `β : G ⇒ H`, the degreewise difference
/// `Ch(β∘α) − (Ch(α) + Ch(β))` pushed through `δ(·) + (·)δ`. Both are
/// homotopies `F → H`, so every entry is zero.
pub fn vertical_composition_defect(
    beta: &NatTransf,
    alpha: &NatTransf,
    src: &ChResult,
    tgt: &ChResult,
) -> Result<Vec<Matrix>, ChainError> {
    let composite =
        NatTransf::vertical_compose(beta, alpha).map_err(|_| ChainError::NotParallel)?;
    let hc = ch_nat_transf_between(&composite, src, tgt)?;
    let ha = ch_nat_transf_between(alpha, src, tgt)?;
    let hb = ch_nat_transf_between(beta, src, tgt)?;
    let difference: Vec<Matrix> = hc
        .components()
        .iter()
        .zip(ha.components())
        .zip(hb.components())
        .map(|((c, a), b)| &(c - a) - b)
        .collect();
    Ok(homotopy_boundary(&difference, &src.complex, &tgt.complex))
}
