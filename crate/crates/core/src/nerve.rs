//! Truncated simplicial sets and the nerve of a finite category.
//!
//! An `n`-simplex of the nerve is a composable chain
//! `x₀ →f₁ x₁ → … →fₙ xₙ`. `d₀` drops `f₁`, `dₙ` drops `fₙ`, and an inner
//! `dᵢ` replaces `fᵢ, fᵢ₊₁` by `fᵢ₊₁ ∘ fᵢ`. `sᵢ` inserts `id_{xᵢ}` at
//! position `i`. With this orientation a 1-simplex `f: x → y` has
//! `d₀ f = y` and `d₁ f = x`.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::fincat::{FinCategory, Functor};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum SimplicialError {
    #[error("table shape: {0}")]
    Shape(String),
    #[error("simplicial identity {identity} fails on simplex {simplex} of dimension {dim}")]
    Identity {
        identity: String,
        dim: usize,
        simplex: usize,
    },
    #[error("simplicial map does not commute with {op} on simplex {simplex} of dimension {dim}")]
    MapNotSimplicial {
        op: String,
        dim: usize,
        simplex: usize,
    },
    #[error("truncation {have} is too low; need {need}")]
    TruncationTooLow { have: usize, need: usize },
    #[error("simplex {simplex} of dimension {dim} is referenced by {by}")]
    StillReferenced {
        dim: usize,
        simplex: usize,
        by: String,
    },
}

/// A simplicial set truncated at `max_dim`, with explicit face and
/// degeneracy tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialSetTrunc {
    labels: Vec<Vec<String>>,
    /// `faces[n][k][i] = dᵢ` of the `k`-th `n`-simplex (empty for `n = 0`).
    faces: Vec<Vec<Vec<usize>>>,
    /// `degeneracies[n][k][i] = sᵢ` of the `k`-th `n`-simplex, for `n < max_dim`.
    degeneracies: Vec<Vec<Vec<usize>>>,
}

impl SimplicialSetTrunc {
    /// Builds from explicit tables and checks shapes and every simplicial
    /// identity that lies inside the truncation.
    pub fn from_tables(
        labels: Vec<Vec<String>>,
        faces: Vec<Vec<Vec<usize>>>,
        degeneracies: Vec<Vec<Vec<usize>>>,
    ) -> Result<Self, SimplicialError> {
        let s = Self {
            labels,
            faces,
            degeneracies,
        };
        s.check_shapes()?;
        s.check_identities()?;
        Ok(s)
    }

    fn check_shapes(&self) -> Result<(), SimplicialError> {
        let top = self.labels.len();
        if top == 0 {
            return Err(SimplicialError::Shape(
                "at least dimension 0 is required".into(),
            ));
        }
        if self.faces.len() != top || self.degeneracies.len() != top - 1 {
            return Err(SimplicialError::Shape(
                "face/degeneracy table count does not match dimensions".into(),
            ));
        }
        for n in 0..top {
            let count = self.labels[n].len();
            if self.faces[n].len() != if n == 0 { 0 } else { count } {
                return Err(SimplicialError::Shape(format!(
                    "dimension {n}: face table length"
                )));
            }
            if n > 0 {
                for (k, fs) in self.faces[n].iter().enumerate() {
                    if fs.len() != n + 1 || fs.iter().any(|&f| f >= self.labels[n - 1].len()) {
                        return Err(SimplicialError::Shape(format!(
                            "dimension {n}: faces of simplex {k}"
                        )));
                    }
                }
            }
            if n + 1 < top {
                if self.degeneracies[n].len() != count {
                    return Err(SimplicialError::Shape(format!(
                        "dimension {n}: degeneracy table length"
                    )));
                }
                for (k, ds) in self.degeneracies[n].iter().enumerate() {
                    if ds.len() != n + 1 || ds.iter().any(|&d| d >= self.labels[n + 1].len()) {
                        return Err(SimplicialError::Shape(format!(
                            "dimension {n}: degeneracies of simplex {k}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Checks `dᵢdⱼ = dⱼ₋₁dᵢ (i<j)`, `sᵢsⱼ = sⱼ₊₁sᵢ (i≤j)` and the mixed
    /// face/degeneracy identities wherever both sides are defined.
    pub fn check_identities(&self) -> Result<(), SimplicialError> {
        let top = self.max_dim();
        let fail = |identity: String, dim, simplex| {
            Err(SimplicialError::Identity {
                identity,
                dim,
                simplex,
            })
        };
        for n in 2..=top {
            for k in 0..self.count(n) {
                for j in 0..=n {
                    for i in 0..j {
                        if self.face(n - 1, self.face(n, k, j), i)
                            != self.face(n - 1, self.face(n, k, i), j - 1)
                        {
                            return fail(format!("d{i}d{j} = d{}d{i}", j - 1), n, k);
                        }
                    }
                }
            }
        }
        for n in 0..top.saturating_sub(1) {
            for k in 0..self.count(n) {
                for j in 0..=n {
                    for i in 0..=j {
                        let l = self.degeneracy(n + 1, self.degeneracy(n, k, j), i);
                        let r = self.degeneracy(n + 1, self.degeneracy(n, k, i), j + 1);
                        if l != r {
                            return fail(format!("s{i}s{j} = s{}s{i}", j + 1), n, k);
                        }
                    }
                }
            }
        }
        for n in 0..top {
            for k in 0..self.count(n) {
                for j in 0..=n {
                    let sj = self.degeneracy(n, k, j);
                    for i in 0..=n + 1 {
                        let lhs = self.face(n + 1, sj, i);
                        let rhs = if i == j || i == j + 1 {
                            k
                        } else if i < j {
                            self.degeneracy(n - 1, self.face(n, k, i), j - 1)
                        } else {
                            self.degeneracy(n - 1, self.face(n, k, i - 1), j)
                        };
                        if lhs != rhs {
                            return fail(format!("d{i}s{j}"), n, k);
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn max_dim(&self) -> usize {
        self.labels.len() - 1
    }

    pub fn count(&self, n: usize) -> usize {
        self.labels[n].len()
    }

    pub fn counts(&self) -> Vec<usize> {
        self.labels.iter().map(Vec::len).collect()
    }

    pub fn label(&self, n: usize, k: usize) -> &str {
        &self.labels[n][k]
    }

    pub fn labels(&self, n: usize) -> &[String] {
        &self.labels[n]
    }

    /// `dᵢ` of the `k`-th `n`-simplex.
    pub fn face(&self, n: usize, k: usize, i: usize) -> usize {
        self.faces[n][k][i]
    }

    pub fn faces_of(&self, n: usize, k: usize) -> &[usize] {
        &self.faces[n][k]
    }

    /// `sᵢ` of the `k`-th `n`-simplex; requires `n < max_dim`.
    pub fn degeneracy(&self, n: usize, k: usize, i: usize) -> usize {
        self.degeneracies[n][k][i]
    }

    /// Per-dimension flags: a simplex is degenerate iff it is some `sᵢ` of a
    /// lower simplex.
    pub fn degenerate_flags(&self) -> Vec<Vec<bool>> {
        let mut flags: Vec<Vec<bool>> = self.labels.iter().map(|l| vec![false; l.len()]).collect();
        for (n, table) in self.degeneracies.iter().enumerate() {
            for ds in table {
                for &d in ds {
                    flags[n + 1][d] = true;
                }
            }
        }
        flags
    }

    pub fn nondegenerate_counts(&self) -> Vec<usize> {
        self.degenerate_flags()
            .iter()
            .map(|f| f.iter().filter(|d| !**d).count())
            .collect()
    }

    /// Drops the `k`-th `n`-simplex. Fails if a face or degeneracy still
    /// points at it.
    pub fn without_simplex(&self, n: usize, k: usize) -> Result<Self, SimplicialError> {
        if n < self.max_dim() && self.faces[n + 1].iter().any(|fs| fs.contains(&k)) {
            return Err(SimplicialError::StillReferenced {
                dim: n,
                simplex: k,
                by: "a face map".into(),
            });
        }
        if n > 0 && self.degeneracies[n - 1].iter().any(|ds| ds.contains(&k)) {
            return Err(SimplicialError::StillReferenced {
                dim: n,
                simplex: k,
                by: "a degeneracy map".into(),
            });
        }
        let shift = |x: usize| if x > k { x - 1 } else { x };
        let mut out = self.clone();
        out.labels[n].remove(k);
        if n > 0 {
            out.faces[n].remove(k);
        }
        if n < self.max_dim() {
            out.degeneracies[n].remove(k);
            for fs in &mut out.faces[n + 1] {
                fs.iter_mut().for_each(|x| *x = shift(*x));
            }
        }
        if n > 0 {
            for ds in &mut out.degeneracies[n - 1] {
                ds.iter_mut().for_each(|x| *x = shift(*x));
            }
        }
        Ok(out)
    }

    /// Adds a copy of a top-dimensional simplex with the same faces.
    pub fn with_duplicate_top(&self, k: usize) -> Self {
        let n = self.max_dim();
        let mut out = self.clone();
        out.labels[n].push(format!("{}'", self.labels[n][k]));
        if n > 0 {
            let fs = out.faces[n][k].clone();
            out.faces[n].push(fs);
        }
        out
    }
}

/// One simplex of a nerve: the start object plus the chain of morphisms.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Chain {
    pub start: usize,
    pub morphisms: Vec<usize>,
}

impl Chain {
    pub fn dim(&self) -> usize {
        self.morphisms.len()
    }

    /// Vertex `xᵢ` of the chain.
    pub fn vertex(&self, c: &FinCategory, i: usize) -> usize {
        if i == 0 {
            self.start
        } else {
            c.tgt(self.morphisms[i - 1])
        }
    }

    pub fn face(&self, c: &FinCategory, i: usize) -> Chain {
        let n = self.dim();
        assert!(n >= 1 && i <= n, "face d{i} of a {n}-chain");
        let mut m = self.morphisms.clone();
        if i == 0 {
            let start = c.tgt(m.remove(0));
            Chain {
                start,
                morphisms: m,
            }
        } else if i == n {
            m.pop();
            Chain {
                start: self.start,
                morphisms: m,
            }
        } else {
            let composite = c
                .compose(m[i], m[i - 1])
                .expect("nerve chains are composable");
            m.splice(i - 1..=i, [composite]);
            Chain {
                start: self.start,
                morphisms: m,
            }
        }
    }

    pub fn degeneracy(&self, c: &FinCategory, i: usize) -> Chain {
        let mut m = self.morphisms.clone();
        m.insert(i, c.identity(self.vertex(c, i)));
        Chain {
            start: self.start,
            morphisms: m,
        }
    }

    pub fn is_degenerate(&self, c: &FinCategory) -> bool {
        self.morphisms.iter().any(|&f| c.is_identity(f))
    }

    pub fn label(&self, c: &FinCategory) -> String {
        if self.morphisms.is_empty() {
            c.object_name(self.start).to_string()
        } else {
            let names: Vec<&str> = self.morphisms.iter().map(|&f| c.morphism_name(f)).collect();
            format!("({})", names.join(", "))
        }
    }
}

/// The nerve of a category truncated at `max_dim`, with the chain behind
/// every simplex.
#[derive(Debug, Clone)]
pub struct Nerve {
    set: SimplicialSetTrunc,
    chains: Vec<Vec<Chain>>,
    index: Vec<HashMap<Chain, usize>>,
}

/// Enumerates composable chains up to `max_dim`. Simplices in each dimension
/// are ordered lexicographically by the ids of their morphisms (objects by
/// id in dimension 0).
pub fn nerve(c: &FinCategory, max_dim: usize) -> Nerve {
    let mut objects: Vec<usize> = (0..c.object_count()).collect();
    objects.sort_by(|&a, &b| c.object_name(a).cmp(c.object_name(b)));
    let mut sorted: Vec<usize> = (0..c.morphism_count()).collect();
    sorted.sort_by(|&a, &b| c.morphism_name(a).cmp(c.morphism_name(b)));

    let mut chains: Vec<Vec<Chain>> = vec![objects
        .iter()
        .map(|&x| Chain {
            start: x,
            morphisms: vec![],
        })
        .collect()];
    for n in 1..=max_dim {
        let mut next = Vec::new();
        if n == 1 {
            next.extend(sorted.iter().map(|&f| Chain {
                start: c.src(f),
                morphisms: vec![f],
            }));
        } else {
            for ch in &chains[n - 1] {
                let end = c.tgt(*ch.morphisms.last().unwrap());
                for &f in sorted.iter().filter(|&&f| c.src(f) == end) {
                    let mut m = ch.morphisms.clone();
                    m.push(f);
                    next.push(Chain {
                        start: ch.start,
                        morphisms: m,
                    });
                }
            }
        }
        chains.push(next);
    }
    let index: Vec<HashMap<Chain, usize>> = chains
        .iter()
        .map(|cs| {
            cs.iter()
                .enumerate()
                .map(|(k, ch)| (ch.clone(), k))
                .collect()
        })
        .collect();

    let labels = chains
        .iter()
        .map(|cs| cs.iter().map(|ch| ch.label(c)).collect())
        .collect();
    let mut faces = vec![Vec::new()];
    for n in 1..=max_dim {
        faces.push(
            chains[n]
                .iter()
                .map(|ch| (0..=n).map(|i| index[n - 1][&ch.face(c, i)]).collect())
                .collect(),
        );
    }
    let degeneracies = (0..max_dim)
        .map(|n| {
            chains[n]
                .iter()
                .map(|ch| {
                    (0..=n)
                        .map(|i| index[n + 1][&ch.degeneracy(c, i)])
                        .collect()
                })
                .collect()
        })
        .collect();
    let set = SimplicialSetTrunc::from_tables(labels, faces, degeneracies)
        .expect("the nerve of a validated category satisfies the simplicial identities");
    Nerve { set, chains, index }
}

impl Nerve {
    pub fn set(&self) -> &SimplicialSetTrunc {
        &self.set
    }

    pub fn max_dim(&self) -> usize {
        self.set.max_dim()
    }

    pub fn chains(&self, n: usize) -> &[Chain] {
        &self.chains[n]
    }

    pub fn chain(&self, n: usize, k: usize) -> &Chain {
        &self.chains[n][k]
    }

    pub fn index_of(&self, chain: &Chain) -> Option<usize> {
        self.index.get(chain.dim())?.get(chain).copied()
    }

    /// `N(F)` between the nerves of `F`'s source (`self`) and target.
    pub fn map_functor(&self, f: &Functor, target: &Nerve) -> SimplicialMap {
        let top = self.max_dim().min(target.max_dim());
        let components = (0..=top)
            .map(|n| {
                self.chains[n]
                    .iter()
                    .map(|ch| {
                        let image = Chain {
                            start: f.map_object(ch.start),
                            morphisms: ch.morphisms.iter().map(|&m| f.map_morphism(m)).collect(),
                        };
                        target
                            .index_of(&image)
                            .expect("functor image is a chain of the target nerve")
                    })
                    .collect()
            })
            .collect();
        let map = SimplicialMap { components };
        map.verify(&self.set, &target.set)
            .expect("functor-induced maps are simplicial");
        map
    }
}

/// A map of truncated simplicial sets, as per-dimension index maps.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SimplicialMap {
    pub components: Vec<Vec<usize>>,
}

impl SimplicialMap {
    pub fn identity(s: &SimplicialSetTrunc) -> Self {
        Self {
            components: s.counts().into_iter().map(|c| (0..c).collect()).collect(),
        }
    }

    /// `self ∘ inner`
    pub fn after(&self, inner: &SimplicialMap) -> SimplicialMap {
        let components = inner
            .components
            .iter()
            .zip(&self.components)
            .map(|(a, b)| a.iter().map(|&k| b[k]).collect())
            .collect();
        SimplicialMap { components }
    }

    pub fn verify(
        &self,
        src: &SimplicialSetTrunc,
        tgt: &SimplicialSetTrunc,
    ) -> Result<(), SimplicialError> {
        let top = self.components.len().saturating_sub(1);
        for n in 0..=top {
            if self.components[n].len() != src.count(n) {
                return Err(SimplicialError::Shape(format!("map component {n} length")));
            }
        }
        for n in 1..=top {
            for k in 0..src.count(n) {
                for i in 0..=n {
                    if self.components[n - 1][src.face(n, k, i)]
                        != tgt.face(n, self.components[n][k], i)
                    {
                        return Err(SimplicialError::MapNotSimplicial {
                            op: format!("d{i}"),
                            dim: n,
                            simplex: k,
                        });
                    }
                }
            }
        }
        for n in 0..top {
            for k in 0..src.count(n) {
                for i in 0..=n {
                    if self.components[n + 1][src.degeneracy(n, k, i)]
                        != tgt.degeneracy(n, self.components[n][k], i)
                    {
                        return Err(SimplicialError::MapNotSimplicial {
                            op: format!("s{i}"),
                            dim: n,
                            simplex: k,
                        });
                    }
                }
            }
        }
        Ok(())
    }
}

/// `N(F)` on nerves truncated at `max_dim`, indexed as by [`nerve`].
pub fn nerve_of_functor(f: &Functor, max_dim: usize) -> SimplicialMap {
    nerve(f.source(), max_dim).map_functor(f, &nerve(f.target(), max_dim))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum FillerViolation {
    MissingFiller {
        dim: usize,
        boundary: Vec<usize>,
    },
    NonUniqueFiller {
        dim: usize,
        boundary: Vec<usize>,
        fillers: Vec<usize>,
    },
}

impl FillerViolation {
    pub fn describe(&self, s: &SimplicialSetTrunc) -> String {
        let names = |dim: usize, b: &[usize]| {
            b.iter()
                .map(|&k| s.label(dim - 1, k))
                .collect::<Vec<_>>()
                .join(", ")
        };
        match self {
            FillerViolation::MissingFiller { dim, boundary } => {
                format!(
                    "MissingFiller dim {dim}: boundary [{}]",
                    names(*dim, boundary)
                )
            }
            FillerViolation::NonUniqueFiller {
                dim,
                boundary,
                fillers,
            } => {
                let fs: Vec<&str> = fillers.iter().map(|&k| s.label(*dim, k)).collect();
                format!(
                    "NonUniqueFiller dim {dim}: boundary [{}] filled by {}",
                    names(*dim, boundary),
                    fs.join(", ")
                )
            }
        }
    }
}

/// Outcome of the unique-filler check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoskeletalReport {
    /// `(dimension, compatible boundaries examined)`
    pub checked: Vec<(usize, usize)>,
    pub violations: Vec<FillerViolation>,
}

impl CoskeletalReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for CoskeletalReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (dim, n) in &self.checked {
            writeln!(f, "dim {dim}: {n} compatible boundaries")?;
        }
        Ok(())
    }
}

/// Lists every `(n+1)`-tuple `(t₀, …, tₙ)` of `(n−1)`-simplices with
/// `dᵢ(tⱼ) = dⱼ₋₁(tᵢ)` for all `i < j`.
pub fn compatible_boundaries(s: &SimplicialSetTrunc, n: usize) -> Vec<Vec<usize>> {
    assert!(
        n >= 2 && n <= s.max_dim() + 1,
        "boundaries of {n}-simplices"
    );
    let lower = n - 1;
    let mut by_d0: HashMap<usize, Vec<usize>> = HashMap::new();
    for k in 0..s.count(lower) {
        by_d0.entry(s.face(lower, k, 0)).or_default().push(k);
    }
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n + 1);
    fn extend(
        s: &SimplicialSetTrunc,
        n: usize,
        by_d0: &HashMap<usize, Vec<usize>>,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let lower = n - 1;
        let j = cur.len();
        if j == n + 1 {
            out.push(cur.clone());
            return;
        }
        let candidates: Vec<usize> = if j == 0 {
            (0..s.count(lower)).collect()
        } else {
            by_d0
                .get(&s.face(lower, cur[0], j - 1))
                .cloned()
                .unwrap_or_default()
        };
        for t in candidates {
            if (1..j).all(|i| s.face(lower, t, i) == s.face(lower, cur[i], j - 1)) {
                cur.push(t);
                extend(s, n, by_d0, cur, out);
                cur.pop();
            }
        }
    }
    extend(s, n, &by_d0, &mut cur, &mut out);
    out
}

/// Checks that every compatible boundary in dimension 3 (and 4 when
/// `include_dim4`) has exactly one filler.
pub fn check_two_coskeletal(
    s: &SimplicialSetTrunc,
    include_dim4: bool,
) -> Result<CoskeletalReport, SimplicialError> {
    if s.max_dim() < 3 {
        return Err(SimplicialError::TruncationTooLow {
            have: s.max_dim(),
            need: 3,
        });
    }
    if include_dim4 && s.max_dim() < 4 {
        return Err(SimplicialError::TruncationTooLow {
            have: s.max_dim(),
            need: 4,
        });
    }
    let dims: &[usize] = if include_dim4 { &[3, 4] } else { &[3] };
    let mut report = CoskeletalReport {
        checked: Vec::new(),
        violations: Vec::new(),
    };
    for &n in dims {
        let mut fillers: HashMap<&[usize], Vec<usize>> = HashMap::new();
        for k in 0..s.count(n) {
            fillers.entry(s.faces_of(n, k)).or_default().push(k);
        }
        let boundaries = compatible_boundaries(s, n);
        report.checked.push((n, boundaries.len()));
        for b in boundaries {
            match fillers.get(b.as_slice()).map(Vec::as_slice) {
                None | Some([]) => report.violations.push(FillerViolation::MissingFiller {
                    dim: n,
                    boundary: b,
                }),
                Some([_]) => {}
                Some(many) => report.violations.push(FillerViolation::NonUniqueFiller {
                    dim: n,
                    fillers: many.to_vec(),
                    boundary: b,
                }),
            }
        }
    }
    Ok(report)
}
