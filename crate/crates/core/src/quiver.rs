//! Finite quivers, the Dynkin/Kronecker presets, and the Cartan and Coxeter
//! matrices of their path algebras.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::matrix::IntMatrix;
use crate::snf::inverse_unimodular;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuiverError {
    #[error("parse error at clause {clause}: {message}")]
    Parse { clause: usize, message: String },
    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
    #[error("preset {family} is not defined for n = {n} ({requirement})")]
    PresetOutOfRange { family: PresetFamily, n: u32, requirement: &'static str },
    #[error("vertex {0} is listed more than once")]
    DuplicateVertex(u64),
    #[error("arrow endpoint {0} is not a listed vertex")]
    UnknownVertex(u64),
    #[error("vertex identifiers must be positive")]
    ZeroVertex,
    #[error("quiver has an oriented cycle: {}", render_cycle(.cycle))]
    Cyclic { cycle: Vec<u64> },
}

impl QuiverError {
    pub fn code(&self) -> &'static str {
        match self {
            QuiverError::Parse { .. } => "PARSE_ERROR",
            QuiverError::UnknownPreset(_) => "UNKNOWN_PRESET",
            QuiverError::PresetOutOfRange { .. } => "PRESET_OUT_OF_RANGE",
            QuiverError::DuplicateVertex(_) => "DUPLICATE_VERTEX",
            QuiverError::UnknownVertex(_) => "UNKNOWN_VERTEX",
            QuiverError::ZeroVertex => "ZERO_VERTEX",
            QuiverError::Cyclic { .. } => "CYCLIC_QUIVER",
        }
    }
}

fn render_cycle(cycle: &[u64]) -> String {
    let parts: Vec<String> = cycle.iter().map(|v| format!("{v}")).collect();
    parts.join(" -> ")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PresetFamily {
    A,
    D,
    E,
    Kronecker,
}

impl fmt::Display for PresetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PresetFamily::A => "A",
            PresetFamily::D => "D",
            PresetFamily::E => "E",
            PresetFamily::Kronecker => "Kronecker",
        })
    }
}

/// A finite directed multigraph with ordered vertices.
///
/// Vertices are addressed internally by their position `0..v` in the vertex
/// list; the original identifiers are kept as labels for reporting. Parallel
/// arrows are stored by repetition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    labels: Vec<u64>,
    arrows: Vec<(usize, usize)>,
    name: Option<String>,
}

/// Result of [`Quiver::topological_order`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TopologicalOrder {
    /// Vertex labels in a topological order.
    Order(Vec<u64>),
    /// An oriented cycle as a closed walk of labels, e.g. `[1, 2, 1]`.
    Cycle(Vec<u64>),
}

impl Quiver {
    /// Builds a quiver from vertex identifiers and labelled arrows.
    pub fn new(vertices: Vec<u64>, arrows: &[(u64, u64)]) -> Result<Self, QuiverError> {
        let mut seen = BTreeSet::new();
        for &v in &vertices {
            if v == 0 {
                return Err(QuiverError::ZeroVertex);
            }
            if !seen.insert(v) {
                return Err(QuiverError::DuplicateVertex(v));
            }
        }
        let index = |label: u64| vertices.iter().position(|&v| v == label).ok_or(QuiverError::UnknownVertex(label));
        let arrows = arrows.iter().map(|&(s, t)| Ok((index(s)?, index(t)?))).collect::<Result<_, _>>()?;
        Ok(Quiver { labels: vertices, arrows, name: None })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn vertices(&self) -> &[u64] {
        &self.labels
    }

    /// Arrows as `(source, target)` positions into [`Quiver::vertices`].
    pub fn arrow_indices(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    /// Arrows as `(source, target)` labels.
    pub fn arrows(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.arrows.iter().map(|&(s, t)| (self.labels[s], self.labels[t]))
    }

    /// Reorders the vertices so that new vertex `i` is old vertex `perm[i]`.
    ///
    /// Panics if `perm` is not a permutation of `0..v`.
    pub fn permuted(&self, perm: &[usize]) -> Quiver {
        assert_eq!(perm.len(), self.labels.len(), "permutation length");
        let mut inverse = alloc::vec![usize::MAX; perm.len()];
        for (new, &old) in perm.iter().enumerate() {
            assert!(inverse[old] == usize::MAX, "not a permutation");
            inverse[old] = new;
        }
        Quiver {
            labels: perm.iter().map(|&old| self.labels[old]).collect(),
            arrows: self.arrows.iter().map(|&(s, t)| (inverse[s], inverse[t])).collect(),
            name: self.name.clone(),
        }
    }

    /// Arrow-multiplicity adjacency matrix.
    pub fn adjacency(&self) -> IntMatrix {
        let v = self.vertex_count();
        let mut a = IntMatrix::zeros(v, v);
        for &(s, t) in &self.arrows {
            a[(s, t)] += 1;
        }
        a
    }

    /// Kahn's algorithm, always taking the smallest available position.
    pub fn topological_order(&self) -> TopologicalOrder {
        let v = self.vertex_count();
        let mut indegree = alloc::vec![0usize; v];
        for &(_, t) in &self.arrows {
            indegree[t] += 1;
        }
        let mut done = alloc::vec![false; v];
        let mut order = Vec::with_capacity(v);
        while let Some(next) = (0..v).find(|&i| !done[i] && indegree[i] == 0) {
            done[next] = true;
            order.push(self.labels[next]);
            for &(s, t) in &self.arrows {
                if s == next {
                    indegree[t] -= 1;
                }
            }
        }
        if order.len() == v {
            return TopologicalOrder::Order(order);
        }

        // Every vertex left over has a predecessor that is also left over:
        // walk predecessors until one repeats.
        let pred = |x: usize| self.arrows.iter().filter(|&&(s, t)| t == x && !done[s]).map(|&(s, _)| s).min();
        let start = (0..v).find(|&i| !done[i]).expect("leftover vertex");
        let mut walk = alloc::vec![start];
        let mut pos_in_walk = alloc::vec![usize::MAX; v];
        pos_in_walk[start] = 0;
        let mut cur = start;
        loop {
            cur = pred(cur).expect("leftover vertex has a leftover predecessor");
            if pos_in_walk[cur] != usize::MAX {
                let mut cycle: Vec<u64> = walk[pos_in_walk[cur]..].iter().map(|&i| self.labels[i]).collect();
                cycle.push(self.labels[cur]);
                cycle.reverse();
                return TopologicalOrder::Cycle(cycle);
            }
            pos_in_walk[cur] = walk.len();
            walk.push(cur);
        }
    }

    fn require_acyclic(&self) -> Result<(), QuiverError> {
        match self.topological_order() {
            TopologicalOrder::Order(_) => Ok(()),
            TopologicalOrder::Cycle(cycle) => Err(QuiverError::Cyclic { cycle }),
        }
    }

    /// Entry `(i, j)` counts the paths from vertex `i` to vertex `j`,
    /// the trivial path included: `C = I + A + A² + ⋯`.
    pub fn cartan_matrix(&self) -> Result<IntMatrix, QuiverError> {
        self.require_acyclic()?;
        let v = self.vertex_count();
        let a = self.adjacency();
        let mut c = IntMatrix::identity(v);
        let mut power = a.clone();
        // A is nilpotent of index ≤ v
        while !power.is_zero() {
            c = c.add(&power);
            power = power.mul(&a);
        }
        Ok(c)
    }

    /// `Φ = −Cᵀ·C⁻¹`.
    pub fn coxeter_matrix(&self) -> Result<IntMatrix, QuiverError> {
        let c = self.cartan_matrix()?;
        let c_inv = inverse_unimodular(&c).expect("Cartan matrix of an acyclic quiver is unitriangular");
        Ok(c.transpose().mul(&c_inv).neg())
    }
}

/// The orientations used for the Kleinian and cyclic-quotient examples.
///
/// * `A_n` (n ≥ 1): `1 → 2 → ⋯ → n`
/// * `D_n` (n ≥ 4): `1 → 3`, `2 → 3`, `3 → 4 → ⋯ → n`
/// * `E_n` (n ∈ {6, 7, 8}): `3 → 4` and `1 → 2 → 4 → 5 → ⋯ → n`
/// * `Kronecker(r)` (r ≥ 1): `r` parallel arrows `1 → 2`
pub fn preset(family: PresetFamily, n: u32) -> Result<Quiver, QuiverError> {
    let out_of_range = |requirement| Err(QuiverError::PresetOutOfRange { family, n, requirement });
    let chain = |from: u64, to: u64| (from..to).map(|i| (i, i + 1)).collect::<Vec<_>>();
    let (v, arrows, name) = match family {
        PresetFamily::A => {
            if n < 1 {
                return out_of_range("n >= 1");
            }
            (n as u64, chain(1, n as u64), format!("A{n}"))
        }
        PresetFamily::D => {
            if n < 4 {
                return out_of_range("n >= 4");
            }
            let mut arrows = alloc::vec![(1, 3), (2, 3)];
            arrows.extend(chain(3, n as u64));
            (n as u64, arrows, format!("D{n}"))
        }
        PresetFamily::E => {
            if !(6..=8).contains(&n) {
                return out_of_range("n in {6, 7, 8}");
            }
            let mut arrows = alloc::vec![(1, 2), (2, 4), (3, 4)];
            arrows.extend(chain(4, n as u64));
            (n as u64, arrows, format!("E{n}"))
        }
        PresetFamily::Kronecker => {
            if n < 1 {
                return out_of_range("r >= 1");
            }
            (2, alloc::vec![(1, 2); n as usize], format!("Kronecker({n})"))
        }
    };
    let q = Quiver::new((1..=v).collect(), &arrows)?;
    Ok(q.with_name(name))
}
