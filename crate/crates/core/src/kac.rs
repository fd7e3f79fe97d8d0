//! Kac coordinates for finite-order elements of type F4.
//!
//! An element of order `κ` corresponds to labels `ρ₀, …, ρ₄ ≥ 0` on the
//! extended diagram with `Σ λᵢρᵢ = κ`, and the vertices with `ρᵢ = 0` form
//! the Dynkin diagram of its centralizer.

use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use crate::algebra::AlbertAlgebra;
use crate::automorphism::{centralizer_dimension, type1_involution, type2_involution, TorusElement};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::tits::TitsAlgebra;

/// Marks of the extended F4 diagram `α₀ – α₁ – α₂ ⇒ α₃ – α₄`.
pub const MARKS: [u64; 5] = [1, 2, 3, 4, 2];
/// Simple edges; the double edge `α₂ ⇒ α₃` points from long to short.
pub const SIMPLE_EDGES: [(usize, usize); 3] = [(0, 1), (1, 2), (3, 4)];
pub const DOUBLE_EDGE: (usize, usize) = (2, 3);
/// Rank of F4, which is the torus dimension of every centralizer.
pub const RANK: usize = 4;

fn is_long(v: usize) -> bool {
    v <= DOUBLE_EDGE.0
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct KacSolution {
    pub rho: [u64; 5],
    pub order: u64,
}

impl KacSolution {
    pub fn weight(&self) -> u64 {
        self.rho.iter().zip(MARKS).map(|(r, m)| r * m).sum()
    }

    pub fn zero_vertices(&self) -> Vec<usize> {
        (0..5).filter(|&i| self.rho[i] == 0).collect()
    }
}

/// Solutions of `Σ λᵢρᵢ = κ` whose labels have no common factor with `κ`,
/// in descending lexicographic order.
pub fn enumerate(order: u64) -> Vec<KacSolution> {
    let mut out = Vec::new();
    let mut rho = [0u64; 5];
    fn go(i: usize, left: u64, rho: &mut [u64; 5], order: u64, out: &mut Vec<KacSolution>) {
        if i == 5 {
            if left == 0 && rho.iter().fold(order, |g, r| g.gcd(r)) == 1 {
                out.push(KacSolution { rho: *rho, order });
            }
            return;
        }
        for r in 0..=left / MARKS[i] {
            rho[i] = r;
            go(i + 1, left - r * MARKS[i], rho, order, out);
        }
        rho[i] = 0;
    }
    if order > 0 {
        go(0, order, &mut rho, order, &mut out);
    }
    out.sort_by_key(|s| std::cmp::Reverse(s.rho));
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DynkinComponent {
    A(usize),
    B(usize),
    C(usize),
    F4,
}

impl DynkinComponent {
    pub fn rank(&self) -> usize {
        match self {
            DynkinComponent::A(n) | DynkinComponent::B(n) | DynkinComponent::C(n) => *n,
            DynkinComponent::F4 => 4,
        }
    }

    /// Dimension of the simple Lie algebra.
    pub fn dimension(&self) -> usize {
        match *self {
            DynkinComponent::A(n) => n * (n + 2),
            DynkinComponent::B(n) | DynkinComponent::C(n) => n * (2 * n + 1),
            DynkinComponent::F4 => 52,
        }
    }
}

impl fmt::Display for DynkinComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DynkinComponent::A(n) => write!(f, "A{n}"),
            DynkinComponent::B(n) => write!(f, "B{n}"),
            DynkinComponent::C(n) => write!(f, "C{n}"),
            DynkinComponent::F4 => write!(f, "F4"),
        }
    }
}

/// Semisimple type of a centralizer, components ordered by their lowest vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DynkinType(pub Vec<DynkinComponent>);

impl DynkinType {
    pub fn rank(&self) -> usize {
        self.0.iter().map(DynkinComponent::rank).sum()
    }

    /// Dimension of the centralizer: the semisimple part plus the central torus.
    pub fn dimension(&self) -> usize {
        self.0.iter().map(DynkinComponent::dimension).sum::<usize>() + RANK - self.rank()
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "T{RANK}");
        }
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join("x"))
    }
}

impl Serialize for DynkinType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn recognize(component: &[usize]) -> Result<DynkinComponent> {
    let has = |v: usize| component.contains(&v);
    if !(has(DOUBLE_EDGE.0) && has(DOUBLE_EDGE.1)) {
        return Ok(DynkinComponent::A(component.len()));
    }
    let long = component.iter().filter(|&&v| is_long(v)).count();
    let short = component.len() - long;
    match (long, short) {
        (1, 1) => Ok(DynkinComponent::B(2)),
        (l, 1) => Ok(DynkinComponent::B(l + 1)),
        (1, s) => Ok(DynkinComponent::C(s + 1)),
        (2, 2) => Ok(DynkinComponent::F4),
        _ => Err(Error::UnrecognizedDiagram(format!("{component:?}"))),
    }
}

/// Decomposes the subdiagram on the zero-labelled vertices.
pub fn centralizer_subdiagram(s: &KacSolution) -> Result<DynkinType> {
    let verts = s.zero_vertices();
    let adjacent = |a: usize, b: usize| {
        SIMPLE_EDGES.iter().chain([&DOUBLE_EDGE]).any(|&(x, y)| (x, y) == (a, b) || (y, x) == (a, b))
    };
    let mut seen = [false; 5];
    let mut comps = Vec::new();
    for &start in &verts {
        if seen[start] {
            continue;
        }
        let mut comp = vec![start];
        seen[start] = true;
        let mut i = 0;
        while i < comp.len() {
            let v = comp[i];
            for &w in &verts {
                if !seen[w] && adjacent(v, w) {
                    seen[w] = true;
                    comp.push(w);
                }
            }
            i += 1;
        }
        comp.sort_unstable();
        comps.push(recognize(&comp)?);
    }
    Ok(DynkinType(comps))
}

#[derive(Clone, Debug, Serialize)]
pub struct CrossCheckRow {
    pub rho: [u64; 5],
    #[serde(rename = "type")]
    pub dynkin: DynkinType,
    pub kac_dimension: usize,
    pub involution: &'static str,
    pub centralizer_dimension: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CrossCheckReport {
    pub field: String,
    pub rows: Vec<CrossCheckRow>,
    pub bijective: bool,
}

/// Matches the order-2 Kac solutions with the two involution kinds by
/// centralizer dimension, computed from derivations of the Tits presentation.
pub fn cross_check_with_classifier(k: Field) -> Result<CrossCheckReport> {
    let alg = TitsAlgebra::new(k);
    let t1 = type1_involution(&alg, &TorusElement::identity(&k))?;
    let t2 = type2_involution(&alg, &alg.primitive_idempotent().to_coords())?;
    let kinds = [("TypeI", centralizer_dimension(&alg, &t1)?), ("TypeII", centralizer_dimension(&alg, &t2)?)];
    let mut used = [false; 2];
    let mut rows = Vec::new();
    let mut bijective = alg.derivations()?.dim() == 52;
    for s in enumerate(2) {
        let dynkin = centralizer_subdiagram(&s)?;
        let d = dynkin.dimension();
        let hit = kinds.iter().position(|&(_, c)| c == d);
        match hit {
            Some(i) if !used[i] => used[i] = true,
            _ => bijective = false,
        }
        let (name, c) = hit.map_or(("none", 0), |i| kinds[i]);
        rows.push(CrossCheckRow { rho: s.rho, dynkin, kac_dimension: d, involution: name, centralizer_dimension: c });
    }
    bijective &= used.iter().all(|&u| u);
    Ok(CrossCheckReport { field: k.to_string(), rows, bijective })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force(order: u64) -> Vec<[u64; 5]> {
        let mut out = Vec::new();
        for a in 0..=order {
            for b in 0..=order {
                for c in 0..=order {
                    for d in 0..=order {
                        for e in 0..=order {
                            let rho = [a, b, c, d, e];
                            let w: u64 = rho.iter().zip(MARKS).map(|(r, m)| r * m).sum();
                            let g = rho.iter().fold(order, |g, r| g.gcd(r));
                            if w == order && g == 1 {
                                out.push(rho);
                            }
                        }
                    }
                }
            }
        }
        out.sort();
        out.reverse();
        out
    }

    #[test]
    fn small_orders() {
        let rhos = |k| enumerate(k).into_iter().map(|s| s.rho).collect::<Vec<_>>();
        assert_eq!(rhos(1), [[1, 0, 0, 0, 0]]);
        assert_eq!(rhos(2), [[0, 1, 0, 0, 0], [0, 0, 0, 0, 1]]);
        for k in 1..=6 {
            assert_eq!(rhos(k), brute_force(k));
        }
        assert!(enumerate(0).is_empty());
    }

    #[test]
    fn subdiagrams() {
        let ty = |rho| centralizer_subdiagram(&KacSolution { rho, order: 0 }).unwrap();
        assert_eq!(ty([0, 1, 0, 0, 0]).to_string(), "A1xC3");
        assert_eq!(ty([0, 0, 0, 0, 1]).to_string(), "B4");
        assert_eq!(ty([1, 0, 0, 0, 0]).to_string(), "F4");
        assert_eq!(ty([1, 0, 0, 0, 0]).dimension(), 52);
        assert_eq!(ty([0, 1, 0, 0, 0]).dimension(), 24);
        assert_eq!(ty([0, 0, 0, 0, 1]).dimension(), 36);
        assert_eq!(ty([0, 0, 1, 0, 0]).to_string(), "A2xA2");
        assert_eq!(ty([1, 0, 0, 1, 0]).to_string(), "A2xA1");
        assert_eq!(ty([0, 0, 0, 1, 1]).to_string(), "A3");
        assert_eq!(ty([1, 1, 0, 0, 0]).to_string(), "C3");
        assert_eq!(ty([1, 1, 1, 1, 1]).to_string(), "T4");
        assert_eq!(ty([1, 1, 0, 0, 1]).to_string(), "B2");
    }

    #[test]
    fn order_three_ranks() {
        for s in enumerate(3) {
            let t = centralizer_subdiagram(&s).unwrap();
            assert!(t.rank() <= RANK);
            assert_eq!(s.weight(), 3);
        }
    }

    #[test]
    fn agrees_with_centralizers() {
        let report = cross_check_with_classifier(Field::alg_closed_default()).unwrap();
        assert!(report.bijective);
        assert_eq!(report.rows[0].involution, "TypeI");
        assert_eq!(report.rows[1].involution, "TypeII");
    }
}
