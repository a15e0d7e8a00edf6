//! Finite posets of spectrum points, with Hasse covers and DOT/JSON output.

use std::fmt::Write as _;

use serde::Serialize;

use crate::natinf::NatInf;

/// What a spectrum point needs to be drawn and serialized.
pub trait SpectrumPoint: Ord + Clone {
    /// Stable node label, e.g. `P(2|3,4)`.
    fn label(&self) -> String;
    fn layer(&self) -> u32;
    /// Residue characteristic; 0 for the rational points.
    fn characteristic(&self) -> u64;
    /// Chromatic height, when the point carries one.
    fn height(&self) -> Option<NatInf>;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RankDir {
    /// Edge tails above heads.
    TopToBottom,
    /// Edge tails below heads.
    BottomToTop,
}

impl RankDir {
    fn dot(self) -> &'static str {
        match self {
            RankDir::TopToBottom => "TB",
            RankDir::BottomToTop => "BT",
        }
    }
}

/// A finite partial order on spectrum points, `a ≤ b` meaning `a ⊆ b` as ideals.
///
/// Points are kept sorted; `covers` is the transitive reduction of `relation`.
#[derive(Debug, Clone)]
pub struct Poset<P> {
    points: Vec<P>,
    leq: Vec<Vec<bool>>,
    covers: Vec<(usize, usize)>,
}

/// A pair `(a, b, c)` witnessing a failed order axiom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxiomViolation {
    Reflexivity(String),
    Antisymmetry(String, String),
    Transitivity(String, String, String),
}

impl<P: SpectrumPoint> Poset<P> {
    pub fn from_relation(mut points: Vec<P>, leq: impl Fn(&P, &P) -> bool) -> Self {
        points.sort();
        points.dedup();
        let n = points.len();
        let matrix: Vec<Vec<bool>> = points
            .iter()
            .map(|a| points.iter().map(|b| leq(a, b)).collect())
            .collect();
        let mut covers = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a == b || !matrix[a][b] {
                    continue;
                }
                let between = (0..n).any(|c| {
                    c != a
                        && c != b
                        && matrix[a][c]
                        && matrix[c][b]
                        && !matrix[c][a]
                        && !matrix[b][c]
                });
                if !between {
                    covers.push((a, b));
                }
            }
        }
        Poset {
            points,
            leq: matrix,
            covers,
        }
    }

    pub fn points(&self) -> &[P] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn index_of(&self, p: &P) -> Option<usize> {
        self.points.binary_search(p).ok()
    }

    pub fn leq_idx(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    /// All related pairs `(a, b)` with `a ≤ b`, including the diagonal.
    pub fn relation(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .filter(|&(a, b)| self.leq[a][b])
            .collect()
    }

    /// Points with nothing strictly below them.
    pub fn minimal(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&b| (0..self.len()).all(|a| a == b || !self.leq[a][b]))
            .collect()
    }

    /// Points with nothing strictly above them.
    pub fn maximal(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&a| (0..self.len()).all(|b| a == b || !self.leq[a][b]))
            .collect()
    }

    /// First failure of reflexivity, antisymmetry or transitivity.
    pub fn check_partial_order(&self) -> Option<AxiomViolation> {
        let n = self.len();
        let l = |i: usize| self.points[i].label();
        for a in 0..n {
            if !self.leq[a][a] {
                return Some(AxiomViolation::Reflexivity(l(a)));
            }
        }
        for a in 0..n {
            for b in a + 1..n {
                if self.leq[a][b] && self.leq[b][a] {
                    return Some(AxiomViolation::Antisymmetry(l(a), l(b)));
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                if !self.leq[a][b] {
                    continue;
                }
                for c in 0..n {
                    if self.leq[b][c] && !self.leq[a][c] {
                        return Some(AxiomViolation::Transitivity(l(a), l(b), l(c)));
                    }
                }
            }
        }
        None
    }

    /// Length of the longest strict chain.
    pub fn height(&self) -> usize {
        // points are sorted, but the order need not be compatible with it
        let n = self.len();
        let mut memo: Vec<Option<usize>> = vec![None; n];
        fn longest<P>(p: &Poset<P>, a: usize, memo: &mut Vec<Option<usize>>) -> usize {
            if let Some(v) = memo[a] {
                return v;
            }
            let v = p
                .covers
                .iter()
                .filter(|&&(x, _)| x == a)
                .map(|&(_, b)| 1 + longest(p, b, memo))
                .max()
                .unwrap_or(0);
            memo[a] = Some(v);
            v
        }
        (0..n)
            .map(|a| longest(self, a, &mut memo))
            .max()
            .unwrap_or(0)
    }

    /// Graphviz digraph of the Hasse diagram, edges from smaller to larger ideal.
    pub fn to_dot(&self, name: &str, rank_dir: RankDir) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "digraph {name} {{");
        let _ = writeln!(out, "  rankdir={};", rank_dir.dot());
        let _ = writeln!(out, "  node [shape=plaintext];");
        for (idx, p) in self.points.iter().enumerate() {
            let _ = writeln!(out, "  n{idx} [label=\"{}\"];", p.label());
        }
        for &(a, b) in &self.covers {
            let _ = writeln!(out, "  n{a} -> n{b};");
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json_value(&self) -> PosetJson {
        PosetJson {
            points: self
                .points
                .iter()
                .map(|p| PointJson {
                    label: p.label(),
                    layer: p.layer(),
                    char: p.characteristic(),
                    height: p.height(),
                })
                .collect(),
            covers: self.covers.iter().map(|&(a, b)| [a, b]).collect(),
            relation: self.relation().into_iter().map(|(a, b)| [a, b]).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json_value())
            .expect("poset JSON is always serializable");
        s.push('\n');
        s
    }

    /// One line per point followed by one line per cover.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} points, {} covers", self.len(), self.covers.len());
        for p in &self.points {
            let _ = writeln!(out, "{}", p.label());
        }
        for &(a, b) in &self.covers {
            let _ = writeln!(
                out,
                "{} < {}",
                self.points[a].label(),
                self.points[b].label()
            );
        }
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PointJson {
    pub label: String,
    pub layer: u32,
    pub char: u64,
    pub height: Option<NatInf>,
}

/// Serialized form: `points`, plus `covers` and `relation` as index pairs
/// `[a, b]` meaning `points[a] ⊆ points[b]`.
#[derive(Debug, Clone, Serialize)]
pub struct PosetJson {
    pub points: Vec<PointJson>,
    pub covers: Vec<[usize; 2]>,
    pub relation: Vec<[usize; 2]>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
    struct Div(u32);

    impl SpectrumPoint for Div {
        fn label(&self) -> String {
            self.0.to_string()
        }
        fn layer(&self) -> u32 {
            self.0
        }
        fn characteristic(&self) -> u64 {
            0
        }
        fn height(&self) -> Option<NatInf> {
            None
        }
    }

    fn divisors_of_12() -> Poset<Div> {
        let pts = [1, 2, 3, 4, 6, 12].into_iter().map(Div).collect();
        Poset::from_relation(pts, |a, b| b.0 % a.0 == 0)
    }

    #[test]
    fn transitive_reduction_of_divisibility() {
        let p = divisors_of_12();
        let labels: Vec<(u32, u32)> = p
            .covers()
            .iter()
            .map(|&(a, b)| (p.points()[a].0, p.points()[b].0))
            .collect();
        assert_eq!(
            labels,
            vec![(1, 2), (1, 3), (2, 4), (2, 6), (3, 6), (4, 12), (6, 12)]
        );
        assert!(p.check_partial_order().is_none());
        assert_eq!(p.height(), 3);
        assert_eq!(p.minimal(), vec![0]);
        assert_eq!(p.maximal(), vec![5]);
    }

    #[test]
    fn detects_cycles() {
        let pts = [1, 2].into_iter().map(Div).collect();
        let p = Poset::from_relation(pts, |_, _| true);
        assert!(matches!(
            p.check_partial_order(),
            Some(AxiomViolation::Antisymmetry(..))
        ));
    }

    #[test]
    fn dot_lists_every_node_and_cover() {
        let p = divisors_of_12();
        let dot = p.to_dot("div", RankDir::BottomToTop);
        assert!(dot.starts_with("digraph div {\n  rankdir=BT;"));
        assert_eq!(dot.matches("->").count(), p.covers().len());
        assert_eq!(dot.matches("[label=").count(), 6);
    }
}
