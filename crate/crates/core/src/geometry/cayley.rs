use std::collections::HashMap;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::group::{reduce, s_membership, CanonicalGroupForm, GroupWord};
use crate::semigroup::{BsParams, NormalForm, SgWord};

/// The undirected Cayley graph of `S^1`, where `S` is the subsemigroup of
/// `S(m,n)` generated by the given elements. Vertices are never materialized:
/// forward edges are right multiplications, backward edges are right
/// divisions in `G(m,n)` kept only when the quotient lies in `S^1`.
pub struct CayleyGraph {
    params: BsParams,
    steps: Vec<CanonicalGroupForm>,
    inverse_steps: Vec<CanonicalGroupForm>,
    whole_semigroup: bool,
    memo: HashMap<CanonicalGroupForm, bool>,
    budget: usize,
}

impl CayleyGraph {
    pub fn new(params: BsParams, generators: &[CanonicalGroupForm], budget: usize) -> Self {
        let mut steps: Vec<CanonicalGroupForm> = Vec::new();
        for g in generators {
            if !g.is_identity() && !steps.contains(g) {
                steps.push(g.clone());
            }
        }
        let inverse_steps = steps.iter().map(|g| g.inv(params)).collect();
        let x = CanonicalGroupForm::x_power(BigInt::from(1));
        let y = reduce(&"y".parse::<GroupWord>().expect("literal"), params);
        let whole_semigroup = steps.contains(&x) && steps.contains(&y);
        CayleyGraph {
            params,
            steps,
            inverse_steps,
            whole_semigroup,
            memo: HashMap::new(),
            budget,
        }
    }

    pub fn from_words(params: BsParams, generators: &[SgWord], budget: usize) -> Self {
        let images: Vec<_> = generators
            .iter()
            .map(|w| reduce(&GroupWord::from(w), params))
            .collect();
        Self::new(params, &images, budget)
    }

    /// Whether `g` is a vertex, i.e. lies in `S^1`.
    pub fn contains(&mut self, g: &CanonicalGroupForm) -> Result<bool> {
        if g.is_identity() {
            return Ok(true);
        }
        self.in_subsemigroup(g)
    }

    /// Membership in `S` by right division: every generator either lowers
    /// the number of `y`s or, for powers of `x`, the horizontal coordinate
    /// by a fixed positive amount, so the search terminates.
    fn in_subsemigroup(&mut self, g: &CanonicalGroupForm) -> Result<bool> {
        if !s_membership(g) {
            return Ok(false);
        }
        if self.whole_semigroup {
            return Ok(true);
        }
        if let Some(&known) = self.memo.get(g) {
            return Ok(known);
        }
        if self.memo.len() >= self.budget {
            return Err(Error::budget("subsemigroup membership search", self.budget));
        }
        let mut found = self.steps.contains(g);
        let mut i = 0;
        while !found && i < self.inverse_steps.len() {
            let q = g.mul(&self.inverse_steps[i], self.params);
            found = self.in_subsemigroup(&q)?;
            i += 1;
        }
        self.memo.insert(g.clone(), found);
        Ok(found)
    }

    fn neighbours(&mut self, v: &CanonicalGroupForm) -> Result<Vec<CanonicalGroupForm>> {
        let mut out = Vec::with_capacity(2 * self.steps.len());
        for i in 0..self.steps.len() {
            out.push(v.mul(&self.steps[i], self.params));
            let back = v.mul(&self.inverse_steps[i], self.params);
            if self.contains(&back)? {
                out.push(back);
            }
        }
        Ok(out)
    }

    /// Undirected distance, or `None` if it exceeds `radius`.
    pub fn distance(
        &mut self,
        s: &CanonicalGroupForm,
        t: &CanonicalGroupForm,
        radius: usize,
    ) -> Result<Option<usize>> {
        if s == t {
            return Ok(Some(0));
        }
        let mut seen = [
            HashMap::from([(s.clone(), 0usize)]),
            HashMap::from([(t.clone(), 0usize)]),
        ];
        let mut frontier = [vec![s.clone()], vec![t.clone()]];
        let mut depth = [0usize, 0usize];
        while depth[0] + depth[1] < radius {
            let side = if frontier[0].len() <= frontier[1].len() { 0 } else { 1 };
            if frontier[side].is_empty() {
                return Ok(None);
            }
            let mut best: Option<usize> = None;
            let mut next = Vec::new();
            for v in std::mem::take(&mut frontier[side]) {
                for nb in self.neighbours(&v)? {
                    if seen[side].contains_key(&nb) {
                        continue;
                    }
                    if let Some(&other) = seen[1 - side].get(&nb) {
                        let total = depth[side] + 1 + other;
                        best = Some(best.map_or(total, |b| b.min(total)));
                    }
                    seen[side].insert(nb.clone(), depth[side] + 1);
                    next.push(nb);
                }
            }
            if seen[0].len() + seen[1].len() > self.budget {
                return Err(Error::budget("Cayley graph search", self.budget));
            }
            depth[side] += 1;
            frontier[side] = next;
            if let Some(b) = best {
                return Ok((b <= radius).then_some(b));
            }
        }
        Ok(None)
    }
}

/// Undirected distance between two elements of `S^1` in the Cayley graph with
/// respect to `gens`; `None` when it exceeds `radius`.
pub fn graph_distance(
    s: &NormalForm,
    t: &NormalForm,
    gens: &[SgWord],
    radius: usize,
    p: BsParams,
    budget: usize,
) -> Result<Option<usize>> {
    let mut graph = CayleyGraph::from_words(p, gens, budget);
    let s = CanonicalGroupForm::from_normal_form(s, p);
    let t = CanonicalGroupForm::from_normal_form(t, p);
    graph.distance(&s, &t, radius)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::{multiply, normalize};
    use std::collections::{HashSet, VecDeque};

    fn p(m: u32, n: u32) -> BsParams {
        BsParams::new(m, n).unwrap()
    }

    fn e(s: &str, params: BsParams) -> NormalForm {
        normalize(&s.parse().unwrap(), params)
    }

    fn gens(list: &[&str]) -> Vec<SgWord> {
        list.iter().map(|s| s.parse().unwrap()).collect()
    }

    /// Explicit undirected graph on the finite region of `S^1` spelled by
    /// generator words of length <= `depth`, with edges found by multiplication.
    struct Region {
        index: HashMap<NormalForm, usize>,
        adjacent: Vec<Vec<usize>>,
    }

    impl Region {
        fn new(generators: &[SgWord], depth: usize, params: BsParams) -> Self {
            let images: Vec<NormalForm> = generators.iter().map(|g| normalize(g, params)).collect();
            let mut elems = vec![NormalForm::identity()];
            let mut seen: HashSet<NormalForm> = HashSet::from([NormalForm::identity()]);
            let mut layer = vec![NormalForm::identity()];
            for _ in 0..depth {
                let mut next = Vec::new();
                for v in &layer {
                    for g in &images {
                        let w = multiply(v, g, params);
                        if seen.insert(w.clone()) {
                            elems.push(w.clone());
                            next.push(w);
                        }
                    }
                }
                layer = next;
            }
            let index: HashMap<NormalForm, usize> =
                elems.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
            let mut adjacent = vec![Vec::new(); elems.len()];
            for (i, v) in elems.iter().enumerate() {
                for g in &images {
                    if let Some(&j) = index.get(&multiply(v, g, params)) {
                        adjacent[i].push(j);
                        adjacent[j].push(i);
                    }
                }
            }
            Region { index, adjacent }
        }

        fn distance(&self, s: &NormalForm, t: &NormalForm) -> Option<usize> {
            let (s, t) = (self.index[s], self.index[t]);
            let mut dist = vec![usize::MAX; self.adjacent.len()];
            dist[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                if v == t {
                    return Some(dist[v]);
                }
                for &u in &self.adjacent[v] {
                    if dist[u] == usize::MAX {
                        dist[u] = dist[v] + 1;
                        queue.push_back(u);
                    }
                }
            }
            None
        }
    }

    #[test]
    fn distance_examples() {
        let params = p(3, 2);
        let g = gens(&["x", "y"]);
        let budget = 100_000;
        let y = e("y", params);
        assert_eq!(graph_distance(&y, &y, &g, 5, params, budget).unwrap(), Some(0));
        assert_eq!(
            graph_distance(&e("x", params), &e("x^2", params), &g, 5, params, budget).unwrap(),
            Some(1)
        );
        assert_eq!(graph_distance(&y, &e("xy", params), &g, 5, params, budget).unwrap(), Some(3));
        assert_eq!(Region::new(&g, 5, params).distance(&y, &e("xy", params)), Some(3));
        assert_eq!(graph_distance(&y, &e("xy", params), &g, 2, params, budget).unwrap(), None);
    }

    #[test]
    fn matches_explicit_oracle() {
        let params = p(3, 2);
        for generators in [gens(&["x", "y"]), gens(&["x^2", "xy", "y"])] {
            let region = Region::new(&generators, 6, params);
            let elems = ["x^2", "xy", "y", "yx^2", "x^2y", "xyy", "yxy"];
            for a in elems {
                for b in elems {
                    let (s, t) = (e(a, params), e(b, params));
                    let mut graph = CayleyGraph::from_words(params, &generators, 100_000);
                    let sg = CanonicalGroupForm::from_normal_form(&s, params);
                    let tg = CanonicalGroupForm::from_normal_form(&t, params);
                    let inside = graph.contains(&sg).unwrap() && graph.contains(&tg).unwrap();
                    if !inside {
                        continue;
                    }
                    let ours = graph.distance(&sg, &tg, 4).unwrap();
                    let oracle = region.distance(&s, &t).filter(|&d| d <= 4);
                    assert_eq!(ours, oracle, "{a} {b}");
                }
            }
        }
    }

    #[test]
    fn subsemigroup_membership() {
        let params = p(3, 2);
        let mut graph = CayleyGraph::from_words(params, &gens(&["x^2", "xy", "y"]), 100_000);
        let member = |graph: &mut CayleyGraph, s: &str| {
            let g = reduce(&s.parse::<GroupWord>().unwrap(), params);
            graph.contains(&g).unwrap()
        };
        assert!(member(&mut graph, "x^4"));
        assert!(!member(&mut graph, "x"));
        assert!(!member(&mut graph, "x^3"));
        assert!(member(&mut graph, "yx^3"));
        assert!(member(&mut graph, "xyx^2"));
        assert!(member(&mut graph, ""));
        assert!(!member(&mut graph, "X"));
    }

    #[test]
    fn symmetric_and_triangle() {
        let params = p(3, 2);
        let g = gens(&["x", "y"]);
        let mut graph = CayleyGraph::from_words(params, &g, 100_000);
        let pts: Vec<_> = ["x", "y", "xy", "yx", "x^2y", "yy", "xyx"]
            .iter()
            .map(|s| CanonicalGroupForm::from_normal_form(&e(s, params), params))
            .collect();
        let mut d = vec![vec![None; pts.len()]; pts.len()];
        for i in 0..pts.len() {
            for j in 0..pts.len() {
                d[i][j] = graph.distance(&pts[i], &pts[j], 6).unwrap();
            }
        }
        for i in 0..pts.len() {
            for j in 0..pts.len() {
                assert_eq!(d[i][j], d[j][i]);
                for k in 0..pts.len() {
                    if let (Some(a), Some(b), Some(c)) = (d[i][j], d[i][k], d[k][j]) {
                        assert!(a <= b + c);
                    }
                }
            }
        }
    }
}
